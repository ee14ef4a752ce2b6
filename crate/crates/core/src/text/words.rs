//! Closed-class word lists and the verb vocabulary used by the lemmatizer
//! and the part-of-speech heuristics.

use std::collections::{HashMap, HashSet};

use once_cell::sync::Lazy;

fn set(words: &[&'static str]) -> HashSet<&'static str> {
    words.iter().copied().collect()
}

pub static DETERMINERS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&[
        "the", "a", "an", "this", "that", "these", "those", "my", "your", "his", "her", "its",
        "our", "their", "some", "any", "every", "each", "no", "all", "both", "either", "neither",
        "whose", "which",
    ])
});

pub static PRONOUNS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&[
        "i", "you", "he", "she", "it", "we", "they", "me", "him", "us", "them", "anyone",
        "someone", "everyone", "anybody", "somebody", "nobody", "everybody", "everything",
        "something", "anything", "nothing", "mine", "yours", "ours", "theirs", "myself",
        "yourself", "itself", "himself", "herself", "ourselves", "themselves", "who", "what",
        "whom", "whoever", "whatever", "its",
    ])
});

pub static PREPOSITIONS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&[
        "in", "on", "at", "by", "for", "with", "from", "of", "to", "into", "onto", "over",
        "under", "about", "through", "during", "before", "after", "since", "until", "till",
        "without", "within", "across", "above", "below", "inside", "outside", "near", "between",
        "against", "among", "via", "per", "upon", "than", "as", "towards", "toward", "behind",
        "beyond", "despite", "except", "off", "out", "up", "down", "around", "along",
    ])
});

pub static CONJUNCTIONS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&[
        "and", "or", "but", "if", "because", "while", "although", "though", "unless", "whether",
        "nor", "when", "whenever", "so", "then", "else", "whereas", "once",
    ])
});

/// Conjunctions that end a marked clause.
pub static CLAUSE_CONJUNCTIONS: Lazy<HashSet<&'static str>> =
    Lazy::new(|| set(&["and", "or", "but", "because", "while", "although", "though", "unless"]));

pub static MODALS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&[
        "can", "could", "should", "would", "will", "shall", "may", "might", "must", "cannot",
        "cant", "can't", "couldnt", "couldn't", "shouldnt", "shouldn't", "wouldnt", "wouldn't",
        "wont", "won't", "mustn't", "mustnt",
    ])
});

pub static BE_FORMS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&[
        "be", "am", "is", "are", "was", "were", "been", "being", "'m", "'re", "isnt", "isn't",
        "arent", "aren't", "wasnt", "wasn't", "werent", "weren't", "ain't",
    ])
});

pub static HAVE_FORMS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&["have", "has", "had", "having", "'ve", "havent", "haven't", "hasnt", "hasn't", "hadn't"])
});

pub static DO_FORMS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&["do", "does", "did", "dont", "don't", "doesnt", "doesn't", "didnt", "didn't"])
});

pub static ADVERBS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&[
        "not", "n't", "even", "also", "just", "only", "very", "almost", "always", "never",
        "again", "already", "still", "away", "often", "sometimes", "usually", "now", "currently",
        "today", "here", "there", "where", "probably", "possibly", "maybe", "perhaps", "really",
        "actually", "later", "ago", "yet", "previously", "frequently", "rarely", "nearly",
        "approximately", "instead", "however", "too", "quite", "rather", "ever", "soon",
        "anyway", "simply", "how", "why", "back", "together", "otherwise", "therefore", "thus",
        "hence", "else", "indeed", "well", "enough", "somewhere", "anywhere", "everywhere",
    ])
});

pub static ADJECTIVES: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&[
        "good", "bad", "great", "nice", "better", "best", "worse", "worst", "fine", "awesome",
        "terrible", "new", "old", "young", "recent", "modern", "same", "identical", "different",
        "similar", "alike", "likely", "unlikely", "able", "unable", "capable", "available",
        "required", "necessary", "single", "sole", "next", "last", "previous", "following",
        "prior", "first", "second", "third", "fourth", "fifth", "enough", "sufficient",
        "insufficient", "adequate", "more", "most", "less", "least", "another", "additional",
        "extra", "further", "aware", "simple", "complex", "easy", "hard", "difficult", "wrong",
        "right", "correct", "incorrect", "possible", "impossible", "many", "much", "few",
        "several", "other", "own", "main", "whole", "full", "empty", "large", "small", "big",
        "little", "high", "low", "long", "short", "fast", "slow", "true", "false", "open",
        "closed", "public", "private", "static", "final", "default", "current", "local",
        "global", "standalone", "leaky", "valid", "invalid", "broken", "obligated", "obliged",
        "dependent", "contingent", "successful", "unsuccessful", "present", "important", "clear",
        "sure", "specific", "general", "common", "certain", "free", "real", "early", "late",
        "huge", "tiny", "native", "optional", "useful", "useless", "stable", "unstable",
    ])
});

/// Verb lemmas the part-of-speech heuristics accept as verbs.
pub static VERBS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&[
        "access", "act", "add", "agree", "allocate", "allow", "apply", "approve", "argue",
        "arrive", "ask", "assign", "attempt", "avoid", "become", "begin", "believe", "belong",
        "bind", "block", "break", "bring", "build", "cache", "call", "catch", "cause", "change",
        "check", "choose", "claim", "clean", "clone", "close", "come", "commit", "compare",
        "compile", "comprehend", "configure", "connect", "consider", "construct", "contain",
        "continue", "convert", "copy", "crash", "create", "debug", "define", "delete", "demand",
        "demonstrate", "depend", "deploy", "describe", "develop", "disable", "donate",
        "download", "drop", "emit", "employ", "enable", "ensure", "examine", "execute", "exist",
        "expect", "explain", "fail", "feel", "fetch", "figure", "filter", "find", "fix", "flush",
        "follow", "freeze", "generate", "get", "give", "go", "govern", "grasp", "hand", "handle",
        "hang", "happen", "have", "help", "hit", "hope", "implement", "import", "include",
        "initialize", "insert", "inspect", "install", "intend", "investigate", "invoke",
        "iterate", "keep", "know", "launch", "lead", "leak", "leave", "let", "like", "limit",
        "load", "log", "look", "lose", "make", "manage", "mean", "mention", "merge", "miss",
        "modify", "move", "name", "need", "note", "obtain", "occur", "open", "own", "parse",
        "pass", "pay", "place", "possess", "post", "print", "process", "prove", "provide",
        "push", "put", "query", "raise", "reach", "read", "reboot", "receive", "recover",
        "refactor", "register", "release", "remove", "render", "replace", "report",
        "reproduce", "request", "require", "resemble", "reset", "resolve", "restart", "retry",
        "return", "review", "run", "save", "say", "scan", "schedule", "see", "seem", "send",
        "set", "show", "sort", "spawn", "specify", "split", "start", "state", "stay", "stop",
        "store", "submit", "succeed", "suffice", "suggest", "supply", "support", "sync", "take",
        "tell", "test", "think", "throw", "trigger", "try", "turn", "undertake", "understand",
        "update", "upgrade", "use", "utilize", "validate", "verify", "wait", "want", "wish",
        "work", "wrap", "write", "yield", "be", "do", "stand", "spend", "hold", "fall", "pin",
        "ship", "rebuild", "reinstall", "mark", "fill", "match", "point", "refer", "answer",
        "fire", "output", "input", "sign", "expose", "happen", "upload", "overwrite", "override",
    ])
});

/// Irregular inflections mapped to their verb lemma.
pub static IRREGULAR_VERBS: Lazy<HashMap<&'static str, &'static str>> = Lazy::new(|| {
    [
        ("made", "make"), ("got", "get"), ("gotten", "get"), ("ran", "run"), ("went", "go"),
        ("gone", "go"), ("goes", "go"), ("came", "come"), ("gave", "give"), ("given", "give"),
        ("took", "take"), ("taken", "take"), ("did", "do"), ("done", "do"), ("does", "do"),
        ("had", "have"), ("has", "have"), ("having", "have"), ("was", "be"), ("were", "be"),
        ("is", "be"), ("are", "be"), ("am", "be"), ("been", "be"), ("being", "be"), ("'m", "be"),
        ("'re", "be"), ("'ve", "have"), ("said", "say"), ("saw", "see"), ("seen", "see"),
        ("knew", "know"), ("known", "know"), ("thought", "think"), ("found", "find"),
        ("built", "build"), ("wrote", "write"), ("written", "write"), ("sent", "send"),
        ("began", "begin"), ("begun", "begin"), ("broke", "break"), ("broken", "break"),
        ("brought", "bring"), ("chose", "choose"), ("chosen", "choose"), ("left", "leave"),
        ("lost", "lose"), ("meant", "mean"), ("kept", "keep"), ("told", "tell"),
        ("understood", "understand"), ("threw", "throw"), ("thrown", "throw"), ("held", "hold"),
        ("felt", "feel"), ("led", "lead"), ("paid", "pay"), ("spent", "spend"), ("stood", "stand"),
        ("became", "become"), ("shown", "show"), ("fell", "fall"), ("fallen", "fall"),
        ("hung", "hang"), ("froze", "freeze"), ("frozen", "freeze"), ("dont", "do"),
        ("don't", "do"), ("doesnt", "do"), ("doesn't", "do"), ("didnt", "do"), ("didn't", "do"),
        ("isnt", "be"), ("isn't", "be"), ("arent", "be"), ("aren't", "be"), ("wasnt", "be"),
        ("wasn't", "be"), ("werent", "be"), ("weren't", "be"), ("havent", "have"),
        ("haven't", "have"), ("hasnt", "have"), ("hasn't", "have"), ("hadn't", "have"),
        ("cant", "can"), ("can't", "can"), ("cannot", "can"), ("wont", "will"), ("won't", "will"),
        ("couldnt", "could"), ("couldn't", "could"), ("shouldnt", "should"),
        ("shouldn't", "should"), ("wouldnt", "would"), ("wouldn't", "would"),
        ("mustnt", "must"), ("mustn't", "must"), ("ain't", "be"),
    ]
    .into_iter()
    .collect()
});

pub static IRREGULAR_NOUNS: Lazy<HashMap<&'static str, &'static str>> = Lazy::new(|| {
    [
        ("children", "child"), ("people", "person"), ("men", "man"), ("women", "woman"),
        ("indices", "index"), ("analyses", "analysis"), ("criteria", "criterion"),
        ("mice", "mouse"), ("feet", "foot"), ("teeth", "tooth"), ("data", "data"),
        ("series", "series"), ("status", "status"), ("process", "process"), ("class", "class"),
        ("access", "access"), ("address", "address"), ("alias", "alias"), ("bus", "bus"),
        ("news", "news"), ("lens", "lens"), ("canvas", "canvas"), ("axis", "axis"),
        ("analysis", "analysis"), ("basis", "basis"), ("this", "this"), ("its", "its"),
    ]
    .into_iter()
    .collect()
});

pub static NUMBER_WORDS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&[
        "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
        "eleven", "twelve", "twenty", "thirty", "fifty", "hundred", "thousand", "million",
        "billion", "dozen",
    ])
});

/// Abbreviations whose trailing period never ends a sentence.
pub static ABBREVIATIONS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    set(&[
        "e.g", "i.e", "etc", "vs", "cf", "mr", "mrs", "ms", "dr", "prof", "inc", "ltd", "jr",
        "sr", "st", "approx", "fig", "eq", "resp", "al", "no", "nr", "ca", "esp", "incl",
    ])
});
