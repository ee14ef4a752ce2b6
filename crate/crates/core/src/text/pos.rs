//! Part-of-speech heuristics: closed-class word lists, suffix rules and a
//! few contextual rules for telling verbs from nouns. Unknown words are
//! nouns.

use crate::model::{Pos, Token};

use super::lemma::{known_verb_lemma, lemmatize};
use super::tokenize::tokenize;
use super::words::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lexical {
    Fixed(Pos),
    /// Form of `have` or `do`: auxiliary or main verb depending on context.
    AuxOrVerb,
    /// Inflection of a known verb; `Pos` is the fallback when context does
    /// not make it a verb.
    VerbCandidate(Form, Pos),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Form {
    Base,
    Third,
    Gerund,
    Past,
}

fn is_identifier(surface: &str) -> bool {
    if surface.starts_with('`') || surface.contains("://") {
        return true;
    }
    if surface.starts_with('-') || surface.starts_with('/') || surface.starts_with('~') {
        return surface.chars().any(char::is_alphanumeric);
    }
    if ["::", "->", "()", "_", "#", "$"].iter().any(|m| surface.contains(m)) {
        return true;
    }
    if surface.contains('.') && surface.chars().any(char::is_alphabetic) {
        return true;
    }
    // CamelCase: an uppercase letter following a lowercase one.
    let chars: Vec<char> = surface.chars().collect();
    chars.windows(2).any(|w| w[0].is_lowercase() && w[1].is_uppercase())
}

fn verb_form(lower: &str, lemma: &str) -> Form {
    if lower == lemma {
        Form::Base
    } else if lower.ends_with("ing") {
        Form::Gerund
    } else if lower.ends_with('s') && !lower.ends_with("ss") {
        Form::Third
    } else {
        Form::Past
    }
}

fn lexical_class(surface: &str) -> Lexical {
    let lower = surface.to_lowercase();
    let first = surface.chars().next().unwrap_or(' ');
    if is_identifier(surface) {
        return Lexical::Fixed(Pos::Ident);
    }
    if !first.is_alphanumeric() && first != '\'' && first != '_' && first != '$' {
        return Lexical::Fixed(Pos::Punct);
    }
    if first.is_numeric() || NUMBER_WORDS.contains(lower.as_str()) {
        return Lexical::Fixed(Pos::Num);
    }
    if lower == "e.g." || lower == "i.e." || lower == "etc." || lower == "vs." {
        return Lexical::Fixed(Pos::Other);
    }
    if DETERMINERS.contains(lower.as_str()) {
        return Lexical::Fixed(Pos::Det);
    }
    if PRONOUNS.contains(lower.as_str()) {
        return Lexical::Fixed(Pos::Pron);
    }
    if MODALS.contains(lower.as_str()) {
        return Lexical::Fixed(Pos::Modal);
    }
    if BE_FORMS.contains(lower.as_str()) {
        return Lexical::Fixed(Pos::Aux);
    }
    if HAVE_FORMS.contains(lower.as_str()) || DO_FORMS.contains(lower.as_str()) {
        return Lexical::AuxOrVerb;
    }
    if PREPOSITIONS.contains(lower.as_str()) {
        return Lexical::Fixed(Pos::Prep);
    }
    if CONJUNCTIONS.contains(lower.as_str()) {
        return Lexical::Fixed(Pos::Conj);
    }
    if ADVERBS.contains(lower.as_str()) {
        return Lexical::Fixed(Pos::Adv);
    }
    if lower.starts_with('\'') {
        return Lexical::Fixed(Pos::Other);
    }
    let fallback = if ADJECTIVES.contains(lower.as_str()) {
        Pos::Adj
    } else if lower.len() > 4 && lower.ends_with("ly") {
        Pos::Adv
    } else if ["able", "ible", "ful", "ous", "ive", "less"]
        .iter()
        .any(|suf| lower.len() > suf.len() + 2 && lower.ends_with(suf))
    {
        Pos::Adj
    } else {
        Pos::Noun
    };
    if fallback == Pos::Noun || fallback == Pos::Adj {
        if let Some(lemma) = known_verb_lemma(&lower) {
            return Lexical::VerbCandidate(verb_form(&lower, &lemma), fallback);
        }
    }
    Lexical::Fixed(fallback)
}

fn is_nominal(pos: Pos) -> bool {
    matches!(pos, Pos::Noun | Pos::Ident | Pos::Pron | Pos::Num)
}

fn lexical_pos(class: Lexical) -> Pos {
    match class {
        Lexical::Fixed(p) => p,
        Lexical::AuxOrVerb => Pos::Aux,
        Lexical::VerbCandidate(_, fallback) => fallback,
    }
}

fn is_participle(class: Lexical) -> bool {
    matches!(class, Lexical::VerbCandidate(Form::Past, _))
}

/// Assigns a part of speech to each surface form.
pub fn tag_parts_of_speech(surfaces: &[&str]) -> Vec<Pos> {
    let classes: Vec<Lexical> = surfaces.iter().map(|s| lexical_class(s)).collect();
    let mut tags: Vec<Pos> = Vec::with_capacity(surfaces.len());
    for (i, class) in classes.iter().enumerate() {
        let lower = surfaces[i].to_lowercase();
        let prev_raw = tags.last().copied();
        let prev_word = if i > 0 { surfaces[i - 1].to_lowercase() } else { String::new() };
        let prev_sig = tags.iter().rev().copied().find(|t| *t != Pos::Adv);
        // First lexical class after any adverbs.
        let next = classes[i + 1..]
            .iter()
            .copied()
            .find(|c| *c != Lexical::Fixed(Pos::Adv));
        let next_pos = next.map(lexical_pos);

        let tag = match *class {
            Lexical::Fixed(p) => p,
            Lexical::AuxOrVerb => {
                let is_have = HAVE_FORMS.contains(lower.as_str());
                match next {
                    Some(c) if is_have && is_participle(c) => Pos::Aux,
                    Some(Lexical::VerbCandidate(..)) if !is_have => Pos::Aux,
                    Some(Lexical::Fixed(Pos::Det | Pos::Num | Pos::Ident | Pos::Adj)) => Pos::Verb,
                    Some(Lexical::Fixed(Pos::Noun)) if is_have => Pos::Verb,
                    Some(Lexical::Fixed(Pos::Pron)) if is_have && prev_sig.is_some() => Pos::Verb,
                    _ => Pos::Aux,
                }
            }
            Lexical::VerbCandidate(form, fallback) => {
                let after_det = matches!(prev_raw, Some(Pos::Det | Pos::Adj));
                let verbal = match form {
                    Form::Gerund => !after_det,
                    Form::Past => !after_det,
                    Form::Third => {
                        !matches!(prev_raw, Some(Pos::Det | Pos::Adj | Pos::Num | Pos::Prep))
                            && matches!(prev_sig, Some(p) if is_nominal(p))
                    }
                    Form::Base => match prev_sig {
                        _ if prev_word == "to" => true,
                        None => true,
                        Some(Pos::Pron | Pos::Modal | Pos::Aux) => true,
                        Some(Pos::Conj) | Some(Pos::Noun | Pos::Ident) => matches!(
                            next_pos,
                            Some(Pos::Det | Pos::Pron | Pos::Num | Pos::Ident)
                        ),
                        _ => false,
                    },
                };
                if verbal {
                    Pos::Verb
                } else if matches!(form, Form::Past) && after_det {
                    Pos::Adj
                } else {
                    fallback
                }
            }
        };
        tags.push(tag);
    }
    tags
}

/// Tokenizes, tags and lemmatizes sentence text.
pub fn analyze(text: &str) -> Vec<Token> {
    let raw = tokenize(text);
    let surfaces: Vec<&str> = raw.iter().map(|(_, s)| s.as_str()).collect();
    let tags = tag_parts_of_speech(&surfaces);
    raw.into_iter()
        .zip(tags)
        .map(|((span, surface), pos)| Token {
            lemma: lemmatize(&surface, pos),
            span,
            pos,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tags(text: &str) -> Vec<(String, Pos)> {
        analyze(text)
            .into_iter()
            .map(|t| (t.span.text().to_string(), t.pos))
            .collect()
    }

    fn pos_of(text: &str, word: &str) -> Pos {
        tags(text)
            .into_iter()
            .find(|(w, _)| w == word)
            .map(|(_, p)| p)
            .unwrap_or_else(|| panic!("{word} not in {text}"))
    }

    #[test]
    fn verbs_after_modal_pronoun_and_to() {
        assert_eq!(pos_of("we could use a leaky bucket algorithm", "use"), Pos::Verb);
        assert_eq!(pos_of("Does anyone want to run a benchmark?", "run"), Pos::Verb);
        assert_eq!(pos_of("Does anyone want to run a benchmark?", "want"), Pos::Verb);
        assert_eq!(pos_of("I cant even run this script", "run"), Pos::Verb);
        assert_eq!(pos_of("as its result, I get ImportError", "get"), Pos::Verb);
    }

    #[test]
    fn third_person_after_subject() {
        assert_eq!(pos_of("the leaky bucket algorithm fails in limiting", "fails"), Pos::Verb);
    }

    #[test]
    fn participle_after_determiner_is_adjective() {
        assert_eq!(pos_of("the returned object should be obtained", "returned"), Pos::Adj);
        assert_eq!(pos_of("the returned object should be obtained", "obtained"), Pos::Verb);
        assert_eq!(pos_of("the returned object should be obtained", "should"), Pos::Modal);
    }

    #[test]
    fn identifiers_and_nouns() {
        assert_eq!(pos_of("by calling super.clone", "super.clone"), Pos::Ident);
        assert_eq!(pos_of("by calling super.clone", "calling"), Pos::Verb);
        assert_eq!(pos_of("Turning off XBitHack in my config", "XBitHack"), Pos::Ident);
        assert_eq!(pos_of("Turning off XBitHack in my config", "Turning"), Pos::Verb);
        assert_eq!(pos_of("The command line is what", "line"), Pos::Noun);
        assert_eq!(pos_of("even if strings are passing", "strings"), Pos::Noun);
    }

    #[test]
    fn have_as_main_verb() {
        assert_eq!(pos_of("I have two classes", "have"), Pos::Verb);
        assert_eq!(pos_of("I have tried it", "have"), Pos::Aux);
    }

    #[test]
    fn lemmas_follow_tags() {
        let toks = analyze("Turning off XBitHack made this behavior go away");
        let made = toks.iter().find(|t| t.span.text() == "made").unwrap();
        assert_eq!(made.pos, Pos::Verb);
        assert_eq!(made.lemma, "make");
    }
}
