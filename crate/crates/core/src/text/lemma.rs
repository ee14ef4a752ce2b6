//! Rule-based English lemmatizer.

use crate::model::Pos;

use super::words::{IRREGULAR_NOUNS, IRREGULAR_VERBS, VERBS};

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

/// Undoes consonant doubling (`runn` -> `run`), leaving `ll`, `ss`, `zz`
/// and `ff` alone.
fn undouble(stem: &str) -> Option<String> {
    let chars: Vec<char> = stem.chars().collect();
    let n = chars.len();
    if n >= 3 && chars[n - 1] == chars[n - 2] && !is_vowel(chars[n - 1]) {
        if matches!(chars[n - 1], 'l' | 's' | 'z' | 'f') {
            return None;
        }
        return Some(chars[..n - 1].iter().collect());
    }
    None
}

/// Candidate verb stems for an inflected form, best guess first.
fn verb_candidates(word: &str) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(stem) = word.strip_suffix("ing") {
        if stem.len() >= 2 {
            if let Some(s) = undouble(stem) {
                out.push(s);
            }
            out.push(stem.to_string());
            out.push(format!("{stem}e"));
            if let Some(s) = stem.strip_suffix('y') {
                out.push(format!("{s}ie"));
            }
        }
    } else if let Some(stem) = word.strip_suffix("ied") {
        out.push(format!("{stem}y"));
    } else if let Some(stem) = word.strip_suffix("ed") {
        if stem.len() >= 2 {
            if let Some(s) = undouble(stem) {
                out.push(s);
            }
            out.push(stem.to_string());
            out.push(format!("{stem}e"));
        }
    } else if let Some(stem) = word.strip_suffix("ies") {
        out.push(format!("{stem}y"));
    } else if let Some(stem) = word.strip_suffix("es") {
        if stem.ends_with('s')
            || stem.ends_with('x')
            || stem.ends_with('z')
            || stem.ends_with("sh")
            || stem.ends_with("ch")
            || stem.ends_with('o')
        {
            out.push(stem.to_string());
        }
        out.push(format!("{stem}e"));
    } else if let Some(stem) = word.strip_suffix('s') {
        if !stem.ends_with('s') && stem.len() >= 2 {
            out.push(stem.to_string());
        }
    }
    out
}

/// Verb lemma when `word` is an inflection of a known verb.
pub fn known_verb_lemma(word: &str) -> Option<String> {
    let lower = word.to_lowercase();
    if let Some(l) = IRREGULAR_VERBS.get(lower.as_str()) {
        return Some((*l).to_string());
    }
    if VERBS.contains(lower.as_str()) {
        return Some(lower);
    }
    verb_candidates(&lower)
        .into_iter()
        .find(|c| VERBS.contains(c.as_str()))
}

fn verb_lemma(lower: &str) -> String {
    if let Some(l) = known_verb_lemma(lower) {
        return l;
    }
    // Unknown verb: fall back to the first candidate.
    verb_candidates(lower)
        .into_iter()
        .next()
        .unwrap_or_else(|| lower.to_string())
}

fn noun_lemma(lower: &str) -> String {
    if let Some(l) = IRREGULAR_NOUNS.get(lower) {
        return (*l).to_string();
    }
    if lower.len() <= 3 || lower.ends_with("ss") || lower.ends_with("us") || lower.ends_with("is") {
        return lower.to_string();
    }
    if let Some(stem) = lower.strip_suffix("ies") {
        return format!("{stem}y");
    }
    if let Some(stem) = lower.strip_suffix("es") {
        if stem.ends_with('s')
            || stem.ends_with('x')
            || stem.ends_with('z')
            || stem.ends_with("sh")
            || stem.ends_with("ch")
        {
            return stem.to_string();
        }
    }
    if let Some(stem) = lower.strip_suffix('s') {
        return stem.to_string();
    }
    lower.to_string()
}

/// Lemma of `surface` read as part of speech `pos`. Unknown forms come back
/// lowercased.
pub fn lemmatize(surface: &str, pos: Pos) -> String {
    let lower = surface.to_lowercase();
    match pos {
        Pos::Verb | Pos::Aux | Pos::Modal => {
            if let Some(l) = IRREGULAR_VERBS.get(lower.as_str()) {
                return (*l).to_string();
            }
            if pos == Pos::Modal {
                return lower;
            }
            verb_lemma(&lower)
        }
        Pos::Noun => {
            if lower.chars().all(|c| c.is_alphabetic()) {
                noun_lemma(&lower)
            } else {
                lower
            }
        }
        _ => lower,
    }
}
