//! Lexicon-driven frame tagger and frame-element assignment.

use std::ops::Range;

use crate::lexicon::{FrameDef, FrameLexicon, PatternExpr, Side};
use crate::model::{FrameElement, FrameInstance, FrameSource, Pos, Sentence, Span, Token};
use crate::text::CLAUSE_CONJUNCTIONS;

use super::ParseResult;

/// Evokes frames for every token whose `lemma.pos` is a lexical unit, then
/// fills in frame elements from the frame's realization patterns.
pub fn tag_frames(sentence: &Sentence, lex: &FrameLexicon) -> ParseResult {
    let tokens = &sentence.tokens;
    let mut frames = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let mut consumed = 1;
        let longest = lex.max_unit_words().min(tokens.len() - i);
        for width in (1..=longest).rev() {
            if let Some(frame) = lookup(lex, &tokens[i..i + width]) {
                let target = Span::new(
                    &sentence.text,
                    tokens[i].span.start(),
                    tokens[i + width - 1].span.end(),
                )
                .expect("token spans lie inside the sentence");
                let bare = FrameInstance {
                    frame: frame.name.clone(),
                    target,
                    elements: Vec::new(),
                    source: FrameSource::Baseline,
                    sentence_id: sentence.id.clone(),
                };
                frames.push(assign_frame_elements(&bare, sentence, lex));
                consumed = width;
                break;
            }
        }
        i += consumed;
    }
    frames.sort_by_key(|f| f.target.start());
    ParseResult {
        sentence: sentence.clone(),
        frames,
    }
}

fn lookup<'a>(lex: &'a FrameLexicon, window: &[Token]) -> Option<&'a FrameDef> {
    let last = window.last()?;
    if window.iter().any(|t| matches!(t.pos, Pos::Punct | Pos::Aux)) {
        return None;
    }
    let pos = last.pos.lu_suffix()?;
    let lemma = window
        .iter()
        .map(|t| t.lemma.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    lex.frames_for(&lemma, pos).into_iter().next()
}

/// Applies the frame's patterns outward from the target, left and right.
/// Elements whose pattern does not match are omitted.
pub fn assign_frame_elements(
    fi: &FrameInstance,
    sentence: &Sentence,
    lex: &FrameLexicon,
) -> FrameInstance {
    let mut out = fi.clone();
    let Some(def) = lex.get(&fi.frame) else {
        return out;
    };
    let tokens = &sentence.tokens;
    let covered: Vec<usize> = sentence.tokens_in(&fi.target).map(|(i, _)| i).collect();
    let (Some(&first), Some(&last)) = (covered.first(), covered.last()) else {
        return out;
    };

    let mut right_cursor = last + 1;
    let mut left_cursor = first; // exclusive upper bound of the left side
    let mut elements: Vec<FrameElement> = Vec::new();
    for pat in &def.patterns {
        if elements.iter().any(|e| e.name == pat.element) {
            continue;
        }
        let range = match pat.side {
            Side::Right => match_right(tokens, right_cursor, &pat.expr),
            Side::Left => match_left(tokens, left_cursor, &pat.expr),
        };
        let Some(range) = range else { continue };
        match pat.side {
            Side::Right => right_cursor = range.end,
            Side::Left => left_cursor = range.start,
        }
        let span = Span::new(
            &sentence.text,
            tokens[range.start].span.start(),
            tokens[range.end - 1].span.end(),
        )
        .expect("token spans lie inside the sentence");
        let core = def.element(&pat.element).is_some_and(|e| e.core);
        elements.push(FrameElement {
            name: pat.element.clone(),
            span,
            core,
        });
    }
    elements.sort_by_key(|e| e.span.start());
    out.elements = elements;
    out
}

fn is_np_token(t: &Token) -> bool {
    matches!(t.pos, Pos::Det | Pos::Adj | Pos::Noun | Pos::Ident | Pos::Num)
}

fn is_np_head(t: &Token) -> bool {
    matches!(t.pos, Pos::Noun | Pos::Ident | Pos::Num)
}

fn is_verb_token(t: &Token) -> bool {
    t.pos.is_verbal()
}

fn is_hard_break(t: &Token) -> bool {
    matches!(t.span.text(), "," | ";")
}

fn is_marked_break(t: &Token) -> bool {
    is_hard_break(t)
        || matches!(t.span.text(), "." | "!" | "?")
        || (t.pos == Pos::Conj && CLAUSE_CONJUNCTIONS.contains(t.lemma.as_str()))
}

fn match_right(tokens: &[Token], from: usize, expr: &PatternExpr) -> Option<Range<usize>> {
    if from >= tokens.len() {
        return None;
    }
    let end = match expr {
        PatternExpr::NounPhrase => {
            if tokens[from].pos == Pos::Pron {
                from + 1
            } else {
                let mut end = from;
                while end < tokens.len() && is_np_token(&tokens[end]) {
                    end += 1;
                }
                // Trim trailing determiners/adjectives without a head after them.
                while end > from && !is_np_head(&tokens[end - 1]) {
                    end -= 1;
                }
                end
            }
        }
        PatternExpr::VerbPhrase => {
            let mut end = from;
            while end < tokens.len()
                && (is_verb_token(&tokens[end])
                    || (tokens[end].pos == Pos::Adv
                        && tokens.get(end + 1).is_some_and(is_verb_token)))
            {
                end += 1;
            }
            end
        }
        PatternExpr::Clause => {
            let mut end = from;
            while end < tokens.len() && !is_hard_break(&tokens[end]) {
                end += 1;
            }
            end
        }
        PatternExpr::Marked(marker) => {
            if tokens[from].span.text().to_lowercase() != *marker {
                return None;
            }
            let mut end = from + 1;
            while end < tokens.len() && !is_marked_break(&tokens[end]) {
                end += 1;
            }
            // The marker alone is not a clause.
            if end == from + 1 {
                return None;
            }
            end
        }
    };
    (end > from).then_some(from..end)
}

fn match_left(tokens: &[Token], upto: usize, expr: &PatternExpr) -> Option<Range<usize>> {
    if upto == 0 {
        return None;
    }
    let start = match expr {
        PatternExpr::NounPhrase => {
            if tokens[upto - 1].pos == Pos::Pron {
                upto - 1
            } else {
                if !is_np_head(&tokens[upto - 1]) {
                    return None;
                }
                let mut start = upto;
                while start > 0 && is_np_token(&tokens[start - 1]) {
                    start -= 1;
                }
                start
            }
        }
        PatternExpr::VerbPhrase => {
            let mut start = upto;
            while start > 0
                && (is_verb_token(&tokens[start - 1])
                    || (tokens[start - 1].pos == Pos::Adv && start < upto))
            {
                start -= 1;
            }
            while start < upto && tokens[start].pos == Pos::Adv {
                start += 1;
            }
            start
        }
        PatternExpr::Clause => {
            let mut start = upto;
            while start > 0 && !is_hard_break(&tokens[start - 1]) {
                start -= 1;
            }
            start
        }
        PatternExpr::Marked(marker) => {
            let mut start = upto;
            while start > 0 && !is_marked_break(&tokens[start - 1]) {
                start -= 1;
                if tokens[start].span.text().to_lowercase() == *marker {
                    break;
                }
            }
            if tokens[start].span.text().to_lowercase() != *marker || start + 1 == upto {
                return None;
            }
            start
        }
    };
    (start < upto).then_some(start..upto)
}
