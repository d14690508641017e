//! Tagged text linearization of events.
//!
//! An event is written as `[EV] <type>` followed by one `[<TAG>] <span>`
//! segment per span, roles in registry order, spans in their stored order.
//! A literal `[` inside a span is written as `[[`, so span text can never be
//! mistaken for a tag.

use std::fmt::Write as _;

use thiserror::Error;

use super::schema::{ArgumentRole, EventType, PharmaEvent, Span};

const EVENT_TAG: &str = "EV";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearizeError {
    #[error("sequence does not start with `[EV]` (position {position})")]
    MissingEventPrefix { position: usize },
    #[error("unknown event type `{found}` at position {position}")]
    UnknownEventType { found: String, position: usize },
    #[error("unknown tag `[{tag}]` at position {position}")]
    UnknownTag { tag: String, position: usize },
    #[error("unterminated tag at position {position}")]
    UnterminatedTag { position: usize },
    #[error("empty span after `[{tag}]` at position {position}")]
    EmptySpan { tag: String, position: usize },
    #[error("sub-role `{role}` without its main role `{parent}`")]
    DanglingSubRole { role: ArgumentRole, parent: ArgumentRole },
}

pub fn linearize(event: &PharmaEvent) -> String {
    let mut out = format!("[{EVENT_TAG}] {}", event.event_type);
    // BTreeMap iteration follows the registry order.
    for (role, spans) in &event.args {
        let tag = role.tag();
        for span in spans {
            let _ = write!(out, " [{tag}] {}", escape(&span.text));
        }
    }
    out
}

fn escape(text: &str) -> String {
    text.replace('[', "[[")
}

#[derive(Debug, PartialEq)]
enum Token {
    Tag { name: String, position: usize },
    Text { text: String, position: usize },
}

fn tokenize(seq: &str) -> Result<Vec<Token>, LinearizeError> {
    let mut tokens = Vec::new();
    let mut text = String::new();
    let mut text_start = 0;
    let mut chars = seq.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c != '[' {
            if text.is_empty() {
                text_start = i;
            }
            text.push(c);
            continue;
        }
        if let Some(&(_, '[')) = chars.peek() {
            chars.next();
            if text.is_empty() {
                text_start = i;
            }
            text.push('[');
            continue;
        }
        if !text.is_empty() {
            tokens.push(Token::Text { text: std::mem::take(&mut text), position: text_start });
        }
        let mut name = String::new();
        let mut closed = false;
        for (_, c) in chars.by_ref() {
            if c == ']' {
                closed = true;
                break;
            }
            name.push(c);
        }
        if !closed {
            return Err(LinearizeError::UnterminatedTag { position: i });
        }
        tokens.push(Token::Tag { name, position: i });
    }
    if !text.is_empty() {
        tokens.push(Token::Text { text, position: text_start });
    }
    Ok(tokens)
}

/// Parses a single linearized event.
pub fn delinearize(seq: &str) -> Result<PharmaEvent, LinearizeError> {
    let mut events = delinearize_many(seq)?;
    match events.len() {
        1 => Ok(events.remove(0)),
        0 => Err(LinearizeError::MissingEventPrefix { position: 0 }),
        _ => {
            let position = seq.match_indices("[EV]").nth(1).map(|(i, _)| i).unwrap_or(0);
            Err(LinearizeError::UnknownTag { tag: EVENT_TAG.into(), position })
        }
    }
}

/// Parses a sequence holding zero or more concatenated linearized events,
/// as produced by sequence-to-sequence models.
pub fn delinearize_many(seq: &str) -> Result<Vec<PharmaEvent>, LinearizeError> {
    let tokens = tokenize(seq)?;
    let mut events = Vec::new();
    let mut iter = tokens.into_iter().peekable();
    let mut current: Option<PharmaEvent> = None;

    while let Some(token) = iter.next() {
        match token {
            Token::Text { text, position } => {
                if !text.trim().is_empty() {
                    return Err(LinearizeError::MissingEventPrefix { position });
                }
            }
            Token::Tag { name, position } if name == EVENT_TAG => {
                if let Some(done) = current.take() {
                    events.push(finish(done)?);
                }
                let (found, at) = match iter.next_if(|t| matches!(t, Token::Text { .. })) {
                    Some(Token::Text { text, position }) => (text.trim().to_string(), position),
                    _ => (String::new(), position + EVENT_TAG.len() + 2),
                };
                let event_type = match found.as_str() {
                    "ADE" => EventType::Ade,
                    "PTE" => EventType::Pte,
                    _ => return Err(LinearizeError::UnknownEventType { found, position: at }),
                };
                current = Some(PharmaEvent::new(event_type));
            }
            Token::Tag { name, position } => {
                let Some(event) = current.as_mut() else {
                    return Err(LinearizeError::MissingEventPrefix { position });
                };
                let role = ArgumentRole::from_tag(&name)
                    .ok_or_else(|| LinearizeError::UnknownTag { tag: name.clone(), position })?;
                let text = match iter.next_if(|t| matches!(t, Token::Text { .. })) {
                    Some(Token::Text { text, .. }) => text.trim().to_string(),
                    _ => String::new(),
                };
                if text.is_empty() {
                    return Err(LinearizeError::EmptySpan { tag: name, position });
                }
                event.push(role, Span::new(text));
            }
        }
    }
    if let Some(done) = current.take() {
        events.push(finish(done)?);
    } else if events.is_empty() && !seq.trim().is_empty() {
        return Err(LinearizeError::MissingEventPrefix { position: 0 });
    }
    Ok(events)
}

fn finish(event: PharmaEvent) -> Result<PharmaEvent, LinearizeError> {
    for role in event.args.keys() {
        if let Some(parent) = role.parent() {
            if !event.args.contains_key(&parent) {
                return Err(LinearizeError::DanglingSubRole { role: *role, parent });
            }
        }
    }
    Ok(event)
}
