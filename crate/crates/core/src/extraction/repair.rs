//! Completion of truncated JSON.
//!
//! [`repair_json`] takes a prefix of a JSON document and returns the shortest
//! sensible completion that parses. The input is validated as it is scanned,
//! so text that cannot be the start of any JSON document is rejected with
//! the offset of the first offending character.
//!
//! Completion rules, applied to the innermost open construct:
//!
//! | truncated at                         | action                                   |
//! |--------------------------------------|------------------------------------------|
//! | nothing / whitespace only            | output `null`                            |
//! | inside a string value                | drop any partial escape, close the quote |
//! | inside an object key, or after a key | drop the key (and its leading comma)     |
//! | after `:`                            | append `null`                            |
//! | after `,`                            | drop the comma                           |
//! | partial `true` / `false` / `null`    | complete the literal                     |
//! | number ending in `.`, `e`, `e+`      | cut back to the last valid number        |
//! | lone `-`                             | treat the value as missing               |
//!
//! Every open container is then closed in stack order. Input that is already
//! a complete document is returned unchanged, which makes the repair
//! idempotent.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a JSON prefix at byte {offset}: {message}")]
pub struct RepairError {
    pub offset: usize,
    pub message: &'static str,
}

fn fail<T>(offset: usize, message: &'static str) -> Result<T, RepairError> {
    Err(RepairError { offset, message })
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum ObjState {
    KeyOrEnd,
    Key,
    InKey,
    AfterKey,
    Value,
    AfterValue,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum ArrState {
    ValueOrEnd,
    Value,
    AfterValue,
}

#[derive(Debug, Clone, Copy)]
enum Frame {
    Object { state: ObjState, comma: Option<usize>, key_start: usize },
    Array { state: ArrState, comma: Option<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum NumState {
    Minus,
    Zero,
    Int,
    Dot,
    Frac,
    Exp,
    ExpSign,
    ExpDigits,
}

impl NumState {
    fn is_complete(self) -> bool {
        matches!(self, NumState::Zero | NumState::Int | NumState::Frac | NumState::ExpDigits)
    }
}

#[derive(Debug, Clone, Copy)]
enum Escape {
    None,
    Backslash(usize),
    Unicode { start: usize, digits: u8, code: u32 },
}

#[derive(Debug, Clone, Copy)]
enum Scalar {
    None,
    Str { key: bool, escape: Escape, high_surrogate: Option<usize> },
    Literal { word: &'static str, matched: usize },
    Number { state: NumState, start: usize, dot: usize, exp: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Top {
    Start,
    Done,
}

struct Scanner {
    stack: Vec<Frame>,
    scalar: Scalar,
    top: Top,
}

fn is_ws(c: char) -> bool {
    matches!(c, ' ' | '\t' | '\n' | '\r')
}

impl Scanner {
    fn new() -> Self {
        Scanner { stack: Vec::new(), scalar: Scalar::None, top: Top::Start }
    }

    fn begin_value(&mut self, i: usize, c: char) -> Result<(), RepairError> {
        match c {
            '{' => self.stack.push(Frame::Object { state: ObjState::KeyOrEnd, comma: None, key_start: 0 }),
            '[' => self.stack.push(Frame::Array { state: ArrState::ValueOrEnd, comma: None }),
            '"' => {
                self.scalar = Scalar::Str { key: false, escape: Escape::None, high_surrogate: None }
            }
            't' => self.scalar = Scalar::Literal { word: "true", matched: 1 },
            'f' => self.scalar = Scalar::Literal { word: "false", matched: 1 },
            'n' => self.scalar = Scalar::Literal { word: "null", matched: 1 },
            '-' => self.scalar = Scalar::Number { state: NumState::Minus, start: i, dot: 0, exp: 0 },
            '0' => self.scalar = Scalar::Number { state: NumState::Zero, start: i, dot: 0, exp: 0 },
            '1'..='9' => self.scalar = Scalar::Number { state: NumState::Int, start: i, dot: 0, exp: 0 },
            _ => return fail(i, "expected a value"),
        }
        Ok(())
    }

    fn end_value(&mut self) {
        self.scalar = Scalar::None;
        match self.stack.last_mut() {
            None => self.top = Top::Done,
            Some(Frame::Object { state, .. }) => *state = ObjState::AfterValue,
            Some(Frame::Array { state, .. }) => *state = ArrState::AfterValue,
        }
    }

    fn close(&mut self, i: usize, c: char) -> Result<(), RepairError> {
        let matches = matches!(
            (self.stack.last(), c),
            (Some(Frame::Object { .. }), '}') | (Some(Frame::Array { .. }), ']')
        );
        if !matches {
            return fail(i, "mismatched closing bracket");
        }
        self.stack.pop();
        self.end_value();
        Ok(())
    }

    fn step(&mut self, i: usize, c: char) -> Result<(), RepairError> {
        match self.scalar {
            Scalar::Str { .. } => return self.string_char(i, c),
            Scalar::Literal { word, matched } => {
                if word.as_bytes()[matched] as char != c {
                    return fail(i, "invalid literal");
                }
                if matched + 1 == word.len() {
                    self.end_value();
                } else {
                    self.scalar = Scalar::Literal { word, matched: matched + 1 };
                }
                return Ok(());
            }
            Scalar::Number { .. } => {
                if self.number_char(i, c)? {
                    return Ok(());
                }
                // The number ended; `c` belongs to the enclosing context.
                self.end_value();
            }
            Scalar::None => {}
        }
        self.structural(i, c)
    }

    /// Returns `Ok(false)` when `c` terminates a complete number.
    fn number_char(&mut self, i: usize, c: char) -> Result<bool, RepairError> {
        let Scalar::Number { state, start, dot, exp } = self.scalar else { unreachable!() };
        use NumState::*;
        let (next, dot, exp) = match (state, c) {
            (Minus, '0') => (Zero, dot, exp),
            (Minus, '1'..='9') => (Int, dot, exp),
            (Minus, _) => return fail(i, "expected digit after minus sign"),
            (Int, '0'..='9') => (Int, dot, exp),
            (Zero | Int, '.') => (Dot, i, exp),
            (Zero | Int | Frac, 'e' | 'E') => (Exp, dot, i),
            (Dot, '0'..='9') | (Frac, '0'..='9') => (Frac, dot, exp),
            (Dot, _) => return fail(i, "expected digit after decimal point"),
            (Exp, '+' | '-') => (ExpSign, dot, exp),
            (Exp | ExpSign | ExpDigits, '0'..='9') => (ExpDigits, dot, exp),
            (Exp | ExpSign, _) => return fail(i, "expected exponent digits"),
            (Zero, '0'..='9') => return fail(i, "leading zero in number"),
            _ => return Ok(false),
        };
        self.scalar = Scalar::Number { state: next, start, dot, exp };
        Ok(true)
    }

    fn string_char(&mut self, i: usize, c: char) -> Result<(), RepairError> {
        let Scalar::Str { key, escape, mut high_surrogate } = self.scalar else { unreachable!() };
        let escape = match escape {
            Escape::None => match c {
                '"' => {
                    if high_surrogate.is_some() {
                        return fail(i, "unpaired surrogate escape");
                    }
                    if key {
                        if let Some(Frame::Object { state, .. }) = self.stack.last_mut() {
                            *state = ObjState::AfterKey;
                        }
                        self.scalar = Scalar::None;
                    } else {
                        self.end_value();
                    }
                    return Ok(());
                }
                '\\' => Escape::Backslash(i),
                c if (c as u32) < 0x20 => return fail(i, "control character in string"),
                _ if high_surrogate.is_some() => return fail(i, "unpaired surrogate escape"),
                _ => Escape::None,
            },
            Escape::Backslash(start) => match c {
                '"' | '\\' | '/' | 'b' | 'f' | 'n' | 'r' | 't' if high_surrogate.is_some() => {
                    return fail(i, "unpaired surrogate escape")
                }
                '"' | '\\' | '/' | 'b' | 'f' | 'n' | 'r' | 't' => Escape::None,
                'u' => Escape::Unicode { start, digits: 0, code: 0 },
                _ => return fail(i, "invalid escape"),
            },
            Escape::Unicode { start, digits, code } => {
                let Some(d) = c.to_digit(16) else {
                    return fail(i, "invalid unicode escape");
                };
                let code = code * 16 + d;
                if digits < 3 {
                    Escape::Unicode { start, digits: digits + 1, code }
                } else {
                    match (code, high_surrogate) {
                        (0xD800..=0xDBFF, None) => high_surrogate = Some(start),
                        (0xDC00..=0xDFFF, Some(_)) => high_surrogate = None,
                        (0xD800..=0xDFFF, _) | (_, Some(_)) => {
                            return fail(start, "unpaired surrogate escape")
                        }
                        _ => {}
                    }
                    Escape::None
                }
            }
        };
        self.scalar = Scalar::Str { key, escape, high_surrogate };
        Ok(())
    }

    fn structural(&mut self, i: usize, c: char) -> Result<(), RepairError> {
        let Some(frame) = self.stack.last_mut() else {
            if is_ws(c) {
                return Ok(());
            }
            return match self.top {
                Top::Start => self.begin_value(i, c),
                Top::Done => fail(i, "trailing characters after document"),
            };
        };
        if is_ws(c) {
            return Ok(());
        }
        match frame {
            Frame::Object { state, comma, key_start } => match (*state, c) {
                (ObjState::KeyOrEnd | ObjState::Key, '"') => {
                    *state = ObjState::InKey;
                    *key_start = i;
                    self.scalar = Scalar::Str { key: true, escape: Escape::None, high_surrogate: None };
                    Ok(())
                }
                (ObjState::KeyOrEnd | ObjState::AfterValue, '}') => self.close(i, c),
                (ObjState::AfterKey, ':') => {
                    *state = ObjState::Value;
                    Ok(())
                }
                (ObjState::Value, _) => self.begin_value(i, c),
                (ObjState::AfterValue, ',') => {
                    *state = ObjState::Key;
                    *comma = Some(i);
                    Ok(())
                }
                (ObjState::KeyOrEnd | ObjState::Key, _) => fail(i, "expected object key"),
                (ObjState::AfterKey, _) => fail(i, "expected `:`"),
                (ObjState::AfterValue, _) => fail(i, "expected `,` or `}`"),
                (ObjState::InKey, _) => unreachable!("key characters are consumed as a string"),
            },
            Frame::Array { state, comma } => match (*state, c) {
                (ArrState::ValueOrEnd | ArrState::AfterValue, ']') => self.close(i, c),
                (ArrState::ValueOrEnd | ArrState::Value, _) => self.begin_value(i, c),
                (ArrState::AfterValue, ',') => {
                    *state = ArrState::Value;
                    *comma = Some(i);
                    Ok(())
                }
                (ArrState::AfterValue, _) => fail(i, "expected `,` or `]`"),
            },
        }
    }

    fn finish(self, input: &str) -> String {
        let mut cut = input.len();
        let mut completion = String::new();
        // True when the innermost context still lacks the value it expects.
        let mut missing_value = false;

        match self.scalar {
            Scalar::None => missing_value = true,
            Scalar::Str { key: true, .. } => {}
            Scalar::Str { key: false, escape, high_surrogate } => {
                if let Escape::Backslash(start) | Escape::Unicode { start, .. } = escape {
                    cut = start;
                }
                if let Some(start) = high_surrogate {
                    cut = start;
                }
                completion.push('"');
            }
            Scalar::Literal { word, matched } => completion.push_str(&word[matched..]),
            Scalar::Number { state, start, dot, exp } => match state {
                NumState::Minus => {
                    cut = start;
                    missing_value = true;
                }
                NumState::Dot => cut = dot,
                NumState::Exp | NumState::ExpSign => cut = exp,
                _ => {}
            },
        }

        match self.stack.last() {
            None => {
                if self.top == Top::Start && missing_value {
                    return "null".to_string();
                }
            }
            Some(Frame::Object { state, comma, key_start }) => match state {
                ObjState::Key => cut = comma.expect("comma recorded"),
                ObjState::InKey | ObjState::AfterKey => cut = comma.unwrap_or(*key_start),
                ObjState::Value if missing_value => {
                    let ends_with_ws = input[..cut].ends_with(is_ws);
                    completion.push_str(if ends_with_ws { "null" } else { " null" });
                }
                _ => {}
            },
            Some(Frame::Array { state: ArrState::Value, comma }) if missing_value => {
                cut = comma.expect("comma recorded");
            }
            Some(Frame::Array { .. }) => {}
        }

        for frame in self.stack.iter().rev() {
            completion.push(match frame {
                Frame::Object { .. } => '}',
                Frame::Array { .. } => ']',
            });
        }
        let mut out = String::with_capacity(cut + completion.len());
        out.push_str(&input[..cut]);
        out.push_str(&completion);
        out
    }
}

/// Completes a truncated JSON document so that it parses.
///
/// Offsets in errors are byte offsets into `partial`.
pub fn repair_json(partial: &str) -> Result<String, RepairError> {
    let mut scanner = Scanner::new();
    for (i, c) in partial.char_indices() {
        scanner.step(i, c)?;
    }
    let complete = match scanner.scalar {
        Scalar::None => scanner.top == Top::Done,
        Scalar::Number { state, .. } => scanner.stack.is_empty() && state.is_complete(),
        _ => false,
    };
    if complete {
        return Ok(partial.to_string());
    }
    Ok(scanner.finish(partial))
}
