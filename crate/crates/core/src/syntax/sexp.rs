use std::fmt;

use super::{ParseError, ParseErrorKind};

/// Lists may nest at most this deep; deeper input is rejected instead of
/// exhausting the stack.
pub const MAX_DEPTH: usize = 256;

/// 1-based line and column (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom { text: String, pos: Pos },
    List { items: Vec<Sexp>, pos: Pos },
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom { pos, .. } | Sexp::List { pos, .. } => *pos,
        }
    }
}

fn is_atom_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '+' | '.' | '*' | '/' | '!' | '?')
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn error(&self, pos: Pos, kind: ParseErrorKind, expected: &[&str]) -> ParseError {
        ParseError::new(pos, kind).expecting(expected)
    }

    fn read(&mut self, depth: usize) -> Result<Option<Sexp>, ParseError> {
        self.skip_trivia();
        let pos = self.pos;
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            '(' => {
                if depth >= MAX_DEPTH {
                    return Err(self.error(pos, ParseErrorKind::TooDeep, &[]));
                }
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => return Err(self.error(self.pos, ParseErrorKind::UnexpectedEof, &[")", "(", "atom"])),
                        Some(')') => {
                            self.bump();
                            return Ok(Some(Sexp::List { items, pos }));
                        }
                        Some(_) => items.push(self.read(depth + 1)?.expect("input remains")),
                    }
                }
            }
            ')' => Err(self.error(pos, ParseErrorKind::Unexpected(")".into()), &["(", "atom"])),
            c if is_atom_char(c) => {
                let mut text = String::new();
                while let Some(&c) = self.chars.peek() {
                    if !is_atom_char(c) {
                        break;
                    }
                    text.push(c);
                    self.bump();
                }
                Ok(Some(Sexp::Atom { text, pos }))
            }
            other => Err(self.error(pos, ParseErrorKind::Unexpected(other.escape_debug().to_string()), &["(", ")", "atom"])),
        }
    }
}

/// Reads every top-level form of `text`.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut r = Reader { chars: text.chars().peekable(), pos: Pos { line: 1, column: 1 } };
    let mut out = Vec::new();
    while let Some(s) = r.read(0)? {
        out.push(s);
    }
    Ok(out)
}

/// Position just past the end of `text`, for errors about missing input.
pub fn end_pos(text: &str) -> Pos {
    let mut pos = Pos { line: 1, column: 1 };
    for c in text.chars() {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    }
    pos
}
