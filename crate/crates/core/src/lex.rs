//! Tokenizer shared by the polynomial syntax and the model file format.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// Identifier-like run of `[A-Za-z0-9_.']` that is not all digits.
    Word(String),
    /// Run of decimal digits.
    Int(String),
    Sym(char),
    Arrow,
    Newline,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        if c == '\n' {
            chars.next();
            out.push(Token {
                tok: Tok::Newline,
                line: l,
                col: k,
            });
            line += 1;
            col = 1;
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if is_word_char(c) {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if !is_word_char(c) {
                    break;
                }
                word.push(c);
                chars.next();
                col += 1;
            }
            let tok = if word.bytes().all(|b| b.is_ascii_digit()) {
                Tok::Int(word)
            } else {
                Tok::Word(word)
            };
            out.push(Token {
                tok,
                line: l,
                col: k,
            });
        } else if c == '-' {
            chars.next();
            col += 1;
            if chars.peek() == Some(&'>') {
                chars.next();
                col += 1;
                out.push(Token {
                    tok: Tok::Arrow,
                    line: l,
                    col: k,
                });
            } else {
                out.push(Token {
                    tok: Tok::Sym('-'),
                    line: l,
                    col: k,
                });
            }
        } else if "{};:=[],+*^()@/".contains(c) {
            chars.next();
            col += 1;
            out.push(Token {
                tok: Tok::Sym(c),
                line: l,
                col: k,
            });
        } else {
            return Err(Error::Parse {
                line: l,
                col: k,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// Cursor over a token slice with location-aware errors.
#[derive(Debug, Clone)]
pub struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek_token(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    pub fn advance(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos).map(|t| &t.tok);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    /// Step back over the last token.
    pub fn back(&mut self) {
        self.pos = self.pos.saturating_sub(1);
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn skip_newlines(&mut self) {
        while self.peek() == Some(&Tok::Newline) {
            self.pos += 1;
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        let (line, col) = match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        };
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    pub fn expect_arrow(&mut self) -> Result<()> {
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error("expected `->`"))
        }
    }

    /// A word or an integer, as written.
    pub fn expect_name(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Word(w)) | Some(Tok::Int(w)) => {
                self.pos += 1;
                Ok(w.clone())
            }
            _ => Err(self.error("expected a name")),
        }
    }

    pub fn expect_word(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                self.pos += 1;
                Ok(w.clone())
            }
            _ => Err(self.error("expected an identifier")),
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Word(w)) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected `{kw}`"))),
        }
    }

    pub fn expect_uint(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Int(d)) => {
                let v = d.parse().map_err(|_| self.error("integer too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected an integer")),
        }
    }
}
