//! Reader for the line-oriented presentation language.
//!
//! ```text
//! # genus-2 surface group
//! gens a1, b1, a2, b2;
//! rel [a1,b1][a2,b2];
//! ```
//!
//! A word is a juxtaposition of factors. A factor is a generator name, the
//! case-swapped name for its inverse (`A` = `a^-1`), a bracketed commutator
//! `[x, y]` of two words, or a parenthesized word; any factor may carry a
//! power `^k` with `k` a possibly negative integer.

use super::{Presentation, PresentationError, Word};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Caret,
    Minus,
    Comma,
    Semi,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Star,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, PresentationError> {
    let mut out = Vec::new();
    for (li, raw_line) in text.lines().enumerate() {
        let line = li + 1;
        let content = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let chars: Vec<char> = content.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let simple = match c {
                '^' => Some(Tok::Caret),
                '-' => Some(Tok::Minus),
                ',' => Some(Tok::Comma),
                ';' => Some(Tok::Semi),
                '[' => Some(Tok::LBracket),
                ']' => Some(Tok::RBracket),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                '*' => Some(Tok::Star),
                _ => None,
            };
            if let Some(tok) = simple {
                out.push(Spanned { tok, line, col });
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse::<i64>().map_err(|_| PresentationError::Syntax {
                    line,
                    col,
                    message: format!("integer out of range: {s}"),
                })?;
                out.push(Spanned { tok: Tok::Int(n), line, col });
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), line, col });
            } else {
                return Err(PresentationError::Syntax { line, col, message: format!("unexpected character '{c}'") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    names: Vec<String>,
    end_line: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(s) => (s.line, s.col),
            None => (self.end_line, 1),
        }
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, PresentationError> {
        let (line, col) = self.here();
        Err(PresentationError::Syntax { line, col, message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), PresentationError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.syntax(format!("expected {what}"))
        }
    }

    fn resolve(&self, name: &str) -> Option<(usize, i64)> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Some((i, 1));
        }
        let swapped: String = name
            .chars()
            .map(|c| if c.is_uppercase() { c.to_lowercase().next().unwrap() } else { c.to_uppercase().next().unwrap() })
            .collect();
        if swapped != name {
            if let Some(i) = self.names.iter().position(|n| *n == swapped) {
                return Some((i, -1));
            }
        }
        None
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::LBracket) | Some(Tok::LParen))
    }

    fn word(&mut self) -> Result<Word, PresentationError> {
        let mut w = Word::identity();
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                if !self.starts_factor() {
                    return self.syntax("expected a factor after '*'");
                }
            }
            if !self.starts_factor() {
                break;
            }
            let f = self.factor()?;
            w = w.mul(&f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, PresentationError> {
        let (line, col) = self.here();
        let base = match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.resolve(&name) {
                    Some((g, e)) => Word::power_of(g, e),
                    None => return Err(PresentationError::UnknownGenerator { name, line, col }),
                }
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(Tok::Comma, "',' inside commutator")?;
                let y = self.word()?;
                self.expect(Tok::RBracket, "']'")?;
                Word::commutator(&x, &y)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(Tok::RParen, "')'")?;
                x
            }
            _ => return self.syntax("expected a generator, '[' or '('"),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    return Ok(base.pow(if neg { -k } else { k }));
                }
                _ => return self.syntax("expected an integer exponent"),
            }
        }
        Ok(base)
    }
}

/// Parses presentation-language text. Relators come back freely reduced.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, names: Vec::new(), end_line: text.lines().count().max(1) };
    let mut relators = Vec::new();
    let mut seen_gens = false;

    while let Some(tok) = p.peek().cloned() {
        match tok {
            Tok::Ident(kw) if kw == "gens" => {
                if seen_gens {
                    return p.syntax("duplicate 'gens' statement");
                }
                p.pos += 1;
                seen_gens = true;
                while let Some(Tok::Ident(name)) = p.peek().cloned() {
                    let (line, col) = p.here();
                    if p.names.contains(&name) {
                        return Err(PresentationError::DuplicateGenerator { name, line, col });
                    }
                    p.names.push(name);
                    p.pos += 1;
                    if p.peek() == Some(&Tok::Comma) {
                        p.pos += 1;
                    } else {
                        break;
                    }
                }
                if p.names.is_empty() {
                    return Err(PresentationError::EmptyGenerators);
                }
                p.expect(Tok::Semi, "';' after generator list")?;
            }
            Tok::Ident(kw) if kw == "rel" => {
                if !seen_gens {
                    return p.syntax("'rel' before 'gens'");
                }
                p.pos += 1;
                let w = p.word()?;
                p.expect(Tok::Semi, "';' after relator")?;
                relators.push(w);
            }
            _ => return p.syntax("expected 'gens' or 'rel'"),
        }
    }
    if !seen_gens {
        return Err(PresentationError::EmptyGenerators);
    }
    Presentation::new(p.names, relators)
}
