//! Plain-text presentation format.
//!
//! ```text
//! # comment
//! gens: r0 r1 r2
//! rel: r0^2
//! rel: (r0 r1)^6
//! rel: [r0, (r1 r2)^4]
//! rel: ((r0 r2 r1)^4)^(r1)
//! ```
//!
//! Words are juxtaposed factors. A factor is a generator name, `1`, a
//! parenthesized word or a commutator `[u, v]`, followed by any number of
//! `'` (inverse), `^k` (power) or `^(c)` (conjugation `c⁻¹ w c`).

use std::fmt::Write as _;

use thiserror::Error;

use crate::fpcore::{FpError, Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `gens:` line")]
    MissingGens,
    #[error(transparent)]
    Presentation(#[from] FpError),
}

fn syntax(line: usize, message: impl Into<String>) -> TextError {
    TextError::Syntax {
        line,
        message: message.into(),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
    line: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), TextError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn error(&self, msg: impl Into<String>) -> TextError {
        syntax(
            self.line,
            format!("{} at column {}", msg.into(), self.pos + 1),
        )
    }

    fn word(&mut self) -> Result<Word, TextError> {
        let mut w = Word::identity();
        while let Some(c) = self.peek() {
            if c == b')' || c == b']' || c == b',' {
                break;
            }
            let f = self.factor()?;
            w = w.mul(&f);
        }
        Ok(w)
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn integer(&mut self) -> Result<i64, TextError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && (self.src[self.pos] == b'-' || self.src[self.pos] == b'+') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse()
            .map_err(|_| self.error("expected an integer exponent"))
    }

    fn atom(&mut self) -> Result<Word, TextError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b',')?;
                let b = self.word()?;
                self.expect(b']')?;
                Ok(a.commutator(&b))
            }
            Some(c) if c.is_ascii_alphanumeric() || c == b'_' => {
                let name = self.ident();
                if name == "1" {
                    return Ok(Word::identity());
                }
                match self.names.iter().position(|n| n == name) {
                    Some(g) => Ok(Word::gen(g)),
                    None => Err(self.error(format!("unknown generator `{name}`"))),
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of word")),
        }
    }

    fn factor(&mut self) -> Result<Word, TextError> {
        let mut w = self.atom()?;
        loop {
            // Postfix operators bind without intervening whitespace rules.
            match self.peek() {
                Some(b'\'') => {
                    self.pos += 1;
                    w = w.inverse();
                }
                Some(b'^') => {
                    self.pos += 1;
                    if self.peek() == Some(b'(') {
                        self.pos += 1;
                        let c = self.word()?;
                        self.expect(b')')?;
                        w = w.conjugate(&c);
                    } else {
                        let e = self.integer()?;
                        w = w.pow(e);
                    }
                }
                _ => return Ok(w),
            }
        }
    }
}

/// Parses one word over `names`.
pub fn parse_word(s: &str, names: &[String]) -> Result<Word, TextError> {
    parse_word_at(s, names, 1)
}

fn parse_word_at(s: &str, names: &[String], line: usize) -> Result<Word, TextError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        names,
        line,
    };
    let w = p.word()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(w)
}

pub fn parse_presentation(s: &str) -> Result<Presentation, TextError> {
    let mut names: Option<Vec<String>> = None;
    let mut rels = Vec::new();
    for (i, raw) in s.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (key, rest) = text
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected `gens:` or `rel:`"))?;
        match key.trim() {
            "gens" => {
                if names.is_some() {
                    return Err(syntax(line, "duplicate `gens:` line"));
                }
                let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for n in &list {
                    let ok = n
                        .chars()
                        .next()
                        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                        && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !ok {
                        return Err(syntax(line, format!("invalid generator name `{n}`")));
                    }
                }
                names = Some(list);
            }
            "rel" => {
                let names = names.as_ref().ok_or(TextError::MissingGens)?;
                rels.push(parse_word_at(rest, names, line)?);
            }
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }
    let names = names.ok_or(TextError::MissingGens)?;
    Ok(Presentation::new(names, rels)?)
}

/// Prints a word exactly: a proper power of a shorter word is shown as
/// `(u)^k`, a conjugate of one as `(u)^k^(c)`, otherwise runs of a repeated
/// letter fold to `x^k`.
pub fn format_word(w: &Word, names: &[String]) -> String {
    let letters = w.letters();
    if letters.is_empty() {
        return "1".to_string();
    }
    if let Some(s) = format_power(letters, names) {
        return s;
    }
    let n = letters.len();
    let mut j = 1;
    while 2 * j < n && letters[j - 1] == letters[n - j].inv() {
        if let Some(inner) = format_power(&letters[j..n - j], names) {
            let c = Word::new(letters[n - j..].iter().copied());
            return format!("{inner}^({})", format_runs(&c, names));
        }
        j += 1;
    }
    format_runs(w, names)
}

/// `(u)^k` when `letters` is an exact power `k ≥ 2` of a word of length ≥ 2.
fn format_power(letters: &[crate::fpcore::Letter], names: &[String]) -> Option<String> {
    let n = letters.len();
    (2..n)
        .find(|&period| {
            n.is_multiple_of(period) && (period..n).all(|i| letters[i] == letters[i - period])
        })
        .map(|period| {
            let base = Word::new(letters[..period].iter().copied());
            format!("({})^{}", format_runs(&base, names), n / period)
        })
}

fn format_runs(w: &Word, names: &[String]) -> String {
    let letters = w.letters();
    let mut out = String::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        let l = letters[i];
        let name = &names[l.gen];
        let run = (j - i) as i64;
        match (run, l.inverse) {
            (1, false) => out.push_str(name),
            (1, true) => {
                let _ = write!(out, "{name}'");
            }
            (k, false) => {
                let _ = write!(out, "{name}^{k}");
            }
            (k, true) => {
                let _ = write!(out, "{name}^-{k}");
            }
        }
        i = j;
    }
    out
}

pub fn format_presentation(p: &Presentation) -> String {
    let names = p.generator_names();
    let mut out = format!("gens: {}\n", names.join(" "));
    for r in p.relators() {
        let _ = writeln!(out, "rel: {}", format_word(r, names));
    }
    out
}
