//! Text grammar for words and group-ring elements.
//!
//! Word grammar: generators `x1`…`x99`; inverse `x1^-1` (any integer
//! exponent is accepted); concatenation by juxtaposition with optional
//! whitespace; commutator `[u,v]`; conjugation `u^(v)`; parentheses for
//! grouping; `1` for the identity.
//!
//! Group-ring grammar: `3*[x1,x2] + -1*x3^-1` — integer coefficient, `*`,
//! word, joined by `+`; `0` is the zero element.

use crate::error::ParseError;
use crate::words::Word;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    /// Peeks without skipping whitespace first.
    fn peek_raw(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.bytes.get(self.pos).copied();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == b => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(ParseError::syntax(
                self.pos,
                format!("expected '{}'", b as char),
            )),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut neg = false;
        if self.peek_raw() == Some(b'-') {
            neg = true;
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.peek_raw(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ParseError::syntax(start, "expected integer"));
        }
        let text = std::str::from_utf8(&self.bytes[digits_start..self.pos]).unwrap();
        let value: i64 = text
            .parse()
            .map_err(|_| ParseError::syntax(start, "integer out of range"))?;
        Ok(if neg { -value } else { value })
    }
}

/// Parses a word in the grammar above. Generator indices must not exceed
/// `rank`.
pub fn parse_word(input: &str, rank: u32) -> Result<Word, ParseError> {
    let mut cur = Cursor::new(input);
    let word = parse_sequence(&mut cur, rank)?;
    cur.skip_ws();
    if cur.pos != cur.bytes.len() {
        return Err(ParseError::syntax(cur.pos, "unexpected trailing input"));
    }
    Ok(word)
}

fn parse_sequence(cur: &mut Cursor, rank: u32) -> Result<Word, ParseError> {
    let mut out = Word::identity(rank);
    while let Some(b'x') | Some(b'[') | Some(b'(') | Some(b'1') = cur.peek() {
        let factor = parse_factor(cur, rank)?;
        out = out.mul(&factor);
    }
    Ok(out)
}

fn parse_factor(cur: &mut Cursor, rank: u32) -> Result<Word, ParseError> {
    let mut base = parse_atom(cur, rank)?;
    // Postfix `^`: integer exponent or parenthesized conjugator.
    while cur.peek() == Some(b'^') {
        cur.bump();
        if cur.peek() == Some(b'(') {
            cur.bump();
            let by = parse_sequence(cur, rank)?;
            cur.expect(b')')?;
            base = base.conjugate(&by);
        } else {
            let n = cur.integer()?;
            base = base.pow(n);
        }
    }
    Ok(base)
}

fn parse_atom(cur: &mut Cursor, rank: u32) -> Result<Word, ParseError> {
    match cur.peek() {
        Some(b'x') => {
            cur.bump();
            let at = cur.pos;
            let index = cur.integer()?;
            if index <= 0 {
                return Err(ParseError::syntax(at, "generator index must be positive"));
            }
            Ok(Word::generator(index as u32, rank)?)
        }
        Some(b'1') => {
            cur.bump();
            Ok(Word::identity(rank))
        }
        Some(b'[') => {
            cur.bump();
            let left = parse_sequence(cur, rank)?;
            cur.expect(b',')?;
            let right = parse_sequence(cur, rank)?;
            cur.expect(b']')?;
            Ok(left.commutator(&right))
        }
        Some(b'(') => {
            cur.bump();
            let inner = parse_sequence(cur, rank)?;
            cur.expect(b')')?;
            Ok(inner)
        }
        _ => Err(ParseError::syntax(cur.pos, "expected word")),
    }
}

/// Parses a group-ring element as a list of `(coefficient, word)` terms.
/// Semantic merging is the caller's job (it depends on the quotient level).
pub fn parse_ring_terms(input: &str, rank: u32) -> Result<Vec<(i64, Word)>, ParseError> {
    let trimmed = input.trim();
    if trimmed == "0" {
        return Ok(Vec::new());
    }
    let mut cur = Cursor::new(input);
    let mut terms = Vec::new();
    loop {
        let coeff = cur.integer()?;
        cur.expect(b'*')?;
        let word = parse_factor_sequence_term(&mut cur, rank)?;
        terms.push((coeff, word));
        if cur.peek() == Some(b'+') {
            cur.bump();
        } else {
            break;
        }
    }
    cur.skip_ws();
    if cur.pos != cur.bytes.len() {
        return Err(ParseError::syntax(cur.pos, "unexpected trailing input"));
    }
    Ok(terms)
}

/// A word inside a ring term: stops before a top-level `+`.
fn parse_factor_sequence_term(cur: &mut Cursor, rank: u32) -> Result<Word, ParseError> {
    let mut out = Word::identity(rank);
    let mut first = true;
    loop {
        match cur.peek() {
            Some(b'x') | Some(b'[') | Some(b'(') | Some(b'1') => {
                let factor = parse_factor(cur, rank)?;
                out = out.mul(&factor);
                first = false;
            }
            _ if first => return Err(ParseError::syntax(cur.pos, "expected word")),
            _ => break,
        }
    }
    Ok(out)
}

/// Splits a string on commas at bracket/paren depth zero. Used for flag
/// values that hold several words (words themselves may contain commas
/// inside `[u,v]`).
pub fn split_top_level_commas(input: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, b) in input.bytes().enumerate() {
        match b {
            b'[' | b'(' => depth += 1,
            b']' | b')' => depth = depth.saturating_sub(1),
            b',' if depth == 0 => {
                parts.push(input[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(input[start..].trim());
    parts
}
