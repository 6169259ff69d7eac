//! Parser for inline constructor expressions.
//!
//! Grammar:
//!
//! ```text
//! expr := empty:N | complete:N | dicycle:N | star:N,K | tournament:N
//!       | thm35:N | thm39:N
//!       | djoin(expr, expr) | bjoin(expr, expr) | union(expr, expr)
//!       | inflate(expr, K) | complement(expr)
//! ```
//!
//! `thm35:N` builds the balanced non-normal twin-split even cycle
//! (alias `splitcycle:N`); `thm39:N` builds the order `N*N`
//! restricted-normal non-join (alias `nonjoin:N`).

use rnr::digraph::{nonjoin_witness, twin_split_cycle_pair};
use rnr::{Digraph, Error, Result};

pub fn parse_construct(text: &str) -> Result<Digraph> {
    let mut p = Parser { text: text.as_bytes(), pos: 0 };
    let g = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(g)
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::InvalidInput(format!(
            "constructor expression: {msg} at byte {} of {:?}",
            self.pos,
            String::from_utf8_lossy(self.text)
        ))
    }

    fn skip_ws(&mut self) {
        while self.text.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {:?}", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .text
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("digits are ASCII")
            .parse()
            .map_err(|_| self.error("number out of range"))
    }

    fn expr(&mut self) -> Result<Digraph> {
        let name = self.ident()?;
        match name.as_str() {
            "empty" | "complete" | "dicycle" | "tournament" | "thm35" | "splitcycle"
            | "thm39" | "nonjoin" => {
                self.expect(b':')?;
                let n = self.number()?;
                match name.as_str() {
                    "empty" => Digraph::empty(n),
                    "complete" => Digraph::complete(n),
                    "dicycle" => Digraph::dicycle(n),
                    "tournament" => Digraph::regular_tournament(n),
                    "thm35" | "splitcycle" => Ok(twin_split_cycle_pair(n)?.0),
                    _ => nonjoin_witness(n),
                }
            }
            "star" => {
                self.expect(b':')?;
                let n = self.number()?;
                self.expect(b',')?;
                let k = self.number()?;
                Digraph::imploding_star(n, k)
            }
            "djoin" | "bjoin" | "union" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                match name.as_str() {
                    "djoin" => a.directed_join(&b),
                    "bjoin" => a.bidirectional_join(&b),
                    _ => a.disjoint_union(&b),
                }
            }
            "inflate" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let k = self.number()?;
                self.expect(b')')?;
                a.inflate(k)
            }
            "complement" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b')')?;
                Ok(a.complement())
            }
            other => Err(self.error(&format!("unknown constructor {other:?}"))),
        }
    }
}
