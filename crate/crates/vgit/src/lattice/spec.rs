//! The lattice spec mini-language.
//!
//! `term (+ term)*` where a term is `[count] atom [^count] [(scale)]` and an atom is one
//! of `A<n>`, `D<n>`, `E6|E7|E8`, `U`, `M`, `T(p,q,r)`, `<k>`. A leading `[` switches to
//! a JSON Gram matrix.

use super::{GramLattice, LatticeError};

struct Cursor<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text,
            chars: text.char_indices().collect(),
            at: 0,
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.text.len(), |c| c.0)
    }

    fn err(&self, msg: &str) -> LatticeError {
        LatticeError::Spec {
            text: self.text.to_string(),
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|c| c.1)
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), LatticeError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn number(&mut self) -> Option<i64> {
        self.skip_ws();
        let start = self.at;
        let mut neg = false;
        if matches!(self.peek(), Some('-') | Some('−')) {
            neg = true;
            self.at += 1;
        }
        let digits_start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if self.at == digits_start {
            self.at = start;
            return None;
        }
        let s: String = self.chars[digits_start..self.at].iter().map(|c| c.1).collect();
        let v: i64 = s.parse().ok()?;
        Some(if neg { -v } else { v })
    }

    fn positive(&mut self, what: &str) -> Result<usize, LatticeError> {
        match self.number() {
            Some(n) if n > 0 => Ok(n as usize),
            _ => Err(self.err(&format!("expected a positive {what}"))),
        }
    }
}

pub(super) fn parse(text: &str) -> Result<GramLattice, LatticeError> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let gram: Vec<Vec<i64>> = serde_json::from_str(trimmed).map_err(|e| LatticeError::Spec {
            text: text.to_string(),
            pos: e.column().saturating_sub(1),
            msg: e.to_string(),
        })?;
        return GramLattice::new(gram);
    }
    let mut cur = Cursor::new(text);
    let mut parts = Vec::new();
    loop {
        parts.extend(term(&mut cur)?);
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('+') | Some('⊕') => cur.at += 1,
            Some(_) => return Err(cur.err("expected `+` between summands")),
        }
    }
    Ok(GramLattice::sum_of(&parts))
}

fn term(cur: &mut Cursor) -> Result<Vec<GramLattice>, LatticeError> {
    cur.skip_ws();
    let count = match cur.peek() {
        Some(c) if c.is_ascii_digit() => cur.positive("multiplicity")?,
        _ => 1,
    };
    let mut lat = atom(cur)?;
    let mut count = count;
    if cur.eat('^') {
        count *= cur.positive("exponent")?;
    }
    if cur.eat('(') {
        let n = cur.number().ok_or_else(|| cur.err("expected a scale factor"))?;
        if n == 0 {
            return Err(cur.err("scale factor must be non-zero"));
        }
        cur.expect(')')?;
        lat = lat.rescale(n);
    }
    Ok(vec![lat; count])
}

fn atom(cur: &mut Cursor) -> Result<GramLattice, LatticeError> {
    cur.skip_ws();
    let start = cur.at;
    let c = cur.peek().ok_or_else(|| cur.err("expected a summand"))?;
    cur.at += 1;
    match c {
        'A' => Ok(GramLattice::a(cur.positive("rank")?)),
        'D' => {
            let n = cur.positive("rank")?;
            if n < 2 {
                cur.at = start;
                return Err(cur.err("D_n needs n ≥ 2"));
            }
            Ok(GramLattice::d(n))
        }
        'E' => {
            let n = cur.positive("rank")?;
            if !(6..=8).contains(&n) {
                cur.at = start;
                return Err(cur.err("only E6, E7, E8"));
            }
            Ok(GramLattice::e(n))
        }
        'U' => Ok(GramLattice::u()),
        'M' => Ok(GramLattice::m()),
        'T' => {
            cur.expect('(')?;
            let p = cur.positive("arm")?;
            cur.expect(',')?;
            let q = cur.positive("arm")?;
            cur.expect(',')?;
            let r = cur.positive("arm")?;
            cur.expect(')')?;
            Ok(GramLattice::t_pqr(p, q, r))
        }
        '<' | '⟨' => {
            let k = cur.number().ok_or_else(|| cur.err("expected an integer"))?;
            if !(cur.eat('>') || cur.eat('⟩')) {
                return Err(cur.err("expected `>`"));
            }
            if k == 0 || k % 2 != 0 {
                cur.at = start;
                return Err(cur.err("rank-one lattices must have non-zero even norm"));
            }
            GramLattice::rank_one(k)
        }
        _ => {
            cur.at = start;
            Err(cur.err("unknown summand"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        let l = parse("E8+D4+U(2)").unwrap();
        assert_eq!(l.rank(), 14);
        assert_eq!(l.det(), 4 * -4);
        assert_eq!(l.blocks().len(), 3);
        assert_eq!(parse("10A1").unwrap().rank(), 10);
        assert_eq!(parse("A1^5").unwrap().rank(), 5);
        assert_eq!(parse("<-4>").unwrap().gram(), &[vec![-4]]);
        assert_eq!(parse("T(2,3,8)").unwrap().rank(), 11);
        assert_eq!(parse("[[0,1],[1,0]]").unwrap().det(), -1);
        assert_eq!(parse("E8(-1)").unwrap().signature().positive, 8);
        for bad in ["", "X3", "E9", "<3>", "A0", "U(", "E8 D4", "[[1]]"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
