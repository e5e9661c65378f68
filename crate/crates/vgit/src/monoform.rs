//! Monomials of a fixed degree in `x0, x1, x2`, the weight pairing, the dominance
//! order and configurations of monomials.
//!
//! A diagonal one-parameter subgroup with normalized weights `(1, r, -1-r)` pairs with
//! `x0^a x1^b x2^c` to give `a + b r - c (1 + r)`. Because this is affine in `r`,
//! comparing two monomials on the whole range `[-1/2, 1]` reduces to comparing them
//! at the two endpoints.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{q, qi, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("empty monomial set")]
    Empty,
    #[error("normalized weight {0} outside [-1/2, 1]")]
    WeightOutOfRange(Q),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("cannot parse monomial `{text}` at byte {pos}: {msg}")]
    Parse { text: String, pos: usize, msg: String },
    #[error("unknown line variable `{0}`")]
    UnknownLine(String),
}

/// `x0^a * x1^b * x2^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 3]", into = "[u32; 3]")]
pub struct Monomial {
    exps: [u32; 3],
}

impl From<[u32; 3]> for Monomial {
    fn from(exps: [u32; 3]) -> Self {
        Monomial { exps }
    }
}

impl From<Monomial> for [u32; 3] {
    fn from(m: Monomial) -> Self {
        m.exps
    }
}

impl Monomial {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial { exps: [a, b, c] }
    }

    pub fn exponents(&self) -> [u32; 3] {
        self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Slope of `r ↦ ⟨m, r⟩`, namely `b - c`.
    pub fn slope(&self) -> i64 {
        self.exps[1] as i64 - self.exps[2] as i64
    }

    /// Value of `⟨m, r⟩` at `r = 0`, namely `a - c`.
    pub fn intercept(&self) -> i64 {
        self.exps[0] as i64 - self.exps[2] as i64
    }

    /// `⟨m, r⟩ = a + b r - c (1 + r)`.
    pub fn pairing(&self, r: Q) -> Q {
        qi(self.intercept()) + qi(self.slope()) * r
    }

    /// `⟨m, 1⟩`, an integer.
    pub fn at_one(&self) -> i64 {
        self.intercept() + self.slope()
    }

    /// `2⟨m, -1/2⟩`, an integer.
    pub fn twice_at_minus_half(&self) -> i64 {
        2 * self.intercept() - self.slope()
    }

    /// Exponents moved by a coordinate permutation: variable `i` becomes variable `perm[i]`.
    pub fn permuted(&self, perm: [usize; 3]) -> Monomial {
        let mut e = [0; 3];
        for i in 0..3 {
            e[perm[i]] = self.exps[i];
        }
        Monomial { exps: e }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = MonoError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |pos: usize, msg: &str| MonoError::Parse {
            text: text.to_string(),
            pos,
            msg: msg.to_string(),
        };
        let mut exps = [0u32; 3];
        let mut offset = 0;
        for factor in text.split('*') {
            let start = offset + (factor.len() - factor.trim_start().len());
            offset += factor.len() + 1;
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(err(start, "empty factor"));
            }
            if factor == "1" {
                continue;
            }
            let (var, pow) = match factor.split_once('^') {
                Some((v, p)) => {
                    let p: u32 = p
                        .trim()
                        .parse()
                        .map_err(|_| err(start + v.len() + 1, "bad exponent"))?;
                    (v.trim(), p)
                }
                None => (factor, 1),
            };
            let idx = match var {
                "x0" => 0,
                "x1" => 1,
                "x2" => 2,
                _ => return Err(err(start, "expected x0, x1 or x2")),
            };
            exps[idx] += pow;
        }
        Ok(Monomial { exps })
    }
}

/// Splits `text` into signed terms `coef * v^e * ...` over the given variable names and
/// returns exponent triples with their summed coefficients; zero sums are dropped.
/// `vars` maps each accepted name to a coordinate index.
pub fn parse_terms(text: &str, vars: &[(&str, usize)]) -> Result<Vec<([u32; 3], i64)>, MonoError> {
    let err = |pos: usize, msg: &str| MonoError::Parse {
        text: text.to_string(),
        pos,
        msg: msg.to_string(),
    };
    let mut acc: std::collections::BTreeMap<[u32; 3], i64> = std::collections::BTreeMap::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut any = false;
    while i < bytes.len() {
        let mut sign = 1i64;
        let mut saw_sign = false;
        while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            if bytes[i] != b' ' {
                saw_sign = true;
            }
            i += 1;
        }
        if i >= bytes.len() {
            if saw_sign {
                return Err(err(i, "dangling sign"));
            }
            break;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &text[start..i];
        if term.trim().is_empty() {
            return Err(err(start, "empty term"));
        }
        let mut coef = sign;
        let mut exps = [0u32; 3];
        let mut off = start;
        for factor in term.split('*') {
            let fpos = off + (factor.len() - factor.trim_start().len());
            off += factor.len() + 1;
            let f = factor.trim();
            if f.is_empty() {
                return Err(err(fpos, "empty factor"));
            }
            if f.chars().all(|c| c.is_ascii_digit()) {
                let c: i64 = f.parse().map_err(|_| err(fpos, "coefficient too large"))?;
                coef *= c;
                continue;
            }
            let (name, pow) = match f.split_once('^') {
                Some((n, p)) => (
                    n.trim(),
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| err(fpos + n.len() + 1, "bad exponent"))?,
                ),
                None => (f, 1),
            };
            let idx = vars
                .iter()
                .find(|(v, _)| *v == name)
                .map(|(_, i)| *i)
                .ok_or_else(|| err(fpos, &format!("unknown symbol `{name}`")))?;
            exps[idx] += pow;
        }
        *acc.entry(exps).or_insert(0) += coef;
        any = true;
    }
    if !any {
        return Err(err(0, "no terms"));
    }
    Ok(acc.into_iter().filter(|(_, c)| *c != 0).collect())
}

/// Monomials with non-zero coefficient in a homogeneous sum of terms in `x0, x1, x2`.
pub fn parse_monomials(text: &str) -> Result<Vec<Monomial>, MonoError> {
    let terms = parse_terms(text, &[("x0", 0), ("x1", 1), ("x2", 2)])?;
    let ms: Vec<Monomial> = terms.into_iter().map(|(e, _)| Monomial::from(e)).collect();
    let first = ms.first().ok_or(MonoError::Empty)?;
    if let Some(bad) = ms.iter().find(|m| m.degree() != first.degree()) {
        return Err(MonoError::DegreeMismatch(first.degree(), bad.degree()));
    }
    if first.degree() == 0 {
        return Err(MonoError::ZeroDegree);
    }
    Ok(ms)
}

/// Affine terms in `x, y` homogenized to degree `d`: `x` and `y` go to the coordinates
/// `x_to` and `y_to`, the remaining coordinate takes up the missing degree.
pub fn parse_affine(text: &str, x_to: LineVar, y_to: LineVar, d: u32) -> Result<Vec<Monomial>, MonoError> {
    let (xi, yi) = (x_to.index(), y_to.index());
    if xi == yi {
        return Err(MonoError::Parse {
            text: text.to_string(),
            pos: 0,
            msg: "x and y must map to different coordinates".into(),
        });
    }
    if d == 0 {
        return Err(MonoError::ZeroDegree);
    }
    let zi = 3 - xi - yi;
    let terms = parse_terms(text, &[("x", xi), ("y", yi)])?;
    if terms.is_empty() {
        return Err(MonoError::Empty);
    }
    terms
        .into_iter()
        .map(|(mut e, _)| {
            let used = e[xi] + e[yi];
            if used > d {
                return Err(MonoError::DegreeMismatch(d, used));
            }
            e[zi] = d - used;
            Ok(Monomial::from(e))
        })
        .collect()
}

/// All monomials of degree `d`, ascending in lexicographic order of `(a, b, c)`.
pub fn all_monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push(Monomial::new(a, b, d - a - b));
        }
    }
    out
}

/// A normalized weight `r ∈ [-1/2, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalizedWeight(Q);

impl NormalizedWeight {
    pub fn new(r: Q) -> Result<Self, MonoError> {
        if r < q(-1, 2) || r > qi(1) {
            return Err(MonoError::WeightOutOfRange(r));
        }
        Ok(NormalizedWeight(r))
    }

    pub fn value(&self) -> Q {
        self.0
    }
}

/// One of the three coordinate linear forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LineVar {
    #[serde(rename = "x0")]
    X0,
    #[serde(rename = "x1")]
    X1,
    #[serde(rename = "x2")]
    X2,
}

impl LineVar {
    pub const ALL: [LineVar; 3] = [LineVar::X0, LineVar::X1, LineVar::X2];

    pub fn index(&self) -> usize {
        *self as usize
    }

    pub fn from_index(i: usize) -> LineVar {
        Self::ALL[i]
    }

    /// Weight of the variable under `(1, r, -1-r)`.
    pub fn value(&self, r: Q) -> Q {
        match self {
            LineVar::X0 => qi(1),
            LineVar::X1 => r,
            LineVar::X2 => -(qi(1) + r),
        }
    }

    pub fn permuted(&self, perm: [usize; 3]) -> LineVar {
        LineVar::from_index(perm[self.index()])
    }
}

impl fmt::Display for LineVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.index())
    }
}

impl FromStr for LineVar {
    type Err = MonoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "x0" => Ok(LineVar::X0),
            "x1" => Ok(LineVar::X1),
            "x2" => Ok(LineVar::X2),
            other => Err(MonoError::UnknownLine(other.to_string())),
        }
    }
}

/// `m > m'`: distinct and `⟨m, r⟩ ≥ ⟨m', r⟩` on all of `[-1/2, 1]`.
pub fn dominates(m: &Monomial, other: &Monomial) -> Result<bool, MonoError> {
    if m.degree() != other.degree() {
        return Err(MonoError::DegreeMismatch(m.degree(), other.degree()));
    }
    Ok(m != other
        && m.at_one() >= other.at_one()
        && m.twice_at_minus_half() >= other.twice_at_minus_half())
}

/// Maximal elements of a monomial set, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Support(Vec<Monomial>);

impl Support {
    pub fn monomials(&self) -> &[Monomial] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Monomial> {
        self.0
    }
}

pub fn support<'a, I>(set: I) -> Result<Support, MonoError>
where
    I: IntoIterator<Item = &'a Monomial>,
{
    let items: BTreeSet<Monomial> = set.into_iter().copied().collect();
    let first = items.iter().next().ok_or(MonoError::Empty)?;
    let d = first.degree();
    if let Some(bad) = items.iter().find(|m| m.degree() != d) {
        return Err(MonoError::DegreeMismatch(d, bad.degree()));
    }
    let maximal = items
        .iter()
        .filter(|m| !items.iter().any(|o| dominates(o, m).unwrap_or(false)))
        .copied()
        .collect();
    Ok(Support(maximal))
}

/// The monomials present in a pair's equations in some coordinate frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    degree: u32,
    curve: BTreeSet<Monomial>,
    line: BTreeSet<LineVar>,
}

impl Configuration {
    pub fn new<C, L>(degree: u32, curve: C, line: L) -> Result<Self, MonoError>
    where
        C: IntoIterator<Item = Monomial>,
        L: IntoIterator<Item = LineVar>,
    {
        if degree == 0 {
            return Err(MonoError::ZeroDegree);
        }
        let curve: BTreeSet<Monomial> = curve.into_iter().collect();
        let line: BTreeSet<LineVar> = line.into_iter().collect();
        if curve.is_empty() || line.is_empty() {
            return Err(MonoError::Empty);
        }
        if let Some(bad) = curve.iter().find(|m| m.degree() != degree) {
            return Err(MonoError::DegreeMismatch(degree, bad.degree()));
        }
        Ok(Configuration {
            degree,
            curve,
            line,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn curve(&self) -> &BTreeSet<Monomial> {
        &self.curve
    }

    pub fn line(&self) -> &BTreeSet<LineVar> {
        &self.line
    }

    pub fn curve_support(&self) -> Support {
        support(&self.curve).expect("configuration invariants")
    }

    /// `x0 > x1 > x2` is a total order, so the line support is the first variable present.
    pub fn line_support(&self) -> LineVar {
        *self.line.iter().next().expect("non-empty line part")
    }

    /// The configuration reduced to its supports.
    pub fn reduced(&self) -> Configuration {
        Configuration {
            degree: self.degree,
            curve: self.curve_support().into_vec().into_iter().collect(),
            line: [self.line_support()].into_iter().collect(),
        }
    }

    pub fn permuted(&self, perm: [usize; 3]) -> Configuration {
        Configuration {
            degree: self.degree,
            curve: self.curve.iter().map(|m| m.permuted(perm)).collect(),
            line: self.line.iter().map(|l| l.permuted(perm)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ConfigurationJson {
    d: u32,
    curve: Vec<[u32; 3]>,
    line: Vec<LineVar>,
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ConfigurationJson {
            d: self.degree,
            curve: self.curve.iter().map(|m| m.exponents()).collect(),
            line: self.line.iter().copied().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ConfigurationJson::deserialize(d)?;
        Configuration::new(
            raw.d,
            raw.curve.into_iter().map(Monomial::from),
            raw.line,
        )
        .map_err(serde::de::Error::custom)
    }
}

/// The six permutations of `{0, 1, 2}`.
pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn pairing_values() {
        assert_eq!(m("x0^5").pairing(q(1, 3)), qi(5));
        assert_eq!(m("x2^4").pairing(qi(1)), qi(-8));
        assert_eq!(m("x0*x1*x2^3").pairing(q(-1, 2)), qi(-1));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(m("x0^2*x2^3"), Monomial::new(2, 0, 3));
        assert_eq!(m("x0^1*x1^0*x2^4"), Monomial::new(1, 0, 4));
        assert_eq!(Monomial::new(1, 0, 4).to_string(), "x0*x2^4");
        assert!("x3^2".parse::<Monomial>().is_err());
        assert!("x0^".parse::<Monomial>().is_err());
    }

    #[test]
    fn dominance_examples() {
        let top = m("x0^5");
        for o in all_monomials(5).iter().filter(|o| **o != top) {
            assert!(dominates(&top, o).unwrap());
        }
        assert!(!dominates(&m("x0^2*x2^3"), &m("x1^5")).unwrap());
        assert!(!dominates(&m("x1^5"), &m("x0^2*x2^3")).unwrap());
        assert!(!dominates(&top, &top).unwrap());
        assert!(dominates(&top, &m("x0^4")).is_err());
    }

    #[test]
    fn support_examples() {
        let all = all_monomials(5);
        assert_eq!(all.len(), 21);
        assert_eq!(support(&all).unwrap().monomials(), &[m("x0^5")]);
        let pair = [m("x0^2*x2^3"), m("x1^5")];
        assert_eq!(support(&pair).unwrap().monomials().len(), 2);
        assert!(support(&[]).is_err());
        let cfg = Configuration::new(5, pair, LineVar::ALL).unwrap();
        assert_eq!(cfg.line_support(), LineVar::X0);
    }

    #[test]
    fn term_parsing() {
        let ms = parse_monomials("x0^2*x2^3 + x1^5").unwrap();
        assert_eq!(ms, vec![Monomial::new(0, 5, 0), Monomial::new(2, 0, 3)]);
        let ms = parse_monomials("x0^2*x1*x2^2 - 2*x0*x1^3*x2 + x1^5").unwrap();
        assert_eq!(ms.len(), 3);
        assert_eq!(parse_monomials("x1^5 - x1^5 + x2^5").unwrap(), vec![Monomial::new(0, 0, 5)]);
        assert!(parse_monomials("0").is_err());
        assert!(parse_monomials("x0^2 + x1").is_err());
        assert!(parse_monomials("x0^2 + y^2").is_err());
    }

    #[test]
    fn weights_range() {
        assert!(NormalizedWeight::new(q(-1, 2)).is_ok());
        assert!(NormalizedWeight::new(q(-3, 4)).is_err());
        assert!(NormalizedWeight::new(q(5, 4)).is_err());
    }
}
