//! Bracketed words: n-ary bracketings of letters, their text syntax,
//! canonical form under antisymmetry, and formal linear combinations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::WordError;
use crate::perm::sort_with_sign;

/// The distinguished letter `b`; it compares greater than every ordinary
/// letter, so canonical forms put it last.
pub const B_LETTER: u32 = u32::MAX;

/// A bracketed word. Letters are 0-based internally and printed 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BracketWord {
    Letter(u32),
    Bracket(Vec<BracketWord>),
}

impl BracketWord {
    pub fn letter(l: u32) -> Self {
        BracketWord::Letter(l)
    }

    pub fn bracket(children: Vec<BracketWord>) -> Self {
        BracketWord::Bracket(children)
    }

    pub fn is_letter(&self) -> bool {
        matches!(self, BracketWord::Letter(_))
    }

    pub fn children(&self) -> &[BracketWord] {
        match self {
            BracketWord::Letter(_) => &[],
            BracketWord::Bracket(c) => c,
        }
    }

    /// Number of brackets.
    pub fn num_brackets(&self) -> usize {
        match self {
            BracketWord::Letter(_) => 0,
            BracketWord::Bracket(c) => 1 + c.iter().map(|x| x.num_brackets()).sum::<usize>(),
        }
    }

    /// Letters in left-to-right order.
    pub fn letters(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<u32>) {
        match self {
            BracketWord::Letter(l) => out.push(*l),
            BracketWord::Bracket(c) => c.iter().for_each(|x| x.collect_letters(out)),
        }
    }

    pub fn min_letter(&self) -> u32 {
        match self {
            BracketWord::Letter(l) => *l,
            BracketWord::Bracket(c) => c.iter().map(|x| x.min_letter()).min().unwrap_or(B_LETTER),
        }
    }

    /// Checks that every bracket has exactly `n` arguments.
    pub fn check_arity(&self, n: usize) -> Result<(), WordError> {
        if let BracketWord::Bracket(c) = self {
            if c.len() != n {
                return Err(WordError::Arity {
                    expected: n,
                    found: c.len(),
                });
            }
            c.iter().try_for_each(|x| x.check_arity(n))?;
        }
        Ok(())
    }

    /// Arity of the outermost bracket, if any.
    pub fn arity(&self) -> Option<usize> {
        match self {
            BracketWord::Letter(_) => None,
            BracketWord::Bracket(c) => Some(c.len()),
        }
    }

    /// Checks that the letters are exactly 0..m, each once.
    pub fn check_multilinear(&self) -> Result<(), WordError> {
        let mut l = self.letters();
        let m = l.len();
        l.sort_unstable();
        if l.iter().enumerate().all(|(i, &x)| x as usize == i) {
            Ok(())
        } else {
            Err(WordError::NotMultilinear(m))
        }
    }

    /// True if every bracket has at most one bracketed argument.
    pub fn is_comb(&self) -> bool {
        match self {
            BracketWord::Letter(_) => true,
            BracketWord::Bracket(c) => {
                c.iter().filter(|x| !x.is_letter()).count() <= 1 && c.iter().all(|x| x.is_comb())
            }
        }
    }

    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> BracketWord {
        match self {
            BracketWord::Letter(l) => BracketWord::Letter(f(*l)),
            BracketWord::Bracket(c) => BracketWord::Bracket(c.iter().map(|x| x.relabel(f)).collect()),
        }
    }

    /// Preorder signature of the underlying shape; brackets (0) sort before
    /// letters (1).
    fn signature(&self, out: &mut Vec<u8>) {
        match self {
            BracketWord::Letter(_) => out.push(1),
            BracketWord::Bracket(c) => {
                out.push(0);
                c.iter().for_each(|x| x.signature(out));
            }
        }
    }

    fn sort_key(&self) -> (Vec<u8>, u32) {
        let mut s = Vec::new();
        self.signature(&mut s);
        (s, self.min_letter())
    }

    /// Canonical representative under antisymmetry: arguments of every
    /// bracket are sorted by (shape, least letter). Returns the sign relating
    /// the word to its canonical form, or `None` if the word vanishes
    /// (two equal arguments).
    pub fn canonical(&self) -> Option<(BracketWord, i32)> {
        match self {
            BracketWord::Letter(_) => Some((self.clone(), 1)),
            BracketWord::Bracket(c) => {
                let mut sign = 1;
                let mut keyed = Vec::with_capacity(c.len());
                for x in c {
                    let (y, s) = x.canonical()?;
                    sign *= s;
                    keyed.push((y.sort_key(), y));
                }
                let (sorted, s) = sort_with_sign(&keyed);
                if sorted.windows(2).any(|w| w[0].1 == w[1].1) {
                    return None;
                }
                Some((
                    BracketWord::Bracket(sorted.into_iter().map(|(_, y)| y).collect()),
                    sign * s,
                ))
            }
        }
    }

    /// Removes the letter `b` from every bracket. Each bracket must have
    /// exactly one argument equal to `b`.
    pub fn remove_b(&self) -> Result<BracketWord, WordError> {
        match self {
            BracketWord::Letter(l) if *l == B_LETTER => Err(WordError::Parse {
                input: self.to_string(),
                reason: "bare b".into(),
            }),
            BracketWord::Letter(_) => Ok(self.clone()),
            BracketWord::Bracket(c) => {
                let bs = c.iter().filter(|x| **x == BracketWord::Letter(B_LETTER)).count();
                if bs != 1 {
                    return Err(WordError::Parse {
                        input: self.to_string(),
                        reason: format!("bracket has {bs} copies of b"),
                    });
                }
                let rest = c
                    .iter()
                    .filter(|x| **x != BracketWord::Letter(B_LETTER))
                    .map(|x| x.remove_b())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(BracketWord::Bracket(rest))
            }
        }
    }

    /// Appends `b` as the last argument of every bracket.
    pub fn insert_b(&self) -> BracketWord {
        match self {
            BracketWord::Letter(_) => self.clone(),
            BracketWord::Bracket(c) => {
                let mut v: Vec<BracketWord> = c.iter().map(|x| x.insert_b()).collect();
                v.push(BracketWord::Letter(B_LETTER));
                BracketWord::Bracket(v)
            }
        }
    }

    /// Replaces the occurrences of `b`, in left-to-right order, by `fresh`.
    pub fn substitute_b(&self, fresh: &mut impl Iterator<Item = u32>) -> BracketWord {
        match self {
            BracketWord::Letter(l) if *l == B_LETTER => BracketWord::Letter(fresh.next().expect("enough letters")),
            BracketWord::Letter(_) => self.clone(),
            BracketWord::Bracket(c) => BracketWord::Bracket(c.iter().map(|x| x.substitute_b(fresh)).collect()),
        }
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::Letter(l) if *l == B_LETTER => write!(f, "b"),
            BracketWord::Letter(l) => write!(f, "{}", l + 1),
            BracketWord::Bracket(c) => {
                write!(f, "[")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> WordError {
        WordError::Parse {
            input: self.input.to_string(),
            reason: format!("{reason} at byte {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<BracketWord, WordError> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'[') => {
                self.pos += 1;
                let mut children = vec![self.word()?];
                loop {
                    self.skip_ws();
                    match self.bytes.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.word()?);
                        }
                        Some(b']') => {
                            self.pos += 1;
                            return Ok(BracketWord::Bracket(children));
                        }
                        _ => return Err(self.err("expected ',' or ']'")),
                    }
                }
            }
            Some(b'b') => {
                self.pos += 1;
                Ok(BracketWord::Letter(B_LETTER))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: u32 = self.input[start..self.pos]
                    .parse()
                    .map_err(|_| self.err("bad number"))?;
                if v == 0 {
                    return Err(self.err("letters start at 1"));
                }
                Ok(BracketWord::Letter(v - 1))
            }
            _ => Err(self.err("expected '[', a letter or b")),
        }
    }
}

impl FromStr for BracketWord {
    type Err = WordError;

    /// Parses the syntax `[[1,2,3],[4,5,6],7,8,9]`; letters are positive
    /// integers or `b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            input: s,
            bytes: s.as_bytes(),
            pos: 0,
        };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(w)
    }
}

/// A formal Q-linear combination of canonical bracketed words.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WordCombination {
    terms: BTreeMap<BracketWord, BigRational>,
}

impl WordCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: &BracketWord) -> Self {
        let mut c = Self::new();
        c.add_term(w, &BigRational::one());
        c
    }

    /// Adds `c * w`, canonicalizing `w`.
    pub fn add_term(&mut self, w: &BracketWord, c: &BigRational) {
        let Some((cw, s)) = w.canonical() else { return };
        let delta = if s > 0 { c.clone() } else { -c.clone() };
        let e = self.terms.entry(cw.clone()).or_insert_with(BigRational::zero);
        *e += delta;
        if e.is_zero() {
            self.terms.remove(&cw);
        }
    }

    pub fn add_scaled(&mut self, other: &WordCombination, c: &BigRational) {
        for (w, x) in &other.terms {
            self.add_term(w, &(x * c));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BracketWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for WordCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BracketWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["[[1,2,3],[4,5,6],7,8,9]", "[[[3,1,b],[5,2,b],b],[6,4,b],b]", "7"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("[1,2".parse::<BracketWord>().is_err());
        assert!("[0,1]".parse::<BracketWord>().is_err());
        assert!("[1,2]]".parse::<BracketWord>().is_err());
    }

    #[test]
    fn canonical_sorts_with_sign() {
        let (c, s) = w("[3,[1,2]]").canonical().unwrap();
        assert_eq!(c.to_string(), "[[1,2],3]");
        assert_eq!(s, -1);
        let (c, s) = w("[[2,1,3],5,4]").canonical().unwrap();
        assert_eq!(c.to_string(), "[[1,2,3],4,5]");
        assert_eq!(s, 1);
        assert!(w("[[1,b],[2,b],b,b]").canonical().is_none());
    }

    #[test]
    fn remove_b_example() {
        let x = w("[[[3,1,b],[5,2,b],b],[6,4,b],b]");
        assert_eq!(x.remove_b().unwrap().to_string(), "[[[3,1],[5,2]],[6,4]]");
        assert!(w("[[1,2],b,b]").remove_b().is_err());
        let y = w("[[[3,1],[5,2]],[6,4]]");
        assert_eq!(y.insert_b(), x);
    }

    #[test]
    fn combination_cancels() {
        let mut c = WordCombination::new();
        c.add_term(&w("[1,2]"), &BigRational::one());
        c.add_term(&w("[2,1]"), &BigRational::one());
        assert!(c.is_empty());
        c.add_term(&w("[2,1]"), &BigRational::from_integer(2.into()));
        assert_eq!(c.to_string(), "-2*[1,2]");
    }

    #[test]
    fn comb_detection() {
        assert!(w("[[[1,2],3],4]").is_comb());
        assert!(!w("[[1,2],[3,4]]").is_comb());
        assert_eq!(w("[[1,2,3],[4,5,6],7]").num_brackets(), 3);
    }
}
