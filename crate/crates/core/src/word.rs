//! Group words: a small expression language over the generators.
//!
//! ```text
//! word   := factor ('*' factor)*
//! factor := atom ('^' int)?
//! atom   := 'A' i '(' real ';' oct ')'        exp(t·Ãᵢ¹(a)), a a unit octonion
//!         | 'G1' '(' oct [';' imoct] ')'      exp(𝒢₁(x) + 𝒢₂(p))
//!         | 'Gm1' '(' oct [';' imoct] ')'     exp(𝒢₋₁(x) + 𝒢₋₂(p))
//!         | 'G2' '(' imoct ')' | 'Gm2' '(' imoct ')'
//!         | 'S' i                             σᵢ
//!         | 'D4' '(' j ',' oct ',' oct ')'    a D₄ element with Fⱼ¹(u) ↦ Fⱼ¹(v)
//!         | '(' word ')'
//! ```
//!
//! Whitespace is insignificant. Words evaluate left to right as operators
//! acting on the left of `𝒥¹`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::liegroup::{d4_rotate, exp_a, exp_n, sigma, GroupElement, NLevel};
use crate::octonion::{parse_octonion_chars, Octonion};

#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    A { i: usize, t: f64, a: Octonion },
    /// Level `±1` carries `x` and an optional `p`; level `±2` only `p`.
    G { level: NLevel, x: Octonion, p: Option<Octonion>, two: bool },
    S(usize),
    D4 { j: usize, u: Octonion, v: Octonion },
    Paren(Word),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub atom: Atom,
    pub pow: Option<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Word {
    pub factors: Vec<Factor>,
}

impl Word {
    pub fn parse(src: &str) -> Result<Word> {
        src.parse()
    }

    pub fn eval(&self) -> Result<GroupElement> {
        let mut acc = GroupElement::identity();
        for f in &self.factors {
            acc = acc.compose(&f.eval()?)?;
        }
        Ok(acc)
    }

    /// Number of generator atoms, counting through parentheses but not powers.
    pub fn atom_count(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match &f.atom {
                Atom::Paren(w) => w.atom_count(),
                _ => 1,
            })
            .sum()
    }
}

impl Factor {
    fn eval(&self) -> Result<GroupElement> {
        let base = self.atom.eval()?;
        match self.pow {
            None => Ok(base),
            Some(n) => base.pow(n),
        }
    }
}

impl Atom {
    fn eval(&self) -> Result<GroupElement> {
        match self {
            Atom::A { i, t, a } => exp_a(*i, *t, *a),
            Atom::G { level, x, p, two } => {
                let p = p.unwrap_or_default();
                if *two {
                    exp_n(*level, Octonion::default(), p)
                } else {
                    exp_n(*level, *x, p)
                }
            }
            Atom::S(i) => Ok(sigma(*i)),
            Atom::D4 { j, u, v } => d4_rotate(*j, *u, *v),
            Atom::Paren(w) => w.eval(),
        }
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(src: &str) -> Result<GroupElement> {
    Word::parse(src)?.eval()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", factor.atom)?;
            if let Some(n) = factor.pow {
                write!(f, "^{n}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::A { i, t, a } => write!(f, "A{i}({t};{a})"),
            Atom::G { level, x, p, two } => {
                let sign = if *level == NLevel::Minus { "m" } else { "" };
                if *two {
                    write!(f, "G{sign}2({})", p.unwrap_or_default())
                } else {
                    write!(f, "G{sign}1({x}")?;
                    if let Some(p) = p {
                        write!(f, ";{p}")?;
                    }
                    write!(f, ")")
                }
            }
            Atom::S(i) => write!(f, "S{i}"),
            Atom::D4 { j, u, v } => write!(f, "D4({j},{u},{v})"),
            Atom::Paren(w) => write!(f, "({w})"),
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(src: &str) -> Result<Word> {
        let mut chars = Vec::new();
        let mut origin = Vec::new();
        for (pos, c) in src.chars().enumerate() {
            if !c.is_whitespace() {
                chars.push(c);
                origin.push(pos);
            }
        }
        let end = src.chars().count();
        let mut p = Parser { s: &chars, pos: 0 };
        let result = p.word().and_then(|w| {
            if p.pos < chars.len() {
                Err(Error::syntax(p.pos, format!("unexpected `{}`", chars[p.pos])))
            } else {
                Ok(w)
            }
        });
        result.map_err(|e| match e {
            Error::Syntax { pos, msg } => {
                Error::Syntax { pos: origin.get(pos).copied().unwrap_or(end), msg }
            }
            other => other,
        })
    }
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |c| format!("`{c}`"));
            Err(Error::syntax(self.pos, format!("expected `{c}`, found {found}")))
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(Word { factors })
    }

    fn factor(&mut self) -> Result<Factor> {
        let atom = self.atom()?;
        let pow = if self.eat('^') { Some(self.int()?) } else { None };
        Ok(Factor { atom, pow })
    }

    fn slot(&mut self) -> Result<usize> {
        match self.peek().and_then(|c| c.to_digit(10)) {
            Some(d @ 1..=3) => {
                self.pos += 1;
                Ok(d as usize)
            }
            _ => Err(Error::syntax(self.pos, "expected slot index 1, 2 or 3")),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let start = self.pos;
        match self.peek() {
            Some('A') => {
                self.pos += 1;
                let i = self.slot()?;
                self.expect('(')?;
                let t = self.real()?;
                self.expect(';')?;
                let a = self.oct()?;
                self.expect(')')?;
                Ok(Atom::A { i, t, a })
            }
            Some('G') => {
                self.pos += 1;
                let level = if self.eat('m') { NLevel::Minus } else { NLevel::Plus };
                let two = match self.peek() {
                    Some('1') => false,
                    Some('2') => true,
                    _ => return Err(Error::syntax(self.pos, "expected G level 1, 2, m1 or m2")),
                };
                self.pos += 1;
                self.expect('(')?;
                let first = self.oct()?;
                let atom = if two {
                    Atom::G { level, x: Octonion::default(), p: Some(first), two }
                } else {
                    let p = if self.eat(';') { Some(self.oct()?) } else { None };
                    Atom::G { level, x: first, p, two }
                };
                self.expect(')')?;
                Ok(atom)
            }
            Some('S') => {
                self.pos += 1;
                Ok(Atom::S(self.slot()?))
            }
            Some('D') => {
                self.pos += 1;
                self.expect('4')?;
                self.expect('(')?;
                let j = self.slot()?;
                self.expect(',')?;
                let u = self.oct()?;
                self.expect(',')?;
                let v = self.oct()?;
                self.expect(')')?;
                Ok(Atom::D4 { j, u, v })
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(Atom::Paren(w))
            }
            Some(c) => Err(Error::syntax(start, format!("unexpected `{c}`, expected a generator"))),
            None => Err(Error::syntax(start, "unexpected end of input, expected a generator")),
        }
    }

    fn oct(&mut self) -> Result<Octonion> {
        let (o, next) = parse_octonion_chars(self.s, self.pos)?;
        self.pos = next;
        Ok(o)
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some('-' | '+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.s[start..self.pos].iter().collect();
        text.parse().map_err(|_| Error::syntax(start, "expected an integer exponent"))
    }

    fn real(&mut self) -> Result<f64> {
        let start = self.pos;
        if matches!(self.peek(), Some('-' | '+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some('-' | '+')) {
                self.pos += 1;
            }
            let digits = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == digits {
                self.pos = save;
            }
        }
        let text: String = self.s[start..self.pos].iter().collect();
        text.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::syntax(start, "expected a real number"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let w = Word::parse("A3(0.5;1)").unwrap();
        assert_eq!(w.factors.len(), 1);
        assert!(matches!(w.factors[0].atom, Atom::A { i: 3, .. }));
        let w = Word::parse("G1(1+2e3)*S1^-1").unwrap();
        assert_eq!(w.factors.len(), 2);
        assert_eq!(w.factors[1].pow, Some(-1));
        let err = Word::parse("A3(0.5)").unwrap_err();
        assert_eq!(err.kind(), "SyntaxError");
    }

    #[test]
    fn error_positions_refer_to_source() {
        match Word::parse("S1 * Q2").unwrap_err() {
            Error::Syntax { pos, .. } => assert_eq!(pos, 5),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn print_round_trip() {
        for src in [
            "A1(-1.5707963267948966;1)*Gm1(0.5-e3;0.25e7)^2",
            "(S2*D4(2,e1,1))^-3*G2(e4)*Gm2(-0.5e1+e6)",
            "A2(1e-3;0.6+0.8e5)",
        ] {
            let w = Word::parse(src).unwrap();
            let printed = w.to_string();
            let again = Word::parse(&printed).unwrap();
            assert_eq!(w, again);
            assert_eq!(printed, again.to_string());
        }
    }

    #[test]
    fn eval_examples() {
        let id = GroupElement::identity();
        assert!(eval_str("S1*S1").unwrap().distance(&id) < 1e-15);
        assert!(eval_str("A3(0.3;1)*A3(-0.3;1)").unwrap().distance(&id) < 1e-10);
        let ab = eval_str("G2(e1)*G1(e2)").unwrap();
        let ba = eval_str("G1(e2)*G2(e1)").unwrap();
        assert!(ab.distance(&ba) < 1e-12);
        assert!(eval_str("A3(0.3;2)").is_err());
        assert!(eval_str("G2(1)").is_err());
    }
}
