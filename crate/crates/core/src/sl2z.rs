//! SL(2,Z), generator words and the continued-fraction factorization.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SL2Z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    S,
    T,
    SInv,
    TInv,
}

impl Gen {
    pub fn matrix(self) -> SL2Z {
        match self {
            Gen::S => SL2Z::S,
            Gen::T => SL2Z::T,
            Gen::SInv => SL2Z::S.inverse(),
            Gen::TInv => SL2Z::T.inverse(),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Gen::S => 'S',
            Gen::T => 'T',
            Gen::SInv => 's',
            Gen::TInv => 't',
        }
    }
}

impl SL2Z {
    pub const IDENTITY: SL2Z = SL2Z { a: 1, b: 0, c: 0, d: 1 };
    pub const S: SL2Z = SL2Z { a: 0, b: 1, c: -1, d: 0 };
    pub const T: SL2Z = SL2Z { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<SL2Z> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(SL2Z { a, b, c, d })
    }

    pub fn mul(&self, o: &SL2Z) -> SL2Z {
        SL2Z {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> SL2Z {
        SL2Z { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> SL2Z {
        SL2Z { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// Column action (p, q) ↦ (ap + bq, cp + dq).
    pub fn apply(&self, p: i64, q: i64) -> (i64, i64) {
        (self.a * p + self.b * q, self.c * p + self.d * q)
    }

    /// Contragredient action (p, q) ↦ h^{−T}(p, q) = (dp − cq, −bp + aq): the exponent of
    /// f∘h^{−1} when f(x, y) = e^{2πi(px+qy)}.
    pub fn apply_dual(&self, p: i64, q: i64) -> (i64, i64) {
        (self.d * p - self.c * q, -self.b * p + self.a * q)
    }
}

impl fmt::Display for SL2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn word_matrix(word: &[Gen]) -> SL2Z {
    word.iter().fold(SL2Z::IDENTITY, |acc, g| acc.mul(&g.matrix()))
}

/// Parses S, T (and s, t for inverses); whitespace and '*' are ignored.
pub fn parse_word(s: &str) -> Result<Vec<Gen>> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .map(|c| match c {
            'S' => Ok(Gen::S),
            'T' => Ok(Gen::T),
            's' => Ok(Gen::SInv),
            't' => Ok(Gen::TInv),
            _ => Err(Error::InvalidArgument(format!("bad generator {c:?} in word {s:?}"))),
        })
        .collect()
}

pub fn word_string(word: &[Gen]) -> String {
    word.iter().map(|g| g.letter()).collect()
}

fn push_t_power(word: &mut Vec<Gen>, q: i64) {
    let g = if q >= 0 { Gen::T } else { Gen::TInv };
    word.extend(std::iter::repeat_n(g, q.unsigned_abs() as usize));
}

/// Word over {S, T, T^{−1}} whose product is h. Euclid on the first column; when the
/// remaining upper-triangular factor is −T^{−b}, the word ends in S·S = −Id.
pub fn sl2z_decompose(h: &SL2Z) -> Vec<Gen> {
    let mut word = Vec::new();
    let mut m = *h;
    while m.c != 0 {
        let q = m.a.div_euclid(m.c);
        push_t_power(&mut word, q);
        m = SL2Z { a: 1, b: -q, c: 0, d: 1 }.mul(&m);
        word.push(Gen::S);
        m = SL2Z::S.inverse().mul(&m);
    }
    if m.a == 1 {
        push_t_power(&mut word, m.b);
    } else {
        push_t_power(&mut word, -m.b);
        word.push(Gen::S);
        word.push(Gen::S);
    }
    word
}
