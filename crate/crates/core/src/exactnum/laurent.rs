use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::CycNum;

/// Laurent polynomial in a formal variable `z` with cyclotomic coefficients.
///
/// `z` stands for a generic point of the circle subgroup of Pin(2): the trace
/// of `h` there is `z + z^-1`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, CycNum>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(CycNum::one())
    }

    pub fn constant(c: CycNum) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: CycNum) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `z + z^-1`, the circle trace of the quaternion representation.
    pub fn z_plus_inverse() -> Self {
        Self::monomial(1, CycNum::one()) + Self::monomial(-1, CycNum::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> CycNum {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycNum)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == 0)
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    fn add_term(&mut self, exp: i64, c: CycNum) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Writes a polynomial symmetric under `z ↔ z^-1` as a polynomial in
    /// `t = z + z^-1` (coefficients constant term first). Returns `None` if
    /// the input is not symmetric.
    pub fn to_symmetric_polynomial(&self) -> Option<Vec<CycNum>> {
        let mut rest = self.clone();
        let top = rest.terms.keys().next_back().copied().unwrap_or(0);
        if top < 0 {
            return None;
        }
        let mut out = vec![CycNum::zero(); top as usize + 1];
        for d in (1..=top).rev() {
            let c = rest.coeff(d);
            if c.is_zero() {
                continue;
            }
            // (z + 1/z)^d = Σ_i binom(d, i) z^{d-2i}
            let mut binom = BigInt::from(1);
            for i in 0..=d {
                let term = &c * &CycNum::from_integer(binom.clone());
                rest.add_term(d - 2 * i, -term);
                binom = binom * (d - i) / (i + 1);
            }
            out[d as usize] = c;
        }
        if !rest.is_constant() {
            return None;
        }
        out[0] = rest.coeff(0);
        while out.len() > 1 && out.last().is_some_and(CycNum::is_zero) {
            out.pop();
        }
        Some(out)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                out.add_term(ea + eb, a * b);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Highest power of `z` first, e.g. `z^2 + 2 + z^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let simple = c.is_rational();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, text),
            };
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let coef = if simple { body } else { format!("({body})") };
            match *e {
                0 => write!(f, "{coef}")?,
                _ => {
                    if coef != "1" {
                        write!(f, "{coef}*")?;
                    }
                    if *e == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
