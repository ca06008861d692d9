use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::expr::{parse_expr, ExprValue};
use crate::exactnum::{CycNum, LaurentPoly};

/// An element `p(h) + n·c` of `R(Pin(2)) = Z[h] ⊕ Zc`.
///
/// Products are normalised with `c² = 1` and `ch = h`, so `c·p(h)` becomes
/// `p(0)·c + (p(h) - p(0))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Pin2Elem {
    h: Vec<BigInt>,
    c: BigInt,
}

impl Pin2Elem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(n: impl Into<BigInt>) -> Self {
        Self::new(vec![n.into()], BigInt::zero())
    }

    pub fn h() -> Self {
        Self::new(vec![BigInt::zero(), BigInt::one()], BigInt::zero())
    }

    pub fn c() -> Self {
        Self::new(Vec::new(), BigInt::one())
    }

    /// `1 - c`, the Furuta factor.
    pub fn one_minus_c() -> Self {
        Self::new(vec![BigInt::one()], -BigInt::one())
    }

    /// From `h`-coefficients (constant first) and the `c` coefficient.
    pub fn new(mut h: Vec<BigInt>, c: BigInt) -> Self {
        while h.last().is_some_and(Zero::is_zero) {
            h.pop();
        }
        Pin2Elem { h, c }
    }

    /// Coefficient of `h^k` (`k = 0` is the constant term).
    pub fn h_coeff(&self, k: usize) -> BigInt {
        self.h.get(k).cloned().unwrap_or_default()
    }

    pub fn h_coeffs(&self) -> &[BigInt] {
        &self.h
    }

    pub fn c_coeff(&self) -> &BigInt {
        &self.c
    }

    /// Highest power of `h` present, or `None` if there are no `h^k` terms.
    pub fn h_degree(&self) -> Option<usize> {
        (self.h.len() > 1).then(|| self.h.len() - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_empty() && self.c.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.h.iter().map(|x| x * k).collect(), &self.c * k)
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

    /// Trace at `j`: `h^k ↦ 0` for `k ≥ 1`, `c ↦ -1`.
    pub fn trace_j(&self) -> BigInt {
        self.h_coeff(0) - &self.c
    }

    /// Trace at a generic point of `S¹`: `h ↦ z + z⁻¹`, `c ↦ 1`.
    pub fn trace_symbolic(&self) -> LaurentPoly {
        let t = LaurentPoly::z_plus_inverse();
        let mut out = LaurentPoly::constant(CycNum::from(self.c.clone()));
        let mut power = LaurentPoly::one();
        for (k, a) in self.h.iter().enumerate() {
            if k > 0 {
                power = &power * &t;
            }
            if !a.is_zero() {
                out = &out + &power.scale(&CycNum::from(a.clone()));
            }
        }
        out
    }

    /// Recovers an element from its two traces. The symbolic trace fixes the
    /// `h`-polynomial except for how its constant splits between `1` and `c`;
    /// the trace at `j` settles that.
    pub fn from_traces(at_j: &BigInt, symbolic: &LaurentPoly) -> Option<Self> {
        let poly = symbolic.to_symmetric_polynomial()?;
        let mut h = Vec::with_capacity(poly.len());
        for q in &poly {
            h.push(q.to_integer()?);
        }
        let q0 = h[0].clone();
        let (one, rem_one) = (&q0 + at_j).div_rem(&BigInt::from(2));
        if !rem_one.is_zero() {
            return None;
        }
        h[0] = one;
        Some(Self::new(h, (q0 - at_j) / 2))
    }

    fn add_impl(&self, rhs: &Self, sign: i32) -> Self {
        let n = self.h.len().max(rhs.h.len());
        let h = (0..n)
            .map(|i| {
                let b = rhs.h_coeff(i);
                self.h_coeff(i) + if sign < 0 { -b } else { b }
            })
            .collect();
        let c = if sign < 0 { &self.c - &rhs.c } else { &self.c + &rhs.c };
        Self::new(h, c)
    }
}

impl Add<&Pin2Elem> for &Pin2Elem {
    type Output = Pin2Elem;
    fn add(self, rhs: &Pin2Elem) -> Pin2Elem {
        self.add_impl(rhs, 1)
    }
}

impl Sub<&Pin2Elem> for &Pin2Elem {
    type Output = Pin2Elem;
    fn sub(self, rhs: &Pin2Elem) -> Pin2Elem {
        self.add_impl(rhs, -1)
    }
}

impl Neg for &Pin2Elem {
    type Output = Pin2Elem;
    fn neg(self) -> Pin2Elem {
        self.scale(&-BigInt::one())
    }
}

impl Mul<&Pin2Elem> for &Pin2Elem {
    type Output = Pin2Elem;
    fn mul(self, rhs: &Pin2Elem) -> Pin2Elem {
        // (p + a c)(q + b c) = pq + ab + a·(c q) + b·(c p)
        let mut h = vec![BigInt::zero(); (self.h.len() + rhs.h.len()).saturating_sub(1)];
        for (i, x) in self.h.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.h.iter().enumerate() {
                h[i + j] += x * y;
            }
        }
        let mut out = Pin2Elem::new(h, BigInt::zero());
        out.h_add_constant(&(&self.c * &rhs.c));
        out += &times_c(rhs).scale(&self.c);
        out += &times_c(self).scale(&rhs.c);
        out
    }
}

/// `c · p(h)` for the polynomial part of `x`.
fn times_c(x: &Pin2Elem) -> Pin2Elem {
    let mut h = x.h.clone();
    let p0 = h.first().cloned().unwrap_or_default();
    if let Some(first) = h.first_mut() {
        *first = BigInt::zero();
    }
    Pin2Elem::new(h, p0)
}

impl Pin2Elem {
    fn h_add_constant(&mut self, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        if self.h.is_empty() {
            self.h.push(BigInt::zero());
        }
        self.h[0] += k;
        while self.h.last().is_some_and(Zero::is_zero) {
            self.h.pop();
        }
    }
}

impl AddAssign<&Pin2Elem> for Pin2Elem {
    fn add_assign(&mut self, rhs: &Pin2Elem) {
        *self = &*self + rhs;
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Pin2Elem {
            type Output = Pin2Elem;
            fn $f(self, rhs: Pin2Elem) -> Pin2Elem {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Pin2Elem {
    type Output = Pin2Elem;
    fn neg(self) -> Pin2Elem {
        -&self
    }
}

impl From<i64> for Pin2Elem {
    fn from(n: i64) -> Self {
        Pin2Elem::constant(n)
    }
}

/// Ascending powers of `h`, then `c`: `2 + 5h - h^2 - 3c`.
impl fmt::Display for Pin2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&BigInt, String)> = self
            .h
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| {
                let var = match k {
                    0 => String::new(),
                    1 => "h".to_string(),
                    _ => format!("h^{k}"),
                };
                (a, var)
            })
            .collect();
        if !self.c.is_zero() {
            terms.push((&self.c, "c".to_string()));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, var)) in terms.iter().enumerate() {
            let mag = a.abs();
            match (i, a.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

impl ExprValue for Pin2Elem {
    fn from_integer(n: BigInt) -> Self {
        Pin2Elem::constant(n)
    }

    fn atom(name: &str) -> Option<Self> {
        match name {
            "h" => Some(Pin2Elem::h()),
            "c" => Some(Pin2Elem::c()),
            _ => None,
        }
    }

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }

    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }

    fn neg(self) -> Self {
        -&self
    }

    fn pow(self, e: i64) -> std::result::Result<Self, String> {
        let e = u32::try_from(e).map_err(|_| format!("exponent {e} must be a nonnegative integer"))?;
        Ok(Pin2Elem::pow(&self, e))
    }

    fn div_integer(self, d: &BigInt) -> std::result::Result<Self, String> {
        let exact = |x: &BigInt| {
            let (q, r) = x.div_rem(d);
            r.is_zero().then_some(q)
        };
        let h: Option<Vec<BigInt>> = self.h.iter().map(exact).collect();
        match (h, exact(&self.c)) {
            (Some(h), Some(c)) => Ok(Pin2Elem::new(h, c)),
            _ => Err(format!("{self} is not divisible by {d} in R(Pin(2))")),
        }
    }
}

/// Parses integer polynomials in `h` and `c`, normalising as it goes
/// (`h*c` reads as `h`).
impl FromStr for Pin2Elem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s, 1, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pin2Elem {
        s.parse().unwrap()
    }

    #[test]
    fn relations() {
        assert_eq!(p("(1-c)*(1-c)"), p("2 - 2c"));
        assert_eq!(&Pin2Elem::c() * &Pin2Elem::h(), Pin2Elem::h());
        assert_eq!(&Pin2Elem::c() * &Pin2Elem::c(), Pin2Elem::one());
        assert_eq!(p("(2-h)*(1-c)"), p("2 - 2c"));
        assert!((&Pin2Elem::one_minus_c() * &Pin2Elem::h()).is_zero());
        assert_eq!(p("h c"), Pin2Elem::h());
        assert_eq!(p("c h^2 + 3 c"), p("h^2 + 3c"));
    }

    #[test]
    fn traces() {
        assert_eq!(Pin2Elem::one_minus_c().trace_j(), BigInt::from(2));
        assert!(Pin2Elem::one_minus_c().trace_symbolic().is_zero());
        assert_eq!(p("h^2").trace_symbolic().to_string(), "z^2 + 2 + z^-2");
        assert_eq!(p("h^3 - 7c").trace_j(), BigInt::from(7));
    }

    #[test]
    fn rendering() {
        assert_eq!(p("2 + 5h - h^2 - 3c").to_string(), "2 + 5h - h^2 - 3c");
        assert_eq!(Pin2Elem::zero().to_string(), "0");
        assert_eq!(p("-c").to_string(), "-c");
        assert_eq!(p("512 - 512c").to_string(), "512 - 512c");
        assert_eq!(p("(4 - 2h)/2").to_string(), "2 - h");
        assert!("3h/2".parse::<Pin2Elem>().is_err());
        assert!("h^-1".parse::<Pin2Elem>().is_err());
        assert!(matches!("2 + q".parse::<Pin2Elem>(), Err(Error::Parse { column: 5, .. })));
    }

    #[test]
    fn traces_determine_element() {
        for s in ["2 + 5h - h^2 - 3c", "0", "c", "h^4 - 1", "7 - 7c + h"] {
            let x = p(s);
            let back = Pin2Elem::from_traces(&x.trace_j(), &x.trace_symbolic()).unwrap();
            assert_eq!(back, x);
        }
    }
}
