//! Elements of cyclotomic fields `Q(ζ_N)`.
//!
//! A [`CycNum`] is stored over the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}` as
//! integer numerators over one positive common denominator. The numerator
//! vector is always the remainder modulo the `N`-th cyclotomic polynomial, so
//! two values with the same conductor are equal iff their fields are equal.
//! Values of different conductors are compared in `Q(ζ_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

static CYCLOTOMIC_CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();

/// Integer coefficients (constant term first) of the `n`-th cyclotomic
/// polynomial, obtained by dividing `x^n - 1` by `Φ_d` for every proper
/// divisor `d` of `n`. Results are memoised.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    let cache = CYCLOTOMIC_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut poly = vec![0i128; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let divisor = cyclotomic_polynomial(d);
        poly = exact_div_monic(&poly, &divisor);
    }
    let coeffs: Vec<i64> = poly
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
        .collect();
    let coeffs = Arc::new(coeffs);
    cache.lock().unwrap().insert(n, coeffs.clone());
    coeffs
}

fn exact_div_monic(dividend: &[i128], divisor: &[i64]) -> Vec<i128> {
    let m = divisor.len();
    let mut rem = dividend.to_vec();
    let quot_len = dividend.len() + 1 - m;
    let mut quot = vec![0i128; quot_len];
    for i in (0..quot_len).rev() {
        let q = rem[i + m - 1];
        quot[i] = q;
        if q != 0 {
            for (j, &d) in divisor.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(q.checked_mul(d as i128).expect("overflow in Φ_n"))
                    .expect("overflow in Φ_n");
            }
        }
    }
    debug_assert!(rem.iter().all(|r| *r == 0), "division by Φ_d was not exact");
    quot
}

/// Reduces a coefficient vector (exponent = index) modulo `Φ_n`, in place.
/// On return `v.len() <= φ(n)`.
fn reduce_mod_cyclotomic(n: u32, v: &mut Vec<BigInt>) {
    let n_us = n as usize;
    if v.len() > n_us {
        for i in n_us..v.len() {
            let c = std::mem::take(&mut v[i]);
            if !c.is_zero() {
                v[i % n_us] += c;
            }
        }
        v.truncate(n_us);
    }
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    if v.len() <= deg {
        return;
    }
    for i in (deg..v.len()).rev() {
        let c = std::mem::take(&mut v[i]);
        if c.is_zero() {
            continue;
        }
        let base = i - deg;
        for (j, &a) in phi[..deg].iter().enumerate() {
            match a {
                0 => {}
                1 => v[base + j] -= &c,
                -1 => v[base + j] += &c,
                _ => v[base + j] -= &c * a,
            }
        }
    }
    v.truncate(deg);
}

/// An exact element of the cyclotomic field `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycNum {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum {
            conductor: 1,
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(BigInt::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_parts(1, vec![n.into()], BigInt::one())
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::from_parts(1, vec![q.numer().clone()], q.denom().clone())
    }

    /// `ζ_n^k`. The exponent is reduced mod `n` and the conductor is shrunk
    /// by `gcd(n, k)`, so e.g. `root(4, 2)` is the rational `-1`.
    pub fn root(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root of unity order must be positive");
        let k = k.rem_euclid(n as i64) as u32;
        let g = n.gcd(&k);
        let (n, k) = if k == 0 { (1, 0) } else { (n / g, k / g) };
        let mut v = vec![BigInt::zero(); k as usize + 1];
        v[k as usize] = BigInt::one();
        Self::from_parts(n, v, BigInt::one())
    }

    /// Builds a value from raw numerators indexed by exponent of `ζ_conductor`
    /// (any length) over a nonzero denominator, and canonicalises it.
    pub fn from_parts(conductor: u32, mut num: Vec<BigInt>, den: BigInt) -> Self {
        assert!(conductor >= 1);
        assert!(!den.is_zero(), "zero denominator");
        reduce_mod_cyclotomic(conductor, &mut num);
        let mut out = CycNum {
            conductor,
            num,
            den,
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        while self.num.last().is_some_and(Zero::is_zero) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.conductor = 1;
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
        if self.num.len() == 1 {
            self.conductor = 1;
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients over the power basis of `ζ_conductor`, length `φ(conductor)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let phi = totient(self.conductor) as usize;
        (0..phi)
            .map(|i| match self.num.get(i) {
                Some(c) => BigRational::new(c.clone(), self.den.clone()),
                None => BigRational::zero(),
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.num.len() <= 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        if !self.den.is_one() {
            return None;
        }
        match self.num.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.num[0].clone()),
            _ => None,
        }
    }

    /// Re-expresses this value in `Q(ζ_target)`; `target` must be a multiple
    /// of the conductor. The result is canonical at that conductor and is
    /// therefore only shrunk back if it happens to be rational.
    pub fn lift(&self, target: u32) -> Self {
        let (num, den) = self.lifted_parts(target);
        let mut out = CycNum {
            conductor: target,
            num,
            den,
        };
        out.normalize();
        out
    }

    fn lifted_parts(&self, target: u32) -> (Vec<BigInt>, BigInt) {
        assert!(
            target.is_multiple_of(self.conductor),
            "cannot lift conductor {} to {}",
            self.conductor,
            target
        );
        if target == self.conductor || self.is_rational() {
            return (self.num.clone(), self.den.clone());
        }
        let step = (target / self.conductor) as usize;
        let mut v = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            v[i * step] = c.clone();
        }
        reduce_mod_cyclotomic(target, &mut v);
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        (v, self.den.clone())
    }

    fn scaled(&self, num: &BigInt, den: &BigInt) -> Self {
        let mut out = CycNum {
            conductor: self.conductor,
            num: self.num.iter().map(|c| c * num).collect(),
            den: &self.den * den,
        };
        out.normalize();
        out
    }

    /// Applies the Galois automorphism `ζ_N ↦ ζ_N^a`; `a` must be coprime to
    /// the conductor.
    pub fn galois(&self, a: i64) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.conductor as i64;
        let a = a.rem_euclid(n);
        assert!(
            (a as u32).gcd(&self.conductor) == 1,
            "Galois exponent {a} is not a unit mod {n}"
        );
        let mut v = vec![BigInt::zero(); self.conductor as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[((i as i64 * a) % n) as usize] += c;
        }
        Self::from_parts(self.conductor, v, self.den.clone())
    }

    /// Complex conjugation, `ζ_N ↦ ζ_N^{N-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Field norm down to `Q`: the product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let mut prod = self.clone();
        for a in 2..self.conductor {
            if a.gcd(&self.conductor) == 1 {
                prod = &prod * &self.galois(a as i64);
            }
        }
        prod.to_rational()
            .expect("product over the Galois group is rational")
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Some(Self::from_rational(&q.recip()));
        }
        let mut cofactor = CycNum::one();
        for a in 2..self.conductor {
            if a.gcd(&self.conductor) == 1 {
                cofactor = &cofactor * &self.galois(a as i64);
            }
        }
        let norm = (&cofactor * self)
            .to_rational()
            .expect("norm is rational");
        Some(cofactor.scaled(norm.denom(), norm.numer()))
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycNum::one();
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

    /// Whether this value lies in `Q(ζ_n)`, i.e. is fixed by every Galois
    /// automorphism of `Q(ζ_lcm)` that fixes `ζ_n`.
    pub fn lies_in(&self, n: u32) -> bool {
        if self.conductor == 1 || n.is_multiple_of(self.conductor) {
            return true;
        }
        let l = lcm(self.conductor, n);
        let lifted = self.lift(l);
        (1..l)
            .filter(|a| a % n == 1 % n && a.gcd(&l) == 1)
            .all(|a| lifted.galois(a as i64) == lifted)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let l = lcm(self.conductor, other.conductor);
        let (a, ad) = self.lifted_parts(l);
        let (b, bd) = other.lifted_parts(l);
        let len = a.len().max(b.len());
        let mut num = Vec::with_capacity(len);
        for i in 0..len {
            let x = a.get(i).map(|c| c * &bd).unwrap_or_default();
            let y = b.get(i).map(|c| c * &ad).unwrap_or_default();
            num.push(if negate { x - y } else { x + y });
        }
        let mut out = CycNum {
            conductor: l,
            num,
            den: ad * bd,
        };
        out.normalize();
        out
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return CycNum::zero();
        }
        if self.is_rational() {
            return other.scaled(&self.num[0], &self.den);
        }
        if other.is_rational() {
            return self.scaled(&other.num[0], &other.den);
        }
        let l = lcm(self.conductor, other.conductor);
        let (a, ad) = self.lifted_parts(l);
        let (b, bd) = other.lifted_parts(l);
        let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        Self::from_parts(l, v, ad * bd)
    }
}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        if self.is_rational() || other.is_rational() {
            return false;
        }
        let l = lcm(self.conductor, other.conductor);
        self.lifted_parts(l) == other.lifted_parts(l)
    }
}

impl Eq for CycNum {}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_integer(n)
    }
}

impl From<BigInt> for CycNum {
    fn from(n: BigInt) -> Self {
        CycNum::from_integer(n)
    }
}

impl From<&BigRational> for CycNum {
    fn from(q: &BigRational) -> Self {
        CycNum::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                $body(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                $body(&self, &rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                $body(&self, rhs)
            }
        }
        impl $tr<CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycNum, b: &CycNum| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &CycNum, b: &CycNum| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &CycNum, b: &CycNum| a.mul_impl(b));

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = self.add_impl(rhs, true);
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = self.mul_impl(rhs);
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for c in &mut self.num {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -self.clone()
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> Self {
        iter.fold(CycNum::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for CycNum {
    fn product<I: Iterator<Item = CycNum>>(iter: I) -> Self {
        iter.fold(CycNum::one(), |acc, x| acc * x)
    }
}

fn fmt_rational(f: &mut fmt::Formatter<'_>, num: &BigInt, den: &BigInt) -> fmt::Result {
    let q = BigRational::new(num.clone(), den.clone());
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Renders as `1/3 + 2*z5^2 - z5^3`, ascending in the exponent.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                fmt_rational(f, &mag, &self.den)?;
            } else {
                if mag != self.den {
                    fmt_rational(f, &mag, &self.den)?;
                    write!(f, "*")?;
                }
                write!(f, "z{}^{}", self.conductor, i)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

impl FromStr for CycNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        super::expr::parse_expr(s, 1, 1)
    }
}

impl CycNum {
    /// Exact value as `f64` pair, for diagnostics only.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        for (i, c) in self.num.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * i as f64 / self.conductor as f64;
            let c = c.to_f64().unwrap_or(f64::NAN) / d;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_polynomial(105).contains(&-2));
        for n in 1..60 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n) as usize);
        }
    }

    #[test]
    fn roots() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(3, 1) + z(3, 2), CycNum::from(-1));
        assert_eq!(z(5, 2) * z(5, 4), z(5, 1));
        assert_eq!(z(4, 2), CycNum::from(-1));
        assert_eq!(z(4, 2).conductor(), 1);
        assert_eq!(z(6, 2).conductor(), 3);
        assert_eq!(z(7, 7), CycNum::one());
        assert_eq!(z(7, -1), z(7, 6));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(z(3, 1).conj(), z(3, 2));
        assert_eq!(z(2, 1) * z(3, 1), z(6, 5));
        let one = CycNum::one();
        assert_eq!((&one + &z(3, 1)) * (&one + &z(3, 2)), one);
    }

    #[test]
    fn zero_tests() {
        let one = CycNum::one();
        assert!((&one + &z(3, 1) + z(3, 2)).is_zero());
        assert!(!(&one + &z(3, 1).pow(2)).is_zero());
        assert!((z(4, 1).pow(2) + &one).is_zero());
    }

    #[test]
    fn mixed_conductor_equality() {
        let a = z(3, 1);
        assert_eq!(a.lift(15), a);
        assert_eq!(a.lift(15).conductor(), 15);
        assert_ne!(z(5, 1), z(3, 1));
        assert_ne!(z(5, 1), CycNum::one());
    }

    #[test]
    fn inverse_and_norm() {
        let x = CycNum::one() + z(7, 1) * CycNum::from(3) - z(7, 3);
        let inv = x.inv().unwrap();
        assert!((&x * &inv).is_one());
        assert!(CycNum::zero().inv().is_none());
        // N(1 - ζ_p) = p
        let y = CycNum::one() - z(5, 1);
        assert_eq!(y.norm(), BigRational::from_integer(5.into()));
    }

    #[test]
    fn subfield_membership() {
        assert!(z(3, 1).lift(21).lies_in(3));
        assert!(!z(7, 1).lies_in(3));
        assert!(z(6, 1).lies_in(3));
        assert!(CycNum::from(5).lies_in(1));
    }

    #[test]
    fn display() {
        let x: CycNum = "1/3 + 2*z5^2 - z5^3".parse().unwrap();
        assert_eq!(x.to_string(), "1/3 + 2*z5^2 - z5^3");
        assert_eq!(CycNum::zero().to_string(), "0");
        assert_eq!((-z(3, 1)).to_string(), "-z3^1");
        assert_eq!(z(3, 2).to_string(), "-1 - z3^1");
    }
}
