//! Closed-form degrees of Seiberg-Witten maps on covers, and the covering
//! bookkeeping they need.
//!
//! `m` is `b⁺` of the base and `k = -σ/16`. A cover with deck group `Γ` has
//! `m_X + 1 = (m + 1)·#Γ` and `k_X = k·#Γ`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::Group;
use crate::reprings::{regular_rep, EquivElem, Pin2Elem, VirtualRep};

/// Base data `(Γ, m, k)` together with the invariants of the cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringData {
    group: Group,
    m: i64,
    k: i64,
    m_x: i64,
    k_x: i64,
}

impl CoveringData {
    pub fn new(group: Group, m: i64, k: i64) -> Result<Self> {
        if m <= 0 {
            return Err(Error::Precondition(format!("b+ must be positive, got m = {m}")));
        }
        if k < 0 {
            return Err(Error::Precondition(format!("signature must be nonpositive, got k = {k}")));
        }
        let (m_x, k_x) = covering_invariants(m, k, group.order())?;
        Ok(CoveringData { group, m, k, m_x, k_x })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn m_x(&self) -> i64 {
        self.m_x
    }

    pub fn k_x(&self) -> i64 {
        self.k_x
    }
}

fn overflow() -> Error {
    Error::Unsupported("exponent out of range".into())
}

/// `(m_X, k_X) = (order·(m+1) - 1, order·k)`.
pub fn covering_invariants(m: i64, k: i64, order: u64) -> Result<(i64, i64)> {
    if order == 0 {
        return Err(Error::Precondition("group order must be positive".into()));
    }
    let n = i64::try_from(order).map_err(|_| overflow())?;
    let m_x = m
        .checked_add(1)
        .and_then(|x| x.checked_mul(n))
        .and_then(|x| x.checked_sub(1))
        .ok_or_else(overflow)?;
    let k_x = k.checked_mul(n).ok_or_else(overflow)?;
    Ok((m_x, k_x))
}

/// `2^e` for `e ≥ 0`.
pub(crate) fn pow2(e: i64) -> Result<BigInt> {
    let e = u32::try_from(e).map_err(|_| overflow())?;
    Ok(BigInt::one() << e)
}

fn exponent(m: i64, k: i64, shift: i64) -> Result<i64> {
    k.checked_mul(2)
        .and_then(|k2| m.checked_sub(k2))
        .and_then(|x| x.checked_add(shift))
        .ok_or_else(overflow)
}

/// `2^{m-2k-1}(1 - c)`.
pub fn furuta_degree(m: i64, k: i64) -> Result<Pin2Elem> {
    let e = exponent(m, k, -1)?;
    if e < 0 {
        return Err(Error::Precondition(format!(
            "non-integral Furuta coefficient (m-2k-1 = {e})"
        )));
    }
    Ok(Pin2Elem::one_minus_c().scale(&pow2(e)?))
}

/// `a·[L²(Γ)] + b·ρ_triv`, the shape every closed form here takes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L2Form {
    pub group: Group,
    pub l2: BigInt,
    pub triv: BigInt,
}

impl L2Form {
    pub fn to_virtual(&self) -> VirtualRep {
        &regular_rep(&self.group).scale(&self.l2) + &VirtualRep::trivial(&self.group).scale(&self.triv)
    }

    /// `self ⊗ (1 - c)`.
    pub fn times_one_minus_c(&self) -> EquivElem {
        EquivElem::from_virtual(&self.to_virtual(), &Pin2Elem::one_minus_c())
    }
}

/// `[5·L2(Z3)] + rho_triv`
impl fmt::Display for L2Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.l2.is_zero() {
            if self.l2.is_one() {
                parts.push(format!("[L2({})]", self.group));
            } else {
                parts.push(format!("[{}·L2({})]", self.l2, self.group));
            }
        }
        if !self.triv.is_zero() {
            if self.triv.is_one() {
                parts.push("rho_triv".to_string());
            } else {
                parts.push(format!("{}·rho_triv", self.triv));
            }
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

pub fn is_odd_prime(p: u64) -> bool {
    p > 2 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The numerator `2^{(m-2k+1)p-2} - 2^{m-2k-1}` of the `[L²(Z_p)]`
/// coefficient. By Fermat it is divisible by `p`.
pub fn fermat_numerator(p: u64, m: i64, k: i64) -> Result<BigInt> {
    if !is_odd_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    let e = exponent(m, k, -1)?;
    if e < 0 {
        return Err(Error::Precondition(format!(
            "non-integral Furuta coefficient (m-2k-1 = {e})"
        )));
    }
    let top = exponent(m, k, 1)?
        .checked_mul(p as i64)
        .and_then(|x| x.checked_sub(2))
        .ok_or_else(overflow)?;
    Ok(pow2(top)? - pow2(e)?)
}

/// Coefficients of the `Z_p` degree
/// `(x·[L²(Z_p)] + 2^{m-2k-1}·ρ_triv)(1 - c)`.
pub fn zp_closed_form(p: u64, m: i64, k: i64) -> Result<L2Form> {
    let numer = fermat_numerator(p, m, k)?;
    CoveringData::new(Group::cyclic(p as u32)?, m, k)?;
    let (x, r) = numer.div_rem(&BigInt::from(p));
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "{p} does not divide {numer}, contradicting Fermat's little theorem"
        )));
    }
    Ok(L2Form {
        group: Group::cyclic(p as u32)?,
        l2: x,
        triv: pow2(exponent(m, k, -1)?)?,
    })
}

pub fn zp_degree(p: u64, m: i64, k: i64) -> Result<EquivElem> {
    Ok(zp_closed_form(p, m, k)?.times_one_minus_c())
}

/// Bryan's `(Z_2)^q` degree `2^{2^q(m-2k+1)-2-q}[L²((Z_2)^q)](1 - c)`.
///
/// Bryan's theorem also assumes `b⁺(X) ≠ b⁺(X/⟨g⟩)` for every nontrivial
/// `g`. That is a statement about the manifold, not about `(q, m, k)`, so it
/// is the caller's responsibility.
pub fn bryan_closed_form(q: u32, m: i64, k: i64) -> Result<L2Form> {
    if q == 0 {
        return Err(Error::Precondition("q must be positive".into()));
    }
    let group = Group::abelian(&vec![2; q as usize])?;
    CoveringData::new(group.clone(), m, k)?;
    let e = 1i64
        .checked_shl(q)
        .filter(|&x| x > 0)
        .and_then(|x| x.checked_mul(exponent(m, k, 1).ok()?))
        .and_then(|x| x.checked_sub(2 + q as i64))
        .ok_or_else(overflow)?;
    if e < 0 {
        return Err(Error::Precondition(format!(
            "negative exponent 2^q(m-2k+1)-2-q = {e}"
        )));
    }
    Ok(L2Form {
        group,
        l2: pow2(e)?,
        triv: BigInt::zero(),
    })
}

pub fn bryan_degree(q: u32, m: i64, k: i64) -> Result<EquivElem> {
    Ok(bryan_closed_form(q, m, k)?.times_one_minus_c())
}

/// `α₀ + α̃₀ = 2^{m-2k}((2^{(#Γ-1)(m-2k+1)} - 1)/#Γ·[L²(Γ)] + ρ_triv)` for odd
/// `#Γ`, as an [`L2Form`].
pub fn odd_sum_form(group: &Group, m: i64, k: i64) -> Result<L2Form> {
    if !group.is_odd_order() {
        return Err(Error::Precondition(format!("{group} has even order")));
    }
    let e = exponent(m, k, 0)?;
    if e < 0 {
        return Err(Error::Precondition(format!("m-2k = {e} is negative")));
    }
    let n = group.order();
    let top = (n as i64 - 1).checked_mul(e + 1).ok_or_else(overflow)?;
    let numer: BigInt = pow2(top)? - 1;
    let (x, r) = numer.div_rem(&BigInt::from(n));
    if !r.is_zero() {
        let q = num_rational::BigRational::new(numer, BigInt::from(n));
        return Err(Error::Precondition(format!(
            "inconsistent covering data for this group: the [L2({group})] coefficient (2^{top} - 1)/{n} = {q} is not an integer"
        )));
    }
    let scale = pow2(e)?;
    Ok(L2Form {
        group: group.clone(),
        l2: x * &scale,
        triv: scale,
    })
}

pub fn odd_sum_alpha0(group: &Group, m: i64, k: i64) -> Result<VirtualRep> {
    Ok(odd_sum_form(group, m, k)?.to_virtual())
}

/// Base data of a `Z_6` cover seen through its `Z_2` and `Z_3` subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Z6Base {
    /// `m_X - 2k_X + 1 = 6d`.
    pub d: i64,
    /// `(m, k)` of `X/Z_2`, the base of `X` as a `Z_2` cover.
    pub z2: (i64, i64),
    /// `(m, k)` of `X/Z_3`.
    pub z3: (i64, i64),
}

pub fn z6_base(m_x: i64, k_x: i64) -> Result<Z6Base> {
    let bad = |why: &str| Err(Error::Precondition(format!("not Z6 covering data: {why}")));
    if (m_x + 1) % 6 != 0 {
        return bad("6 does not divide m_X + 1");
    }
    if k_x % 6 != 0 || k_x < 0 {
        return bad("k_X is not a nonnegative multiple of 6");
    }
    let d = (m_x - 2 * k_x + 1) / 6;
    if d < 1 {
        return bad("m_X - 2k_X + 1 must be at least 6");
    }
    Ok(Z6Base {
        d,
        z2: ((m_x + 1) / 2 - 1, k_x / 2),
        z3: ((m_x + 1) / 3 - 1, k_x / 3),
    })
}

/// The constants `A`, `B`, `C` of the `Z_6` system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z6Constants {
    pub a: Pin2Elem,
    pub b: Pin2Elem,
    pub c: Pin2Elem,
}

pub fn z6_abc(m_x: i64, k_x: i64) -> Result<Z6Constants> {
    let Z6Base { d, .. } = z6_base(m_x, k_x)?;
    let three = BigInt::from(3);
    let big = pow2(6 * d - 2)?;
    let div3 = |n: BigInt, name: &str| -> Result<BigInt> {
        let (q, r) = n.div_rem(&three);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal(format!("{name} coefficient {n}/3 is not an integer")))
        }
    };
    let b = div3(&big + pow2(2 * d - 1)?, "B")?;
    let c = div3(&big - pow2(2 * d - 2)?, "C")?;
    let f = Pin2Elem::one_minus_c();
    Ok(Z6Constants {
        a: f.scale(&pow2(6 * d - 3)?),
        b: f.scale(&b),
        c: f.scale(&c),
    })
}

/// One of the linear relations the `β_i` must satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z6Constraint {
    pub name: &'static str,
    pub lhs: Pin2Elem,
    pub rhs: Pin2Elem,
}

impl Z6Constraint {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// All six relations: the five coming from the `Z_2` and `Z_3` restrictions
/// and the restriction to the trivial group.
pub fn z6_constraints(abc: &Z6Constants, betas: &[Pin2Elem; 6]) -> Vec<Z6Constraint> {
    let sum = |idx: &[usize]| idx.iter().fold(Pin2Elem::zero(), |acc, &i| &acc + &betas[i]);
    let two_a = abc.a.scale(&BigInt::from(2));
    vec![
        Z6Constraint { name: "β0+β2+β4 = A", lhs: sum(&[0, 2, 4]), rhs: abc.a.clone() },
        Z6Constraint { name: "β1+β3+β5 = A", lhs: sum(&[1, 3, 5]), rhs: abc.a.clone() },
        Z6Constraint { name: "β0+β3 = B", lhs: sum(&[0, 3]), rhs: abc.b.clone() },
        Z6Constraint { name: "β1+β4 = C", lhs: sum(&[1, 4]), rhs: abc.c.clone() },
        Z6Constraint { name: "β2+β5 = C", lhs: sum(&[2, 5]), rhs: abc.c.clone() },
        Z6Constraint { name: "β0+…+β5 = 2A", lhs: sum(&[0, 1, 2, 3, 4, 5]), rhs: two_a },
    ]
}

/// Solves for `β_2..β_5` given `β_0, β_1`; returns all six.
pub fn z6_solve(m_x: i64, k_x: i64, beta0: &Pin2Elem, beta1: &Pin2Elem) -> Result<[Pin2Elem; 6]> {
    let abc = z6_abc(m_x, k_x)?;
    let Z6Constants { a, b, c } = &abc;
    let b2 = &(&(a - c) - beta0) + beta1;
    let b3 = b - beta0;
    let b4 = c - beta1;
    let b5 = &(&(&c.scale(&BigInt::from(2)) - a) + beta0) - beta1;
    let betas = [beta0.clone(), beta1.clone(), b2, b3, b4, b5];
    if let Some(bad) = z6_constraints(&abc, &betas).into_iter().find(|c| !c.holds()) {
        return Err(Error::Internal(format!(
            "solution violates {}: {} ≠ {}",
            bad.name, bad.lhs, bad.rhs
        )));
    }
    Ok(betas)
}

/// `Σ β_i ⊗ ρ_i` over `Z_6`.
pub fn z6_assemble(betas: &[Pin2Elem; 6]) -> EquivElem {
    let z6 = Group::cyclic(6).expect("6 > 0");
    EquivElem::from_terms(
        &z6,
        betas.iter().enumerate().map(|(i, b)| (crate::groups::Irrep(i), b.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pin2Elem {
        s.parse().unwrap()
    }

    #[test]
    fn covering_relations() {
        assert_eq!(covering_invariants(3, 1, 6).unwrap(), (23, 6));
        assert_eq!(covering_invariants(7, 2, 1).unwrap(), (7, 2));
        assert_eq!(covering_invariants(3, 1, 3).unwrap(), (11, 3));
        assert!(CoveringData::new(Group::cyclic(3).unwrap(), 0, 0).is_err());
        assert!(CoveringData::new(Group::cyclic(3).unwrap(), 3, -1).is_err());
    }

    #[test]
    fn furuta() {
        assert_eq!(furuta_degree(3, 1).unwrap(), p("1 - c"));
        assert_eq!(furuta_degree(5, 1).unwrap(), p("4 - 4c"));
        assert_eq!(
            furuta_degree(2, 1).unwrap_err().to_string(),
            "non-integral Furuta coefficient (m-2k-1 = -1)"
        );
    }

    #[test]
    fn zp_examples() {
        let f = zp_closed_form(3, 3, 1).unwrap();
        assert_eq!((f.l2.clone(), f.triv.clone()), (5.into(), 1.into()));
        assert_eq!(f.to_string(), "[5·L2(Z3)] + rho_triv");
        assert_eq!(f.to_virtual().to_string(), "6·l0 + 5·l1 + 5·l2");
        let d = zp_degree(3, 3, 1).unwrap().decompose();
        assert_eq!(d.alpha0, d.alpha0_tilde);
        assert!(d.alpha.is_empty());
        assert_eq!(zp_degree(3, 3, 1).unwrap().restrict_to_trivial(), p("16 - 16c"));
        assert_eq!(zp_closed_form(5, 3, 1).unwrap().l2, BigInt::from(51));
        let f5 = zp_closed_form(5, 4, 1).unwrap();
        assert_eq!((f5.l2, f5.triv), (1638.into(), 2.into()));
        assert!(zp_degree(9, 3, 1).is_err());
        assert!(zp_degree(3, 2, 1).is_err());
    }

    #[test]
    fn bryan_examples() {
        let f = bryan_closed_form(1, 3, 1).unwrap();
        assert_eq!(f.l2, BigInt::from(2));
        assert_eq!(bryan_closed_form(2, 3, 1).unwrap().l2, BigInt::from(16));
        // q = 1: exponent is m_X - 2k_X - 2
        for (m, k) in [(3, 1), (5, 1), (6, 2), (9, 0)] {
            let (mx, kx) = covering_invariants(m, k, 2).unwrap();
            assert_eq!(bryan_closed_form(1, m, k).unwrap().l2, pow2(mx - 2 * kx - 2).unwrap());
        }
        assert!(bryan_closed_form(0, 3, 1).is_err());
    }

    #[test]
    fn odd_sum_examples() {
        let z3 = Group::cyclic(3).unwrap();
        let f = odd_sum_form(&z3, 3, 1).unwrap();
        assert_eq!((f.l2.clone(), f.triv.clone()), (10.into(), 2.into()));
        let zp = zp_degree(3, 3, 1).unwrap().decompose();
        assert_eq!(f.to_virtual(), &zp.alpha0 + &zp.alpha0_tilde);
        let t = odd_sum_alpha0(&Group::trivial(), 7, 2).unwrap();
        assert_eq!(t, VirtualRep::trivial(&Group::trivial()).scale(&8.into()));
        let z9 = Group::cyclic(9).unwrap();
        let f9 = odd_sum_form(&z9, 4, 1).unwrap();
        assert_eq!(f9.l2, (pow2(24).unwrap() - 1) / 9 * 4);
        let err = odd_sum_form(&z9, 3, 1).unwrap_err();
        assert!(err.to_string().starts_with("inconsistent covering data for this group"), "{err}");
        assert!(odd_sum_form(&Group::cyclic(2).unwrap(), 3, 1).is_err());
    }

    #[test]
    fn z6_constants() {
        let abc = z6_abc(23, 6).unwrap();
        assert_eq!(abc.a, p("512 - 512c"));
        assert_eq!(abc.b, p("344 - 344c"));
        assert_eq!(abc.c, p("340 - 340c"));
        let small = z6_abc(5, 0).unwrap();
        assert_eq!((small.a, small.b, small.c), (p("8-8c"), p("6-6c"), p("5-5c")));
        for d in 1..=8 {
            let mx = 6 * d - 1;
            assert!(z6_abc(mx, 0).is_ok());
        }
        assert!(z6_abc(10, 1).unwrap_err().to_string().starts_with("not Z6 covering data"));
    }

    #[test]
    fn z6_system() {
        let zero = Pin2Elem::zero();
        let b = z6_solve(23, 6, &zero, &zero).unwrap();
        let f = |n: i64| Pin2Elem::one_minus_c().scale(&n.into());
        assert_eq!(b[2..], [f(172), f(344), f(340), f(168)]);
        let abc = z6_abc(23, 6).unwrap();
        let b = z6_solve(23, 6, &abc.b, &abc.c).unwrap();
        assert!(b[3].is_zero() && b[4].is_zero());
        let b = z6_solve(23, 6, &p("3 + h^2 - 7c"), &p("-h + 11")).unwrap();
        assert!(z6_constraints(&abc, &b).iter().all(Z6Constraint::holds));
    }
}
