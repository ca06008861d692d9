use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::{vr_from_character, Pin2Elem, TracePoint, VirtualRep};
use crate::error::{Error, Result};
use crate::exactnum::{CycNum, LaurentPoly};
use crate::groups::{Element, Embedding, Group, Irrep};

/// An element of `R(Γ) ⊗ R(Pin(2))`, stored as `Σ_λ λ ⊗ p_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivElem {
    group: Group,
    terms: BTreeMap<Irrep, Pin2Elem>,
}

/// `α₀ - α̃₀·c + Σ_{k≥1} α_k h^k`; `alpha[k-1]` holds `α_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub alpha0: VirtualRep,
    pub alpha0_tilde: VirtualRep,
    pub alpha: Vec<VirtualRep>,
}

impl Decomposition {
    pub fn assemble(&self) -> EquivElem {
        let g = self.alpha0.group();
        let mut out = EquivElem::from_virtual(&self.alpha0, &Pin2Elem::one());
        out = &out - &EquivElem::from_virtual(&self.alpha0_tilde, &Pin2Elem::c());
        let mut hk = Pin2Elem::one();
        for a in &self.alpha {
            hk = &hk * &Pin2Elem::h();
            out = &out + &EquivElem::from_virtual(a, &hk);
        }
        debug_assert_eq!(out.group(), g);
        out
    }
}

impl EquivElem {
    pub fn zero(group: &Group) -> Self {
        EquivElem {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: &Group) -> Self {
        Self::from_pin2(group, Pin2Elem::one())
    }

    /// `1 ⊗ p`.
    pub fn from_pin2(group: &Group, p: Pin2Elem) -> Self {
        Self::term(group, group.trivial_irrep(), p)
    }

    /// `λ ⊗ p`.
    pub fn term(group: &Group, l: Irrep, p: Pin2Elem) -> Self {
        let mut out = Self::zero(group);
        out.add_term(l, &p);
        out
    }

    /// `v ⊗ p`.
    pub fn from_virtual(v: &VirtualRep, p: &Pin2Elem) -> Self {
        let mut out = Self::zero(v.group());
        for (l, c) in v.terms() {
            out.add_term(l, &p.scale(c));
        }
        out
    }

    pub fn from_terms(group: &Group, terms: impl IntoIterator<Item = (Irrep, Pin2Elem)>) -> Self {
        let mut out = Self::zero(group);
        for (l, p) in terms {
            out.add_term(l, &p);
        }
        out
    }

    fn add_term(&mut self, l: Irrep, p: &Pin2Elem) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(l).or_default();
        *slot += p;
        if slot.is_zero() {
            self.terms.remove(&l);
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coeff(&self, l: Irrep) -> Pin2Elem {
        self.terms.get(&l).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Irrep, &Pin2Elem)> {
        self.terms.iter().map(|(l, p)| (*l, p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn h_degree(&self) -> usize {
        self.terms.values().filter_map(Pin2Elem::h_degree).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(&self.group, self.terms().map(|(l, p)| (l, p.scale(k))))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.group);
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

    /// `tr_{(γ, J)}`.
    pub fn trace_j(&self, g: Element) -> CycNum {
        self.terms()
            .map(|(l, p)| self.group.char_value_unchecked(l, g) * CycNum::from(p.trace_j()))
            .sum()
    }

    /// `tr_{(γ, z)}` for generic `z ∈ S¹`.
    pub fn trace_symbolic(&self, g: Element) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (l, p) in self.terms() {
            out = &out + &p.trace_symbolic().scale(&self.group.char_value_unchecked(l, g));
        }
        out
    }

    /// Trace at `(γ, J)` as a constant Laurent polynomial, or at `(γ, z)`.
    pub fn trace(&self, g: Element, at: TracePoint) -> LaurentPoly {
        match at {
            TracePoint::J => LaurentPoly::constant(self.trace_j(g)),
            TracePoint::Symbolic => self.trace_symbolic(g),
        }
    }

    pub fn decompose(&self) -> Decomposition {
        let g = &self.group;
        let deg = self.h_degree();
        let mut alpha0 = Vec::new();
        let mut alpha0_tilde = Vec::new();
        let mut alpha = vec![Vec::new(); deg];
        for (l, p) in self.terms() {
            alpha0.push((l, p.h_coeff(0)));
            alpha0_tilde.push((l, -p.c_coeff()));
            for (k, slot) in alpha.iter_mut().enumerate() {
                slot.push((l, p.h_coeff(k + 1)));
            }
        }
        Decomposition {
            alpha0: VirtualRep::from_coeffs(g, alpha0),
            alpha0_tilde: VirtualRep::from_coeffs(g, alpha0_tilde),
            alpha: alpha.into_iter().map(|t| VirtualRep::from_coeffs(g, t)).collect(),
        }
    }

    /// Rebuilds an element from its traces at `(γ, J)` and `(γ, z)` for every
    /// class `γ`.
    pub fn from_traces(group: &Group, at_j: &[CycNum], symbolic: &[LaurentPoly]) -> Result<Self> {
        let n = group.num_classes();
        if at_j.len() != n || symbolic.len() != n {
            return Err(Error::Domain(format!("expected traces at {n} classes")));
        }
        let mut polys = Vec::with_capacity(n);
        for (g, s) in symbolic.iter().enumerate() {
            polys.push(s.to_symmetric_polynomial().ok_or_else(|| {
                Error::NotVirtualCharacter {
                    irrep: format!("class {}", group.class_label(Element(g))),
                    value: format!("asymmetric S¹ trace {s}"),
                }
            })?);
        }
        let deg = polys.iter().map(Vec::len).max().unwrap_or(1);
        let at = |g: usize, k: usize| polys[g].get(k).cloned().unwrap_or_default();
        let half = CycNum::from(&num_rational::BigRational::new(BigInt::one(), BigInt::from(2)));
        // constant of the S¹ trace is α₀ - α̃₀, the J trace is α₀ + α̃₀
        let ones: Vec<CycNum> = (0..n).map(|g| (at(g, 0) + &at_j[g]) * &half).collect();
        let cs: Vec<CycNum> = (0..n).map(|g| (at(g, 0) - &at_j[g]) * &half).collect();
        let mut out = EquivElem::from_virtual(&vr_from_character(group, &ones)?, &Pin2Elem::one());
        out = &out + &EquivElem::from_virtual(&vr_from_character(group, &cs)?, &Pin2Elem::c());
        let mut hk = Pin2Elem::one();
        for k in 1..deg {
            hk = &hk * &Pin2Elem::h();
            let vals: Vec<CycNum> = (0..n).map(|g| at(g, k)).collect();
            out = &out + &EquivElem::from_virtual(&vr_from_character(group, &vals)?, &hk);
        }
        Ok(out)
    }

    /// Pulls back along an embedding into this element's group.
    pub fn restrict(&self, e: &Embedding) -> Result<Self> {
        if *e.target() != self.group {
            return Err(Error::Domain(format!(
                "embedding targets {} but the element lives over {}",
                e.target(),
                self.group
            )));
        }
        let mut out = EquivElem::zero(e.source());
        for (l, p) in self.terms() {
            let r = e.restrict_irrep(l)?;
            out = &out + &EquivElem::from_virtual(&r, p);
        }
        Ok(out)
    }

    /// Restriction to `{e} × Pin(2)`: `Σ dim(λ)·p_λ`.
    pub fn restrict_to_trivial(&self) -> Pin2Elem {
        let mut out = Pin2Elem::zero();
        for (l, p) in self.terms() {
            out += &p.scale(&BigInt::from(self.group.dim(l)));
        }
        out
    }

    fn same_group(&self, other: &Self) {
        assert_eq!(self.group, other.group, "elements over different groups");
    }
}

impl Add<&EquivElem> for &EquivElem {
    type Output = EquivElem;
    fn add(self, rhs: &EquivElem) -> EquivElem {
        self.same_group(rhs);
        let mut out = self.clone();
        for (l, p) in rhs.terms() {
            out.add_term(l, p);
        }
        out
    }
}

impl Neg for &EquivElem {
    type Output = EquivElem;
    fn neg(self) -> EquivElem {
        self.scale(&-BigInt::one())
    }
}

impl Sub<&EquivElem> for &EquivElem {
    type Output = EquivElem;
    fn sub(self, rhs: &EquivElem) -> EquivElem {
        self + &(-rhs)
    }
}

impl Mul<&EquivElem> for &EquivElem {
    type Output = EquivElem;
    fn mul(self, rhs: &EquivElem) -> EquivElem {
        self.same_group(rhs);
        let mut out = EquivElem::zero(&self.group);
        for (l, p) in self.terms() {
            for (m, q) in rhs.terms() {
                let pq = p * q;
                if pq.is_zero() {
                    continue;
                }
                for (n, mult) in self.group.tensor(l, m) {
                    if mult == 1 {
                        out.add_term(n, &pq);
                    } else {
                        out.add_term(n, &pq.scale(&BigInt::from(mult)));
                    }
                }
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for EquivElem {
            type Output = EquivElem;
            fn $f(self, rhs: EquivElem) -> EquivElem {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// One `(λ) ⊗ (p)` line per nonzero term.
impl fmt::Display for EquivElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (l, p)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str("\n+ ")?;
            }
            write!(f, "({}) ⊗ ({p})", self.group.irrep_label(l))?;
        }
        Ok(())
    }
}

fn one_dimensional(group: &Group, l: Irrep) -> Result<()> {
    group.char_value(l, group.identity())?;
    match group.dim(l) {
        1 => Ok(()),
        d => Err(Error::Unsupported(format!(
            "exterior powers of the {d}-dimensional irrep {}",
            group.irrep_label(l)
        ))),
    }
}

fn square(group: &Group, l: Irrep) -> Irrep {
    group.tensor(l, l)[0].0
}

/// `∧*(λ ⊗ h) = 1⊗1 - λ⊗h + λ²⊗1` for one-dimensional `λ`.
pub fn wedge_star_h(group: &Group, l: Irrep) -> Result<EquivElem> {
    one_dimensional(group, l)?;
    Ok(EquivElem::from_terms(
        group,
        [
            (group.trivial_irrep(), Pin2Elem::one()),
            (l, -Pin2Elem::h()),
            (square(group, l), Pin2Elem::one()),
        ],
    ))
}

/// `∧*(λ ⊗ c) = 1⊗1 - λ⊗c` for one-dimensional `λ`.
pub fn wedge_star_c(group: &Group, l: Irrep) -> Result<EquivElem> {
    one_dimensional(group, l)?;
    Ok(EquivElem::from_terms(
        group,
        [(group.trivial_irrep(), Pin2Elem::one()), (l, -Pin2Elem::c())],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reprings::regular_rep;

    fn z(n: u32) -> Group {
        Group::cyclic(n).unwrap()
    }

    fn p(s: &str) -> Pin2Elem {
        s.parse().unwrap()
    }

    #[test]
    fn products() {
        let g = z(3);
        let x = EquivElem::term(&g, Irrep(1), Pin2Elem::h());
        let y = EquivElem::term(&g, Irrep(2), Pin2Elem::c());
        assert_eq!(&x * &y, EquivElem::term(&g, Irrep(0), Pin2Elem::h()));
        assert_eq!(&x * &EquivElem::one(&g), x);
        let g6 = z(6);
        let a = EquivElem::term(&g6, Irrep(1), p("1 - c"));
        let b = EquivElem::term(&g6, Irrep(5), p("1 + c"));
        assert!((&a * &b).is_zero());
    }

    #[test]
    fn wedges() {
        let g = z(3);
        let triv = g.trivial_irrep();
        assert_eq!(wedge_star_h(&g, triv).unwrap(), EquivElem::from_pin2(&g, p("2 - h")));
        assert_eq!(wedge_star_c(&g, triv).unwrap(), EquivElem::from_pin2(&g, p("1 - c")));
        let w = wedge_star_h(&g, Irrep(1)).unwrap();
        assert_eq!(w.coeff(Irrep(2)), Pin2Elem::one());
        assert_eq!(w.trace_symbolic(g.identity()).to_string(), "-z + 2 - z^-1");
        let one = g.element(&[1]).unwrap();
        let z3 = CycNum::root(3, 1);
        assert_eq!(w.trace_j(one), CycNum::one() + z3.pow(2));
        let wc = wedge_star_c(&g, Irrep(1)).unwrap();
        assert_eq!(wc.trace_symbolic(one), LaurentPoly::constant(CycNum::one() - &z3));
        assert_eq!(wc.trace_j(one), CycNum::one() + &z3);
    }

    #[test]
    fn regular_trace_vanishes_off_identity() {
        let g = z(3);
        let l2 = EquivElem::from_virtual(&regular_rep(&g), &Pin2Elem::one());
        assert!(l2.trace_j(g.element(&[1]).unwrap()).is_zero());
        assert_eq!(l2.trace_j(g.identity()), CycNum::from(3));
    }

    #[test]
    fn decomposition() {
        let g = z(3);
        let d = EquivElem::from_pin2(&g, p("1 - c")).decompose();
        assert_eq!(d.alpha0, VirtualRep::trivial(&g));
        assert_eq!(d.alpha0_tilde, VirtualRep::trivial(&g));
        assert!(d.alpha.is_empty());
        let x = EquivElem::term(&g, Irrep(1), p("h^2"));
        let d = x.decompose();
        assert!(d.alpha0.is_zero() && d.alpha0_tilde.is_zero() && d.alpha[0].is_zero());
        assert_eq!(d.alpha[1], VirtualRep::irrep(&g, Irrep(1)));
        assert_eq!(d.assemble(), x);
    }

    #[test]
    fn restriction_along_z6_inclusions() {
        let g6 = z(6);
        let betas: Vec<Pin2Elem> = (0..6).map(|i| p(&format!("{} + {}h - c", i + 1, i))).collect();
        let x = EquivElem::from_terms(&g6, betas.iter().cloned().enumerate().map(|(i, b)| (Irrep(i), b)));
        let i2 = Embedding::new(z(2), g6.clone(), g6.element(&[3]).unwrap()).unwrap();
        let r = x.restrict(&i2).unwrap();
        let even = &(&betas[0] + &betas[2]) + &betas[4];
        let odd = &(&betas[1] + &betas[3]) + &betas[5];
        assert_eq!(r, EquivElem::from_terms(&z(2), [(Irrep(0), even), (Irrep(1), odd)]));
        let i3 = Embedding::new(z(3), g6.clone(), g6.element(&[2]).unwrap()).unwrap();
        let y = EquivElem::term(&g6, Irrep(2), Pin2Elem::h());
        assert_eq!(y.restrict(&i3).unwrap(), EquivElem::term(&z(3), Irrep(2), Pin2Elem::h()));
        assert_eq!(x.restrict(&Embedding::identity(&g6).unwrap()).unwrap(), x);
    }

    #[test]
    fn traces_round_trip() {
        let g = Group::abelian(&[3, 3]).unwrap();
        let x = EquivElem::from_terms(&g, [(Irrep(4), p("3 - h^3 + 2c")), (Irrep(7), p("-5c + h"))]);
        let j: Vec<CycNum> = g.elements().map(|e| x.trace_j(e)).collect();
        let s: Vec<LaurentPoly> = g.elements().map(|e| x.trace_symbolic(e)).collect();
        assert_eq!(EquivElem::from_traces(&g, &j, &s).unwrap(), x);
    }

    #[test]
    fn trivial_restriction() {
        let g = z(3);
        let x = EquivElem::from_virtual(&regular_rep(&g).scale(&5.into()), &p("1 - c"))
            + EquivElem::from_pin2(&g, p("1 - c"));
        assert_eq!(x.restrict_to_trivial(), p("16 - 16c"));
    }
}
