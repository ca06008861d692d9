use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::CycNum;
use crate::groups::{Element, Group, Irrep};

/// An element of `R(Γ)`: an integer combination of irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualRep {
    group: Group,
    coeffs: BTreeMap<Irrep, BigInt>,
}

impl VirtualRep {
    pub fn zero(group: &Group) -> Self {
        VirtualRep {
            group: group.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn irrep(group: &Group, l: Irrep) -> Self {
        Self::from_coeffs(group, [(l, BigInt::one())])
    }

    pub fn trivial(group: &Group) -> Self {
        Self::irrep(group, group.trivial_irrep())
    }

    pub fn from_coeffs(group: &Group, coeffs: impl IntoIterator<Item = (Irrep, BigInt)>) -> Self {
        let mut out = Self::zero(group);
        for (l, c) in coeffs {
            out.add_coeff(l, &c);
        }
        out
    }

    fn add_coeff(&mut self, l: Irrep, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(l).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&l);
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coeff(&self, l: Irrep) -> BigInt {
        self.coeffs.get(&l).cloned().unwrap_or_default()
    }

    /// Nonzero coefficients in irrep order.
    pub fn terms(&self) -> impl Iterator<Item = (Irrep, &BigInt)> {
        self.coeffs.iter().map(|(l, c)| (*l, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn dim(&self) -> BigInt {
        self.terms()
            .map(|(l, c)| c * BigInt::from(self.group.dim(l)))
            .sum()
    }

    pub fn trace(&self, g: Element) -> CycNum {
        self.terms()
            .map(|(l, c)| self.group.char_value_unchecked(l, g) * CycNum::from(c.clone()))
            .sum()
    }

    /// The character as a class function.
    pub fn character(&self) -> Vec<CycNum> {
        self.group.elements().map(|g| self.trace(g)).collect()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_coeffs(&self.group, self.terms().map(|(l, c)| (l, c * k)))
    }

    fn same_group(&self, other: &Self) {
        assert_eq!(
            self.group, other.group,
            "virtual representations over different groups"
        );
    }
}

impl Add<&VirtualRep> for &VirtualRep {
    type Output = VirtualRep;
    fn add(self, rhs: &VirtualRep) -> VirtualRep {
        self.same_group(rhs);
        let mut out = self.clone();
        for (l, c) in rhs.terms() {
            out.add_coeff(l, c);
        }
        out
    }
}

impl Neg for &VirtualRep {
    type Output = VirtualRep;
    fn neg(self) -> VirtualRep {
        self.scale(&-BigInt::one())
    }
}

impl Sub<&VirtualRep> for &VirtualRep {
    type Output = VirtualRep;
    fn sub(self, rhs: &VirtualRep) -> VirtualRep {
        self + &(-rhs)
    }
}

/// Tensor product.
impl Mul<&VirtualRep> for &VirtualRep {
    type Output = VirtualRep;
    fn mul(self, rhs: &VirtualRep) -> VirtualRep {
        self.same_group(rhs);
        let mut out = VirtualRep::zero(&self.group);
        for (l, a) in self.terms() {
            for (m, b) in rhs.terms() {
                let ab = a * b;
                for (n, mult) in self.group.tensor(l, m) {
                    out.add_coeff(n, &(&ab * BigInt::from(mult)));
                }
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for VirtualRep {
            type Output = VirtualRep;
            fn $f(self, rhs: VirtualRep) -> VirtualRep {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for VirtualRep {
    type Output = VirtualRep;
    fn neg(self) -> VirtualRep {
        -&self
    }
}

/// `6·l0 + 5·l1 - l2`
impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.terms().enumerate() {
            let label = self.group.irrep_label(l);
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{mag}·{label}")?;
            }
        }
        Ok(())
    }
}

/// The regular representation `[L²(G)] = Σ dim(λ)·λ`.
pub fn regular_rep(group: &Group) -> VirtualRep {
    VirtualRep::from_coeffs(group, group.irreps().map(|l| (l, BigInt::from(group.dim(l)))))
}

/// Fourier inversion: the virtual representation whose character takes the
/// given value on each class. Every multiplicity
/// `(1/|G|) Σ |C|·f(C)·conj(χ_λ(C))` must be an integer.
pub fn vr_from_character(group: &Group, values: &[CycNum]) -> Result<VirtualRep> {
    if values.len() != group.num_classes() {
        return Err(Error::Domain(format!(
            "class function has {} values but {group} has {} classes",
            values.len(),
            group.num_classes()
        )));
    }
    let inv_order = CycNum::from_rational(&BigRational::new(BigInt::one(), BigInt::from(group.order())));
    let mut out = VirtualRep::zero(group);
    for l in group.irreps() {
        let s: CycNum = group
            .elements()
            .map(|g| {
                let w = CycNum::from(group.class_size(g) as i64);
                w * &values[g.0] * group.char_value_unchecked(l, g).conj()
            })
            .sum();
        let m = s * &inv_order;
        let Some(m) = m.to_integer() else {
            return Err(Error::NotVirtualCharacter {
                irrep: group.irrep_label(l),
                value: m.to_string(),
            });
        };
        out.add_coeff(l, &m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_representation() {
        let z3 = Group::cyclic(3).unwrap();
        let l2 = regular_rep(&z3);
        assert_eq!(l2.to_string(), "l0 + l1 + l2");
        assert_eq!(l2.dim(), BigInt::from(3));
        assert_eq!(regular_rep(&Group::trivial()), VirtualRep::trivial(&Group::trivial()));
    }

    #[test]
    fn inversion_examples() {
        let z3 = Group::cyclic(3).unwrap();
        let c = |v: &[i64]| v.iter().map(|&x| CycNum::from(x)).collect::<Vec<_>>();
        assert_eq!(vr_from_character(&z3, &c(&[3, 0, 0])).unwrap(), regular_rep(&z3));
        assert_eq!(vr_from_character(&z3, &c(&[1, 1, 1])).unwrap(), VirtualRep::trivial(&z3));
        let expect = (regular_rep(&z3).scale(&5.into()) + VirtualRep::trivial(&z3)).scale(&2.into());
        assert_eq!(vr_from_character(&z3, &c(&[32, 2, 2])).unwrap(), expect);
        assert_eq!(
            vr_from_character(&z3, &c(&[1, 0, 0])).unwrap_err(),
            Error::NotVirtualCharacter {
                irrep: "l0".into(),
                value: "1/3".into()
            }
        );
    }

    #[test]
    fn character_round_trip() {
        let g = Group::abelian(&[2, 3]).unwrap();
        let v = VirtualRep::from_coeffs(&g, [(Irrep(1), 4.into()), (Irrep(5), (-3).into())]);
        assert_eq!(vr_from_character(&g, &v.character()).unwrap(), v);
        assert_eq!(v.to_string(), "4·l(0,1) - 3·l(1,2)");
    }

    #[test]
    fn tensor_is_character_product() {
        let z5 = Group::cyclic(5).unwrap();
        let a = VirtualRep::from_coeffs(&z5, [(Irrep(1), 2.into()), (Irrep(3), 1.into())]);
        let b = VirtualRep::from_coeffs(&z5, [(Irrep(4), 1.into()), (Irrep(0), (-1).into())]);
        let prod = &a * &b;
        for g in z5.elements() {
            assert_eq!(prod.trace(g), a.trace(g) * b.trace(g));
        }
    }
}
