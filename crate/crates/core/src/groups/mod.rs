//! Finite groups through their character theory.
//!
//! Abelian groups `Z_{n1} × … × Z_{nr}` are handled natively; every other
//! finite group enters as a parsed [`CharacterTable`]. In both cases elements
//! are addressed up to conjugacy ([`Element`] is a class index, which for an
//! abelian group is just the element) and irreducibles by [`Irrep`] index.
//! Abelian elements and irreducibles are enumerated lexicographically by
//! their residue tuples.

mod embedding;
mod table;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::CycNum;

pub use embedding::Embedding;
pub use table::{parse_character_table, CharacterTable, ClassInfo, IrrepInfo};

/// Index of an irreducible representation within its group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Irrep(pub usize);

/// Index of a conjugacy class (for abelian groups, of an element).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<u32>,
    exponent: u32,
    order: u64,
}

impl AbelianGroup {
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Mixed-radix digits of `index`, most significant factor first.
    fn digits(&self, mut index: usize) -> Vec<u32> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (index % n as usize) as u32;
            index /= n as usize;
        }
        out
    }

    fn index(&self, digits: &[i64]) -> usize {
        digits
            .iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&d, &n)| {
                acc * n as usize + d.rem_euclid(n as i64) as usize
            })
    }

    fn char_exponent(&self, irrep: usize, elem: usize) -> i64 {
        let l = self.digits(irrep);
        let g = self.digits(elem);
        let e = self.exponent as u64;
        let mut s = 0u64;
        for ((&a, &b), &n) in l.iter().zip(&g).zip(&self.orders) {
            s = (s + (a as u64 * b as u64 % n as u64) * (e / n as u64)) % e;
        }
        s as i64
    }
}

#[derive(Clone, Debug)]
pub enum Group {
    Abelian(AbelianGroup),
    Tabled(Arc<CharacterTable>),
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Group::Abelian(a), Group::Abelian(b)) => a == b,
            (Group::Tabled(a), Group::Tabled(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl Eq for Group {}

impl Group {
    /// `Z_{n1} × … × Z_{nr}`; the empty list gives the trivial group.
    pub fn abelian(orders: &[u32]) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::Precondition(format!(
                "cyclic factor orders must be positive, got {bad}"
            )));
        }
        let exponent = orders.iter().fold(1u32, |acc, &n| acc.lcm(&n));
        let order = orders.iter().map(|&n| n as u64).product();
        Ok(Group::Abelian(AbelianGroup {
            orders: orders.to_vec(),
            exponent,
            order,
        }))
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::abelian(&[n])
    }

    pub fn trivial() -> Self {
        Self::abelian(&[]).expect("empty product is valid")
    }

    pub fn from_table(table: CharacterTable) -> Self {
        Group::Tabled(Arc::new(table))
    }

    /// Parses `Z<n>` or products `Z<n>xZ<m>...`; `1` names the trivial group.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "1" {
            return Ok(Self::trivial());
        }
        let mut orders = Vec::new();
        let mut col = 1;
        for factor in spec.split(['x', '×']) {
            let n = factor
                .trim()
                .strip_prefix('Z')
                .and_then(|d| d.parse::<u32>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| {
                    Error::parse(1, col, format!("expected Z<n> factor, found '{factor}'"))
                })?;
            orders.push(n);
            col += factor.chars().count() + 1;
        }
        Self::abelian(&orders)
    }

    pub fn order(&self) -> u64 {
        match self {
            Group::Abelian(a) => a.order,
            Group::Tabled(t) => t.order(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Group::Abelian(a) if a.orders.is_empty() => "1".to_string(),
            Group::Abelian(a) => a
                .orders
                .iter()
                .map(|n| format!("Z{n}"))
                .collect::<Vec<_>>()
                .join("x"),
            Group::Tabled(t) => t.name().to_string(),
        }
    }

    pub fn as_abelian(&self) -> Option<&AbelianGroup> {
        match self {
            Group::Abelian(a) => Some(a),
            Group::Tabled(_) => None,
        }
    }

    /// Order of the cyclic group, if this is `Z_n` (or trivial).
    pub fn cyclic_order(&self) -> Option<u32> {
        match self.as_abelian()?.orders.as_slice() {
            [] => Some(1),
            [n] => Some(*n),
            _ => None,
        }
    }

    pub fn num_classes(&self) -> usize {
        match self {
            Group::Abelian(a) => a.order as usize,
            Group::Tabled(t) => t.classes().len(),
        }
    }

    pub fn num_irreps(&self) -> usize {
        self.num_classes()
    }

    pub fn irreps(&self) -> impl Iterator<Item = Irrep> {
        (0..self.num_irreps()).map(Irrep)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.num_classes()).map(Element)
    }

    pub fn identity(&self) -> Element {
        Element(0)
    }

    pub fn trivial_irrep(&self) -> Irrep {
        match self {
            Group::Abelian(_) => Irrep(0),
            Group::Tabled(t) => Irrep(t.trivial_row()),
        }
    }

    pub fn is_odd_order(&self) -> bool {
        self.order() % 2 == 1
    }

    fn check_irrep(&self, l: Irrep) -> Result<()> {
        if l.0 < self.num_irreps() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "irrep index {} out of range for {}",
                l.0,
                self.name()
            )))
        }
    }

    fn check_element(&self, g: Element) -> Result<()> {
        if g.0 < self.num_classes() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "element index {} out of range for {}",
                g.0,
                self.name()
            )))
        }
    }

    /// Abelian element from residues, one per cyclic factor.
    pub fn element(&self, residues: &[i64]) -> Result<Element> {
        let a = self.require_abelian("element residues")?;
        if residues.len() != a.orders.len() {
            return Err(Error::Domain(format!(
                "{} needs {} residues, got {}",
                self.name(),
                a.orders.len(),
                residues.len()
            )));
        }
        Ok(Element(a.index(residues)))
    }

    /// Abelian irrep `γ ↦ ∏ ζ_{n_i}^{l_i γ_i}` from its index tuple.
    pub fn irrep(&self, indices: &[i64]) -> Result<Irrep> {
        let a = self.require_abelian("irrep indices")?;
        if indices.len() != a.orders.len() {
            return Err(Error::Domain(format!(
                "{} needs {} irrep indices, got {}",
                self.name(),
                a.orders.len(),
                indices.len()
            )));
        }
        Ok(Irrep(a.index(indices)))
    }

    fn require_abelian(&self, what: &str) -> Result<&AbelianGroup> {
        self.as_abelian().ok_or_else(|| {
            Error::Domain(format!("{what} only make sense for abelian groups"))
        })
    }

    /// Index tuple of an irrep: residues for abelian groups, `[row]` otherwise.
    pub fn irrep_key(&self, l: Irrep) -> Vec<u32> {
        match self {
            Group::Abelian(a) => a.digits(l.0),
            Group::Tabled(_) => vec![l.0 as u32],
        }
    }

    pub fn irrep_from_key(&self, key: &[i64]) -> Result<Irrep> {
        match self {
            Group::Abelian(_) => self.irrep(key),
            Group::Tabled(_) => match key {
                [row] if *row >= 0 => {
                    let l = Irrep(*row as usize);
                    self.check_irrep(l)?;
                    Ok(l)
                }
                _ => Err(Error::Domain(format!("bad irrep key {key:?}"))),
            },
        }
    }

    pub fn element_residues(&self, g: Element) -> Option<Vec<u32>> {
        self.as_abelian().map(|a| a.digits(g.0))
    }

    pub fn irrep_label(&self, l: Irrep) -> String {
        match self {
            Group::Abelian(a) => match a.orders.len() {
                0 => "l0".to_string(),
                1 => format!("l{}", l.0),
                _ => format!(
                    "l({})",
                    a.digits(l.0)
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                ),
            },
            Group::Tabled(t) => t.irreps()[l.0].label.clone(),
        }
    }

    pub fn class_label(&self, g: Element) -> String {
        match self {
            Group::Abelian(a) => match a.orders.len() {
                0 => "e".to_string(),
                1 => g.0.to_string(),
                _ => format!(
                    "({})",
                    a.digits(g.0)
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                ),
            },
            Group::Tabled(t) => t.classes()[g.0].label.clone(),
        }
    }

    pub fn dim(&self, l: Irrep) -> u64 {
        match self {
            Group::Abelian(_) => 1,
            Group::Tabled(t) => t.irreps()[l.0].dim,
        }
    }

    pub fn class_size(&self, g: Element) -> u64 {
        match self {
            Group::Abelian(_) => 1,
            Group::Tabled(t) => t.classes()[g.0].size,
        }
    }

    pub fn element_order(&self, g: Element) -> u64 {
        match self {
            Group::Abelian(a) => a
                .digits(g.0)
                .iter()
                .zip(&a.orders)
                .fold(1u64, |acc, (&r, &n)| acc.lcm(&((n / n.gcd(&r)) as u64))),
            Group::Tabled(t) => t.classes()[g.0].order,
        }
    }

    /// Character value `χ_λ(γ)`.
    pub fn char_value(&self, l: Irrep, g: Element) -> Result<CycNum> {
        self.check_irrep(l)?;
        self.check_element(g)?;
        Ok(self.char_value_unchecked(l, g))
    }

    pub(crate) fn char_value_unchecked(&self, l: Irrep, g: Element) -> CycNum {
        match self {
            Group::Abelian(a) => CycNum::root(a.exponent, a.char_exponent(l.0, g.0)),
            Group::Tabled(t) => t.value(l.0, g.0).clone(),
        }
    }

    /// The character of `λ` as a class function.
    pub fn character(&self, l: Irrep) -> Vec<CycNum> {
        self.elements()
            .map(|g| self.char_value_unchecked(l, g))
            .collect()
    }

    /// Decomposition of `λ ⊗ μ` into irreducibles (nonzero multiplicities).
    pub fn tensor(&self, l: Irrep, m: Irrep) -> Vec<(Irrep, u64)> {
        match self {
            Group::Abelian(a) => {
                let x = a.digits(l.0);
                let y = a.digits(m.0);
                let sum: Vec<i64> = x.iter().zip(&y).map(|(p, q)| (*p + *q) as i64).collect();
                vec![(Irrep(a.index(&sum)), 1)]
            }
            Group::Tabled(t) => t.tensor(l.0, m.0),
        }
    }

    /// The `k`-th power of an abelian element.
    pub fn abelian_power(&self, g: Element, k: i64) -> Option<Element> {
        let a = self.as_abelian()?;
        let digits: Vec<i64> = a.digits(g.0).iter().map(|&r| r as i64 * k).collect();
        Some(Element(a.index(&digits)))
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_construction() {
        let z3 = Group::abelian(&[3]).unwrap();
        assert_eq!(z3.order(), 3);
        assert_eq!(z3.num_irreps(), 3);
        let v4 = Group::abelian(&[2, 2]).unwrap();
        assert_eq!(v4.num_irreps(), 4);
        assert_eq!(v4.name(), "Z2xZ2");
        let z6 = Group::cyclic(6).unwrap();
        assert_eq!(
            z6.irreps().map(|l| z6.irrep_label(l)).collect::<Vec<_>>(),
            ["l0", "l1", "l2", "l3", "l4", "l5"]
        );
        let triv = Group::abelian(&[]).unwrap();
        assert_eq!(triv.order(), 1);
        assert_eq!(triv.num_irreps(), 1);
        assert!(Group::abelian(&[3, 0]).is_err());
    }

    #[test]
    fn lexicographic_irrep_order() {
        let g = Group::abelian(&[2, 3]).unwrap();
        assert_eq!(g.irrep(&[0, 2]).unwrap(), Irrep(2));
        assert_eq!(g.irrep(&[1, 0]).unwrap(), Irrep(3));
        assert_eq!(g.irrep_key(Irrep(5)), vec![1, 2]);
        assert_eq!(g.irrep_label(Irrep(5)), "l(1,2)");
    }

    #[test]
    fn character_values() {
        let z6 = Group::cyclic(6).unwrap();
        let rho1 = z6.irrep(&[1]).unwrap();
        let one = z6.element(&[1]).unwrap();
        assert_eq!(z6.char_value(rho1, one).unwrap(), CycNum::root(6, 1));
        for g in z6.elements() {
            assert!(z6.char_value(z6.trivial_irrep(), g).unwrap().is_one());
        }
        let z3 = Group::cyclic(3).unwrap();
        let v = z3
            .char_value(z3.irrep(&[1]).unwrap(), z3.element(&[2]).unwrap())
            .unwrap();
        assert_eq!(v, CycNum::root(3, 2));
        assert!(matches!(
            z3.char_value(Irrep(3), Element(0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn element_orders() {
        let g = Group::abelian(&[4, 6]).unwrap();
        assert_eq!(g.element_order(g.element(&[2, 3]).unwrap()), 2);
        assert_eq!(g.element_order(g.element(&[1, 2]).unwrap()), 12);
        assert_eq!(g.element_order(g.identity()), 1);
    }

    #[test]
    fn group_specs() {
        assert_eq!(Group::parse_spec("Z3").unwrap(), Group::cyclic(3).unwrap());
        assert_eq!(
            Group::parse_spec("Z2xZ2xZ2").unwrap(),
            Group::abelian(&[2, 2, 2]).unwrap()
        );
        assert_eq!(Group::parse_spec("1").unwrap(), Group::trivial());
        assert!(Group::parse_spec("Y3").is_err());
        assert!(Group::parse_spec("Z0").is_err());
    }

    #[test]
    fn multiplicative_characters() {
        let g = Group::abelian(&[3, 5]).unwrap();
        for l in g.irreps() {
            for m in g.irreps() {
                let [(lm, 1)] = g.tensor(l, m)[..] else {
                    panic!("abelian tensor must be irreducible")
                };
                for x in g.elements() {
                    let lhs = g.char_value(lm, x).unwrap();
                    let rhs = g.char_value(l, x).unwrap() * g.char_value(m, x).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        let l = g.irrep(&[1, 2]).unwrap();
        for x in g.elements() {
            for y in g.elements() {
                let xy = {
                    let a = g.element_residues(x).unwrap();
                    let b = g.element_residues(y).unwrap();
                    g.element(&[(a[0] + b[0]) as i64, (a[1] + b[1]) as i64]).unwrap()
                };
                assert_eq!(
                    g.char_value(l, xy).unwrap(),
                    g.char_value(l, x).unwrap() * g.char_value(l, y).unwrap()
                );
            }
        }
    }

    #[test]
    fn odd_order_squares_never_minus_one() {
        let minus_one = CycNum::from(-1);
        for orders in [&[3][..], &[5], &[7], &[9], &[15], &[3, 3], &[3, 5]] {
            let g = Group::abelian(orders).unwrap();
            for l in g.irreps() {
                for x in g.elements() {
                    assert_ne!(g.char_value(l, x).unwrap().pow(2), minus_one);
                }
            }
        }
    }
}
