use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{CharacterTable, Element, Group, Irrep};
use crate::error::{Error, Result};
use crate::exactnum::CycNum;
use crate::reprings::VirtualRep;

/// An injective homomorphism `Z_n → G`, fixed by the image of the generator.
///
/// The conjugacy class of every power of the generator is precomputed, so
/// pulling back class functions is a lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: Group,
    target: Group,
    image: Element,
    powers: Vec<Element>,
}

impl Embedding {
    pub fn new(source: Group, target: Group, image: Element) -> Result<Self> {
        let n = source
            .cyclic_order()
            .ok_or_else(|| Error::Domain(format!("embedding source {source} is not cyclic")))?;
        if image.0 >= target.num_classes() {
            return Err(Error::Domain(format!(
                "generator image {} is not an element of {target}",
                image.0
            )));
        }
        let ord = target.element_order(image);
        if ord != n as u64 {
            return Err(Error::Domain(format!(
                "generator image {} has order {ord} but {source} has order {n}",
                target.class_label(image)
            )));
        }
        let powers = match &target {
            Group::Abelian(_) => (0..n as i64)
                .map(|j| target.abelian_power(image, j).expect("abelian"))
                .collect(),
            Group::Tabled(t) => tabled_powers(&target, t, image, n)?,
        };
        Ok(Embedding {
            source,
            target,
            image,
            powers,
        })
    }

    /// `⟨γ⟩ ↪ G` with source `Z_{ord γ}`.
    pub fn cyclic_subgroup(target: &Group, gamma: Element) -> Result<Self> {
        let ord = target.element_order(gamma);
        let n = u32::try_from(ord).map_err(|_| Error::Unsupported(format!("element order {ord}")))?;
        Self::new(Group::cyclic(n)?, target.clone(), gamma)
    }

    /// The identity of a cyclic group `Z_n`.
    pub fn identity(group: &Group) -> Result<Self> {
        let n = group
            .cyclic_order()
            .ok_or_else(|| Error::Domain(format!("{group} is not cyclic")))?;
        let gen = if n == 1 {
            group.identity()
        } else {
            group.element(&[1])?
        };
        Self::new(group.clone(), group.clone(), gen)
    }

    /// The inclusion of the trivial subgroup.
    pub fn trivial(target: &Group) -> Self {
        Self::new(Group::trivial(), target.clone(), target.identity())
            .expect("identity has order 1")
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn image(&self) -> Element {
        self.image
    }

    /// Class of the image of `j ∈ Z_n`.
    pub fn map(&self, j: i64) -> Element {
        self.powers[j.rem_euclid(self.powers.len() as i64) as usize]
    }

    /// Pulls a class function on the target back to the source.
    pub fn pull_back(&self, values: &[CycNum]) -> Vec<CycNum> {
        self.powers.iter().map(|g| values[g.0].clone()).collect()
    }

    /// Decomposes `λ ∘ i` into irreducibles of the cyclic source.
    pub fn restrict_irrep(&self, l: Irrep) -> Result<VirtualRep> {
        self.target.char_value(l, self.target.identity())?;
        let values = self.pull_back(&self.target.character(l));
        let coeffs = cyclic_multiplicities(&values).map_err(|(j, m)| {
            Error::Internal(format!(
                "restriction of {} to {} has multiplicity {m} at l{j}",
                self.target.irrep_label(l),
                self.source
            ))
        })?;
        Ok(VirtualRep::from_coeffs(
            &self.source,
            coeffs.into_iter().enumerate().map(|(j, c)| (Irrep(j), c)),
        ))
    }
}

/// Fourier inversion on `Z_n`: multiplicity of `l_a` in a class function given
/// by its values at `0, 1, …, n-1`. Errors carry the index and the rational
/// value of the first non-integral multiplicity.
fn cyclic_multiplicities(values: &[CycNum]) -> std::result::Result<Vec<BigInt>, (usize, String)> {
    let n = values.len();
    let inv_n = CycNum::from_rational(&BigRational::new(BigInt::one(), BigInt::from(n)));
    (0..n)
        .map(|a| {
            let s: CycNum = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * CycNum::root(n as u32, -((a * j) as i64)))
                .sum();
            let m = s * &inv_n;
            m.to_integer().ok_or_else(|| (a, m.to_string()))
        })
        .collect()
}

/// `σ_a` on a value known to lie in `Q(ζ_ord)`; `a` only matters mod `ord`.
fn galois_mod(v: &CycNum, a: u64, ord: u64) -> CycNum {
    let l = (v.conductor() as u64).lcm(&ord);
    let a = (0..l)
        .map(|t| a + t * ord)
        .find(|x| x.gcd(&l) == 1)
        .expect("CRT gives a unit");
    v.galois(a as i64)
}

/// Classes of `γ^j` in a tabled group.
///
/// For `j` prime to `n` the class is found by matching the Galois-conjugate
/// column. For other `j` the class of `γ^d` (`d = gcd(j, n)`) is chosen among
/// classes of order `n/d` so that every irreducible restricts to a genuine
/// representation of `⟨γ⟩`.
fn tabled_powers(group: &Group, t: &CharacterTable, image: Element, n: u32) -> Result<Vec<Element>> {
    let n64 = n as u64;
    let columns: Vec<Vec<CycNum>> = (0..t.classes().len()).map(|c| t.column(c)).collect();
    let find_conjugate = |class: usize, u: u64| -> Result<Element> {
        let ord = t.classes()[class].order;
        let want: Vec<CycNum> = columns[class].iter().map(|v| galois_mod(v, u, ord)).collect();
        columns
            .iter()
            .position(|c| *c == want)
            .map(Element)
            .ok_or_else(|| {
                Error::TableValidation(format!(
                    "no class matches the Galois conjugate σ_{u} of class '{}'",
                    t.classes()[class].label
                ))
            })
    };

    let divisors: Vec<u32> = (2..n).filter(|d| n.is_multiple_of(*d)).collect();
    let candidates: Vec<Vec<usize>> = divisors
        .iter()
        .map(|d| {
            let want = (n / d) as u64;
            (0..t.classes().len())
                .filter(|&c| t.classes()[c].order == want)
                .collect()
        })
        .collect();
    if let Some(i) = candidates.iter().position(Vec::is_empty) {
        return Err(Error::TableValidation(format!(
            "class '{}' has order {n} but no class of order {} exists",
            t.classes()[image.0].label,
            n / divisors[i]
        )));
    }

    let build = |choice: &[usize]| -> Result<Vec<Element>> {
        (0..n64)
            .map(|j| {
                let g = j.gcd(&n64);
                if g == n64 {
                    return Ok(group.identity());
                }
                let base = if g == 1 {
                    image.0
                } else {
                    let i = divisors.iter().position(|&d| d as u64 == g).expect("divisor");
                    choice[i]
                };
                find_conjugate(base, j / g)
            })
            .collect()
    };
    let is_genuine = |powers: &[Element]| {
        group.irreps().all(|l| {
            let values: Vec<CycNum> = powers.iter().map(|g| t.value(l.0, g.0).clone()).collect();
            cyclic_multiplicities(&values).is_ok_and(|m| m.iter().all(|x| !x.is_negative()))
        })
    };

    let mut found: Option<Vec<Element>> = None;
    let mut choice = vec![0usize; divisors.len()];
    loop {
        let picked: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Ok(powers) = build(&picked) {
            if is_genuine(&powers) {
                match &found {
                    Some(prev) if *prev != powers => {
                        return Err(Error::Unsupported(format!(
                            "power maps of class '{}' are ambiguous from the character table",
                            t.classes()[image.0].label
                        )))
                    }
                    _ => found = Some(powers),
                }
            }
        }
        // odometer over candidate choices
        let mut i = 0;
        loop {
            if i == choice.len() {
                return found.ok_or_else(|| {
                    Error::TableValidation(format!(
                        "no consistent power map for class '{}'",
                        t.classes()[image.0].label
                    ))
                });
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z6_inclusions() {
        let z6 = Group::cyclic(6).unwrap();
        let z2 = Group::cyclic(2).unwrap();
        let z3 = Group::cyclic(3).unwrap();
        let i2 = Embedding::new(z2.clone(), z6.clone(), z6.element(&[3]).unwrap()).unwrap();
        let i3 = Embedding::new(z3.clone(), z6.clone(), z6.element(&[2]).unwrap()).unwrap();
        let rho1 = z6.irrep(&[1]).unwrap();
        let rho2 = z6.irrep(&[2]).unwrap();
        assert_eq!(
            i2.restrict_irrep(rho1).unwrap(),
            VirtualRep::irrep(&z2, z2.irrep(&[1]).unwrap())
        );
        assert_eq!(
            i3.restrict_irrep(rho2).unwrap(),
            VirtualRep::irrep(&z3, z3.irrep(&[2]).unwrap())
        );
        for e in [&i2, &i3] {
            assert_eq!(
                e.restrict_irrep(z6.trivial_irrep()).unwrap(),
                VirtualRep::irrep(e.source(), e.source().trivial_irrep())
            );
        }
        assert!(Embedding::new(z3, z6.clone(), z6.element(&[1]).unwrap()).is_err());
    }

    #[test]
    fn identity_and_trivial() {
        let z5 = Group::cyclic(5).unwrap();
        let id = Embedding::identity(&z5).unwrap();
        for l in z5.irreps() {
            assert_eq!(id.restrict_irrep(l).unwrap(), VirtualRep::irrep(&z5, l));
        }
        let t = Embedding::trivial(&z5);
        assert_eq!(t.source().order(), 1);
        assert_eq!(t.map(0), z5.identity());
    }

    #[test]
    fn subgroup_of_product() {
        let g = Group::abelian(&[3, 3]).unwrap();
        let x = g.element(&[1, 2]).unwrap();
        let e = Embedding::cyclic_subgroup(&g, x).unwrap();
        assert_eq!(e.source().order(), 3);
        assert_eq!(e.map(2), g.element(&[2, 1]).unwrap());
        // l(1,1) is trivial on ⟨(1,2)⟩
        let r = e.restrict_irrep(g.irrep(&[1, 1]).unwrap()).unwrap();
        assert_eq!(r, VirtualRep::irrep(e.source(), Irrep(0)));
    }
}
