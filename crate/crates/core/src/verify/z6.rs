use super::{ReportBuilder, VerificationReport};
use crate::error::Result;
use crate::formulas::{bryan_degree, z6_abc, z6_assemble, z6_base, z6_constraints, z6_solve, zp_degree};
use crate::groups::{Embedding, Group};
use crate::reprings::Pin2Elem;

/// Checks a full set of `β_0..β_5` against the six linear relations and
/// against the `Z_2` and `Z_3` degrees obtained by restriction.
pub fn check_z6_betas(m_x: i64, k_x: i64, betas: &[Pin2Elem; 6]) -> Result<VerificationReport> {
    let base = z6_base(m_x, k_x)?;
    let abc = z6_abc(m_x, k_x)?;
    let mut r = ReportBuilder::new("z6_consistency")
        .param("m_X", m_x)
        .param("k_X", k_x);
    for c in z6_constraints(&abc, betas) {
        r.check_eq(c.name, &c.rhs, &c.lhs);
    }

    let z6 = Group::cyclic(6)?;
    let alpha = z6_assemble(betas);
    let i2 = Embedding::new(Group::cyclic(2)?, z6.clone(), z6.element(&[3])?)?;
    let i3 = Embedding::new(Group::cyclic(3)?, z6.clone(), z6.element(&[2])?)?;
    let (m2, k2) = base.z2;
    let (m3, k3) = base.z3;
    r.check_eq(
        format!("restriction to Z2 vs degree for (m, k) = ({m2}, {k2})"),
        &bryan_degree(1, m2, k2)?,
        &alpha.restrict(&i2)?,
    );
    r.check_eq(
        format!("restriction to Z3 vs degree for (m, k) = ({m3}, {k3})"),
        &zp_degree(3, m3, k3)?,
        &alpha.restrict(&i3)?,
    );
    Ok(r.finish())
}

/// Solves the `Z_6` system from `β_0, β_1` and checks the result.
pub fn check_z6_consistency(
    m_x: i64,
    k_x: i64,
    beta0: &Pin2Elem,
    beta1: &Pin2Elem,
) -> Result<VerificationReport> {
    let betas = z6_solve(m_x, k_x, beta0, beta1)?;
    check_z6_betas(m_x, k_x, &betas)
}
