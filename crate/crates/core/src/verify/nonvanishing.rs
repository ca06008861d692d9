use super::{point_label, ApproximationParams, ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::exactnum::{CycNum, LaurentPoly};
use crate::groups::{Element, Embedding, Group};
use crate::reprings::TracePoint;

/// Trace factors of `∧*(μ⊗h)` and `∧*(μ⊗c)` for a character value `μ(γ)`.
fn line_factors(mu: &CycNum, at: TracePoint) -> (LaurentPoly, LaurentPoly) {
    let one = CycNum::one();
    match at {
        TracePoint::J => (
            LaurentPoly::constant(&one + &mu.pow(2)),
            LaurentPoly::constant(&one + mu),
        ),
        TracePoint::Symbolic => (
            LaurentPoly::constant(&one + &mu.pow(2)) - LaurentPoly::z_plus_inverse().scale(mu),
            LaurentPoly::constant(&one - mu),
        ),
    }
}

/// Trace of `∏_{λ≠1} ∧*(λ ⊗ (2N_λ h + M_λ c))` at `(γ, at)`, computed by
/// restricting each `λ` to `⟨γ⟩`. Also returns the first irrep whose factor
/// vanishes, if any.
pub(crate) fn wedge_product_trace(
    group: &Group,
    params: &ApproximationParams,
    g: Element,
    at: TracePoint,
) -> Result<(LaurentPoly, Option<String>)> {
    let emb = Embedding::cyclic_subgroup(group, g)?;
    let d = emb.source().order() as u32;
    let mut total = LaurentPoly::one();
    let mut culprit = None;
    for l in group.irreps().filter(|&l| l != group.trivial_irrep()) {
        let (n, m) = (params.n_of(l), params.m_of(l));
        let restricted = emb.restrict_irrep(l)?;
        for (mu, mult) in restricted.terms() {
            let mult = u32::try_from(mult).map_err(|_| Error::Internal("negative restriction".into()))?;
            let value = CycNum::root(d, mu.0 as i64);
            let (fh, fc) = line_factors(&value, at);
            let eh = u32::try_from(2 * n).map_err(|_| Error::Unsupported("N too large".into()))? * mult;
            let ec = u32::try_from(m).map_err(|_| Error::Unsupported("M too large".into()))? * mult;
            for (factor, e, what) in [(fh, eh, "h"), (fc, ec, "c")] {
                if e == 0 {
                    continue;
                }
                if factor.is_zero() && culprit.is_none() {
                    culprit = Some(format!("∧*({}⊗{what})", group.irrep_label(l)));
                }
                total = &total * &factor.pow(e);
            }
        }
    }
    Ok((total, culprit))
}

/// Checks that the trace of `∏_{λ≠1} ∧*(λ ⊗ (2N_λ h + M_λ c))` is nonzero at
/// every sample. Points `(γ, J)` need `#G` odd; symbolic points need `γ ≠ e`.
pub fn check_coeff_nonvanishing(
    group: &Group,
    params: &ApproximationParams,
    samples: &[(Element, TracePoint)],
) -> Result<VerificationReport> {
    for &(g, at) in samples {
        if g.0 >= group.num_classes() {
            return Err(Error::Domain(format!("element {} is not in {group}", g.0)));
        }
        match at {
            TracePoint::J if !group.is_odd_order() => {
                return Err(Error::Precondition(format!(
                    "traces at (γ, J) need odd group order; {group} has order {}",
                    group.order()
                )))
            }
            TracePoint::Symbolic if g == group.identity() => {
                return Err(Error::Precondition(
                    "symbolic S¹ samples need γ ≠ e".into(),
                ))
            }
            _ => {}
        }
    }
    let mut r = ReportBuilder::new("coeff_nonvanishing")
        .param("group", group)
        .param("params", params)
        .param("samples", samples.len());
    for &(g, at) in samples {
        let (value, culprit) = wedge_product_trace(group, params, g, at)?;
        let actual = match culprit {
            Some(c) if value.is_zero() => format!("0 ({c} has trace 0)"),
            _ => value.to_string(),
        };
        r.compare(point_label(group, g, at), "≠ 0", actual, !value.is_zero());
    }
    Ok(r.finish())
}
