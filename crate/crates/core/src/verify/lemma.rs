use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::{ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::exactnum::CycNum;

fn require_odd(n: u32) -> Result<()> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("n must be a positive odd integer, got {n}")));
    }
    Ok(())
}

/// `∏_{k=1}^{n-1} (1 + x_k)` over the nontrivial `n`-th roots of unity,
/// evaluated as `Σ_j e_j` with the elementary symmetric polynomials `e_j`
/// obtained from the power sums by Newton's identities.
pub fn newton_product(n: u32) -> CycNum {
    // x_k^i = ζ_n^{ki}
    let power_sums: Vec<CycNum> = (1..n as i64)
        .map(|i| (1..n as i64).map(|k| CycNum::root(n, k * i)).sum())
        .collect();
    let mut e = vec![CycNum::one()];
    for j in 1..n as usize {
        let mut acc = CycNum::zero();
        for i in 1..=j {
            let term = &e[j - i] * &power_sums[i - 1];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        let inv_j = CycNum::from_rational(&BigRational::new(BigInt::one(), BigInt::from(j)));
        e.push(acc * inv_j);
    }
    e.into_iter().sum()
}

/// Checks `∏_{k=1}^{n-1} (1 + ζ_n^k) = 1` by direct multiplication in
/// `Q(ζ_n)` and through Newton's identities.
pub fn check_product_lemma(n: u32) -> Result<VerificationReport> {
    require_odd(n)?;
    let mut r = ReportBuilder::new("product_lemma").param("n", n);
    let direct: CycNum = (1..n as i64).map(|k| CycNum::one() + CycNum::root(n, k)).product();
    let newton = newton_product(n);
    r.check_eq("direct product", &CycNum::one(), &direct);
    r.check_eq("Newton's identities", &CycNum::one(), &newton);
    Ok(r.finish())
}

/// `∏_l (1 + ζ_n^{2kl})`, the trace at `(γ^k, J)` of `∧*` of the regular
/// representation of `Z_n` tensored with `h`, one factor per line `C_l`.
/// The trivial line `l = 0` contributes `2` and is included on request.
pub fn regular_wedge_trace(n: u32, k: i64, include_trivial_line: bool) -> Result<CycNum> {
    require_odd(n)?;
    let start = if include_trivial_line { 0 } else { 1 };
    Ok((start..n as i64)
        .map(|l| CycNum::one() + CycNum::root(n, 2 * k * l))
        .product())
}

/// Compares [`regular_wedge_trace`] against the stated values (`2^n` for
/// `k ∈ nZ`, otherwise `1`) and against `2^{gcd(k,n)}` (all lines) or
/// `2^{gcd(k,n)-1}` (nontrivial lines), which is what the product really is.
///
/// Fails when the nontrivial-line product differs from the stated `1`, and
/// always notes the factor `2` the trivial line adds.
pub fn audit_regular_wedge_trace(n: u32, k: i64) -> Result<VerificationReport> {
    require_odd(n)?;
    let mut r = ReportBuilder::new("regular_wedge_trace").param("n", n).param("k", k);
    let all = regular_wedge_trace(n, k, true)?;
    let nontrivial = regular_wedge_trace(n, k, false)?;
    let g = (k.unsigned_abs() as u32).gcd(&n);
    let two = |e: u32| CycNum::from_integer(BigInt::one() << e);

    r.check_eq("all lines vs 2^gcd(k,n)", &two(g), &all);
    r.check_eq("nontrivial lines vs 2^(gcd(k,n)-1)", &two(g - 1), &nontrivial);
    if k.rem_euclid(n as i64) == 0 {
        r.check_eq("all lines, k in nZ (stated 2^n)", &two(n), &all);
    } else {
        r.check_eq("nontrivial lines, k not in nZ (stated 1)", &CycNum::one(), &nontrivial);
        r.note(format!(
            "including the trivial line gives {all}, the stated value is 1; the trivial line contributes the factor 2"
        ));
        if g > 1 {
            r.note(format!(
                "gcd(k, n) = {g}: the lines with n/{g} | l contribute 2 each, so even without the trivial line the product is 2^{} = {nontrivial}",
                g - 1
            ));
        }
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_lemma_small() {
        for n in [1, 3, 5, 15, 21] {
            let r = check_product_lemma(n).unwrap();
            assert!(r.pass, "{r}");
        }
        assert!(check_product_lemma(4).is_err());
    }

    #[test]
    fn wedge_trace_examples() {
        assert_eq!(regular_wedge_trace(3, 0, true).unwrap(), CycNum::from(8));
        assert_eq!(regular_wedge_trace(3, 1, false).unwrap(), CycNum::one());
        assert_eq!(regular_wedge_trace(3, 1, true).unwrap(), CycNum::from(2));
        assert_eq!(regular_wedge_trace(9, 3, false).unwrap(), CycNum::from(4));
    }

    #[test]
    fn audit_flags_trivial_line() {
        let r = audit_regular_wedge_trace(5, 2).unwrap();
        assert!(r.pass, "{r}");
        assert!(r.notes[0].contains("trivial line"));
        let r = audit_regular_wedge_trace(9, 3).unwrap();
        assert!(!r.pass);
        assert_eq!(r.failures().count(), 1);
    }
}
