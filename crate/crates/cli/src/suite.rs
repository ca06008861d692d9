//! The `verify all` sweep.

use covdeg::formulas::{odd_sum_alpha0, zp_degree};
use covdeg::groups::Group;
use covdeg::reprings::{Pin2Elem, TracePoint};
use covdeg::verify::{
    audit_regular_wedge_trace, check_coeff_nonvanishing, check_cover_identity, check_product_lemma,
    check_trace_constraint, check_z6_consistency, check_zp_degree, ApproximationParams, VerificationReport, Witness,
};
use covdeg::Error;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::CliConfig;

#[derive(Clone, Debug)]
enum Job {
    Lemma(u32),
    Audit(u32, i64),
    Zp(u64, i64, i64),
    Cover(u64, i64, i64, ApproximationParams),
    Trace(Group, i64, i64),
    Nonvanishing(Group, ApproximationParams),
    Z6(i64, i64, Pin2Elem, Pin2Elem),
}

impl Job {
    fn name(&self) -> String {
        match self {
            Job::Lemma(n) => format!("product_lemma n={n}"),
            Job::Audit(n, k) => format!("regular_wedge_trace n={n} k={k}"),
            Job::Zp(p, m, k) => format!("zp_degree p={p} m={m} k={k}"),
            Job::Cover(p, m, k, q) => format!("cover_identity Z{p} m={m} k={k} {q}"),
            Job::Trace(g, m, k) => format!("trace_constraint {g} m={m} k={k}"),
            Job::Nonvanishing(g, q) => format!("coeff_nonvanishing {g} {q}"),
            Job::Z6(m, k, b0, b1) => format!("z6_consistency m_X={m} k_X={k} β0={b0} β1={b1}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Checked(VerificationReport),
    Skipped { check: String, reason: String },
    Error { check: String, message: String },
}

impl Outcome {
    pub fn failed(&self) -> bool {
        match self {
            Outcome::Checked(r) => !r.pass,
            Outcome::Skipped { .. } => false,
            Outcome::Error { .. } => true,
        }
    }
}

fn sample_points(g: &Group) -> Vec<(covdeg::groups::Element, TracePoint)> {
    let mut out = Vec::new();
    if g.is_odd_order() {
        out.extend(g.elements().map(|e| (e, TracePoint::J)));
    }
    out.extend(g.elements().filter(|&e| e != g.identity()).map(|e| (e, TracePoint::Symbolic)));
    out
}

fn random_pin2(rng: &mut StdRng) -> Pin2Elem {
    let len = rng.gen_range(0..=4);
    let h = (0..len).map(|_| BigInt::from(rng.gen_range(-1000..=1000))).collect();
    Pin2Elem::new(h, BigInt::from(rng.gen_range(-1000..=1000)))
}

fn trace_check(g: &Group, m: i64, k: i64) -> covdeg::Result<Option<VerificationReport>> {
    let alpha0 = match odd_sum_alpha0(g, m, k) {
        Ok(a) => a,
        Err(Error::Precondition(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut r = check_trace_constraint(g, m, k, &alpha0)?;
    if *g == Group::cyclic(3)? {
        let d = zp_degree(3, m, k)?.decompose();
        let sum = &d.alpha0 + &d.alpha0_tilde;
        let ok = sum == alpha0;
        r.witnesses.push(Witness {
            at: "α0 + α̃0 of the Z3 degree".into(),
            expected: alpha0.to_string(),
            actual: sum.to_string(),
            ok,
        });
        r.pass &= ok;
    }
    Ok(Some(r))
}

fn run_job(job: &Job) -> Outcome {
    let result = match job {
        Job::Lemma(n) => check_product_lemma(*n).map(Some),
        Job::Audit(n, k) => audit_regular_wedge_trace(*n, *k).map(Some),
        Job::Zp(p, m, k) => check_zp_degree(*p, *m, *k).map(Some),
        Job::Cover(p, m, k, q) => (|| {
            let g = Group::cyclic(*p as u32)?;
            check_cover_identity(&g, *m, *k, &zp_degree(*p, *m, *k)?, q)
        })()
        .map(Some),
        Job::Trace(g, m, k) => trace_check(g, *m, *k),
        Job::Nonvanishing(g, q) => check_coeff_nonvanishing(g, q, &sample_points(g)).map(Some),
        Job::Z6(m, k, b0, b1) => check_z6_consistency(*m, *k, b0, b1).map(Some),
    };
    match result {
        Ok(Some(r)) => Outcome::Checked(r),
        Ok(None) => Outcome::Skipped {
            check: job.name(),
            reason: match job {
                Job::Trace(g, m, k) => odd_sum_alpha0(g, *m, *k).err().map(|e| e.to_string()).unwrap_or_default(),
                _ => String::new(),
            },
        },
        Err(e) => Outcome::Error { check: job.name(), message: e.to_string() },
    }
}

fn jobs(cfg: &CliConfig, odd_groups: &[Group]) -> Vec<Job> {
    let mut jobs = Vec::new();
    jobs.extend((1..=cfg.max_n).step_by(2).map(Job::Lemma));
    for n in (1..=cfg.audit_max_n).step_by(2) {
        jobs.extend((0..n as i64).map(|k| Job::Audit(n, k)));
    }
    let grid = cfg.grid.points(cfg.max_spread);
    for &p in &cfg.primes {
        jobs.extend(grid.iter().map(|&(m, k)| Job::Zp(p, m, k)));
    }
    for &p in &cfg.cover_primes {
        for (m, k) in cfg.cover_grid.points(cfg.max_spread) {
            jobs.extend(cfg.params.iter().map(|q| Job::Cover(p, m, k, q.clone())));
        }
    }
    for g in odd_groups {
        jobs.extend(grid.iter().map(|&(m, k)| Job::Trace(g.clone(), m, k)));
        jobs.extend(cfg.params.iter().map(|q| Job::Nonvanishing(g.clone(), q.clone())));
    }
    for (i, &(m, k)) in cfg.z6.iter().enumerate() {
        jobs.push(Job::Z6(m, k, Pin2Elem::zero(), Pin2Elem::zero()));
        let mut rng = StdRng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
        for _ in 0..cfg.random_betas {
            let (b0, b1) = (random_pin2(&mut rng), random_pin2(&mut rng));
            jobs.push(Job::Z6(m, k, b0, b1));
        }
    }
    jobs
}

/// Runs every check in parallel. Results come back in job order.
pub fn run_suite(cfg: &CliConfig, odd_groups: &[Group]) -> Vec<Outcome> {
    jobs(cfg, odd_groups).par_iter().map(run_job).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Grid;

    #[test]
    fn small_suite_is_deterministic() {
        let cfg = CliConfig {
            max_n: 5,
            audit_max_n: 3,
            primes: vec![3],
            grid: Grid { m: (3, 4), k: (1, 1) },
            cover_grid: Grid { m: (3, 3), k: (1, 1) },
            cover_primes: vec![3],
            random_betas: 2,
            z6: vec![(23, 6)],
            ..CliConfig::default()
        };
        let groups = [Group::cyclic(3).unwrap()];
        let a = run_suite(&cfg, &groups);
        let b = run_suite(&cfg, &groups);
        let key = |v: &[Outcome]| {
            v.iter()
                .map(|o| match o {
                    Outcome::Checked(r) => (r.identity.clone(), r.params.clone(), r.witnesses.clone()),
                    other => (format!("{other:?}"), Default::default(), Vec::new()),
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(key(&a), key(&b));
        assert!(a.iter().all(|o| !o.failed()), "{a:#?}");
    }

    #[test]
    fn non_integral_odd_sum_is_skipped() {
        let z15 = Group::cyclic(15).unwrap();
        assert!(matches!(run_job(&Job::Trace(z15.clone(), 4, 1)), Outcome::Skipped { .. }));
        assert!(matches!(run_job(&Job::Trace(z15, 5, 1)), Outcome::Checked(_)));
    }
}
