//! Seeded randomized campaigns driving every bound check over generated
//! perturbation pairs. Reports are pure functions of the configuration, so a
//! fixed seed reproduces a campaign byte for byte.

use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_main_bounds, check_root_bounds, check_savchenko, ViolationBundle};
use crate::eigen::rational_eigenvalues;
use crate::matrix::Matrix;
use crate::perturb::{
    check_restriction_interlacing, common_subspace, random_perturbation, restriction_chain,
    sharp_example,
};
use crate::scalar::{Field, Scalar};

/// Campaign-level field selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "p")]
pub enum FieldChoice {
    Q,
    Gf(u64),
}

impl FieldChoice {
    pub fn field(&self) -> Field {
        match self {
            FieldChoice::Q => Field::Q,
            FieldChoice::Gf(p) => Field::Gf(*p),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignConfig {
    pub field: FieldChoice,
    pub trials: u64,
    pub m_min: usize,
    pub m_max: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub entry_bound: i64,
    pub seed_base: u64,
    /// Cap on the kernel power; defaults to the ambient dimension.
    pub n_max: Option<usize>,
    pub include_interlacing: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            field: FieldChoice::Q,
            trials: 1000,
            m_min: 2,
            m_max: 8,
            k_min: 0,
            k_max: 3,
            entry_bound: 3,
            seed_base: 0,
            n_max: None,
            include_interlacing: true,
        }
    }
}

/// Largest observed gap for one (k, n) cell, next to the theorem bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxGapRecord {
    pub k: usize,
    pub n: usize,
    pub max_gap: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignViolation {
    pub trial: u64,
    pub seed: u64,
    pub check: String,
    pub bundle: ViolationBundle,
}

/// Compact per-trial summary kept in the full report.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub m: usize,
    pub k_requested: usize,
    pub k_effective: usize,
    pub lambdas: usize,
    pub max_gap_i: usize,
    pub max_gap_ii: usize,
    pub all_pass: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckCounts {
    pub lambdas_tested: u64,
    pub main_rows: u64,
    pub root_checks: u64,
    pub savchenko_checked: u64,
    pub savchenko_skipped: u64,
    pub interlacing_records: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub trials_run: u64,
    pub counts: CheckCounts,
    pub max_gaps_i: Vec<MaxGapRecord>,
    pub max_gaps_ii: Vec<MaxGapRecord>,
    /// Rows of the quotient check with k > 0, and how many attained gap = k.
    pub sharp_ii_rows: u64,
    pub eligible_ii_rows: u64,
    pub per_trial: Vec<TrialRecord>,
    pub violations: Vec<CampaignViolation>,
}

impl CampaignReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn sharpness_hit_rate(&self) -> f64 {
        if self.eligible_ii_rows == 0 {
            0.0
        } else {
            self.sharp_ii_rows as f64 / self.eligible_ii_rows as f64
        }
    }
}

/// The lambda values a trial examines: every eigenvalue of S and of T lying
/// in the field, plus zero. Over GF(p) that is simply the whole field.
fn lambda_policy(s: &Matrix, t: &Matrix) -> Vec<Scalar> {
    let field = s.field();
    match field {
        Field::Q => {
            let mut lambdas = vec![field.zero()];
            lambdas.extend(rational_eigenvalues(s));
            lambdas.extend(rational_eigenvalues(t));
            lambdas.sort_by(|a, b| a.as_rational().unwrap().cmp(b.as_rational().unwrap()));
            lambdas.dedup();
            lambdas
        }
        Field::Gf(p) => (0..p)
            .map(|v| Scalar::Gf {
                value: v,
                modulus: p,
            })
            .collect(),
    }
}

/// Run the configured number of seeded trials; each trial generates a base
/// matrix and a factored perturbation, then runs every enabled check at every
/// policy lambda. Any failed flag is recorded with a reproduction bundle.
pub fn fuzz_campaign(config: &CampaignConfig) -> CampaignReport {
    let field = config.field.field();
    let mut counts = CheckCounts::default();
    let mut max_i: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut max_ii: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut sharp_ii_rows = 0u64;
    let mut eligible_ii_rows = 0u64;
    let mut per_trial = Vec::new();
    let mut violations = Vec::new();

    for trial in 0..config.trials {
        let seed = config.seed_base.wrapping_add(trial);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(config.m_min.max(1)..=config.m_max.max(config.m_min.max(1)));
        let k_hi = config.k_max.min(m);
        let k_lo = config.k_min.min(k_hi);
        let k = rng.random_range(k_lo..=k_hi);
        let s = Matrix::from_fn(field, m, m, |_, _| {
            field.from_i64(rng.random_range(-config.entry_bound..=config.entry_bound))
        });
        let pert = random_perturbation(field, m, k, rng.next_u64(), config.entry_bound);
        let t = pert.apply_to(&s).expect("same shape");
        let n_max = config.n_max.unwrap_or(m);

        let lambdas = lambda_policy(&s, &t);
        let mut record = TrialRecord {
            trial,
            seed,
            m,
            k_requested: k,
            k_effective: 0,
            lambdas: lambdas.len(),
            max_gap_i: 0,
            max_gap_ii: 0,
            all_pass: true,
        };
        for lambda in lambdas {
            counts.lambdas_tested += 1;
            let main = check_main_bounds(&s, &t, &lambda, n_max).expect("same shape");
            let k_eff = main.k_effective;
            record.k_effective = k_eff;
            record.max_gap_i = record.max_gap_i.max(main.max_gap_i());
            record.max_gap_ii = record.max_gap_ii.max(main.max_gap_ii());
            record.all_pass &= main.all_pass;
            for row in &main.rows {
                counts.main_rows += 1;
                if row.n >= 1 {
                    let cell = max_i.entry((k_eff, row.n)).or_insert(0);
                    *cell = (*cell).max(row.gap_i);
                }
                if row.n < n_max {
                    let cell = max_ii.entry((k_eff, row.n)).or_insert(0);
                    *cell = (*cell).max(row.gap_ii);
                    if k_eff > 0 {
                        eligible_ii_rows += 1;
                        if row.sharp_ii {
                            sharp_ii_rows += 1;
                        }
                    }
                }
            }
            if !main.all_pass {
                violations.push(CampaignViolation {
                    trial,
                    seed,
                    check: "main-bounds".into(),
                    bundle: main.inputs.clone().expect("failed reports carry inputs"),
                });
            }

            let root = check_root_bounds(&s, &t, &lambda).expect("same shape");
            counts.root_checks += 1;
            if !root.all_pass() {
                record.all_pass = false;
                violations.push(CampaignViolation {
                    trial,
                    seed,
                    check: "root-bounds".into(),
                    bundle: root.inputs.clone().expect("failed reports carry inputs"),
                });
            }

            let sav = check_savchenko(&s, &t, &lambda).expect("same shape");
            match sav.outcome {
                super::SavchenkoStatus::Checked { .. } => counts.savchenko_checked += 1,
                super::SavchenkoStatus::SkippedHypothesis { .. } => counts.savchenko_skipped += 1,
            }
            if !sav.ok() {
                record.all_pass = false;
                violations.push(CampaignViolation {
                    trial,
                    seed,
                    check: "savchenko".into(),
                    bundle: sav.inputs.clone().expect("failed reports carry inputs"),
                });
            }

            if config.include_interlacing {
                let model = common_subspace(&s, &t).expect("same shape");
                if model.codim_s >= 1 {
                    for (label, op, completions) in [
                        ("interlacing-s", &s, &model.completions_s),
                        ("interlacing-t", &t, &model.completions_t),
                    ] {
                        let chain = restriction_chain(op, &model.common, completions)
                            .expect("completions are independent by construction");
                        let report = check_restriction_interlacing(&chain, &lambda, n_max);
                        counts.interlacing_records += report.records.len() as u64;
                        if !report.ok() {
                            record.all_pass = false;
                            violations.push(CampaignViolation {
                                trial,
                                seed,
                                check: label.into(),
                                bundle: super::bundle(&s, &t, &lambda, n_max),
                            });
                        }
                    }
                }
            }
        }
        per_trial.push(record);
    }

    let to_records = |map: BTreeMap<(usize, usize), usize>, factor: fn(usize, usize) -> usize| {
        map.into_iter()
            .map(|((k, n), max_gap)| MaxGapRecord {
                k,
                n,
                max_gap,
                bound: factor(k, n),
            })
            .collect()
    };
    CampaignReport {
        config: config.clone(),
        trials_run: config.trials,
        counts,
        max_gaps_i: to_records(max_i, |k, n| k * n),
        max_gaps_ii: to_records(max_ii, |k, _| k),
        sharp_ii_rows,
        eligible_ii_rows,
        per_trial,
        violations,
    }
}

/// CSV rendering of the per-(k, n) maximum gaps.
pub fn campaign_csv(report: &CampaignReport) -> String {
    let mut out = String::from("item,k,n,max_gap,bound\n");
    for r in &report.max_gaps_i {
        out.push_str(&format!("i,{},{},{},{}\n", r.k, r.n, r.max_gap, r.bound));
    }
    for r in &report.max_gaps_ii {
        out.push_str(&format!("ii,{},{},{},{}\n", r.k, r.n, r.max_gap, r.bound));
    }
    out
}

/// One row of the sharpness sweep over the explicit example family.
#[derive(Debug, Clone, Serialize)]
pub struct SharpSweepRow {
    pub m: usize,
    pub k: usize,
    pub k_effective: usize,
    /// gap_ii = k at every n < m.
    pub quotient_sharp: bool,
    /// gap_i = k*n at every n <= m.
    pub kernel_sharp: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SharpSweepReport {
    pub rows: Vec<SharpSweepRow>,
    pub all_sharp: bool,
}

/// Check that the block example family attains both bounds for every (m, k)
/// in the given ranges.
pub fn sharp_sweep(
    field: Field,
    m_range: (usize, usize),
    k_range: (usize, usize),
) -> SharpSweepReport {
    let mut rows = Vec::new();
    for m in m_range.0..=m_range.1 {
        for k in k_range.0..=k_range.1 {
            let (a, b) = sharp_example(field, m, k);
            let zero = field.zero();
            let report = check_main_bounds(&a, &b, &zero, m).expect("same shape");
            let quotient_sharp = report
                .rows
                .iter()
                .filter(|r| r.n < m)
                .all(|r| r.gap_ii == k);
            let kernel_sharp = report.rows.iter().all(|r| r.gap_i == k * r.n);
            rows.push(SharpSweepRow {
                m,
                k,
                k_effective: report.k_effective,
                quotient_sharp,
                kernel_sharp,
            });
        }
    }
    let all_sharp = rows.iter().all(|r| r.quotient_sharp && r.kernel_sharp);
    SharpSweepReport { rows, all_sharp }
}
