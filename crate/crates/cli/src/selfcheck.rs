//! Self-check: the property suites run against random and exhaustive
//! inputs, one line per check.
//!
//! A check whose enumeration exceeds the budget is reported as `SKIP`
//! rather than failing; only `FAIL` makes the run unsuccessful.

use std::collections::HashSet;
use std::fmt;

use hinge_core::hinge::{chi, standard_matrix};
use hinge_core::oracle::{
    all_bihinges_brute, contingency_tables, enum_gl, levi_order, realized_bihinges,
    stab_order_formula, stabilizer_and_orbit_brute, verify_completeness, EnumerationBudget,
};
use hinge_core::reduce::{block_unit_counts, canonical_01, lpu};
use hinge_core::sample::{random_composition, random_invertible, random_t_minus, random_t_plus};
use hinge_core::{BiHinge, Composition, Error, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{count, ExitCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub status: Status,
    pub name: String,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.status, self.name, self.detail)
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub moduli: Vec<u64>,
    pub max_n: usize,
    pub budget: EnumerationBudget,
    /// Random samples per randomized check.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            moduli: vec![2, 3],
            max_n: 4,
            budget: EnumerationBudget::default(),
            samples: 200,
            seed: 0x6869_6e67,
        }
    }
}

/// Largest `n` for the exhaustive stabilizer and surjectivity searches;
/// beyond it almost every instance exceeds any practical budget.
const EXHAUSTIVE_MAX_N: usize = 3;

type Outcome = Result<(Status, String), String>;

fn line(name: String, outcome: Outcome) -> CheckLine {
    let (status, detail) = outcome.unwrap_or_else(|e| (Status::Fail, e));
    CheckLine {
        status,
        name,
        detail,
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fmt_err(e: Error) -> String {
    e.to_string()
}

struct Sample {
    field: PrimeField,
    alpha: Composition,
    beta: Composition,
    a: hinge_core::Matrix,
}

fn samples(field: PrimeField, config: &Config, rng: &mut ChaCha8Rng) -> Vec<Sample> {
    (0..config.samples)
        .map(|_| {
            let n = rng.gen_range(1..=config.max_n.max(1));
            Sample {
                field,
                alpha: random_composition(n, rng),
                beta: random_composition(n, rng),
                a: random_invertible(field, n, rng),
            }
        })
        .collect()
}

fn invariance(samples: &[Sample], rng: &mut ChaCha8Rng) -> Outcome {
    for s in samples {
        let d = random_t_minus(s.field, &s.beta, rng);
        let c = random_t_plus(s.field, &s.alpha, rng);
        let moved = d.mul(&s.a).map_err(fmt_err)?.mul(&c).map_err(fmt_err)?;
        let base = chi(&s.a, &s.alpha, &s.beta).map_err(fmt_err)?;
        ensure(
            chi(&moved, &s.alpha, &s.beta).map_err(fmt_err)? == base,
            || {
                format!(
                    "chi(D·A·C) ≠ chi(A) for A =\n{}alpha = {}, beta = {}",
                    s.a, s.alpha, s.beta
                )
            },
        )?;
    }
    Ok((Status::Pass, format!("{} random triples", samples.len())))
}

fn axioms(samples: &[Sample]) -> Outcome {
    for s in samples {
        let report = chi(&s.a, &s.alpha, &s.beta)
            .map_err(fmt_err)?
            .check_axioms();
        ensure(report.is_ok(), || format!("{report} for A =\n{}", s.a))?;
    }
    Ok((Status::Pass, format!("{} random matrices", samples.len())))
}

fn standard_forms(field: PrimeField, samples: &[Sample], max_n: usize) -> Outcome {
    let mut tables = 0;
    for n in 1..=max_n.min(EXHAUSTIVE_MAX_N + 1) {
        for alpha in Composition::all(n) {
            for beta in Composition::all(n) {
                for d in contingency_tables(&alpha, &beta) {
                    let m = standard_matrix(&d, field);
                    let h = chi(&m, &alpha, &beta).map_err(fmt_err)?;
                    ensure(h == BiHinge::standard(&d, field), || {
                        format!(
                            "chi(standard_matrix) ≠ standard bi-hinge for {:?}",
                            d.rows()
                        )
                    })?;
                    tables += 1;
                }
            }
        }
    }
    for s in samples {
        let h = chi(&s.a, &s.alpha, &s.beta).map_err(fmt_err)?;
        let norm = h.normalize().map_err(fmt_err)?;
        ensure(
            h.act(&norm.g, &norm.h).map_err(fmt_err)? == BiHinge::standard(&norm.dims, field),
            || format!("normalization missed the standard form for A =\n{}", s.a),
        )?;
    }
    Ok((
        Status::Pass,
        format!(
            "{tables} dimension tables, {} normalizations",
            samples.len()
        ),
    ))
}

fn reduction(samples: &[Sample]) -> Outcome {
    for s in samples {
        let dec = lpu(&s.a).map_err(fmt_err)?;
        let product = dec
            .l
            .mul(&dec.perm)
            .map_err(fmt_err)?
            .mul(&dec.u)
            .map_err(fmt_err)?;
        ensure(product == s.a, || format!("l·perm·u ≠ A for A =\n{}", s.a))?;
        let dims = chi(&s.a, &s.alpha, &s.beta)
            .map_err(fmt_err)?
            .dimension_matrix()
            .map_err(fmt_err)?;
        ensure(
            block_unit_counts(&dec.perm, &s.alpha, &s.beta).map_err(fmt_err)? == dims,
            || format!("block counts of perm ≠ dimension matrix for A =\n{}", s.a),
        )?;
        ensure(
            canonical_01(&s.a, &s.alpha, &s.beta).map_err(fmt_err)?
                == standard_matrix(&dims, s.field),
            || format!("canonical_01 ≠ standard matrix for A =\n{}", s.a),
        )?;
    }
    Ok((Status::Pass, format!("{} random matrices", samples.len())))
}

fn completeness(n: usize, field: PrimeField, budget: &EnumerationBudget) -> Outcome {
    let group = match enum_gl(n, field, budget) {
        Ok(g) => g,
        Err(e @ Error::Budget { .. }) => return Ok((Status::Skip, e.to_string())),
        Err(e) => return Err(e.to_string()),
    };
    let mut pairs = 0;
    let mut cosets = 0;
    for alpha in Composition::all(n) {
        for beta in Composition::all(n) {
            let report = verify_completeness(&group, field, &alpha, &beta).map_err(fmt_err)?;
            ensure(report.exceptions() == 0, || {
                format!(
                    "alpha = {alpha}, beta = {beta}: {} split cosets, {} merged bi-hinges",
                    report.split_cosets, report.merged_bihinges
                )
            })?;
            pairs += 1;
            cosets += report.cosets;
        }
    }
    Ok((
        Status::Pass,
        format!(
            "{pairs} composition pairs, {cosets} double cosets, |GL| = {}",
            group.len()
        ),
    ))
}

fn surjectivity(n: usize, field: PrimeField, budget: &EnumerationBudget) -> Outcome {
    let group = match enum_gl(n, field, budget) {
        Ok(g) => g,
        Err(e @ Error::Budget { .. }) => return Ok((Status::Skip, e.to_string())),
        Err(e) => return Err(e.to_string()),
    };
    let (mut checked, mut skipped) = (0, 0);
    for alpha in Composition::all(n) {
        for beta in Composition::all(n) {
            let all = match all_bihinges_brute(&alpha, &beta, field, budget) {
                Ok(all) => all,
                Err(Error::Budget { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e.to_string()),
            };
            let all: HashSet<BiHinge> = all.into_iter().collect();
            let realized = realized_bihinges(&group, &alpha, &beta).map_err(fmt_err)?;
            ensure(realized == all, || {
                format!(
                    "alpha = {alpha}, beta = {beta}: {} axiomatic grids, {} realized",
                    all.len(),
                    realized.len()
                )
            })?;
            checked += 1;
        }
    }
    if checked == 0 {
        return Ok((
            Status::Skip,
            format!("all {skipped} composition pairs exceed the budget"),
        ));
    }
    Ok((
        Status::Pass,
        format!("{checked} composition pairs, {skipped} over budget"),
    ))
}

fn stabilizers(field: PrimeField, max_n: usize, budget: &EnumerationBudget) -> Outcome {
    let q = field.modulus() as u64;
    let (mut checked, mut skipped) = (0, 0);
    for n in 1..=max_n.min(EXHAUSTIVE_MAX_N) {
        for alpha in Composition::all(n) {
            for beta in Composition::all(n) {
                for d in contingency_tables(&alpha, &beta) {
                    let (stab, orbit) = match stabilizer_and_orbit_brute(&d, field, budget) {
                        Ok(r) => r,
                        Err(Error::Budget { .. }) => {
                            skipped += 1;
                            continue;
                        }
                        Err(e) => return Err(e.to_string()),
                    };
                    let formula = stab_order_formula(&d, q).map_err(fmt_err)?;
                    ensure(stab == formula, || {
                        format!("{:?}: brute {stab}, formula {formula}", d.rows())
                    })?;
                    let levi = levi_order(&alpha, &beta, q).map_err(fmt_err)?;
                    ensure(stab * orbit == levi, || {
                        format!(
                            "{:?}: stabilizer·orbit = {} ≠ {levi}",
                            d.rows(),
                            stab * orbit
                        )
                    })?;
                    checked += 1;
                }
            }
        }
    }
    if checked == 0 {
        return Ok((
            Status::Skip,
            format!("all {skipped} tables exceed the budget"),
        ));
    }
    Ok((
        Status::Pass,
        format!("{checked} dimension tables, {skipped} over budget"),
    ))
}

/// The instances whose three counts are known to coincide.
pub const COUNT_INSTANCES: [(&[usize], &[usize], u64, u128); 3] = [
    (&[1, 1], &[1, 1], 2, 2),
    (&[1, 1], &[1, 1], 3, 8),
    (&[2], &[1, 1], 2, 3),
];

fn counting(budget: &EnumerationBudget) -> Outcome {
    for (alpha, beta, q, expected) in COUNT_INSTANCES {
        let alpha = Composition::new(alpha.to_vec()).map_err(fmt_err)?;
        let beta = Composition::new(beta.to_vec()).map_err(fmt_err)?;
        let field = PrimeField::new(q).map_err(fmt_err)?;
        let report = match count(&alpha, &beta, field, true, budget) {
            Ok(r) => r,
            Err(e) if e.code == ExitCode::Budget => return Ok((Status::Skip, e.message)),
            Err(e) => return Err(e.message),
        };
        ensure(
            report.verdict == Some("MATCH") && report.predicted == expected,
            || format!("alpha = {alpha}, beta = {beta}, q = {q}: {report:?}"),
        )?;
    }
    Ok((
        Status::Pass,
        format!("{} instances MATCH", COUNT_INSTANCES.len()),
    ))
}

/// Runs every check; `progress` sees each line as soon as it is decided.
pub fn run(config: &Config, mut progress: impl FnMut(&CheckLine)) -> Result<Vec<CheckLine>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut lines = Vec::new();
    let mut push = |l: CheckLine| {
        progress(&l);
        lines.push(l);
    };
    for &q in &config.moduli {
        let field = PrimeField::new(q)?;
        let batch = samples(field, config, &mut rng);
        push(line(
            format!("invariance q={q}"),
            invariance(&batch, &mut rng),
        ));
        push(line(format!("axioms q={q}"), axioms(&batch)));
        push(line(
            format!("standard-form q={q}"),
            standard_forms(field, &batch, config.max_n),
        ));
        push(line(format!("reduction q={q}"), reduction(&batch)));
        for n in 1..=config.max_n {
            push(line(
                format!("completeness n={n} q={q}"),
                completeness(n, field, &config.budget),
            ));
        }
        for n in 1..=config.max_n.min(EXHAUSTIVE_MAX_N) {
            push(line(
                format!("surjectivity n={n} q={q}"),
                surjectivity(n, field, &config.budget),
            ));
        }
        push(line(
            format!("stabilizer q={q}"),
            stabilizers(field, config.max_n, &config.budget),
        ));
    }
    push(line("counting".to_string(), counting(&config.budget)));
    Ok(lines)
}
