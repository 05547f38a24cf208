//! Named verification grids. Each suite runs one family of exact checks at a
//! configurable size cap and yields one row per check; rows are sorted by
//! case and parameter tuple so reports do not depend on scheduling.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::adjust::{self, constants, AdjustmentProblem};
use crate::bounds::{self, BoundCheckRecord, Relation};
use crate::cheb;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::poly::{PowerPoly, TrigPoly};
use crate::scalar::{big, format_rational, int, Rational};
use crate::vander::{self, DaggerConvention, VandermondeSpec, W_DAGGER_CONVENTION};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "CHEBADJ_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Remark3,
    Lemma1,
    Corollary,
    Pinv,
    Neumann,
    Theorem1,
    Lemma3,
    Lemma4,
    DmIdentity,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Remark3,
        Suite::Lemma1,
        Suite::Corollary,
        Suite::Pinv,
        Suite::Neumann,
        Suite::Theorem1,
        Suite::Lemma3,
        Suite::Lemma4,
        Suite::DmIdentity,
        Suite::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Remark3 => "remark3",
            Suite::Lemma1 => "lemma1",
            Suite::Corollary => "corollary",
            Suite::Pinv => "pinv",
            Suite::Neumann => "neumann",
            Suite::Theorem1 => "theorem1",
            Suite::Lemma3 => "lemma3",
            Suite::Lemma4 => "lemma4",
            Suite::DmIdentity => "dm-identity",
            Suite::Roundtrip => "roundtrip",
        }
    }

    /// Default for `--max-size`; what the cap bounds is listed in the README.
    pub fn default_max_size(self) -> usize {
        match self {
            Suite::Remark3 => 24,
            Suite::Lemma1 => 10,
            Suite::Corollary => 10,
            Suite::Pinv => 40,
            Suite::Neumann | Suite::Theorem1 => 10_000,
            Suite::Lemma3 => 4,
            Suite::Lemma4 => 40,
            Suite::DmIdentity => 40,
            Suite::Roundtrip => 50,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub max_size: Option<usize>,
    /// Lift size caps on the heavy constructor runs and add `p = 3`.
    pub slow: bool,
    /// Worker count; `None` reads [`THREADS_ENV`], falling back to rayon's default.
    pub threads: Option<usize>,
}

/// One row of a suite report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteCase {
    pub case: String,
    pub parameters: String,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
    #[serde(skip)]
    key: Vec<Rational>,
}

impl SuiteCase {
    fn exact(case: &str, params: &[(&str, usize)], lhs: &Rational, rhs: &Rational, relation: Relation) -> Self {
        Self {
            case: case.to_string(),
            parameters: render_params(params),
            lhs: format_rational(lhs),
            rhs: format_rational(rhs),
            ok: relation.holds(lhs, rhs),
            key: params.iter().map(|&(_, v)| int(v as i64)).collect(),
        }
    }

    /// `lhs` mismatching entries out of an expected `0`.
    fn count(case: &str, params: &[(&str, usize)], mismatches: usize) -> Self {
        Self::exact(case, params, &int(mismatches as i64), &int(0), Relation::Eq)
    }

    fn float(case: &str, params: &[(&str, usize)], lhs: f64, rhs: f64, ok: bool) -> Self {
        Self {
            case: case.to_string(),
            parameters: render_params(params),
            lhs: format!("{lhs:e}"),
            rhs: format!("{rhs:e}"),
            ok,
            key: params.iter().map(|&(_, v)| int(v as i64)).collect(),
        }
    }
}

impl From<BoundCheckRecord> for SuiteCase {
    fn from(rec: BoundCheckRecord) -> Self {
        Self {
            case: rec.case.to_string(),
            parameters: rec.parameters(),
            lhs: format_rational(&rec.lhs),
            rhs: format_rational(&rec.rhs),
            ok: rec.ok,
            key: rec.params.into_iter().map(|(_, v)| v).collect(),
        }
    }
}

fn render_params(params: &[(&str, usize)]) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

/// Summary written next to the case CSV.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_size: usize,
    pub slow: bool,
    pub total: usize,
    /// `case:parameters` for every failing row.
    pub failures: Vec<String>,
    /// Seconds; `None` when timing is suppressed for byte-stable output.
    pub wall_time_s: Option<f64>,
    pub outputs: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Result of running one suite.
#[derive(Clone, Debug)]
pub struct SuiteRun {
    pub report: SuiteReport,
    pub cases: Vec<SuiteCase>,
}

impl SuiteRun {
    /// Write `<suite>.json` and `<suite>.csv` into `dir`, recording the paths.
    pub fn write(&mut self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(io_error)?;
        let csv_path = dir.join(format!("{}.csv", self.report.suite));
        let json_path = dir.join(format!("{}.json", self.report.suite));
        self.report.outputs = vec![display(&json_path), display(&csv_path)];

        let mut writer = csv::Writer::from_path(&csv_path).map_err(|e| Error::Parse(e.to_string()))?;
        for case in &self.cases {
            writer.serialize(case).map_err(|e| Error::Parse(e.to_string()))?;
        }
        writer.flush().map_err(io_error)?;

        let mut text = serde_json::to_string_pretty(&self.report).map_err(|e| Error::Parse(e.to_string()))?;
        text.push('\n');
        std::fs::write(&json_path, text).map_err(io_error)?;
        Ok(())
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn io_error(e: std::io::Error) -> Error {
    Error::Parse(format!("i/o: {e}"))
}

type Task = Box<dyn Fn() -> Result<Vec<SuiteCase>> + Send + Sync>;

fn task(f: impl Fn() -> Result<Vec<SuiteCase>> + Send + Sync + 'static) -> Task {
    Box::new(f)
}

/// Worker count from [`THREADS_ENV`], if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

pub fn run_suite(suite: Suite, options: &SuiteOptions) -> Result<SuiteRun> {
    let max_size = options.max_size.unwrap_or_else(|| suite.default_max_size());
    let tasks = build_tasks(suite, max_size, options.slow)?;
    let start = Instant::now();

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = options.threads.or_else(threads_from_env) {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    let results: Vec<Result<Vec<SuiteCase>>> = pool.install(|| tasks.par_iter().map(|t| t()).collect());

    let mut cases = Vec::new();
    for r in results {
        cases.extend(r?);
    }
    cases.sort_by(|a, b| a.case.cmp(&b.case).then_with(|| a.key.cmp(&b.key)));
    let failures = cases.iter().filter(|c| !c.ok).map(|c| format!("{}:{}", c.case, c.parameters)).collect();
    let report = SuiteReport {
        suite: suite.name().to_string(),
        max_size,
        slow: options.slow,
        total: cases.len(),
        failures,
        wall_time_s: Some(start.elapsed().as_secs_f64()),
        outputs: Vec::new(),
    };
    Ok(SuiteRun { report, cases })
}

fn build_tasks(suite: Suite, n: usize, slow: bool) -> Result<Vec<Task>> {
    Ok(match suite {
        Suite::Remark3 => (1..=n).map(|size| task(move || remark3_case(size))).collect(),
        Suite::Lemma1 => (2..=n)
            .step_by(2)
            .flat_map(|k| (1..=n).map(move |l| task(move || lemma1_case(k, l))))
            .collect(),
        Suite::Corollary => (0..=n)
            .flat_map(|p| (0..=n).map(move |j| task(move || corollary_case(p, j))))
            .collect(),
        Suite::Pinv => pinv_tasks(n),
        Suite::Neumann => pair_grid(n, slow)?
            .into_iter()
            .map(|(p, s, r)| task(move || neumann_case(p, s, r)))
            .collect(),
        Suite::Theorem1 => theorem1_tasks(n, slow)?,
        Suite::Lemma3 => lemma3_tasks(n, slow),
        Suite::Lemma4 => (1..=n).map(|nn| task(move || lemma4_case(nn))).collect(),
        Suite::DmIdentity => dm_tasks(n),
        Suite::Roundtrip => roundtrip_tasks(n),
    })
}

fn mismatches(a: &RatMatrix, b: &RatMatrix) -> usize {
    a.entries().iter().zip(b.entries()).filter(|(x, y)| x != y).count()
}

fn remark3_case(n: usize) -> Result<Vec<SuiteCase>> {
    let inv = cheb::build_t(n)?.invert()?;
    let closed = RatMatrix::from_fn(n, n, cheb::inv_tn_entry);
    Ok(vec![SuiteCase::count("remark3", &[("n", n)], mismatches(&inv, &closed))])
}

fn lemma1_case(k: usize, l: usize) -> Result<Vec<SuiteCase>> {
    let inv = cheb::build_tkl(k, l)?.invert()?;
    let mut even = 0;
    let mut odd = 0;
    for i in 0..l {
        for j in 0..l {
            if cheb::inv_tkl_entry(k, l, i, j)? != inv[(i, j)] {
                if i % 2 == 0 {
                    even += 1;
                } else {
                    odd += 1;
                }
            }
        }
    }
    let params = [("k", k), ("l", l)];
    let mut out = vec![SuiteCase::count("lemma1-even-rows", &params, even)];
    if l >= 2 {
        out.push(SuiteCase::count("lemma1-odd-rows", &params, odd));
    }
    Ok(out)
}

fn corollary_case(p: usize, j: usize) -> Result<Vec<SuiteCase>> {
    let mut poly = PowerPoly::from_pairs([(2 * j, int(1))]);
    for _ in 0..p {
        poly = cheb::second_derivative(&poly);
    }
    Ok(vec![SuiteCase::exact(
        "corollary",
        &[("p", p), ("j", j)],
        &cheb::y_value(p, j),
        &poly.coeff(0),
        Relation::Eq,
    )])
}

fn pinv_tasks(n: usize) -> Vec<Task> {
    let mut tasks = Vec::new();
    for p in 1..=3 {
        for r in 2 * p..=n {
            tasks.push(task(move || {
                let oracle = vander::gram_pinv_rows(&vander::build_w(p, r)?)?;
                let mut bad = 0;
                for q in 0..2 * p {
                    for k in 0..r {
                        if vander::w_dagger_closed(q, k, p, r)? != oracle[(q, k)] {
                            bad += 1;
                        }
                    }
                }
                Ok(vec![SuiteCase::count("w-dagger", &[("p", p), ("r", r)], bad)])
            }));
            for s in 1..=5 {
                if r + 1 >= s + 2 * p {
                    tasks.push(task(move || {
                        let spec = VandermondeSpec::new(p, s, r)?;
                        let vv = vander::build_v(&spec).gram();
                        let split = vander::build_w(p, r)?.gram().sub(&vander::build_z(p, s)?.gram())?;
                        Ok(vec![SuiteCase::count("gram-split", &[("p", p), ("s", s), ("r", r)], mismatches(&vv, &split))])
                    }));
                }
            }
        }
    }
    let sweep_r = n.min(20);
    tasks.push(task(move || {
        let matching: Vec<DaggerConvention> = DaggerConvention::ALL
            .into_iter()
            .filter(|&conv| convention_matches(conv, sweep_r))
            .collect();
        let unique = matching == [W_DAGGER_CONVENTION];
        Ok(vec![SuiteCase::exact(
            "w-dagger-convention",
            &[("r_max", sweep_r)],
            &int(matching.len() as i64),
            &int(1),
            if unique { Relation::Eq } else { Relation::Lt },
        )])
    }));
    tasks
}

/// Whether `conv` reproduces the Gram pseudoinverse for `p ≤ 2`, `r ≤ r_max`.
pub fn convention_matches(conv: DaggerConvention, r_max: usize) -> bool {
    (1..=2).all(|p| {
        (2 * p..=r_max).all(|r| {
            let Ok(oracle) = vander::build_w(p, r).and_then(|w| vander::gram_pinv_rows(&w)) else {
                return false;
            };
            (0..2 * p).all(|q| (0..r).all(|k| vander::w_dagger_with(conv, q, k, p, r).is_ok_and(|v| v == oracle[(q, k)])))
        })
    })
}

/// `(p, s, ⌈C₁⌉)` for the gated pairs, plus `p = 3` when `slow`; pairs whose
/// threshold exceeds `max_r` are skipped unless `slow`.
fn pair_grid(max_r: usize, slow: bool) -> Result<Vec<(usize, usize, usize)>> {
    let mut pairs = vec![(1, 1), (1, 2), (2, 1)];
    if slow {
        pairs.push((3, 1));
    }
    let mut out = Vec::new();
    for (p, s) in pairs {
        let r = constants(p, s)?.c1_threshold;
        if slow || r <= max_r {
            out.push((p, s, r));
        }
    }
    Ok(out)
}

/// Slack allowed on float comparisons against the Neumann bound.
pub const NEUMANN_SLACK: f64 = 1e-9;

fn neumann_case(p: usize, s: usize, r: usize) -> Result<Vec<SuiteCase>> {
    let spec = VandermondeSpec::new(p, s, r)?;
    let x = vander::neumann_x(&spec)?;
    let est = x.spectral_norm_estimate(1e-12)?;
    let bound = vander::neumann_bound(p, s, r);
    let params = [("p", p), ("s", s), ("r", r)];
    let vv_inv = vander::build_v(&spec).gram().invert()?;
    let rebuilt = vander::reconstruct_vv_inverse(&spec, &x)?;
    Ok(vec![
        match bound {
            Some(b) => SuiteCase::float("neumann-bound", &params, est, b, est < b + NEUMANN_SLACK),
            None => SuiteCase::float("neumann-bound", &params, est, f64::INFINITY, false),
        },
        SuiteCase::count("neumann-reconstruct", &params, mismatches(&rebuilt, &vv_inv)),
    ])
}

/// Unit vectors and the all-ones vector of length `p`.
pub fn standard_targets(p: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = (0..p)
        .map(|i| (0..p).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    if p > 1 {
        out.push(vec![Rational::one(); p]);
    }
    out
}

fn theorem1_tasks(max_r: usize, slow: bool) -> Result<Vec<Task>> {
    let mut tasks = Vec::new();
    for (p, s, threshold) in pair_grid(usize::MAX, slow)? {
        let mut rs = vec![s + 2 * p, 20, threshold];
        rs.sort_unstable();
        rs.dedup();
        for r in rs.into_iter().filter(|&r| slow || r <= max_r) {
            tasks.push(task(move || theorem1_case(p, s, r, r == threshold)));
        }
    }
    for r in [37, 100, 1000].into_iter().filter(|&r| slow || r <= max_r) {
        tasks.push(task(move || {
            let spec = VandermondeSpec::new(1, 1, r)?;
            let value = adjust::norm_matrix_diagnostic(&spec)?;
            let bound = adjust::norm_bound(1, 1, r)?;
            Ok(vec![SuiteCase::exact("theorem1-infnorm", &[("p", 1), ("s", 1), ("r", r)], &value, &bound, Relation::Lt)])
        }));
    }
    for p in 1..=3 {
        for s in 1..=3 {
            tasks.push(task(move || {
                let mut out = Vec::new();
                for r in (s + 2 * p - 1)..=40.min(max_r.max(s + 2 * p - 1)) {
                    let prob = AdjustmentProblem::new(p, s, r, vec![Rational::zero(); p])?;
                    let t = adjust::build_t_full(&prob)?;
                    let bad = (0..p)
                        .map(|i| {
                            (s..=r)
                                .filter(|&k| t[(2 * i, k - s)] != big(cheb::cheb_entry(2 * i, 2 * k)))
                                .count()
                        })
                        .sum();
                    out.push(SuiteCase::count("theorem1-even-rows", &[("p", p), ("s", s), ("r", r)], bad));
                }
                Ok(out)
            }));
        }
    }
    Ok(tasks)
}

fn theorem1_case(p: usize, s: usize, r: usize, gate_norm: bool) -> Result<Vec<SuiteCase>> {
    let targets = standard_targets(p);
    let prob = AdjustmentProblem::new(p, s, r, targets[0].clone())?;
    let mut out = Vec::new();
    let certs = match adjust::construct_many(&prob, &targets) {
        Ok(c) => c,
        Err(Error::IdentityViolation(_)) => {
            return Ok((0..targets.len())
                .map(|i| SuiteCase::count("theorem1-identity", &[("p", p), ("s", s), ("r", r), ("target", i)], 1))
                .collect());
        }
        Err(e) => return Err(e),
    };
    for (i, cert) in certs.iter().enumerate() {
        let params = [("p", p), ("s", s), ("r", r), ("target", i)];
        out.push(SuiteCase::count("theorem1-identity", &params, usize::from(!cert.identity_ok)));
        if gate_norm {
            out.push(SuiteCase::exact("theorem1-norm", &params, &cert.l1_b, &cert.bound, Relation::Lt));
        }
    }
    Ok(out)
}

fn records(r: Result<Vec<BoundCheckRecord>>) -> Result<Vec<SuiteCase>> {
    Ok(r?.into_iter().map(SuiteCase::from).collect())
}

fn lemma3_tasks(n: usize, slow: bool) -> Vec<Task> {
    let mut tasks = Vec::new();
    for q in 2..=n {
        let r = q + 2 * q * q;
        for t in 2..=q {
            tasks.push(task(move || records((q..=r - q - 1).map(|k| bounds::check_lemma3a(q, t, k, r)).collect())));
        }
    }
    for t in 2..=n {
        let r = 2 * t * t * t + t;
        tasks.push(task(move || records((1..t).map(|k| bounds::check_lemma3b(t, k, r)).collect())));
    }
    let c_max = if slow { n } else { n.min(3) };
    for t in 2..=c_max {
        let r = bounds::lemma3c_threshold(t) + 1;
        tasks.push(task(move || records((t..r).map(|k| bounds::check_lemma3c(t, k, r)).collect())));
        tasks.push(task(move || {
            let mut out = Vec::new();
            for k in 0..r {
                out.extend(bounds::check_s3_s4(t, k, r)?.into_iter().map(SuiteCase::from));
            }
            Ok(out)
        }));
    }
    tasks
}

fn lemma4_case(n: usize) -> Result<Vec<SuiteCase>> {
    let grid: Vec<Rational> = (1..100).map(|k| Rational::new(BigInt::from(k), BigInt::from(100))).collect();
    let mut out = records(bounds::check_lemma4(n, &grid))?;
    for (end, gamma) in [(0, Rational::zero()), (1, Rational::one())] {
        let c = bounds::c_gamma(n, &gamma)?;
        out.push(SuiteCase::exact(
            "lemma4-endpoint",
            &[("n", n), ("gamma", end)],
            &num_traits::Signed::abs(&c),
            &int(1),
            Relation::Eq,
        ));
    }
    Ok(out)
}

fn dm_tasks(n: usize) -> Vec<Task> {
    let mut tasks = Vec::new();
    for t in 2..=6 {
        for r in (t + 2)..=n {
            tasks.push(task(move || {
                (t..r)
                    .map(|k| {
                        let direct = big(bounds::a_sum(t, k, r)?);
                        let residue = bounds::a_via_dm(t, k, r)?;
                        Ok(SuiteCase::exact("dm-identity", &[("t", t), ("k", k), ("r", r)], &residue, &direct, Relation::Eq))
                    })
                    .collect()
            }));
        }
    }
    for q in 2..=6 {
        for t in 2..=q {
            tasks.push(task(move || {
                let start = q + 2 * q * q;
                (start..start + 10)
                    .map(|r| Ok(SuiteCase::count("dm-ratio", &[("q", q), ("t", t), ("r", r)], bounds::dm_ratio_violations(q, t, r)?)))
                    .collect()
            }));
        }
    }
    tasks
}

/// Number of random polynomials per direction in the round-trip suite.
pub const ROUNDTRIP_SAMPLES: usize = 500;
const ROUNDTRIP_SEED: u64 = 0x00c0_ffee;

/// A random polynomial of degree at most `max_degree` with small rational
/// coefficients, about half of them zero.
pub fn random_dense(rng: &mut impl Rng, max_degree: usize) -> Vec<Rational> {
    let degree = rng.gen_range(0..=max_degree);
    (0..=degree)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Rational::zero()
            } else {
                Rational::new(BigInt::from(rng.gen_range(-1000i64..=1000)), BigInt::from(rng.gen_range(1i64..=97)))
            }
        })
        .collect()
}

fn roundtrip_tasks(max_degree: usize) -> Vec<Task> {
    let mut rng = ChaCha8Rng::seed_from_u64(ROUNDTRIP_SEED);
    let samples: Vec<Vec<Rational>> = (0..ROUNDTRIP_SAMPLES).map(|_| random_dense(&mut rng, max_degree)).collect();
    samples
        .into_iter()
        .enumerate()
        .map(|(i, dense)| {
            task(move || {
                let trig = TrigPoly::from_dense(dense.clone());
                let back = cheb::power_to_trig(&cheb::trig_to_power(&trig));
                let power = PowerPoly::from_dense(dense.clone());
                let again = cheb::trig_to_power(&cheb::power_to_trig(&power));
                Ok(vec![
                    SuiteCase::count("trig-power-trig", &[("sample", i)], usize::from(back != trig)),
                    SuiteCase::count("power-trig-power", &[("sample", i)], usize::from(again != power)),
                ])
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("lemma5".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let opts = |n| SuiteOptions { max_size: Some(n), slow: false, threads: Some(2) };
        for (suite, n) in [
            (Suite::Remark3, 8),
            (Suite::Lemma1, 4),
            (Suite::Corollary, 4),
            (Suite::Pinv, 8),
            (Suite::Lemma4, 5),
            (Suite::DmIdentity, 12),
            (Suite::Roundtrip, 6),
        ] {
            let run = run_suite(suite, &opts(n)).unwrap();
            assert!(run.report.passed(), "{suite}: {:?}", run.report.failures);
            assert_eq!(run.report.total, run.cases.len());
        }
    }

    #[test]
    fn theorem1_small_cap() {
        let run = run_suite(Suite::Theorem1, &SuiteOptions { max_size: Some(40), slow: false, threads: None }).unwrap();
        assert!(run.report.passed(), "{:?}", run.report.failures);
        assert!(run.cases.iter().any(|c| c.case == "theorem1-norm"));
        assert!(run.cases.iter().any(|c| c.case == "theorem1-infnorm"));
    }

    #[test]
    fn ordering_is_independent_of_threads() {
        let one = run_suite(Suite::Corollary, &SuiteOptions { max_size: Some(5), slow: false, threads: Some(1) }).unwrap();
        let four = run_suite(Suite::Corollary, &SuiteOptions { max_size: Some(5), slow: false, threads: Some(4) }).unwrap();
        assert_eq!(one.cases, four.cases);
        // numeric, not lexicographic, parameter order
        let ps: Vec<&str> = one.cases.iter().map(|c| c.parameters.as_str()).take(7).collect();
        assert_eq!(ps[..6], ["p=0;j=0", "p=0;j=1", "p=0;j=2", "p=0;j=3", "p=0;j=4", "p=0;j=5"]);
    }

    #[test]
    fn targets() {
        assert_eq!(standard_targets(1), vec![vec![Rational::one()]]);
        assert_eq!(standard_targets(2).len(), 3);
    }
}
