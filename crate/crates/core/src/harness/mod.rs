//! Verification suites, parameter grids and reports.

mod converse;
mod suites;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use serde::Serialize;

use crate::char_table::GlFamily;
use crate::factors::{pin_conventions, Evaluation, PinningRecord};
use crate::gl_group::{gl_order, DEFAULT_GROUP_CAP};
use crate::{Error, Result};

pub use converse::{converse_suite, ConverseOptions};

/// Tables `(n, q)` and pair shapes `(n1, n2, q)` a suite runs over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub spec: String,
    pub tables: Vec<(usize, u64)>,
    pub pairs: Vec<(usize, usize, u64)>,
}

impl Grid {
    pub fn standard() -> Self {
        let tables = vec![(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2)];
        let pairs = vec![(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (2, 2, 3)];
        Grid { spec: "standard".into(), tables, pairs }
    }

    /// Parses `standard`, or `<n-clause>,<q-clause>[;pairs=<n1>x<n2>,...]` where
    /// an n-clause is `n<=N`, `n=N` or `n in a,b,..` and a q-clause is `q<=Q`,
    /// `q=Q` or `q in a,b,..`. Without a pairs clause every `n1 ≥ n2` with
    /// `n1 + n2 ≤ 4` and both ranks in the grid is used.
    pub fn parse(spec: &str) -> Result<Self> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        if s == "standard" {
            return Ok(Self::standard());
        }
        let bad = || Error::Unsupported(format!("grid spec {spec:?}"));
        let (main, pairs) = match s.split_once(';') {
            Some((m, p)) => (m, Some(p.strip_prefix("pairs=").ok_or_else(bad)?)),
            None => (s.as_str(), None),
        };
        let qpos = main.find(",q").ok_or_else(bad)?;
        let ns = parse_clause(&main[..qpos], 'n').ok_or_else(bad)?;
        let qs = parse_clause(&main[qpos + 1..], 'q').ok_or_else(bad)?;
        if ns.iter().any(|&n| n == 0 || n > 6) || qs.iter().any(|&q| q > 256 || !is_prime_power(q)) {
            return Err(bad());
        }
        let mut tables = Vec::new();
        for &q in &qs {
            for &n in &ns {
                tables.push((n as usize, q));
            }
        }
        tables.sort_by_key(|&(n, q)| (q, n));
        let shapes: Vec<(usize, usize)> = match pairs {
            Some(p) => p
                .split(',')
                .map(|t| {
                    let (a, b) = t.split_once('x')?;
                    Some((a.parse().ok()?, b.parse().ok()?))
                })
                .collect::<Option<_>>()
                .ok_or_else(bad)?,
            None => {
                let mut v = Vec::new();
                for &n1 in &ns {
                    for &n2 in &ns {
                        if n2 <= n1 && n1 + n2 <= 4 {
                            v.push((n1 as usize, n2 as usize));
                        }
                    }
                }
                v
            }
        };
        let mut pairs = Vec::new();
        for &q in &qs {
            for &(n1, n2) in &shapes {
                if n2 == 0 || n1 < n2 {
                    return Err(bad());
                }
                pairs.push((n1, n2, q));
            }
        }
        pairs.sort_by_key(|&(a, b, q)| (q, a, b));
        pairs.dedup();
        Ok(Grid { spec: spec.to_string(), tables, pairs })
    }
}

fn parse_clause(s: &str, var: char) -> Option<Vec<u64>> {
    let rest = s.strip_prefix(var)?;
    let set: BTreeSet<u64> = if let Some(r) = rest.strip_prefix("<=") {
        let hi: u64 = r.parse().ok()?;
        let lo = if var == 'n' { 1 } else { 2 };
        (lo..=hi).filter(|&x| var == 'n' || is_prime_power(x)).collect()
    } else if let Some(r) = rest.strip_prefix('=') {
        [r.parse().ok()?].into()
    } else {
        let r = rest.strip_prefix("in")?;
        r.split(',').map(|t| t.parse().ok()).collect::<Option<_>>()?
    };
    (!set.is_empty()).then(|| set.into_iter().collect())
}

fn is_prime_power(q: u64) -> bool {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    q >= 2 && r == 1
}

/// Outcome of one case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub status: Status,
    pub detail: serde_json::Value,
}

impl CaseReport {
    pub fn new(case: impl Into<String>, pass: bool, detail: serde_json::Value) -> Self {
        let status = if pass { Status::Pass } else { Status::Fail };
        CaseReport { case: case.into(), status, detail }
    }
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A grid point left out of a suite, with the reason.
#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub case: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub grid: String,
    pub seed: u64,
    pub pass: bool,
    pub cases: Vec<CaseReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skipped>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<PinningRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Sub-reports of `all`, in execution order.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<VerificationReport>,
    pub runtime_ms: u64,
}

impl VerificationReport {
    fn new(suite: Suite, grid: &Grid, seed: u64) -> Self {
        VerificationReport {
            suite: suite.name().into(),
            grid: grid.spec.clone(),
            seed,
            pass: true,
            cases: Vec::new(),
            skipped: Vec::new(),
            convention: None,
            notes: Vec::new(),
            suites: Vec::new(),
            runtime_ms: 0,
        }
    }

    fn finish(mut self, start: Instant) -> Self {
        self.pass = self.cases.iter().all(CaseReport::passed) && self.suites.iter().all(|s| s.pass);
        self.runtime_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub fn num_failed(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed()).count()
    }

    /// JSON with every `runtime_ms` zeroed; equal across repeated runs.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        strip_runtime(&mut v);
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    /// One line per case, then one summary line.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        if !self.suites.is_empty() {
            for s in &self.suites {
                out.push_str(&s.to_lines());
            }
        }
        for c in &self.cases {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{} {tag} {} {}\n", self.suite, c.case, c.detail));
        }
        for s in &self.skipped {
            out.push_str(&format!("{} SKIP {} {}\n", self.suite, s.case, s.reason));
        }
        for n in &self.notes {
            out.push_str(&format!("{} NOTE {n}\n", self.suite));
        }
        let verdict = if self.pass { "pass" } else { "fail" };
        out.push_str(&format!(
            "{}: {verdict}, {} cases, {} failed, {} skipped, {} ms\n",
            self.suite,
            self.cases.len(),
            self.num_failed(),
            self.skipped.len(),
            self.runtime_ms
        ));
        out
    }
}

fn strip_runtime(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            if m.contains_key("runtime_ms") {
                m.insert("runtime_ms".into(), 0.into());
            }
            m.values_mut().for_each(strip_runtime);
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(strip_runtime),
        _ => {}
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Counts,
    Orthogonality,
    CuspidalCensus,
    Labeling,
    MacdonaldEps,
    PairsEps,
    Sjpss,
    Converse,
    All,
}

impl Suite {
    /// Dependency order used by `all`.
    pub const ORDER: [Suite; 8] = [
        Suite::Counts,
        Suite::Orthogonality,
        Suite::CuspidalCensus,
        Suite::Labeling,
        Suite::MacdonaldEps,
        Suite::PairsEps,
        Suite::Sjpss,
        Suite::Converse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counts => "counts",
            Suite::Orthogonality => "orthogonality",
            Suite::CuspidalCensus => "cuspidal-census",
            Suite::Labeling => "labeling",
            Suite::MacdonaldEps => "macdonald-eps",
            Suite::PairsEps => "pairs-eps",
            Suite::Sjpss => "sjpss",
            Suite::Converse => "converse",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ORDER
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite {s:?}")))
    }
}

/// Shared families and the pinned ε₀ convention for one harness run.
pub struct Registry {
    cache: Option<PathBuf>,
    cap: u64,
    need: BTreeMap<u64, usize>,
    families: Mutex<BTreeMap<u64, Arc<GlFamily>>>,
    pinning: OnceLock<PinningRecord>,
    pub eval: Evaluation,
}

impl Registry {
    /// Plans one family per `q`, large enough for every table, pair and pinning case of `grid`.
    pub fn new(grid: &Grid, cache: Option<PathBuf>, seed: u64) -> Self {
        let mut need: BTreeMap<u64, usize> = [(2, 2), (3, 1), (4, 1), (5, 1)].into();
        for &(n, q) in &grid.tables {
            let e = need.entry(q).or_insert(1);
            *e = (*e).max(n);
        }
        for &(n1, _, q) in &grid.pairs {
            let e = need.entry(q).or_insert(1);
            *e = (*e).max(n1);
        }
        let cap = DEFAULT_GROUP_CAP;
        for (&q, n) in need.iter_mut() {
            while *n > 1 && gl_order(*n, q) > cap {
                *n -= 1;
            }
        }
        Registry {
            cache,
            cap,
            need,
            families: Mutex::new(BTreeMap::new()),
            pinning: OnceLock::new(),
            eval: Evaluation::with_seed(seed),
        }
    }

    /// `Err(CapExceeded)` when `GL_n(F_q)` is over the group cap.
    pub fn check_cap(&self, n: usize, q: u64) -> Result<()> {
        let order = gl_order(n, q);
        if order > self.cap {
            return Err(Error::CapExceeded { order, cap: self.cap });
        }
        Ok(())
    }

    /// The family for `q`, holding at least rank `n`.
    pub fn family(&self, q: u64, n: usize) -> Result<Arc<GlFamily>> {
        self.check_cap(n, q)?;
        let mut fams = self.families.lock().unwrap();
        if let Some(f) = fams.get(&q) {
            if f.max_n() >= n {
                return Ok(f.clone());
            }
        }
        let planned = self.need.get(&q).copied().unwrap_or(1);
        let f = Arc::new(GlFamily::new(q, n.max(planned), self.cache.as_deref())?);
        fams.insert(q, f.clone());
        Ok(f)
    }

    pub fn pinning(&self) -> Result<&PinningRecord> {
        if let Some(p) = self.pinning.get() {
            return Ok(p);
        }
        let rec = pin_conventions(|q, n| self.family(q, n))?;
        Ok(self.pinning.get_or_init(|| rec))
    }
}

/// Runs `suite` on `grid`. `all` runs the suites in dependency order and stops at the first failure.
pub fn run_suite(suite: Suite, grid: &Grid, reg: &Registry, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new(suite, grid, seed);
    match suite {
        Suite::All => {
            for s in Suite::ORDER {
                let r = run_suite(s, grid, reg, seed)?;
                let ok = r.pass;
                report.suites.push(r);
                if !ok {
                    report.notes.push(format!("stopped after failing suite {}", s.name()));
                    break;
                }
            }
            report.convention = reg.pinning.get().cloned();
        }
        Suite::Counts => suites::counts(grid, reg, &mut report)?,
        Suite::Orthogonality => suites::orthogonality(grid, reg, &mut report)?,
        Suite::CuspidalCensus => suites::census(grid, reg, &mut report)?,
        Suite::Labeling => suites::labeling(grid, reg, &mut report)?,
        Suite::MacdonaldEps => suites::macdonald_eps(grid, reg, &mut report)?,
        Suite::PairsEps => suites::pairs_eps(grid, reg, &mut report)?,
        Suite::Sjpss => suites::sjpss(grid, reg, &mut report)?,
        Suite::Converse => {
            for &(n, q) in &grid.tables {
                if !(2..=3).contains(&n) {
                    continue;
                }
                if let Err(e) = reg.check_cap(n, q) {
                    report.skipped.push(Skipped { case: format!("GL_{n}(F_{q})"), reason: e.to_string() });
                    continue;
                }
                let (cases, notes) = converse_suite(reg, n, q, &ConverseOptions::default())?;
                report.cases.extend(cases);
                report.notes.extend(notes);
            }
            report.convention = Some(reg.pinning()?.clone());
        }
    }
    Ok(report.finish(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_specs() {
        let g = Grid::parse("n<=4,q in 2,3").unwrap();
        assert_eq!(g.tables.len(), 8);
        assert!(g.pairs.contains(&(3, 1, 2)) && !g.pairs.contains(&(3, 2, 3)));
        let g = Grid::parse("n=2, q<=5; pairs=2x1").unwrap();
        assert_eq!(g.tables, vec![(2, 2), (2, 3), (2, 4), (2, 5)]);
        assert_eq!(g.pairs.len(), 4);
        assert_eq!(Grid::parse("standard").unwrap(), Grid::standard());
        assert!(Grid::parse("q in 2").is_err());
        assert!(Grid::parse("n<=2,q=6").is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ORDER {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("bogus").is_err());
    }
}
