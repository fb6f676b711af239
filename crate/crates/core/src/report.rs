//! Parameter reports for `NT_u(s)|F_t`, and a cached sweep over `s`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use log::{debug, info};
use serde::{Deserialize, Serialize};

use crate::curve::{CurveParams, CurveSpec};
use crate::distance::{
    exact_min_distance, geil_bound_variant, is_even_weight, DeltaVariant, DistanceConfig,
    DistanceMethod, DEFAULT_BUDGET,
};
use crate::ent::{build_code, dual_weight};
use crate::error::{Error, Result};
use crate::linear::LinearCode;
use crate::subfield::{subfield_embedding, subfield_subcode_oracle, trace_span_dim};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub curve: CurveParams,
    pub s: i64,
    pub t: u64,
    pub dim_supercode: usize,
    pub dual_weight_used: i64,
    pub trace_dim_of_dual: usize,
    pub dim_subfield: usize,
    pub geil_bound: u64,
    pub exact_distance: Option<usize>,
    pub distance_method: Option<DistanceMethod>,
    pub even_weight: Option<bool>,
    pub paper_claim_delta: Option<String>,
}

/// Cache key of a report.
pub type ReportKey = (u32, u32, u32, u64, i64, u64);

impl CodeReport {
    pub fn key(&self) -> ReportKey {
        let c = &self.curve;
        (c.p, c.l, c.r, c.u, self.s, self.t)
    }

    pub fn n(&self) -> u64 {
        self.curve.n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    /// Require the exact distance; running out of budget becomes an error.
    pub exact: bool,
    pub budget: u64,
    pub delta_variant: DeltaVariant,
    pub workers: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            exact: false,
            budget: DEFAULT_BUDGET,
            delta_variant: DeltaVariant::Footprint,
            workers: DistanceConfig::default().workers,
        }
    }
}

impl ReportOptions {
    pub fn distance_config(&self) -> DistanceConfig {
        DistanceConfig {
            budget: self.budget,
            workers: self.workers,
        }
    }
}

/// Published parameters for a few instances, compared against every report.
struct Claim {
    key: ReportKey,
    n: usize,
    k: usize,
    d: usize,
    dual_s: Option<i64>,
    trace_dim_of_dual: Option<usize>,
    supercode_k: Option<usize>,
    geil_bound: Option<u64>,
    frobenius_invariant: bool,
}

const CLAIMS: &[Claim] = &[
    Claim {
        key: (2, 1, 4, 3, 36, 2),
        n: 32,
        k: 25,
        d: 4,
        dual_s: Some(8),
        trace_dim_of_dual: Some(7),
        supercode_k: None,
        geil_bound: None,
        frobenius_invariant: false,
    },
    Claim {
        key: (2, 1, 4, 5, 65, 2),
        n: 48,
        k: 40,
        d: 4,
        dual_s: Some(10),
        trace_dim_of_dual: Some(8),
        supercode_k: Some(44),
        geil_bound: None,
        frobenius_invariant: false,
    },
    Claim {
        key: (2, 1, 4, 5, 60, 4),
        n: 48,
        k: 43,
        d: 3,
        dual_s: None,
        trace_dim_of_dual: None,
        supercode_k: Some(43),
        geil_bound: Some(3),
        frobenius_invariant: true,
    },
    Claim {
        key: (2, 1, 4, 5, 62, 4),
        n: 48,
        k: 44,
        d: 3,
        dual_s: None,
        trace_dim_of_dual: None,
        supercode_k: Some(44),
        geil_bound: Some(3),
        frobenius_invariant: true,
    },
];

/// Published `[n, k, d]` of the subfield subcode, if there is one for this key.
pub fn claimed_parameters(key: ReportKey) -> Option<(usize, usize, usize)> {
    CLAIMS
        .iter()
        .find(|c| c.key == key)
        .map(|c| (c.n, c.k, c.d))
}

fn claim_delta(r: &CodeReport, c: &CurveSpec) -> Result<Option<String>> {
    let Some(claim) = CLAIMS.iter().find(|c| c.key == r.key()) else {
        return Ok(None);
    };
    let mut diffs = Vec::new();
    let mut check = |what: &str, computed: String, claimed: String| {
        if computed != claimed {
            diffs.push(format!("{what}: computed {computed}, claimed {claimed}"));
        }
    };
    check("n", r.n().to_string(), claim.n.to_string());
    check(
        "dim_subfield",
        r.dim_subfield.to_string(),
        claim.k.to_string(),
    );
    if let Some(d) = r.exact_distance {
        check("exact_distance", d.to_string(), claim.d.to_string());
    }
    if let Some(s) = claim.dual_s {
        check(
            "dual_weight_used",
            r.dual_weight_used.to_string(),
            s.to_string(),
        );
    }
    if let Some(t) = claim.trace_dim_of_dual {
        check(
            "trace_dim_of_dual",
            r.trace_dim_of_dual.to_string(),
            t.to_string(),
        );
    }
    if let Some(k) = claim.supercode_k {
        check("dim_supercode", r.dim_supercode.to_string(), k.to_string());
    }
    if let Some(b) = claim.geil_bound {
        check("geil_bound", r.geil_bound.to_string(), b.to_string());
    }
    if claim.frobenius_invariant {
        let inv = crate::subfield::is_frobenius_invariant(c, r.s, r.t)?;
        if let Some(w) = inv.witness {
            let offending: Vec<String> = w.offending.iter().map(|m| m.to_string()).collect();
            diffs.push(format!(
                "frobenius_invariant: computed false (({})^{} reduces to {}, outside M(s): {}), claimed true",
                w.source,
                r.t,
                w.image,
                offending.join(", ")
            ));
        }
    }
    Ok((!diffs.is_empty()).then(|| diffs.join("; ")))
}

/// The subfield subcode `NT_u(s)|F_t` computed as the kernel of the expanded
/// parity checks.
pub fn subfield_subcode(c: &CurveSpec, s: i64, t: u64) -> Result<LinearCode> {
    let emb = subfield_embedding(c, t)?;
    let code = build_code(c, s)?.code;
    subfield_subcode_oracle(&code, &emb)
}

pub fn run_report(c: &CurveSpec, s: i64, t: u64, opts: &ReportOptions) -> Result<CodeReport> {
    if s < 0 {
        return Err(Error::invalid("s must be non-negative"));
    }
    let supercode = build_code(c, s)?;
    let dual_s = dual_weight(c, s);
    let trace_dim = trace_span_dim(c, dual_s, t)?;
    let n = c.n() as usize;
    let dim_subfield = n - trace_dim;

    let sub = subfield_subcode(c, s, t)?;
    if sub.k() != dim_subfield {
        return Err(Error::Inconsistent(format!(
            "subfield subcode of NT_{}({s}) over F_{t}: normal forms give {dim_subfield}, the kernel gives {}",
            c.u(),
            sub.k()
        )));
    }

    let geil = geil_bound_variant(c, s, opts.delta_variant)?;
    let (exact_distance, distance_method) = if sub.k() == 0 {
        (None, None)
    } else {
        match exact_min_distance(&sub, &opts.distance_config()) {
            Ok(d) => (d.exact, d.method),
            Err(Error::BudgetExceeded { needed, .. }) if !opts.exact => {
                debug!("exact distance skipped for s = {s}: needs {needed}");
                (None, None)
            }
            Err(e) => return Err(e),
        }
    };
    if let Some(d) = exact_distance {
        if (d as u64) < geil {
            return Err(Error::Inconsistent(format!(
                "order bound {geil} exceeds the exact distance {d} of the subcode"
            )));
        }
    }
    let even_weight = if t == 2 && sub.k() > 0 {
        Some(is_even_weight(&sub)?)
    } else {
        None
    };

    let mut report = CodeReport {
        curve: c.params(),
        s,
        t,
        dim_supercode: supercode.k(),
        dual_weight_used: dual_s,
        trace_dim_of_dual: trace_dim,
        dim_subfield,
        geil_bound: geil,
        exact_distance,
        distance_method,
        even_weight,
        paper_claim_delta: None,
    };
    report.paper_claim_delta = claim_delta(&report, c)?;
    Ok(report)
}

/// Reads a JSON-lines cache. Duplicate keys are an error.
pub fn read_cache(path: &Path) -> Result<BTreeMap<ReportKey, CodeReport>> {
    let mut out = BTreeMap::new();
    if !path.exists() {
        return Ok(out);
    }
    let file = fs::File::open(path)?;
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let report: CodeReport = serde_json::from_str(&line)
            .map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        let key = report.key();
        if out.insert(key, report).is_some() {
            return Err(Error::Parse(format!(
                "{}:{}: duplicate cache key {key:?}",
                path.display(),
                lineno + 1
            )));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOutcome {
    pub reports: Vec<CodeReport>,
    pub computed: usize,
    pub cached: usize,
}

/// Reports for every `s` in `s_from..=s_to`, reusing and extending the cache
/// at `cache`. With `force` everything in range is recomputed and the cache
/// file is rewritten.
pub fn sweep(
    c: &CurveSpec,
    s_from: i64,
    s_to: i64,
    t: u64,
    cache: &Path,
    force: bool,
    opts: &ReportOptions,
) -> Result<SweepOutcome> {
    let mut known = read_cache(cache)?;
    let mut outcome = SweepOutcome {
        reports: Vec::new(),
        computed: 0,
        cached: 0,
    };
    let mut fresh = Vec::new();
    for s in s_from..=s_to {
        let key = (c.p(), c.l(), c.r(), c.u(), s, t);
        match known.get(&key) {
            Some(r) if !force => {
                outcome.cached += 1;
                outcome.reports.push(r.clone());
            }
            _ => {
                let r = run_report(c, s, t, opts)?;
                info!("s = {s}: [{}, {}]", r.n(), r.dim_subfield);
                outcome.computed += 1;
                outcome.reports.push(r.clone());
                fresh.push(r);
            }
        }
    }
    if fresh.is_empty() {
        return Ok(outcome);
    }
    if force {
        for r in fresh {
            known.insert(r.key(), r);
        }
        let tmp = cache.with_extension("jsonl.tmp");
        {
            let mut out = fs::File::create(&tmp)?;
            for r in known.values() {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
            out.sync_all()?;
        }
        fs::rename(&tmp, cache)?;
    } else {
        let mut out = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(cache)?;
        for r in &fresh {
            writeln!(out, "{}", serde_json::to_string(r)?)?;
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nt(u: u64) -> CurveSpec {
        CurveSpec::new(2, 1, 4, u).unwrap()
    }

    #[test]
    fn binary_example_report() {
        let r = run_report(&nt(3), 36, 2, &ReportOptions::default()).unwrap();
        assert_eq!((r.n(), r.dim_subfield, r.exact_distance), (32, 25, Some(4)));
        assert_eq!(r.even_weight, Some(true));
        assert_eq!(r.dual_weight_used, 8);
        assert_eq!(r.paper_claim_delta, None);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<CodeReport>(&json).unwrap(), r);
    }

    #[test]
    fn full_space_report() {
        let r = run_report(&nt(3), 45, 2, &ReportOptions::default()).unwrap();
        assert_eq!(
            (r.dim_subfield, r.exact_distance, r.geil_bound),
            (32, Some(1), 1)
        );
        assert_eq!(r.even_weight, Some(false));
    }

    #[test]
    fn optional_fields_serialize_as_null() {
        let opts = ReportOptions {
            budget: 10,
            ..ReportOptions::default()
        };
        let r = run_report(&nt(3), 36, 2, &opts).unwrap();
        assert_eq!(r.exact_distance, None);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert!(v["exact_distance"].is_null());
        assert!(v["distance_method"].is_null());
        let forced = ReportOptions {
            exact: true,
            ..opts
        };
        assert!(matches!(
            run_report(&nt(3), 36, 2, &forced),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn negative_s_is_rejected() {
        assert!(run_report(&nt(3), -1, 2, &ReportOptions::default()).is_err());
    }

    #[test]
    fn claim_deltas_are_recorded() {
        let r = run_report(&nt(5), 65, 2, &ReportOptions::default()).unwrap();
        let delta = r.paper_claim_delta.unwrap();
        assert!(
            delta.contains("dim_subfield: computed 39, claimed 40"),
            "{delta}"
        );
        assert!(
            delta.contains("trace_dim_of_dual: computed 9, claimed 8"),
            "{delta}"
        );
    }

    #[test]
    fn sweep_uses_the_cache() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("cache.jsonl");
        let opts = ReportOptions::default();
        let c = nt(3);
        let first = sweep(&c, 0, 5, 2, &cache, false, &opts).unwrap();
        assert_eq!((first.computed, first.cached), (6, 0));
        let second = sweep(&c, 3, 8, 2, &cache, false, &opts).unwrap();
        assert_eq!((second.computed, second.cached), (3, 3));
        assert_eq!(read_cache(&cache).unwrap().len(), 9);
        let forced = sweep(&c, 0, 8, 2, &cache, true, &opts).unwrap();
        assert_eq!((forced.computed, forced.cached), (9, 0));
        assert_eq!(read_cache(&cache).unwrap().len(), 9);
        assert_eq!(forced.reports, second_and_first(&first, &second));
        let empty = sweep(&c, 5, 4, 2, &cache, false, &opts).unwrap();
        assert!(empty.reports.is_empty());
    }

    fn second_and_first(a: &SweepOutcome, b: &SweepOutcome) -> Vec<CodeReport> {
        let mut all: BTreeMap<i64, CodeReport> = BTreeMap::new();
        for r in a.reports.iter().chain(&b.reports) {
            all.insert(r.s, r.clone());
        }
        all.into_values().collect()
    }

    #[test]
    fn duplicate_cache_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("cache.jsonl");
        let r = run_report(&nt(3), 2, 2, &ReportOptions::default()).unwrap();
        let line = serde_json::to_string(&r).unwrap();
        fs::write(&cache, format!("{line}\n{line}\n")).unwrap();
        let err = read_cache(&cache).unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }
}
