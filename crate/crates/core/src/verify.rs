//! End-to-end verification runs and their JSON reports.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bar::{bar_tor, max_bar_degree, IdealProducts};
use crate::coeff::{AnyRing, DeltaSpec, Integers, PolyRing, RingKind};
use crate::diagram::enumerate_basis;
use crate::error::{Error, Result};
use crate::homology::DegreeHomology;
use crate::ideal::cup_module;
use crate::idempotent::{assert_idempotent_generator, certify, is_idempotent};
use crate::ideal::ideal_j;
use crate::linalg::LinAlg;
use crate::link::enumerate_link_states;
use crate::mv::{ext_from_resolution, summand_checks, tor_from_resolution, verify_acyclic, Resolution};
use crate::tl::tl_bar_tor;
use crate::with_exact_ring;

pub const SCHEMA_VERSION: u32 = 1;
/// Largest `n` accepted by a verification run.
pub const MAX_VERIFY_N: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n_values: Vec<usize>,
    pub rings: Vec<RingKind>,
    pub deltas: Vec<i64>,
    pub max_bar_degree: usize,
    pub output_dir: Option<PathBuf>,
    pub emit_matrices: bool,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_values: vec![1, 2, 3, 4],
            rings: vec![RingKind::Integers, RingKind::PrimeField(2)],
            deltas: vec![0, 1],
            max_bar_degree: 4,
            output_dir: None,
            emit_matrices: false,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() || self.rings.is_empty() || self.deltas.is_empty() {
            return Err(Error::Config("n_values, rings and deltas must be nonempty".into()));
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n == 0 || n > MAX_VERIFY_N) {
            return Err(Error::Config(format!("n = {n} is outside 1..={MAX_VERIFY_N}")));
        }
        if self.rings.contains(&RingKind::IntegerPolynomial) {
            return Err(Error::Config("homology needs a specialized ring; Z[delta] is checked symbolically".into()));
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<RunConfig> {
        let config: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub passed: bool,
    pub payload: Value,
    /// Timing lives here only, so payloads are reproducible.
    pub wall_time_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: RunConfig,
    pub records: Vec<CheckRecord>,
    pub notes: Vec<String>,
    pub all_passed: bool,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn find(&self, name: &str, params: &[(&str, &str)]) -> Option<&CheckRecord> {
        self.records
            .iter()
            .find(|r| r.name == name && params.iter().all(|(k, v)| r.params.get(*k).map(String::as_str) == Some(*v)))
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join("report.json");
        std::fs::write(&path, serde_json::to_string_pretty(self)?)?;
        Ok(path)
    }
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn timed(name: &str, params: BTreeMap<String, String>, f: impl FnOnce() -> Result<(bool, Value)>) -> CheckRecord {
    let start = Instant::now();
    let (passed, payload) = match f() {
        Ok(x) => x,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    CheckRecord { name: name.into(), params, passed, payload, wall_time_us: start.elapsed().as_micros() as u64 }
}

/// `M_{2n}` by the three-term recurrence.
pub fn motzkin(k: usize) -> u64 {
    let mut m = vec![1u64, 1];
    for i in 2..=k {
        m.push(((2 * i as u64 + 1) * m[i - 1] + (3 * i as u64 - 3) * m[i - 2]) / (i as u64 + 2));
    }
    m[k]
}

fn homology_json(h: &[DegreeHomology]) -> Value {
    serde_json::to_value(h).expect("plain data")
}

fn concentrated(h: &[DegreeHomology]) -> bool {
    h.iter().all(|d| if d.degree == 0 { d.is_ground_ring() } else { d.is_zero() })
}

fn per_n_records(n: usize, res: &Resolution, notes: &mut Vec<String>) -> Vec<CheckRecord> {
    let np = params(&[("n", n.to_string())]);
    let mut out = Vec::new();
    out.push(timed("basis_count", np.clone(), || {
        let count = enumerate_basis(n).len() as u64;
        Ok((count == motzkin(2 * n), json!({ "count": count, "motzkin": motzkin(2 * n) })))
    }));
    out.push(timed("cover", np.clone(), || {
        let labels: Vec<&str> = res.cover.ideals.iter().map(|j| j.label()).collect();
        let union_ok = res.cover.union().len() == res.basis.len() - 1;
        Ok((
            union_ok && res.cover.width() == (1 << n) - 1 + (n - 1),
            json!({ "width": res.cover.width(), "ideals": labels, "certified_summands": res.cover.summands.len() }),
        ))
    }));
    out.push(timed("idempotents", np.clone(), || {
        let b = res.basis.diagrams();
        let mut count = 0;
        let mut ok = true;
        for p in enumerate_link_states(n).into_iter().filter(|p| p.has_defect()) {
            let cert = certify(b, &p)?;
            let j = ideal_j(b, &p);
            ok &= cert.conditions.iter().all(|&c| c) && cert.unit_verified && is_idempotent(&cert.e);
            ok &= assert_idempotent_generator(&j, &cert.e).is_ok();
            count += 1;
        }
        Ok((ok, json!({ "link_states_with_defects": count })))
    }));
    out.push(timed("d_squared", np.clone(), || {
        res.complex.chain_complex(&PolyRing).check_d_squared()?;
        Ok((true, json!({ "ring": "Z[delta]" })))
    }));
    let shape_notes = res.complex.shape_notes(&res.cover);
    notes.extend(shape_notes.iter().cloned());
    out.push(timed("mv_shape", np, || {
        let top = res.complex.top_degree();
        let ranks: BTreeMap<String, usize> = res.complex.ranks().iter().map(|(p, r)| (p.to_string(), *r)).collect();
        let ok = if n.is_multiple_of(2) {
            let cup = cup_module(res.basis.diagrams(), n)?;
            top == (n / 2) as i64 && res.cover.summands_of_size(n / 2).any(|s| s.ideal.same_members(&cup))
        } else if n <= 3 {
            top == 1
        } else {
            !shape_notes.is_empty()
        };
        Ok((ok, json!({ "ranks": ranks, "top_degree": top, "odd_shape_flag": !shape_notes.is_empty() })))
    }));
    out
}

fn ring_records<R: LinAlg>(n: usize, res: &Resolution, ring: &R, delta: i64, max_bar: usize) -> Vec<CheckRecord> {
    let kind = ring.descriptor();
    let p = params(&[("n", n.to_string()), ("ring", kind.to_string()), ("delta", delta.to_string())]);
    let mut out = Vec::new();
    out.push(timed("acyclic", p.clone(), || {
        let h = verify_acyclic(&res.complex, ring)?;
        Ok((h.is_zero(), homology_json(&h.degrees)))
    }));
    let mut mv_tor = None;
    out.push(timed("tor", p.clone(), || {
        let t = tor_from_resolution(&res.complex, &res.action, ring)?;
        mv_tor = Some(t.clone());
        Ok((concentrated(&t), homology_json(&t)))
    }));
    out.push(timed("ext", p.clone(), || {
        let e = ext_from_resolution(&res.complex, &res.action, ring)?;
        Ok((concentrated(&e), homology_json(&e)))
    }));
    out.push(timed("summand_functors", p.clone(), || {
        let checks = summand_checks(&res.cover, &res.complex, &res.action, ring)?;
        let bad: Vec<&str> = checks.iter().filter(|c| !c.consistent()).map(|c| c.label.as_str()).collect();
        Ok((bad.is_empty(), json!({ "summands": checks.len(), "inconsistent": bad })))
    }));
    let dim = res.basis.len() - 1;
    let bar_degree = max_bar.min(max_bar_degree(dim));
    if bar_degree >= 1 && kind != RingKind::Integers {
        out.push(timed("bar_agreement", p.clone(), || {
            let products = IdealProducts::dilute(n)?;
            let bar = bar_tor(&products, ring, bar_degree)?;
            let mv = mv_tor.clone().unwrap_or_default();
            let agree = bar.iter().all(|b| match mv.iter().find(|m| m.degree == b.degree) {
                Some(m) => m == b,
                None => b.is_zero(),
            });
            Ok((agree, json!({ "max_degree": bar_degree, "bar": homology_json(&bar) })))
        }));
    }
    if n == 2 && kind != RingKind::Integers {
        let tl_degree = max_bar.min(4);
        out.push(timed("tl_contrast", p, || {
            let tl = tl_bar_tor(2, ring, tl_degree)?;
            let dtl = bar_tor(&IdealProducts::dilute(2)?, ring, tl_degree)?;
            let dtl_vanishes = concentrated(&dtl);
            let tl_nonzero = tl[1..].iter().all(|h| !h.is_zero());
            let ok = dtl_vanishes && (delta != 0 || tl_nonzero);
            Ok((ok, json!({ "max_degree": tl_degree, "tl": homology_json(&tl), "dtl": homology_json(&dtl) })))
        }));
    }
    out
}

fn record_key(r: &CheckRecord) -> (String, Vec<(String, String)>) {
    let mut ps: Vec<(String, String)> = r.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    ps.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| match (a.1.parse::<i64>(), b.1.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.1.cmp(&b.1),
    }));
    (r.name.clone(), ps)
}

/// Every check of the run, one record per check and parameter tuple.
pub fn run_verify_theorem(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let mut records = Vec::new();
    let mut notes = Vec::new();
    let mut ns = config.n_values.clone();
    ns.sort_unstable();
    ns.dedup();
    for &n in &ns {
        let res = match Resolution::new(n) {
            Ok(r) => r,
            Err(e) => {
                records.push(timed("cover", params(&[("n", n.to_string())]), || Err(e)));
                continue;
            }
        };
        records.extend(per_n_records(n, &res, &mut notes));
        if config.emit_matrices {
            if let Some(dir) = &config.output_dir {
                let dump = res.complex.chain_complex(&Integers::new(0)).to_json();
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("mv_matrices_n{n}.json")), serde_json::to_string(&dump)?)?;
            }
        }
        let tuples: Vec<(RingKind, i64)> =
            config.rings.iter().flat_map(|k| config.deltas.iter().map(move |&d| (k.clone(), d))).collect();
        let batches: Vec<Vec<CheckRecord>> = tuples
            .par_iter()
            .map(|(kind, delta)| {
                let any = match AnyRing::new(kind, &DeltaSpec::Value(*delta)) {
                    Ok(a) => a,
                    Err(e) => {
                        let p = params(&[("n", n.to_string()), ("ring", kind.to_string()), ("delta", delta.to_string())]);
                        return vec![timed("ring", p, || Err(e))];
                    }
                };
                with_exact_ring!(&any, r => ring_records(n, &res, r, *delta, config.max_bar_degree), poly => Vec::new())
            })
            .collect();
        records.extend(batches.into_iter().flatten());
    }
    records.sort_by_key(record_key);
    let all_passed = records.iter().all(|r| r.passed);
    let report = Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        records,
        notes,
        all_passed,
    };
    if let Some(dir) = &config.output_dir {
        report.write(dir)?;
    }
    Ok(report)
}
