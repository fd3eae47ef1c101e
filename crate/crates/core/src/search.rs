//! Exhaustive drivers over parameter spaces, sharded over a rayon pool with a
//! JSON-lines checkpoint and deterministic reports.
//!
//! The space of each kind is a range of integer units; shards are contiguous
//! unit ranges and every shard yields a `Tally`. Tallies merge by summing
//! counters and concatenating keyed records, which are sorted at the end, so
//! the report does not depend on how units were split or resumed.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::{
    classify, sh2_value, sheekey_condition, sheekey_condition_via_lambda, Classification, Tag,
};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Fq5Elem};
use crate::linpoly::QPoly;
use crate::linset::LinSetParams;
use crate::report::{FieldInfo, Header, TOOL, VERSION};
use crate::varieties::{eq5_solvable, lem1_witness_cached, Eq5Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchKind {
    Lem1,
    Prop2,
    Full,
    Restricted,
    Probe,
}

impl SearchKind {
    pub fn name(self) -> &'static str {
        match self {
            SearchKind::Lem1 => "lem1",
            SearchKind::Prop2 => "prop2",
            SearchKind::Full => "full",
            SearchKind::Restricted => "restricted",
            SearchKind::Probe => "probe",
        }
    }

    /// Largest q run without the long-run override.
    pub fn default_q_cap(self) -> u32 {
        match self {
            SearchKind::Lem1 | SearchKind::Prop2 => 17,
            SearchKind::Full => 4,
            SearchKind::Restricted | SearchKind::Probe => 11,
        }
    }

    /// Largest q run at all.
    pub fn hard_q_cap(self) -> u32 {
        match self {
            SearchKind::Lem1 | SearchKind::Prop2 => 27,
            SearchKind::Full => 5,
            SearchKind::Restricted | SearchKind::Probe => 27,
        }
    }

    fn uses_reduction(self) -> bool {
        matches!(self, SearchKind::Full | SearchKind::Restricted | SearchKind::Probe)
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub kind: SearchKind,
    pub seed: u64,
    pub workers: usize,
    pub shards: usize,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    pub long_run: bool,
    /// Use Frobenius orbits when the preflight allows it.
    pub reduce: bool,
    /// Stop after writing this many shard records (simulated interruption).
    pub stop_after_shards: Option<usize>,
}

impl SearchConfig {
    pub fn new(kind: SearchKind) -> SearchConfig {
        SearchConfig {
            kind,
            seed: 0,
            workers: 1,
            shards: 64,
            checkpoint: None,
            resume: false,
            long_run: false,
            reduce: true,
            stop_after_shards: None,
        }
    }
}

/// A JSON record tagged with its position in the parameter space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Keyed {
    pub k: [u64; 2],
    pub v: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Tally {
    pub counters: BTreeMap<String, u64>,
    pub hits: Vec<Keyed>,
    pub witnesses: Vec<Keyed>,
    pub alarms: Vec<Keyed>,
}

impl Tally {
    fn bump(&mut self, name: &str, by: u64) {
        *self.counters.entry(name.to_string()).or_insert(0) += by;
    }

    pub fn merge(&mut self, other: Tally) {
        for (k, v) in other.counters {
            *self.counters.entry(k).or_insert(0) += v;
        }
        self.hits.extend(other.hits);
        self.witnesses.extend(other.witnesses);
        self.alarms.extend(other.alarms);
    }

    fn sort(&mut self) {
        for list in [&mut self.hits, &mut self.witnesses, &mut self.alarms] {
            list.sort_by(|a, b| a.k.cmp(&b.k).then_with(|| a.v.to_string().cmp(&b.v.to_string())));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Preflight {
    pub pairs: u64,
    pub mismatches: u64,
}

/// Everything that must be reproducible.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBody {
    pub kind: SearchKind,
    pub units: u64,
    pub counters: BTreeMap<String, u64>,
    pub hits: Vec<Value>,
    pub witnesses: Vec<Value>,
    pub alarms: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub preflight: Option<Preflight>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Session {
    pub session: u64,
    pub shards: u64,
}

/// Timing and provenance, excluded from determinism comparisons.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub wall_ms: u64,
    pub shards: u64,
    pub workers: u64,
    pub reduction: bool,
    pub resumed: bool,
    pub lineage: Vec<Session>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub header: Header,
    pub body: SearchBody,
    pub run: RunInfo,
}

impl SearchReport {
    /// Header and body only.
    pub fn deterministic_json(&self) -> String {
        serde_json::to_string(&json!({"header": self.header, "body": self.body})).expect("serializable")
    }

    /// True when something contradicts the expected outcome.
    pub fn has_findings(&self) -> bool {
        !self.body.hits.is_empty() || !self.body.alarms.is_empty()
    }
}

/// Result of `run_search`: a finished report or an interruption after the
/// requested number of shards.
#[derive(Debug)]
pub enum Outcome {
    Done(Box<SearchReport>),
    Interrupted { shards_written: usize },
}

/// Work estimate in elementary classifications or scans.
pub fn cost_estimate(kind: SearchKind, q: u64) -> u64 {
    let big = q.pow(5);
    match kind {
        SearchKind::Lem1 => (q - 1) * big,
        SearchKind::Prop2 => big,
        SearchKind::Full => big * big / 5,
        SearchKind::Restricted | SearchKind::Probe => big * q.saturating_sub(2) / 5,
    }
}

pub fn check_budget(kind: SearchKind, q: u32, long_run: bool) -> Result<()> {
    let cap = if long_run { kind.hard_q_cap() } else { kind.default_q_cap() };
    if q > cap {
        let hint = if !long_run && q <= kind.hard_q_cap() { "; pass --long-run to override" } else { "" };
        return Err(Error::Budget(format!(
            "{} search at q = {q} needs about {} unit operations (limit q <= {cap}){hint}",
            kind.name(),
            cost_estimate(kind, q as u64)
        )));
    }
    Ok(())
}

/// Unit index of an element: 0 for zero, k + 1 for g^k.
fn elem_index(x: Fq5Elem) -> u64 {
    x.log().map_or(0, |l| l as u64 + 1)
}

fn index_elem(ctx: &FieldCtx, i: u64) -> Fq5Elem {
    if i == 0 {
        ctx.zero()
    } else {
        ctx.g_pow(i - 1)
    }
}

fn pair_json(ctx: &FieldCtx, pr: &LinSetParams, cl: &Classification) -> Value {
    json!({
        "alpha": ctx.to_int(pr.alpha),
        "beta": ctx.to_int(pr.beta),
        "classification": cl.record(ctx),
    })
}

/// Precomputed per-run state shared by all shards.
struct Runner<'a> {
    ctx: &'a FieldCtx,
    kind: SearchKind,
    reduce: bool,
    eq5: Option<Eq5Table>,
    lambdas: Vec<Fq5Elem>,
}

impl<'a> Runner<'a> {
    fn units(&self) -> u64 {
        let big = self.ctx.order() as u64;
        match self.kind {
            SearchKind::Lem1 => self.ctx.q() as u64 - 1,
            SearchKind::Prop2 | SearchKind::Restricted | SearchKind::Probe => big - 1,
            SearchKind::Full => big,
        }
    }

    fn run_range(&self, start: u64, end: u64) -> Tally {
        let mut t = Tally::default();
        for u in start..end {
            match self.kind {
                SearchKind::Lem1 => self.unit_lem1(u, &mut t),
                SearchKind::Prop2 => self.unit_prop2(u, &mut t),
                SearchKind::Full => self.unit_full(u, &mut t),
                SearchKind::Restricted | SearchKind::Probe => self.unit_restricted(u, &mut t),
            }
        }
        t
    }

    fn unit_lem1(&self, u: u64, t: &mut Tally) {
        let ctx = self.ctx;
        let a = ctx.subfield()[u as usize + 1];
        match eq5_solvable(ctx, a).expect("a in F_q*") {
            Some(x) => {
                t.bump("pass", 1);
                t.witnesses.push(Keyed { k: [u, 0], v: json!({"a": ctx.to_int(a), "x": ctx.to_int(x)}) });
            }
            None => {
                t.bump("fail", 1);
                t.alarms.push(Keyed { k: [u, 0], v: json!({"a": ctx.to_int(a), "reason": "eq5 has no solution"}) });
            }
        }
    }

    fn unit_prop2(&self, k: u64, t: &mut Tally) {
        let ctx = self.ctx;
        let b = ctx.g_pow(k);
        let table = self.eq5.as_ref().expect("eq5 table built for prop2");
        let ok = match lem1_witness_cached(ctx, table, b) {
            Some(w) => w.satisfies_eq1(ctx, b) && w.kills_binomial(ctx, b),
            None => false,
        };
        if ok {
            t.bump("pass", 1);
        } else {
            t.bump("fail", 1);
            t.alarms.push(Keyed { k: [k, 0], v: json!({"b": ctx.to_int(b), "reason": "no witness"}) });
        }
        if ctx.q() <= 3 {
            // some m gives m x + x^q + b x^{q^2} a two-dimensional kernel
            let brute = ctx.elements().any(|m| {
                QPoly::new([m, Fq5Elem::ONE, b, Fq5Elem::ZERO, Fq5Elem::ZERO]).kernel_dim(ctx) >= 2
            });
            if brute == ok {
                t.bump("oracle_agree", 1);
            } else {
                t.alarms.push(Keyed { k: [k, 1], v: json!({"b": ctx.to_int(b), "reason": "routes disagree"}) });
            }
        }
    }

    /// Frobenius images of a pair as unit indices; the pair is a representative
    /// when it is the smallest of them.
    fn pair_orbit(&self, pr: &LinSetParams) -> Vec<[u64; 2]> {
        let mut v: Vec<[u64; 2]> = (0..5)
            .map(|i| [elem_index(self.ctx.frob(pr.alpha, i)), elem_index(self.ctx.frob(pr.beta, i))])
            .collect();
        v.sort();
        v.dedup();
        v
    }

    fn unit_full(&self, ua: u64, t: &mut Tally) {
        let ctx = self.ctx;
        let alpha = index_elem(ctx, ua);
        for ub in 0..ctx.order() as u64 {
            let pr = LinSetParams::new(alpha, index_elem(ctx, ub));
            let (weight, orbit) = if self.reduce {
                let orbit = self.pair_orbit(&pr);
                if orbit[0] != [ua, ub] {
                    continue;
                }
                (orbit.len() as u64, orbit)
            } else {
                (1, vec![[ua, ub]])
            };
            let cl = classify(ctx, &pr);
            t.bump("pairs", weight);
            t.bump(cl.tag.name(), weight);
            if cl.tag.is_max_scattered() && !pr.beta.is_zero() {
                let lambda = cl.lambda.expect("beta != 0");
                let reason = if !ctx.in_subfield(lambda) {
                    Some("scattered with lambda outside F_q")
                } else if !pr.alpha.is_zero()
                    && cl.tag != Tag::Pseudoregulus
                    && (lambda == ctx.one() || !sh2_value(ctx, lambda, cl.n_beta).is_zero())
                {
                    Some("scattered with lambda in F_q but sh2 failing")
                } else {
                    None
                };
                if let Some(reason) = reason {
                    self.expand(&orbit, t, reason, false);
                }
            }
            if cl.tag == Tag::NewCandidate {
                self.expand(&orbit, t, "", true);
            }
        }
    }

    fn unit_restricted(&self, k: u64, t: &mut Tally) {
        let ctx = self.ctx;
        let q = ctx.q() as u64;
        let group = ctx.order() as u64 - 1;
        let weight = if self.reduce {
            let mut imgs: Vec<u64> = (0..5u32).map(|i| k * q.pow(i) % group).collect();
            imgs.sort();
            imgs.dedup();
            if imgs[0] != k {
                return;
            }
            imgs.len() as u64
        } else {
            1
        };
        let beta = ctx.g_pow(k);
        let n_beta = ctx.norm(beta);
        let bq1 = ctx.pow(beta, q + 1);
        for &lambda in &self.lambdas {
            let alpha = ctx.frob(ctx.mul(lambda, bq1), 4);
            let pr = LinSetParams::new(alpha, beta);
            let sh2 = sh2_value(ctx, lambda, n_beta).is_zero();
            if self.kind == SearchKind::Probe && sh2 {
                t.bump("skipped_sh2", weight);
                continue;
            }
            let cl = classify(ctx, &pr);
            t.bump("pairs", weight);
            t.bump(cl.tag.name(), weight);
            let by_formula = sheekey_condition(ctx, &pr).expect("alpha beta != 0, lambda != 1");
            let by_lambda = sheekey_condition_via_lambda(ctx, &pr).expect("same precondition");
            if by_formula != by_lambda || by_formula != sh2 {
                self.expand_restricted(k, lambda, t, "Sheekey condition routes disagree", false);
            }
            if cl.tag == Tag::Sheekey && !sh2 {
                self.expand_restricted(k, lambda, t, "Sheekey tag without sh2", false);
            }
            if cl.tag == Tag::NewCandidate {
                self.expand_restricted(k, lambda, t, "", true);
            }
        }
    }

    /// Records every pair of an orbit, each with its own classification.
    fn expand(&self, orbit: &[[u64; 2]], t: &mut Tally, reason: &str, hit: bool) {
        let ctx = self.ctx;
        for &[ua, ub] in orbit {
            let pr = LinSetParams::new(index_elem(ctx, ua), index_elem(ctx, ub));
            let mut v = pair_json(ctx, &pr, &classify(ctx, &pr));
            let rec = if hit {
                Keyed { k: [ua, ub], v }
            } else {
                v["reason"] = json!(reason);
                Keyed { k: [ua, ub], v }
            };
            if hit {
                t.hits.push(rec);
            } else {
                t.alarms.push(rec);
            }
        }
    }

    fn expand_restricted(&self, k: u64, lambda: Fq5Elem, t: &mut Tally, reason: &str, hit: bool) {
        let ctx = self.ctx;
        let q = ctx.q() as u64;
        let group = ctx.order() as u64 - 1;
        let mut ks: Vec<u64> = if self.reduce {
            (0..5u32).map(|i| k * q.pow(i) % group).collect()
        } else {
            vec![k]
        };
        ks.sort();
        ks.dedup();
        for kk in ks {
            let beta = ctx.g_pow(kk);
            let alpha = ctx.frob(ctx.mul(lambda, ctx.pow(beta, q + 1)), 4);
            let pr = LinSetParams::new(alpha, beta);
            let mut v = pair_json(ctx, &pr, &classify(ctx, &pr));
            let key = [kk, ctx.to_int(lambda) as u64];
            if hit {
                t.hits.push(Keyed { k: key, v });
            } else {
                v["reason"] = json!(reason);
                t.alarms.push(Keyed { k: key, v });
            }
        }
    }
}

/// Checks tag(alpha, beta) = tag(alpha^q, beta^q) on random pairs of the
/// space the kind enumerates.
pub fn frobenius_preflight(ctx: &FieldCtx, kind: SearchKind, pairs: u64, seed: u64) -> Preflight {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let order = ctx.order() as u64;
    let q = ctx.q() as u64;
    let lambdas: Vec<Fq5Elem> = ctx.subfield().into_iter().skip(2).collect();
    let mut mismatches = 0;
    let mut done = 0;
    for _ in 0..pairs {
        let pr = match kind {
            SearchKind::Restricted | SearchKind::Probe => {
                if lambdas.is_empty() {
                    break;
                }
                let beta = ctx.g_pow(rng.gen_range(0..order - 1));
                let lambda = lambdas[rng.gen_range(0..lambdas.len())];
                LinSetParams::new(ctx.frob(ctx.mul(lambda, ctx.pow(beta, q + 1)), 4), beta)
            }
            _ => LinSetParams::new(
                index_elem(ctx, rng.gen_range(0..order)),
                index_elem(ctx, rng.gen_range(0..order)),
            ),
        };
        done += 1;
        if classify(ctx, &pr).tag != classify(ctx, &pr.frobenius(ctx)).tag {
            mismatches += 1;
        }
    }
    Preflight { pairs: done, mismatches }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum CheckpointLine {
    Header {
        tool: String,
        version: String,
        kind: SearchKind,
        seed: u64,
        field: FieldInfo,
        units: u64,
    },
    Shard {
        session: u64,
        start: u64,
        end: u64,
        tally: Tally,
    },
}

struct ShardRecord {
    session: u64,
    start: u64,
    end: u64,
    tally: Tally,
}

/// Decodes one checkpoint line; exposed for fuzzing.
pub fn decode_checkpoint_line(line: &str) -> Result<()> {
    serde_json::from_str::<CheckpointLine>(line)
        .map(|_| ())
        .map_err(|e| Error::Checkpoint(e.to_string()))
}

fn checkpoint_header(ctx: &FieldCtx, cfg: &SearchConfig, units: u64) -> CheckpointLine {
    CheckpointLine::Header {
        tool: TOOL.into(),
        version: VERSION.into(),
        kind: cfg.kind,
        seed: cfg.seed,
        field: FieldInfo::of(ctx),
        units,
    }
}

/// Shard records and the byte length of the intact prefix of the file.
fn read_checkpoint(path: &Path, expected: &CheckpointLine) -> Result<(Vec<ShardRecord>, u64)> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.split_inclusive('\n');
    let first = lines.next().ok_or_else(|| Error::Checkpoint("empty checkpoint".into()))?;
    let header: CheckpointLine =
        serde_json::from_str(first).map_err(|e| Error::Checkpoint(format!("bad header: {e}")))?;
    if serde_json::to_value(&header)? != serde_json::to_value(expected)? {
        return Err(Error::Checkpoint("checkpoint header does not match this run".into()));
    }
    let mut out = Vec::new();
    let mut good = first.len();
    let rest: Vec<&str> = lines.collect();
    for (i, line) in rest.iter().enumerate() {
        let parsed = serde_json::from_str::<CheckpointLine>(line);
        match parsed {
            Ok(CheckpointLine::Shard { session, start, end, tally }) if line.ends_with('\n') => {
                out.push(ShardRecord { session, start, end, tally })
            }
            Ok(CheckpointLine::Header { .. }) => {
                return Err(Error::Checkpoint(format!("second header at line {}", i + 2)))
            }
            // a torn final line from an interrupted write is dropped
            _ if i + 1 == rest.len() => break,
            Ok(_) => return Err(Error::Checkpoint(format!("line {} is unterminated", i + 2))),
            Err(e) => return Err(Error::Checkpoint(format!("line {}: {e}", i + 2))),
        }
        good += line.len();
    }
    Ok((out, good as u64))
}

/// Splits the units not covered by `done` into shards of about `size` units.
fn plan_shards(units: u64, done: &[(u64, u64)], size: u64) -> Result<Vec<(u64, u64)>> {
    let mut covered = done.to_vec();
    covered.sort();
    let mut out = Vec::new();
    let mut pos = 0;
    let push_gap = |a: u64, b: u64, out: &mut Vec<(u64, u64)>| {
        let mut s = a;
        while s < b {
            let e = (s + size).min(b);
            out.push((s, e));
            s = e;
        }
    };
    for &(s, e) in &covered {
        if s < pos || e > units || s >= e {
            return Err(Error::Checkpoint(format!("shard [{s}, {e}) overlaps or is out of range")));
        }
        push_gap(pos, s, &mut out);
        pos = e;
    }
    push_gap(pos, units, &mut out);
    Ok(out)
}

pub fn run_search(ctx: &FieldCtx, cfg: &SearchConfig) -> Result<Outcome> {
    check_budget(cfg.kind, ctx.q(), cfg.long_run)?;
    let started = Instant::now();
    let preflight = cfg
        .kind
        .uses_reduction()
        .then(|| frobenius_preflight(ctx, cfg.kind, 1000, cfg.seed));
    let reduce = cfg.reduce && preflight.as_ref().is_some_and(|p| p.mismatches == 0);
    let runner = Runner {
        ctx,
        kind: cfg.kind,
        reduce,
        eq5: (cfg.kind == SearchKind::Prop2).then(|| Eq5Table::new(ctx)),
        lambdas: ctx.subfield().into_iter().skip(2).collect(),
    };
    let units = runner.units();
    let header_line = checkpoint_header(ctx, cfg, units);

    let mut records = Vec::new();
    let mut session = 0;
    if cfg.resume {
        let path = cfg
            .checkpoint
            .as_ref()
            .ok_or_else(|| Error::Precondition("--resume needs --checkpoint".into()))?;
        let (recs, intact) = read_checkpoint(path, &header_line)?;
        OpenOptions::new().write(true).open(path)?.set_len(intact)?;
        records = recs;
        session = records.iter().map(|r| r.session + 1).max().unwrap_or(0);
    }
    let mut writer = match &cfg.checkpoint {
        Some(path) if cfg.resume => Some(OpenOptions::new().append(true).open(path)?),
        Some(path) => {
            let mut f = File::create(path)?;
            writeln!(f, "{}", serde_json::to_string(&header_line)?)?;
            Some(f)
        }
        None => None,
    };

    let size = units.div_ceil(cfg.shards.max(1) as u64).max(1);
    let done: Vec<(u64, u64)> = records.iter().map(|r| (r.start, r.end)).collect();
    let plan = plan_shards(units, &done, size)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<(u64, u64, Tally)>();
    let mut written = 0usize;
    let mut interrupted = false;
    let mut new_records = Vec::new();
    std::thread::scope(|scope| -> Result<()> {
        let runner = &runner;
        let plan = &plan;
        let stop = &stop;
        let pool = &pool;
        scope.spawn(move || {
            pool.install(|| {
                use rayon::prelude::*;
                plan.par_iter().for_each_with(tx, |tx, &(s, e)| {
                    if stop.load(Ordering::Relaxed) {
                        return;
                    }
                    let tally = runner.run_range(s, e);
                    let _ = tx.send((s, e, tally));
                });
            });
        });
        for (s, e, tally) in rx {
            if interrupted {
                continue;
            }
            if let Some(f) = writer.as_mut() {
                let line = CheckpointLine::Shard { session, start: s, end: e, tally };
                writeln!(f, "{}", serde_json::to_string(&line)?)?;
                f.flush()?;
                let CheckpointLine::Shard { tally, .. } = line else { unreachable!() };
                new_records.push(ShardRecord { session, start: s, end: e, tally });
            } else {
                new_records.push(ShardRecord { session, start: s, end: e, tally });
            }
            written += 1;
            if cfg.stop_after_shards.is_some_and(|n| written >= n) && written < plan.len() {
                interrupted = true;
                stop.store(true, Ordering::Relaxed);
            }
        }
        Ok(())
    })?;
    if interrupted {
        return Ok(Outcome::Interrupted { shards_written: written });
    }
    records.extend(new_records);

    let mut lineage: BTreeMap<u64, u64> = BTreeMap::new();
    let mut total = Tally::default();
    for r in records {
        *lineage.entry(r.session).or_insert(0) += 1;
        total.merge(r.tally);
    }
    if let Some(pf) = &preflight {
        if pf.mismatches > 0 {
            total.alarms.push(Keyed {
                k: [u64::MAX, 0],
                v: json!({"reason": "Frobenius preflight mismatch", "mismatches": pf.mismatches}),
            });
        }
    }
    if cfg.kind == SearchKind::Prop2 {
        if let Some(t) = &runner.eq5 {
            for (i, &a) in ctx.subfield().iter().enumerate().skip(1) {
                if let Some(x) = t.get(ctx, a) {
                    total.witnesses.push(Keyed {
                        k: [i as u64, 0],
                        v: json!({"a": ctx.to_int(a), "x": ctx.to_int(x)}),
                    });
                }
            }
        }
    }
    total.sort();
    let shards_total = lineage.values().sum();
    let body = SearchBody {
        kind: cfg.kind,
        units,
        counters: total.counters,
        hits: total.hits.into_iter().map(|k| k.v).collect(),
        witnesses: total.witnesses.into_iter().map(|k| k.v).collect(),
        alarms: total.alarms.into_iter().map(|k| k.v).collect(),
        preflight,
    };
    Ok(Outcome::Done(Box::new(SearchReport {
        header: Header::new(cfg.seed, vec![FieldInfo::of(ctx)]),
        body,
        run: RunInfo {
            wall_ms: started.elapsed().as_millis() as u64,
            shards: shards_total,
            workers: cfg.workers as u64,
            reduction: reduce,
            resumed: cfg.resume,
            lineage: lineage.into_iter().map(|(session, shards)| Session { session, shards }).collect(),
        },
    })))
}

/// Runs to completion, treating an interruption as an error.
pub fn run_to_end(ctx: &FieldCtx, cfg: &SearchConfig) -> Result<SearchReport> {
    match run_search(ctx, cfg)? {
        Outcome::Done(r) => Ok(*r),
        Outcome::Interrupted { shards_written } => {
            Err(Error::Internal(format!("interrupted after {shards_written} shards")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(p: u32, kind: SearchKind, f: impl FnOnce(&mut SearchConfig)) -> SearchReport {
        let ctx = FieldCtx::new(p, 1).unwrap();
        let mut cfg = SearchConfig::new(kind);
        f(&mut cfg);
        run_to_end(&ctx, &cfg).unwrap()
    }

    #[test]
    fn lem1_small() {
        let r = run(2, SearchKind::Lem1, |_| {});
        assert_eq!(r.body.counters["pass"], 1);
        let r = FieldCtx::new(2, 2).and_then(|c| run_to_end(&c, &SearchConfig::new(SearchKind::Lem1))).unwrap();
        assert_eq!(r.body.counters["pass"], 3);
        assert!(!r.has_findings());
    }

    #[test]
    fn prop2_q2_with_oracle() {
        let r = run(2, SearchKind::Prop2, |_| {});
        assert_eq!(r.body.counters["pass"], 31);
        assert_eq!(r.body.counters["oracle_agree"], 31);
        assert!(!r.has_findings());
    }

    #[test]
    fn full_q2_counts_and_reduction() {
        let a = run(2, SearchKind::Full, |_| {});
        let b = run(2, SearchKind::Full, |c| {
            c.reduce = false;
            c.shards = 7;
        });
        assert_eq!(a.body.counters["pairs"], 1024);
        assert!(a.run.reduction && !b.run.reduction);
        assert_eq!(a.deterministic_json(), b.deterministic_json());
        assert_eq!(a.body.counters.get("NewCandidate"), None);
        assert!(!a.has_findings());
    }

    #[test]
    fn restricted_q3_reduction_matches() {
        let a = run(3, SearchKind::Restricted, |c| c.shards = 5);
        let b = run(3, SearchKind::Restricted, |c| {
            c.reduce = false;
            c.shards = 3;
        });
        assert_eq!(a.deterministic_json(), b.deterministic_json());
        assert_eq!(a.body.counters["pairs"], 242);
        assert!(!a.has_findings());
    }

    #[test]
    fn shard_planning() {
        assert_eq!(plan_shards(10, &[], 4).unwrap(), vec![(0, 4), (4, 8), (8, 10)]);
        assert_eq!(plan_shards(10, &[(2, 5)], 4).unwrap(), vec![(0, 2), (5, 9), (9, 10)]);
        assert!(plan_shards(10, &[(2, 5), (4, 6)], 4).is_err());
        assert!(plan_shards(10, &[(8, 12)], 4).is_err());
    }

    #[test]
    fn budget_guard() {
        assert!(check_budget(SearchKind::Full, 4, false).is_ok());
        assert!(matches!(check_budget(SearchKind::Full, 5, false), Err(Error::Budget(_))));
        assert!(check_budget(SearchKind::Full, 5, true).is_ok());
        assert!(check_budget(SearchKind::Full, 7, true).is_err());
        assert!(check_budget(SearchKind::Probe, 13, false).is_err());
        assert!(check_budget(SearchKind::Probe, 13, true).is_ok());
    }

    #[test]
    fn resume_after_torn_line() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let want = run_to_end(&ctx, &SearchConfig::new(SearchKind::Restricted)).unwrap().deterministic_json();
        let dir = tempfile::tempdir().unwrap();
        let cp = dir.path().join("cp.jsonl");
        let mut cfg = SearchConfig::new(SearchKind::Restricted);
        cfg.shards = 8;
        cfg.checkpoint = Some(cp.clone());
        cfg.stop_after_shards = Some(3);
        assert!(matches!(run_search(&ctx, &cfg).unwrap(), Outcome::Interrupted { shards_written: 3 }));
        let text = std::fs::read_to_string(&cp).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        // cut the last shard record in half
        let torn = format!("{}\n{}\n{}\n{}", lines[0], lines[1], lines[2], &lines[3][..lines[3].len() / 2]);
        std::fs::write(&cp, torn).unwrap();
        cfg.resume = true;
        cfg.stop_after_shards = None;
        let r = run_to_end(&ctx, &cfg).unwrap();
        assert_eq!(r.deterministic_json(), want);
        let after = std::fs::read_to_string(&cp).unwrap();
        assert_eq!(after.lines().count(), 9);
        assert!(after.lines().all(|l| decode_checkpoint_line(l).is_ok()));

        // garbage before the end, or a different run, is refused
        std::fs::write(&cp, format!("{}\nnot json\n{}\n", lines[0], lines[1])).unwrap();
        assert!(matches!(run_search(&ctx, &cfg), Err(Error::Checkpoint(_))));
        cfg.seed = 1;
        std::fs::write(&cp, format!("{}\n", lines[0])).unwrap();
        assert!(matches!(run_search(&ctx, &cfg), Err(Error::Checkpoint(_))));
    }
}
