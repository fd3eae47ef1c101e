//! Verification suites: each runs one family of checks over a range of q and
//! emits a `VerifyRecord` per check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::classify::{classify, sh2_value, Tag};
use crate::error::{Error, Result};
use crate::gf::{prime_power, FieldCtx};
use crate::linset::{l_s_eta, LinSetParams};
use crate::report::{FieldInfo, Header};
use crate::search::{run_to_end, SearchConfig, SearchKind};
use crate::varieties::{
    det_height_identity, eq5_solvable, next_prime_power_above, perturbed_closed_form, quartic_point,
    resultant_check_against, resultant_identity_check, slavov_bound, QuarticParams, VerifyRecord,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lem1,
    Prop2,
    Det,
    Resultants,
    Slavov,
    Quartic,
    Sheekey,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "lem1" => Suite::Lem1,
            "prop2" => Suite::Prop2,
            "det" => Suite::Det,
            "resultants" => Suite::Resultants,
            "slavov" => Suite::Slavov,
            "quartic" => Suite::Quartic,
            "sheekey" => Suite::Sheekey,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub q_max: u32,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { q_max: 17, seed: 0, workers: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub header: Header,
    pub records: Vec<VerifyRecord>,
    pub failed: usize,
    pub pass: bool,
}

/// Prime powers 2 <= q <= q_max.
pub fn prime_powers_upto(q_max: u32) -> Vec<u32> {
    (2..=q_max).filter(|&q| prime_power(q as u64).is_some()).collect()
}

fn field_of(q: u32) -> Result<FieldCtx> {
    let (p, e) = prime_power(q as u64).ok_or_else(|| Error::Precondition(format!("{q} is not a prime power")))?;
    FieldCtx::new(p, e)
}

fn record(check: &str, q: u32, params: serde_json::Value, witness: Option<serde_json::Value>, pass: bool) -> VerifyRecord {
    VerifyRecord { check: check.into(), q, params, witness, pass }
}

/// Every a in F_q* admits a solution of the norm equation.
pub fn suite_lem1(ctx: &FieldCtx) -> Result<VerifyRecord> {
    let mut witnesses = Vec::new();
    let mut fails = Vec::new();
    for &a in &ctx.subfield()[1..] {
        match eq5_solvable(ctx, a)? {
            Some(x) => witnesses.push(json!({"a": ctx.to_int(a), "x": ctx.to_int(x)})),
            None => fails.push(ctx.to_int(a)),
        }
    }
    let n = witnesses.len() + fails.len();
    Ok(record(
        "lem1",
        ctx.q(),
        json!({"values": n, "failures": fails}),
        Some(json!(witnesses)),
        fails.is_empty(),
    ))
}

/// No binomial x^q + b x^{q^2} is maximum scattered.
pub fn suite_prop2(ctx: &FieldCtx, workers: usize) -> Result<VerifyRecord> {
    let mut cfg = SearchConfig::new(SearchKind::Prop2);
    cfg.workers = workers;
    cfg.long_run = true;
    let r = run_to_end(ctx, &cfg)?;
    let c = |k: &str| r.body.counters.get(k).copied().unwrap_or(0);
    let mut params = json!({"b_values": r.body.units, "pass": c("pass"), "fail": c("fail")});
    if ctx.q() <= 3 {
        params["oracle_agree"] = json!(c("oracle_agree"));
    }
    let pass = c("fail") == 0 && c("pass") == r.body.units && r.body.alarms.is_empty();
    Ok(record("prop2", ctx.q(), params, None, pass))
}

/// The determinant identity at `samples` random a.
pub fn suite_det(ctx: &FieldCtx, samples: usize, seed: u64) -> VerifyRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ctx.q() as u64);
    let mut bad = Vec::new();
    for _ in 0..samples {
        let a = ctx.from_int(rng.gen_range(0..ctx.order() as u64)).expect("in range");
        let (lhs, rhs) = det_height_identity(ctx, a);
        if lhs != rhs {
            bad.push(ctx.to_int(a));
        }
    }
    let pass = bad.is_empty();
    record("det", ctx.q(), json!({"samples": samples, "failures": bad}), None, pass)
}

pub fn suite_resultants(seed: u64) -> Result<Vec<VerifyRecord>> {
    let p = 10007;
    let mut out = Vec::new();
    for which in [1, 2] {
        let r = resultant_identity_check(which, p, 64, seed)?;
        out.push(record(
            "resultant",
            0,
            json!({"which": which, "p": p, "points": r.points}),
            Some(json!({"unit": r.unit, "routes_agree": r.routes_agree})),
            r.pass,
        ));
    }
    let ctl = resultant_check_against(1, p, 64, seed, perturbed_closed_form)?;
    out.push(record(
        "resultant_negative_control",
        0,
        json!({"which": 1, "p": p, "points": ctl.points}),
        Some(json!({"unit": ctl.unit})),
        !ctl.pass,
    ));
    Ok(out)
}

pub fn suite_slavov() -> Result<VerifyRecord> {
    let bound = slavov_bound(5, 1)?;
    let next = next_prime_power_above(bound);
    Ok(record(
        "slavov",
        0,
        json!({"d": 5, "e": 1}),
        Some(json!({"bound": bound, "next_prime_power": next})),
        bound == 216 && next == 223,
    ))
}

/// Pairs with lambda outside F_q: a quartic point exists and the pair is
/// classified NotScattered.
pub fn suite_quartic(ctx: &FieldCtx, samples: usize, seed: u64) -> VerifyRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (ctx.q() as u64) << 16);
    let order = ctx.order() as u64;
    let mut agree = 0;
    let mut bad = Vec::new();
    let mut drawn = 0;
    while drawn < samples {
        let alpha = ctx.from_int(rng.gen_range(0..order)).expect("in range");
        let beta = ctx.from_int(rng.gen_range(1..order)).expect("in range");
        let Ok(qp) = QuarticParams::new(ctx, alpha, beta) else { continue };
        drawn += 1;
        let point = quartic_point(ctx, &qp);
        let tag = classify(ctx, &LinSetParams::new(alpha, beta)).tag;
        if point.is_some() && tag == Tag::NotScattered {
            agree += 1;
        } else {
            bad.push(json!({"alpha": ctx.to_int(alpha), "beta": ctx.to_int(beta), "tag": tag.name(),
                            "point": point.map(|l| ctx.to_int(l))}));
        }
    }
    let pass = bad.is_empty();
    record("quartic", ctx.q(), json!({"samples": samples, "agree": agree}), Some(json!(bad)), pass)
}

/// For each lambda in F_q* \ {1} and each norm value n solving sh2, one beta of
/// norm n: the pair is Sheekey, N(eta) is not 0 or 1 and the eta set is scattered.
pub fn suite_sheekey(ctx: &FieldCtx) -> Result<VerifyRecord> {
    let q = ctx.q() as u64;
    let sub = ctx.subfield();
    let mut cases = Vec::new();
    let mut bad = Vec::new();
    for &lambda in &sub[2..] {
        for &n in &sub[1..] {
            if !sh2_value(ctx, lambda, n).is_zero() {
                continue;
            }
            let beta = ctx.elements_of_norm(n)?.next().expect("norm is onto F_q*");
            let alpha = ctx.frob(ctx.mul(lambda, ctx.pow(beta, q + 1)), 4);
            let cl = classify(ctx, &LinSetParams::new(alpha, beta));
            let case = json!({"lambda": ctx.to_int(lambda), "n_beta": ctx.to_int(n),
                              "alpha": ctx.to_int(alpha), "beta": ctx.to_int(beta), "tag": cl.tag.name(),
                              "eta": cl.witness.filter(|_| cl.tag == Tag::Sheekey).map(|e| ctx.to_int(e))});
            let ok = cl.tag == Tag::Sheekey
                && cl.witness.is_some_and(|eta| {
                    let ne = ctx.norm(eta);
                    !ne.is_zero() && ne != ctx.one() && l_s_eta(ctx, 2, eta).is_ok_and(|s| s.is_scattered())
                });
            if !ok {
                bad.push(case.clone());
            }
            cases.push(case);
        }
    }
    let pass = bad.is_empty();
    Ok(record("sheekey", ctx.q(), json!({"cases": cases.len(), "failures": bad}), Some(json!(cases)), pass))
}

fn per_q<F>(qs: &[u32], workers: usize, f: F) -> Result<Vec<VerifyRecord>>
where
    F: Fn(&FieldCtx) -> Result<VerifyRecord> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    pool.install(|| qs.par_iter().map(|&q| field_of(q).and_then(|c| f(&c))).collect())
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<VerifyReport> {
    let qs = prime_powers_upto(cfg.q_max);
    let mut records = Vec::new();
    let mut fields = Vec::new();
    let mut push_fields = |qs: &[u32]| -> Result<()> {
        for &q in qs {
            let info = FieldInfo::of(&field_of(q)?);
            if !fields.contains(&info) {
                fields.push(info);
            }
        }
        Ok(())
    };
    let run_one = |s: Suite, records: &mut Vec<VerifyRecord>| -> Result<Vec<u32>> {
        match s {
            Suite::Lem1 => {
                records.extend(per_q(&qs, cfg.workers, suite_lem1)?);
                Ok(qs.clone())
            }
            Suite::Prop2 => {
                for &q in &qs {
                    records.push(suite_prop2(&field_of(q)?, cfg.workers)?);
                }
                Ok(qs.clone())
            }
            Suite::Det => {
                records.extend(per_q(&qs, cfg.workers, |c| Ok(suite_det(c, 1000, cfg.seed)))?);
                Ok(qs.clone())
            }
            Suite::Resultants => {
                records.extend(suite_resultants(cfg.seed)?);
                Ok(vec![])
            }
            Suite::Slavov => {
                records.push(suite_slavov()?);
                Ok(vec![])
            }
            Suite::Quartic => {
                let qq: Vec<u32> = [2, 3, 4, 5, 7, 8, 9].into_iter().filter(|&q| q <= cfg.q_max).collect();
                records.extend(per_q(&qq, cfg.workers, |c| Ok(suite_quartic(c, 50, cfg.seed)))?);
                Ok(qq)
            }
            Suite::Sheekey => {
                let qq: Vec<u32> = qs.iter().copied().filter(|&q| q <= 11).collect();
                records.extend(per_q(&qq, cfg.workers, suite_sheekey)?);
                Ok(qq)
            }
            Suite::All => unreachable!(),
        }
    };
    let list = if suite == Suite::All {
        vec![Suite::Lem1, Suite::Prop2, Suite::Det, Suite::Resultants, Suite::Slavov, Suite::Quartic, Suite::Sheekey]
    } else {
        vec![suite]
    };
    for s in list {
        let used = run_one(s, &mut records)?;
        push_fields(&used)?;
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    Ok(VerifyReport { header: Header::new(cfg.seed, fields), records, failed, pass: failed == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let cfg = SuiteConfig { q_max: 4, seed: 3, workers: 2 };
        for s in [Suite::Lem1, Suite::Prop2, Suite::Det, Suite::Slavov, Suite::Resultants] {
            let r = run_suite(s, &cfg).unwrap();
            assert!(r.pass, "{s:?}: {:?}", r.records);
        }
    }

    #[test]
    fn prime_power_list() {
        assert_eq!(prime_powers_upto(17), vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17]);
    }

    #[test]
    fn unknown_suite() {
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
    }
}
