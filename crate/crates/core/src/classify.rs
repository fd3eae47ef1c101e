//! Scatteredness and equivalence class of L(alpha, beta) against the known
//! maximum scattered families of PG(1, q^5).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Fq5Elem};
use crate::linpoly::QPoly;
use crate::linset::{l_alpha_beta, LinSetParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    NotRank5,
    Pseudoregulus,
    NotScattered,
    LunardonPolverino,
    Sheekey,
    NewCandidate,
}

impl Tag {
    pub const ALL: [Tag; 6] = [
        Tag::NotRank5,
        Tag::Pseudoregulus,
        Tag::NotScattered,
        Tag::LunardonPolverino,
        Tag::Sheekey,
        Tag::NewCandidate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::NotRank5 => "NotRank5",
            Tag::Pseudoregulus => "Pseudoregulus",
            Tag::NotScattered => "NotScattered",
            Tag::LunardonPolverino => "LunardonPolverino",
            Tag::Sheekey => "Sheekey",
            Tag::NewCandidate => "NewCandidate",
        }
    }

    /// The classes that are maximum scattered.
    pub fn is_max_scattered(self) -> bool {
        matches!(self, Tag::Pseudoregulus | Tag::LunardonPolverino | Tag::Sheekey | Tag::NewCandidate)
    }
}

/// Outcome of `classify`. `witness` is the lambda solving the
/// characterisation system for NotScattered, or eta for Sheekey.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub tag: Tag,
    pub witness: Option<Fq5Elem>,
    pub lambda: Option<Fq5Elem>,
    pub n_alpha: Fq5Elem,
    pub n_beta: Fq5Elem,
}

/// Serialized form, elements as integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub tag: Tag,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<u32>,
    pub n_alpha: u32,
    pub n_beta: u32,
}

impl Classification {
    pub fn record(&self, ctx: &FieldCtx) -> ClassRecord {
        ClassRecord {
            tag: self.tag,
            witness: self.witness.map(|w| ctx.to_int(w)),
            lambda: self.lambda.map(|l| ctx.to_int(l)),
            n_alpha: ctx.to_int(self.n_alpha),
            n_beta: ctx.to_int(self.n_beta),
        }
    }
}

/// h_m(x) = m x + x^q - (beta + m alpha) x^{q^2}.
pub fn h_m(ctx: &FieldCtx, params: &LinSetParams, m: Fq5Elem) -> QPoly {
    let c2 = ctx.neg(ctx.add(params.beta, ctx.mul(m, params.alpha)));
    QPoly::new([m, Fq5Elem::ONE, c2, Fq5Elem::ZERO, Fq5Elem::ZERO])
}

pub fn h_m_kernel(ctx: &FieldCtx, params: &LinSetParams, m: Fq5Elem) -> usize {
    h_m(ctx, params, m).kernel_dim(ctx)
}

/// Left side of the second characterisation equation at lambda.
pub fn char1_value(ctx: &FieldCtx, params: &LinSetParams, lambda: Fq5Elem) -> Fq5Elem {
    Char1::new(ctx, params).eval(ctx, lambda)
}

/// The char1 polynomial with the beta powers hoisted.
struct Char1 {
    alpha: Fq5Elem,
    b_q3_q_1: Fq5Elem,
    b_q3: Fq5Elem,
    b_q_1: Fq5Elem,
    q: u64,
}

impl Char1 {
    fn new(ctx: &FieldCtx, params: &LinSetParams) -> Char1 {
        let q = ctx.q() as u64;
        let b = params.beta;
        let b_q = ctx.frob(b, 1);
        let b_q3 = ctx.frob(b, 3);
        Char1 {
            alpha: params.alpha,
            b_q3_q_1: ctx.mul(b_q3, ctx.mul(b_q, b)),
            b_q3,
            b_q_1: ctx.mul(b_q, b),
            q,
        }
    }

    #[inline]
    fn eval(&self, ctx: &FieldCtx, l: Fq5Elem) -> Fq5Elem {
        let t = ctx.sub(Fq5Elem::ONE, ctx.mul(l, self.alpha));
        let l_q = ctx.frob(l, 1);
        let l_q2 = ctx.frob(l, 2);
        let t1 = ctx.mul(l_q, self.b_q3_q_1);
        let t2 = ctx.mul(self.b_q3, ctx.pow(t, self.q + 1));
        let t3 = ctx.mul(ctx.mul(l_q2, ctx.mul(l_q, l)), ctx.mul(ctx.frob(t, 3), self.b_q_1));
        ctx.sub(ctx.add(t1, t2), t3)
    }
}

/// First lambda in `elements_of_norm(-1)` order solving the characterisation
/// system, or `None` when L(alpha, beta) is maximum scattered (given rank 5).
///
/// For beta = 0 the second equation vanishes identically; there the set is
/// {<(y^{q^4} - alpha y^q, y)>}, which fails to be scattered exactly when
/// N(alpha) = -1, and alpha^{-1} is returned as witness.
pub fn char_witness(ctx: &FieldCtx, params: &LinSetParams) -> Option<Fq5Elem> {
    let minus_one = ctx.neg(ctx.one());
    if params.beta.is_zero() {
        if params.alpha.is_zero() {
            return None;
        }
        return (ctx.norm(params.alpha) == minus_one).then(|| ctx.inv(params.alpha));
    }
    let c1 = Char1::new(ctx, params);
    ctx.elements_of_norm(minus_one)
        .expect("-1 lies in F_q")
        .find(|&l| c1.eval(ctx, l).is_zero())
}

/// Maximum scattered via the characterisation: rank 5 and no witness.
pub fn is_max_scattered(ctx: &FieldCtx, params: &LinSetParams) -> bool {
    params.rank(ctx) == 5 && char_witness(ctx, params).is_none()
}

/// Maximum scattered via explicit point-set construction.
pub fn max_scattered_by_points(ctx: &FieldCtx, params: &LinSetParams) -> bool {
    let l = l_alpha_beta(ctx, params).expect("construction is total");
    l.rank() == 5 && l.is_scattered()
}

/// Maximum scattered via kernels: rank 5 and every h_m has kernel dimension
/// at most one (the point <(0,1)> never has weight above one).
pub fn max_scattered_by_kernels(ctx: &FieldCtx, params: &LinSetParams) -> bool {
    params.rank(ctx) == 5 && ctx.elements().all(|m| h_m_kernel(ctx, params, m) <= 1)
}

/// beta = 0 and N(alpha) != -1, alpha != 0.
pub fn lp_equivalent(ctx: &FieldCtx, params: &LinSetParams) -> bool {
    params.beta.is_zero()
        && !params.alpha.is_zero()
        && ctx.norm(params.alpha) != ctx.neg(ctx.one())
}

fn check_sheekey_pre(ctx: &FieldCtx, params: &LinSetParams) -> Result<()> {
    if params.alpha.is_zero() || params.beta.is_zero() {
        return Err(Error::Precondition("Sheekey condition needs alpha beta != 0".into()));
    }
    if params.is_pseudoregulus_pair(ctx) {
        return Err(Error::Precondition("Sheekey condition needs alpha^q != beta^{q+1}".into()));
    }
    Ok(())
}

/// a^{q^4} b^{q^2+q+1} - a^{q^4+q^2} b - a^{q^4+q} b^{q^2} + N(a) - b^q a^{q^3+1} + 1 = 0.
pub fn sheekey_condition(ctx: &FieldCtx, params: &LinSetParams) -> Result<bool> {
    check_sheekey_pre(ctx, params)?;
    let a = ctx.el(params.alpha);
    let b = ctx.el(params.beta);
    let a4 = a.frob(4);
    let lhs = a4 * b.frob(2) * b.frob(1) * b - a4 * a.frob(2) * b - a4 * a.frob(1) * b.frob(2)
        + a.norm()
        - b.frob(1) * a.frob(3) * a
        + a.one();
    Ok(lhs.is_zero())
}

/// lambda^5 N^2 + lambda (1 - 3 lambda) N + 1 for lambda, N in F_q.
pub fn sh2_value(ctx: &FieldCtx, lambda: Fq5Elem, n: Fq5Elem) -> Fq5Elem {
    let l = ctx.el(lambda);
    let n = ctx.el(n);
    (l.pow(5) * n * n + l * (l.one() - l.int(3) * l) * n + l.one()).v
}

/// Same condition through lambda = alpha^q / beta^{q+1}: lambda in F_q* \ {1}
/// and sh2(lambda, N(beta)) = 0.
pub fn sheekey_condition_via_lambda(ctx: &FieldCtx, params: &LinSetParams) -> Result<bool> {
    check_sheekey_pre(ctx, params)?;
    let lambda = params.lambda(ctx).expect("beta != 0");
    if !ctx.in_subfield(lambda) || lambda == ctx.one() {
        return Ok(false);
    }
    Ok(sh2_value(ctx, lambda, ctx.norm(params.beta)).is_zero())
}

/// eta = alpha^{q^3} (beta^{q+1} - alpha^q) / (beta^q alpha^{q^3+1} - 1).
pub fn sheekey_eta(ctx: &FieldCtx, params: &LinSetParams) -> Result<Fq5Elem> {
    let a = ctx.el(params.alpha);
    let b = ctx.el(params.beta);
    let den = b.frob(1) * a.frob(3) * a - a.one();
    if den.is_zero() {
        return Err(Error::Precondition("eta denominator vanishes".into()));
    }
    let num = a.frob(3) * (b.pow(ctx.q() as u64 + 1) - a.frob(1));
    Ok((num / den).v)
}

pub fn classify(ctx: &FieldCtx, params: &LinSetParams) -> Classification {
    let mut out = Classification {
        tag: Tag::NewCandidate,
        witness: None,
        lambda: params.lambda(ctx),
        n_alpha: params.n_alpha(ctx),
        n_beta: params.n_beta(ctx),
    };
    if params.rank(ctx) < 5 {
        out.tag = Tag::NotRank5;
    } else if params.is_pseudoregulus_pair(ctx) {
        out.tag = Tag::Pseudoregulus;
    } else if let Some(l) = char_witness(ctx, params) {
        out.tag = Tag::NotScattered;
        out.witness = Some(l);
    } else if params.beta.is_zero() {
        out.tag = Tag::LunardonPolverino;
    } else if !params.alpha.is_zero() && sheekey_condition(ctx, params).unwrap_or(false) {
        if let Ok(eta) = sheekey_eta(ctx, params) {
            let n = ctx.norm(eta);
            if !n.is_zero() && n != ctx.one() {
                out.tag = Tag::Sheekey;
                out.witness = Some(eta);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32) -> FieldCtx {
        FieldCtx::new(p, 1).unwrap()
    }

    fn brute_kernel(ctx: &FieldCtx, f: &QPoly) -> usize {
        let n = ctx.elements().filter(|&x| f.eval(ctx, x).is_zero()).count();
        (n as f64).log(ctx.q() as f64).round() as usize
    }

    #[test]
    fn h_m_examples() {
        let c = ctx(3);
        let beta = c.g_pow(1);
        assert_ne!(c.norm(beta), c.one());
        let pr = LinSetParams::new(c.g_pow(7), beta);
        // x^q - beta x^{q^2} has only the root 0 when N(beta) != 1
        assert_eq!(h_m_kernel(&c, &pr, c.zero()), 0);
        // beta + m alpha = 0 leaves m x + x^q
        let m = c.neg(c.div(pr.beta, pr.alpha));
        let f = h_m(&c, &pr, m);
        assert_eq!(f, QPoly::new([m, c.one(), c.zero(), c.zero(), c.zero()]));
        assert!(h_m_kernel(&c, &pr, m) <= 1);
        assert_eq!(h_m_kernel(&c, &pr, m), brute_kernel(&c, &f));

        let c2 = ctx(2);
        for (a, b, m) in [(1u64, 2u64, 3u64), (5, 9, 30), (0, 4, 11), (17, 0, 2)] {
            let pr = LinSetParams::new(c2.g_pow(a), c2.g_pow(b));
            let f = h_m(&c2, &pr, c2.g_pow(m));
            assert_eq!(f.kernel_dim(&c2), brute_kernel(&c2, &f));
        }
    }

    #[test]
    fn witness_examples() {
        let c = ctx(3);
        let minus_one = c.neg(c.one());
        let alpha = c.elements().find(|&a| {
            let n = c.norm(a);
            !n.is_zero() && n != c.one() && n != minus_one
        });
        // F_3 has no norm value outside {0, 1, -1}
        assert!(alpha.is_none());
        let a = c.elements_of_norm(c.one()).unwrap().nth(4).unwrap();
        assert!(char_witness(&c, &LinSetParams::new(a, c.zero())).is_none());
        let a = c.elements_of_norm(minus_one).unwrap().nth(4).unwrap();
        assert!(char_witness(&c, &LinSetParams::new(a, c.zero())).is_some());
        for beta in c.elements().skip(1).step_by(13) {
            let w = char_witness(&c, &LinSetParams::new(c.zero(), beta)).expect("witness");
            assert_eq!(c.norm(w), minus_one);
        }
    }

    #[test]
    fn routes_agree_on_samples_q3() {
        let c = ctx(3);
        for k in (0..243u64).step_by(19) {
            for j in (0..243u64).step_by(11) {
                let pr = LinSetParams::new(c.g_pow(k), c.g_pow(j));
                let a = max_scattered_by_points(&c, &pr);
                assert_eq!(a, is_max_scattered(&c, &pr), "{pr:?}");
                assert_eq!(a, max_scattered_by_kernels(&c, &pr), "{pr:?}");
            }
        }
    }

    #[test]
    fn pseudoregulus_pairs() {
        let c = ctx(3);
        for beta in c.elements().skip(1).step_by(7) {
            let alpha = c.frob(c.pow(beta, 4), 4);
            let pr = LinSetParams::new(alpha, beta);
            let full = c.norm(alpha) == c.one() && c.norm(beta) == c.one();
            assert_eq!(is_max_scattered(&c, &pr), !full);
            assert_eq!(classify(&c, &pr).tag, if full { Tag::NotRank5 } else { Tag::Pseudoregulus });
        }
        assert_eq!(classify(&c, &LinSetParams::new(c.zero(), c.zero())).tag, Tag::Pseudoregulus);
    }

    #[test]
    fn lambda_outside_subfield_not_scattered() {
        let c = ctx(3);
        for k in (1..243u64).step_by(9) {
            for j in (0..242u64).step_by(17) {
                let pr = LinSetParams::new(c.g_pow(k), c.g_pow(j));
                if !c.in_subfield(pr.lambda(&c).unwrap()) {
                    assert!(!is_max_scattered(&c, &pr));
                    assert!(!sheekey_condition(&c, &pr).unwrap());
                }
            }
        }
    }

    #[test]
    fn lp_examples() {
        let c = ctx(5);
        let minus_one = c.neg(c.one());
        let a = c.elements_of_norm(c.fp(2)).unwrap().next().unwrap();
        let pr = LinSetParams::new(a, c.zero());
        assert!(lp_equivalent(&c, &pr));
        assert_eq!(classify(&c, &pr).tag, Tag::LunardonPolverino);
        let a = c.elements_of_norm(minus_one).unwrap().next().unwrap();
        assert!(!lp_equivalent(&c, &LinSetParams::new(a, c.zero())));
        assert_eq!(classify(&c, &LinSetParams::new(a, c.zero())).tag, Tag::NotScattered);
        assert!(!lp_equivalent(&c, &LinSetParams::new(c.g_pow(3), c.g_pow(4))));
        assert!(!lp_equivalent(&c, &LinSetParams::new(c.zero(), c.zero())));
    }

    #[test]
    fn sheekey_routes_agree_exhaustively_q2_q3() {
        for p in [2, 3] {
            let c = ctx(p);
            for a in c.elements().skip(1) {
                for b in c.elements().skip(1) {
                    let pr = LinSetParams::new(a, b);
                    if pr.is_pseudoregulus_pair(&c) {
                        assert!(sheekey_condition(&c, &pr).is_err());
                        continue;
                    }
                    assert_eq!(
                        sheekey_condition(&c, &pr).unwrap(),
                        sheekey_condition_via_lambda(&c, &pr).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn sheekey_pairs_from_solved_norms() {
        // solve sh2 for N(beta) over F_q, lift beta, set alpha = (lambda beta^{q+1})^{q^4}
        for (p, e) in [(5, 1), (7, 1)] {
            let c = FieldCtx::new(p, e).unwrap();
            let q = c.q() as u64;
            let mut hits = 0;
            for &lambda in c.subfield().iter().skip(1) {
                if lambda == c.one() {
                    continue;
                }
                for &n in c.subfield().iter().skip(1) {
                    if !sh2_value(&c, lambda, n).is_zero() {
                        continue;
                    }
                    for beta in c.elements_of_norm(n).unwrap().step_by(37) {
                        let alpha = c.frob(c.mul(lambda, c.pow(beta, q + 1)), 4);
                        let pr = LinSetParams::new(alpha, beta);
                        assert!(sheekey_condition(&c, &pr).unwrap());
                        let cl = classify(&c, &pr);
                        assert_eq!(cl.tag, Tag::Sheekey);
                        let eta = cl.witness.unwrap();
                        let ne = c.norm(eta);
                        assert!(!ne.is_zero() && ne != c.one());
                        assert!(crate::linset::l_s_eta(&c, 2, eta).unwrap().is_scattered());
                        let cq = classify(&c, &pr.frobenius(&c));
                        assert_eq!(cq.witness, Some(c.frob(eta, 1)));
                        hits += 1;
                    }
                }
            }
            assert!(hits > 0, "q = {q}");
        }
        let c = ctx(3);
        let pr = LinSetParams::new(c.g_pow(1), c.zero());
        assert!(sheekey_condition(&c, &pr).is_err());
    }

    #[test]
    fn record_shape() {
        let c = ctx(2);
        let cl = classify(&c, &LinSetParams::new(c.zero(), c.g_pow(3)));
        assert_eq!(cl.tag, Tag::NotScattered);
        let v = serde_json::to_value(cl.record(&c)).unwrap();
        assert_eq!(v["tag"], "NotScattered");
        assert!(v["witness"].is_u64());
        assert!(v["n_alpha"] == 0);
    }
}
