//! F_q-linear sets on PG(1, q^5) and the parametrised family L(alpha, beta).

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Fq5Elem};
use crate::linpoly::{joint_kernel_dim, QPoly};

/// A point <(x0, x1)> of PG(1, q^5), normalised so the first nonzero
/// coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    pub x0: Fq5Elem,
    pub x1: Fq5Elem,
}

impl ProjPoint {
    /// `None` for the zero vector.
    pub fn new(ctx: &FieldCtx, x0: Fq5Elem, x1: Fq5Elem) -> Option<ProjPoint> {
        if x0.is_zero() {
            if x1.is_zero() {
                return None;
            }
            return Some(ProjPoint { x0: Fq5Elem::ZERO, x1: Fq5Elem::ONE });
        }
        Some(ProjPoint { x0: Fq5Elem::ONE, x1: ctx.div(x1, x0) })
    }

    /// Dense index in [0, q^5]: the slope's integer encoding, or q^5 for <(0,1)>.
    fn index(&self, ctx: &FieldCtx) -> usize {
        if self.x0.is_zero() {
            ctx.order() as usize
        } else {
            ctx.to_int(self.x1) as usize
        }
    }

    fn from_index(ctx: &FieldCtx, i: usize) -> ProjPoint {
        if i == ctx.order() as usize {
            ProjPoint { x0: Fq5Elem::ZERO, x1: Fq5Elem::ONE }
        } else {
            ProjPoint { x0: Fq5Elem::ONE, x1: ctx.from_int(i as u64).expect("index in range") }
        }
    }
}

/// Points hit by a subspace U, with their weights dim(U ∩ P).
#[derive(Clone, Debug)]
pub struct LinearSet {
    q: u32,
    rank: u32,
    weights: HashMap<ProjPoint, u32>,
}

/// log_q(n) when n is an exact power of q.
fn exact_log(q: u64, mut n: u64) -> Option<u32> {
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(q) {
            return None;
        }
        n /= q;
        k += 1;
    }
    (n == 1).then_some(k)
}

impl LinearSet {
    /// Builds weights from per-point counts of nonzero vectors, where every
    /// vector of U was hit `mult` times.
    fn from_counts(ctx: &FieldCtx, counts: &[u64], mult: u64, rank: u32) -> Result<LinearSet> {
        let q = ctx.q() as u64;
        let mut weights = HashMap::new();
        for (i, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c % mult != 0 {
                return Err(Error::Internal("inconsistent vector multiplicity".into()));
            }
            let w = exact_log(q, c / mult + 1)
                .ok_or(Error::Internal("point count is not q^w - 1".into()))?;
            weights.insert(ProjPoint::from_index(ctx, i), w);
        }
        Ok(LinearSet { q: ctx.q(), rank, weights })
    }

    /// L_U for U spanned over F_q by `u_basis`.
    pub fn from_subspace(ctx: &FieldCtx, u_basis: &[(Fq5Elem, Fq5Elem)]) -> Result<LinearSet> {
        let r = u_basis.len() as u32;
        let sub = ctx.subfield();
        let q = ctx.q() as usize;
        let mut counts = vec![0u64; ctx.order() as usize + 1];
        let total = q.checked_pow(r).ok_or(Error::Precondition("subspace too large".into()))?;
        for idx in 1..total {
            let mut rest = idx;
            let (mut x0, mut x1) = (Fq5Elem::ZERO, Fq5Elem::ZERO);
            for &(b0, b1) in u_basis {
                let c = sub[rest % q];
                rest /= q;
                x0 = ctx.add(x0, ctx.mul(c, b0));
                x1 = ctx.add(x1, ctx.mul(c, b1));
            }
            match ProjPoint::new(ctx, x0, x1) {
                Some(pt) => counts[pt.index(ctx)] += 1,
                None => return Err(Error::Precondition("basis is F_q-dependent".into())),
            }
        }
        LinearSet::from_counts(ctx, &counts, 1, r)
    }

    /// L_U with U = {(f0(x), f1(x)) : x in F_{q^5}}.
    pub fn from_maps(ctx: &FieldCtx, f0: &QPoly, f1: &QPoly) -> Result<LinearSet> {
        let kdim = joint_kernel_dim(ctx, &[*f0, *f1]) as u32;
        let mut counts = vec![0u64; ctx.order() as usize + 1];
        let mut zeros = 0u64;
        for x in ctx.elements() {
            match ProjPoint::new(ctx, f0.eval(ctx, x), f1.eval(ctx, x)) {
                Some(pt) => counts[pt.index(ctx)] += 1,
                None => zeros += 1,
            }
        }
        let mult = (ctx.q() as u64).pow(kdim);
        if zeros != mult {
            return Err(Error::Internal("kernel size disagrees with matrix rank".into()));
        }
        LinearSet::from_counts(ctx, &counts, mult, 5 - kdim)
    }

    /// L_f = {<(x, f(x))>}.
    pub fn of_qpoly(ctx: &FieldCtx, f: &QPoly) -> Result<LinearSet> {
        LinearSet::from_maps(ctx, &QPoly::identity(), f)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, pt: &ProjPoint) -> u32 {
        self.weights.get(pt).copied().unwrap_or(0)
    }

    pub fn points(&self) -> impl Iterator<Item = (&ProjPoint, &u32)> {
        self.weights.iter()
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.values().copied().max().unwrap_or(0)
    }

    /// All weights equal one.
    pub fn is_scattered(&self) -> bool {
        self.max_weight() <= 1
    }

    /// weight -> number of points of that weight.
    pub fn weight_histogram(&self) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for &w in self.weights.values() {
            *h.entry(w).or_insert(0) += 1;
        }
        h
    }

    /// sum over points of (q^w - 1) equals q^rank - 1.
    pub fn weight_sum_holds(&self) -> bool {
        let q = self.q as u64;
        let lhs: u64 = self.weights.values().map(|&w| q.pow(w) - 1).sum();
        lhs == q.pow(self.rank) - 1
    }

    /// Point sets compared as sets, ignoring weights.
    pub fn same_points(&self, other: &LinearSet) -> bool {
        self.weights.len() == other.weights.len()
            && self.weights.keys().all(|k| other.weights.contains_key(k))
    }
}

/// A parameter pair (alpha, beta) of L(alpha, beta).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinSetParams {
    pub alpha: Fq5Elem,
    pub beta: Fq5Elem,
}

impl LinSetParams {
    pub fn new(alpha: Fq5Elem, beta: Fq5Elem) -> LinSetParams {
        LinSetParams { alpha, beta }
    }

    /// alpha^q / beta^{q+1}, undefined for beta = 0.
    pub fn lambda(&self, ctx: &FieldCtx) -> Option<Fq5Elem> {
        if self.beta.is_zero() {
            return None;
        }
        let den = ctx.pow(self.beta, ctx.q() as u64 + 1);
        Some(ctx.div(ctx.frob(self.alpha, 1), den))
    }

    pub fn n_alpha(&self, ctx: &FieldCtx) -> Fq5Elem {
        ctx.norm(self.alpha)
    }

    pub fn n_beta(&self, ctx: &FieldCtx) -> Fq5Elem {
        ctx.norm(self.beta)
    }

    /// (alpha^q, beta^q).
    pub fn frobenius(&self, ctx: &FieldCtx) -> LinSetParams {
        LinSetParams { alpha: ctx.frob(self.alpha, 1), beta: ctx.frob(self.beta, 1) }
    }

    /// alpha^q = beta^{q+1}.
    pub fn is_pseudoregulus_pair(&self, ctx: &FieldCtx) -> bool {
        ctx.frob(self.alpha, 1) == ctx.pow(self.beta, ctx.q() as u64 + 1)
    }

    /// The two defining maps x - alpha x^{q^2} and x^q - beta x^{q^2}.
    pub fn maps(&self, ctx: &FieldCtx) -> (QPoly, QPoly) {
        let f0 = QPoly::new([Fq5Elem::ONE, Fq5Elem::ZERO, ctx.neg(self.alpha), Fq5Elem::ZERO, Fq5Elem::ZERO]);
        let f1 = QPoly::new([Fq5Elem::ZERO, Fq5Elem::ONE, ctx.neg(self.beta), Fq5Elem::ZERO, Fq5Elem::ZERO]);
        (f0, f1)
    }

    /// Rank of L(alpha, beta): 5 minus the joint kernel dimension.
    pub fn rank(&self, ctx: &FieldCtx) -> u32 {
        let (f0, f1) = self.maps(ctx);
        5 - joint_kernel_dim(ctx, &[f0, f1]) as u32
    }
}

/// L(alpha, beta) = {<(x - alpha x^{q^2}, x^q - beta x^{q^2})>}.
pub fn l_alpha_beta(ctx: &FieldCtx, params: &LinSetParams) -> Result<LinearSet> {
    let (f0, f1) = params.maps(ctx);
    LinearSet::from_maps(ctx, &f0, &f1)
}

/// eta x^{q^s} + x^{q^{5-s}}.
pub fn f_s_eta(s: u32, eta: Fq5Elem) -> Result<QPoly> {
    if s != 1 && s != 2 {
        return Err(Error::Precondition(format!("s must be 1 or 2, got {s}")));
    }
    let mut a = [Fq5Elem::ZERO; 5];
    a[s as usize] = eta;
    a[5 - s as usize] = Fq5Elem::ONE;
    Ok(QPoly::new(a))
}

/// L_s^eta = {<(x, eta x^{q^s} + x^{q^{5-s}})>}, s in {1, 2}.
pub fn l_s_eta(ctx: &FieldCtx, s: u32, eta: Fq5Elem) -> Result<LinearSet> {
    LinearSet::of_qpoly(ctx, &f_s_eta(s, eta)?)
}
