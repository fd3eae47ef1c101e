//! Numeric checks behind the existence arguments: norm equation solvability,
//! the binomial witness construction, the quartic curve, a determinant
//! identity, the Slavov bound and two resultant identities.

mod quartic;
mod resultant;

pub use quartic::{quartic_point, QuarticParams, QUARTIC_TERMS};
pub use resultant::{
    closed_form, perturbed_closed_form, res_euclid, res_sylvester, resultant_check_against,
    resultant_identity_check, resultant_pair, ModPoly, ResultantReport,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{self, FieldCtx, Fq5Elem};
use crate::linpoly::QPoly;

/// One verification outcome as emitted in reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub check: String,
    pub q: u32,
    pub params: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<serde_json::Value>,
    pub pass: bool,
}

/// x in F_{q^5} \ F_q with N(x^{q^2} - x) = a N(x^q - x), first in integer order.
pub fn eq5_solvable(ctx: &FieldCtx, a: Fq5Elem) -> Result<Option<Fq5Elem>> {
    if a.is_zero() || !ctx.in_subfield(a) {
        return Err(Error::NotInSubfield(ctx.to_int(a) as u64));
    }
    Ok(ctx.elements().find(|&x| !ctx.in_subfield(x) && eq5_holds(ctx, a, x)))
}

fn eq5_holds(ctx: &FieldCtx, a: Fq5Elem, x: Fq5Elem) -> bool {
    let lhs = ctx.norm(ctx.sub(ctx.frob(x, 2), x));
    let rhs = ctx.mul(a, ctx.norm(ctx.sub(ctx.frob(x, 1), x)));
    lhs == rhs
}

/// eq5 solutions for every a in F_q*, indexed by a's position in `subfield()`.
pub struct Eq5Table {
    sols: Vec<Option<Fq5Elem>>,
}

impl Eq5Table {
    pub fn new(ctx: &FieldCtx) -> Eq5Table {
        let mut sols = vec![None];
        for &a in ctx.subfield().iter().skip(1) {
            sols.push(eq5_solvable(ctx, a).expect("a in F_q*"));
        }
        Eq5Table { sols }
    }

    pub fn get(&self, ctx: &FieldCtx, a: Fq5Elem) -> Option<Fq5Elem> {
        // subfield() lists 0 then g^{j m}
        let m = ctx.norm_exponent() as u32;
        a.log().and_then(|l| self.sols[(l / m) as usize + 1])
    }

    pub fn failures(&self) -> usize {
        self.sols.iter().skip(1).filter(|s| s.is_none()).count()
    }
}

/// u, v with b = (u v^q - u^q v) / (u^{q^2} v - u v^{q^2}), and the m that
/// puts both in the kernel of m x + x^q + b x^{q^2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lem1Witness {
    pub x: Fq5Elem,
    pub u: Fq5Elem,
    pub v: Fq5Elem,
    pub m: Fq5Elem,
}

pub fn lem1_witness(ctx: &FieldCtx, b: Fq5Elem) -> Result<Option<Lem1Witness>> {
    if b.is_zero() {
        return Err(Error::Precondition("b must be nonzero".into()));
    }
    let Some(x) = eq5_solvable(ctx, eq5_parameter(ctx, b))? else {
        return Ok(None);
    };
    Ok(lem1_from_x(ctx, b, x))
}

/// -1 / N(b): the value of a for which -b (x^{q^2} - x) / (x^q - x) has norm 1.
pub fn eq5_parameter(ctx: &FieldCtx, b: Fq5Elem) -> Fq5Elem {
    ctx.neg(ctx.inv(ctx.norm(b)))
}

/// Same construction with eq5 solutions taken from a precomputed table.
pub fn lem1_witness_cached(ctx: &FieldCtx, table: &Eq5Table, b: Fq5Elem) -> Option<Lem1Witness> {
    if b.is_zero() {
        return None;
    }
    let x = table.get(ctx, eq5_parameter(ctx, b))?;
    lem1_from_x(ctx, b, x)
}

fn lem1_from_x(ctx: &FieldCtx, b: Fq5Elem, x: Fq5Elem) -> Option<Lem1Witness> {
    let xq = ctx.frob(x, 1);
    let xq2 = ctx.frob(x, 2);
    // y^{q-1} = -b (x^{q^2} - x) / (x^q - x)
    let z = ctx.neg(ctx.div(ctx.mul(b, ctx.sub(xq2, x)), ctx.sub(xq, x)));
    let lz = z.log()?;
    let q1 = ctx.q() - 1;
    if lz % q1 != 0 {
        return None;
    }
    let y = ctx.g_pow((lz / q1) as u64);
    // v^q = 1/y
    let v = ctx.frob(ctx.inv(y), 4);
    let u = ctx.mul(v, x);
    let (uq, uq2, vq, vq2) = (ctx.frob(u, 1), ctx.frob(u, 2), ctx.frob(v, 1), ctx.frob(v, 2));
    let den = ctx.sub(ctx.mul(uq2, v), ctx.mul(u, vq2));
    if den.is_zero() {
        return None;
    }
    let m = ctx.div(ctx.sub(ctx.mul(uq, vq2), ctx.mul(uq2, vq)), den);
    Some(Lem1Witness { x, u, v, m })
}

impl Lem1Witness {
    /// b (u^{q^2} v - u v^{q^2}) = u v^q - u^q v with u v^q - u^q v != 0.
    pub fn satisfies_eq1(&self, ctx: &FieldCtx, b: Fq5Elem) -> bool {
        let (u, v) = (self.u, self.v);
        let rhs = ctx.sub(ctx.mul(u, ctx.frob(v, 1)), ctx.mul(ctx.frob(u, 1), v));
        let lhs = ctx.mul(b, ctx.sub(ctx.mul(ctx.frob(u, 2), v), ctx.mul(u, ctx.frob(v, 2))));
        !rhs.is_zero() && lhs == rhs
    }

    /// m x + x^q + b x^{q^2}.
    pub fn h(&self, b: Fq5Elem) -> QPoly {
        QPoly::new([self.m, Fq5Elem::ONE, b, Fq5Elem::ZERO, Fq5Elem::ZERO])
    }

    /// u, v independent over F_q and both roots of `h`: the point <(1, -m)>
    /// of {<(x, x^q + b x^{q^2})>} has weight at least two.
    pub fn kills_binomial(&self, ctx: &FieldCtx, b: Fq5Elem) -> bool {
        let h = self.h(b);
        !self.v.is_zero()
            && !ctx.in_subfield(ctx.div(self.u, self.v))
            && h.eval(ctx, self.u).is_zero()
            && h.eval(ctx, self.v).is_zero()
    }
}

/// The 5x5 determinant attached to a x^{q^2} + x^{q^3}, and N(a)^2 - N(a) + 1.
pub fn det_height_identity(ctx: &FieldCtx, a: Fq5Elem) -> (Fq5Elem, Fq5Elem) {
    let m = det_height_matrix(ctx, a);
    let n = ctx.el(ctx.norm(a));
    (gf::det(ctx, &m), (n * n - n + n.one()).v)
}

pub fn det_height_matrix(ctx: &FieldCtx, a: Fq5Elem) -> gf::Matrix {
    let q = ctx.q() as u64;
    let f = |i: u32| ctx.frob(a, i);
    let ap = |c: [u32; 5]| ctx.pow(a, gf::q_exponent(q as u32, c));
    let o = ctx.one();
    let z = ctx.zero();
    let n = |x: Fq5Elem| ctx.neg(x);
    vec![
        vec![z, z, o, n(a), ap([1, 1, 0, 0, 0])],
        vec![ap([0, 1, 1, 0, 0]), z, z, o, n(f(1))],
        vec![n(f(2)), ap([0, 0, 1, 1, 0]), z, z, o],
        vec![o, n(f(3)), ap([0, 0, 0, 1, 1]), z, z],
        vec![z, o, n(f(4)), ap([1, 0, 0, 0, 1]), z],
    ]
}

/// floor( ((d-1)(d-2) + sqrt((d-1)^2 (d-2)^2 + 4(d^2 + d e + 10)))^2 / 4 ).
pub fn slavov_bound(d: u64, e: u64) -> Result<u64> {
    if d < 2 {
        return Err(Error::Precondition(format!("degree d must be at least 2, got {d}")));
    }
    let a = ((d - 1) * (d - 2)) as u128;
    let b = a * a + 4 * (d * d + d * e + 10) as u128;
    // (a + sqrt b)^2 = a^2 + b + sqrt(4 a^2 b)
    let s = (4 * a * a * b).isqrt();
    Ok(((a * a + b + s) / 4) as u64)
}

/// Smallest prime power strictly greater than n.
pub fn next_prime_power_above(n: u64) -> u64 {
    (n + 1..).find(|&k| gf::prime_power(k).is_some()).expect("prime powers are unbounded")
}
