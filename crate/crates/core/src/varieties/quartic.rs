//! The plane quartic F(X, Y) attached to (alpha, beta); its points of type
//! (l, l^q) correspond to solutions of the characterisation system.

use crate::error::{Error, Result};
use crate::gf::{q_exponent, FieldCtx, Fq5Elem};

const N: [u32; 5] = [1, 1, 1, 1, 1];
const O: [u32; 5] = [0, 0, 0, 0, 0];

/// (coefficient, deg X, deg Y, alpha exponent, beta exponent); exponents are
/// digit vectors c with value c0 + c1 q + ... + c4 q^4.
pub type QuarticTerm = (i64, u32, u32, [u32; 5], [u32; 5]);

#[rustfmt::skip]
pub const QUARTIC_TERMS: [QuarticTerm; 51] = [
    // X^2 Y^2
    ( 1, 2, 2, [0, 0, 1, 2, 1], [1, 1, 1, 0, 0]),
    (-1, 2, 2, [0, 0, 2, 2, 1], [1, 0, 0, 0, 0]),
    (-1, 2, 2, [0, 0, 0, 1, 0], [0, 1, 2, 1, 0]),
    ( 1, 2, 2, [0, 0, 1, 1, 0], [0, 0, 1, 1, 0]),
    // X^2 Y
    ( 1, 2, 1, [0, 0, 1, 1, 0], N),
    (-2, 2, 1, [0, 0, 1, 1, 1], [1, 1, 1, 0, 0]),
    (-1, 2, 1, [0, 0, 2, 1, 0], [1, 0, 0, 1, 1]),
    ( 2, 2, 1, [0, 0, 2, 1, 1], [1, 0, 0, 0, 0]),
    ( 1, 2, 1, O,               [0, 1, 2, 1, 0]),
    (-1, 2, 1, [0, 0, 1, 0, 0], [0, 0, 1, 1, 0]),
    // X^2
    (-1, 2, 0, [0, 0, 1, 0, 0], N),
    ( 1, 2, 0, [0, 0, 1, 0, 1], [1, 1, 1, 0, 0]),
    ( 1, 2, 0, [0, 0, 2, 0, 0], [1, 0, 0, 1, 1]),
    (-1, 2, 0, [0, 0, 2, 0, 1], [1, 0, 0, 0, 0]),
    // X Y^2
    ( 1, 1, 2, [0, 0, 0, 1, 1], [1, 1, 2, 1, 0]),
    (-1, 1, 2, [0, 0, 0, 2, 1], [1, 1, 1, 0, 0]),
    (-2, 1, 2, [0, 0, 1, 1, 1], [1, 0, 1, 1, 0]),
    ( 2, 1, 2, [0, 0, 1, 2, 1], [1, 0, 0, 0, 0]),
    ( 1, 1, 2, O,               [0, 0, 2, 2, 0]),
    (-1, 1, 2, [0, 0, 0, 1, 0], [0, 0, 1, 1, 0]),
    // X Y
    ( 1, 1, 1, O,               [1, 1, 2, 2, 1]),
    (-1, 1, 1, [0, 0, 0, 0, 1], [1, 1, 2, 1, 0]),
    (-1, 1, 1, [0, 0, 0, 1, 0], N),
    ( 2, 1, 1, [0, 0, 0, 1, 1], [1, 1, 1, 0, 0]),
    (-1, 1, 1, [0, 0, 1, 0, 0], [1, 0, 1, 2, 1]),
    ( 2, 1, 1, [0, 0, 1, 0, 1], [1, 0, 1, 1, 0]),
    ( 2, 1, 1, [0, 0, 1, 1, 0], [1, 0, 0, 1, 1]),
    (-4, 1, 1, [0, 0, 1, 1, 1], [1, 0, 0, 0, 0]),
    (-1, 1, 1, [1, 0, 0, 0, 0], [0, 1, 2, 2, 0]),
    (-1, 1, 1, [0, 1, 0, 0, 0], [0, 0, 2, 2, 1]),
    ( 1, 1, 1, N,               [0, 0, 1, 1, 0]),
    ( 1, 1, 1, O,               [0, 0, 1, 1, 0]),
    // X
    ( 1, 1, 0, O,               N),
    (-1, 1, 0, [0, 0, 0, 0, 1], [1, 1, 1, 0, 0]),
    (-2, 1, 0, [0, 0, 1, 0, 0], [1, 0, 0, 1, 1]),
    ( 2, 1, 0, [0, 0, 1, 0, 1], [1, 0, 0, 0, 0]),
    ( 1, 1, 0, [1, 1, 1, 0, 0], [0, 0, 1, 2, 1]),
    (-1, 1, 0, [1, 1, 1, 0, 1], [0, 0, 1, 1, 0]),
    // Y^2
    (-1, 0, 2, [0, 0, 0, 0, 1], [1, 0, 2, 2, 0]),
    ( 2, 0, 2, [0, 0, 0, 1, 1], [1, 0, 1, 1, 0]),
    (-1, 0, 2, [0, 0, 0, 2, 1], [1, 0, 0, 0, 0]),
    // Y
    ( 1, 0, 1, O,               [1, 0, 1, 2, 1]),
    (-2, 0, 1, [0, 0, 0, 0, 1], [1, 0, 1, 1, 0]),
    (-1, 0, 1, [0, 0, 0, 1, 0], [1, 0, 0, 1, 1]),
    ( 2, 0, 1, [0, 0, 0, 1, 1], [1, 0, 0, 0, 0]),
    ( 1, 0, 1, [1, 1, 0, 0, 1], [0, 0, 2, 2, 0]),
    (-1, 0, 1, [1, 1, 0, 1, 1], [0, 0, 1, 1, 0]),
    // 1
    ( 1, 0, 0, O,               [1, 0, 0, 1, 1]),
    (-1, 0, 0, [0, 0, 0, 0, 1], [1, 0, 0, 0, 0]),
    (-1, 0, 0, [1, 1, 0, 0, 0], [0, 0, 1, 2, 1]),
    ( 1, 0, 0, [1, 1, 0, 0, 1], [0, 0, 1, 1, 0]),
];

/// F(X, Y) with its coefficients evaluated: `c[i][j]` multiplies X^i Y^j.
#[derive(Clone, Debug)]
pub struct QuarticParams {
    pub alpha: Fq5Elem,
    pub beta: Fq5Elem,
    pub c: [[Fq5Elem; 3]; 3],
}

impl QuarticParams {
    /// Needs beta != 0 and alpha^q / beta^{q+1} outside F_q.
    pub fn new(ctx: &FieldCtx, alpha: Fq5Elem, beta: Fq5Elem) -> Result<QuarticParams> {
        if beta.is_zero() {
            return Err(Error::Precondition("quartic needs beta != 0".into()));
        }
        let lambda = ctx.div(ctx.frob(alpha, 1), ctx.pow(beta, ctx.q() as u64 + 1));
        if ctx.in_subfield(lambda) {
            return Err(Error::Precondition("quartic needs alpha^q / beta^{q+1} outside F_q".into()));
        }
        Ok(QuarticParams::unchecked(ctx, alpha, beta))
    }

    /// Coefficients without the parameter restrictions.
    pub fn unchecked(ctx: &FieldCtx, alpha: Fq5Elem, beta: Fq5Elem) -> QuarticParams {
        let q = ctx.q();
        let mut c = [[Fq5Elem::ZERO; 3]; 3];
        for &(k, dx, dy, ea, eb) in QUARTIC_TERMS.iter() {
            let mono = ctx.mul(ctx.pow(alpha, q_exponent(q, ea)), ctx.pow(beta, q_exponent(q, eb)));
            let kf = ctx.el(mono).int(k);
            let slot = &mut c[dx as usize][dy as usize];
            *slot = ctx.add(*slot, ctx.mul(kf.v, mono));
        }
        QuarticParams { alpha, beta, c }
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Fq5Elem, y: Fq5Elem) -> Fq5Elem {
        let xs = [Fq5Elem::ONE, x, ctx.mul(x, x)];
        let ys = [Fq5Elem::ONE, y, ctx.mul(y, y)];
        let mut acc = Fq5Elem::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                let c = self.c[i][j];
                if !c.is_zero() {
                    acc = ctx.add(acc, ctx.mul(c, ctx.mul(xs[i], ys[j])));
                }
            }
        }
        acc
    }
}

/// First l in integer order with F(l, l^q) = 0.
pub fn quartic_point(ctx: &FieldCtx, params: &QuarticParams) -> Option<Fq5Elem> {
    ctx.elements().find(|&l| params.eval(ctx, l, ctx.frob(l, 1)).is_zero())
}
