//! q-polynomials a0 x + a1 x^q + a2 x^{q^2} + a3 x^{q^3} + a4 x^{q^4} over F_{q^5}.

use crate::error::{Error, Result};
use crate::gf::{self, FieldCtx, Fq5Elem, Matrix};

/// A linearized polynomial of q-degree at most 4. `a[i]` multiplies x^{q^i}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    pub a: [Fq5Elem; 5],
}

impl QPoly {
    pub fn new(a: [Fq5Elem; 5]) -> QPoly {
        QPoly { a }
    }

    pub fn zero() -> QPoly {
        QPoly { a: [Fq5Elem::ZERO; 5] }
    }

    /// c x^{q^i}.
    pub fn monomial(c: Fq5Elem, i: usize) -> QPoly {
        let mut a = [Fq5Elem::ZERO; 5];
        a[i % 5] = c;
        QPoly { a }
    }

    pub fn identity() -> QPoly {
        QPoly::monomial(Fq5Elem::ONE, 0)
    }

    pub fn add(&self, ctx: &FieldCtx, other: &QPoly) -> QPoly {
        QPoly { a: std::array::from_fn(|i| ctx.add(self.a[i], other.a[i])) }
    }

    #[inline]
    pub fn eval(&self, ctx: &FieldCtx, x: Fq5Elem) -> Fq5Elem {
        let mut acc = Fq5Elem::ZERO;
        for (i, &c) in self.a.iter().enumerate() {
            if !c.is_zero() {
                acc = ctx.add(acc, ctx.mul(c, ctx.frob(x, i as u32)));
            }
        }
        acc
    }

    /// Matrix over F_q in the normal basis {gamma^{q^j}}: column j holds the
    /// coordinates of f(gamma^{q^j}). Stored row-major, entries in F_q.
    pub fn matrix_of(&self, ctx: &FieldCtx) -> Matrix {
        let basis = ctx.normal_basis();
        let cols: Vec<[Fq5Elem; 5]> =
            basis.iter().map(|&b| ctx.normal_coords(self.eval(ctx, b))).collect();
        (0..5).map(|i| (0..5).map(|j| cols[j][i]).collect()).collect()
    }

    /// dim over F_q of the kernel of x -> f(x).
    pub fn kernel_dim(&self, ctx: &FieldCtx) -> usize {
        5 - gf::rank(ctx, &self.matrix_of(ctx))
    }

    /// The adjoint sum_{i=1}^{4} a_i^{q^{5-i}} x^{q^{5-i}} of a polynomial with a0 = 0.
    pub fn adjoint(&self, ctx: &FieldCtx) -> Result<QPoly> {
        if !self.a[0].is_zero() {
            return Err(Error::Precondition("adjoint needs a zero x coefficient".into()));
        }
        let mut out = [Fq5Elem::ZERO; 5];
        for i in 1..5 {
            out[5 - i] = ctx.frob(self.a[i], (5 - i) as u32);
        }
        Ok(QPoly { a: out })
    }

    /// Parses five comma-separated element literals, a0 first.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<QPoly> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 5 {
            return Err(Error::Parse(format!(
                "q-polynomial needs 5 coefficients, got {}",
                parts.len()
            )));
        }
        let mut a = [Fq5Elem::ZERO; 5];
        for (slot, part) in a.iter_mut().zip(parts) {
            *slot = ctx.parse_elem(part)?;
        }
        Ok(QPoly { a })
    }

    pub fn format(&self, ctx: &FieldCtx) -> String {
        self.a.iter().map(|&c| ctx.format_elem(c)).collect::<Vec<_>>().join(",")
    }
}

/// Kernel dimension of x -> (f_1(x), ..., f_k(x)): 5 minus the rank of the
/// stacked 5k x 5 matrix.
pub fn joint_kernel_dim(ctx: &FieldCtx, fs: &[QPoly]) -> usize {
    let stacked: Matrix = fs.iter().flat_map(|f| f.matrix_of(ctx)).collect();
    5 - gf::rank(ctx, &stacked)
}
