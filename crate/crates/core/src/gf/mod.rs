//! Exact arithmetic in F_p ⊂ F_q ⊂ F_{q^5}.
//!
//! F_{q^5} is built as a single extension F_p[t]/(modulus) of degree 5e. After
//! construction every element is held as its discrete logarithm to a fixed
//! primitive element `g`, so multiplication, powers, the q-Frobenius and the
//! norm are exponent arithmetic and addition goes through a Zech table.
//! The coefficient vector of an element (its external identity) is recovered
//! through the antilog table.

mod linalg;
pub(crate) mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use linalg::{det, det_by_expansion, inverse, rank, Matrix};

use crate::error::{Error, Result};

/// Largest supported q^5. Three u32 tables of this size are kept per context.
pub const MAX_ORDER: u64 = 1 << 24;

const ZERO_LOG: u32 = u32::MAX;

/// An element of F_{q^5}, stored as `log_g` (or a sentinel for zero).
///
/// Values are only meaningful together with the [`FieldCtx`] that produced
/// them. Equality is field equality within one context.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq5Elem(u32);

impl Fq5Elem {
    pub const ZERO: Fq5Elem = Fq5Elem(ZERO_LOG);
    pub const ONE: Fq5Elem = Fq5Elem(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == ZERO_LOG
    }

    /// Discrete log to the context generator, `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

impl fmt::Debug for Fq5Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(k) => write!(f, "g^{k}"),
        }
    }
}

/// The tower F_p ⊂ F_q ⊂ F_{q^5} with its canonical choices.
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    n: usize,
    order: u32,
    modulus: Vec<u32>,
    generator_int: u32,
    gamma: Fq5Elem,
    frob_q: Vec<Vec<u32>>,
    /// exp[k] = integer encoding of g^k, k < order - 1
    exp: Vec<u32>,
    /// log[c] = k with g^k = c, sentinel at c = 0
    log: Vec<u32>,
    /// zech[k] = log(1 + g^k)
    zech: Vec<u32>,
    q_pow: [u64; 5],
    norm_exp: u64,
    half: u32,
    moore_inv: [[Fq5Elem; 5]; 5],
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator_int)
            .field("gamma", &self.to_int(self.gamma))
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, e))` when `q = p^e` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldCtx {
    /// Builds F_{q^5} for q = p^e.
    ///
    /// The modulus is the monic irreducible of degree 5e whose lower
    /// coefficients, read as a base-p integer, are smallest; the generator is
    /// the smallest primitive element and gamma the smallest normal element,
    /// both ordered by their integer encoding.
    pub fn new(p: u32, e: u32) -> Result<FieldCtx> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidDegree(e));
        }
        let n = 5 * e as usize;
        let order = (p as u64).checked_pow(n as u32).filter(|&o| o <= MAX_ORDER);
        let Some(order) = order else {
            return Err(Error::FieldTooLarge { p, e });
        };
        let q = p.pow(e);

        let modulus = (0..(p as u64).pow(n as u32))
            .map(|c| {
                let mut f = poly::digits(c, p, n);
                f.push(1);
                f
            })
            .find(|f| poly::is_irreducible(f, p))
            .ok_or(Error::Internal("no irreducible polynomial found".into()))?;

        let group = order - 1;
        let factors = prime_factors(group);
        let one: poly::FpPoly = vec![1];
        let generator_int = (1..order)
            .find(|&c| {
                let mut g = poly::digits(c, p, n);
                poly::trim(&mut g);
                factors
                    .iter()
                    .all(|r| poly::pow_mod(&g, group / r, &modulus, p) != one)
            })
            .ok_or(Error::Internal("no primitive element found".into()))?;

        // Multiplication by g as an F_p-linear map: column j = g * t^j.
        let g_poly = poly::digits(generator_int, p, n);
        let mul_g: Vec<Vec<u32>> = (0..n)
            .map(|j| {
                let mut tj = vec![0u32; j + 1];
                tj[j] = 1;
                let mut col = poly::mul_mod(&g_poly, &tj, &modulus, p);
                col.resize(n, 0);
                col
            })
            .collect();

        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![ZERO_LOG; order as usize];
        let mut cur = vec![0u32; n];
        cur[0] = 1;
        let mut next = vec![0u64; n];
        for k in 0..group as u32 {
            let v = poly::from_digits(&cur, p) as u32;
            if log[v as usize] != ZERO_LOG {
                return Err(Error::Internal("generator is not primitive".into()));
            }
            log[v as usize] = k;
            exp.push(v);
            next.iter_mut().for_each(|x| *x = 0);
            for (j, &cj) in cur.iter().enumerate() {
                if cj == 0 {
                    continue;
                }
                for (i, &gij) in mul_g[j].iter().enumerate() {
                    next[i] += cj as u64 * gij as u64;
                }
            }
            for (c, &x) in cur.iter_mut().zip(next.iter()) {
                *c = (x % p as u64) as u32;
            }
        }

        let zech: Vec<u32> = exp
            .iter()
            .map(|&v| {
                let c0 = v % p;
                let w = v - c0 + (c0 + 1) % p;
                log[w as usize]
            })
            .collect();

        let mut q_pow = [1u64; 5];
        for i in 1..5 {
            q_pow[i] = q_pow[i - 1] * q as u64;
        }
        let norm_exp = q_pow.iter().sum();
        let half = if p == 2 { 0 } else { (group / 2) as u32 };

        let mut ctx = FieldCtx {
            p,
            e,
            q,
            n,
            order: order as u32,
            modulus,
            generator_int: generator_int as u32,
            gamma: Fq5Elem::ZERO,
            frob_q: Vec::new(),
            exp,
            log,
            zech,
            q_pow,
            norm_exp,
            half,
            moore_inv: [[Fq5Elem::ZERO; 5]; 5],
        };

        ctx.frob_q = (0..n)
            .map(|j| {
                let tj = ctx.from_int_unchecked((p as u64).pow(j as u32) as u32);
                let img = ctx.frob(tj, 1);
                poly::digits(ctx.to_int(img) as u64, p, n)
            })
            .collect();

        let (gamma, minv) = (1..ctx.order)
            .map(|c| ctx.from_int_unchecked(c))
            .find_map(|c| inverse(&ctx, &ctx.moore_matrix(c)).map(|inv| (c, inv)))
            .ok_or(Error::Internal("no normal element found".into()))?;
        ctx.gamma = gamma;
        for (i, row) in minv.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                ctx.moore_inv[i][j] = v;
            }
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// q^5.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Extension degree 5e of F_{q^5} over F_p.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Monic modulus coefficients, constant term first, length 5e + 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fq5Elem {
        Fq5Elem(1)
    }

    pub fn gamma(&self) -> Fq5Elem {
        self.gamma
    }

    /// m = (q^5 - 1)/(q - 1) = 1 + q + q^2 + q^3 + q^4.
    pub fn norm_exponent(&self) -> u64 {
        self.norm_exp
    }

    /// The x -> x^q map as a 5e x 5e matrix over F_p acting on coefficient
    /// columns; entry `[j][i]` is coefficient i of (t^j)^q.
    pub fn frob_matrix(&self) -> &[Vec<u32>] {
        &self.frob_q
    }

    #[inline]
    pub fn zero(&self) -> Fq5Elem {
        Fq5Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Fq5Elem {
        Fq5Elem::ONE
    }

    #[inline]
    fn group(&self) -> u32 {
        self.order - 1
    }

    /// g^k.
    #[inline]
    pub fn g_pow(&self, k: u64) -> Fq5Elem {
        Fq5Elem((k % self.group() as u64) as u32)
    }

    /// Integer encoding: coefficients as base-p digits, constant term least significant.
    #[inline]
    pub fn to_int(&self, x: Fq5Elem) -> u32 {
        match x.log() {
            None => 0,
            Some(k) => self.exp[k as usize],
        }
    }

    #[inline]
    fn from_int_unchecked(&self, v: u32) -> Fq5Elem {
        Fq5Elem(self.log[v as usize])
    }

    pub fn from_int(&self, v: u64) -> Result<Fq5Elem> {
        if v >= self.order as u64 {
            return Err(Error::ElementOutOfRange { value: v, order: self.order as u64 });
        }
        Ok(self.from_int_unchecked(v as u32))
    }

    /// Coefficient vector over F_p, length 5e.
    pub fn coeffs(&self, x: Fq5Elem) -> Vec<u32> {
        poly::digits(self.to_int(x) as u64, self.p, self.n)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fq5Elem> {
        if c.len() != self.n || c.iter().any(|&d| d >= self.p) {
            return Err(Error::Parse(format!(
                "coefficient vector must have {} entries in [0, {})",
                self.n, self.p
            )));
        }
        Ok(self.from_int_unchecked(poly::from_digits(c, self.p) as u32))
    }

    /// Integer n < p viewed as an element of the prime field.
    pub fn fp(&self, n: u64) -> Fq5Elem {
        self.from_int_unchecked((n % self.p as u64) as u32)
    }

    /// Every element of F_{q^5} in integer-encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fq5Elem> + '_ {
        (0..self.order).map(move |v| self.from_int_unchecked(v))
    }

    /// The q elements of F_q: zero, then g^{jm} for j = 0..q-2.
    pub fn subfield(&self) -> Vec<Fq5Elem> {
        let mut out = vec![Fq5Elem::ZERO];
        out.extend((0..self.q as u64 - 1).map(|j| self.g_pow(j * self.norm_exp)));
        out
    }

    #[inline]
    pub fn in_subfield(&self, x: Fq5Elem) -> bool {
        match x.log() {
            None => true,
            Some(k) => (k as u64).is_multiple_of(self.norm_exp),
        }
    }

    #[inline]
    pub fn mul(&self, a: Fq5Elem, b: Fq5Elem) -> Fq5Elem {
        if a.is_zero() || b.is_zero() {
            return Fq5Elem::ZERO;
        }
        let s = a.0 + b.0;
        let g = self.group();
        Fq5Elem(if s >= g { s - g } else { s })
    }

    #[inline]
    pub fn add(&self, a: Fq5Elem, b: Fq5Elem) -> Fq5Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let g = self.group();
        let d = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + g - a.0 };
        let z = self.zech[d as usize];
        if z == ZERO_LOG {
            return Fq5Elem::ZERO;
        }
        let s = a.0 + z;
        Fq5Elem(if s >= g { s - g } else { s })
    }

    #[inline]
    pub fn neg(&self, a: Fq5Elem) -> Fq5Elem {
        if a.is_zero() || self.half == 0 {
            return a;
        }
        let s = a.0 + self.half;
        let g = self.group();
        Fq5Elem(if s >= g { s - g } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fq5Elem, b: Fq5Elem) -> Fq5Elem {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Fq5Elem) -> Fq5Elem {
        assert!(!a.is_zero(), "inverse of zero");
        if a.0 == 0 {
            a
        } else {
            Fq5Elem(self.group() - a.0)
        }
    }

    pub fn checked_inv(&self, a: Fq5Elem) -> Option<Fq5Elem> {
        (!a.is_zero()).then(|| self.inv(a))
    }

    /// a / b; panics when b is zero.
    #[inline]
    pub fn div(&self, a: Fq5Elem, b: Fq5Elem) -> Fq5Elem {
        self.mul(a, self.inv(b))
    }

    /// a^n with the convention 0^0 = 1.
    #[inline]
    pub fn pow(&self, a: Fq5Elem, n: u64) -> Fq5Elem {
        if n == 0 {
            return Fq5Elem::ONE;
        }
        match a.log() {
            None => Fq5Elem::ZERO,
            Some(k) => Fq5Elem((k as u64 * (n % self.group() as u64) % self.group() as u64) as u32),
        }
    }

    /// x^{q^i}, i taken mod 5.
    #[inline]
    pub fn frob(&self, x: Fq5Elem, i: u32) -> Fq5Elem {
        match x.log() {
            None => x,
            Some(k) => {
                Fq5Elem((k as u64 * self.q_pow[(i % 5) as usize] % self.group() as u64) as u32)
            }
        }
    }

    /// Applies the stored F_p-matrix of x -> x^q to the coefficients of `x`.
    pub fn frob_by_matrix(&self, x: Fq5Elem) -> Fq5Elem {
        let c = self.coeffs(x);
        let mut out = vec![0u64; self.n];
        for (j, &cj) in c.iter().enumerate() {
            for (i, &fij) in self.frob_q[j].iter().enumerate() {
                out[i] += cj as u64 * fij as u64;
            }
        }
        let out: Vec<u32> = out.into_iter().map(|v| (v % self.p as u64) as u32).collect();
        self.from_int_unchecked(poly::from_digits(&out, self.p) as u32)
    }

    /// N(x) = x^{1+q+q^2+q^3+q^4}, an element of F_q.
    #[inline]
    pub fn norm(&self, x: Fq5Elem) -> Fq5Elem {
        self.pow(x, self.norm_exp)
    }

    /// Tr(x) = x + x^q + ... + x^{q^4}, an element of F_q.
    pub fn trace(&self, x: Fq5Elem) -> Fq5Elem {
        (0..5).fold(Fq5Elem::ZERO, |acc, i| self.add(acc, self.frob(x, i)))
    }

    /// Moore matrix of x: entry (i, j) = x^{q^{i+j}}.
    pub fn moore_matrix(&self, x: Fq5Elem) -> Matrix {
        (0..5)
            .map(|i| (0..5).map(|j| self.frob(x, i + j)).collect())
            .collect()
    }

    /// Coordinates of `y` over F_q in the normal basis {gamma^{q^j}}.
    pub fn normal_coords(&self, y: Fq5Elem) -> [Fq5Elem; 5] {
        let conj: [Fq5Elem; 5] = std::array::from_fn(|i| self.frob(y, i as u32));
        std::array::from_fn(|j| {
            (0..5).fold(Fq5Elem::ZERO, |acc, i| {
                self.add(acc, self.mul(self.moore_inv[j][i], conj[i]))
            })
        })
    }

    /// gamma^{q^j}.
    pub fn normal_basis(&self) -> [Fq5Elem; 5] {
        std::array::from_fn(|j| self.frob(self.gamma, j as u32))
    }

    /// The x with N(x) = c, in the order g^{k0 + j(q-1)}, j = 0, 1, ...
    pub fn elements_of_norm(&self, c: Fq5Elem) -> Result<NormFiber> {
        if !self.in_subfield(c) {
            return Err(Error::NotInSubfield(self.to_int(c) as u64));
        }
        let q1 = self.q as u64 - 1;
        Ok(match c.log() {
            None => NormFiber { start: 0, step: 0, remaining: 1, group: 1, zero: true },
            Some(l) => NormFiber {
                start: (l as u64 / self.norm_exp) % q1,
                step: q1,
                remaining: self.norm_exp,
                group: self.group() as u64,
                zero: false,
            },
        })
    }

    /// Parses the element text encoding: a decimal integer in [0, q^5) read
    /// as base-p coefficient digits, or `g^k`.
    pub fn parse_elem(&self, s: &str) -> Result<Fq5Elem> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix("g^") {
            let k: u64 = parse_decimal(k)?;
            return Ok(self.g_pow(k));
        }
        let v = parse_decimal(s)?;
        self.from_int(v)
    }

    pub fn format_elem(&self, x: Fq5Elem) -> String {
        self.to_int(x).to_string()
    }

    /// Wraps an element for operator syntax.
    #[inline]
    pub fn el(&self, v: Fq5Elem) -> El<'_> {
        El { ctx: self, v }
    }
}

fn parse_decimal(s: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("invalid element literal {s:?}")));
    }
    s.parse::<u64>()
        .map_err(|_| Error::Parse(format!("element literal out of range: {s:?}")))
}

/// Iterator over a norm fiber, see [`FieldCtx::elements_of_norm`].
#[derive(Clone, Debug)]
pub struct NormFiber {
    start: u64,
    step: u64,
    remaining: u64,
    group: u64,
    zero: bool,
}

impl Iterator for NormFiber {
    type Item = Fq5Elem;

    fn next(&mut self) -> Option<Fq5Elem> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        if self.zero {
            return Some(Fq5Elem::ZERO);
        }
        let k = self.start;
        self.start = (self.start + self.step) % self.group;
        Some(Fq5Elem(k as u32))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

impl ExactSizeIterator for NormFiber {}

/// An element bundled with its context, so formulas can use operators.
#[derive(Clone, Copy)]
pub struct El<'a> {
    ctx: &'a FieldCtx,
    pub v: Fq5Elem,
}

impl<'a> El<'a> {
    pub fn pow(self, n: u64) -> El<'a> {
        self.ctx.el(self.ctx.pow(self.v, n))
    }

    pub fn frob(self, i: u32) -> El<'a> {
        self.ctx.el(self.ctx.frob(self.v, i))
    }

    pub fn norm(self) -> El<'a> {
        self.ctx.el(self.ctx.norm(self.v))
    }

    pub fn inv(self) -> El<'a> {
        self.ctx.el(self.ctx.inv(self.v))
    }

    pub fn is_zero(self) -> bool {
        self.v.is_zero()
    }

    pub fn one(self) -> El<'a> {
        self.ctx.el(Fq5Elem::ONE)
    }

    /// The integer n as a prime-field element.
    pub fn int(self, n: i64) -> El<'a> {
        let p = self.ctx.p as i64;
        self.ctx.el(self.ctx.fp(n.rem_euclid(p) as u64))
    }
}

impl PartialEq for El<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl fmt::Debug for El<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx.to_int(self.v))
    }
}

macro_rules! el_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<'a> $tr for El<'a> {
            type Output = El<'a>;
            #[inline]
            fn $m(self, rhs: El<'a>) -> El<'a> {
                self.ctx.el(self.ctx.$f(self.v, rhs.v))
            }
        }
    };
}

el_binop!(Add, add, add);
el_binop!(Sub, sub, sub);
el_binop!(Mul, mul, mul);
el_binop!(Div, div, div);

impl<'a> Neg for El<'a> {
    type Output = El<'a>;
    fn neg(self) -> El<'a> {
        self.ctx.el(self.ctx.neg(self.v))
    }
}

/// Exponent c0 + c1 q + c2 q^2 + c3 q^3 + c4 q^4 as an integer.
pub fn q_exponent(q: u32, c: [u32; 5]) -> u64 {
    c.iter().rev().fold(0u64, |acc, &ci| acc * q as u64 + ci as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_pow(ctx: &FieldCtx, x: Fq5Elem, n: u64) -> Fq5Elem {
        (0..n).fold(ctx.one(), |acc, _| ctx.mul(acc, x))
    }

    #[test]
    fn smallest_case_q2() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        assert_eq!(ctx.q(), 2);
        assert_eq!(ctx.order(), 32);
        assert_eq!(ctx.modulus().len(), 6);
        assert_eq!(ctx.modulus(), &[1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn generator_order_q3() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let g = ctx.generator();
        let mut x = g;
        let mut ord = 1;
        while x != ctx.one() {
            x = ctx.mul(x, g);
            ord += 1;
        }
        assert_eq!(ord, 242);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(FieldCtx::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(FieldCtx::new(2, 0), Err(Error::InvalidDegree(0))));
        assert!(matches!(FieldCtx::new(37, 1), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn frob_matrix_fifth_power_is_identity_q4() {
        let ctx = FieldCtx::new(2, 2).unwrap();
        let n = ctx.degree();
        assert_eq!(n, 10);
        // M[i][j] = coefficient i of (t^j)^q
        let m: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|j| ctx.frob_matrix()[j][i] as u64).collect())
            .collect();
        let matmul = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u64>() % 2).collect())
                .collect()
        };
        let mut acc = m.clone();
        for _ in 0..4 {
            acc = matmul(&acc, &m);
        }
        for (i, row) in acc.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, (i == j) as u64);
            }
        }
        // and it agrees with the table-driven Frobenius
        for x in ctx.elements() {
            assert_eq!(ctx.frob_by_matrix(x), ctx.frob(x, 1));
        }
    }

    #[test]
    fn frobenius_examples() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let g = ctx.generator();
        assert_eq!(ctx.frob(g, 0), g);
        assert_eq!(ctx.frob(g, 5), g);
        assert_eq!(ctx.frob(g, 1), ctx.mul(g, g));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let g = ctx.generator();
        assert_eq!(ctx.norm(g), naive_pow(&ctx, g, 121));
        let n = ctx.norm(g);
        assert!(ctx.in_subfield(n));
        assert_eq!(ctx.mul(n, n), ctx.one());
        assert_ne!(n, ctx.one());
    }

    #[test]
    fn norm_examples() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        assert_eq!(ctx.norm(ctx.one()), ctx.one());
        assert_eq!(ctx.norm(ctx.zero()), ctx.zero());
        for x in ctx.elements().skip(1) {
            assert_eq!(ctx.norm(x), ctx.one());
        }
    }

    #[test]
    fn trace_examples() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (2, 2)] {
            let ctx = FieldCtx::new(p, e).unwrap();
            assert_eq!(ctx.trace(ctx.zero()), ctx.zero());
            let five = ctx.fp(5);
            for c in ctx.subfield() {
                assert_eq!(ctx.trace(c), ctx.mul(five, c));
            }
            let t = ctx.trace(ctx.gamma());
            assert!(!t.is_zero() && ctx.in_subfield(t));
        }
    }

    #[test]
    fn addition_against_coefficients() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let p = ctx.p();
        for a in ctx.elements() {
            for b in ctx.elements().step_by(7) {
                let ca = ctx.coeffs(a);
                let cb = ctx.coeffs(b);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                assert_eq!(ctx.from_coeffs(&sum).unwrap(), ctx.add(a, b));
                assert_eq!(ctx.sub(ctx.add(a, b), b), a);
            }
        }
    }

    #[test]
    fn elements_of_norm_counts() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        assert_eq!(ctx.elements_of_norm(ctx.zero()).unwrap().collect::<Vec<_>>(), vec![ctx.zero()]);
        let all: Vec<_> = ctx.elements_of_norm(ctx.one()).unwrap().collect();
        assert_eq!(all.len(), 31);

        let ctx = FieldCtx::new(3, 1).unwrap();
        let m1 = ctx.neg(ctx.one());
        let fiber: Vec<_> = ctx.elements_of_norm(m1).unwrap().collect();
        let brute = ctx.elements().filter(|&x| ctx.norm(x) == m1).count();
        assert_eq!(brute, 121);
        assert_eq!(fiber.len(), 121);
        assert!(fiber.iter().all(|&x| ctx.norm(x) == m1));
        let distinct: std::collections::HashSet<_> = fiber.iter().collect();
        assert_eq!(distinct.len(), 121);

        assert!(ctx.elements_of_norm(ctx.generator()).is_err());
    }

    #[test]
    fn norm_fibers_partition_the_field() {
        for (p, e) in [(2, 1), (3, 1)] {
            let ctx = FieldCtx::new(p, e).unwrap();
            let mut seen = vec![0u32; ctx.order() as usize];
            for c in ctx.subfield() {
                for x in ctx.elements_of_norm(c).unwrap() {
                    seen[ctx.to_int(x) as usize] += 1;
                }
            }
            assert!(seen.iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn gamma_is_normal() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (7, 1)] {
            let ctx = FieldCtx::new(p, e).unwrap();
            let m = ctx.moore_matrix(ctx.gamma());
            assert!(!det(&ctx, &m).is_zero());
            assert_eq!(det(&ctx, &m), det_by_expansion(&ctx, &m));
            // coordinates reproduce the element
            let basis = ctx.normal_basis();
            for y in ctx.elements().step_by(13) {
                let c = ctx.normal_coords(y);
                assert!(c.iter().all(|&ci| ctx.in_subfield(ci)));
                let back = (0..5).fold(ctx.zero(), |acc, j| ctx.add(acc, ctx.mul(c[j], basis[j])));
                assert_eq!(back, y);
            }
        }
    }

    #[test]
    fn deterministic_choices() {
        let a = FieldCtx::new(5, 1).unwrap();
        let b = FieldCtx::new(5, 1).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.to_int(a.generator()), b.to_int(b.generator()));
        assert_eq!(a.to_int(a.gamma()), b.to_int(b.gamma()));
        // no smaller integer is primitive
        let g = a.to_int(a.generator());
        for c in 1..g {
            let x = a.from_int(c as u64).unwrap();
            let ord = (1..a.order() as u64).find(|&k| a.pow(x, k) == a.one()).unwrap();
            assert!(ord < a.order() as u64 - 1);
        }
    }

    #[test]
    fn parse_literals() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        assert_eq!(ctx.parse_elem("0").unwrap(), ctx.zero());
        assert_eq!(ctx.parse_elem("1").unwrap(), ctx.one());
        assert_eq!(ctx.parse_elem("g^0").unwrap(), ctx.one());
        assert_eq!(ctx.parse_elem("g^242").unwrap(), ctx.one());
        assert_eq!(ctx.parse_elem(" 5 ").unwrap(), ctx.from_int(5).unwrap());
        for bad in ["", "g^", "g^-1", "243", "x", "1.5", "99999999999999999999999", "g^+3"] {
            assert!(ctx.parse_elem(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn q_exponent_digits() {
        assert_eq!(q_exponent(3, [1, 1, 1, 1, 1]), 121);
        assert_eq!(q_exponent(2, [0, 1, 2, 0, 1]), 2 + 8 + 16);
    }
}
