//! Resultant identities in one parameter lambda, tested by evaluation at
//! random points of a large prime field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::is_prime;

/// Dense polynomial over F_p, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl ModPoly {
    pub fn new(p: u64, c: Vec<u64>) -> ModPoly {
        let mut out = ModPoly { p, c: c.into_iter().map(|v| v % p).collect() };
        out.trim();
        out
    }

    pub fn constant(p: u64, v: u64) -> ModPoly {
        ModPoly::new(p, vec![v])
    }

    /// a Y + b.
    pub fn linear(p: u64, a: u64, b: u64) -> ModPoly {
        ModPoly::new(p, vec![b, a])
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with the zero polynomial at 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        ModPoly::new(self.p, c)
    }

    pub fn scale(&self, k: u64) -> ModPoly {
        ModPoly::new(self.p, self.c.iter().map(|&v| v * (k % self.p) % self.p).collect())
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        self.add(&o.scale(self.p - 1))
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::new(self.p, vec![]);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        ModPoly::new(self.p, c)
    }

    pub fn pow(&self, e: u32) -> ModPoly {
        let mut r = ModPoly::constant(self.p, 1);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Y^k times self.
    pub fn shift(&self, k: usize) -> ModPoly {
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        ModPoly::new(self.p, c)
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let inv = inv_mod(d.lead(), p);
        while r.len() >= d.c.len() && !r.is_empty() {
            let k = r.len() - d.c.len();
            let f = r[r.len() - 1] * inv % p;
            for (i, &dc) in d.c.iter().enumerate() {
                r[k + i] = (r[k + i] + p - f * dc % p) % p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        ModPoly::new(p, r)
    }
}

fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = (p - det) % p;
        }
        det = det * m[col][col] % p;
        let inv = inv_mod(m[col][col], p);
        for r in col + 1..n {
            let f = m[r][col] * inv % p;
            if f == 0 {
                continue;
            }
            for c in col..n {
                m[r][c] = (m[r][c] + p - f * m[col][c] % p) % p;
            }
        }
    }
    det
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn res_sylvester(f: &ModPoly, g: &ModPoly) -> u64 {
    let p = f.p;
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    if size == 0 {
        return 1;
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![0u64; size];
        for (k, &c) in f.c.iter().rev().enumerate() {
            r[i + k] = c;
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![0u64; size];
        for (k, &c) in g.c.iter().rev().enumerate() {
            r[i + k] = c;
        }
        rows.push(r);
    }
    det_mod(rows, p)
}

/// Resultant through the Euclidean remainder sequence.
pub fn res_euclid(f: &ModPoly, g: &ModPoly) -> u64 {
    let p = f.p;
    if f.is_zero() || g.is_zero() {
        return 0;
    }
    let (m, n) = (f.deg() as u64, g.deg() as u64);
    if n == 0 {
        return pow_mod(g.lead(), m, p);
    }
    if m == 0 {
        return pow_mod(f.lead(), n, p);
    }
    let r = f.rem(g);
    if r.is_zero() {
        return 0;
    }
    let sign = if (m * n) % 2 == 1 { p - 1 } else { 1 };
    let scale = pow_mod(g.lead(), m - r.deg() as u64, p);
    sign * scale % p * res_euclid(g, &r) % p
}

/// The two polynomials in Y (or N) whose resultant identity `which` names.
pub fn resultant_pair(which: u32, p: u64, lambda: u64) -> Result<(ModPoly, ModPoly)> {
    let l = lambda % p;
    let one_minus = (1 + p - l) % p;
    let l5 = pow_mod(l, 5, p);
    let m5 = pow_mod(one_minus, 5, p);
    // lambda^5 Y^2 + lambda (1 - 3 lambda) Y + 1
    let three_l = 3 * l % p;
    let p2 = ModPoly::new(p, vec![1, l * ((1 + p - three_l) % p) % p, l5]);
    // lambda^2 Y - 1
    let t = ModPoly::linear(p, l * l % p, p - 1);
    let c = l5 * m5 % p;
    match which {
        1 => {
            let p1 = ModPoly::new(p, vec![0, 0, 0, 0, c]).sub(&t.pow(5));
            Ok((p1, p2))
        }
        2 => {
            let y4 = ModPoly::new(p, vec![0, 0, 0, 0, 1]);
            let y8 = y4.mul(&y4);
            let p1 = y8
                .scale(c * c % p)
                .sub(&y4.mul(&t.pow(5)).scale(c))
                .add(&t.pow(10));
            Ok((p1, p2))
        }
        _ => Err(Error::Precondition(format!("unknown resultant identity {which}"))),
    }
}

/// lambda^14 (lambda - 1)^10 for identity 1, lambda^28 (lambda - 1)^22 for identity 2.
pub fn closed_form(which: u32, p: u64, lambda: u64) -> u64 {
    let (a, b) = if which == 1 { (14, 10) } else { (28, 22) };
    pow_mod(lambda, a, p) * pow_mod((lambda + p - 1) % p, b, p) % p
}

/// Negative control: lambda^14 (lambda - 1)^11.
pub fn perturbed_closed_form(_which: u32, p: u64, lambda: u64) -> u64 {
    pow_mod(lambda, 14, p) * pow_mod((lambda + p - 1) % p, 11, p) % p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultantReport {
    pub which: u32,
    pub p: u64,
    pub points: usize,
    /// resultant / closed form when that ratio is constant over all points.
    pub unit: Option<u64>,
    /// Sylvester and Euclid resultants agreed at every point.
    pub routes_agree: bool,
    pub pass: bool,
}

pub fn resultant_identity_check(which: u32, p: u64, points: usize, seed: u64) -> Result<ResultantReport> {
    resultant_check_against(which, p, points, seed, closed_form)
}

/// Compares the resultant against `closed(which, p, lambda)` at `points`
/// random lambda in F_p \ {0, 1}.
pub fn resultant_check_against(
    which: u32,
    p: u64,
    points: usize,
    seed: u64,
    closed: fn(u32, u64, u64) -> u64,
) -> Result<ResultantReport> {
    if p <= 200 || !is_prime(p) {
        return Err(Error::Precondition(format!("need a prime p > 200, got {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((which as u64) << 32));
    let mut unit: Option<u64> = None;
    let mut consistent = true;
    let mut routes_agree = true;
    for _ in 0..points {
        let l = rng.gen_range(2..p);
        let (f, g) = resultant_pair(which, p, l)?;
        let r = res_sylvester(&f, &g);
        routes_agree &= r == res_euclid(&f, &g);
        let cf = closed(which, p, l);
        if cf == 0 {
            consistent = false;
            continue;
        }
        let ratio = r * inv_mod(cf, p) % p;
        match unit {
            None => unit = Some(ratio),
            Some(u) if u != ratio => consistent = false,
            _ => {}
        }
    }
    let unit = if consistent { unit.filter(|&u| u != 0) } else { None };
    Ok(ResultantReport { which, p, points, unit, routes_agree, pass: unit.is_some() && routes_agree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylvester_against_euclid_and_roots() {
        let p = 10007;
        // (Y - 2)(Y - 3) and (Y - 5): resultant (5-2)(5-3) = 6
        let f = ModPoly::new(p, vec![6, p - 5, 1]);
        let g = ModPoly::new(p, vec![p - 5, 1]);
        assert_eq!(res_sylvester(&f, &g), 6);
        assert_eq!(res_euclid(&f, &g), 6);
        // common root gives zero
        let h = ModPoly::new(p, vec![p - 2, 1]);
        assert_eq!(res_sylvester(&f, &h), 0);
        assert_eq!(res_euclid(&f, &h), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let a = ModPoly::new(p, (0..rng.gen_range(1..7)).map(|_| rng.gen_range(0..p)).collect());
            let b = ModPoly::new(p, (0..rng.gen_range(1..6)).map(|_| rng.gen_range(0..p)).collect());
            if a.is_zero() || b.is_zero() {
                continue;
            }
            assert_eq!(res_sylvester(&a, &b), res_euclid(&a, &b));
        }
    }

    #[test]
    fn rejects_small_or_composite_p() {
        assert!(resultant_identity_check(1, 101, 8, 0).is_err());
        assert!(resultant_identity_check(1, 10001, 8, 0).is_err());
        assert!(resultant_identity_check(3, 10007, 8, 0).is_err());
    }
}
