//! Dense polynomials over a prime field, used only while building a [`FieldCtx`].
//!
//! Coefficients are stored little-endian (index 0 is the constant term) and
//! kept trimmed so that the last entry is nonzero. The zero polynomial is the
//! empty vector.
//!
//! [`FieldCtx`]: super::FieldCtx

pub(crate) type FpPoly = Vec<u32>;

pub(crate) fn trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small, Fermat is fine here.
    pow_scalar(a, p - 2, p)
}

fn pow_scalar(mut b: u32, mut e: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    let mut base = b as u64 % p64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        e >>= 1;
    }
    b = acc as u32;
    b
}

pub(crate) fn sub(a: &FpPoly, b: &FpPoly, p: u32) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (m nonzero).
pub(crate) fn rem(a: &FpPoly, m: &FpPoly, p: u32) -> FpPoly {
    let mut r = a.clone();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv % p as u64) as u32;
        let shift = dr - dm;
        for (i, &mi) in m.iter().enumerate() {
            let t = (c as u64 * mi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &FpPoly, b: &FpPoly, m: &FpPoly, p: u32) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: FpPoly = prod.into_iter().map(|c| c as u32).collect();
    rem(&prod, m, p)
}

pub(crate) fn pow_mod(base: &FpPoly, mut e: u64, m: &FpPoly, p: u32) -> FpPoly {
    let mut acc: FpPoly = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &FpPoly, b: &FpPoly, p: u32) -> FpPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let li = inv_mod(lead, p) as u64;
        for c in x.iter_mut() {
            *c = (*c as u64 * li % p as u64) as u32;
        }
    }
    x
}

/// Irreducibility of a monic `f` of degree `n`: `x^{p^n} = x mod f` and
/// `gcd(x^{p^d} - x, f) = 1` for every proper divisor `d` of `n`.
pub(crate) fn is_irreducible(f: &FpPoly, p: u32) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if f[0] == 0 {
        return n == 1;
    }
    let x: FpPoly = rem(&vec![0, 1], f, p);
    // frob[d] = x^{p^d} mod f
    let mut cur = x.clone();
    let mut frob = vec![x.clone()];
    for _ in 1..=n {
        cur = pow_mod(&cur, p as u64, f, p);
        frob.push(cur.clone());
    }
    if frob[n] != x {
        return false;
    }
    (1..n)
        .filter(|d| n.is_multiple_of(*d))
        .all(|d| gcd(&sub(&frob[d], &x, p), f, p) == vec![1])
}

/// Digits of `v` in base `p`, least significant first, padded to `n`.
pub(crate) fn digits(mut v: u64, p: u32, n: usize) -> FpPoly {
    let mut out = vec![0u32; n];
    for d in out.iter_mut() {
        *d = (v % p as u64) as u32;
        v /= p as u64;
    }
    out
}

pub(crate) fn from_digits(d: &[u32], p: u32) -> u64 {
    d.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles_over_f2() {
        // x^2 + x + 1 irreducible, x^2 + 1 = (x + 1)^2 not.
        assert!(is_irreducible(&vec![1, 1, 1], 2));
        assert!(!is_irreducible(&vec![1, 0, 1], 2));
        // x^5 + x^2 + 1 is the lexicographically first quintic over F2.
        assert!(is_irreducible(&vec![1, 0, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&vec![1, 1, 0, 0, 0, 1], 2));
    }

    #[test]
    fn count_irreducible_quintics_over_f3() {
        // Necklace formula: (3^5 - 3) / 5 = 48 monic irreducible quintics.
        let mut count = 0;
        for c in 0..3u64.pow(5) {
            let mut f = digits(c, 3, 5);
            f.push(1);
            if is_irreducible(&f, 3) {
                count += 1;
            }
        }
        assert_eq!(count, 48);
    }

    #[test]
    fn digits_round_trip() {
        assert_eq!(from_digits(&digits(1234, 7, 6), 7), 1234);
    }
}
