//! Exact arithmetic in GF(q) for small prime powers q.
//!
//! A [`FieldCtx`] is a fully materialized field: every element is a packed
//! integer in `0..q`, and addition, multiplication, inversion and discrete
//! logarithms are precomputed dense tables. Elements of GF(p^n) are coefficient
//! vectors `(a_0, ..., a_{n-1})` over GF(p) packed as
//! `a_0 + a_1*p + ... + a_{n-1}*p^{n-1}`.
//!
//! The context is immutable after construction, so it can be shared freely
//! across threads.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Packed field element: an integer in `0..q`.
pub type Fe = u32;

/// Default upper bound on the field order. Everything this crate verifies
/// needs q <= 11; the larger default keeps the full closed-form cyclotomy
/// sweep (q <= 49) available without overrides.
pub const DEFAULT_Q_CAP: u32 = 49;

/// Absolute limit: the dense q*q tables stop being sensible past this point.
const HARD_Q_LIMIT: u32 = 1024;

/// Built-in monic irreducible moduli, ascending coefficients `[c_0, ..., c_n]`
/// with `c_n = 1`, covering every proper prime power q <= 49. The fixed
/// choices keep element numbering reproducible across runs.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),          // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),       // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]),    // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0, 1]), // x^5 + x^2 + 1
    (3, 2, &[1, 0, 1]),          // x^2 + 1
    (3, 3, &[1, 2, 0, 1]),       // x^3 + 2x + 1
    (5, 2, &[2, 1, 1]),          // x^2 + x + 2
    (7, 2, &[3, 1, 1]),          // x^2 + x + 3
];

/// Serialized form of a field: `{"p", "n", "modulus", "gamma"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
    pub gamma: Fe,
}

/// A materialized finite field GF(q), q = p^n.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    gamma: Fe,
    add_t: Vec<Fe>,
    mul_t: Vec<Fe>,
    neg_t: Vec<Fe>,
    inv_t: Vec<Fe>,
    dlog_t: Vec<u32>,
    exp_t: Vec<Fe>,
}

/// Build GF(p^n) under the default order cap.
///
/// When `modulus` is omitted, the built-in table supplies one for every
/// proper prime power up to the cap. The primitive element `gamma` is the
/// least packed integer of multiplicative order q-1.
pub fn make_field(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<FieldCtx> {
    make_field_with_cap(p, n, modulus, DEFAULT_Q_CAP)
}

/// Same as [`make_field`] with an explicit order cap.
pub fn make_field_with_cap(p: u32, n: u32, modulus: Option<&[u32]>, cap: u32) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || n > 5 {
        return Err(Error::UnsupportedDegree(n));
    }
    let q = p
        .checked_pow(n)
        .filter(|&q| q <= HARD_Q_LIMIT)
        .ok_or(Error::FieldTooLarge {
            q: u32::MAX,
            cap: cap.min(HARD_Q_LIMIT),
        })?;
    if q > cap {
        return Err(Error::FieldTooLarge { q, cap });
    }

    let modulus: Vec<u32> = match modulus {
        Some(coeffs) => {
            let ok = coeffs.len() == n as usize + 1
                && coeffs.last() == Some(&1)
                && coeffs.iter().all(|&c| c < p);
            if !ok {
                return Err(Error::MalformedModulus {
                    coeffs: coeffs.to_vec(),
                    degree: n,
                    p,
                });
            }
            coeffs.to_vec()
        }
        None if n == 1 => vec![0, 1], // the polynomial x
        None => BUILTIN_MODULI
            .iter()
            .find(|&&(bp, bn, _)| bp == p && bn == n)
            .map(|&(_, _, c)| c.to_vec())
            .ok_or(Error::NoBuiltinModulus { p, n })?,
    };
    if n >= 2 && !is_irreducible(&modulus, p) {
        return Err(Error::ReducibleModulus {
            coeffs: modulus,
            p,
        });
    }

    Ok(FieldCtx::materialize(p, n, q, modulus))
}

impl FieldCtx {
    fn materialize(p: u32, n: u32, q: u32, modulus: Vec<u32>) -> FieldCtx {
        let qz = q as usize;
        let mut add_t = vec![0; qz * qz];
        let mut mul_t = vec![0; qz * qz];
        let mut neg_t = vec![0; qz];
        for a in 0..q {
            let ca = unpack(a, p, n);
            for b in a..q {
                let cb = unpack(b, p, n);
                let sum = pack(&poly_add(&ca, &cb, p), p);
                let prod = pack(&poly_mul_mod(&ca, &cb, &modulus, p), p);
                add_t[(a * q + b) as usize] = sum;
                add_t[(b * q + a) as usize] = sum;
                mul_t[(a * q + b) as usize] = prod;
                mul_t[(b * q + a) as usize] = prod;
            }
        }
        for a in 0..q {
            let mut digits = unpack(a, p, n);
            for d in &mut digits {
                *d = (p - *d) % p;
            }
            neg_t[a as usize] = pack(&digits, p);
        }

        // gamma: least element of full multiplicative order.
        let order_of = |x: u32| -> u32 {
            let mut acc = x;
            let mut ord = 1;
            while acc != 1 {
                acc = mul_t[(acc * q + x) as usize];
                ord += 1;
            }
            ord
        };
        let gamma = (1..q)
            .find(|&x| order_of(x) == q - 1)
            .expect("a finite field always has a primitive element");

        let mut exp_t = Vec::with_capacity(qz - 1);
        let mut dlog_t = vec![u32::MAX; qz];
        let mut acc: Fe = 1;
        for k in 0..q - 1 {
            debug_assert_eq!(dlog_t[acc as usize], u32::MAX);
            dlog_t[acc as usize] = k;
            exp_t.push(acc);
            acc = mul_t[(acc * q + gamma) as usize];
        }
        debug_assert_eq!(acc, 1);

        let mut inv_t = vec![0; qz];
        for x in 1..q {
            let k = dlog_t[x as usize];
            inv_t[x as usize] = exp_t[((q - 1 - k) % (q - 1)) as usize];
        }

        FieldCtx {
            p,
            n,
            q,
            modulus,
            gamma,
            add_t,
            mul_t,
            neg_t,
            inv_t,
            dlog_t,
            exp_t,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element.
    pub fn gamma(&self) -> Fe {
        self.gamma
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            n: self.n,
            modulus: self.modulus.clone(),
            gamma: self.gamma,
        }
    }

    /// All elements in packed order, 0 first.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.q
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> {
        1..self.q
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add_t[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg_t[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul_t[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg_t[a as usize]
    }

    /// Multiplicative inverse. Panics on zero; use [`FieldCtx::checked_inv`]
    /// where zero is reachable.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        self.checked_inv(a).expect("inverse of zero")
    }

    #[inline]
    pub fn checked_inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            None
        } else {
            Some(self.inv_t[a as usize])
        }
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let k = self.dlog_t[a as usize] as u64;
        self.exp_t[((k * (e % (self.q as u64 - 1))) % (self.q as u64 - 1)) as usize]
    }

    /// Exponent of x with respect to gamma, in `0..q-1`.
    pub fn dlog(&self, x: Fe) -> Result<u32> {
        if x == 0 {
            return Err(Error::DlogOfZero);
        }
        debug_assert!(x < self.q);
        Ok(self.dlog_t[x as usize])
    }

    /// gamma^k for k in `0..q-1`.
    pub fn gamma_pow(&self, k: u32) -> Fe {
        self.exp_t[(k % (self.q - 1)) as usize]
    }

    pub fn minus_one(&self) -> Fe {
        self.neg_t[1]
    }

    /// Pack a coefficient vector `(a_0, ..., a_{m-1})`, m <= n, into an element.
    pub fn encode(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadCoefficients {
                coeffs: coeffs.to_vec(),
                p: self.p,
                n: self.n,
            });
        }
        Ok(pack(coeffs, self.p))
    }

    /// Unpack an element into its length-n coefficient vector.
    pub fn decode(&self, x: Fe) -> Result<Vec<u32>> {
        if x >= self.q {
            return Err(Error::ElementOutOfRange {
                value: x,
                q: self.q,
            });
        }
        Ok(unpack(x, self.p, self.n))
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pack(coeffs: &[u32], p: u32) -> Fe {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn unpack(mut x: Fe, p: u32, n: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(n as usize);
    for _ in 0..n {
        coeffs.push(x % p);
        x /= p;
    }
    coeffs
}

fn poly_add(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect()
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // x^n == -(c_0 + c_1 x + ... + c_{n-1} x^{n-1})
    for deg in (n..prod.len()).rev() {
        let lead = prod[deg];
        if lead == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &c) in modulus.iter().take(n).enumerate() {
            prod[deg - n + i] = (prod[deg - n + i] + lead * (p - c)) % p;
        }
    }
    prod.truncate(n.max(1));
    prod
}

/// Remainder of `a` divided by monic `d`, coefficients over GF(p).
fn poly_rem(a: &[u32], d: &[u32], p: u32) -> Vec<u32> {
    let dd = d.len() - 1;
    let mut rem = a.to_vec();
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let deg = rem.len() - 1;
        if lead != 0 {
            for (i, &c) in d.iter().take(dd).enumerate() {
                rem[deg - dd + i] = (rem[deg - dd + i] + lead * (p - c)) % p;
            }
        }
        rem.pop();
    }
    rem
}

fn eval_poly(coeffs: &[u32], x: u32, p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Irreducibility over GF(p) for monic polynomials of degree 2..=5.
///
/// Degrees 2 and 3 reduce to a root check; degrees 4 and 5 additionally need
/// freedom from monic quadratic factors, checked by trial division.
fn is_irreducible(coeffs: &[u32], p: u32) -> bool {
    let degree = coeffs.len() - 1;
    if (0..p).any(|x| eval_poly(coeffs, x, p) == 0) {
        return false;
    }
    if degree >= 4 {
        for c1 in 0..p {
            for c0 in 0..p {
                let quad = [c0, c1, 1];
                if poly_rem(coeffs, &quad, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: order of x in the multiplicative group of Z/p.
    fn prime_order_oracle(x: u64, p: u64) -> u64 {
        let mut acc = x;
        let mut ord = 1;
        while acc != 1 {
            acc = acc * x % p;
            ord += 1;
        }
        ord
    }

    #[test]
    fn gamma_of_gf7_is_three() {
        // Oracle: 3 is the least residue of multiplicative order 6 mod 7.
        let least = (1..7).find(|&x| prime_order_oracle(x, 7) == 6).unwrap();
        assert_eq!(least, 3);
        let ctx = make_field(7, 1, None).unwrap();
        assert_eq!(ctx.q(), 7);
        assert_eq!(ctx.gamma(), 3);
    }

    #[test]
    fn gamma_of_gf2_is_one() {
        let ctx = make_field(2, 1, None).unwrap();
        assert_eq!(ctx.q(), 2);
        assert_eq!(ctx.gamma(), 1);
    }

    #[test]
    fn gamma_of_gf9_is_x_plus_one() {
        // Oracle: brute-force powering of coefficient pairs mod x^2 + 1.
        // x has order 4 (x^2 = -1, x^4 = 1); x + 1 squares to 2x, and
        // (2x)^2 = 4x^2 = -1, so x + 1 has order 8.
        let ctx = make_field(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(ctx.q(), 9);
        assert_eq!(ctx.encode(&[1, 1]).unwrap(), 4);
        assert_eq!(ctx.gamma(), 4);
    }

    #[test]
    fn arithmetic_matches_hand_values() {
        let gf7 = make_field(7, 1, None).unwrap();
        assert_eq!(gf7.mul(3, 5), 1);

        // GF(9) with modulus x^2 + 1: x * x = -1 = 2, by polynomial reduction.
        let gf9 = make_field(3, 2, Some(&[1, 0, 1])).unwrap();
        let x = gf9.encode(&[0, 1]).unwrap();
        assert_eq!(gf9.mul(x, x), 2);

        assert_eq!(gf7.checked_inv(0), None);
    }

    #[test]
    #[should_panic(expected = "inverse of zero")]
    fn inv_of_zero_panics() {
        let gf7 = make_field(7, 1, None).unwrap();
        gf7.inv(0);
    }

    #[test]
    fn dlog_values() {
        let gf7 = make_field(7, 1, None).unwrap();
        assert_eq!(gf7.dlog(2).unwrap(), 2); // 3^2 = 9 = 2 (mod 7)
        assert_eq!(gf7.dlog(1).unwrap(), 0);
        assert!(matches!(gf7.dlog(0), Err(Error::DlogOfZero)));
    }

    #[test]
    fn codec_round_trip() {
        let gf9 = make_field(3, 2, None).unwrap();
        assert_eq!(gf9.encode(&[1, 1]).unwrap(), 4);
        let gf7 = make_field(7, 1, None).unwrap();
        assert_eq!(gf7.decode(5).unwrap(), vec![5]);
        assert!(gf9.decode(9).is_err());
        for x in gf9.elements() {
            assert_eq!(gf9.encode(&gf9.decode(x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(make_field(6, 1, None), Err(Error::NotPrime(6))));
        // x^2 + 1 has the root 2 over GF(5).
        assert!(matches!(
            make_field(5, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
        assert!(matches!(
            make_field(11, 2, None),
            Err(Error::FieldTooLarge { q: 121, cap: 49 })
        ));
        assert!(matches!(
            make_field_with_cap(7, 2, None, 48),
            Err(Error::FieldTooLarge { q: 49, cap: 48 })
        ));
    }

    /// Full triple-loop field axiom check for q <= 9.
    #[test]
    fn field_axioms_exhaustive_small_q() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let ctx = make_field(p, n, None).unwrap();
            let q = ctx.q();
            for a in 0..q {
                assert_eq!(ctx.add(a, ctx.neg(a)), 0);
                if a != 0 {
                    assert_eq!(ctx.mul(a, ctx.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(ctx.add(a, b), ctx.add(b, a));
                    assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                    for c in 0..q {
                        assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
                        assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
                        assert_eq!(
                            ctx.mul(a, ctx.add(b, c)),
                            ctx.add(ctx.mul(a, b), ctx.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    fn all_prime_powers(limit: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for p in 2..=limit {
            if !is_prime(p) {
                continue;
            }
            let mut n = 1;
            while p.pow(n) <= limit {
                out.push((p, n));
                n += 1;
            }
        }
        out
    }

    /// gamma^(q-1) = 1 and no smaller power is 1, for every built-in field.
    #[test]
    fn gamma_has_full_order_everywhere() {
        for (p, n) in all_prime_powers(DEFAULT_Q_CAP) {
            let ctx = make_field(p, n, None).unwrap();
            let q = ctx.q();
            let mut acc = 1;
            for k in 1..q {
                acc = ctx.mul(acc, ctx.gamma());
                if k < q - 1 {
                    assert_ne!(acc, 1, "gamma order divides {k} in GF({q})");
                }
            }
            assert_eq!(acc, 1);
            // dlog is a bijection onto 0..q-1.
            let mut seen = vec![false; (q - 1) as usize];
            for x in ctx.nonzero_elements() {
                let k = ctx.dlog(x).unwrap();
                assert_eq!(ctx.gamma_pow(k), x);
                assert!(!seen[k as usize]);
                seen[k as usize] = true;
            }
        }
    }

    /// dlog(ab) = dlog(a) + dlog(b) mod q-1, exhaustively for q <= 13.
    #[test]
    fn dlog_is_a_homomorphism() {
        for (p, n) in all_prime_powers(13) {
            let ctx = make_field(p, n, None).unwrap();
            let m = ctx.q() - 1;
            for a in ctx.nonzero_elements() {
                for b in ctx.nonzero_elements() {
                    let lhs = ctx.dlog(ctx.mul(a, b)).unwrap();
                    let rhs = (ctx.dlog(a).unwrap() + ctx.dlog(b).unwrap()) % m;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn builtin_moduli_cover_all_proper_prime_powers_to_cap() {
        for (p, n) in all_prime_powers(DEFAULT_Q_CAP) {
            if n > 1 {
                let ctx = make_field(p, n, None).unwrap();
                assert_eq!(ctx.q(), p.pow(n));
            }
        }
    }
}
