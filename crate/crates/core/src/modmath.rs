//! Modular arithmetic over a prime modulus: Legendre/Kronecker symbols,
//! inverses, Fermat quotients, harmonic numbers mod p and the floor-function
//! identities used by the Fermat-quotient congruences.
//!
//! Residues are always normalized to `[0, m-1]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest prime for which [`residue_sets`] materializes the exact products.
pub const EXACT_PRODUCT_CAP: u64 = 10_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    add_mod(a, m - b % m, m)
}

#[inline]
pub fn neg_mod(a: u64, m: u64) -> u64 {
    (m - a % m) % m
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduce a signed integer into `[0, m-1]`.
pub fn reduce_i64(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

/// Reduce a big integer into `[0, m-1]`.
pub fn reduce_big(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin; the witness set is exact for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// An odd prime modulus, tagged with its class mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeModulus {
    p: u64,
    class1mod4: bool,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p,
            class1mod4: p % 4 == 1,
        })
    }

    /// Like [`PrimeModulus::new`] but additionally demands `p ≡ 1 (mod 4)`.
    pub fn new_1mod4(p: u64) -> Result<Self> {
        let pm = Self::new(p)?;
        pm.require_1mod4()?;
        Ok(pm)
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn is_1mod4(self) -> bool {
        self.class1mod4
    }

    pub fn require_1mod4(self) -> Result<()> {
        if self.class1mod4 {
            Ok(())
        } else {
            Err(Error::WrongResidueClass {
                p: self.p,
                expected: "1 mod 4",
            })
        }
    }

    /// `p^2`, for the mod-p² computations behind Fermat quotients.
    pub fn square(self) -> BigInt {
        BigInt::from(self.p) * self.p
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

/// Legendre symbol by Euler's criterion.
pub fn legendre(a: i64, p: PrimeModulus) -> i8 {
    legendre_residue(reduce_i64(a, p.get()), p)
}

pub fn legendre_big(a: &BigInt, p: PrimeModulus) -> i8 {
    legendre_residue(reduce_big(a, p.get()), p)
}

fn legendre_residue(a: u64, p: PrimeModulus) -> i8 {
    let p = p.get();
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol `(d/n)`.
pub fn kronecker(d: i64, n: i64) -> i8 {
    // (2/b) indexed by b mod 8
    const TAB2: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];
    let mut a = d as i128;
    let mut b = n as i128;
    if b == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let v = b.trailing_zeros();
    b >>= v;
    let mut k: i8 = if v.is_multiple_of(2) {
        1
    } else {
        TAB2[(a & 7) as usize]
    };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    loop {
        if a == 0 {
            return if b > 1 { 0 } else { k };
        }
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 {
            k *= TAB2[(b & 7) as usize];
        }
        if a & b & 2 != 0 {
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}

/// Inverse of `a` modulo `m`, in `[1, m-1]`.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64> {
    mod_inverse_u(reduce_i64(a, m), m).ok_or_else(|| Error::NotInvertible {
        value: a.to_string(),
        modulus: m.to_string(),
    })
}

fn mod_inverse_u(a: u64, m: u64) -> Option<u64> {
    if m < 2 {
        return None;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Inverse of a residue known to be coprime to the prime `p`.
pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    mod_inverse_u(a % p, p).expect("residue coprime to p")
}

/// Fermat quotient `(a^{p-1} - 1)/p`, exactly and reduced mod p.
pub fn fermat_quotient(a: &BigInt, p: PrimeModulus) -> Result<(BigInt, u64)> {
    check_unit(a, p)?;
    let pb = BigInt::from(p.get());
    let power = num_traits::pow(a.clone(), (p.get() - 1) as usize);
    let (q, r) = (power - 1u32).div_rem(&pb);
    debug_assert!(r.is_zero());
    let m = reduce_big(&q, p.get());
    Ok((q, m))
}

/// `F(a) mod p` via exponentiation mod p²; `F` only depends on `a mod p²`.
pub fn fermat_quotient_mod(a: &BigInt, p: PrimeModulus) -> Result<u64> {
    check_unit(a, p)?;
    let pv = p.get();
    if pv < (1 << 31) {
        let p2 = pv * pv;
        let r = pow_mod(reduce_big(a, p2), pv - 1, p2);
        Ok(((r + p2 - 1) % p2) / pv)
    } else {
        let p2 = p.square();
        let r = a.mod_floor(&p2).modpow(&BigInt::from(pv - 1), &p2);
        let q = ((r - 1u32).mod_floor(&p2)) / pv;
        Ok(q.to_u64().expect("F(a) mod p fits"))
    }
}

fn check_unit(a: &BigInt, p: PrimeModulus) -> Result<()> {
    if reduce_big(a, p.get()) == 0 {
        return Err(Error::DivisibleBase {
            base: a.to_string(),
            p: p.get(),
        });
    }
    Ok(())
}

/// Inverses of `1..p-1` mod p by a single batched inversion.
pub fn inverse_table(p: PrimeModulus) -> Vec<u64> {
    let p = p.get();
    let n = p as usize;
    let mut prefix = vec![1u64; n];
    for k in 1..n {
        prefix[k] = mul_mod(prefix[k - 1], k as u64, p);
    }
    let mut inv = vec![0u64; n];
    let mut acc = inv_mod_p(prefix[n - 1], p);
    for k in (1..n).rev() {
        inv[k] = mul_mod(acc, prefix[k - 1], p);
        acc = mul_mod(acc, k as u64, p);
    }
    inv
}

/// Harmonic numbers `H_0, ..., H_{p-1}` mod p.
#[derive(Debug, Clone)]
pub struct HarmonicTable {
    p: PrimeModulus,
    inv: Vec<u64>,
    h_mod: Vec<u64>,
}

impl HarmonicTable {
    pub fn new(p: PrimeModulus) -> Self {
        let inv = inverse_table(p);
        let pv = p.get();
        let mut h_mod = vec![0u64; pv as usize];
        for k in 1..pv as usize {
            h_mod[k] = add_mod(h_mod[k - 1], inv[k], pv);
        }
        Self { p, inv, h_mod }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn get(&self, k: u64) -> Result<u64> {
        self.h_mod.get(k as usize).copied().ok_or(Error::OutOfRange {
            index: k,
            bound: self.p.get(),
        })
    }

    /// `k^{-1} mod p` for `k` not divisible by p.
    pub fn inverse(&self, k: u64) -> u64 {
        self.inv[(k % self.p.get()) as usize]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.h_mod
    }
}

/// `H_k mod p` for `0 <= k <= p-1`.
pub fn harmonic_mod(k: u64, p: PrimeModulus) -> Result<u64> {
    if k >= p.get() {
        return Err(Error::OutOfRange {
            index: k,
            bound: p.get(),
        });
    }
    HarmonicTable::new(p).get(k)
}

/// Quadratic residues and non-residues in `[1, p-1]` with their exact products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSets {
    pub qr: Vec<u64>,
    pub nqr: Vec<u64>,
    pub a: BigInt,
    pub b: BigInt,
}

/// Split `[1, p-1]` into residues and non-residues.
pub fn residue_partition(p: PrimeModulus) -> (Vec<u64>, Vec<u64>) {
    let pv = p.get();
    let mut is_qr = vec![false; pv as usize];
    for x in 1..=pv / 2 {
        is_qr[mul_mod(x, x, pv) as usize] = true;
    }
    (1..pv).partition(|&k| is_qr[k as usize])
}

pub fn residue_sets(p: PrimeModulus) -> Result<ResidueSets> {
    p.require_1mod4()?;
    if p.get() > EXACT_PRODUCT_CAP {
        return Err(Error::TooLarge {
            what: "p for exact residue products",
            bound: EXACT_PRODUCT_CAP,
        });
    }
    let (qr, nqr) = residue_partition(p);
    let a = product(&qr);
    let b = product(&nqr);
    Ok(ResidueSets { qr, nqr, a, b })
}

/// `A mod p^k` and `B mod p^k`, for primes beyond the exact-product cap.
pub fn residue_products_mod(p: PrimeModulus, k: u32) -> Result<(BigInt, BigInt)> {
    p.require_1mod4()?;
    let m = num_traits::pow(BigInt::from(p.get()), k as usize);
    let (qr, nqr) = residue_partition(p);
    let fold = |xs: &[u64]| {
        xs.iter()
            .fold(BigInt::one(), |acc, &x| (acc * x) % &m)
    };
    Ok((fold(&qr), fold(&nqr)))
}

/// Exact product of a list, by balanced splitting.
pub fn product(xs: &[u64]) -> BigInt {
    match xs.len() {
        0 => BigInt::one(),
        1 => BigInt::from(xs[0]),
        n => product(&xs[..n / 2]) * product(&xs[n / 2..]),
    }
}

/// `Σ_{k=1}^{p-1} k^{-1} (k/p) mod p`, which vanishes for `p ≡ 1 (mod 4)`.
pub fn legendre_harmonic_sum(p: PrimeModulus) -> Result<u64> {
    p.require_1mod4()?;
    let pv = p.get();
    let inv = inverse_table(p);
    let mut s = 0u64;
    for k in 1..pv {
        let term = inv[k as usize];
        s = match legendre(k as i64, p) {
            1 => add_mod(s, term, pv),
            _ => sub_mod(s, term, pv),
        };
    }
    Ok(s)
}

/// `{k in [1, p-1] : ⌊mk/p⌋ - ⌊m(k-1)/p⌋ = 1}` by direct evaluation.
pub fn floor_jump_set(m: u64, p: PrimeModulus) -> Vec<u64> {
    let pv = p.get();
    (1..pv)
        .filter(|&k| (m * k) / pv - (m * (k - 1)) / pv == 1)
        .collect()
}

/// The closed form `{⌊pℓ/m⌋ + 1 : 1 <= ℓ <= m-1}` of [`floor_jump_set`].
pub fn predicted_jump_set(m: u64, p: PrimeModulus) -> Vec<u64> {
    let pv = p.get();
    (1..m).map(|l| (pv * l) / m + 1).collect()
}

/// `⌊Mk/p⌋ - ⌊M(k-1)/p⌋`, checked against `⌊M/p⌋ + ⌊mk/p⌋ - ⌊m(k-1)/p⌋`.
pub fn lifted_floor_diff(big_m: &BigInt, k: u64, p: PrimeModulus) -> Result<BigInt> {
    let pv = p.get();
    if k == 0 || k >= pv {
        return Err(Error::OutOfRange { index: k, bound: pv });
    }
    if !big_m.is_positive() {
        return Err(Error::HypothesisFail("M must be positive".into()));
    }
    let m = reduce_big(big_m, pv);
    if m == 0 {
        return Err(Error::DivisibleBase {
            base: big_m.to_string(),
            p: pv,
        });
    }
    let pb = BigInt::from(pv);
    let direct = (big_m * k).div_floor(&pb) - (big_m * (k - 1)).div_floor(&pb);
    let via_residue = big_m.div_floor(&pb) + BigInt::from((m * k) / pv - (m * (k - 1)) / pv);
    if direct != via_residue {
        return Err(Error::MismatchBug(format!(
            "M={big_m}, k={k}, p={pv}: {direct} != {via_residue}"
        )));
    }
    Ok(direct)
}

/// `⌊pk/q⌋ + ⌊p(q-k)/q⌋ = p - 1` for `1 <= k <= q-1`, `gcd(p, q) = 1`.
pub fn complementary_floor_identity(p: u64, q: u64, k: u64) -> Result<bool> {
    if q == 0 || q >= p || k == 0 || k >= q {
        return Err(Error::HypothesisFail(format!(
            "need 1 <= k < q < p, got p={p}, q={q}, k={k}"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::HypothesisFail(format!("gcd({p}, {q}) != 1")));
    }
    Ok((p * k) / q + (p * (q - k)) / q == p - 1)
}

/// `C(p, j)/p ≡ (-1)^{j-1}/j (mod p)`, with the binomial computed exactly.
pub fn wilson_binomial_check(p: PrimeModulus, j: u64) -> Result<bool> {
    let pv = p.get();
    if j == 0 || j >= pv {
        return Err(Error::OutOfRange { index: j, bound: pv });
    }
    let binom = binomial(pv, j);
    let (q, r) = binom.div_rem(&BigInt::from(pv));
    if !r.is_zero() {
        return Err(Error::DivisibilityBug(format!("p={pv} does not divide C(p,{j})")));
    }
    let lhs = reduce_big(&q, pv);
    let inv = inv_mod_p(j, pv);
    let rhs = if j % 2 == 1 { inv } else { neg_mod(inv, pv) };
    Ok(lhs == rhs)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn brute_legendre(a: i64, p: u64) -> i8 {
        let r = reduce_i64(a, p);
        if r == 0 {
            0
        } else if (1..p).any(|x| x * x % p == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn primality_small_and_edge() {
        let sieved = primes_up_to(10_000);
        let tested: Vec<u64> = (0..=10_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, tested);
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(PrimeModulus::new(2).is_err());
        assert!(PrimeModulus::new(9).is_err());
        assert!(pm(13).is_1mod4());
        assert!(!pm(7).is_1mod4());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(1, pm(5)), 1);
        assert_eq!(legendre(2, pm(5)), -1);
        assert_eq!(legendre(3, pm(13)), 1);
        assert_eq!(legendre(0, pm(13)), 0);
        assert_eq!(legendre(-1, pm(13)), 1);
    }

    #[test]
    fn legendre_matches_squares_and_sums_to_zero() {
        for p in primes_up_to(1000).into_iter().skip(1) {
            let m = pm(p);
            let mut sum = 0i64;
            for a in 0..p as i64 {
                let l = legendre(a, m);
                if p < 200 {
                    assert_eq!(l, brute_legendre(a, p), "a={a} p={p}");
                }
                sum += l as i64;
            }
            assert_eq!(sum, 0, "p={p}");
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(5, 1), 1);
        assert_eq!(kronecker(13, 2), -1);
        assert_eq!(kronecker(5, 5), 0);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(2, 0), 0);
        assert_eq!(kronecker(12, 7), -1);
    }

    #[test]
    fn kronecker_agrees_with_legendre_on_odd_primes() {
        for p in primes_up_to(300).into_iter().skip(1) {
            for d in -50i64..50 {
                assert_eq!(kronecker(d, p as i64), brute_legendre(d, p), "d={d} p={p}");
            }
        }
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 7).unwrap(), 1);
        assert_eq!(mod_inverse(3, 13).unwrap(), 9);
        assert_eq!(mod_inverse(7, 5).unwrap(), 3);
        assert_eq!(mod_inverse(-2, 5).unwrap(), 2);
        assert!(matches!(mod_inverse(6, 9), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn fermat_quotient_examples() {
        let one = BigInt::one();
        assert_eq!(fermat_quotient(&one, pm(7)).unwrap(), (BigInt::zero(), 0));
        assert_eq!(fermat_quotient(&BigInt::from(2), pm(5)).unwrap(), (BigInt::from(3), 3));
        assert_eq!(fermat_quotient(&BigInt::from(2), pm(13)).unwrap(), (BigInt::from(315), 3));
        assert!(matches!(
            fermat_quotient(&BigInt::from(10), pm(5)),
            Err(Error::DivisibleBase { .. })
        ));
        for a in 1..200i64 {
            if a % 13 != 0 {
                let exact = fermat_quotient(&BigInt::from(a), pm(13)).unwrap().1;
                assert_eq!(fermat_quotient_mod(&BigInt::from(a), pm(13)).unwrap(), exact);
            }
        }
    }

    #[test]
    fn harmonic_examples() {
        for p in [5, 13, 101] {
            assert_eq!(harmonic_mod(0, pm(p)).unwrap(), 0);
            assert_eq!(harmonic_mod(p - 1, pm(p)).unwrap(), 0);
        }
        assert_eq!(harmonic_mod(6, pm(13)).unwrap(), 7);
        assert!(matches!(harmonic_mod(13, pm(13)), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn harmonic_symmetry() {
        for p in primes_up_to(400).into_iter().skip(1) {
            let t = HarmonicTable::new(pm(p));
            for a in 0..=(p - 1) / 2 {
                let b = p - 1 - a;
                assert_eq!(t.get(a).unwrap(), t.get(b).unwrap(), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn inverse_table_is_correct() {
        for p in [3, 5, 97, 1009] {
            let inv = inverse_table(pm(p));
            for k in 1..p {
                assert_eq!(mul_mod(k, inv[k as usize], p), 1);
            }
        }
    }

    #[test]
    fn residue_set_examples() {
        let s = residue_sets(pm(5)).unwrap();
        assert_eq!(s.qr, vec![1, 4]);
        assert_eq!(s.nqr, vec![2, 3]);
        assert_eq!(s.a, BigInt::from(4));
        assert_eq!(s.b, BigInt::from(6));
        let s = residue_sets(pm(13)).unwrap();
        assert_eq!(s.a, BigInt::from(12960));
        assert_eq!(s.b, BigInt::from(36960));
        assert!(residue_sets(pm(7)).is_err());
        assert!(matches!(residue_sets(pm(10_009)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn residue_products_congruences() {
        for p in primes_up_to(1000).into_iter().filter(|p| p % 4 == 1) {
            let s = residue_sets(pm(p)).unwrap();
            assert_eq!(s.qr.len(), s.nqr.len());
            assert_eq!(reduce_big(&s.a, p), p - 1);
            assert_eq!(reduce_big(&s.b, p), 1);
            let (a2, b2) = residue_products_mod(pm(p), 2).unwrap();
            let p2 = BigInt::from(p * p);
            assert_eq!(a2, s.a.mod_floor(&p2));
            assert_eq!(b2, s.b.mod_floor(&p2));
        }
    }

    #[test]
    fn legendre_harmonic_sum_vanishes() {
        assert_eq!(legendre_harmonic_sum(pm(5)).unwrap(), 0);
        assert_eq!(legendre_harmonic_sum(pm(13)).unwrap(), 0);
        assert_eq!(legendre_harmonic_sum(pm(17)).unwrap(), 0);
        for p in primes_up_to(10_000).into_iter().filter(|p| p % 4 == 1) {
            assert_eq!(legendre_harmonic_sum(pm(p)).unwrap(), 0, "p={p}");
        }
        assert!(legendre_harmonic_sum(pm(7)).is_err());
    }

    #[test]
    fn floor_jump_examples() {
        assert!(floor_jump_set(1, pm(5)).is_empty());
        assert_eq!(floor_jump_set(2, pm(5)), vec![3]);
        assert_eq!(floor_jump_set(2, pm(13)), vec![7]);
    }

    #[test]
    fn floor_jump_closed_form() {
        for p in primes_up_to(200).into_iter().skip(1) {
            for m in 1..p {
                assert_eq!(floor_jump_set(m, pm(p)), predicted_jump_set(m, pm(p)), "m={m} p={p}");
            }
        }
    }

    #[test]
    fn lifted_floor_examples() {
        assert_eq!(lifted_floor_diff(&BigInt::from(7), 3, pm(5)).unwrap(), BigInt::from(2));
        assert_eq!(lifted_floor_diff(&BigInt::from(7), 2, pm(5)).unwrap(), BigInt::from(1));
        for k in 1..13 {
            let direct = (5 * k) / 13 - (5 * (k - 1)) / 13;
            assert_eq!(lifted_floor_diff(&BigInt::from(5), k, pm(13)).unwrap(), BigInt::from(direct));
        }
        let huge = BigInt::from(10u64).pow(40) + 2u32;
        for k in 1..7 {
            lifted_floor_diff(&huge, k, pm(7)).unwrap();
        }
    }

    #[test]
    fn complementary_floor_examples() {
        assert!(complementary_floor_identity(5, 2, 1).unwrap());
        assert!(complementary_floor_identity(13, 3, 1).unwrap());
        assert!(complementary_floor_identity(7, 2, 1).unwrap());
        for p in primes_up_to(100).into_iter().skip(1) {
            for q in 2..p {
                for k in 1..q {
                    assert!(complementary_floor_identity(p, q, k).unwrap());
                }
            }
        }
        assert!(complementary_floor_identity(5, 5, 1).is_err());
    }

    #[test]
    fn wilson_binomial() {
        assert!(wilson_binomial_check(pm(5), 1).unwrap());
        assert!(wilson_binomial_check(pm(5), 2).unwrap());
        assert!(wilson_binomial_check(pm(13), 4).unwrap());
        for p in primes_up_to(500).into_iter().skip(1) {
            for j in 1..p {
                assert!(wilson_binomial_check(pm(p), j).unwrap(), "p={p} j={j}");
            }
        }
    }

    proptest! {
        #[test]
        fn fermat_quotient_is_logarithmic(pi in 1usize..60, a in 1u64..1_000_000, b in 1u64..1_000_000) {
            let p = primes_up_to(300)[pi];
            prop_assume!(a % p != 0 && b % p != 0);
            let m = pm(p);
            let p2 = p * p;
            let ab = mul_mod(a % p2, b % p2, p2);
            let fa = fermat_quotient_mod(&BigInt::from(a), m).unwrap();
            let fb = fermat_quotient_mod(&BigInt::from(b), m).unwrap();
            let fab = fermat_quotient_mod(&BigInt::from(ab), m).unwrap();
            prop_assert_eq!(fab, add_mod(fa, fb, p));
        }

        #[test]
        fn kronecker_multiplicative_in_n(d in prop::sample::select(vec![5i64, 8, 12, 13, 17, 21, 24, 28, 29, 33, 40, 41]),
                                         m in 1i64..500, n in 1i64..500) {
            prop_assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
        }

        #[test]
        fn legendre_multiplicative(pi in 1usize..100, a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let p = pm(primes_up_to(600)[pi]);
            prop_assert_eq!(legendre(a * b, p), legendre(a, p) * legendre(b, p));
        }
    }
}
