//! The generalised AAC conjecture `v₁·h(4D) ≢ 0 (mod D)` for odd `D`, and
//! the density of `n` with `n² − 1` squarefree.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::{is_square, isqrt, mul_mod, primes_up_to, reduce_big};
use crate::quadfield::{form_class_number, pell_min_solution};

/// The three odd `D` known to violate the conjecture.
pub const PUBLISHED_COUNTEREXAMPLES: [u64; 3] = [1817, 209991, 1752299];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GaacVerdict {
    pub d: u64,
    pub v1_mod_d: u64,
    pub h4d: u64,
    pub product_mod_d: u64,
    pub holds: bool,
}

pub fn gaac_check(d: u64) -> Result<GaacVerdict> {
    if d.is_multiple_of(2) {
        return Err(Error::EvenD(d));
    }
    if is_square(d) {
        return Err(Error::PerfectSquare(d));
    }
    let pell = pell_min_solution(d)?;
    let v1_mod_d = reduce_big(&pell.v1, d);
    let h4d = form_class_number(4 * d)?;
    let product_mod_d = mul_mod(v1_mod_d, h4d % d, d);
    Ok(GaacVerdict {
        d,
        v1_mod_d,
        h4d,
        product_mod_d,
        holds: product_mod_d != 0,
    })
}

pub fn reproduce_counterexamples() -> Result<Vec<GaacVerdict>> {
    PUBLISHED_COUNTEREXAMPLES.par_iter().map(|&d| gaac_check(d)).collect()
}

/// Odd nonsquare `D` in `[d_min, d_max]`, ascending.
pub fn gaac_candidates(d_min: u64, d_max: u64) -> impl Iterator<Item = u64> {
    (d_min.max(3)..=d_max).filter(|&d| d % 2 == 1 && !is_square(d))
}

/// Verdicts for every odd nonsquare `D` in the range, ascending.
pub fn gaac_scan(d_min: u64, d_max: u64) -> Result<Vec<GaacVerdict>> {
    let ds: Vec<u64> = gaac_candidates(d_min, d_max).collect();
    ds.par_iter().map(|&d| gaac_check(d)).collect()
}

/// No prime square divides `n`.
pub fn squarefree(n: u64) -> bool {
    squarefree_u128(n as u128)
}

fn squarefree_u128(mut n: u128) -> bool {
    if n == 0 {
        return false;
    }
    let mut q = 2u128;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return false;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SieveMethod {
    /// Strike out `n ≡ ±1 (mod q²)` for each prime `q`.
    Sieve,
    /// `Σ μ(d)·#{n : d² | n² − 1}` over squarefree `d`.
    InclusionExclusion,
    /// Factor each `n² − 1`.
    Factorization,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SieveCount {
    pub x: u64,
    /// `#{2 ≤ n ≤ x : n² − 1 squarefree}`
    pub count: u64,
    /// `Π_{p ≤ z} (1 − 2/p²)`
    pub partial_constant: f64,
    pub z: u64,
}

pub const DEFAULT_Z: u64 = 1000;

pub fn partial_constant(z: u64) -> f64 {
    primes_up_to(z).iter().map(|&p| 1.0 - 2.0 / (p * p) as f64).product()
}

pub fn count_squarefree_n2m1(x: u64) -> Result<SieveCount> {
    count_squarefree_n2m1_with(x, DEFAULT_Z, SieveMethod::Sieve)
}

pub fn count_squarefree_n2m1_with(x: u64, z: u64, method: SieveMethod) -> Result<SieveCount> {
    if x < 2 {
        return Err(Error::OutOfRange { index: x, bound: 2 });
    }
    let count = match method {
        SieveMethod::Sieve => sieve_count(x),
        SieveMethod::InclusionExclusion => inclusion_exclusion_count(x),
        SieveMethod::Factorization => (2..=x).filter(|&n| squarefree_u128(n as u128 * n as u128 - 1)).count() as u64,
    };
    Ok(SieveCount {
        x,
        count,
        partial_constant: partial_constant(z),
        z,
    })
}

/// An odd prime square divides only one of `n ± 1`, so `q² | n² − 1` forces
/// `q² ≤ n + 1`; for `q = 2` the classes `±1 mod 4` are exactly the odd `n`.
fn sieve_count(x: u64) -> u64 {
    let mut bad = vec![false; x as usize + 1];
    for q in primes_up_to(isqrt(x + 1)) {
        let q2 = q * q;
        for start in [1, q2 - 1] {
            let mut n = start;
            while n <= x {
                bad[n as usize] = true;
                n += q2;
            }
        }
    }
    (2..=x).filter(|&n| !bad[n as usize]).count() as u64
}

/// Solutions of `n² ≡ 1 (mod d²)` for squarefree `d`, by CRT over its primes.
fn unit_roots_mod_square(primes: &[u64]) -> (u64, Vec<u64>) {
    let mut modulus = 1u64;
    let mut roots = vec![0u64];
    for &q in primes {
        let q2 = q * q;
        let local = [1, q2 - 1];
        // x ≡ r (mod modulus), x ≡ s (mod q²)
        let inv = crate::modmath::mod_inverse((modulus % q2) as i64, q2).expect("coprime moduli");
        let mut next = Vec::with_capacity(roots.len() * 2);
        for &r in &roots {
            for &s in &local {
                let k = mul_mod((s + q2 - r % q2) % q2, inv, q2);
                next.push(r + modulus * k);
            }
        }
        modulus *= q2;
        roots = next;
    }
    (modulus, roots)
}

fn count_in_class(r: u64, m: u64, lo: u64, hi: u64) -> u64 {
    // #{n in [lo, hi] : n ≡ r (mod m)}
    let upto = |y: u64| if y < r { 0 } else { (y - r) / m + 1 };
    upto(hi) - if lo == 0 { 0 } else { upto(lo - 1) }
}

/// Exact once `d` runs over all squarefree products of primes `q ≤ √(x+1)`
/// with `d² ≤ x² − 1`; larger `d` cannot have `d² | n² − 1` for `n ≤ x`.
fn inclusion_exclusion_count(x: u64) -> u64 {
    let primes = primes_up_to(isqrt(x + 1));
    let bound = x - 1;
    let mut total: i64 = 0;
    fn walk(idx: usize, d: u64, chosen: &mut Vec<u64>, primes: &[u64], bound: u64, x: u64, total: &mut i64) {
        let (m, roots) = unit_roots_mod_square(chosen);
        let c: u64 = roots.iter().map(|&r| count_in_class(r, m, 2, x)).sum();
        *total += if chosen.len().is_multiple_of(2) { c as i64 } else { -(c as i64) };
        for j in idx..primes.len() {
            let q = primes[j];
            if d * q > bound {
                break;
            }
            chosen.push(q);
            walk(j + 1, d * q, chosen, primes, bound, x, total);
            chosen.pop();
        }
    }
    walk(0, 1, &mut Vec::new(), &primes, bound, x, &mut total);
    total as u64
}

/// For squarefree `D = n² − 1`: the least Pell solution is `(n, 1)` and, when `D`
/// is odd, the conjecture holds at `D`.
pub fn n2m1_family_check(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::OutOfRange { index: n, bound: 2 });
    }
    let d = n * n - 1;
    if !squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    let pell = pell_min_solution(d)?;
    let pell_ok = pell.u1 == BigInt::from(n) && pell.v1.is_one();
    if d.is_multiple_of(2) {
        return Ok(pell_ok);
    }
    Ok(pell_ok && gaac_check(d)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaac_examples() {
        let v = gaac_check(3).unwrap();
        assert_eq!((v.v1_mod_d, v.holds), (1, true));
        let v = gaac_check(99).unwrap();
        assert_eq!(v.v1_mod_d, 1);
        assert!(v.holds);
        assert_eq!(gaac_check(8), Err(Error::EvenD(8)));
        assert_eq!(gaac_check(9), Err(Error::PerfectSquare(9)));
        let v = gaac_check(1817).unwrap();
        assert_eq!((v.v1_mod_d, v.holds), (0, false));
    }

    #[test]
    fn scan_small_ranges() {
        assert!(gaac_scan(3, 99).unwrap().iter().all(|v| v.holds));
        assert!(gaac_scan(10, 9).unwrap().is_empty());
        let all = gaac_scan(3, 2000).unwrap();
        let fails: Vec<u64> = all.iter().filter(|v| !v.holds).map(|v| v.d).collect();
        assert_eq!(fails, vec![1817]);
        assert!(all.iter().all(|v| v.h4d < 4 * v.d));
        assert!(all.windows(2).all(|w| w[0].d < w[1].d));
    }

    #[test]
    fn squarefree_examples() {
        assert!(squarefree(15));
        assert!(!squarefree(8));
        assert!(!squarefree(48));
        assert!(squarefree(1));
        assert!(!squarefree(0));
    }

    #[test]
    fn density_examples() {
        assert_eq!(count_squarefree_n2m1(10).unwrap().count, 3);
        assert_eq!(count_squarefree_n2m1(2).unwrap().count, 1);
        assert!(count_squarefree_n2m1(1).is_err());
        let a = |z| partial_constant(z);
        assert!(a(10) > a(100) && a(100) > a(1000));
    }

    #[test]
    fn three_counting_methods_agree() {
        for x in (2..=600).chain([999, 1000, 2024, 5000]) {
            let by = |m| count_squarefree_n2m1_with(x, 10, m).unwrap().count;
            let f = by(SieveMethod::Factorization);
            assert_eq!(by(SieveMethod::Sieve), f, "x={x}");
            assert_eq!(by(SieveMethod::InclusionExclusion), f, "x={x}");
        }
    }

    #[test]
    fn family() {
        assert_eq!(n2m1_family_check(10), Err(Error::NotSquarefree(99)));
        assert!(n2m1_family_check(2).unwrap());
        assert!(n2m1_family_check(4).unwrap());
        assert_eq!(n2m1_family_check(3), Err(Error::NotSquarefree(8)));
        assert_eq!(n2m1_family_check(7), Err(Error::NotSquarefree(48)));
        for n in 2..=300u64 {
            if squarefree(n * n - 1) {
                assert!(n2m1_family_check(n).unwrap(), "n={n}");
            }
        }
    }
}
