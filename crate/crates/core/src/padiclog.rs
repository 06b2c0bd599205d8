//! Valuations and the p-adic logarithm on `ℤ_p`, truncated mod `p^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::{fermat_quotient_mod, reduce_big, PrimeModulus};

pub const DEFAULT_PRECISION: u32 = 2;
pub const MAX_PRECISION: u32 = 8;

/// Largest `v` with `p^v | n`, for `n ≠ 0`.
pub fn vp_int(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn vp(x: &BigRational, p: PrimeModulus) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(vp_int(x.numer(), p.get()) as i64 - vp_int(x.denom(), p.get()) as i64)
}

/// `p^v·value` with `value` a unit known mod `p^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicApprox {
    pub p: u64,
    pub precision: u32,
    pub value: BigInt,
    pub valuation: i64,
}

impl PadicApprox {
    pub fn from_rational(x: &BigRational, p: PrimeModulus, k: u32) -> Result<Self> {
        let v = vp(x, p)?;
        let pk = BigInt::from(p.get()).pow(k);
        let pv = BigInt::from(p.get()).pow(v.unsigned_abs() as u32);
        let (num, den) = if v >= 0 {
            (x.numer() / &pv, x.denom().clone())
        } else {
            (x.numer().clone(), x.denom() / &pv)
        };
        Ok(Self {
            p: p.get(),
            precision: k,
            value: rational_mod(&num, &den, &pk)?,
            valuation: v,
        })
    }
}

fn check_precision(k: u32) -> Result<()> {
    if (1..=MAX_PRECISION).contains(&k) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            index: k as u64,
            bound: MAX_PRECISION as u64 + 1,
        })
    }
}

/// `num/den mod m` for `den` coprime to `m`.
fn rational_mod(num: &BigInt, den: &BigInt, m: &BigInt) -> Result<BigInt> {
    let d = den.mod_floor(m);
    let e = d.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::NotInvertible {
            value: den.to_string(),
            modulus: m.to_string(),
        });
    }
    Ok((num.mod_floor(m) * e.x).mod_floor(m))
}

/// Number of series terms after which every omitted `z^n/n` has valuation `≥ k`,
/// given `v_p(z) ≥ 1`.
pub fn series_terms(p: u64, k: u32) -> u64 {
    let ilog = |n: u64| n.ilog(p) as u64;
    let mut n = 1u64;
    // n − ⌊log_p n⌋ is nondecreasing, so the first n past the threshold bounds the tail
    while (n + 1) - ilog(n + 1) < k as u64 {
        n += 1;
    }
    n
}

/// `log(1 + z) = Σ (−1)^{n−1} z^n/n` mod `p^k`, summed exactly over ℚ.
pub fn padic_log_1plus(z: &BigInt, p: PrimeModulus, k: u32) -> Result<BigInt> {
    padic_log_1plus_terms(z, p, k, series_terms(p.get(), k))
}

pub fn padic_log_1plus_terms(z: &BigInt, p: PrimeModulus, k: u32, terms: u64) -> Result<BigInt> {
    check_precision(k)?;
    if z.is_zero() {
        return Ok(BigInt::zero());
    }
    if vp_int(z, p.get()) == 0 {
        return Err(Error::NotSmall);
    }
    let mut sum = BigRational::zero();
    let mut power = BigInt::one();
    for n in 1..=terms {
        power *= z;
        let term = BigRational::new(power.clone(), BigInt::from(n));
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let pk = BigInt::from(p.get()).pow(k);
    if sum.is_zero() {
        return Ok(BigInt::zero());
    }
    rational_mod(sum.numer(), sum.denom(), &pk)
}

/// `log_p(a) = (p−1)^{−1}·log(a^{p−1})` for a unit `a`.
pub fn padic_log_unit(a: &BigInt, p: PrimeModulus, k: u32) -> Result<BigInt> {
    check_precision(k)?;
    if k < 2 {
        return Err(Error::OutOfRange { index: k as u64, bound: 2 });
    }
    if reduce_big(a, p.get()) == 0 {
        return Err(Error::DivisibleBase {
            base: a.to_string(),
            p: p.get(),
        });
    }
    let pk = BigInt::from(p.get()).pow(k);
    let a = a.mod_floor(&pk);
    let z = (a.modpow(&BigInt::from(p.get() - 1), &pk) - 1u32).mod_floor(&pk);
    let log = padic_log_1plus(&z, p, k)?;
    rational_mod(&log, &BigInt::from(p.get() - 1), &pk)
}

/// `log_p(x) ≡ (x^p − 1)/p (mod p)` for an integer `x ≡ 1 (mod p)`.
pub fn theorem4_check(x: &BigInt, p: PrimeModulus) -> Result<bool> {
    Ok(theorem4_sides(x, p, 1)?.0 == theorem4_sides(x, p, 1)?.1)
}

/// Both sides of the congruence in [`theorem4_check`], reduced mod `p^k`.
pub fn theorem4_sides(x: &BigInt, p: PrimeModulus, k: u32) -> Result<(BigInt, BigInt)> {
    if reduce_big(x, p.get()) != 1 {
        return Err(Error::HypothesisFail(format!("{x} is not 1 mod {p}")));
    }
    let pk = BigInt::from(p.get()).pow(k);
    let lhs = padic_log_1plus(&(x - 1u32), p, k.max(2))?.mod_floor(&pk);
    let pb = BigInt::from(p.get());
    let (q, r) = (x.pow(p.get() as u32) - 1u32).div_rem(&pb);
    if !r.is_zero() {
        return Err(Error::DivisibilityBug(format!("p does not divide {x}^p - 1")));
    }
    Ok((lhs, q.mod_floor(&pk)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    /// `(Π values − sign)/p mod p`
    pub omega: u64,
    pub fq_sum: u64,
    /// `Ω ≡ ΣF` for sign −1, `Ω ≡ −ΣF` for sign +1.
    pub holds: bool,
    /// `Ω ≡ ΣF` regardless of sign.
    pub printed_form_holds: bool,
}

pub fn omega_from_products(values: &[BigInt], target_sign: i8, p: PrimeModulus) -> Result<OmegaReport> {
    let pv = p.get();
    let prod: BigInt = values.iter().product();
    let sign = BigInt::from(target_sign);
    let (omega, r) = (&prod - &sign).div_rem(&BigInt::from(pv));
    if !r.is_zero() {
        return Err(Error::WrongSign {
            expected: target_sign,
            p: pv,
        });
    }
    let omega = reduce_big(&omega, pv);
    let mut fq_sum = 0u64;
    for v in values {
        fq_sum = (fq_sum + fermat_quotient_mod(v, p)?) % pv;
    }
    let expected = if target_sign < 0 { fq_sum } else { (pv - fq_sum) % pv };
    Ok(OmegaReport {
        omega,
        fq_sum,
        holds: omega == expected,
        printed_form_holds: omega == fq_sum,
    })
}
