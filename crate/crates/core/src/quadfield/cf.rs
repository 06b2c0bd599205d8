//! Continued fractions of quadratic irrationals `(P0 + √D)/Q0` and the units
//! read off their convergents.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::{isqrt, is_square, PrimeModulus};

/// One step of the PQa recurrence.
#[derive(Debug, Clone)]
pub(crate) struct PqaStep {
    pub a: u64,
    /// `G_i = Q0·A_i − P0·B_i`
    pub g: BigInt,
    /// `B_i`
    pub b: BigInt,
    /// `Q_{i+1}`
    pub q_next: i128,
}

/// Iterator over the PQa recurrence for `(p0 + √d)/q0` with `q0 | d − p0²`.
///
/// Each step satisfies `G_i² − d·B_i² = (−1)^{i+1}·Q_{i+1}·Q_0`.
pub(crate) struct Pqa {
    d: i128,
    s: i128,
    p: i128,
    q: i128,
    g: (BigInt, BigInt),
    b: (BigInt, BigInt),
}

impl Pqa {
    pub fn new(p0: i64, q0: i64, d: u64) -> Self {
        debug_assert!(q0 > 0 && (d as i128 - (p0 as i128).pow(2)) % q0 as i128 == 0);
        Self {
            d: d as i128,
            s: isqrt(d) as i128,
            p: p0 as i128,
            q: q0 as i128,
            g: (BigInt::from(-p0), BigInt::from(q0)),
            b: (BigInt::one(), BigInt::zero()),
        }
    }
}

impl Iterator for Pqa {
    type Item = PqaStep;

    fn next(&mut self) -> Option<PqaStep> {
        // floor((P + √D)/Q) = floor((P + ⌊√D⌋)/Q) for Q > 0 and D nonsquare
        let a = (self.p + self.s).div_euclid(self.q);
        let g = &self.g.1 * a + &self.g.0;
        let b = &self.b.1 * a + &self.b.0;
        let p_next = a * self.q - self.p;
        let q_next = (self.d - p_next * p_next) / self.q;
        self.g = (std::mem::replace(&mut self.g.1, g.clone()), g.clone());
        self.b = (std::mem::replace(&mut self.b.1, b.clone()), b.clone());
        self.p = p_next;
        self.q = q_next;
        Some(PqaStep {
            a: a as u64,
            g,
            b,
            q_next,
        })
    }
}

/// Periodic continued fraction `√D = [a0; period...]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CFExpansion {
    pub d: u64,
    pub a0: u64,
    pub period: Vec<u64>,
}

fn require_nonsquare(d: u64) -> Result<()> {
    if is_square(d) {
        Err(Error::PerfectSquare(d))
    } else {
        Ok(())
    }
}

pub fn cf_sqrt(d: u64) -> Result<CFExpansion> {
    require_nonsquare(d)?;
    let a0 = isqrt(d);
    let mut period = Vec::new();
    for (i, step) in Pqa::new(0, 1, d).enumerate() {
        if i > 0 {
            period.push(step.a);
        }
        if step.q_next == 1 {
            period.push(2 * a0);
            break;
        }
    }
    Ok(CFExpansion { d, a0, period })
}

/// Convergent `(h, k)` at the end of the first period of `√D`, together with
/// `h² − D·k²` (which is ±1).
pub fn period_convergent(d: u64) -> Result<(BigInt, BigInt, i8)> {
    require_nonsquare(d)?;
    for (i, step) in Pqa::new(0, 1, d).enumerate() {
        if step.q_next == 1 {
            let norm = if i % 2 == 0 { -1 } else { 1 };
            return Ok((step.g, step.b, norm));
        }
    }
    unreachable!("PQa of a quadratic irrational is periodic")
}

/// Fundamental unit `ε = (t + u√Δ)/2` of the order of discriminant `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalUnit {
    pub discriminant: u64,
    pub t: BigInt,
    pub u: BigInt,
    /// Norm of ε: `t² − Δu² = 4·norm_sign`.
    pub norm_sign: i8,
}

impl FundamentalUnit {
    /// Exact check of `t² − Δu² = 4·norm_sign`.
    pub fn is_valid(&self) -> bool {
        let lhs = &self.t * &self.t - &self.u * &self.u * self.discriminant;
        lhs == BigInt::from(4 * self.norm_sign as i64) && self.t.is_positive() && self.u.is_positive()
    }
}

/// Least positive solution of `u² − D·v² = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    pub d: u64,
    pub u1: BigInt,
    pub v1: BigInt,
}

impl PellSolution {
    pub fn is_valid(&self) -> bool {
        &self.u1 * &self.u1 - &self.v1 * &self.v1 * self.d == BigInt::one()
    }
}

/// Whether `Δ` is `≡ 0, 1 (mod 4)`, positive and not a square.
pub fn is_discriminant(disc: u64) -> bool {
    disc > 1 && matches!(disc % 4, 0 | 1) && !is_square(disc)
}

/// Fundamental unit of the quadratic order of discriminant `disc`, from the
/// continued fraction of `(σ + √Δ)/2`, `σ = Δ mod 2`.
pub fn unit_of_discriminant(disc: u64) -> Result<FundamentalUnit> {
    if !is_discriminant(disc) {
        return Err(Error::BadDiscriminant(disc));
    }
    let p0 = (disc % 2) as i64;
    for (i, step) in Pqa::new(p0, 2, disc).enumerate() {
        if step.q_next == 2 {
            return Ok(FundamentalUnit {
                discriminant: disc,
                t: step.g,
                u: step.b,
                norm_sign: if i % 2 == 0 { -1 } else { 1 },
            });
        }
    }
    unreachable!("PQa of a quadratic irrational is periodic")
}

/// Fundamental unit of `ℚ(√p)` for a prime `p ≡ 1 (mod 4)`.
pub fn fundamental_unit(p: PrimeModulus) -> Result<FundamentalUnit> {
    p.require_1mod4()?;
    unit_of_discriminant(p.get())
}

pub fn pell_min_solution(d: u64) -> Result<PellSolution> {
    let (h, k, norm) = period_convergent(d)?;
    let (u1, v1) = if norm == 1 {
        (h, k)
    } else {
        (&h * &h + &k * &k * d, BigInt::from(2) * &h * &k)
    };
    Ok(PellSolution { d, u1, v1 })
}
