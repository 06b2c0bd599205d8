//! Class numbers from the analytic class number formula, and regulators.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::{kronecker, PrimeModulus};
use crate::precision::{CompensatedSum, Ext, Precision, EXTENDED_BITS};

use super::cf::{unit_of_discriminant, FundamentalUnit, PellSolution};

/// A unit `ε = (t + u√Δ)/2` with `t² − Δu² = 4·norm`.
pub trait QuadraticUnit {
    fn half_coordinates(&self) -> (BigInt, BigInt, u64, i8);
}

impl QuadraticUnit for FundamentalUnit {
    fn half_coordinates(&self) -> (BigInt, BigInt, u64, i8) {
        (self.t.clone(), self.u.clone(), self.discriminant, self.norm_sign)
    }
}

impl QuadraticUnit for PellSolution {
    fn half_coordinates(&self) -> (BigInt, BigInt, u64, i8) {
        (&self.u1 * 2, &self.v1 * 2, self.d, 1)
    }
}

/// Natural log of a positive big integer from its leading 64 bits.
pub(crate) fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log ε` in double precision, relative error around 1e-15.
pub fn regulator<U: QuadraticUnit>(unit: &U) -> Result<f64> {
    let (t, u, _, norm) = unit.half_coordinates();
    if !u.is_positive() || !t.is_positive() {
        return Err(Error::DegenerateUnit);
    }
    // ε = (t/2)(1 + sqrt(1 − 4N/t²))
    let lt = ln_big(&t);
    let r = 4.0 * norm as f64 * (-2.0 * lt).exp();
    Ok(lt + ((1.0 + (1.0 - r).sqrt()) / 2.0).ln())
}

/// `log ε` at extended precision.
pub fn regulator_extended<U: QuadraticUnit>(unit: &U, ext: &mut Ext) -> Result<astro_float::BigFloat> {
    let (t, u, disc, _) = unit.half_coordinates();
    if !u.is_positive() || !t.is_positive() {
        return Err(Error::DegenerateUnit);
    }
    let tf = ext.big(&t);
    let uf = ext.big(&u);
    let root = ext.sqrt(&ext.int(disc as i64));
    let sum = ext.add(&tf, &ext.mul(&uf, &root));
    let eps = ext.div(&sum, &ext.int(2));
    Ok(ext.ln(&eps))
}

fn is_squarefree_u64(mut n: u64) -> bool {
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return false;
            }
        }
        q += 1;
    }
    true
}

/// Whether `d > 1` is the discriminant of a real quadratic field.
pub fn is_fundamental_discriminant(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    match d % 4 {
        1 => is_squarefree_u64(d),
        0 => matches!((d / 4) % 4, 2 | 3) && is_squarefree_u64(d / 4),
        _ => false,
    }
}

/// Outcome of the analytic formula before rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassNumberEstimate {
    pub h: u64,
    pub raw: f64,
    pub distance: f64,
    pub precision: Precision,
}

/// `h(d) = −Σ_{0<a<d/2} χ(a)·log sin(πa/d) / log ε` for a real primitive
/// character of conductor `d`.
pub fn class_number_dirichlet(d: u64) -> Result<u64> {
    match class_number_dirichlet_with(d, Precision::Double) {
        Err(Error::PrecisionLoss { .. }) => class_number_dirichlet_with(d, Precision::Extended).map(|e| e.h),
        other => other.map(|e| e.h),
    }
}

pub fn class_number_dirichlet_with(d: u64, precision: Precision) -> Result<ClassNumberEstimate> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::BadDiscriminant(d));
    }
    let unit = unit_of_discriminant(d)?;
    let half = d.div_ceil(2);
    let raw = match precision {
        Precision::Double => {
            let log_eps = regulator(&unit)?;
            let mut s = CompensatedSum::default();
            for a in 1..half {
                let chi = kronecker(d as i64, a as i64);
                if chi != 0 {
                    s.add(chi as f64 * (std::f64::consts::PI * a as f64 / d as f64).sin().ln());
                }
            }
            -s.value() / log_eps
        }
        Precision::Extended => {
            let mut ext = Ext::new(EXTENDED_BITS);
            let log_eps = regulator_extended(&unit, &mut ext)?;
            let pi = ext.pi();
            let step = ext.div(&pi, &ext.int(d as i64));
            let mut s = ext.int(0);
            for a in 1..half {
                let chi = kronecker(d as i64, a as i64);
                if chi != 0 {
                    let x = ext.mul(&step, &ext.int(a as i64));
                    let sin = ext.sin(&x);
                    let term = ext.ln(&sin);
                    s = if chi > 0 { ext.sub(&s, &term) } else { ext.add(&s, &term) };
                }
            }
            let h = ext.div(&s, &log_eps);
            ext.to_f64(&h)
        }
    };
    let h = raw.round();
    let distance = (raw - h).abs();
    if distance.is_nan() || distance >= 0.25 || h < 1.0 {
        return Err(Error::PrecisionLoss { value: raw, distance });
    }
    Ok(ClassNumberEstimate {
        h: h as u64,
        raw,
        distance,
        precision,
    })
}

/// Truncated Dirichlet series `Σ_{n≤N} χ(n)/n` with a partial-summation tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesEstimate {
    pub value: f64,
    pub error_bound: f64,
}

pub fn l1_series_estimate(d: u64, terms: u64) -> Result<SeriesEstimate> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::BadDiscriminant(d));
    }
    let mut s = CompensatedSum::default();
    for n in 1..=terms {
        let chi = kronecker(d as i64, n as i64);
        if chi != 0 {
            s.add(chi as f64 / n as f64);
        }
    }
    // |Σ_{n>N} χ(n)/n| ≤ 2·max|S(x)|/(N+1), S periodic with period d
    let (mut partial, mut max_abs) = (0i64, 0i64);
    for n in 1..=d {
        partial += kronecker(d as i64, n as i64) as i64;
        max_abs = max_abs.max(partial.abs());
    }
    Ok(SeriesEstimate {
        value: s.value(),
        error_bound: 2.0 * max_abs as f64 / (terms + 1) as f64,
    })
}

/// `h < p` for the field `ℚ(√p)`.
pub fn class_number_bound_check(p: PrimeModulus) -> Result<bool> {
    p.require_1mod4()?;
    Ok(class_number_dirichlet(p.get())? < p.get())
}
