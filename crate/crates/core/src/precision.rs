//! Software extended-precision helpers on top of `astro-float`.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;

/// Working precision (mantissa bits) of the extended path.
pub const EXTENDED_BITS: usize = 256;

/// Floating-point precision used by the analytic computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub enum Precision {
    /// 53-bit mantissas with compensated summation.
    #[default]
    Double,
    /// [`EXTENDED_BITS`]-bit mantissas.
    Extended,
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "f64" | "double" => Ok(Precision::Double),
            "ext" | "extended" => Ok(Precision::Extended),
            other => Err(format!("unknown precision '{other}' (expected f64 or extended)")),
        }
    }
}

/// A precision/rounding/constants bundle for `astro-float` calls.
pub struct Ext {
    pub bits: usize,
    pub rm: RoundingMode,
    pub cc: Consts,
}

impl Ext {
    pub fn new(bits: usize) -> Self {
        Self {
            bits,
            rm: RoundingMode::ToEven,
            cc: Consts::new().expect("astro-float constants cache"),
        }
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.bits)
    }

    pub fn big(&mut self, n: &BigInt) -> BigFloat {
        BigFloat::parse(&n.to_string(), Radix::Dec, self.bits, self.rm, &mut self.cc)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.bits, self.rm)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, self.rm)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, self.rm)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, self.rm)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, self.rm)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, self.rm)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.bits, self.rm, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.bits, self.rm, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.bits, self.rm, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.bits, self.rm, &mut self.cc)
    }

    pub fn to_f64(&mut self, a: &BigFloat) -> f64 {
        self.to_decimal(a).parse().unwrap_or(f64::NAN)
    }

    /// Decimal scientific notation, e.g. `1.7627471740390860e+0`.
    pub fn to_decimal(&mut self, a: &BigFloat) -> String {
        a.format(Radix::Dec, self.rm, &mut self.cc)
            .unwrap_or_else(|_| "NaN".into())
    }
}

/// Neumaier-compensated sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
