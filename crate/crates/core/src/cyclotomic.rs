//! Exact arithmetic in `ℤ[ζ_p]`, Gauss sums, the Galois group ring and the
//! polynomial identities behind the 1952 congruence.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::{inverse_table, legendre, PrimeModulus};
use crate::precision::{Ext, EXTENDED_BITS};
use crate::quadfield::{class_number_dirichlet, fundamental_unit, regulator, regulator_extended};

/// `Σ coeffs[i]·ζ^i` over the basis `1, ζ, …, ζ^{p−2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CycInt {
    p: u64,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(p: PrimeModulus) -> Self {
        Self {
            p: p.get(),
            coeffs: vec![BigInt::zero(); p.get() as usize - 1],
        }
    }

    pub fn from_int(p: PrimeModulus, n: BigInt) -> Self {
        let mut x = Self::zero(p);
        x.coeffs[0] = n;
        x
    }

    pub fn one(p: PrimeModulus) -> Self {
        Self::from_int(p, BigInt::one())
    }

    /// `ζ^e` for any integer exponent.
    pub fn zeta_pow(p: PrimeModulus, e: i64) -> Self {
        let mut cyc = vec![BigInt::zero(); p.get() as usize];
        cyc[e.rem_euclid(p.get() as i64) as usize] = BigInt::one();
        Self::from_cyclic(p.get(), cyc)
    }

    /// `Σ c·ζ^e` over `(c, e)` pairs.
    pub fn from_terms(p: PrimeModulus, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut cyc = vec![BigInt::zero(); p.get() as usize];
        for (c, e) in terms {
            cyc[e.rem_euclid(p.get() as i64) as usize] += c;
        }
        Self::from_cyclic(p.get(), cyc)
    }

    /// Reduces a vector indexed by exponents mod p using `ζ^{p−1} = −Σ_{i<p−1} ζ^i`.
    fn from_cyclic(p: u64, mut cyc: Vec<BigInt>) -> Self {
        let top = cyc.pop().unwrap();
        if !top.is_zero() {
            for c in cyc.iter_mut() {
                *c -= &top;
            }
        }
        Self { p, coeffs: cyc }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    pub fn is_divisible_by(&self, m: &BigInt) -> bool {
        self.coeffs.iter().all(|c| c.is_multiple_of(m))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_int(PrimeModulus::new(self.p).unwrap(), BigInt::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The Galois action `σ_a: ζ ↦ ζ^a`.
    pub fn sigma(&self, a: u64) -> Self {
        let p = self.p;
        let mut cyc = vec![BigInt::zero(); p as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            cyc[((i as u64 * a) % p) as usize] += c;
        }
        Self::from_cyclic(p, cyc)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p, other.p))
        }
    }
}

/// Exact product in `ℤ[ζ_p]`.
pub fn cyc_mul(x: &CycInt, y: &CycInt) -> Result<CycInt> {
    x.check_same(y)?;
    let p = x.p as usize;
    let mut cyc = vec![BigInt::zero(); p];
    for (i, a) in x.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.coeffs.iter().enumerate() {
            if !b.is_zero() {
                cyc[(i + j) % p] += a * b;
            }
        }
    }
    Ok(CycInt::from_cyclic(x.p, cyc))
}

impl Mul for &CycInt {
    type Output = CycInt;

    fn mul(self, rhs: &CycInt) -> CycInt {
        cyc_mul(self, rhs).expect("operands over the same cyclotomic ring")
    }
}

impl Add for &CycInt {
    type Output = CycInt;

    fn add(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p);
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;

    fn sub(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p);
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;

    fn neg(self) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{sign}{coef}")?,
                1 => write!(f, "{sign}{coef}z")?,
                _ => write!(f, "{sign}{coef}z^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `τ = Σ (k/p) ζ^k`.
pub fn gauss_sum(p: PrimeModulus) -> Result<CycInt> {
    p.require_1mod4()?;
    Ok(CycInt::from_terms(
        p,
        (1..p.get() as i64).map(|k| (legendre(k, p) as i64, k)),
    ))
}

/// `Σ_a w_a σ_a` in `ℤ[Gal(ℚ(ζ_p)/ℚ)]`, indexed by `a ∈ [1, p−1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupRingElt {
    p: u64,
    weights: Vec<i64>,
}

impl GroupRingElt {
    pub fn new(p: PrimeModulus, weights: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut w = vec![0; p.get() as usize];
        for (a, x) in weights {
            let a = (a % p.get()) as usize;
            assert!(a != 0, "σ_0 is not an automorphism");
            w[a] += x;
        }
        Self { p: p.get(), weights: w }
    }

    pub fn sigma(p: PrimeModulus, a: u64) -> Self {
        Self::new(p, [(a, 1)])
    }

    /// `G = Σ (j/p) σ_j`.
    pub fn legendre_element(p: PrimeModulus) -> Self {
        Self::new(p, (1..p.get()).map(|j| (j, legendre(j as i64, p) as i64)))
    }

    pub fn weight(&self, a: u64) -> i64 {
        self.weights[(a % self.p) as usize]
    }

    pub fn apply(&self, x: &CycInt) -> Result<CycInt> {
        if x.p != self.p {
            return Err(Error::ModulusMismatch(self.p, x.p));
        }
        let mut acc = CycInt::zero(PrimeModulus::new(self.p)?);
        for a in 1..self.p {
            let w = self.weights[a as usize];
            if w != 0 {
                acc = &acc + &x.sigma(a).scale(&BigInt::from(w));
            }
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        let mut w = vec![0; self.p as usize];
        for a in 1..self.p {
            for b in 1..self.p {
                w[((a * b) % self.p) as usize] += self.weights[a as usize] * other.weights[b as usize];
            }
        }
        Ok(Self { p: self.p, weights: w })
    }

    pub fn neg(&self) -> Self {
        Self {
            p: self.p,
            weights: self.weights.iter().map(|w| -w).collect(),
        }
    }
}

/// Polynomial over `𝔽_p`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: impl IntoIterator<Item = i64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c.rem_euclid(p as i64) as u64).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}x"),
                _ => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 (mod {})", self.p)
        } else {
            write!(f, "{} (mod {})", terms.join(" + "), self.p)
        }
    }
}

fn zpoly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zpoly_pow(base: &[BigInt], mut e: u64) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = zpoly_mul(&acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = zpoly_mul(&b, &b);
        }
    }
    acc
}

fn require_nonresidue(n: u64, p: PrimeModulus) -> Result<()> {
    if n == 0 || n >= p.get() || legendre(n as i64, p) != -1 {
        Err(Error::NotNonResidue { n, p: p.get() })
    } else {
        Ok(())
    }
}

/// `f(x) = ((1 + x + … + x^{n−1})^p − Σ_{k<n} x^{kp}) / p`, reduced mod p.
pub fn f_poly(n: u64, p: PrimeModulus) -> Result<FpPoly> {
    require_nonresidue(n, p)?;
    let pv = p.get();
    let mut z = zpoly_pow(&vec![BigInt::one(); n as usize], pv);
    for k in 0..n {
        z[(k * pv) as usize] -= 1;
    }
    let pb = BigInt::from(pv);
    let mut out = Vec::with_capacity(z.len());
    for (i, c) in z.iter().enumerate() {
        let (q, r) = c.div_rem(&pb);
        if !r.is_zero() {
            return Err(Error::DivisibilityBug(format!("coefficient of x^{i} in f is not divisible by {pv}")));
        }
        out.push(q.mod_floor(&pb).try_into().unwrap_or(0i64));
    }
    Ok(FpPoly::new(pv, out))
}

/// The right-hand side of the finite expansion of `f` over `𝔽_p`:
/// `−Σ_k Σ_{nk+pj<pn} x^{nk+pj}/k + Σ_k Σ_{j<n} (j+1)x^{k+pj}/k`.
pub fn lemma7_rhs(n: u64, p: PrimeModulus) -> Result<FpPoly> {
    require_nonresidue(n, p)?;
    let pv = p.get();
    let inv = inverse_table(p);
    let mut c = vec![0i64; (pv * n) as usize];
    let m = pv as i64;
    for k in 1..pv {
        let ik = inv[k as usize] as i64;
        let mut e = n * k;
        while e < pv * n {
            c[e as usize] = (c[e as usize] - ik).rem_euclid(m);
            e += pv;
        }
        for j in 0..n {
            let e = (k + pv * j) as usize;
            c[e] = (c[e] + (j as i64 + 1) * ik).rem_euclid(m);
        }
    }
    Ok(FpPoly::new(pv, c))
}

/// With `γ = Σ_{k<n} ζ^{jk}`: `(γ − n)^{p−1} ≡ 0 (mod p)` coefficientwise.
pub fn lemma6_check(n: u64, j: u64, p: PrimeModulus) -> Result<bool> {
    require_nonresidue(n, p)?;
    if j == 0 || j >= p.get() {
        return Err(Error::OutOfRange { index: j, bound: p.get() });
    }
    let gamma_minus_n = CycInt::from_terms(
        p,
        (0..n as i64).map(|k| (1, j as i64 * k)).chain([(-(n as i64), 0)]),
    );
    Ok(gamma_minus_n.pow(p.get() - 1).is_divisible_by(&BigInt::from(p.get())))
}

/// Deviations of the two unit identities
/// `ε^{2h} = Π (1 − ζ^j)^{−(j/p)}` and `ε^{4h} = Π ((ζ^{nj} − 1)/(n(ζ^j − 1)))^{(j/p)}`,
/// each relative to `max(1, ε^{2h})` resp. `max(1, ε^{4h})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitIdentityReport {
    pub p: u64,
    pub n: u64,
    pub h: u64,
    pub eps_2h: f64,
    pub deviation_2h: f64,
    pub deviation_4h: f64,
    pub extended: bool,
}

/// Above this `p` the products are evaluated with software floats.
pub const UNIT_IDENTITY_F64_MAX_P: u64 = 50;

pub fn unit_identity_deviations(p: PrimeModulus, n: u64) -> Result<UnitIdentityReport> {
    p.require_1mod4()?;
    require_nonresidue(n, p)?;
    let h = class_number_dirichlet(p.get())?;
    let unit = fundamental_unit(p)?;
    if p.get() <= UNIT_IDENTITY_F64_MAX_P {
        let log_eps = regulator(&unit)?;
        let lhs2 = (2.0 * h as f64 * log_eps).exp();
        let lhs4 = lhs2 * lhs2;
        let zeta = |e: u64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (e % p.get()) as f64 / p.get() as f64);
        let one = Complex64::new(1.0, 0.0);
        let (mut rhs2, mut rhs4) = (one, one);
        for j in 1..p.get() {
            let chi = legendre(j as i64, p);
            let a = one - zeta(j);
            let b = (zeta(n * j) - one) / (Complex64::new(n as f64, 0.0) * (zeta(j) - one));
            if chi > 0 {
                rhs2 /= a;
                rhs4 *= b;
            } else {
                rhs2 *= a;
                rhs4 /= b;
            }
        }
        return Ok(UnitIdentityReport {
            p: p.get(),
            n,
            h,
            eps_2h: lhs2,
            deviation_2h: (rhs2 - lhs2).norm() / lhs2.max(1.0),
            deviation_4h: (rhs4 - lhs4).norm() / lhs4.max(1.0),
            extended: false,
        });
    }
    let mut ext = Ext::new(EXTENDED_BITS);
    let log_eps = regulator_extended(&unit, &mut ext)?;
    let e2 = ext.mul(&log_eps, &ext.int(2 * h as i64));
    let lhs2 = ext.exp(&e2);
    let lhs4 = ext.mul(&lhs2, &lhs2);
    let pi = ext.pi();
    let two_pi_over_p = ext.div(&ext.mul(&pi, &ext.int(2)), &ext.int(p.get() as i64));
    let zeta = |e: u64, ext: &mut Ext| {
        let x = ext.mul(&two_pi_over_p, &ext.int((e % p.get()) as i64));
        ExtComplex {
            re: ext.cos(&x),
            im: ext.sin(&x),
        }
    };
    let one = ExtComplex::real(ext.int(1));
    let nn = ExtComplex::real(ext.int(n as i64));
    let (mut rhs2, mut rhs4) = (one.clone(), one.clone());
    for j in 1..p.get() {
        let chi = legendre(j as i64, p);
        let zj = zeta(j, &mut ext);
        let znj = zeta(n * j, &mut ext);
        let a = one.sub(&zj, &ext);
        let b = znj.sub(&one, &ext).div(&nn.mul(&zj.sub(&one, &ext), &ext), &ext);
        if chi > 0 {
            rhs2 = rhs2.div(&a, &ext);
            rhs4 = rhs4.mul(&b, &ext);
        } else {
            rhs2 = rhs2.mul(&a, &ext);
            rhs4 = rhs4.div(&b, &ext);
        }
    }
    let rel = |rhs: &ExtComplex, lhs: &BigFloat, ext: &mut Ext| {
        let dr = ext.sub(&rhs.re, lhs);
        let d = ExtComplex { re: dr, im: rhs.im.clone() }.abs(ext);
        let l = ext.to_f64(lhs);
        ext.to_f64(&d) / l.max(1.0)
    };
    let deviation_2h = rel(&rhs2, &lhs2, &mut ext);
    let deviation_4h = rel(&rhs4, &lhs4, &mut ext);
    Ok(UnitIdentityReport {
        p: p.get(),
        n,
        h,
        eps_2h: ext.to_f64(&lhs2),
        deviation_2h,
        deviation_4h,
        extended: true,
    })
}

/// Both unit identities hold within `tol`.
pub fn unit_identity_check(p: PrimeModulus, n: u64, tol: f64) -> Result<bool> {
    let r = unit_identity_deviations(p, n)?;
    let deviation = r.deviation_2h.max(r.deviation_4h);
    if deviation.is_nan() || deviation >= tol {
        return Err(Error::ToleranceExceeded { deviation, tol });
    }
    Ok(true)
}

#[derive(Clone)]
struct ExtComplex {
    re: BigFloat,
    im: BigFloat,
}

impl ExtComplex {
    fn real(re: BigFloat) -> Self {
        let im = BigFloat::from_i64(0, re.mantissa_max_bit_len().unwrap_or(EXTENDED_BITS));
        Self { re, im }
    }

    fn sub(&self, o: &Self, e: &Ext) -> Self {
        Self {
            re: e.sub(&self.re, &o.re),
            im: e.sub(&self.im, &o.im),
        }
    }

    fn mul(&self, o: &Self, e: &Ext) -> Self {
        Self {
            re: e.sub(&e.mul(&self.re, &o.re), &e.mul(&self.im, &o.im)),
            im: e.add(&e.mul(&self.re, &o.im), &e.mul(&self.im, &o.re)),
        }
    }

    fn div(&self, o: &Self, e: &Ext) -> Self {
        let den = e.add(&e.mul(&o.re, &o.re), &e.mul(&o.im, &o.im));
        let num = self.mul(
            &Self {
                re: o.re.clone(),
                im: -o.im.clone(),
            },
            e,
        );
        Self {
            re: e.div(&num.re, &den),
            im: e.div(&num.im, &den),
        }
    }

    fn abs(&self, e: &mut Ext) -> BigFloat {
        e.sqrt(&e.add(&e.mul(&self.re, &self.re), &e.mul(&self.im, &self.im)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmath::primes_up_to;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    /// Naive product in `ℤ[x]/(x^p − 1)` followed by reduction, as an oracle.
    fn oracle_mul(p: u64, a: &[(i64, i64)], b: &[(i64, i64)]) -> CycInt {
        let mut terms = Vec::new();
        for &(c1, e1) in a {
            for &(c2, e2) in b {
                terms.push((c1 * c2, e1 + e2));
            }
        }
        CycInt::from_terms(pm(p), terms)
    }

    #[test]
    fn cyc_mul_examples() {
        let p = pm(5);
        let z = CycInt::zeta_pow(p, 1);
        assert_eq!(&z * &CycInt::zeta_pow(p, 4), CycInt::one(p));
        let a = CycInt::from_terms(p, [(1, 1), (-1, 0)]);
        let b = CycInt::from_terms(p, [(1, 4), (-1, 0)]);
        // (ζ−1)(ζ⁴−1) = 2 − ζ − ζ⁴ = 3 + 2ζ^2 + ... after reducing ζ⁴
        let prod = &a * &b;
        assert_eq!(prod, oracle_mul(5, &[(1, 1), (-1, 0)], &[(1, 4), (-1, 0)]));
        assert_eq!(prod.coeffs(), &[3.into(), 0.into(), 1.into(), 1.into()]);
        assert_eq!(&a * &CycInt::one(p), a);
        assert_eq!(cyc_mul(&a, &CycInt::one(pm(7))), Err(Error::ModulusMismatch(5, 7)));
        assert_eq!(CycInt::zeta_pow(p, 4).to_string(), "-1-z-z^2-z^3");
    }

    #[test]
    fn gauss_sum_squares_to_p() {
        let t5 = gauss_sum(pm(5)).unwrap();
        assert_eq!(t5, CycInt::from_terms(pm(5), [(1, 1), (-1, 2), (-1, 3), (1, 4)]));
        for p in primes_up_to(200).into_iter().filter(|p| p % 4 == 1) {
            let t = gauss_sum(pm(p)).unwrap();
            assert_eq!((&t * &t).as_integer(), Some(&BigInt::from(p)), "p={p}");
        }
        assert!(gauss_sum(pm(7)).is_err());
    }

    #[test]
    fn legendre_element_acts_by_character() {
        for p in primes_up_to(100).into_iter().filter(|p| p % 4 == 1) {
            let p = pm(p);
            let g = GroupRingElt::legendre_element(p);
            let tau = gauss_sum(p).unwrap();
            assert!(g.apply(&CycInt::one(p)).unwrap().is_zero());
            for a in 1..p.get() {
                let lhs = g.apply(&CycInt::zeta_pow(p, a as i64)).unwrap();
                let rhs = tau.scale(&BigInt::from(legendre(a as i64, p)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn change_of_variables() {
        for p in [5u64, 13, 17, 29] {
            let p = pm(p);
            let g = GroupRingElt::legendre_element(p);
            for n in (1..p.get()).filter(|&n| legendre(n as i64, p) == -1) {
                let shifted = GroupRingElt::sigma(p, n).mul(&g).unwrap();
                assert_eq!(shifted, g.neg());
                let reindexed = GroupRingElt::new(p, (1..p.get()).map(|j| (n * j, legendre((n * j) as i64, p) as i64)));
                assert_eq!(reindexed, g);
            }
        }
    }

    #[test]
    fn f_poly_examples() {
        assert_eq!(f_poly(2, pm(5)).unwrap(), FpPoly::new(5, [0, 1, 2, 2, 1]));
        let f = f_poly(3, pm(5)).unwrap();
        assert_eq!(f.coeffs[0], 0);
        assert!(f.degree().unwrap() <= 10);
        assert!(matches!(f_poly(4, pm(5)), Err(Error::NotNonResidue { .. })));
        assert!(matches!(f_poly(1, pm(5)), Err(Error::NotNonResidue { .. })));
        assert_eq!(f_poly(2, pm(5)).unwrap().to_string(), "1x + 2x^2 + 2x^3 + 1x^4 (mod 5)");
    }

    #[test]
    fn f_poly_matches_multinomial_oracle() {
        // coefficient of x^e in (1+x+…+x^{n−1})^p counts compositions; check via DP
        for (p, n) in [(5u64, 3u64), (13, 2), (13, 5), (17, 3)] {
            let mut dp = vec![BigInt::one()];
            for _ in 0..p {
                let mut next = vec![BigInt::zero(); dp.len() + n as usize - 1];
                for (i, c) in dp.iter().enumerate() {
                    for d in 0..n as usize {
                        next[i + d] += c;
                    }
                }
                dp = next;
            }
            for k in 0..n {
                dp[(k * p) as usize] -= 1;
            }
            let expect = FpPoly::new(p, dp.iter().map(|c| i64::try_from((c / p).mod_floor(&BigInt::from(p))).unwrap()));
            assert_eq!(f_poly(n, pm(p)).unwrap(), expect);
        }
    }

    #[test]
    fn lemma7_expansion() {
        for p in [5u64, 13, 17] {
            for n in (2..p).filter(|&n| legendre(n as i64, pm(p)) == -1) {
                assert_eq!(f_poly(n, pm(p)).unwrap(), lemma7_rhs(n, pm(p)).unwrap(), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn lemma6_examples() {
        let p = pm(5);
        let x = CycInt::from_terms(p, [(1, 1), (-1, 0)]).pow(4);
        assert_eq!(x, CycInt::from_terms(p, [(-5, 3), (5, 2), (-5, 1)]));
        assert!(lemma6_check(2, 1, p).unwrap());
        assert!(lemma6_check(3, 2, p).unwrap());
        assert!(lemma6_check(2, 1, pm(13)).unwrap());
        for q in primes_up_to(50).into_iter().filter(|&q| q > 2) {
            for n in (2..q).filter(|&n| legendre(n as i64, pm(q)) == -1) {
                for j in 1..q {
                    assert!(lemma6_check(n, j, pm(q)).unwrap(), "p={q} n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn unit_identities() {
        let r = unit_identity_deviations(pm(5), 2).unwrap();
        let s72 = 2.0 * (72f64).to_radians().sin();
        let s36 = 2.0 * (36f64).to_radians().sin();
        assert!((r.eps_2h - (s72 / s36).powi(2)).abs() < 1e-12);
        assert!((r.eps_2h - 2.618033988749895).abs() < 1e-12);
        assert!(unit_identity_check(pm(5), 2, 1e-9).unwrap());
        assert!(unit_identity_check(pm(13), 2, 1e-8).unwrap());
        assert!(unit_identity_check(pm(17), 3, 1e-8).unwrap());
        assert!(unit_identity_check(pm(29), 2, 1e-8).unwrap());
    }

    #[test]
    fn unit_identities_extended() {
        for (p, n) in [(53u64, 2u64), (101, 2), (61, 2)] {
            let r = unit_identity_deviations(pm(p), n).unwrap();
            assert!(r.extended);
            assert!(r.deviation_2h < 1e-30 && r.deviation_4h < 1e-30, "{r:?}");
        }
    }
}
