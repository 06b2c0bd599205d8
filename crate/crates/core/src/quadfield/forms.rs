//! Reduced indefinite binary quadratic forms and their ρ-cycles.

use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::isqrt;

use super::cf::is_discriminant;

/// The form `a·x² + b·xy + c·y²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// `0 < b < √Δ` and `√Δ − b < 2|a| < √Δ + b`, with `s = ⌊√Δ⌋`.
    pub fn is_reduced(&self, s: i64) -> bool {
        let two_a = 2 * self.a.abs();
        self.b >= 1 && self.b <= s && two_a + self.b > s && two_a - self.b <= s
    }

    /// One reduction step `(a, b, c) ↦ (c, b*, c*)` with `b* ≡ −b (mod 2c)` and
    /// `√Δ − 2|c| < b* < √Δ`.
    pub fn rho(&self, disc: i64, s: i64) -> QuadForm {
        let m = 2 * self.c.abs();
        // largest b* <= s with b* ≡ -b (mod 2|c|)
        let b_star = s - (s + self.b).rem_euclid(m);
        let c_star = (b_star * b_star - disc) / (4 * self.c);
        QuadForm {
            a: self.c,
            b: b_star,
            c: c_star,
        }
    }
}

/// All reduced primitive forms of discriminant `disc`.
pub fn reduced_forms(disc: u64) -> Result<Vec<QuadForm>> {
    if !is_discriminant(disc) {
        return Err(Error::BadDiscriminant(disc));
    }
    let d = disc as i64;
    let s = isqrt(disc) as i64;
    let mut out = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= s {
        // a·c = (b² − Δ)/4 < 0
        let n = (d - b * b) / 4;
        // s < 2|a| + b  and  2|a| − b <= s
        let lo = (s - b) / 2 + 1;
        let hi = (s + b) / 2;
        for a_abs in lo.max(1)..=hi {
            if n % a_abs != 0 {
                continue;
            }
            let c_abs = n / a_abs;
            for sign in [1i64, -1] {
                let f = QuadForm {
                    a: sign * a_abs,
                    b,
                    c: -sign * c_abs,
                };
                if f.is_primitive() {
                    debug_assert!(f.is_reduced(s));
                    out.push(f);
                }
            }
        }
        b += 2;
    }
    out.sort();
    Ok(out)
}

/// The ρ-cycles of reduced forms, each listed from its least member.
pub fn form_cycles(disc: u64) -> Result<Vec<Vec<QuadForm>>> {
    let forms = reduced_forms(disc)?;
    let d = disc as i64;
    let s = isqrt(disc) as i64;
    let mut cycle_of: HashMap<QuadForm, usize> = HashMap::with_capacity(forms.len());
    let mut cycles = Vec::new();
    for f in &forms {
        if cycle_of.contains_key(f) {
            continue;
        }
        let id = cycles.len();
        let mut cycle = vec![*f];
        cycle_of.insert(*f, id);
        let mut g = f.rho(d, s);
        while g != *f {
            debug_assert!(g.is_reduced(s), "rho left the reduced set at {g:?}");
            cycle_of.insert(g, id);
            cycle.push(g);
            g = g.rho(d, s);
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Number of proper (SL₂) equivalence classes of primitive forms of
/// discriminant `disc`, i.e. the number of ρ-cycles.
pub fn form_class_number(disc: u64) -> Result<u64> {
    Ok(form_cycles(disc)?.len() as u64)
}

/// Number of wide classes: proper classes merged with their negatives
/// `(a, b, c) ~ (−a, b, −c)`.
///
/// This is the class number that pairs with the fundamental unit in the
/// analytic class number formula.
pub fn form_class_number_wide(disc: u64) -> Result<u64> {
    let cycles = form_cycles(disc)?;
    let mut index = HashMap::new();
    for (i, cyc) in cycles.iter().enumerate() {
        for f in cyc {
            index.insert(*f, i);
        }
    }
    let mut parent: Vec<usize> = (0..cycles.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, cyc) in cycles.iter().enumerate() {
        let f = cyc[0];
        let conj = QuadForm {
            a: -f.a,
            b: f.b,
            c: -f.c,
        };
        let j = index[&conj];
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
        }
    }
    Ok((0..cycles.len()).filter(|&i| find(&mut parent, i) == i).count() as u64)
}
