//! Root classification reports: on-circle / real-off-circle /
//! nonreal-off-circle, with the serialized JSON-lines sink format.

use super::roots::polynomial_roots;
use crate::error::Result;
use crate::exact::LaurentPolynomial;
use crate::numerics::{log2_abs, to_f64, ComplexHP, NumCtx, RM};
use astro_float::BigFloat;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootClass {
    OnCircle,
    RealOffCircle,
    NonrealOffCircle,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedRoot {
    /// full-precision decimal strings
    pub re: String,
    pub im: String,
    /// rounded display values
    pub re_approx: f64,
    pub im_approx: f64,
    /// | |z| - 1 |
    pub abs_dev: f64,
    pub class: RootClass,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub on_circle: usize,
    pub real_off_circle: usize,
    pub nonreal_off_circle: usize,
}

/// One polynomial's report; serialized as one JSON line in the sink.
#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub family: String,
    pub k: u32,
    pub chi: String,
    pub psi: String,
    pub chi_conductor: String,
    pub psi_conductor: String,
    pub degree: i64,
    pub lowest_exponent: i64,
    pub zero_roots: usize,
    pub self_inversive: bool,
    pub epsilon: i8,
    pub roots: Vec<ClassifiedRoot>,
    pub classification_counts: ClassCounts,
    pub max_circle_deviation: f64,
    /// nonreal off-circle roots grouped into (z, conj z, 1/z, 1/conj z)
    /// quadruples; None when the polynomial is not self-inversive
    pub off_circle_quadruples: Option<usize>,
    pub precision_bits: usize,
    pub tolerance: f64,
}

pub(crate) struct PolynomialId {
    pub family: String,
    pub k: u32,
    pub chi: String,
    pub psi: String,
    pub chi_conductor: String,
    pub psi_conductor: String,
}

/// Classifies every root of p by distance of |z| from 1 at the given
/// tolerance. Off-circle nonreal roots of self-inversive polynomials are
/// paired into reciprocal quadruples.
pub fn unimodularity_report(p: &LaurentPolynomial, tolerance: f64, precision: usize) -> Result<RootReport> {
    let id = PolynomialId {
        family: "adhoc".into(),
        k: 0,
        chi: String::new(),
        psi: String::new(),
        chi_conductor: String::new(),
        psi_conductor: String::new(),
    };
    report_with_id(id, p, tolerance, precision)
}

pub(crate) fn report_with_id(
    id: PolynomialId,
    p: &LaurentPolynomial,
    tolerance: f64,
    precision: usize,
) -> Result<RootReport> {
    let found = polynomial_roots(p, precision)?;
    let mut ctx = NumCtx::new(precision);
    let one = BigFloat::from_i8(1, precision);
    let eps_real = 2f64.powf(-(precision as f64) / 4.0).max(tolerance.min(1e-6));

    // the only exponent a reflection X^w p(1/X) can preserve is w = low + high
    let reflection_k = match (p.lowest_exponent(), p.degree()) {
        (Some(low), Some(high)) => low + high + 2,
        _ => 2,
    };
    let self_inv_pos = super::self_inversive_check(p, reflection_k, 1);
    let self_inv_neg = super::self_inversive_check(p, reflection_k, -1);
    let self_inversive = self_inv_pos || self_inv_neg;
    let epsilon: i8 = if self_inv_pos {
        1
    } else if self_inv_neg {
        -1
    } else {
        0
    };

    let mut roots = Vec::with_capacity(found.roots.len());
    let mut counts = ClassCounts::default();
    let mut max_dev = 0f64;
    for z in &found.roots {
        let dev_f = {
            let dev = z.abs().sub(&one, precision, RM);
            to_f64(&dev).abs()
        };
        max_dev = max_dev.max(dev_f);
        let is_real = log2_abs(&z.im) < log2_abs(&z.abs()) + (eps_real.log2());
        let class = if dev_f < tolerance {
            counts.on_circle += 1;
            RootClass::OnCircle
        } else if is_real {
            counts.real_off_circle += 1;
            RootClass::RealOffCircle
        } else {
            counts.nonreal_off_circle += 1;
            RootClass::NonrealOffCircle
        };
        let (re, im) = z.to_decimal_strings(&mut ctx);
        let (re_approx, im_approx) = z.to_f64_pair();
        roots.push(ClassifiedRoot { re, im, re_approx, im_approx, abs_dev: dev_f, class });
    }

    let off_circle_quadruples = if self_inversive {
        Some(count_reciprocal_quadruples(&found.roots, &roots, tolerance))
    } else {
        None
    };

    Ok(RootReport {
        family: id.family,
        k: id.k,
        chi: id.chi,
        psi: id.psi,
        chi_conductor: id.chi_conductor,
        psi_conductor: id.psi_conductor,
        degree: p.degree().unwrap_or(0),
        lowest_exponent: p.lowest_exponent().unwrap_or(0),
        zero_roots: found.zero_roots,
        self_inversive,
        epsilon,
        roots,
        classification_counts: counts,
        max_circle_deviation: max_dev,
        off_circle_quadruples,
        precision_bits: precision,
        tolerance,
    })
}

/// Groups nonreal off-circle roots into {z, conj z, 1/z, 1/conj z} orbits,
/// matching within a loosened tolerance.
fn count_reciprocal_quadruples(values: &[ComplexHP], classified: &[ClassifiedRoot], tolerance: f64) -> usize {
    let idx: Vec<usize> = classified
        .iter()
        .enumerate()
        .filter(|(_, r)| r.class == RootClass::NonrealOffCircle)
        .map(|(i, _)| i)
        .collect();
    let mut used = vec![false; idx.len()];
    let match_tol = (tolerance * 16.0).max(1e-12);
    let mut quadruples = 0usize;
    for a in 0..idx.len() {
        if used[a] {
            continue;
        }
        let z = &values[idx[a]];
        let orbit = [z.conj(), z.recip(), z.conj().recip()];
        let mut members = vec![a];
        for target in &orbit {
            for b in 0..idx.len() {
                if used[b] || members.contains(&b) {
                    continue;
                }
                if to_f64(&values[idx[b]].dist(target)) < match_tol {
                    members.push(b);
                    break;
                }
            }
        }
        if members.len() == 4 {
            for m in members {
                used[m] = true;
            }
            quadruples += 1;
        } else {
            used[a] = true; // unpaired; counted as zero quadruples
        }
    }
    quadruples
}
