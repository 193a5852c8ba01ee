//! Cheeger-number machinery for P_delta (delta > 0): the exact rational
//! alpha upper bound, its L(2, chi) form, the alpha < phi(D)/4 comparison,
//! and exhaustive Cheeger computation for small conductors.
//!
//! The half interval F = {0, ..., floor(D/2) - 1} has boundary size
//! 2 sum(alpha_i) where the alpha_i enumerate the residues a <= floor(D/2)
//! with chi(a) = 1, so h(P_delta) <= alpha := 2 sum(alpha_i) / floor(D/2);
//! alpha is computed exactly from that finite character sum, and the
//! transcendental L-function expression is kept as a floating-point
//! cross-check of the same quantity.

use crate::error::{Error, Result};
use crate::graph::PaleyGraph;
use crate::ntheory;
use crate::qchar::{FundamentalDiscriminant, QuadraticCharacter};
use crate::spectral::ratio_str;
use crate::Rational;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The half-interval cut F = {0, ..., floor(D/2) - 1} together with its
/// boundary size; the witness behind the alpha bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryWitness {
    /// |F| = floor(D/2).
    pub half_size: u64,
    /// |boundary(F)| = 2 sum(alpha_i).
    pub boundary_edges: u64,
}

/// Exact alpha bound on the Cheeger number with its cross-checks.
#[derive(Debug, Clone, PartialEq)]
pub struct CheegerReport {
    pub delta: i64,
    pub conductor: u64,
    /// alpha = |boundary(F)| / |F|, exact.
    pub alpha: Rational,
    pub alpha_numeric: f64,
    /// alpha recomputed through L(2, chi); must match within 1e-8.
    pub lfunction_form: f64,
    pub phi_quarter: Rational,
    /// Exhaustive Cheeger number, present when D is within the brute cap.
    pub brute_force_h: Option<Rational>,
    pub boundary_witness: BoundaryWitness,
}

impl CheegerReport {
    /// True when alpha < phi(D)/4 strictly.
    pub fn corollary_strict(&self) -> bool {
        self.alpha < self.phi_quarter
    }

    pub fn to_json(&self) -> serde_json::Value {
        fn sig12(x: f64) -> f64 {
            format!("{x:.11e}").parse().expect("formatted float parses")
        }
        serde_json::json!({
            "delta": self.delta,
            "D": self.conductor,
            "alpha": ratio_str(&self.alpha),
            "alpha_numeric": sig12(self.alpha_numeric),
            "lfunction_form": sig12(self.lfunction_form),
            "phi_quarter": ratio_str(&self.phi_quarter),
            "brute_force_h": self.brute_force_h.as_ref().map(ratio_str),
            "boundary_witness": {
                "half_size": self.boundary_witness.half_size,
                "boundary_edges": self.boundary_witness.boundary_edges,
            },
        })
    }
}

/// Number of edges with exactly one endpoint in `f_set` (undirected
/// graphs only). Counted from the F side through the circulant offsets,
/// which touches each boundary edge exactly once.
pub fn boundary_size(g: &PaleyGraph, f_set: &[u64]) -> Result<u64> {
    g.discriminant().require_positive()?;
    let d = g.order();
    let mut in_f = vec![false; d as usize];
    for &v in f_set {
        if v >= d {
            return Err(Error::domain(format!(
                "boundary_size: vertex {v} is outside 0..{d}"
            )));
        }
        in_f[v as usize] = true;
    }
    let size = in_f.iter().filter(|&&b| b).count() as u64;
    if size == 0 || size == d {
        return Err(Error::domain(
            "boundary_size: F must be a nonempty proper subset of the vertices",
        ));
    }
    let offsets: Vec<u64> = g.offsets().collect();
    let mut count = 0u64;
    for u in 0..d {
        if !in_f[u as usize] {
            continue;
        }
        for &a in &offsets {
            if !in_f[((u + a) % d) as usize] {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The residues a in [1, floor(D/2)] with chi(a) = 1; their doubled sum is
/// the boundary size of the half interval.
fn half_interval_alphas(chi: &QuadraticCharacter) -> Vec<u64> {
    let d = chi.conductor();
    (1..=d / 2).filter(|&a| chi.values()[a as usize] == 1).collect()
}

/// |boundary({0, ..., floor(D/2) - 1})| = 2 sum(alpha_i), from the
/// character table alone.
pub fn half_interval_boundary(chi: &QuadraticCharacter) -> Result<u64> {
    chi.discriminant().require_positive()?;
    Ok(2 * half_interval_alphas(chi).iter().sum::<u64>())
}

/// The exact upper bound alpha = 2 sum(alpha_i) / floor(D/2) on the
/// Cheeger number of P_delta.
pub fn alpha_bound(chi: &QuadraticCharacter) -> Result<Rational> {
    let boundary = half_interval_boundary(chi)?;
    Ok(Rational::new(
        boundary as i64,
        (chi.conductor() / 2) as i64,
    ))
}

/// alpha recomputed through the closed L-function form
///
/// ```text
/// (1 / (8 floor(D/2))) (D phi(D) - mu(D) phi(D)
///                        - (8 D sqrt(D) / pi^2)(1 - chi(2)/4) L(2, chi))
/// ```
///
/// using the exact L(2, chi) value. Agreement with [`alpha_bound`] within
/// 1e-8 validates the half-period character-sum and coprime-sum identities
/// end to end.
pub fn alpha_via_lfunction(chi: &QuadraticCharacter) -> Result<f64> {
    chi.discriminant().require_positive()?;
    let d = chi.conductor();
    let phi = ntheory::euler_phi(d)? as f64;
    let mu = ntheory::mobius(d)? as f64;
    let l2 = chi.l_two_exact()?;
    let df = d as f64;
    let chi2 = chi.values()[2 % chi.values().len()] as f64;
    let pi = std::f64::consts::PI;
    let l_term = 8.0 * df * df.sqrt() / (pi * pi) * (1.0 - chi2 / 4.0) * l2;
    Ok((df * phi - mu * phi - l_term) / (8.0 * (d / 2) as f64))
}

/// True when alpha < phi(D)/4 strictly. The single exception D = 5, where
/// alpha = phi(D)/4 = 1 exactly and the exhaustive Cheeger number attains
/// the bound, is accepted as equality.
pub fn check_alpha_corollary(chi: &QuadraticCharacter) -> Result<bool> {
    chi.discriminant().require_positive()?;
    let alpha = alpha_bound(chi)?;
    let phi_quarter = Rational::new(ntheory::euler_phi(chi.conductor())? as i64, 4);
    Ok(alpha < phi_quarter || (alpha == phi_quarter && chi.conductor() == 5))
}

fn cut_candidate(masks: impl Iterator<Item = u64>, nbr: &[u64], max_size: u32) -> Option<(u64, u64)> {
    let mut best: Option<(u64, u64)> = None;
    for mask in masks {
        let size = mask.count_ones();
        if size == 0 || size > max_size {
            continue;
        }
        let mut boundary = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            boundary += (nbr[u] & !mask).count_ones() as u64;
        }
        let cand = (boundary, size as u64);
        best = Some(match best {
            None => cand,
            Some(b) if cand.0 * b.1 < b.0 * cand.1 => cand,
            Some(b) => b,
        });
    }
    best
}

// 2^24 subsets is the largest search that stays interactive.
const BRUTE_CAP_LIMIT: u64 = 24;

fn brute_force_prepare(g: &PaleyGraph, cap: u64) -> Result<(Vec<u64>, u32)> {
    g.discriminant().require_positive()?;
    let d = g.order();
    if d > cap || d > BRUTE_CAP_LIMIT {
        return Err(Error::UnsupportedRange {
            what: "brute_force_cheeger",
            limit: cap.min(BRUTE_CAP_LIMIT),
            got: d,
        });
    }
    let nbr: Vec<u64> = (0..d)
        .map(|u| g.neighbors(u).fold(0u64, |m, v| m | 1 << v))
        .collect();
    Ok((nbr, (d / 2) as u32))
}

/// Exact Cheeger number min |boundary(F)| / |F| over all nonempty F with
/// |F| <= D/2, by exhaustive subset enumeration over bitmasks.
/// Cost 2^D; guarded by `cap`. The mask space is partitioned into chunks
/// processed by parallel workers; the minimum is order-independent.
pub fn brute_force_cheeger(g: &PaleyGraph, cap: u64) -> Result<Rational> {
    #[cfg(feature = "parallel")]
    {
        let (nbr, max_size) = brute_force_prepare(g, cap)?;
        let full = 1u64 << g.order();
        let chunk = (full / 256).max(1 << 12);
        let starts: Vec<u64> = (1..full).step_by(chunk as usize).collect();
        let (boundary, size) = starts
            .into_par_iter()
            .filter_map(|lo| cut_candidate(lo..full.min(lo + chunk), &nbr, max_size))
            .map(Some)
            .reduce(|| None, min_cut)
            .expect("at least one admissible subset exists");
        Ok(Rational::new(boundary as i64, size as i64))
    }
    #[cfg(not(feature = "parallel"))]
    {
        brute_force_cheeger_seq(g, cap)
    }
}

/// Sequential twin of [`brute_force_cheeger`]; also the benchmark baseline.
pub fn brute_force_cheeger_seq(g: &PaleyGraph, cap: u64) -> Result<Rational> {
    let (nbr, max_size) = brute_force_prepare(g, cap)?;
    let full = 1u64 << g.order();
    let (boundary, size) =
        cut_candidate(1..full, &nbr, max_size).expect("at least one admissible subset exists");
    Ok(Rational::new(boundary as i64, size as i64))
}

#[cfg(feature = "parallel")]
fn min_cut(a: Option<(u64, u64)>, b: Option<(u64, u64)>) -> Option<(u64, u64)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x.0 * y.1 <= y.0 * x.1 { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Builds the full Cheeger report for a positive discriminant. The brute
/// force field is populated when D fits under `brute_cap`.
pub fn cheeger_report(disc: &FundamentalDiscriminant, brute_cap: u64) -> Result<CheegerReport> {
    disc.require_positive()?;
    let chi = QuadraticCharacter::new(*disc);
    let g = PaleyGraph::from_character(chi.clone());
    let boundary = half_interval_boundary(&chi)?;
    let alpha = alpha_bound(&chi)?;
    let phi_quarter = Rational::new(ntheory::euler_phi(disc.conductor())? as i64, 4);
    let brute_force_h = if disc.conductor() <= brute_cap {
        Some(brute_force_cheeger(&g, brute_cap)?)
    } else {
        None
    };
    Ok(CheegerReport {
        delta: disc.delta(),
        conductor: disc.conductor(),
        alpha,
        alpha_numeric: *alpha.numer() as f64 / *alpha.denom() as f64,
        lfunction_form: alpha_via_lfunction(&chi)?,
        phi_quarter,
        brute_force_h,
        boundary_witness: BoundaryWitness {
            half_size: disc.conductor() / 2,
            boundary_edges: boundary,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(delta: i64) -> QuadraticCharacter {
        QuadraticCharacter::new(FundamentalDiscriminant::validate(delta).unwrap())
    }

    fn graph(delta: i64) -> PaleyGraph {
        PaleyGraph::from_character(chi(delta))
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn boundary_size_examples() {
        let g5 = graph(5);
        assert_eq!(boundary_size(&g5, &[0, 1]).unwrap(), 2);

        let g8 = graph(8);
        assert_eq!(boundary_size(&g8, &[0, 1, 2, 3]).unwrap(), 2);

        let all: Vec<u64> = (0..5).collect();
        assert!(boundary_size(&g5, &all).is_err());
        assert!(boundary_size(&g5, &[]).is_err());
        assert!(boundary_size(&g5, &[7]).is_err());
        assert!(matches!(
            boundary_size(&graph(-4), &[0]),
            Err(Error::Parity { .. })
        ));
    }

    #[test]
    fn half_interval_examples() {
        assert_eq!(half_interval_boundary(&chi(5)).unwrap(), 2);
        assert_eq!(half_interval_boundary(&chi(8)).unwrap(), 2);
        assert_eq!(half_interval_boundary(&chi(21)).unwrap(), 20);
        assert!(half_interval_boundary(&chi(-4)).is_err());
    }

    #[test]
    fn half_interval_matches_structural_boundary() {
        for delta in [5i64, 8, 12, 13, 21, 24, 33, 40, 60, 105, 145] {
            let c = chi(delta);
            let g = PaleyGraph::from_character(c.clone());
            let f: Vec<u64> = (0..c.conductor() / 2).collect();
            assert_eq!(
                half_interval_boundary(&c).unwrap(),
                boundary_size(&g, &f).unwrap(),
                "delta = {delta}"
            );
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_bound(&chi(5)).unwrap(), rat(1, 1));
        assert_eq!(alpha_bound(&chi(8)).unwrap(), rat(1, 2));
        assert_eq!(alpha_bound(&chi(12)).unwrap(), rat(1, 3));
        assert_eq!(alpha_bound(&chi(21)).unwrap(), rat(2, 1));
    }

    #[test]
    fn alpha_decomposes_into_kernel_sums() {
        // 2 sum(alpha_i) = coprime_half_sum + weighted_half_sum.
        for delta in [5i64, 8, 12, 13, 21, 60, 77, 145] {
            let c = chi(delta);
            let d = c.conductor();
            let total = ntheory::coprime_half_sum(d).unwrap() as i64
                + c.weighted_half_sum().unwrap();
            assert_eq!(
                half_interval_boundary(&c).unwrap() as i64,
                total,
                "delta = {delta}"
            );
        }
    }

    #[test]
    fn alpha_via_lfunction_examples() {
        for (delta, expected) in [(8i64, 0.5), (12, 1.0 / 3.0), (5, 1.0)] {
            let got = alpha_via_lfunction(&chi(delta)).unwrap();
            assert!((got - expected).abs() < 1e-8, "delta = {delta}: {got}");
        }
    }

    #[test]
    fn rearranged_alpha_forms_match() {
        // Even D: alpha = phi/4 - (2 sqrt(D)/pi^2)(1 - chi(2)/4) L(2,chi).
        // Odd D: alpha = (D phi - mu phi - (8 D sqrt(D)/pi^2)(1 - chi(2)/4) L) / (4(D-1)).
        let pi = std::f64::consts::PI;
        for delta in [8i64, 12, 24, 40, 60, 5, 13, 21, 33, 145] {
            let c = chi(delta);
            let d = c.conductor();
            let df = d as f64;
            let phi = ntheory::euler_phi(d).unwrap() as f64;
            let l2 = c.l_two_exact().unwrap();
            let chi2 = c.values()[2] as f64;
            let factor = (1.0 - chi2 / 4.0) * l2 / (pi * pi);
            let rearranged = if d % 2 == 0 {
                phi / 4.0 - 2.0 * df.sqrt() * factor
            } else {
                let mu = ntheory::mobius(d).unwrap() as f64;
                (df * phi - mu * phi - 8.0 * df * df.sqrt() * factor) / (4.0 * (df - 1.0))
            };
            let alpha = alpha_bound(&c).unwrap();
            let alpha_f = *alpha.numer() as f64 / *alpha.denom() as f64;
            assert!(
                (rearranged - alpha_f).abs() < 1e-8,
                "delta = {delta}: {rearranged} vs {alpha_f}"
            );
        }
    }

    #[test]
    fn brute_force_cycle_cases() {
        assert_eq!(brute_force_cheeger(&graph(5), 20).unwrap(), rat(1, 1));
        assert_eq!(brute_force_cheeger(&graph(8), 20).unwrap(), rat(1, 2));
        assert_eq!(brute_force_cheeger(&graph(12), 20).unwrap(), rat(1, 3));
        assert!(matches!(
            brute_force_cheeger(&graph(21), 20),
            Err(Error::UnsupportedRange { .. })
        ));
    }

    #[test]
    fn brute_force_parallel_matches_sequential() {
        for delta in [5i64, 8, 12, 13, 17] {
            let g = graph(delta);
            assert_eq!(
                brute_force_cheeger(&g, 20).unwrap(),
                brute_force_cheeger_seq(&g, 20).unwrap(),
                "delta = {delta}"
            );
        }
    }

    #[test]
    fn corollary_examples() {
        assert!(check_alpha_corollary(&chi(21)).unwrap()); // 2 < 3
        assert!(check_alpha_corollary(&chi(8)).unwrap()); // 1/2 < 1
        assert!(check_alpha_corollary(&chi(12)).unwrap()); // 1/3 < 1
        // D = 5 is the lone equality case, and the bound is attained there.
        assert!(check_alpha_corollary(&chi(5)).unwrap());
        let r5 = cheeger_report(&FundamentalDiscriminant::validate(5).unwrap(), 20).unwrap();
        assert!(!r5.corollary_strict());
        assert_eq!(r5.alpha, r5.phi_quarter);
    }

    #[test]
    fn report_fields_and_json() {
        let disc = FundamentalDiscriminant::validate(12).unwrap();
        let r = cheeger_report(&disc, 20).unwrap();
        assert_eq!(r.alpha, rat(1, 3));
        assert_eq!(r.phi_quarter, rat(1, 1));
        assert_eq!(r.brute_force_h, Some(rat(1, 3)));
        assert_eq!(r.boundary_witness.half_size, 6);
        assert_eq!(r.boundary_witness.boundary_edges, 2);
        assert!((r.alpha_numeric - r.lfunction_form).abs() < 1e-8);

        let json = r.to_json();
        assert_eq!(json["alpha"], "1/3");
        assert_eq!(json["brute_force_h"], "1/3");
        assert_eq!(json["D"], 12);
        assert_eq!(json["boundary_witness"]["boundary_edges"], 2);

        let r21 = cheeger_report(&FundamentalDiscriminant::validate(21).unwrap(), 20).unwrap();
        assert_eq!(r21.brute_force_h, None);
        assert_eq!(r21.to_json()["brute_force_h"], serde_json::Value::Null);
    }
}
