//! Closed-form spectrum of P_delta and the numeric circulant-DFT oracle.
//!
//! A circulant graph's eigenvalues are the evaluations of its generator
//! vector at the D-th roots of unity. Grouping the roots by their exact
//! order d | D collapses the spectrum to one rational eigenvalue
//! (phi(D)/phi(d)) mu(d) / 2 per proper divisor d (multiplicity phi(d)),
//! plus the two quadratic irrationals (mu(D) +- sqrt(delta)) / 2, each with
//! multiplicity phi(D)/2. Everything here is exact rational arithmetic in
//! the field Q(sqrt(delta)); floating point only enters through the DFT
//! oracle used to cross-check the closed form.

use crate::error::{Error, Result};
use crate::graph::PaleyGraph;
use crate::ntheory;
use crate::qchar::FundamentalDiscriminant;
use crate::Rational;
use num_complex::Complex64;
use num_rational::Ratio;
use std::cmp::Ordering;

/// Formats a rational as "p/q" (the denominator is always printed).
pub fn ratio_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn widen(r: &Rational) -> Ratio<i128> {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

/// An exact value a + b sqrt(delta) with rational a, b. Complex when
/// delta < 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraicEigenvalue {
    rational_part: Rational,
    radical_coeff: Rational,
    radicand: i64,
}

impl AlgebraicEigenvalue {
    pub fn new(rational_part: Rational, radical_coeff: Rational, radicand: i64) -> Self {
        Self {
            rational_part,
            radical_coeff,
            radicand,
        }
    }

    pub fn rational(value: Rational, radicand: i64) -> Self {
        Self::new(value, Rational::from_integer(0), radicand)
    }

    pub fn rational_part(&self) -> Rational {
        self.rational_part
    }

    pub fn radical_coeff(&self) -> Rational {
        self.radical_coeff
    }

    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radical_coeff == Rational::from_integer(0)
    }

    /// Numeric value; sqrt(delta) means i sqrt(|delta|) for delta < 0.
    pub fn to_complex(&self) -> Complex64 {
        let a = ratio_f64(&self.rational_part);
        let b = ratio_f64(&self.radical_coeff);
        let root = (self.radicand.unsigned_abs() as f64).sqrt();
        if self.radicand >= 0 {
            Complex64::new(a + b * root, 0.0)
        } else {
            Complex64::new(a, b * root)
        }
    }

    /// Numeric value for a positive radicand.
    pub fn to_f64(&self) -> f64 {
        debug_assert!(self.radicand > 0);
        ratio_f64(&self.rational_part)
            + ratio_f64(&self.radical_coeff) * (self.radicand as f64).sqrt()
    }

    /// Exact sign of a + b sqrt(d) for d > 0.
    fn sign(&self) -> Ordering {
        assert!(self.radicand > 0, "sign is defined for real values only");
        let zero = Ratio::new(0, 1);
        let a = widen(&self.rational_part);
        let b = widen(&self.radical_coeff);
        let d = self.radicand as i128;
        match (a.cmp(&zero), b.cmp(&zero)) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (Ordering::Greater, Ordering::Less) => (a * a).cmp(&(b * b * d)),
            (Ordering::Less, Ordering::Greater) => (b * b * d).cmp(&(a * a)),
        }
    }

    /// Exact order on real values (radicand > 0) sharing a radicand.
    pub fn cmp_real(&self, other: &Self) -> Ordering {
        assert_eq!(self.radicand, other.radicand);
        let diff = Self::new(
            self.rational_part - other.rational_part,
            self.radical_coeff - other.radical_coeff,
            self.radicand,
        );
        diff.sign()
    }

    /// Exact |a + b sqrt(d)| for d > 0.
    pub fn abs_real(&self) -> Self {
        match self.sign() {
            Ordering::Less => Self::new(-self.rational_part, -self.radical_coeff, self.radicand),
            _ => *self,
        }
    }

    /// Exact square: (a + b sqrt(d))^2 = (a^2 + b^2 d) + 2ab sqrt(d).
    pub fn square(&self) -> Self {
        let a = self.rational_part;
        let b = self.radical_coeff;
        let d = Rational::from_integer(self.radicand);
        Self::new(a * a + b * b * d, a * b * 2, self.radicand)
    }

    /// Exact comparison of this (real, nonnegative-radicand) value against
    /// a rational bound.
    pub fn cmp_rational(&self, bound: &Rational) -> Ordering {
        self.cmp_real(&Self::rational(*bound, self.radicand))
    }
}

impl std::fmt::Display for AlgebraicEigenvalue {
    /// Uniform shape "p/q + (p/q)*sqrt(delta)", with the sign of the
    /// radical coefficient folded into the middle operator.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let b = self.radical_coeff;
        let (op, b_abs) = if b < Rational::from_integer(0) {
            ("-", -b)
        } else {
            ("+", b)
        };
        write!(
            f,
            "{} {op} ({})\u{221a}{}",
            ratio_str(&self.rational_part),
            ratio_str(&b_abs),
            self.radicand
        )
    }
}

fn ratio_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// One spectrum entry: an exact eigenvalue with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub value: AlgebraicEigenvalue,
    pub multiplicity: u64,
}

/// The spectrum of P_delta as a multiset of exact eigenvalues.
///
/// Entries are keyed by origin (one per proper divisor, two primitive
/// ones); equal values are only merged by [`SpectrumMultiset::canonicalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumMultiset {
    entries: Vec<SpectrumEntry>,
}

impl SpectrumMultiset {
    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Merges equal values and sorts deterministically (by exact rational
    /// and radical parts), for multiset comparison and display.
    pub fn canonicalize(&self) -> Vec<SpectrumEntry> {
        let mut merged: Vec<SpectrumEntry> = Vec::new();
        for e in &self.entries {
            match merged.iter_mut().find(|m| m.value == e.value) {
                Some(m) => m.multiplicity += e.multiplicity,
                None => merged.push(*e),
            }
        }
        merged.sort_by(|x, y| {
            (x.value.rational_part, x.value.radical_coeff)
                .cmp(&(y.value.rational_part, y.value.radical_coeff))
        });
        merged
    }

    /// Exact sum of eigenvalue * multiplicity (the trace), as an exact
    /// value in Q(sqrt(delta)).
    pub fn trace(&self) -> AlgebraicEigenvalue {
        let zero = Rational::from_integer(0);
        let mut a = zero;
        let mut b = zero;
        let mut radicand = 0;
        for e in &self.entries {
            let m = Rational::from_integer(e.multiplicity as i64);
            a += e.value.rational_part * m;
            b += e.value.radical_coeff * m;
            radicand = e.value.radicand;
        }
        AlgebraicEigenvalue::new(a, b, radicand)
    }

    /// JSON form: a list of {"rational", "radical_coeff", "radicand",
    /// "multiplicity"} objects over the canonicalized entries.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.canonicalize()
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "rational": ratio_str(&e.value.rational_part),
                        "radical_coeff": ratio_str(&e.value.radical_coeff),
                        "radicand": e.value.radicand,
                        "multiplicity": e.multiplicity,
                    })
                })
                .collect(),
        )
    }
}

/// The exact spectrum: one entry per proper divisor d of D, valued
/// (phi(D)/phi(d)) mu(d) / 2 with multiplicity phi(d), plus
/// (mu(D) +- sqrt(delta)) / 2 with multiplicity phi(D)/2 each.
pub fn closed_form_spectrum(disc: &FundamentalDiscriminant) -> SpectrumMultiset {
    let d = disc.conductor();
    let delta = disc.delta();
    let phi = ntheory::euler_phi(d).expect("conductor is positive");
    let mut entries = Vec::new();
    for div in ntheory::factorize(d as i64)
        .expect("conductor is nonzero")
        .divisors()
    {
        if div == d {
            continue;
        }
        let mu = ntheory::mobius(div).expect("divisor is positive") as i64;
        let phi_div = ntheory::euler_phi(div).expect("divisor is positive");
        let value = Rational::new((phi / phi_div) as i64 * mu, 2);
        entries.push(SpectrumEntry {
            value: AlgebraicEigenvalue::rational(value, delta),
            multiplicity: phi_div,
        });
    }
    let mu_d = ntheory::mobius(d).expect("conductor is positive") as i64;
    let half = Rational::new(1, 2);
    for sign in [1i64, -1] {
        entries.push(SpectrumEntry {
            value: AlgebraicEigenvalue::new(Rational::new(mu_d, 2), half * sign, delta),
            multiplicity: phi / 2,
        });
    }
    SpectrumMultiset { entries }
}

/// Numeric spectrum by direct evaluation of the generator vector at every
/// D-th root of unity: lambda_j = sum over a of generator(a) e^(2 pi i a j / D).
///
/// Deliberately the slow O(D * deg) transform; this is the oracle the
/// closed form is checked against, so it stays structure-free.
pub fn dft_spectrum(g: &PaleyGraph) -> Vec<Complex64> {
    let d = g.order();
    let offsets: Vec<u64> = g.offsets().collect();
    let step = std::f64::consts::TAU / d as f64;
    (0..d)
        .map(|j| {
            let mut sum = Complex64::new(0.0, 0.0);
            for &a in &offsets {
                let angle = step * ((a * j) % d) as f64;
                sum += Complex64::new(angle.cos(), angle.sin());
            }
            sum
        })
        .collect()
}

/// Multiset comparison of an exact spectrum against a numeric one: every
/// numeric eigenvalue must lie within `tolerance` of a distinct exact
/// value, and the counts per exact value must reproduce the multiplicities.
pub fn spectra_match(
    exact: &SpectrumMultiset,
    numeric: &[Complex64],
    tolerance: f64,
) -> Result<bool> {
    let total = exact.total_multiplicity() as usize;
    if total != numeric.len() {
        return Err(Error::SizeMismatch {
            expected: total,
            got: numeric.len(),
        });
    }
    let distinct = exact.canonicalize();
    let targets: Vec<Complex64> = distinct.iter().map(|e| e.value.to_complex()).collect();
    let mut counts = vec![0u64; distinct.len()];
    for lam in numeric {
        let (best, dist) = targets
            .iter()
            .enumerate()
            .map(|(i, t)| (i, (lam - t).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("spectrum has at least one entry");
        if dist > tolerance {
            return Ok(false);
        }
        counts[best] += 1;
    }
    Ok(counts
        .iter()
        .zip(&distinct)
        .all(|(&c, e)| c == e.multiplicity))
}

/// lambda(G) = max |lambda| over eigenvalues with |lambda| strictly below
/// the degree r = phi(D)/2, returned as an exact nonnegative value.
///
/// The +r eigenvalue comes from d = 1 and (for even D) -r from d = 2; both
/// are excluded. All magnitude comparisons are exact: rational candidates
/// compare as rationals, and the primitive magnitude
/// (|mu(D)| + sqrt(D)) / 2 is compared by isolating sqrt(D) and squaring.
pub fn lambda_g(disc: &FundamentalDiscriminant) -> Result<AlgebraicEigenvalue> {
    disc.require_positive()?;
    let d = disc.conductor();
    let phi = ntheory::euler_phi(d)?;
    if phi / 2 < 2 {
        return Err(Error::domain(format!(
            "lambda_g: degree r = {} is below 2, the spectral gap is degenerate",
            phi / 2
        )));
    }
    let r = Rational::new(phi as i64, 2);
    let mut best_rational: Option<Rational> = None;
    for div in ntheory::factorize(d as i64)?.divisors() {
        if div == d {
            continue;
        }
        let mu = ntheory::mobius(div)? as i64;
        if mu == 0 {
            continue;
        }
        let magnitude = Rational::new((phi / ntheory::euler_phi(div)?) as i64, 2);
        if magnitude == r {
            continue; // the +-r eigenvalues (d = 1, d = 2)
        }
        best_rational = Some(best_rational.map_or(magnitude, |b| b.max(magnitude)));
    }
    // |(mu(D) +- sqrt(D)) / 2| = (|mu(D)| + sqrt(D)) / 2.
    let c = ntheory::mobius(d)?.unsigned_abs() as i64;
    let primitive = AlgebraicEigenvalue::new(
        Rational::new(c, 2),
        Rational::new(1, 2),
        disc.delta(),
    );
    match best_rational {
        Some(q) if rational_exceeds_primitive(q, c, d) => {
            Ok(AlgebraicEigenvalue::rational(q, disc.delta()))
        }
        _ => Ok(primitive),
    }
}

/// q > (c + sqrt(D)) / 2, decided exactly: 2q - c > sqrt(D) iff
/// 2q - c >= 0 and (2q - c)^2 > D.
fn rational_exceeds_primitive(q: Rational, c: i64, d: u64) -> bool {
    let lhs = widen(&q) * 2 - Ratio::new(c as i128, 1);
    if lhs < Ratio::new(0, 1) {
        return false;
    }
    lhs * lhs > Ratio::new(d as i128, 1)
}
