//! Deciding the Ramanujan property of P_delta (delta > 0) two independent
//! ways: the exact spectral definition lambda(G) <= 2 sqrt(r - 1), and a
//! purely arithmetic classification of the conductor. The two must agree
//! everywhere; that agreement is the headline check of the whole crate.

use crate::error::{Error, Result};
use crate::ntheory;
use crate::qchar::FundamentalDiscriminant;
use crate::spectral::{self, ratio_str, AlgebraicEigenvalue};
use crate::Rational;
use std::cmp::Ordering;

/// Which arm of the conductor classification D falls into. Every arm
/// except `NotRamanujan` certifies the Ramanujan property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassificationCase {
    /// D = 8.
    D8,
    /// D = 4p with p prime, p = 3 (mod 4).
    FourP,
    /// D = 8p with p an odd prime.
    EightP,
    /// D = 4 p1 p2 with p1 p2 = 3 (mod 4) and p1 < p2 <= 4 p1 - 5.
    FourP1P2,
    /// D = 8 p1 p2 with 2 < p1 < p2 <= 2 p1 - 3.
    EightP1P2,
    /// D = p prime, p = 1 (mod 4).
    PrimeP,
    /// D = p1 p2 with p1 p2 = 1 (mod 4) and p1 < p2 <= 8 p1 - 9.
    P1P2,
    /// No arm matches; the graph is not Ramanujan.
    NotRamanujan,
}

impl ClassificationCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::D8 => "D8",
            Self::FourP => "FourP",
            Self::EightP => "EightP",
            Self::FourP1P2 => "FourP1P2",
            Self::EightP1P2 => "EightP1P2",
            Self::PrimeP => "PrimeP",
            Self::P1P2 => "P1P2",
            Self::NotRamanujan => "NotRamanujan",
        }
    }
}

impl std::fmt::Display for ClassificationCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exact comparison record of lambda(G)^2 against 4(r - 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectralBound {
    /// lambda(G)^2 as an exact value a + b sqrt(D).
    pub lambda_sq: AlgebraicEigenvalue,
    /// 4(r - 1) with r = phi(D)/2.
    pub bound: Rational,
    /// lambda(G)^2 <= 4(r - 1), decided exactly.
    pub holds: bool,
}

/// Verdict on the Ramanujan property: the classification arm, the spectral
/// witness lambda(G), and the exact bound comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamanujanVerdict {
    pub delta: i64,
    pub conductor: u64,
    pub is_ramanujan: bool,
    pub case: ClassificationCase,
    pub spectral_witness: AlgebraicEigenvalue,
    pub bound: SpectralBound,
}

impl RamanujanVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "delta": self.delta,
            "D": self.conductor,
            "case": self.case.as_str(),
            "is_ramanujan": self.is_ramanujan,
            "lambda_sq": self.bound.lambda_sq.to_string(),
            "bound_4r_minus_4": ratio_str(&self.bound.bound),
        })
    }
}

/// Exact spectral test: lambda(G) <= 2 sqrt(r - 1), decided by comparing
/// lambda(G)^2 with 4(r - 1) in rational arithmetic. Returns the witness
/// lambda(G) alongside the decision.
pub fn is_ramanujan_spectral(
    disc: &FundamentalDiscriminant,
) -> Result<(bool, AlgebraicEigenvalue)> {
    let (ok, witness, _) = spectral_bound(disc)?;
    Ok((ok, witness))
}

fn spectral_bound(
    disc: &FundamentalDiscriminant,
) -> Result<(bool, AlgebraicEigenvalue, SpectralBound)> {
    disc.require_positive()?;
    let witness = spectral::lambda_g(disc)?;
    let r = ntheory::euler_phi(disc.conductor())? / 2;
    let bound = Rational::from_integer(4 * (r as i64 - 1));
    let lambda_sq = witness.square();
    let holds = lambda_sq.cmp_rational(&bound) != Ordering::Greater;
    Ok((
        holds,
        witness,
        SpectralBound {
            lambda_sq,
            bound,
            holds,
        },
    ))
}

/// The arithmetic classification of the conductor, evaluated verbatim.
pub fn classify_case(disc: &FundamentalDiscriminant) -> Result<ClassificationCase> {
    disc.require_positive()?;
    let d = disc.conductor();
    if d == 8 {
        return Ok(ClassificationCase::D8);
    }
    let factors = ntheory::factorize(d as i64)?.factors;
    let case = match factors.as_slice() {
        // D = p prime
        [(p, 1)] if p % 4 == 1 => ClassificationCase::PrimeP,
        // D = 4p / 8p
        [(2, 2), (p, 1)] if p % 4 == 3 => ClassificationCase::FourP,
        [(2, 3), (_, 1)] => ClassificationCase::EightP,
        // D = 4 p1 p2 / 8 p1 p2
        [(2, 2), (p1, 1), (p2, 1)]
            if (p1 * p2) % 4 == 3 && *p2 <= 4 * p1 - 5 =>
        {
            ClassificationCase::FourP1P2
        }
        [(2, 3), (p1, 1), (p2, 1)] if *p1 > 2 && *p2 <= 2 * p1 - 3 => {
            ClassificationCase::EightP1P2
        }
        // D = p1 p2 odd
        [(p1, 1), (p2, 1)] if (p1 * p2) % 4 == 1 && *p2 <= 8 * p1 - 9 => {
            ClassificationCase::P1P2
        }
        _ => ClassificationCase::NotRamanujan,
    };
    Ok(case)
}

/// Full verdict: classification arm plus the exact spectral comparison.
/// Both routes always run; their agreement is asserted by the test suite,
/// not here, so bulk scans can count disagreements gracefully.
pub fn classify_ramanujan(disc: &FundamentalDiscriminant) -> Result<RamanujanVerdict> {
    let case = classify_case(disc)?;
    let (_, witness, bound) = spectral_bound(disc)?;
    Ok(RamanujanVerdict {
        delta: disc.delta(),
        conductor: disc.conductor(),
        is_ramanujan: case != ClassificationCase::NotRamanujan,
        case,
        spectral_witness: witness,
        bound,
    })
}

/// The two composite-conductor inequalities that reduce the spectral test
/// to arithmetic: with p the smallest odd prime divisor of D,
///
/// ```text
/// phi(D)/(p-1)^2 + 16/phi(D) <= 8
/// phi(D)/D >= 1/8 + 1/(4 sqrt(D)) + 17/(8D)   (D odd)
/// phi(D)/D >= 1/8 + 2/D                        (D even)
/// ```
///
/// evaluated exactly (the sqrt(D) term by isolating and squaring). The
/// first inequality is vacuous when D is a power of two (only D = 8 among
/// fundamental discriminants), since no eigenvalue indexed by a squarefree
/// divisor with an odd prime factor exists there.
pub fn lemma_inequalities(disc: &FundamentalDiscriminant) -> Result<bool> {
    disc.require_positive()?;
    let d = disc.conductor();
    let factors = ntheory::factorize(d as i64)?.factors;
    if matches!(factors.as_slice(), [(_, 1)]) {
        return Err(Error::domain(format!(
            "lemma_inequalities: D = {d} is prime; the lemma assumes composite D"
        )));
    }
    let phi = ntheory::euler_phi(d)? as i128;
    let divisor_cond = match factors.iter().find(|&&(p, _)| p != 2) {
        Some(&(p, _)) => {
            let pm1 = (p - 1) as i128;
            phi * phi + 16 * pm1 * pm1 <= 8 * phi * pm1 * pm1
        }
        None => true,
    };
    let d = d as i128;
    let primitive_cond = if d % 2 == 1 {
        // 8 phi >= D + 2 sqrt(D) + 17
        let t = 8 * phi - d - 17;
        t >= 0 && t * t >= 4 * d
    } else {
        // 8 phi >= D + 16
        8 * phi >= d + 16
    };
    Ok(divisor_cond && primitive_cond)
}
