//! Fundamental discriminants and their primitive quadratic characters.
//!
//! For a squarefree integer m (not 0 or 1) the discriminant of Q(sqrt(m)) is
//! m itself when m = 1 (mod 4) and 4m otherwise. The map
//! `a -> kronecker_symbol(delta, a)` is then a primitive quadratic character
//! of conductor D = |delta|, even exactly when delta > 0. This module builds
//! that character as a period-D lookup table and provides the Gauss-sum and
//! L(2) machinery layered on top of it.

use crate::error::{Error, FundamentalViolation, Result};
use crate::ntheory::{self, kronecker_symbol};
use num_complex::Complex64;

/// Parity of a quadratic character: even means chi(-1) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterParity {
    Even,
    Odd,
}

/// A validated fundamental discriminant, with its conductor D = |delta| and
/// the squarefree root m of the underlying quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FundamentalDiscriminant {
    delta: i64,
    conductor: u64,
    squarefree_root: i64,
}

impl FundamentalDiscriminant {
    /// The fundamental discriminant of Q(sqrt(m)) for squarefree m not in
    /// {0, 1}.
    pub fn from_squarefree(m: i64) -> Result<Self> {
        if m == 0 || m == 1 {
            return Err(Error::domain(format!(
                "from_squarefree: m = {m} does not generate a quadratic field"
            )));
        }
        if !ntheory::is_squarefree(m)? {
            return Err(Error::domain(format!(
                "from_squarefree: m = {m} is not squarefree"
            )));
        }
        let delta = if m.rem_euclid(4) == 1 { m } else { 4 * m };
        Ok(Self {
            delta,
            conductor: delta.unsigned_abs(),
            squarefree_root: m,
        })
    }

    /// Validates that `delta` is a fundamental discriminant and recovers m.
    pub fn validate(delta: i64) -> Result<Self> {
        let fail = |violation| Err(Error::NotFundamental { delta, violation });
        match delta {
            0 => return fail(FundamentalViolation::Zero),
            1 => return fail(FundamentalViolation::One),
            _ => {}
        }
        match delta.rem_euclid(4) {
            1 => {
                if !ntheory::is_squarefree(delta)? {
                    return fail(FundamentalViolation::NotSquarefreeOdd);
                }
                Ok(Self {
                    delta,
                    conductor: delta.unsigned_abs(),
                    squarefree_root: delta,
                })
            }
            0 => {
                let m = delta / 4;
                if m == 0 {
                    return fail(FundamentalViolation::Zero);
                }
                match m.rem_euclid(4) {
                    2 | 3 => {
                        if !ntheory::is_squarefree(m)? {
                            return fail(FundamentalViolation::NotSquarefreeQuarter);
                        }
                        Ok(Self {
                            delta,
                            conductor: delta.unsigned_abs(),
                            squarefree_root: m,
                        })
                    }
                    _ => fail(FundamentalViolation::QuarterBadResidue),
                }
            }
            _ => fail(FundamentalViolation::BadResidue),
        }
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// D = |delta|, the conductor (and period) of the character.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn squarefree_root(&self) -> i64 {
        self.squarefree_root
    }

    /// Even iff delta > 0 (undirected graph case).
    pub fn parity(&self) -> CharacterParity {
        if self.delta > 0 {
            CharacterParity::Even
        } else {
            CharacterParity::Odd
        }
    }

    pub fn is_positive(&self) -> bool {
        self.delta > 0
    }

    /// Errors with [`Error::Parity`] unless delta > 0.
    pub fn require_positive(&self) -> Result<()> {
        if self.delta > 0 {
            Ok(())
        } else {
            Err(Error::Parity { delta: self.delta })
        }
    }
}

/// The primitive quadratic character chi_delta, tabulated on one period.
#[derive(Debug, Clone)]
pub struct QuadraticCharacter {
    disc: FundamentalDiscriminant,
    values: Vec<i8>,
}

impl QuadraticCharacter {
    /// Tabulates chi on 0..D. Values at primes come from the Kronecker
    /// symbol; composite entries are filled in by complete
    /// multiplicativity over a smallest-prime-factor sieve, which keeps
    /// table construction linear in D.
    pub fn new(disc: FundamentalDiscriminant) -> Self {
        let d = disc.conductor() as usize;
        let delta = disc.delta();
        let mut values = vec![0i8; d];
        values[1] = 1;
        let mut spf = vec![0u32; d];
        for i in 2..d {
            if spf[i] == 0 {
                values[i] = kronecker_symbol(delta, i as i64);
                let mut j = i;
                while j < d {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            } else {
                let p = spf[i] as usize;
                values[i] = values[p] * values[i / p];
            }
        }
        Self { disc, values }
    }

    pub fn discriminant(&self) -> &FundamentalDiscriminant {
        &self.disc
    }

    pub fn conductor(&self) -> u64 {
        self.disc.conductor()
    }

    /// One full period of values, index a holding chi(a).
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// chi(a) for any integer a, via reduction mod D.
    pub fn chi(&self, a: i64) -> i8 {
        self.values[a.rem_euclid(self.disc.conductor() as i64) as usize]
    }

    /// chi(a) for a nonnegative residue-sized index.
    pub fn chi_u(&self, a: u64) -> i8 {
        self.values[(a % self.disc.conductor()) as usize]
    }

    /// Brute-force primitivity test: chi is primitive when it does not
    /// factor through (Z/n)* for any proper divisor n of D. Test oracle
    /// only; capped at D <= 10^4.
    pub fn is_primitive(&self) -> Result<bool> {
        const CAP: u64 = 10_000;
        let d = self.conductor();
        if d > CAP {
            return Err(Error::UnsupportedRange {
                what: "is_primitive",
                limit: CAP,
                got: d,
            });
        }
        let divisors = ntheory::factorize(d as i64)?.divisors();
        for &n in divisors.iter().filter(|&&n| n < d) {
            if self.factors_through(n as usize) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when chi(a) is constant on every unit class a = r (mod n).
    fn factors_through(&self, n: usize) -> bool {
        let mut seen = vec![0i8; n];
        for (a, &v) in self.values.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let r = a % n;
            if seen[r] == 0 {
                seen[r] = v;
            } else if seen[r] != v {
                return false;
            }
        }
        true
    }

    /// Gauss sum G(b, chi) = sum over a of chi(a) zeta_D^{ab}, evaluated
    /// numerically. For primitive quadratic chi this equals
    /// chi(b) sqrt(delta), where sqrt(delta) means i sqrt(D) for delta < 0.
    pub fn gauss_sum(&self, b: i64) -> Complex64 {
        let d = self.disc.conductor();
        let b = b.rem_euclid(d as i64) as u64;
        let step = std::f64::consts::TAU / d as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for a in 1..d {
            let v = self.values[a as usize];
            if v == 0 {
                continue;
            }
            let angle = step * ((a * b) % d) as f64;
            total += v as f64 * Complex64::new(angle.cos(), angle.sin());
        }
        total
    }

    /// Exact integer sum of chi(a) * a over 1 <= a <= floor(D/2).
    /// Defined for even characters only (delta > 0).
    pub fn weighted_half_sum(&self) -> Result<i64> {
        self.disc.require_positive()?;
        let d = self.disc.conductor();
        let mut sum: i64 = 0;
        for a in 1..=d / 2 {
            sum += self.values[a as usize] as i64 * a as i64;
        }
        Ok(sum)
    }

    /// L(2, chi) from the finite character sum, via the identity
    /// sum_{a <= D/2} chi(a) a = -(D sqrt(D) / pi^2)(1 - chi(2)/4) L(2, chi).
    ///
    /// This is the reference value; [`Self::l_two_series`] is the
    /// independent check.
    pub fn l_two_exact(&self) -> Result<f64> {
        let w = self.weighted_half_sum()? as f64;
        let d = self.disc.conductor() as f64;
        let chi2 = self.values[2 % self.values.len()] as f64;
        let pi = std::f64::consts::PI;
        Ok(-(w * pi * pi) / (d * d.sqrt() * (1.0 - chi2 / 4.0)))
    }

    /// Truncated Dirichlet series sum_{n <= N} chi(n)/n^2 with N chosen so
    /// the Abel-summation tail bound 2D/N^2 stays below `tolerance`.
    pub fn l_two_series(&self, tolerance: f64) -> Result<f64> {
        self.disc.require_positive()?;
        if tolerance.is_nan() || tolerance < 1e-12 {
            return Err(Error::domain(format!(
                "l_two_series: tolerance must be at least 1e-12, got {tolerance}"
            )));
        }
        let d = self.disc.conductor();
        let n_terms = (2.0 * d as f64 / tolerance).sqrt().ceil() as u64;
        let mut sum = 0.0f64;
        for n in 1..=n_terms {
            let v = self.values[(n % d) as usize];
            if v != 0 {
                sum += v as f64 / (n as f64 * n as f64);
            }
        }
        Ok(sum)
    }
}
