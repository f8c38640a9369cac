//! Certified enclosures of the limiting frequency
//!
//! ```text
//! ρ_odd(Δ) = Σ_w Area(𝒯_{k₁,…,k_{|w|−1}})
//! ```
//!
//! summed over the path families of `Δ` and all admissible values of their
//! free labels.
//!
//! For a cutoff `K` the lower end is the exact sum over free values `≤ K`.
//! Every tile whose free label in slot `s` equals `m` lies in `T^{−s}𝒯_m`,
//! so the part with that slot above `K` has area at most
//! `Σ_{m>K} 4/(m(m+1)(m+2))` over the slot's parity class. A slot's tail is
//! zero outright when `K ≥ c_r − 1` and some other slot cannot take the
//! value (1 next to it, 2 elsewhere) that large labels force on a nonempty
//! tile.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::farey::DeltaTuple;
use crate::geometry::stabilization_threshold;
use crate::parity::Parity;
use crate::paths::{enumerate_paths, Label, PathFamily};
use crate::rational::{fmt_ratio, to_decimal};
use crate::{Error, Result};

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_ratio(r))
}

/// Rational interval `[lo, hi]` known to contain the value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    #[serde(serialize_with = "ser_ratio")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub hi: BigRational,
}

impl Enclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument("enclosure with lo > hi".into()));
        }
        Ok(Enclosure { lo, hi })
    }

    pub fn exact(v: BigRational) -> Self {
        Enclosure { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Distance from `x` to the interval, zero inside.
    pub fn distance(&self, x: &BigRational) -> BigRational {
        if x < &self.lo {
            &self.lo - x
        } else if x > &self.hi {
            x - &self.hi
        } else {
            BigRational::zero()
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{} ({})", fmt_ratio(&self.lo), to_decimal(&self.lo, 12))
        } else {
            write!(f, "[{}, {}]", to_decimal(&self.lo, 12), to_decimal(&self.hi, 12))
        }
    }
}

#[derive(Clone, Debug)]
pub struct RhoConfig {
    pub tol: BigRational,
    /// First cutoff tried; doubled until the width is reached.
    pub k_start: u64,
    pub k_max: u64,
}

impl Default for RhoConfig {
    fn default() -> Self {
        RhoConfig { tol: BigRational::new(1.into(), 1_000_000.into()), k_start: 8, k_max: 1 << 14 }
    }
}

impl RhoConfig {
    pub fn with_tol(tol: BigRational) -> Self {
        RhoConfig { tol, ..Self::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyContribution {
    pub family: String,
    #[serde(serialize_with = "ser_ratio")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub tail: BigRational,
    /// Only finitely many tiles of the family are nonempty.
    pub finite: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoResult {
    pub delta: String,
    pub enclosure: Enclosure,
    pub families: Vec<FamilyContribution>,
    pub k_used: u64,
    pub exact: bool,
    pub converged: bool,
}

/// `4/(k(k+1)(k+2))`.
pub fn haynes_density(k: u64) -> BigRational {
    assert!(k >= 1, "k must be positive");
    let k = BigInt::from(k);
    BigRational::new(BigInt::from(4), &k * (&k + 1u32) * (&k + 2u32))
}

/// `Σ_{m ≥ n} 4/(m(m+1)(m+2)) = 2/(n(n+1))`.
fn tail_from(n: u64) -> BigRational {
    let n = BigInt::from(n);
    BigRational::new(BigInt::from(2), &n * (&n + 1u32))
}

/// Bound on `Σ 4/(m(m+1)(m+2))` over `m > k` in the parity class. For a
/// single parity starting at `m₀` the sum `S` and its complement `S′`
/// satisfy `S + S′ = 2/(m₀(m₀+1))` and `S − S′ ≤ 4/(m₀(m₀+1)(m₀+2))`.
pub fn parity_tail(parity: Parity, k: u64) -> BigRational {
    match parity {
        Parity::Any => tail_from(k + 1),
        p => {
            let m0 = if p.admits(k + 1) { k + 1 } else { k + 2 };
            (tail_from(m0) + haynes_density(m0)) / BigRational::from_integer(2.into())
        }
    }
}

/// Whether slot `s` of the family can only carry finitely many values on
/// nonempty tiles, given that all values above `k` are in question.
fn slot_certified(labels: &[Label], s: usize, k: u64) -> bool {
    let r = labels.len();
    if r < 2 || k + 1 < stabilization_threshold(r as u64) {
        return false;
    }
    labels.iter().enumerate().filter(|&(i, _)| i != s).any(|(i, l)| {
        let forced = if i.abs_diff(s) == 1 { 1 } else { 2 };
        !l.admits(forced)
    })
}

fn family_at(fam: &PathFamily, k: u64) -> FamilyContribution {
    let mut lo = BigRational::zero();
    fam.walk_tiles(k, |t| !t.region().is_empty(), |t, _| lo += t.region().area());
    let labels = fam.region_labels();
    let mut tail = BigRational::zero();
    let mut finite = true;
    for s in fam.free_slots() {
        if !slot_certified(labels, s, k) {
            finite = false;
            if let Label::Free(p) = labels[s] {
                tail += parity_tail(p, k);
            }
        }
    }
    FamilyContribution { family: fam.to_string(), lo, tail, finite }
}

/// Family contributions with free labels capped at `k`.
pub fn contributions_at(delta: &DeltaTuple, k: u64) -> Vec<FamilyContribution> {
    enumerate_paths(delta).par_iter().map(|f| family_at(f, k)).collect()
}

/// Enclosure of `ρ_odd(Δ)`, doubling the cutoff until the width is at most
/// `cfg.tol` or the cutoff reaches `cfg.k_max`.
pub fn rho_odd(delta: &DeltaTuple, cfg: &RhoConfig) -> Result<RhoResult> {
    if delta.is_empty() {
        return Err(Error::InvalidArgument("Δ must have at least one entry".into()));
    }
    if cfg.tol <= BigRational::zero() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let mut k = cfg.k_start.max(1).min(cfg.k_max.max(1));
    let mut best_hi: Option<BigRational> = None;
    loop {
        let families = contributions_at(delta, k);
        let lo: BigRational = families.iter().map(|f| &f.lo).sum();
        let tail: BigRational = families.iter().map(|f| &f.tail).sum();
        let mut hi = &lo + &tail;
        if let Some(prev) = best_hi.take() {
            if prev < hi {
                hi = prev;
            }
        }
        let exact = tail.is_zero();
        let converged = &hi - &lo <= cfg.tol;
        if converged || k >= cfg.k_max {
            return Ok(RhoResult {
                delta: delta.to_string(),
                enclosure: Enclosure { lo, hi },
                families,
                k_used: k,
                exact,
                converged,
            });
        }
        best_hi = Some(hi);
        k = (2 * k).min(cfg.k_max);
    }
}

/// `ρ_odd(Δ)` for every `Δ ∈ {1, …, delta_max}^h`, in lexicographic order.
pub fn rho_table(h: usize, delta_max: u64, cfg: &RhoConfig) -> Result<Vec<RhoResult>> {
    if h == 0 || delta_max == 0 {
        return Err(Error::InvalidArgument("need h ≥ 1 and delta_max ≥ 1".into()));
    }
    DeltaTuple::all(h, delta_max).par_iter().map(|d| rho_odd(d, cfg)).collect()
}

/// `Σ_{k ≤ K} ρ_odd(k) = 1 − 2/((K+1)(K+2))`.
pub fn haynes_partial_sum(k: u64) -> BigRational {
    BigRational::one() - tail_from(k + 1)
}
