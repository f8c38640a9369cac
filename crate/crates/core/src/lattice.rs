//! Primitive lattice points in scaled regions `Q·Ω`, with parity classes
//! and the modular-inverse filter `b̄ ∈ I_a`, and the exact identities that
//! tie them to the Farey side.
//!
//! A point `(a, b)` of `Q𝒯` with `gcd(a, b) = 1` is a pair of consecutive
//! denominators of `ℱ_Q` (continued cyclically past `1/1`), and the tile
//! containing it records the `κ`-labels of its orbit.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::farey::{count_fractions, DeltaTuple, Endpoints, TupleCounter, UnitInterval};
use crate::geometry::{build_region, unimodular_image, ConvexRegion, IndexTuple, Tile};
use crate::parity::{Parity, Vertex};
use crate::paths::{enumerate_paths, observed_windows, PathFamily, Step};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParityClass {
    pub x: Parity,
    pub y: Parity,
}

impl ParityClass {
    pub const ANY: ParityClass = ParityClass { x: Parity::Any, y: Parity::Any };
    pub const ODD_ANY: ParityClass = ParityClass { x: Parity::Odd, y: Parity::Any };
    pub const ODD_ODD: ParityClass = ParityClass { x: Parity::Odd, y: Parity::Odd };
    pub const ODD_EVEN: ParityClass = ParityClass { x: Parity::Odd, y: Parity::Even };
    pub const EVEN_ODD: ParityClass = ParityClass { x: Parity::Even, y: Parity::Odd };

    pub fn new(x: Parity, y: Parity) -> Self {
        ParityClass { x, y }
    }

    /// `(odd, o(v₁))`.
    pub fn odd_with(v: Vertex) -> Self {
        ParityClass { x: Parity::Odd, y: v.parity() }
    }

    pub fn admits(self, a: i64, b: i64) -> bool {
        self.x.admits_i64(a) && self.y.admits_i64(b)
    }

    /// Density of primitive points of this class relative to Lebesgue
    /// measure: `2/π²` for each of (odd,odd), (odd,even), (even,odd) it
    /// allows.
    pub fn primitive_density(self) -> f64 {
        let classes = [(Parity::Odd, Parity::Odd), (Parity::Odd, Parity::Even), (Parity::Even, Parity::Odd)];
        let n = classes
            .iter()
            .filter(|(x, y)| (self.x == Parity::Any || self.x == *x) && (self.y == Parity::Any || self.y == *y))
            .count();
        2.0 * n as f64 / (std::f64::consts::PI * std::f64::consts::PI)
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

impl std::str::FromStr for ParityClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("parity class must be `x,y`, got `{s}`")))?;
        Ok(ParityClass { x: x.parse()?, y: y.parse()? })
    }
}

fn serialize_region<S: Serializer>(r: &ConvexRegion, s: S) -> std::result::Result<S::Ok, S::Error> {
    r.dump().serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub count: u64,
    #[serde(serialize_with = "serialize_region")]
    pub region: ConvexRegion,
    pub q: u64,
    pub parity: ParityClass,
    pub primitive: bool,
    pub interval: Option<UnitInterval>,
    pub endpoints: Endpoints,
    /// Counted or rejected points whose `b̄` sits exactly on an endpoint of
    /// `I_a`, where the tie rule decides.
    pub boundary_hits: u64,
    /// Whether a point with `a = 1` (where `b̄` is taken to be 0) was tested.
    pub unit_point_seen: bool,
}

/// `A·a + B·b + C ≥ 0` (or `> 0`) over integers.
#[derive(Clone, Copy, Debug)]
struct IntHalfPlane {
    a: i128,
    b: i128,
    c: i128,
    strict: bool,
}

fn to_i128(n: &BigInt) -> Result<i128> {
    n.to_i128().ok_or(Error::Overflow)
}

fn scaled_constraints(region: &ConvexRegion, q: u64) -> Result<Vec<IntHalfPlane>> {
    let qb = BigInt::from(q);
    region
        .constraints()
        .iter()
        .map(|c| {
            let (a, b, c0, strict) = c.integer_normal_form();
            Ok(IntHalfPlane { a: to_i128(&a)?, b: to_i128(&b)?, c: to_i128(&(c0 * &qb))?, strict })
        })
        .collect()
}

fn ceil_i(r: &BigRational) -> i64 {
    r.ceil().to_integer().to_i64().unwrap_or(i64::MAX)
}

fn floor_i(r: &BigRational) -> i64 {
    r.floor().to_integer().to_i64().unwrap_or(i64::MIN)
}

/// Integer points of `Q·region` column by column: calls `f(a, b_lo, b_hi)`
/// for each column with a nonempty range.
fn sweep<F: FnMut(i64, i64, i64)>(region: &ConvexRegion, q: u64, mut f: F) -> Result<()> {
    let Some((x0, x1, y0, y1)) = region.bbox() else {
        return Ok(());
    };
    let qr = BigRational::from_integer(BigInt::from(q));
    let (a0, a1) = (ceil_i(&(&x0 * &qr)), floor_i(&(&x1 * &qr)));
    let (b0, b1) = (ceil_i(&(&y0 * &qr)), floor_i(&(&y1 * &qr)));
    let hs = scaled_constraints(region, q)?;
    'col: for a in a0..=a1 {
        let (mut lo, mut hi) = (b0 as i128, b1 as i128);
        for h in &hs {
            let r = h.a.checked_mul(a as i128).and_then(|v| v.checked_add(h.c)).ok_or(Error::Overflow)?;
            // h.b·b + r ≥ 0 (or > 0)
            if h.b == 0 {
                if r < 0 || (h.strict && r == 0) {
                    continue 'col;
                }
            } else if h.b > 0 {
                // b ≥ −r/B
                let t = (-r).div_euclid(h.b);
                let exact = (-r).rem_euclid(h.b) == 0;
                let bound = if exact { if h.strict { t + 1 } else { t } } else { t + 1 };
                lo = lo.max(bound);
            } else {
                // b ≤ r/|B|
                let m = -h.b;
                let t = r.div_euclid(m);
                let exact = r.rem_euclid(m) == 0;
                let bound = if exact && h.strict { t - 1 } else { t };
                hi = hi.min(bound);
            }
            if lo > hi {
                continue 'col;
            }
        }
        f(a, lo as i64, hi as i64);
    }
    Ok(())
}

/// Whether `Q·region` contains any integer point (primitive or not).
pub fn has_lattice_point(region: &ConvexRegion, q: u64) -> Result<bool> {
    let mut any = false;
    sweep(region, q, |_, _, _| any = true)?;
    Ok(any)
}

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// `#{(a, b) ∈ Q·region ∩ ℤ² : parity, gcd(a, b) = 1 if primitive}` with
/// every constraint honoured at its exact strictness.
pub fn count_lattice(region: &ConvexRegion, q: u64, parity: ParityClass, primitive: bool) -> Result<CountReport> {
    let mut count = 0u64;
    sweep(region, q, |a, lo, hi| {
        if !parity.x.admits_i64(a) {
            return;
        }
        for b in lo..=hi {
            if parity.y.admits_i64(b) && (!primitive || gcd(a, b) == 1) {
                count += 1;
            }
        }
    })?;
    Ok(CountReport {
        count,
        region: region.clone(),
        q,
        parity,
        primitive,
        interval: None,
        endpoints: Endpoints::default(),
        boundary_hits: 0,
        unit_point_seen: false,
    })
}

/// Inverse of `b` modulo `a` in `{1, …, a−1}`; `None` for `a = 1`.
fn mod_inverse(b: i64, a: i64) -> Option<i64> {
    if a <= 1 {
        return None;
    }
    let e = b.rem_euclid(a).extended_gcd(&a);
    debug_assert_eq!(e.gcd, 1);
    Some(e.x.rem_euclid(a))
}

/// Primitive points of `(Q·region)^I`: those with `b̄ ∈ I_a`, i.e. with
/// `(a − b̄)/a ∈ I`. That fraction is the one with denominator `a`
/// preceding the one with denominator `b` in the Farey order, so the filter
/// matches windows whose first fraction lies in `I`. For `a = 1` the
/// fraction is `1/1` (`b̄ = 0`).
pub fn count_lattice_interval(
    region: &ConvexRegion,
    q: u64,
    parity: ParityClass,
    interval: &UnitInterval,
    endpoints: Endpoints,
) -> Result<CountReport> {
    let mut count = 0u64;
    let mut boundary_hits = 0u64;
    let mut unit_point_seen = false;
    sweep(region, q, |a, lo, hi| {
        if a <= 0 || !parity.x.admits_i64(a) {
            return;
        }
        for b in lo..=hi {
            if !parity.y.admits_i64(b) || gcd(a, b) != 1 {
                continue;
            }
            let bbar = match mod_inverse(b, a) {
                Some(v) => v,
                None => {
                    unit_point_seen = true;
                    0
                }
            };
            let (num, den) = ((a - bbar) as u64, a as u64);
            if interval.on_boundary(num, den) {
                boundary_hits += 1;
            }
            if interval.contains(num, den, endpoints) {
                count += 1;
            }
        }
    })?;
    Ok(CountReport {
        count,
        region: region.clone(),
        q,
        parity,
        primitive: true,
        interval: Some(interval.clone()),
        endpoints,
        boundary_hits,
        unit_point_seen,
    })
}

/// Per-family line of an identity check.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyCount {
    pub family: String,
    pub lattice: u64,
    pub streaming: u64,
}

/// Outcome of checking `N^{(I)}_{Q,odd}(Δ) = Σ_w N_{odd,o(v₁)}((Q𝒯_w)^{(I)})`.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub q: u64,
    pub delta: String,
    pub interval: Option<String>,
    pub streaming: u64,
    pub lattice: u64,
    pub families: Vec<FamilyCount>,
    pub boundary_hits: u64,
    pub pass: bool,
    /// First family whose lattice count disagrees with the windows it
    /// should account for.
    pub first_mismatch: Option<String>,
}

/// Lattice side of the identity for one family: free labels up to `2Q`,
/// subtrees without integer points pruned.
pub fn family_lattice_count(
    family: &PathFamily,
    q: u64,
    interval: Option<(&UnitInterval, Endpoints)>,
) -> Result<(u64, u64)> {
    let parity = ParityClass::odd_with(family.first_vertex());
    let mut total = 0u64;
    let mut hits = 0u64;
    let mut err = None;
    family.walk_tiles(
        2 * q,
        |t: &Tile| has_lattice_point(t.region(), q).unwrap_or(true),
        |t, _| {
            let r = match interval {
                None => count_lattice(t.region(), q, parity, true),
                Some((iv, ep)) => count_lattice_interval(t.region(), q, parity, iv, ep),
            };
            match r {
                Ok(rep) => {
                    total += rep.count;
                    hits += rep.boundary_hits;
                }
                Err(e) => err = Some(e),
            }
        },
    );
    match err {
        Some(e) => Err(e),
        None => Ok((total, hits)),
    }
}

fn check_identity(q: u64, delta: &DeltaTuple, interval: Option<(&UnitInterval, Endpoints)>) -> Result<IdentityReport> {
    let streaming = TupleCounter::new(q)
        .cyclic(true)
        .interval(interval.map(|(iv, _)| iv.clone()))
        .endpoints(interval.map_or(Endpoints::default(), |(_, e)| e))
        .count(delta)?
        .matches;
    let mut by_steps: BTreeMap<Vec<Step>, u64> = BTreeMap::new();
    observed_windows(q, delta.len(), |w| {
        let keep = interval.is_none_or(|(iv, ep)| iv.contains(w.start.0, w.start.1, ep));
        if keep && w.deltas == delta.values() {
            *by_steps.entry(w.steps.clone()).or_default() += 1;
        }
    })?;
    let mut families = Vec::new();
    let mut lattice = 0u64;
    let mut boundary_hits = 0u64;
    let mut first_mismatch = None;
    for fam in enumerate_paths(delta) {
        let (n, hits) = family_lattice_count(&fam, q, interval)?;
        let s = by_steps.get(fam.steps()).copied().unwrap_or(0);
        if n != s && first_mismatch.is_none() {
            first_mismatch = Some(format!("{fam}: lattice {n}, windows {s}"));
        }
        lattice += n;
        boundary_hits += hits;
        families.push(FamilyCount { family: fam.to_string(), lattice: n, streaming: s });
    }
    Ok(IdentityReport {
        q,
        delta: delta.to_string(),
        interval: interval.map(|(iv, _)| iv.to_string()),
        streaming,
        lattice,
        boundary_hits,
        pass: streaming == lattice && first_mismatch.is_none(),
        families,
        first_mismatch,
    })
}

/// Streaming count of `Δ`-windows (cyclic) against the family sum of
/// primitive lattice counts.
pub fn verify_prop_2_1(q: u64, delta: &DeltaTuple) -> Result<IdentityReport> {
    check_identity(q, delta, None)
}

/// The same identity restricted to windows whose first fraction lies in
/// `interval`.
pub fn verify_prop_4_1(q: u64, delta: &DeltaTuple, interval: &UnitInterval, endpoints: Endpoints) -> Result<IdentityReport> {
    check_identity(q, delta, Some((interval, endpoints)))
}

#[derive(Clone, Debug, Serialize)]
pub struct SwapCheck {
    pub before: ParityClass,
    pub after: ParityClass,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SwapReport {
    pub q: u64,
    pub k: u64,
    pub checks: Vec<SwapCheck>,
    pub pass: bool,
}

/// Parity classes exchanged by `(a, b) ↦ (b, k·b − a)`.
pub fn swap_pairs(k: u64) -> [(ParityClass, ParityClass); 3] {
    use ParityClass as P;
    if k.is_multiple_of(2) {
        [(P::ODD_EVEN, P::EVEN_ODD), (P::EVEN_ODD, P::ODD_EVEN), (P::ODD_ODD, P::ODD_ODD)]
    } else {
        [(P::ODD_EVEN, P::EVEN_ODD), (P::EVEN_ODD, P::ODD_ODD), (P::ODD_ODD, P::ODD_EVEN)]
    }
}

/// Primitive counts of `Q(𝒯_k ∩ D)` against those of `Q·T(𝒯_k ∩ D)` with
/// the parity classes exchanged according to the parity of `k`.
pub fn verify_lemma_3_6(q: u64, k: u64, domain: &ConvexRegion) -> Result<SwapReport> {
    let piece = build_region(&IndexTuple::new(vec![k])?).intersect(domain);
    let image = unimodular_image(&piece, k)?;
    let checks = swap_pairs(k)
        .into_iter()
        .map(|(before, after)| {
            Ok(SwapCheck {
                before,
                after,
                lhs: count_lattice(&piece, q, before, true)?.count,
                rhs: count_lattice(&image, q, after, true)?.count,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = checks.iter().all(|c| c.lhs == c.rhs);
    Ok(SwapReport { q, k, checks, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticRow {
    pub q: u64,
    pub count: u64,
    pub main_term: f64,
    pub residual: f64,
    /// `|residual| / (Q log Q)`.
    pub normalized: f64,
    pub within: bool,
}

/// Counts against the main term `density · Q² · Area(region)`.
pub fn asymptotic_report(region: &ConvexRegion, parity: ParityClass, qs: &[u64], c: f64) -> Result<Vec<AsymptoticRow>> {
    let area = crate::rational::to_f64(&region.area());
    qs.iter()
        .map(|&q| {
            let count = count_lattice(region, q, parity, true)?.count;
            Ok(row(q, count, parity.primitive_density() * area * (q as f64).powi(2), c))
        })
        .collect()
}

fn row(q: u64, count: u64, main_term: f64, c: f64) -> AsymptoticRow {
    let residual = count as f64 - main_term;
    let normalized = residual.abs() / (q as f64 * (q as f64).ln());
    AsymptoticRow { q, count, main_term, residual, normalized, within: normalized <= c }
}

/// `N_{Q,odd}` against `2Q²/π²`, using the totient sieve rather than a
/// sweep so that large `Q` stays cheap.
pub fn odd_count_report(qs: &[u64], c: f64) -> Vec<AsymptoticRow> {
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    qs.iter()
        .map(|&q| row(q, count_fractions(q, true), 2.0 * (q as f64).powi(2) / pi2, c))
        .collect()
}

impl CountReport {
    pub fn is_zero(&self) -> bool {
        self.count.is_zero()
    }
}
