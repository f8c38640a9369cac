//! Farey sequences `ℱ_Q`, their odd-denominator subsequence, and counts of
//! consecutive `Δ`-patterns.
//!
//! Enumeration uses the next-term recurrence: if `a/q < a'/q'` are
//! consecutive in `ℱ_Q` then the successor is `(k·a' − a)/(k·q' − q)` with
//! `k = ⌊(Q + q)/q'⌋`. Arithmetic is in `u64`, which is exact for every
//! `Q < 2^31`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_ratio, parse_rational};
use crate::{Error, Result};

/// Largest order accepted by the streaming routines.
pub const MAX_ORDER: u64 = (1 << 31) - 1;

/// Reduced fraction `num/den` in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidFraction { num, den, reason: "zero numerator or denominator" });
        }
        if num > den {
            return Err(Error::InvalidFraction { num, den, reason: "fraction exceeds 1" });
        }
        if num.gcd(&den) != 1 {
            return Err(Error::InvalidFraction { num, den, reason: "not reduced" });
        }
        Ok(Fraction { num, den })
    }

    pub(crate) const fn new_unchecked(num: u64, den: u64) -> Self {
        Fraction { num, den }
    }

    pub const ONE: Fraction = Fraction { num: 1, den: 1 };

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a fraction: `{s}`"));
        let (a, q) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
        Fraction::new(a.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?)
    }
}

fn check_order(q: u64) -> Result<()> {
    if q == 0 {
        return Err(Error::InvalidArgument("Q must be positive".into()));
    }
    if q > MAX_ORDER {
        return Err(Error::CapExceeded { q, cap: MAX_ORDER });
    }
    Ok(())
}

/// Two consecutive elements of `ℱ_Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FareyCursor {
    order: u64,
    prev: Fraction,
    curr: Fraction,
}

impl FareyCursor {
    /// Validates that `prev < curr` are neighbours in `ℱ_Q`.
    pub fn new(order: u64, prev: Fraction, curr: Fraction) -> Result<Self> {
        check_order(order)?;
        if prev.den > order || curr.den > order {
            return Err(Error::InvalidArgument(format!("{prev} or {curr} is not in F_{order}")));
        }
        let det = curr.num as i128 * prev.den as i128 - prev.num as i128 * curr.den as i128;
        if det != 1 || prev.den + curr.den <= order {
            return Err(Error::InvalidArgument(format!(
                "{prev} and {curr} are not consecutive in F_{order}"
            )));
        }
        Ok(FareyCursor { order, prev, curr })
    }

    /// The first pair `1/Q, 1/(Q−1)`; needs `Q ≥ 2`.
    pub fn start(order: u64) -> Result<Self> {
        check_order(order)?;
        if order < 2 {
            return Err(Error::InvalidArgument("F_1 has a single element".into()));
        }
        Ok(FareyCursor {
            order,
            prev: Fraction::new_unchecked(1, order),
            curr: Fraction::new_unchecked(1, order - 1),
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn prev(&self) -> Fraction {
        self.prev
    }

    pub fn curr(&self) -> Fraction {
        self.curr
    }

    /// Returns the successor of `curr` and advances, or
    /// [`Error::EndOfSequence`] once `curr = 1/1`.
    pub fn next_term(&mut self) -> Result<Fraction> {
        if self.curr == Fraction::ONE {
            return Err(Error::EndOfSequence);
        }
        let k = (self.order + self.prev.den) / self.curr.den;
        let next = Fraction::new_unchecked(
            k * self.curr.num - self.prev.num,
            k * self.curr.den - self.prev.den,
        );
        self.prev = self.curr;
        self.curr = next;
        Ok(next)
    }
}

/// Successor of the cursor's current fraction; advances the cursor.
pub fn farey_next(cursor: &mut FareyCursor) -> Result<Fraction> {
    cursor.next_term()
}

/// Iterator over `ℱ_Q` in increasing order, `1/Q` first and `1/1` last.
#[derive(Clone, Debug)]
pub struct FareySeq {
    order: u64,
    // a/b is the (possibly virtual 0/1) predecessor of c/d.
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    done: bool,
}

impl Iterator for FareySeq {
    type Item = Fraction;

    fn next(&mut self) -> Option<Fraction> {
        if self.done {
            return None;
        }
        let out = Fraction::new_unchecked(self.c, self.d);
        if self.c == self.d {
            self.done = true;
        } else {
            let k = (self.order + self.b) / self.d;
            let (c, d) = (k * self.c - self.a, k * self.d - self.b);
            self.a = self.c;
            self.b = self.d;
            self.c = c;
            self.d = d;
        }
        Some(out)
    }
}

pub fn farey_seq(order: u64) -> Result<FareySeq> {
    check_order(order)?;
    Ok(FareySeq { order, a: 0, b: 1, c: 1, d: order, done: false })
}

pub fn farey_odd_seq(order: u64) -> Result<impl Iterator<Item = Fraction>> {
    Ok(farey_seq(order)?.filter(|f| f.den % 2 == 1))
}

/// `Δ(g, g2) = g2.num·g.den − g.num·g2.den`, required to be positive.
pub fn delta(g: Fraction, g2: Fraction) -> Result<u64> {
    let d = g2.num as i128 * g.den as i128 - g.num as i128 * g2.den as i128;
    if d <= 0 {
        return Err(Error::NotOrdered(d));
    }
    Ok(d as u64)
}

/// The index `ν_Q(g) = ⌊(Q + q)/q'⌋` of `g = a/q` whose successor in `ℱ_Q`
/// is `succ = a'/q'`.
pub fn index_nu(order: u64, g: Fraction, succ: Fraction) -> Result<u64> {
    FareyCursor::new(order, g, succ)?;
    Ok((order + g.den) / succ.den)
}

/// `#ℱ_Q` (or `#ℱ_{Q,odd}`) from a totient sieve.
pub fn count_fractions(order: u64, odd_only: bool) -> u64 {
    let phi = totients(order as usize);
    phi.iter()
        .enumerate()
        .skip(1)
        .filter(|(q, _)| !odd_only || q % 2 == 1)
        .map(|(_, p)| *p)
        .sum()
}

/// Euler's totient for `0..=n` (`φ(0)` reported as 0).
pub fn totients(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi
}

/// Pattern `(Δ₁, …, Δ_h)` of consecutive determinants, `h ≥ 1`, entries ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaTuple(Vec<u64>);

impl DeltaTuple {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("a Δ-tuple needs at least one entry".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidArgument("Δ entries must be positive".into()));
        }
        Ok(DeltaTuple(values))
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every tuple in `{1..=max}^h`, lexicographic.
    pub fn all(h: usize, max: u64) -> Vec<DeltaTuple> {
        let mut out = vec![Vec::new()];
        for _ in 0..h {
            out = out
                .into_iter()
                .flat_map(|p| (1..=max).map(move |v| [p.clone(), vec![v]].concat()))
                .collect();
        }
        out.into_iter().map(DeltaTuple).collect()
    }
}

impl fmt::Display for DeltaTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DeltaTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad Δ entry `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        DeltaTuple::new(values)
    }
}

/// How interval endpoints are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Endpoints {
    /// `[α, β]`.
    #[default]
    Closed,
    /// `(α, β]`; consecutive cells of a partition of `[0, 1]` never share
    /// a fraction.
    LeftOpen,
}

/// Subinterval `[α, β]` of `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitInterval {
    alpha: BigRational,
    beta: BigRational,
}

impl UnitInterval {
    pub fn new(alpha: BigRational, beta: BigRational) -> Result<Self> {
        if alpha < BigRational::zero() || beta > BigRational::one() || alpha > beta {
            return Err(Error::InvalidArgument(format!(
                "need 0 ≤ α ≤ β ≤ 1, got [{}, {}]",
                fmt_ratio(&alpha),
                fmt_ratio(&beta)
            )));
        }
        Ok(UnitInterval { alpha, beta })
    }

    pub fn whole() -> Self {
        UnitInterval { alpha: BigRational::zero(), beta: BigRational::one() }
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    pub fn length(&self) -> BigRational {
        &self.beta - &self.alpha
    }

    /// Membership of `num/den` (not necessarily reduced).
    pub fn contains(&self, num: u64, den: u64, rule: Endpoints) -> bool {
        let x = BigRational::new_raw(BigInt::from(num), BigInt::from(den));
        let above = match rule {
            Endpoints::Closed => x >= self.alpha,
            Endpoints::LeftOpen => x > self.alpha,
        };
        above && x <= self.beta
    }

    /// True when `num/den` sits exactly on an endpoint.
    pub fn on_boundary(&self, num: u64, den: u64) -> bool {
        let x = BigRational::new_raw(BigInt::from(num), BigInt::from(den));
        x == self.alpha || x == self.beta
    }
}

impl Serialize for UnitInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [fmt_ratio(&self.alpha), fmt_ratio(&self.beta)].serialize(s)
    }
}

impl fmt::Display for UnitInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_ratio(&self.alpha), fmt_ratio(&self.beta))
    }
}

impl FromStr for UnitInterval {
    type Err = Error;

    /// `a,b` with rational endpoints, e.g. `1/4,3/4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("interval must be `alpha,beta`, got `{s}`")))?;
        UnitInterval::new(parse_rational(a)?, parse_rational(b)?)
    }
}

/// Match count and window count from one streaming pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleCount {
    pub matches: u64,
    /// Number of `(h+1)`-windows whose first element passed the interval
    /// filter.
    pub windows: u64,
}

/// Streaming counter of `Δ`-patterns over consecutive elements of
/// `ℱ_{Q,odd}`.
///
/// By default windows stop at `1/1`. In cyclic mode the sequence continues
/// into `ℱ_Q + 1, ℱ_Q + 2, …`, so every element of `ℱ_{Q,odd}` starts
/// exactly one window; this is the count that primitive lattice points of
/// `Q𝒯` enumerate.
#[derive(Clone, Debug)]
pub struct TupleCounter {
    order: u64,
    interval: Option<UnitInterval>,
    endpoints: Endpoints,
    cyclic: bool,
}

impl TupleCounter {
    pub fn new(order: u64) -> Self {
        TupleCounter { order, interval: None, endpoints: Endpoints::Closed, cyclic: false }
    }

    pub fn interval(mut self, interval: Option<UnitInterval>) -> Self {
        self.interval = interval;
        self
    }

    pub fn endpoints(mut self, endpoints: Endpoints) -> Self {
        self.endpoints = endpoints;
        self
    }

    pub fn cyclic(mut self, cyclic: bool) -> Self {
        self.cyclic = cyclic;
        self
    }

    /// Calls `f(start, deltas)` for each window of `h + 1` consecutive odd
    /// fractions whose start passes the interval filter. `start` is
    /// `(num, den)` of the first element.
    pub fn for_each_window<F>(&self, h: usize, mut f: F) -> Result<()>
    where
        F: FnMut((u64, u64), &[u64]),
    {
        if h == 0 {
            return Err(Error::InvalidArgument("window length h must be ≥ 1".into()));
        }
        let mut ring: VecDeque<(u64, u64)> = VecDeque::with_capacity(h + 1);
        let mut deltas: VecDeque<u64> = VecDeque::with_capacity(h);
        let mut head: Vec<(u64, u64)> = Vec::with_capacity(h);
        let mut scratch: Vec<u64> = Vec::with_capacity(h);
        let mut push = |g: (u64, u64), ring: &mut VecDeque<(u64, u64)>, deltas: &mut VecDeque<u64>| {
            if let Some(&(a, q)) = ring.back() {
                let d = (g.0 as u128 * q as u128 - a as u128 * g.1 as u128) as u64;
                deltas.push_back(d);
                if deltas.len() > h {
                    deltas.pop_front();
                }
            }
            ring.push_back(g);
            if ring.len() > h + 1 {
                ring.pop_front();
            }
            if ring.len() == h + 1 {
                let start = ring[0];
                let keep = match &self.interval {
                    None => true,
                    Some(iv) => iv.contains(start.0, start.1, self.endpoints),
                };
                if keep {
                    scratch.clear();
                    scratch.extend(deltas.iter().copied());
                    f(start, &scratch);
                }
            }
        };
        let mut n = 0u64;
        for g in farey_odd_seq(self.order)? {
            n += 1;
            if head.len() < h {
                head.push((g.num, g.den));
            }
            push((g.num, g.den), &mut ring, &mut deltas);
        }
        if self.cyclic {
            for j in 0..h {
                let (a, q) = head[j % head.len()];
                let shift = 1 + (j as u64) / n;
                push((a + shift * q, q), &mut ring, &mut deltas);
            }
        }
        Ok(())
    }

    pub fn count(&self, pattern: &DeltaTuple) -> Result<TupleCount> {
        let mut out = TupleCount { matches: 0, windows: 0 };
        self.for_each_window(pattern.len(), |_, d| {
            out.windows += 1;
            if d == pattern.values() {
                out.matches += 1;
            }
        })?;
        Ok(out)
    }

    /// Counts of every observed `h`-pattern in one pass, plus the window
    /// total.
    pub fn histogram(&self, h: usize) -> Result<(BTreeMap<Vec<u64>, u64>, u64)> {
        let mut hist = BTreeMap::new();
        let mut windows = 0u64;
        self.for_each_window(h, |_, d| {
            windows += 1;
            *hist.entry(d.to_vec()).or_insert(0) += 1;
        })?;
        Ok((hist, windows))
    }
}

/// `N_{Q,odd}(Δ)`, restricted to windows starting in `interval` (closed)
/// when one is given. Windows never wrap past `1/1`.
pub fn count_delta_tuples(order: u64, pattern: &DeltaTuple, interval: Option<&UnitInterval>) -> Result<u64> {
    Ok(TupleCounter::new(order).interval(interval.cloned()).count(pattern)?.matches)
}

/// Empirical frequency of `pattern` among all `(h+1)`-windows of
/// `ℱ_{Q,odd}` (starting in `interval` if given), as an exact rational.
pub fn empirical_rho(order: u64, pattern: &DeltaTuple, interval: Option<&UnitInterval>) -> Result<BigRational> {
    let c = TupleCounter::new(order).interval(interval.cloned()).count(pattern)?;
    if c.windows == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(BigInt::from(c.matches), BigInt::from(c.windows)))
}
