//! Exact convex polygons for the tiles `𝒯_{k₁,…,k_r}`.
//!
//! With `L₀ = x`, `L₁ = y` and `L_{i+1} = k_i·L_i − L_{i−1}`, the tile
//! `𝒯_{k₁,…,k_r}` is cut out by
//!
//! ```text
//! 0 < L_i ≤ 1          (0 ≤ i ≤ r+1)
//! L_i + L_{i+1} > 1    (0 ≤ i ≤ r)
//! ```
//!
//! A [`ConvexRegion`] keeps the constraint list with its strictness (used for
//! lattice membership) next to the closure polygon (used for areas). The
//! closure is computed by clipping the unit square one closed half-plane at
//! a time in `BigRational` arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_ratio, to_f64};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point {
            x: BigRational::new(xn.into(), xd.into()),
            y: BigRational::new(yn.into(), yd.into()),
        }
    }

    fn lerp(&self, other: &Point, t: &BigRational) -> Point {
        Point {
            x: &self.x + t * (&other.x - &self.x),
            y: &self.y + t * (&other.y - &self.y),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_ratio(&self.x), fmt_ratio(&self.y))
    }
}

/// Twice the signed area of the triangle `a, b, c`.
fn cross(a: &Point, b: &Point, c: &Point) -> BigRational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// `cx·x + cy·y + c0` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    cx: BigInt,
    cy: BigInt,
    c0: BigInt,
}

impl LinearForm {
    pub fn new(cx: BigInt, cy: BigInt, c0: BigInt) -> Result<Self> {
        if cx.is_zero() && cy.is_zero() && c0.is_zero() {
            return Err(Error::InvalidArgument("linear form with all coefficients zero".into()));
        }
        Ok(LinearForm { cx, cy, c0 })
    }

    pub fn x() -> Self {
        LinearForm { cx: BigInt::one(), cy: BigInt::zero(), c0: BigInt::zero() }
    }

    pub fn y() -> Self {
        LinearForm { cx: BigInt::zero(), cy: BigInt::one(), c0: BigInt::zero() }
    }

    pub fn cx(&self) -> &BigInt {
        &self.cx
    }

    pub fn cy(&self) -> &BigInt {
        &self.cy
    }

    pub fn c0(&self) -> &BigInt {
        &self.c0
    }

    pub fn eval(&self, p: &Point) -> BigRational {
        BigRational::from_integer(self.cx.clone()) * &p.x
            + BigRational::from_integer(self.cy.clone()) * &p.y
            + BigRational::from_integer(self.c0.clone())
    }

    /// `k·self − prev`, the next term of the `L_i` recurrence.
    pub fn recur(&self, k: u64, prev: &LinearForm) -> LinearForm {
        let k = BigInt::from(k);
        LinearForm {
            cx: &k * &self.cx - &prev.cx,
            cy: &k * &self.cy - &prev.cy,
            c0: &k * &self.c0 - &prev.c0,
        }
    }

    pub fn plus(&self, other: &LinearForm) -> LinearForm {
        LinearForm { cx: &self.cx + &other.cx, cy: &self.cy + &other.cy, c0: &self.c0 + &other.c0 }
    }

    /// The form `p' ↦ self(T_k⁻¹ p')` where `T_k(x, y) = (y, k·y − x)`,
    /// i.e. `T_k⁻¹(u, v) = (k·u − v, u)`.
    fn pull_back(&self, k: u64) -> LinearForm {
        LinearForm { cx: &self.cx * BigInt::from(k) + &self.cy, cy: -&self.cx, c0: self.c0.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

impl Sense {
    pub fn is_strict(self) -> bool {
        matches!(self, Sense::Gt | Sense::Lt)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Ge => ">=",
            Sense::Gt => ">",
            Sense::Le => "<=",
            Sense::Lt => "<",
        }
    }
}

/// `form (sense) bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlaneConstraint {
    pub form: LinearForm,
    pub sense: Sense,
    pub bound: BigRational,
}

impl HalfPlaneConstraint {
    pub fn new(form: LinearForm, sense: Sense, bound: BigRational) -> Self {
        HalfPlaneConstraint { form, sense, bound }
    }

    /// Signed slack: nonnegative exactly on the closed half-plane.
    fn slack(&self, p: &Point) -> BigRational {
        let v = self.form.eval(p);
        match self.sense {
            Sense::Ge | Sense::Gt => v - &self.bound,
            Sense::Le | Sense::Lt => &self.bound - v,
        }
    }

    pub fn holds(&self, p: &Point) -> bool {
        let s = self.slack(p);
        if self.sense.is_strict() {
            s.is_positive()
        } else {
            !s.is_negative()
        }
    }

    pub fn holds_closed(&self, p: &Point) -> bool {
        !self.slack(p).is_negative()
    }

    /// Integer coefficients `(A, B, C, strict)` with the constraint equivalent
    /// to `A·x + B·y + C ≥ 0` (or `> 0` when strict).
    pub fn integer_normal_form(&self) -> (BigInt, BigInt, BigInt, bool) {
        let s = self.bound.denom().clone();
        let p = self.bound.numer().clone();
        let (a, b, c) = (&s * &self.form.cx, &s * &self.form.cy, &s * &self.form.c0 - p);
        match self.sense {
            Sense::Ge | Sense::Gt => (a, b, c, self.sense.is_strict()),
            Sense::Le | Sense::Lt => (-a, -b, -c, self.sense.is_strict()),
        }
    }

    fn pull_back(&self, k: u64) -> HalfPlaneConstraint {
        HalfPlaneConstraint { form: self.form.pull_back(k), sense: self.sense, bound: self.bound.clone() }
    }
}

impl fmt::Display for HalfPlaneConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}*x + {}*y + {} {} {}",
            self.form.cx,
            self.form.cy,
            self.form.c0,
            self.sense.symbol(),
            fmt_ratio(&self.bound)
        )
    }
}

/// Convex region: constraints with strictness plus the closure polygon.
///
/// `vertices` is the canonical closure polygon (counter-clockwise, starting
/// at the lexicographically smallest vertex, no repeated or collinear
/// points) and is empty when the closure has no interior. `hull` keeps the
/// raw clip result, which may be a segment or a point, so lattice sweeps
/// still see degenerate pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexRegion {
    constraints: Vec<HalfPlaneConstraint>,
    vertices: Vec<Point>,
    hull: Vec<Point>,
}

fn unit_square() -> Vec<Point> {
    vec![
        Point::from_ints(0, 1, 0, 1),
        Point::from_ints(1, 1, 0, 1),
        Point::from_ints(1, 1, 1, 1),
        Point::from_ints(0, 1, 1, 1),
    ]
}

fn dedup_cyclic(mut pts: Vec<Point>) -> Vec<Point> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    pts
}

fn clip(poly: &[Point], c: &HalfPlaneConstraint) -> Vec<Point> {
    if poly.is_empty() {
        return Vec::new();
    }
    let vals: Vec<BigRational> = poly.iter().map(|p| c.slack(p)).collect();
    if vals.iter().all(|v| !v.is_negative()) {
        return poly.to_vec();
    }
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let j = (i + 1) % n;
        let (vp, vq) = (&vals[i], &vals[j]);
        if !vp.is_negative() {
            out.push(poly[i].clone());
        }
        if n > 1 && ((vp.is_positive() && vq.is_negative()) || (vp.is_negative() && vq.is_positive())) {
            let t = vp / (vp - vq);
            out.push(poly[i].lerp(&poly[j], &t));
        }
    }
    dedup_cyclic(out)
}

fn canonical(hull: &[Point]) -> Vec<Point> {
    let mut pts = dedup_cyclic(hull.to_vec());
    loop {
        let n = pts.len();
        if n < 3 {
            return Vec::new();
        }
        let drop = (0..n).find(|&i| cross(&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]).is_zero());
        match drop {
            Some(i) => {
                pts.remove(i);
            }
            None => break,
        }
    }
    if shoelace2(&pts).is_negative() {
        pts.reverse();
    }
    let start = (0..pts.len()).min_by(|&a, &b| pts[a].cmp(&pts[b])).unwrap_or(0);
    pts.rotate_left(start);
    pts
}

fn shoelace2(pts: &[Point]) -> BigRational {
    let n = pts.len();
    (0..n).fold(BigRational::zero(), |acc, i| {
        let (p, q) = (&pts[i], &pts[(i + 1) % n]);
        acc + (&p.x * &q.y - &q.x * &p.y)
    })
}

impl ConvexRegion {
    /// Intersection of the unit square with the given constraints.
    pub fn from_constraints(constraints: Vec<HalfPlaneConstraint>) -> Self {
        let hull = constraints.iter().fold(unit_square(), |h, c| clip(&h, c));
        Self::assemble(constraints, hull)
    }

    fn assemble(constraints: Vec<HalfPlaneConstraint>, hull: Vec<Point>) -> Self {
        let vertices = canonical(&hull);
        ConvexRegion { constraints, vertices, hull }
    }

    /// Closed polygon with the given vertices (any order around the
    /// boundary); constraints are the closed edge half-planes.
    pub fn from_vertices(points: Vec<Point>) -> Result<Self> {
        let vertices = canonical(&points);
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("polygon has no interior".into()));
        }
        let n = vertices.len();
        let constraints = (0..n)
            .map(|i| edge_constraint(&vertices[i], &vertices[(i + 1) % n]))
            .collect();
        Ok(ConvexRegion { constraints, hull: vertices.clone(), vertices })
    }

    /// The region cut out by the infeasible constraint `1 ≤ 0`.
    pub fn empty() -> Self {
        let one = LinearForm { cx: BigInt::zero(), cy: BigInt::zero(), c0: BigInt::one() };
        Self::from_constraints(vec![HalfPlaneConstraint::new(one, Sense::Le, BigRational::zero())])
    }

    pub fn constraints(&self) -> &[HalfPlaneConstraint] {
        &self.constraints
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Raw closure points, possibly degenerate.
    pub fn hull(&self) -> &[Point] {
        &self.hull
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> BigRational {
        shoelace2(&self.vertices) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.constraints.iter().all(|c| c.holds(p))
    }

    pub fn contains_closed(&self, p: &Point) -> bool {
        self.constraints.iter().all(|c| c.holds_closed(p))
    }

    /// Bounding box `(xmin, xmax, ymin, ymax)` of the raw closure.
    pub fn bbox(&self) -> Option<(BigRational, BigRational, BigRational, BigRational)> {
        let first = self.hull.first()?;
        let mut b = (first.x.clone(), first.x.clone(), first.y.clone(), first.y.clone());
        for p in &self.hull[1..] {
            if p.x < b.0 {
                b.0 = p.x.clone();
            }
            if p.x > b.1 {
                b.1 = p.x.clone();
            }
            if p.y < b.2 {
                b.2 = p.y.clone();
            }
            if p.y > b.3 {
                b.3 = p.y.clone();
            }
        }
        Some(b)
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (p, q) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
                let dx = to_f64(&(&q.x - &p.x));
                let dy = to_f64(&(&q.y - &p.y));
                dx.hypot(dy)
            })
            .sum()
    }

    pub fn intersect(&self, other: &ConvexRegion) -> ConvexRegion {
        let hull = other.constraints.iter().fold(self.hull.clone(), |h, c| clip(&h, c));
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().cloned());
        Self::assemble(constraints, hull)
    }

    /// Closure containment: every vertex of `self` lies in the closure of
    /// `other`.
    pub fn is_subset_of(&self, other: &ConvexRegion) -> bool {
        self.vertices.iter().all(|v| other.contains_closed(v))
    }

    pub fn dump(&self) -> RegionDump {
        RegionDump {
            constraints: self
                .constraints
                .iter()
                .map(|c| ConstraintDump {
                    cx: int_json(&c.form.cx),
                    cy: int_json(&c.form.cy),
                    c0: int_json(&c.form.c0),
                    sense: c.sense,
                    bound: fmt_ratio(&c.bound),
                })
                .collect(),
            vertices: self.vertices.iter().map(|p| [fmt_ratio(&p.x), fmt_ratio(&p.y)]).collect(),
            area: fmt_ratio(&self.area()),
        }
    }
}

fn edge_constraint(p: &Point, q: &Point) -> HalfPlaneConstraint {
    // Left of p→q: (qx−px)(y−py) − (qy−py)(x−px) ≥ 0.
    let dx = &q.x - &p.x;
    let dy = &q.y - &p.y;
    let cx = -dy.clone();
    let cy = dx.clone();
    let c0 = &dy * &p.x - &dx * &p.y;
    let l = cx.denom().lcm(cy.denom()).lcm(c0.denom());
    let scale = BigRational::from_integer(l);
    let to_int = |r: BigRational| (r * &scale).to_integer();
    let (cx, cy, c0) = (to_int(cx), to_int(cy), to_int(c0));
    let g = cx.gcd(&cy).gcd(&c0);
    let form = LinearForm { cx: cx / &g, cy: cy / &g, c0: c0 / &g };
    HalfPlaneConstraint::new(form, Sense::Ge, BigRational::zero())
}

/// JSON integers when they fit in `i64`, decimal strings otherwise.
fn int_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintDump {
    pub cx: serde_json::Value,
    pub cy: serde_json::Value,
    pub c0: serde_json::Value,
    pub sense: Sense,
    pub bound: String,
}

/// Serialized region: integer constraint coefficients, `"p/q"` vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionDump {
    pub constraints: Vec<ConstraintDump>,
    pub vertices: Vec<[String; 2]>,
    pub area: String,
}

/// Labels `(k₁, …, k_r)`; the empty tuple names `𝒯` itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexTuple(Vec<u64>);

impl IndexTuple {
    pub fn new(ks: Vec<u64>) -> Result<Self> {
        if ks.contains(&0) {
            return Err(Error::InvalidArgument("tile labels must be ≥ 1".into()));
        }
        Ok(IndexTuple(ks))
    }

    pub fn ks(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "T_({})", parts.join(","))
    }
}

impl std::str::FromStr for IndexTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(IndexTuple(Vec::new()));
        }
        let ks = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad label `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        IndexTuple::new(ks)
    }
}

/// A tile under construction: labels so far, the last two forms of the
/// recurrence, and the region.
#[derive(Clone, Debug)]
pub struct Tile {
    ks: Vec<u64>,
    prev: LinearForm,
    last: LinearForm,
    region: ConvexRegion,
}

fn form_constraints(prev: &LinearForm, last: &LinearForm) -> [HalfPlaneConstraint; 3] {
    let one = BigRational::one();
    [
        HalfPlaneConstraint::new(last.clone(), Sense::Le, one.clone()),
        HalfPlaneConstraint::new(last.clone(), Sense::Gt, BigRational::zero()),
        HalfPlaneConstraint::new(prev.plus(last), Sense::Gt, one),
    ]
}

impl Tile {
    /// The Farey triangle `𝒯`.
    pub fn root() -> Tile {
        let (l0, l1) = (LinearForm::x(), LinearForm::y());
        let one = BigRational::one();
        let mut constraints = vec![
            HalfPlaneConstraint::new(l0.clone(), Sense::Le, one),
            HalfPlaneConstraint::new(l0.clone(), Sense::Gt, BigRational::zero()),
        ];
        constraints.extend(form_constraints(&l0, &l1));
        Tile { ks: Vec::new(), region: ConvexRegion::from_constraints(constraints), prev: l0, last: l1 }
    }

    /// `𝒯_{ks, k}`.
    pub fn child(&self, k: u64) -> Tile {
        let next = self.last.recur(k, &self.prev);
        let extra = form_constraints(&self.last, &next);
        let hull = extra.iter().fold(self.region.hull.clone(), |h, c| clip(&h, c));
        let mut constraints = self.region.constraints.clone();
        constraints.extend(extra);
        let mut ks = self.ks.clone();
        ks.push(k);
        Tile { ks, prev: self.last.clone(), last: next, region: ConvexRegion::assemble(constraints, hull) }
    }

    pub fn ks(&self) -> &[u64] {
        &self.ks
    }

    pub fn region(&self) -> &ConvexRegion {
        &self.region
    }

    pub fn into_region(self) -> ConvexRegion {
        self.region
    }

    /// Labels `k` for which `child(k)` can be nonempty, capped at `cap`.
    ///
    /// The next label is `⌊(1 + L_r)/L_{r+1}⌋`; over the closure this
    /// linear-fractional function takes its extremes at vertices, and is
    /// unbounded when `L_{r+1}` vanishes at one.
    pub fn next_label_range(&self, cap: u64) -> Option<(u64, u64)> {
        if self.region.hull.is_empty() || cap == 0 {
            return None;
        }
        let one = BigRational::one();
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        let mut unbounded = false;
        for v in &self.region.hull {
            let den = self.last.eval(v);
            if !den.is_positive() {
                unbounded = true;
                continue;
            }
            let val = (&one + self.prev.eval(v)) / den;
            if lo.as_ref().is_none_or(|l| &val < l) {
                lo = Some(val.clone());
            }
            if hi.as_ref().is_none_or(|h| &val > h) {
                hi = Some(val);
            }
        }
        let floor = |r: &BigRational| r.floor().to_integer().to_u64().unwrap_or(u64::MAX);
        let lo = lo.as_ref().map_or(1, floor).max(1);
        let hi = if unbounded { cap } else { hi.as_ref().map_or(cap, floor).min(cap) };
        (lo <= hi).then_some((lo, hi))
    }
}

/// `𝒯_{k₁,…,k_r}` (`𝒯` for the empty tuple).
pub fn build_region(ks: &IndexTuple) -> ConvexRegion {
    ks.ks().iter().fold(Tile::root(), |t, &k| t.child(k)).into_region()
}

pub fn region_area(region: &ConvexRegion) -> BigRational {
    region.area()
}

/// Exact membership honoring each constraint's strictness.
pub fn region_membership(region: &ConvexRegion, p: &Point) -> bool {
    region.contains(p)
}

/// Image of `region ⊆ 𝒯_k` under `T_k(x, y) = (y, k·y − x)`, which agrees
/// with `T` there. Constraints are pulled back exactly, so strictness and
/// lattice points carry over.
pub fn unimodular_image(region: &ConvexRegion, k: u64) -> Result<ConvexRegion> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be ≥ 1".into()));
    }
    let tile = build_region(&IndexTuple(vec![k]));
    if let Some(v) = region.hull.iter().find(|v| !tile.contains_closed(v)) {
        return Err(Error::Precondition(v.to_string()));
    }
    let kq = BigRational::from_integer(BigInt::from(k));
    let map = |p: &Point| Point { x: p.y.clone(), y: &kq * &p.y - &p.x };
    let hull: Vec<Point> = region.hull.iter().map(map).collect();
    let constraints = region.constraints.iter().map(|c| c.pull_back(k)).collect();
    Ok(ConvexRegion::assemble(constraints, hull))
}

/// `c_r = 4r + 2`.
pub fn stabilization_threshold(r: u64) -> u64 {
    4 * r + 2
}

/// The quadrangle `T^{−i}𝒯_m` for `m ≥ c_r`, `1 ≤ i ≤ r`, from its four
/// explicit vertices.
pub fn stabilized_quadrangle(m: u64, i: u64, r: u64) -> Result<ConvexRegion> {
    if r == 0 || i == 0 || i > r {
        return Err(Error::InvalidArgument(format!("need 1 ≤ i ≤ r, got i={i}, r={r}")));
    }
    let threshold = stabilization_threshold(r);
    if m < threshold {
        return Err(Error::OutOfRegime { m, threshold });
    }
    let (m, i) = (m as i64, i as i64);
    let v = |a: i64, b: i64, d: i64| Point::from_ints(d - 2 * a, d, d - 2 * b, d);
    ConvexRegion::from_vertices(vec![
        v(i, i - 1, m),
        v(i, i - 1, m + 1),
        v(i + 1, i, m + 2),
        v(i + 1, i, m + 1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn tuple(ks: &[u64]) -> IndexTuple {
        IndexTuple::new(ks.to_vec()).unwrap()
    }

    fn haynes(k: i64) -> BigRational {
        ratio(4, k * (k + 1) * (k + 2))
    }

    #[test]
    fn triangle_itself() {
        let t = build_region(&tuple(&[]));
        assert_eq!(
            t.vertices(),
            &[Point::from_ints(0, 1, 1, 1), Point::from_ints(1, 1, 0, 1), Point::from_ints(1, 1, 1, 1)]
        );
        assert_eq!(t.area(), ratio(1, 2));
        assert_eq!(t.constraints().len(), 5);
    }

    #[test]
    fn single_tiles() {
        assert_eq!(region_area(&build_region(&tuple(&[1]))), ratio(1, 6));
        assert_eq!(region_area(&build_region(&tuple(&[2]))), ratio(1, 6));
        for k in 2..=40 {
            assert_eq!(build_region(&tuple(&[k])).area(), haynes(k as i64), "k={k}");
        }
        let t2 = build_region(&tuple(&[2]));
        assert_eq!(
            t2.vertices(),
            &[
                Point::from_ints(1, 3, 2, 3),
                Point::from_ints(1, 2, 1, 2),
                Point::from_ints(1, 1, 2, 3),
                Point::from_ints(1, 1, 1, 1)
            ]
        );
    }

    #[test]
    fn constraint_list_shape() {
        let r = build_region(&tuple(&[2, 1, 3]));
        // 2(r+2) bounds on L_i plus r+1 pair sums.
        assert_eq!(r.constraints().len(), 2 * 5 + 4);
    }

    #[test]
    fn large_tile_followed_by_one() {
        let a = build_region(&tuple(&[10, 1]));
        assert_eq!(a.area(), ratio(1, 330));
        assert_eq!(a.vertices(), build_region(&tuple(&[10])).vertices());
    }

    #[test]
    fn membership_examples() {
        let p = Point::from_ints(1, 1, 1, 1);
        assert!(region_membership(&build_region(&tuple(&[2])), &p));
        assert!(!region_membership(&build_region(&tuple(&[1])), &p));
        // On the excluded diagonal.
        assert!(!build_region(&tuple(&[])).contains(&Point::from_ints(1, 2, 1, 2)));
    }

    #[test]
    fn empty_and_degenerate_tiles() {
        let r = build_region(&tuple(&[20, 20]));
        assert!(r.is_empty());
        assert_eq!(r.area(), BigRational::zero());
        assert!(ConvexRegion::from_vertices(vec![Point::from_ints(0, 1, 0, 1), Point::from_ints(1, 1, 1, 1)]).is_err());
    }

    #[test]
    fn image_preserves_area_and_lands_in_next_tile() {
        for k in 1..=50 {
            let r = build_region(&tuple(&[k]));
            let img = unimodular_image(&r, k).unwrap();
            assert_eq!(img.area(), r.area(), "k={k}");
            if k >= 6 {
                assert!(img.is_subset_of(&build_region(&tuple(&[1]))));
            }
        }
        let r = build_region(&tuple(&[2, 3]));
        let img = unimodular_image(&r, 2).unwrap();
        let direct = build_region(&tuple(&[3])).intersect(&unimodular_image(&build_region(&tuple(&[2])), 2).unwrap());
        assert_eq!(img.vertices(), direct.vertices());
        assert!(matches!(unimodular_image(&build_region(&tuple(&[3])), 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn quadrangle_example() {
        let q = stabilized_quadrangle(6, 1, 1).unwrap();
        let expected = ConvexRegion::from_vertices(vec![
            Point::from_ints(4, 6, 1, 1),
            Point::from_ints(5, 7, 1, 1),
            Point::from_ints(4, 8, 6, 8),
            Point::from_ints(3, 7, 5, 7),
        ])
        .unwrap();
        assert_eq!(q.vertices(), expected.vertices());
        assert_eq!(q.area(), haynes(6));
        assert!(matches!(stabilized_quadrangle(9, 1, 2), Err(Error::OutOfRegime { m: 9, threshold: 10 })));
        assert!(stabilized_quadrangle(10, 3, 2).is_err());
        assert!(stabilized_quadrangle(10, 2, 2).unwrap().is_subset_of(&build_region(&tuple(&[2]))));
    }

    #[test]
    fn from_vertices_constraints_describe_polygon() {
        let q = stabilized_quadrangle(14, 2, 3).unwrap();
        for v in q.vertices() {
            assert!(q.contains_closed(v));
        }
        let rebuilt = ConvexRegion::from_constraints(q.constraints().to_vec());
        assert_eq!(rebuilt.vertices(), q.vertices());
    }

    #[test]
    fn label_ranges() {
        let root = Tile::root();
        assert_eq!(root.next_label_range(100), Some((1, 100)));
        let t2 = root.child(2);
        assert_eq!(t2.next_label_range(100), Some((1, 5)));
        assert_eq!(root.child(30).next_label_range(100), Some((1, 1)));
    }

    #[test]
    fn dump_format() {
        let d = build_region(&tuple(&[2])).dump();
        assert_eq!(d.area, "1/6");
        assert_eq!(d.vertices[0], ["1/3".to_string(), "2/3".to_string()]);
        let json = serde_json::to_string(&d).unwrap();
        assert!(json.contains("\">=\"") || json.contains("\"<=\""));
        assert!(json.contains("\"cx\":1"));
    }
}
