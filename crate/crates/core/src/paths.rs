//! Parity bookkeeping that splits a `Δ`-pattern into families of tiles.
//!
//! Between two consecutive odd-denominator fractions of `ℱ_Q` there is at
//! most one even-denominator fraction, so each step of a window is either
//! `O→O` (and then `Δ = 1`) or `O→E→O` (and then `Δ` is the label on the
//! `O→E` edge). Edge labels are the `κ`-values along the `T`-orbit of the
//! first denominator pair, and `q_{i+1} = k_i q_i − q_{i−1}` forces the
//! parity of every label that is followed by another vertex:
//!
//! ```text
//! O —k— O —·— O    k even        E —k— O —·— O    k odd
//! O —k— O —·— E    k odd         E —k— O —·— E    k even
//! ```
//!
//! The last label of a path is summed out and never enters the region.

use std::fmt;

use serde::Serialize;

use crate::farey::{farey_seq, DeltaTuple};
use crate::geometry::{IndexTuple, Tile};
use crate::parity::{Parity, Vertex};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step {
    /// `O → O`
    OO,
    /// `O → E → O`
    OEO,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    Fixed(u64),
    Free(Parity),
}

impl Label {
    pub fn admits(self, k: u64) -> bool {
        match self {
            Label::Fixed(v) => v == k,
            Label::Free(p) => k >= 1 && p.admits(k),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Fixed(v) => write!(f, "{v}"),
            Label::Free(Parity::Any) => f.write_str("*"),
            Label::Free(p) => write!(f, "k:{p}"),
        }
    }
}

/// Vertices from the root `O` on, and one label per edge (so
/// `labels.len() + 1 == vertices.len()`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LabeledPath {
    vertices: Vec<Vertex>,
    labels: Vec<Label>,
}

impl LabeledPath {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Number of edges `|w|`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

impl fmt::Display for LabeledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices[0])?;
        for (l, v) in self.labels.iter().zip(&self.vertices[1..]) {
            write!(f, " —{l}— {v}")?;
        }
        Ok(())
    }
}

/// One term of the family sum: the tiles `𝒯_{k₁,…,k_{|w|−1}}` for all
/// admissible values of the free labels, counted with first coordinate odd
/// and second coordinate of parity `o(v₁)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PathFamily {
    path: LabeledPath,
    steps: Vec<Step>,
}

impl PathFamily {
    pub fn path(&self) -> &LabeledPath {
        &self.path
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `|w| − 1`.
    pub fn region_arity(&self) -> usize {
        self.path.len() - 1
    }

    /// `v₁`, the parity class of the second coordinate.
    pub fn first_vertex(&self) -> Vertex {
        self.path.vertices[1]
    }

    /// Labels `k₁, …, k_{|w|−1}` that define the region.
    pub fn region_labels(&self) -> &[Label] {
        &self.path.labels[..self.region_arity()]
    }

    /// Positions of free labels among the region labels.
    pub fn free_slots(&self) -> Vec<usize> {
        self.region_labels()
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, Label::Free(_)))
            .map(|(i, _)| i)
            .collect()
    }

    /// Fills the free region slots in order.
    pub fn instantiate(&self, free_values: &[u64]) -> Result<IndexTuple> {
        let slots = self.free_slots();
        if slots.len() != free_values.len() {
            return Err(Error::InvalidArgument(format!(
                "family has {} free slots, got {} values",
                slots.len(),
                free_values.len()
            )));
        }
        let mut values = free_values.iter();
        let ks = self
            .region_labels()
            .iter()
            .enumerate()
            .map(|(slot, l)| match *l {
                Label::Fixed(v) => Ok(v),
                Label::Free(p) => {
                    let v = *values.next().expect("length checked");
                    if v == 0 || !p.admits(v) {
                        Err(Error::ParityMismatch { slot, value: v, expected: p.name() })
                    } else {
                        Ok(v)
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        IndexTuple::new(ks)
    }

    /// Whether the concrete labels of a full path (dummy included) belong
    /// to this family.
    pub fn admits(&self, labels: &[u64]) -> bool {
        labels.len() == self.path.len() && self.path.labels.iter().zip(labels).all(|(l, &k)| l.admits(k))
    }

    /// Walks all tiles of the family with free labels up to `cap`, in
    /// depth-first order. Subtrees whose tile fails `keep` are skipped;
    /// `visit` receives each surviving full-depth tile with the free values
    /// used.
    pub fn walk_tiles<K, V>(&self, cap: u64, keep: K, mut visit: V)
    where
        K: Fn(&Tile) -> bool,
        V: FnMut(&Tile, &[u64]),
    {
        let mut free = Vec::new();
        let root = Tile::root();
        if keep(&root) {
            self.walk_from(&root, 0, cap, &keep, &mut visit, &mut free);
        }
    }

    fn walk_from<K, V>(&self, tile: &Tile, depth: usize, cap: u64, keep: &K, visit: &mut V, free: &mut Vec<u64>)
    where
        K: Fn(&Tile) -> bool,
        V: FnMut(&Tile, &[u64]),
    {
        let labels = self.region_labels();
        if depth == labels.len() {
            visit(tile, free);
            return;
        }
        match labels[depth] {
            // Fixed labels are not subject to the cap.
            Label::Fixed(v) => {
                let c = tile.child(v);
                if keep(&c) {
                    self.walk_from(&c, depth + 1, cap, keep, visit, free);
                }
            }
            Label::Free(p) => {
                let Some((lo, hi)) = tile.next_label_range(cap) else {
                    return;
                };
                for k in (lo..=hi).filter(|&k| p.admits(k)) {
                    let c = tile.child(k);
                    if keep(&c) {
                        free.push(k);
                        self.walk_from(&c, depth + 1, cap, keep, visit, free);
                        free.pop();
                    }
                }
            }
        }
    }
}

impl fmt::Display for PathFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.path.fmt(f)
    }
}

/// Parity forced on a label by the vertex before it and the step after it.
fn forced_parity(before: Vertex, next: Step) -> Parity {
    match (before, next) {
        (Vertex::O, Step::OO) => Parity::Even,
        (Vertex::O, Step::OEO) => Parity::Odd,
        (Vertex::E, Step::OO) => Parity::Odd,
        (Vertex::E, Step::OEO) => Parity::Even,
    }
}

fn family_from_steps(delta: &[u64], steps: &[Step]) -> PathFamily {
    let mut vertices = vec![Vertex::O];
    let mut labels = Vec::new();
    for (j, (&step, &d)) in steps.iter().zip(delta).enumerate() {
        let parity = match steps.get(j + 1) {
            None => Parity::Any,
            Some(&next) => match step {
                Step::OO => forced_parity(Vertex::O, next),
                Step::OEO => forced_parity(Vertex::E, next),
            },
        };
        if step == Step::OEO {
            labels.push(Label::Fixed(d));
            vertices.push(Vertex::E);
        }
        labels.push(Label::Free(parity));
        vertices.push(Vertex::O);
    }
    PathFamily { path: LabeledPath { vertices, labels }, steps: steps.to_vec() }
}

/// All families of paths compatible with `delta`: one per choice of step
/// kinds, with `O→O` allowed only where `Δ_j = 1`. `O→O` is tried before
/// `O→E→O` at each step.
pub fn enumerate_paths(delta: &DeltaTuple) -> Vec<PathFamily> {
    let d = delta.values();
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(d.len());
    fn rec(d: &[u64], steps: &mut Vec<Step>, out: &mut Vec<PathFamily>) {
        let j = steps.len();
        if j == d.len() {
            out.push(family_from_steps(d, steps));
            return;
        }
        for step in [Step::OO, Step::OEO] {
            if step == Step::OO && d[j] != 1 {
                continue;
            }
            steps.push(step);
            rec(d, steps, out);
            steps.pop();
        }
    }
    rec(d, &mut steps, &mut out);
    out
}

/// Labels on `O→E` edges of a concrete path.
pub fn c_oe(vertices: &[Vertex], labels: &[u64]) -> Vec<u64> {
    vertices
        .windows(2)
        .zip(labels)
        .filter(|(v, _)| v[0] == Vertex::O && v[1] == Vertex::E)
        .map(|(_, &k)| k)
        .collect()
}

/// The entries of `delta` consumed by `O→E→O` steps of the path.
pub fn c_delta(vertices: &[Vertex], delta: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut j = 0;
    let mut i = 0;
    while i + 1 < vertices.len() {
        let d = *delta
            .get(j)
            .ok_or_else(|| Error::InvalidArgument("path has more steps than Δ".into()))?;
        match (vertices[i], vertices[i + 1]) {
            (Vertex::O, Vertex::O) => i += 1,
            (Vertex::O, Vertex::E) => {
                if vertices.get(i + 2) != Some(&Vertex::O) {
                    return Err(Error::InvalidArgument("E vertex must be followed by O".into()));
                }
                out.push(d);
                i += 2;
            }
            _ => return Err(Error::InvalidArgument("path must step from O".into())),
        }
        j += 1;
    }
    if j != delta.len() {
        return Err(Error::InvalidArgument("path has fewer steps than Δ".into()));
    }
    Ok(out)
}

/// A window of `h + 1` consecutive odd-denominator fractions read off the
/// cyclic denominator sequence of `ℱ_Q`, together with the path it traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservedWindow {
    /// First fraction `(num, den)`.
    pub start: (u64, u64),
    pub steps: Vec<Step>,
    pub vertices: Vec<Vertex>,
    /// `κ` on every edge, terminal edge included.
    pub labels: Vec<u64>,
    pub deltas: Vec<u64>,
}

impl ObservedWindow {
    pub fn delta_tuple(&self) -> DeltaTuple {
        DeltaTuple::new(self.deltas.clone()).expect("determinants are positive")
    }
}

/// Replays every window of `h + 1` consecutive odd-denominator fractions
/// of `ℱ_Q` (continuing cyclically past `1/1`) and reports its path.
pub fn observed_windows<F: FnMut(&ObservedWindow)>(order: u64, h: usize, mut f: F) -> Result<()> {
    if h == 0 {
        return Err(Error::InvalidArgument("window length h must be ≥ 1".into()));
    }
    let fr: Vec<(u64, u64)> = farey_seq(order)?.map(|g| (g.num(), g.den())).collect();
    let n = fr.len();
    let den = |i: usize| fr[i % n].1;
    let kappa = |i: usize| (order + den(i)) / den(i + 1);
    for s in (0..n).filter(|&s| fr[s].1 % 2 == 1) {
        let mut w = ObservedWindow {
            start: fr[s],
            steps: Vec::with_capacity(h),
            vertices: vec![Vertex::O],
            labels: Vec::new(),
            deltas: Vec::with_capacity(h),
        };
        let mut i = s;
        while w.steps.len() < h {
            w.labels.push(kappa(i));
            if den(i + 1) % 2 == 1 {
                w.steps.push(Step::OO);
                w.deltas.push(1);
                w.vertices.push(Vertex::O);
                i += 1;
            } else {
                w.steps.push(Step::OEO);
                w.deltas.push(kappa(i));
                w.labels.push(kappa(i + 1));
                w.vertices.extend([Vertex::E, Vertex::O]);
                i += 2;
            }
        }
        f(&w);
    }
    Ok(())
}
