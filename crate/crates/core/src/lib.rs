//! Exact statistics of consecutive Farey fractions with odd denominators.
//!
//! The crate streams Farey sequences, tracks the determinant `Δ` between
//! consecutive odd-denominator fractions, and reproduces the limiting
//! frequencies of `Δ`-patterns as sums of exact polygon areas under the
//! BCZ map `T(x, y) = (y, ⌊(1+x)/y⌋·y − x)` on the Farey triangle.
//!
//! Module map:
//!
//! * [`farey`]: Farey streams, `Δ`, tuple counting (optionally in a short
//!   interval).
//! * [`dynamics`]: the map `T`, its inverse and the index `κ`.
//! * [`geometry`]: the tiles `𝒯_{k₁,…,k_r}` as exact convex polygons.
//! * [`paths`]: parity bookkeeping that turns a `Δ`-pattern into tile
//!   families.
//! * [`density`]: certified enclosures of the limiting frequencies.
//! * [`lattice`]: primitive lattice point counts and the exact identities
//!   linking them to the Farey side.
//! * [`cli`]: the `farey` command line front end.

pub mod cli;
pub mod density;
pub mod dynamics;
pub mod error;
pub mod farey;
pub mod geometry;
pub mod lattice;
pub mod parity;
pub mod paths;
pub mod rational;

pub use density::{haynes_density, rho_odd, rho_table, Enclosure, RhoConfig, RhoResult};
pub use dynamics::{kappa, orbit_kappas, t_inv, t_map, TrianglePoint};
pub use error::{Error, Result};
pub use farey::{
    count_delta_tuples, delta, empirical_rho, farey_odd_seq, farey_seq, index_nu, DeltaTuple,
    Endpoints, FareyCursor, Fraction, TupleCounter, UnitInterval,
};
pub use geometry::{
    build_region, region_area, region_membership, stabilized_quadrangle, unimodular_image,
    ConvexRegion, HalfPlaneConstraint, IndexTuple, LinearForm, Point, Sense,
};
pub use lattice::{count_lattice, count_lattice_interval, CountReport, ParityClass};
pub use parity::{Parity, Vertex};
pub use paths::{enumerate_paths, LabeledPath, PathFamily};
