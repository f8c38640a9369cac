//! The BCZ map `T(x, y) = (y, κ(x, y)·y − x)` on the Farey triangle
//! `𝒯 = {(x, y) ∈ (0, 1]² : x + y > 1}` with `κ(x, y) = ⌊(1 + x)/y⌋`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::rational::fmt_ratio;
use crate::{Error, Result};

/// Point of the Farey triangle. Edges `x = 1` and `y = 1` belong to it, the
/// diagonal `x + y = 1` does not.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrianglePoint {
    x: BigRational,
    y: BigRational,
}

impl TrianglePoint {
    pub fn new(x: BigRational, y: BigRational) -> Result<Self> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        if x <= zero || y <= zero || x > one || y > one || &x + &y <= one {
            return Err(Error::OutsideTriangle { x: fmt_ratio(&x), y: fmt_ratio(&y) });
        }
        Ok(TrianglePoint { x, y })
    }

    /// `(q/Q, q'/Q)` for a pair of consecutive denominators.
    pub fn from_denominators(q: u64, q_next: u64, order: u64) -> Result<Self> {
        let o = BigInt::from(order);
        TrianglePoint::new(
            BigRational::new(BigInt::from(q), o.clone()),
            BigRational::new(BigInt::from(q_next), o),
        )
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn into_coords(self) -> (BigRational, BigRational) {
        (self.x, self.y)
    }
}

impl Serialize for TrianglePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [fmt_ratio(&self.x), fmt_ratio(&self.y)].serialize(s)
    }
}

fn floor_u64(r: &BigRational) -> u64 {
    r.floor().to_integer().to_u64().expect("κ fits in u64")
}

/// `κ(x, y) = ⌊(1 + x)/y⌋ ≥ 1`.
pub fn kappa(p: &TrianglePoint) -> u64 {
    floor_u64(&((BigRational::one() + &p.x) / &p.y))
}

pub fn t_map(p: &TrianglePoint) -> TrianglePoint {
    let k = BigRational::from_integer(BigInt::from(kappa(p)));
    TrianglePoint { x: p.y.clone(), y: k * &p.y - &p.x }
}

/// `T⁻¹(x, y) = (⌊(1 + y)/x⌋·x − y, x)`.
pub fn t_inv(p: &TrianglePoint) -> TrianglePoint {
    let k = floor_u64(&((BigRational::one() + &p.y) / &p.x));
    let k = BigRational::from_integer(BigInt::from(k));
    TrianglePoint { x: k * &p.x - &p.y, y: p.x.clone() }
}

/// `(κ(p), κ(Tp), …, κ(T^{r−1}p))`.
pub fn orbit_kappas(p: &TrianglePoint, r: usize) -> Vec<u64> {
    orbit(p).take(r).map(|q| kappa(&q)).collect()
}

/// `p, Tp, T²p, …`
pub fn orbit(p: &TrianglePoint) -> impl Iterator<Item = TrianglePoint> {
    std::iter::successors(Some(p.clone()), |q| Some(t_map(q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::{farey_seq, index_nu};
    use crate::rational::ratio;

    fn pt(a: i64, b: i64, c: i64, d: i64) -> TrianglePoint {
        TrianglePoint::new(ratio(a, b), ratio(c, d)).unwrap()
    }

    #[test]
    fn rejects_points_off_the_triangle() {
        assert!(TrianglePoint::new(ratio(1, 2), ratio(1, 2)).is_err());
        assert!(TrianglePoint::new(ratio(3, 2), ratio(1, 2)).is_err());
        assert!(TrianglePoint::new(ratio(0, 1), ratio(1, 1)).is_err());
        assert!(TrianglePoint::new(ratio(1, 1), ratio(1, 1)).is_ok());
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&pt(1, 1, 1, 1)), 2);
        assert_eq!(kappa(&pt(4, 8, 7, 8)), 1);
        assert_eq!(kappa(&pt(7, 8, 2, 8)), 7);
        assert_eq!(kappa(&pt(7, 8, 2, 8)), index_nu(8, "3/7".parse().unwrap(), "1/2".parse().unwrap()).unwrap());
    }

    #[test]
    fn map_examples() {
        assert_eq!(t_map(&pt(1, 1, 1, 1)), pt(1, 1, 1, 1));
        assert_eq!(t_map(&pt(4, 8, 7, 8)), pt(7, 8, 3, 8));
        assert_eq!(t_map(&pt(3, 4, 1, 2)), pt(1, 2, 3, 4));
        assert_eq!(t_inv(&pt(1, 1, 1, 1)), pt(1, 1, 1, 1));
        let p = pt(5, 7, 4, 7);
        assert_eq!(t_inv(&t_map(&p)), p);
        assert_eq!(orbit_kappas(&pt(1, 1, 1, 1), 3), vec![2, 2, 2]);
    }

    #[test]
    fn inverse_on_large_tiles_is_a_shear() {
        // (x, y) with κ = 10: x = 1, y = 1/5 gives (1+1)/(1/5) = 10.
        let p = pt(1, 1, 1, 5);
        assert_eq!(kappa(&p), 10);
        assert_eq!(t_inv(&p), pt(4, 5, 1, 1));
    }

    #[test]
    fn orbit_follows_denominators_of_f8() {
        let dens: Vec<u64> = farey_seq(8).unwrap().map(|f| f.den()).collect();
        let p = TrianglePoint::from_denominators(dens[0], dens[1], 8).unwrap();
        let fracs: Vec<_> = farey_seq(8).unwrap().collect();
        let nus: Vec<u64> = (0..4).map(|i| index_nu(8, fracs[i], fracs[i + 1]).unwrap()).collect();
        assert_eq!(orbit_kappas(&p, 4), nus);
        for (i, q) in orbit(&p).take(dens.len() - 1).enumerate() {
            assert_eq!(q, TrianglePoint::from_denominators(dens[i], dens[i + 1], 8).unwrap());
        }
    }
}
