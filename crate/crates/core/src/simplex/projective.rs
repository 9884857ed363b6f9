//! Rational projective points and the Segre embedding.

use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

use super::SimplexError;

/// A point of rational projective space in homogeneous coordinates,
/// indexed from 0. Equality is projective: two points are equal iff one
/// coordinate vector is a nonzero rational multiple of the other, decided
/// by cross-multiplication (no normalization is ever chosen).
#[derive(Debug, Clone)]
pub struct ProjPoint {
    coords: Vec<BigRational>,
}

impl ProjPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self, SimplexError> {
        if coords.is_empty() {
            return Err(SimplexError::InvalidWeights("empty coordinate vector".into()));
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(SimplexError::InvalidWeights("all homogeneous coordinates zero".into()));
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Ambient projective dimension (coordinate count minus one).
    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }

    /// Rescales by a nonzero rational, staying in the same class.
    pub fn scaled(&self, factor: &BigRational) -> Result<Self, SimplexError> {
        if factor.is_zero() {
            return Err(SimplexError::InvalidWeights("zero scaling factor".into()));
        }
        Ok(ProjPoint {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        })
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let k = self
            .coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("invariant: some coordinate nonzero");
        if other.coords[k].is_zero() {
            return false;
        }
        // p_i q_k == q_i p_k for all i.
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(p, q)| p * &other.coords[k] == q * &self.coords[k])
    }
}

impl Eq for ProjPoint {}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// Segre embedding ℙⁿ × ℙᵐ → ℙ^{(n+1)(m+1)−1}: all pairwise coordinate
/// products in row-major order (left factor's index outer). Well defined
/// on projective classes.
pub fn segre(p: &ProjPoint, q: &ProjPoint) -> ProjPoint {
    let mut coords = Vec::with_capacity(p.coords.len() * q.coords.len());
    for a in &p.coords {
        for b in &q.coords {
            coords.push(a * b);
        }
    }
    ProjPoint { coords }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn pt(cs: &[(i64, i64)]) -> ProjPoint {
        ProjPoint::new(cs.iter().map(|&(n, d)| ratio(n, d)).collect()).unwrap()
    }

    #[test]
    fn rejects_degenerate_points() {
        assert!(ProjPoint::new(vec![]).is_err());
        assert!(ProjPoint::new(vec![ratio(0, 1), ratio(0, 1)]).is_err());
    }

    #[test]
    fn projective_equality_by_cross_multiplication() {
        let p = pt(&[(1, 2), (3, 4)]);
        let q = p.scaled(&ratio(-8, 3)).unwrap();
        assert_eq!(p, q);
        assert_ne!(p, pt(&[(1, 2), (3, 5)]));
        assert_ne!(pt(&[(0, 1), (1, 1)]), pt(&[(1, 1), (0, 1)]));
        assert_ne!(p, pt(&[(1, 2), (3, 4), (0, 1)]));
    }

    #[test]
    fn segre_on_basis_points() {
        // [1:0] × [1:0] ↦ [1:0:0:0].
        let e = segre(&pt(&[(1, 1), (0, 1)]), &pt(&[(1, 1), (0, 1)]));
        assert_eq!(e, pt(&[(1, 1), (0, 1), (0, 1), (0, 1)]));
        assert_eq!(e.dimension(), 3);
    }

    #[test]
    fn segre_row_major_products() {
        let p = pt(&[(2, 1), (3, 1)]);
        let q = pt(&[(5, 1), (7, 1)]);
        let s = segre(&p, &q);
        // [p0q0 : p0q1 : p1q0 : p1q1]
        assert_eq!(
            s.coords(),
            &[ratio(10, 1), ratio(14, 1), ratio(15, 1), ratio(21, 1)]
        );
    }

    #[test]
    fn segre_respects_rescaling() {
        let p = pt(&[(1, 3), (2, 1)]);
        let q = pt(&[(4, 1), (5, 2)]);
        let lhs = segre(&p, &q);
        let rhs = segre(
            &p.scaled(&ratio(7, 5)).unwrap(),
            &q.scaled(&ratio(-3, 11)).unwrap(),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn segre_associates_coordinatewise() {
        // (P⊗Q)⊗R and P⊗(Q⊗R) agree coordinate-for-coordinate in ℙ⁷.
        let p = pt(&[(1, 2), (3, 1)]);
        let q = pt(&[(-2, 1), (5, 3)]);
        let r = pt(&[(7, 4), (1, 1)]);
        let lhs = segre(&segre(&p, &q), &r);
        let rhs = segre(&p, &segre(&q, &r));
        assert_eq!(lhs.coords(), rhs.coords());
        assert_eq!(lhs.dimension(), 7);
    }
}
