//! Finite probability simplices and the distribution monad.
//!
//! A [`FinDist`] is a finitely supported distribution with exact
//! nonnegative rational weights summing to one. The monad structure is
//! given by [`FinDist::unit`] (point mass), [`FinDist::pushforward`]
//! (functor action) and [`flatten`] (mixture multiplication), and
//! [`check_algebra`] verifies the two Eilenberg–Moore diagrams for a
//! candidate structure map over a rational weight grid.

mod hypercube;
mod projective;

pub use hypercube::{hypercube_diagram, HypercubeDiagram, VertexLabel};
pub use projective::{segre, ProjPoint};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::fmt;

use crate::{format_ratio, parse_ratio};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplexError {
    /// An outcome lies outside the declared support.
    UnknownOutcome(String),
    /// Weights are negative, of the wrong arity, or do not sum to one.
    InvalidWeights(String),
    /// Support labels repeat.
    DuplicateOutcome(String),
    /// A map is undefined on a support element.
    PartialMap(String),
    /// Inner distributions of a flatten do not share one outcome set.
    MismatchedSupports,
    /// A size bound was exceeded.
    Size(String),
    /// Malformed serialized input.
    Format(String),
}

impl fmt::Display for SimplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplexError::UnknownOutcome(s) => write!(f, "outcome not in support: {s}"),
            SimplexError::InvalidWeights(s) => write!(f, "invalid weights: {s}"),
            SimplexError::DuplicateOutcome(s) => write!(f, "duplicate outcome: {s}"),
            SimplexError::PartialMap(s) => write!(f, "map undefined on support element: {s}"),
            SimplexError::MismatchedSupports => write!(f, "inner distributions have mismatched supports"),
            SimplexError::Size(s) => write!(f, "size bound exceeded: {s}"),
            SimplexError::Format(s) => write!(f, "malformed input: {s}"),
        }
    }
}

impl std::error::Error for SimplexError {}

/// A finitely supported probability distribution with exact rational
/// weights. The support order is part of the value; zero weights are kept.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinDist<T> {
    support: Vec<T>,
    weights: Vec<BigRational>,
}

impl<T: Clone + Eq + fmt::Debug> FinDist<T> {
    /// Builds a distribution, checking the simplex invariants exactly.
    pub fn new(support: Vec<T>, weights: Vec<BigRational>) -> Result<Self, SimplexError> {
        if support.len() != weights.len() {
            return Err(SimplexError::InvalidWeights(format!(
                "{} outcomes vs {} weights",
                support.len(),
                weights.len()
            )));
        }
        if support.is_empty() {
            return Err(SimplexError::InvalidWeights("empty support".into()));
        }
        for (i, x) in support.iter().enumerate() {
            if support[..i].contains(x) {
                return Err(SimplexError::DuplicateOutcome(format!("{x:?}")));
            }
        }
        let mut total = BigRational::zero();
        for w in &weights {
            if w < &BigRational::zero() {
                return Err(SimplexError::InvalidWeights(format!("negative weight {w}")));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(SimplexError::InvalidWeights(format!("weights sum to {total}, not 1")));
        }
        Ok(FinDist { support, weights })
    }

    /// The point mass δ_x over the outcome set `domain`.
    pub fn unit(x: &T, domain: &[T]) -> Result<Self, SimplexError> {
        if !domain.contains(x) {
            return Err(SimplexError::UnknownOutcome(format!("{x:?}")));
        }
        let weights = domain
            .iter()
            .map(|y| if y == x { BigRational::one() } else { BigRational::zero() })
            .collect();
        FinDist::new(domain.to_vec(), weights)
    }

    pub fn support(&self) -> &[T] {
        &self.support
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    /// Weight of an outcome; zero off the support.
    pub fn weight_of(&self, x: &T) -> BigRational {
        match self.support.iter().position(|y| y == x) {
            Some(i) => self.weights[i].clone(),
            None => BigRational::zero(),
        }
    }

    /// True when the distribution is a point mass at `x`.
    pub fn is_point_mass_at(&self, x: &T) -> bool {
        self.support
            .iter()
            .zip(&self.weights)
            .all(|(y, w)| if y == x { w.is_one() } else { w.is_zero() })
    }

    /// Functor action: pushes the distribution forward along `f`.
    ///
    /// The result's support lists the images in first-occurrence order;
    /// weights of merged fibers add exactly.
    pub fn pushforward<U, F>(&self, f: F) -> Result<FinDist<U>, SimplexError>
    where
        U: Clone + Eq + fmt::Debug,
        F: Fn(&T) -> Option<U>,
    {
        let mut support: Vec<U> = Vec::new();
        let mut weights: Vec<BigRational> = Vec::new();
        for (x, w) in self.support.iter().zip(&self.weights) {
            let y = f(x).ok_or_else(|| SimplexError::PartialMap(format!("{x:?}")))?;
            match support.iter().position(|z| z == &y) {
                Some(i) => weights[i] += w,
                None => {
                    support.push(y);
                    weights.push(w.clone());
                }
            }
        }
        FinDist::new(support, weights)
    }
}

impl FinDist<String> {
    /// Serializes as `{"support":[...],"weights":["1/2",...]}` with
    /// rationals in `num/den` form.
    pub fn to_json(&self) -> String {
        let support: Vec<serde_json::Value> = self
            .support
            .iter()
            .map(|s| serde_json::Value::String(s.clone()))
            .collect();
        let weights: Vec<serde_json::Value> = self
            .weights
            .iter()
            .map(|w| serde_json::Value::String(format_ratio(w)))
            .collect();
        let mut map = serde_json::Map::new();
        map.insert("support".into(), serde_json::Value::Array(support));
        map.insert("weights".into(), serde_json::Value::Array(weights));
        serde_json::Value::Object(map).to_string()
    }

    pub fn from_json(text: &str) -> Result<Self, SimplexError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| SimplexError::Format(e.to_string()))?;
        let support = v["support"]
            .as_array()
            .ok_or_else(|| SimplexError::Format("missing support array".into()))?
            .iter()
            .map(|s| {
                s.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| SimplexError::Format("support entries must be strings".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let weights = v["weights"]
            .as_array()
            .ok_or_else(|| SimplexError::Format("missing weights array".into()))?
            .iter()
            .map(|w| {
                w.as_str()
                    .and_then(parse_ratio)
                    .ok_or_else(|| SimplexError::Format(format!("bad weight {w}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        FinDist::new(support, weights)
    }
}

/// Monad multiplication: collapses a distribution of distributions into a
/// mixture. All inner supports must agree (same outcomes, same order).
pub fn flatten<T>(dd: &FinDist<FinDist<T>>) -> Result<FinDist<T>, SimplexError>
where
    T: Clone + Eq + fmt::Debug,
{
    let first = &dd.support()[0];
    for d in dd.support() {
        if d.support() != first.support() {
            return Err(SimplexError::MismatchedSupports);
        }
    }
    let mut weights = vec![BigRational::zero(); first.support().len()];
    for (inner, outer_w) in dd.support().iter().zip(dd.weights()) {
        for (i, w) in inner.weights().iter().enumerate() {
            weights[i] += outer_w * w;
        }
    }
    FinDist::new(first.support().to_vec(), weights)
}

/// Tensor product of distributions: support is the row-major cartesian
/// product (left index outer), weight of `(x, y)` is the exact product.
pub fn tensor<S, T>(p: &FinDist<S>, q: &FinDist<T>) -> FinDist<(S, T)>
where
    S: Clone + Eq + fmt::Debug,
    T: Clone + Eq + fmt::Debug,
{
    let mut support = Vec::with_capacity(p.support().len() * q.support().len());
    let mut weights = Vec::with_capacity(support.capacity());
    for (x, wx) in p.support().iter().zip(p.weights()) {
        for (y, wy) in q.support().iter().zip(q.weights()) {
            support.push((x.clone(), y.clone()));
            weights.push(wx * wy);
        }
    }
    FinDist { support, weights }
}

/// A candidate algebra for the distribution monad: a probe carrier plus a
/// structure map γ from distributions over carrier points to points.
///
/// The structure map may produce points outside the probe carrier (the
/// barycenter of grid points usually does); both Eilenberg–Moore squares
/// are still compared exactly.
pub struct AlgebraCarrier<'a, T> {
    pub carrier: Vec<T>,
    pub structure_map: Box<dyn Fn(&FinDist<T>) -> T + 'a>,
}

/// One counterexample to an algebra law, with both evaluations.
#[derive(Debug, Clone)]
pub struct LawViolation<T> {
    pub law: &'static str,
    pub witness: String,
    pub lhs: T,
    pub rhs: T,
}

/// Report from [`check_algebra`]: any violations of γ∘η = id and
/// γ∘μ = γ∘Δγ found on the probe grid.
#[derive(Debug, Clone)]
pub struct AlgebraReport<T> {
    pub cases_checked: usize,
    pub violations: Vec<LawViolation<T>>,
}

impl<T> AlgebraReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The fixed rational weight grid {0, 1/4, 1/2, 3/4, 1} used for
/// exhaustive desk-scale checking.
pub fn weight_grid() -> Vec<BigRational> {
    (0..=4).map(|k| BigRational::new(k.into(), 4.into())).collect()
}

/// All weight vectors of length `k` with entries in the grid summing to 1.
fn grid_distributions(k: usize) -> Vec<Vec<BigRational>> {
    // Compositions of 4 into k parts, each part 0..=4, scaled by 1/4.
    fn go(k: usize, left: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<BigRational>>) {
        if k == 1 {
            acc.push(left);
            out.push(acc.iter().map(|&a| BigRational::new(a.into(), 4.into())).collect());
            acc.pop();
            return;
        }
        for a in 0..=left {
            acc.push(a);
            go(k - 1, left - a, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(k, 4, &mut Vec::new(), &mut out);
    out
}

/// Verifies both Eilenberg–Moore diagrams for `algebra`.
///
/// Carriers with at most 4 probe points are checked exhaustively over the
/// 5-point weight grid; larger carriers fall back to `sample_depth`
/// fixed-seed random cases. Failures are reported, never raised.
pub fn check_algebra<T>(algebra: &AlgebraCarrier<'_, T>, sample_depth: usize) -> AlgebraReport<T>
where
    T: Clone + Eq + fmt::Debug,
{
    assert!(sample_depth >= 1, "sample_depth must be at least 1");
    let gamma = &algebra.structure_map;
    let carrier = &algebra.carrier;
    let mut violations = Vec::new();
    let mut cases = 0usize;

    // First law: γ(δ_x) = x for every probe point.
    for x in carrier {
        cases += 1;
        let got = gamma(&FinDist::unit(x, carrier).expect("probe point in carrier"));
        if &got != x {
            violations.push(LawViolation {
                law: "unit",
                witness: format!("{x:?}"),
                lhs: got,
                rhs: x.clone(),
            });
        }
    }

    // Second law: γ(μ(dd)) = γ(Δγ(dd)) over distributions of distributions.
    let inner: Vec<FinDist<T>> = if carrier.len() <= 4 {
        grid_distributions(carrier.len())
            .into_iter()
            .map(|w| FinDist::new(carrier.clone(), w).expect("grid weights sum to 1"))
            .collect()
    } else {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        (0..sample_depth)
            .map(|_| random_dist(&mut rng, carrier))
            .collect()
    };
    let outers: Vec<FinDist<FinDist<T>>> = if carrier.len() <= 4 {
        grid_distributions(inner.len())
            .into_iter()
            .map(|w| FinDist::new(inner.clone(), w).expect("grid weights sum to 1"))
            .collect()
    } else {
        let mut rng = StdRng::seed_from_u64(0xcafe);
        (0..sample_depth).map(|_| random_dist(&mut rng, &inner)).collect()
    };

    for dd in &outers {
        cases += 1;
        let lhs = gamma(&flatten(dd).expect("inner supports agree"));
        let pushed = dd.pushforward(|d| Some(gamma(d))).expect("total map");
        let rhs = gamma(&pushed);
        if lhs != rhs {
            violations.push(LawViolation {
                law: "multiplication",
                witness: format!("{:?}", dd.weights()),
                lhs,
                rhs,
            });
        }
    }

    AlgebraReport { cases_checked: cases, violations }
}

fn random_dist<T: Clone + Eq + fmt::Debug>(rng: &mut StdRng, support: &[T]) -> FinDist<T> {
    // Random grid-ish weights with denominator 16, exact by construction.
    let n = support.len();
    let mut parts = vec![0i64; n];
    for _ in 0..16 {
        parts[rng.gen_range(0..n)] += 1;
    }
    let weights = parts
        .into_iter()
        .map(|p| BigRational::new(p.into(), 16.into()))
        .collect();
    FinDist::new(support.to_vec(), weights).expect("random weights sum to 1")
}

/// The barycenter structure map on rational points of the unit interval:
/// the canonical algebra of the distribution monad.
pub fn barycenter(d: &FinDist<BigRational>) -> BigRational {
    d.support()
        .iter()
        .zip(d.weights())
        .map(|(x, w)| x * w)
        .fold(BigRational::zero(), |a, b| a + b)
}

/// The argmax pseudo-structure-map with lexicographic tie breaking. Not an
/// algebra: it satisfies the unit law but breaks the multiplication law.
pub fn argmax_lex<T: Clone + Ord + Eq + fmt::Debug>(d: &FinDist<T>) -> T {
    let mut best = 0usize;
    for i in 1..d.support().len() {
        let (x, w) = (&d.support()[i], &d.weights()[i]);
        let (bx, bw) = (&d.support()[best], &d.weights()[best]);
        if w > bw || (w == bw && x < bx) {
            best = i;
        }
    }
    d.support()[best].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn dist(labels: &[&str], ws: &[(i64, i64)]) -> FinDist<String> {
        FinDist::new(
            labels.iter().map(|s| s.to_string()).collect(),
            ws.iter().map(|&(n, d)| ratio(n, d)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn unit_is_point_mass() {
        let domain: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let d = FinDist::unit(&"a".to_string(), &domain).unwrap();
        assert_eq!(d.weights(), &[ratio(1, 1), ratio(0, 1)]);

        let domain3: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let d = FinDist::unit(&"b".to_string(), &domain3).unwrap();
        assert_eq!(d.weights(), &[ratio(0, 1), ratio(1, 1), ratio(0, 1)]);

        assert!(matches!(
            FinDist::unit(&"z".to_string(), &domain),
            Err(SimplexError::UnknownOutcome(_))
        ));
    }

    #[test]
    fn invariants_are_enforced() {
        let labels: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        assert!(matches!(
            FinDist::new(labels.clone(), vec![ratio(1, 2), ratio(1, 4)]),
            Err(SimplexError::InvalidWeights(_))
        ));
        assert!(matches!(
            FinDist::new(labels.clone(), vec![ratio(3, 2), ratio(-1, 2)]),
            Err(SimplexError::InvalidWeights(_))
        ));
        assert!(matches!(
            FinDist::new(
                vec!["a".to_string(), "a".to_string()],
                vec![ratio(1, 2), ratio(1, 2)]
            ),
            Err(SimplexError::DuplicateOutcome(_))
        ));
    }

    #[test]
    fn pushforward_sums_preimages() {
        // a,b ↦ u; c ↦ v on ⟨1/2,1/4,1/4⟩ gives ⟨3/4,1/4⟩.
        let d = dist(&["a", "b", "c"], &[(1, 2), (1, 4), (1, 4)]);
        let pushed = d
            .pushforward(|x| Some(if x == "c" { "v" } else { "u" }.to_string()))
            .unwrap();
        assert_eq!(pushed.support(), &["u".to_string(), "v".to_string()]);
        assert_eq!(pushed.weights(), &[ratio(3, 4), ratio(1, 4)]);

        // Identity law.
        let same = d.pushforward(|x| Some(x.clone())).unwrap();
        assert_eq!(same, d);

        // Constant map collapses to a point mass.
        let half = dist(&["a", "b"], &[(1, 2), (1, 2)]);
        let collapsed = half.pushforward(|_| Some("y0".to_string())).unwrap();
        assert!(collapsed.is_point_mass_at(&"y0".to_string()));

        // Partial map errors.
        assert!(matches!(
            d.pushforward(|x| if x == "a" { None } else { Some(x.clone()) }),
            Err(SimplexError::PartialMap(_))
        ));
    }

    #[test]
    fn flatten_mixes_exactly() {
        // ⟨1/3 on ⟨1/2,1/2⟩, 2/3 on ⟨1/4,3/4⟩⟩ flattens to ⟨1/3,2/3⟩.
        let d1 = dist(&["x", "y"], &[(1, 2), (1, 2)]);
        let d2 = dist(&["x", "y"], &[(1, 4), (3, 4)]);
        let dd = FinDist::new(vec![d1.clone(), d2], vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let flat = flatten(&dd).unwrap();
        assert_eq!(flat.weights(), &[ratio(1, 3), ratio(2, 3)]);

        // δ_d flattens to d.
        let point = FinDist::unit(&d1, &[d1.clone()]).unwrap();
        assert_eq!(flatten(&point).unwrap(), d1);

        // Mixture of point masses.
        let pa = dist(&["x", "y"], &[(1, 1), (0, 1)]);
        let pb = dist(&["x", "y"], &[(0, 1), (1, 1)]);
        let dd = FinDist::new(vec![pa, pb], vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(flatten(&dd).unwrap().weights(), &[ratio(1, 2), ratio(1, 2)]);

        // Mismatched inner supports error.
        let odd = dist(&["x", "z"], &[(1, 2), (1, 2)]);
        let bad = FinDist::new(
            vec![d1, odd],
            vec![ratio(1, 2), ratio(1, 2)],
        )
        .unwrap();
        assert!(matches!(flatten(&bad), Err(SimplexError::MismatchedSupports)));
    }

    #[test]
    fn monad_laws_on_grid() {
        // flatten(δ at Δ level) = id, flatten(Δ of unit) = id, and
        // associativity flatten∘Δflatten = flatten∘flatten over grid dists.
        let labels: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let dists: Vec<FinDist<String>> = grid_distributions(3)
            .into_iter()
            .map(|w| FinDist::new(labels.clone(), w).unwrap())
            .collect();
        for d in &dists {
            let delta = FinDist::unit(d, std::slice::from_ref(d)).unwrap();
            assert_eq!(flatten(&delta).unwrap(), *d);
            let units = d
                .pushforward(|x| Some(FinDist::unit(x, &labels).unwrap()))
                .unwrap();
            assert_eq!(flatten(&units).unwrap(), *d);
        }
        // Associativity over a few triple-layer mixtures.
        let dd1 = FinDist::new(
            vec![dists[0].clone(), dists[5].clone()],
            vec![ratio(1, 4), ratio(3, 4)],
        )
        .unwrap();
        let dd2 = FinDist::new(
            vec![dists[2].clone(), dists[7].clone()],
            vec![ratio(1, 2), ratio(1, 2)],
        )
        .unwrap();
        let ddd = FinDist::new(vec![dd1, dd2], vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let lhs = flatten(&ddd.pushforward(|dd| Some(flatten(dd).unwrap())).unwrap()).unwrap();
        let rhs = flatten(&flatten(&ddd).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_is_row_major_and_normalized() {
        let p = dist(&["p1", "p2"], &[(1, 2), (1, 2)]);
        let q = dist(&["q1", "q2"], &[(1, 3), (2, 3)]);
        let t = tensor(&p, &q);
        assert_eq!(
            t.weights(),
            &[ratio(1, 6), ratio(1, 3), ratio(1, 6), ratio(1, 3)]
        );
        assert_eq!(
            t.support()[1],
            ("p1".to_string(), "q2".to_string()),
            "row-major: left index outer"
        );
        let total: BigRational = t.weights().iter().cloned().sum();
        assert!(total.is_one());

        // Point masses multiply.
        let da = dist(&["a", "b"], &[(1, 1), (0, 1)]);
        let db = dist(&["c", "d"], &[(0, 1), (1, 1)]);
        let t = tensor(&da, &db);
        assert!(t.is_point_mass_at(&("a".to_string(), "d".to_string())));
    }

    #[test]
    fn barycenter_is_an_algebra() {
        let carrier = weight_grid();
        let algebra = AlgebraCarrier {
            carrier,
            structure_map: Box::new(barycenter),
        };
        let report = check_algebra(&algebra, 1);
        assert!(report.passed(), "violations: {:?}", report.violations);
    }

    #[test]
    fn argmax_fails_multiplication_law() {
        let algebra = AlgebraCarrier {
            carrier: vec!["a".to_string(), "b".to_string()],
            structure_map: Box::new(argmax_lex),
        };
        let report = check_algebra(&algebra, 1);
        assert!(!report.passed());
        assert!(report.violations.iter().all(|v| v.law == "multiplication"));
    }

    #[test]
    fn broken_unit_law_is_witnessed() {
        let algebra = AlgebraCarrier {
            carrier: vec!["a".to_string(), "b".to_string()],
            structure_map: Box::new(|_d| "a".to_string()),
        };
        let report = check_algebra(&algebra, 1);
        assert!(report.violations.iter().any(|v| v.law == "unit" && v.rhs == "b"));
    }

    #[test]
    fn json_round_trip() {
        let d = dist(&["a", "b"], &[(1, 2), (1, 2)]);
        let text = d.to_json();
        assert_eq!(text, r#"{"support":["a","b"],"weights":["1/2","1/2"]}"#);
        assert_eq!(FinDist::from_json(&text).unwrap(), d);
        assert!(FinDist::from_json(r#"{"support":["a"],"weights":["2"]}"#).is_err());
        assert!(FinDist::from_json("not json").is_err());
    }
}
