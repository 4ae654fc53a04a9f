//! Points, hyperplanes and vertical lines over an exact field, the
//! point/hyperplane duality, and the convexity predicates built on it.
//!
//! The last coordinate `x_d` is vertical throughout. A non-vertical hyperplane
//! is stored as `x_d = (Σ_{i<d} α_i x_i) - α_0`; its dual point is
//! `(α_1, …, α_{d-1}, α_0)`. Under this map parallel hyperplanes become
//! vertically aligned points, and the height of a hyperplane above a base point
//! `ℓ` is the dot product of its dual with `(ℓ, -1)`.

use crate::linalg::{kernel_basis, rref};
use crate::lpsolve::{solve_feasibility, FeasibilityResult, LinearSystem};
use crate::scalar::{dot, ExactField};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point<F> {
    pub coords: Vec<F>,
}

/// A nonzero direction vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Direction<F> {
    coords: Vec<F>,
}

/// Non-vertical hyperplane `x_d = (Σ alpha_i x_i) - alpha0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane<F> {
    pub alpha: Vec<F>,
    pub alpha0: F,
}

/// Vertical line through `(base, 0)`, parallel to the `x_d` axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VerticalLine<F> {
    pub base: Vec<F>,
}

/// Arbitrary affine hyperplane `normal·x = offset` (may be vertical).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineHyperplane<F> {
    pub normal: Vec<F>,
    pub offset: F,
}

impl<F: ExactField> Point<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn sub(&self, other: &Point<F>) -> Vec<F> {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.clone() - b.clone())
            .collect()
    }
}

impl<F: ExactField> Direction<F> {
    pub fn new(coords: Vec<F>) -> Result<Self, Error> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroDirection);
        }
        Ok(Direction { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, Error> {
        Direction::new(coords.iter().map(|&c| F::from_int(c)).collect())
    }

    /// The `i`-th standard basis vector of `R^d`.
    pub fn unit(d: usize, i: usize) -> Self {
        let mut coords = vec![F::zero(); d];
        coords[i] = F::one();
        Direction { coords }
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn last(&self) -> &F {
        self.coords.last().expect("directions have at least one coordinate")
    }
}

impl<F: ExactField> Hyperplane<F> {
    pub fn new(alpha: Vec<F>, alpha0: F) -> Self {
        Hyperplane { alpha, alpha0 }
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.alpha.len() + 1
    }
}

impl<F: ExactField> VerticalLine<F> {
    pub fn new(base: Vec<F>) -> Self {
        VerticalLine { base }
    }
}

impl<F: ExactField> AffineHyperplane<F> {
    pub fn new(normal: Vec<F>, offset: F) -> Self {
        AffineHyperplane { normal, offset }
    }

    /// `normal·p - offset`; its sign tells which side `p` lies on.
    pub fn side(&self, p: &[F]) -> F {
        dot(&self.normal, p) - self.offset.clone()
    }
}

pub fn dual_of_hyperplane<F: ExactField>(h: &Hyperplane<F>) -> Point<F> {
    let mut coords = h.alpha.clone();
    coords.push(h.alpha0.clone());
    Point::new(coords)
}

/// Inverse of [`dual_of_hyperplane`].
pub fn dual_of_point<F: ExactField>(p: &Point<F>) -> Hyperplane<F> {
    let (last, rest) = p.coords.split_last().expect("points have at least one coordinate");
    Hyperplane::new(rest.to_vec(), last.clone())
}

/// Height of `h` above the base point `base` of a vertical line.
pub fn height_at<F: ExactField>(h: &Hyperplane<F>, base: &[F]) -> F {
    debug_assert_eq!(h.alpha.len(), base.len());
    dot(&h.alpha, base) - h.alpha0.clone()
}

/// Closed convex hull membership, decided by exact LP feasibility of
/// `Σλ_i q_i = p, Σλ_i = 1, λ >= 0`.
pub fn in_convex_hull<F: ExactField>(p: &Point<F>, pts: &[Point<F>]) -> bool {
    if pts.is_empty() {
        return false;
    }
    let n = pts.len();
    let mut sys = LinearSystem::new(n);
    for c in 0..p.dim() {
        sys.add_eq(pts.iter().map(|q| q.coords[c].clone()).collect(), p.coords[c].clone());
    }
    sys.add_eq(vec![F::one(); n], F::one());
    for i in 0..n {
        let mut row = vec![F::zero(); n];
        row[i] = F::one();
        sys.add_ge(row, F::zero());
    }
    solve_feasibility(&sys).is_feasible()
}

/// Index sets `(A, B)` (zero-based) of a Radon partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadonPartition {
    pub positive: Vec<usize>,
    pub rest: Vec<usize>,
}

/// Radon partition of at least `m + 2` points in `R^m`.
///
/// Takes the affine dependence `Σλ_i q_i = 0, Σλ_i = 0` belonging to the first
/// free column of the dependence matrix, signed so its first nonzero entry is
/// positive. `A = {λ_i > 0}`; indices with `λ_i <= 0` form `B`.
pub fn radon_partition<F: ExactField>(pts: &[Point<F>]) -> Result<RadonPartition, Error> {
    let m = pts.first().map_or(0, |p| p.dim());
    if pts.len() < m + 2 {
        return Err(Error::InsufficientRadonPoints { have: pts.len(), need: m + 2 });
    }
    let n = pts.len();
    let mut matrix: Vec<Vec<F>> = (0..m)
        .map(|c| pts.iter().map(|q| q.coords[c].clone()).collect())
        .collect();
    matrix.push(vec![F::one(); n]);
    let mut lambda = kernel_basis(&matrix, n)
        .into_iter()
        .next()
        .expect("m + 2 points in R^m are affinely dependent");
    if lambda.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        for v in lambda.iter_mut() {
            *v = -v.clone();
        }
    }
    let (positive, rest) = (0..n).partition(|&i| lambda[i].is_positive());
    Ok(RadonPartition { positive, rest })
}

/// An affine coordinate frame of a hyperplane: `origin + Σ c_k basis_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenFrame<F> {
    pub origin: Vec<F>,
    pub basis: Vec<Vec<F>>,
    /// Coordinate `k` of a screen point is its entry at `free[k]`.
    free: Vec<usize>,
}

/// Canonical frame of `screen`: origin at the foot of the perpendicular from
/// the coordinate origin, basis from the reduced kernel of the normal.
pub fn screen_frame<F: ExactField>(screen: &AffineHyperplane<F>) -> Result<ScreenFrame<F>, Error> {
    let m = screen.normal.len();
    let norm2 = dot(&screen.normal, &screen.normal);
    if norm2.is_zero() {
        return Err(Error::DegenerateProjection("screen normal is zero".into()));
    }
    let t = screen.offset.clone() / norm2;
    let origin = screen.normal.iter().map(|c| c.clone() * t.clone()).collect();
    let mut rows = vec![screen.normal.clone()];
    let pivots = rref(&mut rows, m);
    let free = (0..m).filter(|c| !pivots.contains(c)).collect();
    let basis = kernel_basis(std::slice::from_ref(&screen.normal), m);
    Ok(ScreenFrame { origin, basis, free })
}

impl<F: ExactField> ScreenFrame<F> {
    /// Frame coordinates of a point lying on the screen.
    pub fn coordinates(&self, p: &[F]) -> Vec<F> {
        self.free
            .iter()
            .map(|&f| p[f].clone() - self.origin[f].clone())
            .collect()
    }

    pub fn embed(&self, c: &[F]) -> Vec<F> {
        let mut p = self.origin.clone();
        for (ck, b) in c.iter().zip(&self.basis) {
            for (pi, bi) in p.iter_mut().zip(b) {
                *pi = pi.clone() + ck.clone() * bi.clone();
            }
        }
        p
    }
}

/// Central projection from `center` onto `screen`, in the screen's canonical
/// frame. Every point must lie strictly on the other side of the screen from
/// the center.
pub fn central_project<F: ExactField>(
    pts: &[Point<F>],
    center: &Point<F>,
    screen: &AffineHyperplane<F>,
) -> Result<Vec<Point<F>>, Error> {
    let frame = screen_frame(screen)?;
    let center_side = screen.side(&center.coords);
    if center_side.is_zero() {
        return Err(Error::DegenerateProjection("center lies on the screen".into()));
    }
    pts.iter()
        .map(|p| {
            if p == center {
                return Err(Error::DegenerateProjection("point coincides with center".into()));
            }
            let ray = p.sub(center);
            let along = dot(&screen.normal, &ray);
            if along.is_zero() {
                return Err(Error::DegenerateProjection("ray parallel to screen".into()));
            }
            let side = screen.side(&p.coords);
            if side.is_zero() || side.is_positive() == center_side.is_positive() {
                return Err(Error::DegenerateProjection(
                    "point not strictly separated from center by screen".into(),
                ));
            }
            let t = -center_side.clone() / along;
            let hit: Vec<F> = center
                .coords
                .iter()
                .zip(&ray)
                .map(|(c, r)| c.clone() + t.clone() * r.clone())
                .collect();
            Ok(Point::new(frame.coordinates(&hit)))
        })
        .collect()
}

/// A hyperplane `u·x = t` with `u·q >= t + 1` for every `q` in `far` and
/// `u·p <= t - 1`, or `None` when `p` lies in the closed hull of `far`.
pub fn strictly_separating_hyperplane<F: ExactField>(
    p: &Point<F>,
    far: &[Point<F>],
) -> Option<AffineHyperplane<F>> {
    let m = p.dim();
    // Variables (u_1..u_m, t).
    let mut sys = LinearSystem::new(m + 1);
    for q in far {
        let mut row = q.coords.clone();
        row.push(-F::one());
        sys.add_ge(row, F::one());
    }
    let mut row: Vec<F> = p.coords.iter().map(|c| -c.clone()).collect();
    row.push(F::one());
    sys.add_ge(row, F::one());
    match solve_feasibility(&sys) {
        FeasibilityResult::Feasible(mut x) => {
            let t = x.pop().expect("offset variable");
            Some(AffineHyperplane::new(x, t))
        }
        FeasibilityResult::Infeasible(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_frac(n, d)
    }

    fn pt(c: &[i64]) -> Point<Scalar> {
        Point::from_ints(c)
    }

    #[test]
    fn duality_examples() {
        let h = Hyperplane::new(vec![q(3, 1)], q(5, 1));
        assert_eq!(dual_of_hyperplane(&h), pt(&[3, 5]));
        assert_eq!(dual_of_point(&pt(&[3, 5])), h);
        let z = Hyperplane::new(vec![q(0, 1); 2], q(0, 1));
        assert_eq!(dual_of_hyperplane(&z), pt(&[0, 0, 0]));
        assert_eq!(dual_of_point(&pt(&[0, 0, 0])), z);
        let f = Hyperplane::new(vec![q(1, 2)], q(-2, 3));
        assert_eq!(dual_of_hyperplane(&f).coords, vec![q(1, 2), q(-2, 3)]);
    }

    #[test]
    fn height_examples() {
        let h = Hyperplane::new(vec![q(1, 1), q(1, 1)], q(0, 1));
        assert_eq!(height_at(&h, &[q(2, 1), q(3, 1)]), q(5, 1));
        let g = Hyperplane::new(vec![q(3, 1)], q(5, 1));
        assert_eq!(height_at(&g, &[q(0, 1)]), q(-5, 1));
    }

    #[test]
    fn hull_examples() {
        let tri = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])];
        assert!(in_convex_hull(&Point::new(vec![q(1, 4), q(1, 4)]), &tri));
        assert!(!in_convex_hull(&pt(&[-1, -1]), &tri));
        assert!(in_convex_hull(&pt(&[1, 0]), &tri));
        let seg = vec![pt(&[0, 0]), pt(&[1, 1])];
        assert!(in_convex_hull(&Point::new(vec![q(1, 2), q(1, 2)]), &seg));
        assert!(!in_convex_hull(&pt(&[0, 0]), &[]));
    }

    #[test]
    fn radon_examples() {
        let square = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])];
        let r = radon_partition(&square).unwrap();
        assert_eq!((r.positive, r.rest), (vec![0, 3], vec![1, 2]));

        let line = vec![pt(&[0]), pt(&[1]), pt(&[2])];
        let r = radon_partition(&line).unwrap();
        assert_eq!((r.positive, r.rest), (vec![0, 2], vec![1]));

        // (1,0) is the midpoint of (0,0),(2,0); (0,1) has a zero coefficient.
        let flat = vec![pt(&[0, 0]), pt(&[2, 0]), pt(&[1, 0]), pt(&[0, 1])];
        let r = radon_partition(&flat).unwrap();
        assert_eq!((r.positive, r.rest), (vec![0, 1], vec![2, 3]));
    }

    #[test]
    fn radon_needs_enough_points() {
        let err = radon_partition(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap_err();
        assert!(matches!(err, Error::InsufficientRadonPoints { have: 3, need: 4 }));
    }

    #[test]
    fn projection_examples() {
        let screen = AffineHyperplane::new(vec![q(1, 1), q(0, 1)], q(1, 1));
        let frame = screen_frame(&screen).unwrap();
        assert_eq!(frame.origin, vec![q(1, 1), q(0, 1)]);
        assert_eq!(frame.basis, vec![vec![q(0, 1), q(1, 1)]]);

        let center = pt(&[0, 0]);
        let imgs = central_project(&[pt(&[2, 0]), pt(&[2, 2])], &center, &screen).unwrap();
        assert_eq!(imgs, vec![pt(&[0]), pt(&[1])]);
        let imgs = central_project(&[pt(&[3, 0])], &center, &screen).unwrap();
        assert_eq!(imgs, vec![pt(&[0])]);
    }

    #[test]
    fn projection_degeneracies() {
        let screen = AffineHyperplane::new(vec![q(1, 1), q(0, 1)], q(1, 1));
        let center = pt(&[0, 0]);
        for bad in [pt(&[0, 0]), pt(&[0, 5]), pt(&[1, 3]), pt(&[-2, 0])] {
            let err = central_project(&[bad], &center, &screen).unwrap_err();
            assert!(matches!(err, Error::DegenerateProjection(_)));
        }
        let on = pt(&[1, 0]);
        assert!(central_project(&[pt(&[2, 0])], &on, &screen).is_err());
    }

    #[test]
    fn separating_hyperplane() {
        let tri = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])];
        let h = strictly_separating_hyperplane(&pt(&[2, 2]), &tri).unwrap();
        assert!(h.side(&[q(2, 1), q(2, 1)]) <= q(-1, 1));
        for v in &tri {
            assert!(h.side(&v.coords) >= q(1, 1));
        }
        assert!(strictly_separating_hyperplane(&Point::new(vec![q(1, 3), q(1, 3)]), &tri).is_none());
    }
}
