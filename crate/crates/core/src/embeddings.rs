//! Monotone (primal) and parallel (dual) simultaneous embeddings.
//!
//! A [`MonotoneEmbedding`] is valid for an instance when every oriented path
//! edge `(u, w)` of permutation `j` satisfies `(p_w - p_u)·v_j > 0`. A
//! [`ParallelEmbedding`] is valid when vertical line `j` meets the hyperplanes
//! bottom to top in the order of permutation `j`.
//!
//! [`dual_to_primal`] and [`primal_to_dual`] move between the two through the
//! point/hyperplane duality of [`crate::exactgeom`]. The primal-to-dual
//! direction only preserves each path up to reversal; the reversal flags are
//! returned alongside the dual object.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactgeom::{dual_of_hyperplane, dual_of_point, height_at, Direction, Hyperplane, Point, VerticalLine};
use crate::instances::{Instance, Label, Permutation};
use crate::linalg::solve_square;
use crate::scalar::{dot, parse_scalar, ExactField};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneEmbedding<F> {
    pub dimension: usize,
    pub points: BTreeMap<Label, Point<F>>,
    pub directions: Vec<Direction<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelEmbedding<F> {
    pub dimension: usize,
    pub hyperplanes: BTreeMap<Label, Hyperplane<F>>,
    pub lines: Vec<VerticalLine<F>>,
}

/// Outcome of a verifier: either verified, or the first violated condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Failed(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<(), Error> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn check_k(expected: usize, found: usize) -> Result<(), Error> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Malformed(format!("{found} directions or lines for {expected} permutations")))
    }
}

impl<F: ExactField> MonotoneEmbedding<F> {
    pub fn point(&self, label: Label) -> Result<&Point<F>, Error> {
        self.points.get(&label).ok_or(Error::UnknownLabel(label))
    }

    fn check_shape(&self) -> Result<(), Error> {
        for p in self.points.values() {
            check_dim(self.dimension, p.dim())?;
        }
        for v in &self.directions {
            check_dim(self.dimension, v.dim())?;
        }
        Ok(())
    }
}

impl<F: ExactField> ParallelEmbedding<F> {
    fn check_shape(&self) -> Result<(), Error> {
        for h in self.hyperplanes.values() {
            check_dim(self.dimension, h.dim())?;
        }
        for l in &self.lines {
            check_dim(self.dimension - 1, l.base.len())?;
        }
        Ok(())
    }
}

pub fn verify_monotone<F: ExactField>(emb: &MonotoneEmbedding<F>, inst: &Instance) -> Result<Verdict, Error> {
    emb.check_shape()?;
    check_k(inst.k(), emb.directions.len())?;
    for (j, (perm, v)) in inst.permutations.iter().zip(&emb.directions).enumerate() {
        for (u, w) in perm.edges() {
            let step = emb.point(w)?.sub(emb.point(u)?);
            if !dot(&step, v.coords()).is_positive() {
                return Ok(Verdict::Failed(format!(
                    "permutation {}: edge ({u}, {w}) is not increasing along its direction",
                    j + 1
                )));
            }
        }
    }
    Ok(Verdict::Verified)
}

/// Labels sorted by ascending height along `line`.
pub fn induced_order<F: ExactField>(
    hyperplanes: &BTreeMap<Label, Hyperplane<F>>,
    line: &VerticalLine<F>,
) -> Result<Permutation, Error> {
    let mut heights: Vec<(F, Label)> = hyperplanes
        .iter()
        .map(|(&l, h)| (height_at(h, &line.base), l))
        .collect();
    heights.sort();
    if let Some(w) = heights.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::CoincidentIntersection(w[0].1, w[1].1));
    }
    Permutation::new(heights.into_iter().map(|(_, l)| l).collect())
}

pub fn verify_parallel<F: ExactField>(emb: &ParallelEmbedding<F>, inst: &Instance) -> Result<Verdict, Error> {
    emb.check_shape()?;
    check_k(inst.k(), emb.lines.len())?;
    for (j, (perm, line)) in inst.permutations.iter().zip(&emb.lines).enumerate() {
        let order = match induced_order(&emb.hyperplanes, line) {
            Ok(o) => o,
            Err(Error::CoincidentIntersection(a, b)) => {
                return Ok(Verdict::Failed(format!(
                    "line {}: hyperplanes {a} and {b} meet it at the same height",
                    j + 1
                )))
            }
            Err(e) => return Err(e),
        };
        if &order != perm {
            return Ok(Verdict::Failed(format!(
                "line {}: induced order {:?} differs from {:?}",
                j + 1,
                order.order(),
                perm.order()
            )));
        }
    }
    Ok(Verdict::Verified)
}

/// Dual points of the hyperplanes; direction `j` is `(ℓ_j, -1)`.
pub fn dual_to_primal<F: ExactField>(emb: &ParallelEmbedding<F>) -> MonotoneEmbedding<F> {
    let points = emb
        .hyperplanes
        .iter()
        .map(|(&l, h)| (l, dual_of_hyperplane(h)))
        .collect();
    let directions = emb
        .lines
        .iter()
        .map(|line| {
            let mut c = line.base.clone();
            c.push(-F::one());
            Direction::new(c).expect("last coordinate is -1")
        })
        .collect();
    MonotoneEmbedding { dimension: emb.dimension, points, directions }
}

/// Dual hyperplanes of the points, and the vertical line through the dual of
/// a hyperplane normal to each direction. `flags[j]` is set when line `j`
/// lists its permutation top to bottom, i.e. when `v_j` points upward.
pub fn primal_to_dual<F: ExactField>(emb: &MonotoneEmbedding<F>) -> Result<(ParallelEmbedding<F>, Vec<bool>), Error> {
    emb.check_shape()?;
    let hyperplanes = emb.points.iter().map(|(&l, p)| (l, dual_of_point(p))).collect();
    let mut lines = Vec::with_capacity(emb.directions.len());
    let mut flags = Vec::with_capacity(emb.directions.len());
    for (j, v) in emb.directions.iter().enumerate() {
        let (last, rest) = v.coords().split_last().expect("nonempty direction");
        if last.is_zero() {
            return Err(Error::VerticalDirection(j + 1));
        }
        lines.push(VerticalLine::new(rest.iter().map(|c| -c.clone() / last.clone()).collect()));
        flags.push(last.is_positive());
    }
    Ok((ParallelEmbedding { dimension: emb.dimension, hyperplanes, lines }, flags))
}

/// Makes every horizontal direction (zero last coordinate) point strictly
/// downward while keeping all monotonicity constraints strict.
///
/// A horizontal `v` becomes `v - δ e_d` where `δ` is half of
/// `min { (e·v) / e_d : e an edge of the path with e_d > 0 }` (or 1 when no
/// edge rises). Directions with a nonzero last coordinate are left alone.
pub fn tilt_directions<F: ExactField>(emb: &MonotoneEmbedding<F>, inst: &Instance) -> Result<MonotoneEmbedding<F>, Error> {
    if let Verdict::Failed(why) = verify_monotone(emb, inst)? {
        return Err(Error::Malformed(format!("tilt needs a monotone embedding: {why}")));
    }
    let two = F::from_int(2);
    let mut out = emb.clone();
    for (perm, v) in inst.permutations.iter().zip(out.directions.iter_mut()) {
        if !v.last().is_zero() {
            continue;
        }
        let mut bound: Option<F> = None;
        for (u, w) in perm.edges() {
            let e = emb.point(w)?.sub(emb.point(u)?);
            let rise = e.last().expect("nonempty").clone();
            if rise.is_positive() {
                let b = dot(&e, v.coords()) / rise;
                bound = Some(match bound {
                    Some(cur) if cur <= b => cur,
                    _ => b,
                });
            }
        }
        let delta = bound.map_or_else(F::one, |b| b / two.clone());
        let mut c = v.coords().to_vec();
        *c.last_mut().expect("nonempty") = -delta;
        *v = Direction::new(c)?;
    }
    Ok(out)
}

fn rank_maps(inst: &Instance) -> Result<Vec<std::collections::HashMap<Label, usize>>, Error> {
    inst.check_bijections()?;
    Ok(inst.permutations.iter().map(|p| p.positions()).collect())
}

/// Rank construction: label `v` goes to `(rank_1(v), …, rank_k(v), 0, …)`
/// with one-based ranks, and path `j` is monotone along `e_j`.
pub fn embed_rank<F: ExactField>(inst: &Instance, d: usize) -> Result<MonotoneEmbedding<F>, Error> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if inst.k() > d {
        return Err(Error::TooManyPermutations { k: inst.k(), d });
    }
    let ranks = rank_maps(inst)?;
    let points = inst
        .labels
        .iter()
        .map(|&l| {
            let mut c: Vec<F> = ranks.iter().map(|r| F::from_int(r[&l] as i64 + 1)).collect();
            c.resize(d, F::zero());
            (l, Point::new(c))
        })
        .collect();
    let directions = (0..inst.k()).map(|j| Direction::unit(d, j)).collect();
    Ok(MonotoneEmbedding { dimension: d, points, directions })
}

/// The canonical general-position bases in `R^{d-1}`: the origin followed by
/// the standard basis vectors.
pub fn canonical_bases<F: ExactField>(d: usize) -> Vec<Vec<F>> {
    let mut bases = vec![vec![F::zero(); d - 1]];
    for i in 0..d - 1 {
        let mut b = vec![F::zero(); d - 1];
        b[i] = F::one();
        bases.push(b);
    }
    bases
}

/// Dual rank construction: line `j` stands on canonical base `ℓ_j`, and the
/// hyperplane of label `v` passes through `(ℓ_j, rank_j(v))` for every `j`.
/// When `k < d` the unused bases take the heights of the first permutation.
pub fn embed_rank_dual<F: ExactField>(inst: &Instance, d: usize) -> Result<ParallelEmbedding<F>, Error> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if inst.k() > d {
        return Err(Error::TooManyPermutations { k: inst.k(), d });
    }
    let ranks = rank_maps(inst)?;
    let bases = canonical_bases::<F>(d);
    // Unknowns (α_1, …, α_{d-1}, α_0); the height at ℓ is ℓ·α - α_0.
    let system: Vec<Vec<F>> = bases
        .iter()
        .map(|b| {
            let mut row = b.clone();
            row.push(-F::one());
            row
        })
        .collect();
    let mut hyperplanes = BTreeMap::new();
    for &l in &inst.labels {
        let heights: Vec<F> = (0..d)
            .map(|j| F::from_int(ranks.get(j).unwrap_or(&ranks[0])[&l] as i64 + 1))
            .collect();
        let mut sol = solve_square(&system, &heights).expect("canonical bases are affinely independent");
        let alpha0 = sol.pop().expect("d unknowns");
        hyperplanes.insert(l, Hyperplane::new(sol, alpha0));
    }
    let lines = bases.into_iter().take(inst.k()).map(VerticalLine::new).collect();
    Ok(ParallelEmbedding { dimension: d, hyperplanes, lines })
}

// ---------------------------------------------------------------------------
// File formats

fn fmt_vec<F: ExactField>(v: &[F]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn parse_vec<F: ExactField>(v: &[String]) -> Result<Vec<F>, Error> {
    v.iter().map(|s| parse_scalar(s)).collect()
}

#[derive(Serialize, Deserialize)]
struct MonotoneDoc {
    dimension: usize,
    points: BTreeMap<Label, Vec<String>>,
    directions: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    permutations: Option<Vec<Permutation>>,
}

#[derive(Serialize, Deserialize)]
struct HyperplaneDoc {
    alpha: Vec<String>,
    alpha0: String,
}

#[derive(Serialize, Deserialize)]
struct ParallelDoc {
    dimension: usize,
    hyperplanes: BTreeMap<Label, HyperplaneDoc>,
    lines: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reversed: Option<Vec<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    permutations: Option<Vec<Permutation>>,
}

fn attached(labels: Option<Vec<Label>>, perms: Option<Vec<Permutation>>) -> Option<Instance> {
    perms.map(|p| match labels {
        Some(l) => Instance::new(l, p),
        None => Instance::from_perms(p),
    })
}

impl<F: ExactField> MonotoneEmbedding<F> {
    /// Serializes the embedding, optionally carrying the instance it embeds.
    pub fn to_json(&self, instance: Option<&Instance>) -> Result<String, Error> {
        let doc = MonotoneDoc {
            dimension: self.dimension,
            points: self.points.iter().map(|(&l, p)| (l, fmt_vec(&p.coords))).collect(),
            directions: self.directions.iter().map(|v| fmt_vec(v.coords())).collect(),
            labels: instance.map(|i| i.labels.clone()),
            permutations: instance.map(|i| i.permutations.clone()),
        };
        crate::json::to_layout(&doc)
    }

    pub fn from_json(text: &str) -> Result<(Self, Option<Instance>), Error> {
        let doc: MonotoneDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let points = doc
            .points
            .iter()
            .map(|(&l, c)| Ok((l, Point::new(parse_vec(c)?))))
            .collect::<Result<_, Error>>()?;
        let directions = doc
            .directions
            .iter()
            .map(|c| Direction::new(parse_vec(c)?))
            .collect::<Result<_, Error>>()?;
        let emb = MonotoneEmbedding { dimension: doc.dimension, points, directions };
        emb.check_shape()?;
        Ok((emb, attached(doc.labels, doc.permutations)))
    }
}

impl<F: ExactField> ParallelEmbedding<F> {
    /// Serializes the embedding with optional reversal flags and instance.
    pub fn to_json(&self, reversed: Option<&[bool]>, instance: Option<&Instance>) -> Result<String, Error> {
        let doc = ParallelDoc {
            dimension: self.dimension,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|(&l, h)| (l, HyperplaneDoc { alpha: fmt_vec(&h.alpha), alpha0: h.alpha0.to_string() }))
                .collect(),
            lines: self.lines.iter().map(|l| fmt_vec(&l.base)).collect(),
            reversed: reversed.map(<[bool]>::to_vec),
            labels: instance.map(|i| i.labels.clone()),
            permutations: instance.map(|i| i.permutations.clone()),
        };
        crate::json::to_layout(&doc)
    }

    #[allow(clippy::type_complexity)]
    pub fn from_json(text: &str) -> Result<(Self, Option<Vec<bool>>, Option<Instance>), Error> {
        let doc: ParallelDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let hyperplanes = doc
            .hyperplanes
            .iter()
            .map(|(&l, h)| Ok((l, Hyperplane::new(parse_vec(&h.alpha)?, parse_scalar(&h.alpha0)?))))
            .collect::<Result<_, Error>>()?;
        let lines = doc
            .lines
            .iter()
            .map(|b| Ok(VerticalLine::new(parse_vec(b)?)))
            .collect::<Result<_, Error>>()?;
        if doc.dimension < 2 {
            return Err(Error::DimensionTooSmall(doc.dimension));
        }
        let emb = ParallelEmbedding { dimension: doc.dimension, hyperplanes, lines };
        emb.check_shape()?;
        Ok((emb, doc.reversed, attached(doc.labels, doc.permutations)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn line_of_points() -> MonotoneEmbedding<Scalar> {
        MonotoneEmbedding {
            dimension: 2,
            points: [(1, Point::from_ints(&[0, 0])), (2, Point::from_ints(&[1, 0])), (3, Point::from_ints(&[2, 0]))]
                .into_iter()
                .collect(),
            directions: vec![Direction::from_ints(&[1, 0]).unwrap()],
        }
    }

    #[test]
    fn monotone_verification() {
        let emb = line_of_points();
        let fwd = Instance::from_perms(vec![Permutation::of(&[1, 2, 3])]);
        let back = Instance::from_perms(vec![Permutation::of(&[3, 2, 1])]);
        assert!(verify_monotone(&emb, &fwd).unwrap().is_verified());
        assert!(!verify_monotone(&emb, &back).unwrap().is_verified());

        let mut bad = emb.clone();
        bad.directions[0] = Direction::from_ints(&[1, 0, 0]).unwrap();
        assert!(matches!(verify_monotone(&bad, &fwd), Err(Error::DimensionMismatch { .. })));
    }

    fn crossing_pair() -> BTreeMap<Label, Hyperplane<Scalar>> {
        // H_0: x2 = x1, H_1: x2 = -x1 + 2
        [(0, Hyperplane::new(vec![q(1)], q(0))), (1, Hyperplane::new(vec![q(-1)], q(-2)))]
            .into_iter()
            .collect()
    }

    #[test]
    fn induced_orders_around_a_crossing() {
        let hs = crossing_pair();
        assert_eq!(induced_order(&hs, &VerticalLine::new(vec![q(0)])).unwrap(), Permutation::of(&[0, 1]));
        assert_eq!(induced_order(&hs, &VerticalLine::new(vec![q(2)])).unwrap(), Permutation::of(&[1, 0]));
        assert!(matches!(
            induced_order(&hs, &VerticalLine::new(vec![q(1)])),
            Err(Error::CoincidentIntersection(0, 1))
        ));
    }

    #[test]
    fn parallel_verification_reports_ties() {
        let emb = ParallelEmbedding { dimension: 2, hyperplanes: crossing_pair(), lines: vec![VerticalLine::new(vec![q(1)])] };
        let inst = Instance::from_perms(vec![Permutation::of(&[0, 1])]);
        assert!(matches!(verify_parallel(&emb, &inst).unwrap(), Verdict::Failed(_)));
    }

    #[test]
    fn single_line_with_rank_heights() {
        let inst = Instance::from_perms(vec![Permutation::of(&[2, 0, 1])]);
        let emb = embed_rank_dual::<Scalar>(&inst, 2).unwrap();
        assert_eq!(emb.lines.len(), 1);
        for h in emb.hyperplanes.values() {
            assert!(h.alpha.iter().all(|a| a == &q(0)), "horizontal");
        }
        assert_eq!(height_at(&emb.hyperplanes[&2], &[q(5)]), q(1));
        assert!(verify_parallel(&emb, &inst).unwrap().is_verified());
    }

    #[test]
    fn dual_to_primal_example() {
        // x2 = 3 x1 - 5
        let emb = ParallelEmbedding {
            dimension: 2,
            hyperplanes: [(7, Hyperplane::new(vec![q(3)], q(5)))].into_iter().collect(),
            lines: vec![VerticalLine::new(vec![q(0)])],
        };
        let m = dual_to_primal(&emb);
        assert_eq!(m.points[&7], Point::from_ints(&[3, 5]));
        assert_eq!(m.directions[0], Direction::from_ints(&[0, -1]).unwrap());
        let inst = Instance::from_perms(vec![Permutation::of(&[7])]);
        assert!(verify_monotone(&m, &inst).unwrap().is_verified());
    }

    #[test]
    fn reversal_flags_follow_direction_sign() {
        let pts: BTreeMap<Label, Point<Scalar>> =
            [(0, Point::from_ints(&[0, 0])), (1, Point::from_ints(&[1, 3]))].into_iter().collect();
        let down = MonotoneEmbedding { dimension: 2, points: pts.clone(), directions: vec![Direction::from_ints(&[0, -1]).unwrap()] };
        let up = MonotoneEmbedding { dimension: 2, points: pts, directions: vec![Direction::from_ints(&[0, 1]).unwrap()] };
        assert_eq!(primal_to_dual(&down).unwrap().1, vec![false]);
        assert_eq!(primal_to_dual(&up).unwrap().1, vec![true]);

        let flat = line_of_points();
        assert!(matches!(primal_to_dual(&flat), Err(Error::VerticalDirection(1))));
    }

    #[test]
    fn tilt_example() {
        let emb = line_of_points();
        let inst = Instance::from_perms(vec![Permutation::of(&[1, 2, 3])]);
        let tilted = tilt_directions(&emb, &inst).unwrap();
        assert_eq!(tilted.directions[0], Direction::from_ints(&[1, -1]).unwrap());
        assert!(verify_monotone(&tilted, &inst).unwrap().is_verified());
        // Idempotent on directions that already have a nonzero last coordinate.
        assert_eq!(tilt_directions(&tilted, &inst).unwrap(), tilted);
    }

    #[test]
    fn tilt_respects_rising_edges() {
        // Edge (1,1) along v=(1,0) has slack 1 and rise 1: δ = 1/2.
        let emb = MonotoneEmbedding::<Scalar> {
            dimension: 2,
            points: [(0, Point::from_ints(&[0, 0])), (1, Point::from_ints(&[1, 1]))].into_iter().collect(),
            directions: vec![Direction::from_ints(&[1, 0]).unwrap()],
        };
        let inst = Instance::from_perms(vec![Permutation::of(&[0, 1])]);
        let t = tilt_directions(&emb, &inst).unwrap();
        assert_eq!(t.directions[0].coords(), &[q(1), Scalar::from_frac(-1, 2)]);
        assert!(verify_monotone(&t, &inst).unwrap().is_verified());
    }

    #[test]
    fn rank_construction_example() {
        let inst = Instance::from_perms(vec![Permutation::of(&[2, 1, 3]), Permutation::of(&[1, 3, 2])]);
        let emb = embed_rank::<Scalar>(&inst, 2).unwrap();
        assert_eq!(emb.points[&1], Point::from_ints(&[2, 1]));
        assert_eq!(emb.points[&2], Point::from_ints(&[1, 3]));
        assert_eq!(emb.points[&3], Point::from_ints(&[3, 2]));
        assert_eq!(emb.directions, vec![Direction::unit(2, 0), Direction::unit(2, 1)]);
        assert!(verify_monotone(&emb, &inst).unwrap().is_verified());

        let three = Instance::from_perms(vec![
            Permutation::of(&[1, 2]),
            Permutation::of(&[2, 1]),
            Permutation::of(&[1, 2]),
        ]);
        assert!(matches!(embed_rank::<Scalar>(&three, 2), Err(Error::TooManyPermutations { k: 3, d: 2 })));
        assert!(matches!(embed_rank_dual::<Scalar>(&three, 2), Err(Error::TooManyPermutations { .. })));
    }

    #[test]
    fn single_path_rank_embedding() {
        let inst = Instance::from_perms(vec![Permutation::of(&[4, 0, 2, 1])]);
        let emb = embed_rank::<Scalar>(&inst, 2).unwrap();
        assert!(emb.points.values().all(|p| p.coords[1] == q(0)));
        assert!(verify_monotone(&emb, &inst).unwrap().is_verified());
    }

    #[test]
    fn dual_rank_construction_example() {
        let (a, b) = (0, 1);
        let inst = Instance::from_perms(vec![Permutation::of(&[a, b]), Permutation::of(&[b, a])]);
        let emb = embed_rank_dual::<Scalar>(&inst, 2).unwrap();
        assert_eq!(emb.lines, vec![VerticalLine::new(vec![q(0)]), VerticalLine::new(vec![q(1)])]);
        // H_a: x2 = x1 + 1, H_b: x2 = -x1 + 2
        assert_eq!(emb.hyperplanes[&a], Hyperplane::new(vec![q(1)], q(-1)));
        assert_eq!(emb.hyperplanes[&b], Hyperplane::new(vec![q(-1)], q(-2)));
        assert!(verify_parallel(&emb, &inst).unwrap().is_verified());
    }

    #[test]
    fn swapping_hyperplanes_breaks_verification() {
        let inst = Instance::from_perms(vec![Permutation::of(&[0, 1, 2]), Permutation::of(&[2, 0, 1])]);
        let mut emb = embed_rank_dual::<Scalar>(&inst, 2).unwrap();
        assert!(verify_parallel(&emb, &inst).unwrap().is_verified());
        let h0 = emb.hyperplanes[&0].clone();
        let h1 = emb.hyperplanes[&1].clone();
        emb.hyperplanes.insert(0, h1);
        emb.hyperplanes.insert(1, h0);
        assert!(!verify_parallel(&emb, &inst).unwrap().is_verified());
    }

    #[test]
    fn embedding_files_round_trip() {
        let inst = Instance::from_perms(vec![Permutation::of(&[0, 1, 2]), Permutation::of(&[2, 0, 1])]);
        let m = embed_rank::<Scalar>(&inst, 3).unwrap();
        let text = m.to_json(Some(&inst)).unwrap();
        let (back, attached) = MonotoneEmbedding::<Scalar>::from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(attached.unwrap().permutations, inst.permutations);
        assert_eq!(back.to_json(Some(&inst)).unwrap(), text);

        let p = embed_rank_dual::<Scalar>(&inst, 2).unwrap();
        let text = p.to_json(Some(&[false, true]), None).unwrap();
        let (back, flags, none) = ParallelEmbedding::<Scalar>::from_json(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(flags, Some(vec![false, true]));
        assert!(none.is_none());
        assert!(text.contains("\"alpha0\":\"-1\""));
    }
}
