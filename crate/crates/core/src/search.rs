//! One-sided search for embeddings.
//!
//! With the directions fixed, monotonicity is a homogeneous linear system in
//! the point coordinates, so [`lp_feasible_points`] settles it exactly.
//! [`search_embedding`] feeds it pseudo-random direction tuples. A reported
//! `NotFound` only means the sampled directions failed; it is not a proof of
//! non-existence.
//!
//! Parallel embeddings are searched through their primal image: a monotone
//! embedding whose directions are all `(ℓ_j, -1)` is the dual of the parallel
//! embedding with vertical lines at `ℓ_j` and the same permutations, so the
//! parallel search samples line positions instead of unit directions.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::counterexamples::FamilyId;
use crate::embeddings::{dual_to_primal, embed_rank, embed_rank_dual, primal_to_dual, verify_monotone, MonotoneEmbedding};
use crate::exactgeom::{Direction, Point};
use crate::instances::{Instance, Label};
use crate::lpsolve::{solve_feasibility, FeasibilityResult, LinearSystem};
use crate::scalar::ExactField;
use crate::Error;

/// Denominator of the stereographic parameter grid.
const GRID_DENOMINATOR: i64 = 16;
/// Half-width of the parameter grid, in units.
const GRID_RADIUS: i64 = 4;

/// Which embedding a search looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmbeddingKind {
    Monotone,
    Parallel,
}

impl EmbeddingKind {
    pub fn name(&self) -> &'static str {
        match self {
            EmbeddingKind::Monotone => "monotone",
            EmbeddingKind::Parallel => "parallel",
        }
    }

    /// The kind an instance's family is built to rule out; monotone when the
    /// instance has no recognized family.
    pub fn for_instance(inst: &Instance) -> Self {
        match FamilyId::of_instance(inst) {
            Some(f) if f.is_dual() => EmbeddingKind::Parallel,
            _ => EmbeddingKind::Monotone,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<F> {
    Found(MonotoneEmbedding<F>),
    NotFound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport<F> {
    pub kind: EmbeddingKind,
    /// For parallel searches every direction has last coordinate `-1`.
    pub outcome: SearchOutcome<F>,
    /// Direction tuples whose LP was solved (zero for the rank construction).
    pub samples_tried: usize,
    pub budget: usize,
    pub seed: u64,
}

impl<F: ExactField> SearchReport<F> {
    pub fn found(&self) -> Option<&MonotoneEmbedding<F>> {
        match &self.outcome {
            SearchOutcome::Found(e) => Some(e),
            SearchOutcome::NotFound => None,
        }
    }

    pub fn to_json(&self, inst: &Instance) -> Result<String, Error> {
        let (outcome, note, embedding) = match &self.outcome {
            SearchOutcome::Found(e) => {
                let text = match self.kind {
                    EmbeddingKind::Monotone => e.to_json(Some(inst))?,
                    EmbeddingKind::Parallel => {
                        let (par, flags) = primal_to_dual(e)?;
                        par.to_json(Some(&flags), Some(inst))?
                    }
                };
                let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                let note = match self.kind {
                    EmbeddingKind::Monotone => "verified monotone embedding",
                    EmbeddingKind::Parallel => "verified parallel embedding",
                };
                ("found", note, v)
            }
            SearchOutcome::NotFound => (
                "not_found",
                "no sampled direction tuple admits an embedding; this is not a non-existence proof",
                Value::Null,
            ),
        };
        let mut doc = json!({
            "kind": self.kind.name(),
            "outcome": outcome,
            "note": note,
            "samples": self.samples_tried,
            "budget": self.budget,
            "seed": self.seed,
        });
        if !embedding.is_null() {
            doc["embedding"] = embedding;
        }
        crate::json::to_layout(&doc)
    }
}

/// Points realizing `inst` with the given directions, if any: the system
/// `(p_w - p_u)·v_j >= 1` over all path edges, which is equivalent to the
/// strict version because it is invariant under scaling the points.
pub fn lp_feasible_points<F: ExactField>(
    inst: &Instance,
    directions: &[Direction<F>],
) -> Result<Option<MonotoneEmbedding<F>>, Error> {
    inst.check_bijections()?;
    if directions.len() != inst.k() {
        return Err(Error::Malformed(format!("{} directions for {} permutations", directions.len(), inst.k())));
    }
    let d = directions[0].dim();
    if let Some(v) = directions.iter().find(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: v.dim() });
    }
    let index: HashMap<Label, usize> = inst.labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut sys = LinearSystem::new(inst.n() * d);
    for (perm, v) in inst.permutations.iter().zip(directions) {
        for (u, w) in perm.edges() {
            let mut row = vec![F::zero(); inst.n() * d];
            for (c, vc) in v.coords().iter().enumerate() {
                row[index[&w] * d + c] = vc.clone();
                row[index[&u] * d + c] = -vc.clone();
            }
            sys.add_ge(row, F::one());
        }
    }
    Ok(match solve_feasibility(&sys) {
        FeasibilityResult::Feasible(x) => {
            let points: BTreeMap<Label, Point<F>> = inst
                .labels
                .iter()
                .enumerate()
                .map(|(i, &l)| (l, Point::new(x[i * d..(i + 1) * d].to_vec())))
                .collect();
            Some(MonotoneEmbedding { dimension: d, points, directions: directions.to_vec() })
        }
        FeasibilityResult::Infeasible(_) => None,
    })
}

/// Inverse stereographic image of `t ∈ Q^{d-1}`: a rational unit vector.
fn stereographic<F: ExactField>(t: &[F]) -> Direction<F> {
    let s = t.iter().fold(F::zero(), |acc, x| acc + x.clone() * x.clone());
    let denom = s.clone() + F::one();
    let two = F::from_int(2);
    let mut coords: Vec<F> = t.iter().map(|x| two.clone() * x.clone() / denom.clone()).collect();
    coords.push((s - F::one()) / denom);
    Direction::new(coords).expect("stereographic images are unit vectors")
}

/// `count` tuples of `k` pseudo-random rational unit directions in `R^d`,
/// reproducible from `seed`.
pub fn sample_directions<F: ExactField>(d: usize, k: usize, count: usize, seed: u64) -> Vec<Vec<Direction<F>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = GRID_RADIUS * GRID_DENOMINATOR;
    (0..count)
        .map(|_| {
            (0..k)
                .map(|_| {
                    let t: Vec<F> = (0..d - 1)
                        .map(|_| F::from_frac(rng.gen_range(-span..=span), GRID_DENOMINATOR))
                        .collect();
                    stereographic(&t)
                })
                .collect()
        })
        .collect()
}

/// `count` tuples of `k` downward directions `(ℓ, -1)`, `ℓ` drawn from the
/// same rational grid as [`sample_directions`], reproducible from `seed`.
pub fn sample_line_directions<F: ExactField>(d: usize, k: usize, count: usize, seed: u64) -> Vec<Vec<Direction<F>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = GRID_RADIUS * GRID_DENOMINATOR;
    (0..count)
        .map(|_| {
            (0..k)
                .map(|_| {
                    let mut c: Vec<F> = (0..d - 1)
                        .map(|_| F::from_frac(rng.gen_range(-span..=span), GRID_DENOMINATOR))
                        .collect();
                    c.push(-F::one());
                    Direction::new(c).expect("last coordinate is -1")
                })
                .collect()
        })
        .collect()
}

/// Searches `R^d` for the kind of embedding the instance's family refutes
/// (see [`EmbeddingKind::for_instance`]).
pub fn search_embedding<F: ExactField>(inst: &Instance, d: usize, budget: usize, seed: u64) -> Result<SearchReport<F>, Error> {
    search_embedding_of_kind(inst, d, budget, seed, EmbeddingKind::for_instance(inst))
}

/// Searches for an embedding of `inst` of the given kind in `R^d`.
///
/// With at most `d` paths the rank construction always succeeds and is used
/// directly. Otherwise up to `budget` sampled direction tuples are tried in
/// order and the first feasible one is reported, regardless of how the
/// samples are scheduled across threads.
pub fn search_embedding_of_kind<F: ExactField>(
    inst: &Instance,
    d: usize,
    budget: usize,
    seed: u64,
    kind: EmbeddingKind,
) -> Result<SearchReport<F>, Error> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    inst.check_bijections()?;
    if inst.k() <= d {
        let emb = match kind {
            EmbeddingKind::Monotone => embed_rank(inst, d)?,
            EmbeddingKind::Parallel => dual_to_primal(&embed_rank_dual(inst, d)?),
        };
        return Ok(SearchReport { kind, outcome: SearchOutcome::Found(emb), samples_tried: 0, budget, seed });
    }
    // Restricting to a label subset keeps every direction tuple feasible, so
    // an infeasible group rules the tuple out without the full system.
    let screens: Vec<Instance> = inst
        .groups
        .iter()
        .flatten()
        .map(|g| Ok(Instance::new(g.labels.clone(), inst.restrict(&g.labels)?)))
        .collect::<Result<_, Error>>()?;
    let tuples = match kind {
        EmbeddingKind::Monotone => sample_directions::<F>(d, inst.k(), budget, seed),
        EmbeddingKind::Parallel => sample_line_directions::<F>(d, inst.k(), budget, seed),
    };
    let hit = tuples
        .par_iter()
        .enumerate()
        .map(|(i, dirs)| {
            for sub in &screens {
                if lp_feasible_points(sub, dirs)?.is_none() {
                    return Ok(None);
                }
            }
            lp_feasible_points(inst, dirs).map(|r| r.map(|e| (i, e)))
        })
        .find_map_first(|r| match r {
            Ok(Some(found)) => Some(Ok(found)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        })
        .transpose()?;
    Ok(match hit {
        Some((i, emb)) => {
            debug_assert!(verify_monotone(&emb, inst).is_ok_and(|v| v.is_verified()));
            SearchReport { kind, outcome: SearchOutcome::Found(emb), samples_tried: i + 1, budget, seed }
        }
        None => SearchReport { kind, outcome: SearchOutcome::NotFound, samples_tried: budget, budget, seed },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexamples::gen_dual_2d;
    use crate::instances::Permutation;
    use crate::Scalar;
    use num_traits::{Signed, Zero};

    #[test]
    fn independent_directions_are_feasible() {
        let inst = Instance::from_perms(vec![Permutation::of(&[0, 1, 2, 3]), Permutation::of(&[3, 0, 2, 1])]);
        let dirs = vec![Direction::from_ints(&[1, 1]).unwrap(), Direction::from_ints(&[-1, 2]).unwrap()];
        let emb = lp_feasible_points::<Scalar>(&inst, &dirs).unwrap().unwrap();
        assert!(verify_monotone(&emb, &inst).unwrap().is_verified());
    }

    #[test]
    fn one_direction_cannot_serve_distinct_orders() {
        let e1 = Direction::<Scalar>::unit(2, 0);
        let dirs = vec![e1.clone(), e1.clone(), e1];
        assert!(lp_feasible_points(&gen_dual_2d(), &dirs).unwrap().is_none());
    }

    #[test]
    fn single_path_is_always_feasible() {
        let inst = Instance::from_perms(vec![Permutation::of(&[3, 1, 2, 0])]);
        let dirs = vec![Direction::<Scalar>::from_ints(&[2, -7]).unwrap()];
        assert!(lp_feasible_points(&inst, &dirs).unwrap().is_some());
    }

    #[test]
    fn sampling_is_reproducible_and_spread() {
        let a = sample_directions::<Scalar>(2, 3, 50, 7);
        let b = sample_directions::<Scalar>(2, 3, 50, 7);
        assert_eq!(a, b);
        assert_ne!(a, sample_directions::<Scalar>(2, 3, 50, 8));

        let flat: Vec<Direction<Scalar>> = sample_directions::<Scalar>(2, 1, 100, 1).into_iter().flatten().collect();
        let mut quadrants = std::collections::HashSet::new();
        for v in &flat {
            let c = v.coords();
            assert!(c.iter().any(|x| !x.is_zero()));
            assert_eq!(crate::scalar::dot(c, c), Scalar::from_int(1));
            quadrants.insert((c[0].is_positive(), c[1].is_positive()));
        }
        assert_eq!(quadrants.len(), 4);
    }

    #[test]
    fn few_paths_short_circuit() {
        let r = search_embedding::<Scalar>(&gen_dual_2d(), 3, 10, 0).unwrap();
        assert_eq!((r.kind, r.samples_tried), (EmbeddingKind::Parallel, 0));
        let emb = r.found().unwrap();
        assert!(verify_monotone(emb, &gen_dual_2d()).unwrap().is_verified());
        let (par, flags) = primal_to_dual(emb).unwrap();
        assert_eq!(flags, vec![false; 3]);
        assert!(crate::embeddings::verify_parallel(&par, &gen_dual_2d()).unwrap().is_verified());
    }

    #[test]
    fn kind_follows_the_family() {
        assert_eq!(EmbeddingKind::for_instance(&gen_dual_2d()), EmbeddingKind::Parallel);
        assert_eq!(EmbeddingKind::for_instance(&crate::counterexamples::gen_primal_2d()), EmbeddingKind::Monotone);
        let bare = Instance::from_perms(gen_dual_2d().permutations);
        assert_eq!(EmbeddingKind::for_instance(&bare), EmbeddingKind::Monotone);
    }

    #[test]
    fn planar_triangle_paths_are_monotone_but_not_parallel() {
        // Any three orders of three points occur as projections of a triangle.
        let bare = Instance::from_perms(gen_dual_2d().permutations);
        let mono = search_embedding_of_kind::<Scalar>(&bare, 2, 200, 3, EmbeddingKind::Monotone).unwrap();
        assert!(verify_monotone(mono.found().unwrap(), &bare).unwrap().is_verified());
        let par = search_embedding_of_kind::<Scalar>(&bare, 2, 200, 3, EmbeddingKind::Parallel).unwrap();
        assert!(par.found().is_none());
    }

    #[test]
    fn group_screening_does_not_change_the_outcome() {
        let with = crate::counterexamples::gen_primal_2d();
        let mut without = with.clone();
        without.groups = None;
        for seed in 0..3 {
            let a = search_embedding::<Scalar>(&with, 2, 40, seed).unwrap();
            let b = search_embedding::<Scalar>(&without, 2, 40, seed).unwrap();
            assert_eq!(a, b);
        }
        let inst = Instance::from_perms(vec![Permutation::of(&[0, 1, 2, 3]), Permutation::of(&[1, 3, 0, 2]), Permutation::of(&[3, 2, 1, 0])]);
        let grouped = inst.clone().with_groups(vec![crate::instances::GroupSpec {
            labels: vec![0, 1, 3],
            role: crate::instances::GroupRole::OutsideTriangle,
            reversal: None,
        }]);
        let a = search_embedding::<Scalar>(&inst, 2, 40, 1).unwrap();
        let b = search_embedding::<Scalar>(&grouped, 2, 40, 1).unwrap();
        assert_eq!(a, b);
        assert!(a.found().is_some());
    }

    #[test]
    fn line_directions_point_down() {
        for tuple in sample_line_directions::<Scalar>(3, 2, 20, 5) {
            for v in tuple {
                assert_eq!(*v.last(), Scalar::from_int(-1));
            }
        }
    }
}
