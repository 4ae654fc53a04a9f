//! Refutation certificates.
//!
//! Three refuters live here:
//!
//! * [`certify_dual_2d`] rules out every left-to-right arrangement (with ties)
//!   of the vertical lines of a planar parallel embedding. Two non-vertical
//!   lines cross at most once, so along the x-sorted vertical lines the
//!   above/below relation of any two hyperplanes may change sign at most once,
//!   and lines at the same x must induce the same order.
//! * [`certify_monotone_2d`] runs the former on every reversal pattern that
//!   keeps the first permutation, which covers every monotone embedding.
//! * [`refute_placement`] shows that a given base point for the last vertical
//!   line of a `gen_dual_general` instance is impossible, by exhibiting a split
//!   of the other bases that no hyperplane through the candidate separates,
//!   together with a Farkas certificate for that claim.
//!
//! The certifiers are sound but not complete: failing to refute says nothing
//! about realizability.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::exactgeom::{central_project, in_convex_hull, radon_partition, strictly_separating_hyperplane, Point};
use crate::instances::{GroupRole, Instance, Label, Partition, Permutation};
use crate::lpsolve::{solve_feasibility, validate_farkas, FeasibilityResult, LinearSystem};
use crate::scalar::{parse_scalar, ExactField};
use crate::Error;

/// An ordered partition of the (one-based) line indices by x-coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeakOrder(pub Vec<Vec<usize>>);

/// Why a weak order of lines cannot carry the instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two lines at the same x induce different orders on `pair`.
    TieBlock { lines: (usize, usize), pair: (Label, Label) },
    /// The relative order of `pair` flips more than once left to right; `signs`
    /// has one entry per block, `+` when the first label is below.
    SignChanges { pair: (Label, Label), signs: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakOrderWitness {
    pub weak_order: WeakOrder,
    pub violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate2D {
    pub refuted: bool,
    pub witnesses: Vec<WeakOrderWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCertificate {
    pub reversed: Vec<bool>,
    pub certificate: Certificate2D,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneCertificate {
    pub not_embeddable: bool,
    pub patterns: Vec<PatternCertificate>,
}

/// All ordered set partitions of `{1..k}`, first block chosen by increasing
/// bitmask at each level.
pub fn weak_orders(k: usize) -> Vec<WeakOrder> {
    fn rec(remaining: &[usize], prefix: &mut Vec<Vec<usize>>, out: &mut Vec<WeakOrder>) {
        if remaining.is_empty() {
            out.push(WeakOrder(prefix.clone()));
            return;
        }
        for mask in 1..1usize << remaining.len() {
            let pick = |inside: bool| -> Vec<usize> {
                remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i & 1 == 1) == inside)
                    .map(|(_, &l)| l)
                    .collect()
            };
            let (block, rest) = (pick(true), pick(false));
            prefix.push(block);
            rec(&rest, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let lines: Vec<usize> = (1..=k).collect();
    rec(&lines, &mut Vec::new(), &mut out);
    out
}

/// Checks one weak order of the lines against the necessary conditions;
/// `None` means no violation was found.
pub fn check_weak_order(perms: &[Permutation], order: &WeakOrder) -> Option<Violation> {
    let pos: Vec<HashMap<Label, usize>> = perms.iter().map(|p| p.positions()).collect();
    let mut labels: Vec<Label> = perms.first().map(|p| p.order().to_vec()).unwrap_or_default();
    labels.sort_unstable();
    let below = |line: usize, u: Label, w: Label| pos[line - 1][&u] < pos[line - 1][&w];

    for block in &order.0 {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                for (x, &u) in labels.iter().enumerate() {
                    for &w in &labels[x + 1..] {
                        if below(a, u, w) != below(b, u, w) {
                            return Some(Violation::TieBlock { lines: (a, b), pair: (u, w) });
                        }
                    }
                }
            }
        }
    }

    for (x, &u) in labels.iter().enumerate() {
        for &w in &labels[x + 1..] {
            let signs: Vec<bool> = order.0.iter().map(|block| below(block[0], u, w)).collect();
            let changes = signs.windows(2).filter(|s| s[0] != s[1]).count();
            if changes > 1 {
                let signs = signs.iter().map(|&s| if s { '+' } else { '-' }).collect();
                return Some(Violation::SignChanges { pair: (u, w), signs });
            }
        }
    }
    None
}

fn certify_perms(perms: &[Permutation]) -> Certificate2D {
    let witnesses: Vec<WeakOrderWitness> = weak_orders(perms.len())
        .into_iter()
        .map(|w| {
            let violation = check_weak_order(perms, &w);
            WeakOrderWitness { weak_order: w, violation }
        })
        .collect();
    let refuted = witnesses.iter().all(|w| w.violation.is_some());
    Certificate2D { refuted, witnesses }
}

fn check_planar(inst: &Instance) -> Result<(), Error> {
    inst.check_bijections()?;
    match inst.dimension {
        Some(d) if d != 2 => Err(Error::DimensionMismatch { expected: 2, found: d }),
        _ => Ok(()),
    }
}

/// Tries to refute a planar parallel embedding of `inst` over every weak order
/// of its vertical lines.
pub fn certify_dual_2d(inst: &Instance) -> Result<Certificate2D, Error> {
    check_planar(inst)?;
    for (i, p) in inst.permutations.iter().enumerate() {
        if let Some(j) = inst.permutations[i + 1..].iter().position(|q| q == p) {
            return Err(Error::DuplicatePermutations(i + 1, i + j + 2));
        }
    }
    Ok(certify_perms(&inst.permutations))
}

/// Tries to refute a planar monotone embedding of `inst` by refuting every
/// reversal pattern that keeps the first permutation.
pub fn certify_monotone_2d(inst: &Instance) -> Result<MonotoneCertificate, Error> {
    check_planar(inst)?;
    let k = inst.k();
    let patterns: Vec<PatternCertificate> = (0..1usize << (k - 1))
        .map(|c| {
            let reversed = crate::counterexamples::copy_pattern(k, c);
            let certificate = certify_perms(&inst.reversed_by(&reversed));
            PatternCertificate { reversed, certificate }
        })
        .collect();
    let not_embeddable = patterns.iter().all(|p| p.certificate.refuted);
    Ok(MonotoneCertificate { not_embeddable, patterns })
}

/// Evidence that a base point for the last vertical line is impossible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacementWitness<F> {
    pub partition: Partition,
    /// Labels of the instance group whose orders force the separation.
    pub labels: Vec<Label>,
    /// Certificate that no hyperplane through the candidate strictly
    /// separates the two sides; checks against [`separation_system`].
    pub farkas: Vec<F>,
}

#[derive(Serialize, Deserialize)]
struct PlacementWitnessDoc {
    partition: Partition,
    labels: Vec<Label>,
    farkas: Vec<String>,
}

impl<F: ExactField> PlacementWitness<F> {
    pub fn to_json(&self) -> Result<String, Error> {
        crate::json::to_layout(&PlacementWitnessDoc {
            partition: self.partition.clone(),
            labels: self.labels.clone(),
            farkas: self.farkas.iter().map(|v| v.to_string()).collect(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let doc: PlacementWitnessDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(PlacementWitness {
            partition: doc.partition,
            labels: doc.labels,
            farkas: doc.farkas.iter().map(|s| parse_scalar(s)).collect::<Result<_, _>>()?,
        })
    }

    /// Re-checks the attached Farkas vector.
    pub fn verify(&self, bases: &[Vec<F>], candidate: &[F]) -> bool {
        separation_system(bases, candidate, &self.partition)
            .is_ok_and(|sys| validate_farkas(&sys, &self.farkas))
    }
}

/// `{u·(ℓ_i - c) >= 1 : i in first side} ∪ {-u·(ℓ_i - c) >= 1 : i in second side}`
/// over `u`: feasible iff some hyperplane through `c` strictly separates the
/// two sides. The strict inequalities are scaled to slack one since the
/// system is homogeneous in `u`.
pub fn separation_system<F: ExactField>(
    bases: &[Vec<F>],
    candidate: &[F],
    partition: &Partition,
) -> Result<LinearSystem<F>, Error> {
    if !partition.is_partition_of(bases.len()) {
        return Err(Error::Malformed("partition does not cover the bases".into()));
    }
    let mut sys = LinearSystem::new(candidate.len());
    for (side, sign) in [(partition.first(), F::one()), (partition.second(), -F::one())] {
        for &i in side {
            let b = &bases[i - 1];
            if b.len() != candidate.len() {
                return Err(Error::DimensionMismatch { expected: candidate.len(), found: b.len() });
            }
            let row = b
                .iter()
                .zip(candidate)
                .map(|(x, c)| (x.clone() - c.clone()) * sign.clone())
                .collect();
            sys.add_ge(row, F::one());
        }
    }
    Ok(sys)
}

/// True iff no hyperplane through `candidate` strictly separates the two
/// sides of `partition`, established through a validated Farkas certificate.
pub fn validate_witness<F: ExactField>(bases: &[Vec<F>], candidate: &[F], partition: &Partition) -> bool {
    let Ok(sys) = separation_system(bases, candidate, partition) else {
        return false;
    };
    match solve_feasibility(&sys) {
        FeasibilityResult::Infeasible(y) => validate_farkas(&sys, &y),
        FeasibilityResult::Feasible(_) => false,
    }
}

/// The split of the bases that no hyperplane through `candidate` separates:
/// everything on one side when the candidate is in their hull, otherwise a
/// Radon partition of the bases centrally projected from the candidate onto a
/// screen that strictly separates them from it.
pub fn blocking_partition<F: ExactField>(bases: &[Vec<F>], candidate: &[F]) -> Result<Partition, Error> {
    let d = bases.len();
    if bases.iter().any(|b| b.as_slice() == candidate) {
        return Err(Error::DegeneratePlacement("candidate coincides with a base".into()));
    }
    let pts: Vec<Point<F>> = bases.iter().cloned().map(Point::new).collect();
    let c = Point::new(candidate.to_vec());
    if in_convex_hull(&c, &pts) {
        return Ok(Partition(Vec::new(), (1..=d).collect()));
    }
    let screen = strictly_separating_hyperplane(&c, &pts).expect("points outside a closed hull are separable");
    let projected = central_project(&pts, &c, &screen)?;
    let radon = radon_partition(&projected)?;
    let first: Vec<usize> = radon.positive.iter().map(|i| i + 1).collect();
    let second: Vec<usize> = radon.rest.iter().map(|i| i + 1).collect();
    Ok(Partition(first, second))
}

/// Refutes `candidate` as the base of the last vertical line of a
/// `gen_dual_general` instance whose first `d` lines stand on `bases`.
pub fn refute_placement<F: ExactField>(
    inst: &Instance,
    bases: &[Vec<F>],
    candidate: &[F],
) -> Result<PlacementWitness<F>, Error> {
    let d = inst.k() - 1;
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if bases.len() != d {
        return Err(Error::Malformed(format!("{} bases for {} fixed lines", bases.len(), d)));
    }
    if candidate.len() != d - 1 {
        return Err(Error::DimensionMismatch { expected: d - 1, found: candidate.len() });
    }
    let partition = blocking_partition(bases, candidate)?;
    let groups = inst.groups.as_ref().ok_or(Error::MissingGroups)?;
    let labels = groups
        .iter()
        .find(|g| {
            matches!(&g.role, GroupRole::Separation { partition: p } if p.first() == partition.first())
                && g.reversal.as_ref().is_none_or(|r| r.iter().all(|&x| !x))
        })
        .map(|g| g.labels.clone())
        .ok_or_else(|| Error::Malformed(format!("no group for partition {partition:?}")))?;
    let sys = separation_system(bases, candidate, &partition)?;
    match solve_feasibility(&sys) {
        FeasibilityResult::Infeasible(farkas) => Ok(PlacementWitness { partition, labels, farkas }),
        FeasibilityResult::Feasible(_) => Err(Error::DegeneratePlacement(
            "the blocking partition is separable; bases are not in general position".into(),
        )),
    }
}

/// The four region constraints for the compact 3D instance, each with the
/// label set whose restriction imposes it.
pub const COMPACT_3D_CONSTRAINTS: [&[Label]; 4] = [&[0, 2, 3], &[1, 2, 3], &[0, 2, 4], &[0, 1]];

/// Which region constraints of the compact 3D instance the candidate base
/// `(x, y)` of the fourth line violates, for bases `(0,0), (1,0), (0,1)`.
///
/// The triple groups each confine the candidate to the closed triangle or a
/// closed half-plane beyond one side of it; the pair `{0, 1}` excludes the
/// closed triangle. The result is never empty.
pub fn refute_placement_3d_compact<F: ExactField>(candidate: &[F; 2]) -> Vec<Vec<Label>> {
    let [x, y] = candidate;
    let one = F::one();
    let sum = x.clone() + y.clone();
    let in_triangle = !x.is_negative() && !y.is_negative() && sum <= one;
    let allowed = [
        in_triangle || sum >= one,
        in_triangle || !x.is_positive(),
        in_triangle || !y.is_positive(),
        !in_triangle,
    ];
    COMPACT_3D_CONSTRAINTS
        .iter()
        .zip(allowed)
        .filter(|(_, ok)| !ok)
        .map(|(labels, _)| labels.to_vec())
        .collect()
}
