#![allow(dead_code)]

use std::collections::BTreeMap;

use monosim::embeddings::{MonotoneEmbedding, ParallelEmbedding};
use monosim::exactgeom::{Direction, Hyperplane, Point, VerticalLine};
use monosim::{ExactField, Instance, Label, Permutation, Scalar};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn random_rational<R: Rng>(rng: &mut R, range: i64, den: i64) -> Scalar {
    Scalar::from_frac(rng.gen_range(-range..=range), rng.gen_range(1..=den))
}

pub fn random_instance<R: Rng>(rng: &mut R, k: usize, n: usize) -> Instance {
    let labels: Vec<Label> = (0..n as Label).collect();
    let perms = (0..k)
        .map(|_| {
            let mut order = labels.clone();
            order.shuffle(rng);
            Permutation::of(&order)
        })
        .collect();
    Instance::new(labels, perms)
}

/// Brute-force height of hyperplane `x_d = Σ α_i x_i - α_0` above `base`,
/// written out without the library's helpers.
fn height(h: &Hyperplane<Scalar>, base: &[Scalar]) -> Scalar {
    let mut s = -h.alpha0.clone();
    for (a, x) in h.alpha.iter().zip(base) {
        s += a.clone() * x.clone();
    }
    s
}

/// Random parallel embedding with no ties, together with the instance it
/// realizes (read off independently by sorting heights).
pub fn random_parallel<R: Rng>(rng: &mut R, d: usize, n: usize, k: usize) -> (ParallelEmbedding<Scalar>, Instance) {
    loop {
        let hyperplanes: BTreeMap<Label, Hyperplane<Scalar>> = (0..n as Label)
            .map(|l| {
                let alpha = (0..d - 1).map(|_| random_rational(rng, 9, 3)).collect();
                (l, Hyperplane::new(alpha, random_rational(rng, 9, 3)))
            })
            .collect();
        let lines: Vec<VerticalLine<Scalar>> = (0..k)
            .map(|_| VerticalLine::new((0..d - 1).map(|_| random_rational(rng, 5, 4)).collect()))
            .collect();
        let mut perms = Vec::new();
        let mut tie = false;
        for line in &lines {
            let mut hs: Vec<(Scalar, Label)> = hyperplanes.iter().map(|(&l, h)| (height(h, &line.base), l)).collect();
            hs.sort();
            tie |= hs.windows(2).any(|w| w[0].0 == w[1].0);
            perms.push(Permutation::of(&hs.iter().map(|x| x.1).collect::<Vec<_>>()));
        }
        if !tie {
            let inst = Instance::new((0..n as Label).collect(), perms);
            return (ParallelEmbedding { dimension: d, hyperplanes, lines }, inst);
        }
    }
}

/// Random monotone embedding with no projection ties. Roughly one direction
/// in four is horizontal so that tilting has work to do.
pub fn random_monotone<R: Rng>(rng: &mut R, d: usize, n: usize, k: usize) -> (MonotoneEmbedding<Scalar>, Instance) {
    loop {
        let points: BTreeMap<Label, Point<Scalar>> = (0..n as Label)
            .map(|l| (l, Point::new((0..d).map(|_| random_rational(rng, 9, 3)).collect())))
            .collect();
        let directions: Vec<Direction<Scalar>> = (0..k)
            .map(|_| {
                let horizontal = rng.gen_range(0..4) == 0;
                loop {
                    let mut c: Vec<Scalar> = (0..d).map(|_| random_rational(rng, 4, 2)).collect();
                    if horizontal {
                        c[d - 1] = q(0);
                    }
                    if let Ok(v) = Direction::new(c) {
                        break v;
                    }
                }
            })
            .collect();
        let mut perms = Vec::new();
        let mut tie = false;
        for v in &directions {
            let mut proj: Vec<(Scalar, Label)> = points
                .iter()
                .map(|(&l, p)| {
                    let s = p.coords.iter().zip(v.coords()).fold(q(0), |acc, (a, b)| acc + a.clone() * b.clone());
                    (s, l)
                })
                .collect();
            proj.sort();
            tie |= proj.windows(2).any(|w| w[0].0 == w[1].0);
            perms.push(Permutation::of(&proj.iter().map(|x| x.1).collect::<Vec<_>>()));
        }
        if !tie {
            let inst = Instance::new((0..n as Label).collect(), perms);
            return (MonotoneEmbedding { dimension: d, points, directions }, inst);
        }
    }
}

/// Whether some hyperplanes realize `perms` on vertical lines standing on
/// `bases`: heights `ℓ·α_v - α0_v` strictly increase along each permutation.
/// Strictness is scaled to slack one since the system is homogeneous.
pub fn lines_realizable(perms: &[Permutation], bases: &[Vec<Scalar>]) -> bool {
    use monosim::lpsolve::{solve_feasibility, LinearSystem};
    assert_eq!(perms.len(), bases.len());
    let mut labels: Vec<Label> = perms[0].order().to_vec();
    labels.sort_unstable();
    let width = bases[0].len() + 1;
    let slot = |l: Label| labels.binary_search(&l).unwrap() * width;
    let mut sys = LinearSystem::new(labels.len() * width);
    for (perm, base) in perms.iter().zip(bases) {
        for pair in perm.order().windows(2) {
            let mut row = vec![q(0); labels.len() * width];
            for (sign, l) in [(1, pair[1]), (-1, pair[0])] {
                for (i, b) in base.iter().enumerate() {
                    row[slot(l) + i] += q(sign) * b.clone();
                }
                row[slot(l) + width - 1] -= q(sign);
            }
            sys.add_ge(row, q(1));
        }
    }
    solve_feasibility(&sys).is_feasible()
}
