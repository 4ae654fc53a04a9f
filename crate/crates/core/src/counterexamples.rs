//! Generators for the families of path sets with no simultaneous embedding.
//!
//! | family            | paths | vertices   | refuted embedding kind |
//! |-------------------|-------|------------|------------------------|
//! | `dual2d`          | 3     | 3          | parallel, `d = 2`      |
//! | `primal2d`        | 3     | 6          | monotone, `d = 2`      |
//! | `dual3d`          | 4     | 5          | parallel, `d = 3`      |
//! | `primal3d`        | 4     | 40         | monotone, `d = 3`      |
//! | `dual-general`    | d + 1 | 3·2^d      | parallel               |
//! | `primal-general`  | d + 1 | 3·2^(2d)   | monotone               |
//!
//! Every generated instance carries [`GroupSpec`] metadata naming the vertex
//! groups whose restrictions drive the refutation, so that
//! [`validate_structure`] and the certifiers can work from the file alone.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::instances::{validate_instance, GroupRole, GroupSpec, Instance, Label, Partition, Permutation};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Dual2D,
    Primal2D,
    Dual3D,
    Primal3D,
    DualGeneral(usize),
    PrimalGeneral(usize),
}

impl FamilyId {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::Dual2D => "dual2d",
            FamilyId::Primal2D => "primal2d",
            FamilyId::Dual3D => "dual3d",
            FamilyId::Primal3D => "primal3d",
            FamilyId::DualGeneral(_) => "dual-general",
            FamilyId::PrimalGeneral(_) => "primal-general",
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            FamilyId::Dual2D | FamilyId::Primal2D => 2,
            FamilyId::Dual3D | FamilyId::Primal3D => 3,
            FamilyId::DualGeneral(d) | FamilyId::PrimalGeneral(d) => *d,
        }
    }

    /// Whether the family refutes parallel (dual) rather than monotone embeddings.
    pub fn is_dual(&self) -> bool {
        matches!(self, FamilyId::Dual2D | FamilyId::Dual3D | FamilyId::DualGeneral(_))
    }

    /// Parses a family name; the general families take their dimension from `d`.
    pub fn parse(name: &str, d: Option<usize>) -> Result<Self, Error> {
        let need_d = || d.ok_or_else(|| Error::Malformed(format!("family {name} needs a dimension")));
        Ok(match name {
            "dual2d" => FamilyId::Dual2D,
            "primal2d" => FamilyId::Primal2D,
            "dual3d" => FamilyId::Dual3D,
            "primal3d" => FamilyId::Primal3D,
            "dual-general" => FamilyId::DualGeneral(need_d()?),
            "primal-general" => FamilyId::PrimalGeneral(need_d()?),
            other => return Err(Error::Malformed(format!("unknown family {other:?}"))),
        })
    }

    /// Recovers the family recorded in an instance's metadata.
    pub fn of_instance(inst: &Instance) -> Option<Self> {
        FamilyId::parse(inst.family.as_deref()?, inst.dimension).ok()
    }

    pub fn generate(&self) -> Result<Instance, Error> {
        match *self {
            FamilyId::Dual2D => Ok(gen_dual_2d()),
            FamilyId::Primal2D => Ok(gen_primal_2d()),
            FamilyId::Dual3D => Ok(gen_dual_3d()),
            FamilyId::Primal3D => Ok(gen_primal_3d()),
            FamilyId::DualGeneral(d) => gen_dual_general(d),
            FamilyId::PrimalGeneral(d) => gen_primal_general(d),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.split_once(':') {
            Some((name, d)) => {
                let d = d.parse().map_err(|_| Error::Malformed(format!("bad dimension in {s:?}")))?;
                FamilyId::parse(name, Some(d))
            }
            None => FamilyId::parse(s, None),
        }
    }
}

fn perms(rows: &[&[Label]]) -> Vec<Permutation> {
    rows.iter().map(|r| Permutation::of(r)).collect()
}

/// The three orders of a separation triple `(g0, g1, g2)`.
fn tau(g: [Label; 3]) -> [Permutation; 3] {
    [
        Permutation::of(&[g[1], g[0], g[2]]),
        Permutation::of(&[g[2], g[1], g[0]]),
        Permutation::of(&[g[0], g[2], g[1]]),
    ]
}

fn separation(labels: Vec<Label>, partition: Partition, reversal: Option<Vec<bool>>) -> GroupSpec {
    GroupSpec { labels, role: GroupRole::Separation { partition }, reversal }
}

pub fn gen_dual_2d() -> Instance {
    Instance::new(vec![0, 1, 2], perms(&[&[1, 0, 2], &[2, 1, 0], &[0, 2, 1]]))
        .with_family(FamilyId::Dual2D.name())
        .with_dimension(2)
        .with_groups(vec![separation(vec![0, 1, 2], Partition(vec![1], vec![2]), None)])
}

pub fn gen_primal_2d() -> Instance {
    let [a, b, c, d, e, f]: [Label; 6] = [0, 1, 2, 3, 4, 5];
    let mut inst = Instance::new(
        vec![a, b, c, d, e, f],
        perms(&[&[f, b, d, e, a, c], &[d, f, c, b, e, a], &[f, a, d, c, e, b]]),
    )
    .with_family(FamilyId::Primal2D.name())
    .with_dimension(2);
    inst.label_names = Some(
        ["a", "b", "c", "d", "e", "f"]
            .iter()
            .enumerate()
            .map(|(i, s)| (i as Label, s.to_string()))
            .collect(),
    );
    let split = || Partition(vec![1], vec![2]);
    inst.with_groups(vec![
        separation(vec![a, b, c], split(), Some(vec![false, false, false])),
        separation(vec![a, c, d], split(), Some(vec![true, false, false])),
        separation(vec![d, b, e], split(), Some(vec![false, true, false])),
        separation(vec![b, f, d], split(), Some(vec![false, false, true])),
    ])
}

const DUAL_3D: [[Label; 5]; 4] = [[0, 1, 2, 3, 4], [2, 3, 4, 0, 1], [3, 4, 0, 1, 2], [1, 3, 2, 0, 4]];

pub fn gen_dual_3d() -> Instance {
    let wedge = |labels: Vec<Label>, apex_line| GroupSpec { labels, role: GroupRole::Wedge { apex_line }, reversal: None };
    Instance::new(vec![0, 1, 2, 3, 4], DUAL_3D.iter().map(|r| Permutation::of(r)).collect())
        .with_family(FamilyId::Dual3D.name())
        .with_dimension(3)
        .with_groups(vec![
            wedge(vec![0, 2, 3], 1),
            wedge(vec![2, 3, 1], 2),
            wedge(vec![4, 0, 2], 3),
            GroupSpec { labels: vec![0, 1], role: GroupRole::OutsideTriangle, reversal: None },
        ])
}

/// Reversal pattern of copy `c` among `k` permutations: the first permutation
/// is never reversed, and permutation `j >= 2` is reversed iff bit `k - j` of
/// `c` is set (the last permutation is the least significant bit).
pub fn copy_pattern(k: usize, c: usize) -> Vec<bool> {
    (1..=k).map(|j| j >= 2 && (c >> (k - j)) & 1 == 1).collect()
}

/// Eight relabeled copies of the compact 3D instance, block `g` on labels
/// `10g..10g+4`, one for each way of reversing the last three permutations.
pub fn gen_primal_3d() -> Instance {
    let mut blocks: Vec<Vec<Permutation>> = vec![Vec::new(); 4];
    let mut labels = Vec::new();
    let mut groups = Vec::new();
    for g in 0..8 {
        let offset = 10 * g as Label;
        let pattern = copy_pattern(4, g);
        for (j, row) in DUAL_3D.iter().enumerate() {
            blocks[j].push(Permutation::of(row).relabel(|l| l + offset).reversed_if(pattern[j]));
        }
        let members: Vec<Label> = (offset..offset + 5).collect();
        labels.extend(&members);
        groups.push(GroupSpec { labels: members, role: GroupRole::Compact3d, reversal: Some(pattern) });
    }
    let permutations = blocks
        .iter()
        .map(|b| Permutation::concat_blocks(b).expect("blocks use disjoint labels"))
        .collect();
    Instance::new(labels, permutations)
        .with_family(FamilyId::Primal3D.name())
        .with_dimension(3)
        .with_groups(groups)
}

/// One separation triple per subset of `{1..d}` (binary counting on
/// membership of the first side), concatenated in subset order.
pub fn gen_dual_general(d: usize) -> Result<Instance, Error> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let mut blocks: Vec<Vec<Permutation>> = vec![Vec::new(); d + 1];
    let mut groups = Vec::new();
    for mask in 0..1usize << d {
        let base = 3 * mask as Label;
        let g = [base, base + 1, base + 2];
        let partition = Partition::from_mask(d, mask);
        let [t1, t2, t3] = tau(g);
        for (i, block) in blocks.iter_mut().take(d).enumerate() {
            block.push(if partition.first().contains(&(i + 1)) { t1.clone() } else { t2.clone() });
        }
        blocks[d].push(t3);
        groups.push(separation(g.to_vec(), partition, None));
    }
    let permutations = blocks
        .iter()
        .map(|b| Permutation::concat_blocks(b).expect("blocks use disjoint labels"))
        .collect();
    Ok(Instance::new((0..3 * (1 << d) as Label).collect(), permutations)
        .with_family(FamilyId::DualGeneral(d).name())
        .with_dimension(d)
        .with_groups(groups))
}

/// Labels of copy `c` in [`gen_primal_general`].
pub fn copy_labels(d: usize, c: usize) -> Vec<Label> {
    let size = 3 * (1 << d) as Label;
    (c as Label * size..(c as Label + 1) * size).collect()
}

/// `2^d` relabeled copies of [`gen_dual_general`], one per reversal pattern
/// fixing the first permutation; in the copy for pattern `σ` the block of
/// permutation `j` is reversed iff `σ_j` is set.
pub fn gen_primal_general(d: usize) -> Result<Instance, Error> {
    let dual = gen_dual_general(d)?;
    let k = d + 1;
    let size = dual.n() as Label;
    let mut blocks: Vec<Vec<Permutation>> = vec![Vec::new(); k];
    let mut groups = Vec::new();
    for c in 0..1usize << d {
        let offset = c as Label * size;
        let pattern = copy_pattern(k, c);
        for (j, p) in dual.permutations.iter().enumerate() {
            blocks[j].push(p.relabel(|l| l + offset).reversed_if(pattern[j]));
        }
        for g in dual.groups.as_deref().unwrap_or_default() {
            groups.push(GroupSpec {
                labels: g.labels.iter().map(|l| l + offset).collect(),
                role: g.role.clone(),
                reversal: Some(pattern.clone()),
            });
        }
    }
    let permutations = blocks
        .iter()
        .map(|b| Permutation::concat_blocks(b).expect("blocks use disjoint labels"))
        .collect();
    Ok(Instance::new((0..size << d).collect(), permutations)
        .with_family(FamilyId::PrimalGeneral(d).name())
        .with_dimension(d)
        .with_groups(groups))
}

/// Orders a group's restrictions must take (after its reversal), or `None`
/// when the group's shape does not fit the instance.
fn expected_restrictions(group: &GroupSpec, k: usize) -> Option<Vec<Permutation>> {
    let l = &group.labels;
    match &group.role {
        GroupRole::Separation { partition } => {
            if l.len() != 3 || k < 3 || !partition.is_partition_of(k - 1) {
                return None;
            }
            let [t1, t2, t3] = tau([l[0], l[1], l[2]]);
            let mut out: Vec<Permutation> = (1..k)
                .map(|i| if partition.first().contains(&i) { t1.clone() } else { t2.clone() })
                .collect();
            out.push(t3);
            Some(out)
        }
        GroupRole::Wedge { apex_line } => {
            if l.len() != 3 || k != 4 || !(1..=3).contains(apex_line) {
                return None;
            }
            let (h1, h2, h3) = (l[0], l[1], l[2]);
            let cyc = [[h1, h2, h3], [h2, h3, h1], [h3, h1, h2]];
            let mut out = vec![Permutation::of(&[]); 4];
            for (shift, order) in cyc.iter().enumerate() {
                out[(apex_line - 1 + shift) % 3] = Permutation::of(order);
            }
            out[3] = Permutation::of(&[h3, h2, h1]);
            Some(out)
        }
        GroupRole::OutsideTriangle => {
            if l.len() != 2 || k != 4 {
                return None;
            }
            let same = Permutation::of(&[l[0], l[1]]);
            Some(vec![same.clone(), same.clone(), same.clone(), same.reverse()])
        }
        GroupRole::Compact3d => {
            if l.len() != 5 || k != 4 {
                return None;
            }
            Some(DUAL_3D.iter().map(|r| Permutation::of(r).relabel(|x| l[x as usize])).collect())
        }
    }
}

/// Checks that every group's restrictions follow its declared role and
/// reversal pattern. Errors only when the instance has no group metadata.
pub fn validate_structure(inst: &Instance) -> Result<bool, Error> {
    let groups = inst.groups.as_ref().ok_or(Error::MissingGroups)?;
    if groups.is_empty() || inst.check_bijections().is_err() {
        return Ok(false);
    }
    let k = inst.k();
    for group in groups {
        let reversal = group.reversal.clone().unwrap_or_else(|| vec![false; k]);
        if reversal.len() != k {
            return Ok(false);
        }
        let Some(expected) = expected_restrictions(group, k) else {
            return Ok(false);
        };
        let actual: Result<Vec<Permutation>, Error> = inst
            .reversed_by(&reversal)
            .iter()
            .map(|p| p.restrict(&group.labels))
            .collect();
        match actual {
            Ok(a) if a == expected => {}
            _ => return Ok(false),
        }
    }
    Ok(validate_instance(inst))
}

/// Whether two permutation lists agree after the relabeling that maps the
/// first permutation of `a` onto the first of `b`.
pub fn same_up_to_relabeling(a: &[Permutation], b: &[Permutation]) -> bool {
    if a.len() != b.len() || a.is_empty() || a[0].len() != b[0].len() {
        return false;
    }
    let map: HashMap<Label, Label> = a[0].order().iter().copied().zip(b[0].order().iter().copied()).collect();
    a.iter().zip(b).all(|(p, q)| {
        p.len() == q.len() && p.order().iter().zip(q.order()).all(|(x, y)| map.get(x) == Some(y))
    })
}
