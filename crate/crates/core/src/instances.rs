//! Permutations over labeled vertex sets and the instances built from them.
//!
//! A path on `n` labeled vertices is identified with the order in which it
//! visits them. The restriction, reversal and block-concatenation operations
//! here are the whole algebra the counterexample families need.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::Error;

pub type Label = u32;

/// A visiting order of distinct labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Label>", into = "Vec<Label>")]
pub struct Permutation(Vec<Label>);

impl TryFrom<Vec<Label>> for Permutation {
    type Error = Error;

    fn try_from(order: Vec<Label>) -> Result<Self, Error> {
        Permutation::new(order)
    }
}

impl From<Permutation> for Vec<Label> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl Permutation {
    pub fn new(order: Vec<Label>) -> Result<Self, Error> {
        let mut seen = HashSet::with_capacity(order.len());
        if let Some(&dup) = order.iter().find(|&&l| !seen.insert(l)) {
            return Err(Error::RepeatedLabel(dup));
        }
        Ok(Permutation(order))
    }

    /// Builds a permutation from a literal, panicking on repeats.
    pub fn of(order: &[Label]) -> Self {
        Permutation::new(order.to_vec()).expect("literal permutation has no repeats")
    }

    pub fn order(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: Label) -> bool {
        self.0.contains(&label)
    }

    /// Zero-based position of every label.
    pub fn positions(&self) -> HashMap<Label, usize> {
        self.0.iter().enumerate().map(|(i, &l)| (l, i)).collect()
    }

    /// Consecutive pairs `(u, w)`: the oriented edges of the path.
    pub fn edges(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    /// The subsequence made of the labels in `subset`, in this order.
    pub fn restrict(&self, subset: &[Label]) -> Result<Permutation, Error> {
        if let Some(&missing) = subset.iter().find(|&&l| !self.contains(l)) {
            return Err(Error::UnknownLabel(missing));
        }
        let keep: HashSet<Label> = subset.iter().copied().collect();
        Ok(Permutation(self.0.iter().copied().filter(|l| keep.contains(l)).collect()))
    }

    pub fn reverse(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn reversed_if(&self, flag: bool) -> Permutation {
        if flag {
            self.reverse()
        } else {
            self.clone()
        }
    }

    /// Concatenates blocks with pairwise disjoint labels.
    pub fn concat_blocks(blocks: &[Permutation]) -> Result<Permutation, Error> {
        let order: Vec<Label> = blocks.iter().flat_map(|b| b.0.iter().copied()).collect();
        Permutation::new(order).map_err(|e| match e {
            Error::RepeatedLabel(l) => Error::OverlappingBlocks(l),
            other => other,
        })
    }

    /// Applies a relabeling to every entry.
    pub fn relabel(&self, map: impl Fn(Label) -> Label) -> Permutation {
        Permutation(self.0.iter().map(|&l| map(l)).collect())
    }
}

/// A split of the line indices `{1..d}` into two sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition(pub Vec<usize>, pub Vec<usize>);

impl Partition {
    /// The partition of `{1..d}` whose first side is the set bits of `mask`
    /// (bit `i - 1` stands for line `i`).
    pub fn from_mask(d: usize, mask: usize) -> Self {
        let (first, second) = (1..=d).partition(|i| mask >> (i - 1) & 1 == 1);
        Partition(first, second)
    }

    pub fn first(&self) -> &[usize] {
        &self.0
    }

    pub fn second(&self) -> &[usize] {
        &self.1
    }

    pub fn is_partition_of(&self, d: usize) -> bool {
        let mut all: Vec<usize> = self.0.iter().chain(&self.1).copied().collect();
        all.sort_unstable();
        all == (1..=d).collect::<Vec<_>>()
    }
}

/// What a group of labels certifies, i.e. the pattern its restrictions follow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum GroupRole {
    /// Labels `(g0, g1, g2)`: lines in the first side see `(g1, g0, g2)`, lines
    /// in the second side see `(g2, g1, g0)`, the last line sees `(g0, g2, g1)`.
    Separation { partition: Partition },
    /// Labels `(h1, h2, h3)` over four lines: line `apex_line` sees
    /// `(h1, h2, h3)`, the next two lines cyclically see `(h2, h3, h1)` and
    /// `(h3, h1, h2)`, and line 4 sees `(h3, h2, h1)`.
    Wedge { apex_line: usize },
    /// Labels `(g0, g1)`: lines 1 to 3 see `(g0, g1)`, line 4 sees `(g1, g0)`.
    OutsideTriangle,
    /// Five labels carrying a relabeled copy of the compact 3D dual instance.
    Compact3d,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub labels: Vec<Label>,
    #[serde(flatten)]
    pub role: GroupRole,
    /// Permutations to reverse before the pattern applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reversal: Option<Vec<bool>>,
}

/// `k` permutations over a shared label set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    pub labels: Vec<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_names: Option<BTreeMap<Label, String>>,
    pub permutations: Vec<Permutation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<GroupSpec>>,
}

impl Instance {
    /// An instance without metadata. No validation happens here; see
    /// [`validate_instance`] and [`Instance::checked`].
    pub fn new(labels: Vec<Label>, permutations: Vec<Permutation>) -> Self {
        Instance { family: None, dimension: None, labels, label_names: None, permutations, groups: None }
    }

    /// An instance whose label set is taken from the first permutation.
    pub fn from_perms(permutations: Vec<Permutation>) -> Self {
        let mut labels: Vec<Label> = permutations.first().map(|p| p.order().to_vec()).unwrap_or_default();
        labels.sort_unstable();
        Instance::new(labels, permutations)
    }

    /// Like [`Instance::new`] but requires every permutation to be a
    /// bijection on `labels`.
    pub fn checked(labels: Vec<Label>, permutations: Vec<Permutation>) -> Result<Self, Error> {
        let inst = Instance::new(labels, permutations);
        inst.check_bijections()?;
        Ok(inst)
    }

    pub fn with_family(mut self, family: impl Into<String>) -> Self {
        self.family = Some(family.into());
        self
    }

    pub fn with_dimension(mut self, d: usize) -> Self {
        self.dimension = Some(d);
        self
    }

    pub fn with_groups(mut self, groups: Vec<GroupSpec>) -> Self {
        self.groups = Some(groups);
        self
    }

    pub fn k(&self) -> usize {
        self.permutations.len()
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn check_bijections(&self) -> Result<(), Error> {
        let set: HashSet<Label> = self.labels.iter().copied().collect();
        if set.len() != self.labels.len() {
            return Err(Error::Malformed("repeated entry in label set".into()));
        }
        if self.permutations.is_empty() {
            return Err(Error::Malformed("an instance needs at least one permutation".into()));
        }
        for (j, p) in self.permutations.iter().enumerate() {
            if p.len() != set.len() || p.order().iter().any(|l| !set.contains(l)) {
                return Err(Error::Malformed(format!(
                    "permutation {} is not a bijection on the label set",
                    j + 1
                )));
            }
        }
        Ok(())
    }

    /// Every permutation restricted to `subset`.
    pub fn restrict(&self, subset: &[Label]) -> Result<Vec<Permutation>, Error> {
        self.permutations.iter().map(|p| p.restrict(subset)).collect()
    }

    /// The permutations with `pattern[j]` reversing permutation `j`.
    pub fn reversed_by(&self, pattern: &[bool]) -> Vec<Permutation> {
        self.permutations
            .iter()
            .zip(pattern)
            .map(|(p, &r)| p.reversed_if(r))
            .collect()
    }

    pub fn to_json(&self) -> Result<String, Error> {
        crate::json::to_layout(self)
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// True iff every permutation is a bijection on the label set and the
/// permutations are pairwise distinct.
pub fn validate_instance(inst: &Instance) -> bool {
    if inst.check_bijections().is_err() {
        return false;
    }
    let distinct: HashSet<&Permutation> = inst.permutations.iter().collect();
    distinct.len() == inst.permutations.len()
}
