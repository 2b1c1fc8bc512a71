//! Set-system algebra: complements, selections, hulls, elementarization,
//! classification and the product fibration of the power set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::subset::{GroundSet, Subset};

/// Which complement family the closure intersects over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureConvention {
    /// Intersect over all of `A^c`.
    #[default]
    Full,
    /// Intersect over `A^c` without the empty set.
    Nonempty,
}

impl ClosureConvention {
    pub fn name(self) -> &'static str {
        match self {
            ClosureConvention::Full => "full",
            ClosureConvention::Nonempty => "nonempty",
        }
    }

    pub fn all() -> [ClosureConvention; 2] {
        [ClosureConvention::Full, ClosureConvention::Nonempty]
    }
}

impl std::str::FromStr for ClosureConvention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "full" | "full_complement" => Ok(ClosureConvention::Full),
            "nonempty" | "nonempty_complement" => Ok(ClosureConvention::Nonempty),
            _ => Err(format!("unknown convention {s:?} (expected full|nonempty)")),
        }
    }
}

/// A duplicate-free family of subsets in ascending mask order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetSystem {
    ground: GroundSet,
    members: Vec<Subset>,
}

impl SetSystem {
    /// Sorts and merges duplicates.
    pub fn new(ground: GroundSet, members: impl IntoIterator<Item = Subset>) -> Self {
        let mut members: Vec<Subset> = members.into_iter().collect();
        debug_assert!(members.iter().all(|m| m.ground() == ground));
        members.sort_unstable();
        members.dedup();
        SetSystem { ground, members }
    }

    pub fn empty(ground: GroundSet) -> Self {
        SetSystem {
            ground,
            members: Vec::new(),
        }
    }

    pub fn power_set(ground: GroundSet) -> Result<Self> {
        ground.check_enumerable()?;
        Ok(SetSystem {
            ground,
            members: ground.subsets().collect(),
        })
    }

    pub fn from_index_lists(ground: GroundSet, lists: &[Vec<usize>]) -> Result<Self> {
        let members = lists
            .iter()
            .map(|l| Subset::from_indices(ground, l))
            .collect::<Result<Vec<_>>>()?;
        Ok(SetSystem::new(ground, members))
    }

    /// Family whose members are the set bits of `family` (bit `m` = subset with mask `m`).
    pub fn from_family_mask(ground: GroundSet, family: u128) -> Self {
        let members = (0..128u64)
            .filter(|&m| family >> m & 1 == 1)
            .map(|m| Subset::raw(ground, m))
            .collect();
        SetSystem { ground, members }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &SetSystem) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn union_all(&self) -> Subset {
        self.members
            .iter()
            .fold(self.ground.empty(), |acc, &m| acc | m)
    }

    /// Intersection of all members; the empty family gives ∅.
    pub fn intersection_all(&self) -> Subset {
        intersect_all(self.ground, self.members.iter().copied())
    }

    pub fn covers(&self) -> bool {
        self.union_all().is_full()
    }

    /// `A∖{∅}`.
    pub fn nonempty(&self) -> SetSystem {
        self.filter(|m| !m.is_empty())
    }

    pub fn filter(&self, mut keep: impl FnMut(Subset) -> bool) -> SetSystem {
        SetSystem {
            ground: self.ground,
            members: self.members.iter().copied().filter(|&m| keep(m)).collect(),
        }
    }

    pub fn with(&self, s: Subset) -> SetSystem {
        SetSystem::new(self.ground, self.members.iter().copied().chain([s]))
    }

    pub fn union(&self, other: &SetSystem) -> SetSystem {
        SetSystem::new(self.ground, self.members.iter().chain(&other.members).copied())
    }

    /// Trace system `{M ∩ S : M ∈ A}`.
    pub fn trace(&self, s: Subset) -> SetSystem {
        SetSystem::new(self.ground, self.members.iter().map(|&m| m & s))
    }

    pub fn to_index_lists(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|m| m.to_vec()).collect()
    }

    /// Pairwise disjoint nonempty members covering the ground.
    pub fn is_partition(&self) -> bool {
        let mut seen = 0u64;
        for m in self.members.iter().filter(|m| !m.is_empty()) {
            if seen & m.bits() != 0 {
                return false;
            }
            seen |= m.bits();
        }
        seen == self.ground.mask()
    }
}

impl<'a> IntoIterator for &'a SetSystem {
    type Item = &'a Subset;
    type IntoIter = std::slice::Iter<'a, Subset>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn intersect_all(ground: GroundSet, sets: impl IntoIterator<Item = Subset>) -> Subset {
    let mut it = sets.into_iter();
    match it.next() {
        None => ground.empty(),
        Some(first) => it.fold(first, |acc, m| acc & m),
    }
}

/// `{Y∖M : M ∈ A}`.
pub fn complement_system(a: &SetSystem) -> SetSystem {
    SetSystem::new(a.ground, a.members.iter().map(|m| m.complement()))
}

/// Members of `A` meeting `x`.
pub fn selection(a: &SetSystem, x: Subset) -> SetSystem {
    a.filter(|m| m.intersects(x))
}

/// One of the eight hull constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HullKind {
    /// Intersection (`true`) or union of the selected family.
    pub j: bool,
    /// Superset family (`true`) or subset family.
    pub k: bool,
    /// Draw from the complement system (`true`) or the system itself.
    pub l: bool,
}

impl HullKind {
    pub const CLOSURE: HullKind = HullKind { j: true, k: true, l: true };
    pub const INTERIOR: HullKind = HullKind { j: false, k: false, l: false };

    pub fn new(j: u8, k: u8, l: u8) -> Option<HullKind> {
        (j <= 1 && k <= 1 && l <= 1).then_some(HullKind {
            j: j == 1,
            k: k == 1,
            l: l == 1,
        })
    }

    pub fn all() -> impl Iterator<Item = HullKind> {
        (0..8u8).map(|b| HullKind {
            j: b & 4 != 0,
            k: b & 2 != 0,
            l: b & 1 != 0,
        })
    }

    pub fn code(self) -> String {
        format!("{}{}{}", self.j as u8, self.k as u8, self.l as u8)
    }
}

/// A hull operator with its source family precomputed.
#[derive(Clone, Debug)]
pub struct Hull {
    ground: GroundSet,
    kind: HullKind,
    source: Vec<u64>,
}

impl Hull {
    pub fn new(a: &SetSystem, kind: HullKind, conv: ClosureConvention) -> Hull {
        let mask = a.ground.mask();
        let mut source: Vec<u64> = if kind.l {
            a.members.iter().map(|m| !m.bits() & mask).collect()
        } else {
            a.members.iter().map(|m| m.bits()).collect()
        };
        if kind.l && conv == ClosureConvention::Nonempty {
            source.retain(|&m| m != 0);
        }
        source.sort_unstable();
        source.dedup();
        Hull {
            ground: a.ground,
            kind,
            source,
        }
    }

    /// `cl_A`.
    pub fn closure(a: &SetSystem, conv: ClosureConvention) -> Hull {
        Hull::new(a, HullKind::CLOSURE, conv)
    }

    pub fn apply(&self, q: Subset) -> Subset {
        let q = q.bits();
        let selected = self.source.iter().copied().filter(|&m| {
            if self.kind.k {
                q & !m == 0
            } else {
                m & !q == 0
            }
        });
        let bits = if self.kind.j {
            let mut acc: Option<u64> = None;
            for m in selected {
                acc = Some(acc.map_or(m, |a| a & m));
            }
            acc.unwrap_or(0)
        } else {
            selected.fold(0, |a, m| a | m)
        };
        Subset::raw(self.ground, bits)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }
}

pub fn hull(a: &SetSystem, kind: HullKind, q: Subset, conv: ClosureConvention) -> Subset {
    Hull::new(a, kind, conv).apply(q)
}

pub fn closure(a: &SetSystem, z: Subset, conv: ClosureConvention) -> Subset {
    hull(a, HullKind::CLOSURE, z, conv)
}

/// `{cl_A(Z) : Z ⊆ Y}`.
pub fn closed_family(a: &SetSystem, conv: ClosureConvention) -> Result<SetSystem> {
    a.ground.check_enumerable()?;
    let cl = Hull::closure(a, conv);
    Ok(SetSystem::new(a.ground, a.ground.subsets().map(|z| cl.apply(z))))
}

/// `E(A) = {⋂ selection(A, X) : X ∈ A}`.
pub fn elementarize(a: &SetSystem) -> SetSystem {
    SetSystem::new(
        a.ground,
        a.members
            .iter()
            .map(|&x| intersect_all(a.ground, a.members.iter().copied().filter(|m| m.intersects(x)))),
    )
}

/// All unions of subfamilies, including the empty union ∅.
pub fn union_closure(a: &SetSystem) -> SetSystem {
    let mut seen: BTreeSet<Subset> = BTreeSet::new();
    seen.insert(a.ground.empty());
    seen.extend(a.members.iter().copied());
    let mut frontier: Vec<Subset> = seen.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for &m in &a.members {
            let u = x | m;
            if seen.insert(u) {
                frontier.push(u);
            }
        }
    }
    SetSystem::new(a.ground, seen)
}

pub fn is_basis_of(b: &SetSystem, t: &SetSystem) -> bool {
    b.ground == t.ground && union_closure(b).with(b.ground.empty()) == *t
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFlags {
    pub covers_ground: bool,
    pub is_topology: bool,
    pub is_self_dual: bool,
    pub is_complete: bool,
    pub is_quasitopology: bool,
    pub is_partition: bool,
    #[serde(rename = "is_T0")]
    pub is_t0: bool,
}

fn pairwise_closed(a: &SetSystem) -> (bool, bool) {
    let (mut unions, mut meets) = (true, true);
    for (i, &x) in a.members.iter().enumerate() {
        for &y in &a.members[i + 1..] {
            unions &= a.contains(x | y);
            meets &= a.contains(x & y);
        }
    }
    (unions, meets)
}

pub fn is_topology(a: &SetSystem) -> bool {
    a.contains(a.ground.empty()) && a.contains(a.ground.full()) && pairwise_closed(a) == (true, true)
}

pub fn is_self_dual(a: &SetSystem) -> bool {
    complement_system(a) == *a
}

/// Only ∅ has empty closure.
pub fn is_complete(a: &SetSystem, conv: ClosureConvention) -> Result<bool> {
    a.ground.check_enumerable()?;
    let cl = Hull::closure(a, conv);
    Ok(a.ground.subsets().all(|z| z.is_empty() || !cl.apply(z).is_empty()))
}

pub fn is_t0(a: &SetSystem) -> bool {
    let n = a.ground.size();
    (0..n).all(|x| {
        (x + 1..n).all(|y| a.members.iter().any(|m| m.contains(x) != m.contains(y)))
    })
}

pub fn classify(a: &SetSystem, conv: ClosureConvention) -> Result<SystemFlags> {
    let complete = is_complete(a, conv)?;
    let (unions, meets) = pairwise_closed(a);
    Ok(SystemFlags {
        covers_ground: a.covers(),
        is_topology: is_topology(a),
        is_self_dual: is_self_dual(a),
        is_complete: complete,
        is_quasitopology: complete && unions && meets,
        is_partition: a.is_partition(),
        is_t0: is_t0(a),
    })
}

/// `(un(A), ov(A))`: subsets containing no / some nonempty member of `A`.
pub fn un_ov(a: &SetSystem) -> Result<(SetSystem, SetSystem)> {
    a.ground.check_enumerable()?;
    let nonempty: Vec<Subset> = a.nonempty().members;
    let (ov, un): (Vec<Subset>, Vec<Subset>) = a
        .ground
        .subsets()
        .partition(|&x| nonempty.iter().any(|m| m.is_subset(x)));
    Ok((SetSystem::new(a.ground, un), SetSystem::new(a.ground, ov)))
}

/// `un(A^c)`: the complement-free subsets.
pub fn complement_free(a: &SetSystem) -> Result<SetSystem> {
    Ok(un_ov(&complement_system(a))?.0)
}

pub fn is_hybrid(a: &SetSystem, b: &SetSystem) -> bool {
    let both = a.union(&complement_system(a));
    b.is_subfamily_of(&both) && complement_system(b).is_subfamily_of(&both)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationClass {
    pub members: SetSystem,
    pub core: Subset,
}

/// The power set grouped by closure value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationPartition {
    pub classes: BTreeMap<Subset, FibrationClass>,
    /// Whether `{Q ∪ C_∩ : Q ∈ un(A^c), Q ⊆ C}` reproduces every class.
    pub representation_agrees: bool,
}

impl FibrationPartition {
    /// Closed sets whose class differs from the complement-free representation.
    pub fn representation(&self, a: &SetSystem) -> Result<BTreeMap<Subset, SetSystem>> {
        let un = complement_free(a)?;
        Ok(self
            .classes
            .iter()
            .map(|(&c, class)| {
                let rep = SetSystem::new(
                    a.ground,
                    un.iter().filter(|q| q.is_subset(c)).map(|&q| q | class.core),
                );
                (c, rep)
            })
            .collect())
    }

    pub fn class_family(&self) -> BTreeSet<&SetSystem> {
        self.classes.values().map(|c| &c.members).collect()
    }
}

pub fn product_fibration(a: &SetSystem, conv: ClosureConvention) -> Result<FibrationPartition> {
    a.ground.check_enumerable()?;
    let cl = Hull::closure(a, conv);
    let mut groups: BTreeMap<Subset, Vec<Subset>> = BTreeMap::new();
    for z in a.ground.subsets() {
        groups.entry(cl.apply(z)).or_default().push(z);
    }
    let classes: BTreeMap<Subset, FibrationClass> = groups
        .into_iter()
        .map(|(c, ms)| {
            let core = intersect_all(a.ground, ms.iter().copied());
            (
                c,
                FibrationClass {
                    members: SetSystem::new(a.ground, ms),
                    core,
                },
            )
        })
        .collect();
    let mut fib = FibrationPartition {
        classes,
        representation_agrees: false,
    };
    let rep = fib.representation(a)?;
    fib.representation_agrees = rep.iter().all(|(c, r)| fib.classes[c].members == *r);
    Ok(fib)
}

pub fn sym_diff(x: Subset, y: Subset) -> Result<Subset> {
    x.sym_diff(y)
}

/// Componentwise symmetric difference of aligned tuples, folded by union.
pub fn sym_diff_tuple(xs: &[Subset], ys: &[Subset]) -> Result<Subset> {
    let ground = xs.first().or(ys.first()).map(|s| s.ground());
    let mut acc: Option<Subset> = None;
    for (x, y) in xs.iter().zip(ys) {
        let d = x.sym_diff(*y)?;
        acc = Some(acc.map_or(d, |a| a | d));
    }
    Ok(acc.unwrap_or_else(|| ground.map_or_else(|| GroundSet::new(1).unwrap().empty(), |g| g.empty())))
}
