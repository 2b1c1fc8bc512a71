//! Cantor continuity of arbitrary self-maps with respect to a set system.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynsys::{generate_group, Autobolism, DEFAULT_GROUP_CAP};
use crate::error::{Error, Result};
use crate::setsys::{complement_free, complement_system, product_fibration, ClosureConvention, Hull, SetSystem};
use crate::subset::{GroundSet, Subset};
use crate::instance::WireInstance;
use crate::verdict::Verdict;

/// A self-map of the ground, not necessarily bijective.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndoFunction {
    image: Vec<u8>,
    ground: GroundSet,
}

impl EndoFunction {
    pub fn new(ground: GroundSet, image: &[usize]) -> Result<Self> {
        if image.len() != ground.size() {
            return Err(Error::Validation(format!(
                "function has {} values for ground of size {}",
                image.len(),
                ground.size()
            )));
        }
        if let Some(&x) = image.iter().find(|&&x| x >= ground.size()) {
            return Err(Error::ElementOutOfRange {
                element: x,
                size: ground.size(),
            });
        }
        Ok(EndoFunction {
            image: image.iter().map(|&x| x as u8).collect(),
            ground,
        })
    }

    pub fn constant(ground: GroundSet, value: usize) -> Result<Self> {
        EndoFunction::new(ground, &vec![value; ground.size()])
    }

    pub fn identity(ground: GroundSet) -> Self {
        EndoFunction::from(&Autobolism::identity(ground))
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn image(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize).collect()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    pub fn apply_set(&self, s: Subset) -> Subset {
        let bits = s.indices().fold(0u64, |acc, x| acc | 1 << self.image[x]);
        Subset::raw(self.ground, bits)
    }

    /// Total preimage `{x : f(x) ∈ s}`.
    pub fn preimage(&self, s: Subset) -> Subset {
        let bits = self
            .image
            .iter()
            .enumerate()
            .filter(|(_, &y)| s.contains(y as usize))
            .fold(0u64, |acc, (x, _)| acc | 1 << x);
        Subset::raw(self.ground, bits)
    }

    pub fn is_bijective(&self) -> bool {
        self.image.iter().fold(0u64, |acc, &y| acc | 1 << y) == self.ground.mask()
    }

    pub fn to_autobolism(&self) -> Result<Autobolism> {
        Autobolism::new(self.ground, &self.image())
    }
}

impl From<&Autobolism> for EndoFunction {
    fn from(p: &Autobolism) -> Self {
        EndoFunction {
            image: p.image().iter().map(|&x| x as u8).collect(),
            ground: p.ground(),
        }
    }
}

impl fmt::Debug for EndoFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.image())
    }
}

fn same_ground(f: &EndoFunction, a: &SetSystem) -> Result<()> {
    f.ground.check_same(a.ground())
}

/// `f(cl_A(X)) Δ cl_A(f(X))`.
pub fn op_commutator(f: &EndoFunction, a: &SetSystem, x: Subset, conv: ClosureConvention) -> Result<Subset> {
    same_ground(f, a)?;
    f.ground.check_same(x.ground())?;
    let cl = Hull::closure(a, conv);
    Ok(f.apply_set(cl.apply(x)) ^ cl.apply(f.apply_set(x)))
}

fn commutes_with(f: &EndoFunction, cl: &Hull) -> bool {
    f.ground
        .subsets()
        .all(|x| f.apply_set(cl.apply(x)) == cl.apply(f.apply_set(x)))
}

/// The commutator vanishes on every subset.
pub fn is_commutative_cantor(f: &EndoFunction, a: &SetSystem, conv: ClosureConvention) -> Result<bool> {
    same_ground(f, a)?;
    f.ground.check_enumerable()?;
    Ok(commutes_with(f, &Hull::closure(a, conv)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// `f ∈ C_+(A)` or `f ∈ C_−(A)`, quantifying over nonempty members only.
pub fn cantor_membership(f: &EndoFunction, a: &SetSystem, sign: Sign) -> bool {
    let members = a.nonempty();
    members.iter().all(|&m| {
        members.iter().any(|&mbar| match sign {
            Sign::Plus => f.apply_set(mbar).is_subset(m),
            Sign::Minus => mbar.is_subset(f.apply_set(m)),
        })
    })
}

/// Complement-free sets map to complement-free sets.
pub fn preserves_unfamily(f: &EndoFunction, a: &SetSystem) -> Result<bool> {
    same_ground(f, a)?;
    let un = complement_free(a)?;
    Ok(un.iter().all(|&q| un.contains(f.apply_set(q))))
}

/// Mapping each fibration class elementwise through `f` reproduces the class family.
pub fn fibration_integrity(f: &EndoFunction, a: &SetSystem, conv: ClosureConvention) -> Result<bool> {
    same_ground(f, a)?;
    let fib = product_fibration(a, conv)?;
    let original = fib.class_family();
    let mapped: BTreeSet<SetSystem> = fib
        .classes
        .values()
        .map(|c| SetSystem::new(a.ground(), c.members.iter().map(|&t| f.apply_set(t))))
        .collect();
    Ok(mapped.len() == original.len() && mapped.iter().all(|m| original.contains(m)))
}

/// Every co-singleton `Y∖{x}` is a member.
pub fn is_trivially_commutative(a: &SetSystem) -> bool {
    let g = a.ground();
    g.elements().all(|x| a.contains(g.full() - Subset::raw(g, 1 << x)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Explication {
    pub lhs: bool,
    #[serde(rename = "rhs_A")]
    pub rhs_a: bool,
    #[serde(rename = "rhs_Ac")]
    pub rhs_ac: bool,
}

impl Explication {
    pub fn agrees(&self) -> bool {
        self.lhs == self.rhs_a && self.lhs == self.rhs_ac
    }
}

fn in_both(f: &EndoFunction, a: &SetSystem) -> bool {
    cantor_membership(f, a, Sign::Plus) && cantor_membership(f, a, Sign::Minus)
}

/// Commutation against membership in `C_+ ∩ C_−` for `A` and for `A^c`.
pub fn explication_check(f: &EndoFunction, a: &SetSystem, conv: ClosureConvention) -> Result<Explication> {
    Ok(Explication {
        lhs: is_commutative_cantor(f, a, conv)?,
        rhs_a: in_both(f, a),
        rhs_ac: in_both(f, &complement_system(a)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseChain {
    pub commutes: bool,
    pub plus_a: bool,
    pub minus_a: bool,
    pub plus_ac: bool,
    pub minus_ac: bool,
}

impl PhaseChain {
    pub fn values(&self) -> [bool; 5] {
        [self.commutes, self.plus_a, self.minus_a, self.plus_ac, self.minus_ac]
    }

    pub fn consistent(&self) -> bool {
        self.values().iter().all(|&v| v == self.commutes)
    }
}

/// The five statements of the phase-flow chain for the generated group.
pub fn phase_chain(gens: &[Autobolism], a: &SetSystem, conv: ClosureConvention) -> Result<PhaseChain> {
    let group = generate_group(gens, DEFAULT_GROUP_CAP)?;
    group.ground().check_same(a.ground())?;
    a.ground().check_enumerable()?;
    let cl = Hull::closure(a, conv);
    let ac = complement_system(a);
    let maps: Vec<EndoFunction> = group.elements().iter().map(EndoFunction::from).collect();
    let all = |p: &dyn Fn(&EndoFunction) -> bool| maps.iter().all(p);
    Ok(PhaseChain {
        commutes: all(&|f| commutes_with(f, &cl)),
        plus_a: all(&|f| cantor_membership(f, a, Sign::Plus)),
        minus_a: all(&|f| cantor_membership(f, a, Sign::Minus)),
        plus_ac: all(&|f| cantor_membership(f, &ac, Sign::Plus)),
        minus_ac: all(&|f| cantor_membership(f, &ac, Sign::Minus)),
    })
}

/// Holds iff all five statements of [`phase_chain`] agree.
pub fn phase_chain_check(gens: &[Autobolism], a: &SetSystem, conv: ClosureConvention) -> Result<Verdict> {
    if !a.covers() {
        return Err(Error::Validation("system does not cover the ground".into()));
    }
    let chain = phase_chain(gens, a, conv)?;
    let note = format!(
        "commutes={} C+(A)={} C-(A)={} C+(Ac)={} C-(Ac)={}",
        chain.commutes, chain.plus_a, chain.minus_a, chain.plus_ac, chain.minus_ac
    );
    Ok(if chain.consistent() {
        Verdict::holds(note)
    } else {
        let witness = WireInstance::new(a.ground())
            .convention(conv)
            .system("A", a)
            .group_flow("F", gens);
        Verdict::fails(witness, note)
    })
}
