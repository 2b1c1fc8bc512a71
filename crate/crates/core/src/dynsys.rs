//! Permutations of the ground, the groups they generate, orbits and
//! invariant topologies.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::setsys::{union_closure, SetSystem};
use crate::subset::{GroundSet, Subset};

/// Default ceiling on generated group order (7!·2).
pub const DEFAULT_GROUP_CAP: usize = 10080;

/// A permutation; `image[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Autobolism {
    image: Vec<u8>,
    ground: GroundSet,
}

impl Autobolism {
    pub fn new(ground: GroundSet, image: &[usize]) -> Result<Self> {
        if image.len() != ground.size() {
            return Err(Error::NotBijective);
        }
        let mut seen = 0u64;
        for &x in image {
            if x >= ground.size() {
                return Err(Error::ElementOutOfRange {
                    element: x,
                    size: ground.size(),
                });
            }
            seen |= 1 << x;
        }
        if seen != ground.mask() {
            return Err(Error::NotBijective);
        }
        Ok(Autobolism {
            image: image.iter().map(|&x| x as u8).collect(),
            ground,
        })
    }

    pub fn identity(ground: GroundSet) -> Self {
        Autobolism {
            image: (0..ground.size() as u8).collect(),
            ground,
        }
    }

    /// Transposition of `a` and `b`.
    pub fn swap(ground: GroundSet, a: usize, b: usize) -> Result<Self> {
        let mut img: Vec<usize> = ground.elements().collect();
        if a >= img.len() || b >= img.len() {
            return Err(Error::ElementOutOfRange {
                element: a.max(b),
                size: ground.size(),
            });
        }
        img.swap(a, b);
        Autobolism::new(ground, &img)
    }

    /// `i ↦ i+1 mod n`.
    pub fn rotation(ground: GroundSet) -> Self {
        let n = ground.size();
        let img: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Autobolism::new(ground, &img).expect("rotation is bijective")
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

    /// Forward image of a subset.
    pub fn apply_set(&self, s: Subset) -> Subset {
        let bits = s.indices().fold(0u64, |acc, x| acc | 1 << self.image[x]);
        Subset::raw(self.ground, bits)
    }

    pub fn apply_system(&self, a: &SetSystem) -> SetSystem {
        SetSystem::new(a.ground(), a.iter().map(|&m| self.apply_set(m)))
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &Autobolism) -> Autobolism {
        Autobolism {
            image: other.image.iter().map(|&x| self.image[x as usize]).collect(),
            ground: self.ground,
        }
    }

    pub fn inverse(&self) -> Autobolism {
        let mut image = vec![0u8; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x as usize] = i as u8;
        }
        Autobolism {
            image,
            ground: self.ground,
        }
    }

    /// Order of the cyclic group generated by `self`.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.then_after(&p);
            k += 1;
        }
        k
    }

    /// `self^0, self^1, .., self^(order-1)`.
    pub fn powers(&self) -> Vec<Autobolism> {
        let mut out = vec![Autobolism::identity(self.ground)];
        let mut p = self.clone();
        while !p.is_identity() {
            out.push(p.clone());
            p = self.then_after(&p);
        }
        out
    }
}

impl fmt::Debug for Autobolism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.image())
    }
}

/// `f ∘ g`.
pub fn compose(f: &Autobolism, g: &Autobolism) -> Result<Autobolism> {
    f.ground.check_same(g.ground)?;
    Ok(f.then_after(g))
}

pub fn invert(f: &Autobolism) -> Autobolism {
    f.inverse()
}

fn common_ground(gens: &[Autobolism]) -> Result<GroundSet> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    for g in gens {
        first.ground.check_same(g.ground)?;
    }
    Ok(first.ground)
}

/// A permutation group with the generators it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseGroup {
    elements: Vec<Autobolism>,
    generators: Vec<Autobolism>,
}

impl PhaseGroup {
    /// Elements in breadth-first discovery order, identity first.
    pub fn elements(&self) -> &[Autobolism] {
        &self.elements
    }

    pub fn generators(&self) -> &[Autobolism] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn ground(&self) -> GroundSet {
        self.elements[0].ground
    }

    pub fn contains(&self, f: &Autobolism) -> bool {
        self.elements.contains(f)
    }
}

/// Breadth-first closure of the generators and their inverses from the identity.
pub fn generate_group(gens: &[Autobolism], cap: usize) -> Result<PhaseGroup> {
    let ground = common_ground(gens)?;
    let mut steps: Vec<Autobolism> = Vec::new();
    for g in gens {
        for s in [g.clone(), g.inverse()] {
            if !steps.contains(&s) {
                steps.push(s);
            }
        }
    }
    let id = Autobolism::identity(ground);
    let mut seen: HashSet<Autobolism> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for s in &steps {
            let next = s.then_after(&e);
            if seen.insert(next.clone()) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "group order",
                        size: elements.len() + 1,
                        limit: cap,
                    });
                }
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(PhaseGroup {
        elements,
        generators: gens.to_vec(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowMode {
    /// Time ranges over the generated group.
    Group,
    /// Time ranges over the integers via powers of one generator.
    Cyclic,
}

/// A permutation flow: a generated group, or a single generator with integer time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteFlow {
    mode: FlowMode,
    group: PhaseGroup,
}

impl DiscreteFlow {
    pub fn cyclic(generator: Autobolism) -> Self {
        let elements = generator.powers();
        DiscreteFlow {
            mode: FlowMode::Cyclic,
            group: PhaseGroup {
                elements,
                generators: vec![generator],
            },
        }
    }

    pub fn group(gens: &[Autobolism], cap: usize) -> Result<Self> {
        Ok(DiscreteFlow {
            mode: FlowMode::Group,
            group: generate_group(gens, cap)?,
        })
    }

    pub fn from_group(group: PhaseGroup) -> Self {
        DiscreteFlow {
            mode: FlowMode::Group,
            group,
        }
    }

    pub fn mode(&self) -> FlowMode {
        self.mode
    }

    pub fn is_cyclic(&self) -> bool {
        self.mode == FlowMode::Cyclic
    }

    pub fn ground(&self) -> GroundSet {
        self.group.ground()
    }

    pub fn generators(&self) -> &[Autobolism] {
        &self.group.generators
    }

    /// For cyclic flows: the powers `0..period` in order.
    pub fn phase_group(&self) -> &PhaseGroup {
        &self.group
    }
}

/// `{g(z) : g in the flow}`.
pub fn orbit(flow: &DiscreteFlow, z: usize) -> Subset {
    orbit_of(flow.generators(), flow.ground(), z)
}

fn orbit_of(gens: &[Autobolism], ground: GroundSet, z: usize) -> Subset {
    let mut seen = 1u64 << z;
    let mut stack = vec![z];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if seen >> y & 1 == 0 {
                seen |= 1 << y;
                stack.push(y);
            }
        }
    }
    Subset::raw(ground, seen)
}

fn orbits_of(gens: &[Autobolism], ground: GroundSet) -> SetSystem {
    let mut covered = 0u64;
    let mut blocks = Vec::new();
    for x in ground.elements() {
        if covered >> x & 1 == 0 {
            let o = orbit_of(gens, ground, x);
            covered |= o.bits();
            blocks.push(o);
        }
    }
    SetSystem::new(ground, blocks)
}

pub fn orbit_partition(flow: &DiscreteFlow) -> SetSystem {
    orbits_of(flow.generators(), flow.ground())
}

/// Union of the orbits of all points of `s`.
pub fn saturate(orbits: &SetSystem, s: Subset) -> Subset {
    orbits
        .iter()
        .filter(|o| o.intersects(s))
        .fold(s.ground().empty(), |acc, &o| acc | o)
}

/// Orbit partition of `⟨Ξ⟩`: the basis of the common invariant topology.
pub fn invariant_basis(gens: &[Autobolism]) -> Result<SetSystem> {
    let ground = common_ground(gens)?;
    Ok(orbits_of(gens, ground))
}

/// `T̂(Ξ)`: all unions of orbits, including ∅.
pub fn invariant_topology(gens: &[Autobolism]) -> Result<SetSystem> {
    let basis = invariant_basis(gens)?;
    Ok(union_closure(&basis))
}

pub fn is_invariant(gens: &[Autobolism], x: Subset) -> bool {
    gens.iter().all(|g| g.apply_set(x) == x)
}

/// First element of `⟨Ξ⟩` in discovery order with `g(a) ∩ b ≠ ∅`.
pub fn coherence_witness(gens: &[Autobolism], a: Subset, b: Subset) -> Result<Option<Autobolism>> {
    let group = generate_group(gens, DEFAULT_GROUP_CAP)?;
    Ok(group_witness(&group, a, b).cloned())
}

pub fn group_witness<'g>(group: &'g PhaseGroup, a: Subset, b: Subset) -> Option<&'g Autobolism> {
    group.elements.iter().find(|g| g.apply_set(a).intersects(b))
}

/// Whether the listed maps are closed under composition.
pub fn is_phasic(flows: &[Autobolism]) -> bool {
    flows
        .iter()
        .all(|f| flows.iter().all(|g| flows.contains(&f.then_after(g))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn p(img: &[usize]) -> Autobolism {
        Autobolism::new(g(img.len()), img).unwrap()
    }

    fn s(n: usize, xs: &[usize]) -> Subset {
        Subset::from_indices(g(n), xs).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(Autobolism::new(g(3), &[0, 0, 1]), Err(Error::NotBijective));
        assert_eq!(Autobolism::new(g(3), &[0, 1]), Err(Error::NotBijective));
    }

    #[test]
    fn composition_and_inverse() {
        let swap = p(&[1, 0, 2]);
        let rot = p(&[1, 2, 0]);
        let id = Autobolism::identity(g(3));
        assert_eq!(compose(&swap, &swap).unwrap(), id);
        assert_eq!(compose(&rot, &rot).unwrap(), p(&[2, 0, 1]));
        assert_eq!(compose(&rot, &id).unwrap(), rot);
        assert_eq!(invert(&rot), p(&[2, 0, 1]));
        assert_eq!(invert(&swap), swap);
        assert_eq!(invert(&id), id);
        assert!(compose(&swap, &p(&[0, 1])).is_err());
    }

    #[test]
    fn group_orders() {
        let swap01 = p(&[1, 0, 2]);
        let swap12 = p(&[0, 2, 1]);
        assert_eq!(generate_group(&[swap01.clone()], DEFAULT_GROUP_CAP).unwrap().order(), 2);
        assert_eq!(generate_group(&[swap01.clone(), swap12.clone()], DEFAULT_GROUP_CAP).unwrap().order(), 6);
        assert_eq!(generate_group(&[Autobolism::identity(g(3))], DEFAULT_GROUP_CAP).unwrap().order(), 1);
        assert!(matches!(
            generate_group(&[swap01, swap12], 5),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(generate_group(&[], 10), Err(Error::EmptyGenerators));
    }

    #[test]
    fn orbits() {
        let flow = DiscreteFlow::cyclic(p(&[1, 0, 2]));
        assert_eq!(orbit(&flow, 0), s(3, &[0, 1]));
        assert_eq!(orbit(&flow, 2), s(3, &[2]));
        assert_eq!(orbit_partition(&flow), SetSystem::new(g(3), [s(3, &[0, 1]), s(3, &[2])]));
        let s3 = DiscreteFlow::group(&[p(&[1, 0, 2]), p(&[0, 2, 1])], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(orbit(&s3, 1), g(3).full());
        let id = DiscreteFlow::cyclic(Autobolism::identity(g(3)));
        assert_eq!(orbit_partition(&id).len(), 3);
    }

    #[test]
    fn invariant_topologies() {
        let t = invariant_topology(&[p(&[1, 0, 2])]).unwrap();
        assert_eq!(t.to_index_lists(), vec![vec![], vec![0, 1], vec![2], vec![0, 1, 2]]);
        assert_eq!(invariant_basis(&[p(&[1, 2, 0])]).unwrap().to_index_lists(), vec![vec![0, 1, 2]]);
        assert_eq!(
            invariant_topology(&[Autobolism::identity(g(3))]).unwrap(),
            SetSystem::power_set(g(3)).unwrap()
        );
    }

    #[test]
    fn invariance() {
        let swap = [p(&[1, 0, 2])];
        assert!(is_invariant(&swap, s(3, &[0, 1])));
        assert!(!is_invariant(&swap, s(3, &[0])));
        assert!(is_invariant(&swap, g(3).empty()));
        assert!(is_invariant(&swap, g(3).full()));
    }

    #[test]
    fn witnesses() {
        let swap = p(&[1, 0, 2]);
        let w = coherence_witness(&[swap.clone()], s(3, &[0]), s(3, &[1])).unwrap();
        assert_eq!(w, Some(swap.clone()));
        let w = coherence_witness(&[swap.clone()], s(3, &[0, 2]), s(3, &[2])).unwrap();
        assert_eq!(w, Some(Autobolism::identity(g(3))));
        assert_eq!(coherence_witness(&[swap], s(3, &[0]), s(3, &[2])).unwrap(), None);
    }

    #[test]
    fn phasic() {
        let id = Autobolism::identity(g(3));
        assert!(is_phasic(&[id.clone(), p(&[1, 0, 2])]));
        assert!(!is_phasic(&[p(&[1, 0, 2]), p(&[0, 2, 1])]));
        assert!(is_phasic(&[id]));
    }

    #[test]
    fn two_point_swap_alone_is_aphasic_but_coherent() {
        let swap = p(&[1, 0]);
        assert!(!is_phasic(&[swap.clone()]));
        assert_eq!(invariant_topology(&[swap.clone()]).unwrap().to_index_lists(), vec![vec![], vec![0, 1]]);
        assert!(coherence_witness(&[swap], s(2, &[0]), s(2, &[1])).unwrap().is_some());
    }

    #[test]
    fn powers_cycle() {
        let rot = p(&[1, 2, 3, 0]);
        assert_eq!(rot.order(), 4);
        assert_eq!(rot.powers().len(), 4);
        assert_eq!(p(&[1, 0, 3, 4, 2]).order(), 6);
    }
}
