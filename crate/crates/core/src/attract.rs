//! Free and topological attractors, coherence variants, pre-rooms and
//! flow transport.

use serde::{Deserialize, Serialize};

use crate::dynsys::{orbit_partition, saturate, Autobolism, DiscreteFlow, DEFAULT_GROUP_CAP};
use crate::error::{Error, Result};
use crate::setsys::{closed_family, ClosureConvention, Hull, HullKind, SetSystem};
use crate::subset::Subset;

/// Default cap on the number of invariant sets (2^20).
pub const DEFAULT_INVARIANT_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoherenceVariant {
    /// Pre-room neighbourhoods of the two trace sets meet.
    Weak,
    /// Some flow time carries one trace set into the other.
    #[default]
    Conventional,
    /// Infinitely many positive times do.
    MonoPlus,
    /// Infinitely many negative times do.
    MonoMinus,
}

impl CoherenceVariant {
    pub fn name(self) -> &'static str {
        match self {
            CoherenceVariant::Weak => "weak",
            CoherenceVariant::Conventional => "conventional",
            CoherenceVariant::MonoPlus => "mono_plus",
            CoherenceVariant::MonoMinus => "mono_minus",
        }
    }

    pub fn all() -> [CoherenceVariant; 4] {
        [
            CoherenceVariant::Weak,
            CoherenceVariant::Conventional,
            CoherenceVariant::MonoPlus,
            CoherenceVariant::MonoMinus,
        ]
    }
}

impl std::str::FromStr for CoherenceVariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CoherenceVariant::all()
            .into_iter()
            .find(|v| v.name() == s || v.name().replace('_', "-") == s)
            .ok_or_else(|| format!("unknown coherence variant {s:?}"))
    }
}

/// Parameters of an attractor computation.
#[derive(Clone, Debug)]
pub struct AttractorQuery {
    pub flow: DiscreteFlow,
    /// Relativizing system; trace pairs are drawn from it.
    pub covering: SetSystem,
    pub conv: ClosureConvention,
    pub variant: CoherenceVariant,
    /// Only members of this system are candidate attractors.
    pub cadence: Option<SetSystem>,
    /// Replaces `covering` as the source of trace pairs.
    pub coherence: Option<SetSystem>,
}

impl AttractorQuery {
    pub fn new(flow: DiscreteFlow, covering: SetSystem) -> Self {
        AttractorQuery {
            flow,
            covering,
            conv: ClosureConvention::Full,
            variant: CoherenceVariant::Conventional,
            cadence: None,
            coherence: None,
        }
    }

    pub fn conv(mut self, conv: ClosureConvention) -> Self {
        self.conv = conv;
        self
    }

    pub fn variant(mut self, variant: CoherenceVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn cadence(mut self, cadence: SetSystem) -> Self {
        self.cadence = Some(cadence);
        self
    }

    pub fn coherence(mut self, coherence: SetSystem) -> Self {
        self.coherence = Some(coherence);
        self
    }

    /// The query for `@(Φ, overline A)`: closed sets of `A` as cadence.
    pub fn closed_cadence(flow: DiscreteFlow, a: &SetSystem, conv: ClosureConvention) -> Result<Self> {
        let cadence = closed_family(a, conv)?;
        Ok(AttractorQuery::new(flow, a.clone()).conv(conv).cadence(cadence))
    }

    fn validate(&self) -> Result<()> {
        let g = self.flow.ground();
        g.check_same(self.covering.ground())?;
        for s in self.cadence.iter().chain(&self.coherence) {
            g.check_same(s.ground())?;
        }
        if !self.covering.covers() {
            return Err(Error::Validation("covering system does not cover the ground".into()));
        }
        Ok(())
    }

    fn trace_pairs_source(&self) -> &SetSystem {
        self.coherence.as_ref().unwrap_or(&self.covering)
    }
}

/// All nonempty unions of orbits.
pub fn invariant_sets(flow: &DiscreteFlow, cap: usize) -> Result<SetSystem> {
    let blocks = orbit_partition(flow);
    let k = blocks.len();
    if k >= usize::BITS as usize || 1usize << k > cap {
        return Err(Error::CapExceeded {
            what: "invariant sets",
            size: k,
            limit: cap.max(1).ilog2() as usize,
        });
    }
    let ground = flow.ground();
    let sets = (1u64..1 << k).map(|pick| {
        blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> i & 1 == 1)
            .fold(ground.empty(), |acc, (_, &b)| acc | b)
    });
    Ok(SetSystem::new(ground, sets))
}

fn check_candidate(flow: &DiscreteFlow, theta: Subset) -> Result<()> {
    if theta.is_empty() {
        return Err(Error::EmptySet);
    }
    if !crate::dynsys::is_invariant(flow.generators(), theta) {
        return Err(Error::NotInvariant(theta.to_string()));
    }
    Ok(())
}

/// Conventional coherence on the trace system of `Θ`.
pub fn is_free_attractor(q: &AttractorQuery, theta: Subset) -> Result<bool> {
    q.validate()?;
    check_candidate(&q.flow, theta)?;
    let orbits = orbit_partition(&q.flow);
    Ok(conventional(&orbits, &q.trace_pairs_source().trace(theta).nonempty()))
}

fn conventional(orbits: &SetSystem, traces: &SetSystem) -> bool {
    traces.iter().all(|&a| {
        let reach = saturate(orbits, a);
        traces.iter().all(|&b| reach.intersects(b))
    })
}

/// Witness among the positive (or negative) times of one period.
fn monotone(flow: &DiscreteFlow, traces: &SetSystem, forward: bool) -> bool {
    let gen = &flow.generators()[0];
    let step = if forward { gen.clone() } else { gen.inverse() };
    let period = step.powers();
    let times: Vec<&Autobolism> = period.iter().cycle().skip(1).take(period.len()).collect();
    traces
        .iter()
        .all(|&a| traces.iter().all(|&b| times.iter().any(|g| g.apply_set(a).intersects(b))))
}

fn weak(rooms: &SetSystem, traces: &SetSystem) -> bool {
    let hood = |s: Subset| {
        rooms
            .iter()
            .filter(|r| r.intersects(s))
            .fold(s.ground().empty(), |acc, &r| acc | r)
    };
    traces.iter().all(|&a| {
        let ha = hood(a);
        traces.iter().all(|&b| ha.intersects(hood(b)))
    })
}

/// Evaluates the query's coherence variant on `χ`.
pub fn coherence_variant(q: &AttractorQuery, chi: Subset) -> Result<bool> {
    q.validate()?;
    check_candidate(&q.flow, chi)?;
    let traces = q.trace_pairs_source().trace(chi).nonempty();
    variant_on(q, &traces, &Precomputed::new(q)?)
}

struct Precomputed {
    orbits: SetSystem,
    rooms: Option<SetSystem>,
}

impl Precomputed {
    fn new(q: &AttractorQuery) -> Result<Self> {
        let rooms = match q.variant {
            CoherenceVariant::Weak => Some(pre_rooms(&q.flow, &q.covering, q.conv)?.0),
            _ => None,
        };
        Ok(Precomputed {
            orbits: orbit_partition(&q.flow),
            rooms,
        })
    }
}

fn variant_on(q: &AttractorQuery, traces: &SetSystem, pre: &Precomputed) -> Result<bool> {
    match q.variant {
        CoherenceVariant::Conventional => Ok(conventional(&pre.orbits, traces)),
        CoherenceVariant::Weak => Ok(weak(pre.rooms.as_ref().expect("weak rooms"), traces)),
        v @ (CoherenceVariant::MonoPlus | CoherenceVariant::MonoMinus) => {
            if !q.flow.is_cyclic() {
                return Err(Error::VariantUnsupported(v.name()));
            }
            Ok(monotone(&q.flow, traces, v == CoherenceVariant::MonoPlus))
        }
    }
}

/// `@(Φ, A)` under the query's variant and cadence.
pub fn free_attractors(q: &AttractorQuery) -> Result<SetSystem> {
    q.validate()?;
    if matches!(q.variant, CoherenceVariant::MonoPlus | CoherenceVariant::MonoMinus) && !q.flow.is_cyclic() {
        return Err(Error::VariantUnsupported(q.variant.name()));
    }
    let pre = Precomputed::new(q)?;
    let source = q.trace_pairs_source();
    let candidates = invariant_sets(&q.flow, DEFAULT_INVARIANT_CAP)?;
    let mut out = Vec::new();
    for &theta in &candidates {
        if q.cadence.as_ref().is_some_and(|c| !c.contains(theta)) {
            continue;
        }
        if variant_on(q, &source.trace(theta).nonempty(), &pre)? {
            out.push(theta);
        }
    }
    Ok(SetSystem::new(q.flow.ground(), out))
}

/// Family-wise intersection of a list of systems.
pub fn common_members(systems: &[SetSystem]) -> Option<SetSystem> {
    let first = systems.first()?;
    Some(first.filter(|m| systems[1..].iter().all(|s| s.contains(m))))
}

/// Attractors of a triple (topologies, coherence system, cadence system).
pub fn topological_attractors(
    topologies: &[SetSystem],
    coherence: &SetSystem,
    cadence: &SetSystem,
) -> Result<SetSystem> {
    let ground = coherence.ground();
    for t in topologies {
        ground.check_same(t.ground())?;
    }
    ground.check_same(cadence.ground())?;
    let Some(common) = common_members(topologies) else {
        return Ok(SetSystem::empty(ground));
    };
    let z = common.union_all();
    let thetas: Vec<Subset> = common.nonempty().members().to_vec();
    let pairs: Vec<Subset> = coherence.nonempty().members().to_vec();
    Ok(cadence.filter(|k| {
        if k.is_empty() || !k.is_subset(z) {
            return false;
        }
        let inside: Vec<Subset> = pairs.iter().copied().filter(|p| p.is_subset(k)).collect();
        inside.iter().all(|&a| {
            inside
                .iter()
                .all(|&b| thetas.iter().any(|t| t.intersects(a) && t.intersects(b)))
        })
    }))
}

/// `[[Φ]]_Z = {cl_Z(orbit(x))}` and whether it partitions the ground.
pub fn pre_rooms(flow: &DiscreteFlow, z: &SetSystem, conv: ClosureConvention) -> Result<(SetSystem, bool)> {
    flow.ground().check_same(z.ground())?;
    let cl = Hull::closure(z, conv);
    let rooms = SetSystem::new(z.ground(), orbit_partition(flow).iter().map(|&o| cl.apply(o)));
    let partition = rooms.is_partition() && !rooms.contains(z.ground().empty());
    Ok((rooms, partition))
}

pub fn flows_equivalent(
    f: &DiscreteFlow,
    g: &DiscreteFlow,
    z: &SetSystem,
    conv: ClosureConvention,
) -> Result<bool> {
    f.ground().check_same(g.ground())?;
    Ok(pre_rooms(f, z, conv)?.0 == pre_rooms(g, z, conv)?.0)
}

/// Conjugates the flow by `f` and maps the system forward.
pub fn transport(flow: &DiscreteFlow, a: &SetSystem, f: &Autobolism) -> Result<(DiscreteFlow, SetSystem)> {
    flow.ground().check_same(f.ground())?;
    flow.ground().check_same(a.ground())?;
    let finv = f.inverse();
    let gens: Vec<Autobolism> = flow
        .generators()
        .iter()
        .map(|g| f.then_after(&g.then_after(&finv)))
        .collect();
    let moved = if flow.is_cyclic() {
        DiscreteFlow::cyclic(gens[0].clone())
    } else {
        DiscreteFlow::group(&gens, DEFAULT_GROUP_CAP.max(flow.phase_group().order()))?
    };
    Ok((moved, f.apply_system(a)))
}

/// A hull operator specification `L`.
#[derive(Clone, Debug)]
pub struct HullSpec {
    pub system: SetSystem,
    pub kind: HullKind,
    pub conv: ClosureConvention,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullRooms {
    pub rooms: SetSystem,
    /// Every generator commutes with `L` on all subsets.
    pub premise: bool,
    pub partition: bool,
    /// `premise ⇒ partition`.
    pub implication_holds: bool,
}

fn commutes(gens: &[Autobolism], op: &Hull) -> bool {
    gens.iter()
        .all(|g| op.ground().subsets().all(|x| g.apply_set(op.apply(x)) == op.apply(g.apply_set(x))))
}

pub fn hull_rooms(flow: &DiscreteFlow, l: &HullSpec) -> Result<HullRooms> {
    let ground = flow.ground();
    ground.check_same(l.system.ground())?;
    ground.check_enumerable()?;
    let op = Hull::new(&l.system, l.kind, l.conv);
    let rooms = SetSystem::new(ground, orbit_partition(flow).iter().map(|&o| op.apply(o)));
    let premise = commutes(flow.generators(), &op);
    let partition = rooms.is_partition() && !rooms.contains(ground.empty());
    Ok(HullRooms {
        rooms,
        premise,
        partition,
        implication_holds: !premise || partition,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttraktogenFlags {
    pub kommutativ: bool,
    pub attraktogen: bool,
    pub room_invariance: bool,
    pub rooms_partition: bool,
    pub rooms_in_attractors: bool,
    /// kommutativ ⇒ (rooms partition ∧ rooms are attractors).
    pub commutation_implication: bool,
    /// room_invariance ⇔ attraktogen.
    pub invariance_equivalence: bool,
}

/// Commutation with `cl_A`, attractor generation and room invariance.
///
/// Rooms are compared against `@(Φ, overline A)` after dropping ∅, since
/// the empty set is never an attractor.
pub fn check_attraktogen_kommutativ(
    flow: &DiscreteFlow,
    a: &SetSystem,
    conv: ClosureConvention,
) -> Result<AttraktogenFlags> {
    if !a.covers() {
        return Err(Error::Validation("system does not cover the ground".into()));
    }
    let cl = Hull::closure(a, conv);
    a.ground().check_enumerable()?;
    let kommutativ = commutes(flow.generators(), &cl);
    let (rooms, rooms_partition) = pre_rooms(flow, a, conv)?;
    let attractors = free_attractors(&AttractorQuery::closed_cadence(flow.clone(), a, conv)?)?;
    let rooms = rooms.nonempty();
    let attraktogen = rooms.is_subfamily_of(&attractors);
    let room_invariance = rooms
        .iter()
        .all(|&r| crate::dynsys::is_invariant(flow.generators(), r));
    Ok(AttraktogenFlags {
        kommutativ,
        attraktogen,
        room_invariance,
        rooms_partition,
        rooms_in_attractors: attraktogen,
        commutation_implication: !kommutativ || (rooms_partition && attraktogen),
        invariance_equivalence: room_invariance == attraktogen,
    })
}

/// `{f(M) : M ∈ A}` for a relabeling.
pub fn relabel(a: &SetSystem, f: &Autobolism) -> SetSystem {
    f.apply_system(a)
}
