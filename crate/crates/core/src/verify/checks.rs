//! One checker per theorem, each evaluating both sides with module operations.

use crate::attract::{
    check_attraktogen_kommutativ, free_attractors, pre_rooms, transport, AttractorQuery, CoherenceVariant,
};
use crate::cantor::{
    cantor_membership, explication_check, fibration_integrity, phase_chain, preserves_unfamily, EndoFunction,
    Sign,
};
use crate::dynsys::{
    generate_group, group_witness, invariant_basis, invariant_topology, is_invariant, orbit_partition,
    Autobolism, DiscreteFlow, DEFAULT_GROUP_CAP,
};
use crate::error::{Error, Result};
use crate::instance::{Instance, WireInstance};
use crate::setsys::{
    elementarize, is_basis_of, is_self_dual, is_t0, is_topology, product_fibration,
    union_closure, ClosureConvention, Hull, SetSystem,
};
use crate::subset::{GroundSet, Subset};
use crate::verdict::Verdict;

use super::TheoremId;

/// The ingredients of one theorem instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Case {
    Topology { t: SetSystem },
    Coherence { gens: Vec<Autobolism>, chi: Subset },
    Homeomorphic { t: SetSystem, gens: Vec<Autobolism>, p: SetSystem },
    Cyclic { phi: Autobolism, z: SetSystem },
    Richness { a: SetSystem, b: Subset },
    ClosurePartition { a: SetSystem, gens: Vec<Autobolism>, p: SetSystem },
    Flow { a: SetSystem, gens: Vec<Autobolism> },
    System { a: SetSystem },
    Map { a: SetSystem, f: EndoFunction },
    Relabel { a: SetSystem, gens: Vec<Autobolism>, f: Autobolism },
}

impl Case {
    pub fn ground(&self) -> GroundSet {
        match self {
            Case::Topology { t } | Case::Homeomorphic { t, .. } => t.ground(),
            Case::Coherence { chi, .. } => chi.ground(),
            Case::Cyclic { phi, .. } => phi.ground(),
            Case::Richness { a, .. }
            | Case::ClosurePartition { a, .. }
            | Case::Flow { a, .. }
            | Case::System { a }
            | Case::Map { a, .. }
            | Case::Relabel { a, .. } => a.ground(),
        }
    }

    /// Canonical serialized form for replay.
    pub fn to_wire(&self, conv: ClosureConvention) -> WireInstance {
        let w = WireInstance::new(self.ground()).convention(conv);
        match self {
            Case::Topology { t } => w.system("T", t),
            Case::Coherence { gens, chi } => w.group_flow("F", gens).subset("chi", *chi),
            Case::Homeomorphic { t, gens, p } => w.system("T", t).system("P", p).group_flow("F", gens),
            Case::Cyclic { phi, z } => w.system("Z", z).cyclic_flow("F", phi),
            Case::Richness { a, b } => w.system("A", a).subset("B", *b),
            Case::ClosurePartition { a, gens, p } => w.system("A", a).system("P", p).group_flow("F", gens),
            Case::Flow { a, gens } => w.system("A", a).group_flow("F", gens),
            Case::System { a } => w.system("A", a),
            Case::Map { a, f } => w.system("A", a).function("f", f),
            Case::Relabel { a, gens, f } => w.system("A", a).group_flow("F", gens).permutation("f", f),
        }
    }

    /// Reads the instance shape a theorem expects.
    pub fn from_instance(id: TheoremId, inst: &Instance) -> Result<Case> {
        let malformed = |e: Error| Error::MalformedInstance(format!("{}: {e}", id.name()));
        let sys = |n: &str| inst.system(n).cloned().map_err(malformed);
        let sub = |n: &str| inst.subset(n).map_err(malformed);
        let gens = || inst.flow_generators("F").map_err(malformed);
        use TheoremId::*;
        Ok(match id {
            S1_1 | K1_2 => Case::Topology { t: sys("T")? },
            L1_3 => Case::Coherence {
                gens: gens()?,
                chi: sub("chi")?,
            },
            S2_2 => Case::Homeomorphic {
                t: sys("T")?,
                gens: gens()?,
                p: sys("P")?,
            },
            B2_3d | ChainKarrenk => {
                let g = gens()?;
                if g.len() != 1 {
                    return Err(malformed(Error::Validation("flow F must be cyclic".into())));
                }
                let z = match (id, inst.systems.get("Z")) {
                    (B2_3d, None) => SetSystem::power_set(inst.ground)?,
                    _ => sys("Z")?,
                };
                Case::Cyclic {
                    phi: g[0].clone(),
                    z,
                }
            }
            L3_1 => Case::Richness {
                a: sys("A")?,
                b: sub("B")?,
            },
            B3_2 => Case::ClosurePartition {
                a: sys("A")?,
                gens: gens()?,
                p: sys("P")?,
            },
            S3_3 | B3_4 | K3_9 => Case::Flow {
                a: sys("A")?,
                gens: gens()?,
            },
            B3_6 | IdemYdwed => Case::System { a: sys("A")? },
            B3_7 | S3_8Bij | S3_8All | B3_10 => Case::Map {
                a: sys("A")?,
                f: inst.function("f").map_err(malformed)?,
            },
            Covar => Case::Relabel {
                a: sys("A")?,
                gens: gens()?,
                f: inst.permutation("f").cloned().map_err(malformed)?,
            },
        })
    }
}

/// A verdict plus tally tags.
pub(crate) struct Outcome {
    pub verdict: Verdict,
    pub tags: Vec<&'static str>,
}

fn holds(note: impl Into<String>) -> Outcome {
    Outcome {
        verdict: Verdict::holds(note),
        tags: vec![],
    }
}

fn skip(note: impl Into<String>) -> Outcome {
    Outcome {
        verdict: Verdict::skipped(note),
        tags: vec![],
    }
}

fn decide(ok: bool, note: String, case: &Case, conv: ClosureConvention) -> Outcome {
    Outcome {
        verdict: if ok {
            Verdict::holds(note)
        } else {
            Verdict::fails(case.to_wire(conv), note)
        },
        tags: vec![],
    }
}

fn tagged(mut o: Outcome, tags: impl IntoIterator<Item = (&'static str, bool)>) -> Outcome {
    o.tags.extend(tags.into_iter().filter(|t| t.1).map(|t| t.0));
    o
}

fn shape_error(id: TheoremId) -> Error {
    Error::MalformedInstance(format!("instance shape does not match {}", id.name()))
}

/// Replays a serialized instance through the theorem's checker.
pub fn check_theorem(id: TheoremId, inst: &Instance, conv: ClosureConvention) -> Result<Verdict> {
    let case = Case::from_instance(id, inst)?;
    Ok(check_case(id, &case, conv)?.verdict)
}

pub(crate) fn check_case(id: TheoremId, case: &Case, conv: ClosureConvention) -> Result<Outcome> {
    use TheoremId::*;
    match (id, case) {
        (S1_1, Case::Topology { t }) => Ok(self_dual_basis(t, case, conv)),
        (K1_2, Case::Topology { t }) => Ok(t0_discrete(t, case, conv)),
        (L1_3, Case::Coherence { gens, chi }) => coherence_lemma(gens, *chi, case, conv),
        (S2_2, Case::Homeomorphic { t, gens, p }) => Ok(homeomorphic_closure(t, gens, p, case, conv)),
        (B2_3d, Case::Cyclic { phi, z }) => variant_coincidence(phi, z, case, conv),
        (ChainKarrenk, Case::Cyclic { phi, z }) => inclusion_chain(phi, z, case, conv),
        (L3_1, Case::Richness { a, b }) => Ok(richness(a, *b, case, conv)),
        (B3_2, Case::ClosurePartition { a, gens, p }) => Ok(closure_partition(a, gens, p, case, conv)),
        (S3_3, Case::Flow { a, gens }) => commutation_rooms(a, gens, case, conv),
        (B3_4, Case::Flow { a, gens }) => room_invariance(a, gens, case, conv),
        (K3_9, Case::Flow { a, gens }) => chain_of_group(a, gens, case, conv),
        (B3_6, Case::System { a }) => representation(a, case, conv),
        (IdemYdwed, Case::System { a }) => Ok(idempotence(a, case, conv)),
        (B3_7, Case::Map { a, f }) => integrity(a, f, case, conv),
        (S3_8Bij, Case::Map { a, f }) | (S3_8All, Case::Map { a, f }) => {
            explication(a, f, id == S3_8Bij, case, conv)
        }
        (B3_10, Case::Map { a, f }) => Ok(bijection_coincidence(a, f, case, conv)),
        (Covar, Case::Relabel { a, gens, f }) => covariance(a, gens, f, case, conv),
        _ => Err(shape_error(id)),
    }
}

fn self_dual_basis(t: &SetSystem, case: &Case, conv: ClosureConvention) -> Outcome {
    if !is_topology(t) {
        return skip("not a topology");
    }
    let lhs = is_self_dual(t);
    let e = elementarize(t).nonempty();
    let rhs = e.is_partition() && is_basis_of(&e, t);
    decide(lhs == rhs, format!("self_dual={lhs} partition_basis={rhs}"), case, conv)
}

fn t0_discrete(t: &SetSystem, case: &Case, conv: ClosureConvention) -> Outcome {
    if !is_topology(t) || !is_self_dual(t) {
        return skip("not a self-dual topology");
    }
    let t0 = is_t0(t);
    let discrete = t.len() == 1 << t.ground().size();
    decide(t0 == discrete, format!("T0={t0} discrete={discrete}"), case, conv)
}

fn coherence_lemma(gens: &[Autobolism], chi: Subset, case: &Case, conv: ClosureConvention) -> Result<Outcome> {
    if chi.is_empty() {
        return Ok(skip("empty set"));
    }
    let top = invariant_topology(gens)?;
    let integral = elementarize(&top).nonempty();
    if integral != invariant_basis(gens)? {
        return Ok(decide(false, "elementarization disagrees with orbit partition".into(), case, conv));
    }
    let lhs = integral.contains(chi);
    let group = generate_group(gens, DEFAULT_GROUP_CAP)?;
    let rhs = chi
        .subsets()
        .filter(|a| !a.is_empty())
        .all(|a| chi.subsets().filter(|b| !b.is_empty()).all(|b| group_witness(&group, a, b).is_some()));
    let g = chi.ground();
    let rhs_points = chi.indices().all(|x| {
        chi.indices()
            .all(|y| group_witness(&group, Subset::raw(g, 1 << x), Subset::raw(g, 1 << y)).is_some())
    });
    if rhs != rhs_points {
        return Ok(decide(false, "pointwise and subset coherence disagree".into(), case, conv));
    }
    let invariant = is_invariant(gens, chi);
    let ok = lhs == rhs;
    Ok(tagged(
        decide(ok, format!("integral={lhs} coherent={rhs} invariant={invariant}"), case, conv),
        [("invariant_chi", invariant), ("invariant_chi_fail", invariant && !ok)],
    ))
}

/// Whether every block of `p` is invariant and `p` partitions the ground.
fn invariant_partition(gens: &[Autobolism], p: &SetSystem) -> bool {
    p.is_partition() && !p.contains(p.ground().empty()) && p.iter().all(|&b| is_invariant(gens, b))
}

fn homeomorphic_closure(
    t: &SetSystem,
    gens: &[Autobolism],
    p: &SetSystem,
    case: &Case,
    conv: ClosureConvention,
) -> Outcome {
    if !is_topology(t) {
        return skip("not a topology");
    }
    if gens.iter().any(|g| g.apply_system(t) != *t) {
        return skip("generators are not homeomorphisms");
    }
    if !invariant_partition(gens, p) {
        return skip("not an invariant partition");
    }
    let cl = Hull::closure(t, conv);
    let q = SetSystem::new(t.ground(), p.iter().map(|&b| cl.apply(b)));
    let ok = invariant_partition(gens, &q);
    decide(ok, format!("closures {q}"), case, conv)
}

fn attractors(flow: &DiscreteFlow, z: &SetSystem, conv: ClosureConvention, v: CoherenceVariant) -> Result<SetSystem> {
    free_attractors(&AttractorQuery::new(flow.clone(), z.clone()).conv(conv).variant(v))
}

fn four_variants(phi: &Autobolism, z: &SetSystem, conv: ClosureConvention) -> Result<[SetSystem; 4]> {
    let flow = DiscreteFlow::cyclic(phi.clone());
    Ok([
        attractors(&flow, z, conv, CoherenceVariant::Weak)?,
        attractors(&flow, z, conv, CoherenceVariant::Conventional)?,
        attractors(&flow, z, conv, CoherenceVariant::MonoPlus)?,
        attractors(&flow, z, conv, CoherenceVariant::MonoMinus)?,
    ])
}

fn variant_coincidence(phi: &Autobolism, z: &SetSystem, case: &Case, conv: ClosureConvention) -> Result<Outcome> {
    if z.len() != 1 << z.ground().size() {
        return Ok(skip("covering is not the power set"));
    }
    let [weak, at, plus, minus] = four_variants(phi, z, conv)?;
    let orbits = orbit_partition(&DiscreteFlow::cyclic(phi.clone()));
    let ok = [&weak, &at, &plus, &minus].iter().all(|v| **v == orbits);
    Ok(decide(
        ok,
        format!("orbits={orbits} weak={weak} conventional={at} plus={plus} minus={minus}"),
        case,
        conv,
    ))
}

fn inclusion_chain(phi: &Autobolism, z: &SetSystem, case: &Case, conv: ClosureConvention) -> Result<Outcome> {
    if !z.covers() {
        return Ok(skip("covering does not cover"));
    }
    let [weak, at, plus, minus] = four_variants(phi, z, conv)?;
    let empty_room = pre_rooms(&DiscreteFlow::cyclic(phi.clone()), z, conv)?
        .0
        .contains(z.ground().empty());
    let ok = at.is_subfamily_of(&weak) && plus.is_subfamily_of(&at) && minus.is_subfamily_of(&at);
    Ok(tagged(
        decide(
            ok,
            format!("weak={weak} conventional={at} plus={plus} minus={minus}"),
            case,
            conv,
        ),
        [
            ("monotone_equal", plus == at && minus == at),
            ("empty_pre_room", empty_room),
            ("empty_pre_room_fail", empty_room && !ok),
        ],
    ))
}

fn richness(a: &SetSystem, b: Subset, case: &Case, conv: ClosureConvention) -> Outcome {
    let c = Hull::closure(a, conv).apply(b);
    let bad = a.trace(c).nonempty().iter().find(|x| !x.intersects(b)).copied();
    match bad {
        None => holds(format!("cl(B)={c}")),
        Some(x) => decide(false, format!("cl(B)={c}; trace {x} misses B"), case, conv),
    }
}

fn kommutativ(gens: &[Autobolism], cl: &Hull) -> bool {
    gens.iter().all(|g| {
        cl.ground()
            .subsets()
            .all(|x| g.apply_set(cl.apply(x)) == cl.apply(g.apply_set(x)))
    })
}

fn closure_partition(
    a: &SetSystem,
    gens: &[Autobolism],
    p: &SetSystem,
    case: &Case,
    conv: ClosureConvention,
) -> Outcome {
    if !a.covers() {
        return skip("system does not cover");
    }
    let cl = Hull::closure(a, conv);
    if !kommutativ(gens, &cl) {
        return skip("generators do not commute with the closure");
    }
    if !invariant_partition(gens, p) {
        return skip("not an invariant partition");
    }
    let q = SetSystem::new(a.ground(), p.iter().map(|&b| cl.apply(b)));
    decide(invariant_partition(gens, &q), format!("closures {q}"), case, conv)
}

fn commutation_rooms(a: &SetSystem, gens: &[Autobolism], case: &Case, conv: ClosureConvention) -> Result<Outcome> {
    if !a.covers() {
        return Ok(skip("system does not cover"));
    }
    let flow = DiscreteFlow::group(gens, DEFAULT_GROUP_CAP)?;
    let f = check_attraktogen_kommutativ(&flow, a, conv)?;
    if !f.kommutativ {
        return Ok(skip("premise false"));
    }
    let ok = f.rooms_partition && f.attraktogen;
    Ok(tagged(
        decide(ok, format!("partition={} attraktogen={}", f.rooms_partition, f.attraktogen), case, conv),
        [
            ("premise_true", true),
            ("partition_part_fails", !f.rooms_partition),
            ("attractor_part_fails", !f.attraktogen),
        ],
    ))
}

fn room_invariance(a: &SetSystem, gens: &[Autobolism], case: &Case, conv: ClosureConvention) -> Result<Outcome> {
    if !a.covers() {
        return Ok(skip("system does not cover"));
    }
    let flow = DiscreteFlow::group(gens, DEFAULT_GROUP_CAP)?;
    let f = check_attraktogen_kommutativ(&flow, a, conv)?;
    let mut sandwich_fails = false;
    if f.attraktogen {
        let rooms = pre_rooms(&flow, a, conv)?.0.nonempty();
        let at = free_attractors(&AttractorQuery::closed_cadence(flow.clone(), a, conv)?)?;
        sandwich_fails = !(rooms.is_subfamily_of(&at) && at.is_subfamily_of(&union_closure(&rooms)));
    }
    Ok(tagged(
        decide(
            f.invariance_equivalence && !sandwich_fails,
            format!(
                "room_invariance={} attraktogen={} sandwich={}",
                f.room_invariance, f.attraktogen, !sandwich_fails
            ),
            case,
            conv,
        ),
        [
            ("attraktogen", f.attraktogen),
            ("room_invariance", f.room_invariance),
            ("sandwich_fails", sandwich_fails),
        ],
    ))
}

fn chain_of_group(a: &SetSystem, gens: &[Autobolism], case: &Case, conv: ClosureConvention) -> Result<Outcome> {
    if !a.covers() {
        return Ok(skip("system does not cover"));
    }
    let c = phase_chain(gens, a, conv)?;
    Ok(decide(
        c.consistent(),
        format!(
            "commutes={} C+(A)={} C-(A)={} C+(Ac)={} C-(Ac)={}",
            c.commutes, c.plus_a, c.minus_a, c.plus_ac, c.minus_ac
        ),
        case,
        conv,
    ))
}

fn representation(a: &SetSystem, case: &Case, conv: ClosureConvention) -> Result<Outcome> {
    if !a.covers() {
        return Ok(skip("system does not cover"));
    }
    let fib = product_fibration(a, conv)?;
    let note = if fib.representation_agrees {
        format!("{} classes", fib.classes.len())
    } else {
        let rep = fib.representation(a)?;
        let (c, r) = rep
            .iter()
            .find(|(c, r)| fib.classes[c].members != **r)
            .expect("some class differs");
        format!("class of {c} is {} but representation gives {r}", fib.classes[c].members)
    };
    Ok(decide(fib.representation_agrees, note, case, conv))
}

fn idempotence(a: &SetSystem, case: &Case, conv: ClosureConvention) -> Outcome {
    if !a.covers() {
        return skip("system does not cover");
    }
    let cl = Hull::closure(a, conv);
    match a.ground().subsets().find(|&z| cl.apply(cl.apply(z)) != cl.apply(z)) {
        None => holds(""),
        Some(z) => decide(
            false,
            format!("cl({z})={} but cl(cl({z}))={}", cl.apply(z), cl.apply(cl.apply(z))),
            case,
            conv,
        ),
    }
}

fn integrity(a: &SetSystem, f: &EndoFunction, case: &Case, conv: ClosureConvention) -> Result<Outcome> {
    if !a.covers() {
        return Ok(skip("system does not cover"));
    }
    let integ = fibration_integrity(f, a, conv)?;
    let pres = preserves_unfamily(f, a)?;
    Ok(decide(integ == pres, format!("integrity={integ} preserves={pres}"), case, conv))
}

fn explication(a: &SetSystem, f: &EndoFunction, bijective: bool, case: &Case, conv: ClosureConvention) -> Result<Outcome> {
    if !a.covers() {
        return Ok(skip("system does not cover"));
    }
    if bijective && !f.is_bijective() {
        return Ok(skip("not a bijection"));
    }
    let e = explication_check(f, a, conv)?;
    Ok(tagged(
        decide(
            e.agrees(),
            format!("lhs={} rhs_A={} rhs_Ac={}", e.lhs, e.rhs_a, e.rhs_ac),
            case,
            conv,
        ),
        [("agree", e.agrees()), ("disagree", !e.agrees())],
    ))
}

fn bijection_coincidence(a: &SetSystem, f: &EndoFunction, case: &Case, conv: ClosureConvention) -> Outcome {
    if !a.covers() {
        return skip("system does not cover");
    }
    let Ok(p) = f.to_autobolism() else {
        return skip("not a bijection");
    };
    let plus = cantor_membership(f, a, Sign::Plus);
    let minus = cantor_membership(f, a, Sign::Minus);
    let inv = EndoFunction::from(&p.inverse());
    let swapped = plus == cantor_membership(&inv, a, Sign::Minus) && minus == cantor_membership(&inv, a, Sign::Plus);
    tagged(
        decide(plus == minus, format!("plus={plus} minus={minus}"), case, conv),
        [("inverse_swap_fails", !swapped)],
    )
}

fn covariance(
    a: &SetSystem,
    gens: &[Autobolism],
    f: &Autobolism,
    case: &Case,
    conv: ClosureConvention,
) -> Result<Outcome> {
    if !a.covers() {
        return Ok(skip("system does not cover"));
    }
    let flow = DiscreteFlow::group(gens, DEFAULT_GROUP_CAP)?;
    let before = free_attractors(&AttractorQuery::new(flow.clone(), a.clone()).conv(conv))?;
    let (moved, b) = transport(&flow, a, f)?;
    let after = free_attractors(&AttractorQuery::new(moved, b).conv(conv))?;
    let expected = f.apply_system(&before);
    Ok(decide(after == expected, format!("transported={after} image={expected}"), case, conv))
}
