use proptest::prelude::*;

use hullflow::attract::{coherence_variant, free_attractors, invariant_sets, transport, AttractorQuery, CoherenceVariant};
use hullflow::dynsys::{
    coherence_witness, generate_group, invariant_topology, orbit_partition, saturate, Autobolism, DiscreteFlow,
    DEFAULT_GROUP_CAP,
};
use hullflow::setsys::{classify, closure, complement_system, ClosureConvention, Hull, SetSystem};
use hullflow::subset::{GroundSet, Subset};

fn ground_and_family() -> impl Strategy<Value = (GroundSet, SetSystem)> {
    (1usize..=5).prop_flat_map(|n| {
        let g = GroundSet::new(n).unwrap();
        any::<u32>().prop_map(move |fam| {
            let fam = if n == 5 { fam as u128 } else { fam as u128 & ((1u128 << (1 << n)) - 1) };
            (g, SetSystem::from_family_mask(g, fam))
        })
    })
}

fn covering() -> impl Strategy<Value = (GroundSet, SetSystem)> {
    ground_and_family().prop_map(|(g, a)| (g, if a.covers() { a } else { a.with(g.full()) }))
}

fn permutation(g: GroundSet) -> impl Strategy<Value = Autobolism> {
    Just((0..g.size()).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |img| Autobolism::new(g, &img).unwrap())
}

fn with_flow() -> impl Strategy<Value = (GroundSet, SetSystem, Vec<Autobolism>)> {
    covering().prop_flat_map(|(g, a)| (Just(g), Just(a), prop::collection::vec(permutation(g), 1..=2)))
}

fn naive_closure(a: &SetSystem, z: Subset, conv: ClosureConvention) -> Subset {
    let supersets: Vec<Subset> = complement_system(a)
        .iter()
        .copied()
        .filter(|c| conv == ClosureConvention::Full || !c.is_empty())
        .filter(|c| z.is_subset(*c))
        .collect();
    match supersets.split_first() {
        None => z.ground().empty(),
        Some((first, rest)) => rest.iter().fold(*first, |acc, c| acc & *c),
    }
}

proptest! {
    #[test]
    fn closure_matches_definition((g, a) in ground_and_family(), bits in any::<u64>()) {
        let z = Subset::from_bits(g, bits & g.mask()).unwrap();
        for conv in ClosureConvention::all() {
            prop_assert_eq!(closure(&a, z, conv), naive_closure(&a, z, conv));
        }
    }

    #[test]
    fn closure_is_idempotent_on_coverings((g, a) in covering()) {
        let cl = Hull::closure(&a, ClosureConvention::Full);
        for z in g.subsets() {
            prop_assert_eq!(cl.apply(cl.apply(z)), cl.apply(z));
        }
    }

    #[test]
    fn complement_is_an_involution((_g, a) in ground_and_family()) {
        prop_assert_eq!(complement_system(&complement_system(&a)), a);
    }

    #[test]
    fn richness_lemma((g, a) in ground_and_family(), bits in any::<u64>()) {
        let b = Subset::from_bits(g, bits & g.mask()).unwrap();
        let c = closure(&a, b, ClosureConvention::Full);
        for x in a.trace(c).nonempty().iter() {
            prop_assert!(x.intersects(b));
        }
    }

    #[test]
    fn group_ignores_generator_order((_g, _a, gens) in with_flow()) {
        let fwd = generate_group(&gens, DEFAULT_GROUP_CAP).unwrap();
        let rev: Vec<_> = gens.iter().rev().cloned().collect();
        let back = generate_group(&rev, DEFAULT_GROUP_CAP).unwrap();
        prop_assert_eq!(fwd.order(), back.order());
        prop_assert!(back.elements().iter().all(|e| fwd.contains(e)));
    }

    #[test]
    fn witness_routes_agree((g, _a, gens) in with_flow(), x in any::<u64>(), y in any::<u64>()) {
        let a = Subset::from_bits(g, x & g.mask()).unwrap();
        let b = Subset::from_bits(g, y & g.mask()).unwrap();
        let orbits = orbit_partition(&DiscreteFlow::group(&gens, DEFAULT_GROUP_CAP).unwrap());
        let fast = saturate(&orbits, a).intersects(b);
        prop_assert_eq!(coherence_witness(&gens, a, b).unwrap().is_some(), fast);
    }

    #[test]
    fn invariant_topology_is_self_dual((_g, _a, gens) in with_flow()) {
        let t = invariant_topology(&gens).unwrap();
        prop_assert!(classify(&t, ClosureConvention::Full).unwrap().is_self_dual);
    }

    #[test]
    fn monotone_matches_conventional_on_cycles((_g, a, gens) in with_flow()) {
        let flow = DiscreteFlow::cyclic(gens[0].clone());
        for chi in invariant_sets(&flow, 1 << 20).unwrap().iter() {
            let q = |v| AttractorQuery::new(flow.clone(), a.clone()).variant(v);
            let conv = coherence_variant(&q(CoherenceVariant::Conventional), *chi).unwrap();
            prop_assert_eq!(coherence_variant(&q(CoherenceVariant::MonoPlus), *chi).unwrap(), conv);
            prop_assert_eq!(coherence_variant(&q(CoherenceVariant::MonoMinus), *chi).unwrap(), conv);
        }
    }

    #[test]
    fn attractors_are_covariant((g, a, gens) in with_flow(), seed in any::<u64>()) {
        let mut img: Vec<usize> = (0..g.size()).collect();
        let mut s = seed;
        for i in (1..img.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            img.swap(i, (s >> 33) as usize % (i + 1));
        }
        let f = Autobolism::new(g, &img).unwrap();
        let flow = DiscreteFlow::group(&gens, DEFAULT_GROUP_CAP).unwrap();
        let before = free_attractors(&AttractorQuery::new(flow.clone(), a.clone())).unwrap();
        let (moved, b) = transport(&flow, &a, &f).unwrap();
        let after = free_attractors(&AttractorQuery::new(moved, b)).unwrap();
        prop_assert_eq!(after, f.apply_system(&before));
    }
}
