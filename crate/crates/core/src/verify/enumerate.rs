//! Deterministic enumeration and seeded sampling of instance ingredients.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cantor::EndoFunction;
use crate::dynsys::Autobolism;
use crate::error::{Error, Result};
use crate::setsys::{is_topology, SetSystem};
use crate::subset::{GroundSet, Subset};

/// Largest ground for exhaustive system enumeration.
pub const MAX_SYSTEM_N: usize = 4;
/// Largest ground for exhaustive function enumeration.
pub const MAX_FUNCTION_N: usize = 5;

fn ground(n: usize) -> Result<GroundSet> {
    GroundSet::new(n)
}

fn size_limit(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::CapExceeded { what, size: n, limit });
    }
    Ok(())
}

/// All families of subsets of an `n`-set in ascending family-mask order.
pub fn enum_systems(n: usize, covering_only: bool) -> Result<impl Iterator<Item = SetSystem>> {
    size_limit("exhaustive system enumeration", n, MAX_SYSTEM_N)?;
    let g = ground(n)?;
    let families: u128 = 1 << (1u32 << n);
    let full = g.mask();
    Ok((0..families)
        .filter(move |&fam| {
            !covering_only || {
                let mut union = 0u64;
                for m in 0..(1u64 << n) {
                    if fam >> m & 1 == 1 {
                        union |= m;
                    }
                }
                union == full
            }
        })
        .map(move |fam| SetSystem::from_family_mask(g, fam)))
}

/// All topologies on an `n`-set, in family-mask order.
pub fn enum_topologies(n: usize) -> Result<impl Iterator<Item = SetSystem>> {
    Ok(enum_systems(n, true)?.filter(is_topology))
}

/// All `n^n` maps (or `n!` bijections) in lexicographic order of image vectors.
pub fn enum_functions(n: usize, bijective_only: bool) -> Result<Vec<EndoFunction>> {
    size_limit("exhaustive function enumeration", n, MAX_FUNCTION_N)?;
    let g = ground(n)?;
    let mut out = Vec::new();
    let mut img = vec![0usize; n];
    loop {
        if !bijective_only || is_permutation(&img) {
            out.push(EndoFunction::new(g, &img)?);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            img[i] += 1;
            if img[i] < n {
                break;
            }
            img[i] = 0;
        }
    }
}

fn is_permutation(img: &[usize]) -> bool {
    let mut seen = 0u64;
    for &x in img {
        seen |= 1 << x;
    }
    seen.count_ones() as usize == img.len()
}

/// All permutations of an `n`-set in lexicographic order.
pub fn enum_permutations(n: usize) -> Result<Vec<Autobolism>> {
    enum_functions(n, true)?
        .iter()
        .map(|f| f.to_autobolism())
        .collect()
}

/// Generator lists of one or two distinct permutations: singletons first, then pairs.
pub fn generator_sets(n: usize) -> Result<Vec<Vec<Autobolism>>> {
    let perms = enum_permutations(n)?;
    let mut out: Vec<Vec<Autobolism>> = perms.iter().map(|p| vec![p.clone()]).collect();
    for i in 0..perms.len() {
        for j in i + 1..perms.len() {
            out.push(vec![perms[i].clone(), perms[j].clone()]);
        }
    }
    Ok(out)
}

/// All partitions of `blocks` into coarser blocks (restricted growth order).
pub fn coarsenings(blocks: &SetSystem) -> Vec<SetSystem> {
    let bs = blocks.members();
    let k = bs.len();
    let mut out = Vec::new();
    let mut label = vec![0usize; k];
    loop {
        let parts = label.iter().copied().max().map_or(0, |m| m + 1);
        let mut merged = vec![blocks.ground().empty(); parts];
        for (i, &l) in label.iter().enumerate() {
            merged[l] = merged[l] | bs[i];
        }
        out.push(SetSystem::new(blocks.ground(), merged));
        // next restricted growth string
        let mut i = k;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let bound = label[..i].iter().copied().max().unwrap_or(0) + 1;
            if label[i] < bound {
                label[i] += 1;
                for l in &mut label[i + 1..] {
                    *l = 0;
                }
                break;
            }
        }
    }
}

/// Each subset independently with probability 1/2; `Y` added if `cover` and needed.
pub fn random_system<R: Rng>(rng: &mut R, g: GroundSet, cover: bool) -> SetSystem {
    let members: Vec<Subset> = g.subsets().filter(|_| rng.gen_bool(0.5)).collect();
    let sys = SetSystem::new(g, members);
    if cover && !sys.covers() {
        sys.with(g.full())
    } else {
        sys
    }
}

pub fn random_subset<R: Rng>(rng: &mut R, g: GroundSet) -> Subset {
    Subset::from_bits(g, rng.gen::<u64>() & g.mask()).expect("masked")
}

pub fn random_permutation<R: Rng>(rng: &mut R, g: GroundSet) -> Autobolism {
    let mut img: Vec<usize> = g.elements().collect();
    img.shuffle(rng);
    Autobolism::new(g, &img).expect("shuffle is bijective")
}

pub fn random_function<R: Rng>(rng: &mut R, g: GroundSet) -> EndoFunction {
    let img: Vec<usize> = g.elements().map(|_| rng.gen_range(0..g.size())).collect();
    EndoFunction::new(g, &img).expect("in range")
}

/// One or two random generators.
pub fn random_generators<R: Rng>(rng: &mut R, g: GroundSet) -> Vec<Autobolism> {
    let k = rng.gen_range(1..=2);
    (0..k).map(|_| random_permutation(rng, g)).collect()
}

/// Closes a random family under pairwise union and intersection and adds ∅ and `Y`.
pub fn random_topology<R: Rng>(rng: &mut R, g: GroundSet) -> SetSystem {
    let mut sys = random_system(rng, g, false).with(g.empty()).with(g.full());
    loop {
        let ms = sys.members().to_vec();
        let mut next = sys.clone();
        for (i, &x) in ms.iter().enumerate() {
            for &y in &ms[i + 1..] {
                next = next.with(x | y).with(x & y);
            }
        }
        if next == sys {
            return sys;
        }
        sys = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_counts() {
        let one: Vec<_> = enum_systems(1, true).unwrap().collect();
        assert_eq!(one.len(), 2);
        assert_eq!(one[0].to_index_lists(), vec![vec![0]]);
        assert_eq!(one[1].to_index_lists(), vec![vec![], vec![0]]);
        assert_eq!(enum_systems(2, false).unwrap().count(), 16);
        for n in 1..=3 {
            assert!(enum_systems(n, true).unwrap().count() <= enum_systems(n, false).unwrap().count());
        }
        assert!(enum_systems(5, false).is_err());
    }

    #[test]
    fn function_counts() {
        assert_eq!(enum_functions(2, false).unwrap().len(), 4);
        assert_eq!(enum_functions(2, true).unwrap().len(), 2);
        assert_eq!(enum_functions(3, false).unwrap().len(), 27);
        assert_eq!(enum_functions(3, true).unwrap().len(), 6);
        assert_eq!(enum_functions(3, false).unwrap()[0].image(), vec![0, 0, 0]);
        assert_eq!(enum_functions(3, true).unwrap()[0].image(), vec![0, 1, 2]);
        assert!(enum_functions(6, true).is_err());
    }

    #[test]
    fn generator_set_count() {
        assert_eq!(generator_sets(3).unwrap().len(), 6 + 15);
        assert_eq!(generator_sets(4).unwrap().len(), 24 + 276);
    }

    #[test]
    fn coarsening_counts_are_bell_numbers() {
        let g = GroundSet::new(4).unwrap();
        let singletons = SetSystem::new(g, g.elements().map(|x| g.singleton(x).unwrap()));
        let all = coarsenings(&singletons);
        assert_eq!(all.len(), 15);
        assert!(all.iter().all(|p| p.is_partition()));
    }

    #[test]
    fn random_topologies_are_topologies() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = GroundSet::new(5).unwrap();
        for _ in 0..20 {
            assert!(is_topology(&random_topology(&mut rng, g)));
            assert!(random_system(&mut rng, g, true).covers());
        }
    }
}
