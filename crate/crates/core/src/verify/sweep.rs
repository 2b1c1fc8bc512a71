use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynsys::{orbit_partition, Autobolism, DiscreteFlow, DEFAULT_GROUP_CAP};
use crate::error::{Error, Result};
use crate::setsys::{is_topology, ClosureConvention, Hull, SetSystem};
use crate::subset::GroundSet;
use crate::verdict::{Status, Verdict};

use super::checks::{check_case, Case};
use super::enumerate::*;
use super::{limits, TheoremId};

pub const MAX_COUNTEREXAMPLES: usize = 32;
const CHUNK: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub conv: ClosureConvention,
    pub max_counterexamples: usize,
    pub jobs: Option<usize>,
    pub timing: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            conv: ClosureConvention::Full,
            max_counterexamples: MAX_COUNTEREXAMPLES,
            jobs: None,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepReport {
    pub theorem: TheoremId,
    pub label: String,
    pub n: usize,
    pub mode: ModeName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub seed: u64,
    pub convention: ClosureConvention,
    pub instance_count: u64,
    pub hold_count: u64,
    pub fail_count: u64,
    pub skip_count: u64,
    pub tallies: BTreeMap<String, u64>,
    pub counterexamples: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SweepReport {
    /// True when a theorem with a sound proof failed somewhere.
    pub fn proved_failure(&self) -> bool {
        self.theorem.is_proved() && self.fail_count > 0
    }

    pub fn tally(&self, tag: &str) -> u64 {
        self.tallies.get(tag).copied().unwrap_or(0)
    }
}

type Cases = Box<dyn Iterator<Item = Case> + Send>;

/// The instance stream of a sweep, in deterministic order.
pub fn cases(id: TheoremId, n: usize, mode: Mode) -> Result<Cases> {
    if n == 0 {
        return Err(Error::Validation("sweeps need a nonempty ground".into()));
    }
    let lim = limits(id);
    match mode {
        Mode::Exhaustive => {
            if n > lim.max_exhaustive_n {
                return Err(Error::CapExceeded {
                    what: "exhaustive sweep ground",
                    size: n,
                    limit: lim.max_exhaustive_n,
                });
            }
            exhaustive(id, n)
        }
        Mode::Random { samples, seed } => {
            if n > lim.max_random_n {
                return Err(Error::CapExceeded {
                    what: "random sweep ground",
                    size: n,
                    limit: lim.max_random_n,
                });
            }
            let g = GroundSet::new(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Box::new(
                std::iter::repeat_with(move || random_case(id, g, &mut rng)).take(samples),
            ))
        }
    }
}

fn orbit_coarsenings(gens: &[Autobolism]) -> Vec<SetSystem> {
    let flow = DiscreteFlow::group(gens, DEFAULT_GROUP_CAP).expect("small group");
    coarsenings(&orbit_partition(&flow))
}

fn exhaustive(id: TheoremId, n: usize) -> Result<Cases> {
    use TheoremId::*;
    let g = GroundSet::new(n)?;
    Ok(match id {
        S1_1 | K1_2 => Box::new(enum_topologies(n)?.map(|t| Case::Topology { t })),
        L1_3 => {
            let gs = generator_sets(n)?;
            Box::new(gs.into_iter().flat_map(move |gens| {
                g.subsets()
                    .filter(|c| !c.is_empty())
                    .map(move |chi| Case::Coherence { gens: gens.clone(), chi })
            }))
        }
        S2_2 => {
            let gp: Vec<_> = generator_sets(n)?
                .into_iter()
                .map(|gens| {
                    let ps = orbit_coarsenings(&gens);
                    (gens, ps)
                })
                .collect();
            Box::new(enum_topologies(n)?.flat_map(move |t| {
                gp.clone().into_iter().flat_map(move |(gens, ps)| {
                    let t = t.clone();
                    ps.into_iter().map(move |p| Case::Homeomorphic {
                        t: t.clone(),
                        gens: gens.clone(),
                        p,
                    })
                })
            }))
        }
        B2_3d => {
            let z = SetSystem::power_set(g)?;
            Box::new(
                enum_permutations(n)?
                    .into_iter()
                    .map(move |phi| Case::Cyclic { phi, z: z.clone() }),
            )
        }
        ChainKarrenk => {
            let perms = enum_permutations(n)?;
            Box::new(enum_systems(n, true)?.flat_map(move |z| {
                perms.clone().into_iter().map(move |phi| Case::Cyclic { phi, z: z.clone() })
            }))
        }
        L3_1 => Box::new(enum_systems(n, false)?.flat_map(move |a| {
            g.subsets().map(move |b| Case::Richness { a: a.clone(), b })
        })),
        B3_2 => {
            let gp: Vec<_> = generator_sets(n)?
                .into_iter()
                .map(|gens| {
                    let ps = orbit_coarsenings(&gens);
                    (gens, ps)
                })
                .collect();
            Box::new(enum_systems(n, true)?.flat_map(move |a| {
                gp.clone().into_iter().flat_map(move |(gens, ps)| {
                    let a = a.clone();
                    ps.into_iter().map(move |p| Case::ClosurePartition {
                        a: a.clone(),
                        gens: gens.clone(),
                        p,
                    })
                })
            }))
        }
        S3_3 | B3_4 | K3_9 => {
            let gs = generator_sets(n)?;
            Box::new(enum_systems(n, true)?.flat_map(move |a| {
                gs.clone().into_iter().map(move |gens| Case::Flow { a: a.clone(), gens })
            }))
        }
        B3_6 | IdemYdwed => Box::new(enum_systems(n, true)?.map(|a| Case::System { a })),
        B3_7 | S3_8All | S3_8Bij | B3_10 => {
            let fs = enum_functions(n, matches!(id, S3_8Bij | B3_10))?;
            Box::new(enum_systems(n, true)?.flat_map(move |a| {
                fs.clone().into_iter().map(move |f| Case::Map { a: a.clone(), f })
            }))
        }
        Covar => {
            let gs = generator_sets(n)?;
            let perms = enum_permutations(n)?;
            Box::new(enum_systems(n, true)?.flat_map(move |a| {
                let perms = perms.clone();
                gs.clone().into_iter().flat_map(move |gens| {
                    let a = a.clone();
                    perms.clone().into_iter().map(move |f| Case::Relabel {
                        a: a.clone(),
                        gens: gens.clone(),
                        f,
                    })
                })
            }))
        }
    })
}

/// One or two generators drawn from the permutations satisfying `keep`.
fn random_generators_where<R: Rng>(rng: &mut R, g: GroundSet, keep: impl Fn(&Autobolism) -> bool) -> Vec<Autobolism> {
    let pool: Vec<Autobolism> = enum_permutations(g.size())
        .expect("sampling ground is small")
        .into_iter()
        .filter(|p| keep(p))
        .collect();
    let k = rng.gen_range(1..=2);
    (0..k).map(|_| pool.choose(rng).expect("identity qualifies").clone()).collect()
}

fn commutes_with(p: &Autobolism, cl: &Hull) -> bool {
    cl.ground()
        .subsets()
        .all(|x| p.apply_set(cl.apply(x)) == cl.apply(p.apply_set(x)))
}

fn random_coarsening<R: Rng>(rng: &mut R, gens: &[Autobolism]) -> SetSystem {
    orbit_coarsenings(gens).choose(rng).expect("at least one").clone()
}

fn random_case<R: Rng>(id: TheoremId, g: GroundSet, rng: &mut R) -> Case {
    use TheoremId::*;
    let cover = |rng: &mut R| random_system(rng, g, true);
    match id {
        S1_1 | K1_2 => Case::Topology {
            t: random_topology(rng, g),
        },
        L1_3 => {
            let gens = random_generators(rng, g);
            let chi = loop {
                let c = random_subset(rng, g);
                if !c.is_empty() {
                    break c;
                }
            };
            Case::Coherence { gens, chi }
        }
        S2_2 => {
            let t = random_topology(rng, g);
            debug_assert!(is_topology(&t));
            let gens = random_generators_where(rng, g, |p| p.apply_system(&t) == t);
            let p = random_coarsening(rng, &gens);
            Case::Homeomorphic { t, gens, p }
        }
        B2_3d => Case::Cyclic {
            phi: random_permutation(rng, g),
            z: SetSystem::power_set(g).expect("sampling ground is small"),
        },
        ChainKarrenk => Case::Cyclic {
            z: cover(rng),
            phi: random_permutation(rng, g),
        },
        L3_1 => Case::Richness {
            a: random_system(rng, g, false),
            b: random_subset(rng, g),
        },
        B3_2 | S3_3 => {
            let a = cover(rng);
            let cl = Hull::closure(&a, ClosureConvention::Full);
            let gens = random_generators_where(rng, g, |p| commutes_with(p, &cl));
            if id == S3_3 {
                Case::Flow { a, gens }
            } else {
                let p = random_coarsening(rng, &gens);
                Case::ClosurePartition { a, gens, p }
            }
        }
        B3_4 | K3_9 => Case::Flow {
            a: cover(rng),
            gens: random_generators(rng, g),
        },
        B3_6 | IdemYdwed => Case::System { a: cover(rng) },
        B3_7 | S3_8All => Case::Map {
            a: cover(rng),
            f: random_function(rng, g),
        },
        S3_8Bij | B3_10 => Case::Map {
            a: cover(rng),
            f: (&random_permutation(rng, g)).into(),
        },
        Covar => Case::Relabel {
            a: cover(rng),
            gens: random_generators(rng, g),
            f: random_permutation(rng, g),
        },
    }
}

/// Runs a theorem's checker over its instance space.
pub fn sweep(id: TheoremId, n: usize, mode: Mode, opts: &SweepOptions) -> Result<SweepReport> {
    let start = Instant::now();
    let stream = cases(id, n, mode)?;
    let (mode_name, samples, seed) = match mode {
        Mode::Exhaustive => (ModeName::Exhaustive, None, 0),
        Mode::Random { samples, seed } => (ModeName::Random, Some(samples), seed),
    };
    let mut report = SweepReport {
        theorem: id,
        label: id.label().to_string(),
        n,
        mode: mode_name,
        samples,
        seed,
        convention: opts.conv,
        instance_count: 0,
        hold_count: 0,
        fail_count: 0,
        skip_count: 0,
        tallies: BTreeMap::new(),
        counterexamples: Vec::new(),
        elapsed_ms: None,
    };
    let cap = opts.max_counterexamples.min(MAX_COUNTEREXAMPLES);
    let conv = opts.conv;
    let run = |report: &mut SweepReport| -> Result<()> {
        let mut stream = stream;
        loop {
            let chunk: Vec<Case> = stream.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                return Ok(());
            }
            let outcomes: Vec<_> = chunk.par_iter().map(|c| check_case(id, c, conv)).collect();
            for o in outcomes {
                let o = o?;
                report.instance_count += 1;
                match o.verdict.status {
                    Status::Holds => report.hold_count += 1,
                    Status::Skipped => report.skip_count += 1,
                    Status::Fails => {
                        report.fail_count += 1;
                        if report.counterexamples.len() < cap {
                            report.counterexamples.push(o.verdict);
                        }
                    }
                }
                for t in o.tags {
                    *report.tallies.entry(t.to_string()).or_insert(0) += 1;
                }
            }
        }
    };
    match opts.jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Validation(format!("thread pool: {e}")))?;
            pool.install(|| run(&mut report))?;
        }
        None => run(&mut report)?,
    }
    if opts.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(id: TheoremId, n: usize) -> SweepReport {
        sweep(id, n, Mode::Exhaustive, &SweepOptions::default()).unwrap()
    }

    #[test]
    fn counts_sum() {
        for id in TheoremId::all() {
            let r = quick(id, 2);
            assert_eq!(r.hold_count + r.fail_count + r.skip_count, r.instance_count, "{id}");
            assert!(r.counterexamples.len() as u64 <= r.fail_count.min(32));
        }
    }

    #[test]
    fn limits_enforced() {
        let opts = SweepOptions::default();
        assert!(matches!(
            sweep(TheoremId::S3_3, 4, Mode::Exhaustive, &opts),
            Err(Error::CapExceeded { .. })
        ));
        assert!(sweep(TheoremId::S3_3, 9, Mode::Random { samples: 1, seed: 0 }, &opts).is_err());
    }

    #[test]
    fn explication_has_known_disagreement() {
        let r = quick(TheoremId::S3_8All, 2);
        assert!(r.fail_count >= 1);
    }

    #[test]
    fn random_sweep_is_seeded() {
        let m = Mode::Random { samples: 50, seed: 11 };
        let a = sweep(TheoremId::Covar, 3, m, &SweepOptions::default()).unwrap();
        let b = sweep(
            TheoremId::Covar,
            3,
            m,
            &SweepOptions {
                jobs: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.instance_count, 50);
    }
}
