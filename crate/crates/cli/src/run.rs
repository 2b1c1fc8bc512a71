use std::io::Read;

use hullflow::attract::{free_attractors, pre_rooms, topological_attractors, AttractorQuery};
use hullflow::cantor::{
    cantor_membership, explication_check, fibration_integrity, is_commutative_cantor, preserves_unfamily, Sign,
};
use hullflow::dynsys::{invariant_topology, orbit_partition};
use hullflow::instance::{parse_instance, Instance};
use hullflow::report::{CantorSummary, Payload, Report};
use hullflow::setsys::{classify, closure, elementarize, hull, HullKind};
use hullflow::verify::{check_theorem, limits, sweep, Mode, SweepOptions};
use hullflow::{ClosureConvention, Error, Result, SetSystem, Subset};

use crate::{Cli, Command};

fn load(cli: &Cli) -> Result<Instance> {
    let path = cli
        .global
        .instance
        .as_ref()
        .ok_or_else(|| Error::Validation("this command needs --instance".into()))?;
    let source = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Validation(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?
    };
    parse_instance(&source)
}

fn parse_set(inst: &Instance, text: &str) -> Result<Subset> {
    let trimmed = text.trim().trim_matches(|c| matches!(c, '[' | ']' | '{' | '}'));
    let mut idx = Vec::new();
    for part in trimmed.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        idx.push(
            part.parse::<usize>()
                .map_err(|_| Error::Validation(format!("not an element: {part:?}")))?,
        );
    }
    Subset::from_indices(inst.ground, &idx)
}

fn parse_kind(text: &str) -> Result<HullKind> {
    let d: Vec<u8> = text.bytes().map(|b| b.wrapping_sub(b'0')).collect();
    match d[..] {
        [j, k, l] => HullKind::new(j, k, l),
        _ => None,
    }
    .ok_or_else(|| Error::Validation(format!("hull kind must be three binary digits, got {text:?}")))
}

/// A named system, or `powerset` for 2^Y.
fn system_or_powerset(inst: &Instance, name: &str) -> Result<SetSystem> {
    if name == "powerset" && !inst.systems.contains_key(name) {
        SetSystem::power_set(inst.ground)
    } else {
        inst.system(name).cloned()
    }
}

/// Runs a parsed command; returns the report and the exit code.
pub fn run(cli: &Cli, echo: String) -> Result<(Report, u8)> {
    if let Command::Sweep {
        theorem,
        n,
        exhaustive,
        samples,
        seed,
        max_counterexamples,
        jobs,
        timing,
    } = &cli.command
    {
        let conv = cli.global.convention.unwrap_or_default();
        let mode = if *exhaustive {
            Mode::Exhaustive
        } else {
            Mode::Random {
                samples: samples.unwrap_or(limits(*theorem).default_samples),
                seed: *seed,
            }
        };
        let opts = SweepOptions {
            conv,
            max_counterexamples: *max_counterexamples,
            jobs: *jobs,
            timing: *timing,
        };
        let r = sweep(*theorem, *n, mode, &opts)?;
        let code = u8::from(r.proved_failure());
        return Ok((Report::new(echo, conv, Payload::Sweep(r)), code));
    }

    let inst = load(cli)?;
    let conv: ClosureConvention = cli.global.convention.or(inst.convention).unwrap_or_default();
    let mut code = 0;
    let payload = match &cli.command {
        Command::Closure { system, set } => Payload::subset(closure(inst.system(system)?, parse_set(&inst, set)?, conv)),
        Command::Hull { system, kind, set } => Payload::subset(hull(
            inst.system(system)?,
            parse_kind(kind)?,
            parse_set(&inst, set)?,
            conv,
        )),
        Command::Elementarize { system } => Payload::system(&elementarize(inst.system(system)?)),
        Command::Classify { system } => Payload::Flags(classify(inst.system(system)?, conv)?),
        Command::InvariantTopology { flow } => {
            let f = inst.flow(flow)?;
            Payload::system(&invariant_topology(f.generators())?)
        }
        Command::Orbits { flow } => Payload::system(&orbit_partition(&inst.flow(flow)?)),
        Command::Attractors {
            flow,
            covering,
            variant,
            cadence,
            coherence,
        } => {
            let mut q = AttractorQuery::new(inst.flow(flow)?, system_or_powerset(&inst, covering)?)
                .conv(conv)
                .variant(*variant);
            if let Some(c) = cadence {
                q = q.cadence(system_or_powerset(&inst, c)?);
            }
            if let Some(c) = coherence {
                q = q.coherence(system_or_powerset(&inst, c)?);
            }
            Payload::system(&free_attractors(&q)?)
        }
        Command::TopoAttractors {
            topologies,
            coherence,
            cadence,
        } => {
            let tops = topologies
                .iter()
                .map(|t| inst.system(t).cloned())
                .collect::<Result<Vec<_>>>()?;
            Payload::system(&topological_attractors(
                &tops,
                &system_or_powerset(&inst, coherence)?,
                &system_or_powerset(&inst, cadence)?,
            )?)
        }
        Command::Rooms { flow, covering } => {
            let (rooms, partition) = pre_rooms(&inst.flow(flow)?, &system_or_powerset(&inst, covering)?, conv)?;
            Payload::Rooms {
                rooms: rooms.to_index_lists(),
                partition,
            }
        }
        Command::CantorCheck { function, system } => {
            let f = inst.function(function)?;
            let a = inst.system(system)?;
            Payload::Cantor(CantorSummary {
                plus: cantor_membership(&f, a, Sign::Plus),
                minus: cantor_membership(&f, a, Sign::Minus),
                commutative: is_commutative_cantor(&f, a, conv)?,
                preserves_unfamily: preserves_unfamily(&f, a)?,
                integrity: fibration_integrity(&f, a, conv)?,
            })
        }
        Command::Explication { function, system } => {
            Payload::Explication(explication_check(&inst.function(function)?, inst.system(system)?, conv)?)
        }
        Command::Verify { theorem } => {
            let v = check_theorem(*theorem, &inst, conv)?;
            if theorem.is_proved() && v.is_fails() {
                code = 1;
            }
            Payload::Verdict(v)
        }
        Command::Sweep { .. } => unreachable!("handled above"),
    };
    Ok((Report::new(echo, conv, payload), code))
}
