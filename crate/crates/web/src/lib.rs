//! WebAssembly bindings for the browser demo. Each operation takes an instance
//! document and returns a JSON string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use hullflow::attract::{free_attractors, pre_rooms, AttractorQuery, CoherenceVariant};
use hullflow::cantor::{
    cantor_membership, explication_check, fibration_integrity, is_commutative_cantor, preserves_unfamily, Sign,
};
use hullflow::dynsys::orbit_partition;
use hullflow::instance::{parse_instance, Instance};
use hullflow::setsys::{classify, Hull};
use hullflow::{ClosureConvention, SetSystem};

fn setup(source: &str, convention: &str) -> Result<(Instance, ClosureConvention), String> {
    let inst = parse_instance(source).map_err(|e| e.to_string())?;
    let conv = match convention {
        "" => inst.convention.unwrap_or_default(),
        c => c.parse()?,
    };
    Ok((inst, conv))
}

fn system_or_powerset(inst: &Instance, name: &str) -> Result<SetSystem, String> {
    if name == "powerset" && !inst.systems.contains_key(name) {
        SetSystem::power_set(inst.ground)
    } else {
        inst.system(name).cloned()
    }
    .map_err(|e| e.to_string())
}

fn lists(a: &SetSystem) -> Value {
    json!(a.to_index_lists())
}

/// `cl_A(Z)` for every `Z ⊆ Y`, with the system's flags.
pub fn closure_table(source: &str, system: &str, convention: &str) -> Result<String, String> {
    let (inst, conv) = setup(source, convention)?;
    let a = inst.system(system).map_err(|e| e.to_string())?;
    inst.ground.check_enumerable().map_err(|e| e.to_string())?;
    let cl = Hull::closure(a, conv);
    let rows: Vec<Value> = inst
        .ground
        .subsets()
        .map(|z| json!({ "set": z.to_vec(), "closure": cl.apply(z).to_vec() }))
        .collect();
    let flags = classify(a, conv).map_err(|e| e.to_string())?;
    Ok(json!({ "convention": conv.name(), "flags": flags, "rows": rows }).to_string())
}

/// Orbits, free attractors under every applicable variant, and pre-rooms.
pub fn flow_attractors(source: &str, flow: &str, covering: &str, convention: &str) -> Result<String, String> {
    let (inst, conv) = setup(source, convention)?;
    let f = inst.flow(flow).map_err(|e| e.to_string())?;
    let z = system_or_powerset(&inst, covering)?;
    let mut variants = serde_json::Map::new();
    for v in CoherenceVariant::all() {
        let q = AttractorQuery::new(f.clone(), z.clone()).conv(conv).variant(v);
        match free_attractors(&q) {
            Ok(at) => variants.insert(v.name().into(), lists(&at)),
            Err(hullflow::Error::VariantUnsupported(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
    }
    let (rooms, partition) = pre_rooms(&f, &z, conv).map_err(|e| e.to_string())?;
    Ok(json!({
        "convention": conv.name(),
        "orbits": lists(&orbit_partition(&f)),
        "attractors": variants,
        "pre_rooms": lists(&rooms),
        "rooms_partition": partition,
    })
    .to_string())
}

/// Cantor memberships, commutation, and the explication comparison for one map.
pub fn cantor_report(source: &str, function: &str, system: &str, convention: &str) -> Result<String, String> {
    let (inst, conv) = setup(source, convention)?;
    let f = inst.function(function).map_err(|e| e.to_string())?;
    let a = inst.system(system).map_err(|e| e.to_string())?;
    let err = |e: hullflow::Error| e.to_string();
    let e = explication_check(&f, a, conv).map_err(err)?;
    Ok(json!({
        "convention": conv.name(),
        "plus": cantor_membership(&f, a, Sign::Plus),
        "minus": cantor_membership(&f, a, Sign::Minus),
        "commutative": is_commutative_cantor(&f, a, conv).map_err(err)?,
        "preserves_unfamily": preserves_unfamily(&f, a).map_err(err)?,
        "integrity": fibration_integrity(&f, a, conv).map_err(err)?,
        "explication": e,
        "explication_agrees": e.agrees(),
    })
    .to_string())
}

#[wasm_bindgen(js_name = closureTable)]
pub fn closure_table_js(source: &str, system: &str, convention: &str) -> Result<String, JsError> {
    closure_table(source, system, convention).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = flowAttractors)]
pub fn flow_attractors_js(source: &str, flow: &str, covering: &str, convention: &str) -> Result<String, JsError> {
    flow_attractors(source, flow, covering, convention).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = cantorReport)]
pub fn cantor_report_js(source: &str, function: &str, system: &str, convention: &str) -> Result<String, JsError> {
    cantor_report(source, function, system, convention).map_err(|e| JsError::new(&e))
}
