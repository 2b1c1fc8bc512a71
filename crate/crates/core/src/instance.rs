//! JSON instance files: named systems, permutations, functions and flows
//! over one ground set.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::cantor::EndoFunction;
use crate::dynsys::{Autobolism, DiscreteFlow, DEFAULT_GROUP_CAP};
use crate::error::{Error, Result};
use crate::setsys::{ClosureConvention, SetSystem};
use crate::subset::{GroundSet, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum WireFlow {
    Cyclic(String),
    Group(Vec<String>),
}

/// The on-disk instance schema; subsets are index arrays.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireInstance {
    pub ground: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<ClosureConvention>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty", deserialize_with = "unique_keys")]
    pub systems: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty", deserialize_with = "unique_keys")]
    pub permutations: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty", deserialize_with = "unique_keys")]
    pub functions: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty", deserialize_with = "unique_keys")]
    pub flows: BTreeMap<String, WireFlow>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty", deserialize_with = "unique_keys")]
    pub subsets: BTreeMap<String, Vec<usize>>,
}

fn unique_keys<'de, D, V>(d: D) -> std::result::Result<BTreeMap<String, V>, D::Error>
where
    D: Deserializer<'de>,
    V: Deserialize<'de>,
{
    struct Unique<V>(PhantomData<V>);

    impl<'de, V: Deserialize<'de>> Visitor<'de> for Unique<V> {
        type Value = BTreeMap<String, V>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an object with distinct names")
        }

        fn visit_map<M: MapAccess<'de>>(self, mut map: M) -> std::result::Result<Self::Value, M::Error> {
            let mut out = BTreeMap::new();
            while let Some((k, v)) = map.next_entry::<String, V>()? {
                if out.contains_key(&k) {
                    return Err(de::Error::custom(format!("duplicate name {k:?}")));
                }
                out.insert(k, v);
            }
            Ok(out)
        }
    }

    d.deserialize_map(Unique(PhantomData))
}

impl WireInstance {
    pub fn new(ground: GroundSet) -> Self {
        WireInstance {
            ground: ground.size(),
            ..Default::default()
        }
    }

    pub fn convention(mut self, conv: ClosureConvention) -> Self {
        self.convention = Some(conv);
        self
    }

    pub fn system(mut self, name: &str, a: &SetSystem) -> Self {
        self.systems.insert(name.into(), a.to_index_lists());
        self
    }

    pub fn permutation(mut self, name: &str, p: &Autobolism) -> Self {
        self.permutations.insert(name.into(), p.image());
        self
    }

    pub fn function(mut self, name: &str, f: &EndoFunction) -> Self {
        self.functions.insert(name.into(), f.image());
        self
    }

    pub fn subset(mut self, name: &str, s: Subset) -> Self {
        self.subsets.insert(name.into(), s.to_vec());
        self
    }

    /// Adds `g0, g1, ..` and a group flow over them.
    pub fn group_flow(mut self, name: &str, gens: &[Autobolism]) -> Self {
        let mut names = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let n = format!("g{i}");
            self.permutations.insert(n.clone(), g.image());
            names.push(n);
        }
        self.flows.insert(name.into(), WireFlow::Group(names));
        self
    }

    /// Adds permutation `phi` and a cyclic flow over it.
    pub fn cyclic_flow(mut self, name: &str, phi: &Autobolism) -> Self {
        self.permutations.insert("phi".into(), phi.image());
        self.flows.insert(name.into(), WireFlow::Cyclic("phi".into()));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }
}

/// A validated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub ground: GroundSet,
    pub convention: Option<ClosureConvention>,
    pub systems: BTreeMap<String, SetSystem>,
    pub permutations: BTreeMap<String, Autobolism>,
    pub functions: BTreeMap<String, EndoFunction>,
    pub flows: BTreeMap<String, WireFlow>,
    pub subsets: BTreeMap<String, Subset>,
}

fn subset_strict(ground: GroundSet, indices: &[usize], what: &str) -> Result<Subset> {
    let s = Subset::from_indices(ground, indices)
        .map_err(|e| Error::Validation(format!("{what}: {e}")))?;
    if s.len() != indices.len() {
        return Err(Error::Validation(format!("{what}: repeated element in {indices:?}")));
    }
    Ok(s)
}

impl Instance {
    pub fn from_wire(w: &WireInstance) -> Result<Instance> {
        let ground = GroundSet::new(w.ground).map_err(|e| Error::Validation(format!("ground: {e}")))?;
        let mut names: BTreeMap<&str, &str> = BTreeMap::new();
        let all_names = w
            .systems
            .keys()
            .map(|k| (k, "systems"))
            .chain(w.permutations.keys().map(|k| (k, "permutations")))
            .chain(w.functions.keys().map(|k| (k, "functions")))
            .chain(w.flows.keys().map(|k| (k, "flows")))
            .chain(w.subsets.keys().map(|k| (k, "subsets")));
        for (k, cat) in all_names {
            if let Some(prev) = names.insert(k, cat) {
                return Err(Error::Validation(format!("name {k:?} used in both {prev} and {cat}")));
            }
        }
        let mut systems = BTreeMap::new();
        for (name, lists) in &w.systems {
            let mut members = Vec::with_capacity(lists.len());
            for l in lists {
                members.push(subset_strict(ground, l, &format!("systems.{name}"))?);
            }
            let sys = SetSystem::new(ground, members);
            if sys.len() != lists.len() {
                return Err(Error::Validation(format!("systems.{name}: duplicate subset")));
            }
            systems.insert(name.clone(), sys);
        }
        let mut permutations = BTreeMap::new();
        for (name, img) in &w.permutations {
            let p = Autobolism::new(ground, img)
                .map_err(|e| Error::Validation(format!("permutations.{name}: {e}")))?;
            permutations.insert(name.clone(), p);
        }
        let mut functions = BTreeMap::new();
        for (name, img) in &w.functions {
            let f = EndoFunction::new(ground, img)
                .map_err(|e| Error::Validation(format!("functions.{name}: {e}")))?;
            functions.insert(name.clone(), f);
        }
        for (name, flow) in &w.flows {
            let refs: Vec<&String> = match flow {
                WireFlow::Cyclic(p) => vec![p],
                WireFlow::Group(ps) => ps.iter().collect(),
            };
            if refs.is_empty() {
                return Err(Error::Validation(format!("flows.{name}: empty generator list")));
            }
            if let Some(missing) = refs.iter().find(|r| !permutations.contains_key(r.as_str())) {
                return Err(Error::Validation(format!("flows.{name}: unknown permutation {missing:?}")));
            }
        }
        let mut subsets = BTreeMap::new();
        for (name, l) in &w.subsets {
            subsets.insert(name.clone(), subset_strict(ground, l, &format!("subsets.{name}"))?);
        }
        Ok(Instance {
            ground,
            convention: w.convention,
            systems,
            permutations,
            functions,
            flows: w.flows.clone(),
            subsets,
        })
    }

    pub fn to_wire(&self) -> WireInstance {
        WireInstance {
            ground: self.ground.size(),
            convention: self.convention,
            systems: self.systems.iter().map(|(k, v)| (k.clone(), v.to_index_lists())).collect(),
            permutations: self.permutations.iter().map(|(k, v)| (k.clone(), v.image())).collect(),
            functions: self.functions.iter().map(|(k, v)| (k.clone(), v.image())).collect(),
            flows: self.flows.clone(),
            subsets: self.subsets.iter().map(|(k, v)| (k.clone(), v.to_vec())).collect(),
        }
    }

    pub fn system(&self, name: &str) -> Result<&SetSystem> {
        self.systems.get(name).ok_or_else(|| Error::UnknownName(format!("system {name:?}")))
    }

    pub fn permutation(&self, name: &str) -> Result<&Autobolism> {
        self.permutations
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("permutation {name:?}")))
    }

    /// Named function; a permutation name also resolves here.
    pub fn function(&self, name: &str) -> Result<EndoFunction> {
        if let Some(f) = self.functions.get(name) {
            return Ok(f.clone());
        }
        if let Some(p) = self.permutations.get(name) {
            return Ok(EndoFunction::from(p));
        }
        Err(Error::UnknownName(format!("function {name:?}")))
    }

    pub fn subset(&self, name: &str) -> Result<Subset> {
        self.subsets
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownName(format!("subset {name:?}")))
    }

    /// Generator list of a named flow.
    pub fn flow_generators(&self, name: &str) -> Result<Vec<Autobolism>> {
        match self.flows.get(name) {
            Some(WireFlow::Cyclic(p)) => Ok(vec![self.permutation(p)?.clone()]),
            Some(WireFlow::Group(ps)) => ps.iter().map(|p| self.permutation(p).cloned()).collect(),
            None => Err(Error::UnknownName(format!("flow {name:?}"))),
        }
    }

    /// Named flow; a bare permutation name is read as a cyclic flow.
    pub fn flow(&self, name: &str) -> Result<DiscreteFlow> {
        match self.flows.get(name) {
            Some(WireFlow::Cyclic(p)) => Ok(DiscreteFlow::cyclic(self.permutation(p)?.clone())),
            Some(WireFlow::Group(_)) => DiscreteFlow::group(&self.flow_generators(name)?, DEFAULT_GROUP_CAP),
            None => match self.permutations.get(name) {
                Some(p) => Ok(DiscreteFlow::cyclic(p.clone())),
                None => Err(Error::UnknownName(format!("flow {name:?}"))),
            },
        }
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(source: &str) -> Result<Instance> {
    let wire = parse_wire(source)?;
    Instance::from_wire(&wire)
}

pub fn parse_wire(source: &str) -> Result<WireInstance> {
    let de = &mut serde_json::Deserializer::from_str(source);
    let wire: WireInstance = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        Error::Parse {
            locus: format!("line {} column {} (field `{}`)", inner.line(), inner.column(), e.path()),
            message: inner.to_string(),
        }
    })?;
    Ok(wire)
}

pub fn emit_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(&inst.to_wire()).expect("instance serializes")
}
