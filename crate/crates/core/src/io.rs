//! JSON documents for heaps, groups, rings, trusses, modules, morphisms and
//! diagrams.
//!
//! Loading checks shapes and index ranges only. Axioms are checked separately
//! (see [`check_document`]).

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::diagram::{Grid3x3, Row2x5, Ses, SnakeDiagram};
use crate::error::{Error, Result, Verdict};
use crate::heap::{FiniteGroup, FiniteHeap, HeapMorphism};
use crate::module::{FiniteModule, ModuleMorphism};
use crate::table::{self, malformed};
use crate::truss::{truss_of_ring, FiniteRing, FiniteTruss};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HeapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    size: usize,
    op: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    size: usize,
    mul: Vec<Vec<usize>>,
    id: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    size: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    one: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TrussDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    heap: HeapDoc,
    mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    one: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum TrussRef {
    Name(String),
    Inline(TrussDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    truss: TrussRef,
    size: usize,
    /// Omitted: the cyclic heap `[a,b,c] = a − b + c mod size`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    op: Option<Vec<Vec<Vec<usize>>>>,
    act: Vec<Vec<usize>>,
    #[serde(default)]
    unital: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    trusses: BTreeMap<String, TrussDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    role: String,
    dom: Value,
    cod: Value,
    map: Vec<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    trusses: BTreeMap<String, TrussDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    from: String,
    to: String,
    map: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    trusses: BTreeMap<String, TrussDoc>,
    modules: BTreeMap<String, ModuleDoc>,
    maps: Vec<MapDoc>,
    shape: Shape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    e2: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Snake,
    #[serde(rename = "grid3x3")]
    Grid3x3,
    #[serde(rename = "row2x5")]
    Row2x5,
    Ses,
}

impl Shape {
    /// Number of maps a diagram of this shape lists, in role order.
    pub fn arity(self) -> usize {
        match self {
            Shape::Snake => 7,
            Shape::Grid3x3 => 12,
            Shape::Row2x5 => 13,
            Shape::Ses => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::Snake => "snake",
            Shape::Grid3x3 => "grid3x3",
            Shape::Row2x5 => "row2x5",
            Shape::Ses => "ses",
        }
    }
}

#[derive(Debug, Clone)]
pub struct NamedMap {
    pub name: Option<String>,
    pub from: String,
    pub to: String,
    pub morphism: ModuleMorphism,
}

/// A loaded diagram: modules by name and maps in role order.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub shape: Shape,
    pub modules: BTreeMap<String, Arc<FiniteModule>>,
    pub maps: Vec<NamedMap>,
    pub e2: Option<usize>,
}

impl Diagram {
    fn morphisms<const N: usize>(&self, shape: Shape) -> Result<[ModuleMorphism; N]> {
        if self.shape != shape {
            return Err(Error::Shape(format!("expected a {} diagram, found {}", shape.name(), self.shape.name())));
        }
        let maps: Vec<ModuleMorphism> = self.maps.iter().map(|m| m.morphism.clone()).collect();
        maps.try_into()
            .map_err(|v: Vec<_>| Error::Shape(format!("{} diagram needs {N} maps, found {}", shape.name(), v.len())))
    }

    /// Maps `φ, ψ, φ₁, ψ₁, f′, f, f″`.
    pub fn snake(&self) -> Result<SnakeDiagram> {
        let [phi, psi, phi1, psi1, a, b, c] = self.morphisms(Shape::Snake)?;
        SnakeDiagram::new(phi, psi, phi1, psi1, a, b, c)
    }

    /// Maps: the three rows `(f, g)` top to bottom, then the three columns
    /// `(x′, x)` left to right.
    pub fn grid(&self) -> Result<Grid3x3> {
        let [r0f, r0g, r1f, r1g, r2f, r2g, c0a, c0b, c1a, c1b, c2a, c2b] = self.morphisms(Shape::Grid3x3)?;
        Grid3x3::new([(r0f, r0g), (r1f, r1g), (r2f, r2g)], [(c0a, c0b), (c1a, c1b), (c2a, c2b)])
    }

    /// Maps: four top, four bottom, five vertical, each left to right.
    pub fn row(&self) -> Result<Row2x5> {
        let [t0, t1, t2, t3, b0, b1, b2, b3, v0, v1, v2, v3, v4] = self.morphisms(Shape::Row2x5)?;
        Row2x5::new([t0, t1, t2, t3], [b0, b1, b2, b3], [v0, v1, v2, v3, v4])
    }

    /// Maps `f, g`.
    pub fn ses(&self) -> Result<Ses> {
        let [f, g] = self.morphisms(Shape::Ses)?;
        Ses::new(f, g, self.e2)
    }
}

#[derive(Debug, Clone)]
pub enum Document {
    Heap(FiniteHeap),
    Group(FiniteGroup),
    Ring(FiniteRing),
    Truss(FiniteTruss),
    Module(FiniteModule),
    HeapMorphism(HeapMorphism),
    ModuleMorphism(ModuleMorphism),
    Diagram(Diagram),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Heap(_) => "heap",
            Document::Group(_) => "group",
            Document::Ring(_) => "ring",
            Document::Truss(_) => "truss",
            Document::Module(_) => "module",
            Document::HeapMorphism(_) | Document::ModuleMorphism(_) => "morphism",
            Document::Diagram(_) => "diagram",
        }
    }
}

fn typed<T: for<'de> Deserialize<'de>>(kind: &str, value: Value) -> Result<T> {
    serde_json::from_value(value).map_err(|e| malformed(kind, e.to_string()))
}

fn heap_of(doc: &HeapDoc) -> Result<FiniteHeap> {
    FiniteHeap::from_nested(doc.size, &doc.op)
}

fn truss_of(doc: &TrussDoc) -> Result<FiniteTruss> {
    let heap = Arc::new(heap_of(&doc.heap)?);
    FiniteTruss::from_nested(heap, &doc.mul, doc.one)
}

/// Trusses shared by name within one document.
struct Trusses {
    named: BTreeMap<String, Arc<FiniteTruss>>,
}

impl Trusses {
    fn new(bundle: &BTreeMap<String, TrussDoc>) -> Result<Self> {
        let mut named = BTreeMap::new();
        for (name, doc) in bundle {
            named.insert(name.clone(), Arc::new(truss_of(doc).map_err(|e| rename(e, &format!("trusses.{name}")))?));
        }
        Ok(Self { named })
    }

    fn resolve(&mut self, r: &TrussRef) -> Result<Arc<FiniteTruss>> {
        match r {
            TrussRef::Inline(doc) => Ok(Arc::new(truss_of(doc)?)),
            TrussRef::Name(name) => {
                if let Some(t) = self.named.get(name) {
                    return Ok(t.clone());
                }
                let n = name
                    .strip_prefix('Z')
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| malformed("truss", format!("unknown truss `{name}`")))?;
                let t = Arc::new(truss_of_ring(&FiniteRing::zn(n))?);
                self.named.insert(name.clone(), t.clone());
                Ok(t)
            }
        }
    }
}

fn rename(e: Error, prefix: &str) -> Error {
    match e {
        Error::Malformed { path, reason } => malformed(format!("{prefix}.{path}"), reason),
        other => other,
    }
}

fn module_of(doc: &ModuleDoc, trusses: &mut Trusses) -> Result<FiniteModule> {
    let truss = trusses.resolve(&doc.truss)?;
    let heap = match &doc.op {
        Some(op) => FiniteHeap::from_nested(doc.size, op)?,
        None if doc.size == 0 => return Err(Error::EmptyCarrier),
        None => FiniteHeap::cyclic(doc.size),
    };
    let act = table::flatten2("act", truss.size(), doc.size, doc.size, &doc.act)?;
    FiniteModule::new(truss, Arc::new(heap), act, doc.unital)
}

fn module_value(value: Value, trusses: &mut Trusses) -> Result<FiniteModule> {
    let doc: ModuleDoc = typed("module", value)?;
    let mut local = Trusses::new(&doc.trusses)?;
    local.named.extend(trusses.named.iter().map(|(k, v)| (k.clone(), v.clone())));
    module_of(&doc, &mut local)
}

fn diagram_of(doc: DiagramDoc) -> Result<Diagram> {
    let mut trusses = Trusses::new(&doc.trusses)?;
    let mut modules = BTreeMap::new();
    for (name, m) in &doc.modules {
        let module = module_of(m, &mut trusses).map_err(|e| rename(e, &format!("modules.{name}")))?;
        modules.insert(name.clone(), Arc::new(module));
    }
    if doc.maps.len() != doc.shape.arity() {
        return Err(Error::Shape(format!("{} diagram needs {} maps, found {}", doc.shape.name(), doc.shape.arity(), doc.maps.len())));
    }
    let mut maps = Vec::with_capacity(doc.maps.len());
    for (i, m) in doc.maps.into_iter().enumerate() {
        let get = |n: &str| modules.get(n).cloned().ok_or_else(|| malformed(format!("maps[{i}]"), format!("unknown module `{n}`")));
        let (dom, cod) = (get(&m.from)?, get(&m.to)?);
        let morphism = ModuleMorphism::new(dom, cod, m.map).map_err(|e| rename(e, &format!("maps[{i}]")))?;
        maps.push(NamedMap { name: m.name, from: m.from, to: m.to, morphism });
    }
    Ok(Diagram { shape: doc.shape, modules, maps, e2: doc.e2 })
}

pub fn parse(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let kind = match value.get("kind") {
        Some(Value::String(k)) => k.clone(),
        Some(_) => return Err(malformed("kind", "not a string")),
        None => return Err(malformed("kind", "missing")),
    };
    match kind.as_str() {
        "heap" => Ok(Document::Heap(heap_of(&typed("heap", value)?)?)),
        "group" => {
            let d: GroupDoc = typed("group", value)?;
            Ok(Document::Group(FiniteGroup::from_nested(d.size, &d.mul, d.id)?))
        }
        "ring" => {
            let d: RingDoc = typed("ring", value)?;
            Ok(Document::Ring(FiniteRing::from_nested(d.size, &d.add, &d.mul, d.zero, d.one)?))
        }
        "truss" => Ok(Document::Truss(truss_of(&typed("truss", value)?)?)),
        "module" => Ok(Document::Module(module_value(value, &mut Trusses { named: BTreeMap::new() })?)),
        "morphism" => {
            let d: MorphismDoc = typed("morphism", value)?;
            match d.role.as_str() {
                "heap" => {
                    let dom = Arc::new(heap_of(&typed("morphism.dom", d.dom)?)?);
                    let cod = Arc::new(heap_of(&typed("morphism.cod", d.cod)?)?);
                    Ok(Document::HeapMorphism(HeapMorphism::new(dom, cod, d.map)?))
                }
                "module" => {
                    let mut trusses = Trusses::new(&d.trusses)?;
                    let dom = Arc::new(module_value(d.dom, &mut trusses).map_err(|e| rename(e, "dom"))?);
                    let cod = Arc::new(module_value(d.cod, &mut trusses).map_err(|e| rename(e, "cod"))?);
                    Ok(Document::ModuleMorphism(ModuleMorphism::new(dom, cod, d.map)?))
                }
                other => Err(malformed("role", format!("expected `heap` or `module`, found `{other}`"))),
            }
        }
        "diagram" => Ok(Document::Diagram(diagram_of(typed("diagram", value)?)?)),
        other => Err(Error::UnknownKind(other.to_string())),
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<Document> {
    parse(&std::fs::read_to_string(path)?)
}

fn heap_doc(h: &FiniteHeap, kind: bool) -> HeapDoc {
    HeapDoc { kind: kind.then(|| "heap".into()), size: h.size(), op: h.nested_table() }
}

fn truss_doc(t: &FiniteTruss, kind: bool) -> TrussDoc {
    TrussDoc { kind: kind.then(|| "truss".into()), heap: heap_doc(t.heap(), false), mul: t.nested_mul(), one: t.one() }
}

fn module_doc(m: &FiniteModule, truss: TrussRef, kind: bool) -> ModuleDoc {
    ModuleDoc {
        kind: kind.then(|| "module".into()),
        truss,
        size: m.size(),
        op: Some(m.heap().nested_table()),
        act: m.nested_act(),
        unital: m.is_unital(),
        trusses: BTreeMap::new(),
    }
}

fn to_value<T: Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("document types serialize")
}

/// Names distinct trusses `t0, t1, …` in order of first appearance.
fn bundle<'a>(modules: impl Iterator<Item = &'a Arc<FiniteModule>>) -> (BTreeMap<String, TrussDoc>, Vec<Arc<FiniteTruss>>) {
    let mut seen: Vec<Arc<FiniteTruss>> = Vec::new();
    for m in modules {
        if !seen.iter().any(|t| **t == **m.truss()) {
            seen.push(m.truss().clone());
        }
    }
    let docs = seen.iter().enumerate().map(|(i, t)| (format!("t{i}"), truss_doc(t, false))).collect();
    (docs, seen)
}

fn truss_name(seen: &[Arc<FiniteTruss>], t: &FiniteTruss) -> TrussRef {
    TrussRef::Name(format!("t{}", seen.iter().position(|s| **s == *t).expect("truss was bundled")))
}

pub fn to_json(doc: &Document) -> Value {
    match doc {
        Document::Heap(h) => to_value(&heap_doc(h, true)),
        Document::Group(g) => to_value(&GroupDoc { kind: Some("group".into()), size: g.size(), mul: g.nested_mul(), id: g.identity() }),
        Document::Ring(r) => to_value(&RingDoc {
            kind: Some("ring".into()),
            size: r.size(),
            add: r.nested_add(),
            mul: r.nested_mul(),
            zero: r.zero(),
            one: r.one(),
        }),
        Document::Truss(t) => to_value(&truss_doc(t, true)),
        Document::Module(m) => to_value(&module_doc(m, TrussRef::Inline(truss_doc(m.truss(), false)), true)),
        Document::HeapMorphism(f) => to_value(&MorphismDoc {
            kind: Some("morphism".into()),
            role: "heap".into(),
            dom: to_value(&heap_doc(&f.dom, false)),
            cod: to_value(&heap_doc(&f.cod, false)),
            map: f.map.clone(),
            trusses: BTreeMap::new(),
        }),
        Document::ModuleMorphism(f) => {
            let (trusses, seen) = bundle([&f.dom, &f.cod].into_iter());
            to_value(&MorphismDoc {
                kind: Some("morphism".into()),
                role: "module".into(),
                dom: to_value(&module_doc(&f.dom, truss_name(&seen, f.dom.truss()), false)),
                cod: to_value(&module_doc(&f.cod, truss_name(&seen, f.cod.truss()), false)),
                map: f.map.clone(),
                trusses,
            })
        }
        Document::Diagram(d) => {
            let (trusses, seen) = bundle(d.modules.values());
            let modules = d.modules.iter().map(|(n, m)| (n.clone(), module_doc(m, truss_name(&seen, m.truss()), false))).collect();
            let maps = d
                .maps
                .iter()
                .map(|m| MapDoc { name: m.name.clone(), from: m.from.clone(), to: m.to.clone(), map: m.morphism.map.clone() })
                .collect();
            to_value(&DiagramDoc { kind: Some("diagram".into()), trusses, modules, maps, shape: d.shape, e2: d.e2 })
        }
    }
}

pub fn save(doc: &Document, path: impl AsRef<Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(&to_json(doc)).expect("values serialize");
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Builds a diagram from maps in role order, naming modules by identity.
pub fn diagram_from_maps(shape: Shape, maps: &[ModuleMorphism], e2: Option<usize>) -> Result<Diagram> {
    if maps.len() != shape.arity() {
        return Err(Error::Shape(format!("{} diagram needs {} maps, found {}", shape.name(), shape.arity(), maps.len())));
    }
    let mut names: Vec<(Arc<FiniteModule>, String)> = Vec::new();
    let mut name_of = |m: &Arc<FiniteModule>| -> String {
        if let Some((_, n)) = names.iter().find(|(k, _)| Arc::ptr_eq(k, m)) {
            return n.clone();
        }
        let n = format!("m{}", names.len());
        names.push((m.clone(), n.clone()));
        n
    };
    let mut named = Vec::with_capacity(maps.len());
    for m in maps {
        let (from, to) = (name_of(&m.dom), name_of(&m.cod));
        named.push(NamedMap { name: None, from, to, morphism: m.clone() });
    }
    let modules = names.into_iter().map(|(m, n)| (n, m)).collect();
    Ok(Diagram { shape, modules, maps: named, e2 })
}

/// Axiom and law checks for a document; each entry names what was checked.
pub fn check_document(doc: &Document) -> Result<Vec<(String, Verdict)>> {
    let mut out = Vec::new();
    match doc {
        Document::Heap(h) => out.push(("heap".into(), h.validate())),
        Document::Group(g) => out.push(("group".into(), g.validate())),
        Document::Ring(r) => out.push(("ring".into(), r.validate())),
        Document::Truss(t) => out.push(("truss".into(), t.validate()?)),
        Document::Module(m) => {
            out.push(("truss".into(), m.truss().validate()?));
            out.push(("module".into(), m.validate()?));
        }
        Document::HeapMorphism(f) => {
            out.push(("dom".into(), f.dom.validate()));
            out.push(("cod".into(), f.cod.validate()));
            out.push(("morphism".into(), f.validate()));
        }
        Document::ModuleMorphism(f) => {
            out.push(("dom".into(), f.dom.validate()?));
            out.push(("cod".into(), f.cod.validate()?));
            out.push(("morphism".into(), f.validate()));
        }
        Document::Diagram(d) => {
            let mut trusses: Vec<&Arc<FiniteTruss>> = Vec::new();
            for m in d.modules.values() {
                if !trusses.iter().any(|t| ***t == **m.truss()) {
                    trusses.push(m.truss());
                }
            }
            for (i, t) in trusses.into_iter().enumerate() {
                out.push((format!("truss {i}"), t.validate()?));
            }
            for (name, m) in &d.modules {
                out.push((format!("module {name}"), m.validate()?));
            }
            for (i, m) in d.maps.iter().enumerate() {
                let label = m.name.clone().unwrap_or_else(|| format!("{}→{}", m.from, m.to));
                out.push((format!("map {i} ({label})"), m.morphism.validate()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::fixtures::*;

    #[test]
    fn heap_round_trip() {
        let doc = Document::Heap(FiniteHeap::cyclic(3));
        let back = parse(&to_json(&doc).to_string()).unwrap();
        assert!(matches!(back, Document::Heap(h) if h == FiniteHeap::cyclic(3)));
    }

    #[test]
    fn range_error_names_the_index_path() {
        let mut v = to_json(&Document::Heap(FiniteHeap::cyclic(3)));
        v["op"][1][2][0] = Value::from(3);
        match parse(&v.to_string()) {
            Err(Error::Malformed { path, .. }) => assert_eq!(path, "op[1][2][0]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors_are_distinguished() {
        assert!(matches!(parse("{"), Err(Error::Parse(_))));
        assert!(matches!(parse(r#"{"kind":"sheaf"}"#), Err(Error::UnknownKind(k)) if k == "sheaf"));
        assert!(matches!(parse(r#"{"kind":"heap","size":1}"#), Err(Error::Malformed { .. })));
    }

    #[test]
    fn module_by_truss_name() {
        let text = r#"{"kind":"module","truss":"Z2","size":2,"act":[[0,0],[0,1]],"unital":true}"#;
        let Document::Module(m) = parse(text).unwrap() else { panic!() };
        assert_eq!(m.validate().unwrap(), Ok(()));
        let bundled = r#"{"kind":"module","truss":"two","trusses":{"two":{"heap":{"size":1,"op":[[[0]]]},"mul":[[0]]}},"size":1,"act":[[0]]}"#;
        assert!(matches!(parse(bundled).unwrap(), Document::Module(_)));
    }

    #[test]
    fn diagram_round_trip_shares_modules() {
        let (f, g) = z2_z4_z2();
        let d = diagram_from_maps(Shape::Ses, &[f, g], None).unwrap();
        let back = parse(&to_json(&Document::Diagram(d)).to_string()).unwrap();
        let Document::Diagram(d) = back else { panic!() };
        let ses = d.ses().unwrap();
        assert_eq!(ses.f.map, vec![0, 2]);
        assert!(matches!(d.snake(), Err(Error::Shape(_))));
        assert!(check_document(&Document::Diagram(d)).unwrap().iter().all(|(_, v)| v.is_ok()));
    }
}
