//! JSON documents for rings, modules, matrices, complexes, resolutions and
//! sessions. Documents carry no field; a field is chosen when they are
//! instantiated.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::complex::{BoundedComplex, ChainMap, KoszulData, Orientation};
use crate::cxres::ComplexResolution;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::Matrix;
use crate::module::FpModule;
use crate::monomial::MonomialOrder;
use crate::resolution::FreeResolution;
use crate::ring::{Poly, Ring, RingDoc};

/// Parse JSON, reporting syntax and shape errors with line and column.
pub fn from_json<T: DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("documents serialize")
}

fn in_context(ctx: &str, e: Error) -> Error {
    match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{ctx}: {message}"),
        },
        Error::InvalidInput(m) => Error::InvalidInput(format!("{ctx}: {m}")),
        Error::NotHomogeneous(m) => Error::NotHomogeneous(format!("{ctx}: {m}")),
        other => other,
    }
}

fn parse_polys<F: Field>(ring: &Ring<F>, ss: &[String], ctx: &str) -> Result<Vec<Poly<F>>> {
    ss.iter()
        .enumerate()
        .map(|(i, s)| ring.parse(s).map_err(|e| in_context(&format!("{ctx} #{i}"), e)))
        .collect()
}

/// Ring without a field: variables with weights, relations, order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub vars: Vec<(String, u32)>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub order: MonomialOrder,
}

impl RingSpec {
    pub fn build<F: Field>(&self, field: F) -> Result<Ring<F>> {
        let doc = RingDoc {
            field: field.spec(),
            vars: self.vars.clone(),
            relations: self.relations.clone(),
            order: self.order,
        };
        Ring::from_doc(field, &doc)
    }

    pub fn of<F: Field>(ring: &Ring<F>) -> Self {
        let d = ring.to_doc();
        RingSpec {
            vars: d.vars,
            relations: d.relations,
            order: d.order,
        }
    }
}

/// Entries as text; `entries[i][j]` is row `i` (target generator), column `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub source: Vec<i32>,
    pub target: Vec<i32>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDoc {
    pub fn of<F: Field>(ring: &Ring<F>, m: &Matrix<F>) -> Self {
        MatrixDoc {
            source: m.source.clone(),
            target: m.target.clone(),
            entries: m.to_strings(ring),
        }
    }

    pub fn build<F: Field>(&self, ring: &Ring<F>) -> Result<Matrix<F>> {
        let mut rows = Vec::with_capacity(self.entries.len());
        for (i, row) in self.entries.iter().enumerate() {
            rows.push(parse_polys(ring, row, &format!("row {i} entry"))?);
        }
        if self.target.is_empty() || self.source.is_empty() {
            if !self.entries.iter().all(|r| r.is_empty()) || self.entries.len() != self.target.len() {
                return Err(Error::InvalidInput("entries do not match an empty matrix".into()));
            }
            return Ok(Matrix::zero(self.source.clone(), self.target.clone()));
        }
        Matrix::from_entries(ring, self.source.clone(), self.target.clone(), &rows)
    }
}

/// A module over some ring of the enclosing document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleDoc {
    /// Cokernel of the relation columns over generators of the given degrees.
    Presentation {
        gens: Vec<i32>,
        #[serde(default)]
        relations: Vec<Vec<String>>,
    },
    Free { gens: Vec<i32> },
    /// `A / J`.
    Cyclic { ideal: Vec<String> },
    /// The ideal `J` as a module.
    Ideal { gens: Vec<String> },
    ResidueField,
}

impl ModuleDoc {
    pub fn of<F: Field>(m: &FpModule<F>) -> Self {
        let ring = m.ring();
        let p = m.presentation().to_strings(ring);
        let relations = (0..m.rels().len())
            .map(|j| p.iter().map(|row| row[j].clone()).collect())
            .collect();
        ModuleDoc::Presentation {
            gens: m.gens().to_vec(),
            relations,
        }
    }

    pub fn build<F: Field>(&self, ring: &Arc<Ring<F>>) -> Result<FpModule<F>> {
        match self {
            ModuleDoc::Presentation { gens, relations } => {
                let mut rows: Vec<Vec<Poly<F>>> = vec![Vec::new(); gens.len()];
                let mut degs = Vec::with_capacity(relations.len());
                for (j, col) in relations.iter().enumerate() {
                    if col.len() != gens.len() {
                        return Err(Error::InvalidInput(format!(
                            "relation {j} has {} entries for {} generators",
                            col.len(),
                            gens.len()
                        )));
                    }
                    let ps = parse_polys(ring, col, &format!("relation {j} entry"))?;
                    let mut deg = None;
                    for (i, p) in ps.iter().enumerate() {
                        if let Some(d) = ring.degree(&ring.nf(p)) {
                            let d = d + gens[i];
                            if deg.is_some_and(|e| e != d) {
                                return Err(Error::NotHomogeneous(format!("relation {j}")));
                            }
                            deg = Some(d);
                        }
                    }
                    degs.push(deg.unwrap_or(0));
                    for (i, p) in ps.into_iter().enumerate() {
                        rows[i].push(p);
                    }
                }
                if relations.is_empty() {
                    return Ok(FpModule::free(ring, gens.clone()));
                }
                let mat = Matrix::from_entries(ring, degs, gens.clone(), &rows)?;
                FpModule::new(ring, gens.clone(), mat.into_cols())
            }
            ModuleDoc::Free { gens } => Ok(FpModule::free(ring, gens.clone())),
            ModuleDoc::Cyclic { ideal } => FpModule::cyclic(ring, &parse_polys(ring, ideal, "ideal generator")?),
            ModuleDoc::Ideal { gens } => FpModule::ideal(ring, &parse_polys(ring, gens, "ideal generator")?),
            ModuleDoc::ResidueField => Ok(FpModule::residue_field(ring)),
        }
    }
}

/// A slot map tagged with its source slot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotMap {
    pub from: i32,
    pub matrix: MatrixDoc,
}

/// A bounded complex: slot `lo + k` is `slots[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub orientation: Orientation,
    pub lo: i32,
    pub slots: Vec<ModuleDoc>,
    #[serde(default)]
    pub differentials: Vec<SlotMap>,
}

fn slot_maps<F: Field>(ring: &Ring<F>, maps: &BTreeMap<i32, Matrix<F>>) -> Vec<SlotMap> {
    maps.iter()
        .map(|(&i, m)| SlotMap {
            from: i,
            matrix: MatrixDoc::of(ring, m),
        })
        .collect()
}

fn build_maps<F: Field>(ring: &Ring<F>, maps: &[SlotMap], what: &str) -> Result<BTreeMap<i32, Matrix<F>>> {
    let mut out = BTreeMap::new();
    for s in maps {
        let d = s.matrix.build(ring).map_err(|e| in_context(&format!("{what} {}", s.from), e))?;
        if out.insert(s.from, d).is_some() {
            return Err(Error::InvalidInput(format!("two {what}s at slot {}", s.from)));
        }
    }
    Ok(out)
}

impl ComplexDoc {
    pub fn of<F: Field>(c: &BoundedComplex<F>) -> Self {
        let ring = c.ring();
        let mut differentials = BTreeMap::new();
        for i in c.indices() {
            if c.slot(c.orientation().step(i)).is_some() {
                let d = c.diff(i).unwrap();
                if !d.is_zero() {
                    differentials.insert(i, d.clone());
                }
            }
        }
        ComplexDoc {
            orientation: c.orientation(),
            lo: c.lo(),
            slots: c.indices().map(|i| ModuleDoc::of(c.slot(i).unwrap())).collect(),
            differentials: slot_maps(ring, &differentials),
        }
    }

    /// Builds and verifies `d∘d = 0` and compatibility with relations.
    pub fn build<F: Field>(&self, ring: &Arc<Ring<F>>) -> Result<BoundedComplex<F>> {
        if self.slots.is_empty() {
            return Err(Error::InvalidInput("complex has no slots".into()));
        }
        let slots = self
            .slots
            .iter()
            .enumerate()
            .map(|(k, s)| s.build(ring).map_err(|e| in_context(&format!("slot {}", self.lo + k as i32), e)))
            .collect::<Result<Vec<_>>>()?;
        let diffs = build_maps(ring, &self.differentials, "differential")?;
        let c = BoundedComplex::new(ring, self.orientation, self.lo, slots, diffs)?;
        c.verify().map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(c)
    }
}

/// A resolution in the complex schema plus its augmentation onto the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDoc {
    #[serde(flatten)]
    pub complex: ComplexDoc,
    pub target: ComplexDoc,
    pub augmentation: Vec<SlotMap>,
    pub terminated: bool,
}

impl ResolutionDoc {
    pub fn of_module<F: Field>(r: &FreeResolution<F>) -> Self {
        let ring = r.module.ring();
        let aug = Matrix::identity(ring, r.module.gens());
        ResolutionDoc {
            complex: ComplexDoc::of(&r.complex()),
            target: ComplexDoc::of(&BoundedComplex::single(&r.module, Orientation::Chain)),
            augmentation: slot_maps(ring, &[(0, aug)].into_iter().collect()),
            terminated: r.terminated,
        }
    }

    pub fn of_complex<F: Field>(r: &ComplexResolution<F>) -> Self {
        let ring = r.total.ring();
        ResolutionDoc {
            complex: ComplexDoc::of(&r.total),
            target: ComplexDoc::of(&r.target),
            augmentation: slot_maps(ring, &r.augmentation.maps),
            terminated: r.complete_through.is_none(),
        }
    }

    /// Rebuilds the augmentation, checking that it is a chain map.
    pub fn build<F: Field>(&self, ring: &Arc<Ring<F>>) -> Result<ChainMap<F>> {
        let src = self.complex.build(ring)?;
        let tgt = self.target.build(ring)?;
        let maps = build_maps(ring, &self.augmentation, "augmentation map")?;
        ChainMap::new(src, tgt, maps)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(i32, i32)>,
}

impl Params {
    /// Values of `o` take precedence.
    pub fn overridden_by(&self, o: &Params) -> Params {
        Params {
            field: o.field.or(self.field),
            cutoff: o.cutoff.or(self.cutoff),
            window: o.window.or(self.window),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingEntry {
    pub name: String,
    #[serde(flatten)]
    pub spec: RingSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleEntry {
    pub name: String,
    pub ring: String,
    #[serde(flatten)]
    pub doc: ModuleDoc,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub twist: i32,
}

fn is_zero(k: &i32) -> bool {
    *k == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealEntry {
    pub name: String,
    pub ring: String,
    pub gens: Vec<String>,
}

/// Koszul data on `module`: either explicit elements or a named ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulEntry {
    pub name: String,
    pub module: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexEntry {
    pub name: String,
    pub ring: String,
    #[serde(flatten)]
    pub doc: ComplexDoc,
}

/// Declarative session file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionDoc {
    #[serde(default)]
    pub params: Params,
    pub rings: Vec<RingEntry>,
    #[serde(default)]
    pub modules: Vec<ModuleEntry>,
    #[serde(default)]
    pub ideals: Vec<IdealEntry>,
    #[serde(default)]
    pub koszul: Vec<KoszulEntry>,
    #[serde(default)]
    pub complexes: Vec<ComplexEntry>,
}

fn unknown(kind: &str, name: &str, known: impl Iterator<Item = String>) -> Error {
    let known: Vec<String> = known.collect();
    Error::InvalidInput(format!(
        "unknown {kind} `{name}` (known: {})",
        if known.is_empty() { "none".to_string() } else { known.join(", ") }
    ))
}

impl SessionDoc {
    pub fn parse(s: &str) -> Result<Self> {
        let doc: SessionDoc = from_json(s)?;
        doc.check_names()?;
        Ok(doc)
    }

    /// Names are unique across all sections and every reference resolves.
    pub fn check_names(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        let all = self
            .rings
            .iter()
            .map(|r| &r.name)
            .chain(self.modules.iter().map(|m| &m.name))
            .chain(self.ideals.iter().map(|m| &m.name))
            .chain(self.koszul.iter().map(|m| &m.name))
            .chain(self.complexes.iter().map(|m| &m.name));
        for n in all {
            if n.is_empty() {
                return Err(Error::InvalidInput("empty name".into()));
            }
            if !seen.insert(n.clone()) {
                return Err(Error::InvalidInput(format!("duplicate name `{n}`")));
            }
        }
        let rings = || self.rings.iter().map(|r| r.name.clone());
        let has_ring = |n: &str| self.rings.iter().any(|r| r.name == n);
        for m in &self.modules {
            if !has_ring(&m.ring) {
                return Err(unknown("ring", &m.ring, rings()));
            }
        }
        for m in &self.ideals {
            if !has_ring(&m.ring) {
                return Err(unknown("ring", &m.ring, rings()));
            }
        }
        for m in &self.complexes {
            if !has_ring(&m.ring) {
                return Err(unknown("ring", &m.ring, rings()));
            }
        }
        for k in &self.koszul {
            let Some(m) = self.modules.iter().find(|m| m.name == k.module) else {
                return Err(unknown("module", &k.module, self.modules.iter().map(|m| m.name.clone())));
            };
            match (&k.elements, &k.ideal) {
                (Some(_), None) => {}
                (None, Some(i)) => {
                    let Some(id) = self.ideals.iter().find(|x| &x.name == i) else {
                        return Err(unknown("ideal", i, self.ideals.iter().map(|m| m.name.clone())));
                    };
                    if id.ring != m.ring {
                        return Err(Error::InvalidInput(format!(
                            "koszul `{}`: ideal `{i}` and module `{}` live over different rings",
                            k.name, m.name
                        )));
                    }
                }
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "koszul `{}` needs exactly one of `elements` and `ideal`",
                        k.name
                    )))
                }
            }
        }
        Ok(())
    }

    /// Field to use: the override, else the session's own, else the default.
    pub fn field(&self, over: Option<FieldSpec>) -> FieldSpec {
        over.or(self.params.field).unwrap_or_default()
    }

    pub fn instantiate<F: Field>(&self, field: F) -> Result<Session<F>> {
        self.check_names()?;
        let mut s = Session {
            params: self.params.clone(),
            rings: BTreeMap::new(),
            modules: BTreeMap::new(),
            ideals: BTreeMap::new(),
            koszul: BTreeMap::new(),
            complexes: BTreeMap::new(),
        };
        for r in &self.rings {
            let ring = r
                .spec
                .build(field.clone())
                .map_err(|e| in_context(&format!("ring `{}`", r.name), e))?;
            s.rings.insert(r.name.clone(), Arc::new(ring));
        }
        for m in &self.modules {
            let ring = &s.rings[&m.ring];
            let module = m
                .doc
                .build(ring)
                .map_err(|e| in_context(&format!("module `{}`", m.name), e))?
                .twist(m.twist);
            s.modules.insert(m.name.clone(), module);
        }
        for i in &self.ideals {
            let ring = &s.rings[&i.ring];
            let gens = parse_polys(ring, &i.gens, &format!("ideal `{}` generator", i.name))?;
            for (k, g) in gens.iter().enumerate() {
                if !ring.is_homogeneous(g) {
                    return Err(Error::NotHomogeneous(format!("ideal `{}` generator #{k}", i.name)));
                }
            }
            s.ideals.insert(i.name.clone(), (i.ring.clone(), gens));
        }
        for k in &self.koszul {
            let module = s.modules[&k.module].clone();
            let elements = match (&k.elements, &k.ideal) {
                (Some(els), _) => parse_polys(module.ring(), els, &format!("koszul `{}` element", k.name))?,
                (_, Some(i)) => s.ideals[i].1.clone(),
                _ => unreachable!("checked above"),
            };
            let data = KoszulData::new(elements, module).map_err(|e| in_context(&format!("koszul `{}`", k.name), e))?;
            s.koszul.insert(k.name.clone(), data);
        }
        for c in &self.complexes {
            let ring = &s.rings[&c.ring];
            let cx = c
                .doc
                .build(ring)
                .map_err(|e| in_context(&format!("complex `{}`", c.name), e))?;
            s.complexes.insert(c.name.clone(), cx);
        }
        Ok(s)
    }
}

/// An instantiated session.
#[derive(Clone, Debug)]
pub struct Session<F: Field> {
    pub params: Params,
    pub rings: BTreeMap<String, Arc<Ring<F>>>,
    pub modules: BTreeMap<String, FpModule<F>>,
    pub ideals: BTreeMap<String, (String, Vec<Poly<F>>)>,
    pub koszul: BTreeMap<String, KoszulData<F>>,
    pub complexes: BTreeMap<String, BoundedComplex<F>>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| unknown(kind, name, map.keys().cloned()))
}

impl<F: Field> Session<F> {
    pub fn ring(&self, name: &str) -> Result<&Arc<Ring<F>>> {
        lookup(&self.rings, "ring", name)
    }
    pub fn module(&self, name: &str) -> Result<&FpModule<F>> {
        lookup(&self.modules, "module", name)
    }
    pub fn ideal(&self, name: &str) -> Result<&(String, Vec<Poly<F>>)> {
        lookup(&self.ideals, "ideal", name)
    }
    pub fn koszul(&self, name: &str) -> Result<&KoszulData<F>> {
        lookup(&self.koszul, "koszul data", name)
    }
    pub fn complex(&self, name: &str) -> Result<&BoundedComplex<F>> {
        lookup(&self.complexes, "complex", name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul;
    use crate::field::Rationals;
    use crate::resolution::minimal_free_resolution;

    const THURS: &str = r#"{
      "params": {"field": "Q", "cutoff": 4},
      "rings": [{"name": "A", "vars": [["x", 1], ["y", 1]], "relations": ["x*y", "y^2"]}],
      "modules": [
        {"name": "R", "ring": "A", "kind": "free", "gens": [0]},
        {"name": "P", "ring": "A", "kind": "presentation", "gens": [0, 1], "relations": [["y", "0"], ["x^2", "-x"]]}
      ],
      "ideals": [{"name": "I", "ring": "A", "gens": ["y"]}],
      "koszul": [{"name": "K1", "module": "R", "ideal": "I"}]
    }"#;

    #[test]
    fn session_instantiates() {
        let doc = SessionDoc::parse(THURS).unwrap();
        assert_eq!(doc.field(None), FieldSpec::Rational);
        let s = doc.instantiate(Rationals).unwrap();
        let k = s.koszul("K1").unwrap();
        assert_eq!(k.len(), 1);
        let p = s.module("P").unwrap();
        assert_eq!(p.gens(), &[0, 1]);
        assert_eq!(p.rels().len(), 2);
        let e = s.module("Q").unwrap_err().to_string();
        assert!(e.contains("known: P, R"), "{e}");
    }

    #[test]
    fn reference_and_syntax_errors() {
        let bad = THURS.replace(r#""ideal": "I""#, r#""ideal": "J""#);
        let e = SessionDoc::parse(&bad).unwrap_err();
        assert!(e.is_input_error() && e.to_string().contains("`J`"));
        let dup = THURS.replace(r#""name": "P""#, r#""name": "A""#);
        assert!(SessionDoc::parse(&dup).unwrap_err().to_string().contains("duplicate"));
        match SessionDoc::parse("{\n  \"rings\": [,]\n}").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 13)),
            other => panic!("{other:?}"),
        }
        let poly = THURS.replace("x^2", "x^^2");
        let s = SessionDoc::parse(&poly).unwrap();
        let e = s.instantiate(Rationals).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }), "{e:?}");
        assert!(e.to_string().contains("module `P`"));
        let inhom = THURS.replace("\"x^2\", \"-x\"", "\"x\", \"-x\"");
        assert!(SessionDoc::parse(&inhom).unwrap().instantiate(Rationals).is_err());
    }

    #[test]
    fn documents_round_trip() {
        let s = SessionDoc::parse(THURS).unwrap();
        assert_eq!(SessionDoc::parse(&to_json(&s)).unwrap(), s);
        let inst = s.instantiate(Rationals).unwrap();
        let a = inst.ring("A").unwrap();
        let p = inst.module("P").unwrap();
        let doc = ModuleDoc::of(p);
        assert_eq!(&doc.build(a).unwrap(), p);
        let k = koszul(inst.koszul("K1").unwrap(), Orientation::Cochain);
        let cd = ComplexDoc::of(&k);
        let back: ComplexDoc = from_json(&to_json(&cd)).unwrap();
        assert_eq!(back, cd);
        assert_eq!(ComplexDoc::of(&back.build(a).unwrap()), cd);
        let res = minimal_free_resolution(&FpModule::residue_field(a), 3);
        let rd = ResolutionDoc::of_module(&res);
        let rback: ResolutionDoc = from_json(&to_json(&rd)).unwrap();
        assert_eq!(rback, rd);
        let aug = rback.build(a).unwrap();
        assert_eq!(aug.source.degs(3), res.free(3));
    }
}
