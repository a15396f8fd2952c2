//! Executable checks of structural statements about Koszul homology, run
//! over a bundled catalog of graded instances.

mod checks;
mod tags;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use tags::{Tag, TagStatus};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::invariants::minimal_ideal_generators;
use crate::io::{from_json, ModuleDoc, RingSpec};
use crate::module::FpModule;
use crate::report::{CheckReport, Verdict};
use crate::ring::{Poly, Ring};

pub const CHECK_IDS: &[&str] = &[
    "chi_vanishing",
    "hypersurface_h1",
    "perfect_duality",
    "all_but_one",
    "growth",
    "depth_bounds",
    "cmd_bound",
    "pdim_depth",
    "hom_mcm",
    "gor_cm_duality",
    "two_add",
    "bass_formula",
    "gul_evidence",
    "e2_pages",
    "les_exact",
    "annihilation",
];

/// An instance as stored: a ring, an ordered minimal generating set of an
/// ideal, named modules and the hypothesis tags it claims.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub id: String,
    #[serde(default)]
    pub about: String,
    pub ring: RingSpec,
    pub ideal: Vec<String>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default)]
    pub tags: Vec<Tag>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub instances: Vec<InstanceDoc>,
}

impl Catalog {
    pub fn bundled() -> Self {
        Self::parse(include_str!("../../data/catalog.json")).expect("bundled catalog parses")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let c: Catalog = from_json(s)?;
        let mut seen = std::collections::BTreeSet::new();
        for i in &c.instances {
            if !seen.insert(i.id.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate instance `{}`", i.id)));
            }
            for name in i.modules.keys() {
                if name == "A" || name == "k" {
                    return Err(Error::InvalidInput(format!("instance `{}`: module name `{name}` is reserved", i.id)));
                }
            }
        }
        Ok(c)
    }

    pub fn get(&self, id: &str) -> Result<&InstanceDoc> {
        self.instances.iter().find(|i| i.id == id).ok_or_else(|| {
            let known: Vec<&str> = self.instances.iter().map(|i| i.id.as_str()).collect();
            Error::InvalidInput(format!("unknown instance `{id}` (known: {})", known.join(", ")))
        })
    }
}

/// A catalog instance over a concrete field, with its tags re-verified.
pub struct Instance<F: Field> {
    pub id: String,
    pub ring: Arc<Ring<F>>,
    pub ideal: Vec<Poly<F>>,
    pub modules: BTreeMap<String, FpModule<F>>,
    pub tags: BTreeMap<Tag, TagStatus>,
}

impl<F: Field> Instance<F> {
    pub fn load(doc: &InstanceDoc, field: F) -> Result<Self> {
        let ring = Arc::new(doc.ring.build(field)?);
        let ideal = doc
            .ideal
            .iter()
            .map(|s| ring.parse_homogeneous(s))
            .collect::<Result<Vec<_>>>()?;
        let a = FpModule::ring_module(&ring);
        if ideal.iter().any(|p| ring.nf(p).is_zero() || ring.degree(p) == Some(0)) {
            return Err(Error::InvalidInput(format!("instance `{}`: ideal generators must be nonzero of positive degree", doc.id)));
        }
        if minimal_ideal_generators(&a, &ideal).len() != ideal.len() {
            return Err(Error::InvalidInput(format!("instance `{}`: ideal generators are not minimal", doc.id)));
        }
        let mut modules = BTreeMap::new();
        modules.insert("A".to_string(), a);
        modules.insert("k".to_string(), FpModule::residue_field(&ring));
        for (name, m) in &doc.modules {
            modules.insert(name.clone(), m.build(&ring)?);
        }
        let mut inst = Instance {
            id: doc.id.clone(),
            ring,
            ideal,
            modules,
            tags: BTreeMap::new(),
        };
        for &t in &doc.tags {
            let s = tags::verify(&inst, t)?;
            inst.tags.insert(t, s);
        }
        Ok(inst)
    }

    pub fn module(&self, name: &str) -> Result<&FpModule<F>> {
        self.modules.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.modules.keys().map(|s| s.as_str()).collect();
            Error::InvalidInput(format!("instance `{}`: unknown module `{name}` (known: {})", self.id, known.join(", ")))
        })
    }

    pub fn a(&self) -> &FpModule<F> {
        &self.modules["A"]
    }

    pub fn k(&self) -> &FpModule<F> {
        &self.modules["k"]
    }

    /// `Ok` when the tag is declared and verified; otherwise the reason.
    pub fn require(&self, t: Tag) -> std::result::Result<(), String> {
        match self.tags.get(&t) {
            None => Err(format!("missing hypothesis `{t}`")),
            Some(TagStatus::Verified) => Ok(()),
            Some(TagStatus::Refuted) => Err(format!("hypothesis `{t}` refuted by computation")),
            Some(TagStatus::Unknown) => Err(format!("hypothesis `{t}` could not be verified")),
        }
    }
}

/// Per-check parameters; absent values take check-specific defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    /// `projective` or `injective`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    /// `holds` or `counterexample`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub which: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(i32, i32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub check: String,
    pub instance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub params: CheckParams,
}

impl ManifestEntry {
    pub fn name(&self) -> String {
        match &self.label {
            Some(l) => format!("{}:{l}", self.instance),
            None => self.instance.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub checks: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn bundled() -> Self {
        Self::parse(include_str!("../../data/checks.json")).expect("bundled manifest parses")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let m: Manifest = from_json(s)?;
        for e in &m.checks {
            if !CHECK_IDS.contains(&e.check.as_str()) {
                return Err(Error::InvalidInput(format!(
                    "unknown check `{}` (known: {})",
                    e.check,
                    CHECK_IDS.join(", ")
                )));
            }
        }
        Ok(m)
    }

    /// Entries with the given check id; all entries for `None`.
    pub fn select(&self, id: Option<&str>) -> Result<Vec<ManifestEntry>> {
        match id {
            None => Ok(self.checks.clone()),
            Some(id) if CHECK_IDS.contains(&id) => Ok(self.checks.iter().filter(|e| e.check == id).cloned().collect()),
            Some(id) => Err(Error::InvalidInput(format!("unknown check `{id}` (known: {})", CHECK_IDS.join(", ")))),
        }
    }

    /// Every instance reference resolves in `catalog`.
    pub fn validate(&self, catalog: &Catalog) -> Result<()> {
        for e in &self.checks {
            catalog.get(&e.instance)?;
        }
        Ok(())
    }
}

/// Run one check on a loaded instance.
pub fn run_check<F: Field>(check: &str, name: &str, inst: &Instance<F>, params: &CheckParams) -> CheckReport {
    let start = Instant::now();
    let mut rep = CheckReport::new(check, name);
    if let Err(e) = checks::dispatch(check, inst, params, &mut rep) {
        match e {
            Error::CutoffExceeded { .. } => rep.inconclusive(e.to_string()),
            e => rep.fail("error", e.to_string()),
        }
    }
    rep.runtime_ms = start.elapsed().as_millis() as u64;
    rep
}

/// Overrides applied on top of every manifest entry.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub cutoff: Option<usize>,
    pub window: Option<(i32, i32)>,
    pub jobs: usize,
}

fn run_entries<F: Field>(field: F, catalog: &Catalog, entries: &[ManifestEntry], opts: &RunOptions) -> Result<Vec<CheckReport>> {
    let mut ids: Vec<&str> = entries.iter().map(|e| e.instance.as_str()).collect();
    ids.sort();
    ids.dedup();
    let docs: Vec<&InstanceDoc> = ids.iter().map(|id| catalog.get(id)).collect::<Result<_>>()?;
    let jobs = opts.jobs.max(1);

    let loaded: Vec<Mutex<Option<std::result::Result<Arc<Instance<F>>, Error>>>> =
        docs.iter().map(|_| Mutex::new(None)).collect();
    let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let instance = |id: &str| -> std::result::Result<Arc<Instance<F>>, Error> {
        let i = index[id];
        let mut slot = loaded[i].lock().unwrap();
        if slot.is_none() {
            *slot = Some(Instance::load(docs[i], field.clone()).map(Arc::new));
        }
        slot.clone().unwrap()
    };

    let results: Vec<Mutex<Option<CheckReport>>> = entries.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.min(entries.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= entries.len() {
                    break;
                }
                let e = &entries[i];
                let mut params = e.params.clone();
                if opts.cutoff.is_some() {
                    params.cutoff = opts.cutoff;
                }
                if opts.window.is_some() {
                    params.window = opts.window;
                }
                let rep = match instance(&e.instance) {
                    Ok(inst) => run_check(&e.check, &e.name(), &inst, &params),
                    Err(err) => {
                        let mut r = CheckReport::new(&e.check, &e.name());
                        r.fail("load", err.to_string());
                        r
                    }
                };
                *results[i].lock().unwrap() = Some(rep);
            });
        }
    });
    Ok(results.into_iter().map(|m| m.into_inner().unwrap().unwrap()).collect())
}

/// Run manifest entries over the chosen field, reports in manifest order.
pub fn run_manifest(field: FieldSpec, catalog: &Catalog, entries: &[ManifestEntry], opts: &RunOptions) -> Result<Vec<CheckReport>> {
    match field {
        FieldSpec::Rational => run_entries(Rationals, catalog, entries, opts),
        FieldSpec::Prime(p) => run_entries(PrimeField::new(p)?, catalog, entries, opts),
    }
}

/// One line per report: check, instance, verdict, wall time.
pub fn rollup_tsv(reports: &[CheckReport]) -> String {
    let mut s = String::from("check\tinstance\tverdict\twall_ms\n");
    for r in reports {
        s.push_str(&format!("{}\t{}\t{}\t{}\n", r.check, r.instance, r.verdict, r.runtime_ms));
    }
    s
}

/// Whether a run with these reports should exit successfully.
pub fn run_ok(reports: &[CheckReport], strict: bool) -> bool {
    reports.iter().all(|r| match r.verdict {
        Verdict::Pass => true,
        Verdict::Fail => false,
        Verdict::Inconclusive | Verdict::Evidence => !strict,
    })
}
