use serde::{Deserialize, Serialize};

use koszul_core::complex::{euler_characteristic, koszul, Orientation};
use koszul_core::homalg::{ext, tor};
use koszul_core::hyper::{compute_u, compute_v, compute_w, hyper_modules, Flavor};
use koszul_core::invariants::{default_cutoff, depth, invariants};
use koszul_core::io::{ModuleDoc, Session};
use koszul_core::module::{FpModule, Subquotient};
use koszul_core::{Error, Field, FieldSpec, Result};

/// One computed module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub index: i32,
    pub krull_dim: Option<usize>,
    pub length: Option<u64>,
    pub depth: Option<usize>,
    pub hilbert: Vec<i64>,
    pub presentation: ModuleDoc,
}

/// A computed table; `hilbert` columns run over `window`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub target: String,
    pub field: FieldSpec,
    pub window: (i32, i32),
    pub cutoff: usize,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn tsv(&self) -> String {
        let mut s = format!(
            "target\tindex\tkrull_dim\tlength\tdepth\thilbert[{}..{}]\n",
            self.window.0, self.window.1
        );
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        for r in &self.rows {
            let h: Vec<String> = r.hilbert.iter().map(|d| d.to_string()).collect();
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.name,
                r.index,
                opt(r.krull_dim.map(|d| d.to_string())),
                opt(r.length.map(|d| d.to_string())),
                opt(r.depth.map(|d| d.to_string())),
                h.join(",")
            ));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chi {
    pub koszul: String,
    pub chi: i64,
    pub lengths: Vec<u64>,
}

#[derive(Clone, Debug, Default)]
pub struct Args {
    pub koszul: Option<String>,
    pub module: Option<String>,
    pub other: Option<String>,
    pub index: Option<usize>,
    pub ideals: Vec<String>,
    pub cutoff: Option<usize>,
    pub window: Option<(i32, i32)>,
}

pub enum Output {
    Table(Table),
    Chi(Chi),
    Json(String, serde_json::Value),
}

fn need<'a>(v: &'a Option<String>, flag: &str, target: &str) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::InvalidInput(format!("`compute {target}` needs --{flag}")))
}

fn window_of<F: Field>(mods: &[&Subquotient<F>]) -> (i32, i32) {
    let hs: Vec<_> = mods.iter().map(|m| m.module.hilbert()).filter(|h| !h.is_zero()).collect();
    let lo = hs.iter().filter_map(|h| h.low()).min().unwrap_or(0);
    let mut hi = lo;
    for h in &hs {
        hi = hi.max(h.top().unwrap_or(h.low().unwrap_or(lo) + 8));
    }
    (lo, hi)
}

fn row<F: Field>(name: String, index: i32, s: &Subquotient<F>, w: (i32, i32)) -> Result<Row> {
    let m = &s.module;
    let h = m.hilbert();
    Ok(Row {
        name,
        index,
        krull_dim: h.dim(),
        length: h.length(),
        depth: if m.is_zero() { None } else { Some(depth(m)?) },
        hilbert: h.values(w.0, w.1),
        presentation: ModuleDoc::of(m),
    })
}

fn table<F: Field>(target: &str, field: FieldSpec, cutoff: usize, window: Option<(i32, i32)>, mods: Vec<(String, i32, Subquotient<F>)>) -> Result<Table> {
    let w = window.unwrap_or_else(|| window_of(&mods.iter().map(|(_, _, s)| s).collect::<Vec<_>>()));
    let rows = mods.iter().map(|(n, i, s)| row(n.clone(), *i, s, w)).collect::<Result<_>>()?;
    Ok(Table {
        target: target.into(),
        field,
        window: w,
        cutoff,
        rows,
    })
}

pub fn run<F: Field>(s: &Session<F>, field: FieldSpec, target: &str, a: &Args) -> Result<Output> {
    let window = a.window.or(s.params.window);
    let cutoff_for = |m: &FpModule<F>| a.cutoff.or(s.params.cutoff).unwrap_or_else(|| default_cutoff(m.ring().nvars()));
    match target {
        "homology" => {
            let name = need(&a.koszul, "koszul", target)?;
            let k = s.koszul(name)?;
            let c = koszul(k, Orientation::Chain);
            let idx: Vec<i32> = match a.index {
                Some(i) if i > k.len() => {
                    return Err(Error::InvalidInput(format!("index {i} exceeds the {} Koszul elements", k.len())))
                }
                Some(i) => vec![i as i32],
                None => c.indices().collect(),
            };
            let mods = idx.iter().map(|&i| (format!("H_{i}"), i, c.homology(i))).collect();
            Ok(Output::Table(table(target, field, cutoff_for(&k.module), window, mods)?))
        }
        "ext" | "tor" => {
            let m = s.module(need(&a.module, "module", target)?)?;
            let n = s.module(need(&a.other, "other", target)?)?;
            let cut = cutoff_for(m);
            let idx: Vec<usize> = a.index.map_or((0..=cut).collect(), |i| vec![i]);
            let mut mods = Vec::new();
            for i in idx {
                let v = if target == "ext" { ext(m, n, i, cut.max(i))? } else { tor(m, n, i, cut.max(i))? };
                let label = if target == "ext" { format!("Ext^{i}") } else { format!("Tor_{i}") };
                mods.push((label, i as i32, v));
            }
            Ok(Output::Table(table(target, field, cut, window, mods)?))
        }
        "V" | "U" | "W" => {
            let flavor: Flavor = target.parse()?;
            let k = s.koszul(need(&a.koszul, "koszul", target)?)?;
            let n = s.module(need(&a.other, "other", target)?)?;
            let (u, m) = (&k.elements, &k.module);
            let cut = cutoff_for(m);
            let hs = match a.index {
                Some(i) => vec![match flavor {
                    Flavor::V => compute_v(u, n, m, i, cut.max(i))?,
                    Flavor::U => compute_u(u, m, n, i, cut.max(i))?,
                    Flavor::W => compute_w(u, m, n, i, cut.max(i))?,
                }],
                None => hyper_modules(flavor, u, m, n, cut)?,
            };
            let mods = hs.into_iter().map(|h| (format!("{flavor}{}", h.index), h.index, h.value)).collect();
            Ok(Output::Table(table(target, field, cut, window, mods)?))
        }
        "invariants" => {
            let name = need(&a.module, "module", target)?;
            let m = s.module(name)?;
            let ideals = a
                .ideals
                .iter()
                .map(|i| s.ideal(i).map(|(_, g)| (i.clone(), g.clone())))
                .collect::<Result<Vec<_>>>()?;
            let rec = invariants(m, &ideals, cutoff_for(m))?;
            Ok(Output::Json(format!("invariants_{name}"), serde_json::to_value(rec).expect("record serializes")))
        }
        "chi" => {
            let name = need(&a.koszul, "koszul", target)?;
            let (chi, lengths) = euler_characteristic(s.koszul(name)?)?;
            Ok(Output::Chi(Chi {
                koszul: name.into(),
                chi,
                lengths,
            }))
        }
        other => Err(Error::InvalidInput(format!(
            "unknown target `{other}` (known: homology, ext, tor, V, U, W, invariants, chi)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use koszul_core::io::SessionDoc;
    use koszul_core::Rationals;

    #[test]
    fn table_json_reingests() {
        let doc = SessionDoc::parse(
            r#"{"rings": [{"name": "A", "vars": [["x", 1], ["y", 1]], "relations": ["x*y", "y^2"]}],
                "modules": [{"name": "R", "ring": "A", "kind": "free", "gens": [0]}],
                "koszul": [{"name": "K1", "module": "R", "elements": ["y"]}]}"#,
        )
        .unwrap();
        let s = doc.instantiate(Rationals).unwrap();
        let a = Args { koszul: Some("K1".into()), ..Default::default() };
        let Output::Table(t) = run(&s, FieldSpec::Rational, "homology", &a).unwrap() else { panic!() };
        let back: Table = serde_json::from_str(&serde_json::to_string_pretty(&t).unwrap()).unwrap();
        assert_eq!(back, t);
        let a = Args { koszul: Some("K1".into()), ..Default::default() };
        assert!(matches!(run(&s, FieldSpec::Rational, "chi", &a), Err(e) if !e.is_input_error()));
    }
}
