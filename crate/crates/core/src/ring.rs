//! Graded quotient rings `k[x_1..x_n]/I` with a stored reduced Gröbner basis.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::{Gb, GbBuilder};
use crate::monomial::{Monomial, MonomialOrder};
use crate::parse::{format_poly, PolyParser};
use crate::vector::{ModuleOrder, Vector};

pub type Poly<F> = Vector<<F as Field>::Elem>;

/// Serialized ring description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDoc {
    pub field: FieldSpec,
    pub vars: Vec<(String, u32)>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub order: MonomialOrder,
}

#[derive(Clone)]
pub struct Ring<F: Field> {
    field: F,
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
    relations: Vec<Poly<F>>,
    gb: Gb<F>,
    poly_order: ModuleOrder,
}

impl<F: Field> fmt::Debug for Ring<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|r| self.format(r)).collect();
        write!(
            f,
            "{}[{}]/({})",
            self.field.spec(),
            self.names.join(","),
            rels.join(",")
        )
    }
}

/// Reduced Gröbner basis of a homogeneous ideal.
///
/// Every input must be homogeneous; the error names the first offender.
pub fn buchberger<F: Field>(
    field: &F,
    weights: &[u32],
    order: MonomialOrder,
    gens: &[Poly<F>],
) -> Result<Gb<F>> {
    let ord = ModuleOrder::new(order, vec![0]);
    let mut b = GbBuilder::new(field.clone(), ord, weights.to_vec());
    for (i, g) in gens.iter().enumerate() {
        if !g.is_homogeneous(b.order()) {
            return Err(Error::NotHomogeneous(format!("generator #{i}")));
        }
        b.add_generator(g.clone(), i);
    }
    let gb = b.finish().reduced();
    debug_assert!(gens.iter().all(|g| gb.contains(g)));
    Ok(gb)
}

impl<F: Field> Ring<F> {
    pub fn new(
        field: F,
        vars: Vec<(String, u32)>,
        relations: Vec<Poly<F>>,
        order: MonomialOrder,
    ) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidInput("ring needs at least one variable".into()));
        }
        for (i, (n, w)) in vars.iter().enumerate() {
            if *w == 0 {
                return Err(Error::InvalidInput(format!("variable `{n}` has weight 0")));
            }
            if vars[..i].iter().any(|(m, _)| m == n) {
                return Err(Error::InvalidInput(format!("duplicate variable `{n}`")));
            }
        }
        let (names, weights): (Vec<String>, Vec<u32>) = vars.into_iter().unzip();
        let poly_order = ModuleOrder::new(order, vec![0]);
        let relations: Vec<Poly<F>> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        for r in &relations {
            if !r.is_homogeneous(&poly_order) {
                return Err(Error::NotHomogeneous(format_poly(&field, &names, r)));
            }
            if r.degree(&poly_order) == Some(0) {
                return Err(Error::InvalidInput("relations must lie in the maximal ideal".into()));
            }
        }
        let gb = buchberger(&field, &weights, order, &relations)?;
        Ok(Ring {
            field,
            names,
            weights,
            order,
            relations,
            gb,
            poly_order,
        })
    }

    /// Convenience constructor from relation strings and unit weights.
    pub fn from_strs(field: F, vars: &[&str], relations: &[&str]) -> Result<Self> {
        let vars: Vec<(String, u32)> = vars.iter().map(|v| (v.to_string(), 1)).collect();
        Self::from_doc_parts(field, vars, relations.iter().map(|s| s.to_string()).collect(), MonomialOrder::Grevlex)
    }

    pub fn polynomial_ring(field: F, vars: &[&str]) -> Result<Self> {
        Self::from_strs(field, vars, &[])
    }

    fn from_doc_parts(
        field: F,
        vars: Vec<(String, u32)>,
        relations: Vec<String>,
        order: MonomialOrder,
    ) -> Result<Self> {
        let base = Ring::new(field.clone(), vars.clone(), vec![], order)?;
        let rels = relations
            .iter()
            .map(|s| base.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Ring::new(field, vars, rels, order)
    }

    /// Build from a document; the field of the document is replaced by `field`.
    pub fn from_doc(field: F, doc: &RingDoc) -> Result<Self> {
        Self::from_doc_parts(field, doc.vars.clone(), doc.relations.clone(), doc.order)
    }

    pub fn to_doc(&self) -> RingDoc {
        RingDoc {
            field: self.field.spec(),
            vars: self
                .names
                .iter()
                .cloned()
                .zip(self.weights.iter().copied())
                .collect(),
            relations: self.relations.iter().map(|r| self.format(r)).collect(),
            order: self.order,
        }
    }

    /// The ring `self / (extra)`.
    pub fn quotient(&self, extra: &[Poly<F>]) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().map(|p| self.nf(p)).filter(|p| !p.is_zero()));
        Ring::new(
            self.field.clone(),
            self.names.iter().cloned().zip(self.weights.iter().copied()).collect(),
            rels,
            self.order,
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    pub fn mono_order(&self) -> MonomialOrder {
        self.order
    }
    pub fn poly_order(&self) -> &ModuleOrder {
        &self.poly_order
    }
    pub fn relations(&self) -> &[Poly<F>] {
        &self.relations
    }
    pub fn gb(&self) -> &Gb<F> {
        &self.gb
    }
    pub fn is_polynomial_ring(&self) -> bool {
        self.gb.is_empty()
    }
    pub fn max_relation_degree(&self) -> i32 {
        self.relations
            .iter()
            .filter_map(|r| r.degree(&self.poly_order))
            .max()
            .unwrap_or(0)
    }

    pub fn parse(&self, s: &str) -> Result<Poly<F>> {
        let p = PolyParser {
            field: &self.field,
            names: &self.names,
            weights: &self.weights,
            order: &self.poly_order,
        }
        .parse(s)?;
        Ok(self.nf(&p))
    }

    /// Parse and require a homogeneous result.
    pub fn parse_homogeneous(&self, s: &str) -> Result<Poly<F>> {
        let p = self.parse(s)?;
        if !self.is_homogeneous(&p) {
            return Err(Error::NotHomogeneous(s.to_string()));
        }
        Ok(p)
    }

    pub fn format(&self, p: &Poly<F>) -> String {
        format_poly(&self.field, &self.names, p)
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        Vector::term(Monomial::var(i, &self.weights), 0, self.field.one())
    }

    pub fn vars(&self) -> Vec<Poly<F>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn one(&self) -> Poly<F> {
        Vector::term(Monomial::one(self.nvars()), 0, self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F> {
        if self.field.is_zero(&c) {
            Vector::zero()
        } else {
            Vector::term(Monomial::one(self.nvars()), 0, c)
        }
    }

    /// Normal form modulo the defining ideal.
    pub fn nf(&self, p: &Poly<F>) -> Poly<F> {
        if self.gb.is_empty() {
            p.clone()
        } else {
            self.gb.normal_form(p)
        }
    }

    pub fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a.add(b, &self.field, &self.poly_order)
    }
    pub fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a.sub(b, &self.field, &self.poly_order)
    }
    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.nf(&a.mul_poly(b, &self.field, &self.poly_order))
    }

    pub fn degree(&self, p: &Poly<F>) -> Option<i32> {
        p.degree(&self.poly_order)
    }

    pub fn is_homogeneous(&self, p: &Poly<F>) -> bool {
        p.is_homogeneous(&self.poly_order)
    }

    pub fn is_zero_in_ring(&self, p: &Poly<F>) -> bool {
        self.nf(p).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn reduced_basis_examples() {
        let r = Ring::polynomial_ring(Rationals, &["x"]).unwrap();
        let gb = buchberger(r.field(), r.weights(), r.mono_order(), &[r.parse("x").unwrap()]).unwrap();
        assert_eq!(gb.len(), 1);

        let a = Ring::from_strs(Rationals, &["x", "y"], &["x*y", "y^2"]).unwrap();
        let g: Vec<String> = a.gb().elements().iter().map(|p| a.format(p)).collect();
        assert_eq!(g.len(), 2);
        assert!(g.contains(&"x*y".to_string()) && g.contains(&"y^2".to_string()));
        assert_eq!(a.format(&a.parse("y^3 + x").unwrap()), "x");
        assert!(a.parse("x*y").unwrap().is_zero());

        let b = Ring::from_strs(Rationals, &["x", "y"], &["x^2+y^2", "x*y"]).unwrap();
        let mut g: Vec<String> = b.gb().elements().iter().map(|p| b.format(p)).collect();
        g.sort();
        assert_eq!(g, vec!["x*y", "x^2+y^2", "y^3"]);
        assert_eq!(b.format(&b.parse("x^2").unwrap()), "-y^2");
    }

    #[test]
    fn inhomogeneous_rejected() {
        let e = Ring::from_strs(Rationals, &["x", "y"], &["x^2+y"]).unwrap_err();
        assert!(matches!(e, Error::NotHomogeneous(ref s) if s.contains("x^2")));
    }

    #[test]
    fn doc_roundtrip() {
        let a = Ring::from_strs(Rationals, &["x", "y"], &["x*y", "y^2"]).unwrap();
        let doc = a.to_doc();
        let s = serde_json::to_string(&doc).unwrap();
        let back: RingDoc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, doc);
        let b = Ring::from_doc(Rationals, &back).unwrap();
        assert_eq!(b.to_doc(), doc);
    }
}
