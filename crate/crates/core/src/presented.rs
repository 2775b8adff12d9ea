//! Finitely presented multigraded F2-algebras, computed one degree at a time.
//!
//! A component is the span of all monomials of a given multidegree modulo the
//! span of `relation × monomial` products landing there.  Columns are ordered
//! by the degree-lexicographic monomial order, largest first, so the reduced
//! echelon form exposes leading monomials as pivots and the remaining
//! (standard) monomials form the basis.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{BitVec, F2Matrix};
use crate::poly::{Mono, Poly};
use crate::ring::{DegreeBounds, GradedRing, RingElem};

/// A named generator with its multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: Vec<i64>,
}

/// One multidegree of a presented algebra.
#[derive(Debug)]
pub struct GradedComponent {
    pub degree: Vec<i64>,
    monomials: Vec<Mono>,
    index: HashMap<Mono, usize>,
    basis: Vec<usize>,
    normal_forms: Vec<BitVec>,
}

impl GradedComponent {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Standard monomials spanning the component.
    pub fn basis_monomials(&self) -> impl Iterator<Item = &Mono> {
        self.basis.iter().map(|&i| &self.monomials[i])
    }

    #[must_use]
    pub fn basis_monomial(&self, i: usize) -> &Mono {
        &self.monomials[self.basis[i]]
    }

    /// All monomials of this multidegree.
    #[must_use]
    pub fn monomials(&self) -> &[Mono] {
        &self.monomials
    }

    /// Coordinates of a monomial of this multidegree in the basis.
    #[must_use]
    pub fn normal_form(&self, m: &Mono) -> Option<&BitVec> {
        self.index.get(m).map(|&i| &self.normal_forms[i])
    }

    /// Coordinates of a polynomial all of whose terms have this multidegree.
    pub fn project(&self, p: &Poly) -> Result<BitVec> {
        let mut out = BitVec::zeros(self.dim());
        for m in p.terms() {
            let nf = self
                .normal_form(m)
                .ok_or_else(|| Error::DegreeMismatch(format!("monomial {m:?} not in {:?}", self.degree)))?;
            out.xor_assign(nf);
        }
        Ok(out)
    }

    /// The polynomial given by basis coordinates.
    #[must_use]
    pub fn lift(&self, coords: &BitVec) -> Poly {
        coords.ones().map(|i| self.basis_monomial(i).clone()).collect()
    }
}

/// A presentation by generators and homogeneous relations.
///
/// `weight` is a linear functional that is strictly positive on every
/// generator degree, which makes every component finite.  An optional
/// `top_weight` truncates: components of larger weight are zero.
pub struct PresentedAlgebra {
    name: String,
    generators: Vec<Generator>,
    weight: Vec<i64>,
    relations: Vec<Poly>,
    relation_degrees: Vec<Vec<i64>>,
    top_weight: Option<i64>,
    gen_weights: Vec<i64>,
    suffix_ratio: Vec<Vec<((i64, i64), (i64, i64))>>,
    monomials: RwLock<HashMap<Vec<i64>, Arc<Vec<Mono>>>>,
    components: RwLock<HashMap<Vec<i64>, Arc<GradedComponent>>>,
}

impl std::fmt::Debug for PresentedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PresentedAlgebra")
            .field("name", &self.name)
            .field("generators", &self.generators)
            .field("relations", &self.relations.len())
            .finish()
    }
}

fn frac_lt(a: (i64, i64), b: (i64, i64)) -> bool {
    a.0 * b.1 < b.0 * a.1
}

impl PresentedAlgebra {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        weight: Vec<i64>,
        relations: Vec<Poly>,
        top_weight: Option<i64>,
    ) -> Result<Self> {
        let dims = weight.len();
        if generators.iter().any(|g| g.degree.len() != dims) {
            return Err(Error::DegreeMismatch("generator degrees of unequal length".into()));
        }
        let gen_weights: Vec<i64> = generators
            .iter()
            .map(|g| g.degree.iter().zip(&weight).map(|(a, b)| a * b).sum())
            .collect();
        if gen_weights.iter().any(|&w| w <= 0) {
            return Err(Error::DegreeMismatch("every generator needs positive weight".into()));
        }
        let n = generators.len();
        let mut suffix_ratio = vec![vec![((0, 1), (0, 1)); dims]; n + 1];
        for g in (0..n).rev() {
            for c in 0..dims {
                let r = (generators[g].degree[c], gen_weights[g]);
                suffix_ratio[g][c] = if g + 1 == n {
                    (r, r)
                } else {
                    let (lo, hi) = suffix_ratio[g + 1][c];
                    (if frac_lt(r, lo) { r } else { lo }, if frac_lt(hi, r) { r } else { hi })
                };
            }
        }
        let mut alg = PresentedAlgebra {
            name: name.into(),
            generators,
            weight,
            relations: Vec::new(),
            relation_degrees: Vec::new(),
            top_weight,
            gen_weights,
            suffix_ratio,
            monomials: RwLock::new(HashMap::new()),
            components: RwLock::new(HashMap::new()),
        };
        for (index, r) in relations.into_iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let degs: Vec<Vec<i64>> = r.terms().map(|m| alg.mono_degree(m)).collect();
            let d = degs[0].clone();
            if degs.iter().any(|e| *e != d) {
                return Err(Error::NonHomogeneous { index });
            }
            alg.relations.push(r);
            alg.relation_degrees.push(d);
        }
        Ok(alg)
    }

    #[must_use]
    pub fn name(&self) -> &str {
        &self.name
    }

    #[must_use]
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    #[must_use]
    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    #[must_use]
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    #[must_use]
    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    #[must_use]
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    #[must_use]
    pub fn mono_degree(&self, m: &Mono) -> Vec<i64> {
        let mut d = vec![0; self.weight.len()];
        for (g, &e) in self.generators.iter().zip(&m.0) {
            for (acc, x) in d.iter_mut().zip(&g.degree) {
                *acc += i64::from(e) * x;
            }
        }
        d
    }

    fn weight_of(&self, degree: &[i64]) -> i64 {
        degree.iter().zip(&self.weight).map(|(a, b)| a * b).sum()
    }

    /// All monomials of the given multidegree.
    pub fn monomials_of(&self, degree: &[i64]) -> Arc<Vec<Mono>> {
        if let Some(m) = self.monomials.read().expect("cache lock").get(degree) {
            return m.clone();
        }
        let mut out = Vec::new();
        let w = self.weight_of(degree);
        if w >= 0 {
            let mut cur = vec![0u16; self.generators.len()];
            let mut rem = degree.to_vec();
            self.enumerate(0, &mut rem, w, &mut cur, &mut out);
        }
        out.sort_by(|a, b| b.cmp(a));
        let out = Arc::new(out);
        self.monomials.write().expect("cache lock").insert(degree.to_vec(), out.clone());
        out
    }

    fn feasible(&self, g: usize, rem: &[i64], w: i64) -> bool {
        if g == self.generators.len() {
            return w == 0 && rem.iter().all(|&x| x == 0);
        }
        if w == 0 {
            return rem.iter().all(|&x| x == 0);
        }
        rem.iter().zip(&self.suffix_ratio[g]).all(|(&r, &(lo, hi))| {
            // lo.0/lo.1 * w <= r <= hi.0/hi.1 * w
            lo.0 * w <= r * lo.1 && r * hi.1 <= hi.0 * w
        })
    }

    fn enumerate(&self, g: usize, rem: &mut Vec<i64>, w: i64, cur: &mut Vec<u16>, out: &mut Vec<Mono>) {
        if !self.feasible(g, rem, w) {
            return;
        }
        if g == self.generators.len() || w == 0 {
            out.push(Mono(cur.clone()));
            return;
        }
        let gw = self.gen_weights[g];
        let deg = &self.generators[g].degree;
        let max = w / gw;
        for e in 0..=max {
            if e > 0 {
                for (r, d) in rem.iter_mut().zip(deg) {
                    *r -= d;
                }
            }
            cur[g] = e as u16;
            self.enumerate(g + 1, rem, w - e * gw, cur, out);
        }
        for (r, d) in rem.iter_mut().zip(deg) {
            *r += max * d;
        }
        cur[g] = 0;
    }

    /// The quotient component in the given multidegree.
    pub fn component(&self, degree: &[i64]) -> Result<Arc<GradedComponent>> {
        if degree.len() != self.weight.len() {
            return Err(Error::DegreeMismatch(format!(
                "degree of length {} for {}",
                degree.len(),
                self.name
            )));
        }
        if let Some(c) = self.components.read().expect("cache lock").get(degree) {
            return Ok(c.clone());
        }
        let comp = Arc::new(self.build_component(degree));
        self.components.write().expect("cache lock").insert(degree.to_vec(), comp.clone());
        Ok(comp)
    }

    fn build_component(&self, degree: &[i64]) -> GradedComponent {
        let monomials: Vec<Mono> = self.monomials_of(degree).as_ref().clone();
        let index: HashMap<Mono, usize> =
            monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = monomials.len();
        if self.top_weight.is_some_and(|t| self.weight_of(degree) > t) {
            return GradedComponent {
                degree: degree.to_vec(),
                monomials,
                index,
                basis: vec![],
                normal_forms: vec![BitVec::zeros(0); n],
            };
        }
        let mut rows = Vec::new();
        for (r, rd) in self.relations.iter().zip(&self.relation_degrees) {
            let cof: Vec<i64> = degree.iter().zip(rd).map(|(a, b)| a - b).collect();
            for c in self.monomials_of(&cof).iter() {
                let mut row = BitVec::zeros(n);
                for m in r.terms() {
                    row.flip(index[&m.mul(c)]);
                }
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
        let mut mat = F2Matrix::from_rows(n, rows);
        let pivots = mat.rref();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let mut pos = vec![usize::MAX; n];
        for (i, &j) in basis.iter().enumerate() {
            pos[j] = i;
        }
        let mut normal_forms = vec![BitVec::zeros(basis.len()); n];
        for &j in &basis {
            normal_forms[j].set(pos[j], true);
        }
        for (r, &p) in pivots.iter().enumerate() {
            let mut nf = BitVec::zeros(basis.len());
            for j in mat.row(r).ones().filter(|&j| j != p) {
                nf.set(pos[j], true);
            }
            normal_forms[p] = nf;
        }
        GradedComponent { degree: degree.to_vec(), monomials, index, basis, normal_forms }
    }

    /// Product of two elements given in component coordinates.
    pub fn multiply(
        &self,
        dx: &[i64],
        x: &BitVec,
        dy: &[i64],
        y: &BitVec,
    ) -> Result<(Vec<i64>, BitVec)> {
        let cx = self.component(dx)?;
        let cy = self.component(dy)?;
        let d: Vec<i64> = dx.iter().zip(dy).map(|(a, b)| a + b).collect();
        let out_comp = self.component(&d)?;
        let mut out = BitVec::zeros(out_comp.dim());
        for i in x.ones() {
            for j in y.ones() {
                let m = cx.basis_monomial(i).mul(cy.basis_monomial(j));
                let nf = out_comp.normal_form(&m).expect("product lies in the sum degree");
                out.xor_assign(nf);
            }
        }
        Ok((d, out))
    }

    /// Dimension by an independent count: all monomials minus the rank of the
    /// relation span, without the echelon bookkeeping.
    pub fn dim_by_rank(&self, degree: &[i64]) -> usize {
        let monos = self.monomials_of(degree);
        if self.top_weight.is_some_and(|t| self.weight_of(degree) > t) {
            return 0;
        }
        let pos: HashMap<&Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut cols = Vec::new();
        for (r, rd) in self.relations.iter().zip(&self.relation_degrees) {
            let cof: Vec<i64> = degree.iter().zip(rd).map(|(a, b)| a - b).collect();
            for c in self.monomials_of(&cof).iter() {
                let mut v = BitVec::zeros(monos.len());
                for m in r.terms() {
                    v.flip(pos[&m.mul(c)]);
                }
                cols.push(v);
            }
        }
        let m = F2Matrix::from_columns(monos.len(), &cols);
        monos.len() - m.rank()
    }

    /// Parse a monomial like `x^2*y`.
    pub fn parse_monomial(&self, s: &str) -> Result<Mono> {
        let mut m = Mono::one(self.generators.len());
        let s = s.trim();
        if s == "1" {
            return Ok(m);
        }
        for factor in s.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim().parse::<u16>().map_err(|_| Error::Parse(format!("exponent in {factor:?}")))?,
                ),
                None => (factor.trim(), 1),
            };
            let i = self
                .generator_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            m.0[i] += exp;
        }
        Ok(m)
    }

    /// Parse a sum of monomials like `x^2*y + z`.
    pub fn parse_poly(&self, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Poly::zero());
        }
        s.split('+').map(|t| self.parse_monomial(t)).collect::<Result<Poly>>()
    }

    /// The presentation schema: generators with degrees and relations as
    /// lists of monomials.
    #[must_use]
    pub fn to_json(&self) -> Value {
        let names = self.generator_names();
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|g| {
                let degree = if g.degree.len() == 1 { json!(g.degree[0]) } else { json!(g.degree) };
                json!({"name": g.name, "degree": degree})
            })
            .collect();
        let rels: Vec<Value> = self
            .relations
            .iter()
            .map(|r| Value::Array(r.terms().rev().map(|m| json!(m.render(&names))).collect()))
            .collect();
        let mut out = json!({"generators": gens, "relations": rels});
        if let Some(t) = self.top_weight {
            out["top"] = json!(t);
        }
        out
    }

    /// Read an integer-graded presentation with generators of one sign.
    pub fn from_json(name: &str, value: &Value) -> Result<Self> {
        let gens = value
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("presentation needs \"generators\"".into()))?;
        let mut generators = Vec::new();
        for g in gens {
            let gname = g
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("generator needs a name".into()))?;
            let degree = g
                .get("degree")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("generator needs an integer degree".into()))?;
            generators.push(Generator { name: gname.to_string(), degree: vec![degree] });
        }
        let sign = if generators.iter().all(|g| g.degree[0] < 0) { -1 } else { 1 };
        let top = value.get("top").and_then(Value::as_i64);
        let skeleton = PresentedAlgebra::new(name, generators.clone(), vec![sign], vec![], top)?;
        let mut relations = Vec::new();
        if let Some(rels) = value.get("relations").and_then(Value::as_array) {
            for r in rels {
                let terms = r
                    .as_array()
                    .ok_or_else(|| Error::Parse("relation must be a list of monomials".into()))?;
                let mut p = Poly::zero();
                for t in terms {
                    let s = t.as_str().ok_or_else(|| Error::Parse("monomial must be a string".into()))?;
                    p.add_mono(skeleton.parse_monomial(s)?);
                }
                relations.push(p);
            }
        }
        PresentedAlgebra::new(name, generators, vec![sign], relations, top)
    }
}

/// Integer-graded presentations are graded rings.
impl GradedRing for PresentedAlgebra {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn dim(&self, degree: i64) -> Result<usize> {
        Ok(self.component(&[degree])?.dim())
    }

    fn basis_labels(&self, degree: i64) -> Result<Vec<String>> {
        let names = self.generator_names();
        Ok(self.component(&[degree])?.basis_monomials().map(|m| m.render(&names)).collect())
    }

    fn bounds(&self) -> DegreeBounds {
        let positive = self.weight.first().is_some_and(|&w| w > 0);
        let top = self.top_weight.map(|t| if positive { t } else { -t });
        if positive {
            DegreeBounds { lower: Some(0), upper: top }
        } else {
            DegreeBounds { lower: top, upper: Some(0) }
        }
    }

    fn mul_basis(&self, d1: i64, i: usize, d2: i64, j: usize) -> Result<BitVec> {
        let c1 = self.component(&[d1])?;
        let c2 = self.component(&[d2])?;
        let out = self.component(&[d1 + d2])?;
        let m = c1.basis_monomial(i).mul(c2.basis_monomial(j));
        Ok(out.normal_form(&m).cloned().unwrap_or_else(|| BitVec::zeros(out.dim())))
    }

    fn one(&self) -> Result<RingElem> {
        let c = self.component(&[0])?;
        let coords = c.project(&Poly::one(self.generators.len()))?;
        Ok(RingElem { degree: 0, coords })
    }
}

impl PresentedAlgebra {
    /// The element of an integer-graded presentation given by a polynomial.
    pub fn element(&self, degree: i64, p: &Poly) -> Result<RingElem> {
        let c = self.component(&[degree])?;
        Ok(RingElem { degree, coords: c.project(p)? })
    }

    /// The class of a generator of an integer-graded presentation.
    pub fn generator_element(&self, index: usize) -> Result<RingElem> {
        let d = self.generators[index].degree[0];
        self.element(d, &Poly::var(self.generators.len(), index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zgraded(names: &[&str], relations: Vec<Poly>) -> PresentedAlgebra {
        let gens = names
            .iter()
            .map(|n| Generator { name: (*n).to_string(), degree: vec![1] })
            .collect();
        PresentedAlgebra::new("R", gens, vec![1], relations, None).unwrap()
    }

    #[test]
    fn conic_dims() {
        let x = |i| Poly::var(3, i);
        let rel = x(0).mul(&x(1)).add(&x(0).mul(&x(2))).add(&x(1).mul(&x(2)));
        let r = zgraded(&["x1", "x2", "x3"], vec![rel]);
        for d in 0..7 {
            assert_eq!(r.dim(d).unwrap(), (2 * d + 1) as usize);
            assert_eq!(r.dim_by_rank(&[d]), (2 * d + 1) as usize);
        }
    }

    #[test]
    fn truncated_square_is_not_regular() {
        let x = Poly::var(1, 0);
        let r = zgraded(&["x"], vec![x.mul(&x)]);
        let xe = r.generator_element(0).unwrap();
        assert!(!crate::ring::regular_window_check(&r, &xe, 0..=3).unwrap());
    }

    #[test]
    fn rejects_inhomogeneous() {
        let x = Poly::var(1, 0);
        let bad = x.mul(&x).add(&x);
        let gens = vec![Generator { name: "x".into(), degree: vec![1] }];
        assert!(matches!(
            PresentedAlgebra::new("R", gens, vec![1], vec![bad], None),
            Err(Error::NonHomogeneous { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let x = |i| Poly::var(2, i);
        let r = zgraded(&["x", "y"], vec![x(0).mul(&x(1))]);
        let back = PresentedAlgebra::from_json("R", &r.to_json()).unwrap();
        for d in 0..5 {
            assert_eq!(r.dim(d).unwrap(), back.dim(d).unwrap());
        }
    }
}
