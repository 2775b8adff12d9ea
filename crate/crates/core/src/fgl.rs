//! 2-torsion formal group laws, the global group laws they define, and the
//! truncated universal 2-torsion law.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde_json::{json, Value};

use crate::backend::{FreeGtBackend, GlobalGroupLaw};
use crate::error::{Error, Result};
use crate::group::{Character, Group, GroupHom};
use crate::linalg::BitVec;
use crate::poly::{Mono, Poly};
use crate::presented::{Generator, PresentedAlgebra};
use crate::ring::{self, F2Ring, GradedRing, PolynomialExtension, Ring, RingElem};
use crate::series::Series;

/// Default truncation degree for formal group laws.
pub const DEFAULT_TRUNC: u32 = 8;

/// Largest truncation accepted by [`universal_2torsion`].
pub const MAX_TRUNC: u32 = 10;

/// `F(x, y) = Σ c_ij x^i y^j` with `c_ij` of ring degree `i + j - 1`,
/// known for `i + j <= trunc`.
#[derive(Clone)]
pub struct TwoTorsionFGL {
    ring: Ring,
    trunc: u32,
    coeffs: BTreeMap<(u32, u32), RingElem>,
    exact: bool,
}

impl std::fmt::Debug for TwoTorsionFGL {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TwoTorsionFGL")
            .field("ring", &self.ring.name())
            .field("trunc", &self.trunc)
            .field("nonzero", &self.nonzero_coefficients())
            .finish()
    }
}

/// Outcome of [`check_fgl_axioms`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AxiomReport {
    pub unit: bool,
    pub symmetry: bool,
    pub associativity: bool,
    pub two_torsion: bool,
}

impl AxiomReport {
    #[must_use]
    pub fn all(&self) -> bool {
        self.unit && self.symmetry && self.associativity && self.two_torsion
    }
}

impl TwoTorsionFGL {
    /// Build from a coefficient table; missing entries are zero.
    pub fn new(ring: Ring, trunc: u32, table: BTreeMap<(u32, u32), RingElem>) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for i in 0..=trunc {
            for j in 0..=(trunc - i) {
                let degree = i64::from(i + j) - 1;
                let c = match table.get(&(i, j)) {
                    Some(c) if c.degree == degree => c.clone(),
                    Some(c) => {
                        return Err(Error::DegreeMismatch(format!(
                            "c_{i}{j} in degree {} instead of {degree}",
                            c.degree
                        )))
                    }
                    None => ring::zero(ring.as_ref(), degree)?,
                };
                coeffs.insert((i, j), c);
            }
        }
        Ok(TwoTorsionFGL { ring, trunc, coeffs, exact: false })
    }

    /// The additive law `x + y`, which is exact at any truncation.
    pub fn additive(ring: Ring, trunc: u32) -> Result<Self> {
        let one = ring.one()?;
        let table = BTreeMap::from([((1, 0), one.clone()), ((0, 1), one)]);
        let mut f = TwoTorsionFGL::new(ring, trunc, table)?;
        f.exact = true;
        Ok(f)
    }

    /// Read off the coefficients of a bivariate series of degree `-1`.
    pub fn from_series(series: &Series, trunc: u32) -> Result<Self> {
        if series.num_vars() != 2 {
            return Err(Error::RingMismatch("a formal group law has two variables".into()));
        }
        let mut table = BTreeMap::new();
        for (e, c) in series.terms() {
            if e[0] < 0 || e[1] < 0 {
                return Err(Error::Truncation("Laurent term in a formal group law".into()));
            }
            let (i, j) = (e[0] as u32, e[1] as u32);
            if i + j <= trunc {
                table.insert((i, j), c);
            }
        }
        TwoTorsionFGL::new(series.ring().clone(), trunc, table)
    }

    #[must_use]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[must_use]
    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Whether all coefficients past the truncation are known to vanish.
    #[must_use]
    pub fn is_exact(&self) -> bool {
        self.exact
            || self
                .ring
                .bounds()
                .upper
                .is_some_and(|u| u < i64::from(self.trunc))
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Result<&RingElem> {
        self.coeffs
            .get(&(i, j))
            .ok_or_else(|| Error::Truncation(format!("c_{i}{j} beyond truncation {}", self.trunc)))
    }

    /// `(i, j)` with `c_ij ≠ 0`.
    #[must_use]
    pub fn nonzero_coefficients(&self) -> Vec<(u32, u32)> {
        self.coeffs.iter().filter(|(_, c)| !c.is_zero()).map(|(k, _)| *k).collect()
    }

    /// True iff the law is `x + y` up to truncation.
    #[must_use]
    pub fn is_additive(&self) -> bool {
        let one = self.ring.one().map(|o| o.coords).ok();
        self.coeffs.iter().all(|(&(i, j), c)| {
            if (i, j) == (1, 0) || (i, j) == (0, 1) {
                Some(&c.coords) == one.as_ref()
            } else {
                c.is_zero()
            }
        })
    }

    /// `F(u, v)` for series `u`, `v` of degree `-1` over the coefficient ring.
    pub fn apply(&self, u: &Series, v: &Series) -> Result<Series> {
        let limit = if self.is_exact() { None } else { Some(i64::from(self.trunc) + 1) };
        let cap = |s: Series| -> Series {
            match limit {
                Some(l) if s.weights().iter().all(|&w| w >= 1) => s.truncate(Some(l)),
                _ => s,
            }
        };
        let mut upow = vec![Series::one(u.ring().clone(), &names(u), u.weights(), None)?];
        let mut vpow = vec![upow[0].clone()];
        for n in 1..=self.trunc as usize {
            upow.push(cap(upow[n - 1].mul(u)?));
            vpow.push(cap(vpow[n - 1].mul(v)?));
        }
        let mut out = u.zero_like(-1, None);
        for (&(i, j), c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let term = upow[i as usize].mul(&vpow[j as usize])?.scale(c)?;
            out = out.add(&cap(term))?;
        }
        Ok(cap(out))
    }

    /// The law as a series in `x, y` of weight one each.
    pub fn as_series(&self, x: &str, y: &str) -> Result<Series> {
        let trunc = if self.is_exact() { None } else { Some(i64::from(self.trunc) + 1) };
        let mut s = Series::zero(self.ring.clone(), &[x, y], &[1, 1], -1, trunc);
        for (&(i, j), c) in &self.coeffs {
            s.set_coeff(&[i64::from(i), i64::from(j)], c.coords.clone());
        }
        Ok(s)
    }

    /// Push the coefficients forward along a ring map.
    pub fn map(&self, target: Ring, f: &dyn Fn(&RingElem) -> Result<RingElem>) -> Result<Self> {
        let table = self.coeffs.iter().map(|(k, c)| Ok((*k, f(c)?))).collect::<Result<_>>()?;
        let mut out = TwoTorsionFGL::new(target, self.trunc, table)?;
        out.exact = self.exact;
        Ok(out)
    }

    #[must_use]
    pub fn to_json(&self) -> Value {
        let coeffs: serde_json::Map<String, Value> = self
            .coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j), c)| (format!("{i},{j}"), json!(ring::render(self.ring.as_ref(), c))))
            .collect();
        json!({"trunc": self.trunc, "coefficients": coeffs})
    }
}

fn names(s: &Series) -> Vec<&str> {
    s.names().iter().map(String::as_str).collect()
}

/// Check unit, symmetry, associativity and `F(x, x) = 0` up to truncation.
pub fn check_fgl_axioms(f: &TwoTorsionFGL) -> Result<AxiomReport> {
    let one = f.ring.one()?.coords;
    let mut unit = true;
    for i in 0..=f.trunc {
        for (c, expect_one) in [(f.coefficient(i, 0)?, i == 1), (f.coefficient(0, i)?, i == 1)] {
            let ok = if expect_one { c.coords == one } else { c.is_zero() };
            unit &= ok;
        }
    }
    let symmetry = f.coeffs.iter().all(|(&(i, j), c)| f.coeffs[&(j, i)] == *c);
    let mut two_torsion = true;
    for n in 0..=f.trunc {
        let mut acc = ring::zero(f.ring.as_ref(), i64::from(n) - 1)?;
        for i in 0..=n {
            acc = acc.add(f.coefficient(i, n - i)?)?;
        }
        two_torsion &= acc.is_zero();
    }
    let vars = ["x", "y", "z"];
    let w = [1, 1, 1];
    let t = Some(i64::from(f.trunc) + 1);
    let x = Series::variable(f.ring.clone(), &vars, &w, 0, t)?;
    let y = Series::variable(f.ring.clone(), &vars, &w, 1, t)?;
    let z = Series::variable(f.ring.clone(), &vars, &w, 2, t)?;
    let left = f.apply(&f.apply(&x, &y)?, &z)?;
    let right = f.apply(&x, &f.apply(&y, &z)?)?;
    let associativity = left.first_difference(&right)?.is_none();
    Ok(AxiomReport { unit, symmetry, associativity, two_torsion })
}

/// The global group law of a formal group law: `G(A) = R[u_1, ..., u_n]`
/// with `deg u_i = -1` and `e_λ` the formal sum of the coordinates in `λ`.
pub struct FglGroupLaw {
    fgl: Arc<TwoTorsionFGL>,
    name: String,
    rings: RwLock<HashMap<usize, Arc<PolynomialExtension>>>,
}

impl FglGroupLaw {
    /// The ring of coefficients must vanish beyond the truncation so that
    /// formal sums are exact.
    pub fn new(fgl: Arc<TwoTorsionFGL>, name: impl Into<String>) -> Result<Self> {
        if !fgl.is_exact() {
            return Err(Error::Truncation(format!(
                "coefficient ring {} does not vanish above degree {}",
                fgl.ring.name(),
                fgl.trunc - 1
            )));
        }
        Ok(FglGroupLaw { fgl, name: name.into(), rings: RwLock::new(HashMap::new()) })
    }

    #[must_use]
    pub fn fgl(&self) -> &Arc<TwoTorsionFGL> {
        &self.fgl
    }

    fn poly_ring(&self, group: Group) -> Result<Arc<PolynomialExtension>> {
        if let Some(r) = self.rings.read().expect("cache lock").get(&group.rank) {
            return Ok(r.clone());
        }
        let vars = (1..=group.rank).map(|i| (format!("u{i}"), -1)).collect();
        let r = Arc::new(PolynomialExtension::new(self.fgl.ring.clone(), vars)?);
        self.rings.write().expect("cache lock").insert(group.rank, r.clone());
        Ok(r)
    }

    /// `F(x, y)` for `x, y ∈ G(A)_{-1}`.
    pub fn formal_sum(&self, group: Group, x: &RingElem, y: &RingElem) -> Result<RingElem> {
        let r = self.poly_ring(group)?;
        let mut xp = vec![r.one()?];
        let mut yp = vec![r.one()?];
        for n in 1..=self.fgl.trunc as usize {
            xp.push(r.mul(&xp[n - 1], x)?);
            yp.push(r.mul(&yp[n - 1], y)?);
        }
        let mut out = ring::zero(r.as_ref(), -1)?;
        for (&(i, j), c) in &self.fgl.coeffs {
            if c.is_zero() {
                continue;
            }
            let term = r.mul(&r.mul(&xp[i as usize], &yp[j as usize])?, &r.from_base(c)?)?;
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

impl GlobalGroupLaw for FglGroupLaw {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn ring(&self, group: Group) -> Result<Ring> {
        Ok(self.poly_ring(group)?)
    }

    fn restrict(&self, alpha: &GroupHom, x: &RingElem) -> Result<RingElem> {
        let src = self.poly_ring(alpha.target())?;
        let dst = self.poly_ring(alpha.source())?;
        let images = (0..alpha.target().rank)
            .map(|i| {
                let chi = alpha.pull_character(&Character::coordinate(alpha.target(), i))?;
                if chi.is_trivial() {
                    ring::zero(dst.as_ref(), -1)
                } else {
                    self.coordinate(chi)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        src.evaluate(x, dst.as_ref(), &images, &|b| dst.from_base(b))
    }

    fn coordinate(&self, lambda: Character) -> Result<RingElem> {
        let group = lambda.group();
        let r = self.poly_ring(group)?;
        if lambda.is_trivial() {
            return ring::zero(r.as_ref(), -1);
        }
        let mut acc: Option<RingElem> = None;
        for i in 0..group.rank {
            if lambda.bits() >> i & 1 == 1 {
                let u = r.var(i)?;
                acc = Some(match acc {
                    None => u,
                    Some(a) => self.formal_sum(group, &a, &u)?,
                });
            }
        }
        Ok(acc.expect("nontrivial character has a coordinate"))
    }
}

/// The Borel theory: `G[t]` for the additive law over F2.
pub fn borel_backend() -> FreeGtBackend {
    let fgl = TwoTorsionFGL::additive(Arc::new(F2Ring), DEFAULT_TRUNC).expect("additive law over F2");
    let law = FglGroupLaw::new(Arc::new(fgl), "borel").expect("additive law is exact");
    FreeGtBackend::with_name(Arc::new(law), "borel")
}

/// The truncated universal 2-torsion law and its coefficient ring.
pub struct UniversalLaw {
    pub ring: Arc<PresentedAlgebra>,
    pub fgl: Arc<TwoTorsionFGL>,
    /// Generator index of `c_ij` for `i < j`.
    pub generators: BTreeMap<(u32, u32), usize>,
}

impl UniversalLaw {
    /// `dim L_k` for `k = 0..=max`.
    pub fn dims(&self, max: i64) -> Result<Vec<usize>> {
        (0..=max).map(|k| self.ring.dim(k)).collect()
    }

    /// `G[t]` for this law.
    pub fn backend(&self) -> Result<FreeGtBackend> {
        let law = FglGroupLaw::new(self.fgl.clone(), "universal")?;
        Ok(FreeGtBackend::with_name(Arc::new(law), "psi-universal"))
    }

    /// The unique ring map sending the universal law to `target`, checked on
    /// every defining relation.
    pub fn classifying_map(&self, target: &TwoTorsionFGL) -> Result<ClassifyingMap> {
        if target.trunc < self.fgl.trunc {
            return Err(Error::Truncation("target law is truncated below the universal one".into()));
        }
        let mut images = vec![RingElem::new(0, BitVec::zeros(0)); self.ring.num_generators()];
        for (&(i, j), &g) in &self.generators {
            images[g] = target.coefficient(i, j)?.clone();
        }
        let map = ClassifyingMap { source: self.ring.clone(), target: target.ring.clone(), images };
        for (n, rel) in self.ring.relations().iter().enumerate() {
            let img = map.eval_poly(rel)?;
            if !img.is_zero() {
                return Err(Error::Hypothesis(format!(
                    "relation {n} of the universal ring does not vanish in {}",
                    target.ring.name()
                )));
            }
        }
        Ok(map)
    }
}

/// A ring map out of a presented algebra, given by generator images.
pub struct ClassifyingMap {
    source: Arc<PresentedAlgebra>,
    target: Ring,
    images: Vec<RingElem>,
}

impl ClassifyingMap {
    fn eval_mono(&self, m: &Mono) -> Result<RingElem> {
        let mut out = self.target.one()?;
        for (g, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                out = self.target.mul(&out, &self.images[g])?;
            }
        }
        Ok(out)
    }

    fn eval_poly(&self, p: &Poly) -> Result<RingElem> {
        let mut out: Option<RingElem> = None;
        for m in p.terms() {
            let v = self.eval_mono(m)?;
            out = Some(match out {
                None => v,
                Some(acc) => acc.add(&v)?,
            });
        }
        match out {
            Some(v) => Ok(v),
            None => ring::zero(self.target.as_ref(), 0),
        }
    }

    pub fn apply(&self, x: &RingElem) -> Result<RingElem> {
        let comp = self.source.component(&[x.degree])?;
        let mut out = ring::zero(self.target.as_ref(), x.degree)?;
        for i in x.coords.ones() {
            out = out.add(&self.eval_mono(comp.basis_monomial(i))?)?;
        }
        Ok(out)
    }
}

/// Polynomials in `x, y, z` with coefficients in `F2[c_ij]`, cut off above
/// total degree `trunc`.
#[derive(Clone, Default)]
struct Symbolic {
    terms: BTreeMap<[u16; 3], Poly>,
}

impl Symbolic {
    fn var(i: usize, nvars: usize) -> Self {
        let mut e = [0u16; 3];
        e[i] = 1;
        Symbolic { terms: BTreeMap::from([(e, Poly::one(nvars))]) }
    }

    fn add_term(&mut self, e: [u16; 3], p: &Poly) {
        let entry = self.terms.entry(e).or_default();
        entry.add_assign(p);
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn add(&self, other: &Symbolic) -> Symbolic {
        let mut out = self.clone();
        for (e, p) in &other.terms {
            out.add_term(*e, p);
        }
        out
    }

    fn mul(&self, other: &Symbolic, trunc: u16) -> Symbolic {
        let mut out = Symbolic::default();
        for (e1, p1) in &self.terms {
            for (e2, p2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                if e.iter().sum::<u16>() <= trunc {
                    out.add_term(e, &p1.mul(p2));
                }
            }
        }
        out
    }

    fn scale(&self, p: &Poly) -> Symbolic {
        let mut out = Symbolic::default();
        for (e, q) in &self.terms {
            out.add_term(*e, &q.mul(p));
        }
        out
    }
}

/// `F(u, v) = u + v + Σ_{i<j} c_ij (u^i v^j + u^j v^i)`.
fn symbolic_law(
    u: &Symbolic,
    v: &Symbolic,
    gens: &BTreeMap<(u32, u32), usize>,
    nvars: usize,
    trunc: u16,
) -> Symbolic {
    let mut upow = vec![Symbolic { terms: BTreeMap::from([([0; 3], Poly::one(nvars))]) }];
    let mut vpow = upow.clone();
    for n in 1..=usize::from(trunc) {
        upow.push(upow[n - 1].mul(u, trunc));
        vpow.push(vpow[n - 1].mul(v, trunc));
    }
    let mut out = u.add(v);
    for (&(i, j), &g) in gens {
        let c = Poly::var(nvars, g);
        let (i, j) = (i as usize, j as usize);
        let sym = upow[i].mul(&vpow[j], trunc).add(&upow[j].mul(&vpow[i], trunc));
        out = out.add(&sym.scale(&c));
    }
    out
}

/// The universal 2-torsion formal group law modulo everything above
/// degree `trunc - 1`.
///
/// Generators are `c_ij` for `1 <= i < j`, `i + j <= trunc`, of degree
/// `i + j - 1`; the unit and symmetry are built into the parametrization
/// and `F(x, x) = 0` forces the diagonal coefficients to vanish.  The
/// relations are the coefficients of `F(F(x, y), z) - F(x, F(y, z))`.
pub fn universal_2torsion(trunc: u32) -> Result<UniversalLaw> {
    if !(1..=MAX_TRUNC).contains(&trunc) {
        return Err(Error::window(
            format!("truncation {trunc} for the universal law"),
            format!("a truncation between 1 and {MAX_TRUNC}"),
        ));
    }
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for s in 3..=trunc {
        for i in 1..s {
            let j = s - i;
            if i < j {
                pairs.push((i, j));
            }
        }
    }
    let generators: BTreeMap<(u32, u32), usize> =
        pairs.iter().enumerate().map(|(n, &p)| (p, n)).collect();
    let nvars = pairs.len();
    let gens: Vec<Generator> = pairs
        .iter()
        .map(|&(i, j)| Generator { name: format!("c{i}_{j}"), degree: vec![i64::from(i + j) - 1] })
        .collect();
    let t = trunc as u16;
    let x = Symbolic::var(0, nvars);
    let y = Symbolic::var(1, nvars);
    let z = Symbolic::var(2, nvars);
    let left = symbolic_law(&symbolic_law(&x, &y, &generators, nvars, t), &z, &generators, nvars, t);
    let right = symbolic_law(&x, &symbolic_law(&y, &z, &generators, nvars, t), &generators, nvars, t);
    let diff = left.add(&right);
    let mut relations: Vec<Poly> = Vec::new();
    for p in diff.terms.into_values() {
        if !relations.contains(&p) {
            relations.push(p);
        }
    }
    let top = i64::from(trunc) - 1;
    let ring = Arc::new(PresentedAlgebra::new("L", gens, vec![1], relations, Some(top))?);
    let one = ring.one()?;
    let mut table = BTreeMap::from([((1, 0), one.clone()), ((0, 1), one)]);
    for (&(i, j), &g) in &generators {
        let c = ring.generator_element(g)?;
        table.insert((i, j), c.clone());
        table.insert((j, i), c);
    }
    let fgl = Arc::new(TwoTorsionFGL::new(ring.clone(), trunc, table)?);
    Ok(UniversalLaw { ring, fgl, generators })
}

/// The file format of a free global group law: a Z-graded presentation and
/// a coefficient table, `{"name", "ring", "fgl": {"trunc", "coefficients"}}`
/// with coefficients keyed `"i,j"` and written as sums of monomials.
pub fn law_to_json(name: &str, ring: &PresentedAlgebra, fgl: &TwoTorsionFGL) -> Value {
    json!({"name": name, "ring": ring.to_json(), "fgl": fgl.to_json()})
}

/// Read a file written by [`law_to_json`] into a backend `G[t]`.
pub fn free_gt_from_json(value: &Value) -> Result<FreeGtBackend> {
    let name = value.get("name").and_then(Value::as_str).unwrap_or("free-gt");
    let ring_json = value.get("ring").ok_or_else(|| Error::Parse("missing \"ring\"".into()))?;
    let ring = Arc::new(PresentedAlgebra::from_json(name, ring_json)?);
    let fgl_json = value.get("fgl").ok_or_else(|| Error::Parse("missing \"fgl\"".into()))?;
    let trunc = fgl_json
        .get("trunc")
        .and_then(Value::as_u64)
        .and_then(|t| u32::try_from(t).ok())
        .ok_or_else(|| Error::Parse("fgl needs an integer \"trunc\"".into()))?;
    let coeffs = fgl_json
        .get("coefficients")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Parse("fgl needs \"coefficients\"".into()))?;
    let mut table = BTreeMap::new();
    for (key, poly) in coeffs {
        let parsed = key
            .split_once(',')
            .and_then(|(i, j)| Some((i.trim().parse::<u32>().ok()?, j.trim().parse::<u32>().ok()?)));
        let (i, j) = parsed.ok_or_else(|| Error::Parse(format!("coefficient key {key:?}")))?;
        let text = poly.as_str().ok_or_else(|| Error::Parse(format!("coefficient {key} must be a string")))?;
        let c = ring.element(i64::from(i + j) - 1, &ring.parse_poly(text)?)?;
        table.insert((i, j), c);
    }
    let fgl = Arc::new(TwoTorsionFGL::new(ring, trunc, table)?);
    let law = FglGroupLaw::new(fgl, name)?;
    Ok(FreeGtBackend::with_name(Arc::new(law), name))
}

/// Number of partitions of `n` into parts not of the form `2^j - 1`.
#[must_use]
pub fn partition_count(n: usize) -> usize {
    let parts: Vec<usize> = (2..=n.max(2)).filter(|p| !(p + 1).is_power_of_two()).collect();
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for p in parts {
        for k in p..=n {
            ways[k] += ways[k - p];
        }
    }
    ways[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_law_passes() {
        let f = TwoTorsionFGL::additive(Arc::new(F2Ring), 6).unwrap();
        assert!(check_fgl_axioms(&f).unwrap().all());
        assert!(f.is_additive());
    }

    #[test]
    fn multiplicative_law_is_not_two_torsion() {
        let r: Ring = Arc::new(
            PolynomialExtension::new(Arc::new(F2Ring), vec![("c".into(), 1)]).unwrap(),
        );
        let one = r.one().unwrap();
        let c = RingElem::new(1, BitVec::unit(1, 0));
        let table = BTreeMap::from([((1, 0), one.clone()), ((0, 1), one), ((1, 1), c)]);
        let f = TwoTorsionFGL::new(r, 4, table).unwrap();
        let report = check_fgl_axioms(&f).unwrap();
        assert!(!report.two_torsion);
        assert!(report.associativity && report.unit && report.symmetry);
    }

    #[test]
    fn spurious_square_breaks_unit() {
        let gens = vec![Generator { name: "c".into(), degree: vec![1] }];
        let c = Poly::var(1, 0);
        let r = Arc::new(PresentedAlgebra::new("R", gens, vec![1], vec![c.mul(&c)], None).unwrap());
        let one = r.one().unwrap();
        let cls = r.generator_element(0).unwrap();
        let table = BTreeMap::from([((1, 0), one.clone()), ((0, 1), one), ((2, 0), cls)]);
        let f = TwoTorsionFGL::new(r, 4, table).unwrap();
        assert!(!check_fgl_axioms(&f).unwrap().unit);
    }

    #[test]
    fn partition_oracle() {
        let v: Vec<usize> = (0..8).map(partition_count).collect();
        assert_eq!(v, [1, 0, 1, 0, 2, 1, 3, 1]);
    }

    #[test]
    fn universal_dims_match_partitions() {
        let u = universal_2torsion(8).unwrap();
        let dims = u.dims(7).unwrap();
        let oracle: Vec<usize> = (0..8).map(partition_count).collect();
        assert_eq!(dims, oracle);
        assert!(check_fgl_axioms(&u.fgl).unwrap().all());
    }

    #[test]
    fn borel_coordinates_add() {
        let b = borel_backend();
        let law = b.law();
        let c2 = Group::new(2);
        let mu = Character::new(c2, 0b11).unwrap();
        let e1 = law.coordinate(Character::coordinate(c2, 0)).unwrap();
        let e2 = law.coordinate(Character::coordinate(c2, 1)).unwrap();
        assert_eq!(law.coordinate(mu).unwrap(), e1.add(&e2).unwrap());
    }

    #[test]
    fn free_gt_file_round_trip() {
        let law = universal_2torsion(6).unwrap();
        let text = law_to_json("universal", &law.ring, &law.fgl).to_string();
        use crate::backend::AlgebraBackend;
        let loaded = free_gt_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        let direct = law.backend().unwrap();
        let g = Group::new(1);
        for k in -3..=5 {
            let m = crate::group::RepGrading::integer(g, k);
            assert_eq!(loaded.dim(&m).unwrap(), direct.dim(&m).unwrap());
        }
    }
}
