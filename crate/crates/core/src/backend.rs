//! Representation-graded algebras indexed by elementary abelian 2-groups.
//!
//! A backend exposes, for each group `A` and grading `k - V`, a finite
//! dimensional component `X(A, k - V)` with a fixed basis, together with
//! products, restrictions along group homomorphisms, the pre-Euler class
//! `a ∈ X(C, -σ)` and the inverse Thom class `t ∈ X(C, 1 - σ)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::group::{circuits, enumerate_characters, Character, Group, GroupHom, RepGrading};
use crate::linalg::{BitVec, F2Matrix, LinearSolver};
use crate::poly::{Mono, Poly};
use crate::presented::{Generator, PresentedAlgebra};
use crate::ring::{DegreeBounds, GradedRing, Ring, RingElem};

/// A homogeneous element `x ∈ X(A, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    pub grading: RepGrading,
    pub coords: BitVec,
}

impl Elem {
    #[must_use]
    pub fn new(grading: RepGrading, coords: BitVec) -> Self {
        Elem { grading, coords }
    }

    #[must_use]
    pub fn group(&self) -> Group {
        self.grading.group()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &Elem) -> Result<Elem> {
        if self.grading != other.grading {
            return Err(Error::DegreeMismatch(format!(
                "adding gradings {} and {}",
                self.grading, other.grading
            )));
        }
        Ok(Elem { grading: self.grading.clone(), coords: self.coords.xor(&other.coords) })
    }
}

/// Uniform access to an oriented representation-graded algebra.
pub trait AlgebraBackend: Send + Sync {
    fn name(&self) -> String;

    fn dim(&self, m: &RepGrading) -> Result<usize>;

    fn basis_labels(&self, m: &RepGrading) -> Result<Vec<String>>;

    fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem>;

    /// Restriction along `alpha: B -> A` of a class of `A`.
    fn restrict(&self, alpha: &GroupHom, x: &Elem) -> Result<Elem>;

    /// The class `a ∈ X(C, -σ)`.
    fn pre_euler(&self) -> Result<Elem>;

    /// The class `t ∈ X(C, 1 - σ)`.
    fn inverse_thom(&self) -> Result<Elem>;

    /// Degrees in which the integer-graded part `X(A)_*` can be nonzero.
    fn integer_bounds(&self, group: Group) -> DegreeBounds;

    fn one(&self, group: Group) -> Result<Elem>;

    /// Matrix of restriction along `alpha` out of grading `m`.
    fn restriction_matrix(&self, alpha: &GroupHom, m: &RepGrading) -> Result<F2Matrix> {
        let target = alpha.pull_grading(m)?;
        let rows = self.dim(&target)?;
        let cols = (0..self.dim(m)?)
            .map(|i| self.restrict(alpha, &basis_element(self, m, i)?).map(|e| e.coords))
            .collect::<Result<Vec<_>>>()?;
        Ok(F2Matrix::from_columns(rows, &cols))
    }
}

pub type Backend = Arc<dyn AlgebraBackend>;

pub fn zero(x: &(impl AlgebraBackend + ?Sized), m: &RepGrading) -> Result<Elem> {
    Ok(Elem { grading: m.clone(), coords: BitVec::zeros(x.dim(m)?) })
}

pub fn basis_element(x: &(impl AlgebraBackend + ?Sized), m: &RepGrading, i: usize) -> Result<Elem> {
    Ok(Elem { grading: m.clone(), coords: BitVec::unit(x.dim(m)?, i) })
}

/// `a_λ = λ*(a)`.
pub fn a_class(x: &(impl AlgebraBackend + ?Sized), lambda: Character) -> Result<Elem> {
    if lambda.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    x.restrict(&GroupHom::from_character(lambda), &x.pre_euler()?)
}

/// `t_λ = λ*(t)`.
pub fn t_class(x: &(impl AlgebraBackend + ?Sized), lambda: Character) -> Result<Elem> {
    if lambda.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    x.restrict(&GroupHom::from_character(lambda), &x.inverse_thom()?)
}

/// Product of `a_λ^{U(λ)} t_λ^{W(λ)}` over all characters.
pub fn monomial(
    x: &(impl AlgebraBackend + ?Sized),
    group: Group,
    a_part: &BTreeMap<Character, u32>,
    t_part: &BTreeMap<Character, u32>,
) -> Result<Elem> {
    let mut out = x.one(group)?;
    for (&lambda, &e) in a_part {
        let a = a_class(x, lambda)?;
        for _ in 0..e {
            out = x.mul(&out, &a)?;
        }
    }
    for (&lambda, &e) in t_part {
        let t = t_class(x, lambda)?;
        for _ in 0..e {
            out = x.mul(&out, &t)?;
        }
    }
    Ok(out)
}

/// `a_V`.
pub fn a_rep(x: &(impl AlgebraBackend + ?Sized), group: Group, v: &BTreeMap<Character, u32>) -> Result<Elem> {
    monomial(x, group, v, &BTreeMap::new())
}

/// `t_V`.
pub fn t_rep(x: &(impl AlgebraBackend + ?Sized), group: Group, v: &BTreeMap<Character, u32>) -> Result<Elem> {
    monomial(x, group, &BTreeMap::new(), v)
}

/// Matrix of `z ↦ y·z` out of grading `source`.
pub fn mul_matrix(x: &(impl AlgebraBackend + ?Sized), y: &Elem, source: &RepGrading) -> Result<F2Matrix> {
    let target = source.plus(&y.grading);
    let rows = x.dim(&target)?;
    let cols = (0..x.dim(source)?)
        .map(|i| x.mul(y, &basis_element(x, source, i)?).map(|e| e.coords))
        .collect::<Result<Vec<_>>>()?;
    Ok(F2Matrix::from_columns(rows, &cols))
}

/// Grading of a quotient `z/y`, that is `m - grading(y)`.
pub fn quotient_grading(m: &RepGrading, y: &RepGrading) -> Result<RepGrading> {
    let mut out = m.remove_rep(y.rep()).ok_or_else(|| {
        Error::DivisionFailed(format!("{m} is not divisible by a class of grading {y}"))
    })?;
    out.k -= y.k;
    Ok(out)
}

/// Some `z` with `y·z = x`.
pub fn divide(x_alg: &(impl AlgebraBackend + ?Sized), x: &Elem, y: &Elem) -> Result<Elem> {
    let source = quotient_grading(&x.grading, &y.grading)?;
    let m = mul_matrix(x_alg, y, &source)?;
    LinearSolver::new(&m)
        .solve(&x.coords)
        .map(|coords| Elem { grading: source, coords })
        .ok_or_else(|| Error::DivisionFailed(format!("in {}", x_alg.name())))
}

/// Human-readable sum of basis labels.
pub fn render(x_alg: &(impl AlgebraBackend + ?Sized), x: &Elem) -> String {
    let Ok(labels) = x_alg.basis_labels(&x.grading) else {
        return format!("{:?}", x.coords);
    };
    let terms: Vec<&str> = x.coords.ones().map(|i| labels[i].as_str()).collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// The integer-graded ring `X(A)_*` of a backend.
pub struct IntegerPart {
    backend: Backend,
    group: Group,
}

impl IntegerPart {
    #[must_use]
    pub fn new(backend: Backend, group: Group) -> Self {
        IntegerPart { backend, group }
    }

    #[must_use]
    pub fn to_elem(&self, x: &RingElem) -> Elem {
        Elem { grading: RepGrading::integer(self.group, x.degree), coords: x.coords.clone() }
    }
}

impl GradedRing for IntegerPart {
    fn name(&self) -> String {
        format!("{}({})", self.backend.name(), self.group.rank)
    }

    fn dim(&self, degree: i64) -> Result<usize> {
        self.backend.dim(&RepGrading::integer(self.group, degree))
    }

    fn basis_labels(&self, degree: i64) -> Result<Vec<String>> {
        self.backend.basis_labels(&RepGrading::integer(self.group, degree))
    }

    fn bounds(&self) -> DegreeBounds {
        self.backend.integer_bounds(self.group)
    }

    fn mul_basis(&self, d1: i64, i: usize, d2: i64, j: usize) -> Result<BitVec> {
        let x = basis_element(self.backend.as_ref(), &RepGrading::integer(self.group, d1), i)?;
        let y = basis_element(self.backend.as_ref(), &RepGrading::integer(self.group, d2), j)?;
        Ok(self.backend.mul(&x, &y)?.coords)
    }

    fn mul(&self, x: &RingElem, y: &RingElem) -> Result<RingElem> {
        let p = self.backend.mul(&self.to_elem(x), &self.to_elem(y))?;
        Ok(RingElem { degree: x.degree + y.degree, coords: p.coords })
    }

    fn one(&self) -> Result<RingElem> {
        Ok(RingElem { degree: 0, coords: self.backend.one(self.group)?.coords })
    }
}

/// Order of the Bredon generators, which fixes the monomial order and hence
/// the basis labels.  Dimensions do not depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GeneratorOrder {
    /// `a_λ` before `t_λ`, characters in increasing order.
    #[default]
    EulerFirst,
    /// `t_λ` before `a_λ`, characters in decreasing order.
    ThomFirst,
}

/// Which family a Bredon generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BredonGen {
    PreEuler(Character),
    InverseThom(Character),
}

/// The Bredon presentation at one group.
#[derive(Debug)]
pub struct BredonPresentation {
    pub group: Group,
    pub characters: Vec<Character>,
    pub algebra: PresentedAlgebra,
    pub generators: Vec<BredonGen>,
    char_index: HashMap<Character, usize>,
    a_index: Vec<usize>,
    t_index: Vec<usize>,
}

impl BredonPresentation {
    fn new(group: Group, order: GeneratorOrder) -> Result<Self> {
        let characters = enumerate_characters(group);
        let char_index: HashMap<Character, usize> =
            characters.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let nchar = characters.len();
        let mut generators = Vec::with_capacity(2 * nchar);
        match order {
            GeneratorOrder::EulerFirst => {
                generators.extend(characters.iter().map(|c| BredonGen::PreEuler(*c)));
                generators.extend(characters.iter().map(|c| BredonGen::InverseThom(*c)));
            }
            GeneratorOrder::ThomFirst => {
                generators.extend(characters.iter().rev().map(|c| BredonGen::InverseThom(*c)));
                generators.extend(characters.iter().rev().map(|c| BredonGen::PreEuler(*c)));
            }
        }
        let mut a_index = vec![0; nchar];
        let mut t_index = vec![0; nchar];
        let mut gens = Vec::with_capacity(generators.len());
        for (g, gen) in generators.iter().enumerate() {
            let (lambda, k, prefix) = match gen {
                BredonGen::PreEuler(l) => {
                    a_index[char_index[l]] = g;
                    (*l, 0, "a")
                }
                BredonGen::InverseThom(l) => {
                    t_index[char_index[l]] = g;
                    (*l, 1, "t")
                }
            };
            let mut degree = vec![0i64; nchar + 1];
            degree[0] = k;
            degree[1 + char_index[&lambda]] = 1;
            gens.push(Generator { name: format!("{prefix}{}", label_char(lambda)), degree });
        }
        let ngen = gens.len();
        let mut relations = Vec::new();
        for circuit in circuits(&characters)? {
            let mut r = Poly::zero();
            for lambda in &circuit {
                let mut m = Mono::one(ngen);
                for mu in &circuit {
                    let i = char_index[mu];
                    if mu == lambda {
                        m.0[a_index[i]] += 1;
                    } else {
                        m.0[t_index[i]] += 1;
                    }
                }
                r.add_mono(m);
            }
            relations.push(r);
        }
        let mut weight = vec![1i64; nchar + 1];
        weight[0] = 0;
        let algebra =
            PresentedAlgebra::new(format!("Bredon(C^{})", group.rank), gens, weight, relations, None)?;
        Ok(BredonPresentation { group, characters, algebra, generators, char_index, a_index, t_index })
    }

    /// Multidegree vector `(k, m_λ ...)` of a grading.
    #[must_use]
    pub fn degree_of(&self, m: &RepGrading) -> Vec<i64> {
        let mut d = vec![0i64; self.characters.len() + 1];
        d[0] = m.k;
        for (c, &mult) in m.rep() {
            d[1 + self.char_index[c]] = i64::from(mult);
        }
        d
    }

    #[must_use]
    pub fn a_generator(&self, lambda: &Character) -> usize {
        self.a_index[self.char_index[lambda]]
    }

    #[must_use]
    pub fn t_generator(&self, lambda: &Character) -> usize {
        self.t_index[self.char_index[lambda]]
    }
}

fn label_char(lambda: Character) -> String {
    if lambda.group().rank == 1 {
        String::new()
    } else {
        format!("[{}]", lambda.to_bitstring())
    }
}

type RestrictionKey = (GroupHom, RepGrading);

/// Bredon homology with constant coefficients, presented by the classes
/// `a_λ`, `t_λ` modulo one relation `r(T)` per circuit `T` of characters.
pub struct BredonBackend {
    order: GeneratorOrder,
    presentations: RwLock<HashMap<usize, Arc<BredonPresentation>>>,
    restrictions: RwLock<HashMap<RestrictionKey, Arc<F2Matrix>>>,
}

impl Default for BredonBackend {
    fn default() -> Self {
        BredonBackend::new(GeneratorOrder::EulerFirst)
    }
}

impl BredonBackend {
    #[must_use]
    pub fn new(order: GeneratorOrder) -> Self {
        BredonBackend {
            order,
            presentations: RwLock::new(HashMap::new()),
            restrictions: RwLock::new(HashMap::new()),
        }
    }

    pub fn presentation(&self, group: Group) -> Result<Arc<BredonPresentation>> {
        if let Some(p) = self.presentations.read().expect("cache lock").get(&group.rank) {
            return Ok(p.clone());
        }
        let p = Arc::new(BredonPresentation::new(group, self.order)?);
        self.presentations.write().expect("cache lock").insert(group.rank, p.clone());
        Ok(p)
    }

    /// Basis monomials of a component, as exponent vectors over the generators.
    pub fn basis_monomials(&self, m: &RepGrading) -> Result<Vec<Mono>> {
        let p = self.presentation(m.group())?;
        let comp = p.algebra.component(&p.degree_of(m))?;
        Ok(comp.basis_monomials().cloned().collect())
    }

    /// The class of a polynomial in the generators, homogeneous of grading `m`.
    pub fn element(&self, m: &RepGrading, poly: &Poly) -> Result<Elem> {
        let p = self.presentation(m.group())?;
        let comp = p.algebra.component(&p.degree_of(m))?;
        Ok(Elem { grading: m.clone(), coords: comp.project(poly)? })
    }

    fn compute_restriction(&self, alpha: &GroupHom, m: &RepGrading) -> Result<F2Matrix> {
        let src = self.presentation(alpha.target())?;
        let dst = self.presentation(alpha.source())?;
        let target = alpha.pull_grading(m)?;
        let src_comp = src.algebra.component(&src.degree_of(m))?;
        let dst_comp = dst.algebra.component(&dst.degree_of(&target))?;
        let images: Vec<Option<Mono>> = src
            .generators
            .iter()
            .map(|g| {
                let (lambda, is_a) = match g {
                    BredonGen::PreEuler(l) => (l, true),
                    BredonGen::InverseThom(l) => (l, false),
                };
                let pulled = alpha.pull_character(lambda).expect("character of the target");
                let n = dst.generators.len();
                match (pulled.is_trivial(), is_a) {
                    (true, true) => None,
                    (true, false) => Some(Mono::one(n)),
                    (false, true) => Some(Mono::var(n, dst.a_generator(&pulled))),
                    (false, false) => Some(Mono::var(n, dst.t_generator(&pulled))),
                }
            })
            .collect();
        let mut cols = Vec::with_capacity(src_comp.dim());
        for mono in src_comp.basis_monomials() {
            let mut image = Some(Mono::one(dst.generators.len()));
            for (g, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                image = match (&image, &images[g]) {
                    (Some(acc), Some(img)) => {
                        let mut out = acc.clone();
                        for _ in 0..e {
                            out = out.mul(img);
                        }
                        Some(out)
                    }
                    _ => None,
                };
            }
            cols.push(match image {
                Some(im) => dst_comp
                    .normal_form(&im)
                    .cloned()
                    .ok_or_else(|| Error::DegreeMismatch("restricted monomial off grading".into()))?,
                None => BitVec::zeros(dst_comp.dim()),
            });
        }
        Ok(F2Matrix::from_columns(dst_comp.dim(), &cols))
    }

    fn cached_restriction(&self, alpha: &GroupHom, m: &RepGrading) -> Result<Arc<F2Matrix>> {
        let key = (alpha.clone(), m.clone());
        if let Some(r) = self.restrictions.read().expect("cache lock").get(&key) {
            return Ok(r.clone());
        }
        let r = Arc::new(self.compute_restriction(alpha, m)?);
        self.restrictions.write().expect("cache lock").insert(key, r.clone());
        Ok(r)
    }
}

impl AlgebraBackend for BredonBackend {
    fn name(&self) -> String {
        "bredon".into()
    }

    fn dim(&self, m: &RepGrading) -> Result<usize> {
        let p = self.presentation(m.group())?;
        Ok(p.algebra.component(&p.degree_of(m))?.dim())
    }

    fn basis_labels(&self, m: &RepGrading) -> Result<Vec<String>> {
        let p = self.presentation(m.group())?;
        let names = p.algebra.generator_names();
        let comp = p.algebra.component(&p.degree_of(m))?;
        Ok(comp.basis_monomials().map(|mono| mono.render(&names)).collect())
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        if x.group() != y.group() {
            return Err(Error::GroupMismatch("product of classes of different groups".into()));
        }
        let p = self.presentation(x.group())?;
        let (_, coords) = p.algebra.multiply(
            &p.degree_of(&x.grading),
            &x.coords,
            &p.degree_of(&y.grading),
            &y.coords,
        )?;
        Ok(Elem { grading: x.grading.plus(&y.grading), coords })
    }

    fn restrict(&self, alpha: &GroupHom, x: &Elem) -> Result<Elem> {
        if alpha.target() != x.group() {
            return Err(Error::GroupMismatch("restriction along a map into another group".into()));
        }
        let mat = self.cached_restriction(alpha, &x.grading)?;
        Ok(Elem { grading: alpha.pull_grading(&x.grading)?, coords: mat.mul_vec(&x.coords) })
    }

    fn pre_euler(&self) -> Result<Elem> {
        let c = Group::new(1);
        let p = self.presentation(c)?;
        let sigma = Character::coordinate(c, 0);
        let m = RepGrading::new(c, 0, &[sigma])?;
        self.element(&m, &Poly::var(p.generators.len(), p.a_generator(&sigma)))
    }

    fn inverse_thom(&self) -> Result<Elem> {
        let c = Group::new(1);
        let p = self.presentation(c)?;
        let sigma = Character::coordinate(c, 0);
        let m = RepGrading::new(c, 1, &[sigma])?;
        self.element(&m, &Poly::var(p.generators.len(), p.t_generator(&sigma)))
    }

    fn integer_bounds(&self, _group: Group) -> DegreeBounds {
        DegreeBounds { lower: Some(0), upper: Some(0) }
    }

    fn one(&self, group: Group) -> Result<Elem> {
        let p = self.presentation(group)?;
        self.element(&RepGrading::integer(group, 0), &Poly::one(p.generators.len()))
    }

    fn restriction_matrix(&self, alpha: &GroupHom, m: &RepGrading) -> Result<F2Matrix> {
        Ok(self.cached_restriction(alpha, m)?.as_ref().clone())
    }
}

/// A global 2-torsion group law: integer-graded rings `G(A)` with
/// restrictions and a coordinate `e ∈ G(C)_{-1}`.
pub trait GlobalGroupLaw: Send + Sync {
    fn name(&self) -> String;

    fn ring(&self, group: Group) -> Result<Ring>;

    /// Restriction along `alpha: B -> A`.
    fn restrict(&self, alpha: &GroupHom, x: &RingElem) -> Result<RingElem>;

    /// The class `e_λ = λ*(e)`.
    fn coordinate(&self, lambda: Character) -> Result<RingElem>;
}

/// The invertibly oriented algebra `G[t]`: `X(A, k - V) = G(A)_{k-|V|}·t_V`,
/// with `a = e·t`.
pub struct FreeGtBackend {
    law: Arc<dyn GlobalGroupLaw>,
    name: String,
}

impl FreeGtBackend {
    pub fn new(law: Arc<dyn GlobalGroupLaw>) -> Self {
        let name = format!("{}[t]", law.name());
        FreeGtBackend { law, name }
    }

    pub fn with_name(law: Arc<dyn GlobalGroupLaw>, name: impl Into<String>) -> Self {
        FreeGtBackend { law, name: name.into() }
    }

    #[must_use]
    pub fn law(&self) -> &Arc<dyn GlobalGroupLaw> {
        &self.law
    }

    fn as_ring_elem(x: &Elem) -> RingElem {
        RingElem { degree: x.grading.total(), coords: x.coords.clone() }
    }
}

impl AlgebraBackend for FreeGtBackend {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn dim(&self, m: &RepGrading) -> Result<usize> {
        self.law.ring(m.group())?.dim(m.total())
    }

    fn basis_labels(&self, m: &RepGrading) -> Result<Vec<String>> {
        let labels = self.law.ring(m.group())?.basis_labels(m.total())?;
        if m.is_integer() {
            return Ok(labels);
        }
        let t: Vec<String> = m
            .rep()
            .iter()
            .map(|(c, &e)| {
                let base = format!("t{}", label_char(*c));
                if e == 1 { base } else { format!("{base}^{e}") }
            })
            .collect();
        let t = t.join("*");
        Ok(labels
            .into_iter()
            .map(|l| if l == "1" { t.clone() } else { format!("{l}*{t}") })
            .collect())
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        if x.group() != y.group() {
            return Err(Error::GroupMismatch("product of classes of different groups".into()));
        }
        let ring = self.law.ring(x.group())?;
        let p = ring.mul(&Self::as_ring_elem(x), &Self::as_ring_elem(y))?;
        Ok(Elem { grading: x.grading.plus(&y.grading), coords: p.coords })
    }

    fn restrict(&self, alpha: &GroupHom, x: &Elem) -> Result<Elem> {
        if alpha.target() != x.group() {
            return Err(Error::GroupMismatch("restriction along a map into another group".into()));
        }
        let r = self.law.restrict(alpha, &Self::as_ring_elem(x))?;
        Ok(Elem { grading: alpha.pull_grading(&x.grading)?, coords: r.coords })
    }

    fn pre_euler(&self) -> Result<Elem> {
        let c = Group::new(1);
        let sigma = Character::coordinate(c, 0);
        let e = self.law.coordinate(sigma)?;
        Ok(Elem { grading: RepGrading::new(c, 0, &[sigma])?, coords: e.coords })
    }

    fn inverse_thom(&self) -> Result<Elem> {
        let c = Group::new(1);
        let sigma = Character::coordinate(c, 0);
        let one = self.law.ring(c)?.one()?;
        Ok(Elem { grading: RepGrading::new(c, 1, &[sigma])?, coords: one.coords })
    }

    fn integer_bounds(&self, group: Group) -> DegreeBounds {
        self.law
            .ring(group)
            .map(|r| r.bounds())
            .unwrap_or(DegreeBounds { lower: None, upper: None })
    }

    fn one(&self, group: Group) -> Result<Elem> {
        let one = self.law.ring(group)?.one()?;
        Ok(Elem { grading: RepGrading::integer(group, 0), coords: one.coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chars(rank: usize) -> Vec<Character> {
        enumerate_characters(Group::new(rank))
    }

    #[test]
    fn bredon_rank_one_dims() {
        let b = BredonBackend::default();
        let c = Group::new(1);
        let sigma = chars(1)[0];
        for k in -2..6 {
            for m in 0..6u32 {
                let g = RepGrading::from_multiplicities(c, k, [(sigma, m)]).unwrap();
                let expect = usize::from(0 <= k && k <= i64::from(m));
                assert_eq!(b.dim(&g).unwrap(), expect, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn bredon_rank_two_relation_degree() {
        let b = BredonBackend::default();
        let c2 = Group::new(2);
        let all = chars(2);
        let one_minus = RepGrading::new(c2, 1, &all).unwrap();
        assert_eq!(b.dim(&one_minus).unwrap(), 3);
        let two_minus = RepGrading::new(c2, 2, &all).unwrap();
        assert_eq!(b.dim(&two_minus).unwrap(), 2);
        assert_eq!(b.dim(&RepGrading::integer(c2, 0)).unwrap(), 1);
    }

    #[test]
    fn bredon_restriction_to_trivial() {
        let b = BredonBackend::default();
        let eps = GroupHom::from_trivial(Group::new(1));
        let t = b.restrict(&eps, &b.inverse_thom().unwrap()).unwrap();
        assert_eq!(t, b.one(Group::trivial()).unwrap());
        assert!(b.restrict(&eps, &b.pre_euler().unwrap()).unwrap().is_zero());
    }
}
