//! Structural checks of oriented algebras: the defining exact sequences,
//! additivity, invertibility, generation by `a` and `t`, the morphism out of
//! Bredon homology, and the closed form of Bredon geometric fixed points.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;
use std::sync::{Arc, RwLock};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use serde::Serialize;

use crate::backend::{
    self, a_class, basis_element, mul_matrix, t_class, AlgebraBackend, Backend, BredonBackend, BredonGen,
    Elem, GeneratorOrder,
};
use crate::error::{Error, Result};
use crate::group::{
    circuits, enumerate_characters, gradings_in_window, kernel_inclusion, Character, Group, GroupHom,
    RepGrading,
};
use crate::linalg::{BitVec, F2Matrix, LinearSolver};
use crate::expansions::{Expander, Route, Split};
use crate::localization::{ColimitRing, Localizations};
use crate::poly::{Mono, Poly};
use crate::presented::{Generator, PresentedAlgebra};
use crate::ring::{DegreeBounds, GradedRing, RingElem};

/// Range of groups and gradings a check runs over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub max_rank: usize,
    pub k: RangeInclusive<i64>,
    pub v_size: RangeInclusive<u32>,
}

impl Default for Window {
    fn default() -> Self {
        Window { max_rank: 2, k: -4..=4, v_size: 0..=4 }
    }
}

impl Window {
    #[must_use]
    pub fn new(max_rank: usize, k: RangeInclusive<i64>, v_size: RangeInclusive<u32>) -> Self {
        Window { max_rank, k, v_size }
    }

    #[must_use]
    pub fn gradings(&self, group: Group) -> Vec<RepGrading> {
        gradings_in_window(group, self.k.clone(), self.v_size.clone())
    }

    /// The groups `C^1 .. C^max_rank`.
    pub fn groups(&self) -> impl Iterator<Item = Group> {
        (1..=self.max_rank).map(Group::new)
    }
}

/// A backend with a different choice of inverse Thom class.
pub struct WithThom {
    inner: Backend,
    thom: Elem,
    name: String,
}

impl WithThom {
    /// Fails unless `thom` lies in grading `1 - σ` and restricts to one.
    pub fn new(inner: Backend, thom: Elem) -> Result<Self> {
        let c = Group::new(1);
        let expected = RepGrading::new(c, 1, &[Character::coordinate(c, 0)])?;
        if thom.grading != expected {
            return Err(Error::DegreeMismatch(format!("inverse Thom class in {}", thom.grading)));
        }
        let res = inner.restrict(&GroupHom::from_trivial(c), &thom)?;
        if res != inner.one(Group::trivial())? {
            return Err(Error::Hypothesis("the class does not restrict to 1".into()));
        }
        let name = format!("{}[t={}]", inner.name(), backend::render(inner.as_ref(), &thom));
        Ok(WithThom { inner, thom, name })
    }
}

impl AlgebraBackend for WithThom {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn dim(&self, m: &RepGrading) -> Result<usize> {
        self.inner.dim(m)
    }
    fn basis_labels(&self, m: &RepGrading) -> Result<Vec<String>> {
        self.inner.basis_labels(m)
    }
    fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.inner.mul(x, y)
    }
    fn restrict(&self, alpha: &GroupHom, x: &Elem) -> Result<Elem> {
        self.inner.restrict(alpha, x)
    }
    fn pre_euler(&self) -> Result<Elem> {
        self.inner.pre_euler()
    }
    fn inverse_thom(&self) -> Result<Elem> {
        Ok(self.thom.clone())
    }
    fn integer_bounds(&self, group: Group) -> DegreeBounds {
        self.inner.integer_bounds(group)
    }
    fn one(&self, group: Group) -> Result<Elem> {
        self.inner.one(group)
    }
    fn restriction_matrix(&self, alpha: &GroupHom, m: &RepGrading) -> Result<F2Matrix> {
        self.inner.restriction_matrix(alpha, m)
    }
}

/// All inverse Thom classes `t + a·y`, `y ∈ X(C, 1)`, up to `limit` of them.
pub fn inverse_thom_classes(x: &dyn AlgebraBackend, limit: usize) -> Result<Vec<Elem>> {
    let c = Group::new(1);
    let t = x.inverse_thom()?;
    let a = x.pre_euler()?;
    let shift = RepGrading::integer(c, 1);
    let dim = x.dim(&shift)?;
    let mut out = vec![t.clone()];
    let total = if dim >= 63 { u64::MAX } else { 1u64 << dim };
    for bits in 1..total {
        if out.len() >= limit {
            break;
        }
        let coords = BitVec::from_bools(&(0..dim).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>());
        let y = Elem::new(shift.clone(), coords);
        out.push(t.add(&x.mul(&a, &y)?)?);
    }
    Ok(out)
}

/// Ranks in `0 -> X(A,m) -a_λ-> X(A,m-λ) -res-> X(K,res(m)-1) -> 0`.
#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub lambda: String,
    pub grading: String,
    pub dims: [usize; 3],
    pub rank_euler: usize,
    pub rank_restriction: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

pub fn check_exactness(x: &dyn AlgebraBackend, lambda: Character, m: &RepGrading) -> Result<ExactnessReport> {
    if lambda.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let incl = kernel_inclusion(&lambda)?;
    let a = a_class(x, lambda)?;
    let middle = m.plus(&a.grading);
    let target = incl.pull_grading(&middle)?;
    let dims = [x.dim(m)?, x.dim(&middle)?, x.dim(&target)?];
    let euler = mul_matrix(x, &a, m)?;
    let res = x.restriction_matrix(&incl, &middle)?;
    let rank_euler = euler.rank();
    let rank_restriction = res.rank();
    let composite_zero = dims[0] == 0 || dims[2] == 0 || res.mul(&euler).is_zero();
    let exact = rank_euler == dims[0]
        && rank_restriction == dims[2]
        && composite_zero
        && rank_euler + rank_restriction == dims[1];
    Ok(ExactnessReport {
        lambda: lambda.to_bitstring(),
        grading: m.to_string(),
        dims,
        rank_euler,
        rank_restriction,
        composite_zero,
        exact,
    })
}

/// Summary of many checks of one kind.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub backend: String,
    pub checked: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    fn new(name: &str, backend: &str) -> Self {
        SuiteReport { name: name.into(), backend: backend.into(), checked: 0, passed: true, counterexample: None }
    }

    fn fail(&mut self, what: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(what);
        }
    }
}

/// Exactness for every nontrivial character and every grading in the window.
pub fn exactness_suite(x: &dyn AlgebraBackend, window: &Window) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("exactness", &x.name());
    for group in window.groups() {
        for m in window.gradings(group) {
            for lambda in enumerate_characters(group) {
                let r = check_exactness(x, lambda, &m)?;
                report.checked += 1;
                if !r.exact {
                    report.fail(serde_json::to_string(&r).unwrap_or_default());
                }
            }
        }
    }
    Ok(report)
}

/// The class `a_1 t_μ t_2 + t_1 a_μ t_2 + t_1 t_μ a_2` in `X(C², 2 - (p_1+μ+p_2))`.
pub fn additivity_class(x: &dyn AlgebraBackend) -> Result<Elem> {
    let c2 = Group::new(2);
    let p1 = Character::coordinate(c2, 0);
    let p2 = Character::coordinate(c2, 1);
    let mu = p1.plus(&p2);
    let mut sum: Option<Elem> = None;
    for special in [p1, mu, p2] {
        let mut term = x.one(c2)?;
        for lambda in [p1, mu, p2] {
            let f = if lambda == special { a_class(x, lambda)? } else { t_class(x, lambda)? };
            term = x.mul(&term, &f)?;
        }
        sum = Some(match sum {
            None => term,
            Some(s) => s.add(&term)?,
        });
    }
    Ok(sum.expect("three terms"))
}

pub fn check_additive(x: &dyn AlgebraBackend) -> Result<bool> {
    Ok(additivity_class(x)?.is_zero())
}

/// Bijectivity of every `t_λ·: X(A,m) -> X(A,m+1-λ)` in the window.
pub fn check_invertible(x: &dyn AlgebraBackend, window: &Window) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("invertible", &x.name());
    for group in window.groups() {
        for m in window.gradings(group) {
            for lambda in enumerate_characters(group) {
                let t = t_class(x, lambda)?;
                let target = m.plus(&t.grading);
                let (d0, d1) = (x.dim(&m)?, x.dim(&target)?);
                report.checked += 1;
                if d0 != d1 || mul_matrix(x, &t, &m)?.rank() != d0 {
                    report.fail(format!(
                        "t_{}: {m} -> {target} has dims {d0} -> {d1}",
                        lambda.to_bitstring()
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Every component is spanned by `X(A)_* · a_U t_W` with `U + W = V`.
pub fn check_generation(x: &dyn AlgebraBackend, window: &Window) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("generation", &x.name());
    for group in window.groups() {
        for m in window.gradings(group) {
            let dim = x.dim(&m)?;
            report.checked += 1;
            if dim == 0 {
                continue;
            }
            let mut span = Vec::new();
            for a_part in sub_multisets(m.rep()) {
                let t_part: BTreeMap<Character, u32> = m
                    .rep()
                    .iter()
                    .map(|(c, k)| (*c, k - a_part.get(c).copied().unwrap_or(0)))
                    .filter(|(_, k)| *k > 0)
                    .collect();
                let size: u32 = t_part.values().sum();
                let integer = RepGrading::integer(group, m.k - i64::from(size));
                let idim = x.dim(&integer)?;
                if idim == 0 {
                    continue;
                }
                let mono = backend::monomial(x, group, &a_part, &t_part)?;
                for i in 0..idim {
                    span.push(x.mul(&basis_element(x, &integer, i)?, &mono)?.coords);
                }
            }
            if F2Matrix::from_columns(dim, &span).rank() != dim {
                report.fail(format!("{m} is not generated by a and t"));
            }
        }
    }
    Ok(report)
}

fn sub_multisets(v: &BTreeMap<Character, u32>) -> Vec<BTreeMap<Character, u32>> {
    let mut out = vec![BTreeMap::new()];
    for (c, &k) in v {
        out = out
            .into_iter()
            .flat_map(|base| {
                (0..=k).map(move |j| {
                    let mut b = base.clone();
                    if j > 0 {
                        b.insert(*c, j);
                    }
                    b
                })
            })
            .collect();
    }
    out
}

/// Restriction to the kernel of every character is surjective.
pub fn check_restriction_surjective(x: &dyn AlgebraBackend, window: &Window) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("restriction-surjective", &x.name());
    for group in window.groups() {
        for lambda in enumerate_characters(group) {
            let incl = kernel_inclusion(&lambda)?;
            for m in window.gradings(group) {
                let target = incl.pull_grading(&m)?;
                report.checked += 1;
                if x.restriction_matrix(&incl, &m)?.rank() != x.dim(&target)? {
                    report.fail(format!("restriction of {m} to ker {}", lambda.to_bitstring()));
                }
            }
        }
    }
    Ok(report)
}

/// Ring axioms on random triples, functoriality of restriction, and the
/// normalizations of `a` and `t`.
pub fn check_backend_axioms(x: &dyn AlgebraBackend, window: &Window, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("backend-axioms", &x.name());
    let mut rng = StdRng::seed_from_u64(seed);
    let c = Group::new(1);
    let eps = GroupHom::from_trivial(c);
    if x.restrict(&eps, &x.inverse_thom()?)? != x.one(Group::trivial())? {
        report.fail("t does not restrict to 1".into());
    }
    if !x.restrict(&eps, &x.pre_euler()?)?.is_zero() {
        report.fail("a does not restrict to 0".into());
    }
    for group in window.groups() {
        let zero_char = GroupHom::from_columns(group, c, vec![0; group.rank])?;
        if !x.restrict(&zero_char, &x.pre_euler()?)?.is_zero() {
            report.fail(format!("a along the trivial character of rank {}", group.rank));
        }
        let gradings = window.gradings(group);
        for _ in 0..samples {
            report.checked += 1;
            let pick = |rng: &mut StdRng| gradings[rng.gen_range(0..gradings.len())].clone();
            let (m1, m2, m3) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let u = random_elem(x, &m1, &mut rng)?;
            let u2 = random_elem(x, &m1, &mut rng)?;
            let v = random_elem(x, &m2, &mut rng)?;
            let w = random_elem(x, &m3, &mut rng)?;
            let uv = x.mul(&u, &v)?;
            if x.mul(&u.add(&u2)?, &v)? != uv.add(&x.mul(&u2, &v)?)? {
                report.fail(format!("bilinearity in {m1}, {m2}"));
            }
            if uv != x.mul(&v, &u)? {
                report.fail(format!("commutativity in {m1}, {m2}"));
            }
            if x.mul(&uv, &w)? != x.mul(&u, &x.mul(&v, &w)?)? {
                report.fail(format!("associativity in {m1}, {m2}, {m3}"));
            }
            let alpha = random_hom(&mut rng, group.rank, group)?;
            let inner_rank = rng.gen_range(0..=alpha.source().rank);
            let beta = random_hom(&mut rng, inner_rank, alpha.source())?;
            let lhs = x.restrict(&beta, &x.restrict(&alpha, &uv)?)?;
            if lhs != x.restrict(&alpha.compose(&beta)?, &uv)? {
                report.fail(format!("functoriality of restriction on {}", uv.grading));
            }
            if x.restrict(&alpha, &uv)? != x.mul(&x.restrict(&alpha, &u)?, &x.restrict(&alpha, &v)?)? {
                report.fail(format!("restriction is not multiplicative on {m1}, {m2}"));
            }
            if x.restrict(&alpha, &x.one(group)?)? != x.one(alpha.source())? {
                report.fail("restriction does not preserve 1".into());
            }
        }
    }
    Ok(report)
}

fn random_hom(rng: &mut StdRng, source_rank: usize, target: Group) -> Result<GroupHom> {
    let source = Group::new(source_rank);
    let columns = (0..source_rank).map(|_| rng.gen_range(0..=target.mask())).collect();
    GroupHom::from_columns(source, target, columns)
}

fn random_elem(x: &dyn AlgebraBackend, m: &RepGrading, rng: &mut StdRng) -> Result<Elem> {
    let dim = x.dim(m)?;
    let bits: Vec<bool> = (0..dim).map(|_| rng.gen_bool(0.5)).collect();
    Ok(Elem::new(m.clone(), BitVec::from_bools(&bits)))
}

/// `x·t_μ` divisible by `a_λ^n` iff `x` is, for `x` ranging over whole
/// components `X(C², k - V)` of Bredon homology with `λ^n ⊆ V`; also the assembly of the
/// divisibilities by the `a_λ^{m_λ}` into divisibility by `a_V`.
pub fn check_coprime_divisibility(b: &BredonBackend, window: &Window, max_power: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("coprime-divisibility", &b.name());
    let c2 = Group::new(2);
    let chars = enumerate_characters(c2);
    let mu = chars[2];
    let y = t_class(b, mu)?;
    for lambda in &chars {
        let incl = kernel_inclusion(lambda)?;
        let res_y = b.restrict(&incl, &y)?;
        let k = incl.source();
        for m in window.gradings(k) {
            if mul_matrix(b, &res_y, &m)?.rank() != b.dim(&m)? {
                return Err(Error::Hypothesis(format!("restriction of t_μ is a zero divisor on {m}")));
            }
        }
    }
    for m in window.gradings(c2) {
        let dim = b.dim(&m)?;
        if dim == 0 || dim > 10 {
            continue;
        }
        let elems: Vec<Elem> = (1..1u32 << dim)
            .map(|bits| Elem::new(m.clone(), BitVec::from_bools(&(0..dim).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>())))
            .collect();
        for lambda in &chars {
            // Divisibility of `x` by `a_λ^n` needs `λ^n` inside the grading of `x`.
            for n in 1..=max_power.min(m.multiplicity(lambda)) {
                let mut power = BTreeMap::new();
                power.insert(*lambda, n);
                let a_n = backend::a_rep(b, c2, &power)?;
                for x in &elems {
                    report.checked += 1;
                    let xy = b.mul(x, &y)?;
                    if divisible(b, x, &a_n)? != divisible(b, &xy, &a_n)? {
                        report.fail(format!("{} against a_{}^{n}", backend::render(b, x), lambda.to_bitstring()));
                    }
                }
            }
        }
        for x in &elems {
            let v = m.rep().clone();
            let per_char = v
                .iter()
                .map(|(c, &k)| {
                    let mut p = BTreeMap::new();
                    p.insert(*c, k);
                    divisible(b, x, &backend::a_rep(b, c2, &p)?)
                })
                .collect::<Result<Vec<bool>>>()?;
            if per_char.iter().all(|d| *d) {
                report.checked += 1;
                if !divisible(b, x, &backend::a_rep(b, c2, &v)?)? {
                    report.fail(format!("{} is not divisible by a_V", backend::render(b, x)));
                }
            }
        }
    }
    Ok(report)
}

fn divisible(x: &dyn AlgebraBackend, z: &Elem, y: &Elem) -> Result<bool> {
    if z.is_zero() {
        return Ok(true);
    }
    let Ok(source) = backend::quotient_grading(&z.grading, &y.grading) else {
        return Ok(false);
    };
    Ok(LinearSolver::new(&mul_matrix(x, y, &source)?).in_image(&z.coords))
}

/// A circuit relation with nonzero image.
#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub circuit: Vec<String>,
    pub image: String,
}

/// The map out of Bredon homology determined by `a_λ ↦ ā_λ`, `t_λ ↦ t̄_λ`.
pub struct BredonMorphism {
    source: BredonBackend,
    target: Backend,
    images: RwLock<HashMap<usize, Arc<Vec<Elem>>>>,
}

impl BredonMorphism {
    /// Verifies that every circuit relation up to `max_rank` maps to zero.
    pub fn new(target: Backend, max_rank: usize) -> Result<Self> {
        let morphism = BredonMorphism {
            source: BredonBackend::default(),
            target,
            images: RwLock::new(HashMap::new()),
        };
        let failures = morphism.relation_failures(max_rank)?;
        if let Some(f) = failures.first() {
            return Err(Error::Hypothesis(format!(
                "r({}) maps to {} in {}",
                f.circuit.join(","),
                f.image,
                morphism.target.name()
            )));
        }
        Ok(morphism)
    }

    #[must_use]
    pub fn source(&self) -> &BredonBackend {
        &self.source
    }

    #[must_use]
    pub fn target(&self) -> &Backend {
        &self.target
    }

    /// Images of the circuit relations that are nonzero.
    pub fn relation_failures(&self, max_rank: usize) -> Result<Vec<RelationFailure>> {
        let y = self.target.as_ref();
        let mut out = Vec::new();
        for rank in 1..=max_rank {
            let group = Group::new(rank);
            for circuit in circuits(&enumerate_characters(group))? {
                let mut sum: Option<Elem> = None;
                for special in &circuit {
                    let mut term = y.one(group)?;
                    for lambda in &circuit {
                        let f = if lambda == special { a_class(y, *lambda)? } else { t_class(y, *lambda)? };
                        term = y.mul(&term, &f)?;
                    }
                    sum = Some(match sum {
                        None => term,
                        Some(s) => s.add(&term)?,
                    });
                }
                let image = sum.expect("nonempty circuit");
                if !image.is_zero() {
                    out.push(RelationFailure {
                        circuit: circuit.iter().map(Character::to_bitstring).collect(),
                        image: backend::render(y, &image),
                    });
                }
            }
        }
        Ok(out)
    }

    fn generator_images(&self, group: Group) -> Result<Arc<Vec<Elem>>> {
        if let Some(v) = self.images.read().expect("cache lock").get(&group.rank) {
            return Ok(v.clone());
        }
        let p = self.source.presentation(group)?;
        let y = self.target.as_ref();
        let v = Arc::new(
            p.generators
                .iter()
                .map(|g| match g {
                    BredonGen::PreEuler(l) => a_class(y, *l),
                    BredonGen::InverseThom(l) => t_class(y, *l),
                })
                .collect::<Result<Vec<_>>>()?,
        );
        self.images.write().expect("cache lock").insert(group.rank, v.clone());
        Ok(v)
    }

    fn image_of_monomial(&self, group: Group, mono: &Mono) -> Result<Elem> {
        let images = self.generator_images(group)?;
        let y = self.target.as_ref();
        let mut out = y.one(group)?;
        for (g, &e) in mono.0.iter().enumerate() {
            for _ in 0..e {
                out = y.mul(&out, &images[g])?;
            }
        }
        Ok(out)
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        let monos = self.source.basis_monomials(&x.grading)?;
        let mut out = backend::zero(self.target.as_ref(), &x.grading)?;
        for i in x.coords.ones() {
            out = out.add(&self.image_of_monomial(x.group(), &monos[i])?)?;
        }
        Ok(out)
    }

    /// Matrix of the morphism in grading `m`.
    pub fn matrix(&self, m: &RepGrading) -> Result<F2Matrix> {
        let rows = self.target.dim(m)?;
        let cols = self
            .source
            .basis_monomials(m)?
            .iter()
            .map(|mono| self.image_of_monomial(m.group(), mono).map(|e| e.coords))
            .collect::<Result<Vec<_>>>()?;
        Ok(F2Matrix::from_columns(rows, &cols))
    }

    pub fn is_iso_at(&self, m: &RepGrading) -> Result<bool> {
        let mat = self.matrix(m)?;
        Ok(mat.rows() == mat.cols() && mat.rank() == mat.cols())
    }

    /// The induced map `t^{-1}Bredon(A)_d -> t^{-1}Y(A)_d`.
    pub fn t_localized_matrix(&self, src: &ColimitRing, dst: &ColimitRing, d: i64) -> Result<F2Matrix> {
        let rows = dst.dim(d)?;
        let cols = (0..src.dim(d)?)
            .map(|i| {
                let y = RingElem::new(d, BitVec::unit(src.dim(d)?, i));
                dst.localize(&self.apply(&src.lift(&y)?)?).map(|e| e.coords)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(F2Matrix::from_columns(rows, &cols))
    }
}

/// The map `t^{-1}Bredon(C^n)_d → t^{-1}Y(C^n)_d` is bijective and the
/// target has the dimensions of `F2[e_1, ..., e_n]` with `deg e_i = -1`.
pub fn check_t_localized_iso(
    morphism: &BredonMorphism,
    source: &Localizations,
    target: &Localizations,
    max_rank: usize,
    degrees: RangeInclusive<i64>,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("t-localized-iso", &morphism.target.name());
    for n in 1..=max_rank {
        let group = Group::new(n);
        let (src, dst) = (source.t_inv(group), target.t_inv(group));
        for d in degrees.clone() {
            report.checked += 1;
            let expected = crate::ring::weighted_monomials(&vec![1; n], -d).len();
            let m = morphism.t_localized_matrix(&src, &dst, d)?;
            if m.rows() != expected || m.cols() != expected || m.rank() != expected {
                report.fail(format!(
                    "rank {n}, degree {d}: {}x{} of rank {}, expected {expected}",
                    m.rows(),
                    m.cols(),
                    m.rank()
                ));
            }
        }
    }
    Ok(report)
}

/// Whether the morphism is an isomorphism on integer gradings, and on all
/// gradings, in the window.
#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub target: String,
    pub integer_iso: bool,
    pub all_iso: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

pub fn check_iso_in_window(morphism: &BredonMorphism, window: &Window) -> Result<IsoReport> {
    let mut report = IsoReport {
        target: morphism.target.name(),
        integer_iso: true,
        all_iso: true,
        checked: 0,
        counterexample: None,
    };
    for group in window.groups() {
        for k in window.k.clone() {
            if !morphism.is_iso_at(&RepGrading::integer(group, k))? {
                report.integer_iso = false;
            }
        }
        for m in window.gradings(group) {
            report.checked += 1;
            if !morphism.is_iso_at(&m)? {
                report.all_iso = false;
                report.counterexample.get_or_insert_with(|| m.to_string());
            }
        }
    }
    Ok(report)
}

fn random_nonzero(x: &dyn AlgebraBackend, m: &RepGrading, rng: &mut StdRng) -> Result<Elem> {
    let mut e = random_elem(x, m, rng)?;
    if e.is_zero() {
        let i = rng.gen_range(0..e.coords.len());
        e.coords.set(i, true);
    }
    Ok(e)
}

/// `d_K(u/1)` by the expansion loop against the `Γ` formula on `samples`
/// random nonzero classes `u` in gradings inflated from the kernel.
pub fn two_route_suite(x: &Expander, window: &Window, samples: usize, top: i64, seed: u64) -> Result<SuiteReport> {
    let b = x.backend().as_ref();
    let mut report = SuiteReport::new("dk-two-routes", &b.name());
    let mut candidates = Vec::new();
    for group in window.groups() {
        let split = Split::of(group)?;
        for m in window.gradings(group) {
            if split.is_inflated(&m)? && b.dim(&m)? > 0 {
                candidates.push(m);
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::window("inflated gradings with nonzero classes", "a wider --k or --v-size range"));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let m = &candidates[rng.gen_range(0..candidates.len())];
        let u = random_nonzero(b, m, &mut rng)?;
        let r = x.d_k_two_routes(&u, top)?;
        report.checked += 1;
        if !r.agree {
            report.fail(format!("{} in {m}: routes differ at θ^{:?}", r.input, r.first_difference));
        }
    }
    Ok(report)
}

/// Effectivity by preimage search against effectivity by integrality of
/// `d_K` for every nonzero class `x/a_V` of `gradings` sampled components.
/// Components with more than `max_classes` nonzero classes are sampled.
pub fn detection_suite(
    x: &Expander,
    window: &Window,
    gradings: usize,
    max_classes: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let b = x.backend().as_ref();
    let mut report = SuiteReport::new("detection", &b.name());
    let mut candidates = Vec::new();
    for group in window.groups() {
        for m in window.gradings(group) {
            if b.dim(&m)? > 0 {
                candidates.push(m);
            }
        }
    }
    if candidates.len() < gradings {
        return Err(Error::window(
            format!("{gradings} gradings with nonzero classes"),
            "a wider --k or --v-size range",
        ));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    candidates.shuffle(&mut rng);
    let (mut effective, mut not_effective) = (0usize, 0usize);
    for m in candidates.into_iter().take(gradings) {
        let group = m.group();
        let phi = x.localizations().phi(group);
        let dim = b.dim(&m)?;
        let classes: Vec<Elem> = if dim < usize::BITS as usize && (1usize << dim) <= max_classes + 1 {
            (1..1usize << dim)
                .map(|v| Elem::new(m.clone(), BitVec::from_bools(&(0..dim).map(|i| v >> i & 1 == 1).collect::<Vec<_>>())))
                .collect()
        } else {
            (0..max_classes).map(|_| random_nonzero(b, &m, &mut rng)).collect::<Result<_>>()?
        };
        for u in classes {
            let y = phi.localize(&u)?;
            report.checked += 1;
            match x.is_effective(group, &y, Route::Both)?.verdict() {
                Ok(true) => effective += 1,
                Ok(false) => not_effective += 1,
                Err(e) => report.fail(format!("{} / a_V in {m}: {e}", backend::render(b, &u))),
            }
        }
    }
    if report.passed && (effective == 0 || not_effective == 0) {
        report.fail(format!("degenerate sample: {effective} effective, {not_effective} not effective"));
    }
    Ok(report)
}

/// The relabeled Bredon copy used to exercise [`check_iso_in_window`].
#[must_use]
pub fn relabeled_bredon() -> Backend {
    Arc::new(BredonBackend::new(GeneratorOrder::ThomFirst))
}

/// `F2[x_λ : λ ∈ A°]` modulo `Σ_{λ∈T} Π_{μ∈T∖λ} x_μ` for every circuit `T`,
/// with `x_λ` of degree one.
pub fn bredon_phi_presentation(group: Group) -> Result<PresentedAlgebra> {
    let chars = enumerate_characters(group);
    let n = chars.len();
    let index: HashMap<Character, usize> = chars.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let gens = chars
        .iter()
        .map(|c| Generator { name: format!("x[{}]", c.to_bitstring()), degree: vec![1] })
        .collect();
    let mut relations = Vec::new();
    for circuit in circuits(&chars)? {
        let mut r = Poly::zero();
        for lambda in &circuit {
            let mut m = Mono::one(n);
            for mu in circuit.iter().filter(|mu| *mu != lambda) {
                m.0[index[mu]] += 1;
            }
            r.add_mono(m);
        }
        relations.push(r);
    }
    PresentedAlgebra::new(format!("Phi^{} Bredon", group.rank), gens, vec![1], relations, None)
}

/// Dimensions of the closed form and of the colimit, and whether
/// `x_λ ↦ t_λ/a_λ` is bijective in each degree.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormReport {
    pub rank: usize,
    pub closed_form_dims: Vec<usize>,
    pub colimit_dims: Vec<usize>,
    pub iso: bool,
}

pub fn check_bredon_phi_closed_form(phi: &ColimitRing, max_degree: i64) -> Result<ClosedFormReport> {
    let group = phi.group();
    let closed = bredon_phi_presentation(group)?;
    let x = phi.backend().as_ref();
    let images = enumerate_characters(group)
        .into_iter()
        .map(|c| phi.localize(&t_class(x, c)?))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ClosedFormReport { rank: group.rank, closed_form_dims: vec![], colimit_dims: vec![], iso: true };
    for d in 0..=max_degree {
        let comp = closed.component(&[d])?;
        let dim = phi.dim(d)?;
        report.closed_form_dims.push(comp.dim());
        report.colimit_dims.push(dim);
        let mut cols = Vec::new();
        for mono in comp.basis_monomials() {
            let mut v = phi.one()?;
            for (g, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    v = phi.mul(&v, &images[g])?;
                }
            }
            cols.push(v.coords);
        }
        let m = F2Matrix::from_columns(dim, &cols);
        if m.cols() != dim || m.rank() != dim {
            report.iso = false;
        }
    }
    for r in closed.relations() {
        let mut sum = crate::ring::zero(phi, r.leading().map_or(0, |m| i64::from(m.total())))?;
        for mono in r.terms() {
            let mut v = phi.one()?;
            for (g, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    v = phi.mul(&v, &images[g])?;
                }
            }
            sum = sum.add(&v)?;
        }
        if !sum.is_zero() {
            report.iso = false;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::borel_backend;
    use crate::localization::{Inverted, Localizations};

    fn small() -> Window {
        Window::new(2, -2..=3, 0..=3)
    }

    #[test]
    fn bredon_exactness_examples() {
        let b = BredonBackend::default();
        let c = Group::new(1);
        let sigma = Character::coordinate(c, 0);
        let m = RepGrading::new(c, 1, &[sigma]).unwrap();
        let r = check_exactness(&b, sigma, &m).unwrap();
        assert!(r.exact);
        assert_eq!(r.dims, [1, 1, 0]);
        let c2 = Group::new(2);
        let [p1, p2, mu] = enumerate_characters(c2)[..] else { unreachable!() };
        let m = RepGrading::new(c2, 1, &[p1, p2]).unwrap();
        let r = check_exactness(&b, mu, &m).unwrap();
        assert!(r.exact);
        assert_eq!(r.dims[1], r.dims[0] + r.dims[2]);
    }

    #[test]
    fn additivity_and_invertibility() {
        let bredon = BredonBackend::default();
        let borel = borel_backend();
        assert!(check_additive(&bredon).unwrap());
        assert!(check_additive(&borel).unwrap());
        assert!(!check_invertible(&bredon, &small()).unwrap().passed);
        assert!(check_invertible(&borel, &small()).unwrap().passed);
    }

    #[test]
    fn generation_and_axioms() {
        let bredon = BredonBackend::default();
        let borel = borel_backend();
        for x in [&bredon as &dyn AlgebraBackend, &borel] {
            assert!(check_generation(x, &small()).unwrap().passed);
            assert!(check_restriction_surjective(x, &small()).unwrap().passed);
            let r = check_backend_axioms(x, &small(), 20, 7).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn morphism_to_borel() {
        let f = BredonMorphism::new(Arc::new(borel_backend()), 3).unwrap();
        let c = Group::new(1);
        let sigma = Character::coordinate(c, 0);
        let b = f.source();
        let at = b.mul(&a_class(b, sigma).unwrap(), &t_class(b, sigma).unwrap()).unwrap();
        let image = f.apply(&at).unwrap();
        assert_eq!(image.grading.to_string(), at.grading.to_string());
        assert_eq!(f.target().basis_labels(&image.grading).unwrap(), vec!["u1*t^2".to_string()]);
        assert_eq!(image.coords, BitVec::unit(1, 0));
    }

    #[test]
    fn relabeled_copy_is_isomorphic() {
        let f = BredonMorphism::new(relabeled_bredon(), 3).unwrap();
        let r = check_iso_in_window(&f, &small()).unwrap();
        assert!(r.integer_iso && r.all_iso, "{r:?}");
    }

    #[test]
    fn closed_form_rank_two() {
        let locs = Localizations::new(Arc::new(BredonBackend::default()));
        let r = check_bredon_phi_closed_form(&locs.get(Group::new(2), Inverted::PreEuler), 6).unwrap();
        assert!(r.iso, "{r:?}");
        assert_eq!(r.colimit_dims, vec![1, 3, 5, 7, 9, 11, 13]);
    }

    #[test]
    fn divisibility_needs_the_character_in_the_grading() {
        let b = BredonBackend::default();
        let c2 = Group::new(2);
        let [p1, p2, mu] = enumerate_characters(c2)[..] else { unreachable!() };
        let x = b
            .mul(&a_class(&b, p1).unwrap(), &t_class(&b, p2).unwrap())
            .unwrap()
            .add(&b.mul(&a_class(&b, p2).unwrap(), &t_class(&b, p1).unwrap()).unwrap())
            .unwrap();
        assert!(!x.is_zero());
        let a_mu = a_class(&b, mu).unwrap();
        assert!(divisible(&b, &b.mul(&x, &t_class(&b, mu).unwrap()).unwrap(), &a_mu).unwrap());
        assert!(!divisible(&b, &x, &a_mu).unwrap());
    }

    #[test]
    fn coprime() {
        let r = check_coprime_divisibility(&BredonBackend::default(), &Window::new(2, 0..=3, 0..=3), 2).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn inverse_thom_torsor() {
        let law = crate::fgl::universal_2torsion(6).unwrap();
        let x = law.backend().unwrap();
        let ts = inverse_thom_classes(&x, 8).unwrap();
        assert!(ts.len() > 1);
        for t in ts {
            WithThom::new(Arc::new(law.backend().unwrap()), t).unwrap();
        }
        assert_eq!(inverse_thom_classes(&BredonBackend::default(), 8).unwrap().len(), 1);
    }

    #[test]
    fn sampled_two_routes_and_detection() {
        let x = Expander::new(Arc::new(BredonBackend::default()));
        let w = Window::default();
        let r = two_route_suite(&x, &w, 20, 4, 7).unwrap();
        assert!(r.passed && r.checked == 20, "{r:?}");
        let d = detection_suite(&x, &w, 30, 16, 7).unwrap();
        assert!(d.passed, "{d:?}");
        let borel = Expander::new(Arc::new(crate::fgl::borel_backend()));
        assert!(two_route_suite(&borel, &w, 20, 4, 7).unwrap().passed);
    }
}
