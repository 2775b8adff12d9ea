//! The integer-graded localizations of a backend at a group `A`: geometric
//! fixed points `Φ^A X` (inverting every `a_λ`) and `t^{-1}X(A)` (inverting
//! every `t_λ`), computed as colimits along multiplication by `a_{A°}`
//! respectively `t_{A°}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::backend::{self, a_rep, t_rep, Backend, Elem, GlobalGroupLaw};
use crate::error::{Error, Result};
use crate::group::{enumerate_characters, Character, Group, GroupHom, RepGrading};
use crate::linalg::{BitVec, LinearSolver};
use crate::ring::{DegreeBounds, GradedRing, Ring, RingElem};

/// Default bound on colimit stages.
pub const DEFAULT_MAX_STAGE: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Inverted {
    /// Invert the pre-Euler classes: geometric fixed points.
    PreEuler,
    /// Invert the inverse Thom classes.
    InverseThom,
}

/// One of the two localizations of `X(A, ⋆)`, restricted to integer degrees.
///
/// Degree `d` is represented at a stable stage `N(d)`: an element is a
/// fraction `x / s^N` with `s = a_{A°}` or `t_{A°}` and `x` in the component
/// of the stage grading.
pub struct ColimitRing {
    backend: Backend,
    group: Group,
    kind: Inverted,
    max_stage: u32,
    characters: Vec<Character>,
    stages: RwLock<HashMap<i64, u32>>,
    powers: RwLock<HashMap<u32, Elem>>,
    solvers: RwLock<HashMap<(i64, u32), Arc<LinearSolver>>>,
}

impl ColimitRing {
    #[must_use]
    pub fn new(backend: Backend, group: Group, kind: Inverted) -> Self {
        ColimitRing::with_max_stage(backend, group, kind, DEFAULT_MAX_STAGE)
    }

    #[must_use]
    pub fn with_max_stage(backend: Backend, group: Group, kind: Inverted, max_stage: u32) -> Self {
        ColimitRing {
            backend,
            group,
            kind,
            max_stage,
            characters: enumerate_characters(group),
            stages: RwLock::new(HashMap::new()),
            powers: RwLock::new(HashMap::new()),
            solvers: RwLock::new(HashMap::new()),
        }
    }

    #[must_use]
    pub fn group(&self) -> Group {
        self.group
    }

    #[must_use]
    pub fn kind(&self) -> Inverted {
        self.kind
    }

    #[must_use]
    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    fn all_chars(&self, n: u32) -> BTreeMap<Character, u32> {
        self.characters.iter().map(|c| (*c, n)).collect()
    }

    /// The grading of stage `n` in degree `d`.
    #[must_use]
    pub fn stage_grading(&self, d: i64, n: u32) -> RepGrading {
        let size = i64::from(n) * self.characters.len() as i64;
        let k = match self.kind {
            Inverted::PreEuler => d,
            Inverted::InverseThom => d + size,
        };
        RepGrading::from_multiplicities(self.group, k, self.all_chars(n)).expect("characters of the group")
    }

    /// `s^n` for the inverted product class `s`.
    fn power(&self, n: u32) -> Result<Elem> {
        if let Some(p) = self.powers.read().expect("cache lock").get(&n) {
            return Ok(p.clone());
        }
        let v = self.all_chars(n);
        let p = match self.kind {
            Inverted::PreEuler => a_rep(self.backend.as_ref(), self.group, &v)?,
            Inverted::InverseThom => t_rep(self.backend.as_ref(), self.group, &v)?,
        };
        self.powers.write().expect("cache lock").insert(n, p.clone());
        Ok(p)
    }

    fn first_stage(&self, d: i64) -> u32 {
        if self.characters.is_empty() {
            return 0;
        }
        let start = match self.kind {
            Inverted::PreEuler => d.max(0),
            Inverted::InverseThom => (-d).max(0),
        };
        u32::try_from(start).unwrap_or(u32::MAX)
    }

    /// Stage from which the colimit system is constant in degree `d`: two
    /// consecutive equal dimensions joined by an injective transition.
    pub fn stable_stage(&self, d: i64) -> Result<u32> {
        if let Some(&n) = self.stages.read().expect("cache lock").get(&d) {
            return Ok(n);
        }
        let start = self.first_stage(d);
        if self.characters.is_empty() {
            self.stages.write().expect("cache lock").insert(d, 0);
            return Ok(0);
        }
        if start > self.max_stage {
            return Err(Error::NotStable { degree: d, stage: self.max_stage });
        }
        let s = self.power(1)?;
        let mut n = start;
        let mut dim = self.backend.dim(&self.stage_grading(d, n))?;
        while n < self.max_stage {
            let next = self.backend.dim(&self.stage_grading(d, n + 1))?;
            if next == dim {
                let m = backend::mul_matrix(self.backend.as_ref(), &s, &self.stage_grading(d, n))?;
                if m.rank() == dim {
                    self.stages.write().expect("cache lock").insert(d, n);
                    return Ok(n);
                }
            }
            n += 1;
            dim = next;
        }
        Err(Error::NotStable { degree: d, stage: self.max_stage })
    }

    fn solver(&self, d: i64, j: u32) -> Result<Arc<LinearSolver>> {
        if let Some(s) = self.solvers.read().expect("cache lock").get(&(d, j)) {
            return Ok(s.clone());
        }
        let n = self.stable_stage(d)?;
        let m = backend::mul_matrix(self.backend.as_ref(), &self.power(j)?, &self.stage_grading(d, n))?;
        let s = Arc::new(LinearSolver::new(&m));
        self.solvers.write().expect("cache lock").insert((d, j), s.clone());
        Ok(s)
    }

    /// Bring a stage element `x` (grading `stage_grading(d, n)`) to the
    /// stable stage of `d`.
    fn normalize(&self, d: i64, n: u32, x: &Elem) -> Result<RingElem> {
        let target = self.stable_stage(d)?;
        let coords = if n <= target {
            if n == target {
                x.coords.clone()
            } else {
                self.backend.mul(x, &self.power(target - n)?)?.coords
            }
        } else {
            self.solver(d, n - target)?
                .solve(&x.coords)
                .ok_or(Error::NotStable { degree: d, stage: n })?
        };
        Ok(RingElem { degree: d, coords })
    }

    /// Integer degree of the fraction with numerator `x`.
    #[must_use]
    pub fn fraction_degree(&self, x: &Elem) -> i64 {
        match self.kind {
            Inverted::PreEuler => x.grading.k,
            Inverted::InverseThom => x.grading.total(),
        }
    }

    /// The fraction `x / a_V` (or `x / t_V`) where `x ∈ X(A, d - V)`
    /// (respectively `X(A, d + |V| - V)`).
    pub fn localize(&self, x: &Elem) -> Result<RingElem> {
        if x.group() != self.group {
            return Err(Error::GroupMismatch("localizing a class of another group".into()));
        }
        let d = self.fraction_degree(x);
        let top = x.grading.rep().values().copied().max().unwrap_or(0);
        let missing: BTreeMap<Character, u32> = self
            .characters
            .iter()
            .map(|c| (*c, top - x.grading.multiplicity(c)))
            .filter(|(_, m)| *m > 0)
            .collect();
        let lifted = if missing.is_empty() {
            x.clone()
        } else {
            let fill = match self.kind {
                Inverted::PreEuler => a_rep(self.backend.as_ref(), self.group, &missing)?,
                Inverted::InverseThom => t_rep(self.backend.as_ref(), self.group, &missing)?,
            };
            self.backend.mul(x, &fill)?
        };
        debug_assert_eq!(lifted.grading, self.stage_grading(d, top));
        self.normalize(d, top, &lifted)
    }

    /// A numerator for `y`: `x` with `y = x / s^N` at the stable stage.
    pub fn lift(&self, y: &RingElem) -> Result<Elem> {
        let n = self.stable_stage(y.degree)?;
        Ok(Elem { grading: self.stage_grading(y.degree, n), coords: y.coords.clone() })
    }

    /// Numerator at any stage `n` at or beyond the stable one.
    pub fn lift_to_stage(&self, y: &RingElem, n: u32) -> Result<Elem> {
        let x = self.lift(y)?;
        let base = self.stable_stage(y.degree)?;
        if n < base {
            return Err(Error::NotStable { degree: y.degree, stage: n });
        }
        if n == base {
            return Ok(x);
        }
        self.backend.mul(&x, &self.power(n - base)?)
    }

    /// The map `X(A)_d → Φ^A_d`, `x ↦ x/1`.
    pub fn from_integer(&self, x: &Elem) -> Result<RingElem> {
        if !x.grading.is_integer() {
            return Err(Error::DegreeMismatch(format!("{} is not an integer grading", x.grading)));
        }
        self.localize(x)
    }

    /// Map along `alpha: B -> A` into the localization `target` at `B`,
    /// by `x / s_V ↦ α*(x) / s_{α*V}`.  For pre-Euler classes this is only
    /// meaningful for epimorphisms.
    pub fn map_along(&self, alpha: &GroupHom, target: &ColimitRing, y: &RingElem) -> Result<RingElem> {
        if self.kind == Inverted::PreEuler && !alpha.is_surjective() {
            return Err(Error::Hypothesis("geometric fixed points only inflate along epimorphisms".into()));
        }
        let x = self.lift(y)?;
        let pulled = self.backend.restrict(alpha, &x)?;
        target.localize(&pulled)
    }

    /// Elements `x` of `X(A)_d` with `x / 1 = y`; `None` if `y` is not of
    /// this form.
    pub fn integer_preimage(&self, y: &RingElem) -> Result<Option<Elem>> {
        let d = y.degree;
        let n = self.stable_stage(d)?;
        let source = RepGrading::integer(self.group, d);
        if self.backend.dim(&source)? == 0 {
            return Ok(if y.is_zero() { Some(backend::zero(self.backend.as_ref(), &source)?) } else { None });
        }
        let m = backend::mul_matrix(self.backend.as_ref(), &self.power(n)?, &source)?;
        Ok(LinearSolver::new(&m).solve(&y.coords).map(|coords| Elem { grading: source, coords }))
    }
}

impl GradedRing for ColimitRing {
    fn name(&self) -> String {
        if self.characters.is_empty() {
            return format!("{}(1)", self.backend.name());
        }
        let prefix = match self.kind {
            Inverted::PreEuler => "Phi",
            Inverted::InverseThom => "t^-1",
        };
        format!("{prefix}^{} {}", self.group.rank, self.backend.name())
    }

    fn dim(&self, degree: i64) -> Result<usize> {
        let n = self.stable_stage(degree)?;
        self.backend.dim(&self.stage_grading(degree, n))
    }

    fn basis_labels(&self, degree: i64) -> Result<Vec<String>> {
        let n = self.stable_stage(degree)?;
        let labels = self.backend.basis_labels(&self.stage_grading(degree, n))?;
        if n == 0 {
            return Ok(labels);
        }
        let s = match self.kind {
            Inverted::PreEuler => "a",
            Inverted::InverseThom => "t",
        };
        let denom = if self.characters.len() == 1 {
            format!("{s}^{n}")
        } else {
            format!("({s}_all)^{n}")
        };
        Ok(labels.into_iter().map(|l| format!("{l}/{denom}")).collect())
    }

    fn bounds(&self) -> DegreeBounds {
        if self.characters.is_empty() {
            self.backend.integer_bounds(self.group)
        } else {
            DegreeBounds { lower: None, upper: None }
        }
    }

    fn mul_basis(&self, d1: i64, i: usize, d2: i64, j: usize) -> Result<BitVec> {
        let x = RingElem { degree: d1, coords: BitVec::unit(self.dim(d1)?, i) };
        let y = RingElem { degree: d2, coords: BitVec::unit(self.dim(d2)?, j) };
        Ok(self.mul(&x, &y)?.coords)
    }

    fn mul(&self, x: &RingElem, y: &RingElem) -> Result<RingElem> {
        let n1 = self.stable_stage(x.degree)?;
        let n2 = self.stable_stage(y.degree)?;
        let p = self.backend.mul(&self.lift(x)?, &self.lift(y)?)?;
        self.normalize(x.degree + y.degree, n1 + n2, &p)
    }

    fn one(&self) -> Result<RingElem> {
        self.localize(&self.backend.one(self.group)?)
    }
}

/// Cached localizations of one backend at every rank.
pub struct Localizations {
    backend: Backend,
    max_stage: u32,
    rings: RwLock<HashMap<(usize, Inverted), Arc<ColimitRing>>>,
}

impl Localizations {
    #[must_use]
    pub fn new(backend: Backend) -> Self {
        Localizations::with_max_stage(backend, DEFAULT_MAX_STAGE)
    }

    #[must_use]
    pub fn with_max_stage(backend: Backend, max_stage: u32) -> Self {
        Localizations { backend, max_stage, rings: RwLock::new(HashMap::new()) }
    }

    #[must_use]
    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    /// Both localizations at the trivial group are `X(1)` itself and share
    /// one ring object, so series built by different routes compare.
    pub fn get(&self, group: Group, kind: Inverted) -> Arc<ColimitRing> {
        let kind = if group.rank == 0 { Inverted::PreEuler } else { kind };
        let key = (group.rank, kind);
        if let Some(r) = self.rings.read().expect("cache lock").get(&key) {
            return r.clone();
        }
        let r = Arc::new(ColimitRing::with_max_stage(self.backend.clone(), group, kind, self.max_stage));
        self.rings.write().expect("cache lock").entry(key).or_insert(r).clone()
    }

    /// `Φ^A X`.
    pub fn phi(&self, group: Group) -> Arc<ColimitRing> {
        self.get(group, Inverted::PreEuler)
    }

    /// `t^{-1}X(A)`.
    pub fn t_inv(&self, group: Group) -> Arc<ColimitRing> {
        self.get(group, Inverted::InverseThom)
    }

    /// `X(1)` as a ring.
    pub fn base(&self) -> Arc<ColimitRing> {
        self.get(Group::trivial(), Inverted::PreEuler)
    }
}

/// The global group law `t^{-1}X` with coordinate `e = a/t`.
pub struct TLocalization {
    locs: Arc<Localizations>,
}

impl TLocalization {
    #[must_use]
    pub fn new(locs: Arc<Localizations>) -> Self {
        TLocalization { locs }
    }

    #[must_use]
    pub fn localizations(&self) -> &Arc<Localizations> {
        &self.locs
    }

    pub fn colimit(&self, group: Group) -> Arc<ColimitRing> {
        self.locs.t_inv(group)
    }
}

impl GlobalGroupLaw for TLocalization {
    fn name(&self) -> String {
        format!("t^-1 {}", self.locs.backend.name())
    }

    fn ring(&self, group: Group) -> Result<Ring> {
        Ok(self.locs.t_inv(group))
    }

    fn restrict(&self, alpha: &GroupHom, x: &RingElem) -> Result<RingElem> {
        let src = self.locs.t_inv(alpha.target());
        let dst = self.locs.t_inv(alpha.source());
        src.map_along(alpha, &dst, x)
    }

    fn coordinate(&self, lambda: Character) -> Result<RingElem> {
        let group = lambda.group();
        let r = self.locs.t_inv(group);
        if lambda.is_trivial() {
            return crate::ring::zero(r.as_ref(), -1);
        }
        r.localize(&backend::a_class(self.locs.backend.as_ref(), lambda)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::BredonBackend;
    use crate::fgl::borel_backend;

    #[test]
    fn bredon_phi_rank_one_is_polynomial() {
        let b: Backend = Arc::new(BredonBackend::default());
        let phi = ColimitRing::new(b, Group::new(1), Inverted::PreEuler);
        for d in -3..6 {
            assert_eq!(phi.dim(d).unwrap(), usize::from(d >= 0), "degree {d}");
        }
    }

    #[test]
    fn bredon_t_localization_is_polynomial() {
        let b: Backend = Arc::new(BredonBackend::default());
        for rank in 1..=2usize {
            let r = ColimitRing::new(b.clone(), Group::new(rank), Inverted::InverseThom);
            for d in -4..=2i64 {
                let expect = if d > 0 {
                    0
                } else {
                    crate::ring::weighted_monomials(&vec![1; rank], -d).len()
                };
                assert_eq!(r.dim(d).unwrap(), expect, "rank {rank} degree {d}");
            }
        }
    }

    #[test]
    fn borel_phi_rank_one_is_laurent() {
        let b: Backend = Arc::new(borel_backend());
        let phi = ColimitRing::new(b, Group::new(1), Inverted::PreEuler);
        for d in -4..5 {
            assert_eq!(phi.dim(d).unwrap(), 1);
        }
        let a = backend::a_class(phi.backend().as_ref(), Character::coordinate(Group::new(1), 0)).unwrap();
        let one = phi.one().unwrap();
        let e = phi.from_integer(&phi.backend().restrict(&GroupHom::identity(Group::new(1)), &one_elem(&phi)).unwrap()).unwrap();
        assert_eq!(e, one);
        assert!(!a.is_zero());
    }

    fn one_elem(phi: &ColimitRing) -> Elem {
        phi.backend().one(phi.group()).unwrap()
    }

    #[test]
    fn borel_phi_rank_two_does_not_stabilize() {
        let b: Backend = Arc::new(borel_backend());
        let phi = ColimitRing::with_max_stage(b, Group::new(2), Inverted::PreEuler, 6);
        assert!(matches!(phi.dim(0), Err(Error::NotStable { .. })));
    }
}
