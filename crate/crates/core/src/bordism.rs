//! Algebraic models of unoriented equivariant bordism at rank at most one,
//! the Conner–Floyd and Firsching comparisons for arbitrary backends, and
//! the cohomology of the groups `G_n`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::backend::{self, t_rep};
use crate::error::{Error, Result};
use crate::expansions::{THETA, XI};
use crate::fgl::{universal_2torsion, UniversalLaw};
use crate::group::{enumerate_characters, kernel_inclusion, Character, Group, GroupHom, RepGrading};
use crate::linalg::{BitVec, F2Matrix};
use crate::localization::Localizations;
use crate::poly::Mono;
use crate::ring::{self, regular_window_check, GradedRing, PolynomialExtension, Ring, RingElem};
use crate::series::Series;

/// Extra truncation needed beyond the degree of a reconstruction.
pub const SAFETY_MARGIN: i64 = 2;

/// `N_*` as the ring of the universal 2-torsion law, `Φ^C N = N[β_0, β_1, ...]`
/// and the expansion `d_1` of every `β_n`.
pub struct BordismModel {
    trunc: u32,
    law: UniversalLaw,
    base: Ring,
    phi: Arc<PolynomialExtension>,
    d1_betas: Vec<Series>,
}

impl fmt::Debug for BordismModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BordismModel(trunc {})", self.trunc)
    }
}

impl BordismModel {
    /// Solve `F(θ, ξ) · Σ d_1(β_n) ξ^n = 1` over `N⟨θ⟩[[ξ]]`.
    pub fn build(trunc: u32) -> Result<Self> {
        let law = universal_2torsion(trunc)?;
        if !law.fgl.is_exact() {
            return Err(Error::Truncation("the truncated universal law is not exact".into()));
        }
        let base: Ring = law.ring.clone();
        let count = trunc as usize;
        let vars = (0..count).map(|n| (format!("β{n}"), n as i64 + 1)).collect();
        let phi = Arc::new(PolynomialExtension::new(base.clone(), vars)?);

        let names = [THETA, XI];
        let mut f = Series::zero(base.clone(), &names, &[0, 1], -1, None);
        for (i, j) in law.fgl.nonzero_coefficients() {
            f.set_coeff(&[i64::from(i), i64::from(j)], law.fgl.coefficient(i, j)?.coords.clone());
        }
        let inverse = f.inverse(Some(i64::from(trunc)))?;
        let mut d1_betas: Vec<Series> = (0..count)
            .map(|n| Series::zero(base.clone(), &[THETA], &[1], n as i64 + 1, None))
            .collect();
        for (e, c) in inverse.terms() {
            if let Some(s) = usize::try_from(e[1]).ok().and_then(|n| d1_betas.get_mut(n)) {
                s.set_coeff(&[e[0]], c.coords);
            }
        }
        Ok(BordismModel { trunc, law, base, phi, d1_betas })
    }

    #[must_use]
    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    #[must_use]
    pub fn law(&self) -> &UniversalLaw {
        &self.law
    }

    /// `N_*`.
    #[must_use]
    pub fn base(&self) -> &Ring {
        &self.base
    }

    /// `Φ^C N`.
    #[must_use]
    pub fn phi(&self) -> &Arc<PolynomialExtension> {
        &self.phi
    }

    /// Number of `β` generators in the model.
    #[must_use]
    pub fn num_betas(&self) -> usize {
        self.d1_betas.len()
    }

    pub fn beta(&self, n: usize) -> Result<RingElem> {
        if n >= self.num_betas() {
            return Err(self.too_short(format!("β_{n}")));
        }
        self.phi.var(n)
    }

    /// `d_1(β_n)` as a Laurent series in `θ` over `N`.
    pub fn d1_beta(&self, n: usize) -> Result<&Series> {
        self.d1_betas.get(n).ok_or_else(|| self.too_short(format!("d_1(β_{n})")))
    }

    fn too_short(&self, what: String) -> Error {
        Error::window(format!("{what} at model truncation {}", self.trunc), format!("--trunc {}", self.trunc + 1))
    }

    /// The `N`-algebra map `d_1: Φ^C N → N⟨θ⟩`.
    pub fn d1(&self, y: &RingElem) -> Result<Series> {
        let mut out = Series::zero(self.base.clone(), &[THETA], &[1], y.degree, None);
        let mut powers: HashMap<(usize, u16), Series> = HashMap::new();
        for (mono, coeff) in self.phi.terms(y)? {
            let mut term = Series::monomial(self.base.clone(), &[THETA], &[1], &[0], &coeff, None);
            for (v, &e) in mono.0.iter().enumerate().filter(|(_, e)| **e > 0) {
                let p = match powers.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = self.d1_betas[v].pow(u32::from(e))?;
                        powers.insert((v, e), p.clone());
                        p
                    }
                };
                term = term.mul(&p)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Whether `y` is effective, i.e. `d_1(y)` has no negative powers of `θ`.
    pub fn is_effective(&self, y: &RingElem) -> Result<bool> {
        Ok(self.d1(y)?.is_integral())
    }

    fn check_margin(&self, k: i64) -> Result<()> {
        if k + SAFETY_MARGIN > i64::from(self.trunc) {
            return Err(Error::Truncation(format!(
                "degree {k} needs model truncation at least {}, have {}",
                k + SAFETY_MARGIN,
                self.trunc
            )));
        }
        Ok(())
    }

    /// Basis of `N(C)_k ⊆ Φ^C_k N`: the solutions of "the coefficients of
    /// `θ^-1, ..., θ^(-k-1)` in `d_1(y)` vanish".
    pub fn reconstruct_nc(&self, k: i64) -> Result<Vec<RingElem>> {
        self.check_margin(k)?;
        let dim = self.phi.dim(k)?;
        let mut rows_per_column = Vec::with_capacity(dim);
        for i in 0..dim {
            let d1 = self.d1(&ring::basis_element(self.phi.as_ref(), k, i)?)?;
            let mut coords = BitVec::zeros(0);
            for m in -k - 1..=-1 {
                let c = d1.coeff(&[m])?;
                coords = coords.concat(&c.coords);
            }
            rows_per_column.push(coords);
        }
        let height = rows_per_column.first().map_or(0, BitVec::len);
        let m = F2Matrix::from_columns(height, &rows_per_column);
        Ok(m.kernel().into_iter().map(|v| RingElem::new(k, v)).collect())
    }

    /// `ζ_n = β_n + β_0 β_{n-1}` for `1 <= n <= n_max`.
    pub fn zeta_classes(&self, n_max: usize) -> Result<Vec<RingElem>> {
        (1..=n_max)
            .map(|n| {
                let prod = self.phi.mul(&self.beta(0)?, &self.beta(n - 1)?)?;
                self.beta(n)?.add(&prod)
            })
            .collect()
    }

    pub fn render(&self, y: &RingElem) -> String {
        ring::render(self.phi.as_ref(), y)
    }
}

/// `1` or `Γ^n(ζ_{i_1} ... ζ_{i_r})`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlexanderSymbol {
    pub gamma: u32,
    /// Nondecreasing indices `i ≥ 1`.
    pub zetas: Vec<u32>,
}

impl AlexanderSymbol {
    #[must_use]
    pub fn degree(&self) -> i64 {
        i64::from(self.gamma) + self.zetas.iter().map(|&i| i64::from(i) + 1).sum::<i64>()
    }
}

impl fmt::Display for AlexanderSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zetas.is_empty() {
            return write!(f, "1");
        }
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &i in &self.zetas {
            *counts.entry(i).or_default() += 1;
        }
        let mono: String = counts
            .iter()
            .map(|(i, e)| if *e == 1 { format!("ζ{i}") } else { format!("ζ{i}^{e}") })
            .collect();
        match self.gamma {
            0 => write!(f, "{mono}"),
            1 => write!(f, "Γ({mono})"),
            n => write!(f, "Γ^{n}({mono})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AlexanderBasis {
    pub symbols: Vec<AlexanderSymbol>,
    /// `dim N(C)_k = Σ_b dim N_{k - deg b}` for `k = 0..=k_max`.
    pub predicted: Vec<usize>,
}

/// Partitions of `total` into parts `≥ 2`, as nondecreasing `ζ` indices.
fn zeta_monomials(total: i64, min_part: i64, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if total == 0 {
        out.push(cur.clone());
        return;
    }
    for part in min_part..=total {
        cur.push(u32::try_from(part - 1).expect("small part"));
        zeta_monomials(total - part, part, out, cur);
        cur.pop();
    }
}

/// The predicted `N_*`-basis of `N(C)_*` through degree `k_max`.
pub fn alexander_basis(base: &dyn GradedRing, k_max: i64) -> Result<AlexanderBasis> {
    let mut symbols = vec![AlexanderSymbol { gamma: 0, zetas: Vec::new() }];
    for total in 2..=k_max {
        let mut monos = Vec::new();
        zeta_monomials(total, 2, &mut monos, &mut Vec::new());
        for zetas in monos {
            for gamma in 0..=u32::try_from(k_max - total).unwrap_or(0) {
                symbols.push(AlexanderSymbol { gamma, zetas: zetas.clone() });
            }
        }
    }
    symbols.sort_by_key(|s| (s.degree(), s.clone()));
    let mut predicted = Vec::new();
    for k in 0..=k_max {
        let mut dim = 0;
        for s in &symbols {
            dim += base.dim(k - s.degree())?;
        }
        predicted.push(dim);
    }
    Ok(AlexanderBasis { symbols, predicted })
}

/// One degree of a Conner–Floyd comparison.
#[derive(Clone, Debug)]
pub struct ConnerFloydRow {
    pub degree: i64,
    pub phi_dim: usize,
    pub effective_rank: usize,
    pub cokernel_count: usize,
    pub total_rank: usize,
}

impl ConnerFloydRow {
    #[must_use]
    pub fn ok(&self) -> bool {
        self.total_rank == self.phi_dim && self.total_rank == self.effective_rank + self.cokernel_count
    }
}

#[derive(Clone, Debug)]
pub struct ConnerFloydReport {
    pub backend: String,
    pub rows: Vec<ConnerFloydRow>,
}

impl ConnerFloydReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ConnerFloydRow::ok)
    }

    #[must_use]
    pub fn to_json(&self) -> Value {
        json!({
            "backend": self.backend,
            "passed": self.passed(),
            "rows": self.rows.iter().map(|r| json!({
                "degree": r.degree,
                "phi_dim": r.phi_dim,
                "effective_rank": r.effective_rank,
                "cokernel_count": r.cokernel_count,
                "total_rank": r.total_rank,
                "ok": r.ok(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn row_from_vectors(degree: i64, phi_dim: usize, effective: Vec<BitVec>, cokernel: Vec<BitVec>) -> ConnerFloydRow {
    let effective_rank = F2Matrix::from_columns(phi_dim, &effective).rank();
    let cokernel_count = cokernel.len();
    let all: Vec<BitVec> = effective.into_iter().chain(cokernel).collect();
    let total_rank = F2Matrix::from_columns(phi_dim, &all).rank();
    ConnerFloydRow { degree, phi_dim, effective_rank, cokernel_count, total_rank }
}

/// Check `Φ^C_k X = (image of X(C)_k) ⊕ X(1)·{(t/a)^n : n ≥ 1}` with the
/// second summand free.
pub fn conner_floyd_cokernel(locs: &Localizations, degrees: RangeInclusive<i64>) -> Result<ConnerFloydReport> {
    let b = locs.backend().as_ref();
    let c = Group::new(1);
    let phi = locs.phi(c);
    let lower = b.integer_bounds(Group::trivial()).lower.ok_or_else(|| {
        Error::window("Conner–Floyd comparison over an X(1) unbounded below", "a connective backend")
    })?;
    let sigma = Character::new(c, 1)?;
    let t = backend::t_class(b, sigma)?;
    let inflate = GroupHom::to_trivial(c);
    let mut rows = Vec::new();
    for k in degrees {
        let phi_dim = phi.dim(k)?;
        let grading = RepGrading::integer(c, k);
        let effective = (0..b.dim(&grading)?)
            .map(|i| Ok(phi.from_integer(&backend::basis_element(b, &grading, i)?)?.coords))
            .collect::<Result<Vec<_>>>()?;
        let mut cokernel = Vec::new();
        let mut t_power = t.clone();
        for n in 1..=(k - lower) {
            let base_grading = RepGrading::integer(Group::trivial(), k - n);
            for i in 0..b.dim(&base_grading)? {
                let x = b.restrict(&inflate, &backend::basis_element(b, &base_grading, i)?)?;
                cokernel.push(phi.localize(&b.mul(&x, &t_power)?)?.coords);
            }
            t_power = b.mul(&t_power, &t)?;
        }
        rows.push(row_from_vectors(k, phi_dim, effective, cokernel));
    }
    Ok(ConnerFloydReport { backend: b.name(), rows })
}

/// The same comparison in the bordism model, with the effective part from
/// [`BordismModel::reconstruct_nc`] and `β_0 = t/a`.
pub fn conner_floyd_model(model: &BordismModel, degrees: RangeInclusive<i64>) -> Result<ConnerFloydReport> {
    let phi = model.phi();
    let base = model.base();
    let mut rows = Vec::new();
    for k in degrees {
        let effective = model.reconstruct_nc(k)?.into_iter().map(|y| y.coords).collect();
        let mut cokernel = Vec::new();
        for n in 1..=k {
            let mono = Mono({
                let mut e = vec![0u16; phi.num_vars()];
                e[0] = u16::try_from(n).expect("small power");
                e
            });
            for i in 0..base.dim(k - n)? {
                let coeff = ring::basis_element(base.as_ref(), k - n, i)?;
                cokernel.push(phi.monomial_times(&mono, &coeff)?.coords);
            }
        }
        rows.push(row_from_vectors(k, phi.dim(k)?, effective, cokernel));
    }
    Ok(ConnerFloydReport { backend: "bordism-model".into(), rows })
}

/// One degree of the Firsching square.
#[derive(Clone, Debug)]
pub struct FirschingRow {
    pub degree: i64,
    pub integer_dim: usize,
    pub fiber_dim: usize,
    pub lands_in_fiber: bool,
    pub injective: bool,
    pub image_rank: usize,
}

impl FirschingRow {
    #[must_use]
    pub fn ok(&self) -> bool {
        self.lands_in_fiber && self.injective && self.image_rank == self.fiber_dim
    }
}

#[derive(Clone, Debug)]
pub struct FirschingReport {
    pub backend: String,
    pub rank: usize,
    pub rows: Vec<FirschingRow>,
}

impl FirschingReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.rows.iter().all(FirschingRow::ok)
    }

    #[must_use]
    pub fn to_json(&self) -> Value {
        json!({
            "backend": self.backend,
            "rank": self.rank,
            "passed": self.passed(),
            "rows": self.rows.iter().map(|r| json!({
                "degree": r.degree,
                "integer_dim": r.integer_dim,
                "fiber_dim": r.fiber_dim,
                "lands_in_fiber": r.lands_in_fiber,
                "injective": r.injective,
                "image_rank": r.image_rank,
                "ok": r.ok(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Regularity of every `x_μ` in `Φ^K X` for one index two subgroup `K`.
pub fn firsching_hypothesis(locs: &Localizations, group: Group, degrees: RangeInclusive<i64>) -> Result<bool> {
    let Some(lambda) = enumerate_characters(group).into_iter().find(|c| !c.is_trivial()) else {
        return Ok(true);
    };
    let sub = kernel_inclusion(&lambda)?.source();
    let phi = locs.phi(sub);
    let b = locs.backend().as_ref();
    for mu in enumerate_characters(sub).into_iter().filter(|c| !c.is_trivial()) {
        let x = phi.localize(&backend::t_class(b, mu)?)?;
        if !regular_window_check(phi.as_ref(), &x, degrees.clone())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of extra powers of `x` tried before the fiber product is declared stable.
const FIBER_STAGES: u32 = 8;

/// Check that `X(A)_k` is the fiber product of `Φ^A_k X` and `(t^-1 X)(A)_k`
/// over `(Φ^A X)[x_λ^-1]`.  The regularity hypothesis is verified first
/// and its failure is an error.
pub fn firsching_check(locs: &Localizations, group: Group, degrees: RangeInclusive<i64>) -> Result<FirschingReport> {
    if !firsching_hypothesis(locs, group, degrees.clone())? {
        return Err(Error::Hypothesis(format!(
            "some x_μ is a zero divisor in Φ^K X for an index two subgroup of rank {}",
            group.rank
        )));
    }
    let b = locs.backend().as_ref();
    let phi = locs.phi(group);
    let tinv = locs.t_inv(group);
    let r = i64::try_from(group.num_nontrivial()).expect("small group");
    let rho: BTreeMap<Character, u32> =
        enumerate_characters(group).into_iter().filter(|c| !c.is_trivial()).map(|c| (c, 1)).collect();
    let x = phi.localize(&t_rep(b, group, &rho)?)?;
    let mut x_powers = vec![phi.one()?];
    let mut rows = Vec::new();
    for k in degrees {
        let p = phi.dim(k)?;
        let q = tinv.dim(k)?;
        let n0 = tinv.stable_stage(k)?;
        let bottom: Vec<RingElem> = (0..q)
            .map(|j| phi.localize(&tinv.lift(&ring::basis_element(tinv.as_ref(), k, j)?)?))
            .collect::<Result<_>>()?;
        let mut previous: Option<usize> = None;
        let mut kernel = Vec::new();
        let mut map = F2Matrix::zeros(0, p + q);
        for big_n in n0..=n0 + FIBER_STAGES {
            while x_powers.len() <= big_n as usize {
                let last = x_powers.last().expect("nonempty").clone();
                x_powers.push(phi.mul(&last, &x)?);
            }
            let height = phi.dim(k + i64::from(big_n) * r)?;
            let mut columns = Vec::with_capacity(p + q);
            for i in 0..p {
                let y = ring::basis_element(phi.as_ref(), k, i)?;
                columns.push(phi.mul(&y, &x_powers[big_n as usize])?.coords);
            }
            for z in &bottom {
                columns.push(phi.mul(z, &x_powers[(big_n - n0) as usize])?.coords);
            }
            map = F2Matrix::from_columns(height, &columns);
            kernel = map.kernel();
            if previous == Some(kernel.len()) {
                break;
            }
            previous = Some(kernel.len());
        }
        let grading = RepGrading::integer(group, k);
        let integer_dim = b.dim(&grading)?;
        let images: Vec<BitVec> = (0..integer_dim)
            .map(|i| {
                let u = backend::basis_element(b, &grading, i)?;
                Ok(phi.from_integer(&u)?.coords.concat(&tinv.from_integer(&u)?.coords))
            })
            .collect::<Result<_>>()?;
        let lands_in_fiber = images.iter().all(|v| map.mul_vec(v).is_zero());
        let image_rank = F2Matrix::from_columns(p + q, &images).rank();
        rows.push(FirschingRow {
            degree: k,
            integer_dim,
            fiber_dim: kernel.len(),
            lands_in_fiber,
            injective: image_rank == integer_dim,
            image_rank,
        });
    }
    Ok(FirschingReport { backend: b.name(), rank: group.rank, rows })
}

/// `H^*(G_n; F2) = F2[p_1, ..., p_n] / (p_1^2, p_i^2 - p_{i-1} p_i)`.
///
/// Monomials are exponent vectors; square-free ones are bit masks with bit
/// `i - 1` standing for `p_i`.
#[derive(Clone, Debug)]
pub struct GnCohomology {
    n: usize,
}

/// An F2-linear combination of square-free monomials.
pub type GnElement = BTreeSet<u64>;

impl GnCohomology {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=63).contains(&n) {
            return Err(Error::Hypothesis(format!("G_n needs 1 <= n <= 63, got {n}")));
        }
        Ok(GnCohomology { n })
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Square-free monomials of degree `k`.
    #[must_use]
    pub fn basis(&self, k: u32) -> Vec<u64> {
        (0..1u64 << self.n).filter(|m| m.count_ones() == k).collect()
    }

    #[must_use]
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.n as u32).map(|k| self.basis(k).len()).collect()
    }

    /// Rewriting steps available at an exponent vector.
    fn redexes(e: &[u32]) -> impl Iterator<Item = usize> + '_ {
        e.iter().enumerate().filter(|(_, x)| **x >= 2).map(|(i, _)| i)
    }

    /// Apply the rule at index `i`; `None` is the zero class.
    fn step(e: &[u32], i: usize) -> Option<Vec<u32>> {
        if i == 0 {
            return None;
        }
        let mut out = e.to_vec();
        out[i] -= 1;
        out[i - 1] += 1;
        Some(out)
    }

    /// Normal form of a monomial by always rewriting the highest square.
    #[must_use]
    pub fn reduce(&self, e: &[u32]) -> Option<u64> {
        let mut cur = e.to_vec();
        while let Some(i) = Self::redexes(&cur).last() {
            cur = Self::step(&cur, i)?;
        }
        Some(cur.iter().enumerate().filter(|(_, x)| **x == 1).fold(0, |m, (i, _)| m | 1 << i))
    }

    fn exponents(&self, mask: u64) -> Vec<u32> {
        (0..self.n).map(|i| u32::from(mask >> i & 1 == 1)).collect()
    }

    #[must_use]
    pub fn product(&self, x: &GnElement, y: &GnElement) -> GnElement {
        let mut out = GnElement::new();
        for &a in x {
            for &b in y {
                let e: Vec<u32> = self.exponents(a).iter().zip(self.exponents(b)).map(|(p, q)| p + q).collect();
                if let Some(m) = self.reduce(&e) {
                    if !out.insert(m) {
                        out.remove(&m);
                    }
                }
            }
        }
        out
    }

    #[must_use]
    pub fn generator(&self, i: usize) -> GnElement {
        GnElement::from([1u64 << (i - 1)])
    }

    #[must_use]
    pub fn power(&self, x: &GnElement, k: u32) -> GnElement {
        (0..k).fold(GnElement::from([0]), |acc, _| self.product(&acc, x))
    }

    /// All normal forms reachable from `e` over every rewriting order.
    fn all_normal_forms(e: &[u32], memo: &mut HashMap<Vec<u32>, BTreeSet<Option<Vec<u32>>>>) -> BTreeSet<Option<Vec<u32>>> {
        if let Some(r) = memo.get(e) {
            return r.clone();
        }
        let redexes: Vec<usize> = Self::redexes(e).collect();
        let out = if redexes.is_empty() {
            BTreeSet::from([Some(e.to_vec())])
        } else {
            let mut acc = BTreeSet::new();
            for i in redexes {
                match Self::step(e, i) {
                    None => {
                        acc.insert(None);
                    }
                    Some(next) => acc.extend(Self::all_normal_forms(&next, memo)),
                }
            }
            acc
        };
        memo.insert(e.to_vec(), out.clone());
        out
    }

    /// Every product of two basis monomials has a single normal form over
    /// all rewriting orders.
    #[must_use]
    pub fn is_confluent(&self) -> bool {
        let mut memo = HashMap::new();
        let masks = 0..1u64 << self.n;
        masks.clone().all(|a| {
            masks.clone().all(|b| {
                let e: Vec<u32> = self.exponents(a).iter().zip(self.exponents(b)).map(|(p, q)| p + q).collect();
                Self::all_normal_forms(&e, &mut memo).len() == 1
            })
        })
    }

    #[must_use]
    pub fn render(&self, x: &GnElement) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter()
            .map(|&m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..self.n).filter(|i| m >> i & 1 == 1).map(|i| format!("p{}", i + 1)).collect::<Vec<_>>().join("*")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::BredonBackend;
    use crate::fgl::borel_backend;

    fn model() -> BordismModel {
        BordismModel::build(8).unwrap()
    }

    #[test]
    fn d1_betas_have_the_right_leading_terms() {
        let m = model();
        for n in 0..m.num_betas() {
            let s = m.d1_beta(n).unwrap();
            assert_eq!(s.degree(), n as i64 + 1);
            assert_eq!(s.lowest_exponent(0), Some(-(n as i64) - 1));
            assert_eq!(s.coeff(&[-(n as i64) - 1]).unwrap(), m.base().one().unwrap());
        }
    }

    #[test]
    fn reconstruction_matches_alexander() {
        let m = model();
        let dims: Vec<usize> = (0..=6).map(|k| m.reconstruct_nc(k).unwrap().len()).collect();
        assert_eq!(&dims[..3], &[1, 0, 2]);
        let alex = alexander_basis(m.base().as_ref(), 6).unwrap();
        assert_eq!(dims, alex.predicted);
        assert!(m.reconstruct_nc(7).is_err());
    }

    #[test]
    fn zetas_are_effective_and_betas_are_not() {
        let m = model();
        for z in m.zeta_classes(4).unwrap() {
            assert!(m.is_effective(&z).unwrap(), "{}", m.render(&z));
        }
        for n in 0..=4 {
            assert!(!m.is_effective(&m.beta(n).unwrap()).unwrap());
        }
    }

    #[test]
    fn low_alexander_symbols() {
        let m = model();
        let alex = alexander_basis(m.base().as_ref(), 2).unwrap();
        let names: Vec<String> = alex.symbols.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["1", "ζ1"]);
        assert_eq!(alex.predicted[2], 2);
        let g = AlexanderSymbol { gamma: 2, zetas: vec![1, 1, 3] };
        assert_eq!(g.to_string(), "Γ^2(ζ1^2ζ3)");
        assert_eq!(g.degree(), 2 + 2 + 2 + 4);
    }

    #[test]
    fn conner_floyd_holds() {
        let bredon = Localizations::new(Arc::new(BredonBackend::default()));
        assert!(conner_floyd_cokernel(&bredon, -4..=5).unwrap().passed());
        let borel = Localizations::new(Arc::new(borel_backend()));
        assert!(conner_floyd_cokernel(&borel, -4..=5).unwrap().passed());
        assert!(conner_floyd_model(&model(), 0..=5).unwrap().passed());
    }

    #[test]
    fn firsching_pullbacks() {
        let bredon = Localizations::new(Arc::new(BredonBackend::default()));
        for rank in 1..=2 {
            let r = firsching_check(&bredon, Group::new(rank), -3..=3).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let borel = Localizations::new(Arc::new(borel_backend()));
        assert!(firsching_check(&borel, Group::new(1), -3..=3).unwrap().passed());
    }

    #[test]
    fn gn_cohomology() {
        let g1 = GnCohomology::new(1).unwrap();
        let p1 = g1.generator(1);
        assert!(g1.product(&p1, &p1).is_empty());
        let g2 = GnCohomology::new(2).unwrap();
        assert_eq!(g2.dims(), [1, 2, 1]);
        assert_eq!(g2.render(&g2.power(&g2.generator(2), 2)), "p1*p2");
        for n in 1..=6 {
            let g = GnCohomology::new(n).unwrap();
            assert_eq!(g.power(&g.generator(n), n as u32), GnElement::from([(1u64 << n) - 1]));
            assert!(g.is_confluent());
        }
    }
}
