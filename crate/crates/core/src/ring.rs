//! Integer-graded F2-algebras with finite-dimensional components.
//!
//! Every ring exposes a fixed basis in each degree; elements are coordinate
//! vectors in that basis, so equality of elements is equality of vectors.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::linalg::{BitVec, F2Matrix, LinearSolver};
use crate::poly::Mono;

/// A homogeneous element of a graded ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub degree: i64,
    pub coords: BitVec,
}

impl RingElem {
    #[must_use]
    pub fn new(degree: i64, coords: BitVec) -> Self {
        RingElem { degree, coords }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "adding degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(RingElem { degree: self.degree, coords: self.coords.xor(&other.coords) })
    }
}

/// Known range of degrees outside which every component vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBounds {
    pub lower: Option<i64>,
    pub upper: Option<i64>,
}

impl DegreeBounds {
    #[must_use]
    pub fn contains(&self, d: i64) -> bool {
        self.lower.is_none_or(|l| d >= l) && self.upper.is_none_or(|u| d <= u)
    }
}

/// A commutative integer-graded F2-algebra with chosen bases.
pub trait GradedRing: Send + Sync {
    fn name(&self) -> String;

    fn dim(&self, degree: i64) -> Result<usize>;

    fn basis_labels(&self, degree: i64) -> Result<Vec<String>>;

    fn bounds(&self) -> DegreeBounds;

    /// Product of the `i`-th basis element in degree `d1` with the `j`-th in `d2`.
    fn mul_basis(&self, d1: i64, i: usize, d2: i64, j: usize) -> Result<BitVec>;

    fn one(&self) -> Result<RingElem>;

    fn mul(&self, x: &RingElem, y: &RingElem) -> Result<RingElem> {
        let degree = x.degree + y.degree;
        let n = self.dim(degree)?;
        let mut out = BitVec::zeros(n);
        if n > 0 {
            for i in x.coords.ones() {
                for j in y.coords.ones() {
                    out.xor_assign(&self.mul_basis(x.degree, i, y.degree, j)?);
                }
            }
        }
        Ok(RingElem { degree, coords: out })
    }
}

pub type Ring = Arc<dyn GradedRing>;

/// Identity of ring objects.
#[must_use]
pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    std::ptr::eq(Arc::as_ptr(a).cast::<()>(), Arc::as_ptr(b).cast::<()>())
}

pub fn zero(ring: &dyn GradedRing, degree: i64) -> Result<RingElem> {
    Ok(RingElem { degree, coords: BitVec::zeros(ring.dim(degree)?) })
}

pub fn basis_element(ring: &dyn GradedRing, degree: i64, i: usize) -> Result<RingElem> {
    Ok(RingElem { degree, coords: BitVec::unit(ring.dim(degree)?, i) })
}

pub fn pow(ring: &dyn GradedRing, x: &RingElem, n: u32) -> Result<RingElem> {
    let mut out = ring.one()?;
    for _ in 0..n {
        out = ring.mul(&out, x)?;
    }
    Ok(out)
}

/// Matrix of `z ↦ y·z` from degree `source` to `source + deg y`.
pub fn mul_matrix(ring: &dyn GradedRing, y: &RingElem, source: i64) -> Result<F2Matrix> {
    let n = ring.dim(source)?;
    let target = ring.dim(source + y.degree)?;
    let cols = (0..n)
        .map(|i| ring.mul(y, &basis_element(ring, source, i)?).map(|p| p.coords))
        .collect::<Result<Vec<_>>>()?;
    Ok(F2Matrix::from_columns(target, &cols))
}

/// Some `z` with `y·z = x`.
pub fn divide(ring: &dyn GradedRing, x: &RingElem, y: &RingElem) -> Result<RingElem> {
    let degree = x.degree - y.degree;
    let m = mul_matrix(ring, y, degree)?;
    LinearSolver::new(&m)
        .solve(&x.coords)
        .map(|coords| RingElem { degree, coords })
        .ok_or_else(|| Error::DivisionFailed(format!("in {}", ring.name())))
}

/// Human-readable sum of basis labels.
pub fn render(ring: &dyn GradedRing, x: &RingElem) -> String {
    let Ok(labels) = ring.basis_labels(x.degree) else {
        return format!("{:?}", x.coords);
    };
    let terms: Vec<&str> = x.coords.ones().map(|i| labels[i].as_str()).collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Whether `y·-` is injective on every degree in `degrees`.
pub fn regular_window_check(
    ring: &dyn GradedRing,
    y: &RingElem,
    degrees: std::ops::RangeInclusive<i64>,
) -> Result<bool> {
    for d in degrees {
        let m = mul_matrix(ring, y, d)?;
        if m.rank() != m.cols() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The field F2 concentrated in degree 0.
#[derive(Debug, Default)]
pub struct F2Ring;

impl GradedRing for F2Ring {
    fn name(&self) -> String {
        "F2".into()
    }

    fn dim(&self, degree: i64) -> Result<usize> {
        Ok(usize::from(degree == 0))
    }

    fn basis_labels(&self, degree: i64) -> Result<Vec<String>> {
        Ok(if degree == 0 { vec!["1".into()] } else { vec![] })
    }

    fn bounds(&self) -> DegreeBounds {
        DegreeBounds { lower: Some(0), upper: Some(0) }
    }

    fn mul_basis(&self, _: i64, _: usize, _: i64, _: usize) -> Result<BitVec> {
        Ok(BitVec::unit(1, 0))
    }

    fn one(&self) -> Result<RingElem> {
        Ok(RingElem { degree: 0, coords: BitVec::unit(1, 0) })
    }
}

/// Exponent vectors with `Σ e_i·weights[i] = total`, all weights positive.
pub(crate) fn weighted_monomials(weights: &[i64], total: i64) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    if total < 0 {
        return out;
    }
    let mut cur = vec![0u16; weights.len()];
    fn rec(i: usize, left: i64, w: &[i64], cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = left / w[i];
        for e in 0..=max {
            cur[i] = e as u16;
            rec(i + 1, left - e * w[i], w, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, total, weights, &mut cur, &mut out);
    out
}

/// One degree of a [`PolynomialExtension`].
#[derive(Debug)]
struct ExtComponent {
    entries: Vec<(Mono, i64, usize)>,
    index: HashMap<(Mono, i64, usize), usize>,
}

/// `base[v_1, ..., v_r]` with all variable degrees nonzero and of one sign,
/// over a base ring concentrated in finitely many degrees.
pub struct PolynomialExtension {
    base: Ring,
    names: Vec<String>,
    degrees: Vec<i64>,
    cache: RwLock<HashMap<i64, Arc<ExtComponent>>>,
}

impl PolynomialExtension {
    pub fn new(base: Ring, vars: Vec<(String, i64)>) -> Result<Self> {
        let bounds = base.bounds();
        if bounds.lower.is_none() || bounds.upper.is_none() {
            return Err(Error::RingMismatch("polynomial extension needs a bounded base".into()));
        }
        let positive = vars.iter().all(|(_, d)| *d > 0);
        let negative = vars.iter().all(|(_, d)| *d < 0);
        if !(positive || negative) {
            return Err(Error::RingMismatch("variable degrees must share a sign".into()));
        }
        let (names, degrees) = vars.into_iter().unzip();
        Ok(PolynomialExtension { base, names, degrees, cache: RwLock::new(HashMap::new()) })
    }

    #[must_use]
    pub fn base(&self) -> &Ring {
        &self.base
    }

    #[must_use]
    pub fn num_vars(&self) -> usize {
        self.degrees.len()
    }

    fn component(&self, degree: i64) -> Result<Arc<ExtComponent>> {
        if let Some(c) = self.cache.read().expect("cache lock").get(&degree) {
            return Ok(c.clone());
        }
        let bounds = self.base.bounds();
        let (lo, hi) = (bounds.lower.unwrap_or(0), bounds.upper.unwrap_or(0));
        let sign = if self.degrees.first().is_some_and(|d| *d < 0) { -1 } else { 1 };
        let abs: Vec<i64> = self.degrees.iter().map(|d| d.abs()).collect();
        let mut entries = Vec::new();
        for base_deg in lo..=hi {
            let n = self.base.dim(base_deg)?;
            if n == 0 {
                continue;
            }
            let var_total = (degree - base_deg) * sign;
            let monos = if abs.is_empty() {
                if var_total == 0 { vec![vec![]] } else { vec![] }
            } else {
                weighted_monomials(&abs, var_total)
            };
            for m in monos {
                for b in 0..n {
                    entries.push((Mono(m.clone()), base_deg, b));
                }
            }
        }
        let index = entries.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let comp = Arc::new(ExtComponent { entries, index });
        self.cache.write().expect("cache lock").insert(degree, comp.clone());
        Ok(comp)
    }

    /// The element `b·mono` for a base element `b`.
    pub fn monomial_times(&self, mono: &Mono, b: &RingElem) -> Result<RingElem> {
        let var_deg: i64 = mono.0.iter().zip(&self.degrees).map(|(&e, &d)| i64::from(e) * d).sum();
        let degree = var_deg + b.degree;
        let comp = self.component(degree)?;
        let mut coords = BitVec::zeros(comp.entries.len());
        for i in b.coords.ones() {
            let idx = comp.index[&(mono.clone(), b.degree, i)];
            coords.set(idx, true);
        }
        Ok(RingElem { degree, coords })
    }

    /// Include a base element.
    pub fn from_base(&self, b: &RingElem) -> Result<RingElem> {
        self.monomial_times(&Mono::one(self.num_vars()), b)
    }

    /// The `i`-th variable.
    pub fn var(&self, i: usize) -> Result<RingElem> {
        self.monomial_times(&Mono::var(self.num_vars(), i), &self.base.one()?)
    }

    /// Decompose into `(monomial, base coefficient)` pairs.
    pub fn terms(&self, x: &RingElem) -> Result<Vec<(Mono, RingElem)>> {
        let comp = self.component(x.degree)?;
        let mut out: Vec<(Mono, RingElem)> = Vec::new();
        for i in x.coords.ones() {
            let (m, bd, b) = &comp.entries[i];
            if let Some((_, acc)) = out.iter_mut().find(|(mm, acc)| mm == m && acc.degree == *bd) {
                acc.coords.set(*b, true);
            } else {
                let mut coords = BitVec::zeros(self.base.dim(*bd)?);
                coords.set(*b, true);
                out.push((m.clone(), RingElem { degree: *bd, coords }));
            }
        }
        Ok(out)
    }

    /// Ring map determined by images of the variables, acting as `base_map` on the base.
    pub fn evaluate(
        &self,
        x: &RingElem,
        target: &dyn GradedRing,
        var_images: &[RingElem],
        base_map: &dyn Fn(&RingElem) -> Result<RingElem>,
    ) -> Result<RingElem> {
        let target_degree = x.degree;
        let mut out = zero(target, target_degree)?;
        let mut powers: HashMap<(usize, u16), RingElem> = HashMap::new();
        for (mono, coeff) in self.terms(x)? {
            let mut term = base_map(&coeff)?;
            for (v, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = match powers.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = pow(target, &var_images[v], u32::from(e))?;
                        powers.insert((v, e), p.clone());
                        p
                    }
                };
                term = target.mul(&term, &p)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

impl GradedRing for PolynomialExtension {
    fn name(&self) -> String {
        format!("{}[{}]", self.base.name(), self.names.join(","))
    }

    fn dim(&self, degree: i64) -> Result<usize> {
        Ok(self.component(degree)?.entries.len())
    }

    fn basis_labels(&self, degree: i64) -> Result<Vec<String>> {
        let comp = self.component(degree)?;
        let mut base_labels: HashMap<i64, Vec<String>> = HashMap::new();
        let mut out = Vec::with_capacity(comp.entries.len());
        for (m, bd, b) in &comp.entries {
            if !base_labels.contains_key(bd) {
                base_labels.insert(*bd, self.base.basis_labels(*bd)?);
            }
            let bl = &base_labels[bd][*b];
            let ml = m.render(&self.names);
            out.push(match (bl.as_str(), ml.as_str()) {
                (_, "1") => bl.clone(),
                ("1", _) => ml,
                _ => format!("{bl}*{ml}"),
            });
        }
        Ok(out)
    }

    fn bounds(&self) -> DegreeBounds {
        let b = self.base.bounds();
        if self.degrees.is_empty() {
            b
        } else if self.degrees[0] < 0 {
            DegreeBounds { lower: None, upper: b.upper }
        } else {
            DegreeBounds { lower: b.lower, upper: None }
        }
    }

    fn mul_basis(&self, d1: i64, i: usize, d2: i64, j: usize) -> Result<BitVec> {
        let c1 = self.component(d1)?;
        let c2 = self.component(d2)?;
        let out = self.component(d1 + d2)?;
        let (m1, b1, i1) = &c1.entries[i];
        let (m2, b2, i2) = &c2.entries[j];
        let m = m1.mul(m2);
        let prod = self.base.mul_basis(*b1, *i1, *b2, *i2)?;
        let mut coords = BitVec::zeros(out.entries.len());
        for k in prod.ones() {
            coords.set(out.index[&(m.clone(), b1 + b2, k)], true);
        }
        Ok(coords)
    }

    fn one(&self) -> Result<RingElem> {
        self.from_base(&self.base.one()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_dims() {
        let r = PolynomialExtension::new(
            Arc::new(F2Ring),
            vec![("u1".into(), -1), ("u2".into(), -1)],
        )
        .unwrap();
        assert_eq!(r.dim(0).unwrap(), 1);
        assert_eq!(r.dim(-2).unwrap(), 3);
        assert_eq!(r.dim(1).unwrap(), 0);
        let u1 = r.var(0).unwrap();
        let u2 = r.var(1).unwrap();
        let s = u1.add(&u2).unwrap();
        let sq = r.mul(&s, &s).unwrap();
        let expect = r.mul(&u1, &u1).unwrap().add(&r.mul(&u2, &u2).unwrap()).unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn regular_x_in_polynomial_ring() {
        let r = PolynomialExtension::new(Arc::new(F2Ring), vec![("x".into(), 1)]).unwrap();
        let x = r.var(0).unwrap();
        assert!(regular_window_check(&r, &x, 0..=8).unwrap());
    }
}
