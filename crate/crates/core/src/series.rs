//! Truncated Laurent and power series in up to a few degree `-1` variables
//! over an integer-graded ring.
//!
//! A series is homogeneous of some degree `d`; the coefficient of the
//! monomial with exponents `e` lives in ring degree `d + Σ e`.  Precision is
//! measured by a linear weight on exponents: every coefficient of weight
//! below `trunc` is known exactly, nothing at or above it is stored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::BitVec;
use crate::ring::{same_ring, Ring, RingElem};

#[derive(Clone)]
pub struct Series {
    ring: Ring,
    names: Vec<String>,
    weights: Vec<i64>,
    degree: i64,
    terms: BTreeMap<Vec<i64>, BitVec>,
    trunc: Option<i64>,
}

impl std::fmt::Debug for Series {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Series {
    pub fn zero(ring: Ring, names: &[&str], weights: &[i64], degree: i64, trunc: Option<i64>) -> Self {
        assert_eq!(names.len(), weights.len());
        Series {
            ring,
            names: names.iter().map(|s| (*s).to_string()).collect(),
            weights: weights.to_vec(),
            degree,
            terms: BTreeMap::new(),
            trunc,
        }
    }

    /// A zero series shaped like `self` in the given degree.
    #[must_use]
    pub fn zero_like(&self, degree: i64, trunc: Option<i64>) -> Self {
        Series {
            ring: self.ring.clone(),
            names: self.names.clone(),
            weights: self.weights.clone(),
            degree,
            terms: BTreeMap::new(),
            trunc,
        }
    }

    /// `c·x^e` with `c` a homogeneous ring element.
    pub fn monomial(
        ring: Ring,
        names: &[&str],
        weights: &[i64],
        exponents: &[i64],
        coeff: &RingElem,
        trunc: Option<i64>,
    ) -> Self {
        let degree = coeff.degree - exponents.iter().sum::<i64>();
        let mut s = Series::zero(ring, names, weights, degree, trunc);
        s.set_coeff(exponents, coeff.coords.clone());
        s
    }

    pub fn one(ring: Ring, names: &[&str], weights: &[i64], trunc: Option<i64>) -> Result<Self> {
        let one = ring.one()?;
        let e = vec![0; names.len()];
        Ok(Series::monomial(ring, names, weights, &e, &one, trunc))
    }

    /// The variable with index `i`.
    pub fn variable(ring: Ring, names: &[&str], weights: &[i64], i: usize, trunc: Option<i64>) -> Result<Self> {
        let one = ring.one()?;
        let mut e = vec![0; names.len()];
        e[i] = 1;
        Ok(Series::monomial(ring, names, weights, &e, &one, trunc))
    }

    #[must_use]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[must_use]
    pub fn degree(&self) -> i64 {
        self.degree
    }

    #[must_use]
    pub fn trunc(&self) -> Option<i64> {
        self.trunc
    }

    #[must_use]
    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    #[must_use]
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    #[must_use]
    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[must_use]
    pub fn weight(&self, e: &[i64]) -> i64 {
        e.iter().zip(&self.weights).map(|(a, b)| a * b).sum()
    }

    /// Ring degree of the coefficient at `e`.
    #[must_use]
    pub fn coeff_degree(&self, e: &[i64]) -> i64 {
        self.degree + e.iter().sum::<i64>()
    }

    /// Nonzero terms with their exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, RingElem)> + '_ {
        self.terms
            .iter()
            .map(|(e, c)| (e, RingElem { degree: self.coeff_degree(e), coords: c.clone() }))
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient at `e`, or an error if it lies beyond the truncation.
    pub fn coeff(&self, e: &[i64]) -> Result<RingElem> {
        if self.trunc.is_some_and(|t| self.weight(e) >= t) {
            return Err(Error::Truncation(format!("coefficient {e:?} beyond weight {:?}", self.trunc)));
        }
        let degree = self.coeff_degree(e);
        Ok(match self.terms.get(e) {
            Some(c) => RingElem { degree, coords: c.clone() },
            None => RingElem { degree, coords: BitVec::zeros(self.ring.dim(degree)?) },
        })
    }

    /// Overwrite the coefficient at `e` (coordinates in the ring basis).
    pub fn set_coeff(&mut self, e: &[i64], coords: BitVec) {
        if self.trunc.is_some_and(|t| self.weight(e) >= t) || coords.is_zero() {
            self.terms.remove(e);
        } else {
            self.terms.insert(e.to_vec(), coords);
        }
    }

    fn add_coeff(&mut self, e: Vec<i64>, coords: &BitVec) {
        if coords.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(c) => {
                c.xor_assign(coords);
                if c.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, coords.clone());
            }
        }
    }

    /// Lowest weight at which `self` may be nonzero.
    fn low(&self) -> Option<i64> {
        min_opt(self.terms.keys().map(|e| self.weight(e)).min(), self.trunc)
    }

    fn check_compatible(&self, other: &Series) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch(format!(
                "series over {} and {}",
                self.ring.name(),
                other.ring.name()
            )));
        }
        if self.weights != other.weights || self.names != other.names {
            return Err(Error::RingMismatch("series in different variables".into()));
        }
        Ok(())
    }

    /// Drop everything of weight `>= t`.
    #[must_use]
    pub fn truncate(&self, t: Option<i64>) -> Series {
        let trunc = min_opt(self.trunc, t);
        let mut out = self.clone();
        out.trunc = trunc;
        if let Some(t) = trunc {
            let w = self.weights.clone();
            out.terms.retain(|e, _| e.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>() < t);
        }
        out
    }

    /// Declare every coefficient beyond the stored ones to be zero.
    #[must_use]
    pub fn into_exact(mut self) -> Series {
        self.trunc = None;
        self
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch(format!(
                "adding series of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.truncate(other.trunc);
        if self.is_zero() {
            out.degree = other.degree;
        }
        for (e, c) in &other.terms {
            if out.trunc.is_none_or(|t| self.weight(e) < t) {
                out.add_coeff(e.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let a = self.trunc.and_then(|t| other.low().map(|l| t + l));
        let b = other.trunc.and_then(|t| self.low().map(|l| t + l));
        let a = if self.trunc.is_some() && other.low().is_none() { None } else { a };
        let b = if other.trunc.is_some() && self.low().is_none() { None } else { b };
        let trunc = min_opt(a, b);
        let mut out = self.zero_like(self.degree + other.degree, trunc);
        for (e1, c1) in &self.terms {
            let d1 = self.coeff_degree(e1);
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                if trunc.is_some_and(|t| self.weight(&e) >= t) {
                    continue;
                }
                let d2 = other.coeff_degree(e2);
                if self.ring.dim(d1 + d2)? == 0 {
                    continue;
                }
                let p = self.ring.mul(
                    &RingElem { degree: d1, coords: c1.clone() },
                    &RingElem { degree: d2, coords: c2.clone() },
                )?;
                out.add_coeff(e, &p.coords);
            }
        }
        Ok(out)
    }

    /// Multiply by a homogeneous ring element.
    pub fn scale(&self, c: &RingElem) -> Result<Series> {
        let mut out = self.zero_like(self.degree + c.degree, self.trunc);
        for (e, x) in &self.terms {
            let d = self.coeff_degree(e);
            let p = self.ring.mul(&RingElem { degree: d, coords: x.clone() }, c)?;
            out.add_coeff(e.clone(), &p.coords);
        }
        Ok(out)
    }

    /// Multiply by the monomial `x^shift`.
    #[must_use]
    pub fn shift(&self, shift: &[i64]) -> Series {
        let ws = self.weight(shift);
        let mut out = self.zero_like(self.degree - shift.iter().sum::<i64>(), self.trunc.map(|t| t + ws));
        for (e, c) in &self.terms {
            let e: Vec<i64> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            out.terms.insert(e, c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Result<Series> {
        let mut out = Series::one(self.ring.clone(), &self.name_refs(), &self.weights, None)?;
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    fn name_refs(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    /// Multiplicative inverse.  The terms of lowest weight must consist of a
    /// single monomial with coefficient one.  `limit` caps the precision of
    /// the result and is required when `self` is exact.
    pub fn inverse(&self, limit: Option<i64>) -> Result<Series> {
        let w0 = self
            .terms
            .keys()
            .map(|e| self.weight(e))
            .min()
            .ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let lead: Vec<&Vec<i64>> = self.terms.keys().filter(|e| self.weight(e) == w0).collect();
        if lead.len() != 1 {
            return Err(Error::NotInvertible(format!(
                "{} terms of lowest weight in {}",
                lead.len(),
                self.render()
            )));
        }
        let e0 = lead[0].clone();
        let one = self.ring.one()?;
        if self.coeff_degree(&e0) != 0 || self.terms[&e0] != one.coords {
            return Err(Error::NotInvertible(format!("leading coefficient of {}", self.render())));
        }
        let neg: Vec<i64> = e0.iter().map(|x| -x).collect();
        // self = x^e0 (1 + r)
        let mut r = self.shift(&neg);
        r.terms.remove(&vec![0; self.num_vars()]);
        let cap = min_opt(limit.map(|l| l + w0), r.trunc);
        let Some(cap) = cap else {
            return Err(Error::Truncation("inverse of an exact series needs a precision limit".into()));
        };
        let r = r.truncate(Some(cap));
        let mut sum = Series::one(self.ring.clone(), &self.name_refs(), &self.weights, Some(cap))?;
        let mut power = sum.clone();
        loop {
            power = power.mul(&r)?.truncate(Some(cap));
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
        }
        Ok(sum.shift(&neg))
    }

    /// `Σ f_n g^n` for a univariate power series `f` of weight one and a
    /// series `g` of degree `-1` over the same ring.
    pub fn substitute(f: &Series, g: &Series) -> Result<Series> {
        if f.num_vars() != 1 || f.weights[0] != 1 {
            return Err(Error::RingMismatch("substitution needs a univariate series of weight one".into()));
        }
        if !same_ring(&f.ring, &g.ring) {
            return Err(Error::RingMismatch("substitution across rings".into()));
        }
        if g.degree != -1 && !g.is_zero() {
            return Err(Error::DegreeMismatch("substituted series must have degree -1".into()));
        }
        if f.terms.keys().any(|e| e[0] < 0) {
            return Err(Error::Truncation("substitution into a Laurent series".into()));
        }
        let low_g = g.low();
        let mut trunc = g.trunc;
        if let Some(tf) = f.trunc {
            match low_g {
                Some(l) if l >= 1 => trunc = min_opt(trunc, Some(tf * l)),
                Some(_) => {
                    return Err(Error::Truncation(
                        "substituting a series without positive weight into a truncated one".into(),
                    ))
                }
                None => {}
            }
        }
        let top = f.terms.keys().map(|e| e[0]).max().unwrap_or(0);
        let mut out = g.zero_like(f.degree, trunc);
        let mut power = Series::one(g.ring.clone(), &g.name_refs(), &g.weights, trunc)?;
        for n in 0..=top {
            if n > 0 {
                power = power.mul(g)?.truncate(trunc);
            }
            if let Some(c) = f.terms.get(&vec![n]) {
                let fc = RingElem { degree: f.coeff_degree(&[n]), coords: c.clone() };
                let term = power.scale(&fc)?;
                out = out.add(&term.truncate(trunc))?;
            }
            if power.is_zero() && power.trunc.is_some() {
                break;
            }
        }
        Ok(out)
    }

    /// Apply a degree-preserving map to every coefficient.
    pub fn map_coeffs(
        &self,
        target: Ring,
        map: &dyn Fn(&RingElem) -> Result<RingElem>,
    ) -> Result<Series> {
        let mut out = Series {
            ring: target,
            names: self.names.clone(),
            weights: self.weights.clone(),
            degree: self.degree,
            terms: BTreeMap::new(),
            trunc: self.trunc,
        };
        for (e, c) in self.terms() {
            let img = map(&c)?;
            if img.degree != c.degree {
                return Err(Error::DegreeMismatch("coefficient map changed degree".into()));
            }
            out.add_coeff(e.clone(), &img.coords);
        }
        Ok(out)
    }

    /// Re-express in new variables: old variable `i` becomes `positions[i]`,
    /// then multiply by the monomial `shift` in the new variables.
    pub fn embed(
        &self,
        names: &[&str],
        weights: &[i64],
        positions: &[usize],
        shift: &[i64],
        trunc: Option<i64>,
    ) -> Result<Series> {
        if self.trunc.is_some() && trunc.is_none() {
            return Err(Error::Truncation("embedding a truncated series needs a new truncation".into()));
        }
        let mut out = Series::zero(self.ring.clone(), names, weights, self.degree - shift.iter().sum::<i64>(), trunc);
        for (e, c) in &self.terms {
            let mut ne = shift.to_vec();
            for (i, &p) in positions.iter().enumerate() {
                ne[p] += e[i];
            }
            if trunc.is_none_or(|t| out.weight(&ne) < t) {
                out.add_coeff(ne, c);
            }
        }
        Ok(out)
    }

    /// The first exponent (in weight order) where the two series differ,
    /// looking only below both truncations.
    pub fn first_difference(&self, other: &Series) -> Result<Option<Vec<i64>>> {
        let diff = self.add(other)?;
        Ok(diff
            .terms
            .keys()
            .min_by_key(|e| (diff.weight(e), (*e).clone()))
            .cloned())
    }

    /// Smallest exponent of variable `i` among the nonzero terms.
    #[must_use]
    pub fn lowest_exponent(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[i]).min()
    }

    /// No negative exponents in any variable.
    #[must_use]
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    #[must_use]
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return match self.trunc {
                Some(t) => format!("O(w^{t})"),
                None => "0".into(),
            };
        }
        let mut keys: Vec<&Vec<i64>> = self.terms.keys().collect();
        keys.sort_by_key(|e| (self.weight(e), (*e).clone()));
        let mut out = String::new();
        for (n, e) in keys.into_iter().enumerate() {
            if n > 0 {
                out.push_str(" + ");
            }
            let d = self.coeff_degree(e);
            let c = crate::ring::render(self.ring.as_ref(), &RingElem { degree: d, coords: self.terms[e].clone() });
            let mono: Vec<String> = e
                .iter()
                .zip(&self.names)
                .filter(|(x, _)| **x != 0)
                .map(|(x, name)| if *x == 1 { name.clone() } else { format!("{name}^{x}") })
                .collect();
            let coeff = if c.contains(" + ") { format!("({c})") } else { c };
            match (coeff.as_str(), mono.is_empty()) {
                (_, true) => out.push_str(&coeff),
                ("1", false) => out.push_str(&mono.join("*")),
                _ => {
                    let _ = write!(out, "{coeff}*{}", mono.join("*"));
                }
            }
        }
        if let Some(t) = self.trunc {
            let _ = write!(out, " + O(w^{t})");
        }
        out
    }

    /// Exponent to rendered coefficient, for reports.
    #[must_use]
    pub fn coefficient_labels(&self) -> BTreeMap<String, String> {
        self.terms()
            .map(|(e, c)| {
                let key = e.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
                (key, crate::ring::render(self.ring.as_ref(), &c))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::F2Ring;
    use std::sync::Arc;

    fn f2() -> Ring {
        Arc::new(F2Ring)
    }

    #[test]
    fn theta_times_inverse() {
        let r = f2();
        let th = Series::variable(r.clone(), &["θ"], &[1], 0, None).unwrap();
        let inv = th.inverse(Some(10)).unwrap();
        assert_eq!(inv.terms().count(), 1);
        let p = th.mul(&inv).unwrap();
        let one = Series::one(r, &["θ"], &[1], None).unwrap();
        assert!(p.first_difference(&one).unwrap().is_none());
    }

    #[test]
    fn geometric_inverse() {
        let r = f2();
        let names = ["θ", "ξ"];
        let w = [0, 1];
        let th = Series::variable(r.clone(), &names, &w, 0, None).unwrap();
        let xi = Series::variable(r.clone(), &names, &w, 1, None).unwrap();
        let f = th.add(&xi).unwrap();
        let inv = f.inverse(Some(5)).unwrap();
        for n in 0..5 {
            assert_eq!(inv.coeff(&[-1 - n, n]).unwrap().coords, BitVec::unit(1, 0));
        }
        assert_eq!(inv.terms().count(), 5);
        let one = Series::one(r, &names, &w, None).unwrap();
        assert!(f.mul(&inv).unwrap().first_difference(&one).unwrap().is_none());
    }

    #[test]
    fn frobenius_substitution() {
        let r = f2();
        let th = Series::variable(r.clone(), &["θ"], &[1], 0, None).unwrap();
        let sq = th.mul(&th).unwrap();
        let names = ["θ", "ξ"];
        let w = [1, 1];
        let g = Series::variable(r.clone(), &names, &w, 0, None)
            .unwrap()
            .add(&Series::variable(r.clone(), &names, &w, 1, None).unwrap())
            .unwrap();
        let s = Series::substitute(&sq, &g).unwrap();
        let expect = g.pow(2).unwrap();
        assert!(s.first_difference(&expect).unwrap().is_none());
        assert_eq!(s.terms().count(), 2);
    }
}
