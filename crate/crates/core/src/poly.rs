//! Sparse polynomials over F2 in a fixed number of variables.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// An exponent vector, ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    #[must_use]
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    #[must_use]
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Mono::one(nvars);
        m.0[i] = 1;
        m
    }

    #[must_use]
    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    #[must_use]
    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    #[must_use]
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Mono)
    }

    #[must_use]
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Render with the given variable names, `1` for the empty product.
    #[must_use]
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A polynomial with F2 coefficients: the set of its monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeSet<Mono>,
}

impl Poly {
    #[must_use]
    pub fn zero() -> Self {
        Poly::default()
    }

    #[must_use]
    pub fn mono(m: Mono) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Poly { terms }
    }

    #[must_use]
    pub fn one(nvars: usize) -> Self {
        Poly::mono(Mono::one(nvars))
    }

    #[must_use]
    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::mono(Mono::var(nvars, i))
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Mono> {
        self.terms.iter()
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial in the degree-lex order.
    #[must_use]
    pub fn leading(&self) -> Option<&Mono> {
        self.terms.iter().next_back()
    }

    pub fn add_mono(&mut self, m: Mono) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for m in &other.terms {
            self.add_mono(m.clone());
        }
    }

    #[must_use]
    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    #[must_use]
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.add_mono(a.mul(b));
            }
        }
        out
    }

    #[must_use]
    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|a| a.mul(m)).collect() }
    }

    #[must_use]
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms.iter().rev().map(|m| m.render(names)).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.terms.iter()).finish()
    }
}

impl FromIterator<Mono> for Poly {
    fn from_iter<I: IntoIterator<Item = Mono>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for m in iter {
            p.add_mono(m);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_order() {
        let a = Mono(vec![2, 0]);
        let b = Mono(vec![1, 1]);
        let c = Mono(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn frobenius() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq, x.mul(&x).add(&y.mul(&y)));
    }
}
