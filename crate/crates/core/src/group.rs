//! Elementary abelian 2-groups, their characters and homomorphisms, the
//! grading monoid `k - V`, and circuits of character configurations.
//!
//! A group of rank `n` is `C^n`; elements and characters are bit vectors
//! packed into a `u64`, with bit `i` holding coordinate `i`.  Characters are
//! ordered by that integer value, so for rank 2 the nontrivial characters
//! come out as `p1 = 10`, `p2 = 01`, `mu = 11`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Largest rank accepted anywhere in the crate.
pub const MAX_RANK: usize = 16;

/// The group `C^rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Group {
    pub rank: usize,
}

impl Group {
    #[must_use]
    pub fn new(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        Group { rank }
    }

    #[must_use]
    pub fn trivial() -> Self {
        Group { rank: 0 }
    }

    /// Number of nontrivial characters, `2^rank - 1`.
    #[must_use]
    pub fn num_nontrivial(&self) -> usize {
        (1usize << self.rank) - 1
    }

    pub fn mask(&self) -> u64 {
        if self.rank == 64 {
            u64::MAX
        } else {
            (1u64 << self.rank) - 1
        }
    }
}

/// A homomorphism `A -> C`, stored as its dual vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    rank: u8,
    bits: u64,
}

impl Character {
    pub fn new(group: Group, bits: u64) -> Result<Self> {
        if bits & !group.mask() != 0 {
            return Err(Error::GroupMismatch(format!(
                "vector {bits:#b} does not fit rank {}",
                group.rank
            )));
        }
        Ok(Character { rank: group.rank as u8, bits })
    }

    /// The `i`-th coordinate projection.
    #[must_use]
    pub fn coordinate(group: Group, i: usize) -> Self {
        assert!(i < group.rank);
        Character { rank: group.rank as u8, bits: 1 << i }
    }

    #[must_use]
    pub fn trivial(group: Group) -> Self {
        Character { rank: group.rank as u8, bits: 0 }
    }

    #[must_use]
    pub fn group(&self) -> Group {
        Group { rank: self.rank as usize }
    }

    #[must_use]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[must_use]
    pub fn is_trivial(&self) -> bool {
        self.bits == 0
    }

    /// Value on a group element.
    #[must_use]
    pub fn eval(&self, element: u64) -> bool {
        (self.bits & element).count_ones() % 2 == 1
    }

    /// Pointwise sum of characters (the tensor product of the lines).
    #[must_use]
    pub fn plus(&self, other: &Character) -> Character {
        debug_assert_eq!(self.rank, other.rank);
        Character { rank: self.rank, bits: self.bits ^ other.bits }
    }

    /// Bit string with coordinate 0 first.
    #[must_use]
    pub fn to_bitstring(&self) -> String {
        (0..self.rank as usize)
            .map(|i| if self.bits >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        if s.len() > MAX_RANK {
            return Err(Error::Parse(format!("character {s:?} is too long")));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Parse(format!("bad character string {s:?}"))),
            }
        }
        Ok(Character { rank: s.len() as u8, bits })
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bitstring())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bitstring())
    }
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bitstring())
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Character::from_bitstring(&s).map_err(serde::de::Error::custom)
    }
}

/// All nontrivial characters, ordered by their bit value.
#[must_use]
pub fn enumerate_characters(group: Group) -> Vec<Character> {
    (1..=group.mask())
        .map(|bits| Character { rank: group.rank as u8, bits })
        .collect()
}

/// A homomorphism `source -> target`, stored by the images of the source basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: Group,
    target: Group,
    columns: Vec<u64>,
}

impl GroupHom {
    pub fn from_columns(source: Group, target: Group, columns: Vec<u64>) -> Result<Self> {
        if columns.len() != source.rank {
            return Err(Error::GroupMismatch(format!(
                "{} columns for a source of rank {}",
                columns.len(),
                source.rank
            )));
        }
        if columns.iter().any(|c| c & !target.mask() != 0) {
            return Err(Error::GroupMismatch("column does not fit the target".into()));
        }
        Ok(GroupHom { source, target, columns })
    }

    /// Build from the `target.rank x source.rank` matrix given by rows.
    pub fn from_rows(source: Group, target: Group, rows: &[u64]) -> Result<Self> {
        if rows.len() != target.rank {
            return Err(Error::GroupMismatch("row count differs from target rank".into()));
        }
        let mut columns = vec![0u64; source.rank];
        for (i, row) in rows.iter().enumerate() {
            for (j, col) in columns.iter_mut().enumerate() {
                if row >> j & 1 == 1 {
                    *col |= 1 << i;
                }
            }
        }
        GroupHom::from_columns(source, target, columns)
    }

    #[must_use]
    pub fn identity(group: Group) -> Self {
        GroupHom {
            source: group,
            target: group,
            columns: (0..group.rank).map(|i| 1 << i).collect(),
        }
    }

    /// The map to the trivial group.
    #[must_use]
    pub fn to_trivial(group: Group) -> Self {
        GroupHom { source: group, target: Group::trivial(), columns: vec![0; group.rank] }
    }

    /// The inclusion of the trivial group.
    #[must_use]
    pub fn from_trivial(group: Group) -> Self {
        GroupHom { source: Group::trivial(), target: group, columns: vec![] }
    }

    /// The character viewed as a homomorphism to `C`.
    #[must_use]
    pub fn from_character(lambda: Character) -> Self {
        let group = lambda.group();
        GroupHom {
            source: group,
            target: Group::new(1),
            columns: (0..group.rank).map(|j| lambda.bits >> j & 1).collect(),
        }
    }

    /// Inclusion of the first `source.rank` coordinates.
    #[must_use]
    pub fn inclusion_first(source: Group, target: Group) -> Self {
        assert!(source.rank <= target.rank);
        GroupHom { source, target, columns: (0..source.rank).map(|i| 1 << i).collect() }
    }

    /// Projection onto the first `target.rank` coordinates.
    #[must_use]
    pub fn projection_first(source: Group, target: Group) -> Self {
        assert!(target.rank <= source.rank);
        let columns = (0..source.rank)
            .map(|j| if j < target.rank { 1 << j } else { 0 })
            .collect();
        GroupHom { source, target, columns }
    }

    #[must_use]
    pub fn source(&self) -> Group {
        self.source
    }

    #[must_use]
    pub fn target(&self) -> Group {
        self.target
    }

    #[must_use]
    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    /// Image of a source element.
    #[must_use]
    pub fn apply(&self, element: u64) -> u64 {
        self.columns
            .iter()
            .enumerate()
            .filter(|(j, _)| element >> j & 1 == 1)
            .fold(0, |acc, (_, c)| acc ^ c)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::GroupMismatch("composition of incompatible maps".into()));
        }
        Ok(GroupHom {
            source: inner.source,
            target: self.target,
            columns: inner.columns.iter().map(|&c| self.apply(c)).collect(),
        })
    }

    /// `λ ∘ self`, possibly trivial.
    pub fn pull_character(&self, lambda: &Character) -> Result<Character> {
        if lambda.group() != self.target {
            return Err(Error::GroupMismatch(format!(
                "character of rank {} pulled back along a map into rank {}",
                lambda.rank, self.target.rank
            )));
        }
        let bits = self
            .columns
            .iter()
            .enumerate()
            .filter(|(_, c)| lambda.eval(**c))
            .fold(0u64, |acc, (j, _)| acc | 1 << j);
        Ok(Character { rank: self.source.rank as u8, bits })
    }

    /// Pullback of a grading; trivial summands are absorbed into `k`.
    pub fn pull_grading(&self, m: &RepGrading) -> Result<RepGrading> {
        if m.group() != self.target {
            return Err(Error::GroupMismatch("grading of the wrong group".into()));
        }
        let mut out = RepGrading::integer(self.source, m.k);
        for (lambda, &mult) in &m.v {
            let pulled = self.pull_character(lambda)?;
            out.add_character(pulled, mult);
        }
        Ok(out)
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        crate::linalg::rank_of_vectors(&self.columns)
    }

    #[must_use]
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.rank
    }

    #[must_use]
    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.rank
    }
}

/// Kernel of a nontrivial character, as an inclusion `C^(n-1) -> A`.
pub fn kernel_inclusion(lambda: &Character) -> Result<GroupHom> {
    if lambda.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let group = lambda.group();
    let pivot = lambda.bits.trailing_zeros() as usize;
    let columns: Vec<u64> = (0..group.rank)
        .filter(|&i| i != pivot)
        .map(|i| {
            let v = 1u64 << i;
            if lambda.eval(v) {
                v | 1 << pivot
            } else {
                v
            }
        })
        .collect();
    GroupHom::from_columns(Group::new(group.rank - 1), group, columns)
}

/// An isomorphism `ker(λ) × C -> A` whose last coordinate projection is `λ`.
pub fn splitting(lambda: &Character) -> Result<GroupHom> {
    let incl = kernel_inclusion(lambda)?;
    let group = lambda.group();
    let section = 1u64 << lambda.bits.trailing_zeros();
    let mut columns = incl.columns().to_vec();
    columns.push(section);
    GroupHom::from_columns(group, group, columns)
}

/// A grading `k - V` with `V` a multiset of nontrivial characters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepGrading {
    rank: u8,
    pub k: i64,
    v: BTreeMap<Character, u32>,
}

impl RepGrading {
    #[must_use]
    pub fn integer(group: Group, k: i64) -> Self {
        RepGrading { rank: group.rank as u8, k, v: BTreeMap::new() }
    }

    /// `k - Σ chars`, absorbing trivial summands into `k`.
    pub fn new(group: Group, k: i64, chars: &[Character]) -> Result<Self> {
        let mut m = RepGrading::integer(group, k);
        for c in chars {
            if c.group() != group {
                return Err(Error::GroupMismatch("character of another group".into()));
            }
            m.add_character(*c, 1);
        }
        Ok(m)
    }

    /// `k - Σ mult·λ` from a multiplicity map; trivial characters are absorbed.
    pub fn from_multiplicities(
        group: Group,
        k: i64,
        mults: impl IntoIterator<Item = (Character, u32)>,
    ) -> Result<Self> {
        let mut m = RepGrading::integer(group, k);
        for (c, mult) in mults {
            if c.group() != group {
                return Err(Error::GroupMismatch("character of another group".into()));
            }
            m.add_character(c, mult);
        }
        Ok(m)
    }

    /// Subtract `mult` copies of `λ`.
    pub fn add_character(&mut self, lambda: Character, mult: u32) {
        if mult == 0 {
            return;
        }
        if lambda.is_trivial() {
            self.k -= i64::from(mult);
        } else {
            *self.v.entry(lambda).or_insert(0) += mult;
        }
    }

    #[must_use]
    pub fn group(&self) -> Group {
        Group { rank: self.rank as usize }
    }

    #[must_use]
    pub fn rep(&self) -> &BTreeMap<Character, u32> {
        &self.v
    }

    #[must_use]
    pub fn multiplicity(&self, lambda: &Character) -> u32 {
        self.v.get(lambda).copied().unwrap_or(0)
    }

    /// `|V|`.
    #[must_use]
    pub fn size(&self) -> u32 {
        self.v.values().sum()
    }

    /// The integer degree `k - |V|`.
    #[must_use]
    pub fn total(&self) -> i64 {
        self.k - i64::from(self.size())
    }

    #[must_use]
    pub fn is_integer(&self) -> bool {
        self.v.is_empty()
    }

    /// Sum in the grading monoid.
    #[must_use]
    pub fn plus(&self, other: &RepGrading) -> RepGrading {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        out.k += other.k;
        for (c, &m) in &other.v {
            *out.v.entry(*c).or_insert(0) += m;
        }
        out
    }

    /// `self - λ`.
    #[must_use]
    pub fn minus_char(&self, lambda: Character) -> RepGrading {
        let mut out = self.clone();
        out.add_character(lambda, 1);
        out
    }

    /// `self + λ`, when `λ` occurs in `V`.
    #[must_use]
    pub fn plus_char(&self, lambda: Character) -> Option<RepGrading> {
        let mut out = self.clone();
        let entry = out.v.get_mut(&lambda)?;
        *entry -= 1;
        if *entry == 0 {
            out.v.remove(&lambda);
        }
        Some(out)
    }

    /// `self` with `V` replaced by `V - W`, when `W ⊆ V`.
    #[must_use]
    pub fn remove_rep(&self, w: &BTreeMap<Character, u32>) -> Option<RepGrading> {
        let mut out = self.clone();
        for (c, &m) in w {
            let entry = out.v.get_mut(c)?;
            if *entry < m {
                return None;
            }
            *entry -= m;
            if *entry == 0 {
                out.v.remove(c);
            }
        }
        Some(out)
    }

    #[must_use]
    pub fn shift(&self, dk: i64) -> RepGrading {
        let mut out = self.clone();
        out.k += dk;
        out
    }

    #[must_use]
    pub fn to_json(&self) -> Value {
        let v: serde_json::Map<String, Value> =
            self.v.iter().map(|(c, m)| (c.to_bitstring(), json!(m))).collect();
        json!({"k": self.k, "V": v})
    }

    pub fn from_json(group: Group, value: &Value) -> Result<Self> {
        let k = value
            .get("k")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("grading needs an integer \"k\"".into()))?;
        let mut m = RepGrading::integer(group, k);
        if let Some(v) = value.get("V") {
            let obj = v.as_object().ok_or_else(|| Error::Parse("\"V\" must be an object".into()))?;
            for (s, mult) in obj {
                let c = Character::from_bitstring(s)?;
                if c.group() != group {
                    return Err(Error::GroupMismatch(format!("character {s} in rank {}", group.rank)));
                }
                let mult = mult
                    .as_u64()
                    .ok_or_else(|| Error::Parse("multiplicities are natural numbers".into()))?;
                m.add_character(c, mult as u32);
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for RepGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RepGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.k)?;
        for (c, m) in &self.v {
            if *m == 1 {
                write!(f, "-[{c}]")?;
            } else {
                write!(f, "-{m}[{c}]")?;
            }
        }
        Ok(())
    }
}

/// All minimal dependent subsets of `chars`, by size and then by position.
pub fn circuits(chars: &[Character]) -> Result<Vec<Vec<Character>>> {
    if chars.iter().any(Character::is_trivial) {
        return Err(Error::TrivialCharacter);
    }
    let Some(first) = chars.first() else {
        return Ok(vec![]);
    };
    if chars.iter().any(|c| c.rank != first.rank) {
        return Err(Error::GroupMismatch("characters of different groups".into()));
    }
    let rank = first.rank as usize;
    let mut out = Vec::new();
    for size in 3..=(rank + 1).min(chars.len()) {
        for subset in combinations(chars.len(), size) {
            let vectors: Vec<u64> = subset.iter().map(|&i| chars[i].bits).collect();
            let sum = vectors.iter().fold(0, |a, b| a ^ b);
            if sum == 0 && crate::linalg::rank_of_vectors(&vectors) == size - 1 {
                out.push(subset.iter().map(|&i| chars[i]).collect());
            }
        }
    }
    Ok(out)
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// All multisets of total size `total` over `n` slots.
pub(crate) fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for x in (0..=left).rev() {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
    }
    if n == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// All gradings `k - V` of `group` with `|V|` in `v_sizes` and `k` in `ks`.
pub fn gradings_in_window(
    group: Group,
    ks: std::ops::RangeInclusive<i64>,
    v_sizes: std::ops::RangeInclusive<u32>,
) -> Vec<RepGrading> {
    let chars = enumerate_characters(group);
    let mut out = Vec::new();
    for size in v_sizes {
        for comp in compositions(chars.len(), size) {
            for k in ks.clone() {
                let m = RepGrading::from_multiplicities(
                    group,
                    k,
                    chars.iter().copied().zip(comp.iter().copied()),
                )
                .expect("characters of the group");
                out.push(m);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characters_by_rank() {
        assert!(enumerate_characters(Group::trivial()).is_empty());
        assert_eq!(enumerate_characters(Group::new(1)).len(), 1);
        let c2 = enumerate_characters(Group::new(2));
        let names: Vec<String> = c2.iter().map(Character::to_bitstring).collect();
        assert_eq!(names, ["10", "01", "11"]);
    }

    #[test]
    fn pullbacks() {
        let c = Group::new(1);
        let c2 = Group::new(2);
        let sigma = Character::coordinate(c, 0);

        let incl = GroupHom::from_trivial(c);
        let m = RepGrading::new(c, 2, &[sigma, sigma, sigma]).unwrap();
        assert_eq!(incl.pull_grading(&m).unwrap(), RepGrading::integer(Group::trivial(), -1));

        let diag = GroupHom::from_columns(c, c2, vec![0b11]).unwrap();
        let p1 = Character::coordinate(c2, 0);
        let p2 = Character::coordinate(c2, 1);
        let m = RepGrading::new(c2, 0, &[p1, p2]).unwrap();
        assert_eq!(diag.pull_grading(&m).unwrap(), RepGrading::new(c, 0, &[sigma, sigma]).unwrap());

        let i1 = GroupHom::inclusion_first(c, c2);
        let mu = p1.plus(&p2);
        let m = RepGrading::new(c2, 1, &[mu]).unwrap();
        assert_eq!(i1.pull_grading(&m).unwrap(), RepGrading::new(c, 1, &[sigma]).unwrap());
    }

    #[test]
    fn circuit_counts() {
        assert!(circuits(&enumerate_characters(Group::new(1))).unwrap().is_empty());
        let two = circuits(&enumerate_characters(Group::new(2))).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].len(), 3);
        let three = circuits(&enumerate_characters(Group::new(3))).unwrap();
        assert_eq!(three.len(), 14);
        assert_eq!(three.iter().filter(|t| t.len() == 3).count(), 7);
        assert_eq!(three.iter().filter(|t| t.len() == 4).count(), 7);
    }

    #[test]
    fn circuits_reject_trivial() {
        let c = Group::new(2);
        assert_eq!(circuits(&[Character::trivial(c)]), Err(Error::TrivialCharacter));
    }

    #[test]
    fn splitting_projects_to_lambda() {
        let g = Group::new(3);
        for lambda in enumerate_characters(g) {
            let alpha = splitting(&lambda).unwrap();
            assert!(alpha.is_injective());
            let last = Character::coordinate(g, 2);
            assert_eq!(alpha.pull_character(&lambda).unwrap(), last);
        }
    }

    #[test]
    fn grading_json_round_trip() {
        let g = Group::new(2);
        let m = RepGrading::new(g, 3, &[Character::coordinate(g, 1)]).unwrap();
        let back = RepGrading::from_json(g, &m.to_json()).unwrap();
        assert_eq!(m, back);
    }
}
