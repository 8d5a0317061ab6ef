//! Ground sets, vertex sets and families of vertex sets.
//!
//! A family `{V_1, ..., V_r}` of k-subsets of `[n]` determines `K(n,k)` exactly
//! when no two ground elements share a membership pattern across the family:
//! for every pair `a != b` some `V_i` contains one of them but not the other.
//! The [`SignatureMatrix`] stores that pattern per element as a bitmask, bit
//! `i` set when the element belongs to `V_{i+1}`, so the whole test reduces to
//! "all columns are distinct".
//!
//! Elements are 1-based throughout, matching the usual `[n] = {1, ..., n}`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported family size; one membership signature fits a `u64`.
pub const MAX_SETS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// `n > 2k`; the graph is connected and its automorphisms are `S_n`.
    Determining,
    /// `n >= 2k`; used for families that must also cover the ground set.
    Auxiliary,
}

/// The parameter pair `(n, k)` of a Kneser graph `K(n,k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KneserInstance {
    n: u32,
    k: u32,
    regime: Regime,
}

impl KneserInstance {
    /// An instance in the determining regime, which requires `n > 2k`.
    pub fn new(n: u32, k: u32) -> Result<Self> {
        Self::with_regime(n, k, Regime::Determining)
    }

    /// An instance in the auxiliary regime, which allows `n = 2k`.
    pub fn auxiliary(n: u32, k: u32) -> Result<Self> {
        Self::with_regime(n, k, Regime::Auxiliary)
    }

    pub fn with_regime(n: u32, k: u32, regime: Regime) -> Result<Self> {
        let invalid = |reason| Err(Error::InvalidInstance { n, k, reason });
        if k == 0 {
            return invalid("k must be at least 1");
        }
        if n < 3 {
            return invalid("n must be at least 3");
        }
        let twice_k = 2 * u64::from(k);
        match regime {
            Regime::Determining if u64::from(n) <= twice_k => invalid("n must exceed 2k"),
            Regime::Auxiliary if u64::from(n) < twice_k => invalid("n must be at least 2k"),
            _ => Ok(Self { n, k, regime }),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }
}

impl fmt::Display for KneserInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({},{})", self.n, self.k)
    }
}

/// A k-subset of `[n]`, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    pub fn new(elements: impl IntoIterator<Item = u32>, instance: &KneserInstance) -> Result<Self> {
        let mut elements: Vec<u32> = elements.into_iter().collect();
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0]));
        }
        if let Some(&e) = elements.iter().find(|&&e| e == 0 || e > instance.n) {
            return Err(Error::OutOfRange { element: e, n: instance.n });
        }
        if elements.len() != instance.k as usize {
            return Err(Error::WrongArity { expected: instance.k, found: elements.len() });
        }
        Ok(Self(elements))
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, element: u32) -> bool {
        self.0.binary_search(&element).is_ok()
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

/// An ordered list of vertex sets of one instance.
///
/// The order is kept only so constructions are reproducible; separation does
/// not depend on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    instance: KneserInstance,
    sets: Vec<VertexSet>,
}

impl Family {
    pub fn new<S, I>(instance: KneserInstance, sets: S) -> Result<Self>
    where
        S: IntoIterator<Item = I>,
        I: IntoIterator<Item = u32>,
    {
        let sets = sets.into_iter().map(|s| VertexSet::new(s, &instance)).collect::<Result<Vec<_>>>()?;
        if sets.len() > MAX_SETS {
            return Err(Error::TooManySets(sets.len()));
        }
        Ok(Self { instance, sets })
    }

    pub fn empty(instance: KneserInstance) -> Self {
        Self { instance, sets: Vec::new() }
    }

    pub fn instance(&self) -> &KneserInstance {
        &self.instance
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Plain nested vectors, handy for comparisons in tests and output.
    pub fn to_vecs(&self) -> Vec<Vec<u32>> {
        self.sets.iter().map(|s| s.0.clone()).collect()
    }

    pub fn signature_matrix(&self) -> SignatureMatrix {
        let mut columns = vec![0u64; self.instance.n as usize];
        for (i, set) in self.sets.iter().enumerate() {
            for &e in set.elements() {
                columns[(e - 1) as usize] |= 1 << i;
            }
        }
        SignatureMatrix { r: self.sets.len(), columns }
    }

    /// Whether some member contains exactly one of `a` and `b`.
    pub fn separates(&self, a: u32, b: u32) -> Result<bool> {
        let n = self.instance.n;
        for e in [a, b] {
            if e == 0 || e > n {
                return Err(Error::OutOfRange { element: e, n });
            }
        }
        if a == b {
            return Err(Error::DegeneratePair(a));
        }
        Ok(self.sets.iter().any(|s| s.contains(a) != s.contains(b)))
    }

    pub fn is_determining(&self) -> bool {
        self.signature_matrix().columns_distinct()
    }

    /// Determining and covering every element of `[n]`.
    pub fn is_auxiliary(&self) -> bool {
        let matrix = self.signature_matrix();
        matrix.columns_distinct() && matrix.columns.iter().all(|&c| c != 0)
    }

    /// The lexicographically smallest pair `(a, b)`, `a < b`, that no member separates.
    pub fn first_unseparated_pair(&self) -> Option<(u32, u32)> {
        self.signature_matrix().first_repeated_pair()
    }

    /// Number of members containing each element, indexed by `element - 1`.
    pub fn column_weights(&self) -> Vec<u32> {
        self.signature_matrix().columns.iter().map(|c| c.count_ones()).collect()
    }

    pub fn union(&self) -> Vec<u32> {
        let matrix = self.signature_matrix();
        (1..=self.instance.n).filter(|&e| matrix.column(e) != 0).collect()
    }

    pub fn uncovered(&self) -> Vec<u32> {
        let matrix = self.signature_matrix();
        (1..=self.instance.n).filter(|&e| matrix.column(e) == 0).collect()
    }

    /// Elements lying in every member. Empty for an empty family.
    pub fn common_elements(&self) -> Vec<u32> {
        if self.sets.is_empty() {
            return Vec::new();
        }
        let full = if self.sets.len() == 64 { u64::MAX } else { (1u64 << self.sets.len()) - 1 };
        let matrix = self.signature_matrix();
        (1..=self.instance.n).filter(|&e| matrix.column(e) == full).collect()
    }

    pub fn has_duplicate_sets(&self) -> bool {
        let mut sorted: Vec<&VertexSet> = self.sets.iter().collect();
        sorted.sort();
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    /// Applies a permutation of `[n]`, `map[e - 1]` being the new label of `e`.
    pub fn relabel(&self, map: &[u32]) -> Result<Family> {
        let n = self.instance.n as usize;
        if map.len() != n {
            return Err(Error::InvalidInput(format!("relabeling has {} entries, expected {n}", map.len())));
        }
        let mut seen = vec![false; n];
        for &m in map {
            if m == 0 || m as usize > n || std::mem::replace(&mut seen[(m - 1) as usize], true) {
                return Err(Error::InvalidInput("relabeling is not a permutation".into()));
            }
        }
        let sets = self
            .sets
            .iter()
            .map(|s| {
                let mut v: Vec<u32> = s.0.iter().map(|&e| map[(e - 1) as usize]).collect();
                v.sort_unstable();
                VertexSet(v)
            })
            .collect();
        Ok(Family { instance: self.instance, sets })
    }

    /// Exchanges the labels `a` and `b` in every member.
    pub fn swap_labels(&self, a: u32, b: u32) -> Result<Family> {
        let mut map: Vec<u32> = (1..=self.instance.n).collect();
        for e in [a, b] {
            if e == 0 || e > self.instance.n {
                return Err(Error::OutOfRange { element: e, n: self.instance.n });
            }
        }
        map.swap((a - 1) as usize, (b - 1) as usize);
        self.relabel(&map)
    }

    /// Relabels elements by descending column weight, ties by ascending label.
    pub fn canonicalize(&self) -> Family {
        let weights = self.column_weights();
        let mut order: Vec<u32> = (1..=self.instance.n).collect();
        order.sort_by_key(|&e| (std::cmp::Reverse(weights[(e - 1) as usize]), e));
        let mut map = vec![0; order.len()];
        for (pos, &e) in order.iter().enumerate() {
            map[(e - 1) as usize] = pos as u32 + 1;
        }
        self.relabel(&map).expect("sort order is a permutation")
    }

    /// Reads the same sets on another instance, revalidating them there.
    pub fn reinterpret(&self, instance: KneserInstance) -> Result<Family> {
        Family::new(instance, self.sets.iter().map(|s| s.0.iter().copied()))
    }

    /// Appends one more member.
    pub fn with_set(&self, set: impl IntoIterator<Item = u32>) -> Result<Family> {
        if self.sets.len() == MAX_SETS {
            return Err(Error::TooManySets(MAX_SETS + 1));
        }
        let mut sets = self.sets.clone();
        sets.push(VertexSet::new(set, &self.instance)?);
        Ok(Family { instance: self.instance, sets })
    }

    pub(crate) fn replace_set(&self, index: usize, set: Vec<u32>) -> Result<Family> {
        let mut sets = self.sets.clone();
        sets[index] = VertexSet::new(set, &self.instance)?;
        Ok(Family { instance: self.instance, sets })
    }
}

/// The `r x n` incidence matrix of a family, stored column-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureMatrix {
    r: usize,
    columns: Vec<u64>,
}

impl SignatureMatrix {
    pub fn rows(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.columns.len() as u32
    }

    /// Membership signature of `element` (1-based). Panics when out of range.
    pub fn column(&self, element: u32) -> u64 {
        self.columns[(element - 1) as usize]
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn entry(&self, row: usize, element: u32) -> bool {
        self.column(element) >> row & 1 == 1
    }

    pub fn row(&self, row: usize) -> Vec<bool> {
        self.columns.iter().map(|c| c >> row & 1 == 1).collect()
    }

    pub fn row_weight(&self, row: usize) -> usize {
        self.columns.iter().filter(|c| *c >> row & 1 == 1).count()
    }

    pub fn columns_distinct(&self) -> bool {
        let mut sorted = self.columns.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn first_repeated_pair(&self) -> Option<(u32, u32)> {
        let mut first_seen: HashMap<u64, u32> = HashMap::new();
        let mut best: Option<(u32, u32)> = None;
        for (idx, &c) in self.columns.iter().enumerate() {
            let e = idx as u32 + 1;
            match first_seen.get(&c) {
                Some(&a) => {
                    // each signature's first collision is its smallest pair
                    if best.is_none_or(|(ba, _)| a < ba) {
                        best = Some((a, e));
                    }
                }
                None => {
                    first_seen.insert(c, e);
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u32, k: u32, sets: &[&[u32]]) -> Family {
        Family::new(KneserInstance::new(n, k).unwrap(), sets.iter().map(|s| s.iter().copied())).unwrap()
    }

    #[test]
    fn instance_validation() {
        assert!(KneserInstance::new(5, 2).is_ok());
        assert!(KneserInstance::new(4, 2).is_err());
        assert!(KneserInstance::auxiliary(4, 2).is_ok());
        assert!(KneserInstance::auxiliary(3, 2).is_err());
        assert!(KneserInstance::new(3, 0).is_err());
        assert!(KneserInstance::new(2, 0).is_err());
    }

    #[test]
    fn vertex_set_validation() {
        let inst = KneserInstance::new(5, 2).unwrap();
        assert_eq!(VertexSet::new([3, 1], &inst).unwrap().elements(), &[1, 3]);
        assert_eq!(VertexSet::new([1, 1], &inst), Err(Error::DuplicateElement(1)));
        assert_eq!(VertexSet::new([1, 6], &inst), Err(Error::OutOfRange { element: 6, n: 5 }));
        assert_eq!(VertexSet::new([0, 1], &inst), Err(Error::OutOfRange { element: 0, n: 5 }));
        assert_eq!(VertexSet::new([1, 2, 3], &inst), Err(Error::WrongArity { expected: 2, found: 3 }));
    }

    #[test]
    fn signature_columns_transcribe_membership() {
        let f = fam(5, 2, &[&[1, 2], &[1, 3], &[2, 4]]);
        let m = f.signature_matrix();
        assert_eq!(m.rows(), 3);
        // bit i is membership in V_{i+1}
        assert_eq!(m.columns(), &[0b011, 0b101, 0b010, 0b100, 0b000]);
        for row in 0..3 {
            assert_eq!(m.row_weight(row), 2);
        }
        assert!(m.entry(0, 1) && m.entry(1, 1) && !m.entry(2, 1));
    }

    #[test]
    fn empty_family_has_all_columns_equal() {
        let f = Family::empty(KneserInstance::new(5, 2).unwrap());
        let m = f.signature_matrix();
        assert_eq!(m.rows(), 0);
        assert!(m.columns().iter().all(|&c| c == 0));
        assert!(!f.is_determining());
        assert_eq!(f.first_unseparated_pair(), Some((1, 2)));
    }

    #[test]
    fn seven_three_family_has_distinct_columns() {
        let f = fam(7, 3, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6]]);
        let m = f.signature_matrix();
        for a in 1..=7 {
            for b in a + 1..=7 {
                assert_ne!(m.column(a), m.column(b), "{a} {b}");
            }
        }
    }

    #[test]
    fn separates_cases() {
        let f = fam(5, 2, &[&[1, 2], &[1, 3], &[2, 4]]);
        assert_eq!(f.separates(1, 2), Ok(true));
        let g = fam(5, 2, &[&[1, 2], &[3, 4]]);
        assert_eq!(g.separates(1, 2), Ok(false));
        assert_eq!(g.separates(2, 2), Err(Error::DegeneratePair(2)));
        assert_eq!(g.separates(0, 2), Err(Error::OutOfRange { element: 0, n: 5 }));
        assert_eq!(g.separates(1, 6), Err(Error::OutOfRange { element: 6, n: 5 }));
        let t = Family::new(KneserInstance::auxiliary(6, 3).unwrap(), [[1, 2, 3], [1, 4, 5], [2, 4, 6]]).unwrap();
        assert_eq!(t.separates(5, 6), Ok(true));
    }

    #[test]
    fn determining_and_auxiliary() {
        assert!(fam(7, 3, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6]]).is_determining());
        assert!(fam(5, 2, &[&[1, 2], &[1, 3], &[2, 4]]).is_determining());
        let bad = fam(5, 2, &[&[1, 2], &[3, 4]]);
        assert!(!bad.is_determining());
        assert_eq!(bad.first_unseparated_pair(), Some((1, 2)));

        let aux = |n, k, sets: &[&[u32]]| {
            Family::new(KneserInstance::auxiliary(n, k).unwrap(), sets.iter().map(|s| s.iter().copied())).unwrap()
        };
        assert!(aux(4, 2, &[&[1, 2], &[1, 3], &[2, 4]]).is_auxiliary());
        assert!(aux(6, 3, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6]]).is_auxiliary());
        assert!(!aux(4, 2, &[&[1, 2], &[1, 3]]).is_auxiliary());
        // determining on (5,2) but misses 5
        assert!(!fam(5, 2, &[&[1, 2], &[1, 3], &[2, 4]]).is_auxiliary());
    }

    #[test]
    fn union_and_intersection() {
        let f = fam(5, 2, &[&[1, 2], &[1, 3], &[2, 4]]);
        assert_eq!(f.union(), vec![1, 2, 3, 4]);
        assert_eq!(f.uncovered(), vec![5]);
        assert!(f.common_elements().is_empty());
        let g = fam(7, 2, &[&[1, 2], &[1, 3]]);
        assert_eq!(g.common_elements(), vec![1]);
    }

    #[test]
    fn canonicalize_sorts_by_weight() {
        let f = fam(5, 2, &[&[1, 2], &[1, 3], &[2, 4]]);
        let c = f.canonicalize();
        // weights 2,2,1,1,0 are already in canonical order
        assert_eq!(c, f);
        assert_eq!(c.is_determining(), f.is_determining());

        let g = fam(7, 3, &[&[2, 6, 7], &[1, 5, 6], &[3, 4, 6]]);
        let cg = g.canonicalize();
        assert_eq!(cg.column_weights()[0], 3);
        assert_eq!(cg.to_vecs(), vec![vec![1, 3, 7], vec![1, 2, 6], vec![1, 4, 5]]);
        assert_eq!(cg.canonicalize(), cg);
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let f = fam(5, 2, &[&[1, 2]]);
        assert!(f.relabel(&[1, 1, 3, 4, 5]).is_err());
        assert!(f.relabel(&[1, 2, 3, 4]).is_err());
        assert_eq!(f.swap_labels(2, 5).unwrap().to_vecs(), vec![vec![1, 5]]);
    }

    #[test]
    fn too_many_sets() {
        let inst = KneserInstance::new(200, 1).unwrap();
        let sets: Vec<Vec<u32>> = (1..=65).map(|e| vec![e]).collect();
        assert_eq!(Family::new(inst, sets).unwrap_err(), Error::TooManySets(65));
    }

    #[test]
    fn duplicate_sets_are_allowed_but_detected() {
        let f = fam(5, 2, &[&[1, 2], &[1, 2]]);
        assert!(f.has_duplicate_sets());
        assert!(!fam(5, 2, &[&[1, 2], &[1, 3]]).has_duplicate_sets());
    }
}
