//! Permutations of `0..n` and explicitly listed permutation groups.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `images[i]` is the image of vertex `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation { images })
    }

    /// Callers guarantee `images` is a bijection on `0..len`.
    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` after `other`: `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.images.iter().map(|x| x + 1).collect();
        write!(f, "Permutation{one_based:?}")
    }
}

// 1-based on the wire, like every other vertex label.
impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.images.iter().map(|x| x + 1))
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let one_based = Vec::<usize>::deserialize(d)?;
        if one_based.contains(&0) {
            return Err(serde::de::Error::custom("permutation images are 1-based"));
        }
        Permutation::new(one_based.into_iter().map(|x| x - 1).collect()).map_err(serde::de::Error::custom)
    }
}

/// A finite permutation group stored as its full, lexicographically sorted
/// element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, elements: vec![Permutation::identity(degree)] }
    }

    /// Checks the group axioms and stores the sorted element list.
    ///
    /// The check builds a generating set greedily and compares the size of
    /// the generated group with the input: a finite set that equals the
    /// closure of a subset of itself is a group.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self> {
        if let Some(p) = elements.iter().find(|p| p.degree() != degree) {
            return Err(Error::Invalid(format!("{p:?} does not act on {degree} points")));
        }
        let set: HashSet<&Permutation> = elements.iter().collect();
        if set.len() != elements.len() {
            return Err(Error::Invalid("repeated group element".into()));
        }
        if !set.contains(&Permutation::identity(degree)) {
            return Err(Error::Invalid("identity missing from group".into()));
        }

        let mut closure: HashSet<Permutation> = HashSet::new();
        closure.insert(Permutation::identity(degree));
        let mut generators: Vec<&Permutation> = Vec::new();
        for p in &elements {
            if closure.contains(p) {
                continue;
            }
            generators.push(p);
            closure = generate(degree, &generators, elements.len())
                .ok_or_else(|| Error::Invalid("element set is not closed under composition".into()))?;
        }
        if closure.len() != elements.len() || !closure.iter().all(|p| set.contains(p)) {
            return Err(Error::Invalid("element set is not closed under composition".into()));
        }

        let mut elements = elements;
        elements.sort();
        Ok(PermGroup { degree, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    /// Elements of `self` missing from `other`.
    pub fn difference<'a>(&'a self, other: &'a PermGroup) -> impl Iterator<Item = &'a Permutation> + 'a {
        self.elements.iter().filter(move |p| !other.contains(p))
    }
}

/// Closure of `generators` by breadth-first multiplication; gives up once it
/// exceeds `limit` elements.
fn generate(degree: usize, generators: &[&Permutation], limit: usize) -> Option<HashSet<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(q);
            }
        }
    }
    Some(seen)
}
