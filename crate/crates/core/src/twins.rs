//! Twin detection, the twin decomposition, the quotient multigraph and the
//! resulting factorization of the automorphism group order.

use serde::{Deserialize, Serialize};

use crate::autgroup::{automorphisms, automorphisms_colored, GroupLimits};
use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Disjoint vertex classes covering `0..n`, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub classes: Vec<Vec<usize>>,
    /// Multiplicity between distinct members of each class (0 for
    /// singletons). Reporting only; the quotient ignores it.
    pub inner_multiplicity: Vec<u32>,
}

impl Partition {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    /// Index of the class holding each vertex.
    pub fn class_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (k, class) in self.classes.iter().enumerate() {
            for &v in class {
                out[v] = k;
            }
        }
        out
    }
}

/// `x` and `y` have the same multiplicity to every third vertex.
pub fn are_twins(g: &Multigraph, x: usize, y: usize) -> Result<bool> {
    if x == y {
        return Err(Error::SameVertex(x + 1));
    }
    let n = g.n();
    if x >= n || y >= n {
        return Err(Error::Invalid(format!("vertex outside 1..={n}")));
    }
    Ok((0..n).filter(|&v| v != x && v != y).all(|v| g.mu(x, v) == g.mu(y, v)))
}

/// First twin pair in lexicographic order, if any.
pub fn find_twins(g: &Multigraph) -> Option<(usize, usize)> {
    let n = g.n();
    (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find(|&(x, y)| are_twins(g, x, y).unwrap_or(false))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Maximal classes of pairwise twins, by union-find over the twin relation.
pub fn twin_decomposition(g: &Multigraph) -> Partition {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    for x in 0..n {
        for y in x + 1..n {
            if are_twins(g, x, y).expect("distinct in-range vertices") {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(v);
    }
    let inner_multiplicity = classes.iter().map(|c| if c.len() > 1 { g.mu(c[0], c[1]) } else { 0 }).collect();
    Partition { classes, inner_multiplicity }
}

/// One vertex per class, multiplicities taken from class representatives.
/// `p` must be the twin decomposition of `g`.
pub fn quotient(g: &Multigraph, p: &Partition) -> Result<Multigraph> {
    if *p != twin_decomposition(g) {
        return Err(Error::Invalid("partition is not the twin decomposition of the graph".into()));
    }
    let reps: Vec<usize> = p.classes.iter().map(|c| c[0]).collect();
    Ok(g.induced(&reps))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutFactorization {
    pub class_sizes: Vec<usize>,
    /// Order of the group of quotient automorphisms that lift to the graph,
    /// i.e. those preserving class size and inner multiplicity.
    pub quotient_aut_order: u128,
    /// Order of the full automorphism group of the uncoloured quotient. Can
    /// exceed `quotient_aut_order` when classes of different sizes look alike
    /// in the quotient.
    pub quotient_aut_order_uncolored: u128,
    pub total: u128,
}

/// `|Aut(G)| = prod |X|! * |Aut(G/P)|`, where quotient automorphisms must map
/// each class to a class of the same size and inner multiplicity.
pub fn factorize_aut_order(g: &Multigraph, limits: &GroupLimits) -> Result<AutFactorization> {
    let p = twin_decomposition(g);
    let q = quotient(g, &p)?;
    let labels: Vec<(usize, u32)> = p.classes.iter().map(Vec::len).zip(p.inner_multiplicity.iter().copied()).collect();
    let mut distinct = labels.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let colors: Vec<usize> = labels.iter().map(|l| distinct.binary_search(l).expect("label present")).collect();

    let lifted = automorphisms_colored(&q, &colors, limits)?.order() as u128;
    let uncolored = automorphisms(&q, limits)?.order() as u128;

    let mut total = lifted;
    for class in &p.classes {
        total = total.checked_mul(factorial(class.len())?).ok_or(Error::Overflow("automorphism group order"))?;
    }
    Ok(AutFactorization {
        class_sizes: p.class_sizes(),
        quotient_aut_order: lifted,
        quotient_aut_order_uncolored: uncolored,
        total,
    })
}

fn factorial(k: usize) -> Result<u128> {
    (1..=k as u128).try_fold(1u128, |acc, x| acc.checked_mul(x)).ok_or(Error::Overflow("factorial"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn twin_examples() {
        let c4 = corpus::cycle(4);
        assert!(are_twins(&c4, 0, 2).unwrap());
        assert!(!are_twins(&c4, 0, 1).unwrap());
        let p3 = corpus::path(3);
        assert!(!are_twins(&p3, 0, 1).unwrap());
        let k4 = corpus::complete(4);
        for x in 0..4 {
            for y in 0..4 {
                if x != y {
                    assert!(are_twins(&k4, x, y).unwrap());
                }
            }
        }
        assert!(matches!(are_twins(&k4, 1, 1), Err(Error::SameVertex(2))));
    }

    #[test]
    fn decompositions() {
        let k33 = corpus::complete_bipartite(3, 3);
        let p = twin_decomposition(&k33);
        assert_eq!(p.classes, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(p.inner_multiplicity, vec![0, 0]);

        assert!(twin_decomposition(&corpus::cycle(5)).is_discrete());
        assert_eq!(twin_decomposition(&corpus::cycle(5)).classes.len(), 5);

        let k4 = twin_decomposition(&corpus::complete(4));
        assert_eq!(k4.classes, vec![vec![0, 1, 2, 3]]);
        assert_eq!(k4.inner_multiplicity, vec![1]);
    }

    #[test]
    fn quotients() {
        let k33 = corpus::complete_bipartite(3, 3);
        let q = quotient(&k33, &twin_decomposition(&k33)).unwrap();
        assert_eq!(q, Multigraph::from_edges(2, &[(0, 1, 1)]).unwrap());

        let c5 = corpus::cycle(5);
        assert_eq!(quotient(&c5, &twin_decomposition(&c5)).unwrap(), c5);

        let k4 = corpus::complete(4);
        assert_eq!(quotient(&k4, &twin_decomposition(&k4)).unwrap(), Multigraph::new(1));

        let wrong = Partition { classes: vec![vec![0, 1, 2, 3, 4]], inner_multiplicity: vec![0] };
        assert!(quotient(&c5, &wrong).is_err());
    }

    #[test]
    fn factorizations() {
        let lim = GroupLimits::default();
        let f = factorize_aut_order(&corpus::complete_bipartite(3, 3), &lim).unwrap();
        assert_eq!(f.class_sizes, vec![3, 3]);
        assert_eq!(f.quotient_aut_order, 2);
        assert_eq!(f.total, 72);

        let f = factorize_aut_order(&corpus::cycle(5), &lim).unwrap();
        assert_eq!(f.total, 10);
        assert_eq!(factorize_aut_order(&corpus::complete(4), &lim).unwrap().total, 24);
    }

    #[test]
    fn unequal_classes_do_not_swap() {
        // path 1-2-3: classes {1,3} and {2}; the quotient edge looks
        // symmetric but its ends cannot be exchanged
        let f = factorize_aut_order(&corpus::path(3), &GroupLimits::default()).unwrap();
        assert_eq!(f.class_sizes, vec![2, 1]);
        assert_eq!(f.quotient_aut_order_uncolored, 2);
        assert_eq!(f.quotient_aut_order, 1);
        assert_eq!(f.total, 2);
    }
}
