//! Congruence generation and the congruence lattice `Con(A)`.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::partition::{Partition, UnionFind};

/// The least congruence containing `pairs`.
///
/// Union-find closure: every pair that gets merged is pushed on a worklist,
/// and each worklist pair is pushed through every basic translation
/// `x ↦ f(c₁, …, x, …, c_k)`. The equivalence generated by the worklist is
/// then closed under all translations, hence a congruence.
pub fn cg(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Partition> {
    let n = a.size();
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
        return Err(Error::RangeViolation(format!(
            "pair ({x}, {y}) outside universe of size {n}"
        )));
    }
    Ok(cg_from(a, UnionFind::new(n), pairs.iter().copied()))
}

/// Closure starting from an existing union-find state.
pub(crate) fn cg_from(
    a: &FiniteAlgebra,
    mut uf: UnionFind,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Partition {
    let translations: Vec<(&[usize], Vec<usize>, usize)> = a
        .ops()
        .iter()
        .flat_map(|op| {
            (0..op.arity).map(move |pos| {
                let (bases, stride) = a.translation_bases(op, pos);
                (op.table(), bases, stride)
            })
        })
        .collect();
    let mut work: Vec<(usize, usize)> = Vec::new();
    for (x, y) in pairs {
        if uf.union(x, y) {
            work.push((x, y));
        }
    }
    while let Some((x, y)) = work.pop() {
        for (table, bases, stride) in &translations {
            for &b in bases {
                let (u, v) = (table[b + x * stride], table[b + y * stride]);
                if uf.union(u, v) {
                    work.push((u, v));
                }
            }
        }
    }
    uf.to_partition()
}

#[derive(Debug, Clone)]
pub struct CongruenceLattice {
    elements: Vec<Partition>,
    index: HashMap<Partition, usize>,
    lattice: FiniteLattice,
    principal: Vec<usize>,
    delta: usize,
    nabla: usize,
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Partition {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    /// Indices of `PCon(A)`, ascending.
    pub fn principal(&self) -> &[usize] {
        &self.principal
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn nabla(&self) -> usize {
        self.nabla
    }

    /// In a finite algebra every congruence is finitely generated.
    pub fn all_compact(&self) -> bool {
        true
    }

    pub fn is_modular(&self) -> bool {
        self.lattice.is_modular()
    }

    /// Five congruences `[bottom, low, high, side, top]` forming a pentagon.
    pub fn pentagon(&self) -> Option<[usize; 5]> {
        self.lattice.pentagon()
    }

    pub fn order_matrix_01(&self) -> Vec<Vec<u8>> {
        self.lattice
            .order_matrix()
            .iter()
            .map(|row| row.iter().map(|&b| b as u8).collect())
            .collect()
    }
}

fn canonical_key(p: &Partition) -> (std::cmp::Reverse<usize>, Vec<usize>) {
    (std::cmp::Reverse(p.block_count()), p.reps().to_vec())
}

/// Enumerates `Con(A)`: principal congruences, closed under binary join,
/// plus `Δ`. Elements are ordered by block count (finest first), ties broken
/// by the representative array.
pub fn con_lattice(a: &FiniteAlgebra) -> CongruenceLattice {
    let n = a.size();
    let mut principal_set: BTreeSet<Partition> = BTreeSet::new();
    for x in 0..n {
        for y in x + 1..n {
            principal_set.insert(cg_from(a, UnionFind::new(n), [(x, y)]));
        }
    }
    let mut all: Vec<Partition> = principal_set.iter().cloned().collect();
    all.push(Partition::discrete(n));
    let mut seen: HashSet<Partition> = all.iter().cloned().collect();
    let mut frontier = all.clone();
    while let Some(p) = frontier.pop() {
        let mut fresh = Vec::new();
        for q in &all {
            let j = p.join(q);
            if seen.insert(j.clone()) {
                fresh.push(j);
            }
        }
        frontier.extend(fresh.iter().cloned());
        all.extend(fresh);
    }
    let mut elements = all;
    elements.sort_by_key(canonical_key);
    let index: HashMap<Partition, usize> = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let leq = elements
        .iter()
        .map(|p| elements.iter().map(|q| p.refines(q)).collect())
        .collect();
    let lattice = FiniteLattice::from_order(leq).expect("Con(A) is a lattice");
    let principal = principal_set.iter().map(|p| index[p]).collect::<BTreeSet<_>>();
    let delta = index[&Partition::discrete(n)];
    let nabla = index[&Partition::total(n)];
    CongruenceLattice {
        elements,
        index,
        lattice,
        principal: principal.into_iter().collect(),
        delta,
        nabla,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Operation;
    use crate::corpus;

    #[test]
    fn cg_of_nothing_is_delta() {
        let z4 = corpus::zn(4);
        assert_eq!(cg(&z4, &[]).unwrap(), Partition::discrete(4));
    }

    #[test]
    fn cg_in_z4() {
        let z4 = corpus::zn(4);
        assert_eq!(cg(&z4, &[(0, 2)]).unwrap().to_string(), "[[0,2],[1,3]]");
        assert_eq!(cg(&z4, &[(0, 1)]).unwrap(), Partition::total(4));
        assert!(matches!(cg(&z4, &[(0, 4)]), Err(Error::RangeViolation(_))));
    }

    #[test]
    fn con_z4_and_z12() {
        let l = con_lattice(&corpus::zn(4));
        assert_eq!(l.len(), 3);
        assert_eq!(l.delta(), 0);
        assert_eq!(l.nabla(), 2);
        assert_eq!(l.get(1).to_string(), "[[0,2],[1,3]]");
        assert!(l.is_modular());
        let l12 = con_lattice(&corpus::zn(12));
        assert_eq!(l12.len(), 6);
        assert!(l12.lattice().is_distributive());
    }

    #[test]
    fn matrix_ring_is_simple() {
        let l = con_lattice(&corpus::m2z2());
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn bare_set_is_not_modular() {
        let set = FiniteAlgebra::new("set4", 4, Vec::<Operation>::new(), vec![]).unwrap();
        let l = con_lattice(&set);
        assert_eq!(l.len(), 15);
        let w = l.pentagon().expect("partition lattice of a 4-set has a pentagon");
        let lat = l.lattice();
        assert!(lat.lt(w[1], w[2]));
        assert_eq!(lat.join(w[1], w[3]), lat.join(w[2], w[3]));
        assert_eq!(lat.meet(w[1], w[3]), lat.meet(w[2], w[3]));
    }

    #[test]
    fn join_and_meet_are_partition_operations() {
        let a = corpus::t2z2();
        let l = con_lattice(&a);
        for i in 0..l.len() {
            for j in 0..l.len() {
                let (p, q) = (l.get(i), l.get(j));
                let pairs: Vec<(usize, usize)> = p.pairs().chain(q.pairs()).collect();
                assert_eq!(l.get(l.lattice().join(i, j)), &cg(&a, &pairs).unwrap());
                assert_eq!(l.get(l.lattice().meet(i, j)), &p.meet(q));
            }
        }
    }

    #[test]
    fn every_element_is_join_of_principals() {
        for a in [corpus::zn(12), corpus::t2z2(), corpus::pentagon_lattice()] {
            let l = con_lattice(&a);
            for i in 0..l.len() {
                let below = l.principal().iter().copied().filter(|&p| l.lattice().leq(p, i));
                assert_eq!(l.lattice().join_all(below), i);
            }
        }
    }

    #[test]
    fn one_element_algebra() {
        let one = crate::algebra::trivial_like(&corpus::zn(2));
        let l = con_lattice(&one);
        assert_eq!(l.len(), 1);
        assert_eq!(l.delta(), l.nabla());
    }
}
