//! Independent oracles for the integration tests. Nothing here calls the
//! library's congruence, commutator, spectrum or reticulation code: every
//! answer is recomputed from the raw operation tables.

#![allow(dead_code)]

use std::collections::BTreeSet;

use retic_core::algebra::FiniteAlgebra;
use retic_core::partition::Partition;

/// A partition as a restricted growth string: `labels[x]` is the block
/// number of `x`, blocks numbered by first occurrence.
pub type Labels = Vec<usize>;

pub fn canon(labels: &[usize]) -> Labels {
    let mut seen: Vec<(usize, usize)> = Vec::new();
    labels
        .iter()
        .map(|&l| match seen.iter().find(|(old, _)| *old == l) {
            Some(&(_, new)) => new,
            None => {
                seen.push((l, seen.len()));
                seen.len() - 1
            }
        })
        .collect()
}

pub fn from_partition(p: &Partition) -> Labels {
    canon(&(0..p.len()).map(|x| p.rep(x)).collect::<Vec<_>>())
}

pub fn leq(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|x| (0..x).all(|y| a[x] != a[y] || b[x] == b[y]))
}

pub fn meet(a: &[usize], b: &[usize]) -> Labels {
    canon(&a.iter().zip(b).map(|(&x, &y)| x * a.len() + y).collect::<Vec<_>>())
}

fn args_of(mut idx: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

fn eval(table: &[usize], n: usize, args: &[usize]) -> usize {
    table[args.iter().fold(0, |acc, &a| acc * n + a)]
}

/// Compatibility, one coordinate at a time.
pub fn compatible(a: &FiniteAlgebra, labels: &[usize]) -> bool {
    let n = a.size();
    a.ops().iter().filter(|op| op.arity > 0).all(|op| {
        let total = n.pow(op.arity as u32);
        (0..total).all(|idx| {
            let args = args_of(idx, n, op.arity);
            let v = eval(op.table(), n, &args);
            (0..op.arity).all(|i| {
                (0..n).filter(|&y| labels[y] == labels[args[i]]).all(|y| {
                    let mut other = args.clone();
                    other[i] = y;
                    labels[eval(op.table(), n, &other)] == labels[v]
                })
            })
        })
    })
}

/// Every compatible partition, by backtracking over restricted growth
/// strings; unary and binary operations prune partial assignments.
pub fn congruences(a: &FiniteAlgebra) -> Vec<Labels> {
    let n = a.size();
    let small: Vec<(usize, &[usize])> = a
        .ops()
        .iter()
        .filter(|op| op.arity == 1 || op.arity == 2)
        .map(|op| (op.arity, op.table()))
        .collect();
    let consistent = |labels: &[usize], k: usize| {
        // every constraint whose elements are all among 0..=k
        let same = |x: usize, y: usize| x > k || y > k || labels[x] == labels[y];
        (0..k).filter(|&x| labels[x] == labels[k]).all(|x| {
            small.iter().all(|&(arity, t)| {
                if arity == 1 {
                    same(t[x], t[k])
                } else {
                    (0..=k).all(|z| same(t[x * n + z], t[k * n + z]) && same(t[z * n + x], t[z * n + k]))
                }
            })
        })
    };
    let mut out = Vec::new();
    let mut labels = vec![0; n];
    fn go(
        k: usize,
        blocks: usize,
        labels: &mut Vec<usize>,
        out: &mut Vec<Labels>,
        a: &FiniteAlgebra,
        consistent: &dyn Fn(&[usize], usize) -> bool,
    ) {
        if k == labels.len() {
            if compatible(a, labels) {
                out.push(labels.clone());
            }
            return;
        }
        for b in 0..=blocks {
            labels[k] = b;
            if consistent(labels, k) {
                go(k + 1, blocks.max(b + 1), labels, out, a, consistent);
            }
        }
    }
    if n > 0 {
        go(1, 1, &mut labels, &mut out, a, &consistent);
    }
    out
}

fn constant(a: &FiniteAlgebra, name: &str) -> usize {
    a.op(name).and_then(|op| op.constant()).expect("ring constant")
}

/// `[α, β]` in a ring: the congruence of the ideal `IJ + JI`, where `I` and
/// `J` are the zero classes of `α` and `β`.
pub fn ring_commutator(a: &FiniteAlgebra, alpha: &[usize], beta: &[usize]) -> Labels {
    let n = a.size();
    let zero = constant(a, "0");
    let add = a.op("+").expect("ring +").table();
    let neg = a.op("-").expect("ring -").table();
    let mul = a.op("*").expect("ring *").table();
    let i: Vec<usize> = (0..n).filter(|&x| alpha[x] == alpha[zero]).collect();
    let j: Vec<usize> = (0..n).filter(|&x| beta[x] == beta[zero]).collect();
    let mut ideal: BTreeSet<usize> = BTreeSet::from([zero]);
    for &x in &i {
        for &y in &j {
            ideal.insert(mul[x * n + y]);
            ideal.insert(mul[y * n + x]);
        }
    }
    loop {
        let sums: Vec<usize> = ideal
            .iter()
            .flat_map(|&x| ideal.iter().map(move |&y| add[x * n + y]))
            .collect();
        let before = ideal.len();
        ideal.extend(sums);
        if ideal.len() == before {
            break;
        }
    }
    // coset labels: x ~ y iff x - y ∈ ideal
    let mut labels = vec![usize::MAX; n];
    for x in 0..n {
        if labels[x] == usize::MAX {
            for y in 0..n {
                if ideal.contains(&add[x * n + neg[y]]) {
                    labels[y] = x;
                }
            }
        }
    }
    canon(&labels)
}

/// A congruence lattice with its commutator, from the oracles alone.
pub struct OracleLattice {
    pub elements: Vec<Labels>,
    /// `comm[i][j]`: index of `[α_i, α_j]`.
    pub comm: Vec<Vec<usize>>,
}

impl OracleLattice {
    pub fn new(elements: Vec<Labels>, comm: impl Fn(&[usize], &[usize]) -> Labels) -> Self {
        let index = |p: &Labels| {
            elements
                .iter()
                .position(|q| q == p)
                .expect("commutator is a congruence")
        };
        let comm = elements
            .iter()
            .map(|a| elements.iter().map(|b| index(&comm(a, b))).collect())
            .collect();
        OracleLattice { elements, comm }
    }

    pub fn ring(a: &FiniteAlgebra) -> Self {
        OracleLattice::new(congruences(a), |x, y| ring_commutator(a, x, y))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        leq(&self.elements[a], &self.elements[b])
    }

    pub fn top(&self) -> usize {
        (0..self.len())
            .find(|&t| (0..self.len()).all(|x| self.leq(x, t)))
            .unwrap()
    }

    pub fn bottom(&self) -> usize {
        (0..self.len())
            .find(|&b| (0..self.len()).all(|x| self.leq(b, x)))
            .unwrap()
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        least(self.len(), |x, y| self.leq(x, y), |x| self.leq(a, x) && self.leq(b, x))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        least(self.len(), |x, y| self.leq(y, x), |x| self.leq(x, a) && self.leq(x, b))
    }

    pub fn primes(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&p| {
                p != self.top()
                    && (0..n).all(|a| (0..n).all(|b| !self.leq(self.comm[a][b], p) || self.leq(a, p) || self.leq(b, p)))
            })
            .collect()
    }

    pub fn radical(&self, a: usize) -> usize {
        self.primes()
            .into_iter()
            .filter(|&p| self.leq(a, p))
            .fold(self.top(), |acc, p| self.meet(acc, p))
    }

    /// Complemented elements.
    pub fn center(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&a| (0..n).any(|b| self.join(a, b) == self.top() && self.meet(a, b) == self.bottom()))
            .collect()
    }

    /// The distinct radicals of all elements, i.e. the reticulation of a
    /// finite algebra (every congruence is compact), ordered by inclusion.
    pub fn reticulation(&self) -> Poset {
        let mut radicals: Vec<usize> = (0..self.len()).map(|a| self.radical(a)).collect();
        radicals.sort_unstable();
        radicals.dedup();
        let leq = radicals
            .iter()
            .map(|&a| radicals.iter().map(|&b| self.leq(a, b)).collect())
            .collect();
        Poset { leq }
    }
}

fn least(n: usize, leq: impl Fn(usize, usize) -> bool, ok: impl Fn(usize) -> bool) -> usize {
    let cands: Vec<usize> = (0..n).filter(|&x| ok(x)).collect();
    *cands
        .iter()
        .find(|&&x| cands.iter().all(|&y| leq(x, y)))
        .expect("bound exists")
}

/// A finite partial order given by its order matrix.
pub struct Poset {
    pub leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        least(self.len(), |x, y| self.leq[x][y], |x| self.leq[a][x] && self.leq[b][x])
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        least(self.len(), |x, y| self.leq[y][x], |x| self.leq[x][a] && self.leq[x][b])
    }

    pub fn top(&self) -> usize {
        (0..self.len())
            .find(|&t| (0..self.len()).all(|x| self.leq[x][t]))
            .unwrap()
    }

    pub fn bottom(&self) -> usize {
        (0..self.len())
            .find(|&b| (0..self.len()).all(|x| self.leq[b][x]))
            .unwrap()
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&a| (0..n).any(|b| self.join(a, b) == self.top() && self.meet(a, b) == self.bottom()))
            .collect()
    }
}

/// Every ideal of a lattice given by its order matrix: nonempty subsets
/// that are down-closed and closed under binary joins (brute force).
pub fn ideals(leq: &[Vec<bool>]) -> Vec<BTreeSet<usize>> {
    let n = leq.len();
    assert!(n <= 16, "brute-force ideal enumeration is exponential");
    let p = Poset { leq: leq.to_vec() };
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect::<BTreeSet<usize>>())
        .filter(|set| {
            set.iter().all(|&x| (0..n).all(|y| !leq[y][x] || set.contains(&y)))
                && set.iter().all(|&x| set.iter().all(|&y| set.contains(&p.join(x, y))))
        })
        .collect()
}

/// Prime ideals: proper, and `x ∧ y ∈ I` implies `x ∈ I` or `y ∈ I`.
pub fn prime_ideals(leq: &[Vec<bool>]) -> Vec<BTreeSet<usize>> {
    let n = leq.len();
    let p = Poset { leq: leq.to_vec() };
    ideals(leq)
        .into_iter()
        .filter(|i| {
            i.len() < n
                && (0..n).all(|x| (0..n).all(|y| !i.contains(&p.meet(x, y)) || i.contains(&x) || i.contains(&y)))
        })
        .collect()
}
