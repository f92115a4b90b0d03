//! Finite bounded lattices given by an order matrix.
//!
//! Elements are indices `0..len`. Join and meet tables are derived from the
//! order by least-upper-bound / greatest-lower-bound search, so a poset that
//! is not a lattice is rejected at construction.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds a lattice from a reflexive, antisymmetric, transitive order
    /// matrix. `leq[a][b]` means `a <= b`.
    pub fn from_order(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if n == 0 {
            return Err(Error::LatticeLawViolation("empty lattice".into()));
        }
        if leq.iter().any(|row| row.len() != n) {
            return Err(Error::LatticeLawViolation("order matrix is not square".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::LatticeLawViolation(format!("order not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::LatticeLawViolation(format!(
                        "order not antisymmetric at ({a}, {b})"
                    )));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::LatticeLawViolation(format!(
                            "order not transitive at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                let ub: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
                let lub = ub.iter().copied().find(|&c| ub.iter().all(|&d| leq[c][d]));
                let lb: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
                let glb = lb.iter().copied().find(|&c| lb.iter().all(|&d| leq[d][c]));
                let (Some(j), Some(m)) = (lub, glb) else {
                    return Err(Error::LatticeLawViolation(format!(
                        "elements {a} and {b} have no {}",
                        if lub.is_none() { "join" } else { "meet" }
                    )));
                };
                join[a][b] = j;
                join[b][a] = j;
                meet[a][b] = m;
                meet[b][a] = m;
            }
        }
        let bottom = (0..n)
            .find(|&a| (0..n).all(|b| leq[a][b]))
            .expect("finite lattice has a bottom");
        let top = (0..n)
            .find(|&a| (0..n).all(|b| leq[b][a]))
            .expect("finite lattice has a top");
        Ok(FiniteLattice {
            leq,
            join,
            meet,
            bottom,
            top,
        })
    }

    /// Takes the reflexive-transitive closure of the given relation first.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::RangeViolation(format!("order pair ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_order(leq)
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn order_matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.leq(x, a)).collect()
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn complements(&self, a: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| self.join(a, b) == self.top && self.meet(a, b) == self.bottom)
            .collect()
    }

    /// Elements that have at least one complement, ascending.
    pub fn complemented(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| !self.complements(a).is_empty()).collect()
    }

    /// First triple violating `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// A pentagon sublattice `[bottom, low, high, side, top]` with
    /// `low < high`, `low ∨ side = high ∨ side = top` and
    /// `low ∧ side = high ∧ side = bottom`, if one exists.
    pub fn pentagon(&self) -> Option<[usize; 5]> {
        let n = self.len();
        for low in 0..n {
            for high in 0..n {
                if !self.lt(low, high) {
                    continue;
                }
                for side in 0..n {
                    if self.leq(side, high) || self.leq(low, side) {
                        continue;
                    }
                    let j = self.join(low, side);
                    let m = self.meet(high, side);
                    if j == self.join(high, side) && m == self.meet(low, side) {
                        return Some([m, low, high, side, j]);
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.pentagon().is_none()
    }

    /// Searches for an order isomorphism `self -> other`; returns the image
    /// of each element of `self`.
    pub fn isomorphism_to(&self, other: &FiniteLattice) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |l: &FiniteLattice, a: usize| {
            let below = (0..l.len()).filter(|&x| l.leq(x, a)).count();
            let above = (0..l.len()).filter(|&x| l.leq(a, x)).count();
            (below, above)
        };
        let sig_a: Vec<_> = (0..n).map(|a| sig(self, a)).collect();
        let sig_b: Vec<_> = (0..n).map(|b| sig(other, b)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (sig_a[a].0, a));
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        #[allow(clippy::too_many_arguments)]
        fn search(
            k: usize,
            order: &[usize],
            src: &FiniteLattice,
            dst: &FiniteLattice,
            sig_a: &[(usize, usize)],
            sig_b: &[(usize, usize)],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let a = order[k];
            for b in 0..dst.len() {
                if used[b] || sig_a[a] != sig_b[b] {
                    continue;
                }
                let consistent = order[..k]
                    .iter()
                    .all(|&x| src.leq(x, a) == dst.leq(map[x], b) && src.leq(a, x) == dst.leq(b, map[x]));
                if !consistent {
                    continue;
                }
                map[a] = b;
                used[b] = true;
                if search(k + 1, order, src, dst, sig_a, sig_b, map, used) {
                    return true;
                }
                used[b] = false;
                map[a] = usize::MAX;
            }
            false
        }
        if search(0, &order, self, other, &sig_a, &sig_b, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    /// Direct product, element `(a, b)` encoded as `a * other.len() + b`.
    pub fn product(&self, other: &FiniteLattice) -> FiniteLattice {
        let (n, m) = (self.len(), other.len());
        let mut leq = vec![vec![false; n * m]; n * m];
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        leq[a * m + b][c * m + d] = self.leq(a, c) && other.leq(b, d);
                    }
                }
            }
        }
        FiniteLattice::from_order(leq).expect("product of lattices is a lattice")
    }

    /// A chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> FiniteLattice {
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        FiniteLattice::from_order(leq).expect("chain is a lattice")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FiniteLattice {
        // 0 < a, b, c < 1
        FiniteLattice::from_relation(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    fn pentagon() -> FiniteLattice {
        // 0 < a < c < 1, 0 < b < 1
        FiniteLattice::from_relation(5, &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)]).unwrap()
    }

    #[test]
    fn chain_is_distributive() {
        let c = FiniteLattice::chain(4);
        assert!(c.is_distributive());
        assert_eq!(c.covers(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(c.complemented(), vec![0, 3]);
    }

    #[test]
    fn diamond_is_modular_not_distributive() {
        let m3 = diamond();
        assert!(m3.is_modular());
        assert!(!m3.is_distributive());
    }

    #[test]
    fn pentagon_detected() {
        let n5 = pentagon();
        let w = n5.pentagon().unwrap();
        assert_eq!(w, [0, 1, 3, 2, 4]);
    }

    #[test]
    fn non_lattice_rejected() {
        // two incomparable maximal elements
        let err = FiniteLattice::from_relation(3, &[(0, 1), (0, 2)]).unwrap_err();
        assert!(matches!(err, Error::LatticeLawViolation(_)));
    }

    #[test]
    fn product_of_chains_is_square() {
        let sq = FiniteLattice::chain(2).product(&FiniteLattice::chain(2));
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.complemented().len(), 4);
        assert!(sq.isomorphism_to(&diamond()).is_none());
        assert!(sq.isomorphism_to(&sq.clone()).is_some());
    }
}
