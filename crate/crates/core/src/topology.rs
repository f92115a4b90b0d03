//! Finite topological spaces on at most 64 points.
//!
//! Subsets are `u64` bit masks. A space is given by a generating family of
//! open sets; the opens are all unions of finite intersections of
//! generators. The open-set family is materialized only for spaces with at
//! most [`MATERIALIZE_LIMIT`] points; larger spaces decide membership through
//! the intersection-closed base.

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_POINTS: usize = 64;
pub const MATERIALIZE_LIMIT: usize = 16;

pub type Mask = u64;

fn full_mask(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn points_of(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| m >> i & 1 == 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteTopology {
    labels: Vec<String>,
    /// Generators closed under finite intersection, including the full set.
    base: Vec<Mask>,
    /// The basis the space was presented with.
    designated: Vec<Mask>,
    #[serde(skip_serializing_if = "Option::is_none")]
    opens: Option<Vec<Mask>>,
}

impl FiniteTopology {
    /// The topology generated by `generators`; `designated` is recorded as
    /// the claimed basis and is not required to generate.
    pub fn generated(labels: Vec<String>, generators: &[Mask], designated: Vec<Mask>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints(n));
        }
        let full = full_mask(n);
        if let Some(&g) = generators.iter().chain(&designated).find(|&&g| g & !full != 0) {
            return Err(Error::RangeViolation(format!(
                "open set {g:#b} has points outside the space"
            )));
        }
        let mut base: Vec<Mask> = generators.to_vec();
        base.push(full);
        base.sort_unstable();
        base.dedup();
        loop {
            let before = base.len();
            let mut fresh = Vec::new();
            for (i, &a) in base.iter().enumerate() {
                for &b in &base[i + 1..] {
                    fresh.push(a & b);
                }
            }
            base.extend(fresh);
            base.sort_unstable();
            base.dedup();
            if base.len() == before {
                break;
            }
        }
        let mut designated = designated;
        designated.sort_unstable();
        designated.dedup();
        let mut t = FiniteTopology {
            labels,
            base,
            designated,
            opens: None,
        };
        if n <= MATERIALIZE_LIMIT {
            let opens = (0..=full).filter(|&u| t.is_open_lazy(u)).collect();
            t.opens = Some(opens);
        }
        Ok(t)
    }

    /// Every subset open.
    pub fn discrete(labels: Vec<String>) -> Result<Self> {
        let gens: Vec<Mask> = (0..labels.len()).map(|i| 1 << i).collect();
        FiniteTopology::generated(labels, &gens, gens.clone())
    }

    /// Only `∅` and the full set open.
    pub fn indiscrete(labels: Vec<String>) -> Result<Self> {
        FiniteTopology::generated(labels, &[], Vec::new())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn full(&self) -> Mask {
        full_mask(self.len())
    }

    pub fn designated_basis(&self) -> &[Mask] {
        &self.designated
    }

    /// The open-set family, ascending, if materialized.
    pub fn opens(&self) -> Option<&[Mask]> {
        self.opens.as_deref()
    }

    fn is_open_lazy(&self, u: Mask) -> bool {
        let covered = self.base.iter().filter(|&&b| b & !u == 0).fold(0, |acc, &b| acc | b);
        covered == u
    }

    pub fn is_open(&self, u: Mask) -> bool {
        match &self.opens {
            Some(opens) => opens.binary_search(&u).is_ok(),
            None => u & !self.full() == 0 && self.is_open_lazy(u),
        }
    }

    pub fn is_closed(&self, f: Mask) -> bool {
        f & !self.full() == 0 && self.is_open(self.full() & !f)
    }

    /// Least open set containing point `x`.
    pub fn neighborhood(&self, x: usize) -> Mask {
        self.base
            .iter()
            .filter(|&&b| b >> x & 1 == 1)
            .fold(self.full(), |acc, &b| acc & b)
    }

    /// `cl{x}` = points whose every neighborhood contains `x`.
    pub fn point_closure(&self, x: usize) -> Mask {
        (0..self.len())
            .filter(|&y| self.neighborhood(y) >> x & 1 == 1)
            .fold(0, |acc, y| acc | 1 << y)
    }

    pub fn closure(&self, s: Mask) -> Mask {
        points_of(s).fold(0, |acc, x| acc | self.point_closure(x))
    }

    /// `(x, y)` with `y ∈ cl{x}`, `x ≠ y`: `y` is a specialization of `x`.
    pub fn specialization_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            let cl = self.point_closure(x);
            for y in points_of(cl) {
                if y != x {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Two distinct points that no open set separates, if any.
    pub fn t0_witness(&self) -> Option<(usize, usize)> {
        let nb: Vec<Mask> = (0..self.len()).map(|x| self.neighborhood(x)).collect();
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                if nb[x] >> y & 1 == 1 && nb[y] >> x & 1 == 1 {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_t0(&self) -> bool {
        self.t0_witness().is_none()
    }

    /// Every singleton closed.
    pub fn is_t1(&self) -> bool {
        (0..self.len()).all(|x| self.is_closed(1 << x))
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|x| self.is_open(1 << x))
    }

    /// Distinct points have disjoint neighborhoods.
    pub fn is_hausdorff(&self) -> bool {
        (0..self.len()).all(|x| (x + 1..self.len()).all(|y| self.neighborhood(x) & self.neighborhood(y) == 0))
    }

    /// Has a basis of clopen sets; in a finite space it suffices that every
    /// minimal neighborhood is closed.
    pub fn is_zero_dimensional(&self) -> bool {
        (0..self.len()).all(|x| self.is_closed(self.neighborhood(x)))
    }

    /// All closed sets, ascending, when the opens are materialized.
    pub fn closed_sets(&self) -> Option<Vec<Mask>> {
        let full = self.full();
        self.opens.as_ref().map(|opens| {
            let mut c: Vec<Mask> = opens.iter().map(|&u| full & !u).collect();
            c.sort_unstable();
            c
        })
    }

    /// A nonempty closed set is irreducible iff it is not the union of its
    /// proper closed subsets. Every proper closed subset of `f` is a union
    /// of point closures strictly inside `f`, so only those are collected.
    pub fn is_irreducible(&self, f: Mask) -> bool {
        if f == 0 {
            return false;
        }
        let proper_union = points_of(f)
            .map(|x| self.point_closure(x))
            .filter(|&c| c != f)
            .fold(0, |acc, c| acc | c);
        proper_union != f
    }

    pub fn generic_points(&self, f: Mask) -> Vec<usize> {
        points_of(f).filter(|&x| self.point_closure(x) == f).collect()
    }

    /// Irreducible closed sets without exactly one generic point. Closed
    /// sets are enumerated from the materialized family; otherwise the
    /// candidates are the closures of finite unions of points, which covers
    /// every closed set of a finite space.
    pub fn sobriety_failures(&self) -> Vec<Mask> {
        let candidates: Vec<Mask> = match self.closed_sets() {
            Some(c) => c,
            None => {
                let mut c: Vec<Mask> = (0..self.len()).map(|x| self.point_closure(x)).collect();
                c.sort_unstable();
                c.dedup();
                c
            }
        };
        candidates
            .into_iter()
            .filter(|&f| self.is_irreducible(f) && self.generic_points(f).len() != 1)
            .collect()
    }

    pub fn is_sober(&self) -> bool {
        self.sobriety_failures().is_empty()
    }

    /// Whether the designated basis is a basis of this topology: its sets
    /// are open and every minimal neighborhood is one of them (a basis set
    /// containing `x` inside the least open around `x` must equal it).
    pub fn designated_generates(&self) -> bool {
        self.designated.iter().all(|&d| self.is_open(d))
            && (0..self.len()).all(|x| self.designated.binary_search(&self.neighborhood(x)).is_ok())
    }

    /// The designated basis is closed under binary intersection (the empty
    /// set counts as a union of no basis elements).
    pub fn designated_intersection_closed(&self) -> bool {
        let d = &self.designated;
        d.iter().all(|&a| {
            d.iter().all(|&b| {
                let m = a & b;
                m == 0 || d.binary_search(&m).is_ok()
            })
        })
    }

    /// Subspace on the points of `mask`, reindexed in increasing order.
    pub fn subspace(&self, mask: Mask) -> FiniteTopology {
        let keep: Vec<usize> = points_of(mask & self.full()).collect();
        let restrict = |m: Mask| {
            keep.iter()
                .enumerate()
                .filter(|&(_, &x)| m >> x & 1 == 1)
                .fold(0, |acc, (i, _)| acc | 1 << i)
        };
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        let gens: Vec<Mask> = self.base.iter().map(|&b| restrict(b)).collect();
        let designated = self.designated.iter().map(|&d| restrict(d)).collect();
        FiniteTopology::generated(labels, &gens, designated).expect("subspace has fewer points")
    }

    /// Preimages of open sets under `f` are open.
    pub fn is_continuous_to(&self, f: &[usize], target: &FiniteTopology) -> bool {
        (0..target.len()).all(|y| {
            let nb = target.neighborhood(y);
            let pre = (0..self.len())
                .filter(|&x| nb >> f[x] & 1 == 1)
                .fold(0, |acc, x| acc | 1 << x);
            self.is_open(pre)
        })
    }

    /// `f` is a bijection, continuous, with continuous inverse.
    pub fn is_homeomorphism(&self, f: &[usize], target: &FiniteTopology) -> bool {
        if f.len() != self.len() || target.len() != self.len() {
            return false;
        }
        let mut inv = vec![usize::MAX; self.len()];
        for (x, &y) in f.iter().enumerate() {
            if y >= target.len() || inv[y] != usize::MAX {
                return false;
            }
            inv[y] = x;
        }
        self.is_continuous_to(f, target) && target.is_continuous_to(&inv, self)
    }

    pub fn mask_labels(&self, m: Mask) -> Vec<String> {
        points_of(m).map(|x| self.labels[x].clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    /// Automatic for finite spaces.
    pub compact: bool,
    pub t0: bool,
    pub sober: bool,
    pub designated_generates: bool,
    pub designated_intersection_closed: bool,
    /// `compact ∧ T0 ∧ sober`: in a finite space every open is compact, so
    /// the compact opens form an intersection-closed basis automatically.
    pub spectral: bool,
}

pub fn spectral_space_check(t: &FiniteTopology) -> SpectralReport {
    let t0 = t.is_t0();
    let sober = t.is_sober();
    SpectralReport {
        compact: true,
        t0,
        sober,
        designated_generates: t.designated_generates(),
        designated_intersection_closed: t.designated_intersection_closed(),
        spectral: t0 && sober,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    #[test]
    fn sierpinski() {
        let t = FiniteTopology::generated(labels(2), &[0b01], vec![0b01, 0b11]).unwrap();
        assert_eq!(t.opens().unwrap(), &[0b00, 0b01, 0b11]);
        assert!(t.is_t0());
        assert!(!t.is_t1());
        assert_eq!(t.specialization_edges(), vec![(0, 1)]);
        let r = spectral_space_check(&t);
        assert!(r.spectral && r.designated_generates && r.designated_intersection_closed);
    }

    #[test]
    fn indiscrete_pair_fails_t0() {
        let t = FiniteTopology::indiscrete(labels(2)).unwrap();
        assert_eq!(t.t0_witness(), Some((0, 1)));
        let r = spectral_space_check(&t);
        assert!(!r.t0 && !r.spectral);
        // the whole space is irreducible with two generic points
        assert_eq!(t.sobriety_failures(), vec![0b11]);
    }

    #[test]
    fn discrete_space() {
        let t = FiniteTopology::discrete(labels(3)).unwrap();
        assert!(t.is_t1() && t.is_hausdorff() && t.is_zero_dimensional() && t.is_discrete());
        assert_eq!(t.opens().unwrap().len(), 8);
        assert!(spectral_space_check(&t).spectral);
    }

    #[test]
    fn single_point() {
        let t = FiniteTopology::generated(labels(1), &[], vec![1]).unwrap();
        assert!(spectral_space_check(&t).spectral);
        assert!(t.is_t1());
    }

    #[test]
    fn lazy_matches_materialized() {
        // chain of 3 opens on 20 points is too big to materialize
        let gens = [0b1, 0b11, (1 << 20) - 1];
        let big = FiniteTopology::generated(labels(20), &gens, gens.to_vec()).unwrap();
        assert!(big.opens().is_none());
        assert!(big.is_open(0b11) && !big.is_open(0b10));
        assert!(!big.is_t0());
        let small = FiniteTopology::generated(labels(3), &[0b1, 0b11], vec![]).unwrap();
        assert!(small.opens().is_some());
        assert!(small.is_t0() && small.is_sober());
    }

    #[test]
    fn continuity_and_homeomorphism() {
        let s = FiniteTopology::generated(labels(2), &[0b01], vec![]).unwrap();
        let d = FiniteTopology::discrete(labels(2)).unwrap();
        assert!(d.is_continuous_to(&[0, 1], &s));
        assert!(!s.is_continuous_to(&[0, 1], &d));
        assert!(s.is_homeomorphism(&[0, 1], &s));
        assert!(!s.is_homeomorphism(&[1, 0], &s));
    }

    #[test]
    fn too_many_points() {
        assert_eq!(
            FiniteTopology::indiscrete(labels(65)).unwrap_err(),
            Error::TooManyPoints(65)
        );
    }
}
