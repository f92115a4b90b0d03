//! Primes, radicals, the Zariski topology, and morphism adjoints.

use serde::Serialize;

use crate::algebra::Morphism;
use crate::congruence::{cg, CongruenceLattice};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::structure::CommutatorLattice;
use crate::topology::{FiniteTopology, Mask};

/// `φ ≠ ∇` and `[α,β] ≤ φ ⇒ α ≤ φ ∨ β ≤ φ` for all compact `α, β`.
pub fn is_prime<S: CommutatorLattice + ?Sized>(s: &S, phi: usize) -> bool {
    prime_over(s, phi, s.compact())
}

/// The same test quantified over every element.
pub fn is_prime_full<S: CommutatorLattice + ?Sized>(s: &S, phi: usize) -> bool {
    let all: Vec<usize> = (0..s.len()).collect();
    prime_over(s, phi, &all)
}

fn prime_over<S: CommutatorLattice + ?Sized>(s: &S, phi: usize, range: &[usize]) -> bool {
    phi != s.top()
        && range.iter().all(|&a| {
            range
                .iter()
                .all(|&b| !s.leq(s.commutator(a, b), phi) || s.leq(a, phi) || s.leq(b, phi))
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    /// `Spec`, ascending element indices.
    pub primes: Vec<usize>,
    /// `Max`: the coatoms.
    pub maximals: Vec<usize>,
    /// `Min`: primes with no prime strictly below.
    pub minimals: Vec<usize>,
    /// `ρ(θ)` for every element `θ`; `∇` when no prime lies above `θ`.
    pub radical: Vec<usize>,
    pub semiprime: bool,
    /// `RCon`: the radical elements, ascending.
    pub radicals: Vec<usize>,
}

impl SpectrumReport {
    pub fn rho(&self, a: usize) -> usize {
        self.radical[a]
    }

    pub fn is_prime(&self, a: usize) -> bool {
        self.primes.binary_search(&a).is_ok()
    }

    /// `V(θ)` as a mask over `primes`.
    pub fn v_mask<S: CommutatorLattice + ?Sized>(&self, s: &S, theta: usize) -> Mask {
        self.primes
            .iter()
            .enumerate()
            .filter(|&(_, &p)| s.leq(theta, p))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// `D(θ) = Spec − V(θ)` as a mask over `primes`.
    pub fn d_mask<S: CommutatorLattice + ?Sized>(&self, s: &S, theta: usize) -> Mask {
        let full = if self.primes.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.primes.len()) - 1
        };
        full & !self.v_mask(s, theta)
    }

    /// The frame join on `RCon`: `ρ(a ∨ b)`.
    pub fn frame_join<S: CommutatorLattice + ?Sized>(&self, s: &S, a: usize, b: usize) -> usize {
        self.radical[s.join(a, b)]
    }
}

pub fn spectrum<S: CommutatorLattice + ?Sized>(s: &S) -> SpectrumReport {
    let n = s.len();
    let primes: Vec<usize> = (0..n).filter(|&p| is_prime(s, p)).collect();
    let top = s.top();
    let maximals: Vec<usize> = (0..n)
        .filter(|&a| a != top && (0..n).all(|b| b == a || b == top || !s.leq(a, b)))
        .collect();
    let minimals: Vec<usize> = primes
        .iter()
        .copied()
        .filter(|&p| !primes.iter().any(|&q| q != p && s.leq(q, p)))
        .collect();
    let radical: Vec<usize> = (0..n)
        .map(|a| s.lattice().meet_all(primes.iter().copied().filter(|&p| s.leq(a, p))))
        .collect();
    let semiprime = radical[s.bottom()] == s.bottom();
    let radicals: Vec<usize> = (0..n).filter(|&a| radical[a] == a).collect();
    SpectrumReport {
        primes,
        maximals,
        minimals,
        radical,
        semiprime,
        radicals,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Zariski {
    pub topology: FiniteTopology,
    /// `D(θ)` for every element, as masks over the primes.
    pub d: Vec<Mask>,
    /// Set when `{D(α) : α ∈ K}` does not generate the topology.
    pub basis_violation: Option<String>,
    /// Failures of `D(α) ∩ D(β) = D([α,β])` or `D(α) ∪ D(β) = D(α ∨ β)`.
    pub identity_failures: Vec<String>,
}

/// `Spec` with opens generated by all `D(θ)` and designated basis
/// `{D(α) : α ∈ K}`.
pub fn zariski<S: CommutatorLattice + ?Sized>(s: &S, report: &SpectrumReport) -> Result<Zariski> {
    let n = s.len();
    let labels: Vec<String> = report.primes.iter().map(|&p| s.label(p)).collect();
    let d: Vec<Mask> = (0..n).map(|t| report.d_mask(s, t)).collect();
    let designated: Vec<Mask> = s.compact().iter().map(|&a| d[a]).collect();
    let topology = FiniteTopology::generated(labels, &d, designated)?;
    let mut identity_failures = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if d[a] & d[b] != d[s.commutator(a, b)] {
                identity_failures.push(format!(
                    "D({}) ∩ D({}) ≠ D([{}, {}])",
                    s.label(a),
                    s.label(b),
                    s.label(a),
                    s.label(b)
                ));
            }
            if d[a] | d[b] != d[s.join(a, b)] {
                identity_failures.push(format!(
                    "D({}) ∪ D({}) ≠ D({} ∨ {})",
                    s.label(a),
                    s.label(b),
                    s.label(a),
                    s.label(b)
                ));
            }
        }
    }
    let basis_violation = (!topology.designated_generates())
        .then(|| "the sets D(α), α compact, do not form a basis of the Zariski topology".to_string());
    Ok(Zariski {
        topology,
        d,
        basis_violation,
        identity_failures,
    })
}

impl Zariski {
    /// Converts a basis violation into [`Error::BasisViolation`].
    pub fn require_basis(&self) -> Result<()> {
        match &self.basis_violation {
            Some(msg) => Err(Error::BasisViolation(msg.clone())),
            None => Ok(()),
        }
    }
}

/// `u*` and `u•` between the congruence lattices of a morphism's source and
/// target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Adjoints {
    /// target congruence index -> source congruence index (preimage)
    pub star: Vec<usize>,
    /// source congruence index -> target congruence index (generated image)
    pub bullet: Vec<usize>,
    /// `u•(α) ≤ β ⇔ α ≤ u*(β)` for all pairs.
    pub adjunction_holds: bool,
}

pub fn morphism_adjoints(u: &Morphism, con_a: &CongruenceLattice, con_b: &CongruenceLattice) -> Result<Adjoints> {
    let na = u.source().size();
    let star = con_b
        .elements()
        .iter()
        .map(|beta| {
            let labels: Vec<usize> = (0..na).map(|x| beta.rep(u.apply(x))).collect();
            let pre = Partition::from_labels(&labels);
            con_a
                .index_of(&pre)
                .ok_or_else(|| Error::NotACongruence(format!("preimage {pre} of {beta} is not a congruence")))
        })
        .collect::<Result<Vec<_>>>()?;
    let bullet = con_a
        .elements()
        .iter()
        .map(|alpha| {
            let pairs: Vec<(usize, usize)> = alpha.pairs().map(|(x, y)| (u.apply(x), u.apply(y))).collect();
            let img = cg(u.target(), &pairs)?;
            Ok(con_b.index_of(&img).expect("cg yields a congruence"))
        })
        .collect::<Result<Vec<_>>>()?;
    let (la, lb) = (con_a.lattice(), con_b.lattice());
    let adjunction_holds =
        (0..con_a.len()).all(|a| (0..con_b.len()).all(|b| lb.leq(bullet[a], b) == la.leq(a, star[b])));
    Ok(Adjoints {
        star,
        bullet,
        adjunction_holds,
    })
}

/// `u*(ψ)` is prime for every prime `ψ` of the target.
pub fn is_admissible(adj: &Adjoints, spec_a: &SpectrumReport, spec_b: &SpectrumReport) -> bool {
    spec_b.primes.iter().all(|&psi| spec_a.is_prime(adj.star[psi]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_morphism, quotient};
    use crate::corpus;
    use crate::structure::AlgebraLattice;

    #[test]
    fn z4_spectrum() {
        let s = AlgebraLattice::new(corpus::zn(4)).unwrap();
        let r = spectrum(&s);
        assert_eq!(r.primes, vec![1]);
        assert_eq!(r.maximals, vec![1]);
        assert_eq!(r.minimals, vec![1]);
        assert_eq!(r.rho(0), 1);
        assert_eq!(r.rho(2), 2);
        assert!(!r.semiprime);
    }

    #[test]
    fn z12_spectrum_and_topology() {
        let s = AlgebraLattice::new(corpus::zn(12)).unwrap();
        let r = spectrum(&s);
        assert_eq!(r.primes.len(), 2);
        assert_eq!(r.maximals, r.primes);
        assert_eq!(r.minimals, r.primes);
        let six = Partition::from_labels(&(0..12).map(|x| x % 6).collect::<Vec<_>>());
        assert_eq!(s.con().get(r.rho(0)), &six);
        let z = zariski(&s, &r).unwrap();
        assert!(z.topology.is_discrete());
        assert!(z.identity_failures.is_empty());
        assert!(z.basis_violation.is_none());
    }

    #[test]
    fn matrix_ring_delta_is_prime() {
        let s = AlgebraLattice::new(corpus::m2z2()).unwrap();
        let r = spectrum(&s);
        assert_eq!(r.primes, vec![0]);
        assert!(r.semiprime);
    }

    #[test]
    fn lax_chain_zariski() {
        let s = corpus::lax_chain();
        let r = spectrum(&s);
        assert_eq!(r.primes, vec![0, 2]);
        let z = zariski(&s, &r).unwrap();
        // points Δ=bit0, b=bit1; D(∇)={Δ,b}, D(b)=D(a)={Δ}, D(Δ)=∅
        assert_eq!(z.d, vec![0b00, 0b01, 0b01, 0b11]);
        assert_eq!(z.topology.opens().unwrap(), &[0b00, 0b01, 0b11]);
        assert!(z.topology.is_t0());
    }

    #[test]
    fn reduction_z12_to_z4_is_admissible() {
        let (z12, z4) = (corpus::zn(12), corpus::zn(4));
        let map: Vec<usize> = (0..12).map(|x| x % 4).collect();
        let u = check_morphism(&map, &z12, &z4).unwrap();
        let (a, b) = (AlgebraLattice::new(z12).unwrap(), AlgebraLattice::new(z4).unwrap());
        let adj = morphism_adjoints(&u, a.con(), b.con()).unwrap();
        assert!(adj.adjunction_holds);
        assert_eq!(adj.star[b.con().nabla()], a.con().nabla());
        assert!(is_admissible(&adj, &spectrum(&a), &spectrum(&b)));
    }

    #[test]
    fn projection_bullet_collapses() {
        let z4 = corpus::zn(4);
        let l = AlgebraLattice::new(z4.clone()).unwrap();
        let (q, p) = quotient(&z4, l.con().get(1)).unwrap();
        let lq = AlgebraLattice::new(q).unwrap();
        let adj = morphism_adjoints(&p, l.con(), lq.con()).unwrap();
        assert_eq!(adj.bullet[1], lq.con().delta());
        let id = Morphism::identity(&z4);
        let adj = morphism_adjoints(&id, l.con(), l.con()).unwrap();
        assert_eq!(adj.star, vec![0, 1, 2]);
        assert_eq!(adj.bullet, vec![0, 1, 2]);
    }
}
