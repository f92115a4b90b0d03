//! The reticulation: the closure `C` of the compact elements under join and
//! commutator, the bounded distributive lattice `L = C/≡` of radical classes
//! with its quotient map `λ`, the maps `θ ↦ θ*` and `I ↦ I_*` between the
//! structure and the ideals of `L`, and the property suites built on them.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::commutator::{annihilator, boolean_center, is_hyperarchimedean};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::report::{first_failure, Check, Checker};
use crate::spectrum::{spectrum, zariski, SpectrumReport, Zariski};
use crate::structure::CommutatorLattice;
use crate::topology::{spectral_space_check, FiniteTopology, Mask, SpectralReport};

/// An ideal of `L`, stored extensionally as a set of lattice elements.
pub type Ideal = BTreeSet<usize>;

/// How an element entered `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum Origin {
    Compact,
    Join { left: usize, right: usize },
    Commutator { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CSet {
    /// Ascending element indices.
    pub members: Vec<usize>,
    pub origin: BTreeMap<usize, Origin>,
}

impl CSet {
    pub fn contains(&self, a: usize) -> bool {
        self.origin.contains_key(&a)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The least set containing `K` closed under join and commutator.
pub fn c_closure<S: CommutatorLattice + ?Sized>(s: &S) -> CSet {
    closure_from(s, s.compact())
}

/// The least set containing `seed` closed under join and commutator; seed
/// elements are recorded with origin [`Origin::Compact`].
pub fn closure_from<S: CommutatorLattice + ?Sized>(s: &S, seed: &[usize]) -> CSet {
    let mut origin: BTreeMap<usize, Origin> = seed.iter().map(|&a| (a, Origin::Compact)).collect();
    loop {
        let current: Vec<usize> = origin.keys().copied().collect();
        let mut added = false;
        for &a in &current {
            for &b in &current {
                let steps = [
                    (s.join(a, b), Origin::Join { left: a, right: b }),
                    (s.commutator(a, b), Origin::Commutator { left: a, right: b }),
                ];
                for (c, rule) in steps {
                    if let std::collections::btree_map::Entry::Vacant(e) = origin.entry(c) {
                        e.insert(rule);
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    CSet {
        members: origin.keys().copied().collect(),
        origin,
    }
}

/// `L = C/≡` where `α ≡ β ⇔ ρ(α) = ρ(β)`, ordered by radical containment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reticulation {
    pub cset: CSet,
    /// Members of each class, ascending; classes sorted by radical index.
    pub classes: Vec<Vec<usize>>,
    /// The common radical of each class.
    pub class_radical: Vec<usize>,
    /// Each class is labeled by its least member.
    pub labels: Vec<String>,
    /// `λ` on structure elements; `None` outside `C`.
    pub lambda: Vec<Option<usize>>,
    #[serde(skip)]
    pub lattice: FiniteLattice,
}

pub fn reticulate<S: CommutatorLattice + ?Sized>(s: &S, spec: &SpectrumReport) -> Result<Reticulation> {
    let cset = c_closure(s);
    let radicals: BTreeSet<usize> = cset.members.iter().map(|&a| spec.rho(a)).collect();
    let class_radical: Vec<usize> = radicals.into_iter().collect();
    let position: BTreeMap<usize, usize> = class_radical.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut classes = vec![Vec::new(); class_radical.len()];
    let mut lambda = vec![None; s.len()];
    for &a in &cset.members {
        let x = position[&spec.rho(a)];
        classes[x].push(a);
        lambda[a] = Some(x);
    }
    let labels = classes.iter().map(|c| s.label(c[0])).collect();
    let leq = class_radical
        .iter()
        .map(|&r| class_radical.iter().map(|&q| s.leq(r, q)).collect())
        .collect();
    let lattice = FiniteLattice::from_order(leq)
        .map_err(|e| Error::LatticeLawViolation(format!("reticulation of `{}`: {e}", s.name())))?;
    let ret = Reticulation {
        cset,
        classes,
        class_radical,
        labels,
        lambda,
        lattice,
    };
    if let Some((x, y, z)) = ret.lattice.distributivity_witness() {
        return Err(Error::LatticeLawViolation(format!(
            "reticulation of `{}` is not distributive at ({}, {}, {})",
            s.name(),
            ret.labels[x],
            ret.labels[y],
            ret.labels[z]
        )));
    }
    Ok(ret)
}

impl Reticulation {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `λ(a)`; panics when `a ∉ C`.
    pub fn lambda(&self, a: usize) -> usize {
        self.lambda[a].expect("λ is defined on C only")
    }

    pub fn zero(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn one(&self) -> usize {
        self.lattice.top()
    }

    /// `(x]`.
    pub fn principal(&self, x: usize) -> Ideal {
        self.lattice.down_set(x).into_iter().collect()
    }

    pub fn full(&self) -> Ideal {
        (0..self.len()).collect()
    }

    /// The ideal generated by `set` (`{0}` for the empty set).
    pub fn generated(&self, set: &Ideal) -> Ideal {
        self.principal(self.lattice.join_all(set.iter().copied()))
    }

    /// Nonempty, downward closed and closed under binary join.
    pub fn is_ideal(&self, set: &Ideal) -> bool {
        let l = &self.lattice;
        !set.is_empty()
            && set
                .iter()
                .all(|&x| (0..self.len()).all(|y| !l.leq(y, x) || set.contains(&y)))
            && set.iter().all(|&x| set.iter().all(|&y| set.contains(&l.join(x, y))))
    }

    /// The greatest element of an ideal.
    pub fn generator(&self, ideal: &Ideal) -> usize {
        self.lattice.join_all(ideal.iter().copied())
    }

    pub fn is_prime_ideal(&self, ideal: &Ideal) -> bool {
        let l = &self.lattice;
        self.is_ideal(ideal)
            && !ideal.contains(&self.one())
            && (0..self.len()).all(|x| {
                (0..self.len()).all(|y| !ideal.contains(&l.meet(x, y)) || ideal.contains(&x) || ideal.contains(&y))
            })
    }

    /// `Ann(I) = {x : x ∧ y = 0 for all y ∈ I}`.
    pub fn ann(&self, ideal: &Ideal) -> Ideal {
        let l = &self.lattice;
        (0..self.len())
            .filter(|&x| ideal.iter().all(|&y| l.meet(x, y) == self.zero()))
            .collect()
    }

    pub fn ideal_label(&self, ideal: &Ideal) -> String {
        let members: Vec<&str> = ideal.iter().map(|&x| self.labels[x].as_str()).collect();
        format!("{{{}}}", members.join(", "))
    }
}

/// Every ideal of the lattice by brute force over subsets.
pub fn enumerate_ideals(ret: &Reticulation) -> Vec<Ideal> {
    let n = ret.len();
    (1u64..1 << n)
        .map(|m| (0..n).filter(|&x| m >> x & 1 == 1).collect::<Ideal>())
        .filter(|i| ret.is_ideal(i))
        .collect()
}

/// Largest lattice for which [`ideal_spectrum`] cross-checks its ideals
/// against brute-force enumeration.
pub const ENUMERATION_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeIdeal {
    /// The greatest element.
    pub generator: usize,
    pub members: Vec<usize>,
    pub proper: bool,
    pub prime: bool,
    pub maximal: bool,
    pub minimal_prime: bool,
}

impl LatticeIdeal {
    pub fn set(&self) -> Ideal {
        self.members.iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealSpectrum {
    /// `ideals[x] = (x]`.
    pub ideals: Vec<LatticeIdeal>,
    /// Generators of the prime ideals, ascending; the points of `topology`.
    pub primes: Vec<usize>,
    pub maximals: Vec<usize>,
    pub minimals: Vec<usize>,
    /// Stone topology with basis `D_Id(x)`.
    pub topology: FiniteTopology,
    /// Whether the ideals were cross-checked by brute-force enumeration.
    pub enumeration_checked: bool,
}

impl IdealSpectrum {
    /// `D_Id(I)` for `I = (x]`, as a mask over `primes`.
    pub fn d_id(&self, ret: &Reticulation, x: usize) -> Mask {
        self.primes
            .iter()
            .enumerate()
            .filter(|&(_, &p)| !ret.lattice.leq(x, p))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn prime_position(&self, generator: usize) -> Option<usize> {
        self.primes.binary_search(&generator).ok()
    }
}

pub fn ideal_spectrum(ret: &Reticulation) -> Result<IdealSpectrum> {
    let n = ret.len();
    let l = &ret.lattice;
    let enumeration_checked = n <= ENUMERATION_LIMIT;
    if enumeration_checked {
        let listed: BTreeSet<Ideal> = enumerate_ideals(ret).into_iter().collect();
        let principal: BTreeSet<Ideal> = (0..n).map(|x| ret.principal(x)).collect();
        if listed != principal {
            return Err(Error::LatticeLawViolation(
                "ideal enumeration disagrees with the principal ideals".into(),
            ));
        }
    }
    let prime: Vec<bool> = (0..n).map(|x| ret.is_prime_ideal(&ret.principal(x))).collect();
    let primes: Vec<usize> = (0..n).filter(|&x| prime[x]).collect();
    let maximals: Vec<usize> = (0..n)
        .filter(|&x| x != l.top() && (0..n).all(|y| y == x || y == l.top() || !l.leq(x, y)))
        .collect();
    let minimals: Vec<usize> = primes
        .iter()
        .copied()
        .filter(|&p| !primes.iter().any(|&q| q != p && l.leq(q, p)))
        .collect();
    let ideals = (0..n)
        .map(|x| LatticeIdeal {
            generator: x,
            members: l.down_set(x),
            proper: x != l.top(),
            prime: prime[x],
            maximal: maximals.contains(&x),
            minimal_prime: minimals.contains(&x),
        })
        .collect();
    let labels: Vec<String> = primes.iter().map(|&p| format!("({}]", ret.labels[p])).collect();
    let d: Vec<Mask> = (0..n)
        .map(|x| {
            primes
                .iter()
                .enumerate()
                .filter(|&(_, &p)| !l.leq(x, p))
                .fold(0, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let topology = FiniteTopology::generated(labels, &d, d.clone())?;
    Ok(IdealSpectrum {
        ideals,
        primes,
        maximals,
        minimals,
        topology,
        enumeration_checked,
    })
}

/// Which generators enter `θ*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `{λ(α) : α ∈ K, α ≤ θ}`
    K,
    /// `{λ(α) : α ∈ C, α ≤ θ}`
    C,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K" | "k" => Ok(Variant::K),
            "C" | "c" => Ok(Variant::C),
            _ => Err(Error::Parse(format!("unknown star variant `{s}` (expected K or C)"))),
        }
    }
}

/// Everything the suites need about one structure.
pub struct Analysis<'a, S: CommutatorLattice + ?Sized> {
    pub s: &'a S,
    pub spec: SpectrumReport,
    pub zariski: Zariski,
    pub ret: Reticulation,
    pub ids: IdealSpectrum,
}

impl<'a, S: CommutatorLattice + ?Sized> Analysis<'a, S> {
    pub fn new(s: &'a S) -> Result<Self> {
        let spec = spectrum(s);
        let zariski = zariski(s, &spec)?;
        let ret = reticulate(s, &spec)?;
        let ids = ideal_spectrum(&ret)?;
        Ok(Analysis {
            s,
            spec,
            zariski,
            ret,
            ids,
        })
    }

    /// `{λ(α) : α ∈ K (resp. C), α ≤ θ}` before ideal completion.
    pub fn star_raw(&self, theta: usize, variant: Variant) -> Ideal {
        let from: &[usize] = match variant {
            Variant::K => self.s.compact(),
            Variant::C => &self.ret.cset.members,
        };
        from.iter()
            .filter(|&&a| self.s.leq(a, theta))
            .map(|&a| self.ret.lambda(a))
            .collect()
    }

    /// `θ*`, completed to the ideal it generates.
    pub fn star(&self, theta: usize, variant: Variant) -> Ideal {
        self.ret.generated(&self.star_raw(theta, variant))
    }

    /// The generator of `θ*` (variant C).
    pub fn star_gen(&self, theta: usize) -> usize {
        self.ret.lattice.join_all(self.star_raw(theta, Variant::C))
    }

    /// `I_* = ⋁{α ∈ K : λ(α) ∈ I}`.
    pub fn lower_star(&self, ideal: &Ideal) -> usize {
        self.s.lattice().join_all(
            self.s
                .compact()
                .iter()
                .copied()
                .filter(|&a| ideal.contains(&self.ret.lambda(a))),
        )
    }

    /// `u(φ) = φ*` on `Spec`, as positions into the ideal spectrum's primes;
    /// `None` where `φ*` is not a prime ideal.
    pub fn u_map(&self) -> Vec<Option<usize>> {
        self.spec
            .primes
            .iter()
            .map(|&p| self.ids.prime_position(self.star_gen(p)))
            .collect()
    }

    /// `v(P) = P_*` on prime ideals, as positions into `Spec`; `None` where
    /// `P_*` is not prime.
    pub fn v_map(&self) -> Vec<Option<usize>> {
        self.ids
            .primes
            .iter()
            .map(|&x| {
                self.spec
                    .primes
                    .binary_search(&self.lower_star(&self.ret.principal(x)))
                    .ok()
            })
            .collect()
    }

    pub fn all_ideals(&self) -> Vec<Ideal> {
        self.ids.ideals.iter().map(LatticeIdeal::set).collect()
    }

    fn el(&self, a: usize) -> String {
        self.s.label(a)
    }

    fn il(&self, ideal: &Ideal) -> String {
        self.ret.ideal_label(ideal)
    }

    fn c_pairs(&self) -> Vec<(usize, usize)> {
        let c = &self.ret.cset.members;
        c.iter().flat_map(|&a| c.iter().map(move |&b| (a, b))).collect()
    }

    fn all_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.s.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
    }

    fn checker(&self) -> Checker {
        Checker::new(self.s.is_strict())
    }
}

/// Masks over `Spec` for `Max` and `Min`.
fn mask_of(points: &[usize], subset: &[usize]) -> Mask {
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| subset.contains(p))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Restricts a point map to `dom` → `cod`, reindexing both subspaces.
fn restrict_map(f: &[Option<usize>], dom: Mask, cod: Mask) -> Option<Vec<usize>> {
    let cod_points: Vec<usize> = (0..64).filter(|&i| cod >> i & 1 == 1).collect();
    (0..f.len())
        .filter(|&i| dom >> i & 1 == 1)
        .map(|i| f[i].and_then(|y| cod_points.iter().position(|&c| c == y)))
        .collect()
}

fn subsets_up_to(items: &[usize], exhaustive_limit: usize) -> Vec<Vec<usize>> {
    if items.len() <= exhaustive_limit {
        (1u64..1 << items.len())
            .map(|m| {
                (0..items.len())
                    .filter(|&i| m >> i & 1 == 1)
                    .map(|i| items[i])
                    .collect()
            })
            .collect()
    } else {
        let mut out = Vec::new();
        for (i, &a) in items.iter().enumerate() {
            for (j, &b) in items.iter().enumerate().skip(i) {
                for &c in &items[j..] {
                    out.push(vec![a, b, c]);
                }
            }
        }
        out
    }
}

/// Families of `C` checked for arbitrary-join preservation: every nonempty
/// subset up to this size of `C`, triples beyond it.
pub const JOIN_FAMILY_LIMIT: usize = 16;

/// Behavior of `λ` and of the lattice `L`.
pub fn lambda_suite<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>) -> Vec<Check> {
    let (s, ret) = (an.s, &an.ret);
    let l = &ret.lattice;
    let lam = |a: usize| ret.lambda(a);
    let mut ck = an.checker();
    ck.check_as(
        "c-closure-contains-compacts",
        true,
        first_failure(
            s.compact().iter().copied(),
            |&a| ret.cset.contains(a),
            |a| format!("{} ∉ C", an.el(*a)),
        ),
    );
    ck.check_as(
        "c-closure-closed",
        true,
        first_failure(
            an.c_pairs(),
            |&(a, b)| ret.cset.contains(s.join(a, b)) && ret.cset.contains(s.commutator(a, b)),
            |(a, b)| format!("C not closed at ({}, {})", an.el(*a), an.el(*b)),
        ),
    );
    ck.check_as(
        "c-closure-idempotent",
        true,
        (closure_from(s, &ret.cset.members).members != ret.cset.members).then(|| "re-closing C adds elements".into()),
    );
    ck.check_as(
        "reticulation-distributive",
        true,
        l.distributivity_witness()
            .map(|(x, y, z)| format!("({}, {}, {})", ret.labels[x], ret.labels[y], ret.labels[z])),
    );
    ck.check_as(
        "lambda-surjective",
        true,
        first_failure(
            0..ret.len(),
            |&x| !ret.classes[x].is_empty(),
            |x| format!("class {} has no preimage", ret.labels[*x]),
        ),
    );
    ck.check(
        "lambda-preserves-join",
        first_failure(
            an.c_pairs(),
            |&(a, b)| lam(s.join(a, b)) == l.join(lam(a), lam(b)),
            |(a, b)| format!("λ({0} ∨ {1}) ≠ λ{0} ∨ λ{1}", an.el(*a), an.el(*b)),
        ),
    );
    ck.check(
        "lambda-commutator-to-meet",
        first_failure(
            an.c_pairs(),
            |&(a, b)| lam(s.commutator(a, b)) == l.meet(lam(a), lam(b)),
            |(a, b)| format!("λ[{0}, {1}] ≠ λ{0} ∧ λ{1}", an.el(*a), an.el(*b)),
        ),
    );
    ck.check(
        "lambda-one-iff-nabla",
        first_failure(
            ret.cset.members.iter().copied(),
            |&a| (lam(a) == ret.one()) == (a == s.top()),
            |a| format!("λ({}) = 1 disagrees with {0} = ∇", an.el(*a)),
        ),
    );
    ck.check(
        "lambda-monotone",
        first_failure(
            an.c_pairs(),
            |&(a, b)| !s.leq(a, b) || l.leq(lam(a), lam(b)),
            |(a, b)| format!("{} ≤ {} but λ not ordered", an.el(*a), an.el(*b)),
        ),
    );
    if an.spec.semiprime {
        ck.check(
            "lambda-zero-iff-delta",
            first_failure(
                ret.cset.members.iter().copied(),
                |&a| (lam(a) == ret.zero()) == (a == s.bottom()),
                |a| format!("λ({}) = 0 disagrees with {0} = Δ", an.el(*a)),
            ),
        );
    } else {
        ck.skip("lambda-zero-iff-delta", "not semiprime");
    }
    ck.check(
        "lambda-order-criteria",
        first_failure(
            an.c_pairs(),
            |&(a, b)| {
                let by_lambda = l.leq(lam(a), lam(b));
                let by_radical = s.leq(an.spec.rho(a), an.spec.rho(b));
                let by_primes = an.spec.primes.iter().all(|&p| !s.leq(b, p) || s.leq(a, p));
                by_lambda == by_radical && by_radical == by_primes
            },
            |(a, b)| format!("order criteria disagree on ({}, {})", an.el(*a), an.el(*b)),
        ),
    );
    ck.check(
        "lambda-preserves-joins-of-families",
        first_failure(
            subsets_up_to(&ret.cset.members, JOIN_FAMILY_LIMIT),
            |f| {
                let joined = s.lattice().join_all(f.iter().copied());
                ret.cset.contains(joined) && lam(joined) == l.join_all(f.iter().map(|&a| lam(a)))
            },
            |f| {
                let names: Vec<String> = f.iter().map(|&a| an.el(a)).collect();
                format!("λ(⋁{{{}}}) ≠ ⋁λ", names.join(", "))
            },
        ),
    );
    ck.into_checks()
}

/// The two star maps and the map `u`.
pub fn star_suite<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>) -> Vec<Check> {
    let (s, ret) = (an.s, &an.ret);
    let n = s.len();
    let ideals = an.all_ideals();
    let full = ret.full();
    let star = |t: usize| an.star(t, Variant::C);
    let mut ck = an.checker();
    ck.check(
        "star-of-c-member-is-principal",
        first_failure(
            ret.cset.members.iter().copied(),
            |&a| star(a) == ret.principal(ret.lambda(a)),
            |a| format!("{0}* ≠ (λ{0}]", an.el(*a)),
        ),
    );
    ck.check(
        "star-needs-no-completion",
        first_failure(
            0..n,
            |&t| ret.is_ideal(&an.star_raw(t, Variant::C)),
            |t| format!("{}* is not an ideal before completion", an.el(*t)),
        ),
    );
    let k_by_ideal: Vec<(usize, &Ideal)> = s
        .compact()
        .iter()
        .flat_map(|&a| ideals.iter().map(move |i| (a, i)))
        .collect();
    ck.check(
        "compact-below-lower-star-iff-lambda-in-ideal",
        first_failure(
            k_by_ideal,
            |&(a, i)| s.leq(a, an.lower_star(i)) == i.contains(&ret.lambda(a)),
            |(a, i)| format!("α = {}, I = {}", an.el(*a), an.il(i)),
        ),
    );
    ck.check(
        "congruence-below-star-lower-star",
        first_failure(
            0..n,
            |&t| s.leq(t, an.lower_star(&star(t))),
            |t| format!("{0} ⊄ ({0}*)_*", an.el(*t)),
        ),
    );
    ck.check(
        "ideal-within-lower-star-star",
        first_failure(
            ideals.iter(),
            |i| i.is_subset(&star(an.lower_star(i))),
            |i| format!("I = {} ⊄ (I_*)*", an.il(i)),
        ),
    );
    ck.check(
        "prime-star-lower-star-identity",
        first_failure(
            an.spec.primes.iter().copied(),
            |&p| an.lower_star(&star(p)) == p,
            |p| format!("({0}*)_* ≠ {0}", an.el(*p)),
        ),
    );
    ck.check(
        "ideal-proper-iff-lower-star-proper",
        first_failure(
            ideals.iter(),
            |i| (**i != full) == (an.lower_star(i) != s.top()),
            |i| format!("I = {}", an.il(i)),
        ),
    );
    ck.check(
        "congruence-proper-iff-star-proper",
        first_failure(
            0..n,
            |&t| (t != s.top()) == (star(t) != full),
            |t| format!("θ = {}", an.el(*t)),
        ),
    );
    ck.check(
        "prime-star-is-prime-ideal",
        first_failure(
            an.spec.primes.iter().copied(),
            |&p| ret.is_prime_ideal(&star(p)),
            |p| format!("{}* = {} is not prime", an.el(*p), an.il(&star(*p))),
        ),
    );
    let u = an.u_map();
    let mut images: Vec<usize> = u.iter().flatten().copied().collect();
    images.sort_unstable();
    images.dedup();
    ck.check(
        "u-injective",
        (images.len() != an.spec.primes.len()).then(|| "two primes share φ* (or some φ* is not prime)".into()),
    );
    ck.check(
        "u-preimage-of-basic-open",
        first_failure(
            ideals.iter(),
            |i| {
                let pre = an
                    .spec
                    .primes
                    .iter()
                    .enumerate()
                    .filter(|&(_, &p)| !i.is_subset(&star(p)))
                    .fold(0 as Mask, |acc, (k, _)| acc | 1 << k);
                pre == an.zariski.d[an.lower_star(i)]
            },
            |i| format!("u⁻¹(D_Id({0})) ≠ D({0}_*)", an.il(i)),
        ),
    );
    let u_total: Option<Vec<usize>> = u.iter().copied().collect();
    ck.check(
        "u-continuous",
        match &u_total {
            Some(f) => (!an.zariski.topology.is_continuous_to(f, &an.ids.topology))
                .then(|| "a preimage of an open set is not open".into()),
            None => Some("u does not land in prime ideals".into()),
        },
    );
    let c_by_prime: Vec<(usize, usize)> = ret
        .cset
        .members
        .iter()
        .flat_map(|&a| an.spec.primes.iter().map(move |&p| (a, p)))
        .collect();
    ck.check(
        "lambda-in-prime-star-iff-below",
        first_failure(
            c_by_prime,
            |&(a, p)| star(p).contains(&ret.lambda(a)) == s.leq(a, p),
            |(a, p)| format!("α = {}, φ = {}", an.el(*a), an.el(*p)),
        ),
    );
    let all_by_prime: Vec<(usize, usize)> = (0..n)
        .flat_map(|t| an.spec.primes.iter().map(move |&p| (t, p)))
        .collect();
    ck.check(
        "below-prime-iff-star-contained",
        first_failure(
            all_by_prime,
            |&(t, p)| s.leq(t, p) == star(t).is_subset(&star(p)),
            |(t, p)| format!("θ = {}, φ = {}", an.el(*t), an.el(*p)),
        ),
    );
    ck.into_checks()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedpointReport {
    /// `I = (I_*)*` for every ideal.
    pub holds: bool,
    /// First ideal where it fails.
    pub witness: Option<String>,
    /// `P_*` is prime for every prime ideal `P`.
    pub prime_form_holds: bool,
    pub checks: Vec<Check>,
}

pub fn check_fixedpoint<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>) -> FixedpointReport {
    let (s, ret) = (an.s, &an.ret);
    let ideals = an.all_ideals();
    let star = |t: usize| an.star(t, Variant::C);
    let mut ck = an.checker();
    let witness = first_failure(
        ideals.iter(),
        |i| **i == star(an.lower_star(i)),
        |i| format!("I = {} ≠ (I_*)* = {}", an.il(i), an.il(&star(an.lower_star(i)))),
    );
    let holds = ck.observe("ideal-fixedpoint", witness.clone());
    let prime_form_holds = ck.observe(
        "prime-ideal-lower-star-is-prime",
        first_failure(
            an.ids.primes.iter().copied(),
            |&x| an.spec.is_prime(an.lower_star(&ret.principal(x))),
            |x| format!("P = ({}]", ret.labels[*x]),
        ),
    );
    ck.check(
        "fixedpoint-forms-agree",
        (holds != prime_form_holds).then(|| format!("fixedpoint = {holds}, prime form = {prime_form_holds}")),
    );
    if holds {
        let pairs = an.all_pairs();
        let by_ideal: Vec<(usize, &Ideal)> = (0..s.len()).flat_map(|t| ideals.iter().map(move |i| (t, i))).collect();
        ck.check(
            "star-left-adjoint-to-lower-star",
            first_failure(
                by_ideal,
                |&(t, i)| star(t).is_subset(i) == s.leq(t, an.lower_star(i)),
                |(t, i)| format!("θ = {}, I = {}", an.el(*t), an.il(i)),
            ),
        );
        ck.check(
            "star-of-commutator-and-meet",
            first_failure(
                pairs.clone(),
                |&(a, b)| {
                    let meet: Ideal = star(a).intersection(&star(b)).copied().collect();
                    star(s.commutator(a, b)) == meet && star(s.meet(a, b)) == meet
                },
                |(a, b)| format!("θ = {}, χ = {}", an.el(*a), an.el(*b)),
            ),
        );
        ck.check(
            "star-preserves-joins",
            first_failure(
                pairs,
                |&(a, b)| {
                    let union: Ideal = star(a).union(&star(b)).copied().collect();
                    star(s.join(a, b)) == ret.generated(&union)
                },
                |(a, b)| format!("({0} ∨ {1})* ≠ {0}* ∨ {1}*", an.el(*a), an.el(*b)),
            ),
        );
        let ideal_pairs: Vec<(&Ideal, &Ideal)> =
            ideals.iter().flat_map(|i| ideals.iter().map(move |j| (i, j))).collect();
        ck.check(
            "lower-star-preserves-meets",
            first_failure(
                ideal_pairs,
                |&(i, j)| {
                    let meet: Ideal = i.intersection(j).copied().collect();
                    an.lower_star(&meet) == s.meet(an.lower_star(i), an.lower_star(j))
                },
                |(i, j)| format!("I = {}, J = {}", an.il(i), an.il(j)),
            ),
        );
        ck.check(
            "closed-set-via-lambda-principal",
            first_failure(
                ret.cset.members.iter().copied(),
                |&t| {
                    let v = an.spec.v_mask(s, t);
                    v == an.spec.v_mask(s, an.lower_star(&ret.principal(ret.lambda(t))))
                },
                |t| format!("V({0}) ≠ V((λ{0}]_*)", an.el(*t)),
            ),
        );
    } else {
        for id in [
            "star-left-adjoint-to-lower-star",
            "star-of-commutator-and-meet",
            "star-preserves-joins",
            "lower-star-preserves-meets",
            "closed-set-via-lambda-principal",
        ] {
            ck.skip(id, "ideal fixedpoint fails");
        }
    }
    FixedpointReport {
        holds,
        witness,
        prime_form_holds,
        checks: ck.into_checks(),
    }
}

/// `u` and `v` between `Spec_Z` and the prime ideals of `L`, with the `Max`
/// and `Min` restrictions.
pub fn homeomorphism<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>, qc: bool) -> Vec<Check> {
    let (s, ret) = (an.s, &an.ret);
    let mut ck = an.checker();
    const IDS: [&str; 10] = [
        "v-preimage-of-basic-open",
        "u-v-mutually-inverse",
        "u-homeomorphism",
        "max-to-max-ideal",
        "max-ideal-to-max",
        "max-restriction-homeomorphism",
        "max-compact-t1",
        "min-correspondence",
        "min-restriction-homeomorphism",
        "min-zero-dimensional-hausdorff",
    ];
    let fp = check_fixedpoint(an);
    if !fp.holds || !fp.prime_form_holds {
        for id in IDS {
            ck.skip(id, "ideal fixedpoint fails");
        }
        return ck.into_checks();
    }
    let (u, v) = (an.u_map(), an.v_map());
    ck.check(
        "v-preimage-of-basic-open",
        first_failure(
            0..s.len(),
            |&t| {
                let star_gen = an.star_gen(t);
                let pre = v
                    .iter()
                    .enumerate()
                    .filter(|&(_, &q)| q.is_some_and(|q| an.zariski.d[t] >> q & 1 == 1))
                    .fold(0 as Mask, |acc, (k, _)| acc | 1 << k);
                pre == an.ids.d_id(ret, star_gen)
            },
            |t| format!("v⁻¹(D({0})) ≠ D_Id({0}*)", an.el(*t)),
        ),
    );
    let inverse = u.iter().enumerate().all(|(i, &x)| x.and_then(|x| v[x]) == Some(i))
        && v.iter().enumerate().all(|(x, &i)| i.and_then(|i| u[i]) == Some(x));
    ck.check(
        "u-v-mutually-inverse",
        (!inverse).then(|| "u and v are not inverse".into()),
    );
    let u_total: Option<Vec<usize>> = u.iter().copied().collect();
    let (zt, it) = (&an.zariski.topology, &an.ids.topology);
    ck.check(
        "u-homeomorphism",
        (!u_total.as_ref().is_some_and(|f| zt.is_homeomorphism(f, it))).then(|| "u is not a homeomorphism".into()),
    );

    let max_mask = mask_of(&an.spec.primes, &an.spec.maximals);
    let max_id_mask = mask_of(&an.ids.primes, &an.ids.maximals);
    ck.check(
        "max-to-max-ideal",
        first_failure(
            an.spec.maximals.iter().copied(),
            |&m| an.ids.maximals.contains(&an.star_gen(m)),
            |m| format!("{}* is not a maximal ideal", an.el(*m)),
        ),
    );
    ck.check(
        "max-ideal-to-max",
        first_failure(
            an.ids.maximals.iter().copied(),
            |&x| an.spec.maximals.contains(&an.lower_star(&ret.principal(x))),
            |x| format!("({}]_* is not maximal", ret.labels[*x]),
        ),
    );
    let max_space = zt.subspace(max_mask);
    let max_ok = max_mask.count_ones() as usize == an.spec.maximals.len()
        && restrict_map(&u, max_mask, max_id_mask)
            .is_some_and(|f| max_space.is_homeomorphism(&f, &it.subspace(max_id_mask)));
    ck.check(
        "max-restriction-homeomorphism",
        (!max_ok).then(|| "u does not restrict to a homeomorphism Max → Max_Id".into()),
    );
    ck.check("max-compact-t1", (!max_space.is_t1()).then(|| "Max_Z is not T1".into()));

    let min_ids = [
        "min-correspondence",
        "min-restriction-homeomorphism",
        "min-zero-dimensional-hausdorff",
    ];
    if !qc {
        for id in min_ids {
            ck.skip(id, "not quasi-commutative");
        }
        return ck.into_checks();
    }
    let min_mask = mask_of(&an.spec.primes, &an.spec.minimals);
    let min_id_mask = mask_of(&an.ids.primes, &an.ids.minimals);
    let corr = first_failure(
        0..an.spec.primes.len(),
        |&i| (min_mask >> i & 1 == 1) == u[i].is_some_and(|x| min_id_mask >> x & 1 == 1),
        |i| format!("φ = {}", an.el(an.spec.primes[*i])),
    )
    .or_else(|| {
        first_failure(
            0..an.ids.primes.len(),
            |&x| (min_id_mask >> x & 1 == 1) == v[x].is_some_and(|i| min_mask >> i & 1 == 1),
            |x| format!("P = ({}]", ret.labels[an.ids.primes[*x]]),
        )
    });
    ck.check("min-correspondence", corr);
    let min_space = zt.subspace(min_mask);
    let min_ok = restrict_map(&u, min_mask, min_id_mask)
        .is_some_and(|f| min_space.is_homeomorphism(&f, &it.subspace(min_id_mask)));
    ck.check(
        "min-restriction-homeomorphism",
        (!min_ok).then(|| "u does not restrict to a homeomorphism Min → Min_Id".into()),
    );
    ck.check(
        "min-zero-dimensional-hausdorff",
        (!(min_space.is_hausdorff() && min_space.is_zero_dimensional() && min_space.is_discrete()))
            .then(|| "Min_Z is not discrete".into()),
    );
    ck.into_checks()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiCommutativity {
    /// The compact-element criterion.
    pub holds: bool,
    /// First compact pair `(α, β)` with no compact `γ ≤ [α,β]` of equal radical.
    pub witness: Option<(usize, usize)>,
    /// The defining condition over pairs of principal elements.
    pub definition_holds: bool,
    pub checks: Vec<Check>,
}

fn has_compact_core<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>, theta: usize) -> bool {
    an.s.compact()
        .iter()
        .any(|&g| an.s.leq(g, theta) && an.spec.rho(g) == an.spec.rho(theta))
}

pub fn is_quasi_commutative<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>) -> QuasiCommutativity {
    let s = an.s;
    let pairs_of =
        |set: &[usize]| -> Vec<(usize, usize)> { set.iter().flat_map(|&a| set.iter().map(move |&b| (a, b))).collect() };
    let witness = pairs_of(s.compact())
        .into_iter()
        .find(|&(a, b)| !has_compact_core(an, s.commutator(a, b)));
    let holds = witness.is_none();
    let definition_holds = pairs_of(s.principal())
        .into_iter()
        .all(|(a, b)| has_compact_core(an, s.commutator(a, b)));
    let mut ck = an.checker();
    ck.observe(
        "quasi-commutative",
        witness.map(|(a, b)| format!("(α, β) = ({}, {})", an.el(a), an.el(b))),
    );
    ck.check(
        "quasi-commutative-criterion-matches-definition",
        (holds != definition_holds).then(|| format!("compact criterion = {holds}, definition = {definition_holds}")),
    );
    let hyper = is_hyperarchimedean(s);
    if hyper.holds && an.spec.semiprime {
        ck.check(
            "hyperarchimedean-semiprime-is-quasi-commutative",
            (!holds).then(|| "hyperarchimedean and semiprime but not quasi-commutative".into()),
        );
    } else {
        ck.skip(
            "hyperarchimedean-semiprime-is-quasi-commutative",
            "not hyperarchimedean and semiprime",
        );
    }
    if holds {
        ck.check(
            "c-member-has-compact-core",
            first_failure(
                an.ret.cset.members.iter().copied(),
                |&t| has_compact_core(an, t),
                |t| format!("θ = {}", an.el(*t)),
            ),
        );
        ck.check(
            "star-variants-agree",
            first_failure(
                an.ret.cset.members.iter().copied(),
                |&t| an.star(t, Variant::K) == an.star(t, Variant::C),
                |t| format!("θ = {}", an.el(*t)),
            ),
        );
        let c_opens: Vec<Mask> = an.ret.cset.members.iter().map(|&a| an.zariski.d[a]).collect();
        let t = &an.zariski.topology;
        let c_basis = FiniteTopology::generated(t.labels().to_vec(), &c_opens, c_opens.clone());
        ck.check(
            "c-opens-form-intersection-closed-basis",
            match c_basis {
                Ok(b) => (!(b.designated_intersection_closed() && same_opens(&b, t)))
                    .then(|| "{D(α) : α ∈ C} is not an intersection-closed basis".into()),
                Err(e) => Some(e.to_string()),
            },
        );
    } else {
        for id in [
            "c-member-has-compact-core",
            "star-variants-agree",
            "c-opens-form-intersection-closed-basis",
        ] {
            ck.skip(id, "not quasi-commutative");
        }
    }
    QuasiCommutativity {
        holds,
        witness,
        definition_holds,
        checks: ck.into_checks(),
    }
}

/// Same open sets, compared point by point through minimal neighborhoods.
fn same_opens(a: &FiniteTopology, b: &FiniteTopology) -> bool {
    a.len() == b.len() && (0..a.len()).all(|x| a.neighborhood(x) == b.neighborhood(x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralAlgebra {
    pub space: SpectralReport,
    /// Every basic open `D(α)`, `α ∈ K`, is compact (automatic when finite).
    pub basic_opens_compact: bool,
    pub spectral: bool,
    pub quasi_commutative: bool,
    pub fixedpoint: bool,
    pub checks: Vec<Check>,
}

pub fn is_spectral_algebra<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>) -> SpectralAlgebra {
    let space = spectral_space_check(&an.zariski.topology);
    let spectral = space.spectral;
    let quasi_commutative = is_quasi_commutative(an).holds;
    let fixedpoint = check_fixedpoint(an).holds;
    let mut ck = an.checker();
    ck.observe(
        "spectral-space",
        (!spectral).then(|| format!("T0 = {}, sober = {}", space.t0, space.sober)),
    );
    ck.check(
        "spectral-quasi-commutative-fixedpoint-agree",
        (!(spectral == quasi_commutative && quasi_commutative == fixedpoint)).then(|| {
            format!("spectral = {spectral}, quasi-commutative = {quasi_commutative}, fixedpoint = {fixedpoint}")
        }),
    );
    SpectralAlgebra {
        space,
        basic_opens_compact: true,
        spectral,
        quasi_commutative,
        fixedpoint,
        checks: ck.into_checks(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BooleanCenterIso {
    /// Complemented elements of the structure.
    pub structure_center: Vec<usize>,
    /// Complemented elements of `L`.
    pub lattice_center: Vec<usize>,
    /// `λ` on the structure center.
    pub image: Vec<usize>,
    pub checks: Vec<Check>,
}

pub fn boolean_center_iso<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>) -> BooleanCenterIso {
    let (s, ret) = (an.s, &an.ret);
    let l = &ret.lattice;
    let center = boolean_center(s);
    let b = center.members.clone();
    let lattice_center = l.complemented();
    let mut ck = an.checker();
    let pairs = an.all_pairs();
    ck.check(
        "orthogonal-complements-are-central",
        first_failure(
            pairs,
            |&(a, c)| {
                !(s.join(a, c) == s.top() && s.commutator(a, c) == s.bottom()) || (b.contains(&a) && b.contains(&c))
            },
            |(a, c)| format!("({}, {})", an.el(*a), an.el(*c)),
        ),
    );
    ck.check(
        "center-orthogonal-to-annihilator",
        center
            .orthogonality_failures
            .first()
            .map(|&a| format!("[{0}, {0}^⊥] ≠ Δ", an.el(a))),
    );
    ck.check(
        "center-within-compacts",
        first_failure(
            b.iter().copied(),
            |&a| s.is_compact(a),
            |a| format!("{} is not compact", an.el(*a)),
        ),
    );
    let in_c = b.iter().all(|&a| ret.cset.contains(a));
    let image: Vec<usize> = if in_c {
        b.iter().map(|&a| ret.lambda(a)).collect()
    } else {
        Vec::new()
    };
    if in_c {
        ck.check(
            "lambda-center-into-center",
            first_failure(
                b.iter().copied(),
                |&a| lattice_center.contains(&ret.lambda(a)),
                |a| format!("λ({}) is not complemented", an.el(*a)),
            ),
        );
        let bb: Vec<(usize, usize)> = b.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect();
        ck.check(
            "lambda-center-boolean-morphism",
            first_failure(
                bb.clone(),
                |&(x, y)| {
                    let lx = ret.lambda(x);
                    let comp = annihilator(s, x);
                    ret.cset.contains(s.join(x, y))
                        && ret.cset.contains(s.meet(x, y))
                        && ret.lambda(s.join(x, y)) == l.join(lx, ret.lambda(y))
                        && ret.lambda(s.meet(x, y)) == l.meet(lx, ret.lambda(y))
                        && ret.cset.contains(comp)
                        && l.join(lx, ret.lambda(comp)) == ret.one()
                        && l.meet(lx, ret.lambda(comp)) == ret.zero()
                },
                |(x, y)| format!("({}, {})", an.el(*x), an.el(*y)),
            ),
        );
        ck.check(
            "lambda-center-injective",
            first_failure(
                bb,
                |&(x, y)| x == y || ret.lambda(x) != ret.lambda(y),
                |(x, y)| format!("λ({}) = λ({})", an.el(*x), an.el(*y)),
            ),
        );
        let surjective = first_failure(
            lattice_center.iter().copied(),
            |x| image.contains(x),
            |x| format!("{} has no central preimage", ret.labels[*x]),
        );
        if an.spec.semiprime {
            ck.check("lambda-center-surjective", surjective);
        } else {
            ck.observe("lambda-center-surjective", surjective);
        }
    } else {
        for id in [
            "lambda-center-into-center",
            "lambda-center-boolean-morphism",
            "lambda-center-injective",
            "lambda-center-surjective",
        ] {
            ck.skip(id, "center not contained in C");
        }
    }
    BooleanCenterIso {
        structure_center: b,
        lattice_center,
        image,
        checks: ck.into_checks(),
    }
}

/// `Ann(θ*) = (θ^⊥)*` and `(Ann I)_* = (I_*)^⊥`.
pub fn annihilator_transfer<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>) -> Vec<Check> {
    let (s, ret) = (an.s, &an.ret);
    let star = |t: usize| an.star(t, Variant::C);
    let mut ck = Checker::new(s.is_strict() && an.spec.semiprime);
    ck.check(
        "annihilator-of-star",
        first_failure(
            0..s.len(),
            |&t| ret.ann(&star(t)) == star(annihilator(s, t)),
            |t| format!("Ann({0}*) ≠ ({0}^⊥)*", an.el(*t)),
        ),
    );
    ck.check(
        "lower-star-of-annihilator",
        first_failure(
            an.all_ideals(),
            |i| an.lower_star(&ret.ann(i)) == annihilator(s, an.lower_star(i)),
            |i| format!("I = {}", an.il(i)),
        ),
    );
    ck.into_checks()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinPrimeCheck {
    pub phi: usize,
    /// The five conditions, in order: minimal; for `C` the implication and
    /// the equivalence `α ≤ φ ⇔ α^⊥ ≰ φ`; the same two over `K`.
    pub conditions: [bool; 5],
    pub checks: Vec<Check>,
}

pub fn min_prime_check<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>, phi: usize) -> MinPrimeCheck {
    let s = an.s;
    let qc = is_quasi_commutative(an).holds;
    let implies = |set: &[usize]| set.iter().all(|&a| !s.leq(a, phi) || !s.leq(annihilator(s, a), phi));
    let iff = |set: &[usize]| set.iter().all(|&a| s.leq(a, phi) == !s.leq(annihilator(s, a), phi));
    let c = &an.ret.cset.members;
    let conditions = [
        an.spec.minimals.contains(&phi),
        implies(c),
        iff(c),
        implies(s.compact()),
        iff(s.compact()),
    ];
    let mut ck = Checker::new(s.is_strict() && an.spec.semiprime && qc);
    ck.check(
        &format!("minimal-prime-conditions-agree@{}", an.el(phi)),
        (!conditions.iter().all(|&x| x == conditions[0]))
            .then(|| format!("φ = {}: conditions = {conditions:?}", an.el(phi))),
    );
    MinPrimeCheck {
        phi,
        conditions,
        checks: ck.into_checks(),
    }
}

/// The lattice-side characterization of minimal prime ideals, then
/// [`min_prime_check`] for every prime.
pub fn min_prime_suite<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>) -> Vec<Check> {
    let ret = &an.ret;
    let mut ck = Checker::new(true);
    ck.check(
        "minimal-prime-ideal-annihilator-criterion",
        first_failure(
            an.ids.primes.iter().copied(),
            |&p| {
                let ideal = ret.principal(p);
                let outside = |x: usize| !ret.ann(&ret.principal(x)).is_subset(&ideal);
                let minimal = an.ids.minimals.contains(&p);
                let implication = ideal.iter().all(|&x| outside(x));
                let equivalence = (0..ret.len()).all(|x| ideal.contains(&x) == outside(x));
                minimal == implication && implication == equivalence
            },
            |p| format!("P = ({}]", ret.labels[*p]),
        ),
    );
    let mut checks = ck.into_checks();
    for &phi in &an.spec.primes {
        checks.extend(min_prime_check(an, phi).checks);
    }
    checks
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    /// `L(u)` as a map on lattice elements.
    pub map: Vec<usize>,
    pub checks: Vec<Check>,
}

/// `L(u)(λ_A(α)) := λ_B(u•(α))` for `α ∈ C(A)`, given `u•` on element
/// indices. Fails with [`Error::NotWellDefined`] when two members of one
/// class have images in different classes.
pub fn retic_functor<SA, SB>(bullet: &[usize], a: &Analysis<'_, SA>, b: &Analysis<'_, SB>) -> Result<FunctorReport>
where
    SA: CommutatorLattice + ?Sized,
    SB: CommutatorLattice + ?Sized,
{
    let (ra, rb) = (&a.ret, &b.ret);
    let mut map: Vec<Option<(usize, usize)>> = vec![None; ra.len()];
    for &alpha in &ra.cset.members {
        let image = bullet[alpha];
        let Some(y) = rb.lambda[image] else {
            return Err(Error::NotWellDefined(format!(
                "u•({}) = {} lies outside C of the target",
                a.el(alpha),
                b.el(image)
            )));
        };
        let x = ra.lambda(alpha);
        match map[x] {
            None => map[x] = Some((alpha, y)),
            Some((first, y0)) if y0 != y => {
                return Err(Error::NotWellDefined(format!(
                    "{} ≡ {} but their images {} and {} are not equivalent",
                    a.el(first),
                    a.el(alpha),
                    b.el(bullet[first]),
                    b.el(image)
                )));
            }
            Some(_) => {}
        }
    }
    let map: Vec<usize> = map.into_iter().map(|m| m.expect("λ is surjective").1).collect();
    let (la, lb) = (&ra.lattice, &rb.lattice);
    let mut ck = Checker::new(true);
    ck.check(
        "functor-preserves-bounds",
        (map[ra.zero()] != rb.zero() || map[ra.one()] != rb.one()).then(|| "L(u) moves 0 or 1".into()),
    );
    let pairs: Vec<(usize, usize)> = (0..ra.len()).flat_map(|x| (0..ra.len()).map(move |y| (x, y))).collect();
    ck.check(
        "functor-lattice-morphism",
        first_failure(
            pairs,
            |&(x, y)| map[la.join(x, y)] == lb.join(map[x], map[y]) && map[la.meet(x, y)] == lb.meet(map[x], map[y]),
            |(x, y)| format!("({}, {})", ra.labels[*x], ra.labels[*y]),
        ),
    );
    ck.check(
        "functor-square-commutes",
        first_failure(
            ra.cset.members.iter().copied(),
            |&alpha| rb.lambda(bullet[alpha]) == map[ra.lambda(alpha)],
            |alpha| format!("α = {}", a.el(*alpha)),
        ),
    );
    Ok(FunctorReport {
        map,
        checks: ck.into_checks(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::structure::AlgebraLattice;

    fn failures(checks: &[Check]) -> Vec<&Check> {
        checks.iter().filter(|c| c.verdict.is_fail()).collect()
    }

    #[test]
    fn lax_chain_closure_adds_commutator() {
        let s = corpus::lax_chain();
        let c = c_closure(&s);
        assert_eq!(c.members, vec![0, 1, 2, 3]);
        assert_eq!(c.origin[&1], Origin::Commutator { left: 2, right: 2 });
        assert_eq!(closure_from(&s, &c.members).members, c.members);
    }

    #[test]
    fn z4_reticulation_and_stars() {
        let s = AlgebraLattice::new(corpus::zn(4)).unwrap();
        let an = Analysis::new(&s).unwrap();
        assert_eq!(an.ret.len(), 2);
        // Δ and the ideal (2) share the radical (2)
        assert_eq!(an.ret.lambda(0), an.ret.lambda(1));
        assert_eq!(an.star(1, Variant::C), an.ret.principal(an.ret.zero()));
        assert_eq!(an.lower_star(&an.ret.principal(an.ret.zero())), 1);
        assert_eq!(an.lower_star(&an.ret.full()), s.top());
        assert!(check_fixedpoint(&an).holds);
    }

    #[test]
    fn z12_reticulation_is_boolean_square() {
        let s = AlgebraLattice::new(corpus::zn(12)).unwrap();
        let an = Analysis::new(&s).unwrap();
        assert_eq!(an.ret.len(), 4);
        assert!(an.ret.lattice.complemented().len() == 4);
        assert_eq!(an.ids.primes.len(), 2);
        assert_eq!(an.ids.maximals, an.ids.primes);
        assert_eq!(an.ids.minimals, an.ids.primes);
    }

    #[test]
    fn lax_chain_stars_differ_and_qc_fails() {
        let s = corpus::lax_chain();
        let an = Analysis::new(&s).unwrap();
        assert_eq!(an.ret.len(), 3);
        assert_eq!(an.ret.lambda(1), an.ret.lambda(2));
        assert_eq!(an.star(1, Variant::K).len(), 1);
        assert_eq!(an.star(1, Variant::C), an.ret.principal(an.ret.lambda(1)));
        let qc = is_quasi_commutative(&an);
        assert!(!qc.holds);
        assert_eq!(qc.witness, Some((2, 2)));
        let sa = is_spectral_algebra(&an);
        assert!(sa.checks.iter().all(|c| c.verdict.tag() == "observed"));
    }

    #[test]
    fn strict_chain_nested_prime_fails_conditions() {
        let s = corpus::strict_chain();
        let an = Analysis::new(&s).unwrap();
        assert_eq!(an.spec.primes, vec![0, 1]);
        let m = min_prime_check(&an, 1);
        assert_eq!(m.conditions, [false; 5]);
        let m = min_prime_check(&an, 0);
        assert_eq!(m.conditions, [true; 5]);
    }

    #[test]
    fn strict_corpus_suites_pass() {
        for e in [
            corpus::zn(6),
            corpus::zn(12),
            corpus::m2z2(),
            corpus::t2z2(),
            corpus::diamond(),
        ] {
            let s = AlgebraLattice::new(e).unwrap();
            let an = Analysis::new(&s).unwrap();
            let qc = is_quasi_commutative(&an);
            assert!(qc.holds, "{}", s.name());
            let mut all = lambda_suite(&an);
            all.extend(star_suite(&an));
            all.extend(check_fixedpoint(&an).checks);
            all.extend(homeomorphism(&an, qc.holds));
            all.extend(qc.checks);
            all.extend(is_spectral_algebra(&an).checks);
            all.extend(boolean_center_iso(&an).checks);
            all.extend(annihilator_transfer(&an));
            all.extend(min_prime_suite(&an));
            assert!(failures(&all).is_empty(), "{}: {:?}", s.name(), failures(&all));
        }
    }

    #[test]
    fn z6_centers_match() {
        let s = AlgebraLattice::new(corpus::zn(6)).unwrap();
        let an = Analysis::new(&s).unwrap();
        let b = boolean_center_iso(&an);
        assert_eq!(b.structure_center.len(), 4);
        assert_eq!(b.lattice_center.len(), 4);
    }

    #[test]
    fn identity_functor_is_identity() {
        let s = AlgebraLattice::new(corpus::zn(12)).unwrap();
        let an = Analysis::new(&s).unwrap();
        let id: Vec<usize> = (0..s.len()).collect();
        let f = retic_functor(&id, &an, &an).unwrap();
        assert_eq!(f.map, (0..an.ret.len()).collect::<Vec<_>>());
        assert!(failures(&f.checks).is_empty());
    }
}
