//! Acceptance run: one line per criterion, non-zero exit when any fails.
//!
//! Counts and structural facts are recomputed with the oracles in
//! `common/`; the library's own suites are consulted only for the verdicts
//! they are responsible for.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{canon, from_partition, leq, meet, prime_ideals, ring_commutator, Labels, OracleLattice};
use retic_core::algebra::{check_morphism, quotient, FiniteAlgebra, Morphism, LATTICE_TAG, RING_TAG};
use retic_core::commutator::annihilator;
use retic_core::corpus::{self, Entry};
use retic_core::report::{Check, Verdict};
use retic_core::reticulation::{
    boolean_center_iso, is_quasi_commutative, is_spectral_algebra, min_prime_check, retic_functor, Analysis, Variant,
};
use retic_core::spectrum::{is_admissible, morphism_adjoints};
use retic_core::structure::{validate_structure, AlgebraLattice, CommutatorLattice};
use retic_core::verify::{load_path, verify_entries, Suite, VerifyReport, MAX_POWER};

type Outcome = Result<String, String>;
type LabelOracle<'a> = Box<dyn Fn(&[usize], &[usize]) -> Labels + 'a>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shipped_corpus() -> Result<Vec<Entry>, String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    load_path(&dir).map_err(|e| format!("loading {}: {e}", dir.display()))
}

fn algebras(entries: &[Entry]) -> Vec<&FiniteAlgebra> {
    entries
        .iter()
        .filter_map(|e| match e {
            Entry::Algebra(a) => Some(a),
            Entry::Structure(_) => None,
        })
        .collect()
}

/// Runs `f` on every entry through the common structure interface.
fn each_structure<T>(
    entries: &[Entry],
    mut f: impl FnMut(&str, &dyn CommutatorLattice) -> Result<T, String>,
) -> Result<Vec<T>, String> {
    entries
        .iter()
        .map(|e| match e {
            Entry::Algebra(a) => {
                let s = AlgebraLattice::new(a.clone()).map_err(|err| format!("{}: {err}", a.name()))?;
                f(a.name(), &s)
            }
            Entry::Structure(s) => f(s.name(), s),
        })
        .collect()
}

fn analysis<'a>(name: &str, s: &'a dyn CommutatorLattice) -> Result<Analysis<'a, dyn CommutatorLattice + 'a>, String> {
    Analysis::new(s).map_err(|e| format!("{name}: {e}"))
}

fn partition_join(a: &[usize], b: &[usize]) -> Labels {
    let mut labels: Vec<usize> = a.to_vec();
    loop {
        let mut changed = false;
        for x in 0..labels.len() {
            for y in 0..labels.len() {
                if (labels[x] == labels[y] || b[x] == b[y]) && labels[x] != labels[y] {
                    let (keep, drop) = (labels[x].min(labels[y]), labels[x].max(labels[y]));
                    labels.iter_mut().filter(|l| **l == drop).for_each(|l| *l = keep);
                    changed = true;
                }
            }
        }
        if !changed {
            return canon(&labels);
        }
    }
}

/// Criterion 1: Symmetry, `[α,β] ≤ α ∧ β`, monotonicity and join-distributivity over
/// all congruence pairs of every corpus algebra, on explicit partitions.
fn commutator_axioms(entries: &[Entry]) -> Outcome {
    let start = Instant::now();
    let mut pairs = 0usize;
    for a in algebras(entries) {
        let s = AlgebraLattice::new(a.clone()).map_err(|e| e.to_string())?;
        let con: Vec<Labels> = s.con().elements().iter().map(from_partition).collect();
        let index: BTreeMap<&Labels, usize> = con.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = con.len();
        let c = |x: usize, y: usize| &con[s.commutator(x, y)];
        for x in 0..n {
            for y in 0..n {
                pairs += 1;
                ensure(c(x, y) == c(y, x), || {
                    format!("{}: not symmetric at ({x}, {y})", a.name())
                })?;
                ensure(leq(c(x, y), &meet(&con[x], &con[y])), || {
                    format!("{}: [α,β] not below α ∧ β at ({x}, {y})", a.name())
                })?;
                for z in 0..n {
                    if leq(&con[y], &con[z]) {
                        ensure(leq(c(x, y), c(x, z)), || {
                            format!("{}: not monotone at ({x}, {y}, {z})", a.name())
                        })?;
                    }
                    let yz = index[&partition_join(&con[y], &con[z])];
                    ensure(c(x, yz) == &partition_join(c(x, y), c(x, z)), || {
                        format!("{}: not join-distributive at ({x}, {y}, {z})", a.name())
                    })?;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} algebras, {pairs} pairs, {elapsed:.2?}",
        algebras(entries).len()
    ))
}

/// Criterion 2: Commutator = ideal product on rings, = meet on lattices.
fn oracle_equivalence(entries: &[Entry]) -> Outcome {
    let (mut rings, mut lattices) = (0, 0);
    for a in algebras(entries) {
        let oracle: LabelOracle = if a.has_tag(RING_TAG) {
            rings += 1;
            Box::new(|x, y| ring_commutator(a, x, y))
        } else if a.has_tag(LATTICE_TAG) {
            lattices += 1;
            Box::new(meet)
        } else {
            continue;
        };
        let s = AlgebraLattice::new(a.clone()).map_err(|e| e.to_string())?;
        let con: Vec<Labels> = s.con().elements().iter().map(from_partition).collect();
        for x in 0..con.len() {
            for y in 0..con.len() {
                ensure(con[s.commutator(x, y)] == oracle(&con[x], &con[y]), || {
                    format!("{}: commutator differs from oracle at ({x}, {y})", a.name())
                })?;
            }
        }
    }
    ensure(rings > 0 && lattices > 0, || "no tagged members".into())?;
    Ok(format!("{rings} rings, {lattices} lattices"))
}

/// Criterion 3: Desk-scale counts from the partition-filter and ideal oracles, each
/// compared with the library.
fn desk_counts() -> Outcome {
    let z4 = OracleLattice::ring(&corpus::zn(4));
    let z6 = OracleLattice::ring(&corpus::zn(6));
    let z12 = OracleLattice::ring(&corpus::zn(12));
    let (l4, l6, l12) = (z4.reticulation(), z6.reticulation(), z12.reticulation());
    let expected = [
        ("|Con(Z4)|", z4.len(), 3),
        ("|Con(Z12)|", z12.len(), 6),
        ("|Spec(Z12)|", z12.primes().len(), 2),
        ("|L(Z4)|", l4.len(), 2),
        ("|L(Z12)|", l12.len(), 4),
        ("|B(Con(Z6))|", z6.center().len(), 4),
        ("|B(L(Z6))|", l6.center().len(), 4),
        // Stone duality: prime ideals of L correspond to primes
        ("|Spec_Id(L(Z12))|", prime_ideals(&l12.leq).len(), 2),
    ];
    for (what, got, want) in expected {
        ensure(got == want, || format!("oracle {what} = {got}, expected {want}"))?;
    }
    // the library must agree with every oracle count
    for (n, oracle, l) in [(4, &z4, &l4), (6, &z6, &l6), (12, &z12, &l12)] {
        let s = AlgebraLattice::new(corpus::zn(n)).map_err(|e| e.to_string())?;
        let an = Analysis::new(&s).map_err(|e| e.to_string())?;
        let iso = boolean_center_iso(&an);
        let lib = [
            s.len(),
            an.spec.primes.len(),
            an.ret.len(),
            iso.structure_center.len(),
            iso.lattice_center.len(),
            an.ids.primes.len(),
        ];
        let ora = [
            oracle.len(),
            oracle.primes().len(),
            l.len(),
            oracle.center().len(),
            l.center().len(),
            prime_ideals(&l.leq).len(),
        ];
        ensure(lib == ora, || format!("Z{n}: library {lib:?} vs oracle {ora:?}"))?;
        let ideals = common::ideals(an.ret.lattice.order_matrix());
        ensure(ideals.len() == an.ids.ideals.len(), || {
            format!("Z{n}: ideal count differs")
        })?;
    }
    Ok("Con(Z4)=3 Con(Z12)=6 Spec(Z12)=2 L(Z4)=2 L(Z12)=4 B(Con Z6)=B(L Z6)=4".into())
}

/// Law checks that must be present on every instance, and proven (or
/// skipped for an unmet hypothesis) on every strict one.
const LAW_IDS: &[&str] = &[
    "commutator-symmetric",
    "commutator-below-meet",
    "commutator-monotone",
    "commutator-join-distributive",
    "commutator-with-top",
    "coprime-commutator-is-meet",
    "coprime-with-commutator-and-meet",
    "coprime-powers",
    "radical-extensive",
    "radical-of-meet-and-commutator",
    "radical-top-iff-top",
    "radical-of-join",
    "radical-idempotent",
    "radical-coprime",
    "radical-of-powers",
    "prime-test-compact-matches-full",
    "maximal-is-prime",
    "radicals-closed-under-meet",
    "c-closure-closed",
    "reticulation-distributive",
    "lambda-surjective",
    "lambda-preserves-join",
    "lambda-commutator-to-meet",
    "lambda-one-iff-nabla",
    "lambda-monotone",
    "lambda-zero-iff-delta",
    "lambda-order-criteria",
    "star-of-c-member-is-principal",
    "compact-below-lower-star-iff-lambda-in-ideal",
    "congruence-below-star-lower-star",
    "ideal-within-lower-star-star",
    "prime-star-lower-star-identity",
    "ideal-proper-iff-lower-star-proper",
    "congruence-proper-iff-star-proper",
    "prime-star-is-prime-ideal",
    "u-injective",
    "u-continuous",
    "lambda-in-prime-star-iff-below",
    "below-prime-iff-star-contained",
    "minimal-prime-ideal-annihilator-criterion",
    "c-closure-contains-compacts",
    "c-closure-idempotent",
    "lambda-preserves-joins-of-families",
    "star-needs-no-completion",
    "u-preimage-of-basic-open",
    "fixedpoint-forms-agree",
    "zariski-basic-open-identities",
    "zariski-compact-basis",
];

fn base_id(c: &Check) -> &str {
    c.id.split('@').next().unwrap_or(&c.id)
}

/// Criterion 4: The law suites over the shipped corpus: nothing fails anywhere; on
/// strict instances every law is either proven or skipped for an unmet
/// hypothesis.
fn law_suites(report: &VerifyReport) -> Outcome {
    ensure(MAX_POWER >= 3, || "power laws checked below n = 3".into())?;
    ensure(!report.has_failures(), || {
        let bad: Vec<String> = report
            .instances
            .iter()
            .flat_map(|i| {
                i.checks
                    .iter()
                    .filter(|c| c.verdict.is_fail())
                    .map(move |c| format!("{}/{}", i.instance, c.id))
                    .chain(i.error.iter().map(move |e| format!("{}: {e}", i.instance)))
            })
            .collect();
        format!("failures: {bad:?}")
    })?;
    let mut proven = 0;
    for inst in &report.instances {
        let ids: BTreeSet<&str> = inst.checks.iter().map(base_id).collect();
        let missing: Vec<&str> = LAW_IDS.iter().copied().filter(|id| !ids.contains(id)).collect();
        ensure(missing.is_empty(), || format!("{}: missing {missing:?}", inst.instance))?;
        if inst.strict {
            for c in inst.checks.iter().filter(|c| LAW_IDS.contains(&base_id(c))) {
                match &c.verdict {
                    Verdict::Pass => proven += 1,
                    Verdict::Skipped { .. } => {}
                    other => return Err(format!("{}/{}: {:?} on a strict instance", inst.instance, c.id, other)),
                }
            }
        }
    }
    Ok(format!(
        "{} instances, {proven} strict law checks proven; summary {:?}",
        report.instances.len(),
        report.summary
    ))
}

/// `u(φ) = (⋁{λ(α) : α ∈ C, α ≤ φ}]`, recomputed from `λ` and the order of
/// `L`, as the set of lattice elements.
fn u_oracle(s: &dyn CommutatorLattice, an: &Analysis<'_, dyn CommutatorLattice + '_>, phi: usize) -> BTreeSet<usize> {
    let l = &an.ret.lattice;
    let top = an
        .ret
        .cset
        .members
        .iter()
        .filter(|&&a| s.leq(a, phi))
        .fold(l.bottom(), |acc, &a| l.join(acc, an.ret.lambda(a)));
    (0..l.len()).filter(|&x| l.leq(x, top)).collect()
}

/// Criterion 5: On strict structures `u` is an order isomorphism between `Spec` and
/// the prime ideals of `L` (for finite spaces this is exactly a
/// homeomorphism of the Zariski and Stone topologies), matching Max and Min.
fn homeomorphisms(entries: &[Entry], report: &VerifyReport) -> Outcome {
    let results = each_structure(entries, |name, s| {
        if !s.is_strict() {
            return Ok(0);
        }
        let an = analysis(name, s)?;
        let primes = &an.spec.primes;
        let ideal_primes = prime_ideals(an.ret.lattice.order_matrix());
        let u: Vec<BTreeSet<usize>> = primes.iter().map(|&p| u_oracle(s, &an, p)).collect();
        for (i, img) in u.iter().enumerate() {
            ensure(ideal_primes.contains(img), || {
                format!("{name}: u({}) is not a prime ideal", s.label(primes[i]))
            })?;
        }
        let distinct: BTreeSet<&BTreeSet<usize>> = u.iter().collect();
        ensure(distinct.len() == u.len() && u.len() == ideal_primes.len(), || {
            format!("{name}: u is not a bijection")
        })?;
        for i in 0..primes.len() {
            for j in 0..primes.len() {
                ensure(s.leq(primes[i], primes[j]) == u[i].is_subset(&u[j]), || {
                    format!("{name}: u does not preserve and reflect specialization")
                })?;
            }
        }
        // the library's u agrees with the oracle
        let lib_u = an.u_map();
        for (i, pos) in lib_u.iter().enumerate() {
            let generator = pos.map(|p| an.ids.primes[p]);
            let expected = u[i].iter().copied().max();
            ensure(generator == expected, || {
                format!("{name}: library u differs at {}", s.label(primes[i]))
            })?;
        }
        // Max and Min correspond to maximal and minimal prime ideals
        let is_max = |i: usize| (0..u.len()).all(|j| !u[i].is_subset(&u[j]) || u[i] == u[j]);
        let is_min = |i: usize| (0..u.len()).all(|j| !u[j].is_subset(&u[i]) || u[i] == u[j]);
        for (i, p) in primes.iter().enumerate() {
            ensure(an.spec.maximals.contains(p) == is_max(i), || {
                format!("{name}: Max mismatch")
            })?;
            ensure(an.spec.minimals.contains(p) == is_min(i), || {
                format!("{name}: Min mismatch")
            })?;
        }
        Ok(1)
    })?;
    let ids = [
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
    for inst in report.instances.iter().filter(|i| i.strict) {
        for id in ids {
            let c = inst
                .checks
                .iter()
                .find(|c| c.id == id)
                .ok_or_else(|| format!("{}: no {id}", inst.instance))?;
            ensure(c.verdict == Verdict::Pass, || {
                format!("{}/{id}: {:?}", inst.instance, c.verdict)
            })?;
        }
    }
    Ok(format!("{} strict structures", results.iter().sum::<usize>()))
}

/// Criterion 6: The three verdicts agree on strict structures; the lax chain is not
/// quasi-commutative with witness `(b, b)` and its triple is only observed.
fn three_way(entries: &[Entry], report: &VerifyReport) -> Outcome {
    let mut lax_triples = Vec::new();
    let strict = each_structure(entries, |name, s| {
        let an = analysis(name, s)?;
        let sa = is_spectral_algebra(&an);
        let triple = (sa.spectral, sa.quasi_commutative, sa.fixedpoint);
        if s.is_strict() {
            ensure(triple.0 == triple.1 && triple.1 == triple.2, || {
                format!("{name}: triple {triple:?}")
            })?;
            Ok(1)
        } else {
            lax_triples.push(format!("{name}={triple:?}"));
            Ok(0)
        }
    })?;
    let lax = corpus::lax_chain();
    let an = Analysis::new(&lax).map_err(|e| e.to_string())?;
    let qc = is_quasi_commutative(&an);
    let b = lax.index_of("b").ok_or("lax chain has no b")?;
    ensure(!qc.holds && qc.witness == Some((b, b)), || {
        format!("lax chain: qc = {}, witness {:?}", qc.holds, qc.witness)
    })?;
    let recorded = report
        .instances
        .iter()
        .find(|i| i.instance == "lax-chain")
        .and_then(|i| {
            i.checks
                .iter()
                .find(|c| c.id == "spectral-quasi-commutative-fixedpoint-agree")
        })
        .ok_or("lax chain triple not recorded")?;
    ensure(matches!(recorded.verdict, Verdict::Observed { .. }), || {
        format!("lax chain triple asserted: {:?}", recorded.verdict)
    })?;
    Ok(format!(
        "{} strict agree; lax chain witness (b, b); lax triples (spectral, qc, fixedpoint): {}",
        strict.iter().sum::<usize>(),
        lax_triples.join(" ")
    ))
}

fn complemented(
    n: usize,
    join: impl Fn(usize, usize) -> usize,
    meet: impl Fn(usize, usize) -> usize,
    top: usize,
    bottom: usize,
) -> Vec<usize> {
    (0..n)
        .filter(|&a| (0..n).any(|b| join(a, b) == top && meet(a, b) == bottom))
        .collect()
}

/// Criterion 7: `λ` restricted to the center is an isomorphism of Boolean algebras on
/// semiprime members, and injective wherever the center lies in `C`.
fn boolean_iso(entries: &[Entry]) -> Outcome {
    let mut undefined = Vec::new();
    let counts = each_structure(entries, |name, s| {
        let an = analysis(name, s)?;
        let ret = &an.ret;
        let l = &ret.lattice;
        let center = complemented(s.len(), |a, b| s.join(a, b), |a, b| s.meet(a, b), s.top(), s.bottom());
        let lcenter = complemented(l.len(), |a, b| l.join(a, b), |a, b| l.meet(a, b), l.top(), l.bottom());
        let iso = boolean_center_iso(&an);
        ensure(iso.structure_center == center && iso.lattice_center == lcenter, || {
            format!("{name}: centers differ")
        })?;
        if !center.iter().all(|&a| ret.cset.contains(a)) {
            undefined.push(name.to_string());
            return Ok((0, 0));
        }
        let image: Vec<usize> = center.iter().map(|&a| ret.lambda(a)).collect();
        let distinct: BTreeSet<usize> = image.iter().copied().collect();
        ensure(distinct.len() == image.len(), || {
            format!("{name}: λ not injective on the center")
        })?;
        if !(s.is_strict() && an.spec.semiprime) {
            return Ok((1, 0));
        }
        ensure(distinct == lcenter.iter().copied().collect(), || {
            format!("{name}: λ not onto the center of L")
        })?;
        for &x in &center {
            for &y in &center {
                ensure(ret.lambda(s.join(x, y)) == l.join(ret.lambda(x), ret.lambda(y)), || {
                    format!("{name}: join")
                })?;
                ensure(ret.lambda(s.meet(x, y)) == l.meet(ret.lambda(x), ret.lambda(y)), || {
                    format!("{name}: meet")
                })?;
            }
            let comp = center
                .iter()
                .copied()
                .find(|&y| s.join(x, y) == s.top() && s.meet(x, y) == s.bottom())
                .unwrap();
            let lc = l.complements(ret.lambda(x));
            ensure(lc == vec![ret.lambda(comp)], || {
                format!("{name}: complement not preserved")
            })?;
        }
        Ok((1, 1))
    })?;
    let injective: usize = counts.iter().map(|c| c.0).sum();
    let iso: usize = counts.iter().map(|c| c.1).sum();
    Ok(format!(
        "isomorphism on {iso} strict semiprime members; injective on {injective}; center outside C (λ undefined): {undefined:?}"
    ))
}

/// The largest `β` with `[α, β] = Δ`, from the commutator table alone.
fn annihilator_oracle(s: &dyn CommutatorLattice, a: usize) -> usize {
    let zero: Vec<usize> = (0..s.len()).filter(|&b| s.commutator(a, b) == s.bottom()).collect();
    *zero
        .iter()
        .find(|&&b| zero.iter().all(|&c| s.leq(c, b)))
        .expect("annihilator exists")
}

/// Criterion 8: `Ann(θ*) = (θ^⊥)*` for every element and `(Ann I)_* = (I_*)^⊥` for
/// every ideal, on strict semiprime members; ideals and `Ann` by brute force.
fn annihilators(entries: &[Entry]) -> Outcome {
    let mut elements = 0;
    let mut ideals = 0;
    let mut members = 0;
    each_structure(entries, |name, s| {
        let an = analysis(name, s)?;
        if !(s.is_strict() && an.spec.semiprime) {
            return Ok(());
        }
        members += 1;
        let l = &an.ret.lattice;
        let ann = |i: &BTreeSet<usize>| -> BTreeSet<usize> {
            (0..l.len())
                .filter(|&x| i.iter().all(|&y| l.meet(x, y) == l.bottom()))
                .collect()
        };
        for t in 0..s.len() {
            let perp = annihilator_oracle(s, t);
            ensure(perp == annihilator(s, t), || {
                format!("{name}: annihilator of {} differs", s.label(t))
            })?;
            ensure(ann(&an.star(t, Variant::C)) == an.star(perp, Variant::C), || {
                format!("{name}: Ann({0}*) ≠ ({0}^⊥)*", s.label(t))
            })?;
            elements += 1;
        }
        for i in common::ideals(l.order_matrix()) {
            let lower = an.lower_star(&i);
            ensure(an.lower_star(&ann(&i)) == annihilator_oracle(s, lower), || {
                format!("{name}: (Ann I)_* ≠ (I_*)^⊥")
            })?;
            ideals += 1;
        }
        Ok(())
    })?;
    Ok(format!("{members} members, {elements} elements, {ideals} ideals"))
}

/// Criterion 9: The five minimal-prime conditions agree with minimality for every
/// prime of every strict semiprime quasi-commutative member.
fn min_primes(entries: &[Entry]) -> Outcome {
    let mut primes = 0;
    each_structure(entries, |name, s| {
        let an = analysis(name, s)?;
        if !(s.is_strict() && an.spec.semiprime && is_quasi_commutative(&an).holds) {
            return Ok(());
        }
        for &phi in &an.spec.primes {
            let minimal = !an.spec.primes.iter().any(|&q| q != phi && s.leq(q, phi));
            let c = min_prime_check(&an, phi).conditions;
            ensure(c == [minimal; 5], || {
                format!("{name}: φ = {}: {c:?}, minimal = {minimal}", s.label(phi))
            })?;
            primes += 1;
        }
        Ok(())
    })?;
    let chain = corpus::strict_chain();
    let an = Analysis::new(&chain).map_err(|e| e.to_string())?;
    let a = chain.index_of("a").ok_or("strict chain has no a")?;
    ensure(an.spec.primes.contains(&a) && an.spec.semiprime, || {
        "strict chain: a must be prime, Δ radical".into()
    })?;
    let c = min_prime_check(&an, a).conditions;
    ensure(c == [false; 5], || format!("strict chain: conditions at a = {c:?}"))?;
    Ok(format!(
        "{primes} primes; strict chain non-minimal prime fails all conditions"
    ))
}

fn functor_square(u: &Morphism) -> Result<Vec<usize>, String> {
    let sa = AlgebraLattice::new(u.source().clone()).map_err(|e| e.to_string())?;
    let sb = AlgebraLattice::new(u.target().clone()).map_err(|e| e.to_string())?;
    let (a, b) = (
        Analysis::new(&sa).map_err(|e| e.to_string())?,
        Analysis::new(&sb).map_err(|e| e.to_string())?,
    );
    let adj = morphism_adjoints(u, sa.con(), sb.con()).map_err(|e| e.to_string())?;
    let name = format!("{} → {}", u.source().name(), u.target().name());
    ensure(is_admissible(&adj, &a.spec, &b.spec), || {
        format!("{name} is not admissible")
    })?;
    let report = retic_functor(&adj.bullet, &a, &b).map_err(|e| format!("{name}: {e}"))?;
    if let Some(c) = report.checks.iter().find(|c| c.verdict.is_fail()) {
        return Err(format!("{name}: {} {:?}", c.id, c.verdict));
    }
    // the square, recomputed: L(u)(λ(α)) = λ(u•(α)) for every α ∈ C(A)
    for &alpha in &a.ret.cset.members {
        let image = b.ret.lambda[adj.bullet[alpha]].ok_or_else(|| format!("{name}: image outside C"))?;
        ensure(report.map[a.ret.lambda(alpha)] == image, || {
            format!("{name}: square does not commute")
        })?;
    }
    let (la, lb) = (&a.ret.lattice, &b.ret.lattice);
    ensure(
        report.map[la.bottom()] == lb.bottom() && report.map[la.top()] == lb.top(),
        || format!("{name}: bounds"),
    )?;
    for x in 0..la.len() {
        for y in 0..la.len() {
            ensure(
                report.map[la.join(x, y)] == lb.join(report.map[x], report.map[y]),
                || format!("{name}: join"),
            )?;
            ensure(
                report.map[la.meet(x, y)] == lb.meet(report.map[x], report.map[y]),
                || format!("{name}: meet"),
            )?;
        }
    }
    Ok(report.map)
}

/// Criterion 10: `L(u)` is well defined and the square commutes for identities, all
/// canonical projections, `Z12 → Z4` and `Z4 → Z2`.
fn functor(entries: &[Entry]) -> Outcome {
    let mut count = 0;
    for a in algebras(entries) {
        let map = functor_square(&Morphism::identity(a))?;
        ensure(map.iter().enumerate().all(|(i, &x)| i == x), || {
            format!("{}: L(id) is not the identity", a.name())
        })?;
        count += 1;
        let s = AlgebraLattice::new(a.clone()).map_err(|e| e.to_string())?;
        for theta in s.con().elements() {
            let (_, p) = quotient(a, theta).map_err(|e| e.to_string())?;
            functor_square(&p)?;
            count += 1;
        }
    }
    let reduce = |n: usize, m: usize| -> Result<Morphism, String> {
        let map: Vec<usize> = (0..n).map(|x| x % m).collect();
        check_morphism(&map, &corpus::zn(n), &corpus::zn(m)).map_err(|e| e.to_string())
    };
    let z12_z4 = functor_square(&reduce(12, 4)?)?;
    let image: BTreeSet<usize> = z12_z4.iter().copied().collect();
    ensure(z12_z4.len() == 4 && image.len() == 2, || {
        format!("Z12 → Z4: L(u) = {z12_z4:?}")
    })?;
    let z4_z2 = functor_square(&reduce(4, 2)?)?;
    ensure(z4_z2 == vec![0, 1], || format!("Z4 → Z2: L(u) = {z4_z2:?}"))?;
    Ok(format!(
        "{count} identities and projections; Z12→Z4 onto the 2-chain; Z4→Z2 bijective"
    ))
}

/// Criterion 11: 100 seed-1 random lax structures of size ≤ 6 validate, and every
/// verdict reproduces byte for byte.
fn fuzzer_stability() -> Outcome {
    let start = Instant::now();
    let structures = corpus::random_lax(6, 1, 100);
    ensure(structures.len() == 100, || format!("{} structures", structures.len()))?;
    for s in &structures {
        ensure(s.len() <= 6, || format!("{} has {} elements", s.name(), s.len()))?;
        let again = validate_structure(&s.to_json(), None).map_err(|e| format!("{}: {e}", s.name()))?;
        ensure(&again == s, || format!("{}: round trip differs", s.name()))?;
    }
    ensure(corpus::random_lax(6, 1, 100) == structures, || {
        "generation is not deterministic".into()
    })?;
    let entries: Vec<Entry> = structures.into_iter().map(Entry::Structure).collect();
    let first = verify_entries(&entries, Suite::All);
    let second = verify_entries(&entries, Suite::All);
    ensure(first.to_json() == second.to_json(), || {
        "reports differ between runs".into()
    })?;
    ensure(!first.has_failures(), || "lax structures produced failures".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "100 valid, {} verdicts identical across runs, {elapsed:.2?}",
        first.summary.pass + first.summary.observed + first.summary.skipped
    ))
}

fn main() -> ExitCode {
    let entries = match shipped_corpus() {
        Ok(e) => e,
        Err(e) => {
            println!("FAIL corpus: {e}");
            return ExitCode::FAILURE;
        }
    };
    let builtin: Vec<String> = corpus::builtin().iter().map(Entry::to_json).collect();
    let mut shipped: Vec<String> = entries.iter().map(Entry::to_json).collect();
    shipped.sort();
    let mut sorted = builtin.clone();
    sorted.sort();
    if shipped != sorted {
        println!("FAIL corpus: shipped files differ from the built-in corpus");
        return ExitCode::FAILURE;
    }
    let report = verify_entries(&entries, Suite::All);
    let criteria: Vec<Criterion> = vec![
        ("commutator axioms", Box::new(|| commutator_axioms(&entries))),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&entries))),
        ("desk-scale counts", Box::new(desk_counts)),
        ("law suites", Box::new(|| law_suites(&report))),
        (
            "spectrum homeomorphisms",
            Box::new(|| homeomorphisms(&entries, &report)),
        ),
        ("three-way agreement", Box::new(|| three_way(&entries, &report))),
        ("boolean center isomorphism", Box::new(|| boolean_iso(&entries))),
        ("annihilator transfer", Box::new(|| annihilators(&entries))),
        ("minimal primes", Box::new(|| min_primes(&entries))),
        ("reticulation functor", Box::new(|| functor(&entries))),
        ("fuzzer stability", Box::new(fuzzer_stability)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
