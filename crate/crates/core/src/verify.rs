//! Assertion suites over algebras and structures, and the report format
//! used by `retic verify`.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{check_morphism, quotient, validate_algebra, FiniteAlgebra, Morphism, LATTICE_TAG, RING_TAG};
use crate::commutator::{iterated_commutator, lattice_meet_oracle, ring_ideal_oracle};
use crate::corpus::Entry;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::report::{first_failure, Check, Checker, Verdict};
use crate::reticulation::{
    annihilator_transfer, boolean_center_iso, check_fixedpoint, homeomorphism, is_quasi_commutative,
    is_spectral_algebra, lambda_suite, min_prime_suite, retic_functor, star_suite, Analysis,
};
use crate::spectrum::{is_admissible, is_prime, is_prime_full, morphism_adjoints};
use crate::structure::{from_finite_algebra, validate_structure, AlgebraLattice, CommutatorLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Reticulation,
    Boolean,
    Annihilator,
    Minprime,
    Functor,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "core" => Suite::Core,
            "reticulation" => Suite::Reticulation,
            "boolean" => Suite::Boolean,
            "annihilator" => Suite::Annihilator,
            "minprime" => Suite::Minprime,
            "functor" => Suite::Functor,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite `{s}`"))),
        })
    }
}

/// Parses one `.alg` or `.cms` file.
pub fn load_file(path: &Path) -> Result<Entry> {
    let raw = fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("alg") => Ok(Entry::Algebra(validate_algebra(&raw)?)),
        Some("cms") => Ok(Entry::Structure(validate_structure(&raw, None)?)),
        _ => Err(Error::Parse(format!(
            "`{}`: expected a .alg or .cms file",
            path.display()
        ))),
    }
}

/// A file, or every `.alg` / `.cms` file of a directory in file-name order.
pub fn load_path(path: &Path) -> Result<Vec<Entry>> {
    if !path.is_dir() {
        return Ok(vec![load_file(path)?]);
    }
    let mut files: Vec<_> = fs::read_dir(path)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("alg" | "cms")));
    files.sort();
    files.iter().map(|p| load_file(p)).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub observed: usize,
    pub skipped: usize,
}

impl Summary {
    fn add(&mut self, checks: &[Check]) {
        for c in checks {
            match c.verdict {
                Verdict::Pass => self.pass += 1,
                Verdict::Fail { .. } => self.fail += 1,
                Verdict::Observed { .. } => self.observed += 1,
                Verdict::Skipped { .. } => self.skipped += 1,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub instance: String,
    pub kind: &'static str,
    pub strict: bool,
    pub checks: Vec<Check>,
    /// Set when the analysis itself could not be built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub instances: Vec<InstanceReport>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0 || self.instances.iter().any(|i| i.error.is_some())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, failures with witnesses.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for inst in &self.instances {
            out.push_str(&format!("{} ({})\n", inst.instance, inst.kind));
            if let Some(e) = &inst.error {
                out.push_str(&format!("  error: {e}\n"));
            }
            for c in &inst.checks {
                let detail = match &c.verdict {
                    Verdict::Fail { witness } => format!(": {witness}"),
                    Verdict::Observed { holds, witness } => match witness {
                        Some(w) => format!(": holds = {holds} ({w})"),
                        None => format!(": holds = {holds}"),
                    },
                    Verdict::Skipped { reason } => format!(": {reason}"),
                    Verdict::Pass => String::new(),
                };
                out.push_str(&format!("  {:<8} {}{}\n", c.verdict.tag(), c.id, detail));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} observed, {} skipped\n",
            s.pass, s.fail, s.observed, s.skipped
        ));
        out
    }
}

/// A reference computation of the commutator for a tagged algebra.
type Oracle = fn(&FiniteAlgebra, &Partition, &Partition) -> Result<Partition>;

/// Largest `n` used for the iterated-commutator laws.
pub const MAX_POWER: usize = 3;

/// Commutator axioms, coprimality laws and radical laws.
pub fn core_checks<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>) -> Vec<Check> {
    let s = an.s;
    let n = s.len();
    let top = s.top();
    let lab = |a: usize| s.label(a);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let triples: Vec<(usize, usize, usize)> = pairs
        .iter()
        .flat_map(|&(a, b)| (0..n).map(move |c| (a, b, c)))
        .collect();
    let c = |a, b| s.commutator(a, b);
    let rho = |a: usize| an.spec.rho(a);
    let mut ck = Checker::new(s.is_strict());
    let show2 = |p: &(usize, usize)| format!("({}, {})", lab(p.0), lab(p.1));
    let show3 = |t: &(usize, usize, usize)| format!("({}, {}, {})", lab(t.0), lab(t.1), lab(t.2));

    ck.check_as(
        "commutator-symmetric",
        true,
        first_failure(pairs.iter(), |&&(a, b)| c(a, b) == c(b, a), |p| show2(p)),
    );
    ck.check_as(
        "commutator-below-meet",
        true,
        first_failure(pairs.iter(), |&&(a, b)| s.leq(c(a, b), s.meet(a, b)), |p| show2(p)),
    );
    ck.check_as(
        "commutator-monotone",
        true,
        first_failure(
            triples.iter(),
            |&&(a, b, d)| !s.leq(b, d) || s.leq(c(a, b), c(a, d)),
            |t| show3(t),
        ),
    );
    ck.check_as(
        "commutator-join-distributive",
        true,
        first_failure(
            triples.iter(),
            |&&(a, b, d)| c(a, s.join(b, d)) == s.join(c(a, b), c(a, d)),
            |t| show3(t),
        ),
    );
    ck.check(
        "commutator-with-top",
        first_failure(0..n, |&a| c(a, top) == a, |a| format!("[{0}, ∇] ≠ {0}", lab(*a))),
    );
    ck.check(
        "coprime-commutator-is-meet",
        first_failure(
            pairs.iter(),
            |&&(a, b)| s.join(a, b) != top || c(a, b) == s.meet(a, b),
            |p| show2(p),
        ),
    );
    ck.check(
        "coprime-with-commutator-and-meet",
        first_failure(
            triples.iter(),
            |&&(a, b, d)| {
                !(s.join(a, b) == top && s.join(a, d) == top)
                    || (s.join(a, c(b, d)) == top && s.join(a, s.meet(b, d)) == top)
            },
            |t| show3(t),
        ),
    );
    ck.check(
        "coprime-powers",
        first_failure(
            pairs.iter().flat_map(|&(a, b)| (1..=MAX_POWER).map(move |k| (a, b, k))),
            |&(a, b, k)| {
                s.join(a, b) != top || s.join(iterated_commutator(s, a, k), iterated_commutator(s, b, k)) == top
            },
            |&(a, b, k)| format!("({}, {}), n = {k}", lab(a), lab(b)),
        ),
    );
    ck.check(
        "radical-extensive",
        first_failure(0..n, |&a| s.leq(a, rho(a)), |a| lab(*a)),
    );
    ck.check(
        "radical-of-meet-and-commutator",
        first_failure(
            pairs.iter(),
            |&&(a, b)| {
                let m = s.meet(rho(a), rho(b));
                rho(s.meet(a, b)) == m && rho(c(a, b)) == m
            },
            |p| show2(p),
        ),
    );
    ck.check(
        "radical-top-iff-top",
        first_failure(0..n, |&a| (rho(a) == top) == (a == top), |a| lab(*a)),
    );
    ck.check(
        "radical-of-join",
        first_failure(
            pairs.iter(),
            |&&(a, b)| rho(s.join(a, b)) == rho(s.join(rho(a), rho(b))),
            |p| show2(p),
        ),
    );
    ck.check(
        "radical-idempotent",
        first_failure(0..n, |&a| rho(rho(a)) == rho(a), |a| lab(*a)),
    );
    ck.check(
        "radical-coprime",
        first_failure(
            pairs.iter(),
            |&&(a, b)| (s.join(rho(a), rho(b)) == top) == (s.join(a, b) == top),
            |p| show2(p),
        ),
    );
    ck.check(
        "radical-of-powers",
        first_failure(
            (0..n).flat_map(|a| (0..=MAX_POWER).map(move |k| (a, k))),
            |&(a, k)| rho(iterated_commutator(s, a, k)) == rho(a),
            |&(a, k)| format!("{}, n = {k}", lab(a)),
        ),
    );
    ck.check(
        "prime-test-compact-matches-full",
        first_failure(0..n, |&p| is_prime(s, p) == is_prime_full(s, p), |p| lab(*p)),
    );
    ck.check(
        "maximal-is-prime",
        first_failure(an.spec.maximals.iter().copied(), |&m| an.spec.is_prime(m), |m| lab(*m)),
    );
    ck.check_as(
        "radicals-closed-under-meet",
        true,
        first_failure(
            pairs.iter(),
            |&&(a, b)| {
                let (ra, rb) = (rho(a), rho(b));
                rho(s.meet(ra, rb)) == s.meet(ra, rb)
            },
            |p| show2(p),
        ),
    );
    ck.check(
        "zariski-basic-open-identities",
        an.zariski.identity_failures.first().cloned(),
    );
    ck.check("zariski-compact-basis", an.zariski.basis_violation.clone());
    ck.into_checks()
}

/// Checks that need the concrete algebra: oracles, backend agreement and
/// the image law along canonical projections.
pub fn algebra_checks(s: &AlgebraLattice) -> Result<Vec<Check>> {
    let a = s.algebra();
    let con = s.con();
    let n = con.len();
    let mut ck = Checker::new(true);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let oracle: Option<(&str, Oracle)> = if a.has_tag(RING_TAG) {
        Some(("commutator-matches-ideal-product", ring_ideal_oracle))
    } else if a.has_tag(LATTICE_TAG) {
        Some(("commutator-matches-meet", lattice_meet_oracle))
    } else {
        None
    };
    match oracle {
        Some((id, f)) => {
            let mut failure = None;
            for &(x, y) in &pairs {
                let expected = f(a, con.get(x), con.get(y))?;
                if con.get(s.commutator(x, y)) != &expected {
                    failure = Some(format!("({}, {})", con.get(x), con.get(y)));
                    break;
                }
            }
            ck.check(id, failure);
        }
        None => ck.skip("commutator-oracle", "algebra carries no ring or lattice tag"),
    }
    let st = from_finite_algebra(a)?;
    let agree = {
        let (x, y) = (Analysis::new(s)?, Analysis::new(&st)?);
        x.spec == y.spec && x.ret == y.ret && x.ids == y.ids
    };
    ck.check(
        "algebra-and-structure-backends-agree",
        (!agree).then(|| "spectrum or reticulation differs between backends".into()),
    );
    let mut failure = None;
    'outer: for t in 0..n {
        let theta = con.get(t);
        let (q, p) = quotient(a, theta)?;
        let sq = AlgebraLattice::new(q)?;
        let adj = morphism_adjoints(&p, con, sq.con())?;
        for &(x, y) in &pairs {
            let lhs = s.join(s.commutator(x, y), t);
            let image = |z: usize| adj.bullet[s.join(z, t)];
            let rhs = adj.star[sq.commutator(image(x), image(y))];
            if lhs != rhs {
                failure = Some(format!("θ = {}, (α, β) = ({}, {})", theta, con.get(x), con.get(y)));
                break 'outer;
            }
        }
    }
    ck.check("surjective-image-law-on-projections", failure);
    Ok(ck.into_checks())
}

/// Runs the reticulation suite pieces on one analysis.
pub fn reticulation_checks<S: CommutatorLattice + ?Sized>(an: &Analysis<'_, S>) -> Vec<Check> {
    let qc = is_quasi_commutative(an);
    let mut out = lambda_suite(an);
    out.extend(star_suite(an));
    out.extend(check_fixedpoint(an).checks);
    out.extend(homeomorphism(an, qc.holds));
    out.extend(qc.checks);
    out.extend(is_spectral_algebra(an).checks);
    out
}

fn structure_checks<S: CommutatorLattice + ?Sized>(s: &S, suite: Suite) -> Result<Vec<Check>> {
    let an = Analysis::new(s)?;
    let mut out = Vec::new();
    if suite.includes(Suite::Core) {
        out.extend(core_checks(&an));
    }
    if suite.includes(Suite::Reticulation) {
        out.extend(reticulation_checks(&an));
    }
    if suite.includes(Suite::Boolean) {
        out.extend(boolean_center_iso(&an).checks);
    }
    if suite.includes(Suite::Annihilator) {
        out.extend(annihilator_transfer(&an));
    }
    if suite.includes(Suite::Minprime) {
        out.extend(min_prime_suite(&an));
    }
    Ok(out)
}

/// The functor square for one morphism between algebras.
pub fn functor_checks(u: &Morphism, id: &str) -> Result<Vec<Check>> {
    let (sa, sb) = (
        AlgebraLattice::new(u.source().clone())?,
        AlgebraLattice::new(u.target().clone())?,
    );
    let (aa, ab) = (Analysis::new(&sa)?, Analysis::new(&sb)?);
    let adj = morphism_adjoints(u, sa.con(), sb.con())?;
    let mut ck = Checker::new(true);
    if !is_admissible(&adj, &aa.spec, &ab.spec) {
        ck.skip(id, "morphism is not admissible");
        return Ok(ck.into_checks());
    }
    let failure = match retic_functor(&adj.bullet, &aa, &ab) {
        Ok(report) => report
            .checks
            .iter()
            .find(|c| c.verdict.is_fail())
            .map(|c| format!("{}: {:?}", c.id, c.verdict)),
        Err(e) => Some(e.to_string()),
    };
    ck.check(id, failure);
    Ok(ck.into_checks())
}

/// Identity and every canonical projection out of `a`.
fn own_morphisms(a: &FiniteAlgebra) -> Result<Vec<Check>> {
    let mut out = functor_checks(&Morphism::identity(a), "functor-identity")?;
    let con = AlgebraLattice::new(a.clone())?;
    for (t, theta) in con.con().elements().iter().enumerate() {
        let (_, p) = quotient(a, theta)?;
        out.extend(functor_checks(&p, &format!("functor-projection@c{t}"))?);
    }
    Ok(out)
}

/// `Zn → Zm` reductions between ring-tagged members named `Z{n}`, `m | n`.
fn reduction_morphisms(entries: &[Entry]) -> Result<Vec<(String, Vec<Check>)>> {
    let zn: Vec<(usize, &FiniteAlgebra)> = entries
        .iter()
        .filter_map(|e| match e {
            Entry::Algebra(a) if a.has_tag(RING_TAG) => {
                a.name().strip_prefix('Z').and_then(|k| k.parse().ok()).map(|k| (k, a))
            }
            _ => None,
        })
        .collect();
    let mut out = Vec::new();
    for &(n, a) in &zn {
        for &(m, b) in &zn {
            if m < n && n % m == 0 {
                let map: Vec<usize> = (0..n).map(|x| x % m).collect();
                let Ok(u) = check_morphism(&map, a, b) else { continue };
                out.push((
                    a.name().to_string(),
                    functor_checks(&u, &format!("functor-reduction-to-{}", b.name()))?,
                ));
            }
        }
    }
    Ok(out)
}

/// Runs `suite` over the entries, in order.
pub fn verify_entries(entries: &[Entry], suite: Suite) -> VerifyReport {
    let mut instances: Vec<InstanceReport> = entries
        .iter()
        .map(|e| {
            let (kind, strict) = match e {
                Entry::Algebra(_) => ("algebra", true),
                Entry::Structure(s) => ("structure", s.is_strict()),
            };
            let checks = match e {
                Entry::Algebra(a) => AlgebraLattice::new(a.clone()).and_then(|s| {
                    let mut out = structure_checks(&s, suite)?;
                    if suite.includes(Suite::Core) {
                        out.extend(algebra_checks(&s)?);
                    }
                    if suite.includes(Suite::Functor) {
                        out.extend(own_morphisms(a)?);
                    }
                    Ok(out)
                }),
                Entry::Structure(s) => structure_checks(s, suite).map(|mut out| {
                    if suite.includes(Suite::Functor) {
                        let mut ck = Checker::new(true);
                        ck.skip("functor", "abstract structures carry no morphisms");
                        out.extend(ck.into_checks());
                    }
                    out
                }),
            };
            let (checks, error) = match checks {
                Ok(c) => (c, None),
                Err(err) => (Vec::new(), Some(err.to_string())),
            };
            InstanceReport {
                instance: e.name().to_string(),
                kind,
                strict,
                checks,
                error,
            }
        })
        .collect();
    if suite.includes(Suite::Functor) {
        match reduction_morphisms(entries) {
            Ok(found) => {
                for (name, checks) in found {
                    if let Some(inst) = instances.iter_mut().find(|i| i.instance == name) {
                        inst.checks.extend(checks);
                    }
                }
            }
            Err(err) => {
                if let Some(inst) = instances.first_mut() {
                    inst.error = Some(err.to_string());
                }
            }
        }
    }
    let mut summary = Summary::default();
    for inst in &instances {
        summary.add(&inst.checks);
    }
    VerifyReport {
        suite,
        instances,
        summary,
    }
}
