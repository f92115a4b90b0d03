//! Commutator structures: a finite bounded lattice with a commutator
//! operation, a designated compact set `K` and a principal generator set
//! `P ⊆ K`.
//!
//! [`CommutatorLattice`] is the interface spectrum and reticulation code is
//! written against. It is implemented by [`CommutatorStructure`] (validated,
//! possibly user-supplied) and by [`AlgebraLattice`] (`Con(A)` of a finite
//! algebra with its computed commutator table).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::commutator::{commutator_table, CommutatorTable};
use crate::congruence::{con_lattice, CongruenceLattice};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Join-density of `K` is required.
    Strict,
    /// Join-density waived; results are a formal model only.
    Lax,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Strict => write!(f, "strict"),
            Mode::Lax => write!(f, "lax"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Mode::Strict),
            "lax" => Ok(Mode::Lax),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

pub trait CommutatorLattice {
    fn name(&self) -> &str;
    fn lattice(&self) -> &FiniteLattice;
    fn commutator(&self, a: usize, b: usize) -> usize;
    /// `K`, ascending.
    fn compact(&self) -> &[usize];
    /// `P`, ascending.
    fn principal(&self) -> &[usize];
    fn mode(&self) -> Mode;
    fn label(&self, a: usize) -> String;

    fn is_compact(&self, a: usize) -> bool {
        self.compact().binary_search(&a).is_ok()
    }

    fn len(&self) -> usize {
        self.lattice().len()
    }

    fn is_empty(&self) -> bool {
        self.lattice().is_empty()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice().leq(a, b)
    }

    fn join(&self, a: usize, b: usize) -> usize {
        self.lattice().join(a, b)
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice().meet(a, b)
    }

    fn bottom(&self) -> usize {
        self.lattice().bottom()
    }

    fn top(&self) -> usize {
        self.lattice().top()
    }

    fn is_strict(&self) -> bool {
        self.mode() == Mode::Strict
    }
}

/// A validated commutator structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorStructure {
    name: String,
    labels: Vec<String>,
    lattice: FiniteLattice,
    comm: Vec<Vec<usize>>,
    compact: Vec<usize>,
    principal: Vec<usize>,
    mode: Mode,
}

impl CommutatorLattice for CommutatorStructure {
    fn name(&self) -> &str {
        &self.name
    }

    fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    fn commutator(&self, a: usize, b: usize) -> usize {
        self.comm[a][b]
    }

    fn compact(&self) -> &[usize] {
        &self.compact
    }

    fn principal(&self) -> &[usize] {
        &self.principal
    }

    fn mode(&self) -> Mode {
        self.mode
    }

    fn label(&self, a: usize) -> String {
        self.labels[a].clone()
    }
}

impl CommutatorStructure {
    /// Checks every structure law for the requested mode.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        lattice: FiniteLattice,
        comm: Vec<Vec<usize>>,
        compact: Vec<usize>,
        principal: Option<Vec<usize>>,
        mode: Mode,
    ) -> Result<Self> {
        let mut compact = compact;
        compact.sort_unstable();
        compact.dedup();
        let mut principal = principal.unwrap_or_else(|| compact.clone());
        principal.sort_unstable();
        principal.dedup();
        let s = CommutatorStructure {
            name: name.into(),
            labels,
            lattice,
            comm,
            compact,
            principal,
            mode,
        };
        s.check()?;
        Ok(s)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn check(&self) -> Result<()> {
        let n = self.lattice.len();
        let l = &self.lattice;
        let name = |a: usize| self.labels[a].as_str();
        if self.labels.len() != n || self.comm.len() != n || self.comm.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("label/commutator table size mismatch".into()));
        }
        if self.compact.iter().chain(&self.principal).any(|&a| a >= n) {
            return Err(Error::RangeViolation("designated element out of range".into()));
        }
        // K
        for required in [l.bottom(), l.top()] {
            if !self.is_compact(required) {
                return Err(Error::CompactSetViolation(format!(
                    "`{}` must be compact",
                    name(required)
                )));
            }
        }
        for &a in &self.compact {
            for &b in &self.compact {
                if !self.is_compact(l.join(a, b)) {
                    return Err(Error::CompactSetViolation(format!(
                        "K not closed under join: {} ∨ {} = {}",
                        name(a),
                        name(b),
                        name(l.join(a, b))
                    )));
                }
            }
        }
        // commutator
        let c = |a: usize, b: usize| self.comm[a][b];
        for a in 0..n {
            for b in 0..n {
                if c(a, b) >= n {
                    return Err(Error::RangeViolation(format!(
                        "[{}, {}] out of range",
                        name(a),
                        name(b)
                    )));
                }
                if c(a, b) != c(b, a) {
                    return Err(Error::CommutatorAxiomViolation(format!(
                        "not commutative at ({}, {})",
                        name(a),
                        name(b)
                    )));
                }
                if !l.leq(c(a, b), l.meet(a, b)) {
                    return Err(Error::CommutatorAxiomViolation(format!(
                        "[{}, {}] = {} is not below the meet",
                        name(a),
                        name(b),
                        name(c(a, b))
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    if l.leq(b, d) && !l.leq(c(a, b), c(a, d)) {
                        return Err(Error::CommutatorAxiomViolation(format!(
                            "not monotone: {} ≤ {} but [{a_}, {}] ≰ [{a_}, {}]",
                            name(b),
                            name(d),
                            name(b),
                            name(d),
                            a_ = name(a)
                        )));
                    }
                    if c(a, l.join(b, d)) != l.join(c(a, b), c(a, d)) {
                        return Err(Error::CommutatorAxiomViolation(format!(
                            "not join-distributive at ({}, {}, {})",
                            name(a),
                            name(b),
                            name(d)
                        )));
                    }
                }
            }
        }
        if c(l.top(), l.top()) != l.top() {
            return Err(Error::CommutatorAxiomViolation(format!(
                "[{t}, {t}] = {} but must be {t}",
                name(c(l.top(), l.top())),
                t = name(l.top())
            )));
        }
        // P
        for &p in &self.principal {
            if !self.is_compact(p) {
                return Err(Error::CompactSetViolation(format!(
                    "principal element `{}` is not compact",
                    name(p)
                )));
            }
        }
        for &k in &self.compact {
            let below = self.principal.iter().copied().filter(|&p| l.leq(p, k));
            if l.join_all(below) != k {
                return Err(Error::CompactSetViolation(format!(
                    "`{}` is not a join of principal elements",
                    name(k)
                )));
            }
        }
        if self.mode == Mode::Strict {
            for a in 0..n {
                let below = self.compact.iter().copied().filter(|&k| l.leq(k, a));
                if l.join_all(below) != a {
                    return Err(Error::JoinDensityViolation(name(a).to_string()));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// file format

#[derive(Debug, Serialize, Deserialize)]
struct RawStructure {
    kind: String,
    #[serde(default = "default_name")]
    name: String,
    elements: Vec<String>,
    leq: Vec<(String, String)>,
    #[serde(default)]
    commutator: BTreeMap<String, String>,
    compact: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    principal: Option<Vec<String>>,
    mode: Mode,
}

fn default_name() -> String {
    "structure".to_string()
}

/// Topological order of the lattice, ties broken by label.
fn canonical_order(lattice: &FiniteLattice, labels: &[String]) -> Vec<usize> {
    let n = lattice.len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&a| !placed[a] && (0..n).all(|b| placed[b] || b == a || !lattice.leq(b, a)))
            .min_by(|&a, &b| labels[a].cmp(&labels[b]))
            .expect("finite order has a minimal element");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Parses the JSON structure format and validates it; `mode` overrides the
/// file's mode when given.
pub fn validate_structure(raw: &str, mode: Option<Mode>) -> Result<CommutatorStructure> {
    let raw: RawStructure = serde_json::from_str(raw)?;
    if raw.kind != "commutator-structure" {
        return Err(Error::Parse(format!(
            "expected kind \"commutator-structure\", found \"{}\"",
            raw.kind
        )));
    }
    let n = raw.elements.len();
    let lookup = |s: &str| -> Result<usize> {
        raw.elements
            .iter()
            .position(|e| e == s)
            .ok_or_else(|| Error::Parse(format!("unknown element `{s}`")))
    };
    for (i, e) in raw.elements.iter().enumerate() {
        if raw.elements[..i].contains(e) {
            return Err(Error::Parse(format!("duplicate element `{e}`")));
        }
    }
    let pairs = raw
        .leq
        .iter()
        .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
        .collect::<Result<Vec<_>>>()?;
    let file_lattice = FiniteLattice::from_relation(n, &pairs)?;
    let order = canonical_order(&file_lattice, &raw.elements);
    let mut new_index = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let labels: Vec<String> = order.iter().map(|&old| raw.elements[old].clone()).collect();
    let pairs: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (new_index[a], new_index[b])).collect();
    let lattice = FiniteLattice::from_relation(n, &pairs)?;

    let mut comm: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| lattice.meet(a, b)).collect()).collect();
    let mut set: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (key, value) in &raw.commutator {
        let (x, y) = key
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("commutator key `{key}` is not \"x,y\"")))?;
        let (x, y) = (new_index[lookup(x.trim())?], new_index[lookup(y.trim())?]);
        let v = new_index[lookup(value)?];
        let k = (x.min(y), x.max(y));
        if let Some(&prev) = set.get(&k) {
            if prev != v {
                return Err(Error::CommutatorAxiomViolation(format!(
                    "conflicting entries for [{}, {}]",
                    labels[k.0], labels[k.1]
                )));
            }
        }
        set.insert(k, v);
        comm[x][y] = v;
        comm[y][x] = v;
    }
    let to_idx = |names: &[String]| -> Result<Vec<usize>> { names.iter().map(|s| Ok(new_index[lookup(s)?])).collect() };
    let compact = to_idx(&raw.compact)?;
    let principal = raw.principal.as_deref().map(to_idx).transpose()?;
    CommutatorStructure::new(
        raw.name,
        labels,
        lattice,
        comm,
        compact,
        principal,
        mode.unwrap_or(raw.mode),
    )
}

impl CommutatorStructure {
    /// Serializes with covering pairs for `leq` and only the commutator
    /// entries that differ from the meet.
    pub fn to_json(&self) -> String {
        let l = &self.lattice;
        let n = l.len();
        let lab = |a: usize| self.labels[a].clone();
        let mut commutator = BTreeMap::new();
        for a in 0..n {
            for b in a..n {
                if self.comm[a][b] != l.meet(a, b) {
                    commutator.insert(format!("{},{}", lab(a), lab(b)), lab(self.comm[a][b]));
                }
            }
        }
        let raw = RawStructure {
            kind: "commutator-structure".into(),
            name: self.name.clone(),
            elements: self.labels.clone(),
            leq: l.covers().into_iter().map(|(a, b)| (lab(a), lab(b))).collect(),
            commutator,
            compact: self.compact.iter().map(|&a| lab(a)).collect(),
            principal: (self.principal != self.compact).then(|| self.principal.iter().map(|&a| lab(a)).collect()),
            mode: self.mode,
        };
        let mut s = serde_json::to_string_pretty(&raw).expect("structure serializes");
        s.push('\n');
        s
    }
}

// ---------------------------------------------------------------------------
// finite algebras

/// `Con(A)` of a finite algebra with its commutator table.
#[derive(Debug, Clone)]
pub struct AlgebraLattice {
    algebra: FiniteAlgebra,
    con: CongruenceLattice,
    table: CommutatorTable,
    compact: Vec<usize>,
    principal: Vec<usize>,
}

impl AlgebraLattice {
    pub fn new(algebra: FiniteAlgebra) -> Result<Self> {
        let con = con_lattice(&algebra);
        let table = commutator_table(&algebra, &con)?;
        let compact = (0..con.len()).collect();
        let mut principal: Vec<usize> = con.principal().to_vec();
        principal.push(con.delta());
        principal.sort_unstable();
        principal.dedup();
        Ok(AlgebraLattice {
            algebra,
            con,
            table,
            compact,
            principal,
        })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn con(&self) -> &CongruenceLattice {
        &self.con
    }

    pub fn table(&self) -> &CommutatorTable {
        &self.table
    }

    /// Copies the tables into a strict-mode [`CommutatorStructure`] with
    /// elements labeled `c0..ck`.
    pub fn to_structure(&self) -> Result<CommutatorStructure> {
        let n = self.con.len();
        CommutatorStructure::new(
            self.algebra.name(),
            (0..n).map(|i| format!("c{i}")).collect(),
            self.con.lattice().clone(),
            (0..n).map(|a| (0..n).map(|b| self.table.get(a, b)).collect()).collect(),
            self.compact.clone(),
            Some(self.principal.clone()),
            Mode::Strict,
        )
    }
}

impl CommutatorLattice for AlgebraLattice {
    fn name(&self) -> &str {
        self.algebra.name()
    }

    fn lattice(&self) -> &FiniteLattice {
        self.con.lattice()
    }

    fn commutator(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    fn compact(&self) -> &[usize] {
        &self.compact
    }

    fn principal(&self) -> &[usize] {
        &self.principal
    }

    fn mode(&self) -> Mode {
        Mode::Strict
    }

    fn label(&self, a: usize) -> String {
        format!("c{a}")
    }
}

/// `K` = all congruences, `P` = `PCon(A) ∪ {Δ}`, strict mode.
pub fn from_finite_algebra(a: &FiniteAlgebra) -> Result<CommutatorStructure> {
    AlgebraLattice::new(a.clone())?.to_structure()
}
