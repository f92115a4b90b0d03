//! Built-in algebras and structures, the generator families, and the
//! shipped corpus directory.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::{FiniteAlgebra, Operation, LATTICE_TAG, RING_TAG};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::structure::{validate_structure, CommutatorStructure};

/// 4-chain `0 < a < b < 1`, commutator = meet except `[b,b] = a`,
/// `K = {0, b, 1}`. Not join-dense, so only valid in lax mode.
pub const LAX_CHAIN: &str = r#"{
  "kind": "commutator-structure",
  "name": "lax-chain",
  "elements": ["0", "a", "b", "1"],
  "leq": [["0", "a"], ["a", "b"], ["b", "1"]],
  "commutator": {"b,b": "a"},
  "compact": ["0", "b", "1"],
  "mode": "lax"
}
"#;

/// 3-chain `0 < a < 1` with commutator = meet; both `0` and `a` are prime.
pub const STRICT_CHAIN: &str = r#"{
  "kind": "commutator-structure",
  "name": "strict-chain",
  "elements": ["0", "a", "1"],
  "leq": [["0", "a"], ["a", "1"]],
  "compact": ["0", "a", "1"],
  "mode": "strict"
}
"#;

/// The ring `Z/nZ` with `+`, `-`, `*`, `0`, `1`.
pub fn zn(n: usize) -> FiniteAlgebra {
    ring(
        format!("Z{n}"),
        n,
        |x, y| (x + y) % n,
        |x| (n - x) % n,
        |x, y| (x * y) % n,
        0,
        1 % n,
    )
}

fn ring(
    name: String,
    n: usize,
    add: impl Fn(usize, usize) -> usize,
    neg: impl Fn(usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
    zero: usize,
    one: usize,
) -> FiniteAlgebra {
    let ops = vec![
        Operation::from_fn("+", 2, n, |a| add(a[0], a[1])),
        Operation::from_fn("-", 1, n, |a| neg(a[0])),
        Operation::from_fn("*", 2, n, |a| mul(a[0], a[1])),
        Operation::new("0", 0, vec![zero]),
        Operation::new("1", 0, vec![one]),
    ];
    FiniteAlgebra::new(name, n, ops, vec![RING_TAG.to_string()]).expect("ring tables are valid")
}

/// 2×2 matrices over Z2; entries `[[a, b], [c, d]]` encoded as `8a + 4b + 2c + d`.
fn mat_mul(x: usize, y: usize) -> usize {
    let e = |m: usize| [(m >> 3) & 1, (m >> 2) & 1, (m >> 1) & 1, m & 1];
    let (p, q) = (e(x), e(y));
    let a = (p[0] * q[0] + p[1] * q[2]) % 2;
    let b = (p[0] * q[1] + p[1] * q[3]) % 2;
    let c = (p[2] * q[0] + p[3] * q[2]) % 2;
    let d = (p[2] * q[1] + p[3] * q[3]) % 2;
    8 * a + 4 * b + 2 * c + d
}

/// The simple noncommutative ring `M2(Z2)`.
pub fn m2z2() -> FiniteAlgebra {
    ring("M2(Z2)".into(), 16, |x, y| x ^ y, |x| x, mat_mul, 0, 9)
}

/// Upper-triangular 2×2 matrices over Z2; `[[a, b], [0, d]]` encoded as
/// `4a + 2b + d`.
pub fn t2z2() -> FiniteAlgebra {
    let widen = |t: usize| 8 * ((t >> 2) & 1) + 4 * ((t >> 1) & 1) + (t & 1);
    let narrow = |m: usize| 4 * ((m >> 3) & 1) + 2 * ((m >> 2) & 1) + (m & 1);
    ring(
        "T2(Z2)".into(),
        8,
        |x, y| x ^ y,
        |x| x,
        |x, y| narrow(mat_mul(widen(x), widen(y))),
        0,
        5,
    )
}

/// A finite lattice as a bounded-lattice algebra with `meet`, `join`, `0`, `1`.
pub fn lattice_algebra(name: impl Into<String>, l: &FiniteLattice) -> FiniteAlgebra {
    let n = l.len();
    let ops = vec![
        Operation::from_fn("meet", 2, n, |a| l.meet(a[0], a[1])),
        Operation::from_fn("join", 2, n, |a| l.join(a[0], a[1])),
        Operation::new("0", 0, vec![l.bottom()]),
        Operation::new("1", 0, vec![l.top()]),
    ];
    FiniteAlgebra::new(name, n, ops, vec![LATTICE_TAG.to_string()]).expect("lattice tables are valid")
}

/// The chain `C_n` as a bounded lattice.
pub fn chain(n: usize) -> FiniteAlgebra {
    lattice_algebra(format!("C{n}"), &FiniteLattice::chain(n))
}

/// The diamond `M3`.
pub fn diamond() -> FiniteAlgebra {
    let l =
        FiniteLattice::from_relation(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).expect("M3 is a lattice");
    lattice_algebra("M3", &l)
}

/// The pentagon `N5`: `0 < a < c < 1`, `0 < b < 1`.
pub fn pentagon_lattice() -> FiniteAlgebra {
    let l = FiniteLattice::from_relation(5, &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)]).expect("N5 is a lattice");
    lattice_algebra("N5", &l)
}

pub fn lax_chain() -> CommutatorStructure {
    validate_structure(LAX_CHAIN, None).expect("built-in structure is valid")
}

pub fn strict_chain() -> CommutatorStructure {
    validate_structure(STRICT_CHAIN, None).expect("built-in structure is valid")
}

// ---------------------------------------------------------------------------
// generators

/// `Z2 … Z_max`.
pub fn rings_zn(max: usize) -> Vec<FiniteAlgebra> {
    (2..=max).map(zn).collect()
}

/// `C2 … C_max`.
pub fn lattice_chains(max: usize) -> Vec<FiniteAlgebra> {
    (2..=max).map(chain).collect()
}

/// A random bounded distributive lattice as a ∪/∩-closed family of subsets
/// of a 3-element set, with at most `max_size` members.
fn random_family(rng: &mut ChaCha8Rng, max_size: usize) -> Vec<u8> {
    loop {
        let mut family: BTreeSet<u8> = [0u8, 7].into_iter().collect();
        let extra = rng.gen_range(0..=3);
        for _ in 0..extra {
            family.insert(rng.gen_range(1..7));
        }
        loop {
            let current: Vec<u8> = family.iter().copied().collect();
            let before = family.len();
            for &x in &current {
                for &y in &current {
                    family.insert(x | y);
                    family.insert(x & y);
                }
            }
            if family.len() == before {
                break;
            }
        }
        if family.len() <= max_size {
            let mut members: Vec<u8> = family.into_iter().collect();
            members.sort_by_key(|&m| (m.count_ones(), m));
            return members;
        }
    }
}

/// One random lax-structure candidate as structure-file JSON. The lattice
/// is distributive, the commutator is the meet with a few entries lowered,
/// and `K` is a random join-closed set containing both bounds.
fn random_candidate(rng: &mut ChaCha8Rng, max_size: usize, name: &str) -> String {
    let family = random_family(rng, max_size);
    let n = family.len();
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let subset = |i: usize, j: usize| family[i] & !family[j] == 0;
    let leq: Vec<[&str; 2]> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && subset(i, j))
        .map(|(i, j)| [labels[i].as_str(), labels[j].as_str()])
        .collect();
    let index = |m: u8| family.iter().position(|&f| f == m).expect("family is ∩-closed");
    let mut commutator = serde_json::Map::new();
    let overrides = rng.gen_range(0..=2);
    for _ in 0..overrides {
        let (i, j) = (rng.gen_range(0..n - 1), rng.gen_range(0..n - 1));
        let meet = index(family[i] & family[j]);
        let below: Vec<usize> = (0..n).filter(|&k| subset(k, meet)).collect();
        let v = *below.choose(rng).expect("bottom lies below every element");
        let (i, j) = (i.min(j), i.max(j));
        commutator.insert(format!("{},{}", labels[i], labels[j]), json!(labels[v]));
    }
    let mut compact: BTreeSet<usize> = [0, n - 1].into_iter().collect();
    for k in 1..n - 1 {
        if rng.gen_bool(0.5) {
            compact.insert(k);
        }
    }
    loop {
        let current: Vec<usize> = compact.iter().copied().collect();
        let before = compact.len();
        for &x in &current {
            for &y in &current {
                compact.insert(index(family[x] | family[y]));
            }
        }
        if compact.len() == before {
            break;
        }
    }
    json!({
        "kind": "commutator-structure",
        "name": name,
        "elements": labels,
        "leq": leq,
        "commutator": commutator,
        "compact": compact.iter().map(|&k| labels[k].clone()).collect::<Vec<_>>(),
        "mode": "lax",
    })
    .to_string()
}

/// `count` random lax structures with at most `max_size` elements. Every
/// candidate is filtered through [`validate_structure`]; the generator keeps
/// drawing until `count` candidates have been accepted. Deterministic in
/// `seed`.
pub fn random_lax(max_size: usize, seed: u64, count: usize) -> Vec<CommutatorStructure> {
    assert!(max_size >= 2, "a random structure needs at least two elements");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let name = format!("lax-s{seed}-{}", out.len());
        let raw = random_candidate(&mut rng, max_size, &name);
        if let Ok(s) = validate_structure(&raw, None) {
            out.push(s);
        }
    }
    out
}

/// One member of the corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Algebra(FiniteAlgebra),
    Structure(CommutatorStructure),
}

impl Entry {
    pub fn name(&self) -> &str {
        use crate::structure::CommutatorLattice;
        match self {
            Entry::Algebra(a) => a.name(),
            Entry::Structure(s) => s.name(),
        }
    }

    /// File name in the shipped corpus directory.
    pub fn file_name(&self) -> String {
        let stem: String = self
            .name()
            .to_lowercase()
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
            .collect();
        match self {
            Entry::Algebra(_) => format!("{stem}.alg"),
            Entry::Structure(_) => format!("{stem}.cms"),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Entry::Algebra(a) => a.to_json(),
            Entry::Structure(s) => s.to_json(),
        }
    }
}

/// Number of fuzzer instances included in the built-in corpus.
pub const BUILTIN_FUZZ: usize = 5;

/// The built-in corpus in canonical order: rings, lattices, hand-made
/// structures, then a few fuzzer instances (seed 1).
pub fn builtin() -> Vec<Entry> {
    let mut out: Vec<Entry> = rings_zn(12).into_iter().map(Entry::Algebra).collect();
    out.push(Entry::Algebra(t2z2()));
    out.push(Entry::Algebra(m2z2()));
    out.extend(lattice_chains(5).into_iter().map(Entry::Algebra));
    out.push(Entry::Algebra(diamond()));
    out.push(Entry::Algebra(pentagon_lattice()));
    out.push(Entry::Structure(strict_chain()));
    out.push(Entry::Structure(lax_chain()));
    out.extend(random_lax(6, 1, BUILTIN_FUZZ).into_iter().map(Entry::Structure));
    out
}

/// A generator request as accepted by `retic corpus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    RingsZn { max: usize },
    LatticeChains { max: usize },
    RandomLax { max_size: usize, seed: u64, count: usize },
    Builtin,
}

pub fn generate(family: &Family) -> Vec<Entry> {
    match *family {
        Family::RingsZn { max } => rings_zn(max).into_iter().map(Entry::Algebra).collect(),
        Family::LatticeChains { max } => lattice_chains(max).into_iter().map(Entry::Algebra).collect(),
        Family::RandomLax { max_size, seed, count } => random_lax(max_size, seed, count)
            .into_iter()
            .map(Entry::Structure)
            .collect(),
        Family::Builtin => builtin(),
    }
}

/// Writes each entry to `dir` as `.alg` / `.cms`; returns the file names.
pub fn write_dir(entries: &[Entry], dir: &Path) -> Result<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut names = Vec::with_capacity(entries.len());
    for e in entries {
        let file = e.file_name();
        if names.contains(&file) {
            return Err(Error::Io(format!("two corpus entries map to `{file}`")));
        }
        fs::write(dir.join(&file), e.to_json())?;
        names.push(file);
    }
    Ok(names)
}
