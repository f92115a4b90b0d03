//! Finite algebras over a per-file signature.
//!
//! The universe is always `{0..n-1}`. A `k`-ary operation is stored as a flat
//! table of `n^k` entries indexed by `Σ args[j] · n^(k-1-j)`, so the first
//! argument is the most significant digit.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::partition::Partition;

pub const RING_TAG: &str = "ring";
pub const LATTICE_TAG: &str = "bounded-lattice";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    pub symbols: Vec<Symbol>,
}

impl Signature {
    pub fn arity_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().find(|s| s.name == name).map(|s| s.arity)
    }

    /// Same symbols with the same arities, in any order.
    pub fn matches(&self, other: &Signature) -> bool {
        self.symbols.len() == other.symbols.len()
            && self.symbols.iter().all(|s| other.arity_of(&s.name) == Some(s.arity))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operation {
    pub name: String,
    pub arity: usize,
    table: Vec<usize>,
}

impl Operation {
    pub fn new(name: impl Into<String>, arity: usize, table: Vec<usize>) -> Self {
        Operation {
            name: name.into(),
            arity,
            table,
        }
    }

    /// Tabulates `f` over all argument tuples of `universe^arity`.
    pub fn from_fn(name: impl Into<String>, arity: usize, universe: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let total = universe.pow(arity as u32);
        let mut args = vec![0; arity];
        let table = (0..total)
            .map(|idx| {
                decode(idx, universe, &mut args);
                f(&args)
            })
            .collect();
        Operation::new(name, arity, table)
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn eval(&self, n: usize, args: &[usize]) -> usize {
        self.table[encode(args, n)]
    }

    pub fn constant(&self) -> Option<usize> {
        (self.arity == 0).then(|| self.table[0])
    }
}

#[inline]
fn encode(args: &[usize], n: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

fn decode(mut idx: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    ops: Vec<Operation>,
    tags: Vec<String>,
}

impl FiniteAlgebra {
    /// Validates table shapes and ranges.
    pub fn new(name: impl Into<String>, size: usize, ops: Vec<Operation>, tags: Vec<String>) -> Result<Self> {
        if size == 0 {
            return Err(Error::RangeViolation("algebra size must be positive".into()));
        }
        for (i, op) in ops.iter().enumerate() {
            if ops[..i].iter().any(|o| o.name == op.name) {
                return Err(Error::Parse(format!("duplicate operation `{}`", op.name)));
            }
            let expected = size.pow(op.arity as u32);
            if op.table.len() != expected {
                return Err(Error::ArityMismatch {
                    op: op.name.clone(),
                    detail: format!("expected {expected} entries, found {}", op.table.len()),
                });
            }
            if let Some(pos) = op.table.iter().position(|&v| v >= size) {
                let mut args = vec![0; op.arity];
                decode(pos, size, &mut args);
                return Err(Error::RangeViolation(format!(
                    "`{}` at {:?} is {} but the universe has size {size}",
                    op.name, args, op.table[pos]
                )));
            }
        }
        let mut tags = tags;
        tags.sort();
        tags.dedup();
        Ok(FiniteAlgebra {
            name: name.into(),
            size,
            ops,
            tags,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn op(&self, name: &str) -> Option<&Operation> {
        self.ops.iter().find(|o| o.name == name)
    }

    pub fn tags(&self) -> &[String] {
        &self.tags
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn signature(&self) -> Signature {
        Signature {
            symbols: self
                .ops
                .iter()
                .map(|o| Symbol {
                    name: o.name.clone(),
                    arity: o.arity,
                })
                .collect(),
        }
    }

    /// Flat table offsets of all argument tuples whose `pos`-th argument is 0.
    /// Adding `x · n^(arity-1-pos)` substitutes `x` at that position.
    pub(crate) fn translation_bases(&self, op: &Operation, pos: usize) -> (Vec<usize>, usize) {
        let n = self.size;
        let stride = n.pow((op.arity - 1 - pos) as u32);
        let total = n.pow(op.arity as u32);
        let bases = (0..total).filter(|idx| (idx / stride).is_multiple_of(n)).collect();
        (bases, stride)
    }

    /// First operation/argument tuple where `p` is not preserved.
    pub fn compatibility_witness(&self, p: &Partition) -> Option<(String, Vec<usize>, Vec<usize>)> {
        let n = self.size;
        for op in &self.ops {
            for pos in 0..op.arity {
                let (bases, stride) = self.translation_bases(op, pos);
                for &base in &bases {
                    for x in 0..n {
                        let r = p.rep(x);
                        if r == x {
                            continue;
                        }
                        let fx = op.table[base + x * stride];
                        let fr = op.table[base + r * stride];
                        if !p.related(fx, fr) {
                            let mut a = vec![0; op.arity];
                            decode(base + x * stride, n, &mut a);
                            let mut b = a.clone();
                            b[pos] = r;
                            return Some((op.name.clone(), a, b));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_compatible(&self, p: &Partition) -> bool {
        p.len() == self.size && self.compatibility_witness(p).is_none()
    }

    pub(crate) fn require_congruence(&self, p: &Partition) -> Result<()> {
        if p.len() != self.size {
            return Err(Error::NotACongruence(format!(
                "partition of {} elements on an algebra of size {}",
                p.len(),
                self.size
            )));
        }
        match self.compatibility_witness(p) {
            None => Ok(()),
            Some((op, a, b)) => Err(Error::NotACongruence(format!(
                "{} is not preserved by `{op}` at {a:?} vs {b:?}",
                p
            ))),
        }
    }

    /// Every table entry lies in the universe.
    pub fn is_closed(&self) -> bool {
        self.ops.iter().all(|o| o.table.iter().all(|&v| v < self.size))
    }
}

// ---------------------------------------------------------------------------
// file format

#[derive(Debug, Deserialize)]
struct RawOp {
    name: String,
    arity: usize,
    table: Option<Value>,
}

#[derive(Debug, Deserialize)]
struct RawAlgebra {
    kind: String,
    name: String,
    size: usize,
    #[serde(default)]
    tags: Vec<String>,
    ops: Vec<RawOp>,
}

fn flatten(v: &Value, depth: usize, n: usize, op: &str, out: &mut Vec<usize>) -> Result<()> {
    if depth == 0 {
        let x = v.as_u64().ok_or_else(|| match v {
            Value::Array(_) => Error::ArityMismatch {
                op: op.to_string(),
                detail: "table is nested deeper than the arity".into(),
            },
            _ => Error::Parse(format!("`{op}`: table entry {v} is not a non-negative integer")),
        })?;
        out.push(x as usize);
        return Ok(());
    }
    let Value::Array(items) = v else {
        return Err(Error::ArityMismatch {
            op: op.to_string(),
            detail: "table is nested shallower than the arity".into(),
        });
    };
    if items.len() != n {
        return Err(Error::ArityMismatch {
            op: op.to_string(),
            detail: format!("dimension has {} entries, expected {n}", items.len()),
        });
    }
    for item in items {
        flatten(item, depth - 1, n, op, out)?;
    }
    Ok(())
}

/// Parses and validates the JSON algebra format.
pub fn validate_algebra(raw: &str) -> Result<FiniteAlgebra> {
    let raw: RawAlgebra = serde_json::from_str(raw)?;
    if raw.kind != "algebra" {
        return Err(Error::Parse(format!(
            "expected kind \"algebra\", found \"{}\"",
            raw.kind
        )));
    }
    if raw.size == 0 {
        return Err(Error::RangeViolation("algebra size must be positive".into()));
    }
    let mut ops = Vec::with_capacity(raw.ops.len());
    for op in raw.ops {
        let table = op.table.ok_or_else(|| Error::MissingTable(op.name.clone()))?;
        let mut flat = Vec::new();
        flatten(&table, op.arity, raw.size, &op.name, &mut flat)?;
        ops.push(Operation::new(op.name, op.arity, flat));
    }
    FiniteAlgebra::new(raw.name, raw.size, ops, raw.tags)
}

fn nest(table: &[usize], arity: usize, n: usize) -> Value {
    if arity == 0 {
        return Value::from(table[0]);
    }
    let chunk = table.len() / n;
    Value::Array(table.chunks(chunk).map(|c| nest(c, arity - 1, n)).collect())
}

impl FiniteAlgebra {
    /// Serializes to the JSON algebra format, one operation per line.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n  \"kind\": \"algebra\",\n");
        s.push_str(&format!("  \"name\": {},\n", Value::from(self.name.clone())));
        s.push_str(&format!("  \"size\": {},\n", self.size));
        if !self.tags.is_empty() {
            s.push_str(&format!(
                "  \"tags\": {},\n",
                serde_json::to_string(&self.tags).unwrap()
            ));
        }
        s.push_str("  \"ops\": [\n");
        for (i, op) in self.ops.iter().enumerate() {
            let obj = serde_json::json!({
                "name": op.name,
                "arity": op.arity,
                "table": nest(&op.table, op.arity, self.size),
            });
            s.push_str("    ");
            s.push_str(&obj.to_string());
            if i + 1 < self.ops.len() {
                s.push(',');
            }
            s.push('\n');
        }
        s.push_str("  ]\n}\n");
        s
    }
}

// ---------------------------------------------------------------------------
// constructions

/// Componentwise product; `(a, b)` is encoded as `a · |B| + b`.
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    if !a.signature().matches(&b.signature()) {
        return Err(Error::SignatureMismatch(format!(
            "`{}` and `{}` have different signatures",
            a.name, b.name
        )));
    }
    let m = b.size;
    let size = a.size * m;
    let ops = a
        .ops
        .iter()
        .map(|fa| {
            let fb = b.op(&fa.name).expect("signatures match");
            Operation::from_fn(fa.name.clone(), fa.arity, size, |args| {
                let left: Vec<usize> = args.iter().map(|&x| x / m).collect();
                let right: Vec<usize> = args.iter().map(|&x| x % m).collect();
                fa.eval(a.size, &left) * m + fb.eval(m, &right)
            })
        })
        .collect();
    let tags = a.tags.iter().filter(|t| b.has_tag(t)).cloned().collect();
    FiniteAlgebra::new(format!("{}x{}", a.name, b.name), size, ops, tags)
}

/// The one-element algebra of the same signature as `like`.
pub fn trivial_like(like: &FiniteAlgebra) -> FiniteAlgebra {
    let ops = like
        .ops
        .iter()
        .map(|o| Operation::new(o.name.clone(), o.arity, vec![0]))
        .collect();
    FiniteAlgebra::new("1", 1, ops, like.tags.clone()).expect("trivial algebra is valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    map: Vec<usize>,
    surjective: bool,
}

impl Morphism {
    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// Kernel as a partition of the source universe.
    pub fn kernel(&self) -> Partition {
        Partition::from_labels(&self.map)
    }

    pub fn identity(a: &FiniteAlgebra) -> Morphism {
        Morphism {
            source: a.clone(),
            target: a.clone(),
            map: (0..a.size).collect(),
            surjective: true,
        }
    }
}

/// Accepts `map` iff it commutes with every operation, checked exhaustively.
pub fn check_morphism(map: &[usize], a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Morphism> {
    if map.len() != a.size {
        return Err(Error::RangeViolation(format!(
            "map has {} entries, source has {} elements",
            map.len(),
            a.size
        )));
    }
    if let Some(&v) = map.iter().find(|&&v| v >= b.size) {
        return Err(Error::RangeViolation(format!(
            "map value {v} outside target of size {}",
            b.size
        )));
    }
    if !a.signature().matches(&b.signature()) {
        return Err(Error::SignatureMismatch(format!(
            "`{}` and `{}` have different signatures",
            a.name, b.name
        )));
    }
    let mut args = Vec::new();
    for fa in &a.ops {
        let fb = b.op(&fa.name).expect("signatures match");
        args.resize(fa.arity, 0);
        let mut image = vec![0; fa.arity];
        for idx in 0..fa.table.len() {
            decode(idx, a.size, &mut args);
            for (im, &x) in image.iter_mut().zip(&args) {
                *im = map[x];
            }
            if map[fa.table[idx]] != fb.eval(b.size, &image) {
                return Err(Error::NotAMorphism {
                    op: fa.name.clone(),
                    args: args.clone(),
                });
            }
        }
    }
    let mut hit = vec![false; b.size];
    for &v in map {
        hit[v] = true;
    }
    Ok(Morphism {
        source: a.clone(),
        target: b.clone(),
        map: map.to_vec(),
        surjective: hit.iter().all(|&h| h),
    })
}

/// `A/θ` with classes indexed by their least element in increasing order,
/// together with the canonical projection.
pub fn quotient(a: &FiniteAlgebra, theta: &Partition) -> Result<(FiniteAlgebra, Morphism)> {
    a.require_congruence(theta)?;
    let reps: Vec<usize> = (0..a.size).filter(|&x| theta.rep(x) == x).collect();
    let mut class_of = vec![0; a.size];
    for x in 0..a.size {
        class_of[x] = reps.binary_search(&theta.rep(x)).expect("rep is listed");
    }
    let m = reps.len();
    let ops = a
        .ops
        .iter()
        .map(|f| {
            Operation::from_fn(f.name.clone(), f.arity, m, |args| {
                let lifted: Vec<usize> = args.iter().map(|&c| reps[c]).collect();
                class_of[f.eval(a.size, &lifted)]
            })
        })
        .collect();
    let q = FiniteAlgebra::new(format!("{}/{}", a.name, theta), m, ops, a.tags.clone())?;
    let p = check_morphism(&class_of, a, &q)?;
    Ok((q, p))
}

/// `A(α)`: the subalgebra of `A²` on the pairs of `α`.
#[derive(Debug, Clone)]
pub struct PairAlgebra {
    pub algebra: FiniteAlgebra,
    /// element index -> `(x, y)`
    pub pairs: Vec<(usize, usize)>,
    index: Vec<usize>,
    base: usize,
}

impl PairAlgebra {
    /// `(x, y)` -> element index, if `x α y`.
    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        let i = self.index[x * self.base + y];
        (i != usize::MAX).then_some(i)
    }
}

pub fn pair_subalgebra(a: &FiniteAlgebra, alpha: &Partition) -> Result<PairAlgebra> {
    a.require_congruence(alpha)?;
    let n = a.size;
    let pairs: Vec<(usize, usize)> = alpha.pairs().collect();
    let mut index = vec![usize::MAX; n * n];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        index[x * n + y] = i;
    }
    let m = pairs.len();
    let ops = a
        .ops
        .iter()
        .map(|f| {
            Operation::from_fn(f.name.clone(), f.arity, m, |args| {
                let left: Vec<usize> = args.iter().map(|&i| pairs[i].0).collect();
                let right: Vec<usize> = args.iter().map(|&i| pairs[i].1).collect();
                let (u, v) = (f.eval(n, &left), f.eval(n, &right));
                index[u * n + v]
            })
        })
        .collect();
    let algebra = FiniteAlgebra::new(format!("{}({})", a.name, alpha), m, ops, Vec::new())?;
    Ok(PairAlgebra {
        algebra,
        pairs,
        index,
        base: n,
    })
}
