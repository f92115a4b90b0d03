//! The commutator on `Con(A)` and the operations derived from it.
//!
//! For a finite algebra the commutator is computed with the pair-algebra
//! construction: inside `A(α)` let `D` be the congruence generated by the
//! diagonal pairs `((c,c),(d,d))` with `c β d`; then
//! `[α,β] = {(x,y) ∈ α : (x,x) D (x,y)}`. Both orientations are computed and
//! compared. The derived operations (iterates, residuum, annihilator,
//! Boolean center, hyperarchimedean test) work over any
//! [`CommutatorLattice`].

use serde::Serialize;

use crate::algebra::{pair_subalgebra, FiniteAlgebra, PairAlgebra, LATTICE_TAG, RING_TAG};
use crate::congruence::{cg_from, CongruenceLattice};
use crate::error::{Error, Result};
use crate::partition::{Partition, UnionFind};
use crate::structure::CommutatorLattice;

/// `[α,β]` read off the pair algebra `A(α)`.
fn commutator_in(a: &FiniteAlgebra, pa: &PairAlgebra, beta: &Partition) -> Result<Partition> {
    let n = a.size();
    let diag = |c: usize| pa.index_of(c, c).expect("diagonal pair lies in every congruence");
    let generators = (0..n)
        .filter(|&c| beta.rep(c) != c)
        .map(|c| (diag(beta.rep(c)), diag(c)));
    let d = cg_from(&pa.algebra, UnionFind::new(pa.pairs.len()), generators);
    let mut uf = UnionFind::new(n);
    let mut size = 0;
    for (i, &(x, y)) in pa.pairs.iter().enumerate() {
        if d.related(diag(x), i) {
            uf.union(x, y);
            size += 1;
        }
    }
    let rel = uf.to_partition();
    // The relation is an equivalence iff it already has as many pairs as the
    // equivalence it generates.
    let generated: usize = rel.blocks().iter().map(|b| b.len() * b.len()).sum();
    if generated != size {
        return Err(Error::NotACongruence(format!(
            "commutator relation of {} over A({}) is not transitive",
            beta,
            Partition::from_pairs(n, &pa.pairs)
        )));
    }
    a.require_congruence(&rel)?;
    Ok(rel)
}

/// The pair-algebra construction with `α` as the base of the pair algebra.
pub fn commutator_oriented(a: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<Partition> {
    a.require_congruence(beta)?;
    let pa = pair_subalgebra(a, alpha)?;
    commutator_in(a, &pa, beta)
}

/// `[α,β]`, computed in both orientations; a disagreement is reported as
/// [`Error::AsymmetricCommutator`].
pub fn commutator(a: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<Partition> {
    let ab = commutator_oriented(a, alpha, beta)?;
    let ba = commutator_oriented(a, beta, alpha)?;
    if ab != ba {
        return Err(Error::AsymmetricCommutator {
            alpha: 0,
            beta: 0,
            detail: format!("{alpha} vs {beta}: {ab} != {ba}"),
        });
    }
    Ok(ab)
}

/// The full commutator table of `Con(A)`, indexed like the lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorTable {
    table: Vec<Vec<usize>>,
    /// Non-fatal diagnostics: non-modular `Con(A)`, `[∇,∇] ≠ ∇`.
    pub warnings: Vec<String>,
}

impl CommutatorTable {
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }
}

pub fn commutator_table(a: &FiniteAlgebra, con: &CongruenceLattice) -> Result<CommutatorTable> {
    let k = con.len();
    let mut warnings = Vec::new();
    if let Some(w) = con.pentagon() {
        warnings.push(format!(
            "Con({}) is not modular (pentagon c{} c{} c{} c{} c{}); commutator values are outside the supported theory",
            a.name(),
            w[0],
            w[1],
            w[2],
            w[3],
            w[4]
        ));
    }
    let mut table = vec![vec![0; k]; k];
    for i in 0..k {
        let pa = pair_subalgebra(a, con.get(i))?;
        for (j, cell) in table[i].iter_mut().enumerate() {
            let p = commutator_in(a, &pa, con.get(j))?;
            *cell = con.index_of(&p).expect("commutator is a congruence of A");
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if table[i][j] != table[j][i] {
                return Err(Error::AsymmetricCommutator {
                    alpha: i,
                    beta: j,
                    detail: format!("c{} vs c{}", table[i][j], table[j][i]),
                });
            }
        }
    }
    let top = con.nabla();
    if table[top][top] != top {
        warnings.push(format!(
            "[∇,∇] ≠ ∇ in {}; the algebra cannot lie in a semidegenerate variety",
            a.name()
        ));
    }
    Ok(CommutatorTable { table, warnings })
}

/// `[α,α]ⁿ` for `n ≥ 1`; `n = 0` returns `α`.
pub fn iterated_commutator<S: CommutatorLattice + ?Sized>(s: &S, a: usize, n: usize) -> usize {
    (0..n).fold(a, |g, _| s.commutator(g, g))
}

/// `α → β = ⋁{γ : [α,γ] ≤ β}`, by a full scan.
pub fn residuum<S: CommutatorLattice + ?Sized>(s: &S, a: usize, b: usize) -> usize {
    s.lattice()
        .join_all((0..s.len()).filter(|&g| s.leq(s.commutator(a, g), b)))
}

/// `α^⊥ = α → Δ`.
pub fn annihilator<S: CommutatorLattice + ?Sized>(s: &S, a: usize) -> usize {
    residuum(s, a, s.bottom())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BooleanCenter {
    /// `{α : α ∨ α^⊥ = ∇}`, ascending.
    pub members: Vec<usize>,
    /// Members with `[α, α^⊥] ≠ Δ` (never expected).
    pub orthogonality_failures: Vec<usize>,
}

pub fn boolean_center<S: CommutatorLattice + ?Sized>(s: &S) -> BooleanCenter {
    let members: Vec<usize> = (0..s.len())
        .filter(|&a| s.join(a, annihilator(s, a)) == s.top())
        .collect();
    let orthogonality_failures = members
        .iter()
        .copied()
        .filter(|&a| s.commutator(a, annihilator(s, a)) != s.bottom())
        .collect();
    BooleanCenter {
        members,
        orthogonality_failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperarchimedean {
    pub holds: bool,
    /// For each compact `α`, the least `n ≥ 1` with `[α,α]ⁿ` central, if any.
    pub exponents: Vec<(usize, Option<usize>)>,
}

pub fn is_hyperarchimedean<S: CommutatorLattice + ?Sized>(s: &S) -> Hyperarchimedean {
    let center = boolean_center(s).members;
    let exponents: Vec<(usize, Option<usize>)> = s
        .compact()
        .iter()
        .map(|&a| {
            let mut g = a;
            let n = (1..=s.len()).find(|_| {
                g = s.commutator(g, g);
                center.binary_search(&g).is_ok()
            });
            (a, n)
        })
        .collect();
    Hyperarchimedean {
        holds: exponents.iter().all(|(_, n)| n.is_some()),
        exponents,
    }
}

// ---------------------------------------------------------------------------
// oracles

struct RingOps<'a> {
    n: usize,
    add: &'a crate::algebra::Operation,
    neg: &'a crate::algebra::Operation,
    mul: &'a crate::algebra::Operation,
    zero: usize,
    one: usize,
}

impl RingOps<'_> {
    fn add(&self, x: usize, y: usize) -> usize {
        self.add.eval(self.n, &[x, y])
    }
    fn neg(&self, x: usize) -> usize {
        self.neg.eval(self.n, &[x])
    }
    fn mul(&self, x: usize, y: usize) -> usize {
        self.mul.eval(self.n, &[x, y])
    }
}

fn ring_ops(r: &FiniteAlgebra) -> Result<RingOps<'_>> {
    if !r.has_tag(RING_TAG) {
        return Err(Error::NotARing(format!("{} is not tagged `{RING_TAG}`", r.name())));
    }
    let get = |name: &str, arity: usize| {
        r.op(name)
            .filter(|op| op.arity == arity)
            .ok_or_else(|| Error::NotARing(format!("missing {arity}-ary operation `{name}`")))
    };
    let ops = RingOps {
        n: r.size(),
        add: get("+", 2)?,
        neg: get("-", 1)?,
        mul: get("*", 2)?,
        zero: get("0", 0)?.constant().expect("nullary"),
        one: get("1", 0)?.constant().expect("nullary"),
    };
    let n = ops.n;
    let fail = |law: &str, args: &[usize]| Err(Error::NotARing(format!("{law} fails at {args:?}")));
    for x in 0..n {
        if ops.add(x, ops.zero) != x {
            return fail("additive identity", &[x]);
        }
        if ops.add(x, ops.neg(x)) != ops.zero {
            return fail("additive inverse", &[x]);
        }
        if ops.mul(x, ops.one) != x || ops.mul(ops.one, x) != x {
            return fail("multiplicative identity", &[x]);
        }
        for y in 0..n {
            if ops.add(x, y) != ops.add(y, x) {
                return fail("commutativity of +", &[x, y]);
            }
            for z in 0..n {
                if ops.add(ops.add(x, y), z) != ops.add(x, ops.add(y, z)) {
                    return fail("associativity of +", &[x, y, z]);
                }
                if ops.mul(ops.mul(x, y), z) != ops.mul(x, ops.mul(y, z)) {
                    return fail("associativity of *", &[x, y, z]);
                }
                if ops.mul(x, ops.add(y, z)) != ops.add(ops.mul(x, y), ops.mul(x, z))
                    || ops.mul(ops.add(y, z), x) != ops.add(ops.mul(y, x), ops.mul(z, x))
                {
                    return fail("distributivity", &[x, y, z]);
                }
            }
        }
    }
    Ok(ops)
}

/// `IJ + JI` for the ideals `I = 0/α`, `J = 0/β` of a unital ring, returned
/// as the congruence `x ~ y ⇔ x − y ∈ IJ + JI`.
pub fn ring_ideal_oracle(r: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<Partition> {
    let ops = ring_ops(r)?;
    r.require_congruence(alpha)?;
    r.require_congruence(beta)?;
    let n = ops.n;
    let class = |p: &Partition| -> Vec<usize> { (0..n).filter(|&x| p.related(x, ops.zero)).collect() };
    let (i, j) = (class(alpha), class(beta));
    let mut member = vec![false; n];
    member[ops.zero] = true;
    let mut work = vec![ops.zero];
    let push = |x: usize, member: &mut Vec<bool>, work: &mut Vec<usize>| {
        if !member[x] {
            member[x] = true;
            work.push(x);
        }
    };
    for &x in &i {
        for &y in &j {
            push(ops.mul(x, y), &mut member, &mut work);
            push(ops.mul(y, x), &mut member, &mut work);
        }
    }
    // two-sided ideal closure: sums, negatives, products with ring elements
    while let Some(x) = work.pop() {
        push(ops.neg(x), &mut member, &mut work);
        for r_ in 0..n {
            push(ops.mul(r_, x), &mut member, &mut work);
            push(ops.mul(x, r_), &mut member, &mut work);
        }
        let current: Vec<usize> = (0..n).filter(|&y| member[y]).collect();
        for y in current {
            push(ops.add(x, y), &mut member, &mut work);
        }
    }
    let labels: Vec<usize> = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| member[ops.add(x, ops.neg(y))])
                .expect("x - x = 0 lies in the ideal")
        })
        .collect();
    Ok(Partition::from_labels(&labels))
}

/// `α ∧ β` after checking that `R` is a bounded lattice under
/// `meet`, `join`, `0`, `1`.
pub fn lattice_meet_oracle(l: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<Partition> {
    if !l.has_tag(LATTICE_TAG) {
        return Err(Error::NotALattice(format!(
            "{} is not tagged `{LATTICE_TAG}`",
            l.name()
        )));
    }
    let get = |name: &str, arity: usize| {
        l.op(name)
            .filter(|op| op.arity == arity)
            .ok_or_else(|| Error::NotALattice(format!("missing {arity}-ary operation `{name}`")))
    };
    let (meet, join) = (get("meet", 2)?, get("join", 2)?);
    let (zero, one) = (
        get("0", 0)?.constant().expect("nullary"),
        get("1", 0)?.constant().expect("nullary"),
    );
    let n = l.size();
    let m = |x: usize, y: usize| meet.eval(n, &[x, y]);
    let j = |x: usize, y: usize| join.eval(n, &[x, y]);
    for x in 0..n {
        if m(x, x) != x || j(x, x) != x || m(x, zero) != zero || j(x, one) != one {
            return Err(Error::NotALattice(format!("idempotence or bounds fail at {x}")));
        }
        for y in 0..n {
            if m(x, y) != m(y, x) || j(x, y) != j(y, x) || m(x, j(x, y)) != x || j(x, m(x, y)) != x {
                return Err(Error::NotALattice(format!(
                    "commutativity or absorption fails at ({x}, {y})"
                )));
            }
            for z in 0..n {
                if m(m(x, y), z) != m(x, m(y, z)) || j(j(x, y), z) != j(x, j(y, z)) {
                    return Err(Error::NotALattice(format!("associativity fails at ({x}, {y}, {z})")));
                }
            }
        }
    }
    l.require_congruence(alpha)?;
    l.require_congruence(beta)?;
    Ok(alpha.meet(beta))
}
