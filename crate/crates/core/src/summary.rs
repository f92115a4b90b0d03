//! Machine-readable summaries of a structure's spectrum and reticulation,
//! shared by the command-line tool and the C interface.

use serde_json::{json, Value};

use crate::reticulation::{check_fixedpoint, is_quasi_commutative, is_spectral_algebra, Analysis, Variant};
use crate::structure::CommutatorLattice;
use crate::topology::spectral_space_check;

fn labels<S: CommutatorLattice + ?Sized>(s: &S, items: &[usize]) -> Vec<String> {
    items.iter().map(|&a| s.label(a)).collect()
}

/// Primes, `Max`, `Min`, radicals and the Zariski topology.
pub fn spectrum_summary<S: CommutatorLattice + ?Sized>(s: &S, an: &Analysis<'_, S>) -> Value {
    let r = &an.spec;
    let t = &an.zariski.topology;
    let radical: Vec<Value> = (0..s.len())
        .map(|a| json!({ "element": s.label(a), "radical": s.label(r.rho(a)) }))
        .collect();
    let d: Vec<Value> = (0..s.len())
        .map(|a| json!({ "element": s.label(a), "open": t.mask_labels(an.zariski.d[a]) }))
        .collect();
    json!({
        "name": s.name(),
        "primes": labels(s, &r.primes),
        "maximals": labels(s, &r.maximals),
        "minimals": labels(s, &r.minimals),
        "semiprime": r.semiprime,
        "radical": radical,
        "zariski": {
            "basic_opens": d,
            "report": spectral_space_check(t),
            "basis_violation": an.zariski.basis_violation,
        },
    })
}

/// `C`, the classes of `L`, its covers, `λ`, the star map and the three
/// verdicts quasi-commutative / ideal fixedpoint / spectral.
pub fn reticulation_summary<S: CommutatorLattice + ?Sized>(s: &S, an: &Analysis<'_, S>, variant: Variant) -> Value {
    let ret = &an.ret;
    let classes: Vec<Value> = (0..ret.len())
        .map(|x| {
            json!({
                "label": ret.labels[x],
                "members": labels(s, &ret.classes[x]),
                "radical": s.label(ret.class_radical[x]),
            })
        })
        .collect();
    let covers: Vec<(String, String)> = ret
        .lattice
        .covers()
        .into_iter()
        .map(|(a, b)| (ret.labels[a].clone(), ret.labels[b].clone()))
        .collect();
    let lambda: Vec<Value> = ret
        .cset
        .members
        .iter()
        .map(|&a| json!({ "element": s.label(a), "class": ret.labels[ret.lambda(a)] }))
        .collect();
    let stars: Vec<Value> = (0..s.len())
        .map(|a| {
            let st = an.star(a, variant);
            let members: Vec<&String> = st.iter().map(|&x| &ret.labels[x]).collect();
            json!({ "element": s.label(a), "star": members, "completed": an.star_raw(a, variant) != st })
        })
        .collect();
    let qc = is_quasi_commutative(an);
    json!({
        "name": s.name(),
        "c": labels(s, &ret.cset.members),
        "classes": classes,
        "covers": covers,
        "lambda": lambda,
        "variant": format!("{variant:?}"),
        "star": stars,
        "quasi_commutative": qc.holds,
        "quasi_commutative_witness": qc.witness.map(|(a, b)| [s.label(a), s.label(b)]),
        "fixedpoint": check_fixedpoint(an).holds,
        "spectral": is_spectral_algebra(an).spectral,
    })
}
