//! `retic`: congruences, commutators, spectra and reticulations of finite
//! algebras and commutator structures.

#![allow(clippy::needless_range_loop)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use retic_core::commutator::{lattice_meet_oracle, ring_ideal_oracle};
use retic_core::corpus::{self, Entry, Family};
use retic_core::dot::{lattice_dot, topology_dot};
use retic_core::reticulation::{check_fixedpoint, is_quasi_commutative, is_spectral_algebra, Analysis, Variant};
use retic_core::structure::{AlgebraLattice, CommutatorLattice};
use retic_core::summary::{reticulation_summary, spectrum_summary};
use retic_core::topology::spectral_space_check;
use retic_core::verify::{load_file, load_path, verify_entries, Suite};
use retic_core::{algebra, Error, Result};

#[derive(Parser)]
#[command(
    name = "retic",
    version,
    about = "Commutator theory and reticulations of finite algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the congruence lattice (algebras) or the elements (structures).
    Con {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the commutator table.
    Comm {
        file: PathBuf,
        /// Compare against the ideal-product or meet oracle when tagged.
        #[arg(long)]
        check_oracles: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Primes, maximal and minimal primes, radicals.
    Spec {
        file: PathBuf,
        /// Also print the Zariski topology.
        #[arg(long)]
        topology: bool,
        /// Write the specialization order as Graphviz.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// The reticulation lattice, λ and the star map.
    Retic {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "C")]
        variant: VariantArg,
        /// Write the Hasse diagram as Graphviz.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run an assertion suite over a file or a directory.
    Verify {
        path: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write a generated corpus to a directory.
    Corpus {
        outdir: PathBuf,
        #[arg(long, value_enum, default_value = "builtin")]
        family: FamilyArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest ring or chain, or largest random structure.
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Export a lattice or topology as Graphviz, or the input re-serialized.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "reticulation")]
        object: ExportObject,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    #[value(name = "K")]
    K,
    #[value(name = "C")]
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Builtin,
    RingsZn,
    LatticeChains,
    RandomLax,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportObject {
    /// Hasse diagram of the structure's lattice.
    Lattice,
    /// Specialization order of the Zariski topology.
    Topology,
    /// Hasse diagram of the reticulation.
    Reticulation,
    /// The input in canonical JSON form.
    Source,
}

/// Outcome of a command: text for stdout, JSON for `--json`, exit code.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

fn ok(text: String, json: Value) -> Result<Output> {
    Ok(Output { text, json, code: 0 })
}

fn main() -> ExitCode {
    // usage errors are invalid input (exit 1); exit 2 is reserved for
    // property violations
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let json_path = match &cli.command {
        Command::Con { json, .. }
        | Command::Comm { json, .. }
        | Command::Spec { json, .. }
        | Command::Retic { json, .. }
        | Command::Verify { json, .. }
        | Command::Corpus { json, .. }
        | Command::Export { json, .. } => json.clone(),
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if let Some(p) = json_path {
                let body = serde_json::to_string_pretty(&out.json).expect("json value serializes");
                if let Err(e) = fs::write(&p, body + "\n") {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Con { file, .. } => con(&load_file(&file)?),
        Command::Comm {
            file, check_oracles, ..
        } => comm(&load_file(&file)?, check_oracles),
        Command::Spec {
            file, topology, dot, ..
        } => with_structure(&load_file(&file)?, |s| spec(s, topology, dot.as_deref())),
        Command::Retic { file, variant, dot, .. } => {
            let v = match variant {
                VariantArg::K => Variant::K,
                VariantArg::C => Variant::C,
            };
            with_structure(&load_file(&file)?, |s| retic(s, v, dot.as_deref()))
        }
        Command::Verify { path, suite, .. } => {
            let suite: Suite = suite.parse()?;
            let entries = load_path(&path)?;
            let report = verify_entries(&entries, suite);
            let code = if report.has_failures() { 2 } else { 0 };
            let json = serde_json::to_value(&report).expect("report serializes");
            Ok(Output {
                text: report.to_text(),
                json,
                code,
            })
        }
        Command::Corpus {
            outdir,
            family,
            seed,
            count,
            max,
            ..
        } => {
            let family = match family {
                FamilyArg::Builtin => Family::Builtin,
                FamilyArg::RingsZn => Family::RingsZn { max: max.unwrap_or(12) },
                FamilyArg::LatticeChains => Family::LatticeChains { max: max.unwrap_or(5) },
                FamilyArg::RandomLax => Family::RandomLax {
                    max_size: max.unwrap_or(6),
                    seed,
                    count,
                },
            };
            let entries = corpus::generate(&family);
            let files = corpus::write_dir(&entries, &outdir)?;
            let text = files.iter().map(|f| format!("{f}\n")).collect::<String>()
                + &format!("{} files written to {}\n", files.len(), outdir.display());
            ok(text, json!({ "directory": outdir, "files": files }))
        }
        Command::Export { file, object, out, .. } => {
            let entry = load_file(&file)?;
            let body = match object {
                ExportObject::Source => entry.to_json(),
                _ => with_structure(&entry, |s| export(s, object))?,
            };
            match &out {
                Some(p) => fs::write(p, &body)?,
                None => print!("{body}"),
            }
            ok(String::new(), json!({ "object": body }))
        }
    }
}

fn with_structure<T>(entry: &Entry, f: impl FnOnce(&dyn CommutatorLattice) -> Result<T>) -> Result<T> {
    match entry {
        Entry::Algebra(a) => f(&AlgebraLattice::new(a.clone())?),
        Entry::Structure(s) => f(s),
    }
}

fn labels(s: &dyn CommutatorLattice, items: &[usize]) -> Vec<String> {
    items.iter().map(|&a| s.label(a)).collect()
}

fn con(entry: &Entry) -> Result<Output> {
    match entry {
        Entry::Algebra(a) => {
            let s = AlgebraLattice::new(a.clone())?;
            let con = s.con();
            let mut text = format!("{}: {} congruences\n", a.name(), con.len());
            let mut rows = Vec::new();
            for (i, p) in con.elements().iter().enumerate() {
                let principal = con.principal().contains(&i);
                text.push_str(&format!("  c{i} {p}{}\n", if principal { "  principal" } else { "" }));
                rows.push(json!({ "label": format!("c{i}"), "blocks": p, "principal": principal }));
            }
            text.push_str(&format!("  modular: {}\n", con.is_modular()));
            ok(
                text,
                json!({ "name": a.name(), "congruences": rows, "modular": con.is_modular(), "order": con.order_matrix_01() }),
            )
        }
        Entry::Structure(s) => {
            let all: Vec<usize> = (0..s.len()).collect();
            let text = format!(
                "{}: {} elements\n  elements: {}\n  compact: {}\n  principal: {}\n  mode: {}\n",
                s.name(),
                s.len(),
                labels(s, &all).join(" "),
                labels(s, s.compact()).join(" "),
                labels(s, s.principal()).join(" "),
                s.mode()
            );
            ok(
                text,
                json!({
                    "name": s.name(),
                    "elements": labels(s, &all),
                    "compact": labels(s, s.compact()),
                    "principal": labels(s, s.principal()),
                    "mode": s.mode().to_string(),
                }),
            )
        }
    }
}

fn comm(entry: &Entry, check_oracles: bool) -> Result<Output> {
    let mut oracle = Value::Null;
    let mut code = 0;
    let mut text = String::new();
    if let Entry::Algebra(a) = entry {
        let s = AlgebraLattice::new(a.clone())?;
        for w in &s.table().warnings {
            text.push_str(&format!("warning: {w}\n"));
        }
        if check_oracles {
            let f: Option<fn(&algebra::FiniteAlgebra, &_, &_) -> Result<_>> = if a.has_tag(algebra::RING_TAG) {
                Some(ring_ideal_oracle)
            } else if a.has_tag(algebra::LATTICE_TAG) {
                Some(lattice_meet_oracle)
            } else {
                None
            };
            oracle = match f {
                None => json!("skipped: no ring or lattice tag"),
                Some(f) => {
                    let con = s.con();
                    let mut mismatch = None;
                    for x in 0..con.len() {
                        for y in 0..con.len() {
                            if con.get(s.commutator(x, y)) != &f(a, con.get(x), con.get(y))? && mismatch.is_none() {
                                mismatch = Some(format!("(c{x}, c{y})"));
                            }
                        }
                    }
                    match mismatch {
                        None => json!("pass"),
                        Some(m) => {
                            code = 2;
                            json!(format!("fail at {m}"))
                        }
                    }
                }
            };
        }
    }
    with_structure(entry, |s| {
        let n = s.len();
        let all: Vec<usize> = (0..n).collect();
        let names = labels(s, &all);
        let width = names.iter().map(|l| l.chars().count()).max().unwrap_or(1);
        text.push_str(&format!("{:w$} |", "", w = width));
        for l in &names {
            text.push_str(&format!(" {l:width$}"));
        }
        text.push('\n');
        let mut table = Vec::new();
        for a in 0..n {
            text.push_str(&format!("{:width$} |", names[a]));
            let row: Vec<String> = (0..n).map(|b| s.label(s.commutator(a, b))).collect();
            for v in &row {
                text.push_str(&format!(" {v:width$}"));
            }
            text.push('\n');
            table.push(row);
        }
        if !oracle.is_null() {
            text.push_str(&format!("oracle: {}\n", oracle.as_str().unwrap_or_default()));
        }
        Ok(Output {
            text,
            json: json!({ "name": s.name(), "elements": names, "commutator": table, "oracle": oracle }),
            code,
        })
    })
}

fn spec(s: &dyn CommutatorLattice, topology: bool, dot: Option<&Path>) -> Result<Output> {
    let an = Analysis::new(s)?;
    let r = &an.spec;
    let mut text = format!(
        "{}\n  Spec: {}\n  Max: {}\n  Min: {}\n  semiprime: {}\n  radical:\n",
        s.name(),
        labels(s, &r.primes).join(" "),
        labels(s, &r.maximals).join(" "),
        labels(s, &r.minimals).join(" "),
        r.semiprime
    );
    for a in 0..s.len() {
        text.push_str(&format!("    ρ({}) = {}\n", s.label(a), s.label(r.rho(a))));
    }
    let t = &an.zariski.topology;
    let sp = spectral_space_check(t);
    if topology {
        text.push_str("  Zariski topology:\n");
        for a in 0..s.len() {
            text.push_str(&format!(
                "    D({}) = {{{}}}\n",
                s.label(a),
                t.mask_labels(an.zariski.d[a]).join(", ")
            ));
        }
        text.push_str(&format!(
            "    T0: {}, T1: {}, sober: {}, spectral: {}\n",
            sp.t0,
            t.is_t1(),
            sp.sober,
            sp.spectral
        ));
        if let Some(v) = &an.zariski.basis_violation {
            text.push_str(&format!("    note: {v}\n"));
        }
    }
    if let Some(p) = dot {
        fs::write(p, topology_dot(&format!("Spec {}", s.name()), t))?;
    }
    ok(text, spectrum_summary(s, &an))
}

fn retic(s: &dyn CommutatorLattice, variant: Variant, dot: Option<&Path>) -> Result<Output> {
    let an = Analysis::new(s)?;
    let ret = &an.ret;
    let mut text = format!("{}: L has {} elements, C has {}\n", s.name(), ret.len(), ret.cset.len());
    for x in 0..ret.len() {
        text.push_str(&format!(
            "  {} = {{{}}}  ρ = {}\n",
            ret.labels[x],
            labels(s, &ret.classes[x]).join(", "),
            s.label(ret.class_radical[x])
        ));
    }
    text.push_str("  covers:");
    for (a, b) in ret.lattice.covers() {
        text.push_str(&format!(" {}<{}", ret.labels[a], ret.labels[b]));
    }
    text.push('\n');
    text.push_str(&format!("  star ({variant:?} variant):\n"));
    for a in 0..s.len() {
        let st = an.star(a, variant);
        let raw = an.star_raw(a, variant);
        let completed = raw != st;
        text.push_str(&format!(
            "    {}* = {}{}\n",
            s.label(a),
            ret.ideal_label(&st),
            if completed { "  (completed)" } else { "" }
        ));
    }
    let qc = is_quasi_commutative(&an);
    let fp = check_fixedpoint(&an);
    let sa = is_spectral_algebra(&an);
    text.push_str(&format!(
        "  quasi-commutative: {}{}\n  ideal fixedpoint: {}\n  spectral: {}\n",
        qc.holds,
        qc.witness
            .map(|(a, b)| format!(" (witness ({}, {}))", s.label(a), s.label(b)))
            .unwrap_or_default(),
        fp.holds,
        sa.spectral
    ));
    if let Some(p) = dot {
        fs::write(p, lattice_dot(&format!("L({})", s.name()), &ret.lattice, &ret.labels))?;
    }
    ok(text, reticulation_summary(s, &an, variant))
}

fn export(s: &dyn CommutatorLattice, object: ExportObject) -> Result<String> {
    let all: Vec<usize> = (0..s.len()).collect();
    match object {
        ExportObject::Lattice => Ok(lattice_dot(s.name(), s.lattice(), &labels(s, &all))),
        ExportObject::Topology => {
            let an = Analysis::new(s)?;
            Ok(topology_dot(&format!("Spec {}", s.name()), &an.zariski.topology))
        }
        ExportObject::Reticulation => {
            let an = Analysis::new(s)?;
            Ok(lattice_dot(
                &format!("L({})", s.name()),
                &an.ret.lattice,
                &an.ret.labels,
            ))
        }
        ExportObject::Source => Err(Error::Parse("source export needs the input entry".into())),
    }
}
