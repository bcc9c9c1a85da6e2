//! Command line driver for the face ring and differential operator library.
//!
//! Every subcommand loads a complex from a JSON file of the form
//! `{"n_vertices": 4, "facets": [[1, 2], [2, 3], [3, 4]]}` (vertices are
//! 1-based in all user-facing input and output) and prints a deterministic
//! report in the requested format.
//!
//! Exit codes: 0 on success, 2 on a validation error (bad arguments, bad
//! input file, values out of range), 3 when two redundant computations of
//! the same quantity disagree, which signals a library bug and is never
//! silently swallowed.

use std::fmt::Display;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use dstar_core::dideals::{
    contract, d_stable_ideals, enumerate_ideals, hasse_dot, localization_kernel, IdealJson,
};
use dstar_core::frobenius::{hk_bruteforce, hk_polynomial, multiplicities, operator_matrix};
use dstar_core::simplicial::{skeleton_dot, ComplexJson, Face, SimplicialComplex};
use dstar_core::weyl::{
    d_ring_basis_up_to, default_degree_bound, in_d_ring, in_d_ring_star, parse_element,
    preserves_face_ideal, FieldSpec, WeylElement,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "dstar",
    version,
    about = "Differential operators on face rings: stars, ideals, Frobenius data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; commands without a DOT form reject `dot`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Distinct closed stars and their containment order.
    Stars { complex: PathBuf },
    /// Monomial operators that descend to the face ring, up to an exponent cap.
    Gens {
        complex: PathBuf,
        /// Coefficient characteristic: 0 for the rationals, else a prime.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Largest exponent scanned in each coordinate.
        #[arg(long, default_value_t = 1)]
        max_exp: u32,
    },
    /// Every two-sided operator ideal, as a down-set of the star order.
    Lattice { complex: PathBuf },
    /// Kernel of the restriction map that inverts the monomial of a face.
    Localize {
        complex: PathBuf,
        /// Face as comma-separated 1-based vertices; empty for the empty face.
        #[arg(long)]
        face: String,
    },
    /// Ideals of the face ring carried into themselves by all operators.
    Dstable { complex: PathBuf },
    /// Membership of x^a d^(b) in the operator ring, checked three ways.
    Member {
        complex: PathBuf,
        /// Comma-separated x-exponents, one per vertex.
        #[arg(long)]
        a: String,
        /// Comma-separated divided-power exponents, one per vertex.
        #[arg(long)]
        b: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Colength of the q-th Frobenius power of the vertex ideal.
    Hk {
        complex: PathBuf,
        #[arg(long)]
        q: u64,
    },
    /// Multiplicities of the indecomposable Frobenius summands at level q.
    Frob {
        complex: PathBuf,
        #[arg(long)]
        q: u64,
    },
    /// Block matrix of an operator over the subring of q-th powers.
    Matrix {
        complex: PathBuf,
        /// Operator in text form, e.g. "x[1] d[2]" or "x[1]^2 d[1]^(2)".
        #[arg(long)]
        op: String,
        #[arg(long)]
        q: u64,
        #[arg(long = "char")]
        characteristic: u64,
    },
    /// Nerve of the covering by maximal proper stars.
    Nerve { complex: PathBuf },
}

enum CliError {
    Validation(String),
    Disagreement(String),
}

fn invalid<E: Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Disagreement(msg)) => {
            eprintln!("internal disagreement: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Stars { complex } => stars(&load(complex)?, cli.format),
        Command::Gens {
            complex,
            characteristic,
            max_exp,
        } => gens(&load(complex)?, *characteristic, *max_exp, cli.format),
        Command::Lattice { complex } => lattice(&load(complex)?, cli.format),
        Command::Localize { complex, face } => localize(&load(complex)?, face, cli.format),
        Command::Dstable { complex } => dstable(&load(complex)?, cli.format),
        Command::Member {
            complex,
            a,
            b,
            characteristic,
        } => member(&load(complex)?, a, b, *characteristic, cli.format),
        Command::Hk { complex, q } => hk(&load(complex)?, *q, cli.format),
        Command::Frob { complex, q } => frob(&load(complex)?, *q, cli.format),
        Command::Matrix {
            complex,
            op,
            q,
            characteristic,
        } => matrix(&load(complex)?, op, *q, *characteristic, cli.format),
        Command::Nerve { complex } => nerve(&load(complex)?, cli.format),
    }
}

fn load(path: &PathBuf) -> Result<SimplicialComplex, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let parsed: ComplexJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    SimplicialComplex::try_from(&parsed).map_err(invalid)
}

fn field_of(characteristic: u64) -> Result<FieldSpec, CliError> {
    if characteristic == 0 {
        Ok(FieldSpec::Rational)
    } else {
        FieldSpec::prime(characteristic).map_err(invalid)
    }
}

fn parse_face(text: &str, k: &SimplicialComplex) -> Result<Face, CliError> {
    let trimmed = text.trim();
    let mut vertices = Vec::new();
    if !trimmed.is_empty() {
        for piece in trimmed.split(',') {
            let v: usize = piece
                .trim()
                .parse()
                .map_err(|_| CliError::Validation(format!("bad vertex {piece:?}")))?;
            if v == 0 || v > k.n_vertices() {
                return Err(CliError::Validation(format!(
                    "vertex {v} out of range 1..={}",
                    k.n_vertices()
                )));
            }
            vertices.push(v - 1);
        }
    }
    let face = Face::from_vertices(&vertices);
    if !k.is_face(&face).map_err(invalid)? {
        return Err(CliError::Validation(format!(
            "{} is not a face of the complex",
            one_based(&face)
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )));
    }
    Ok(face)
}

fn parse_exponents(text: &str, n: usize) -> Result<Vec<u32>, CliError> {
    let parsed: Result<Vec<u32>, _> = text.split(',').map(|p| p.trim().parse()).collect();
    let exps = parsed.map_err(|_| CliError::Validation(format!("bad exponent vector {text:?}")))?;
    if exps.len() != n {
        return Err(CliError::Validation(format!(
            "exponent vector needs {n} entries, got {}",
            exps.len()
        )));
    }
    Ok(exps)
}

fn one_based(face: &Face) -> Vec<usize> {
    face.vertices().iter().map(|v| v + 1).collect()
}

fn faces_one_based(faces: &[Face]) -> Vec<Vec<usize>> {
    faces.iter().map(one_based).collect()
}

fn pretty(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable value");
    out.push('\n');
    out
}

fn no_dot(command: &str) -> CliError {
    CliError::Validation(format!("no dot form for `{command}`; use text or json"))
}

fn stars(k: &SimplicialComplex, format: Format) -> Result<String, CliError> {
    let poset = k.star_poset();
    match format {
        Format::Dot => Ok(poset.dot()),
        Format::Json => {
            let nodes: Vec<Value> = (0..poset.len())
                .map(|id| {
                    let node = &poset.nodes()[id];
                    json!({
                        "id": id,
                        "label": poset.label(id),
                        "faces": faces_one_based(&node.faces),
                        "star_facets": faces_one_based(node.star.facets()),
                    })
                })
                .collect();
            let covers: Vec<Value> = poset
                .covers()
                .into_iter()
                .map(|(lo, hi)| json!([lo, hi]))
                .collect();
            Ok(pretty(&json!({
                "n_vertices": k.n_vertices(),
                "nodes": nodes,
                "covers": covers,
            })))
        }
        Format::Text => {
            let mut out = format!("{} star classes:\n", poset.len());
            for id in 0..poset.len() {
                let node = &poset.nodes()[id];
                writeln!(
                    out,
                    "  {}: faces {:?}, star facets {:?}",
                    poset.label(id),
                    faces_one_based(&node.faces),
                    faces_one_based(node.star.facets()),
                )
                .expect("string write");
            }
            out.push_str("cover relations:\n");
            for (lo, hi) in poset.covers() {
                writeln!(out, "  {} < {}", poset.label(lo), poset.label(hi))
                    .expect("string write");
            }
            Ok(out)
        }
    }
}

fn gens(
    k: &SimplicialComplex,
    characteristic: u64,
    max_exp: u32,
    format: Format,
) -> Result<String, CliError> {
    if max_exp > 6 {
        return Err(CliError::Validation(
            "exponent cap above 6 scans too many vectors".to_string(),
        ));
    }
    let field = field_of(characteristic)?;
    let basis = d_ring_basis_up_to(k, field, max_exp);
    match format {
        Format::Dot => Err(no_dot("gens")),
        Format::Json => {
            let items: Vec<Value> = basis.iter().map(|(a, b)| json!({"x": a, "d": b})).collect();
            Ok(pretty(&json!({
                "characteristic": characteristic,
                "max_exp": max_exp,
                "count": basis.len(),
                "generators": items,
            })))
        }
        Format::Text => {
            let mut out = format!(
                "{} operator generators (exponents at most {max_exp}, char {characteristic}):\n",
                basis.len()
            );
            for (a, b) in &basis {
                writeln!(out, "  {}", WeylElement::monomial_op(k.n_vertices(), field, a, b))
                    .expect("string write");
            }
            Ok(out)
        }
    }
}

fn lattice(k: &SimplicialComplex, format: Format) -> Result<String, CliError> {
    let poset = Arc::new(k.star_poset());
    let ideals = enumerate_ideals(&poset).map_err(invalid)?;
    match format {
        Format::Dot => Ok(hasse_dot(&ideals)),
        Format::Json => {
            let items: Vec<Value> = ideals
                .iter()
                .map(|i| serde_json::to_value(IdealJson::from(i)).expect("serializable"))
                .collect();
            Ok(pretty(&json!({"count": ideals.len(), "ideals": items})))
        }
        Format::Text => {
            let mut out = format!("{} two-sided ideals:\n", ideals.len());
            for ideal in &ideals {
                writeln!(out, "  {}", ideal.label()).expect("string write");
            }
            Ok(out)
        }
    }
}

fn localize(k: &SimplicialComplex, face: &str, format: Format) -> Result<String, CliError> {
    let sigma = parse_face(face, k)?;
    let poset = Arc::new(k.star_poset());
    let kernel = localization_kernel(&poset, &sigma).map_err(invalid)?;
    let contraction = contract(&kernel);
    let ring_gens = faces_one_based(contraction.gens());
    let ideal_json = IdealJson::from(&kernel);
    match format {
        Format::Dot => Err(no_dot("localize")),
        Format::Json => Ok(pretty(&json!({
            "face": one_based(&sigma),
            "kernel": serde_json::to_value(&ideal_json).expect("serializable"),
            "contraction_generators": ring_gens,
        }))),
        Format::Text => {
            let mut out = format!("kernel of localization at {:?}:\n", one_based(&sigma));
            writeln!(out, "  generators in the face ring: {ring_gens:?}").expect("string write");
            writeln!(
                out,
                "  canonical operator ideal generators: {:?}",
                ideal_json.generators
            )
            .expect("string write");
            Ok(out)
        }
    }
}

fn dstable(k: &SimplicialComplex, format: Format) -> Result<String, CliError> {
    let stable = d_stable_ideals(k).map_err(invalid)?;
    match format {
        Format::Dot => Err(no_dot("dstable")),
        Format::Json => {
            let items: Vec<Value> = stable
                .iter()
                .map(|i| json!(faces_one_based(i.gens())))
                .collect();
            Ok(pretty(&json!({"count": stable.len(), "ideals": items})))
        }
        Format::Text => {
            let mut out = format!("{} stable ideals:\n", stable.len());
            for ideal in &stable {
                writeln!(out, "  {}", ideal.label()).expect("string write");
            }
            Ok(out)
        }
    }
}

fn member(
    k: &SimplicialComplex,
    a_text: &str,
    b_text: &str,
    characteristic: u64,
    format: Format,
) -> Result<String, CliError> {
    let n = k.n_vertices();
    let a = parse_exponents(a_text, n)?;
    let b = parse_exponents(b_text, n)?;
    let field = field_of(characteristic)?;
    let facet_criterion = in_d_ring(k, &a, &b, field);
    let oracle = preserves_face_ideal(k, &a, &b, field, default_degree_bound(&b));
    let supports_are_faces = k.is_face(&Face::support(&a)).map_err(invalid)?
        && k.is_face(&Face::support(&b)).map_err(invalid)?;
    let star_criterion = if supports_are_faces {
        Some(in_d_ring_star(k, &a, &b).map_err(invalid)?)
    } else {
        None
    };
    let agree =
        facet_criterion == oracle && star_criterion.map_or(true, |s| s == facet_criterion);
    let star_text = match star_criterion {
        Some(s) => s.to_string(),
        None => "n/a".to_string(),
    };
    let text = format!(
        "in D(R): {facet_criterion} (facet={facet_criterion}, star={star_text}, oracle={oracle})\n"
    );
    if !agree {
        return Err(CliError::Disagreement(text.trim_end().to_string()));
    }
    match format {
        Format::Dot => Err(no_dot("member")),
        Format::Json => Ok(pretty(&json!({
            "a": a,
            "b": b,
            "characteristic": characteristic,
            "in_d_ring": facet_criterion,
            "criteria": {
                "facet": facet_criterion,
                "star": star_criterion,
                "oracle": oracle,
            },
            "agree": agree,
        }))),
        Format::Text => Ok(text),
    }
}

fn hk(k: &SimplicialComplex, q: u64, format: Format) -> Result<String, CliError> {
    let polynomial = hk_polynomial(k);
    let formula = polynomial.evaluate(q).map_err(invalid)?;
    let direct = hk_bruteforce(k, q).map_err(invalid)?;
    if formula != direct {
        return Err(CliError::Disagreement(format!(
            "HK({q}) formula {formula} vs brute force {direct}"
        )));
    }
    match format {
        Format::Dot => Err(no_dot("hk")),
        Format::Json => Ok(pretty(&json!({
            "q": q,
            "formula": formula as u64,
            "bruteforce": direct as u64,
            "agree": true,
            "coefficients": polynomial.coefficients(),
            "e_hk": polynomial.e_hk(),
        }))),
        Format::Text => {
            let mut out =
                format!("HK({q}) = {formula} (formula {formula}, brute force {direct}, agree)\n");
            writeln!(
                out,
                "coefficients in powers of (q-1): {:?}",
                polynomial.coefficients()
            )
            .expect("string write");
            writeln!(out, "e_HK = {}", polynomial.e_hk()).expect("string write");
            Ok(out)
        }
    }
}

fn frob(k: &SimplicialComplex, q: u64, format: Format) -> Result<String, CliError> {
    let decomposition = multiplicities(k, q).map_err(invalid)?;
    let report = decomposition.report();
    match format {
        Format::Dot => Err(no_dot("frob")),
        Format::Json => Ok(pretty(&report)),
        Format::Text => {
            let poset = decomposition.poset();
            let mut out = format!("Frobenius decomposition at q = {q}:\n");
            for (node, m) in decomposition.entries() {
                writeln!(out, "  m = {m} for {}", poset.label(node)).expect("string write");
            }
            writeln!(out, "total = {} = HK({q})", decomposition.total()).expect("string write");
            Ok(out)
        }
    }
}

fn matrix(
    k: &SimplicialComplex,
    op: &str,
    q: u64,
    characteristic: u64,
    format: Format,
) -> Result<String, CliError> {
    let field = field_of(characteristic)?;
    let element = parse_element(op, k.n_vertices(), field).map_err(invalid)?;
    let matrix = operator_matrix(k, &element, q).map_err(invalid)?;
    match format {
        Format::Dot => Err(no_dot("matrix")),
        Format::Json => Ok(pretty(&matrix.to_json())),
        Format::Text => {
            let mut out = format!(
                "matrix of {element} at q = {q} over F_{characteristic} ({} generators):\n",
                matrix.num_generators()
            );
            for (from, to, entry) in matrix.blocks() {
                writeln!(out, "  {from:?} -> {to:?}: {entry}").expect("string write");
            }
            Ok(out)
        }
    }
}

fn nerve(k: &SimplicialComplex, format: Format) -> Result<String, CliError> {
    let poset = k.star_poset();
    let nerve = k.nerve_complex().map_err(invalid)?;
    let proper: Vec<usize> = poset.proper_node_ids().collect();
    let labels: Vec<String> = proper.iter().map(|&id| poset.label(id)).collect();
    match format {
        Format::Dot => Ok(skeleton_dot(&nerve, &labels)),
        Format::Json => {
            let legend: Vec<Value> = proper
                .iter()
                .enumerate()
                .map(|(i, &id)| {
                    json!({
                        "vertex": i + 1,
                        "star": poset.label(id),
                        "star_facets": faces_one_based(poset.nodes()[id].star.facets()),
                    })
                })
                .collect();
            Ok(pretty(&json!({
                "n_vertices": nerve.n_vertices(),
                "facets": faces_one_based(nerve.facets()),
                "vertices": legend,
            })))
        }
        Format::Text => {
            let mut out = format!(
                "nerve on {} vertices, facets {:?}\n",
                nerve.n_vertices(),
                faces_one_based(nerve.facets())
            );
            for (i, label) in labels.iter().enumerate() {
                writeln!(out, "  vertex {} = {label}", i + 1).expect("string write");
            }
            Ok(out)
        }
    }
}
