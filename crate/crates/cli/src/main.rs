//! Command-line surface of the graded Lie algebra engine: dimensions,
//! self-verification, section checks with certificate output, the symbolic
//! section solver, intertwiner dimensions, and the hyperelliptic component
//! count.
//!
//! Exit status: 0 when the computation completed (verdicts live in the
//! report), 2 on usage errors, 3 on internal integrity failures.

use clap::{Parser, Subcommand};
use gradedlie::freelie::HallOrder;
use gradedlie::obstruction::{
    all_zeta_candidates, certificate_json, check_section, solve_sections_symbolic, zeta_candidate,
    ObstructionReport, SequenceKind, SequenceSpec, Sign,
};
use gradedlie::presentation::{BuiltinKind, GradedPresentation};
use gradedlie::rat::{rat_from_str, rat_to_string, Rat};
use gradedlie::symplectic::{
    equivariant_maps, hyperelliptic_component_count, preserves_form, rep_direct_sum, rep_trivial,
    sp_generators, CopyAction, SymplecticSpace,
};
use gradedlie::{Error, Mat};
use num_traits::Zero;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable capping how deep any requested weight floor may go.
const FLOOR_CAP_VAR: &str = "GRADEDLIE_FLOOR_CAP";

#[derive(Parser)]
#[command(
    name = "gradedlie",
    version,
    about = "Exact-arithmetic weight-graded Lie algebras of surfaces and configuration spaces: \
             dimensions, relation verification, graded section obstructions, certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimensions of a built-in presentation
    Dims {
        /// labute | punctured | hain | partial
        #[arg(long)]
        kind: String,
        #[arg(long)]
        g: usize,
        /// punctures (punctured) or strand count (hain, partial)
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// copies j with the (0,j) pair class killed (partial only), e.g. 2,3
        #[arg(long, value_delimiter = ',')]
        filled: Vec<usize>,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        floor: i32,
        /// leaflex | leaflex-rev
        #[arg(long, default_value = "leaflex")]
        order: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Self-checks for a built-in presentation: symplectic generators,
    /// relation projection, ideal stability, structure constants
    Verify {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        filled: Vec<usize>,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        floor: i32,
        #[arg(long, default_value = "leaflex")]
        order: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check section candidates against a built-in graded sequence and emit
    /// an obstruction certificate
    Sections {
        /// beta-o | beta-prime | beta-hat
        #[arg(long)]
        seq: String,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        /// one candidate, e.g. 1+ or 2-
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        /// all 2n zeta candidates
        #[arg(long)]
        all: bool,
        /// explicit rational coefficients, e.g. 1,0 or 1/2,-3
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        floor: i32,
        #[arg(long, default_value = "leaflex")]
        order: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constraint polynomials for the general Schur-family candidate
    /// (exact for n = 1, partial scan otherwise)
    Solve {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        floor: i32,
        #[arg(long, default_value = "leaflex")]
        order: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intertwiner dimensions for the standard, trivial, and direct-sum
    /// representations
    Schur {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 2)]
        copies: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of components of the hyperelliptic locus at even level
    Components {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// Usage problems exit 2; broken internal invariants exit 3.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidParams(_)
        | Error::UnknownCopy(_)
        | Error::WeightOutOfRange { .. }
        | Error::BadRational(_) => 2,
        _ => 3,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Dims {
            kind,
            g,
            n,
            filled,
            floor,
            order,
            json,
            out,
        } => {
            let p = build_presentation(&kind, g, n, &filled, floor, &order)?;
            let dims = p.build_quotient().graded_dims();
            let rendered = if json {
                let map: serde_json::Map<String, Value> = dims
                    .iter()
                    .map(|(w, d)| (w.to_string(), json!(d)))
                    .collect();
                Value::Object(map).to_string()
            } else {
                dims.iter()
                    .rev()
                    .map(|(w, d)| format!("{w}: {d}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            emit(&rendered, out.as_deref())
        }
        Command::Verify {
            kind,
            g,
            n,
            filled,
            floor,
            order,
            json,
            out,
        } => {
            let p = build_presentation(&kind, g, n, &filled, floor, &order)?;
            let (checks, all_pass) = verify_presentation(&p)?;
            let rendered = if json {
                json!({
                    "presentation": p.to_json(),
                    "checks": checks.iter().map(|(name, pass)| json!({
                        "name": name, "pass": pass,
                    })).collect::<Vec<_>>(),
                    "pass": all_pass,
                })
                .to_string()
            } else {
                let mut lines: Vec<String> = checks
                    .iter()
                    .map(|(name, pass)| format!("{} {name}", if *pass { "PASS" } else { "FAIL" }))
                    .collect();
                lines.push(format!(
                    "verify: {}",
                    if all_pass { "all checks passed" } else { "FAILED" }
                ));
                lines.join("\n")
            };
            emit(&rendered, out.as_deref())?;
            if all_pass {
                Ok(())
            } else {
                Err(Error::Unsupported("presentation self-checks failed".into()))
            }
        }
        Command::Sections {
            seq,
            g,
            n,
            zeta,
            all,
            coeffs,
            floor,
            order,
            json,
            out,
        } => {
            let kind = SequenceKind::parse(&seq)?;
            let spec =
                SequenceSpec::builtin(kind, g, n, capped_floor(floor)?, parse_order(&order)?)?;
            if n == 0 {
                // degenerate sequence: no Schur-family candidates exist
                let solve = solve_sections_symbolic(&spec)?;
                let rendered = if json {
                    solve.to_json(&spec).to_string()
                } else {
                    solve.notes.join("\n")
                };
                return emit(&rendered, out.as_deref());
            }
            let candidates = collect_candidates(zeta.as_deref(), all, coeffs.as_deref(), n)?;
            let reports: Vec<ObstructionReport> = candidates
                .iter()
                .map(|c| check_section(&spec, c))
                .collect::<Result<_, _>>()?;
            let rendered = if json {
                certificate_json(&spec, &reports).to_string()
            } else {
                reports
                    .iter()
                    .map(|r| {
                        let mut line = format!("{}: {}", r.candidate.label, r.verdict.as_str());
                        if let Some(w) = &r.witness {
                            line.push_str(&format!(
                                " (witness {} coordinate {} = {})",
                                w.relation,
                                w.coordinate,
                                rat_to_string(&w.value)
                            ));
                        }
                        if let Some(t) = r.theta01_of("theta[1]") {
                            if !t.is_zero() {
                                line.push_str(&format!(
                                    "; Theta_01 coordinate of theta[1] residue: {}",
                                    rat_to_string(t)
                                ));
                            }
                        }
                        line
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            emit(&rendered, out.as_deref())
        }
        Command::Solve {
            seq,
            g,
            n,
            floor,
            order,
            json,
            out,
        } => {
            let kind = SequenceKind::parse(&seq)?;
            let spec =
                SequenceSpec::builtin(kind, g, n, capped_floor(floor)?, parse_order(&order)?)?;
            let solve = solve_sections_symbolic(&spec)?;
            let rendered = if json {
                solve.to_json(&spec).to_string()
            } else {
                let mut lines = Vec::new();
                if solve.no_candidates {
                    lines.push("no candidates exist".to_string());
                } else if solve.constraints.is_empty() {
                    lines.push("no constraints: every candidate passes".to_string());
                } else {
                    for p in &solve.constraints {
                        lines.push(format!("constraint: {} = 0", p.to_display(&solve.unknowns)));
                    }
                    match &solve.solutions {
                        gradedlie::obstruction::SolutionScan::All => {
                            lines.push("solutions: all".into())
                        }
                        gradedlie::obstruction::SolutionScan::Points(pts) => {
                            if pts.is_empty() {
                                lines.push("solutions: none found".into());
                            }
                            for p in pts {
                                lines.push(format!(
                                    "solution: ({})",
                                    p.iter().map(rat_to_string).collect::<Vec<_>>().join(", ")
                                ));
                            }
                        }
                    }
                }
                lines.push(format!(
                    "solver: {}",
                    if solve.complete { "complete" } else { "partial" }
                ));
                for note in &solve.notes {
                    lines.push(format!("note: {note}"));
                }
                lines.join("\n")
            };
            emit(&rendered, out.as_deref())
        }
        Command::Schur {
            g,
            copies,
            json,
            out,
        } => {
            if g < 1 {
                return Err(Error::InvalidParams("schur wants g >= 1".into()));
            }
            if copies < 1 {
                return Err(Error::InvalidParams("schur wants copies >= 1".into()));
            }
            let std_rep = sp_generators(g);
            let triv = rep_trivial(std_rep.len());
            let blocks: Vec<&[Mat]> = (0..copies).map(|_| std_rep.as_slice()).collect();
            let sum = rep_direct_sum(&blocks);
            let dims = [
                (
                    "hom(H,H)".to_string(),
                    equivariant_maps(&std_rep, &std_rep).len(),
                ),
                (
                    "hom(H,trivial)".to_string(),
                    equivariant_maps(&std_rep, &triv).len(),
                ),
                (
                    "hom(trivial,trivial)".to_string(),
                    equivariant_maps(&triv, &triv).len(),
                ),
                (
                    format!("hom(H,H^{copies})"),
                    equivariant_maps(&std_rep, &sum).len(),
                ),
            ];
            let rendered = if json {
                let map: serde_json::Map<String, Value> =
                    dims.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                json!({"g": g, "copies": copies, "dims": Value::Object(map)}).to_string()
            } else {
                dims.iter()
                    .map(|(k, v)| format!("{k} = {v}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            emit(&rendered, out.as_deref())
        }
        Command::Components { g, json, out } => {
            let count = hyperelliptic_component_count(g)?;
            let rendered = if json {
                json!({"g": g, "count": count.to_string()}).to_string()
            } else {
                count.to_string()
            };
            emit(&rendered, out.as_deref())
        }
    }
}

fn parse_order(s: &str) -> Result<HallOrder, Error> {
    match s {
        "leaflex" => Ok(HallOrder::LeafLex),
        "leaflex-rev" | "leaflexrev" => Ok(HallOrder::LeafLexRev),
        other => Err(Error::InvalidParams(format!(
            "unknown hall order `{other}`"
        ))),
    }
}

/// Applies the global floor cap from the environment, if set.
fn capped_floor(requested: i32) -> Result<i32, Error> {
    match std::env::var(FLOOR_CAP_VAR) {
        Err(_) => Ok(requested),
        Ok(raw) => {
            let cap: i32 = raw.trim().parse().map_err(|_| {
                Error::InvalidParams(format!("{FLOOR_CAP_VAR} must be a negative integer"))
            })?;
            if requested < cap {
                eprintln!("note: weight floor {requested} capped to {cap} by {FLOOR_CAP_VAR}");
                Ok(cap)
            } else {
                Ok(requested)
            }
        }
    }
}

fn build_presentation(
    kind: &str,
    g: usize,
    n: usize,
    filled: &[usize],
    floor: i32,
    order: &str,
) -> Result<GradedPresentation, Error> {
    let kind = BuiltinKind::parse(kind)?;
    GradedPresentation::builtin(kind, g, n, filled, capped_floor(floor)?, parse_order(order)?)
}

fn collect_candidates(
    zeta: Option<&str>,
    all: bool,
    coeffs: Option<&str>,
    n: usize,
) -> Result<Vec<gradedlie::obstruction::SectionCandidate>, Error> {
    let picked = usize::from(zeta.is_some()) + usize::from(all) + usize::from(coeffs.is_some());
    if picked != 1 {
        return Err(Error::InvalidParams(
            "pick exactly one of --zeta, --all, --coeffs".into(),
        ));
    }
    if all {
        return Ok(all_zeta_candidates(n));
    }
    if let Some(spec) = zeta {
        let spec = spec.trim();
        let (digits, sign) = spec.split_at(spec.len().saturating_sub(1));
        let j: usize = digits
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad zeta spec `{spec}`, want e.g. 1+")))?;
        let sign = match sign {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => {
                return Err(Error::InvalidParams(format!(
                    "bad zeta sign in `{spec}`, want + or -"
                )))
            }
        };
        return Ok(vec![zeta_candidate(j, sign, n)?]);
    }
    let raw = coeffs.expect("checked above");
    let coefficients: Vec<Rat> = raw
        .split(',')
        .map(|s| rat_from_str(s.trim()))
        .collect::<Result<_, _>>()?;
    Ok(vec![gradedlie::obstruction::SectionCandidate::from_coeffs(
        coefficients,
    )])
}

/// Presentation self-checks: generator/form compatibility, relations dying
/// in the quotient, ideal stability under the symplectic action, structure
/// constant antisymmetry, and the Jacobi identity within the truncation.
fn verify_presentation(p: &GradedPresentation) -> Result<(Vec<(String, bool)>, bool), Error> {
    let mut checks: Vec<(String, bool)> = Vec::new();
    let g = p.g();
    let space = SymplecticSpace::new(g)?;
    let j = space.form_matrix();
    let gens = sp_generators(g);
    checks.push((
        "symplectic generators preserve the form".into(),
        gens.iter().all(|m| preserves_form(m, &j)),
    ));

    let q = p.build_quotient();
    let mut relations_die = true;
    for r in p.relations() {
        if q.project_at(&r.element, r.weight)?
            .iter()
            .any(|c| !c.is_zero())
        {
            relations_die = false;
        }
    }
    checks.push(("relations project to zero".into(), relations_die));

    let action = CopyAction::new(space);
    let mut stable = true;
    for m in &gens {
        for r in p.relations() {
            let img = action.act(m, &r.element, p.basis())?;
            if q.project_at(&img, r.weight)?.iter().any(|c| !c.is_zero()) {
                stable = false;
            }
        }
    }
    checks.push(("relation ideal is stable under the action".into(), stable));

    let floor = p.floor();
    let weights: Vec<i32> = (floor..=-1).rev().collect();
    let mut antisym = true;
    for &w1 in &weights {
        for &w2 in &weights {
            if w1 + w2 < floor {
                continue;
            }
            for i in 0..q.dim_at(w1).min(6) {
                for k in 0..q.dim_at(w2).min(6) {
                    let fwd = q.bracket_coords(w1, i, w2, k).unwrap().to_vec();
                    let bwd = q.bracket_coords(w2, k, w1, i).unwrap();
                    if fwd.iter().zip(bwd).any(|(a, b)| *a != -b.clone()) {
                        antisym = false;
                    }
                }
            }
        }
    }
    checks.push(("structure constants are antisymmetric".into(), antisym));

    let mut jacobi = true;
    let mut jacobi_checked = false;
    for &w1 in &weights {
        for &w2 in &weights {
            for &w3 in &weights {
                let total = w1 + w2 + w3;
                if total < floor {
                    continue;
                }
                jacobi_checked = true;
                let dim_total = q.dim_at(total);
                for i in 0..q.dim_at(w1).min(4) {
                    for jj in 0..q.dim_at(w2).min(4) {
                        for k in 0..q.dim_at(w3).min(4) {
                            let mut sum = vec![Rat::zero(); dim_total];
                            let compose = |wa: i32,
                                               ia: usize,
                                               wb: i32,
                                               b_coords: &[Rat],
                                               out: &mut Vec<Rat>| {
                                for (t, c) in b_coords.iter().enumerate() {
                                    if c.is_zero() {
                                        continue;
                                    }
                                    let v = q.bracket_coords(wa, ia, wb, t).unwrap();
                                    for (acc, x) in out.iter_mut().zip(v) {
                                        *acc += x * c;
                                    }
                                }
                            };
                            let jk = q.bracket_coords(w2, jj, w3, k).unwrap().to_vec();
                            compose(w1, i, w2 + w3, &jk, &mut sum);
                            let ki = q.bracket_coords(w3, k, w1, i).unwrap().to_vec();
                            compose(w2, jj, w3 + w1, &ki, &mut sum);
                            let ij = q.bracket_coords(w1, i, w2, jj).unwrap().to_vec();
                            compose(w3, k, w1 + w2, &ij, &mut sum);
                            if sum.iter().any(|c| !c.is_zero()) {
                                jacobi = false;
                            }
                        }
                    }
                }
            }
        }
    }
    checks.push((
        if jacobi_checked {
            "Jacobi identity holds within the truncation".into()
        } else {
            "Jacobi identity vacuous at this floor".into()
        },
        jacobi,
    ));

    let all_pass = checks.iter().all(|(_, pass)| *pass);
    Ok((checks, all_pass))
}

fn emit(rendered: &str, out: Option<&std::path::Path>) -> Result<(), Error> {
    match out {
        None => {
            println!("{rendered}");
            Ok(())
        }
        Some(path) => std::fs::write(path, format!("{rendered}\n"))
            .map_err(|e| Error::InvalidParams(format!("cannot write {}: {e}", path.display()))),
    }
}
