//! Command-line front end for the symbolic L-invariant calculus.

mod latex;

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use linv_core::characters::FamilyPreset;
use linv_core::classify::{classify_twist, scan_twists, TwistReport, WType};
use linv_core::deformation::FamilyLocalRep;
use linv_core::gl2::{isotypic_decompose, sym_power_matrix};
use linv_core::solver::{derive_sym2_formula, derive_sym6_formula, derive_theorem_b};
use linv_core::{Matrix, SymExpr};

use latex::expr_latex;

const SYMBOLS_DOC: &str = "\
Derivations and verifications for the symbolic L-invariant calculus of
symmetric powers of an ordinary two-dimensional local representation.

Output symbol table (frozen for stability):
  a      alpha_p, unit root of Frobenius
  ap     alpha_p', its derivative along the weight family
  a11    alpha_p^(1,1) = partial_1 mu_1 at Frobenius (a12, a21, a22 likewise)
  L      the L-invariant unknown in derivations
  L2     the symmetric-square L-invariant, as a free symbol
  D      the direction parameter Delta
  L_u    log_p(u) for a principal unit u
  u, u_k the unit and its opaque power u^(k-2)
  chi    chi_cyc^(k-1); d = the unramified character delta; phi = the
         off-diagonal entry of the local representation
  xi..   opaque upper-triangular family entries and their derivatives";

#[derive(Parser)]
#[command(name = "linv", version, about = "Symbolic L-invariant calculus", long_about = SYMBOLS_DOC)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML family preset (used by `coords`); defaults to the built-in
    /// two-parameter family.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeriveTarget {
    #[value(name = "sym6")]
    Sym6,
    #[value(name = "sym2")]
    Sym2,
    #[value(name = "theoremB")]
    TheoremB,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the symmetric cube of the upper-triangular local matrix
    /// and compare it entry-by-entry against the expected closed form.
    VerifySym3Matrix,
    /// Isotypic decomposition of End(Sym^m): summand dimensions and
    /// projector identities.
    Decompose { m: usize },
    /// Derive an L-invariant formula or relation.
    Derive {
        #[arg(value_enum)]
        target: DeriveTarget,
    },
    /// Coordinate pairs of the family cocycle projected to one summand.
    Coords {
        /// Summand index i (0..=3); the weight-0 position is the one the
        /// formulas come from.
        summand: usize,
        /// Direction: a rational like `1/3`, or a symbol name (default D).
        #[arg(long, default_value = "D")]
        delta: String,
    },
    /// Criticality/exceptionality of the twisted n-th symmetric power at
    /// weight k.
    Classify {
        n: u32,
        k: i64,
        /// Classify a single twist r.
        #[arg(long, conflicts_with = "scan", allow_negative_numbers = true)]
        r: Option<i64>,
        /// Classify every twist in the critical range.
        #[arg(long)]
        scan: bool,
    },
    /// The projectors onto the isotypic summands of End(Sym^m), as exact
    /// rational matrices acting on row-major flattened endomorphisms.
    DumpProjectors { m: usize },
}

/// A fully rendered report: the exit status plus one body per format.
struct Rendered {
    ok: bool,
    text: String,
    json: serde_json::Value,
    latex: String,
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rendered) => {
            let body = match cli.format {
                Format::Text => rendered.text,
                Format::Json => {
                    serde_json::to_string_pretty(&rendered.json).expect("serializable report")
                }
                Format::Latex => rendered.latex,
            };
            let body = if body.ends_with('\n') {
                body
            } else {
                body + "\n"
            };
            match &cli.out {
                Some(path) => {
                    if let Err(err) = std::fs::write(path, body) {
                        eprintln!("error: cannot write {}: {}", path.display(), err);
                        std::process::exit(1);
                    }
                }
                None => print!("{}", body),
            }
            std::process::exit(if rendered.ok { 0 } else { 1 });
        }
        Err(err) => {
            eprintln!("error: {:#}", err);
            std::process::exit(1);
        }
    }
}

fn run(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::VerifySym3Matrix => verify_sym3(),
        Command::Decompose { m } => decompose(*m),
        Command::Derive { target } => derive(*target),
        Command::Coords { summand, delta } => coords(cli, *summand, delta),
        Command::Classify { n, k, r, scan } => classify(*n, *k, *r, *scan),
        Command::DumpProjectors { m } => dump_projectors(*m),
    }
}

fn load_preset(cli: &Cli) -> Result<FamilyPreset> {
    match &cli.config {
        None => Ok(FamilyPreset::default()),
        Some(path) => {
            let body = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            FamilyPreset::from_toml_str(&body).map_err(|err| anyhow::anyhow!("{}", err))
        }
    }
}

#[derive(Serialize)]
struct MatrixCheck {
    matches: bool,
    computed: Vec<Vec<String>>,
    expected: Vec<Vec<String>>,
}

fn expected_sym3() -> Matrix<SymExpr> {
    let (chi, d, phi) = (SymExpr::sym("chi"), SymExpr::sym("d"), SymExpr::sym("phi"));
    let c = SymExpr::from_int;
    Matrix::from_rows(vec![
        vec![
            chi.pow(3).unwrap().div(&d.pow(3).unwrap()),
            c(3).mul(&chi.pow(2).unwrap())
                .mul(&phi)
                .div(&d.pow(2).unwrap()),
            c(3).mul(&chi).mul(&phi.pow(2).unwrap()).div(&d),
            phi.pow(3).unwrap(),
        ],
        vec![
            c(0),
            chi.pow(2).unwrap().div(&d),
            c(2).mul(&chi).mul(&phi),
            d.mul(&phi.pow(2).unwrap()),
        ],
        vec![c(0), c(0), chi.mul(&d), d.pow(2).unwrap().mul(&phi)],
        vec![c(0), c(0), c(0), d.pow(3).unwrap()],
    ])
}

fn matrix_strings(m: &Matrix<SymExpr>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

fn verify_sym3() -> Result<Rendered> {
    let (chi, d, phi) = (SymExpr::sym("chi"), SymExpr::sym("d"), SymExpr::sym("phi"));
    let local = Matrix::from_rows(vec![vec![chi.div(&d), phi], vec![SymExpr::from_int(0), d]]);
    let computed = sym_power_matrix(&local, 3);
    let expected = expected_sym3();
    let matches = computed == expected;
    let report = MatrixCheck {
        matches,
        computed: matrix_strings(&computed),
        expected: matrix_strings(&expected),
    };

    let mut text = String::new();
    if matches {
        text.push_str("sym3 local matrix: ok (16 entries match)\n");
    } else {
        text.push_str("sym3 local matrix: MISMATCH\n");
    }
    for row in &report.computed {
        text.push_str(&format!("  [ {} ]\n", row.join(" | ")));
    }

    let mut latex = String::from("\\begin{pmatrix}\n");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| expr_latex(computed.get(i, j))).collect();
        latex.push_str(&format!("  {} \\\\\n", row.join(" & ")));
    }
    latex.push_str("\\end{pmatrix}");

    Ok(Rendered {
        ok: matches,
        text,
        json: serde_json::to_value(&report)?,
        latex,
    })
}

#[derive(Serialize)]
struct DecomposeReport {
    m: usize,
    dimensions: Vec<usize>,
    total: usize,
    projectors_verified: bool,
}

fn decompose(m: usize) -> Result<Rendered> {
    if m > 9 {
        bail!("m = {} too large (supported: m <= 9)", m);
    }
    let dec = isotypic_decompose(m);
    let dimensions: Vec<usize> = dec.summands.iter().map(|s| s.dimension()).collect();
    let projectors_verified = dec.projectors().verify_identities().is_ok();
    let report = DecomposeReport {
        m,
        dimensions: dimensions.clone(),
        total: dimensions.iter().sum(),
        projectors_verified,
    };
    let text = format!(
        "End(Sym^{}): summand dimensions {:?}, total {}\nprojector identities: {}\n",
        m,
        report.dimensions,
        report.total,
        if projectors_verified { "ok" } else { "FAILED" }
    );
    let latex = format!(
        "\\operatorname{{End}}(\\operatorname{{Sym}}^{{{}}}) \\cong \\bigoplus_{{i=0}}^{{{}}} V_{{2i}} \\quad (\\dim = {})",
        m, m, report.total
    );
    Ok(Rendered {
        ok: projectors_verified,
        text,
        json: serde_json::to_value(&report)?,
        latex,
    })
}

fn derive(target: DeriveTarget) -> Result<Rendered> {
    let report = match target {
        DeriveTarget::Sym6 => derive_sym6_formula(),
        DeriveTarget::Sym2 => derive_sym2_formula(),
        DeriveTarget::TheoremB => derive_theorem_b(),
    }
    .map_err(|err| anyhow::anyhow!("{}", err))?;

    let ok = report.all_checks_pass();
    let mut text = format!("L = {}\n", report.formula);
    for (label, expr) in &report.alternates {
        text.push_str(&format!("{}: {}\n", label, expr));
    }
    if !report.free.is_empty() {
        text.push_str(&format!("free parameters: {}\n", report.free.join(", ")));
    }
    for check in &report.checks {
        text.push_str(&format!(
            "check {}: {}\n",
            check.name,
            if check.passed { "pass" } else { "FAIL" }
        ));
    }

    let formula_latex = {
        // re-parse not needed: formula is a SymExpr already
        expr_latex(&report.formula)
    };
    let latex = format!("\\mathcal{{L}} = {}", formula_latex);

    Ok(Rendered {
        ok,
        text,
        json: serde_json::to_value(&report)?,
        latex,
    })
}

#[derive(Serialize)]
struct PositionReport {
    position: usize,
    weight: i64,
    first: SymExpr,
    second: SymExpr,
    slope: Option<SymExpr>,
    exceptional: bool,
    /// Scalar relating `first` to the reference normalization, when the
    /// position has one ((1 - 3D) for summand 3, (D - 2) for summand 1).
    normalization: Option<SymExpr>,
}

#[derive(Serialize)]
struct CoordsReport {
    summand: usize,
    delta: String,
    positions: Vec<PositionReport>,
}

fn parse_delta(s: &str) -> Result<SymExpr> {
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().context("bad direction numerator")?;
        let d: i64 = d.trim().parse().context("bad direction denominator")?;
        if d == 0 {
            bail!("direction denominator is zero");
        }
        return Ok(SymExpr::from_frac(n, d));
    }
    if let Ok(n) = s.trim().parse::<i64>() {
        return Ok(SymExpr::from_int(n));
    }
    if s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && !s.is_empty() {
        return Ok(SymExpr::sym(s));
    }
    bail!("direction must be a rational like 1/3 or a symbol name");
}

fn coords(cli: &Cli, summand: usize, delta_arg: &str) -> Result<Rendered> {
    if summand > 3 {
        bail!("summand must be 0..=3");
    }
    let preset = load_preset(cli)?;
    let family = FamilyLocalRep::build_family(&preset).map_err(|err| anyhow::anyhow!("{}", err))?;
    let dec = isotypic_decompose(3);
    let delta = parse_delta(delta_arg)?;
    let pairs = family
        .summand_coordinates(&dec, summand, &delta)
        .map_err(|err| anyhow::anyhow!("{}", err))?;

    let reference = |pos: usize| -> Option<SymExpr> {
        if pos != summand {
            return None;
        }
        match summand {
            3 => Some(SymExpr::from_int(1).sub(&delta.mul(&SymExpr::from_int(3)))),
            1 => Some(delta.sub(&SymExpr::from_int(2))),
            _ => None,
        }
    };

    let positions: Vec<PositionReport> = pairs
        .iter()
        .enumerate()
        .map(|(t, pair)| {
            let weight = 2 * summand as i64 - 2 * t as i64;
            let exceptional = pair.first.is_zero() && !pair.second.is_zero();
            let normalization = reference(t)
                .filter(|r| !r.is_zero())
                .and_then(|r| pair.normalization_against(&r).ok());
            PositionReport {
                position: t,
                weight,
                first: pair.first.clone(),
                second: pair.second.clone(),
                slope: pair.slope().ok(),
                exceptional,
                normalization,
            }
        })
        .collect();

    let mut text = format!("summand {} in direction {}\n", summand, delta_arg);
    for p in &positions {
        text.push_str(&format!(
            "position {} (weight {:+}): first = {}, second = {}\n",
            p.position, p.weight, p.first, p.second
        ));
        match &p.slope {
            Some(s) => text.push_str(&format!("  slope = {}\n", s)),
            None if p.exceptional => {
                text.push_str("  exceptional direction: first coordinate vanishes\n")
            }
            None => text.push_str("  identically zero\n"),
        }
        if let Some(l) = &p.normalization {
            text.push_str(&format!("  normalization scalar = {}\n", l));
        }
    }

    let mut latex = String::new();
    for p in &positions {
        latex.push_str(&format!(
            "c_{{{}}} &= \\left({},\\; {}\\right) \\\\\n",
            p.position,
            expr_latex(&p.first),
            expr_latex(&p.second)
        ));
    }

    let report = CoordsReport {
        summand,
        delta: delta_arg.to_string(),
        positions,
    };
    Ok(Rendered {
        ok: true,
        text,
        json: serde_json::to_value(&report)?,
        latex,
    })
}

fn wtype_str(w: Option<WType>) -> &'static str {
    match w {
        Some(WType::Trivial) => "K",
        Some(WType::CyclotomicTwist) => "K(1)",
        None => "-",
    }
}

fn classify(n: u32, k: i64, r: Option<i64>, scan: bool) -> Result<Rendered> {
    if n < 2 || !n.is_multiple_of(2) {
        bail!("n must be an even integer >= 2");
    }
    if k < 2 {
        bail!("k must be >= 2");
    }
    let reports: Vec<TwistReport> = match (r, scan) {
        (Some(r), false) => vec![classify_twist(n, k, r)],
        (None, true) => scan_twists(n, k),
        (None, false) => bail!("pass --r <int> or --scan"),
        (Some(_), true) => unreachable!("clap forbids --r with --scan"),
    };

    let mut text = String::from("n,k,r,critical,exceptional,W_type\n");
    for t in &reports {
        text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            t.n,
            t.k,
            t.r,
            t.critical,
            t.exceptional,
            wtype_str(t.profile.w_type)
        ));
    }

    let mut latex =
        String::from("\\begin{tabular}{rrrccl}\nn & k & r & critical & exceptional & W \\\\\n");
    for t in &reports {
        latex.push_str(&format!(
            "{} & {} & {} & {} & {} & {} \\\\\n",
            t.n,
            t.k,
            t.r,
            t.critical,
            t.exceptional,
            wtype_str(t.profile.w_type)
        ));
    }
    latex.push_str("\\end{tabular}");

    #[derive(Serialize)]
    struct ClassifyReport {
        reports: Vec<TwistReport>,
    }
    Ok(Rendered {
        ok: true,
        text,
        json: serde_json::to_value(&ClassifyReport { reports })?,
        latex,
    })
}

#[derive(Serialize)]
struct ProjectorsReport {
    m: usize,
    /// One (m+1)^2 x (m+1)^2 matrix per summand, entries as exact
    /// rational strings.
    projectors: Vec<Vec<Vec<String>>>,
}

fn dump_projectors(m: usize) -> Result<Rendered> {
    if m > 6 {
        bail!(
            "m = {} too large for projector output (supported: m <= 6)",
            m
        );
    }
    let dec = isotypic_decompose(m);
    let family = dec.projectors();
    family
        .verify_identities()
        .map_err(|err| anyhow::anyhow!("{}", err))?;
    let projectors: Vec<Vec<Vec<String>>> = family
        .maps
        .iter()
        .map(|p| {
            (0..p.rows())
                .map(|i| (0..p.cols()).map(|j| p.get(i, j).to_string()).collect())
                .collect()
        })
        .collect();

    let mut text = String::new();
    for (i, p) in projectors.iter().enumerate() {
        text.push_str(&format!("P_{} ({} x {}):\n", i, p.len(), p.len()));
        for row in p {
            text.push_str(&format!("  {}\n", row.join(" ")));
        }
    }
    let latex = format!(
        "% {} projectors on a {}-dimensional space; see JSON output for entries",
        m + 1,
        (m + 1) * (m + 1)
    );
    let report = ProjectorsReport { m, projectors };
    Ok(Rendered {
        ok: true,
        text,
        json: serde_json::to_value(&report)?,
        latex,
    })
}
