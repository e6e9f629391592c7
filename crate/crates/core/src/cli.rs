//! Command-line front end: the line-based matrix file format, JSON/text
//! reports, pipeline orchestration, and the random uniform-rank generator.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::betti;
use crate::exponents::{ExponentVector, IndexSet, MAX_VARS};
use crate::grading::{GeneralSolution, MultigradedMatrix};
use crate::linalg::{ratio, rational_from_str, rational_to_string, Rational};
use crate::localcohom;
use crate::reduction::{Reduction, RowOrder, SquarefreeModule, SquarefreeModuleData};
use crate::{Error, Result};

/// Sweeping commands refuse larger variable counts unless forced.
pub const SWEEP_GUARD: usize = 16;

// ---------------------------------------------------------------------------
// Matrix file format
// ---------------------------------------------------------------------------

/// Parsed form of the line-based matrix format:
///
/// ```text
/// n 4
/// vars x y z w        # optional
/// size 2 2            # rows, columns
/// entry 1 1 1    1 1 0 0
/// ```
///
/// `#` starts a comment, tokens are whitespace-separated, coefficients are
/// integers or `p/q` rationals, and each entry line carries the row, column,
/// coefficient and `n` exponents.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixFile {
    pub n: usize,
    pub var_names: Option<Vec<String>>,
    pub s: usize,
    pub l: usize,
    pub entries: Vec<FileEntry>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct FileEntry {
    pub row: usize,
    pub col: usize,
    pub coeff: Rational,
    pub exponent: Vec<i64>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<MatrixFile> {
        let mut n: Option<usize> = None;
        let mut size: Option<(usize, usize)> = None;
        let mut var_names: Option<Vec<String>> = None;
        let mut entries: Vec<FileEntry> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            let fail = |msg: String| Error::Parse { line, msg };
            match tokens[0] {
                "n" => {
                    if n.is_some() {
                        return Err(fail("duplicate 'n' line".into()));
                    }
                    let v: usize = tokens
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| fail("expected 'n <count>'".into()))?;
                    if v == 0 || v > MAX_VARS {
                        return Err(fail(format!(
                            "variable count must be between 1 and {MAX_VARS}"
                        )));
                    }
                    n = Some(v);
                }
                "vars" => {
                    let nv = n.ok_or_else(|| fail("'vars' before 'n'".into()))?;
                    if tokens.len() != nv + 1 {
                        return Err(fail(format!("expected {nv} variable names")));
                    }
                    var_names = Some(tokens[1..].iter().map(|t| t.to_string()).collect());
                }
                "size" => {
                    if size.is_some() {
                        return Err(fail("duplicate 'size' line".into()));
                    }
                    let s: usize = tokens
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| fail("expected 'size <rows> <cols>'".into()))?;
                    let l: usize = tokens
                        .get(2)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| fail("expected 'size <rows> <cols>'".into()))?;
                    if s == 0 || l == 0 {
                        return Err(fail("matrix must have at least one row and column".into()));
                    }
                    size = Some((s, l));
                }
                "entry" => {
                    let nv = n.ok_or_else(|| fail("'entry' before 'n'".into()))?;
                    let (s, l) = size.ok_or_else(|| fail("'entry' before 'size'".into()))?;
                    if tokens.len() != 4 + nv {
                        return Err(fail(format!(
                            "expected 'entry <row> <col> <coeff> <{nv} exponents>'"
                        )));
                    }
                    let row: usize = tokens[1]
                        .parse()
                        .map_err(|_| fail("bad row index".into()))?;
                    let col: usize = tokens[2]
                        .parse()
                        .map_err(|_| fail("bad column index".into()))?;
                    if !(1..=s).contains(&row) || !(1..=l).contains(&col) {
                        return Err(fail(format!(
                            "entry ({row},{col}) out of range for a {s}x{l} matrix"
                        )));
                    }
                    let coeff = rational_from_str(tokens[3])
                        .ok_or_else(|| fail(format!("bad coefficient '{}'", tokens[3])))?;
                    if coeff.is_zero() {
                        return Err(fail("entry coefficient must be nonzero".into()));
                    }
                    let mut exponent = Vec::with_capacity(nv);
                    for t in &tokens[4..] {
                        let e: i64 = t.parse().map_err(|_| fail(format!("bad exponent '{t}'")))?;
                        if e < 0 {
                            return Err(fail("exponents must be nonnegative".into()));
                        }
                        exponent.push(e);
                    }
                    if entries.iter().any(|e| e.row == row && e.col == col) {
                        return Err(fail(format!("duplicate entry ({row},{col})")));
                    }
                    entries.push(FileEntry {
                        row,
                        col,
                        coeff,
                        exponent,
                    });
                }
                other => return Err(fail(format!("unknown directive '{other}'"))),
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing 'n' line".into(),
        })?;
        let (s, l) = size.ok_or(Error::Parse {
            line: 0,
            msg: "missing 'size' line".into(),
        })?;
        Ok(MatrixFile {
            n,
            var_names,
            s,
            l,
            entries,
        })
    }

    /// Canonical serialization; `parse` of the output reproduces the value.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("n {}\n", self.n));
        if let Some(names) = &self.var_names {
            out.push_str(&format!("vars {}\n", names.join(" ")));
        }
        out.push_str(&format!("size {} {}\n", self.s, self.l));
        for e in &self.entries {
            let exps: Vec<String> = e.exponent.iter().map(i64::to_string).collect();
            out.push_str(&format!(
                "entry {} {} {} {}\n",
                e.row,
                e.col,
                rational_to_string(&e.coeff),
                exps.join(" ")
            ));
        }
        out
    }

    pub fn to_matrix(&self) -> Result<MultigradedMatrix> {
        let mut m = MultigradedMatrix::new(self.n, self.s, self.l);
        for e in &self.entries {
            m.set_entry(
                e.row,
                e.col,
                e.coeff.clone(),
                ExponentVector::new(e.exponent.clone()),
            )?;
        }
        Ok(m)
    }

    pub fn display_names(&self) -> Vec<String> {
        self.var_names
            .clone()
            .unwrap_or_else(|| (1..=self.n).map(|i| format!("x{i}")).collect())
    }
}

// ---------------------------------------------------------------------------
// Random uniform-rank generator
// ---------------------------------------------------------------------------

/// Generates a random squarefree uniform-rank matrix, deterministically in
/// the seed: squarefree column degrees, row degrees inside their common
/// support, and a Cauchy coefficient pattern `1/(u_i + v_j)` whose minors
/// are all nonzero. Constant entries are avoided so the presentation is
/// minimal.
pub fn generate_matrix_file(n: usize, s: usize, l: usize, seed: u64) -> Result<MatrixFile> {
    if n == 0 || s == 0 || l < s {
        return Err(Error::Input(
            "generator needs n >= 1 and l >= s >= 1".into(),
        ));
    }
    if n > MAX_VARS {
        return Err(Error::Input(format!(
            "variable count must be at most {MAX_VARS}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let col_supports: Vec<IndexSet> = (0..l)
        .map(|_| loop {
            let sup = IndexSet::from_members((1..=n).filter(|_| rng.gen_bool(0.5)));
            if !sup.is_empty() {
                break sup;
            }
        })
        .collect();
    let common = col_supports
        .iter()
        .fold(IndexSet::full(n), |acc, &s| acc.intersection(s));
    let row_supports: Vec<IndexSet> = (0..s)
        .map(|_| loop {
            let sup = IndexSet::from_members(common.iter().filter(|_| rng.gen_bool(0.5)));
            if !col_supports.contains(&sup) {
                break sup;
            }
        })
        .collect();
    let mut pool: Vec<i64> = (1..=(s + l + 8) as i64).collect();
    pool.shuffle(&mut rng);
    let (u, v) = pool.split_at(s);
    let mut entries = Vec::with_capacity(s * l);
    for (i, &beta) in row_supports.iter().enumerate() {
        for (j, &gamma) in col_supports.iter().enumerate() {
            let coeff = ratio(1, u[i] + v[j]);
            let exponent = gamma.indicator(n).sub(&beta.indicator(n));
            entries.push(FileEntry {
                row: i + 1,
                col: j + 1,
                coeff,
                exponent: exponent.coords().to_vec(),
            });
        }
    }
    let file = MatrixFile {
        n,
        var_names: None,
        s,
        l,
        entries,
    };
    let matrix = file.to_matrix()?;
    if matrix.validate_multigraded().is_err() || !matrix.is_uniform_rank() {
        return Err(Error::Internal(
            "generated matrix failed its own validation".into(),
        ));
    }
    matrix.canonical_uniform_solution()?;
    Ok(file)
}

/// Library-side convenience for tests: the generated matrix itself.
pub fn generate_matrix(n: usize, s: usize, l: usize, seed: u64) -> Result<MultigradedMatrix> {
    generate_matrix_file(n, s, l, seed)?.to_matrix()
}

// ---------------------------------------------------------------------------
// Report structures (stable JSON schema)
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, PartialEq, Debug, Default)]
pub struct InvariantReport {
    pub input: Option<InputEcho>,
    pub check: Option<CheckReport>,
    pub grading: Option<GradingReport>,
    pub ideals: Option<Vec<IdealReport>>,
    pub basis: Option<Vec<String>>,
    pub reduction: Option<ReductionReport>,
    pub annihilator: Option<Vec<Vec<usize>>>,
    pub dimension: Option<i64>,
    pub betti: Option<Vec<BettiEntryReport>>,
    pub local_cohomology: Option<Vec<LocalCohomologyReport>>,
    pub verification: Option<VerificationReport>,
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct InputEcho {
    pub n: usize,
    pub vars: Vec<String>,
    pub s: usize,
    pub l: usize,
    pub entries: Vec<EntryEcho>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct EntryEcho {
    pub row: usize,
    pub col: usize,
    pub coeff: String,
    pub exponent: Vec<i64>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct CheckReport {
    pub multigraded: bool,
    pub witness: Option<String>,
    pub squarefree: bool,
    pub uniform_rank: Option<bool>,
    pub general_solution: Option<GeneralSolutionReport>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct GeneralSolutionReport {
    pub components: Vec<ComponentReport>,
    pub note: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct ComponentReport {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub column_base: BTreeMap<usize, Vec<i64>>,
    pub row_base: BTreeMap<usize, Vec<i64>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct GradingReport {
    pub squarefree: bool,
    pub column_degrees: Vec<Vec<i64>>,
    pub row_degrees: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct IdealReport {
    pub row: usize,
    pub min_gens: Vec<Vec<usize>>,
    pub facets: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct ReductionReport {
    pub row: usize,
    pub degree: Vec<i64>,
    pub standard: bool,
    pub coefficients: Vec<(usize, String)>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct BettiEntryReport {
    pub i: usize,
    pub degree: Vec<i64>,
    pub value: usize,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct LocalCohomologyReport {
    pub pattern_plus: Vec<usize>,
    pub pattern_minus: Vec<usize>,
    pub dims: BTreeMap<usize, usize>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct VerificationReport {
    pub checked: usize,
    pub mismatches: usize,
}

fn exponent_to_vec(e: &ExponentVector) -> Vec<i64> {
    e.coords().to_vec()
}

fn indexset_to_vec(s: IndexSet) -> Vec<usize> {
    s.iter().collect()
}

fn echo_input(file: &MatrixFile) -> InputEcho {
    InputEcho {
        n: file.n,
        vars: file.display_names(),
        s: file.s,
        l: file.l,
        entries: file
            .entries
            .iter()
            .map(|e| EntryEcho {
                row: e.row,
                col: e.col,
                coeff: rational_to_string(&e.coeff),
                exponent: e.exponent.clone(),
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Command-line interface
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "sqfmod",
    about = "Invariants of squarefree multigraded modules: initial ideals, k-bases, annihilators, Betti numbers and local cohomology, with oracle cross-checks",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate multigradedness, report the degree solution and uniform rank
    Check(CommonArgs),
    /// Row ideals of the initial module with their facet lists
    Ideals(CommonArgs),
    /// Standard monomial basis in one multidegree
    Basis {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated nonnegative degree, e.g. 1,0,1,1
        #[arg(long)]
        degree: String,
    },
    /// Normal-form coefficients of one monomial times a generator
    Reduce {
        #[command(flatten)]
        common: CommonArgs,
        /// Row index of the generator
        #[arg(long)]
        row: usize,
        /// Comma-separated nonnegative exponent vector
        #[arg(long)]
        degree: String,
    },
    /// Annihilator ideal
    Ann(CommonArgs),
    /// Krull dimension of the module
    Dim(CommonArgs),
    /// Multigraded Betti numbers (table over squarefree degrees by default)
    Betti {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated degree (negatives allowed)
        #[arg(long)]
        degree: Option<String>,
        /// Cross-check against the independent tensor-strand oracle
        #[arg(long)]
        verify: bool,
    },
    /// Local cohomology dimensions (sign-pattern table by default)
    Localcohom {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated degree (negatives allowed)
        #[arg(long)]
        degree: Option<String>,
        /// Sweep all sign-pattern representatives (the default)
        #[arg(long, conflicts_with = "degree")]
        patterns: bool,
        /// Cross-check against the independent localization oracle
        #[arg(long)]
        verify: bool,
    },
    /// Emit a random squarefree uniform-rank matrix file to stdout
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Matrix file
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Row priority override, highest first, e.g. 2,1
    #[arg(long)]
    pub order: Option<String>,
    /// Degree-solution override: per-component translation, repeatable,
    /// e.g. --shift 1:0,0,1,0
    #[arg(long)]
    pub shift: Vec<String>,
    /// Run sweeping commands even above the n=16 guard
    #[arg(long)]
    pub force: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Debug)]
pub enum Format {
    Text,
    Json,
}

/// A finished command: the text to print and the process exit code.
pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 3,
        _ => 1,
    }
}

/// Clap entry point used by the binary.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            outcome.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn parse_degree(text: &str, n: usize) -> Result<ExponentVector> {
    let coords: Vec<i64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Input(format!("bad degree component '{t}'")))
        })
        .collect::<Result<_>>()?;
    if coords.len() != n {
        return Err(Error::Input(format!(
            "degree has {} components, expected {n}",
            coords.len()
        )));
    }
    Ok(ExponentVector::new(coords))
}

fn parse_order(text: &str, s: usize) -> Result<RowOrder> {
    let list: Vec<usize> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("bad row index '{t}'")))
        })
        .collect::<Result<_>>()?;
    RowOrder::from_priority_list(list, s)
}

fn parse_shifts(
    specs: &[String],
    general: &GeneralSolution,
    n: usize,
) -> Result<Vec<ExponentVector>> {
    let mut shifts = vec![ExponentVector::zero(n); general.components.len()];
    for spec in specs {
        let (comp, vec) = spec.split_once(':').ok_or_else(|| {
            Error::Input(format!(
                "shift '{spec}' must look like <component>:<v1,..,vn>"
            ))
        })?;
        let idx: usize = comp
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad component index '{comp}'")))?;
        if idx == 0 || idx > shifts.len() {
            return Err(Error::Input(format!(
                "component {idx} out of range; the entry graph has {} components",
                shifts.len()
            )));
        }
        shifts[idx - 1] = parse_degree(vec, n)?;
    }
    Ok(shifts)
}

struct Loaded {
    file: MatrixFile,
    module: SquarefreeModule,
    warnings: Vec<String>,
}

fn load_module(common: &CommonArgs) -> Result<Loaded> {
    let text = std::fs::read_to_string(&common.file)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", common.file.display())))?;
    let file = MatrixFile::parse(&text)?;
    let mut warnings = Vec::new();
    if file.n > SWEEP_GUARD {
        if !common.force {
            return Err(Error::Input(format!(
                "n={} exceeds the sweep guard of {SWEEP_GUARD}; pass --force to run anyway",
                file.n
            )));
        }
        warnings.push(format!("running 2^n/3^n sweeps with n={} (forced)", file.n));
    }
    let matrix = file.to_matrix()?;
    let general = matrix
        .solve_degrees()
        .map_err(|w| Error::NotMultigraded(w.to_string()))?;
    let solution = if common.shift.is_empty() {
        matrix
            .find_squarefree_solution()
            .map_err(|w| Error::NotMultigraded(w.to_string()))?
            .ok_or_else(|| Error::Input("the degree system has no squarefree solution".into()))?
    } else {
        let shifts = parse_shifts(&common.shift, &general, file.n)?;
        let shifted = general.translated(&shifts, &matrix)?;
        if !shifted.is_squarefree() {
            return Err(Error::Input(
                "the shifted degree solution is not squarefree".into(),
            ));
        }
        shifted
    };
    let order = match &common.order {
        Some(text) => parse_order(text, file.s)?,
        None => RowOrder::default_for(file.s),
    };
    if matrix.has_constant_entry() {
        warnings.push("presentation is not minimal (a constant entry is present); Betti output describes the cokernel, not a minimal resolution".into());
    }
    let module = SquarefreeModule::build(SquarefreeModuleData::new(matrix, solution, order)?)?;
    Ok(Loaded {
        file,
        module,
        warnings,
    })
}

fn grading_report(module: &SquarefreeModule) -> GradingReport {
    GradingReport {
        squarefree: module.solution().is_squarefree(),
        column_degrees: module
            .solution()
            .col_degrees()
            .iter()
            .map(exponent_to_vec)
            .collect(),
        row_degrees: module
            .solution()
            .row_degrees()
            .iter()
            .map(exponent_to_vec)
            .collect(),
    }
}

fn ideal_reports(module: &SquarefreeModule) -> Vec<IdealReport> {
    (1..=module.row_count())
        .map(|i| IdealReport {
            row: i,
            min_gens: module
                .ideal(i)
                .min_gens()
                .iter()
                .map(|&g| indexset_to_vec(g))
                .collect(),
            facets: module
                .complex(i)
                .facets()
                .iter()
                .map(|&f| indexset_to_vec(f))
                .collect(),
        })
        .collect()
}

fn render_report(report: &InvariantReport, format: Format) -> Result<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(report)
            .map(|s| s + "\n")
            .map_err(|e| Error::Internal(format!("report serialization failed: {e}"))),
        Format::Text => Ok(render_text(report)),
    }
}

fn monomial_string(support: &[usize], vars: &[String]) -> String {
    if support.is_empty() {
        return "1".into();
    }
    support
        .iter()
        .map(|&t| vars[t - 1].clone())
        .collect::<Vec<_>>()
        .join("*")
}

fn degree_string(d: &[i64]) -> String {
    let parts: Vec<String> = d.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn render_text(report: &InvariantReport) -> String {
    let mut out = String::new();
    let vars: Vec<String> = report
        .input
        .as_ref()
        .map(|i| i.vars.clone())
        .unwrap_or_default();
    if let Some(input) = &report.input {
        out.push_str(&format!(
            "matrix: {} rows x {} cols over {} variables\n",
            input.s, input.l, input.n
        ));
    }
    if let Some(check) = &report.check {
        out.push_str(&format!(
            "multigraded: {}\n",
            if check.multigraded { "yes" } else { "no" }
        ));
        if let Some(w) = &check.witness {
            out.push_str(&format!("  witness: {w}\n"));
        }
        if let Some(u) = check.uniform_rank {
            out.push_str(&format!("uniform rank: {}\n", if u { "yes" } else { "no" }));
        }
        out.push_str(&format!(
            "squarefree solution: {}\n",
            if check.squarefree { "yes" } else { "no" }
        ));
        if let Some(g) = &check.general_solution {
            out.push_str(&format!("general solution ({}):\n", g.note));
            for (k, comp) in g.components.iter().enumerate() {
                out.push_str(&format!("  component {}:\n", k + 1));
                for (j, v) in &comp.column_base {
                    out.push_str(&format!(
                        "    column {} degree = {} + T{}\n",
                        j,
                        degree_string(v),
                        k + 1
                    ));
                }
                for (i, v) in &comp.row_base {
                    out.push_str(&format!(
                        "    row    {} degree = {} + T{}\n",
                        i,
                        degree_string(v),
                        k + 1
                    ));
                }
            }
        }
    }
    if let Some(g) = &report.grading {
        out.push_str("degrees:\n");
        for (j, v) in g.column_degrees.iter().enumerate() {
            out.push_str(&format!("  column {} -> {}\n", j + 1, degree_string(v)));
        }
        for (i, v) in g.row_degrees.iter().enumerate() {
            out.push_str(&format!("  row    {} -> {}\n", i + 1, degree_string(v)));
        }
    }
    if let Some(ideals) = &report.ideals {
        out.push_str("row ideals of the initial module:\n");
        for ideal in ideals {
            let gens: Vec<String> = ideal
                .min_gens
                .iter()
                .map(|g| monomial_string(g, &vars))
                .collect();
            let gens = if gens.is_empty() {
                "0".to_string()
            } else {
                gens.join(", ")
            };
            out.push_str(&format!("  row {}: ({gens})\n", ideal.row));
            let facets: Vec<String> = ideal
                .facets
                .iter()
                .map(|f| {
                    format!(
                        "{{{}}}",
                        f.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                    )
                })
                .collect();
            out.push_str(&format!("    facets: {}\n", facets.join(" ")));
        }
    }
    if let Some(basis) = &report.basis {
        if basis.is_empty() {
            out.push_str("basis: (empty)\n");
        } else {
            out.push_str(&format!("basis: {}\n", basis.join(", ")));
        }
    }
    if let Some(r) = &report.reduction {
        if r.standard {
            out.push_str("standard monomial; no reduction needed\n");
        } else if r.coefficients.is_empty() {
            out.push_str("normal form: 0\n");
        } else {
            let terms: Vec<String> = r
                .coefficients
                .iter()
                .map(|(j, c)| format!("r[{j}] = {c}"))
                .collect();
            out.push_str(&format!("normal form coefficients: {}\n", terms.join(", ")));
        }
    }
    if let Some(ann) = &report.annihilator {
        let gens: Vec<String> = ann.iter().map(|g| monomial_string(g, &vars)).collect();
        let body = if gens.is_empty() {
            "0".to_string()
        } else {
            gens.join(", ")
        };
        out.push_str(&format!("annihilator: ({body})\n"));
    }
    if let Some(d) = report.dimension {
        out.push_str(&format!("dimension: {d}\n"));
    }
    if let Some(betti) = &report.betti {
        out.push_str("betti numbers (nonzero):\n");
        for e in betti {
            out.push_str(&format!(
                "  b[{}] at {} = {}\n",
                e.i,
                degree_string(&e.degree),
                e.value
            ));
        }
        if betti.is_empty() {
            out.push_str("  (all zero)\n");
        }
    }
    if let Some(table) = &report.local_cohomology {
        out.push_str("local cohomology (nonzero classes):\n");
        let mut any = false;
        for e in table {
            if e.dims.is_empty() {
                continue;
            }
            any = true;
            let dims: Vec<String> = e.dims.iter().map(|(i, d)| format!("H^{i}={d}")).collect();
            out.push_str(&format!(
                "  +supp {{{}}} -supp {{{}}}: {}\n",
                e.pattern_plus
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                e.pattern_minus
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                dims.join(", ")
            ));
        }
        if !any {
            out.push_str("  (all zero)\n");
        }
    }
    if let Some(v) = &report.verification {
        out.push_str(&format!(
            "verification: checked {} degrees, {} mismatches\n",
            v.checked, v.mismatches
        ));
    }
    for w in &report.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

pub fn execute(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Gen { n, s, l, seed } => {
            let file = generate_matrix_file(n, s, l, seed)?;
            let mut stdout = format!("# generated: n={n} s={s} l={l} seed={seed}\n");
            stdout.push_str(&file.serialize());
            Ok(Outcome { stdout, exit: 0 })
        }
        Command::Check(common) => run_check(&common),
        Command::Ideals(common) => {
            let loaded = load_module(&common)?;
            let report = base_report(&loaded, |_| Ok(()))?;
            finish(report, common.format)
        }
        Command::Basis { common, degree } => {
            let loaded = load_module(&common)?;
            let d = parse_degree(&degree, loaded.file.n)?;
            if !d.is_nonnegative() {
                return Err(Error::Input(
                    "basis degrees must be componentwise nonnegative".into(),
                ));
            }
            let vars = loaded.file.display_names();
            let report = base_report(&loaded, |report| {
                let basis = loaded
                    .module
                    .k_basis(&d)
                    .into_iter()
                    .map(|(i, b)| {
                        let mono = monomial_string(&indexset_to_vec(b.support()), &vars);
                        let mono = if b.is_squarefree() {
                            mono
                        } else {
                            // Spell out powers when an exponent exceeds 1.
                            power_string(&b, &vars)
                        };
                        format!("{mono} v{i}")
                    })
                    .collect();
                report.basis = Some(basis);
                Ok(())
            })?;
            finish(report, common.format)
        }
        Command::Reduce {
            common,
            row,
            degree,
        } => {
            let loaded = load_module(&common)?;
            if !(1..=loaded.file.s).contains(&row) {
                return Err(Error::Input(format!("row {row} out of range")));
            }
            let d = parse_degree(&degree, loaded.file.n)?;
            if !d.is_nonnegative() {
                return Err(Error::Input(
                    "reduction degrees must be componentwise nonnegative".into(),
                ));
            }
            let report = base_report(&loaded, |report| {
                let outcome = loaded.module.reduce(row, &d)?;
                report.reduction = Some(match outcome {
                    Reduction::Standard => ReductionReport {
                        row,
                        degree: exponent_to_vec(&d),
                        standard: true,
                        coefficients: Vec::new(),
                    },
                    Reduction::Rewrite(terms) => ReductionReport {
                        row,
                        degree: exponent_to_vec(&d),
                        standard: false,
                        coefficients: terms
                            .into_iter()
                            .map(|(j, r)| (j, rational_to_string(&r)))
                            .collect(),
                    },
                });
                Ok(())
            })?;
            finish(report, common.format)
        }
        Command::Ann(common) => {
            let loaded = load_module(&common)?;
            let report = base_report(&loaded, |report| {
                let ann = loaded.module.annihilator()?;
                report.annihilator =
                    Some(ann.min_gens().iter().map(|&g| indexset_to_vec(g)).collect());
                Ok(())
            })?;
            finish(report, common.format)
        }
        Command::Dim(common) => {
            let loaded = load_module(&common)?;
            let report = base_report(&loaded, |report| {
                match loaded.module.krull_dimension() {
                    Some(d) => report.dimension = Some(d as i64),
                    None => report
                        .warnings
                        .push("module is zero; dimension is undefined".into()),
                }
                Ok(())
            })?;
            finish(report, common.format)
        }
        Command::Betti {
            common,
            degree,
            verify,
        } => {
            let loaded = load_module(&common)?;
            let mut checked = 0usize;
            let mut mismatches = 0usize;
            let report = base_report(&loaded, |report| {
                let mut entries = Vec::new();
                match &degree {
                    Some(text) => {
                        let alpha = parse_degree(text, loaded.file.n)?;
                        let values = betti::betti_numbers_all(&loaded.module, &alpha)?;
                        for (i, b) in values.iter().enumerate() {
                            if *b > 0 {
                                entries.push(BettiEntryReport {
                                    i,
                                    degree: exponent_to_vec(&alpha),
                                    value: *b,
                                });
                            }
                        }
                        if verify {
                            checked = 1;
                            if values != betti::koszul_oracle(&loaded.module, &alpha)? {
                                mismatches += 1;
                            }
                        }
                    }
                    None => {
                        for ((i, alpha), b) in betti::betti_table(&loaded.module)? {
                            entries.push(BettiEntryReport {
                                i,
                                degree: exponent_to_vec(&alpha),
                                value: b,
                            });
                        }
                        if verify {
                            let n = loaded.file.n;
                            for support in IndexSet::full(n).subsets() {
                                let alpha = support.indicator(n);
                                checked += 1;
                                if betti::betti_numbers_all(&loaded.module, &alpha)?
                                    != betti::koszul_oracle(&loaded.module, &alpha)?
                                {
                                    mismatches += 1;
                                }
                            }
                        }
                    }
                }
                entries.sort_by(|a, b| (a.i, &a.degree).cmp(&(b.i, &b.degree)));
                report.betti = Some(entries);
                if verify {
                    report.verification = Some(VerificationReport {
                        checked,
                        mismatches,
                    });
                }
                Ok(())
            })?;
            let exit = if verify && mismatches > 0 { 2 } else { 0 };
            finish_with_exit(report, common.format, exit)
        }
        Command::Localcohom {
            common,
            degree,
            patterns: _,
            verify,
        } => {
            let loaded = load_module(&common)?;
            let mut checked = 0usize;
            let mut mismatches = 0usize;
            let report = base_report(&loaded, |report| {
                let mut table = Vec::new();
                match &degree {
                    Some(text) => {
                        let alpha = parse_degree(text, loaded.file.n)?;
                        let dims = localcohom::local_cohomology_dims(&loaded.module, &alpha)?;
                        if verify {
                            checked = 1;
                            if dims != localcohom::cech_oracle(&loaded.module, &alpha)? {
                                mismatches += 1;
                            }
                        }
                        table.push(LocalCohomologyReport {
                            pattern_plus: indexset_to_vec(alpha.positive_part().support()),
                            pattern_minus: indexset_to_vec(alpha.negative_part().support()),
                            dims,
                        });
                    }
                    None => {
                        for entry in localcohom::pattern_sweep(&loaded.module)? {
                            if verify {
                                checked += 1;
                                let alpha = entry
                                    .plus
                                    .indicator(loaded.file.n)
                                    .sub(&entry.minus.indicator(loaded.file.n));
                                if entry.dims != localcohom::cech_oracle(&loaded.module, &alpha)? {
                                    mismatches += 1;
                                }
                            }
                            table.push(LocalCohomologyReport {
                                pattern_plus: indexset_to_vec(entry.plus),
                                pattern_minus: indexset_to_vec(entry.minus),
                                dims: entry.dims,
                            });
                        }
                    }
                }
                report.local_cohomology = Some(table);
                if verify {
                    report.verification = Some(VerificationReport {
                        checked,
                        mismatches,
                    });
                }
                Ok(())
            })?;
            let exit = if verify && mismatches > 0 { 2 } else { 0 };
            finish_with_exit(report, common.format, exit)
        }
    }
}

fn power_string(e: &ExponentVector, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for i in 1..=e.len() {
        match e.get(i) {
            0 => {}
            1 => parts.push(vars[i - 1].clone()),
            p => parts.push(format!("{}^{p}", vars[i - 1])),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Builds the shared sections (input echo, grading, ideals) and lets the
/// command fill in its own.
fn base_report<F>(loaded: &Loaded, fill: F) -> Result<InvariantReport>
where
    F: FnOnce(&mut InvariantReport) -> Result<()>,
{
    let mut report = InvariantReport {
        input: Some(echo_input(&loaded.file)),
        grading: Some(grading_report(&loaded.module)),
        ideals: Some(ideal_reports(&loaded.module)),
        warnings: loaded.warnings.clone(),
        ..Default::default()
    };
    fill(&mut report)?;
    Ok(report)
}

fn finish(report: InvariantReport, format: Format) -> Result<Outcome> {
    finish_with_exit(report, format, 0)
}

fn finish_with_exit(report: InvariantReport, format: Format, exit: i32) -> Result<Outcome> {
    Ok(Outcome {
        stdout: render_report(&report, format)?,
        exit,
    })
}

fn run_check(common: &CommonArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(&common.file)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", common.file.display())))?;
    let file = MatrixFile::parse(&text)?;
    let matrix = file.to_matrix()?;
    let mut report = InvariantReport {
        input: Some(echo_input(&file)),
        ..Default::default()
    };
    match matrix.solve_degrees() {
        Err(witness) => {
            report.check = Some(CheckReport {
                multigraded: false,
                witness: Some(witness.to_string()),
                squarefree: false,
                uniform_rank: None,
                general_solution: None,
            });
        }
        Ok(general) => {
            let squarefree = matrix
                .find_squarefree_solution()
                .map_err(|w| Error::NotMultigraded(w.to_string()))?;
            let components = general
                .components
                .iter()
                .map(|c| ComponentReport {
                    rows: c.rows.clone(),
                    cols: c.cols.clone(),
                    column_base: c
                        .col_base
                        .iter()
                        .map(|(&j, v)| (j, exponent_to_vec(v)))
                        .collect(),
                    row_base: c
                        .row_base
                        .iter()
                        .map(|(&i, v)| (i, exponent_to_vec(v)))
                        .collect(),
                })
                .collect();
            report.check = Some(CheckReport {
                multigraded: true,
                witness: None,
                squarefree: squarefree.is_some(),
                uniform_rank: Some(matrix.is_uniform_rank()),
                general_solution: Some(GeneralSolutionReport {
                    components,
                    note: "every solution adds one free integer translation per component".into(),
                }),
            });
            if let Some(sol) = squarefree {
                report.grading = Some(GradingReport {
                    squarefree: true,
                    column_degrees: sol.col_degrees().iter().map(exponent_to_vec).collect(),
                    row_degrees: sol.row_degrees().iter().map(exponent_to_vec).collect(),
                });
            }
        }
    }
    finish(report, common.format)
}
