//! Command-line driver: every command returns an exit code and the text it
//! would print, so the binary is a thin wrapper.

use std::fmt::Write as _;
use std::fs;

use clap::{Parser, Subcommand};

use trishare_core::bits::Log2;
use trishare_core::bound::{
    best_bound_over_supersets, epsilon_sweep, evaluate_bound, optimize_bound, preset_limit, preset_table2,
    BoundEvaluation, BoundSpec, OptimizeBudget, Preset, PresetSource, DEFAULT_SCHEDULE,
};
use trishare_core::certify::{certified_lower_bound, search, CertifyError, SearchBudget};
use trishare_core::domain::{classify_all, family_of_mask, parse_domain, transform_witness, Domain};
use trishare_core::info::{entropy, gk_common_information, mutual_information, parse_pmf, residual_information};
use trishare_core::scheme::{assigned_scheme, parse_scheme, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "trishare", about = "Randomness complexity of three-secret sharing")]
struct Cli {
    /// Tab-separated output with a header row.
    #[arg(long, global = true)]
    tsv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Family, representative and witness transform of a binary domain.
    Classify { domain_file: String },
    /// All 21 families with their sizes.
    Families,
    /// Exact correctness and privacy check of a scheme.
    Verify { scheme_file: String },
    /// Upper and lower bounds on randomness for every family.
    RhoTable {
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Evaluate a bound: a family's preset at one ε, or a heuristic
    /// optimum on the domain in a file.
    Bound {
        /// Family id (1 to 21) or domain file.
        target: String,
        #[arg(long, default_value = "LB2")]
        spec: String,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 3000)]
        iterations: usize,
    },
    /// Evaluate a family's preset along a decreasing ε schedule.
    Sweep {
        family: u8,
        #[arg(long, default_value = "LB2")]
        spec: String,
        /// Comma-separated, strictly decreasing.
        #[arg(long, value_delimiter = ',')]
        eps_schedule: Option<Vec<f64>>,
    },
    /// Decide whether a support structure with sets of size at most `cap`
    /// exists; without `--cap`, find the smallest feasible cap up to 8.
    Certify {
        domain_file: String,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Residual information between two groups of axes.
    Ri {
        pmf_file: String,
        /// Two groups of axis names; join names within a group with commas.
        #[arg(long, num_args = 2, required = true)]
        axes: Vec<String>,
    },
    /// Joint and per-axis entropies.
    Entropy { pmf_file: String },
}

/// Outcome of a command: exit code and the text to print.
pub struct Report {
    pub code: i32,
    pub out: String,
}

impl Report {
    fn ok(out: String) -> Self {
        Report { code: EXIT_OK, out }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Report { code, out: format!("error: {msg}\n") }
    }
}

fn bits(x: f64) -> String {
    let x = if x.abs() < 5e-7 { 0.0 } else { x };
    format!("{x:.6}")
}

/// Symbolic form when `x` is the log of a small integer, otherwise `-`.
fn symbolic(x: f64) -> String {
    Log2::recognize(x, 1e-6).map(|l| l.symbolic()).unwrap_or_else(|| "-".into())
}

fn read(path: &str) -> Result<String, Report> {
    fs::read_to_string(path).map_err(|e| Report::fail(EXIT_PARSE, format!("cannot read {path}: {e}")))
}

fn load_domain(path: &str) -> Result<Domain, Report> {
    parse_domain(&read(path)?).map_err(|e| Report::fail(EXIT_PARSE, format!("{path}: {e}")))
}

fn parse_spec(s: &str) -> Result<BoundSpec, Report> {
    s.parse().map_err(|e| Report::fail(EXIT_PARSE, e))
}

/// Renders rows either as aligned columns or as TSV with a header.
fn table(tsv: bool, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    if tsv {
        out.push_str(&header.join("\t"));
        out.push('\n');
        for r in rows {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        return out;
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    out.push_str(&line(header.to_vec()));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            return Report { code, out: e.to_string() };
        }
    };
    let tsv = cli.tsv;
    let result = match cli.command {
        Command::Classify { domain_file } => classify(&domain_file),
        Command::Families => Ok(families(tsv)),
        Command::Verify { scheme_file } => verify_file(&scheme_file),
        Command::RhoTable { budget, workers } => rho_table(tsv, SearchBudget { max_nodes: budget, workers }),
        Command::Bound { target, spec, eps, seed, restarts, iterations } => {
            bound(tsv, &target, &spec, eps, OptimizeBudget { restarts, iterations, seed })
        }
        Command::Sweep { family, spec, eps_schedule } => sweep(tsv, family, &spec, eps_schedule),
        Command::Certify { domain_file, cap, budget, workers } => {
            certify(&domain_file, cap, SearchBudget { max_nodes: budget, workers })
        }
        Command::Ri { pmf_file, axes } => ri(&pmf_file, &axes[0], &axes[1]),
        Command::Entropy { pmf_file } => entropies(tsv, &pmf_file),
    };
    result.unwrap_or_else(|r| r)
}

fn classify(path: &str) -> Result<Report, Report> {
    let d = load_domain(path)?;
    let mask = d.binary_mask().ok_or_else(|| Report::fail(EXIT_PARSE, "classification needs a binary domain"))?;
    let f = family_of_mask(mask).expect("every non-empty mask is classified");
    let t = transform_witness(&f.representative, &d).expect("members of a family are related");
    Ok(Report::ok(format!(
        "domain          {d}\nfamily          {}\nrepresentative  {}\nfamily size     {}\ntransform       {t}\n",
        f.id,
        f.representative,
        f.size()
    )))
}

fn families(tsv: bool) -> Report {
    let rows: Vec<Vec<String>> = classify_all()
        .iter()
        .map(|f| vec![f.id.to_string(), f.size().to_string(), f.representative.len().to_string(), f.representative.to_string()])
        .collect();
    Report::ok(table(tsv, &["family", "members", "secrets", "representative"], &rows))
}

fn verify_file(path: &str) -> Result<Report, Report> {
    let s = parse_scheme(&read(path)?).map_err(|e| Report::fail(EXIT_PARSE, format!("{path}: {e}")))?;
    let r = verify(&s);
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    let _ = writeln!(out, "domain      {}", s.domain());
    let rho = s.randomness_size();
    let _ = writeln!(out, "randomness  {} values, rho = {} ({})", rho.0, rho.symbolic(), bits(rho.value()));
    for i in 0..3 {
        let _ = writeln!(out, "party {}     correct: {:<3}  private: {}", i + 1, yes(r.correct[i]), yes(r.private[i]));
    }
    if let Some(c) = &r.counterexample {
        let _ = writeln!(out, "counterexample: {}", c.describe(&s));
    }
    let _ = writeln!(out, "verdict     {}", if r.passed() { "valid" } else { "invalid" });
    Ok(Report { code: if r.passed() { EXIT_OK } else { EXIT_VERIFY }, out })
}

fn rho_table(tsv: bool, budget: SearchBudget) -> Result<Report, Report> {
    let mut rows = Vec::new();
    let mut all_tight = true;
    for f in classify_all() {
        let (construction, s) = assigned_scheme(f.id).map_err(|e| Report::fail(EXIT_VERIFY, e))?;
        let upper = s.randomness_size();
        let (source, lower) = match preset_table2(f.id).map_err(|e| Report::fail(EXIT_VERIFY, e))? {
            Preset::Distributions(fam) => (fam.source.label(), preset_limit(f.id).unwrap_or(0.0)),
            Preset::Combinatorial => {
                let b = certified_lower_bound(&f.representative, upper.0 as usize, budget)
                    .map_err(|e| Report::fail(EXIT_BUDGET, format!("family {}: {e}", f.id)))?;
                ("combinatorial", b.bits.value())
            }
        };
        let tight = Log2::recognize(lower, 1e-9) == Some(upper);
        all_tight &= tight;
        rows.push(vec![
            f.id.to_string(),
            f.representative.to_string(),
            construction.to_string(),
            upper.symbolic(),
            bits(upper.value()),
            source.to_string(),
            symbolic(lower),
            bits(lower),
            if tight { "yes" } else { "no" }.to_string(),
        ]);
    }
    let header = ["family", "representative", "scheme", "rho", "rho_bits", "lower_source", "lower", "lower_bits", "tight"];
    let mut out = table(tsv, &header, &rows);
    if !all_tight && !tsv {
        out.push_str("some families are not tight\n");
    }
    Ok(Report { code: if all_tight { EXIT_OK } else { EXIT_VERIFY }, out })
}

const EVAL_HEADER: [&str; 8] = ["family", "epsilon", "value", "term1", "term2", "term3", "term4", "H(X1)"];

fn eval_row(family: &str, eps: &str, e: &BoundEvaluation) -> Vec<String> {
    let mut row = vec![family.to_string(), eps.to_string(), bits(e.value)];
    row.extend(e.terms.iter().map(|t| bits(*t)));
    row.push(bits(e.h_x1));
    row
}

fn bound(tsv: bool, target: &str, spec: &str, eps: f64, budget: OptimizeBudget) -> Result<Report, Report> {
    let spec = parse_spec(spec)?;
    if let Ok(id) = target.parse::<u8>() {
        let fam = match preset_table2(id).map_err(|e| Report::fail(EXIT_PARSE, e))? {
            Preset::Distributions(fam) => fam,
            Preset::Combinatorial => {
                return Ok(Report::ok(format!("family {id}: combinatorial bound, see `certify`\n")));
            }
        };
        let triple = fam.at_f64(eps).map_err(|e| Report::fail(EXIT_PARSE, e))?;
        let e = evaluate_bound(&spec, &triple).map_err(|e| Report::fail(EXIT_VERIFY, e))?;
        let mut out = table(tsv, &EVAL_HEADER, &[eval_row(&id.to_string(), &eps.to_string(), &e)]);
        if !tsv {
            let limit = fam.limit().map_err(|e| Report::fail(EXIT_VERIFY, e))?;
            let _ = writeln!(out, "domain {}  spec {spec}  source {}", fam.domain, fam.source.label());
            let _ = writeln!(out, "limit as eps -> 0: {} ({})", symbolic(limit), bits(limit));
        }
        return Ok(Report::ok(out));
    }
    let d = load_domain(target)?;
    let e = optimize_bound(&d, &spec, budget).map_err(|e| Report::fail(EXIT_VERIFY, e))?;
    let mut out = table(tsv, &EVAL_HEADER, &[eval_row(&d.to_string(), "-", &e)]);
    if !tsv {
        let _ = writeln!(
            out,
            "best found with spec {spec}, {} restarts x {} iterations, seed {} (not certified optimal)",
            budget.restarts, budget.iterations, budget.seed
        );
        if let Ok(b) = best_bound_over_supersets(&d) {
            let _ = writeln!(out, "best preset over subsets: {} ({})", symbolic(b), bits(b));
        }
    }
    Ok(Report::ok(out))
}

fn sweep(tsv: bool, family: u8, spec: &str, schedule: Option<Vec<f64>>) -> Result<Report, Report> {
    let spec = parse_spec(spec)?;
    let fam = match preset_table2(family).map_err(|e| Report::fail(EXIT_PARSE, e))? {
        Preset::Distributions(fam) => fam,
        Preset::Combinatorial => {
            return Ok(Report::ok(format!("family {family}: combinatorial bound, see `certify`\n")));
        }
    };
    let schedule = schedule.unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
    let r = epsilon_sweep(&fam, &spec, &schedule).map_err(|e| Report::fail(EXIT_PARSE, e))?;
    let rows: Vec<Vec<String>> = r.points.iter().map(|(eps, e)| eval_row(&family.to_string(), &eps.to_string(), e)).collect();
    let mut out = table(tsv, &EVAL_HEADER, &rows);
    if !tsv {
        let limit = fam.limit().map_err(|e| Report::fail(EXIT_VERIFY, e))?;
        let tag = if fam.source == PresetSource::Derived { " (derived)" } else { "" };
        let _ = writeln!(out, "domain {}  spec {spec}{tag}", fam.domain);
        let _ = writeln!(out, "estimate at smallest eps: {}", bits(r.limit_estimate));
        let _ = writeln!(out, "limit as eps -> 0: {} ({})", symbolic(limit), bits(limit));
        let _ = writeln!(out, "monotone increasing: {}", if r.monotone_increasing { "yes" } else { "no" });
    }
    Ok(Report::ok(out))
}

fn certify(path: &str, cap: Option<usize>, budget: SearchBudget) -> Result<Report, Report> {
    let d = load_domain(path)?;
    let budget_fail = |e: CertifyError| match e {
        CertifyError::BudgetExceeded { .. } => Report::fail(EXIT_BUDGET, format!("undecided: {e}")),
        other => Report::fail(EXIT_PARSE, other),
    };
    let mut out = String::new();
    let _ = writeln!(out, "domain {d}");
    match cap {
        Some(k) => {
            let v = search(&d, k, budget).map_err(budget_fail)?;
            let _ = writeln!(out, "cap {k}: {} nodes explored", v.nodes_explored);
            match v.witness {
                Some(w) => {
                    let _ = writeln!(out, "feasible at cap {k}; witness:");
                    out.push_str(&w.to_text());
                }
                None => {
                    let b = Log2(k as u64 + 1);
                    let _ = writeln!(out, "infeasible ⇒ ρ ≥ {} ({})", b.symbolic(), bits(b.value()));
                }
            }
        }
        None => {
            let b = certified_lower_bound(&d, 8, budget).map_err(budget_fail)?;
            for v in &b.verdicts {
                let verdict = if v.feasible { "feasible" } else { "infeasible" };
                let _ = writeln!(out, "cap {}: {verdict} ({} nodes)", v.cap, v.nodes_explored);
            }
            let _ = writeln!(out, "ρ ≥ {} ({})", b.bits.symbolic(), bits(b.bits.value()));
        }
    }
    Ok(Report::ok(out))
}

fn axis_group(p: &trishare_core::info::JointPmf<trishare_core::info::Exact>, names: &str) -> Result<Vec<usize>, Report> {
    let names: Vec<&str> = names.split(',').collect();
    p.axis_indices(&names).map_err(|e| Report::fail(EXIT_PARSE, e))
}

fn ri(path: &str, a: &str, b: &str) -> Result<Report, Report> {
    let p = parse_pmf(&read(path)?).map_err(|e| Report::fail(EXIT_PARSE, format!("{path}: {e}")))?;
    let (ia, ib) = (axis_group(&p, a)?, axis_group(&p, b)?);
    let fail = |e| Report::fail(EXIT_PARSE, e);
    let i = mutual_information(&p, &ia, &ib).map_err(fail)?;
    let ci = gk_common_information(&p, &ia, &ib).map_err(fail)?;
    let r = residual_information(&p, &ia, &ib).map_err(fail)?;
    Ok(Report::ok(format!(
        "I({a};{b})     = {}\nCI_GK({a};{b}) = {}\nRI({a};{b})    = {}\n",
        bits(i),
        bits(ci),
        bits(r)
    )))
}

fn entropies(tsv: bool, path: &str) -> Result<Report, Report> {
    let p = parse_pmf(&read(path)?).map_err(|e| Report::fail(EXIT_PARSE, format!("{path}: {e}")))?;
    let all: Vec<usize> = (0..p.axes().len()).collect();
    let names: Vec<&str> = p.axes().iter().map(|a| a.name.as_str()).collect();
    let fail = |e| Report::fail(EXIT_PARSE, e);
    let mut rows = vec![vec![names.join(","), bits(entropy(&p, &all).map_err(fail)?)]];
    for (k, name) in names.iter().enumerate() {
        rows.push(vec![name.to_string(), bits(entropy(&p, &[k]).map_err(fail)?)]);
    }
    Ok(Report::ok(table(tsv, &["axes", "entropy"], &rows)))
}
