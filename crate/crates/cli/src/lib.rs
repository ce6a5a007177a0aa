//! Command-line front end: parses arguments, runs the analysis and writes a
//! [`Report`] as JSON or, for tables, CSV.
//!
//! Exit codes: 0 on success, 1 when the analysis itself fails (e.g. a
//! non-deterministic context), 2 for usage errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use detmbqc::boolfn::{self, is_linear, toffoli_forward_maps, toffoli_table, EquivMaps, TruthTable};
use detmbqc::contextuality::{analyze_instance, mermin_table, mermin_witness, Verdict};
use detmbqc::gf2::BitVec;
use detmbqc::mbqc::{self, example1_instance, instance_from_json, MbqcInstance};
use detmbqc::phasestate::{expectation, CorrelationContext};
use detmbqc::reedmuller::{ax_check, ax_exponent};
use detmbqc::report::{emit_report, Format, Report};
use detmbqc::rmfamily::{
    self, determinism_exact, phase_diagram, sufficient_condition, ClosedForm, DeterminismOptions, FamilyParams,
    PHASE_DIAGRAM_COLUMNS,
};
use detmbqc::{lulc, oracle, Error};

#[derive(Debug, Parser)]
#[command(name = "detmbqc", version, about = "Exact deterministic MBQC on Reed-Muller and phase-coset states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
struct FormatArgs {
    /// Write the table payload as CSV.
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    /// Write the full report as JSON (default).
    #[arg(long)]
    json: bool,
}

impl FormatArgs {
    fn format(self) -> Format {
        if self.csv {
            Format::Csv
        } else {
            Format::Json
        }
    }
}

#[derive(Debug, Clone, Copy, Args)]
struct ParamArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    chi: u32,
}

impl ParamArgs {
    fn params(self) -> Result<FamilyParams, Error> {
        FamilyParams::new(self.r, self.t, self.m, self.chi)
    }
}

/// A family member by parameters, or an instance file.
#[derive(Debug, Clone, Args)]
struct Source {
    #[arg(long, conflicts_with = "instance")]
    r: Option<usize>,
    #[arg(long, conflicts_with = "instance")]
    t: Option<usize>,
    #[arg(long, conflicts_with = "instance")]
    m: Option<usize>,
    #[arg(long, conflicts_with = "instance")]
    chi: Option<u32>,
    /// Instance file instead of a family member.
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Phase classes of the (r, m) plane.
    PhaseDiagram {
        #[arg(long)]
        rmax: usize,
        #[arg(long)]
        mmax: usize,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Members Q(r,t,m,chi) of the Reed-Muller family.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// The GHZ-4 Toffoli example.
    Example1 {
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Output statistics of Q(1,2,5,2) and the m = 4 analogue.
    Example2,
    /// The 35-qubit LU-LC pair.
    #[command(subcommand)]
    Lulc(LulcCommand),
    /// Decide whether an instance admits a non-contextual hidden-variable model.
    Hvm {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Compare the exact engine against the dense oracle.
    OracleCompare {
        #[arg(long)]
        instance: PathBuf,
        /// Sampled runs per input.
        #[arg(long, default_value_t = 0)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Divisibility of Reed-Muller weights.
    Ax {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Subcommand)]
enum FamilyCommand {
    /// Run one input through the exact engine.
    Eval {
        #[command(flatten)]
        source: Source,
        /// Input bits, first bit first.
        #[arg(long)]
        input: String,
    },
    /// Full truth table.
    Table {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Determinism, sufficiency and linearity verdicts.
    Check {
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug, Subcommand)]
enum LulcCommand {
    /// Check the local-unitary relation for all four (a, b).
    Verify,
    /// Run the AND protocol.
    And {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        a: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        b: u8,
    },
}

enum Failure {
    Usage(String),
    Analysis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameters(_)
            | Error::DimensionMismatch { .. }
            | Error::Parse(_)
            | Error::UnsupportedFormat(_)
            | Error::Io(_) => Failure::Usage(e.to_string()),
            other => Failure::Analysis(other.to_string()),
        }
    }
}

type Outcome = Result<(Report, Format), Failure>;

/// Runs one command line; returns the process exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let outcome = run(cli.command);
    let outcome = outcome.and_then(|(report, format)| {
        let mut buf = Vec::new();
        emit_report(&report, format, &mut buf)?;
        Ok((report, buf))
    });
    match outcome {
        Ok((report, buf)) => {
            let _ = out.write_all(&buf);
            // analyses whose verdict is a failure still print their report
            if report.payload.get("ok") == Some(&Value::Bool(false)) {
                1
            } else {
                0
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nRun `detmbqc --help` for usage.");
            2
        }
        Err(Failure::Analysis(msg)) => {
            let _ = writeln!(err, "analysis failed: {msg}");
            1
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::PhaseDiagram { rmax, mmax, format } => phase_diagram_cmd(rmax, mmax, format.format()),
        Command::Family(FamilyCommand::Eval { source, input }) => family_eval(&source, &input),
        Command::Family(FamilyCommand::Table { source, format }) => family_table(&source, format.format()),
        Command::Family(FamilyCommand::Check { params }) => family_check(params),
        Command::Example1 { format } => example1(format.format()),
        Command::Example2 => example2(),
        Command::Lulc(LulcCommand::Verify) => lulc_verify(),
        Command::Lulc(LulcCommand::And { a, b }) => lulc_and(a == 1, b == 1),
        Command::Hvm { instance } => hvm(&instance),
        Command::OracleCompare { instance, trials, seed } => oracle_compare(&instance, trials, seed),
        Command::Ax { r, m } => ax(r, m),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payloads serialize")
}

fn params_map(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn param_values(p: FamilyParams) -> BTreeMap<String, Value> {
    params_map(&[("r", json!(p.r)), ("t", json!(p.t)), ("m", json!(p.m)), ("chi", json!(p.chi))])
}

fn load_instance(path: &Path) -> Result<MbqcInstance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    instance_from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn source_instance(source: &Source) -> Result<(MbqcInstance, BTreeMap<String, Value>), Failure> {
    if let Some(path) = &source.instance {
        return Ok((
            load_instance(path)?,
            params_map(&[("instance", json!(path.display().to_string()))]),
        ));
    }
    match (source.r, source.t, source.m, source.chi) {
        (Some(r), Some(t), Some(m), Some(chi)) => {
            let p = FamilyParams::new(r, t, m, chi)?;
            Ok((rmfamily::build(p)?, param_values(p)))
        }
        _ => Err(Failure::Usage("give all of --r --t --m --chi, or --instance".into())),
    }
}

fn parse_bits(s: &str) -> Result<BitVec, Failure> {
    BitVec::parse(s).map_err(|_| Failure::Usage(format!("input {s:?} must be a string of 0 and 1")))
}

fn table_payload(tt: &TruthTable) -> Value {
    let mut columns: Vec<String> = (0..tt.n_in()).map(|k| format!("i{k}")).collect();
    columns.extend((0..tt.n_out()).map(|k| format!("o{k}")));
    let rows: Vec<Vec<u8>> = tt
        .rows()
        .iter()
        .enumerate()
        .map(|(x, o)| {
            let mut r = BitVec::from_u64(tt.n_in(), x as u64).to_bits();
            r.extend(o.to_bits());
            r
        })
        .collect();
    json!({"columns": columns, "rows": rows})
}

fn phase_diagram_cmd(rmax: usize, mmax: usize, format: Format) -> Outcome {
    let cells = phase_diagram(rmax, mmax);
    let rows: Vec<Value> = cells
        .iter()
        .map(|c| json!([c.r, c.m, c.class.to_string(), c.chi_max, c.witness_t]))
        .collect();
    let payload = json!({"columns": PHASE_DIAGRAM_COLUMNS, "rows": rows});
    let params = params_map(&[("rmax", json!(rmax)), ("mmax", json!(mmax))]);
    Ok((Report::new("phase-diagram", params, payload), format))
}

fn family_eval(source: &Source, input: &str) -> Outcome {
    let (inst, mut params) = source_instance(source)?;
    let i = parse_bits(input)?;
    if i.len() != inst.n_inputs() {
        return Err(Failure::Usage(format!(
            "input has {} bits, this instance takes {}",
            i.len(),
            inst.n_inputs()
        )));
    }
    params.insert("input".into(), json!(input));
    let result = mbqc::run(&inst, &i)?;
    let payload = json!({
        "ok": result.deterministic,
        "q": result.q,
        "output": result.output(),
        "rows": result.bits.iter().map(|b| format!("{b:?}")).collect::<Vec<_>>(),
    });
    Ok((Report::new("family eval", params, payload), Format::Json))
}

fn family_table(source: &Source, format: Format) -> Outcome {
    let (inst, params) = source_instance(source)?;
    let tt = mbqc::truth_table(&inst)?;
    let mut payload = table_payload(&tt);
    payload["linear"] = json!(is_linear(&tt).is_linear());
    Ok((Report::new("family table", params, payload), format))
}

fn family_check(args: ParamArgs) -> Outcome {
    let p = args.params()?;
    let verdict = determinism_exact(p, DeterminismOptions::default())?;
    let linear = if verdict.is_deterministic() && p.n_inputs() <= boolfn::MAX_INPUTS {
        Some(is_linear(&ClosedForm::new(p)?.truth_table()?).is_linear())
    } else {
        None
    };
    let counterexample = match &verdict {
        rmfamily::Determinism::CounterExample(ce) => to_value(ce),
        rmfamily::Determinism::Deterministic => Value::Null,
    };
    let payload = json!({
        "deterministic": verdict.is_deterministic(),
        "sufficient": sufficient_condition(p),
        "linear": linear,
        "counterexample": counterexample,
    });
    Ok((Report::new("family check", param_values(p), payload), Format::Json))
}

fn maps_value(m: &EquivMaps) -> Value {
    to_value(m)
}

fn verdict_value(v: &Verdict) -> Value {
    to_value(v)
}

fn example1(format: Format) -> Outcome {
    let inst = example1_instance();
    let tt = mbqc::truth_table(&inst)?;
    let toff = toffoli_table();
    let forward = toffoli_forward_maps();
    let forward_ok = boolfn::check_one_direction(&tt, &toff, &forward)?;
    let reverse = boolfn::derive_equiv_maps(&toff, &tt)?;
    let analysis = analyze_instance(&inst)?;
    let rows = mermin_witness(&analysis.system, &analysis.verdict).unwrap_or_default();
    let mut payload = table_payload(&tt);
    let obj = payload.as_object_mut().expect("object");
    obj.insert("linear".into(), json!(is_linear(&tt).is_linear()));
    obj.insert(
        "toffoli".into(),
        json!({
            "forward": forward_ok,
            "forward_maps": maps_value(&forward),
            "reverse": reverse.is_some(),
            "reverse_maps": reverse.as_ref().map(maps_value),
        }),
    );
    obj.insert(
        "contextuality".into(),
        json!({
            "verdict": verdict_value(&analysis.verdict),
            "table": mermin_table(&rows, inst.angles()).lines().collect::<Vec<_>>(),
        }),
    );
    Ok((Report::new("example1", BTreeMap::new(), payload), format))
}

fn example2() -> Outcome {
    let e2 = rmfamily::example2_report()?;
    let m4 = rmfamily::m4_correspondence_report()?;
    let payload = json!({"q1252": to_value(&e2), "q1242": to_value(&m4)});
    Ok((Report::new("example2", BTreeMap::new(), payload), Format::Json))
}

fn lulc_verify() -> Outcome {
    let mut checks = Vec::new();
    let mut all = true;
    for (a, b) in [(false, false), (true, false), (false, true), (true, true)] {
        let c = lulc::verify_lu_family(a, b)?;
        all &= c.holds;
        checks.push(json!({"a": u8::from(a), "b": u8::from(b), "holds": c.holds, "first_violation": c.first_violation}));
    }
    let payload = json!({"ok": all, "checks": checks});
    Ok((Report::new("lulc verify", BTreeMap::new(), payload), Format::Json))
}

fn lulc_and(a: bool, b: bool) -> Outcome {
    let res = lulc::and_protocol(a, b)?;
    let mut payload = to_value(&res);
    payload["ok"] = json!(res.agrees);
    let params = params_map(&[("a", json!(u8::from(a))), ("b", json!(u8::from(b)))]);
    Ok((Report::new("lulc and", params, payload), Format::Json))
}

fn hvm(path: &Path) -> Outcome {
    let inst = load_instance(path)?;
    let tt = mbqc::truth_table(&inst)?;
    let analysis = analyze_instance(&inst)?;
    let rows = mermin_witness(&analysis.system, &analysis.verdict).unwrap_or_default();
    let payload = json!({
        "verdict": verdict_value(&analysis.verdict),
        "contexts": analysis.system.len(),
        "linear": is_linear(&tt).is_linear(),
        "witness_contexts": to_value(&rows),
        "table": mermin_table(&rows, inst.angles()).lines().collect::<Vec<_>>(),
    });
    let params = params_map(&[("instance", json!(path.display().to_string()))]);
    Ok((Report::new("hvm", params, payload), Format::Json))
}

/// Engine-vs-dense tolerance.
const ORACLE_TOLERANCE: f64 = 1e-9;

fn oracle_compare(path: &Path, trials: u64, seed: u64) -> Outcome {
    let inst = load_instance(path)?;
    let dense = oracle::dense_state::<f64>(inst.state())?;
    let mut max_error = 0.0f64;
    let mut contexts = 0u64;
    let mut parities_constant = true;
    for x in 0..1u64 << inst.n_inputs() {
        let i = BitVec::from_u64(inst.n_inputs(), x);
        let q = inst.basis_choice(&i)?;
        let mut deterministic = true;
        for z in inst.z_matrix().rows() {
            let ctx = CorrelationContext::new(z.clone(), q.clone());
            let exact = expectation(inst.state(), inst.angles(), &ctx)?;
            deterministic &= detmbqc::phasestate::extremal_bit(&exact).bit().is_some();
            let numeric = oracle::dense_expectation(&dense, inst.angles(), &ctx)?;
            max_error = max_error.max((exact.value::<f64>() - numeric).norm());
            contexts += 1;
        }
        if trials > 0 && deterministic {
            let samples = oracle::sample_run::<f64>(&inst, &i, seed, trials)?;
            parities_constant &= samples.iter().all(|s| s.o == samples[0].o);
        }
    }
    let agree = max_error < ORACLE_TOLERANCE;
    let payload = json!({
        "ok": agree && parities_constant,
        "contexts": contexts,
        "max_error": max_error,
        "tolerance": ORACLE_TOLERANCE,
        "agree": agree,
        "trials": trials,
        "parities_constant": parities_constant,
    });
    let params = params_map(&[
        ("instance", json!(path.display().to_string())),
        ("trials", json!(trials)),
        ("seed", json!(seed)),
    ]);
    Ok((Report::new("oracle-compare", params, payload), Format::Json))
}

fn ax(r: usize, m: usize) -> Outcome {
    if r == 0 || r > m {
        return Err(Failure::Usage(format!("need 1 <= r <= m, got r={r}, m={m}")));
    }
    let (exponent, sharp) = ax_check(r, m)?;
    let expected = ax_exponent(r, m);
    let payload = json!({
        "ok": exponent as usize == expected && sharp,
        "exponent": exponent,
        "expected": expected,
        "sharp": sharp,
    });
    let params = params_map(&[("r", json!(r)), ("m", json!(m))]);
    Ok((Report::new("ax", params, payload), Format::Json))
}
