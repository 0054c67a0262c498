//! Command-line frontend for the graph-code QEC library.
//!
//! Exit codes: 0 on success, 2 on input validation errors, 1 on runtime
//! failures (including failed verification).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use graphqec::code::{CodeDefinition, LogicalClass, Syndrome};
use graphqec::decoder::{exact_mld_decode, hierarchical_decode, LevelCap};
use graphqec::harness::{
    self, default_code_id, latency_benchmark, records_to_csv, run_sweep,
    sample_syndrome_corpus, SweepConfig,
};
use graphqec::noise::{sample_error, ChannelFamily, PauliChannel};
use graphqec::statevec::StateVector;
use graphqec::{graph_state_phase_correction, residual_class, Graph, GraphCode};

#[derive(Parser)]
#[command(
    name = "graphqec",
    version,
    about = "Graph-code quantum error correction: build codes, decode syndromes, verify, sweep, benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Args)]
struct CodeArgs {
    /// Graph: path to an edge-list file, or the shorthand cycle:<n>
    #[arg(long, required_unless_present = "code", conflicts_with = "code")]
    graph: Option<String>,
    /// Z-support of the logical X, e.g. 1,2,3,4,5 (must contain n)
    #[arg(
        long,
        value_name = "LIST",
        required_unless_present = "code",
        conflicts_with = "code"
    )]
    logical_x: Option<String>,
    /// Code definition file: a "graph <ref>" line plus "Lx <v1> <v2> ..."
    #[arg(long)]
    code: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print code parameters, generators and logical operators
    CodeInfo {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decode one syndrome (accepts "+-++" or binary "0100", 0 ↔ +1)
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Syndrome string, e.g. -++- or 1001
        #[arg(long, allow_hyphen_values = true)]
        syndrome: String,
        /// Largest search level, or "inf" for optimal decoding
        #[arg(long, default_value = "inf")]
        level_cap: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the graph-state rule: Z on −1 vertices corrects any Pauli error
    VerifyGraphState {
        /// Graph: path to an edge-list file, or the shorthand cycle:<n>
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also verify post-correction fidelity on a dense statevector
        #[arg(long)]
        statevector: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the code-level invariant suite
    VerifyCode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Estimate logical error rates over a (p, level-cap) grid; CSV output
    Sweep {
        /// Sweep config file (key = value lines); exclusive with the flags
        #[arg(long, conflicts_with_all = ["graph", "logical_x", "channel", "p_grid", "caps", "trials"])]
        config: Option<PathBuf>,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, value_name = "LIST")]
        logical_x: Option<String>,
        /// Channel family: depolarizing | bitflip | phaseflip | iid:<wx>,<wy>,<wz>
        #[arg(long)]
        channel: Option<String>,
        #[arg(long, value_name = "LIST")]
        p_grid: Option<String>,
        /// Level caps, e.g. 0,1,2,inf
        #[arg(long, value_name = "LIST")]
        caps: Option<String>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Label for the code column (defaults to [[n,1,d]])
        #[arg(long)]
        code_id: Option<String>,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare decoder latencies on a channel-sampled syndrome corpus
    Bench {
        #[command(flatten)]
        code: CodeArgs,
        /// Full channel spec, e.g. depolarizing:0.05
        #[arg(long)]
        channel: String,
        #[arg(long, default_value_t = 10_000)]
        corpus_size: usize,
        #[arg(long, default_value_t = 5)]
        repetitions: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decode every syndrome with both decoders and compare weights
    EnumerateSyndromes {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum CliError {
    Validation(anyhow::Error),
    Runtime(anyhow::Error),
}

type CliResult = Result<(), CliError>;

trait Phase<T> {
    fn validation(self) -> Result<T, CliError>;
    fn runtime(self) -> Result<T, CliError>;
}

impl<T, E: Into<anyhow::Error>> Phase<T> for Result<T, E> {
    fn validation(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Validation(e.into()))
    }
    fn runtime(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Runtime(e.into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_graph(spec: &str) -> anyhow::Result<Graph> {
    let text = if spec.starts_with("cycle:") {
        spec.to_string()
    } else {
        fs::read_to_string(spec).with_context(|| format!("reading graph file '{spec}'"))?
    };
    Graph::parse(&text).with_context(|| format!("parsing graph '{spec}'"))
}

fn build_code(args: &CodeArgs) -> anyhow::Result<GraphCode> {
    let (graph_ref, support) = match (&args.code, &args.graph, &args.logical_x) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading code file '{}'", path.display()))?;
            let def = CodeDefinition::parse(&text)
                .with_context(|| format!("parsing code file '{}'", path.display()))?;
            // path-valued graph references resolve relative to the code file
            let graph_ref = if def.graph_ref.starts_with("cycle:") {
                def.graph_ref
            } else {
                path.parent()
                    .map(|dir| dir.join(&def.graph_ref).to_string_lossy().into_owned())
                    .unwrap_or(def.graph_ref)
            };
            (graph_ref, def.logical_x)
        }
        (None, Some(graph), Some(logical_x)) => (
            graph.clone(),
            harness::parse_vertex_list(logical_x).context("parsing --logical-x")?,
        ),
        _ => unreachable!("clap enforces --code xor (--graph, --logical-x)"),
    };
    let graph = load_graph(&graph_ref)?;
    GraphCode::build(graph, &support).context("building the code")
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::CodeInfo { code, format } => code_info(&code, format),
        Command::Decode {
            code,
            syndrome,
            level_cap,
            format,
        } => decode(&code, &syndrome, &level_cap, format),
        Command::VerifyGraphState {
            graph,
            trials,
            seed,
            statevector,
            format,
        } => verify_graph_state(&graph, trials, seed, statevector, format),
        Command::VerifyCode { code, seed, format } => verify_code(&code, seed, format),
        Command::Sweep {
            config,
            graph,
            logical_x,
            channel,
            p_grid,
            caps,
            trials,
            seed,
            code_id,
            out,
        } => sweep(
            config, graph, logical_x, channel, p_grid, caps, trials, seed, code_id, out,
        ),
        Command::Bench {
            code,
            channel,
            corpus_size,
            repetitions,
            seed,
            format,
        } => bench(&code, &channel, corpus_size, repetitions, seed, format),
        Command::EnumerateSyndromes { code, format } => enumerate_syndromes(&code, format),
    }
}

fn code_info(args: &CodeArgs, format: Format) -> CliResult {
    let code = build_code(args).validation()?;
    let n = code.n();
    let d_text = match code.distance() {
        Ok(d) => d.to_string(),
        Err(_) => "unknown (n > 16)".to_string(),
    };
    let rows: Vec<(String, String)> = {
        let mut rows = vec![
            ("code".to_string(), default_code_id(&code)),
            ("n".to_string(), n.to_string()),
            ("k".to_string(), "1".to_string()),
            ("d".to_string(), d_text),
            (
                "graph".to_string(),
                format!("{} vertices, {} edges", n, code.graph().edge_count()),
            ),
            (
                "logical_x".to_string(),
                code.logical_x().to_letter_string(),
            ),
            (
                "logical_z".to_string(),
                code.logical_z().to_letter_string(),
            ),
        ];
        for (i, k) in code.generators().iter().enumerate() {
            rows.push((format!("K{}", i + 1), k.to_letter_string()));
        }
        rows
    };
    match format {
        Format::Text => {
            for (key, value) in rows {
                println!("{key}: {value}");
            }
        }
        Format::Csv => {
            println!("field,value");
            for (key, value) in rows {
                println!("{},{}", csv_quote(&key), csv_quote(&value));
            }
        }
    }
    Ok(())
}

fn decode(args: &CodeArgs, syndrome: &str, level_cap: &str, format: Format) -> CliResult {
    let code = build_code(args).validation()?;
    let syndrome = Syndrome::parse(syndrome).validation()?;
    if syndrome.len() != code.num_generators() {
        return Err(CliError::Validation(anyhow!(
            "syndrome has {} bits, code has {} generators",
            syndrome.len(),
            code.num_generators()
        )));
    }
    let cap: LevelCap = level_cap.parse().validation()?;
    let out = hierarchical_decode(&code, &syndrome, cap).runtime()?;
    match format {
        Format::Text => {
            println!("syndrome: {syndrome}");
            println!("correction: {}", out.correction.to_letter_string());
            println!("weight: {}", out.weight);
            println!("level: {}", out.level_used);
            println!("optimal: {}", out.optimal);
        }
        Format::Csv => {
            println!("syndrome,correction,weight,level,optimal");
            println!(
                "{},{},{},{},{}",
                syndrome,
                out.correction.to_letter_string(),
                out.weight,
                out.level_used,
                out.optimal
            );
        }
    }
    Ok(())
}

fn verify_graph_state(
    graph_spec: &str,
    trials: u64,
    seed: u64,
    statevector: bool,
    format: Format,
) -> CliResult {
    let graph = load_graph(graph_spec).validation()?;
    if trials == 0 {
        return Err(CliError::Validation(anyhow!("--trials must be at least 1")));
    }
    let n = graph.n();
    if statevector && n > 16 {
        return Err(CliError::Validation(anyhow!(
            "--statevector needs n <= 16, graph has {n} vertices"
        )));
    }
    let stabilizers = graph.stabilizers();
    // uniform random Pauli on every vertex
    let channel = PauliChannel::Depolarizing(0.75);
    let mut group_ok = 0u64;
    let psi = if statevector {
        Some(StateVector::graph_state(&graph).runtime()?)
    } else {
        None
    };
    let sv_trials = trials.min(100);
    let mut sv_ok = 0u64;
    for trial in 0..trials {
        let error = sample_error(&channel, n, seed, trial).runtime()?;
        let s_full: Vec<i8> = stabilizers
            .iter()
            .map(|s| if s.commutes(&error).unwrap() { 1 } else { -1 })
            .collect();
        let correction = graph_state_phase_correction(&graph, &s_full).runtime()?;
        let residual = correction.multiply(&error).runtime()?;
        if graph.stabilizer_group_member(&residual).runtime()? {
            group_ok += 1;
        }
        if let Some(psi) = &psi {
            if trial < sv_trials {
                let corrected = psi
                    .apply_pauli(&error)
                    .and_then(|s| s.apply_pauli(&correction))
                    .runtime()?;
                if (corrected.fidelity(psi).runtime()? - 1.0).abs() < 1e-10 {
                    sv_ok += 1;
                }
            }
        }
    }
    let pass = group_ok == trials && (!statevector || sv_ok == sv_trials);
    match format {
        Format::Text => {
            println!("graph: {graph_spec} ({n} vertices)");
            println!("residual in stabilizer group: {group_ok}/{trials}");
            if statevector {
                println!("statevector fidelity checks: {sv_ok}/{sv_trials}");
            }
            println!("{}", if pass { "PASS" } else { "FAIL" });
        }
        Format::Csv => {
            println!("check,passed,total");
            println!("stabilizer_group_membership,{group_ok},{trials}");
            if statevector {
                println!("statevector_fidelity,{sv_ok},{sv_trials}");
            }
        }
    }
    if pass {
        Ok(())
    } else {
        Err(CliError::Runtime(anyhow!("graph-state verification failed")))
    }
}

fn verify_code(args: &CodeArgs, seed: u64, format: Format) -> CliResult {
    let code = build_code(args).validation()?;
    let n = code.n();
    let mut checks: Vec<(String, bool)> = Vec::new();

    let mut commuting = true;
    for (i, ki) in code.generators().iter().enumerate() {
        for kj in code.generators().iter().skip(i + 1) {
            commuting &= ki.commutes(kj).unwrap();
        }
        commuting &= ki.commutes(code.logical_x()).unwrap();
        commuting &= ki.commutes(code.logical_z()).unwrap();
    }
    checks.push(("generators_commute".into(), commuting));
    checks.push((
        "logicals_anticommute".into(),
        !code.logical_x().commutes(code.logical_z()).unwrap(),
    ));
    checks.push((
        "check_matrix_rank".into(),
        code.check_matrix().rank() == n - 1,
    ));

    // the two syndrome routes agree on sampled errors
    let mut t_route = true;
    for trial in 0..500u64 {
        let e = sample_error(&PauliChannel::Depolarizing(0.75), n, seed, trial).runtime()?;
        let via_t = code
            .syndrome_via_t(&e.z_support(), &e.x_support())
            .runtime()?;
        t_route &= via_t == code.syndrome_of(&e).runtime()?;
    }
    checks.push(("syndrome_routes_agree".into(), t_route));

    if n <= 16 {
        let d = code.distance().runtime()?;
        checks.push((format!("distance_computed_d{d}"), true));
        // exhaustive correctability up to the true radius
        use graphqec::PauliLetter;
        use itertools::Itertools;
        let t = (d - 1) / 2;
        let letters = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
        let mut correctable = true;
        for w in 1..=t {
            for support in (1..=n).combinations(w) {
                for assignment in
                    std::iter::repeat_n(letters.iter().copied(), w).multi_cartesian_product()
                {
                    let error = graphqec::PauliOperator::from_assignment(n, &support, &assignment)
                        .runtime()?;
                    let syndrome = code.syndrome_of(&error).runtime()?;
                    let out = hierarchical_decode(&code, &syndrome, LevelCap::Unlimited).runtime()?;
                    correctable &=
                        residual_class(&code, &error, &out.correction).runtime()? == LogicalClass::I;
                }
            }
        }
        checks.push((format!("correctable_up_to_weight_{t}"), correctable));

        // hierarchical vs exhaustive weight agreement
        let k = code.num_generators();
        let mut agree = true;
        if n <= 11 {
            for mask in 0..(1u64 << k) {
                let syndrome = Syndrome::from_minus_mask(mask as u128, k);
                let h = hierarchical_decode(&code, &syndrome, LevelCap::Unlimited).runtime()?;
                let e = exact_mld_decode(&code, &syndrome).runtime()?;
                agree &= h.weight == e.weight;
            }
            checks.push(("optimal_on_all_syndromes".into(), agree));
        } else {
            for trial in 0..500u64 {
                let e =
                    sample_error(&PauliChannel::Depolarizing(0.1), n, seed + 1, trial).runtime()?;
                let syndrome = code.syndrome_of(&e).runtime()?;
                let h = hierarchical_decode(&code, &syndrome, LevelCap::Unlimited).runtime()?;
                let x = exact_mld_decode(&code, &syndrome).runtime()?;
                agree &= h.weight == x.weight;
            }
            checks.push(("optimal_on_sampled_syndromes".into(), agree));
        }
    }

    let pass = checks.iter().all(|(_, ok)| *ok);
    match format {
        Format::Text => {
            for (name, ok) in &checks {
                println!("{}: {}", name, if *ok { "PASS" } else { "FAIL" });
            }
            println!("{}", if pass { "PASS" } else { "FAIL" });
        }
        Format::Csv => {
            println!("check,pass");
            for (name, ok) in &checks {
                println!("{name},{ok}");
            }
        }
    }
    if pass {
        Ok(())
    } else {
        Err(CliError::Runtime(anyhow!("code verification failed")))
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    config: Option<PathBuf>,
    graph: Option<String>,
    logical_x: Option<String>,
    channel: Option<String>,
    p_grid: Option<String>,
    caps: Option<String>,
    trials: Option<u64>,
    seed: u64,
    code_id: Option<String>,
    out: Option<PathBuf>,
) -> CliResult {
    let config = match config {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .with_context(|| format!("reading config '{}'", path.display()))
                .validation()?;
            let mut cfg = SweepConfig::parse(&text).validation()?;
            // a non-shorthand graph value is a file path, relative to the config
            if !cfg.graph.starts_with("cycle:") {
                let graph_path = path
                    .parent()
                    .map(|dir| dir.join(&cfg.graph))
                    .unwrap_or_else(|| PathBuf::from(&cfg.graph));
                cfg.graph = fs::read_to_string(&graph_path)
                    .with_context(|| format!("reading graph file '{}'", graph_path.display()))
                    .validation()?;
            }
            cfg
        }
        None => {
            let missing =
                |what: &str| CliError::Validation(anyhow!("missing --{what} (or --config)"));
            let graph_spec = graph.ok_or_else(|| missing("graph"))?;
            // resolve a file path now so the config carries the graph text
            let graph_text = if graph_spec.starts_with("cycle:") {
                graph_spec
            } else {
                fs::read_to_string(&graph_spec)
                    .with_context(|| format!("reading graph file '{graph_spec}'"))
                    .validation()?
            };
            let cfg = SweepConfig {
                code_id,
                graph: graph_text,
                logical_x: harness::parse_vertex_list(
                    &logical_x.ok_or_else(|| missing("logical-x"))?,
                )
                .validation()?,
                channel: ChannelFamily::parse(&channel.ok_or_else(|| missing("channel"))?)
                    .validation()?,
                p_grid: harness::parse_f64_list(
                    &p_grid.ok_or_else(|| missing("p-grid"))?,
                    "p_grid",
                )
                .validation()?,
                caps: harness::parse_cap_list(&caps.ok_or_else(|| missing("caps"))?)
                    .validation()?,
                trials: trials.ok_or_else(|| missing("trials"))?,
                seed,
            };
            cfg.validate().validation()?;
            cfg
        }
    };
    // fail on an unbuildable code before any computation
    config.build_code().validation()?;
    let records = run_sweep(&config).runtime()?;
    let csv = records_to_csv(&records);
    match out {
        Some(path) => fs::write(&path, csv)
            .with_context(|| format!("writing '{}'", path.display()))
            .runtime()?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn bench(
    args: &CodeArgs,
    channel: &str,
    corpus_size: usize,
    repetitions: usize,
    seed: u64,
    format: Format,
) -> CliResult {
    let code = build_code(args).validation()?;
    let channel = PauliChannel::parse(channel).validation()?;
    if corpus_size == 0 {
        return Err(CliError::Validation(anyhow!("--corpus-size must be at least 1")));
    }
    if repetitions == 0 {
        return Err(CliError::Validation(anyhow!("--repetitions must be at least 1")));
    }
    let corpus = sample_syndrome_corpus(&code, &channel, corpus_size, seed).runtime()?;
    let report = latency_benchmark(&code, &corpus, repetitions).runtime()?;
    let label = default_code_id(&code);
    match format {
        Format::Text => {
            println!("code: {label}");
            println!("channel: {channel}");
            println!("corpus: {} syndromes, {} repetitions", corpus_size, repetitions);
            println!("hierarchical: {:.1} ns/decode", report.hierarchical_mean_ns);
            println!("exhaustive:   {:.1} ns/decode", report.exact_mean_ns);
            println!("speedup: {:.1}x", report.speedup());
            println!("weight mismatches: {}", report.weight_mismatches);
        }
        Format::Csv => {
            println!(
                "code,channel,corpus_size,repetitions,hierarchical_mean_ns,exact_mean_ns,speedup,weight_mismatches"
            );
            println!(
                "{},{},{},{},{:.1},{:.1},{:.2},{}",
                csv_quote(&label),
                csv_quote(&channel.to_string()),
                corpus_size,
                repetitions,
                report.hierarchical_mean_ns,
                report.exact_mean_ns,
                report.speedup(),
                report.weight_mismatches
            );
        }
    }
    Ok(())
}

fn enumerate_syndromes(args: &CodeArgs, format: Format) -> CliResult {
    let code = build_code(args).validation()?;
    let k = code.num_generators();
    if k > 20 {
        return Err(CliError::Validation(anyhow!(
            "enumeration over 2^{k} syndromes is not practical; n must be small"
        )));
    }
    let mut mismatches = 0u64;
    let mut rows = Vec::with_capacity(1 << k);
    for mask in 0..(1u64 << k) {
        let syndrome = Syndrome::from_minus_mask(mask as u128, k);
        let hier = hierarchical_decode(&code, &syndrome, LevelCap::Unlimited).runtime()?;
        let exact = exact_mld_decode(&code, &syndrome).runtime()?;
        if hier.weight != exact.weight {
            mismatches += 1;
        }
        rows.push((syndrome, hier.weight, exact.weight));
    }
    match format {
        Format::Text => {
            println!("{:<12} {:>6} {:>6} {:>7}", "syndrome", "hier", "exact", "match");
            for (syndrome, h, e) in &rows {
                println!("{:<12} {:>6} {:>6} {:>7}", syndrome.to_string(), h, e, h == e);
            }
            println!("{mismatches} weight mismatches over {} syndromes", rows.len());
        }
        Format::Csv => {
            println!("syndrome,hierarchical_weight,exact_weight,match");
            for (syndrome, h, e) in &rows {
                println!("{syndrome},{h},{e},{}", h == e);
            }
        }
    }
    if mismatches == 0 {
        Ok(())
    } else {
        Err(CliError::Runtime(anyhow!("{mismatches} weight mismatches")))
    }
}
