//! Experiment harness: Monte Carlo logical-error-rate estimation, an exact
//! enumeration oracle, decoder latency comparison, and CSV sweeps.

use std::hint::black_box;
use std::time::Instant;

use rayon::prelude::*;

use crate::code::{GraphCode, LogicalClass, Syndrome};
use crate::decoder::{exact_mld_decode, hierarchical_decode, LevelCap};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::noise::{sample_error, ChannelFamily, PauliChannel};
use crate::pauli::{PauliLetter, PauliOperator};

/// Largest qubit count for the 4^n exact enumeration.
pub const EXACT_ENUMERATION_LIMIT: usize = 11;

/// Trials per parallel work unit; fixed so that worker partitioning never
/// affects which trial uses which RNG stream.
const CHUNK: u64 = 4096;

/// One sweep data point.
#[derive(Clone, Debug)]
pub struct SweepRecord {
    pub code_id: String,
    pub channel: String,
    pub p: f64,
    pub level_cap: LevelCap,
    pub trials: u64,
    pub failures: u64,
    pub p_l: f64,
    pub stderr: f64,
    pub mean_decode_ns: f64,
}

pub const SWEEP_CSV_HEADER: &str = "code,channel,p,level_cap,trials,failures,p_L,stderr,mean_decode_ns";

/// Monte Carlo estimate of the logical error rate.
///
/// Per trial: sample an error, compute its syndrome, decode under the given
/// cap, and count a failure iff the residual acts non-trivially on the
/// encoded qubit. Failure counts are a deterministic function of (seed,
/// trials) independent of how trials are partitioned across workers.
pub fn estimate_logical_error_rate(
    code: &GraphCode,
    code_id: &str,
    channel: &PauliChannel,
    cap: LevelCap,
    trials: u64,
    seed: u64,
) -> Result<SweepRecord> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    channel.validate()?;
    let n = code.n();
    let p = 1.0 - channel.letter_probs()[0];

    let chunk_count = trials.div_ceil(CHUNK);
    let per_chunk: Vec<(u64, f64)> = (0..chunk_count)
        .into_par_iter()
        .map(|ci| -> Result<(u64, f64)> {
            let start = ci * CHUNK;
            let end = (start + CHUNK).min(trials);
            let mut errors = Vec::with_capacity((end - start) as usize);
            let mut syndromes = Vec::with_capacity((end - start) as usize);
            for trial in start..end {
                let e = sample_error(channel, n, seed, trial)?;
                syndromes.push(code.syndrome_of(&e)?);
                errors.push(e);
            }
            let t0 = Instant::now();
            let mut corrections = Vec::with_capacity(syndromes.len());
            for s in &syndromes {
                corrections.push(black_box(hierarchical_decode(code, s, cap)?).correction);
            }
            let decode_ns = t0.elapsed().as_nanos() as f64;
            let mut failures = 0u64;
            for (e, c) in errors.iter().zip(&corrections) {
                let residual = c.multiply(e)?;
                if code.logical_class(&residual)? != LogicalClass::I {
                    failures += 1;
                }
            }
            Ok((failures, decode_ns))
        })
        .collect::<Result<_>>()?;

    let failures: u64 = per_chunk.iter().map(|c| c.0).sum();
    let decode_ns: f64 = per_chunk.iter().map(|c| c.1).sum();
    let p_l = failures as f64 / trials as f64;
    Ok(SweepRecord {
        code_id: code_id.to_string(),
        channel: channel.to_string(),
        p,
        level_cap: cap,
        trials,
        failures,
        p_l,
        stderr: (p_l * (1.0 - p_l) / trials as f64).sqrt(),
        mean_decode_ns: decode_ns / trials as f64,
    })
}

/// Monte Carlo failure rate with no decoding at all (identity correction);
/// the baseline for the "even level 0 helps" comparison.
pub fn estimate_undecoded_error_rate(
    code: &GraphCode,
    channel: &PauliChannel,
    trials: u64,
    seed: u64,
) -> Result<(u64, f64, f64)> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    channel.validate()?;
    let n = code.n();
    let failures: u64 = (0..trials.div_ceil(CHUNK))
        .into_par_iter()
        .map(|ci| -> Result<u64> {
            let start = ci * CHUNK;
            let end = (start + CHUNK).min(trials);
            let mut fails = 0u64;
            for trial in start..end {
                let e = sample_error(channel, n, seed, trial)?;
                if code.logical_class(&e)? != LogicalClass::I {
                    fails += 1;
                }
            }
            Ok(fails)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let p_l = failures as f64 / trials as f64;
    let stderr = (p_l * (1.0 - p_l) / trials as f64).sqrt();
    Ok((failures, p_l, stderr))
}

/// Exact failure census of a decoding strategy: enumerates all 4^n error
/// patterns once and tallies the failing ones by their (X, Y, Z) letter
/// counts, so the logical error rate evaluates exactly at any channel
/// parameters.
pub struct FailureProfile {
    n: usize,
    // failing-pattern counts indexed nx·(n+1)² + ny·(n+1) + nz
    counts: Vec<u64>,
}

impl FailureProfile {
    /// Exact logical error rate for an iid Pauli channel.
    pub fn logical_error_rate(&self, channel: &PauliChannel) -> Result<f64> {
        channel.validate()?;
        let [pi, px, py, pz] = channel.letter_probs();
        let n = self.n as i32;
        let stride = self.n + 1;
        let mut total = 0.0;
        for nx in 0..=self.n {
            for ny in 0..=self.n {
                for nz in 0..=self.n {
                    if nx + ny + nz > self.n {
                        continue;
                    }
                    let count = self.counts[(nx * stride + ny) * stride + nz];
                    if count == 0 {
                        continue;
                    }
                    let weight = (nx + ny + nz) as i32;
                    total += count as f64
                        * px.powi(nx as i32)
                        * py.powi(ny as i32)
                        * pz.powi(nz as i32)
                        * pi.powi(n - weight);
                }
            }
        }
        Ok(total)
    }
}

/// Classify every error pattern against the hierarchical decoder at the
/// given cap. Corrections are precomputed once per syndrome.
pub fn exact_failure_profile(code: &GraphCode, cap: LevelCap) -> Result<FailureProfile> {
    let n = code.n();
    if n > EXACT_ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "exact error-pattern enumeration",
            limit: EXACT_ENUMERATION_LIMIT,
            n,
        });
    }
    let k = code.num_generators();

    // per-syndrome anticommutation bits of the chosen correction
    let table: Vec<(bool, bool)> = (0..(1u32 << k))
        .map(|mask| -> Result<(bool, bool)> {
            let syndrome = Syndrome::from_minus_mask(mask as u128, k);
            let out = hierarchical_decode(code, &syndrome, cap)?;
            Ok(code.anti_logical_bits(out.correction.x_mask(), out.correction.z_mask()))
        })
        .collect::<Result<_>>()?;

    // per-(vertex, letter) syndrome and logical-anticommutation contributions
    let letters = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
    let mut contrib = vec![[(0u32, false, false); 3]; n];
    for v in 1..=n {
        for (li, &letter) in letters.iter().enumerate() {
            let single = PauliOperator::single(n, v, letter)?;
            let synd = code.syndrome_minus_mask(single.x_mask(), single.z_mask()) as u32;
            let (ax, az) = code.anti_logical_bits(single.x_mask(), single.z_mask());
            contrib[v - 1][li] = (synd, ax, az);
        }
    }

    let stride = n + 1;
    let mut counts = vec![0u64; stride * stride * stride];
    let mut letter_counts = [0usize; 3];
    dfs_patterns(
        n,
        0,
        0,
        false,
        false,
        &mut letter_counts,
        &contrib,
        &table,
        stride,
        &mut counts,
    );
    Ok(FailureProfile { n, counts })
}

#[allow(clippy::too_many_arguments)]
fn dfs_patterns(
    n: usize,
    depth: usize,
    synd: u32,
    ax: bool,
    az: bool,
    letter_counts: &mut [usize; 3],
    contrib: &[[(u32, bool, bool); 3]],
    table: &[(bool, bool)],
    stride: usize,
    counts: &mut [u64],
) {
    if depth == n {
        let (cx, cz) = table[synd as usize];
        if (cx != ax) || (cz != az) {
            let idx = (letter_counts[0] * stride + letter_counts[1]) * stride + letter_counts[2];
            counts[idx] += 1;
        }
        return;
    }
    // identity on this qubit
    dfs_patterns(n, depth + 1, synd, ax, az, letter_counts, contrib, table, stride, counts);
    for li in 0..3 {
        let (ds, dax, daz) = contrib[depth][li];
        letter_counts[li] += 1;
        dfs_patterns(
            n,
            depth + 1,
            synd ^ ds,
            ax ^ dax,
            az ^ daz,
            letter_counts,
            contrib,
            table,
            stride,
            counts,
        );
        letter_counts[li] -= 1;
    }
}

/// Exact logical error rate of the hierarchical decoder at the given cap.
pub fn exact_logical_error_rate(
    code: &GraphCode,
    channel: &PauliChannel,
    cap: LevelCap,
) -> Result<f64> {
    exact_failure_profile(code, cap)?.logical_error_rate(channel)
}

/// Syndromes of channel-sampled errors, in trial order.
pub fn sample_syndrome_corpus(
    code: &GraphCode,
    channel: &PauliChannel,
    size: usize,
    seed: u64,
) -> Result<Vec<Syndrome>> {
    (0..size as u64)
        .map(|trial| {
            let e = sample_error(channel, code.n(), seed, trial)?;
            code.syndrome_of(&e)
        })
        .collect()
}

/// Latency comparison over a fixed syndrome corpus.
#[derive(Clone, Debug)]
pub struct LatencyReport {
    pub hierarchical_mean_ns: f64,
    pub exact_mean_ns: f64,
    pub weight_mismatches: u64,
    pub corpus_size: usize,
    pub repetitions: usize,
}

impl LatencyReport {
    pub fn speedup(&self) -> f64 {
        self.exact_mean_ns / self.hierarchical_mean_ns
    }
}

/// Measure both decoders over the same corpus: one untimed warm-up pass
/// (which also cross-checks the returned weights), then `repetitions`
/// timed passes; the reported means are medians over the passes.
pub fn latency_benchmark(
    code: &GraphCode,
    corpus: &[Syndrome],
    repetitions: usize,
) -> Result<LatencyReport> {
    if corpus.is_empty() {
        return Err(Error::invalid("latency corpus must not be empty"));
    }
    if repetitions == 0 {
        return Err(Error::invalid("repetitions must be at least 1"));
    }
    // warm-up + weight agreement
    let mut weight_mismatches = 0u64;
    for s in corpus {
        let h = hierarchical_decode(code, s, LevelCap::Unlimited)?;
        let e = exact_mld_decode(code, s)?;
        if h.weight != e.weight {
            weight_mismatches += 1;
        }
    }

    let mut hier_means = Vec::with_capacity(repetitions);
    let mut exact_means = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let t0 = Instant::now();
        for s in corpus {
            black_box(hierarchical_decode(code, black_box(s), LevelCap::Unlimited)?);
        }
        hier_means.push(t0.elapsed().as_nanos() as f64 / corpus.len() as f64);

        let t1 = Instant::now();
        for s in corpus {
            black_box(exact_mld_decode(code, black_box(s))?);
        }
        exact_means.push(t1.elapsed().as_nanos() as f64 / corpus.len() as f64);
    }
    Ok(LatencyReport {
        hierarchical_mean_ns: median(&mut hier_means),
        exact_mean_ns: median(&mut exact_means),
        weight_mismatches,
        corpus_size: corpus.len(),
        repetitions,
    })
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

/// Sweep configuration, parsed from flat `key = value` text.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub code_id: Option<String>,
    pub graph: String,
    pub logical_x: Vec<usize>,
    pub channel: ChannelFamily,
    pub p_grid: Vec<f64>,
    pub caps: Vec<LevelCap>,
    pub trials: u64,
    pub seed: u64,
}

impl SweepConfig {
    /// Keys: `code` (optional label), `graph`, `logical_x`, `channel`,
    /// `p_grid`, `caps`, `trials`, `seed`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut code_id = None;
        let mut graph = None;
        let mut logical_x = None;
        let mut channel = None;
        let mut p_grid = None;
        let mut caps = None;
        let mut trials = None;
        let mut seed = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(idx + 1, "expected 'key = value'"))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "code" => code_id = Some(value.to_string()),
                "graph" => graph = Some(value.to_string()),
                "logical_x" => logical_x = Some(parse_vertex_list(value)?),
                "channel" => channel = Some(ChannelFamily::parse(value)?),
                "p_grid" => p_grid = Some(parse_f64_list(value, "p_grid")?),
                "caps" => caps = Some(parse_cap_list(value)?),
                "trials" => {
                    trials = Some(value.parse::<u64>().map_err(|_| {
                        Error::invalid(format!("config field 'trials': invalid count '{value}'"))
                    })?)
                }
                "seed" => {
                    seed = Some(value.parse::<u64>().map_err(|_| {
                        Error::invalid(format!("config field 'seed': invalid integer '{value}'"))
                    })?)
                }
                other => {
                    return Err(Error::invalid(format!("unknown config field '{other}'")));
                }
            }
        }
        let missing = |field: &str| Error::invalid(format!("missing config field '{field}'"));
        let cfg = SweepConfig {
            code_id,
            graph: graph.ok_or_else(|| missing("graph"))?,
            logical_x: logical_x.ok_or_else(|| missing("logical_x"))?,
            channel: channel.ok_or_else(|| missing("channel"))?,
            p_grid: p_grid.ok_or_else(|| missing("p_grid"))?,
            caps: caps.ok_or_else(|| missing("caps"))?,
            trials: trials.ok_or_else(|| missing("trials"))?,
            seed: seed.unwrap_or(1),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_grid.is_empty() {
            return Err(Error::invalid("config field 'p_grid': must not be empty"));
        }
        if self.caps.is_empty() {
            return Err(Error::invalid("config field 'caps': must not be empty"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("config field 'trials': must be at least 1"));
        }
        for &p in &self.p_grid {
            self.channel.at(p).validate().map_err(|e| {
                Error::invalid(format!("config field 'p_grid': {e}"))
            })?;
        }
        Ok(())
    }

    /// Build the code and its display label.
    pub fn build_code(&self) -> Result<(GraphCode, String)> {
        let graph = Graph::parse(&self.graph)?;
        let code = GraphCode::build(graph, &self.logical_x)?;
        let id = match &self.code_id {
            Some(id) => id.clone(),
            None => default_code_id(&code),
        };
        Ok((code, id))
    }
}

/// `[[n,1,d]]` when the distance is computable, `[[n,1,?]]` otherwise.
pub fn default_code_id(code: &GraphCode) -> String {
    match code.distance() {
        Ok(d) => format!("[[{},1,{}]]", code.n(), d),
        Err(_) => format!("[[{},1,?]]", code.n()),
    }
}

pub fn parse_vertex_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("invalid vertex '{}'", t.trim())))
        })
        .collect()
}

pub fn parse_f64_list(s: &str, field: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim().parse::<f64>().map_err(|_| {
                Error::invalid(format!("config field '{field}': invalid number '{}'", t.trim()))
            })
        })
        .collect()
}

pub fn parse_cap_list(s: &str) -> Result<Vec<LevelCap>> {
    s.split(',').map(|t| t.trim().parse::<LevelCap>()).collect()
}

/// Run the full sweep: one record per (p, level_cap), p outermost. All
/// level caps at a given p share the same trial seed, so their error
/// streams are identical.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let (code, code_id) = config.build_code()?;
    let mut records = Vec::with_capacity(config.p_grid.len() * config.caps.len());
    for (pi, &p) in config.p_grid.iter().enumerate() {
        let channel = config.channel.at(p);
        let row_seed = config.seed.wrapping_add(pi as u64);
        for &cap in &config.caps {
            records.push(estimate_logical_error_rate(
                &code,
                &code_id,
                &channel,
                cap,
                config.trials,
                row_seed,
            )?);
        }
    }
    Ok(records)
}

/// Format with 9 significant digits, stable across runs.
pub fn fmt_sig9(x: f64) -> String {
    format!("{x:.8e}")
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn records_to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            csv_field(&r.code_id),
            csv_field(&r.channel),
            fmt_sig9(r.p),
            r.level_cap,
            r.trials,
            r.failures,
            fmt_sig9(r.p_l),
            fmt_sig9(r.stderr),
            fmt_sig9(r.mean_decode_ns),
        ));
    }
    out
}
