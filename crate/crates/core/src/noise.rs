//! Pauli error channels and single-qubit Kraus decomposition.
//!
//! Sampling is keyed by (seed, trial): every trial gets its own
//! counter-derived RNG stream, so parallel and sequential runs produce
//! identical errors.

pub use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliOperator};

/// Independent single-qubit Pauli channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PauliChannel {
    /// X with probability q on every qubit.
    BitFlip(f64),
    /// Z with probability q on every qubit.
    PhaseFlip(f64),
    /// X, Y, Z each with probability p/3 on every qubit.
    Depolarizing(f64),
    /// X, Y, Z with the given probabilities on every qubit.
    IidPauli { px: f64, py: f64, pz: f64 },
}

impl PauliChannel {
    pub fn validate(&self) -> Result<()> {
        let in_unit = |p: f64| (0.0..=1.0).contains(&p);
        match *self {
            PauliChannel::BitFlip(q) | PauliChannel::PhaseFlip(q) | PauliChannel::Depolarizing(q) => {
                if !in_unit(q) {
                    return Err(Error::invalid(format!("probability {q} outside [0, 1]")));
                }
            }
            PauliChannel::IidPauli { px, py, pz } => {
                if !(in_unit(px) && in_unit(py) && in_unit(pz)) {
                    return Err(Error::invalid("iid probabilities outside [0, 1]"));
                }
                if px + py + pz > 1.0 + 1e-12 {
                    return Err(Error::invalid(format!(
                        "iid probabilities sum to {} > 1",
                        px + py + pz
                    )));
                }
            }
        }
        Ok(())
    }

    /// Per-qubit letter probabilities in (I, X, Y, Z) order.
    pub fn letter_probs(&self) -> [f64; 4] {
        match *self {
            PauliChannel::BitFlip(q) => [1.0 - q, q, 0.0, 0.0],
            PauliChannel::PhaseFlip(q) => [1.0 - q, 0.0, 0.0, q],
            PauliChannel::Depolarizing(p) => [1.0 - p, p / 3.0, p / 3.0, p / 3.0],
            PauliChannel::IidPauli { px, py, pz } => [1.0 - px - py - pz, px, py, pz],
        }
    }

    /// Parse a channel spec: `depolarizing:0.01`, `bitflip:0.05`,
    /// `phaseflip:0.05` or `iid:0.01,0.002,0.003`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("channel '{s}' missing ':<params>'")))?;
        let channel = match name {
            "depolarizing" => PauliChannel::Depolarizing(parse_prob(args)?),
            "bitflip" => PauliChannel::BitFlip(parse_prob(args)?),
            "phaseflip" => PauliChannel::PhaseFlip(parse_prob(args)?),
            "iid" => {
                let parts: Vec<&str> = args.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::invalid("iid channel needs 'iid:<px>,<py>,<pz>'"));
                }
                PauliChannel::IidPauli {
                    px: parse_prob(parts[0])?,
                    py: parse_prob(parts[1])?,
                    pz: parse_prob(parts[2])?,
                }
            }
            other => return Err(Error::invalid(format!("unknown channel '{other}'"))),
        };
        channel.validate()?;
        Ok(channel)
    }
}

fn parse_prob(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::invalid(format!("invalid probability '{s}'")))
}

impl std::fmt::Display for PauliChannel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            PauliChannel::BitFlip(q) => write!(f, "bitflip:{q}"),
            PauliChannel::PhaseFlip(q) => write!(f, "phaseflip:{q}"),
            PauliChannel::Depolarizing(p) => write!(f, "depolarizing:{p}"),
            PauliChannel::IidPauli { px, py, pz } => write!(f, "iid:{px},{py},{pz}"),
        }
    }
}

/// Channel family with the error-rate parameter left open; used by sweeps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChannelFamily {
    Depolarizing,
    BitFlip,
    PhaseFlip,
    /// Relative X/Y/Z weights, normalized so that `at(p)` distributes a
    /// total error probability p across the letters.
    Iid { wx: f64, wy: f64, wz: f64 },
}

impl ChannelFamily {
    /// Parse `depolarizing`, `bitflip`, `phaseflip` or `iid:<wx>,<wy>,<wz>`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        match s {
            "depolarizing" => return Ok(ChannelFamily::Depolarizing),
            "bitflip" => return Ok(ChannelFamily::BitFlip),
            "phaseflip" => return Ok(ChannelFamily::PhaseFlip),
            _ => {}
        }
        if let Some(args) = s.strip_prefix("iid:") {
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::invalid("iid family needs 'iid:<wx>,<wy>,<wz>'"));
            }
            let wx = parse_prob(parts[0])?;
            let wy = parse_prob(parts[1])?;
            let wz = parse_prob(parts[2])?;
            if wx + wy + wz <= 0.0 {
                return Err(Error::invalid("iid weights must not all vanish"));
            }
            return Ok(ChannelFamily::Iid { wx, wy, wz });
        }
        Err(Error::invalid(format!("unknown channel family '{s}'")))
    }

    pub fn at(&self, p: f64) -> PauliChannel {
        match *self {
            ChannelFamily::Depolarizing => PauliChannel::Depolarizing(p),
            ChannelFamily::BitFlip => PauliChannel::BitFlip(p),
            ChannelFamily::PhaseFlip => PauliChannel::PhaseFlip(p),
            ChannelFamily::Iid { wx, wy, wz } => {
                let total = wx + wy + wz;
                PauliChannel::IidPauli {
                    px: p * wx / total,
                    py: p * wy / total,
                    pz: p * wz / total,
                }
            }
        }
    }
}

impl std::fmt::Display for ChannelFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            ChannelFamily::Depolarizing => write!(f, "depolarizing"),
            ChannelFamily::BitFlip => write!(f, "bitflip"),
            ChannelFamily::PhaseFlip => write!(f, "phaseflip"),
            ChannelFamily::Iid { wx, wy, wz } => write!(f, "iid:{wx},{wy},{wz}"),
        }
    }
}

/// Sample one n-qubit error: each qubit draws a letter independently.
/// Deterministic function of (seed, trial); the trial index selects a
/// dedicated RNG stream, so the draw order of trials never matters.
pub fn sample_error(
    channel: &PauliChannel,
    n: usize,
    seed: u64,
    trial: u64,
) -> Result<PauliOperator> {
    channel.validate()?;
    PauliOperator::identity(n)?; // validates the qubit count
    let [_, px, py, pz] = channel.letter_probs();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut x = 0u128;
    let mut z = 0u128;
    for qubit in 0..n {
        let u: f64 = rng.random();
        let threshold_i = 1.0 - px - py - pz;
        let letter = if u < threshold_i {
            PauliLetter::I
        } else if u < threshold_i + px {
            PauliLetter::X
        } else if u < threshold_i + px + py {
            PauliLetter::Y
        } else {
            PauliLetter::Z
        };
        let bit = 1u128 << qubit;
        match letter {
            PauliLetter::I => {}
            PauliLetter::X => x |= bit,
            PauliLetter::Y => {
                x |= bit;
                z |= bit;
            }
            PauliLetter::Z => z |= bit,
        }
    }
    Ok(PauliOperator::hermitian_from_masks(n as u32, x, z))
}

/// 2×2 complex matrix in row-major order; a single Kraus operator.
pub type Kraus2 = [[Complex64; 2]; 2];

/// Coefficients of a 2×2 matrix over the basis {I, X, Z, ZX}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KrausCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl KrausCoefficients {
    pub fn norm_sqr_sum(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()
    }
}

/// Unique decomposition `m = a·I + b·X + c·Z + d·ZX`.
pub fn decompose_kraus(m: &Kraus2) -> KrausCoefficients {
    let half = Complex64::new(0.5, 0.0);
    KrausCoefficients {
        a: (m[0][0] + m[1][1]) * half,
        b: (m[0][1] + m[1][0]) * half,
        c: (m[0][0] - m[1][1]) * half,
        d: (m[0][1] - m[1][0]) * half,
    }
}

/// Rebuild the matrix from its {I, X, Z, ZX} coefficients.
pub fn reconstruct_kraus(c: &KrausCoefficients) -> Kraus2 {
    // I = [[1,0],[0,1]], X = [[0,1],[1,0]], Z = [[1,0],[0,-1]], ZX = [[0,1],[-1,0]]
    [
        [c.a + c.c, c.b + c.d],
        [c.b - c.d, c.a - c.c],
    ]
}

/// Operator-sum completeness: `Σ_j E_j† E_j = I` within 1e-10.
pub fn check_completeness(ops: &[Kraus2]) -> bool {
    let mut sum = [[Complex64::new(0.0, 0.0); 2]; 2];
    for e in ops {
        // (E†E)_{jk} = Σ_l conj(E_{lj}) E_{lk}
        for j in 0..2 {
            for k in 0..2 {
                for row in e {
                    sum[j][k] += row[j].conj() * row[k];
                }
            }
        }
    }
    let tol = 1e-10;
    (sum[0][0] - 1.0).norm() < tol
        && (sum[1][1] - 1.0).norm() < tol
        && sum[0][1].norm() < tol
        && sum[1][0].norm() < tol
}

/// The coefficient-space identity `Σ_j (|a|² + |b|² + |c|² + |d|²) = 1`;
/// returns the sum so callers can check it against 1 separately from
/// [`check_completeness`].
pub fn coefficient_norm_sum(ops: &[Kraus2]) -> f64 {
    ops.iter().map(|e| decompose_kraus(e).norm_sqr_sum()).sum()
}

/// Amplitude-damping channel with decay probability `gamma`.
pub fn amplitude_damping(gamma: f64) -> [Kraus2; 2] {
    let zero = Complex64::new(0.0, 0.0);
    let k0 = [
        [Complex64::new(1.0, 0.0), zero],
        [zero, Complex64::new((1.0 - gamma).sqrt(), 0.0)],
    ];
    let k1 = [
        [zero, Complex64::new(gamma.sqrt(), 0.0)],
        [zero, zero],
    ];
    [k0, k1]
}
