//! Syndrome decoders.
//!
//! Three entry points:
//!
//! * [`hierarchical_decode`]: the structured level-by-level search. Every
//!   correction consistent with a syndrome has the form `S_I · X̄^a · Z_{V⁻}`
//!   where `V⁻` collects the −1 outcomes, `S_I` is a product of graph-state
//!   generators and `a` toggles the logical X. Level ℓ scans all index sets
//!   with `|I| = ℓ`; since each `S_i` contributes an X factor at vertex i
//!   while `X̄` and `Z_{V⁻}` are Z-only, every level-ℓ candidate has weight
//!   ≥ ℓ, so the search can stop as soon as the best weight found is ≤ ℓ.
//! * [`exact_mld_decode`]: the exhaustive minimum-weight reference: walks
//!   all Pauli operators in non-decreasing weight and returns the first one
//!   reproducing the syndrome. Kept deliberately plain; it exists to certify
//!   the structured search and to benchmark against.
//! * [`graph_state_phase_correction`]: the graph-state rule: apply Z at
//!   every vertex whose measured stabilizer came out −1.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::code::{GraphCode, LogicalClass, Syndrome, ENUMERATION_LIMIT};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pauli::{PauliLetter, PauliOperator};

/// Bound on the largest level the hierarchical search may examine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LevelCap {
    Unlimited,
    Max(usize),
}

impl LevelCap {
    #[inline]
    fn allows(&self, level: usize) -> bool {
        match self {
            LevelCap::Unlimited => true,
            LevelCap::Max(cap) => level <= *cap,
        }
    }
}

impl fmt::Display for LevelCap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelCap::Unlimited => write!(f, "inf"),
            LevelCap::Max(cap) => write!(f, "{cap}"),
        }
    }
}

impl FromStr for LevelCap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "unlimited" | "none" => Ok(LevelCap::Unlimited),
            other => other
                .parse::<usize>()
                .map(LevelCap::Max)
                .map_err(|_| Error::invalid(format!("invalid level cap '{other}'"))),
        }
    }
}

/// Result of a decode call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// Correction operator; reproduces the input syndrome.
    pub correction: PauliOperator,
    /// Weight of the correction.
    pub weight: usize,
    /// Final level examined by the search.
    pub level_used: usize,
    /// True iff the early-exit condition fired (or the level range was
    /// exhausted), i.e. the returned weight is provably minimal over the
    /// candidate space; false when a level cap cut the search short.
    pub optimal: bool,
}

struct BestCandidate {
    weight: u32,
    a: u8,
    i_mask: u128,
    z_mask: u128,
}

impl BestCandidate {
    /// Replace the incumbent when the offered candidate wins the
    /// (weight, a, index-set) tie-break.
    #[inline(always)]
    fn offer(&mut self, weight: u32, a: u8, i_mask: u128, z_mask: u128) {
        if weight > self.weight {
            return;
        }
        if weight < self.weight
            || a < self.a
            || (a == self.a && seq_lex_less(i_mask, self.i_mask))
        {
            *self = BestCandidate {
                weight,
                a,
                i_mask,
                z_mask,
            };
        }
    }

    /// Offer both logical-X toggles of the candidate `S_I · Z_{V⁻}`.
    #[inline(always)]
    fn offer_pair(&mut self, i_mask: u128, s_i_z: u128, base_z: u128, xbar_z: u128) {
        let z0 = s_i_z ^ base_z;
        self.offer((i_mask | z0).count_ones(), 0, i_mask, z0);
        let z1 = z0 ^ xbar_z;
        self.offer((i_mask | z1).count_ones(), 1, i_mask, z1);
    }
}

/// Sorted-sequence lexicographic order on index sets encoded as bit masks.
/// The sets agree below the smallest differing vertex `d`; whichever set
/// owns `d` continues with the smaller element there, unless the other
/// set has nothing beyond the shared prefix, in which case the shorter
/// (prefix) set comes first.
#[inline]
fn seq_lex_less(a: u128, b: u128) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let lowest = diff & diff.wrapping_neg();
    let above = !(lowest | (lowest - 1));
    if a & lowest != 0 {
        b & above != 0
    } else {
        a & above == 0
    }
}

/// Decode a syndrome with the level-by-level structured search.
///
/// Ties between equal-weight candidates prefer `a = 0`, then the
/// lexicographically smallest index set. With an unlimited cap the result
/// always matches the exhaustive minimum weight; a finite cap bounds the
/// largest level examined and reports `optimal = false` when it cut the
/// search short.
pub fn hierarchical_decode(
    code: &GraphCode,
    syndrome: &Syndrome,
    cap: LevelCap,
) -> Result<DecodeOutcome> {
    let n = code.n();
    if syndrome.len() != code.num_generators() {
        return Err(Error::SyndromeLength {
            got: syndrome.len(),
            expected: code.num_generators(),
        });
    }
    let base_z = syndrome.minus_mask(); // z-support of Z_{V⁻}
    let xbar_z = code.logical_x().z_mask();
    let nbr = code.graph().nbr_masks();

    // level 0 seeds the incumbent with Z_{V⁻} itself
    let mut best = BestCandidate {
        weight: base_z.count_ones(),
        a: 0,
        i_mask: 0,
        z_mask: base_z,
    };
    best.offer((base_z ^ xbar_z).count_ones(), 1, 0, base_z ^ xbar_z);
    let mut level_used = 0usize;
    let mut level = 1usize;
    let optimal;
    loop {
        if level as u32 >= best.weight {
            optimal = true;
            break;
        }
        if !cap.allows(level) {
            optimal = false;
            break;
        }
        if level > n {
            optimal = true; // every index set has been examined
            break;
        }
        scan_level(n, level, base_z, xbar_z, nbr, &mut best);
        level_used = level;
        level += 1;
    }

    let correction = PauliOperator::hermitian_from_masks(n as u32, best.i_mask, best.z_mask);
    Ok(DecodeOutcome {
        correction,
        weight: best.weight as usize,
        level_used,
        optimal,
    })
}

/// Evaluate both `a` values for every `|I| = level` index set. The running
/// XOR of neighborhood masks tracks the Z-support of `S_I` incrementally as
/// the combination odometer advances; level 1 is a plain loop.
fn scan_level(
    n: usize,
    level: usize,
    base_z: u128,
    xbar_z: u128,
    nbr: &[u128],
    best: &mut BestCandidate,
) {
    if level == 1 {
        for (i, &nbr_i) in nbr.iter().enumerate() {
            best.offer_pair(1u128 << i, nbr_i, base_z, xbar_z);
        }
        return;
    }
    if level > n {
        return;
    }

    // combination odometer over 0-based vertex indices, with prefix XORs
    let mut idx: Vec<usize> = (0..level).collect();
    let mut prefix_z: Vec<u128> = vec![0; level + 1];
    let mut prefix_mask: Vec<u128> = vec![0; level + 1];
    for k in 0..level {
        prefix_z[k + 1] = prefix_z[k] ^ nbr[idx[k]];
        prefix_mask[k + 1] = prefix_mask[k] | 1u128 << idx[k];
    }
    loop {
        best.offer_pair(prefix_mask[level], prefix_z[level], base_z, xbar_z);
        // advance the rightmost index that still has room
        let mut k = level;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if idx[k] < n - (level - k) {
                idx[k] += 1;
                for j in (k + 1)..level {
                    idx[j] = idx[j - 1] + 1;
                }
                for j in k..level {
                    prefix_z[j + 1] = prefix_z[j] ^ nbr[idx[j]];
                    prefix_mask[j + 1] = prefix_mask[j] | 1u128 << idx[j];
                }
                break;
            }
        }
    }
}

/// Exhaustive minimum-weight decode, the reference the structured search
/// is certified against.
///
/// Solves the binary program "minimize the Pauli weight of e subject to
/// H·e = s'" by direct search: the parity-check matrix and the candidate
/// error vectors e = (x | z) are laid out as dense 0/1 rows exactly as the
/// program states them, and candidates are enumerated shell by shell
/// (support sets in lexicographic order, then X/Y/Z letter assignments).
/// The first feasible candidate is returned; by construction it has
/// minimum weight.
pub fn exact_mld_decode(code: &GraphCode, syndrome: &Syndrome) -> Result<DecodeOutcome> {
    let n = code.n();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "exhaustive minimum-weight decode",
            limit: ENUMERATION_LIMIT,
            n,
        });
    }
    if syndrome.len() != code.num_generators() {
        return Err(Error::SyndromeLength {
            got: syndrome.len(),
            expected: code.num_generators(),
        });
    }

    // the problem instance in binary form
    let h: Vec<Vec<u8>> = code.check_matrix().to_dense();
    let target: Vec<u8> = syndrome
        .bits()
        .iter()
        .map(|&b| if b == -1 { 1 } else { 0 })
        .collect();
    let feasible = |e: &[u8]| {
        h.iter()
            .zip(&target)
            .all(|(row, &t)| row.iter().zip(e).map(|(&a, &b)| a & b).sum::<u8>() & 1 == t)
    };

    let letters = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
    for weight in 0..=n {
        if weight == 0 {
            let e = vec![0u8; 2 * n];
            if feasible(&e) {
                return Ok(DecodeOutcome {
                    correction: PauliOperator::identity(n)?,
                    weight: 0,
                    level_used: 0,
                    optimal: true,
                });
            }
            continue;
        }
        for support in (1..=n).combinations(weight) {
            for assignment in std::iter::repeat_n(letters.iter().copied(), weight)
                .multi_cartesian_product()
            {
                let mut e = vec![0u8; 2 * n];
                for (&v, &letter) in support.iter().zip(&assignment) {
                    match letter {
                        PauliLetter::X => e[v - 1] = 1,
                        PauliLetter::Y => {
                            e[v - 1] = 1;
                            e[n + v - 1] = 1;
                        }
                        PauliLetter::Z => e[n + v - 1] = 1,
                        PauliLetter::I => unreachable!(),
                    }
                }
                if feasible(&e) {
                    return Ok(DecodeOutcome {
                        correction: PauliOperator::from_assignment(n, &support, &assignment)?,
                        weight,
                        level_used: weight,
                        optimal: true,
                    });
                }
            }
        }
    }
    Err(Error::invalid(
        "no Pauli operator reproduces the syndrome; code generators are degenerate",
    ))
}

/// Graph-state correction rule: `Z_{V⁻}` with `V⁻` the vertices whose
/// stabilizer measurement returned −1. `s_full` lists all n outcomes.
pub fn graph_state_phase_correction(graph: &Graph, s_full: &[i8]) -> Result<PauliOperator> {
    let n = graph.n();
    if s_full.len() != n {
        return Err(Error::SyndromeLength {
            got: s_full.len(),
            expected: n,
        });
    }
    let mut z_mask = 0u128;
    for (i, &s) in s_full.iter().enumerate() {
        match s {
            1 => {}
            -1 => z_mask |= 1u128 << i,
            _ => return Err(Error::invalid("syndrome entries must be +1 or -1")),
        }
    }
    Ok(PauliOperator::from_masks(n as u32, 0, z_mask, 0))
}

/// Logical action of the residual `correction · error`.
pub fn residual_class(
    code: &GraphCode,
    error: &PauliOperator,
    correction: &PauliOperator,
) -> Result<LogicalClass> {
    code.logical_class(&correction.multiply(error)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code_5() -> GraphCode {
        GraphCode::build(Graph::cycle(5).unwrap(), &[1, 2, 3, 4, 5]).unwrap()
    }

    fn op(n: usize, x: &[usize], z: &[usize]) -> PauliOperator {
        PauliOperator::from_supports(n, x, z).unwrap()
    }

    #[test]
    fn trivial_syndrome_decodes_to_identity_at_level_zero() {
        let code = code_5();
        let out =
            hierarchical_decode(&code, &Syndrome::all_plus(4), LevelCap::Unlimited).unwrap();
        assert!(out.correction.is_identity());
        assert_eq!(out.weight, 0);
        assert_eq!(out.level_used, 0);
        assert!(out.optimal);
    }

    #[test]
    fn z1_syndrome_prefers_the_weight_one_candidate() {
        let code = code_5();
        let syndrome = code.syndrome_of(&op(5, &[], &[1])).unwrap();
        assert_eq!(syndrome.minus_mask(), 0b0001);
        // level-0 candidates are Z_1 (weight 1) and X̄·Z_1 = Z_2 Z_3 Z_4 Z_5 (weight 4)
        let out = hierarchical_decode(&code, &syndrome, LevelCap::Unlimited).unwrap();
        assert_eq!(out.correction, op(5, &[], &[1]));
        assert_eq!(out.weight, 1);
        assert_eq!(out.level_used, 0);
        assert!(out.optimal);
    }

    #[test]
    fn x1_syndrome_recovers_a_weight_one_correction() {
        let code = code_5();
        let error = op(5, &[1], &[]);
        let syndrome = code.syndrome_of(&error).unwrap();
        let out = hierarchical_decode(&code, &syndrome, LevelCap::Unlimited).unwrap();
        assert_eq!(out.weight, 1);
        assert_eq!(
            residual_class(&code, &error, &out.correction).unwrap(),
            LogicalClass::I
        );
        let exact = exact_mld_decode(&code, &syndrome).unwrap();
        assert_eq!(exact.weight, out.weight);
    }

    #[test]
    fn decode_outcome_reproduces_its_syndrome() {
        let code = code_5();
        for mask in 0..16u128 {
            let syndrome = Syndrome::from_minus_mask(mask, 4);
            let out = hierarchical_decode(&code, &syndrome, LevelCap::Unlimited).unwrap();
            assert_eq!(code.syndrome_of(&out.correction).unwrap(), syndrome);
            assert_eq!(out.weight, out.correction.weight());
        }
    }

    #[test]
    fn capped_decode_reports_non_optimal_when_cut_short() {
        let code = code_5();
        let error = op(5, &[1], &[]);
        let syndrome = code.syndrome_of(&error).unwrap();
        // the weight-1 correction for an X error needs level 1
        let capped = hierarchical_decode(&code, &syndrome, LevelCap::Max(0)).unwrap();
        assert!(!capped.optimal);
        assert_eq!(capped.level_used, 0);
        assert!(capped.weight > 1);
        // a cap that still allows the early exit stays optimal
        let full = hierarchical_decode(&code, &syndrome, LevelCap::Max(4)).unwrap();
        assert!(full.optimal);
        assert_eq!(full.weight, 1);
    }

    #[test]
    fn syndrome_length_is_checked() {
        let code = code_5();
        let bad = Syndrome::all_plus(3);
        assert!(matches!(
            hierarchical_decode(&code, &bad, LevelCap::Unlimited),
            Err(Error::SyndromeLength { .. })
        ));
        assert!(matches!(
            exact_mld_decode(&code, &bad),
            Err(Error::SyndromeLength { .. })
        ));
    }

    #[test]
    fn exact_decode_of_trivial_syndrome_is_identity() {
        let code = code_5();
        let out = exact_mld_decode(&code, &Syndrome::all_plus(4)).unwrap();
        assert!(out.correction.is_identity());
        assert!(out.optimal);
    }

    #[test]
    fn exact_decode_returns_each_weight_one_error_itself() {
        // d = 3: weight-1 cosets have a unique minimum-weight element.
        let code = code_5();
        for v in 1..=5 {
            for letter in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
                let e = PauliOperator::single(5, v, letter).unwrap();
                let out = exact_mld_decode(&code, &code.syndrome_of(&e).unwrap()).unwrap();
                assert!(out.correction.equal_up_to_phase(&e).unwrap(), "{e}");
                assert_eq!(out.weight, 1);
            }
        }
    }

    #[test]
    fn hierarchical_matches_exact_on_all_five_cycle_syndromes() {
        let code = code_5();
        for mask in 0..16u128 {
            let syndrome = Syndrome::from_minus_mask(mask, 4);
            let hier = hierarchical_decode(&code, &syndrome, LevelCap::Unlimited).unwrap();
            let exact = exact_mld_decode(&code, &syndrome).unwrap();
            assert_eq!(hier.weight, exact.weight, "syndrome {syndrome}");
        }
    }

    #[test]
    fn phase_correction_examples() {
        let g = Graph::cycle(5).unwrap();
        assert!(graph_state_phase_correction(&g, &[1, 1, 1, 1, 1])
            .unwrap()
            .is_identity());

        // X_1 flips exactly the stabilizers of its neighbors {2, 5}
        let correction = graph_state_phase_correction(&g, &[1, -1, 1, 1, -1]).unwrap();
        assert_eq!(correction, op(5, &[], &[2, 5]));
        let residual = correction.multiply(&op(5, &[1], &[])).unwrap();
        let s1 = g.stabilizer(1).unwrap();
        assert!(residual.equal_up_to_phase(&s1).unwrap());
        assert!(g.stabilizer_group_member(&residual).unwrap());

        // Z_3 flips only vertex 3; the correction cancels it exactly
        let correction = graph_state_phase_correction(&g, &[1, 1, -1, 1, 1]).unwrap();
        let residual = correction.multiply(&op(5, &[], &[3])).unwrap();
        assert!(residual.is_identity());
    }

    #[test]
    fn phase_correction_validates_input() {
        let g = Graph::cycle(5).unwrap();
        assert!(graph_state_phase_correction(&g, &[1, 1, 1]).is_err());
        assert!(graph_state_phase_correction(&g, &[1, 1, 2, 1, 1]).is_err());
    }

    #[test]
    fn residual_class_examples() {
        let code = code_5();
        let e = op(5, &[], &[2, 4]);
        assert_eq!(
            residual_class(&code, &e, &e).unwrap(),
            LogicalClass::I,
            "an error corrected by itself leaves class I"
        );
        // X̄ commutes with every generator: trivial syndrome, logical X left behind
        let xbar = *code.logical_x();
        assert!(code.syndrome_of(&xbar).unwrap().is_trivial());
        let id = PauliOperator::identity(5).unwrap();
        assert_eq!(residual_class(&code, &xbar, &id).unwrap(), LogicalClass::X);
    }

    #[test]
    fn level_cap_parses_and_displays() {
        assert_eq!("inf".parse::<LevelCap>().unwrap(), LevelCap::Unlimited);
        assert_eq!("3".parse::<LevelCap>().unwrap(), LevelCap::Max(3));
        assert!("x".parse::<LevelCap>().is_err());
        assert_eq!(LevelCap::Unlimited.to_string(), "inf");
        assert_eq!(LevelCap::Max(2).to_string(), "2");
    }

    #[test]
    fn seq_lex_order_on_index_sets() {
        let m = |bits: &[usize]| bits.iter().fold(0u128, |acc, &b| acc | 1 << b);
        assert!(seq_lex_less(m(&[1, 3]), m(&[2])));
        assert!(seq_lex_less(m(&[1]), m(&[1, 3])));
        assert!(seq_lex_less(m(&[1, 2]), m(&[1, 3])));
        assert!(!seq_lex_less(m(&[2]), m(&[1, 3])));
        assert!(!seq_lex_less(m(&[1]), m(&[1])));
    }
}
