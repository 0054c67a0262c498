//! Graph codes with one logical qubit.
//!
//! A code is carved out of a graph state's stabilizer group by promoting
//! `S_n` to the logical Z and choosing a Z-type logical X supported on
//! `Q ∪ {n}`. The n−1 code generators are `K_i = S_n^{I_Q(i)} S_i`: the
//! graph-state generators, with those anticommuting with the logical X
//! repaired by an extra `S_n` factor.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf2;
use crate::graph::Graph;
use crate::pauli::{PauliLetter, PauliOperator};

/// Largest qubit count for exhaustive enumeration (distance, exact MLD).
pub const ENUMERATION_LIMIT: usize = 16;

/// Measured stabilizer eigenvalues, one ±1 entry per code generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Syndrome {
    bits: Vec<i8>,
}

impl Syndrome {
    pub fn new(bits: Vec<i8>) -> Result<Self> {
        if bits.iter().any(|&b| b != 1 && b != -1) {
            return Err(Error::invalid("syndrome entries must be +1 or -1"));
        }
        Ok(Self { bits })
    }

    pub fn all_plus(len: usize) -> Self {
        Self { bits: vec![1; len] }
    }

    /// Build from a mask whose bit `i` marks `s_{i+1} = -1`.
    pub fn from_minus_mask(mask: u128, len: usize) -> Self {
        let bits = (0..len)
            .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        Self { bits }
    }

    /// Mask with bit `i` set iff `s_{i+1} = -1`.
    pub fn minus_mask(&self) -> u128 {
        let mut mask = 0u128;
        for (i, &b) in self.bits.iter().enumerate() {
            if b == -1 {
                mask |= 1u128 << i;
            }
        }
        mask
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[i8] {
        &self.bits
    }

    /// True iff every entry is +1.
    pub fn is_trivial(&self) -> bool {
        self.bits.iter().all(|&b| b == 1)
    }

    /// Parse `+-++` or the binary form `0100` (0 ↔ +1, 1 ↔ −1).
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty syndrome string"));
        }
        let bits: Result<Vec<i8>> = s
            .chars()
            .map(|c| match c {
                '+' | '0' => Ok(1),
                '-' | '1' => Ok(-1),
                _ => Err(Error::invalid(format!("invalid syndrome character '{c}'"))),
            })
            .collect();
        Ok(Self { bits: bits? })
    }

    /// Binary rendering with 1 marking a −1 outcome.
    pub fn to_binary_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b == -1 { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b == -1 { '-' } else { '+' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syndrome({self})")
    }
}

/// Action of a normalizer element on the encoded qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogicalClass {
    I,
    X,
    Y,
    Z,
    /// Anticommutes with some code generator: not in the normalizer.
    NotInNormalizer,
}

impl fmt::Display for LogicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LogicalClass::I => "I",
            LogicalClass::X => "X",
            LogicalClass::Y => "Y",
            LogicalClass::Z => "Z",
            LogicalClass::NotInNormalizer => "not-in-normalizer",
        };
        write!(f, "{s}")
    }
}

/// Binary parity-check matrix of the code: row i is (z(K_i) | x(K_i)),
/// paired against error vectors (x_e | z_e) so that H·e reproduces the
/// binary syndrome.
#[derive(Clone, Debug)]
pub struct CheckMatrix {
    n: usize,
    rows: Vec<gf2::Row>,
}

impl CheckMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        2 * self.n
    }

    pub fn rows(&self) -> &[gf2::Row] {
        &self.rows
    }

    pub fn bit(&self, row: usize, col: usize) -> bool {
        gf2::get_bit(&self.rows[row], col)
    }

    /// GF(2) rank of the matrix.
    pub fn rank(&self) -> usize {
        gf2::rank(&self.rows)
    }

    /// Symplectic vector (x_e | z_e) of an operator, column layout matching
    /// [`CheckMatrix::rows`].
    pub fn error_vector(&self, p: &PauliOperator) -> Result<gf2::Row> {
        if p.qubit_count() != self.n {
            return Err(Error::SizeMismatch {
                left: p.qubit_count(),
                right: self.n,
            });
        }
        let mut row: gf2::Row = [0, 0];
        for v in p.x_support() {
            gf2::set_bit(&mut row, v - 1);
        }
        for v in p.z_support() {
            gf2::set_bit(&mut row, self.n + v - 1);
        }
        Ok(row)
    }

    /// H·e over GF(2); bit i of the result is the binary syndrome bit of
    /// generator K_{i+1} (1 ↔ −1 outcome).
    pub fn binary_syndrome(&self, error_vector: &gf2::Row) -> u128 {
        let mut out = 0u128;
        for (i, row) in self.rows.iter().enumerate() {
            if gf2::dot(row, error_vector) {
                out |= 1u128 << i;
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.n_rows())
            .map(|i| (0..self.n_cols()).map(|j| self.bit(i, j) as u8).collect())
            .collect()
    }
}

/// Parsed code-definition document: a graph reference (file path or
/// `cycle:<n>` shorthand) and the Z-support of the logical X.
///
/// ```text
/// # five-qubit cycle code
/// graph cycle:5
/// Lx 1 2 3 4 5
/// ```
///
/// Resolving a path-valued graph reference is the caller's job; this type
/// only parses the document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeDefinition {
    pub graph_ref: String,
    pub logical_x: Vec<usize>,
}

impl CodeDefinition {
    pub fn parse(text: &str) -> Result<Self> {
        let mut graph_ref = None;
        let mut logical_x = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            match fields.next() {
                Some("graph") => {
                    if graph_ref.is_some() {
                        return Err(Error::parse(line_no, "duplicate 'graph' line"));
                    }
                    let reference = fields
                        .next()
                        .ok_or_else(|| Error::parse(line_no, "expected 'graph <ref>'"))?;
                    if fields.next().is_some() {
                        return Err(Error::parse(line_no, "trailing tokens after 'graph <ref>'"));
                    }
                    graph_ref = Some(reference.to_string());
                }
                Some("Lx") => {
                    if logical_x.is_some() {
                        return Err(Error::parse(line_no, "duplicate 'Lx' line"));
                    }
                    let vertices: std::result::Result<Vec<usize>, _> =
                        fields.map(|t| t.parse::<usize>()).collect();
                    match vertices {
                        Ok(v) if !v.is_empty() => logical_x = Some(v),
                        _ => {
                            return Err(Error::parse(
                                line_no,
                                "expected 'Lx <v1> <v2> ...' with vertex numbers",
                            ))
                        }
                    }
                }
                Some(token) => {
                    return Err(Error::parse(line_no, format!("unknown directive '{token}'")));
                }
                None => unreachable!(),
            }
        }
        Ok(CodeDefinition {
            graph_ref: graph_ref
                .ok_or_else(|| Error::parse(0, "missing 'graph <ref>' line"))?,
            logical_x: logical_x.ok_or_else(|| Error::parse(0, "missing 'Lx ...' line"))?,
        })
    }
}

/// An ⟦n, 1, d⟧ graph code.
#[derive(Debug)]
pub struct GraphCode {
    graph: Graph,
    q_mask: u128,
    logical_x: PauliOperator,
    logical_z: PauliOperator,
    generators: Vec<PauliOperator>,
    // flattened (x, z) masks of the generators, for syndrome evaluation
    gen_x: Vec<u128>,
    gen_z: Vec<u128>,
    check: OnceLock<CheckMatrix>,
    distance: OnceLock<usize>,
}

impl GraphCode {
    /// Build the code from `graph` and the Z-support of the logical X.
    ///
    /// The support must contain vertex n so that `Z̄ = S_n` anticommutes
    /// with `X̄ = Z_{support}`. Any subset Q ⊆ {1..n−1} is accepted; the
    /// construction only uses membership.
    pub fn build(graph: Graph, logical_x_support: &[usize]) -> Result<Self> {
        let n = graph.n();
        if n < 2 {
            return Err(Error::invalid("graph code needs at least 2 vertices"));
        }
        let logical_x = PauliOperator::from_supports(n, &[], logical_x_support)?;
        let lx_mask = logical_x.z_mask();
        if lx_mask >> (n - 1) & 1 == 0 {
            return Err(Error::invalid(format!(
                "logical X support must contain vertex {n} (the logical-Z generator's vertex)"
            )));
        }
        let q_mask = lx_mask & !(1u128 << (n - 1));
        let stabs = graph.stabilizers();
        let logical_z = stabs[n - 1];
        let mut generators = Vec::with_capacity(n - 1);
        for i in 1..n {
            let s_i = stabs[i - 1];
            let k_i = if q_mask >> (i - 1) & 1 == 1 {
                logical_z.multiply(&s_i)?
            } else {
                s_i
            };
            generators.push(k_i);
        }
        let gen_x = generators.iter().map(|g| g.x_mask()).collect();
        let gen_z = generators.iter().map(|g| g.z_mask()).collect();
        Ok(Self {
            graph,
            q_mask,
            logical_x,
            logical_z,
            generators,
            gen_x,
            gen_z,
            check: OnceLock::new(),
            distance: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn logical_x(&self) -> &PauliOperator {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliOperator {
        &self.logical_z
    }

    /// The set Q = support(X̄) \ {n}, ascending.
    pub fn q_set(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut m = self.q_mask;
        while m != 0 {
            out.push(m.trailing_zeros() as usize + 1);
            m &= m - 1;
        }
        out
    }

    /// Syndrome of a Pauli error: `s_i = +1` iff `K_i` commutes with it.
    pub fn syndrome_of(&self, error: &PauliOperator) -> Result<Syndrome> {
        if error.qubit_count() != self.n() {
            return Err(Error::SizeMismatch {
                left: error.qubit_count(),
                right: self.n(),
            });
        }
        let mask = self.syndrome_minus_mask(error.x_mask(), error.z_mask());
        Ok(Syndrome::from_minus_mask(mask, self.num_generators()))
    }

    /// Minus-mask of the syndrome of the operator with supports (x, z).
    #[inline]
    pub(crate) fn syndrome_minus_mask(&self, x: u128, z: u128) -> u128 {
        let mut mask = 0u128;
        for i in 0..self.gen_x.len() {
            let anti = ((self.gen_x[i] & z).count_ones() + (self.gen_z[i] & x).count_ones()) & 1;
            mask |= (anti as u128) << i;
        }
        mask
    }

    /// Anticommutation bits of (x, z) with the logical X and logical Z.
    #[inline]
    pub(crate) fn anti_logical_bits(&self, x: u128, z: u128) -> (bool, bool) {
        let lx = &self.logical_x;
        let lz = &self.logical_z;
        let anti_x = ((lx.x_mask() & z).count_ones() + (lx.z_mask() & x).count_ones()) & 1 == 1;
        let anti_z = ((lz.x_mask() & z).count_ones() + (lz.z_mask() & x).count_ones()) & 1 == 1;
        (anti_x, anti_z)
    }

    /// Syndrome of the error `Z_{z_set} X_{x_set}` computed through the
    /// vertex statistic `t(i) = I_{z_set}(i) + |x_set ∩ N_i| (mod 2)`:
    /// `s_v = (−1)^{t(v) + I_Q(v)·t(n)}`. Agrees with [`syndrome_of`] on
    /// the same error.
    ///
    /// [`syndrome_of`]: GraphCode::syndrome_of
    pub fn syndrome_via_t(&self, z_set: &[usize], x_set: &[usize]) -> Result<Syndrome> {
        let n = self.n();
        let zp = PauliOperator::from_supports(n, &[], z_set)?;
        let xp = PauliOperator::from_supports(n, x_set, &[])?;
        let vz = zp.z_mask();
        let vx = xp.x_mask();
        let t = |i: usize| -> u32 {
            let in_vz = (vz >> (i - 1) & 1) as u32;
            let overlap = (vx & self.graph.neighborhood_mask(i).unwrap()).count_ones();
            (in_vz + overlap) & 1
        };
        let t_n = t(n);
        let mut mask = 0u128;
        for v in 1..n {
            let in_q = (self.q_mask >> (v - 1) & 1) as u32;
            if (t(v) + in_q * t_n) & 1 == 1 {
                mask |= 1u128 << (v - 1);
            }
        }
        Ok(Syndrome::from_minus_mask(mask, n - 1))
    }

    /// The cached binary parity-check matrix.
    pub fn check_matrix(&self) -> &CheckMatrix {
        self.check.get_or_init(|| {
            let n = self.n();
            let rows = self
                .generators
                .iter()
                .map(|k| {
                    let mut row: gf2::Row = [0, 0];
                    for v in k.z_support() {
                        gf2::set_bit(&mut row, v - 1);
                    }
                    for v in k.x_support() {
                        gf2::set_bit(&mut row, n + v - 1);
                    }
                    row
                })
                .collect();
            CheckMatrix { n, rows }
        })
    }

    /// Classify a Pauli by its action on the encoded qubit.
    pub fn logical_class(&self, p: &PauliOperator) -> Result<LogicalClass> {
        if p.qubit_count() != self.n() {
            return Err(Error::SizeMismatch {
                left: p.qubit_count(),
                right: self.n(),
            });
        }
        if self.syndrome_minus_mask(p.x_mask(), p.z_mask()) != 0 {
            return Ok(LogicalClass::NotInNormalizer);
        }
        let (anti_x, anti_z) = self.anti_logical_bits(p.x_mask(), p.z_mask());
        Ok(match (anti_x, anti_z) {
            (false, false) => LogicalClass::I,
            (true, false) => LogicalClass::Z,
            (false, true) => LogicalClass::X,
            (true, true) => LogicalClass::Y,
        })
    }

    /// Membership of `p` in ⟨K_1..K_{n−1}⟩ up to phase, by GF(2) solve.
    pub fn is_stabilizer_element(&self, p: &PauliOperator) -> Result<bool> {
        if p.qubit_count() != self.n() {
            return Err(Error::SizeMismatch {
                left: p.qubit_count(),
                right: self.n(),
            });
        }
        let rows: Vec<gf2::Row> = self
            .generators
            .iter()
            .map(|k| [k.x_mask(), k.z_mask()])
            .collect();
        Ok(gf2::solvable(&rows, [p.x_mask(), p.z_mask()]))
    }

    /// Code distance: minimum weight of a normalizer element with a
    /// non-identity logical action, by enumeration in increasing weight.
    pub fn distance(&self) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        let n = self.n();
        if n > ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                what: "brute-force distance",
                limit: ENUMERATION_LIMIT,
                n,
            });
        }
        let d = self.compute_distance();
        let _ = self.distance.set(d);
        Ok(d)
    }

    fn compute_distance(&self) -> usize {
        let n = self.n();
        for w in 1..=n {
            let mut found = false;
            for_each_pauli_of_weight(n, w, &mut |x, z| {
                if self.syndrome_minus_mask(x, z) == 0 {
                    let (ax, az) = self.anti_logical_bits(x, z);
                    if ax || az {
                        found = true;
                        return true;
                    }
                }
                false
            });
            if found {
                return w;
            }
        }
        // unreachable: the logical operators themselves are candidates
        n
    }
}

/// Visit the support masks of every weight-`w` Pauli on `n` qubits, in
/// lexicographic support order with letters X < Y < Z per vertex. Stops
/// early when the callback returns true.
pub(crate) fn for_each_pauli_of_weight(
    n: usize,
    w: usize,
    f: &mut impl FnMut(u128, u128) -> bool,
) -> bool {
    if w == 0 {
        return f(0, 0);
    }
    let mut support: Vec<usize> = (0..w).collect();
    let mut letters: Vec<PauliLetter> = vec![PauliLetter::X; w];
    loop {
        // all 3^w letter assignments on this support
        'letters: loop {
            let mut x = 0u128;
            let mut z = 0u128;
            for (&pos, &letter) in support.iter().zip(&letters) {
                match letter {
                    PauliLetter::X => x |= 1u128 << pos,
                    PauliLetter::Y => {
                        x |= 1u128 << pos;
                        z |= 1u128 << pos;
                    }
                    PauliLetter::Z => z |= 1u128 << pos,
                    PauliLetter::I => unreachable!(),
                }
            }
            if f(x, z) {
                return true;
            }
            // advance letters odometer (X -> Y -> Z)
            for k in (0..w).rev() {
                letters[k] = match letters[k] {
                    PauliLetter::X => PauliLetter::Y,
                    PauliLetter::Y => PauliLetter::Z,
                    PauliLetter::Z => {
                        letters[k] = PauliLetter::X;
                        continue;
                    }
                    PauliLetter::I => unreachable!(),
                };
                continue 'letters;
            }
            break;
        }
        // advance support combination
        let mut k = w;
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            if support[k] < n - (w - k) {
                support[k] += 1;
                for j in (k + 1)..w {
                    support[j] = support[j - 1] + 1;
                }
                break;
            }
        }
    }
}
