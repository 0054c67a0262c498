//! n-qubit Pauli operators in binary symplectic form with exact phase
//! tracking.
//!
//! An operator is stored as a pair of support masks together with a global
//! phase: the triple `(x, z, phase_exp)` denotes `i^phase_exp · Z_z · X_x`,
//! with every Z factor to the left of every X factor (the canonical
//! ordering). Products are reduced back to this form, absorbing signs into
//! `phase_exp` (a power of i, mod 4). Qubits are the vertices 1..=n of the
//! underlying graph; bit `v-1` of a mask corresponds to vertex `v`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest qubit count an operator can hold (one `u128` per support half).
pub const MAX_QUBITS: usize = 128;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    /// (x-bit, z-bit) of the letter in symplectic form.
    fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Y => (true, true),
            PauliLetter::Z => (false, true),
        }
    }
}

impl fmt::Display for PauliLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// An n-qubit Pauli operator `i^phase_exp · Z_z · X_x`.
///
/// Immutable value type; all algebra returns new operators. The Hermitian
/// letters I/X/Y/Z relate to the canonical form through `Y = i^3 · ZX`, so
/// an operator built from letters carries `phase_exp = 3·(#Y) mod 4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: u32,
    x: u128,
    z: u128,
    phase_exp: u8,
}

fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("operator needs at least one qubit"));
    }
    if n > MAX_QUBITS {
        return Err(Error::TooLarge {
            what: "PauliOperator",
            limit: MAX_QUBITS,
            n,
        });
    }
    Ok(())
}

fn mask_from_vertices(n: usize, vertices: &[usize]) -> Result<u128> {
    let mut mask = 0u128;
    for &v in vertices {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        mask |= 1u128 << (v - 1);
    }
    Ok(mask)
}

fn vertices_from_mask(mask: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        out.push(b + 1);
        m &= m - 1;
    }
    out
}

impl PauliOperator {
    /// Identity on `n` qubits.
    pub fn identity(n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        Ok(Self {
            n: n as u32,
            x: 0,
            z: 0,
            phase_exp: 0,
        })
    }

    /// `∏_{v∈z_set} Z_v · ∏_{v∈x_set} X_v` with phase 0 (canonical ordering).
    pub fn from_supports(n: usize, x_set: &[usize], z_set: &[usize]) -> Result<Self> {
        check_qubit_count(n)?;
        Ok(Self {
            n: n as u32,
            x: mask_from_vertices(n, x_set)?,
            z: mask_from_vertices(n, z_set)?,
            phase_exp: 0,
        })
    }

    /// The Hermitian letter `letter` acting on `vertex`.
    pub fn single(n: usize, vertex: usize, letter: PauliLetter) -> Result<Self> {
        Self::from_assignment(n, &[vertex], &[letter])
    }

    /// Tensor product of Hermitian letters, one per qubit.
    pub fn from_letters(letters: &[PauliLetter]) -> Result<Self> {
        let support: Vec<usize> = (1..=letters.len()).collect();
        Self::from_assignment(letters.len(), &support, letters)
    }

    /// Hermitian product placing `letters[k]` on `support[k]`.
    pub fn from_assignment(n: usize, support: &[usize], letters: &[PauliLetter]) -> Result<Self> {
        check_qubit_count(n)?;
        if support.len() != letters.len() {
            return Err(Error::invalid(format!(
                "support has {} vertices but {} letters were given",
                support.len(),
                letters.len()
            )));
        }
        let mut x = 0u128;
        let mut z = 0u128;
        let mut y_count = 0u32;
        for (&v, &letter) in support.iter().zip(letters) {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            let bit = 1u128 << (v - 1);
            if (x | z) & bit != 0 {
                return Err(Error::invalid(format!("vertex {v} assigned twice")));
            }
            let (bx, bz) = letter.bits();
            if bx {
                x |= bit;
            }
            if bz {
                z |= bit;
            }
            if bx && bz {
                y_count += 1;
            }
        }
        Ok(Self {
            n: n as u32,
            x,
            z,
            phase_exp: ((3 * (y_count & 3)) & 3) as u8,
        })
    }

    pub(crate) fn from_masks(n: u32, x: u128, z: u128, phase_exp: u8) -> Self {
        debug_assert!(n as usize <= MAX_QUBITS);
        debug_assert!(n as usize == MAX_QUBITS || (x | z) >> n == 0);
        Self {
            n,
            x,
            z,
            phase_exp: phase_exp & 3,
        }
    }

    /// Canonical-form operator equal to the Hermitian letter product with
    /// the given supports (phase chosen so Y positions carry no prefix).
    pub(crate) fn hermitian_from_masks(n: u32, x: u128, z: u128) -> Self {
        let y = (x & z).count_ones();
        Self::from_masks(n, x, z, ((3 * (y & 3)) & 3) as u8)
    }

    pub fn qubit_count(&self) -> usize {
        self.n as usize
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0 && self.phase_exp == 0
    }

    /// Global phase exponent: the operator equals `i^phase_exp · Z_z X_x`.
    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    /// X-support as a bit mask (bit `v-1` ↔ vertex `v`).
    pub fn x_mask(&self) -> u128 {
        self.x
    }

    /// Z-support as a bit mask (bit `v-1` ↔ vertex `v`).
    pub fn z_mask(&self) -> u128 {
        self.z
    }

    pub fn x_support(&self) -> Vec<usize> {
        vertices_from_mask(self.x)
    }

    pub fn z_support(&self) -> Vec<usize> {
        vertices_from_mask(self.z)
    }

    /// Vertices where the operator acts non-trivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        vertices_from_mask(self.x | self.z)
    }

    pub fn letter_at(&self, vertex: usize) -> Result<PauliLetter> {
        if vertex == 0 || vertex > self.n as usize {
            return Err(Error::VertexOutOfRange {
                vertex,
                n: self.n as usize,
            });
        }
        let bit = 1u128 << (vertex - 1);
        Ok(match (self.x & bit != 0, self.z & bit != 0) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        })
    }

    /// True iff the operator is Hermitian (equivalently squares to +I).
    pub fn is_hermitian(&self) -> bool {
        (self.phase_exp as u32 + (self.x & self.z).count_ones()) & 1 == 0
    }

    fn check_same_size(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch {
                left: self.n as usize,
                right: rhs.n as usize,
            });
        }
        Ok(())
    }

    /// Product `self · rhs`, reduced to canonical form.
    ///
    /// Supports XOR; commuting the left factor's X past the right factor's Z
    /// contributes `(-1)^{|x_l ∩ z_r|}` to the phase.
    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        self.check_same_size(rhs)?;
        let cross = (self.x & rhs.z).count_ones() as u8;
        Ok(Self {
            n: self.n,
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
            phase_exp: (self.phase_exp + rhs.phase_exp + 2 * (cross & 1)) & 3,
        })
    }

    /// True iff the symplectic form `x_P·z_Q + z_P·x_Q` vanishes mod 2.
    pub fn commutes(&self, rhs: &Self) -> Result<bool> {
        self.check_same_size(rhs)?;
        Ok(((self.x & rhs.z).count_ones() + (self.z & rhs.x).count_ones()) & 1 == 0)
    }

    /// Support equality, ignoring the global phase.
    pub fn equal_up_to_phase(&self, rhs: &Self) -> Result<bool> {
        self.check_same_size(rhs)?;
        Ok(self.x == rhs.x && self.z == rhs.z)
    }

    /// Multiply the global phase by `i^quarter_turns`.
    pub fn phase_shifted(mut self, quarter_turns: u8) -> Self {
        self.phase_exp = (self.phase_exp + quarter_turns) & 3;
        self
    }

    /// Phase prefix left over once the operator is written as a product of
    /// Hermitian letters: `self = i^rem · (letter tensor)`.
    fn letter_phase_rem(&self) -> u8 {
        let y = ((self.x & self.z).count_ones() & 3) as u8;
        (self.phase_exp + y) & 3
    }

    fn phase_prefix(rem: u8) -> &'static str {
        match rem & 3 {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        }
    }

    /// Compact per-qubit form, e.g. `"IXZZI"`; a lowercase phase prefix
    /// (`i`, `-`, `-i`) is emitted when the operator is not a plain letter
    /// tensor.
    pub fn to_letter_string(&self) -> String {
        let mut s = String::with_capacity(self.n as usize + 2);
        s.push_str(Self::phase_prefix(self.letter_phase_rem()));
        for v in 1..=self.n as usize {
            s.push(self.letter_at(v).unwrap().to_char());
        }
        s
    }

    /// Sparse factor form, e.g. `"X1 Z2 Z5"`; identity renders as `"I"`.
    pub fn to_sparse_string(&self) -> String {
        let prefix = Self::phase_prefix(self.letter_phase_rem());
        let mut parts = Vec::new();
        for v in self.support() {
            parts.push(format!("{}{}", self.letter_at(v).unwrap().to_char(), v));
        }
        if parts.is_empty() {
            format!("{prefix}I")
        } else {
            format!("{prefix}{}", parts.join(" "))
        }
    }

    /// Strip an optional lowercase phase prefix, returning (quarter turns, rest).
    fn split_phase_prefix(s: &str) -> (u8, &str) {
        if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else {
            (0, s)
        }
    }

    /// Parse the compact per-qubit form produced by [`to_letter_string`].
    ///
    /// [`to_letter_string`]: PauliOperator::to_letter_string
    pub fn parse_letters(text: &str) -> Result<Self> {
        let (phase, body) = Self::split_phase_prefix(text.trim());
        let mut letters = Vec::with_capacity(body.len());
        for c in body.chars() {
            let letter = PauliLetter::from_char(c)
                .ok_or_else(|| Error::invalid(format!("invalid Pauli letter '{c}'")))?;
            letters.push(letter);
        }
        if letters.is_empty() {
            return Err(Error::invalid("empty Pauli letter string"));
        }
        Ok(Self::from_letters(&letters)?.phase_shifted(phase))
    }

    /// Parse the sparse factor form produced by [`to_sparse_string`];
    /// `n` fixes the qubit count, which the sparse form does not carry.
    ///
    /// [`to_sparse_string`]: PauliOperator::to_sparse_string
    pub fn parse_sparse(n: usize, text: &str) -> Result<Self> {
        let (phase, body) = Self::split_phase_prefix(text.trim());
        let mut support = Vec::new();
        let mut letters = Vec::new();
        for token in body.split_whitespace() {
            if token == "I" {
                continue;
            }
            let mut chars = token.chars();
            let head = chars
                .next()
                .ok_or_else(|| Error::invalid("empty Pauli factor"))?;
            let letter = match PauliLetter::from_char(head) {
                Some(PauliLetter::I) | None => {
                    return Err(Error::invalid(format!("invalid Pauli factor '{token}'")))
                }
                Some(l) => l,
            };
            let vertex: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::invalid(format!("invalid vertex in factor '{token}'")))?;
            support.push(vertex);
            letters.push(letter);
        }
        Ok(Self::from_assignment(n, &support, &letters)?.phase_shifted(phase))
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sparse_string())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli[{}]({})", self.n, self.to_sparse_string())
    }
}
