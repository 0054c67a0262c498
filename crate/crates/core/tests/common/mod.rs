//! Shared fixtures and an independent dense-matrix oracle for integration
//! tests.

#![allow(dead_code)]

use graphqec::noise::Complex64;
use graphqec::{Graph, GraphCode, PauliOperator};

/// The ⟦5,1,3⟧ cycle code with X̄ = Z over all vertices.
pub fn code_5() -> GraphCode {
    GraphCode::build(Graph::cycle(5).unwrap(), &[1, 2, 3, 4, 5]).unwrap()
}

/// The ⟦9,1,3⟧ cycle code with X̄ = Z over all vertices.
pub fn code_9() -> GraphCode {
    let support: Vec<usize> = (1..=9).collect();
    GraphCode::build(Graph::cycle(9).unwrap(), &support).unwrap()
}

/// The ⟦11,1,5⟧ cycle code with X̄ = Z over all vertices.
pub fn code_11_d5() -> GraphCode {
    let support: Vec<usize> = (1..=11).collect();
    GraphCode::build(Graph::cycle(11).unwrap(), &support).unwrap()
}

/// The ⟦11,1,3⟧ cycle code with X̄ = Z_3 Z_4 ⋯ Z_11.
pub fn code_11_d3() -> GraphCode {
    let support: Vec<usize> = (3..=11).collect();
    GraphCode::build(Graph::cycle(11).unwrap(), &support).unwrap()
}

/// All benchmark codes with display labels and expected distances.
pub fn all_codes() -> Vec<(GraphCode, &'static str, usize)> {
    vec![
        (code_5(), "[[5,1,3]]", 3),
        (code_9(), "[[9,1,3]]", 3),
        (code_11_d5(), "[[11,1,5]]", 5),
        (code_11_d3(), "[[11,1,3]]", 3),
    ]
}

pub type Mat = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// 2×2 matrix of the canonical per-qubit factor selected by (z-bit, x-bit).
fn factor_matrix(z: bool, x: bool) -> Mat {
    match (z, x) {
        (false, false) => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]],
        (false, true) => vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]],
        (true, false) => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]],
        // ZX = [[0,1],[-1,0]]
        (true, true) => vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(-1.0, 0.0), c(0.0, 0.0)]],
    }
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut out = vec![vec![c(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca, cb) = (a.len(), a[0].len(), b[0].len());
    let mut out = vec![vec![c(0.0, 0.0); cb]; ra];
    for i in 0..ra {
        for k in 0..ca {
            let aik = a[i][k];
            for j in 0..cb {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// Dense 2^n × 2^n matrix of a Pauli operator, built directly from its
/// definition (global phase × Kronecker product of per-qubit factors,
/// vertex 1 leftmost). Independent of the symplectic product rule.
pub fn op_matrix(p: &PauliOperator) -> Mat {
    let n = p.qubit_count();
    let phase = match p.phase_exp() & 3 {
        0 => c(1.0, 0.0),
        1 => c(0.0, 1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, -1.0),
    };
    let mut m = vec![vec![phase]];
    for v in 1..=n {
        let z = p.z_mask() >> (v - 1) & 1 == 1;
        let x = p.x_mask() >> (v - 1) & 1 == 1;
        m = kron(&m, &factor_matrix(z, x));
    }
    m
}

pub fn mats_close(a: &Mat, b: &Mat, tol: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| (x - y).norm() < tol))
}

/// Matrix–vector product for statevector cross-checks.
pub fn matvec(a: &Mat, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
        .collect()
}
