//! Dense GF(2) linear algebra on two-limb (up to 256-bit) rows.
//!
//! Rows store bit j in limb j/128. Wide enough for stacked symplectic
//! vectors (x|z) of operators on up to 128 qubits.

/// A single GF(2) row: 256 bits across two limbs.
pub type Row = [u128; 2];

pub const ROW_BITS: usize = 256;

#[inline]
pub fn get_bit(row: &Row, j: usize) -> bool {
    (row[j / 128] >> (j % 128)) & 1 == 1
}

#[inline]
pub fn set_bit(row: &mut Row, j: usize) {
    row[j / 128] |= 1u128 << (j % 128);
}

#[inline]
fn xor_into(dst: &mut Row, src: &Row) {
    dst[0] ^= src[0];
    dst[1] ^= src[1];
}

#[inline]
fn is_zero(row: &Row) -> bool {
    row[0] == 0 && row[1] == 0
}

/// Parity of the bitwise AND of two rows (GF(2) dot product).
#[inline]
pub fn dot(a: &Row, b: &Row) -> bool {
    ((a[0] & b[0]).count_ones() + (a[1] & b[1]).count_ones()) % 2 == 1
}

fn lowest_set(row: &Row) -> Option<usize> {
    if row[0] != 0 {
        Some(row[0].trailing_zeros() as usize)
    } else if row[1] != 0 {
        Some(128 + row[1].trailing_zeros() as usize)
    } else {
        None
    }
}

/// Rank of the row span.
pub fn rank(rows: &[Row]) -> usize {
    let mut basis: Vec<Row> = Vec::with_capacity(rows.len());
    for &row in rows {
        let mut r = row;
        for b in &basis {
            let pivot = lowest_set(b).unwrap();
            if get_bit(&r, pivot) {
                xor_into(&mut r, b);
            }
        }
        if !is_zero(&r) {
            basis.push(r);
        }
    }
    basis.len()
}

/// True iff `target` lies in the row span of `rows`.
pub fn solvable(rows: &[Row], target: Row) -> bool {
    let mut basis: Vec<Row> = Vec::with_capacity(rows.len());
    for &row in rows {
        let mut r = row;
        for b in &basis {
            let pivot = lowest_set(b).unwrap();
            if get_bit(&r, pivot) {
                xor_into(&mut r, b);
            }
        }
        if !is_zero(&r) {
            basis.push(r);
        }
    }
    let mut t = target;
    for b in &basis {
        let pivot = lowest_set(b).unwrap();
        if get_bit(&t, pivot) {
            xor_into(&mut t, b);
        }
    }
    is_zero(&t)
}

/// Basis of `{v : dot(row, v) = 0 for every row}` over the first `width` bits.
pub fn nullspace(rows: &[Row], width: usize) -> Vec<Row> {
    assert!(width <= ROW_BITS);
    // Reduced row echelon form.
    let mut reduced: Vec<Row> = Vec::new();
    for &row in rows {
        let mut r = row;
        for b in &reduced {
            let pivot = lowest_set(b).unwrap();
            if get_bit(&r, pivot) {
                xor_into(&mut r, b);
            }
        }
        if is_zero(&r) {
            continue;
        }
        let pivot = lowest_set(&r).unwrap();
        for b in reduced.iter_mut() {
            if get_bit(b, pivot) {
                let rc = r;
                xor_into(b, &rc);
            }
        }
        reduced.push(r);
    }
    let mut pivots: Vec<usize> = reduced.iter().map(|b| lowest_set(b).unwrap()).collect();
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..reduced.len()).collect();
        idx.sort_by_key(|&i| pivots[i]);
        idx
    };
    let reduced: Vec<Row> = order.iter().map(|&i| reduced[i]).collect();
    pivots.sort_unstable();

    let mut basis = Vec::new();
    for free in 0..width {
        if pivots.binary_search(&free).is_ok() {
            continue;
        }
        let mut v: Row = [0, 0];
        set_bit(&mut v, free);
        for (b, &pivot) in reduced.iter().zip(&pivots) {
            if get_bit(b, free) {
                set_bit(&mut v, pivot);
            }
        }
        basis.push(v);
    }
    basis
}
