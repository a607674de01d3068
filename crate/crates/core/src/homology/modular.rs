//! Smith-style elimination over the chain ring `Z/p^e`.
//!
//! Every nonzero element is `p^v * unit`, so choosing a pivot of least
//! valuation lets it divide everything left in its row and column.

use crate::error::{Error, Result};

/// Dense matrix over `Z/q`, `q = p^e < 2^32`.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub data: Vec<u64>,
}

/// Largest `rows * cols` accepted by the dense eliminations.
pub const MAX_DENSE_ENTRIES: usize = 6_000_000;

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64, e: u32) -> Result<Self> {
        if rows.saturating_mul(cols) > MAX_DENSE_ENTRIES {
            return Err(Error::CapExceeded(format!("{rows}x{cols} matrix over Z/{p}^{e}")));
        }
        let q = p.checked_pow(e).filter(|&q| q < (1 << 32)).ok_or_else(|| {
            Error::CapExceeded(format!("modulus {p}^{e} too large"))
        })?;
        Ok(ModMatrix { rows, cols, p, e, q, data: vec![0; rows * cols] })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.q;
    }

    /// Adds a signed integer to an entry.
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: i64) {
        let q = self.q as i64;
        let cur = self.data[i * self.cols + j] as i64;
        self.data[i * self.cols + j] = (cur + v).rem_euclid(q) as u64;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn identity(n: usize, p: u64, e: u32, q: u64) -> Self {
        let mut m = ModMatrix { rows: n, cols: n, p, e, q, data: vec![0; n * n] };
        for i in 0..n {
            m.data[i * n + i] = 1 % q;
        }
        m
    }

    /// row_i -= f * row_j, restricted to columns `from..`.
    pub(crate) fn sub_row(&mut self, i: usize, j: usize, f: u64, from: usize) {
        let q = self.q;
        let nf = (q - f % q) % q;
        let c = self.cols;
        let (a, b) = if i < j {
            let (lo, hi) = self.data.split_at_mut(j * c);
            (&mut lo[i * c..(i + 1) * c], &hi[..c])
        } else {
            let (lo, hi) = self.data.split_at_mut(i * c);
            (&mut hi[..c], &lo[j * c..(j + 1) * c])
        };
        for k in from..c {
            if b[k] != 0 {
                a[k] = (a[k] + nf * b[k]) % q;
            }
        }
    }

    /// col_i += f * col_j
    fn add_col(&mut self, i: usize, j: usize, f: u64) {
        let q = self.q;
        for r in 0..self.rows {
            let v = self.data[r * self.cols + j];
            if v != 0 {
                let x = &mut self.data[r * self.cols + i];
                *x = (*x + f * v) % q;
            }
        }
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for k in 0..self.cols {
                self.data.swap(i * self.cols + k, j * self.cols + k);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }
}

pub fn valuation(x: u64, p: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    let mut y = x;
    while y.is_multiple_of(p) {
        y /= p;
        v += 1;
    }
    v
}

pub fn inverse_mod(a: u64, m: u64) -> u64 {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (m as i128, (a % m) as i128);
    while nr != 0 {
        let k = r / nr;
        (t, nt) = (nt, t - k * nt);
        (r, nr) = (nr, r - k * nr);
    }
    assert_eq!(r, 1, "{a} is not invertible mod {m}");
    t.rem_euclid(m as i128) as u64
}

/// `left * m * right = diag(p^{valuations})` (up to units on the diagonal).
#[derive(Clone, Debug)]
pub struct ModSmith {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    /// One valuation per row of the input: pivot valuations in
    /// nondecreasing order, then `e` for rows without a pivot.
    pub row_valuations: Vec<u32>,
    /// One valuation per column, likewise.
    pub col_valuations: Vec<u32>,
    /// Unit part of each pivot, so the diagonal entry is `unit * p^v`.
    pub units: Vec<u64>,
    pub left: Option<ModMatrix>,
    pub left_inv: Option<ModMatrix>,
    pub right: Option<ModMatrix>,
    pub right_inv: Option<ModMatrix>,
}

impl ModSmith {
    pub fn pivots(&self) -> usize {
        self.row_valuations.iter().filter(|&&v| v < self.e).count()
    }
}

/// Eliminates `m` to diagonal form, optionally tracking row and column
/// transforms and their inverses.
pub fn mod_smith(mut m: ModMatrix, track_left: bool, track_right: bool) -> ModSmith {
    let (rows, cols, p, e, q) = (m.rows, m.cols, m.p, m.e, m.q);
    let mut l = track_left.then(|| ModMatrix::identity(rows, p, e, q));
    let mut li = track_left.then(|| ModMatrix::identity(rows, p, e, q));
    let mut r = track_right.then(|| ModMatrix::identity(cols, p, e, q));
    let mut ri = track_right.then(|| ModMatrix::identity(cols, p, e, q));
    let mut pivot_vals = Vec::new();
    let mut units = Vec::new();
    let n = rows.min(cols);
    for t in 0..n {
        // least-valuation pivot; stop scanning at a unit
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for j in t..cols {
            for i in t..rows {
                let x = m.get(i, j);
                if x != 0 {
                    let v = valuation(x, p, e);
                    if best.is_none_or(|b| v < b.2) {
                        best = Some((i, j, v));
                        if v == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else { break };
        m.swap_rows(t, pi);
        if let (Some(l), Some(li)) = (l.as_mut(), li.as_mut()) {
            l.swap_rows(t, pi);
            li.swap_cols(t, pi);
        }
        m.swap_cols(t, pj);
        if let (Some(r), Some(ri)) = (r.as_mut(), ri.as_mut()) {
            r.swap_cols(t, pj);
            ri.swap_rows(t, pj);
        }
        let pivot = m.get(t, t);
        let pv = p.pow(v);
        let unit_inv = inverse_mod(pivot / pv, q);
        for i in t + 1..rows {
            let x = m.get(i, t);
            if x == 0 {
                continue;
            }
            let f = (x / pv) % q * unit_inv % q;
            m.sub_row(i, t, f, t);
            if let (Some(l), Some(li)) = (l.as_mut(), li.as_mut()) {
                l.sub_row(i, t, f, 0);
                li.add_col(t, i, f);
            }
        }
        for j in t + 1..cols {
            let x = m.get(t, j);
            if x == 0 {
                continue;
            }
            let f = (x / pv) % q * unit_inv % q;
            // column t is zero below the pivot, so only (t, j) changes
            m.data[t * cols + j] = 0;
            if let (Some(r), Some(ri)) = (r.as_mut(), ri.as_mut()) {
                r.add_col(j, t, (q - f) % q);
                ri.sub_row(t, j, (q - f) % q, 0);
            }
        }
        pivot_vals.push(v);
        units.push(pivot / pv);
    }
    let mut row_valuations = pivot_vals.clone();
    row_valuations.resize(rows, e);
    let mut col_valuations = pivot_vals;
    col_valuations.resize(cols, e);
    ModSmith { p, e, q, row_valuations, col_valuations, units, left: l, left_inv: li, right: r, right_inv: ri }
}

/// Multiplies a row vector by a matrix mod `q`.
pub fn vec_mul(v: &[u64], m: &ModMatrix) -> Vec<u64> {
    let q = m.q;
    let mut out = vec![0u64; m.cols];
    for (i, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let row = m.row(i);
        for (o, &b) in out.iter_mut().zip(row) {
            if b != 0 {
                *o = (*o + a * b) % q;
            }
        }
    }
    out
}
