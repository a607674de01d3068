//! Smith normal form over the integers with exact transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            for (j, &v) in r.iter().enumerate() {
                m.entries[i * cols + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &a[n * n - 1]
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.entries.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self.entries[j * self.cols + c] * k;
            self.entries[i * self.cols + c] += v;
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self.entries[r * self.cols + j] * k;
            self.entries[r * self.cols + i] += v;
        }
    }

    /// row_i, row_j <- a row_i + b row_j, c row_i + d row_j
    fn combine_rows(&mut self, i: usize, j: usize, k: [&BigInt; 4]) {
        let [a, b, c, d] = k;
        for col in 0..self.cols {
            let x = &self.entries[i * self.cols + col];
            let y = &self.entries[j * self.cols + col];
            let ni = a * x + b * y;
            let nj = c * x + d * y;
            self.entries[i * self.cols + col] = ni;
            self.entries[j * self.cols + col] = nj;
        }
    }

    /// col_i, col_j <- a col_i + b col_j, c col_i + d col_j
    fn combine_cols(&mut self, i: usize, j: usize, k: [&BigInt; 4]) {
        let [a, b, c, d] = k;
        for r in 0..self.rows {
            let x = &self.entries[r * self.cols + i];
            let y = &self.entries[r * self.cols + j];
            let ni = a * x + b * y;
            let nj = c * x + d * y;
            self.entries[r * self.cols + i] = ni;
            self.entries[r * self.cols + j] = nj;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self.entries[i * self.cols + c];
            self.entries[i * self.cols + c] = v;
        }
    }
}

/// `left * m * right == diagonal`, with both transforms unimodular and
/// their inverses available.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntegerMatrix,
    pub left_inv: IntegerMatrix,
    pub right: IntegerMatrix,
    pub right_inv: IntegerMatrix,
    /// `min(rows, cols)` diagonal entries, each dividing the next; zeros last.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.left.rows, self.right.cols);
        for (i, v) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }

    /// Rank of the original matrix.
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }
}

struct Work {
    m: IntegerMatrix,
    l: IntegerMatrix,
    l_inv: IntegerMatrix,
    r: IntegerMatrix,
    r_inv: IntegerMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        self.l.swap_rows(i, j);
        self.l_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.m.swap_cols(i, j);
        self.r.swap_cols(i, j);
        self.r_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        self.m.add_row(i, j, k);
        self.l.add_row(i, j, k);
        self.l_inv.add_col(j, i, &-k);
    }

    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        self.m.add_col(i, j, k);
        self.r.add_col(i, j, k);
        self.r_inv.add_row(j, i, &-k);
    }

    /// Unimodular 2x2 row operation; its inverse acts on columns of `l_inv`.
    fn combine_rows(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        self.m.combine_rows(i, j, [a, b, c, d]);
        self.l.combine_rows(i, j, [a, b, c, d]);
        self.l_inv.combine_cols(i, j, [d, &-c, &-b, a]);
    }

    fn combine_cols(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        self.m.combine_cols(i, j, [a, b, c, d]);
        self.r.combine_cols(i, j, [a, b, c, d]);
        self.r_inv.combine_rows(i, j, [d, &-c, &-b, a]);
    }

    /// Clears entry (i, t) against the pivot (t, t).
    fn clear_below(&mut self, t: usize, i: usize) {
        let a = self.m.get(t, t).clone();
        let b = self.m.get(i, t).clone();
        if b.is_multiple_of(&a) {
            self.add_row(i, t, &-(b / a));
        } else {
            let e = a.extended_gcd(&b);
            self.combine_rows(t, i, &e.x, &e.y, &-(&b / &e.gcd), &(&a / &e.gcd));
        }
    }

    /// Clears entry (t, j) against the pivot (t, t).
    fn clear_right(&mut self, t: usize, j: usize) {
        let a = self.m.get(t, t).clone();
        let b = self.m.get(t, j).clone();
        if b.is_multiple_of(&a) {
            self.add_col(j, t, &-(b / a));
        } else {
            let e = a.extended_gcd(&b);
            self.combine_cols(t, j, &e.x, &e.y, &-(&b / &e.gcd), &(&a / &e.gcd));
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.l.negate_row(i);
        // the inverse of negating row i negates column i of left_inv
        for r in 0..self.l_inv.rows {
            let v = -self.l_inv.get(r, i);
            self.l_inv.set(r, i, v);
        }
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut w = Work {
        m: m.clone(),
        l: IntegerMatrix::identity(rows),
        l_inv: IntegerMatrix::identity(rows),
        r: IntegerMatrix::identity(cols),
        r_inv: IntegerMatrix::identity(cols),
    };
    let n = rows.min(cols);
    for t in 0..n {
        // smallest nonzero entry of the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !w.m.get(i, j).is_zero())
            .min_by(|&(a, b), &(c, d)| w.m.get(a, b).abs().cmp(&w.m.get(c, d).abs()));
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            for i in t + 1..rows {
                if !w.m.get(i, t).is_zero() {
                    w.clear_below(t, i);
                }
            }
            for j in t + 1..cols {
                if !w.m.get(t, j).is_zero() {
                    w.clear_right(t, j);
                }
            }
            if (t + 1..rows).any(|i| !w.m.get(i, t).is_zero()) {
                continue;
            }
            // enforce divisibility into the remaining block
            let p = w.m.get(t, t).clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !w.m.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.m.get(t, t).is_negative() {
            w.negate_row(t);
        }
    }
    let invariant_factors = (0..n).map(|i| w.m.get(i, i).clone()).collect();
    SmithForm { left: w.l, left_inv: w.l_inv, right: w.r, right_inv: w.r_inv, invariant_factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(rows: &[Vec<i64>], cols: usize) -> Vec<i64> {
        let s = smith_normal_form(&IntegerMatrix::from_rows(cols, rows));
        s.invariant_factors.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn diag_4_6() {
        assert_eq!(factors(&[vec![4, 0], vec![0, 6]], 2), vec![2, 12]);
    }

    #[test]
    fn s3_exponent_matrix() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 2], vec![3, 3]], 2), vec![1, 2]);
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(factors(&[vec![0]], 1), vec![0]);
    }

    #[test]
    fn determinant_small() {
        let m = IntegerMatrix::from_rows(3, &[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]);
        assert_eq!(m.determinant(), BigInt::from(2 + (1 - 3)));
    }

    fn check(rows: usize, cols: usize, data: &[i64]) {
        let raw: Vec<Vec<i64>> = data.chunks(cols).map(|c| c.to_vec()).collect();
        let m = IntegerMatrix::from_rows(cols, &raw);
        let s = smith_normal_form(&m);
        assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal_matrix());
        assert_eq!(s.left.mul(&s.left_inv), IntegerMatrix::identity(rows));
        assert_eq!(s.right.mul(&s.right_inv), IntegerMatrix::identity(cols));
        assert!(s.left.determinant().abs().is_one());
        assert!(s.right.determinant().abs().is_one());
        let d = &s.invariant_factors;
        for i in 0..d.len() {
            assert!(!d[i].is_negative());
            if i + 1 < d.len() {
                assert!(d[i + 1].is_multiple_of(&d[i]) || d[i].is_zero() && d[i + 1].is_zero());
                if d[i].is_zero() {
                    assert!(d[i + 1].is_zero());
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn round_trip((r, c, data) in (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), prop::collection::vec(-9i64..=9, r * c))
        })) {
            check(r, c, &data);
        }
    }
}
