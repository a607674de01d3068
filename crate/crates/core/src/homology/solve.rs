//! Solving `δf = c` for normalized cochains.
//!
//! The coboundary map is reduced once per prime-power piece of the
//! coefficients; the row operations are recorded so that any number of
//! right-hand sides can be tested or solved afterwards.

use super::cochain::{decode, Cochain};
use super::cohomology::{faces, is_coboundary_exhaustive, unknown_cells, unknown_index};
use super::modular::{inverse_mod, valuation, ModMatrix, MAX_DENSE_ENTRIES};
use crate::error::{Error, Result};
use crate::fp::abelian::factorize;
use crate::fp::GroupTable;

#[derive(Clone, Copy, Debug)]
enum RowOp {
    Swap(usize, usize),
    /// `row[i] -= f * row[t]`
    Sub(usize, usize, u64),
}

/// Row-reduced form of the transposed coboundary matrix over `Z/p^e`.
#[derive(Clone, Debug)]
struct Reduced {
    p: u64,
    q: u64,
    ops: Vec<RowOp>,
    vals: Vec<u32>,
    units: Vec<u64>,
    /// Column transform, `unknowns x unknowns`.
    right: Vec<Vec<u64>>,
    rows: usize,
}

impl Reduced {
    fn new(mut m: ModMatrix) -> Self {
        let (rows, cols, p, e, q) = (m.rows, m.cols, m.p, m.e, m.q);
        let mut right: Vec<Vec<u64>> = (0..cols).map(|i| (0..cols).map(|j| u64::from(i == j)).collect()).collect();
        let mut ops = Vec::new();
        let mut vals = Vec::new();
        let mut units = Vec::new();
        for t in 0..rows.min(cols) {
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
            if pi != t {
                m.swap_rows(t, pi);
                ops.push(RowOp::Swap(t, pi));
            }
            if pj != t {
                m.swap_cols(t, pj);
                for r in right.iter_mut() {
                    r.swap(t, pj);
                }
            }
            let pv = p.pow(v);
            let unit = m.get(t, t) / pv;
            let unit_inv = inverse_mod(unit, q);
            for i in t + 1..rows {
                let x = m.get(i, t);
                if x != 0 {
                    let f = (x / pv) % q * unit_inv % q;
                    m.sub_row(i, t, f, t);
                    ops.push(RowOp::Sub(i, t, f));
                }
            }
            for j in t + 1..cols {
                let x = m.get(t, j);
                if x != 0 {
                    let f = (x / pv) % q * unit_inv % q;
                    m.set(t, j, 0);
                    for r in right.iter_mut() {
                        r[j] = (r[j] + (q - f) * r[t] % q) % q;
                    }
                }
            }
            vals.push(v);
            units.push(unit);
        }
        Reduced { p, q, ops, vals, units, right, rows }
    }

    fn transform(&self, c: &mut [u64]) {
        let q = self.q;
        for op in &self.ops {
            match *op {
                RowOp::Swap(a, b) => c.swap(a, b),
                RowOp::Sub(i, t, f) => c[i] = (c[i] + (q - f) * c[t] % q) % q,
            }
        }
    }

    /// Coordinates of `c` in the cokernel of the coboundary map.
    fn quotient(&self, c: &[u64]) -> Vec<u64> {
        let mut c = c.to_vec();
        self.transform(&mut c);
        let mut out = Vec::new();
        for (t, &x) in c.iter().enumerate() {
            match self.vals.get(t) {
                Some(&v) if v > 0 => out.push(x % self.p.pow(v)),
                Some(_) => {}
                None => out.push(x),
            }
        }
        out
    }

    fn solve(&self, c: &[u64]) -> Option<Vec<u64>> {
        debug_assert_eq!(c.len(), self.rows);
        let q = self.q;
        let mut c = c.to_vec();
        self.transform(&mut c);
        if c[self.vals.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let n = self.right.len();
        let mut z = vec![0u64; n];
        for (t, (&v, &u)) in self.vals.iter().zip(&self.units).enumerate() {
            let pv = self.p.pow(v);
            if !c[t].is_multiple_of(pv) {
                return None;
            }
            z[t] = c[t] / pv * inverse_mod(u, q) % q;
        }
        Some((0..n).map(|i| (0..n).fold(0, |acc, j| (acc + self.right[i][j] * z[j]) % q)).collect())
    }
}

/// Decides and solves `δf = c` for normalized cochains of a fixed degree
/// and coefficient group on one table group.
#[derive(Clone, Debug)]
pub struct CoboundarySolver {
    degree: usize,
    n: usize,
    moduli: Vec<u64>,
    targets: Vec<usize>,
    unknowns: Vec<usize>,
    /// (component, modulus of the component, CRT lift, reduced system)
    pieces: Vec<(usize, u64, u64, Reduced)>,
}

impl CoboundarySolver {
    pub fn new(g: &GroupTable, degree: usize, moduli: &[u64]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("degree 0 cochains are never coboundaries".into()));
        }
        let n = g.order();
        let targets = unknown_cells(n, degree);
        let unknowns = unknown_cells(n, degree - 1);
        if targets.len().saturating_mul(unknowns.len()) > MAX_DENSE_ENTRIES {
            return Err(Error::CapExceeded(format!(
                "coboundary system {}x{} for a group of order {n}",
                targets.len(),
                unknowns.len()
            )));
        }
        let mut pieces = Vec::new();
        let mut tuple = vec![0usize; degree];
        let mut fs = Vec::new();
        for (comp, &m) in moduli.iter().enumerate() {
            for (p, e) in factorize(m) {
                let q = p.pow(e);
                let mut mat = ModMatrix::zeros(targets.len(), unknowns.len(), p, e)?;
                for (row, &idx) in targets.iter().enumerate() {
                    decode(idx, n, &mut tuple);
                    faces(g, &tuple, &mut fs);
                    for (sign, f) in &fs {
                        if let Some(i) = unknown_index(f, n) {
                            mat.add(row, i, *sign);
                        }
                    }
                }
                let cof = m / q;
                let lift = cof * inverse_mod(cof % q, q) % m;
                pieces.push((comp, m, lift, Reduced::new(mat)));
            }
        }
        Ok(CoboundarySolver { degree, n, moduli: moduli.to_vec(), targets, unknowns, pieces })
    }

    fn check(&self, c: &Cochain) {
        assert!(
            c.degree() == self.degree && c.group_order() == self.n && c.moduli() == self.moduli.as_slice(),
            "cochain does not match the solver"
        );
    }

    fn column(&self, c: &Cochain, comp: usize, q: u64) -> Vec<u64> {
        self.targets.iter().map(|&idx| c.get_index(idx)[comp] % q).collect()
    }

    /// A normalized `f` with `δf = c`, if one exists.
    pub fn solve(&self, c: &Cochain) -> Option<Cochain> {
        self.check(c);
        let mut f = Cochain::zero(self.degree - 1, self.n, &self.moduli);
        let mut values = vec![vec![0u64; self.moduli.len()]; self.unknowns.len()];
        for (comp, m, lift, red) in &self.pieces {
            let x = red.solve(&self.column(c, *comp, red.q))?;
            for (v, xi) in values.iter_mut().zip(x) {
                v[*comp] = ((v[*comp] as u128 + xi as u128 * *lift as u128) % *m as u128) as u64;
            }
        }
        for (&idx, v) in self.unknowns.iter().zip(&values) {
            f.set_index(idx, v);
        }
        Some(f)
    }

    pub fn is_coboundary(&self, c: &Cochain) -> bool {
        self.check(c);
        self.pieces.iter().all(|(comp, _, _, red)| red.quotient(&self.column(c, *comp, red.q)).iter().all(|&x| x == 0))
    }

    /// Coordinates of the class of `c` modulo coboundaries, concatenated over
    /// the prime-power pieces. Over a prime field this is a linear map whose
    /// kernel is exactly the coboundaries.
    pub fn quotient_coords(&self, c: &Cochain) -> Vec<u64> {
        self.check(c);
        self.pieces.iter().flat_map(|(comp, _, _, red)| red.quotient(&self.column(c, *comp, red.q))).collect()
    }
}

/// Whether a normalized cocycle is a coboundary: exhaustive search over
/// normalized 1-cochains when there are at most 2^16 of them, linear
/// algebra otherwise.
pub fn is_coboundary(c: &Cochain, g: &GroupTable) -> Result<bool> {
    if c.degree() == 2 {
        if let Some(b) = is_coboundary_exhaustive(c, g) {
            return Ok(b);
        }
    }
    Ok(CoboundarySolver::new(g, c.degree(), c.moduli())?.is_coboundary(c))
}

/// Whether two normalized cocycles are cohomologous.
pub fn same_class(a: &Cochain, b: &Cochain, g: &GroupTable) -> Result<bool> {
    is_coboundary(&a.sub(b), g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v4() -> GroupTable {
        GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(2))
    }

    #[test]
    fn carry_cocycle_is_not_a_coboundary() {
        let g = GroupTable::cyclic(4);
        let c = Cochain::from_fn(2, 4, &[2], |t| vec![u64::from(t[0] + t[1] >= 4)]);
        let s = CoboundarySolver::new(&g, 2, &[2]).unwrap();
        assert!(!s.is_coboundary(&c));
        assert_eq!(is_coboundary_exhaustive(&c, &g), Some(false));
        // the same carry with Z/4 values on Z/2 is a coboundary: 2 = δ of x -> x
        let g2 = GroupTable::cyclic(2);
        let c2 = Cochain::from_fn(2, 2, &[4], |t| vec![if t[0] == 1 && t[1] == 1 { 2 } else { 0 }]);
        let f = CoboundarySolver::new(&g2, 2, &[4]).unwrap().solve(&c2).unwrap();
        assert_eq!(f.coboundary(&g2), c2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn coboundaries_are_solved(vals in proptest::collection::vec(0u64..12, 4), deg in 2usize..4) {
            let g = v4();
            let mut f = Cochain::zero(deg - 1, 4, &[2, 12]);
            let cells = unknown_cells(4, deg - 1);
            for (k, &idx) in cells.iter().enumerate() {
                let v = vals[k % vals.len()] + k as u64;
                f.set_index(idx, &[v % 2, v % 12]);
            }
            let c = f.coboundary(&g);
            let s = CoboundarySolver::new(&g, deg, &[2, 12]).unwrap();
            let h = s.solve(&c).expect("coboundary is solvable");
            prop_assert_eq!(h.coboundary(&g), c.clone());
            prop_assert!(s.quotient_coords(&c).iter().all(|&x| x == 0));
        }
    }
}
