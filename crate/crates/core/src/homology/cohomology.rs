//! `H^d(G, k)` for trivial coefficients from the normalized bar complex.
//!
//! Each cyclic component `Z/p^e` of `k` is handled separately. Cocycles are
//! the left kernel of the coboundary matrix, found by elimination over the
//! chain ring `Z/p^e`; the quotient by coboundaries is a second elimination.
//! In degrees 1 and 2 the cocycle equations are only imposed with the last
//! argument a generator: a normalized 2-cochain is a cocycle iff the twisted
//! product on `G x k` is associative, and associativity of a magma follows
//! from associativity against a generating set.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::cochain::{decode, Cochain};
use super::modular::{mod_smith, ModMatrix};
use super::module::CoefficientModule;
use crate::error::{Error, Result};
use crate::fp::abelian::factorize;
use crate::fp::table::small_generating_set;
use crate::fp::{AbelianGroup, GroupTable};

pub const MAX_DEGREE: usize = 3;
/// Largest number of classes enumerated element by element.
pub const MAX_ENUMERATION: u64 = 1 << 18;

/// Cohomology with coefficients `Z/p^e`.
#[derive(Debug)]
struct Piece {
    p: u64,
    q: u64,
    /// Orders `p^w` of the class generators.
    orders: Vec<u64>,
    /// Class generators in unknown coordinates.
    reps: Vec<Vec<u64>>,
    /// Columns of the inverse row transform, one per cocycle generator.
    li_cols: Vec<Vec<u64>>,
    /// `e - v_i`: the power of `p` dividing each cocycle coordinate.
    shifts: Vec<u32>,
    /// Columns of the second right transform, one per class generator.
    class_cols: Vec<Vec<u64>>,
}

impl Piece {
    fn trivial(p: u64, e: u32) -> Self {
        Piece { p, q: p.pow(e), orders: vec![], reps: vec![], li_cols: vec![], shifts: vec![], class_cols: vec![] }
    }

    fn class_coords(&self, c: &[u64]) -> Vec<u64> {
        let q = self.q;
        let t: Vec<u64> = self
            .li_cols
            .iter()
            .zip(&self.shifts)
            .map(|(col, &s)| {
                let y = col.iter().zip(c).fold(0u64, |acc, (&a, &b)| (acc + a * b) % q);
                y / self.p.pow(s)
            })
            .collect();
        self.class_cols
            .iter()
            .zip(&self.orders)
            .map(|(col, &o)| t.iter().zip(col).fold(0u64, |acc, (&a, &b)| (acc + a * b) % q) % o)
            .collect()
    }
}

/// Index of every tuple of nonidentity elements within the full table.
pub(crate) fn unknown_cells(n: usize, d: usize) -> Vec<usize> {
    let mut cells = Vec::new();
    let mut tuple = vec![0usize; d];
    for idx in 0..n.pow(d as u32) {
        decode(idx, n, &mut tuple);
        if !tuple.contains(&0) {
            cells.push(idx);
        }
    }
    cells
}

pub(crate) fn unknown_index(tuple: &[usize], n: usize) -> Option<usize> {
    let mut idx = 0;
    for &x in tuple {
        if x == 0 {
            return None;
        }
        idx = idx * (n - 1) + (x - 1);
    }
    Some(idx)
}

/// Generators used for the reduced cocycle equations.
fn light_generators(g: &GroupTable) -> Vec<usize> {
    let mut gens: Vec<usize> = g.generators().iter().copied().filter(|&x| x != 0).collect();
    gens.sort_unstable();
    gens.dedup();
    if g.generated_subgroup(&gens).len() != g.order() {
        let all: Vec<usize> = (0..g.order()).collect();
        gens = small_generating_set(g, &all);
    }
    gens
}

/// Faces of the bar coboundary applied to `tuple` (length d+1), each as
/// (sign, face tuple of length d).
pub(crate) fn faces(g: &GroupTable, tuple: &[usize], out: &mut Vec<(i64, Vec<usize>)>) {
    out.clear();
    let d = tuple.len() - 1;
    out.push((1, tuple[1..].to_vec()));
    for i in 0..d {
        let mut f = Vec::with_capacity(d);
        f.extend_from_slice(&tuple[..i]);
        f.push(g.mul(tuple[i], tuple[i + 1]));
        f.extend_from_slice(&tuple[i + 2..]);
        out.push((if i % 2 == 0 { -1 } else { 1 }, f));
    }
    out.push((if d % 2 == 1 { 1 } else { -1 }, tuple[..d].to_vec()));
}

fn compute_piece(g: &GroupTable, d: usize, p: u64, e: u32) -> Result<Piece> {
    let n = g.order();
    let q = p.pow(e);
    if d == 0 {
        return Ok(Piece {
            p,
            q,
            orders: vec![q],
            reps: vec![vec![1]],
            li_cols: vec![vec![1]],
            shifts: vec![0],
            class_cols: vec![vec![1]],
        });
    }
    if n == 1 {
        return Ok(Piece::trivial(p, e));
    }
    let u = (n - 1).pow(d as u32);
    // cocycle equations as columns
    let mut eqs: Vec<Vec<usize>> = Vec::new();
    match d {
        1 | 2 => {
            let gens = light_generators(g);
            for h in 0..(n - 1).pow(d as u32) {
                let mut prefix = vec![0usize; d];
                let mut x = h;
                for t in prefix.iter_mut().rev() {
                    *t = x % (n - 1) + 1;
                    x /= n - 1;
                }
                for &s in &gens {
                    let mut t = prefix.clone();
                    t.push(s);
                    eqs.push(t);
                }
            }
        }
        3 => {
            let mut tuple = vec![0usize; 4];
            for idx in 0..(n - 1).pow(4) {
                let mut x = idx;
                for t in tuple.iter_mut().rev() {
                    *t = x % (n - 1) + 1;
                    x /= n - 1;
                }
                eqs.push(tuple.clone());
            }
        }
        _ => return Err(Error::CapExceeded(format!("cohomology degree {d} exceeds {MAX_DEGREE}"))),
    }
    let mut delta = ModMatrix::zeros(u, eqs.len(), p, e)?;
    let mut fs = Vec::new();
    for (col, t) in eqs.iter().enumerate() {
        faces(g, t, &mut fs);
        for (sign, f) in &fs {
            if let Some(i) = unknown_index(f, n) {
                delta.add(i, col, *sign);
            }
        }
    }
    let s = mod_smith(delta, true, false);
    let l = s.left.as_ref().unwrap();
    let li = s.left_inv.as_ref().unwrap();
    let zgens: Vec<usize> = (0..u).filter(|&i| s.row_valuations[i] > 0).collect();
    let vals: Vec<u32> = zgens.iter().map(|&i| s.row_valuations[i]).collect();
    let shifts: Vec<u32> = vals.iter().map(|&v| e - v).collect();
    let li_cols: Vec<Vec<u64>> = zgens.iter().map(|&i| (0..u).map(|r| li.get(r, i)).collect()).collect();
    let nz = zgens.len();
    // coboundaries of the basis (d-1)-cochains, in unknown coordinates
    let mut brows: Vec<Vec<u64>> = Vec::new();
    if d >= 2 {
        let m = (n - 1).pow(d as u32 - 1);
        brows = vec![vec![0u64; u]; m];
        let mut tuple = vec![0usize; d];
        for (col, _) in (0..u).enumerate() {
            let mut x = col;
            for t in tuple.iter_mut().rev() {
                *t = x % (n - 1) + 1;
                x /= n - 1;
            }
            faces(g, &tuple, &mut fs);
            for (sign, f) in &fs {
                if let Some(i) = unknown_index(f, n) {
                    let v = &mut brows[i][col];
                    *v = ((*v as i64 + sign).rem_euclid(q as i64)) as u64;
                }
            }
        }
    }
    let mut m2 = ModMatrix::zeros(brows.len() + nz, nz, p, e)?;
    for (r, b) in brows.iter().enumerate() {
        for (i, col) in li_cols.iter().enumerate() {
            let y = col.iter().zip(b).fold(0u64, |acc, (&a, &x)| (acc + a * x) % q);
            let ps = p.pow(shifts[i]);
            if y % ps != 0 {
                return Err(Error::DecompositionFailure("coboundary is not a cocycle".into()));
            }
            m2.set(r, i, y / ps);
        }
    }
    for i in 0..nz {
        m2.set(brows.len() + i, i, p.pow(vals[i]));
    }
    let s2 = mod_smith(m2, false, true);
    let r2 = s2.right.as_ref().unwrap();
    let r2i = s2.right_inv.as_ref().unwrap();
    let mut orders = Vec::new();
    let mut reps = Vec::new();
    let mut class_cols = Vec::new();
    for j in 0..nz {
        let w = s2.col_valuations[j];
        if w == 0 {
            continue;
        }
        orders.push(p.pow(w));
        class_cols.push((0..nz).map(|i| r2.get(i, j)).collect());
        // representative: sum_i f_i p^{shift_i} L_{zgen_i}
        let mut v = vec![0u64; u];
        for i in 0..nz {
            let coef = r2i.get(j, i) * p.pow(shifts[i]) % q;
            if coef == 0 {
                continue;
            }
            for (o, &x) in v.iter_mut().zip(l.row(zgens[i])) {
                *o = (*o + coef * x) % q;
            }
        }
        reps.push(v);
    }
    Ok(Piece { p, q, orders, reps, li_cols, shifts, class_cols })
}

/// `H^d(G, k)` with explicit class generators.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    module: CoefficientModule,
    n: usize,
    group: AbelianGroup,
    dimension: Option<usize>,
    /// (module component, piece) for each piece in order.
    parts: Vec<(usize, Arc<Piece>)>,
    orders: Vec<u64>,
    representatives: Vec<Cochain>,
}

#[derive(Serialize)]
struct CohomologySummary<'a> {
    degree: usize,
    module: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariant_factors: Option<&'a [u64]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<usize>,
    representative_count: usize,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &CoefficientModule {
        &self.module
    }

    /// The group of classes; trivial for rational coefficients.
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Dimension over the coefficient field, if the module is a field.
    pub fn dimension(&self) -> Option<usize> {
        self.dimension
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Orders of the class generators (prime powers).
    pub fn generator_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let s = CohomologySummary {
            degree: self.degree,
            module: self.module.to_string(),
            invariant_factors: (!matches!(self.module, CoefficientModule::Rationals))
                .then(|| self.group.invariant_factors()),
            dimension: self.dimension,
            representative_count: self.representatives.len(),
        };
        serde_json::to_value(s).expect("summary serializes")
    }

    /// Coordinates of the class of a cocycle with respect to the class
    /// generators.
    pub fn class_of(&self, c: &Cochain, g: &GroupTable) -> Result<Vec<u64>> {
        let moduli = self.module.moduli().ok_or_else(|| {
            Error::InvalidInput("rational classes have no finite representatives".into())
        })?;
        if c.degree() != self.degree || c.group_order() != self.n || c.moduli() != moduli.as_slice() {
            return Err(Error::InvalidInput("cochain does not match this cohomology group".into()));
        }
        if !c.is_normalized() || (self.degree > 0 && !c.is_cocycle(g)) {
            return Err(Error::InvalidInput("not a normalized cocycle".into()));
        }
        Ok(self.class_of_unchecked(c))
    }

    pub(crate) fn class_of_unchecked(&self, c: &Cochain) -> Vec<u64> {
        let moduli = self.module.moduli().unwrap_or_default();
        let cells = unknown_cells(self.n, self.degree);
        let mut out = Vec::with_capacity(self.orders.len());
        for (comp, piece) in &self.parts {
            debug_assert!(*comp < moduli.len());
            let v: Vec<u64> = cells.iter().map(|&idx| c.get_index(idx)[*comp] % piece.q).collect();
            out.extend(piece.class_coords(&v));
        }
        out
    }

    pub fn is_coboundary(&self, c: &Cochain, g: &GroupTable) -> Result<bool> {
        Ok(self.class_of(c, g)?.iter().all(|&x| x == 0))
    }

    /// The cocycle `sum_i coords_i * rep_i`.
    pub fn cochain(&self, coords: &[u64]) -> Cochain {
        let moduli = self.module.moduli().unwrap_or_default();
        let mut c = Cochain::zero(self.degree, self.n, &moduli);
        for (&k, r) in coords.iter().zip(&self.representatives) {
            if k != 0 {
                c = c.add(&r.scale(k as i64));
            }
        }
        c
    }

    /// Every coordinate vector, when there are at most `MAX_ENUMERATION`.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        if self.order() > MAX_ENUMERATION {
            return Err(Error::CapExceeded(format!("{} classes", self.order())));
        }
        let mut out = vec![vec![]];
        for &o in &self.orders {
            let mut next = Vec::with_capacity(out.len() * o as usize);
            for v in &out {
                for k in 0..o {
                    let mut w = v.clone();
                    w.push(k);
                    next.push(w);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Computes `H^degree(g, m)`.
pub fn cohomology(g: &GroupTable, m: &CoefficientModule, degree: usize) -> Result<CohomologyGroup> {
    if degree > MAX_DEGREE {
        return Err(Error::CapExceeded(format!("cohomology degree {degree} exceeds {MAX_DEGREE}")));
    }
    let n = g.order();
    let cells_u = (n.max(2) - 1).pow(degree as u32);
    if degree == 3 && cells_u > 1000 {
        return Err(Error::CapExceeded(format!("degree 3 cohomology of a group of order {n}")));
    }
    match m.moduli() {
        None => {
            // over Q: a prime not dividing |G| gives the same dimension
            let p = (2..).find(|&p| super::module::is_prime(p) && !(n as u64).is_multiple_of(p)).unwrap();
            let piece = compute_piece(g, degree, p, 1)?;
            Ok(CohomologyGroup {
                degree,
                module: m.clone(),
                n,
                group: AbelianGroup::trivial(),
                dimension: Some(piece.orders.len()),
                parts: vec![],
                orders: vec![],
                representatives: vec![],
            })
        }
        Some(moduli) => {
            let mut cache: HashMap<(u64, u32), Arc<Piece>> = HashMap::new();
            let mut parts = Vec::new();
            for (j, &mj) in moduli.iter().enumerate() {
                for (p, e) in factorize(mj) {
                    let piece = match cache.get(&(p, e)) {
                        Some(pc) => pc.clone(),
                        None => {
                            let pc = Arc::new(compute_piece(g, degree, p, e)?);
                            cache.insert((p, e), pc.clone());
                            pc
                        }
                    };
                    parts.push((j, piece));
                }
            }
            let cells = unknown_cells(n, degree);
            let mut orders = Vec::new();
            let mut representatives = Vec::new();
            for (j, piece) in &parts {
                let mj = moduli[*j];
                // CRT embedding Z/p^e -> Z/m_j
                let cof = mj / piece.q;
                let lift = cof * super::modular::inverse_mod(cof % piece.q, piece.q) % mj;
                for (rep, &o) in piece.reps.iter().zip(&piece.orders) {
                    let mut c = Cochain::zero(degree, n, &moduli);
                    let mut val = vec![0u64; moduli.len()];
                    for (k, &idx) in cells.iter().enumerate() {
                        val[*j] = (rep[k] as u128 * lift as u128 % mj as u128) as u64;
                        let mut tuple = vec![0usize; degree];
                        decode(idx, n, &mut tuple);
                        c.set(&tuple, &val);
                    }
                    if degree == 0 {
                        val[*j] = lift % mj;
                        c.set(&[], &val);
                    }
                    orders.push(o);
                    representatives.push(c);
                }
            }
            let group = AbelianGroup::from_cyclic(&orders);
            let dimension = m.is_field().then_some(orders.len());
            Ok(CohomologyGroup { degree, module: m.clone(), n, group, dimension, parts, orders, representatives })
        }
    }
}

/// Exhaustive coboundary test for a 2-cochain: searches all normalized
/// 1-cochains when there are at most `2^16` of them.
pub fn is_coboundary_exhaustive(c: &Cochain, g: &GroupTable) -> Option<bool> {
    let n = g.order();
    let moduli = c.moduli().to_vec();
    let k: u64 = moduli.iter().product();
    let count = (k as f64).powi(n as i32 - 1);
    if count > 65536.0 {
        return None;
    }
    let total = k.pow(n as u32 - 1);
    let decode_val = |mut x: u64| -> Vec<u64> {
        moduli
            .iter()
            .map(|&m| {
                let v = x % m;
                x /= m;
                v
            })
            .collect()
    };
    for code in 0..total {
        let mut x = code;
        let mut vals: Vec<Vec<u64>> = vec![vec![0; moduli.len()]];
        for _ in 1..n {
            vals.push(decode_val(x % k));
            x /= k;
        }
        let ok = (1..n).all(|a| {
            (1..n).all(|b| {
                let ab = g.mul(a, b);
                c.get(&[a, b]).iter().enumerate().all(|(j, &v)| {
                    let m = moduli[j];
                    (vals[a][j] + vals[b][j] + m - vals[ab][j]) % m == v
                })
            })
        });
        if ok {
            return Some(true);
        }
    }
    Some(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> GroupTable {
        GroupTable::cyclic(n)
    }

    #[test]
    fn cyclic_groups() {
        let h2 = cohomology(&z(2), &CoefficientModule::cyclic(2), 2).unwrap();
        assert_eq!(h2.group().invariant_factors(), &[2]);
        assert!(h2.representatives()[0].is_cocycle(&z(2)));
        let h1q = cohomology(&z(5), &CoefficientModule::Rationals, 1).unwrap();
        assert_eq!(h1q.dimension(), Some(0));
        let h2 = cohomology(&z(4), &CoefficientModule::cyclic(6), 2).unwrap();
        assert_eq!(h2.group().invariant_factors(), &[2]);
        let h1 = cohomology(&z(6), &CoefficientModule::cyclic(4), 1).unwrap();
        assert_eq!(h1.group().invariant_factors(), &[2]);
        let h0 = cohomology(&z(3), &CoefficientModule::cyclic(4), 0).unwrap();
        assert_eq!(h0.order(), 4);
        let h3 = cohomology(&z(4), &CoefficientModule::cyclic(4), 3).unwrap();
        assert_eq!(h3.group().invariant_factors(), &[4]);
    }

    #[test]
    fn klein_four_over_f2() {
        let v = z(2).direct_product(&z(2));
        let h2 = cohomology(&v, &CoefficientModule::PrimeField { p: 2 }, 2).unwrap();
        assert_eq!(h2.dimension(), Some(3));
        let h2 = cohomology(&v, &CoefficientModule::cyclic(3), 2).unwrap();
        assert_eq!(h2.order(), 1);
    }

    #[test]
    fn elementary_abelian_p3() {
        let v = z(3).direct_product(&z(3));
        let h2 = cohomology(&v, &CoefficientModule::PrimeField { p: 3 }, 2).unwrap();
        assert_eq!(h2.dimension(), Some(3));
    }

    #[test]
    fn class_coordinates_invert_representatives() {
        let g = z(4).direct_product(&z(2));
        let m = CoefficientModule::FiniteAbelian { invariant_factors: vec![2, 4] };
        let h2 = cohomology(&g, &m, 2).unwrap();
        for coords in h2.elements().unwrap() {
            let c = h2.cochain(&coords);
            assert!(c.is_cocycle(&g) && c.is_normalized());
            // adding a coboundary does not change the class
            let f = Cochain::from_fn(1, 8, &[2, 4], |t| if t[0] == 0 { vec![0, 0] } else { vec![t[0] as u64 % 2, (t[0] * 3) as u64] });
            let c2 = c.add(&f.coboundary(&g));
            assert_eq!(h2.class_of(&c2, &g).unwrap(), coords);
        }
    }

    #[test]
    fn exhaustive_oracle_agrees() {
        let g = z(2).direct_product(&z(2));
        let m = CoefficientModule::cyclic(2);
        let h2 = cohomology(&g, &m, 2).unwrap();
        for coords in h2.elements().unwrap() {
            let c = h2.cochain(&coords);
            let zero = coords.iter().all(|&x| x == 0);
            assert_eq!(is_coboundary_exhaustive(&c, &g), Some(zero));
        }
    }
}
