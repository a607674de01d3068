//! Integral homology in degrees 1 and 2 straight from the normalized bar
//! complex. Used as an independent check on the Hopf formula.
//!
//! With trivial coefficients `d_1 = 0`, so `H_1 = coker d_2`, and for finite
//! `G` the group `H_2` is the torsion of `coker d_3`. The `p`-part of a
//! torsion invariant factor has valuation at most `v_p(|G|)`, so working
//! modulo `p^(v_p(|G|)+1)` sees every such factor exactly.

use super::modular::{mod_smith, ModMatrix};
use crate::error::{Error, Result};
use crate::fp::abelian::factorize;
use crate::fp::{AbelianGroup, GroupTable};

fn boundary(g: &GroupTable, degree: usize, p: u64, e: u32) -> Result<ModMatrix> {
    let n = g.order();
    let m = n - 1;
    let rows = m.pow(degree as u32);
    let cols = m.pow(degree as u32 - 1);
    let mut mat = ModMatrix::zeros(rows, cols, p, e)?;
    let mut tuple = vec![0usize; degree];
    let index = |t: &[usize]| -> Option<usize> {
        t.iter().try_fold(0usize, |acc, &x| if x == 0 { None } else { Some(acc * m + x - 1) })
    };
    for r in 0..rows {
        let mut x = r;
        for t in tuple.iter_mut().rev() {
            *t = x % m + 1;
            x /= m;
        }
        let d = degree - 1;
        let mut push = |face: Vec<usize>, sign: i64| {
            if let Some(c) = index(&face) {
                mat.add(r, c, sign);
            }
        };
        push(tuple[1..].to_vec(), 1);
        for i in 0..d {
            let mut f = tuple[..i].to_vec();
            f.push(g.mul(tuple[i], tuple[i + 1]));
            f.extend_from_slice(&tuple[i + 2..]);
            push(f, if i % 2 == 0 { -1 } else { 1 });
        }
        push(tuple[..d].to_vec(), if d % 2 == 1 { 1 } else { -1 });
    }
    Ok(mat)
}

/// `H_1(G, Z)` or `H_2(G, Z)` of a finite group.
pub fn bar_homology(g: &GroupTable, degree: usize) -> Result<AbelianGroup> {
    if !(1..=2).contains(&degree) {
        return Err(Error::InvalidInput(format!("bar homology is implemented in degrees 1 and 2, not {degree}")));
    }
    let n = g.order();
    if n == 1 {
        return Ok(AbelianGroup::trivial());
    }
    let mut orders = Vec::new();
    for (p, k) in factorize(n as u64) {
        let e = k + 1;
        let s = mod_smith(boundary(g, degree + 1, p, e)?, false, false);
        let cols = (n - 1).pow(degree as u32);
        for &v in s.col_valuations.iter().take(cols) {
            if v > 0 && v < e {
                orders.push(p.pow(v));
            }
        }
    }
    Ok(AbelianGroup::from_cyclic(&orders))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        let z = GroupTable::cyclic;
        assert!(bar_homology(&z(6), 2).unwrap().is_trivial());
        assert_eq!(bar_homology(&z(6), 1).unwrap().invariant_factors(), &[6]);
        let v = z(2).direct_product(&z(2));
        assert_eq!(bar_homology(&v, 2).unwrap().invariant_factors(), &[2]);
        let w = z(3).direct_product(&z(3));
        assert_eq!(bar_homology(&w, 2).unwrap().invariant_factors(), &[3]);
    }
}
