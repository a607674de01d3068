use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::smith::{smith_normal_form, IntegerMatrix};
use super::table::GroupTable;
use super::word::Word;
use crate::error::{Error, Result};

/// A finitely generated abelian group by invariant factors; `0` stands for
/// a copy of the integers and finite factors come first in divisibility
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    invariant_factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { invariant_factors: Vec::new() }
    }

    /// Normalizes an arbitrary list of cyclic orders (1s are dropped).
    pub fn from_cyclic(orders: &[u64]) -> Self {
        let free = orders.iter().filter(|&&o| o == 0).count();
        let finite: Vec<i64> = orders.iter().filter(|&&o| o > 1).map(|&o| o as i64).collect();
        let k = finite.len();
        let rows: Vec<Vec<i64>> =
            (0..k).map(|i| (0..k).map(|j| if i == j { finite[i] } else { 0 }).collect()).collect();
        let mut factors: Vec<u64> = if k == 0 {
            Vec::new()
        } else {
            smith_normal_form(&IntegerMatrix::from_rows(k, &rows))
                .invariant_factors
                .iter()
                .map(|d| d.to_u64().unwrap())
                .filter(|&d| d > 1)
                .collect()
        };
        factors.extend(std::iter::repeat_n(0, free));
        AbelianGroup { invariant_factors: factors }
    }

    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<Self> {
        let g = AbelianGroup::from_cyclic(&factors);
        if g.invariant_factors != factors {
            return Err(Error::InvalidInput(format!("{factors:?} is not an invariant factor list")));
        }
        Ok(g)
    }

    /// Cokernel of an integer matrix acting on row vectors of length `cols`.
    pub fn cokernel(rows: &[Vec<i64>], cols: usize) -> Self {
        cokernel_with_coordinates(rows, cols).0
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|&&d| d == 0).count()
    }

    pub fn torsion(&self) -> AbelianGroup {
        AbelianGroup { invariant_factors: self.invariant_factors.iter().copied().filter(|&d| d != 0).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank() == 0
    }

    /// Order, or `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        if self.is_finite() {
            Some(self.invariant_factors.iter().product())
        } else {
            None
        }
    }

    /// Prime-power cyclic factors `(p, k)` for `Z/p^k`, sorted.
    pub fn elementary_divisors(&self) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for &d in self.invariant_factors.iter().filter(|&&d| d > 1) {
            for (p, k) in factorize(d) {
                out.push((p, k));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut all = self.invariant_factors.clone();
        all.extend(&other.invariant_factors);
        AbelianGroup::from_cyclic(&all)
    }

    /// Number of elements of order dividing `m` in the torsion part, times
    /// `m^rank`: the order of the `m`-torsion of `G ⊗ Z/m`.
    pub fn count_m_torsion(&self, m: u64) -> u64 {
        self.invariant_factors.iter().map(|&d| if d == 0 { m } else { gcd(d, m) }).product()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|&d| if d == 0 { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Cokernel together with the image of every standard basis vector as a
/// coordinate vector (one entry per invariant factor, reduced mod finite
/// factors) and, for every invariant factor, a preimage vector.
pub fn cokernel_with_coordinates(rows: &[Vec<i64>], cols: usize) -> (AbelianGroup, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = IntegerMatrix::from_rows(cols, rows);
    let s = smith_normal_form(&m);
    // diagonal entry for every column: invariant factor or 0 past the rank
    let diag: Vec<BigInt> =
        (0..cols).map(|j| s.invariant_factors.get(j).cloned().unwrap_or_else(BigInt::zero)).collect();
    let kept: Vec<usize> = (0..cols).filter(|&j| diag[j] != BigInt::from(1)).collect();
    // finite factors first, then free ones, matching AbelianGroup ordering
    let mut kept_sorted: Vec<usize> = kept.iter().copied().filter(|&j| !diag[j].is_zero()).collect();
    kept_sorted.extend(kept.iter().copied().filter(|&j| diag[j].is_zero()));
    let factors: Vec<u64> = kept_sorted.iter().map(|&j| diag[j].to_u64().expect("invariant factor fits u64")).collect();
    let coords = (0..cols)
        .map(|g| {
            kept_sorted
                .iter()
                .map(|&j| {
                    let v = s.right.get(g, j).clone();
                    if diag[j].is_zero() {
                        v
                    } else {
                        ((v % &diag[j]) + &diag[j]) % &diag[j]
                    }
                })
                .collect()
        })
        .collect();
    let preimages = kept_sorted.iter().map(|&j| s.right_inv.row(j).to_vec()).collect();
    (AbelianGroup { invariant_factors: factors }, coords, preimages)
}

/// `Γ/[Γ,Γ]` from the relator exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelianGroup {
    AbelianGroup::cokernel(&p.exponent_matrix(), p.generator_count())
}

/// Abelianization with coordinates: generator `j` maps to `coords[j]`.
#[derive(Clone, Debug)]
pub struct AbelianizationMap {
    pub group: AbelianGroup,
    pub coords: Vec<Vec<i64>>,
    /// For each invariant factor, a word mapping to that basis vector.
    pub basis_words: Vec<Word>,
}

pub fn abelianization_map(p: &Presentation) -> AbelianizationMap {
    let n = p.generator_count();
    let (group, coords, pre) = cokernel_with_coordinates(&p.exponent_matrix(), n);
    let coords = coords.iter().map(|c| c.iter().map(|v| v.to_i64().unwrap()).collect()).collect();
    let basis_words = pre
        .iter()
        .map(|v| {
            let mut w = Word::identity();
            for (g, e) in v.iter().enumerate() {
                w = w.mul(&Word::gen(g).pow(e.to_i64().unwrap()));
            }
            w
        })
        .collect();
    AbelianizationMap { group, coords, basis_words }
}

/// A finite abelian subgroup of a table group with an explicit
/// isomorphism to `⊕ Z/d_i`.
#[derive(Clone, Debug)]
pub struct FiniteAbelian {
    pub group: AbelianGroup,
    /// Element of the ambient table realizing each basis vector.
    pub basis: Vec<usize>,
    /// Subgroup elements in ascending order.
    pub elements: Vec<usize>,
    coords: HashMap<usize, Vec<u64>>,
    by_coords: HashMap<Vec<u64>, usize>,
}

impl FiniteAbelian {
    /// Decomposes the abelian subgroup on `elements` of `g`.
    pub fn new(g: &GroupTable, elements: &[usize]) -> Result<Self> {
        let (sub, embed) = g.subgroup_table(elements)?;
        if !sub.is_abelian() {
            return Err(Error::InvalidInput("subgroup is not abelian".into()));
        }
        let gens = sub.generators().to_vec();
        let k = gens.len();
        // relation lattice from the Cayley graph: word(x) + e_g - word(xg)
        let words = sub.element_words()?;
        let vec_of = |w: &Word| w.exponent_sums(k);
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for x in 0..sub.order() {
            for (i, &gi) in gens.iter().enumerate() {
                let y = sub.mul(x, gi);
                let mut r = vec_of(&words[x]);
                r[i] += 1;
                for (a, b) in r.iter_mut().zip(vec_of(&words[y])) {
                    *a -= b;
                }
                if r.iter().any(|&v| v != 0) {
                    rows.push(r);
                }
            }
        }
        for (i, &gi) in gens.iter().enumerate() {
            let mut r = vec![0; k];
            r[i] = sub.element_order(gi) as i64;
            rows.push(r);
        }
        let (group, gcoords, pre) = cokernel_with_coordinates(&rows, k);
        if !group.is_finite() || group.order() != Some(sub.order() as u64) {
            return Err(Error::DecompositionFailure("abelian subgroup decomposition has wrong order".into()));
        }
        let factors = group.invariant_factors().to_vec();
        let basis_local: Vec<usize> = pre
            .iter()
            .map(|v| {
                v.iter().enumerate().fold(0, |acc, (j, e)| sub.mul(acc, sub.pow(gens[j], e.to_i64().unwrap())))
            })
            .collect();
        let gen_coords: Vec<Vec<u64>> =
            gcoords.iter().map(|c| c.iter().map(|v| v.to_u64().unwrap()).collect()).collect();
        let mut coords = HashMap::new();
        let mut by_coords = HashMap::new();
        for x in 0..sub.order() {
            let s = words[x].exponent_sums(k);
            let c: Vec<u64> = (0..factors.len())
                .map(|i| {
                    let d = factors[i] as i64;
                    let v: i64 = (0..k).map(|j| s[j] * gen_coords[j][i] as i64).sum();
                    v.rem_euclid(d) as u64
                })
                .collect();
            by_coords.insert(c.clone(), embed[x]);
            coords.insert(embed[x], c);
        }
        if by_coords.len() != sub.order() {
            return Err(Error::DecompositionFailure("coordinates are not injective".into()));
        }
        Ok(FiniteAbelian {
            group,
            basis: basis_local.into_iter().map(|x| embed[x]).collect(),
            elements: embed,
            coords,
            by_coords,
        })
    }

    pub fn factors(&self) -> &[u64] {
        self.group.invariant_factors()
    }

    pub fn coords(&self, x: usize) -> Option<&[u64]> {
        self.coords.get(&x).map(|v| v.as_slice())
    }

    pub fn element(&self, coords: &[u64]) -> Option<usize> {
        let reduced: Vec<u64> = coords.iter().zip(self.factors()).map(|(&c, &d)| c % d).collect();
        self.by_coords.get(&reduced).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::parse::parse_presentation;

    #[test]
    fn examples() {
        let z2 = parse_presentation("group Z2\ngens a b\nrel [a,b]\n").unwrap();
        assert_eq!(abelianization(&z2).invariant_factors(), &[0, 0]);
        let s3 = parse_presentation("group S3\ngens a b\nrel a^2\nrel b^2\nrel (a b)^3\n").unwrap();
        assert_eq!(abelianization(&s3).invariant_factors(), &[2]);
        let z5 = parse_presentation("group Z5\ngens a\nrel a^5\n").unwrap();
        assert_eq!(abelianization(&z5).invariant_factors(), &[5]);
    }

    #[test]
    fn normalization() {
        assert_eq!(AbelianGroup::from_cyclic(&[6, 4, 0, 1]).invariant_factors(), &[2, 12, 0]);
        assert!(AbelianGroup::from_invariant_factors(vec![4, 2]).is_err());
        assert_eq!(AbelianGroup::from_cyclic(&[2, 2, 4]).to_string(), "Z/2 x Z/2 x Z/4");
        assert_eq!(AbelianGroup::from_cyclic(&[12]).elementary_divisors(), vec![(2, 2), (3, 1)]);
    }

    #[test]
    fn abelianization_coordinates_respect_relations() {
        let p = parse_presentation("group G\ngens a b c\nrel a^4\nrel b^6\nrel a^2 b^-3\nrel c a c^-1 a^-1\n").unwrap();
        let m = abelianization_map(&p);
        let f = m.group.invariant_factors().to_vec();
        for r in p.relators() {
            let s = r.exponent_sums(3);
            for i in 0..f.len() {
                let v: i64 = (0..3).map(|j| s[j] * m.coords[j][i]).sum();
                if f[i] == 0 {
                    assert_eq!(v, 0);
                } else {
                    assert_eq!(v.rem_euclid(f[i] as i64), 0);
                }
            }
        }
    }

    #[test]
    fn finite_abelian_decomposition() {
        let g = GroupTable::cyclic(4).direct_product(&GroupTable::cyclic(6));
        let all: Vec<usize> = (0..24).collect();
        let a = FiniteAbelian::new(&g, &all).unwrap();
        assert_eq!(a.factors(), &[2, 12]);
        for x in 0..24 {
            for y in 0..24 {
                let cx = a.coords(x).unwrap();
                let cy = a.coords(y).unwrap();
                let sum: Vec<u64> = cx.iter().zip(cy).map(|(p, q)| p + q).collect();
                assert_eq!(a.element(&sum), Some(g.mul(x, y)));
            }
        }
    }
}
