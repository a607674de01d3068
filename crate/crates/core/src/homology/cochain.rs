//! Normalized inhomogeneous cochains with trivial coefficients in a finite
//! abelian group `⊕ Z/m_j`.

use serde::Serialize;

use crate::fp::GroupTable;

/// A function `G^degree -> ⊕ Z/m_j`, stored as a full table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cochain {
    degree: usize,
    n: usize,
    moduli: Vec<u64>,
    data: Vec<u64>,
}

impl Cochain {
    pub fn zero(degree: usize, n: usize, moduli: &[u64]) -> Self {
        let len = n.pow(degree as u32) * moduli.len();
        Cochain { degree, n, moduli: moduli.to_vec(), data: vec![0; len] }
    }

    /// Builds a cochain from a function of the argument tuple.
    pub fn from_fn(degree: usize, n: usize, moduli: &[u64], mut f: impl FnMut(&[usize]) -> Vec<u64>) -> Self {
        let mut c = Cochain::zero(degree, n, moduli);
        let mut tuple = vec![0usize; degree];
        for idx in 0..n.pow(degree as u32) {
            decode(idx, n, &mut tuple);
            let v = f(&tuple);
            c.set_index(idx, &v);
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.n + x)
    }

    pub fn get(&self, tuple: &[usize]) -> &[u64] {
        let r = self.moduli.len();
        let i = self.index(tuple);
        &self.data[i * r..(i + 1) * r]
    }

    pub fn get_index(&self, idx: usize) -> &[u64] {
        let r = self.moduli.len();
        &self.data[idx * r..(idx + 1) * r]
    }

    pub fn set(&mut self, tuple: &[usize], v: &[u64]) {
        let i = self.index(tuple);
        self.set_index(i, v);
    }

    pub(crate) fn set_index(&mut self, idx: usize, v: &[u64]) {
        let r = self.moduli.len();
        for j in 0..r {
            self.data[idx * r + j] = v[j] % self.moduli[j];
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Cochain, sign: i64) -> Cochain {
        assert_eq!((self.degree, self.n, &self.moduli), (other.degree, other.n, &other.moduli));
        let r = self.moduli.len();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .enumerate()
            .map(|(i, (&a, &b))| {
                let m = self.moduli[i % r] as i64;
                (a as i64 + sign * b as i64).rem_euclid(m) as u64
            })
            .collect();
        Cochain { data, ..self.clone() }
    }

    pub fn scale(&self, k: i64) -> Cochain {
        let r = self.moduli.len();
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let m = self.moduli[i % r] as i128;
                ((a as i128 * k as i128).rem_euclid(m)) as u64
            })
            .collect();
        Cochain { data, ..self.clone() }
    }

    /// Applies a homomorphism `⊕ Z/m_j -> ⊕ Z/n_i` valuewise.
    pub fn map_values(&self, target_moduli: &[u64], f: impl Fn(&[u64]) -> Vec<u64>) -> Cochain {
        let mut c = Cochain::zero(self.degree, self.n, target_moduli);
        let cells = self.n.pow(self.degree as u32);
        for idx in 0..cells {
            let v = f(self.get_index(idx));
            c.set_index(idx, &v);
        }
        c
    }

    /// Pulls back along a map of groups `H -> G` given on elements.
    pub fn pullback(&self, map: &[usize]) -> Cochain {
        let m = map.len();
        let mut tuple = vec![0usize; self.degree];
        let mut c = Cochain::zero(self.degree, m, &self.moduli);
        for idx in 0..m.pow(self.degree as u32) {
            decode(idx, m, &mut tuple);
            let img: Vec<usize> = tuple.iter().map(|&x| map[x]).collect();
            let v = self.get(&img).to_vec();
            c.set_index(idx, &v);
        }
        c
    }

    /// Vanishes whenever some argument is the identity.
    pub fn is_normalized(&self) -> bool {
        let mut tuple = vec![0usize; self.degree];
        (0..self.n.pow(self.degree as u32)).all(|idx| {
            decode(idx, self.n, &mut tuple);
            !tuple.contains(&0) || self.get_index(idx).iter().all(|&x| x == 0)
        })
    }

    /// The bar coboundary for the trivial action.
    pub fn coboundary(&self, g: &GroupTable) -> Cochain {
        assert_eq!(g.order(), self.n);
        let d = self.degree;
        let n = self.n;
        let r = self.moduli.len();
        let mut out = Cochain::zero(d + 1, n, &self.moduli);
        let mut tuple = vec![0usize; d + 1];
        let mut face = vec![0usize; d];
        for idx in 0..n.pow(d as u32 + 1) {
            decode(idx, n, &mut tuple);
            let mut acc = vec![0i64; r];
            let add = |face: &[usize], sign: i64, acc: &mut Vec<i64>| {
                for (a, &v) in acc.iter_mut().zip(self.get(face)) {
                    *a += sign * v as i64;
                }
            };
            // first face drops x_1
            face.copy_from_slice(&tuple[1..]);
            add(&face, 1, &mut acc);
            for i in 0..d {
                let mut k = 0;
                for j in 0..=d {
                    if j == i {
                        face[k] = g.mul(tuple[i], tuple[i + 1]);
                        k += 1;
                    } else if j != i + 1 {
                        face[k] = tuple[j];
                        k += 1;
                    }
                }
                let sign = if i % 2 == 0 { -1 } else { 1 };
                add(&face, sign, &mut acc);
            }
            face.copy_from_slice(&tuple[..d]);
            add(&face, if d % 2 == 1 { 1 } else { -1 }, &mut acc);
            let v: Vec<u64> =
                acc.iter().zip(&self.moduli).map(|(&a, &m)| a.rem_euclid(m as i64) as u64).collect();
            out.set_index(idx, &v);
        }
        out
    }

    /// Exhaustive cocycle test.
    pub fn is_cocycle(&self, g: &GroupTable) -> bool {
        self.coboundary(g).is_zero()
    }
}

pub fn decode(mut idx: usize, n: usize, tuple: &mut [usize]) {
    for t in tuple.iter_mut().rev() {
        *t = idx % n;
        idx /= n;
    }
}
