//! Homomorphisms between finite abelian groups `⊕ Z/a_i -> ⊕ Z/m_j`, given
//! by the images of the standard generators.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::abelian::gcd;

/// Mixed-radix index of a coordinate vector, first coordinate most
/// significant.
pub fn abelian_index(moduli: &[u64], a: &[u64]) -> usize {
    moduli.iter().zip(a).fold(0usize, |acc, (&m, &x)| acc * m as usize + (x % m) as usize)
}

pub fn abelian_coords(moduli: &[u64], mut idx: usize) -> Vec<u64> {
    let mut out = vec![0u64; moduli.len()];
    for (o, &m) in out.iter_mut().zip(moduli).rev() {
        *o = (idx % m as usize) as u64;
        idx /= m as usize;
    }
    out
}

pub fn abelian_order(moduli: &[u64]) -> usize {
    moduli.iter().product::<u64>() as usize
}

pub fn add_coords(moduli: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    moduli.iter().zip(a.iter().zip(b)).map(|(&m, (&x, &y))| (x + y) % m).collect()
}

pub fn neg_coords(moduli: &[u64], a: &[u64]) -> Vec<u64> {
    moduli.iter().zip(a).map(|(&m, &x)| (m - x % m) % m).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Hom {
    pub source: Vec<u64>,
    pub target: Vec<u64>,
    /// Image of each standard generator of the source.
    pub images: Vec<Vec<u64>>,
}

impl Hom {
    pub fn new(source: &[u64], target: &[u64], images: Vec<Vec<u64>>) -> Result<Self> {
        if images.len() != source.len() || images.iter().any(|v| v.len() != target.len()) {
            return Err(Error::DimensionMismatch("homomorphism images have the wrong shape".into()));
        }
        let images: Vec<Vec<u64>> =
            images.into_iter().map(|v| v.iter().zip(target).map(|(&x, &m)| x % m).collect()).collect();
        for (&a, img) in source.iter().zip(&images) {
            if img.iter().zip(target).any(|(&x, &m)| !(a as u128 * x as u128).is_multiple_of(m as u128)) {
                return Err(Error::InvalidInput(format!("image {img:?} is not killed by {a}")));
            }
        }
        Ok(Hom { source: source.to_vec(), target: target.to_vec(), images })
    }

    pub fn zero(source: &[u64], target: &[u64]) -> Self {
        Hom { source: source.to_vec(), target: target.to_vec(), images: vec![vec![0; target.len()]; source.len()] }
    }

    pub fn identity(moduli: &[u64]) -> Self {
        let images = (0..moduli.len()).map(|i| (0..moduli.len()).map(|j| u64::from(i == j)).collect()).collect();
        Hom { source: moduli.to_vec(), target: moduli.to_vec(), images }
    }

    pub fn apply(&self, a: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.target.len()];
        for (&x, img) in a.iter().zip(&self.images) {
            for ((o, &y), &m) in out.iter_mut().zip(img).zip(&self.target) {
                *o = ((*o as u128 + x as u128 * y as u128) % m as u128) as u64;
            }
        }
        out
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &Hom) -> Result<Hom> {
        if self.target != after.source {
            return Err(Error::DimensionMismatch("composable homomorphisms expected".into()));
        }
        Ok(Hom {
            source: self.source.clone(),
            target: after.target.clone(),
            images: self.images.iter().map(|v| after.apply(v)).collect(),
        })
    }

    pub fn add(&self, other: &Hom) -> Hom {
        let images = self.images.iter().zip(&other.images).map(|(a, b)| add_coords(&self.target, a, b)).collect();
        Hom { source: self.source.clone(), target: self.target.clone(), images }
    }

    pub fn scale(&self, k: u64) -> Hom {
        let images = self
            .images
            .iter()
            .map(|v| v.iter().zip(&self.target).map(|(&x, &m)| (x as u128 * k as u128 % m as u128) as u64).collect())
            .collect();
        Hom { source: self.source.clone(), target: self.target.clone(), images }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| v.iter().all(|&x| x == 0))
    }

    /// Generators of `Hom(source, target) = ⊕ Z/gcd(a_i, m_j)` with their
    /// orders: generator `(i, j)` sends `e_i` to `m_j / gcd` in slot `j`.
    pub fn generators(source: &[u64], target: &[u64]) -> (Vec<Hom>, Vec<u64>) {
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for (i, &a) in source.iter().enumerate() {
            for (j, &m) in target.iter().enumerate() {
                let g = gcd(a, m);
                if g > 1 {
                    let mut h = Hom::zero(source, target);
                    h.images[i][j] = m / g;
                    gens.push(h);
                    orders.push(g);
                }
            }
        }
        (gens, orders)
    }

    /// Coordinates of this homomorphism with respect to [`Hom::generators`].
    pub fn coordinates(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, &a) in self.source.iter().enumerate() {
            for (j, &m) in self.target.iter().enumerate() {
                let g = gcd(a, m);
                if g > 1 {
                    out.push(self.images[i][j] / (m / g));
                }
            }
        }
        out
    }

    /// Every homomorphism, in the order of their generator coordinates.
    pub fn all(source: &[u64], target: &[u64], cap: u64) -> Result<Vec<Hom>> {
        let (gens, orders) = Hom::generators(source, target);
        let count: u64 = orders.iter().product();
        if count > cap {
            return Err(Error::CapExceeded(format!("{count} homomorphisms")));
        }
        let mut out = vec![Hom::zero(source, target)];
        for (g, &o) in gens.iter().zip(&orders) {
            out = out.into_iter().flat_map(|h| (0..o).map(move |k| h.add(&g.scale(k)))).collect();
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_groups() {
        assert_eq!(Hom::all(&[2, 4], &[4], 100).unwrap().len(), 8);
        assert_eq!(Hom::all(&[3], &[2], 100).unwrap().len(), 1);
        let h = Hom::new(&[2], &[4], vec![vec![2]]).unwrap();
        assert_eq!(h.coordinates(), vec![1]);
        assert!(Hom::new(&[2], &[4], vec![vec![1]]).is_err());
        let id = Hom::identity(&[2, 6]);
        assert_eq!(id.apply(&[1, 5]), vec![1, 5]);
    }

    #[test]
    fn index_round_trip() {
        let m = [2, 3, 4];
        for i in 0..24 {
            assert_eq!(abelian_index(&m, &abelian_coords(&m, i)), i);
        }
    }
}
