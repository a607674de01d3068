//! The Schur multiplier `H_2 = (R ∩ [F,F]) / [F,R]` from a presentation
//! `F/R` of a finite group.
//!
//! `R` is free on the Reidemeister–Schreier generators of the regular coset
//! table. In `R/[F,R]` every Schreier generator equals its conjugates by the
//! generators of `F`, which gives an integer relation matrix; its cokernel is
//! `H_2 ⊕ Z^{|S|}` and the torsion is the multiplier.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::cochain::Cochain;
use crate::error::{Error, Result};
use crate::fp::abelian::cokernel_with_coordinates;
use crate::fp::schreier::{regular_action, reidemeister_schreier, SchreierPresentation};
use crate::fp::{AbelianGroup, GroupTable, Presentation, Word};

#[derive(Clone, Debug)]
pub struct HopfData {
    multiplier: AbelianGroup,
    schreier: SchreierPresentation,
    /// Torsion coordinates of each Schreier generator in `R/[F,R]`.
    torsion_coords: Vec<Vec<u64>>,
    /// Preimage of each torsion basis vector as an exponent vector over the
    /// Schreier generators.
    preimages: Vec<Vec<BigInt>>,
    table: GroupTable,
}

/// Checks that `g` realizes `p` through its generator images.
pub fn check_realizes(p: &Presentation, g: &GroupTable) -> Result<()> {
    if g.generators().len() != p.generator_count() {
        return Err(Error::InvalidInput("table and presentation have different generator counts".into()));
    }
    if let Some(r) = p.relators().iter().find(|r| g.evaluate(r, g.generators()) != 0) {
        return Err(Error::InvalidInput(format!("relator {} does not hold in the table", r.display_with(p.generators()))));
    }
    if g.generated_subgroup(g.generators()).len() != g.order() {
        return Err(Error::InvalidInput("generator images do not generate the table".into()));
    }
    Ok(())
}

impl HopfData {
    pub fn new(p: &Presentation, g: &GroupTable) -> Result<Self> {
        check_realizes(p, g)?;
        let action = regular_action(g);
        let schreier = reidemeister_schreier(p, &action)?;
        let ngens = p.generator_count();
        let nschreier = schreier.generator_words.len();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for (j, w) in schreier.generator_words.iter().enumerate() {
            for b in 0..ngens {
                let conj = w.conjugate_by(&Word::gen(b));
                let (rw, end) = schreier.rewrite(0, &conj);
                debug_assert_eq!(end, 0);
                let mut r = rw.exponent_sums(nschreier);
                r[j] -= 1;
                if r.iter().any(|&x| x != 0) {
                    rows.push(r);
                }
            }
        }
        let (group, coords, pre) = cokernel_with_coordinates(&rows, nschreier);
        if group.rank() != ngens {
            return Err(Error::DecompositionFailure(format!(
                "R/[F,R] has free rank {} but the presentation has {} generators",
                group.rank(),
                ngens
            )));
        }
        let multiplier = group.torsion();
        let t = multiplier.invariant_factors().len();
        let factors = multiplier.invariant_factors().to_vec();
        let torsion_coords = coords
            .iter()
            .map(|c| (0..t).map(|i| c[i].to_u64().expect("reduced coordinate")).collect())
            .collect();
        let preimages = pre.into_iter().take(t).collect();
        let _ = factors;
        Ok(HopfData { multiplier, schreier, torsion_coords, preimages, table: g.clone() })
    }

    pub fn multiplier(&self) -> &AbelianGroup {
        &self.multiplier
    }

    pub fn factors(&self) -> &[u64] {
        self.multiplier.invariant_factors()
    }

    pub fn schreier(&self) -> &SchreierPresentation {
        &self.schreier
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    /// Torsion coordinates of the class in `R/[F,R]` of a word in `R`.
    pub fn torsion_class(&self, w: &Word) -> Result<Vec<u64>> {
        let (rw, end) = self.schreier.rewrite(0, w);
        if end != 0 {
            return Err(Error::InvalidInput("word is not a relation".into()));
        }
        let n = self.torsion_coords.len();
        let sums = rw.exponent_sums(n);
        let f = self.factors();
        Ok((0..f.len())
            .map(|i| {
                let d = f[i] as i64;
                let v: i64 = sums
                    .iter()
                    .zip(&self.torsion_coords)
                    .map(|(&s, c)| s.rem_euclid(d) * c[i] as i64 % d)
                    .sum();
                v.rem_euclid(d) as u64
            })
            .collect())
    }

    /// The cocycle `(x, y) -> [u_x u_y u_{xy}^-1]` projected to the
    /// torsion of `R/[F,R]`, with `u` the transversal words. It classifies
    /// the quotient of `F/[F,R]` by the free part of `R/[F,R]`.
    pub fn schur_cocycle(&self) -> Cochain {
        let g = &self.table;
        let u = &self.schreier.transversal;
        Cochain::from_fn(2, g.order(), self.factors(), |t| {
            let (x, y) = (t[0], t[1]);
            let w = u[x].mul(&u[y]).mul(&u[g.mul(x, y)].inverse());
            self.torsion_class(&w).expect("transversal product is a relation")
        })
    }

    /// Evaluates every Schreier generator in the extension given by a
    /// normalized 2-cocycle, through the section `x -> (x, 0)`. Each value
    /// lies in the kernel.
    pub fn schreier_values(&self, c: &Cochain) -> Vec<Vec<u64>> {
        let gens = self.table.generators();
        self.schreier.generator_words.iter().map(|w| evaluate_through_section(&self.table, c, gens, w)).collect()
    }

    /// The homomorphism `H_2 -> A` attached to an extension with cocycle `c`:
    /// images of the torsion basis vectors.
    pub fn h_map(&self, c: &Cochain) -> Vec<Vec<u64>> {
        let values = self.schreier_values(c);
        let moduli = c.moduli();
        self.preimages
            .iter()
            .map(|v| {
                moduli
                    .iter()
                    .enumerate()
                    .map(|(j, &m)| {
                        let mb = BigInt::from(m);
                        let mut acc = BigInt::zero();
                        for (coef, val) in v.iter().zip(&values) {
                            acc += coef * BigInt::from(val[j]);
                        }
                        (((acc % &mb) + &mb) % &mb).to_u64().unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    /// Words in `R ∩ [F,F]` representing the torsion basis, when the
    /// exponents are small enough to write out.
    pub fn representative_words(&self, max_len: usize) -> Option<Vec<Word>> {
        let mut out = Vec::new();
        for v in &self.preimages {
            let mut w = Word::identity();
            for (coef, s) in v.iter().zip(&self.schreier.generator_words) {
                let k = coef.to_i64()?;
                if k.unsigned_abs() as usize * s.len() > max_len {
                    return None;
                }
                w = w.mul(&s.pow(k));
            }
            if w.len() > max_len {
                return None;
            }
            out.push(w);
        }
        Some(out)
    }
}

/// Evaluates a word in `L = G x_c A` with generator `i` sent to
/// `(gens[i], 0)`; returns the `A`-part, which is meaningful when the word
/// maps to the identity of `G`.
pub fn evaluate_through_section(g: &GroupTable, c: &Cochain, gens: &[usize], w: &Word) -> Vec<u64> {
    let moduli = c.moduli();
    let mut x = 0usize;
    let mut a = vec![0u64; moduli.len()];
    for l in w.letters() {
        let s = gens[l.gen()];
        let (y, b) = if l.is_inverse() {
            let si = g.inv(s);
            let cv = c.get(&[s, si]);
            (si, moduli.iter().zip(cv).map(|(&m, &v)| (m - v) % m).collect::<Vec<_>>())
        } else {
            (s, vec![0; moduli.len()])
        };
        let cxy = c.get(&[x, y]);
        for j in 0..moduli.len() {
            a[j] = (a[j] + b[j] + cxy[j]) % moduli[j];
        }
        x = g.mul(x, y);
    }
    a
}

/// `H_2(G, Z)` via the Hopf formula.
pub fn schur_multiplier(p: &Presentation, g: &GroupTable) -> Result<AbelianGroup> {
    Ok(HopfData::new(p, g)?.multiplier)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{group_table, parse_presentation};

    fn hopf(text: &str) -> HopfData {
        let p = parse_presentation(text).unwrap();
        let g = group_table(&p, 10_000).unwrap();
        HopfData::new(&p, &g).unwrap()
    }

    #[test]
    fn multipliers() {
        assert_eq!(hopf("group V\ngens a b\nrel a^2\nrel b^2\nrel [a,b]\n").factors(), &[2]);
        assert!(hopf("group Z7\ngens a\nrel a^7\n").multiplier().is_trivial());
        assert!(hopf("group Q8\ngens a b\nrel a^4\nrel a^2 b^-2\nrel b^-1 a b a\n").multiplier().is_trivial());
        assert_eq!(hopf("group A4\ngens a b\nrel a^2\nrel b^3\nrel (a b)^3\n").factors(), &[2]);
        assert_eq!(hopf("group D4\ngens a b\nrel a^4\nrel b^2\nrel (a b)^2\n").factors(), &[2]);
    }

    #[test]
    fn schur_cocycle_is_cocycle_with_identity_h() {
        let h = hopf("group Z4Z4\ngens a b\nrel a^4\nrel b^4\nrel [a,b]\n");
        let c = h.schur_cocycle();
        assert!(c.is_normalized());
        assert!(c.is_cocycle(h.table()));
        assert_eq!(h.h_map(&c), vec![vec![1]]);
    }

    #[test]
    fn representative_words_are_commutator_relations() {
        let h = hopf("group V\ngens a b\nrel a^2\nrel b^2\nrel [a,b]\n");
        let words = h.representative_words(10_000).unwrap();
        for w in words {
            assert!(w.exponent_sums(2).iter().all(|&e| e == 0));
            assert_eq!(h.table().evaluate(&w, h.table().generators()), 0);
        }
    }
}
