//! The non-abelian exterior square `Γ∧Γ`, the commutator map onto
//! `[Γ,Γ]`, the maps `π̄` and `h` attached to a central extension, and
//! Schur coverings.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::extensions::central::{extension_from_cocycle, shifted_section, CentralExtension, Cocycle2};
use crate::extensions::hom::Hom;
use crate::fp::abelian::{AbelianGroup, FiniteAbelian};
use crate::fp::coset::group_table;
use crate::fp::presentation::Presentation;
use crate::fp::table::GroupTable;
use crate::fp::word::{Letter, Word};
use crate::homology::HopfData;

pub const MAX_SOURCE_ORDER: usize = 32;
pub const MAX_COSETS: usize = 200_000;

#[derive(Clone, Debug)]
pub struct ExteriorSquare {
    source: GroupTable,
    presentation: Presentation,
    realized: GroupTable,
    /// Element of `realized` for the symbol `x∧y`, at index `x·|Γ| + y`.
    symbols: Vec<usize>,
    /// Symbol index of each generator of `realized`.
    generator_symbols: Vec<usize>,
    id_bar: Vec<usize>,
    kernel: Vec<usize>,
}

fn symbol_name(x: usize, y: usize) -> String {
    format!("w{x}_{y}")
}

/// The presentation on all symbols `x∧y` with the defining relations.
pub fn exterior_square_presentation(g: &GroupTable) -> Result<Presentation> {
    let n = g.order();
    let s = |x: usize, y: usize| x * n + y;
    let word = |ls: &[(usize, bool)]| Word::from_letters(ls.iter().map(|&(i, inv)| Letter::new(i, inv)));
    let mut rels = Vec::with_capacity(2 * n * n * n + n);
    for x in 0..n {
        rels.push(word(&[(s(x, x), false)]));
        for a in 0..n {
            for y in 0..n {
                // (x a ∧ y) = (x a x^-1 ∧ x y x^-1)(x ∧ y)
                rels.push(word(&[
                    (s(g.mul(x, a), y), true),
                    (s(g.conjugate(x, a), g.conjugate(x, y)), false),
                    (s(x, y), false),
                ]));
                // (x ∧ y a) = (x ∧ y)(y x y^-1 ∧ y a y^-1)
                rels.push(word(&[
                    (s(x, g.mul(y, a)), true),
                    (s(x, y), false),
                    (s(g.conjugate(y, x), g.conjugate(y, a)), false),
                ]));
            }
        }
    }
    rels.retain(|w| !w.cyclically_reduced().is_identity());
    rels.sort();
    rels.dedup();
    let names = (0..n * n).map(|i| symbol_name(i / n, i % n)).collect();
    Presentation::new("exterior_square", names, rels)
}

pub fn exterior_square(g: &GroupTable) -> Result<ExteriorSquare> {
    let n = g.order();
    if n > MAX_SOURCE_ORDER {
        return Err(Error::CapExceeded(format!("exterior square needs |G| <= {MAX_SOURCE_ORDER}, got {n}")));
    }
    let presentation = exterior_square_presentation(g)?;
    let (small, map) = presentation.eliminate_short_relators();
    let realized = group_table(&small, MAX_COSETS)?;
    let symbols: Vec<usize> = map.iter().map(|w| realized.evaluate(w, realized.generators())).collect();

    let index: HashMap<&str, usize> =
        presentation.generators().iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let generator_symbols: Vec<usize> = small.generators().iter().map(|name| index[name.as_str()]).collect();
    let images: Vec<usize> = generator_symbols.iter().map(|&i| g.commutator(i / n, i % n)).collect();
    let id_bar = realized
        .extend_homomorphism(&images, g)
        .ok_or_else(|| Error::InvalidInput("commutator map does not factor through the exterior square".into()))?;
    let kernel = (0..realized.order()).filter(|&x| id_bar[x] == 0).collect();
    Ok(ExteriorSquare { source: g.clone(), presentation, realized, symbols, generator_symbols, id_bar, kernel })
}

impl ExteriorSquare {
    pub fn source(&self) -> &GroupTable {
        &self.source
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn realized(&self) -> &GroupTable {
        &self.realized
    }

    pub fn order(&self) -> usize {
        self.realized.order()
    }

    pub fn symbol(&self, x: usize, y: usize) -> usize {
        self.symbols[x * self.source.order() + y]
    }

    pub fn id_bar(&self) -> &[usize] {
        &self.id_bar
    }

    /// Elements of `ker(id_bar)`.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    /// Checks the three defining relations over all of `Γ³` in the
    /// realized group, and `id_bar(x∧y) = [x,y]`.
    pub fn check_relations(&self) -> bool {
        let g = &self.source;
        let l = &self.realized;
        let n = g.order();
        let w = |x, y| self.symbol(x, y);
        (0..n).all(|x| {
            w(x, x) == 0
                && (0..n).all(|y| {
                    self.id_bar[w(x, y)] == g.commutator(x, y)
                        && (0..n).all(|a| {
                            w(g.mul(x, a), y) == l.mul(w(g.conjugate(x, a), g.conjugate(x, y)), w(x, y))
                                && w(x, g.mul(y, a)) == l.mul(w(x, y), w(g.conjugate(y, x), g.conjugate(y, a)))
                        })
                })
        })
    }

    /// Image of `id_bar`, which should be the derived subgroup.
    pub fn id_bar_image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.id_bar.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn summary_json(&self) -> serde_json::Value {
        json!({
            "source_order": self.source.order(),
            "extsq_order": self.order(),
            "kernel_invariant_factors": miller_kernel(self).invariant_factors(),
        })
    }
}

/// `ker(id_bar)` as an abstract abelian group.
pub fn miller_kernel(e: &ExteriorSquare) -> AbelianGroup {
    let fa = FiniteAbelian::new(&e.realized, &e.kernel).expect("kernel of id_bar is central");
    AbelianGroup::from_cyclic(fa.factors())
}

/// `[s(x), s(y)]` in the total group, for the extension's own section.
pub fn pi_bar(ext: &CentralExtension, x: usize, y: usize) -> usize {
    pi_bar_with_section(ext, ext.section(), x, y)
}

pub fn pi_bar_with_section(ext: &CentralExtension, section: &[usize], x: usize, y: usize) -> usize {
    ext.total().commutator(section[x], section[y])
}

/// Compares `π̄` on all of `Γ²` for `trials` random sections against the
/// canonical one.
pub fn pi_bar_section_independent(ext: &CentralExtension, trials: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ext.base().order();
    (0..trials).all(|_| {
        let shift: Vec<Vec<u64>> =
            (0..n).map(|x| ext.moduli().iter().map(|&m| if x == 0 { 0 } else { rng.gen_range(0..m) }).collect()).collect();
        let s = shifted_section(ext, &shift);
        (0..n).all(|x| (0..n).all(|y| pi_bar_with_section(ext, &s, x, y) == pi_bar(ext, x, y)))
    })
}

/// `π̄` as a homomorphism from the realized exterior square into `L`.
pub fn pi_bar_homomorphism(e: &ExteriorSquare, ext: &CentralExtension) -> Result<Vec<usize>> {
    if ext.base().order() != e.source.order() {
        return Err(Error::DimensionMismatch("extension is over a different group".into()));
    }
    let n = e.source.order();
    let images: Vec<usize> = e.generator_symbols.iter().map(|&i| pi_bar(ext, i / n, i % n)).collect();
    e.realized
        .extend_homomorphism(&images, ext.total())
        .ok_or_else(|| Error::InvalidInput("commutators of the section do not satisfy the exterior relations".into()))
}

pub fn hopf_data(g: &GroupTable) -> Result<HopfData> {
    HopfData::new(&g.presentation("G")?, g)
}

/// `h: H_2(Γ,Z) -> A` on the torsion basis of the Hopf formula.
pub fn h_of_extension(hopf: &HopfData, ext: &CentralExtension) -> Result<Hom> {
    Hom::new(hopf.factors(), ext.moduli(), hopf.h_map(ext.cocycle()))
}

/// The same map read off the exterior square: `π̄_ext` on `ker(id_bar)`,
/// composed with the inverse of `π̄` for a Schur covering, which
/// identifies `ker(id_bar)` with the Hopf basis.
pub fn h_via_exterior_square(e: &ExteriorSquare, cover: &CentralExtension, ext: &CentralExtension) -> Result<Hom> {
    let to_cover = pi_bar_homomorphism(e, cover)?;
    let to_ext = pi_bar_homomorphism(e, ext)?;
    let h2 = cover.moduli();
    let mut images = Vec::with_capacity(h2.len());
    for i in 0..h2.len() {
        let target: Vec<u64> = (0..h2.len()).map(|j| u64::from(i == j)).collect();
        let k = e
            .kernel
            .iter()
            .find(|&&k| cover.kernel_coords(to_cover[k]).as_deref() == Some(&target[..]))
            .ok_or_else(|| Error::InvalidInput("π̄ of the covering is not onto H_2".into()))?;
        let v = ext
            .kernel_coords(to_ext[*k])
            .ok_or_else(|| Error::InvalidInput("π̄ does not send ker(id_bar) into the kernel".into()))?;
        images.push(v);
    }
    Hom::new(h2, ext.moduli(), images)
}

/// Central extension by `H_2` classified by the Hopf torsion cocycle.
pub fn schur_covering(hopf: &HopfData) -> Result<CentralExtension> {
    extension_from_cocycle(&Cocycle2::new(hopf.table(), hopf.schur_cocycle())?)
}
