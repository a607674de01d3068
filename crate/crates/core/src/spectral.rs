//! Low-degree bookkeeping for the spectral sequence of a central
//! extension `A -> L -> Γ` with field coefficients: `E_2` dimensions,
//! `d_2^{01}`, the filtration of `H^2(L)` and the symmetrization map.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::central::CentralExtension;
use crate::extensions::hom::{abelian_coords, abelian_order};
use crate::extensions::pushforward::abelian_table;
use crate::extensions::transgression::transgression;
use crate::fp::smith::{smith_normal_form, IntegerMatrix};
use crate::fp::table::GroupTable;
use crate::homology::modular::{mod_smith, ModMatrix};
use crate::homology::module::is_prime;
use crate::homology::solve::CoboundarySolver;
use crate::homology::{cohomology, schur_multiplier, Cochain, CoefficientModule};

pub const MAX_TOTAL_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    Prime(u64),
    Rationals,
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn module(self) -> CoefficientModule {
        match self {
            Field::Prime(p) => CoefficientModule::PrimeField { p },
            Field::Rationals => CoefficientModule::Rationals,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "QQ" => Ok(Field::Rationals),
            _ => {
                let digits = s.trim_start_matches(['F', 'f']).trim_start_matches('_');
                let p = digits.parse().map_err(|_| Error::InvalidInput(format!("unknown field `{s}`")))?;
                Field::prime(p)
            }
        }
    }
}

fn check_size(e: &CentralExtension) -> Result<()> {
    let n = e.total().order();
    if n > MAX_TOTAL_ORDER {
        return Err(Error::CapExceeded(format!("|L| = {n} exceeds {MAX_TOTAL_ORDER}")));
    }
    Ok(())
}

fn dim(g: &GroupTable, field: Field, degree: usize) -> Result<usize> {
    Ok(cohomology(g, &field.module(), degree)?.dimension().unwrap_or(0))
}

/// Rank over `F_p` of a list of vectors of equal length.
pub fn rank_mod_p(vectors: &[Vec<u64>], p: u64) -> Result<usize> {
    let cols = vectors.first().map_or(0, Vec::len);
    if vectors.is_empty() || cols == 0 {
        return Ok(0);
    }
    let mut m = ModMatrix::zeros(vectors.len(), cols, p, 1)?;
    for (i, v) in vectors.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            m.set(i, j, x % p);
        }
    }
    Ok(mod_smith(m, false, false).pivots())
}

fn elements_of(moduli: &[u64], e: &CentralExtension) -> Vec<usize> {
    (0..abelian_order(moduli)).map(|i| e.embed(&abelian_coords(moduli, i))).collect()
}

/// `dim E_2^{pq}` for `p + q <= 2`, keyed `[E00, E10, E01, E20, E11, E02]`.
#[derive(Clone, Debug, Serialize)]
pub struct E2Page {
    pub field: Field,
    pub base_dims: [usize; 3],
    pub kernel_dims: [usize; 3],
    pub dims: [usize; 6],
    /// `E_2^{pq}` recomputed as `H^p(Γ, H^q(A))` with the module
    /// `H^q(A) = F^{d_q}` agrees with the product of dimensions.
    pub product_formula_holds: bool,
}

pub fn e2_page(e: &CentralExtension, field: Field) -> Result<E2Page> {
    check_size(e)?;
    let a = abelian_table(e.moduli());
    let mut base_dims = [0; 3];
    let mut kernel_dims = [0; 3];
    for d in 0..3 {
        base_dims[d] = dim(e.base(), field, d)?;
        kernel_dims[d] = dim(&a, field, d)?;
    }
    let bidegrees = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
    let dims = bidegrees.map(|(p, q)| base_dims[p] * kernel_dims[q]);
    let mut product_formula_holds = true;
    if let Field::Prime(prime) = field {
        for ((p, q), &d) in bidegrees.iter().zip(&dims) {
            let module = CoefficientModule::FiniteAbelian { invariant_factors: vec![prime; kernel_dims[*q]] };
            let order = cohomology(e.base(), &module, *p)?.order();
            product_formula_holds &= order == prime.pow(d as u32);
        }
    }
    Ok(E2Page { field, base_dims, kernel_dims, dims, product_formula_holds })
}

/// `d_2^{01}: H^1(A) -> H^2(Γ)` as a matrix with one column per basis
/// homomorphism of `Hom(A, F)`, in the coordinates of `H^2(Γ, F)`.
#[derive(Clone, Debug, Serialize)]
pub struct D2Map {
    pub field: Field,
    pub rows: usize,
    pub columns: Vec<Vec<u64>>,
    /// The same matrix computed as the transgression of the extension.
    pub transgression: Vec<Vec<u64>>,
}

impl D2Map {
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Prime(p) => rank_mod_p(&self.columns, p).unwrap_or(0),
            Field::Rationals => 0,
        }
    }

    pub fn matches_transgression(&self) -> bool {
        self.columns == self.transgression
    }
}

/// Computes `d_2^{01}` from a cochain on `L`: `x ∈ Hom(A,F)` extends to
/// `f(s(γ)a) = x(a)`, and `-δf` is constant on fibres of `L -> Γ`; the
/// class it descends to is `d_2(x)`.
pub fn d2_01(e: &CentralExtension, field: Field) -> Result<D2Map> {
    check_size(e)?;
    let Field::Prime(p) = field else {
        return Ok(D2Map { field, rows: 0, columns: vec![], transgression: vec![] });
    };
    let l = e.total();
    let g = e.base();
    let h2 = cohomology(g, &field.module(), 2)?;
    let tg = transgression(e, &field.module())?;
    let s = e.section();
    let proj = e.projection();
    let mut columns = Vec::new();
    for x in &tg.hom_generators {
        let f = Cochain::from_fn(1, l.order(), &[p], |t| {
            let a = e.kernel_coords(l.mul(l.inv(s[proj[t[0]]]), t[0])).expect("fibre element");
            x.apply(&a)
        });
        let df = f.coboundary(l);
        let z = Cochain::from_fn(2, g.order(), &[p], |t| {
            let v = df.get(&[s[t[0]], s[t[1]]])[0];
            vec![(p - v) % p]
        });
        for u in 0..l.order() {
            for w in 0..l.order() {
                if !(df.get(&[u, w])[0] + z.get(&[proj[u], proj[w]])[0]).is_multiple_of(p) {
                    return Err(Error::InvalidInput("δf is not inflated from the quotient".into()));
                }
            }
        }
        columns.push(h2.class_of(&z, g)?);
    }
    Ok(D2Map { field, rows: h2.generator_orders().len(), columns, transgression: tg.images.clone() })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub field: Field,
    pub h2_total: usize,
    /// `dim H^2(L)` from the Hopf multiplier and abelianization of `L`.
    pub h2_total_uct: usize,
    pub inflation: usize,
    pub middle: usize,
    pub restriction: usize,
    /// `dim H^2(Γ) - rank d_2^{01}`, which must equal `inflation`.
    pub inflation_expected: usize,
    pub e2_02: usize,
}

impl FiltrationReport {
    pub fn sums(&self) -> bool {
        self.inflation + self.middle + self.restriction == self.h2_total
    }

    pub fn consistent(&self) -> bool {
        self.sums()
            && self.h2_total == self.h2_total_uct
            && self.inflation == self.inflation_expected
            && self.restriction <= self.e2_02
    }
}

fn count_divisible(factors: &[u64], p: u64) -> usize {
    factors.iter().filter(|&&f| f % p == 0).count()
}

/// The pieces of `H^2(L)`: image of inflation, `ker d_2^{11}` computed
/// from cup products `u ∪ tg(x)` in `H^3(Γ)`, and image of restriction.
pub fn h2_filtration(e: &CentralExtension, field: Field) -> Result<FiltrationReport> {
    check_size(e)?;
    let Field::Prime(p) = field else {
        return Ok(FiltrationReport {
            field,
            h2_total: dim(e.total(), field, 2)?,
            h2_total_uct: 0,
            inflation: 0,
            middle: 0,
            restriction: 0,
            inflation_expected: 0,
            e2_02: 0,
        });
    };
    let l = e.total();
    let g = e.base();
    let module = field.module();
    let h2_l = cohomology(l, &module, 2)?;
    let h2_g = cohomology(g, &module, 2)?;

    let pres = l.presentation("L")?;
    let ab = crate::fp::abelian::abelianization(&pres);
    let mult = schur_multiplier(&pres, l)?;
    let h2_total_uct = count_divisible(mult.invariant_factors(), p) + count_divisible(ab.invariant_factors(), p);

    let on_l = CoboundarySolver::new(l, 2, &[p])?;
    let inflated: Vec<Vec<u64>> =
        h2_g.representatives().iter().map(|z| on_l.quotient_coords(&z.pullback(e.projection()))).collect();
    let inflation = rank_mod_p(&inflated, p)?;

    let a = abelian_table(e.moduli());
    let on_a = CoboundarySolver::new(&a, 2, &[p])?;
    let embed = elements_of(e.moduli(), e);
    let restricted: Vec<Vec<u64>> =
        h2_l.representatives().iter().map(|z| on_a.quotient_coords(&z.pullback(&embed))).collect();
    let restriction = rank_mod_p(&restricted, p)?;

    let d2 = d2_01(e, field)?;
    let inflation_expected = h2_g.generator_orders().len() - d2.rank();

    let h1_g = cohomology(g, &module, 1)?;
    let tg = transgression(e, &module)?;
    let middle_dim = h1_g.representatives().len() * tg.hom_generators.len();
    let middle = if middle_dim == 0 {
        0
    } else {
        let on_g3 = CoboundarySolver::new(g, 3, &[p])?;
        let mut cups = Vec::new();
        for u in h1_g.representatives() {
            for x in &tg.hom_generators {
                let z = tg.cochain(x)?;
                let cup = Cochain::from_fn(3, g.order(), &[p], |t| {
                    vec![u.get(&[t[0]])[0] * z.get(&[t[1], t[2]])[0] % p]
                });
                cups.push(on_g3.quotient_coords(&cup));
            }
        }
        middle_dim - rank_mod_p(&cups, p)?
    };

    let e2_02 = dim(&a, field, 2)?;
    Ok(FiltrationReport {
        field,
        h2_total: h2_l.generator_orders().len(),
        h2_total_uct,
        inflation,
        middle,
        restriction,
        inflation_expected,
        e2_02,
    })
}

/// `σ: Λ²V -> V⊗V`, `e_i∧e_j -> e_i⊗e_j - e_j⊗e_i`.
#[derive(Clone, Debug, Serialize)]
pub struct Symmetrization {
    pub n: usize,
    pub field: Field,
    /// One row per basis vector `e_i∧e_j` (`i < j`), indexed over `V⊗V`.
    pub matrix: Vec<Vec<i64>>,
    pub rank: usize,
    pub injective: bool,
}

pub fn symmetrization(n: usize, field: Field) -> Result<Symmetrization> {
    let mut matrix = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut row = vec![0i64; n * n];
            row[i * n + j] = 1;
            row[j * n + i] = -1;
            matrix.push(row);
        }
    }
    let rank = match field {
        _ if matrix.is_empty() => 0,
        Field::Rationals => {
            let m = IntegerMatrix::from_rows(n * n, &matrix);
            smith_normal_form(&m).rank()
        }
        Field::Prime(p) => {
            let rows: Vec<Vec<u64>> =
                matrix.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
            rank_mod_p(&rows, p)?
        }
    };
    Ok(Symmetrization { n, field, injective: rank == matrix.len(), matrix, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::catalog::extension;

    #[test]
    fn heisenberg_e2_dims() {
        let e = &extension("Heis3").unwrap().extension;
        let page = e2_page(e, Field::Prime(3)).unwrap();
        assert_eq!(page.dims, [1, 2, 1, 3, 2, 1]);
        assert!(page.product_formula_holds);
    }

    #[test]
    fn z4_over_z2_page_is_all_ones() {
        let e = &extension("Z4_over_Z2").unwrap().extension;
        assert_eq!(e2_page(e, Field::Prime(2)).unwrap().dims, [1; 6]);
        let d2 = d2_01(e, Field::Prime(2)).unwrap();
        assert_eq!(d2.rank(), 1);
        assert!(d2.matches_transgression());
    }

    #[test]
    fn rationals_are_degenerate() {
        let e = &extension("S3_split").unwrap().extension;
        assert_eq!(e2_page(e, Field::Rationals).unwrap().dims, [1, 0, 0, 0, 0, 0]);
        assert_eq!(h2_filtration(e, Field::Rationals).unwrap().h2_total, 0);
    }

    #[test]
    fn symmetrization_small_cases() {
        let s = symmetrization(2, Field::Rationals).unwrap();
        assert_eq!(s.matrix, vec![vec![0, 1, -1, 0]]);
        assert!(s.injective);
        assert!(symmetrization(0, Field::Rationals).unwrap().injective);
        assert!(symmetrization(1, Field::Rationals).unwrap().injective);
        assert_eq!(symmetrization(5, Field::Rationals).unwrap().rank, 10);
    }

    #[test]
    fn field_parsing() {
        assert_eq!("F3".parse::<Field>().unwrap(), Field::Prime(3));
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert!("F4".parse::<Field>().is_err());
    }
}
