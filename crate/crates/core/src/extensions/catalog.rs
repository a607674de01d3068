//! Named central extensions read from `data/extensions.txt`, plus a
//! generated family over the group catalog.

use super::central::{extension_from_cocycle, CentralExtension, Cocycle2};
use crate::catalog::{self, CatalogGroup};
use crate::error::{Error, Result};
use crate::fp::abelian::FiniteAbelian;
use crate::homology::{cohomology, Cochain, CoefficientModule, HopfData};

pub const EXTENSIONS_TEXT: &str = include_str!("../../../../data/extensions.txt");

#[derive(Clone, Debug)]
pub struct CatalogExtension {
    pub name: String,
    pub base: String,
    pub extension: CentralExtension,
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse { line, msg: format!("expected an integer, got `{s}`") })
}

fn abelian_coords(g: &CatalogGroup, line: usize) -> Result<FiniteAbelian> {
    if !g.table.is_abelian() {
        return Err(Error::Parse { line, msg: format!("{} is not abelian", g.name()) });
    }
    let all: Vec<usize> = (0..g.order()).collect();
    FiniteAbelian::new(&g.table, &all)
}

/// Builds the cocycle described by `terms` over `g` with kernel `moduli`.
pub fn cocycle_from_terms(g: &CatalogGroup, moduli: &[u64], terms: &str, line: usize) -> Result<Cochain> {
    let n = g.order();
    let mut c = Cochain::zero(2, n, moduli);
    for term in terms.split('+') {
        let words: Vec<&str> = term.split_whitespace().collect();
        let arg = |i: usize| -> Result<usize> {
            words.get(i).map_or(Ok(0), |s| parse_usize(s, line))
        };
        let slot = |j: usize| -> Result<usize> {
            if j >= moduli.len() {
                return Err(Error::Parse { line, msg: format!("kernel has no component {j}") });
            }
            Ok(j)
        };
        let t = match words.first().copied() {
            Some("zero") => Cochain::zero(2, n, moduli),
            Some("carry") => {
                let fa = abelian_coords(g, line)?;
                let (i, j) = (arg(1)?, slot(arg(2)?)?);
                let d = *fa.factors().get(i).ok_or(Error::Parse { line, msg: format!("no factor {i}") })?;
                Cochain::from_fn(2, n, moduli, |t| {
                    let mut v = vec![0; moduli.len()];
                    v[j] = u64::from(fa.coords(t[0]).unwrap()[i] + fa.coords(t[1]).unwrap()[i] >= d);
                    v
                })
            }
            Some("bilinear") => {
                let fa = abelian_coords(g, line)?;
                let (i, k, j) = (arg(1)?, arg(2)?, slot(arg(3)?)?);
                if i >= fa.factors().len() || k >= fa.factors().len() {
                    return Err(Error::Parse { line, msg: "bilinear index out of range".into() });
                }
                Cochain::from_fn(2, n, moduli, |t| {
                    let mut v = vec![0; moduli.len()];
                    v[j] = fa.coords(t[0]).unwrap()[i] * fa.coords(t[1]).unwrap()[k];
                    v
                })
            }
            Some("class") => {
                let module = CoefficientModule::FiniteAbelian { invariant_factors: moduli.to_vec() };
                let h2 = cohomology(&g.table, &module, 2)?;
                let coords: Vec<u64> = words
                    .get(1)
                    .ok_or(Error::Parse { line, msg: "class needs coordinates".into() })?
                    .split(',')
                    .map(|s| parse_usize(s, line).map(|x| x as u64))
                    .collect::<Result<_>>()?;
                if coords.len() != h2.generator_orders().len() {
                    return Err(Error::Parse {
                        line,
                        msg: format!("H^2 has {} generators, got {} coordinates", h2.generator_orders().len(), coords.len()),
                    });
                }
                h2.cochain(&coords)
            }
            Some("schur") => {
                let hopf = HopfData::new(&g.presentation, &g.table)?;
                if hopf.factors() != moduli {
                    return Err(Error::Parse { line, msg: format!("Schur multiplier is {}", hopf.multiplier()) });
                }
                hopf.schur_cocycle()
            }
            other => return Err(Error::Parse { line, msg: format!("unknown cocycle term {other:?}") }),
        };
        c = c.add(&t);
    }
    Ok(c)
}

/// Parses lines `name base kernel terms`, where `base` names a catalog
/// group and `kernel` lists cyclic orders.
pub fn parse_extensions(text: &str) -> Result<Vec<CatalogExtension>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap().trim();
        if text.is_empty() {
            continue;
        }
        let mut parts = text.split_whitespace();
        let (Some(name), Some(base), Some(kernel)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse { line, msg: "expected `name base kernel cocycle`".into() });
        };
        let rest = parts.collect::<Vec<_>>().join(" ");
        let g = catalog::group(base)?;
        let moduli: Vec<u64> = kernel.split(',').map(|s| parse_usize(s, line).map(|x| x as u64)).collect::<Result<_>>()?;
        let c = cocycle_from_terms(g, &moduli, &rest, line)?;
        let extension = Cocycle2::new(&g.table, c)
            .and_then(|c| extension_from_cocycle(&c))
            .map_err(|e| Error::Parse { line, msg: format!("{name}: {e}") })?;
        out.push(CatalogExtension { name: name.to_string(), base: base.to_string(), extension });
    }
    Ok(out)
}

/// The named extensions, in file order.
pub fn extensions() -> Result<&'static [CatalogExtension]> {
    static CACHE: std::sync::OnceLock<Result<Vec<CatalogExtension>>> = std::sync::OnceLock::new();
    CACHE.get_or_init(|| parse_extensions(EXTENSIONS_TEXT)).as_ref().map(|v| v.as_slice()).map_err(Clone::clone)
}

pub fn extension(name: &str) -> Result<&'static CatalogExtension> {
    extensions()?.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// For every catalog group and kernel `Z/p` with `|Γ|·p <= max_total`: the
/// split extension and the one for each generator of `H^2(Γ, Z/p)`.
pub fn generated_extensions(max_total: usize, primes: &[u64]) -> Result<Vec<CatalogExtension>> {
    let mut out = Vec::new();
    for g in catalog::groups()? {
        for &p in primes {
            if g.order() * p as usize > max_total {
                continue;
            }
            let h2 = cohomology(&g.table, &CoefficientModule::cyclic(p), 2)?;
            let mut cocycles = vec![("split".to_string(), Cochain::zero(2, g.order(), &[p]))];
            for (i, r) in h2.representatives().iter().enumerate() {
                cocycles.push((format!("class{i}"), r.clone()));
            }
            for (tag, c) in cocycles {
                let extension = extension_from_cocycle(&Cocycle2::new(&g.table, c)?)?;
                out.push(CatalogExtension { name: format!("{}_Z{p}_{tag}", g.name()), base: g.name().to_string(), extension });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_extensions_load() {
        let es = extensions().unwrap();
        assert!(es.len() >= 10);
        let order = |n: &str| extension(n).unwrap().extension.total().order();
        assert_eq!(order("Heis3"), 27);
        assert_eq!(order("A4_by_Z2"), 24);
        let q8 = &catalog::group("Q8").unwrap().table;
        assert!(extension("Q8_over_V4").unwrap().extension.total().is_isomorphic(q8));
        let d8 = &catalog::group("D8").unwrap().table;
        assert!(extension("Heis2").unwrap().extension.total().is_isomorphic(d8));
        assert!(extension("Z4_over_Z2").unwrap().extension.total().is_isomorphic(&catalog::group("Z4").unwrap().table));
    }
}
