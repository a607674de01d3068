//! The bundled group catalog: every group of order at most 16 as a
//! presentation, realized by coset enumeration on first use.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fp::{group_table, parse_presentations, GroupTable, Presentation};

pub const GROUPS_TEXT: &str = include_str!("../../../data/groups.grp");

const MAX_COSETS: usize = 100_000;

#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub presentation: Presentation,
    pub table: GroupTable,
}

impl CatalogGroup {
    pub fn name(&self) -> &str {
        self.presentation.name()
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    /// Realizes a presentation by coset enumeration.
    pub fn from_presentation(presentation: Presentation) -> Result<Self> {
        let table = group_table(&presentation, MAX_COSETS)?;
        Ok(CatalogGroup { presentation, table })
    }
}

fn load() -> Result<Vec<CatalogGroup>> {
    parse_presentations(GROUPS_TEXT)?.into_iter().map(CatalogGroup::from_presentation).collect()
}

/// All catalog groups in file order.
pub fn groups() -> Result<&'static [CatalogGroup]> {
    static CACHE: OnceLock<Result<Vec<CatalogGroup>>> = OnceLock::new();
    CACHE.get_or_init(load).as_ref().map(|v| v.as_slice()).map_err(Clone::clone)
}

pub fn groups_up_to(order: usize) -> Result<Vec<&'static CatalogGroup>> {
    Ok(groups()?.iter().filter(|g| g.order() <= order).collect())
}

pub fn group(name: &str) -> Result<&'static CatalogGroup> {
    groups()?.iter().find(|g| g.name() == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_counts() {
        let gs = groups().unwrap();
        let mut counts = [0usize; 17];
        for g in gs {
            counts[g.order()] += 1;
        }
        assert_eq!(counts[1..], [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]);
        assert_eq!(group("A4").unwrap().table.derived_subgroup().len(), 4);
    }

    #[test]
    fn groups_of_equal_order_are_pairwise_distinct() {
        let gs = groups().unwrap();
        for (i, a) in gs.iter().enumerate() {
            for b in &gs[i + 1..] {
                if a.order() == b.order() {
                    assert!(!a.table.is_isomorphic(&b.table), "{} ~ {}", a.name(), b.name());
                }
            }
        }
    }
}
