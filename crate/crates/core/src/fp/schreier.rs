//! Reidemeister–Schreier presentations of finite-index subgroups.

use super::coset::CosetTable;
use super::presentation::Presentation;
use super::table::GroupTable;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// Subgroup presentation on Schreier generators `u_c g u_{cg}^-1`, one per
/// edge of the coset graph outside a breadth-first spanning tree.
#[derive(Clone, Debug)]
pub struct SchreierPresentation {
    pub presentation: Presentation,
    /// Each Schreier generator as a word in the parent generators.
    pub generator_words: Vec<Word>,
    /// Transversal word `u_c` of every coset.
    pub transversal: Vec<Word>,
    /// `(coset, generator)` of every Schreier generator.
    pub edges: Vec<(usize, usize)>,
    edge_generator: Vec<Option<usize>>,
    table: CosetTable,
}

impl SchreierPresentation {
    pub fn coset_table(&self) -> &CosetTable {
        &self.table
    }

    pub fn schreier_generator(&self, coset: usize, generator: usize) -> Option<usize> {
        self.edge_generator[coset * self.table.generator_count() + generator]
    }

    /// Rewrites `w` read from `coset` as a word in the Schreier generators;
    /// also returns the coset where it ends.
    pub fn rewrite(&self, coset: usize, w: &Word) -> (Word, usize) {
        let mut out = Word::identity();
        let mut c = coset;
        for &l in w.letters() {
            if l.is_inverse() {
                let d = self.table.image(c, l);
                if let Some(s) = self.schreier_generator(d, l.gen()) {
                    out = out.mul(&Word::letter(Letter::new(s, true)));
                }
                c = d;
            } else {
                if let Some(s) = self.schreier_generator(c, l.gen()) {
                    out = out.mul(&Word::gen(s));
                }
                c = self.table.image(c, l);
            }
        }
        (out, c)
    }
}

/// Builds the Reidemeister–Schreier presentation of the subgroup whose
/// coset action is `table`.
pub fn reidemeister_schreier(p: &Presentation, table: &CosetTable) -> Result<SchreierPresentation> {
    let ngens = p.generator_count();
    if table.generator_count() != ngens {
        return Err(Error::InvalidInput("coset table and presentation disagree on generators".into()));
    }
    let n = table.index();
    for c in 0..n {
        for col in 0..2 * ngens {
            let l = Letter::from_column(col);
            let d = table.image(c, l);
            if d >= n || table.image(d, l.inverse()) != c {
                return Err(Error::NotClosed(format!("coset {c} has an inconsistent entry")));
            }
        }
    }
    let mut transversal: Vec<Option<Word>> = vec![None; n];
    let mut tree_edge = vec![false; n * ngens];
    transversal[0] = Some(Word::identity());
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let c = queue[i];
        for col in 0..2 * ngens {
            let l = Letter::from_column(col);
            let d = table.image(c, l);
            if transversal[d].is_none() {
                transversal[d] = Some(transversal[c].as_ref().unwrap().mul(&Word::letter(l)));
                if l.is_inverse() {
                    tree_edge[d * ngens + l.gen()] = true;
                } else {
                    tree_edge[c * ngens + l.gen()] = true;
                }
                queue.push(d);
            }
        }
        i += 1;
    }
    if queue.len() != n {
        return Err(Error::NotClosed("coset action is not transitive".into()));
    }
    let transversal: Vec<Word> = transversal.into_iter().map(Option::unwrap).collect();
    let mut edge_generator = vec![None; n * ngens];
    let mut edges = Vec::new();
    let mut generator_words = Vec::new();
    for c in 0..n {
        for g in 0..ngens {
            if !tree_edge[c * ngens + g] {
                let d = table.image(c, Letter::new(g, false));
                edge_generator[c * ngens + g] = Some(edges.len());
                edges.push((c, g));
                generator_words.push(transversal[c].mul(&Word::gen(g)).mul(&transversal[d].inverse()));
            }
        }
    }
    let names: Vec<String> = edges.iter().map(|(c, g)| format!("s{c}_{}", p.generators()[*g])).collect();
    let mut sp = SchreierPresentation {
        presentation: Presentation::new(p.name(), Vec::new(), Vec::new())?,
        generator_words,
        transversal,
        edges,
        edge_generator,
        table: table.clone(),
    };
    let mut rels = Vec::new();
    for c in 0..n {
        for r in p.relators() {
            let (w, end) = sp.rewrite(c, r);
            if end != c {
                return Err(Error::NotClosed(format!("relator does not close at coset {c}")));
            }
            if !w.is_identity() {
                rels.push(w.cyclically_reduced());
            }
        }
    }
    rels.sort();
    rels.dedup();
    sp.presentation = Presentation::new(format!("{}_sub", p.name()), names, rels)?;
    Ok(sp)
}

/// Right regular action of a table group on itself, as a coset table over
/// the trivial subgroup.
pub fn regular_action(g: &GroupTable) -> CosetTable {
    let perms: Vec<Vec<usize>> =
        g.generators().iter().map(|&s| (0..g.order()).map(|x| g.mul(x, s)).collect()).collect();
    CosetTable::from_permutations(&perms).expect("right multiplication is a permutation")
}

/// Coset action of a table group on the right cosets of `subgroup`.
pub fn coset_action(g: &GroupTable, subgroup: &[usize]) -> Result<CosetTable> {
    if !g.is_subgroup(subgroup) {
        return Err(Error::InvalidInput("not a subgroup".into()));
    }
    let n = g.order();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    // BFS from the subgroup so coset 0 is H
    let mut reps: Vec<usize> = Vec::new();
    let mut assign = |x: usize, label: &mut Vec<usize>, reps: &mut Vec<usize>| {
        if label[x] == usize::MAX {
            for &h in subgroup {
                label[g.mul(h, x)] = count;
            }
            reps.push(x);
            count += 1;
        }
    };
    assign(0, &mut label, &mut reps);
    let mut i = 0;
    while i < reps.len() {
        let x = reps[i];
        for &s in g.generators() {
            assign(g.mul(x, s), &mut label, &mut reps);
        }
        i += 1;
    }
    if label.contains(&usize::MAX) {
        return Err(Error::NotClosed("generators do not generate the group".into()));
    }
    let perms: Vec<Vec<usize>> =
        g.generators().iter().map(|&s| reps.iter().map(|&x| label[g.mul(x, s)]).collect()).collect();
    CosetTable::from_permutations(&perms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::abelian::abelianization;
    use crate::fp::coset::{enumerate_cosets, group_table};
    use crate::fp::parse::parse_presentation;

    #[test]
    fn s3_index_two() {
        let p = parse_presentation("group S3\ngens a b\nrel a^2\nrel b^2\nrel (a b)^3\n").unwrap();
        let t = enumerate_cosets(&p, &[Word::from_signed(&[1, 2])], 100).unwrap();
        let sp = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(abelianization(&sp.presentation).invariant_factors(), &[3]);
        let g = group_table(&p, 100).unwrap();
        assert_eq!(g.derived_subgroup().len(), 3);
    }

    #[test]
    fn whole_group() {
        let p = parse_presentation("group Q8\ngens a b\nrel a^4\nrel a^2 b^-2\nrel b^-1 a b a\n").unwrap();
        let t = enumerate_cosets(&p, &[Word::gen(0), Word::gen(1)], 100).unwrap();
        let sp = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(sp.presentation.generator_count(), 2);
        assert_eq!(abelianization(&sp.presentation), abelianization(&p));
    }

    #[test]
    fn infinite_cyclic_index_two() {
        let p = parse_presentation("group Z\ngens a\n").unwrap();
        let t = CosetTable::from_permutations(&[vec![1, 0]]).unwrap();
        let sp = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(sp.presentation.generator_count(), 1);
        assert!(sp.presentation.relators().is_empty());
        assert_eq!(sp.generator_words[0].to_signed(), vec![1, 1]);
    }

    #[test]
    fn generator_words_lie_in_subgroup() {
        let p = parse_presentation("group A4\ngens a b\nrel a^2\nrel b^3\nrel (a b)^3\n").unwrap();
        let g = group_table(&p, 100).unwrap();
        let d = g.derived_subgroup();
        let t = coset_action(&g, &d).unwrap();
        let sp = reidemeister_schreier(&p, &t).unwrap();
        for w in &sp.generator_words {
            assert!(d.contains(&g.evaluate(w, g.generators())));
        }
        assert_eq!(abelianization(&sp.presentation).invariant_factors(), &[2, 2]);
    }
}
