use serde::{Deserialize, Serialize};

use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// A finite presentation `<generators | relators>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    name: String,
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(name: impl Into<String>, generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len();
        for (i, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_gen() {
                if g >= n {
                    return Err(Error::InvalidInput(format!(
                        "relator {i} uses generator {g} but only {n} generators exist"
                    )));
                }
            }
        }
        let relators = relators.into_iter().filter(|r| !r.is_identity()).collect();
        Ok(Presentation { name: name.into(), generators, relators })
    }

    /// Convenience constructor from signed-index relators.
    pub fn from_signed(name: &str, generators: &[&str], relators: &[&[i32]]) -> Result<Self> {
        Presentation::new(
            name,
            generators.iter().map(|s| s.to_string()).collect(),
            relators.iter().map(|r| Word::from_signed(r)).collect(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut rels = self.relators.clone();
        rels.extend(extra);
        Presentation::new(self.name.clone(), self.generators.clone(), rels)
    }

    /// Relator exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| r.exponent_sums(self.generators.len())).collect()
    }

    /// Serializes to the `.grp` text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("group {}\ngens {}\n", self.name, self.generators.join(" "));
        for r in &self.relators {
            s.push_str("rel ");
            s.push_str(&r.display_with(&self.generators));
            s.push('\n');
        }
        s
    }

    /// Tietze moves that only remove generators: a relator that is
    /// cyclically a single letter kills that generator, and one of the form
    /// `x^e y^f` with `x != y` expresses the later generator through the
    /// earlier one. Returns the smaller presentation together with the image
    /// of every original generator as a word in the new generators.
    pub fn eliminate_short_relators(&self) -> (Presentation, Vec<Word>) {
        let n = self.generators.len();
        // images[g] in terms of original generators; None means g survives.
        let mut images: Vec<Option<Word>> = vec![None; n];
        let mut rels: Vec<Word> = self.relators.iter().map(|r| r.cyclically_reduced()).collect();
        loop {
            let mut changed = false;
            for r in rels.iter() {
                let r = r.cyclically_reduced();
                let ls = r.letters();
                let kill = match ls.len() {
                    1 => Some((ls[0].gen(), Word::identity())),
                    2 if ls[0].gen() != ls[1].gen() => {
                        let (a, b) = (ls[0], ls[1]);
                        // a b = 1  =>  later generator expressed through the earlier one
                        if a.gen() > b.gen() {
                            // a = b^-1
                            let img = Word::letter(b.inverse());
                            let img = if a.is_inverse() { img.inverse() } else { img };
                            Some((a.gen(), img))
                        } else {
                            // b = a^-1
                            let img = Word::letter(a.inverse());
                            let img = if b.is_inverse() { img.inverse() } else { img };
                            Some((b.gen(), img))
                        }
                    }
                    _ => None,
                };
                if let Some((g, img)) = kill {
                    if images[g].is_none() {
                        images[g] = Some(img);
                        changed = true;
                        break;
                    }
                }
            }
            if !changed {
                break;
            }
            let subst: Vec<Word> =
                (0..n).map(|g| images[g].clone().unwrap_or_else(|| Word::gen(g))).collect();
            // resolve chains so every image only uses surviving generators
            for g in 0..n {
                if let Some(img) = images[g].clone() {
                    let mut cur = img;
                    for _ in 0..n {
                        let next = cur.substitute(&subst);
                        if next == cur {
                            break;
                        }
                        cur = next;
                    }
                    images[g] = Some(cur);
                }
            }
            let subst: Vec<Word> =
                (0..n).map(|g| images[g].clone().unwrap_or_else(|| Word::gen(g))).collect();
            let mut next: Vec<Word> = Vec::new();
            for r in &rels {
                let w = r.substitute(&subst).cyclically_reduced();
                if !w.is_identity() {
                    next.push(w);
                }
            }
            next.sort();
            next.dedup();
            rels = next;
        }
        let survivors: Vec<usize> = (0..n).filter(|&g| images[g].is_none()).collect();
        let mut renumber = vec![usize::MAX; n];
        for (i, &g) in survivors.iter().enumerate() {
            renumber[g] = i;
        }
        let rename = |w: &Word| -> Word {
            Word::from_letters(
                w.letters().iter().map(|l| Letter::new(renumber[l.gen()], l.is_inverse())),
            )
        };
        let map: Vec<Word> = (0..n)
            .map(|g| match &images[g] {
                None => Word::gen(renumber[g]),
                Some(img) => rename(img),
            })
            .collect();
        let relators: Vec<Word> = rels.iter().map(rename).collect();
        let generators = survivors.iter().map(|&g| self.generators[g].clone()).collect();
        let p = Presentation { name: self.name.clone(), generators, relators };
        (p, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_generator() {
        assert!(Presentation::from_signed("bad", &["a"], &[&[1, 2]]).is_err());
    }

    #[test]
    fn drops_trivial_relators() {
        let p = Presentation::from_signed("z", &["a"], &[&[1, -1], &[1, 1]]).unwrap();
        assert_eq!(p.relators().len(), 1);
    }

    #[test]
    fn eliminates_generators_from_short_relators() {
        // <a,b,c | b, a c^-1, a^3>  ->  <a | a^3>
        let p = Presentation::from_signed("t", &["a", "b", "c"], &[&[2], &[1, -3], &[1, 1, 1]]).unwrap();
        let (q, map) = p.eliminate_short_relators();
        assert_eq!(q.generator_count(), 1);
        assert_eq!(q.relators().len(), 1);
        assert_eq!(q.relators()[0].to_signed(), vec![1, 1, 1]);
        assert_eq!(map[1], Word::identity());
        assert_eq!(map[2], Word::gen(0));
    }
}
