//! Felsch-style Todd–Coxeter coset enumeration.

use std::collections::VecDeque;

use serde::Serialize;

use super::presentation::Presentation;
use super::table::{GroupTable, MAX_TABLE_ORDER};
use super::word::{Letter, Word};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Closed coset table in standard form: coset 0 is the subgroup, and
/// `image(c, l)` is the coset `c·l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    ngens: usize,
    index: usize,
    table: Vec<u32>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn generator_count(&self) -> usize {
        self.ngens
    }

    #[inline]
    pub fn image(&self, coset: usize, l: Letter) -> usize {
        self.table[coset * 2 * self.ngens + l.column()] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.image(c, l))
    }

    /// Builds a table from generator permutations, checking closure.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let ngens = perms.len();
        let index = perms.first().map_or(1, |p| p.len());
        let mut table = vec![NONE; index * 2 * ngens];
        for (g, p) in perms.iter().enumerate() {
            if p.len() != index {
                return Err(Error::NotClosed("permutations of different lengths".into()));
            }
            for (c, &d) in p.iter().enumerate() {
                if d >= index || table[d * 2 * ngens + 2 * g + 1] != NONE {
                    return Err(Error::NotClosed(format!("generator {g} is not a permutation")));
                }
                table[c * 2 * ngens + 2 * g] = d as u32;
                table[d * 2 * ngens + 2 * g + 1] = c as u32;
            }
        }
        Ok(CosetTable { ngens, index, table })
    }

    /// Permutation induced by each generator.
    pub fn permutations(&self) -> Vec<Vec<usize>> {
        (0..self.ngens)
            .map(|g| (0..self.index).map(|c| self.image(c, Letter::new(g, false))).collect())
            .collect()
    }

    /// Whether every relator closes at every coset.
    pub fn satisfies(&self, relators: &[Word]) -> bool {
        (0..self.index).all(|c| relators.iter().all(|r| self.trace(c, r) == c))
    }
}

/// Outcome of an enumeration: the regular action gives a group table, any
/// other subgroup gives the coset action.
#[derive(Clone, Debug)]
pub enum Enumeration {
    Group(GroupTable),
    Cosets(CosetTable),
}

struct Felsch<'a> {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    max_cosets: usize,
    live: usize,
    // cyclic conjugates of relators and their inverses, by first column
    by_first: Vec<Vec<Vec<usize>>>,
    deductions: Vec<(usize, usize)>,
    queue: VecDeque<usize>,
    relators: &'a [Word],
}

impl<'a> Felsch<'a> {
    fn new(p: &'a Presentation, max_cosets: usize) -> Self {
        let ncols = 2 * p.generator_count();
        let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); ncols];
        let mut seen = std::collections::HashSet::new();
        for r in p.relators() {
            let r = r.cyclically_reduced();
            for w in [r.clone(), r.inverse()] {
                let cols: Vec<usize> = w.letters().iter().map(|l| l.column()).collect();
                for s in 0..cols.len() {
                    let rot: Vec<usize> = cols[s..].iter().chain(&cols[..s]).copied().collect();
                    if seen.insert(rot.clone()) {
                        by_first[rot[0]].push(rot);
                    }
                }
            }
        }
        Felsch {
            ncols,
            table: vec![NONE; ncols],
            parent: vec![0],
            max_cosets,
            live: 1,
            by_first,
            deductions: Vec::new(),
            queue: VecDeque::new(),
            relators: p.relators(),
        }
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, d: u32) {
        self.table[c * self.ncols + x] = d;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }

    /// Renumbers live cosets compactly, preserving their order. Returns the
    /// new index of `keep`.
    fn compact(&mut self, keep: usize) -> usize {
        let n = self.allocated();
        let mut new_index = vec![NONE; n];
        let mut k = 0u32;
        for c in 0..n {
            if self.is_live(c) {
                new_index[c] = k;
                k += 1;
            }
        }
        let mut table = Vec::with_capacity(k as usize * self.ncols);
        for c in 0..n {
            if self.is_live(c) {
                for x in 0..self.ncols {
                    let d = self.get(c, x);
                    table.push(if d == NONE { NONE } else { new_index[d as usize] });
                }
            }
        }
        self.table = table;
        self.parent = (0..k).collect();
        self.deductions.clear();
        new_index[keep] as usize
    }

    fn new_coset(&mut self) -> Option<usize> {
        if self.allocated() >= self.max_cosets {
            return None;
        }
        let c = self.allocated();
        self.parent.push(c as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.live += 1;
        Some(c)
    }

    fn define(&mut self, c: usize, x: usize) -> Option<usize> {
        let d = self.new_coset()?;
        self.set(c, x, d as u32);
        self.set(d, x ^ 1, c as u32);
        self.deductions.push((c, x));
        Some(d)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
            self.live -= 1;
            self.queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                if self.get(d, x ^ 1) as usize == g {
                    self.set(d, x ^ 1, NONE);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx as usize);
                } else if self.get(nu, x ^ 1) != NONE {
                    let t = self.get(nu, x ^ 1) as usize;
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu as u32);
                    self.set(nu, x ^ 1, mu as u32);
                    self.deductions.push((mu, x));
                }
            }
        }
    }

    /// Scans `w` at coset `c`; with `fill` gaps are closed by defining new
    /// cosets, otherwise only a gap of length one yields a deduction.
    /// Returns false if the coset bound was hit while filling.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> bool {
        if w.is_empty() {
            return true;
        }
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]) as usize;
                i += 1;
            }
            if i as isize > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return true;
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1) as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return true;
            }
            if j == i as isize {
                self.set(f, w[i], b as u32);
                self.set(b, w[i] ^ 1, f as u32);
                self.deductions.push((f, w[i]));
                return true;
            }
            if !fill {
                return true;
            }
            match self.define(f, w[i]) {
                Some(_) => {}
                None => return false,
            }
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for k in 0..self.by_first[x].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.by_first[x][k]);
                self.scan(c, &w, false);
                self.by_first[x][k] = w;
            }
            if !self.is_live(c) {
                continue;
            }
            let d = self.get(c, x);
            if d == NONE {
                continue;
            }
            let d = d as usize;
            for k in 0..self.by_first[x ^ 1].len() {
                if !self.is_live(d) {
                    break;
                }
                let w = std::mem::take(&mut self.by_first[x ^ 1][k]);
                self.scan(d, &w, false);
                self.by_first[x ^ 1][k] = w;
            }
        }
    }

    fn overflow(&self) -> Error {
        Error::EnumerationOverflow { limit: self.max_cosets }
    }

    fn run(&mut self, subgroup: &[Word]) -> Result<()> {
        for w in subgroup {
            let cols: Vec<usize> = w.letters().iter().map(|l| l.column()).collect();
            loop {
                let r = self.rep(0);
                debug_assert_eq!(r, 0);
                if self.scan(0, &cols, true) {
                    break;
                }
                if self.live >= self.max_cosets {
                    return Err(self.overflow());
                }
                self.compact(0);
            }
            self.process_deductions();
        }
        let mut c = 0usize;
        while c < self.allocated() {
            if self.is_live(c) {
                let mut x = 0;
                while x < self.ncols {
                    if !self.is_live(c) {
                        break;
                    }
                    if self.get(c, x) == NONE {
                        if self.allocated() >= self.max_cosets {
                            if self.live >= self.max_cosets {
                                return Err(self.overflow());
                            }
                            c = self.compact(c);
                        }
                        self.define(c, x);
                        self.process_deductions();
                    }
                    x += 1;
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Standardizes the table by breadth-first order from coset 0.
    fn finish(mut self, ngens: usize) -> CosetTable {
        let n = self.allocated();
        let mut order: Vec<usize> = Vec::with_capacity(self.live);
        let mut new_index = vec![NONE; n];
        let start = self.rep(0);
        new_index[start] = 0;
        order.push(start);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for x in 0..self.ncols {
                let d = self.get(c, x) as usize;
                if new_index[d] == NONE {
                    new_index[d] = order.len() as u32;
                    order.push(d);
                }
            }
            i += 1;
        }
        let mut table = Vec::with_capacity(order.len() * self.ncols);
        for &c in &order {
            for x in 0..self.ncols {
                table.push(new_index[self.get(c, x) as usize]);
            }
        }
        CosetTable { ngens, index: order.len(), table }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `p`, allocating at most `max_cosets` cosets at once.
pub fn enumerate_cosets(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::InvalidInput("max_cosets must be at least 1".into()));
    }
    let ngens = p.generator_count();
    if ngens == 0 {
        return Ok(CosetTable { ngens: 0, index: 1, table: Vec::new() });
    }
    let mut f = Felsch::new(p, max_cosets);
    f.run(subgroup)?;
    let relators = f.relators;
    let t = f.finish(ngens);
    if !t.satisfies(relators) || !subgroup.iter().all(|w| t.trace(0, w) == 0) {
        return Err(Error::NotClosed("coset table failed final verification".into()));
    }
    Ok(t)
}

/// Coset enumeration returning the full group table for the trivial
/// subgroup and the coset action otherwise.
pub fn coset_enumerate(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<Enumeration> {
    let t = enumerate_cosets(p, subgroup, max_cosets)?;
    if subgroup.iter().all(|w| w.is_identity()) {
        Ok(Enumeration::Group(regular_table(&t)?))
    } else {
        Ok(Enumeration::Cosets(t))
    }
}

/// Enumerates the group itself.
pub fn group_table(p: &Presentation, max_cosets: usize) -> Result<GroupTable> {
    let t = enumerate_cosets(p, &[], max_cosets)?;
    regular_table(&t)
}

/// Converts the regular coset action into a multiplication table.
pub fn regular_table(t: &CosetTable) -> Result<GroupTable> {
    let n = t.index();
    if n > MAX_TABLE_ORDER {
        return Err(Error::CapExceeded(format!("group order {n} exceeds {MAX_TABLE_ORDER}")));
    }
    let ngens = t.generator_count();
    // BFS tree: every coset d != 0 reached as parent·letter
    let mut via: Vec<Option<(usize, Letter)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut order = vec![0usize];
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for col in 0..2 * ngens {
            let l = Letter::from_column(col);
            let d = t.image(c, l);
            if !seen[d] {
                seen[d] = true;
                via[d] = Some((c, l));
                order.push(d);
            }
        }
        i += 1;
    }
    // column d of the product table: c·d = trace(c, word(d))
    let mut cols: Vec<Vec<u32>> = vec![Vec::new(); n];
    cols[0] = (0..n as u32).collect();
    for &d in order.iter().skip(1) {
        let (p, l) = via[d].unwrap();
        let col: Vec<u32> = cols[p].iter().map(|&x| t.image(x as usize, l) as u32).collect();
        cols[d] = col;
    }
    let mut mul = vec![0u32; n * n];
    for (d, col) in cols.iter().enumerate() {
        for (c, &v) in col.iter().enumerate() {
            mul[c * n + d] = v;
        }
    }
    let gens = (0..ngens).map(|g| t.image(0, Letter::new(g, false))).collect();
    GroupTable::from_mul(n, mul, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::parse::parse_presentation;

    fn pres(s: &str) -> Presentation {
        parse_presentation(s).unwrap()
    }

    #[test]
    fn cyclic_five() {
        let g = group_table(&pres("group Z5\ngens a\nrel a^5\n"), 100).unwrap();
        assert_eq!(g.order(), 5);
    }

    #[test]
    fn s3_order_and_relators() {
        let p = pres("group S3\ngens a b\nrel a^2\nrel b^2\nrel (a b)^3\n");
        let g = group_table(&p, 100).unwrap();
        assert_eq!(g.order(), 6);
        for r in p.relators() {
            assert_eq!(g.evaluate(r, g.generators()), 0);
        }
    }

    #[test]
    fn infinite_index_overflows() {
        let p = pres("group Z2\ngens a b\nrel [a,b]\n");
        let r = enumerate_cosets(&p, &[Word::gen(0)], 1000);
        assert!(matches!(r, Err(Error::EnumerationOverflow { .. })));
    }

    #[test]
    fn subgroup_index() {
        let p = pres("group S3\ngens a b\nrel a^2\nrel b^2\nrel (a b)^3\n");
        let t = enumerate_cosets(&p, &[Word::gen(0)], 100).unwrap();
        assert_eq!(t.index(), 3);
        let t = enumerate_cosets(&p, &[Word::from_signed(&[1, 2])], 100).unwrap();
        assert_eq!(t.index(), 2);
    }

    #[test]
    fn larger_groups() {
        // binary tetrahedral group <a,b | a^3 = b^3 = (ab)^2>
        let p = pres("group SL23\ngens a b\nrel a^3 b^-3\nrel a^3 (a b)^-2\n");
        let g = group_table(&p, 10_000).unwrap();
        assert_eq!(g.order(), 24);
        let d8 = pres("group D8\ngens a b\nrel a^8\nrel b^2\nrel (a b)^2\n");
        assert_eq!(group_table(&d8, 1000).unwrap().order(), 16);
        // <a,b | a^b = a^2, b^a = b^2> is trivial but needs many coincidences
        let t = pres("group T\ngens a b\nrel b^-1 a b a^-2\nrel a^-1 b a b^-2\n");
        assert_eq!(group_table(&t, 100_000).unwrap().order(), 1);
    }

    #[test]
    fn tables_are_deterministic() {
        let p = pres("group A4\ngens a b\nrel a^2\nrel b^3\nrel (a b)^3\n");
        let a = enumerate_cosets(&p, &[], 1000).unwrap();
        let b = enumerate_cosets(&p, &[], 1000).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.index(), 12);
    }
}
