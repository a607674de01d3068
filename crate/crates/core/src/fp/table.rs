use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::presentation::Presentation;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// Largest group realized as a table.
pub const MAX_TABLE_ORDER: usize = 4096;
const EXHAUSTIVE_ASSOCIATIVITY: usize = 256;

/// A finite group given by its multiplication table. The identity is always
/// element 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
}

impl GroupTable {
    /// Builds a table from a row-major product table, checking the group
    /// axioms. Elements are relabelled so that the identity comes first.
    pub fn from_mul(order: usize, mul: Vec<u32>, generators: Vec<usize>) -> Result<Self> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::InvalidInput("multiplication table has the wrong size".into()));
        }
        if order > MAX_TABLE_ORDER {
            return Err(Error::CapExceeded(format!("group order {order} exceeds {MAX_TABLE_ORDER}")));
        }
        if mul.iter().any(|&x| x as usize >= order) || generators.iter().any(|&g| g >= order) {
            return Err(Error::InvalidInput("table entry out of range".into()));
        }
        for r in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for c in 0..order {
                let a = mul[r * order + c] as usize;
                let b = mul[c * order + r] as usize;
                if seen_row[a] || seen_col[b] {
                    return Err(Error::InvalidInput("multiplication table is not a Latin square".into()));
                }
                seen_row[a] = true;
                seen_col[b] = true;
            }
        }
        let e = (0..order)
            .find(|&x| mul[x * order + x] as usize == x)
            .ok_or_else(|| Error::InvalidInput("no identity element".into()))?;
        // relabel so the identity is 0
        let swap = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut m = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                m[swap(a) * order + swap(b)] = swap(mul[a * order + b] as usize) as u32;
            }
        }
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let b = (0..order).find(|&b| m[a * order + b] == 0).unwrap();
            inv[a] = b as u32;
        }
        let t = GroupTable { order, mul: m, inv, generators: generators.into_iter().map(swap).collect() };
        for a in 0..order {
            if t.mul(0, a) != a || t.mul(a, 0) != a || t.mul(t.inv(a), a) != 0 || t.inv(t.inv(a)) != a {
                return Err(Error::InvalidInput("identity or inverses inconsistent".into()));
            }
        }
        if !t.check_associativity() {
            return Err(Error::InvalidInput("multiplication is not associative".into()));
        }
        Ok(t)
    }

    /// Associativity on every triple for small groups, on a fixed random
    /// sample of triples otherwise.
    pub fn check_associativity(&self) -> bool {
        let n = self.order;
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    let ab = self.mul(a, b);
                    (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
                })
            })
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..200_000).all(|_| {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
            })
        }
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let inv = (0..n).map(|i| ((n - i) % n) as u32).collect();
        GroupTable { order: n, mul, inv, generators: if n > 1 { vec![1] } else { vec![0] } }
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &GroupTable) -> Self {
        let (n, m) = (self.order, other.order);
        let mut mul = vec![0u32; n * m * n * m];
        for x in 0..n * m {
            for y in 0..n * m {
                let (a, b) = (x / m, x % m);
                let (c, d) = (y / m, y % m);
                mul[x * n * m + y] = (self.mul(a, c) * m + other.mul(b, d)) as u32;
            }
        }
        let inv = (0..n * m).map(|x| (self.inv(x / m) * m + other.inv(x % m)) as u32).collect();
        let mut generators: Vec<usize> = self.generators.iter().map(|&g| g * m).collect();
        generators.extend(other.generators.iter().copied());
        GroupTable { order: n * m, mul, inv, generators }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn with_generators(mut self, generators: Vec<usize>) -> Self {
        self.generators = generators;
        self
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut r = 0;
        for _ in 0..e.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// `a b a^-1`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn evaluate(&self, w: &Word, images: &[usize]) -> usize {
        w.letters().iter().fold(0, |acc, l| {
            let x = images[l.gen()];
            self.mul(acc, if l.is_inverse() { self.inv(x) } else { x })
        })
    }

    /// Sorted subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        member[0] && set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        self.is_subgroup(set) && (0..self.order).all(|g| set.iter().all(|&n| member[self.conjugate(g, n)]))
    }

    pub fn is_central(&self, set: &[usize]) -> bool {
        set.iter().all(|&n| (0..self.order).all(|g| self.mul(g, n) == self.mul(n, g)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| (0..self.order).all(|g| self.mul(g, z) == self.mul(z, g))).collect()
    }

    /// `[G, G]`.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let n = self.order;
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.commutator(a, b);
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.generated_subgroup(&comms)
    }

    /// Table of a subgroup together with the embedding of its elements. The
    /// subgroup's generators are all of its elements unless it is cyclic.
    pub fn subgroup_table(&self, set: &[usize]) -> Result<(GroupTable, Vec<usize>)> {
        if !self.is_subgroup(set) {
            return Err(Error::InvalidInput("set is not a subgroup".into()));
        }
        let mut elems: Vec<usize> = set.to_vec();
        elems.sort_unstable();
        let mut index = vec![usize::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            index[x] = i;
        }
        let k = elems.len();
        let mut mul = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                mul[i * k + j] = index[self.mul(elems[i], elems[j])] as u32;
            }
        }
        let gens = small_generating_set(self, &elems).into_iter().map(|x| index[x]).collect();
        let t = GroupTable::from_mul(k, mul, gens)?;
        Ok((t, elems))
    }

    /// Quotient by a normal subgroup with the projection map. Coset
    /// representatives are the least elements of their cosets.
    pub fn quotient(&self, normal: &[usize]) -> Result<(GroupTable, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::InvalidInput("subgroup is not normal".into()));
        }
        let n = self.order;
        let mut proj = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..n {
            if proj[g] == usize::MAX {
                let c = reps.len();
                reps.push(g);
                for &h in normal {
                    proj[self.mul(g, h)] = c;
                }
            }
        }
        let q = reps.len();
        let mut mul = vec![0u32; q * q];
        for i in 0..q {
            for j in 0..q {
                mul[i * q + j] = proj[self.mul(reps[i], reps[j])] as u32;
            }
        }
        let gens = self.generators.iter().map(|&g| proj[g]).collect();
        let t = GroupTable::from_mul(q, mul, gens)?;
        Ok((t, proj))
    }

    /// Breadth-first spanning tree of the Cayley graph on the generators:
    /// for every element its parent and the letter leading to it. The word
    /// of each element is its tree path.
    pub fn spanning_tree(&self) -> Vec<Option<(usize, Letter)>> {
        let n = self.order;
        let mut parent: Vec<Option<(usize, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (i, &g) in self.generators.iter().enumerate() {
                for l in [Letter::new(i, false), Letter::new(i, true)] {
                    let y = self.mul(x, if l.is_inverse() { self.inv(g) } else { g });
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = Some((x, l));
                        queue.push_back(y);
                    }
                }
            }
        }
        parent
    }

    /// Shortest words in the generators for every element, or an error if
    /// the generators do not generate.
    pub fn element_words(&self) -> Result<Vec<Word>> {
        let tree = self.spanning_tree();
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[0] = Some(Word::identity());
        // BFS order guarantees parents are resolved before children
        let mut order: Vec<usize> = (1..self.order).collect();
        let depth = |mut x: usize| {
            let mut d = 0;
            while let Some((p, _)) = tree[x] {
                x = p;
                d += 1;
            }
            d
        };
        if (1..self.order).any(|x| tree[x].is_none()) {
            return Err(Error::InvalidInput("generators do not generate the group".into()));
        }
        order.sort_by_key(|&x| depth(x));
        for x in order {
            let (p, l) = tree[x].unwrap();
            let w = words[p].as_ref().unwrap().mul(&Word::letter(l));
            words[x] = Some(w);
        }
        Ok(words.into_iter().map(Option::unwrap).collect())
    }

    /// A presentation on the table's generators read off the Cayley graph:
    /// one relator per non-tree edge, plus the generator orders.
    pub fn presentation(&self, name: &str) -> Result<Presentation> {
        let words = self.element_words()?;
        let k = self.generators.len();
        let mut rels: Vec<Word> = Vec::new();
        for x in 0..self.order {
            for (i, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                let r = words[x].mul(&Word::gen(i)).mul(&words[y].inverse());
                if !r.is_identity() {
                    rels.push(r.cyclically_reduced());
                }
            }
        }
        rels.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        rels.dedup();
        let names = (0..k).map(|i| format!("x{i}")).collect();
        Presentation::new(name, names, rels)
    }

    /// Extends generator images to a homomorphism into `target`, if one exists.
    pub fn extend_homomorphism(&self, images: &[usize], target: &GroupTable) -> Option<Vec<usize>> {
        let mut f = vec![usize::MAX; self.order];
        f[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (i, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                let fy = target.mul(f[x], images[i]);
                if f[y] == usize::MAX {
                    f[y] = fy;
                    queue.push_back(y);
                } else if f[y] != fy {
                    return None;
                }
            }
        }
        // every edge x -> xg was checked, so f is a homomorphism once defined everywhere
        if f.contains(&usize::MAX) {
            return None;
        }
        Some(f)
    }

    /// Cheap isomorphism invariant: order, counts of element orders, sizes
    /// of centre and derived subgroup.
    pub fn fingerprint(&self) -> (usize, Vec<(usize, usize)>, usize, usize) {
        let mut counts = std::collections::BTreeMap::new();
        for a in 0..self.order {
            *counts.entry(self.element_order(a)).or_insert(0usize) += 1;
        }
        (self.order, counts.into_iter().collect(), self.center().len(), self.derived_subgroup().len())
    }

    /// Searches for an isomorphism onto `other` by trying generator images
    /// of matching orders.
    pub fn find_isomorphism(&self, other: &GroupTable) -> Option<Vec<usize>> {
        if self.fingerprint() != other.fingerprint() {
            return None;
        }
        let gens = small_generating_set(self, &(0..self.order).collect::<Vec<_>>());
        let src = self.clone().with_generators(gens.clone());
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..other.order).filter(|&h| other.element_order(h) == o).collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            if let Some(f) = src.extend_homomorphism(&images, other) {
                let mut hit = vec![false; other.order];
                for &v in &f {
                    hit[v] = true;
                }
                if hit.iter().all(|&h| h) {
                    return Some(f);
                }
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return None;
                }
                choice[i] += 1;
                if choice[i] < candidates[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    pub fn is_isomorphic(&self, other: &GroupTable) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

/// Greedy generating set for the subgroup on `elems`: repeatedly add the
/// element of largest order not yet covered.
pub fn small_generating_set(g: &GroupTable, elems: &[usize]) -> Vec<usize> {
    let mut by_order: Vec<usize> = elems.iter().copied().filter(|&x| x != 0).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![0usize];
    for x in by_order {
        if span.len() == elems.len() {
            break;
        }
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.generated_subgroup(&gens);
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> GroupTable {
        // permutations of {0,1,2} in lexicographic order, composition (p*q)(i) = p(q(i))
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap() as u32;
        let mut mul = Vec::new();
        for p in &perms {
            for q in &perms {
                mul.push(idx([p[q[0]], p[q[1]], p[q[2]]]));
            }
        }
        GroupTable::from_mul(6, mul, vec![1, 2]).unwrap()
    }

    #[test]
    fn s3_structure() {
        let g = s3();
        assert!(!g.is_abelian());
        assert_eq!(g.center(), vec![0]);
        assert_eq!(g.derived_subgroup().len(), 3);
        let (q, _) = g.quotient(&g.derived_subgroup()).unwrap();
        assert_eq!(q.order(), 2);
    }

    #[test]
    fn rejects_non_latin() {
        assert!(GroupTable::from_mul(2, vec![0, 1, 1, 1], vec![]).is_err());
    }

    #[test]
    fn rejects_non_associative() {
        // a Latin square with identity 0 that is not a group (order 5 loop)
        let t: Vec<u32> = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(GroupTable::from_mul(5, t, vec![]).is_err());
    }

    #[test]
    fn identity_relabelled_to_zero() {
        // Z/2 with the identity stored second
        let g = GroupTable::from_mul(2, vec![1, 0, 0, 1], vec![0]).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.generators(), &[1]);
    }

    #[test]
    fn presentation_from_table_is_faithful() {
        let g = s3();
        let p = g.presentation("S3").unwrap();
        for r in p.relators() {
            assert_eq!(g.evaluate(r, g.generators()), 0);
        }
    }

    #[test]
    fn isomorphism_search() {
        let z6 = GroupTable::cyclic(6);
        let z2z3 = GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(3));
        assert!(z6.is_isomorphic(&z2z3));
        assert!(!z6.is_isomorphic(&s3()));
        let v = GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(2));
        assert!(!v.is_isomorphic(&GroupTable::cyclic(4)));
    }
}
