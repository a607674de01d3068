use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    gen: u32,
    inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen: gen as u32, inverse }
    }

    pub fn gen(self) -> usize {
        self.gen as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Column index in a coset table with columns `g0, g0^-1, g1, g1^-1, ...`.
    pub fn column(self) -> usize {
        2 * self.gen as usize + self.inverse as usize
    }

    pub fn from_column(col: usize) -> Self {
        Letter::new(col / 2, col % 2 == 1)
    }
}

/// An element of a free group, always stored freely reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// Builds a word from signed indices: `+(g+1)` for `g`, `-(g+1)` for `g^-1`.
    pub fn from_signed(signed: &[i32]) -> Self {
        Word::from_letters(signed.iter().filter(|&&s| s != 0).map(|&s| {
            Letter::new((s.unsigned_abs() - 1) as usize, s < 0)
        }))
    }

    pub fn to_signed(&self) -> Vec<i32> {
        self.0
            .iter()
            .map(|l| {
                let v = l.gen as i32 + 1;
                if l.inverse {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// `a self a^-1`.
    pub fn conjugate_by(&self, a: &Word) -> Word {
        a.mul(self).mul(&a.inverse())
    }

    /// Removes matching letters from both ends.
    pub fn cyclically_reduced(&self) -> Word {
        let s = &self.0;
        let (mut i, mut j) = (0usize, s.len());
        while j >= i + 2 && s[i] == s[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0i64; ngens];
        for l in &self.0 {
            v[l.gen()] += l.sign();
        }
        v
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen()).max()
    }

    /// Replaces every generator by a word.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.0 {
            let img = &images[l.gen()];
            if l.inverse {
                for &m in img.0.iter().rev() {
                    push_reduced(&mut out, m.inverse());
                }
            } else {
                for &m in &img.0 {
                    push_reduced(&mut out, m);
                }
            }
        }
        Word(out)
    }

    /// Evaluates the word in any structure given generator images, their
    /// inverses, an identity and a product.
    pub fn evaluate<T: Clone>(
        &self,
        identity: T,
        gens: &[T],
        inverses: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        self.0.iter().fold(identity, |acc, l| {
            let x = if l.inverse { &inverses[l.gen()] } else { &gens[l.gen()] };
            mul(&acc, x)
        })
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            let name = names.get(l.gen()).cloned().unwrap_or_else(|| format!("g{}", l.gen()));
            let e = run as i64 * l.sign();
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            i += run;
        }
        parts.join(" ")
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn raw(signed: &[i32]) -> Vec<Letter> {
        signed.iter().map(|&s| Letter::new((s.unsigned_abs() - 1) as usize, s < 0)).collect()
    }

    fn is_reduced(w: &[Letter]) -> bool {
        w.windows(2).all(|p| p[0] != p[1].inverse())
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        let w = Word::from_signed(&[1, 2, -2, -1, 3]);
        assert_eq!(w.to_signed(), vec![3]);
        assert!(Word::from_signed(&[1, -1]).is_identity());
    }

    #[test]
    fn word_times_inverse_is_empty_for_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let len = rng.gen_range(0..30);
            let signed: Vec<i32> = (0..len)
                .map(|_| {
                    let g = rng.gen_range(1..=4);
                    if rng.gen_bool(0.5) {
                        g
                    } else {
                        -g
                    }
                })
                .collect();
            let w = Word::from_signed(&signed);
            assert!(w.mul(&w.inverse()).is_identity());
            assert!(w.len() <= signed.len());
            assert_eq!(Word::from_letters(w.letters().iter().copied()), w);
        }
    }

    #[test]
    fn cyclic_reduction_and_commutator() {
        let w = Word::from_signed(&[1, 2, 3, -1]);
        assert_eq!(w.cyclically_reduced().to_signed(), vec![2, 3]);
        let c = Word::commutator(&Word::gen(0), &Word::gen(1));
        assert_eq!(c.to_signed(), vec![1, 2, -1, -2]);
        assert_eq!(c.exponent_sums(2), vec![0, 0]);
    }

    #[test]
    fn substitution_and_power() {
        let w = Word::from_signed(&[1, -2]);
        let images = vec![Word::from_signed(&[2, 2]), Word::gen(1)];
        assert_eq!(w.substitute(&images).to_signed(), vec![2]);
        assert_eq!(Word::gen(0).pow(-3).to_signed(), vec![-1, -1, -1]);
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_and_shortening(signed in prop::collection::vec(prop_oneof![1i32..4, -3i32..0], 0..40)) {
            let w = Word::from_letters(raw(&signed));
            prop_assert!(is_reduced(w.letters()));
            prop_assert!(w.len() <= signed.len());
            let again = Word::from_letters(w.letters().iter().copied());
            prop_assert_eq!(&again, &w);
        }
    }
}
