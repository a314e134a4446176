//! Weyl group combinatorics: element arithmetic, lengths, reduced words,
//! Bruhat order, subword enumeration, Demazure products and parabolic cosets.
//!
//! Elements are stored as integer matrices acting on the root lattice in
//! simple-root coordinates, so equality is canonical and multiplication is
//! `O(rank^2)` with no word normalization.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cartan::{CartanDatum, Weight};

#[derive(Debug, Error)]
pub enum WeylError {
    #[error("group enumeration exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
}

#[derive(Debug, Error)]
#[error("invalid word `{input}`: {reason}")]
pub struct WordParseError {
    pub input: String,
    pub reason: String,
}

/// Default cap on breadth-first group enumeration.
pub const DEFAULT_GROUP_CAP: usize = 50_000;

/// An element of the Weyl group: the matrix sending each simple root to its
/// image, with the length (inversion count) cached.
#[derive(Debug, Clone)]
pub struct WeylElement {
    datum: Arc<CartanDatum>,
    /// Row-major `rank x rank`; column `j` holds the coordinates of `w(alpha_j)`.
    matrix: Vec<i64>,
    length: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.datum.cartan_matrix() == other.datum.cartan_matrix()
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl WeylElement {
    pub fn identity(datum: Arc<CartanDatum>) -> Self {
        let rank = datum.rank();
        let mut matrix = vec![0i64; rank * rank];
        for k in 0..rank {
            matrix[k * rank + k] = 1;
        }
        WeylElement {
            datum,
            matrix,
            length: 0,
        }
    }

    /// The simple reflection `s_i` (1-based).
    pub fn simple_reflection(datum: Arc<CartanDatum>, i: usize) -> Self {
        let rank = datum.rank();
        assert!(i >= 1 && i <= rank, "simple-root index {i} out of range 1..={rank}");
        let mut matrix = vec![0i64; rank * rank];
        for j in 0..rank {
            let image = datum.simple_reflection_on_weight(i, &Weight::simple(rank, j + 1));
            for k in 0..rank {
                matrix[k * rank + j] = image.coords[k];
            }
        }
        WeylElement {
            datum,
            matrix,
            length: 1,
        }
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    /// Applies the element to a weight (matrix-vector product).
    pub fn apply(&self, lam: &Weight) -> Weight {
        let rank = self.rank();
        assert_eq!(lam.rank(), rank, "weight rank mismatch");
        let mut coords = vec![0i64; rank];
        for k in 0..rank {
            for j in 0..rank {
                coords[k] += self.matrix[k * rank + j] * lam.coords[j];
            }
        }
        Weight { coords }
    }

    /// Group multiplication (composition: `(a*b)(x) = a(b(x))`).
    /// Panics when the two elements belong to different Cartan data.
    pub fn multiply(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(
            self.datum.cartan_matrix(),
            other.datum.cartan_matrix(),
            "mismatched Cartan datum"
        );
        let rank = self.rank();
        let mut matrix = vec![0i64; rank * rank];
        for k in 0..rank {
            for j in 0..rank {
                let mut acc = 0;
                for m in 0..rank {
                    acc += self.matrix[k * rank + m] * other.matrix[m * rank + j];
                }
                matrix[k * rank + j] = acc;
            }
        }
        let length = inversion_count(&self.datum, &matrix);
        WeylElement {
            datum: self.datum.clone(),
            matrix,
            length,
        }
    }

    /// Multiplication by `s_i` on the chosen side.
    pub fn mul_simple_right(&self, i: usize) -> WeylElement {
        self.multiply(&WeylElement::simple_reflection(self.datum.clone(), i))
    }

    pub fn mul_simple_left(&self, i: usize) -> WeylElement {
        WeylElement::simple_reflection(self.datum.clone(), i).multiply(self)
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = WeylElement::identity(self.datum.clone());
        for &i in self.reduced_word().letters().iter().rev() {
            inv = inv.mul_simple_right(i);
        }
        inv
    }

    /// True when `w(alpha_i) < 0`, i.e. `l(w s_i) < l(w)`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        self.apply(&Weight::simple(self.rank(), i)).is_negative()
    }

    /// True when `l(s_i w) < l(w)`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        self.mul_simple_left(i).length < self.length
    }

    /// The deterministic reduced word obtained by greedily stripping the
    /// smallest left descent.
    pub fn reduced_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.length);
        let mut v = self.clone();
        while !v.is_identity() {
            let i = (1..=self.rank())
                .find(|&i| v.is_left_descent(i))
                .expect("non-identity element has a left descent");
            letters.push(i);
            v = v.mul_simple_left(i);
        }
        Word::new(letters)
    }

    /// All reduced words for the element, ordered lexicographically.
    pub fn all_reduced_words(&self) -> Vec<Word> {
        if self.is_identity() {
            return vec![Word::new(Vec::new())];
        }
        let mut out = Vec::new();
        for i in 1..=self.rank() {
            if self.is_left_descent(i) {
                for tail in self.mul_simple_left(i).all_reduced_words() {
                    let mut letters = Vec::with_capacity(self.length);
                    letters.push(i);
                    letters.extend_from_slice(tail.letters());
                    out.push(Word::new(letters));
                }
            }
        }
        out
    }

    /// Bruhat order via the standard descent recursion.
    pub fn bruhat_leq(&self, w: &WeylElement) -> bool {
        let mut u = self.clone();
        let mut w = w.clone();
        loop {
            if u.length > w.length {
                return false;
            }
            if w.is_identity() {
                return u.is_identity();
            }
            let i = (1..=w.rank())
                .find(|&i| w.is_right_descent(i))
                .expect("non-identity element has a right descent");
            w = w.mul_simple_right(i);
            if u.is_right_descent(i) {
                u = u.mul_simple_right(i);
            }
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reduced_word())
    }
}

fn inversion_count(datum: &CartanDatum, matrix: &[i64]) -> usize {
    let rank = datum.rank();
    datum
        .positive_roots()
        .iter()
        .filter(|root| {
            let mut coords = vec![0i64; rank];
            for k in 0..rank {
                for j in 0..rank {
                    coords[k] += matrix[k * rank + j] * root.coords[j];
                }
            }
            Weight { coords }.is_negative()
        })
        .count()
}

/// A word in simple reflections: a sequence of 1-based simple-root indices,
/// possibly repeating, not necessarily reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parses `"1,2,1"`, or the single-digit shorthand `"121"` when every
    /// letter fits in one digit. The empty string is the empty word.
    pub fn parse(input: &str, rank: usize) -> Result<Self, WordParseError> {
        let trimmed = input.trim();
        let err = |reason: String| WordParseError {
            input: input.to_string(),
            reason,
        };
        let mut letters = Vec::new();
        if trimmed.is_empty() {
            return Ok(Word::new(letters));
        }
        if trimmed.contains(',') {
            for (pos, part) in trimmed.split(',').enumerate() {
                let i: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("letter {} (`{}`) is not a number", pos + 1, part)))?;
                letters.push(i);
            }
        } else {
            for (pos, ch) in trimmed.chars().enumerate() {
                let i = ch
                    .to_digit(10)
                    .ok_or_else(|| err(format!("character {} (`{ch}`) is not a digit", pos + 1)))?
                    as usize;
                letters.push(i);
            }
        }
        for (pos, &i) in letters.iter().enumerate() {
            if i < 1 || i > rank {
                return Err(err(format!(
                    "letter {} is {} but must be in 1..={rank}",
                    pos + 1,
                    i
                )));
            }
        }
        Ok(Word::new(letters))
    }

    /// The product of the letters, in position order.
    pub fn product(&self, datum: Arc<CartanDatum>) -> WeylElement {
        let mut w = WeylElement::identity(datum);
        for &i in &self.letters {
            w = w.mul_simple_right(i);
        }
        w
    }

    /// True when the word length equals the length of its product.
    pub fn is_reduced(&self, datum: Arc<CartanDatum>) -> bool {
        self.product(datum).length() == self.len()
    }

    /// The simple root at position `pos` (0-based) as a weight.
    pub fn root_at(&self, rank: usize, pos: usize) -> Weight {
        Weight::simple(rank, self.letters[pos])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|&i| i <= 9) {
            for &i in &self.letters {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|i| i.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// A subword of a parent word, identified by positions (bit `k` of the mask
/// selects position `k`, 0-based). Two equal letters at different positions
/// are different subwords.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subword {
    pub parent: Word,
    pub mask: u64,
}

impl Subword {
    pub fn new(parent: Word, mask: u64) -> Self {
        assert!(
            parent.len() <= 63 && mask < (1u64 << parent.len()),
            "mask does not fit the parent word"
        );
        Subword { parent, mask }
    }

    pub fn mask_string(&self) -> String {
        mask_string(self.mask, self.parent.len())
    }

    /// Letters at the selected positions, in position order.
    pub fn letters(&self) -> Vec<usize> {
        selected_positions(self.mask)
            .map(|p| self.parent.letters()[p])
            .collect()
    }

    pub fn product(&self, datum: Arc<CartanDatum>) -> WeylElement {
        let mut w = WeylElement::identity(datum);
        for i in self.letters() {
            w = w.mul_simple_right(i);
        }
        w
    }
}

/// Renders a mask as a 0/1 string, position 0 leftmost (`"101"` selects the
/// first and third letters).
pub fn mask_string(mask: u64, len: usize) -> String {
    (0..len)
        .map(|k| if mask & (1 << k) != 0 { '1' } else { '0' })
        .collect()
}

/// Iterates the selected positions of a mask in increasing order.
pub fn selected_positions(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |k| mask & (1 << k) != 0)
}

/// All subword masks of `word` whose selected letters multiply, in position
/// order, to `target`. Masks are returned in increasing numeric order.
pub fn subwords_with_product(word: &Word, target: &WeylElement) -> Vec<u64> {
    let datum = target.datum().clone();
    let len = word.len();
    assert!(len <= 63, "words longer than 63 letters are not supported");
    let mut out = Vec::new();
    let id = WeylElement::identity(datum);
    search_subwords(word, target, 0, 0, &id, len, &mut out);
    out.sort_unstable();
    out
}

fn search_subwords(
    word: &Word,
    target: &WeylElement,
    pos: usize,
    mask: u64,
    prefix: &WeylElement,
    len: usize,
    out: &mut Vec<u64>,
) {
    let remaining = len - pos;
    // A product of k reflections has length at most k more / less than now.
    let need = target.length().abs_diff(prefix.length());
    if need > remaining {
        return;
    }
    if pos == len {
        if prefix == target {
            out.push(mask);
        }
        return;
    }
    search_subwords(word, target, pos + 1, mask, prefix, len, out);
    let with = prefix.mul_simple_right(word.letters()[pos]);
    search_subwords(word, target, pos + 1, mask | (1 << pos), &with, len, out);
}

/// The Demazure (0-Hecke) product of the word: letters are absorbed instead
/// of shortening the element.
pub fn demazure_product(datum: Arc<CartanDatum>, word: &Word) -> WeylElement {
    let mut w = WeylElement::identity(datum);
    for &i in word.letters() {
        let next = w.mul_simple_right(i);
        if next.length() > w.length() {
            w = next;
        }
    }
    w
}

/// The fully enumerated Weyl group, sorted by length and then by matrix
/// entries, with right-multiplication tables for the generators.
#[derive(Debug)]
pub struct WeylGroup {
    datum: Arc<CartanDatum>,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
    right_mul: Vec<Vec<usize>>,
}

impl WeylGroup {
    pub fn enumerate(datum: Arc<CartanDatum>) -> Result<Self, WeylError> {
        Self::enumerate_with_cap(datum, DEFAULT_GROUP_CAP)
    }

    pub fn enumerate_with_cap(datum: Arc<CartanDatum>, cap: usize) -> Result<Self, WeylError> {
        let rank = datum.rank();
        let mut seen: HashMap<Vec<i64>, WeylElement> = HashMap::new();
        let id = WeylElement::identity(datum.clone());
        let mut frontier = vec![id.clone()];
        seen.insert(id.matrix().to_vec(), id);
        while let Some(w) = frontier.pop() {
            for i in 1..=rank {
                let next = w.mul_simple_right(i);
                if !seen.contains_key(next.matrix()) {
                    if seen.len() >= cap {
                        return Err(WeylError::CapExceeded { cap });
                    }
                    seen.insert(next.matrix().to_vec(), next.clone());
                    frontier.push(next);
                }
            }
        }
        let mut elements: Vec<WeylElement> = seen.into_values().collect();
        elements.sort_by(|a, b| {
            a.length()
                .cmp(&b.length())
                .then_with(|| a.matrix().cmp(b.matrix()))
        });
        let index: HashMap<Vec<i64>, usize> = elements
            .iter()
            .enumerate()
            .map(|(n, w)| (w.matrix().to_vec(), n))
            .collect();
        let right_mul = (1..=rank)
            .map(|i| {
                elements
                    .iter()
                    .map(|w| index[w.mul_simple_right(i).matrix()])
                    .collect()
            })
            .collect();
        Ok(WeylGroup {
            datum,
            elements,
            index,
            right_mul,
        })
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &WeylElement {
        &self.elements[id]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w.matrix()).copied()
    }

    pub fn identity_id(&self) -> usize {
        0
    }

    /// Index of `w * s_i`.
    pub fn right_mul(&self, id: usize, i: usize) -> usize {
        self.right_mul[i - 1][id]
    }

    pub fn longest_element(&self) -> &WeylElement {
        self.elements.last().expect("group is never empty")
    }

    /// Element ids of the parabolic subgroup `W_P` generated by the listed
    /// simple reflections, in group order.
    pub fn parabolic_elements(&self, parabolic: &BTreeSet<usize>) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        seen.insert(self.identity_id());
        let mut frontier = vec![self.identity_id()];
        while let Some(id) = frontier.pop() {
            for &i in parabolic {
                let next = self.right_mul(id, i);
                if seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Minimal-length coset representatives `W^P`: all `w` with
    /// `w(alpha_i) > 0` for every `i` in the parabolic set. Returned in
    /// group order.
    pub fn minimal_representatives(&self, parabolic: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.len())
            .filter(|&id| {
                parabolic.iter().all(|&i| {
                    self.elements[id]
                        .apply(&Weight::simple(self.datum.rank(), i))
                        .is_positive()
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(label: &str) -> WeylGroup {
        let datum = Arc::new(CartanDatum::of_type(label).unwrap());
        WeylGroup::enumerate(datum).unwrap()
    }

    fn elem(datum: &Arc<CartanDatum>, word: &str) -> WeylElement {
        Word::parse(word, datum.rank())
            .unwrap()
            .product(datum.clone())
    }

    #[test]
    fn simple_reflection_squares_to_identity() {
        let datum = Arc::new(CartanDatum::of_type("A2").unwrap());
        let s1 = WeylElement::simple_reflection(datum.clone(), 1);
        assert_eq!(s1.multiply(&s1), WeylElement::identity(datum));
    }

    #[test]
    fn a2_braid_relation() {
        let datum = Arc::new(CartanDatum::of_type("A2").unwrap());
        assert_eq!(elem(&datum, "121"), elem(&datum, "212"));
        assert_eq!(elem(&datum, "12").length(), 2);
    }

    #[test]
    fn reduced_word_roundtrip() {
        for label in ["A2", "B2", "A3", "G2"] {
            let g = group(label);
            for w in g.elements() {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(&word.product(g.datum().clone()), w);
            }
        }
    }

    #[test]
    fn reduced_word_examples() {
        let a2 = group("A2");
        assert!(WeylElement::identity(a2.datum().clone())
            .reduced_word()
            .is_empty());
        assert_eq!(a2.longest_element().length(), 3);
        let b2 = group("B2");
        assert_eq!(b2.longest_element().length(), 4);
    }

    #[test]
    fn group_sizes() {
        for (label, size) in [("A2", 6), ("B2", 8), ("A3", 24), ("G2", 12)] {
            let g = group(label);
            assert_eq!(g.len(), size, "type {label}");
            // the longest element inverts every positive root
            assert_eq!(g.longest_element().length(), g.datum().dim_gb());
        }
    }

    #[test]
    fn inverse_and_length() {
        let g = group("B2");
        for w in g.elements() {
            let inv = w.inverse();
            assert_eq!(w.multiply(&inv), WeylElement::identity(g.datum().clone()));
            assert_eq!(inv.length(), w.length());
        }
    }

    #[test]
    fn bruhat_basics() {
        let g = group("A2");
        let id = WeylElement::identity(g.datum().clone());
        for w in g.elements() {
            assert!(id.bruhat_leq(w));
            assert!(w.bruhat_leq(w));
        }
        let s1 = elem(g.datum(), "1");
        let s2 = elem(g.datum(), "2");
        assert!(!s1.bruhat_leq(&s2));
        assert!(!s2.bruhat_leq(&s1));
    }

    /// Independent oracle: u <= w iff some subword of a fixed reduced word of
    /// w multiplies to u.
    fn bruhat_by_subwords(u: &WeylElement, w: &WeylElement) -> bool {
        let word = w.reduced_word();
        !subwords_with_product(&word, u).is_empty()
    }

    #[test]
    fn bruhat_matches_subword_property() {
        for label in ["A2", "B2"] {
            let g = group(label);
            for u in g.elements() {
                for w in g.elements() {
                    assert_eq!(
                        u.bruhat_leq(w),
                        bruhat_by_subwords(u, w),
                        "{label}: u={u} w={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn subword_enumeration_examples() {
        let g = group("A2");
        let q = Word::parse("121", 2).unwrap();
        let s1 = elem(g.datum(), "1");
        let s2 = elem(g.datum(), "2");
        let id = WeylElement::identity(g.datum().clone());
        // bit 0 = first letter: "100" is mask 1, "001" is mask 4.
        assert_eq!(subwords_with_product(&q, &s1), vec![0b001, 0b100]);
        assert_eq!(subwords_with_product(&q, &s2), vec![0b010]);
        assert!(subwords_with_product(&q, &id).contains(&0));
        assert_eq!(mask_string(0b001, 3), "100");
        assert_eq!(mask_string(0b100, 3), "001");
    }

    #[test]
    fn demazure_products() {
        let datum = Arc::new(CartanDatum::of_type("A2").unwrap());
        let s1 = elem(&datum, "1");
        assert_eq!(
            demazure_product(datum.clone(), &Word::parse("11", 2).unwrap()),
            s1
        );
        let reduced = Word::parse("12", 2).unwrap();
        assert_eq!(
            demazure_product(datum.clone(), &reduced),
            reduced.product(datum.clone())
        );
        let g = group("A2");
        assert_eq!(
            &demazure_product(datum.clone(), &Word::parse("1212", 2).unwrap()),
            g.longest_element()
        );
    }

    #[test]
    fn demazure_absorbs_descents() {
        let datum = Arc::new(CartanDatum::of_type("B2").unwrap());
        for letters in [vec![1, 2, 1, 2], vec![2, 1, 1, 2], vec![1, 2, 2, 1, 2]] {
            let word = Word::new(letters.clone());
            let w = demazure_product(datum.clone(), &word);
            for i in 1..=2 {
                if w.is_right_descent(i) {
                    let mut extended = letters.clone();
                    extended.push(i);
                    assert_eq!(demazure_product(datum.clone(), &Word::new(extended)), w);
                }
            }
        }
    }

    #[test]
    fn minimal_representatives_examples() {
        let g = group("A2");
        let all: BTreeSet<usize> = (1..=2).collect();
        assert_eq!(g.minimal_representatives(&BTreeSet::new()).len(), 6);
        assert_eq!(g.minimal_representatives(&all), vec![0]);

        let p1: BTreeSet<usize> = [1].into();
        let reps = g.minimal_representatives(&p1);
        let words: Vec<String> = reps
            .iter()
            .map(|&id| g.element(id).reduced_word().to_string())
            .collect();
        assert_eq!(words, vec!["", "2", "12"]);
        assert_eq!(g.parabolic_elements(&p1).len() * reps.len(), g.len());
    }

    #[test]
    fn all_reduced_words_of_longest_elements() {
        let a2 = group("A2");
        let words = a2.longest_element().all_reduced_words();
        assert_eq!(words.len(), 2);
        let b2 = group("B2");
        let words = b2.longest_element().all_reduced_words();
        assert_eq!(words.len(), 2);
        for word in words {
            assert_eq!(&word.product(b2.datum().clone()), b2.longest_element());
        }
    }

    #[test]
    fn word_parsing() {
        assert_eq!(Word::parse("1,2,1", 2).unwrap().letters(), &[1, 2, 1]);
        assert_eq!(Word::parse("121", 2).unwrap().letters(), &[1, 2, 1]);
        assert!(Word::parse("", 2).unwrap().is_empty());
        assert!(Word::parse("13", 2).is_err());
        assert!(Word::parse("1,x", 2).is_err());
        assert_eq!(Word::parse("121", 2).unwrap().to_string(), "121");
    }

    #[test]
    #[should_panic(expected = "mismatched Cartan datum")]
    fn multiply_rejects_mismatched_datum() {
        let a2 = Arc::new(CartanDatum::of_type("A2").unwrap());
        let b2 = Arc::new(CartanDatum::of_type("B2").unwrap());
        let x = WeylElement::simple_reflection(a2, 1);
        let y = WeylElement::simple_reflection(b2, 1);
        let _ = x.multiply(&y);
    }
}
