//! Weyl group arithmetic on the weight lattice.
//!
//! Elements are integer matrices acting on fundamental-weight coordinates; words are
//! only views onto them. Letters of a [`WeylWord`] are 1-based, matching the usual
//! numbering of simple reflections.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::rootsys::CartanData;

/// Default cap on the number of group elements produced by [`WeylGroup::enumerate`].
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    matrix: IntMatrix,
}

impl WeylElement {
    /// Matrix of the action on the weight lattice in fundamental-weight coordinates.
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn mul(&self, rhs: &WeylElement) -> WeylElement {
        WeylElement {
            matrix: &self.matrix * &rhs.matrix,
        }
    }

    pub fn apply_weight(&self, lambda: &[i64]) -> Vec<i64> {
        self.matrix.mul_vec(lambda)
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({:?})", self.matrix)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letter_set(&self) -> BTreeSet<usize> {
        self.0.iter().copied().collect()
    }

    pub fn has_distinct_letters(&self) -> bool {
        self.letter_set().len() == self.0.len()
    }
}

impl From<Vec<usize>> for WeylWord {
    fn from(v: Vec<usize>) -> Self {
        WeylWord(v)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Ordered positive roots `beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})` of a reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSequence {
    pub betas: Vec<Vec<i64>>,
}

/// A Weyl group together with its root datum.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    cd: Arc<CartanData>,
    simple: Vec<WeylElement>,
    simple_root_mats: Vec<IntMatrix>,
}

impl WeylGroup {
    pub fn new(cd: CartanData) -> Self {
        Self::from_arc(Arc::new(cd))
    }

    pub fn from_arc(cd: Arc<CartanData>) -> Self {
        let r = cd.rank;
        let mut simple = Vec::with_capacity(r);
        let mut simple_root_mats = Vec::with_capacity(r);
        for i in 0..r {
            // s_i(lambda)_k = lambda_k - lambda_i a_ki
            let mut m = IntMatrix::identity(r);
            for k in 0..r {
                m[(k, i)] -= cd.a[(k, i)];
            }
            simple.push(WeylElement { matrix: m });
            // s_i(alpha_j) = alpha_j - a_ij alpha_i
            let mut q = IntMatrix::identity(r);
            for j in 0..r {
                q[(i, j)] -= cd.a[(i, j)];
            }
            simple_root_mats.push(q);
        }
        WeylGroup {
            cd,
            simple,
            simple_root_mats,
        }
    }

    pub fn parse(type_string: &str) -> Result<Self> {
        Ok(Self::new(CartanData::parse(type_string)?))
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cd
    }

    pub fn cartan_arc(&self) -> &Arc<CartanData> {
        &self.cd
    }

    pub fn rank(&self) -> usize {
        self.cd.rank
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            matrix: IntMatrix::identity(self.rank()),
        }
    }

    /// Simple reflection `s_i`, 1-based.
    pub fn simple(&self, i: usize) -> Result<&WeylElement> {
        self.check_index(i)?;
        Ok(&self.simple[i - 1])
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// Product of simple reflections in word order.
    pub fn from_word(&self, word: &WeylWord) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in word.letters() {
            self.check_index(i)?;
            w = w.mul(&self.simple[i - 1]);
        }
        Ok(w)
    }

    /// Same element acting on the root lattice in simple-root coordinates.
    pub fn root_matrix(&self, w: &WeylElement) -> IntMatrix {
        self.cd.weight_matrix_to_root_matrix(&w.matrix)
    }

    pub fn apply_root(&self, w: &WeylElement, beta: &[i64]) -> Vec<i64> {
        let lambda = w.apply_weight(&self.cd.root_to_weight(beta));
        self.cd
            .weight_to_root(&lambda)
            .expect("Weyl group preserves the root lattice")
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &WeylElement) -> usize {
        let q = self.root_matrix(w);
        self.cd
            .pos_roots
            .iter()
            .filter(|beta| is_negative(&q.mul_vec(beta)))
            .count()
    }

    /// Indices `i` (1-based) with `l(s_i w) < l(w)`, read off from `w(rho)`.
    pub fn left_descents(&self, w: &WeylElement) -> Vec<usize> {
        let rho = vec![1; self.rank()];
        w.apply_weight(&rho)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c < 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Indices `i` (1-based) with `l(w s_i) < l(w)`.
    pub fn right_descents(&self, w: &WeylElement) -> Vec<usize> {
        self.left_descents(&self.inverse(w))
    }

    /// Reduced word obtained by stripping the smallest left descent at each step.
    pub fn reduced_word(&self, w: &WeylElement) -> WeylWord {
        let rho = vec![1; self.rank()];
        let mut word = Vec::new();
        let mut cur = w.clone();
        loop {
            let wr = cur.apply_weight(&rho);
            match wr.iter().position(|&c| c < 0) {
                Some(i) => {
                    word.push(i + 1);
                    cur = self.simple[i].mul(&cur);
                }
                None => break,
            }
        }
        debug_assert!(cur.is_identity());
        WeylWord(word)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut word = self.reduced_word(w).0;
        word.reverse();
        self.from_word(&WeylWord(word)).expect("letters in range")
    }

    /// Built greedily by left-multiplying with non-descents until none remain.
    pub fn longest_element(&self) -> WeylElement {
        let rho = vec![1; self.rank()];
        let mut w = self.identity();
        while let Some(i) = w.apply_weight(&rho).iter().position(|&c| c > 0) {
            w = self.simple[i].mul(&w);
        }
        w
    }

    /// Codimension of the fixed space of `w` on the rational weight space.
    pub fn rank_s(&self, w: &WeylElement) -> usize {
        w.matrix.sub_identity().rank()
    }

    /// Bruhat order via the lifting property: for a left descent `s` of `w`,
    /// `u <= w` iff `min(u, s u) <= s w`.
    pub fn bruhat_leq(&self, u: &WeylElement, w: &WeylElement) -> bool {
        let rho = vec![1; self.rank()];
        let mut u = u.clone();
        let mut w = w.clone();
        loop {
            let wr = w.apply_weight(&rho);
            let Some(i) = wr.iter().position(|&c| c < 0) else {
                return u.is_identity();
            };
            if u.apply_weight(&rho)[i] < 0 {
                u = self.simple[i].mul(&u);
            }
            w = self.simple[i].mul(&w);
        }
    }

    /// Smallest `k >= 1` with `w^k = e`.
    pub fn order(&self, w: &WeylElement) -> u64 {
        let mut k = 1;
        let mut p = w.clone();
        while !p.is_identity() {
            p = p.mul(w);
            k += 1;
        }
        k
    }

    /// Whether `w(varpi_i) = varpi_i` (1-based `i`).
    pub fn stabilizes_weight(&self, w: &WeylElement, i: usize) -> Result<bool> {
        self.check_index(i)?;
        let col = w.matrix.column(i - 1);
        Ok(col
            .iter()
            .enumerate()
            .all(|(k, &c)| c == i64::from(k == i - 1)))
    }

    pub fn is_reduced(&self, word: &WeylWord) -> Result<bool> {
        let w = self.from_word(word)?;
        Ok(self.length(&w) == word.len())
    }

    fn require_reduced(&self, word: &WeylWord) -> Result<WeylElement> {
        let w = self.from_word(word)?;
        let length = self.length(&w);
        if length != word.len() {
            return Err(Error::NotReduced {
                word: word.0.clone(),
                length,
                letters: word.len(),
            });
        }
        Ok(w)
    }

    pub fn root_sequence(&self, word: &WeylWord) -> Result<RootSequence> {
        self.require_reduced(word)?;
        let r = self.rank();
        let mut prefix = IntMatrix::identity(r);
        let mut betas = Vec::with_capacity(word.len());
        for &i in word.letters() {
            let mut alpha = vec![0; r];
            alpha[i - 1] = 1;
            betas.push(prefix.mul_vec(&alpha));
            prefix = &prefix * &self.simple_root_mats[i - 1];
        }
        Ok(RootSequence { betas })
    }

    /// Lazily enumerates the group by breadth-first closure from the identity.
    pub fn enumerate(&self, cap: usize) -> Result<WeylEnumeration<'_>> {
        if self.cd.weyl_order() > cap as u128 {
            return Err(Error::CapExceeded { cap });
        }
        let e = self.identity();
        let mut seen = HashSet::new();
        seen.insert(e.clone());
        Ok(WeylEnumeration {
            group: self,
            seen,
            queue: VecDeque::from([e]),
            cap,
        })
    }

    /// All elements, sorted by length and then by smallest-descent reduced word.
    pub fn elements_sorted(&self, cap: usize) -> Result<Vec<WeylElement>> {
        let mut keyed: Vec<(usize, WeylWord, WeylElement)> = self
            .enumerate(cap)?
            .map(|w| {
                let word = self.reduced_word(&w);
                (word.len(), word, w)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        Ok(keyed.into_iter().map(|(_, _, w)| w).collect())
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn all_reduced_words(&self, w: &WeylElement) -> Vec<WeylWord> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.collect_reduced_words(w, &mut prefix, &mut out);
        out
    }

    fn collect_reduced_words(
        &self,
        w: &WeylElement,
        prefix: &mut Vec<usize>,
        out: &mut Vec<WeylWord>,
    ) {
        let descents = self.left_descents(w);
        if descents.is_empty() {
            out.push(WeylWord(prefix.clone()));
            return;
        }
        for i in descents {
            prefix.push(i);
            let next = self.simple[i - 1].mul(w);
            self.collect_reduced_words(&next, prefix, out);
            prefix.pop();
        }
    }

    /// Set of simple reflections occurring in (any) reduced word of `w`.
    pub fn support(&self, w: &WeylElement) -> BTreeSet<usize> {
        self.reduced_word(w).letter_set()
    }

    /// Permutation `i -> j` with `-w0(alpha_i) = alpha_j`; entry `i - 1` holds `j`, both 1-based.
    pub fn minus_w0_permutation(&self) -> Vec<usize> {
        let w0 = self.longest_element();
        let q = self.root_matrix(&w0);
        let r = self.rank();
        (0..r)
            .map(|i| {
                let img: Vec<i64> = q.column(i).iter().map(|c| -c).collect();
                img.iter()
                    .position(|&c| c == 1)
                    .expect("-w0 permutes simple roots")
                    + 1
            })
            .collect()
    }

    /// Indices `i` (1-based) such that both `w0 w1` and `w0 w2` fix `varpi_i`.
    pub fn frak_s(&self, w1: &WeylElement, w2: &WeylElement) -> BTreeSet<usize> {
        let w0 = self.longest_element();
        let (u, v) = (w0.mul(w1), w0.mul(w2));
        (1..=self.rank())
            .filter(|&i| {
                self.stabilizes_weight(&u, i).expect("index in range")
                    && self.stabilizes_weight(&v, i).expect("index in range")
            })
            .collect()
    }

    pub fn coxeter_element(&self) -> WeylElement {
        let word = WeylWord((1..=self.rank()).collect());
        self.from_word(&word).expect("letters in range")
    }

    /// Parses `""`/`"e"` (identity), `"1,2,1"`, `"w0"`, or `"w0*1,2"` (= w0 s_1 s_2).
    pub fn parse_element(&self, text: &str) -> Result<WeylElement> {
        let trimmed_start = text.len() - text.trim_start().len();
        let body = text.trim();
        if body.is_empty() || body == "e" {
            return Ok(self.identity());
        }
        let (mut w, rest, offset) = if let Some(tail) = body.strip_prefix("w0") {
            let w0 = self.longest_element();
            let tail_trim = tail.trim_start();
            if tail_trim.is_empty() {
                return Ok(w0);
            }
            let Some(after) = tail_trim.strip_prefix('*') else {
                return Err(Error::Parse {
                    position: trimmed_start + 2 + (tail.len() - tail_trim.len()),
                    message: "expected `*` after `w0`".into(),
                });
            };
            let offset = trimmed_start + body.len() - after.len();
            (w0, after, offset)
        } else {
            (self.identity(), body, trimmed_start)
        };
        let word = parse_letters(rest, offset, self.rank())?;
        w = w.mul(&self.from_word(&word)?);
        Ok(w)
    }
}

fn parse_letters(text: &str, offset: usize, rank: usize) -> Result<WeylWord> {
    let mut letters = Vec::new();
    let mut pos = offset;
    if text.trim().is_empty() {
        return Ok(WeylWord(letters));
    }
    for token in text.split(',') {
        let lead = token.len() - token.trim_start().len();
        let t = token.trim();
        let value: usize = t.parse().map_err(|_| Error::Parse {
            position: pos + lead,
            message: format!("expected a simple reflection index, found `{t}`"),
        })?;
        if value == 0 || value > rank {
            return Err(Error::Parse {
                position: pos + lead,
                message: format!("index {value} out of range 1..={rank}"),
            });
        }
        letters.push(value);
        pos += token.len() + 1;
    }
    Ok(WeylWord(letters))
}

/// A root in simple-root coordinates is negative iff its coefficients are nonpositive.
pub fn is_negative(beta: &[i64]) -> bool {
    beta.iter().all(|&c| c <= 0) && beta.iter().any(|&c| c < 0)
}

/// Breadth-first enumeration of a Weyl group; see [`WeylGroup::enumerate`].
pub struct WeylEnumeration<'a> {
    group: &'a WeylGroup,
    seen: HashSet<WeylElement>,
    queue: VecDeque<WeylElement>,
    cap: usize,
}

impl Iterator for WeylEnumeration<'_> {
    type Item = WeylElement;

    fn next(&mut self) -> Option<WeylElement> {
        let w = self.queue.pop_front()?;
        for s in &self.group.simple {
            let next = w.mul(s);
            if !self.seen.contains(&next) {
                assert!(self.seen.len() < self.cap, "enumeration cap exceeded");
                self.seen.insert(next.clone());
                self.queue.push_back(next);
            }
        }
        Some(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanType, Family};

    fn group(s: &str) -> WeylGroup {
        WeylGroup::parse(s).unwrap()
    }

    fn word(v: &[usize]) -> WeylWord {
        WeylWord(v.to_vec())
    }

    #[test]
    fn from_word_examples() {
        let a2 = group("A2");
        assert!(a2.from_word(&word(&[])).unwrap().is_identity());
        assert_eq!(
            a2.from_word(&word(&[1, 2, 1])).unwrap(),
            a2.from_word(&word(&[2, 1, 2])).unwrap()
        );
        assert!(group("A1").from_word(&word(&[1, 1])).unwrap().is_identity());
        assert!(matches!(
            a2.from_word(&word(&[3])),
            Err(Error::IndexOutOfRange { index: 3, rank: 2 })
        ));
    }

    #[test]
    fn length_examples() {
        let a3 = group("A3");
        assert_eq!(a3.length(&a3.identity()), 0);
        assert_eq!(a3.length(&a3.longest_element()), 6);
        let a2 = group("A2");
        assert_eq!(a2.length(&a2.from_word(&word(&[1, 2, 1])).unwrap()), 3);
    }

    #[test]
    fn reduced_word_examples() {
        let a2 = group("A2");
        assert_eq!(a2.reduced_word(&a2.identity()), word(&[]));
        assert_eq!(a2.reduced_word(&a2.longest_element()), word(&[1, 2, 1]));
    }

    #[test]
    fn longest_element_examples() {
        let a1 = group("A1");
        assert_eq!(a1.longest_element(), *a1.simple(1).unwrap());
        let a2 = group("A2");
        assert_eq!(
            a2.longest_element().matrix().to_rows(),
            vec![vec![0, -1], vec![-1, 0]]
        );
        let b2 = group("B2");
        assert_eq!(
            b2.longest_element().matrix().to_rows(),
            vec![vec![-1, 0], vec![0, -1]]
        );
    }

    #[test]
    fn rank_s_examples() {
        let a2 = group("A2");
        assert_eq!(a2.rank_s(&a2.identity()), 0);
        assert_eq!(a2.rank_s(&a2.longest_element()), 1);
        let b2 = group("B2");
        assert_eq!(b2.rank_s(&b2.longest_element()), 2);
    }

    #[test]
    fn bruhat_examples() {
        let a2 = group("A2");
        let w0 = a2.longest_element();
        for w in a2.enumerate(100).unwrap() {
            assert!(a2.bruhat_leq(&a2.identity(), &w));
            if w != w0 {
                assert!(!a2.bruhat_leq(&w0, &w));
            }
        }
        let s1 = a2.from_word(&word(&[1])).unwrap();
        let s2 = a2.from_word(&word(&[2])).unwrap();
        let s1s2 = a2.from_word(&word(&[1, 2])).unwrap();
        assert!(a2.bruhat_leq(&s1, &s1s2));
        assert!(!a2.bruhat_leq(&s1, &s2));
    }

    #[test]
    fn order_examples() {
        let a2 = group("A2");
        assert_eq!(a2.order(&a2.identity()), 1);
        assert_eq!(a2.order(a2.simple(1).unwrap()), 2);
        assert_eq!(a2.order(&a2.from_word(&word(&[1, 2])).unwrap()), 3);
    }

    #[test]
    fn coxeter_number_is_order_of_coxeter_element() {
        for t in CartanType::all_up_to_rank(8) {
            let g = WeylGroup::new(crate::rootsys::cartan_data(t).unwrap());
            assert_eq!(
                g.order(&g.coxeter_element()) as usize,
                g.cartan().coxeter_number,
                "{t}"
            );
        }
    }

    #[test]
    fn stabilizer_examples() {
        let a3 = group("A3");
        for i in 1..=3 {
            assert!(a3.stabilizes_weight(&a3.identity(), i).unwrap());
        }
        let w = a3.from_word(&word(&[1, 2, 1])).unwrap();
        assert!(a3.stabilizes_weight(&w, 3).unwrap());
        let a2 = group("A2");
        assert!(!a2.stabilizes_weight(a2.simple(1).unwrap(), 1).unwrap());
        assert!(a2.stabilizes_weight(a2.simple(1).unwrap(), 4).is_err());
    }

    #[test]
    fn root_sequence_examples() {
        let a2 = group("A2");
        assert!(a2.root_sequence(&word(&[])).unwrap().betas.is_empty());
        assert_eq!(
            a2.root_sequence(&word(&[1, 2])).unwrap().betas,
            vec![vec![1, 0], vec![1, 1]]
        );
        assert_eq!(
            a2.root_sequence(&word(&[1, 2, 1])).unwrap().betas,
            vec![vec![1, 0], vec![1, 1], vec![0, 1]]
        );
        assert!(matches!(
            a2.root_sequence(&word(&[1, 1])),
            Err(Error::NotReduced { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(group("A1").enumerate(10).unwrap().count(), 2);
        assert_eq!(group("A3").enumerate(100).unwrap().count(), 24);
        assert_eq!(group("B3").enumerate(100).unwrap().count(), 48);
        assert_eq!(group("F4").enumerate(2000).unwrap().count(), 1152);
        assert!(matches!(
            group("A3").enumerate(23),
            Err(Error::CapExceeded { cap: 23 })
        ));
    }

    #[test]
    fn simple_reflections_and_braid_relations() {
        for t in CartanType::all_up_to_rank(4) {
            let g = WeylGroup::new(crate::rootsys::cartan_data(t).unwrap());
            let r = g.rank();
            for i in 1..=r {
                let s = g.simple(i).unwrap();
                assert!(s.mul(s).is_identity());
                for j in i + 1..=r {
                    let m = match g.cartan().a[(i - 1, j - 1)] * g.cartan().a[(j - 1, i - 1)] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        _ => unreachable!(),
                    };
                    let st = g.simple(i).unwrap().mul(g.simple(j).unwrap());
                    assert_eq!(g.order(&st), m, "{t} ({i},{j})");
                }
            }
            let w0 = g.longest_element();
            assert_eq!(g.length(&w0), g.cartan().n_pos, "{t}");
            assert!(w0.mul(&w0).is_identity());
        }
    }

    #[test]
    fn a_even_criterion_for_minus_w0() {
        for t in CartanType::all_up_to_rank(6) {
            let g = WeylGroup::new(crate::rootsys::cartan_data(t).unwrap());
            let perm = g.minus_w0_permutation();
            let fixed_point_free = perm.iter().enumerate().all(|(i, &j)| i + 1 != j);
            let a_even = t.family == Family::A && t.rank % 2 == 0;
            assert_eq!(fixed_point_free, a_even, "{t}");
        }
    }

    #[test]
    fn parse_element_syntax() {
        let a3 = group("A3");
        let w0 = a3.longest_element();
        assert_eq!(a3.parse_element("w0").unwrap(), w0);
        assert!(a3.parse_element("").unwrap().is_identity());
        assert_eq!(
            a3.parse_element("w0*1,2").unwrap(),
            w0.mul(&a3.from_word(&word(&[1, 2])).unwrap())
        );
        assert_eq!(
            a3.parse_element(" 1, 2,1").unwrap(),
            a3.from_word(&word(&[1, 2, 1])).unwrap()
        );
        match a3.parse_element("1,x,2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        match a3.parse_element("1,5") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            a3.parse_element("w0+1"),
            Err(Error::Parse { position: 2, .. })
        ));
    }
}
