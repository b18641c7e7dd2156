//! Sublattices of the weight and root lattices and their reductions mod `ell`.
//!
//! Subgroups of `(Z/ell)^r` are always handled through their integer lifts
//! `L + ell Z^r`, so nothing here assumes that `ell` is prime.

mod normal_form;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{gcd_u64, GoodEll};
use crate::weyl::{WeylElement, WeylGroup, WeylWord};

use normal_form::{hnf, index_of, intersect, left_kernel, smith_invariants, solve_in_hnf, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    /// Coordinates in the fundamental weights (the lattice `P`).
    Weight,
    /// Coordinates in the simple roots (the lattice `Q`).
    Root,
}

/// Subgroup of `Z^r`, stored by its Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubLattice {
    pub basis_kind: BasisKind,
    pub ambient_rank: usize,
    pub generators: Vec<Vec<i64>>,
}

fn to_rows(v: &[Vec<i64>]) -> Vec<Row> {
    v.iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect()
}

fn from_rows(v: Vec<Row>) -> Vec<Vec<i64>> {
    v.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).expect("lattice entry fits in i64"))
                .collect()
        })
        .collect()
}

impl SubLattice {
    pub fn from_generators(basis_kind: BasisKind, ambient_rank: usize, gens: &[Vec<i64>]) -> Self {
        assert!(gens.iter().all(|g| g.len() == ambient_rank));
        SubLattice {
            basis_kind,
            ambient_rank,
            generators: from_rows(hnf(&to_rows(gens), ambient_rank)),
        }
    }

    pub fn zero(basis_kind: BasisKind, ambient_rank: usize) -> Self {
        Self::from_generators(basis_kind, ambient_rank, &[])
    }

    pub fn full(basis_kind: BasisKind, ambient_rank: usize) -> Self {
        Self::from_generators(basis_kind, ambient_rank, &unit_vectors(ambient_rank))
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn contains_vector(&self, v: &[i64]) -> bool {
        let mut gens = self.generators.clone();
        gens.push(v.to_vec());
        Self::from_generators(self.basis_kind, self.ambient_rank, &gens) == *self
    }

    pub fn is_sublattice_of(&self, other: &SubLattice) -> bool {
        self.basis_kind == other.basis_kind
            && self.ambient_rank == other.ambient_rank
            && self.generators.iter().all(|g| other.contains_vector(g))
    }

    pub fn sum(&self, other: &SubLattice) -> SubLattice {
        assert_eq!(self.basis_kind, other.basis_kind);
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::from_generators(self.basis_kind, self.ambient_rank, &gens)
    }

    pub fn intersection(&self, other: &SubLattice) -> SubLattice {
        assert_eq!(self.basis_kind, other.basis_kind);
        let rows = intersect(
            &to_rows(&self.generators),
            &to_rows(&other.generators),
            self.ambient_rank,
        );
        SubLattice {
            basis_kind: self.basis_kind,
            ambient_rank: self.ambient_rank,
            generators: from_rows(rows),
        }
    }

    /// `Z^r / L` is torsion-free.
    pub fn is_saturated(&self) -> bool {
        smith_invariants(&to_rows(&self.generators), self.ambient_rank)
            .iter()
            .all(|&d| d == 1)
    }
}

fn unit_vectors(r: usize) -> Vec<Vec<i64>> {
    (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Subgroup of `(Z/ell)^r`, represented by the Hermite form of its lift `L + ell Z^r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllSubgroup {
    pub ell: u64,
    pub basis_kind: BasisKind,
    pub ambient_rank: usize,
    /// Generators reduced into `[0, ell)`, zero vectors dropped.
    pub generators: Vec<Vec<i64>>,
    lift: Vec<Vec<i64>>,
}

impl EllSubgroup {
    pub fn from_generators(
        ell: u64,
        basis_kind: BasisKind,
        ambient_rank: usize,
        gens: &[Vec<i64>],
    ) -> Self {
        let e = ell as i64;
        let mut all: Vec<Vec<i64>> = gens.to_vec();
        all.extend(
            unit_vectors(ambient_rank)
                .into_iter()
                .map(|v| v.into_iter().map(|x| x * e).collect::<Vec<i64>>()),
        );
        let lift = from_rows(hnf(&to_rows(&all), ambient_rank));
        let generators = lift
            .iter()
            .map(|r| r.iter().map(|x| x.rem_euclid(e)).collect::<Vec<i64>>())
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        EllSubgroup {
            ell,
            basis_kind,
            ambient_rank,
            generators,
            lift,
        }
    }

    pub fn from_lattice(sub: &SubLattice, ell: u64) -> Self {
        Self::from_generators(ell, sub.basis_kind, sub.ambient_rank, &sub.generators)
    }

    pub fn whole(ell: u64, basis_kind: BasisKind, ambient_rank: usize) -> Self {
        Self::from_generators(ell, basis_kind, ambient_rank, &unit_vectors(ambient_rank))
    }

    pub fn zero(ell: u64, basis_kind: BasisKind, ambient_rank: usize) -> Self {
        Self::from_generators(ell, basis_kind, ambient_rank, &[])
    }

    /// The integer lift `L + ell Z^r` in Hermite form.
    pub fn lift(&self) -> SubLattice {
        SubLattice {
            basis_kind: self.basis_kind,
            ambient_rank: self.ambient_rank,
            generators: self.lift.clone(),
        }
    }

    pub fn order(&self) -> u128 {
        let index = index_of(&to_rows(&self.lift)) as u128;
        (self.ell as u128).pow(self.ambient_rank as u32) / index
    }

    /// `Some(k)` when the order is exactly `ell^k`.
    pub fn ell_exponent(&self) -> Option<u32> {
        let mut n = self.order();
        let mut k = 0;
        while n > 1 {
            if !n.is_multiple_of(self.ell as u128) {
                return None;
            }
            n /= self.ell as u128;
            k += 1;
        }
        Some(k)
    }

    /// Abelian invariants of the subgroup itself.
    pub fn invariants(&self) -> Vec<u64> {
        quotient_invariants(
            &EllSubgroup::zero(self.ell, self.basis_kind, self.ambient_rank),
            self,
        )
        .expect("zero subgroup is contained in everything")
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let target: Row = v.iter().map(|&x| i128::from(x)).collect();
        solve_in_hnf(&to_rows(&self.lift), &target).is_some()
    }

    pub fn is_subgroup_of(&self, other: &EllSubgroup) -> bool {
        self.ell == other.ell
            && self.basis_kind == other.basis_kind
            && self.ambient_rank == other.ambient_rank
            && self.lift.iter().all(|g| other.contains(g))
    }

    pub fn intersection(&self, other: &EllSubgroup) -> EllSubgroup {
        let meet = self.lift().intersection(&other.lift());
        EllSubgroup::from_lattice(&meet, self.ell)
    }

    /// Every element, as vectors with entries in `[0, ell)`, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let e = self.ell as i64;
        let mut seen = BTreeSet::new();
        seen.insert(vec![0; self.ambient_rank]);
        let mut frontier = vec![vec![0; self.ambient_rank]];
        while let Some(v) = frontier.pop() {
            for g in &self.generators {
                let next: Vec<i64> = v
                    .iter()
                    .zip(g)
                    .map(|(a, b)| (a + b).rem_euclid(e))
                    .collect();
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// Invariant factors of `sup / sub`, each greater than one, in divisibility order.
pub fn quotient_invariants(sub: &EllSubgroup, sup: &EllSubgroup) -> Result<Vec<u64>> {
    if sub.ell != sup.ell
        || sub.ambient_rank != sup.ambient_rank
        || sub.basis_kind != sup.basis_kind
    {
        return Err(Error::Dimension(
            "subgroups live in different ambient groups".into(),
        ));
    }
    let sup_basis = to_rows(&sup.lift);
    let coords: Option<Vec<Row>> = to_rows(&sub.lift)
        .iter()
        .map(|row| solve_in_hnf(&sup_basis, row))
        .collect();
    let coords = coords.ok_or(Error::NotContained)?;
    Ok(smith_invariants(&coords, sup.ambient_rank)
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u64)
        .collect())
}

/// Kernel of `w - 1` on `P` (weight coordinates) or `Q` (root coordinates).
pub fn fixed_lattice(group: &WeylGroup, w: &WeylElement, which: BasisKind) -> SubLattice {
    let m = match which {
        BasisKind::Weight => w.matrix().clone(),
        BasisKind::Root => group.root_matrix(w),
    };
    // x with (M - I) x = 0  <=>  x^T (M - I)^T = 0
    let b = m.sub_identity().transpose();
    let rows: Vec<Row> = b
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let kernel = left_kernel(&rows, group.rank());
    SubLattice {
        basis_kind: which,
        ambient_rank: group.rank(),
        generators: from_rows(kernel),
    }
}

fn simple_span(r: usize, indices: impl IntoIterator<Item = usize>, kind: BasisKind) -> SubLattice {
    let gens: Vec<Vec<i64>> = indices
        .into_iter()
        .map(|i| (0..r).map(|j| i64::from(j + 1 == i)).collect())
        .collect();
    SubLattice::from_generators(kind, r, &gens)
}

/// `A_w`: span of the root sequence of a reduced word, checked against the span of
/// the simple roots occurring in the word.
pub fn a_w_lattice(group: &WeylGroup, word: &WeylWord) -> Result<SubLattice> {
    let seq = group.root_sequence(word)?;
    let r = group.rank();
    let from_roots = SubLattice::from_generators(BasisKind::Root, r, &seq.betas);
    let from_letters = simple_span(r, word.letter_set(), BasisKind::Root);
    assert_eq!(
        from_roots, from_letters,
        "span of the root sequence differs from the span of the letters of {word}"
    );
    Ok(from_roots)
}

/// `B^w`: span of the fundamental weights whose reflections do not occur in the word.
pub fn b_w_lattice(group: &WeylGroup, word: &WeylWord) -> Result<SubLattice> {
    group.root_sequence(word)?;
    let present = word.letter_set();
    let r = group.rank();
    Ok(simple_span(
        r,
        (1..=r).filter(|i| !present.contains(i)),
        BasisKind::Weight,
    ))
}

fn require_coprime(group: &WeylGroup, ell: u64, w: &WeylElement) -> Result<()> {
    let order = group.order(w);
    let g = gcd_u64(ell, order);
    if g != 1 {
        return Err(Error::OrderNotCoprime { ell, order, gcd: g });
    }
    Ok(())
}

/// `Q_ell^w`, the image of `Q^w` in `Q / ell Q`. Requires `gcd(ell, ord w) = 1`.
pub fn fixed_subgroup_mod_ell(group: &WeylGroup, ell: u64, w: &WeylElement) -> Result<EllSubgroup> {
    require_coprime(group, ell, w)?;
    Ok(EllSubgroup::from_lattice(
        &fixed_lattice(group, w, BasisKind::Root),
        ell,
    ))
}

/// Normaliser of a block under the winding automorphisms:
/// `Q_ell^w` intersected with the image of the span of `alpha_i` for `i` outside
/// `frak_s(w1, w2)`, where `w = w2^{-1} w1`.
pub fn normalizer_lattice(
    group: &WeylGroup,
    ell: u64,
    w1: &WeylElement,
    w2: &WeylElement,
) -> Result<EllSubgroup> {
    GoodEll::require(group.cartan(), ell)?;
    let twist = group.inverse(w2).mul(w1);
    let q_fixed = fixed_subgroup_mod_ell(group, ell, &twist)?;
    let frak_s = group.frak_s(w1, w2);
    let r = group.rank();
    let outside = simple_span(r, (1..=r).filter(|i| !frak_s.contains(i)), BasisKind::Root);
    let outside = EllSubgroup::from_lattice(&outside, ell);
    Ok(q_fixed.intersection(&outside))
}
