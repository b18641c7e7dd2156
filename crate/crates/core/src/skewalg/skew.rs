//! Actions of `(Z/ell)^k` by automorphisms, skew group algebras, and the
//! block/quiver prediction for a local algebra under such an action.

use serde::Serialize;

use super::fp::{self, Echelon, Matrix, Vector};
use super::structure::radical;
use super::FDAlgebra;
use crate::error::{Error, Result};
use crate::lattice::{BasisKind, EllSubgroup};
use crate::quiver::{cayley_graph, CayleyGraph, VertexGroup};

/// `(Z/ell)^k` acting through commuting automorphisms; generator `j` acts by
/// `matrices[j]` on coordinate columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianAction {
    pub ell: u64,
    pub matrices: Vec<Matrix>,
}

impl AbelianAction {
    pub fn new(alg: &FDAlgebra, ell: u64, matrices: Vec<Matrix>) -> Result<Self> {
        let (n, p) = (alg.dim(), alg.field_char());
        for (g, m) in matrices.iter().enumerate() {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::Dimension(format!(
                    "action matrix {g} is not {n} x {n}"
                )));
            }
            if fp::mat_pow(m, ell, p) != fp::identity(n) {
                return Err(Error::Algebra(format!(
                    "action matrix {g} does not have order dividing {ell}"
                )));
            }
            if fp::mat_vec(m, alg.unit(), p) != *alg.unit() {
                return Err(Error::Algebra(format!("action matrix {g} moves the unit")));
            }
            let cols = fp::transpose(m);
            for i in 0..n {
                for j in 0..n {
                    let lhs =
                        fp::mat_vec(m, &alg.mul(&alg.basis_vector(i), &alg.basis_vector(j)), p);
                    if lhs != alg.mul(&cols[i], &cols[j]) {
                        return Err(Error::Algebra(format!(
                            "action matrix {g} is not multiplicative on ({i}, {j})"
                        )));
                    }
                }
            }
            for h in &matrices[..g] {
                if fp::mat_mul(m, h, p) != fp::mat_mul(h, m, p) {
                    return Err(Error::Algebra("action matrices do not commute".into()));
                }
            }
        }
        Ok(AbelianAction { ell, matrices })
    }

    pub fn trivial(alg: &FDAlgebra, ell: u64, rank: usize) -> Self {
        AbelianAction {
            ell,
            matrices: vec![fp::identity(alg.dim()); rank],
        }
    }

    /// Generator `j` scales basis vector `i` by `zeta^{exponents[j][i]}`.
    pub fn diagonal(alg: &FDAlgebra, ell: u64, zeta: u64, exponents: &[Vec<u64>]) -> Result<Self> {
        let (n, p) = (alg.dim(), alg.field_char());
        let matrices = exponents
            .iter()
            .map(|ex| {
                (0..n)
                    .map(|i| {
                        let mut row = vec![0; n];
                        row[i] = fp::pow(zeta, ex[i] % ell, p);
                        row
                    })
                    .collect()
            })
            .collect();
        Self::new(alg, ell, matrices)
    }

    /// Number of generators `k`.
    pub fn rank(&self) -> usize {
        self.matrices.len()
    }

    pub fn group_order(&self) -> usize {
        (self.ell as usize).pow(self.rank() as u32)
    }

    /// Elements of `(Z/ell)^k` in lexicographic order.
    pub fn group_elements(&self) -> Vec<Vec<i64>> {
        VertexGroup::Abstract {
            ell: self.ell,
            rank: self.rank(),
        }
        .elements()
    }

    pub fn element_matrix(&self, g: &[i64], p: u64) -> Matrix {
        let n = self.matrices.first().map_or(0, |m| m.len());
        g.iter()
            .zip(&self.matrices)
            .fold(fp::identity(n), |acc, (&e, m)| {
                fp::mat_mul(&acc, &fp::mat_pow(m, e as u64, p), p)
            })
    }
}

/// `S * G` with basis `s_a g` indexed by `g_index * dim S + a` and
/// `(s g)(t h) = s g(t) gh`.
pub fn skew_product(s: &FDAlgebra, act: &AbelianAction) -> Result<FDAlgebra> {
    let (n, p) = (s.dim(), s.field_char());
    if act.matrices.iter().any(|m| m.len() != n) {
        return Err(Error::Dimension("action does not match the algebra".into()));
    }
    let elements = act.group_elements();
    let order = elements.len();
    let ell = act.ell as i64;
    let index = |g: &[i64]| {
        g.iter()
            .fold(0usize, |acc, &x| acc * act.ell as usize + x as usize)
    };
    let images: Vec<Matrix> = elements
        .iter()
        .map(|g| fp::transpose(&act.element_matrix(g, p)))
        .collect();
    let dim = n * order;
    let mut unit = vec![0; dim];
    unit[..n].copy_from_slice(s.unit());
    FDAlgebra::from_products(dim, p, unit, |x, y| {
        let (gi, a) = (x / n, x % n);
        let (hi, b) = (y / n, y % n);
        let gh: Vec<i64> = elements[gi]
            .iter()
            .zip(&elements[hi])
            .map(|(u, v)| (u + v).rem_euclid(ell))
            .collect();
        let offset = index(&gh) * n;
        let prod = s.mul_basis_left(a, &images[gi][b]);
        let mut out = vec![0; dim];
        out[offset..offset + n].copy_from_slice(&prod);
        out
    })
}

/// Block and quiver data predicted for `S1 * G` from the characters on `J / J^2`.
#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub block_count: usize,
    pub block_dims: Vec<usize>,
    /// Quiver on the character group; `chi` of multiplicity `m` gives `m` arrows `eta -> eta - chi`.
    pub quiver: CayleyGraph,
    /// Nonzero `m_chi`, keyed by the exponent vector of `chi`.
    pub char_multiplicities: Vec<(Vec<i64>, usize)>,
    /// Subgroup of characters generated by those occurring in `J / J^2`.
    pub y_subgroup: EllSubgroup,
    /// Elements of `G` killed by every character in `Y`.
    pub d_subgroup: EllSubgroup,
}

/// Coordinates with respect to a fixed independent list, read off an augmented echelon form.
struct Coordinates {
    echelon: Echelon,
    width: usize,
    count: usize,
    p: u64,
}

impl Coordinates {
    fn new(basis: &[Vector], width: usize, p: u64) -> Self {
        let count = basis.len();
        let rows: Vec<Vector> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut v = b.clone();
                v.extend(fp::unit_vector(count, i));
                v
            })
            .collect();
        Coordinates {
            echelon: Echelon::new(&rows, width + count, p),
            width,
            count,
            p,
        }
    }

    fn of(&self, v: &[u64]) -> Vector {
        let mut x = v.to_vec();
        x.extend(vec![0; self.count]);
        let r = self.echelon.reduce(&x);
        debug_assert!(fp::is_zero(&r[..self.width]), "vector outside the span");
        r[self.width..]
            .iter()
            .map(|&c| fp::neg(c, self.p))
            .collect()
    }
}

pub fn blquiv_report(s1: &FDAlgebra, act: &AbelianAction) -> Result<BlockReport> {
    let (n, p, ell) = (s1.dim(), s1.field_char(), act.ell);
    let zeta = fp::primitive_root_of_unity(ell, p).ok_or_else(|| Error::NonSplit {
        p,
        reason: format!("F_{p} has no primitive {ell}-th root of unity"),
    })?;
    let j = radical(s1)?;
    if j.dim() + 1 != n {
        return Err(Error::Algebra(format!(
            "algebra is not scalar local: radical has codimension {}",
            n - j.dim()
        )));
    }
    let mut j2 = Echelon::new(&[], n, p);
    for x in &j.basis.rows {
        for y in &j.basis.rows {
            j2.insert(s1.mul(x, y));
        }
    }
    let mut extended = j2.clone();
    let complement: Vec<Vector> = j
        .basis
        .rows
        .iter()
        .filter(|v| extended.insert((*v).clone()))
        .cloned()
        .collect();
    let q = complement.len();
    let mut all = j2.rows.clone();
    all.extend(complement.iter().cloned());
    let coords = Coordinates::new(&all, n, p);
    let skip = j2.dim();

    // action on J / J^2 in the complement coordinates; column i is the image of complement[i]
    let quotient: Vec<Matrix> = act
        .matrices
        .iter()
        .map(|m| {
            let cols: Vec<Vector> = complement
                .iter()
                .map(|v| coords.of(&fp::mat_vec(m, v, p))[skip..].to_vec())
                .collect();
            fp::transpose(&cols)
        })
        .collect();

    let k = act.rank();
    let characters = VertexGroup::Abstract { ell, rank: k }.elements();
    let mut char_multiplicities = Vec::new();
    let mut total = 0;
    for chi in &characters {
        let mut rows: Vec<Vector> = Vec::new();
        for (m, &c) in quotient.iter().zip(chi) {
            let lambda = fp::pow(zeta, c as u64, p);
            rows.extend(m.iter().enumerate().map(|(r, row)| {
                let mut row = row.clone();
                row[r] = fp::sub(row[r], lambda, p);
                row
            }));
        }
        let mult = q - fp::rank(&rows, q, p);
        if mult > 0 {
            char_multiplicities.push((chi.clone(), mult));
            total += mult;
        }
    }
    if total != q {
        return Err(Error::NonSplit {
            p,
            reason: "the group does not act diagonalisably on J / J^2".into(),
        });
    }

    let occurring: Vec<Vec<i64>> = char_multiplicities.iter().map(|(c, _)| c.clone()).collect();
    let y_subgroup = EllSubgroup::from_generators(ell, BasisKind::Weight, k, &occurring);
    let d_elements: Vec<Vec<i64>> = act
        .group_elements()
        .into_iter()
        .filter(|g| {
            occurring
                .iter()
                .all(|c| c.iter().zip(g).map(|(a, b)| a * b).sum::<i64>() % ell as i64 == 0)
        })
        .collect();
    let d_subgroup = EllSubgroup::from_generators(ell, BasisKind::Root, k, &d_elements);
    let block_count = d_elements.len();
    debug_assert_eq!(d_subgroup.order(), block_count as u128);
    let gens: Vec<(Vec<i64>, u32)> = char_multiplicities
        .iter()
        .map(|(c, m)| (c.clone(), *m as u32))
        .collect();
    let quiver = cayley_graph(&VertexGroup::Abstract { ell, rank: k }, &gens)?;
    let total_dim = n * act.group_order();
    Ok(BlockReport {
        block_count,
        block_dims: vec![total_dim / block_count; block_count],
        quiver,
        char_multiplicities,
        y_subgroup,
        d_subgroup,
    })
}

#[cfg(test)]
mod tests {
    use super::super::builders::*;
    use super::super::structure::{blocks, central_idempotents};
    use super::*;
    use crate::quiver::connected_components;

    #[test]
    fn trivial_action_multiplies_blocks() {
        let s = truncated_polynomial(3, 13).unwrap();
        let act = AbelianAction::trivial(&s, 3, 1);
        let t = skew_product(&s, &act).unwrap();
        assert_eq!(t.dim(), 9);
        assert_eq!(central_idempotents(&t).unwrap().len(), 3);
        let r = blquiv_report(&s, &act).unwrap();
        assert_eq!(r.block_count, 3);
        assert_eq!(connected_components(&r.quiver), 3);
        assert!(r.quiver.edges.iter().all(|e| e.from == e.to));
    }

    #[test]
    fn faithful_character_on_truncated_polynomials() {
        let p = 13;
        let s = truncated_polynomial(3, p).unwrap();
        let zeta = fp::primitive_root_of_unity(3, p).unwrap();
        let act = AbelianAction::diagonal(&s, 3, zeta, &[vec![0, 1, 2]]).unwrap();
        let t = skew_product(&s, &act).unwrap();
        assert_eq!(central_idempotents(&t).unwrap().len(), 1);
        let r = blquiv_report(&s, &act).unwrap();
        assert_eq!(r.block_count, 1);
        assert_eq!(r.char_multiplicities, vec![(vec![1], 1)]);
        assert_eq!(r.quiver.edge_count(), 3);
        assert_eq!(connected_components(&r.quiver), 1);
    }

    #[test]
    fn two_independent_characters() {
        let p = 37;
        let s = monomial_algebra(&[vec![0, 0], vec![1, 0], vec![0, 1]], p).unwrap();
        let zeta = fp::primitive_root_of_unity(3, p).unwrap();
        let act = AbelianAction::diagonal(&s, 3, zeta, &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let r = blquiv_report(&s, &act).unwrap();
        assert_eq!(r.block_count, 1);
        assert_eq!(r.quiver.vertices.len(), 9);
        assert_eq!(r.quiver.generators.len(), 2);
        let t = skew_product(&s, &act).unwrap();
        assert_eq!(central_idempotents(&t).unwrap().len(), 1);
    }

    #[test]
    fn inner_action_on_matrices() {
        let p = 13;
        let s = matrix_algebra(2, p).unwrap();
        let zeta = fp::primitive_root_of_unity(3, p).unwrap();
        // conjugation by diag(zeta, 1): E_ab -> zeta^{[a=0] - [b=0]} E_ab
        let act = AbelianAction::diagonal(&s, 3, zeta, &[vec![0, 1, 2, 0]]).unwrap();
        let inner = blocks(&skew_product(&s, &act).unwrap()).unwrap();
        let trivial =
            blocks(&skew_product(&s, &AbelianAction::trivial(&s, 3, 1)).unwrap()).unwrap();
        assert_eq!(inner.block_count(), trivial.block_count());
        assert_eq!(inner.block_count(), 3);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let s = truncated_polynomial(3, 13).unwrap();
        let zeta = fp::primitive_root_of_unity(3, 13).unwrap();
        // X -> zeta X must send X^2 to zeta^2 X^2
        assert!(AbelianAction::diagonal(&s, 3, zeta, &[vec![0, 1, 1]]).is_err());
    }

    #[test]
    fn subalgebras_of_skew_product() {
        let p = 13;
        let s = truncated_polynomial(3, p).unwrap();
        let zeta = fp::primitive_root_of_unity(3, p).unwrap();
        let act = AbelianAction::diagonal(&s, 3, zeta, &[vec![0, 1, 2]]).unwrap();
        let t = skew_product(&s, &act).unwrap();
        // S sits in the identity component, the group elements are 1 * g
        for a in 0..3 {
            for b in 0..3 {
                let mut expected = vec![0; 9];
                expected[..3].copy_from_slice(&s.mul(&s.basis_vector(a), &s.basis_vector(b)));
                assert_eq!(t.mul(&t.basis_vector(a), &t.basis_vector(b)), expected);
            }
        }
        let g = t.basis_vector(3);
        assert_eq!(t.mul(&g, &g), t.basis_vector(6));
        assert_eq!(t.mul(&t.mul(&g, &g), &g), *t.unit());
    }
}
