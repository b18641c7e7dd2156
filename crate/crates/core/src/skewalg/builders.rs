//! Concrete algebras.

use super::fp::{self, Vector};
use super::skew::AbelianAction;
use super::FDAlgebra;
use crate::error::{Error, Result};
use crate::invariants::FiberClass;

/// `Mat_m(F_p)` with basis `E_ab` at index `a m + b`.
pub fn matrix_algebra(m: usize, p: u64) -> Result<FDAlgebra> {
    let n = m * m;
    let unit = (0..n).map(|i| u64::from(i / m == i % m)).collect();
    FDAlgebra::from_products(n, p, unit, |x, y| {
        let (a, b, c, d) = (x / m, x % m, y / m, y % m);
        let mut v = vec![0; n];
        if b == c {
            v[a * m + d] = 1;
        }
        v
    })
}

/// `F_p[Z/ell]` with basis the group elements `0, ..., ell - 1`.
pub fn group_algebra(ell: usize, p: u64) -> Result<FDAlgebra> {
    FDAlgebra::from_products(ell, p, fp::unit_vector(ell, 0), |a, b| {
        fp::unit_vector(ell, (a + b) % ell)
    })
}

/// `F_p^copies` with basis the coordinate idempotents.
pub fn split_product(copies: usize, p: u64) -> Result<FDAlgebra> {
    FDAlgebra::from_products(copies, p, vec![1; copies], |a, b| {
        let mut v = vec![0; copies];
        if a == b {
            v[a] = 1;
        }
        v
    })
}

/// `F_p[X]/(X^n)` with basis `1, X, ..., X^{n-1}`.
pub fn truncated_polynomial(n: usize, p: u64) -> Result<FDAlgebra> {
    FDAlgebra::from_products(n, p, fp::unit_vector(n, 0), |a, b| {
        let mut v = vec![0; n];
        if a + b < n {
            v[a + b] = 1;
        }
        v
    })
}

/// Quotient of a polynomial ring by a monomial ideal, given by its standard
/// monomials (an order ideal of exponent vectors containing 0, listed in basis order).
pub fn monomial_algebra(staircase: &[Vec<u32>], p: u64) -> Result<FDAlgebra> {
    let n = staircase.len();
    let index = |m: &[u32]| staircase.iter().position(|s| s.as_slice() == m);
    let zero = staircase
        .first()
        .filter(|m| m.iter().all(|&e| e == 0))
        .ok_or_else(|| Error::Algebra("the staircase must start with the monomial 1".into()))?;
    for m in staircase {
        if m.len() != zero.len() {
            return Err(Error::Dimension(
                "monomials have different numbers of variables".into(),
            ));
        }
        for v in 0..m.len() {
            if m[v] > 0 {
                let mut d = m.clone();
                d[v] -= 1;
                if index(&d).is_none() {
                    return Err(Error::Algebra(format!(
                        "{m:?} is in the staircase but {d:?} is not"
                    )));
                }
            }
        }
    }
    FDAlgebra::from_products(n, p, fp::unit_vector(n, 0), |a, b| {
        let sum: Vec<u32> = staircase[a]
            .iter()
            .zip(&staircase[b])
            .map(|(x, y)| x + y)
            .collect();
        let mut v = vec![0; n];
        if let Some(k) = index(&sum) {
            v[k] = 1;
        }
        v
    })
}

/// Structure constants of `A (x) B`, basis `a_i (x) b_j` at index `i dim B + j`.
pub fn tensor(a: &FDAlgebra, b: &FDAlgebra) -> Result<FDAlgebra> {
    let p = a.field_char();
    if b.field_char() != p {
        return Err(Error::Algebra(format!(
            "cannot tensor over F_{p} and F_{}",
            b.field_char()
        )));
    }
    let (na, nb) = (a.dim(), b.dim());
    let mut unit = vec![0; na * nb];
    for (i, &x) in a.unit().iter().enumerate() {
        for (j, &y) in b.unit().iter().enumerate() {
            unit[i * nb + j] = fp::mul(x, y, p);
        }
    }
    FDAlgebra::from_products(na * nb, p, unit, |x, y| {
        let (i1, j1, i2, j2) = (x / nb, x % nb, y / nb, y % nb);
        let mut v = vec![0; na * nb];
        for &(k, c) in a.basis_product(i1, i2) {
            for &(l, d) in b.basis_product(j1, j2) {
                v[k * nb + l] = (v[k * nb + l] + c * d) % p;
            }
        }
        v
    })
}

/// Fiber of the centre over one fundamental-weight direction: basis
/// `1, a(1), ..., a(ell - 1)` with `a(0) = b`, `a(ell) = c` and
/// `a(k) a(k') = a(0) a(k + k')` for `k + k' <= ell`, `a(ell) a(k + k' - ell)` otherwise.
/// The nonvanishing values of `b` and `c` are taken to be 1.
pub fn build_fiber_algebra_over(
    ell: usize,
    b_zero: bool,
    c_zero: bool,
    p: u64,
) -> Result<FDAlgebra> {
    assert!(ell >= 2, "ell must be at least 2");
    let b = u64::from(!b_zero);
    let c = u64::from(!c_zero);
    FDAlgebra::from_products(ell, p, fp::unit_vector(ell, 0), |x, y| {
        let mut v = vec![0; ell];
        match (x, y) {
            (0, k) | (k, 0) => v[k] = 1,
            (k, l) if k + l < ell => v[k + l] = b,
            (k, l) if k + l == ell => v[0] = b * c,
            (k, l) => v[k + l - ell] = c,
        }
        v
    })
}

/// [`build_fiber_algebra_over`] at the smallest admissible characteristic.
pub fn build_fiber_algebra(ell: usize, b_zero: bool, c_zero: bool) -> Result<FDAlgebra> {
    let p = fp::make_field_char(ell as u64, ell as u64);
    build_fiber_algebra_over(ell, b_zero, c_zero, p)
}

/// Tensor product of the fibers prescribed by a vanishing pattern.
pub fn fiber_tensor(ell: usize, fibers: &FiberClass) -> Result<FDAlgebra> {
    let r = fibers.indices.len() as u32;
    let p = fp::make_field_char(ell as u64, (ell as u64).pow(r));
    let mut acc = split_product(1, p)?;
    for f in &fibers.indices {
        let factor = build_fiber_algebra_over(ell, !f.b_nonzero, !f.c_nonzero, p)?;
        acc = tensor(&acc, &factor)?;
    }
    Ok(acc)
}

fn borel_field(ell: usize) -> Result<(u64, u64)> {
    if ell.is_multiple_of(2) || ell < 3 {
        return Err(Error::Algebra(format!(
            "ell = {ell} must be odd and at least 3"
        )));
    }
    let p = fp::make_field_char(ell as u64, (ell * ell) as u64);
    let zeta = fp::primitive_root_of_unity(ell as u64, p).expect("p = 1 mod ell");
    Ok((p, zeta))
}

/// Restricted Borel of `sl_2`: basis `E^a K^b` at index `a ell + b`, with
/// `K E = zeta^2 E K`, `K^ell = 1`, `E^ell = 0`.
pub fn build_borel_sl2(ell: usize) -> Result<FDAlgebra> {
    let (p, zeta) = borel_field(ell)?;
    let n = ell * ell;
    FDAlgebra::from_products(n, p, fp::unit_vector(n, 0), |x, y| {
        let (a, b, c, d) = (x / ell, x % ell, y / ell, y % ell);
        let mut v = vec![0; n];
        if a + c < ell {
            // K^b E^c = zeta^{2bc} E^c K^b
            v[(a + c) * ell + (b + d) % ell] = fp::pow(zeta, (2 * b * c) as u64, p);
        }
        v
    })
}

/// `F_p[E]/(E^ell)` with `K` acting by `E -> zeta^2 E`; its skew product is
/// [`build_borel_sl2`].
pub fn borel_sl2_skew_data(ell: usize) -> Result<(FDAlgebra, AbelianAction)> {
    let (p, zeta) = borel_field(ell)?;
    let s = truncated_polynomial(ell, p)?;
    let exps: Vec<u64> = (0..ell as u64).map(|a| 2 * a % ell as u64).collect();
    let act = AbelianAction::diagonal(&s, ell as u64, zeta, &[exps])?;
    Ok((s, act))
}

/// Orthogonal idempotents `(1/ell) sum_b zeta^{-jb} K^b` inside [`build_borel_sl2`].
pub fn borel_sl2_torus_idempotents(ell: usize, borel: &FDAlgebra) -> Vec<Vector> {
    let p = borel.field_char();
    let zeta = fp::primitive_root_of_unity(ell as u64, p).expect("p = 1 mod ell");
    let inv_ell = fp::inv(ell as u64, p);
    (0..ell)
        .map(|j| {
            let mut v = vec![0; borel.dim()];
            for (b, slot) in v.iter_mut().take(ell).enumerate() {
                let e = (ell - (j * b) % ell) % ell;
                *slot = fp::mul(inv_ell, fp::pow(zeta, e as u64, p), p);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::skew::{blquiv_report, skew_product};
    use super::super::structure::{basic_quiver, blocks, central_idempotents, radical};
    use super::*;
    use crate::quiver::connected_components;

    #[test]
    fn fiber_algebra_cases() {
        let ss = build_fiber_algebra(3, false, false).unwrap();
        assert_eq!(central_idempotents(&ss).unwrap().len(), 3);
        assert_eq!(radical(&ss).unwrap().dim(), 0);

        let trun = build_fiber_algebra(3, true, false).unwrap();
        assert_eq!(radical(&trun).unwrap().power_dims, vec![2, 1, 0]);
        assert_eq!(central_idempotents(&trun).unwrap().len(), 1);
        let trun_c = build_fiber_algebra(3, false, true).unwrap();
        assert_eq!(radical(&trun_c).unwrap().power_dims, vec![2, 1, 0]);

        let local = build_fiber_algebra(3, true, true).unwrap();
        assert_eq!(radical(&local).unwrap().power_dims, vec![2, 0]);
        assert_eq!(central_idempotents(&local).unwrap().len(), 1);
    }

    #[test]
    fn fiber_algebras_at_larger_ell() {
        for ell in [5, 7] {
            let ss = build_fiber_algebra(ell, false, false).unwrap();
            assert_eq!(central_idempotents(&ss).unwrap().len(), ell);
            let trun = build_fiber_algebra(ell, false, true).unwrap();
            let dims = radical(&trun).unwrap().power_dims;
            assert_eq!(dims, (0..ell).rev().collect::<Vec<_>>());
        }
    }

    #[test]
    fn tensor_examples() {
        let p = 13;
        let a = build_fiber_algebra_over(3, false, false, p).unwrap();
        let k = split_product(1, p).unwrap();
        assert_eq!(tensor(&a, &k).unwrap(), a);
        let t = build_fiber_algebra_over(3, true, false, p).unwrap();
        assert_eq!(
            central_idempotents(&tensor(&a, &t).unwrap()).unwrap().len(),
            3
        );
        assert_eq!(
            central_idempotents(&tensor(&a, &a).unwrap()).unwrap().len(),
            9
        );
        let other = split_product(2, 7).unwrap();
        assert!(tensor(&a, &other).is_err());
    }

    #[test]
    fn borel_sl2_at_three() {
        let b = build_borel_sl2(3).unwrap();
        assert_eq!(b.dim(), 9);
        let r = radical(&b).unwrap();
        assert_eq!(r.dim(), 6);
        assert_eq!(blocks(&b).unwrap().block_count(), 1);
        let ids = borel_sl2_torus_idempotents(3, &b);
        let q = basic_quiver(&b, &ids).unwrap();
        // each vertex has exactly one outgoing and one incoming arrow, no loops
        for (i, row) in q.iter().enumerate() {
            assert_eq!(row.iter().sum::<usize>(), 1);
            assert_eq!(row[i], 0);
            assert_eq!(q.iter().map(|r| r[i]).sum::<usize>(), 1);
        }
    }

    #[test]
    fn borel_sl2_at_five() {
        let b = build_borel_sl2(5).unwrap();
        assert_eq!(b.dim(), 25);
        assert_eq!(b.dim() - radical(&b).unwrap().dim(), 5);
        assert_eq!(blocks(&b).unwrap().block_count(), 1);
        assert!(build_borel_sl2(4).is_err());
    }

    #[test]
    fn borel_sl2_is_a_skew_product() {
        let (s, act) = borel_sl2_skew_data(3).unwrap();
        let t = skew_product(&s, &act).unwrap();
        assert_eq!(central_idempotents(&t).unwrap().len(), 1);
        let report = blquiv_report(&s, &act).unwrap();
        assert_eq!(report.block_count, 1);
        assert_eq!(report.quiver.vertices.len(), 3);
        assert_eq!(report.quiver.edge_count(), 3);
        assert_eq!(connected_components(&report.quiver), 1);
    }

    #[test]
    fn monomial_staircase_validation() {
        assert!(monomial_algebra(&[vec![0], vec![2]], 7).is_err());
        assert!(monomial_algebra(&[vec![1]], 7).is_err());
        assert_eq!(
            monomial_algebra(&[vec![0], vec![1], vec![2]], 7).unwrap(),
            truncated_polynomial(3, 7).unwrap()
        );
    }
}
