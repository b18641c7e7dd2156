//! Hermite and Smith normal forms over the integers.
//!
//! Lattices are given by generator rows. Everything runs in `i128`; inputs are
//! small Weyl-group data and moduli, far from the overflow range, but every
//! multiplication is still checked.

pub(crate) type Row = Vec<i128>;

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b)
        .expect("integer lattice arithmetic overflowed i128")
}

fn sub_multiple(target: &mut [i128], src: &[i128], q: i128) {
    if q == 0 {
        return;
    }
    for (t, &s) in target.iter_mut().zip(src) {
        *t = t
            .checked_sub(mul(q, s))
            .expect("integer lattice arithmetic overflowed i128");
    }
}

/// Row-style Hermite normal form with unimodular transform `u`, so `u * m = h`.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`.
/// Zero rows of `h` are kept at the bottom; the matching rows of `u` span the
/// left kernel of `m`.
pub(crate) fn hnf_with_transform(m: &[Row], ncols: usize) -> (Vec<Row>, Vec<Row>) {
    let nrows = m.len();
    let mut h: Vec<Row> = m.to_vec();
    let mut u: Vec<Row> = (0..nrows)
        .map(|i| (0..nrows).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut pr = 0;
    for c in 0..ncols {
        if pr == nrows {
            break;
        }
        while let Some(piv) = (pr..nrows)
            .filter(|&i| h[i][c] != 0)
            .min_by_key(|&i| h[i][c].abs())
        {
            h.swap(pr, piv);
            u.swap(pr, piv);
            let mut clean = true;
            for i in pr + 1..nrows {
                if h[i][c] != 0 {
                    let q = h[i][c].div_euclid(h[pr][c]);
                    let (hp, ui) = (h[pr].clone(), u[pr].clone());
                    sub_multiple(&mut h[i], &hp, q);
                    sub_multiple(&mut u[i], &ui, q);
                    if h[i][c] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if h[pr][c] == 0 {
            continue;
        }
        if h[pr][c] < 0 {
            h[pr].iter_mut().for_each(|x| *x = -*x);
            u[pr].iter_mut().for_each(|x| *x = -*x);
        }
        let (hp, up) = (h[pr].clone(), u[pr].clone());
        for i in 0..pr {
            let q = h[i][c].div_euclid(hp[c]);
            sub_multiple(&mut h[i], &hp, q);
            sub_multiple(&mut u[i], &up, q);
        }
        pr += 1;
    }
    (h, u)
}

/// Nonzero rows of the Hermite normal form: a canonical basis of the row lattice.
pub(crate) fn hnf(m: &[Row], ncols: usize) -> Vec<Row> {
    let (h, _) = hnf_with_transform(m, ncols);
    h.into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect()
}

/// Saturated basis (in Hermite form) of `{x : x * m = 0}`.
pub(crate) fn left_kernel(m: &[Row], ncols: usize) -> Vec<Row> {
    let (h, u) = hnf_with_transform(m, ncols);
    let kernel: Vec<Row> = h
        .iter()
        .zip(u)
        .filter(|(hr, _)| hr.iter().all(|&x| x == 0))
        .map(|(_, ur)| ur)
        .collect();
    hnf(&kernel, m.len())
}

/// Basis of the intersection of two row lattices in `Z^n`.
pub(crate) fn intersect(a: &[Row], b: &[Row], n: usize) -> Vec<Row> {
    let mut stacked: Vec<Row> = a.to_vec();
    stacked.extend(b.iter().map(|r| r.iter().map(|x| -x).collect::<Row>()));
    let kernel = left_kernel(&stacked, n);
    let vectors: Vec<Row> = kernel
        .iter()
        .map(|k| {
            let mut v = vec![0i128; n];
            for (coef, row) in k.iter().zip(a) {
                for (vi, &ri) in v.iter_mut().zip(row) {
                    *vi += mul(*coef, ri);
                }
            }
            v
        })
        .collect();
    hnf(&vectors, n)
}

/// Solves `x * basis = target` for a square full-rank Hermite basis. `None` if
/// `target` is not in the lattice.
pub(crate) fn solve_in_hnf(basis: &[Row], target: &[i128]) -> Option<Row> {
    let n = target.len();
    assert_eq!(basis.len(), n, "basis must be square and full rank");
    let mut rest = target.to_vec();
    let mut x = vec![0i128; n];
    for (i, row) in basis.iter().enumerate() {
        let p = row[i];
        debug_assert!(p > 0 && row[..i].iter().all(|&v| v == 0));
        if rest[i] % p != 0 {
            return None;
        }
        x[i] = rest[i] / p;
        sub_multiple(&mut rest, row, x[i]);
    }
    rest.iter().all(|&v| v == 0).then_some(x)
}

/// Nonzero Smith invariants `d_1 | d_2 | ...` of an integer matrix.
pub(crate) fn smith_invariants(m: &[Row], ncols: usize) -> Vec<i128> {
    let mut width = ncols;
    let mut cur = hnf(m, width);
    loop {
        let diagonal = cur
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == 0 || i == j));
        if diagonal {
            break;
        }
        let rows = cur.len();
        let t: Vec<Row> = (0..width)
            .map(|j| {
                (0..rows)
                    .map(|i| cur[i].get(j).copied().unwrap_or(0))
                    .collect()
            })
            .collect();
        let ht = hnf(&t, rows);
        let cols = ht.len();
        // back to the original orientation
        cur = (0..rows)
            .map(|i| (0..cols).map(|j| ht[j][i]).collect::<Row>())
            .filter(|r: &Row| r.iter().any(|&x| x != 0))
            .collect();
        width = cols;
        cur = hnf(&cur, width);
    }
    let mut d: Vec<i128> = cur
        .iter()
        .enumerate()
        .map(|(i, r)| r[i].abs())
        .filter(|&x| x != 0)
        .collect();
    // enforce the divisibility chain
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = gcd(d[i], d[j]);
            let l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d.sort_unstable();
    d
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    crate::intmat::gcd_i128(a, b)
}

/// Index `[Z^n : L]` of a full-rank lattice given by a square Hermite basis.
pub(crate) fn index_of(basis: &[Row]) -> i128 {
    basis.iter().enumerate().map(|(i, r)| r[i]).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i128]]) -> Vec<Row> {
        v.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn hnf_is_canonical() {
        let a = rows(&[&[2, 4], &[3, 5]]);
        let b = rows(&[&[1, 1], &[0, 2]]);
        // same lattice, different generators
        assert_eq!(hnf(&a, 2), rows(&[&[1, 1], &[0, 2]]));
        assert_eq!(hnf(&b, 2), rows(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn transform_is_consistent() {
        let m = rows(&[&[3, 6, 9], &[1, 4, 1], &[4, 10, 10]]);
        let (h, u) = hnf_with_transform(&m, 3);
        for (i, urow) in u.iter().enumerate() {
            let prod: Row = (0..3)
                .map(|j| urow.iter().zip(&m).map(|(a, r)| a * r[j]).sum())
                .collect();
            assert_eq!(prod, h[i]);
        }
        // third row is the sum of the first two
        assert_eq!(left_kernel(&m, 3).len(), 1);
    }

    #[test]
    fn kernel_is_saturated() {
        // x * [[2],[4]] = 0 has kernel spanned by (2, -1), not (4, -2)
        let k = left_kernel(&rows(&[&[2], &[4]]), 1);
        assert_eq!(k, rows(&[&[2, -1]]));
    }

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(smith_invariants(&rows(&[&[2, 0], &[0, 3]]), 2), vec![1, 6]);
        assert_eq!(smith_invariants(&rows(&[&[2, 4], &[6, 8]]), 2), vec![2, 4]);
        assert_eq!(
            smith_invariants(&rows(&[&[0, 0], &[0, 0]]), 2),
            Vec::<i128>::new()
        );
        assert_eq!(
            smith_invariants(&rows(&[&[5, 0, 0], &[0, 5, 0]]), 3),
            vec![5, 5]
        );
    }

    #[test]
    fn intersection_of_lattices() {
        let a = rows(&[&[2, 0], &[0, 1]]);
        let b = rows(&[&[1, 0], &[0, 3]]);
        assert_eq!(intersect(&a, &b, 2), rows(&[&[2, 0], &[0, 3]]));
    }

    #[test]
    fn solve_membership() {
        let basis = rows(&[&[1, 1], &[0, 2]]);
        assert_eq!(solve_in_hnf(&basis, &[3, 5]), Some(vec![3, 1]));
        assert_eq!(solve_in_hnf(&basis, &[0, 1]), None);
    }
}
