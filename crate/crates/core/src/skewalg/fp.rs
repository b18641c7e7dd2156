//! Arithmetic and linear algebra over a prime field `F_p`, `p < 2^32`.
//!
//! Vectors are `Vec<u64>` with entries in `[0, p)`.

pub type Vector = Vec<u64>;

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn neg(a: u64, p: u64) -> u64 {
    (p - a) % p
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero element.
pub fn inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse in F_{p}");
    pow(a, p - 2, p)
}

pub fn from_i64(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p > min_dim` with `p = 1 mod ell`.
pub fn make_field_char(ell: u64, min_dim: u64) -> u64 {
    assert!(ell >= 2, "ell must be at least 2");
    let mut p = min_dim + 1;
    loop {
        if p % ell == 1 && is_prime(p) {
            return p;
        }
        p += 1;
    }
}

pub fn multiplicative_order(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p));
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = mul(x, a, p);
        k += 1;
    }
    k
}

/// Smallest element of multiplicative order exactly `ell`.
pub fn primitive_root_of_unity(ell: u64, p: u64) -> Option<u64> {
    (1..p).find(|&a| multiplicative_order(a, p) == ell)
}

pub fn axpy(y: &mut [u64], a: u64, x: &[u64], p: u64) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = (*yi + a * xi) % p;
    }
}

pub fn scale(x: &[u64], a: u64, p: u64) -> Vector {
    x.iter().map(|&v| mul(v, a, p)).collect()
}

pub fn is_zero(x: &[u64]) -> bool {
    x.iter().all(|&v| v == 0)
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Row space in reduced row echelon form, with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
    pub width: usize,
    p: u64,
}

impl Echelon {
    pub fn new(vectors: &[Vector], width: usize, p: u64) -> Self {
        let mut e = Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
            width,
            p,
        };
        for v in vectors {
            e.insert(v.clone());
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[u64]) -> Vector {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                axpy(&mut v, neg(f, self.p), row, self.p);
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        let p = self.p;
        let mut v = self.reduce(&v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = inv(v[c], p);
        v = scale(&v, f, p);
        for row in &mut self.rows {
            let g = row[c];
            if g != 0 {
                axpy(row, neg(g, p), &v, p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.rows.insert(at, v);
        self.pivots.insert(at, c);
        true
    }

    /// Coordinates of a vector of the span with respect to `rows`.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vector> {
        let coords: Vector = self.pivots.iter().map(|&c| v[c]).collect();
        let mut check = vec![0; self.width];
        for (row, &a) in self.rows.iter().zip(&coords) {
            axpy(&mut check, a, row, self.p);
        }
        (check.as_slice() == v).then_some(coords)
    }
}

pub fn rank(vectors: &[Vector], width: usize, p: u64) -> usize {
    Echelon::new(vectors, width, p).dim()
}

/// Basis of `{y : sum_i y_i rows[i] = 0}`.
pub fn left_kernel(rows: &[Vector], width: usize, p: u64) -> Vec<Vector> {
    let m = rows.len();
    let augmented: Vec<Vector> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend(unit_vector(m, i));
            v
        })
        .collect();
    let e = Echelon::new(&augmented, width + m, p);
    e.rows
        .iter()
        .zip(&e.pivots)
        .filter(|(_, &c)| c >= width)
        .map(|(r, _)| r[width..].to_vec())
        .collect()
}

/// Matrices are row-major `Vec<Vector>`; `m[i][j]` is row `i`, column `j`.
pub type Matrix = Vec<Vector>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit_vector(n, i)).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, p: u64) -> Matrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![0; n];
            for (k, &x) in row.iter().enumerate() {
                axpy(&mut out, x, &b[k], p);
            }
            out
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, x: &[u64], p: u64) -> Vector {
    a.iter()
        .map(|row| row.iter().zip(x).fold(0, |acc, (&r, &v)| (acc + r * v) % p))
        .collect()
}

pub fn mat_pow(a: &Matrix, mut e: u64, p: u64) -> Matrix {
    let mut result = identity(a.len());
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base, p);
        }
        base = mat_mul(&base, &base, p);
        e >>= 1;
    }
    result
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.first().map_or(0, |r| r.len());
    (0..n).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Inverse by Gauss-Jordan; `None` if singular.
pub fn mat_inv(a: &Matrix, p: u64) -> Option<Matrix> {
    let n = a.len();
    let mut m: Vec<Vector> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend(unit_vector(n, i));
            v
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| m[i][c] != 0)?;
        m.swap(c, piv);
        let f = inv(m[c][c], p);
        m[c] = scale(&m[c], f, p);
        for i in 0..n {
            if i != c && m[i][c] != 0 {
                let g = neg(m[i][c], p);
                let pivot_row = m[c].clone();
                axpy(&mut m[i], g, &pivot_row, p);
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Polynomial helpers; coefficients in increasing degree.
pub fn poly_eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Divides `f` by `(t - a)`, assuming `a` is a root.
pub fn poly_deflate(f: &[u64], a: u64, p: u64) -> Vector {
    let n = f.len() - 1;
    let mut q = vec![0; n];
    let mut carry = 0;
    for k in (0..n).rev() {
        carry = (f[k + 1] + carry * a) % p;
        q[k] = carry;
    }
    debug_assert_eq!((f[0] + carry * a) % p, 0, "not a root");
    q
}

/// Roots in `F_p` by exhaustive search, each with its multiplicity, and the
/// degree of the part with no roots in `F_p`.
pub fn poly_roots(f: &[u64], p: u64) -> (Vec<(u64, usize)>, usize) {
    let mut g = f.to_vec();
    while g.len() > 1 && *g.last().unwrap() == 0 {
        g.pop();
    }
    let mut roots = Vec::new();
    for a in 0..p {
        let mut mult = 0;
        while g.len() > 1 && poly_eval(&g, a, p) == 0 {
            g = poly_deflate(&g, a, p);
            mult += 1;
        }
        if mult > 0 {
            roots.push((a, mult));
        }
        if g.len() == 1 {
            break;
        }
    }
    (roots, g.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_characteristics() {
        assert_eq!(make_field_char(3, 10), 13);
        assert_eq!(make_field_char(5, 10), 11);
        assert_eq!(make_field_char(3, 5), 7);
        assert_eq!(make_field_char(3, 108), 109);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(primitive_root_of_unity(3, 7), Some(2));
        assert_eq!(primitive_root_of_unity(3, 5), None);
        let z = primitive_root_of_unity(5, 11).unwrap();
        assert_eq!(pow(z, 5, 11), 1);
    }

    #[test]
    fn echelon_and_kernel() {
        let p = 7;
        let vs = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let e = Echelon::new(&vs, 3, p);
        assert_eq!(e.dim(), 2);
        assert!(e.contains(&[1, 3, 4]));
        assert!(!e.contains(&[0, 0, 1]));
        let c = e.coordinates(&[1, 3, 4]).unwrap();
        let mut back = vec![0; 3];
        for (r, a) in e.rows.iter().zip(c) {
            axpy(&mut back, a, r, p);
        }
        assert_eq!(back, vec![1, 3, 4]);
        let k = left_kernel(&vs, 3, p);
        assert_eq!(k.len(), 1);
        let mut s = vec![0; 3];
        for (r, &a) in vs.iter().zip(&k[0]) {
            axpy(&mut s, a, r, p);
        }
        assert!(is_zero(&s));
    }

    #[test]
    fn inverse_matrix() {
        let p = 11;
        let a = vec![vec![1, 2], vec![3, 4]];
        let b = mat_inv(&a, p).unwrap();
        assert_eq!(mat_mul(&a, &b, p), identity(2));
        assert!(mat_inv(&vec![vec![1, 2], vec![2, 4]], p).is_none());
    }

    #[test]
    fn polynomial_roots() {
        let p = 7;
        // (t - 1)^2 (t - 3) = t^3 - 5t^2 + 7t - 3
        let f = vec![from_i64(-3, p), 0, from_i64(-5, p), 1];
        let (roots, rest) = poly_roots(&f, p);
        assert_eq!(roots, vec![(1, 2), (3, 1)]);
        assert_eq!(rest, 0);
        // t^2 + 1 is irreducible mod 7
        assert_eq!(poly_roots(&[1, 0, 1], p), (vec![], 2));
    }
}
