//! Radical, centre, central idempotents and block decomposition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp::{self, Echelon, Vector};
use super::FDAlgebra;
use crate::error::{Error, Result};

const SPLITTING_SEED: u64 = 0x1d3e_a7e5;
const RANDOM_SPLITTING_ATTEMPTS: usize = 64;
const NEWTON_MAX_STEPS: usize = 64;

fn require_large_char(a: &FDAlgebra) -> Result<()> {
    if a.field_char() as usize <= a.dim() {
        return Err(Error::Algebra(format!(
            "the trace-form radical needs p > dim, got p = {} and dim = {}",
            a.field_char(),
            a.dim()
        )));
    }
    Ok(())
}

/// The Jacobson radical and the dimensions of its powers.
#[derive(Debug, Clone)]
pub struct Radical {
    pub basis: Echelon,
    /// `dim J, dim J^2, ...`, ending with 0.
    pub power_dims: Vec<usize>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Least `k` with `J^k = 0`.
    pub fn nilpotency_index(&self) -> usize {
        if self.dim() == 0 {
            1
        } else {
            self.power_dims.len()
        }
    }
}

/// Kernel of the trace form `(x, y) -> tr(L_{xy})`.
///
/// For `p > dim` every element of the kernel has nilpotent left multiplication, so
/// the kernel is the radical; nilpotency of the ideal is still checked.
pub fn radical(a: &FDAlgebra) -> Result<Radical> {
    require_large_char(a)?;
    let (n, p) = (a.dim(), a.field_char());
    // t_k = tr L_{e_k}
    let t: Vec<u64> = (0..n)
        .map(|k| (0..n).fold(0, |acc, i| (acc + a.structure_constant(k, i, i)) % p))
        .collect();
    let form: Vec<Vector> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    a.basis_product(i, j)
                        .iter()
                        .fold(0, |acc, &(k, c)| (acc + c * t[k]) % p)
                })
                .collect()
        })
        .collect();
    let basis = Echelon::new(&fp::left_kernel(&form, n, p), n, p);

    let mut power_dims = vec![basis.dim()];
    let mut current = basis.clone();
    while current.dim() > 0 {
        if power_dims.len() > n + 1 {
            return Err(Error::Algebra("trace-form kernel is not nilpotent".into()));
        }
        let mut next = Echelon::new(&[], n, p);
        for x in &current.rows {
            for y in &basis.rows {
                next.insert(a.mul(x, y));
            }
        }
        if next.dim() >= current.dim() {
            return Err(Error::Algebra("trace-form kernel is not nilpotent".into()));
        }
        power_dims.push(next.dim());
        current = next;
    }
    Ok(Radical { basis, power_dims })
}

/// Centre, as the common kernel of `z -> z e_j - e_j z`.
pub fn center(a: &FDAlgebra) -> Echelon {
    let (n, p) = (a.dim(), a.field_char());
    let mut space: Vec<Vector> = (0..n).map(|i| fp::unit_vector(n, i)).collect();
    for j in 0..n {
        let diffs: Vec<Vector> = space
            .iter()
            .map(|v| a.sub(&a.mul_basis_right(v, j), &a.mul_basis_left(j, v)))
            .collect();
        if diffs.iter().all(|d| fp::is_zero(d)) {
            continue;
        }
        let kernel = fp::left_kernel(&diffs, n, p);
        space = kernel.iter().map(|y| a.combine(y, &space)).collect();
    }
    Echelon::new(&space, n, p)
}

/// The subspace `basis` (closed under products, containing 1) as an algebra in
/// the coordinates of `basis.rows`.
fn subalgebra(a: &FDAlgebra, basis: &Echelon) -> Result<FDAlgebra> {
    let coords = |v: &[u64]| {
        basis
            .coordinates(v)
            .ok_or_else(|| Error::Algebra("subspace is not closed under multiplication".into()))
    };
    let unit = coords(a.unit())?;
    let mut failure = None;
    let sub = FDAlgebra::from_products(basis.dim(), a.field_char(), unit, |i, j| {
        let prod = a.mul(&basis.rows[i], &basis.rows[j]);
        coords(&prod).unwrap_or_else(|e| {
            failure = Some(e);
            vec![0; basis.dim()]
        })
    });
    match failure {
        Some(e) => Err(e),
        None => sub,
    }
}

fn is_idempotent(a: &FDAlgebra, e: &[u64]) -> bool {
    a.mul(e, e) == e
}

/// `e <- 3e^2 - 2e^3` until idempotent.
fn newton_lift(a: &FDAlgebra, mut e: Vector) -> Result<Vector> {
    let p = a.field_char();
    for _ in 0..NEWTON_MAX_STEPS {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = a.mul(&e2, &e);
        e = a.sub(&a.scale(&e2, 3), &a.scale(&e3, 2));
    }
    Err(Error::NonSplit {
        p,
        reason: "idempotent lifting did not converge".into(),
    })
}

/// Minimal polynomial of `y` in the algebra `eZ` with identity `e`, monic, in
/// increasing degree.
fn minimal_polynomial(z: &FDAlgebra, e: &[u64], y: &[u64]) -> Vector {
    let (n, p) = (z.dim(), z.field_char());
    let mut powers = vec![e.to_vec()];
    let mut span = Echelon::new(&powers, n, p);
    loop {
        let next = z.mul(powers.last().unwrap(), y);
        powers.push(next.clone());
        if !span.insert(next) {
            let kernel = fp::left_kernel(&powers, n, p);
            let f = kernel
                .into_iter()
                .find(|k| *k.last().unwrap() != 0)
                .expect("the new power is dependent on the earlier ones");
            let lead = fp::inv(*f.last().unwrap(), p);
            return fp::scale(&f, lead, p);
        }
    }
}

/// Splits `e` by the eigenvalues of `y e` acting on `eZ`; returns `e` itself when
/// `y e` has a single eigenvalue.
fn split_by(z: &FDAlgebra, e: &[u64], y: &[u64]) -> Result<Vec<Vector>> {
    let p = z.field_char();
    let ye = z.mul(y, e);
    let f = minimal_polynomial(z, e, &ye);
    let (roots, rest) = fp::poly_roots(&f, p);
    if rest > 0 {
        return Err(Error::NonSplit {
            p,
            reason: format!(
                "a minimal polynomial in the centre has an irreducible factor of degree {rest}"
            ),
        });
    }
    if roots.len() < 2 {
        return Ok(vec![e.to_vec()]);
    }
    roots
        .iter()
        .map(|&(lambda, _)| {
            let mut u = e.to_vec();
            for &(mu, _) in roots.iter().filter(|(m, _)| *m != lambda) {
                let factor = z.sub(&ye, &z.scale(e, mu));
                u = z.mul(&u, &factor);
                u = z.scale(&u, fp::inv(fp::sub(lambda, mu, p), p));
            }
            newton_lift(z, u)
        })
        .collect()
}

/// Primitive idempotents of a commutative algebra `z`, in its own coordinates.
fn commutative_primitive_idempotents(z: &FDAlgebra) -> Result<Vec<Vector>> {
    let (n, p) = (z.dim(), z.field_char());
    let jz = radical(z)?;
    let semisimple_dim = n - jz.dim();
    let is_primitive = |e: &[u64]| {
        let mut span = jz.basis.clone();
        for j in 0..n {
            span.insert(z.mul_basis_right(e, j));
        }
        span.dim() - jz.dim() == 1
    };

    let mut done: Vec<Vector> = Vec::new();
    let mut pending: Vec<Vector> = vec![z.unit().clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(SPLITTING_SEED);
    let mut candidates = (0..n)
        .map(|i| fp::unit_vector(n, i))
        .collect::<Vec<_>>()
        .into_iter();
    let mut random_left = RANDOM_SPLITTING_ATTEMPTS;
    loop {
        let (prim, rest): (Vec<_>, Vec<_>) = pending.into_iter().partition(|e| is_primitive(e));
        done.extend(prim);
        pending = rest;
        if pending.is_empty() {
            break;
        }
        let y = match candidates.next() {
            Some(y) => y,
            None if random_left > 0 => {
                random_left -= 1;
                (0..n).map(|_| rng.gen_range(0..p)).collect()
            }
            None => {
                return Err(Error::NonSplit {
                    p,
                    reason: "central idempotents could not be separated".into(),
                })
            }
        };
        let mut next = Vec::new();
        for e in &pending {
            next.extend(split_by(z, e, &y)?);
        }
        pending = next;
    }
    if done.len() != semisimple_dim {
        return Err(Error::NonSplit {
            p,
            reason: format!(
                "found {} primitive idempotents but the semisimple centre has dimension {semisimple_dim}",
                done.len()
            ),
        });
    }
    Ok(done)
}

/// Primitive central idempotents, in the basis of `a`.
pub fn central_idempotents(a: &FDAlgebra) -> Result<Vec<Vector>> {
    require_large_char(a)?;
    let zb = center(a);
    let z = subalgebra(a, &zb)?;
    let ids: Vec<Vector> = commutative_primitive_idempotents(&z)?
        .iter()
        .map(|c| a.combine(c, &zb.rows))
        .collect();
    check_complete_orthogonal(a, &ids)?;
    Ok(ids)
}

fn check_complete_orthogonal(a: &FDAlgebra, ids: &[Vector]) -> Result<()> {
    let n = a.dim();
    let mut sum = vec![0; n];
    for (i, e) in ids.iter().enumerate() {
        if !is_idempotent(a, e) || fp::is_zero(e) {
            return Err(Error::Algebra(format!(
                "element {i} is not a nonzero idempotent"
            )));
        }
        for f in &ids[..i] {
            if !fp::is_zero(&a.mul(e, f)) {
                return Err(Error::Algebra("idempotents are not orthogonal".into()));
            }
        }
        sum = a.add(&sum, e);
    }
    if &sum != a.unit() {
        return Err(Error::Algebra("idempotents do not sum to 1".into()));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub idempotents: Vec<Vector>,
    /// `dim e A` for each primitive central idempotent `e`.
    pub block_dims: Vec<usize>,
}

impl BlockDecomposition {
    pub fn block_count(&self) -> usize {
        self.idempotents.len()
    }
}

pub fn blocks(a: &FDAlgebra) -> Result<BlockDecomposition> {
    let (n, p) = (a.dim(), a.field_char());
    let idempotents = central_idempotents(a)?;
    let block_dims: Vec<usize> = idempotents
        .iter()
        .map(|e| {
            let cols: Vec<Vector> = (0..n).map(|j| a.mul_basis_right(e, j)).collect();
            fp::rank(&cols, n, p)
        })
        .collect();
    debug_assert_eq!(block_dims.iter().sum::<usize>(), n);
    Ok(BlockDecomposition {
        idempotents,
        block_dims,
    })
}

/// `A / J`, with basis the images of the `e_i` whose index is not a pivot of the
/// echelon basis of `J`.
pub fn semisimple_quotient(a: &FDAlgebra) -> Result<FDAlgebra> {
    let n = a.dim();
    let j = radical(a)?;
    let reps: Vec<usize> = (0..n).filter(|i| !j.basis.pivots.contains(i)).collect();
    // reducing against J leaves a vector supported off the pivots of J
    let project = |v: &[u64]| -> Vector {
        let rest = j.basis.reduce(v);
        reps.iter().map(|&i| rest[i]).collect()
    };
    FDAlgebra::from_products(reps.len(), a.field_char(), project(a.unit()), |x, y| {
        project(&a.mul(&fp::unit_vector(n, reps[x]), &fp::unit_vector(n, reps[y])))
    })
}

/// Dimensions of the simple modules, assuming every simple is absolutely simple.
pub fn simple_module_dims(a: &FDAlgebra) -> Result<Vec<usize>> {
    let q = semisimple_quotient(a)?;
    let b = blocks(&q)?;
    b.block_dims
        .iter()
        .map(|&d| {
            let s = (d as f64).sqrt().round() as usize;
            if s * s == d {
                Ok(s)
            } else {
                Err(Error::NonSplit {
                    p: a.field_char(),
                    reason: format!(
                        "a simple block of the quotient has dimension {d}, not a square"
                    ),
                })
            }
        })
        .collect()
}

/// Arrow counts `m[i][j] = dim e_j (J / J^2) e_i` for a complete set of orthogonal
/// idempotents `e_i`.
pub fn basic_quiver(a: &FDAlgebra, idempotents: &[Vector]) -> Result<Vec<Vec<usize>>> {
    let (n, p) = (a.dim(), a.field_char());
    check_complete_orthogonal(a, idempotents)?;
    let j1 = radical(a)?.basis;
    let mut j2 = Echelon::new(&[], n, p);
    for x in &j1.rows {
        for y in &j1.rows {
            j2.insert(a.mul(x, y));
        }
    }
    let corner_dim = |space: &Echelon, ei: &Vector, ej: &Vector| {
        let vs: Vec<Vector> = space
            .rows
            .iter()
            .map(|x| a.mul(&a.mul(ej, x), ei))
            .collect();
        fp::rank(&vs, n, p)
    };
    Ok(idempotents
        .iter()
        .map(|ei| {
            idempotents
                .iter()
                .map(|ej| corner_dim(&j1, ei, ej) - corner_dim(&j2, ei, ej))
                .collect()
        })
        .collect())
}
