//! Finite root-system data and the admissibility check for the root-of-unity order.
//!
//! Conventions: `a[i][j] = <alpha_j, alpha_i^vee>`, so that the simple reflection
//! `s_i` acts on the weight lattice by `s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i`.
//! Simple roots are numbered as in Bourbaki. Roots are stored in the basis of simple
//! roots, weights in the basis of fundamental weights; the column `j` of the Cartan
//! matrix is `alpha_j` written in fundamental weights.
//!
//! Low-rank aliases are canonicalised: `B1` and `C1` become `A1`, and `C2` becomes `B2`
//! (with the short simple root relabelled as `alpha_2`).

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    /// Validates the family/rank combination and canonicalises the B/C aliases.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let invalid = || Error::InvalidCartanType(format!("{family:?}{rank}"));
        let canonical = match (family, rank) {
            (_, 0) => return Err(invalid()),
            (Family::A, r) => (Family::A, r),
            (Family::B | Family::C, 1) => (Family::A, 1),
            (Family::B | Family::C, 2) => (Family::B, 2),
            (Family::B, r) => (Family::B, r),
            (Family::C, r) => (Family::C, r),
            (Family::D, r) if r >= 4 => (Family::D, r),
            (Family::E, r) if (6..=8).contains(&r) => (Family::E, r),
            (Family::F, 4) => (Family::F, 4),
            (Family::G, 2) => (Family::G, 2),
            _ => return Err(invalid()),
        };
        Ok(CartanType {
            family: canonical.0,
            rank: canonical.1,
        })
    }

    /// Every canonical type of rank at most `max_rank`, in a fixed order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for r in 1..=max_rank {
            for family in [
                Family::A,
                Family::B,
                Family::C,
                Family::D,
                Family::E,
                Family::F,
                Family::G,
            ] {
                if let Ok(t) = CartanType::new(family, r) {
                    if t.family == family && t.rank == r {
                        out.push(t);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let invalid = || Error::InvalidCartanType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(invalid()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| invalid())?;
        CartanType::new(family, rank).map_err(|_| invalid())
    }
}

/// Immutable root datum for one Cartan type.
#[derive(Debug, Clone, Serialize)]
pub struct CartanData {
    pub cartan_type: CartanType,
    /// Cartan matrix, `a[(i, j)] = <alpha_j, alpha_i^vee>`.
    pub a: IntMatrix,
    /// Symmetrisers with `d_i a_ij = d_j a_ji` and coprime entries.
    pub d: Vec<i64>,
    /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
    pub pos_roots: Vec<Vec<i64>>,
    pub n_pos: usize,
    pub rank: usize,
    pub coxeter_number: usize,
    /// Coefficients of the highest root in the simple roots.
    pub theta_coeffs: Vec<i64>,
    #[serde(skip)]
    a_adj: IntMatrix,
    #[serde(skip)]
    a_det: i64,
}

fn cartan_matrix(t: CartanType) -> (IntMatrix, Vec<i64>) {
    let r = t.rank;
    let mut a = IntMatrix::identity(r);
    for i in 0..r {
        a[(i, i)] = 2;
    }
    let link = |a: &mut IntMatrix, i: usize, j: usize| {
        a[(i, j)] = -1;
        a[(j, i)] = -1;
    };
    let mut d = vec![1i64; r];
    match t.family {
        Family::A => (0..r.saturating_sub(1)).for_each(|i| link(&mut a, i, i + 1)),
        Family::B => {
            (0..r - 1).for_each(|i| link(&mut a, i, i + 1));
            // alpha_r short
            a[(r - 1, r - 2)] = -2;
            d = vec![2; r];
            d[r - 1] = 1;
        }
        Family::C => {
            (0..r - 1).for_each(|i| link(&mut a, i, i + 1));
            // alpha_r long
            a[(r - 2, r - 1)] = -2;
            d[r - 1] = 2;
        }
        Family::D => {
            (0..r - 2).for_each(|i| link(&mut a, i, i + 1));
            link(&mut a, r - 3, r - 1);
        }
        Family::E => {
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            (2..r - 1).for_each(|i| link(&mut a, i, i + 1));
        }
        Family::F => {
            link(&mut a, 0, 1);
            link(&mut a, 1, 2);
            link(&mut a, 2, 3);
            a[(2, 1)] = -2;
            d = vec![2, 2, 1, 1];
        }
        Family::G => {
            link(&mut a, 0, 1);
            a[(0, 1)] = -3;
            d = vec![1, 3];
        }
    }
    (a, d)
}

/// Closure of the simple roots under simple reflections, keeping positive roots.
fn positive_roots(a: &IntMatrix) -> Vec<Vec<i64>> {
    let r = a.nrows();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..r {
            let pairing: i64 = (0..r).map(|j| beta[j] * a[(i, j)]).sum();
            if pairing == 0 {
                continue;
            }
            let mut next = beta.clone();
            next[i] -= pairing;
            if next.iter().all(|&c| c >= 0)
                && next.iter().any(|&c| c > 0)
                && seen.insert(next.clone())
            {
                queue.push_back(next);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| y.cmp(x))
    });
    roots
}

/// Builds the full root datum for a finite Cartan type.
pub fn cartan_data(t: CartanType) -> Result<CartanData> {
    let t = CartanType::new(t.family, t.rank)?;
    let (a, d) = cartan_matrix(t);
    let pos_roots = positive_roots(&a);
    let theta_coeffs = pos_roots.last().cloned().expect("nonempty root system");
    let height: i64 = theta_coeffs.iter().sum();
    let a_det = a.det();
    let a_adj = a.adjugate();
    Ok(CartanData {
        cartan_type: t,
        n_pos: pos_roots.len(),
        rank: t.rank,
        coxeter_number: (height + 1) as usize,
        theta_coeffs,
        pos_roots,
        a,
        d,
        a_adj,
        a_det,
    })
}

impl CartanData {
    pub fn parse(type_string: &str) -> Result<Self> {
        cartan_data(type_string.parse()?)
    }

    /// `alpha_i` (zero-based) in fundamental-weight coordinates.
    pub fn simple_root_weight(&self, i: usize) -> Vec<i64> {
        self.a.column(i)
    }

    /// Converts a root-lattice vector from simple-root to fundamental-weight coordinates.
    pub fn root_to_weight(&self, beta: &[i64]) -> Vec<i64> {
        self.a.mul_vec(beta)
    }

    /// Converts a weight to simple-root coordinates; `None` if it is not in the root lattice.
    pub fn weight_to_root(&self, lambda: &[i64]) -> Option<Vec<i64>> {
        let num = self.a_adj.mul_vec(lambda);
        num.iter()
            .map(|&x| (x % self.a_det == 0).then_some(x / self.a_det))
            .collect()
    }

    /// Converts a matrix acting on weight coordinates into the same map on root coordinates.
    pub fn weight_matrix_to_root_matrix(&self, m: &IntMatrix) -> IntMatrix {
        let conj = &(&self.a_adj * m) * &self.a;
        let mut out = IntMatrix::zeros(self.rank, self.rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                let x = conj[(i, j)];
                assert_eq!(
                    x % self.a_det,
                    0,
                    "matrix does not preserve the root lattice"
                );
                out[(i, j)] = x / self.a_det;
            }
        }
        out
    }

    /// Symmetrised form `(alpha_i, alpha_j) = d_i a_ij`.
    pub fn symmetrised(&self) -> IntMatrix {
        let mut b = self.a.clone();
        for i in 0..self.rank {
            for j in 0..self.rank {
                b[(i, j)] = self.d[i] * self.a[(i, j)];
            }
        }
        b
    }

    pub fn is_positive_root(&self, beta: &[i64]) -> bool {
        self.pos_roots.iter().any(|r| r == beta)
    }

    /// Order of the Weyl group from the standard closed forms.
    pub fn weyl_order(&self) -> u128 {
        let r = self.rank as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.cartan_type.family {
            Family::A => fact(r + 1),
            Family::B | Family::C => (1u128 << r) * fact(r),
            Family::D => (1u128 << (r - 1)) * fact(r),
            Family::E => match r {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

/// Result of checking whether `ell` is an admissible root-of-unity order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodEll {
    pub ell: u64,
    pub validated: bool,
}

impl GoodEll {
    /// Returns `Ok` only for a validated `ell`.
    pub fn require(cd: &CartanData, ell: u64) -> Result<GoodEll> {
        let g = is_good_ell(cd, ell);
        if g.validated {
            Ok(g)
        } else {
            Err(Error::BadEll {
                cartan: cd.cartan_type.to_string(),
                ell,
                reason: bad_ell_reason(cd, ell),
            })
        }
    }
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn bad_ell_reason(cd: &CartanData, ell: u64) -> String {
    if ell <= 1 {
        return "ell must exceed 1".into();
    }
    if ell.is_multiple_of(2) {
        return "ell is even".into();
    }
    if let Some(d) = cd.d.iter().find(|&&d| gcd_u64(ell, d as u64) != 1) {
        return format!("ell shares a factor with the symmetriser {d}");
    }
    if let Some(a) = cd
        .theta_coeffs
        .iter()
        .find(|&&a| gcd_u64(ell, a as u64) != 1)
    {
        return format!("ell shares a factor with the highest-root coefficient {a}");
    }
    "ok".into()
}

pub fn is_good_ell(cd: &CartanData, ell: u64) -> GoodEll {
    let validated = ell > 1
        && ell % 2 == 1
        && cd.d.iter().all(|&d| gcd_u64(ell, d as u64) == 1)
        && cd.theta_coeffs.iter().all(|&a| gcd_u64(ell, a as u64) == 1);
    GoodEll { ell, validated }
}

/// Matrix of the pairing `(varpi_i, alpha_j) = delta_ij d_i` reduced mod `ell`.
pub fn pairing_matrix_mod_ell(cd: &CartanData, ell: u64) -> Result<Vec<Vec<u64>>> {
    GoodEll::require(cd, ell)?;
    Ok((0..cd.rank)
        .map(|i| {
            (0..cd.rank)
                .map(|j| if i == j { (cd.d[i] as u64) % ell } else { 0 })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(s: &str) -> CartanData {
        CartanData::parse(s).unwrap()
    }

    #[test]
    fn a2_data() {
        let a2 = cd("A2");
        assert_eq!((a2.n_pos, a2.rank, a2.coxeter_number), (3, 2, 3));
        assert_eq!(a2.d, vec![1, 1]);
        assert_eq!(a2.theta_coeffs, vec![1, 1]);
    }

    #[test]
    fn a1_data() {
        let a1 = cd("a1");
        assert_eq!((a1.n_pos, a1.rank, a1.coxeter_number), (1, 1, 2));
        assert_eq!(a1.d, vec![1]);
    }

    #[test]
    fn g2_data() {
        let g2 = cd("G2");
        assert_eq!((g2.n_pos, g2.coxeter_number), (6, 6));
        assert_eq!(g2.d, vec![1, 3]);
        assert_eq!(g2.theta_coeffs, vec![3, 2]);
    }

    #[test]
    fn exceptional_and_classical_root_counts() {
        for (s, n, h) in [
            ("B3", 9, 6),
            ("C3", 9, 6),
            ("D4", 12, 6),
            ("E6", 36, 12),
            ("E7", 63, 18),
            ("E8", 120, 30),
            ("F4", 24, 12),
        ] {
            let c = cd(s);
            assert_eq!(c.n_pos, n, "{s}");
            assert_eq!(c.coxeter_number, h, "{s}");
            assert_eq!(2 * c.n_pos, c.rank * c.coxeter_number, "{s}");
        }
    }

    #[test]
    fn closed_form_root_counts() {
        for r in 1..=8 {
            assert_eq!(cd(&format!("A{r}")).n_pos, r * (r + 1) / 2);
        }
        for r in 2..=8 {
            assert_eq!(cd(&format!("B{r}")).n_pos, r * r);
        }
        for r in 3..=8 {
            assert_eq!(cd(&format!("C{r}")).n_pos, r * r);
        }
        for r in 4..=8 {
            assert_eq!(cd(&format!("D{r}")).n_pos, r * (r - 1));
        }
    }

    #[test]
    fn symmetrisability_and_coprime_symmetrisers() {
        for t in CartanType::all_up_to_rank(8) {
            let c = cartan_data(t).unwrap();
            let b = c.symmetrised();
            assert_eq!(b, b.transpose(), "{t}");
            let g = c.d.iter().fold(0u64, |g, &x| gcd_u64(g, x as u64));
            assert_eq!(g, 1, "{t}");
        }
    }

    #[test]
    fn parse_and_aliases() {
        assert_eq!("c2".parse::<CartanType>().unwrap().to_string(), "B2");
        assert_eq!("B1".parse::<CartanType>().unwrap().to_string(), "A1");
        assert_eq!("C1".parse::<CartanType>().unwrap().to_string(), "A1");
        for bad in ["", "X3", "D3", "E5", "E9", "F3", "G3", "A0", "A", "Ab"] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn good_ell_examples() {
        assert!(is_good_ell(&cd("A2"), 5).validated);
        assert!(!is_good_ell(&cd("A2"), 4).validated);
        assert!(!is_good_ell(&cd("G2"), 3).validated);
        assert!(is_good_ell(&cd("G2"), 5).validated);
        assert!(!is_good_ell(&cd("E8"), 5).validated);
        assert!(is_good_ell(&cd("E8"), 7).validated);
        assert!(!is_good_ell(&cd("A2"), 1).validated);
    }

    #[test]
    fn pairing_matrices() {
        assert_eq!(
            pairing_matrix_mod_ell(&cd("A2"), 5).unwrap(),
            vec![vec![1, 0], vec![0, 1]]
        );
        assert_eq!(
            pairing_matrix_mod_ell(&cd("B2"), 5).unwrap(),
            vec![vec![2, 0], vec![0, 1]]
        );
        assert_eq!(pairing_matrix_mod_ell(&cd("A1"), 3).unwrap(), vec![vec![1]]);
        assert!(pairing_matrix_mod_ell(&cd("A2"), 4).is_err());
    }

    #[test]
    fn pairing_determinant_is_a_unit() {
        for t in CartanType::all_up_to_rank(8) {
            let c = cartan_data(t).unwrap();
            for ell in (3..40).step_by(2) {
                if let Ok(m) = pairing_matrix_mod_ell(&c, ell) {
                    let det = (0..c.rank).fold(1u64, |acc, i| acc * m[i][i] % ell);
                    assert_eq!(gcd_u64(det, ell), 1, "{t} ell={ell}");
                }
            }
        }
    }

    #[test]
    fn weight_root_conversion_round_trips() {
        let c = cd("F4");
        for beta in &c.pos_roots {
            let lambda = c.root_to_weight(beta);
            assert_eq!(c.weight_to_root(&lambda).unwrap(), *beta);
        }
        // a fundamental weight of A2 is not in the root lattice
        assert!(cd("A2").weight_to_root(&[1, 0]).is_none());
    }
}
