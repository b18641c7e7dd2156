//! Random local algebras with diagonalisable `(Z/ell)^k` actions, used to compare
//! direct block counting on the skew product with the character prediction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::builders::monomial_algebra;
use super::fp::{self, Matrix};
use super::skew::{blquiv_report, skew_product, AbelianAction};
use super::structure::blocks;
use super::FDAlgebra;
use crate::error::Result;
use crate::quiver::connected_components;

/// A random instance: a monomial local algebra with a diagonal action, presented
/// in a random basis so that neither the radical nor the action is visible in the
/// coordinates.
#[derive(Debug, Clone)]
pub struct LocalInstance {
    pub staircase: Vec<Vec<u32>>,
    pub algebra: FDAlgebra,
    pub action: AbelianAction,
}

/// Random order ideal of monomials in `vars` variables with `size` elements.
fn random_staircase(rng: &mut ChaCha8Rng, vars: usize, size: usize) -> Vec<Vec<u32>> {
    let mut set = vec![vec![0u32; vars]];
    while set.len() < size {
        let mut corners: Vec<Vec<u32>> = Vec::new();
        for m in &set {
            for v in 0..vars {
                let mut c = m.clone();
                c[v] += 1;
                let divisors_present = (0..vars).all(|u| {
                    c[u] == 0 || {
                        let mut d = c.clone();
                        d[u] -= 1;
                        set.contains(&d)
                    }
                });
                if divisors_present && !set.contains(&c) && !corners.contains(&c) {
                    corners.push(c);
                }
            }
        }
        set.push(
            corners
                .choose(rng)
                .expect("a finite staircase always has corners")
                .clone(),
        );
    }
    set
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize, p: u64) -> Matrix {
    loop {
        let m: Matrix = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        if fp::mat_inv(&m, p).is_some() {
            return m;
        }
    }
}

/// `dim <= max_dim`, `1 <= k <= max_rank`, over the smallest admissible `F_p`.
pub fn random_local_instance(
    rng: &mut ChaCha8Rng,
    ell: u64,
    max_dim: usize,
    max_rank: usize,
) -> Result<LocalInstance> {
    let vars = rng.gen_range(1..=3);
    let size = rng.gen_range(2..=max_dim);
    let k = rng.gen_range(1..=max_rank);
    let mut staircase = random_staircase(rng, vars, size);
    staircase.sort_by_key(|m| (m.iter().sum::<u32>(), m.clone()));
    let group_order = (ell as usize).pow(k as u32);
    let p = fp::make_field_char(ell, (size * group_order) as u64);
    let zeta = fp::primitive_root_of_unity(ell, p).expect("p = 1 mod ell");

    let monomial = monomial_algebra(&staircase, p)?;
    let var_chars: Vec<Vec<u64>> = (0..k)
        .map(|_| (0..vars).map(|_| rng.gen_range(0..ell)).collect())
        .collect();
    let exponents: Vec<Vec<u64>> = var_chars
        .iter()
        .map(|chi| {
            staircase
                .iter()
                .map(|m| m.iter().zip(chi).map(|(&e, &c)| e as u64 * c).sum::<u64>() % ell)
                .collect()
        })
        .collect();
    let diag = AbelianAction::diagonal(&monomial, ell, zeta, &exponents)?;

    let basis = random_invertible(rng, size, p);
    let inv = fp::mat_inv(&basis, p).expect("chosen invertible");
    let algebra = monomial.change_basis(&basis)?;
    let matrices = diag
        .matrices
        .iter()
        .map(|m| fp::mat_mul(&fp::mat_mul(&inv, m, p), &basis, p))
        .collect();
    let action = AbelianAction::new(&algebra, ell, matrices)?;
    Ok(LocalInstance {
        staircase,
        algebra,
        action,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub seed: u64,
    pub dim: usize,
    pub rank: usize,
    /// Primitive central idempotents of the skew product.
    pub direct_blocks: usize,
    /// `|D|`.
    pub predicted_blocks: usize,
    pub quiver_components: usize,
    /// `|X(G) : Y|`.
    pub coset_index: usize,
}

impl TrialOutcome {
    pub fn agrees(&self) -> bool {
        self.direct_blocks == self.predicted_blocks && self.quiver_components == self.coset_index
    }
}

/// Runs `trials` independent instances; trial `i` uses its own seed derived from `seed`.
pub fn run_trials(
    seed: u64,
    trials: usize,
    ell: u64,
    max_dim: usize,
    max_rank: usize,
) -> Result<Vec<TrialOutcome>> {
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let trial_seed = seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add(trial as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
            let inst = random_local_instance(&mut rng, ell, max_dim, max_rank)?;
            let t = skew_product(&inst.algebra, &inst.action)?;
            let direct = blocks(&t)?;
            let report = blquiv_report(&inst.algebra, &inst.action)?;
            let group_order = inst.action.group_order();
            Ok(TrialOutcome {
                trial,
                seed: trial_seed,
                dim: inst.algebra.dim(),
                rank: inst.action.rank(),
                direct_blocks: direct.block_count(),
                predicted_blocks: report.block_count,
                quiver_components: connected_components(&report.quiver),
                coset_index: group_order / report.y_subgroup.order() as usize,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewalg::radical;

    #[test]
    fn instances_are_local_with_valid_actions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let inst = random_local_instance(&mut rng, 3, 12, 2).unwrap();
            let n = inst.algebra.dim();
            assert!((2..=12).contains(&n));
            assert_eq!(radical(&inst.algebra).unwrap().dim(), n - 1);
        }
    }

    #[test]
    fn a_few_trials_agree() {
        let out = run_trials(1, 6, 3, 8, 2).unwrap();
        assert!(out.iter().all(TrialOutcome::agrees), "{out:?}");
    }

    #[test]
    fn trials_are_deterministic() {
        let a = run_trials(5, 3, 3, 6, 2).unwrap();
        let b = run_trials(5, 3, 3, 6, 2).unwrap();
        assert_eq!(
            a.iter()
                .map(|t| (t.dim, t.direct_blocks))
                .collect::<Vec<_>>(),
            b.iter()
                .map(|t| (t.dim, t.direct_blocks))
                .collect::<Vec<_>>()
        );
    }
}
