//! Verification suites shared by the command line and the test targets. Each
//! returns one [`PropertyResult`] per property; failures are data, not errors.

use rayon::prelude::*;

use crate::error::Result;
use crate::invariants::{block_count_function_algebra, fiber_class, StratumPair};
use crate::lattice::{self, quotient_invariants, BasisKind, SubLattice};
use crate::quiver::connected_components;
use crate::skewalg::{self, trials};
use crate::strata::{consistency_sweep, word_label, Check, PropertyResult, TABLE_CAP};
use crate::weyl::WeylGroup;

/// Block counts of tensor products of fiber algebras against `ell^{card frak_s}`,
/// over every pair of `W x W`.
pub fn fiber_oracle_suite(group: &WeylGroup, ell: u64, cap: usize) -> Result<Vec<PropertyResult>> {
    crate::rootsys::GoodEll::require(group.cartan(), ell)?;
    let elements = group.elements_sorted(cap.min(TABLE_CAP))?;
    let pairs: Vec<(usize, usize)> = (0..elements.len())
        .flat_map(|i| (0..elements.len()).map(move |j| (i, j)))
        .collect();
    let outcomes: Vec<(usize, usize, usize, u32)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let pair = StratumPair::new(group, elements[i].clone(), elements[j].clone(), ell)?;
            let fibers = fiber_class(group, &pair);
            let alg = skewalg::fiber_tensor(ell as usize, &fibers)?;
            let count = skewalg::central_idempotents(&alg)?.len();
            Ok((i, j, count, block_count_function_algebra(group, &pair)))
        })
        .collect::<Result<_>>()?;
    let mut c = Check::new("fiber-algebra idempotents equal ell^card(frak_s)");
    for (i, j, count, exp) in outcomes {
        c.record(count as u128 == (ell as u128).pow(exp), || {
            format!(
                "({}; {}): {count} idempotents, predicted {ell}^{exp}",
                word_label(&group.reduced_word(&elements[i])),
                word_label(&group.reduced_word(&elements[j]))
            )
        });
    }
    Ok(vec![c.finish()])
}

/// Random local algebras with diagonal actions: idempotent count of the skew
/// product against `|D|`, and quiver components against `|X(G) : Y|`.
pub fn skew_oracle_suite(seed: u64, count: usize, ell: u64) -> Result<Vec<PropertyResult>> {
    let outcomes = trials::run_trials(seed, count, ell, 12, 2)?;
    let mut blocks = Check::new("skew-product idempotents equal |D|");
    let mut comps = Check::new("quiver components equal |X(G) : Y|");
    for t in &outcomes {
        blocks.record(t.direct_blocks == t.predicted_blocks, || {
            format!(
                "trial {} (seed {}, dim {}, k = {}): {} idempotents, |D| = {}",
                t.trial, t.seed, t.dim, t.rank, t.direct_blocks, t.predicted_blocks
            )
        });
        comps.record(t.quiver_components == t.coset_index, || {
            format!(
                "trial {} (seed {}): {} components, index {}",
                t.trial, t.seed, t.quiver_components, t.coset_index
            )
        });
    }
    Ok(vec![blocks.finish(), comps.finish()])
}

fn unit_span(r: usize, indices: impl IntoIterator<Item = usize>, kind: BasisKind) -> SubLattice {
    let gens: Vec<Vec<i64>> = indices
        .into_iter()
        .map(|i| (0..r).map(|j| i64::from(j + 1 == i)).collect())
        .collect();
    SubLattice::from_generators(kind, r, &gens)
}

/// Number of `v` in `(Z/ell)^r` (root coordinates) with `w v = v`, by enumeration.
fn brute_force_fixed_points(group: &WeylGroup, w: &crate::weyl::WeylElement, ell: u64) -> u64 {
    let m = group.root_matrix(w);
    let r = group.rank();
    let e = ell as i64;
    let mut v = vec![0i64; r];
    let mut count = 0;
    loop {
        let image = m.mul_vec(&v);
        if image
            .iter()
            .zip(&v)
            .all(|(a, b)| (a - b).rem_euclid(e) == 0)
        {
            count += 1;
        }
        let mut k = 0;
        while k < r {
            v[k] += 1;
            if v[k] < e {
                break;
            }
            v[k] = 0;
            k += 1;
        }
        if k == r {
            return count;
        }
    }
}

/// `(i, j, quotient invariants, card frak_s)` for one pair.
type QuotientRow = (usize, usize, Vec<u64>, usize);

/// Root-sequence spans, the distinct-letter criterion, `B^w` inside `P^w`, the
/// order of `Q_ell^w`, and the quotient `Q_ell^w / N(w1, w2)`.
pub fn lattice_suite(group: &WeylGroup, ell: u64, cap: usize) -> Result<Vec<PropertyResult>> {
    crate::rootsys::GoodEll::require(group.cartan(), ell)?;
    let r = group.rank();
    let elements = group.elements_sorted(cap.min(TABLE_CAP))?;
    let label = |w| word_label(&group.reduced_word(w));

    let mut span = Check::new("root sequence spans the simple roots of its letters");
    let mut distinct = Check::new("s(w) = l(w) iff some reduced word has distinct letters");
    let mut contained = Check::new("B^w lies in P^w");
    let mut order = Check::new("|Q^w / ell Q^w| = ell^(r - s(w))");
    for w in &elements {
        let words = group.all_reduced_words(w);
        for word in &words {
            let seq = group.root_sequence(word)?;
            let from_roots = SubLattice::from_generators(BasisKind::Root, r, &seq.betas);
            span.record(
                from_roots == unit_span(r, word.letter_set(), BasisKind::Root),
                || word.to_string(),
            );
        }
        let s = group.rank_s(w);
        let some_distinct = words.iter().any(|x| x.has_distinct_letters());
        distinct.record((s == group.length(w)) == some_distinct, || label(w));

        let b = lattice::b_w_lattice(group, &group.reduced_word(w))?;
        let p = lattice::fixed_lattice(group, w, BasisKind::Weight);
        contained.record(b.is_sublattice_of(&p), || label(w));

        if crate::rootsys::gcd_u64(ell, group.order(w)) == 1 {
            let q = lattice::fixed_subgroup_mod_ell(group, ell, w)?;
            let expected = (ell as u128).pow((r - s) as u32);
            let brute = brute_force_fixed_points(group, w, ell) as u128;
            order.record(q.order() == expected && brute == expected, || {
                format!(
                    "{}: |Q_ell^w| = {}, fixed points {brute}, expected {expected}",
                    label(w),
                    q.order()
                )
            });
        }
    }

    let mut quotient = Check::new("|Q_ell^w / N(w1, w2)| = ell^card(frak_s)");
    let pairs: Vec<(usize, usize)> = (0..elements.len())
        .flat_map(|i| (0..elements.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Option<QuotientRow>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (w1, w2) = (&elements[i], &elements[j]);
            let twist = group.inverse(w2).mul(w1);
            if crate::rootsys::gcd_u64(ell, group.order(&twist)) != 1 {
                return Ok(None);
            }
            let n = lattice::normalizer_lattice(group, ell, w1, w2)?;
            let q = lattice::fixed_subgroup_mod_ell(group, ell, &twist)?;
            Ok(Some((
                i,
                j,
                quotient_invariants(&n, &q)?,
                group.frak_s(w1, w2).len(),
            )))
        })
        .collect::<Result<_>>()?;
    for (i, j, inv, card) in results.into_iter().flatten() {
        let ok = inv.len() == card && inv.iter().all(|&d| d == ell);
        quotient.record(ok, || {
            format!(
                "({}; {}): invariants {inv:?}, card frak_s = {card}",
                label(&elements[i]),
                label(&elements[j])
            )
        });
    }

    Ok(vec![
        span.finish(),
        distinct.finish(),
        contained.finish(),
        order.finish(),
        quotient.finish(),
    ])
}

/// The restricted Borel of `sl_2`: `ell` one-dimensional simples, one block, and
/// a single oriented `ell`-cycle as quiver.
pub fn borel_sl2_suite(ell: usize) -> Result<Vec<PropertyResult>> {
    let b = skewalg::build_borel_sl2(ell)?;
    let mut simples = Check::new("ell one-dimensional simple modules");
    let dims = skewalg::simple_module_dims(&b)?;
    simples.record(dims == vec![1; ell], || {
        format!("simple dimensions {dims:?}")
    });

    let mut blocks = Check::new("a single block");
    let count = skewalg::blocks(&b)?.block_count();
    blocks.record(count == 1, || format!("{count} blocks"));

    let mut cycle = Check::new("basic-algebra quiver is an oriented ell-cycle");
    let ids = skewalg::borel_sl2_torus_idempotents(ell, &b);
    let q = skewalg::basic_quiver(&b, &ids)?;
    let mut next = vec![None; ell];
    let mut ok = true;
    for (i, row) in q.iter().enumerate() {
        let targets: Vec<usize> = row
            .iter()
            .enumerate()
            .filter(|(_, m)| **m > 0)
            .map(|(j, _)| j)
            .collect();
        ok &= row.iter().sum::<usize>() == 1 && targets.len() == 1 && targets[0] != i;
        next[i] = targets.first().copied();
    }
    if ok {
        // the walk from vertex 0 first returns after exactly ell steps
        let (mut v, mut steps) = (0, 0);
        loop {
            v = next[v].expect("one arrow out of each vertex");
            steps += 1;
            if v == 0 || steps > ell {
                break;
            }
        }
        ok = steps == ell;
    }
    cycle.record(ok, || format!("arrow multiplicities {q:?}"));

    let mut skew = Check::new("character prediction gives one block and a connected ell-cycle");
    let (s, act) = skewalg::borel_sl2_skew_data(ell)?;
    let report = skewalg::blquiv_report(&s, &act)?;
    skew.record(
        report.block_count == 1
            && report.quiver.vertices.len() == ell
            && report.quiver.edge_count() == ell
            && connected_components(&report.quiver) == 1,
        || {
            format!(
                "{} blocks, {} arrows",
                report.block_count,
                report.quiver.edge_count()
            )
        },
    );

    Ok(vec![
        simples.finish(),
        blocks.finish(),
        cycle.finish(),
        skew.finish(),
    ])
}

pub fn sweep_suite(group: &WeylGroup, ell: u64, cap: usize) -> Result<Vec<PropertyResult>> {
    Ok(consistency_sweep(group, ell, cap)?.properties)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(results: &[PropertyResult]) -> bool {
        results.iter().all(|r| r.passed)
    }

    #[test]
    fn small_suites_pass() {
        let a2 = WeylGroup::parse("A2").unwrap();
        assert!(all_pass(&fiber_oracle_suite(&a2, 3, TABLE_CAP).unwrap()));
        assert!(all_pass(&lattice_suite(&a2, 5, TABLE_CAP).unwrap()));
        assert!(all_pass(&borel_sl2_suite(3).unwrap()));
        assert!(all_pass(&skew_oracle_suite(3, 4, 3).unwrap()));
    }

    #[test]
    fn brute_force_fixed_points_of_identity() {
        let b2 = WeylGroup::parse("B2").unwrap();
        assert_eq!(brute_force_fixed_points(&b2, &b2.identity(), 5), 25);
        assert_eq!(brute_force_fixed_points(&b2, &b2.longest_element(), 5), 1);
    }
}
