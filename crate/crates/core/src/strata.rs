//! Whole-group sweeps: stratum tables over `W x W`, the degeneration poset, and
//! cross-checks between the closed forms.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{
    borel_invariants, stratum_invariants, BlockStructure, RepType, StratumInvariants, StratumPair,
};
use crate::lattice::{self, quotient_invariants};
use crate::rootsys::GoodEll;
use crate::weyl::{WeylElement, WeylGroup, WeylWord};

/// Default bound on `|W|` for full `W x W` sweeps (the order of `W(F4)`).
pub const TABLE_CAP: usize = 1152;

/// Rows are computed this many `w1` values at a time, in parallel, then emitted in order.
const CHUNK: usize = 8;

fn check_cap(group: &WeylGroup, cap: usize) -> Result<()> {
    if group.cartan().weyl_order() > cap as u128 {
        return Err(Error::CapExceeded { cap });
    }
    Ok(())
}

/// Renders a reduced word, writing the identity as `e`.
pub fn word_label(w: &WeylWord) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w.to_string()
    }
}

/// One CSV/JSON table line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRecord {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub ell: u64,
    pub w1_word: String,
    pub w2_word: String,
    pub len1: usize,
    pub len2: usize,
    pub s_twist: usize,
    pub azumaya: bool,
    pub rep_type: String,
    pub simples_exp: u32,
    pub simple_dim_exp: u32,
    pub blocks_exp: u32,
    /// Empty when `ell` divides the order of the twist.
    pub per_block_exp: Option<u32>,
    #[serde(rename = "frakS")]
    pub frak_s: String,
}

impl TableRecord {
    pub fn new(cartan_type: &str, inv: &StratumInvariants) -> Self {
        let frak: Vec<String> = inv.frak_s.iter().map(ToString::to_string).collect();
        TableRecord {
            cartan_type: cartan_type.to_string(),
            ell: inv.ell,
            w1_word: word_label(&inv.w1_word),
            w2_word: word_label(&inv.w2_word),
            len1: inv.len1,
            len2: inv.len2,
            s_twist: inv.s_twist,
            azumaya: inv.is_azumaya,
            rep_type: inv.rep_type.to_string(),
            simples_exp: inv.simple_count_exp(),
            simple_dim_exp: inv.simple_dim_exp(),
            blocks_exp: inv.block_count_exp(),
            per_block_exp: inv.simples_per_block_exp(),
            frak_s: format!("{{{}}}", frak.join(",")),
        }
    }
}

/// Computes every row, in order of `(w1, w2)` by (length, reduced word), handing
/// each to `sink` as soon as its chunk is done. Returns the number of rows.
pub fn stream_table(
    group: &WeylGroup,
    ell: u64,
    cap: usize,
    mut sink: impl FnMut(StratumInvariants) -> Result<()>,
) -> Result<usize> {
    GoodEll::require(group.cartan(), ell)?;
    check_cap(group, cap)?;
    let elements = group.elements_sorted(cap)?;
    let mut count = 0;
    for chunk in elements.chunks(CHUNK) {
        let rows: Vec<Vec<StratumInvariants>> = chunk
            .par_iter()
            .map(|w1| {
                elements
                    .iter()
                    .map(|w2| {
                        let pair = StratumPair::new(group, w1.clone(), w2.clone(), ell)
                            .expect("ell validated above");
                        stratum_invariants(group, &pair)
                    })
                    .collect()
            })
            .collect();
        for row in rows.into_iter().flatten() {
            sink(row)?;
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, Serialize)]
pub struct StratumTable {
    pub cartan_type: String,
    pub ell: u64,
    /// Row `i |W| + j` is the pair `(elements[i], elements[j])`.
    pub rows: Vec<StratumInvariants>,
}

pub fn build_table(group: &WeylGroup, ell: u64, cap: usize) -> Result<StratumTable> {
    let mut rows = Vec::new();
    stream_table(group, ell, cap, |r| {
        rows.push(r);
        Ok(())
    })?;
    Ok(StratumTable {
        cartan_type: group.cartan().cartan_type.to_string(),
        ell,
        rows,
    })
}

/// Elements sorted by (length, reduced word) with their Bruhat lower covers.
#[derive(Debug, Clone)]
pub struct BruhatGraph {
    pub elements: Vec<WeylElement>,
    pub lengths: Vec<usize>,
    /// `lower_covers[i]` lists `j` with `elements[j]` covered by `elements[i]`.
    pub lower_covers: Vec<Vec<usize>>,
}

impl BruhatGraph {
    pub fn new(group: &WeylGroup, cap: usize) -> Result<Self> {
        check_cap(group, cap)?;
        let elements = group.elements_sorted(cap)?;
        let index: HashMap<&WeylElement, usize> =
            elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let lengths: Vec<usize> = elements.iter().map(|w| group.length(w)).collect();
        let mut reflections: Vec<WeylElement> = Vec::new();
        for u in &elements {
            let uinv = group.inverse(u);
            for i in 1..=group.rank() {
                let t = u.mul(group.simple(i)?).mul(&uinv);
                if !reflections.contains(&t) {
                    reflections.push(t);
                }
            }
            if reflections.len() == group.cartan().n_pos {
                break;
            }
        }
        let lower_covers = elements
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let mut covers: Vec<usize> = reflections
                    .iter()
                    .map(|t| index[&w.mul(t)])
                    .filter(|&j| lengths[j] + 1 == lengths[i])
                    .collect();
                covers.sort_unstable();
                covers.dedup();
                covers
            })
            .collect();
        Ok(BruhatGraph {
            elements,
            lengths,
            lower_covers,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `below[i][j]` iff `elements[j] <= elements[i]`.
    pub fn order_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut below = vec![vec![false; n]; n];
        // elements are sorted by length, so covers come earlier
        for i in 0..n {
            below[i][i] = true;
            for &j in &self.lower_covers[i] {
                let (lo, hi) = below.split_at_mut(i);
                for (dst, &src) in hi[0].iter_mut().zip(&lo[j]) {
                    *dst |= src;
                }
            }
        }
        below
    }
}

/// Componentwise Bruhat order on pairs; node `i |W| + j` is `(elements[i], elements[j])`.
#[derive(Debug, Clone)]
pub struct DegenerationPoset {
    pub bruhat: BruhatGraph,
    /// `(lower, upper)` node pairs of the cover relation.
    pub covers: Vec<(usize, usize)>,
}

impl DegenerationPoset {
    pub fn node_count(&self) -> usize {
        self.bruhat.len() * self.bruhat.len()
    }

    pub fn node(&self, index: usize) -> (&WeylElement, &WeylElement) {
        let n = self.bruhat.len();
        (
            &self.bruhat.elements[index / n],
            &self.bruhat.elements[index % n],
        )
    }

    pub fn rank(&self, index: usize) -> usize {
        let n = self.bruhat.len();
        self.bruhat.lengths[index / n] + self.bruhat.lengths[index % n]
    }

    /// Nodes with no upper cover.
    pub fn maximal_nodes(&self) -> Vec<usize> {
        let mut has_upper = vec![false; self.node_count()];
        for &(lo, _) in &self.covers {
            has_upper[lo] = true;
        }
        (0..self.node_count()).filter(|&i| !has_upper[i]).collect()
    }

    /// Nodes with no lower cover.
    pub fn minimal_nodes(&self) -> Vec<usize> {
        let mut has_lower = vec![false; self.node_count()];
        for &(_, hi) in &self.covers {
            has_lower[hi] = true;
        }
        (0..self.node_count()).filter(|&i| !has_lower[i]).collect()
    }

    /// Graphviz text with nodes labelled by their word pairs.
    pub fn to_dot(&self, group: &WeylGroup) -> String {
        let mut out = String::from("digraph {\n");
        for i in 0..self.node_count() {
            let (u, v) = self.node(i);
            out.push_str(&format!(
                "  n{i} [label=\"({}; {})\"];\n",
                word_label(&group.reduced_word(u)),
                word_label(&group.reduced_word(v))
            ));
        }
        for (lo, hi) in &self.covers {
            out.push_str(&format!("  n{hi} -> n{lo};\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_poset(group: &WeylGroup, cap: usize) -> Result<DegenerationPoset> {
    let bruhat = BruhatGraph::new(group, cap)?;
    let n = bruhat.len();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let upper = i * n + j;
            covers.extend(bruhat.lower_covers[i].iter().map(|&k| (k * n + j, upper)));
            covers.extend(bruhat.lower_covers[j].iter().map(|&k| (i * n + k, upper)));
        }
    }
    Ok(DegenerationPoset { bruhat, covers })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub cartan_type: String,
    pub ell: u64,
    pub properties: Vec<PropertyResult>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

pub(crate) struct Check {
    name: &'static str,
    checked: usize,
    counterexample: Option<String>,
}

impl Check {
    pub(crate) fn new(name: &'static str) -> Self {
        Check {
            name,
            checked: 0,
            counterexample: None,
        }
    }

    pub(crate) fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    pub(crate) fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name.to_string(),
            passed: self.counterexample.is_none(),
            checked: self.checked,
            counterexample: self.counterexample,
        }
    }
}

/// Runs the cross-module properties over all of `W x W`; failures are reported
/// with the first offending pair.
pub fn consistency_sweep(group: &WeylGroup, ell: u64, cap: usize) -> Result<SweepReport> {
    let table = build_table(group, ell, cap)?;
    let poset = build_poset(group, cap)?;
    let cd = group.cartan();
    let n = poset.bruhat.len();
    let pair_name = |i: usize| {
        let r = &table.rows[i];
        format!("({}; {})", word_label(&r.w1_word), word_label(&r.w2_word))
    };
    let mut results = Vec::new();

    let mut c = Check::new("poset extremes are (w0, w0) and (e, e)");
    let (max, min) = (poset.maximal_nodes(), poset.minimal_nodes());
    c.record(max == vec![n * n - 1] && min == vec![0], || {
        format!("maximal nodes {max:?}, minimal nodes {min:?}")
    });
    for &(lo, hi) in &poset.covers {
        c.record(poset.rank(hi) == poset.rank(lo) + 1, || {
            format!(
                "cover {} < {} changes len1 + len2 by more than 1",
                pair_name(lo),
                pair_name(hi)
            )
        });
    }
    results.push(c.finish());

    let mut c = Check::new("representation type is monotone under degeneration");
    for &(lo, hi) in &poset.covers {
        let ok = !(table.rows[hi].rep_type == RepType::Wild
            && table.rows[lo].rep_type == RepType::Finite);
        c.record(ok, || {
            format!(
                "{} is wild but its degeneration {} is finite",
                pair_name(hi),
                pair_name(lo)
            )
        });
    }
    results.push(c.finish());

    let mut c = Check::new("finite type exactly when len1 + len2 >= 2N - 1");
    for (i, r) in table.rows.iter().enumerate() {
        let expect = if r.len1 + r.len2 + 1 >= 2 * cd.n_pos {
            RepType::Finite
        } else {
            RepType::Wild
        };
        c.record(r.rep_type == expect, || pair_name(i));
    }
    results.push(c.finish());

    let mut c = Check::new("exactly one semisimple stratum, and the Azumaya locus is nonempty");
    let semisimple: Vec<usize> = (0..table.rows.len())
        .filter(|&i| table.rows[i].is_semisimple)
        .collect();
    let azumaya = table.rows.iter().filter(|r| r.is_azumaya).count();
    c.record(semisimple == vec![n * n - 1] && azumaya >= 1, || {
        format!("semisimple rows {semisimple:?}, {azumaya} Azumaya rows")
    });
    results.push(c.finish());

    let mut c = Check::new("block exponent equals the rank of the lattice quotient");
    for (i, r) in table.rows.iter().enumerate() {
        if let BlockStructure::Available {
            block_group_invariants,
            normalizer,
            ..
        } = &r.blocks
        {
            let (w1, w2) = poset.node(i);
            let twist = group.inverse(w2).mul(w1);
            let q = lattice::fixed_subgroup_mod_ell(group, ell, &twist)?;
            let direct = quotient_invariants(normalizer, &q)?;
            let ok = direct == *block_group_invariants
                && direct.len() == r.frak_s.len()
                && direct.iter().all(|&d| d == ell);
            c.record(ok, || {
                format!(
                    "{}: quotient invariants {direct:?}, frak_s {:?}",
                    pair_name(i),
                    r.frak_s
                )
            });
        }
    }
    results.push(c.finish());

    let mut c = Check::new("Borel block count does not increase under closure");
    let bounds: Vec<Option<(u32, u32)>> = poset
        .bruhat
        .elements
        .iter()
        .map(|w| Ok(borel_invariants(group, w, ell)?.blocks.exponent_bounds()))
        .collect::<Result<_>>()?;
    let below = poset.bruhat.order_matrix();
    for (i, row) in below.iter().enumerate() {
        for (j, _) in row.iter().enumerate().filter(|(_, b)| **b) {
            if let (Some((_, upper_hi)), Some((lower_lo, _))) = (bounds[i], bounds[j]) {
                c.record(lower_lo <= upper_hi, || {
                    format!(
                        "{} lies below {} but has at least ell^{lower_lo} blocks against at most ell^{upper_hi}",
                        word_label(&group.reduced_word(&poset.bruhat.elements[j])),
                        word_label(&group.reduced_word(&poset.bruhat.elements[i]))
                    )
                });
            }
        }
    }
    results.push(c.finish());

    let mut c = Check::new("every Borel fiber has one block when s(w0) = r");
    if group.rank_s(&group.longest_element()) == group.rank() {
        for (w, b) in poset.bruhat.elements.iter().zip(&bounds) {
            c.record(b.is_none_or(|b| b == (0, 0)), || {
                word_label(&group.reduced_word(w))
            });
        }
    }
    results.push(c.finish());

    Ok(SweepReport {
        cartan_type: table.cartan_type,
        ell,
        properties: results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_table_and_poset() {
        let a1 = WeylGroup::parse("A1").unwrap();
        assert_eq!(build_table(&a1, 3, TABLE_CAP).unwrap().rows.len(), 4);
        let p = build_poset(&a1, TABLE_CAP).unwrap();
        assert_eq!(p.node_count(), 4);
        assert_eq!(p.covers.len(), 4);
        assert_eq!(p.maximal_nodes(), vec![3]);
        assert_eq!(p.minimal_nodes(), vec![0]);
    }

    #[test]
    fn a2_census() {
        let a2 = WeylGroup::parse("A2").unwrap();
        let t = build_table(&a2, 5, TABLE_CAP).unwrap();
        assert_eq!(t.rows.len(), 36);
        assert_eq!(t.rows.iter().filter(|r| r.is_semisimple).count(), 1);
        // lengths (3,3), (3,2) twice, (2,3) twice
        assert_eq!(
            t.rows
                .iter()
                .filter(|r| r.rep_type == RepType::Finite)
                .count(),
            5
        );
        let p = build_poset(&a2, TABLE_CAP).unwrap();
        assert_eq!(p.node_count(), 36);
        assert_eq!(p.maximal_nodes().len(), 1);
    }

    #[test]
    fn bruhat_graph_matches_order() {
        let b2 = WeylGroup::parse("B2").unwrap();
        let g = BruhatGraph::new(&b2, TABLE_CAP).unwrap();
        let below = g.order_matrix();
        for (i, u) in g.elements.iter().enumerate() {
            for (j, v) in g.elements.iter().enumerate() {
                assert_eq!(below[i][j], b2.bruhat_leq(v, u));
            }
        }
    }

    #[test]
    fn records_render() {
        let a2 = WeylGroup::parse("A2").unwrap();
        let t = build_table(&a2, 5, TABLE_CAP).unwrap();
        let first = TableRecord::new("A2", &t.rows[0]);
        assert_eq!((first.w1_word.as_str(), first.w2_word.as_str()), ("e", "e"));
        assert_eq!(first.frak_s, "{}");
        let last = TableRecord::new("A2", t.rows.last().unwrap());
        assert_eq!(last.frak_s, "{1,2}");
        assert_eq!(last.rep_type, "finite");
    }

    #[test]
    fn sweeps_pass() {
        for (t, ell) in [("A2", 5), ("B2", 5), ("G2", 7)] {
            let g = WeylGroup::parse(t).unwrap();
            let r = consistency_sweep(&g, ell, TABLE_CAP).unwrap();
            assert!(r.all_passed(), "{t}: {:#?}", r.properties);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let e6 = WeylGroup::parse("E6").unwrap();
        assert!(matches!(
            build_table(&e6, 5, TABLE_CAP),
            Err(Error::CapExceeded { .. })
        ));
        let a3 = WeylGroup::parse("A3").unwrap();
        assert!(build_poset(&a3, 10).is_err());
    }
}
