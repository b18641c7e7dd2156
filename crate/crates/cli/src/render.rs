//! Human-readable text for the query subcommands.

use std::fmt::Write as _;

use rootblocks::invariants::{
    BlockStructure, BorelBlockReason, BorelBlocks, FiberKind, LengthAudit,
};
use rootblocks::quiver::{connected_components, BlockQuiver, BlockQuiverArrows, CayleyGraph};
use rootblocks::strata::{word_label, DegenerationPoset, PropertyResult};
use rootblocks::{BorelInvariants, EllPower, StratumInvariants, WeylGroup};

fn power(p: &EllPower) -> String {
    format!("{} ({}^{})", p, p.base, p.exp)
}

fn set(s: &std::collections::BTreeSet<usize>) -> String {
    let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub struct InfoContext<'a> {
    pub type_name: &'a str,
    pub twist_word: String,
    pub twist_order: u64,
    pub audit: Option<LengthAudit>,
}

pub fn info(inv: &StratumInvariants, ctx: &InfoContext) -> String {
    let mut o = String::new();
    writeln!(o, "{}, ell = {}", ctx.type_name, inv.ell).unwrap();
    writeln!(o, "w1 = {} (length {})", word_label(&inv.w1_word), inv.len1).unwrap();
    writeln!(o, "w2 = {} (length {})", word_label(&inv.w2_word), inv.len2).unwrap();
    writeln!(
        o,
        "w2^-1 w1 = {}, s = {}, order {}",
        ctx.twist_word, inv.s_twist, ctx.twist_order
    )
    .unwrap();
    if let Some(a) = &ctx.audit {
        if a.matches {
            writeln!(o, "stated lengths {} and {} agree", a.stated.0, a.stated.1).unwrap();
        } else {
            let note = if a.stated_exceeds_longest {
                format!(", and exceed N = {}", a.n_pos)
            } else {
                String::new()
            };
            writeln!(
                o,
                "stated lengths {} and {} differ from the recomputed {} and {}{note}",
                a.stated.0, a.stated.1, a.recomputed.0, a.recomputed.1
            )
            .unwrap();
        }
    }
    writeln!(
        o,
        "simple modules: {}, each of dimension {}",
        power(&inv.simple_count),
        power(&inv.simple_dim)
    )
    .unwrap();
    writeln!(o, "algebra dimension: {}", power(&inv.algebra_dim)).unwrap();
    writeln!(o, "fully Azumaya: {}", yes_no(inv.is_azumaya)).unwrap();
    writeln!(o, "semisimple: {}", yes_no(inv.is_semisimple)).unwrap();
    writeln!(o, "representation type: {}", inv.rep_type).unwrap();
    let fibers: Vec<&str> = inv
        .fibers
        .indices
        .iter()
        .map(|f| match f.kind {
            FiberKind::Semisimple => "semisimple",
            FiberKind::Truncated => "truncated",
            FiberKind::LocalSingular => "local",
        })
        .collect();
    writeln!(o, "fibers by fundamental weight: {}", fibers.join(", ")).unwrap();
    writeln!(o, "frak_s = {}", set(&inv.frak_s)).unwrap();
    writeln!(o, "blocks: {}", power(&inv.block_count)).unwrap();
    match &inv.blocks {
        BlockStructure::Available {
            simples_per_block_exp,
            normalizer,
            ..
        } => {
            let per = EllPower::new(inv.ell, *simples_per_block_exp);
            writeln!(o, "simples per block: {}", power(&per)).unwrap();
            writeln!(
                o,
                "block normaliser N(w1, w2): order {}",
                normalizer.order()
            )
            .unwrap();
        }
        BlockStructure::HypothesisUnmet { twist_order, gcd } => {
            writeln!(
                o,
                "simples per block: unavailable (ell shares the factor {gcd} with the twist order {twist_order})"
            )
            .unwrap();
        }
    }
    o
}

pub fn borel(type_name: &str, b: &BorelInvariants) -> String {
    let mut o = String::new();
    writeln!(o, "{type_name}, ell = {}", b.ell).unwrap();
    writeln!(
        o,
        "w = {} (length {}), s(w) = {}, absent letters: {}",
        word_label(&b.w_word),
        b.len,
        b.s_w,
        b.d
    )
    .unwrap();
    writeln!(
        o,
        "simple modules: {}, each of dimension {}",
        power(&b.simple_count),
        power(&b.simple_dim)
    )
    .unwrap();
    writeln!(o, "representation type: {}", b.rep_type).unwrap();
    match &b.blocks {
        BorelBlocks::Exact { count, reason } => {
            let why = match reason {
                BorelBlockReason::DistinctLetters => "a reduced word has distinct letters",
                BorelBlockReason::LongestElement => "w is the longest element",
                BorelBlockReason::MinusOneInWeylGroup => "s(w0) = r",
                BorelBlockReason::LongestTimesFixedSimple => {
                    "w = w0 s_i with w0(alpha_i) = -alpha_i"
                }
                BorelBlockReason::LongestTimesMovedSimple => {
                    "w = w0 s_i with w0(alpha_i) != -alpha_i"
                }
            };
            writeln!(o, "blocks: {}: {why}", power(count)).unwrap();
        }
        BorelBlocks::Interval {
            base,
            lower_exp,
            upper_exp,
        } => {
            writeln!(
                o,
                "blocks: {base}^k for some {lower_exp} <= k <= {upper_exp}"
            )
            .unwrap();
        }
        BorelBlocks::HypothesisUnmet { order, gcd } => {
            writeln!(
                o,
                "blocks: unavailable (ell shares the factor {gcd} with the order {order} of w)"
            )
            .unwrap();
        }
    }
    o
}

pub fn poset(group: &WeylGroup, p: &DegenerationPoset) -> String {
    let mut o = String::new();
    let n = p.bruhat.len();
    writeln!(o, "{} nodes, {} covers", p.node_count(), p.covers.len()).unwrap();
    let name = |i: usize| {
        let (u, v) = p.node(i);
        format!(
            "({}; {})",
            word_label(&group.reduced_word(u)),
            word_label(&group.reduced_word(v))
        )
    };
    let max: Vec<String> = p.maximal_nodes().into_iter().map(name).collect();
    let min: Vec<String> = p.minimal_nodes().into_iter().map(name).collect();
    writeln!(o, "maximal: {}", max.join(" ")).unwrap();
    writeln!(o, "minimal: {}", min.join(" ")).unwrap();
    let top = 2 * group.cartan().n_pos;
    for rank in (0..=top).rev() {
        let count = (0..n * n).filter(|&i| p.rank(i) == rank).count();
        writeln!(o, "len1 + len2 = {rank}: {count} nodes").unwrap();
    }
    o
}

pub fn cayley(g: &CayleyGraph) -> String {
    let mut o = String::new();
    writeln!(
        o,
        "vertex group invariants {:?}, {} vertices, {} arrows, {} components",
        g.group_invariants,
        g.vertices.len(),
        g.edge_count(),
        connected_components(g)
    )
    .unwrap();
    for gen in &g.generators {
        writeln!(
            o,
            "generator {:?} with multiplicity {}",
            gen.element, gen.multiplicity
        )
        .unwrap();
    }
    o
}

pub fn block_quiver(q: &BlockQuiver) -> String {
    let mut o = String::new();
    writeln!(
        o,
        "vertex group N(w1, w2): order {}, invariants {:?}",
        q.vertex_count,
        q.vertex_group.invariants()
    )
    .unwrap();
    match &q.arrows {
        BlockQuiverArrows::Supplied { graph } => o.push_str(&cayley(graph)),
        BlockQuiverArrows::Undetermined => writeln!(
            o,
            "arrows: undetermined by the closed forms; supply --gens to draw them"
        )
        .unwrap(),
    }
    o
}

pub fn results(rows: &[(String, PropertyResult)]) -> String {
    let mut o = String::new();
    for (suite, r) in rows {
        if r.passed {
            writeln!(o, "PASS [{suite}] {} ({} checks)", r.name, r.checked).unwrap();
        } else {
            writeln!(
                o,
                "FAIL [{suite}] {} ({} checks): {}",
                r.name,
                r.checked,
                r.counterexample.as_deref().unwrap_or("")
            )
            .unwrap();
        }
    }
    o
}
