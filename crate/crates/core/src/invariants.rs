//! Closed-form invariants of the reduced algebras attached to double Bruhat cells.
//!
//! Counts are carried as exponents of `ell` ([`EllPower`]); the actual integers are
//! only materialised for display.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, quotient_invariants, EllSubgroup};
use crate::rootsys::{gcd_u64, GoodEll};
use crate::weyl::{WeylElement, WeylGroup, WeylWord};

/// `base^exp`, serialised as `{"base": ell, "exp": k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EllPower {
    pub base: u64,
    pub exp: u32,
}

impl EllPower {
    pub fn new(base: u64, exp: u32) -> Self {
        EllPower { base, exp }
    }

    pub fn value(&self) -> BigUint {
        BigUint::from(self.base).pow(self.exp)
    }
}

impl fmt::Display for EllPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepType {
    Finite,
    Wild,
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepType::Finite => "finite",
            RepType::Wild => "wild",
        })
    }
}

/// A double Bruhat cell `X_{w1,w2}` together with the root-of-unity order.
#[derive(Debug, Clone)]
pub struct StratumPair {
    pub w1: WeylElement,
    pub w2: WeylElement,
    /// `w2^{-1} w1`.
    pub twist: WeylElement,
    pub ell: GoodEll,
}

impl StratumPair {
    pub fn new(group: &WeylGroup, w1: WeylElement, w2: WeylElement, ell: u64) -> Result<Self> {
        let ell = GoodEll::require(group.cartan(), ell)?;
        let twist = group.inverse(&w2).mul(&w1);
        Ok(StratumPair { w1, w2, twist, ell })
    }

    /// `w2 w1^{-1}`, the element used for the simply transitive subgroup in one of
    /// the two formulations; conjugate to `twist^{-1}`, so it has the same rank and order.
    pub fn alt_twist(&self, group: &WeylGroup) -> WeylElement {
        self.w2.mul(&group.inverse(&self.w1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiberKind {
    /// `b_i != 0 != c_i`: the local factor is `k^ell`.
    Semisimple,
    /// Exactly one of `b_i`, `c_i` vanishes: truncated polynomials `k[X]/(X^ell)`.
    Truncated,
    /// `b_i = 0 = c_i`: local with square-zero radical.
    LocalSingular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberIndex {
    pub b_nonzero: bool,
    pub c_nonzero: bool,
    pub kind: FiberKind,
}

/// Vanishing pattern of the central elements `b_i^ell`, `c_i^ell` on a stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberClass {
    pub indices: Vec<FiberIndex>,
}

impl FiberClass {
    pub fn semisimple_count(&self) -> usize {
        self.indices
            .iter()
            .filter(|f| f.kind == FiberKind::Semisimple)
            .count()
    }

    /// Number of maximal ideals of the fiber of the centre.
    pub fn maximal_ideal_exponent(&self) -> u32 {
        self.semisimple_count() as u32
    }
}

pub fn fiber_class(group: &WeylGroup, pair: &StratumPair) -> FiberClass {
    let w0 = group.longest_element();
    let (u, v) = (w0.mul(&pair.w1), w0.mul(&pair.w2));
    let indices = (1..=group.rank())
        .map(|i| {
            let b_nonzero = group.stabilizes_weight(&u, i).expect("index in range");
            let c_nonzero = group.stabilizes_weight(&v, i).expect("index in range");
            let kind = match (b_nonzero, c_nonzero) {
                (true, true) => FiberKind::Semisimple,
                (false, false) => FiberKind::LocalSingular,
                _ => FiberKind::Truncated,
            };
            FiberIndex {
                b_nonzero,
                c_nonzero,
                kind,
            }
        })
        .collect();
    FiberClass { indices }
}

/// Block data that rely on `gcd(ell, ord(w2^{-1} w1)) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BlockStructure {
    Available {
        simples_per_block_exp: u32,
        normalizer: EllSubgroup,
        /// Invariant factors of `Q_ell^w / N(w1, w2)`.
        block_group_invariants: Vec<u64>,
    },
    HypothesisUnmet {
        twist_order: u64,
        gcd: u64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StratumInvariants {
    pub w1_word: WeylWord,
    pub w2_word: WeylWord,
    pub ell: u64,
    pub len1: usize,
    pub len2: usize,
    pub s_twist: usize,
    /// `dim O_eps(g) = ell^(2N + r)`.
    pub algebra_dim: EllPower,
    pub simple_count: EllPower,
    pub simple_dim: EllPower,
    pub is_azumaya: bool,
    pub is_semisimple: bool,
    pub rep_type: RepType,
    pub frak_s: BTreeSet<usize>,
    pub fibers: FiberClass,
    pub block_count: EllPower,
    pub blocks: BlockStructure,
}

impl StratumInvariants {
    pub fn simple_count_exp(&self) -> u32 {
        self.simple_count.exp
    }

    pub fn simple_dim_exp(&self) -> u32 {
        self.simple_dim.exp
    }

    pub fn block_count_exp(&self) -> u32 {
        self.block_count.exp
    }

    pub fn simples_per_block_exp(&self) -> Option<u32> {
        match &self.blocks {
            BlockStructure::Available {
                simples_per_block_exp,
                ..
            } => Some(*simples_per_block_exp),
            BlockStructure::HypothesisUnmet { .. } => None,
        }
    }
}

pub fn is_fully_azumaya(group: &WeylGroup, pair: &StratumPair) -> bool {
    group.length(&pair.w1) + group.length(&pair.w2) + group.rank_s(&pair.twist)
        == 2 * group.cartan().n_pos
}

/// `O_eps(g)` is a sum of `ell^(r-s)` copies of `Mat_{ell^N}` over truncated
/// polynomials in `s` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AzumayaStructure {
    pub summand_count_exp: u32,
    pub matrix_size_exp: u32,
    pub truncated_vars: u32,
}

pub fn azumaya_structure(group: &WeylGroup, pair: &StratumPair) -> Result<AzumayaStructure> {
    if !is_fully_azumaya(group, pair) {
        return Err(Error::NotAzumaya(format!(
            "l(w1) + l(w2) + s(w2^-1 w1) = {} != 2N = {}",
            group.length(&pair.w1) + group.length(&pair.w2) + group.rank_s(&pair.twist),
            2 * group.cartan().n_pos
        )));
    }
    let s = group.rank_s(&pair.twist) as u32;
    Ok(AzumayaStructure {
        summand_count_exp: group.rank() as u32 - s,
        matrix_size_exp: group.cartan().n_pos as u32,
        truncated_vars: s,
    })
}

pub fn rep_type_function_algebra(group: &WeylGroup, pair: &StratumPair) -> RepType {
    let total = group.length(&pair.w1) + group.length(&pair.w2);
    if total + 1 >= 2 * group.cartan().n_pos {
        RepType::Finite
    } else {
        RepType::Wild
    }
}

pub fn rep_type_borel(group: &WeylGroup, w: &WeylElement) -> RepType {
    if group.length(w) + 1 >= group.cartan().n_pos {
        RepType::Finite
    } else {
        RepType::Wild
    }
}

/// Exponent `card frak_s(w1, w2)` of the number of blocks.
pub fn block_count_function_algebra(group: &WeylGroup, pair: &StratumPair) -> u32 {
    fiber_class(group, pair).semisimple_count() as u32
}

pub fn stratum_invariants(group: &WeylGroup, pair: &StratumPair) -> StratumInvariants {
    let cd = group.cartan();
    let (r, n) = (cd.rank as u32, cd.n_pos as u32);
    let ell = pair.ell.ell;
    let len1 = group.length(&pair.w1);
    let len2 = group.length(&pair.w2);
    let s_twist = group.rank_s(&pair.twist);
    let dim_sum = len1 + len2 + s_twist;
    assert!(
        dim_sum.is_multiple_of(2),
        "l(w1) + l(w2) + s(twist) = {dim_sum} is odd; the dimension formula requires it even"
    );
    let fibers = fiber_class(group, pair);
    let frak_s = group.frak_s(&pair.w1, &pair.w2);
    debug_assert_eq!(frak_s.len(), fibers.semisimple_count());
    let simple_count_exp = r - s_twist as u32;
    let block_exp = frak_s.len() as u32;
    assert!(block_exp <= simple_count_exp);

    let twist_order = group.order(&pair.twist);
    let g = gcd_u64(ell, twist_order);
    let blocks = if g == 1 {
        let normalizer = lattice::normalizer_lattice(group, ell, &pair.w1, &pair.w2)
            .expect("hypotheses checked");
        let q_fixed =
            lattice::fixed_subgroup_mod_ell(group, ell, &pair.twist).expect("hypotheses checked");
        let block_group_invariants =
            quotient_invariants(&normalizer, &q_fixed).expect("normaliser lies in Q_ell^w");
        BlockStructure::Available {
            simples_per_block_exp: simple_count_exp - block_exp,
            normalizer,
            block_group_invariants,
        }
    } else {
        BlockStructure::HypothesisUnmet {
            twist_order,
            gcd: g,
        }
    };

    StratumInvariants {
        w1_word: group.reduced_word(&pair.w1),
        w2_word: group.reduced_word(&pair.w2),
        ell,
        len1,
        len2,
        s_twist,
        algebra_dim: EllPower::new(ell, 2 * n + r),
        simple_count: EllPower::new(ell, simple_count_exp),
        simple_dim: EllPower::new(ell, (dim_sum / 2) as u32),
        is_azumaya: dim_sum == 2 * cd.n_pos,
        is_semisimple: len1 + len2 == 2 * cd.n_pos,
        rep_type: rep_type_function_algebra(group, pair),
        frak_s,
        fibers,
        block_count: EllPower::new(ell, block_exp),
        blocks,
    }
}

/// Exponent identities relating the function algebra, the Borels and the big cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionBookkeeping {
    pub function_algebra_dim_exp: u32,
    pub borel_dim_exp: u32,
    /// `(2N + r) + r = (N + r) + (N + r)`.
    pub tensor_identity_holds: bool,
    /// Exponent of `sum over simples of (dim)^2`.
    pub semisimple_part_exp: u32,
    /// The simples exhaust the algebra (semisimple case).
    pub semisimple_equality: bool,
}

pub fn dimension_bookkeeping(group: &WeylGroup, pair: &StratumPair) -> DimensionBookkeeping {
    let cd = group.cartan();
    let (r, n) = (cd.rank as u32, cd.n_pos as u32);
    let inv = stratum_invariants(group, pair);
    let function_algebra_dim_exp = 2 * n + r;
    let borel_dim_exp = n + r;
    let semisimple_part_exp = inv.simple_count.exp + 2 * inv.simple_dim.exp;
    DimensionBookkeeping {
        function_algebra_dim_exp,
        borel_dim_exp,
        tensor_identity_holds: function_algebra_dim_exp + r == 2 * borel_dim_exp,
        semisimple_part_exp,
        semisimple_equality: semisimple_part_exp == function_algebra_dim_exp,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BorelBlockReason {
    /// A reduced word with pairwise distinct letters exists.
    DistinctLetters,
    /// `w = w0`: the open stratum attains the maximum.
    LongestElement,
    /// `s(w0) = r`: every Borel fiber has a unique block.
    MinusOneInWeylGroup,
    /// `w = w0 s_i` with `w0(alpha_i) = -alpha_i`.
    LongestTimesFixedSimple,
    /// `w = w0 s_i` with `w0(alpha_i) != -alpha_i`.
    LongestTimesMovedSimple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BorelBlocks {
    Exact {
        count: EllPower,
        reason: BorelBlockReason,
    },
    /// The block count is `ell^k` for some `k` in `[lower_exp, upper_exp]`.
    Interval {
        base: u64,
        lower_exp: u32,
        upper_exp: u32,
    },
    HypothesisUnmet {
        order: u64,
        gcd: u64,
    },
}

impl BorelBlocks {
    /// `(lower, upper)` exponents, when block data are available.
    pub fn exponent_bounds(&self) -> Option<(u32, u32)> {
        match self {
            BorelBlocks::Exact { count, .. } => Some((count.exp, count.exp)),
            BorelBlocks::Interval {
                lower_exp,
                upper_exp,
                ..
            } => Some((*lower_exp, *upper_exp)),
            BorelBlocks::HypothesisUnmet { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BorelInvariants {
    pub w_word: WeylWord,
    pub ell: u64,
    pub len: usize,
    pub s_w: usize,
    /// Number of simple reflections absent from a reduced word of `w`.
    pub d: usize,
    pub simple_count: EllPower,
    pub simple_dim: EllPower,
    pub rep_type: RepType,
    pub blocks: BorelBlocks,
}

pub fn borel_invariants(group: &WeylGroup, w: &WeylElement, ell: u64) -> Result<BorelInvariants> {
    let cd = group.cartan();
    GoodEll::require(cd, ell)?;
    let r = cd.rank;
    let word = group.reduced_word(w);
    let len = word.len();
    let s_w = group.rank_s(w);
    assert!((len + s_w).is_multiple_of(2), "l(w) + s(w) must be even");
    let d = r - word.letter_set().len();
    let simple_count_exp = (r - s_w) as u32;

    let order = group.order(w);
    let g = gcd_u64(ell, order);
    let blocks = if g != 1 {
        BorelBlocks::HypothesisUnmet { order, gcd: g }
    } else {
        let w0 = group.longest_element();
        let s_w0 = group.rank_s(&w0);
        let exact = |exp: usize, reason| BorelBlocks::Exact {
            count: EllPower::new(ell, exp as u32),
            reason,
        };
        if s_w == len {
            exact(0, BorelBlockReason::DistinctLetters)
        } else if *w == w0 {
            exact(r - s_w0, BorelBlockReason::LongestElement)
        } else if s_w0 == r {
            exact(0, BorelBlockReason::MinusOneInWeylGroup)
        } else if let Some(i) = (1..=r).find(|&i| w0.mul(group.simple(i).expect("in range")) == *w)
        {
            let mut alpha = vec![0; r];
            alpha[i - 1] = 1;
            let image = group.apply_root(&w0, &alpha);
            if image.iter().zip(&alpha).all(|(x, a)| *x == -a) {
                exact(r - s_w0, BorelBlockReason::LongestTimesFixedSimple)
            } else {
                exact(r - s_w0 - 1, BorelBlockReason::LongestTimesMovedSimple)
            }
        } else {
            // simples per block k satisfies ell^d <= k <= ell^(r - s(w)); the open
            // stratum also caps the block count at ell^(r - s(w0)).
            BorelBlocks::Interval {
                base: ell,
                lower_exp: 0,
                upper_exp: (r - s_w - d).min(r - s_w0) as u32,
            }
        }
    };

    Ok(BorelInvariants {
        w_word: word,
        ell,
        len,
        s_w,
        d,
        simple_count: EllPower::new(ell, simple_count_exp),
        simple_dim: EllPower::new(ell, ((len + s_w) / 2) as u32),
        rep_type: rep_type_borel(group, w),
        blocks,
    })
}

/// Word lengths quoted elsewhere for a pair, set against the recomputed ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthAudit {
    pub stated: (usize, usize),
    pub recomputed: (usize, usize),
    pub n_pos: usize,
    /// Some stated length exceeds `N = l(w0)` and so cannot be a length in `W`.
    pub stated_exceeds_longest: bool,
    pub matches: bool,
}

pub fn audit_stated_lengths(
    group: &WeylGroup,
    pair: &StratumPair,
    stated: (usize, usize),
) -> LengthAudit {
    let recomputed = (group.length(&pair.w1), group.length(&pair.w2));
    let n_pos = group.cartan().n_pos;
    LengthAudit {
        stated,
        recomputed,
        n_pos,
        stated_exceeds_longest: stated.0 > n_pos || stated.1 > n_pos,
        matches: stated == recomputed,
    }
}
