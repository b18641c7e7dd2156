//! Multiply-edged Cayley graphs of finite abelian `ell`-groups.
//!
//! Edge convention: a generator `x` of multiplicity `m` contributes `m` arrows
//! `v -> v - x` at every vertex `v` (writing the group additively), matching the
//! rule that a character `chi` gives arrows `eta -> eta chi^{-1}`.

use std::fmt::Write as _;

use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::StratumPair;
use crate::lattice::{self, BasisKind, EllSubgroup};
use crate::weyl::WeylGroup;

/// Vertex set of a Cayley graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexGroup {
    /// `(Z/ell)^rank`.
    Abstract {
        ell: u64,
        rank: usize,
    },
    Subgroup(EllSubgroup),
}

impl VertexGroup {
    pub fn ell(&self) -> u64 {
        match self {
            VertexGroup::Abstract { ell, .. } => *ell,
            VertexGroup::Subgroup(s) => s.ell,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        match self {
            VertexGroup::Abstract { rank, .. } => *rank,
            VertexGroup::Subgroup(s) => s.ambient_rank,
        }
    }

    fn as_subgroup(&self) -> EllSubgroup {
        match self {
            VertexGroup::Abstract { ell, rank } => EllSubgroup::whole(*ell, BasisKind::Root, *rank),
            VertexGroup::Subgroup(s) => s.clone(),
        }
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        match self {
            VertexGroup::Abstract { ell, rank } => {
                let e = *ell as i64;
                let mut out = vec![vec![]];
                for _ in 0..*rank {
                    out = out
                        .into_iter()
                        .flat_map(|v: Vec<i64>| {
                            (0..e).map(move |x| {
                                let mut w = v.clone();
                                w.push(x);
                                w
                            })
                        })
                        .collect();
                }
                out
            }
            VertexGroup::Subgroup(s) => s.elements(),
        }
    }

    pub fn invariants(&self) -> Vec<u64> {
        match self {
            VertexGroup::Abstract { ell, rank } => vec![*ell; *rank],
            VertexGroup::Subgroup(s) => s.invariants(),
        }
    }

    fn reduce(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.ambient_rank() {
            return Err(Error::Dimension(format!(
                "element {v:?} has {} coordinates, expected {}",
                v.len(),
                self.ambient_rank()
            )));
        }
        let e = self.ell() as i64;
        let r: Vec<i64> = v.iter().map(|x| x.rem_euclid(e)).collect();
        if let VertexGroup::Subgroup(s) = self {
            if !s.contains(&r) {
                return Err(Error::NotInGroup(v.to_vec()));
            }
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub element: Vec<i64>,
    pub multiplicity: u32,
}

/// `multiplicity` parallel arrows `from -> to`, all labelled by generator `label`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyGraph {
    pub ell: u64,
    pub group_invariants: Vec<u64>,
    /// Sorted lexicographically; vertex `i` is `vertices[i]`.
    pub vertices: Vec<Vec<i64>>,
    pub generators: Vec<Generator>,
    pub edges: Vec<Edge>,
}

impl CayleyGraph {
    /// Number of arrows, counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.multiplicity as usize).sum()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.from] += e.multiplicity as usize;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.to] += e.multiplicity as usize;
        }
        d
    }

    pub fn vertex_index(&self, v: &[i64]) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_slice().cmp(v)).ok()
    }

    pub fn to_petgraph(&self) -> DiGraph<Vec<i64>, usize> {
        let mut g = DiGraph::new();
        let nodes: Vec<NodeIndex> = self
            .vertices
            .iter()
            .map(|v| g.add_node(v.clone()))
            .collect();
        for e in &self.edges {
            for _ in 0..e.multiplicity {
                g.add_edge(nodes[e.from], nodes[e.to], e.label);
            }
        }
        g
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "from": e.from,
                "to": e.to,
                "gen": e.label,
                "mult": e.multiplicity,
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn cayley_graph(group: &VertexGroup, gens: &[(Vec<i64>, u32)]) -> Result<CayleyGraph> {
    let ell = group.ell() as i64;
    let generators = gens
        .iter()
        .map(|(x, m)| {
            Ok(Generator {
                element: group.reduce(x)?,
                multiplicity: *m,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut vertices = group.elements();
    vertices.sort();
    let mut edges = Vec::new();
    for (from, v) in vertices.iter().enumerate() {
        for (label, g) in generators.iter().enumerate() {
            if g.multiplicity == 0 {
                continue;
            }
            let target: Vec<i64> = v
                .iter()
                .zip(&g.element)
                .map(|(a, b)| (a - b).rem_euclid(ell))
                .collect();
            let to = vertices
                .binary_search(&target)
                .expect("the vertex set is closed under the generators");
            edges.push(Edge {
                from,
                to,
                label,
                multiplicity: g.multiplicity,
            });
        }
    }
    Ok(CayleyGraph {
        ell: group.ell(),
        group_invariants: group.invariants(),
        vertices,
        generators,
        edges,
    })
}

/// Weakly connected components.
pub fn connected_components(g: &CayleyGraph) -> usize {
    petgraph::algo::connected_components(&g.to_petgraph())
}

/// `|group| / |<generators>|`, the component count predicted by the coset structure.
pub fn coset_count(group: &VertexGroup, g: &CayleyGraph) -> u128 {
    let whole = group.as_subgroup();
    let gens: Vec<Vec<i64>> = g
        .generators
        .iter()
        .filter(|x| x.multiplicity > 0)
        .map(|x| x.element.clone())
        .collect();
    let span = EllSubgroup::from_generators(whole.ell, whole.basis_kind, whole.ambient_rank, &gens);
    whole.order() / span.intersection(&whole).order()
}

fn vertex_label(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Graphviz text. Parallel arrows are written out one line each.
pub fn to_dot(g: &CayleyGraph) -> String {
    let mut out = String::from("digraph {\n");
    for (i, v) in g.vertices.iter().enumerate() {
        writeln!(out, "  v{i} [label=\"{}\"];", vertex_label(v)).unwrap();
    }
    let mut edges = g.edges.clone();
    edges.sort_by_key(|e| (e.from, e.to, e.label));
    for e in &edges {
        let label = vertex_label(&g.generators[e.label].element);
        for _ in 0..e.multiplicity {
            writeln!(out, "  v{} -> v{} [label=\"{label}\"];", e.from, e.to).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Quiver data for the blocks of a reduced function algebra: the vertex group is
/// the normaliser `N(w1, w2)`; the arrow multiset is not determined by the closed
/// forms and is only filled in when an oracle computation supplies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BlockQuiverArrows {
    Supplied { graph: CayleyGraph },
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockQuiver {
    pub vertex_group: EllSubgroup,
    pub vertex_count: u128,
    pub arrows: BlockQuiverArrows,
}

pub fn block_quiver(
    group: &WeylGroup,
    pair: &StratumPair,
    supplied: Option<&[(Vec<i64>, u32)]>,
) -> Result<BlockQuiver> {
    let n = lattice::normalizer_lattice(group, pair.ell.ell, &pair.w1, &pair.w2)?;
    let arrows = match supplied {
        Some(gens) => BlockQuiverArrows::Supplied {
            graph: cayley_graph(&VertexGroup::Subgroup(n.clone()), gens)?,
        },
        None => BlockQuiverArrows::Undetermined,
    };
    Ok(BlockQuiver {
        vertex_count: n.order(),
        vertex_group: n,
        arrows,
    })
}

/// Parses `Z5^2` or `Z5` into an abstract vertex group.
pub fn parse_group(text: &str) -> Result<VertexGroup> {
    let t = text.trim();
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let body = t
        .strip_prefix('Z')
        .or_else(|| t.strip_prefix('z'))
        .ok_or_else(|| err(0, "expected `Z<ell>^<rank>`"))?;
    let (ell_s, rank_s) = match body.split_once('^') {
        Some((a, b)) => (a, Some(b)),
        None => (body, None),
    };
    let ell: u64 = ell_s
        .parse()
        .map_err(|_| err(1, "expected the modulus after `Z`"))?;
    if ell < 2 {
        return Err(err(1, "modulus must be at least 2"));
    }
    let rank = match rank_s {
        Some(r) => r
            .parse()
            .map_err(|_| err(2 + ell_s.len(), "expected the rank after `^`"))?,
        None => 1,
    };
    Ok(VertexGroup::Abstract { ell, rank })
}

/// Parses `1,0:1;0,1:2` (element `:` multiplicity, separated by `;`). A missing
/// multiplicity means 1.
pub fn parse_generators(text: &str) -> Result<Vec<(Vec<i64>, u32)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        let trimmed = part.trim();
        if !trimmed.is_empty() {
            let (elem, mult) = match trimmed.split_once(':') {
                Some((e, m)) => (e, Some(m)),
                None => (trimmed, None),
            };
            let element = elem
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse {
                    position: offset,
                    message: format!("bad generator coordinates `{elem}`"),
                })?;
            let multiplicity = match mult {
                Some(m) => m.trim().parse().map_err(|_| Error::Parse {
                    position: offset + elem.len() + 1,
                    message: format!("bad multiplicity `{m}`"),
                })?,
                None => 1,
            };
            out.push((element, multiplicity));
        }
        offset += part.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(ell: u64, rank: usize) -> VertexGroup {
        VertexGroup::Abstract { ell, rank }
    }

    #[test]
    fn trivial_group() {
        let g = cayley_graph(&z(3, 0), &[]).unwrap();
        assert_eq!((g.vertices.len(), g.edge_count()), (1, 0));
        assert_eq!(to_dot(&g), "digraph {\n  v0 [label=\"()\"];\n}\n");
    }

    #[test]
    fn three_cycle() {
        let g = cayley_graph(&z(3, 1), &[(vec![1], 1)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        let dot = to_dot(&g);
        assert!(dot.contains("v0 -> v2"));
        assert!(dot.contains("v1 -> v0"));
        assert!(dot.contains("v2 -> v1"));
        assert_eq!(connected_components(&g), 1);
    }

    #[test]
    fn doubled_generator() {
        let g = cayley_graph(&z(3, 1), &[(vec![1], 2)]).unwrap();
        assert_eq!((g.vertices.len(), g.edge_count()), (3, 6));
        assert_eq!(to_dot(&g).matches("v0 -> v2").count(), 2);
        assert!(g.out_degrees().iter().all(|&d| d == 2));
        assert!(g.in_degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn component_counts() {
        let full = cayley_graph(&z(3, 2), &[(vec![1, 0], 1), (vec![0, 1], 1)]).unwrap();
        assert_eq!(connected_components(&full), 1);
        let empty = cayley_graph(&z(3, 2), &[]).unwrap();
        assert_eq!(connected_components(&empty), 9);
        let g = z(3, 2);
        let line = cayley_graph(&g, &[(vec![1, 0], 1)]).unwrap();
        assert_eq!(connected_components(&line), 3);
        assert_eq!(coset_count(&g, &line), 3);
    }

    #[test]
    fn identity_generator_gives_loops() {
        let g = cayley_graph(&z(5, 1), &[(vec![0], 1)]).unwrap();
        assert!(g.edges.iter().all(|e| e.from == e.to));
        assert_eq!(connected_components(&g), 5);
    }

    #[test]
    fn subgroup_vertices_and_membership() {
        let sub = EllSubgroup::from_generators(5, BasisKind::Root, 2, &[vec![1, 1]]);
        let vg = VertexGroup::Subgroup(sub);
        let g = cayley_graph(&vg, &[(vec![2, 2], 1)]).unwrap();
        assert_eq!(g.vertices.len(), 5);
        assert_eq!(g.group_invariants, vec![5]);
        assert_eq!(connected_components(&g), 1);
        assert!(matches!(
            cayley_graph(&vg, &[(vec![1, 0], 1)]),
            Err(Error::NotInGroup(_))
        ));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_group("Z5^2").unwrap(), z(5, 2));
        assert_eq!(parse_group("Z7").unwrap(), z(7, 1));
        assert!(parse_group("Q5").is_err());
        assert_eq!(
            parse_generators("1,0:1;0,1:1").unwrap(),
            vec![(vec![1, 0], 1), (vec![0, 1], 1)]
        );
        assert_eq!(parse_generators("2").unwrap(), vec![(vec![2], 1)]);
        assert!(matches!(
            parse_generators("1,0:x"),
            Err(Error::Parse { position: 4, .. })
        ));
    }

    #[test]
    fn json_adjacency() {
        let g = cayley_graph(&z(3, 1), &[(vec![1], 1)]).unwrap();
        let j = g.to_json();
        assert_eq!(j["edges"].as_array().unwrap().len(), 3);
        assert_eq!(j["edges"][0]["mult"], 1);
    }

    #[test]
    fn stratum_block_quiver_is_undetermined() {
        let a2 = WeylGroup::parse("A2").unwrap();
        let w0 = a2.longest_element();
        let pair = StratumPair::new(&a2, w0.clone(), w0, 5).unwrap();
        let q = block_quiver(&a2, &pair, None).unwrap();
        assert_eq!(q.arrows, BlockQuiverArrows::Undetermined);
        // frak_s = {1, 2}, so the normaliser is trivial
        assert_eq!(q.vertex_count, 1);
    }
}
