use std::collections::BTreeSet;
use std::fmt::Write;

use super::{Cluster, ClusterTail, Segment};

/// Dual graph of the exceptional divisors, one vertex per blown-up point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub vertex_count: usize,
    /// Undirected edges `(a, b)` with `a < b`.
    pub edges: BTreeSet<(usize, usize)>,
    /// Vertices of `Γ_l`, one list per e/m pair.
    pub subgraphs: Vec<Vec<usize>>,
    /// Trailing free vertices.
    pub free_tail: Vec<usize>,
    /// First vertex of each `Γ_l`.
    pub st: Vec<usize>,
    /// Last vertex of each finished `Γ_l`.
    pub rho: Vec<usize>,
    /// The cluster goes on past the last vertex.
    pub open_end: bool,
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl DualGraph {
    /// Blows up the points in order: a point proximate to `p_j` and its
    /// predecessor sits on the intersection of their divisors.
    pub fn from_cluster(cluster: &Cluster) -> Self {
        let mut edges = BTreeSet::new();
        let mut subgraphs: Vec<Vec<usize>> = Vec::new();
        let mut free_tail = Vec::new();
        for p in &cluster.points {
            let i = p.index;
            match p.proximate_to.as_slice() {
                [] => {}
                [j] => {
                    edges.insert(edge(*j, i));
                }
                [j, k] => {
                    edges.remove(&edge(*j, *k));
                    edges.insert(edge(*j, i));
                    edges.insert(edge(*k, i));
                }
                _ => unreachable!("a point is proximate to at most two points"),
            }
            match p.block.segment {
                Segment::Pair(l) => {
                    if subgraphs.len() <= l {
                        subgraphs.resize(l + 1, Vec::new());
                    }
                    subgraphs[l].push(i);
                }
                Segment::Free => free_tail.push(i),
            }
        }
        let open_end = cluster.truncated || cluster.tail != ClusterTail::Finite;
        let finished = if open_end && free_tail.is_empty() {
            subgraphs.len().saturating_sub(1)
        } else {
            subgraphs.len()
        };
        DualGraph {
            vertex_count: cluster.len(),
            st: subgraphs.iter().filter_map(|g| g.first().copied()).collect(),
            rho: subgraphs[..finished].iter().filter_map(|g| g.last().copied()).collect(),
            edges,
            subgraphs,
            free_tail,
            open_end,
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Vertices of valence at least three, counting the strict transform of
    /// the curve (or the open end) as an extra branch at the last vertex.
    pub fn branch_vertices(&self) -> Vec<usize> {
        let last = self.vertex_count.checked_sub(1);
        (0..self.vertex_count)
            .filter(|&v| self.degree(v) + usize::from(Some(v) == last) >= 3)
            .collect()
    }

    pub fn is_tree(&self) -> bool {
        if self.vertex_count == 0 {
            return self.edges.is_empty();
        }
        if self.edges.len() != self.vertex_count - 1 {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn root(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

/// Graphviz rendering with one `cluster_gamma{l}` subgraph per pair.
pub fn emit_dot(graph: &DualGraph) -> String {
    let mut out = String::from("graph dual {\n  node [shape=circle];\n");
    let label = |v: usize| {
        let mut s = v.to_string();
        if let Some(l) = graph.st.iter().position(|&x| x == v) {
            let _ = write!(s, "\\nst{}", l + 1);
        }
        if let Some(l) = graph.rho.iter().position(|&x| x == v) {
            let _ = write!(s, "\\nρ{}", l + 1);
        }
        s
    };
    for (l, vs) in graph.subgraphs.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_gamma{} {{\n    label=\"Γ{}\";", l + 1, l + 1);
        for &v in vs {
            let _ = writeln!(out, "    v{v} [label=\"{}\"];", label(v));
        }
        out.push_str("  }\n");
    }
    for &v in &graph.free_tail {
        let _ = writeln!(out, "  v{v} [label=\"{v}\", shape=point];");
    }
    for &(a, b) in &graph.edges {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    if graph.open_end && graph.vertex_count > 0 {
        let _ = writeln!(
            out,
            "  tail [shape=plaintext, label=\"…\"];\n  v{} -- tail [style=dashed];",
            graph.vertex_count - 1
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{build_type_a, build_type_b, DeltaCore};
    use crate::proximity::cluster_from_delta;

    fn graph(core: &[i64], last: i64, truncation: usize) -> DualGraph {
        let s = build_type_a(DeltaCore::new(core).unwrap(), last).unwrap();
        DualGraph::from_cluster(&cluster_from_delta(&s, truncation).unwrap())
    }

    fn node_statements(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("[label=") && !l.contains("--")).count()
    }

    #[test]
    fn single_pair() {
        let g = graph(&[5, 3], 15, usize::MAX);
        assert_eq!(g.vertex_count, 4);
        assert!(g.is_tree());
        assert_eq!(g.branch_vertices().len(), 1);
        assert_eq!(g.edges, BTreeSet::from([(0, 1), (1, 3), (2, 3)]));
    }

    #[test]
    fn running_example() {
        let g = graph(&[18, 12, 33, 4], -5, usize::MAX);
        assert_eq!(g.vertex_count, 45);
        assert!(g.is_tree());
        assert_eq!(g.subgraphs.len(), 2);
        assert_eq!(g.free_tail.len(), 17);
        assert_eq!(g.branch_vertices(), vec![4, 27]);
        assert_eq!(g.rho, vec![4, 27]);
        let dot = emit_dot(&g);
        assert_eq!(node_statements(&dot), 45);
        assert!(dot.contains("cluster_gamma2"));
        assert!(!dot.contains("tail"));
    }

    #[test]
    fn single_vertex_and_open_ends() {
        let g = graph(&[5, 3], 15, 1);
        assert_eq!(node_statements(&emit_dot(&g)), 1);
        let s = build_type_b(DeltaCore::new(&[5, 3]).unwrap());
        let g = DualGraph::from_cluster(&cluster_from_delta(&s, 10).unwrap());
        assert!(g.is_tree());
        assert!(emit_dot(&g).contains("style=dashed"));
    }
}
