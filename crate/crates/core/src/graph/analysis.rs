use super::Graph;
use crate::error::{Error, Result};

/// Same vertices; `u -- v` is an edge iff it is not one in `g` (for `u != v`).
pub fn complement(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut c = g.clone();
    for u in 0..n {
        for v in (u + 1)..n {
            c.set_edge(u, v, !g.adjacent(u, v));
        }
    }
    c
}

/// Connected components, each sorted, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Vertices adjacent to every other vertex (the isolated vertices of the complement).
pub fn dominated_vertices(g: &Graph) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::GraphTooSmall(n));
    }
    Ok((0..n).filter(|&v| g.degree(v) == n - 1).collect())
}

/// Factorisation of a graph as a join of induced subgraphs with connected complements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinDecomposition {
    pub factors: Vec<Graph>,
    /// Vertex indices of each factor in the original graph; a partition of its vertex set.
    pub factor_vertex_sets: Vec<Vec<usize>>,
}

/// Splits `g` along the connected components of its complement.
///
/// Fails when some vertex is adjacent to all others, since that vertex would
/// form a one-vertex factor.
pub fn join_decompose(g: &Graph) -> Result<JoinDecomposition> {
    let dominated = dominated_vertices(g)?;
    if !dominated.is_empty() {
        return Err(Error::DominatedVertices(
            dominated.iter().map(|&v| g.label(v).to_string()).collect(),
        ));
    }
    let factor_vertex_sets = connected_components(&complement(g));
    let factors = factor_vertex_sets
        .iter()
        .map(|vs| g.induced_subgraph(vs))
        .collect();
    Ok(JoinDecomposition {
        factors,
        factor_vertex_sets,
    })
}

/// One step of the vertex-deletion recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalStep {
    /// Index of the deleted vertex in the input graph.
    pub removed_vertex: usize,
    /// Input graph with the vertex deleted.
    pub gamma_prime: Graph,
    /// Subgraph of `gamma_prime` induced on the deleted vertex's neighbours.
    pub gamma_k: Graph,
    /// Number of neighbours of the deleted vertex.
    pub k: usize,
    /// Neighbour indices of the deleted vertex in the input graph.
    pub neighbors: Vec<usize>,
}

/// Chooses a vertex whose deletion keeps the complement connected.
///
/// The vertex is the smallest-index leaf of the depth-first spanning tree of the
/// complement rooted at vertex 0 (neighbours visited in index order). Any leaf of
/// any spanning tree is a non-cut vertex, so the result is always valid.
pub fn select_removal(g: &Graph) -> Result<RemovalStep> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::Precondition(format!(
            "vertex removal needs at least 3 vertices, graph has {n}"
        )));
    }
    let opp = complement(g);
    let tree_degree = dfs_tree_degrees(&opp).ok_or_else(|| {
        Error::Precondition("complement of the graph is not connected".into())
    })?;
    let removed_vertex = (0..n)
        .find(|&v| tree_degree[v] == 1)
        .expect("a spanning tree on >= 2 vertices has a leaf");

    let neighbors: Vec<usize> = g.neighbors(removed_vertex).collect();
    let gamma_prime = g.remove_vertex(removed_vertex);
    let gamma_k = g.induced_subgraph(&neighbors);
    let k = neighbors.len();
    debug_assert!(k < gamma_prime.vertex_count());
    Ok(RemovalStep {
        removed_vertex,
        gamma_prime,
        gamma_k,
        k,
        neighbors,
    })
}

/// The deletion step at a given vertex. The complement of the input and of the
/// reduced graph must both be connected; any vertex of a 2-vertex admissible graph qualifies.
pub fn removal_step_at(g: &Graph, v: usize) -> Result<RemovalStep> {
    g.check_index(v)?;
    let n = g.vertex_count();
    if n < 2 || connected_components(&complement(g)).len() != 1 {
        return Err(Error::Precondition("complement of the graph is not connected".into()));
    }
    let gamma_prime = g.remove_vertex(v);
    if connected_components(&complement(&gamma_prime)).len() != 1 {
        return Err(Error::Precondition(format!(
            "deleting vertex {} disconnects the complement",
            g.label(v)
        )));
    }
    let neighbors: Vec<usize> = g.neighbors(v).collect();
    Ok(RemovalStep {
        removed_vertex: v,
        gamma_prime,
        gamma_k: g.induced_subgraph(&neighbors),
        k: neighbors.len(),
        neighbors,
    })
}

/// Degrees in the DFS spanning tree rooted at 0, or `None` if `g` is disconnected.
fn dfs_tree_degrees(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut degree = vec![0usize; n];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut count = 1;
    // (vertex, next neighbour candidate to scan)
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    while let Some(&mut (u, ref mut next)) = stack.last_mut() {
        let mut child = None;
        while *next < n {
            let v = *next;
            *next += 1;
            if g.adjacent(u, v) && !visited[v] {
                child = Some(v);
                break;
            }
        }
        match child {
            Some(v) => {
                visited[v] = true;
                count += 1;
                degree[u] += 1;
                degree[v] += 1;
                stack.push((v, 0));
            }
            None => {
                stack.pop();
            }
        }
    }
    (count == n).then_some(degree)
}
