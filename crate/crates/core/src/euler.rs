//! Graph Euler characteristic.
//!
//! `chi(G) = 1 - sum_{j>=1} (-1)^(j-1) N_j`, where `N_j` counts the complete
//! subgraphs of `G` on `j` vertices. Two independent evaluations are provided:
//! direct clique enumeration, and the deletion recursion
//! `chi(G) = chi(G') - chi(G_k)` driven by [`select_removal`].

use crate::error::{Error, Result};
use crate::graph::{complement, connected_components, select_removal, Graph, JoinDecomposition};

/// Largest graph accepted by clique enumeration unless configured otherwise.
pub const DEFAULT_MAX_CLIQUE_VERTICES: usize = 24;

/// Hard ceiling: enumeration works on 64-bit neighbourhood masks.
const MASK_BITS: usize = 64;

/// Counts `N_1, N_2, ...` of complete subgraphs by size. Trailing zeros are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliqueProfile {
    pub counts: Vec<u64>,
}

impl CliqueProfile {
    /// `N_j` for `j >= 1`; zero beyond the clique number.
    pub fn count(&self, j: usize) -> u64 {
        assert!(j >= 1, "clique sizes start at 1");
        self.counts.get(j - 1).copied().unwrap_or(0)
    }

    pub fn clique_number(&self) -> usize {
        self.counts.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerMethod {
    Direct,
    Recursive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerResult {
    pub chi: i64,
    /// Present for [`EulerMethod::Direct`].
    pub profile: Option<CliqueProfile>,
    pub method: EulerMethod,
}

pub fn clique_counts(g: &Graph) -> Result<CliqueProfile> {
    clique_counts_with_bound(g, DEFAULT_MAX_CLIQUE_VERTICES)
}

/// Exact counts of all complete subgraphs, by include/exclude branching on
/// neighbourhood masks. Every clique is visited once, as the increasing
/// sequence of its vertex indices.
pub fn clique_counts_with_bound(g: &Graph, max_vertices: usize) -> Result<CliqueProfile> {
    let n = g.vertex_count();
    let limit = max_vertices.min(MASK_BITS);
    if n > limit {
        return Err(Error::ResourceLimit {
            what: "clique enumeration vertex",
            limit,
            actual: n,
        });
    }
    let masks: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut counts = vec![0u64; n];
    extend_cliques(all, 0, &masks, &mut counts)?;
    while counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(CliqueProfile { counts })
}

/// Counts cliques of size `depth + 1, depth + 2, ...` that extend the current
/// clique (of size `depth`) by vertices from `candidates`.
fn extend_cliques(candidates: u64, depth: usize, masks: &[u64], counts: &mut [u64]) -> Result<()> {
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        counts[depth] = counts[depth]
            .checked_add(1)
            .ok_or(Error::Overflow("clique count"))?;
        let next = rest & masks[v];
        if next != 0 {
            extend_cliques(next, depth + 1, masks, counts)?;
        }
    }
    Ok(())
}

/// `1 - sum_j (-1)^(j-1) N_j` with checked arithmetic.
pub fn chi_from_profile(profile: &CliqueProfile) -> Result<i64> {
    let mut chi: i64 = 1;
    for (i, &count) in profile.counts.iter().enumerate() {
        let c = i64::try_from(count).map_err(|_| Error::Overflow("Euler characteristic"))?;
        // j = i + 1; (-1)^(j-1) is +1 for even i
        chi = if i % 2 == 0 { chi.checked_sub(c) } else { chi.checked_add(c) }
            .ok_or(Error::Overflow("Euler characteristic"))?;
    }
    Ok(chi)
}

pub fn chi_direct(g: &Graph) -> Result<EulerResult> {
    chi_direct_with_bound(g, DEFAULT_MAX_CLIQUE_VERTICES)
}

pub fn chi_direct_with_bound(g: &Graph, max_vertices: usize) -> Result<EulerResult> {
    let profile = clique_counts_with_bound(g, max_vertices)?;
    Ok(EulerResult {
        chi: chi_from_profile(&profile)?,
        profile: Some(profile),
        method: EulerMethod::Direct,
    })
}

pub fn chi_recursive(g: &Graph) -> Result<EulerResult> {
    chi_recursive_with_bound(g, DEFAULT_MAX_CLIQUE_VERTICES)
}

/// Deletion recursion. Requires a connected complement and at least two vertices.
///
/// `chi(G_k)` is evaluated directly because the complement of `G_k` need not be connected.
pub fn chi_recursive_with_bound(g: &Graph, max_vertices: usize) -> Result<EulerResult> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::GraphTooSmall(n));
    }
    let chi = recurse(g, max_vertices)?;
    Ok(EulerResult {
        chi,
        profile: None,
        method: EulerMethod::Recursive,
    })
}

fn recurse(g: &Graph, max_vertices: usize) -> Result<i64> {
    if g.vertex_count() == 2 {
        if g.edge_count() != 0 {
            return Err(Error::Precondition(
                "complement of the graph is not connected".into(),
            ));
        }
        return Ok(-1);
    }
    let step = select_removal(g)?;
    let chi_prime = recurse(&step.gamma_prime, max_vertices)?;
    let chi_k = chi_direct_with_bound(&step.gamma_k, max_vertices)?.chi;
    chi_prime
        .checked_sub(chi_k)
        .ok_or(Error::Overflow("Euler characteristic"))
}

/// Per-factor `chi` by direct enumeration, each cross-checked against the recursion.
pub fn chi_of_join_factors(d: &JoinDecomposition) -> Result<Vec<EulerResult>> {
    d.factors
        .iter()
        .map(|f| {
            if connected_components(&complement(f)).len() != 1 {
                return Err(Error::Precondition(
                    "join factor with disconnected complement".into(),
                ));
            }
            let direct = chi_direct(f)?;
            let recursive = chi_recursive(f)?;
            if direct.chi != recursive.chi {
                return Err(Error::CrossCheck(format!(
                    "chi of factor {:?}: direct {} != recursive {}",
                    f.labels(),
                    direct.chi,
                    recursive.chi
                )));
            }
            Ok(direct)
        })
        .collect()
}
