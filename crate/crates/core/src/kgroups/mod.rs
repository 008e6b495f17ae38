//! K-groups of the boundary quotient and of the Toeplitz algebra.
//!
//! [`kgroups_closed_form`] evaluates the answer directly from χ;
//! [`pv_truncated`] recomputes it from the integer relations
//! `χ(Γ')·[P_i] = χ(Γ_k)·[P_{i+1}]` via Smith normal form, as an independent oracle.

mod group;
mod matrix;
mod pv;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

pub use group::{kernel_of_hom, ElementOrder, FGAbelianGroup, Presentation, PresentedGroup};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use pv::{
    expected_marked_order, pv_truncated, pv_truncated_with_direction, results_agree, ShiftDirection,
};

use crate::error::{Error, Result};
use crate::euler::{chi_direct_with_bound, DEFAULT_MAX_CLIQUE_VERTICES};
use crate::graph::{complement, connected_components, select_removal, Graph};

/// Window used when a graph computation cross-checks itself against the oracle.
pub const DEFAULT_PV_WINDOW: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KSource {
    ClosedForm,
    PvTruncated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KResult {
    pub chi: i64,
    pub k0: FGAbelianGroup,
    pub k1: FGAbelianGroup,
    pub source: KSource,
}

/// K-groups of the Toeplitz algebra, with the multiplier of the map induced on
/// K₀ by the inclusion of the compact ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToeplitzK {
    pub k0: FGAbelianGroup,
    pub k1: FGAbelianGroup,
    pub extension_multiplier: i64,
}

/// `K₀ = Z_{|χ|}` (with `Z_0 = Z`, `Z_1 = 0`) generated by the unit class;
/// `K₁ = Z` if `χ = 0`, else `0`.
pub fn kgroups_closed_form(chi: i64) -> KResult {
    let (k0, k1) = if chi == 0 {
        (
            FGAbelianGroup::free(1).with_marked(vec![BigInt::one()]),
            FGAbelianGroup::free(1),
        )
    } else {
        let g = FGAbelianGroup::cyclic(chi.unsigned_abs());
        let marked = if g.is_trivial() { vec![] } else { vec![BigInt::one()] };
        (g.with_marked(marked), FGAbelianGroup::trivial())
    };
    KResult {
        chi,
        k0,
        k1,
        source: KSource::ClosedForm,
    }
}

pub fn kgroups_toeplitz(chi: i64) -> ToeplitzK {
    ToeplitzK {
        k0: FGAbelianGroup::free(1).with_marked(vec![BigInt::one()]),
        k1: FGAbelianGroup::trivial(),
        extension_multiplier: chi,
    }
}

/// Full K-theory computation for one join factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphKTheory {
    pub chi: i64,
    /// `(χ(Γ'), χ(Γ_k))` for the top step of the deletion recursion.
    pub split: (i64, i64),
    pub quotient: KResult,
    pub toeplitz: ToeplitzK,
    /// The truncated computation on `split`, already checked against `quotient`.
    pub oracle: KResult,
}

/// Closed-form K-groups for a graph with connected complement, cross-checked
/// against [`pv_truncated`] at [`DEFAULT_PV_WINDOW`].
pub fn kgroups_for_graph(g: &Graph) -> Result<KResult> {
    Ok(graph_k_theory(g, DEFAULT_PV_WINDOW)?.quotient)
}

pub fn graph_k_theory(g: &Graph, window: usize) -> Result<GraphKTheory> {
    graph_k_theory_with_bound(g, window, DEFAULT_MAX_CLIQUE_VERTICES)
}

/// As [`graph_k_theory`], with a custom bound for clique enumeration.
pub fn graph_k_theory_with_bound(g: &Graph, window: usize, max_clique_vertices: usize) -> Result<GraphKTheory> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::GraphTooSmall(n));
    }
    if connected_components(&complement(g)).len() != 1 {
        return Err(Error::Precondition("complement of the graph is not connected".into()));
    }
    // With two vertices the only admissible graph is edgeless; deleting either
    // vertex leaves one vertex and an empty neighbourhood.
    let (gamma_prime, gamma_k) = if n == 2 {
        (g.remove_vertex(1), Graph::empty())
    } else {
        let step = select_removal(g)?;
        (step.gamma_prime, step.gamma_k)
    };
    let x = chi_direct_with_bound(&gamma_prime, max_clique_vertices)?.chi;
    let y = chi_direct_with_bound(&gamma_k, max_clique_vertices)?.chi;
    let chi = x.checked_sub(y).ok_or(Error::Overflow("chi(G') - chi(G_k)"))?;

    let direct = chi_direct_with_bound(g, max_clique_vertices)?.chi;
    if direct != chi {
        return Err(Error::CrossCheck(format!(
            "deletion step gives chi = {chi}, clique count gives {direct}"
        )));
    }

    let quotient = kgroups_closed_form(chi);
    let oracle = pv_truncated(x, y, window)?;
    if !results_agree(&quotient, &oracle) {
        return Err(Error::CrossCheck(format!(
            "closed form K0 = {}, K1 = {} but truncated computation gives K0 = {}, K1 = {}",
            quotient.k0, quotient.k1, oracle.k0, oracle.k1
        )));
    }
    Ok(GraphKTheory {
        chi,
        split: (x, y),
        quotient,
        toeplitz: kgroups_toeplitz(chi),
        oracle,
    })
}

impl KResult {
    /// Order of the marked class of K₀; always present for results built here.
    pub fn unit_order(&self) -> ElementOrder {
        self.k0.marked_order().unwrap_or(ElementOrder::Finite(BigInt::zero()))
    }
}
