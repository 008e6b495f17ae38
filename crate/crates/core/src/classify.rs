//! End-to-end classification: graph → join factors → χ → K-groups → Cuntz symbols.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::{chi_direct_with_bound, chi_recursive_with_bound, DEFAULT_MAX_CLIQUE_VERTICES};
use crate::graph::{dominated_vertices, join_decompose, Graph};
use crate::kgroups::{graph_k_theory_with_bound, FGAbelianGroup, ToeplitzK, DEFAULT_PV_WINDOW};

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub max_clique_vertices: usize,
    pub pv_window: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_clique_vertices: DEFAULT_MAX_CLIQUE_VERTICES,
            pv_window: DEFAULT_PV_WINDOW,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputSummary {
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub satisfied: bool,
    /// Labels of vertices adjacent to all others.
    pub dominated_vertices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub vertices: Vec<String>,
    pub chi: i64,
    /// `(χ(Γ'), χ(Γ_k))` from the deletion step used for the cross-check.
    pub chi_split: (i64, i64),
    pub cuntz_symbol: String,
    pub k0: FGAbelianGroup,
    pub k1: FGAbelianGroup,
    pub toeplitz: ToeplitzK,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub input: InputSummary,
    pub hypothesis: Hypothesis,
    /// Ordered by smallest vertex.
    pub factors: Vec<FactorReport>,
    /// Tensor product of the factor symbols, unsimplified.
    pub symbol: String,
}

/// `O_{1+|χ|}`
pub fn cuntz_symbol(chi: i64) -> String {
    format!("O_{}", 1 + u128::from(chi.unsigned_abs()))
}

/// Hypothesis status without running the pipeline.
pub fn check_hypothesis(g: &Graph) -> Result<Hypothesis> {
    let dominated = dominated_vertices(g)?;
    Ok(Hypothesis {
        satisfied: dominated.is_empty(),
        dominated_vertices: dominated.iter().map(|&v| g.label(v).to_string()).collect(),
    })
}

pub fn classify(g: &Graph) -> Result<ClassificationReport> {
    classify_with(g, ClassifyOptions::default())
}

/// Runs the full pipeline. Fails with [`Error::DominatedVertices`] when the
/// hypothesis does not hold, and with [`Error::CrossCheck`] if the two
/// evaluations of χ or of the K-groups disagree on some factor.
pub fn classify_with(g: &Graph, opts: ClassifyOptions) -> Result<ClassificationReport> {
    let hypothesis = check_hypothesis(g)?;
    let decomposition = join_decompose(g)?;
    let mut factors = Vec::with_capacity(decomposition.factors.len());
    for f in &decomposition.factors {
        let direct = chi_direct_with_bound(f, opts.max_clique_vertices)?.chi;
        let recursive = chi_recursive_with_bound(f, opts.max_clique_vertices)?.chi;
        if direct != recursive {
            return Err(Error::CrossCheck(format!(
                "factor {:?}: clique count gives chi = {direct}, recursion gives {recursive}",
                f.labels()
            )));
        }
        let k = graph_k_theory_with_bound(f, opts.pv_window, opts.max_clique_vertices)?;
        factors.push(FactorReport {
            vertices: f.labels().to_vec(),
            chi: k.chi,
            chi_split: k.split,
            cuntz_symbol: cuntz_symbol(k.chi),
            k0: k.quotient.k0,
            k1: k.quotient.k1,
            toeplitz: k.toeplitz,
        });
    }
    let symbol = factors
        .iter()
        .map(|f| f.cuntz_symbol.as_str())
        .collect::<Vec<_>>()
        .join(" ⊗ ");
    Ok(ClassificationReport {
        input: InputSummary {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        },
        hypothesis,
        factors,
        symbol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertices_is_o2() {
        let r = classify(&Graph::edgeless(2)).unwrap();
        assert_eq!(r.symbol, "O_2");
        assert_eq!(r.factors.len(), 1);
        let f = &r.factors[0];
        assert_eq!(f.chi, -1);
        assert!(f.k0.is_trivial() && f.k1.is_trivial());
        assert_eq!(f.toeplitz.k0.to_string(), "Z");
        assert!(r.hypothesis.satisfied);
    }

    #[test]
    fn four_cycle_is_tensor_square() {
        let r = classify(&Graph::cycle(4)).unwrap();
        assert_eq!(r.symbol, "O_2 ⊗ O_2");
        assert_eq!(r.factors[0].vertices, ["1", "3"]);
        assert_eq!(r.factors[1].vertices, ["2", "4"]);
    }

    #[test]
    fn path_is_o1() {
        let r = classify(&Graph::path(4)).unwrap();
        assert_eq!(r.symbol, "O_1");
        assert_eq!(r.factors[0].k0.to_string(), "Z");
        assert_eq!(r.factors[0].k1.to_string(), "Z");
    }

    #[test]
    fn dominated_vertex_rejected() {
        let e = classify(&Graph::path(3)).unwrap_err();
        assert_eq!(e, Error::DominatedVertices(vec!["2".into()]));
        let h = check_hypothesis(&Graph::path(3)).unwrap();
        assert!(!h.satisfied);
    }

    #[test]
    fn edgeless_family() {
        for n in 2..=6usize {
            let r = classify(&Graph::edgeless(n)).unwrap();
            assert_eq!(r.symbol, format!("O_{n}"));
            assert_eq!(r.factors[0].chi, 1 - n as i64);
        }
    }

    #[test]
    fn symbols() {
        assert_eq!(cuntz_symbol(0), "O_1");
        assert_eq!(cuntz_symbol(-11), "O_12");
        assert_eq!(cuntz_symbol(i64::MIN), "O_9223372036854775809");
    }
}
