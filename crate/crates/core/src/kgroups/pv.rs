//! Truncated Pimsner-Voiculescu computation.
//!
//! The coefficient group is modelled on generators `g_{-N}..g_N` subject to
//! `x·g_i - y·g_{i+1} = 0`, with the shift `Φ` moving indices by one. The
//! crossed-product K-groups are the cokernel and kernel of `id - Φ` (plus a free
//! shift module in K₁ when both coefficients vanish). Since the real modules are
//! infinite, every answer is computed at two window sizes and must agree.

use num_bigint::BigInt;
use num_traits::One;

use super::group::{kernel_of_hom, ElementOrder, FGAbelianGroup, Presentation};
use super::matrix::IntMatrix;
use super::{KResult, KSource};
use crate::error::{Error, Result};

/// Direction of the shift endomorphism on the window generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    /// `g_i ↦ g_{i+1}`
    Up,
    /// `g_i ↦ g_{i-1}`
    Down,
}

/// Crossed-product K-groups from the truncated shift model, checked for
/// stability between windows `window` and `window + 1`.
pub fn pv_truncated(x: i64, y: i64, window: usize) -> Result<KResult> {
    pv_truncated_with_direction(x, y, window, ShiftDirection::Up)
}

pub fn pv_truncated_with_direction(
    x: i64,
    y: i64,
    window: usize,
    direction: ShiftDirection,
) -> Result<KResult> {
    if window < 2 {
        return Err(Error::Precondition(format!("window must be at least 2, got {window}")));
    }
    let chi = x.checked_sub(y).ok_or(Error::Overflow("x - y"))?;
    let (k0, k1) = pv_window(x, y, window, direction);
    let (k0_next, k1_next) = pv_window(x, y, window + 1, direction);
    let stable = k0.isomorphic(&k0_next)
        && k0.marked_order() == k0_next.marked_order()
        && k1.isomorphic(&k1_next);
    if !stable {
        return Err(Error::Unstable { window });
    }
    Ok(KResult {
        chi,
        k0,
        k1,
        source: KSource::PvTruncated,
    })
}

/// Relations `x·g_i - y·g_{i+1}` for all `i` with both indices in `lo..=hi`,
/// as rows over generators `lo..=hi`.
fn coefficient_relations(x: i64, y: i64, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let n = (hi - lo + 1) as usize;
    (lo..hi)
        .map(|i| {
            let mut row = vec![0i64; n];
            row[(i - lo) as usize] = x;
            row[(i + 1 - lo) as usize] = -y;
            row
        })
        .collect()
}

fn pv_window(x: i64, y: i64, n: usize, direction: ShiftDirection) -> (FGAbelianGroup, FGAbelianGroup) {
    let n = n as i64;
    let width = (2 * n + 1) as usize;
    let col = |i: i64| (i + n) as usize;
    let step = match direction {
        ShiftDirection::Up => 1,
        ShiftDirection::Down => -1,
    };

    // K₀: cokernel of id - Φ. The images g_i - g_{i±1} are the same set of
    // adjacent differences in either direction.
    let mut rows = coefficient_relations(x, y, -n, n);
    for i in -n..n {
        let mut row = vec![0i64; width];
        row[col(i)] = 1;
        row[col(i + 1)] = -1;
        rows.push(row);
    }
    let coker = Presentation::from_rows(width, &rows).solve();
    let k0 = coker.marked_by_generator(col(0));

    // K₁ part (a): kernel of id - Φ, on the generators whose shift stays inside the window.
    let (lo, hi) = match direction {
        ShiftDirection::Up => (-n, n - 1),
        ShiftDirection::Down => (-n + 1, n),
    };
    let domain_width = (hi - lo + 1) as usize;
    let domain = Presentation::from_rows(domain_width, &coefficient_relations(x, y, lo, hi));
    let codomain = Presentation::from_rows(width, &coefficient_relations(x, y, -n, n));
    let mut map = IntMatrix::zeros(domain_width, width);
    for i in lo..=hi {
        let r = (i - lo) as usize;
        map[(r, col(i))] += BigInt::one();
        map[(r, col(i + step))] -= BigInt::one();
    }
    let mut k1 = kernel_of_hom(&domain, &codomain, &map);

    // K₁ part (b): the coefficient algebra has K₁ a free shift module exactly when
    // x = y = 0; its cokernel under id - Φ is evaluated on the same window.
    if x == 0 && y == 0 {
        let shifts: Vec<Vec<i64>> = (-n..n)
            .map(|i| {
                let mut row = vec![0i64; width];
                row[col(i)] = 1;
                row[col(i + 1)] = -1;
                row
            })
            .collect();
        let module = Presentation::from_rows(width, &shifts).group();
        k1 = module.direct_sum(&k1);
    }
    (k0, k1)
}

/// True when the two results agree in free rank, torsion and the order of the
/// marked class of K₀.
pub fn results_agree(a: &KResult, b: &KResult) -> bool {
    a.k0.isomorphic(&b.k0) && a.k1.isomorphic(&b.k1) && a.k0.marked_order() == b.k0.marked_order()
}

/// Expected order of the marked class for a given χ.
pub fn expected_marked_order(chi: i64) -> ElementOrder {
    if chi == 0 {
        ElementOrder::Infinite
    } else {
        ElementOrder::Finite(BigInt::from(chi.unsigned_abs()))
    }
}
