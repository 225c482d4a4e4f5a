//! Chern invariants and Picard number of the resolved quotient surface.

use serde::{Deserialize, Serialize};

use super::{build_fiber_graph, fiber_euler_number};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub q: u64,
    pub e: i64,
    pub k2: i64,
    pub rho: i64,
    pub components_c: i64,
    pub mw_rank_r: i64,
}

/// From the Swan conductor `delta` of `H¹` and the Mordell–Weil rank
/// `mw_rank = dim (H¹ ⊗ H¹)^G`.
///
/// The Euler number is `e(P¹) e(C) + (e(F) - e(C)) + δ` with one singular
/// fiber `F`; Noether gives `K² = 12 - e`, and `ρ = e - 2` is compared
/// with `2 + (c - 1) + r`.
pub fn surface_invariants(q: u64, delta: i64, mw_rank: i64) -> Result<SurfaceInvariants> {
    let fiber = build_fiber_graph(q)?;
    let qi = q as i64;
    let e_curve = -qi * qi + qi + 2;
    let e_fiber = fiber_euler_number(&fiber);
    let e = 2 * e_curve + (e_fiber - e_curve) + delta;
    let k2 = 12 - e;
    let rho = e - 2;
    let components_c = fiber.vertex_count() as i64;
    let tate_shioda = 2 + (components_c - 1) + mw_rank;
    if rho != tate_shioda {
        return Err(Error::CrossCheckFailure(format!(
            "rho = {rho} from e but {tate_shioda} from fiber components and rank"
        )));
    }
    let expected = (qi * qi + qi + 6, -qi * qi - qi + 6, qi * qi + qi + 4);
    if (e, k2, rho) != expected {
        return Err(Error::CrossCheckFailure(format!(
            "(e, K2, rho) = {:?}, expected {expected:?}",
            (e, k2, rho)
        )));
    }
    Ok(SurfaceInvariants {
        q,
        e,
        k2,
        rho,
        components_c,
        mw_rank_r: mw_rank,
    })
}
