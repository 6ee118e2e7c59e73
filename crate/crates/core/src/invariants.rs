//! Knot invariants read off a Lorenz braid by counting.
//!
//! Lorenz links are closures of positive braids, which pins down several
//! invariants from any positive diagram:
//!
//! * genus: `2g = c - n + 1` for a knot whose positive braid has `n`
//!   strands and `c` crossings (the fiber surface from Seifert's algorithm
//!   is minimal), and `χ = n - c` for links;
//! * braid index: the trip number `min(|LR|, |RL|)`;
//! * crossing number: realized at minimal braid index, `c_min = 2g + n_min - 1`.
//!
//! Versions of these identities with the signs of `n` and `c` exchanged, or
//! with `|LL| + |RR|` subtracted from the crossing count, circulate in print
//! and fail already on the trefoil (`2g = 5 + 1 - 6 = 0`). The forms above
//! are the ones checked against the torus-knot values
//! `g = (p-1)(q-1)/2`, `n_min = p`, `c_min = q(p-1)`.

use serde::Serialize;
use thiserror::Error;

use crate::braid::LorenzBraid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("genus and crossing number are defined here only for knots, not {components}-component links")]
    NotAKnot { components: usize },
    #[error("c - n + 1 = {crossings} - {strands} + 1 is odd")]
    ParityError { crossings: usize, strands: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantRecord {
    pub components: usize,
    pub strands: usize,
    pub crossings: usize,
    pub genus: Option<i64>,
    pub euler_characteristic: i64,
    pub braid_index: usize,
    pub min_crossings: Option<usize>,
    pub torus: Option<(usize, usize)>,
}

fn require_knot(b: &LorenzBraid) -> Result<(), InvariantError> {
    if b.is_knot() {
        Ok(())
    } else {
        Err(InvariantError::NotAKnot {
            components: b.component_count(),
        })
    }
}

pub fn euler_characteristic(b: &LorenzBraid) -> i64 {
    b.strands() as i64 - b.strand_profile().crossings as i64
}

pub fn genus(b: &LorenzBraid) -> Result<i64, InvariantError> {
    require_knot(b)?;
    let crossings = b.strand_profile().crossings;
    let twice = 1 - euler_characteristic(b);
    if twice < 0 || twice % 2 != 0 {
        return Err(InvariantError::ParityError {
            crossings,
            strands: b.strands(),
        });
    }
    Ok(twice / 2)
}

/// `Σ q_i (p_i - 1) - |R| + 1`, the trip-parameter form of `2g`.
///
/// Equal to `c - n + 1` whenever every left strand moves, which excludes only
/// the ear circle `L`.
pub fn twice_genus_from_trip(b: &LorenzBraid) -> i64 {
    let profile = b.strand_profile();
    let twisted: usize = profile.trip.iter().map(|&(p, q)| q * (p - 1)).sum();
    twisted as i64 - b.right() as i64 + 1
}

/// `min(|LR|, |RL|)`, or 1 when no strand changes ears (a union of ear circles).
pub fn braid_index(b: &LorenzBraid) -> usize {
    let counts = b.ear_counts();
    counts.lr.min(counts.rl).max(1)
}

/// `2g + n_min - 1`; zero for the unknot.
pub fn min_crossings(b: &LorenzBraid) -> Result<usize, InvariantError> {
    let g = genus(b)?;
    if g == 0 {
        return Ok(0);
    }
    Ok(2 * g as usize + braid_index(b) - 1)
}

/// `(p, q)` when all overcrossing strands share one displacement `p`.
///
/// Sufficient, not necessary: a braid with several trip groups can still
/// close to a torus knot.
pub fn is_torus(b: &LorenzBraid) -> Option<(usize, usize)> {
    if !b.is_knot() {
        return None;
    }
    match b.strand_profile().trip.as_slice() {
        [(p, q)] => Some((*p, *q)),
        _ => None,
    }
}

pub fn record(b: &LorenzBraid) -> InvariantRecord {
    let knot = b.is_knot();
    InvariantRecord {
        components: b.component_count(),
        strands: b.strands(),
        crossings: b.strand_profile().crossings,
        genus: if knot { genus(b).ok() } else { None },
        euler_characteristic: euler_characteristic(b),
        braid_index: braid_index(b),
        min_crossings: if knot { min_crossings(b).ok() } else { None },
        torus: is_torus(b),
    }
}
