//! T-links: closures of concatenated torus-braid blocks
//! `(σ_1 … σ_{p_1-1})^{q_1} … (σ_1 … σ_{p_k-1})^{q_k}` on `p_k` strands,
//! and their correspondence with Lorenz braids.
//!
//! The correspondence used is the identity on parameters: the Lorenz braid
//! whose overcrossing strands have displacements `p_i` with multiplicities
//! `q_i` closes to the same link as the T-braid with pairs `(p_i, q_i)`.
//! Jones-polynomial agreement on the census is the evidence for it.
//!
//! Ear circles (the words `L` and `R`) are fixed strands that no other strand
//! crosses. They close to split unknotted components with no trip
//! parameters, so a link containing them is the T-link plus
//! [`split_circles`] unknots.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::LorenzBraid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TLinkError {
    #[error("invalid T-link parameters: {0}")]
    InvalidParams(String),
    #[error("no Lorenz braid realizes {0}")]
    Infeasible(String),
}

/// Pairs `((p_1,q_1), …, (p_k,q_k))` with `1 ≤ p_1 < … < p_k` and every `q_i ≥ 1`.
///
/// The conventional normalization `p_1 ≥ 2`, `q_k ≥ 2` is reported by
/// [`TLinkParams::is_normalized`] but not enforced: trip parameters read off
/// an arbitrary Lorenz braid may have `p_1 = 1` or `q_k = 1`. The empty list
/// is the one-strand trivial braid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TLinkParams {
    pairs: Vec<(usize, usize)>,
}

impl TLinkParams {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self, TLinkError> {
        if let Some(&(p, q)) = pairs.iter().find(|&&(p, q)| p == 0 || q == 0) {
            return Err(TLinkError::InvalidParams(format!(
                "({p},{q}) is not a pair of positive integers"
            )));
        }
        if pairs.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(TLinkError::InvalidParams(
                "p_i must be strictly increasing".into(),
            ));
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    /// `p_1 ≥ 2` and, for `k > 1`, `q_k ≥ 2`.
    pub fn is_normalized(&self) -> bool {
        match (self.pairs.first(), self.pairs.last()) {
            (Some(&(p1, _)), Some(&(_, qk))) => p1 >= 2 && (self.k() == 1 || qk >= 2),
            _ => false,
        }
    }

    /// Strand count of the T-braid, `p_k` (one for the empty list).
    pub fn strands(&self) -> usize {
        self.pairs.last().map_or(1, |&(p, _)| p)
    }

    /// `Σ q_i (p_i - 1)`.
    pub fn t_crossings(&self) -> usize {
        self.pairs.iter().map(|&(p, q)| q * (p - 1)).sum()
    }

    /// Generator indices of the T-braid word, block by block.
    pub fn t_braid_word(&self) -> Vec<usize> {
        self.pairs
            .iter()
            .flat_map(|&(p, q)| (0..q).flat_map(move |_| 1..p))
            .collect()
    }

    /// Builds the Lorenz braid with these trip parameters.
    ///
    /// Overcrossing strands occupy positions `1..=Σq_i` with displacements in
    /// non-decreasing order; undercrossing strands take the remaining targets
    /// order-preservingly, which is the only completion with increasing
    /// under-targets.
    pub fn to_lorenz(&self) -> Result<LorenzBraid, TLinkError> {
        if self.pairs.is_empty() {
            return LorenzBraid::from_parts(vec![0], 1)
                .map_err(|e| TLinkError::Infeasible(e.to_string()));
        }
        let over: Vec<usize> = self
            .pairs
            .iter()
            .flat_map(|&(p, q)| std::iter::repeat_n(p, q))
            .collect();
        let left = over.len();
        let n = left + self.strands();
        let mut targets = vec![usize::MAX; n];
        let mut taken = vec![false; n];
        for (i, &d) in over.iter().enumerate() {
            targets[i] = i + d;
            taken[i + d] = true;
        }
        let free = (0..n).filter(|&t| !taken[t]);
        for (slot, t) in targets[left..].iter_mut().zip(free) {
            *slot = t;
        }
        let braid = LorenzBraid::from_parts(targets, left)
            .map_err(|e| TLinkError::Infeasible(format!("{self}: {e}")))?;
        if braid.strand_profile().trip != self.pairs {
            return Err(TLinkError::Infeasible(format!(
                "{self}: trip parameters not reproduced"
            )));
        }
        Ok(braid)
    }

    /// Trip parameters of a Lorenz braid, read as T-link parameters.
    pub fn from_lorenz(braid: &LorenzBraid) -> Self {
        Self::new(braid.strand_profile().trip)
            .expect("trip parameters are strictly increasing and positive")
    }
}

/// Number of fixed strands, each closing to a split unknot.
pub fn split_circles(braid: &LorenzBraid) -> usize {
    (0..braid.strands())
        .filter(|&i| braid.displacement(i) == 0)
        .count()
}

impl fmt::Display for TLinkParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (p, q)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({p},{q})")?;
        }
        f.write_str(")")
    }
}

/// Accepts a JSON array of pairs (`[[2,3],[4,4]]`) or the shorthand `2,3;4,4`.
impl FromStr for TLinkParams {
    type Err = TLinkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |why: &str| TLinkError::InvalidParams(format!("{s:?}: {why}"));
        let pairs: Vec<(usize, usize)> = if s.starts_with('[') {
            let raw: Vec<[usize; 2]> = serde_json::from_str(s).map_err(|e| bad(&e.to_string()))?;
            raw.into_iter().map(|[p, q]| (p, q)).collect()
        } else {
            s.split(';')
                .filter(|part| !part.trim().is_empty())
                .map(|part| {
                    let (p, q) = part.split_once(',').ok_or_else(|| bad("expected p,q"))?;
                    let p = p.trim().parse().map_err(|_| bad("p is not an integer"))?;
                    let q = q.trim().parse().map_err(|_| bad("q is not an integer"))?;
                    Ok((p, q))
                })
                .collect::<Result<_, TLinkError>>()?
        };
        Self::new(pairs)
    }
}

impl Serialize for TLinkParams {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self.pairs.iter().map(|&(p, q)| [p, q]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TLinkParams {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<[usize; 2]>::deserialize(deserializer)?;
        Self::new(pairs.into_iter().map(|[p, q]| (p, q)).collect())
            .map_err(serde::de::Error::custom)
    }
}
