//! The census of Lorenz knots, one JSON record per canonical word.

use std::io::{BufRead, Write};

use lorenz_core::braid::{EarCounts, LorenzBraid};
use lorenz_core::invariants;
use lorenz_core::jones::{jones_of_lorenz, DEFAULT_CROSSING_LIMIT};
use lorenz_core::poly::LaurentPoly;
use lorenz_core::tlink::TLinkParams;
use lorenz_core::words::{enumerate, CyclicWord, LinkWords};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_MAX_LEN_CAP: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub word: CyclicWord,
    pub length: usize,
    pub components: usize,
    pub n: usize,
    pub c: usize,
    pub trip: TLinkParams,
    pub ears: EarCounts,
    pub genus: i64,
    pub euler_characteristic: i64,
    pub braid_index: usize,
    pub c_min: usize,
    pub torus: Option<(usize, usize)>,
    pub unknot: bool,
    pub jones: Option<LaurentPoly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtlasConfig {
    pub max_len: usize,
    /// Attach Jones polynomials to records with at most this many crossings.
    pub jones_max_crossings: Option<usize>,
    pub cap: usize,
}

impl AtlasConfig {
    pub fn new(max_len: usize) -> Self {
        Self {
            max_len,
            jones_max_crossings: None,
            cap: DEFAULT_MAX_LEN_CAP,
        }
    }
}

impl AtlasRecord {
    /// Every field except `jones`, which is left empty.
    pub fn of_word(word: &CyclicWord) -> Self {
        let braid = LorenzBraid::from_words(&LinkWords::knot(word.clone()));
        let rec = invariants::record(&braid);
        let genus = rec.genus.expect("Lorenz knots satisfy the genus parity");
        Self {
            word: word.clone(),
            length: word.len(),
            components: rec.components,
            n: rec.strands,
            c: rec.crossings,
            trip: TLinkParams::from_lorenz(&braid),
            ears: braid.ear_counts(),
            genus,
            euler_characteristic: rec.euler_characteristic,
            braid_index: rec.braid_index,
            c_min: rec.min_crossings.expect("knot"),
            torus: rec.torus,
            unknot: genus == 0,
            jones: None,
        }
    }

    pub fn with_jones(mut self, limit: usize) -> Result<Self, CliError> {
        if self.c <= limit {
            let braid = LorenzBraid::from_words(&LinkWords::knot(self.word.clone()));
            self.jones = Some(jones_of_lorenz(&braid, limit)?);
        }
        Ok(self)
    }

    /// Recomputes the record from its word and checks the stored fields.
    pub fn check(&self) -> Result<(), String> {
        let fresh = Self {
            jones: self.jones.clone(),
            ..Self::of_word(&self.word)
        };
        if &fresh != self {
            return Err(format!(
                "{} does not match its recomputed invariants",
                self.word
            ));
        }
        if 2 * self.genus != self.c as i64 - self.n as i64 + 1 {
            return Err(format!("{}: 2g != c - n + 1", self.word));
        }
        if let Some((p, q)) = self.torus {
            if 2 * self.genus != ((p - 1) * (q - 1)) as i64 {
                return Err(format!("{}: torus genus mismatch", self.word));
            }
        }
        if let Some(jones) = &self.jones {
            // V(1) = 1 for every knot
            if jones.terms().map(|(_, c)| c).sum::<i64>() != 1 {
                return Err(format!("{}: Jones polynomial has V(1) != 1", self.word));
            }
        }
        Ok(())
    }
}

/// Records for every canonical word of length at most `max_len`, ordered by
/// length then lexicographically. Lengths are computed in parallel and
/// concatenated in order.
pub fn build(config: &AtlasConfig) -> Result<Vec<AtlasRecord>, CliError> {
    if config.max_len > config.cap {
        return Err(CliError::CapExceeded {
            what: "max length",
            requested: config.max_len,
            cap: config.cap,
        });
    }
    if let Some(limit) = config.jones_max_crossings {
        if limit > DEFAULT_CROSSING_LIMIT {
            return Err(CliError::CapExceeded {
                what: "Jones crossing threshold",
                requested: limit,
                cap: DEFAULT_CROSSING_LIMIT,
            });
        }
    }
    let words = enumerate(config.max_len);
    let shards: Vec<&[CyclicWord]> = words.chunk_by(|a, b| a.len() == b.len()).collect();
    let built: Vec<Vec<AtlasRecord>> = shards
        .into_par_iter()
        .map(|shard| {
            shard
                .par_iter()
                .map(|w| {
                    let rec = AtlasRecord::of_word(w);
                    match config.jones_max_crossings {
                        Some(limit) => rec.with_jones(limit),
                        None => Ok(rec),
                    }
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(built.into_iter().flatten().collect())
}

pub fn write_jsonl<W: Write>(records: &[AtlasRecord], mut out: W) -> Result<(), CliError> {
    for r in records {
        serde_json::to_writer(&mut out, r).map_err(std::io::Error::other)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Reads and checks an atlas; blank lines are skipped.
pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<AtlasRecord>, CliError> {
    let mut records: Vec<AtlasRecord> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let corrupt = |reason: String| CliError::Corrupt {
            line: i + 1,
            reason,
        };
        let record: AtlasRecord =
            serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
        record.check().map_err(corrupt)?;
        if !seen.insert(record.word.clone()) {
            return Err(corrupt(format!("duplicate word {}", record.word)));
        }
        records.push(record);
    }
    Ok(records)
}
