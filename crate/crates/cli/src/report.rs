//! JSON reports behind the subcommands.

use lorenz_core::braid::LorenzBraid;
use lorenz_core::flow::{itinerary, FlowParams, State, Trajectory};
use lorenz_core::invariants;
use lorenz_core::jones::{jones_of_braid_with_limit, jones_of_lorenz, jones_torus};
use lorenz_core::modular::{
    dedekind_sum, matrix_of_word, rademacher, rademacher_psi, word_of_matrix, Mat2Z,
};
use lorenz_core::poly::LaurentPoly;
use lorenz_core::tlink::{split_circles, TLinkParams};
use lorenz_core::words::{letters_to_string, CyclicWord, LinkWords};
use serde_json::{json, Value};

use crate::error::CliError;

/// A link given either by its words or by T-link parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Subject {
    Words(LinkWords),
    Params(TLinkParams),
}

fn looks_like_word(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphabetic())
}

impl Subject {
    pub fn parse(inputs: &[String]) -> Result<Self, CliError> {
        match inputs {
            [] => Err(CliError::BadInput(
                "expected a word or T-link parameters".into(),
            )),
            _ if inputs.iter().all(|s| looks_like_word(s)) => {
                Ok(Self::Words(LinkWords::parse(inputs)?))
            }
            [single] => Ok(Self::Params(single.parse()?)),
            _ => Err(CliError::BadInput(
                "give words, or a single parameter list".into(),
            )),
        }
    }

    pub fn braid(&self) -> Result<LorenzBraid, CliError> {
        match self {
            Self::Words(link) => Ok(LorenzBraid::from_words(link)),
            Self::Params(params) => Ok(params.to_lorenz()?),
        }
    }
}

fn word_strings(braid: &LorenzBraid) -> Vec<String> {
    braid.words().iter().map(ToString::to_string).collect()
}

fn jones_value(p: &LaurentPoly) -> Value {
    json!({ "polynomial": p.to_string(), "terms": p })
}

/// Braid structure and invariants of a link given by words.
pub fn word_info(link: &LinkWords) -> Result<Value, CliError> {
    let braid = LorenzBraid::from_words(link);
    let rec = invariants::record(&braid);
    let meta = braid.strand_meta();
    let over = meta.iter().filter(|m| m.over).count();
    let mut out = json!({
        "words": word_strings(&braid),
        "components": rec.components,
        "n": rec.strands,
        "over": over,
        "under": rec.strands - over,
        "c": rec.crossings,
        "positions": (0..braid.component_count()).map(|c| braid.rank_sequence(c)).collect::<Vec<_>>(),
        "trip": TLinkParams::from_lorenz(&braid),
        "ears": braid.ear_counts(),
        "genus": rec.genus,
        "euler_characteristic": rec.euler_characteristic,
        "braid_index": rec.braid_index,
        "c_min": rec.min_crossings,
        "torus": rec.torus,
        "unknot": rec.genus == Some(0),
    });
    if braid.is_knot() {
        let word = &link.words()[0];
        if word.is_mixed() {
            out["rademacher"] = json!(rademacher(word)?);
        }
    } else {
        out["linking"] = json!(braid.linking_matrix()?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Braid,
    Tlink,
    Word,
}

pub fn convert(subject: &Subject, to: Target) -> Result<Value, CliError> {
    let braid = subject.braid()?;
    Ok(match to {
        Target::Braid => {
            let mut v = json!(braid.to_json());
            v["generators"] = json!(braid
                .braid_generators()
                .iter()
                .map(|c| c.generator)
                .collect::<Vec<_>>());
            v
        }
        Target::Tlink => {
            let params = match subject {
                Subject::Params(p) => p.clone(),
                Subject::Words(_) => TLinkParams::from_lorenz(&braid),
            };
            json!({
                "tlink": params,
                "strands": params.strands(),
                "t_braid": params.t_braid_word(),
                "normalized": params.is_normalized(),
                "split_circles": split_circles(&braid),
            })
        }
        Target::Word => json!({ "words": word_strings(&braid) }),
    })
}

/// Jones polynomial of words (state sum on the Lorenz braid), of `p,q`
/// (closed torus formula), or of T-link parameters (state sum on the T-braid).
pub fn jones(inputs: &[String], limit: usize) -> Result<Value, CliError> {
    let subject = Subject::parse(inputs)?;
    let (method, poly) = match &subject {
        Subject::Words(link) => {
            let braid = LorenzBraid::from_words(link);
            ("lorenz-braid state sum", jones_of_lorenz(&braid, limit)?)
        }
        Subject::Params(params) => match params.pairs() {
            &[(p, q)]
                if inputs[0].trim().matches(',').count() == 1
                    && !inputs[0].contains(['[', ';']) =>
            {
                ("torus formula", jones_torus(p as u64, q as u64)?)
            }
            _ => (
                "t-braid state sum",
                jones_of_braid_with_limit(&params.t_braid_word(), params.strands(), limit)?,
            ),
        },
    };
    Ok(json!({ "input": inputs.join(" "), "method": method, "jones": jones_value(&poly) }))
}

pub fn parse_matrix(s: &str) -> Result<Mat2Z, CliError> {
    let s = s.trim();
    let bad = || CliError::BadInput(format!("{s:?} is not a matrix (a,b,c,d or [[a,b],[c,d]])"));
    if s.starts_with('[') {
        return serde_json::from_str(s).map_err(|e| CliError::BadInput(e.to_string()));
    }
    let entries: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match entries[..] {
        [a, b, c, d] => Ok(Mat2Z::new(a, b, c, d)?),
        _ => Err(bad()),
    }
}

pub fn modular_encode(word: &CyclicWord) -> Result<Value, CliError> {
    let m = matrix_of_word(word)?;
    Ok(json!({ "word": word, "matrix": m, "trace": m.trace() }))
}

pub fn modular_decode(m: &Mat2Z) -> Result<Value, CliError> {
    let word = word_of_matrix(m)?;
    Ok(json!({ "matrix": m, "word": word }))
}

pub fn modular_rademacher(word: &CyclicWord) -> Result<Value, CliError> {
    let m = matrix_of_word(word)?;
    let rep = if m.c < 0 { m.neg() } else { m };
    let (num, den) = dedekind_sum(rep.d, rep.c);
    Ok(json!({
        "word": word,
        "matrix": m,
        "rademacher": rademacher(word)?,
        "dedekind_oracle": rademacher_psi(&m)?,
        "dedekind_sum": format!("{num}/{den}"),
    }))
}

pub fn parse_state(s: &str) -> Result<State, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::BadInput(format!("{s:?} is not x,y,z")))?;
    <[f64; 3]>::try_from(parts).map_err(|_| CliError::BadInput(format!("{s:?} is not x,y,z")))
}

pub fn flow_itinerary(
    params: &FlowParams,
    seed: State,
    dt: f64,
    steps: usize,
    skip: f64,
) -> Result<(Value, Trajectory), CliError> {
    let traj = params.integrate(seed, dt, steps)?;
    let letters = itinerary(&traj, skip)?;
    let report = json!({
        "seed": seed,
        "dt": dt,
        "steps": steps,
        "skip": skip,
        "events": letters.len(),
        "itinerary": letters_to_string(&letters),
    });
    Ok((report, traj))
}
