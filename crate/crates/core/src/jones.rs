//! Jones polynomials: a brute-force Kauffman bracket state sum over closed
//! braid diagrams, and the closed form for torus knots.
//!
//! Every crossing here is a positive braid generator. In the bracket the
//! oriented ("vertical") smoothing of such a crossing is the A-smoothing, so
//! the closure of `σ_1` on two strands has bracket `-A^3`. With writhe `w`
//! equal to the crossing count, `V(t) = (-A^3)^(-w) <D>` at `A = t^(-1/4)`,
//! which gives the positive trefoil `t + t^3 - t^4`.

use rayon::prelude::*;
use thiserror::Error;

use crate::braid::{BraidError, LorenzBraid};
use crate::poly::LaurentPoly;

/// Largest crossing count the state sum accepts by default (`2^20` states).
pub const DEFAULT_CROSSING_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JonesError {
    #[error("{crossings} crossings exceed the state-sum limit of {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("({p},{q}) is not a coprime pair of positive integers")]
    NotCoprime { p: u64, q: u64 },
    #[error("torus numerator for ({p},{q}) leaves remainder {remainder} on division by 1 - t^2")]
    DivisionRemainder { p: u64, q: u64, remainder: String },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Closed-braid diagram prepared for the state sum.
struct Diagram {
    crossings: usize,
    /// Arc id for each of the four ports of each crossing:
    /// top-left, top-right, bottom-left, bottom-right.
    ports: Vec<[u8; 4]>,
    arcs: usize,
    /// Strand positions untouched by any crossing close up into free circles.
    free_loops: usize,
}

impl Diagram {
    fn new(generators: &[usize], strands: usize) -> Result<Self, BraidError> {
        for &g in generators {
            if g == 0 || g >= strands {
                return Err(BraidError::GeneratorOutOfRange {
                    generator: g,
                    strands,
                });
            }
        }
        let c = generators.len();
        // port index 4*l + k, k as in `ports`
        let mut visits: Vec<Vec<(usize, bool)>> = vec![Vec::new(); strands];
        for (l, &g) in generators.iter().enumerate() {
            visits[g - 1].push((l, false));
            visits[g].push((l, true));
        }
        let mut ports = vec![[u8::MAX; 4]; c];
        let mut arcs = 0usize;
        let mut free_loops = 0;
        for list in &visits {
            if list.is_empty() {
                free_loops += 1;
                continue;
            }
            // arc from the bottom of each visit down to the top of the next (cyclically)
            for (idx, &(l, right)) in list.iter().enumerate() {
                let (next, next_right) = list[(idx + 1) % list.len()];
                let bottom = if right { 3 } else { 2 };
                let top = if next_right { 1 } else { 0 };
                ports[l][bottom] = arcs as u8;
                ports[next][top] = arcs as u8;
                arcs += 1;
            }
        }
        debug_assert_eq!(arcs, 2 * c);
        Ok(Self {
            crossings: c,
            ports,
            arcs,
            free_loops,
        })
    }

    /// Loops in the smoothing where bit `l` of `state` set means crossing `l`
    /// takes the A (vertical) smoothing.
    fn loops(&self, state: u64, parent: &mut [u8]) -> usize {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        fn find(parent: &mut [u8], mut x: u8) -> u8 {
            while parent[x as usize] != x {
                let up = parent[parent[x as usize] as usize];
                parent[x as usize] = up;
                x = up;
            }
            x
        }
        let mut merges = 0;
        let mut join = |parent: &mut [u8], a: u8, b: u8| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra as usize] = rb;
                merges += 1;
            }
        };
        for (l, p) in self.ports.iter().enumerate() {
            if state >> l & 1 == 1 {
                join(parent, p[0], p[2]);
                join(parent, p[1], p[3]);
            } else {
                join(parent, p[0], p[1]);
                join(parent, p[2], p[3]);
            }
        }
        self.arcs - merges + self.free_loops
    }

    /// `histogram[a][loops]`: number of states with `a` A-smoothings and
    /// `loops` circles.
    fn histogram(&self) -> Vec<Vec<u64>> {
        let c = self.crossings;
        let max_loops = self.arcs + self.free_loops + 1;
        let total: u64 = 1 << c;
        let chunks: u64 = total.min(256);
        let chunk_len = total / chunks;
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut hist = vec![vec![0u64; max_loops + 1]; c + 1];
                let mut parent = vec![0u8; self.arcs.max(1)];
                for state in chunk * chunk_len..(chunk + 1) * chunk_len {
                    let loops = self.loops(state, &mut parent);
                    hist[state.count_ones() as usize][loops] += 1;
                }
                hist
            })
            .reduce(
                || vec![vec![0u64; max_loops + 1]; c + 1],
                |mut acc, h| {
                    for (row, hrow) in acc.iter_mut().zip(h) {
                        for (x, y) in row.iter_mut().zip(hrow) {
                            *x += y;
                        }
                    }
                    acc
                },
            )
    }
}

/// Kauffman bracket `<D>` of the closure of a positive braid word, as a
/// polynomial in `A` (integer powers `A^k` stored at quarter key `4k`).
pub fn kauffman_bracket(generators: &[usize], strands: usize) -> Result<LaurentPoly, JonesError> {
    kauffman_bracket_with_limit(generators, strands, DEFAULT_CROSSING_LIMIT)
}

pub fn kauffman_bracket_with_limit(
    generators: &[usize],
    strands: usize,
    limit: usize,
) -> Result<LaurentPoly, JonesError> {
    let c = generators.len();
    if c > limit || c > 63 {
        return Err(JonesError::TooManyCrossings {
            crossings: c,
            limit,
        });
    }
    let diagram = Diagram::new(generators, strands)?;
    let hist = diagram.histogram();

    // delta = -A^2 - A^-2
    let delta = &LaurentPoly::term(-1, 2) + &LaurentPoly::term(-1, -2);
    let max_loops = hist.first().map_or(1, Vec::len);
    let delta_pows: Vec<LaurentPoly> = (0..max_loops).map(|k| delta.pow(k as u32)).collect();

    let mut bracket = LaurentPoly::zero();
    for (a, row) in hist.iter().enumerate() {
        let a_power = 2 * a as i64 - c as i64;
        for (loops, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let term = &LaurentPoly::term(count as i64, a_power) * &delta_pows[loops - 1];
            bracket += &term;
        }
    }
    Ok(bracket)
}

/// Jones polynomial in `t` of the closure of a positive braid word.
pub fn jones_of_braid(generators: &[usize], strands: usize) -> Result<LaurentPoly, JonesError> {
    jones_of_braid_with_limit(generators, strands, DEFAULT_CROSSING_LIMIT)
}

pub fn jones_of_braid_with_limit(
    generators: &[usize],
    strands: usize,
    limit: usize,
) -> Result<LaurentPoly, JonesError> {
    let bracket = kauffman_bracket_with_limit(generators, strands, limit)?;
    let writhe = generators.len() as i64;
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let normalized = &LaurentPoly::term(sign, -3 * writhe) * &bracket;
    // A^k = t^(-k/4): quarter key 4k in A becomes quarter key -k in t
    Ok(normalized.map_exponents(|e| -e / 4))
}

/// Jones polynomial of the closure of a Lorenz braid.
pub fn jones_of_lorenz(braid: &LorenzBraid, limit: usize) -> Result<LaurentPoly, JonesError> {
    let word: Vec<usize> = braid
        .braid_generators()
        .iter()
        .map(|x| x.generator)
        .collect();
    jones_of_braid_with_limit(&word, braid.strands(), limit)
}

/// Which numerator to divide by `1 - t^2` in the torus-knot formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusNumerator {
    /// `1 - t^(p+1) - t^(q+1) + t^(p+q)`.
    Standard,
    /// `1 - t^(p-1) - t^(q-1) - t^(p+q)`, a variant with shifted exponents and
    /// a flipped last sign that circulates in print. It is not divisible by
    /// `1 - t^2` and is kept to exercise the remainder guard.
    ShiftedExponents,
}

impl TorusNumerator {
    fn poly(self, p: i64, q: i64) -> LaurentPoly {
        match self {
            TorusNumerator::Standard => {
                LaurentPoly::from_powers([(0, 1), (p + 1, -1), (q + 1, -1), (p + q, 1)])
            }
            TorusNumerator::ShiftedExponents => {
                LaurentPoly::from_powers([(0, 1), (p - 1, -1), (q - 1, -1), (p + q, -1)])
            }
        }
    }
}

/// `V(T(p,q)) = t^((p-1)(q-1)/2) (1 - t^(p+1) - t^(q+1) + t^(p+q)) / (1 - t^2)`.
pub fn jones_torus(p: u64, q: u64) -> Result<LaurentPoly, JonesError> {
    jones_torus_with(p, q, TorusNumerator::Standard)
}

pub fn jones_torus_with(
    p: u64,
    q: u64,
    numerator: TorusNumerator,
) -> Result<LaurentPoly, JonesError> {
    if p == 0 || q == 0 || num_integer::gcd(p, q) != 1 {
        return Err(JonesError::NotCoprime { p, q });
    }
    let (pi, qi) = (p as i64, q as i64);
    let denominator = LaurentPoly::from_powers([(0, 1), (2, -1)]);
    let (quotient, remainder) = numerator
        .poly(pi, qi)
        .div_rem(&denominator)
        .expect("1 - t^2 has a unit leading coefficient");
    if !remainder.is_zero() {
        return Err(JonesError::DivisionRemainder {
            p,
            q,
            remainder: remainder.to_string(),
        });
    }
    let shift = (pi - 1) * (qi - 1) / 2;
    Ok(&LaurentPoly::term(1, shift) * &quotient)
}
