//! Lorenz braids: the permutation braid obtained by cutting the template open
//! along the branch line.
//!
//! Strand positions are zero-based in this API. Serialized braids and
//! human-facing reports use one-based positions.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{cmp_periodic, CyclicWord, Letter, LinkWords};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("not a Lorenz braid: {0}")]
    NotLorenz(String),
    #[error("generator sigma_{generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: usize, strands: usize },
    #[error("components {a} and {b} share an odd number ({count}) of crossings")]
    OddInterCrossings { a: usize, b: usize, count: usize },
    #[error("serialized braid disagrees with its permutation: {0}")]
    Inconsistent(String),
}

/// Which ear a strand leaves from and which it enters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EarType {
    LL,
    LR,
    RL,
    RR,
}

impl EarType {
    fn from_letters(first: Letter, second: Letter) -> Self {
        match (first, second) {
            (Letter::L, Letter::L) => EarType::LL,
            (Letter::L, Letter::R) => EarType::LR,
            (Letter::R, Letter::L) => EarType::RL,
            (Letter::R, Letter::R) => EarType::RR,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EarType::LL => "LL",
            EarType::LR => "LR",
            EarType::RL => "RL",
            EarType::RR => "RR",
        }
    }

    pub fn swap(self) -> Self {
        match self {
            EarType::LL => EarType::RR,
            EarType::LR => EarType::RL,
            EarType::RL => EarType::LR,
            EarType::RR => EarType::LL,
        }
    }
}

impl fmt::Display for EarType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EarCounts {
    pub ll: usize,
    pub lr: usize,
    pub rl: usize,
    pub rr: usize,
}

impl EarCounts {
    pub fn total(&self) -> usize {
        self.ll + self.lr + self.rl + self.rr
    }

    /// Counts seen through the half-turn symmetry of the template.
    pub fn swapped(&self) -> Self {
        Self {
            ll: self.rr,
            lr: self.rl,
            rl: self.lr,
            rr: self.ll,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrandMeta {
    pub component: usize,
    pub ear: EarType,
    /// Strand leaves from the left ear (and so passes over every strand it meets).
    pub over: bool,
    pub displacement: i64,
}

/// The trip-number parametrization of a Lorenz braid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandProfile {
    pub counts: EarCounts,
    /// `(p, q)`: `q` overcrossing strands of displacement `p`, `p` strictly increasing.
    pub trip: Vec<(usize, usize)>,
    pub crossings: usize,
}

/// One crossing of a positive braid word.
///
/// `generator` is the one-based index `i` of `σ_i`; `over` and `under` are
/// strand ids (zero-based start positions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub generator: usize,
    pub over: usize,
    pub under: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LorenzBraid {
    targets: Vec<usize>,
    left: usize,
    components: Vec<usize>,
    component_count: usize,
}

impl LorenzBraid {
    /// Every rotation of every word is a strand, placed
    /// at its rank in the order of infinite periodic extensions; the strand of
    /// rotation `r` ends at the rank of `r` shifted by one letter.
    pub fn from_words(link: &LinkWords) -> Self {
        struct Rot<'a> {
            letters: Vec<Letter>,
            word: &'a CyclicWord,
            component: usize,
            offset: usize,
        }
        let mut rots: Vec<Rot> = link
            .words()
            .iter()
            .enumerate()
            .flat_map(|(component, word)| {
                (0..word.len()).map(move |offset| Rot {
                    letters: word.rotation(offset),
                    word,
                    component,
                    offset,
                })
            })
            .collect();
        rots.sort_by(|a, b| cmp_periodic(&a.letters, &b.letters));

        let mut rank: Vec<Vec<usize>> = link.words().iter().map(|w| vec![0; w.len()]).collect();
        for (pos, r) in rots.iter().enumerate() {
            rank[r.component][r.offset] = pos;
        }
        let n = rots.len();
        let mut targets = vec![0; n];
        let mut components = vec![0; n];
        for (pos, r) in rots.iter().enumerate() {
            let next = (r.offset + 1) % r.word.len();
            targets[pos] = rank[r.component][next];
            components[pos] = r.component;
        }
        let left = rots.iter().filter(|r| r.letters[0] == Letter::L).count();
        Self {
            targets,
            left,
            components,
            component_count: link.components(),
        }
    }

    /// Builds a braid from a zero-based target permutation and the size of
    /// the left (overcrossing) block, checking the Lorenz structure.
    ///
    /// Components are numbered by their smallest strand position.
    pub fn from_parts(targets: Vec<usize>, left: usize) -> Result<Self, BraidError> {
        let n = targets.len();
        if n == 0 {
            return Err(BraidError::NotLorenz("no strands".into()));
        }
        if left > n {
            return Err(BraidError::NotLorenz(format!(
                "left block {left} exceeds {n} strands"
            )));
        }
        let mut seen = vec![false; n];
        for &t in &targets {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(BraidError::NotLorenz(
                    "targets are not a permutation".into(),
                ));
            }
        }
        for (i, &t) in targets.iter().enumerate() {
            if i < left && t < i {
                return Err(BraidError::NotLorenz(format!(
                    "left strand {} moves left",
                    i + 1
                )));
            }
            if i >= left && t > i {
                return Err(BraidError::NotLorenz(format!(
                    "right strand {} moves right",
                    i + 1
                )));
            }
        }
        let increasing = |block: &[usize]| block.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&targets[..left]) || !increasing(&targets[left..]) {
            return Err(BraidError::NotLorenz(
                "a strand block is not order-preserving".into(),
            ));
        }

        let mut components = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if components[start] != usize::MAX {
                continue;
            }
            let mut i = start;
            while components[i] == usize::MAX {
                components[i] = count;
                i = targets[i];
            }
            count += 1;
        }
        Ok(Self {
            targets,
            left,
            components,
            component_count: count,
        })
    }

    pub fn strands(&self) -> usize {
        self.targets.len()
    }

    /// `|L|`: strands leaving from the left ear.
    pub fn left(&self) -> usize {
        self.left
    }

    /// `|R|`: strands leaving from the right ear.
    pub fn right(&self) -> usize {
        self.strands() - self.left
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn target(&self, strand: usize) -> usize {
        self.targets[strand]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn component(&self, strand: usize) -> usize {
        self.components[strand]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn is_knot(&self) -> bool {
        self.component_count == 1
    }

    fn letter_at(&self, pos: usize) -> Letter {
        if pos < self.left {
            Letter::L
        } else {
            Letter::R
        }
    }

    pub fn ear(&self, strand: usize) -> EarType {
        EarType::from_letters(self.letter_at(strand), self.letter_at(self.targets[strand]))
    }

    pub fn displacement(&self, strand: usize) -> i64 {
        self.targets[strand] as i64 - strand as i64
    }

    pub fn strand_meta(&self) -> Vec<StrandMeta> {
        (0..self.strands())
            .map(|i| StrandMeta {
                component: self.components[i],
                ear: self.ear(i),
                over: i < self.left,
                displacement: self.displacement(i),
            })
            .collect()
    }

    pub fn ear_counts(&self) -> EarCounts {
        let mut counts = EarCounts::default();
        for i in 0..self.strands() {
            match self.ear(i) {
                EarType::LL => counts.ll += 1,
                EarType::LR => counts.lr += 1,
                EarType::RL => counts.rl += 1,
                EarType::RR => counts.rr += 1,
            }
        }
        counts
    }

    /// Strand positions of each component, in flow order, starting from the
    /// component's smallest position (the canonical rotation of its word).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.component_count];
        for start in 0..self.strands() {
            let c = self.components[start];
            if !out[c].is_empty() {
                continue;
            }
            let mut i = start;
            loop {
                out[c].push(i);
                i = self.targets[i];
                if i == start {
                    break;
                }
            }
        }
        out
    }

    /// Reads each component's word off the closed braid.
    pub fn words(&self) -> Vec<CyclicWord> {
        self.cycles()
            .iter()
            .map(|cycle| {
                let letters: Vec<Letter> = cycle.iter().map(|&i| self.letter_at(i)).collect();
                CyclicWord::canonicalize(&letters).expect("a braid cycle visits distinct rotations")
            })
            .collect()
    }

    pub fn inversions(&self) -> usize {
        let t = &self.targets;
        (0..t.len())
            .map(|i| (i + 1..t.len()).filter(|&j| t[i] > t[j]).count())
            .sum()
    }

    pub fn strand_profile(&self) -> StrandProfile {
        let mut trip: Vec<(usize, usize)> = Vec::new();
        for i in 0..self.left {
            let d = self.displacement(i);
            if d <= 0 {
                continue;
            }
            let d = d as usize;
            match trip.last_mut() {
                Some((p, q)) if *p == d => *q += 1,
                _ => trip.push((d, 1)),
            }
        }
        let crossings = trip.iter().map(|&(p, q)| p * q).sum();
        StrandProfile {
            counts: self.ear_counts(),
            trip,
            crossings,
        }
    }

    /// A positive permutation braid word realizing the braid, each pair of
    /// strands crossing at most once.
    ///
    /// Over-strands are swept to their targets starting from the rightmost;
    /// each then passes only under-strands, so the word length is the
    /// inversion count.
    pub fn braid_generators(&self) -> Vec<Crossing> {
        let mut arrangement: Vec<usize> = (0..self.strands()).collect();
        let mut word = Vec::with_capacity(self.inversions());
        for over in (0..self.left).rev() {
            let mut pos = over;
            while pos < self.targets[over] {
                let under = arrangement[pos + 1];
                word.push(Crossing {
                    generator: pos + 1,
                    over,
                    under,
                });
                arrangement.swap(pos, pos + 1);
                pos += 1;
            }
        }
        word
    }

    /// Pairwise linking numbers of the components.
    ///
    /// All template crossings are positive, so `lk(A, B)` is half the number
    /// of crossings between `A` and `B`; it also equals the number of those
    /// crossings where `A` is on top, which is checked.
    pub fn linking_matrix(&self) -> Result<Vec<Vec<i64>>, BraidError> {
        let m = self.component_count;
        let mut total = vec![vec![0usize; m]; m];
        let mut on_top = vec![vec![0usize; m]; m];
        for x in self.braid_generators() {
            let (a, b) = (self.components[x.over], self.components[x.under]);
            if a != b {
                total[a][b] += 1;
                total[b][a] += 1;
                on_top[a][b] += 1;
            }
        }
        let mut lk = vec![vec![0i64; m]; m];
        for a in 0..m {
            for b in 0..m {
                if a == b {
                    continue;
                }
                if total[a][b] % 2 == 1 {
                    return Err(BraidError::OddInterCrossings {
                        a,
                        b,
                        count: total[a][b],
                    });
                }
                if on_top[a][b] != on_top[b][a] {
                    return Err(BraidError::Inconsistent(format!(
                        "components {a} and {b}: {} vs {} over-crossings",
                        on_top[a][b], on_top[b][a]
                    )));
                }
                lk[a][b] = (total[a][b] / 2) as i64;
            }
        }
        Ok(lk)
    }

    /// One-based positions of a component's strands in flow order.
    pub fn rank_sequence(&self, component: usize) -> Vec<usize> {
        self.cycles()[component].iter().map(|&i| i + 1).collect()
    }

    pub fn to_json(&self) -> BraidJson {
        BraidJson {
            n: self.strands(),
            targets: self.targets.iter().map(|&t| t + 1).collect(),
            components: self.components.clone(),
            types: (0..self.strands())
                .map(|i| self.ear(i).as_str().to_string())
                .collect(),
            trip: self
                .strand_profile()
                .trip
                .iter()
                .map(|&(p, q)| [p, q])
                .collect(),
        }
    }

    /// Conjugates by the half-turn of the template: position `i` becomes
    /// `n - 1 - i`, exchanging the ears.
    pub fn rotated(&self) -> Self {
        let n = self.strands();
        let mut targets = vec![0; n];
        for (i, &t) in self.targets.iter().enumerate() {
            targets[n - 1 - i] = n - 1 - t;
        }
        Self::from_parts(targets, n - self.left).expect("half-turn preserves Lorenz structure")
    }
}

/// Wire form of a braid: one-based targets, per-strand component and ear type,
/// and the trip parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidJson {
    pub n: usize,
    pub targets: Vec<usize>,
    pub components: Vec<usize>,
    pub types: Vec<String>,
    pub trip: Vec<[usize; 2]>,
}

impl TryFrom<BraidJson> for LorenzBraid {
    type Error = BraidError;

    fn try_from(json: BraidJson) -> Result<Self, Self::Error> {
        if json.targets.len() != json.n || json.types.len() != json.n {
            return Err(BraidError::Inconsistent(
                "field lengths disagree with n".into(),
            ));
        }
        let targets = json
            .targets
            .iter()
            .map(|&t| {
                t.checked_sub(1)
                    .ok_or_else(|| BraidError::Inconsistent("zero target".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let left = json.types.iter().filter(|t| t.starts_with('L')).count();
        let braid = Self::from_parts(targets, left)?;
        let expected = braid.to_json();
        if expected.types != json.types || expected.trip != json.trip {
            return Err(BraidError::Inconsistent(
                "ear types or trip do not match targets".into(),
            ));
        }
        // Component labels may be any relabeling of the cycles.
        let same_partition = (0..json.n).all(|i| {
            (0..json.n).all(|j| {
                (json.components[i] == json.components[j])
                    == (braid.components[i] == braid.components[j])
            })
        });
        if json.components.len() != json.n || !same_partition {
            return Err(BraidError::Inconsistent(
                "components do not match cycles".into(),
            ));
        }
        Ok(braid)
    }
}

/// Crossing records of an arbitrary positive braid word on `strands` strands.
///
/// At `σ_i` the strand in position `i` (one-based) passes over the strand in
/// position `i + 1`.
pub fn crossings_of_word(
    generators: &[usize],
    strands: usize,
) -> Result<Vec<Crossing>, BraidError> {
    let mut arrangement: Vec<usize> = (0..strands).collect();
    generators
        .iter()
        .map(|&g| {
            if g == 0 || g >= strands {
                return Err(BraidError::GeneratorOutOfRange {
                    generator: g,
                    strands,
                });
            }
            let x = Crossing {
                generator: g,
                over: arrangement[g - 1],
                under: arrangement[g],
            };
            arrangement.swap(g - 1, g);
            Ok(x)
        })
        .collect()
}

/// Cycles of the permutation induced by a braid word (closure components).
pub fn closure_components(generators: &[usize], strands: usize) -> usize {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &g in generators {
        perm.swap(g - 1, g);
    }
    let mut seen = vec![false; strands];
    let mut count = 0;
    for s in 0..strands {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::enumerate;

    fn braid(words: &[&str]) -> LorenzBraid {
        LorenzBraid::from_words(&LinkWords::parse(words).unwrap())
    }

    fn one_based(b: &LorenzBraid) -> Vec<usize> {
        b.targets().iter().map(|t| t + 1).collect()
    }

    #[test]
    fn worked_example_lrlrrrlrrr() {
        let b = braid(&["LRLRRRLRRR"]);
        assert_eq!(b.strands(), 10);
        assert_eq!(b.rank_sequence(0), [1, 6, 3, 10, 8, 5, 2, 9, 7, 4]);
        assert_eq!(b.left(), 3);
        assert_eq!(b.right(), 7);
        let p = b.strand_profile();
        assert_eq!(p.trip, [(5, 1), (7, 2)]);
        assert_eq!(p.crossings, 19);
        assert_eq!(
            p.counts,
            EarCounts {
                ll: 0,
                lr: 3,
                rl: 3,
                rr: 4
            }
        );
        assert_eq!(b.braid_generators().len(), 19);
    }

    #[test]
    fn trefoil_braid() {
        let b = braid(&["LRLRL"]);
        assert_eq!(one_based(&b), [3, 4, 5, 1, 2]);
        assert_eq!(b.left(), 3);
        let p = b.strand_profile();
        assert_eq!(p.trip, [(2, 3)]);
        assert_eq!(p.crossings, 6);
        assert_eq!(
            p.counts,
            EarCounts {
                ll: 1,
                lr: 2,
                rl: 2,
                rr: 0
            }
        );
        let gens = b.braid_generators();
        assert_eq!(gens.len(), 6);
        let word: Vec<usize> = gens.iter().map(|x| x.generator).collect();
        assert_eq!(closure_components(&word, 5), 1);
    }

    #[test]
    fn degenerate_words() {
        let b = braid(&["L"]);
        assert_eq!(b.targets(), [0]);
        assert!(b.braid_generators().is_empty());
        assert_eq!(b.strand_profile().crossings, 0);
        assert!(b.strand_profile().trip.is_empty());

        let lr = braid(&["LR"]).strand_profile();
        assert_eq!(lr.trip, [(1, 1)]);
        assert_eq!(lr.crossings, 1);
        assert_eq!(
            lr.counts,
            EarCounts {
                ll: 0,
                lr: 1,
                rl: 1,
                rr: 0
            }
        );
    }

    #[test]
    fn link_of_three_words() {
        let b = braid(&["L", "R", "LR"]);
        assert_eq!(b.strands(), 4);
        // brute force: count inverted pairs across components
        let t = b.targets();
        let mut expected = vec![vec![0usize; 3]; 3];
        for i in 0..4 {
            for j in i + 1..4 {
                if t[i] > t[j] && b.component(i) != b.component(j) {
                    expected[b.component(i)][b.component(j)] += 1;
                    expected[b.component(j)][b.component(i)] += 1;
                }
            }
        }
        let lk = b.linking_matrix().unwrap();
        for a in 0..3 {
            for c in 0..3 {
                if a != c {
                    assert_eq!(lk[a][c] as usize * 2, expected[a][c]);
                }
            }
        }
        assert_eq!(lk, vec![vec![0; 3]; 3]);
    }

    #[test]
    fn linking_of_parallel_torus_link() {
        // closure of the (2,4) torus pattern: two parallel LLR orbits
        let b = LorenzBraid::from_parts(vec![2, 3, 4, 5, 0, 1], 4).unwrap();
        assert_eq!(b.component_count(), 2);
        let words: Vec<String> = b.words().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["LLR", "LLR"]);
        assert_eq!(b.linking_matrix().unwrap(), vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn knot_has_empty_linking() {
        assert_eq!(braid(&["LRLRL"]).linking_matrix().unwrap(), vec![vec![0]]);
    }

    #[test]
    fn from_parts_rejects_non_lorenz() {
        assert!(LorenzBraid::from_parts(vec![1, 0, 2], 0).is_err());
        assert!(LorenzBraid::from_parts(vec![2, 1, 0], 1).is_err());
        assert!(LorenzBraid::from_parts(vec![0, 0], 1).is_err());
        assert!(LorenzBraid::from_parts(vec![], 0).is_err());
    }

    #[test]
    fn json_wire_form() {
        let b = braid(&["LRLRL"]);
        let json = serde_json::to_value(b.to_json()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "n": 5,
                "targets": [3, 4, 5, 1, 2],
                "components": [0, 0, 0, 0, 0],
                "types": ["LL", "LR", "LR", "RL", "RL"],
                "trip": [[2, 3]],
            })
        );
        let back: BraidJson = serde_json::from_value(json).unwrap();
        assert_eq!(LorenzBraid::try_from(back).unwrap(), b);
    }

    #[test]
    fn structural_invariants_over_census() {
        for w in enumerate(12) {
            let b = LorenzBraid::from_words(&LinkWords::knot(w.clone()));
            let mixed = w.is_mixed();
            for (i, meta) in b.strand_meta().iter().enumerate() {
                let starts_with_l = i < b.left();
                assert_eq!(meta.over, starts_with_l);
                if mixed {
                    assert_eq!(starts_with_l, b.target(i) > i, "{w} strand {i}");
                    assert_eq!(!starts_with_l, b.target(i) < i, "{w} strand {i}");
                }
            }
            let p = b.strand_profile();
            assert_eq!(p.crossings, b.inversions(), "{w}");
            assert_eq!(p.crossings, b.braid_generators().len(), "{w}");
            assert_eq!(p.counts.lr, p.counts.rl, "{w}");
            assert!(p.trip.windows(2).all(|x| x[0].0 < x[1].0));
            assert_eq!(b.component_count(), 1);
            assert_eq!(b.words(), vec![w.clone()]);
        }
    }

    #[test]
    fn generator_sweep_crosses_each_pair_once() {
        for w in enumerate(9) {
            let b = LorenzBraid::from_words(&LinkWords::knot(w));
            let mut pairs: Vec<(usize, usize)> = b
                .braid_generators()
                .iter()
                .map(|x| (x.over, x.under))
                .collect();
            let len = pairs.len();
            pairs.sort();
            pairs.dedup();
            assert_eq!(pairs.len(), len);
            for (o, u) in pairs {
                assert!(o < u && b.target(o) > b.target(u));
            }
        }
    }

    #[test]
    fn word_crossings_track_strands() {
        let xs = crossings_of_word(&[1, 2, 1], 3).unwrap();
        assert_eq!(
            xs.iter().map(|x| (x.over, x.under)).collect::<Vec<_>>(),
            [(0, 1), (0, 2), (1, 2)]
        );
        assert!(matches!(
            crossings_of_word(&[3], 3),
            Err(BraidError::GeneratorOutOfRange { .. })
        ));
        assert_eq!(closure_components(&[1, 1, 1, 1], 2), 2);
        assert_eq!(closure_components(&[1, 1, 1], 2), 1);
    }
}
