//! Permutations in one-line notation, classical pattern containment, avoider
//! enumeration and the descent-type statistics.
//!
//! Positions are 1-based whenever they are reported to callers (descent sets,
//! weak excedances), matching the usual conventions for permutation statistics.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n` written as a word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Builds a permutation, checking that `letters` is a rearrangement of `1..=n`.
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        let n = letters.len();
        let mut seen = vec![false; n + 1];
        for &l in &letters {
            let i = l as usize;
            if i == 0 || i > n || seen[i] {
                return Err(Error::invalid(format!(
                    "{letters:?} is not a permutation of 1..={n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation(letters))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    /// Letter at the 1-based position `k`.
    pub fn at(&self, k: usize) -> u32 {
        self.0[k - 1]
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let m = self.0.len() as u32 + 1;
        Permutation(self.0.iter().map(|&l| m - l).collect())
    }

    pub fn reverse_complement(&self) -> Self {
        let m = self.0.len() as u32 + 1;
        Permutation(self.0.iter().rev().map(|&l| m - l).collect())
    }

    pub fn symmetry(&self, kind: Symmetry) -> Self {
        match kind {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::ReverseComplement => self.reverse_complement(),
        }
    }
}

/// Digit string for `n <= 9`, comma-separated integers otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_word(s)?)
    }
}

/// Parses a word of positive integers, either as a digit string or as a
/// comma-separated list.
pub fn parse_word(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::invalid(format!("bad letter {p:?} in {s:?}")))
            })
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::invalid(format!("bad letter {c:?} in {s:?}")))
            })
            .collect()
    }
}

/// Replaces the smallest letter by 1, the next smallest by 2, and so on.
pub fn standardize(word: &[u32]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::invalid(format!("{word:?} has repeated letters")));
    }
    let mut out = vec![0u32; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    Ok(Permutation(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Reverse,
    Complement,
    ReverseComplement,
}

/// True iff some subsequence of `word` is order-isomorphic to `pattern`.
pub fn contains(word: &Permutation, pattern: &Permutation) -> bool {
    find_occurrence(&word.0, &pattern.0, None)
}

/// Backtracking subsequence search. Positions are chosen left to right and
/// each new letter is compared against every letter already chosen, so a
/// partial choice is abandoned as soon as its relative order disagrees with
/// the pattern. `forced = Some((j, p))` pins pattern index `j` to word index `p`.
fn find_occurrence(word: &[u32], pattern: &[u32], forced: Option<(usize, usize)>) -> bool {
    let k = pattern.len();
    if k == 0 {
        return true;
    }
    if k > word.len() {
        return false;
    }
    let mut chosen = Vec::with_capacity(k);
    search(word, pattern, forced, 0, &mut chosen)
}

fn search(
    word: &[u32],
    pattern: &[u32],
    forced: Option<(usize, usize)>,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let j = chosen.len();
    let k = pattern.len();
    if j == k {
        return true;
    }
    let remaining = k - j;
    if start + remaining > word.len() {
        return false;
    }
    let (lo, hi) = match forced {
        Some((fj, fp)) if fj == j => {
            if fp < start {
                return false;
            }
            (fp, fp + 1)
        }
        // Leave room for the forced position and everything after it.
        Some((fj, fp)) if fj > j => (start, fp.saturating_sub(fj - j) + 1),
        _ => (start, word.len() - remaining + 1),
    };
    for p in lo..hi.min(word.len()) {
        let ok = chosen.iter().enumerate().all(|(i, &q)| {
            (word[q] < word[p]) == (pattern[i] < pattern[j])
        });
        if ok {
            chosen.push(p);
            if search(word, pattern, forced, p + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// A set of classical patterns, kept sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    pub fn new(mut patterns: Vec<Permutation>) -> Self {
        patterns.sort();
        patterns.dedup();
        PatternSet { patterns }
    }

    pub fn empty() -> Self {
        PatternSet::default()
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn reverse_complement(&self) -> Self {
        PatternSet::new(self.patterns.iter().map(|p| p.reverse_complement()).collect())
    }

    /// The lexicographically smaller of the spellings of `self` and its
    /// reverse-complement, so that `Π` and `Π^rc` share an id.
    pub fn canonical_id(&self) -> String {
        let a = self.to_string();
        let b = self.reverse_complement().to_string();
        a.min(b)
    }

    pub fn avoided_by(&self, perm: &Permutation) -> bool {
        self.patterns.iter().all(|p| !contains(perm, p))
    }

    /// First pattern of the set that `perm` contains.
    pub fn first_contained(&self, perm: &Permutation) -> Option<&Permutation> {
        self.patterns.iter().find(|p| contains(perm, p))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    /// Comma-separated patterns; the empty string is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PatternSet::empty());
        }
        let pats = s
            .split(',')
            .map(|p| p.trim().parse::<Permutation>())
            .collect::<Result<Vec<_>>>()?;
        if pats.iter().any(Permutation::is_empty) {
            return Err(Error::invalid("empty pattern in pattern set"));
        }
        Ok(PatternSet::new(pats))
    }
}

/// `S_n(Π)` in lexicographic order.
///
/// Pattern classes are closed under deleting the largest letter, so each
/// avoider of length `n` arises from an avoider of length `n - 1` by inserting
/// `n`. Candidates are filtered by searching only for occurrences that use the
/// new letter.
pub fn enumerate_avoiders(n: usize, pats: &PatternSet) -> Vec<Permutation> {
    let mut level: Vec<Vec<u32>> = vec![Vec::new()];
    for m in 1..=n {
        let big = m as u32;
        level = level
            .par_iter()
            .flat_map_iter(|prev| {
                (0..=prev.len()).filter_map(move |p| {
                    let mut w = Vec::with_capacity(prev.len() + 1);
                    w.extend_from_slice(&prev[..p]);
                    w.push(big);
                    w.extend_from_slice(&prev[p..]);
                    let hit = pats.patterns.iter().any(|pat| {
                        let top = pat.0.iter().position(|&l| l as usize == pat.len()).unwrap();
                        find_occurrence(&w, &pat.0, Some((top, p)))
                    });
                    (!hit).then_some(w)
                })
            })
            .collect();
    }
    level.par_sort_unstable();
    level.into_iter().map(Permutation).collect()
}

/// Statistics that count positions of a permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StatName {
    Des,
    DesR(u32),
    Bdes,
    Sdes,
    Lddes,
    Pk,
    Rbdes,
    Basc,
    Lbasc,
    Hibasc,
    Lobasc,
}

impl StatName {
    pub const ALL_FIXED: [StatName; 10] = [
        StatName::Des,
        StatName::Bdes,
        StatName::Sdes,
        StatName::Lddes,
        StatName::Pk,
        StatName::Rbdes,
        StatName::Basc,
        StatName::Lbasc,
        StatName::Hibasc,
        StatName::Lobasc,
    ];

    /// `des_r(0)` is `des` and `des_r(1)` is `bdes`.
    pub fn normalized(self) -> StatName {
        match self {
            StatName::DesR(0) => StatName::Des,
            StatName::DesR(1) => StatName::Bdes,
            s => s,
        }
    }
}

impl fmt::Display for StatName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatName::Des => f.write_str("des"),
            StatName::DesR(r) => write!(f, "des_r({r})"),
            StatName::Bdes => f.write_str("bdes"),
            StatName::Sdes => f.write_str("sdes"),
            StatName::Lddes => f.write_str("lddes"),
            StatName::Pk => f.write_str("pk"),
            StatName::Rbdes => f.write_str("rbdes"),
            StatName::Basc => f.write_str("basc"),
            StatName::Lbasc => f.write_str("lbasc"),
            StatName::Hibasc => f.write_str("hibasc"),
            StatName::Lobasc => f.write_str("lobasc"),
        }
    }
}

impl FromStr for StatName {
    type Err = Error;

    /// Accepts the plain names plus `des_r(r)`, `des_r=r` and `des_r` + digits.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let fixed = match s {
            "des" => Some(StatName::Des),
            "bdes" => Some(StatName::Bdes),
            "sdes" => Some(StatName::Sdes),
            "lddes" => Some(StatName::Lddes),
            "pk" => Some(StatName::Pk),
            "rbdes" => Some(StatName::Rbdes),
            "basc" => Some(StatName::Basc),
            "lbasc" => Some(StatName::Lbasc),
            "hibasc" => Some(StatName::Hibasc),
            "lobasc" => Some(StatName::Lobasc),
            _ => None,
        };
        if let Some(st) = fixed {
            return Ok(st);
        }
        if let Some(rest) = s.strip_prefix("des_r").or_else(|| s.strip_prefix("des_")) {
            let digits = rest.trim_start_matches(['(', '=']).trim_end_matches(')');
            if let Ok(r) = digits.parse::<u32>() {
                return Ok(StatName::DesR(r));
            }
        }
        Err(Error::invalid(format!("unknown statistic {s:?}")))
    }
}

/// Number of positions `k` with `w[k] > w[k+1] + r` (0-based slice).
fn count_r_descents(w: &[u32], r: u32) -> u64 {
    w.windows(2).filter(|p| p[0] > p[1] + r).count() as u64
}

fn is_big_ascent(a: u32, b: u32) -> bool {
    a + 1 < b
}

pub fn statistic(perm: &Permutation, stat: StatName) -> u64 {
    let w = &perm.0;
    let n = w.len();
    match stat.normalized() {
        StatName::Des => count_r_descents(w, 0),
        StatName::Bdes => count_r_descents(w, 1),
        StatName::DesR(r) => count_r_descents(w, r),
        StatName::Sdes => w.windows(2).filter(|p| p[0] == p[1] + 1).count() as u64,
        StatName::Pk => w.windows(3).filter(|p| p[0] < p[1] && p[1] > p[2]).count() as u64,
        StatName::Lddes => {
            let first = (n >= 2 && w[0] > w[1]) as u64;
            first + w.windows(3).filter(|p| p[0] > p[1] && p[1] > p[2]).count() as u64
        }
        StatName::Rbdes => {
            count_r_descents(w, 1) + w.last().map_or(0, |&l| (l > 1) as u64)
        }
        StatName::Basc => w.windows(2).filter(|p| is_big_ascent(p[0], p[1])).count() as u64,
        StatName::Lbasc => {
            let lead = w.first().map_or(0, |&l| (l > 1) as u64);
            lead + w.windows(2).filter(|p| is_big_ascent(p[0], p[1])).count() as u64
        }
        // k is a big ascent and k+1 is (resp. is not) a weak excedance.
        StatName::Hibasc => (0..n.saturating_sub(1))
            .filter(|&i| is_big_ascent(w[i], w[i + 1]) && w[i + 1] as usize >= i + 2)
            .count() as u64,
        StatName::Lobasc => (0..n.saturating_sub(1))
            .filter(|&i| is_big_ascent(w[i], w[i + 1]) && (w[i + 1] as usize) < i + 2)
            .count() as u64,
    }
}

/// Set-valued statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetStat {
    /// Positions of `r`-descents.
    DesR(u32),
    /// Positions of big descents.
    Bdes,
    /// Letters that are right-to-left maxima.
    RLmax,
    /// Letters that are left-to-right maxima.
    LRmax,
    /// Positions `k` with `π_k >= k`.
    WeakExcedances,
}

pub fn statistic_set(perm: &Permutation, which: SetStat) -> BTreeSet<u32> {
    let w = &perm.0;
    match which {
        SetStat::DesR(r) => r_descent_set(w, r),
        SetStat::Bdes => r_descent_set(w, 1),
        SetStat::RLmax => {
            let mut out = BTreeSet::new();
            let mut best = 0;
            for &l in w.iter().rev() {
                if l > best {
                    out.insert(l);
                    best = l;
                }
            }
            out
        }
        SetStat::LRmax => {
            let mut out = BTreeSet::new();
            let mut best = 0;
            for &l in w {
                if l > best {
                    out.insert(l);
                    best = l;
                }
            }
            out
        }
        SetStat::WeakExcedances => (1..=w.len() as u32)
            .filter(|&k| w[k as usize - 1] >= k)
            .collect(),
    }
}

fn r_descent_set(w: &[u32], r: u32) -> BTreeSet<u32> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| w[i] > w[i + 1] + r)
        .map(|i| i as u32 + 1)
        .collect()
}

/// Enumeration limits. The defaults are deliberately small enough that a
/// distribution table finishes in seconds on a laptop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Guards {
    /// Largest `n` for which all of `S_n` may be enumerated.
    pub max_n_unrestricted: usize,
    /// Largest `n` for enumerating `S_n(Π)` with `Π` nonempty.
    pub max_n_restricted: usize,
    /// Largest weight for quasisymmetric sums and Schur expansions.
    pub max_n_qsym: usize,
    /// Largest truncation order for series expansion.
    pub max_order: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_n_unrestricted: 11,
            max_n_restricted: 14,
            max_n_qsym: 8,
            max_order: 40,
        }
    }
}

impl Guards {
    pub fn check(&self, n: usize, pats: &PatternSet) -> Result<()> {
        let (guard, limit) = if pats.is_empty() {
            ("max_n_unrestricted", self.max_n_unrestricted)
        } else {
            ("max_n_restricted", self.max_n_restricted)
        };
        self::limit(guard, n, limit)
    }

    pub fn check_qsym(&self, n: usize, pats: &PatternSet) -> Result<()> {
        self.check(n, pats)?;
        limit("max_n_qsym", n, self.max_n_qsym)
    }

    pub fn check_order(&self, order: usize) -> Result<()> {
        limit("max_order", order, self.max_order)
    }
}

fn limit(guard: &'static str, requested: usize, limit: usize) -> Result<()> {
    if requested > limit {
        return Err(Error::Resource {
            guard,
            requested,
            limit,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub n: usize,
    pub stat: StatName,
    pub pattern_set: PatternSet,
    /// `counts[k]` is the number of avoiders with statistic value `k`, for `k = 0..=n`.
    pub counts: Vec<u64>,
}

impl DistributionTable {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Counts with trailing zeros removed (at least one entry kept).
    pub fn trimmed(&self) -> &[u64] {
        let end = self.counts.iter().rposition(|&c| c != 0).map_or(1, |i| i + 1);
        &self.counts[..end.min(self.counts.len())]
    }
}

pub fn distribution_table(n: usize, pats: &PatternSet, stat: StatName) -> Result<DistributionTable> {
    distribution_table_with(n, pats, stat, &Guards::default())
}

pub fn distribution_table_with(
    n: usize,
    pats: &PatternSet,
    stat: StatName,
    guards: &Guards,
) -> Result<DistributionTable> {
    guards.check(n, pats)?;
    let avoiders = enumerate_avoiders(n, pats);
    Ok(distribution_of(n, pats, stat, &avoiders))
}

/// Tabulates `stat` over an already enumerated avoider list.
pub fn distribution_of(
    n: usize,
    pats: &PatternSet,
    stat: StatName,
    avoiders: &[Permutation],
) -> DistributionTable {
    let counts = avoiders
        .par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, p| {
                acc[statistic(p, stat) as usize] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    DistributionTable {
        n,
        stat,
        pattern_set: pats.clone(),
        counts,
    }
}

/// `table[a][b]` counts avoiders with `first = a` and `second = b`.
pub fn joint_distribution(
    avoiders: &[Permutation],
    n: usize,
    first: StatName,
    second: StatName,
) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; n + 1]; n + 1];
    for p in avoiders {
        table[statistic(p, first) as usize][statistic(p, second) as usize] += 1;
    }
    table
}

/// All pattern sets made of one or two patterns of length 3.
pub fn length3_pattern_sets(size: usize) -> Vec<PatternSet> {
    let s3: Vec<Permutation> = ["123", "132", "213", "231", "312", "321"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    match size {
        1 => s3.into_iter().map(|p| PatternSet::new(vec![p])).collect(),
        2 => {
            let mut out = Vec::new();
            for i in 0..s3.len() {
                for j in i + 1..s3.len() {
                    out.push(PatternSet::new(vec![s3[i].clone(), s3[j].clone()]));
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn ps(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    #[test]
    fn standardization() {
        assert_eq!(standardize(&[5, 7, 1, 8]).unwrap(), p("2314"));
        assert_eq!(standardize(&[1, 2, 3]).unwrap(), p("123"));
        assert_eq!(standardize(&[9, 7, 5]).unwrap(), p("321"));
        assert!(matches!(standardize(&[3, 1, 3]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn symmetries() {
        let pi = p("1425736");
        assert_eq!(pi.symmetry(Symmetry::Reverse), p("6375241"));
        assert_eq!(pi.symmetry(Symmetry::Complement), p("7463152"));
        assert_eq!(pi.symmetry(Symmetry::ReverseComplement), p("2513647"));
        assert_eq!(pi.reverse().complement(), pi.complement().reverse());
    }

    #[test]
    fn containment() {
        assert!(contains(&p("1523764"), &p("213")));
        assert!(!contains(&p("7612543"), &p("213")));
        assert!(!contains(&p("12"), &p("123")));
        assert!(contains(&p("2413"), &p("2413")));
        assert!(!contains(&p("2413"), &p("1234")));
    }

    #[test]
    fn containment_matches_brute_force() {
        // every subsequence of length 3, standardized
        for pi in enumerate_avoiders(6, &PatternSet::empty()) {
            let w = pi.letters();
            for sigma in ["123", "132", "213", "231", "312", "321"] {
                let s = p(sigma);
                let mut brute = false;
                for a in 0..w.len() {
                    for b in a + 1..w.len() {
                        for c in b + 1..w.len() {
                            brute |= standardize(&[w[a], w[b], w[c]]).unwrap() == s;
                        }
                    }
                }
                assert_eq!(contains(&pi, &s), brute, "{pi} vs {sigma}");
            }
        }
    }

    #[test]
    fn avoider_counts() {
        assert_eq!(enumerate_avoiders(3, &ps("123")).len(), 5);
        assert!(enumerate_avoiders(5, &ps("123,321")).is_empty());
        assert_eq!(enumerate_avoiders(4, &ps("231,312")).len(), 8);
        assert_eq!(enumerate_avoiders(0, &ps("123")), vec![Permutation::empty()]);
        assert_eq!(enumerate_avoiders(6, &PatternSet::empty()).len(), 720);
    }

    #[test]
    fn avoiders_are_sorted_and_filtered() {
        let pats = ps("1324");
        let got = enumerate_avoiders(6, &pats);
        let want: Vec<_> = enumerate_avoiders(6, &PatternSet::empty())
            .into_iter()
            .filter(|q| pats.avoided_by(q))
            .collect();
        assert_eq!(got, want);
        assert!(got.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn named_statistics() {
        let pi = p("7421365");
        assert_eq!(statistic(&pi, StatName::DesR(0)), 4);
        assert_eq!(statistic(&pi, StatName::DesR(1)), 2);
        assert_eq!(statistic(&pi, StatName::DesR(2)), 1);
        let pi = p("214863975");
        assert_eq!(statistic(&pi, StatName::Sdes), 1);
        assert_eq!(statistic(&pi, StatName::Lddes), 3);
        assert_eq!(statistic(&pi, StatName::Pk), 2);
        let pi = p("2413756");
        assert_eq!(statistic(&pi, StatName::Hibasc), 2);
        assert_eq!(statistic(&pi, StatName::Lobasc), 1);
        assert_eq!(statistic(&pi, StatName::Basc), 3);
        assert_eq!(statistic(&pi, StatName::Lbasc), 4);
    }

    #[test]
    fn empty_and_singleton_statistics() {
        for st in StatName::ALL_FIXED {
            assert_eq!(statistic(&Permutation::empty(), st), 0, "{st}");
        }
        assert_eq!(statistic(&p("1"), StatName::Rbdes), 0);
        assert_eq!(statistic(&p("21"), StatName::Rbdes), 0);
        assert_eq!(statistic(&p("12"), StatName::Rbdes), 1);
    }

    #[test]
    fn stat_names_parse() {
        assert_eq!("des_r(3)".parse::<StatName>().unwrap(), StatName::DesR(3));
        assert_eq!("des_2".parse::<StatName>().unwrap(), StatName::DesR(2));
        assert_eq!("bdes".parse::<StatName>().unwrap(), StatName::Bdes);
        assert!("foo".parse::<StatName>().is_err());
        assert_eq!(StatName::DesR(1).normalized(), StatName::Bdes);
    }

    #[test]
    fn set_statistics() {
        let rl = statistic_set(&p("2745361"), SetStat::RLmax);
        assert_eq!(rl.into_iter().collect::<Vec<_>>(), vec![1, 6, 7]);
        // 7421365: 7>4+1 at 1, 4>2+1 at 2; 6>5 is small
        let b = statistic_set(&p("7421365"), SetStat::Bdes);
        assert_eq!(b.into_iter().collect::<Vec<_>>(), vec![1, 2]);
        assert!(statistic_set(&Permutation::identity(6), SetStat::Bdes).is_empty());
        let we = statistic_set(&p("2413756"), SetStat::WeakExcedances);
        assert_eq!(we.into_iter().collect::<Vec<_>>(), vec![1, 2, 5]);
    }

    #[test]
    fn tables_from_enumeration() {
        let t = distribution_table(5, &ps("132"), StatName::Bdes).unwrap();
        assert_eq!(t.counts, vec![5, 25, 12, 0, 0, 0]);
        let t = distribution_table(6, &ps("321"), StatName::Bdes).unwrap();
        assert_eq!(t.counts, vec![13, 72, 45, 2, 0, 0, 0]);
        let t = distribution_table(7, &ps("213,231"), StatName::Bdes).unwrap();
        assert_eq!(t.counts, vec![7, 35, 21, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn guards_refuse_large_requests() {
        let err = distribution_table(12, &PatternSet::empty(), StatName::Bdes).unwrap_err();
        assert!(matches!(err, Error::Resource { guard: "max_n_unrestricted", .. }));
        let g = Guards { max_n_restricted: 4, ..Guards::default() };
        let err = distribution_table_with(5, &ps("123"), StatName::Bdes, &g).unwrap_err();
        assert!(matches!(err, Error::Resource { guard: "max_n_restricted", .. }));
    }

    #[test]
    fn canonical_id_is_rc_invariant() {
        for size in [1, 2] {
            for set in length3_pattern_sets(size) {
                assert_eq!(set.canonical_id(), set.reverse_complement().canonical_id());
            }
        }
        assert_eq!(length3_pattern_sets(2).len(), 15);
    }

    #[test]
    fn display_round_trip() {
        let long: Permutation = "10,9,8,7,6,5,4,3,2,1".parse().unwrap();
        assert_eq!(long.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(ps("231,213").to_string(), "213,231");
        assert_eq!(ps("").to_string(), "");
    }
}
