//! Dyck paths, 2-Motzkin paths and binary words, with the factor, run and
//! peak-coloring statistics used by the bijections.
//!
//! Heights: `U` is +1, `D` is -1, paths start at height 0. A factor occurrence
//! "at level 0" is one whose first step starts at height 0. Overlapping
//! occurrences are all counted.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    D,
}

/// A Dyck path. The invariant is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DyckPath(Vec<Step>);

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if !is_dyck(&steps) {
            return Err(Error::invalid(format!(
                "{} is not a Dyck path",
                steps_to_string(&steps)
            )));
        }
        Ok(DyckPath(steps))
    }

    pub fn empty() -> Self {
        DyckPath(Vec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.0
    }

    pub fn semilength(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `U a D b`.
    pub fn first_return_compose(a: &DyckPath, b: &DyckPath) -> DyckPath {
        let mut s = Vec::with_capacity(a.0.len() + b.0.len() + 2);
        s.push(Step::U);
        s.extend_from_slice(&a.0);
        s.push(Step::D);
        s.extend_from_slice(&b.0);
        DyckPath(s)
    }

    /// `a U b D`.
    pub fn last_return_compose(a: &DyckPath, b: &DyckPath) -> DyckPath {
        let mut s = Vec::with_capacity(a.0.len() + b.0.len() + 2);
        s.extend_from_slice(&a.0);
        s.push(Step::U);
        s.extend_from_slice(&b.0);
        s.push(Step::D);
        DyckPath(s)
    }
}

pub fn is_dyck(steps: &[Step]) -> bool {
    let mut h: i64 = 0;
    for s in steps {
        h += if *s == Step::U { 1 } else { -1 };
        if h < 0 {
            return false;
        }
    }
    h == 0
}

fn steps_to_string(steps: &[Step]) -> String {
    steps
        .iter()
        .map(|s| if *s == Step::U { 'U' } else { 'D' })
        .collect()
}

/// Parses a word over `{U, D}` without checking the Dyck condition.
pub fn parse_steps(s: &str) -> Result<Vec<Step>> {
    s.trim()
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'U' | 'u' => Ok(Step::U),
            'D' | 'd' => Ok(Step::D),
            _ => Err(Error::invalid(format!("bad Dyck step {c:?}"))),
        })
        .collect()
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&steps_to_string(&self.0))
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "ε" || t == "e" {
            return Ok(DyckPath::empty());
        }
        DyckPath::new(parse_steps(t)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MotzkinStep {
    Up,
    Down,
    H0,
    H1,
}

impl MotzkinStep {
    fn token(self) -> &'static str {
        match self {
            MotzkinStep::Up => "u",
            MotzkinStep::Down => "d",
            MotzkinStep::H0 => "h0",
            MotzkinStep::H1 => "h1",
        }
    }
}

/// A Motzkin path whose level steps come in two colors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TwoMotzkinPath(Vec<MotzkinStep>);

impl TwoMotzkinPath {
    pub fn new(steps: Vec<MotzkinStep>) -> Result<Self> {
        if !is_motzkin(&steps) {
            let p = TwoMotzkinPath(steps);
            return Err(Error::invalid(format!("{p} is not a 2-Motzkin path")));
        }
        Ok(TwoMotzkinPath(steps))
    }

    pub fn steps(&self) -> &[MotzkinStep] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, step: MotzkinStep) -> usize {
        self.0.iter().filter(|&&s| s == step).count()
    }
}

pub fn is_motzkin(steps: &[MotzkinStep]) -> bool {
    let mut h: i64 = 0;
    for s in steps {
        match s {
            MotzkinStep::Up => h += 1,
            MotzkinStep::Down => h -= 1,
            _ => {}
        }
        if h < 0 {
            return false;
        }
    }
    h == 0
}

impl fmt::Display for TwoMotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<&str> = self.0.iter().map(|s| s.token()).collect();
        f.write_str(&toks.join(" "))
    }
}

impl FromStr for TwoMotzkinPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .split_whitespace()
            .map(|t| match t {
                "u" => Ok(MotzkinStep::Up),
                "d" => Ok(MotzkinStep::Down),
                "h0" => Ok(MotzkinStep::H0),
                "h1" => Ok(MotzkinStep::H1),
                _ => Err(Error::invalid(format!("bad 2-Motzkin step {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        TwoMotzkinPath::new(steps)
    }
}

/// A word over `{0, 1}`, stored in reading order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::invalid("binary word letters must be 0 or 1"));
        }
        Ok(BinaryWord(bits))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "ε" {
            return Ok(BinaryWord::default());
        }
        t.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::invalid(format!("bad binary letter {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryWord)
    }
}

fn count_factor<T: PartialEq>(word: &[T], f: &[T]) -> usize {
    if f.is_empty() || f.len() > word.len() {
        return 0;
    }
    word.windows(f.len()).filter(|w| *w == f).count()
}

/// Occurrences of the factor `f` in a Dyck path, optionally only those
/// starting at height 0.
pub fn occ_factor(p: &DyckPath, f: &[Step], level0_only: bool) -> usize {
    if !level0_only {
        return count_factor(&p.0, f);
    }
    if f.is_empty() || f.len() > p.0.len() {
        return 0;
    }
    let mut h: i64 = 0;
    let mut n = 0;
    for i in 0..=p.0.len() - f.len() {
        if h == 0 && p.0[i..i + f.len()] == *f {
            n += 1;
        }
        h += if p.0[i] == Step::U { 1 } else { -1 };
    }
    n
}

/// `occ_factor` with the factor given as a `U`/`D` string.
pub fn occ(p: &DyckPath, f: &str) -> usize {
    occ_factor(p, &parse_steps(f).expect("factor literal"), false)
}

pub fn occ_level0(p: &DyckPath, f: &str) -> usize {
    occ_factor(p, &parse_steps(f).expect("factor literal"), true)
}

pub fn occ_word(w: &BinaryWord, f: &str) -> usize {
    let f: Vec<u8> = f.bytes().map(|b| b - b'0').collect();
    count_factor(&w.0, &f)
}

/// Maximal runs of zeros of length at least `r`.
pub fn run_count(w: &BinaryWord, r: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::invalid("run length must be positive"));
    }
    Ok(w.0
        .split(|&b| b == 1)
        .filter(|run| run.len() >= r)
        .count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    First,
    Last,
}

/// Splits `p` as `U a D b` (first return) or `a U b D` (last return).
pub fn return_decompose(p: &DyckPath, which: Which) -> Result<(DyckPath, DyckPath)> {
    if p.is_empty() {
        return Err(Error::invalid("cannot decompose the empty path"));
    }
    let s = &p.0;
    match which {
        Which::First => {
            let mut h = 0i64;
            let ret = s
                .iter()
                .position(|st| {
                    h += if *st == Step::U { 1 } else { -1 };
                    h == 0
                })
                .expect("Dyck path returns to the axis");
            Ok((
                DyckPath(s[1..ret].to_vec()),
                DyckPath(s[ret + 1..].to_vec()),
            ))
        }
        Which::Last => {
            // position of the last step that starts at height 0
            let mut h = 0i64;
            let mut start = 0;
            for (i, st) in s.iter().enumerate() {
                if h == 0 {
                    start = i;
                }
                h += if *st == Step::U { 1 } else { -1 };
            }
            Ok((
                DyckPath(s[..start].to_vec()),
                DyckPath(s[start + 1..s.len() - 1].to_vec()),
            ))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Red,
    Blue,
}

/// Steps belonging to a `UD` factor are red, all others blue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeakColoring {
    pub path: DyckPath,
    pub colors: Vec<Color>,
}

impl PeakColoring {
    pub fn of(path: &DyckPath) -> Self {
        let s = &path.0;
        let mut colors = vec![Color::Blue; s.len()];
        for i in 0..s.len().saturating_sub(1) {
            if s[i] == Step::U && s[i + 1] == Step::D {
                colors[i] = Color::Red;
                colors[i + 1] = Color::Red;
            }
        }
        PeakColoring {
            path: path.clone(),
            colors,
        }
    }

    /// Positions (0-based) of blue steps of the given kind, in order.
    pub fn blue_positions(&self, kind: Step) -> Vec<usize> {
        self.path
            .0
            .iter()
            .zip(&self.colors)
            .enumerate()
            .filter(|(_, (s, c))| **s == kind && **c == Color::Blue)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStat {
    Pk,
    Con,
    Hibasc,
    Lobasc,
    IniUU,
    Returns,
}

impl FromStr for PathStat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "pk" => PathStat::Pk,
            "con" => PathStat::Con,
            "hibasc" => PathStat::Hibasc,
            "lobasc" => PathStat::Lobasc,
            "ini_UU" | "ini_uu" => PathStat::IniUU,
            "returns" => PathStat::Returns,
            other => return Err(Error::invalid(format!("unknown path statistic {other:?}"))),
        })
    }
}

fn positions_of(s: &[Step], kind: Step) -> Vec<usize> {
    s.iter()
        .enumerate()
        .filter(|(_, st)| **st == kind)
        .map(|(i, _)| i)
        .collect()
}

/// Number of `i` such that `b[i]`, `b[i+1]` are adjacent while `a[i]`, `a[i+1]` are not.
fn adjacent_here_not_there(a: &[usize], b: &[usize]) -> usize {
    (0..b.len().saturating_sub(1))
        .filter(|&i| b[i] + 1 == b[i + 1] && a[i] + 1 != a[i + 1])
        .count()
}

pub fn path_statistic(p: &DyckPath, stat: PathStat) -> usize {
    let s = &p.0;
    match stat {
        PathStat::Pk => count_factor(s, &[Step::U, Step::D]),
        PathStat::Con => {
            let us = positions_of(s, Step::U);
            let ds = positions_of(s, Step::D);
            adjacent_here_not_there(&us, &ds)
        }
        PathStat::Hibasc => {
            let peaks: Vec<usize> = (0..s.len().saturating_sub(1))
                .filter(|&i| s[i] == Step::U && s[i + 1] == Step::D)
                .collect();
            peaks
                .iter()
                .skip(1)
                .filter(|&&i| !(i >= 2 && s[i - 2] == Step::U && s[i - 1] == Step::D))
                .count()
        }
        PathStat::Lobasc => {
            let col = PeakColoring::of(p);
            let us = col.blue_positions(Step::U);
            let ds = col.blue_positions(Step::D);
            adjacent_here_not_there(&us, &ds)
        }
        PathStat::IniUU => (s.len() >= 2 && s[0] == Step::U && s[1] == Step::U) as usize,
        PathStat::Returns => {
            let mut h = 0i64;
            s.iter()
                .filter(|st| {
                    h += if **st == Step::U { 1 } else { -1 };
                    h == 0
                })
                .count()
        }
    }
}

/// All Dyck paths of semilength `m`, in lexicographic order with `U < D`.
pub fn all_dyck_paths(m: usize) -> Vec<DyckPath> {
    fn go(m: usize, ups: usize, downs: usize, cur: &mut Vec<Step>, out: &mut Vec<DyckPath>) {
        if ups == m && downs == m {
            out.push(DyckPath(cur.clone()));
            return;
        }
        if ups < m {
            cur.push(Step::U);
            go(m, ups + 1, downs, cur, out);
            cur.pop();
        }
        if downs < ups {
            cur.push(Step::D);
            go(m, ups, downs + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, 0, 0, &mut Vec::with_capacity(2 * m), &mut out);
    out
}

/// All 2-Motzkin paths with `len` steps.
pub fn all_two_motzkin_paths(len: usize) -> Vec<TwoMotzkinPath> {
    fn go(left: usize, h: usize, cur: &mut Vec<MotzkinStep>, out: &mut Vec<TwoMotzkinPath>) {
        if left == 0 {
            if h == 0 {
                out.push(TwoMotzkinPath(cur.clone()));
            }
            return;
        }
        if h + 1 <= left - 1 {
            cur.push(MotzkinStep::Up);
            go(left - 1, h + 1, cur, out);
            cur.pop();
        }
        if h > 0 {
            cur.push(MotzkinStep::Down);
            go(left - 1, h - 1, cur, out);
            cur.pop();
        }
        if h <= left - 1 {
            for st in [MotzkinStep::H0, MotzkinStep::H1] {
                cur.push(st);
                go(left - 1, h, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

/// All binary words of length `len`, in lexicographic order.
pub fn all_binary_words(len: usize) -> Vec<BinaryWord> {
    (0..1u64 << len)
        .map(|m| BinaryWord((0..len).rev().map(|i| ((m >> i) & 1) as u8).collect()))
        .collect()
}

pub fn validate_dyck(s: &str) -> bool {
    s.parse::<DyckPath>().is_ok()
}

pub fn validate_motzkin(s: &str) -> bool {
    s.parse::<TwoMotzkinPath>().is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    #[test]
    fn factor_counts() {
        let mu = d("UUUDDUDDUDUUDD");
        assert_eq!(occ(&mu, "UD"), 4);
        assert_eq!(occ_level0(&mu, "UD"), 1);
        let w: BinaryWord = "10110001011".parse().unwrap();
        assert_eq!(occ_word(&w, "011"), 2);
        // overlapping occurrences count separately
        let w: BinaryWord = "0000".parse().unwrap();
        assert_eq!(occ_word(&w, "00"), 3);
    }

    #[test]
    fn runs() {
        let w = |s: &str| s.parse::<BinaryWord>().unwrap();
        assert_eq!(run_count(&w("0000110111001"), 2).unwrap(), 2);
        assert_eq!(run_count(&w("1111"), 1).unwrap(), 0);
        assert_eq!(run_count(&w("000"), 2).unwrap(), 1);
        assert!(run_count(&w("000"), 0).is_err());
    }

    #[test]
    fn decompositions() {
        let mu = d("UUUDDUDDUDUUDD");
        let (a, b) = return_decompose(&mu, Which::First).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("UUDDUD".into(), "UDUUDD".into()));
        let (a, b) = return_decompose(&mu, Which::Last).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("UUUDDUDDUD".into(), "UD".into()));
        let (a, b) = return_decompose(&d("UD"), Which::First).unwrap();
        assert!(a.is_empty() && b.is_empty());
        assert!(return_decompose(&DyckPath::empty(), Which::Last).is_err());
    }

    #[test]
    fn decompositions_round_trip() {
        for m in 1..=7 {
            for p in all_dyck_paths(m) {
                let (a, b) = return_decompose(&p, Which::First).unwrap();
                assert_eq!(DyckPath::first_return_compose(&a, &b), p);
                let (a, b) = return_decompose(&p, Which::Last).unwrap();
                assert_eq!(DyckPath::last_return_compose(&a, &b), p);
            }
        }
    }

    #[test]
    fn statistics_on_small_paths() {
        assert_eq!(path_statistic(&d("UDUUDUUUDUDDUDDD"), PathStat::Pk), 5);
        assert_eq!(path_statistic(&d("UD"), PathStat::IniUU), 0);
        assert_eq!(path_statistic(&d("UUDD"), PathStat::IniUU), 1);
        assert_eq!(path_statistic(&d("UUDD"), PathStat::Con), 0);
        assert_eq!(path_statistic(&d("UUDUDD"), PathStat::Con), 1);
        assert_eq!(path_statistic(&d("UDUDUD"), PathStat::Returns), 3);
    }

    #[test]
    fn colored_statistics() {
        let mu = d("UUDUUDDDUUUDDD");
        assert_eq!(path_statistic(&mu, PathStat::Hibasc), 2);
        assert_eq!(path_statistic(&mu, PathStat::Lobasc), 1);
        let col = PeakColoring::of(&mu);
        assert_eq!(col.colors.iter().filter(|c| **c == Color::Red).count(), 6);
    }

    #[test]
    fn invariants_exhaustive() {
        for m in 1..=8 {
            for p in all_dyck_paths(m) {
                let pk = path_statistic(&p, PathStat::Pk);
                assert!(pk >= 1);
                assert!(occ_level0(&p, "UD") <= occ(&p, "UD"));
                assert!(path_statistic(&p, PathStat::Con) <= pk);
            }
        }
    }

    #[test]
    fn enumeration_sizes() {
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (m, c) in catalan.iter().enumerate() {
            assert_eq!(all_dyck_paths(m).len(), *c);
        }
        // 2-Motzkin paths of length m-1 are counted by Catalan(m)
        for m in 1..=8 {
            assert_eq!(all_two_motzkin_paths(m - 1).len(), catalan[m]);
        }
        assert_eq!(all_binary_words(4).len(), 16);
    }

    #[test]
    fn validation() {
        assert!(validate_dyck("UUDD"));
        assert!(!validate_dyck("UDD"));
        assert!(!validate_dyck("DU"));
        assert!(validate_motzkin("h1 u d"));
        assert!(!validate_motzkin("d u"));
        assert!(!validate_motzkin("u h2 d"));
    }
}
