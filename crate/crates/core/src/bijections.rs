//! Bijections from pattern classes to Dyck paths and binary words, the
//! peak-deletion bijection from Dyck paths to 2-Motzkin paths, and exhaustive
//! checkers for the statistics they carry across.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::paths::{
    self, all_binary_words, all_dyck_paths, occ, occ_level0, occ_word, path_statistic, BinaryWord,
    Color, DyckPath, MotzkinStep, PathStat, PeakColoring, Step, TwoMotzkinPath, Which,
};
use crate::perm::{
    enumerate_avoiders, statistic, statistic_set, PatternSet, Permutation, SetStat, StatName,
};
use crate::verify::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BijectionId {
    OmegaF,
    OmegaL,
    Chi,
    Psi,
    Phi213_231,
    Phi213_312,
    Phi123_132,
    Phi132_213,
    Phi231_321,
}

impl BijectionId {
    pub const ALL: [BijectionId; 9] = [
        BijectionId::OmegaF,
        BijectionId::OmegaL,
        BijectionId::Chi,
        BijectionId::Psi,
        BijectionId::Phi213_231,
        BijectionId::Phi213_312,
        BijectionId::Phi123_132,
        BijectionId::Phi132_213,
        BijectionId::Phi231_321,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BijectionId::OmegaF => "omega_f",
            BijectionId::OmegaL => "omega_l",
            BijectionId::Chi => "chi",
            BijectionId::Psi => "psi",
            BijectionId::Phi213_231 => "phi_213_231",
            BijectionId::Phi213_312 => "phi_213_312",
            BijectionId::Phi123_132 => "phi_123_132",
            BijectionId::Phi132_213 => "phi_132_213",
            BijectionId::Phi231_321 => "phi_231_321",
        }
    }

    /// Pattern class of the domain; `None` for `psi`, whose domain is Dyck paths.
    pub fn domain_patterns(self) -> Option<PatternSet> {
        let s = match self {
            BijectionId::OmegaF | BijectionId::OmegaL => "231",
            BijectionId::Chi => "321",
            BijectionId::Psi => return None,
            BijectionId::Phi213_231 => "213,231",
            BijectionId::Phi213_312 => "213,312",
            BijectionId::Phi123_132 => "123,132",
            BijectionId::Phi132_213 => "132,213",
            BijectionId::Phi231_321 => "231,321",
        };
        Some(s.parse().unwrap())
    }
}

impl fmt::Display for BijectionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BijectionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BijectionId::ALL
            .into_iter()
            .find(|b| b.name() == s.trim())
            .ok_or_else(|| Error::invalid(format!("unknown bijection {s:?}")))
    }
}

/// Anything a bijection can take or return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obj {
    Perm(Permutation),
    Dyck(DyckPath),
    Motzkin(TwoMotzkinPath),
    Word(BinaryWord),
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Perm(p) => write!(f, "{p}"),
            Obj::Dyck(p) => write!(f, "{p}"),
            Obj::Motzkin(p) => write!(f, "{p}"),
            Obj::Word(w) => write!(f, "{w}"),
        }
    }
}

fn require_class(id: BijectionId, perm: &Permutation) -> Result<()> {
    let pats = id.domain_patterns().expect("permutation domain");
    match pats.first_contained(perm) {
        Some(p) => Err(Error::DomainViolation {
            bijection: id.name().into(),
            pattern: p.to_string(),
        }),
        None => Ok(()),
    }
}

fn require_nonempty(id: BijectionId, len: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::invalid(format!("{id} is defined for n >= 1")));
    }
    Ok(())
}

/// Splits `π = σ n τ`, returning `(σ, std(τ))`. For 231-avoiders every letter
/// of `τ` exceeds every letter of `σ`, so `σ` is already standard.
fn split_at_max(w: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = w.len() as u32;
    let p = w.iter().position(|&l| l == n).expect("max letter");
    let sigma = w[..p].to_vec();
    let shift = sigma.len() as u32;
    let tau = w[p + 1..].iter().map(|&l| l - shift).collect();
    (sigma, tau)
}

fn omega_f_rec(w: &[u32], out: &mut Vec<Step>) {
    if w.is_empty() {
        return;
    }
    let (sigma, tau) = split_at_max(w);
    out.push(Step::U);
    omega_f_rec(&sigma, out);
    out.push(Step::D);
    omega_f_rec(&tau, out);
}

fn omega_l_rec(w: &[u32], out: &mut Vec<Step>) {
    if w.is_empty() {
        return;
    }
    let (sigma, tau) = split_at_max(w);
    omega_l_rec(&tau, out);
    out.push(Step::U);
    omega_l_rec(&sigma, out);
    out.push(Step::D);
}

/// Joins `σ`, `n`, `τ + |σ|`.
fn join_around_max(sigma: Vec<u32>, tau: Vec<u32>) -> Vec<u32> {
    let shift = sigma.len() as u32;
    let n = (sigma.len() + tau.len() + 1) as u32;
    let mut w = sigma;
    w.push(n);
    w.extend(tau.into_iter().map(|l| l + shift));
    w
}

fn omega_inverse(p: &DyckPath, which: Which) -> Vec<u32> {
    if p.is_empty() {
        return Vec::new();
    }
    let (a, b) = paths::return_decompose(p, which).expect("nonempty");
    match which {
        // U σ D τ
        Which::First => join_around_max(omega_inverse(&a, which), omega_inverse(&b, which)),
        // τ U σ D
        Which::Last => join_around_max(omega_inverse(&b, which), omega_inverse(&a, which)),
    }
}

pub fn omega_f(perm: &Permutation) -> Result<DyckPath> {
    require_class(BijectionId::OmegaF, perm)?;
    let mut out = Vec::with_capacity(2 * perm.len());
    omega_f_rec(perm.letters(), &mut out);
    Ok(DyckPath::new(out).expect("Dyck by construction"))
}

pub fn omega_l(perm: &Permutation) -> Result<DyckPath> {
    require_class(BijectionId::OmegaL, perm)?;
    let mut out = Vec::with_capacity(2 * perm.len());
    omega_l_rec(perm.letters(), &mut out);
    Ok(DyckPath::new(out).expect("Dyck by construction"))
}

pub fn omega_f_inverse(p: &DyckPath) -> Permutation {
    Permutation::new(omega_inverse(p, Which::First)).expect("permutation by construction")
}

pub fn omega_l_inverse(p: &DyckPath) -> Permutation {
    Permutation::new(omega_inverse(p, Which::Last)).expect("permutation by construction")
}

/// Reads `π` column by column: north up to `max(π_1..π_k)`, then one step east.
/// North steps are `U` and east steps are `D`.
pub fn chi(perm: &Permutation) -> Result<DyckPath> {
    require_class(BijectionId::Chi, perm)?;
    let mut out = Vec::with_capacity(2 * perm.len());
    let mut h = 0;
    for &l in perm.letters() {
        while h < l {
            out.push(Step::U);
            h += 1;
        }
        out.push(Step::D);
    }
    Ok(DyckPath::new(out).expect("prefix maxima dominate positions"))
}

/// Each east step directly after a north step sits at column `k` and height
/// `h` and fixes `π_k = h`; the remaining columns, left to right, take the
/// remaining values in increasing order.
pub fn chi_inverse(p: &DyckPath) -> Permutation {
    let n = p.semilength();
    let mut letters = vec![0u32; n];
    let mut used = vec![false; n + 1];
    let (mut h, mut col) = (0u32, 0usize);
    let mut prev = None;
    for &s in p.steps() {
        match s {
            Step::U => h += 1,
            Step::D => {
                if prev == Some(Step::U) {
                    letters[col] = h;
                    used[h as usize] = true;
                }
                col += 1;
            }
        }
        prev = Some(s);
    }
    let mut rest = (1..=n as u32).filter(|&v| !used[v as usize]);
    for l in letters.iter_mut().filter(|l| **l == 0) {
        *l = rest.next().expect("as many free values as free columns");
    }
    Permutation::new(letters).expect("permutation by construction")
}

/// Step `i` of the image records the colors of `U_i` and `D_{i+1}`.
pub fn psi(p: &DyckPath) -> Result<TwoMotzkinPath> {
    if p.is_empty() {
        return Err(Error::invalid("psi is defined on nonempty Dyck paths"));
    }
    let col = PeakColoring::of(p);
    let mut u_col = Vec::new();
    let mut d_col = Vec::new();
    for (s, c) in p.steps().iter().zip(&col.colors) {
        match s {
            Step::U => u_col.push(*c),
            Step::D => d_col.push(*c),
        }
    }
    let m = u_col.len();
    let steps = (0..m - 1)
        .map(|i| match (u_col[i], d_col[i + 1]) {
            (Color::Blue, Color::Red) => MotzkinStep::Up,
            (Color::Red, Color::Blue) => MotzkinStep::Down,
            (Color::Blue, Color::Blue) => MotzkinStep::H0,
            (Color::Red, Color::Red) => MotzkinStep::H1,
        })
        .collect();
    Ok(TwoMotzkinPath::new(steps).expect("psi image is a 2-Motzkin path"))
}

/// Inverse of [`psi`].
///
/// The word fixes the color of every step: `U_i` is red iff `α_i ∈ {d, h1}`,
/// `D_{i+1}` is red iff `α_i ∈ {u, h1}`, and `U_m`, `D_1` are always red. If
/// `a_1 < … < a_p` and `b_1 < … < b_p` index the red `U` and red `D` steps,
/// the `j`th peak is `U_{a_j} D_{b_j}`, and since no other `UD` factor occurs,
/// the blue steps between consecutive peaks form a run of `D`s followed by a
/// run of `U`s:
///
/// `U^{a_1-1} UD D^{b_2-b_1-1} U^{a_2-a_1-1} UD ... UD D^{m-b_p}`.
pub fn psi_inverse(alpha: &TwoMotzkinPath) -> Result<DyckPath> {
    let m = alpha.len() + 1;
    let mut red_u = Vec::new();
    let mut red_d = vec![1usize];
    for (i, s) in alpha.steps().iter().enumerate() {
        let (u_red, d_red) = match s {
            MotzkinStep::Up => (false, true),
            MotzkinStep::Down => (true, false),
            MotzkinStep::H0 => (false, false),
            MotzkinStep::H1 => (true, true),
        };
        if u_red {
            red_u.push(i + 1);
        }
        if d_red {
            red_d.push(i + 2);
        }
    }
    red_u.push(m);
    if red_u.len() != red_d.len() {
        return Err(Error::invalid(format!("{alpha} has unbalanced u and d steps")));
    }
    let mut steps = Vec::with_capacity(2 * m);
    let (mut last_a, mut last_b) = (0, 0);
    for (&a, &b) in red_u.iter().zip(&red_d) {
        steps.extend(std::iter::repeat(Step::D).take(b - last_b - 1));
        steps.extend(std::iter::repeat(Step::U).take(a - last_a - 1));
        steps.push(Step::U);
        steps.push(Step::D);
        (last_a, last_b) = (a, b);
    }
    steps.extend(std::iter::repeat(Step::D).take(m - last_b));
    let path = DyckPath::new(steps)?;
    if psi(&path)? != *alpha {
        return Err(Error::Internal(format!("psi_inverse({alpha}) did not round-trip")));
    }
    Ok(path)
}

fn word(bits: Vec<u8>) -> BinaryWord {
    BinaryWord::new(bits).expect("bits")
}

/// `w_k = 1` if `π_k` is the minimum of `π_k … π_n`, else `0` (it is then the maximum).
pub fn phi_213_231(perm: &Permutation) -> Result<BinaryWord> {
    require_nonempty(BijectionId::Phi213_231, perm.len())?;
    require_class(BijectionId::Phi213_231, perm)?;
    let w = perm.letters();
    let n = w.len();
    let mut suffix_min = vec![u32::MAX; n + 1];
    for k in (0..n).rev() {
        suffix_min[k] = suffix_min[k + 1].min(w[k]);
    }
    Ok(word((0..n - 1).map(|k| (w[k] == suffix_min[k]) as u8).collect()))
}

pub fn phi_213_231_inverse(w: &BinaryWord) -> Permutation {
    let n = w.len() as u32 + 1;
    let (mut lo, mut hi) = (1, n);
    let mut out = Vec::with_capacity(n as usize);
    for &b in w.bits() {
        if b == 1 {
            out.push(lo);
            lo += 1;
        } else {
            out.push(hi);
            hi -= 1;
        }
    }
    out.push(lo);
    Permutation::new(out).expect("permutation by construction")
}

/// `w_k = 1` iff the letter `k` appears before `n`.
pub fn phi_213_312(perm: &Permutation) -> Result<BinaryWord> {
    require_nonempty(BijectionId::Phi213_312, perm.len())?;
    require_class(BijectionId::Phi213_312, perm)?;
    let w = perm.letters();
    let n = w.len();
    let pos_n = w.iter().position(|&l| l as usize == n).unwrap();
    let mut bits = vec![0u8; n - 1];
    for &l in &w[..pos_n] {
        bits[l as usize - 1] = 1;
    }
    Ok(word(bits))
}

/// The letters before `n` increase and those after it decrease.
pub fn phi_213_312_inverse(w: &BinaryWord) -> Permutation {
    let n = w.len() as u32 + 1;
    let ones = (1..n).filter(|&k| w.bits()[k as usize - 1] == 1);
    let zeros = (1..n).rev().filter(|&k| w.bits()[k as usize - 1] == 0);
    let out: Vec<u32> = ones.chain([n]).chain(zeros).collect();
    Permutation::new(out).expect("permutation by construction")
}

fn indicator(set: &BTreeSet<u32>, n: usize) -> BinaryWord {
    word((1..=n as u32).map(|k| set.contains(&k) as u8).collect())
}

fn word_to_set(w: &BinaryWord) -> Result<BTreeSet<u32>> {
    if w.bits().last() != Some(&1) {
        return Err(Error::invalid(format!("{w} must be nonempty and end in 1")));
    }
    Ok(w
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == 1)
        .map(|(i, _)| i as u32 + 1)
        .collect())
}

/// Indicator word of the right-to-left maxima.
pub fn phi_123_132(perm: &Permutation) -> Result<BinaryWord> {
    require_nonempty(BijectionId::Phi123_132, perm.len())?;
    require_class(BijectionId::Phi123_132, perm)?;
    Ok(indicator(&statistic_set(perm, SetStat::RLmax), perm.len()))
}

pub fn phi_132_213(perm: &Permutation) -> Result<BinaryWord> {
    require_nonempty(BijectionId::Phi132_213, perm.len())?;
    require_class(BijectionId::Phi132_213, perm)?;
    Ok(indicator(&statistic_set(perm, SetStat::RLmax), perm.len()))
}

/// Indicator word of the left-to-right maxima.
pub fn phi_231_321(perm: &Permutation) -> Result<BinaryWord> {
    require_nonempty(BijectionId::Phi231_321, perm.len())?;
    require_class(BijectionId::Phi231_321, perm)?;
    Ok(indicator(&statistic_set(perm, SetStat::LRmax), perm.len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximaVariant {
    /// Right-to-left maxima, gaps filled decreasingly (avoids 123 and 132).
    RlmaxDecreasing,
    /// Right-to-left maxima, gaps filled increasingly (avoids 132 and 213).
    RlmaxIncreasing,
    /// Left-to-right maxima, gaps filled increasingly (avoids 231 and 321).
    LrmaxIncreasing,
}

/// The unique permutation of the variant's class whose set of maxima is `set`;
/// `n` is the largest element of `set`.
pub fn reconstruct_from_maxima(set: &BTreeSet<u32>, variant: MaximaVariant) -> Result<Permutation> {
    let s: Vec<u32> = set.iter().copied().collect();
    if s.first() == Some(&0) {
        return Err(Error::invalid("maxima sets live in [n]"));
    }
    let Some(&n) = s.last() else {
        return Err(Error::invalid("the set of maxima must contain n"));
    };
    let mut out = Vec::with_capacity(n as usize);
    match variant {
        MaximaVariant::RlmaxDecreasing | MaximaVariant::RlmaxIncreasing => {
            // blocks (s_{j-1}, s_j) then s_j, from the top block down
            for j in (0..s.len()).rev() {
                let a = if j == 0 { 0 } else { s[j - 1] };
                if variant == MaximaVariant::RlmaxDecreasing {
                    out.extend((a + 1..s[j]).rev());
                } else {
                    out.extend(a + 1..s[j]);
                }
                out.push(s[j]);
            }
        }
        MaximaVariant::LrmaxIncreasing => {
            let mut prev = 0;
            for &sj in &s {
                out.push(sj);
                out.extend(prev + 1..sj);
                prev = sj;
            }
        }
    }
    Permutation::new(out)
}

pub fn phi_123_132_inverse(w: &BinaryWord) -> Result<Permutation> {
    reconstruct_from_maxima(&word_to_set(w)?, MaximaVariant::RlmaxDecreasing)
}

pub fn phi_132_213_inverse(w: &BinaryWord) -> Result<Permutation> {
    reconstruct_from_maxima(&word_to_set(w)?, MaximaVariant::RlmaxIncreasing)
}

pub fn phi_231_321_inverse(w: &BinaryWord) -> Result<Permutation> {
    reconstruct_from_maxima(&word_to_set(w)?, MaximaVariant::LrmaxIncreasing)
}

/// Applies a bijection to an object of its domain, checking membership.
pub fn apply(id: BijectionId, x: &Obj) -> Result<Obj> {
    use BijectionId::*;
    let wrong = || Error::invalid(format!("{id} does not accept {x}"));
    match (id, x) {
        (Psi, Obj::Dyck(p)) => psi(p).map(Obj::Motzkin),
        (Psi, _) => Err(wrong()),
        (_, Obj::Perm(p)) => match id {
            OmegaF => omega_f(p).map(Obj::Dyck),
            OmegaL => omega_l(p).map(Obj::Dyck),
            Chi => chi(p).map(Obj::Dyck),
            Phi213_231 => phi_213_231(p).map(Obj::Word),
            Phi213_312 => phi_213_312(p).map(Obj::Word),
            Phi123_132 => phi_123_132(p).map(Obj::Word),
            Phi132_213 => phi_132_213(p).map(Obj::Word),
            Phi231_321 => phi_231_321(p).map(Obj::Word),
            Psi => unreachable!(),
        },
        _ => Err(wrong()),
    }
}

/// Inverts a bijection on an object of its codomain.
pub fn invert(id: BijectionId, y: &Obj) -> Result<Obj> {
    use BijectionId::*;
    let wrong = || Error::invalid(format!("{id} cannot invert {y}"));
    match (id, y) {
        (OmegaF, Obj::Dyck(p)) => Ok(Obj::Perm(omega_f_inverse(p))),
        (OmegaL, Obj::Dyck(p)) => Ok(Obj::Perm(omega_l_inverse(p))),
        (Chi, Obj::Dyck(p)) => Ok(Obj::Perm(chi_inverse(p))),
        (Psi, Obj::Motzkin(a)) => psi_inverse(a).map(Obj::Dyck),
        (Phi213_231, Obj::Word(w)) => Ok(Obj::Perm(phi_213_231_inverse(w))),
        (Phi213_312, Obj::Word(w)) => Ok(Obj::Perm(phi_213_312_inverse(w))),
        (Phi123_132, Obj::Word(w)) => phi_123_132_inverse(w).map(Obj::Perm),
        (Phi132_213, Obj::Word(w)) => phi_132_213_inverse(w).map(Obj::Perm),
        (Phi231_321, Obj::Word(w)) => phi_231_321_inverse(w).map(Obj::Perm),
        _ => Err(wrong()),
    }
}

/// Parses `s` as an element of the domain (`inverse = false`) or codomain of `id`.
pub fn parse_obj(id: BijectionId, s: &str, inverse: bool) -> Result<Obj> {
    use BijectionId::*;
    Ok(match (id, inverse) {
        (Psi, false) | (OmegaF | OmegaL | Chi, true) => Obj::Dyck(s.parse()?),
        (Psi, true) => Obj::Motzkin(s.parse()?),
        (_, false) => Obj::Perm(s.parse()?),
        (_, true) => Obj::Word(s.parse()?),
    })
}

/// The codomain at size `n`, used for the exhaustive `apply ∘ invert` check.
fn codomain(id: BijectionId, n: usize) -> Vec<Obj> {
    use BijectionId::*;
    match id {
        OmegaF | OmegaL | Chi => all_dyck_paths(n).into_iter().map(Obj::Dyck).collect(),
        Psi => paths::all_two_motzkin_paths(n.saturating_sub(1))
            .into_iter()
            .map(Obj::Motzkin)
            .collect(),
        Phi213_231 | Phi213_312 => all_binary_words(n.saturating_sub(1))
            .into_iter()
            .map(Obj::Word)
            .collect(),
        Phi123_132 | Phi132_213 | Phi231_321 => all_binary_words(n.saturating_sub(1))
            .into_iter()
            .map(|w| {
                let mut b = w.bits().to_vec();
                b.push(1);
                Obj::Word(word(b))
            })
            .collect(),
    }
}

fn domain(id: BijectionId, n: usize) -> Vec<Obj> {
    match id.domain_patterns() {
        Some(pats) => enumerate_avoiders(n, &pats).into_iter().map(Obj::Perm).collect(),
        None => all_dyck_paths(n).into_iter().map(Obj::Dyck).collect(),
    }
}

/// Runs `f` over the population and reports how many members fail.
fn check_all<T: Sync>(
    name: &str,
    n: usize,
    pop: &[T],
    f: impl Fn(&T) -> std::result::Result<(), String> + Sync,
) -> Check {
    let failures: Vec<String> = pop.par_iter().filter_map(|x| f(x).err()).collect();
    Check {
        name: name.to_string(),
        n,
        population: pop.len(),
        pass: failures.is_empty(),
        witness: failures.into_iter().next(),
    }
}

fn expect_eq(what: &str, at: &dyn fmt::Display, lhs: usize, rhs: usize) -> std::result::Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what} at {at}: {lhs} != {rhs}"))
    }
}

fn perm_of(o: &Obj) -> &Permutation {
    match o {
        Obj::Perm(p) => p,
        _ => unreachable!("permutation domain"),
    }
}

fn word_of(o: &Obj) -> &BinaryWord {
    match o {
        Obj::Word(w) => w,
        _ => unreachable!("word codomain"),
    }
}

/// Round trips in both directions plus a cardinality check, at size `n`.
pub fn verify_round_trip(id: BijectionId, n: usize) -> Vec<Check> {
    let defined = n > 0 || matches!(id, BijectionId::OmegaF | BijectionId::OmegaL | BijectionId::Chi);
    let (dom, cod) = if defined {
        (domain(id, n), codomain(id, n))
    } else {
        (Vec::new(), Vec::new())
    };
    let forward = check_all(&format!("{id}: invert(apply(x)) = x"), n, &dom, |x| {
        let y = apply(id, x).map_err(|e| format!("{x}: {e}"))?;
        let back = invert(id, &y).map_err(|e| format!("{y}: {e}"))?;
        if back == *x {
            Ok(())
        } else {
            Err(format!("{x} -> {y} -> {back}"))
        }
    });
    let backward = check_all(&format!("{id}: apply(invert(y)) = y"), n, &cod, |y| {
        let x = invert(id, y).map_err(|e| format!("{y}: {e}"))?;
        let again = apply(id, &x).map_err(|e| format!("{x}: {e}"))?;
        if again == *y {
            Ok(())
        } else {
            Err(format!("{y} -> {x} -> {again}"))
        }
    });
    let images: BTreeSet<String> = dom
        .par_iter()
        .filter_map(|x| apply(id, x).ok().map(|y| y.to_string()))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let card = Check {
        name: format!("{id}: bijective onto codomain"),
        n,
        population: dom.len(),
        pass: dom.len() == cod.len() && images.len() == cod.len(),
        witness: (dom.len() != cod.len() || images.len() != cod.len()).then(|| {
            format!(
                "domain {}, distinct images {}, codomain {}",
                dom.len(),
                images.len(),
                cod.len()
            )
        }),
    };
    vec![forward, backward, card]
}

/// Exhaustively checks every statistic identity carried by `id` at size `n`.
pub fn verify_transfer(id: BijectionId, n: usize) -> Vec<Check> {
    use BijectionId::*;
    let bdes = |p: &Permutation| statistic(p, StatName::Bdes) as usize;
    let des = |p: &Permutation| statistic(p, StatName::Des) as usize;
    match id {
        OmegaF | OmegaL => {
            let dom = domain(id, n);
            let path = |p: &Permutation| {
                if id == OmegaF { omega_f(p) } else { omega_l(p) }.unwrap()
            };
            let first = if id == OmegaF { "bdes" } else { "pk" };
            vec![
                check_all(&format!("{id}: {first} = occ_DUU"), n, &dom, |x| {
                    let p = perm_of(x);
                    let lhs = if id == OmegaF { bdes(p) } else { statistic(p, StatName::Pk) as usize };
                    expect_eq(first, p, lhs, occ(&path(p), "DUU"))
                }),
                check_all(&format!("{id}: des = occ_DU"), n, &dom, |x| {
                    let p = perm_of(x);
                    expect_eq("des", p, des(p), occ(&path(p), "DU"))
                }),
            ]
        }
        Chi => {
            let dom = domain(id, n);
            let pats123: PatternSet = "123".parse().unwrap();
            let dom123: Vec<Obj> = enumerate_avoiders(n, &pats123).into_iter().map(Obj::Perm).collect();
            let hl = |mu: &DyckPath| {
                path_statistic(mu, PathStat::Hibasc) + path_statistic(mu, PathStat::Lobasc)
            };
            vec![
                check_all("chi: des = occ_UDD", n, &dom, |x| {
                    let p = perm_of(x);
                    expect_eq("des", p, des(p), occ(&chi(p).unwrap(), "UDD"))
                }),
                check_all("chi: sdes = level-0 occ_UUDD", n, &dom, |x| {
                    let p = perm_of(x);
                    let lhs = statistic(p, StatName::Sdes) as usize;
                    expect_eq("sdes", p, lhs, occ_level0(&chi(p).unwrap(), "UUDD"))
                }),
                check_all("chi: hibasc and lobasc carried to the path", n, &dom, |x| {
                    let p = perm_of(x);
                    let mu = chi(p).unwrap();
                    expect_eq(
                        "hibasc",
                        p,
                        statistic(p, StatName::Hibasc) as usize,
                        path_statistic(&mu, PathStat::Hibasc),
                    )?;
                    expect_eq(
                        "lobasc",
                        p,
                        statistic(p, StatName::Lobasc) as usize,
                        path_statistic(&mu, PathStat::Lobasc),
                    )
                }),
                check_all("chi: bdes = (hibasc+lobasc)(chi(reverse)) on 123-avoiders", n, &dom123, |x| {
                    let p = perm_of(x);
                    expect_eq("bdes", p, bdes(p), hl(&chi(&p.reverse()).unwrap()))
                }),
                check_all(
                    "chi: rbdes = (hibasc+lobasc+ini_UU)(chi(reverse)) on 123-avoiders",
                    n,
                    &dom123,
                    |x| {
                        let p = perm_of(x);
                        let mu = chi(&p.reverse()).unwrap();
                        let rhs = hl(&mu) + path_statistic(&mu, PathStat::IniUU);
                        expect_eq("rbdes", p, statistic(p, StatName::Rbdes) as usize, rhs)
                    },
                ),
            ]
        }
        Psi => {
            let dom: Vec<DyckPath> = if n == 0 { Vec::new() } else { all_dyck_paths(n) };
            vec![
                check_all("psi: pk = d + h1 + 1", n, &dom, |mu| {
                    let a = psi(mu).map_err(|e| e.to_string())?;
                    let rhs = a.count(MotzkinStep::Down) + a.count(MotzkinStep::H1) + 1;
                    expect_eq("pk", mu, path_statistic(mu, PathStat::Pk), rhs)
                }),
                check_all("psi: con = d", n, &dom, |mu| {
                    let a = psi(mu).map_err(|e| e.to_string())?;
                    expect_eq("con", mu, path_statistic(mu, PathStat::Con), a.count(MotzkinStep::Down))
                }),
            ]
        }
        Phi213_231 | Phi213_312 => {
            let dom = if n == 0 { Vec::new() } else { domain(id, n) };
            vec![check_all(&format!("{id}: bdes = occ_01"), n, &dom, |x| {
                let p = perm_of(x);
                let w = word_of(&apply(id, x).unwrap()).clone();
                expect_eq("bdes", p, bdes(p), occ_word(&w, "01"))
            })]
        }
        Phi123_132 | Phi132_213 => {
            let dom = if n == 0 { Vec::new() } else { domain(id, n) };
            vec![
                check_all(&format!("{id}: bdes = occ_10 + occ_011"), n, &dom, |x| {
                    let p = perm_of(x);
                    let w = word_of(&apply(id, x).unwrap()).clone();
                    expect_eq("bdes", p, bdes(p), occ_word(&w, "10") + occ_word(&w, "011"))
                }),
                check_all(&format!("{id}: image ends in 1"), n, &dom, |x| {
                    let w = word_of(&apply(id, x).unwrap()).clone();
                    if w.bits().last() == Some(&1) {
                        Ok(())
                    } else {
                        Err(format!("{w}"))
                    }
                }),
            ]
        }
        Phi231_321 => {
            let dom = if n == 0 { Vec::new() } else { domain(id, n) };
            vec![check_all("phi_231_321: bdes = occ_001", n, &dom, |x| {
                let p = perm_of(x);
                let w = word_of(&apply(id, x).unwrap()).clone();
                expect_eq("bdes", p, bdes(p), occ_word(&w, "001"))
            })]
        }
    }
}

/// `φ⁻¹_{213,312} ∘ φ_{213,231}` and `φ⁻¹_{132,213} ∘ φ_{123,132}` preserve bdes.
pub fn verify_composites(n: usize) -> Vec<Check> {
    if n == 0 {
        return Vec::new();
    }
    let a: Vec<Obj> = domain(BijectionId::Phi213_231, n);
    let b: Vec<Obj> = domain(BijectionId::Phi123_132, n);
    vec![
        check_all("phi_213_312^-1 . phi_213_231 preserves bdes", n, &a, |x| {
            let p = perm_of(x);
            let q = phi_213_312_inverse(&phi_213_231(p).unwrap());
            expect_eq(
                "bdes",
                p,
                statistic(p, StatName::Bdes) as usize,
                statistic(&q, StatName::Bdes) as usize,
            )
        }),
        check_all("phi_132_213^-1 . phi_123_132 preserves bdes", n, &b, |x| {
            let p = perm_of(x);
            let q = phi_132_213_inverse(&phi_123_132(p).unwrap()).unwrap();
            expect_eq(
                "bdes",
                p,
                statistic(p, StatName::Bdes) as usize,
                statistic(&q, StatName::Bdes) as usize,
            )
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    #[test]
    fn omega_examples() {
        let mu = omega_f(&p("521439687")).unwrap();
        assert_eq!(mu.to_string(), "UUDUUDUDDUDDUUDDUD");
        assert_eq!(omega_l_inverse(&mu), p("918632547"));
        assert_eq!(omega_f(&Permutation::empty()).unwrap(), DyckPath::empty());
    }

    #[test]
    fn chi_examples() {
        let mu = chi(&p("2413756")).unwrap();
        assert_eq!(mu.to_string(), "UUDUUDDDUUUDDD");
        assert_eq!(chi_inverse(&mu), p("2413756"));
        let hills: DyckPath = "UDUDUDUD".parse().unwrap();
        assert_eq!(chi_inverse(&hills), Permutation::identity(4));
    }

    #[test]
    fn psi_example() {
        let mu: DyckPath = "UDUUDUUUDUDDUDDD".parse().unwrap();
        let a = psi(&mu).unwrap();
        assert_eq!(a.to_string(), "h1 u h1 h0 u d d");
        assert_eq!(psi_inverse(&a).unwrap(), mu);
        assert!(psi(&DyckPath::empty()).is_err());
    }

    #[test]
    fn phi_examples() {
        let w = phi_213_231(&p("912384765")).unwrap();
        assert_eq!(w.to_string(), "01110100");
        let w: BinaryWord = "010010001".parse().unwrap();
        assert_eq!(phi_123_132_inverse(&w).unwrap(), p("876943512"));
        assert_eq!(phi_213_312(&p("1342")).unwrap().to_string(), "101");
    }

    #[test]
    fn maxima_reconstruction() {
        let v = MaximaVariant::RlmaxDecreasing;
        assert_eq!(reconstruct_from_maxima(&set(&[2, 5, 9]), v).unwrap(), p("876943512"));
        assert_eq!(reconstruct_from_maxima(&set(&[3]), v).unwrap(), p("213"));
        let all = set(&[1, 2, 3, 4, 5]);
        assert_eq!(
            reconstruct_from_maxima(&all, MaximaVariant::LrmaxIncreasing).unwrap(),
            Permutation::identity(5)
        );
        assert_eq!(
            reconstruct_from_maxima(&set(&[2, 5]), MaximaVariant::LrmaxIncreasing).unwrap(),
            p("21534")
        );
        assert!(reconstruct_from_maxima(&set(&[]), v).is_err());
    }

    #[test]
    fn domain_violations_name_the_pattern() {
        let err = omega_f(&p("231")).unwrap_err();
        assert_eq!(
            err,
            Error::DomainViolation {
                bijection: "omega_f".into(),
                pattern: "231".into()
            }
        );
        assert!(matches!(chi(&p("4321")), Err(Error::DomainViolation { .. })));
    }

    #[test]
    fn everything_round_trips() {
        for id in BijectionId::ALL {
            for n in 0..=7 {
                for c in verify_round_trip(id, n) {
                    assert!(c.pass, "{} n={n}: {:?}", c.name, c.witness);
                }
            }
        }
    }

    #[test]
    fn transfers_hold() {
        for id in BijectionId::ALL {
            for n in 0..=7 {
                for c in verify_transfer(id, n) {
                    assert!(c.pass, "{} n={n}: {:?}", c.name, c.witness);
                }
            }
        }
        for n in 1..=7 {
            assert!(verify_composites(n).iter().all(|c| c.pass));
        }
    }
}
