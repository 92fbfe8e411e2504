use std::collections::BTreeSet;

use proptest::prelude::*;

use bdes_core::algebra::{frac, rat, MultiPoly, TruncatedSeries, Var};
use bdes_core::bijections::{chi, chi_inverse, omega_f, omega_f_inverse, omega_l, omega_l_inverse, psi, psi_inverse};
use bdes_core::conjectures::{real_root_count, UniPolyQ};
use bdes_core::paths::{occ, MotzkinStep, path_statistic, return_decompose, DyckPath, PathStat, Step, Which};
use bdes_core::perm::{contains, standardize, statistic, statistic_set, PatternSet, Permutation, SetStat, StatName};
use bdes_core::symfunc::{partitions, schur_expand, schur_to_monomial_qsym, SymBasis, SymExpansion};

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

/// Uniform Dyck paths via the cycle lemma: rotate a shuffled word with one
/// extra D to start just after its lowest prefix, then drop the final D.
fn dyck(max: usize) -> impl Strategy<Value = DyckPath> {
    (0..=max)
        .prop_flat_map(|m| {
            let mut w = vec![Step::U; m];
            w.extend(vec![Step::D; m + 1]);
            Just(w).prop_shuffle()
        })
        .prop_map(|w| {
            let (mut h, mut low, mut at) = (0i32, 0i32, 0usize);
            for (i, s) in w.iter().enumerate() {
                h += if *s == Step::U { 1 } else { -1 };
                if h < low {
                    low = h;
                    at = i + 1;
                }
            }
            let mut r: Vec<Step> = w[at..].iter().chain(w[..at].iter()).copied().collect();
            r.pop();
            DyckPath::new(r).unwrap()
        })
}

fn small_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-3i64..=3, 0u16..3, 0u16..3), 0..4).prop_map(|terms| {
        let mut p = MultiPoly::zero();
        for (c, a, b) in terms {
            let m = &MultiPoly::var(Var::S).pow(a as u32) * &MultiPoly::var(Var::T).pow(b as u32);
            p = &p + &m.scale(&rat(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bdes_is_reverse_complement_invariant(p in permutation(10)) {
        prop_assert_eq!(statistic(&p, StatName::Bdes), statistic(&p.reverse_complement(), StatName::Bdes));
        prop_assert_eq!(
            statistic(&p, StatName::Bdes) as usize,
            statistic_set(&p, SetStat::Bdes).len()
        );
    }

    #[test]
    fn r_descents_nest(p in permutation(9)) {
        for r in 0..4u32 {
            let a = statistic_set(&p, SetStat::DesR(r + 1));
            let b = statistic_set(&p, SetStat::DesR(r));
            prop_assert!(a.is_subset(&b));
        }
        let des = statistic(&p, StatName::Des);
        prop_assert_eq!(des, statistic(&p, StatName::Bdes) + statistic(&p, StatName::Sdes));
    }

    #[test]
    fn containment_matches_subsequence_search(p in permutation(7), q in permutation(3)) {
        let n = p.len();
        let k = q.len();
        let mut found = k == 0;
        if k <= n && k > 0 {
            for mask in 0u32..1 << n {
                if mask.count_ones() as usize == k {
                    let sub: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| p.letters()[i]).collect();
                    if standardize(&sub).unwrap() == q {
                        found = true;
                        break;
                    }
                }
            }
        }
        prop_assert_eq!(contains(&p, &q), found);
        let set = PatternSet::new(vec![q.clone()]);
        prop_assert_eq!(set.avoided_by(&p), !found);
    }

    #[test]
    fn return_decompositions_invert(mu in dyck(12)) {
        prop_assume!(!mu.is_empty());
        let (a, b) = return_decompose(&mu, Which::First).unwrap();
        prop_assert_eq!(DyckPath::first_return_compose(&a, &b), mu.clone());
        let (a, b) = return_decompose(&mu, Which::Last).unwrap();
        prop_assert_eq!(DyckPath::last_return_compose(&a, &b), mu);
    }

    #[test]
    fn path_bijections_round_trip_beyond_exhaustive_range(mu in dyck(14)) {
        let p = omega_f_inverse(&mu);
        prop_assert_eq!(omega_f(&p).unwrap(), mu.clone());
        prop_assert_eq!(statistic(&p, StatName::Bdes) as usize, occ(&mu, "DUU"));
        let p = omega_l_inverse(&mu);
        prop_assert_eq!(omega_l(&p).unwrap(), mu.clone());
        prop_assert_eq!(statistic(&p, StatName::Pk) as usize, occ(&mu, "DUU"));
        let p = chi_inverse(&mu);
        prop_assert_eq!(chi(&p).unwrap(), mu.clone());
        prop_assert_eq!(statistic(&p, StatName::Des) as usize, occ(&mu, "UDD"));
        if !mu.is_empty() {
            let a = psi(&mu).unwrap();
            prop_assert_eq!(psi_inverse(&a).unwrap(), mu.clone());
            let (d, h1) = (a.count(MotzkinStep::Down), a.count(MotzkinStep::H1));
            prop_assert_eq!(path_statistic(&mu, PathStat::Pk), d + h1 + 1);
            prop_assert_eq!(path_statistic(&mu, PathStat::Con), d);
        }
    }

    #[test]
    fn polynomial_ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_div(&b), Some(a.clone()));
        }
    }

    #[test]
    fn series_field_laws(a in prop::collection::vec(small_poly(), 1..5), b in prop::collection::vec(-4i64..=4, 1..5)) {
        let order = 6;
        let sa = TruncatedSeries::from_polys(a, order);
        let mut bp: Vec<MultiPoly> = b.into_iter().map(MultiPoly::int).collect();
        bp[0] = MultiPoly::one();
        let sb = TruncatedSeries::from_polys(bp, order);
        prop_assert_eq!(sa.mul(&sb).div(&sb).unwrap(), sa.clone());
        let root = sb.sqrt().unwrap();
        prop_assert_eq!(root.mul(&root), sb);
    }

    #[test]
    fn sturm_counts_add_over_coprime_factors(roots in prop::collection::btree_set(-20i64..20, 1..6), extra in 1i64..5) {
        // distinct rational roots r/2 and an irreducible quadratic t^2 + extra
        let mut p = UniPolyQ::new(vec![rat(1)]);
        for r in &roots {
            p = p.mul(&UniPolyQ::new(vec![-frac(*r, 2), rat(1)]));
        }
        let q = UniPolyQ::new(vec![rat(extra), rat(0), rat(1)]);
        prop_assert_eq!(real_root_count(&p).unwrap(), roots.len());
        prop_assert_eq!(real_root_count(&p.mul(&q)).unwrap(), roots.len());
    }

    #[test]
    fn schur_round_trip(n in 1u32..7, seed in prop::collection::vec(-3i64..=5, 15)) {
        let parts = partitions(n);
        let coeffs = parts.iter().zip(seed.iter().cycle()).filter(|(_, &c)| c != 0).map(|(p, &c)| (p.clone(), c)).collect();
        let e = SymExpansion { n, basis: SymBasis::Schur, coeffs };
        let q = schur_to_monomial_qsym(&e);
        prop_assert_eq!(schur_expand(&q).unwrap(), e);
    }
}

#[test]
fn descent_sets_of_identity_and_reversal() {
    let id = Permutation::identity(6);
    assert!(statistic_set(&id, SetStat::DesR(0)).is_empty());
    let rev = id.reverse();
    assert_eq!(statistic_set(&rev, SetStat::DesR(0)), (1..6).collect::<BTreeSet<u32>>());
    assert!(statistic_set(&rev, SetStat::Bdes).is_empty());
}
