use motivic_core::analysis::{self, AnalysisOptions, PolyStatus};
use motivic_core::enumerate::{self as en, Budget, Parallelism};
use motivic_core::{catalog, parse_space, Atom, SpaceExpr};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow};
use proptest::prelude::*;

fn b() -> Budget {
    Budget::default()
}

fn small_prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn matrix_histograms_cover_the_search_space(n in 1usize..=3, p in small_prime()) {
        let par = en::count_matrices_by_rank(n, p, &b(), Parallelism::Parallel).unwrap();
        let seq = en::count_matrices_by_rank(n, p, &b(), Parallelism::Sequential).unwrap();
        prop_assert_eq!(par.total(), Pow::pow(BigUint::from(p), (n * n) as u32));
        prop_assert_eq!(par, seq);
    }

    #[test]
    fn symmetric_histograms_cover_the_search_space(n in 1usize..=3, p in small_prime()) {
        let par = en::count_symmetric(n, p, &b(), Parallelism::Parallel).unwrap();
        let seq = en::count_symmetric(n, p, &b(), Parallelism::Sequential).unwrap();
        prop_assert_eq!(par.total(), Pow::pow(BigUint::from(p), (n * (n + 1) / 2) as u32));
        prop_assert_eq!(par, seq);
    }

    #[test]
    fn alternating_histograms_have_no_odd_rank(half in 1usize..=2, p in small_prime()) {
        let n = 2 * half;
        let h = en::count_alternating_by_rank(n, p, &b(), Parallelism::Parallel).unwrap();
        prop_assert_eq!(h.total(), Pow::pow(BigUint::from(p), (n * (n - 1) / 2) as u32));
        for r in (1..=n).step_by(2) {
            prop_assert_eq!(h.get(r), BigUint::from(0u32));
        }
    }
}

#[test]
fn incidence_routes_agree() {
    for n in 2..=4 {
        for p in [3, 5] {
            let inc = en::count_incidence(n, p, &b(), Parallelism::Parallel).unwrap();
            assert_eq!(inc.via_strata, inc.via_bundle, "n={n} p={p}");
        }
    }
}

#[test]
fn special_quotients_verify_as_integer_polynomials() {
    let opts = AnalysisOptions::default();
    let mut atoms = vec![Atom::PAlt(4), Atom::SLrep { n: 2, weights: vec![1] }];
    for n in 1..=2 {
        atoms.push(Atom::LSp(n));
        atoms.push(Atom::B(2 * n));
        for p in 0..=n {
            atoms.push(Atom::XSp { p, n });
        }
    }
    for atom in atoms {
        let expr = SpaceExpr::atom(atom);
        let rep = analysis::verify_space(&expr, &[3, 5, 7], &opts).unwrap();
        assert!(rep.agrees(), "{}: {:?}", rep.space, rep.verdict);
        let v = rep.poly.verdict.expect("enough points");
        assert_eq!(v.status, PolyStatus::IntegerPolynomial, "{}", rep.space);
        assert!(v.fitted.unwrap().same_value(&catalog::symbolic_class(&expr).unwrap()));
    }
}

#[test]
fn even_orthogonal_quotients_have_denominator_two() {
    let opts = AnalysisOptions::default();
    for m in 1..=3 {
        for sign in ['+', '-'] {
            let expr = parse_space(&format!("GLmodO({},{sign})", 2 * m)).unwrap();
            let v = analysis::detect_polynomial(&expr, &[3, 5, 7], &opts).unwrap().verdict.unwrap();
            assert_eq!(v.status, PolyStatus::RationalPolynomial, "{expr}");
            let d = v.denominator.unwrap();
            assert!(!d.is_one() && (BigInt::from(2) % &d) == BigInt::from(0), "{expr}: denominator {d}");
        }
    }
}

#[test]
fn odd_orthogonal_quotient_counts_are_rational_in_q() {
    // |GL_3|/|O_3| = q^2 (q^3 - 1)(q - 1) / 2
    let opts = AnalysisOptions::default();
    let rep = analysis::verify_space(&parse_space("GLmodO(3)").unwrap(), &[3, 5, 7], &opts).unwrap();
    assert!(rep.agrees());
    assert!(rep.records.iter().all(|r| r.enumeration.is_some() && r.formula.is_some()));
    let v = rep.poly.verdict.unwrap();
    assert_eq!(v.status, PolyStatus::RationalPolynomial);
    assert_eq!(v.denominator, Some(BigInt::from(2)));
}

#[test]
fn semismall_through_fifty() {
    for n in 3..=50 {
        let rep = analysis::check_semismall(n).unwrap();
        assert!(rep.all_pass);
        assert_eq!(rep.relevant_ranks, vec![n - 2, n - 1]);
    }
}
