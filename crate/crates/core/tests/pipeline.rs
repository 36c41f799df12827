use fibrep::constructions::{self, GradedRep};
use fibrep::linrep::matrix::q;
use fibrep::oracle;
use fibrep::pairdfa::PairDfa;
use fibrep::semigroup::{build_dfao, orbit_closure, DEFAULT_ORBIT_CAP};
use fibrep::{fixtures, BitString, LinRep, Q};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Number of x of the same length as y with (x, y) accepted.
fn count_by_enumeration(d: &PairDfa, y: &BitString) -> u64 {
    BitString::all_of_length(y.len())
        .filter(|x| d.accepts_pair(x, y).unwrap())
        .count() as u64
}

#[test]
fn path_counts_match_enumeration() {
    let d = constructions::normalization_dfa();
    let rep = LinRep::from_dfa(&d);
    for len in 0..=10 {
        for y in BitString::all_of_length(len) {
            assert_eq!(
                rep.evaluate(&y),
                q(count_by_enumeration(&d, &y) as i64),
                "y = {y}"
            );
        }
    }
}

#[test]
fn graded_path_counts_match_enumeration() {
    for m in [2usize, 3] {
        for residue in 0..m {
            let d = constructions::counted_normalization_dfa(m, residue);
            let rep = LinRep::from_dfa(&d);
            for len in 0..=7 {
                for y in BitString::all_of_length(len) {
                    assert_eq!(rep.evaluate(&y), q(count_by_enumeration(&d, &y) as i64));
                }
            }
        }
    }
}

#[test]
fn graded_residues_match_oracle() {
    const LIMIT: u64 = 2000;
    for m in [2usize, 3, 4] {
        let graded = GradedRep::new(m);
        let table = oracle::expand(LIMIT, m).unwrap();
        for j in 0..m {
            let rep = graded.residue(j).minimize();
            for n in 0..=LIMIT {
                let expected = Q::from_integer(BigInt::from(table.count(n, j).clone()));
                assert_eq!(
                    rep.evaluate_at_u64(n),
                    expected,
                    "m = {m}, j = {j}, n = {n}"
                );
            }
        }
    }
}

#[test]
fn minimized_constructions_match_fixtures() {
    assert!(constructions::rep_r()
        .minimize()
        .equivalent(&fixtures::rep_r()));
    assert!(constructions::rep_re()
        .minimize()
        .equivalent(&fixtures::rep_re()));
    assert_eq!(constructions::rep_r().minimize().rank(), 4);
    assert_eq!(constructions::rep_re().minimize().rank(), 8);
    assert!(constructions::rep_d().equivalent(&fixtures::rep_d()));
}

#[test]
fn mod3_dfaos_reproduce_oracle_differences() {
    const LIMIT: u64 = 3000;
    let table = oracle::expand(LIMIT, 3).unwrap();
    for i in 0..3 {
        let rep = constructions::rep_mod3_difference(i);
        let orbit = orbit_closure(&rep, DEFAULT_ORBIT_CAP).unwrap();
        let automaton = build_dfao(&orbit, rep.w()).unwrap();
        for n in 0..=LIMIT {
            let expected = BigInt::from(table.count(n, i).clone())
                - BigInt::from(table.count(n, (i + 1) % 3).clone());
            assert_eq!(automaton.value_at(n), &expected, "difference {i}, n = {n}");
        }
    }
}

#[test]
fn dfao_json_round_trip() {
    let rep = fixtures::rep_a();
    let automaton = build_dfao(&orbit_closure(&rep, DEFAULT_ORBIT_CAP).unwrap(), rep.w()).unwrap();
    let text = automaton.to_json();
    let back = fibrep::Dfao::from_json(&text).unwrap();
    assert_eq!(back.to_json(), text);
    for n in 0..500 {
        assert_eq!(back.value_at(n), automaton.value_at(n));
    }
}

fn bitstring() -> impl Strategy<Value = BitString> {
    proptest::collection::vec(0u8..=1, 0..24).prop_map(|d| BitString::from_digits(d).unwrap())
}

proptest! {
    #[test]
    fn combine_is_linear(a in -5i64..=5, b in -5i64..=5, x in bitstring()) {
        let r = fixtures::rep_r();
        let re = fixtures::rep_re();
        let c = LinRep::combine(&[q(a), q(b)], &[r.clone(), re.clone()]).unwrap();
        prop_assert_eq!(c.evaluate(&x), q(a) * r.evaluate(&x) + q(b) * re.evaluate(&x));
    }

    #[test]
    fn minimization_preserves_values(x in bitstring()) {
        let full = constructions::rep_a_unminimized();
        prop_assert_eq!(full.minimize().evaluate(&x), full.evaluate(&x));
    }

    #[test]
    fn leading_zeros_do_not_change_values(n in 0u64..1_000_000, pad in 0usize..6) {
        let a = fixtures::rep_a();
        let x = BitString::filled(false, pad).concat(&fibrep::fibnum::to_canonical_u64(n));
        prop_assert_eq!(a.evaluate(&x), a.evaluate_at_u64(n));
    }
}
