//! Linear representations transcribed from published matrices, shipped as
//! JSON under `fixtures/`.

use serde::Deserialize;

use crate::linrep::LinRep;

pub const REP_R_JSON: &str = include_str!("../fixtures/rep_r.json");
pub const REP_RE_JSON: &str = include_str!("../fixtures/rep_re.json");
pub const REP_A_JSON: &str = include_str!("../fixtures/rep_a.json");
pub const REP_D_JSON: &str = include_str!("../fixtures/rep_d.json");
pub const PERMUTATIONS_JSON: &str = include_str!("../fixtures/permutations.json");

fn load(text: &str) -> LinRep {
    LinRep::from_json(text).expect("shipped fixture parses")
}

/// Rank 4, counting Fibonacci partitions `r(n)`.
pub fn rep_r() -> LinRep {
    load(REP_R_JSON)
}

/// Rank 8, counting partitions with an even number of parts `r_e(n)`.
pub fn rep_re() -> LinRep {
    load(REP_RE_JSON)
}

/// Rank 4, the coefficients `a(n)` of `∏ (1 − X^{F_i})`.
pub fn rep_a() -> LinRep {
    load(REP_A_JSON)
}

/// Rank 8, `d(n) = r_{4,0}(n) − r_{4,2}(n)`.
pub fn rep_d() -> LinRep {
    load(REP_D_JSON)
}

/// State permutations relating the constructed path-count representations to
/// the transcribed ones: state `i` of the fixture is state `perm[i]` of the
/// constructed representation.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct StatePermutations {
    pub r: Vec<usize>,
    pub re: Vec<usize>,
}

pub fn state_permutations() -> StatePermutations {
    serde_json::from_str(PERMUTATIONS_JSON).expect("shipped permutation file parses")
}

/// Every fixture with its short name.
pub fn all() -> Vec<(&'static str, LinRep)> {
    vec![
        ("r", rep_r()),
        ("re", rep_re()),
        ("a", rep_a()),
        ("d", rep_d()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load_with_expected_ranks() {
        let ranks: Vec<usize> = all().iter().map(|(_, r)| r.rank()).collect();
        assert_eq!(ranks, vec![4, 8, 4, 8]);
    }

    #[test]
    fn fixtures_are_in_canonical_json_form() {
        for (text, rep) in [
            (REP_R_JSON, rep_r()),
            (REP_RE_JSON, rep_re()),
            (REP_A_JSON, rep_a()),
            (REP_D_JSON, rep_d()),
        ] {
            assert_eq!(rep.to_json(), text);
        }
    }

    #[test]
    fn r_of_8_is_3() {
        assert_eq!(rep_r().evaluate_at_u64(8), crate::linrep::q(3));
    }
}
