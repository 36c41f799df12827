//! JSON interchange for [`LinRep`]. Scalars are JSON integers when they are
//! integral and fit in 64 bits, otherwise strings `"p"` or `"p/q"`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Deserialize;

use super::{LinRep, LinRepError, Matrix, Q};

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn into_q(self) -> Result<Q, LinRepError> {
        match self {
            Scalar::Int(i) => Ok(Q::from_integer(BigInt::from(i))),
            Scalar::Text(s) => parse_scalar(&s),
        }
    }
}

pub fn parse_scalar(s: &str) -> Result<Q, LinRepError> {
    let bad = || LinRepError::BadScalar(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

pub fn format_scalar(x: &Q) -> String {
    if x.denom().is_one() {
        match x.numer().to_i64() {
            Some(i) => i.to_string(),
            None => format!("\"{}\"", x.numer()),
        }
    } else {
        format!("\"{}/{}\"", x.numer(), x.denom())
    }
}

fn format_vector(v: &[Q]) -> String {
    let items: Vec<String> = v.iter().map(format_scalar).collect();
    format!("[{}]", items.join(", "))
}

fn format_matrix(m: &Matrix) -> String {
    if m.rows() == 0 {
        return "[]".to_string();
    }
    let rows: Vec<String> = (0..m.rows())
        .map(|i| format!("    {}", format_vector(m.row(i))))
        .collect();
    format!("[\n{}\n  ]", rows.join(",\n"))
}

#[derive(Deserialize)]
struct LinRepJson {
    rank: usize,
    v: Vec<Scalar>,
    mu0: Vec<Vec<Scalar>>,
    mu1: Vec<Vec<Scalar>>,
    w: Vec<Scalar>,
}

fn vector(items: Vec<Scalar>) -> Result<Vec<Q>, LinRepError> {
    items.into_iter().map(Scalar::into_q).collect()
}

fn matrix(rows: Vec<Vec<Scalar>>, rank: usize, name: &str) -> Result<Matrix, LinRepError> {
    let rows = rows
        .into_iter()
        .map(vector)
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(LinRepError::Dimension(format!(
            "{name} is not {rank}x{rank}"
        )));
    }
    Ok(if rank == 0 {
        Matrix::zeros(0, 0)
    } else {
        Matrix::from_rows(rows)
    })
}

impl LinRep {
    /// Stable, human-readable JSON with one matrix row per line.
    pub fn to_json(&self) -> String {
        format!(
            "{{\n  \"rank\": {},\n  \"v\": {},\n  \"mu0\": {},\n  \"mu1\": {},\n  \"w\": {}\n}}\n",
            self.rank(),
            format_vector(&self.v),
            format_matrix(&self.mu[0]),
            format_matrix(&self.mu[1]),
            format_vector(&self.w),
        )
    }

    pub fn from_json(text: &str) -> Result<LinRep, LinRepError> {
        let doc: LinRepJson =
            serde_json::from_str(text).map_err(|e| LinRepError::Json(e.to_string()))?;
        let k = doc.rank;
        let v = vector(doc.v)?;
        let w = vector(doc.w)?;
        if v.len() != k || w.len() != k {
            return Err(LinRepError::Dimension(format!(
                "vectors do not have length {k}"
            )));
        }
        LinRep::new(v, matrix(doc.mu0, k, "mu0")?, matrix(doc.mu1, k, "mu1")?, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::q;
    use proptest::prelude::*;

    #[test]
    fn scalars() {
        assert_eq!(
            parse_scalar("-3/6").unwrap(),
            Q::new(BigInt::from(-1), BigInt::from(2))
        );
        assert_eq!(parse_scalar("7").unwrap(), q(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert_eq!(format_scalar(&q(-4)), "-4");
        assert_eq!(
            format_scalar(&Q::new(BigInt::from(1), BigInt::from(3))),
            "\"1/3\""
        );
        let huge = Q::from_integer(BigInt::from(u64::MAX) * 4);
        assert_eq!(
            parse_scalar(format_scalar(&huge).trim_matches('"')).unwrap(),
            huge
        );
    }

    #[test]
    fn rank_zero_round_trip() {
        let zero = LinRep::new(vec![], Matrix::zeros(0, 0), Matrix::zeros(0, 0), vec![]).unwrap();
        assert_eq!(LinRep::from_json(&zero.to_json()).unwrap(), zero);
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(LinRep::from_json("{"), Err(LinRepError::Json(_))));
        let wrong =
            r#"{"rank": 2, "v": [1, 0], "mu0": [[1]], "mu1": [[1, 0], [0, 1]], "w": [1, 1]}"#;
        assert!(matches!(
            LinRep::from_json(wrong),
            Err(LinRepError::Dimension(_))
        ));
        let bad = r#"{"rank": 1, "v": ["1/x"], "mu0": [[1]], "mu1": [[1]], "w": [1]}"#;
        assert!(matches!(
            LinRep::from_json(bad),
            Err(LinRepError::BadScalar(_))
        ));
    }

    fn scalar() -> impl Strategy<Value = Q> {
        (-50i64..50, 1i64..7).prop_map(|(n, d)| Q::new(BigInt::from(n), BigInt::from(d)))
    }

    proptest! {
        #[test]
        fn json_round_trip(k in 1usize..4, seed in proptest::collection::vec(scalar(), 48)) {
            let take = |off: usize, n: usize| seed[off..off + n].to_vec();
            let m = |off: usize| Matrix::from_rows((0..k).map(|i| take(off + i * k, k)).collect());
            let rep = LinRep::new(take(0, k), m(4), m(20), take(40, k)).unwrap();
            prop_assert_eq!(LinRep::from_json(&rep.to_json()).unwrap(), rep);
        }
    }
}
