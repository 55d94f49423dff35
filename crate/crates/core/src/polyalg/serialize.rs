//! JSON form of a homogeneous polynomial:
//! `{"d":3,"l":3,"terms":[{"e":[2,1,0],"c":"3/2"},...]}` with terms in
//! descending graded-lex order and coefficients as exact rational strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

use super::{HomogeneousPolynomial, Monomial};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub d: usize,
    pub l: usize,
    pub terms: Vec<TermJson>,
}

impl From<&HomogeneousPolynomial> for PolynomialJson {
    fn from(p: &HomogeneousPolynomial) -> Self {
        PolynomialJson {
            d: p.dim(),
            l: p.degree(),
            terms: p
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    e: m.exponents().to_vec(),
                    c: format_rational(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolynomialJson> for HomogeneousPolynomial {
    type Error = Error;

    fn try_from(j: PolynomialJson) -> Result<Self> {
        let terms = j
            .terms
            .into_iter()
            .map(|t| Ok((Monomial::new(t.e), parse_rational(&t.c)?)))
            .collect::<Result<Vec<_>>>()?;
        HomogeneousPolynomial::from_terms(j.d, j.l, terms)
    }
}

impl Serialize for HomogeneousPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomogeneousPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolynomialJson::deserialize(d)?;
        j.try_into().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_matches_spec_shape() {
        let p = HomogeneousPolynomial::parse(3, "3/2*x1^2*x2 - x3^3").unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"d":3,"l":3,"terms":[{"e":[2,1,0],"c":"3/2"},{"e":[0,0,3],"c":"-1"}]}"#
        );
        let q: HomogeneousPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn json_rejects_inhomogeneous_input() {
        let bad = r#"{"d":3,"l":2,"terms":[{"e":[1,0,0],"c":"1"}]}"#;
        assert!(serde_json::from_str::<HomogeneousPolynomial>(bad).is_err());
    }
}
