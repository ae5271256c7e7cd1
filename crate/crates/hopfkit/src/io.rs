//! Structure-constant JSON: bit-exact export and import.
//!
//! Scalars are encoded as strings ("a/b" over the rationals, decimal
//! residues over F_p) so no float ever touches the data. Serialization is
//! deterministic: two exports of the same object are byte-identical.

use crate::bialgebra::{ComultTerm, FiniteBialgebra, FiniteHopf};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::Error;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BialgebraJson {
    pub field: Field,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `mult[i][j]` = dense coefficient vector of `e_i e_j`, as scalar strings
    pub mult: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
    /// `comult[i]` = triples `(j, k, coeff)`
    pub comult: Vec<Vec<(usize, usize, String)>>,
    pub counit: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<String>>>,
    /// Degree tag per basis element, present for graded exports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    /// Module/comodule tensors over a base Hopf algebra, when applicable:
    /// `action[h][m]` = dense vector, `coaction[m]` = `(h, m_0, coeff)` triples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coaction: Option<Vec<Vec<(usize, usize, String)>>>,
}

fn encode_vec(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn decode_vec(field: Field, v: &[String]) -> Result<Vec<Scalar>, Error> {
    v.iter().map(|s| field.parse(s)).collect()
}

pub fn matrix_to_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| encode_vec(&m.row(r))).collect()
}

pub fn matrix_from_rows(field: Field, rows: &[Vec<String>]) -> Result<Matrix, Error> {
    let decoded: Result<Vec<Vec<Scalar>>, Error> =
        rows.iter().map(|r| decode_vec(field, r)).collect();
    Ok(Matrix::from_rows(field, decoded?))
}

pub fn export_bialgebra(b: &FiniteBialgebra, antipode: Option<&Matrix>) -> BialgebraJson {
    let d = b.dim();
    BialgebraJson {
        field: b.field(),
        dim: d,
        labels: b.labels().to_vec(),
        mult: (0..d)
            .map(|i| (0..d).map(|j| encode_vec(b.mult_basis(i, j))).collect())
            .collect(),
        unit: encode_vec(b.unit_vec()),
        comult: (0..d)
            .map(|i| {
                b.comult_basis(i)
                    .iter()
                    .map(|(j, k, c)| (*j, *k, c.to_string()))
                    .collect()
            })
            .collect(),
        counit: encode_vec(b.counit_vec()),
        antipode: antipode.map(matrix_to_rows),
        degrees: None,
        action: None,
        coaction: None,
    }
}

pub fn export_hopf(h: &FiniteHopf) -> BialgebraJson {
    export_bialgebra(&h.bialgebra, Some(&h.antipode))
}

pub fn import_bialgebra(json: &BialgebraJson) -> Result<FiniteBialgebra, Error> {
    let field = match json.field {
        Field::Rationals => Field::Rationals,
        Field::Prime { p } => Field::prime(p)?,
    };
    if json.labels.len() != json.dim {
        return Err(Error::ShapeMismatch("labels/dim".into()));
    }
    let mult: Result<Vec<Vec<Vec<Scalar>>>, Error> = json
        .mult
        .iter()
        .map(|row| row.iter().map(|v| decode_vec(field, v)).collect())
        .collect();
    let comult: Result<Vec<Vec<ComultTerm>>, Error> = json
        .comult
        .iter()
        .map(|terms| {
            terms
                .iter()
                .map(|(j, k, c)| Ok((*j, *k, field.parse(c)?)))
                .collect()
        })
        .collect();
    FiniteBialgebra::new(
        field,
        json.labels.clone(),
        mult?,
        decode_vec(field, &json.unit)?,
        comult?,
        decode_vec(field, &json.counit)?,
    )
}

pub fn import_hopf(json: &BialgebraJson) -> Result<FiniteHopf, Error> {
    let bialgebra = import_bialgebra(json)?;
    let rows = json
        .antipode
        .as_ref()
        .ok_or_else(|| Error::ShapeMismatch("missing antipode".into()))?;
    let antipode = matrix_from_rows(bialgebra.field(), rows)?;
    let antipode_inverse = antipode.inverse().ok();
    Ok(FiniteHopf {
        bialgebra,
        antipode,
        antipode_inverse,
    })
}

pub fn to_json_string(json: &BialgebraJson) -> String {
    serde_json::to_string_pretty(json).expect("serialization cannot fail") + "\n"
}

pub fn from_json_str(s: &str) -> Result<BialgebraJson, Error> {
    Ok(serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::group_algebra;

    #[test]
    fn round_trip_is_bit_exact() {
        let h = group_algebra(&[2, 3], Field::prime(7).unwrap());
        let json = export_hopf(&h);
        let s1 = to_json_string(&json);
        let h2 = import_hopf(&from_json_str(&s1).unwrap()).unwrap();
        assert_eq!(h2.bialgebra, h.bialgebra);
        assert_eq!(h2.antipode, h.antipode);
        let s2 = to_json_string(&export_hopf(&h2));
        assert_eq!(s1, s2);
    }

    #[test]
    fn rational_scalars_round_trip() {
        let q = Field::Rationals;
        let m = Matrix::from_fn(q, 2, 2, |r, c| {
            q.parse(&format!("{}/{}", r + 1, c + 2)).unwrap()
        });
        let rows = matrix_to_rows(&m);
        assert_eq!(rows[0][0], "1/2");
        assert_eq!(matrix_from_rows(q, &rows).unwrap(), m);
    }
}
