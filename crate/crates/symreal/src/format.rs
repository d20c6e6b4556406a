//! JSON and CSV documents read and written by the command-line tool.
//!
//! Polynomials are lists of monomial records `{"coeff": "num/den", "exps":
//! [...]}` in ascending lexicographic order of the exponent vector, which
//! runs over `x¹..x^d` and then `p₁..p_d`. Poisson input files only carry the
//! `x` exponents. Components and Poisson indices are one-based in every file.

use serde::{Deserialize, Serialize};
use symreal_core::realization::{MapKind, RealizationSeries};
use symreal_core::weights::weight_table;
use symreal_core::{
    enumerate_trees, format_rational, parse_rational, FormalSeries, PhasePoly, PoissonStructure,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] symreal_core::Error),
    #[error("{0}")]
    Schema(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialRecord {
    pub coeff: String,
    pub exps: Vec<u16>,
}

pub fn poly_records(p: &PhasePoly) -> Vec<MonomialRecord> {
    p.terms()
        .map(|(e, c)| MonomialRecord {
            coeff: format_rational(c),
            exps: e.to_vec(),
        })
        .collect()
}

/// Reads a phase-space polynomial; every exponent array must have length `2d`.
pub fn poly_from_records(dim: usize, records: &[MonomialRecord]) -> Result<PhasePoly, FormatError> {
    let terms = records
        .iter()
        .map(|r| Ok((r.exps.clone(), parse_rational(&r.coeff)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(PhasePoly::from_terms(dim, terms)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonEntryRecord {
    pub i: usize,
    pub j: usize,
    pub poly: Vec<MonomialRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonDocument {
    pub dimension: usize,
    pub entries: Vec<PoissonEntryRecord>,
}

impl PoissonDocument {
    pub fn to_structure(&self) -> Result<PoissonStructure, FormatError> {
        let d = self.dimension;
        if d == 0 {
            return Err(symreal_core::Error::ZeroDimension.into());
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.entries {
            if e.i == 0 || e.j == 0 || e.i > d || e.j > d {
                return Err(FormatError::Schema(format!(
                    "Poisson entry ({},{}) out of range 1..={d}",
                    e.i, e.j
                )));
            }
            if !seen.insert((e.i, e.j)) {
                return Err(symreal_core::Error::DuplicatePoissonEntry {
                    i: e.i - 1,
                    j: e.j - 1,
                }
                .into());
            }
            let mut terms = Vec::with_capacity(e.poly.len());
            for m in &e.poly {
                if m.exps.len() == 2 * d && m.exps[d..].iter().any(|&k| k > 0) {
                    return Err(symreal_core::Error::MomentumInPoissonEntry {
                        i: e.i - 1,
                        j: e.j - 1,
                    }
                    .into());
                }
                if m.exps.len() != d && m.exps.len() != 2 * d {
                    return Err(FormatError::Schema(format!(
                        "Poisson entry ({},{}): exponent array of length {}, expected {d}",
                        e.i,
                        e.j,
                        m.exps.len()
                    )));
                }
                let mut exps = m.exps.clone();
                exps.resize(2 * d, 0);
                terms.push((exps, parse_rational(&m.coeff)?));
            }
            entries.push((e.i - 1, e.j - 1, PhasePoly::from_terms(d, terms)?));
        }
        Ok(PoissonStructure::new(d, entries)?)
    }

    pub fn from_structure(pi: &PoissonStructure) -> Self {
        let d = pi.dimension();
        PoissonDocument {
            dimension: d,
            entries: pi
                .upper_entries()
                .map(|(i, j, p)| PoissonEntryRecord {
                    i: i + 1,
                    j: j + 1,
                    poly: poly_records(p)
                        .into_iter()
                        .map(|mut m| {
                            m.exps.truncate(d);
                            m
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Parses a Poisson structure from its JSON document.
///
/// Exponent arrays may also have length `2d` as long as the momentum part is
/// zero; anything else touching `p` is rejected.
pub fn load_poisson(text: &str) -> Result<PoissonStructure, FormatError> {
    let doc: PoissonDocument = serde_json::from_str(text)?;
    doc.to_structure()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientRecord {
    pub order: usize,
    pub component: usize,
    pub poly: Vec<MonomialRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDocument {
    pub dimension: usize,
    pub order: usize,
    pub map: String,
    pub coefficients: Vec<CoefficientRecord>,
}

impl SeriesDocument {
    /// Every coefficient for orders `0..=max_order`, zero ones included.
    pub fn from_series(r: &RealizationSeries) -> Self {
        let s = &r.series;
        let mut coefficients = Vec::new();
        for (n, row) in s.orders().enumerate() {
            for (i, c) in row.iter().enumerate() {
                coefficients.push(CoefficientRecord {
                    order: n,
                    component: i + 1,
                    poly: poly_records(c),
                });
            }
        }
        SeriesDocument {
            dimension: s.dimension(),
            order: s.max_order(),
            map: r.kind.as_str().to_string(),
            coefficients,
        }
    }

    pub fn to_series(&self) -> Result<RealizationSeries, FormatError> {
        let d = self.dimension;
        let kind: MapKind = self
            .map
            .parse()
            .map_err(|_| FormatError::Schema(format!("unknown map kind {:?}", self.map)))?;
        let mut rows: Vec<Vec<Option<PhasePoly>>> = vec![vec![None; d]; self.order + 1];
        for c in &self.coefficients {
            if c.order > self.order || c.component == 0 || c.component > d {
                return Err(FormatError::Schema(format!(
                    "coefficient (order {}, component {}) out of range",
                    c.order, c.component
                )));
            }
            let slot = &mut rows[c.order][c.component - 1];
            if slot.is_some() {
                return Err(FormatError::Schema(format!(
                    "coefficient (order {}, component {}) given twice",
                    c.order, c.component
                )));
            }
            *slot = Some(poly_from_records(d, &c.poly)?);
        }
        let coeffs = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|p| p.unwrap_or_else(|| PhasePoly::zero(d)))
                    .collect()
            })
            .collect();
        Ok(RealizationSeries {
            kind,
            series: FormalSeries::from_coeffs(d, coeffs)?,
        })
    }
}

pub fn parse_series_document(text: &str) -> Result<RealizationSeries, FormatError> {
    let doc: SeriesDocument = serde_json::from_str(text)?;
    doc.to_series()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRow {
    pub canonical: String,
    pub degree: usize,
    pub sym: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub canonical: String,
    pub degree: usize,
    pub sym: u64,
    pub weight: String,
    /// Coefficients of `I_t(θ)` in ascending powers of `θ`.
    pub angle_poly: Vec<String>,
}

fn sym_u64(t: &symreal_core::RootedTree) -> Result<u64, FormatError> {
    u64::try_from(&t.symmetry_order())
        .map_err(|_| FormatError::Schema(format!("symmetry order of {t} exceeds u64")))
}

pub fn tree_rows(max_degree: usize) -> Result<Vec<TreeRow>, FormatError> {
    enumerate_trees(max_degree)?
        .iter()
        .map(|t| {
            Ok(TreeRow {
                canonical: t.canonical_string().to_string(),
                degree: t.degree(),
                sym: sym_u64(t)?,
            })
        })
        .collect()
}

pub fn weight_rows(max_degree: usize) -> Result<Vec<WeightRow>, FormatError> {
    weight_table(max_degree)?
        .iter()
        .map(|e| {
            Ok(WeightRow {
                canonical: e.tree.canonical_string().to_string(),
                degree: e.tree.degree(),
                sym: sym_u64(&e.tree)?,
                weight: format_rational(&e.weight),
                angle_poly: e.angle_poly.coeffs().iter().map(format_rational).collect(),
            })
        })
        .collect()
}

pub fn trees_csv(rows: &[TreeRow]) -> Result<String, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    csv_string(w)
}

/// The angle polynomial column holds the coefficients separated by spaces.
pub fn weights_csv(rows: &[WeightRow]) -> Result<String, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["canonical", "degree", "sym", "weight", "angle_poly"])?;
    for r in rows {
        w.write_record([
            r.canonical.clone(),
            r.degree.to_string(),
            r.sym.to_string(),
            r.weight.clone(),
            r.angle_poly.join(" "),
        ])?;
    }
    csv_string(w)
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, FormatError> {
    let bytes = w
        .into_inner()
        .map_err(|e| FormatError::Schema(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| FormatError::Schema(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use symreal_core::realization::source_series;

    const SO3: &str = r#"{"dimension": 3, "entries": [
        {"i": 1, "j": 2, "poly": [{"coeff": "1/1", "exps": [0, 0, 1]}]},
        {"i": 2, "j": 3, "poly": [{"coeff": "1", "exps": [1, 0, 0]}]},
        {"i": 1, "j": 3, "poly": [{"coeff": "-1/1", "exps": [0, 1, 0]}]}
    ]}"#;

    #[test]
    fn loads_so3() {
        let pi = load_poisson(SO3).unwrap();
        assert_eq!(pi.dimension(), 3);
        assert_eq!(pi.entry(2, 0), PhasePoly::x(3, 1));
        assert!(symreal_core::jacobi_check(&pi).holds());
    }

    #[test]
    fn rejects_momentum_entries() {
        let doc = r#"{"dimension": 2, "entries": [
            {"i": 1, "j": 2, "poly": [{"coeff": "1/1", "exps": [0, 0, 1, 0]}]}]}"#;
        assert!(matches!(
            load_poisson(doc),
            Err(FormatError::Core(
                symreal_core::Error::MomentumInPoissonEntry { .. }
            ))
        ));
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            r#"{"dimension": 2}"#,
            r#"{"dimension": 2, "entries": [{"i": 0, "j": 2, "poly": []}]}"#,
            r#"{"dimension": 2, "entries": [{"i": 1, "j": 3, "poly": []}]}"#,
            r#"{"dimension": 2, "entries": [{"i": 1, "j": 2, "poly": []}, {"i": 1, "j": 2, "poly": []}]}"#,
            r#"{"dimension": 2, "entries": [{"i": 1, "j": 2, "poly": [{"coeff": "x", "exps": [1, 0]}]}]}"#,
            r#"{"dimension": 2, "entries": [{"i": 1, "j": 2, "poly": [{"coeff": "1", "exps": [1]}]}]}"#,
            r#"{"dimension": 2, "entries": [], "extra": 1}"#,
            r#"not json"#,
        ];
        for c in cases {
            assert!(load_poisson(c).is_err(), "{c}");
        }
    }

    #[test]
    fn poisson_document_round_trip() {
        let pi = load_poisson(SO3).unwrap();
        let doc = PoissonDocument::from_structure(&pi);
        assert_eq!(doc.to_structure().unwrap(), pi);
    }

    #[test]
    fn series_document_round_trip() {
        let pi = load_poisson(SO3).unwrap();
        let s = source_series(&pi, 3).unwrap();
        let text = serde_json::to_string(&SeriesDocument::from_series(&s)).unwrap();
        assert_eq!(parse_series_document(&text).unwrap(), s);
    }

    #[test]
    fn negative_weights_keep_their_sign() {
        let rows = weight_rows(4).unwrap();
        let chain4 = rows.iter().find(|r| r.canonical == "[[[[]]]]").unwrap();
        assert_eq!(chain4.weight, "-1/720");
    }

    #[test]
    fn csv_tables() {
        let t = trees_csv(&tree_rows(3).unwrap()).unwrap();
        assert_eq!(
            t,
            "canonical,degree,sym\n[],1,1\n[[]],2,1\n[[[]]],3,1\n[[][]],3,2\n"
        );
        let w = weights_csv(&weight_rows(2).unwrap()).unwrap();
        assert_eq!(
            w,
            "canonical,degree,sym,weight,angle_poly\n[],1,1,1/2,1/2 -1/1\n[[]],2,1,1/12,1/12 -1/2 1/2\n"
        );
    }
}
