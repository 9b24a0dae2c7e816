//! JSON input files for complexes and towers.
//!
//! Integers may be JSON numbers of any size or decimal strings; rationals may
//! additionally be strings `"p/q"`. Schema errors name the offending field.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;
use torsion_core::exact_linalg::{IntMatrix, RatMatrix};
use torsion_core::polynomials::{parse_laurent, LaurentPoly};
use torsion_core::{GroupActionData, LaurentMatrix, MetrizedComplex, TowerComplex};

use crate::error::{CliError, CliResult};

pub fn parse_json(text: &str) -> CliResult<Value> {
    Ok(serde_json::from_str(text)?)
}

fn field<'a>(obj: &'a Value, name: &str, path: &str) -> CliResult<&'a Value> {
    obj.get(name).ok_or_else(|| CliError::schema(path, format!("missing field \"{name}\"")))
}

fn array<'a>(v: &'a Value, path: &str) -> CliResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| CliError::schema(path, "expected an array"))
}

fn usize_value(v: &Value, path: &str) -> CliResult<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| CliError::schema(path, "expected a non-negative integer"))
}

pub fn int_value(v: &Value, path: &str) -> CliResult<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(CliError::schema(path, "expected an integer")),
    };
    text.parse::<BigInt>()
        .map_err(|_| CliError::schema(path, format!("\"{text}\" is not an integer")))
}

pub fn rat_value(v: &Value, path: &str) -> CliResult<BigRational> {
    if let Value::String(s) = v {
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| CliError::schema(path, format!("bad numerator in \"{s}\"")))?;
            let q: BigInt = q.trim().parse().map_err(|_| CliError::schema(path, format!("bad denominator in \"{s}\"")))?;
            if q == BigInt::from(0) {
                return Err(CliError::schema(path, "zero denominator"));
            }
            return Ok(BigRational::new(p, q));
        }
    }
    Ok(BigRational::from_integer(int_value(v, path)?))
}

fn matrix_rows<'a>(v: &'a Value, rows: usize, cols: usize, path: &str) -> CliResult<Vec<&'a Value>> {
    let r = array(v, path)?;
    if r.len() != rows {
        return Err(CliError::schema(path, format!("expected {rows} rows, found {}", r.len())));
    }
    let mut out = Vec::with_capacity(rows * cols);
    for (i, row) in r.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let row = array(row, &p)?;
        if row.len() != cols {
            return Err(CliError::schema(&p, format!("expected {cols} entries, found {}", row.len())));
        }
        out.extend(row.iter());
    }
    Ok(out)
}

pub fn int_matrix(v: &Value, rows: usize, cols: usize, path: &str) -> CliResult<IntMatrix> {
    let entries = matrix_rows(v, rows, cols, path)?;
    let data = entries
        .iter()
        .enumerate()
        .map(|(k, e)| int_value(e, &format!("{path}[{}][{}]", k / cols.max(1), k % cols.max(1))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(IntMatrix::from_entries(rows, cols, data)?)
}

fn rat_matrix(v: &Value, n: usize, path: &str) -> CliResult<RatMatrix> {
    let entries = matrix_rows(v, n, n, path)?;
    let data = entries
        .iter()
        .enumerate()
        .map(|(k, e)| rat_value(e, &format!("{path}[{}][{}]", k / n, k % n)))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(RatMatrix::from_entries(n, n, data)?)
}

/// A square integer matrix written as `"2,1;1,1"`.
pub fn parse_matrix_arg(s: &str) -> CliResult<IntMatrix> {
    let rows: Vec<Vec<BigInt>> = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| CliError::Input(format!("bad matrix entry \"{}\"", x.trim()))))
                .collect()
        })
        .collect::<CliResult<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::Input(format!("rows of \"{s}\" have different lengths")));
    }
    Ok(IntMatrix::from_entries(rows.len(), cols, rows.into_iter().flatten().collect())?)
}

fn dims_of(obj: &Value) -> CliResult<Vec<usize>> {
    let dims = array(field(obj, "dims", "$")?, "dims")?
        .iter()
        .enumerate()
        .map(|(i, d)| usize_value(d, &format!("dims[{i}]")))
        .collect::<CliResult<Vec<_>>>()?;
    if dims.is_empty() {
        return Err(CliError::schema("dims", "need at least one degree"));
    }
    Ok(dims)
}

/// A complex file with an optional group action.
#[derive(Debug, Clone)]
pub struct ComplexInput {
    pub complex: MetrizedComplex,
    pub group_action: Option<GroupActionData>,
}

/// `{"dims": [...], "differentials": [[[...]]], "grams": optional,
/// "group_action": optional list of generators, each a matrix per degree}`;
/// `differentials[j]` has `dims[j+1]` rows and `dims[j]` columns.
pub fn complex_from_json(v: &Value) -> CliResult<ComplexInput> {
    let dims = dims_of(v)?;
    let diffs_v = array(field(v, "differentials", "$")?, "differentials")?;
    if diffs_v.len() + 1 != dims.len() {
        return Err(CliError::schema(
            "differentials",
            format!("expected {} matrices for {} degrees, found {}", dims.len() - 1, dims.len(), diffs_v.len()),
        ));
    }
    let diffs = diffs_v
        .iter()
        .enumerate()
        .map(|(j, d)| int_matrix(d, dims[j + 1], dims[j], &format!("differentials[{j}]")))
        .collect::<CliResult<Vec<_>>>()?;
    let grams = match v.get("grams") {
        None | Some(Value::Null) => None,
        Some(g) => {
            let g = array(g, "grams")?;
            if g.len() != dims.len() {
                return Err(CliError::schema("grams", format!("expected {} matrices, found {}", dims.len(), g.len())));
            }
            Some(
                g.iter()
                    .enumerate()
                    .map(|(j, m)| rat_matrix(m, dims[j], &format!("grams[{j}]")))
                    .collect::<CliResult<Vec<_>>>()?,
            )
        }
    };
    let group_action = match v.get("group_action") {
        None | Some(Value::Null) => None,
        Some(g) => {
            let gens = array(g, "group_action")?;
            let mut out = Vec::with_capacity(gens.len());
            for (s, gen) in gens.iter().enumerate() {
                let p = format!("group_action[{s}]");
                let mats = array(gen, &p)?;
                if mats.len() != dims.len() {
                    return Err(CliError::schema(&p, format!("expected one matrix per degree ({})", dims.len())));
                }
                out.push(
                    mats.iter()
                        .enumerate()
                        .map(|(j, m)| int_matrix(m, dims[j], dims[j], &format!("{p}[{j}]")))
                        .collect::<CliResult<Vec<_>>>()?,
                );
            }
            Some(GroupActionData::new(out))
        }
    };
    let complex = MetrizedComplex::new(dims, diffs, grams)?;
    Ok(ComplexInput { complex, group_action })
}

fn laurent_entry(v: &Value, m: usize, path: &str) -> CliResult<LaurentPoly> {
    match v {
        Value::String(s) => {
            let p = parse_laurent(s).map_err(|e| CliError::schema(path, e.to_string()))?;
            if p.nvars() > m {
                return Err(CliError::schema(path, format!("uses {} variables, m = {m}", p.nvars())));
            }
            Ok(p.with_nvars(m)?)
        }
        Value::Number(_) => Ok(LaurentPoly::constant(int_value(v, path)?).with_nvars(m)?),
        Value::Array(terms) => {
            let mut p = LaurentPoly::zero_in(m);
            for (i, t) in terms.iter().enumerate() {
                let tp = format!("{path}[{i}]");
                let exp = array(field(t, "exp", &tp)?, &format!("{tp}.exp"))?;
                if exp.len() != m {
                    return Err(CliError::schema(format!("{tp}.exp"), format!("expected {m} exponents, found {}", exp.len())));
                }
                let exps = exp
                    .iter()
                    .enumerate()
                    .map(|(k, e)| {
                        e.as_i64().ok_or_else(|| CliError::schema(format!("{tp}.exp[{k}]"), "expected a small integer"))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let coef = int_value(field(t, "coef", &tp)?, &format!("{tp}.coef"))?;
                p.add_term(exps, coef);
            }
            Ok(p)
        }
        _ => Err(CliError::schema(path, "expected a list of {\"exp\", \"coef\"} terms or a polynomial string")),
    }
}

/// `{"m": 1, "dims": [...], "differentials": [...]}` where every matrix entry
/// is a list of `{"exp": [k], "coef": c}` terms (or a string like `"1 - 2t"`).
pub fn tower_from_json(v: &Value) -> CliResult<TowerComplex> {
    let m = usize_value(field(v, "m", "$")?, "m")?;
    if m == 0 {
        return Err(CliError::schema("m", "need at least one variable"));
    }
    let dims = dims_of(v)?;
    let diffs_v = array(field(v, "differentials", "$")?, "differentials")?;
    if diffs_v.len() + 1 != dims.len() {
        return Err(CliError::schema(
            "differentials",
            format!("expected {} matrices for {} degrees, found {}", dims.len() - 1, dims.len(), diffs_v.len()),
        ));
    }
    let mut diffs = Vec::with_capacity(diffs_v.len());
    for (j, d) in diffs_v.iter().enumerate() {
        let path = format!("differentials[{j}]");
        let (rows, cols) = (dims[j + 1], dims[j]);
        let entries = matrix_rows(d, rows, cols, &path)?;
        let data = entries
            .iter()
            .enumerate()
            .map(|(k, e)| laurent_entry(e, m, &format!("{path}[{}][{}]", k / cols.max(1), k % cols.max(1))))
            .collect::<CliResult<Vec<_>>>()?;
        diffs.push(LaurentMatrix::from_entries(rows, cols, m, data)?);
    }
    Ok(TowerComplex::new(m, dims, diffs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_schema_errors_name_fields() {
        let v = parse_json(r#"{"dims":[1,2],"differentials":[[[1],["x"]]]}"#).unwrap();
        let e = complex_from_json(&v).unwrap_err().to_string();
        assert!(e.contains("differentials[0][1][0]"), "{e}");
        let v = parse_json(r#"{"dims":[1,2],"differentials":[[[1]]]}"#).unwrap();
        let e = complex_from_json(&v).unwrap_err().to_string();
        assert!(e.contains("expected 2 rows"), "{e}");
        let e = parse_json("{\"dims\": [1,\n 2,}").unwrap_err();
        assert!(matches!(e, CliError::Json { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn big_integers_are_exact() {
        let big = "123456789012345678901234567890";
        let v = parse_json(&format!(r#"{{"dims":[1,1],"differentials":[[[{big}]]]}}"#)).unwrap();
        let c = complex_from_json(&v).unwrap().complex;
        assert_eq!(c.differentials()[0].get(0, 0).to_string(), big);
    }

    #[test]
    fn tower_terms_and_strings_agree() {
        let a = parse_json(r#"{"m":1,"dims":[1,1],"differentials":[[[[{"exp":[0],"coef":1},{"exp":[1],"coef":-2}]]]]}"#).unwrap();
        let b = parse_json(r#"{"m":1,"dims":[1,1],"differentials":[[["1 - 2t"]]]}"#).unwrap();
        assert_eq!(tower_from_json(&a).unwrap(), tower_from_json(&b).unwrap());
    }

    #[test]
    fn matrix_arg() {
        let m = parse_matrix_arg("2,1; 1,1").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[2i64, 1], [1, 1]]));
        assert!(parse_matrix_arg("1,2;3").is_err());
    }
}
