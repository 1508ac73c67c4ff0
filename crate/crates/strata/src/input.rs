//! JSON algebra files: field, presentation, order, named subalgebras and
//! multiplicity tables.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::algebra::{compile_quiver, Algebra, Idempotent, QuiverPresentation};
use crate::error::{Error, Result};
use crate::kernel::{zero_vec, Field, Matrix, Scalar};
use crate::strat::LabelPoset;
use crate::vmult::MultTables;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    description: Option<String>,
    #[serde(default)]
    claims: Vec<String>,
    field: Value,
    presentation: Value,
    #[serde(default)]
    order: Vec<(String, String)>,
    #[serde(default)]
    subalgebras: BTreeMap<String, Value>,
    #[serde(default)]
    tables: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuiver {
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
    #[serde(default)]
    relations: Vec<Vec<(Value, Vec<String>)>>,
    max_path_length: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    basis: Vec<String>,
    table: Vec<(String, String, Value)>,
    unit: Value,
    idempotents: Vec<RawIdempotent>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdempotent {
    coords: Value,
    label: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubalgebra {
    generators: Vec<Value>,
    #[serde(default)]
    idempotents: Vec<RawIdempotent>,
}

/// Generators of a subalgebra and, optionally, its idempotent family.
#[derive(Clone, Debug)]
pub struct SubalgebraDef {
    pub generators: Vec<Vec<Scalar>>,
    pub idempotents: Vec<(Vec<Scalar>, String)>,
}

/// A parsed and validated algebra file.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub name: Option<String>,
    pub description: Option<String>,
    pub claims: Vec<String>,
    pub algebra: Algebra,
    pub poset: LabelPoset,
    pub subalgebras: BTreeMap<String, SubalgebraDef>,
    pub tables: Option<MultTables>,
}

fn parse_field(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) if s == "Q" => Ok(Field::Q),
        Value::Object(m) if m.len() == 1 && m.contains_key("Fp") => {
            let p = m["Fp"]
                .as_u64()
                .ok_or_else(|| Error::Parse("Fp needs a positive integer".into()))?;
            Field::prime(p)
        }
        _ => Err(Error::Parse(format!("field must be \"Q\" or {{\"Fp\": p}}, got {v}"))),
    }
}

fn field_json(f: Field) -> Value {
    match f.characteristic() {
        0 => json!("Q"),
        p => json!({ "Fp": p }),
    }
}

fn parse_scalar(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|k| field.int(k))
            .ok_or_else(|| Error::Parse(format!("coefficient {n} is not an integer; use a string like \"1/2\""))),
        Value::String(s) => field.parse(s),
        _ => Err(Error::Parse(format!("bad coefficient {v}"))),
    }
}

fn scalar_json(x: &Scalar) -> Value {
    if x.field().characteristic() == 0 {
        match x.to_i64() {
            Some(k) => json!(k),
            None => json!(x.to_string()),
        }
    } else {
        json!(x.to_i64().expect("residue"))
    }
}

/// Element syntax: a basis name, a path as a list of arrow names, or an
/// object mapping terms to coefficients.
pub fn parse_element(a: &Algebra, v: &Value) -> Result<Vec<Scalar>> {
    let field = a.field();
    let term = |t: &str| -> Result<Vec<Scalar>> {
        a.element_by_name(t).or_else(|e| {
            if a.has_quiver() {
                a.path_element(&[t.to_string()])
            } else {
                Err(e)
            }
        })
    };
    match v {
        Value::String(s) => term(s),
        Value::Array(xs) => {
            let arrows: Vec<String> = xs
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::Parse(format!("path entries must be arrow names, got {x}")))
                })
                .collect::<Result<_>>()?;
            a.path_element(&arrows)
        }
        Value::Object(m) => {
            let mut out = a.zero();
            for (k, c) in m {
                let c = parse_scalar(field, c)?;
                for (o, x) in out.iter_mut().zip(term(k)?) {
                    *o = &*o + &(&c * &x);
                }
            }
            Ok(out)
        }
        _ => Err(Error::Parse(format!("bad element {v}"))),
    }
}

fn parse_structure(field: Field, raw: RawStructure) -> Result<Algebra> {
    let n = raw.basis.len();
    let idx = |s: &str| -> Result<usize> {
        raw.basis
            .iter()
            .position(|b| b == s)
            .ok_or_else(|| Error::Parse(format!("unknown basis element {s:?}")))
    };
    let vector = |v: &Value| -> Result<Vec<Scalar>> {
        let mut out = zero_vec(field, n);
        match v {
            Value::String(s) => out[idx(s)?] = field.one(),
            Value::Object(m) => {
                for (k, c) in m {
                    out[idx(k)?] = parse_scalar(field, c)?;
                }
            }
            _ => return Err(Error::Parse(format!("bad element {v}"))),
        }
        Ok(out)
    };
    let mut table = vec![vec![zero_vec(field, n); n]; n];
    for (x, y, z) in &raw.table {
        table[idx(x)?][idx(y)?] = vector(z)?;
    }
    let unit = vector(&raw.unit)?;
    let idem = raw
        .idempotents
        .iter()
        .map(|e| {
            Ok(Idempotent {
                coords: vector(&e.coords)?,
                label: e.label.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Algebra::from_structure(field, raw.basis.clone(), table, unit, idem)
}

fn parse_presentation(field: Field, v: &Value) -> Result<Algebra> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("presentation must be an object".into()))?;
    if let Some(sc) = obj.get("structure_constants") {
        if obj.len() != 1 {
            return Err(Error::Parse(
                "structure_constants must be the only presentation key".into(),
            ));
        }
        let raw: RawStructure = serde_json::from_value(sc.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        return parse_structure(field, raw);
    }
    let raw: RawQuiver = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let relations = raw
        .relations
        .iter()
        .map(|r| {
            r.iter()
                .map(|(c, p)| Ok((parse_scalar(field, c)?, p.clone())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let p = QuiverPresentation {
        vertices: raw.vertices,
        arrows: raw.arrows,
        relations,
        max_path_length: raw.max_path_length,
    };
    compile_quiver(&p, field)
}

/// Parses and validates an algebra file. Errors carry line and column for
/// malformed JSON.
pub fn parse(text: &str) -> Result<AlgebraFile> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> Result<AlgebraFile> {
    let raw: RawFile = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let field = parse_field(&raw.field)?;
    let algebra = parse_presentation(field, &raw.presentation)?;
    let poset = LabelPoset::from_pairs(algebra.labels().to_vec(), &raw.order)?;
    let mut subalgebras = BTreeMap::new();
    for (name, v) in &raw.subalgebras {
        let def = match v {
            Value::Array(_) => RawSubalgebra {
                generators: serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?,
                idempotents: Vec::new(),
            },
            _ => serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("subalgebra {name}: {e}")))?,
        };
        let generators = def
            .generators
            .iter()
            .map(|g| parse_element(&algebra, g))
            .collect::<Result<_>>()?;
        let idempotents = def
            .idempotents
            .iter()
            .map(|e| Ok((parse_element(&algebra, &e.coords)?, e.label.clone())))
            .collect::<Result<_>>()?;
        subalgebras.insert(
            name.clone(),
            SubalgebraDef {
                generators,
                idempotents,
            },
        );
    }
    let tables = raw.tables.as_ref().map(MultTables::from_json).transpose()?;
    Ok(AlgebraFile {
        name: raw.name,
        description: raw.description,
        claims: raw.claims,
        algebra,
        poset,
        subalgebras,
        tables,
    })
}

impl AlgebraFile {
    /// The named subalgebra and its embedding.
    pub fn subalgebra(&self, name: &str) -> Result<(Algebra, Matrix)> {
        let def = self
            .subalgebras
            .get(name)
            .ok_or_else(|| Error::Parse(format!("no subalgebra named {name:?}")))?;
        self.algebra.subalgebra_closure(&def.generators, &def.idempotents)
    }

    /// Idempotent summing the family over the given labels.
    pub fn idempotent(&self, labels: &[String]) -> Result<Vec<Scalar>> {
        crate::compat::idempotent_for_labels(&self.algebra, labels)
    }
}

/// Structure-constant file for any algebra, with an order on its labels.
pub fn export(a: &Algebra, poset: &LabelPoset, name: Option<&str>) -> Value {
    let names = a.basis_names();
    let element = |v: &[Scalar]| -> Value {
        let mut m = Map::new();
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                m.insert(names[i].clone(), scalar_json(x));
            }
        }
        Value::Object(m)
    };
    let mut table = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let p = a.mul(&a.basis_vector(i), &a.basis_vector(j));
            if p.iter().any(|x| !x.is_zero()) {
                table.push(json!([names[i], names[j], element(&p)]));
            }
        }
    }
    let mut out = json!({
        "field": field_json(a.field()),
        "presentation": {"structure_constants": {
            "basis": names,
            "table": table,
            "unit": element(a.unit()),
            "idempotents": a.idempotents().iter().map(|e| json!({"coords": element(&e.coords), "label": e.label})).collect::<Vec<_>>(),
        }},
        "order": poset.cover_pairs(),
    });
    if let Some(n) = name {
        out["name"] = json!(n);
    }
    out
}

/// Whether two algebras have the same basis names, products, unit and
/// idempotent family.
pub fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    a.field() == b.field()
        && a.basis_names() == b.basis_names()
        && a.unit() == b.unit()
        && a.idempotents() == b.idempotents()
        && (0..a.dim()).all(|i| {
            (0..a.dim())
                .all(|j| a.mul(&a.basis_vector(i), &a.basis_vector(j)) == b.mul(&b.basis_vector(i), &b.basis_vector(j)))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = r#"{
        "field": "Q",
        "presentation": {"vertices": ["1", "2"], "arrows": [["a", "1", "2"]], "max_path_length": 2},
        "order": [["1", "2"]]
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let f = parse(LINE).unwrap();
        assert_eq!(f.algebra.dim(), 3);
        assert!(f.poset.leq(0, 1));
        let g = from_value(&export(&f.algebra, &f.poset, Some("line"))).unwrap();
        assert!(same_algebra(&f.algebra, &g.algebra));
        assert_eq!(g.poset, f.poset);
    }

    #[test]
    fn rejects_bad_input() {
        let mut v: Value = serde_json::from_str(LINE).unwrap();
        v["colour"] = json!("red");
        assert!(matches!(from_value(&v), Err(Error::Parse(_))));
        let err = parse("{\n \"field\": }").unwrap_err();
        assert!(err.to_string().contains("line 2"));
        let mut v: Value = serde_json::from_str(LINE).unwrap();
        v["field"] = json!({"Fp": 4});
        assert!(from_value(&v).is_err());
    }

    #[test]
    fn elements() {
        let f = parse(LINE).unwrap();
        let a = &f.algebra;
        let x = parse_element(a, &json!({"a": 2, "e1": "1/2"})).unwrap();
        assert_eq!(a.vector_name(&x), "(1/2)e1+(2)a");
        assert_eq!(
            parse_element(a, &json!(["a"])).unwrap(),
            parse_element(a, &json!("a")).unwrap()
        );
    }
}
