//! The algebra file: structure constants as JSON with sparse entries.
//!
//! Sparse entries are sorted lexicographically by index and scalars are
//! written in canonical form, so emit → parse → emit is byte-identical.

use serde::Deserialize;
use serde_json::Value;

use crate::coalg::{Coalgebra, Functional};
use crate::cqbialg::{Antipode, CoquasiBialgebra};
use crate::engine::{Lin, Split};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

pub const FORMAT: &str = "coquasi-algebra/1";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format: String,
    name: String,
    field: String,
    dim: usize,
    basis_names: Vec<String>,
    delta: Vec<Vec<Value>>,
    counit: Vec<String>,
    product: Vec<Vec<Value>>,
    unit: Vec<String>,
    #[serde(default)]
    phi: Vec<Vec<Value>>,
    #[serde(default)]
    antipode: Option<RawAntipode>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAntipode {
    s: Vec<Vec<Value>>,
    alpha: Vec<String>,
    beta: Vec<String>,
}

pub fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
        return Ok(Field::Rational);
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix('F'))
        .or_else(|| t.strip_prefix("GF"))
        .ok_or_else(|| Error::Parse(format!("unknown field {s:?}; use Q or GF(p)")))?;
    let p: u64 = inner.parse().map_err(|_| Error::Parse(format!("bad prime in field {s:?}")))?;
    Field::prime(p)
}

/// One sparse entry: `arity` indices below `dim` and a trailing scalar.
fn entry(field: Field, dim: usize, arity: usize, what: &str, raw: &[Value]) -> Result<(Vec<usize>, Scalar)> {
    let shown = || serde_json::to_string(raw).unwrap_or_default();
    if raw.len() != arity + 1 {
        return Err(Error::Validation(format!("{what} entry {} needs {arity} indices and a scalar", shown())));
    }
    let mut idx = Vec::with_capacity(arity);
    for v in &raw[..arity] {
        let i = v.as_u64().ok_or_else(|| Error::Parse(format!("{what} entry {}: index is not a count", shown())))? as usize;
        if i >= dim {
            return Err(Error::Validation(format!("{what} entry {}: index {i} out of range for dim {dim}", shown())));
        }
        idx.push(i);
    }
    let c = match &raw[arity] {
        Value::String(s) => Scalar::parse(field, s),
        Value::Number(n) => Scalar::parse(field, &n.to_string()),
        _ => Err(Error::Parse("scalar must be a string or an integer".into())),
    }
    .map_err(|e| Error::Validation(format!("{what} entry {}: {e}", shown())))?;
    Ok((idx, c))
}

fn entries(field: Field, dim: usize, arity: usize, what: &str, raw: &[Vec<Value>]) -> Result<Vec<(Vec<usize>, Scalar)>> {
    let mut out: Vec<(Vec<usize>, Scalar)> = Vec::with_capacity(raw.len());
    for r in raw {
        let (idx, c) = entry(field, dim, arity, what, r)?;
        if out.iter().any(|(j, _)| *j == idx) {
            return Err(Error::Validation(format!("{what} entry {idx:?} appears twice")));
        }
        out.push((idx, c));
    }
    Ok(out)
}

fn vector(field: Field, dim: usize, what: &str, raw: &[String]) -> Result<Vec<Scalar>> {
    if raw.len() != dim {
        return Err(Error::Validation(format!("{what} has {} entries, expected {dim}", raw.len())));
    }
    raw.iter()
        .enumerate()
        .map(|(i, s)| Scalar::parse(field, s).map_err(|e| Error::Validation(format!("{what}[{i}]: {e}"))))
        .collect()
}

/// Parses and validates the text of an algebra file. Axioms are not
/// checked here.
pub fn parse_algebra_str(text: &str) -> Result<CoquasiBialgebra> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.format != FORMAT {
        return Err(Error::Parse(format!("format {:?}, expected {FORMAT:?}", raw.format)));
    }
    let field = parse_field(&raw.field)?;
    let n = raw.dim;
    if n == 0 {
        return Err(Error::Validation("dim must be positive".into()));
    }
    if raw.basis_names.len() != n {
        return Err(Error::Validation(format!("{} basis names for dim {n}", raw.basis_names.len())));
    }
    let mut delta: Split = vec![Vec::new(); n];
    for (idx, c) in entries(field, n, 3, "delta", &raw.delta)? {
        delta[idx[0]].push((idx[1], idx[2], c));
    }
    let counit = vector(field, n, "counit", &raw.counit)?;
    let coalg = Coalgebra::new(field, raw.basis_names.clone(), delta, counit)?;
    let mut prod: Lin = vec![Vec::new(); n * n];
    for (idx, c) in entries(field, n, 3, "product", &raw.product)? {
        prod[idx[0] * n + idx[1]].push((idx[2], c));
    }
    let unit = vector(field, n, "unit", &raw.unit)?;
    let mut phi = vec![field.zero(); n * n * n];
    for (idx, c) in entries(field, n, 3, "phi", &raw.phi)? {
        phi[(idx[0] * n + idx[1]) * n + idx[2]] = c;
    }
    let phi = Functional::new(field, n, 3, phi)?;
    let antipode = match raw.antipode {
        None => None,
        Some(a) => {
            let mut s = Matrix::zeros(field, n, n);
            for (idx, c) in entries(field, n, 2, "antipode.s", &a.s)? {
                s.set(idx[0], idx[1], c);
            }
            Some(Antipode { s, alpha: vector(field, n, "alpha", &a.alpha)?, beta: vector(field, n, "beta", &a.beta)? })
        }
    };
    CoquasiBialgebra::new(raw.name, coalg, prod, unit, phi, antipode)
}

pub fn parse_algebra(path: &std::path::Path) -> Result<(CoquasiBialgebra, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| Error::Parse(format!("{} is not UTF-8", path.display())))?;
    Ok((parse_algebra_str(text)?, bytes))
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn sparse(out: &mut String, key: &str, mut rows: Vec<(Vec<usize>, String)>, last: bool) {
    rows.sort();
    out.push_str(&format!("  {}: [", quote(key)));
    for (k, (idx, c)) in rows.iter().enumerate() {
        let ids: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        out.push_str(if k == 0 { "\n" } else { ",\n" });
        out.push_str(&format!("    [{}, {}]", ids.join(", "), quote(c)));
    }
    out.push_str(if rows.is_empty() { "]" } else { "\n  ]" });
    out.push_str(if last { "\n" } else { ",\n" });
}

fn dense(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|c| quote(&c.to_canonical())).collect();
    format!("[{}]", parts.join(", "))
}

fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("GF({p})"),
    }
}

/// Canonical text of an algebra file.
pub fn emit_algebra(h: &CoquasiBialgebra) -> String {
    let n = h.dim();
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"format\": {},\n", quote(FORMAT)));
    out.push_str(&format!("  \"name\": {},\n", quote(h.name())));
    out.push_str(&format!("  \"field\": {},\n", quote(&field_name(h.field()))));
    out.push_str(&format!("  \"dim\": {n},\n"));
    let names: Vec<String> = h.names().iter().map(|s| quote(s)).collect();
    out.push_str(&format!("  \"basis_names\": [{}],\n", names.join(", ")));
    let delta = h
        .delta()
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().filter(|e| !e.2.is_zero()).map(move |(j, k, c)| (vec![i, *j, *k], c.to_canonical())))
        .collect();
    sparse(&mut out, "delta", delta, false);
    out.push_str(&format!("  \"counit\": {},\n", dense(h.counit())));
    let product = h
        .prod()
        .iter()
        .enumerate()
        .flat_map(|(ij, row)| row.iter().filter(|e| !e.1.is_zero()).map(move |(k, c)| (vec![ij / n, ij % n, *k], c.to_canonical())))
        .collect();
    sparse(&mut out, "product", product, false);
    out.push_str(&format!("  \"unit\": {},\n", dense(h.unit())));
    let phi = h
        .phi()
        .values()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(t, c)| (vec![t / (n * n), (t / n) % n, t % n], c.to_canonical()))
        .collect();
    let anti = h.antipode().ok();
    sparse(&mut out, "phi", phi, anti.is_none());
    if let Some(a) = anti {
        out.push_str("  \"antipode\": {\n");
        let mut rows = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = a.s.get(r, c);
                if !v.is_zero() {
                    rows.push((vec![r, c], v.to_canonical()));
                }
            }
        }
        rows.sort();
        let items: Vec<String> = rows.iter().map(|(i, c)| format!("[{}, {}, {}]", i[0], i[1], quote(c))).collect();
        out.push_str(&format!("    \"s\": [{}],\n", items.join(", ")));
        out.push_str(&format!("    \"alpha\": {},\n", dense(&a.alpha)));
        out.push_str(&format!("    \"beta\": {}\n", dense(&a.beta)));
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn zoo_files_round_trip() {
        for h in zoo::standard().unwrap() {
            let text = emit_algebra(&h);
            let back = parse_algebra_str(&text).unwrap();
            assert_eq!(emit_algebra(&back), text, "{}", h.name());
            assert_eq!(back, h, "{}", h.name());
        }
    }

    #[test]
    fn out_of_range_index_names_the_entry() {
        let h = zoo::sweedler_h4(Field::Rational).unwrap();
        let text = emit_algebra(&h).replacen("[0, 0, 0, \"1\"]", "[0, 0, 9, \"1\"]", 1);
        match parse_algebra_str(&text) {
            Err(Error::Validation(m)) => assert!(m.contains("[0,0,9,\"1\"]"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_canonical_residue_is_rejected() {
        let h = zoo::cyclic_group(3, Field::Prime(7)).unwrap();
        let text = emit_algebra(&h).replacen("\"counit\": [\"1\"", "\"counit\": [\"8\"", 1);
        assert!(matches!(parse_algebra_str(&text), Err(Error::Validation(_))));
        assert!(matches!(Scalar::parse(Field::Prime(7), "7"), Err(Error::Validation(_))));
    }

    #[test]
    fn fields_parse() {
        assert_eq!(parse_field("Q").unwrap(), Field::Rational);
        assert_eq!(parse_field("GF(7)").unwrap(), Field::Prime(7));
        assert_eq!(parse_field("F101").unwrap(), Field::Prime(101));
        assert!(parse_field("GF(8)").is_err());
    }
}
