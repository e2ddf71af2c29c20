//! JSON file formats: presentations, manifold models, ρ, structure tables,
//! derivations, Maurer–Cartan jobs and homotopies.
//!
//! Rationals are written as strings `"p/q"`; integers are also accepted on
//! input. Unknown keys are rejected and errors carry a JSON pointer.

use crate::algebra::basis::GradedBasis;
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{format_rational, parse_rational, Rational};
use crate::ce::IntervalElement;
use crate::derivations::Derivation;
use crate::dgla::TableDgLa;
use crate::error::DgError;
use crate::freelie::expr::{self, Tree};
use crate::freelie::{Morphism, Presentation, PresentationSpec, RawSub, Rho};
use crate::models::ManifoldModel;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

/// Malformed input: unreadable file, schema violation or grammar error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub file: String,
    /// JSON pointer of the offending value, empty for the whole document.
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pointer.is_empty() {
            write!(f, "{}: {}", self.file, self.message)
        } else {
            write!(f, "{}: {}: {}", self.file, self.pointer, self.message)
        }
    }
}

impl std::error::Error for InputError {}

impl InputError {
    pub fn new(file: &str, pointer: impl Into<String>, message: impl fmt::Display) -> InputError {
        InputError {
            file: file.to_string(),
            pointer: pointer.into(),
            message: message.to_string(),
        }
    }
}

/// A rational given as a JSON integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalValue(pub Rational);

impl Serialize for RationalValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = RationalValue;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an integer or a rational string \"p/q\"")
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<RationalValue, E> {
                Ok(RationalValue(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<RationalValue, E> {
                Ok(RationalValue(Rational::from_integer(v.into())))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<RationalValue, E> {
                parse_rational(v).map(RationalValue).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

fn rationals(v: &[RationalValue]) -> Vec<Rational> {
    v.iter().map(|r| r.0.clone()).collect()
}

fn values(v: &[Rational]) -> Vec<RationalValue> {
    v.iter().cloned().map(RationalValue).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
    #[serde(default)]
    pub subalgebras: BTreeMap<String, SubJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    pub dimension: i64,
    pub generators: Vec<GeneratorJson>,
    pub pairing: Vec<Vec<RationalValue>>,
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
    #[serde(default)]
    pub pontryagin: BTreeMap<String, Vec<RationalValue>>,
}

/// ρ: a graded basis of Π and, per generator, its image in Π; unlisted
/// generators map to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoJson {
    pub pi: Vec<GeneratorJson>,
    #[serde(default)]
    pub values: BTreeMap<String, Vec<RationalValue>>,
}

/// A dg Lie algebra by structure constants. Keys of `brackets` are
/// `"[x,y]"` and values linear combinations of basis names in the
/// expression grammar; `differential` maps a name to such a combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub basis: Vec<GeneratorJson>,
    #[serde(default)]
    pub brackets: BTreeMap<String, String>,
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
}

/// Degree-0 derivations given on generators, and the nilpotency class used
/// for BCH.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationsJson {
    pub class: usize,
    pub derivations: Vec<BTreeMap<String, String>>,
}

/// A degree -1 element τ of `Hom(sV, Π)`, by its value on each `sx`, and a
/// degree-0 derivation θ acting on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McJson {
    #[serde(default)]
    pub tau: BTreeMap<String, Vec<RationalValue>>,
    #[serde(default)]
    pub theta: BTreeMap<String, String>,
}

/// Coefficients of `t^k` (in `a`) and `t^k dt` (in `b`), keyed by `k`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalJson {
    #[serde(default)]
    pub a: BTreeMap<String, String>,
    #[serde(default)]
    pub b: BTreeMap<String, String>,
}

/// Two morphisms `f, g` and a homotopy `h` between them, on generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyJson {
    pub f: BTreeMap<String, String>,
    pub g: BTreeMap<String, String>,
    pub h: BTreeMap<String, IntervalJson>,
}

/// SHA-256 of a byte string, lowercase hex.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads a file, returning its contents and hash.
pub fn read_file(path: &Path) -> Result<(String, String), InputError> {
    let file = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| InputError::new(&file, "", e))?;
    let hash = sha256_hex(&bytes);
    let text = String::from_utf8(bytes).map_err(|e| InputError::new(&file, "", e))?;
    Ok((text, hash))
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

/// Deserializes with the path of the first schema violation.
pub fn from_json<T: DeserializeOwned>(file: &str, text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let p = pointer(e.path());
        let inner = e.into_inner();
        InputError::new(file, p, inner)
    })
}

fn check_expr(file: &str, pointer: String, text: &str) -> Result<(), InputError> {
    expr::parse(text).map(|_| ()).map_err(|e| InputError::new(file, pointer, e))
}

fn key(s: &str) -> String {
    s.replace('~', "~0").replace('/', "~1")
}

fn dg(file: &str, pointer: impl Into<String>) -> impl FnOnce(DgError) -> InputError {
    let file = file.to_string();
    let pointer = pointer.into();
    move |e| InputError::new(&file, pointer, e)
}

impl PresentationJson {
    /// Unvalidated presentation data; grammar errors are reported with the
    /// pointer of the expression and the byte offset inside it.
    pub fn to_spec(&self, file: &str) -> Result<PresentationSpec, InputError> {
        let mut spec = PresentationSpec::default();
        for g in &self.generators {
            spec.generators.push((g.name.clone(), g.degree));
        }
        for (name, text) in &self.differential {
            check_expr(file, format!("/differential/{}", key(name)), text)?;
            spec.differential.push((name.clone(), text.clone()));
        }
        for (name, sub) in &self.subalgebras {
            let at = format!("/subalgebras/{}", key(name));
            let raw = match (&sub.generators, &sub.elements) {
                (Some(g), None) => RawSub::Generators(g.clone()),
                (None, Some(e)) => {
                    for (i, text) in e.iter().enumerate() {
                        check_expr(file, format!("{at}/elements/{i}"), text)?;
                    }
                    RawSub::Elements(e.clone())
                }
                _ => return Err(InputError::new(file, at, "a subalgebra has exactly one of \"generators\" and \"elements\"")),
            };
            spec.subalgebras.push((name.clone(), raw));
        }
        Ok(spec)
    }

    pub fn from_spec(spec: &PresentationSpec) -> PresentationJson {
        PresentationJson {
            generators: spec
                .generators
                .iter()
                .map(|(n, d)| GeneratorJson {
                    name: n.clone(),
                    degree: *d,
                })
                .collect(),
            differential: spec.differential.iter().cloned().collect(),
            subalgebras: spec
                .subalgebras
                .iter()
                .map(|(n, r)| {
                    let s = match r {
                        RawSub::Generators(g) => SubJson {
                            generators: Some(g.clone()),
                            elements: None,
                        },
                        RawSub::Elements(e) => SubJson {
                            generators: None,
                            elements: Some(e.clone()),
                        },
                    };
                    (n.clone(), s)
                })
                .collect(),
        }
    }
}

/// Parses a presentation without checking d² = 0 or closure of the subs;
/// run [`Presentation::validate`] on the result.
pub fn parse_presentation(file: &str, text: &str) -> Result<Presentation, InputError> {
    let json: PresentationJson = from_json(file, text)?;
    let spec = json.to_spec(file)?;
    Presentation::from_spec_unchecked(&spec).map_err(dg(file, ""))
}

pub fn presentation_to_json(p: &Presentation) -> PresentationJson {
    PresentationJson::from_spec(&p.to_spec())
}

/// Model data checked against the schema and the grammar. Building the
/// model itself can still fail on unimodularity, minimality or `dω ≠ 0`.
pub struct ModelData {
    pub dimension: i64,
    pub generators: Vec<(String, i64)>,
    pub pairing: Matrix,
    pub differential: Vec<(String, String)>,
    pub pontryagin: BTreeMap<i64, Vec<Rational>>,
}

pub fn parse_model_data(file: &str, text: &str) -> Result<ModelData, InputError> {
    let json: ModelJson = from_json(file, text)?;
    let n = json.generators.len();
    if json.pairing.len() != n {
        return Err(InputError::new(file, "/pairing", format!("expected {n} rows, found {}", json.pairing.len())));
    }
    for (i, row) in json.pairing.iter().enumerate() {
        if row.len() != n {
            return Err(InputError::new(file, format!("/pairing/{i}"), format!("expected {n} entries, found {}", row.len())));
        }
    }
    let pairing = Matrix::from_rows(n, n, json.pairing.iter().map(|r| rationals(r)).collect());
    for (name, text) in &json.differential {
        check_expr(file, format!("/differential/{}", key(name)), text)?;
    }
    let mut pontryagin = BTreeMap::new();
    for (k, v) in &json.pontryagin {
        let at = format!("/pontryagin/{}", key(k));
        let d: i64 = k.trim().parse().map_err(|_| InputError::new(file, at.clone(), "degree keys are integers"))?;
        if pontryagin.insert(d, rationals(v)).is_some() {
            return Err(InputError::new(file, at, "degree given twice"));
        }
    }
    Ok(ModelData {
        dimension: json.dimension,
        generators: json.generators.iter().map(|g| (g.name.clone(), g.degree)).collect(),
        pairing,
        differential: json.differential.into_iter().collect(),
        pontryagin,
    })
}

impl ModelData {
    pub fn build(self) -> Result<ManifoldModel, DgError> {
        ManifoldModel::new(self.dimension, &self.generators, self.pairing, &self.differential, self.pontryagin)
    }
}

pub fn model_to_json(m: &ManifoldModel) -> ModelJson {
    let spec = m.presentation().to_spec();
    let basis = m.space().basis();
    let p = m.space().pairing();
    ModelJson {
        dimension: m.dimension(),
        generators: basis
            .entries()
            .iter()
            .map(|(n, d)| GeneratorJson {
                name: n.clone(),
                degree: *d,
            })
            .collect(),
        pairing: (0..p.rows()).map(|i| values(p.row(i))).collect(),
        differential: spec.differential.into_iter().collect(),
        pontryagin: m.pontryagin().iter().map(|(k, v)| (k.to_string(), values(v))).collect(),
    }
}

fn basis_of(file: &str, at: &str, gens: &[GeneratorJson]) -> Result<GradedBasis, InputError> {
    GradedBasis::new(gens.iter().map(|g| (g.name.clone(), g.degree))).map_err(|e| InputError::new(file, at, e))
}

pub fn parse_rho(file: &str, text: &str, p: &Presentation) -> Result<Rho, InputError> {
    let json: RhoJson = from_json(file, text)?;
    let pi = basis_of(file, "/pi", &json.pi)?;
    let lie = p.lie();
    let mut vals: Vec<Vec<Rational>> = (0..p.ngens()).map(|i| vec![Rational::default(); pi.dim(lie.gen_degree(i))]).collect();
    for (name, v) in &json.values {
        let at = format!("/values/{}", key(name));
        let i = lie.position(name).ok_or_else(|| InputError::new(file, at.clone(), format!("unknown generator {name:?}")))?;
        if v.len() != vals[i].len() {
            return Err(InputError::new(
                file,
                at,
                format!("Π has dimension {} in degree {}, found {} values", vals[i].len(), lie.gen_degree(i), v.len()),
            ));
        }
        vals[i] = rationals(v);
    }
    Rho::new(p, pi, vals).map_err(dg(file, "/values"))
}

/// A linear combination of basis names, as sparse global coordinates.
fn linear_combination(file: &str, at: &str, basis: &GradedBasis, text: &str) -> Result<Vec<(usize, Rational)>, InputError> {
    let e = expr::parse(text).map_err(|e| InputError::new(file, at, e))?;
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for t in &e.terms {
        let Tree::Ident { name, .. } = &t.tree else {
            return Err(InputError::new(file, at, format!("term at byte {} is not a basis element", t.offset)));
        };
        let i = basis
            .position(name)
            .ok_or_else(|| InputError::new(file, at, format!("unknown basis element {name:?} at byte {}", t.offset)))?;
        match out.iter_mut().find(|(j, _)| *j == i) {
            Some((_, c)) => *c += &t.coeff,
            None => out.push((i, t.coeff.clone())),
        }
    }
    Ok(out)
}

pub fn parse_table(file: &str, text: &str) -> Result<TableDgLa, InputError> {
    let json: TableJson = from_json(file, text)?;
    let basis = basis_of(file, "/basis", &json.basis)?;
    let mut brackets = BTreeMap::new();
    for (k, v) in &json.brackets {
        let at = format!("/brackets/{}", key(k));
        let e = expr::parse(k).map_err(|e| InputError::new(file, at.clone(), e))?;
        let pair = match e.terms.as_slice() {
            [t] if t.coeff == Rational::from_integer(1.into()) => match &t.tree {
                Tree::Bracket(x, y) => match (x.as_ref(), y.as_ref()) {
                    (Tree::Ident { name: a, .. }, Tree::Ident { name: b, .. }) => Some((a.clone(), b.clone())),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        };
        let (a, b) = pair.ok_or_else(|| InputError::new(file, at.clone(), "keys have the form \"[x,y]\""))?;
        let ix = |n: &str| basis.position(n).ok_or_else(|| InputError::new(file, at.clone(), format!("unknown basis element {n:?}")));
        let (i, j) = (ix(&a)?, ix(&b)?);
        brackets.insert((i, j), linear_combination(file, &at, &basis, v)?);
    }
    let mut differential = BTreeMap::new();
    for (k, v) in &json.differential {
        let at = format!("/differential/{}", key(k));
        let i = basis.position(k).ok_or_else(|| InputError::new(file, at.clone(), format!("unknown basis element {k:?}")))?;
        differential.insert(i, linear_combination(file, &at, &basis, v)?);
    }
    TableDgLa::new(basis, differential, brackets).map_err(dg(file, ""))
}

pub fn parse_derivations(file: &str, text: &str, p: &Arc<Presentation>) -> Result<(usize, Vec<Derivation>), InputError> {
    let json: DerivationsJson = from_json(file, text)?;
    let mut out = Vec::new();
    for (i, d) in json.derivations.iter().enumerate() {
        let vals: Vec<(String, String)> = d.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
        for (name, text) in &vals {
            check_expr(file, format!("/derivations/{i}/{}", key(name)), text)?;
        }
        out.push(Derivation::from_exprs(p.clone(), 0, &vals).map_err(dg(file, format!("/derivations/{i}")))?);
    }
    Ok((json.class, out))
}

/// τ as values on `sx` for each generator x, and θ.
pub fn parse_mc(file: &str, text: &str, p: &Arc<Presentation>, pi: &GradedBasis) -> Result<(Vec<Vec<Rational>>, Derivation), InputError> {
    let json: McJson = from_json(file, text)?;
    let lie = p.lie();
    let mut tau: Vec<Vec<Rational>> = (0..p.ngens()).map(|i| vec![Rational::default(); pi.dim(lie.gen_degree(i))]).collect();
    for (name, v) in &json.tau {
        let at = format!("/tau/{}", key(name));
        let i = lie.position(name).ok_or_else(|| InputError::new(file, at.clone(), format!("unknown generator {name:?}")))?;
        if v.len() != tau[i].len() {
            return Err(InputError::new(file, at, format!("expected {} values, found {}", tau[i].len(), v.len())));
        }
        tau[i] = rationals(v);
    }
    let vals: Vec<(String, String)> = json.theta.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
    for (name, text) in &vals {
        check_expr(file, format!("/theta/{}", key(name)), text)?;
    }
    let theta = Derivation::from_exprs(p.clone(), 0, &vals).map_err(dg(file, "/theta"))?;
    Ok((tau, theta))
}

fn morphism(file: &str, at: &str, src: &Arc<Presentation>, tgt: &Arc<Presentation>, m: &BTreeMap<String, String>) -> Result<Morphism, InputError> {
    let images: Vec<(String, String)> = m.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
    for (name, text) in &images {
        check_expr(file, format!("{at}/{}", key(name)), text)?;
    }
    Morphism::from_exprs(src.clone(), tgt.clone(), &images).map_err(dg(file, at))
}

/// `f`, `g` and the homotopy `h`; unlisted generators of `h` map to zero.
pub fn parse_homotopy(
    file: &str,
    text: &str,
    source: &Arc<Presentation>,
    target: &Arc<Presentation>,
) -> Result<(Morphism, Morphism, crate::ce::Homotopy), InputError> {
    let json: HomotopyJson = from_json(file, text)?;
    let f = morphism(file, "/f", source, target, &json.f)?;
    let g = morphism(file, "/g", source, target, &json.g)?;
    let slie = source.lie();
    let mut values: Vec<IntervalElement> = (0..source.ngens()).map(|i| IntervalElement::zero(slie.gen_degree(i))).collect();
    for (name, iv) in &json.h {
        let at = format!("/h/{}", key(name));
        let i = slie.position(name).ok_or_else(|| InputError::new(file, at.clone(), format!("unknown generator {name:?}")))?;
        let mut parts = [BTreeMap::new(), BTreeMap::new()];
        for (slot, (label, map)) in [("a", &iv.a), ("b", &iv.b)].into_iter().enumerate() {
            for (k, text) in map {
                let here = format!("{at}/{label}/{}", key(k));
                let power: usize = k.trim().parse().map_err(|_| InputError::new(file, here.clone(), "powers of t are non-negative integers"))?;
                check_expr(file, here.clone(), text)?;
                let x = target.parse(text).map_err(dg(file, here.clone()))?;
                if !x.is_zero() {
                    parts[slot].insert(power, x);
                }
            }
        }
        let [a, b] = parts;
        values[i] = IntervalElement {
            degree: slie.gen_degree(i),
            a,
            b,
        };
    }
    let h = crate::ce::Homotopy {
        source: source.clone(),
        target: target.clone(),
        values,
    };
    Ok((f, g, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_round_trip() {
        let text = r#"{"generators":[{"name":"a","degree":2},{"name":"b","degree":2},{"name":"x","degree":5}],
            "differential":{"x":"[a,[a,b]]"},"subalgebras":{"omega":{"elements":["[a,b]"]},"A":{"generators":["a"]}}}"#;
        let p = parse_presentation("t.json", text).unwrap();
        let back = serde_json::to_string(&presentation_to_json(&p)).unwrap();
        let q = parse_presentation("t.json", &back).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn schema_and_grammar_errors() {
        let e = parse_presentation("t.json", r#"{"generators":[{"name":"x","degree":1}],"differential":{"x":"[x"}}"#).unwrap_err();
        assert_eq!(e.pointer, "/differential/x");
        assert!(e.message.contains("unclosed") && e.message.ends_with("at byte 0"), "{e}");
        let e = parse_presentation("t.json", r#"{"generators":[{"name":"x","degree":1,"weight":3}]}"#).unwrap_err();
        assert!(e.pointer.starts_with("/generators/0"), "{e}");
        assert!(e.message.contains("weight"));
        let e = parse_presentation("t.json", r#"{"generators":[],"subalgebras":{"S":{}}}"#).unwrap_err();
        assert_eq!(e.pointer, "/subalgebras/S");
    }

    #[test]
    fn rationals_as_ints_or_strings() {
        let v: Vec<RationalValue> = serde_json::from_str(r#"[1, "-3/6", "0"]"#).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1","-1/2","0"]"#);
        assert!(serde_json::from_str::<Vec<RationalValue>>(r#"[1.5]"#).is_err());
    }

    #[test]
    fn structure_tables() {
        let text = r#"{"basis":[{"name":"e","degree":0},{"name":"f","degree":0},{"name":"h","degree":0}],
            "brackets":{"[h,e]":"2*e","[h,f]":"-2*f","[e,f]":"h"}}"#;
        let t = parse_table("sl2.json", text).unwrap();
        assert_eq!(t.basis().len(), 3);
        let e = parse_table("x.json", r#"{"basis":[{"name":"e","degree":0}],"brackets":{"e":"e"}}"#).unwrap_err();
        assert_eq!(e.pointer, "/brackets/e");
    }
}
