//! Definition files: the JSON document describing multiplier Hopf algebras,
//! multipliers, projections, coactions and the suites to run on them, its
//! resolution into live structures, and suite dispatch.
//!
//! Scalars are strings ("3", "-1/2", "4 mod 7"); keys use the key JSON encoding.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{DenseAlgebra, Element, Key};
use crate::coaction::{self, CoactFn, Coaction, CoactionSource};
use crate::construct::{self, Domain, ProjectionSpec};
use crate::error::{Error, Result};
use crate::exact::Field;
use crate::gallery::{self, dense_mha, FiniteGroup};
use crate::mhopf::{self, Mha, MhaSource};
use crate::multiplier::{IdempotentE, Multiplier};
use crate::report::CheckReport;
use crate::smash::{self, Smash};
use crate::window::Sampling;

pub const SCHEMA_VERSION: u32 = 1;

/// (key, coefficient) pairs.
pub type Terms = Vec<(Value, String)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefinitionFile {
    pub schema_version: u32,
    pub name: String,
    /// "Q" or "F_p".
    pub field: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub mhas: BTreeMap<String, MhaDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub multipliers: BTreeMap<String, MultiplierDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub projections: BTreeMap<String, ProjectionDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coactions: BTreeMap<String, CoactionDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteRequest>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "snake_case")]
pub enum MhaDef {
    Dense(DenseMhaDef),
    /// A built-in family: function_algebra, group_algebra, sweedler, taft, A_Z, epdq.
    Builtin {
        family: String,
        #[serde(default)]
        params: BTreeMap<String, String>,
    },
    Tensor {
        factors: (String, String),
    },
}

/// Basis-indexed structure constants: product entries [i, j, [[k, c], …]],
/// comultiplication [i, [[j, k, c], …]] meaning Δ(e_i) = Σ c e_j⊗e_k.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DenseMhaDef {
    pub name: String,
    pub keys: Vec<Value>,
    pub labels: Vec<String>,
    pub product: Vec<(usize, usize, Vec<(usize, String)>)>,
    pub delta: Vec<(usize, Vec<(usize, usize, String)>)>,
    pub counit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<(usize, Vec<(usize, String)>)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_inv: Option<Vec<(usize, Vec<(usize, String)>)>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MultiplierDef {
    Element {
        carrier: String,
        terms: Terms,
    },
    /// A rule multiplier by name, e.g. c_lambda with lambda.
    Named {
        carrier: String,
        name: String,
        #[serde(default)]
        params: BTreeMap<String, String>,
    },
    Identity {
        carrier: String,
    },
}

impl MultiplierDef {
    pub fn carrier(&self) -> &str {
        match self {
            MultiplierDef::Element { carrier, .. }
            | MultiplierDef::Named { carrier, .. }
            | MultiplierDef::Identity { carrier } => carrier,
        }
    }
}

/// Coordinate projection of `z` onto the span of `image_keys`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionDef {
    pub z: String,
    pub image_keys: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoactionDef {
    /// ρ(y) = h⊗y.
    HInduced { y: String, a: String, h: String },
    /// ρ(h) = Σ_g δ_g⊗hg on 𝕜G over A_G.
    GroupCoaction { group: String },
    /// (ι⊗π)ρ for a projection of the base coaction's Y.
    Induced { base: String, projection: String },
    /// Tables [y, a, [[a′, y′, c], …]] over dense basis indices: ρ(y)(a⊗1) and (a⊗1)ρ(y).
    Explicit {
        y: String,
        a: String,
        rr: Vec<(usize, usize, Vec<(usize, usize, String)>)>,
        rl: Vec<(usize, usize, Vec<(usize, usize, String)>)>,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    #[default]
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteRequest {
    pub suite: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "is_pass")]
    pub expect: Expect,
    /// The element t for the induction hypotheses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Terms>,
    /// "Z" or "Y" for the induction hypotheses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    /// The element b of Y⊗A for C_b.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Terms>,
}

fn is_pass(e: &Expect) -> bool {
    *e == Expect::Pass
}

impl SuiteRequest {
    pub fn new(suite: &str, target: &str) -> SuiteRequest {
        SuiteRequest {
            suite: suite.into(),
            target: target.into(),
            expect: Expect::Pass,
            t: None,
            domain: None,
            b: None,
        }
    }

    pub fn expecting(mut self, e: Expect) -> SuiteRequest {
        self.expect = e;
        self
    }
}

pub const MHA_SUITES: &[&str] = &[
    "hopf",
    "bialgebra",
    "coassociativity",
    "counit",
    "antipode",
    "covering_consistency",
    "delta_homomorphism",
    "t_bijective",
    "regular",
];
pub const MULTIPLIER_SUITES: &[&str] = &["h_conditions", "compatibility"];
pub const PROJECTION_SUITES: &[&str] = &["projection"];
pub const COACTION_SUITES: &[&str] = &[
    "global",
    "partial",
    "symmetric",
    "globality",
    "comodule_algebra",
    "comodule_bialgebra",
    "t_bijective",
    "induction",
    "smash_compatibility",
    "smash_coassociativity",
    "smash_homomorphism",
    "smash_left_counit",
    "smash_right_counit",
    "smash_cb",
    "smash_iso",
    "smash_t_tilde",
];

/// Whether `requested` (as given on the command line) selects `suite`;
/// a prefix such as "smash" selects every "smash_…" suite.
pub fn suite_matches(suite: &str, requested: &str) -> bool {
    suite == requested || suite.strip_prefix(requested).is_some_and(|r| r.starts_with('_'))
}

pub fn known_suite(requested: &str) -> bool {
    MHA_SUITES
        .iter()
        .chain(MULTIPLIER_SUITES)
        .chain(PROJECTION_SUITES)
        .chain(COACTION_SUITES)
        .any(|s| suite_matches(s, requested))
}

pub fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    if t == "Q" {
        return Ok(Field::Rationals);
    }
    let p = t
        .strip_prefix("F_")
        .or_else(|| t.strip_prefix('F'))
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Error::usage(format!("unknown field {s:?}; expected Q or F_p")))?;
    Field::prime(p)
}

pub fn field_name(f: Field) -> String {
    f.to_string()
}

impl DefinitionFile {
    pub fn new(name: &str, field: Field) -> DefinitionFile {
        DefinitionFile {
            schema_version: SCHEMA_VERSION,
            name: name.into(),
            field: field_name(field),
            mhas: BTreeMap::new(),
            multipliers: BTreeMap::new(),
            projections: BTreeMap::new(),
            coactions: BTreeMap::new(),
            suites: Vec::new(),
        }
    }

    /// Parses JSON text; errors carry the JSON path of the offending value.
    pub fn from_json_str(text: &str) -> Result<DefinitionFile> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: DefinitionFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::parse(if path == "." { "$".to_string() } else { format!("$.{path}") }, e.inner().to_string())
        })?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::parse(
                "$.schema_version",
                format!("unsupported schema version {}; expected {SCHEMA_VERSION}", doc.schema_version),
            ));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("definition files serialize")
    }

    pub fn request(&mut self, r: SuiteRequest) {
        self.suites.push(r);
    }
}

pub fn terms_of(x: &Element) -> Terms {
    let mut t: Vec<(Key, String)> = x.terms().map(|(k, c)| (k.clone(), c.to_string())).collect();
    t.sort();
    t.into_iter().map(|(k, c)| (k.to_json(), c)).collect()
}

pub fn element_of(terms: &Terms, field: Field, path: &str) -> Result<Element> {
    let mut x = Element::zero();
    for (i, (k, c)) in terms.iter().enumerate() {
        let key = Key::from_json(k, &format!("{path}[{i}][0]"))?;
        let c = field.parse(c).map_err(|e| Error::parse(format!("{path}[{i}][1]"), e.to_string()))?;
        x.add_term(key, c);
    }
    Ok(x)
}

/// Structure constants of a finite-dimensional unital multiplier Hopf algebra.
pub fn export_dense(m: &Mha) -> Result<DenseMhaDef> {
    let keys = m
        .alg
        .basis()
        .ok_or_else(|| Error::Unsupported(format!("{} is not finite-dimensional", m.name)))?
        .to_vec();
    let index: HashMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let idx = |k: &Key| -> Result<usize> {
        index
            .get(k)
            .copied()
            .ok_or_else(|| Error::Inconsistent(format!("{k} leaves the basis of {}", m.name)))
    };
    let linear = |x: &Element| -> Result<Vec<(usize, String)>> {
        let mut t = x.terms().map(|(k, c)| Ok((idx(k)?, c.to_string()))).collect::<Result<Vec<_>>>()?;
        t.sort();
        Ok(t)
    };
    let mut product = Vec::new();
    for (i, a) in keys.iter().enumerate() {
        for (j, b) in keys.iter().enumerate() {
            let p = m.alg.mul_keys(a, b)?;
            if !p.is_zero() {
                product.push((i, j, linear(&p)?));
            }
        }
    }
    let mut delta = Vec::new();
    for (i, a) in keys.iter().enumerate() {
        let d = m.classical_delta(&m.basis_element(a))?;
        let mut t = Vec::new();
        for (k, c) in d.terms() {
            let l = crate::algebra::tensor::legs_of(k, 2);
            t.push((idx(&l[0])?, idx(&l[1])?, c.to_string()));
        }
        t.sort();
        delta.push((i, t));
    }
    let table = |s: &Option<crate::multiplier::KeyMap>| -> Result<Option<Vec<(usize, Vec<(usize, String)>)>>> {
        let Some(s) = s else { return Ok(None) };
        let mut out = Vec::new();
        for (i, k) in keys.iter().enumerate() {
            out.push((i, linear(&s(k)?)?));
        }
        Ok(Some(out))
    };
    Ok(DenseMhaDef {
        name: m.name.clone(),
        keys: keys.iter().map(Key::to_json).collect(),
        labels: keys.iter().map(|k| m.alg.label(k)).collect(),
        product,
        delta,
        counit: keys.iter().map(|k| (m.counit)(k).to_string()).collect(),
        antipode: table(&m.antipode)?,
        antipode_inv: table(&m.antipode_inv)?,
    })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    /// Overrides the window radius of rule-backed families.
    pub window: Option<i64>,
}

/// A definition file with every object built.
#[derive(Clone)]
pub struct Bundle {
    pub doc: DefinitionFile,
    pub field: Field,
    pub mhas: BTreeMap<String, Mha>,
    pub multipliers: BTreeMap<String, Multiplier>,
    pub projections: BTreeMap<String, ProjectionSpec>,
    pub coactions: BTreeMap<String, Coaction>,
}

impl std::fmt::Debug for Bundle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Bundle").field("name", &self.doc.name).finish()
    }
}

struct Resolver<'a> {
    doc: &'a DefinitionFile,
    field: Field,
    opts: LoadOptions,
    mhas: BTreeMap<String, Mha>,
    coactions: BTreeMap<String, Coaction>,
    active: HashSet<String>,
}

fn param<'p>(params: &'p BTreeMap<String, String>, name: &str, path: &str) -> Result<&'p str> {
    params
        .get(name)
        .map(String::as_str)
        .ok_or_else(|| Error::parse(format!("{path}.params"), format!("missing parameter {name:?}")))
}

fn int_param(params: &BTreeMap<String, String>, name: &str, default: i64, path: &str) -> Result<i64> {
    match params.get(name) {
        None => Ok(default),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("{path}.params.{name}"), format!("{v:?} is not an integer"))),
    }
}

impl<'a> Resolver<'a> {
    fn mha(&mut self, id: &str, path: &str) -> Result<Mha> {
        if let Some(m) = self.mhas.get(id) {
            return Ok(m.clone());
        }
        let def = self
            .doc
            .mhas
            .get(id)
            .ok_or_else(|| Error::parse(path, format!("no multiplier Hopf algebra named {id:?}")))?;
        if !self.active.insert(format!("mha:{id}")) {
            return Err(Error::parse(path, format!("cyclic reference through {id:?}")));
        }
        let here = format!("$.mhas.{id}");
        let m = match def {
            MhaDef::Dense(d) => dense_from_def(d, self.field, &here)?,
            MhaDef::Builtin { family, params } => self.builtin(family, params, &here)?,
            MhaDef::Tensor { factors } => {
                let a = self.mha(&factors.0, &format!("{here}.factors[0]"))?;
                let b = self.mha(&factors.1, &format!("{here}.factors[1]"))?;
                mhopf::tensor_mha(&a, &b)?
            }
        };
        self.active.remove(&format!("mha:{id}"));
        self.mhas.insert(id.to_string(), m.clone());
        Ok(m)
    }

    fn builtin(&self, family: &str, params: &BTreeMap<String, String>, path: &str) -> Result<Mha> {
        let f = self.field;
        let scalar = |name: &str, default: &str| -> Result<crate::exact::Scalar> {
            let v = params.get(name).map(String::as_str).unwrap_or(default);
            f.parse(v).map_err(|e| Error::parse(format!("{path}.params.{name}"), e.to_string()))
        };
        let radius = |default: i64| -> Result<i64> {
            Ok(self.opts.window.unwrap_or(int_param(params, "radius", default, path)?))
        };
        match family {
            "function_algebra" => gallery::function_algebra(&FiniteGroup::by_name(param(params, "group", path)?)?, f),
            "group_algebra" => gallery::group_algebra(&FiniteGroup::by_name(param(params, "group", path)?)?, f),
            "sweedler" => gallery::sweedler(f),
            "taft" => gallery::taft(f, &scalar("q", "2")?),
            "A_Z" => gallery::function_algebra_z(f, radius(3)?),
            "epdq" => gallery::epdq(f, &scalar("lambda", "2")?, radius(3)?, int_param(params, "degree", 3, path)?),
            other => Err(Error::parse(format!("{path}.family"), format!("unknown family {other:?}"))),
        }
    }

    fn multiplier(&mut self, id: &str, path: &str) -> Result<Multiplier> {
        let def = self
            .doc
            .multipliers
            .get(id)
            .ok_or_else(|| Error::parse(path, format!("no multiplier named {id:?}")))?;
        let here = format!("$.multipliers.{id}");
        let carrier = self.mha(def.carrier(), &format!("{here}.carrier"))?;
        let mut m = match def {
            MultiplierDef::Element { terms, .. } => {
                Multiplier::embed(&element_of(terms, self.field, &format!("{here}.terms"))?, carrier.alg.clone())?
            }
            MultiplierDef::Named { name, params, .. } => match name.as_str() {
                "c_lambda" => {
                    let l = param(params, "lambda", &here)?;
                    let l = self.field.parse(l).map_err(|e| Error::parse(format!("{here}.params.lambda"), e.to_string()))?;
                    gallery::c_lambda(carrier.alg.clone(), &l)?
                }
                other => return Err(Error::parse(format!("{here}.name"), format!("unknown multiplier {other:?}"))),
            },
            MultiplierDef::Identity { .. } => Multiplier::identity(carrier.alg.clone()),
        };
        if matches!(def, MultiplierDef::Element { .. }) {
            m.label = id.to_string();
        }
        Ok(m)
    }

    fn projection(&mut self, id: &str, path: &str) -> Result<ProjectionSpec> {
        let def = self
            .doc
            .projections
            .get(id)
            .ok_or_else(|| Error::parse(path, format!("no projection named {id:?}")))?;
        let here = format!("$.projections.{id}");
        let z = self.mha(&def.z, &format!("{here}.z"))?;
        let image = def
            .image_keys
            .iter()
            .enumerate()
            .map(|(i, v)| Key::from_json(v, &format!("{here}.image_keys[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        if let Some(k) = image.iter().find(|k| !z.alg.contains(k)) {
            return Err(Error::parse(format!("{here}.image_keys"), format!("{k} is not a basis key of {}", z.name)));
        }
        ProjectionSpec::coordinate(&z, &image)
    }

    fn coaction(&mut self, id: &str, path: &str) -> Result<Coaction> {
        if let Some(c) = self.coactions.get(id) {
            return Ok(c.clone());
        }
        let def = self
            .doc
            .coactions
            .get(id)
            .ok_or_else(|| Error::parse(path, format!("no coaction named {id:?}")))?;
        if !self.active.insert(format!("coaction:{id}")) {
            return Err(Error::parse(path, format!("cyclic reference through {id:?}")));
        }
        let here = format!("$.coactions.{id}");
        let c = match def {
            CoactionDef::HInduced { y, a, h } => {
                let y = self.mha(y, &format!("{here}.y"))?;
                let a = self.mha(a, &format!("{here}.a"))?;
                let h = self.multiplier(h, &format!("{here}.h"))?;
                construct::h_coaction(&y, &a, &h)?
            }
            CoactionDef::GroupCoaction { group } => construct::group_coaction(&FiniteGroup::by_name(group)?, self.field)?,
            CoactionDef::Induced { base, projection } => {
                let base = self.coaction(base, &format!("{here}.base"))?;
                let ps = self.projection(projection, &format!("{here}.projection"))?;
                construct::build_induced_coaction(&base, &ps)?
            }
            CoactionDef::Explicit { y, a, rr, rl } => {
                let y = self.mha(y, &format!("{here}.y"))?;
                let a = self.mha(a, &format!("{here}.a"))?;
                let rr = coaction_table(rr, &y, &a, self.field, &format!("{here}.rr"))?;
                let rl = coaction_table(rl, &y, &a, self.field, &format!("{here}.rl"))?;
                Coaction::new(id, y, a, rr, rl, CoactionSource::Explicit)?
            }
        };
        self.active.remove(&format!("coaction:{id}"));
        self.coactions.insert(id.to_string(), c.clone());
        Ok(c)
    }
}

fn dense_basis<'m>(m: &'m Mha, path: &str) -> Result<&'m [Key]> {
    m.alg
        .basis()
        .ok_or_else(|| Error::parse(path, format!("{} must be finite-dimensional", m.name)))
}

fn coaction_table(
    rows: &[(usize, usize, Vec<(usize, usize, String)>)],
    y: &Mha,
    a: &Mha,
    field: Field,
    path: &str,
) -> Result<CoactFn> {
    let (yb, ab) = (dense_basis(y, path)?, dense_basis(a, path)?);
    let mut table: HashMap<(Key, Key), Element> = HashMap::new();
    for (r, (yi, ai, terms)) in rows.iter().enumerate() {
        let at = format!("{path}[{r}]");
        let (Some(yk), Some(ak)) = (yb.get(*yi), ab.get(*ai)) else {
            return Err(Error::parse(at, "index out of range"));
        };
        let mut x = Element::zero();
        for (t, (a2, y2, c)) in terms.iter().enumerate() {
            let (Some(ak2), Some(yk2)) = (ab.get(*a2), yb.get(*y2)) else {
                return Err(Error::parse(format!("{at}[2][{t}]"), "index out of range"));
            };
            let c = field.parse(c).map_err(|e| Error::parse(format!("{at}[2][{t}][2]"), e.to_string()))?;
            x.add_term(Key::pair(ak2.clone(), yk2.clone()), c);
        }
        table.insert((yk.clone(), ak.clone()), x);
    }
    Ok(Arc::new(move |yk, ak| Ok(table.get(&(yk.clone(), ak.clone())).cloned().unwrap_or_default())))
}

fn dense_from_def(d: &DenseMhaDef, field: Field, path: &str) -> Result<Mha> {
    let n = d.keys.len();
    let keys = d
        .keys
        .iter()
        .enumerate()
        .map(|(i, v)| Key::from_json(v, &format!("{path}.keys[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if d.labels.len() != n {
        return Err(Error::parse(format!("{path}.labels"), format!("expected {n} labels, found {}", d.labels.len())));
    }
    if d.counit.len() != n {
        return Err(Error::parse(format!("{path}.counit"), format!("expected {n} entries, found {}", d.counit.len())));
    }
    let scalar = |s: &str, at: String| field.parse(s).map_err(|e| Error::parse(at, e.to_string()));
    let check = |i: usize, at: &str| -> Result<()> {
        if i < n {
            Ok(())
        } else {
            Err(Error::parse(at, format!("index {i} out of range for {n} basis keys")))
        }
    };
    let linear = |terms: &[(usize, String)], at: &str| -> Result<Element> {
        let mut x = Element::zero();
        for (t, (k, c)) in terms.iter().enumerate() {
            check(*k, &format!("{at}[{t}][0]"))?;
            x.add_term(keys[*k].clone(), scalar(c, format!("{at}[{t}][1]"))?);
        }
        Ok(x)
    };
    let mut table: HashMap<(usize, usize), Element> = HashMap::new();
    for (r, (i, j, terms)) in d.product.iter().enumerate() {
        let at = format!("{path}.product[{r}]");
        check(*i, &at)?;
        check(*j, &at)?;
        let x = linear(terms, &format!("{at}[2]"))?;
        let e = table.entry((*i, *j)).or_default();
        *e = &*e + &x;
    }
    let index: HashMap<Key, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let alg = DenseAlgebra::new(d.name.clone(), field, keys.clone(), d.labels.clone(), |a, b| {
        table.get(&(index[a], index[b])).cloned().unwrap_or_default()
    })
    .map_err(|e| Error::parse(format!("{path}.product"), e.to_string()))?;
    let mut delta: HashMap<Key, Element> = keys.iter().map(|k| (k.clone(), Element::zero())).collect();
    for (r, (i, terms)) in d.delta.iter().enumerate() {
        let at = format!("{path}.delta[{r}]");
        check(*i, &at)?;
        let slot = delta.get_mut(&keys[*i]).expect("basis key");
        for (t, (j, k, c)) in terms.iter().enumerate() {
            let tat = format!("{at}[1][{t}]");
            check(*j, &tat)?;
            check(*k, &tat)?;
            slot.add_term(Key::pair(keys[*j].clone(), keys[*k].clone()), scalar(c, format!("{tat}[2]"))?);
        }
    }
    let counit = keys
        .iter()
        .zip(&d.counit)
        .enumerate()
        .map(|(i, (k, c))| Ok((k.clone(), scalar(c, format!("{path}.counit[{i}]"))?)))
        .collect::<Result<HashMap<_, _>>>()?;
    let map = |rows: &Option<Vec<(usize, Vec<(usize, String)>)>>, what: &str| -> Result<Option<HashMap<Key, Element>>> {
        let Some(rows) = rows else { return Ok(None) };
        let mut out: HashMap<Key, Element> = keys.iter().map(|k| (k.clone(), Element::zero())).collect();
        for (r, (i, terms)) in rows.iter().enumerate() {
            let at = format!("{path}.{what}[{r}]");
            check(*i, &at)?;
            out.insert(keys[*i].clone(), linear(terms, &format!("{at}[1]"))?);
        }
        Ok(Some(out))
    };
    dense_mha(
        &d.name,
        Arc::new(alg),
        delta,
        counit,
        map(&d.antipode, "antipode")?,
        map(&d.antipode_inv, "antipode_inv")?,
        MhaSource::Other("definition file".into()),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Mha,
    Multiplier,
    Projection,
    Coaction,
}

impl Kind {
    fn suites(self) -> &'static [&'static str] {
        match self {
            Kind::Mha => MHA_SUITES,
            Kind::Multiplier => MULTIPLIER_SUITES,
            Kind::Projection => PROJECTION_SUITES,
            Kind::Coaction => COACTION_SUITES,
        }
    }
}

impl Bundle {
    pub fn load(doc: DefinitionFile, opts: LoadOptions) -> Result<Bundle> {
        let field = parse_field(&doc.field).map_err(|e| Error::parse("$.field", e.to_string()))?;
        let mut seen = HashSet::new();
        for id in doc
            .mhas
            .keys()
            .chain(doc.multipliers.keys())
            .chain(doc.projections.keys())
            .chain(doc.coactions.keys())
        {
            if !seen.insert(id) {
                return Err(Error::parse("$", format!("identifier {id:?} is used twice")));
            }
        }
        let mut r = Resolver {
            doc: &doc,
            field,
            opts,
            mhas: BTreeMap::new(),
            coactions: BTreeMap::new(),
            active: HashSet::new(),
        };
        for id in doc.mhas.keys() {
            r.mha(id, "$.mhas")?;
        }
        let mut multipliers = BTreeMap::new();
        for id in doc.multipliers.keys() {
            multipliers.insert(id.clone(), r.multiplier(id, "$.multipliers")?);
        }
        let mut projections = BTreeMap::new();
        for id in doc.projections.keys() {
            projections.insert(id.clone(), r.projection(id, "$.projections")?);
        }
        for id in doc.coactions.keys() {
            r.coaction(id, "$.coactions")?;
        }
        let (mhas, coactions) = (r.mhas, r.coactions);
        let b = Bundle {
            doc: doc.clone(),
            field,
            mhas,
            multipliers,
            projections,
            coactions,
        };
        for (i, req) in doc.suites.iter().enumerate() {
            let at = format!("$.suites[{i}]");
            let kind = b
                .kind_of(&req.target)
                .ok_or_else(|| Error::parse(format!("{at}.target"), format!("unknown target {:?}", req.target)))?;
            if !kind.suites().contains(&req.suite.as_str()) {
                return Err(Error::parse(
                    format!("{at}.suite"),
                    format!("suite {:?} does not apply to {:?}", req.suite, req.target),
                ));
            }
            if let Some(d) = &req.domain {
                parse_domain(d).map_err(|e| Error::parse(format!("{at}.domain"), e.to_string()))?;
            }
            for (what, terms) in [("t", &req.t), ("b", &req.b)] {
                if let Some(t) = terms {
                    element_of(t, field, &format!("{at}.{what}"))?;
                }
            }
        }
        Ok(b)
    }

    pub fn from_json_str(text: &str, opts: LoadOptions) -> Result<Bundle> {
        Bundle::load(DefinitionFile::from_json_str(text)?, opts)
    }

    fn kind_of(&self, id: &str) -> Option<Kind> {
        if self.mhas.contains_key(id) {
            Some(Kind::Mha)
        } else if self.multipliers.contains_key(id) {
            Some(Kind::Multiplier)
        } else if self.projections.contains_key(id) {
            Some(Kind::Projection)
        } else if self.coactions.contains_key(id) {
            Some(Kind::Coaction)
        } else {
            None
        }
    }

    /// The requests selected by `suite`: declared ones first; when none are
    /// declared, every applicable target gets the suite with a pass expectation.
    pub fn requests(&self, suite: Option<&str>) -> Result<Vec<SuiteRequest>> {
        let Some(s) = suite else {
            return Ok(self.doc.suites.clone());
        };
        if !known_suite(s) {
            return Err(Error::usage(format!("unknown suite {s:?}")));
        }
        let declared: Vec<SuiteRequest> = self.doc.suites.iter().filter(|r| suite_matches(&r.suite, s)).cloned().collect();
        if !declared.is_empty() {
            return Ok(declared);
        }
        let mut out = Vec::new();
        let targets = self
            .mhas
            .keys()
            .map(|k| (k, Kind::Mha))
            .chain(self.multipliers.keys().map(|k| (k, Kind::Multiplier)))
            .chain(self.projections.keys().map(|k| (k, Kind::Projection)))
            .chain(self.coactions.keys().map(|k| (k, Kind::Coaction)));
        for (id, kind) in targets {
            for name in kind.suites() {
                if suite_matches(name, s) && *name != "induction" {
                    out.push(SuiteRequest::new(name, id));
                }
            }
        }
        Ok(out)
    }

    /// Runs requests; reports are sorted by suite name, ties kept in request order.
    pub fn run(&self, requests: &[SuiteRequest], sampling: &Sampling) -> Vec<CheckReport> {
        let mut smashes: HashMap<String, Result<Smash>> = HashMap::new();
        let mut out = Vec::new();
        for req in requests {
            let reports = self.run_one(req, sampling, &mut smashes);
            out.extend(reports.into_iter().map(|r| match req.expect {
                Expect::Pass => r,
                Expect::Fail => r.expect_failure(),
            }));
        }
        out.sort_by(|a, b| a.suite.cmp(&b.suite));
        out
    }

    fn run_one(&self, req: &SuiteRequest, s: &Sampling, smashes: &mut HashMap<String, Result<Smash>>) -> Vec<CheckReport> {
        let unmet = |subject: &str, why: String| {
            vec![CheckReport::precondition_failed(&req.suite, subject, "none", s.seed, &why)]
        };
        let id = req.target.as_str();
        if let Some(m) = self.mhas.get(id) {
            return match req.suite.as_str() {
                "hopf" => mhopf::hopf_suite(m, s),
                "bialgebra" => mhopf::bialgebra_suite(m, s),
                "coassociativity" => vec![mhopf::check_coassociativity(m, s)],
                "counit" => vec![mhopf::check_counit(m, s)],
                "antipode" => vec![mhopf::check_antipode(m, s)],
                "covering_consistency" => vec![mhopf::check_covering_consistency(m, s)],
                "delta_homomorphism" => vec![mhopf::check_delta_homomorphism(m, s)],
                "t_bijective" => vec![mhopf::check_bijective_t(m, s)],
                "regular" => vec![mhopf::check_regular(m, s)],
                other => unmet(&m.name, format!("suite {other} does not apply")),
            };
        }
        if let Some(h) = self.multipliers.get(id) {
            let carrier = self.doc.multipliers[id].carrier();
            return match req.suite.as_str() {
                "h_conditions" => vec![construct::check_h_conditions(&self.mhas[carrier], h, s)],
                "compatibility" => vec![h.check_compatibility(s)],
                other => unmet(&h.label, format!("suite {other} does not apply")),
            };
        }
        if let Some(p) = self.projections.get(id) {
            return vec![construct::check_projection(p, s)];
        }
        let Some(cc) = self.coactions.get(id) else {
            return unmet(id, "unknown target".into());
        };
        let idempotent = idempotent_for(cc);
        match req.suite.as_str() {
            "global" => return vec![coaction::check_global_comodule(cc, s)],
            "partial" => return vec![coaction::check_partial_axioms(cc, s)],
            "symmetric" => return vec![coaction::check_symmetric_axioms(cc, s)],
            "globality" => return vec![coaction::check_globality(cc, s)],
            "t_bijective" => return vec![coaction::check_t_bijective(cc, s)],
            "comodule_algebra" | "comodule_bialgebra" => {
                return match &idempotent {
                    Ok(e) if req.suite == "comodule_algebra" => vec![coaction::check_comodule_algebra(cc, e, false, s)],
                    Ok(e) => vec![coaction::check_bialgebra(cc, e, s)],
                    Err(e) => unmet(&cc.name, e.to_string()),
                }
            }
            "induction" => {
                let CoactionSource::Induced { base, image } = &cc.source else {
                    return unmet(&cc.name, "not an induced coaction".into());
                };
                let ps = match ProjectionSpec::coordinate(&base.y, image) {
                    Ok(p) => p,
                    Err(e) => return unmet(&cc.name, e.to_string()),
                };
                let t = match &req.t {
                    Some(t) => element_of(t, self.field, "t"),
                    None => Err(Error::usage("the induction suite needs t")),
                };
                let domain = parse_domain(req.domain.as_deref().unwrap_or("Z"));
                return match (t, domain) {
                    (Ok(t), Ok(d)) => vec![construct::check_induction_hypotheses(base, &ps, &t, d, s)],
                    (Err(e), _) | (_, Err(e)) => unmet(&cc.name, e.to_string()),
                };
            }
            _ => {}
        }
        let ss = match smashes.entry(id.to_string()).or_insert_with(|| Smash::new(cc)) {
            Ok(ss) => ss.clone(),
            Err(e) => return unmet(&cc.name, e.to_string()),
        };
        let cb = || -> Result<smash::CbSpace> {
            let b = match &req.b {
                Some(b) => element_of(b, self.field, "b")?,
                None => smash::default_b(&ss)?,
            };
            smash::build_cb(&ss, &b)
        };
        match req.suite.as_str() {
            "smash_compatibility" => vec![smash::check_multiplier_compatibility(&ss, s)],
            "smash_coassociativity" => vec![smash::check_coassoc_bar(&ss, s)],
            "smash_homomorphism" => vec![smash::check_hom_bar(&ss, idempotent.as_ref().ok(), s)],
            "smash_left_counit" => vec![smash::eps_bar_checks(&ss, s).0],
            "smash_right_counit" => vec![smash::eps_bar_checks(&ss, s).1],
            "smash_cb" => match cb() {
                Ok(cb) => vec![smash::check_cb(&ss, &cb, s)],
                Err(e) => unmet(&cc.name, e.to_string()),
            },
            "smash_iso" => match cb().and_then(|cb| smash::check_iso_yha(&ss, &cb, s)) {
                Ok(r) => vec![r],
                Err(e) => unmet(&cc.name, e.to_string()),
            },
            "smash_t_tilde" => match idempotent.and_then(|e| smash::extend_t_tilde(&ss, &e)) {
                Ok(tt) => vec![smash::check_t_tilde(&tt, s)],
                Err(e) => unmet(&cc.name, e.to_string()),
            },
            other => unmet(&cc.name, format!("suite {other} does not apply")),
        }
    }
}

fn parse_domain(s: &str) -> Result<Domain> {
    match s {
        "Z" => Ok(Domain::Z),
        "Y" => Ok(Domain::Y),
        other => Err(Error::usage(format!("domain must be \"Z\" or \"Y\", not {other:?}"))),
    }
}

/// The idempotent E of a coaction: h⊗1 for ρ(y) = h⊗y, 1 for group coactions.
pub fn idempotent_for(cc: &Coaction) -> Result<IdempotentE> {
    match &cc.source {
        CoactionSource::HInduced(_) => construct::h_idempotent(cc),
        CoactionSource::Group(_) => IdempotentE::new(Multiplier::identity(cc.ay().clone())),
        _ => Err(Error::Unsupported(format!("no idempotent E is known for {}", cc.name))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{function_algebra, indicator};

    #[test]
    fn dense_round_trip_preserves_structure() {
        let f = Field::Rationals;
        let a = function_algebra(&FiniteGroup::cyclic(4).unwrap(), f).unwrap();
        let mut doc = DefinitionFile::new("A_Z4", f);
        doc.mhas.insert("A".into(), MhaDef::Dense(export_dense(&a).unwrap()));
        doc.request(SuiteRequest::new("hopf", "A"));
        let text = doc.to_json();
        let back = DefinitionFile::from_json_str(&text).unwrap();
        assert_eq!(back, doc);
        let b = Bundle::load(back, LoadOptions::default()).unwrap();
        let m = &b.mhas["A"];
        let x = indicator(&[1, 2], f);
        assert_eq!(m.classical_delta(&x).unwrap(), a.classical_delta(&x).unwrap());
        let reports = b.run(&b.requests(None).unwrap(), &Sampling::default());
        assert!(reports.iter().all(|r| r.is_ok()));
    }

    #[test]
    fn schema_errors_carry_paths() {
        let bad = r#"{"schema_version": 1, "name": "x", "field": "Q", "mhas": {"A": {"backend": "dense", "name": "A", "keys": [0], "labels": ["a"], "product": [[0, 0, [[0, 1]]]], "delta": [], "counit": ["1"]}}}"#;
        let e = DefinitionFile::from_json_str(bad).unwrap_err();
        assert!(e.to_string().contains("mhas.A"), "{e}");
        let wrong_index = r#"{"schema_version": 1, "name": "x", "field": "Q", "mhas": {"A": {"backend": "dense", "name": "A", "keys": [0], "labels": ["a"], "product": [[0, 3, [[0, "1"]]]], "delta": [], "counit": ["1"]}}}"#;
        let e = Bundle::from_json_str(wrong_index, LoadOptions::default()).unwrap_err();
        assert!(e.to_string().contains("$.mhas.A.product[0]"), "{e}");
        let e = DefinitionFile::from_json_str(r#"{"schema_version": 2, "name": "x", "field": "Q"}"#).unwrap_err();
        assert!(e.to_string().contains("schema_version"));
    }

    #[test]
    fn suite_prefixes() {
        assert!(suite_matches("smash_cb", "smash"));
        assert!(!suite_matches("smashing", "smash"));
        assert!(known_suite("smash"));
        assert!(!known_suite("nonsense"));
        assert_eq!(parse_field("F_7").unwrap(), Field::Prime { p: 7 });
        assert!(parse_field("R").is_err());
    }
}
