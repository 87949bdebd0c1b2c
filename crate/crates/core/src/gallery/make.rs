//! Gallery bundles: each worked example as a definition file declaring the
//! suites it must pass or fail.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{tensor, Element, Key};
use crate::bundle::{export_dense, terms_of, CoactionDef, DefinitionFile, Expect, MhaDef, MultiplierDef, ProjectionDef, SuiteRequest};
use crate::construct::{build_z_element, ZFamily};
use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::gallery::{function_algebra, group_algebra, indicator, sweedler, taft, FiniteGroup};
use crate::mhopf::Mha;

pub const NAMES: &[&str] = &[
    "A_G",
    "A_Z",
    "group_algebra",
    "group_coaction",
    "induced",
    "sweedler",
    "taft",
    "epdq",
    "tensor",
];

/// A gallery family with string parameters; see [`make`] for the accepted ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallerySpec {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

impl GallerySpec {
    pub fn new(name: &str) -> GallerySpec {
        GallerySpec {
            name: name.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> GallerySpec {
        self.params.insert(key.into(), value.to_string());
        self
    }

    fn get<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.params.get(key).map(String::as_str).unwrap_or(default)
    }

    fn field(&self, default: Field) -> Result<Field> {
        match self.params.get("p") {
            Some(p) => Field::prime(p.parse().map_err(|_| Error::usage(format!("p = {p:?} is not a prime")))?),
            None => Ok(default),
        }
    }

    fn scalar(&self, field: Field, key: &str, default: &str) -> Result<Scalar> {
        field.parse(self.get(key, default))
    }

    fn int(&self, key: &str, default: i64) -> Result<i64> {
        let v = self.get(key, "");
        if v.is_empty() {
            return Ok(default);
        }
        v.parse().map_err(|_| Error::usage(format!("{key} = {v:?} is not an integer")))
    }

    fn check_known(&self, allowed: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::usage(format!("{} takes no parameter {k:?} (allowed: {})", self.name, allowed.join(", ")))),
            None => Ok(()),
        }
    }
}

fn list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn dense(doc: &mut DefinitionFile, id: &str, m: &Mha) -> Result<()> {
    doc.mhas.insert(id.into(), MhaDef::Dense(export_dense(m)?));
    Ok(())
}

fn builtin(doc: &mut DefinitionFile, id: &str, family: &str, params: &[(&str, String)]) {
    doc.mhas.insert(
        id.into(),
        MhaDef::Builtin {
            family: family.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        },
    );
}

fn element_multiplier(doc: &mut DefinitionFile, id: &str, carrier: &str, x: &Element) {
    doc.multipliers.insert(
        id.into(),
        MultiplierDef::Element {
            carrier: carrier.into(),
            terms: terms_of(x),
        },
    );
}

fn h_coaction(doc: &mut DefinitionFile, id: &str, y: &str, a: &str, h: &str) {
    doc.coactions.insert(
        id.into(),
        CoactionDef::HInduced {
            y: y.into(),
            a: a.into(),
            h: h.into(),
        },
    );
}

fn req(doc: &mut DefinitionFile, suite: &str, target: &str, expect: Expect) {
    doc.request(SuiteRequest::new(suite, target).expecting(expect));
}

fn expect_if(ok: bool) -> Expect {
    if ok {
        Expect::Pass
    } else {
        Expect::Fail
    }
}

/// The smash suites for a coaction over a commutative finite-dimensional A.
fn smash_requests(doc: &mut DefinitionFile, cc: &str, global: bool) {
    for s in [
        "smash_compatibility",
        "smash_coassociativity",
        "smash_homomorphism",
        "smash_left_counit",
        "smash_cb",
        "smash_t_tilde",
    ] {
        req(doc, s, cc, Expect::Pass);
    }
    req(doc, "smash_right_counit", cc, expect_if(global));
}

/// Builds the named bundle.
///
/// * `A_G`: group (Z4), subgroup (0,2), y_group (Z2): ρ(y) = h⊗y on 𝕜Y over A_G with h the subgroup indicator.
/// * `A_Z`: radius (3): rule-backed functions on ℤ with ρ(y) = δ₀⊗y on 𝕜ℤ₂.
/// * `group_algebra`: group (S3).
/// * `group_coaction`: group (S3): the global coaction Σ δ_g⊗hg.
/// * `induced`: group (S3), image (e,(12)), t ((12)): the coaction induced on 𝕜⟨t⟩.
/// * `sweedler`: alpha (1), group (Z2), subgroup (0): z⊗h on H₄⊗A_G.
/// * `taft`: p (7), q (2), alpha (1), group (Z3), subgroup (0): z⊗h on T₃(q)⊗A_G.
/// * `epdq`: lambda (2), radius (3), degree (3): ρ(y) = e₀⊗y on 𝕜ℤ₂.
/// * `tensor`: H₄⊗A_Z2.
///
/// Every bundle accepts p for a prime field; the default is ℚ except for taft.
pub fn make(spec: &GallerySpec) -> Result<DefinitionFile> {
    match spec.name.as_str() {
        "A_G" | "A_G_dense" => a_g(spec),
        "A_Z" | "A_Z_rule" => a_z(spec),
        "group_algebra" => {
            spec.check_known(&["group", "p"])?;
            let f = spec.field(Field::Rationals)?;
            let g = FiniteGroup::by_name(spec.get("group", "S3"))?;
            let mut doc = DefinitionFile::new(&format!("k{}", g.name), f);
            dense(&mut doc, "Y", &group_algebra(&g, f)?)?;
            req(&mut doc, "hopf", "Y", Expect::Pass);
            Ok(doc)
        }
        "group_coaction" => group_coaction(spec),
        "induced" => induced(spec),
        "sweedler" => z_times_h(spec, ZFamily::Sweedler),
        "taft" => z_times_h(spec, ZFamily::Taft),
        "epdq" => epdq(spec),
        "tensor" => {
            spec.check_known(&["p"])?;
            let f = spec.field(Field::Rationals)?;
            let mut doc = DefinitionFile::new("H4⊗A_Z2", f);
            dense(&mut doc, "H", &sweedler(f)?)?;
            dense(&mut doc, "A", &function_algebra(&FiniteGroup::cyclic(2)?, f)?)?;
            doc.mhas.insert(
                "HA".into(),
                MhaDef::Tensor {
                    factors: ("H".into(), "A".into()),
                },
            );
            for id in ["H", "A", "HA"] {
                req(&mut doc, "hopf", id, Expect::Pass);
            }
            Ok(doc)
        }
        other => Err(Error::usage(format!("unknown gallery bundle {other:?} (known: {})", NAMES.join(", ")))),
    }
}

fn a_g(spec: &GallerySpec) -> Result<DefinitionFile> {
    spec.check_known(&["group", "subgroup", "y_group", "p"])?;
    let f = spec.field(Field::Rationals)?;
    let g = FiniteGroup::by_name(spec.get("group", "Z4"))?;
    let default_sub = if g.name == "Z4" { "0,2" } else { g.labels[g.identity].as_str() };
    let members = g.subgroup(&list(spec.get("subgroup", default_sub)))?;
    let yg = FiniteGroup::by_name(spec.get("y_group", "Z2"))?;
    let a = function_algebra(&g, f)?;
    let global = members.len() == g.order();
    let names: Vec<&str> = members.iter().map(|&i| g.labels[i].as_str()).collect();
    let mut doc = DefinitionFile::new(&format!("A_{}/{{{}}}", g.name, names.join(",")), f);
    dense(&mut doc, "A", &a)?;
    dense(&mut doc, "Y", &group_algebra(&yg, f)?)?;
    element_multiplier(&mut doc, "h", "A", &indicator(&members, f));
    h_coaction(&mut doc, "rho", "Y", "A", "h");
    req(&mut doc, "hopf", "A", Expect::Pass);
    req(&mut doc, "hopf", "Y", Expect::Pass);
    req(&mut doc, "h_conditions", "h", Expect::Pass);
    for s in ["partial", "symmetric", "comodule_bialgebra"] {
        req(&mut doc, s, "rho", Expect::Pass);
    }
    for s in ["global", "globality", "t_bijective"] {
        req(&mut doc, s, "rho", expect_if(global));
    }
    if a.alg.is_commutative() {
        smash_requests(&mut doc, "rho", global);
        req(&mut doc, "smash_iso", "rho", Expect::Pass);
    }
    Ok(doc)
}

fn a_z(spec: &GallerySpec) -> Result<DefinitionFile> {
    spec.check_known(&["radius", "p"])?;
    let f = spec.field(Field::Rationals)?;
    let radius = spec.int("radius", 3)?;
    let mut doc = DefinitionFile::new("A_Z", f);
    builtin(&mut doc, "A", "A_Z", &[("radius", radius.to_string())]);
    dense(&mut doc, "Y", &group_algebra(&FiniteGroup::cyclic(2)?, f)?)?;
    element_multiplier(&mut doc, "h", "A", &Element::basis(Key::Int(0), f));
    h_coaction(&mut doc, "rho", "Y", "A", "h");
    req(&mut doc, "hopf", "A", Expect::Pass);
    req(&mut doc, "h_conditions", "h", Expect::Pass);
    req(&mut doc, "partial", "rho", Expect::Pass);
    req(&mut doc, "symmetric", "rho", Expect::Pass);
    req(&mut doc, "global", "rho", Expect::Fail);
    Ok(doc)
}

fn group_coaction(spec: &GallerySpec) -> Result<DefinitionFile> {
    spec.check_known(&["group", "p"])?;
    let f = spec.field(Field::Rationals)?;
    let g = FiniteGroup::by_name(spec.get("group", "S3"))?;
    let mut doc = DefinitionFile::new(&format!("k{} over A_{}", g.name, g.name), f);
    dense(&mut doc, "Y", &group_algebra(&g, f)?)?;
    dense(&mut doc, "A", &function_algebra(&g, f)?)?;
    doc.coactions.insert("rho".into(), CoactionDef::GroupCoaction { group: g.name.clone() });
    req(&mut doc, "hopf", "Y", Expect::Pass);
    req(&mut doc, "hopf", "A", Expect::Pass);
    for s in ["global", "partial", "symmetric", "globality", "t_bijective"] {
        req(&mut doc, s, "rho", Expect::Pass);
    }
    // Σ δ_g⊗hg is not multiplicative, so only the coalgebraic smash suites apply.
    for s in [
        "smash_compatibility",
        "smash_coassociativity",
        "smash_left_counit",
        "smash_right_counit",
        "smash_cb",
    ] {
        req(&mut doc, s, "rho", Expect::Pass);
    }
    Ok(doc)
}

fn induced(spec: &GallerySpec) -> Result<DefinitionFile> {
    spec.check_known(&["group", "image", "t", "p"])?;
    let f = spec.field(Field::Rationals)?;
    let g = FiniteGroup::by_name(spec.get("group", "S3"))?;
    let default_image = if g.name == "S3" { "e,(12)" } else { "0" };
    let image = g.subgroup(&list(spec.get("image", default_image)))?;
    let default_t = if g.name == "S3" { "(12)" } else { "0" };
    let t = g.index_of(spec.get("t", default_t))?;
    if !image.contains(&t) {
        return Err(Error::usage("t must lie in the image of the projection"));
    }
    let z = group_algebra(&g, f)?;
    let mut doc = DefinitionFile::new(&format!("induced coaction on a subgroup algebra of k{}", g.name), f);
    dense(&mut doc, "Z", &z)?;
    doc.coactions.insert("rho".into(), CoactionDef::GroupCoaction { group: g.name.clone() });
    doc.projections.insert(
        "pi".into(),
        ProjectionDef {
            z: "Z".into(),
            image_keys: image.iter().map(|&i| Key::Int(i as i64).to_json()).collect(),
        },
    );
    doc.coactions.insert(
        "beta".into(),
        CoactionDef::Induced {
            base: "rho".into(),
            projection: "pi".into(),
        },
    );
    let proper = image.len() < g.order();
    req(&mut doc, "global", "rho", Expect::Pass);
    req(&mut doc, "projection", "pi", Expect::Pass);
    for s in ["partial", "symmetric"] {
        req(&mut doc, s, "beta", Expect::Pass);
    }
    for s in ["global", "globality"] {
        req(&mut doc, s, "beta", expect_if(!proper));
    }
    let t_terms = terms_of(&Element::basis(Key::Int(t as i64), f));
    for (domain, expect) in [("Y", Expect::Pass), ("Z", expect_if(!proper))] {
        let mut r = SuiteRequest::new("induction", "beta").expecting(expect);
        r.t = Some(t_terms.clone());
        r.domain = Some(domain.into());
        doc.request(r);
    }
    Ok(doc)
}

fn z_times_h(spec: &GallerySpec, family: ZFamily) -> Result<DefinitionFile> {
    let (default_field, default_group) = match family {
        ZFamily::Sweedler => (Field::Rationals, "Z2"),
        ZFamily::Taft => (Field::prime(7)?, "Z3"),
    };
    match family {
        ZFamily::Sweedler => spec.check_known(&["alpha", "group", "subgroup", "p"])?,
        ZFamily::Taft => spec.check_known(&["alpha", "q", "group", "subgroup", "p"])?,
    }
    let f = spec.field(default_field)?;
    let alpha = spec.scalar(f, "alpha", "1")?;
    let (hopf, q) = match family {
        ZFamily::Sweedler => (sweedler(f)?, None),
        ZFamily::Taft => {
            let q = spec.scalar(f, "q", "2")?;
            (taft(f, &q)?, Some(q))
        }
    };
    let z = build_z_element(family, &alpha, q.as_ref(), f)?;
    let g = FiniteGroup::by_name(spec.get("group", default_group))?;
    let identity = g.labels[g.identity].clone();
    let members = g.subgroup(&list(spec.get("subgroup", &identity)))?;
    let h = indicator(&members, f);
    let mut doc = DefinitionFile::new(&format!("z⊗h in {}⊗A_{}", hopf.name, g.name), f);
    dense(&mut doc, "H", &hopf)?;
    dense(&mut doc, "A", &function_algebra(&g, f)?)?;
    dense(&mut doc, "Y", &group_algebra(&FiniteGroup::cyclic(2)?, f)?)?;
    doc.mhas.insert(
        "HA".into(),
        MhaDef::Tensor {
            factors: ("H".into(), "A".into()),
        },
    );
    element_multiplier(&mut doc, "z", "H", &z);
    element_multiplier(&mut doc, "h", "A", &h);
    element_multiplier(&mut doc, "zh", "HA", &tensor::pure(&[&z, &h]));
    h_coaction(&mut doc, "rho", "Y", "HA", "zh");
    req(&mut doc, "hopf", "H", Expect::Pass);
    req(&mut doc, "hopf", "A", Expect::Pass);
    for m in ["z", "h", "zh"] {
        req(&mut doc, "h_conditions", m, Expect::Pass);
    }
    req(&mut doc, "partial", "rho", Expect::Pass);
    req(&mut doc, "symmetric", "rho", Expect::Pass);
    Ok(doc)
}

fn epdq(spec: &GallerySpec) -> Result<DefinitionFile> {
    spec.check_known(&["lambda", "radius", "degree", "p"])?;
    let f = spec.field(Field::Rationals)?;
    let lambda = spec.scalar(f, "lambda", "2")?;
    if lambda.is_zero() {
        return Err(Error::usage("λ must be nonzero"));
    }
    let (radius, degree) = (spec.int("radius", 3)?, spec.int("degree", 3)?);
    let mut doc = DefinitionFile::new("e_p d^q", f);
    builtin(
        &mut doc,
        "A",
        "epdq",
        &[
            ("lambda", lambda.to_string()),
            ("radius", radius.to_string()),
            ("degree", degree.to_string()),
        ],
    );
    dense(&mut doc, "Y", &group_algebra(&FiniteGroup::cyclic(2)?, f)?)?;
    element_multiplier(&mut doc, "e0", "A", &Element::basis(Key::Pair(0, 0), f));
    doc.multipliers.insert(
        "c".into(),
        MultiplierDef::Named {
            carrier: "A".into(),
            name: "c_lambda".into(),
            params: [("lambda".to_string(), lambda.to_string())].into(),
        },
    );
    h_coaction(&mut doc, "rho", "Y", "A", "e0");
    req(&mut doc, "hopf", "A", Expect::Pass);
    req(&mut doc, "compatibility", "c", Expect::Pass);
    req(&mut doc, "h_conditions", "e0", Expect::Pass);
    req(&mut doc, "partial", "rho", Expect::Pass);
    req(&mut doc, "symmetric", "rho", Expect::Pass);
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_parameters_are_usage_errors() {
        for spec in [
            GallerySpec::new("A_G").with("subgroup", "0,1"),
            GallerySpec::new("taft").with("q", "3"),
            GallerySpec::new("epdq").with("lambda", "0"),
            GallerySpec::new("nope"),
            GallerySpec::new("sweedler").with("colour", "red"),
        ] {
            assert!(matches!(make(&spec), Err(Error::Usage(_))), "{spec:?}");
        }
    }

    #[test]
    fn a_g_bundle_declares_expected_failures() {
        let doc = make(&GallerySpec::new("A_G")).unwrap();
        let fails: Vec<&str> = doc
            .suites
            .iter()
            .filter(|r| r.expect == Expect::Fail)
            .map(|r| r.suite.as_str())
            .collect();
        assert_eq!(fails, ["global", "globality", "t_bijective", "smash_right_counit"]);
    }
}
