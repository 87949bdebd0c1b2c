//! Builders for coactions induced by a multiplier h (ρ(y) = h⊗y) and by a
//! projection π of a global comodule coalgebra (β = (ι⊗π)ρ), with the checks of
//! their hypotheses.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::tensor::{self, legs_of};
use crate::algebra::{multiply, DenseAlgebra, Element, Key};
use crate::coaction::{CoactFn, Coaction, CoactionSource};
use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::gallery::{dense_mha, function_algebra, group_algebra, FiniteGroup};
use crate::mhopf::{extend_delta, Cover, Mha, MhaSource};
use crate::multiplier::{IdempotentE, KeyMap, Multiplier, MultiplierSource};
use crate::report::{CheckReport, ClauseCheck, Witness};
use crate::window::{tuples, Sampling};

fn tensor_with(x: &Element, y: &Key, field: Field) -> Element {
    tensor::join(x, 1, &Element::basis(y.clone(), field), 1)
}

/// ρ(y)(a⊗1) = ha⊗y and (a⊗1)ρ(y) = ah⊗y.
pub fn h_coaction(y: &Mha, a: &Mha, h: &Multiplier) -> Result<Coaction> {
    if h.carrier().name() != a.alg.name() {
        return Err(Error::usage(format!("{} is not a multiplier of {}", h.label, a.alg.name())));
    }
    let f = a.field();
    let (h1, h2) = (h.clone(), h.clone());
    let rr: CoactFn = Arc::new(move |yk, ak| Ok(tensor_with(&h1.act_left(&Element::basis(ak.clone(), f))?, yk, f)));
    let rl: CoactFn = Arc::new(move |yk, ak| Ok(tensor_with(&h2.act_right(&Element::basis(ak.clone(), f))?, yk, f)));
    Coaction::new(
        format!("{}⊗y on {} over {}", h.label, y.name, a.name),
        y.clone(),
        a.clone(),
        rr,
        rl,
        CoactionSource::HInduced(h.clone()),
    )
}

/// E = h⊗1 in M(A⊗Y) for an h-induced coaction.
pub fn h_idempotent(cc: &Coaction) -> Result<IdempotentE> {
    let CoactionSource::HInduced(h) = &cc.source else {
        return Err(Error::Unsupported(format!("{} is not induced by a multiplier", cc.name)));
    };
    let f = cc.y.field();
    let side = |left: bool| -> KeyMap {
        let h = h.clone();
        Arc::new(move |k| {
            let l = legs_of(k, 2);
            let a = Element::basis(l[0].clone(), f);
            let ha = if left { h.act_left(&a)? } else { h.act_right(&a)? };
            Ok(tensor_with(&ha, &l[1], f))
        })
    };
    IdempotentE::new(Multiplier::from_maps(
        cc.ay().clone(),
        format!("{}⊗1", h.label),
        side(true),
        side(false),
        MultiplierSource::Other(format!("{}⊗1", h.label)),
    ))
}

/// ρ(h) = Σ_g δ_g⊗hg, making 𝕜G an A_G-comodule coalgebra.
pub fn group_coaction(g: &FiniteGroup, field: Field) -> Result<Coaction> {
    let y = group_algebra(g, field)?;
    let a = function_algebra(g, field)?;
    let act = |g: FiniteGroup| -> CoactFn {
        Arc::new(move |yk, ak| {
            let (h, k) = (index(yk, &g)?, index(ak, &g)?);
            Ok(Element::basis(Key::pair(ak.clone(), Key::Int(g.mul(h, k) as i64)), field))
        })
    };
    Coaction::new(
        format!("Σ δ_g⊗hg on {}", y.name),
        y,
        a,
        act(g.clone()),
        act(g.clone()),
        CoactionSource::Group(g.clone()),
    )
}

fn index(k: &Key, g: &FiniteGroup) -> Result<usize> {
    match k.as_int() {
        Some(i) if (0..g.order() as i64).contains(&i) => Ok(i as usize),
        _ => Err(Error::usage(format!("{k} is not an element of {}", g.name))),
    }
}

/// Δ(h) as a multiplier: directly when h is an element, by extension otherwise.
fn delta_of(a: &Mha, h: &Multiplier) -> Result<Multiplier> {
    match h.element() {
        Some(x) => Ok(a.delta_multiplier(x)),
        None => extend_delta(a, h),
    }
}

/// ε(h) = 1, h⊗h = (h⊗1)Δ(h) and h⊗h = Δ(h)(h⊗1), each on window pairs,
/// with h² = h reported as a consequence.
pub fn check_h_conditions(a: &Mha, h: &Multiplier, sampling: &Sampling) -> CheckReport {
    let subject = format!("{} in M({})", h.label, a.name);
    let window = a.alg.window_description();
    let f = a.field();
    let exhaustive = a.is_dense();
    let keys = a.alg.window();

    let mut counit = ClauseCheck::new("ε(h) = 1");
    let mut eps_h: Option<Scalar> = None;
    for k in keys {
        let x = a.basis_element(k);
        match h.act_left(&x) {
            Ok(hx) => {
                let (e_hx, e_x) = (a.counit_of(&hx), a.counit_of(&x));
                if eps_h.is_none() && !e_x.is_zero() {
                    eps_h = Some(&e_hx * &e_x.inv().expect("nonzero"));
                }
                let ok = match &eps_h {
                    Some(e) => e_hx == e * &e_x,
                    None => e_hx.is_zero(),
                };
                counit.record(ok, || Witness {
                    inputs: vec![a.label(k)],
                    lhs: format!("ε(h·{}) = {e_hx}", a.label(k)),
                    rhs: format!("ε(h)ε({}) with ε(h) = {}", a.label(k), eps_h.clone().unwrap_or_else(|| f.zero())),
                });
            }
            Err(e) => counit.error(vec![a.label(k)], &e),
        }
    }
    match &eps_h {
        Some(e) => {
            counit.note(format!("ε(h) = {e}"));
            counit.record(e.is_one(), || Witness {
                inputs: vec![h.label.clone()],
                lhs: format!("ε(h) = {e}"),
                rhs: "1".into(),
            });
        }
        None => counit.mark_inconclusive("no window element with nonzero counit"),
    }

    let mut right = ClauseCheck::new("h⊗h = (h⊗1)Δ(h)");
    let mut left = ClauseCheck::new("h⊗h = Δ(h)(h⊗1)");
    let mut idem = ClauseCheck::new("h² = h").informational();
    match delta_of(a, h) {
        Ok(dh) => {
            let h_on_first = |t: &Element| {
                tensor::map_leg(t, 2, 0, |k| h.act_left(&a.basis_element(k)))
            };
            for t in tuples(&[keys, keys], exhaustive, sampling) {
                let x = tensor::pure(&[&a.basis_element(&t[0]), &a.basis_element(&t[1])]);
                let inputs = || vec![a.label(&t[0]), a.label(&t[1])];
                let hh = (|| {
                    tensor::map_legs(&x, 2, 0, 2, 2, |l| {
                        Ok(tensor::pure(&[&h.act_left(&a.basis_element(&l[0]))?, &h.act_left(&a.basis_element(&l[1]))?]))
                    })
                })();
                let sides = hh.clone().and_then(|hh| Ok((hh, h_on_first(&dh.act_left(&x)?)?)));
                right.compare(inputs, sides, |v| a.show2(v));
                let sides = hh.and_then(|hh| Ok((hh, dh.act_left(&h_on_first(&x)?)?)));
                left.compare(inputs, sides, |v| a.show2(v));
            }
        }
        Err(e) => {
            right.error(vec![h.label.clone()], &e);
            left.error(vec![h.label.clone()], &e);
        }
    }
    for k in keys {
        let sides = (|| {
            let hx = h.act_left(&a.basis_element(k))?;
            Ok((h.act_left(&hx)?, hx))
        })();
        idem.compare(|| vec![a.label(k)], sides, |v| a.show(v));
    }
    CheckReport::new(
        "h_conditions",
        &subject,
        &window,
        sampling.seed,
        vec![counit.finish(), right.finish(), left.finish(), idem.finish()],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZFamily {
    Sweedler,
    Taft,
}

/// The elements z of H₄ and T₃(q) satisfying the h-conditions:
/// z = (1+g)/2 + αgx, and z = 3⁻¹(1+g+g²) + 3⁻¹((q−1)αgx + (q²−1)αg²x − 3qα²gx²).
pub fn build_z_element(family: ZFamily, alpha: &Scalar, q: Option<&Scalar>, field: Field) -> Result<Element> {
    let el = |i: i64, j: i64, c: Scalar| Element::term(Key::Pair(i, j), c);
    match family {
        ZFamily::Sweedler => {
            let half = field
                .int(2)
                .inv()
                .ok_or_else(|| Error::usage("Sweedler's z needs characteristic ≠ 2"))?;
            Ok(&(&el(0, 0, half.clone()) + &el(1, 0, half)) + &el(1, 1, alpha.clone()))
        }
        ZFamily::Taft => {
            let q = q.ok_or_else(|| Error::usage("Taft's z needs q"))?;
            let cube = q.pow(3).is_some_and(|v| v.is_one()) && !q.is_one();
            if !cube {
                return Err(Error::usage(format!("q = {q} is not a primitive cube root of unity in {field}")));
            }
            let third = field
                .int(3)
                .inv()
                .ok_or_else(|| Error::usage("Taft's z needs characteristic ≠ 3"))?;
            let one = field.one();
            let q2 = q * q;
            let mut z = Element::zero();
            for i in 0..3 {
                z.add_term(Key::Pair(i, 0), third.clone());
            }
            z.add_term(Key::Pair(1, 1), &third * &(&(q - &one) * alpha));
            z.add_term(Key::Pair(2, 1), &third * &(&(&q2 - &one) * alpha));
            z.add_term(Key::Pair(1, 2), -(q * &(alpha * alpha)));
            Ok(z)
        }
    }
}

/// The subalgebra of a dense Z spanned by some of its basis keys, with Δ, ε, S restricted.
pub fn sub_mha(z: &Mha, keys: &[Key], name: &str) -> Result<Mha> {
    if !z.is_dense() {
        return Err(Error::Unsupported(format!("{} is not finite-dimensional", z.name)));
    }
    let zalg = z.alg.clone();
    for k in keys {
        if !zalg.contains(k) {
            return Err(Error::usage(format!("{k} is not a basis key of {}", z.name)));
        }
    }
    let labels = keys.iter().map(|k| zalg.label(k)).collect();
    let za = zalg.clone();
    let failure = std::cell::RefCell::new(None);
    let alg = DenseAlgebra::new(name, z.field(), keys.to_vec(), labels, |a, b| {
        za.mul_keys(a, b).unwrap_or_else(|e| {
            *failure.borrow_mut() = Some(e);
            Element::zero()
        })
    })
    .map_err(|e| Error::usage(format!("{name} is not a subalgebra of {}: {e}", z.name)))?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let inside = |x: &Element, arity: usize| {
        x.keys().all(|k| legs_of(k, arity).iter().all(|l| keys.contains(l)))
    };
    let mut delta = HashMap::new();
    let mut counit = HashMap::new();
    let mut s = HashMap::new();
    let mut s_inv = HashMap::new();
    for k in keys {
        let d = z.classical_delta(&z.basis_element(k))?;
        if !inside(&d, 2) {
            return Err(Error::usage(format!("Δ({}) leaves {name}", z.label(k))));
        }
        delta.insert(k.clone(), d);
        counit.insert(k.clone(), (z.counit)(k));
        for (map, out) in [(&z.antipode, &mut s), (&z.antipode_inv, &mut s_inv)] {
            if let Some(m) = map {
                let v = m(k)?;
                if !inside(&v, 1) {
                    return Err(Error::usage(format!("S({}) leaves {name}", z.label(k))));
                }
                out.insert(k.clone(), v);
            }
        }
    }
    let s = z.antipode.as_ref().map(|_| s);
    let s_inv = z.antipode_inv.as_ref().map(|_| s_inv);
    dense_mha(
        name,
        Arc::new(alg),
        delta,
        counit,
        s,
        s_inv,
        MhaSource::Other(format!("subalgebra of {}", z.name)),
    )
}

/// π: Z → Z with image Y.
#[derive(Clone)]
pub struct ProjectionSpec {
    pub z: Mha,
    pub y: Mha,
    pub pi: KeyMap,
    pub image: Vec<Key>,
    pub label: String,
}

impl std::fmt::Debug for ProjectionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProjectionSpec")
            .field("z", &self.z.name)
            .field("y", &self.y.name)
            .field("image", &self.image)
            .finish()
    }
}

impl ProjectionSpec {
    /// π fixes the listed basis keys and kills the others.
    pub fn coordinate(z: &Mha, image: &[Key]) -> Result<ProjectionSpec> {
        let keep: Vec<Key> = image.to_vec();
        let f = z.field();
        let pi: KeyMap = Arc::new(move |k| {
            Ok(if keep.contains(k) {
                Element::basis(k.clone(), f)
            } else {
                Element::zero()
            })
        });
        ProjectionSpec::new(z, image, pi, "coordinate projection")
    }

    pub fn new(z: &Mha, image: &[Key], pi: KeyMap, label: &str) -> Result<ProjectionSpec> {
        let names: Vec<String> = image.iter().map(|k| z.label(k)).collect();
        let y = sub_mha(z, image, &format!("𝕜⟨{}⟩", names.join(",")))?;
        Ok(ProjectionSpec {
            z: z.clone(),
            y,
            pi,
            image: image.to_vec(),
            label: label.into(),
        })
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        x.linear(|k| (self.pi)(k))
    }

    fn apply_leg(&self, t: &Element, arity: usize, leg: usize) -> Result<Element> {
        tensor::map_leg(t, arity, leg, |k| (self.pi)(k))
    }
}

/// Idempotency, image, fixed points, multiplicativity (informational) and both
/// covered comultiplicativity identities.
pub fn check_projection(ps: &ProjectionSpec, sampling: &Sampling) -> CheckReport {
    let z = &ps.z;
    let zkeys = z.alg.window();
    let ykeys = ps.image.as_slice();
    let show = |x: &Element| z.show(x);
    let mut closed = ClauseCheck::new("Y closed under the product of Z");
    let mut idem = ClauseCheck::new("π∘π = π");
    let mut image = ClauseCheck::new("π(Z) ⊆ Y");
    let mut fixed = ClauseCheck::new("π(y) = y");
    let mut mult = ClauseCheck::new("π(zz′) = π(z)π(z′)").informational();
    let mut right = ClauseCheck::new("Δ_Y(π(z))(1⊗y) = (π⊗π)(Δ_Z(z)(1⊗y))");
    let mut left = ClauseCheck::new("Δ_Y(π(z))(y⊗1) = (π⊗π)(Δ_Z(z)(y⊗1))");
    for t in tuples(&[ykeys, ykeys], true, sampling) {
        let r = z.alg.mul_keys(&t[0], &t[1]);
        match r {
            Ok(p) => {
                closed.record(p.keys().all(|k| ykeys.contains(k)), || Witness {
                    inputs: vec![z.label(&t[0]), z.label(&t[1])],
                    lhs: show(&p),
                    rhs: "outside Y".into(),
                });
            }
            Err(e) => closed.error(vec![z.label(&t[0]), z.label(&t[1])], &e),
        }
    }
    for k in zkeys {
        let x = z.basis_element(k);
        let inputs = || vec![z.label(k)];
        let sides = (|| {
            let p = ps.apply(&x)?;
            Ok((ps.apply(&p)?, p))
        })();
        idem.compare(inputs, sides, show);
        match ps.apply(&x) {
            Ok(p) => {
                image.record(p.keys().all(|k| ykeys.contains(k)), || Witness {
                    inputs: inputs(),
                    lhs: show(&p),
                    rhs: "outside Y".into(),
                });
            }
            Err(e) => image.error(inputs(), &e),
        }
    }
    for k in ykeys {
        let x = z.basis_element(k);
        fixed.compare(|| vec![z.label(k)], ps.apply(&x).map(|p| (p, x.clone())), show);
    }
    for t in tuples(&[zkeys, zkeys], z.is_dense(), sampling) {
        let (a, b) = (z.basis_element(&t[0]), z.basis_element(&t[1]));
        let sides = (|| {
            let lhs = ps.apply(&multiply(&a, &b, z.alg.as_ref())?)?;
            Ok((lhs, multiply(&ps.apply(&a)?, &ps.apply(&b)?, z.alg.as_ref())?))
        })();
        mult.compare(|| vec![z.label(&t[0]), z.label(&t[1])], sides, show);
    }
    for t in tuples(&[zkeys, ykeys], z.is_dense(), sampling) {
        let inputs = || vec![z.label(&t[0]), z.label(&t[1])];
        let zz = z.basis_element(&t[0]);
        let yy = z.basis_element(&t[1]);
        for (how, check) in [(Cover::RightOnSecond, &mut right), (Cover::RightOnFirst, &mut left)] {
            let sides = (|| {
                let lhs = z.cover(&ps.apply(&zz)?, how, &yy)?;
                let rhs = ps.apply_leg(&ps.apply_leg(&z.cover(&zz, how, &yy)?, 2, 0)?, 2, 1)?;
                Ok((lhs, rhs))
            })();
            check.compare(inputs, sides, |v| z.show2(v));
        }
    }
    CheckReport::new(
        "projection",
        &format!("{} of {} onto {}", ps.label, z.name, ps.y.name),
        &z.alg.window_description(),
        sampling.seed,
        vec![
            closed.finish(),
            idem.finish(),
            image.finish(),
            fixed.finish(),
            mult.finish(),
            right.finish(),
            left.finish(),
        ],
    )
}

/// β(y) = (ι⊗π)ρ(y) on Y = π(Z).
pub fn build_induced_coaction(base: &Coaction, ps: &ProjectionSpec) -> Result<Coaction> {
    if base.y.alg.name() != ps.z.alg.name() {
        return Err(Error::usage(format!(
            "the projection acts on {}, the coaction on {}",
            ps.z.name, base.y.name
        )));
    }
    let project = |f: CoactFn| -> CoactFn {
        let ps = ps.clone();
        Arc::new(move |y, a| ps.apply_leg(&f(y, a)?, 2, 1))
    };
    Coaction::new(
        format!("(ι⊗π)ρ on {}", ps.y.name),
        ps.y.clone(),
        base.a.clone(),
        project(base.rr.clone()),
        project(base.rl.clone()),
        CoactionSource::Induced {
            base: Box::new(base.clone()),
            image: ps.image.clone(),
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Domain {
    #[default]
    Z,
    Y,
}

impl Domain {
    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Z => "Z",
            Domain::Y => "Y",
        }
    }
}

/// The hypotheses for β = (ι⊗π)ρ to be a partial comodule coalgebra: π
/// comultiplicative, (ι⊗π)T(π(z)⊗a) = (ι⊗π)T(z⊗a), and
/// (ι⊗π)T(π(z)⊗a) = (ι⊗π)T(z₂⊗a)ε_Y(π(z₁t)), with z ranging over `domain`.
pub fn check_induction_hypotheses(
    base: &Coaction,
    ps: &ProjectionSpec,
    t: &Element,
    domain: Domain,
    sampling: &Sampling,
) -> CheckReport {
    let z = &ps.z;
    let subject = format!("(ι⊗π)ρ on {} with t = {}", ps.y.name, z.show(t));
    let window = format!("z ∈ {}; A: {}", domain.as_str(), base.a.alg.window_description());
    let eps_t = z.counit_of(t);
    if !t.keys().all(|k| ps.image.contains(k)) || !eps_t.is_one() {
        return CheckReport::precondition_failed(
            "induction",
            &subject,
            &window,
            sampling.seed,
            &format!("t must lie in Y with ε_Y(t) = 1 (ε_Y(t) = {eps_t})"),
        );
    }
    if base.y.alg.name() != z.alg.name() {
        return CheckReport::precondition_failed(
            "induction",
            &subject,
            &window,
            sampling.seed,
            "the projection and the coaction act on different algebras",
        );
    }
    let projection = check_projection(ps, sampling);
    let mut clauses: Vec<_> = projection
        .clauses
        .into_iter()
        .map(|mut c| {
            c.name = format!("comultiplicative projection: {}", c.name);
            c
        })
        .collect();
    let zs: Vec<Key> = match domain {
        Domain::Z => z.alg.window().to_vec(),
        Domain::Y => ps.image.clone(),
    };
    let mut fixed = ClauseCheck::new(format!("(ι⊗π)T(π(z)⊗a) = (ι⊗π)T(z⊗a), z ∈ {}", domain.as_str()));
    let mut twisted = ClauseCheck::new(format!(
        "(ι⊗π)T(π(z)⊗a) = (ι⊗π)T(z₂⊗a)ε_Y(π(z₁t)), z ∈ {}",
        domain.as_str()
    ));
    let ay = [crate::coaction::Leg::A, crate::coaction::Leg::Y];
    let show = |x: &Element| base.show(x, &ay);
    let pt = |y: &Element, a: &Element| -> Result<Element> { ps.apply_leg(&base.map_t(y, a)?, 2, 1) };
    for pair in tuples(&[&zs, base.a.alg.window()], base.a.is_dense(), sampling) {
        let (zk, ak) = (&pair[0], &pair[1]);
        let inputs = || vec![z.label(zk), base.a.label(ak)];
        let (zz, aa) = (z.basis_element(zk), base.a.basis_element(ak));
        let lhs = ps.apply(&zz).and_then(|p| pt(&p, &aa));
        fixed.compare(inputs, lhs.clone().and_then(|l| Ok((l, pt(&zz, &aa)?))), show);
        let rhs = (|| {
            let mut out = Element::zero();
            for (k, c) in z.classical_delta(&zz)?.terms() {
                let l = legs_of(k, 2);
                let e = z.counit_of(&ps.apply(&multiply(&z.basis_element(&l[0]), t, z.alg.as_ref())?)?);
                if !e.is_zero() {
                    out.add_scaled(&pt(&z.basis_element(&l[1]), &aa)?, &(c * &e));
                }
            }
            Ok(out)
        })();
        twisted.compare(inputs, lhs.and_then(|l| Ok((l, rhs?))), show);
    }
    clauses.push(fixed.finish());
    clauses.push(twisted.finish());
    CheckReport::new("induction", &subject, &window, sampling.seed, clauses)
        .with_note(format!("conditions quantified over z ∈ {}", domain.as_str()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coaction::{check_global_comodule, check_globality, check_partial_axioms, check_symmetric_axioms};
    use crate::gallery::{indicator, sweedler};
    use crate::report::Status;

    fn s() -> Sampling {
        Sampling::default()
    }

    fn z4_h(members: &[usize]) -> (Mha, Multiplier) {
        let f = Field::Rationals;
        let a = function_algebra(&FiniteGroup::cyclic(4).unwrap(), f).unwrap();
        let h = Multiplier::embed(&indicator(members, f), a.alg.clone()).unwrap();
        (a, h)
    }

    #[test]
    fn subgroup_indicator_meets_h_conditions() {
        let (a, h) = z4_h(&[0, 2]);
        let r = check_h_conditions(&a, &h, &s());
        assert!(r.is_ok(), "{}", r.to_text());
        let (a, h) = z4_h(&[1]);
        let r = check_h_conditions(&a, &h, &s());
        assert_eq!(r.clause("ε(h) = 1").unwrap().status, Status::Fail);
    }

    #[test]
    fn h_coaction_values() {
        let f = Field::Rationals;
        let (a, h) = z4_h(&[0, 2]);
        let y = group_algebra(&FiniteGroup::cyclic(2).unwrap(), f).unwrap();
        let cc = h_coaction(&y, &a, &h).unwrap();
        let t = Key::Int(1);
        let got = (cc.rr)(&t, &Key::Int(2)).unwrap();
        assert_eq!(got, Element::basis(Key::pair(Key::Int(2), t.clone()), f));
        assert!((cc.rr)(&t, &Key::Int(3)).unwrap().is_zero());
        let e = h_idempotent(&cc).unwrap();
        let x = Element::basis(Key::pair(Key::Int(2), t.clone()), f);
        assert_eq!(e.e.act_left(&x).unwrap(), x);
    }

    #[test]
    fn sweedler_z_meets_h_conditions() {
        let f = Field::Rationals;
        let h4 = sweedler(f).unwrap();
        for alpha in 0..3 {
            let z = build_z_element(ZFamily::Sweedler, &f.int(alpha), None, f).unwrap();
            assert!(h4.counit_of(&z).is_one());
            let m = Multiplier::embed(&z, h4.alg.clone()).unwrap();
            let r = check_h_conditions(&h4, &m, &s());
            assert!(r.is_ok(), "{}", r.to_text());
        }
        assert!(build_z_element(ZFamily::Sweedler, &Field::prime(2).unwrap().one(), None, Field::prime(2).unwrap()).is_err());
    }

    #[test]
    fn group_coaction_is_global() {
        let cc = group_coaction(&FiniteGroup::symmetric3(), Field::Rationals).unwrap();
        assert!(check_global_comodule(&cc, &s()).is_ok());
        assert!(check_partial_axioms(&cc, &s()).is_ok());
        assert!(check_symmetric_axioms(&cc, &s()).is_ok());
        assert!(check_globality(&cc, &s()).is_ok());
    }

    #[test]
    fn induced_coaction_on_transposition_subgroup() {
        let f = Field::Rationals;
        let g = FiniteGroup::symmetric3();
        let cc = group_coaction(&g, f).unwrap();
        let (e, t) = (Key::Int(g.identity as i64), Key::Int(g.index_of("(12)").unwrap() as i64));
        let ps = ProjectionSpec::coordinate(&cc.y, &[e.clone(), t.clone()]).unwrap();
        assert!(check_projection(&ps, &s()).is_ok());
        let beta = build_induced_coaction(&cc, &ps).unwrap();
        let one = cc.a.alg.unit().unwrap();
        let bt = beta.map_t(&beta.y.basis_element(&t), &one).unwrap();
        let expect: Element = [(Key::pair(e.clone(), t.clone()), f.one()), (Key::pair(t.clone(), e.clone()), f.one())]
            .into_iter()
            .collect();
        assert_eq!(bt, expect);
        let tt = cc.y.basis_element(&t);
        assert!(check_induction_hypotheses(&cc, &ps, &tt, Domain::Y, &s()).is_ok());
        let over_z = check_induction_hypotheses(&cc, &ps, &tt, Domain::Z, &s());
        assert!(!over_z.is_ok());
        assert!(check_partial_axioms(&beta, &s()).is_ok());
        assert!(check_symmetric_axioms(&beta, &s()).is_ok());
        let glob = check_globality(&beta, &s());
        assert_eq!(glob.status, Status::Fail);
        let w = &glob.clauses[0].witnesses;
        assert!(w.iter().any(|w| w.inputs == vec!["e".to_string(), "δ(123)".to_string()]), "{w:?}");
    }

    #[test]
    fn projection_killing_identity_fails_fixed_points() {
        let f = Field::Rationals;
        let g = FiniteGroup::symmetric3();
        let z = group_algebra(&g, f).unwrap();
        let (e, t) = (Key::Int(g.identity as i64), Key::Int(g.index_of("(12)").unwrap() as i64));
        let keep = t.clone();
        let pi: KeyMap = Arc::new(move |k| Ok(if *k == keep { Element::basis(k.clone(), f) } else { Element::zero() }));
        let ps = ProjectionSpec::new(&z, &[e, t], pi, "kills e").unwrap();
        let r = check_projection(&ps, &s());
        assert_eq!(r.clause("π(y) = y").unwrap().status, Status::Fail);
    }
}
