//! Multipliers as compatible pairs of linear maps on an algebra, their products,
//! and reconstruction of elements from multipliers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::tensor::{self, Side, TensorShape};
use crate::algebra::{find_local_unit, multiply, show, AlgRef, Element, Key};
use crate::error::{Error, Result};
use crate::report::{CheckReport, ClauseCheck, Witness};
use crate::window::{tuples, Sampling};

/// Linear map given on basis keys.
pub type KeyMap = Arc<dyn Fn(&Key) -> Result<Element> + Send + Sync>;

pub fn apply(map: &KeyMap, x: &Element) -> Result<Element> {
    x.linear(|k| map(k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplierSource {
    Element(Element),
    Named {
        name: String,
        params: BTreeMap<String, String>,
    },
    Product(String, String),
    Identity,
    Other(String),
}

/// X = (b ↦ X·b, a ↦ a·X) on a carrier algebra.
#[derive(Clone)]
pub struct Multiplier {
    carrier: AlgRef,
    left: KeyMap,
    right: KeyMap,
    pub label: String,
    pub source: MultiplierSource,
}

impl fmt::Debug for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multiplier")
            .field("carrier", &self.carrier.name())
            .field("label", &self.label)
            .field("source", &self.source)
            .finish()
    }
}

impl Multiplier {
    /// Builds a multiplier from its two actions without checking compatibility.
    pub fn from_maps(
        carrier: AlgRef,
        label: impl Into<String>,
        left: KeyMap,
        right: KeyMap,
        source: MultiplierSource,
    ) -> Multiplier {
        Multiplier {
            carrier,
            left,
            right,
            label: label.into(),
            source,
        }
    }

    pub fn embed(x: &Element, carrier: AlgRef) -> Result<Multiplier> {
        if let Some(k) = x.keys().find(|k| !carrier.contains(k)) {
            return Err(Error::usage(format!("{k} is not a key of {}", carrier.name())));
        }
        let label = show(x, carrier.as_ref());
        let (xl, xr) = (x.clone(), x.clone());
        let (cl, cr) = (carrier.clone(), carrier.clone());
        let field = carrier.field();
        Ok(Multiplier {
            left: Arc::new(move |k| multiply(&xl, &Element::basis(k.clone(), field), cl.as_ref())),
            right: Arc::new(move |k| multiply(&Element::basis(k.clone(), field), &xr, cr.as_ref())),
            carrier,
            label,
            source: MultiplierSource::Element(x.clone()),
        })
    }

    pub fn identity(carrier: AlgRef) -> Multiplier {
        let field = carrier.field();
        let id: KeyMap = Arc::new(move |k| Ok(Element::basis(k.clone(), field)));
        Multiplier {
            carrier,
            left: id.clone(),
            right: id,
            label: "1".into(),
            source: MultiplierSource::Identity,
        }
    }

    pub fn carrier(&self) -> &AlgRef {
        &self.carrier
    }

    pub fn left_map(&self) -> &KeyMap {
        &self.left
    }

    pub fn right_map(&self) -> &KeyMap {
        &self.right
    }

    /// X·b
    pub fn act_left(&self, b: &Element) -> Result<Element> {
        apply(&self.left, b)
    }

    /// a·X
    pub fn act_right(&self, a: &Element) -> Result<Element> {
        apply(&self.right, a)
    }

    pub fn element(&self) -> Option<&Element> {
        match &self.source {
            MultiplierSource::Element(x) => Some(x),
            _ => None,
        }
    }

    /// XY = (X̄∘Ȳ, Y̿∘X̿), compatibility re-checked on window pairs.
    pub fn mul(&self, other: &Multiplier) -> Result<Multiplier> {
        if self.carrier.name() != other.carrier.name() {
            return Err(Error::usage(format!(
                "multipliers on different carriers {} and {}",
                self.carrier.name(),
                other.carrier.name()
            )));
        }
        let (xl, yl) = (self.left.clone(), other.left.clone());
        let (xr, yr) = (self.right.clone(), other.right.clone());
        let m = Multiplier {
            carrier: self.carrier.clone(),
            left: Arc::new(move |k| apply(&xl, &yl(k)?)),
            right: Arc::new(move |k| apply(&yr, &xr(k)?)),
            label: format!("({})({})", self.label, other.label),
            source: MultiplierSource::Product(self.label.clone(), other.label.clone()),
        };
        m.ensure_compatible(&Sampling::default())?;
        Ok(m)
    }

    /// a·(X·b) = (a·X)·b over window pairs.
    pub fn check_compatibility(&self, sampling: &Sampling) -> CheckReport {
        let alg = self.carrier.as_ref();
        let w = alg.window();
        let field = alg.field();
        let mut c = ClauseCheck::new("a(Xb) = (aX)b");
        for t in tuples(&[w, w], alg.basis().is_some(), sampling) {
            let (a, b) = (Element::basis(t[0].clone(), field), Element::basis(t[1].clone(), field));
            let sides = self
                .act_left(&b)
                .and_then(|xb| multiply(&a, &xb, alg))
                .and_then(|l| Ok((l, multiply(&self.act_right(&a)?, &b, alg)?)));
            let inputs = || vec![alg.label(&t[0]), alg.label(&t[1])];
            match sides {
                Ok((l, r)) => {
                    c.record(l == r, || Witness {
                        inputs: inputs(),
                        lhs: show(&l, alg),
                        rhs: show(&r, alg),
                    });
                }
                Err(e) => c.error(inputs(), &e),
            }
        }
        CheckReport::new(
            "multiplier_compatibility",
            &self.label,
            &alg.window_description(),
            sampling.seed,
            vec![c.finish()],
        )
    }

    fn ensure_compatible(&self, sampling: &Sampling) -> Result<()> {
        let r = self.check_compatibility(sampling);
        let first = r.witnesses().next().cloned();
        match first {
            Some(w) => Err(Error::Inconsistent(format!(
                "multiplier {} is not compatible at ({}): {} ≠ {}",
                self.label,
                w.inputs.join(", "),
                w.lhs,
                w.rhs
            ))),
            None => Ok(()),
        }
    }

    /// Both actions agree with another multiplier's on the probe window.
    pub fn agrees_with(&self, other: &Multiplier) -> Result<Option<Key>> {
        let field = self.carrier.field();
        for k in self.carrier.probe_window() {
            let b = Element::basis(k.clone(), field);
            if self.act_left(&b)? != other.act_left(&b)? || self.act_right(&b)? != other.act_right(&b)? {
                return Ok(Some(k.clone()));
            }
        }
        Ok(None)
    }

    /// The element x with embed(x) = X, if X is realized by one.
    ///
    /// A local unit e for the window gives the candidate X·e, which is then
    /// compared with X on both sides over the probe window.
    pub fn realize(&self) -> Result<Option<Element>> {
        let alg = self.carrier.as_ref();
        let field = alg.field();
        let targets: Vec<Element> = alg.window().iter().map(|k| Element::basis(k.clone(), field)).collect();
        let e = find_local_unit(alg, &targets)?.ok_or_else(|| {
            Error::WindowExhausted(format!("no local unit for {}", alg.window_description()))
        })?;
        let x = self.act_left(&e)?;
        for k in alg.probe_window() {
            let b = Element::basis(k.clone(), field);
            if multiply(&x, &b, alg)? != self.act_left(&b)? || multiply(&b, &x, alg)? != self.act_right(&b)? {
                return Ok(None);
            }
        }
        Ok(Some(x))
    }

    /// Applies X through one leg of a tensor, on the given side (X·t or t·X).
    pub fn completion_action(&self, shape: &TensorShape, leg: usize, t: &Element, side: Side) -> Result<Element> {
        match shape.legs.get(leg) {
            Some(Some(a)) if a.name() == self.carrier.name() => {}
            _ => {
                return Err(Error::usage(format!(
                    "multiplier {} acts on {}, not on leg {leg} of the tensor",
                    self.label,
                    self.carrier.name()
                )))
            }
        }
        let map = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        tensor::map_leg(t, shape.arity(), leg, |k| map(k))
    }
}

/// An idempotent multiplier, checked on construction.
#[derive(Clone, Debug)]
pub struct IdempotentE {
    pub e: Multiplier,
}

impl IdempotentE {
    pub fn new(e: Multiplier) -> Result<IdempotentE> {
        let ee = e.mul(&e)?;
        if let Some(k) = ee.agrees_with(&e)? {
            return Err(Error::Inconsistent(format!(
                "{} is not idempotent: E·E and E differ on {}",
                e.label,
                e.carrier.label(&k)
            )));
        }
        Ok(IdempotentE { e })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DenseAlgebra;
    use crate::exact::Field;

    fn functions_on_cyclic(n: i64) -> AlgRef {
        let f = Field::Rationals;
        Arc::new(
            DenseAlgebra::new(
                format!("A_Z{n}"),
                f,
                (0..n).map(Key::Int).collect(),
                (0..n).map(|i| format!("δ{i}")).collect(),
                |a, b| if a == b { Element::basis(a.clone(), f) } else { Element::zero() },
            )
            .unwrap(),
        )
    }

    fn delta(i: i64) -> Element {
        Element::basis(Key::Int(i), Field::Rationals)
    }

    #[test]
    fn embed_acts_by_multiplication() {
        let a = functions_on_cyclic(2);
        let x = Multiplier::embed(&delta(0), a).unwrap();
        assert!(x.act_left(&delta(1)).unwrap().is_zero());
        assert_eq!(x.act_right(&delta(0)).unwrap(), delta(0));
        let z = Multiplier::embed(&Element::zero(), functions_on_cyclic(2)).unwrap();
        assert!(z.act_left(&delta(0)).unwrap().is_zero());
    }

    #[test]
    fn embedding_is_multiplicative() {
        let a = functions_on_cyclic(4);
        let x = &delta(0) + &delta(1);
        let y = &delta(1) + &delta(2);
        let p = Multiplier::embed(&x, a.clone()).unwrap().mul(&Multiplier::embed(&y, a.clone()).unwrap()).unwrap();
        assert_eq!(p.realize().unwrap().unwrap(), delta(1));
    }

    #[test]
    fn projection_multiplier_is_idempotent() {
        let a = functions_on_cyclic(4);
        let h = Multiplier::embed(&(&delta(0) + &delta(2)), a).unwrap();
        assert!(IdempotentE::new(h).is_ok());
    }

    #[test]
    fn identity_realizes_to_unit() {
        let a = functions_on_cyclic(4);
        let one = Multiplier::identity(a.clone());
        let u = one.realize().unwrap().unwrap();
        assert_eq!(u, (0..4).map(|i| (Key::Int(i), Field::Rationals.one())).collect());
        let h = Multiplier::embed(&delta(3), a).unwrap();
        assert!(one.mul(&h).unwrap().agrees_with(&h).unwrap().is_none());
    }

    #[test]
    fn incompatible_pair_is_rejected() {
        let a = functions_on_cyclic(2);
        let f = Field::Rationals;
        let swap: KeyMap = Arc::new(move |k| Ok(Element::basis(Key::Int(1 - k.as_int().unwrap()), f)));
        let id: KeyMap = Arc::new(move |k| Ok(Element::basis(k.clone(), f)));
        let bad = Multiplier::from_maps(a.clone(), "bad", swap, id, MultiplierSource::Identity);
        assert!(!bad.check_compatibility(&Sampling::default()).is_ok());
        assert!(matches!(bad.mul(&Multiplier::identity(a)), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn completion_acts_on_one_leg() {
        let a = functions_on_cyclic(2);
        let shape = TensorShape::new(vec![Some(a.clone()), None]).unwrap();
        let x = Multiplier::embed(&delta(1), a).unwrap();
        let t = tensor::pure(&[&(&delta(0) + &delta(1)), &delta(0)]);
        let r = x.completion_action(&shape, 0, &t, Side::Left).unwrap();
        assert_eq!(r, tensor::pure(&[&delta(1), &delta(0)]));
        assert!(x.completion_action(&shape, 1, &t, Side::Left).is_err());
    }
}
