//! Leg-wise operations on tensors stored as elements over tuple keys.
//!
//! A tensor of arity n >= 2 has keys `Key::Tuple` of length n; arity 1 is a plain element.

use super::element::Element;
use super::key::Key;
use super::Algebra;
use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// x·t
    Left,
    /// t·x
    Right,
}

pub fn legs_of(k: &Key, arity: usize) -> Vec<Key> {
    if arity == 1 {
        return vec![k.clone()];
    }
    match k.legs() {
        Some(l) if l.len() == arity => l.to_vec(),
        _ => panic!("key {k} is not a tensor key of arity {arity}"),
    }
}

pub fn key_of(mut legs: Vec<Key>) -> Key {
    if legs.len() == 1 {
        legs.pop().expect("one leg")
    } else {
        Key::tuple(legs)
    }
}

/// x₁⊗…⊗xₙ for single-leg elements.
pub fn pure(parts: &[&Element]) -> Element {
    let Some((first, rest)) = parts.split_first() else {
        return Element::zero();
    };
    let mut acc = (*first).clone();
    for (i, p) in rest.iter().enumerate() {
        acc = join(&acc, i + 1, p, 1);
    }
    acc
}

/// t ⊗ u with explicit arities.
pub fn join(t: &Element, ta: usize, u: &Element, ua: usize) -> Element {
    let mut out = Element::zero();
    for (k, c) in t.terms() {
        for (m, d) in u.terms() {
            let mut l = legs_of(k, ta);
            l.extend(legs_of(m, ua));
            out.add_term(key_of(l), c * d);
        }
    }
    out
}

/// Replaces legs start..start+len of every term by the tensor f(legs), of arity out_len >= 1.
pub fn map_legs(
    t: &Element,
    arity: usize,
    start: usize,
    len: usize,
    out_len: usize,
    mut f: impl FnMut(&[Key]) -> Result<Element>,
) -> Result<Element> {
    let mut out = Element::zero();
    for (k, c) in t.terms() {
        let legs = legs_of(k, arity);
        let img = f(&legs[start..start + len])?;
        for (m, d) in img.terms() {
            let mut nl = legs[..start].to_vec();
            nl.extend(legs_of(m, out_len));
            nl.extend_from_slice(&legs[start + len..]);
            out.add_term(key_of(nl), c * d);
        }
    }
    Ok(out)
}

/// Applies a single-leg linear map on one leg.
pub fn map_leg(
    t: &Element,
    arity: usize,
    leg: usize,
    mut f: impl FnMut(&Key) -> Result<Element>,
) -> Result<Element> {
    map_legs(t, arity, leg, 1, 1, |l| f(&l[0]))
}

/// Multiplies one leg by x on the given side.
pub fn mul_leg(t: &Element, arity: usize, leg: usize, x: &Element, side: Side, alg: &dyn Algebra) -> Result<Element> {
    if x.is_zero() {
        return Ok(Element::zero());
    }
    map_leg(t, arity, leg, |k| {
        let kk = Element::basis(k.clone(), alg.field());
        match side {
            Side::Left => super::multiply(x, &kk, alg),
            Side::Right => super::multiply(&kk, x, alg),
        }
    })
}

/// Componentwise product of two tensors of the same arity.
pub fn leg_product(x: &Element, y: &Element, algs: &[&dyn Algebra]) -> Result<Element> {
    let n = algs.len();
    let mut out = Element::zero();
    for (a, c) in x.terms() {
        let la = legs_of(a, n);
        for (b, d) in y.terms() {
            let lb = legs_of(b, n);
            let mut acc: Vec<(Vec<Key>, Scalar)> = vec![(Vec::new(), c * d)];
            for i in 0..n {
                let p = algs[i].mul_keys(&la[i], &lb[i])?;
                if p.is_zero() {
                    acc.clear();
                    break;
                }
                let mut next = Vec::with_capacity(acc.len() * p.len());
                for (legs, s) in &acc {
                    for (k, e) in p.terms() {
                        let mut l = legs.clone();
                        l.push(k.clone());
                        next.push((l, s * e));
                    }
                }
                acc = next;
            }
            for (l, s) in acc {
                out.add_term(key_of(l), s);
            }
        }
    }
    Ok(out)
}

/// New leg i is old leg perm[i].
pub fn permute(t: &Element, arity: usize, perm: &[usize]) -> Element {
    assert_eq!(perm.len(), arity, "permutation length");
    t.terms()
        .map(|(k, c)| {
            let l = legs_of(k, arity);
            (key_of(perm.iter().map(|&i| l[i].clone()).collect()), c.clone())
        })
        .collect()
}

/// Applies a functional to one leg, removing it. Arity must be at least 2.
pub fn contract_leg(t: &Element, arity: usize, leg: usize, f: impl Fn(&Key) -> Scalar) -> Result<Element> {
    if arity < 2 {
        return Err(Error::usage("cannot contract the only leg of a tensor"));
    }
    let mut out = Element::zero();
    for (k, c) in t.terms() {
        let mut l = legs_of(k, arity);
        let v = f(&l[leg]);
        if v.is_zero() {
            continue;
        }
        l.remove(leg);
        out.add_term(key_of(l), c * &v);
    }
    Ok(out)
}

/// Renders a tensor with per-leg labels.
pub fn show(t: &Element, legs: &[&dyn Algebra]) -> String {
    let n = legs.len();
    t.show(&|k| {
        legs_of(k, n)
            .iter()
            .zip(legs)
            .map(|(k, a)| a.label(k))
            .collect::<Vec<_>>()
            .join("⊗")
    })
}

/// A declared list of legs; `None` marks a plain vector-space leg.
#[derive(Clone)]
pub struct TensorShape {
    pub legs: Vec<Option<super::AlgRef>>,
}

impl TensorShape {
    pub fn new(legs: Vec<Option<super::AlgRef>>) -> Result<TensorShape> {
        let fields: Vec<Field> = legs.iter().flatten().map(|a| a.field()).collect();
        if fields.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::usage("tensor legs over different fields"));
        }
        Ok(TensorShape { legs })
    }

    pub fn arity(&self) -> usize {
        self.legs.len()
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        let algs: Vec<&dyn Algebra> = self
            .legs
            .iter()
            .map(|l| {
                l.as_deref()
                    .ok_or_else(|| Error::usage("product over a vector-space leg"))
            })
            .collect::<Result<_>>()?;
        leg_product(x, y, &algs)
    }
}
