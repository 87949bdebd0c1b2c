use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub};

use super::key::Key;
use crate::error::Result;
use crate::exact::{Field, Scalar};

/// Finitely supported combination of basis keys, without stored zeros.
/// Tensors are elements over `Key::Tuple` keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<Key, Scalar>,
}

/// Elements over tensor-shaped keys.
pub type TensorElement = Element;

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn basis(k: Key, field: Field) -> Element {
        Element::term(k, field.one())
    }

    pub fn term(k: Key, c: Scalar) -> Element {
        let mut e = Element::zero();
        e.add_term(k, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Key, Scalar)>) -> Element {
        let mut e = Element::zero();
        for (k, c) in terms {
            e.add_term(k, c);
        }
        e
    }

    pub fn add_term(&mut self, k: Key, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &Key) -> Option<&Scalar> {
        self.terms.get(k)
    }

    pub fn field(&self) -> Option<Field> {
        self.terms.values().next().map(Scalar::field)
    }

    /// Linear extension of a key-level map.
    pub fn linear(&self, mut f: impl FnMut(&Key) -> Result<Element>) -> Result<Element> {
        let mut out = Element::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Bilinear extension of a map on pairs of keys.
    pub fn bilinear(
        x: &Element,
        y: &Element,
        mut f: impl FnMut(&Key, &Key) -> Result<Element>,
    ) -> Result<Element> {
        let mut out = Element::zero();
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                out.add_scaled(&f(a, b)?, &(c * d));
            }
        }
        Ok(out)
    }

    /// Linear functional applied to the element.
    pub fn evaluate(&self, field: Field, f: impl Fn(&Key) -> Scalar) -> Scalar {
        let mut acc = field.zero();
        for (k, c) in &self.terms {
            let v = f(k);
            if !v.is_zero() {
                acc += &(c * &v);
            }
        }
        acc
    }

    /// Coordinates against an ordered key list; None if support leaves it.
    pub fn coords(&self, field: Field, index: &std::collections::HashMap<Key, usize>, n: usize) -> Option<Vec<Scalar>> {
        let mut v = vec![field.zero(); n];
        for (k, c) in &self.terms {
            v[*index.get(k)?] = c.clone();
        }
        Some(v)
    }

    pub fn show(&self, label: &dyn Fn(&Key) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let l = label(k);
                if c.is_one() {
                    l
                } else if (-c).is_one() {
                    format!("-{l}")
                } else {
                    format!("{c}·{l}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.show(&|k| k.to_string()))
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, o: &Element) {
        for (k, v) in &o.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        let mut r = self.clone();
        r += &(-o);
        r
    }
}

impl FromIterator<(Key, Scalar)> for Element {
    fn from_iter<I: IntoIterator<Item = (Key, Scalar)>>(iter: I) -> Self {
        Element::from_terms(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_zeros() {
        let q = Field::Rationals;
        let mut e = Element::term(Key::Int(1), q.int(2));
        e.add_term(Key::Int(1), q.int(-2));
        assert!(e.is_zero());
        assert_eq!(e, Element::zero());
        let x = Element::from_terms([(Key::Int(0), q.int(1)), (Key::Int(2), q.int(0))]);
        assert_eq!(x.len(), 1);
    }

    #[test]
    fn arithmetic() {
        let q = Field::Rationals;
        let a = Element::from_terms([(Key::Int(0), q.int(1)), (Key::Int(1), q.int(3))]);
        let b = Element::from_terms([(Key::Int(1), q.int(3))]);
        assert_eq!(&(&a - &b), &Element::basis(Key::Int(0), q));
        assert!((&a - &a).is_zero());
        assert_eq!(a.scale(&q.int(0)), Element::zero());
        assert_eq!(a.show(&|k| format!("e{k}")), "e0 + 3·e1");
    }
}
