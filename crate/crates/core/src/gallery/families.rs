//! Built-in multiplier Hopf algebras.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{multiply, tensor, AlgRef, Algebra, DenseAlgebra, Element, Key, RuleAlgebra, TensorAlgebra};
use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::mhopf::{ClassicalComul, Cover, Mha, MhaSource, RuleComul};
use crate::multiplier::{KeyMap, Multiplier, MultiplierSource};

/// A finite group by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    pub labels: Vec<String>,
    table: Vec<Vec<usize>>,
    pub identity: usize,
    inverse: Vec<usize>,
    cyclic: bool,
}

impl FiniteGroup {
    fn from_table(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>, cyclic: bool) -> FiniteGroup {
        let n = labels.len();
        let identity = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g)).expect("group identity");
        let inverse = (0..n)
            .map(|g| (0..n).find(|&h| table[g][h] == identity).expect("group inverse"))
            .collect();
        FiniteGroup {
            name: name.into(),
            labels,
            table,
            identity,
            inverse,
            cyclic,
        }
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::usage("cyclic group of order 0"));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Ok(FiniteGroup::from_table(
            &format!("Z{n}"),
            (0..n).map(|i| i.to_string()).collect(),
            table,
            true,
        ))
    }

    /// S₃ as permutations of {1,2,3}, composed as functions: (στ)(x) = σ(τ(x)).
    pub fn symmetric3() -> FiniteGroup {
        let perms: [([usize; 3], &str); 6] = [
            ([0, 1, 2], "e"),
            ([1, 0, 2], "(12)"),
            ([2, 1, 0], "(13)"),
            ([0, 2, 1], "(23)"),
            ([1, 2, 0], "(123)"),
            ([2, 0, 1], "(132)"),
        ];
        let index = |p: [usize; 3]| perms.iter().position(|(q, _)| *q == p).expect("closed");
        let table = perms
            .iter()
            .map(|(s, _)| perms.iter().map(|(t, _)| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        FiniteGroup::from_table("S3", perms.iter().map(|(_, l)| l.to_string()).collect(), table, false)
    }

    pub fn by_name(name: &str) -> Result<FiniteGroup> {
        match name {
            "S3" => Ok(FiniteGroup::symmetric3()),
            _ => match name.strip_prefix('Z').and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if (1..=64).contains(&n) => FiniteGroup::cyclic(n),
                _ => Err(Error::usage(format!("unknown group {name:?} (expected Zn or S3)"))),
            },
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::usage(format!("{label:?} is not an element of {}", self.name)))
    }

    /// Validates that the labelled elements form a subgroup; returns their indices, sorted.
    pub fn subgroup(&self, labels: &[&str]) -> Result<Vec<usize>> {
        let mut idx: Vec<usize> = labels.iter().map(|l| self.index_of(l)).collect::<Result<_>>()?;
        idx.sort_unstable();
        idx.dedup();
        if idx.is_empty() || !idx.contains(&self.identity) {
            return Err(Error::usage(format!("{labels:?} does not contain the identity of {}", self.name)));
        }
        for &a in &idx {
            for &b in &idx {
                if idx.binary_search(&self.mul(a, self.inv(b))).is_err() {
                    return Err(Error::usage(format!("{labels:?} is not a subgroup of {}", self.name)));
                }
            }
        }
        Ok(idx)
    }

    /// Label of g in the group algebra: 1, t, t2, … for cyclic groups.
    pub fn algebra_label(&self, g: usize) -> String {
        if !self.cyclic {
            return self.labels[g].clone();
        }
        match g {
            0 => "1".into(),
            1 => "t".into(),
            _ => format!("t{g}"),
        }
    }
}

fn int_key(i: usize) -> Key {
    Key::Int(i as i64)
}

fn key_index(k: &Key) -> usize {
    k.as_int().unwrap_or(0) as usize
}

pub fn dense_mha(
    name: &str,
    alg: Arc<DenseAlgebra>,
    delta: HashMap<Key, Element>,
    counit: HashMap<Key, Scalar>,
    antipode: Option<HashMap<Key, Element>>,
    antipode_inv: Option<HashMap<Key, Element>>,
    source: MhaSource,
) -> Result<Mha> {
    let field = alg.field();
    let table = |m: HashMap<Key, Element>| -> KeyMap {
        Arc::new(move |k| {
            m.get(k)
                .cloned()
                .ok_or_else(|| Error::usage(format!("{k} outside the basis")))
        })
    };
    let alg_ref: AlgRef = alg;
    Mha::new(
        name,
        alg_ref.clone(),
        Arc::new(ClassicalComul::new(alg_ref, delta)),
        Arc::new(move |k| counit.get(k).cloned().unwrap_or_else(|| field.zero())),
        antipode.map(table),
        antipode_inv.map(table),
        source,
    )
}

fn family(name: &str, params: &[(&str, String)]) -> MhaSource {
    MhaSource::Family {
        family: name.into(),
        params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<BTreeMap<_, _>>(),
    }
}

/// Functions on a finite group: pointwise product, Δ(δ_r) = Σ_{st=r} δ_s⊗δ_t, ε(f) = f(e), S(δ_s) = δ_{s⁻¹}.
pub fn function_algebra(g: &FiniteGroup, field: Field) -> Result<Mha> {
    let n = g.order();
    let name = format!("A_{}", g.name);
    let alg = Arc::new(DenseAlgebra::new(
        name.clone(),
        field,
        (0..n).map(int_key).collect(),
        g.labels.iter().map(|l| format!("δ{l}")).collect(),
        |a, b| if a == b { Element::basis(a.clone(), field) } else { Element::zero() },
    )?);
    let mut delta: HashMap<Key, Element> = (0..n).map(|r| (int_key(r), Element::zero())).collect();
    for s in 0..n {
        for t in 0..n {
            delta
                .get_mut(&int_key(g.mul(s, t)))
                .expect("group element")
                .add_term(Key::pair(int_key(s), int_key(t)), field.one());
        }
    }
    let counit = (0..n)
        .map(|s| (int_key(s), if s == g.identity { field.one() } else { field.zero() }))
        .collect();
    let s: HashMap<Key, Element> = (0..n).map(|s| (int_key(s), Element::basis(int_key(g.inv(s)), field))).collect();
    dense_mha(
        &name,
        alg,
        delta,
        counit,
        Some(s.clone()),
        Some(s),
        family("function_algebra", &[("group", g.name.clone())]),
    )
}

/// The group algebra: Δ(g) = g⊗g, ε(g) = 1, S(g) = g⁻¹.
pub fn group_algebra(g: &FiniteGroup, field: Field) -> Result<Mha> {
    let n = g.order();
    let name = format!("k{}", g.name);
    let alg = Arc::new(DenseAlgebra::new(
        name.clone(),
        field,
        (0..n).map(int_key).collect(),
        (0..n).map(|i| g.algebra_label(i)).collect(),
        |a, b| Element::basis(int_key(g.mul(key_index(a), key_index(b))), field),
    )?);
    let delta = (0..n)
        .map(|s| (int_key(s), Element::basis(Key::pair(int_key(s), int_key(s)), field)))
        .collect();
    let counit = (0..n).map(|s| (int_key(s), field.one())).collect();
    let s: HashMap<Key, Element> = (0..n).map(|s| (int_key(s), Element::basis(int_key(g.inv(s)), field))).collect();
    dense_mha(
        &name,
        alg,
        delta,
        counit,
        Some(s.clone()),
        Some(s),
        family("group_algebra", &[("group", g.name.clone())]),
    )
}

/// Indicator function of a subgroup, as an element of the function algebra.
pub fn indicator(members: &[usize], field: Field) -> Element {
    members.iter().map(|&i| (int_key(i), field.one())).collect()
}

fn taft_label(i: i64, j: i64) -> String {
    let g = match i {
        0 => String::new(),
        1 => "g".into(),
        _ => format!("g{i}"),
    };
    let x = match j {
        0 => String::new(),
        1 => "x".into(),
        _ => format!("x{j}"),
    };
    if g.is_empty() && x.is_empty() {
        "1".into()
    } else {
        g + &x
    }
}

/// ⟨g, x | gⁿ = 1, xⁿ = 0, xg = q·gx⟩ with Δ(g) = g⊗g, Δ(x) = x⊗1 + g⊗x.
/// Basis g^i x^j is keyed by the pair (i, j).
pub fn taft_like(n: i64, q: &Scalar, field: Field, name: &str) -> Result<Mha> {
    if n < 2 {
        return Err(Error::usage("Taft algebras need order at least 2"));
    }
    let primitive = (1..n).all(|k| !q.pow(k).is_some_and(|v| v.is_one())) && q.pow(n).is_some_and(|v| v.is_one());
    if !primitive {
        return Err(Error::usage(format!("q = {q} is not a primitive root of unity of order {n} in {field}")));
    }
    let keys: Vec<Key> = (0..n).flat_map(|j| (0..n).map(move |i| Key::Pair(i, j))).collect();
    let labels = keys
        .iter()
        .map(|k| {
            let (i, j) = k.as_pair().expect("pair key");
            taft_label(i, j)
        })
        .collect();
    let qq = q.clone();
    let alg = Arc::new(DenseAlgebra::new(name, field, keys.clone(), labels, |a, b| {
        let ((i, j), (k, l)) = (a.as_pair().expect("pair"), b.as_pair().expect("pair"));
        if j + l >= n {
            return Element::zero();
        }
        Element::term(Key::Pair((i + k) % n, j + l), qq.pow(j * k).expect("nonzero q"))
    })?);
    let alg_ref: AlgRef = alg.clone();
    let square = TensorAlgebra::new(alg_ref.clone(), alg_ref.clone())?;
    let el = |i: i64, j: i64| Element::basis(Key::Pair(i, j), field);
    let (one, g, x) = (el(0, 0), el(1, 0), el(0, 1));
    let ginv = el(n - 1, 0);
    let delta_g = tensor::pure(&[&g, &g]);
    let delta_x = &tensor::pure(&[&x, &one]) + &tensor::pure(&[&g, &x]);
    let s_x = multiply(&ginv, &x, alg.as_ref())?.scale(&-field.one());
    let s_inv_x = multiply(&x, &ginv, alg.as_ref())?.scale(&-field.one());
    let mut delta = HashMap::new();
    let mut counit = HashMap::new();
    let mut s = HashMap::new();
    let mut s_inv = HashMap::new();
    for k in &keys {
        let (i, j) = k.as_pair().expect("pair");
        let mut d = tensor::pure(&[&one, &one]);
        let (mut sk, mut sik) = (one.clone(), one.clone());
        for _ in 0..i {
            d = multiply(&d, &delta_g, &square)?;
        }
        for _ in 0..j {
            d = multiply(&d, &delta_x, &square)?;
            sk = multiply(&s_x, &sk, alg.as_ref())?;
            sik = multiply(&s_inv_x, &sik, alg.as_ref())?;
        }
        for _ in 0..i {
            sk = multiply(&sk, &ginv, alg.as_ref())?;
            sik = multiply(&sik, &ginv, alg.as_ref())?;
        }
        delta.insert(k.clone(), d);
        counit.insert(k.clone(), if j == 0 { field.one() } else { field.zero() });
        s.insert(k.clone(), sk);
        s_inv.insert(k.clone(), sik);
    }
    dense_mha(
        name,
        alg,
        delta,
        counit,
        Some(s),
        Some(s_inv),
        family("taft", &[("order", n.to_string()), ("q", q.to_string())]),
    )
}

/// Sweedler's four-dimensional Hopf algebra.
pub fn sweedler(field: Field) -> Result<Mha> {
    let mut m = taft_like(2, &field.int(-1), field, "H4")?;
    m.source = family("sweedler", &[]);
    Ok(m)
}

/// The Taft algebra of order 3 at a primitive cube root of unity q.
pub fn taft(field: Field, q: &Scalar) -> Result<Mha> {
    let mut m = taft_like(3, q, field, &format!("T3({q})"))?;
    m.source = family("taft", &[("q", q.to_string())]);
    Ok(m)
}

fn key_range(radius: i64) -> Vec<Key> {
    (-radius..=radius).map(Key::Int).collect()
}

/// Finitely supported functions on ℤ, rule backend, with window |p| ≤ radius.
pub fn function_algebra_z(field: Field, radius: i64) -> Result<Mha> {
    if radius < 0 {
        return Err(Error::usage("window radius must be nonnegative"));
    }
    let alg: AlgRef = Arc::new(RuleAlgebra {
        name: "A_Z".into(),
        field,
        product: Arc::new(move |a, b| {
            Ok(if a == b { Element::basis(a.clone(), field) } else { Element::zero() })
        }),
        contains: Arc::new(|k| matches!(k, Key::Int(_))),
        label: Arc::new(|k| format!("δ{k}")),
        window: key_range(radius),
        probe: key_range(radius + 1),
        window_description: format!("δ_p with |p| ≤ {radius}"),
        commutative: true,
    });
    let int = |k: &Key| k.as_int().ok_or_else(|| Error::usage(format!("{k} is not a key of A_Z")));
    let comul = RuleComul(Arc::new(move |a, how, b| {
        let (p, q) = (int(a)?, int(b)?);
        let (first, second) = match how {
            Cover::RightOnSecond | Cover::LeftOnSecond => (p - q, q),
            Cover::RightOnFirst | Cover::LeftOnFirst => (q, p - q),
        };
        Ok(Element::basis(Key::pair(Key::Int(first), Key::Int(second)), field))
    }));
    let s: KeyMap = Arc::new(move |k| Ok(Element::basis(Key::Int(-int(k)?), field)));
    Mha::new(
        "A_Z",
        alg,
        Arc::new(comul),
        Arc::new(move |k| if k.as_int() == Some(0) { field.one() } else { field.zero() }),
        Some(s.clone()),
        Some(s),
        family("A_Z", &[("radius", radius.to_string())]),
    )
}

fn epdq_label(p: i64, q: i64) -> String {
    match q {
        0 => format!("e{p}"),
        1 => format!("e{p}d"),
        _ => format!("e{p}d^{q}"),
    }
}

fn pair(k: &Key) -> Result<(i64, i64)> {
    match k.as_pair() {
        Some((p, q)) if q >= 0 => Ok((p, q)),
        _ => Err(Error::usage(format!("{k} is not a basis key e_p d^q"))),
    }
}

/// Leg-wise actions of the generator comultiplications on two-leg tensors of the
/// e_p d^q algebra, keyed by pairs (p, q).
struct GeneratorActions {
    lambda: Scalar,
}

impl GeneratorActions {
    fn power(&self, n: i64) -> Scalar {
        self.lambda.pow(n).expect("λ is nonzero")
    }

    fn each(t: &Element, mut f: impl FnMut((i64, i64), (i64, i64), &Scalar, &mut Element)) -> Element {
        let mut out = Element::zero();
        for (k, c) in t.terms() {
            let l = tensor::legs_of(k, 2);
            f(l[0].as_pair().expect("pair"), l[1].as_pair().expect("pair"), c, &mut out);
        }
        out
    }

    fn key(u: (i64, i64), v: (i64, i64)) -> Key {
        Key::pair(Key::Pair(u.0, u.1), Key::Pair(v.0, v.1))
    }

    /// Δ(e_p)·t
    fn e_left(&self, p: i64, t: &Element) -> Element {
        Self::each(t, |u, v, c, out| {
            if v.0 == p - u.0 {
                out.add_term(Self::key(u, v), c.clone());
            }
        })
    }

    /// Δ(d)·t = (d⊗c_λ)t + (1⊗d)t
    fn d_left(&self, t: &Element) -> Element {
        Self::each(t, |u, v, c, out| {
            out.add_term(Self::key((u.0 + 1, u.1 + 1), v), c * &self.power(v.0));
            out.add_term(Self::key(u, (v.0 + 1, v.1 + 1)), c.clone());
        })
    }

    /// t·Δ(e_p)
    fn e_right(&self, p: i64, t: &Element) -> Element {
        Self::each(t, |u, v, c, out| {
            if v.0 == p - u.0 + u.1 + v.1 {
                out.add_term(Self::key(u, v), c.clone());
            }
        })
    }

    /// t·Δ(d) = t(d⊗c_λ) + t(1⊗d)
    fn d_right(&self, t: &Element) -> Element {
        Self::each(t, |u, v, c, out| {
            out.add_term(Self::key((u.0, u.1 + 1), v), c * &self.power(v.0 - v.1));
            out.add_term(Self::key(u, (v.0, v.1 + 1)), c.clone());
        })
    }
}

/// Covered comultiplication of e_p d^q against b = e_s d^t. The missing unit on
/// the uncovered leg is replaced by the single idempotent e_r that fixes that
/// leg of the result, determined by degree bookkeeping.
fn epdq_cover(g: &GeneratorActions, field: Field, a: (i64, i64), how: Cover, b: (i64, i64)) -> Element {
    let ((p, q), (s, t)) = (a, b);
    let start = |u: (i64, i64), v: (i64, i64)| Element::basis(GeneratorActions::key(u, v), field);
    match how {
        Cover::RightOnSecond | Cover::RightOnFirst => {
            let mut acc = if how == Cover::RightOnSecond {
                start((p - s - q, 0), (s, t))
            } else {
                start((s, t), (p - q - s, 0))
            };
            for _ in 0..q {
                acc = g.d_left(&acc);
            }
            g.e_left(p, &acc)
        }
        Cover::LeftOnFirst | Cover::LeftOnSecond => {
            let mut acc = if how == Cover::LeftOnFirst {
                start((s, t), (p - s + t, 0))
            } else {
                start((p - s + t, 0), (s, t))
            };
            acc = g.e_right(p, &acc);
            for _ in 0..q {
                acc = g.d_right(&acc);
            }
            acc
        }
    }
}

fn epdq_keys(radius: i64, degree: i64) -> Vec<Key> {
    (0..=degree)
        .flat_map(|q| (-radius..=radius).map(move |p| Key::Pair(p, q)))
        .collect()
}

/// The algebra spanned by e_p d^q (p ∈ ℤ, q ≥ 0) with d e_p = e_{p+1} d and
/// e_p e_r = δ_{p,r} e_p, with Δ(e_p) = Σ e_r⊗e_{p−r} and Δ(d) = d⊗c_λ + 1⊗d.
pub fn epdq(field: Field, lambda: &Scalar, radius: i64, degree: i64) -> Result<Mha> {
    if lambda.is_zero() {
        return Err(Error::usage("λ must be nonzero"));
    }
    if radius < 0 || degree < 0 {
        return Err(Error::usage("window radius and degree must be nonnegative"));
    }
    let alg: AlgRef = Arc::new(RuleAlgebra {
        name: "A_epdq".into(),
        field,
        product: Arc::new(move |a, b| {
            let ((p, q), (r, s)) = (pair(a)?, pair(b)?);
            Ok(if p == r + q {
                Element::basis(Key::Pair(p, q + s), field)
            } else {
                Element::zero()
            })
        }),
        contains: Arc::new(|k| matches!(k, Key::Pair(_, q) if *q >= 0)),
        label: Arc::new(|k| match k.as_pair() {
            Some((p, q)) => epdq_label(p, q),
            None => k.to_string(),
        }),
        window: epdq_keys(radius, degree),
        probe: epdq_keys(radius + degree + 1, degree + 1),
        window_description: format!("e_p d^q with |p| ≤ {radius}, q ≤ {degree}"),
        commutative: false,
    });
    let gens = Arc::new(GeneratorActions { lambda: lambda.clone() });
    let g1 = gens.clone();
    let comul = RuleComul(Arc::new(move |a, how, b| Ok(epdq_cover(&g1, field, pair(a)?, how, pair(b)?))));
    let inv_lambda = lambda.inv().expect("nonzero");
    // S(e_p d^q) = (−d c_λ⁻¹)^q e_{−p} and S⁻¹(e_p d^q) = (−c_λ⁻¹ d)^q e_{−p}.
    let antipode_with = move |inverse: bool| -> KeyMap {
        let il = inv_lambda.clone();
        Arc::new(move |k| {
            let (p, q) = pair(k)?;
            let (mut x, mut y, mut c) = (-p, 0i64, field.one());
            for _ in 0..q {
                if inverse {
                    x += 1;
                    y += 1;
                    c = &c * &il.pow(x).expect("nonzero");
                } else {
                    c = &c * &il.pow(x).expect("nonzero");
                    x += 1;
                    y += 1;
                }
                c = -c;
            }
            Ok(Element::term(Key::Pair(x, y), c))
        })
    };
    Mha::new(
        "A_epdq",
        alg,
        Arc::new(comul),
        Arc::new(move |k| {
            if k.as_pair() == Some((0, 0)) {
                field.one()
            } else {
                field.zero()
            }
        }),
        Some(antipode_with(false)),
        Some(antipode_with(true)),
        family(
            "epdq",
            &[
                ("lambda", lambda.to_string()),
                ("radius", radius.to_string()),
                ("degree", degree.to_string()),
            ],
        ),
    )
}

/// c_λ = Σ_r λ^r e_r in the multiplier algebra of the e_p d^q algebra.
pub fn c_lambda(carrier: AlgRef, lambda: &Scalar) -> Result<Multiplier> {
    if lambda.is_zero() {
        return Err(Error::usage("λ must be nonzero"));
    }
    let (l1, l2) = (lambda.clone(), lambda.clone());
    Ok(Multiplier::from_maps(
        carrier,
        format!("c_{lambda}"),
        Arc::new(move |k| {
            let (p, _) = pair(k)?;
            Ok(Element::term(k.clone(), l1.pow(p).expect("nonzero")))
        }),
        Arc::new(move |k| {
            let (p, q) = pair(k)?;
            Ok(Element::term(k.clone(), l2.pow(p - q).expect("nonzero")))
        }),
        MultiplierSource::Named {
            name: "c_lambda".into(),
            params: [("lambda".to_string(), lambda.to_string())].into(),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mhopf::hopf_suite;
    use crate::window::Sampling;

    #[test]
    fn symmetric_group_table() {
        let g = FiniteGroup::symmetric3();
        let t = g.index_of("(12)").unwrap();
        let c = g.index_of("(123)").unwrap();
        assert_eq!(g.mul(t, t), g.identity);
        assert_eq!(g.mul(c, g.mul(c, c)), g.identity);
        assert_ne!(g.mul(c, t), g.mul(t, c));
        assert!(g.subgroup(&["e", "(123)", "(132)"]).is_ok());
        assert!(g.subgroup(&["e", "(12)", "(13)"]).is_err());
    }

    #[test]
    fn taft_rejects_non_primitive_q() {
        let f = Field::prime(7).unwrap();
        assert!(taft(f, &f.int(1)).is_err());
        assert!(taft(f, &f.int(3)).is_err());
        assert!(taft(f, &f.int(2)).is_ok());
        assert!(sweedler(Field::prime(2).unwrap()).is_err());
    }

    #[test]
    fn sweedler_relations() {
        let h = sweedler(Field::Rationals).unwrap();
        let f = Field::Rationals;
        let g = Element::basis(Key::Pair(1, 0), f);
        let x = Element::basis(Key::Pair(0, 1), f);
        let xg = multiply(&x, &g, h.alg.as_ref()).unwrap();
        let gx = multiply(&g, &x, h.alg.as_ref()).unwrap();
        assert_eq!(xg, gx.scale(&f.int(-1)));
        assert_eq!(h.t1(&g, &h.alg.unit().unwrap()).unwrap(), tensor::pure(&[&g, &g]));
    }

    #[test]
    fn dense_examples_are_hopf() {
        let q = Field::Rationals;
        let f7 = Field::prime(7).unwrap();
        let mhas = [
            function_algebra(&FiniteGroup::cyclic(4).unwrap(), q).unwrap(),
            group_algebra(&FiniteGroup::symmetric3(), q).unwrap(),
            sweedler(q).unwrap(),
            taft(f7, &f7.int(2)).unwrap(),
        ];
        for m in &mhas {
            for r in hopf_suite(m, &Sampling::default()) {
                assert!(r.is_ok(), "{}", r.to_text());
            }
        }
    }

    #[test]
    fn epdq_cover_matches_closed_form() {
        let f = Field::Rationals;
        let lambda = f.int(2);
        let m = epdq(f, &lambda, 2, 2).unwrap();
        let li = lambda.inv().unwrap();
        // q-binomial [n, k] at base λ⁻¹
        let qbinom = |n: i64, k: i64| -> Scalar {
            let qint = |m: i64| (0..m).fold(f.zero(), |acc, i| &acc + &li.pow(i).unwrap());
            let qfact = |m: i64| (1..=m).fold(f.one(), |acc, i| &acc * &qint(i));
            &qfact(n) * &(&qfact(k) * &qfact(n - k)).inv().unwrap()
        };
        for (p, q, s, t) in [(1, 2, 0, 1), (0, 1, 2, 0), (-1, 3, 1, 2), (2, 0, -1, 1)] {
            let got = m.comul.cover(&Key::Pair(p, q), Cover::RightOnSecond, &Key::Pair(s, t)).unwrap();
            let expect: Element = (0..=q)
                .map(|i| {
                    let c = &qbinom(q, i) * &lambda.pow(i * (s + q - i)).unwrap();
                    (Key::pair(Key::Pair(p - s - q + i, i), Key::Pair(s + q - i, q - i + t)), c)
                })
                .collect();
            assert_eq!(got, expect, "at e{p}d^{q}, e{s}d^{t}");
        }
    }

    #[test]
    fn epdq_suites_pass_on_window() {
        let f = Field::Rationals;
        let m = epdq(f, &f.int(2), 2, 2).unwrap();
        for r in hopf_suite(&m, &Sampling::default()) {
            assert!(r.is_ok(), "{}", r.to_text());
        }
    }

    #[test]
    fn c_lambda_is_not_an_element() {
        let f = Field::Rationals;
        let m = epdq(f, &f.int(2), 3, 1).unwrap();
        let c = c_lambda(m.alg.clone(), &f.int(2)).unwrap();
        assert!(c.check_compatibility(&Sampling::default()).is_ok());
        assert_eq!(c.realize().unwrap(), None);
    }

    #[test]
    fn function_algebra_on_z_is_hopf() {
        let m = function_algebra_z(Field::Rationals, 3).unwrap();
        for r in hopf_suite(&m, &Sampling::default()) {
            assert!(r.is_ok(), "{}", r.to_text());
        }
    }
}
