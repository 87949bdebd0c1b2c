//! Basis-indexed algebras: dense structure-constant tables, rule-based infinite bases,
//! tensor products, local units, and the associativity and nondegeneracy suites.

mod element;
mod key;
pub mod tensor;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

pub use element::{Element, TensorElement};
pub use key::Key;
pub use tensor::{Side, TensorShape};

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::report::{CheckReport, ClauseCheck, Witness};
use crate::window::{tuples, Sampling};

pub trait Algebra: Send + Sync {
    fn name(&self) -> &str;
    fn field(&self) -> Field;
    fn mul_keys(&self, a: &Key, b: &Key) -> Result<Element>;
    /// The full basis, for finite-dimensional backends.
    fn basis(&self) -> Option<&[Key]> {
        None
    }
    /// Keys over which suites quantify.
    fn window(&self) -> &[Key];
    /// A wider key set used to probe annihilators and realizations.
    fn probe_window(&self) -> &[Key] {
        self.window()
    }
    fn window_description(&self) -> String;
    fn label(&self, k: &Key) -> String {
        k.to_string()
    }
    fn is_commutative(&self) -> bool;
    fn contains(&self, k: &Key) -> bool;
    fn unit(&self) -> Option<Element> {
        None
    }
}

pub type AlgRef = Arc<dyn Algebra>;

pub fn is_dense(alg: &dyn Algebra) -> bool {
    alg.basis().is_some()
}

pub fn multiply(x: &Element, y: &Element, alg: &dyn Algebra) -> Result<Element> {
    Element::bilinear(x, y, |a, b| alg.mul_keys(a, b))
}

pub fn show(x: &Element, alg: &dyn Algebra) -> String {
    x.show(&|k| alg.label(k))
}

/// Finite-dimensional algebra given by a structure-constant table.
pub struct DenseAlgebra {
    name: String,
    field: Field,
    keys: Vec<Key>,
    labels: Vec<String>,
    index: HashMap<Key, usize>,
    table: Vec<Element>,
    commutative: bool,
    unit: OnceLock<Option<Element>>,
}

impl DenseAlgebra {
    pub fn new(
        name: impl Into<String>,
        field: Field,
        keys: Vec<Key>,
        labels: Vec<String>,
        product: impl Fn(&Key, &Key) -> Element,
    ) -> Result<DenseAlgebra> {
        if keys.len() != labels.len() {
            return Err(Error::usage("basis keys and labels differ in length"));
        }
        let index: HashMap<Key, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        if index.len() != keys.len() {
            return Err(Error::usage("duplicate basis key"));
        }
        let mut table = Vec::with_capacity(keys.len() * keys.len());
        for a in &keys {
            for b in &keys {
                let p = product(a, b);
                if let Some(k) = p.keys().find(|k| !index.contains_key(k)) {
                    return Err(Error::usage(format!("product {a}·{b} leaves the basis at {k}")));
                }
                table.push(p);
            }
        }
        let n = keys.len();
        let commutative = (0..n).all(|i| (0..n).all(|j| table[i * n + j] == table[j * n + i]));
        Ok(DenseAlgebra {
            name: name.into(),
            field,
            keys,
            labels,
            index,
            table,
            commutative,
            unit: OnceLock::new(),
        })
    }

    /// Keys `Int(0..n)`; entries are (i, j, [(k, c)]) meaning e_i·e_j = Σ c e_k.
    pub fn from_table(
        name: impl Into<String>,
        field: Field,
        labels: Vec<String>,
        entries: &[(usize, usize, Vec<(usize, Scalar)>)],
    ) -> Result<DenseAlgebra> {
        let n = labels.len();
        let mut map: HashMap<(usize, usize), Element> = HashMap::new();
        for (i, j, terms) in entries {
            if *i >= n || *j >= n || terms.iter().any(|(k, _)| *k >= n) {
                return Err(Error::usage(format!("product entry ({i}, {j}) out of range")));
            }
            let e = map.entry((*i, *j)).or_default();
            for (k, c) in terms {
                e.add_term(Key::Int(*k as i64), c.clone());
            }
        }
        let keys = (0..n as i64).map(Key::Int).collect();
        DenseAlgebra::new(name, field, keys, labels, |a, b| {
            let (i, j) = (a.as_int().unwrap_or(0) as usize, b.as_int().unwrap_or(0) as usize);
            map.get(&(i, j)).cloned().unwrap_or_default()
        })
    }

    /// The one-dimensional algebra of scalars.
    pub fn ground(field: Field) -> DenseAlgebra {
        DenseAlgebra::new("k", field, vec![Key::Int(0)], vec!["1".into()], |_, _| {
            Element::basis(Key::Int(0), field)
        })
        .expect("ground field algebra")
    }

    pub fn index_of(&self, k: &Key) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }
}

impl Algebra for DenseAlgebra {
    fn name(&self) -> &str {
        &self.name
    }

    fn field(&self) -> Field {
        self.field
    }

    fn mul_keys(&self, a: &Key, b: &Key) -> Result<Element> {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => Ok(self.table[i * self.keys.len() + j].clone()),
            _ => Err(Error::usage(format!("{a} or {b} is not a basis key of {}", self.name))),
        }
    }

    fn basis(&self) -> Option<&[Key]> {
        Some(&self.keys)
    }

    fn window(&self) -> &[Key] {
        &self.keys
    }

    fn window_description(&self) -> String {
        format!("full basis ({} keys)", self.keys.len())
    }

    fn label(&self, k: &Key) -> String {
        match self.index.get(k) {
            Some(&i) => self.labels[i].clone(),
            None => k.to_string(),
        }
    }

    fn is_commutative(&self) -> bool {
        self.commutative
    }

    fn contains(&self, k: &Key) -> bool {
        self.index.contains_key(k)
    }

    fn unit(&self) -> Option<Element> {
        self.unit
            .get_or_init(|| {
                let targets: Vec<Element> = self.keys.iter().map(|k| Element::basis(k.clone(), self.field)).collect();
                find_local_unit(self, &targets).ok().flatten()
            })
            .clone()
    }
}

pub type KeyProduct = Arc<dyn Fn(&Key, &Key) -> Result<Element> + Send + Sync>;
pub type KeyPredicate = Arc<dyn Fn(&Key) -> bool + Send + Sync>;
pub type KeyLabel = Arc<dyn Fn(&Key) -> String + Send + Sync>;

/// Algebra with a possibly infinite basis, given by a product rule on keys and
/// checked over an explicit finite window.
#[derive(Clone)]
pub struct RuleAlgebra {
    pub name: String,
    pub field: Field,
    pub product: KeyProduct,
    pub contains: KeyPredicate,
    pub label: KeyLabel,
    pub window: Vec<Key>,
    pub probe: Vec<Key>,
    pub window_description: String,
    pub commutative: bool,
}

impl Algebra for RuleAlgebra {
    fn name(&self) -> &str {
        &self.name
    }

    fn field(&self) -> Field {
        self.field
    }

    fn mul_keys(&self, a: &Key, b: &Key) -> Result<Element> {
        (self.product)(a, b)
    }

    fn window(&self) -> &[Key] {
        &self.window
    }

    fn probe_window(&self) -> &[Key] {
        &self.probe
    }

    fn window_description(&self) -> String {
        self.window_description.clone()
    }

    fn label(&self, k: &Key) -> String {
        (self.label)(k)
    }

    fn is_commutative(&self) -> bool {
        self.commutative
    }

    fn contains(&self, k: &Key) -> bool {
        (self.contains)(k)
    }
}

/// A⊗B with keys `Tuple([a, b])` and the componentwise product.
pub struct TensorAlgebra {
    name: String,
    left: AlgRef,
    right: AlgRef,
    basis: Option<Vec<Key>>,
    window: Vec<Key>,
    probe: Vec<Key>,
}

fn product_keys(a: &[Key], b: &[Key]) -> Vec<Key> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| Key::pair(x.clone(), y.clone())))
        .collect()
}

impl TensorAlgebra {
    pub fn new(left: AlgRef, right: AlgRef) -> Result<TensorAlgebra> {
        if left.field() != right.field() {
            return Err(Error::usage("tensor factors over different fields"));
        }
        let basis = match (left.basis(), right.basis()) {
            (Some(a), Some(b)) => Some(product_keys(a, b)),
            _ => None,
        };
        Ok(TensorAlgebra {
            name: format!("{}⊗{}", left.name(), right.name()),
            window: product_keys(left.window(), right.window()),
            probe: product_keys(left.probe_window(), right.probe_window()),
            basis,
            left,
            right,
        })
    }

    pub fn factors(&self) -> (&AlgRef, &AlgRef) {
        (&self.left, &self.right)
    }
}

impl Algebra for TensorAlgebra {
    fn name(&self) -> &str {
        &self.name
    }

    fn field(&self) -> Field {
        self.left.field()
    }

    fn mul_keys(&self, a: &Key, b: &Key) -> Result<Element> {
        let x = Element::basis(a.clone(), self.field());
        let y = Element::basis(b.clone(), self.field());
        tensor::leg_product(&x, &y, &[self.left.as_ref(), self.right.as_ref()])
    }

    fn basis(&self) -> Option<&[Key]> {
        self.basis.as_deref()
    }

    fn window(&self) -> &[Key] {
        &self.window
    }

    fn probe_window(&self) -> &[Key] {
        &self.probe
    }

    fn window_description(&self) -> String {
        format!("{} ⊗ {}", self.left.window_description(), self.right.window_description())
    }

    fn label(&self, k: &Key) -> String {
        let l = tensor::legs_of(k, 2);
        format!("{}⊗{}", self.left.label(&l[0]), self.right.label(&l[1]))
    }

    fn is_commutative(&self) -> bool {
        self.left.is_commutative() && self.right.is_commutative()
    }

    fn contains(&self, k: &Key) -> bool {
        match k.legs() {
            Some([a, b]) => self.left.contains(a) && self.right.contains(b),
            _ => false,
        }
    }

    fn unit(&self) -> Option<Element> {
        Some(tensor::pure(&[&self.left.unit()?, &self.right.unit()?]))
    }
}

/// Solves e·t = t = t·e for all targets over the candidate keys (the basis, or the
/// probe window of a rule algebra), preferring the solution with free coordinates zero.
pub fn find_local_unit(alg: &dyn Algebra, targets: &[Element]) -> Result<Option<Element>> {
    let field = alg.field();
    let candidates: &[Key] = alg.basis().unwrap_or_else(|| alg.probe_window());
    let n = candidates.len();
    let mut rows: HashMap<(usize, Key), usize> = HashMap::new();
    let mut coeffs: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let mut row_for = |side: usize, k: &Key, coeffs: &mut Vec<Vec<Scalar>>, rhs: &mut Vec<Scalar>| -> usize {
        *rows.entry((side, k.clone())).or_insert_with(|| {
            coeffs.push(vec![field.zero(); n]);
            rhs.push(field.zero());
            coeffs.len() - 1
        })
    };
    for (ti, t) in targets.iter().enumerate() {
        for side in 0..2 {
            let tag = 2 * ti + side;
            for (k, c) in t.terms() {
                let r = row_for(tag, k, &mut coeffs, &mut rhs);
                rhs[r] += c;
            }
            for (j, cand) in candidates.iter().enumerate() {
                let basis = Element::basis(cand.clone(), field);
                let p = if side == 0 { multiply(&basis, t, alg)? } else { multiply(t, &basis, alg)? };
                for (k, c) in p.terms() {
                    let r = row_for(tag, k, &mut coeffs, &mut rhs);
                    coeffs[r][j] += c;
                }
            }
        }
    }
    if coeffs.is_empty() {
        return Ok(Some(Element::zero()));
    }
    let m = Matrix::from_rows(field, coeffs)?;
    match crate::exact::solve_linear(&m, &rhs)? {
        Some(x) => Ok(Some(candidates.iter().cloned().zip(x).collect())),
        None if is_dense(alg) => Ok(None),
        None => Err(Error::WindowExhausted(format!(
            "no local unit for {} target(s) within {}",
            targets.len(),
            alg.window_description()
        ))),
    }
}

/// (ab)c = a(bc) over the given triples, or all window triples.
pub fn check_associativity(alg: &dyn Algebra, triples: Option<Vec<[Key; 3]>>, sampling: &Sampling) -> CheckReport {
    let w = alg.window();
    let triples: Vec<Vec<Key>> = match triples {
        Some(t) => t.into_iter().map(|t| t.to_vec()).collect(),
        None => tuples(&[w, w, w], is_dense(alg), sampling),
    };
    let f = alg.field();
    let mut c = ClauseCheck::new("associativity");
    for t in &triples {
        let inputs = || t.iter().map(|k| alg.label(k)).collect::<Vec<_>>();
        let (a, b, d) = (
            Element::basis(t[0].clone(), f),
            Element::basis(t[1].clone(), f),
            Element::basis(t[2].clone(), f),
        );
        let sides = multiply(&a, &b, alg)
            .and_then(|ab| multiply(&ab, &d, alg))
            .and_then(|l| Ok((l, multiply(&a, &multiply(&b, &d, alg)?, alg)?)));
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
        "associativity",
        alg.name(),
        &alg.window_description(),
        sampling.seed,
        vec![c.finish()],
    )
}

/// No nonzero a in the window with a·b = 0 (resp. b·a = 0) for all probe keys b.
pub fn check_nondegenerate(alg: &dyn Algebra) -> CheckReport {
    let field = alg.field();
    let unknowns = alg.window();
    let probes = alg.probe_window();
    let clauses = [Side::Right, Side::Left]
        .into_iter()
        .map(|side| {
            let name = match side {
                Side::Right => "no left annihilated element (a·b = 0 for all b)",
                Side::Left => "no right annihilated element (b·a = 0 for all b)",
            };
            let mut c = ClauseCheck::new(name);
            let mut rows: HashMap<(usize, Key), Vec<Scalar>> = HashMap::new();
            let mut failed = None;
            'outer: for (j, a) in unknowns.iter().enumerate() {
                for (bi, b) in probes.iter().enumerate() {
                    let p = match side {
                        Side::Right => alg.mul_keys(a, b),
                        Side::Left => alg.mul_keys(b, a),
                    };
                    match p {
                        Ok(p) => {
                            for (k, v) in p.terms() {
                                let row = rows
                                    .entry((bi, k.clone()))
                                    .or_insert_with(|| vec![field.zero(); unknowns.len()]);
                                row[j] += v;
                            }
                        }
                        Err(e) => {
                            failed = Some((vec![alg.label(a), alg.label(b)], e));
                            break 'outer;
                        }
                    }
                }
            }
            if let Some((inputs, e)) = failed {
                c.error(inputs, &e);
                return c.finish();
            }
            let mut keys: Vec<_> = rows.keys().cloned().collect();
            keys.sort();
            let data: Vec<Vec<Scalar>> = keys.iter().map(|k| rows[k].clone()).collect();
            let kernel = if data.is_empty() {
                (0..unknowns.len())
                    .map(|j| {
                        let mut v = vec![field.zero(); unknowns.len()];
                        v[j] = field.one();
                        v
                    })
                    .collect()
            } else {
                Matrix::from_rows(field, data).map(|m| m.kernel()).unwrap_or_default()
            };
            c.record(kernel.is_empty(), || {
                let v: Element = unknowns.iter().cloned().zip(kernel[0].iter().cloned()).collect();
                Witness {
                    inputs: vec![show(&v, alg)],
                    lhs: format!("products with all {} probe keys vanish", probes.len()),
                    rhs: "some nonzero product".into(),
                }
            });
            c.finish()
        })
        .collect();
    CheckReport::new("nondegenerate", alg.name(), &alg.window_description(), 0, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_functions(n: i64) -> DenseAlgebra {
        let f = Field::Rationals;
        let keys: Vec<Key> = (0..n).map(Key::Int).collect();
        let labels = (0..n).map(|i| format!("δ{i}")).collect();
        DenseAlgebra::new("A_Zn", f, keys, labels, |a, b| {
            if a == b {
                Element::basis(a.clone(), f)
            } else {
                Element::zero()
            }
        })
        .unwrap()
    }

    #[test]
    fn pointwise_product_and_unit() {
        let a = cyclic_functions(4);
        let f = Field::Rationals;
        let d1 = Element::basis(Key::Int(1), f);
        assert_eq!(multiply(&d1, &d1, &a).unwrap(), d1);
        let u = a.unit().unwrap();
        assert_eq!(u.len(), 4);
        assert!(a.is_commutative());
    }

    #[test]
    fn minimal_local_unit_in_function_algebra() {
        let a = cyclic_functions(4);
        let f = Field::Rationals;
        let t = [Element::basis(Key::Int(1), f), Element::basis(Key::Int(3), f)];
        let e = find_local_unit(&a, &t).unwrap().unwrap();
        assert_eq!(e, &t[0] + &t[1]);
    }

    #[test]
    fn degenerate_algebra_has_witness() {
        let f = Field::Rationals;
        let u = Key::str("u");
        let z = Key::str("z");
        let alg = DenseAlgebra::new("degenerate", f, vec![u.clone(), z.clone()], vec!["u".into(), "z".into()], |a, b| {
            if *a == Key::str("u") && *b == Key::str("u") {
                Element::basis(Key::str("u"), f)
            } else {
                Element::zero()
            }
        })
        .unwrap();
        let r = check_nondegenerate(&alg);
        assert_eq!(r.status, crate::report::Status::Fail);
        assert!(r.witnesses().any(|w| w.inputs[0] == "z"));
        assert!(check_nondegenerate(&cyclic_functions(3)).is_ok());
    }

    #[test]
    fn ground_algebra_is_associative() {
        let k = DenseAlgebra::ground(Field::Rationals);
        assert!(check_associativity(&k, None, &Sampling::default()).is_ok());
        assert!(k.unit().is_some());
    }

    #[test]
    fn tensor_algebra_is_componentwise() {
        let a: AlgRef = Arc::new(cyclic_functions(2));
        let t = TensorAlgebra::new(a.clone(), a).unwrap();
        assert_eq!(t.basis().unwrap().len(), 4);
        let k = Key::pair(Key::Int(0), Key::Int(1));
        let f = Field::Rationals;
        let x = Element::basis(k.clone(), f);
        assert_eq!(multiply(&x, &x, &t).unwrap(), x);
        assert_eq!(t.label(&k), "δ0⊗δ1");
        assert_eq!(t.unit().unwrap().len(), 4);
    }
}
