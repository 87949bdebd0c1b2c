//! The smash coproduct on Y⊗A built from a partial comodule coalgebra: T̄₁, T̄₂,
//! the multiplier Δ̄ given by its coverings, its checks, the counitary part C_b,
//! and the extension T̃ of T to M(Y⊗A).
//!
//! Smash keys are pairs (y, a). Tensors in (Y⊗A)⊗(Y⊗A) have two legs over smash keys.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::tensor::{self, legs_of, Side};
use crate::algebra::{find_local_unit, multiply, AlgRef, Algebra, DenseAlgebra, Element, Key, TensorAlgebra};
use crate::coaction::{Coaction, CoactionSource};
use crate::error::{Error, Result};
use crate::exact::{in_span, solve_linear, Field, Matrix, Scalar};
use crate::gallery::dense_mha;
use crate::mhopf::{Cover, Mha, MhaSource};
use crate::multiplier::{IdempotentE, KeyMap, Multiplier, MultiplierSource};
use crate::report::{CheckReport, Clause, ClauseCheck, Witness};
use crate::window::{tuples, Sampling};

/// (smash key, smash key) ↦ tensor in (Y⊗A)⊗(Y⊗A).
pub type PairFn = Arc<dyn Fn(&Key, &Key) -> Result<Element> + Send + Sync>;

#[derive(Clone)]
pub struct Smash {
    pub cc: Coaction,
    carrier: AlgRef,
    tbar1: PairFn,
    tbar2: PairFn,
}

impl std::fmt::Debug for Smash {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Smash").field("cc", &self.cc.name).finish()
    }
}

fn smash_key(y: &Key, a: &Key) -> Key {
    Key::pair(y.clone(), a.clone())
}

fn split(k: &Key) -> (Key, Key) {
    let l = legs_of(k, 2);
    (l[0].clone(), l[1].clone())
}

impl Smash {
    pub fn new(cc: &Coaction) -> Result<Smash> {
        if !cc.a.is_dense() {
            return Err(Error::Unsupported(format!(
                "the smash coproduct needs a finite-dimensional {}",
                cc.a.name
            )));
        }
        let carrier: AlgRef = Arc::new(TensorAlgebra::new(cc.y.alg.clone(), cc.a.alg.clone())?);
        let (c1, c2) = (cc.clone(), cc.clone());
        let tbar1: PairFn = Arc::new(move |x, w| tbar1(&c1, x, w));
        let tbar2: PairFn = Arc::new(move |w, x| tbar2(&c2, w, x));
        Ok(Smash {
            cc: cc.clone(),
            carrier,
            tbar1,
            tbar2,
        })
    }

    /// Replaces T̄₁, for exercising the checks on deliberately broken structures.
    pub fn with_tbar1(mut self, f: PairFn) -> Smash {
        self.tbar1 = f;
        self
    }

    pub fn carrier(&self) -> &AlgRef {
        &self.carrier
    }

    pub fn field(&self) -> Field {
        self.cc.y.field()
    }

    pub fn basis(&self) -> &[Key] {
        self.carrier.basis().expect("dense carrier")
    }

    pub fn element(&self, y: &Key, a: &Key) -> Element {
        Element::basis(smash_key(y, a), self.field())
    }

    pub fn unit(&self) -> Result<Element> {
        self.carrier
            .unit()
            .ok_or_else(|| Error::Unsupported(format!("{} has no unit", self.carrier.name())))
    }

    /// T̄₁((y⊗a)⊗(y′⊗a′)) = ((ι⊗T)(Δ_Y(y)⊗a₁))(1⊗1⊗y′)⊗a₂a′, linear in both arguments.
    pub fn tbar1(&self, x: &Element, w: &Element) -> Result<Element> {
        Element::bilinear(x, w, |a, b| (self.tbar1)(a, b))
    }

    /// T̄₂((y′⊗a′)⊗(y⊗a)) = y′y₁⊗(a′⊗1⊗1)((T⊗ι)(y₂⊗Δ_A(a))).
    pub fn tbar2(&self, w: &Element, x: &Element) -> Result<Element> {
        Element::bilinear(w, x, |a, b| (self.tbar2)(a, b))
    }

    /// Δ̄(x)(w₁⊗w₂) = T̄₁(x⊗w₂)(w₁⊗1).
    pub fn cover_right(&self, x: &Element, w1: &Element, w2: &Element) -> Result<Element> {
        tensor::mul_leg(&self.tbar1(x, w2)?, 2, 0, w1, Side::Right, self.carrier.as_ref())
    }

    /// (w₁⊗w₂)Δ̄(x) = (1⊗w₂)T̄₂(w₁⊗x).
    pub fn cover_left(&self, w1: &Element, w2: &Element, x: &Element) -> Result<Element> {
        tensor::mul_leg(&self.tbar2(w1, x)?, 2, 1, w2, Side::Left, self.carrier.as_ref())
    }

    /// Δ̄(x) as a tensor, through Δ̄(x)(1⊗1).
    pub fn delta_bar(&self, x: &Element) -> Result<Element> {
        let one = self.unit()?;
        self.tbar1(x, &one)
    }

    pub fn eps_bar(&self, k: &Key) -> Scalar {
        let (y, a) = split(k);
        &(self.cc.y.counit)(&y) * &(self.cc.a.counit)(&a)
    }

    pub fn eps_bar_of(&self, x: &Element) -> Scalar {
        x.evaluate(self.field(), |k| self.eps_bar(k))
    }

    pub fn show(&self, x: &Element) -> String {
        crate::algebra::show(x, self.carrier.as_ref())
    }

    pub fn show2(&self, t: &Element) -> String {
        tensor::show(t, &[self.carrier.as_ref(), self.carrier.as_ref()])
    }

    fn label(&self, k: &Key) -> String {
        self.carrier.label(k)
    }

    fn report(&self, suite: &str, sampling: &Sampling, clauses: Vec<Clause>) -> CheckReport {
        CheckReport::new(suite, &format!("smash of {}", self.cc.name), &self.window(), sampling.seed, clauses)
    }

    fn window(&self) -> String {
        format!(
            "{} ({} keys); tuple sets above {EXHAUSTIVE_LIMIT} are sampled",
            self.carrier.name(),
            self.basis().len()
        )
    }

    fn basis_element(&self, k: &Key) -> Element {
        Element::basis(k.clone(), self.field())
    }
}

fn tbar1(cc: &Coaction, x: &Key, w: &Key) -> Result<Element> {
    let ((y, a), (y2, a2)) = (split(x), split(w));
    let f = cc.y.field();
    let ylg = cc.y.alg.as_ref();
    let covered = cc.a.comul.cover(&a, Cover::RightOnSecond, &a2)?;
    let mut out = Element::zero();
    for (dk, dc) in cc.delta_y(&y)?.terms() {
        let d = legs_of(dk, 2);
        for (pk, pc) in covered.terms() {
            let pq = legs_of(pk, 2);
            let t = tensor::mul_leg(&(cc.rr)(&d[1], &pq[0])?, 2, 1, &Element::basis(y2.clone(), f), Side::Right, ylg)?;
            for (tk, tc) in t.terms() {
                let av = legs_of(tk, 2);
                let key = Key::pair(smash_key(&d[0], &av[0]), smash_key(&av[1], &pq[1]));
                out.add_term(key, &(dc * pc) * tc);
            }
        }
    }
    Ok(out)
}

fn tbar2(cc: &Coaction, w: &Key, x: &Key) -> Result<Element> {
    let ((y1, a1), (y, a)) = (split(w), split(x));
    let f = cc.y.field();
    let ylg = cc.y.alg.as_ref();
    let mut out = Element::zero();
    for (dk, dc) in cc.delta_y(&y)?.terms() {
        let d = legs_of(dk, 2);
        let first = multiply(&Element::basis(y1.clone(), f), &Element::basis(d[0].clone(), f), ylg)?;
        for (uk, uc) in (cc.rl)(&d[1], &a1)?.terms() {
            let uv = legs_of(uk, 2);
            for (pk, pc) in cc.a.comul.cover(&a, Cover::LeftOnFirst, &uv[0])?.terms() {
                let pq = legs_of(pk, 2);
                for (fk, fc) in first.terms() {
                    let key = Key::pair(smash_key(fk, &pq[0]), smash_key(&uv[1], &pq[1]));
                    out.add_term(key, &(&(dc * uc) * pc) * fc);
                }
            }
        }
    }
    Ok(out)
}

/// Largest tuple count enumerated exhaustively; beyond it a seeded sample is drawn.
pub const EXHAUSTIVE_LIMIT: usize = 1 << 16;

/// Sample size used above [`EXHAUSTIVE_LIMIT`] when no cap is given.
pub const DEFAULT_SAMPLES: usize = 4096;

fn smash_tuples(lists: &[&[Key]], sampling: &Sampling) -> Vec<Vec<Key>> {
    let total = lists.iter().try_fold(1usize, |acc, l| acc.checked_mul(l.len()));
    if total.is_some_and(|t| t <= EXHAUSTIVE_LIMIT) {
        return tuples(lists, true, sampling);
    }
    let s = Sampling::sampled(sampling.samples.unwrap_or(DEFAULT_SAMPLES), sampling.seed);
    tuples(lists, false, &s)
}

/// Memoized T̄₁ and T̄₂ on basis pairs.
struct Cache<'a> {
    ss: &'a Smash,
    t1: HashMap<(Key, Key), Element>,
    t2: HashMap<(Key, Key), Element>,
}

impl<'a> Cache<'a> {
    fn new(ss: &'a Smash) -> Cache<'a> {
        Cache {
            ss,
            t1: HashMap::new(),
            t2: HashMap::new(),
        }
    }

    fn t1(&mut self, x: &Key, w: &Key) -> Result<Element> {
        if let Some(v) = self.t1.get(&(x.clone(), w.clone())) {
            return Ok(v.clone());
        }
        let v = (self.ss.tbar1)(x, w)?;
        self.t1.insert((x.clone(), w.clone()), v.clone());
        Ok(v)
    }

    fn t2(&mut self, w: &Key, x: &Key) -> Result<Element> {
        if let Some(v) = self.t2.get(&(w.clone(), x.clone())) {
            return Ok(v.clone());
        }
        let v = (self.ss.tbar2)(w, x)?;
        self.t2.insert((w.clone(), x.clone()), v.clone());
        Ok(v)
    }

    fn right(&mut self, x: &Key, w1: &Key, w2: &Key) -> Result<Element> {
        let t = self.t1(x, w2)?;
        tensor::mul_leg(&t, 2, 0, &self.ss.basis_element(w1), Side::Right, self.ss.carrier.as_ref())
    }

    fn left(&mut self, w1: &Key, w2: &Key, x: &Key) -> Result<Element> {
        let t = self.t2(w1, x)?;
        tensor::mul_leg(&t, 2, 1, &self.ss.basis_element(w2), Side::Left, self.ss.carrier.as_ref())
    }

    /// Δ̄(x)·t for a two-leg tensor t.
    fn delta_times(&mut self, x: &Key, t: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (k, c) in t.terms() {
            let l = legs_of(k, 2);
            out.add_scaled(&self.right(x, &l[0], &l[1])?, c);
        }
        Ok(out)
    }

    /// t·Δ̄(x) for a two-leg tensor t.
    fn times_delta(&mut self, t: &Element, x: &Key) -> Result<Element> {
        let mut out = Element::zero();
        for (k, c) in t.terms() {
            let l = legs_of(k, 2);
            out.add_scaled(&self.left(&l[0], &l[1], x)?, c);
        }
        Ok(out)
    }
}

/// (w₁⊗w₂)(Δ̄(x)(v₁⊗v₂)) = ((w₁⊗w₂)Δ̄(x))(v₁⊗v₂) on all basis 5-tuples.
pub fn check_multiplier_compatibility(ss: &Smash, sampling: &Sampling) -> CheckReport {
    let b = ss.basis();
    let alg = ss.carrier.as_ref();
    let mut cache = Cache::new(ss);
    let mut c = ClauseCheck::new("(w₁⊗w₂)(Δ̄(x)(v₁⊗v₂)) = ((w₁⊗w₂)Δ̄(x))(v₁⊗v₂)");
    for t in smash_tuples(&[b, b, b, b, b], sampling) {
        let (x, w1, w2, v1, v2) = (&t[0], &t[1], &t[2], &t[3], &t[4]);
        let sides = (|| {
            let r = cache.right(x, v1, v2)?;
            let lhs = tensor::mul_leg(&r, 2, 0, &ss.basis_element(w1), Side::Left, alg)?;
            let lhs = tensor::mul_leg(&lhs, 2, 1, &ss.basis_element(w2), Side::Left, alg)?;
            let l = cache.left(w1, w2, x)?;
            let rhs = tensor::mul_leg(&l, 2, 0, &ss.basis_element(v1), Side::Right, alg)?;
            let rhs = tensor::mul_leg(&rhs, 2, 1, &ss.basis_element(v2), Side::Right, alg)?;
            Ok((lhs, rhs))
        })();
        c.compare(|| t.iter().map(|k| ss.label(k)).collect(), sides, |v| ss.show2(v));
    }
    ss.report("delta_bar_compatibility", sampling, vec![c.finish()])
}

/// (ι⊗Δ̄)((w⊗1)Δ̄(x))(1⊗1⊗v) = (w⊗1⊗1)(Δ̄⊗ι)(Δ̄(x)(1⊗v)) on all (w, x, v).
pub fn check_coassoc_bar(ss: &Smash, sampling: &Sampling) -> CheckReport {
    let b = ss.basis();
    let mut cache = Cache::new(ss);
    let mut c = ClauseCheck::new("(ι⊗Δ̄)Δ̄ = (Δ̄⊗ι)Δ̄");
    for t in smash_tuples(&[b, b, b], sampling) {
        let (w, x, v) = (&t[0], &t[1], &t[2]);
        let sides = (|| {
            let lhs = tensor::map_legs(&cache.t2(w, x)?, 2, 1, 1, 2, |l| cache.t1(&l[0], v))?;
            let rhs = tensor::map_legs(&cache.t1(x, v)?, 2, 0, 1, 2, |l| cache.t2(w, &l[0]))?;
            Ok((lhs, rhs))
        })();
        c.compare(
            || t.iter().map(|k| ss.label(k)).collect(),
            sides,
            |e| tensor::show(e, &[ss.carrier.as_ref(), ss.carrier.as_ref(), ss.carrier.as_ref()]),
        );
    }
    ss.report("delta_bar_coassociativity", sampling, vec![c.finish()])
}

/// Δ̄(xx′) = Δ̄(x)Δ̄(x′), covered by w on either side. Needs A commutative and,
/// when E is given, the comodule bialgebra suite to pass.
pub fn check_hom_bar(ss: &Smash, e: Option<&IdempotentE>, sampling: &Sampling) -> CheckReport {
    if !ss.cc.a.alg.is_commutative() {
        return CheckReport::precondition_failed(
            "delta_bar_homomorphism",
            &format!("smash of {}", ss.cc.name),
            &ss.window(),
            sampling.seed,
            &format!("{} is not commutative", ss.cc.a.name),
        );
    }
    if let Some(e) = e {
        let pre = crate::coaction::check_bialgebra(&ss.cc, e, sampling);
        if !pre.is_ok() {
            return CheckReport::precondition_failed(
                "delta_bar_homomorphism",
                &format!("smash of {}", ss.cc.name),
                &ss.window(),
                sampling.seed,
                "the partial comodule bialgebra suite does not pass",
            );
        }
    }
    let b = ss.basis();
    let alg = ss.carrier.as_ref();
    let mut cache = Cache::new(ss);
    let mut left = ClauseCheck::new("(w⊗1)Δ̄(xx′) = (w⊗1)Δ̄(x)Δ̄(x′)");
    let mut right = ClauseCheck::new("Δ̄(xx′)(1⊗w) = Δ̄(x)Δ̄(x′)(1⊗w)");
    for t in smash_tuples(&[b, b, b], sampling) {
        let (x, x2, w) = (&t[0], &t[1], &t[2]);
        let inputs = || t.iter().map(|k| ss.label(k)).collect();
        let prod = multiply(&ss.basis_element(x), &ss.basis_element(x2), alg);
        let sides = (|| {
            let lhs = ss.tbar2(&ss.basis_element(w), prod.as_ref().map_err(Clone::clone)?)?;
            let f = cache.t2(w, x)?;
            Ok((lhs, cache.times_delta(&f, x2)?))
        })();
        left.compare(inputs, sides, |v| ss.show2(v));
        let sides = (|| {
            let lhs = ss.tbar1(prod.as_ref().map_err(Clone::clone)?, &ss.basis_element(w))?;
            let g = cache.t1(x2, w)?;
            Ok((lhs, cache.delta_times(x, &g)?))
        })();
        right.compare(inputs, sides, |v| ss.show2(v));
    }
    let mut report = ss.report("delta_bar_homomorphism", sampling, vec![left.finish(), right.finish()]);
    let targets: Vec<Element> = ss.cc.a.alg.window().iter().map(|k| ss.cc.a.basis_element(k)).collect();
    if let Ok(Some(u)) = find_local_unit(ss.cc.a.alg.as_ref(), &targets) {
        report = report.with_note(format!("local unit on the A legs: {}", ss.cc.a.show(&u)));
    }
    report
}

/// Left counit (ε̄⊗ι)(Δ̄(x)(1⊗w)) = xw and right counit (ι⊗ε̄)(Δ̄(x)(w⊗1)) = xw,
/// as two reports.
pub fn eps_bar_checks(ss: &Smash, sampling: &Sampling) -> (CheckReport, CheckReport) {
    let b = ss.basis();
    let alg = ss.carrier.as_ref();
    let mut left = ClauseCheck::new("(ε̄⊗ι)(Δ̄(x)(1⊗w)) = xw");
    let mut right = ClauseCheck::new("(ι⊗ε̄)(Δ̄(x)(w⊗1)) = xw");
    let one = ss.unit();
    for t in smash_tuples(&[b, b], sampling) {
        let (x, w) = (ss.basis_element(&t[0]), ss.basis_element(&t[1]));
        let inputs = || vec![ss.label(&t[0]), ss.label(&t[1])];
        let xw = multiply(&x, &w, alg);
        let sides = (|| {
            let l = tensor::contract_leg(&ss.tbar1(&x, &w)?, 2, 0, |k| ss.eps_bar(k))?;
            Ok((l, xw.clone()?))
        })();
        left.compare(inputs, sides, |v| ss.show(v));
        let sides = (|| {
            let one = one.clone()?;
            let r = tensor::contract_leg(&ss.cover_right(&x, &w, &one)?, 2, 1, |k| ss.eps_bar(k))?;
            Ok((r, xw.clone()?))
        })();
        right.compare(inputs, sides, |v| ss.show(v));
    }
    (
        ss.report("left_counit", sampling, vec![left.finish()]),
        ss.report("right_counit", sampling, vec![right.finish()]),
    )
}

/// The span of (ι⊗ε̄)(Δ̄(x)(1⊗b)), reduced to a row-echelon basis.
#[derive(Clone, Debug)]
pub struct CbSpace {
    pub b: Element,
    pub basis: Vec<Element>,
    pivots: Vec<usize>,
    index: HashMap<Key, usize>,
    keys: Vec<Key>,
    field: Field,
}

impl CbSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn vector(&self, x: &Element) -> Option<Vec<Scalar>> {
        x.coords(self.field, &self.index, self.keys.len())
    }

    /// Coordinates in the echelon basis, or None outside the span.
    pub fn coordinates(&self, x: &Element) -> Option<Vec<Scalar>> {
        let v = self.vector(x)?;
        let lambda: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut back = Element::zero();
        for (l, b) in lambda.iter().zip(&self.basis) {
            back.add_scaled(b, l);
        }
        (back == *x).then_some(lambda)
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.coordinates(x).is_some()
    }

    /// Whether a two-leg tensor lies in C_b⊗C_b; returns its coordinate matrix.
    pub fn tensor_coordinates(&self, t: &Element) -> Option<Vec<Vec<Scalar>>> {
        let n = self.dim();
        let mut m = vec![vec![self.field.zero(); n]; n];
        // Coefficients of t are read at pivot pairs, then t is rebuilt and compared.
        let coeff: HashMap<(usize, usize), &Scalar> = t
            .terms()
            .filter_map(|(k, c)| {
                let l = legs_of(k, 2);
                Some(((*self.index.get(&l[0])?, *self.index.get(&l[1])?), c))
            })
            .collect();
        for (i, &pi) in self.pivots.iter().enumerate() {
            for (j, &pj) in self.pivots.iter().enumerate() {
                if let Some(c) = coeff.get(&(pi, pj)) {
                    m[i][j] = (*c).clone();
                }
            }
        }
        let mut back = Element::zero();
        for i in 0..n {
            for j in 0..n {
                if !m[i][j].is_zero() {
                    back.add_scaled(&tensor::pure(&[&self.basis[i], &self.basis[j]]), &m[i][j]);
                }
            }
        }
        (back == *t).then_some(m)
    }
}

/// The default b: 1_Y ⊗ a/ε(a) for the first A key with ε(a) ≠ 0.
pub fn default_b(ss: &Smash) -> Result<Element> {
    let one_y = ss
        .cc
        .y
        .alg
        .unit()
        .ok_or_else(|| Error::Unsupported(format!("{} has no unit", ss.cc.y.name)))?;
    let a = ss
        .cc
        .a
        .alg
        .window()
        .iter()
        .find(|k| !(ss.cc.a.counit)(k).is_zero())
        .ok_or_else(|| Error::WindowExhausted(format!("no element of {} with nonzero counit", ss.cc.a.name)))?;
    let scale = (ss.cc.a.counit)(a).inv().expect("nonzero");
    Ok(tensor::pure(&[&one_y, &Element::term(a.clone(), scale)]))
}

pub fn build_cb(ss: &Smash, b: &Element) -> Result<CbSpace> {
    let eb = ss.eps_bar_of(b);
    if !eb.is_one() {
        return Err(Error::usage(format!("ε̄(b) = {eb}, not 1")));
    }
    let keys = ss.basis().to_vec();
    let field = ss.field();
    let index: HashMap<Key, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows = Vec::new();
    for k in &keys {
        let v = tensor::contract_leg(&ss.tbar1(&ss.basis_element(k), b)?, 2, 1, |k| ss.eps_bar(k))?;
        rows.push(
            v.coords(field, &index, keys.len())
                .ok_or_else(|| Error::Inconsistent("C_b spanning vector leaves Y⊗A".into()))?,
        );
    }
    let (red, pivots) = Matrix::from_rows(field, rows)?.rref();
    let basis = (0..pivots.len())
        .map(|r| {
            red.row(r)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (keys[i].clone(), c.clone()))
                .collect()
        })
        .collect();
    Ok(CbSpace {
        b: b.clone(),
        basis,
        pivots,
        index,
        keys,
        field,
    })
}

/// C_b is a subalgebra, Δ̄ restricts to it under all four coverings, and ε̄ is a
/// two-sided counit on it.
pub fn check_cb(ss: &Smash, cb: &CbSpace, sampling: &Sampling) -> CheckReport {
    let alg = ss.carrier.as_ref();
    let mut sub = ClauseCheck::new("C_b·C_b ⊆ C_b");
    let mut restrict = ClauseCheck::new("Δ̄(C_b) covered by C_b lies in C_b⊗C_b");
    let mut left = ClauseCheck::new("(ε̄⊗ι)(Δ̄(c)(1⊗c′)) = cc′ on C_b");
    let mut right = ClauseCheck::new("(ι⊗ε̄)(Δ̄(c)(c′⊗1)) = cc′ on C_b");
    let one = ss.unit();
    let n = cb.dim();
    for i in 0..n {
        for j in 0..n {
            let (c, d) = (&cb.basis[i], &cb.basis[j]);
            let inputs = || vec![ss.show(c), ss.show(d)];
            match multiply(c, d, alg) {
                Ok(p) => {
                    sub.record(cb.contains(&p), || Witness {
                        inputs: inputs(),
                        lhs: ss.show(&p),
                        rhs: "outside C_b".into(),
                    });
                    let sides = (|| {
                        let l = tensor::contract_leg(&ss.tbar1(c, d)?, 2, 0, |k| ss.eps_bar(k))?;
                        Ok((l, p.clone()))
                    })();
                    left.compare(inputs, sides, |v| ss.show(v));
                    let sides = (|| {
                        let r = tensor::contract_leg(&ss.cover_right(c, d, one.as_ref().map_err(Clone::clone)?)?, 2, 1, |k| {
                            ss.eps_bar(k)
                        })?;
                        Ok((r, p.clone()))
                    })();
                    right.compare(inputs, sides, |v| ss.show(v));
                }
                Err(e) => sub.error(inputs(), &e),
            }
            let covered = (|| {
                let one = one.clone()?;
                Ok(vec![
                    ("Δ̄(c)(1⊗c′)", ss.tbar1(c, d)?),
                    ("(c′⊗1)Δ̄(c)", ss.tbar2(d, c)?),
                    ("Δ̄(c)(c′⊗1)", ss.cover_right(c, d, &one)?),
                    ("(1⊗c′)Δ̄(c)", ss.cover_left(&one, d, c)?),
                ])
            })();
            match covered {
                Ok(list) => {
                    for (what, t) in list {
                        restrict.record(cb.tensor_coordinates(&t).is_some(), || Witness {
                            inputs: inputs(),
                            lhs: format!("{what} = {}", ss.show2(&t)),
                            rhs: "outside C_b⊗C_b".into(),
                        });
                    }
                }
                Err(e) => restrict.error(inputs(), &e),
            }
        }
    }
    ss.report("cb", sampling, vec![sub.finish(), restrict.finish(), left.finish(), right.finish()])
        .with_note(format!("dim C_b = {} with b = {}", cb.dim(), ss.show(&cb.b)))
}

/// Ȳ⋊A ≅ Y⊗hA through y⊗a ↦ y⊗ha, for ρ(y) = h⊗y with A commutative.
pub fn check_iso_yha(ss: &Smash, cb: &CbSpace, sampling: &Sampling) -> Result<CheckReport> {
    let CoactionSource::HInduced(h) = &ss.cc.source else {
        return Err(Error::Unsupported(format!("{} is not induced by a multiplier", ss.cc.name)));
    };
    let (y, a) = (&ss.cc.y, &ss.cc.a);
    if !a.alg.is_commutative() {
        return Ok(CheckReport::precondition_failed(
            "iso_y_ha",
            &format!("smash of {}", ss.cc.name),
            &ss.window(),
            sampling.seed,
            &format!("{} is not commutative", a.name),
        ));
    }
    let field = ss.field();
    let akeys = a.alg.basis().expect("dense A");
    let aindex: HashMap<Key, usize> = akeys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows = Vec::new();
    for k in akeys {
        rows.push(h.act_left(&a.basis_element(k))?.coords(field, &aindex, akeys.len()).ok_or_else(|| {
            Error::Inconsistent(format!("h·{} leaves {}", a.label(k), a.name))
        })?);
    }
    let (red, pivots) = Matrix::from_rows(field, rows)?.rref();
    let ha: Vec<Element> = (0..pivots.len())
        .map(|r| {
            red.row(r)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (akeys[i].clone(), c.clone()))
                .collect()
        })
        .collect();
    let ha_cols: Vec<Vec<Scalar>> = ha
        .iter()
        .map(|e| e.coords(field, &aindex, akeys.len()).expect("in A"))
        .collect();
    let in_ha = |x: &Element| -> bool {
        x.coords(field, &aindex, akeys.len())
            .is_some_and(|v| in_span(field, &v, &ha_cols).unwrap_or(false))
    };
    let in_ha2 = |t: &Element| -> bool {
        let mut by_first: HashMap<Key, Element> = HashMap::new();
        let mut by_second: HashMap<Key, Element> = HashMap::new();
        for (k, c) in t.terms() {
            let l = legs_of(k, 2);
            by_first.entry(l[0].clone()).or_default().add_term(l[1].clone(), c.clone());
            by_second.entry(l[1].clone()).or_default().add_term(l[0].clone(), c.clone());
        }
        by_first.values().chain(by_second.values()).all(|v| in_ha(v))
    };

    let mut closed = ClauseCheck::new("Δ(hA) covered by hA lies in hA⊗hA");
    for u in &ha {
        for v in &ha {
            for how in Cover::ALL {
                let inputs = || vec![a.show(u), a.show(v), how.describe().to_string()];
                match a.cover(u, how, v) {
                    Ok(t) => {
                        closed.record(in_ha2(&t), || Witness {
                            inputs: inputs(),
                            lhs: a.show2(&t),
                            rhs: "outside hA⊗hA".into(),
                        });
                    }
                    Err(e) => closed.error(inputs(), &e),
                }
            }
        }
    }

    let phi = |x: &Element| -> Result<Element> {
        tensor::map_leg(x, 2, 1, |k| h.act_left(&a.basis_element(k)))
    };
    let mut span = ClauseCheck::new("C_b = Y⊗hA");
    let yha: Vec<Element> = y
        .alg
        .basis()
        .expect("dense Y")
        .iter()
        .flat_map(|yk| ha.iter().map(move |u| tensor::pure(&[&Element::basis(yk.clone(), field), u])))
        .collect();
    for x in &yha {
        span.record(cb.contains(x), || Witness {
            inputs: vec![ss.show(x)],
            lhs: ss.show(x),
            rhs: "outside C_b".into(),
        });
    }
    span.record(yha.len() == cb.dim(), || Witness {
        inputs: vec!["dimensions".into()],
        lhs: format!("dim Y⊗hA = {}", yha.len()),
        rhs: format!("dim C_b = {}", cb.dim()),
    });

    let alg = ss.carrier.as_ref();
    let b = ss.basis();
    let mut mult = ClauseCheck::new("φ(x)φ(x′) = φ(xx′)");
    for t in smash_tuples(&[b, b], sampling) {
        let (x, x2) = (ss.basis_element(&t[0]), ss.basis_element(&t[1]));
        let sides = (|| Ok((multiply(&phi(&x)?, &phi(&x2)?, alg)?, phi(&multiply(&x, &x2, alg)?)?)))();
        mult.compare(|| vec![ss.label(&t[0]), ss.label(&t[1])], sides, |v| ss.show(v));
    }

    let mut delta = ClauseCheck::new("Δ̄(y⊗u) = (ι⊗τ⊗ι)(Δ_Y(y)⊗Δ_{hA}(u)) covered by Y⊗hA");
    let mut counit = ClauseCheck::new("ε̄(y⊗u) = ε_Y(y)ε_{hA}(u)");
    let pairs: Vec<(&Key, &Element)> = y
        .alg
        .basis()
        .expect("dense Y")
        .iter()
        .flat_map(|yk| ha.iter().map(move |u| (yk, u)))
        .collect();
    let delta_sides = |(yk, u): (&Key, &Element), (y1, u1): (&Key, &Element), (y2, u2): (&Key, &Element)| -> Result<(Element, Element)> {
        let x = tensor::pure(&[&y.basis_element(yk), u]);
        let w1 = tensor::pure(&[&y.basis_element(y1), u1]);
        let w2 = tensor::pure(&[&y.basis_element(y2), u2]);
        let lhs = ss.cover_right(&x, &w1, &w2)?;
        let dy = y.cover(&y.basis_element(yk), Cover::RightOnFirst, &y.basis_element(y1))?;
        let dy = tensor::mul_leg(&dy, 2, 1, &y.basis_element(y2), Side::Right, y.alg.as_ref())?;
        let da = a.cover(u, Cover::RightOnFirst, u1)?;
        let da = tensor::mul_leg(&da, 2, 1, u2, Side::Right, a.alg.as_ref())?;
        let joined = tensor::permute(&tensor::join(&dy, 2, &da, 2), 4, &[0, 2, 1, 3]);
        let rhs = joined
            .terms()
            .map(|(k, c)| {
                let l = legs_of(k, 4);
                (Key::pair(smash_key(&l[0], &l[1]), smash_key(&l[2], &l[3])), c.clone())
            })
            .collect();
        Ok((lhs, rhs))
    };
    let show_pair = |(yk, u): (&Key, &Element)| format!("{}⊗({})", y.label(yk), a.show(u));
    for &(yk, u) in &pairs {
        for &w1 in &pairs {
            for &w2 in &pairs {
                let sides = delta_sides((yk, u), w1, w2);
                delta.compare(
                    || vec![show_pair((yk, u)), show_pair(w1), show_pair(w2)],
                    sides,
                    |v| ss.show2(v),
                );
            }
        }
        let x = tensor::pure(&[&y.basis_element(yk), u]);
        let lhs = Element::term(Key::Int(0), ss.eps_bar_of(&x));
        let rhs = Element::term(Key::Int(0), &(y.counit)(yk) * &a.counit_of(u));
        counit.record(lhs == rhs, || Witness {
            inputs: vec![y.label(yk), a.show(u)],
            lhs: format!("{}", ss.eps_bar_of(&x)),
            rhs: format!("{}", &(y.counit)(yk) * &a.counit_of(u)),
        });
    }
    Ok(ss
        .report(
            "iso_y_ha",
            sampling,
            vec![closed.finish(), span.finish(), mult.finish(), delta.finish(), counit.finish()],
        )
        .with_note(format!("dim hA = {}, dim Y⊗hA = {}", ha.len(), yha.len())))
}

/// The extension T̃ of T to M(Y⊗A), for A commutative and ρ(Y)(A⊗1) = E(A⊗Y).
#[derive(Clone)]
pub struct TTilde {
    ss: Smash,
    e: IdempotentE,
    t: Matrix,
    ay_index: HashMap<Key, usize>,
    ya_keys: Vec<Key>,
}

impl std::fmt::Debug for TTilde {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TTilde").field("cc", &self.ss.cc.name).finish()
    }
}

pub fn extend_t_tilde(ss: &Smash, e: &IdempotentE) -> Result<TTilde> {
    if !ss.cc.a.alg.is_commutative() {
        return Err(Error::Unsupported(format!("T̃ needs {} commutative", ss.cc.a.name)));
    }
    let t = ss.cc.t_matrix()?;
    let ay = ss.cc.ay().basis().expect("dense A⊗Y");
    let ay_index = ay.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let ybasis = ss.cc.y.alg.basis().expect("dense Y");
    let abasis = ss.cc.a.alg.basis().expect("dense A");
    let ya_keys = ybasis
        .iter()
        .flat_map(|y| abasis.iter().map(move |a| smash_key(y, a)))
        .collect();
    Ok(TTilde {
        ss: ss.clone(),
        e: e.clone(),
        t,
        ay_index,
        ya_keys,
    })
}

impl TTilde {
    fn field(&self) -> Field {
        self.ss.field()
    }

    /// T on Y⊗A.
    pub fn t(&self, v: &Element) -> Result<Element> {
        v.linear(|k| {
            let (y, a) = split(k);
            (self.ss.cc.rr)(&y, &a)
        })
    }

    /// Some v in Y⊗A with T(v) = target.
    pub fn decompose(&self, target: &Element) -> Result<Element> {
        let n = self.ay_index.len();
        let rhs = target
            .coords(self.field(), &self.ay_index, n)
            .ok_or_else(|| Error::Inconsistent("target leaves A⊗Y".into()))?;
        let x = solve_linear(&self.t, &rhs)?
            .ok_or_else(|| Error::WindowExhausted("E(b⊗y) is not in the image of T".into()))?;
        Ok(x.into_iter()
            .zip(&self.ya_keys)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, k)| (k.clone(), c))
            .collect())
    }

    /// T̃(m): (b⊗y) ↦ T(m·v) with T(v) = E(b⊗y), and (b⊗y) ↦ T(w·m) with T(w) = (b⊗y)E.
    pub fn apply(&self, m: &Multiplier) -> Multiplier {
        let side = |left: bool| -> KeyMap {
            let (tt, m) = (self.clone(), m.clone());
            Arc::new(move |k| {
                let kk = Element::basis(k.clone(), tt.field());
                if left {
                    let v = tt.decompose(&tt.e.e.act_left(&kk)?)?;
                    tt.t(&m.act_left(&v)?)
                } else {
                    let w = tt.decompose(&tt.e.e.act_right(&kk)?)?;
                    tt.t(&m.act_right(&w)?)
                }
            })
        };
        Multiplier::from_maps(
            self.ss.cc.ay().clone(),
            format!("T̃({})", m.label),
            side(true),
            side(false),
            MultiplierSource::Other(format!("T̃ of {}", m.label)),
        )
    }

    /// The multiplier 1⊗c of Y⊗A.
    pub fn one_tensor(&self, c: &Key) -> Multiplier {
        let f = self.field();
        let alg = self.ss.cc.a.alg.clone();
        let side = |left: bool| -> KeyMap {
            let (c, alg) = (c.clone(), alg.clone());
            Arc::new(move |k| {
                let (y, a) = split(k);
                let (cc, aa) = (Element::basis(c.clone(), f), Element::basis(a, f));
                let p = if left { multiply(&cc, &aa, alg.as_ref())? } else { multiply(&aa, &cc, alg.as_ref())? };
                Ok(tensor::pure(&[&Element::basis(y, f), &p]))
            })
        };
        Multiplier::from_maps(
            self.ss.carrier.clone(),
            format!("1⊗{}", self.ss.cc.a.label(c)),
            side(true),
            side(false),
            MultiplierSource::Other("1⊗c".into()),
        )
    }
}

fn compare_multipliers(c: &mut ClauseCheck, ay: &dyn Algebra, label: &[String], x: &Multiplier, y: &Multiplier) {
    for k in ay.basis().expect("dense") {
        let kk = Element::basis(k.clone(), ay.field());
        for (side, lhs, rhs) in [
            ("left", x.act_left(&kk), y.act_left(&kk)),
            ("right", x.act_right(&kk), y.act_right(&kk)),
        ] {
            let mut inputs = label.to_vec();
            inputs.push(format!("{side} action on {}", ay.label(k)));
            c.compare(|| inputs.clone(), lhs.and_then(|l| Ok((l, rhs?))), |v| crate::algebra::show(v, ay));
        }
    }
}

/// T̃ extends T, T̃(1) = E, T̃(1⊗c) = (c⊗1)E, and T̃ is multiplicative on pairs of
/// embedded basis elements and 1⊗c multipliers.
pub fn check_t_tilde(tt: &TTilde, sampling: &Sampling) -> CheckReport {
    let ss = &tt.ss;
    let cc = &ss.cc;
    let ay = cc.ay().clone();
    let f = ss.field();
    let mut image = ClauseCheck::new("ρ(Y)(A⊗1) = E(A⊗Y)");
    let n = tt.ay_index.len();
    let e_cols: Vec<Vec<Scalar>> = ay
        .basis()
        .expect("dense")
        .iter()
        .filter_map(|k| {
            tt.e.e
                .act_left(&Element::basis(k.clone(), f))
                .ok()?
                .coords(f, &tt.ay_index, n)
        })
        .collect();
    let t_cols: Vec<Vec<Scalar>> = (0..tt.t.cols())
        .map(|c| (0..tt.t.rows()).map(|r| tt.t.row(r)[c].clone()).collect())
        .collect();
    let rank = |cols: &[Vec<Scalar>]| Matrix::from_cols(f, n, cols).map(|m| m.rank()).unwrap_or(0);
    let joint: Vec<Vec<Scalar>> = e_cols.iter().chain(&t_cols).cloned().collect();
    let (re, rt, rj) = (rank(&e_cols), rank(&t_cols), rank(&joint));
    image.record(re == rj && rt == rj, || Witness {
        inputs: vec![cc.name.clone()],
        lhs: format!("rank T = {rt}"),
        rhs: format!("rank E = {re}, joint rank {rj}"),
    });

    let mut extends = ClauseCheck::new("T̃(x) = T(x) on Y⊗A");
    let mut unit = ClauseCheck::new("T̃(1) = E");
    let mut one_c = ClauseCheck::new("T̃(1⊗c) = (c⊗1)E");
    let mut hom = ClauseCheck::new("T̃(mn) = T̃(m)T̃(n)");
    for k in &tt.ya_keys {
        let x = ss.basis_element(k);
        match (Multiplier::embed(&x, ss.carrier.clone()), tt.t(&x).and_then(|t| Multiplier::embed(&t, ay.clone()))) {
            (Ok(m), Ok(tx)) => compare_multipliers(&mut extends, ay.as_ref(), &[ss.label(k)], &tt.apply(&m), &tx),
            (Err(e), _) | (_, Err(e)) => extends.error(vec![ss.label(k)], &e),
        }
    }
    compare_multipliers(
        &mut unit,
        ay.as_ref(),
        &["1".into()],
        &tt.apply(&Multiplier::identity(ss.carrier.clone())),
        &tt.e.e,
    );
    let abasis = cc.a.alg.basis().expect("dense A").to_vec();
    for c in &abasis {
        let ce = cc.a.basis_element(c);
        let c1: Element = tensor::pure(&[&ce, &cc.y.alg.unit().expect("unital Y")]);
        let target = Multiplier::embed(&c1, ay.clone()).and_then(|m| m.mul(&tt.e.e));
        match target {
            Ok(t) => compare_multipliers(&mut one_c, ay.as_ref(), &[cc.a.label(c)], &tt.apply(&tt.one_tensor(c)), &t),
            Err(e) => one_c.error(vec![cc.a.label(c)], &e),
        }
    }
    let mut gens: Vec<Multiplier> = abasis.iter().map(|c| tt.one_tensor(c)).collect();
    for k in &tt.ya_keys {
        if let Ok(m) = Multiplier::embed(&ss.basis_element(k), ss.carrier.clone()) {
            gens.push(m);
        }
    }
    let keys: Vec<Key> = (0..gens.len() as i64).map(Key::Int).collect();
    for t in smash_tuples(&[&keys, &keys], sampling) {
        let (i, j) = (t[0].as_int().unwrap_or(0) as usize, t[1].as_int().unwrap_or(0) as usize);
        let (m, n2) = (&gens[i], &gens[j]);
        let label = [m.label.clone(), n2.label.clone()];
        match m.mul(n2) {
            Ok(mn) => {
                let lhs = tt.apply(&mn);
                let (tm, tn) = (tt.apply(m), tt.apply(n2));
                for k in ay.basis().expect("dense") {
                    let kk = Element::basis(k.clone(), f);
                    let sides = (|| Ok((lhs.act_left(&kk)?, tm.act_left(&tn.act_left(&kk)?)?)))();
                    hom.compare(
                        || vec![label[0].clone(), label[1].clone(), ay.label(k)],
                        sides,
                        |v| crate::algebra::show(v, ay.as_ref()),
                    );
                    let sides = (|| Ok((lhs.act_right(&kk)?, tn.act_right(&tm.act_right(&kk)?)?)))();
                    hom.compare(
                        || vec![label[0].clone(), label[1].clone(), ay.label(k)],
                        sides,
                        |v| crate::algebra::show(v, ay.as_ref()),
                    );
                }
            }
            Err(e) => hom.error(label.to_vec(), &e),
        }
    }
    CheckReport::new(
        "t_tilde",
        &format!("T̃ for {}", cc.name),
        &ss.window(),
        sampling.seed,
        vec![image.finish(), extends.finish(), unit.finish(), one_c.finish(), hom.finish()],
    )
}

/// Ȳ⋊A as a dense multiplier bialgebra on the echelon basis of C_b.
pub fn smash_coproduct(ss: &Smash, cb: &CbSpace) -> Result<Mha> {
    let field = ss.field();
    let alg = ss.carrier.as_ref();
    let n = cb.dim();
    let keys: Vec<Key> = (0..n as i64).map(Key::Int).collect();
    let labels: Vec<String> = cb.basis.iter().map(|b| ss.show(b)).collect();
    let mut table = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            let p = multiply(&cb.basis[i], &cb.basis[j], alg)?;
            let c = cb
                .coordinates(&p)
                .ok_or_else(|| Error::Inconsistent(format!("{} · {} leaves C_b", labels[i], labels[j])))?;
            table.insert((i, j), to_element(&c));
        }
    }
    let name = format!("smash({})", ss.cc.name);
    let dense = DenseAlgebra::new(name.clone(), field, keys.clone(), labels.clone(), |a, b| {
        let (i, j) = (a.as_int().unwrap_or(0) as usize, b.as_int().unwrap_or(0) as usize);
        table.get(&(i, j)).cloned().unwrap_or_default()
    })?;
    let mut delta = HashMap::new();
    let mut counit = HashMap::new();
    for (i, k) in keys.iter().enumerate() {
        let d = ss.delta_bar(&cb.basis[i])?;
        let m = cb
            .tensor_coordinates(&d)
            .ok_or_else(|| Error::Inconsistent(format!("Δ̄({}) leaves C_b⊗C_b", labels[i])))?;
        let mut t = Element::zero();
        for (r, row) in m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    t.add_term(Key::pair(Key::Int(r as i64), Key::Int(c as i64)), v.clone());
                }
            }
        }
        delta.insert(k.clone(), t);
        counit.insert(k.clone(), ss.eps_bar_of(&cb.basis[i]));
    }
    dense_mha(
        &name,
        Arc::new(dense),
        delta,
        counit,
        None,
        None,
        MhaSource::Other(format!("smash coproduct of {} with b = {}", ss.cc.name, ss.show(&cb.b))),
    )
}

fn to_element(c: &[Scalar]) -> Element {
    c.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (Key::Int(i as i64), v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{h_coaction, h_idempotent};
    use crate::gallery::{function_algebra, group_algebra, indicator, FiniteGroup};
    use crate::mhopf::check_bijective_t;
    use crate::report::Status;

    fn smash(members: &[usize]) -> Smash {
        let f = Field::Rationals;
        let a = function_algebra(&FiniteGroup::cyclic(4).unwrap(), f).unwrap();
        let y = group_algebra(&FiniteGroup::cyclic(2).unwrap(), f).unwrap();
        let h = Multiplier::embed(&indicator(members, f), a.alg.clone()).unwrap();
        Smash::new(&h_coaction(&y, &a, &h).unwrap()).unwrap()
    }

    fn key(y: i64, a: i64) -> Key {
        smash_key(&Key::Int(y), &Key::Int(a))
    }

    #[test]
    fn delta_bar_of_t_delta0() {
        let ss = smash(&[0, 2]);
        let f = ss.field();
        let d = ss.delta_bar(&ss.element(&Key::Int(1), &Key::Int(0))).unwrap();
        let expect: Element = [
            (Key::pair(key(1, 0), key(1, 0)), f.one()),
            (Key::pair(key(1, 2), key(1, 2)), f.one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expect);
        assert!(ss.tbar1(&Element::zero(), &ss.element(&Key::Int(1), &Key::Int(0))).unwrap().is_zero());
    }

    #[test]
    fn partial_smash_structure() {
        let ss = smash(&[0, 2]);
        let s = Sampling::default();
        assert!(check_coassoc_bar(&ss, &s).is_ok());
        let (l, r) = eps_bar_checks(&ss, &s);
        assert!(l.is_ok());
        assert_eq!(r.status, Status::Fail);
        assert!(r.witnesses().any(|w| w.inputs.iter().any(|i| i.contains("δ1"))));
        let cb = build_cb(&ss, &default_b(&ss).unwrap()).unwrap();
        assert_eq!(cb.dim(), 4);
        let other = build_cb(&ss, &tensor::pure(&[&ss.cc.y.basis_element(&Key::Int(1)), &ss.cc.a.basis_element(&Key::Int(0))])).unwrap();
        assert_eq!(other.basis, cb.basis);
        assert!(check_cb(&ss, &cb, &s).is_ok());
        let iso = check_iso_yha(&ss, &cb, &s).unwrap();
        assert!(iso.is_ok(), "{}", iso.to_text());
        let m = smash_coproduct(&ss, &cb).unwrap();
        assert_eq!(m.alg.basis().unwrap().len(), 4);
        let e = h_idempotent(&ss.cc).unwrap();
        assert!(check_hom_bar(&ss, Some(&e), &s).is_ok());
        let tt = extend_t_tilde(&ss, &e).unwrap();
        let r = check_t_tilde(&tt, &s);
        assert!(r.is_ok(), "{}", r.to_text());
    }

    #[test]
    fn global_smash_is_whole_space() {
        let ss = smash(&[0, 1, 2, 3]);
        let s = Sampling::default();
        let (_, r) = eps_bar_checks(&ss, &s);
        assert!(r.is_ok());
        let cb = build_cb(&ss, &default_b(&ss).unwrap()).unwrap();
        assert_eq!(cb.dim(), 8);
        let m = smash_coproduct(&ss, &cb).unwrap();
        assert!(check_bijective_t(&m, &s).is_ok());
    }

    #[test]
    fn flipped_tbar1_breaks_coassociativity() {
        let ss = smash(&[0, 2]);
        let cc = ss.cc.clone();
        let broken: PairFn = Arc::new(move |x, w| Ok(tensor::permute(&tbar1(&cc, x, w)?, 2, &[1, 0])));
        let ss = ss.with_tbar1(broken);
        let r = check_coassoc_bar(&ss, &Sampling::default());
        assert_eq!(r.status, Status::Fail);
    }
}
