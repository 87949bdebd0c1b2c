//! Coactions ρ: Y → M(A⊗Y) given by the coverings ρ(y)(a⊗1) and (a⊗1)ρ(y),
//! with the global, partial and symmetric comodule coalgebra suites and the
//! partial comodule algebra suite.
//!
//! Tensors in A⊗Y are keyed (a, y). Y must be dense and unital so that Δ_Y(y)
//! is an honest tensor; A may use either backend.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::tensor::{self, legs_of, Side};
use crate::algebra::{multiply, AlgRef, Algebra, Element, Key, TensorAlgebra};
use crate::error::{Error, Result};
use crate::exact::{in_span, Matrix, Scalar};
use crate::gallery::FiniteGroup;
use crate::mhopf::{Cover, Mha};
use crate::multiplier::{IdempotentE, Multiplier};
use crate::report::{CheckReport, Clause, ClauseCheck, Witness};
use crate::window::{tuples, Sampling};

pub type CoactFn = Arc<dyn Fn(&Key, &Key) -> Result<Element> + Send + Sync>;

#[derive(Clone)]
pub enum CoactionSource {
    /// ρ(y) = h⊗y
    HInduced(Multiplier),
    /// ρ(h) = Σ_g δ_g⊗hg on 𝕜G over A_G.
    Group(FiniteGroup),
    /// (ι⊗π)ρ for the projection of the base onto the span of `image`.
    Induced { base: Box<Coaction>, image: Vec<Key> },
    Explicit,
}

#[derive(Clone)]
pub struct Coaction {
    pub name: String,
    pub y: Mha,
    pub a: Mha,
    /// (y, a) ↦ ρ(y)(a⊗1)
    pub rr: CoactFn,
    /// (y, a) ↦ (a⊗1)ρ(y)
    pub rl: CoactFn,
    pub source: CoactionSource,
    ay: AlgRef,
}

impl std::fmt::Debug for Coaction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Coaction")
            .field("name", &self.name)
            .field("y", &self.y.name)
            .field("a", &self.a.name)
            .finish()
    }
}

impl Coaction {
    pub fn new(name: impl Into<String>, y: Mha, a: Mha, rr: CoactFn, rl: CoactFn, source: CoactionSource) -> Result<Coaction> {
        if !y.is_dense() || y.alg.unit().is_none() {
            return Err(Error::Unsupported(format!(
                "the coacted algebra {} must be finite-dimensional and unital",
                y.name
            )));
        }
        if y.field() != a.field() {
            return Err(Error::usage("coaction between algebras over different fields"));
        }
        let ay: AlgRef = Arc::new(TensorAlgebra::new(a.alg.clone(), y.alg.clone())?);
        Ok(Coaction {
            name: name.into(),
            y,
            a,
            rr,
            rl,
            source,
            ay,
        })
    }

    /// A⊗Y with the componentwise product.
    pub fn ay(&self) -> &AlgRef {
        &self.ay
    }

    /// T(y⊗a) = ρ(y)(a⊗1)
    pub fn map_t(&self, y: &Element, a: &Element) -> Result<Element> {
        Element::bilinear(y, a, |yk, ak| (self.rr)(yk, ak))
    }

    /// T̄(a⊗y) = (a⊗1)ρ(y)
    pub fn map_tbar(&self, a: &Element, y: &Element) -> Result<Element> {
        Element::bilinear(y, a, |yk, ak| (self.rl)(yk, ak))
    }

    /// ρ(y)·t for t ∈ A⊗Y: ρ(y)(b⊗z) = T(y⊗b)(1⊗z).
    pub fn rho_left(&self, y: &Key, t: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (k, c) in t.terms() {
            let l = legs_of(k, 2);
            let z = self.y.basis_element(&l[1]);
            out.add_scaled(&tensor::mul_leg(&(self.rr)(y, &l[0])?, 2, 1, &z, Side::Right, self.y.alg.as_ref())?, c);
        }
        Ok(out)
    }

    /// t·ρ(y) for t ∈ A⊗Y: (b⊗z)ρ(y) = (1⊗z)T̄(b⊗y).
    pub fn rho_right(&self, t: &Element, y: &Key) -> Result<Element> {
        let mut out = Element::zero();
        for (k, c) in t.terms() {
            let l = legs_of(k, 2);
            let z = self.y.basis_element(&l[1]);
            out.add_scaled(&tensor::mul_leg(&(self.rl)(y, &l[0])?, 2, 1, &z, Side::Left, self.y.alg.as_ref())?, c);
        }
        Ok(out)
    }

    pub fn delta_y(&self, y: &Key) -> Result<Element> {
        self.y.classical_delta(&self.y.basis_element(y))
    }

    fn eps_y(&self, k: &Key) -> Scalar {
        (self.y.counit)(k)
    }

    fn eps_a(&self, k: &Key) -> Scalar {
        (self.a.counit)(k)
    }

    fn window_description(&self) -> String {
        format!("Y: {}; A: {}", self.y.alg.window_description(), self.a.alg.window_description())
    }

    fn report(&self, suite: &str, sampling: &Sampling, clauses: Vec<Clause>) -> CheckReport {
        CheckReport::new(suite, &self.name, &self.window_description(), sampling.seed, clauses)
    }

    fn precondition(&self, suite: &str, sampling: &Sampling, why: &str) -> CheckReport {
        CheckReport::precondition_failed(suite, &self.name, &self.window_description(), sampling.seed, why)
    }

    /// Labels a tuple whose legs come from the listed algebras.
    fn labels(&self, keys: &[Key], from: &[Leg]) -> Vec<String> {
        keys.iter().zip(from).map(|(k, l)| self.leg_alg(*l).label(k)).collect()
    }

    fn leg_alg(&self, l: Leg) -> &dyn Algebra {
        match l {
            Leg::A => self.a.alg.as_ref(),
            Leg::Y => self.y.alg.as_ref(),
        }
    }

    fn window(&self, l: Leg) -> &[Key] {
        self.leg_alg(l).window()
    }

    fn tuples(&self, legs: &[Leg], sampling: &Sampling) -> Vec<Vec<Key>> {
        let lists: Vec<&[Key]> = legs.iter().map(|l| self.window(*l)).collect();
        tuples(&lists, self.a.is_dense(), sampling)
    }

    pub fn show(&self, t: &Element, legs: &[Leg]) -> String {
        let algs: Vec<&dyn Algebra> = legs.iter().map(|l| self.leg_alg(*l)).collect();
        tensor::show(t, &algs)
    }

    /// Σ y₁⊗T(y₂⊗a)(1⊗y′) ∈ Y⊗A⊗Y, or the left covering (1⊗1⊗y′)(…) when `left`.
    pub fn z_tensor(&self, y: &Key, a: &Key, y2: &Key, left: bool) -> Result<Element> {
        let side = if left { Side::Left } else { Side::Right };
        let yy = self.y.basis_element(y2);
        tensor::map_legs(&self.delta_y(y)?, 2, 1, 1, 2, |l| {
            tensor::mul_leg(&(self.rr)(&l[0], a)?, 2, 1, &yy, side, self.y.alg.as_ref())
        })
    }

    /// Σ over p⊗q ∈ Δ(a)(1⊗a′) and u⊗v ∈ T(y⊗p) of u⊗T(v⊗q), in A⊗A⊗Y.
    fn iterated_t(&self, y: &Key, a: &Key, a2: &Key) -> Result<Element> {
        let d = self.a.comul.cover(a, Cover::RightOnSecond, a2)?;
        let first = tensor::map_legs(&d, 2, 0, 1, 2, |l| (self.rr)(y, &l[0]))?;
        tensor::map_legs(&first, 3, 1, 2, 2, |l| (self.rr)(&l[0], &l[1]))
    }

    /// Σ over p⊗q ∈ cover and u⊗v ∈ T̄(p⊗y) of u⊗T̄(q⊗v), in A⊗A⊗Y.
    fn iterated_tbar(&self, covered: &Element, y: &Key) -> Result<Element> {
        let first = tensor::map_legs(covered, 2, 0, 1, 2, |l| (self.rl)(y, &l[0]))?;
        tensor::map_legs(&first, 3, 1, 2, 2, |l| (self.rl)(&l[0], &l[1]))
    }

    /// T as a matrix from Y⊗A to A⊗Y; both algebras must be dense.
    pub fn t_matrix(&self) -> Result<Matrix> {
        let (Some(yb), Some(ab)) = (self.y.alg.basis(), self.a.alg.basis()) else {
            return Err(Error::Unsupported("T as a matrix needs finite-dimensional A and Y".into()));
        };
        let rows = self.ay.basis().expect("dense tensor basis");
        let index: HashMap<Key, usize> = rows.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut cols = Vec::with_capacity(yb.len() * ab.len());
        for y in yb {
            for a in ab {
                let img = (self.rr)(y, a)?;
                cols.push(
                    img.coords(self.y.field(), &index, rows.len())
                        .ok_or_else(|| Error::Inconsistent("ρ(y)(a⊗1) leaves A⊗Y".into()))?,
                );
            }
        }
        Matrix::from_cols(self.y.field(), rows.len(), &cols)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    A,
    Y,
}

use Leg::{A, Y};

fn membership_clause(cc: &Coaction, name: &str, c: &mut ClauseCheck, inputs: Vec<String>, t: Result<Element>, legs: &[Leg]) {
    match t {
        Ok(t) => {
            let stray = t.keys().find(|k| {
                legs_of(k, legs.len())
                    .iter()
                    .zip(legs)
                    .any(|(k, l)| !cc.leg_alg(*l).contains(k))
            });
            c.record(stray.is_none(), || Witness {
                inputs,
                lhs: format!("{name} has a term outside the declared legs"),
                rhs: cc.show(&t, legs),
            });
        }
        Err(e) => c.error(inputs, &e),
    }
}

fn counit_clauses(cc: &Coaction, sampling: &Sampling) -> Vec<Clause> {
    let mut right = ClauseCheck::new("(ε_A⊗ι)(ρ(y)(a⊗1)) = ε_A(a)y");
    let mut left = ClauseCheck::new("(ε_A⊗ι)((a⊗1)ρ(y)) = ε_A(a)y");
    for t in cc.tuples(&[Y, A], sampling) {
        let expect = cc.y.basis_element(&t[0]).scale(&cc.eps_a(&t[1]));
        let eps = |k: &Key| cc.eps_a(k);
        let r = (cc.rr)(&t[0], &t[1]).and_then(|x| tensor::contract_leg(&x, 2, 0, eps));
        right.compare(|| cc.labels(&t, &[Y, A]), r.map(|r| (r, expect.clone())), |x| cc.y.show(x));
        let l = (cc.rl)(&t[0], &t[1]).and_then(|x| tensor::contract_leg(&x, 2, 0, eps));
        left.compare(|| cc.labels(&t, &[Y, A]), l.map(|l| (l, expect)), |x| cc.y.show(x));
    }
    vec![right.finish(), left.finish()]
}

/// (ι⊗Δ_Y)T(y⊗a)(1⊗1⊗y′) = (T⊗ι)((ι⊗T)(Δ_Y(y)⊗a)(1⊗1⊗y′)) over (y, a, y′).
fn coalgebra_compatibility(cc: &Coaction, sampling: &Sampling) -> Clause {
    let mut c = ClauseCheck::new("(ι⊗Δ_Y)T = (T⊗ι)(ι⊗T)(Δ_Y⊗ι)");
    let ylg = cc.y.alg.as_ref();
    for t in cc.tuples(&[Y, A, Y], sampling) {
        let yy = cc.y.basis_element(&t[2]);
        let sides = (|| {
            let lhs = tensor::map_legs(&(cc.rr)(&t[0], &t[1])?, 2, 1, 1, 2, |l| {
                tensor::mul_leg(&cc.delta_y(&l[0])?, 2, 1, &yy, Side::Right, ylg)
            })?;
            let z = cc.z_tensor(&t[0], &t[1], &t[2], false)?;
            let rhs = tensor::map_legs(&z, 3, 0, 2, 2, |l| (cc.rr)(&l[0], &l[1]))?;
            Ok((lhs, rhs))
        })();
        c.compare(|| cc.labels(&t, &[Y, A, Y]), sides, |x| cc.show(x, &[A, Y, Y]));
    }
    c.finish()
}

/// Global comodule coalgebra: ρ injective, coassociative in both coverings,
/// counital, compatible with Δ_Y, and (ι⊗ε_Y)(ρ(y)(a⊗1)) = ε_Y(y)a.
pub fn check_global_comodule(cc: &Coaction, sampling: &Sampling) -> CheckReport {
    let mut clauses = vec![injectivity_clause(cc)];
    clauses.push(right_coassociativity(cc, sampling));
    clauses.push(left_coassociativity(cc, sampling));
    clauses.extend(counit_clauses(cc, sampling));
    clauses.push(coalgebra_compatibility(cc, sampling));
    clauses.push(unit_action_clause(cc, sampling, false));
    cc.report("global", sampling, clauses)
}

fn injectivity_clause(cc: &Coaction) -> Clause {
    let mut c = ClauseCheck::new("ρ injective");
    let ybasis = cc.y.alg.basis().expect("dense Y");
    let mut index: HashMap<(usize, Key), usize> = HashMap::new();
    let mut images: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for y in ybasis {
        let mut col = Vec::new();
        for (i, a) in cc.a.alg.window().iter().enumerate() {
            match (cc.rr)(y, a) {
                Ok(img) => {
                    for (k, s) in img.terms() {
                        let n = index.len();
                        let row = *index.entry((i, k.clone())).or_insert(n);
                        col.push((row, s.clone()));
                    }
                }
                Err(e) => {
                    c.error(vec![cc.y.label(y), cc.a.label(a)], &e);
                    return c.finish();
                }
            }
        }
        images.push(col);
    }
    let f = cc.y.field();
    let cols: Vec<Vec<Scalar>> = images
        .iter()
        .map(|col| {
            let mut v = vec![f.zero(); index.len()];
            for (r, s) in col {
                v[*r] = &v[*r] + s;
            }
            v
        })
        .collect();
    let rank = Matrix::from_cols(f, index.len(), &cols).map(|m| m.rank()).unwrap_or(0);
    c.record(rank == ybasis.len(), || Witness {
        inputs: vec![format!("y ↦ (ρ(y)(a⊗1))_a over {}", cc.a.alg.window_description())],
        lhs: format!("rank {rank}"),
        rhs: format!("rank {}", ybasis.len()),
    });
    c.finish()
}

/// (ι⊗T)(T⊗ι)(y⊗Δ(a)(1⊗a′)) = (Δ_A⊗ι)(T(y⊗a))(1⊗a′⊗1) over (y, a, a′).
fn right_coassociativity(cc: &Coaction, sampling: &Sampling) -> Clause {
    let mut c = ClauseCheck::new("(ι⊗ρ)ρ = (Δ_A⊗ι)ρ, right covering");
    for t in cc.tuples(&[Y, A, A], sampling) {
        let sides = (|| {
            let lhs = cc.iterated_t(&t[0], &t[1], &t[2])?;
            let rhs = tensor::map_legs(&(cc.rr)(&t[0], &t[1])?, 2, 0, 1, 2, |l| {
                cc.a.comul.cover(&l[0], Cover::RightOnSecond, &t[2])
            })?;
            Ok((lhs, rhs))
        })();
        c.compare(|| cc.labels(&t, &[Y, A, A]), sides, |x| cc.show(x, &[A, A, Y]));
    }
    c.finish()
}

/// Mirror through T̄: (c⊗1⊗1)(ι⊗T̄)(…)(Δ_A(a)⊗y) = (c⊗1⊗1)(Δ_A⊗ι)T̄(a⊗y) over (a, y, c).
fn left_coassociativity(cc: &Coaction, sampling: &Sampling) -> Clause {
    let mut c = ClauseCheck::new("(ι⊗ρ)ρ = (Δ_A⊗ι)ρ, left covering");
    for t in cc.tuples(&[A, Y, A], sampling) {
        let sides = (|| {
            let covered = cc.a.comul.cover(&t[0], Cover::LeftOnFirst, &t[2])?;
            let lhs = cc.iterated_tbar(&covered, &t[1])?;
            let rhs = tensor::map_legs(&(cc.rl)(&t[1], &t[0])?, 2, 0, 1, 2, |l| {
                cc.a.comul.cover(&l[0], Cover::LeftOnFirst, &t[2])
            })?;
            Ok((lhs, rhs))
        })();
        c.compare(|| cc.labels(&t, &[A, Y, A]), sides, |x| cc.show(x, &[A, A, Y]));
    }
    c.finish()
}

/// (ι⊗ε_Y)(ρ(y)(a⊗1)) = ε_Y(y)a, or the left covering.
fn unit_action_clause(cc: &Coaction, sampling: &Sampling, left: bool) -> Clause {
    let name = if left {
        "(ι⊗ε_Y)((a⊗1)ρ(y)) = ε_Y(y)a"
    } else {
        "(ι⊗ε_Y)(ρ(y)(a⊗1)) = ε_Y(y)a"
    };
    let mut c = ClauseCheck::new(name);
    for t in cc.tuples(&[Y, A], sampling) {
        let img = if left { (cc.rl)(&t[0], &t[1]) } else { (cc.rr)(&t[0], &t[1]) };
        let sides = img
            .and_then(|x| tensor::contract_leg(&x, 2, 1, |k| cc.eps_y(k)))
            .map(|l| (l, cc.a.basis_element(&t[1]).scale(&cc.eps_y(&t[0]))));
        c.compare(|| cc.labels(&t, &[Y, A]), sides, |x| cc.a.show(x));
    }
    c.finish()
}

/// The partial comodule coalgebra axioms over (y, a, y′, a′).
pub fn check_partial_axioms(cc: &Coaction, sampling: &Sampling) -> CheckReport {
    let mut clauses = counit_clauses(cc, sampling);
    let mut member = ClauseCheck::new("(ι⊗T)(Δ_Y(y)⊗a) covered by y′ lies in Y⊗A⊗Y");
    let mut twisted = ClauseCheck::new("(ι⊗T)(T⊗ι)(ι⊗Δ_A) = ((ι⊗ε_Y)T⊗ι⊗ι)(ι⊗(Δ_A⊗ι)T)(Δ_Y⊗ι)");
    let ylg = cc.y.alg.as_ref();
    for t in cc.tuples(&[Y, A, Y], sampling) {
        for left in [false, true] {
            let z = cc.z_tensor(&t[0], &t[1], &t[2], left);
            membership_clause(cc, "covered tensor", &mut member, cc.labels(&t, &[Y, A, Y]), z, &[Y, A, Y]);
        }
    }
    clauses.push(member.finish());
    clauses.push(coalgebra_compatibility(cc, sampling));
    for t in cc.tuples(&[Y, A, Y, A], sampling) {
        let (y, a, y2, a2) = (&t[0], &t[1], &t[2], &t[3]);
        let sides = (|| {
            let lhs = tensor::mul_leg(&cc.iterated_t(y, a, a2)?, 3, 2, &cc.y.basis_element(y2), Side::Right, ylg)?;
            let z = cc.z_tensor(y, a, y2, false)?;
            let rhs = tensor::map_legs(&z, 3, 0, 2, 2, |l| {
                let d = cc.a.comul.cover(&l[1], Cover::RightOnSecond, a2)?;
                tensor::map_legs(&d, 2, 0, 1, 1, |p| {
                    tensor::contract_leg(&(cc.rr)(&l[0], &p[0])?, 2, 1, |k| cc.eps_y(k))
                })
            })?;
            Ok((lhs, rhs))
        })();
        twisted.compare(|| cc.labels(&t, &[Y, A, Y, A]), sides, |x| cc.show(x, &[A, A, Y]));
    }
    clauses.push(twisted.finish());
    cc.report("partial", sampling, clauses)
}

/// The symmetric axioms through T̄, over (a, y, y′) and (a, y, c′, c).
pub fn check_symmetric_axioms(cc: &Coaction, sampling: &Sampling) -> CheckReport {
    let mut member = ClauseCheck::new("(T̄⊗ι)(a⊗Δ_Y(y)) covered by y′ lies in A⊗Y⊗Y");
    let mut twisted = ClauseCheck::new("(ι⊗T̄)(ι⊗τ)(T̄⊗ι)(ι⊗τ)(Δ_A⊗ι) = ((ι⊗ε_Y)T̄⊗ι⊗ι)(ι⊗τ)((Δ_A⊗ι)T̄⊗ι)(ι⊗Δ_Y)");
    let (alg, ylg) = (cc.a.alg.as_ref(), cc.y.alg.as_ref());
    for t in cc.tuples(&[A, Y, Y], sampling) {
        let yy = cc.y.basis_element(&t[2]);
        for side in [Side::Right, Side::Left] {
            let v = cc.delta_y(&t[1]).and_then(|d| {
                tensor::map_legs(&d, 2, 0, 1, 2, |l| tensor::mul_leg(&(cc.rl)(&l[0], &t[0])?, 2, 1, &yy, side, ylg))
            });
            membership_clause(cc, "covered tensor", &mut member, cc.labels(&t, &[A, Y, Y]), v, &[A, Y, Y]);
        }
    }
    for t in cc.tuples(&[A, Y, A, A], sampling) {
        let (a, y, c1, c) = (&t[0], &t[1], &t[2], &t[3]);
        let c1e = cc.a.basis_element(c1);
        let sides = (|| {
            // (c′⊗c)Δ(a)
            let cover2 = |x: &Key| -> Result<Element> {
                tensor::mul_leg(&cc.a.comul.cover(x, Cover::LeftOnSecond, c)?, 2, 0, &c1e, Side::Left, alg)
            };
            let lhs = cc.iterated_tbar(&cover2(a)?, y)?;
            let mut rhs = Element::zero();
            for (k, s) in cc.delta_y(y)?.terms() {
                let l = legs_of(k, 2);
                for (uk, us) in (cc.rl)(&l[0], a)?.terms() {
                    let uv = legs_of(uk, 2);
                    let v = cc.y.basis_element(&uv[1]);
                    let pq = cover2(&uv[0])?;
                    let part = tensor::map_legs(&pq, 2, 0, 1, 1, |p| {
                        tensor::contract_leg(&(cc.rl)(&l[1], &p[0])?, 2, 1, |k| cc.eps_y(k))
                    })?;
                    rhs.add_scaled(&tensor::join(&part, 2, &v, 1), &(s * us));
                }
            }
            Ok((lhs, rhs))
        })();
        twisted.compare(|| cc.labels(&t, &[A, Y, A, A]), sides, |x| cc.show(x, &[A, A, Y]));
    }
    cc.report("symmetric", sampling, vec![member.finish(), twisted.finish()])
}

/// Whether a symmetric partial comodule coalgebra is global: (ι⊗ε_Y)ρ(y) acts as
/// ε_Y(y)·1 on both sides, and the T and T̄ forms of coassociativity agree.
pub fn check_globality(cc: &Coaction, sampling: &Sampling) -> CheckReport {
    let partial = check_partial_axioms(cc, sampling);
    let symmetric = check_symmetric_axioms(cc, sampling);
    if !partial.is_ok() || !symmetric.is_ok() {
        return cc.precondition(
            "globality",
            sampling,
            &format!(
                "requires the partial and symmetric suites to pass (partial: {}, symmetric: {})",
                partial.status.as_str(),
                symmetric.status.as_str()
            ),
        );
    }
    let right = unit_action_clause(cc, sampling, false);
    let left = unit_action_clause(cc, sampling, true);
    let via_t = right_coassociativity(cc, sampling);
    let via_tbar = left_coassociativity(cc, sampling);
    let mut agree = ClauseCheck::new("coassociativity through T ⟺ through T̄");
    agree.record(via_t.status == via_tbar.status, || Witness {
        inputs: vec![cc.name.clone()],
        lhs: format!("through T: {}", via_t.status.as_str()),
        rhs: format!("through T̄: {}", via_tbar.status.as_str()),
    });
    agree.note(format!(
        "coassociative: {}",
        if via_t.status == crate::report::Status::Pass { "yes" } else { "no" }
    ));
    cc.report("globality", sampling, vec![right, left, agree.finish()])
        .with_note("checked after the partial and symmetric suites passed")
}

/// Partial comodule algebra with idempotent E, plus the symmetric condition when asked.
pub fn check_comodule_algebra(cc: &Coaction, e: &IdempotentE, symmetric: bool, sampling: &Sampling) -> CheckReport {
    let e = &e.e;
    if e.carrier().name() != cc.ay.name() {
        return cc.precondition(
            "comodule_algebra",
            sampling,
            &format!("E acts on {}, not on {}", e.carrier().name(), cc.ay.name()),
        );
    }
    let ylg = cc.y.alg.as_ref();
    let ay = [A, Y];
    let show2 = |x: &Element| cc.show(x, &ay);
    let f = cc.y.field();
    let pair = |a: &Key, y: &Key| Element::basis(Key::pair(a.clone(), y.clone()), f);

    let mut idem = ClauseCheck::new("E·E = E");
    let mut mult = ClauseCheck::new("ρ(yy′) = ρ(y)ρ(y′)");
    let mut inclusion = ClauseCheck::new("ρ(Y)(A⊗1) ⊆ E(A⊗Y), (A⊗1)ρ(Y) ⊆ (A⊗Y)E");
    let mut absorb = ClauseCheck::new("Eρ(y) = ρ(y) = ρ(y)E");
    let mut coassoc = ClauseCheck::new("(ι⊗ρ)ρ(y) = (1⊗E)(Δ_A⊗ι)ρ(y)");
    let mut sym = ClauseCheck::new("(ι⊗ρ)ρ(y) = (Δ_A⊗ι)ρ(y)(1⊗E)");

    for t in cc.tuples(&[A, Y], sampling) {
        let x = pair(&t[0], &t[1]);
        let sides = (|| Ok((e.act_left(&e.act_left(&x)?)?, e.act_left(&x)?)))();
        idem.compare(|| cc.labels(&t, &ay), sides, show2);
        let sides = (|| Ok((e.act_right(&e.act_right(&x)?)?, e.act_right(&x)?)))();
        idem.compare(|| cc.labels(&t, &ay), sides, show2);
    }

    // Spans of E(A⊗Y) and (A⊗Y)E over the window, when A⊗Y is finite-dimensional.
    let spans = cc.ay.basis().map(|basis| {
        let index: HashMap<Key, usize> = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let coords = |x: Result<Element>| x.ok().and_then(|x| x.coords(f, &index, basis.len()));
        let left: Vec<Vec<Scalar>> = basis
            .iter()
            .filter_map(|k| coords(e.act_left(&Element::basis(k.clone(), f))))
            .collect();
        let right: Vec<Vec<Scalar>> = basis
            .iter()
            .filter_map(|k| coords(e.act_right(&Element::basis(k.clone(), f))))
            .collect();
        (index, left, right)
    });

    for t in cc.tuples(&[Y, A], sampling) {
        let (y, a) = (&t[0], &t[1]);
        let inputs = || cc.labels(&t, &[Y, A]);
        let (tr, tl) = ((cc.rr)(y, a), (cc.rl)(y, a));
        let sides = (|| Ok((e.act_left(&tr.clone()?)?, tr.clone()?)))();
        absorb.compare(inputs, sides, show2);
        let sides = (|| Ok((e.act_right(&tl.clone()?)?, tl.clone()?)))();
        absorb.compare(inputs, sides, show2);
        if let Some((index, left, right)) = &spans {
            for (img, span) in [(&tr, left), (&tl, right)] {
                match img {
                    Ok(x) => {
                        let ok = x
                            .coords(f, index, index.len())
                            .map(|v| in_span(f, &v, span).unwrap_or(false))
                            .unwrap_or(false);
                        inclusion.record(ok, || Witness {
                            inputs: inputs(),
                            lhs: show2(x),
                            rhs: "outside the image of E".into(),
                        });
                    }
                    Err(err) => inclusion.error(inputs(), err),
                }
            }
        } else {
            inclusion.note("A⊗Y is not finite-dimensional: inclusion read off from absorption by E");
        }
    }

    for t in cc.tuples(&[Y, Y, A], sampling) {
        let (y, y2, a) = (&t[0], &t[1], &t[2]);
        let inputs = || cc.labels(&t, &[Y, Y, A]);
        let sides = (|| {
            let prod = multiply(&cc.y.basis_element(y), &cc.y.basis_element(y2), ylg)?;
            let lhs = cc.map_t(&prod, &cc.a.basis_element(a))?;
            Ok((lhs, cc.rho_left(y, &(cc.rr)(y2, a)?)?))
        })();
        mult.compare(inputs, sides, show2);
        let sides = (|| {
            let prod = multiply(&cc.y.basis_element(y), &cc.y.basis_element(y2), ylg)?;
            let lhs = cc.map_tbar(&cc.a.basis_element(a), &prod)?;
            Ok((lhs, cc.rho_right(&(cc.rl)(y, a)?, y2)?))
        })();
        mult.compare(inputs, sides, show2);
    }

    for t in cc.tuples(&[Y, A, Y], sampling) {
        let (y, a, z) = (&t[0], &t[1], &t[2]);
        let inputs = || cc.labels(&t, &[Y, A, Y]);
        let x = pair(a, z);
        let sides = (|| Ok((cc.rho_left(y, &e.act_left(&x)?)?, cc.rho_left(y, &x)?)))();
        absorb.compare(inputs, sides, show2);
        let sides = (|| Ok((cc.rho_right(&e.act_right(&x)?, y)?, cc.rho_right(&x, y)?)))();
        absorb.compare(inputs, sides, show2);
    }

    // E applied to legs 1 and 2 of an A⊗A⊗Y tensor.
    let e_on_tail = |t: &Element, left: bool| -> Result<Element> {
        tensor::map_legs(t, 3, 1, 2, 2, |l| {
            let x = pair(&l[0], &l[1]);
            if left {
                e.act_left(&x)
            } else {
                e.act_right(&x)
            }
        })
    };
    for t in cc.tuples(&[Y, A, A], sampling) {
        let (y, a, a2) = (&t[0], &t[1], &t[2]);
        let sides = (|| {
            let lhs = cc.iterated_t(y, a, a2)?;
            let d = tensor::map_legs(&(cc.rr)(y, a)?, 2, 0, 1, 2, |l| {
                cc.a.comul.cover(&l[0], Cover::RightOnSecond, a2)
            })?;
            Ok((lhs, e_on_tail(&d, true)?))
        })();
        coassoc.compare(|| cc.labels(&t, &[Y, A, A]), sides, |x| cc.show(x, &[A, A, Y]));
    }
    if symmetric {
        for t in cc.tuples(&[A, Y, A], sampling) {
            let (a, y, c) = (&t[0], &t[1], &t[2]);
            let sides = (|| {
                let lhs = cc.iterated_tbar(&cc.a.comul.cover(a, Cover::LeftOnFirst, c)?, y)?;
                let d = tensor::map_legs(&(cc.rl)(y, a)?, 2, 0, 1, 2, |l| {
                    cc.a.comul.cover(&l[0], Cover::LeftOnFirst, c)
                })?;
                Ok((lhs, e_on_tail(&d, false)?))
            })();
            sym.compare(|| cc.labels(&t, &[A, Y, A]), sides, |x| cc.show(x, &[A, A, Y]));
        }
    }
    let mut clauses = vec![
        idem.finish(),
        injectivity_clause(cc),
        mult.finish(),
        inclusion.finish(),
        absorb.finish(),
        coassoc.finish(),
    ];
    if symmetric {
        clauses.push(sym.finish());
    }
    cc.report("comodule_algebra", sampling, clauses)
}

/// Partial comodule bialgebra: the comodule algebra and partial comodule coalgebra
/// suites on one ρ. Symmetric clauses are reported but only flag symmetry.
pub fn check_bialgebra(cc: &Coaction, e: &IdempotentE, sampling: &Sampling) -> CheckReport {
    let parts = [
        check_comodule_algebra(cc, e, true, sampling),
        check_partial_axioms(cc, sampling),
        check_symmetric_axioms(cc, sampling),
    ];
    let symmetric = parts[2].is_ok()
        && parts[0]
            .clauses
            .last()
            .is_some_and(|c| c.status == crate::report::Status::Pass);
    let mut clauses = Vec::new();
    for (i, r) in parts.iter().enumerate() {
        for c in &r.clauses {
            let mut c = c.clone();
            c.name = format!("{}: {}", r.suite, c.name);
            let sym_clause = i == 2 || (i == 0 && c.name.ends_with("(Δ_A⊗ι)ρ(y)(1⊗E)"));
            if sym_clause {
                c.informational = true;
            }
            clauses.push(c);
        }
    }
    cc.report("bialgebra", sampling, clauses)
        .with_note(format!("symmetric: {symmetric}"))
}

/// Rank of T on the full Y⊗A basis, with the dimension of Y⊗A.
pub fn t_rank(cc: &Coaction) -> Result<(usize, usize)> {
    let m = cc.t_matrix()?;
    Ok((m.rank(), m.cols()))
}

/// T: Y⊗A → A⊗Y bijective, read off the rank of its matrix.
pub fn check_t_bijective(cc: &Coaction, sampling: &Sampling) -> CheckReport {
    let mut c = ClauseCheck::new("T bijective");
    match t_rank(cc) {
        Ok((rank, n)) => {
            c.record(rank == n, || Witness {
                inputs: vec![format!("dim Y⊗A = {n}")],
                lhs: format!("rank T = {rank}"),
                rhs: format!("{n}"),
            });
            c.note(format!("rank T = {rank} of {n}"));
        }
        Err(e) => c.error(vec![cc.name.clone()], &e),
    }
    cc.report("t_bijective", sampling, vec![c.finish()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;
    use crate::gallery::{function_algebra, group_algebra, indicator};
    use crate::multiplier::Multiplier;

    fn h_coaction(members: &[usize]) -> Coaction {
        let f = Field::Rationals;
        let a = function_algebra(&FiniteGroup::cyclic(4).unwrap(), f).unwrap();
        let y = group_algebra(&FiniteGroup::cyclic(2).unwrap(), f).unwrap();
        let h = indicator(members, f);
        let (h1, h2) = (h.clone(), h.clone());
        let (a1, a2) = (a.alg.clone(), a.alg.clone());
        let rr: CoactFn = Arc::new(move |yk, ak| {
            let ha = multiply(&h1, &Element::basis(ak.clone(), f), a1.as_ref())?;
            Ok(tensor::join(&ha, 1, &Element::basis(yk.clone(), f), 1))
        });
        let rl: CoactFn = Arc::new(move |yk, ak| {
            let ah = multiply(&Element::basis(ak.clone(), f), &h2, a2.as_ref())?;
            Ok(tensor::join(&ah, 1, &Element::basis(yk.clone(), f), 1))
        });
        Coaction::new("h", y, a, rr, rl, CoactionSource::Explicit).unwrap()
    }

    fn d(i: i64) -> Element {
        Element::basis(Key::Int(i), Field::Rationals)
    }

    #[test]
    fn t_on_odd_delta_vanishes() {
        let cc = h_coaction(&[0, 2]);
        let t = cc.y.basis_element(&Key::Int(1));
        assert!(cc.map_t(&t, &d(1)).unwrap().is_zero());
        assert_eq!(cc.map_t(&t, &d(2)).unwrap(), tensor::join(&d(2), 1, &t, 1));
        assert!(cc.map_t(&Element::zero(), &d(2)).unwrap().is_zero());
    }

    #[test]
    fn subgroup_indicator_is_symmetric_partial_not_global() {
        let cc = h_coaction(&[0, 2]);
        let s = Sampling::default();
        assert!(check_partial_axioms(&cc, &s).is_ok());
        assert!(check_symmetric_axioms(&cc, &s).is_ok());
        assert!(!check_global_comodule(&cc, &s).is_ok());
        let g = check_globality(&cc, &s);
        assert_eq!(g.status, crate::report::Status::Fail);
        assert_eq!(t_rank(&cc).unwrap(), (4, 8));
    }

    #[test]
    fn non_subgroup_fails_twisted_axiom() {
        let cc = h_coaction(&[0, 1]);
        let r = check_partial_axioms(&cc, &Sampling::default());
        assert!(!r.is_ok());
        let failing: Vec<_> = r.clauses.iter().filter(|c| !c.status.is_ok()).map(|c| c.name.clone()).collect();
        assert_eq!(failing.len(), 1, "{failing:?}");
        assert!(failing[0].contains("ε_Y"));
    }

    #[test]
    fn full_indicator_is_global() {
        let cc = h_coaction(&[0, 1, 2, 3]);
        let s = Sampling::default();
        assert!(check_global_comodule(&cc, &s).is_ok());
        assert!(check_globality(&cc, &s).is_ok());
        assert_eq!(t_rank(&cc).unwrap(), (8, 8));
    }

    #[test]
    fn comodule_algebra_with_projection_e() {
        let cc = h_coaction(&[0, 2]);
        let f = Field::Rationals;
        let one = cc.y.alg.unit().unwrap();
        let e = Multiplier::embed(&tensor::join(&indicator(&[0, 2], f), 1, &one, 1), cc.ay().clone()).unwrap();
        let e = IdempotentE::new(e).unwrap();
        let s = Sampling::default();
        assert!(check_comodule_algebra(&cc, &e, true, &s).is_ok());
        let r = check_bialgebra(&cc, &e, &s);
        assert!(r.is_ok(), "{}", r.to_text());
        let bad = IdempotentE::new(Multiplier::identity(cc.ay().clone())).unwrap();
        let r = check_comodule_algebra(&cc, &bad, true, &s);
        assert!(!r.is_ok());
    }
}
