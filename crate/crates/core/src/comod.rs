//! Bicomodules over coquasi bialgebras.
//!
//! One data type covers left, right and two-sided comodules: a one-sided
//! comodule is a bicomodule over the trivial algebra 𝕜 on the other side.
//! Coactions are stored as sparse split tables, `lambda[i]` listing
//! `(c, j, coeff)` with χ(e_i) ∋ coeff·e_c⊗e_j and `rho[i]` listing
//! `(j, d, coeff)` with χ(e_i) ∋ coeff·e_j⊗e_d.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::Rng;

use crate::coalg::{conv_inverse, normalize_split, Coalgebra, Functional};
use crate::cqbialg::CoquasiBialgebra;
use crate::engine::{Lin, Split, Sw};
use crate::error::{Error, Result};
use crate::linalg::{span_basis, Field, Matrix, Scalar, SolutionSpace};
use crate::report::{identity_check, render_vec, tensor_names, Check, Checks, Witness};

/// Shared handle to an ambient coquasi bialgebra.
pub type Ambient = Arc<CoquasiBialgebra>;

/// Structural equality of ambient algebras (names are ignored).
pub fn same_ambient(a: &Ambient, b: &Ambient) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn trivial_ambient(field: Field) -> Ambient {
    Arc::new(CoquasiBialgebra::trivial(field))
}

fn is_trivial(a: &Ambient) -> bool {
    a.dim() == 1
}

#[derive(Clone, Debug)]
pub struct Bicomodule {
    names: Vec<String>,
    left: Ambient,
    right: Ambient,
    lambda: Split,
    rho: Split,
}

/// A linear map between bicomodules, checked by [`ComoduleMorphism::check`].
#[derive(Clone, Debug)]
pub struct ComoduleMorphism {
    pub source: Bicomodule,
    pub target: Bicomodule,
    pub matrix: Matrix,
}

/// A subspace of a tensor product with its inclusion matrix.
#[derive(Clone, Debug)]
pub struct Subcomodule {
    pub module: Bicomodule,
    pub inclusion: Matrix,
}

/// A dual object with its evaluation and coevaluation.
///
/// For the left dual `ev` is indexed over *M⊗M and `coev` over M⊗*M; for the
/// right dual `ev` is indexed over M⊗M* and `coev` over M*⊗M.
#[derive(Clone, Debug)]
pub struct Dual {
    pub module: Bicomodule,
    pub ev: Vec<Scalar>,
    pub coev: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Bicomodule {
    pub fn new(names: Vec<String>, left: Ambient, right: Ambient, lambda: Split, rho: Split) -> Result<Bicomodule> {
        let m = names.len();
        let field = left.field();
        if right.field() != field {
            return Err(Error::FieldMismatch(field, right.field()));
        }
        if lambda.len() != m || rho.len() != m {
            return Err(Error::Shape(format!(
                "comodule of dimension {m} has {} left and {} right coaction rows",
                lambda.len(),
                rho.len()
            )));
        }
        for (i, row) in lambda.iter().enumerate() {
            if let Some((c, j, _)) = row.iter().find(|(c, j, _)| *c >= left.dim() || *j >= m) {
                return Err(Error::Validation(format!("left coaction entry [{i}, {c}, {j}] out of range")));
            }
        }
        for (i, row) in rho.iter().enumerate() {
            if let Some((j, d, _)) = row.iter().find(|(j, d, _)| *j >= m || *d >= right.dim()) {
                return Err(Error::Validation(format!("right coaction entry [{i}, {j}, {d}] out of range")));
            }
        }
        let lambda = lambda.into_iter().map(normalize_split).collect();
        let rho = rho.into_iter().map(normalize_split).collect();
        Ok(Bicomodule { names, left, right, lambda, rho })
    }

    /// Bicomodule from coaction matrices: `left` is dim(C)·m × m with row
    /// c·m + j, `right` is m·dim(D) × m with row j·dim(D) + d.
    pub fn from_matrices(
        names: Vec<String>,
        left_alg: Ambient,
        right_alg: Ambient,
        left: &Matrix,
        right: &Matrix,
    ) -> Result<Bicomodule> {
        let m = names.len();
        let (dc, dd) = (left_alg.dim(), right_alg.dim());
        if left.rows() != dc * m || left.cols() != m || right.rows() != m * dd || right.cols() != m {
            return Err(Error::Shape("coaction matrices do not match the dimensions".into()));
        }
        let lambda = (0..m)
            .map(|i| {
                (0..dc * m)
                    .filter(|&r| !left.get(r, i).is_zero())
                    .map(|r| (r / m, r % m, left.get(r, i).clone()))
                    .collect()
            })
            .collect();
        let rho = (0..m)
            .map(|i| {
                (0..m * dd)
                    .filter(|&r| !right.get(r, i).is_zero())
                    .map(|r| (r / dd, r % dd, right.get(r, i).clone()))
                    .collect()
            })
            .collect();
        Bicomodule::new(names, left_alg, right_alg, lambda, rho)
    }

    /// The unit object 𝕜 for ⊗, with coactions through the units.
    pub fn unit_object(left: Ambient, right: Ambient) -> Bicomodule {
        let lambda = vec![nonzero(left.unit()).map(|(c, u)| (c, 0, u)).collect()];
        let rho = vec![nonzero(right.unit()).map(|(d, u)| (0, d, u)).collect()];
        Bicomodule { names: vec!["1".into()], left, right, lambda, rho }
    }

    /// H as a bicomodule over (H, H) through Δ on both sides.
    pub fn regular(h: Ambient) -> Bicomodule {
        let delta = h.delta().clone();
        Bicomodule { names: h.names().to_vec(), left: h.clone(), right: h, lambda: delta.clone(), rho: delta }
    }

    /// H as a right comodule over itself.
    pub fn regular_right(h: Ambient) -> Bicomodule {
        let one = h.field().one();
        let lambda = (0..h.dim()).map(|i| vec![(0, i, one.clone())]).collect();
        Bicomodule {
            names: h.names().to_vec(),
            left: trivial_ambient(h.field()),
            right: h.clone(),
            lambda,
            rho: h.delta().clone(),
        }
    }

    /// One-dimensional bicomodule with coaction a⊗e⊗b for group-likes a, b.
    pub fn grouplike(left: Ambient, right: Ambient, a: &[Scalar], b: &[Scalar]) -> Result<Bicomodule> {
        if !left.coalgebra().is_grouplike(a) {
            return Err(Error::NotGroupLike(left.render(a)));
        }
        if !right.coalgebra().is_grouplike(b) {
            return Err(Error::NotGroupLike(right.render(b)));
        }
        let name = format!("[{}|{}]", left.render(a), right.render(b));
        let lambda = vec![nonzero(a).map(|(c, x)| (c, 0, x)).collect()];
        let rho = vec![nonzero(b).map(|(d, x)| (0, d, x)).collect()];
        Ok(Bicomodule { names: vec![name], left, right, lambda, rho })
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> String {
        self.names[i].clone()
    }

    pub fn left(&self) -> &Ambient {
        &self.left
    }

    pub fn right(&self) -> &Ambient {
        &self.right
    }

    pub fn lambda(&self) -> &Split {
        &self.lambda
    }

    pub fn rho(&self) -> &Split {
        &self.rho
    }

    pub fn with_names(mut self, names: Vec<String>) -> Bicomodule {
        assert_eq!(names.len(), self.dim());
        self.names = names;
        self
    }

    pub fn is_right_comodule(&self) -> bool {
        is_trivial(&self.left)
    }

    pub fn is_left_comodule(&self) -> bool {
        is_trivial(&self.right)
    }

    pub fn left_matrix(&self) -> Matrix {
        let m = self.dim();
        let mut out = Matrix::zeros(self.field(), self.left.dim() * m, m);
        for (i, row) in self.lambda.iter().enumerate() {
            for (c, j, x) in row {
                out.add_to(c * m + j, i, x);
            }
        }
        out
    }

    pub fn right_matrix(&self) -> Matrix {
        let (m, dd) = (self.dim(), self.right.dim());
        let mut out = Matrix::zeros(self.field(), m * dd, m);
        for (i, row) in self.rho.iter().enumerate() {
            for (j, d, x) in row {
                out.add_to(j * dd + d, i, x);
            }
        }
        out
    }

    /// Terms `(c, j, d, coeff)` of the two-sided coaction of e_i.
    pub fn full(&self, i: usize) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (c, k, a) in &self.lambda[i] {
            for (j, d, b) in &self.rho[*k] {
                out.push((*c, *j, *d, a * b));
            }
        }
        out
    }

    /// Two-sided coaction of e_i as a vector over C⊗M⊗D.
    pub fn full_vector(&self, i: usize) -> Vec<Scalar> {
        let (m, dd) = (self.dim(), self.right.dim());
        let mut v = vec![self.field().zero(); self.left.dim() * m * dd];
        for (c, j, d, x) in self.full(i) {
            v[(c * m + j) * dd + d].add_assign(&x);
        }
        v
    }

    /// Replaces leg `leg` of `t` by the legs `out`, `leg` (left coaction).
    pub fn split_left(&self, t: &mut Sw, leg: &str, out: &str) {
        t.split(leg, (out, self.left.dim()), (leg, self.dim()), &self.lambda);
    }

    /// Replaces leg `leg` of `t` by the legs `leg`, `out` (right coaction).
    pub fn split_right(&self, t: &mut Sw, leg: &str, out: &str) {
        t.split(leg, (leg, self.dim()), (out, self.right.dim()), &self.rho);
    }

    fn basis_names3(&self) -> impl Fn(usize) -> String + Sync + Send {
        tensor_names(vec![self.left.names().to_vec(), self.names.clone(), self.right.names().to_vec()])
    }

    /// Coaction laws on each side and compatibility of the two coactions.
    pub fn check(&self) -> Checks {
        let f = self.field();
        let (m, dc, dd) = (self.dim(), self.left.dim(), self.right.dim());
        let label = |i: usize| self.names[i].clone();
        let mut out = Checks::new();

        let ccm = tensor_names(vec![self.left.names().to_vec(), self.left.names().to_vec(), self.names.clone()]);
        out.push(identity_check(
            "left_coassociativity",
            m,
            |i| {
                let mut a = Sw::basis(f, &[("m", m, i)]);
                self.split_left(&mut a, "m", "c");
                let mut b = a.clone();
                a.split("c", ("c1", dc), ("c2", dc), self.left.delta());
                self.split_left(&mut b, "m", "c2");
                b.rename("c", "c1");
                (a.to_vector(&["c1", "c2", "m"]), b.to_vector(&["c1", "c2", "m"]))
            },
            label,
            |v| render_vec(v, &ccm),
        ));
        out.push(identity_check(
            "left_counit",
            m,
            |i| {
                let mut a = Sw::basis(f, &[("m", m, i)]);
                self.split_left(&mut a, "m", "c");
                a.eval(&["c"], self.left.counit());
                (a.to_vector(&["m"]), unit_vec(f, m, i))
            },
            label,
            |v| render_vec(v, &label),
        ));

        let mdd = tensor_names(vec![self.names.clone(), self.right.names().to_vec(), self.right.names().to_vec()]);
        out.push(identity_check(
            "right_coassociativity",
            m,
            |i| {
                let mut a = Sw::basis(f, &[("m", m, i)]);
                self.split_right(&mut a, "m", "d");
                let mut b = a.clone();
                a.split("d", ("d1", dd), ("d2", dd), self.right.delta());
                self.split_right(&mut b, "m", "d1");
                b.rename("d", "d2");
                (a.to_vector(&["m", "d1", "d2"]), b.to_vector(&["m", "d1", "d2"]))
            },
            label,
            |v| render_vec(v, &mdd),
        ));
        out.push(identity_check(
            "right_counit",
            m,
            |i| {
                let mut a = Sw::basis(f, &[("m", m, i)]);
                self.split_right(&mut a, "m", "d");
                a.eval(&["d"], self.right.counit());
                (a.to_vector(&["m"]), unit_vec(f, m, i))
            },
            label,
            |v| render_vec(v, &label),
        ));

        let cmd = self.basis_names3();
        out.push(identity_check(
            "coactions_commute",
            m,
            |i| {
                let mut a = Sw::basis(f, &[("m", m, i)]);
                self.split_right(&mut a, "m", "d");
                self.split_left(&mut a, "m", "c");
                let mut b = Sw::basis(f, &[("m", m, i)]);
                self.split_left(&mut b, "m", "c");
                self.split_right(&mut b, "m", "d");
                (a.to_vector(&["c", "m", "d"]), b.to_vector(&["c", "m", "d"]))
            },
            label,
            |v| render_vec(v, &cmd),
        ));
        out
    }

    /// The subcomodule spanned by the columns of `incl`, with coactions
    /// induced through a left inverse of the inclusion.
    pub fn sub(&self, incl: &Matrix) -> Result<Bicomodule> {
        let f = self.field();
        let m = self.dim();
        if incl.rows() != m {
            return Err(Error::Shape(format!("inclusion has {} rows, comodule dimension is {m}", incl.rows())));
        }
        let p = left_inverse(incl)?;
        let k = incl.cols();
        let names: Vec<String> = (0..k).map(|s| render_vec(&incl.column(s), &|i| self.names[i].clone())).collect();
        let induce = |table: &Split, other: usize, left_side: bool, what: &str| -> Result<Split> {
            let mut out = Vec::with_capacity(k);
            for s in 0..k {
                let x = incl.column(s);
                let mut y = vec![vec![f.zero(); m]; other];
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (a, b, c) in &table[i] {
                        let (o, j) = if left_side { (*a, *b) } else { (*b, *a) };
                        y[o][j].add_mul(xi, c);
                    }
                }
                let mut row = Vec::new();
                for (o, yo) in y.iter().enumerate() {
                    if yo.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let t = p.apply(yo);
                    if incl.apply(&t) != *yo {
                        return Err(Error::Validation(format!(
                            "span is not a subcomodule: the {what} coaction of {} leaves it",
                            names[s]
                        )));
                    }
                    for (u, tu) in t.into_iter().enumerate() {
                        if !tu.is_zero() {
                            row.push(if left_side { (o, u, tu) } else { (u, o, tu) });
                        }
                    }
                }
                out.push(row);
            }
            Ok(out)
        };
        let lambda = induce(&self.lambda, self.left.dim(), true, "left")?;
        let rho = induce(&self.rho, self.right.dim(), false, "right")?;
        Bicomodule::new(names, self.left.clone(), self.right.clone(), lambda, rho)
    }

    /// The subcomodule generated by `v`: the span of the middle legs of χ(v).
    pub fn generated(&self, v: &[Scalar]) -> Result<Subcomodule> {
        let (m, dc, dd) = (self.dim(), self.left.dim(), self.right.dim());
        let f = self.field();
        let mut parts = vec![vec![f.zero(); m]; dc * dd];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (c, j, d, x) in self.full(i) {
                parts[c * dd + d][j].add_mul(vi, &x);
            }
        }
        let basis = span_basis(f, m, parts);
        let inclusion = Matrix::from_columns(f, m, &basis);
        Ok(Subcomodule { module: self.sub(&inclusion)?, inclusion })
    }

    /// The same comodule in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Bicomodule> {
        if !p.is_square() || p.rank() != self.dim() {
            return Err(Error::Singular);
        }
        self.sub(p)
    }

    pub fn direct_sum(&self, other: &Bicomodule) -> Result<Bicomodule> {
        self.same_ambients(other)?;
        let m = self.dim();
        let shift = |t: &Split, left_side: bool| -> Split {
            t.iter()
                .map(|row| {
                    row.iter()
                        .map(|(a, b, c)| if left_side { (*a, b + m, c.clone()) } else { (a + m, *b, c.clone()) })
                        .collect()
                })
                .collect()
        };
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut lambda = self.lambda.clone();
        lambda.extend(shift(&other.lambda, true));
        let mut rho = self.rho.clone();
        rho.extend(shift(&other.rho, false));
        Bicomodule::new(names, self.left.clone(), self.right.clone(), lambda, rho)
    }

    fn same_ambients(&self, other: &Bicomodule) -> Result<()> {
        if !same_ambient(&self.left, &other.left) || !same_ambient(&self.right, &other.right) {
            return Err(Error::Validation(format!(
                "comodules live over ({}, {}) and ({}, {})",
                self.left.name(),
                self.right.name(),
                other.left.name(),
                other.right.name()
            )));
        }
        Ok(())
    }

    /// Forgets the left coaction.
    pub fn forget_left(&self) -> Bicomodule {
        let f = self.field();
        let lambda = (0..self.dim()).map(|i| vec![(0, i, f.one())]).collect();
        Bicomodule {
            names: self.names.clone(),
            left: trivial_ambient(f),
            right: self.right.clone(),
            lambda,
            rho: self.rho.clone(),
        }
    }

    /// Forgets the right coaction.
    pub fn forget_right(&self) -> Bicomodule {
        let f = self.field();
        let rho = (0..self.dim()).map(|i| vec![(i, 0, f.one())]).collect();
        Bicomodule {
            names: self.names.clone(),
            left: self.left.clone(),
            right: trivial_ambient(f),
            lambda: self.lambda.clone(),
            rho,
        }
    }

    /// ₀M: a right comodule with the left coaction m ↦ 1⊗m over `c`.
    pub fn trivial_left(&self, c: Ambient) -> Result<Bicomodule> {
        if !self.is_right_comodule() {
            return Err(Error::Validation("₀(-) needs a right comodule".into()));
        }
        let lambda = (0..self.dim()).map(|i| nonzero(c.unit()).map(|(a, u)| (a, i, u)).collect()).collect();
        Bicomodule::new(self.names.clone(), c, self.right.clone(), lambda, self.rho.clone())
    }

    /// M₀: a left comodule with the right coaction m ↦ m⊗1 over `d`.
    pub fn trivial_right(&self, d: Ambient) -> Result<Bicomodule> {
        if !self.is_left_comodule() {
            return Err(Error::Validation("(-)₀ needs a left comodule".into()));
        }
        let rho = (0..self.dim()).map(|i| nonzero(d.unit()).map(|(a, u)| (i, a, u)).collect()).collect();
        Bicomodule::new(self.names.clone(), self.left.clone(), d, self.lambda.clone(), rho)
    }

    /// M_f: the right coaction post-composed with a coalgebra map f: D → E.
    pub fn corestrict_right(&self, e: Ambient, f: &Matrix) -> Result<Bicomodule> {
        let fl = crate::engine::lin_from_matrix(f);
        let rho = self.rho.iter().map(|row| compose_second(row, &fl)).collect();
        Bicomodule::new(self.names.clone(), self.left.clone(), e, self.lambda.clone(), rho)
    }

    /// _fM: the left coaction post-composed with a coalgebra map f: C → E.
    pub fn corestrict_left(&self, e: Ambient, f: &Matrix) -> Result<Bicomodule> {
        let fl = crate::engine::lin_from_matrix(f);
        let lambda = self.lambda.iter().map(|row| compose_first(row, &fl)).collect();
        Bicomodule::new(self.names.clone(), e, self.right.clone(), lambda, self.rho.clone())
    }
}

pub(crate) fn nonzero(v: &[Scalar]) -> impl Iterator<Item = (usize, Scalar)> + '_ {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone()))
}

pub(crate) fn unit_vec(f: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

fn compose_first(row: &[(usize, usize, Scalar)], f: &Lin) -> Vec<(usize, usize, Scalar)> {
    let mut out = Vec::new();
    for (a, b, c) in row {
        for (a2, s) in &f[*a] {
            out.push((*a2, *b, c * s));
        }
    }
    normalize_split(out)
}

fn compose_second(row: &[(usize, usize, Scalar)], f: &Lin) -> Vec<(usize, usize, Scalar)> {
    let mut out = Vec::new();
    for (a, b, c) in row {
        for (b2, s) in &f[*b] {
            out.push((*a, *b2, c * s));
        }
    }
    normalize_split(out)
}

/// A matrix P with P·a = id, for `a` of full column rank.
pub fn left_inverse(a: &Matrix) -> Result<Matrix> {
    let (n, k) = (a.rows(), a.cols());
    let f = a.field();
    if k == 0 {
        return Ok(Matrix::zeros(f, 0, n));
    }
    let (_, rows) = a.transpose().rref();
    if rows.len() < k {
        return Err(Error::Singular);
    }
    let q = Matrix::from_rows(f, rows.iter().map(|&r| a.row(r).to_vec()).collect())?;
    let qi = q.invert()?;
    let mut p = Matrix::zeros(f, k, n);
    for (t, &r) in rows.iter().enumerate() {
        for s in 0..k {
            p.set(s, r, qi.get(s, t).clone());
        }
    }
    Ok(p)
}

impl ComoduleMorphism {
    pub fn new(source: Bicomodule, target: Bicomodule, matrix: Matrix) -> Result<ComoduleMorphism> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(ComoduleMorphism { source, target, matrix })
    }

    pub fn check(&self) -> Checks {
        morphism_checks(&self.source, &self.target, &self.matrix)
    }
}

/// Colinearity of `f` on both sides.
pub fn morphism_checks(src: &Bicomodule, tgt: &Bicomodule, f: &Matrix) -> Checks {
    let mut out = Checks::new();
    if let Err(e) = src.same_ambients(tgt) {
        out.push(Check::fail("ambient", Witness { at: "-".into(), lhs: e.to_string(), rhs: String::new() }));
        return out;
    }
    if f.rows() != tgt.dim() || f.cols() != src.dim() {
        out.push(Check::fail(
            "shape",
            Witness {
                at: "-".into(),
                lhs: format!("{}x{}", f.rows(), f.cols()),
                rhs: format!("{}x{}", tgt.dim(), src.dim()),
            },
        ));
        return out;
    }
    let field = src.field();
    let (mt, dc, dd) = (tgt.dim(), src.left.dim(), src.right.dim());
    let label = |i: usize| src.names[i].clone();
    let cm = tensor_names(vec![src.left.names().to_vec(), tgt.names.clone()]);
    out.push(identity_check(
        "left_colinear",
        src.dim(),
        |i| {
            let mut lhs = vec![field.zero(); dc * mt];
            for (c, k, a) in &src.lambda[i] {
                for r in 0..mt {
                    let x = f.get(r, *k);
                    if !x.is_zero() {
                        lhs[c * mt + r].add_mul(a, x);
                    }
                }
            }
            let mut rhs = vec![field.zero(); dc * mt];
            for j in 0..mt {
                let x = f.get(j, i);
                if x.is_zero() {
                    continue;
                }
                for (c, k, a) in &tgt.lambda[j] {
                    rhs[c * mt + k].add_mul(x, a);
                }
            }
            (lhs, rhs)
        },
        label,
        |v| render_vec(v, &cm),
    ));
    let md = tensor_names(vec![tgt.names.clone(), src.right.names().to_vec()]);
    out.push(identity_check(
        "right_colinear",
        src.dim(),
        |i| {
            let mut lhs = vec![field.zero(); mt * dd];
            for (k, d, a) in &src.rho[i] {
                for r in 0..mt {
                    let x = f.get(r, *k);
                    if !x.is_zero() {
                        lhs[r * dd + d].add_mul(a, x);
                    }
                }
            }
            let mut rhs = vec![field.zero(); mt * dd];
            for j in 0..mt {
                let x = f.get(j, i);
                if x.is_zero() {
                    continue;
                }
                for (k, d, a) in &tgt.rho[j] {
                    rhs[k * dd + d].add_mul(x, a);
                }
            }
            (lhs, rhs)
        },
        label,
        |v| render_vec(v, &md),
    ));
    out
}

/// M⊗N over 𝕜 with the left coaction of M and the right coaction of N.
fn outer_tensor(m: &Bicomodule, n: &Bicomodule) -> Bicomodule {
    let dn = n.dim();
    let mut lambda = Vec::with_capacity(m.dim() * dn);
    let mut rho = Vec::with_capacity(m.dim() * dn);
    for i in 0..m.dim() {
        for j in 0..dn {
            lambda.push(m.lambda[i].iter().map(|(c, k, a)| (*c, k * dn + j, a.clone())).collect());
            rho.push(n.rho[j].iter().map(|(l, d, b)| (i * dn + l, *d, b.clone())).collect());
        }
    }
    let namer = tensor_names(vec![m.names.clone(), n.names.clone()]);
    Bicomodule {
        names: (0..m.dim() * dn).map(namer).collect(),
        left: m.left.clone(),
        right: n.right.clone(),
        lambda,
        rho,
    }
}

/// M□_D N, the equalizer of ρ_M⊗id and id⊗λ_N inside M⊗N.
pub fn cotensor(m: &Bicomodule, n: &Bicomodule) -> Result<Subcomodule> {
    if !same_ambient(&m.right, &n.left) {
        return Err(Error::Validation(format!(
            "cotensor over different coalgebras {} and {}",
            m.right.name(),
            n.left.name()
        )));
    }
    let f = m.field();
    let (dm, dn, dd) = (m.dim(), n.dim(), m.right.dim());
    let mut a = Matrix::zeros(f, dm * dd * dn, dm * dn);
    for i in 0..dm {
        for j in 0..dn {
            let col = i * dn + j;
            for (k, d, c) in &m.rho[i] {
                a.add_to((k * dd + d) * dn + j, col, c);
            }
            for (d, l, c) in &n.lambda[j] {
                a.add_to((i * dd + d) * dn + l, col, &-c);
            }
        }
    }
    let ker = a.kernel();
    let inclusion = Matrix::from_columns(f, dm * dn, &ker);
    let module = outer_tensor(m, n).sub(&inclusion)?;
    Ok(Subcomodule { module, inclusion })
}

/// Checks that `f` is a coalgebra map C → D.
pub fn coalgebra_map_checks(c: &Coalgebra, d: &Coalgebra, f: &Matrix) -> Checks {
    let mut out = Checks::new();
    let (n, k) = (c.dim(), d.dim());
    let field = c.field();
    let dd = tensor_names(vec![d.names().to_vec(), d.names().to_vec()]);
    out.push(identity_check(
        "comultiplicative",
        n,
        |i| {
            let mut a = Sw::basis(field, &[("x", n, i)]);
            let mut b = a.clone();
            let fl = crate::engine::lin_from_matrix(f);
            a.map("x", ("x", k), &fl);
            a.split("x", ("y1", k), ("y2", k), d.delta());
            b.split("x", ("x1", n), ("x2", n), c.delta());
            b.map("x1", ("y1", k), &fl);
            b.map("x2", ("y2", k), &fl);
            (a.to_vector(&["y1", "y2"]), b.to_vector(&["y1", "y2"]))
        },
        |i| c.name(i),
        |v| render_vec(v, &dd),
    ));
    out.push(crate::report::scalar_check(
        "counital",
        n,
        |i| {
            let mut x = field.zero();
            for r in 0..k {
                x.add_mul(f.get(r, i), &d.counit()[r]);
            }
            (x, c.counit()[i].clone())
        },
        |i| c.name(i),
    ));
    out
}

fn require_coalgebra_map(c: &Ambient, d: &Ambient, f: &Matrix) -> Result<()> {
    if f.rows() != d.dim() || f.cols() != c.dim() {
        return Err(Error::Shape(format!("coalgebra map must be {}x{}", d.dim(), c.dim())));
    }
    let checks = coalgebra_map_checks(c.coalgebra(), d.coalgebra(), f);
    let bad = checks.failures().next().map(|bad| {
        format!("not a coalgebra map: {} fails at {}", bad.name, bad.witness.as_ref().map_or("-", |w| w.at.as_str()))
    });
    match bad {
        None => Ok(()),
        Some(msg) => Err(Error::Validation(msg)),
    }
}

/// f₊ = C_f: the regular bicomodule C with right coaction x ↦ x₁⊗f(x₂).
pub fn corestrict_plus(c: Ambient, d: Ambient, f: &Matrix) -> Result<Bicomodule> {
    require_coalgebra_map(&c, &d, f)?;
    Bicomodule::regular(c).corestrict_right(d, f)
}

/// f⁺ = _fC: the regular bicomodule C with left coaction x ↦ f(x₁)⊗x₂.
pub fn corestrict_coplus(c: Ambient, d: Ambient, f: &Matrix) -> Result<Bicomodule> {
    require_coalgebra_map(&c, &d, f)?;
    Bicomodule::regular(c).corestrict_left(d, f)
}

/// M⊗N with the diagonal coactions m₋₁n₋₁⊗m₀⊗n₀⊗m₁n₁.
pub fn tensor_comodules(m: &Bicomodule, n: &Bicomodule) -> Result<Bicomodule> {
    m.same_ambients(n)?;
    let (dn, dc, dd) = (n.dim(), m.left.dim(), m.right.dim());
    let (pc, pd) = (m.left.prod(), m.right.prod());
    let mut lambda = Vec::with_capacity(m.dim() * dn);
    let mut rho = Vec::with_capacity(m.dim() * dn);
    for i in 0..m.dim() {
        for j in 0..dn {
            let mut row = Vec::new();
            for (c, k, a) in &m.lambda[i] {
                for (c2, l, b) in &n.lambda[j] {
                    let ab = a * b;
                    for (e, p) in &pc[c * dc + c2] {
                        row.push((*e, k * dn + l, &ab * p));
                    }
                }
            }
            lambda.push(normalize_split(row));
            let mut row = Vec::new();
            for (k, d, a) in &m.rho[i] {
                for (l, d2, b) in &n.rho[j] {
                    let ab = a * b;
                    for (e, p) in &pd[d * dd + d2] {
                        row.push((k * dn + l, *e, &ab * p));
                    }
                }
            }
            rho.push(normalize_split(row));
        }
    }
    let namer = tensor_names(vec![m.names.clone(), n.names.clone()]);
    Ok(Bicomodule {
        names: (0..m.dim() * dn).map(namer).collect(),
        left: m.left.clone(),
        right: m.right.clone(),
        lambda,
        rho,
    })
}

/// Φ_{L,M,N} (or its inverse) applied to a vector of L⊗M⊗N:
/// Σ φ_C(l₋₁,m₋₁,n₋₁) l₀⊗m₀⊗n₀ φ_D⁻¹(l₁,m₁,n₁).
pub fn assoc_apply(l: &Bicomodule, m: &Bicomodule, n: &Bicomodule, v: &[Scalar], inverse: bool) -> Vec<Scalar> {
    if l.left.trivial_phi() && l.right.trivial_phi() {
        return v.to_vec();
    }
    let mut t = Sw::from_vector(l.field(), &[("l", l.dim()), ("m", m.dim()), ("n", n.dim())], v);
    assoc_sw(l, m, n, &mut t, ["l", "m", "n"], inverse);
    t.to_vector(&["l", "m", "n"])
}

/// Φ_{L,M,N} (or its inverse) applied in place to three legs of a tensor.
pub fn assoc_sw(l: &Bicomodule, m: &Bicomodule, n: &Bicomodule, t: &mut Sw, legs: [&str; 3], inverse: bool) {
    let (c, d) = (&l.left, &l.right);
    let [a, b, e] = legs;
    if !c.trivial_phi() {
        l.split_left(t, a, "~cl");
        m.split_left(t, b, "~cm");
        n.split_left(t, e, "~cn");
        let phi = if inverse { c.phi_inv() } else { c.phi() };
        t.eval(&["~cl", "~cm", "~cn"], phi.values());
    }
    if !d.trivial_phi() {
        l.split_right(t, a, "~dl");
        m.split_right(t, b, "~dm");
        n.split_right(t, e, "~dn");
        let phi = if inverse { d.phi() } else { d.phi_inv() };
        t.eval(&["~dl", "~dm", "~dn"], phi.values());
    }
}

/// Φ_{L,M,N}: (L⊗M)⊗N → L⊗(M⊗N) as a bicomodule map. Both sides share the
/// flat basis of L⊗M⊗N.
pub fn assoc_constraint(l: &Bicomodule, m: &Bicomodule, n: &Bicomodule) -> Result<ComoduleMorphism> {
    assoc_morphism(l, m, n, false)
}

/// Φ⁻¹_{L,M,N}: L⊗(M⊗N) → (L⊗M)⊗N.
pub fn assoc_constraint_inverse(l: &Bicomodule, m: &Bicomodule, n: &Bicomodule) -> Result<ComoduleMorphism> {
    assoc_morphism(l, m, n, true)
}

fn assoc_morphism(l: &Bicomodule, m: &Bicomodule, n: &Bicomodule, inverse: bool) -> Result<ComoduleMorphism> {
    let lm_n = tensor_comodules(&tensor_comodules(l, m)?, n)?;
    let l_mn = tensor_comodules(l, &tensor_comodules(m, n)?)?;
    let f = l.field();
    let total = lm_n.dim();
    let cols = crate::par::map_range(total, |j| assoc_apply(l, m, n, &unit_vec(f, total, j), inverse));
    let matrix = Matrix::from_columns(f, total, &cols);
    let (source, target) = if inverse { (l_mn, lm_n) } else { (lm_n, l_mn) };
    ComoduleMorphism::new(source, target, matrix)
}

/// Φ and Φ⁻¹ are mutually inverse bicomodule maps.
pub fn check_assoc(l: &Bicomodule, m: &Bicomodule, n: &Bicomodule) -> Result<Checks> {
    let phi = assoc_constraint(l, m, n)?;
    let inv = assoc_constraint_inverse(l, m, n)?;
    let mut out = Checks::new();
    out.extend_scoped("phi", phi.check());
    out.extend_scoped("phi_inverse", inv.check());
    let namer = |i: usize| phi.source.name(i);
    let id = Matrix::identity(l.field(), phi.matrix.rows());
    out.push(crate::report::matrix_check("phi_phi_inverse", &phi.matrix.dot(&inv.matrix), &id, &namer, &namer));
    out.push(crate::report::matrix_check("phi_inverse_phi", &inv.matrix.dot(&phi.matrix), &id, &namer, &namer));
    Ok(out)
}

/// Applies `g` to the first factor of a vector in A⊗B.
pub(crate) fn on_first(v: &[Scalar], da: usize, db: usize, g: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Vec<Scalar> {
    let mut out = v.to_vec();
    for b in 0..db {
        let slice: Vec<Scalar> = (0..da).map(|a| v[a * db + b].clone()).collect();
        for (a, x) in g(&slice).into_iter().enumerate() {
            out[a * db + b] = x;
        }
    }
    out
}

/// Applies `g` to the second factor of a vector in A⊗B.
pub(crate) fn on_second(v: &[Scalar], da: usize, db: usize, g: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(v.len());
    for a in 0..da {
        out.extend(g(&v[a * db..(a + 1) * db]));
    }
    out
}

/// Pentagon for Φ on K⊗L⊗M⊗N:
/// Φ_{K,L,M⊗N}Φ_{K⊗L,M,N} = (id⊗Φ_{L,M,N})Φ_{K,L⊗M,N}(Φ_{K,L,M}⊗id).
pub fn check_pentagon(k: &Bicomodule, l: &Bicomodule, m: &Bicomodule, n: &Bicomodule) -> Result<Check> {
    let kl = tensor_comodules(k, l)?;
    let lm = tensor_comodules(l, m)?;
    let mn = tensor_comodules(m, n)?;
    let f = k.field();
    let (dk, dl, dm, dn) = (k.dim(), l.dim(), m.dim(), n.dim());
    let total = dk * dl * dm * dn;
    let namer = tensor_names(vec![k.names.clone(), l.names.clone(), m.names.clone(), n.names.clone()]);
    Ok(identity_check(
        "pentagon",
        total,
        |j| {
            let v = unit_vec(f, total, j);
            let lhs = assoc_apply(k, l, &mn, &assoc_apply(&kl, m, n, &v, false), false);
            let r1 = on_first(&v, dk * dl * dm, dn, |x| assoc_apply(k, l, m, x, false));
            let r2 = assoc_apply(k, &lm, n, &r1, false);
            let rhs = on_second(&r2, dk, dl * dm * dn, |x| assoc_apply(l, m, n, x, false));
            (lhs, rhs)
        },
        &namer,
        |v| render_vec(v, &namer),
    ))
}

pub(crate) fn compose_functional(values: &[Scalar], map: &Lin) -> Vec<Scalar> {
    map.iter()
        .map(|col| {
            let mut acc = values[0].field().zero();
            for (r, s) in col {
                acc.add_mul(&values[*r], s);
            }
            acc
        })
        .collect()
}

struct DualData<'a> {
    s_left: &'a Lin,
    s_right: &'a Lin,
}

fn require_antipodes(m: &Bicomodule) -> Result<()> {
    for a in [&m.left, &m.right] {
        a.antipode()?;
        a.s_inv()?;
    }
    Ok(())
}

fn dual_module(m: &Bicomodule, data: DualData<'_>) -> Result<Bicomodule> {
    let dm = m.dim();
    let mut lambda = vec![Vec::new(); dm];
    let mut rho = vec![Vec::new(); dm];
    for j in 0..dm {
        for (c, k, a) in &m.lambda[j] {
            for (c2, s) in &data.s_left[*c] {
                lambda[*k].push((*c2, j, a * s));
            }
        }
        for (k, d, a) in &m.rho[j] {
            for (d2, s) in &data.s_right[*d] {
                rho[*k].push((j, *d2, a * s));
            }
        }
    }
    let names = m.names.iter().map(|n| format!("δ_{n}")).collect();
    Bicomodule::new(names, m.left.clone(), m.right.clone(), lambda, rho)
}

/// *M with ev(f⊗m) = f(m₀)β(S̄m₋₁)α(m₁) and
/// coev = Σ α(S̄(e_i)₋₁)β((e_i)₁)(e_i)₀⊗e^i.
pub fn left_dual(m: &Bicomodule) -> Result<Dual> {
    require_antipodes(m)?;
    let (c, d) = (&m.left, &m.right);
    let module = dual_module(m, DualData { s_left: c.s_inv_lin(), s_right: d.s_lin() })?;
    let dm = m.dim();
    let f = m.field();
    let beta_sbar = compose_functional(c.beta()?, c.s_inv_lin());
    let alpha_sbar = compose_functional(c.alpha()?, c.s_inv_lin());
    let (alpha_d, beta_d) = (d.alpha()?, d.beta()?);
    let mut ev = vec![f.zero(); dm * dm];
    let mut coev = vec![f.zero(); dm * dm];
    for i in 0..dm {
        for (cc, j, dd, x) in m.full(i) {
            ev[j * dm + i].add_mul(&x, &(&beta_sbar[cc] * &alpha_d[dd]));
            coev[j * dm + i].add_mul(&x, &(&alpha_sbar[cc] * &beta_d[dd]));
        }
    }
    Ok(Dual { module, ev, coev })
}

/// M* with ev(m⊗f) = β(m₋₁)f(m₀)α(S̄m₁) and
/// coev = Σ e^i⊗α((e_i)₋₁)(e_i)₀β(S̄(e_i)₁).
pub fn right_dual(m: &Bicomodule) -> Result<Dual> {
    require_antipodes(m)?;
    let (c, d) = (&m.left, &m.right);
    let module = dual_module(m, DualData { s_left: c.s_lin(), s_right: d.s_inv_lin() })?;
    let dm = m.dim();
    let f = m.field();
    let (alpha_c, beta_c) = (c.alpha()?, c.beta()?);
    let alpha_sbar = compose_functional(d.alpha()?, d.s_inv_lin());
    let beta_sbar = compose_functional(d.beta()?, d.s_inv_lin());
    let mut ev = vec![f.zero(); dm * dm];
    let mut coev = vec![f.zero(); dm * dm];
    for i in 0..dm {
        for (cc, j, dd, x) in m.full(i) {
            ev[i * dm + j].add_mul(&x, &(&beta_c[cc] * &alpha_sbar[dd]));
            coev[i * dm + j].add_mul(&x, &(&alpha_c[cc] * &beta_sbar[dd]));
        }
    }
    Ok(Dual { module, ev, coev })
}

/// Coaction of the dual basis computed as the categorical composite: insert
/// the coevaluation of vector spaces, coact on the middle leg, evaluate
/// against the input and apply S̄, S (left dual) or S, S̄ (right dual) to
/// the outer legs. Returns one vector over C⊗M^∨⊗D per dual basis element.
pub fn dual_coaction_composite(m: &Bicomodule, side: Side) -> Result<Vec<Vec<Scalar>>> {
    require_antipodes(m)?;
    let dm = m.dim();
    let f = m.field();
    let (c, d) = (&m.left, &m.right);
    let delta_pairs: Vec<Scalar> =
        (0..dm * dm).map(|t| if t / dm == t % dm { f.one() } else { f.zero() }).collect();
    let (s_left, s_right) = match side {
        Side::Left => (c.s_inv_lin(), d.s_lin()),
        Side::Right => (c.s_lin(), d.s_inv_lin()),
    };
    Ok(crate::par::map_range(dm, |i| {
        let mut v = vec![f.zero(); dm * dm * dm];
        for k in 0..dm {
            let idx = match side {
                Side::Left => (i * dm + k) * dm + k,
                Side::Right => (k * dm + k) * dm + i,
            };
            v[idx] = f.one();
        }
        let legs: [(&str, usize); 3] = match side {
            Side::Left => [("f", dm), ("x", dm), ("g", dm)],
            Side::Right => [("g", dm), ("x", dm), ("f", dm)],
        };
        let mut t = Sw::from_vector(f, &legs, &v);
        m.split_left(&mut t, "x", "h");
        m.split_right(&mut t, "x", "k");
        match side {
            Side::Left => t.eval(&["f", "x"], &delta_pairs),
            Side::Right => t.eval(&["x", "f"], &delta_pairs),
        }
        t.map("h", ("h", c.dim()), s_left);
        t.map("k", ("k", d.dim()), s_right);
        t.to_vector(&["h", "g", "k"])
    }))
}

/// Checks a dual: its comodule axioms, agreement of the stored coaction with
/// the composite, and colinearity of ev and coev.
pub fn check_dual(m: &Bicomodule, side: Side) -> Result<Checks> {
    let dual = match side {
        Side::Left => left_dual(m)?,
        Side::Right => right_dual(m)?,
    };
    let mut out = Checks::new();
    out.extend_scoped("dual", dual.module.check());
    let composite = dual_coaction_composite(m, side)?;
    let namer = dual.module.basis_names3();
    out.push(identity_check(
        "coaction_formula",
        m.dim(),
        |i| (dual.module.full_vector(i), composite[i].clone()),
        |i| dual.module.name(i),
        |v| render_vec(v, &namer),
    ));
    let f = m.field();
    let unit = Bicomodule::unit_object(m.left.clone(), m.right.clone());
    let (ev_src, coev_tgt) = match side {
        Side::Left => (tensor_comodules(&dual.module, m)?, tensor_comodules(m, &dual.module)?),
        Side::Right => (tensor_comodules(m, &dual.module)?, tensor_comodules(&dual.module, m)?),
    };
    let ev = Matrix::from_rows(f, vec![dual.ev.clone()])?;
    let coev = Matrix::from_columns(f, dual.coev.len(), &[dual.coev.clone()]);
    out.extend_scoped("ev", morphism_checks(&ev_src, &unit, &ev));
    out.extend_scoped("coev", morphism_checks(&unit, &coev_tgt, &coev));
    Ok(out)
}

fn contract_last_two(w: &[Scalar], m: usize, form: &[Scalar]) -> Vec<Scalar> {
    (0..m)
        .map(|a| {
            let mut acc = form[0].field().zero();
            for t in 0..m * m {
                acc.add_mul(&w[a * m * m + t], &form[t]);
            }
            acc
        })
        .collect()
}

fn contract_first_two(w: &[Scalar], m: usize, form: &[Scalar]) -> Vec<Scalar> {
    (0..m)
        .map(|g| {
            let mut acc = form[0].field().zero();
            for t in 0..m * m {
                acc.add_mul(&w[t * m + g], &form[t]);
            }
            acc
        })
        .collect()
}

/// Zig-zag identities for both duals, with Φ inserted as in the rigidity
/// axioms:
/// `left_1`: (id⊗ev)Φ_{M,*M,M}(coev⊗id) = id_M,
/// `left_2`: (ev⊗id)Φ⁻¹_{*M,M,*M}(id⊗coev) = id_{*M},
/// `right_1`: (ev⊗id)Φ⁻¹_{M,M*,M}(id⊗coev) = id_M,
/// `right_2`: (id⊗ev)Φ_{M*,M,M*}(coev⊗id) = id_{M*}.
pub fn check_triangles(m: &Bicomodule) -> Result<Checks> {
    let ld = left_dual(m)?;
    let rd = right_dual(m)?;
    check_triangles_with(m, &ld, &rd)
}

/// [`check_triangles`] for given dual data, so that altered duals can be
/// tested.
pub fn check_triangles_with(m: &Bicomodule, ld: &Dual, rd: &Dual) -> Result<Checks> {
    let dm = m.dim();
    let f = m.field();
    let mut out = Checks::new();
    if dm == 0 {
        for n in ["left_1", "left_2", "right_1", "right_2"] {
            out.push(Check::pass(n));
        }
        return Ok(out);
    }
    let (ls, rs) = (&ld.module, &rd.module);
    let outer = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
        let mut v = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                v.push(x * y);
            }
        }
        v
    };
    let m_names = |i: usize| m.name(i);
    let l_names = |i: usize| ls.name(i);
    let r_names = |i: usize| rs.name(i);
    out.push(identity_check(
        "left_1",
        dm,
        |j| {
            let e = unit_vec(f, dm, j);
            let w = assoc_apply(m, ls, m, &outer(&ld.coev, &e), false);
            (contract_last_two(&w, dm, &ld.ev), e)
        },
        m_names,
        |v| render_vec(v, &m_names),
    ));
    out.push(identity_check(
        "left_2",
        dm,
        |j| {
            let e = unit_vec(f, dm, j);
            let w = assoc_apply(ls, m, ls, &outer(&e, &ld.coev), true);
            (contract_first_two(&w, dm, &ld.ev), e)
        },
        l_names,
        |v| render_vec(v, &l_names),
    ));
    out.push(identity_check(
        "right_1",
        dm,
        |j| {
            let e = unit_vec(f, dm, j);
            let w = assoc_apply(m, rs, m, &outer(&e, &rd.coev), true);
            (contract_first_two(&w, dm, &rd.ev), e)
        },
        m_names,
        |v| render_vec(v, &m_names),
    ));
    out.push(identity_check(
        "right_2",
        dm,
        |j| {
            let e = unit_vec(f, dm, j);
            let w = assoc_apply(rs, m, rs, &outer(&rd.coev, &e), false);
            (contract_last_two(&w, dm, &rd.ev), e)
        },
        r_names,
        |v| render_vec(v, &r_names),
    ));
    Ok(out)
}

/// (-)°: the same space over (D°, C°) with coaction m₁⊗m₀⊗m₋₁.
pub fn circ_comod(m: &Bicomodule) -> Bicomodule {
    let lambda = m.rho.iter().map(|row| row.iter().map(|(j, d, x)| (*d, *j, x.clone())).collect()).collect();
    let rho = m.lambda.iter().map(|row| row.iter().map(|(c, j, x)| (*j, *c, x.clone())).collect()).collect();
    Bicomodule {
        names: m.names.clone(),
        left: Arc::new(m.right.circ()),
        right: Arc::new(m.left.circ()),
        lambda,
        rho,
    }
}

/// M^r: for a right comodule M, the left comodule on M^∨ with
/// e^i ↦ Σ f(m₀)m₁ read off the dual basis.
pub fn right_adjoint(m: &Bicomodule) -> Result<Bicomodule> {
    if !m.is_right_comodule() {
        return Err(Error::Validation("(-)^r takes a right comodule".into()));
    }
    let dm = m.dim();
    let mut lambda = vec![Vec::new(); dm];
    for k in 0..dm {
        for (j, d, x) in &m.rho[k] {
            lambda[*j].push((*d, k, x.clone()));
        }
    }
    let rho = (0..dm).map(|i| vec![(i, 0, m.field().one())]).collect();
    let names = m.names.iter().map(|n| format!("δ_{n}")).collect();
    Bicomodule::new(names, m.right.clone(), m.left.clone(), lambda, rho)
}

/// N^ℓ: for a left comodule N, the right comodule on N^∨.
pub fn left_adjoint(n: &Bicomodule) -> Result<Bicomodule> {
    if !n.is_left_comodule() {
        return Err(Error::Validation("(-)^ℓ takes a left comodule".into()));
    }
    let dn = n.dim();
    let mut rho = vec![Vec::new(); dn];
    for k in 0..dn {
        for (c, j, x) in &n.lambda[k] {
            rho[*j].push((k, *c, x.clone()));
        }
    }
    let lambda = (0..dn).map(|i| vec![(0, i, n.field().one())]).collect();
    let names = n.names.iter().map(|x| format!("δ_{x}")).collect();
    Bicomodule::new(names, n.right.clone(), n.left.clone(), lambda, rho)
}

/// Equality of two comodules on the same space with the same basis.
pub fn same_coactions(name: &str, a: &Bicomodule, b: &Bicomodule) -> Check {
    if a.dim() != b.dim() || !same_ambient(&a.left, &b.left) || !same_ambient(&a.right, &b.right) {
        return Check::fail(
            name,
            Witness {
                at: "-".into(),
                lhs: format!("dim {} over ({}, {})", a.dim(), a.left.name(), a.right.name()),
                rhs: format!("dim {} over ({}, {})", b.dim(), b.left.name(), b.right.name()),
            },
        );
    }
    let namer = a.basis_names3();
    identity_check(name, a.dim(), |i| (a.full_vector(i), b.full_vector(i)), |i| a.name(i), |v| render_vec(v, &namer))
}

/// The four-step composites through (-)^r, (-)° (resp. (-)^ℓ, (-)°) return
/// the original comodule under M ≅ M^∨∨.
pub fn check_roro(m: &Bicomodule) -> Result<Checks> {
    let mut out = Checks::new();
    if m.is_right_comodule() {
        let back = circ_comod(&right_adjoint(&circ_comod(&right_adjoint(m)?))?);
        out.push(same_coactions("right_roundtrip", m, &back));
        let rl = left_adjoint(&right_adjoint(m)?)?;
        out.push(same_coactions("r_then_l", m, &rl));
    }
    if m.is_left_comodule() {
        let back = circ_comod(&left_adjoint(&circ_comod(&left_adjoint(m)?))?);
        out.push(same_coactions("left_roundtrip", m, &back));
        let lr = right_adjoint(&left_adjoint(m)?)?;
        out.push(same_coactions("l_then_r", m, &lr));
    }
    Ok(out)
}

/// Projection of X ⊂ A⊗B onto A (`keep_first`) or onto B, applying the
/// counit to the other factor. This is the canonical isomorphism for
/// cotensor products with a corestricted regular bicomodule.
fn counit_projection(x: &Subcomodule, da: usize, db: usize, counit: &[Scalar], keep_first: bool) -> Matrix {
    let f = x.module.field();
    let rows = if keep_first { da } else { db };
    let mut p = Matrix::zeros(f, rows, da * db);
    for a in 0..da {
        for b in 0..db {
            if keep_first {
                p.set(a, a * db + b, counit[b].clone());
            } else {
                p.set(b, a * db + b, counit[a].clone());
            }
        }
    }
    p.dot(&x.inclusion)
}

/// Objectwise commutation of the squares relating (-)^r, (-)^ℓ and (-)° with
/// corestriction along a coalgebra map f: C → D, for a right comodule `m`
/// and a left comodule `n` over C.
pub fn check_relations(m: &Bicomodule, n: &Bicomodule, d: Ambient, f: &Matrix) -> Result<Checks> {
    let c = m.right.clone();
    let plus = corestrict_plus(c.clone(), d.clone(), f)?;
    let coplus = corestrict_coplus(c.clone(), d.clone(), f)?;
    let mut out = Checks::new();

    // (M□f₊)^r against f⁺□M^r.
    let (dm, dc) = (m.dim(), c.dim());
    let x = cotensor(m, &plus)?;
    let px = counit_projection(&x, dm, dc, c.counit(), true);
    let y = cotensor(&coplus, &right_adjoint(m)?)?;
    let py = counit_projection(&y, dc, dm, c.counit(), false);
    let t = py.invert()?.dot(&px.transpose().invert()?);
    out.extend_scoped("right_adjoint", morphism_checks(&right_adjoint(&x.module)?, &y.module, &t));

    // (f⁺□N)^ℓ against N^ℓ□f₊.
    let dn = n.dim();
    let x = cotensor(&coplus, n)?;
    let px = counit_projection(&x, dc, dn, c.counit(), false);
    let y = cotensor(&left_adjoint(n)?, &plus)?;
    let py = counit_projection(&y, dn, dc, c.counit(), true);
    let t = py.invert()?.dot(&px.transpose().invert()?);
    out.extend_scoped("left_adjoint", morphism_checks(&left_adjoint(&x.module)?, &y.module, &t));

    // (M□f₊)° against (f^cop)⁺□M°.
    let x = cotensor(m, &plus)?;
    let px = counit_projection(&x, dm, dc, c.counit(), true);
    let ccirc = Arc::new(c.circ());
    let dcirc = Arc::new(d.circ());
    let y = cotensor(&corestrict_coplus(ccirc, dcirc, f)?, &circ_comod(m))?;
    let py = counit_projection(&y, dc, dm, c.counit(), false);
    let t = py.invert()?.dot(&px);
    out.extend_scoped("circ", morphism_checks(&circ_comod(&x.module), &y.module, &t));
    Ok(out)
}

/// Double duals against corestriction: **M ≅ (S̄²)⁺□M□(S²)₊ and
/// M** ≅ (S²)⁺□M□(S̄²)₊, both through the identification M ≅ M^∨∨.
pub fn check_double_duals(m: &Bicomodule) -> Result<Checks> {
    let mut out = Checks::new();
    let (c, d) = (m.left.clone(), m.right.clone());
    let s2 = |a: &Ambient| -> Result<Matrix> { Ok(a.s()?.dot(a.s()?)) };
    let sbar2 = |a: &Ambient| -> Result<Matrix> { Ok(a.s_inv()?.dot(a.s_inv()?)) };
    for (name, dd, lmap, rmap) in [
        ("left_double_dual", left_dual(&left_dual(m)?.module)?.module, sbar2(&c)?, s2(&d)?),
        ("right_double_dual", right_dual(&right_dual(m)?.module)?.module, s2(&c)?, sbar2(&d)?),
    ] {
        let inner = cotensor(m, &corestrict_plus(d.clone(), d.clone(), &rmap)?)?;
        let outer = cotensor(&corestrict_coplus(c.clone(), c.clone(), &lmap)?, &inner.module)?;
        // Inclusion of the nested cotensor into C⊗M⊗D.
        let lifted = Matrix::identity(m.field(), c.dim()).tensor(&inner.inclusion).dot(&outer.inclusion);
        let p = left_inverse(&lifted)?;
        let cols: Vec<Vec<Scalar>> = (0..m.dim()).map(|i| p.apply(&m.full_vector(i))).collect();
        let t = Matrix::from_columns(m.field(), outer.module.dim(), &cols);
        let dims_ok = outer.module.dim() == m.dim();
        out.push(Check::flag(format!("{name}.dimension"), dims_ok, || Witness {
            at: "-".into(),
            lhs: outer.module.dim().to_string(),
            rhs: m.dim().to_string(),
        }));
        let renamed = dd.with_names(m.names.clone());
        out.extend_scoped(name, morphism_checks(&renamed, &outer.module, &t));
    }
    Ok(out)
}

/// Left coinvariants {m : λ(m) = 1⊗m}, as a right comodule.
pub fn coinvariants_left(m: &Bicomodule) -> Result<Subcomodule> {
    let dm = m.dim();
    let mut a = m.left_matrix();
    for (c, u) in nonzero(m.left.unit()) {
        for i in 0..dm {
            a.add_to(c * dm + i, i, &-&u);
        }
    }
    let ker = a.kernel();
    let inclusion = Matrix::from_columns(m.field(), dm, &ker);
    let module = m.sub(&inclusion)?.forget_left();
    Ok(Subcomodule { module, inclusion })
}

/// Right coinvariants {m : ρ(m) = m⊗1}, as a left comodule.
pub fn coinvariants_right(m: &Bicomodule) -> Result<Subcomodule> {
    let (dm, dd) = (m.dim(), m.right.dim());
    let mut a = m.right_matrix();
    for (d, u) in nonzero(m.right.unit()) {
        for i in 0..dm {
            a.add_to(i * dd + d, i, &-&u);
        }
    }
    let ker = a.kernel();
    let inclusion = Matrix::from_columns(m.field(), dm, &ker);
    let module = m.sub(&inclusion)?.forget_right();
    Ok(Subcomodule { module, inclusion })
}

/// All γ ∈ C^∨ with (γ⊗g)Δ = (h⊗γ)Δ for coalgebra maps g, h: C → D.
pub fn solve_nacho(c: &Coalgebra, g: &Matrix, h: &Matrix) -> Result<SolutionSpace> {
    let (n, k) = (c.dim(), g.rows());
    if g.cols() != n || h.cols() != n || h.rows() != k {
        return Err(Error::Shape("g and h must both be maps C → D".into()));
    }
    let f = c.field();
    let mut a = Matrix::zeros(f, n * k, n);
    for x in 0..n {
        for (p, q, coef) in &c.delta()[x] {
            for e in 0..k {
                let gv = g.get(e, *q);
                if !gv.is_zero() {
                    a.add_to(x * k + e, *p, &(coef * gv));
                }
                let hv = h.get(e, *p);
                if !hv.is_zero() {
                    a.add_to(x * k + e, *q, &-&(coef * hv));
                }
            }
        }
    }
    a.solve(&vec![f.zero(); n * k])
}

/// θ = (id⊗γ)Δ: g₊ → h₊ for a solution γ of [`solve_nacho`].
#[derive(Clone, Debug)]
pub struct NachoMorphism {
    pub theta: ComoduleMorphism,
    pub gamma_invertible: bool,
    pub checks: Checks,
}

pub fn gamma_to_theta(c: Ambient, d: Ambient, g: &Matrix, h: &Matrix, gamma: &[Scalar]) -> Result<NachoMorphism> {
    let n = c.dim();
    let f = c.field();
    let mut theta = Matrix::zeros(f, n, n);
    for x in 0..n {
        for (p, q, coef) in &c.delta()[x] {
            theta.add_to(*p, x, &(coef * &gamma[*q]));
        }
    }
    let src = corestrict_plus(c.clone(), d.clone(), g)?;
    let tgt = corestrict_plus(c.clone(), d, h)?;
    let mut checks = morphism_checks(&src, &tgt, &theta);
    let gf = Functional::new(f, n, 1, gamma.to_vec())?;
    let gamma_invertible = conv_inverse(c.coalgebra(), &gf).is_ok();
    let theta_invertible = theta.rank() == n;
    checks.push(Check::flag("invertibility_agrees", gamma_invertible == theta_invertible, || Witness {
        at: "-".into(),
        lhs: format!("gamma invertible: {gamma_invertible}"),
        rhs: format!("theta invertible: {theta_invertible}"),
    }));
    let recovered: Vec<Scalar> = (0..n)
        .map(|x| {
            let mut acc = f.zero();
            for r in 0..n {
                acc.add_mul(&c.counit()[r], theta.get(r, x));
            }
            acc
        })
        .collect();
    checks.push(Check::flag("counit_recovers_gamma", recovered == gamma, || Witness {
        at: "-".into(),
        lhs: render_vec(&recovered, &|i| format!("δ_{}", c.names()[i])),
        rhs: render_vec(gamma, &|i| format!("δ_{}", c.names()[i])),
    }));
    Ok(NachoMorphism { theta: ComoduleMorphism::new(src, tgt, theta)?, gamma_invertible, checks })
}

/// Seeded generator of small test comodules over a fixed algebra: group-like
/// comodules, subcomodules of the regular comodule generated by random
/// elements, direct sums, and random changes of basis.
pub struct Sampler {
    h: Ambient,
    grouplikes: Vec<Vec<Scalar>>,
    one_sided: bool,
    max_dim: usize,
}

impl Sampler {
    /// `one_sided` selects right comodules instead of bicomodules over (H, H).
    pub fn new(h: Ambient, one_sided: bool, max_dim: usize) -> Result<Sampler> {
        let grouplikes = h.coalgebra().grouplikes()?;
        Ok(Sampler { h, grouplikes, one_sided, max_dim: max_dim.max(1) })
    }

    pub fn regular(&self) -> Bicomodule {
        if self.one_sided {
            Bicomodule::regular_right(self.h.clone())
        } else {
            Bicomodule::regular(self.h.clone())
        }
    }

    fn grouplike(&self, rng: &mut StdRng) -> Bicomodule {
        let b = &self.grouplikes[rng.gen_range(0..self.grouplikes.len())];
        let (left, a) = if self.one_sided {
            let k = trivial_ambient(self.h.field());
            (k, vec![self.h.field().one()])
        } else {
            (self.h.clone(), self.grouplikes[rng.gen_range(0..self.grouplikes.len())].clone())
        };
        Bicomodule::grouplike(left, self.h.clone(), &a, b).expect("group-likes are verified")
    }

    fn generated(&self, rng: &mut StdRng, max_dim: usize) -> Option<Bicomodule> {
        let f = self.h.field();
        let reg = self.regular();
        for _ in 0..20 {
            let mut v = vec![f.zero(); self.h.dim()];
            for _ in 0..rng.gen_range(1..=2) {
                let i = rng.gen_range(0..self.h.dim());
                v[i] = f.int(rng.gen_range(1..=3));
            }
            if let Ok(sub) = reg.generated(&v) {
                if sub.module.dim() >= 1 && sub.module.dim() <= max_dim {
                    return Some(sub.module);
                }
            }
        }
        None
    }

    fn piece(&self, rng: &mut StdRng, max_dim: usize) -> Bicomodule {
        if rng.gen_bool(0.5) {
            if let Some(m) = self.generated(rng, max_dim) {
                return m;
            }
        }
        self.grouplike(rng)
    }

    pub fn sample(&self, rng: &mut StdRng) -> Bicomodule {
        let mut m = self.piece(rng, self.max_dim);
        while m.dim() < self.max_dim && rng.gen_bool(0.4) {
            let extra = self.piece(rng, self.max_dim - m.dim());
            m = m.direct_sum(&extra).expect("same ambients");
        }
        if rng.gen_bool(0.5) {
            let f = self.h.field();
            let n = m.dim();
            for _ in 0..10 {
                let cols: Vec<Vec<Scalar>> =
                    (0..n).map(|_| (0..n).map(|_| f.int(rng.gen_range(-2..=2))).collect()).collect();
                let p = Matrix::from_columns(f, n, &cols);
                if let Ok(moved) = m.change_basis(&p) {
                    let names = (0..n).map(|i| format!("v{i}")).collect();
                    return moved.with_names(names);
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use rand::SeedableRng;

    fn amb(h: CoquasiBialgebra) -> Ambient {
        Arc::new(h)
    }

    #[test]
    fn regular_and_grouplike_comodules_pass() {
        for h in zoo::standard().unwrap() {
            let h = amb(h);
            assert!(Bicomodule::regular(h.clone()).check().all_pass(), "{}", h.name());
            assert!(Bicomodule::regular_right(h.clone()).check().all_pass());
            let u = h.unit().to_vec();
            assert!(Bicomodule::grouplike(h.clone(), h.clone(), &u, &u).unwrap().check().all_pass());
        }
    }

    #[test]
    fn broken_coaction_is_reported() {
        let h = amb(zoo::sweedler_h4(Field::Rational).unwrap());
        let f = h.field();
        let mut rho = h.delta().clone();
        rho[2] = vec![(2, 2, f.one())];
        let m = Bicomodule::new(h.names().to_vec(), trivial_ambient(f), h.clone(), {
            (0..4).map(|i| vec![(0, i, f.one())]).collect()
        }, rho)
        .unwrap();
        let c = m.check();
        assert!(!c.get("right_coassociativity").unwrap().pass || !c.get("right_counit").unwrap().pass);
    }

    #[test]
    fn cotensor_with_regular_is_identity() {
        let h = amb(zoo::sweedler_h4(Field::Rational).unwrap());
        let reg = Bicomodule::regular(h.clone());
        let cc = cotensor(&reg, &reg).unwrap();
        assert_eq!(cc.module.dim(), 4);
        assert!(cc.module.check().all_pass());
        // C□_C C ≅ C via Δ.
        let p = left_inverse(&cc.inclusion).unwrap();
        let cols: Vec<Vec<Scalar>> =
            (0..4).map(|i| p.apply(&h.delta_matrix().column(i))).collect();
        let t = Matrix::from_columns(h.field(), 4, &cols);
        assert!(morphism_checks(&reg, &cc.module, &t).all_pass());
    }

    #[test]
    fn cotensor_with_corestriction_is_corestriction() {
        let h = amb(zoo::sweedler_h4(Field::Rational).unwrap());
        let s2 = h.s().unwrap().dot(h.s().unwrap());
        let m = Bicomodule::regular_right(h.clone());
        let plus = corestrict_plus(h.clone(), h.clone(), &s2).unwrap();
        let cot = cotensor(&m, &plus).unwrap();
        assert_eq!(cot.module.dim(), 4);
        let direct = m.corestrict_right(h.clone(), &s2).unwrap();
        let p = left_inverse(&cot.inclusion).unwrap();
        let cols: Vec<Vec<Scalar>> = (0..4)
            .map(|i| {
                let mut v = vec![h.field().zero(); 16];
                for (j, d, x) in &m.rho()[i] {
                    v[j * 4 + d] = x.clone();
                }
                p.apply(&v)
            })
            .collect();
        let t = Matrix::from_columns(h.field(), 4, &cols);
        assert!(morphism_checks(&direct, &cot.module, &t).all_pass());
        // (S²)₊ on H4: x ↦ x₁⊗S²(x₂); S² flips the sign of x and gx.
        let f = h.field();
        let x = 2;
        assert_eq!(plus.rho()[x], normalize_split(vec![(1, 2, f.int(-1)), (2, 0, f.one())]));
    }

    #[test]
    fn trivial_cotensor_is_tensor() {
        let h = amb(zoo::cyclic_group(3, Field::prime(7).unwrap()).unwrap());
        let right = Bicomodule::regular_right(h.clone());
        let left = Bicomodule::regular(h.clone()).forget_right();
        let k = trivial_ambient(h.field());
        let _ = k;
        let cot = cotensor(&left, &right).unwrap();
        assert_eq!(cot.module.dim(), 9);
    }

    #[test]
    fn associator_fast_path_and_cocycle_entries() {
        let h4 = amb(zoo::sweedler_h4(Field::Rational).unwrap());
        let r = Bicomodule::regular(h4.clone());
        let phi = assoc_constraint(&r, &r, &r).unwrap();
        assert!(phi.matrix.is_identity());

        let z = amb(zoo::cyclic_cocycle(2, Field::Rational.int(-1)).unwrap());
        let reg = Bicomodule::regular(z.clone());
        assert!(assoc_constraint(&reg, &reg, &reg).unwrap().matrix.is_identity());
        let right = Bicomodule::regular_right(z.clone());
        let phi = assoc_constraint(&right, &right, &right).unwrap();
        // Only (g⊗g)⊗g picks up φ⁻¹(g,g,g) = -1.
        let mut expected = Matrix::identity(z.field(), 8);
        expected.set(7, 7, z.field().int(-1));
        assert_eq!(phi.matrix, expected);
        assert!(check_assoc(&right, &right, &right).unwrap().all_pass());
        let unit = Bicomodule::unit_object(right.left().clone(), z.clone());
        assert!(assoc_constraint(&right, &unit, &right).unwrap().matrix.is_identity());
        assert!(check_pentagon(&right, &right, &right, &right).unwrap().pass);
    }

    #[test]
    fn pentagon_for_cubic_cocycle() {
        let z = amb(zoo::cyclic_cocycle(3, Field::prime(7).unwrap().int(2)).unwrap());
        let right = Bicomodule::regular_right(z.clone());
        assert!(check_pentagon(&right, &right, &right, &right).unwrap().pass);
        assert!(check_assoc(&right, &right, &right).unwrap().all_pass());
    }

    #[test]
    fn duals_and_triangles_on_zoo() {
        for h in zoo::standard().unwrap() {
            let h = amb(h);
            for m in [Bicomodule::regular(h.clone()), Bicomodule::regular_right(h.clone())] {
                for side in [Side::Left, Side::Right] {
                    let c = check_dual(&m, side).unwrap();
                    assert!(c.all_pass(), "{} {:?}: {:?}", h.name(), side, c.failures().next());
                }
                let t = check_triangles(&m).unwrap();
                assert!(t.all_pass(), "{}: {:?}", h.name(), t.failures().next());
            }
        }
    }

    #[test]
    fn dual_of_unit_is_unit() {
        let h = amb(zoo::sweedler_h4(Field::Rational).unwrap());
        let u = Bicomodule::unit_object(h.clone(), h.clone());
        let d = left_dual(&u).unwrap();
        assert!(same_coactions("unit", &u.clone().with_names(vec!["δ_1".into()]), &d.module).pass);
        assert_eq!(d.ev, vec![h.field().one()]);
        assert!(check_triangles(&u).unwrap().all_pass());
    }

    #[test]
    fn triangles_fail_with_trivial_beta() {
        let good = amb(zoo::cyclic_cocycle(2, Field::Rational.int(-1)).unwrap());
        let bad = amb(zoo::z2_cocycle_trivial_beta().unwrap());
        assert!(check_triangles(&Bicomodule::regular_right(good)).unwrap().all_pass());
        let t = check_triangles(&Bicomodule::regular_right(bad)).unwrap();
        assert!(!t.all_pass());
    }

    #[test]
    fn adjoints_and_circ_roundtrip() {
        for h in zoo::standard().unwrap() {
            let h = amb(h);
            let m = Bicomodule::regular_right(h.clone());
            assert!(check_roro(&m).unwrap().all_pass());
            let n = Bicomodule::regular(h.clone()).forget_right();
            assert!(check_roro(&n).unwrap().all_pass());
            let r = Bicomodule::regular(h.clone());
            let back = circ_comod(&circ_comod(&r));
            assert!(same_coactions("circ2", &r, &back).pass);
            assert!(right_adjoint(&m).unwrap().check().all_pass());
        }
    }

    #[test]
    fn right_adjoint_of_z2_regular() {
        let h = amb(zoo::cyclic_group(2, Field::Rational).unwrap());
        let r = right_adjoint(&Bicomodule::regular_right(h.clone())).unwrap();
        // δ_g ↦ g⊗δ_g: the grading is read through the dual basis.
        let f = h.field();
        assert_eq!(r.lambda()[1], vec![(1, 1, f.one())]);
        assert_eq!(r.lambda()[0], vec![(0, 0, f.one())]);
    }

    #[test]
    fn relations_and_double_duals() {
        for h in zoo::standard().unwrap() {
            let h = amb(h);
            let m = Bicomodule::regular_right(h.clone());
            let n = Bicomodule::regular(h.clone()).forget_right();
            let s2 = h.s().unwrap().dot(h.s().unwrap());
            let c = check_relations(&m, &n, h.clone(), &s2).unwrap();
            assert!(c.all_pass(), "{}: {:?}", h.name(), c.failures().next());
            let dd = check_double_duals(&m).unwrap();
            assert!(dd.all_pass(), "{}: {:?}", h.name(), dd.failures().next());
            let dd = check_double_duals(&Bicomodule::regular(h.clone())).unwrap();
            assert!(dd.all_pass(), "{}: {:?}", h.name(), dd.failures().next());
        }
    }

    #[test]
    fn coinvariants() {
        let h = amb(zoo::sweedler_h4(Field::Rational).unwrap());
        let co = coinvariants_left(&Bicomodule::regular(h.clone())).unwrap();
        assert_eq!(co.module.dim(), 1);
        assert_eq!(co.inclusion.column(0), h.basis_vec(0));
        let m = Bicomodule::regular_right(h.clone()).trivial_left(h.clone()).unwrap();
        assert_eq!(coinvariants_left(&m).unwrap().module.dim(), 4);
    }

    #[test]
    fn nacho_solutions() {
        let h = amb(zoo::sweedler_h4(Field::Rational).unwrap());
        let id = Matrix::identity(h.field(), 4);
        let sol = solve_nacho(h.coalgebra(), &id, &id).unwrap();
        assert!(in_kernel(&sol, h.counit()));
        let eps = h.counit().to_vec();
        let t = gamma_to_theta(h.clone(), h.clone(), &id, &id, &eps).unwrap();
        assert!(t.checks.all_pass());
        assert!(t.gamma_invertible);
        assert!(t.theta.matrix.is_identity());

        // Group algebra: γ is supported where g and h agree.
        let g = amb(zoo::cyclic_group(3, Field::prime(7).unwrap()).unwrap());
        let f = g.field();
        let inv = Matrix::from_columns(f, 3, &[g.basis_vec(0), g.basis_vec(2), g.basis_vec(1)]);
        let id3 = Matrix::identity(f, 3);
        let sol = solve_nacho(g.coalgebra(), &id3, &inv).unwrap();
        assert_eq!(sol.kernel, vec![g.basis_vec(0)]);
    }

    fn in_kernel(sol: &SolutionSpace, v: &[Scalar]) -> bool {
        crate::cqbialg::in_span(v[0].field(), v, &sol.kernel)
    }

    #[test]
    fn sampler_produces_valid_comodules() {
        let mut rng = StdRng::seed_from_u64(7);
        for h in zoo::standard().unwrap() {
            let h = amb(h);
            for one_sided in [false, true] {
                let s = Sampler::new(h.clone(), one_sided, 4).unwrap();
                for _ in 0..5 {
                    let m = s.sample(&mut rng);
                    assert!(m.dim() <= 4 && m.dim() >= 1);
                    assert!(m.check().all_pass(), "{}", h.name());
                    assert!(check_triangles(&m).unwrap().all_pass());
                }
            }
        }
    }
}
