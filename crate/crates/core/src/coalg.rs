//! Coalgebras by structure constants, convolution of functionals, group-likes.

use crate::engine::{flatten, unflatten, Split, Sw};
use crate::error::{Error, Result};
use crate::linalg::{intersect, Field, Matrix, Scalar};
use crate::report::{identity_check, render_vec, tensor_names, Check, Checks};

#[derive(Clone, Debug, PartialEq)]
pub struct Coalgebra {
    field: Field,
    names: Vec<String>,
    /// `delta[i]` lists `(j, k, c)` with Δ(e_i) = Σ c·e_j⊗e_k.
    delta: Split,
    counit: Vec<Scalar>,
}

impl Coalgebra {
    /// Validates shapes and index ranges; the coalgebra laws are checked by
    /// [`Coalgebra::check`].
    pub fn new(field: Field, names: Vec<String>, delta: Split, counit: Vec<Scalar>) -> Result<Coalgebra> {
        let n = names.len();
        if delta.len() != n || counit.len() != n {
            return Err(Error::Shape(format!(
                "coalgebra with {n} basis names, {} delta rows, {} counit entries",
                delta.len(),
                counit.len()
            )));
        }
        for (i, row) in delta.iter().enumerate() {
            for (j, k, c) in row {
                if *j >= n || *k >= n {
                    return Err(Error::Validation(format!("delta entry [{i}, {j}, {k}] out of range")));
                }
                if c.field() != field {
                    return Err(Error::FieldMismatch(field, c.field()));
                }
            }
        }
        if let Some(c) = counit.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field, c.field()));
        }
        let delta = delta.into_iter().map(normalize_split).collect();
        Ok(Coalgebra { field, names, delta, counit })
    }

    /// The one-dimensional coalgebra 𝕜.
    pub fn trivial(field: Field) -> Coalgebra {
        Coalgebra { field, names: vec!["1".into()], delta: vec![vec![(0, 0, field.one())]], counit: vec![field.one()] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn delta(&self) -> &Split {
        &self.delta
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn name(&self, i: usize) -> String {
        self.names[i].clone()
    }

    /// Namer for basis tensors of C^⊗k.
    pub fn tensor_namer(&self, k: usize) -> impl Fn(usize) -> String + Sync + Send {
        tensor_names(vec![self.names.clone(); k])
    }

    pub fn render(&self, v: &[Scalar]) -> String {
        render_vec(v, &|i| self.names[i].clone())
    }

    /// Coassociativity and both counit laws.
    pub fn check(&self) -> Checks {
        let n = self.dim();
        let f = self.field;
        let mut out = Checks::new();
        let names3 = self.tensor_namer(3);
        out.push(identity_check(
            "coassociativity",
            n,
            |i| {
                let mut l = Sw::basis(f, &[("c", n, i)]);
                l.split("c", ("a", n), ("b", n), &self.delta);
                let mut r = l.clone();
                l.split("a", ("a1", n), ("a2", n), &self.delta);
                r.split("b", ("b1", n), ("b2", n), &self.delta);
                (l.to_vector(&["a1", "a2", "b"]), r.to_vector(&["a", "b1", "b2"]))
            },
            |i| self.name(i),
            |v| render_vec(v, &names3),
        ));
        for (name, side) in [("counit_left", 0usize), ("counit_right", 1)] {
            out.push(identity_check(
                name,
                n,
                |i| {
                    let mut t = Sw::basis(f, &[("c", n, i)]);
                    t.split("c", ("a", n), ("b", n), &self.delta);
                    t.eval(&[if side == 0 { "a" } else { "b" }], &self.counit);
                    let keep = if side == 0 { "b" } else { "a" };
                    let mut e = vec![f.zero(); n];
                    e[i] = f.one();
                    (t.to_vector(&[keep]), e)
                },
                |i| self.name(i),
                |v| self.render(v),
            ));
        }
        out
    }

    /// Δⁿ(v) as a vector over C^⊗(n+1); Δ⁰ is the identity.
    pub fn delta_power(&self, n: usize, v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut t = Sw::from_vector(self.field, &[("c0", d)], v);
        for k in 0..n {
            let last = format!("c{k}");
            let a = format!("t{k}");
            let b = format!("c{}", k + 1);
            t.split(&last, (&a, d), (&b, d), &self.delta);
        }
        let mut order: Vec<String> = (0..n).map(|k| format!("t{k}")).collect();
        order.push(format!("c{n}"));
        let order: Vec<&str> = order.iter().map(String::as_str).collect();
        t.to_vector(&order)
    }

    /// C^cop: Δ followed by the flip.
    pub fn cop(&self) -> Coalgebra {
        let delta = self.delta.iter().map(|row| row.iter().map(|(j, k, c)| (*k, *j, c.clone())).collect()).collect();
        Coalgebra { field: self.field, names: self.names.clone(), delta, counit: self.counit.clone() }
    }

    /// C⊗D with componentwise comultiplication; basis index i·dim D + j.
    pub fn tensor(&self, other: &Coalgebra) -> Coalgebra {
        let (n, m) = (self.dim(), other.dim());
        let mut names = Vec::with_capacity(n * m);
        let mut delta = Vec::with_capacity(n * m);
        let mut counit = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                names.push(format!("{}⊗{}", self.names[i], other.names[j]));
                counit.push(&self.counit[i] * &other.counit[j]);
                let mut row = Vec::new();
                for (a1, a2, c) in &self.delta[i] {
                    for (b1, b2, d) in &other.delta[j] {
                        row.push((a1 * m + b1, a2 * m + b2, c * d));
                    }
                }
                delta.push(normalize_split(row));
            }
        }
        Coalgebra { field: self.field, names, delta, counit }
    }

    /// Comultiplication table of C^⊗k (componentwise, middle legs swapped).
    pub fn tensor_power_delta(&self, k: usize) -> Split {
        let n = self.dim();
        let dims = vec![n; k];
        let total = n.pow(k as u32);
        crate::par::map_range(total, |flat| {
            let idx = unflatten(flat, &dims);
            let mut acc: Vec<(usize, usize, Scalar)> = vec![(0, 0, self.field.one())];
            for &i in &idx {
                let mut next = Vec::with_capacity(acc.len() * self.delta[i as usize].len());
                for (a, b, c) in &acc {
                    for (x, y, d) in &self.delta[i as usize] {
                        next.push((a * n + x, b * n + y, c * d));
                    }
                }
                acc = next;
            }
            normalize_split(acc)
        })
    }

    pub fn is_grouplike(&self, v: &[Scalar]) -> bool {
        let n = self.dim();
        let mut eps = self.field.zero();
        for (c, e) in v.iter().zip(&self.counit) {
            eps.add_mul(c, e);
        }
        if !eps.is_one() {
            return false;
        }
        let dv = self.delta_power(1, v);
        (0..n * n).all(|t| dv[t] == &v[t / n] * &v[t % n])
    }

    /// All group-like elements, in canonical order.
    ///
    /// A group-like c is a common eigenvector of the maps T_i(x) = Σ δ_i(x₁)x₂
    /// with eigenvalue c_i. The search intersects eigenspaces of T_0, T_1, …
    /// branch by branch; each surviving branch pins c to its eigenvalue tuple,
    /// which is then verified exactly.
    pub fn grouplikes(&self) -> Result<Vec<Vec<Scalar>>> {
        let n = self.dim();
        let f = self.field;
        let ops: Vec<Matrix> = (0..n)
            .map(|i| {
                let mut m = Matrix::zeros(f, n, n);
                for l in 0..n {
                    for (a, b, c) in &self.delta[l] {
                        if *a == i {
                            m.add_to(*b, l, c);
                        }
                    }
                }
                m
            })
            .collect();
        let mut eigen: Vec<Vec<(Scalar, Vec<Vec<Scalar>>)>> = Vec::with_capacity(n);
        for op in &ops {
            let mut spaces = Vec::new();
            for l in op.eigenvalues()? {
                let mut shifted = op.clone();
                for k in 0..n {
                    let v = op.get(k, k) - &l;
                    shifted.set(k, k, v);
                }
                spaces.push((l, shifted.kernel()));
            }
            eigen.push(spaces);
        }
        let whole: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut v = vec![f.zero(); n];
                v[i] = f.one();
                v
            })
            .collect();
        let mut found = Vec::new();
        let mut stack: Vec<(usize, Vec<Vec<Scalar>>, Vec<Scalar>)> = vec![(0, whole, Vec::new())];
        while let Some((i, space, lambdas)) = stack.pop() {
            if i == n {
                if self.is_grouplike(&lambdas) {
                    found.push(lambdas);
                }
                continue;
            }
            for (l, e) in &eigen[i] {
                let w = intersect(f, n, &space, e);
                if !w.is_empty() {
                    let mut next = lambdas.clone();
                    next.push(l.clone());
                    stack.push((i + 1, w, next));
                }
            }
        }
        found.sort_by_key(|v| v.iter().map(|x| x.to_canonical()).collect::<Vec<_>>());
        found.dedup();
        Ok(found)
    }
}

/// Merges repeated index pairs and drops zero coefficients, in sorted order.
pub fn normalize_split(row: Vec<(usize, usize, Scalar)>) -> Vec<(usize, usize, Scalar)> {
    let mut row = row;
    row.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let mut out: Vec<(usize, usize, Scalar)> = Vec::with_capacity(row.len());
    for (j, k, c) in row {
        match out.last_mut() {
            Some(last) if last.0 == j && last.1 == k => last.2.add_assign(&c),
            _ => out.push((j, k, c)),
        }
    }
    out.retain(|t| !t.2.is_zero());
    out
}

/// Element of (C^⊗k)^∨, stored densely over basis tuples (row-major).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    field: Field,
    dim: usize,
    arity: usize,
    values: Vec<Scalar>,
}

impl Functional {
    pub fn new(field: Field, dim: usize, arity: usize, values: Vec<Scalar>) -> Result<Functional> {
        if values.len() != dim.pow(arity as u32) {
            return Err(Error::Shape(format!(
                "functional of arity {arity} on dim {dim} needs {} values, got {}",
                dim.pow(arity as u32),
                values.len()
            )));
        }
        Ok(Functional { field, dim, arity, values })
    }

    pub fn from_fn(field: Field, dim: usize, arity: usize, f: impl Fn(&[usize]) -> Scalar) -> Functional {
        let dims = vec![dim; arity];
        let values = (0..dim.pow(arity as u32))
            .map(|t| {
                let idx: Vec<usize> = unflatten(t, &dims).iter().map(|&x| x as usize).collect();
                f(&idx)
            })
            .collect();
        Functional { field, dim, arity, values }
    }

    /// ε^⊗k, the unit for convolution on C^⊗k.
    pub fn counit(c: &Coalgebra, arity: usize) -> Functional {
        Functional::from_fn(c.field(), c.dim(), arity, |idx| {
            idx.iter().fold(c.field().one(), |acc, &i| &acc * &c.counit()[i])
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn at(&self, idx: &[usize]) -> &Scalar {
        debug_assert_eq!(idx.len(), self.arity);
        &self.values[flatten(idx, &vec![self.dim; self.arity])]
    }

    /// Value on an arbitrary element of C^⊗k given by coordinates.
    pub fn apply(&self, v: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (x, y) in self.values.iter().zip(v) {
            acc.add_mul(x, y);
        }
        acc
    }

    /// Tensor product f⊗g of functionals, of arity k+l.
    pub fn outer(&self, other: &Functional) -> Functional {
        assert_eq!(self.dim, other.dim);
        let mut values = Vec::with_capacity(self.values.len() * other.values.len());
        for a in &self.values {
            for b in &other.values {
                values.push(a * b);
            }
        }
        Functional { field: self.field, dim: self.dim, arity: self.arity + other.arity, values }
    }

    /// Precomposition with a linear map on each leg: `maps[i]` is a
    /// `dim × d'` matrix acting on leg i, and the result lives on dim d'.
    pub fn precompose(&self, maps: &[&Matrix]) -> Functional {
        assert_eq!(maps.len(), self.arity);
        let new_dim = maps.first().map_or(self.dim, |m| m.cols());
        let mut dims = vec![self.dim; self.arity];
        let mut v = self.values.clone();
        for (leg, m) in maps.iter().enumerate() {
            assert_eq!((m.rows(), m.cols()), (self.dim, new_dim));
            let mut nd = dims.clone();
            nd[leg] = new_dim;
            let total: usize = nd.iter().product();
            let next = crate::par::map_range(total, |t| {
                let mut idx: Vec<usize> = unflatten(t, &nd).iter().map(|&x| x as usize).collect();
                let x = idx[leg];
                let mut acc = self.field.zero();
                for y in 0..self.dim {
                    let c = m.get(y, x);
                    if c.is_zero() {
                        continue;
                    }
                    idx[leg] = y;
                    acc.add_mul(&v[flatten(&idx, &dims)], c);
                }
                acc
            });
            v = next;
            dims = nd;
        }
        Functional { field: self.field, dim: new_dim, arity: self.arity, values: v }
    }

    /// Reorders legs: the result at (i_0..i_{k-1}) is f at the tuple whose
    /// leg `perm[j]` carries i_j.
    pub fn permute(&self, perm: &[usize]) -> Functional {
        assert_eq!(perm.len(), self.arity);
        Functional::from_fn(self.field, self.dim, self.arity, |idx| {
            let mut src = vec![0; self.arity];
            for (j, &p) in perm.iter().enumerate() {
                src[p] = idx[j];
            }
            self.at(&src).clone()
        })
    }

    pub fn is_counit(&self, c: &Coalgebra) -> bool {
        *self == Functional::counit(c, self.arity)
    }
}

/// Convolution f⋆g on C^⊗k.
pub fn convolve(c: &Coalgebra, f: &Functional, g: &Functional) -> Result<Functional> {
    if f.arity != g.arity || f.dim != c.dim() || g.dim != c.dim() {
        return Err(Error::Shape(format!(
            "convolution of arities {} and {} over dims {}, {} (coalgebra dim {})",
            f.arity,
            g.arity,
            f.dim,
            g.dim,
            c.dim()
        )));
    }
    let table = c.tensor_power_delta(f.arity);
    Ok(convolve_with(&table, f, g))
}

fn convolve_with(table: &Split, f: &Functional, g: &Functional) -> Functional {
    let values = crate::par::map_range(table.len(), |t| {
        let mut acc = f.field.zero();
        for (a, b, coef) in &table[t] {
            let fa = &f.values[*a];
            if fa.is_zero() {
                continue;
            }
            let gb = &g.values[*b];
            if gb.is_zero() {
                continue;
            }
            acc.add_mul(&(fa * gb), coef);
        }
        acc
    });
    Functional { field: f.field, dim: f.dim, arity: f.arity, values }
}

/// Two-sided convolution inverse, found by solving f⋆g = ε and verified on
/// both sides.
pub fn conv_inverse(c: &Coalgebra, f: &Functional) -> Result<Functional> {
    let unit = Functional::counit(c, f.arity);
    if *f == unit {
        return Ok(unit);
    }
    let table = c.tensor_power_delta(f.arity);
    let n = table.len();
    let mut a = Matrix::zeros(c.field(), n, n);
    for (t, row) in table.iter().enumerate() {
        for (x, y, coef) in row {
            let fx = &f.values[*x];
            if !fx.is_zero() {
                a.add_to(t, *y, &(fx * coef));
            }
        }
    }
    let sol = a.solve(&unit.values)?;
    let g_vals = sol.particular.ok_or(Error::NotConvolutionInvertible)?;
    let g = Functional { field: f.field, dim: f.dim, arity: f.arity, values: g_vals };
    if convolve_with(&table, f, &g) != unit || convolve_with(&table, &g, f) != unit {
        return Err(Error::NotConvolutionInvertible);
    }
    Ok(g)
}

/// Convolution identity check with a witness, for use in reports.
pub fn functional_check(name: &str, c: &Coalgebra, lhs: &Functional, rhs: &Functional) -> Check {
    let namer = c.tensor_namer(lhs.arity);
    crate::report::scalar_check(
        name,
        lhs.values.len(),
        |t| (lhs.values[t].clone(), rhs.values[t].clone()),
        namer,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn group_z2() -> Coalgebra {
        let f = q();
        Coalgebra::new(
            f,
            vec!["1".into(), "g".into()],
            vec![vec![(0, 0, f.one())], vec![(1, 1, f.one())]],
            vec![f.one(), f.one()],
        )
        .unwrap()
    }

    fn h4_coalgebra() -> Coalgebra {
        // basis 1, g, x, gx; Δx = x⊗1 + g⊗x, Δ(gx) = gx⊗g + 1⊗gx
        let f = q();
        Coalgebra::new(
            f,
            vec!["1".into(), "g".into(), "x".into(), "gx".into()],
            vec![
                vec![(0, 0, f.one())],
                vec![(1, 1, f.one())],
                vec![(2, 0, f.one()), (1, 2, f.one())],
                vec![(3, 1, f.one()), (0, 3, f.one())],
            ],
            vec![f.one(), f.one(), f.zero(), f.zero()],
        )
        .unwrap()
    }

    #[test]
    fn laws_hold_and_broken_counit_fails() {
        assert!(group_z2().check().all_pass());
        let h = h4_coalgebra();
        assert!(h.check().all_pass());
        let mut bad = h.clone();
        bad.counit[2] = q().one();
        let r = bad.check();
        assert!(r.get("coassociativity").unwrap().pass);
        assert!(!r.get("counit_left").unwrap().pass);
        assert_eq!(r.get("counit_left").unwrap().witness.as_ref().unwrap().at, "x");
    }

    #[test]
    fn delta_squared_of_x() {
        let h = h4_coalgebra();
        let f = q();
        let mut x = vec![f.zero(); 4];
        x[2] = f.one();
        let d2 = h.delta_power(2, &x);
        let names = h.tensor_namer(3);
        assert_eq!(render_vec(&d2, &names), "g⊗g⊗x + g⊗x⊗1 + x⊗1⊗1");
        assert_eq!(h.delta_power(0, &x), x);
    }

    #[test]
    fn grouplikes_of_examples() {
        let f = q();
        let z2 = group_z2();
        assert_eq!(z2.grouplikes().unwrap().len(), 2);
        let h = h4_coalgebra();
        let g = h.grouplikes().unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.iter().all(|v| v[2].is_zero() && v[3].is_zero()));
        // dual group algebra: δ_1, δ_g orthogonal idempotents in the dual.
        let dual = Coalgebra::new(
            f,
            vec!["d1".into(), "dg".into()],
            vec![vec![(0, 0, f.one()), (1, 1, f.one())], vec![(0, 1, f.one()), (1, 0, f.one())]],
            vec![f.one(), f.zero()],
        )
        .unwrap();
        assert!(dual.check().all_pass());
        let gl = dual.grouplikes().unwrap();
        let expect: Vec<Vec<Scalar>> = vec![vec![f.one(), f.int(-1)], vec![f.one(), f.one()]];
        assert_eq!(gl, expect);
        let tz = z2.tensor(&z2);
        assert_eq!(tz.grouplikes().unwrap().len(), 4);
    }

    #[test]
    fn convolution_basics() {
        let c = group_z2();
        let f = q();
        let eps = Functional::counit(&c, 1);
        let dg = Functional::new(f, 2, 1, vec![f.zero(), f.one()]).unwrap();
        assert_eq!(convolve(&c, &eps, &dg).unwrap(), dg);
        assert_eq!(convolve(&c, &dg, &dg).unwrap(), dg);
        let sign = Functional::new(f, 2, 1, vec![f.one(), f.int(-1)]).unwrap();
        assert_eq!(conv_inverse(&c, &sign).unwrap(), sign);
        assert_eq!(conv_inverse(&c, &eps).unwrap(), eps);
        let zero_at_one = Functional::new(f, 2, 1, vec![f.zero(), f.one()]).unwrap();
        assert_eq!(conv_inverse(&c, &zero_at_one), Err(Error::NotConvolutionInvertible));
        let chi = Functional::from_fn(f, 2, 2, |i| f.int(1 + i[0] as i64 + 2 * i[1] as i64));
        assert_eq!(convolve(&c, &Functional::counit(&c, 2), &chi).unwrap(), chi);
    }

    #[test]
    fn cop_is_involutive() {
        let h = h4_coalgebra();
        assert_eq!(h.cop().cop(), h);
        assert!(h.cop().check().all_pass());
        let z = group_z2();
        assert_eq!(z.cop(), z);
    }
}
