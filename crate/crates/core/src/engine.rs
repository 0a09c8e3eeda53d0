//! Sparse multi-leg tensors for transcribing Sweedler-notation formulas.
//!
//! A [`Sw`] is a finite sum of basis tensors whose legs carry names. Formulas
//! such as `Σ m₀ φ⁻¹(m₁, S(m₃), h₂) β(m₂) ⊗ S(m₄)h₁` are evaluated by splitting
//! legs with comultiplications or coactions, mapping legs through linear
//! maps, multiplying legs together and contracting legs against functionals.

use std::collections::HashMap;

use crate::linalg::{Field, Matrix, Scalar};

/// Per-input sparse table of a linear map: `table[i]` lists `(out, coeff)`.
pub type Lin = Vec<Vec<(usize, Scalar)>>;
/// Per-input sparse table of a map into a two-fold tensor product.
pub type Split = Vec<Vec<(usize, usize, Scalar)>>;

/// Sparse columns of a matrix, in the [`Lin`] format.
pub fn lin_from_matrix(m: &Matrix) -> Lin {
    (0..m.cols())
        .map(|j| {
            (0..m.rows())
                .filter(|&i| !m.get(i, j).is_zero())
                .map(|i| (i, m.get(i, j).clone()))
                .collect()
        })
        .collect()
}

/// Dense matrix of a [`Lin`] table with `rows` outputs.
pub fn lin_to_matrix(field: Field, rows: usize, lin: &Lin) -> Matrix {
    let mut m = Matrix::zeros(field, rows, lin.len());
    for (j, col) in lin.iter().enumerate() {
        for (i, c) in col {
            m.add_to(*i, j, c);
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct Sw {
    field: Field,
    legs: Vec<String>,
    dims: Vec<usize>,
    terms: HashMap<Vec<u32>, Scalar>,
}

impl Sw {
    /// The scalar 1, a tensor with no legs.
    pub fn one(field: Field) -> Sw {
        let mut terms = HashMap::new();
        terms.insert(Vec::new(), field.one());
        Sw { field, legs: Vec::new(), dims: Vec::new(), terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// A single basis tensor; each leg is `(name, dim, index)`.
    pub fn basis(field: Field, legs: &[(&str, usize, usize)]) -> Sw {
        let mut t = Sw::one(field);
        for &(name, dim, idx) in legs {
            t = t.with_leg(name, dim, idx);
        }
        t
    }

    /// Tensor from a dense coordinate vector over the legs, row-major with
    /// the first leg most significant.
    pub fn from_vector(field: Field, legs: &[(&str, usize)], v: &[Scalar]) -> Sw {
        let dims: Vec<usize> = legs.iter().map(|l| l.1).collect();
        let total: usize = dims.iter().product();
        assert_eq!(total, v.len(), "vector length vs legs");
        let mut terms = HashMap::new();
        for (flat, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.insert(unflatten(flat, &dims), c.clone());
        }
        Sw { field, legs: legs.iter().map(|l| l.0.to_string()).collect(), dims, terms }
    }

    /// Tensors with an extra leg in basis state `idx`, appended last.
    pub fn with_leg(mut self, name: &str, dim: usize, idx: usize) -> Sw {
        assert!(idx < dim);
        assert!(!self.legs.iter().any(|l| l == name), "duplicate leg {name}");
        self.legs.push(name.to_string());
        self.dims.push(dim);
        self.terms = self
            .terms
            .into_iter()
            .map(|(mut k, v)| {
                k.push(idx as u32);
                (k, v)
            })
            .collect();
        self
    }

    pub fn legs(&self) -> &[String] {
        &self.legs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Scalar::is_zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero terms as (per-leg indices in leg order, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    fn pos(&self, name: &str) -> usize {
        self.legs
            .iter()
            .position(|l| l == name)
            .unwrap_or_else(|| panic!("no leg named {name} in {:?}", self.legs))
    }

    fn insert(map: &mut HashMap<Vec<u32>, Scalar>, k: Vec<u32>, v: Scalar) {
        if v.is_zero() {
            return;
        }
        match map.get_mut(&k) {
            Some(acc) => acc.add_assign(&v),
            None => {
                map.insert(k, v);
            }
        }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, v| !v.is_zero());
    }

    /// Replaces `leg` by two legs `a`, `b` (in that order, at its position)
    /// using a split table such as a comultiplication or coaction.
    pub fn split(&mut self, leg: &str, a: (&str, usize), b: (&str, usize), table: &Split) {
        let p = self.pos(leg);
        let mut out = HashMap::with_capacity(self.terms.len() * 2);
        for (k, v) in self.terms.drain() {
            for (x, y, c) in &table[k[p] as usize] {
                let mut nk = Vec::with_capacity(k.len() + 1);
                nk.extend_from_slice(&k[..p]);
                nk.push(*x as u32);
                nk.push(*y as u32);
                nk.extend_from_slice(&k[p + 1..]);
                Self::insert(&mut out, nk, &v * c);
            }
        }
        self.terms = out;
        self.legs.splice(p..=p, [a.0.to_string(), b.0.to_string()]);
        self.dims.splice(p..=p, [a.1, b.1]);
        self.prune();
    }

    /// Iterated split: `leg` becomes `{leg}1, …, {leg}k` (Sweedler legs),
    /// using a coassociative split table. `k = 1` only renames.
    pub fn sweedler(&mut self, leg: &str, k: usize, dim: usize, table: &Split) {
        assert!(k >= 1);
        let mut rest = leg.to_string();
        for i in 1..k {
            let head = format!("{leg}{i}");
            let tail = format!("{leg}~{i}");
            self.split(&rest, (&head, dim), (&tail, dim), table);
            rest = tail;
        }
        self.rename(&rest, &format!("{leg}{k}"));
    }

    /// Applies a linear map to one leg, renaming it to `out`.
    pub fn map(&mut self, leg: &str, out: (&str, usize), table: &Lin) {
        let p = self.pos(leg);
        let mut res = HashMap::with_capacity(self.terms.len());
        for (k, v) in self.terms.drain() {
            for (x, c) in &table[k[p] as usize] {
                let mut nk = k.clone();
                nk[p] = *x as u32;
                Self::insert(&mut res, nk, &v * c);
            }
        }
        self.terms = res;
        self.legs[p] = out.0.to_string();
        self.dims[p] = out.1;
        self.prune();
    }

    /// Merges legs `a` and `b` through a bilinear table indexed by
    /// `ia * dim(b) + ib`; the result sits at the position of `a`.
    pub fn merge(&mut self, a: &str, b: &str, out: (&str, usize), table: &Lin) {
        let pa = self.pos(a);
        let pb = self.pos(b);
        let db = self.dims[pb];
        let mut res = HashMap::with_capacity(self.terms.len());
        for (k, v) in self.terms.drain() {
            let idx = k[pa] as usize * db + k[pb] as usize;
            for (x, c) in &table[idx] {
                let mut nk = k.clone();
                nk[pa] = *x as u32;
                nk.remove(pb);
                Self::insert(&mut res, nk, &v * c);
            }
        }
        self.terms = res;
        self.legs[pa] = out.0.to_string();
        self.dims[pa] = out.1;
        self.legs.remove(pb);
        self.dims.remove(pb);
        self.prune();
    }

    /// Contracts the listed legs against a dense functional whose values are
    /// indexed row-major over those legs in the listed order.
    pub fn eval(&mut self, legs: &[&str], values: &[Scalar]) {
        let ps: Vec<usize> = legs.iter().map(|l| self.pos(l)).collect();
        let dims: Vec<usize> = ps.iter().map(|&p| self.dims[p]).collect();
        debug_assert_eq!(values.len(), dims.iter().product::<usize>());
        let mut res = HashMap::with_capacity(self.terms.len());
        for (k, v) in self.terms.drain() {
            let mut flat = 0usize;
            for (&p, &d) in ps.iter().zip(&dims) {
                flat = flat * d + k[p] as usize;
            }
            let f = &values[flat];
            if f.is_zero() {
                continue;
            }
            let nk: Vec<u32> =
                k.iter().enumerate().filter(|(i, _)| !ps.contains(i)).map(|(_, &x)| x).collect();
            Self::insert(&mut res, nk, &v * f);
        }
        self.terms = res;
        let mut keep = Vec::new();
        let mut keep_d = Vec::new();
        for (i, (l, d)) in self.legs.iter().zip(&self.dims).enumerate() {
            if !ps.contains(&i) {
                keep.push(l.clone());
                keep_d.push(*d);
            }
        }
        self.legs = keep;
        self.dims = keep_d;
        self.prune();
    }

    /// General many-to-many map: the input legs are removed and the output
    /// legs are inserted at the position of the first input leg.
    pub fn apply<F>(&mut self, inputs: &[&str], outputs: &[(&str, usize)], f: F)
    where
        F: Fn(&[usize]) -> Vec<(Vec<usize>, Scalar)>,
    {
        let ps: Vec<usize> = inputs.iter().map(|l| self.pos(l)).collect();
        let first = *ps.iter().min().expect("at least one input leg");
        let mut res = HashMap::with_capacity(self.terms.len());
        let mut cache: HashMap<Vec<usize>, Vec<(Vec<usize>, Scalar)>> = HashMap::new();
        for (k, v) in self.terms.drain() {
            let key: Vec<usize> = ps.iter().map(|&p| k[p] as usize).collect();
            let outs = cache.entry(key.clone()).or_insert_with(|| f(&key));
            for (o, c) in outs.iter() {
                let mut nk = Vec::with_capacity(k.len() + o.len());
                for (i, &x) in k.iter().enumerate() {
                    if i == first {
                        nk.extend(o.iter().map(|&y| y as u32));
                    }
                    if !ps.contains(&i) {
                        nk.push(x);
                    }
                }
                Self::insert(&mut res, nk, &v * c);
            }
        }
        self.terms = res;
        let mut legs = Vec::new();
        let mut dims = Vec::new();
        for i in 0..self.legs.len() {
            if i == first {
                for (n, d) in outputs {
                    legs.push(n.to_string());
                    dims.push(*d);
                }
            }
            if !ps.contains(&i) {
                legs.push(self.legs[i].clone());
                dims.push(self.dims[i]);
            }
        }
        self.legs = legs;
        self.dims = dims;
        self.prune();
    }

    pub fn rename(&mut self, old: &str, new: &str) {
        let p = self.pos(old);
        self.legs[p] = new.to_string();
    }

    pub fn scale(&mut self, s: &Scalar) {
        for v in self.terms.values_mut() {
            *v = &*v * s;
        }
        self.prune();
    }

    pub fn add(&mut self, other: &Sw) {
        assert_eq!(self.legs, other.legs, "adding tensors with different legs");
        for (k, v) in &other.terms {
            Self::insert(&mut self.terms, k.clone(), v.clone());
        }
        self.prune();
    }

    /// Dense coordinates with legs in `order` (all legs must be listed).
    pub fn to_vector(&self, order: &[&str]) -> Vec<Scalar> {
        assert_eq!(order.len(), self.legs.len(), "to_vector must list every leg: {:?}", self.legs);
        let ps: Vec<usize> = order.iter().map(|l| self.pos(l)).collect();
        let dims: Vec<usize> = ps.iter().map(|&p| self.dims[p]).collect();
        let total: usize = dims.iter().product();
        let mut v = vec![self.field.zero(); total];
        for (k, c) in &self.terms {
            let mut flat = 0usize;
            for (&p, &d) in ps.iter().zip(&dims) {
                flat = flat * d + k[p] as usize;
            }
            v[flat].add_assign(c);
        }
        v
    }

    /// Value of a tensor with no legs left.
    pub fn scalar(&self) -> Scalar {
        assert!(self.legs.is_empty(), "legs remain: {:?}", self.legs);
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(|| self.field.zero())
    }
}

/// Splits a row-major flat index into per-leg indices.
pub fn unflatten(mut flat: usize, dims: &[usize]) -> Vec<u32> {
    let mut k = vec![0u32; dims.len()];
    for i in (0..dims.len()).rev() {
        k[i] = (flat % dims[i]) as u32;
        flat /= dims[i];
    }
    k
}

/// Row-major flat index of a multi-index.
pub fn flatten(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_then_eval_roundtrip() {
        let f = Field::Rational;
        // Δ on a 2-dim space with e0 group-like and Δ e1 = e1⊗e0 + e0⊗e1.
        let delta: Split = vec![
            vec![(0, 0, f.one())],
            vec![(1, 0, f.one()), (0, 1, f.one())],
        ];
        let eps = vec![f.one(), f.zero()];
        let mut t = Sw::basis(f, &[("x", 2, 1)]);
        t.split("x", ("x1", 2), ("x2", 2), &delta);
        assert_eq!(t.num_terms(), 2);
        t.eval(&["x2"], &eps);
        assert_eq!(t.to_vector(&["x1"]), vec![f.zero(), f.one()]);
    }

    #[test]
    fn merge_and_apply_place_output_first() {
        let f = Field::Prime(7);
        let prod: Lin = (0..4).map(|i| vec![((i / 2 + i % 2) % 2, f.one())]).collect();
        let mut t = Sw::basis(f, &[("a", 2, 1), ("m", 3, 2), ("b", 2, 1)]);
        t.merge("a", "b", ("ab", 2), &prod);
        assert_eq!(t.legs(), &["ab".to_string(), "m".to_string()]);
        let v = t.to_vector(&["ab", "m"]);
        assert!(v[2].is_one());
        t.apply(&["m"], &[("p", 2), ("q", 2)], |k| vec![(vec![k[0] % 2, 1], f.int(3))]);
        assert_eq!(t.legs(), &["ab".to_string(), "p".to_string(), "q".to_string()]);
        assert_eq!(t.to_vector(&["ab", "p", "q"])[1], f.int(3));
    }

    #[test]
    fn flatten_inverts_unflatten() {
        let dims = [3, 4, 2];
        for flat in 0..24 {
            let k: Vec<usize> = unflatten(flat, &dims).iter().map(|&x| x as usize).collect();
            assert_eq!(flatten(&k, &dims), flat);
        }
    }
}
