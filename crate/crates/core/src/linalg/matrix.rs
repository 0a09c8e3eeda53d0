use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

/// Dense row-major matrix. A linear map V → W is stored as a dim W × dim V
/// matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Affine solution set of A x = b: `particular` plus the span of `kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub particular: Option<Vec<Scalar>>,
    /// Reduced-echelon basis of the nullspace.
    pub kernel: Vec<Vec<Scalar>>,
}

impl SolutionSpace {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn dim(&self) -> usize {
        self.kernel.len()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_canonical()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds from rows, checking shape and field of every entry.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape("ragged rows".into()));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(field, s.field()));
                }
                data.push(s);
            }
        }
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.int(v)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("rectangular integer rows")
    }

    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Scalar) {
        self.data[i * self.cols + j].add_assign(v);
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Nonzero pattern per row, used to skip zeros in products.
    fn row_support(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|i| (0..self.cols).filter(|&j| !self.get(i, j).is_zero()).collect())
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let b_support = other.row_support();
        let rows: Vec<Vec<Scalar>> = crate::par::map_range(self.rows, |i| {
            let mut out = vec![self.field.zero(); other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &b_support[k] {
                    out[j].add_mul(a, other.get(k, j));
                }
            }
            out
        });
        Ok(Matrix { field: self.field, rows: self.rows, cols: other.cols, data: rows.concat() })
    }

    /// Product that panics on shape or field errors; for internal composites
    /// whose shapes are fixed by construction.
    pub fn dot(&self, other: &Matrix) -> Matrix {
        self.mul(other).expect("composite of incompatible maps")
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc.add_mul(self.get(i, j), x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product with (A⊗B)[i·rB+k, j·cB+l] = A[i,j]·B[k,l].
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let (ra, ca, rb, cb) = (self.rows, self.cols, other.rows, other.cols);
        let mut m = Matrix::zeros(self.field, ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..ca {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            m.set(i * rb + k, j * cb + l, a * b);
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn tensor(&self, other: &Matrix) -> Matrix {
        self.kron(other).expect("kron over one field")
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("sum of differently shaped matrices".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("difference of differently shaped matrices".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.dot(self);
        }
        acc
    }

    /// Columns `cols` of the matrix, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                m.data[i * cols.len() + jj] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            let pivot_row: Vec<(usize, Scalar)> = (c..self.cols)
                .filter(|&j| !self.get(r, j).is_zero())
                .map(|j| (j, self.get(r, j).clone()))
                .collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                let nf = -&f;
                for (j, v) in &pivot_row {
                    self.data[i * self.cols + j].add_mul(&nf, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical nullspace basis: the basis read off the RREF of A, itself
    /// put in reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f);
            }
            basis.push(v);
        }
        canonical_basis(self.field, self.cols, basis)
    }

    /// Solves A x = b exactly. Free variables are set to zero in the
    /// particular solution.
    pub fn solve(&self, b: &[Scalar]) -> Result<SolutionSpace> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!("rhs length {} vs {} rows", b.len(), self.rows)));
        }
        if let Some(x) = b.iter().find(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, x.field()));
        }
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        let kernel = self.kernel();
        if pivots.last() == Some(&self.cols) {
            return Ok(SolutionSpace { particular: None, kernel });
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(SolutionSpace { particular: Some(x), kernel })
    }

    pub fn invert(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(r.select_columns(&cols))
    }
}

/// Canonical (reduced echelon) basis of the span of `vecs` in 𝕜^len.
pub fn span_basis(field: Field, len: usize, vecs: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    canonical_basis(field, len, vecs)
}

/// Canonical basis of the intersection of two subspaces of 𝕜^len, each
/// given by a spanning list.
pub fn intersect(field: Field, len: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve Σ x_i a_i − Σ y_j b_j = 0 and map back through the a-part.
    let mut cols: Vec<Vec<Scalar>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
    let m = Matrix::from_columns(field, len, &cols);
    let vecs: Vec<Vec<Scalar>> = m
        .kernel()
        .into_iter()
        .map(|k| {
            let mut v = vec![field.zero(); len];
            for (i, ai) in a.iter().enumerate() {
                if k[i].is_zero() {
                    continue;
                }
                for (t, x) in ai.iter().enumerate() {
                    v[t].add_mul(&k[i], x);
                }
            }
            v
        })
        .collect();
    canonical_basis(field, len, vecs)
}

impl Matrix {
    /// Distinct eigenvalues lying in the base field, in increasing order of
    /// their canonical string for 𝔽_p and of value for ℚ.
    pub fn eigenvalues(&self) -> Result<Vec<Scalar>> {
        if !self.is_square() {
            return Err(Error::Shape("eigenvalues of a non-square matrix".into()));
        }
        let n = self.rows;
        let shifted_singular = |l: &Scalar| {
            let mut m = self.clone();
            for i in 0..n {
                let v = self.get(i, i) - l;
                m.set(i, i, v);
            }
            m.rank() < n
        };
        match self.field {
            Field::Prime(p) => {
                if p > 100_000 {
                    return Err(Error::Validation(format!(
                        "eigenvalue search over GF({p}) is limited to p <= 100000"
                    )));
                }
                Ok((0..p as i64).map(|v| self.field.int(v)).filter(|l| shifted_singular(l)).collect())
            }
            Field::Rational => {
                let mut roots = rational_roots(&self.char_poly());
                roots.sort_by(|a, b| match (a, b) {
                    (Scalar::Q(x), Scalar::Q(y)) => x.cmp(y),
                    _ => std::cmp::Ordering::Equal,
                });
                roots.dedup();
                debug_assert!(roots.iter().all(|l| shifted_singular(l)));
                Ok(roots)
            }
        }
    }

    /// Coefficients c_0..c_n of det(λI − A), via Faddeev–LeVerrier. Only
    /// valid in characteristic zero or above n.
    pub fn char_poly(&self) -> Vec<Scalar> {
        let n = self.rows;
        let f = self.field;
        let mut c = vec![f.zero(); n + 1];
        c[n] = f.one();
        let mut m = Matrix::zeros(f, n, n);
        for k in 1..=n {
            let mut next = self.dot(&m);
            for i in 0..n {
                next.add_to(i, i, &c[n - k + 1]);
            }
            m = next;
            let am = self.dot(&m);
            let mut tr = f.zero();
            for i in 0..n {
                tr.add_assign(am.get(i, i));
            }
            let k_inv = f.int(k as i64).inv().expect("k invertible");
            c[n - k] = -&(&tr * &k_inv);
        }
        c
    }
}

/// Rational roots of a polynomial with rational coefficients (low degree
/// first), by the rational root test on the cleared integer polynomial.
fn rational_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};

    let q: Vec<BigRational> = coeffs
        .iter()
        .map(|s| match s {
            Scalar::Q(r) => r.clone(),
            Scalar::Fp { .. } => unreachable!("rational_roots over a prime field"),
        })
        .collect();
    let lcm = q.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = q.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    while ints.last().map_or(false, |x| x.is_zero()) {
        ints.pop();
    }
    let mut roots = Vec::new();
    if ints.len() <= 1 {
        return roots;
    }
    // Factor out powers of λ.
    let shift = ints.iter().position(|x| !x.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(Scalar::Q(BigRational::zero()));
        ints.drain(..shift);
    }
    if ints.len() <= 1 {
        return roots;
    }
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let eval = |x: &BigRational| {
        let mut acc = BigRational::zero();
        for c in ints.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc.is_zero()
    };
    for p in divisors(&a0) {
        for d in divisors(&an) {
            for sign in [1i32, -1] {
                let cand = BigRational::new(p.clone() * BigInt::from(sign), d.clone());
                if eval(&cand) {
                    roots.push(Scalar::Q(cand));
                }
            }
        }
    }
    roots
}

/// Positive divisors by trial division; inputs here are small.
fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let other = n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Puts a spanning list of vectors into reduced row echelon form, dropping
/// zero rows.
pub(crate) fn canonical_basis(field: Field, len: usize, vecs: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if vecs.is_empty() {
        return vecs;
    }
    let m = Matrix::from_rows(field, vecs).expect("uniform vectors");
    debug_assert_eq!(m.cols, len);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn identity_solve() {
        let a = Matrix::identity(q(), 2);
        let s = a.solve(&[q().one(), q().zero()]).unwrap();
        assert_eq!(s.particular.unwrap(), vec![q().one(), q().zero()]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn zero_map_solve() {
        let a = Matrix::zeros(q(), 1, 1);
        let s = a.solve(&[q().zero()]).unwrap();
        assert_eq!(s.particular.unwrap(), vec![q().zero()]);
        assert_eq!(s.kernel, vec![vec![q().one()]]);
    }

    #[test]
    fn rank_one_line() {
        let a = Matrix::from_ints(q(), &[&[1, 2], &[2, 4]]);
        let s = a.solve(&[q().int(3), q().int(6)]).unwrap();
        assert_eq!(s.particular.clone().unwrap(), vec![q().int(3), q().int(0)]);
        assert_eq!(s.kernel, vec![vec![q().one(), Scalar::parse(q(), "-1/2").unwrap()]]);
        let bad = a.solve(&[q().int(3), q().int(5)]).unwrap();
        assert!(bad.is_empty());
    }

    #[test]
    fn inverse_over_f7() {
        let f = Field::Prime(7);
        let a = Matrix::from_ints(f, &[&[1, 1], &[0, 1]]);
        assert_eq!(a.invert().unwrap(), Matrix::from_ints(f, &[&[1, 6], &[0, 1]]));
        let sw = Matrix::from_ints(q(), &[&[0, 1], &[1, 0]]);
        assert_eq!(sw.invert().unwrap(), sw);
        assert_eq!(Matrix::identity(q(), 3).invert().unwrap(), Matrix::identity(q(), 3));
        let sing = Matrix::from_ints(q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(sing.invert(), Err(Error::Singular));
    }

    #[test]
    fn kron_units() {
        let i6 = Matrix::identity(q(), 2).tensor(&Matrix::identity(q(), 3));
        assert_eq!(i6, Matrix::identity(q(), 6));
        let a = Matrix::from_ints(q(), &[&[1, 2], &[3, 4]]);
        assert_eq!(a.tensor(&Matrix::identity(q(), 1)), a);
    }

    #[test]
    fn swap_relation() {
        // sw_{V,W} on V⊗W with dim 2 each, then sw⊗sw on (V⊗W)⊗(V⊗W)
        // equals the swap of the 4-dim factors conjugated by the middle swap.
        let f = q();
        let sw = |a: usize, b: usize| {
            let mut m = Matrix::zeros(f, a * b, a * b);
            for i in 0..a {
                for j in 0..b {
                    m.set(j * a + i, i * b + j, f.one());
                }
            }
            m
        };
        let sw22 = sw(2, 2);
        let sw4 = sw(4, 4);
        let i2 = Matrix::identity(f, 2);
        let mid = i2.tensor(&sw22).tensor(&i2);
        let lhs = sw22.tensor(&sw22);
        let rhs = mid.dot(&sw4).dot(&mid);
        for e in 0..16 {
            let mut v = vec![f.zero(); 16];
            v[e] = f.one();
            assert_eq!(lhs.apply(&v), rhs.apply(&v), "basis vector {e}");
        }
    }

    #[test]
    fn mixed_field_product_errors() {
        let a = Matrix::identity(q(), 2);
        let b = Matrix::identity(Field::Prime(7), 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(_, _))));
        assert!(a.kron(&b).is_err());
    }
}
