//! Hopf modules: bicomodules over (H, H) with a right H-action that is
//! associative up to the associativity constraint Φ.
//!
//! Also here: the free module functor, the fundamental theorem as an explicit
//! rank test, the functor 𝓘 and the natural isomorphism
//! τ_M: 𝓘(M)₀⊗H → ₀M⊗H together with its monoidality.


use crate::comod::{
    assoc_sw, coinvariants_left, cotensor, left_inverse, morphism_checks, tensor_comodules, Ambient, Bicomodule,
    ComoduleMorphism, Subcomodule,
};
use crate::coalg::{conv_inverse, Functional};
use crate::engine::{lin_from_matrix, Lin, Sw};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::report::{identity_check, matrix_check, render_vec, tensor_names, Check, Checks, Witness};

/// Largest ambient space (product of the two factors) for which the cotensor
/// isomorphisms of [`check_tau_monoidal`] are built densely.
const MAX_COTENSOR_AMBIENT: usize = 4096;

#[derive(Clone, Debug)]
pub struct HopfModule {
    pub module: Bicomodule,
    /// m × m·dim(H), column i·dim(H) + j holding e_i·h_j.
    pub action: Matrix,
}

impl HopfModule {
    pub fn new(module: Bicomodule, action: Matrix) -> Result<HopfModule> {
        let n = module.right().dim();
        if module.left().dim() != n || !crate::comod::same_ambient(module.left(), module.right()) {
            return Err(Error::Validation("a Hopf module needs a bicomodule over (H, H)".into()));
        }
        if action.rows() != module.dim() || action.cols() != module.dim() * n {
            return Err(Error::Shape(format!(
                "action is {}x{}, expected {}x{}",
                action.rows(),
                action.cols(),
                module.dim(),
                module.dim() * n
            )));
        }
        Ok(HopfModule { module, action })
    }

    /// H with the regular coactions and the product as action.
    pub fn regular(h: Ambient) -> HopfModule {
        let module = Bicomodule::regular(h.clone());
        let action = h.prod_matrix();
        HopfModule { module, action }
    }

    pub fn h(&self) -> &Ambient {
        self.module.right()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn field(&self) -> Field {
        self.module.field()
    }

    fn action_lin(&self) -> Lin {
        lin_from_matrix(&self.action)
    }

    /// Three invariants: the action is colinear, Φ-associative and unital.
    pub fn check(&self) -> Checks {
        let h = self.h().clone();
        let (m, n) = (self.dim(), h.dim());
        let f = self.field();
        let mut out = Checks::new();
        let reg = Bicomodule::regular(h.clone());
        match tensor_comodules(&self.module, &reg) {
            Ok(src) => out.extend_scoped("action", morphism_checks(&src, &self.module, &self.action)),
            Err(e) => out.push(Check::fail("action", Witness { at: "-".into(), lhs: e.to_string(), rhs: String::new() })),
        }
        let act = self.action_lin();
        let prod = h.prod();
        let names = self.module.names().to_vec();
        let mhh = tensor_names(vec![names.clone(), h.names().to_vec(), h.names().to_vec()]);
        let mn = |i: usize| names[i].clone();
        out.push(identity_check(
            "associativity",
            m * n * n,
            |t| {
                let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
                let mut lhs = Sw::basis(f, &[("m", m, i), ("a", n, j), ("b", n, k)]);
                lhs.merge("m", "a", ("m", m), &act);
                lhs.merge("m", "b", ("m", m), &act);
                let mut rhs = Sw::basis(f, &[("m", m, i), ("a", n, j), ("b", n, k)]);
                assoc_sw(&self.module, &reg, &reg, &mut rhs, ["m", "a", "b"], false);
                rhs.merge("a", "b", ("a", n), prod);
                rhs.merge("m", "a", ("m", m), &act);
                (lhs.to_vector(&["m"]), rhs.to_vector(&["m"]))
            },
            &mhh,
            |v| render_vec(v, &mn),
        ));
        out.push(identity_check(
            "unit",
            m,
            |i| {
                let e = crate::comod::unit_vec(f, m, i);
                (self.act(&e, h.unit()), e)
            },
            &mn,
            |v| render_vec(v, &mn),
        ));
        out
    }

    /// x·h for x ∈ M given as a vector and h ∈ H.
    pub fn act(&self, x: &[Scalar], h: &[Scalar]) -> Vec<Scalar> {
        let n = self.h().dim();
        let mut v = vec![self.field().zero(); self.dim() * n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, hj) in h.iter().enumerate() {
                if !hj.is_zero() {
                    v[i * n + j] = xi * hj;
                }
            }
        }
        self.action.apply(&v)
    }
}


/// Colinearity of `f` on both sides and f(x·h) = f(x)·h on basis pairs.
pub fn hopf_morphism_checks(src: &HopfModule, tgt: &HopfModule, f: &Matrix) -> Checks {
    let mut out = morphism_checks(&src.module, &tgt.module, f);
    if !out.all_pass() {
        return out;
    }
    let n = src.h().dim();
    let field = src.field();
    let (ms, mt) = (src.dim(), tgt.dim());
    let names = tensor_names(vec![src.module.names().to_vec(), src.h().names().to_vec()]);
    let tn = |i: usize| tgt.module.name(i);
    out.push(identity_check(
        "linear",
        ms * n,
        |t| {
            let (i, j) = (t / n, t % n);
            let hj = crate::comod::unit_vec(field, n, j);
            let lhs = f.apply(&src.act(&crate::comod::unit_vec(field, ms, i), &hj));
            let rhs = tgt.act(&f.column(i), &hj);
            debug_assert_eq!(lhs.len(), mt);
            (lhs, rhs)
        },
        &names,
        |v| render_vec(v, &tn),
    ));
    out
}

/// F(M) = M⊗H with diagonal coactions and action (id⊗p)Φ_{M,H,H}.
pub fn free_hopf_module(m: &Bicomodule) -> Result<HopfModule> {
    let h = m.right().clone();
    if !crate::comod::same_ambient(m.left(), &h) {
        return Err(Error::Validation("the free Hopf module needs a bicomodule over (H, H)".into()));
    }
    let reg = Bicomodule::regular(h.clone());
    let module = tensor_comodules(m, &reg)?;
    let (dm, n) = (m.dim(), h.dim());
    let f = m.field();
    let prod = h.prod();
    let cols = crate::par::map_range(dm * n * n, |t| {
        let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
        let mut s = Sw::basis(f, &[("m", dm, i), ("a", n, j), ("b", n, k)]);
        assoc_sw(m, &reg, &reg, &mut s, ["m", "a", "b"], false);
        s.merge("a", "b", ("a", n), prod);
        s.to_vector(&["m", "a"])
    });
    let action = Matrix::from_columns(f, dm * n, &cols);
    HopfModule::new(module, action)
}

fn require_right_comodule(m: &Bicomodule) -> Result<Ambient> {
    if !m.is_right_comodule() {
        return Err(Error::Validation("expected a right comodule".into()));
    }
    let h = m.right().clone();
    h.antipode()?;
    h.s_inv()?;
    Ok(h)
}

/// 𝓘(M): the left comodule m ↦ Σ S(m₁)⊗m₀.
pub fn iota(m: &Bicomodule) -> Result<Bicomodule> {
    let h = require_right_comodule(m)?;
    let s = h.s_lin();
    let lambda = m
        .rho()
        .iter()
        .map(|row| {
            let mut out = Vec::new();
            for (j, d, c) in row {
                for (e, x) in &s[*d] {
                    out.push((*e, *j, c * x));
                }
            }
            out
        })
        .collect();
    let trivial = crate::comod::trivial_ambient(h.field());
    let rho = (0..m.dim()).map(|i| vec![(i, 0, h.field().one())]).collect();
    Bicomodule::new(m.names().to_vec(), h, trivial, lambda, rho)
}

/// 𝓘(M)₀, a bicomodule over (H, H).
pub fn iota_zero(m: &Bicomodule) -> Result<Bicomodule> {
    let h = m.right().clone();
    iota(m)?.trivial_right(h)
}

/// ₀M, a bicomodule over (H, H).
pub fn zero_left(m: &Bicomodule) -> Result<Bicomodule> {
    let h = m.right().clone();
    m.trivial_left(h)
}

/// τ_M: F(𝓘(M)₀) → F(₀M) and its inverse, on the common space M⊗H.
#[derive(Clone, Debug)]
pub struct Tau {
    pub comodule: Bicomodule,
    pub source: HopfModule,
    pub target: HopfModule,
    pub matrix: Matrix,
    pub inverse: Matrix,
}

/// τ_M(m⊗h) = Σ m₀ φ⁻¹(m₁, S(m₃), h₂) β(m₂) ⊗ S(m₄)h₁ and
/// τ⁻¹_M(m⊗h) = Σ φ(S(m₁), m₃, h₁) α(m₂) m₀ ⊗ m₄h₂.
pub fn tau(m: &Bicomodule) -> Result<Tau> {
    let h = require_right_comodule(m)?;
    let (dm, n) = (m.dim(), h.dim());
    let f = m.field();
    let (s, prod, delta) = (h.s_lin(), h.prod(), h.delta());
    let (alpha, beta) = (h.alpha()?, h.beta()?);
    let fwd = crate::par::map_range(dm * n, |t| {
        let mut x = Sw::basis(f, &[("m", dm, t / n), ("h", n, t % n)]);
        m.split_right(&mut x, "m", "c");
        x.sweedler("c", 4, n, delta);
        x.sweedler("h", 2, n, delta);
        x.map("c3", ("sc3", n), s);
        x.map("c4", ("sc4", n), s);
        x.eval(&["c1", "sc3", "h2"], h.phi_inv().values());
        x.eval(&["c2"], beta);
        x.merge("sc4", "h1", ("o", n), prod);
        x.to_vector(&["m", "o"])
    });
    let back = crate::par::map_range(dm * n, |t| {
        let mut x = Sw::basis(f, &[("m", dm, t / n), ("h", n, t % n)]);
        m.split_right(&mut x, "m", "c");
        x.sweedler("c", 4, n, delta);
        x.sweedler("h", 2, n, delta);
        x.map("c1", ("sc1", n), s);
        x.eval(&["sc1", "c3", "h1"], h.phi().values());
        x.eval(&["c2"], alpha);
        x.merge("c4", "h2", ("o", n), prod);
        x.to_vector(&["m", "o"])
    });
    Ok(Tau {
        comodule: m.clone(),
        source: free_hopf_module(&iota_zero(m)?)?,
        target: free_hopf_module(&zero_left(m)?)?,
        matrix: Matrix::from_columns(f, dm * n, &fwd),
        inverse: Matrix::from_columns(f, dm * n, &back),
    })
}

/// π_M: 𝓘(M)₀ → ₀M⊗H, m ↦ Σ m₀ ⊗ β(m₁)S(m₂).
pub fn pi(m: &Bicomodule) -> Result<Matrix> {
    let h = require_right_comodule(m)?;
    let (dm, n) = (m.dim(), h.dim());
    let f = m.field();
    let beta = h.beta()?;
    let cols: Vec<Vec<Scalar>> = (0..dm)
        .map(|i| {
            let mut x = Sw::basis(f, &[("m", dm, i)]);
            m.split_right(&mut x, "m", "c");
            x.sweedler("c", 2, n, h.delta());
            x.eval(&["c1"], beta);
            x.map("c2", ("o", n), h.s_lin());
            x.to_vector(&["m", "o"])
        })
        .collect();
    Ok(Matrix::from_columns(f, dm * n, &cols))
}

/// τ_M assembled as (id⊗p)Φ_{₀M,H,H}(π_M⊗id).
pub fn tau_factored(m: &Bicomodule) -> Result<Matrix> {
    let h = require_right_comodule(m)?;
    let (dm, n) = (m.dim(), h.dim());
    let f = m.field();
    let p = lin_from_matrix(&pi(m)?);
    let zm = zero_left(m)?;
    let reg = Bicomodule::regular(h.clone());
    let cols = crate::par::map_range(dm * n, |t| {
        let mut x = Sw::basis(f, &[("m", dm, t / n), ("b", n, t % n)]);
        x.map("m", ("ma", dm * n), &p);
        x.apply(&["ma"], &[("m", dm), ("a", n)], |k| vec![(vec![k[0] / n, k[0] % n], f.one())]);
        assoc_sw(&zm, &reg, &reg, &mut x, ["m", "a", "b"], false);
        x.merge("a", "b", ("a", n), h.prod());
        x.to_vector(&["m", "a"])
    });
    Ok(Matrix::from_columns(f, dm * n, &cols))
}

/// The Hopf-algebra form m⊗h ↦ Σ m₀ ⊗ S(m₁)h.
pub fn tau_hopf_form(m: &Bicomodule) -> Result<Matrix> {
    let h = require_right_comodule(m)?;
    let (dm, n) = (m.dim(), h.dim());
    let f = m.field();
    let cols: Vec<Vec<Scalar>> = (0..dm * n)
        .map(|t| {
            let mut x = Sw::basis(f, &[("m", dm, t / n), ("h", n, t % n)]);
            m.split_right(&mut x, "m", "c");
            x.map("c", ("c", n), h.s_lin());
            x.merge("c", "h", ("o", n), h.prod());
            x.to_vector(&["m", "o"])
        })
        .collect();
    Ok(Matrix::from_columns(f, dm * n, &cols))
}

/// All checks on τ_M: mutual inverses, agreement with the factorization
/// through π_M, Hopf-module morphism, and in the Hopf case the short form.
pub fn check_tau(t: &Tau) -> Result<Checks> {
    let m = &t.comodule;
    let h = m.right().clone();
    let f = m.field();
    let dim = t.matrix.rows();
    let id = Matrix::identity(f, dim);
    let names = tensor_names(vec![m.names().to_vec(), h.names().to_vec()]);
    let mut out = Checks::new();
    out.push(matrix_check("inverse_right", &t.matrix.dot(&t.inverse), &id, &names, &names));
    out.push(matrix_check("inverse_left", &t.inverse.dot(&t.matrix), &id, &names, &names));
    out.push(matrix_check("factorization", &t.matrix, &tau_factored(m)?, &names, &names));
    out.extend_scoped("pi", morphism_checks(&iota_zero(m)?, &t.target.module, &pi(m)?));
    out.extend_scoped("source", t.source.check());
    out.extend_scoped("target", t.target.check());
    out.extend_scoped("morphism", hopf_morphism_checks(&t.source, &t.target, &t.matrix));
    out.extend_scoped("inverse_morphism", hopf_morphism_checks(&t.target, &t.source, &t.inverse));
    if h.is_hopf() {
        out.push(matrix_check("hopf_form", &t.matrix, &tau_hopf_form(m)?, &names, &names));
    }
    Ok(out)
}

/// Naturality of τ along a morphism of right comodules f: M → N:
/// τ_N(f⊗id) = (f⊗id)τ_M.
pub fn check_tau_natural(g: &ComoduleMorphism) -> Result<Checks> {
    let mut out = Checks::new();
    out.extend_scoped("colinear", g.check());
    let tm = tau(&g.source)?;
    let tn = tau(&g.target)?;
    let h = g.source.right().clone();
    let gh = g.matrix.tensor(&Matrix::identity(h.field(), h.dim()));
    let src = tensor_names(vec![g.source.names().to_vec(), h.names().to_vec()]);
    let tgt = tensor_names(vec![g.target.names().to_vec(), h.names().to_vec()]);
    out.push(matrix_check("tau_natural", &tn.matrix.dot(&gh), &gh.dot(&tm.matrix), &src, &tgt));
    out.push(matrix_check("tau_inverse_natural", &tn.inverse.dot(&gh), &gh.dot(&tm.inverse), &src, &tgt));
    Ok(out)
}

/// Output of [`fundamental_check`]: the coinvariants ^{co H}M and the map
/// ε_M: ₀(^{co H}M)⊗H → M, m⊗c ↦ m·c.
#[derive(Clone, Debug)]
pub struct Fundamental {
    pub coinvariants: Subcomodule,
    pub counit: Matrix,
    pub is_iso: bool,
    pub checks: Checks,
}

/// The fundamental theorem for one Hopf module, checked by rank.
pub fn fundamental_check(m: &HopfModule) -> Result<Fundamental> {
    let h = m.h().clone();
    let n = h.dim();
    let f = m.field();
    let co = coinvariants_left(&m.module)?;
    let k = co.inclusion.cols();
    let free = free_hopf_module(&zero_left(&co.module)?)?;
    let cols: Vec<Vec<Scalar>> = (0..k * n)
        .map(|t| m.act(&co.inclusion.column(t / n), &crate::comod::unit_vec(f, n, t % n)))
        .collect();
    let counit = Matrix::from_columns(f, m.dim(), &cols);
    let mut checks = Checks::new();
    checks.extend_scoped("counit", hopf_morphism_checks(&free, m, &counit));
    let rank = counit.rank();
    let is_iso = counit.is_square() && rank == m.dim();
    checks.push(Check::flag("bijective", is_iso, || Witness {
        at: "rank".into(),
        lhs: format!("{rank} (coinvariants of dimension {k})"),
        rhs: format!("{}", m.dim()),
    }));
    Ok(Fundamental { coinvariants: co, counit, is_iso, checks })
}

/// M□_H N for Hopf modules, with the action
/// (M□N)⊗H → (M⊗H)□(N⊗H) → M□N, (m⊗n)⊗h ↦ m·h₁ ⊗ n·h₂.
/// The checks confirm that the composite stays inside the cotensor product
/// and that the result is again a Hopf module.
pub fn cotensor_hopf(a: &HopfModule, b: &HopfModule) -> Result<(HopfModule, Checks)> {
    let h = a.h().clone();
    let n = h.dim();
    let f = a.field();
    let sub = cotensor(&a.module, &b.module)?;
    let (da, db, k) = (a.dim(), b.dim(), sub.inclusion.cols());
    let p = left_inverse(&sub.inclusion)?;
    let (act_a, act_b) = (a.action_lin(), b.action_lin());
    let mut cols = Vec::with_capacity(k * n);
    let mut stray = None;
    for s in 0..k {
        let x = sub.inclusion.column(s);
        for j in 0..n {
            let mut t = Sw::from_vector(f, &[("a", da), ("b", db)], &x);
            t = t.with_leg("h", n, j);
            t.sweedler("h", 2, n, h.delta());
            t.merge("a", "h1", ("a", da), &act_a);
            t.merge("b", "h2", ("b", db), &act_b);
            let y = t.to_vector(&["a", "b"]);
            let c = p.apply(&y);
            if stray.is_none() && sub.inclusion.apply(&c) != y {
                stray = Some((s, j, y.clone()));
            }
            cols.push(c);
        }
    }
    let action = Matrix::from_columns(f, k, &cols);
    let mut checks = Checks::new();
    let ab = tensor_names(vec![a.module.names().to_vec(), b.module.names().to_vec()]);
    checks.push(match stray {
        None => Check::pass("closed"),
        Some((s, j, y)) => Check::fail(
            "closed",
            Witness {
                at: format!("{}·{}", sub.module.name(s), h.names()[j]),
                lhs: render_vec(&y, &ab),
                rhs: "outside the cotensor product".into(),
            },
        ),
    });
    let module = HopfModule::new(sub.module, action)?;
    checks.extend_scoped("module", module.check());
    Ok((module, checks))
}

/// The monoidal structure of 𝓘 on (M^H)^rev: 𝓘(M)⊗𝓘(N) → 𝓘(N⊗M),
/// m⊗n ↦ Σ (χ^S)⁻¹(m₁, n₁) n₀⊗m₀.
pub fn iota_monoidal(m: &Bicomodule, n: &Bicomodule, chi_s: &Functional) -> Result<Matrix> {
    let h = require_right_comodule(m)?;
    require_right_comodule(n)?;
    let circ = h.circ();
    let chi_inv = conv_inverse(circ.coalgebra(), chi_s)?;
    let (dm, dn) = (m.dim(), n.dim());
    let f = m.field();
    let cols: Vec<Vec<Scalar>> = (0..dm * dn)
        .map(|t| {
            let mut x = Sw::basis(f, &[("m", dm, t / dn), ("n", dn, t % dn)]);
            m.split_right(&mut x, "m", "a");
            n.split_right(&mut x, "n", "b");
            x.eval(&["a", "b"], chi_inv.values());
            x.to_vector(&["n", "m"])
        })
        .collect();
    Ok(Matrix::from_columns(f, dm * dn, &cols))
}

/// Applies A⊗B to a vector of X⊗Y given sparse tables of A: X → X' and
/// B: Y → Y'.
fn apply_pair(v: &[Scalar], a: &Lin, b: &Lin, (dx, dy): (usize, usize), (dx2, dy2): (usize, usize)) -> Vec<Scalar> {
    let f = v.first().map(|x| x.field()).unwrap_or(Field::Rational);
    let mut out = vec![f.zero(); dx2 * dy2];
    for (t, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (x, y) = (t / dy, t % dy);
        debug_assert!(x < dx);
        for (x2, p) in &a[x] {
            let cp = c * p;
            for (y2, q) in &b[y] {
                out[x2 * dy2 + y2].add_mul(&cp, q);
            }
        }
    }
    out
}

/// Columns of `q` written in the basis of a cotensor subspace, checking that
/// each column lies in it.
fn in_cotensor(name: &str, sub: &Subcomodule, q: &Matrix, out: &mut Checks) -> Result<Matrix> {
    let p = left_inverse(&sub.inclusion)?;
    let coords = p.dot(q);
    let back = sub.inclusion.dot(&coords);
    let bad = (0..q.cols()).find(|&j| back.column(j) != q.column(j));
    out.push(Check::flag(format!("{name}.lands_in_cotensor"), bad.is_none(), || Witness {
        at: format!("column {}", bad.unwrap_or(0)),
        lhs: "image vector".into(),
        rhs: "outside the cotensor product".into(),
    }));
    let iso = coords.is_square() && coords.rank() == coords.rows();
    out.push(Check::flag(format!("{name}.bijective"), iso, || Witness {
        at: "rank".into(),
        lhs: format!("{}", coords.rank()),
        rhs: format!("{}x{}", coords.rows(), coords.cols()),
    }));
    Ok(coords)
}

/// Monoidality of τ on a pair of right comodules M, N.
///
/// With P = 𝓘(M)₀⊗(𝓘(N)₀⊗H), the two canonical isomorphisms
///   P ≅ F(𝓘(M)₀)□_H F(𝓘(N)₀),  m⊗n⊗k ↦ (m⊗S(n₁)k₁)⊗(n₀⊗k₂),
///   ₀N⊗(₀M⊗H) ≅ F(₀M)□_H F(₀N),  n⊗m⊗h ↦ (m₀⊗h₁)⊗(n⊗m₁h₂),
/// are built in coordinates of the cotensor subspaces, and the square
///   Φ⁻¹ ∘ iso₂⁻¹ ∘ (τ_M□τ_N) ∘ iso₁ = τ_{N⊗M} ∘ (J⊗id) ∘ Φ⁻¹
/// is compared as matrices on P, with J the structure of [`iota_monoidal`].
pub fn check_tau_monoidal(m: &Bicomodule, n: &Bicomodule, chi_s: &Functional) -> Result<Checks> {
    let h = require_right_comodule(m)?;
    require_right_comodule(n)?;
    let (dm, dn, nh) = (m.dim(), n.dim(), h.dim());
    let ambient = dm * nh * dn * nh;
    if ambient > MAX_COTENSOR_AMBIENT {
        return Err(Error::TooLarge(ambient, MAX_COTENSOR_AMBIENT));
    }
    let f = m.field();
    let mut out = Checks::new();
    let tm = tau(m)?;
    let tn = tau(n)?;
    let nm = tensor_comodules(n, m)?;
    let tnm = tau(&nm)?;
    let (im0, in0) = (iota_zero(m)?, iota_zero(n)?);
    let (zm, zn) = (zero_left(m)?, zero_left(n)?);
    let reg = Bicomodule::regular(h.clone());
    let (s, prod, delta) = (h.s_lin(), h.prod(), h.delta());

    // iso₁: P → F(𝓘M₀)□F(𝓘N₀)
    let total = dm * dn * nh;
    let q1_cols = crate::par::map_range(total, |t| {
        let (a, b, k) = (t / (dn * nh), (t / nh) % dn, t % nh);
        let mut x = Sw::basis(f, &[("m", dm, a), ("n", dn, b), ("k", nh, k)]);
        n.split_right(&mut x, "n", "c");
        x.map("c", ("c", nh), s);
        x.sweedler("k", 2, nh, delta);
        x.merge("c", "k1", ("x", nh), prod);
        x.to_vector(&["m", "x", "n", "k2"])
    });
    let q1 = Matrix::from_columns(f, ambient, &q1_cols);
    let dom = cotensor(&tm.source.module, &tn.source.module)?;
    let c1 = in_cotensor("source_iso", &dom, &q1, &mut out)?;

    // iso₂: ₀N⊗₀M⊗H → F(₀M)□F(₀N)
    let q2_cols = crate::par::map_range(total, |t| {
        let (b, a, k) = (t / (dm * nh), (t / nh) % dm, t % nh);
        let mut x = Sw::basis(f, &[("n", dn, b), ("m", dm, a), ("h", nh, k)]);
        m.split_right(&mut x, "m", "c");
        x.sweedler("h", 2, nh, delta);
        x.merge("c", "h2", ("y", nh), prod);
        x.to_vector(&["m", "h1", "n", "y"])
    });
    let q2 = Matrix::from_columns(f, ambient, &q2_cols);
    let cod = cotensor(&tm.target.module, &tn.target.module)?;
    let c2 = in_cotensor("target_iso", &cod, &q2, &mut out)?;
    if !out.all_pass() {
        return Ok(out);
    }

    // τ_M□τ_N in cotensor coordinates
    let (ta, tb) = (lin_from_matrix(&tm.matrix), lin_from_matrix(&tn.matrix));
    let sq_cols: Vec<Vec<Scalar>> = (0..dom.inclusion.cols())
        .map(|j| apply_pair(&dom.inclusion.column(j), &ta, &tb, (dm * nh, dn * nh), (dm * nh, dn * nh)))
        .collect();
    let sq = Matrix::from_columns(f, ambient, &sq_cols);
    let pc = left_inverse(&cod.inclusion)?;
    let sq_coords = pc.dot(&sq);
    out.push(matrix_check(
        "tau_square_lands_in_cotensor",
        &cod.inclusion.dot(&sq_coords),
        &sq,
        &|j| format!("cotensor basis {j}"),
        &|i| format!("e{i}"),
    ));
    let lhs_flat = c2.invert()?.dot(&sq_coords).dot(&c1);
    let lhs_cols: Vec<Vec<Scalar>> = (0..total)
        .map(|j| {
            let mut x = Sw::from_vector(f, &[("n", dn), ("m", dm), ("h", nh)], &lhs_flat.column(j));
            assoc_sw(&zn, &zm, &reg, &mut x, ["n", "m", "h"], true);
            x.to_vector(&["n", "m", "h"])
        })
        .collect();
    let lhs = Matrix::from_columns(f, total, &lhs_cols);

    let j = iota_monoidal(m, n, chi_s)?;
    let (im, inn) = (iota(m)?, iota(n)?);
    out.extend_scoped("iota_monoidal", morphism_checks(&tensor_comodules(&im, &inn)?, &iota(&nm)?, &j));
    let jl = lin_from_matrix(&j);
    let tnm_l = lin_from_matrix(&tnm.matrix);
    let rhs_cols: Vec<Vec<Scalar>> = (0..total)
        .map(|t| {
            let (a, b, k) = (t / (dn * nh), (t / nh) % dn, t % nh);
            let mut x = Sw::basis(f, &[("m", dm, a), ("n", dn, b), ("k", nh, k)]);
            assoc_sw(&im0, &in0, &reg, &mut x, ["m", "n", "k"], true);
            x.merge("m", "n", ("nm", dn * dm), &jl);
            x.merge("nm", "k", ("o", dn * dm * nh), &tnm_l);
            x.to_vector(&["o"])
        })
        .collect();
    let rhs = Matrix::from_columns(f, total, &rhs_cols);
    let src_names = tensor_names(vec![m.names().to_vec(), n.names().to_vec(), h.names().to_vec()]);
    let tgt_names = tensor_names(vec![n.names().to_vec(), m.names().to_vec(), h.names().to_vec()]);
    out.push(matrix_check("rectangle", &lhs, &rhs, &src_names, &tgt_names));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comod::Sampler;
    use crate::cqbialg::chi_s;
    use crate::zoo;
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use std::sync::Arc;

    fn zoo_all() -> Vec<Ambient> {
        zoo::standard().unwrap().into_iter().map(Arc::new).collect()
    }

    fn assert_pass(c: &Checks, ctx: &str) {
        assert!(c.all_pass(), "{ctx}: {:?}", c.failures().collect::<Vec<_>>());
    }

    #[test]
    fn regular_and_free_modules_pass() {
        for h in zoo_all() {
            assert_pass(&HopfModule::regular(h.clone()).check(), h.name());
            let free = free_hopf_module(&zero_left(&Bicomodule::regular_right(h.clone())).unwrap()).unwrap();
            assert_pass(&free.check(), h.name());
        }
    }

    #[test]
    fn broken_action_fails_unit_or_associativity() {
        let h: Ambient = Arc::new(zoo::sweedler_h4(Field::Rational).unwrap());
        let mut m = HopfModule::regular(h);
        let f = m.field();
        m.action.set(0, 0, f.int(2));
        assert!(!m.check().all_pass());
    }

    #[test]
    fn tau_on_regular_comodules() {
        for h in zoo_all() {
            let t = tau(&Bicomodule::regular_right(h.clone())).unwrap();
            assert_pass(&check_tau(&t).unwrap(), h.name());
        }
    }

    #[test]
    fn tau_on_sampled_comodules() {
        let mut rng = StdRng::seed_from_u64(11);
        for h in zoo_all() {
            let s = Sampler::new(h.clone(), true, 4).unwrap();
            for _ in 0..3 {
                let m = s.sample(&mut rng);
                assert_pass(&check_tau(&tau(&m).unwrap()).unwrap(), h.name());
            }
        }
    }

    #[test]
    fn tau_collapses_in_hopf_case() {
        let h: Ambient = Arc::new(zoo::taft(3, Field::Prime(7).int(2)).unwrap());
        assert!(h.is_hopf());
        let m = Bicomodule::regular_right(h);
        assert_eq!(tau(&m).unwrap().matrix, tau_hopf_form(&m).unwrap());
    }

    #[test]
    fn tau_differs_from_hopf_form_for_nontrivial_phi() {
        let h: Ambient = Arc::new(zoo::cyclic_cocycle(3, Field::Prime(7).int(2)).unwrap());
        let m = Bicomodule::regular_right(h);
        assert_ne!(tau(&m).unwrap().matrix, tau_hopf_form(&m).unwrap());
    }

    #[test]
    fn tau_is_natural_along_inclusion() {
        let h: Ambient = Arc::new(zoo::sweedler_h4(Field::Rational).unwrap());
        let reg = Bicomodule::regular_right(h.clone());
        let f = h.field();
        let mut v = vec![f.zero(); 4];
        v[2] = f.one();
        let sub = reg.generated(&v).unwrap();
        let mor = ComoduleMorphism::new(sub.module, reg, sub.inclusion).unwrap();
        assert_pass(&check_tau_natural(&mor).unwrap(), "H4");
    }

    #[test]
    fn fundamental_theorem_on_free_and_regular() {
        let mut rng = StdRng::seed_from_u64(5);
        for h in zoo_all() {
            let reg = HopfModule::regular(h.clone());
            let fr = fundamental_check(&reg).unwrap();
            assert!(fr.is_iso, "{}", h.name());
            assert_eq!(fr.coinvariants.module.dim(), 1);
            assert_pass(&fr.checks, h.name());
            let s = Sampler::new(h.clone(), true, 3).unwrap();
            let free = free_hopf_module(&zero_left(&s.sample(&mut rng)).unwrap()).unwrap();
            let ff = fundamental_check(&free).unwrap();
            assert!(ff.is_iso, "{}", h.name());
            assert_pass(&ff.checks, h.name());
        }
    }

    #[test]
    fn cotensor_of_regular_modules_is_a_hopf_module() {
        for name in ["H4", "kZ2_omega", "kZ3_omega"] {
            let h: Ambient = Arc::new(zoo_all().into_iter().find(|h| h.name() == name).unwrap().as_ref().clone());
            let r = HopfModule::regular(h);
            let (m, c) = cotensor_hopf(&r, &r).unwrap();
            assert_pass(&c, name);
            assert_eq!(m.dim(), r.dim());
        }
    }

    #[test]
    fn tau_is_monoidal_on_small_pairs() {
        for h in zoo_all() {
            if h.dim() > 4 {
                continue;
            }
            let cs = chi_s(&h).unwrap();
            let r = Bicomodule::regular_right(h.clone());
            let c = check_tau_monoidal(&r, &r, &cs.structure.chi).unwrap();
            assert_pass(&c, h.name());
        }
    }

    #[test]
    fn rectangle_rejects_a_wrong_monoidal_structure() {
        let h: Ambient = Arc::new(zoo::cyclic_cocycle(3, Field::Prime(7).int(2)).unwrap());
        let r = Bicomodule::regular_right(h.clone());
        let circ = h.circ();
        let eps = Functional::counit(circ.coalgebra(), 2);
        let c = check_tau_monoidal(&r, &r, &eps).unwrap();
        assert!(c.failures().any(|f| f.name == "rectangle"));
    }

    #[test]
    fn size_guard_refuses_large_pairs() {
        let h: Ambient = Arc::new(zoo::symmetric_group_s3(Field::Rational).unwrap());
        let cs = chi_s(&h).unwrap();
        let r = Bicomodule::regular_right(h.clone());
        let big = r.direct_sum(&r).unwrap();
        assert!(matches!(check_tau_monoidal(&big, &big, &cs.structure.chi), Err(Error::TooLarge(..))));
    }
}
