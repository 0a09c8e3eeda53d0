//! Worked examples: group algebras, Sweedler's H₄, Taft algebras and cyclic
//! groups twisted by a 3-cocycle, plus deliberately broken variants.

use crate::coalg::{Coalgebra, Functional};
use crate::cqbialg::{Antipode, CoquasiBialgebra};
use crate::engine::Lin;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// Group algebra 𝕜G from a multiplication table on `0..n` (φ trivial).
pub fn group_algebra(name: &str, names: Vec<String>, table: &[Vec<usize>], field: Field) -> Result<CoquasiBialgebra> {
    let n = table.len();
    if names.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) {
        return Err(Error::NotAGroup("table is not square over 0..n".into()));
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup(format!("({a}{b}){c} != {a}({b}{c})")));
                }
            }
        }
    }
    let inv: Vec<usize> = (0..n)
        .map(|g| (0..n).find(|&h| table[g][h] == e).ok_or_else(|| Error::NotAGroup(format!("{g} has no inverse"))))
        .collect::<Result<_>>()?;
    let coalg = Coalgebra::new(field, names, (0..n).map(|g| vec![(g, g, field.one())]).collect(), vec![field.one(); n])?;
    let prod: Lin = (0..n * n).map(|ab| vec![(table[ab / n][ab % n], field.one())]).collect();
    let mut unit = vec![field.zero(); n];
    unit[e] = field.one();
    let mut s = Matrix::zeros(field, n, n);
    for g in 0..n {
        s.set(inv[g], g, field.one());
    }
    let phi = Functional::counit(&coalg, 3);
    let eps = vec![field.one(); n];
    CoquasiBialgebra::new(name, coalg, prod, unit, phi, Some(Antipode { s, alpha: eps.clone(), beta: eps }))
}

fn cyclic_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect()
}

/// 𝕜ℤ/n.
pub fn cyclic_group(n: usize, field: Field) -> Result<CoquasiBialgebra> {
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    group_algebra(&format!("kZ{n}"), cyclic_names(n), &table, field)
}

/// 𝕜S₃ with basis e, (12), (13), (23), (123), (132).
pub fn symmetric_group_s3(field: Field) -> Result<CoquasiBialgebra> {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"].iter().map(|s| s.to_string()).collect();
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    // (στ)(i) = σ(τ(i))
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|s| perms.iter().map(|t| idx([s[t[0]], s[t[1]], s[t[2]]])).collect())
        .collect();
    group_algebra("kS3", names, &table, field)
}

/// Checks that q is a primitive n-th root of unity.
fn check_root(q: &Scalar, n: usize) -> Result<()> {
    let field = q.field();
    let mut p = field.one();
    for k in 1..=n {
        p = &p * q;
        if p.is_one() && k < n {
            return Err(Error::BadRoot(format!("{q} has order {k} < {n}")));
        }
    }
    if !p.is_one() {
        return Err(Error::BadRoot(format!("{q}^{n} != 1")));
    }
    Ok(())
}

/// Taft algebra T_n(q): g^n = 1, x^n = 0, xg = q·gx, Δg = g⊗g,
/// Δx = x⊗1 + g⊗x. Basis g^i x^j at index j·n + i.
pub fn taft(n: usize, q: Scalar) -> Result<CoquasiBialgebra> {
    if n < 2 {
        return Err(Error::BadRoot("Taft algebras need n >= 2".into()));
    }
    check_root(&q, n)?;
    let field = q.field();
    let dim = n * n;
    let idx = |i: usize, j: usize| j * n + i;
    let names: Vec<String> = (0..dim)
        .map(|t| {
            let (i, j) = (t % n, t / n);
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
            if i == 0 && j == 0 {
                "1".into()
            } else {
                format!("{g}{x}")
            }
        })
        .collect();
    let qpow = |e: usize| q.pow(e as i64).expect("nonzero root");
    // (g^a x^b)(g^c x^d) = q^{bc} g^{a+c} x^{b+d}
    let mut prod: Lin = vec![Vec::new(); dim * dim];
    for s in 0..dim {
        for t in 0..dim {
            let (a, b) = (s % n, s / n);
            let (c, d) = (t % n, t / n);
            if b + d < n {
                prod[s * dim + t] = vec![(idx((a + c) % n, b + d), qpow(b * c))];
            }
        }
    }
    let mul = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![field.zero(); dim];
        for (s, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                for (k, c) in &prod[s * dim + t] {
                    out[*k].add_mul(&(x * y), c);
                }
            }
        }
        out
    };
    let basis = |t: usize| {
        let mut v = vec![field.zero(); dim];
        v[t] = field.one();
        v
    };
    // Δ on H⊗H as dim²-vectors, multiplied componentwise.
    let mul2 = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![field.zero(); dim * dim];
        for (s, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                let (s1, s2) = (s / dim, s % dim);
                let (t1, t2) = (t / dim, t % dim);
                for (k1, c1) in &prod[s1 * dim + t1] {
                    for (k2, c2) in &prod[s2 * dim + t2] {
                        out[k1 * dim + k2].add_mul(&xy, &(c1 * c2));
                    }
                }
            }
        }
        out
    };
    let g = idx(1, 0);
    let x = idx(0, 1);
    let one = idx(0, 0);
    let mut dg = vec![field.zero(); dim * dim];
    dg[g * dim + g] = field.one();
    let mut dx = vec![field.zero(); dim * dim];
    dx[x * dim + one] = field.one();
    dx[g * dim + x] = field.one();
    let mut d1 = vec![field.zero(); dim * dim];
    d1[one * dim + one] = field.one();
    let mut delta = Vec::with_capacity(dim);
    for t in 0..dim {
        let (i, j) = (t % n, t / n);
        let mut acc = d1.clone();
        for _ in 0..i {
            acc = mul2(&acc, &dg);
        }
        for _ in 0..j {
            acc = mul2(&acc, &dx);
        }
        delta.push(
            acc.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k / dim, k % dim, c.clone()))
                .collect(),
        );
    }
    let counit: Vec<Scalar> = (0..dim).map(|t| if t / n == 0 { field.one() } else { field.zero() }).collect();
    let coalg = Coalgebra::new(field, names, delta, counit.clone())?;
    // S(g) = g^{n-1}, S(x) = -g^{n-1}x, S antimultiplicative.
    let sg = basis(idx(n - 1, 0));
    let sx: Vec<Scalar> = basis(idx(n - 1, 1)).iter().map(|c| -c).collect();
    let mut cols = Vec::with_capacity(dim);
    for t in 0..dim {
        let (i, j) = (t % n, t / n);
        let mut acc = basis(one);
        for _ in 0..j {
            acc = mul(&acc, &sx);
        }
        for _ in 0..i {
            acc = mul(&acc, &sg);
        }
        cols.push(acc);
    }
    let s = Matrix::from_columns(field, dim, &cols);
    let phi = Functional::counit(&coalg, 3);
    let name = if n == 2 { "H4".to_string() } else { format!("Taft{n}") };
    CoquasiBialgebra::new(name, coalg, prod, basis(one), phi, Some(Antipode { s, alpha: counit.clone(), beta: counit }))
}

/// Sweedler's four-dimensional Hopf algebra (basis 1, g, x, gx).
pub fn sweedler_h4(field: Field) -> Result<CoquasiBialgebra> {
    if field.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    taft(2, field.int(-1))
}

/// 𝕜ℤ/n with associator φ(gⁱ,gʲ,gᵏ) = ζ^{i⌊(j+k)/n⌋}, α = ε and
/// β(gⁱ) = φ(gⁱ,g⁻ⁱ,gⁱ).
pub fn cyclic_cocycle(n: usize, zeta: Scalar) -> Result<CoquasiBialgebra> {
    check_root(&zeta, n)?;
    let field = zeta.field();
    let base = cyclic_group(n, field)?;
    let phi_val = |i: usize, j: usize, k: usize| zeta.pow((i * ((j + k) / n)) as i64).expect("nonzero");
    let phi = Functional::from_fn(field, n, 3, |t| phi_val(t[0], t[1], t[2]));
    let beta: Vec<Scalar> = (0..n).map(|i| phi_val(i, (n - i) % n, i)).collect();
    let mut a = base.antipode()?.clone();
    a.beta = beta;
    Ok(base.with_phi(phi)?.with_antipode(Some(a))?.with_name(format!("kZ{n}_omega")))
}

/// The seven standard examples, in a fixed order.
pub fn standard() -> Result<Vec<CoquasiBialgebra>> {
    let q = Field::Rational;
    let f7 = Field::prime(7)?;
    Ok(vec![
        cyclic_group(2, q)?,
        cyclic_group(3, f7)?,
        symmetric_group_s3(q)?,
        sweedler_h4(q)?,
        taft(3, f7.int(2))?,
        cyclic_cocycle(2, q.int(-1))?,
        cyclic_cocycle(3, f7.int(2))?,
    ])
}

/// Looks up a zoo member by name with optional parameters.
pub fn by_name(name: &str, n: Option<usize>, field: Option<Field>, root: Option<i64>) -> Result<CoquasiBialgebra> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "kz2" | "z2" => cyclic_group(2, field.unwrap_or(Field::Rational)),
        "kz3" | "z3" => cyclic_group(3, field.unwrap_or(Field::Prime(7))),
        "cyclic-group" | "group" => cyclic_group(n.unwrap_or(2), field.unwrap_or(Field::Rational)),
        "ks3" | "s3" => symmetric_group_s3(field.unwrap_or(Field::Rational)),
        "h4" | "sweedler" => sweedler_h4(field.unwrap_or(Field::Rational)),
        "taft" | "taft3" => {
            let f = field.unwrap_or(Field::Prime(7));
            taft(n.unwrap_or(3), f.int(root.unwrap_or(2)))
        }
        "kz2_omega" | "z2_omega" => cyclic_cocycle(2, field.unwrap_or(Field::Rational).int(root.unwrap_or(-1))),
        "kz3_omega" | "z3_omega" => {
            let f = field.unwrap_or(Field::Prime(7));
            cyclic_cocycle(3, f.int(root.unwrap_or(2)))
        }
        "cyclic" => {
            let n = n.unwrap_or(2);
            let f = field.unwrap_or(if n == 2 { Field::Rational } else { Field::Prime(7) });
            let default_root = if n == 2 { -1 } else { 2 };
            cyclic_cocycle(n, f.int(root.unwrap_or(default_root)))
        }
        _ => Err(Error::Validation(format!("unknown zoo member {name}"))),
    }
}

/// Names accepted by [`by_name`] for the standard list.
pub const STANDARD_NAMES: [&str; 7] = ["kZ2", "kZ3", "kS3", "H4", "Taft3", "kZ2_omega", "kZ3_omega"];

/// H₄ with ε(x) = 1: violates the counit law.
pub fn broken_h4_counit() -> Result<CoquasiBialgebra> {
    let h = sweedler_h4(Field::Rational)?;
    let c = h.coalgebra();
    let mut counit = c.counit().to_vec();
    counit[2] = Field::Rational.one();
    let coalg = Coalgebra::new(c.field(), c.names().to_vec(), c.delta().clone(), counit)?;
    CoquasiBialgebra::new("H4_bad_counit", coalg, h.prod().clone(), h.unit().to_vec(), h.phi().clone(), Some(h.antipode()?.clone()))
}

/// 𝕜ℤ/2 with φ(g,g,g) = −1 and also φ(1,g,g) = −1: not normalized.
pub fn denormalized_z2_cocycle() -> Result<CoquasiBialgebra> {
    let q = Field::Rational;
    let h = cyclic_cocycle(2, q.int(-1))?;
    let phi = Functional::from_fn(q, 2, 3, |t| {
        if t == [1, 1, 1] || t == [0, 1, 1] {
            q.int(-1)
        } else {
            q.one()
        }
    });
    Ok(h.with_phi(phi)?.with_name("kZ2_omega_denormalized"))
}

/// 𝕜ℤ/2_ω with β replaced by ε: violates the antipode equations.
pub fn z2_cocycle_trivial_beta() -> Result<CoquasiBialgebra> {
    let h = cyclic_cocycle(2, Field::Rational.int(-1))?;
    let mut a = h.antipode()?.clone();
    a.beta = h.counit().to_vec();
    Ok(h.with_antipode(Some(a))?.with_name("kZ2_omega_trivial_beta"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taft_two_is_h4_pattern() {
        let h = sweedler_h4(Field::Rational).unwrap();
        assert_eq!(h.names(), &["1", "g", "x", "gx"]);
        let s = h.s().unwrap();
        // S(x) = -gx, S(gx) = x
        assert_eq!(h.render(&s.column(2)), "-1*gx");
        assert_eq!(h.render(&s.column(3)), "x");
        assert!(s.pow(4).is_identity());
        assert!(!s.pow(2).is_identity());
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert_eq!(sweedler_h4(Field::Prime(2)).unwrap_err(), Error::CharTwo);
        assert!(matches!(taft(3, Field::Prime(7).int(1)), Err(Error::BadRoot(_))));
        assert!(matches!(cyclic_cocycle(3, Field::Prime(7).int(3)), Err(Error::BadRoot(_))));
        let not_group = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            group_algebra("x", vec!["a".into(), "b".into()], &not_group, Field::Rational),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn cocycle_values() {
        let h = cyclic_cocycle(2, Field::Rational.int(-1)).unwrap();
        assert_eq!(h.phi().at(&[1, 1, 1]), &Field::Rational.int(-1));
        assert_eq!(h.beta().unwrap()[1], Field::Rational.int(-1));
    }
}
