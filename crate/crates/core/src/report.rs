//! Named check results with witnesses, shared by every verification routine.

use serde::{Deserialize, Serialize};

use crate::linalg::{Matrix, Scalar};

/// First failing basis tuple of an identity together with both sides.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Witness {
    pub at: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check { name: name.into(), pass: true, witness: None, note: None }
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> Check {
        Check { name: name.into(), pass: false, witness: Some(witness), note: None }
    }

    /// A boolean outcome; failures carry `why` as their witness.
    pub fn flag(name: impl Into<String>, ok: bool, why: impl FnOnce() -> Witness) -> Check {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, why())
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    /// Prefixes the check name, for grouping sub-reports.
    pub fn scoped(mut self, scope: &str) -> Check {
        self.name = format!("{scope}.{}", self.name);
        self
    }
}

/// Ordered list of checks.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Checks(pub Vec<Check>);

impl Checks {
    pub fn new() -> Checks {
        Checks(Vec::new())
    }

    pub fn push(&mut self, c: Check) {
        self.0.push(c);
    }

    pub fn extend(&mut self, other: Checks) {
        self.0.extend(other.0);
    }

    pub fn extend_scoped(&mut self, scope: &str, other: Checks) {
        self.0.extend(other.0.into_iter().map(|c| c.scoped(scope)));
    }

    pub fn all_pass(&self) -> bool {
        self.0.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.0.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.0.iter().filter(|c| !c.pass)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Check> {
        self.0.iter()
    }
}

/// Renders a coordinate vector as a linear combination of named basis
/// vectors, e.g. `2*x + -1*g⊗x`.
pub fn render_vec(v: &[Scalar], name: &dyn Fn(usize) -> String) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| if c.is_one() { name(i) } else { format!("{}*{}", c, name(i)) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Basis-vector namer for a tensor product of based spaces.
pub fn tensor_names(factors: Vec<Vec<String>>) -> impl Fn(usize) -> String + Sync + Send {
    move |mut flat| {
        let mut parts = vec![String::new(); factors.len()];
        for (k, names) in factors.iter().enumerate().rev() {
            parts[k] = names[flat % names.len()].clone();
            flat /= names.len();
        }
        parts.join("⊗")
    }
}

/// Default names `e0, e1, …` for a based space.
pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Checks `lhs(i) == rhs(i)` for `i in 0..cases`, reporting the first
/// failing case with both sides rendered.
pub fn identity_check<E, L, R>(name: &str, cases: usize, eval: E, label: L, render: R) -> Check
where
    E: Fn(usize) -> (Vec<Scalar>, Vec<Scalar>) + Sync + Send,
    L: Fn(usize) -> String + Sync + Send,
    R: Fn(&[Scalar]) -> String + Sync + Send,
{
    let bad = crate::par::find_first(cases, |i| {
        let (l, r) = eval(i);
        if l == r {
            None
        } else {
            Some(Witness { at: label(i), lhs: render(&l), rhs: render(&r) })
        }
    });
    match bad {
        None => Check::pass(name),
        Some(w) => Check::fail(name, w),
    }
}

/// Scalar version of [`identity_check`].
pub fn scalar_check<E, L>(name: &str, cases: usize, eval: E, label: L) -> Check
where
    E: Fn(usize) -> (Scalar, Scalar) + Sync + Send,
    L: Fn(usize) -> String + Sync + Send,
{
    let bad = crate::par::find_first(cases, |i| {
        let (l, r) = eval(i);
        if l == r {
            None
        } else {
            Some(Witness { at: label(i), lhs: l.to_string(), rhs: r.to_string() })
        }
    });
    match bad {
        None => Check::pass(name),
        Some(w) => Check::fail(name, w),
    }
}

/// Column-by-column equality of two matrices of the same shape.
pub fn matrix_check(
    name: &str,
    lhs: &Matrix,
    rhs: &Matrix,
    domain: &(dyn Fn(usize) -> String + Sync),
    codomain: &(dyn Fn(usize) -> String + Sync),
) -> Check {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Check::fail(
            name,
            Witness {
                at: "shape".into(),
                lhs: format!("{}x{}", lhs.rows(), lhs.cols()),
                rhs: format!("{}x{}", rhs.rows(), rhs.cols()),
            },
        );
    }
    identity_check(
        name,
        lhs.cols(),
        |j| (lhs.column(j), rhs.column(j)),
        domain,
        |v| render_vec(v, codomain),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    #[test]
    fn renders_linear_combinations() {
        let f = Field::Rational;
        let names = tensor_names(vec![vec!["1".into(), "g".into()], vec!["1".into(), "g".into()]]);
        let v = vec![f.zero(), f.int(2), f.zero(), f.one()];
        assert_eq!(render_vec(&v, &names), "2*1⊗g + g⊗g");
        assert_eq!(render_vec(&[f.zero()], &names), "0");
    }

    #[test]
    fn identity_check_reports_first_failure() {
        let f = Field::Prime(7);
        let c = identity_check(
            "t",
            10,
            |i| (vec![f.int(i as i64)], vec![f.int(if i >= 4 { 0 } else { i as i64 })]),
            |i| format!("e{i}"),
            |v| v[0].to_string(),
        );
        assert!(!c.pass);
        assert_eq!(c.witness.unwrap().at, "e4");
    }
}
