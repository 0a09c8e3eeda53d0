//! Frozen values, derived once from the linear-system oracles and kept as
//! regression anchors.

use std::sync::Arc;

use coquasi::comod::Ambient;
use coquasi::cqbialg::{chi_s, ChiSource};
use coquasi::linalg::Scalar;
use coquasi::radford::{hopf_specialize, integrals, Radford};
use coquasi::zoo;

fn get(name: &str) -> Ambient {
    Arc::new(zoo::standard().unwrap().into_iter().find(|h| h.name() == name).unwrap())
}

fn ints(h: &Ambient, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&c| h.field().int(c)).collect()
}

#[test]
fn h4_cointegral_modular_element_and_modular_function() {
    let h = get("H4");
    let r = Radford::new(&h).unwrap();
    assert_eq!(h.render(&r.modular.a), "g");
    assert_eq!(r.cointegrals.phi, ints(&h, &[0, 0, 0, 1]));
    let sg = r.sigma().unwrap();
    let hc = hopf_specialize(&r, &sg).unwrap();
    assert_eq!(h.render(&hc.integral), "x + gx");
    assert_eq!(h.render(&hc.right_integral), "x + -1*gx");
    assert_eq!(hc.omega, ints(&h, &[1, -1, 0, 0]));
    assert_eq!(sg.sigma, hc.omega_inv);
}

#[test]
fn h4_nakayama_is_minus_one_on_x() {
    let h = get("H4");
    let r = Radford::new(&h).unwrap();
    let n = &r.nakayama.matrix;
    assert_eq!(n.column(0), ints(&h, &[1, 0, 0, 0]));
    assert_eq!(n.column(1), ints(&h, &[0, -1, 0, 0]));
    assert_eq!(n.column(2), ints(&h, &[0, 0, -1, 0]));
    assert_eq!(n.column(3), ints(&h, &[0, 0, 0, 1]));
}

#[test]
fn taft3_values_over_f7() {
    let h = get("Taft3");
    let r = Radford::new(&h).unwrap();
    assert_eq!(h.render(&r.modular.a), "g");
    let sg = r.sigma().unwrap();
    assert_eq!(sg.sigma, ints(&h, &[1, 2, 4, 0, 0, 0, 0, 0, 0]));
    let left = integrals(&h, false);
    assert_eq!(left.len(), 1);
    let hc = hopf_specialize(&r, &sg).unwrap();
    assert_eq!(hc.omega, ints(&h, &[1, 4, 2, 0, 0, 0, 0, 0, 0]));
    assert!(!hc.s4_is_identity);
    let s = h.s().unwrap();
    assert!(s.pow(6).is_identity());
}

#[test]
fn group_algebras_and_twisted_cyclics_are_unimodular() {
    for name in ["kZ2", "kZ3", "kS3", "kZ2_omega", "kZ3_omega"] {
        let h = get(name);
        let r = Radford::new(&h).unwrap();
        assert_eq!(r.modular.a, h.unit(), "{name}");
        let mut delta_one = vec![h.field().zero(); h.dim()];
        delta_one[0] = h.field().one();
        assert_eq!(r.cointegrals.phi, delta_one, "{name}");
    }
}

#[test]
fn twisted_cyclic_sigma_values() {
    let h = get("kZ3_omega");
    let sg = Radford::new(&h).unwrap().sigma().unwrap();
    assert_eq!(sg.sigma, ints(&h, &[1, 2, 4]));
    assert_eq!(sg.gamma_mu, ints(&h, &[1, 4, 2]));
    let h = get("kZ2_omega");
    let sg = Radford::new(&h).unwrap().sigma().unwrap();
    assert_eq!(sg.sigma, ints(&h, &[1, 1]));
}

#[test]
fn chi_s_sources() {
    assert_eq!(chi_s(&get("H4")).unwrap().source, ChiSource::Formula);
    assert_eq!(chi_s(&get("kZ2_omega")).unwrap().source, ChiSource::Formula);
    let c = chi_s(&get("kZ3_omega")).unwrap();
    assert_eq!(c.source, ChiSource::FormulaSwapped);
    assert_eq!(c.discrepancies.len(), 1);
}
