//! Randomized invariants. Each property draws a seed or small parameters and
//! checks an identity that must hold exactly.

use std::sync::Arc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use coquasi::cli::file::{emit_algebra, parse_algebra_str};
use coquasi::coalg::{conv_inverse, convolve, Functional};
use coquasi::comod::{check_triangles, Ambient, Sampler};
use coquasi::hopfmod::{check_tau, tau};
use coquasi::linalg::{Field, Scalar};
use coquasi::radford::harpoons;
use coquasi::zoo;

fn get(name: &str) -> Ambient {
    Arc::new(zoo::standard().unwrap().into_iter().find(|h| h.name() == name).unwrap())
}

fn scalar(f: Field, num: i64, den: i64) -> Scalar {
    let n = f.int(num);
    match f.int(den).inv() {
        Some(d) => &n * &d,
        None => n,
    }
}

fn small_field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), prop::sample::select(vec![2u64, 3, 5, 7, 13, 101, 65521])
        .prop_map(|p| Field::prime(p).unwrap())]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn field_operations_are_exact(
        f in small_field(),
        a in (-50i64..50, 1i64..20),
        b in (-50i64..50, 1i64..20),
        c in (-50i64..50, 1i64..20),
    ) {
        let (a, b, c) = (scalar(f, a.0, a.1), scalar(f, b.0, b.1), scalar(f, c.0, c.1));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Some(ai) = a.inv() {
            prop_assert!((&a * &ai).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(Scalar::parse(f, &a.to_canonical()).unwrap(), a);
    }
}

fn random_functional(h: &Ambient, rng: &mut StdRng, invertible_on: usize) -> Functional {
    let f = h.field();
    let values = (0..h.dim())
        .map(|i| {
            let v = if i < invertible_on { rng.gen_range(1..7) } else { rng.gen_range(-3..4) };
            f.int(v)
        })
        .collect();
    Functional::new(f, h.dim(), 1, values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// On Taft3 the group-likes are the first three basis vectors, so any
    /// functional that is nonzero there is convolution invertible.
    #[test]
    fn convolution_inverse_is_an_involution(seed in any::<u64>()) {
        let h = get("Taft3");
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_functional(&h, &mut rng, 3);
        let g = conv_inverse(h.coalgebra(), &f).unwrap();
        prop_assert_eq!(conv_inverse(h.coalgebra(), &g).unwrap(), f.clone());
        prop_assert!(convolve(h.coalgebra(), &f, &g).unwrap().is_counit(h.coalgebra()));
    }

    /// x ↦ x₁r(x₂) turns convolution into composition.
    #[test]
    fn harpoons_compose_by_convolution(seed in any::<u64>()) {
        let h = get("Taft3");
        let mut rng = StdRng::seed_from_u64(seed);
        let r1 = random_functional(&h, &mut rng, 0);
        let r2 = random_functional(&h, &mut rng, 0);
        let eps = h.counit().to_vec();
        let lhs = harpoons(&h, &eps, r2.values()).dot(&harpoons(&h, &eps, r1.values()));
        let r21 = convolve(h.coalgebra(), &r2, &r1).unwrap();
        prop_assert_eq!(lhs, harpoons(&h, &eps, r21.values()));
    }
}


proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn sampled_bicomodules_have_rigid_duals(
        name in prop::sample::select(vec!["H4", "kZ2_omega", "kZ3_omega", "kS3"]),
        seed in any::<u64>(),
    ) {
        let h = get(name);
        let m = Sampler::new(h, false, 4).unwrap().sample(&mut StdRng::seed_from_u64(seed));
        prop_assert!(m.check().all_pass());
        let checks = check_triangles(&m).unwrap();
        prop_assert!(checks.all_pass(), "{:?}", checks.failures().next());
    }

    #[test]
    fn sampled_comodules_have_invertible_tau(
        name in prop::sample::select(vec!["H4", "kZ2_omega", "kZ3_omega", "Taft3"]),
        seed in any::<u64>(),
    ) {
        let h = get(name);
        let m = Sampler::new(h, true, 3).unwrap().sample(&mut StdRng::seed_from_u64(seed));
        let checks = check_tau(&tau(&m).unwrap()).unwrap();
        prop_assert!(checks.all_pass(), "{:?}", checks.failures().next());
    }

    /// Twisted cyclic algebras kℤ/3 over 𝔽_p for every p ≡ 1 mod 3 in range,
    /// with either primitive cube root.
    #[test]
    fn twisted_cyclic_family_is_valid_and_round_trips(
        p in prop::sample::select(vec![7u64, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97]),
        pick in 0usize..2,
    ) {
        let f = Field::prime(p).unwrap();
        let roots: Vec<i64> = (2..p as i64).filter(|&x| f.int(x).pow(3).unwrap().is_one()).collect();
        prop_assert_eq!(roots.len(), 2);
        let h = zoo::cyclic_cocycle(3, f.int(roots[pick])).unwrap();
        prop_assert!(h.check().all_pass());
        prop_assert!(h.check_antipode().all_pass());
        let text = emit_algebra(&h);
        prop_assert_eq!(emit_algebra(&parse_algebra_str(&text).unwrap()), text);
    }
}
