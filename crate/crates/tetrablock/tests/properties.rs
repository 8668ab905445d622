//! Property-based invariants across modules.

use num_complex::Complex64;
use proptest::prelude::*;

use tetrablock::autgroup::{diamond, TetraAutomorphism};
use tetrablock::foliation::{beta_coords, BetaLeaf};
use tetrablock::membership;
use tetrablock::numerics::{mobius_matrix, psi, DiscAutomorphism, Matrix2};
use tetrablock::schwarz::{self, phi_at, TangentTarget};
use tetrablock::TetraPoint;

fn complex_in(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(move |(r, t)| {
        Complex64::from_polar(radius * r.sqrt(), t)
    })
}

fn unimodular() -> impl Strategy<Value = Complex64> {
    (0.0..std::f64::consts::TAU).prop_map(|t| Complex64::from_polar(1.0, t))
}

fn contraction(cap: f64) -> impl Strategy<Value = Matrix2> {
    (
        complex_in(1.0),
        complex_in(1.0),
        complex_in(1.0),
        complex_in(1.0),
        0.05..1.0f64,
    )
        .prop_map(move |(a, b, c, d, s)| {
            let m = Matrix2::new(a, b, c, d);
            let n = m.op_norm().max(1e-9);
            m.scale((cap * s / n).into())
        })
}

fn disc_automorphism() -> impl Strategy<Value = DiscAutomorphism> {
    (unimodular(), complex_in(0.93))
        .prop_map(|(w, a)| DiscAutomorphism::new(w, a).unwrap())
}

/// Member of the domain built from admissible leaf coordinates.
fn member() -> impl Strategy<Value = TetraPoint> {
    (0.0..0.95f64, 0.0..1.0f64, complex_in(0.95), unimodular(), unimodular()).prop_map(
        |(s, split, lam, p1, p2)| {
            let b1 = p1 * (s * split);
            let b2 = p2 * (s * (1.0 - split));
            TetraPoint::new(b1 + b2.conj() * lam, b2 + b1.conj() * lam, lam)
        },
    )
}

fn tangent_target() -> impl Strategy<Value = TangentTarget> {
    (complex_in(1.0), complex_in(1.0), complex_in(1.0), 0.0..1.0f64).prop_map(
        |(y1, y2, y3, norm)| {
            let y = TangentTarget::new(y1, y2, y3);
            let n = schwarz::indicatrix_norm(&y).max(1e-9);
            let s = norm / n;
            TangentTarget::new(y.y1 * s, y.y2 * s, y.y3 * s)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mobius_matrix_is_a_ball_automorphism(
        z in contraction(0.85),
        x in contraction(0.95),
    ) {
        let y = mobius_matrix(&z, &x).unwrap();
        prop_assert!(y.op_norm() < 1.0);
        let back = mobius_matrix(&(-z), &y).unwrap();
        prop_assert!(back.max_abs_diff(&x) < 1e-9);
    }

    #[test]
    fn psd_sqrt_round_trips(m in contraction(2.0)) {
        let psd = m.adjoint() * m;
        let root = psd.psd_sqrt().unwrap();
        prop_assert!((root * root).max_abs_diff(&psd) < 1e-12);
    }

    #[test]
    fn disc_automorphism_preserves_the_circle(u in disc_automorphism()) {
        for k in 0..64 {
            let z = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 64.0);
            prop_assert!((u.apply(z).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn disc_composition_is_pointwise_composition(
        u in disc_automorphism(),
        v in disc_automorphism(),
        z in complex_in(0.97),
    ) {
        let uv = u.compose(&v);
        prop_assert!((uv.apply(z) - u.apply(v.apply(z))).norm() < 1e-11);
        let round = u.compose(&u.inverse());
        prop_assert!((round.apply(z) - z).norm() < 1e-11);
    }

    #[test]
    fn membership_inequality_is_flip_invariant(
        x1 in complex_in(1.3),
        x2 in complex_in(1.3),
        x3 in complex_in(1.3),
    ) {
        let x = TetraPoint::new(x1, x2, x3);
        let (v, _) = membership::by_inequality(&x);
        let (vf, _) = membership::by_inequality(&x.flip());
        prop_assert_eq!(v, vf);
    }

    #[test]
    fn members_recover_their_leaf(x in member()) {
        let (leaf, lam) = beta_coords(&x).unwrap();
        prop_assert!(leaf.point_at(lam).max_abs_diff(&x) < 1e-12);
        prop_assert!(leaf.beta1().norm() + leaf.beta2().norm() < 1.0);
    }

    #[test]
    fn diamond_composes_linear_fractional_maps(
        x in member(),
        y in member(),
        z in complex_in(0.95),
    ) {
        let xy = diamond(&x, &y).unwrap();
        let lhs = psi(z, &xy).unwrap();
        let rhs = psi(psi(z, &y).unwrap(), &x).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-11);
    }

    #[test]
    fn group_action_preserves_membership(x in member(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = TetraAutomorphism::random(&mut rng);
        let gx = g.apply(&x).unwrap();
        let (inside, _) = membership::by_inequality(&gx);
        prop_assert!(inside);
        let back = g.inverse().apply(&gx).unwrap();
        prop_assert!(back.max_abs_diff(&x) < 1e-10);
    }

    #[test]
    fn interpolant_is_flip_equivariant(y in tangent_target(), z in complex_in(0.99)) {
        let a = phi_at(&y.flip(), z).unwrap();
        let b = phi_at(&y, z).unwrap().flip();
        prop_assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn leaf_points_stay_in_the_domain(
        s in 0.0..0.95f64,
        split in 0.0..1.0f64,
        p1 in unimodular(),
        p2 in unimodular(),
        lam in complex_in(0.95),
    ) {
        let leaf = BetaLeaf::new(p1 * (s * split), p2 * (s * (1.0 - split))).unwrap();
        let x = leaf.point_at(lam);
        prop_assert!(membership::by_inequality(&x).0);
        prop_assert!(membership::by_beta(&x));
    }
}
