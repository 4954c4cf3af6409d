use approx::assert_relative_eq;
use neutral_modes::corpus::goursat_kappa;
use neutral_modes::energetics::{total_density, Moduli};
use neutral_modes::holomorphic::{DomainSpec, Mobius};
use neutral_modes::neutrality::{area_preserving_moebius_check, make_bonnet};
use neutral_modes::weierstrass::WeierstrassSurface;
use num_complex::Complex64;
use proptest::prelude::*;

fn annulus_point() -> impl Strategy<Value = Complex64> {
    (-0.95f64..0.95, 0.0f64..std::f64::consts::TAU).prop_map(|(l, t)| Complex64::from_polar(l.exp(), t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shape_operator_determinant_is_gauss(m in 1i32..5, w in annulus_point()) {
        let s = WeierstrassSurface::bour(m, DomainSpec::standard_annulus()).unwrap();
        let f = s.tangent_frame_at(w).unwrap();
        let k = f.curvature();
        assert_relative_eq!(k.gauss, f.gauss(), max_relative = 1e-12);
        prop_assert!(k.mean.abs() <= 1e-12 * f.curvature_scale());
    }

    #[test]
    fn special_moebius_preserves_area(ar in -2.0f64..2.0, ai in -2.0f64..2.0, cr in -2.0f64..2.0, ci in -2.0f64..2.0) {
        let (a, c) = (Complex64::new(ar, ai), Complex64::new(cr, ci));
        prop_assume!(a.norm_sqr() + c.norm_sqr() > 1e-3);
        let m = Mobius::special(a, c).unwrap();
        let (a, b, c, d) = m.coefficients();
        prop_assert!(area_preserving_moebius_check(a, b, c, d).unwrap().area_preserving);
    }

    #[test]
    fn bonnet_rotation_costs_nothing(alpha in -3.2f64..3.2, w in annulus_point()) {
        let s = WeierstrassSurface::bour(2, DomainSpec::standard_annulus()).unwrap();
        let pair = make_bonnet(&s, alpha).unwrap();
        let e = total_density(&pair, w, &Moduli::unit()).unwrap();
        prop_assert!(e.w_s.abs() + e.w_d.abs() + e.w_b.abs() <= 1e-10);
    }

    #[test]
    fn goursat_densities_even_in_kappa(k in 0.2f64..3.0, w in annulus_point()) {
        let plus = total_density(&goursat_kappa(k).unwrap(), w, &Moduli::unit()).unwrap();
        let minus = total_density(&goursat_kappa(-k).unwrap(), w, &Moduli::unit()).unwrap();
        assert_relative_eq!(plus.w_s, minus.w_s, max_relative = 1e-12, epsilon = 1e-300);
        assert_relative_eq!(plus.w_d, minus.w_d, max_relative = 1e-12);
        assert_relative_eq!(plus.w_b, minus.w_b, max_relative = 1e-12, epsilon = 1e-300);
    }
}
