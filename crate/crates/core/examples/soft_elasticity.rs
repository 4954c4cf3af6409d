//! Soft elasticity: a rigid rotation of the Riemann sphere combined with a
//! Bonnet rotation costs no energy in any mode.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};

use neutral_modes::corpus::soft_elasticity;
use neutral_modes::energetics::{total_density, Moduli};
use neutral_modes::neutrality::{classify, PROBE_MARGIN, TOL_EXACT};
use neutral_modes::Result;
use num_complex::Complex64;

fn main() -> Result<()> {
    let moduli = Moduli::new(3.0, 0.5, 10.0)?;
    for (label, a) in [("a = i", Complex64::new(0.0, 1.0)), ("a = 1", Complex64::new(1.0, 0.0))] {
        for alpha0 in [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_2] {
            let pair = soft_elasticity(a, Complex64::new(-1.0, 0.0), alpha0)?;
            let probes = pair.probe_points(200, PROBE_MARGIN);
            let mut sup: f64 = 0.0;
            for &w in &probes {
                sup = sup.max(total_density(&pair, w, &moduli)?.w_total.abs());
            }
            let class = classify(&pair, &probes, TOL_EXACT)?.classification;
            println!("{label}, c = -1, alpha0 = {alpha0:.4}: sup W = {sup:.2e}, {class}");
        }
    }
    Ok(())
}
