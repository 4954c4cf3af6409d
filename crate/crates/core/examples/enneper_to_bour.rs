//! Enneper's surface deformed into Bour's surface of index 3.
//!
//! `F = 1`, `F* = w`, `h = id`: no bending, stretching `2(|w| − 1)²` and
//! drilling `16/((1 + |w|²)²|w|²)`.

use neutral_modes::corpus::{enneper_to_bour3, expected_enneper_bour3};
use neutral_modes::energetics::{total_density, Moduli};
use neutral_modes::neutrality::{classify, PROBE_MARGIN, TOL_EXACT};
use neutral_modes::Result;
use num_complex::Complex64;

fn main() -> Result<()> {
    let pair = enneper_to_bour3()?;
    println!("{:>6} {:>12} {:>12} {:>12} {:>12} {:>10}", "|w|", "Ws", "Ws closed", "Wd", "Wd closed", "Wb");
    for rho in [0.4, 0.7, 1.0, 1.5, 2.5] {
        let w = Complex64::from_polar(rho, 0.9);
        let e = total_density(&pair, w, &Moduli::unit())?;
        let [s, d, _] = expected_enneper_bour3(w);
        println!("{rho:>6.2} {:>12.8} {s:>12.8} {:>12.8} {d:>12.8} {:>10.1e}", e.w_s, e.w_d, e.w_b);
    }
    let report = classify(&pair, &pair.probe_points(128, PROBE_MARGIN), TOL_EXACT)?;
    println!("classification: {} (bending residual {:.1e})", report.classification, report.bending_residual);
    Ok(())
}
