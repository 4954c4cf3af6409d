//! Goursat transformations `h = κw` of Bour's surface `F = 1/w`: every mode
//! is active, and the densities depend on `|κ|` only.

use neutral_modes::corpus::{expected_goursat_kappa, goursat_kappa};
use neutral_modes::energetics::{total_density, Moduli};
use neutral_modes::Result;
use num_complex::Complex64;

fn main() -> Result<()> {
    let w = Complex64::new(0.0, 1.0);
    println!("at |w| = 1:");
    println!("{:>8} {:>12} {:>12} {:>12} {:>10}", "kappa", "Ws", "Wd", "Wb", "max dev");
    for kappa in [0.5, -0.5, 2.0 / 3.0, -2.0 / 3.0, 1.5, -1.5, 2.0] {
        let e = total_density(&goursat_kappa(kappa)?, w, &Moduli::unit())?;
        let closed = expected_goursat_kappa(kappa, w);
        let dev = [e.w_s, e.w_d, e.w_b].iter().zip(&closed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        println!("{kappa:>8.4} {:>12.8} {:>12.8} {:>12.8} {dev:>10.1e}", e.w_s, e.w_d, e.w_b);
    }
    println!("kappa = 2 expected (1/8, 36/25, 1296/625) = ({}, {}, {})", 1.0 / 8.0, 36.0 / 25.0, 1296.0 / 625.0);
    Ok(())
}
