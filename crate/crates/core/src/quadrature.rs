//! Globally adaptive 7/15-point Gauss–Kronrod quadrature for vectors of
//! complex integrands on a real interval.

#![allow(clippy::excessive_precision)]

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute error target per path segment.
pub const QUAD_TOL: f64 = 1e-10;

const MAX_INTERVALS: usize = 4000;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [Complex64; N],
    error: f64,
}

fn rule<const N: usize, F>(f: &F, a: f64, b: f64) -> Result<Panel<N>>
where
    F: Fn(f64) -> Result<[Complex64; N]>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let zero = Complex64::new(0.0, 0.0);
    let mut kronrod = [zero; N];
    let mut gauss = [zero; N];
    let mut accumulate = |x: f64, wk: f64, wg: Option<f64>| -> Result<()> {
        let fx = f(x)?;
        for n in 0..N {
            kronrod[n] += wk * fx[n];
            if let Some(wg) = wg {
                gauss[n] += wg * fx[n];
            }
        }
        Ok(())
    };
    for k in 0..7 {
        let wg = (k % 2 == 1).then(|| WG[k / 2]);
        accumulate(centre - half * XGK[k], WGK[k], wg)?;
        accumulate(centre + half * XGK[k], WGK[k], wg)?;
    }
    accumulate(centre, WGK[7], Some(WG[3]))?;
    let mut error: f64 = 0.0;
    for n in 0..N {
        kronrod[n] *= half;
        gauss[n] *= half;
        error = error.max((kronrod[n] - gauss[n]).norm());
    }
    if !error.is_finite() || kronrod.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::QuadratureFailed(error));
    }
    Ok(Panel { a, b, value: kronrod, error })
}

/// `∫_a^b f(t) dt` for each of the `N` components, refined by bisecting the
/// worst panel until the summed error estimate is at most `tol`.
pub fn integrate<const N: usize, F>(f: F, a: f64, b: f64, tol: f64) -> Result<[Complex64; N]>
where
    F: Fn(f64) -> Result<[Complex64; N]>,
{
    let mut panels = vec![rule(&f, a, b)?];
    loop {
        let total: f64 = panels.iter().map(|p| p.error).sum();
        if total <= tol {
            break;
        }
        if panels.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureFailed(total));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(k, _)| k)
            .expect("nonempty");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        panels.push(rule(&f, p.a, mid)?);
        panels.push(rule(&f, mid, p.b)?);
    }
    let mut sum = [Complex64::new(0.0, 0.0); N];
    // Sum in interval order so results do not depend on refinement history.
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    for p in &panels {
        for n in 0..N {
            sum[n] += p.value[n];
        }
    }
    Ok(sum)
}
