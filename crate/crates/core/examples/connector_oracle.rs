//! Central differences of the moving frames against the closed-form spin
//! and curvature connectors, for a source surface and a deformed frame.

use neutral_modes::connectors::{
    connectors_from_gradients, fd_source_gradients, fd_starred_gradients, source_connectors, starred_connectors,
    FrameTag, OrthonormalFrame,
};
use neutral_modes::corpus::goursat_kappa;
use neutral_modes::Result;

fn main() -> Result<()> {
    let pair = goursat_kappa(2.0)?;
    let (mut src, mut star) = (0.0f64, 0.0f64);
    for w in pair.probe_points(25, 0.05) {
        let step = 1e-5 * w.norm().max(1.0);
        let frame = OrthonormalFrame::from(&pair.source().tangent_frame_at(w)?);
        let fd = connectors_from_gradients(&fd_source_gradients(pair.source(), w, step)?, &frame, FrameTag::Source);
        src = src.max(fd.max_abs_diff(&source_connectors(pair.source(), w)?));

        let frame = OrthonormalFrame::starred(&pair.state_at(w)?);
        let fd = connectors_from_gradients(&fd_starred_gradients(&pair, w, step)?, &frame, FrameTag::StarredUv);
        star = star.max(fd.max_abs_diff(&starred_connectors(&pair, w)?));
    }
    println!("max |FD - closed form|: source frame {src:.2e}, deformed frame {star:.2e}");

    let w = num_complex::Complex64::new(0.0, 1.0);
    let c = starred_connectors(&pair, w)?;
    println!("at w = i: c* = {:.5?}, |d*|^2 = {:.6}", c.c.as_slice(), c.curvature_norm_sqr());
    Ok(())
}
