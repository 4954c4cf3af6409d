//! The three ways to evaluate drilling and bending: closed forms, the
//! connectors, and finite differences of the polar rotation.

use neutral_modes::corpus::corpus;
use neutral_modes::energetics::{
    bending_closed_form, bending_connector, default_oracle_step, drilling_closed_form, drilling_connector,
    third_rank_oracle,
};
use neutral_modes::neutrality::PROBE_MARGIN;
use neutral_modes::Result;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn main() -> Result<()> {
    println!("{:<30} {:>12} {:>12} {:>12}", "pair", "connector", "oracle", "max Wd");
    for entry in corpus() {
        let pair = entry.build()?;
        let (mut conn, mut oracle, mut top) = (0.0f64, 0.0f64, 0.0f64);
        for w in pair.probe_points(50, PROBE_MARGIN) {
            let s = pair.state_at(w)?;
            let (wd, wb) = (drilling_closed_form(&s), bending_closed_form(&s));
            conn = conn.max(rel(drilling_connector(&s), wd)).max(rel(bending_connector(&s), wb));
            let o = third_rank_oracle(&pair, w, default_oracle_step(w))?;
            oracle = oracle.max(rel(o.w_d, wd)).max(rel(o.w_b, wb));
            top = top.max(wd);
        }
        println!("{:<30} {conn:>12.2e} {oracle:>12.2e} {top:>12.4}", entry.name);
    }
    Ok(())
}
