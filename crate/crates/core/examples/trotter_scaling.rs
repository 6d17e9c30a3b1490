//! Trotter error of the 2x1 Loschmidt amplitude at t = 2 versus step size.

use qnetsim::hubbard::{trotter_terms, HubbardSpec};
use qnetsim::measure::{loschmidt_series, Engine, SeriesConfig};
use qnetsim::oracle::exact_loschmidt;
use qnetsim::state::StateVector;
use qnetsim::trotter::TrotterOrder;

fn main() -> qnetsim::Result<()> {
    let spec = HubbardSpec::new(2, 1, 1.0, 1.0, 4.0);
    let terms = trotter_terms(&spec)?;
    let phi = StateVector::basis_state(spec.modes(), 0b0110)?;
    let t = 2.0;
    println!("{:>8} {:>12} {:>12}", "dt", "first", "second");
    for k in [10, 20, 40, 80] {
        let dt = t / k as f64;
        let exact = exact_loschmidt(&phi, &spec, t, 2)?.values()[1];
        let err = |order| -> qnetsim::Result<f64> {
            let cfg = SeriesConfig {
                dt,
                stride: k,
                samples: 2,
                order,
                engine: Engine::Fused,
            };
            Ok((loschmidt_series(&phi, &terms, &cfg)?.values()[1] - exact).norm())
        };
        println!(
            "{dt:>8.4} {:>12.3e} {:>12.3e}",
            err(TrotterOrder::First)?,
            err(TrotterOrder::Second)?
        );
    }
    Ok(())
}
