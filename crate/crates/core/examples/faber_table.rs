//! The integrals `int psi^d lambda_g lambda_{g-1}` for small genera, from
//! brackets, from lattice-path coefficients and from the closed form.
//!
//! ```text
//! cargo run --release --example faber_table
//! ```

use drfaber::faber::{
    closed_form_extended, integral_via_binomial, integral_via_coeff, positive_partitions,
    verify_range, ReductionSpec,
};
use drfaber::MemoStore;

fn main() -> drfaber::Result<()> {
    let store = MemoStore::new();
    println!("{:<4} {:<10} {:>10} {:>10} {:>10}", "g", "d", "binomial", "coeff", "closed");
    for g in 2..=4u32 {
        for n in 1..=3usize {
            for d in positive_partitions(g + n as u32 - 1, n) {
                let spec = ReductionSpec::unit(g, n);
                let b = integral_via_binomial(g, &d, &spec, &store)?;
                let c = integral_via_coeff(g, &d)?;
                let k = closed_form_extended(g, &d)?;
                println!("{g:<4} {:<10} {b:>10} {c:>10} {k:>10}", format!("{d:?}"));
            }
        }
    }

    let report = verify_range(2, 3, 2, &store);
    println!("\nverification report: {}", report.to_json());
    Ok(())
}
