//! Moving between the two integral shapes with the string equation:
//! `G(d) = sum_j F(d - e_j)`, where `G` carries an extra `psi^0` point.
//!
//! ```text
//! cargo run --example string_inversion
//! ```

use drfaber::faber::{
    closed_form_original, faber_original, positive_partitions, string_forward, Pathway,
};
use drfaber::MemoStore;

fn main() -> drfaber::Result<()> {
    let store = MemoStore::new();

    let f11 = faber_original(2, &[1, 1], Pathway::Binomial, &store)?;
    let f20 = faber_original(2, &[2, 0], Pathway::Binomial, &store)?;
    let g21 = string_forward(2, &[2, 1], Pathway::Binomial, &store)?;
    println!("g=2: F(1,1) + F(2,0) = {f11} + {f20} = G(2,1) = {g21}");

    for g in 2..=4u32 {
        for n in 1..=3usize {
            for d in positive_partitions(g + n as u32 - 2, n) {
                let via_brackets = faber_original(g, &d, Pathway::Binomial, &store)?;
                let via_paths = faber_original(g, &d, Pathway::Coeff, &store)?;
                let ratio = closed_form_original(g, &d)?;
                println!("g={g} F{d:?} = {via_brackets} (paths {via_paths}, closed {ratio})");
            }
        }
    }
    Ok(())
}
