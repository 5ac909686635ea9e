//! Brackets are polynomials in the multiplicities. This example interpolates
//! a few of them, then checks their shape.
//!
//! ```text
//! cargo run --example polynomials
//! ```

use drfaber::drbracket::{bracket_polynomial, degree0_part};
use drfaber::mpoly::{interpolate_grid, univariate_coefficients, MPoly};
use drfaber::numbase::rat;
use drfaber::{genusg_bracket, MemoStore, Mode, Part};

fn main() -> drfaber::Result<()> {
    let store = MemoStore::new();

    for g in 1..=2 {
        let p = bracket_polynomial(g, &[1, 0], Mode::Simplified, &store)?;
        println!("g={g} <[a1;1][a2;0]> = {p}");
        println!("  homogeneous of degree {}: {}", 2 * g, p.is_homogeneous_of_degree(2 * g));
    }

    // EXACT seeds shift only the constant term, which is -(n-1)!/prod d_i!
    let e = bracket_polynomial(1, &[1, 0], Mode::Exact, &store)?;
    println!("g=1 EXACT: {e}");
    println!("g=2 constant term for d=(1,1,0): {}", degree0_part(2, &[1, 1, 0], &store)?);

    // setting the last multiplicity to zero drops that point
    let i2 = bracket_polynomial(2, &[2, 0, 0], Mode::Simplified, &store)?;
    let i1 = bracket_polynomial(2, &[1, 0], Mode::Simplified, &store)?;
    println!("I_2(a, a1, 0) == I_1(a, a1) at g=2: {}", i2.substitute(2, &rat(0)) == i1);

    // a univariate slice: <[b;0][1;1]> - <[1+b;0]> = b^2 at genus 1
    let d = interpolate_grid(1, 2, |pt| {
        let b = pt[0];
        let lhs = genusg_bracket(1, &[Part::new(b, 0), Part::new(1, 1)], Mode::Simplified, &store);
        let rhs = genusg_bracket(1, &[Part::new(1 + b, 0)], Mode::Simplified, &store);
        lhs.unwrap() - rhs.unwrap()
    });
    let coeffs: Vec<String> = univariate_coefficients(&d).iter().map(|c| c.to_string()).collect();
    println!("D(b) coefficients by power of b: {coeffs:?}");
    assert_eq!(d, MPoly::variable(1, 0).pow(2));
    Ok(())
}
