//! Coefficients of bracket polynomials from lattice-path counts, checked
//! against the interpolated polynomial.
//!
//! ```text
//! cargo run --example lattice_paths
//! ```

use drfaber::drbracket::bracket_polynomial;
use drfaber::lattice::{
    coeff_bracket, normalized_coefficient, w0, wi_bruteforce, wi_closed, CoeffKey, LatticePoint,
};
use drfaber::{MemoStore, Mode};

fn main() -> drfaber::Result<()> {
    let c = LatticePoint(vec![2, 1, 1]);
    println!("paths from {:?} to the origin: {}", c.0, w0(&c));
    for subset in [vec![1], vec![1, 2], vec![2, 3], vec![1, 2, 3]] {
        println!(
            "  ending at 1_{subset:?}: closed {} enumerated {}",
            wi_closed(&subset, &c)?,
            wi_bruteforce(&subset, &c)?
        );
    }

    // every coefficient of <[a1;1][a2;1][a3;0]>_2, two ways
    let store = MemoStore::new();
    let dvec = [1, 1, 0];
    let poly = bracket_polynomial(2, &dvec, Mode::Simplified, &store)?;
    println!("g=2 d={dvec:?}: {poly}");
    for (expo, _) in poly.terms() {
        let key = CoeffKey::new(2, expo.iter().copied().zip(dvec).collect());
        if key.entries.iter().any(|&(p, c)| p + c == 0) {
            // a point with neither multiplicity nor psi: outside the path formula
            continue;
        }
        let from_paths = coeff_bracket(&key)?;
        let from_poly = normalized_coefficient(&poly, expo)?;
        println!("  {:?}: paths {from_paths}, polynomial {from_poly}", key.entries);
        assert_eq!(from_paths, from_poly);
    }
    Ok(())
}
