//! Evaluating brackets `<prod [a_i; d_i]>_g` by psi-elimination.
//!
//! ```text
//! cargo run --example brackets
//! ```

use drfaber::drbracket::{genus0_bracket, genusg_bracket_with_pivot};
use drfaber::{genusg_bracket, MemoStore, Mode, Part};

fn parts(v: &[(u64, u32)]) -> Vec<Part> {
    v.iter().map(|&p| p.into()).collect()
}

fn main() -> drfaber::Result<()> {
    let store = MemoStore::new();

    // genus 0 is a closed form: (n-2)!/prod d_i! when sum d = n-2
    println!("genus 0 [1:1, 1:0, 1:0] = {}", genus0_bracket(&parts(&[(1, 1), (1, 0), (1, 0)])));

    // the seeds: a^{2g} or a^{2g} - 1
    for mode in [Mode::Simplified, Mode::Exact] {
        let v = genusg_bracket(2, &parts(&[(3, 0)]), mode, &store)?;
        println!("g=2 [3:0] {mode:?} = {v}");
    }

    // one psi-power at genus 1: a^2 + 2 a a1 + 2 a1^2
    for (a, a1) in [(1, 1), (2, 3), (5, 1)] {
        let v = genusg_bracket(1, &parts(&[(a, 1), (a1, 0)]), Mode::Simplified, &store)?;
        println!("g=1 [{a}:1, {a1}:0] = {v}");
    }

    // the elimination order does not matter
    let p = parts(&[(2, 1), (3, 1), (4, 0)]);
    for pivot in 0..2 {
        let v = genusg_bracket_with_pivot(2, &p, pivot, Mode::Simplified, &store)?;
        println!("g=2 [2:1, 3:1, 4:0] eliminating part {pivot} first = {v}");
    }

    // psi-powers must sum to n - 1
    let err = genusg_bracket(1, &parts(&[(1, 2), (1, 0)]), Mode::Simplified, &store).unwrap_err();
    println!("g=1 [1:2, 1:0] -> error: {err}");

    println!("{} brackets memoized", store.len());
    Ok(())
}
