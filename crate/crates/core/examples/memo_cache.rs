//! Persisting the bracket memo between runs.
//!
//! ```text
//! cargo run --example memo_cache
//! ```

use drfaber::faber::{integral_via_binomial, ReductionSpec};
use drfaber::MemoStore;

fn main() -> drfaber::Result<()> {
    let path = std::env::temp_dir().join("drfaber-example-cache.txt");
    let spec = ReductionSpec::unit(3, 2);

    let cold = MemoStore::new();
    let v = integral_via_binomial(3, &[3, 1], &spec, &cold)?;
    cold.save(&path)?;
    println!("cold: value {v}, {} bracket evaluations", cold.evaluations());

    let warm = MemoStore::load(&path)?;
    let w = integral_via_binomial(3, &[3, 1], &spec, &warm)?;
    println!("warm: value {w}, {} bracket evaluations", warm.evaluations());
    assert_eq!(v, w);

    let text = std::fs::read_to_string(&path)?;
    println!("{} cache lines, first: {}", text.lines().count(), text.lines().next().unwrap_or(""));
    std::fs::remove_file(&path)?;
    Ok(())
}
