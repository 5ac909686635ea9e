//! Double ramification brackets `<prod [a_i; d_i]>_g`.
//!
//! A bracket with some positive psi-power is reduced by the genus-0
//! topological recursion on the DR cycle: pick a part `[a; d+1]`, and for
//! every ordered split `I ⊔ J` of the remaining parts
//!
//! ```text
//! a (2g+n) <[a;d+1] prod[a_i;d_i]>_g =
//!   sum_{I ⊔ J} (a+A_J) |I|       <[a+A_J;0] I>_0   <[a;d] J>_g
//!             - A_J (2g+|J|-1)    <[a;d][A_J;0] I>_0 <J>_g
//!             + (a+A_J) (2g+|I|)  <[a+A_J;0] I>_g   <[a;d] J>_0
//!             - A_J (|J|-1)       <[a;d][A_J;0] I>_g <J>_0
//! ```
//!
//! with `A_J = sum_{j in J} a_j`, until only the one-part seeds `<[a;0]>_g`
//! remain. Genus-0 factors are closed form. Terms carrying the factor `A_J`
//! are skipped when `J` is empty, so no multiplicity-zero part is ever built.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mpoly::{try_interpolate_grid, MPoly};
use crate::numbase::{factorial, from_biguint, parse_rational, Rational};

/// One column `[a; d]` of a bracket: multiplicity `a >= 1`, psi-power `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Part {
    pub a: u64,
    pub d: u32,
}

impl Part {
    pub const fn new(a: u64, d: u32) -> Self {
        Self { a, d }
    }
}

impl From<(u64, u32)> for Part {
    fn from((a, d): (u64, u32)) -> Self {
        Self { a, d }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.a, self.d)
    }
}

/// Initial values of the recursion, both normalized to `C_g = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// `<[a;0]>_g = a^{2g}`
    Simplified,
    /// `<[a;0]>_g = a^{2g} - 1`
    Exact,
}

impl Mode {
    pub fn seed(self, g: u32, a: u64) -> Rational {
        let top = Rational::from_integer(num_traits::pow(BigInt::from(a), 2 * g as usize));
        match self {
            Mode::Simplified => top,
            Mode::Exact => top - Rational::one(),
        }
    }

    fn tag(self) -> char {
        match self {
            Mode::Simplified => 'S',
            Mode::Exact => 'E',
        }
    }

    fn from_tag(s: &str) -> Option<Self> {
        match s {
            "S" => Some(Mode::Simplified),
            "E" => Some(Mode::Exact),
            _ => None,
        }
    }
}

/// Canonical memo key: parts sorted descending by `(a, d)`, so every
/// permutation of the same multiset maps to the same key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketKey {
    pub g: u32,
    pub parts: Vec<Part>,
    pub mode: Mode,
}

impl BracketKey {
    pub fn new(g: u32, parts: &[Part], mode: Mode) -> Self {
        let mut parts = parts.to_vec();
        parts.sort_unstable_by(|x, y| y.cmp(x));
        Self { g, parts, mode }
    }

    pub fn to_line(&self, value: &Rational) -> String {
        let parts: Vec<String> = self.parts.iter().map(Part::to_string).collect();
        format!(
            "v1\tg={}\tmode={}\tparts={}\tvalue={}",
            self.g,
            self.mode.tag(),
            parts.join(","),
            value
        )
    }

    pub fn from_line(line: &str) -> std::result::Result<(Self, Rational), String> {
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.first() {
            Some(&"v1") => {}
            Some(v) => return Err(format!("unsupported cache version '{v}'")),
            None => return Err("empty line".into()),
        }
        if fields.len() != 5 {
            return Err(format!("expected 5 fields, found {}", fields.len()));
        }
        let field = |i: usize, name: &str| -> std::result::Result<&str, String> {
            fields[i]
                .strip_prefix(name)
                .and_then(|s| s.strip_prefix('='))
                .ok_or_else(|| format!("expected field '{name}'"))
        };
        let g: u32 = field(1, "g")?
            .parse()
            .map_err(|_| "bad genus".to_string())?;
        let mode = Mode::from_tag(field(2, "mode")?).ok_or("bad mode")?;
        let parts = parse_parts(field(3, "parts")?).ok_or("bad parts")?;
        let value = parse_rational(field(4, "value")?).ok_or("bad value")?;
        let key = BracketKey::new(g, &parts, mode);
        if key.parts != parts {
            return Err("parts not in canonical order".into());
        }
        Ok((key, value))
    }
}

/// Parses `a1:d1,a2:d2,...`.
pub fn parse_parts(s: &str) -> Option<Vec<Part>> {
    s.split(',')
        .map(|item| {
            let (a, d) = item.trim().split_once(':')?;
            Some(Part::new(a.trim().parse().ok()?, d.trim().parse().ok()?))
        })
        .collect()
}

/// Shared memo table for bracket values.
///
/// Insertion is get-or-insert: the first value bound to a key wins and is
/// returned to every later caller, so concurrent evaluators racing on the
/// same key all observe one value.
#[derive(Default)]
pub struct MemoStore {
    map: RwLock<HashMap<BracketKey, Rational>>,
    evaluations: AtomicU64,
}

impl MemoStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &BracketKey) -> Option<Rational> {
        self.map.read().expect("memo lock poisoned").get(key).cloned()
    }

    /// Binds `key` to `value` unless already bound; returns the bound value.
    pub fn insert(&self, key: BracketKey, value: Rational) -> Rational {
        let mut map = self.map.write().expect("memo lock poisoned");
        map.entry(key).or_insert(value).clone()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.write().expect("memo lock poisoned").clear();
    }

    /// Number of brackets computed by recursion (memo misses) so far.
    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let store = Self::new();
        store.merge_file(path)?;
        Ok(store)
    }

    /// Reads a cache file into this store. Lines of an unknown version,
    /// malformed lines, and values conflicting with existing bindings are
    /// rejected.
    pub fn merge_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let text = fs::read_to_string(path)?;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = BracketKey::from_line(line).map_err(|reason| Error::Cache {
                line: i + 1,
                reason,
            })?;
            let bound = self.insert(key, value.clone());
            if bound != value {
                return Err(Error::Cache {
                    line: i + 1,
                    reason: "conflicts with an existing binding".into(),
                });
            }
        }
        Ok(())
    }

    /// Writes every binding, sorted by key, in the `v1` line format.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let map = self.map.read().expect("memo lock poisoned");
        let mut entries: Vec<(&BracketKey, &Rational)> = map.iter().collect();
        entries.sort_by(|x, y| x.0.cmp(y.0));
        let mut out = BufWriter::new(fs::File::create(path)?);
        for (k, v) in entries {
            writeln!(out, "{}", k.to_line(v))?;
        }
        out.flush()?;
        Ok(())
    }
}

fn psi_sum(parts: &[Part]) -> u64 {
    parts.iter().map(|p| p.d as u64).sum()
}

/// Genus-0 bracket: `(n-2)!/prod d_i!` when `sum d_i = n-2`, otherwise 0
/// (including the one-part case).
pub fn genus0_bracket(parts: &[Part]) -> Rational {
    let n = parts.len() as u64;
    if n < 2 || psi_sum(parts) != n - 2 {
        return Rational::zero();
    }
    let denom = parts
        .iter()
        .fold(num_bigint::BigUint::one(), |acc, p| acc * factorial(p.d as u64));
    from_biguint(factorial(n - 2)) / from_biguint(denom)
}

fn validate(g: u32, parts: &[Part]) -> Result<()> {
    if g == 0 {
        return Err(Error::Genus);
    }
    if parts.is_empty() {
        return Err(Error::EmptyBracket);
    }
    if parts.iter().any(|p| p.a == 0) {
        return Err(Error::NonPositiveMultiplicity);
    }
    if psi_sum(parts) != parts.len() as u64 - 1 {
        return Err(Error::BracketDimension);
    }
    Ok(())
}

/// Evaluates `<prod [a_i; d_i]>_g` by the psi-elimination recursion.
pub fn genusg_bracket(g: u32, parts: &[Part], mode: Mode, store: &MemoStore) -> Result<Rational> {
    validate(g, parts)?;
    Ok(bracket_value(g, parts, mode, store))
}

/// Same value as [`genusg_bracket`], but the first elimination step uses the
/// part at `pivot` (an index into `parts`, which must have `d >= 1`). Deeper
/// steps follow the default rule. The top-level result is not memoized.
pub fn genusg_bracket_with_pivot(
    g: u32,
    parts: &[Part],
    pivot: usize,
    mode: Mode,
    store: &MemoStore,
) -> Result<Rational> {
    validate(g, parts)?;
    match parts.get(pivot) {
        Some(p) if p.d >= 1 => Ok(eliminate(g, parts, pivot, mode, store)),
        _ => Err(Error::BracketDimension),
    }
}

/// Internal entry: zero outside the dimension rule, memoized otherwise.
pub(crate) fn bracket_value(g: u32, parts: &[Part], mode: Mode, store: &MemoStore) -> Rational {
    let n = parts.len() as u64;
    if n == 0 || psi_sum(parts) != n - 1 {
        return Rational::zero();
    }
    let key = BracketKey::new(g, parts, mode);
    if let Some(v) = store.get(&key) {
        return v;
    }
    let value = if n == 1 {
        mode.seed(g, key.parts[0].a)
    } else {
        // Canonical order is descending by (a, d); take max d, then larger a,
        // then the first such position.
        let pivot = (0..key.parts.len())
            .max_by(|&i, &j| {
                let (pi, pj) = (key.parts[i], key.parts[j]);
                (pi.d, pi.a).cmp(&(pj.d, pj.a)).then(j.cmp(&i))
            })
            .expect("nonempty");
        eliminate(g, &key.parts, pivot, mode, store)
    };
    store.evaluations.fetch_add(1, Ordering::Relaxed);
    store.insert(key, value)
}

/// One application of the recursion at `parts[pivot] = [a; d+1]`.
fn eliminate(g: u32, parts: &[Part], pivot: usize, mode: Mode, store: &MemoStore) -> Rational {
    let Part { a, d: d_plus_one } = parts[pivot];
    let d = d_plus_one - 1;
    let rest: Vec<Part> = parts
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pivot)
        .map(|(_, p)| *p)
        .collect();
    let m = rest.len();
    let two_g = 2 * g as u64;
    let lowered = Part::new(a, d);

    let mut total = Rational::zero();
    let mut i_side: Vec<Part> = Vec::with_capacity(m + 2);
    let mut j_side: Vec<Part> = Vec::with_capacity(m + 2);
    for mask in 0u64..(1u64 << m) {
        i_side.clear();
        j_side.clear();
        for (k, p) in rest.iter().enumerate() {
            if mask >> k & 1 == 1 {
                i_side.push(*p);
            } else {
                j_side.push(*p);
            }
        }
        let (ni, nj) = (i_side.len() as u64, j_side.len() as u64);
        let a_j: u64 = j_side.iter().map(|p| p.a).sum();
        let merged = Part::new(a + a_j, 0);

        // <[a+A_J;0] I>, shared by the first and third summands
        let with_merged = |side: &[Part]| -> Vec<Part> {
            let mut v = Vec::with_capacity(side.len() + 1);
            v.push(merged);
            v.extend_from_slice(side);
            v
        };
        // <[a;d] J> and <[a;d][A_J;0] I>
        let with_lowered = |side: &[Part], extra: Option<Part>| -> Vec<Part> {
            let mut v = Vec::with_capacity(side.len() + 2);
            v.push(lowered);
            v.extend(extra);
            v.extend_from_slice(side);
            v
        };

        if ni > 0 {
            let g0 = genus0_bracket(&with_merged(&i_side));
            if !g0.is_zero() {
                let gg = bracket_value(g, &with_lowered(&j_side, None), mode, store);
                total += g0 * gg * rational((a + a_j) * ni);
            }
        }
        {
            let g0 = genus0_bracket(&with_lowered(&j_side, None));
            if !g0.is_zero() {
                let gg = bracket_value(g, &with_merged(&i_side), mode, store);
                total += g0 * gg * rational((a + a_j) * (two_g + ni));
            }
        }
        if nj > 0 {
            let sum_part = Part::new(a_j, 0);
            let g0 = genus0_bracket(&with_lowered(&i_side, Some(sum_part)));
            if !g0.is_zero() {
                let gg = bracket_value(g, &j_side, mode, store);
                total -= g0 * gg * rational(a_j * (two_g + nj - 1));
            }
            if nj > 1 {
                let g0 = genus0_bracket(&j_side);
                if !g0.is_zero() {
                    let gg = bracket_value(g, &with_lowered(&i_side, Some(sum_part)), mode, store);
                    total -= g0 * gg * rational(a_j * (nj - 1));
                }
            }
        }
    }
    total / rational(a * (two_g + m as u64))
}

fn rational(x: u64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// The bracket as a polynomial in its multiplicities, for fixed psi-powers
/// `dvec`, interpolated on the grid `{1..=2g+1}^n`.
pub fn bracket_polynomial(g: u32, dvec: &[u32], mode: Mode, store: &MemoStore) -> Result<MPoly> {
    let probe: Vec<Part> = dvec.iter().map(|&d| Part::new(1, d)).collect();
    validate(g, &probe)?;
    try_interpolate_grid(dvec.len(), 2 * g, |point| {
        let parts: Vec<Part> = point
            .iter()
            .zip(dvec)
            .map(|(&a, &d)| Part::new(a, d))
            .collect();
        genusg_bracket(g, &parts, mode, store)
    })
}

/// Constant term of the EXACT-mode bracket polynomial.
pub fn degree0_part(g: u32, dvec: &[u32], store: &MemoStore) -> Result<Rational> {
    Ok(bracket_polynomial(g, dvec, Mode::Exact, store)?.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbase::{rat, ratio};

    fn parts(v: &[(u64, u32)]) -> Vec<Part> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn genus0_examples() {
        assert_eq!(genus0_bracket(&parts(&[(1, 1), (1, 0), (1, 0)])), rat(1));
        assert_eq!(genus0_bracket(&parts(&[(7, 0), (4, 0)])), rat(1));
        assert_eq!(genus0_bracket(&parts(&[(2, 2), (3, 0)])), rat(0));
        assert_eq!(genus0_bracket(&parts(&[(5, 0)])), rat(0));
        // 3!/(2! 1!) at n = 5
        assert_eq!(
            genus0_bracket(&parts(&[(1, 2), (1, 1), (1, 0), (1, 0), (1, 0)])),
            rat(3)
        );
    }

    #[test]
    fn genusg_examples() {
        let store = MemoStore::new();
        assert_eq!(
            genusg_bracket(2, &parts(&[(3, 0)]), Mode::Simplified, &store).unwrap(),
            rat(81)
        );
        assert_eq!(
            genusg_bracket(1, &parts(&[(1, 0)]), Mode::Exact, &store).unwrap(),
            rat(0)
        );
        assert_eq!(
            genusg_bracket(1, &parts(&[(1, 1), (1, 0)]), Mode::Simplified, &store).unwrap(),
            rat(5)
        );
        let err = genusg_bracket(1, &parts(&[(1, 2), (1, 0)]), Mode::Simplified, &store);
        assert!(matches!(err, Err(Error::BracketDimension)));
        assert_eq!(
            err.unwrap_err().to_string(),
            "dimension: sum of psi-powers must be n-1"
        );
    }

    #[test]
    fn hand_recursion_genus1_one_psi() {
        // 3a I_1 = a^3 - 2 a1^3 + 2 (a+a1)^3
        let store = MemoStore::new();
        for a in 1..6i64 {
            for a1 in 1..6i64 {
                let expected = ratio(a.pow(3) - 2 * a1.pow(3) + 2 * (a + a1).pow(3), 3 * a);
                let parts = parts(&[(a as u64, 1), (a1 as u64, 0)]);
                assert_eq!(
                    genusg_bracket(1, &parts, Mode::Simplified, &store).unwrap(),
                    expected
                );
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let store = MemoStore::new();
        let m = Mode::Simplified;
        assert!(matches!(
            genusg_bracket(1, &parts(&[(0, 0)]), m, &store),
            Err(Error::NonPositiveMultiplicity)
        ));
        assert!(matches!(genusg_bracket(1, &[], m, &store), Err(Error::EmptyBracket)));
        assert!(matches!(
            genusg_bracket(0, &parts(&[(1, 0)]), m, &store),
            Err(Error::Genus)
        ));
        assert!(genusg_bracket_with_pivot(1, &parts(&[(1, 1), (1, 0)]), 1, m, &store).is_err());
    }

    #[test]
    fn polynomial_examples() {
        let store = MemoStore::new();
        let p = bracket_polynomial(1, &[1, 0], Mode::Simplified, &store).unwrap();
        assert_eq!(p.to_string(), "1*a1^2 + 2*a1^1*a2^1 + 2*a2^2");
        let p0 = bracket_polynomial(1, &[0], Mode::Simplified, &store).unwrap();
        assert_eq!(p0.to_string(), "1*a1^2");
        let pe = bracket_polynomial(1, &[1, 0], Mode::Exact, &store).unwrap();
        assert_eq!(pe.to_string(), "1*a1^2 + 2*a1^1*a2^1 + 2*a2^2 + -1");
    }

    #[test]
    fn degree0_examples() {
        let store = MemoStore::new();
        assert_eq!(degree0_part(1, &[0], &store).unwrap(), rat(-1));
        assert_eq!(degree0_part(1, &[1, 0], &store).unwrap(), rat(-1));
        assert_eq!(degree0_part(2, &[1, 1, 0], &store).unwrap(), rat(-2));
    }

    #[test]
    fn memo_is_first_insert_wins() {
        let store = MemoStore::new();
        let key = BracketKey::new(1, &parts(&[(2, 0)]), Mode::Simplified);
        assert_eq!(store.insert(key.clone(), rat(4)), rat(4));
        assert_eq!(store.insert(key.clone(), rat(5)), rat(4));
        assert_eq!(store.get(&key), Some(rat(4)));
    }

    #[test]
    fn canonical_key_is_order_free() {
        let k1 = BracketKey::new(2, &parts(&[(1, 1), (3, 0), (2, 1)]), Mode::Exact);
        let k2 = BracketKey::new(2, &parts(&[(3, 0), (2, 1), (1, 1)]), Mode::Exact);
        assert_eq!(k1, k2);
        assert_eq!(k1.parts, parts(&[(3, 0), (2, 1), (1, 1)]));
    }

    #[test]
    fn cache_line_round_trip_and_version_check() {
        let key = BracketKey::new(2, &parts(&[(1, 1), (3, 0)]), Mode::Exact);
        let line = key.to_line(&ratio(-7, 3));
        assert_eq!(line, "v1\tg=2\tmode=E\tparts=3:0,1:1\tvalue=-7/3");
        assert_eq!(BracketKey::from_line(&line).unwrap(), (key, ratio(-7, 3)));
        assert!(BracketKey::from_line("v2\tg=2\tmode=E\tparts=3:0\tvalue=1")
            .unwrap_err()
            .contains("version"));
        assert!(BracketKey::from_line("v1\tg=2\tmode=E\tparts=1:1,3:0\tvalue=1").is_err());
    }
}
