//! Coefficient brackets `<prod |p_i; c_i|>^coeff_g` and the lattice-path
//! counts that give them in closed form.
//!
//! Paths in `Z^m` move by unit steps that decrease one coordinate. The special
//! points are the 0/1 vectors `1_I`. `w_I(c)` counts paths from `c` to `1_I`
//! whose other points avoid every special point; `w_0(c)` counts unconstrained
//! paths from `c` to the origin.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::drbracket::{bracket_polynomial, MemoStore, Mode};
use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::numbase::{from_biguint, multinomial, rising, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

/// Index of a coefficient bracket: genus and the columns `(p_i, c_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffKey {
    pub g: u32,
    pub entries: Vec<(u32, u32)>,
}

impl CoeffKey {
    pub fn new(g: u32, entries: Vec<(u32, u32)>) -> Self {
        Self { g, entries }
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    /// `sum p = 2g` and `sum c = m - 1`; keys failing this are zero.
    pub fn is_dimensionally_valid(&self) -> bool {
        let sp: u64 = self.entries.iter().map(|e| e.0 as u64).sum();
        let sc: u64 = self.entries.iter().map(|e| e.1 as u64).sum();
        sp == 2 * self.g as u64 && sc + 1 == self.m() as u64
    }

    fn check_hypothesis(&self) -> Result<()> {
        match self.entries.iter().position(|&(p, c)| p + c == 0) {
            Some(index) => Err(Error::CoeffHypothesis { index }),
            None => Ok(()),
        }
    }
}

fn subset_mask(subset: &[usize], m: usize) -> Result<u64> {
    if subset.is_empty() || m > 63 {
        return Err(Error::Subset { m });
    }
    let mut mask = 0u64;
    for &i in subset {
        if i == 0 || i > m {
            return Err(Error::Subset { m });
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

/// `(sum c)! / prod c_j!` when every coordinate is nonnegative, else 0.
pub fn w0(c: &LatticePoint) -> BigUint {
    if c.0.iter().any(|&x| x < 0) {
        return BigUint::zero();
    }
    let parts: Vec<u64> = c.0.iter().map(|&x| x as u64).collect();
    multinomial(&parts)
}

fn w_mask(mask: u64, c: &[i64]) -> BigUint {
    let one_i = |k: usize| i64::from(mask >> k & 1 == 1);
    if c.iter().enumerate().all(|(k, &x)| x == one_i(k)) {
        return BigUint::one();
    }
    let mut total = BigUint::zero();
    let mut shifted: Vec<i64> = c.iter().enumerate().map(|(k, &x)| x - one_i(k)).collect();
    for k in 0..c.len() {
        if mask >> k & 1 == 1 {
            shifted[k] -= 1;
            total += w0(&LatticePoint(shifted.clone()));
            shifted[k] += 1;
        }
    }
    total
}

/// Closed form: 1 if `c = 1_I`, else `sum_{k in I} w_0(c - 1_I - e_k)`.
/// `subset` holds 1-based coordinates.
pub fn wi_closed(subset: &[usize], c: &LatticePoint) -> Result<BigUint> {
    let mask = subset_mask(subset, c.dim())?;
    Ok(w_mask(mask, &c.0))
}

fn is_special(p: &[i64]) -> bool {
    p.iter().all(|&x| x == 0 || x == 1)
}

/// Counts the paths for `w_I(c)` by depth-first enumeration. Oracle only:
/// limited to `m <= 5` and coordinates in `[0, 6]`.
pub fn wi_bruteforce(subset: &[usize], c: &LatticePoint) -> Result<BigUint> {
    let m = c.dim();
    if m == 0 || m > 5 || c.0.iter().any(|&x| !(0..=6).contains(&x)) {
        return Err(Error::OracleScale);
    }
    let mask = subset_mask(subset, m)?;
    let target: Vec<i64> = (0..m).map(|k| i64::from(mask >> k & 1 == 1)).collect();

    fn walk(p: &mut Vec<i64>, target: &[i64]) -> u64 {
        if p.as_slice() == target {
            return 1;
        }
        if is_special(p) {
            return 0;
        }
        let mut count = 0;
        for k in 0..p.len() {
            if p[k] > target[k] {
                p[k] -= 1;
                count += walk(p, target);
                p[k] += 1;
            }
        }
        count
    }

    if c.0.iter().zip(&target).any(|(x, t)| x < t) {
        return Ok(BigUint::zero());
    }
    Ok(BigUint::from(walk(&mut c.0.clone(), &target)))
}

/// Unconstrained decreasing paths to the origin, enumerated. Oracle only.
pub fn w0_bruteforce(c: &LatticePoint) -> Result<BigUint> {
    if c.dim() > 5 || c.0.iter().any(|&x| x > 6) {
        return Err(Error::OracleScale);
    }
    if c.0.iter().any(|&x| x < 0) {
        return Ok(BigUint::zero());
    }
    fn walk(p: &mut Vec<i64>) -> u64 {
        if p.iter().all(|&x| x == 0) {
            return 1;
        }
        let mut count = 0;
        for k in 0..p.len() {
            if p[k] > 0 {
                p[k] -= 1;
                count += walk(p);
                p[k] += 1;
            }
        }
        count
    }
    Ok(BigUint::from(walk(&mut c.0.clone())))
}

/// Coefficient bracket by lattice-path counting:
///
/// ```text
/// sum_{I nonempty} prod_{i=1}^{|I|} (2g+i-1) / prod_{i in I} (p_i+c_i) * w_I(c)
/// ```
///
/// The single-column key `(2g, 0)` is 1 (the seed's leading coefficient);
/// the path sum would give 0 there.
pub fn coeff_bracket(key: &CoeffKey) -> Result<Rational> {
    key.check_hypothesis()?;
    if !key.is_dimensionally_valid() {
        return Ok(Rational::zero());
    }
    let m = key.m();
    if m == 1 {
        return Ok(Rational::one());
    }
    let c: Vec<i64> = key.entries.iter().map(|e| e.1 as i64).collect();
    let two_g = 2 * key.g as u64;
    let mut total = Rational::zero();
    for mask in 1u64..(1u64 << m) {
        let w = w_mask(mask, &c);
        if w.is_zero() {
            continue;
        }
        let size = mask.count_ones() as u64;
        let denom = (0..m)
            .filter(|k| mask >> k & 1 == 1)
            .fold(BigUint::one(), |acc, k| {
                acc * (key.entries[k].0 as u64 + key.entries[k].1 as u64)
            });
        total += from_biguint(rising(two_g, size) * w) / from_biguint(denom);
    }
    Ok(total)
}

/// Coefficient of `prod a_i^{p_i}` in a bracket polynomial, divided by the
/// multinomial normalization `(2g)!/prod p_i!`.
pub fn normalized_coefficient(poly: &MPoly, expo: &[u32]) -> Result<Rational> {
    let raw = poly.coefficient_of(expo)?;
    let parts: Vec<u64> = expo.iter().map(|&p| p as u64).collect();
    Ok(raw / from_biguint(multinomial(&parts)))
}

/// The same coefficient bracket read off the recursion-side polynomial.
pub fn coeff_from_polynomial(
    g: u32,
    dvec: &[u32],
    expo: &[u32],
    store: &MemoStore,
) -> Result<Rational> {
    if expo.len() != dvec.len() {
        return Err(Error::LengthMismatch {
            expected: dvec.len(),
            got: expo.len(),
        });
    }
    let total: u64 = expo.iter().map(|&p| p as u64).sum();
    if total != 2 * g as u64 {
        return Err(Error::Dimension {
            expected: 2 * g as u64,
            got: total,
        });
    }
    let poly = bracket_polynomial(g, dvec, Mode::Simplified, store)?;
    normalized_coefficient(&poly, expo)
}

/// Checks the two-zero-column reduction
///
/// ```text
/// <prod |p_i;c_i| |p_{m-1};0| |p_m;0|>
///     = sum_i <... |p_i+1; c_i-1| ... |p_{m-1}+p_m-1; 0|>
/// ```
///
/// with both sides evaluated by [`coeff_bracket`].
pub fn coefreduction_check(g: u32, entries: &[(u32, u32)]) -> Result<bool> {
    let m = entries.len();
    if m < 2 {
        return Err(Error::LengthMismatch { expected: 2, got: m });
    }
    let (pl, cl) = entries[m - 2];
    let (pr, cr) = entries[m - 1];
    if cl != 0 || pl == 0 {
        return Err(Error::CoeffHypothesis { index: m - 2 });
    }
    if cr != 0 || pr == 0 {
        return Err(Error::CoeffHypothesis { index: m - 1 });
    }
    let lhs = coeff_bracket(&CoeffKey::new(g, entries.to_vec()))?;
    let mut rhs = Rational::zero();
    for i in 0..m - 2 {
        let (p, c) = entries[i];
        if c == 0 {
            continue;
        }
        let mut e: Vec<(u32, u32)> = entries[..m - 2].to_vec();
        e[i] = (p + 1, c - 1);
        e.push((pl + pr - 1, 0));
        rhs += coeff_bracket(&CoeffKey::new(g, e))?;
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbase::{rat, ratio};

    fn pt(v: &[i64]) -> LatticePoint {
        LatticePoint(v.to_vec())
    }

    #[test]
    fn w0_examples() {
        assert_eq!(w0(&pt(&[0, 0, 0])), BigUint::from(1u32));
        assert_eq!(w0(&pt(&[2, 1])), BigUint::from(3u32));
        assert_eq!(w0(&pt(&[1, -1])), BigUint::zero());
        assert_eq!(w0_bruteforce(&pt(&[2, 1])).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn wi_examples() {
        assert_eq!(wi_closed(&[1, 2], &pt(&[1, 1])).unwrap(), BigUint::from(1u32));
        assert_eq!(wi_closed(&[1], &pt(&[2, 0])).unwrap(), BigUint::from(1u32));
        assert_eq!(wi_closed(&[2], &pt(&[2, 0])).unwrap(), BigUint::zero());

        assert_eq!(wi_bruteforce(&[1, 2], &pt(&[1, 1])).unwrap(), BigUint::from(1u32));
        assert_eq!(wi_bruteforce(&[1], &pt(&[2, 0])).unwrap(), BigUint::from(1u32));
        assert_eq!(wi_bruteforce(&[1], &pt(&[1, 1])).unwrap(), BigUint::zero());
    }

    #[test]
    fn oracle_scale_and_subset_errors() {
        assert!(matches!(
            wi_bruteforce(&[1], &pt(&[7, 0])),
            Err(Error::OracleScale)
        ));
        assert!(matches!(
            wi_bruteforce(&[1], &pt(&[1, 1, 1, 1, 1, 1])),
            Err(Error::OracleScale)
        ));
        assert!(matches!(wi_closed(&[], &pt(&[1, 1])), Err(Error::Subset { .. })));
        assert!(matches!(wi_closed(&[3], &pt(&[1, 1])), Err(Error::Subset { .. })));
    }

    #[test]
    fn coeff_bracket_examples() {
        assert_eq!(
            coeff_bracket(&CoeffKey::new(2, vec![(2, 1), (2, 0)])).unwrap(),
            ratio(4, 3)
        );
        assert_eq!(coeff_bracket(&CoeffKey::new(2, vec![(4, 0)])).unwrap(), rat(1));
        assert_eq!(
            coeff_bracket(&CoeffKey::new(1, vec![(1, 1), (2, 0)])).unwrap(),
            rat(0)
        );
        assert!(matches!(
            coeff_bracket(&CoeffKey::new(1, vec![(0, 0), (2, 0)])),
            Err(Error::CoeffHypothesis { index: 0 })
        ));
    }

    #[test]
    fn coeff_from_polynomial_examples() {
        let store = MemoStore::new();
        assert_eq!(coeff_from_polynomial(1, &[1, 0], &[1, 1], &store).unwrap(), rat(1));
        assert_eq!(coeff_from_polynomial(1, &[1, 0], &[0, 2], &store).unwrap(), rat(2));
        assert_eq!(coeff_from_polynomial(1, &[0], &[2], &store).unwrap(), rat(1));
        assert!(coeff_from_polynomial(1, &[0], &[3], &store).is_err());
    }

    #[test]
    fn coefreduction_examples() {
        assert!(coefreduction_check(2, &[(0, 2), (2, 0), (2, 0)]).unwrap());
        assert!(coefreduction_check(2, &[(2, 1), (1, 0), (1, 0)]).unwrap());
        assert!(coefreduction_check(1, &[(0, 1), (1, 0), (1, 0)]).unwrap());
        assert!(coefreduction_check(1, &[(0, 1), (0, 0), (2, 0)]).is_err());
    }
}
