//! Hodge integrals `int psi^d lambda_g lambda_{g-1}` assembled from brackets.
//!
//! Two integral shapes appear:
//!
//! * extended form `G(d)`: on `M_{g,n+1}` with an extra point carrying
//!   `psi^0`, `sum d_i = g+n-1`;
//! * original form `F(d)`: on `M_{g,n}`, `sum d_i = g+n-2`.
//!
//! `G` is computed three ways (binomial reduction to brackets, coefficient
//! brackets, closed form) and `F` is recovered from `G` by inverting the
//! string equation `G(d) = sum_j F(d - e_j)`. All values are in units where
//! the genus constant `C_g` is 1.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::drbracket::{bracket_value, MemoStore, Mode, Part};
use crate::error::{Error, Result};
use crate::lattice::{coeff_bracket, CoeffKey};
use crate::numbase::{double_factorial_odd, factorial, from_biguint, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `sum d = g+n-1`, extra `psi^0` point.
    Extended,
    /// `sum d = g+n-2`.
    Original,
}

impl Form {
    pub fn required_sum(self, g: u32, n: usize) -> i64 {
        match self {
            Form::Extended => g as i64 + n as i64 - 1,
            Form::Original => g as i64 + n as i64 - 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegralQuery {
    pub g: u32,
    pub dvec: Vec<u32>,
    pub form: Form,
}

impl IntegralQuery {
    pub fn new(g: u32, dvec: Vec<u32>, form: Form) -> Result<Self> {
        check_positive(g, &dvec, form)?;
        Ok(Self { g, dvec, form })
    }
}

/// Which computation supplies extended-form values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pathway {
    Binomial,
    Coeff,
    Closed,
}

/// Auxiliary multiplicities for the binomial reduction: `avec` for the `n`
/// marked points and `bvec` for the `g` forgotten points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReductionSpec {
    pub avec: Vec<u64>,
    pub bvec: Vec<u64>,
}

impl ReductionSpec {
    pub fn new(avec: Vec<u64>, bvec: Vec<u64>) -> Result<Self> {
        if avec.iter().chain(&bvec).any(|&x| x == 0) {
            return Err(Error::ReductionSpec("entries must be positive".into()));
        }
        Ok(Self { avec, bvec })
    }

    /// All multiplicities 1.
    pub fn unit(g: u32, n: usize) -> Self {
        Self {
            avec: vec![1; n],
            bvec: vec![1; g as usize],
        }
    }

    /// A fixed non-unit spec, used as the second witness in sweeps.
    pub fn alternate(g: u32, n: usize) -> Self {
        Self {
            avec: (0..n as u64).map(|i| 2 + i % 3).collect(),
            bvec: (0..g as u64).map(|i| 3 - i % 2).collect(),
        }
    }

    fn check(&self, g: u32, n: usize) -> Result<()> {
        if self.avec.len() != n {
            return Err(Error::ReductionSpec(format!(
                "need {n} a-values, got {}",
                self.avec.len()
            )));
        }
        if self.bvec.len() != g as usize {
            return Err(Error::ReductionSpec(format!(
                "need {g} b-values, got {}",
                self.bvec.len()
            )));
        }
        if self.avec.iter().chain(&self.bvec).any(|&x| x == 0) {
            return Err(Error::ReductionSpec("entries must be positive".into()));
        }
        Ok(())
    }
}

fn check_dimension(g: u32, dvec: &[u32], form: Form) -> Result<()> {
    if g == 0 {
        return Err(Error::Genus);
    }
    let got: i64 = dvec.iter().map(|&d| d as i64).sum();
    let expected = form.required_sum(g, dvec.len());
    if got != expected {
        return Err(Error::Dimension {
            expected: expected.max(0) as u64,
            got: got as u64,
        });
    }
    Ok(())
}

fn check_positive(g: u32, dvec: &[u32], form: Form) -> Result<()> {
    if let Some(index) = dvec.iter().position(|&d| d == 0) {
        return Err(Error::NonPositivePsi { index });
    }
    if dvec.is_empty() {
        return Err(Error::EmptyBracket);
    }
    check_dimension(g, dvec, form)
}

fn int(x: u64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// `g!/2^{g-1}`: the one-point value `G(g) = F(g-1)` in `C_g = 1` units.
pub fn base_value(g: u32) -> Rational {
    from_biguint(factorial(g as u64)) / int(1u64 << (g - 1))
}

/// Binomial reduction with SIMPLIFIED brackets.
pub fn integral_via_binomial(
    g: u32,
    dvec: &[u32],
    spec: &ReductionSpec,
    store: &MemoStore,
) -> Result<Rational> {
    integral_via_binomial_in_mode(g, dvec, spec, Mode::Simplified, store)
}

/// `G(d) = [sum over I_0 ⊔ ... ⊔ I_n = {1..g} of (-1)^{g-|I_0|}
///   < prod_i [a_i + b(I_i); d_i - |I_i|] prod_{j in I_0} [b_j; 0] >] / (g! prod b_j^2)`.
///
/// Assignments with `|I_i| > d_i` are skipped.
pub fn integral_via_binomial_in_mode(
    g: u32,
    dvec: &[u32],
    spec: &ReductionSpec,
    mode: Mode,
    store: &MemoStore,
) -> Result<Rational> {
    check_positive(g, dvec, Form::Extended)?;
    let n = dvec.len();
    spec.check(g, n)?;
    let gs = g as usize;

    let mut total = Rational::zero();
    // block[j] in 0..=n: 0 means forgotten point j stays a [b_j; 0] column
    let mut block = vec![0usize; gs];
    let mut sizes = vec![0u32; n + 1];
    let mut parts: Vec<Part> = Vec::with_capacity(n + gs);
    loop {
        sizes.iter_mut().for_each(|s| *s = 0);
        for &b in &block {
            sizes[b] += 1;
        }
        if (0..n).all(|i| sizes[i + 1] <= dvec[i]) {
            parts.clear();
            for i in 0..n {
                let extra: u64 = block
                    .iter()
                    .zip(&spec.bvec)
                    .filter(|(&b, _)| b == i + 1)
                    .map(|(_, &bv)| bv)
                    .sum();
                parts.push(Part::new(spec.avec[i] + extra, dvec[i] - sizes[i + 1]));
            }
            for (j, &b) in block.iter().enumerate() {
                if b == 0 {
                    parts.push(Part::new(spec.bvec[j], 0));
                }
            }
            let v = bracket_value(g, &parts, mode, store);
            if (g - sizes[0]) % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        // next assignment, base n+1 odometer
        let mut pos = 0;
        loop {
            if pos == gs {
                let norm = spec
                    .bvec
                    .iter()
                    .fold(from_biguint(factorial(g as u64)), |acc, &b| acc * int(b * b));
                return Ok(total / norm);
            }
            block[pos] += 1;
            if block[pos] <= n {
                break;
            }
            block[pos] = 0;
            pos += 1;
        }
    }
}

/// `(2g)!/(g! 2^g) * sum (-1)^{g-i_0} g!/(i_0! ... i_n!)
///   < prod_j |2 i_j; d_j - i_j| prod^{i_0} |2; 0| >^coeff`
/// over `i_0 + ... + i_n = g`, `i_j <= d_j`.
pub fn integral_via_coeff(g: u32, dvec: &[u32]) -> Result<Rational> {
    check_positive(g, dvec, Form::Extended)?;
    let n = dvec.len();
    let mut total = Rational::zero();
    let mut iv = vec![0u32; n];
    let g_fact = from_biguint(factorial(g as u64));
    loop {
        let used: u32 = iv.iter().sum();
        if used <= g {
            let i0 = g - used;
            let mut entries: Vec<(u32, u32)> =
                (0..n).map(|j| (2 * iv[j], dvec[j] - iv[j])).collect();
            entries.extend(std::iter::repeat((2, 0)).take(i0 as usize));
            let c = coeff_bracket(&CoeffKey::new(g, entries))?;
            if !c.is_zero() {
                let denom = iv
                    .iter()
                    .chain(std::iter::once(&i0))
                    .fold(num_bigint::BigUint::one(), |acc, &k| acc * factorial(k as u64));
                let term = &g_fact / from_biguint(denom) * c;
                if (g - i0) % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
        }
        // odometer with digit j in 0..=min(d_j, g)
        let mut pos = 0;
        loop {
            if pos == n {
                let scale = from_biguint(factorial(2 * g as u64))
                    / (from_biguint(factorial(g as u64)) * int(1u64 << g));
                return Ok(total * scale);
            }
            iv[pos] += 1;
            if iv[pos] <= dvec[pos].min(g) {
                break;
            }
            iv[pos] = 0;
            pos += 1;
        }
    }
}

fn odd_double_factorial_product(dvec: &[u32]) -> Rational {
    from_biguint(
        dvec.iter()
            .fold(num_bigint::BigUint::one(), |acc, &d| acc * double_factorial_odd(d as u64)),
    )
}

/// `(2g-2+n)! (2g-1)!! / ((2g-1)! prod (2d_i-1)!!) * g!/2^{g-1}`.
pub fn closed_form_extended(g: u32, dvec: &[u32]) -> Result<Rational> {
    check_positive(g, dvec, Form::Extended)?;
    let (g64, n) = (g as u64, dvec.len() as u64);
    let num = factorial(2 * g64 - 2 + n) * double_factorial_odd(g64);
    let den = from_biguint(factorial(2 * g64 - 1)) * odd_double_factorial_product(dvec);
    Ok(from_biguint(num) / den * base_value(g))
}

/// `(2g-3+n)! (2g-3)!! / ((2g-2)! prod (2d_i-1)!!) * F(g-1)`, with the
/// one-point value `F(g-1) = g!/2^{g-1}`.
pub fn closed_form_original(g: u32, dvec: &[u32]) -> Result<Rational> {
    check_positive(g, dvec, Form::Original)?;
    let (g64, n) = (g as u64, dvec.len() as u64);
    // 2g-3+n >= 0 since n >= 1 and g >= 1
    let num = factorial(2 * g64 + n - 3) * double_factorial_odd(g64 - 1);
    let den = from_biguint(factorial(2 * g64 - 2)) * odd_double_factorial_product(dvec);
    Ok(from_biguint(num) / den * base_value(g))
}

/// Extended-form value from the chosen pathway (binomial uses the unit spec).
pub fn extended_value(g: u32, dvec: &[u32], pathway: Pathway, store: &MemoStore) -> Result<Rational> {
    match pathway {
        Pathway::Binomial => {
            integral_via_binomial(g, dvec, &ReductionSpec::unit(g, dvec.len()), store)
        }
        Pathway::Coeff => integral_via_coeff(g, dvec),
        Pathway::Closed => closed_form_extended(g, dvec),
    }
}

fn sorted_desc(dvec: &[u32]) -> Vec<u32> {
    let mut v = dvec.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Inverts the string equation. Values of `F` and `G` are cached per call.
struct StringSolver<'a> {
    g: u32,
    pathway: Pathway,
    store: &'a MemoStore,
    f_memo: HashMap<Vec<u32>, Rational>,
    g_memo: HashMap<Vec<u32>, Rational>,
}

impl<'a> StringSolver<'a> {
    fn new(g: u32, pathway: Pathway, store: &'a MemoStore) -> Self {
        Self {
            g,
            pathway,
            store,
            f_memo: HashMap::new(),
            g_memo: HashMap::new(),
        }
    }

    /// Extended-form value with all entries positive, from the pathway.
    fn g_positive(&mut self, d: &[u32]) -> Result<Rational> {
        let key = sorted_desc(d);
        if let Some(v) = self.g_memo.get(&key) {
            return Ok(v.clone());
        }
        let v = extended_value(self.g, &key, self.pathway, self.store)?;
        self.g_memo.insert(key, v.clone());
        Ok(v)
    }

    /// `F` of a vector with a zero entry: that point carries `psi^0`, so the
    /// value is the extended-form `G` of the remaining entries.
    fn f_with_zero(&mut self, d: &[u32]) -> Result<Rational> {
        let mut rest = d.to_vec();
        let z = rest.iter().position(|&x| x == 0).expect("has a zero");
        rest.remove(z);
        if rest.is_empty() {
            // F(0) on M_{1,1} is the g = 1 one-point value G(1)
            return self.g_positive(&[self.g]);
        }
        if rest.contains(&0) {
            self.g_general(&rest)
        } else {
            self.g_positive(&rest)
        }
    }

    /// `F(d)` for arbitrary nonnegative `d` with `sum d = g+n-2`.
    fn f_general(&mut self, d: &[u32]) -> Result<Rational> {
        if d.contains(&0) {
            self.f_with_zero(d)
        } else {
            self.f_positive(d)
        }
    }

    /// `F(d)` with positive entries:
    /// `F(d) = G(d_1+1, d_2..) - sum_{j>=2} F(d_1+1, .., d_j-1, ..)`.
    fn f_positive(&mut self, d: &[u32]) -> Result<Rational> {
        let key = sorted_desc(d);
        if let Some(v) = self.f_memo.get(&key) {
            return Ok(v.clone());
        }
        let value = if key.len() == 1 {
            // F(g-1) = G(g)
            self.g_positive(&[key[0] + 1])?
        } else {
            let mut raised = key.clone();
            raised[0] += 1;
            let mut v = self.g_positive(&raised)?;
            for j in 1..key.len() {
                let mut t = raised.clone();
                t[j] -= 1;
                v -= self.f_general(&t)?;
            }
            v
        };
        self.f_memo.insert(key, value.clone());
        Ok(value)
    }

    /// `G(d) = sum_j F(d - e_j)` for nonnegative `d`; negative entries drop.
    fn g_general(&mut self, d: &[u32]) -> Result<Rational> {
        let mut total = Rational::zero();
        for j in 0..d.len() {
            if d[j] == 0 {
                continue;
            }
            let mut t = d.to_vec();
            t[j] -= 1;
            total += self.f_general(&t)?;
        }
        Ok(total)
    }
}

/// Recovers `F(d) = int_{M_{g,n}} prod psi_i^{d_i} lambda_g lambda_{g-1}` from
/// extended-form values supplied by `pathway`. A zero entry marks a point
/// carrying `psi^0` and is removed by the string equation.
pub fn faber_original(g: u32, dvec: &[u32], pathway: Pathway, store: &MemoStore) -> Result<Rational> {
    if dvec.is_empty() {
        return Err(Error::EmptyBracket);
    }
    check_dimension(g, dvec, Form::Original)?;
    StringSolver::new(g, pathway, store).f_general(dvec)
}

/// Computes `G(d)` (zeros allowed) from original-form values through the
/// string equation, where positive `F` values come from [`faber_original`]
/// on `pathway`.
pub fn string_forward(g: u32, dvec: &[u32], pathway: Pathway, store: &MemoStore) -> Result<Rational> {
    check_dimension(g, dvec, Form::Extended)?;
    if dvec.is_empty() {
        return Err(Error::EmptyBracket);
    }
    StringSolver::new(g, pathway, store).g_general(dvec)
}

/// Nonincreasing sequences of `n` positive integers summing to `total`.
pub fn positive_partitions(total: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, n: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let lo = 1;
        let hi = cap.min(total.saturating_sub(n as u32 - 1));
        for first in (lo..=hi).rev() {
            prefix.push(first);
            rec(total - first, n - 1, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 || total < n as u32 {
        return out;
    }
    rec(total, n, total, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct QueryRecord {
    pub g: u32,
    pub d: Vec<u32>,
    pub form: Form,
    pub binomial: String,
    pub coeff: String,
    pub closed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub units: &'static str,
    pub queries: Vec<QueryRecord>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn record(
    query: &IntegralQuery,
    binomial: Result<Rational>,
    coeff: Result<Rational>,
    closed: Result<Rational>,
    extra_agreement: bool,
) -> QueryRecord {
    let show = |r: &Result<Rational>| match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    };
    let pathways_agree = matches!((&binomial, &coeff), (Ok(b), Ok(c)) if b == c);
    let closed_agrees = matches!((&binomial, &closed), (Ok(b), Ok(c)) if b == c);
    // g = 1 closed-form comparisons are informational only
    let pass = extra_agreement && pathways_agree && (closed_agrees || query.g == 1);
    QueryRecord {
        g: query.g,
        d: query.dvec.clone(),
        form: query.form,
        binomial: show(&binomial),
        coeff: show(&coeff),
        closed: show(&closed),
        pass,
    }
}

fn verify_extended(query: &IntegralQuery, store: &MemoStore) -> QueryRecord {
    let (g, d) = (query.g, &query.dvec);
    let binomial = integral_via_binomial(g, d, &ReductionSpec::unit(g, d.len()), store);
    let second = integral_via_binomial(g, d, &ReductionSpec::alternate(g, d.len()), store);
    let specs_agree = matches!((&binomial, &second), (Ok(x), Ok(y)) if x == y);
    record(
        query,
        binomial,
        integral_via_coeff(g, d),
        closed_form_extended(g, d),
        specs_agree,
    )
}

fn verify_original(query: &IntegralQuery, store: &MemoStore) -> QueryRecord {
    let (g, d) = (query.g, &query.dvec);
    record(
        query,
        faber_original(g, d, Pathway::Binomial, store),
        faber_original(g, d, Pathway::Coeff, store),
        closed_form_original(g, d),
        true,
    )
}

/// All queries checked by [`verify_range`], in report order.
pub fn sweep_queries(gmin: u32, gmax: u32, nmax: usize) -> Vec<IntegralQuery> {
    let mut out = Vec::new();
    for g in gmin.max(1)..=gmax {
        for form in [Form::Extended, Form::Original] {
            for n in 1..=nmax {
                let total = form.required_sum(g, n);
                if total < 0 {
                    continue;
                }
                for dvec in positive_partitions(total as u32, n) {
                    out.push(IntegralQuery { g, dvec, form });
                }
            }
        }
    }
    out
}

/// Compares the pathways on every positive `d` (up to symmetry) with at most
/// `nmax` entries, for genera `gmin..=gmax`. Extended queries compare the
/// binomial reduction under two reduction specs, the coefficient route and
/// the closed form; original queries compare string inversion over the
/// binomial and coefficient routes with the closed ratio.
pub fn verify_range(gmin: u32, gmax: u32, nmax: usize, store: &MemoStore) -> VerificationReport {
    let queries: Vec<QueryRecord> = sweep_queries(gmin, gmax, nmax)
        .par_iter()
        .map(|q| match q.form {
            Form::Extended => verify_extended(q, store),
            Form::Original => verify_original(q, store),
        })
        .collect();
    let pass = queries.iter().all(|q| q.pass);
    VerificationReport {
        units: "C_g=1",
        queries,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbase::{rat, ratio};

    #[test]
    fn binomial_examples() {
        let store = MemoStore::new();
        let one = ReductionSpec::new(vec![1], vec![1]).unwrap();
        assert_eq!(integral_via_binomial(1, &[1], &one, &store).unwrap(), rat(1));
        for spec in [ReductionSpec::unit(2, 1), ReductionSpec::alternate(2, 1)] {
            assert_eq!(integral_via_binomial(2, &[2], &spec, &store).unwrap(), rat(1));
        }
        for spec in [ReductionSpec::unit(2, 2), ReductionSpec::alternate(2, 2)] {
            assert_eq!(integral_via_binomial(2, &[2, 1], &spec, &store).unwrap(), rat(4));
        }
    }

    #[test]
    fn binomial_rejects_bad_input() {
        let store = MemoStore::new();
        let spec = ReductionSpec::unit(2, 2);
        assert!(matches!(
            integral_via_binomial(2, &[1, 1], &spec, &store),
            Err(Error::Dimension { expected: 3, got: 2 })
        ));
        assert!(matches!(
            integral_via_binomial(2, &[3, 0], &spec, &store),
            Err(Error::NonPositivePsi { index: 1 })
        ));
        assert!(matches!(
            integral_via_binomial(2, &[2, 1], &ReductionSpec::unit(3, 2), &store),
            Err(Error::ReductionSpec(_))
        ));
        assert!(ReductionSpec::new(vec![0], vec![1]).is_err());
    }

    #[test]
    fn coeff_examples() {
        assert_eq!(integral_via_coeff(2, &[2]).unwrap(), rat(1));
        assert_eq!(integral_via_coeff(2, &[2, 1]).unwrap(), rat(4));
        assert_eq!(integral_via_coeff(3, &[3, 1]).unwrap(), rat(9));
        assert_eq!(integral_via_coeff(3, &[2, 2]).unwrap(), rat(15));
        // (3,2) at g = 3 has sum 5, but the extended form needs g+n-1 = 4
        assert!(matches!(
            integral_via_coeff(3, &[3, 2]),
            Err(Error::Dimension { expected: 4, got: 5 })
        ));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_extended(2, &[2]).unwrap(), rat(1));
        assert_eq!(closed_form_extended(2, &[2, 1]).unwrap(), rat(4));
        assert_eq!(closed_form_extended(4, &[2, 2, 2]).unwrap(), rat(840));
        assert_eq!(closed_form_original(2, &[1, 1]).unwrap(), rat(3));
        assert_eq!(closed_form_original(3, &[2, 1]).unwrap(), ratio(15, 2));
        assert_eq!(base_value(3), ratio(3, 2));
    }

    #[test]
    fn string_examples() {
        let store = MemoStore::new();
        for pw in [Pathway::Binomial, Pathway::Coeff, Pathway::Closed] {
            assert_eq!(string_forward(2, &[2, 1], pw, &store).unwrap(), rat(4));
            assert_eq!(string_forward(2, &[2], pw, &store).unwrap(), rat(1));
            assert_eq!(faber_original(2, &[1, 1], pw, &store).unwrap(), rat(3));
            assert_eq!(faber_original(2, &[1], pw, &store).unwrap(), rat(1));
            assert_eq!(faber_original(3, &[2, 1], pw, &store).unwrap(), ratio(15, 2));
        }
        // zero-entry reduction F(2,0) = F(1) = 1 at g = 2
        assert_eq!(faber_original(2, &[2, 0], Pathway::Coeff, &store).unwrap(), rat(1));
        assert_eq!(faber_original(1, &[0], Pathway::Closed, &store).unwrap(), rat(1));
        assert!(matches!(
            faber_original(2, &[2, 1], Pathway::Closed, &store),
            Err(Error::Dimension { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn partitions() {
        assert_eq!(positive_partitions(3, 2), vec![vec![2, 1]]);
        assert_eq!(positive_partitions(6, 3), vec![vec![4, 1, 1], vec![3, 2, 1], vec![2, 2, 2]]);
        assert!(positive_partitions(1, 2).is_empty());
    }

    #[test]
    fn verify_small_ranges() {
        let store = MemoStore::new();
        let r = verify_range(2, 2, 2, &store);
        assert!(r.pass);
        let extended: Vec<_> = r.queries.iter().filter(|q| q.form == Form::Extended).collect();
        assert_eq!(extended.len(), 2);
        assert_eq!(extended[0].binomial, "1");
        assert_eq!(extended[1].closed, "4");
        assert!(verify_range(2, 3, 2, &store).pass);
        let g1 = verify_range(1, 1, 2, &store);
        assert!(g1.pass);
        assert!(g1.queries.iter().all(|q| q.form == Form::Extended));
    }
}
