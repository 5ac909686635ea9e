//! Sparse multivariate polynomials over exact rationals.
//!
//! Brackets are polynomials in their multiplicities, but the recursion only
//! produces values at integer points. [`interpolate_grid`] recovers the
//! polynomial from a tensor grid of evaluations by applying the inverse
//! Vandermonde matrix of the nodes `1..=bound+1` along each axis in turn.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numbase::{rat, Rational};

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate function `a_{index+1}`.
    pub fn variable(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::LengthMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when every monomial has total degree exactly `degree`.
    pub fn is_homogeneous_of_degree(&self, degree: u32) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().sum::<u32>() == degree)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    m *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += m;
        }
        Ok(acc)
    }

    pub fn eval_integers(&self, point: &[i64]) -> Result<Rational> {
        let pt: Vec<Rational> = point.iter().map(|&x| rat(x)).collect();
        self.eval(&pt)
    }

    pub fn coefficient_of(&self, expo: &[u32]) -> Result<Rational> {
        if expo.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: expo.len(),
            });
        }
        Ok(self.terms.get(expo).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Deletes every monomial whose exponents are all positive, i.e. every
    /// monomial divisible by `a_1 ... a_n`.
    pub fn strip_monomials_divisible_by_all(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| !divisible_by_all(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// The complementary projection: keeps only monomials divisible by
    /// `a_1 ... a_n`. Two polynomials are congruent modulo the non-divisible
    /// monomials iff their divisible parts coincide.
    pub fn divisible_part(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| divisible_by_all(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `x_var^power`, as a polynomial in the remaining
    /// variables (in their original order).
    pub fn slice(&self, var: usize, power: u32) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            if e[var] == power {
                let mut rest = e.clone();
                rest.remove(var);
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Substitutes `x_var = value` and removes that variable.
    pub fn substitute(&self, var: usize, value: &Rational) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            let k = e[var];
            let factor = if k == 0 {
                Rational::one()
            } else {
                num_traits::pow(value.clone(), k as usize)
            };
            let mut rest = e.clone();
            rest.remove(var);
            out.add_term(rest, c * factor);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * s))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes polynomial `args[k]` for variable `k`. All arguments must
    /// share one ring, which becomes the ring of the result.
    pub fn compose(&self, args: &[MPoly]) -> Self {
        assert_eq!(args.len(), self.nvars, "one argument per variable");
        let target = args.first().map_or(0, |a| a.nvars);
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (arg, &k) in args.iter().zip(e) {
                if k > 0 {
                    term = &term * &arg.pow(k);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Sum of all variables, `a_1 + ... + a_n`.
    pub fn linear_sum(nvars: usize) -> Self {
        (0..nvars).fold(Self::zero(nvars), |acc, i| &acc + &Self::variable(nvars, i))
    }
}

fn divisible_by_all(e: &[u32]) -> bool {
    e.iter().all(|&k| k >= 1)
}

fn check_same_nvars(a: &MPoly, b: &MPoly) {
    assert_eq!(a.nvars, b.nvars, "polynomials live in different rings");
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        check_same_nvars(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        check_same_nvars(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        check_same_nvars(self, rhs);
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

/// Descending graded-lex: higher total degree first, then lexicographically
/// larger exponent vectors first.
fn grlex_desc(a: &Exponents, b: &Exponents) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl fmt::Display for MPoly {
    /// `"<coeff>*a1^e1*...*an^en"` terms in descending graded-lex order,
    /// zero exponents omitted, joined by `" + "`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex_desc(a, b));
        let rendered: Vec<String> = keys
            .into_iter()
            .map(|e| {
                let mut s = self.terms[e].to_string();
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        s.push_str(&format!("*a{}^{}", i + 1, k));
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Coefficients (in increasing power) of the Lagrange basis polynomials for
/// the nodes `1..=count`: row `e`, column `j` is the coefficient of `x^e` in
/// `L_j`. This is the inverse of the Vandermonde matrix of the nodes.
fn inverse_vandermonde(count: usize) -> Vec<Vec<Rational>> {
    let nodes: Vec<i64> = (1..=count as i64).collect();
    let mut inv = vec![vec![Rational::zero(); count]; count];
    for (j, &xj) in nodes.iter().enumerate() {
        // numerator polynomial prod_{k != j} (x - x_k), low degree first
        let mut num: Vec<BigInt> = vec![BigInt::one()];
        let mut denom = BigInt::one();
        for (k, &xk) in nodes.iter().enumerate() {
            if k == j {
                continue;
            }
            let mut next = vec![BigInt::zero(); num.len() + 1];
            for (i, c) in num.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * xk;
            }
            num = next;
            denom *= xj - xk;
        }
        for (e, c) in num.into_iter().enumerate() {
            inv[e][j] = Rational::new(c, denom.clone());
        }
    }
    inv
}

/// Interpolates the unique polynomial of degree at most `per_var_degree_bound`
/// in each variable that agrees with `evaluator` on `{1..=bound+1}^nvars`.
///
/// Grid points are evaluated in parallel; the evaluator must be `Sync`.
pub fn interpolate_grid<F>(nvars: usize, per_var_degree_bound: u32, evaluator: F) -> MPoly
where
    F: Fn(&[u64]) -> Rational + Sync,
{
    try_interpolate_grid(nvars, per_var_degree_bound, |p| {
        Ok::<_, std::convert::Infallible>(evaluator(p))
    })
    .unwrap_or_else(|e| match e {})
}

/// Fallible variant of [`interpolate_grid`]; the first evaluator error in grid
/// order is returned.
pub fn try_interpolate_grid<F, E>(
    nvars: usize,
    per_var_degree_bound: u32,
    evaluator: F,
) -> std::result::Result<MPoly, E>
where
    F: Fn(&[u64]) -> std::result::Result<Rational, E> + Sync,
    E: Send,
{
    let side = per_var_degree_bound as usize + 1;
    let size = side.pow(nvars as u32);

    let point_of = |mut idx: usize| -> Vec<u64> {
        let mut pt = vec![0u64; nvars];
        for slot in pt.iter_mut().rev() {
            *slot = (idx % side) as u64 + 1;
            idx /= side;
        }
        pt
    };

    let mut values: Vec<Rational> = (0..size)
        .into_par_iter()
        .map(|idx| evaluator(&point_of(idx)))
        .collect::<std::result::Result<_, E>>()?;

    if nvars == 0 {
        return Ok(MPoly::constant(0, values.pop().unwrap_or_else(Rational::zero)));
    }

    let inv = inverse_vandermonde(side);
    // Axis `ax` has stride side^(nvars-1-ax) in row-major order.
    for ax in 0..nvars {
        let stride = side.pow((nvars - 1 - ax) as u32);
        let block = stride * side;
        let mut next = vec![Rational::zero(); size];
        for base in (0..size).step_by(block) {
            for offset in 0..stride {
                let fiber: Vec<&Rational> =
                    (0..side).map(|j| &values[base + offset + j * stride]).collect();
                for (e, row) in inv.iter().enumerate() {
                    let mut acc = Rational::zero();
                    for (w, v) in row.iter().zip(&fiber) {
                        if !v.is_zero() {
                            acc += w * *v;
                        }
                    }
                    next[base + offset + e * stride] = acc;
                }
            }
        }
        values = next;
    }

    let mut poly = MPoly::zero(nvars);
    for (idx, c) in values.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let expo: Exponents = point_of(idx).into_iter().map(|x| (x - 1) as u32).collect();
        poly.terms.insert(expo, c);
    }
    Ok(poly)
}

/// Coefficients `[c_0, c_1, ...]` of a univariate polynomial stored as a
/// one-variable [`MPoly`].
pub fn univariate_coefficients(p: &MPoly) -> Vec<Rational> {
    assert_eq!(p.nvars(), 1, "not a univariate polynomial");
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut out = vec![Rational::zero(); deg + 1];
    for (e, c) in p.terms() {
        out[e[0] as usize] = c.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbase::ratio;

    fn e(v: &[u32]) -> Exponents {
        v.to_vec()
    }

    /// a1^2 + 2 a1 a2 + 2 a2^2
    fn i1_genus1() -> MPoly {
        MPoly::from_terms(
            2,
            vec![(e(&[2, 0]), rat(1)), (e(&[1, 1]), rat(2)), (e(&[0, 2]), rat(2))],
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(i1_genus1().eval_integers(&[1, 1]).unwrap(), rat(5));
        assert_eq!(MPoly::zero(3).eval_integers(&[4, 5, 6]).unwrap(), rat(0));
        let sq = MPoly::from_terms(2, vec![(e(&[2, 0]), rat(1))]).unwrap();
        assert_eq!(sq.eval_integers(&[3, 7]).unwrap(), rat(9));
        assert!(matches!(
            sq.eval_integers(&[3]),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn coefficient_examples() {
        let p = i1_genus1();
        assert_eq!(p.coefficient_of(&[1, 1]).unwrap(), rat(2));
        assert_eq!(p.coefficient_of(&[2, 0]).unwrap(), rat(1));
        assert_eq!(p.coefficient_of(&[5, 5]).unwrap(), rat(0));
        assert!(p.coefficient_of(&[1]).is_err());
    }

    #[test]
    fn interpolation_examples() {
        let sq = interpolate_grid(1, 2, |p| rat((p[0] * p[0]) as i64));
        assert_eq!(sq, MPoly::from_terms(1, vec![(e(&[2]), rat(1))]).unwrap());

        let i1 = interpolate_grid(2, 2, |p| {
            let (a, a1) = (p[0] as i64, p[1] as i64);
            rat(a * a + 2 * a * a1 + 2 * a1 * a1)
        });
        assert_eq!(i1, i1_genus1());

        let seven = interpolate_grid(1, 0, |_| rat(7));
        assert_eq!(seven, MPoly::constant(1, rat(7)));
    }

    #[test]
    fn interpolation_recovers_rational_coefficients() {
        // (x^3 - 2xy)/6 + 5/7, bound 3
        let f = |x: i64, y: i64| ratio(x * x * x - 2 * x * y, 6) + ratio(5, 7);
        let p = interpolate_grid(2, 3, |pt| f(pt[0] as i64, pt[1] as i64));
        assert_eq!(p.len(), 3);
        assert_eq!(p.coefficient_of(&[3, 0]).unwrap(), ratio(1, 6));
        assert_eq!(p.coefficient_of(&[1, 1]).unwrap(), ratio(-1, 3));
        assert_eq!(p.constant_term(), ratio(5, 7));
        for (x, y) in [(0, 0), (-3, 11), (20, -4)] {
            assert_eq!(p.eval_integers(&[x, y]).unwrap(), f(x, y));
        }
    }

    #[test]
    fn strip_examples() {
        let p = MPoly::from_terms(2, vec![(e(&[1, 1]), rat(1)), (e(&[2, 0]), rat(1))]).unwrap();
        assert_eq!(
            p.strip_monomials_divisible_by_all(),
            MPoly::from_terms(2, vec![(e(&[2, 0]), rat(1))]).unwrap()
        );
        let q = MPoly::from_terms(2, vec![(e(&[2, 0]), rat(1))]).unwrap();
        assert_eq!(q.strip_monomials_divisible_by_all(), q);
        let r = MPoly::from_terms(3, vec![(e(&[1, 1, 1]), rat(3))]).unwrap();
        assert!(r.strip_monomials_divisible_by_all().is_zero());
        assert_eq!(&p.strip_monomials_divisible_by_all() + &p.divisible_part(), p);
    }

    #[test]
    fn display_format() {
        assert_eq!(i1_genus1().to_string(), "1*a1^2 + 2*a1^1*a2^1 + 2*a2^2");
        let p = &i1_genus1() - &MPoly::constant(2, rat(1));
        assert_eq!(p.to_string(), "1*a1^2 + 2*a1^1*a2^1 + 2*a2^2 + -1");
        assert_eq!(MPoly::zero(2).to_string(), "0");
        let q = MPoly::from_terms(1, vec![(e(&[1]), ratio(-3, 2))]).unwrap();
        assert_eq!(q.to_string(), "-3/2*a1^1");
    }

    #[test]
    fn slice_and_substitute() {
        let p = i1_genus1();
        // coefficient of a1^1 is 2 a2
        assert_eq!(
            p.slice(0, 1),
            MPoly::from_terms(1, vec![(e(&[1]), rat(2))]).unwrap()
        );
        // a2 = 0 leaves a1^2
        assert_eq!(
            p.substitute(1, &rat(0)),
            MPoly::from_terms(1, vec![(e(&[2]), rat(1))]).unwrap()
        );
        let s = MPoly::linear_sum(2).pow(2);
        assert_eq!(s.coefficient_of(&[1, 1]).unwrap(), rat(2));
    }

    #[test]
    fn compose_into_linear_forms() {
        // I1(x, x + y) = x^2 + 2x(x+y) + 2(x+y)^2 = 5x^2 + 6xy + 2y^2
        let x = MPoly::variable(2, 0);
        let y = MPoly::variable(2, 1);
        let got = i1_genus1().compose(&[x.clone(), &x + &y]);
        let want = MPoly::from_terms(
            2,
            vec![(e(&[2, 0]), rat(5)), (e(&[1, 1]), rat(6)), (e(&[0, 2]), rat(2))],
        )
        .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = i1_genus1();
        assert!((&p - &p).is_zero());
        assert_eq!((&p + &(-&p)).len(), 0);
    }
}
