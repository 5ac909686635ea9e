//! Property suites run by `drfaber selftest`.
//!
//! Every check runs against a caller-supplied [`MemoStore`], so a store that
//! was loaded from a cache file (or tampered with) is what gets exercised.
//! Each function returns a [`Tally`] of checks made and failures seen.

use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::drbracket::{
    bracket_polynomial, degree0_part, genus0_bracket, genusg_bracket, genusg_bracket_with_pivot,
    MemoStore, Mode, Part,
};
use crate::error::Result;
use crate::faber::{
    base_value, faber_original, integral_via_binomial, integral_via_binomial_in_mode,
    integral_via_coeff, positive_partitions, string_forward, verify_range, Pathway,
    ReductionSpec,
};
use crate::lattice::{
    coeff_bracket, coefreduction_check, normalized_coefficient, w0, w0_bruteforce, wi_bruteforce,
    wi_closed, CoeffKey, LatticePoint,
};
use crate::mpoly::{interpolate_grid, try_interpolate_grid, univariate_coefficients, MPoly};
use crate::numbase::{
    binomial, double_factorial_odd, factorial, format_rational, from_biguint, multinomial,
    parse_rational, rat, ratio, Rational,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    /// Genus at most 2 everywhere.
    Quick,
    /// Pathways up to genus 4, lemma suites up to genus 3.
    Full,
}

impl Scale {
    pub fn pathway_genus(self) -> u32 {
        match self {
            Scale::Quick => 2,
            Scale::Full => 4,
        }
    }

    pub fn lemma_genus(self) -> u32 {
        match self {
            Scale::Quick => 2,
            Scale::Full => 3,
        }
    }

    /// Dimension and coordinate bound for path-count comparisons.
    pub fn lattice_box(self) -> (usize, i64) {
        match self {
            Scale::Quick => (3, 2),
            Scale::Full => (4, 3),
        }
    }

    pub fn random_specs(self) -> usize {
        match self {
            Scale::Quick => 5,
            Scale::Full => 20,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(label());
        }
    }

    /// Records `got == want`; an error on either side is a failure.
    pub fn same<T: PartialEq + Debug, E1: Debug, E2: Debug>(
        &mut self,
        label: impl FnOnce() -> String,
        got: std::result::Result<T, E1>,
        want: std::result::Result<T, E2>,
    ) {
        self.checks += 1;
        match (got, want) {
            (Ok(a), Ok(b)) if a == b => {}
            (got, want) => self
                .failures
                .push(format!("{}: got {:?}, want {:?}", label(), got, want)),
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub tally: Tally,
}

/// Runs every suite at `scale`, in a fixed order.
pub fn run(scale: Scale, store: &MemoStore) -> Vec<SuiteReport> {
    let lg = scale.lemma_genus();
    let pg = scale.pathway_genus();
    let (mmax, cmax) = scale.lattice_box();
    let seed = 0x5eed;

    let numbase = numbase_identities(if scale == Scale::Quick { 10 } else { 16 });

    let mpoly = interpolation_roundtrip(seed, if scale == Scale::Quick { 10 } else { 40 });

    let mut drbracket = bracket_spot_values(store);
    drbracket.merge(permutation_symmetry(lg, 3, seed, store));
    drbracket.merge(pivot_independence(2, 3, seed, store));
    drbracket.merge(homogeneity(lg, 3, store));
    drbracket.merge(explicit_formulas(lg.max(1), seed, store));
    drbracket.merge(explicit_recursion(lg, 3, store));
    drbracket.merge(restriction_identity(lg, 3, store));
    drbracket.merge(slice_congruence(lg, 3, store));
    drbracket.merge(degree0_values(2, 3, store));
    drbracket.merge(divisibility_by_b_squared(lg, 3, seed, store));
    drbracket.merge(memo_recompute(lg, 3, store));

    let mut lattice = path_counts(mmax, cmax);
    lattice.merge(lattice_lemmas(lg, mmax));
    lattice.merge(coeff_cross_check(lg, 3, store));

    let mut faber = base_values(pg, store);
    faber.merge(pathway_agreement(1, pg, 3, store));
    faber.merge(parameter_independence(lg, 3, scale.random_specs(), seed, store));
    faber.merge(string_consistency(lg, 3, store));

    vec![
        SuiteReport { name: "numbase", tally: numbase },
        SuiteReport { name: "mpoly", tally: mpoly },
        SuiteReport { name: "drbracket", tally: drbracket },
        SuiteReport { name: "lattice", tally: lattice },
        SuiteReport { name: "faber", tally: faber },
    ]
}

/// Nonnegative vectors of length `n` summing to `total`, lexicographically
/// descending.
pub fn compositions(total: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, n: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            rec(total - first, n - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(total, n, &mut Vec::new(), &mut out);
    }
    out
}

/// All orderings of `items` (fine for the handful of parts used here).
pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// Copies a result so one expected value can back several checks.
fn dup<T: Clone>(r: &Result<T>) -> std::result::Result<T, String> {
    match r {
        Ok(v) => Ok(v.clone()),
        Err(e) => Err(e.to_string()),
    }
}

fn ok<T>(x: T) -> std::result::Result<T, String> {
    Ok(x)
}

fn parts_of(avec: &[u64], dvec: &[u32]) -> Vec<Part> {
    avec.iter().zip(dvec).map(|(&a, &d)| Part::new(a, d)).collect()
}

/// `psi`-vectors admissible for brackets: length `1..=nmax`, sum `n - 1`.
fn bracket_dvecs(nmax: usize) -> Vec<Vec<u32>> {
    (1..=nmax)
        .flat_map(|n| compositions(n as u32 - 1, n))
        .collect()
}

pub fn numbase_identities(max_total: u64) -> Tally {
    let mut t = Tally::default();
    for total in 0..=max_total {
        for len in 1..=4 {
            for comp in compositions(total as u32, len) {
                let parts: Vec<u64> = comp.iter().map(|&x| x as u64).collect();
                let lhs = parts
                    .iter()
                    .fold(multinomial(&parts), |acc, &k| acc * factorial(k));
                t.check(lhs == factorial(total), || {
                    format!("multinomial {parts:?} times factorials")
                });
            }
        }
    }
    for d in 0..=30u64 {
        let lhs = factorial(2 * d);
        let rhs = BigUint::from(2u32).pow(d as u32) * factorial(d) * double_factorial_odd(d);
        t.check(lhs == rhs, || format!("(2d)! = 2^d d! (2d-1)!! at d={d}"));
    }
    for n in 1..=30u64 {
        for k in 1..n {
            t.check(
                binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k),
                || format!("Pascal rule at ({n},{k})"),
            );
        }
    }
    for p in -12i64..=12 {
        for q in 1i64..=12 {
            let x = ratio(p, q);
            t.same(
                || format!("text round trip of {p}/{q}"),
                ok(parse_rational(&format_rational(&x))),
                ok(Some(x.clone())),
            );
        }
    }
    t
}

fn random_poly(rng: &mut StdRng, nvars: usize, bound: u32) -> MPoly {
    let mut p = MPoly::zero(nvars);
    for _ in 0..rng.gen_range(1..=8) {
        let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=bound)).collect();
        let c = ratio(rng.gen_range(-20..=20), rng.gen_range(1..=7));
        p.add_term(e, c);
    }
    p
}

/// Interpolation from grid values recovers random polynomials exactly.
pub fn interpolation_roundtrip(seed: u64, count: usize) -> Tally {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut t = Tally::default();
    for _ in 0..count {
        let nvars = rng.gen_range(1..=3);
        let bound = rng.gen_range(0..=4);
        let p = random_poly(&mut rng, nvars, bound);
        let q = interpolate_grid(nvars, bound, |pt| {
            let pt: Vec<i64> = pt.iter().map(|&x| x as i64).collect();
            p.eval_integers(&pt).expect("arity matches")
        });
        t.check(q == p, || format!("interpolation of {p}"));
        let off: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-30..=30)).collect();
        t.same(
            || format!("hold-out evaluation of {p} at {off:?}"),
            q.eval_integers(&off),
            p.eval_integers(&off),
        );
    }
    t
}

pub fn bracket_spot_values(store: &MemoStore) -> Tally {
    let mut t = Tally::default();
    type Case<'a> = (u32, &'a [(u64, u32)], Mode, Rational);
    let cases: [Case; 4] = [
        (2, &[(3, 0)], Mode::Simplified, rat(81)),
        (1, &[(1, 0)], Mode::Exact, rat(0)),
        (1, &[(1, 1), (1, 0)], Mode::Simplified, rat(5)),
        (1, &[(2, 1), (3, 0)], Mode::Simplified, rat(4 + 12 + 18)),
    ];
    for (g, parts, mode, want) in cases {
        let parts: Vec<Part> = parts.iter().map(|&p| p.into()).collect();
        t.same(
            || format!("bracket g={g} {parts:?} {mode:?}"),
            genusg_bracket(g, &parts, mode, store),
            ok(want),
        );
    }
    let g0: [(&[(u64, u32)], Rational); 3] = [
        (&[(1, 1), (1, 0), (1, 0)], rat(1)),
        (&[(7, 0), (4, 0)], rat(1)),
        (&[(2, 2), (3, 0)], rat(0)),
    ];
    for (parts, want) in g0 {
        let parts: Vec<Part> = parts.iter().map(|&p| p.into()).collect();
        t.same(
            || format!("genus 0 bracket {parts:?}"),
            ok(genus0_bracket(&parts)),
            ok(want),
        );
    }
    let bad = [Part::new(1, 2), Part::new(1, 0)];
    t.check(genusg_bracket(1, &bad, Mode::Simplified, store).is_err(), || {
        "dimension violation accepted".into()
    });
    t
}

/// Brackets agree under every reordering of their parts.
pub fn permutation_symmetry(gmax: u32, nmax: usize, seed: u64, store: &MemoStore) -> Tally {
    let mut rng = StdRng::seed_from_u64(seed ^ 1);
    let mut t = Tally::default();
    for g in 1..=gmax {
        for dvec in bracket_dvecs(nmax) {
            let avec: Vec<u64> = dvec.iter().map(|_| rng.gen_range(1..=6)).collect();
            let parts = parts_of(&avec, &dvec);
            let want = genusg_bracket(g, &parts, Mode::Simplified, store);
            for perm in permutations(&parts) {
                t.same(
                    || format!("g={g} order {perm:?}"),
                    genusg_bracket(g, &perm, Mode::Simplified, store),
                    dup(&want),
                );
            }
        }
    }
    t
}

/// Eliminating any `psi` first gives the same bracket.
pub fn pivot_independence(gmax: u32, nmax: usize, seed: u64, store: &MemoStore) -> Tally {
    let mut rng = StdRng::seed_from_u64(seed ^ 2);
    let mut t = Tally::default();
    for g in 1..=gmax {
        for mode in [Mode::Simplified, Mode::Exact] {
            for dvec in bracket_dvecs(nmax) {
                let avec: Vec<u64> = dvec.iter().map(|_| rng.gen_range(1..=5)).collect();
                let parts = parts_of(&avec, &dvec);
                let want = genusg_bracket(g, &parts, mode, store);
                for pivot in (0..parts.len()).filter(|&i| parts[i].d >= 1) {
                    t.same(
                        || format!("g={g} {parts:?} pivot {pivot} {mode:?}"),
                        genusg_bracket_with_pivot(g, &parts, pivot, mode, store),
                        dup(&want),
                    );
                }
            }
        }
    }
    t
}

/// SIMPLIFIED polynomials are homogeneous of degree `2g`; EXACT ones differ
/// from them by a constant.
pub fn homogeneity(gmax: u32, nmax: usize, store: &MemoStore) -> Tally {
    let mut t = Tally::default();
    for g in 1..=gmax {
        for dvec in bracket_dvecs(nmax) {
            match (
                bracket_polynomial(g, &dvec, Mode::Simplified, store),
                bracket_polynomial(g, &dvec, Mode::Exact, store),
            ) {
                (Ok(s), Ok(e)) => {
                    t.check(s.is_homogeneous_of_degree(2 * g), || {
                        format!("g={g} d={dvec:?} not homogeneous: {s}")
                    });
                    let diff = &e - &s;
                    t.check(diff.total_degree().unwrap_or(0) == 0, || {
                        format!("g={g} d={dvec:?} modes differ beyond a constant")
                    });
                }
                (s, e) => t.check(false, || format!("g={g} d={dvec:?}: {s:?} / {e:?}")),
            }
        }
    }
    t
}

/// `I_0 = a^{2g}` and
/// `I_1 = a^{2g} + sum_{i<2g} a^i (2g/(2g+1)) C(2g+1, 2g-i) a_1^{2g-i}`.
pub fn explicit_i0(g: u32) -> MPoly {
    MPoly::variable(1, 0).pow(2 * g)
}

pub fn explicit_i1(g: u32) -> MPoly {
    let two_g = 2 * g;
    let mut p = MPoly::zero(2);
    p.add_term(vec![two_g, 0], rat(1));
    for i in 0..two_g {
        let c = from_biguint(binomial(two_g as u64 + 1, (two_g - i) as u64))
            * ratio(two_g as i64, two_g as i64 + 1);
        p.add_term(vec![i, two_g - i], c);
    }
    p
}

/// Interpolated brackets match the displayed `I_0`, `I_1`, including at ten
/// points off the interpolation grid.
pub fn explicit_formulas(gmax: u32, seed: u64, store: &MemoStore) -> Tally {
    let mut rng = StdRng::seed_from_u64(seed ^ 3);
    let mut t = Tally::default();
    for g in 1..=gmax {
        let cases = [(vec![0u32], explicit_i0(g)), (vec![1, 0], explicit_i1(g))];
        for (dvec, want) in cases {
            t.same(
                || format!("g={g} polynomial for d={dvec:?}"),
                bracket_polynomial(g, &dvec, Mode::Simplified, store),
                ok(want.clone()),
            );
            let lo = 2 * g as u64 + 2;
            for _ in 0..10 {
                let avec: Vec<u64> = dvec.iter().map(|_| rng.gen_range(lo..=lo + 25)).collect();
                let point: Vec<i64> = avec.iter().map(|&a| a as i64).collect();
                t.same(
                    || format!("g={g} d={dvec:?} hold-out {avec:?}"),
                    genusg_bracket(g, &parts_of(&avec, &dvec), Mode::Simplified, store),
                    want.eval_integers(&point),
                );
            }
        }
    }
    t
}

/// Builds `I_n` from `I_{n-1}` by the explicit one-step recursion
///
/// ```text
/// (2g+n) a I_n = sum_i (a + sum_{j!=i} a_j) I_{n-1}(a, a_1..^i..a_n)
///              - sum_{i<j} (a_i+a_j) I_{n-1}(a, ..^i..^j.., a_i+a_j)
///              + 2g (a + sum a_i)^{2g+1} - 2g sum a_i^{2g+1}
/// ```
///
/// Variable 0 is `a`.
pub fn explicit_in(g: u32, n: usize) -> MPoly {
    if n == 0 {
        return explicit_i0(g);
    }
    let prev = explicit_in(g, n - 1);
    let nv = n + 1;
    let var = |k: usize| MPoly::variable(nv, k);
    let two_g = rat(2 * g as i64);
    let mut num = MPoly::zero(nv);
    for i in 1..=n {
        let mut args = vec![var(0)];
        args.extend((1..=n).filter(|&j| j != i).map(var));
        let mut weight = var(0);
        for j in (1..=n).filter(|&j| j != i) {
            weight = &weight + &var(j);
        }
        num = &num + &(&weight * &prev.compose(&args));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let merged = &var(i) + &var(j);
            let mut args = vec![var(0)];
            args.extend((1..=n).filter(|&k| k != i && k != j).map(var));
            args.push(merged.clone());
            num = &num - &(&merged * &prev.compose(&args));
        }
    }
    num = &num + &MPoly::linear_sum(nv).pow(2 * g + 1).scale(&two_g);
    for i in 1..=n {
        num = &num - &var(i).pow(2 * g + 1).scale(&two_g);
    }
    // divide by a (2g+n)
    let denom = rat(2 * g as i64 + n as i64);
    let mut out = MPoly::zero(nv);
    for (e, c) in num.terms() {
        assert!(e[0] >= 1, "numerator not divisible by a");
        let mut e = e.clone();
        e[0] -= 1;
        out.add_term(e, c / &denom);
    }
    out
}

pub fn explicit_recursion(gmax: u32, nmax: usize, store: &MemoStore) -> Tally {
    let mut t = Tally::default();
    for g in 1..=gmax {
        for n in 1..=nmax {
            let mut dvec = vec![0u32; n + 1];
            dvec[0] = n as u32;
            t.same(
                || format!("I_{n} at g={g} against the explicit recursion"),
                bracket_polynomial(g, &dvec, Mode::Simplified, store),
                ok(explicit_in(g, n)),
            );
        }
    }
    t
}

fn i_n(g: u32, n: usize, store: &MemoStore) -> Result<MPoly> {
    let mut dvec = vec![0u32; n + 1];
    dvec[0] = n as u32;
    bracket_polynomial(g, &dvec, Mode::Simplified, store)
}

/// `I_n(a, a_1, .., a_{n-1}, 0) = I_{n-1}(a, a_1, .., a_{n-1})`.
pub fn restriction_identity(gmax: u32, nmax: usize, store: &MemoStore) -> Tally {
    let mut t = Tally::default();
    for g in 1..=gmax {
        for n in 1..=nmax {
            let got = i_n(g, n, store).map(|p| p.substitute(n, &Rational::zero()));
            t.same(
                || format!("I_{n} restricted to a_{n}=0 at g={g}"),
                got,
                i_n(g, n - 1, store),
            );
        }
    }
    t
}

/// The `a^i` slice of `I_n` agrees with `(2g/(n+i)) C(2g,i) (a_1+..+a_n)^{2g-i}`
/// on every monomial divisible by `a_1 ... a_n`, for `-n <= i <= 2g-n`.
pub fn slice_congruence(gmax: u32, nmax: usize, store: &MemoStore) -> Tally {
    let mut t = Tally::default();
    for g in 1..=gmax {
        for n in 1..=nmax {
            let poly = match i_n(g, n, store) {
                Ok(p) => p,
                Err(e) => {
                    t.check(false, || format!("I_{n} at g={g}: {e}"));
                    continue;
                }
            };
            let lo = -(n as i64);
            let hi = 2 * g as i64 - n as i64;
            for i in lo..=hi {
                let diff = if i < 0 {
                    // no negative powers of a in a polynomial, and C(2g, i) = 0
                    MPoly::zero(n)
                } else {
                    let iu = i as u32;
                    let c = from_biguint(binomial(2 * g as u64, iu as u64))
                        * ratio(2 * g as i64, n as i64 + i);
                    let model = MPoly::linear_sum(n).pow(2 * g - iu).scale(&c);
                    &poly.slice(0, iu) - &model
                };
                t.check(diff.strip_monomials_divisible_by_all() == diff, || {
                    format!("a^{i} slice of I_{n} at g={g}: divisible part {}", diff.divisible_part())
                });
            }
        }
    }
    t
}

/// EXACT-mode constant terms are `-(n-1)!/prod d_i!`.
pub fn degree0_values(gmax: u32, nmax: usize, store: &MemoStore) -> Tally {
    let mut t = Tally::default();
    for g in 1..=gmax {
        for dvec in bracket_dvecs(nmax) {
            let n = dvec.len() as u64;
            let den = dvec
                .iter()
                .fold(BigUint::one(), |acc, &d| acc * factorial(d as u64));
            let want = -(from_biguint(factorial(n - 1)) / from_biguint(den));
            t.same(
                || format!("degree-0 part g={g} d={dvec:?}"),
                degree0_part(g, &dvec, store),
                ok(want),
            );
        }
    }
    t
}

/// `D(b) = <[b;0] prod [a_i;d_i]> - sum_j <[a_j+b; d_j-1] prod_{i!=j} [a_i;d_i]>`
/// as a polynomial in `b` (interpolated with bound `2g`).
pub fn string_defect(g: u32, avec: &[u64], dvec: &[u32], store: &MemoStore) -> Result<MPoly> {
    try_interpolate_grid(1, 2 * g, |pt| {
        let b = pt[0];
        let mut first = vec![Part::new(b, 0)];
        first.extend(parts_of(avec, dvec));
        let mut v = genusg_bracket(g, &first, Mode::Simplified, store)?;
        for j in (0..dvec.len()).filter(|&j| dvec[j] >= 1) {
            let mut parts = parts_of(avec, dvec);
            parts[j] = Part::new(avec[j] + b, dvec[j] - 1);
            v -= genusg_bracket(g, &parts, Mode::Simplified, store)?;
        }
        Ok(v)
    })
}

/// `D(b)` has no `b^0` or `b^1` term; at `g=1, a=(1), d=(1)` it is `b^2`.
pub fn divisibility_by_b_squared(gmax: u32, nmax: usize, seed: u64, store: &MemoStore) -> Tally {
    let mut rng = StdRng::seed_from_u64(seed ^ 4);
    let mut t = Tally::default();
    let b2 = MPoly::variable(1, 0).pow(2);
    t.same(
        || "D(b) at g=1, a=(1), d=(1)".into(),
        string_defect(1, &[1], &[1], store),
        ok(b2),
    );
    for g in 1..=gmax {
        for n in 1..=nmax {
            for dvec in compositions(n as u32, n) {
                let avec: Vec<u64> = dvec.iter().map(|_| rng.gen_range(1..=4)).collect();
                match string_defect(g, &avec, &dvec, store) {
                    Ok(p) => {
                        let c = univariate_coefficients(&p);
                        let low_zero = c.iter().take(2).all(Zero::is_zero);
                        t.check(low_zero, || {
                            format!("D(b) at g={g} a={avec:?} d={dvec:?} is {p}")
                        });
                    }
                    Err(e) => t.check(false, || format!("D(b) at g={g} d={dvec:?}: {e}")),
                }
            }
        }
    }
    t
}

/// Values served by `store` match a from-scratch computation.
pub fn memo_recompute(gmax: u32, nmax: usize, store: &MemoStore) -> Tally {
    let mut t = Tally::default();
    let fresh = MemoStore::new();
    for g in 1..=gmax {
        for dvec in bracket_dvecs(nmax) {
            for a in 1..=3u64 {
                let avec: Vec<u64> = (0..dvec.len() as u64).map(|i| a + i).collect();
                let parts = parts_of(&avec, &dvec);
                for mode in [Mode::Simplified, Mode::Exact] {
                    t.same(
                        || format!("memoized g={g} {parts:?} {mode:?}"),
                        genusg_bracket(g, &parts, mode, store),
                        genusg_bracket(g, &parts, mode, &fresh),
                    );
                }
            }
        }
    }
    t
}

fn subsets(m: usize) -> Vec<Vec<usize>> {
    (1u32..1 << m)
        .map(|mask| (1..=m).filter(|&i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

fn lattice_box(m: usize, cmax: i64) -> Vec<LatticePoint> {
    let side = cmax as usize + 1;
    (0..side.pow(m as u32))
        .map(|mut idx| {
            let mut c = vec![0i64; m];
            for slot in c.iter_mut() {
                *slot = (idx % side) as i64;
                idx /= side;
            }
            LatticePoint(c)
        })
        .collect()
}

/// Closed-form path counts equal enumerated ones on the box `[0, cmax]^m`.
pub fn path_counts(mmax: usize, cmax: i64) -> Tally {
    let mut t = Tally::default();
    for m in 1..=mmax {
        for c in lattice_box(m, cmax) {
            t.same(|| format!("w0 at {:?}", c.0), w0_bruteforce(&c), ok(w0(&c)));
            for subset in subsets(m) {
                t.same(
                    || format!("w_I for I={subset:?} at {:?}", c.0),
                    wi_bruteforce(&subset, &c),
                    wi_closed(&subset, &c),
                );
            }
        }
    }
    t
}

/// Column lists `(p_i, c_i)` with the given sums and `p_i + c_i >= 1`.
pub fn coeff_columns(m: usize, psum: u32, csum: u32) -> Vec<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    for p in compositions(psum, m) {
        for c in compositions(csum, m) {
            if p.iter().zip(&c).all(|(&p, &c)| p + c >= 1) {
                out.push(p.iter().copied().zip(c.iter().copied()).collect());
            }
        }
    }
    out
}

/// Single-zero-column closed form, unit transfer between zero columns,
/// appending `|1;0|`, the two-zero-column reduction, and permutation
/// invariance of coefficient brackets.
pub fn lattice_lemmas(gmax: u32, mmax: usize) -> Tally {
    let mut t = Tally::default();
    let cb = |g: u32, e: Vec<(u32, u32)>| coeff_bracket(&CoeffKey::new(g, e));
    for g in 1..=gmax {
        let two_g = 2 * g;
        for m in 2..=mmax {
            for p in compositions(two_g, m).into_iter().filter(|p| p[m - 1] >= 1) {
                let mut e: Vec<(u32, u32)> = p[..m - 1].iter().map(|&x| (x, 1)).collect();
                e.push((p[m - 1], 0));
                let want = (0..m - 1).fold(rat(1), |acc, i| {
                    acc * ratio(two_g as i64 + i as i64, p[i] as i64 + 1)
                });
                t.same(|| format!("single zero column g={g} {e:?}"), cb(g, e.clone()), ok(want));
            }
            // columns 1..m-2 free; the last two carry c = 0 and p >= 1
            for prefix_p in 0..=two_g.saturating_sub(2) {
                let prefixes = if m == 2 {
                    if prefix_p == 0 {
                        vec![vec![]]
                    } else {
                        vec![]
                    }
                } else {
                    coeff_columns(m - 2, prefix_p, m as u32 - 1)
                };
                let tail = two_g - prefix_p;
                for prefix in &prefixes {
                    for pl in 1..tail {
                        let pr = tail - pl;
                        let mut e = prefix.clone();
                        e.push((pl, 0));
                        e.push((pr, 0));
                        t.same(
                            || format!("two-zero-column reduction g={g} {e:?}"),
                            coefreduction_check(g, &e),
                            ok(true),
                        );
                        if pl >= 2 {
                            let mut moved = prefix.clone();
                            moved.push((pl - 1, 0));
                            moved.push((pr + 1, 0));
                            t.same(
                                || format!("unit transfer g={g} {e:?}"),
                                cb(g, e.clone()),
                                cb(g, moved),
                            );
                        }
                    }
                }
            }
            // appended |1;0|: first m-1 columns carry 2g-1 and all of the c-mass
            for prefix in coeff_columns(m - 1, two_g - 1, m as u32 - 1) {
                let mut e = prefix.clone();
                e.push((1, 0));
                let mut rhs = Ok(Rational::zero());
                for i in 0..m - 1 {
                    let (p, c) = prefix[i];
                    if c == 0 {
                        continue;
                    }
                    let mut f = prefix.clone();
                    f[i] = (p + 1, c - 1);
                    rhs = match (rhs, cb(g, f)) {
                        (Ok(acc), Ok(v)) => Ok(acc + v),
                        (Err(e), _) | (_, Err(e)) => Err(e),
                    };
                }
                t.same(|| format!("appended |1;0| g={g} {e:?}"), cb(g, e.clone()), rhs);
            }
        }
        for m in 1..=mmax.min(3) {
            for e in coeff_columns(m, two_g, m as u32 - 1) {
                let want = cb(g, e.clone());
                for perm in permutations(&e) {
                    t.same(|| format!("column order g={g} {perm:?}"), cb(g, perm.clone()), dup(&want));
                }
            }
        }
    }
    t
}

/// Path-count coefficients equal coefficients of interpolated polynomials.
pub fn coeff_cross_check(gmax: u32, nmax: usize, store: &MemoStore) -> Tally {
    let mut t = Tally::default();
    for g in 1..=gmax {
        for dvec in bracket_dvecs(nmax) {
            let poly = match bracket_polynomial(g, &dvec, Mode::Simplified, store) {
                Ok(p) => p,
                Err(e) => {
                    t.check(false, || format!("polynomial g={g} d={dvec:?}: {e}"));
                    continue;
                }
            };
            for expo in compositions(2 * g, dvec.len()) {
                if expo.iter().zip(&dvec).any(|(&p, &c)| p + c == 0) {
                    continue;
                }
                let key = CoeffKey::new(g, expo.iter().copied().zip(dvec.iter().copied()).collect());
                t.same(
                    || format!("coefficient g={g} d={dvec:?} expo={expo:?}"),
                    coeff_bracket(&key),
                    normalized_coefficient(&poly, &expo),
                );
            }
        }
    }
    t
}

/// One-point values `G(g) = g!/2^{g-1}` on both reduction routes.
pub fn base_values(gmax: u32, store: &MemoStore) -> Tally {
    let mut t = Tally::default();
    for g in 1..=gmax {
        let spec = ReductionSpec::unit(g, 1);
        t.same(
            || format!("binomial one-point g={g}"),
            integral_via_binomial(g, &[g], &spec, store),
            ok(base_value(g)),
        );
        t.same(
            || format!("coefficient one-point g={g}"),
            integral_via_coeff(g, &[g]),
            ok(base_value(g)),
        );
    }
    t
}

pub fn pathway_agreement(gmin: u32, gmax: u32, nmax: usize, store: &MemoStore) -> Tally {
    let mut t = Tally::default();
    for q in verify_range(gmin, gmax, nmax, store).queries {
        t.check(q.pass, || {
            format!(
                "g={} d={:?} {:?}: binomial {} coeff {} closed {}",
                q.g, q.d, q.form, q.binomial, q.coeff, q.closed
            )
        });
    }
    t
}

/// Random reduction specs (entries in `[1, 5]`) and both seed modes give the
/// same integrals.
pub fn parameter_independence(
    gmax: u32,
    nmax: usize,
    count: usize,
    seed: u64,
    store: &MemoStore,
) -> Tally {
    let mut rng = StdRng::seed_from_u64(seed ^ 5);
    let mut t = Tally::default();
    for g in 1..=gmax {
        for n in 1..=nmax {
            for dvec in positive_partitions(g + n as u32 - 1, n) {
                let unit = ReductionSpec::unit(g, n);
                let want = integral_via_binomial(g, &dvec, &unit, store);
                t.same(
                    || format!("EXACT seeds g={g} d={dvec:?}"),
                    integral_via_binomial_in_mode(g, &dvec, &unit, Mode::Exact, store),
                    dup(&want),
                );
                for _ in 0..count {
                    let spec = ReductionSpec {
                        avec: (0..n).map(|_| rng.gen_range(1..=5)).collect(),
                        bvec: (0..g).map(|_| rng.gen_range(1..=5)).collect(),
                    };
                    t.same(
                        || format!("spec {spec:?} g={g} d={dvec:?}"),
                        integral_via_binomial(g, &dvec, &spec, store),
                        dup(&want),
                    );
                }
            }
        }
    }
    t
}

/// The string equation run forward from recovered original-form values
/// reproduces the extended-form pipelines.
pub fn string_consistency(gmax: u32, nmax: usize, store: &MemoStore) -> Tally {
    let mut t = Tally::default();
    t.same(
        || "F(1,1) at g=2".into(),
        faber_original(2, &[1, 1], Pathway::Binomial, store),
        ok(rat(3)),
    );
    t.same(
        || "F(2,0) at g=2".into(),
        faber_original(2, &[2, 0], Pathway::Binomial, store),
        ok(rat(1)),
    );
    t.same(
        || "G(2,1) at g=2".into(),
        string_forward(2, &[2, 1], Pathway::Binomial, store),
        ok(rat(4)),
    );
    for g in 1..=gmax {
        for n in 1..=nmax {
            for dvec in positive_partitions(g + n as u32 - 1, n) {
                let want = integral_via_binomial(g, &dvec, &ReductionSpec::unit(g, n), store);
                for pathway in [Pathway::Binomial, Pathway::Coeff] {
                    t.same(
                        || format!("string forward g={g} d={dvec:?} via {pathway:?}"),
                        string_forward(g, &dvec, pathway, store),
                        dup(&want),
                    );
                }
            }
        }
    }
    t
}
