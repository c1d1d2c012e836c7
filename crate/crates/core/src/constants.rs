//! Exact constants for framing corrections.
//!
//! Bernoulli numbers use the positive topological indexing
//! `B_1 = 1/6, B_2 = 1/30, B_3 = 1/42, …`, i.e. `B_n = |b_{2n}|` for the
//! modern numbers `b_m`. This is the convention under which the top
//! coefficient of `L_2` comes out as `7/45`.
//!
//! Throughout, `k` is the fiber-dimension parameter: fibers have dimension
//! `2k − 1`, and the relevant L-polynomial is `L_{k−1}`.
//!
//! The integer factors entering the framing dependences (6, 8, 48,
//! `(2k−3)!`, the parity factor `a_n`) are homotopy-theoretic inputs and are
//! recorded here as constants, not derived.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::canon::automorphisms;
use crate::diagram::Diagram;
use crate::relations::{a_space_basis, reduce, DiagramVector};

/// Largest L-polynomial index supported.
pub const MAX_L_INDEX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstantsError {
    #[error("parameter {name} = {value} is outside {min}..={max}")]
    OutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
}

fn check(name: &'static str, value: usize, min: usize, max: usize) -> Result<(), ConstantsError> {
    if value < min || value > max {
        Err(ConstantsError::OutOfRange {
            name,
            value,
            min,
            max,
        })
    } else {
        Ok(())
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// Modern Bernoulli numbers `b_0..=b_m` with `b_1 = −1/2`, from
/// `Σ_{j<m+1} C(m+1, j) b_j = 0`.
fn modern_bernoulli(m: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for n in 1..=m {
        let s = (0..n).fold(BigRational::zero(), |acc, j| {
            acc + BigRational::from_integer(binomial(n + 1, j)) * &b[j]
        });
        b.push(-s / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// `B_n` in the topological convention. Panics for `n = 0`.
pub fn bernoulli(n: usize) -> BigRational {
    assert!(n >= 1, "topological Bernoulli numbers start at B_1");
    modern_bernoulli(2 * n)[2 * n].abs()
}

/// Polynomial with exponent-vector keys, truncated by a weighted degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct WeightedPoly {
    weights: Vec<usize>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl WeightedPoly {
    pub(crate) fn zero(weights: Vec<usize>) -> Self {
        WeightedPoly {
            weights,
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn constant(weights: Vec<usize>, c: BigRational) -> Self {
        let mut p = Self::zero(weights);
        let n = p.weights.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub(crate) fn variable(weights: Vec<usize>, i: usize) -> Self {
        let mut p = Self::zero(weights);
        let mut e = vec![0; p.weights.len()];
        e[i] = 1;
        p.add_term(e, BigRational::one());
        p
    }

    pub(crate) fn weight_of(&self, exps: &[u32]) -> usize {
        exps.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as usize * w)
            .sum()
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub(crate) fn scale(&self, by: &BigRational) -> Self {
        let mut out = Self::zero(self.weights.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * by);
        }
        out
    }

    /// Product with all terms of weight above `max_weight` discarded.
    pub(crate) fn mul_trunc(&self, other: &Self, max_weight: usize) -> Self {
        let mut out = Self::zero(self.weights.clone());
        for (e1, c1) in &self.terms {
            let w1 = self.weight_of(e1);
            if w1 > max_weight {
                continue;
            }
            for (e2, c2) in &other.terms {
                if w1 + self.weight_of(e2) > max_weight {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Homogeneous part of the given weight.
    pub(crate) fn part(&self, weight: usize) -> Self {
        let mut out = Self::zero(self.weights.clone());
        for (e, c) in &self.terms {
            if self.weight_of(e) == weight {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Substitute polynomials (in another ring) for the variables.
    #[cfg(test)]
    pub(crate) fn substitute(&self, values: &[WeightedPoly], max_weight: usize) -> WeightedPoly {
        let ring = values[0].weights.clone();
        let mut out = WeightedPoly::zero(ring.clone());
        for (e, c) in &self.terms {
            let mut term = WeightedPoly::constant(ring.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul_trunc(&values[i], max_weight);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub(crate) fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }
}

/// `L_k` as a polynomial in Pontrjagin symbols `p_1, …, p_k`, where `p_j` has
/// weight `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    k: usize,
    poly: WeightedPoly,
}

impl LPolynomial {
    pub fn index(&self) -> usize {
        self.k
    }

    /// Coefficient of `∏ p_j^{exps[j-1]}`; exponent vectors shorter than `k`
    /// are zero-padded.
    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        let mut e = exps.to_vec();
        e.resize(self.k, 0);
        self.poly
            .terms()
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of `p_k`.
    pub fn top_coefficient(&self) -> BigRational {
        let mut e = vec![0; self.k];
        e[self.k - 1] = 1;
        self.coefficient(&e)
    }

    /// Terms as (exponent vector, coefficient), `p_k` first.
    pub fn terms(&self) -> Vec<(Vec<u32>, BigRational)> {
        let mut t: Vec<(Vec<u32>, BigRational)> = self
            .poly
            .terms()
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        t.sort_by(|a, b| {
            let ra: Vec<u32> = a.0.iter().rev().copied().collect();
            let rb: Vec<u32> = b.0.iter().rev().copied().collect();
            rb.cmp(&ra)
        });
        t
    }
}

fn monomial_string(exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("p{}", i + 1)),
            _ => parts.push(format!("p{}^{e}", i + 1)),
        }
    }
    parts.join("*")
}

impl fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{} =", self.k)?;
        for (i, (e, c)) in self.terms().iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = crate::linalg::fraction_string(&c.abs());
            if i == 0 {
                let lead = if c.is_negative() { "-" } else { "" };
                write!(f, " {lead}{mag}*{}", monomial_string(e))?;
            } else {
                write!(f, " {sign} {mag}*{}", monomial_string(e))?;
            }
        }
        Ok(())
    }
}

/// Coefficients of `√z / tanh √z = Σ 2^{2j} b_{2j} z^j / (2j)!`.
fn characteristic_series(k: usize) -> Vec<BigRational> {
    let b = modern_bernoulli(2 * k);
    (0..=k)
        .map(|j| {
            BigRational::from_integer(pow2(2 * j)) * &b[2 * j]
                / BigRational::from_integer(factorial(2 * j))
        })
        .collect()
}

/// `L_k` by Newton's identities: `log ∏ Q(x_i) = Σ_j c_j s_j`, with the power
/// sums `s_j` rewritten in the elementary symmetric functions `p_j`.
pub fn l_polynomial(k: usize) -> Result<LPolynomial, ConstantsError> {
    check("k", k, 1, MAX_L_INDEX)?;
    let q = characteristic_series(k);
    // c_j: coefficients of log Q
    let mut c = vec![BigRational::zero(); k + 1];
    for j in 1..=k {
        let mut x = int(j as i64) * &q[j];
        for i in 1..j {
            x -= int(i as i64) * &c[i] * &q[j - i];
        }
        c[j] = x / int(j as i64);
    }
    let weights: Vec<usize> = (1..=k).collect();
    let p = |j: usize| WeightedPoly::variable(weights.clone(), j - 1);
    // Newton: s_j = Σ_{i<j} (−1)^{i−1} p_i s_{j−i} + (−1)^{j−1} j p_j
    let mut s: Vec<WeightedPoly> = vec![WeightedPoly::zero(weights.clone())];
    for j in 1..=k {
        let sign = |e: usize| if e.is_multiple_of(2) { int(1) } else { int(-1) };
        let mut sj = p(j).scale(&(sign(j - 1) * int(j as i64)));
        for i in 1..j {
            sj = sj.add(&p(i).mul_trunc(&s[j - i], k).scale(&sign(i - 1)));
        }
        s.push(sj);
    }
    let mut log = WeightedPoly::zero(weights.clone());
    for j in 1..=k {
        log = log.add(&s[j].scale(&c[j]));
    }
    // exp(log) truncated at weight k
    let mut total = WeightedPoly::constant(weights.clone(), BigRational::one());
    let mut power = total.clone();
    for m in 1..=k {
        power = power.mul_trunc(&log, k).scale(&(BigRational::one() / int(m as i64)));
        total = total.add(&power);
    }
    Ok(LPolynomial {
        k,
        poly: total.part(k),
    })
}

/// Closed-form coefficient of `p_{k−1}` in `L_{k−1}`:
/// `2^{2k−2} (2^{2k−3} − 1) B_{k−1} / (2k−2)!`.
pub fn l_top_coefficient(k: usize) -> Result<BigRational, ConstantsError> {
    check("k", k, 2, usize::MAX)?;
    Ok(BigRational::from_integer(pow2(2 * k - 2) * (pow2(2 * k - 3) - 1)) * bernoulli(k - 1)
        / BigRational::from_integer(factorial(2 * k - 2)))
}

/// `a_n`: 1 for even `n`, 2 for odd `n`.
pub fn a_parity(n: usize) -> u32 {
    if n.is_multiple_of(2) {
        1
    } else {
        2
    }
}

/// Change of the relative Pontrjagin number per unit framing degree.
///
/// For `k = 3` this is 48: the SO(5) → SU(5) map sends the generator to 8
/// times the generator and SU(5) → SU(8)/SU(3) contributes another factor 6.
/// For `k ≥ 4` it is `a_{k−1} (2k−3)!`.
pub fn p_framing_dependence(k: usize) -> Result<BigRational, ConstantsError> {
    check("k", k, 3, usize::MAX)?;
    if k == 3 {
        Ok(int(8 * 6))
    } else {
        p_framing_dependence_general(k)
    }
}

/// `a_{k−1} (2k−3)!` for any `k ≥ 3`; at `k = 3` this gives 6, not the 48 of
/// the five-dimensional computation.
pub fn p_framing_dependence_general(k: usize) -> Result<BigRational, ConstantsError> {
    check("k", k, 3, usize::MAX)?;
    Ok(BigRational::from_integer(
        BigInt::from(a_parity(k - 1)) * factorial(2 * k - 3),
    ))
}

/// Change of `ζ_2` per unit framing degree, as a multiple of `[Θ]`.
pub fn zeta2_framing_dependence(k: usize) -> Result<BigRational, ConstantsError> {
    check("k", k, 3, usize::MAX)?;
    if k == 3 {
        Ok(delta2_theta_coefficient(automorphisms(&Diagram::theta()).aut_order))
    } else {
        Ok(p_framing_dependence_general(k)? / int(48))
    }
}

/// Coefficient of the signature defect in the corrected `ζ̂_2`.
///
/// For `k = 3` this is `zeta_dep / (l_top · p_dep)`; for `k ≥ 4` it is the
/// closed form, which satisfies the same identity.
pub fn framing_correction(k: usize) -> Result<BigRational, ConstantsError> {
    check("k", k, 3, usize::MAX)?;
    if k == 3 {
        Ok(zeta2_framing_dependence(3)? / (l_top_coefficient(3)? * p_framing_dependence(3)?))
    } else {
        framing_correction_closed_form(k)
    }
}

/// `(2k−2)! / (3 · 2^{2k+2} (2^{2k−3} − 1) B_{k−1})`.
pub fn framing_correction_closed_form(k: usize) -> Result<BigRational, ConstantsError> {
    check("k", k, 3, usize::MAX)?;
    let denom = BigRational::from_integer(BigInt::from(3) * pow2(2 * k + 2) * (pow2(2 * k - 3) - 1))
        * bernoulli(k - 1);
    Ok(BigRational::from_integer(factorial(2 * k - 2)) / denom)
}

/// `(1/|Aut Θ|) · (2/2³) · 48`: the pushforward `π_* e³ = 2 p_{k−1}` with the
/// Euler class restricting to twice the generator on the sphere, times the
/// Pontrjagin dependence 48.
pub fn delta2_theta_coefficient(theta_aut_order: u64) -> BigRational {
    let euler_cube = int(2) / int(8);
    euler_cube * int(48) / int(theta_aut_order as i64)
}

/// `δ_2` in coordinates of the degree-2 basis.
pub fn delta2_theta() -> Vec<BigRational> {
    let theta = Diagram::theta();
    let coeff = delta2_theta_coefficient(automorphisms(&theta).aut_order);
    let basis = a_space_basis(2).expect("degree 2 is within every cap");
    reduce(&DiagramVector::from_diagram(&theta).scaled(&coeff), &basis)
        .expect("theta has degree 2")
}

/// All constants for one fiber-dimension parameter `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantsReport {
    pub k: usize,
    /// `B_{k−1}`.
    pub bernoulli: BigRational,
    pub l_top: BigRational,
    /// `a_{k−1}`.
    pub a_parity: u32,
    pub p_dep: BigRational,
    /// `a_{k−1}(2k−3)!`, reported alongside `p_dep` (they differ at `k = 3`).
    pub p_dep_general: BigRational,
    pub zeta_dep: BigRational,
    pub correction: BigRational,
}

impl ConstantsReport {
    /// `(name, exact value)` pairs in report order.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        use crate::linalg::fraction_string as fs;
        vec![
            ("k", self.k.to_string()),
            ("fiber_dimension", (2 * self.k - 1).to_string()),
            ("bernoulli", fs(&self.bernoulli)),
            ("l_top", fs(&self.l_top)),
            ("a_parity", self.a_parity.to_string()),
            ("p_dep", fs(&self.p_dep)),
            ("p_dep_general", fs(&self.p_dep_general)),
            ("zeta_dep", fs(&self.zeta_dep)),
            ("correction", fs(&self.correction)),
        ]
    }
}

pub fn constants_report(k: usize) -> Result<ConstantsReport, ConstantsError> {
    check("k", k, 3, usize::MAX)?;
    let report = ConstantsReport {
        k,
        bernoulli: bernoulli(k - 1),
        l_top: l_top_coefficient(k)?,
        a_parity: a_parity(k - 1),
        p_dep: p_framing_dependence(k)?,
        p_dep_general: p_framing_dependence_general(k)?,
        zeta_dep: zeta2_framing_dependence(k)?,
        correction: framing_correction(k)?,
    };
    assert_eq!(
        &report.correction * &report.l_top * &report.p_dep,
        report.zeta_dep,
        "correction · l_top · p_dep = zeta_dep"
    );
    Ok(report)
}
