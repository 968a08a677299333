//! Simplicial, toric, short cubical and cubical h-vectors.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::polynomial::IntPolynomial;
use crate::poset::{ElementId, EulerianFailure, FinitePoset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HVectorError {
    #[error("poset is not simplicial")]
    NotSimplicial,
    #[error("poset is not cubical")]
    NotCubical,
    #[error("poset is not graded")]
    NotGraded,
    #[error("poset is not lower Eulerian: {0:?}")]
    NotLowerEulerian(EulerianFailure),
    #[error("division by 1 + q leaves remainder {0}")]
    InexactDivision(BigInt),
    #[error("up-set of `{0}` is not simplicial")]
    UpsetNotSimplicial(String),
    #[error("rank {0} is too small")]
    RankTooSmall(usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HVectorKind {
    Simplicial,
    Toric,
    Cubical,
    ShortCubical,
}

/// `h_0, …, h_d` (short cubical: `h_0, …, h_{d-1}`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HVectorReport {
    pub kind: HVectorKind,
    pub rank: usize,
    #[serde(with = "crate::polynomial::bigint_list")]
    pub entries: Vec<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl HVectorReport {
    fn new(kind: HVectorKind, rank: usize, poly: &IntPolynomial, len: usize) -> Self {
        HVectorReport { kind, rank, entries: poly.padded(len), source: None }
    }

    pub fn with_source(mut self, name: impl Into<String>) -> Self {
        self.source = Some(name.into());
        self
    }

    pub fn entry(&self, i: usize) -> BigInt {
        self.entries.get(i).cloned().unwrap_or_default()
    }

    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.entries.clone())
    }

    pub fn entries_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.entries.iter().map(ToPrimitive::to_i64).collect()
    }
}

/// Rank `d` of a graded poset with minimum.
fn graded_rank(poset: &FinitePoset) -> Result<usize, HVectorError> {
    let ranks = poset.lower_rank_profile()?;
    if !poset.is_graded() {
        return Err(HVectorError::NotGraded);
    }
    Ok(ranks.top_rank())
}

/// `f_{i-1}` = number of elements of rank `i`, for `i = 0..=d`.
fn rank_counts(poset: &FinitePoset) -> Result<Vec<BigInt>, HVectorError> {
    Ok(poset.lower_rank_profile()?.rank_counts().into_iter().map(BigInt::from).collect())
}

/// `Σ_{i=0}^{d} f_{i-1} q^i (1-q)^{d-i}` with `d` the largest rank.
pub fn simplicial_h(poset: &FinitePoset) -> Result<HVectorReport, HVectorError> {
    if !poset.is_simplicial()? {
        return Err(HVectorError::NotSimplicial);
    }
    let f = rank_counts(poset)?;
    let d = f.len() - 1;
    let mut h = IntPolynomial::zero();
    for (i, fi) in f.iter().enumerate() {
        let term = &IntPolynomial::monomial(fi.clone(), i) * &IntPolynomial::linear_power(-1, 1, d - i);
        h = &h + &term;
    }
    Ok(HVectorReport::new(HVectorKind::Simplicial, d, &h, d + 1))
}

/// The polynomials `f(P, y; q)` and `g(P, y; q)` for every element.
#[derive(Debug, Clone)]
pub struct ToricTable {
    pub f: Vec<IntPolynomial>,
    pub g: Vec<IntPolynomial>,
    pub ranks: Vec<usize>,
    pub d: usize,
}

/// Toric `f`/`g` polynomials, computed in rank order from
/// `f(0̂) = g(0̂) = 1`, `g(y) = k_0 + Σ_{i=1}^{m} (k_i - k_{i-1}) q^i` with
/// `m = ⌊(ρ(y)-1)/2⌋`, and `f(z) = Σ_{y<z} g(y) (q-1)^{ρ(y,z)-1}`.
pub fn toric_fg(poset: &FinitePoset) -> Result<ToricTable, HVectorError> {
    if let Some(w) = poset.lower_eulerian_failure() {
        return Err(HVectorError::NotLowerEulerian(w));
    }
    let profile = poset.lower_rank_profile()?;
    let ranks = profile.ranks().to_vec();
    let d = profile.top_rank();
    let bottom = poset.minimum().expect("lower Eulerian");
    let powers: Vec<IntPolynomial> = (0..=d).map(|k| IntPolynomial::linear_power(1, -1, k)).collect();
    let n = poset.len();
    let mut f = vec![IntPolynomial::zero(); n];
    let mut g = vec![IntPolynomial::zero(); n];
    for &z in poset.linear_extension() {
        if z == bottom {
            f[z] = IntPolynomial::one();
            g[z] = IntPolynomial::one();
            continue;
        }
        let mut fz = IntPolynomial::zero();
        for y in poset.strictly_below(z).ones() {
            fz = &fz + &(&g[y] * &powers[ranks[z] - ranks[y] - 1]);
        }
        let m = (ranks[z] - 1) / 2;
        let mut gz = vec![fz.coeff(0)];
        for i in 1..=m {
            gz.push(fz.coeff(i) - fz.coeff(i - 1));
        }
        g[z] = IntPolynomial::from_coeffs(gz);
        f[z] = fz;
    }
    Ok(ToricTable { f, g, ranks, d })
}

impl ToricTable {
    /// `Σ_y g(y) (q-1)^{d-ρ(y)}`, whose coefficient of `q^i` is `h_{d-i}`.
    pub fn h_reversed(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::zero();
        for (gy, &r) in self.g.iter().zip(&self.ranks) {
            acc = &acc + &(gy * &IntPolynomial::linear_power(1, -1, self.d - r));
        }
        acc
    }

    /// Elements whose `f` polynomial is not palindromic of degree `ρ - 1`.
    pub fn dehn_somerville_failures(&self) -> Vec<ElementId> {
        (0..self.f.len()).filter(|&z| self.ranks[z] > 0 && !self.f[z].is_palindromic(self.ranks[z] - 1)).collect()
    }
}

pub fn toric_h(poset: &FinitePoset) -> Result<HVectorReport, HVectorError> {
    let table = toric_fg(poset)?;
    let rev = table.h_reversed();
    let d = table.d;
    let entries: Vec<BigInt> = (0..=d).map(|i| rev.coeff(d - i)).collect();
    Ok(HVectorReport { kind: HVectorKind::Toric, rank: d, entries, source: None })
}

/// `Σ_{x ∈ A(P)} |χ̃(P_{≥x})| - d |χ̃(P)|`.
pub fn toric_h_dminus1_direct(poset: &FinitePoset) -> Result<BigInt, HVectorError> {
    let d = poset.lower_rank_profile()?.top_rank();
    let mut total = BigInt::zero();
    for x in poset.atoms()? {
        total += BigInt::from(poset.upset(x).chi_tilde()?).abs();
    }
    total -= BigInt::from(d) * BigInt::from(poset.chi_tilde()?).abs();
    Ok(total)
}

/// `Σ_y (-1)^{d-ρ(y)} (α(y) - d)`, the form valid for every lower
/// Eulerian poset.
pub fn toric_h_dminus1_alternating(poset: &FinitePoset) -> Result<BigInt, HVectorError> {
    let profile = poset.lower_rank_profile()?;
    let d = profile.top_rank();
    let mut total = BigInt::zero();
    for y in poset.elements() {
        let term = BigInt::from(poset.alpha_of(y)? as i64 - d as i64);
        if (d - profile.rank(y)) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

fn require_cubical(poset: &FinitePoset) -> Result<usize, HVectorError> {
    if !poset.is_cubical()? {
        return Err(HVectorError::NotCubical);
    }
    let d = graded_rank(poset)?;
    if d == 0 {
        return Err(HVectorError::RankTooSmall(0));
    }
    Ok(d)
}

/// `h^{(sc)}(P, q) = Σ_{i=0}^{d-1} f_i (2q)^i (1-q)^{d-i-1}`.
pub fn short_cubical_h(poset: &FinitePoset) -> Result<HVectorReport, HVectorError> {
    let d = require_cubical(poset)?;
    let f = rank_counts(poset)?;
    let mut h = IntPolynomial::zero();
    for i in 0..d {
        let two_q = IntPolynomial::linear_power(2, 0, i);
        let term = &(&two_q * &IntPolynomial::linear_power(-1, 1, d - i - 1)).scale(&f[i + 1]);
        h = &h + term;
    }
    Ok(HVectorReport::new(HVectorKind::ShortCubical, d, &h, d))
}

fn pow_i(base: i64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

/// `h^{(c)}` from `(1+q) h^{(c)} = 2^{d-1} + q h^{(sc)} + (-2)^{d-1} χ̃(P) q^{d+1}`,
/// by synthetic division with a remainder check.
pub fn cubical_h(poset: &FinitePoset) -> Result<HVectorReport, HVectorError> {
    let sc = short_cubical_h(poset)?;
    let d = sc.rank;
    let chi = BigInt::from(poset.chi_tilde()?);
    let rhs = &(&IntPolynomial::constant(pow_i(2, d - 1)) + &(&IntPolynomial::monomial(1, 1) * &sc.polynomial()))
        + &IntPolynomial::monomial(pow_i(-2, d - 1) * chi, d + 1);
    let (quotient, remainder) = rhs.div_rem_one_plus_q();
    if !remainder.is_zero() {
        return Err(HVectorError::InexactDivision(remainder));
    }
    Ok(HVectorReport::new(HVectorKind::Cubical, d, &quotient, d + 1))
}

/// `(-2)^{d-1} + Σ_{i=1}^{d} (-1)^{d-i-1} (2^{d-1} - 2^{i-1}) f_{i-1}`.
pub fn cubical_h_dminus1_direct(poset: &FinitePoset) -> Result<BigInt, HVectorError> {
    let d = require_cubical(poset)?;
    if d < 2 {
        return Err(HVectorError::RankTooSmall(d));
    }
    let f = rank_counts(poset)?;
    let mut total = pow_i(-2, d - 1);
    for i in 1..=d {
        let c = pow_i(2, d - 1) - pow_i(2, i - 1);
        // (-1)^{d-i-1} with d - i - 1 possibly -1.
        let sign = if (d + 1 - i) % 2 == 0 { 1 } else { -1 };
        total += c * &f[i] * sign;
    }
    Ok(total)
}

/// Result of comparing `h^{(sc)}(P)` with `Σ_{x ∈ A(P)} h(P_{≥x})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HetyeiCheck {
    pub short_cubical: IntPolynomial,
    pub upset_sum: IntPolynomial,
    pub residual: IntPolynomial,
}

impl HetyeiCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn hetyei_decomposition_check(poset: &FinitePoset) -> Result<HetyeiCheck, HVectorError> {
    let sc = short_cubical_h(poset)?.polynomial();
    let mut sum = IntPolynomial::zero();
    for x in poset.atoms()? {
        let up = poset.upset(x);
        let h = match simplicial_h(&up) {
            Ok(h) => h,
            Err(HVectorError::NotSimplicial) => {
                return Err(HVectorError::UpsetNotSimplicial(poset.label(x).to_owned()))
            }
            Err(e) => return Err(e),
        };
        sum = &sum + &h.polynomial();
    }
    let residual = &sc - &sum;
    Ok(HetyeiCheck { short_cubical: sc, upset_sum: sum, residual })
}
