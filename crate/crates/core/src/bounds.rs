//! Numerical invariants and closed-form bounds for sheaves on a polarized
//! normal projective variety `(X, H)` of dimension `n` and degree `d`.
//!
//! A class is given by its pairings `chi(O_{H^c}, E)`, stored without signs.
//! Every bound is evaluated in exact rationals.

use crate::binom::BinomPoly;
use crate::rational::{binom, frac, from_big, int, sign_pow, strict_ceil, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("class has {got} Euler characteristics, expected {want}")]
    ClassLength { got: usize, want: usize },
    #[error("top Euler characteristic vanishes; the class has dimension below n")]
    ZeroTop,
    #[error("need rank > 0, got {0}")]
    NonPositiveRank(String),
    #[error("need rank >= 2, got {0}")]
    RankBelowTwo(String),
    #[error("slopes must satisfy max >= muhat >= min")]
    SlopeOrder,
    #[error("the ambient needs mu_omega for this bound")]
    MissingMuOmega,
    #[error("the canonical degree {mu_omega} is below -d(n+1) = {floor}")]
    CanonicalDegree { mu_omega: String, floor: String },
    #[error("need m2 >= 1")]
    BadM2,
    #[error("need n >= {0}")]
    Dimension(u32),
    #[error("this bound is stated for surfaces (n = 2)")]
    NotSurface,
    #[error("weights and slopes must be nonempty and of equal length")]
    LanShape,
    #[error("weights must be positive")]
    LanWeight,
    #[error("slopes must be strictly descending")]
    LanOrder,
    #[error("need [C]^2 >= 1")]
    CurveSquare,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAmbient {
    n: u32,
    #[serde(with = "crate::rational::z")]
    d: BigInt,
    #[serde(rename = "muhat_O", alias = "muhat_o", with = "crate::rational::q")]
    muhat_o: Rational,
    #[serde(with = "crate::rational::q")]
    muhat_omega: Rational,
    #[serde(default, with = "crate::rational::q_opt")]
    mu_omega: Option<Rational>,
}

/// Numerical data of `(X, H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAmbient")]
pub struct AmbientGeometry {
    pub n: u32,
    #[serde(with = "crate::rational::z")]
    pub d: BigInt,
    #[serde(rename = "muhat_O", with = "crate::rational::q")]
    pub muhat_o: Rational,
    #[serde(with = "crate::rational::q")]
    pub muhat_omega: Rational,
    #[serde(skip_serializing_if = "Option::is_none", with = "crate::rational::q_opt")]
    pub mu_omega: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AmbientError {
    #[error("dimension must be at least 1")]
    Dimension,
    #[error("degree must be at least 1")]
    Degree,
}

impl TryFrom<RawAmbient> for AmbientGeometry {
    type Error = AmbientError;

    fn try_from(r: RawAmbient) -> Result<Self, AmbientError> {
        AmbientGeometry::new(r.n, r.d, r.muhat_o, r.muhat_omega, r.mu_omega)
    }
}

impl AmbientGeometry {
    pub fn new(
        n: u32,
        d: BigInt,
        muhat_o: Rational,
        muhat_omega: Rational,
        mu_omega: Option<Rational>,
    ) -> Result<Self, AmbientError> {
        if n < 1 {
            return Err(AmbientError::Dimension);
        }
        if d < BigInt::one() {
            return Err(AmbientError::Degree);
        }
        Ok(AmbientGeometry {
            n,
            d,
            muhat_o,
            muhat_omega,
            mu_omega,
        })
    }

    /// The projective plane with its hyperplane class.
    pub fn p2() -> Self {
        AmbientGeometry {
            n: 2,
            d: BigInt::one(),
            muhat_o: int(2),
            muhat_omega: int(-1),
            mu_omega: Some(int(-3)),
        }
    }

    /// Projective space `P^n` with its hyperplane class.
    pub fn pn(n: u32) -> Self {
        let n_i = n as i64;
        AmbientGeometry {
            n,
            d: BigInt::one(),
            muhat_o: int(n_i),
            muhat_omega: int(-1),
            mu_omega: Some(int(-(n_i + 1))),
        }
    }

    pub fn d_q(&self) -> Rational {
        from_big(&self.d)
    }

    /// `chi(O_{H^n}, O_X) = (-1)^n d`.
    pub fn chi_top_structure(&self) -> Rational {
        from_big(&(sign_pow(self.n as i64) * &self.d))
    }

    /// `chi(O_{H^{n-1}}, O_X)`, recovered from `muhat(O_X)`.
    pub fn chi_next_structure(&self) -> Rational {
        -(&self.muhat_o * self.chi_top_structure())
    }

    /// `mu = d (muhat - muhat(O_X))`.
    pub fn mu_from_muhat(&self, muhat: &Rational) -> Rational {
        self.d_q() * (muhat - &self.muhat_o)
    }

    pub fn muhat_from_mu(&self, mu: &Rational) -> Rational {
        mu / self.d_q() + &self.muhat_o
    }
}

/// `[chi(O_{H^n}, E), chi(O_{H^{n-1}}, E), ..., chi(O_X, E)]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericalClass {
    #[serde(with = "crate::rational::z_vec")]
    pub chi: Vec<BigInt>,
}

impl NumericalClass {
    pub fn new(chi: Vec<BigInt>) -> Self {
        NumericalClass { chi }
    }

    pub fn from_ints(chi: &[i64]) -> Self {
        NumericalClass {
            chi: chi.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    fn check(&self, amb: &AmbientGeometry) -> Result<(), BoundsError> {
        let want = amb.n as usize + 1;
        if self.chi.len() != want {
            return Err(BoundsError::ClassLength {
                got: self.chi.len(),
                want,
            });
        }
        Ok(())
    }

    /// `chi(O_{H^c}, E)`.
    pub fn chi_codim(&self, c: usize) -> &BigInt {
        &self.chi[self.chi.len() - 1 - c]
    }

    /// Coefficient `a_c = (-1)^c chi(O_{H^c}, E)` of `binom(t, c)` in the
    /// Hilbert polynomial.
    pub fn a(&self, c: usize) -> BigInt {
        sign_pow(c as i64) * self.chi_codim(c)
    }

    pub fn hilbert(&self) -> BinomPoly {
        BinomPoly::new((0..self.chi.len()).map(|c| from_big(&self.a(c))).collect())
    }

    /// Inverse of [`NumericalClass::hilbert`] for a class on an `n`-fold.
    pub fn from_hilbert(p: &BinomPoly, n: u32) -> Option<Self> {
        if p.degree() > n as i64 || !p.is_numerical() {
            return None;
        }
        let chi = (0..=n as usize)
            .rev()
            .map(|c| sign_pow(c as i64) * p.coeff(c).to_integer())
            .collect();
        Some(NumericalClass { chi })
    }

    pub fn add(&self, other: &NumericalClass) -> NumericalClass {
        NumericalClass {
            chi: self.chi.iter().zip(&other.chi).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> NumericalClass {
        NumericalClass {
            chi: self.chi.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> NumericalClass {
        NumericalClass {
            chi: self.chi.iter().map(|a| a * k).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Slopes {
    #[serde(with = "crate::rational::q")]
    pub rank: Rational,
    #[serde(with = "crate::rational::q")]
    pub deg: Rational,
    #[serde(with = "crate::rational::q")]
    pub mu: Rational,
    #[serde(with = "crate::rational::q")]
    pub muhat: Rational,
}

pub fn rank_deg_slopes(cls: &NumericalClass, amb: &AmbientGeometry) -> Result<Slopes, BoundsError> {
    cls.check(amb)?;
    let n = amb.n as usize;
    let top = from_big(cls.chi_codim(n));
    if top.is_zero() {
        return Err(BoundsError::ZeroTop);
    }
    let next = from_big(cls.chi_codim(n - 1));
    let rank = &top / amb.chi_top_structure();
    let sign = from_big(&sign_pow(amb.n as i64 - 1));
    let deg = sign * (&next - &rank * amb.chi_next_structure());
    let mu = &deg / &rank;
    let muhat = -(&next / &top);
    Ok(Slopes {
        rank,
        deg,
        mu,
        muhat,
    })
}

/// `binom(muhat, 2) + (n - muhat(O_X))(1 + muhat(omega_X)) / 2`.
pub fn pbar(muhat: &Rational, amb: &AmbientGeometry) -> Rational {
    let n = int(amb.n as i64);
    binom(muhat, 2) + (n - &amb.muhat_o) * (int(1) + &amb.muhat_omega) * frac(1, 2)
}

/// Adds `(max - muhat)(muhat - min) / 2` for sheaves that are not semistable.
pub fn pbar_general(
    muhat: &Rational,
    muhat_max: &Rational,
    muhat_min: &Rational,
    amb: &AmbientGeometry,
) -> Result<Rational, BoundsError> {
    if muhat_max < muhat || muhat < muhat_min {
        return Err(BoundsError::SlopeOrder);
    }
    Ok(pbar(muhat, amb) + (muhat_max - muhat) * (muhat - muhat_min) * frac(1, 2))
}

/// `binom(muhat, 2) + d^2 / 2`, needing only the degree.
pub fn pbar_crude(muhat: &Rational, d: &BigInt) -> Rational {
    let d = from_big(d);
    binom(muhat, 2) + &d * &d * frac(1, 2)
}

/// `max(binom(mu/d + 2, 2), binom(mu/d - mu(omega)/d - 1, 2))`.
pub fn pbar_sup2(mu: &Rational, amb: &AmbientGeometry) -> Result<Rational, BoundsError> {
    let mu_omega = amb.mu_omega.as_ref().ok_or(BoundsError::MissingMuOmega)?;
    let d = amb.d_q();
    let x = mu / &d;
    let hi = binom(&(&x + int(2)), 2);
    let lo = binom(&(&x - mu_omega / &d - int(1)), 2);
    Ok(hi.max(lo))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Violation,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Violation
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundednessReport {
    pub status: Status,
    #[serde(with = "crate::rational::q")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::q")]
    pub rhs: Rational,
    #[serde(with = "crate::rational::q")]
    pub margin: Rational,
}

/// Tests `(-1)^{n-2} chi(O_{H^{n-2}}, E) <= d rk Pbar(muhat, max, min)`.
///
/// Missing slope bounds default to `muhat`, the semistable case.
pub fn check_boundedness(
    cls: &NumericalClass,
    amb: &AmbientGeometry,
    muhat_max: Option<&Rational>,
    muhat_min: Option<&Rational>,
) -> Result<BoundednessReport, BoundsError> {
    if amb.n < 2 {
        return Err(BoundsError::Dimension(2));
    }
    let s = rank_deg_slopes(cls, amb)?;
    if !s.rank.is_positive() {
        return Err(BoundsError::NonPositiveRank(crate::rational::format(&s.rank)));
    }
    let max = muhat_max.unwrap_or(&s.muhat);
    let min = muhat_min.unwrap_or(&s.muhat);
    let p = pbar_general(&s.muhat, max, min, amb)?;
    let lhs = from_big(&(sign_pow(amb.n as i64 - 2) * cls.chi_codim(amb.n as usize - 2)));
    let rhs = amb.d_q() * &s.rank * p;
    let margin = &rhs - &lhs;
    Ok(BoundednessReport {
        status: Status::of(!margin.is_negative()),
        lhs,
        rhs,
        margin,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmbientReport {
    pub status: Status,
    pub violations: Vec<String>,
}

/// Canonical-degree check `mu(omega_X) >= -d(n+1)` and `d >= 1`.
pub fn validate_ambient(amb: &AmbientGeometry) -> AmbientReport {
    let mut violations = Vec::new();
    if amb.d < BigInt::one() {
        violations.push("degree below 1".to_string());
    }
    match &amb.mu_omega {
        None => violations.push("mu_omega missing".to_string()),
        Some(m) => {
            let floor = -(amb.d_q() * int(amb.n as i64 + 1));
            if *m < floor {
                violations.push(format!(
                    "mu_omega {} below -d(n+1) = {}",
                    crate::rational::format(m),
                    crate::rational::format(&floor)
                ));
            }
        }
    }
    AmbientReport {
        status: Status::of(violations.is_empty()),
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PushforwardBounds {
    #[serde(with = "crate::rational::q")]
    pub upper: Rational,
    #[serde(with = "crate::rational::q")]
    pub lower: Rational,
}

/// `(mu/d, mu/d - mu(omega)/d - (n+1))`.
pub fn pushforward_bounds(mu: &Rational, amb: &AmbientGeometry) -> Result<PushforwardBounds, BoundsError> {
    let mu_omega = amb.mu_omega.as_ref().ok_or(BoundsError::MissingMuOmega)?;
    let floor = -(amb.d_q() * int(amb.n as i64 + 1));
    if *mu_omega < floor {
        return Err(BoundsError::CanonicalDegree {
            mu_omega: crate::rational::format(mu_omega),
            floor: crate::rational::format(&floor),
        });
    }
    let d = amb.d_q();
    let upper = mu / &d;
    let lower = &upper - mu_omega / &d - int(amb.n as i64 + 1);
    Ok(PushforwardBounds { upper, lower })
}

/// Least `l` above `2(1 - rk)(LHS - d rk Pbar(muhat)) + 1/(d rk (rk - 1))`.
pub fn restriction_bound(cls: &NumericalClass, amb: &AmbientGeometry) -> Result<BigInt, BoundsError> {
    if amb.n < 2 {
        return Err(BoundsError::Dimension(2));
    }
    let s = rank_deg_slopes(cls, amb)?;
    if s.rank < int(2) {
        return Err(BoundsError::RankBelowTwo(crate::rational::format(&s.rank)));
    }
    let d = amb.d_q();
    let lhs = from_big(&(sign_pow(amb.n as i64 - 2) * cls.chi_codim(amb.n as usize - 2)));
    let gap = lhs - &d * &s.rank * pbar(&s.muhat, amb);
    let one = int(1);
    let threshold = int(2) * (&one - &s.rank) * gap + &one / (&d * &s.rank * (&s.rank - &one));
    Ok(strict_ceil(&threshold))
}

/// `min { m in Z : m > m2 Pbar(m1/m2) }`.
pub fn mmin(m1: &BigInt, m2: &BigInt, amb: &AmbientGeometry) -> Result<BigInt, BoundsError> {
    if *m2 < BigInt::one() {
        return Err(BoundsError::BadM2);
    }
    let q = Rational::new(m1.clone(), m2.clone());
    Ok(strict_ceil(&(from_big(m2) * pbar(&q, amb))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanReport {
    #[serde(with = "crate::rational::q")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::q")]
    pub rhs: Rational,
    pub holds: bool,
}

/// `sum_{i<j} r_i r_j (mu_i - mu_j)^2 <= R^2 (mu_0 - mubar)(mubar - mu_m)`
/// with `R = sum r_i` and `R mubar = sum r_i mu_i`.
pub fn lan_inequality(r: &[Rational], mu: &[Rational]) -> Result<LanReport, BoundsError> {
    if r.is_empty() || r.len() != mu.len() {
        return Err(BoundsError::LanShape);
    }
    if r.iter().any(|x| !x.is_positive()) {
        return Err(BoundsError::LanWeight);
    }
    if mu.windows(2).any(|w| w[0] <= w[1]) {
        return Err(BoundsError::LanOrder);
    }
    // sum_{i<j} r_i r_j (mu_i - mu_j)^2 = R S2 - S1^2 with S_k = sum r_i mu_i^k,
    // and R^2 (mu_0 - mubar)(mubar - mu_m) = (R mu_0 - S1)(S1 - R mu_m)
    let total: Rational = r.iter().sum();
    let s1: Rational = r.iter().zip(mu).map(|(a, b)| a * b).sum();
    let s2: Rational = r.iter().zip(mu).map(|(a, b)| a * b * b).sum();
    let lhs = &total * s2 - &s1 * &s1;
    let rhs = (&total * &mu[0] - &s1) * (&s1 - &total * &mu[mu.len() - 1]);
    Ok(LanReport {
        holds: lhs <= rhs,
        lhs,
        rhs,
    })
}

/// Numerical Chern data of a sheaf on a surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernSurface {
    #[serde(with = "crate::rational::z")]
    pub rank: BigInt,
    #[serde(with = "crate::rational::z")]
    pub c1_sq: BigInt,
    #[serde(rename = "c1_H", alias = "c1_h", with = "crate::rational::z")]
    pub c1_h: BigInt,
    #[serde(rename = "c1_K", alias = "c1_k", with = "crate::rational::z")]
    pub c1_k: BigInt,
    #[serde(with = "crate::rational::z")]
    pub c2: BigInt,
    #[serde(rename = "chi_OO", alias = "chi_oo", with = "crate::rational::z")]
    pub chi_oo: BigInt,
}

impl ChernSurface {
    /// `O(a_1) + ... + O(a_r)` on the projective plane.
    pub fn split_p2(degrees: &[i64]) -> Self {
        let c1: i64 = degrees.iter().sum();
        let mut c2 = 0i64;
        for i in 0..degrees.len() {
            for j in i + 1..degrees.len() {
                c2 += degrees[i] * degrees[j];
            }
        }
        ChernSurface {
            rank: BigInt::from(degrees.len()),
            c1_sq: BigInt::from(c1 * c1),
            c1_h: BigInt::from(c1),
            c1_k: BigInt::from(-3 * c1),
            c2: BigInt::from(c2),
            chi_oo: BigInt::one(),
        }
    }

    /// `mu = c1.H / rk`.
    pub fn mu(&self) -> Rational {
        Rational::new(self.c1_h.clone(), self.rank.clone())
    }
}

pub const NOT_STRONGLY_SEMISTABLE: &str = "not strongly semistable";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BogomolovReport {
    #[serde(with = "crate::rational::z")]
    pub discriminant: BigInt,
    pub certificate: Option<&'static str>,
}

/// `Delta = (rk - 1) c1^2 - 2 rk c2`; positive values certify instability.
pub fn bogomolov(ch: &ChernSurface) -> BogomolovReport {
    let discriminant = (&ch.rank - BigInt::one()) * &ch.c1_sq - BigInt::from(2) * &ch.rank * &ch.c2;
    let certificate = discriminant.is_positive().then_some(NOT_STRONGLY_SEMISTABLE);
    BogomolovReport {
        discriminant,
        certificate,
    }
}

fn surface_pbar(ch: &ChernSurface, mu: &Rational, amb: &AmbientGeometry) -> Result<Rational, BoundsError> {
    if amb.n != 2 {
        return Err(BoundsError::NotSurface);
    }
    if !ch.rank.is_positive() {
        return Err(BoundsError::NonPositiveRank(ch.rank.to_string()));
    }
    Ok(pbar(&amb.muhat_from_mu(mu), amb))
}

/// `2 d rk^2 Pbar - c1^2 - rk (c1.K) - 2 rk^2 chi(O, O)`.
pub fn delta_upper_bound(ch: &ChernSurface, mu: &Rational, amb: &AmbientGeometry) -> Result<Rational, BoundsError> {
    let p = surface_pbar(ch, mu, amb)?;
    let rk = from_big(&ch.rank);
    let rk2 = &rk * &rk;
    Ok(int(2) * amb.d_q() * &rk2 * p
        - from_big(&ch.c1_sq)
        - &rk * from_big(&ch.c1_k)
        - int(2) * rk2 * from_big(&ch.chi_oo))
}

/// `d rk Pbar - (c1.K)/2 - rk chi(O, O)`.
pub fn ch2_upper_bound(ch: &ChernSurface, mu: &Rational, amb: &AmbientGeometry) -> Result<Rational, BoundsError> {
    let p = surface_pbar(ch, mu, amb)?;
    let rk = from_big(&ch.rank);
    Ok(amb.d_q() * &rk * p - from_big(&ch.c1_k) * frac(1, 2) - rk * from_big(&ch.chi_oo))
}

/// `c1(L)^2 [C]^2 <= (c1(L).C)^2`.
pub fn hodge_check(c1l_sq: &BigInt, int_c1l_c: &BigInt, c_sq: &BigInt) -> Result<bool, BoundsError> {
    if *c_sq < BigInt::one() {
        return Err(BoundsError::CurveSquare);
    }
    Ok(c1l_sq * c_sq <= int_c1l_c * int_c1l_c)
}

/// `chi(O, L^m) = m^2/2 c1^2 + m/2 (c1.K) + chi(O, O)`.
pub fn rr_line_bundle(m: &BigInt, c1l_sq: &BigInt, c1l_k: &BigInt, chi_oo: &BigInt) -> Rational {
    let m = from_big(m);
    &m * &m * frac(1, 2) * from_big(c1l_sq) + m * frac(1, 2) * from_big(c1l_k) + from_big(chi_oo)
}

/// Least `m >= 1` with `chi(O, L^m) > bound`, or `None` when `c1^2 <= 0`.
pub fn rr_growth_witness(
    c1l_sq: &BigInt,
    c1l_k: &BigInt,
    chi_oo: &BigInt,
    bound: &Rational,
) -> Option<BigInt> {
    if !c1l_sq.is_positive() {
        return None;
    }
    let f = |m: &BigInt| rr_line_bundle(m, c1l_sq, c1l_k, chi_oo);
    let one = BigInt::one();
    if f(&one) > *bound {
        return Some(one);
    }
    // f decreases up to its vertex and increases after it, and f(1) is
    // already at most the bound, so the answer lies past the vertex
    let vertex = Rational::new(-c1l_k.clone(), BigInt::from(2) * c1l_sq);
    let mut lo = vertex.floor().to_integer().max(one.clone());
    if f(&lo) > *bound {
        return Some(lo);
    }
    let mut step = BigInt::one();
    let mut hi = &lo + &step;
    while f(&hi) <= *bound {
        lo = hi.clone();
        step *= 2;
        hi = &lo + &step;
    }
    // f(lo) <= bound < f(hi) with f increasing on [lo, hi]
    while &hi - &lo > one {
        let mid: BigInt = (&lo + &hi) / 2;
        if f(&mid) > *bound {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

#[cfg(test)]
mod test {
    use super::*;

    fn p2() -> AmbientGeometry {
        AmbientGeometry::p2()
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn slopes_of_structure_and_canonical() {
        let s = rank_deg_slopes(&NumericalClass::from_ints(&[1, -2, 1]), &p2()).unwrap();
        assert_eq!((s.rank, s.deg.clone(), s.muhat), (int(1), int(0), int(2)));
        let s = rank_deg_slopes(&NumericalClass::from_ints(&[1, 1, 1]), &p2()).unwrap();
        assert_eq!((s.deg, s.muhat), (int(-3), int(-1)));
        let s = rank_deg_slopes(&NumericalClass::from_ints(&[2, -4, 2]), &p2()).unwrap();
        assert_eq!((s.rank, s.muhat), (int(2), int(2)));
        assert_eq!(
            rank_deg_slopes(&NumericalClass::from_ints(&[0, 0, 1]), &p2()),
            Err(BoundsError::ZeroTop)
        );
        assert!(rank_deg_slopes(&NumericalClass::from_ints(&[1, 1]), &p2()).is_err());
    }

    #[test]
    fn muhat_matches_mu_translation() {
        // O(1) on P^2: binom(t+3, 2) = binom(t,2) + 3t + 3
        let amb = p2();
        let s = rank_deg_slopes(&NumericalClass::from_ints(&[1, -3, 3]), &amb).unwrap();
        assert_eq!(s.mu, int(1));
        assert_eq!(s.muhat, amb.muhat_from_mu(&s.mu));
        // P^3, O(2): binom(t+5, 3) = binom(t,3) + 5 binom(t,2) + 10 t + 10
        let amb = AmbientGeometry::pn(3);
        let cls = NumericalClass::from_hilbert(&BinomPoly::from_ints(&[10, 10, 5, 1]), 3).unwrap();
        let s = rank_deg_slopes(&cls, &amb).unwrap();
        assert_eq!((s.rank.clone(), s.mu.clone()), (int(1), int(2)));
        assert_eq!(s.muhat, amb.muhat_from_mu(&s.mu));
    }

    #[test]
    fn pbar_values() {
        let amb = p2();
        assert_eq!(pbar(&int(5), &amb), int(10));
        assert_eq!(pbar(&int(0), &amb), int(0));
        assert_eq!(pbar(&frac(1, 2), &amb), frac(-1, 8));
        let m = frac(7, 3);
        assert_eq!(pbar_general(&m, &m, &m, &amb).unwrap(), pbar(&m, &amb));
        assert_eq!(
            pbar_general(&m, &(&m + int(1)), &(&m - int(1)), &amb).unwrap(),
            pbar(&m, &amb) + frac(1, 2)
        );
        assert!(pbar_general(&m, &int(0), &int(0), &amb).is_err());
        assert_eq!(pbar_crude(&int(3), &b(2)), int(5));
    }

    #[test]
    fn sup2_takes_the_larger_candidate() {
        let amb = p2();
        // mu = 0: binom(2,2) = 1 against binom(0 + 3 - 1, 2) = 1
        assert_eq!(pbar_sup2(&int(0), &amb).unwrap(), int(1));
        // mu = -5: binom(-3,2) = 6 against binom(-3, 2) = 6
        assert_eq!(pbar_sup2(&int(-5), &amb).unwrap(), int(6));
        // on the plane both candidates agree; d = 2, mu(omega) = 0 separates them
        let wide = AmbientGeometry::new(2, b(2), int(0), int(0), Some(int(0))).unwrap();
        assert_eq!(pbar_sup2(&int(4), &wide).unwrap(), int(6));
        assert_eq!(pbar_sup2(&int(-8), &wide).unwrap(), int(15));
        let mut bare = amb;
        bare.mu_omega = None;
        assert_eq!(pbar_sup2(&int(0), &bare), Err(BoundsError::MissingMuOmega));
    }

    #[test]
    fn boundedness_reports() {
        let amb = p2();
        let r = check_boundedness(&NumericalClass::from_ints(&[1, -2, 1]), &amb, None, None).unwrap();
        assert_eq!((r.lhs, r.rhs, r.margin, r.status), (int(1), int(1), int(0), Status::Pass));
        let r = check_boundedness(&NumericalClass::from_ints(&[1, 1, 1]), &amb, None, None).unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (int(1), int(1), Status::Pass));
        let r = check_boundedness(&NumericalClass::from_ints(&[1, -2, 2]), &amb, None, None).unwrap();
        assert_eq!(r.status, Status::Violation);
        assert!(check_boundedness(&NumericalClass::from_ints(&[-1, 2, -1]), &amb, None, None).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let r = pushforward_bounds(&int(0), &p2()).unwrap();
        assert_eq!((r.upper, r.lower), (int(0), int(0)));
        let amb = AmbientGeometry::new(2, b(2), int(0), int(0), Some(int(0))).unwrap();
        let r = pushforward_bounds(&int(4), &amb).unwrap();
        assert_eq!((r.upper, r.lower), (int(2), int(-1)));
        let mut bare = p2();
        bare.mu_omega = None;
        assert_eq!(pushforward_bounds(&int(0), &bare), Err(BoundsError::MissingMuOmega));
    }

    #[test]
    fn canonical_degree_validation() {
        let amb = |n, d, m| AmbientGeometry::new(n, b(d), int(0), int(0), Some(int(m))).unwrap();
        assert!(validate_ambient(&amb(2, 1, -3)).status.is_pass());
        assert!(!validate_ambient(&amb(2, 1, -4)).status.is_pass());
        assert!(validate_ambient(&amb(3, 2, -8)).status.is_pass());
        assert!(AmbientGeometry::new(2, b(0), int(0), int(0), None).is_err());
    }

    #[test]
    fn restriction_examples() {
        // rank 2, mu-hat 2 and chi(O, E) = 2 gives margin 0
        let cls = NumericalClass::from_ints(&[2, -4, 2]);
        let r = check_boundedness(&cls, &p2(), None, None).unwrap();
        assert_eq!(r.margin, int(0));
        assert_eq!(restriction_bound(&cls, &p2()).unwrap(), b(1));
        let bumped = NumericalClass::from_ints(&[2, -4, 3]);
        assert!(restriction_bound(&bumped, &p2()).unwrap() <= b(1));
        assert!(restriction_bound(&NumericalClass::from_ints(&[1, -2, 1]), &p2()).is_err());
    }

    #[test]
    fn mmin_examples() {
        let amb = p2();
        assert_eq!(mmin(&b(0), &b(1), &amb).unwrap(), b(1));
        assert_eq!(mmin(&b(2), &b(1), &amb).unwrap(), b(2));
        assert_eq!(mmin(&b(0), &b(2), &amb).unwrap(), b(1));
        assert!(mmin(&b(0), &b(0), &amb).is_err());
    }

    #[test]
    fn lan_examples() {
        let q = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        let r = lan_inequality(&q(&[1, 1]), &q(&[1, 0])).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (int(1), int(1), true));
        let r = lan_inequality(&q(&[2, 1, 1]), &q(&[2, 1, 0])).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (int(11), int(15), true));
        let r = lan_inequality(&q(&[3]), &q(&[7])).unwrap();
        assert_eq!((r.lhs, r.rhs), (int(0), int(0)));
        assert_eq!(lan_inequality(&q(&[1, 1]), &q(&[0, 1])), Err(BoundsError::LanOrder));
        assert_eq!(lan_inequality(&q(&[1, 0]), &q(&[1, 0])), Err(BoundsError::LanWeight));
        assert_eq!(lan_inequality(&q(&[1]), &q(&[1, 0])), Err(BoundsError::LanShape));
    }

    #[test]
    fn bogomolov_examples() {
        for a in -5..=5 {
            assert_eq!(bogomolov(&ChernSurface::split_p2(&[a, a])).discriminant, b(0));
        }
        let r = bogomolov(&ChernSurface::split_p2(&[3, -1]));
        assert_eq!(r.discriminant, b(16));
        assert_eq!(r.certificate, Some(NOT_STRONGLY_SEMISTABLE));
        let mut line = ChernSurface::split_p2(&[0]);
        line.c2 = b(5);
        let r = bogomolov(&line);
        assert_eq!((r.discriminant, r.certificate), (b(-10), None));
    }

    #[test]
    fn delta_and_ch2_bounds() {
        let amb = p2();
        let zero = ChernSurface {
            rank: b(1),
            c1_sq: b(0),
            c1_h: b(0),
            c1_k: b(0),
            c2: b(0),
            chi_oo: b(0),
        };
        // mu = -2 puts muhat at 0, where Pbar vanishes
        assert_eq!(delta_upper_bound(&zero, &int(-2), &amb).unwrap(), int(0));
        let mut two = zero.clone();
        two.rank = b(2);
        // mu = 0 gives muhat 2 and Pbar 1
        assert_eq!(delta_upper_bound(&zero, &int(0), &amb).unwrap(), int(2));
        assert_eq!(delta_upper_bound(&two, &int(0), &amb).unwrap(), int(8));
        let ch = ChernSurface::split_p2(&[2, -1]);
        let mu = ch.mu();
        let delta = delta_upper_bound(&ch, &mu, &amb).unwrap();
        let ch2 = ch2_upper_bound(&ch, &mu, &amb).unwrap();
        let rk = from_big(&ch.rank);
        assert_eq!(ch2, (delta + from_big(&ch.c1_sq)) / (int(2) * rk));
    }

    #[test]
    fn hodge_and_witness() {
        assert_eq!(hodge_check(&b(-2), &b(0), &b(1)), Ok(true));
        assert_eq!(hodge_check(&b(1), &b(0), &b(1)), Ok(false));
        assert_eq!(hodge_check(&b(4), &b(2), &b(1)), Ok(true));
        assert!(hodge_check(&b(1), &b(0), &b(0)).is_err());
        assert_eq!(rr_growth_witness(&b(1), &b(0), &b(1), &int(10)), Some(b(5)));
        assert_eq!(rr_growth_witness(&b(0), &b(-1), &b(1), &int(10)), None);
        assert_eq!(rr_growth_witness(&b(1), &b(0), &b(100), &int(10)), Some(b(1)));
    }

    #[test]
    fn witness_is_least() {
        for c1 in 1..6 {
            for k in -20..20 {
                for bound in [-3, 0, 7, 50] {
                    let m = rr_growth_witness(&b(c1), &b(k), &b(1), &int(bound)).unwrap();
                    let f = |m: i64| rr_line_bundle(&b(m), &b(c1), &b(k), &b(1));
                    let m: i64 = m.try_into().unwrap();
                    assert!(f(m) > int(bound));
                    assert!((1..m).all(|j| f(j) <= int(bound)));
                }
            }
        }
    }

    #[test]
    fn ambient_json() {
        let amb: AmbientGeometry = serde_json::from_str(
            r#"{"n":2,"d":1,"muhat_O":"2","muhat_omega":"-1","mu_omega":-3}"#,
        )
        .unwrap();
        assert_eq!(amb, p2());
        assert!(serde_json::from_str::<AmbientGeometry>(
            r#"{"n":2,"d":0,"muhat_O":"2","muhat_omega":"-1"}"#
        )
        .is_err());
        assert!(serde_json::from_str::<AmbientGeometry>(
            r#"{"n":2,"d":1,"muhat_O":"2","muhat_omega":"-1","bogus":1}"#
        )
        .is_err());
    }
}
