//! Polynomials in the binomial basis `binom(t, d)`, positivity checks on
//! coefficient tuples and an alternating Euler-sum identity for
//! convolutions.

use crate::hn::SlopeVector;
use crate::rational::{binom, int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("no samples given")]
    NoSamples,
    #[error("tuples have different lengths")]
    RaggedTuples,
    #[error("deformation degree {q} is not below {p}")]
    DeformDegree { p: i64, q: i64 },
    #[error("hom table rows have different widths")]
    RaggedTable,
}

/// `c_0 + c_1 binom(t,1) + ... + c_r binom(t,r)`, trailing zeros dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomPoly {
    #[serde(with = "crate::rational::q_vec")]
    coeffs: Vec<Rational>,
}

impl BinomPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        BinomPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        BinomPoly { coeffs: vec![] }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Forward differences of the samples `P(0), P(1), ..., P(r)`.
    pub fn from_samples(values: &[Rational]) -> Result<Self, PolyError> {
        if values.is_empty() {
            return Err(PolyError::NoSamples);
        }
        let mut row = values.to_vec();
        let mut coeffs = Vec::with_capacity(values.len());
        while !row.is_empty() {
            coeffs.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Ok(Self::new(coeffs))
    }

    pub fn evaluate(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| c * binom(t, d as u32))
            .sum()
    }

    /// Value at `t = i`, as `(re, im)`.
    pub fn evaluate_gauss(&self) -> (Rational, Rational) {
        let mut b = Gauss::one();
        let mut acc = Gauss::zero();
        for (d, c) in self.coeffs.iter().enumerate() {
            acc = acc.add(&b.scale(c));
            // binom(i, d+1) = binom(i, d) * (i - d) / (d + 1)
            let k = int(d as i64);
            b = b.mul(&Gauss(-k, Rational::one())).scale(&Rational::new(
                BigInt::one(),
                BigInt::from(d as i64 + 1),
            ));
        }
        (acc.0, acc.1)
    }

    /// Coefficients in the monomial basis `1, t, t^2, ...`.
    pub fn to_monomial(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        // running product t(t-1)...(t-d+1)/d!
        let mut basis = vec![Rational::one()];
        for (d, c) in self.coeffs.iter().enumerate() {
            for (k, b) in basis.iter().enumerate() {
                out[k] += c * b;
            }
            let shift = int(d as i64);
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &shift;
            }
            let scale = int(d as i64 + 1);
            basis = next.into_iter().map(|x| x / &scale).collect();
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    pub fn from_monomial(coeffs: &[Rational]) -> Self {
        let samples: Vec<Rational> = (0..coeffs.len().max(1))
            .map(|t| {
                let t = int(t as i64);
                coeffs
                    .iter()
                    .rev()
                    .fold(Rational::zero(), |acc, c| acc * &t + c)
            })
            .collect();
        Self::from_samples(&samples).expect("at least one sample")
    }

    pub fn add(&self, other: &BinomPoly) -> BinomPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|d| self.coeff(d) + other.coeff(d)).collect())
    }

    pub fn scale(&self, s: &Rational) -> BinomPoly {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// True when every coefficient is an integer, which is the same as
    /// taking integer values at all integers.
    pub fn is_numerical(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficients from the top down, padded to `len` entries.
    pub fn top_down(&self, len: usize) -> Vec<Rational> {
        (0..len).rev().map(|d| self.coeff(d)).collect()
    }

    pub fn slope_vector(&self, len: usize) -> Result<SlopeVector, crate::hn::SlopeError> {
        SlopeVector::new(self.top_down(len))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Gauss(Rational, Rational);

impl Gauss {
    fn zero() -> Self {
        Gauss(Rational::zero(), Rational::zero())
    }

    fn one() -> Self {
        Gauss(Rational::one(), Rational::zero())
    }

    fn add(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 + &o.0, &self.1 + &o.1)
    }

    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss(
            &self.0 * &o.0 - &self.1 * &o.1,
            &self.0 * &o.1 + &self.1 * &o.0,
        )
    }

    fn scale(&self, s: &Rational) -> Gauss {
        Gauss(&self.0 * s, &self.1 * s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TupleViolation {
    pub sample: usize,
    pub coordinate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub positive: bool,
    pub exhaustive: bool,
    pub violations: Vec<TupleViolation>,
}

/// Checks the chain of sign conditions on each tuple `(x_0, ..., x_r)`:
/// `x_0 >= 0`, and for each `i`, `x_0 = ... = x_i = 0` forces `x_{i+1} >= 0`.
/// An all-zero tuple is allowed but makes the system non-exhaustive.
pub fn is_positive_system(tuples: &[Vec<Rational>]) -> Result<PositivityReport, PolyError> {
    if let Some(first) = tuples.first() {
        if tuples.iter().any(|t| t.len() != first.len()) {
            return Err(PolyError::RaggedTuples);
        }
    }
    let mut violations = Vec::new();
    let mut exhaustive = true;
    for (s, t) in tuples.iter().enumerate() {
        match t.iter().position(|x| !x.is_zero()) {
            None => exhaustive = false,
            Some(i) if t[i].is_negative() => violations.push(TupleViolation {
                sample: s,
                coordinate: i,
            }),
            Some(_) => {}
        }
    }
    Ok(PositivityReport {
        positive: violations.is_empty(),
        exhaustive,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopePolyReport {
    pub ok: bool,
    pub violations: Vec<usize>,
}

/// Every nonzero polynomial must have a positive leading coefficient.
pub fn is_slope_polynomial(polys: &[BinomPoly]) -> SlopePolyReport {
    let violations: Vec<usize> = polys
        .iter()
        .enumerate()
        .filter(|(_, p)| p.leading().is_some_and(|c| !c.is_positive()))
        .map(|(i, _)| i)
        .collect();
    SlopePolyReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// `p + scale * q`, allowed only when `deg q < deg p`.
pub fn deform(p: &BinomPoly, q: &BinomPoly, scale: &Rational) -> Result<BinomPoly, PolyError> {
    if !q.is_zero() && q.degree() >= p.degree() {
        return Err(PolyError::DeformDegree {
            p: p.degree(),
            q: q.degree(),
        });
    }
    Ok(p.add(&q.scale(scale)))
}

/// Deforms `p` by `q` with a scale linear in the coefficients of `p` above
/// `deg q`: `scale = sum_{i > deg q} weights[i - deg q - 1] * c_i(p)`.
pub fn deform_linear(
    p: &BinomPoly,
    q: &BinomPoly,
    weights: &[Rational],
) -> Result<BinomPoly, PolyError> {
    let base = (q.degree() + 1) as usize;
    let scale: Rational = weights
        .iter()
        .enumerate()
        .map(|(k, w)| w * p.coeff(base + k))
        .sum();
    deform(p, q, &scale)
}

/// `hom(L, A^i[j])` for `i = 0..=n`; row `i` is indexed by `j` starting at
/// `offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomTable {
    #[serde(default)]
    pub offset: i64,
    pub rows: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    #[serde(with = "crate::rational::z")]
    pub lhs: BigInt,
    #[serde(with = "crate::rational::z")]
    pub rhs: BigInt,
    pub equal: bool,
}

fn parity(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Compares `sum_j (-1)^j hom(L, T[j])` with
/// `sum_{i,j} (-1)^(n-i+j) hom(L, A^i[j])` over every index supplied.
///
/// `t_dims[k]` is `hom(L, T[t_offset + k])`.
pub fn convolution_euler(
    t_dims: &[u64],
    t_offset: i64,
    table: &HomTable,
    n: usize,
) -> Result<EulerReport, PolyError> {
    if table.rows.len() != n + 1 {
        return Err(PolyError::RaggedTable);
    }
    let lhs: BigInt = t_dims
        .iter()
        .enumerate()
        .map(|(k, &h)| parity(t_offset + k as i64) * BigInt::from(h))
        .sum();
    let mut rhs = BigInt::zero();
    for (i, row) in table.rows.iter().enumerate() {
        for (k, &h) in row.iter().enumerate() {
            let j = table.offset + k as i64;
            rhs += parity(n as i64 - i as i64 + j) * BigInt::from(h);
        }
    }
    Ok(EulerReport {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Hom dimensions into the convolution with zero differentials,
/// `T = (+)_i A^i[n - i]`, indexed from the returned offset.
pub fn split_convolution(table: &HomTable, n: usize) -> (Vec<u64>, i64) {
    // hom(L, T[j]) = sum_i hom(L, A^i[n - i + j])
    let width = table.rows.iter().map(Vec::len).max().unwrap_or(0) as i64;
    let lo = table.offset - n as i64;
    let hi = table.offset + width - 1;
    if hi < lo {
        return (vec![], 0);
    }
    let mut dims = vec![0u64; (hi - lo + 1) as usize];
    for (i, row) in table.rows.iter().enumerate() {
        for (k, &h) in row.iter().enumerate() {
            let shifted = table.offset + k as i64;
            let j = shifted - (n as i64 - i as i64);
            dims[(j - lo) as usize] += h;
        }
    }
    (dims, lo)
}
