//! Tilted hearts on surfaces: the degree-one slope polynomial, central
//! charges at `t = i`, exact phase comparison and heart membership.

use crate::binom::{is_positive_system, BinomPoly, PositivityReport};
use crate::bounds::{mmin, pbar, AmbientGeometry, BoundsError, NumericalClass, Status};
use crate::hn::SlopeVector;
use crate::rational::{frac, from_big, int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TiltError {
    #[error("tilted charges are defined for surfaces only (n = 2), got n = {0}")]
    NotSurface(u32),
    #[error("need m2 >= 1")]
    BadM2,
    #[error("the class has zero charge")]
    ZeroCharge,
    #[error("charge lies off the closed upper half-plane minus the positive reals")]
    OutsideHalfPlane,
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTilt {
    #[serde(with = "crate::rational::z")]
    m0: BigInt,
    #[serde(with = "crate::rational::z")]
    m1: BigInt,
    #[serde(with = "crate::rational::z")]
    m2: BigInt,
}

/// Integers `m0, m1` and `m2 >= 1`; the tilt slope is `q = m1/m2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTilt")]
pub struct TiltParams {
    #[serde(with = "crate::rational::z")]
    pub m0: BigInt,
    #[serde(with = "crate::rational::z")]
    pub m1: BigInt,
    #[serde(with = "crate::rational::z")]
    pub m2: BigInt,
}

impl TryFrom<RawTilt> for TiltParams {
    type Error = TiltError;

    fn try_from(r: RawTilt) -> Result<Self, TiltError> {
        TiltParams::new(r.m0, r.m1, r.m2)
    }
}

impl TiltParams {
    pub fn new(m0: BigInt, m1: BigInt, m2: BigInt) -> Result<Self, TiltError> {
        if m2 < BigInt::one() {
            return Err(TiltError::BadM2);
        }
        Ok(TiltParams { m0, m1, m2 })
    }

    pub fn from_ints(m0: i64, m1: i64, m2: i64) -> Result<Self, TiltError> {
        Self::new(BigInt::from(m0), BigInt::from(m1), BigInt::from(m2))
    }

    pub fn q(&self) -> Rational {
        Rational::new(self.m1.clone(), self.m2.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TiltedCoeffs {
    #[serde(with = "crate::rational::z")]
    pub c1: BigInt,
    #[serde(with = "crate::rational::z")]
    pub c0: BigInt,
}

impl TiltedCoeffs {
    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c0.is_zero()
    }

    /// `(c1, c0)` as a slope vector.
    pub fn slope_vector(&self) -> Result<SlopeVector, crate::hn::SlopeError> {
        SlopeVector::from_ints([self.c1.clone(), self.c0.clone()])
    }
}

fn surface(cls: &NumericalClass, amb: &AmbientGeometry) -> Result<(), TiltError> {
    if amb.n != 2 {
        return Err(TiltError::NotSurface(amb.n));
    }
    if cls.chi.len() != 3 {
        return Err(BoundsError::ClassLength {
            got: cls.chi.len(),
            want: 3,
        }
        .into());
    }
    Ok(())
}

/// `c1 = m2 a_1 - m1 a_2` and `c0 = m2 a_0 - m0 a_2`, where `a_c` is the
/// coefficient of `binom(t, c)` in the Hilbert polynomial.
pub fn tilted_coeffs(
    cls: &NumericalClass,
    tp: &TiltParams,
    amb: &AmbientGeometry,
) -> Result<TiltedCoeffs, TiltError> {
    surface(cls, amb)?;
    let (a0, a1, a2) = (cls.a(0), cls.a(1), cls.a(2));
    Ok(TiltedCoeffs {
        c1: &tp.m2 * a1 - &tp.m1 * &a2,
        c0: &tp.m2 * a0 - &tp.m0 * a2,
    })
}

/// `c1 t + c0`.
pub fn slope_poly_q(
    cls: &NumericalClass,
    tp: &TiltParams,
    amb: &AmbientGeometry,
) -> Result<BinomPoly, TiltError> {
    let c = tilted_coeffs(cls, tp, amb)?;
    Ok(BinomPoly::new(vec![from_big(&c.c0), from_big(&c.c1)]))
}

/// Euler pairing with the cone, expanded literally:
/// `-m2 P(E) + (m2 binom(t,2) + m1 t + m0) chi(O_{H^2}, E)`.
///
/// This is the negative of [`slope_poly_q`].
pub fn cone_euler(
    cls: &NumericalClass,
    tp: &TiltParams,
    amb: &AmbientGeometry,
) -> Result<BinomPoly, TiltError> {
    surface(cls, amb)?;
    let mult = BinomPoly::new(vec![from_big(&tp.m0), from_big(&tp.m1), from_big(&tp.m2)]);
    let top = from_big(cls.chi_codim(2));
    Ok(cls
        .hilbert()
        .scale(&-from_big(&tp.m2))
        .add(&mult.scale(&top)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralCharge {
    #[serde(with = "crate::rational::q")]
    pub re: Rational,
    #[serde(with = "crate::rational::q")]
    pub im: Rational,
}

impl CentralCharge {
    pub fn add(&self, o: &CentralCharge) -> CentralCharge {
        CentralCharge {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn in_half_plane(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }
}

/// `Z = -c0 + i c1`.
pub fn central_charge(
    cls: &NumericalClass,
    tp: &TiltParams,
    amb: &AmbientGeometry,
) -> Result<CentralCharge, TiltError> {
    let c = tilted_coeffs(cls, tp, amb)?;
    if c.is_zero() {
        return Err(TiltError::ZeroCharge);
    }
    Ok(CentralCharge {
        re: -from_big(&c.c0),
        im: from_big(&c.c1),
    })
}

/// Phase in `(0, 1]` pinned to an exact value or an open octant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseDescriptor {
    #[serde(with = "crate::rational::q")]
    pub lower: Rational,
    #[serde(with = "crate::rational::q")]
    pub upper: Rational,
    pub exact: bool,
}

impl PhaseDescriptor {
    fn exact(v: Rational) -> Self {
        PhaseDescriptor {
            lower: v.clone(),
            upper: v,
            exact: true,
        }
    }

    fn open(lower: Rational, upper: Rational) -> Self {
        PhaseDescriptor {
            lower,
            upper,
            exact: false,
        }
    }
}

pub fn phase(z: &CentralCharge) -> Result<PhaseDescriptor, TiltError> {
    if !z.in_half_plane() {
        return Err(TiltError::OutsideHalfPlane);
    }
    if z.im.is_zero() {
        return Ok(PhaseDescriptor::exact(int(1)));
    }
    let (re, im) = (&z.re, &z.im);
    Ok(match re.cmp(&Rational::zero()) {
        Ordering::Equal => PhaseDescriptor::exact(frac(1, 2)),
        Ordering::Greater => match im.cmp(re) {
            Ordering::Equal => PhaseDescriptor::exact(frac(1, 4)),
            Ordering::Less => PhaseDescriptor::open(int(0), frac(1, 4)),
            Ordering::Greater => PhaseDescriptor::open(frac(1, 4), frac(1, 2)),
        },
        Ordering::Less => match im.cmp(&-re) {
            Ordering::Equal => PhaseDescriptor::exact(frac(3, 4)),
            Ordering::Greater => PhaseDescriptor::open(frac(1, 2), frac(3, 4)),
            Ordering::Less => PhaseDescriptor::open(frac(3, 4), int(1)),
        },
    })
}

/// Orders charges by argument using the cross product; both must lie in
/// the upper half-plane or on the negative real axis.
pub fn compare_phase(a: &CentralCharge, b: &CentralCharge) -> Result<Ordering, TiltError> {
    if !a.in_half_plane() || !b.in_half_plane() {
        return Err(TiltError::OutsideHalfPlane);
    }
    let cross = &a.re * &b.im - &a.im * &b.re;
    Ok(Rational::zero().cmp(&cross))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HeartPart {
    TorsionPart,
    #[serde(rename = "FreePart_Fq")]
    FreePartFq,
    #[serde(rename = "FreePart_Fperp")]
    FreePartFperp,
}

/// Where a sheaf sits relative to the torsion pair cut at `q`.
pub fn heart_membership(muhat: &Rational, is_torsion: bool, tp: &TiltParams) -> HeartPart {
    if is_torsion {
        HeartPart::TorsionPart
    } else if *muhat <= tp.q() {
        HeartPart::FreePartFq
    } else {
        HeartPart::FreePartFperp
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeSequenceReport {
    pub status: Status,
    pub gate: Status,
    #[serde(with = "crate::rational::z")]
    pub m0: BigInt,
    #[serde(with = "crate::rational::z")]
    pub mmin: BigInt,
    /// `m2 Pbar(q)`, which `m0` must exceed.
    #[serde(with = "crate::rational::q")]
    pub strict_threshold: Rational,
    pub coeffs: Vec<TiltedCoeffs>,
    pub positivity: PositivityReport,
    pub first_violation: Option<usize>,
}

/// Checks `m0 >= mmin(m1, m2)` and positivity of `(c1, c0)` on each sample.
///
/// A sample with zero charge also counts as a violation.
pub fn check_slope_sequence(
    tp: &TiltParams,
    amb: &AmbientGeometry,
    samples: &[NumericalClass],
) -> Result<SlopeSequenceReport, TiltError> {
    if amb.n != 2 {
        return Err(TiltError::NotSurface(amb.n));
    }
    let m = mmin(&tp.m1, &tp.m2, amb)?;
    let threshold = from_big(&tp.m2) * pbar(&tp.q(), amb);
    let gate = Status::of(tp.m0 >= m);
    let coeffs = samples
        .iter()
        .map(|s| tilted_coeffs(s, tp, amb))
        .collect::<Result<Vec<_>, _>>()?;
    let tuples: Vec<Vec<Rational>> = coeffs
        .iter()
        .map(|c| vec![from_big(&c.c1), from_big(&c.c0)])
        .collect();
    let positivity = is_positive_system(&tuples).expect("tuples share a length");
    let first_violation = coeffs.iter().enumerate().find_map(|(i, c)| {
        let bad = c.c1.is_negative() || (c.c1.is_zero() && !c.c0.is_positive());
        bad.then_some(i)
    });
    Ok(SlopeSequenceReport {
        status: Status::of(gate.is_pass() && first_violation.is_none()),
        gate,
        m0: tp.m0.clone(),
        mmin: m,
        strict_threshold: threshold,
        coeffs,
        positivity,
        first_violation,
    })
}
