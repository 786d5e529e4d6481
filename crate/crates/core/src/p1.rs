//! Split coherent sheaves on the projective line, their Hilbert
//! polynomials, HN filtrations and the tilt by `O(-1)`.

use crate::binom::BinomPoly;
use crate::hn::{hn_decompose, CategoryInstance, DeltaStep, HnError, HnSequence, SlopeVector};
use crate::rational::int;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum P1Error {
    #[error("torsion length at `{0}` must be positive")]
    EmptyTorsion(String),
    #[error("shifted part may only hold line bundles of degree <= -1, got {0}")]
    BadShifted(i64),
    #[error("plain part may only hold line bundles of degree >= 0, got {0}")]
    BadPlain(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionPoint {
    pub pt: String,
    pub len: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSheaf {
    #[serde(default)]
    bundles: Vec<i64>,
    #[serde(default)]
    torsion: Vec<TorsionPoint>,
}

/// `O(a_1) + ... + O(a_k)` plus torsion at labelled points.
///
/// Kept normalized: degrees descending, one torsion entry per point,
/// points sorted by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSheaf")]
pub struct SheafP1 {
    bundles: Vec<i64>,
    torsion: Vec<TorsionPoint>,
}

impl TryFrom<RawSheaf> for SheafP1 {
    type Error = P1Error;

    fn try_from(raw: RawSheaf) -> Result<Self, P1Error> {
        let torsion = raw
            .torsion
            .into_iter()
            .map(|t| (t.pt, t.len))
            .collect::<Vec<_>>();
        SheafP1::new(raw.bundles, torsion)
    }
}

impl SheafP1 {
    pub fn new<S: Into<String>>(bundles: Vec<i64>, torsion: Vec<(S, u64)>) -> Result<Self, P1Error> {
        let mut merged: BTreeMap<String, u64> = BTreeMap::new();
        for (pt, len) in torsion {
            let pt = pt.into();
            if len == 0 {
                return Err(P1Error::EmptyTorsion(pt));
            }
            *merged.entry(pt).or_default() += len;
        }
        let mut bundles = bundles;
        bundles.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SheafP1 {
            bundles,
            torsion: merged
                .into_iter()
                .map(|(pt, len)| TorsionPoint { pt, len })
                .collect(),
        })
    }

    pub fn line(a: i64) -> Self {
        SheafP1 {
            bundles: vec![a],
            torsion: vec![],
        }
    }

    pub fn bundles(degrees: &[i64]) -> Self {
        Self::new::<String>(degrees.to_vec(), vec![]).expect("no torsion")
    }

    pub fn skyscraper(pt: &str, len: u64) -> Self {
        Self::new(vec![], vec![(pt, len)]).expect("positive length")
    }

    pub fn zero() -> Self {
        SheafP1 {
            bundles: vec![],
            torsion: vec![],
        }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.bundles
    }

    pub fn torsion(&self) -> &[TorsionPoint] {
        &self.torsion
    }

    pub fn rank(&self) -> i64 {
        self.bundles.len() as i64
    }

    pub fn torsion_length(&self) -> i64 {
        self.torsion.iter().map(|t| t.len as i64).sum()
    }

    /// `chi(O, E) = sum (a_i + 1) + total torsion length`.
    pub fn euler(&self) -> i64 {
        self.bundles.iter().map(|a| a + 1).sum::<i64>() + self.torsion_length()
    }

    pub fn degree(&self) -> i64 {
        self.bundles.iter().sum::<i64>() + self.torsion_length()
    }

    pub fn is_zero(&self) -> bool {
        self.bundles.is_empty() && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.bundles.is_empty() && !self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &SheafP1) -> SheafP1 {
        let bundles = self.bundles.iter().chain(&other.bundles).copied().collect();
        let torsion = self
            .torsion
            .iter()
            .chain(&other.torsion)
            .map(|t| (t.pt.clone(), t.len))
            .collect();
        SheafP1::new(bundles, torsion).expect("lengths stay positive")
    }

    /// Removes the summands of `part`, which must be a summand of `self`.
    pub fn remove(&self, part: &SheafP1) -> SheafP1 {
        let mut bundles = self.bundles.clone();
        for a in &part.bundles {
            let pos = bundles.iter().position(|b| b == a).expect("summand present");
            bundles.remove(pos);
        }
        let mut torsion: BTreeMap<String, u64> =
            self.torsion.iter().map(|t| (t.pt.clone(), t.len)).collect();
        for t in &part.torsion {
            let slot = torsion.get_mut(&t.pt).expect("summand present");
            *slot -= t.len;
            if *slot == 0 {
                torsion.remove(&t.pt);
            }
        }
        SheafP1::new(bundles, torsion.into_iter().collect()).expect("lengths stay positive")
    }

    fn torsion_part(&self) -> SheafP1 {
        SheafP1 {
            bundles: vec![],
            torsion: self.torsion.clone(),
        }
    }
}

/// `P(t) = chi(E(t)) = rank * t + chi(E)`.
pub fn hilbert_p1(e: &SheafP1) -> BinomPoly {
    BinomPoly::from_ints(&[e.euler(), e.rank()])
}

/// Sheaves on the line with slope vector `(rank, chi)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct P1Sheaves;

impl CategoryInstance for P1Sheaves {
    type Object = SheafP1;

    fn slope(&self, e: &SheafP1) -> SlopeVector {
        SlopeVector::from_ints([BigInt::from(e.rank()), BigInt::from(e.euler())])
            .expect("torsion has positive length")
    }

    fn destabilize(&self, e: &SheafP1) -> Option<DeltaStep<SheafP1>> {
        let sub = if !e.torsion.is_empty() && !e.bundles.is_empty() {
            e.torsion_part()
        } else {
            let top = *e.bundles.first()?;
            if e.bundles.iter().all(|&a| a == top) {
                return None;
            }
            let k = e.bundles.iter().filter(|&&a| a == top).count();
            SheafP1::bundles(&vec![top; k])
        };
        let quotient = e.remove(&sub);
        Some(DeltaStep::new(sub, e.clone(), quotient))
    }

    fn kclass(&self, e: &SheafP1) -> Vec<BigInt> {
        vec![BigInt::from(e.rank()), BigInt::from(e.degree())]
    }

    fn is_zero(&self, e: &SheafP1) -> bool {
        e.is_zero()
    }

    fn compose_quotients(&self, a: &DeltaStep<SheafP1>, b: &DeltaStep<SheafP1>) -> DeltaStep<SheafP1> {
        DeltaStep::new(a.whole.remove(&b.quotient), a.whole.clone(), b.quotient.clone())
    }
}

/// Torsion first, then bundle groups of equal degree, descending.
pub fn hn_p1(e: &SheafP1) -> Result<HnSequence<SheafP1>, HnError> {
    hn_decompose(&P1Sheaves, e)
}

/// An object `F[1] + G` of the tilted heart, with `F` a sum of `O(a)`,
/// `a <= -1`, and `G` a sheaf whose bundles have degree `>= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TiltedObjP1 {
    pub shifted: SheafP1,
    pub plain: SheafP1,
}

impl TiltedObjP1 {
    pub fn new(shifted: SheafP1, plain: SheafP1) -> Result<Self, P1Error> {
        if let Some(&a) = shifted.bundles.iter().find(|&&a| a > -1) {
            return Err(P1Error::BadShifted(a));
        }
        if !shifted.torsion.is_empty() {
            return Err(P1Error::BadShifted(0));
        }
        if let Some(&a) = plain.bundles.iter().find(|&&a| a < 0) {
            return Err(P1Error::BadPlain(a));
        }
        Ok(TiltedObjP1 { shifted, plain })
    }

    pub fn direct_sum(&self, other: &TiltedObjP1) -> TiltedObjP1 {
        TiltedObjP1 {
            shifted: self.shifted.direct_sum(&other.shifted),
            plain: self.plain.direct_sum(&other.plain),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.shifted.is_zero() && self.plain.is_zero()
    }

    /// Rank counted with sign, so the shifted part contributes negatively.
    pub fn rank(&self) -> i64 {
        self.plain.rank() - self.shifted.rank()
    }
}

/// Splits the bundle summands at degree `-1`; the low ones become `F[1]`.
pub fn tilt_p1(e: &SheafP1) -> TiltedObjP1 {
    let (low, high): (Vec<i64>, Vec<i64>) = e.bundles.iter().partition(|&&a| a <= -1);
    let torsion = e.torsion.iter().map(|t| (t.pt.clone(), t.len)).collect();
    TiltedObjP1 {
        shifted: SheafP1::bundles(&low),
        plain: SheafP1::new(high, torsion).expect("lengths stay positive"),
    }
}

/// `chi(O(a), E)`.
pub fn euler_from_line(a: i64, e: &SheafP1) -> i64 {
    e.bundles.iter().map(|b| b - a + 1).sum::<i64>() + e.torsion_length()
}

fn euler_tilted(a: i64, obj: &TiltedObjP1) -> i64 {
    euler_from_line(a, &obj.plain) - euler_from_line(a, &obj.shifted)
}

/// `chi(O + O(1), obj)`; positive on every nonzero heart object.
pub fn kronecker_slope(obj: &TiltedObjP1) -> i64 {
    euler_tilted(0, obj) + euler_tilted(1, obj)
}

/// Dimension vector `(chi(O, obj), chi(O, obj) - rank)` of the
/// corresponding Kronecker module.
pub fn kronecker_dim(obj: &TiltedObjP1) -> (i64, i64) {
    let a = euler_tilted(0, obj);
    (a, a - obj.rank())
}

/// Hilbert polynomial of a tilted object, `P(plain) - P(shifted)`.
pub fn hilbert_tilted(obj: &TiltedObjP1) -> BinomPoly {
    hilbert_p1(&obj.plain).add(&hilbert_p1(&obj.shifted).scale(&int(-1)))
}
