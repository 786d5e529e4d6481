//! Three small categories with a slope: positive integers under division,
//! naturals under subtraction and vector spaces spanned by indexed lines.

pub mod factor;

use crate::hn::{hn_decompose, CategoryInstance, DeltaStep, HnError, SlopeVector};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

pub use factor::factorize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("zero is not an object here")]
    Zero,
    #[error("the zero vector space has no decomposition")]
    ZeroSpace,
    #[error(transparent)]
    Hn(#[from] HnError),
}

/// Positive integers; `n1 -> n2 -> n2/n1` whenever `n1 | n2`.
///
/// Slopes are exponent vectors over an ascending prime basis, so a prime
/// power of a larger prime dominates.
#[derive(Debug, Clone)]
pub struct PosIntDivision {
    primes: Vec<BigUint>,
}

impl PosIntDivision {
    pub fn new(mut primes: Vec<BigUint>) -> Self {
        primes.sort();
        primes.dedup();
        PosIntDivision { primes }
    }

    /// Basis made of the primes dividing any of `values`.
    pub fn covering<'a, I: IntoIterator<Item = &'a BigUint>>(values: I) -> Self {
        let primes = values
            .into_iter()
            .flat_map(|v| factorize(v).into_iter().map(|(p, _)| p))
            .collect();
        Self::new(primes)
    }

    pub fn primes(&self) -> &[BigUint] {
        &self.primes
    }

    pub fn supports(&self, n: &BigUint) -> bool {
        let mut rest = n.clone();
        for p in &self.primes {
            while (&rest % p).is_zero() {
                rest /= p;
            }
        }
        rest.is_one()
    }

    fn exponents(&self, n: &BigUint) -> Vec<BigInt> {
        let mut rest = n.clone();
        self.primes
            .iter()
            .map(|p| {
                let mut e = 0u32;
                while (&rest % p).is_zero() {
                    rest /= p;
                    e += 1;
                }
                BigInt::from(e)
            })
            .collect()
    }
}

impl CategoryInstance for PosIntDivision {
    type Object = BigUint;

    fn slope(&self, n: &BigUint) -> SlopeVector {
        SlopeVector::from_ints(self.exponents(n)).expect("exponents are nonnegative")
    }

    fn destabilize(&self, n: &BigUint) -> Option<DeltaStep<BigUint>> {
        let ex = self.exponents(n);
        if ex.iter().filter(|e| !e.is_zero()).count() < 2 {
            return None;
        }
        let top = ex.iter().rposition(|e| !e.is_zero())?;
        let e: u32 = ex[top].clone().try_into().ok()?;
        let sub = Pow::pow(&self.primes[top], e);
        let quotient = n / &sub;
        Some(DeltaStep::new(sub, n.clone(), quotient))
    }

    fn kclass(&self, n: &BigUint) -> Vec<BigInt> {
        self.exponents(n)
    }

    fn is_zero(&self, n: &BigUint) -> bool {
        n.is_one()
    }

    fn compose_quotients(&self, a: &DeltaStep<BigUint>, b: &DeltaStep<BigUint>) -> DeltaStep<BigUint> {
        DeltaStep::new(&a.whole / &b.quotient, a.whole.clone(), b.quotient.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosIntHn {
    #[serde(serialize_with = "ser_biguints")]
    pub factors: Vec<BigUint>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub unit: bool,
}

fn ser_biguints<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Prime-power factors of `n` ordered by descending prime.
pub fn hn_posint(n: &BigUint) -> Result<PosIntHn, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    if n.is_one() {
        return Ok(PosIntHn {
            factors: vec![],
            unit: true,
        });
    }
    let factors = factorize(n)
        .into_iter()
        .rev()
        .map(|(p, e)| Pow::pow(&p, e))
        .collect();
    Ok(PosIntHn {
        factors,
        unit: false,
    })
}

/// Same decomposition, obtained by running the generic engine.
pub fn hn_posint_engine(n: &BigUint) -> Result<PosIntHn, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    if n.is_one() {
        return Ok(PosIntHn {
            factors: vec![],
            unit: true,
        });
    }
    let inst = PosIntDivision::covering([n]);
    let seq = hn_decompose(&inst, n)?;
    Ok(PosIntHn {
        factors: seq.factors,
        unit: false,
    })
}

/// Composition series `1 -> p -> ... -> p^e` of a prime power.
pub fn jh_prime_power(p: &BigUint, e: u32) -> Vec<BigUint> {
    let mut chain = vec![BigUint::one()];
    for _ in 0..e {
        let next = chain.last().unwrap() * p;
        chain.push(next);
    }
    chain
}

/// Naturals with `n1 -> n2 -> n2 - n1`; every object is semistable.
#[derive(Debug, Clone, Copy, Default)]
pub struct NatSubtraction;

impl CategoryInstance for NatSubtraction {
    type Object = u64;

    fn slope(&self, n: &u64) -> SlopeVector {
        SlopeVector::from_ints([BigInt::from(*n)]).expect("naturals are nonnegative")
    }

    fn destabilize(&self, _: &u64) -> Option<DeltaStep<u64>> {
        None
    }

    fn kclass(&self, n: &u64) -> Vec<BigInt> {
        vec![BigInt::from(*n)]
    }

    fn is_zero(&self, n: &u64) -> bool {
        *n == 0
    }

    fn compose_quotients(&self, a: &DeltaStep<u64>, b: &DeltaStep<u64>) -> DeltaStep<u64> {
        DeltaStep::new(a.whole - b.quotient, a.whole, b.quotient)
    }
}

/// The chain `1 -> 2 -> ... -> n`, each step with quotient `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JhChain {
    pub top: u64,
}

impl JhChain {
    /// Number of arrows in the chain.
    pub fn length(&self) -> u64 {
        self.top - 1
    }

    pub fn terms(&self) -> impl Iterator<Item = u64> {
        1..=self.top
    }

    pub fn steps(&self) -> impl Iterator<Item = DeltaStep<u64>> {
        (1..self.top).map(|k| DeltaStep::new(k, k + 1, 1))
    }
}

pub fn jh_subtraction(n: u64) -> Result<JhChain, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    Ok(JhChain { top: n })
}

/// Subspaces spanned by lines `R v_i`; a larger index dominates.
///
/// Objects are index sets; slopes are indicator vectors over an ascending
/// index basis.
#[derive(Debug, Clone)]
pub struct VecSpace {
    basis: Vec<u64>,
}

impl VecSpace {
    pub fn new<I: IntoIterator<Item = u64>>(basis: I) -> Self {
        let set: BTreeSet<u64> = basis.into_iter().collect();
        VecSpace {
            basis: set.into_iter().collect(),
        }
    }

    fn indicator(&self, v: &BTreeSet<u64>) -> Vec<BigInt> {
        self.basis
            .iter()
            .map(|i| BigInt::from(v.contains(i) as u8))
            .collect()
    }
}

impl CategoryInstance for VecSpace {
    type Object = BTreeSet<u64>;

    fn slope(&self, v: &BTreeSet<u64>) -> SlopeVector {
        SlopeVector::from_ints(self.indicator(v)).expect("indicators are nonnegative")
    }

    fn destabilize(&self, v: &BTreeSet<u64>) -> Option<DeltaStep<BTreeSet<u64>>> {
        if v.len() < 2 {
            return None;
        }
        let top = *v.iter().next_back()?;
        let mut rest = v.clone();
        rest.remove(&top);
        Some(DeltaStep::new(BTreeSet::from([top]), v.clone(), rest))
    }

    fn kclass(&self, v: &BTreeSet<u64>) -> Vec<BigInt> {
        self.indicator(v)
    }

    fn is_zero(&self, v: &BTreeSet<u64>) -> bool {
        v.is_empty()
    }

    fn compose_quotients(
        &self,
        a: &DeltaStep<BTreeSet<u64>>,
        b: &DeltaStep<BTreeSet<u64>>,
    ) -> DeltaStep<BTreeSet<u64>> {
        let kernel = a.whole.difference(&b.quotient).copied().collect();
        DeltaStep::new(kernel, a.whole.clone(), b.quotient.clone())
    }
}

/// Line indices of the factors, in descending order.
pub fn hn_vecspace(indices: &[u64]) -> Result<Vec<u64>, ArithError> {
    let v: BTreeSet<u64> = indices.iter().copied().collect();
    if v.is_empty() {
        return Err(ArithError::ZeroSpace);
    }
    let inst = VecSpace::new(v.iter().copied());
    let seq = hn_decompose(&inst, &v)?;
    Ok(seq
        .factors
        .iter()
        .map(|f| *f.iter().next().expect("factors are lines"))
        .collect())
}
