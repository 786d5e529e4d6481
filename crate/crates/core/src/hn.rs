//! Vector slopes, Δ-steps and a generic Harder-Narasimhan engine.
//!
//! An instance supplies slopes, a destabilizing oracle and a way to compose
//! two quotient steps. The engine never looks inside objects.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt::Debug;

pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SlopeError {
    #[error("slope vectors have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("cannot compare the zero slope vector")]
    ZeroVector,
    #[error("empty slope vector")]
    Empty,
    #[error("first nonzero entry {0} is negative")]
    NegativeLeading(Rational),
}

/// A tuple `(x_0, ..., x_r)` whose first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeVector {
    #[serde(with = "crate::rational::q_vec")]
    coeffs: Vec<Rational>,
}

impl SlopeVector {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, SlopeError> {
        if coeffs.is_empty() {
            return Err(SlopeError::Empty);
        }
        if let Some(x) = coeffs.iter().find(|x| !x.is_zero()) {
            if x.is_negative() {
                return Err(SlopeError::NegativeLeading(x.clone()));
            }
        }
        Ok(SlopeVector { coeffs })
    }

    pub fn from_ints<I: IntoIterator<Item = BigInt>>(it: I) -> Result<Self, SlopeError> {
        Self::new(it.into_iter().map(Rational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn leading(&self) -> Option<usize> {
        self.coeffs.iter().position(|x| !x.is_zero())
    }
}

/// Orders slopes by `(x_1/x_0, ..., x_r/x_0)` lexicographically.
///
/// A zero leading entry beats a nonzero one; when both lead with zero the
/// comparison moves to the truncated tuples.
pub fn compare_slopes(a: &SlopeVector, b: &SlopeVector) -> Result<Ordering, SlopeError> {
    if a.len() != b.len() {
        return Err(SlopeError::LengthMismatch(a.len(), b.len()));
    }
    let (sa, sb) = match (a.leading(), b.leading()) {
        (Some(sa), Some(sb)) => (sa, sb),
        _ => return Err(SlopeError::ZeroVector),
    };
    if sa != sb {
        return Ok(sa.cmp(&sb));
    }
    let (la, lb) = (&a.coeffs[sa], &b.coeffs[sb]);
    for i in sa + 1..a.len() {
        // both leaders are positive, so cross-multiplying keeps the order
        let ord = (&a.coeffs[i] * lb).cmp(&(&b.coeffs[i] * la));
        if ord != Ordering::Equal {
            return Ok(ord);
        }
    }
    Ok(Ordering::Equal)
}

/// A distinguished triple `sub -> whole -> quotient`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaStep<O> {
    pub sub: O,
    pub whole: O,
    pub quotient: O,
}

impl<O> DeltaStep<O> {
    pub fn new(sub: O, whole: O, quotient: O) -> Self {
        DeltaStep {
            sub,
            whole,
            quotient,
        }
    }
}

/// Behavioral contract for a category with a slope.
///
/// `destabilize` must return a step whose `whole` is the given object and
/// whose `sub` strictly dominates it, or `None` when the object is
/// semistable. `compose_quotients` takes `K1 -> E1 -> E2` and
/// `K2 -> E2 -> E3` and returns some `K -> E1 -> E3`.
pub trait CategoryInstance {
    type Object: Clone + Debug + PartialEq;

    fn slope(&self, obj: &Self::Object) -> SlopeVector;
    fn destabilize(&self, obj: &Self::Object) -> Option<DeltaStep<Self::Object>>;
    fn kclass(&self, obj: &Self::Object) -> Vec<BigInt>;
    fn is_zero(&self, obj: &Self::Object) -> bool;
    fn compose_quotients(
        &self,
        first: &DeltaStep<Self::Object>,
        second: &DeltaStep<Self::Object>,
    ) -> DeltaStep<Self::Object>;
}

/// Filtration `E_0 -> E_1 -> ... -> E_n = E` with factors `F_0, ..., F_n`.
///
/// `factors[0]` is `E_0`; `factors[j + 1]` is the quotient of `steps[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnSequence<O> {
    pub object: O,
    pub steps: Vec<DeltaStep<O>>,
    pub factors: Vec<O>,
}

impl<O: Clone> HnSequence<O> {
    pub fn from_factors_and_steps(object: O, steps: Vec<DeltaStep<O>>) -> Self {
        let mut factors = Vec::with_capacity(steps.len() + 1);
        match steps.first() {
            Some(s) => factors.push(s.sub.clone()),
            None => factors.push(object.clone()),
        }
        factors.extend(steps.iter().map(|s| s.quotient.clone()));
        HnSequence {
            object,
            steps,
            factors,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HnError {
    #[error("cannot decompose the zero object")]
    ZeroObject,
    #[error("no decomposition within {0} oracle calls")]
    StepLimit(usize),
    #[error("oracle returned an invalid step: {0}")]
    BadOracle(String),
    #[error(transparent)]
    Slope(#[from] SlopeError),
}

fn check_step<C: CategoryInstance>(
    inst: &C,
    obj: &C::Object,
    step: &DeltaStep<C::Object>,
) -> Result<(), HnError> {
    if step.whole != *obj {
        return Err(HnError::BadOracle("whole differs from the input".into()));
    }
    if inst.is_zero(&step.sub) || inst.is_zero(&step.quotient) {
        return Err(HnError::BadOracle("zero sub or quotient".into()));
    }
    if !additive(inst, step) {
        return Err(HnError::BadOracle("K-classes are not additive".into()));
    }
    if compare_slopes(&inst.slope(&step.sub), &inst.slope(obj))? != Ordering::Greater {
        return Err(HnError::BadOracle("sub does not dominate".into()));
    }
    Ok(())
}

fn additive<C: CategoryInstance>(inst: &C, step: &DeltaStep<C::Object>) -> bool {
    let (a, b, c) = (
        inst.kclass(&step.sub),
        inst.kclass(&step.whole),
        inst.kclass(&step.quotient),
    );
    a.len() == b.len() && b.len() == c.len() && a.iter().zip(&c).zip(&b).all(|((x, z), y)| x + z == *y)
}

/// Returns the step `K -> obj -> B` with `B` the maximal destabilizing
/// quotient, or `None` if `obj` is semistable.
fn max_destabilizing_quotient<C: CategoryInstance>(
    inst: &C,
    obj: &C::Object,
    budget: &mut usize,
    max_steps: usize,
) -> Result<Option<DeltaStep<C::Object>>, HnError> {
    let mut acc: Option<DeltaStep<C::Object>> = None;
    let mut cur = obj.clone();
    loop {
        if *budget == 0 {
            return Err(HnError::StepLimit(max_steps));
        }
        *budget -= 1;
        let step = match inst.destabilize(&cur) {
            None => return Ok(acc),
            Some(step) => step,
        };
        check_step(inst, &cur, &step)?;
        cur = step.quotient.clone();
        acc = Some(match acc {
            None => step,
            Some(prev) => inst.compose_quotients(&prev, &step),
        });
    }
}

pub fn hn_decompose<C: CategoryInstance>(
    inst: &C,
    obj: &C::Object,
) -> Result<HnSequence<C::Object>, HnError> {
    hn_decompose_with_limit(inst, obj, DEFAULT_MAX_STEPS)
}

pub fn hn_decompose_with_limit<C: CategoryInstance>(
    inst: &C,
    obj: &C::Object,
    max_steps: usize,
) -> Result<HnSequence<C::Object>, HnError> {
    if inst.is_zero(obj) {
        return Err(HnError::ZeroObject);
    }
    let mut budget = max_steps;
    let mut peeled = Vec::new();
    let mut cur = obj.clone();
    loop {
        match max_destabilizing_quotient(inst, &cur, &mut budget, max_steps)? {
            None => break,
            Some(step) => {
                cur = step.sub.clone();
                peeled.push(step);
            }
        }
    }
    peeled.reverse();
    Ok(HnSequence::from_factors_and_steps(obj.clone(), peeled))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    Descent,
    Semistable,
    Chaining,
    Additivity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnViolation {
    pub clause: Clause,
    pub index: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct HnReport {
    pub violations: Vec<HnViolation>,
}

impl HnReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    fn push(&mut self, clause: Clause, index: usize) {
        self.violations.push(HnViolation { clause, index });
    }
}

pub fn verify_hn<C: CategoryInstance>(inst: &C, seq: &HnSequence<C::Object>) -> HnReport {
    let mut rep = HnReport::default();
    for (i, f) in seq.factors.iter().enumerate() {
        if inst.is_zero(f) || inst.destabilize(f).is_some() {
            rep.push(Clause::Semistable, i);
        }
    }
    for (i, w) in seq.factors.windows(2).enumerate() {
        let ord = compare_slopes(&inst.slope(&w[0]), &inst.slope(&w[1]));
        if ord != Ok(Ordering::Greater) {
            rep.push(Clause::Descent, i);
        }
    }
    if seq.factors.len() != seq.steps.len() + 1 {
        rep.push(Clause::Chaining, seq.steps.len());
    }
    for (j, s) in seq.steps.iter().enumerate() {
        if seq.factors.get(j + 1) != Some(&s.quotient) {
            rep.push(Clause::Chaining, j);
        }
        if !additive(inst, s) {
            rep.push(Clause::Additivity, j);
        }
    }
    for (j, w) in seq.steps.windows(2).enumerate() {
        if w[0].whole != w[1].sub {
            rep.push(Clause::Chaining, j);
        }
    }
    match (seq.steps.first(), seq.steps.last()) {
        (Some(first), Some(last)) => {
            if seq.factors.first() != Some(&first.sub) || last.whole != seq.object {
                rep.push(Clause::Chaining, 0);
            }
        }
        _ => {
            if seq.factors.first() != Some(&seq.object) {
                rep.push(Clause::Chaining, 0);
            }
        }
    }
    // the factors together must account for the whole K-class
    let total = inst.kclass(&seq.object);
    let mut sum = vec![BigInt::zero(); total.len()];
    for f in &seq.factors {
        let k = inst.kclass(f);
        if k.len() != sum.len() {
            rep.push(Clause::Additivity, seq.steps.len());
            return rep;
        }
        for (s, x) in sum.iter_mut().zip(k) {
            *s += x;
        }
    }
    if sum != total {
        rep.push(Clause::Additivity, seq.steps.len());
    }
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Seesaw {
    Up,
    Down,
    Flat,
    Violation,
}

/// Classifies a step by the pairwise slope order of its three terms.
pub fn seesaw_check<O, F>(slope: F, step: &DeltaStep<O>) -> Seesaw
where
    F: Fn(&O) -> SlopeVector,
{
    let (a, b, c) = (slope(&step.sub), slope(&step.whole), slope(&step.quotient));
    let (ab, ac, bc) = match (
        compare_slopes(&a, &b),
        compare_slopes(&a, &c),
        compare_slopes(&b, &c),
    ) {
        (Ok(x), Ok(y), Ok(z)) => (x, y, z),
        _ => return Seesaw::Violation,
    };
    match (ab, ac, bc) {
        (Ordering::Less, Ordering::Less, Ordering::Less) => Seesaw::Up,
        (Ordering::Greater, Ordering::Greater, Ordering::Greater) => Seesaw::Down,
        (Ordering::Equal, Ordering::Equal, Ordering::Equal) => Seesaw::Flat,
        _ => Seesaw::Violation,
    }
}
