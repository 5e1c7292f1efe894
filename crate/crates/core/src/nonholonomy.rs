//! Span dimension and degree of nonholonomy of a system of polynomial
//! vector fields at a point.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::bounds::{bound_thm5, Eq8Grouping};
use crate::error::{Error, Result};
use crate::lie::{lie_bracket, PolyVectorField};
use crate::rational::Rational;

/// A nonempty family of vector fields on a common space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorFieldSystem {
    fields: Vec<PolyVectorField>,
}

impl VectorFieldSystem {
    pub fn new(fields: Vec<PolyVectorField>) -> Result<Self> {
        let first = fields.first().ok_or(Error::EmptySystem)?;
        let n = first.nvars();
        for f in &fields {
            if f.nvars() != n {
                return Err(Error::VarCountMismatch {
                    expected: n,
                    found: f.nvars(),
                });
            }
        }
        Ok(VectorFieldSystem { fields })
    }

    pub fn fields(&self) -> &[PolyVectorField] {
        &self.fields
    }

    pub fn nvars(&self) -> usize {
        self.fields[0].nvars()
    }

    /// Maximum coefficient degree over the system.
    pub fn q(&self) -> u32 {
        self.fields.iter().map(PolyVectorField::coeff_degree).max().unwrap_or(0)
    }
}

/// Lyndon words over `letters` symbols of length at most `max_len`, sorted
/// by length and then lexicographically (Duval's generation order within a
/// length).
pub fn lyndon_words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if letters == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        out.push(w.clone());
        // extend periodically to max_len, then increment the last letter
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(letters - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(c) => *c += 1,
            None => break,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Standard factorization `w = u·v` with `v` the longest proper Lyndon
/// suffix; defines the bracketing `[u, v]` of a Lyndon word.
fn standard_split(word: &[usize]) -> usize {
    (1..word.len())
        .find(|&i| is_lyndon(&word[i..]))
        .expect("every Lyndon word of length ≥ 2 has a proper Lyndon suffix")
}

fn is_lyndon(w: &[usize]) -> bool {
    (1..w.len()).all(|i| w < &w[i..])
}

/// One element of the Hall (Lyndon) basis instantiated on the system.
#[derive(Debug, Clone)]
pub struct HallElement {
    /// Generator indices; the bracket order is the word length.
    pub word: Vec<usize>,
    pub field: PolyVectorField,
}

impl HallElement {
    pub fn order(&self) -> usize {
        self.word.len()
    }
}

/// Streams the Hall-basis brackets of orders `1..=max_order`, computing each
/// bracket from its two (memoized) factors.
pub struct HallBrackets<'a> {
    sys: &'a VectorFieldSystem,
    words: std::vec::IntoIter<Vec<usize>>,
    memo: HashMap<Vec<usize>, PolyVectorField>,
}

pub fn hall_brackets(sys: &VectorFieldSystem, max_order: usize) -> HallBrackets<'_> {
    HallBrackets {
        sys,
        words: lyndon_words(sys.fields.len(), max_order).into_iter(),
        memo: HashMap::new(),
    }
}

impl Iterator for HallBrackets<'_> {
    type Item = Result<HallElement>;

    fn next(&mut self) -> Option<Self::Item> {
        let word = self.words.next()?;
        let field = if word.len() == 1 {
            Ok(self.sys.fields[word[0]].clone())
        } else {
            let split = standard_split(&word);
            let u = &self.memo[&word[..split]];
            let v = &self.memo[&word[split..]];
            lie_bracket(u, v)
        };
        Some(field.map(|field| {
            self.memo.insert(word.clone(), field.clone());
            HallElement { word, field }
        }))
    }
}

/// Incremental exact rank of a set of rational vectors.
///
/// Rows are stored with integer entries; elimination cross-multiplies and
/// divides out the content, so no fractions are formed.
#[derive(Debug, Clone, Default)]
pub struct RankTracker {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RankTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let lcm = v.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let mut row: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        for (pivot, basis) in &self.rows {
            if row[*pivot].is_zero() {
                continue;
            }
            let a = &basis[*pivot];
            let b = row[*pivot].clone();
            for (x, y) in row.iter_mut().zip(basis) {
                *x = &*x * a - &b * y;
            }
            normalize(&mut row);
        }
        match row.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, row));
                true
            }
            None => false,
        }
    }
}

fn normalize(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && g.abs() != BigInt::from(1) {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonholonomyResult {
    /// Rank of the bracket values found at the point.
    pub d: usize,
    /// The degree of nonholonomy when `certified`; otherwise a lower bound
    /// (the least order at which the observed rank was reached).
    pub degree: usize,
    pub certified: bool,
    /// `rank_trace[k - 1]` is the rank after all brackets of order `≤ k`.
    pub rank_trace: Vec<usize>,
    /// Exploration order needed to certify by the explicit bound, when one
    /// applies.
    pub bound_used: Option<BigUint>,
}

/// Bound-based certification threshold for a polynomial system: the
/// degree-of-nonholonomy bound at the largest admissible span dimension
/// (the bound is monotone in `d`, and the true `d` may exceed the observed
/// rank).
pub fn polynomial_threshold(sys: &VectorFieldSystem, grouping: Eq8Grouping) -> Option<BigUint> {
    let n = sys.nvars() as u64;
    if n < 2 {
        return None;
    }
    bound_thm5(n, u64::from(sys.q()).max(1), n, grouping).ok()
}

pub fn degree_of_nonholonomy(sys: &VectorFieldSystem, x0: &[Rational], max_order: usize) -> Result<NonholonomyResult> {
    let threshold = polynomial_threshold(sys, Eq8Grouping::default());
    degree_of_nonholonomy_with_threshold(sys, x0, max_order, threshold)
}

/// As [`degree_of_nonholonomy`] with an explicit bound-based certification
/// threshold (`None` disables that route).
pub fn degree_of_nonholonomy_with_threshold(
    sys: &VectorFieldSystem,
    x0: &[Rational],
    max_order: usize,
    threshold: Option<BigUint>,
) -> Result<NonholonomyResult> {
    if max_order == 0 {
        return Err(Error::ZeroOrder);
    }
    let n = sys.nvars();
    if x0.len() != n {
        return Err(Error::PointLength {
            expected: n,
            found: x0.len(),
        });
    }
    let mut tracker = RankTracker::new();
    let mut trace: Vec<usize> = Vec::new();
    let mut reached_at = 1;
    let mut current_order = 1;
    let finish = |tracker: &RankTracker, trace: Vec<usize>, reached_at, certified| NonholonomyResult {
        d: tracker.rank(),
        degree: reached_at,
        certified,
        rank_trace: trace,
        bound_used: threshold.clone(),
    };
    for element in hall_brackets(sys, max_order) {
        let element = element?;
        while element.order() > current_order {
            trace.push(tracker.rank());
            if current_order == 1 && tracker.rank() == 0 {
                // all generators vanish at x0, hence so does every bracket
                return Ok(finish(&tracker, trace, 1, true));
            }
            current_order += 1;
        }
        let value = element.field.evaluate(x0)?;
        if tracker.insert(&value) {
            reached_at = current_order;
            if tracker.rank() == n {
                trace.push(n);
                return Ok(finish(&tracker, trace, reached_at, true));
            }
        }
    }
    while trace.len() < max_order {
        trace.push(tracker.rank());
    }
    if trace[0] == 0 {
        return Ok(finish(&tracker, trace, 1, true));
    }
    let certified = threshold
        .as_ref()
        .and_then(ToPrimitive::to_usize)
        .is_some_and(|t| max_order >= t);
    Ok(finish(&tracker, trace, reached_at, certified))
}
