//! Disjoint Factors parameterized by alphabet size.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::{max_alpha, Goal, Kernel, KernelOutput, Lifter, ParameterizedInstance, Problem, Rational, Value};
use crate::ulic::{build_ulic, chromatic_number, size_recurrence, Interval, LabelledIntervalInstance};

/// A factor `L[start, end]`, 1-based and inclusive.
pub type Factor = (usize, usize);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringInstance {
    pub text: Vec<char>,
}

impl StringInstance {
    pub fn new(text: &str) -> Self {
        StringInstance { text: text.chars().collect() }
    }

    pub fn alphabet(&self) -> Vec<char> {
        let set: BTreeSet<char> = self.text.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn letter(&self, pos: usize) -> char {
        self.text[pos - 1]
    }

    pub fn as_string(&self) -> String {
        self.text.iter().collect()
    }

    pub fn is_solution(&self, factors: &[Factor]) -> bool {
        let mut sorted = factors.to_vec();
        sorted.sort_unstable();
        let mut letters = BTreeSet::new();
        let mut last = 0;
        for &(i, j) in &sorted {
            if i <= last || i >= j || j > self.len() || self.letter(i) != self.letter(j) {
                return false;
            }
            if !letters.insert(self.letter(i)) {
                return false;
            }
            last = j;
        }
        true
    }
}

pub struct DisjointFactors;

impl Problem for DisjointFactors {
    type Instance = StringInstance;
    type Solution = Vec<Factor>;
    const NAME: &'static str = "df";
    const GOAL: Goal = Goal::Maximize;

    fn value(inst: &StringInstance, _k: usize, sol: &Vec<Factor>) -> Value {
        if inst.is_solution(sol) {
            Value::Finite(sol.len() as i64)
        } else {
            Value::NegInf
        }
    }

    fn size(inst: &StringInstance) -> usize {
        inst.len()
    }
}

/// Reduced position `j` (1-based) sits at original position `map[j - 1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PositionMap(Vec<usize>);

impl PositionMap {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.first() == Some(&0) || positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Malformed(format!("position map {positions:?} is not strictly increasing")));
        }
        Ok(PositionMap(positions))
    }

    pub fn identity(n: usize) -> Self {
        PositionMap((1..=n).collect())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, pos: usize) -> usize {
        self.0[pos - 1]
    }

    /// `self` after `inner`: reduced positions of `inner` to originals of `self`.
    pub fn compose(&self, inner: &PositionMap) -> PositionMap {
        PositionMap(inner.0.iter().map(|&p| self.apply(p)).collect())
    }
}

/// One interval per consecutive pair of equal letters, labelled by the
/// letter's index in the sorted alphabet.
pub fn build_factor_graph(s: &StringInstance) -> LabelledIntervalInstance {
    let alphabet = s.alphabet();
    let mut last = vec![None; alphabet.len()];
    let mut intervals = Vec::new();
    for (i, c) in s.text.iter().enumerate() {
        let x = alphabet.binary_search(c).unwrap();
        if let Some(j) = last[x] {
            intervals.push(Interval::new(j as i64 + 1, i as i64 + 1, x as u32));
        }
        last[x] = Some(i);
    }
    LabelledIntervalInstance { intervals, q: alphabet.len() as u32 }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfLifter {
    pub map: PositionMap,
}

impl Lifter<DisjointFactors> for DfLifter {
    fn lift(&self, reduced: &Vec<Factor>) -> Vec<Factor> {
        reduced.iter().map(|&(i, j)| (self.map.apply(i), self.map.apply(j))).collect()
    }
}

pub fn lift_factors(reduced: &StringInstance, map: &PositionMap, factors: &[Factor]) -> Result<Vec<Factor>> {
    if !reduced.is_solution(factors) {
        return Err(Error::InvalidSolution(format!("{factors:?} are not disjoint factors")));
    }
    Ok(DfLifter { map: map.clone() }.lift(&factors.to_vec()))
}

pub type DfOutput = KernelOutput<DisjointFactors, DfLifter>;

pub fn df_kernelize(s: &StringInstance, eps: Rational) -> Result<DfOutput> {
    let alpha = max_alpha(eps)?;
    let h = build_factor_graph(s);
    let ulic = build_ulic(&h, eps)?;
    let mut keep = BTreeSet::new();
    for &i in &ulic.marked {
        let iv = h.intervals[i];
        keep.insert(iv.left as usize);
        keep.insert(iv.right as usize);
    }
    let map = PositionMap::new(keep.into_iter().collect())?;
    let reduced = StringInstance { text: map.positions().iter().map(|&p| s.letter(p)).collect() };
    let k = reduced.alphabet().len();
    let bound = size_recurrence(ulic.refinement.k, ulic.depth).saturating_mul(2);
    Ok(KernelOutput {
        reduced: ParameterizedInstance::new(reduced, k),
        lifter: DfLifter { map },
        alpha,
        strict: false,
        size_bound: Some(bound.max(chromatic_number(&h) as u128)),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct DfKernel {
    pub eps: Rational,
}

impl Kernel<DisjointFactors> for DfKernel {
    type Lifter = DfLifter;

    fn run(&self, input: &ParameterizedInstance<StringInstance>) -> Result<DfOutput> {
        df_kernelize(&input.instance, self.eps)
    }
}
