//! Kernels as (reduction, lifting) pairs, value functions with capping, and
//! ratio bookkeeping.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;
type Wide = Ratio<i128>;

/// Converts a decimal accuracy such as `1.5` into an exact rational.
pub fn rational(x: f64) -> Result<Rational> {
    Ratio::approximate_float(x).ok_or_else(|| Error::Accuracy(format!("{x} is not representable")))
}

pub fn check_eps(eps: Rational) -> Result<()> {
    if eps <= Rational::from_integer(0) || eps >= Rational::from_integer(1) {
        return Err(Error::Accuracy(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

/// Ratio `1/(1 − ε)` of a maximization kernel with accuracy `ε`.
pub fn max_alpha(eps: Rational) -> Result<Rational> {
    check_eps(eps)?;
    Ok((Rational::from_integer(1) - eps).recip())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Goal {
    Minimize,
    Maximize,
}

/// Extended objective value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Value {
    pub fn finite(self) -> Option<i64> {
        match self {
            Value::Finite(x) => Some(x),
            _ => None,
        }
    }

    /// `min(x, k + 1)`, the capping used by the size-bounded problems.
    pub fn capped(x: usize, k: usize) -> Value {
        Value::Finite(x.min(k + 1) as i64)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::NegInf => f.write_str("-inf"),
            Value::Finite(x) => write!(f, "{x}"),
            Value::PosInf => f.write_str("inf"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "inf" => Ok(Value::PosInf),
            "-inf" => Ok(Value::NegInf),
            x => x.parse().map(Value::Finite).map_err(serde::de::Error::custom),
        }
    }
}

/// `value / OPT` as an exact extended rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Quality {
    NegInf,
    Finite(Wide),
    PosInf,
}

impl Quality {
    pub fn of(goal: Goal, value: Value, opt: Value) -> Quality {
        use Value::*;
        if value == opt {
            return Quality::Finite(Wide::from_integer(1));
        }
        match (goal, value, opt) {
            (Goal::Minimize, PosInf, _) => Quality::PosInf,
            (Goal::Minimize, Finite(_), Finite(0)) => Quality::PosInf,
            (Goal::Maximize, NegInf, _) => Quality::NegInf,
            (Goal::Maximize, Finite(_), Finite(0)) => Quality::Finite(Wide::from_integer(1)),
            (_, Finite(v), Finite(o)) => Quality::Finite(Wide::new(v as i128, o as i128)),
            (Goal::Minimize, _, _) => Quality::PosInf,
            (Goal::Maximize, _, _) => Quality::NegInf,
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Quality::NegInf => f64::NEG_INFINITY,
            Quality::PosInf => f64::INFINITY,
            Quality::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
        }
    }

    fn scale(self, by: Wide) -> Quality {
        match self {
            Quality::Finite(r) => Quality::Finite(r * by),
            other => other,
        }
    }
}

fn wide(r: Rational) -> Wide {
    Wide::new(*r.numer() as i128, *r.denom() as i128)
}

/// The strictness inequality: lifted quality is no worse than the better of
/// the reduced quality and `alpha` (or `1/alpha` when maximizing).
pub fn strict_holds(goal: Goal, alpha: Rational, lifted: Quality, reduced: Quality) -> bool {
    let a = Quality::Finite(wide(alpha));
    match goal {
        Goal::Minimize => lifted <= reduced.max(a),
        Goal::Maximize => lifted >= reduced.min(Quality::Finite(wide(alpha.recip()))),
    }
}

/// The plain approximate-kernel inequality.
pub fn ratio_holds(goal: Goal, alpha: Rational, lifted: Quality, reduced: Quality) -> bool {
    match goal {
        Goal::Minimize => lifted <= reduced.scale(wide(alpha)),
        Goal::Maximize => lifted >= reduced.scale(wide(alpha.recip())),
    }
}

/// A parameterized optimization problem.
pub trait Problem {
    type Instance;
    type Solution;
    const NAME: &'static str;
    const GOAL: Goal;

    fn value(inst: &Self::Instance, k: usize, sol: &Self::Solution) -> Value;

    /// Encoding size of the instance, without the parameter.
    fn size(inst: &Self::Instance) -> usize;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterizedInstance<I> {
    pub instance: I,
    pub k: usize,
}

impl<I> ParameterizedInstance<I> {
    pub fn new(instance: I, k: usize) -> Self {
        ParameterizedInstance { instance, k }
    }

    pub fn size<P: Problem<Instance = I>>(&self) -> usize {
        P::size(&self.instance) + self.k
    }
}

pub trait Lifter<P: Problem> {
    fn lift(&self, reduced: &P::Solution) -> P::Solution;
}

impl<P: Problem, F: Fn(&P::Solution) -> P::Solution> Lifter<P> for F {
    fn lift(&self, reduced: &P::Solution) -> P::Solution {
        self(reduced)
    }
}

pub struct KernelOutput<P: Problem, L> {
    pub reduced: ParameterizedInstance<P::Instance>,
    pub lifter: L,
    pub alpha: Rational,
    pub strict: bool,
    pub size_bound: Option<u128>,
}

/// An approximate kernel for problem `P`.
pub trait Kernel<P: Problem> {
    type Lifter: Lifter<P>;

    fn run(&self, input: &ParameterizedInstance<P::Instance>) -> Result<KernelOutput<P, Self::Lifter>>;
}

/// Test double: returns its input unchanged.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityKernel;

#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityLifter;

impl<P: Problem> Lifter<P> for IdentityLifter
where
    P::Solution: Clone,
{
    fn lift(&self, reduced: &P::Solution) -> P::Solution {
        reduced.clone()
    }
}

impl<P: Problem> Kernel<P> for IdentityKernel
where
    P::Instance: Clone,
    P::Solution: Clone,
{
    type Lifter = IdentityLifter;

    fn run(&self, input: &ParameterizedInstance<P::Instance>) -> Result<KernelOutput<P, IdentityLifter>> {
        Ok(KernelOutput {
            reduced: input.clone(),
            lifter: IdentityLifter,
            alpha: Rational::from_integer(1),
            strict: true,
            size_bound: Some(P::size(&input.instance) as u128),
        })
    }
}

pub fn run_kernel<P: Problem, K: Kernel<P>>(
    kernel: &K,
    input: &ParameterizedInstance<P::Instance>,
) -> Result<KernelOutput<P, K::Lifter>> {
    kernel.run(input)
}

/// Exact solver used as ground truth.
pub trait Oracle<P: Problem> {
    fn solve(&self, inst: &P::Instance, k: usize) -> Result<(Value, P::Solution)>;
}

/// Checks the strictness inequality for every given reduced solution.
pub fn check_strictness<P, L, O, I>(
    original: &ParameterizedInstance<P::Instance>,
    kernel: &KernelOutput<P, L>,
    solutions: I,
    oracle: &O,
) -> Result<bool>
where
    P: Problem,
    L: Lifter<P>,
    O: Oracle<P>,
    I: IntoIterator<Item = P::Solution>,
{
    let (opt, _) = oracle.solve(&original.instance, original.k)?;
    let (opt_r, _) = oracle.solve(&kernel.reduced.instance, kernel.reduced.k)?;
    for s in solutions {
        let lifted = kernel.lifter.lift(&s);
        let q = Quality::of(P::GOAL, P::value(&original.instance, original.k, &lifted), opt);
        let qr = Quality::of(P::GOAL, P::value(&kernel.reduced.instance, kernel.reduced.k, &s), opt_r);
        if !strict_holds(P::GOAL, kernel.alpha, q, qr) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One row of an experiment; column order is the CSV schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub instance: String,
    pub problem: String,
    pub accuracy: f64,
    pub n: usize,
    pub k: usize,
    pub n_reduced: usize,
    pub k_reduced: usize,
    pub opt: Value,
    pub opt_reduced: Value,
    pub val_kernel_sol: Value,
    pub val_lifted: Value,
    pub ratio: f64,
    pub strict_ok: bool,
}

pub fn verify_ratio<P, L, O>(
    name: &str,
    accuracy: f64,
    original: &ParameterizedInstance<P::Instance>,
    kernel: &KernelOutput<P, L>,
    kernel_solution: &P::Solution,
    oracle: &O,
) -> Result<RatioReport>
where
    P: Problem,
    L: Lifter<P>,
    O: Oracle<P>,
{
    let (opt, _) = oracle.solve(&original.instance, original.k)?;
    let (opt_r, _) = oracle.solve(&kernel.reduced.instance, kernel.reduced.k)?;
    let lifted = kernel.lifter.lift(kernel_solution);
    let val = P::value(&original.instance, original.k, &lifted);
    let val_r = P::value(&kernel.reduced.instance, kernel.reduced.k, kernel_solution);
    let q = Quality::of(P::GOAL, val, opt);
    let qr = Quality::of(P::GOAL, val_r, opt_r);
    let ok = if kernel.strict {
        strict_holds(P::GOAL, kernel.alpha, q, qr)
    } else {
        ratio_holds(P::GOAL, kernel.alpha, q, qr)
    };
    Ok(RatioReport {
        instance: name.to_string(),
        problem: P::NAME.to_string(),
        accuracy,
        n: P::size(&original.instance),
        k: original.k,
        n_reduced: P::size(&kernel.reduced.instance),
        k_reduced: kernel.reduced.k,
        opt,
        opt_reduced: opt_r,
        val_kernel_sol: val_r,
        val_lifted: val,
        ratio: q.to_f64(),
        strict_ok: ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pick at most k items from a list; value = count picked, capped.
    struct Toy;

    impl Problem for Toy {
        type Instance = Vec<u32>;
        type Solution = Vec<u32>;
        const NAME: &'static str = "toy";
        const GOAL: Goal = Goal::Maximize;

        fn value(inst: &Vec<u32>, k: usize, sol: &Vec<u32>) -> Value {
            if sol.len() > k || sol.iter().any(|x| !inst.contains(x)) {
                Value::NegInf
            } else {
                Value::Finite(sol.len() as i64)
            }
        }

        fn size(inst: &Vec<u32>) -> usize {
            inst.len()
        }
    }

    struct ToyOracle;

    impl Oracle<Toy> for ToyOracle {
        fn solve(&self, inst: &Vec<u32>, k: usize) -> Result<(Value, Vec<u32>)> {
            let s: Vec<u32> = inst.iter().copied().take(k).collect();
            Ok((Value::Finite(s.len() as i64), s))
        }
    }

    #[test]
    fn identity_kernel_ratio_is_one() {
        let input = ParameterizedInstance::new(vec![1, 2, 3], 2);
        let out = run_kernel::<Toy, _>(&IdentityKernel, &input).unwrap();
        assert_eq!(out.reduced, input);
        let rep = verify_ratio("t", 1.0, &input, &out, &vec![1, 3], &ToyOracle).unwrap();
        assert_eq!(rep.ratio, 1.0);
        assert!(rep.strict_ok);
        let all = vec![vec![], vec![1], vec![2, 3], vec![1, 2, 3]];
        assert!(check_strictness(&input, &out, all, &ToyOracle).unwrap());
        assert_eq!(input.size::<Toy>(), 5);
    }

    #[test]
    fn quality_conventions() {
        use Value::*;
        let one = Quality::Finite(Wide::from_integer(1));
        assert_eq!(Quality::of(Goal::Minimize, Finite(0), Finite(0)), one);
        assert_eq!(Quality::of(Goal::Minimize, Finite(2), Finite(0)), Quality::PosInf);
        assert_eq!(Quality::of(Goal::Minimize, PosInf, PosInf), one);
        assert_eq!(Quality::of(Goal::Maximize, NegInf, Finite(3)), Quality::NegInf);
        assert_eq!(Quality::of(Goal::Maximize, Finite(2), Finite(4)), Quality::Finite(Wide::new(1, 2)));
    }

    #[test]
    fn strictness_orientation() {
        let two = Rational::from_integer(2);
        let q = |a, b| Quality::Finite(Wide::new(a, b));
        // minimization: 3/2 <= max(1, 2)
        assert!(strict_holds(Goal::Minimize, two, q(3, 2), q(1, 1)));
        assert!(!strict_holds(Goal::Minimize, two, q(5, 2), q(1, 1)));
        assert!(strict_holds(Goal::Minimize, two, q(5, 2), q(5, 2)));
        // maximization: 1/2 >= min(1, 1/2)
        assert!(strict_holds(Goal::Maximize, two, q(1, 2), q(1, 1)));
        assert!(!strict_holds(Goal::Maximize, two, q(1, 3), q(1, 1)));
        assert!(ratio_holds(Goal::Maximize, two, q(1, 4), q(1, 2)));
        assert!(!ratio_holds(Goal::Maximize, two, q(1, 5), q(1, 2)));
        assert!(ratio_holds(Goal::Minimize, two, q(3, 1), q(3, 2)));
        assert!(strict_holds(Goal::Minimize, two, Quality::PosInf, Quality::PosInf));
    }

    #[test]
    fn decimal_accuracies_are_exact() {
        assert_eq!(rational(1.5).unwrap(), Rational::new(3, 2));
        assert_eq!(rational(0.34).unwrap(), Rational::new(17, 50));
        assert_eq!(rational(1.1).unwrap(), Rational::new(11, 10));
    }

    #[test]
    fn value_serializes_as_text() {
        assert_eq!(serde_json::to_string(&Value::PosInf).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<Value>("\"7\"").unwrap(), Value::Finite(7));
        assert_eq!(Value::capped(9, 3), Value::Finite(4));
    }
}
