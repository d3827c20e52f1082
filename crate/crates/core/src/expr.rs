//! Arithmetic expressions over exact rationals and the band descriptions
//! built from them.
//!
//! Expressions may mention the sequence index `n` and the level `alpha`;
//! which of the two is allowed depends on where the expression appears.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::fuzzy_set::{CutFamilyError, StepFuzzySet};
use crate::num::{terminating_decimal, ExtReal, Real};
use crate::spatial::{Interval, IntervalUnion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable `{0}` is not bound here")]
    Unbound(Var),
    #[error("infinity used inside arithmetic")]
    InfiniteArithmetic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    N,
    Alpha,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::N => "n",
            Var::Alpha => "alpha",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(Real),
    Var(Var),
    Inf,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

/// Variable bindings for evaluation.
#[derive(Debug, Clone, Default)]
pub struct Env {
    pub n: Option<Real>,
    pub alpha: Option<Real>,
}

impl Env {
    pub fn index(n: u64) -> Env {
        Env { n: Some(Real::from_integer(n.into())), alpha: None }
    }

    pub fn level(alpha: Real) -> Env {
        Env { n: None, alpha: Some(alpha) }
    }
}

impl Expr {
    /// Canonical expression for a value, in the form the parser produces.
    pub fn constant(value: &ExtReal) -> Expr {
        match value {
            ExtReal::NegInf => Expr::Neg(Box::new(Expr::Inf)),
            ExtReal::Finite(v) => {
                let magnitude = if terminating_decimal(v).is_some() {
                    Expr::Num(v.abs())
                } else {
                    let num = Real::from_integer(v.numer().abs());
                    let den = Real::from_integer(v.denom().clone());
                    Expr::Div(Box::new(Expr::Num(num)), Box::new(Expr::Num(den)))
                };
                if v.is_negative() {
                    Expr::Neg(Box::new(magnitude))
                } else {
                    magnitude
                }
            }
            ExtReal::PosInf => Expr::Inf,
        }
    }

    pub fn eval(&self, env: &Env) -> Result<ExtReal, EvalError> {
        let finite = |e: &Expr| match e.eval(env)? {
            ExtReal::Finite(v) => Ok(v),
            _ => Err(EvalError::InfiniteArithmetic),
        };
        Ok(match self {
            Expr::Num(v) => ExtReal::Finite(v.clone()),
            Expr::Var(var) => {
                let bound = match var {
                    Var::N => &env.n,
                    Var::Alpha => &env.alpha,
                };
                ExtReal::Finite(bound.clone().ok_or(EvalError::Unbound(*var))?)
            }
            Expr::Inf => ExtReal::PosInf,
            Expr::Neg(e) => e.eval(env)?.neg(),
            Expr::Add(a, b) => ExtReal::Finite(finite(a)? + finite(b)?),
            Expr::Sub(a, b) => ExtReal::Finite(finite(a)? - finite(b)?),
            Expr::Mul(a, b) => ExtReal::Finite(finite(a)? * finite(b)?),
            Expr::Div(a, b) => {
                let d = finite(b)?;
                if d.is_zero() {
                    return Err(EvalError::DivisionByZero);
                }
                ExtReal::Finite(finite(a)? / d)
            }
        })
    }

    pub fn uses(&self, var: Var) -> bool {
        match self {
            Expr::Var(v) => *v == var,
            Expr::Num(_) | Expr::Inf => false,
            Expr::Neg(e) => e.uses(var),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.uses(var) || b.uses(var),
        }
    }

    /// `inf` or `-inf` written literally.
    pub fn literal_infinity(&self) -> Option<ExtReal> {
        match self {
            Expr::Inf => Some(ExtReal::PosInf),
            Expr::Neg(e) if **e == Expr::Inf => Some(ExtReal::NegInf),
            _ => None,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(v) if v.is_negative() || terminating_decimal(v).is_none() => 0,
            _ => 4,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, a, b, prec) = match self {
            Expr::Num(v) => {
                return match terminating_decimal(v) {
                    Some(s) if !v.is_negative() => f.write_str(&s),
                    Some(s) => write!(f, "({s})"),
                    None => write!(f, "({}/{})", v.numer(), v.denom()),
                };
            }
            Expr::Var(v) => return write!(f, "{v}"),
            Expr::Inf => return f.write_str("inf"),
            Expr::Neg(e) => {
                return if e.precedence() < 3 { write!(f, "-({e})") } else { write!(f, "-{e}") };
            }
            Expr::Add(a, b) => ('+', a, b, 1),
            Expr::Sub(a, b) => ('-', a, b, 1),
            Expr::Mul(a, b) => ('*', a, b, 2),
            Expr::Div(a, b) => ('/', a, b, 2),
        };
        if a.precedence() < prec {
            write!(f, "({a})")?;
        } else {
            write!(f, "{a}")?;
        }
        write!(f, "{op}")?;
        // operators associate to the left, so equal precedence on the right needs parentheses
        if b.precedence() <= prec {
            write!(f, "({b})")
        } else {
            write!(f, "{b}")
        }
    }
}

/// `[lo, hi]`, `(-inf, hi]`, `[lo, inf)` written with expressions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartExpr {
    pub lo: Expr,
    pub hi: Expr,
}

impl PartExpr {
    pub fn eval(&self, env: &Env) -> Result<Option<Interval>, EvalError> {
        let lo = self.lo.eval(env)?;
        let hi = self.hi.eval(env)?;
        Ok(Interval::new(lo, hi).ok())
    }
}

impl fmt::Display for PartExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo.literal_infinity().is_some() { '(' } else { '[' };
        let close = if self.hi.literal_infinity().is_some() { ')' } else { ']' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetExpr {
    Empty,
    Line,
    Parts(Vec<PartExpr>),
}

impl SetExpr {
    /// Evaluates and normalizes. Parts whose ends cross evaluate to nothing
    /// and are reported through `None`.
    pub fn eval(&self, env: &Env) -> Result<Option<IntervalUnion>, EvalError> {
        match self {
            SetExpr::Empty => Ok(Some(IntervalUnion::empty())),
            SetExpr::Line => Ok(Some(IntervalUnion::line())),
            SetExpr::Parts(parts) => {
                let mut out = Vec::with_capacity(parts.len());
                for p in parts {
                    match p.eval(env)? {
                        Some(iv) => out.push(iv),
                        None => return Ok(None),
                    }
                }
                Ok(Some(IntervalUnion::normalize(out)))
            }
        }
    }

    pub fn uses(&self, var: Var) -> bool {
        match self {
            SetExpr::Parts(parts) => parts.iter().any(|p| p.lo.uses(var) || p.hi.uses(var)),
            _ => false,
        }
    }

    pub fn constant(set: &IntervalUnion) -> SetExpr {
        if set.is_empty() {
            return SetExpr::Empty;
        }
        if *set == IntervalUnion::line() {
            return SetExpr::Line;
        }
        SetExpr::Parts(
            set.parts()
                .iter()
                .map(|p| PartExpr { lo: Expr::constant(p.lo()), hi: Expr::constant(p.hi()) })
                .collect(),
        )
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Empty => f.write_str("empty"),
            SetExpr::Line => f.write_str("R"),
            SetExpr::Parts(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// Level range of a band, e.g. `(1/n, 0.6]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RangeExpr {
    pub lo: Expr,
    pub lo_closed: bool,
    pub hi: Expr,
    pub hi_closed: bool,
}

impl fmt::Display for RangeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

/// Evaluated level range.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelRange {
    pub lo: Real,
    pub lo_closed: bool,
    pub hi: Real,
    pub hi_closed: bool,
}

impl LevelRange {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, a: &Real) -> bool {
        let above = if self.lo_closed { *a >= self.lo } else { *a > self.lo };
        let below = if self.hi_closed { *a <= self.hi } else { *a < self.hi };
        above && below
    }
}

impl fmt::Display for LevelRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(
            f,
            "{open}{}, {}{close}",
            crate::num::format_real(&self.lo),
            crate::num::format_real(&self.hi)
        )
    }
}

impl RangeExpr {
    pub fn eval(&self, env: &Env) -> Result<LevelRange, EvalError> {
        let finite = |e: &Expr| match e.eval(env)? {
            ExtReal::Finite(v) => Ok(v),
            _ => Err(EvalError::InfiniteArithmetic),
        };
        Ok(LevelRange { lo: finite(&self.lo)?, lo_closed: self.lo_closed, hi: finite(&self.hi)?, hi_closed: self.hi_closed })
    }
}

/// One `cut alpha in RANGE: SET;` (or `slice ...`) line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Band {
    pub range: RangeExpr,
    pub set: SetExpr,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Tiling(String),
    #[error("a band set has a part with lo > hi")]
    CrossedPart,
    #[error(transparent)]
    Cut(#[from] CutFamilyError),
}

/// Turns cut bands into a step fuzzy set.
///
/// After dropping bands with empty level ranges, the bands must tile
/// `(0, a_1]` with right-closed ranges, each left-open except the lowest,
/// which starts at 0.
pub fn fuzzy_set_from_bands(bands: &[Band], env: &Env) -> Result<StepFuzzySet, BandError> {
    let mut evaluated = Vec::with_capacity(bands.len());
    for band in bands {
        let range = band.range.eval(env)?;
        if range.is_empty() {
            continue;
        }
        let set = band.set.eval(env)?.ok_or(BandError::CrossedPart)?;
        evaluated.push((range, set));
    }
    evaluated.sort_by(|a, b| b.0.hi.cmp(&a.0.hi));

    let last = evaluated.len().saturating_sub(1);
    for (i, (range, _)) in evaluated.iter().enumerate() {
        if !range.hi_closed {
            return Err(BandError::Tiling(format!("band {range} must be closed on the right")));
        }
        if range.hi.is_zero() {
            return Err(BandError::Tiling(format!("band {range} must reach above level 0")));
        }
        if i == 0 && range.hi > Real::from_integer(1.into()) {
            return Err(BandError::Tiling(format!("band {range} exceeds level 1")));
        }
        if i < last {
            if range.lo_closed {
                return Err(BandError::Tiling(format!("band {range} must be open on the left")));
            }
            let below = &evaluated[i + 1].0;
            if below.hi != range.lo {
                return Err(BandError::Tiling(format!("bands {range} and {below} do not meet")));
            }
        } else if !range.lo.is_zero() {
            return Err(BandError::Tiling(format!("lowest band {range} must start at 0")));
        }
    }
    let (thresholds, cuts) = evaluated.into_iter().map(|(r, s)| (r.hi, s)).unzip();
    Ok(StepFuzzySet::from_cut_family(thresholds, cuts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, ratio};

    fn num(v: i64) -> Box<Expr> {
        Box::new(Expr::Num(int(v)))
    }

    #[test]
    fn evaluation() {
        let e = Expr::Div(num(1), Box::new(Expr::Mul(num(3), Box::new(Expr::Var(Var::N)))));
        assert_eq!(e.eval(&Env::index(2)).unwrap(), ExtReal::Finite(ratio(1, 6)));
        assert_eq!(e.eval(&Env::default()), Err(EvalError::Unbound(Var::N)));
        let z = Expr::Div(num(1), Box::new(Expr::Sub(Box::new(Expr::Var(Var::N)), num(2))));
        assert_eq!(z.eval(&Env::index(2)), Err(EvalError::DivisionByZero));
        let bad = Expr::Add(Box::new(Expr::Inf), num(1));
        assert_eq!(bad.eval(&Env::default()), Err(EvalError::InfiniteArithmetic));
    }

    #[test]
    fn printing_keeps_tree_shape() {
        let e = Expr::Div(num(1), Box::new(Expr::Mul(num(3), Box::new(Expr::Var(Var::N)))));
        assert_eq!(e.to_string(), "1/(3*n)");
        let e = Expr::Sub(num(4), Box::new(Expr::Mul(Box::new(Expr::Var(Var::Alpha)), Box::new(Expr::Var(Var::Alpha)))));
        assert_eq!(e.to_string(), "4-alpha*alpha");
        let e = Expr::Sub(num(4), Box::new(Expr::Sub(num(1), num(2))));
        assert_eq!(e.to_string(), "4-(1-2)");
        assert_eq!(Expr::Neg(Box::new(Expr::Inf)).to_string(), "-inf");
        assert_eq!(Expr::Num(ratio(3, 5)).to_string(), "0.6");
    }

    #[test]
    fn bands_must_tile() {
        let band = |lo: i64, lc: bool, hi: Real, set: SetExpr| Band {
            range: RangeExpr { lo: Expr::Num(int(lo)), lo_closed: lc, hi: Expr::Num(hi), hi_closed: true },
            set,
        };
        let line = SetExpr::Line;
        let ok = [band(0, true, int(1), line.clone())];
        assert_eq!(fuzzy_set_from_bands(&ok, &Env::default()).unwrap().len(), 1);
        let gap = [band(0, true, ratio(1, 2), line.clone()), Band {
            range: RangeExpr { lo: Expr::Num(ratio(3, 5)), lo_closed: false, hi: Expr::Num(int(1)), hi_closed: true },
            set: SetExpr::Parts(vec![PartExpr { lo: Expr::Num(int(0)), hi: Expr::Num(int(0)) }]),
        }];
        assert!(matches!(fuzzy_set_from_bands(&gap, &Env::default()), Err(BandError::Tiling(_))));
        let not_zero = [band(1, true, int(1), line)];
        assert!(matches!(fuzzy_set_from_bands(&not_zero, &Env::default()), Err(BandError::Tiling(_))));
    }
}
