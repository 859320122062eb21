//! Scalar functions tagged with the operator classes they belong to.
//!
//! Flags follow the classical classification of powers on `(0, ∞)`:
//!
//! | function        | monotone   | monotone decreasing | convex              | concave  |
//! |-----------------|------------|---------------------|---------------------|----------|
//! | `t^r`           | `0≤r≤1`    | `−1≤r≤0`            | `r∈[−1,0]∪[1,2]`    | `0≤r≤1`  |
//! | `(1−t)^r` (0,1) | `−1≤r≤0`   | `0≤r≤1`             | `r∈[−1,0]∪[1,2]`    | `0≤r≤1`  |
//! | `log t`         | yes        | no                  | no                  | yes      |
//! | `log(1+t)`      | yes        | no                  | no                  | yes      |
//!
//! `t ↦ 1 − t` reverses order, so `(1−t)^r` swaps the monotonicity flags of
//! `t^r` and keeps its convexity flags.

mod catalog;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use catalog::{find_monotonicity_violation, probe_flag, Catalog, FlagProperty, ProbeOutcome};

/// Open interval `(lower, upper)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lower: f64,
    pub upper: f64,
}

impl Domain {
    pub const POSITIVE_REALS: Domain = Domain {
        lower: 0.0,
        upper: f64::INFINITY,
    };
    pub const UNIT_INTERVAL: Domain = Domain { lower: 0.0, upper: 1.0 };

    pub fn contains_with_margin(&self, t: f64, margin: f64) -> bool {
        t > self.lower + margin && t < self.upper - margin
    }

    /// A closed interval well inside the domain, used by probes and
    /// instance generators.
    pub fn sampling_interval(&self) -> (f64, f64) {
        if self.upper.is_infinite() {
            (self.lower + 0.05, self.lower + 20.0)
        } else {
            let w = self.upper - self.lower;
            (self.lower + 0.02 * w, self.upper - 0.02 * w)
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorFlags {
    pub monotone: bool,
    pub monotone_decreasing: bool,
    pub convex: bool,
    pub concave: bool,
}

impl OperatorFlags {
    fn for_power(r: f64) -> Self {
        Self {
            monotone: (0.0..=1.0).contains(&r),
            monotone_decreasing: (-1.0..=0.0).contains(&r),
            convex: (-1.0..=0.0).contains(&r) || (1.0..=2.0).contains(&r),
            concave: (0.0..=1.0).contains(&r),
        }
    }

    fn for_one_minus_power(r: f64) -> Self {
        let p = Self::for_power(r);
        Self {
            monotone: p.monotone_decreasing,
            monotone_decreasing: p.monotone,
            ..p
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionKind {
    /// `t ↦ t^r` on `(0, ∞)`.
    Power(f64),
    /// `t ↦ (1 − t)^r` on `(0, 1)`.
    OneMinusPower(f64),
    /// Natural logarithm on `(0, ∞)`.
    Log,
    /// `t ↦ log(1 + t)` on `(0, ∞)`.
    Log1p,
    /// `t ↦ 1 / f(t)` for a strictly positive `f` without a closed form.
    Reciprocal(Box<ScalarFunction>),
}

/// A real function on an open interval with its operator-class flags.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFunction {
    kind: FunctionKind,
    flags: OperatorFlags,
    /// Set when the flags were overridden instead of derived, which is how
    /// negative controls feed a function into a chain it does not qualify for.
    misclassified: bool,
}

impl ScalarFunction {
    pub fn power(r: f64) -> Self {
        Self {
            kind: FunctionKind::Power(r),
            flags: OperatorFlags::for_power(r),
            misclassified: false,
        }
    }

    pub fn one_minus_power(r: f64) -> Self {
        Self {
            kind: FunctionKind::OneMinusPower(r),
            flags: OperatorFlags::for_one_minus_power(r),
            misclassified: false,
        }
    }

    pub fn log() -> Self {
        Self {
            kind: FunctionKind::Log,
            flags: OperatorFlags {
                monotone: true,
                concave: true,
                ..Default::default()
            },
            misclassified: false,
        }
    }

    pub fn log1p() -> Self {
        Self {
            kind: FunctionKind::Log1p,
            ..Self::log()
        }
    }

    pub fn identity() -> Self {
        Self::power(1.0)
    }

    /// `t ↦ 1 / f(t)`. Monotone and monotone-decreasing flags swap; powers
    /// and `(1−t)^r` stay in closed form.
    pub fn reciprocal(f: &ScalarFunction) -> Result<Self> {
        if !f.is_strictly_positive() {
            return Err(Error::NotPositive(f.name()));
        }
        if f.misclassified {
            return Ok(Self {
                flags: OperatorFlags {
                    monotone: f.flags.monotone_decreasing,
                    monotone_decreasing: f.flags.monotone,
                    convex: false,
                    concave: false,
                },
                kind: FunctionKind::Reciprocal(Box::new(f.clone())),
                misclassified: true,
            });
        }
        Ok(match &f.kind {
            FunctionKind::Power(r) => Self::power(-r),
            FunctionKind::OneMinusPower(r) => Self::one_minus_power(-r),
            FunctionKind::Reciprocal(inner) => (**inner).clone(),
            FunctionKind::Log | FunctionKind::Log1p => {
                let on_half_line = f.domain() == Domain::POSITIVE_REALS;
                Self {
                    kind: FunctionKind::Reciprocal(Box::new(f.clone())),
                    flags: OperatorFlags {
                        monotone: f.flags.monotone_decreasing,
                        monotone_decreasing: f.flags.monotone,
                        // 1/f for positive operator monotone f on (0,∞) is
                        // operator monotone decreasing, hence operator convex.
                        convex: on_half_line && f.flags.monotone,
                        concave: on_half_line && f.flags.monotone_decreasing,
                    },
                    misclassified: false,
                }
            }
        })
    }

    /// Same rule, flags replaced by `claimed`.
    pub fn with_claimed_flags(&self, claimed: OperatorFlags) -> Self {
        Self {
            kind: self.kind.clone(),
            flags: claimed,
            misclassified: claimed != self.flags || self.misclassified,
        }
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn flags(&self) -> OperatorFlags {
        self.flags
    }

    pub fn is_misclassified(&self) -> bool {
        self.misclassified
    }

    pub fn domain(&self) -> Domain {
        match &self.kind {
            FunctionKind::OneMinusPower(_) => Domain::UNIT_INTERVAL,
            FunctionKind::Reciprocal(inner) => inner.domain(),
            _ => Domain::POSITIVE_REALS,
        }
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        match &self.kind {
            FunctionKind::Power(r) => power(t, *r),
            FunctionKind::OneMinusPower(r) => power(1.0 - t, *r),
            FunctionKind::Log => t.ln(),
            FunctionKind::Log1p => t.ln_1p(),
            FunctionKind::Reciprocal(inner) => 1.0 / inner.evaluate(t),
        }
    }

    /// Infimum of the arguments at which the function becomes positive
    /// (everywhere positive functions return the domain's lower end).
    pub fn positivity_threshold(&self) -> f64 {
        match &self.kind {
            FunctionKind::Log => 1.0,
            FunctionKind::Reciprocal(inner) => inner.positivity_threshold(),
            _ => self.domain().lower,
        }
    }

    /// Strict positivity on a probe grid across the domain.
    pub fn is_strictly_positive(&self) -> bool {
        let (lo, hi) = self.domain().sampling_interval();
        let lower = self.domain().lower;
        (0..=64).all(|k| {
            let s = k as f64 / 64.0;
            let near_edge = lower + (lo - lower) * s.max(1e-3);
            let inner = lo + (hi - lo) * s;
            self.evaluate(inner) > 0.0 && self.evaluate(near_edge) > 0.0
        })
    }

    /// Identifier accepted by [`ScalarFunction::parse`].
    pub fn name(&self) -> String {
        let base = match &self.kind {
            FunctionKind::Power(r) => format!("power:{r}"),
            FunctionKind::OneMinusPower(r) => format!("one_minus_power:{r}"),
            FunctionKind::Log => "log".to_string(),
            FunctionKind::Log1p => "log1p".to_string(),
            FunctionKind::Reciprocal(inner) => format!("reciprocal:{}", inner.name()),
        };
        if self.misclassified {
            format!("{base}[claimed:{}]", self.flags.short())
        } else {
            base
        }
    }

    /// Parses `power:<r>`, `one_minus_power:<r>`, `log`, `log1p` and
    /// `reciprocal:<function>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let unknown = || Error::UnknownFunction(spec.to_string());
        let param = |rest: &str| rest.trim().parse::<f64>().map_err(|_| unknown());
        if let Some(inner) = spec.strip_prefix("reciprocal:") {
            return Self::reciprocal(&Self::parse(inner)?);
        }
        match spec.split_once(':') {
            Some(("power", r)) => Ok(Self::power(param(r)?)),
            Some(("one_minus_power", r)) => Ok(Self::one_minus_power(param(r)?)),
            None if spec == "log" => Ok(Self::log()),
            None if spec == "log1p" => Ok(Self::log1p()),
            _ => Err(unknown()),
        }
    }
}

impl OperatorFlags {
    fn short(&self) -> String {
        let mut parts = Vec::new();
        if self.monotone {
            parts.push("monotone");
        }
        if self.monotone_decreasing {
            parts.push("decreasing");
        }
        if self.convex {
            parts.push("convex");
        }
        if self.concave {
            parts.push("concave");
        }
        parts.join("+")
    }
}

fn power(t: f64, r: f64) -> f64 {
    if r == 1.0 {
        t
    } else if r == 0.0 {
        1.0
    } else if r == -1.0 {
        1.0 / t
    } else if r == 0.5 {
        t.sqrt()
    } else if r == 2.0 {
        t * t
    } else {
        t.powf(r)
    }
}

impl fmt::Display for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for ScalarFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for ScalarFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ScalarFunction::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_power_is_in_every_boundary_class() {
        let f = ScalarFunction::power(1.0);
        let fl = f.flags();
        assert!(fl.monotone && fl.convex && fl.concave && !fl.monotone_decreasing);
        assert_eq!(f.evaluate(3.5), 3.5);
    }

    #[test]
    fn inverse_power_is_decreasing_and_convex() {
        let fl = ScalarFunction::power(-1.0).flags();
        assert!(fl.monotone_decreasing && fl.convex);
        assert!(!fl.monotone && !fl.concave);
    }

    #[test]
    fn square_root_is_monotone_and_concave() {
        let fl = ScalarFunction::power(0.5).flags();
        assert!(fl.monotone && fl.concave);
        assert!(!fl.convex && !fl.monotone_decreasing);
    }

    #[test]
    fn square_is_convex_only() {
        let fl = ScalarFunction::power(2.0).flags();
        assert_eq!(
            fl,
            OperatorFlags {
                convex: true,
                ..Default::default()
            }
        );
        assert_eq!(ScalarFunction::power(3.0).flags(), OperatorFlags::default());
    }

    #[test]
    fn one_minus_power_examples() {
        let f = ScalarFunction::one_minus_power(1.0);
        assert_eq!(f.domain(), Domain::UNIT_INTERVAL);
        assert_eq!(f.evaluate(0.25), 0.75);

        let g = ScalarFunction::one_minus_power(-1.0);
        assert!(g.flags().monotone);
        assert!(!g.flags().monotone_decreasing);
        assert!(g.flags().convex);
        assert_eq!(g.evaluate(0.5), 2.0);

        assert_eq!(ScalarFunction::one_minus_power(0.5).evaluate(0.75), 0.5);
        assert!(ScalarFunction::one_minus_power(0.5).flags().monotone_decreasing);
    }

    #[test]
    fn reciprocal_of_inverse_is_identity() {
        let f = ScalarFunction::reciprocal(&ScalarFunction::power(-1.0)).unwrap();
        assert_eq!(f, ScalarFunction::identity());
    }

    #[test]
    fn reciprocal_of_sqrt_is_decreasing_power() {
        let f = ScalarFunction::reciprocal(&ScalarFunction::power(0.5)).unwrap();
        assert_eq!(f, ScalarFunction::power(-0.5));
        assert!(f.flags().monotone_decreasing);
    }

    #[test]
    fn reciprocal_is_an_involution_on_the_probe_grid() {
        for f in [
            ScalarFunction::power(0.3),
            ScalarFunction::one_minus_power(-0.5),
            ScalarFunction::log1p(),
        ] {
            let back = ScalarFunction::reciprocal(&ScalarFunction::reciprocal(&f).unwrap()).unwrap();
            let (lo, hi) = f.domain().sampling_interval();
            for k in 0..=100 {
                let t = lo + (hi - lo) * k as f64 / 100.0;
                assert!((back.evaluate(t) - f.evaluate(t)).abs() <= 1e-14 * f.evaluate(t).abs().max(1.0));
            }
        }
    }

    #[test]
    fn reciprocal_of_log1p_swaps_monotonicity() {
        let g = ScalarFunction::reciprocal(&ScalarFunction::log1p()).unwrap();
        let fl = g.flags();
        assert!(fl.monotone_decreasing && fl.convex && !fl.monotone && !fl.concave);
        assert_eq!(g.name(), "reciprocal:log1p");
        assert!((g.evaluate(1.0) - 1.0 / 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn reciprocal_of_non_positive_function_fails() {
        assert_eq!(
            ScalarFunction::reciprocal(&ScalarFunction::log()),
            Err(Error::NotPositive("log".into()))
        );
    }

    #[test]
    fn parse_round_trips_names() {
        for name in [
            "power:0.5",
            "power:-1",
            "one_minus_power:-1",
            "log",
            "log1p",
            "reciprocal:log1p",
        ] {
            assert_eq!(ScalarFunction::parse(name).unwrap().name(), name);
        }
        assert_eq!(
            ScalarFunction::parse("reciprocal:power:0.5").unwrap().name(),
            "power:-0.5"
        );
        assert!(ScalarFunction::parse("cosh").is_err());
        assert!(ScalarFunction::parse("power:abc").is_err());
    }

    #[test]
    fn claimed_flags_mark_the_function() {
        let sq = ScalarFunction::power(2.0).with_claimed_flags(OperatorFlags {
            monotone: true,
            ..Default::default()
        });
        assert!(sq.is_misclassified());
        assert!(sq.flags().monotone);
        assert_eq!(sq.name(), "power:2[claimed:monotone]");
    }

    #[test]
    fn positivity_thresholds() {
        assert_eq!(ScalarFunction::log().positivity_threshold(), 1.0);
        assert_eq!(ScalarFunction::power(0.5).positivity_threshold(), 0.0);
        assert_eq!(ScalarFunction::one_minus_power(2.0).positivity_threshold(), 0.0);
    }
}
