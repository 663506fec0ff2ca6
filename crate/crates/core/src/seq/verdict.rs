use std::fmt;

use crate::scalar::Interval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "Holds",
            Outcome::Fails => "Fails",
            Outcome::Inconclusive => "Inconclusive",
        })
    }
}

/// Whether a verdict covers only the checked window or holds for all indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    Window,
    Global { provenance: String },
}

/// A reproducible counterexample: re-evaluating at `at` yields `lhs` vs `rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub at: Vec<i64>,
    pub lhs: Option<Interval>,
    pub rhs: Option<Interval>,
    pub note: String,
}

/// Diagnostics attached to inconclusive numeric evidence.
#[derive(Clone, Debug, PartialEq)]
pub struct Trend {
    pub last_values: Vec<f64>,
    /// Ratio or slope summarising the tail; meaning given by `note`.
    pub growth: f64,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Inclusive index range that was examined, when one applies.
    pub window: Option<(i64, i64)>,
    pub scope: Scope,
    pub witness: Option<Witness>,
    pub trend: Option<Trend>,
    /// Number of individual comparisons performed.
    pub checked: usize,
}

impl Verdict {
    pub fn holds(window: Option<(i64, i64)>, checked: usize) -> Self {
        Verdict {
            outcome: Outcome::Holds,
            window,
            scope: Scope::Window,
            witness: None,
            trend: None,
            checked,
        }
    }

    pub fn fails(window: Option<(i64, i64)>, witness: Witness, checked: usize) -> Self {
        Verdict {
            outcome: Outcome::Fails,
            window,
            scope: Scope::Window,
            witness: Some(witness),
            trend: None,
            checked,
        }
    }

    pub fn inconclusive(window: Option<(i64, i64)>, trend: Option<Trend>, checked: usize) -> Self {
        Verdict {
            outcome: Outcome::Inconclusive,
            window,
            scope: Scope::Window,
            witness: None,
            trend,
            checked,
        }
    }

    /// Family-level verdict that does not depend on a window.
    pub fn oracle(outcome: Outcome, provenance: impl Into<String>) -> Self {
        Verdict {
            outcome,
            window: None,
            scope: Scope::Global {
                provenance: provenance.into(),
            },
            witness: None,
            trend: None,
            checked: 0,
        }
    }

    pub fn with_scope(mut self, scope: Scope) -> Self {
        self.scope = scope;
        self
    }

    pub fn with_trend(mut self, trend: Trend) -> Self {
        self.trend = Some(trend);
        self
    }

    pub fn is_holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }

    pub fn is_global(&self) -> bool {
        matches!(self.scope, Scope::Global { .. })
    }

    /// Combines sweep verdicts: any failure wins, then any inconclusive.
    pub fn merge(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut checked = 0;
        let mut inconclusive = None;
        let mut window: Option<(i64, i64)> = None;
        for v in verdicts {
            checked += v.checked;
            if let Some((a, b)) = v.window {
                window = Some(match window {
                    Some((x, y)) => (x.min(a), y.max(b)),
                    None => (a, b),
                });
            }
            match v.outcome {
                Outcome::Fails => {
                    return Verdict { checked, ..v };
                }
                Outcome::Inconclusive if inconclusive.is_none() => inconclusive = Some(v),
                _ => {}
            }
        }
        match inconclusive {
            Some(v) => Verdict { checked, window, ..v },
            None => Verdict::holds(window, checked),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.outcome)?;
        if let Some((a, b)) = self.window {
            write!(f, " on [{a}, {b}]")?;
        }
        if let Scope::Global { provenance } = &self.scope {
            write!(f, " (global: {provenance})")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness at {:?}: {}", w.at, w.note)?;
        }
        if let Some(t) = &self.trend {
            write!(f, " trend {}: {:.6}", t.note, t.growth)?;
        }
        Ok(())
    }
}
