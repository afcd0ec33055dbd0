use dynamics::GridMax;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    /// The maximizing time is the last grid point.
    GridBoundary,
    /// The energy window contains no eigenvalue.
    EmptyWindow,
    /// The value was raised to the fit floor.
    Floored,
}

/// One measured value of a diagnostic at one abscissa (distance, `ℓ`, energy separation).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticPoint {
    pub name: String,
    pub abscissa: f64,
    pub value: f64,
    pub t_star: Option<f64>,
    pub flags: Vec<Flag>,
}

impl DiagnosticPoint {
    pub fn new(name: impl Into<String>, abscissa: f64, value: f64) -> Self {
        debug_assert!(!(value < 0.0), "diagnostic values are nonnegative");
        // `+ 0.0` turns the `-0.0` of an empty sum into `0.0`
        Self { name: name.into(), abscissa, value: value + 0.0, t_star: None, flags: Vec::new() }
    }

    pub fn from_grid(name: impl Into<String>, abscissa: f64, m: GridMax) -> Self {
        let mut p = Self::new(name, abscissa, m.value.max(0.0));
        p.t_star = Some(m.t_star);
        if m.at_boundary {
            p.flags.push(Flag::GridBoundary);
        }
        p
    }

    pub fn with_flag(mut self, flag: Flag) -> Self {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
        self
    }

    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }
}
