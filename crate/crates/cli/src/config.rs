use clap::{Args, ValueEnum};
use relsync_core::{SyncConvention, TimeBasis, Velocity};
use serde::Serialize;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_SEED: u64 = 42;

/// clap value parser for `--eps`-style flags.
pub fn parse_velocity(s: &str) -> Result<Velocity, String> {
    let value: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    Velocity::new(value).map_err(|_| {
        format!("velocity ratio must satisfy |eps| < 1 (speed below light), got {value}")
    })
}

pub fn parse_length(s: &str) -> Result<f64, String> {
    let value: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("length must be positive and finite, got {value}"))
    }
}

pub fn parse_positive(s: &str) -> Result<f64, String> {
    parse_length(s).map_err(|_| format!("expected a positive finite number, got `{s}`"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionChoice {
    Einstein,
    Poincare,
    Both,
}

impl ConventionChoice {
    pub fn conventions(self) -> Vec<SyncConvention> {
        match self {
            ConventionChoice::Einstein => vec![SyncConvention::Einstein],
            ConventionChoice::Poincare => vec![SyncConvention::PoincareEther],
            ConventionChoice::Both => vec![SyncConvention::Einstein, SyncConvention::PoincareEther],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisChoice {
    True,
    Local,
    Both,
}

impl BasisChoice {
    pub fn includes(self, basis: TimeBasis) -> bool {
        matches!(
            (self, basis),
            (BasisChoice::Both, _)
                | (BasisChoice::True, TimeBasis::TrueTime)
                | (BasisChoice::Local, TimeBasis::LocalTime)
        )
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Seed for randomized audits (echoed in every report).
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Pass/fail threshold for assertions.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_positive)]
    pub tolerance: f64,

    /// Speed of light used when reporting times (t_report = t / c).
    #[arg(long = "c", default_value_t = 1.0, value_parser = parse_positive)]
    pub c: f64,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl Default for CommonArgs {
    fn default() -> Self {
        CommonArgs {
            seed: DEFAULT_SEED,
            tolerance: DEFAULT_TOLERANCE,
            c: 1.0,
            format: Format::Text,
        }
    }
}

/// Parameters of a single scenario.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioConfig {
    pub length: f64,
    pub eps: f64,
    pub convention: ConventionChoice,
    pub basis: BasisChoice,
    pub c: f64,
    pub seed: u64,
    pub tolerance: f64,
}

impl ScenarioConfig {
    pub fn new(eps: Velocity) -> Self {
        ScenarioConfig {
            length: 1.0,
            eps: eps.value(),
            convention: ConventionChoice::Both,
            basis: BasisChoice::Both,
            c: 1.0,
            seed: DEFAULT_SEED,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn velocity(&self) -> Velocity {
        Velocity::new(self.eps).expect("ScenarioConfig holds a validated velocity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn velocity_parser_rejects_light_speed() {
        assert!(parse_velocity("0.6").is_ok());
        assert!(parse_velocity("-0.99").is_ok());
        let err = parse_velocity("1.0").unwrap_err();
        assert!(err.contains("|eps| < 1"), "{err}");
        assert!(parse_velocity("-1").is_err());
        assert!(parse_velocity("abc").is_err());
        assert!(parse_velocity("NaN").is_err());
    }

    #[test]
    fn length_parser() {
        assert_eq!(parse_length("2.5"), Ok(2.5));
        assert!(parse_length("0").is_err());
        assert!(parse_length("-1").is_err());
        assert!(parse_length("inf").is_err());
    }

    #[test]
    fn basis_selection() {
        assert!(BasisChoice::Both.includes(TimeBasis::TrueTime));
        assert!(BasisChoice::Local.includes(TimeBasis::LocalTime));
        assert!(!BasisChoice::Local.includes(TimeBasis::TrueTime));
    }
}
