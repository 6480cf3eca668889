use std::f64::consts::FRAC_PI_2;
use std::str::FromStr;

use super::lattice::LatticeProgram;
use super::pattern::MeasurementPattern;
use crate::error::{Error, Result};
use crate::graph::ClusterLayout;

/// Single-wire patterns with known logical unitaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    /// Identity on a `1 x cols` wire, `cols ≥ 3`.
    WireIdentity { cols: usize },
    /// `diag(1, e^{iα})` on a `1 x 3` wire.
    Rz { alpha: f64 },
    /// `Rz(γ)·Rx(β)·Rz(α)` (up to global phase) on a `1 x 5` wire.
    EulerRotation { alpha: f64, beta: f64, gamma: f64 },
}

impl Builtin {
    pub fn cols(&self) -> usize {
        match self {
            Builtin::WireIdentity { cols } => *cols,
            Builtin::Rz { .. } => 3,
            Builtin::EulerRotation { .. } => 5,
        }
    }

    /// Base angles. Each measured site applies `H · diag(1, e^{-iφ})`, so
    /// two sites at `φ = 0` cancel and three sites at `φ = −π/2` give
    /// `(H S)^3 ∝ I`.
    pub fn angles(&self) -> Result<Vec<f64>> {
        match *self {
            Builtin::WireIdentity { cols } => {
                let k = cols.saturating_sub(1);
                match k {
                    0 | 1 => Err(Error::validation(format!(
                        "wire_identity needs at least 3 columns, got {cols}"
                    ))),
                    _ if k % 2 == 0 => Ok(vec![0.0; k]),
                    _ => {
                        let mut a = vec![-FRAC_PI_2; 3];
                        a.resize(k, 0.0);
                        Ok(a)
                    }
                }
            }
            Builtin::Rz { alpha } => Ok(vec![-alpha, 0.0]),
            Builtin::EulerRotation { alpha, beta, gamma } => Ok(vec![-alpha, -beta, -gamma, 0.0]),
        }
    }

    pub fn program(&self) -> Result<LatticeProgram> {
        LatticeProgram::new(ClusterLayout::lattice(1, self.cols())?, self.angles()?)
    }

    pub fn pattern(&self) -> Result<MeasurementPattern> {
        self.program()?.compile()
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// Parses `wire_identity(m)`, `rz(α)` or `euler_rotation(α,β,γ)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.split_once('(') {
            Some((name, rest)) => {
                let args = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::validation(format!("unterminated arguments in {s:?}")))?;
                let args = args
                    .split(',')
                    .map(|a| a.trim())
                    .filter(|a| !a.is_empty())
                    .map(|a| {
                        a.parse::<f64>()
                            .map_err(|_| Error::validation(format!("bad argument {a:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<f64>>>()?;
                (name.trim(), args)
            }
            None => (s, Vec::new()),
        };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::validation(format!(
                    "{name} takes {n} argument(s), got {}",
                    args.len()
                )))
            }
        };
        match name {
            "wire_identity" => {
                arity(1)?;
                let cols = args[0];
                if cols.fract() != 0.0 || cols < 0.0 {
                    return Err(Error::validation(
                        "wire_identity column count must be an integer",
                    ));
                }
                Ok(Builtin::WireIdentity {
                    cols: cols as usize,
                })
            }
            "rz" => {
                arity(1)?;
                Ok(Builtin::Rz { alpha: args[0] })
            }
            "euler_rotation" => {
                arity(3)?;
                Ok(Builtin::EulerRotation {
                    alpha: args[0],
                    beta: args[1],
                    gamma: args[2],
                })
            }
            other => Err(Error::validation(format!(
                "unknown built-in pattern {other:?}"
            ))),
        }
    }
}

/// Looks up a built-in pattern by name, e.g. `"rz(0.3)"`.
pub fn builtin_pattern(name: &str) -> Result<MeasurementPattern> {
    name.parse::<Builtin>()?.pattern()
}
