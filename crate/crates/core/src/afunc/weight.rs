use std::fmt;
use std::str::FromStr;

use super::AfuncError;

/// Behaviour of a weight under the shift `θ ↦ θ + π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiParity {
    /// `w(θ + π) = w(θ)`
    Periodic,
    /// `w(θ + π) = −w(θ)`
    Antiperiodic,
}

/// The θ-dependent factor of a generating-function term.
///
/// Every kind is 2π-periodic and has analytic first and second derivatives.
/// `SignedSin2` (`|sin θ| sin θ`) is only `C^{1,1}`; its second derivative is
/// taken as `2 sgn(sin θ) cos 2θ` with `sgn(0) = 0`, i.e. it vanishes on `πℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaWeight {
    One,
    /// `cos²θ`
    Cos2,
    /// `sin²θ`
    Sin2,
    /// `|sin θ| sin θ`
    SignedSin2,
    /// `cos(2mθ)`, `m ≥ 1`
    CosEven(u32),
    /// `sin(2mθ)`, `m ≥ 1`
    SinEven(u32),
    /// `cos((2m−1)θ)`, `m ≥ 1`
    CosOdd(u32),
    /// `sin((2m−1)θ)`, `m ≥ 1`
    SinOdd(u32),
}

impl ThetaWeight {
    pub fn parity(self) -> PiParity {
        match self {
            Self::One | Self::Cos2 | Self::Sin2 | Self::CosEven(_) | Self::SinEven(_) => {
                PiParity::Periodic
            }
            Self::SignedSin2 | Self::CosOdd(_) | Self::SinOdd(_) => PiParity::Antiperiodic,
        }
    }

    /// Frequency multiplier for the trigonometric kinds, `None` for the rest.
    fn frequency(self) -> Option<f64> {
        match self {
            Self::CosEven(m) | Self::SinEven(m) => Some(2.0 * m as f64),
            Self::CosOdd(m) | Self::SinOdd(m) => Some(2.0 * m as f64 - 1.0),
            _ => None,
        }
    }

    pub(crate) fn is_well_formed(self) -> bool {
        match self {
            Self::CosEven(m) | Self::SinEven(m) | Self::CosOdd(m) | Self::SinOdd(m) => m >= 1,
            _ => true,
        }
    }

    pub fn value(self, theta: f64) -> f64 {
        match self {
            Self::One => 1.0,
            Self::Cos2 => theta.cos().powi(2),
            Self::Sin2 => theta.sin().powi(2),
            Self::SignedSin2 => {
                let s = theta.sin();
                s.abs() * s
            }
            Self::CosEven(_) | Self::CosOdd(_) => (self.frequency().unwrap() * theta).cos(),
            Self::SinEven(_) | Self::SinOdd(_) => (self.frequency().unwrap() * theta).sin(),
        }
    }

    pub fn d1(self, theta: f64) -> f64 {
        match self {
            Self::One => 0.0,
            Self::Cos2 => -(2.0 * theta).sin(),
            Self::Sin2 => (2.0 * theta).sin(),
            Self::SignedSin2 => 2.0 * theta.sin().abs() * theta.cos(),
            Self::CosEven(_) | Self::CosOdd(_) => {
                let n = self.frequency().unwrap();
                -n * (n * theta).sin()
            }
            Self::SinEven(_) | Self::SinOdd(_) => {
                let n = self.frequency().unwrap();
                n * (n * theta).cos()
            }
        }
    }

    pub fn d2(self, theta: f64) -> f64 {
        match self {
            Self::One => 0.0,
            Self::Cos2 => -2.0 * (2.0 * theta).cos(),
            Self::Sin2 => 2.0 * (2.0 * theta).cos(),
            Self::SignedSin2 => {
                let s = theta.sin();
                let sign = if s > 0.0 {
                    1.0
                } else if s < 0.0 {
                    -1.0
                } else {
                    0.0
                };
                2.0 * sign * (2.0 * theta).cos()
            }
            Self::CosEven(_) | Self::CosOdd(_) => {
                let n = self.frequency().unwrap();
                -n * n * (n * theta).cos()
            }
            Self::SinEven(_) | Self::SinOdd(_) => {
                let n = self.frequency().unwrap();
                -n * n * (n * theta).sin()
            }
        }
    }
}

impl fmt::Display for ThetaWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::One => f.write_str("one"),
            Self::Cos2 => f.write_str("cos2"),
            Self::Sin2 => f.write_str("sin2"),
            Self::SignedSin2 => f.write_str("signedsin2"),
            Self::CosEven(m) => write!(f, "coseven:{m}"),
            Self::SinEven(m) => write!(f, "sineven:{m}"),
            Self::CosOdd(m) => write!(f, "cosodd:{m}"),
            Self::SinOdd(m) => write!(f, "sinodd:{m}"),
        }
    }
}

impl FromStr for ThetaWeight {
    type Err = AfuncError;

    /// Parses the config tags `one`, `cos2`, `sin2`, `signedsin2` and
    /// `coseven:m`, `sineven:m`, `cosodd:m`, `sinodd:m`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AfuncError::UnknownWeight(s.to_string());
        let (name, order) = match s.split_once(':') {
            Some((name, m)) => {
                let m: u32 = m.trim().parse().map_err(|_| bad())?;
                (name.trim(), Some(m))
            }
            None => (s.trim(), None),
        };
        let weight = match (name, order) {
            ("one", None) => Self::One,
            ("cos2", None) => Self::Cos2,
            ("sin2", None) => Self::Sin2,
            ("signedsin2", None) => Self::SignedSin2,
            ("coseven", Some(m)) => Self::CosEven(m),
            ("sineven", Some(m)) => Self::SinEven(m),
            ("cosodd", Some(m)) => Self::CosOdd(m),
            ("sinodd", Some(m)) => Self::SinOdd(m),
            _ => return Err(bad()),
        };
        if !weight.is_well_formed() {
            return Err(bad());
        }
        Ok(weight)
    }
}
