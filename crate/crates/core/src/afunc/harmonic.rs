use std::fmt;

use super::AfuncError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HarmonicKind {
    Cos,
    Sin,
}

/// `g(φ) = cos(kφ)` or `sin(kφ)` with `k` odd and at least 3.
///
/// Besides the value, the φ-profiles needed by the surface construction are
/// available in closed form: the moments against `sin` and `cos`, the kernel
/// `∫₀^φ sin(φ−s) g(s) ds` and its quotients by `sin φ` and `sin² φ`. The
/// quotients are written as finite trigonometric sums so they stay exact
/// through the poles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhiHarmonic {
    pub kind: HarmonicKind,
    pub k: u32,
}

/// `sin(nφ)/sin φ` as the sum `Σ_{j<n} cos((n−1−2j)φ)`, finite at every φ.
fn sin_ratio(n: u32, phi: f64) -> f64 {
    (0..n)
        .map(|j| ((n as f64 - 1.0 - 2.0 * j as f64) * phi).cos())
        .sum()
}

fn sin_ratio_d(n: u32, phi: f64) -> f64 {
    (0..n)
        .map(|j| {
            let f = n as f64 - 1.0 - 2.0 * j as f64;
            -f * (f * phi).sin()
        })
        .sum()
}

impl PhiHarmonic {
    pub fn new(kind: HarmonicKind, k: u32) -> Result<Self, AfuncError> {
        let h = Self { kind, k };
        if !h.is_well_formed() {
            return Err(AfuncError::InvalidTerm(format!(
                "harmonic order k = {k} must be odd and at least 3"
            )));
        }
        Ok(h)
    }

    pub fn cos(k: u32) -> Self {
        Self::new(HarmonicKind::Cos, k).expect("odd k >= 3")
    }

    pub fn sin(k: u32) -> Self {
        Self::new(HarmonicKind::Sin, k).expect("odd k >= 3")
    }

    pub(crate) fn is_well_formed(self) -> bool {
        self.k >= 3 && self.k % 2 == 1
    }

    fn kf(self) -> f64 {
        self.k as f64
    }

    /// `m` with `k = 2m + 1`.
    fn half(self) -> u32 {
        (self.k - 1) / 2
    }

    pub fn value(self, phi: f64) -> f64 {
        match self.kind {
            HarmonicKind::Cos => (self.kf() * phi).cos(),
            HarmonicKind::Sin => (self.kf() * phi).sin(),
        }
    }

    pub fn derivative(self, phi: f64) -> f64 {
        let k = self.kf();
        match self.kind {
            HarmonicKind::Cos => -k * (k * phi).sin(),
            HarmonicKind::Sin => k * (k * phi).cos(),
        }
    }

    /// `∫₀^φ g(s) sin s ds`
    pub fn sin_moment(self, phi: f64) -> f64 {
        let k = self.kf();
        let m = self.half() as f64;
        match self.kind {
            HarmonicKind::Cos => {
                ((m + 1.0) * phi).sin().powi(2) / (k + 1.0) - (m * phi).sin().powi(2) / (k - 1.0)
            }
            HarmonicKind::Sin => {
                0.5 * (((k - 1.0) * phi).sin() / (k - 1.0) - ((k + 1.0) * phi).sin() / (k + 1.0))
            }
        }
    }

    /// `∫₀^φ g(s) cos s ds`
    pub fn cos_moment(self, phi: f64) -> f64 {
        let k = self.kf();
        let m = self.half() as f64;
        match self.kind {
            HarmonicKind::Cos => {
                0.5 * (((k - 1.0) * phi).sin() / (k - 1.0) + ((k + 1.0) * phi).sin() / (k + 1.0))
            }
            HarmonicKind::Sin => {
                ((m + 1.0) * phi).sin().powi(2) / (k + 1.0) + (m * phi).sin().powi(2) / (k - 1.0)
            }
        }
    }

    /// `cos_moment(φ) / sin φ`, continuous through `φ ∈ πℤ`.
    pub fn cos_moment_over_sin(self, phi: f64) -> f64 {
        let k = self.kf();
        let m = self.half();
        match self.kind {
            HarmonicKind::Cos => {
                0.5 * (sin_ratio(self.k - 1, phi) / (k - 1.0)
                    + sin_ratio(self.k + 1, phi) / (k + 1.0))
            }
            HarmonicKind::Sin => {
                ((m + 1) as f64 * phi).sin() * sin_ratio(m + 1, phi) / (k + 1.0)
                    + (m as f64 * phi).sin() * sin_ratio(m, phi) / (k - 1.0)
            }
        }
    }

    /// `I(φ) = ∫₀^φ sin(φ−s) g(s) ds`
    pub fn kernel(self, phi: f64) -> f64 {
        let k = self.kf();
        let big_k = k * k - 1.0;
        match self.kind {
            HarmonicKind::Cos => (phi.cos() - (k * phi).cos()) / big_k,
            HarmonicKind::Sin => (k * phi.sin() - (k * phi).sin()) / big_k,
        }
    }

    /// `I(φ) / sin φ`
    pub fn kernel_over_sin(self, phi: f64) -> f64 {
        let big_k = self.kf() * self.kf() - 1.0;
        let m = self.half();
        match self.kind {
            HarmonicKind::Cos => {
                2.0 * ((m + 1) as f64 * phi).sin() * sin_ratio(m, phi) / big_k
            }
            HarmonicKind::Sin => {
                4.0 * (1..=m).map(|i| (i as f64 * phi).sin().powi(2)).sum::<f64>() / big_k
            }
        }
    }

    /// `d/dφ (I(φ) / sin φ)`, which equals `sin_moment(φ) / sin² φ`.
    pub fn kernel_over_sin_d(self, phi: f64) -> f64 {
        let big_k = self.kf() * self.kf() - 1.0;
        let m = self.half();
        match self.kind {
            HarmonicKind::Cos => {
                let mp = (m + 1) as f64;
                2.0 * (mp * (mp * phi).cos() * sin_ratio(m, phi)
                    + (mp * phi).sin() * sin_ratio_d(m, phi))
                    / big_k
            }
            HarmonicKind::Sin => {
                4.0 * (1..=m)
                    .map(|i| i as f64 * (2.0 * i as f64 * phi).sin())
                    .sum::<f64>()
                    / big_k
            }
        }
    }

    /// `I(φ) / sin² φ`
    pub fn kernel_over_sin2(self, phi: f64) -> f64 {
        let big_k = self.kf() * self.kf() - 1.0;
        let m = self.half();
        match self.kind {
            HarmonicKind::Cos => 2.0 * sin_ratio(m + 1, phi) * sin_ratio(m, phi) / big_k,
            HarmonicKind::Sin => {
                4.0 * (1..=m)
                    .map(|i| (i as f64 * phi).sin() * sin_ratio(i, phi))
                    .sum::<f64>()
                    / big_k
            }
        }
    }
}

impl fmt::Display for PhiHarmonic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            HarmonicKind::Cos => write!(f, "cos({}φ)", self.k),
            HarmonicKind::Sin => write!(f, "sin({}φ)", self.k),
        }
    }
}
