//! One-dimensional building blocks: smoothed indicator windows and flux histories.

use serde::{Deserialize, Serialize};

/// C¹ smoothstep over `u ∈ [−½, ½]`; `S(u) + S(−u) = 1`.
pub fn smoothstep(u: f64) -> f64 {
    let v = u + 0.5;
    if v <= 0.0 {
        0.0
    } else if v >= 1.0 {
        1.0
    } else {
        v * v * (3.0 - 2.0 * v)
    }
}

/// `∫_{−∞}^{u} S`, so `R(u) = u` once the step has completed.
pub fn smoothstep_integral(u: f64) -> f64 {
    let v = u + 0.5;
    if v <= 0.0 {
        0.0
    } else if v >= 1.0 {
        u
    } else {
        let v3 = v * v * v;
        v3 - 0.5 * v3 * v
    }
}

/// Indicator of `[lo, hi]`, optionally with each edge smeared over `width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64, width: f64) -> Self {
        Self { lo, hi, width }
    }

    pub fn value(&self, s: f64) -> f64 {
        if self.width == 0.0 {
            return if s >= self.lo && s <= self.hi { 1.0 } else { 0.0 };
        }
        smoothstep((s - self.lo) / self.width) - smoothstep((s - self.hi) / self.width)
    }

    /// `∫_{−∞}^{s} value`: the running length of the window left of `s`.
    pub fn ramp(&self, s: f64) -> f64 {
        if self.width == 0.0 {
            return (s - self.lo).clamp(0.0, self.hi - self.lo);
        }
        let w = self.width;
        w * (smoothstep_integral((s - self.lo) / w) - smoothstep_integral((s - self.hi) / w))
    }

    pub fn breaks(&self) -> Vec<f64> {
        if self.width == 0.0 {
            vec![self.lo, self.hi]
        } else {
            let h = 0.5 * self.width;
            vec![self.lo - h, self.lo + h, self.hi - h, self.hi + h]
        }
    }

    pub fn edge_distance(&self, s: f64) -> f64 {
        (s - self.lo).abs().min((s - self.hi).abs())
    }
}

/// Time history Φ(t) of a confined flux.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "kebab-case")]
pub enum FluxProfile {
    Constant { phi0: f64 },
    /// Φ₀ + k(t − t₀)
    Linear { phi0: f64, rate: f64, t0: f64 },
    /// Φ₀ + Φ₁ sin(ω(t − t₀))
    Sinusoidal { phi0: f64, amplitude: f64, omega: f64, t0: f64 },
}

impl FluxProfile {
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            FluxProfile::Constant { phi0 } => phi0,
            FluxProfile::Linear { phi0, rate, t0 } => phi0 + rate * (t - t0),
            FluxProfile::Sinusoidal { phi0, amplitude, omega, t0 } => {
                phi0 + amplitude * (omega * (t - t0)).sin()
            }
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            FluxProfile::Constant { .. } => 0.0,
            FluxProfile::Linear { rate, .. } => rate,
            FluxProfile::Sinusoidal { amplitude, omega, t0, .. } => {
                amplitude * omega * (omega * (t - t0)).cos()
            }
        }
    }

    pub fn reference_time(&self) -> f64 {
        match *self {
            FluxProfile::Constant { .. } => 0.0,
            FluxProfile::Linear { t0, .. } | FluxProfile::Sinusoidal { t0, .. } => t0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FluxProfile::Constant { .. } => "constant",
            FluxProfile::Linear { .. } => "linear",
            FluxProfile::Sinusoidal { .. } => "sinusoidal",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothstep_is_symmetric_and_c1() {
        for k in 0..=100 {
            let u = -0.6 + 1.2 * k as f64 / 100.0;
            assert!((smoothstep(u) + smoothstep(-u) - 1.0).abs() < 1e-15);
        }
        let e = 1e-7;
        assert!(smoothstep(0.5 - e) > 1.0 - 1e-12);
        assert!(smoothstep(-0.5 + e) < 1e-12);
    }

    #[test]
    fn ramp_is_antiderivative_of_window() {
        let w = Window::new(1.0, 2.0, 0.1);
        let h = 1e-6;
        for &s in &[0.9, 0.97, 1.0, 1.03, 1.5, 1.96, 2.0, 2.04, 2.2] {
            let d = (w.ramp(s + h) - w.ramp(s - h)) / (2.0 * h);
            assert!((d - w.value(s)).abs() < 1e-8, "at {s}");
        }
        assert!((w.ramp(5.0) - 1.0).abs() < 1e-15);
        assert_eq!(w.ramp(0.0), 0.0);
    }

    #[test]
    fn sharp_window_is_closed_indicator() {
        let w = Window::new(1.0, 2.0, 0.0);
        assert_eq!(w.value(1.0), 1.0);
        assert_eq!(w.value(2.0), 1.0);
        assert_eq!(w.value(0.999), 0.0);
        assert_eq!(w.ramp(1.5), 0.5);
    }

    #[test]
    fn profiles_differentiate_consistently() {
        let ps = [
            FluxProfile::Constant { phi0: 1.0 },
            FluxProfile::Linear { phi0: 1.0, rate: 0.3, t0: 0.5 },
            FluxProfile::Sinusoidal { phi0: 1.0, amplitude: 0.4, omega: 2.0, t0: 0.1 },
        ];
        for p in ps {
            let h = 1e-5;
            for &t in &[0.0, 0.7, 2.3] {
                let d = (p.value(t + h) - p.value(t - h)) / (2.0 * h);
                assert!((d - p.derivative(t)).abs() < 1e-8);
            }
            assert!((p.value(p.reference_time()) - 1.0).abs() < 1e-15);
        }
    }
}
