use serde::{Deserialize, Serialize};

use super::NumericsError;

/// Closed sampling range `[lo, hi]` with `n` equally spaced points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl AxisRange {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self, NumericsError> {
        let r = Self { lo, hi, n };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.lo >= self.hi {
            return Err(NumericsError::InvalidSpec(format!(
                "axis range requires lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.n < 2 {
            return Err(NumericsError::InvalidSpec(format!(
                "axis range requires at least 2 samples, got {}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            return self.hi;
        }
        self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.value(i)).collect()
    }

    pub fn span(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Tensor-product sampling grid; points are enumerated with the last axis fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub axes: Vec<AxisRange>,
}

impl GridSpec {
    pub fn new(axes: Vec<AxisRange>) -> Result<Self, NumericsError> {
        if axes.is_empty() {
            return Err(NumericsError::InvalidSpec("grid needs at least one axis".into()));
        }
        for a in &axes {
            a.validate()?;
        }
        Ok(Self { axes })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.n).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, mut index: usize) -> Vec<f64> {
        let mut p = vec![0.0; self.axes.len()];
        for (k, axis) in self.axes.iter().enumerate().rev() {
            p[k] = axis.value(index % axis.n);
            index /= axis.n;
        }
        p
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.len() == self.axes.len()
            && self.axes.iter().zip(p).all(|(a, &v)| v >= a.lo && v <= a.hi)
    }
}
