use num_complex::Complex64;

use crate::error::{GonbError, Result};
use crate::fourier::{ft_indicator, ft_indicator_slices};
use crate::polytope::HPolytope;

/// `V_gg(t, λ) = |Ω|^{-1} χ̂_{Ω ∩ (Ω + t)}(λ)` for `g = |Ω|^{-1/2} χ_Ω`.
pub fn stft_indicator(p: &HPolytope, t: &[f64], lambda: &[f64]) -> Result<Complex64> {
    Ok(StftWindow::new(p)?.eval(t, lambda))
}

/// A window with its volume computed once, for repeated evaluation.
#[derive(Clone, Debug)]
pub struct StftWindow<'a> {
    polytope: &'a HPolytope,
    volume: f64,
}

impl<'a> StftWindow<'a> {
    pub fn new(p: &'a HPolytope) -> Result<Self> {
        let volume = p.volume();
        if !(volume > 0.0) {
            return Err(GonbError::ZeroVolumeWindow);
        }
        Ok(Self {
            polytope: p,
            volume,
        })
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn polytope(&self) -> &HPolytope {
        self.polytope
    }

    pub fn eval(&self, t: &[f64], lambda: &[f64]) -> Complex64 {
        let pt = self.polytope.translate_intersection(t);
        ft_indicator(&pt, lambda) / self.volume
    }

    /// The same value through the slice-integration oracle.
    pub fn eval_oracle(&self, t: &[f64], lambda: &[f64]) -> Complex64 {
        let pt = self.polytope.translate_intersection(t);
        ft_indicator_slices(&pt, lambda) / self.volume
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::fixtures::{pentagon, unit_square};

    #[test]
    fn normalized_at_origin() {
        for p in [unit_square(), pentagon()] {
            let v = stft_indicator(&p, &[0.0, 0.0], &[0.0, 0.0]).unwrap();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn disjoint_translate_gives_zero() {
        let v = stft_indicator(&unit_square(), &[2.0, 0.0], &[0.3, 0.1]).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn pentagon_corner_translate() {
        let v = stft_indicator(&pentagon(), &[-1.0, -1.0], &[0.0, 0.0]).unwrap();
        assert!((v.re - 1.0 / 3.5).abs() < 1e-14 && v.im.abs() < 1e-14);
    }

    #[test]
    fn zero_volume_rejected() {
        let flat = HPolytope::normalize(
            &[
                (vec![1.0, 0.0], 1.0),
                (vec![-1.0, 0.0], 0.0),
                (vec![0.0, 1.0], 0.0),
                (vec![0.0, -1.0], 0.0),
            ],
            2,
        )
        .unwrap();
        assert_eq!(
            stft_indicator(&flat, &[0.0, 0.0], &[0.0, 0.0]).unwrap_err(),
            GonbError::ZeroVolumeWindow
        );
    }
}
