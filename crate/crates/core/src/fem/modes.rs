//! Discrete sine analysis of traces along a vertical mesh line.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Amplitudes `a_j` of `sin(j pi y)`, `j = 1..ny-1`, from a trace sampled at
/// the `ny + 1` equidistant nodes of `[0, 1]`. Entry `j - 1` holds `a_j`.
///
/// Uses `a_j = (2/ny) sum_i trace_i sin(j pi i / ny)`, exact for traces that
/// are combinations of these sines by discrete orthogonality.
pub fn interface_mode_amplitudes(trace: &[f64], ny: usize) -> Result<Vec<f64>> {
    if trace.len() != ny + 1 {
        return Err(Error::DimensionMismatch {
            expected: ny + 1,
            got: trace.len(),
        });
    }
    let scale = 2.0 / ny as f64;
    Ok((1..ny)
        .map(|j| {
            scale
                * (1..ny)
                    .map(|i| trace[i] * (j as f64 * PI * i as f64 / ny as f64).sin())
                    .sum::<f64>()
        })
        .collect())
}

/// Index `j >= 1` of the largest amplitude, or `None` if all vanish.
pub fn dominant_mode(amplitudes: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (idx, a) in amplitudes.iter().enumerate() {
        let m = a.abs();
        if m > 0.0 && best.is_none_or(|(_, b)| m > b) {
            best = Some((idx + 1, m));
        }
    }
    best.map(|(j, _)| j)
}

/// Per-mode amplitude of a two-component trace, `sqrt(a_x^2 + a_y^2)`.
pub fn vector_mode_amplitudes(trace_x: &[f64], trace_y: &[f64], ny: usize) -> Result<Vec<f64>> {
    let ax = interface_mode_amplitudes(trace_x, ny)?;
    let ay = interface_mode_amplitudes(trace_y, ny)?;
    Ok(ax.iter().zip(&ay).map(|(a, b)| a.hypot(*b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(ny: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..=ny).map(|i| f(i as f64 / ny as f64)).collect()
    }

    #[test]
    fn single_sine() {
        let a = interface_mode_amplitudes(&samples(40, |y| 0.7 * (PI * y).sin()), 40).unwrap();
        assert!((a[0] - 0.7).abs() < 1e-12);
        assert!(a[1..].iter().all(|v| v.abs() < 1e-12));
        assert_eq!(dominant_mode(&a), Some(1));
    }

    #[test]
    fn mixture_picks_largest() {
        let t = samples(20, |y| 0.2 * (PI * y).sin() - 0.9 * (2.0 * PI * y).sin());
        let a = interface_mode_amplitudes(&t, 20).unwrap();
        assert!((a[1] + 0.9).abs() < 1e-12);
        assert_eq!(dominant_mode(&a), Some(2));
    }

    #[test]
    fn zero_and_mismatch() {
        let a = interface_mode_amplitudes(&[0.0; 11], 10).unwrap();
        assert!(a.iter().all(|&v| v == 0.0));
        assert_eq!(dominant_mode(&a), None);
        assert!(interface_mode_amplitudes(&[0.0; 10], 10).is_err());
    }
}
