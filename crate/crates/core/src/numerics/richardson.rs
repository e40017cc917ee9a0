use super::ComplexScalar;
use crate::{Error, Result};

/// Extrapolated limit with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RichardsonEstimate {
    pub limit: ComplexScalar,
    pub error_estimate: f64,
}

/// Extrapolates `value(y) = L + a y^{-2} + b y^{-4} + ...` to `y → ∞`.
///
/// Neville's scheme in `x = y^{-2}` evaluated at `x = 0`; `order` is the number
/// of inverse-square terms eliminated. The estimate uses the last `order + 1`
/// samples. The error estimate is the distance to the extrapolant built from
/// the preceding window when there is one, and otherwise the magnitude of the
/// last correction.
pub fn richardson_limit(samples: &[(f64, ComplexScalar)], order: usize) -> Result<RichardsonEstimate> {
    let needed = order + 1;
    if samples.len() < needed {
        return Err(Error::InsufficientSamples { needed, got: samples.len() });
    }
    if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) || samples[0].0 <= 0.0 {
        return Err(Error::domain("samples must have positive, strictly increasing y"));
    }
    let x: Vec<f64> = samples.iter().map(|(y, _)| 1.0 / (y * y)).collect();
    let values: Vec<ComplexScalar> = samples.iter().map(|&(_, v)| v).collect();

    // column j holds the extrapolants that eliminate j inverse-square terms
    let mut column = values.clone();
    let mut previous_column = values;
    for j in 1..=order {
        let mut next = vec![ComplexScalar::new(0.0, 0.0); column.len()];
        for i in j..column.len() {
            let (xa, xb) = (x[i - j], x[i]);
            next[i] = column[i] + (column[i] - column[i - 1]) * (xb / (xa - xb));
        }
        previous_column = column;
        column = next;
    }
    let last = column.len() - 1;
    let limit = column[last];
    let error_estimate = if last > order {
        (limit - column[last - 1]).norm()
    } else {
        (limit - previous_column[last]).norm()
    };
    Ok(RichardsonEstimate { limit, error_estimate })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> ComplexScalar {
        ComplexScalar::new(re, 0.0)
    }

    #[test]
    fn constant_sequence() {
        let samples: Vec<_> = [10.0, 20.0, 40.0].iter().map(|&y| (y, c(5.0))).collect();
        let est = richardson_limit(&samples, 1).unwrap();
        assert_eq!(est.limit, c(5.0));
        assert_eq!(est.error_estimate, 0.0);
    }

    #[test]
    fn exact_inverse_square_model() {
        let samples: Vec<_> = [10.0, 20.0, 40.0].iter().map(|&y| (y, c(1.0 + 1.0 / (y * y)))).collect();
        let est = richardson_limit(&samples, 1).unwrap();
        assert!((est.limit - 1.0).norm() < 1e-15);
        assert!(est.error_estimate < 1e-15);
    }

    #[test]
    fn second_order_model() {
        let f = |y: f64| ComplexScalar::new(2.0 - 3.0 / (y * y) + 7.0 / y.powi(4), 1.0 / (y * y));
        let samples: Vec<_> = [7.0, 13.0, 20.0, 41.0].iter().map(|&y| (y, f(y))).collect();
        let est = richardson_limit(&samples, 2).unwrap();
        assert!((est.limit - ComplexScalar::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn too_few_samples() {
        let samples = vec![(1.0, c(1.0)), (2.0, c(1.0))];
        assert!(matches!(
            richardson_limit(&samples, 2),
            Err(Error::InsufficientSamples { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn unsorted_samples_rejected() {
        let samples = vec![(2.0, c(1.0)), (1.0, c(1.0))];
        assert!(richardson_limit(&samples, 1).is_err());
    }
}
