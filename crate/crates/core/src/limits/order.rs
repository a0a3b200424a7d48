use crate::error::{Error, Result};
use crate::numerics::{PrecisionPolicy, Real};

/// Fit of `x_{n+1} ≈ C · x_n^q` on the tail of a sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderEstimate {
    pub order: Real,
    pub constant: Real,
    /// `λ` with `x_n ≈ λ^(2^n)`, fitted when the order is close to 2.
    pub lambda: Option<Real>,
    /// Root-mean-square residual of the log-log fit.
    pub residual: Real,
    /// Number of sequence values used.
    pub points: usize,
}

/// Values above this are still in the transient.
const TAIL_CEILING: f64 = 1e-2;

/// Indices of the values used for fitting: those in `(floor, 1e-2)`. When that
/// window holds fewer than four values, falls back to the last four values
/// above the floor.
fn tail_indices(seq: &[Real], policy: &PrecisionPolicy) -> Result<Vec<usize>> {
    if seq.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "need at least 4 values, got {}",
            seq.len()
        )));
    }
    let floor = policy.underflow_floor();
    let usable: Vec<usize> = (0..seq.len()).filter(|&i| seq[i] > floor).collect();
    if usable.len() < 4 {
        return Err(Error::UnderflowTail);
    }
    let window: Vec<usize> = usable.iter().copied().filter(|&i| seq[i] < TAIL_CEILING).collect();
    if window.len() >= 4 {
        Ok(window)
    } else {
        Ok(usable[usable.len() - 4..].to_vec())
    }
}

/// Consecutive `(ln x_n, ln x_{n+1})` pairs inside the tail.
fn log_pairs(seq: &[Real], tail: &[usize]) -> Vec<(Real, Real)> {
    tail.windows(2)
        .filter(|w| w[1] == w[0] + 1)
        .map(|w| (seq[w[0]].ln(), seq[w[1]].ln()))
        .collect()
}

pub fn estimate_order(seq: &[Real], policy: &PrecisionPolicy) -> Result<OrderEstimate> {
    let tail = tail_indices(seq, policy)?;
    let pairs = log_pairs(seq, &tail);
    if pairs.len() < 3 {
        return Err(Error::InsufficientData("fewer than 3 consecutive tail pairs".into()));
    }
    let n = pairs.len() as i32;
    let mean_x = pairs.iter().map(|(x, _)| x).sum::<Real>() / n;
    let mean_y = pairs.iter().map(|(_, y)| y).sum::<Real>() / n;
    let sxx: Real = pairs.iter().map(|(x, _)| (x - &mean_x).square()).sum();
    if sxx.is_zero() {
        return Err(Error::InsufficientData("tail values are constant".into()));
    }
    let sxy: Real = pairs.iter().map(|(x, y)| (x - &mean_x) * (y - &mean_y)).sum();
    let order = sxy / sxx;
    let log_c = &mean_y - &order * &mean_x;
    let sq: Real = pairs
        .iter()
        .map(|(x, y)| (y - &log_c - &order * x).square())
        .sum();
    let residual = (sq / n).sqrt();

    let lambda = ((&order - 2).abs() <= 0.25).then(|| {
        // Least squares through the origin of ln x_n = 2^n ln λ.
        let bits = policy.bits();
        let (mut num, mut den) = (policy.zero(), policy.zero());
        for &i in &tail {
            let weight = Real::one(bits).mul_pow2(i as i32);
            num += &weight * seq[i].ln();
            den += weight.square();
        }
        (num / den).exp()
    });

    Ok(OrderEstimate {
        order,
        constant: log_c.exp(),
        lambda,
        residual,
        points: tail.len(),
    })
}

/// Geometric mean of `x_{n+1} / x_n^order` over the tail; the constant `C`
/// with the order held fixed.
pub fn fit_constant(seq: &[Real], order: &Real, policy: &PrecisionPolicy) -> Result<Real> {
    let tail = tail_indices(seq, policy)?;
    let pairs = log_pairs(seq, &tail);
    if pairs.is_empty() {
        return Err(Error::InsufficientData("no consecutive tail pairs".into()));
    }
    let n = pairs.len() as i32;
    let mean: Real = pairs.iter().map(|(x, y)| y - order * x).sum::<Real>() / n;
    Ok(mean.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: &Real, y: f64, eps: f64) -> bool {
        (x.to_f64() - y).abs() < eps
    }

    #[test]
    fn geometric_sequence() {
        let p = PrecisionPolicy::default();
        let third = p.ratio(1, 3);
        let seq: Vec<Real> = (0..80).map(|n| third.powi(n)).collect();
        let est = estimate_order(&seq, &p).unwrap();
        assert!(close(&est.order, 1.0, 1e-6));
        assert!(close(&est.constant, 1.0 / 3.0, 1e-6));
        assert!(est.lambda.is_none());
        assert!(close(&fit_constant(&seq, &p.one(), &p).unwrap(), 1.0 / 3.0, 1e-6));
    }

    #[test]
    fn doubly_exponential_sequence() {
        let p = PrecisionPolicy::default();
        let base = p.from_f64(0.9);
        let seq: Vec<Real> = (0..14).map(|n| base.powi(1 << n)).collect();
        let est = estimate_order(&seq, &p).unwrap();
        assert!(close(&est.order, 2.0, 1e-6));
        assert!(close(est.lambda.as_ref().unwrap(), 0.9, 1e-6));
    }

    #[test]
    fn order_is_scale_free() {
        let p = PrecisionPolicy::default();
        let half = p.ratio(1, 2);
        let base: Vec<Real> = (0..60).map(|n| half.powi(n)).collect();
        let q0 = estimate_order(&base, &p).unwrap().order;
        for k in [3, 1000, 7] {
            let scaled: Vec<Real> = base.iter().map(|x| x * k).collect();
            let q = estimate_order(&scaled, &p).unwrap().order;
            assert!((q - &q0).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_short_or_underflowed_input() {
        let p = PrecisionPolicy::default();
        let short: Vec<Real> = (1..4).map(|n| p.ratio(1, n)).collect();
        assert!(matches!(estimate_order(&short, &p), Err(Error::InsufficientData(_))));
        let mut seq: Vec<Real> = (1..4).map(|n| p.ratio(1, 10 * n)).collect();
        seq.extend((0..5).map(|_| p.zero()));
        assert_eq!(estimate_order(&seq, &p), Err(Error::UnderflowTail));
    }
}
