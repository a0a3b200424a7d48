use crate::error::{Error, Result};
use crate::numerics::Real;

/// Square matrix of order 4 or 5, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallMatrix {
    order: usize,
    entries: Vec<Real>,
}

impl SmallMatrix {
    pub fn new(order: usize, entries: Vec<Real>) -> Result<Self> {
        if order != 4 && order != 5 {
            return Err(Error::InvalidInput(format!(
                "matrix order must be 4 or 5, got {order}"
            )));
        }
        if entries.len() != order * order {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        Ok(SmallMatrix { order, entries })
    }

    pub fn from_rows<const N: usize>(rows: [[Real; N]; N]) -> Result<Self> {
        SmallMatrix::new(N, rows.into_iter().flatten().collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &Real {
        &self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[Real] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    /// Replaces row `row`, e.g. to spot-check multilinearity.
    pub fn with_row(&self, row: usize, values: &[Real]) -> Result<Self> {
        if values.len() != self.order || row >= self.order {
            return Err(Error::InvalidInput("row shape mismatch".into()));
        }
        let mut out = self.clone();
        out.entries[row * self.order..(row + 1) * self.order].clone_from_slice(values);
        Ok(out)
    }
}

/// Determinant by fraction-free (Bareiss) elimination with partial pivoting.
///
/// Every intermediate entry is itself a minor of the input, so magnitudes stay
/// bounded for the order-5 Cayley-Menger matrices used here.
pub fn det(m: &SmallMatrix) -> Real {
    let n = m.order;
    let mut a: Vec<Vec<Real>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let bits = a.iter().flatten().map(Real::prec).max().unwrap_or(64);
    let mut sign = 1;
    let mut prev = Real::one(bits);

    for k in 0..n - 1 {
        // Largest-magnitude pivot in column k.
        let pivot = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .expect("non-empty pivot range");
        if a[pivot][k].is_zero() {
            return Real::zero(bits);
        }
        if pivot != k {
            a.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let updated = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = updated;
            }
            a[i][k] = Real::zero(bits);
        }
        prev = a[k][k].clone();
    }

    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionPolicy;

    fn ints(p: &PrecisionPolicy, order: usize, v: &[i64]) -> SmallMatrix {
        SmallMatrix::new(order, v.iter().map(|&x| p.int(x)).collect()).unwrap()
    }

    #[test]
    fn identity_is_one() {
        let p = PrecisionPolicy::default();
        let mut v = vec![0; 16];
        for i in 0..4 {
            v[i * 4 + i] = 1;
        }
        assert_eq!(det(&ints(&p, 4, &v)), 1);
    }

    #[test]
    fn repeated_rows_vanish() {
        let p = PrecisionPolicy::default();
        let m = ints(
            &p,
            5,
            &[
                1, 2, 3, 4, 5, //
                0, 7, 1, 2, 2, //
                1, 2, 3, 4, 5, //
                9, 1, 0, 3, 3, //
                4, 4, 2, 8, 1,
            ],
        );
        assert!(det(&m).is_zero());
    }

    #[test]
    fn zero_leading_entries_need_a_row_swap() {
        let p = PrecisionPolicy::default();
        // Permutation matrix with sign -1.
        let m = ints(
            &p,
            4,
            &[
                0, 1, 0, 0, //
                1, 0, 0, 0, //
                0, 0, 1, 0, //
                0, 0, 0, 1,
            ],
        );
        assert_eq!(det(&m), -1);
    }

    #[test]
    fn regular_unit_tetrahedron_cayley_menger() {
        // 288 V^2 with V^2 = 1/72.
        let p = PrecisionPolicy::default();
        let m = ints(
            &p,
            5,
            &[
                0, 1, 1, 1, 1, //
                1, 0, 1, 1, 1, //
                1, 1, 0, 1, 1, //
                1, 1, 1, 0, 1, //
                1, 1, 1, 1, 0,
            ],
        );
        assert_eq!(det(&m), 4);
    }

    #[test]
    fn rejects_other_orders() {
        let p = PrecisionPolicy::default();
        assert!(SmallMatrix::new(3, vec![p.one(); 9]).is_err());
        assert!(SmallMatrix::new(4, vec![p.one(); 15]).is_err());
    }
}
