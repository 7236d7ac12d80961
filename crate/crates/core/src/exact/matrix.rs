//! Square matrices and determinants by several independent methods.

use num_bigint::BigInt;
use num_traits::One;

use super::rational::denominator_lcm;
use super::ring::{ExactDiv, Ring};
use super::Rational;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, Error> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool
    where
        R: PartialEq,
    {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }
}

/// Fraction-free Gaussian elimination. Every division is exact.
pub fn det_bareiss<R: ExactDiv>(m: &Matrix<R>) -> R {
    let n = m.n;
    if n == 0 {
        return R::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        let akk = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let v = akk.clone() * a.get(i, j).clone() - aik.clone() * a.get(k, j).clone();
                a.set(i, j, v.exact_div(&prev));
            }
        }
        prev = akk;
    }
    let d = a.get(n - 1, n - 1).clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Division-free Laplace expansion by rows, memoized over column subsets.
/// Works over any commutative ring; cost is `O(n·2ⁿ)` ring operations.
pub fn det_expansion<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.n;
    assert!(n <= 20, "expansion determinant limited to n ≤ 20");
    if n == 0 {
        return R::one();
    }
    // minor[mask] = det of rows (n − |mask|).. with the columns in mask
    let full = 1usize << n;
    let mut minor: Vec<Option<R>> = vec![None; full];
    minor[0] = Some(R::one());
    for mask in 1..full {
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = R::zero();
        let mut pos = 0;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = m.get(row, col);
            if !entry.is_zero() {
                let sub = minor[mask & !(1 << col)].as_ref().unwrap();
                let term = entry.clone() * sub.clone();
                acc = if pos % 2 == 0 { acc + term } else { acc - term };
            }
            pos += 1;
        }
        minor[mask] = Some(acc);
    }
    minor[full - 1].take().unwrap()
}

/// Exact rational determinant: each row is scaled to integers, the integer
/// matrix goes through Bareiss, and the scaling is divided back out.
pub fn det_integer(m: &Matrix<Rational>) -> Rational {
    let n = m.n;
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let l = denominator_lcm(m.row(i));
        let lr = Rational::from_integer(l.clone());
        rows.push(
            m.row(i)
                .iter()
                .map(|v| (v * &lr).to_integer())
                .collect::<Vec<BigInt>>(),
        );
        scale *= l;
    }
    let im = Matrix::from_rows(rows).expect("square by construction");
    Rational::new(det_bareiss(&im), scale)
}

/// Floating-point determinant by LU with partial pivoting.
pub fn det_f64(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap();
        if a[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn sample() -> Matrix<Rational> {
        Matrix::from_rows(vec![
            vec![int(0), int(2), rat(1, 2)],
            vec![int(1), int(3), int(4)],
            vec![rat(-1, 3), int(5), int(6)],
        ])
        .unwrap()
    }

    #[test]
    fn methods_agree() {
        let m = sample();
        let a = det_bareiss(&m);
        let b = det_expansion(&m);
        let c = det_integer(&m);
        assert_eq!(a, b);
        assert_eq!(b, c);
        let f = det_f64(
            &(0..3)
                .map(|i| {
                    m.row(i)
                        .iter()
                        .map(crate::exact::rational::to_f64)
                        .collect()
                })
                .collect::<Vec<_>>(),
        );
        assert!((f - crate::exact::rational::to_f64(&a)).abs() < 1e-12);
    }

    #[test]
    fn singular_and_pivoting() {
        let m = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        assert_eq!(det_bareiss(&m), int(-1));
        let z = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert_eq!(det_bareiss(&z), int(0));
        assert_eq!(det_expansion(&z), int(0));
    }

    #[test]
    fn rejects_ragged() {
        assert!(Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3)]]).is_err());
    }
}
