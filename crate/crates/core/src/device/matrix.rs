use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense square complex matrix, row-major. Sized for gate unitaries
/// (2x2 and 4x4 in practice).
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::default(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = c(1.0, 0.0);
        }
        Self { dim, data }
    }

    /// Builds a matrix from rows. Returns `None` unless the rows form a
    /// nonempty square.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Option<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = vec![Complex64::default(); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Self { dim: n, data }
    }

    pub fn kron(&self, other: &Matrix) -> Self {
        let (a, b) = (self.dim, other.dim);
        let n = a * b;
        let mut data = vec![Complex64::default(); n * n];
        for i in 0..a {
            for j in 0..a {
                let s = self.data[i * a + j];
                for k in 0..b {
                    for l in 0..b {
                        data[(i * b + k) * n + (j * b + l)] = s * other.data[k * b + l];
                    }
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut result = Matrix::identity(self.dim);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    pub fn apply(&self, state: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(state.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.data[i * self.dim + j] * state[j]).sum())
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (&self.adjoint() * self).max_abs_diff(&Matrix::identity(self.dim)) <= tol
    }

    /// True when `self = e^{iθ} I` for some θ, entrywise within `tol`.
    pub fn is_phase_times_identity(&self, tol: f64) -> bool {
        let phase = self.get(0, 0);
        if (phase.norm() - 1.0).abs() > tol {
            return false;
        }
        let mut target = Matrix::identity(self.dim);
        target.data.iter_mut().for_each(|z| *z *= phase);
        self.max_abs_diff(&target) <= tol
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut data = vec![Complex64::default(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::default() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Matrix { dim: n, data }
    }
}

// Serialized as rows of [re, im] pairs.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| c(re, im)).collect())
            .collect();
        Matrix::from_rows(rows).ok_or_else(|| serde::de::Error::custom("unitary must be a nonempty square matrix"))
    }
}

/// Standard single- and two-qubit gate matrices.
pub mod standard {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    pub fn id() -> Matrix {
        Matrix::identity(2)
    }

    pub fn x() -> Matrix {
        Matrix::from_rows(vec![vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]]).unwrap()
    }

    pub fn sx() -> Matrix {
        Matrix::from_rows(vec![
            vec![c(0.5, 0.5), c(0.5, -0.5)],
            vec![c(0.5, -0.5), c(0.5, 0.5)],
        ])
        .unwrap()
    }

    pub fn h() -> Matrix {
        let r = FRAC_1_SQRT_2;
        Matrix::from_rows(vec![vec![c(r, 0.), c(r, 0.)], vec![c(r, 0.), c(-r, 0.)]]).unwrap()
    }

    pub fn s() -> Matrix {
        Matrix::from_rows(vec![vec![c(1., 0.), c(0., 0.)], vec![c(0., 0.), c(0., 1.)]]).unwrap()
    }

    pub fn sdg() -> Matrix {
        Matrix::from_rows(vec![vec![c(1., 0.), c(0., 0.)], vec![c(0., 0.), c(0., -1.)]]).unwrap()
    }

    pub fn cz() -> Matrix {
        let mut m = Matrix::identity(4);
        m.data[15] = c(-1., 0.);
        m
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    #[test]
    fn sx_squared_is_x() {
        assert!(sx().pow(2).max_abs_diff(&x()) < 1e-12);
    }

    #[test]
    fn standard_gates_are_unitary() {
        for m in [id(), x(), sx(), h(), s(), sdg(), cz()] {
            assert!(m.is_unitary(1e-12));
        }
    }

    #[test]
    fn kron_dimensions_and_entries() {
        let k = x().kron(&id());
        assert_eq!(k.dim(), 4);
        // X on the high qubit maps |00> to |10>
        let out = k.apply(&[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]);
        assert_eq!(out[2], c(1., 0.));
    }

    #[test]
    fn global_phase_detection() {
        let mut m = Matrix::identity(2);
        m.data.iter_mut().for_each(|z| *z *= Complex64::from_polar(1.0, 0.7));
        assert!(m.is_phase_times_identity(1e-12));
        assert!(!x().is_phase_times_identity(1e-9));
        assert!(!s().is_phase_times_identity(1e-9));
    }

    #[test]
    fn serde_round_trip() {
        let json = serde_json::to_string(&sx()).unwrap();
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sx());
        assert!(serde_json::from_str::<Matrix>("[[[1,0],[0,0]]]").is_err());
    }
}
