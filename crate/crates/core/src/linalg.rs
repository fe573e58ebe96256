//! Symmetric 3×3 matrices and a cyclic Jacobi eigensolver.

use std::ops::Index;

/// Off-diagonal stopping threshold, relative to the Frobenius norm.
pub const JACOBI_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;

/// A symmetric 3×3 matrix in coordinates `(x1, x2, x4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMatrix3 {
    m: [[f64; 3]; 3],
}

impl SymMatrix3 {
    pub fn from_upper(h11: f64, h12: f64, h13: f64, h22: f64, h23: f64, h33: f64) -> Self {
        Self {
            m: [[h11, h12, h13], [h12, h22, h23], [h13, h23, h33]],
        }
    }

    /// Symmetrizes `rows` by averaging `(i, j)` with `(j, i)`.
    pub fn from_rows(rows: [[f64; 3]; 3]) -> Self {
        let mut m = rows;
        for i in 0..3 {
            for j in i + 1..3 {
                let v = 0.5 * (rows[i][j] + rows[j][i]);
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        Self { m }
    }

    pub fn diagonal(d: [f64; 3]) -> Self {
        Self::from_upper(d[0], 0.0, 0.0, d[1], 0.0, d[2])
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.m
    }

    /// `(h11, h12, h13, h22, h23, h33)`
    pub fn upper(&self) -> [f64; 6] {
        let m = &self.m;
        [m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2]]
    }

    pub fn is_finite(&self) -> bool {
        self.upper().iter().all(|x| x.is_finite())
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn frobenius(&self) -> f64 {
        self.m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn mul_vec(&self, v: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, row) in self.m.iter().enumerate() {
            out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Solves `self · x = rhs` by the adjugate; `None` if the matrix is
    /// singular relative to its scale.
    pub fn solve(&self, rhs: [f64; 3]) -> Option<[f64; 3]> {
        let det = self.det();
        let scale = self.max_abs().powi(3);
        if !(det.abs() > 1e-12 * scale) {
            return None;
        }
        let m = &self.m;
        let cof = |i: usize, j: usize| {
            let (r0, r1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            if (i + j) % 2 == 0 {
                minor
            } else {
                -minor
            }
        };
        let mut x = [0.0; 3];
        for (i, xi) in x.iter_mut().enumerate() {
            // inverse = adjugate / det, adjugate = cofactor transpose
            *xi = (0..3).map(|k| cof(k, i) * rhs[k]).sum::<f64>() / det;
        }
        Some(x)
    }

    /// Eigen-decomposition by cyclic Jacobi rotations.
    pub fn eigen(&self) -> Eigen3 {
        let mut a = self.m;
        let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let frob = self.frobenius();
        let mut sweeps = 0;
        while sweeps < MAX_SWEEPS && off_norm(&a) > JACOBI_TOL * frob {
            for (p, q) in [(0, 1), (0, 2), (1, 2)] {
                if a[p][q] == 0.0 {
                    continue;
                }
                let (c, s) = rotation(a[p][p], a[q][q], a[p][q]);
                rotate(&mut a, &mut v, p, q, c, s);
            }
            sweeps += 1;
        }
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
        let values = order.map(|i| a[i][i]);
        let mut vectors = [[0.0; 3]; 3];
        for (col, &src) in order.iter().enumerate() {
            for row in 0..3 {
                vectors[row][col] = v[row][src];
            }
        }
        Eigen3 {
            values,
            vectors,
            sweeps,
        }
    }
}

impl Index<(usize, usize)> for SymMatrix3 {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.m[i][j]
    }
}

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen3 {
    pub values: [f64; 3],
    pub vectors: [[f64; 3]; 3],
    pub sweeps: usize,
}

impl Eigen3 {
    /// `Q·Λ·Qᵀ`
    pub fn reconstruct(&self) -> SymMatrix3 {
        let q = &self.vectors;
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..3).map(|k| q[i][k] * self.values[k] * q[j][k]).sum();
            }
        }
        SymMatrix3::from_rows(m)
    }
}

fn off_norm(a: &[[f64; 3]; 3]) -> f64 {
    (2.0 * (a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2))).sqrt()
}

// (c, s) annihilating the (p, q) entry of [[app, apq], [apq, aqq]].
fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let tau = (aqq - app) / (2.0 * apq);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c)
}

// a ← Jᵀ a J, v ← v J
fn rotate(a: &mut [[f64; 3]; 3], v: &mut [[f64; 3]; 3], p: usize, q: usize, c: f64, s: f64) {
    for k in 0..3 {
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = c * akp - s * akq;
        a[k][q] = s * akp + c * akq;
    }
    for k in 0..3 {
        let apk = a[p][k];
        let aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    for row in v.iter_mut() {
        let vp = row[p];
        let vq = row[q];
        row[p] = c * vp - s * vq;
        row[q] = s * vp + c * vq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_fixed_point() {
        let e = SymMatrix3::diagonal([3.0, -1.0, 2.0]).eigen();
        assert_eq!(e.values, [-1.0, 2.0, 3.0]);
        assert_eq!(e.sweeps, 0);
    }

    #[test]
    fn zero_matrix() {
        let e = SymMatrix3::diagonal([0.0; 3]).eigen();
        assert_eq!(e.values, [0.0; 3]);
    }

    #[test]
    fn known_spectrum() {
        // [[2,1,0],[1,2,0],[0,0,5]] has eigenvalues 1, 3, 5
        let m = SymMatrix3::from_upper(2.0, 1.0, 0.0, 2.0, 0.0, 5.0);
        let e = m.eigen();
        for (got, want) in e.values.iter().zip([1.0, 3.0, 5.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert!((m.det() - 15.0).abs() < 1e-12);
    }

    #[test]
    fn from_rows_averages() {
        let m = SymMatrix3::from_rows([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]]);
        assert_eq!(m[(0, 1)], 3.0);
        assert_eq!(m[(1, 0)], 3.0);
        assert_eq!(m[(0, 2)], 5.0);
        assert_eq!(m[(2, 1)], 7.0);
    }

    #[test]
    fn solve_roundtrip_and_singular() {
        let m = SymMatrix3::from_upper(4.0, 1.0, -2.0, 3.0, 0.5, 6.0);
        let x = [1.0, -2.0, 0.25];
        let b = m.mul_vec(x);
        let y = m.solve(b).unwrap();
        for (u, v) in x.iter().zip(y) {
            assert!((u - v).abs() < 1e-13);
        }
        let singular = SymMatrix3::from_upper(1.0, 1.0, 0.0, 1.0, 0.0, 1.0);
        assert!(singular.solve([1.0, 0.0, 0.0]).is_none());
    }
}
