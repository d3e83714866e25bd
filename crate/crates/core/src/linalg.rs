//! Real/complex vector and matrix primitives.
//!
//! The central operation is [`realify`]: a complex `d×d` unitary becomes a
//! real orthogonal `2d×2d` matrix by expanding every entry `a+bi` into the
//! 2×2 block `[[a,-b],[b,a]]`. A complex amplitude `a_k` occupies the real
//! slot pair `(2k, 2k+1)` as `(Re a_k, Im a_k)`. Every transform stage of a
//! gate processor uses this packing.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexAmplitude = Complex64;

pub const UNITARITY_TOL: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-9;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    pub dim: usize,
    pub entries: Vec<ComplexAmplitude>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[ComplexAmplitude]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim);
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[ComplexAmplitude]) -> Vec<ComplexAmplitude> {
        assert_eq!(v.len(), self.dim);
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for i in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..d {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Max-entry deviation of `U†U` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut max = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += self[(k, i)].conj() * self[(k, j)];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                let dev = (acc - expect).norm();
                if dev > max {
                    max = dev;
                }
            }
        }
        max
    }

    pub fn check_unitary(&self) -> Result<()> {
        let dev = self.unitarity_deviation();
        if dev > UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation: dev });
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = ComplexAmplitude;
    fn index(&self, (i, j): (usize, usize)) -> &ComplexAmplitude {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexAmplitude {
        &mut self.entries[i * self.dim + j]
    }
}

/// Dense square real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    pub dim: usize,
    pub entries: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(dim: usize) -> Self {
        RealMatrix {
            dim,
            entries: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn mul(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = RealMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        let d = self.dim;
        let mut out = vec![0.0; d];
        for (o, row) in out.iter_mut().zip(self.entries.chunks_exact(d)) {
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Max-entry deviation of `MᵀM` from the identity.
    pub fn orthogonality_deviation(&self) -> f64 {
        let d = self.dim;
        let mut max = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0.0;
                for k in 0..d {
                    acc += self[(k, i)] * self[(k, j)];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                let dev = (acc - expect).abs();
                if dev > max {
                    max = dev;
                }
            }
        }
        max
    }
}

impl std::ops::Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// Unit vector of reals; the learned state of a machine lives here.
#[derive(Debug, Clone, PartialEq)]
pub struct RealUnitVector {
    components: Vec<f64>,
}

impl RealUnitVector {
    /// Wrap a vector that is already unit norm (debug-asserted).
    pub fn from_unit(components: Vec<f64>) -> Self {
        debug_assert!((norm(&components) - 1.0).abs() < NORM_TOL);
        RealUnitVector { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.components
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.components
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Normalize `v`, preserving direction.
pub fn normalize(v: &[f64]) -> Result<RealUnitVector> {
    let n = norm(v);
    if n <= 1e-12 {
        return Err(Error::DegenerateVector { norm: n });
    }
    Ok(RealUnitVector {
        components: v.iter().map(|x| x / n).collect(),
    })
}

/// Real-valued version of a complex unitary: entry `a+bi` becomes the block
/// `[[a,-b],[b,a]]`, so the matrix acts on amplitudes packed as
/// `(Re a_0, Im a_0, Re a_1, Im a_1, ...)`. The result is orthogonal.
pub fn realify(u: &ComplexMatrix) -> Result<RealMatrix> {
    u.check_unitary()?;
    let d = u.dim;
    let mut out = RealMatrix::zeros(2 * d);
    for i in 0..d {
        for j in 0..d {
            let z = u[(i, j)];
            out[(2 * i, 2 * j)] = z.re;
            out[(2 * i, 2 * j + 1)] = -z.im;
            out[(2 * i + 1, 2 * j)] = z.im;
            out[(2 * i + 1, 2 * j + 1)] = z.re;
        }
    }
    Ok(out)
}

/// Pack complex amplitudes into the real slot convention of [`realify`].
pub fn realify_vec(v: &[ComplexAmplitude]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * v.len());
    for z in v {
        out.push(z.re);
        out.push(z.im);
    }
    out
}
