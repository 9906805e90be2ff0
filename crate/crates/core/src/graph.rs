//! The square of a cycle, C²_N, and the matrices built from it.
//!
//! Vertices are the residues `0..N`. Rows and columns of the reduced Laplacian
//! and of the halved system are 0-based internally: row `r` of L′ belongs to
//! vertex `r + 1`, and row `r` of the halved matrix to the unknown
//! `h_N(0, r + 1)`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{frac, rat, Rational};
use crate::matrix::ExactMatrix;

/// Smallest order for which C²_N is a simple 4-regular graph.
pub const MIN_N: usize = 5;

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n < MIN_N {
        Err(Error::UnsupportedN(n))
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycleSquare {
    n: usize,
}

impl CycleSquare {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Neighbours of `v` in the order `v-2, v-1, v+1, v+2` (mod N).
    pub fn neighbors(&self, v: usize) -> [usize; 4] {
        let n = self.n;
        let v = v % n;
        [(v + n - 2) % n, (v + n - 1) % n, (v + 1) % n, (v + 2) % n]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        let d = (u + self.n - v % self.n) % self.n;
        matches!(d, 1 | 2) || d == self.n - 1 || d == self.n - 2
    }

    /// Each edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2 * self.n);
        for u in 0..self.n {
            for step in [1, 2] {
                let v = (u + step) % self.n;
                out.push((u.min(v), u.max(v)));
            }
        }
        out
    }

    pub fn laplacian(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                rat(4)
            } else if self.is_adjacent(i, j) {
                rat(-1)
            } else {
                rat(0)
            }
        })
    }

    /// Laplacian with vertex 0's row and column deleted.
    pub fn reduced_laplacian(&self) -> ExactMatrix {
        self.laplacian().minor(0, 0)
    }

    /// Laplacian of the multigraph obtained by identifying vertices 0 and `l`.
    ///
    /// Row/column 0 is the merged vertex; the remaining vertices follow in
    /// increasing order. Parallel edges keep their multiplicity and the edge
    /// `{0, l}`, if present, becomes a loop and is dropped.
    pub fn merged_laplacian(&self, l: usize) -> Result<ExactMatrix> {
        if l == 0 || l >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: l as i64,
                max: self.n as i64 - 1,
            });
        }
        let slot = |v: usize| -> usize {
            match v {
                0 => 0,
                v if v == l => 0,
                v if v < l => v,
                v => v - 1,
            }
        };
        let mut m = ExactMatrix::zeros(self.n - 1, self.n - 1);
        let one = Rational::one();
        for (u, v) in self.edges() {
            let (a, b) = (slot(u), slot(v));
            if a == b {
                continue;
            }
            m[(a, a)] += &one;
            m[(b, b)] += &one;
            m[(a, b)] -= &one;
            m[(b, a)] -= &one;
        }
        Ok(m)
    }
}

/// The folded system `H x = rhs` whose solution is
/// `(h_N(0,1), ..., h_N(0, ⌊N/2⌋))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalvedSystem {
    pub matrix: ExactMatrix,
    pub rhs: Vec<Rational>,
}

/// Folds `L′ h = 4·1` using `h(0,l) = h(0,N-l)`. For even N the last row is
/// halved so the matrix is symmetric, and its right-hand side becomes 2.
pub fn build_h(n: usize) -> Result<HalvedSystem> {
    let g = CycleSquare::new(n)?;
    let lp = g.reduced_laplacian();
    let m = n / 2;
    let even = n.is_multiple_of(2);
    // 1-based vertex labels `i`, `j` map to L′ index `i - 1`.
    let at = |i: usize, j: usize| &lp[(i - 1, j - 1)];
    let mut matrix = ExactMatrix::from_fn(m, m, |r, c| {
        let (i, j) = (r + 1, c + 1);
        if even && j == m {
            at(i, j).clone()
        } else {
            at(i, j) + at(i, n - j)
        }
    });
    let mut rhs = vec![rat(4); m];
    if even {
        matrix.scale_row(m - 1, &frac(1, 2));
        rhs[m - 1] = rat(2);
    }
    Ok(HalvedSystem { matrix, rhs })
}
