//! Effective resistance, Kirchhoff index and spanning-tree counts of C²_N
//! with unit resistors on every edge.

use num_integer::Integer as _;
use num_traits::Zero;

use crate::closed_form::hitting_time;
use crate::error::{Error, Result};
use crate::exact::{fib, rat, Integer, Rational};
use crate::graph::check_n;

fn check_vertex(n: usize, l: usize) -> Result<()> {
    if l == 0 || l >= n {
        Err(Error::VertexOutOfRange {
            vertex: l as i64,
            max: n as i64 - 1,
        })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResistanceResult {
    pub n: usize,
    pub l: usize,
    pub r: Rational,
}

/// `r(0, l) = h_N(0,l) / (2N)`: the graph has 2N edges and the walk is
/// symmetric under the dihedral group, so `h(0,l) = h(l,0)`.
pub fn effective_resistance(n: usize, l: usize) -> Result<Rational> {
    check_n(n)?;
    check_vertex(n, l)?;
    Ok(hitting_time(n, l as i64)? / rat(2 * n as i64))
}

impl ResistanceResult {
    pub fn compute(n: usize, l: usize) -> Result<Self> {
        Ok(Self {
            n,
            l,
            r: effective_resistance(n, l)?,
        })
    }
}

/// `N(N-1)(5N+17)/300 + (2N²/25) F_{N-1}/F_N`.
pub fn kirchhoff_index(n: usize) -> Result<Rational> {
    check_n(n)?;
    let ni = n as i64;
    let poly = Rational::new(
        Integer::from(ni * (ni - 1) * (5 * ni + 17)),
        Integer::from(300),
    );
    let fib_part = Rational::new(fib(ni - 1) * (2 * ni * ni), fib(ni) * 25u32);
    Ok(poly + fib_part)
}

/// Sum of `r(x, y)` over unordered pairs, grouped by the difference `y - x`.
pub fn kirchhoff_index_by_sum(n: usize) -> Result<Rational> {
    check_n(n)?;
    let mut total = Rational::zero();
    for i in 1..n {
        total += effective_resistance(n, i)? * rat((n - i) as i64);
    }
    Ok(total)
}

/// Number of spanning trees, `N F_N²`.
pub fn tree_count(n: usize) -> Result<Integer> {
    check_n(n)?;
    let f = fib(n as i64);
    Ok(&f * &f * n)
}

/// Number of spanning trees after identifying vertices 0 and `l`:
/// `(F_N/5)(l(N-l) F_N + 2N F_l F_{N-l})`.
pub fn merged_tree_count(n: usize, l: usize) -> Result<Integer> {
    check_n(n)?;
    check_vertex(n, l)?;
    let (ni, li) = (n as i64, l as i64);
    let f_n = fib(ni);
    let inner = &f_n * (li * (ni - li)) + fib(li) * fib(ni - li) * (2 * ni);
    let numer = f_n * inner;
    let (q, r) = numer.div_rem(&Integer::from(5));
    if !r.is_zero() {
        return Err(Error::NonIntegerResult(format!("{numer}/5")));
    }
    Ok(q)
}

/// `Σ_{i=0}^{N} F_i F_{N-i} = ((N-1) F_N + 2N F_{N-1}) / 5`, checked exactly.
pub fn convolution_identity(n: usize) -> bool {
    let ni = n as i64;
    let lhs: Integer = (0..=ni).map(|i| fib(i) * fib(ni - i)).sum();
    let rhs = fib(ni) * (ni - 1) + fib(ni - 1) * (2 * ni);
    lhs * 5u32 == rhs
}
