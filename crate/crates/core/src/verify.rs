//! Sweeps that re-check every closed form against its independent route for
//! all `5 <= N <= n_max`. The CLI `verify` command is a thin wrapper.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::closed_form::{
    chair_hitting_time, hitting_first, hitting_time, hitting_vector, y_vector, z_vector,
};
use crate::decomposition::{
    build_bundle, d_determinant, h_inverse_matrix, inverse_factors_consistent, s_entry_case,
};
use crate::error::{Error, Result};
use crate::exact::{fib, identity_check, rat, Rational};
use crate::graph::{build_h, CycleSquare, MIN_N};
use crate::oracle;
use crate::resistance::{
    convolution_identity, effective_resistance, kirchhoff_index, kirchhoff_index_by_sum,
    merged_tree_count, tree_count,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Decomp,
    Oracle,
    Chair,
    Kirchhoff,
    Identities,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = [
        "all",
        "decomp",
        "oracle",
        "chair",
        "kirchhoff",
        "identities",
    ];

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "all" => Self::All,
            "decomp" => Self::Decomp,
            "oracle" => Self::Oracle,
            "chair" => Self::Chair,
            "kirchhoff" => Self::Kirchhoff,
            "identities" => Self::Identities,
            _ => return None,
        })
    }

    fn parts(self) -> Vec<Suite> {
        match self {
            Self::All => vec![
                Self::Identities,
                Self::Oracle,
                Self::Chair,
                Self::Decomp,
                Self::Kirchhoff,
            ],
            s => vec![s],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub formula: &'static str,
    pub n: usize,
    pub l: Option<usize>,
    pub ij: Option<(usize, usize)>,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL {} N={}", self.formula, self.n)?;
        if let Some(l) = self.l {
            write!(f, " l={l}")?;
        }
        if let Some((i, j)) = self.ij {
            write!(f, " i={i} j={j}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: u64,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: VerifyReport) -> Self {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self
    }
}

struct Checker {
    n: usize,
    report: VerifyReport,
}

impl Checker {
    fn new(n: usize) -> Self {
        Self {
            n,
            report: VerifyReport::default(),
        }
    }

    fn expect(
        &mut self,
        ok: bool,
        formula: &'static str,
        l: Option<usize>,
        ij: Option<(usize, usize)>,
        detail: impl FnOnce() -> String,
    ) {
        self.report.checks += 1;
        if !ok {
            self.report.failures.push(Failure {
                formula,
                n: self.n,
                l,
                ij,
                detail: detail(),
            });
        }
    }

    fn eq<T: PartialEq + fmt::Display>(
        &mut self,
        formula: &'static str,
        l: Option<usize>,
        got: &T,
        want: &T,
    ) {
        self.expect(got == want, formula, l, None, || {
            format!("got {got}, expected {want}")
        });
    }

    fn result<T>(&mut self, formula: &'static str, l: Option<usize>, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.expect(false, formula, l, None, || e.to_string());
                None
            }
        }
    }
}

fn oracle_checks(n: usize) -> VerifyReport {
    let mut c = Checker::new(n);
    let g = CycleSquare::new(n).expect("n >= 5");
    let lp = g.reduced_laplacian();
    if let Some(x) = c.result(
        "solve(L', 4*1)",
        None,
        oracle::solve(&lp, &vec![rat(4); n - 1]),
    ) {
        for l in 1..n {
            if let Some(h) = c.result("hitting_time", Some(l), hitting_time(n, l as i64)) {
                c.eq("hitting_time vs L' solve", Some(l), &h, &x[l - 1]);
            }
        }
    }
    let sys = build_h(n).expect("n >= 5");
    if let (Some(x), Some(hv)) = (
        c.result(
            "solve(H_N, rhs)",
            None,
            oracle::solve(&sys.matrix, &sys.rhs),
        ),
        c.result("hitting_vector", None, hitting_vector(n)),
    ) {
        for (l, (a, b)) in x.iter().zip(&hv).enumerate() {
            c.eq("halved solve vs hitting_time", Some(l + 1), a, b);
        }
    }
    let h: Vec<Rational> = (0..n as i64)
        .map(|l| hitting_time(n, l).expect("n >= 5"))
        .collect();
    let at = |k: i64| &h[k.rem_euclid(n as i64) as usize];
    for l in 1..n as i64 {
        let lhs = at(l) * rat(4) - at(l - 1) - at(l - 2) - at(l + 1) - at(l + 2);
        c.eq("one-step recurrence", Some(l as usize), &lhs, &rat(4));
        c.eq(
            "symmetry h(l) = h(N-l)",
            Some(l as usize),
            at(l),
            at(n as i64 - l),
        );
    }
    if let Some(v) = c.result("hitting_first", None, hitting_first(n)) {
        c.eq("convolution form of h(0,1)", Some(1), &v, &h[1]);
    }
    c.report
}

fn chair_checks(n: usize) -> VerifyReport {
    let mut c = Checker::new(n);
    for l in 0..n {
        let main = hitting_time(n, l as i64).expect("n >= 5");
        if let Some(v) = c.result(
            "two-branch Q(sqrt5) formula",
            Some(l),
            chair_hitting_time(n, l as i64),
        ) {
            c.eq("two-branch formula vs single formula", Some(l), &v, &main);
        }
    }
    c.report
}

fn decomp_checks(n: usize) -> VerifyReport {
    let mut c = Checker::new(n);
    let h = build_h(n).expect("n >= 5").matrix;
    let b = build_bundle(n).expect("n >= 5");
    let f_n = Rational::from_integer(fib(n as i64));
    let product = b.product();
    let m = b.m;
    for i in 0..m {
        for j in 0..m {
            let (p, hv) = (&product[(i, j)], &h[(i, j)]);
            c.expect(
                p == hv,
                "U^-1 W D W^t U^-t = H",
                None,
                Some((i + 1, j + 1)),
                || format!("got {p}, expected {hv}"),
            );
            match s_entry_case(n, i + 1, j + 1) {
                Ok(s) => c.expect(
                    &s == hv,
                    "S_N case table",
                    None,
                    Some((i + 1, j + 1)),
                    || format!("got {s}, expected {hv}"),
                ),
                Err(e) => c.expect(false, "S_N case table", None, Some((i + 1, j + 1)), || {
                    e.to_string()
                }),
            }
        }
    }
    c.expect(h.is_symmetric(), "H symmetric", None, None, || {
        "H_N is not symmetric".into()
    });
    if let Some(det) = c.result("det(H)", None, oracle::determinant(&h)) {
        c.eq("det(H) = F_N", None, &det, &f_n);
    }
    c.eq("det(D) = F_N", None, &d_determinant(&b), &f_n);
    c.expect(
        inverse_factors_consistent(&b),
        "W W^-1 = I and U U^-1 = I",
        None,
        None,
        || "factor inverses disagree".into(),
    );
    if let (Some(closed), Some(inv)) = (
        c.result("closed-form H^-1", None, h_inverse_matrix(n)),
        c.result("inverse(H)", None, oracle::inverse(&h)),
    ) {
        for i in 0..m {
            for j in 0..m {
                let (a, o) = (&closed[(i, j)], &inv[(i, j)]);
                c.expect(
                    a == o,
                    "closed-form H^-1 entry",
                    None,
                    Some((i + 1, j + 1)),
                    || format!("got {a}, expected {o}"),
                );
            }
        }
    }
    let ni = n as i64;
    let rhs: Vec<Rational> = (1..=m as i64).map(|k| rat(ni - 2 * k + 1)).collect();
    let d_inv: Vec<Rational> = (0..m).map(|k| b.d[(k, k)].recip()).collect();
    let w_rhs = b.w_inv.mul_vec(&rhs).expect("dims");
    let z_matrix: Vec<Rational> = w_rhs
        .iter()
        .zip(&d_inv)
        .map(|(v, d)| v * d * rat(2))
        .collect();
    let z = z_vector(n).expect("n >= 5");
    let y = y_vector(n).expect("n >= 5");
    let y_matrix = b.w_inv.transpose().mul_vec(&z).expect("dims");
    let x = hitting_vector(n).expect("n >= 5");
    let mut prefix = Rational::zero();
    for k in 0..m {
        c.eq("z = 2 D^-1 W^-1 rhs", Some(k + 1), &z[k], &z_matrix[k]);
        c.eq("y = W^-t z", Some(k + 1), &y[k], &y_matrix[k]);
        prefix += &y[k];
        c.eq(
            "prefix sums of y = hitting times",
            Some(k + 1),
            &prefix,
            &x[k],
        );
    }
    c.report
}

fn kirchhoff_checks(n: usize) -> VerifyReport {
    let mut c = Checker::new(n);
    if let (Some(a), Some(b)) = (
        c.result("kirchhoff_index", None, kirchhoff_index(n)),
        c.result("kirchhoff_index_by_sum", None, kirchhoff_index_by_sum(n)),
    ) {
        c.eq("Kf closed form vs pair sum", None, &a, &b);
    }
    let g = CycleSquare::new(n).expect("n >= 5");
    let t = Rational::from_integer(tree_count(n).expect("n >= 5"));
    if let Some(det) = c.result("det(L')", None, oracle::determinant(&g.reduced_laplacian())) {
        c.eq("t(G) = det(L')", None, &t, &det);
    }
    for l in 1..n {
        let Some(tl) = c.result("merged_tree_count", Some(l), merged_tree_count(n, l)) else {
            continue;
        };
        let tl = Rational::from_integer(tl);
        if let Some(r) = c.result("effective_resistance", Some(l), effective_resistance(n, l)) {
            c.eq("r = t(G;0,l)/t(G)", Some(l), &r, &(&tl / &t));
        }
        let merged = g.merged_laplacian(l).expect("1 <= l < n");
        if let Some(det) = c.result(
            "det(merged minor)",
            Some(l),
            oracle::determinant(&merged.minor(0, 0)),
        ) {
            c.eq("t(G;0,l) = det(merged minor)", Some(l), &tl, &det);
        }
    }
    c.report
}

fn identity_checks(n_max: usize) -> VerifyReport {
    let mut rep = VerifyReport::default();
    for n in 2..=n_max as i64 {
        let mut c = Checker::new(n as usize);
        for id in [1u8, 2, 3, 5, 6, 7] {
            c.expect(
                identity_check(id, &[n]) == Ok(true),
                "Fibonacci identity",
                None,
                None,
                || format!("identity {id} fails"),
            );
        }
        rep = rep.merge(c.report);
    }
    for m in 1..=n_max as i64 {
        let mut c = Checker::new(m as usize);
        for n in 1..=m {
            c.expect(
                identity_check(4, &[m, n]) == Ok(true),
                "Fibonacci identity 4",
                Some(n as usize),
                None,
                || format!("fails at m={m} n={n}"),
            );
        }
        rep = rep.merge(c.report);
    }
    for n in 0..=n_max {
        let mut c = Checker::new(n);
        c.expect(
            convolution_identity(n),
            "convolution identity",
            None,
            None,
            || "sum F_i F_{N-i} mismatch".into(),
        );
        rep = rep.merge(c.report);
    }
    rep
}

fn sweep(n_max: usize, f: fn(usize) -> VerifyReport) -> VerifyReport {
    let parts: Vec<VerifyReport> = (MIN_N..=n_max).into_par_iter().map(f).collect();
    parts
        .into_iter()
        .fold(VerifyReport::default(), VerifyReport::merge)
}

/// Runs `suite` for every `5 <= N <= n_max`.
pub fn run_suite(suite: Suite, n_max: usize) -> Result<VerifyReport> {
    if n_max < MIN_N {
        return Err(Error::UnsupportedN(n_max));
    }
    let mut report = VerifyReport::default();
    for part in suite.parts() {
        let r = match part {
            Suite::Oracle => sweep(n_max, oracle_checks),
            Suite::Chair => sweep(n_max, chair_checks),
            Suite::Decomp => sweep(n_max, decomp_checks),
            Suite::Kirchhoff => sweep(n_max, kirchhoff_checks),
            Suite::Identities => identity_checks(n_max),
            Suite::All => unreachable!(),
        };
        report = report.merge(r);
    }
    Ok(report)
}
