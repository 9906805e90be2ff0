use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use super::{sign_pow, Integer};

/// Indices below this are served from a shared memo table; larger ones use
/// fast doubling so that a single huge request does not pin gigabytes of
/// intermediate values.
const TABLE_LIMIT: u64 = 1 << 14;

fn table() -> &'static RwLock<Vec<Integer>> {
    static TABLE: OnceLock<RwLock<Vec<Integer>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Integer::zero(), Integer::one()]))
}

fn fib_nonneg(n: u64) -> Integer {
    if n >= TABLE_LIMIT {
        return fib_pair(n).0;
    }
    let idx = n as usize;
    {
        let t = table().read().expect("fibonacci table poisoned");
        if let Some(v) = t.get(idx) {
            return v.clone();
        }
    }
    let mut t = table().write().expect("fibonacci table poisoned");
    // Another writer may have extended the table in the meantime.
    while t.len() <= idx {
        let k = t.len();
        let next = &t[k - 1] + &t[k - 2];
        t.push(next);
    }
    t[idx].clone()
}

/// `(F_n, F_{n+1})` by fast doubling.
pub fn fib_pair(n: u64) -> (Integer, Integer) {
    let mut a = Integer::zero();
    let mut b = Integer::one();
    for bit in (0..64 - n.leading_zeros()).rev() {
        // F(2k) = F(k)(2F(k+1) - F(k)), F(2k+1) = F(k)^2 + F(k+1)^2
        let two_b = &b << 1;
        let c = &a * (&two_b - &a);
        let d = &a * &a + &b * &b;
        if (n >> bit) & 1 == 0 {
            a = c;
            b = d;
        } else {
            b = &c + &d;
            a = d;
        }
    }
    (a, b)
}

/// The `n`-th Fibonacci number, extended to negative indices by
/// `F_{-n} = (-1)^{n+1} F_n`.
pub fn fib(n: i64) -> Integer {
    let v = fib_nonneg(n.unsigned_abs());
    if n < 0 && sign_pow(n.unsigned_abs() as i64 + 1) < 0 {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(fib(10), Integer::from(55));
        assert_eq!(fib(0), Integer::from(0));
        assert_eq!(fib(1), Integer::from(1));
        assert_eq!(fib(-3), Integer::from(2));
        assert_eq!(fib(-2), Integer::from(-1));
        assert_eq!(fib(-1), Integer::from(1));
    }

    #[test]
    fn recurrence_holds_both_directions() {
        for n in -500i64..=500 {
            assert_eq!(fib(n), fib(n - 1) + fib(n - 2), "n = {n}");
        }
    }

    #[test]
    fn doubling_matches_table() {
        for n in [0u64, 1, 2, 3, 50, 93, 94, 1000, 4095] {
            assert_eq!(fib_pair(n).0, fib_nonneg(n));
            assert_eq!(fib_pair(n).1, fib_nonneg(n + 1));
        }
        // Crosses from the table into fast doubling.
        let above = fib_nonneg(TABLE_LIMIT);
        assert_eq!(
            above,
            fib_nonneg(TABLE_LIMIT - 1) + fib_nonneg(TABLE_LIMIT - 2)
        );
    }

    #[test]
    fn f1000_is_exact() {
        let s = fib(1000).to_string();
        assert_eq!(s.len(), 209);
        assert_eq!(
            s,
            "43466557686937456435688527675040625802564660517371780402481729089536555417949051890403879840079255169295922593080322634775209689623239873322471161642996440906533187938298969649928516003704476137795166849228875"
        );
    }

    #[test]
    fn concurrent_extension_agrees() {
        let handles: Vec<_> = (0..8)
            .map(|k| std::thread::spawn(move || fib(2000 + 37 * k)))
            .collect();
        for (k, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), fib_pair(2000 + 37 * k as u64).0);
        }
    }
}
