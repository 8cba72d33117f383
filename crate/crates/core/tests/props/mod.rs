//! Randomised invariants over small positive-definite lattices. Each check
//! runs `cases` instances and reports the first counterexample.

use std::collections::BTreeMap;

use latgenus::enumerate::{coset_minima, count_short_vectors, theta_coefficients, visit_short_vectors, EnumConfig};
use latgenus::exact::syntax::format_vector;
use latgenus::exact::{hnf_rows, isqrt};
use latgenus::genus::{is_extremal, min_set, s_census};
use latgenus::lorentz::{adjunction_genus, LorentzClass};
use latgenus::{Int, IntMatrix, LatticeHandle, ScaledVector};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn finish(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

/// Square integer matrix of size 2..=4 with nonzero determinant.
fn generator_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=4)
        .prop_flat_map(|n| vec(vec(-2i64..=2, n), n))
        .prop_filter("singular", |b| IntMatrix::from_i64(b).determinant() != Int::from(0))
}

/// Elementary row operations `(i, j, c)`: add `c` times row `j` to row `i`,
/// or swap when `c = 0`.
fn row_ops() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    vec((0usize..8, 0usize..8, -2i64..=2), 0..10)
}

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if c == 0 {
            u.swap(i, j);
        } else if i != j {
            for k in 0..n {
                u[i][k] += c * u[j][k];
            }
        }
    }
    IntMatrix::from_i64(&u)
}

fn gram_of(b: &[Vec<i64>]) -> IntMatrix {
    let m = IntMatrix::from_i64(b);
    m.mul(&m.transpose())
}

fn lattice(b: &[Vec<i64>]) -> Result<LatticeHandle, TestCaseError> {
    LatticeHandle::from_gram(gram_of(b)).map_err(fail)
}

fn max_diag(g: &IntMatrix) -> i64 {
    (0..g.rows()).map(|i| i64::try_from(&g[(i, i)]).unwrap()).max().unwrap()
}

fn sorted(vs: &[ScaledVector]) -> Vec<String> {
    let mut s: Vec<String> = vs.iter().map(format_vector).collect();
    s.sort();
    s
}

/// Short-vector counts of `G` and `U G U^T` agree.
pub fn basis_invariance(cases: u32) -> Result<(), String> {
    let cfg = EnumConfig::single_threaded();
    finish(runner(cases).run(&(generator_matrix(), row_ops()), |(b, ops)| {
        let g = gram_of(&b);
        let u = unimodular(b.len(), &ops);
        let g2 = u.mul(&g).mul(&u.transpose());
        let bound = max_diag(&g).min(12);
        let t1 = theta_coefficients(&LatticeHandle::from_gram(g).map_err(fail)?, bound, &cfg).map_err(fail)?;
        let t2 = theta_coefficients(&LatticeHandle::from_gram(g2).map_err(fail)?, bound, &cfg).map_err(fail)?;
        prop_assert_eq!(t1, t2);
        Ok(())
    }))
}

/// The determinant of the Gram matrix is a basis invariant.
pub fn determinant_invariance(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(generator_matrix(), row_ops()), |(b, ops)| {
        let g = gram_of(&b);
        let u = unimodular(b.len(), &ops);
        prop_assert_eq!(u.mul(&g).mul(&u.transpose()).determinant(), g.determinant());
        Ok(())
    }))
}

/// A full enumeration visits `x` and `-x` equally often, and halving by
/// negation halves every count.
pub fn negation_symmetry(cases: u32) -> Result<(), String> {
    let cfg = EnumConfig::single_threaded();
    finish(runner(cases).run(&generator_matrix(), |b| {
        let l = lattice(&b)?;
        let bound = max_diag(l.gram()).min(10);
        let mut seen: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        visit_short_vectors(&l, bound, false, |x, n| {
            seen.insert(x.to_vec(), n);
            true
        })
        .map_err(fail)?;
        for (x, n) in &seen {
            let neg: Vec<i64> = x.iter().map(|v| -v).collect();
            prop_assert_eq!(seen.get(&neg), Some(n));
        }
        let full = count_short_vectors(&l, bound, false, &cfg).map_err(fail)?;
        let half = count_short_vectors(&l, bound, true, &cfg).map_err(fail)?;
        for (k, c) in &full {
            prop_assert_eq!(*c, 2 * half[k]);
        }
        Ok(())
    }))
}

/// Enumeration agrees with a brute-force scan of the bounding box
/// `|x_i| <= sqrt(bound (G^-1)_ii)`.
pub fn box_oracle(cases: u32) -> Result<(), String> {
    let cfg = EnumConfig::single_threaded();
    finish(runner(cases).run(&(generator_matrix(), 1i64..=6), |(b, bound)| {
        let g = gram_of(&b);
        let n = g.rows();
        let inv = g.rational_inverse().map_err(fail)?;
        let radius: Vec<i64> = (0..n)
            .map(|i| {
                let r = (&inv[i][i] * Int::from(bound)).floor().to_integer();
                i64::try_from(&isqrt(&r)).unwrap()
            })
            .collect();
        let gi = g.to_i64().unwrap();
        let mut brute = vec![0u64; bound as usize + 1];
        let mut x = radius.iter().map(|r| -r).collect::<Vec<_>>();
        loop {
            let norm: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * gi[i][j] * x[j]).sum::<i64>()).sum();
            if norm > 0 && norm <= bound {
                brute[norm as usize] += 1;
            }
            let mut k = 0;
            while k < n && x[k] == radius[k] {
                x[k] = -radius[k];
                k += 1;
            }
            if k == n {
                break;
            }
            x[k] += 1;
        }
        let l = LatticeHandle::from_gram(g).map_err(fail)?;
        let counts = count_short_vectors(&l, bound, false, &cfg).map_err(fail)?;
        for k in 1..=bound {
            prop_assert_eq!(counts[&k], brute[k as usize], "norm {}", k);
        }
        Ok(())
    }))
}

/// `Min(t + 2L) = Min(t + 2v + 2L)`.
pub fn translation_invariance(cases: u32) -> Result<(), String> {
    let cfg = EnumConfig::single_threaded();
    let input = generator_matrix().prop_flat_map(|b| {
        let n = b.len();
        (Just(b), vec(-3i64..=3, n), vec(-3i64..=3, n))
    });
    finish(runner(cases).run(&input, |(b, t, v)| {
        let l = lattice(&b)?;
        let two_l = l.scaled(2).map_err(fail)?;
        let t = l.point_i64(&t);
        let shifted = t.add(&l.point_i64(&v).scale(&Int::from(2))).map_err(fail)?;
        let a = coset_minima(&t, &two_l, &cfg).map_err(fail)?;
        let c = coset_minima(&shifted, &two_l, &cfg).map_err(fail)?;
        prop_assert_eq!(&a.min_norm, &c.min_norm);
        prop_assert_eq!(sorted(&a.vectors), sorted(&c.vectors));
        Ok(())
    }))
}

/// `|S_i^w| = |S_{w^2 - i}^w|` via `u -> -w - u`.
pub fn s_symmetry(cases: u32) -> Result<(), String> {
    let cfg = EnumConfig::single_threaded();
    let input = generator_matrix().prop_flat_map(|b| {
        let n = b.len();
        (Just(b), vec(-2i64..=2, n))
    });
    finish(runner(cases).run(&input, |(b, w)| {
        let l = lattice(&b)?;
        let w = l.point_i64(&w);
        let n = l.norm(&w).map_err(fail)?.to_integer();
        let n = i64::try_from(&n).unwrap();
        prop_assume!(n <= 24);
        let s = s_census(&l, &w, n, &cfg).map_err(fail)?;
        for i in 0..=n {
            prop_assert_eq!(s.get(&i).copied().unwrap_or(0), s.get(&(n - i)).copied().unwrap_or(0), "i = {}", i);
        }
        Ok(())
    }))
}

/// `w` passes the extremality test iff it is a minimal vector of `w + 2L`.
pub fn extremality_matches_coset_minima(cases: u32) -> Result<(), String> {
    let cfg = EnumConfig::single_threaded();
    let input = generator_matrix().prop_flat_map(|b| {
        let n = b.len();
        (Just(b), vec(-2i64..=2, n))
    });
    finish(runner(cases).run(&input, |(b, w)| {
        let l = lattice(&b)?;
        let w = l.point_i64(&w);
        let ext = is_extremal(&l, &w, &cfg).map_err(fail)?.is_valid();
        let two_l = l.scaled(2).map_err(fail)?;
        let m = coset_minima(&w, &two_l, &cfg).map_err(fail)?;
        let minimal = m.min_norm == l.norm(&w).map_err(fail)?;
        prop_assert_eq!(ext, minimal);
        prop_assert_eq!(min_set(&l, &w, &cfg).is_ok(), minimal);
        Ok(())
    }))
}

/// HNF is idempotent and invariant under unimodular row operations.
pub fn hnf_idempotence(cases: u32) -> Result<(), String> {
    let input = (1usize..=4, 1usize..=5).prop_flat_map(|(m, n)| (vec(vec(-6i64..=6, n), m), row_ops()));
    finish(runner(cases).run(&input, |(rows, ops)| {
        let big: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        let h = hnf_rows(&big);
        prop_assert_eq!(hnf_rows(&h), h.clone());
        let u = unimodular(rows.len(), &ops);
        let moved = u.mul(&IntMatrix::from_rows(big)).to_rows();
        prop_assert_eq!(hnf_rows(&moved), h);
        Ok(())
    }))
}

/// Counts and coset minima do not depend on the thread count.
pub fn thread_determinism(cases: u32) -> Result<(), String> {
    let one = EnumConfig::single_threaded();
    let many = EnumConfig {
        threads: 4,
        ..EnumConfig::default()
    };
    let input = generator_matrix().prop_flat_map(|b| {
        let n = b.len();
        (Just(b), vec(-3i64..=3, n))
    });
    finish(runner(cases).run(&input, |(b, t)| {
        let l = lattice(&b)?;
        let bound = max_diag(l.gram()).min(12);
        prop_assert_eq!(
            theta_coefficients(&l, bound, &one).map_err(fail)?,
            theta_coefficients(&l, bound, &many).map_err(fail)?
        );
        let two_l = l.scaled(2).map_err(fail)?;
        let t = l.point_i64(&t);
        let a = coset_minima(&t, &two_l, &one).map_err(fail)?;
        let c = coset_minima(&t, &two_l, &many).map_err(fail)?;
        prop_assert_eq!(a.vectors.iter().map(format_vector).collect::<Vec<_>>(), c.vectors.iter().map(format_vector).collect::<Vec<_>>());
        Ok(())
    }))
}

/// The adjunction genus of `(a|b)` ignores the order of the `b_i`.
pub fn adjunction_permutation_invariance(cases: u32) -> Result<(), String> {
    let input = (1i64..=30, vec(0i64..=10, 1..12), any::<u64>());
    finish(runner(cases).run(&input, |(a, b, seed)| {
        let mut perm = b.clone();
        let len = perm.len();
        let mut s = seed;
        for i in (1..len).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let x = adjunction_genus(&LorentzClass::from_i64(a, &b));
        let y = adjunction_genus(&LorentzClass::from_i64(a, &perm));
        prop_assert_eq!(x, y);
        Ok(())
    }))
}
