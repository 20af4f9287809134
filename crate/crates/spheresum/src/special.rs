//! Gegenbauer polynomials, Laplace-Beltrami eigenvalues, and harmonic-space
//! multiplicities on S^N.
//!
//! Eigenvalues are lambda_k = k(k+N-1) and the degree-k eigenspace has
//! dimension a_k = (2k+N-1)(k+N-2)! / (k!(N-1)!). Gegenbauer polynomials
//! C_k^nu are evaluated by the standard three-term recurrence in the
//! convention with C_k^nu(1) = C(k+2nu-1, k); at nu = 1/2 they are the
//! Legendre polynomials.

use crate::error::{Error, Result};

/// Degree and superscript of a Gegenbauer polynomial C_k^nu.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerOrder {
    pub nu: f64,
    pub k: usize,
}

impl GegenbauerOrder {
    pub fn new(nu: f64, k: usize) -> Result<Self> {
        if !(nu > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "Gegenbauer parameter nu must be positive, got {nu}"
            )));
        }
        Ok(Self { nu, k })
    }

    /// The parameter used by the sphere kernels: nu = (N-1)/2.
    pub fn for_sphere(dim: usize, k: usize) -> Result<Self> {
        Self::new((dim as f64 - 1.0) / 2.0, k)
    }
}

/// One spectral level of the Laplace-Beltrami operator on S^N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLevel {
    pub k: usize,
    pub dim: usize,
    pub lambda: f64,
    pub mult: u64,
}

impl SpectralLevel {
    pub fn new(k: usize, dim: usize) -> Result<Self> {
        Ok(Self {
            k,
            dim,
            lambda: eigenvalue(k, dim),
            mult: multiplicity(k, dim)?,
        })
    }
}

/// Eigenvalue lambda_k = k(k+N-1) of the degree-k harmonics on S^N.
pub fn eigenvalue(k: usize, dim: usize) -> f64 {
    debug_assert!(dim >= 2);
    (k as u128 * (k + dim - 1) as u128) as f64
}

/// Binomial coefficient in exact u128 arithmetic.
fn binomial_u128(n: u128, k: u128) -> Result<u128> {
    let k = k.min(n - k.min(n));
    let k = if 2 * k > n { n - k } else { k };
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc * (n-k+i) stays divisible by i at every step
        acc = acc
            .checked_mul(n - k + i)
            .ok_or_else(|| Error::Overflow(format!("C({n}, {k})")))?
            / i;
    }
    Ok(acc)
}

/// Dimension a_k of the space of degree-k spherical harmonics on S^N:
/// 1 for k = 0, else (2k+N-1) C(k+N-2, k) / (N-1).
pub fn multiplicity(k: usize, dim: usize) -> Result<u64> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!(
            "sphere dimension must be >= 2, got {dim}"
        )));
    }
    if k == 0 {
        return Ok(1);
    }
    let n = dim as u128;
    let c = binomial_u128(k as u128 + n - 2, k as u128)?;
    let num = (2 * k as u128 + n - 1)
        .checked_mul(c)
        .ok_or_else(|| Error::Overflow(format!("multiplicity(k={k}, N={dim})")))?;
    // exact: (N-1) divides (2k+N-1) C(k+N-2, k)
    let a = num / (n - 1);
    u64::try_from(a).map_err(|_| Error::Overflow(format!("multiplicity(k={k}, N={dim})")))
}

/// Surface area omega_N = 2 pi^{(N+1)/2} / Gamma((N+1)/2) of S^N.
pub fn surface_area(dim: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let m = dim + 1;
    // Gamma(m/2) by exact recursion: integer or half-integer argument
    let gamma_half = if m % 2 == 0 {
        let mut g = 1.0;
        for i in 1..(m / 2) {
            g *= i as f64;
        }
        g
    } else {
        // Gamma(1/2) = sqrt(pi), Gamma(x+1) = x Gamma(x)
        let mut g = pi.sqrt();
        let mut x = 0.5;
        while x < m as f64 / 2.0 - 0.25 {
            g *= x;
            x += 1.0;
        }
        g
    };
    2.0 * pi.powf(m as f64 / 2.0) / gamma_half
}

/// Gegenbauer value C_k^nu(1) = C(k+2nu-1, k), valid for 2nu-1 a nonnegative integer
/// (the sphere case 2nu-1 = N-2); computed as a product ratio in f64.
pub fn gegenbauer_at_one(nu: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 1..=k {
        acc *= (i as f64 + 2.0 * nu - 1.0) / i as f64;
    }
    acc
}

/// C_k^nu(t) by the three-term recurrence
/// C_0 = 1, C_1 = 2 nu t, k C_k = 2(k+nu-1) t C_{k-1} - (k+2nu-2) C_{k-2}.
pub fn gegenbauer_eval(order: GegenbauerOrder, t: f64) -> Result<f64> {
    check_t(t)?;
    let GegenbauerOrder { nu, k } = order;
    if k == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut curr = 2.0 * nu * t;
    for j in 2..=k {
        let jf = j as f64;
        let next = (2.0 * (jf + nu - 1.0) * t * curr - (jf + 2.0 * nu - 2.0) * prev) / jf;
        prev = curr;
        curr = next;
    }
    Ok(curr)
}

/// All of C_0^nu(t) .. C_kmax^nu(t) in one recurrence pass.
pub fn gegenbauer_eval_all(nu: f64, kmax: usize, t: f64) -> Result<Vec<f64>> {
    check_t(t)?;
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(1.0);
    if kmax == 0 {
        return Ok(out);
    }
    out.push(2.0 * nu * t);
    for j in 2..=kmax {
        let jf = j as f64;
        let next = (2.0 * (jf + nu - 1.0) * t * out[j - 1] - (jf + 2.0 * nu - 2.0) * out[j - 2]) / jf;
        out.push(next);
    }
    Ok(out)
}

fn check_t(t: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "Gegenbauer argument must lie in [-1, 1], got {t}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn eigenvalues_pinned() {
        assert_eq!(eigenvalue(0, 2), 0.0);
        assert_eq!(eigenvalue(0, 5), 0.0);
        assert_eq!(eigenvalue(3, 2), 12.0);
        assert_eq!(eigenvalue(1, 3), 3.0);
        for dim in 2..=4 {
            for k in 0..100 {
                assert!(eigenvalue(k + 1, dim) > eigenvalue(k, dim));
            }
        }
    }

    #[test]
    fn multiplicity_pinned() {
        for dim in 2..=5 {
            assert_eq!(multiplicity(0, dim).unwrap(), 1);
            assert_eq!(multiplicity(1, dim).unwrap(), dim as u64 + 1);
        }
        assert_eq!(multiplicity(2, 2).unwrap(), 5);
        for k in 0..=100usize {
            assert_eq!(multiplicity(k, 2).unwrap(), 2 * k as u64 + 1);
        }
        // S^3 harmonics have dimension (k+1)^2
        for k in 0..=50usize {
            assert_eq!(multiplicity(k, 3).unwrap(), ((k + 1) * (k + 1)) as u64);
        }
        // stays exact at the top of the supported range
        assert!(multiplicity(10_000, 4).is_ok());
    }

    #[test]
    fn multiplicity_matches_harmonic_polynomial_dimension() {
        // rank-nullity count: harmonics of degree k in d = N+1 variables are the
        // kernel of the Laplacian from degree-k to degree-(k-2) monomials
        fn monomials(d: usize, k: usize) -> Vec<Vec<usize>> {
            if d == 1 {
                return vec![vec![k]];
            }
            let mut out = Vec::new();
            for first in 0..=k {
                for mut rest in monomials(d - 1, k - first) {
                    let mut m = vec![first];
                    m.append(&mut rest);
                    out.push(m);
                }
            }
            out
        }
        fn rank(mut m: Vec<Vec<f64>>) -> usize {
            let rows = m.len();
            if rows == 0 {
                return 0;
            }
            let cols = m[0].len();
            let mut r = 0;
            for c in 0..cols {
                let pivot = (r..rows).max_by(|&a, &b| {
                    m[a][c].abs().partial_cmp(&m[b][c].abs()).unwrap()
                });
                let Some(p) = pivot else { break };
                if m[p][c].abs() < 1e-9 {
                    continue;
                }
                m.swap(r, p);
                for i in 0..rows {
                    if i != r && m[i][c].abs() > 0.0 {
                        let f = m[i][c] / m[r][c];
                        for j in c..cols {
                            m[i][j] -= f * m[r][j];
                        }
                    }
                }
                r += 1;
                if r == rows {
                    break;
                }
            }
            r
        }
        for dim in 2..=3usize {
            let d = dim + 1;
            for k in 0..=4usize {
                let basis = monomials(d, k);
                let expect = basis.len() as i64
                    - if k >= 2 {
                        let target = monomials(d, k - 2);
                        let index: std::collections::HashMap<_, _> = target
                            .iter()
                            .enumerate()
                            .map(|(i, m)| (m.clone(), i))
                            .collect();
                        let mut rows = vec![vec![0.0; target.len()]; basis.len()];
                        for (i, mono) in basis.iter().enumerate() {
                            for v in 0..d {
                                if mono[v] >= 2 {
                                    let mut img = mono.clone();
                                    img[v] -= 2;
                                    rows[i][index[&img]] +=
                                        (mono[v] * (mono[v] - 1)) as f64;
                                }
                            }
                        }
                        rank(rows) as i64
                    } else {
                        0
                    };
                assert_eq!(multiplicity(k, dim).unwrap() as i64, expect);
            }
        }
    }

    #[test]
    fn surface_areas_pinned() {
        assert!((surface_area(2) - 4.0 * PI).abs() < 1e-12);
        assert!((surface_area(3) - 2.0 * PI * PI).abs() < 1e-12);
        assert!((surface_area(4) - 8.0 * PI * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn gegenbauer_pinned_values() {
        for nu in [0.5, 1.0, 1.5, 2.25] {
            assert_eq!(
                gegenbauer_eval(GegenbauerOrder::new(nu, 0).unwrap(), 0.3).unwrap(),
                1.0
            );
        }
        // k = 1 reduces to 2 nu t
        let v = gegenbauer_eval(GegenbauerOrder::new(1.0, 1).unwrap(), 0.5).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        // Legendre P_2(0) = -1/2
        let v = gegenbauer_eval(GegenbauerOrder::new(0.5, 2).unwrap(), 0.0).unwrap();
        assert!((v + 0.5).abs() < 1e-15);
        assert_eq!(
            gegenbauer_eval_all(0.5, 2, 1.0).unwrap(),
            vec![1.0, 1.0, 1.0]
        );
        assert_eq!(gegenbauer_eval_all(0.5, 0, -0.7).unwrap(), vec![1.0]);
    }

    #[test]
    fn gegenbauer_domain_checked() {
        assert!(gegenbauer_eval(GegenbauerOrder::new(0.5, 3).unwrap(), 1.0001).is_err());
        assert!(gegenbauer_eval_all(1.0, 5, -1.2).is_err());
        assert!(GegenbauerOrder::new(0.0, 1).is_err());
    }

    #[test]
    fn batched_matches_single() {
        let mut u = 0.29_f64;
        for _ in 0..100 {
            u = (u * 769.0 + 0.511).fract();
            let k = (u * 51.0) as usize;
            let t = (u * 431.0).fract() * 2.0 - 1.0;
            for nu in [0.5, 1.0, 1.5] {
                let all = gegenbauer_eval_all(nu, k, t).unwrap();
                let one = gegenbauer_eval(GegenbauerOrder::new(nu, k).unwrap(), t).unwrap();
                assert!((all[k] - one).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn parity() {
        let mut u = 0.61_f64;
        for _ in 0..100 {
            u = (u * 547.0 + 0.301).fract();
            let k = (u * 51.0) as usize;
            let t = (u * 389.0).fract();
            for nu in [0.5, 1.0, 1.5] {
                let plus = gegenbauer_eval(GegenbauerOrder::new(nu, k).unwrap(), t).unwrap();
                let minus = gegenbauer_eval(GegenbauerOrder::new(nu, k).unwrap(), -t).unwrap();
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                assert!((minus - sign * plus).abs() < 1e-11 * plus.abs().max(1.0));
            }
        }
    }

    #[test]
    fn value_at_one_matches_recurrence() {
        for dim in 2..=4usize {
            let nu = (dim as f64 - 1.0) / 2.0;
            for k in 0..=40usize {
                let direct = gegenbauer_eval(GegenbauerOrder::new(nu, k).unwrap(), 1.0).unwrap();
                let closed = gegenbauer_at_one(nu, k);
                assert!(
                    (direct - closed).abs() < 1e-10 * closed.abs(),
                    "k={k} nu={nu}: {direct} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn spectral_level_bundles_both_formulas() {
        let lvl = SpectralLevel::new(3, 2).unwrap();
        assert_eq!(lvl.lambda, 12.0);
        assert_eq!(lvl.mult, 7);
    }
}
