//! Oracles shared by the integration suites.
//!
//! Everything here is computed by a route independent of the library
//! internals: associated Legendre recurrences for the harmonic basis on the
//! two-sphere, exact half-integer gamma arithmetic plus symbolic
//! differentiation for the Rodrigues form, and seeded `StdRng` points so
//! reruns see the same samples.

#![allow(dead_code)]

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spheresum::SpherePoint;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Uniform point on S^dim by rejection from the unit ball.
pub fn random_point(rng: &mut StdRng, dim: usize) -> SpherePoint {
    loop {
        let v: Vec<f64> = (0..=dim).map(|_| rng.gen_range(-1.0_f64..1.0)).collect();
        let norm2: f64 = v.iter().map(|c| c * c).sum();
        if norm2 > 1e-3 && norm2 <= 1.0 {
            return SpherePoint::new(v).expect("nonzero vector normalizes");
        }
    }
}

/// Gamma(twice/2) for twice >= 1, exact down the recursion to Gamma(1) = 1
/// or Gamma(1/2) = sqrt(pi).
pub fn gamma_half(mut twice: u64) -> f64 {
    assert!(twice >= 1);
    let mut acc = 1.0;
    while twice > 2 {
        twice -= 2;
        acc *= twice as f64 / 2.0;
    }
    if twice == 1 {
        acc * PI.sqrt()
    } else {
        acc
    }
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn polyval(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

fn add_coeff(poly: &mut Vec<f64>, power: usize, c: f64) {
    if poly.len() <= power {
        poly.resize(power + 1, 0.0);
    }
    poly[power] += c;
}

/// The Rodrigues-form value with prefactor
/// (-2)^k Gamma(k+nu) Gamma(k+2nu) / (Gamma(nu) Gamma(2(k+nu))),
/// for 2nu a positive integer.
///
/// The k-th derivative of (1-t^2)^{k+nu-1/2} is carried symbolically as
/// sum_j q_j(t) (1-t^2)^{k+nu-1/2-j} with polynomial q_j; multiplying by the
/// (1-t^2)^{-(nu-1/2)} front factor leaves integer powers (1-t^2)^{k-j}, so
/// the evaluation never touches fractional exponents.
pub fn rodrigues_display(two_nu: u64, k: usize, t: f64) -> f64 {
    let p = k as f64 + (two_nu as f64 - 1.0) / 2.0;
    let mut terms: Vec<Vec<f64>> = vec![vec![1.0]];
    for _ in 0..k {
        let mut next: Vec<Vec<f64>> = vec![Vec::new(); terms.len() + 1];
        for (j, q) in terms.iter().enumerate() {
            for (i, &c) in q.iter().enumerate().skip(1) {
                add_coeff(&mut next[j], i - 1, c * i as f64);
            }
            for (i, &c) in q.iter().enumerate() {
                add_coeff(&mut next[j + 1], i + 1, -2.0 * (p - j as f64) * c);
            }
        }
        terms = next;
    }
    let base = 1.0 - t * t;
    let derivative_scaled: f64 = terms
        .iter()
        .enumerate()
        .map(|(j, q)| polyval(q, t) * base.powi((k - j) as i32))
        .sum();
    let k2 = 2 * k as u64;
    let prefactor = (-2.0_f64).powi(k as i32) * gamma_half(k2 + two_nu)
        / gamma_half(two_nu)
        * (gamma_half(k2 + 2 * two_nu) / gamma_half(2 * k2 + 2 * two_nu));
    prefactor * derivative_scaled
}

/// Associated Legendre P_l^m with the Condon-Shortley sign, by the
/// diagonal-then-upward recurrence; |t| <= 1.
fn assoc_legendre(l: usize, m: usize, t: f64) -> f64 {
    let s = (1.0 - t * t).max(0.0).sqrt();
    let mut pmm = 1.0;
    for i in 1..=m {
        pmm *= -((2 * i - 1) as f64) * s;
    }
    if l == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut cur = t * (2 * m + 1) as f64 * pmm;
    for ll in (m + 2)..=l {
        let next =
            (t * (2 * ll - 1) as f64 * cur - (ll + m - 1) as f64 * prev) / (ll - m) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// (l-m)!/(l+m)! without large intermediates.
fn factorial_ratio(l: usize, m: usize) -> f64 {
    let mut r = 1.0;
    for i in (l - m + 1)..=(l + m) {
        r /= i as f64;
    }
    r
}

/// The 2l+1 real orthonormal spherical harmonics of degree l on S^2,
/// ordered m = -l..l: sine branch, zonal, cosine branch.
pub fn real_harmonics(l: usize, point: &SpherePoint) -> Vec<f64> {
    let c = point.coords();
    assert_eq!(c.len(), 3, "harmonic basis is for the two-sphere");
    let phi = c[1].atan2(c[0]);
    let ct = c[2].clamp(-1.0, 1.0);
    let mut out = Vec::with_capacity(2 * l + 1);
    for m in -(l as i64)..=(l as i64) {
        let ma = m.unsigned_abs() as usize;
        let norm =
            ((2 * l + 1) as f64 / (4.0 * PI) * factorial_ratio(l, ma)).sqrt();
        let plm = assoc_legendre(l, ma, ct);
        let v = match m {
            0 => norm * plm,
            _ if m > 0 => 2.0_f64.sqrt() * norm * plm * (ma as f64 * phi).cos(),
            _ => 2.0_f64.sqrt() * norm * plm * (ma as f64 * phi).sin(),
        };
        out.push(v);
    }
    out
}
