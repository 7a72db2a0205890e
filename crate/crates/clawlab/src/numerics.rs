//! Small numerical helpers shared across modules: sign convention,
//! scalar minimization, root localization, quadrature and deterministic
//! low-discrepancy point sets.

/// Sign with the `sign(0) = 0` convention used throughout.
#[inline]
pub fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of `f` on `[a, b]`.
///
/// Returns `(x_min, f(x_min))` after a fixed iteration count, so the result
/// is deterministic for a given bracket.
pub fn golden_section_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, iters: usize) -> (f64, f64) {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - INV_GOLDEN * (hi - lo);
    let mut x2 = lo + INV_GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_GOLDEN * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_GOLDEN * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Golden-section maximization; same contract as [`golden_section_min`].
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, iters: usize) -> (f64, f64) {
    let (x, neg) = golden_section_min(|u| -f(u), a, b, iters);
    (x, -neg)
}

/// Locates zeros of `g` on `[lo, hi]` by scanning `n_sub` equal subintervals
/// for sign changes and bisecting each bracketing pair.
///
/// Grid points where `g` vanishes exactly are reported directly. The
/// returned abscissae are sorted and deduplicated.
pub fn sign_change_roots<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64, n_sub: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    if !(hi > lo) {
        return roots;
    }
    let h = (hi - lo) / n_sub as f64;
    let mut x_prev = lo;
    let mut g_prev = g(lo);
    for i in 1..=n_sub {
        let x = if i == n_sub { hi } else { lo + i as f64 * h };
        let gx = g(x);
        if g_prev == 0.0 {
            roots.push(x_prev);
        } else if gx != 0.0 && g_prev.signum() != gx.signum() {
            // bisect the bracket down to float resolution
            let (mut a, mut b) = (x_prev, x);
            let mut ga = g_prev;
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                let gm = g(m);
                if gm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if ga.signum() != gm.signum() {
                    b = m;
                } else {
                    a = m;
                    ga = gm;
                }
            }
            roots.push(0.5 * (a + b));
        }
        x_prev = x;
        g_prev = gx;
    }
    if g_prev == 0.0 {
        roots.push(hi);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup();
    roots
}

/// Composite Simpson quadrature of `f` over `[a, b]` with `panels` panels
/// (`panels` must be even and >= 2). Signed: swapping `a` and `b` flips the
/// sign.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels >= 2 && panels % 2 == 0, "panels must be even and >= 2");
    if a == b {
        return 0.0;
    }
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for i in 1..panels {
        let x = a + i as f64 * h;
        acc += if i % 2 == 1 { 4.0 * f(x) } else { 2.0 * f(x) };
    }
    acc * h / 3.0
}

/// Halton low-discrepancy sequence value `index` in the given prime base.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let inv = 1.0 / base as f64;
    while index > 0 {
        f *= inv;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// Inverse of the standard normal CDF (Acklam's rational approximation,
/// relative error below 1.2e-9). Used to push Halton points onto spheres.
pub fn inverse_normal_cdf(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Deterministic quasi-uniform covering of the unit sphere in `R^dim`.
///
/// dim 1 gives {+1, -1}; dim 2 uses the golden-angle lattice on the circle;
/// dim 3 the Fibonacci sphere lattice; higher dimensions map Halton points
/// through the inverse normal CDF and normalize.
pub fn unit_sphere_points(dim: usize, n: usize) -> Vec<Vec<f64>> {
    assert!(dim >= 1);
    match dim {
        1 => vec![vec![1.0], vec![-1.0]].into_iter().take(n.max(2)).collect(),
        2 => (0..n)
            .map(|k| {
                let theta = std::f64::consts::TAU * ((k as f64 * INV_GOLDEN) % 1.0);
                vec![theta.cos(), theta.sin()]
            })
            .collect(),
        3 => (0..n)
            .map(|k| {
                let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let theta = std::f64::consts::TAU * ((k as f64 * INV_GOLDEN) % 1.0);
                vec![r * theta.cos(), r * theta.sin(), z]
            })
            .collect(),
        _ => {
            assert!(dim <= PRIMES.len(), "sphere sampling supports dim <= 8");
            let mut pts = Vec::with_capacity(n);
            let mut index = 1u64;
            while pts.len() < n {
                let mut v: Vec<f64> = (0..dim)
                    .map(|j| {
                        let u = halton(index, PRIMES[j]).clamp(1e-12, 1.0 - 1e-12);
                        inverse_normal_cdf(u)
                    })
                    .collect();
                index += 1;
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1e-9 {
                    v.iter_mut().for_each(|x| *x /= norm);
                    pts.push(v);
                }
            }
            pts
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_convention() {
        assert_eq!(sign(2.5), 1.0);
        assert_eq!(sign(-0.1), -1.0);
        assert_eq!(sign(0.0), 0.0);
        assert_eq!(sign(-0.0), 0.0);
    }

    #[test]
    fn golden_section_finds_parabola_min() {
        let (x, fx) = golden_section_min(|u| (u - 0.3) * (u - 0.3), -1.0, 1.0, 80);
        assert!((x - 0.3).abs() < 1e-10);
        assert!(fx < 1e-18);
    }

    #[test]
    fn roots_of_identity() {
        let roots = sign_change_roots(|u| u, -1.0, 1.0, 256);
        assert_eq!(roots.len(), 1);
        assert!(roots[0].abs() < 1e-12);
    }

    #[test]
    fn roots_of_cosine() {
        let roots = sign_change_roots(|u| u.cos(), 0.0, 10.0, 256);
        // pi/2, 3pi/2, 5pi/2 lie in [0, 10]
        assert_eq!(roots.len(), 3);
        for (k, r) in roots.iter().enumerate() {
            let expect = std::f64::consts::FRAC_PI_2 * (2 * k + 1) as f64;
            assert!((r - expect).abs() < 1e-9, "root {r} vs {expect}");
        }
    }

    #[test]
    fn simpson_is_signed_and_accurate() {
        let v = simpson(|x| x * x, 0.0, 1.0, 128);
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
        let w = simpson(|x| x * x, 1.0, 0.0, 128);
        assert!((v + w).abs() < 1e-15);
    }

    #[test]
    fn inverse_normal_matches_known_quantiles() {
        assert!(inverse_normal_cdf(0.5).abs() < 1e-9);
        assert!((inverse_normal_cdf(0.975) - 1.959963984540054).abs() < 1e-7);
    }

    #[test]
    fn sphere_points_have_unit_norm() {
        for dim in 1..=4 {
            for p in unit_sphere_points(dim, 32) {
                assert_eq!(p.len(), dim);
                assert!((norm(&p) - 1.0).abs() < 1e-12);
            }
        }
    }
}
