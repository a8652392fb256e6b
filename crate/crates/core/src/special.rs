//! Standard normal cdf and quantile.
//!
//! The cdf goes through `erfc`, which stays accurate far into both tails.
//! The quantile starts from Acklam's rational approximation (relative error
//! about 1e-9) and is polished with Halley steps against that cdf.

use crate::math::{erfc, exp, ln, sqrt};

const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;
const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// Φ(z).
#[inline]
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// 1 − Φ(z), computed without cancellation.
#[inline]
pub fn normal_sf(z: f64) -> f64 {
    0.5 * erfc(z * FRAC_1_SQRT_2)
}

#[inline]
pub fn normal_pdf(z: f64) -> f64 {
    exp(-0.5 * z * z) / SQRT_2PI
}

/// Φ⁻¹(p) for p in (0, 1). Returns NaN outside that interval.
pub fn normal_quantile(p: f64) -> f64 {
    if !(p > 0.0 && p < 1.0) {
        return f64::NAN;
    }
    if p <= 0.5 {
        lower_tail_quantile(p)
    } else {
        // 1 - p is exact for p >= 0.5
        -lower_tail_quantile(1.0 - p)
    }
}

/// z such that 1 − Φ(z) = q, accurate for tiny q.
pub fn normal_sf_inverse(q: f64) -> f64 {
    if !(q > 0.0 && q < 1.0) {
        return f64::NAN;
    }
    if q <= 0.5 {
        -lower_tail_quantile(q)
    } else {
        lower_tail_quantile(1.0 - q)
    }
}

fn lower_tail_quantile(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p <= 0.5);
    let mut z = acklam(p);
    for _ in 0..3 {
        let err = normal_cdf(z) - p;
        if err == 0.0 {
            break;
        }
        let u = err / normal_pdf(z);
        z -= u / (1.0 + 0.5 * z * u);
    }
    z
}

fn acklam(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.024_25;

    if p < P_LOW {
        let q = sqrt(-2.0 * ln(p));
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        // Φ(1.96) from tables
        assert!((normal_cdf(1.959_963_984_540_054) - 0.975).abs() < 1e-15);
        assert!((normal_quantile(0.975) - 1.959_963_984_540_054).abs() < 1e-13);
        assert_eq!(normal_quantile(0.5), 0.0);
    }

    #[test]
    fn deep_tail_quantile_round_trips() {
        for &p in &[1e-300, 1e-200, 1e-50, 1e-12, 1e-5, 0.02, 0.3] {
            let z = normal_quantile(p);
            let back = normal_cdf(z);
            assert!(((back - p) / p).abs() < 1e-13, "p={p} back={back}");
            let zu = normal_sf_inverse(p);
            assert!(((normal_sf(zu) - p) / p).abs() < 1e-13);
        }
    }

    #[test]
    fn out_of_range_is_nan() {
        assert!(normal_quantile(0.0).is_nan());
        assert!(normal_quantile(1.0).is_nan());
        assert!(normal_quantile(f64::NAN).is_nan());
    }
}
