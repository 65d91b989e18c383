#pragma once

namespace mbi {
namespace constants {

// Frozen numerical constants used across the library. Every value here is
// reproducible from a defining integral or root; tests/test_electrostatics.cpp
// and tests/test_aux_function.cpp recompute each one independently and fail
// if a frozen value drifts from its definition.

/// Sommerfeld fine structure constant (CODATA 2018).
inline constexpr double kAlpha = 0.0072973525693;

/// int_0^inf dx / sqrt(1 + x^4) = Gamma(1/4)^2 / (4 sqrt(pi)).
inline constexpr double kBornTailIntegral = 1.8540746773013719;

/// int_{1/2}^1 xi^4 (1-xi)^4 / (1 - 2 xi (1-xi))^2 dxi
/// (coefficient of the 5th-power term of the small-separation series).
inline constexpr double kSeriesC5 = 2.7378443629784419e-3;

/// int_{1/2}^1 [xi^4 (1-xi)^4 / (1 - 2 xi (1-xi))^2]^2 dxi
/// (enters the 9th-power series term with factor 3/4).
inline constexpr double kSeriesG2 = 3.0805987941987136e-5;

/// -lim_{z->0} U(z)/z = (3/2) int_0^inf (1 - t^2/sqrt(1+t^4)) dt
///                    = (3/2) Gamma(3/4)^2 / sqrt(pi).
inline constexpr double kUSlope = 1.2708196271909686;

/// The zero of U: U(zeta) changes sign exactly once on the scanned range;
/// frozen from a bisection run at 1e-12.
inline constexpr double kUZero = 1.5267454222017262;

/// Born's aether constant fixed by alpha * |A_Born(0)| = 3/2,
/// i.e. beta_Born = (2/3) alpha * kBornTailIntegral (at kAlpha).
inline constexpr double kBetaBorn = 9.019891073386157e-3;

/// Ground-state first-order energy shift delta E_0 at beta = kBetaBorn,
/// alpha = kAlpha: 4 a^2 int_0^inf t e^{-2t} U(a*beta/t) dt. Regression value.
inline constexpr double kDeltaE0AtBetaBorn = -8.922801694734425e-9;

/// beta_Born for arbitrary alpha.
inline constexpr double beta_born(double alpha) {
    return (2.0 / 3.0) * alpha * kBornTailIntegral;
}

}  // namespace constants
}  // namespace mbi
