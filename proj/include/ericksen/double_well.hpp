#pragma once

namespace ericksen {

/// Equilibrium degree of orientation: global minimizer of the double well, psi(s_hat) ~ 0.
inline constexpr double kSHat = 0.750025;

/// Double-well potential psi = c_dw (psi_c - psi_e) with the convex splitting
///   psi_c(s) = 63 s^2,
///   psi_e(s) = -16 s^4 + 64/3 s^3 + 57 s^2 - 0.5625.
/// Both parts are convex; psi_c is quadratic so it can be treated implicitly.
template <typename Scalar = double>
struct DoubleWell {
  Scalar c_dw = 0;

  static constexpr Scalar convex_part(Scalar s) { return 63 * s * s; }
  static constexpr Scalar expansive_part(Scalar s) {
    return ((-16 * s + Scalar(64) / 3) * s + 57) * s * s - Scalar(0.5625);
  }

  constexpr Scalar value(Scalar s) const { return c_dw * (convex_part(s) - expansive_part(s)); }
  /// c_dw psi_c'(s)
  constexpr Scalar cprime(Scalar s) const { return c_dw * 126 * s; }
  /// c_dw psi_e'(s)
  constexpr Scalar eprime(Scalar s) const { return c_dw * (((-64 * s + 64) * s + 114) * s); }
  constexpr Scalar derivative(Scalar s) const { return cprime(s) - eprime(s); }
  /// Coefficient of the implicit (linear) term: c_dw psi_c''.
  constexpr Scalar implicit_coefficient() const { return c_dw * 126; }
};

}  // namespace ericksen
