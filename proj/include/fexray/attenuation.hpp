#pragma once

#include <utility>
#include <vector>

namespace fexray {

/// Linear attenuation coefficients of bone (cm^-1).
inline constexpr double kCompactBoneMu = 2.251;
inline constexpr double kCancellousBoneMu = 0.716;

enum class AttenuationKind {
  identity,  ///< mu = rho
  linear,    ///< mu = kappa * rho
  lookup,    ///< piecewise-linear table rho -> mu, clamped at the ends
};

struct AttenuationModel {
  AttenuationKind kind = AttenuationKind::identity;
  double kappa = 1.0;                              ///< cm^2/g, linear only
  std::vector<std::pair<double, double>> table;    ///< (rho, mu), lookup only
  double intensity_in = 1.0;

  static AttenuationModel identity(double intensity_in = 1.0);
  static AttenuationModel linear(double kappa, double intensity_in = 1.0);
  static AttenuationModel lookup(std::vector<std::pair<double, double>> table,
                                 double intensity_in = 1.0);

  /// Throws ValidationError: kappa < 0, intensity_in <= 0, or a table with
  /// fewer than two entries, non-increasing rho, or negative mu.
  void validate() const;

  /// Per-sample coefficient; the lookup variant is applied inside the ray sum.
  double mu(double rho) const;

  /// True when mu must be evaluated per sample rather than after summation.
  bool per_sample() const noexcept { return kind == AttenuationKind::lookup; }

  /// mu-integral from a ray's projected density and its per-sample mu sum.
  double mu_integral(double projected_density, double sampled_mu_integral) const;
};

/// I_in * exp(-mu_integral).
double attenuate(double mu_integral, const AttenuationModel& model);

}  // namespace fexray
