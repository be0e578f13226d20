#include "fexray/quadrature.hpp"

#include <array>
#include <vector>

namespace fexray {

namespace {

constexpr std::array<double, 4> kGaussX{-0.8611363115940526, -0.3399810435848563,
                                        0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGaussW{0.3478548451374538, 0.6521451548625461,
                                        0.6521451548625461, 0.3478548451374538};

std::vector<QuadraturePoint> make_rule() {
  std::vector<QuadraturePoint> rule;
  rule.reserve(64);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        const double u = 0.5 * (kGaussX[i] + 1.0);
        const double v = 0.5 * (kGaussX[j] + 1.0);
        const double w = 0.5 * (kGaussX[k] + 1.0);
        // Duffy collapse of the unit cube onto the tetrahedron.
        const double jac = (1.0 - u) * (1.0 - u) * (1.0 - v);
        rule.push_back({LocalCoords(u, v * (1.0 - u), w * (1.0 - u) * (1.0 - v)),
                        kGaussW[i] * kGaussW[j] * kGaussW[k] * jac / 8.0});
      }
    }
  }
  return rule;
}

}  // namespace

std::span<const QuadraturePoint> tet_gauss_rule() {
  static const std::vector<QuadraturePoint> rule = make_rule();
  return rule;
}

}  // namespace fexray
