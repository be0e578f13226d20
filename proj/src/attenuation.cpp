#include "fexray/attenuation.hpp"

#include "fexray/error.hpp"

#include <algorithm>
#include <cmath>

namespace fexray {

AttenuationModel AttenuationModel::identity(double intensity_in) {
  AttenuationModel m;
  m.intensity_in = intensity_in;
  return m;
}

AttenuationModel AttenuationModel::linear(double kappa, double intensity_in) {
  AttenuationModel m;
  m.kind = AttenuationKind::linear;
  m.kappa = kappa;
  m.intensity_in = intensity_in;
  return m;
}

AttenuationModel AttenuationModel::lookup(std::vector<std::pair<double, double>> table,
                                          double intensity_in) {
  AttenuationModel m;
  m.kind = AttenuationKind::lookup;
  m.table = std::move(table);
  m.intensity_in = intensity_in;
  return m;
}

void AttenuationModel::validate() const {
  if (!(intensity_in > 0.0) || !std::isfinite(intensity_in)) {
    throw ValidationError("intensity_in must be positive");
  }
  if (kind == AttenuationKind::linear && (!(kappa >= 0.0) || !std::isfinite(kappa))) {
    throw ValidationError("kappa must be non-negative");
  }
  if (kind == AttenuationKind::lookup) {
    if (table.size() < 2) throw ValidationError("attenuation table needs at least two entries");
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (!std::isfinite(table[i].first) || !std::isfinite(table[i].second)) {
        throw ValidationError("attenuation table entries must be finite");
      }
      if (table[i].second < 0.0) throw ValidationError("attenuation table mu must be non-negative");
      if (i > 0 && !(table[i].first > table[i - 1].first)) {
        throw ValidationError("attenuation table rho must be strictly increasing");
      }
    }
  }
}

double AttenuationModel::mu(double rho) const {
  switch (kind) {
    case AttenuationKind::identity: return rho;
    case AttenuationKind::linear: return kappa * rho;
    case AttenuationKind::lookup: break;
  }
  if (rho <= table.front().first) return table.front().second;
  if (rho >= table.back().first) return table.back().second;
  const auto hi = std::upper_bound(table.begin(), table.end(), rho,
                                   [](double r, const auto& entry) { return r < entry.first; });
  const auto lo = hi - 1;
  const double s = (rho - lo->first) / (hi->first - lo->first);
  return lo->second + s * (hi->second - lo->second);
}

double AttenuationModel::mu_integral(double projected_density, double sampled_mu_integral) const {
  switch (kind) {
    case AttenuationKind::identity: return projected_density;
    case AttenuationKind::linear: return kappa * projected_density;
    case AttenuationKind::lookup: return sampled_mu_integral;
  }
  return projected_density;
}

double attenuate(double mu_integral, const AttenuationModel& model) {
  return model.intensity_in * std::exp(-mu_integral);
}

}  // namespace fexray
