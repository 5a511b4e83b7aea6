#include "cornerpump/topo_states.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace cornerpump {

namespace {

constexpr std::array<std::string_view, 9> kNames = {"TL", "T", "TR", "L", "C",
                                                    "R",  "BL", "B", "BR"};

// Position of a state along one axis: near the low edge, at the interface
// coordinate L, or near the high edge 2L-1.
enum class Band { Low, Mid, High };

Band column_band(TopoLabel label) { return static_cast<Band>(static_cast<int>(label) % 3); }
Band row_band(TopoLabel label) { return static_cast<Band>(static_cast<int>(label) / 3); }

struct ProfileEntry {
  int coord;
  double amplitude;
};

// One-axis profile with ratios m (low side) and n (high side).
std::vector<ProfileEntry> axis_profile(Band band, double m, double n, int half_size) {
  std::vector<ProfileEntry> out;
  const int half = half_size / 2;
  switch (band) {
    case Band::Low:
      for (int s = 0; s < half; ++s) out.push_back({2 * s + 1, std::pow(m, s)});
      break;
    case Band::Mid:
      for (int s = 0; s < half; ++s) out.push_back({half_size - 2 * s, std::pow(m, s)});
      for (int s = 0; s < half - 1; ++s) {
        out.push_back({half_size + 2 * (s + 1), std::pow(n, s + 1)});
      }
      break;
    case Band::High:
      for (int s = 0; s < half; ++s) out.push_back({2 * half_size - 1 - 2 * s, std::pow(n, s)});
      break;
  }
  return out;
}

double profile_weight(Band band, double m, double n, int half_size) {
  switch (band) {
    case Band::Low: return geometric_weight(m, half_size);
    case Band::Mid: return geometric_weight(m, half_size) + geometric_weight(n, half_size) - 1.0;
    case Band::High: return geometric_weight(n, half_size);
  }
  return 0.0;
}

}  // namespace

std::string_view label_name(TopoLabel label) { return kNames[static_cast<int>(label)]; }

TopoLabel label_from_ordinal(int n) {
  if (n < 1 || n > 9) throw InputError("topological state ordinal must be in [1, 9]");
  return kTopoLabels[n - 1];
}

TopoLabel parse_label(std::string_view name) {
  for (TopoLabel label : kTopoLabels) {
    if (label_name(label) == name) return label;
  }
  throw InputError("unknown topological state label '" + std::string(name) + "'");
}

DecayRatios decay_ratios(const Couplings& c) {
  if (c.w_x == 0.0 || c.w_y == 0.0) throw InputError("decay_ratios: w must be nonzero");
  return {-c.v_x / c.w_x, -c.v_y / c.w_y, -c.v_prime_x / c.w_x, -c.v_prime_y / c.w_y};
}

double geometric_weight(double ratio, int half_size) {
  if (std::abs(ratio) == 1.0) {
    throw SingularRatioError("decay ratio of magnitude 1 has no normalizable state");
  }
  const double r2 = ratio * ratio;
  return (1.0 - std::pow(r2, half_size / 2)) / (1.0 - r2);
}

double NormalizationSet::operator[](TopoLabel label) const {
  switch (label) {
    case TopoLabel::TL: return tl;
    case TopoLabel::T: return t;
    case TopoLabel::TR: return tr;
    case TopoLabel::L: return l;
    case TopoLabel::C: return c;
    case TopoLabel::R: return r;
    case TopoLabel::BL: return bl;
    case TopoLabel::B: return b;
    case TopoLabel::BR: return br;
  }
  return 0.0;
}

NormalizationSet normalization_set(const DecayRatios& r, int half_size) {
  if (half_size < 2 || half_size % 2 != 0) {
    throw InputError("normalization_set: L must be even");
  }
  std::array<double, 9> values{};
  for (TopoLabel label : kTopoLabels) {
    const double x = profile_weight(column_band(label), r.m_x, r.n_x, half_size);
    const double y = profile_weight(row_band(label), r.m_y, r.n_y, half_size);
    values[static_cast<int>(label)] = 1.0 / std::sqrt(x * y);
  }
  return {values[0], values[1], values[2], values[3], values[4],
          values[5], values[6], values[7], values[8]};
}

StateVector analytic_state(TopoLabel label, const Couplings& c, int half_size) {
  const LatticeGeometry geometry = LatticeGeometry::ctap(half_size);
  const DecayRatios r = decay_ratios(c);
  const double norm = normalization_set(r, half_size)[label];
  const auto columns = axis_profile(column_band(label), r.m_x, r.n_x, half_size);
  const auto rows = axis_profile(row_band(label), r.m_y, r.n_y, half_size);
  StateVector psi = StateVector::Zero(geometry.dim());
  for (const ProfileEntry& row : rows) {
    for (const ProfileEntry& col : columns) {
      psi[flatten({col.coord, row.coord}, geometry)] = norm * col.amplitude * row.amplitude;
    }
  }
  return psi;
}

std::complex<double> overlap(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw InputError("overlap: dimension mismatch");
  return a.dot(b);  // conjugates the first argument
}

}  // namespace cornerpump
