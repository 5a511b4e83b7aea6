#include "cornerpump/effective_model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cornerpump {

namespace {

struct GridBond {
  int n, m;
  bool second_family;  // true: O23 family, false: O12 family
  double sign;
};

constexpr std::array<GridBond, 12> kGridBonds = {{
    {1, 2, false, 1.0},
    {2, 5, false, 1.0},
    {4, 5, false, 1.0},
    {7, 8, false, 1.0},
    {1, 4, false, -1.0},
    {3, 6, false, -1.0},
    {2, 3, true, 1.0},
    {5, 6, true, 1.0},
    {5, 8, true, 1.0},
    {8, 9, true, 1.0},
    {4, 7, true, -1.0},
    {6, 9, true, -1.0},
}};

}  // namespace

double EffectiveCouplings::coupling(int n, int m) const {
  if (n > m) std::swap(n, m);
  for (const GridBond& b : kGridBonds) {
    if (b.n == n && b.m == m) return b.sign * (b.second_family ? omega23 : omega12);
  }
  return 0.0;
}

double EffectiveCouplings::rms() const { return std::hypot(omega12, omega23); }

EffectiveCouplings effective_couplings(const Couplings& c, int half_size) {
  if (c.v_x != c.v_y || c.v_prime_x != c.v_prime_y || c.w_x != c.w_y) {
    throw InputError("effective_couplings: anisotropic couplings are not supported");
  }
  if (c.delta_x != 0.0 || c.delta_y != 0.0) {
    throw InputError("effective_couplings: staggered potentials are not part of the model");
  }
  const DecayRatios r = decay_ratios(c);
  const NormalizationSet norms = normalization_set(r, half_size);
  const double m = r.m_x;
  const double n = r.n_x;
  const int tail = half_size / 2 - 1;
  // The row profile shared by TL, T and TR is the top-edge sum over M.
  const double row_weight = geometric_weight(m, half_size);
  EffectiveCouplings e;
  e.omega12 = c.v_x * std::pow(m, tail) * row_weight * norms.tl * norms.t;
  e.omega23 = c.v_prime_x * std::pow(n, tail) * row_weight * norms.t * norms.tr;
  return e;
}

EffectiveModel build_heff(const EffectiveCouplings& e) {
  EffectiveModel model{Eigen::Matrix<double, 9, 9>::Zero()};
  for (const GridBond& b : kGridBonds) {
    const double value = b.sign * (b.second_family ? e.omega23 : e.omega12);
    model.h(b.n - 1, b.m - 1) = value;
    model.h(b.m - 1, b.n - 1) = value;
  }
  return model;
}

std::array<double, 9> heff_spectrum_closed_form(const EffectiveCouplings& e) {
  const double e1 = e.rms();
  const double e2 = std::sqrt(2.0) * e1;
  return {-e2, -e2, -e1, -e1, 0.0, e1, e1, e2, e2};
}

Eigen::Matrix<double, 9, 1> dark_state(const EffectiveCouplings& e) {
  const double a = e.omega12;
  const double b = e.omega23;
  const double denom = a * a + b * b;
  if (denom == 0.0) throw InputError("dark_state: both couplings vanish, direction undefined");
  Eigen::Matrix<double, 9, 1> d = Eigen::Matrix<double, 9, 1>::Zero();
  d[0] = b * b / denom;
  d[2] = -a * b / denom;
  d[6] = -a * b / denom;
  d[8] = a * a / denom;
  return d;
}

double adiabaticity_integral(const PulseSchedule& schedule, int half_size, double t0, double t1,
                             int nodes) {
  if (!(t1 > t0)) throw InputError("adiabaticity_integral: t1 must exceed t0");
  nodes = std::max(nodes, 3);
  if (nodes % 2 == 0) ++nodes;
  const int intervals = nodes - 1;
  const double h = (t1 - t0) / intervals;
  auto f = [&](int k) {
    const double t = (k == intervals) ? t1 : t0 + k * h;
    return effective_couplings(couplings_at(schedule, t), half_size).rms();
  };
  double sum = f(0) + f(intervals);
  for (int k = 1; k < intervals; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * f(k);
  return sum * h / 3.0;
}

}  // namespace cornerpump
