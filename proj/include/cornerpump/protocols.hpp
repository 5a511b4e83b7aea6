#pragma once

#include <utility>
#include <variant>

#include "cornerpump/lattice.hpp"

namespace cornerpump {

/// Counter-intuitively ordered Gaussian pulse pair on t in [-T/2, T/2]:
/// v(t) = Om exp(-(t - d/2)^2 / l^2), v'(t) = Om exp(-(t + d/2)^2 / l^2).
struct CtapSchedule {
  double omega_max = 0.9;
  double width = 150.0;
  double delay = 50.0;
  double total_time = 600.0;

  void validate() const;
};

/// Two-stage Rice-Mele cycle on t in [0, T] with omega = 4 pi / T. Stage one
/// drives Delta_x, stage two Delta_y; the hoppings run one full cycle each.
struct RiceMeleSchedule {
  double hopping = 1.0;  // t0
  double potential = 0.4;  // delta0
  double total_time = 1000.0;

  double angular_frequency() const;
  void validate() const;
};

/// Time-independent couplings over an explicit window.
struct ConstantSchedule {
  Couplings couplings;
  double start = 0.0;
  double end = 1.0;
};

using PulseSchedule = std::variant<CtapSchedule, RiceMeleSchedule, ConstantSchedule>;

Couplings ctap_couplings(const CtapSchedule& s, double t);
Couplings ricemele_couplings(const RiceMeleSchedule& s, double t);

Couplings couplings_at(const PulseSchedule& s, double t);
std::pair<double, double> time_window(const PulseSchedule& s);

/// Upper bound on |H(t)|_inf over the window: |Dx| + |Dy| + 8 max hopping.
double schedule_norm_bound(const PulseSchedule& s);

/// min(0.02, 0.1 / schedule_norm_bound).
double default_time_step(const PulseSchedule& s);

}  // namespace cornerpump
