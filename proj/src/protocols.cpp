#include "cornerpump/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cornerpump {

void CtapSchedule::validate() const {
  if (!(omega_max >= 0.0 && omega_max < 1.0)) {
    throw InputError("CTAP peak amplitude must lie in [0, 1) to stay topological");
  }
  if (!(width > 0.0 && delay > 0.0 && total_time > 0.0)) {
    throw InputError("CTAP width, delay and total time must be positive");
  }
}

double RiceMeleSchedule::angular_frequency() const {
  return 4.0 * std::numbers::pi / total_time;
}

void RiceMeleSchedule::validate() const {
  if (!(potential > 0.0 && total_time > 0.0 && hopping > 0.0)) {
    throw InputError("Rice-Mele t0, delta0 and T must be positive");
  }
}

Couplings ctap_couplings(const CtapSchedule& s, double t) {
  const double lead = t - s.delay / 2;
  const double trail = t + s.delay / 2;
  const double v = s.omega_max * std::exp(-(lead * lead) / (s.width * s.width));
  const double v_prime = s.omega_max * std::exp(-(trail * trail) / (s.width * s.width));
  return isotropic_couplings(v, v_prime, 1.0);
}

Couplings ricemele_couplings(const RiceMeleSchedule& s, double t) {
  if (t < 0.0 || t > s.total_time) {
    throw InputError("Rice-Mele time " + std::to_string(t) + " outside [0, T]");
  }
  const double phase = s.angular_frequency() * t;
  Couplings c;
  c.v_x = c.v_y = s.hopping * (1.0 - std::cos(phase));
  c.w_x = c.w_y = s.hopping * (1.0 + std::cos(phase));
  const double drive = s.potential * std::sin(phase);
  // Stage one owns the boundary t = T/2.
  if (t <= s.total_time / 2) {
    c.delta_x = drive;
  } else {
    c.delta_y = drive;
  }
  return c;
}

Couplings couplings_at(const PulseSchedule& s, double t) {
  struct Visitor {
    double t;
    Couplings operator()(const CtapSchedule& c) const { return ctap_couplings(c, t); }
    Couplings operator()(const RiceMeleSchedule& r) const { return ricemele_couplings(r, t); }
    Couplings operator()(const ConstantSchedule& k) const { return k.couplings; }
  };
  return std::visit(Visitor{t}, s);
}

std::pair<double, double> time_window(const PulseSchedule& s) {
  struct Visitor {
    std::pair<double, double> operator()(const CtapSchedule& c) const {
      return {-c.total_time / 2, c.total_time / 2};
    }
    std::pair<double, double> operator()(const RiceMeleSchedule& r) const {
      return {0.0, r.total_time};
    }
    std::pair<double, double> operator()(const ConstantSchedule& k) const {
      return {k.start, k.end};
    }
  };
  return std::visit(Visitor{}, s);
}

double schedule_norm_bound(const PulseSchedule& s) {
  struct Visitor {
    double operator()(const CtapSchedule& c) const {
      return 8.0 * std::max(1.0, std::abs(c.omega_max));
    }
    double operator()(const RiceMeleSchedule& r) const {
      return std::abs(r.potential) + 8.0 * 2.0 * std::abs(r.hopping);
    }
    double operator()(const ConstantSchedule& k) const {
      return std::abs(k.couplings.delta_x) + std::abs(k.couplings.delta_y) +
             8.0 * k.couplings.max_hopping();
    }
  };
  return std::visit(Visitor{}, s);
}

double default_time_step(const PulseSchedule& s) {
  const double bound = schedule_norm_bound(s);
  return bound > 0.0 ? std::min(0.02, 0.1 / bound) : 0.02;
}

}  // namespace cornerpump
