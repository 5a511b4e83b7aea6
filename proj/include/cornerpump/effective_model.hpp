#pragma once

#include <array>

#include "cornerpump/protocols.hpp"
#include "cornerpump/topo_states.hpp"

namespace cornerpump {

/// The two independent couplings of the nine-level model. All sixteen
/// nonzero matrix elements follow from them up to sign:
///   O12 = O25 = O45 = O78 = -O14 = -O36
///   O23 = O56 = O58 = O89 = -O47 = -O69
struct EffectiveCouplings {
  double omega12 = 0;
  double omega23 = 0;

  /// Signed element <n|H|m> for 1-based ordinals; zero off the grid bonds.
  double coupling(int n, int m) const;
  double rms() const;  // sqrt(O12^2 + O23^2)
};

/// Nine-level Hamiltonian on {TL, T, TR, L, C, R, BL, B, BR}.
struct EffectiveModel {
  Eigen::Matrix<double, 9, 9> h;
};

/// Closed-form couplings <T|H|TL> and <TR|H|T> of the truncated analytic
/// states. Requires the isotropic setting v_x = v_y, v'_x = v'_y, w_x = w_y.
EffectiveCouplings effective_couplings(const Couplings& c, int half_size);

EffectiveModel build_heff(const EffectiveCouplings& e);

/// {0} and +-E1, +-sqrt(2) E1 each twice, E1 = sqrt(O12^2 + O23^2); ascending.
std::array<double, 9> heff_spectrum_closed_form(const EffectiveCouplings& e);

/// (O23^2, 0, -O12 O23, 0, 0, 0, -O12 O23, 0, O12^2) / (O12^2 + O23^2).
Eigen::Matrix<double, 9, 1> dark_state(const EffectiveCouplings& e);

/// Composite Simpson estimate of int sqrt(O12^2 + O23^2) dt over [t0, t1].
/// `nodes` is rounded up to the next odd count (>= 3).
double adiabaticity_integral(const PulseSchedule& schedule, int half_size, double t0, double t1,
                             int nodes = 2001);

}  // namespace cornerpump
