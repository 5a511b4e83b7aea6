#pragma once

#include <array>
#include <complex>
#include <string_view>

#include "cornerpump/lattice.hpp"

namespace cornerpump {

/// The nine in-gap states in reading order; ordinal n = 3(row-1) + column.
enum class TopoLabel { TL, T, TR, L, C, R, BL, B, BR };

inline constexpr std::array<TopoLabel, 9> kTopoLabels = {
    TopoLabel::TL, TopoLabel::T,  TopoLabel::TR, TopoLabel::L, TopoLabel::C,
    TopoLabel::R,  TopoLabel::BL, TopoLabel::B,  TopoLabel::BR};

inline constexpr int ordinal(TopoLabel label) { return static_cast<int>(label) + 1; }
std::string_view label_name(TopoLabel label);
TopoLabel label_from_ordinal(int n);
TopoLabel parse_label(std::string_view name);

/// M = -v/w and N = -v'/w per axis.
struct DecayRatios {
  double m_x = 0, m_y = 0;
  double n_x = 0, n_y = 0;
};

DecayRatios decay_ratios(const Couplings& c);

/// sum_{s=0}^{L/2-1} r^{2s} = (1 - r^L)/(1 - r^2).
double geometric_weight(double ratio, int half_size);

struct NormalizationSet {
  double tl, t, tr, l, c, r, bl, b, br;

  double operator[](TopoLabel label) const;
};

/// Closed-form normalization constants of the truncated states. Each state
/// is a product of a column profile and a row profile, so the constants are
/// 1/sqrt(X * Y) with X, Y built from geometric_weight.
NormalizationSet normalization_set(const DecayRatios& r, int half_size);

/// Table amplitude of `label` on the superlattice; every geometric tail is
/// truncated to stay on the lattice, which makes the normalization exact.
StateVector analytic_state(TopoLabel label, const Couplings& c, int half_size);

std::complex<double> overlap(const StateVector& a, const StateVector& b);

}  // namespace cornerpump
