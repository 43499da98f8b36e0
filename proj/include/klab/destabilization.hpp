#pragma once

#include <string>
#include <vector>

#include "klab/int_matrix.hpp"

namespace klab {

// Abstract input for checking the passage from the sum over (gamma_0, kappa)
// to the sum over endoscopic data.  Everything is exact.
struct SyntheticEndoscopicDatum {
  std::string label;
  Rational tau_h;
  Rational lambda;  // order of the outer automorphism group
  // Elements of H outside the image of the correspondence: (iota_bar_H, SO).
  std::vector<std::pair<Rational, Rational>> unmatched;
};

struct SyntheticFiber {
  std::size_t datum = 0;                 // index into SyntheticData::data
  Rational n_value;                      // N(gamma_0, kappa)
  std::vector<Rational> iota_bar_h;      // one entry per gamma_H in the fiber
  std::vector<Rational> stable_orbital;  // SO(gamma_H), same length
};

struct SyntheticClass {
  std::string label;
  Rational iota_bar_g;
  std::vector<SyntheticFiber> fibers;  // one per kappa
};

struct SyntheticData {
  Rational tau_g;
  std::vector<SyntheticEndoscopicDatum> data;
  std::vector<SyntheticClass> classes;
};

struct DestabilizationReport {
  Rational lhs;  // tau(G) sum_gamma0 iota_bar_G^{-1} sum_kappa N
  Rational rhs;  // sum_e iota(G, H) tau(H) sum_gamma_H iota_bar_H^{-1} SO
  bool sums_equal = false;
  std::vector<std::string> violations;
  bool passed() const { return sums_equal && violations.empty(); }
};

DestabilizationReport destabilization_check(const SyntheticData& data);

}  // namespace klab
