#include "klab/destabilization.hpp"

#include <stdexcept>

namespace klab {

DestabilizationReport destabilization_check(const SyntheticData& d) {
  DestabilizationReport rep;
  rep.lhs = 0;
  rep.rhs = 0;
  std::vector<Rational> st(d.data.size(), Rational(0));  // per-datum sum of iota_bar_H^{-1} SO
  for (std::size_t c = 0; c < d.classes.size(); ++c) {
    const SyntheticClass& cl = d.classes[c];
    if (cl.iota_bar_g == 0) throw std::invalid_argument("iota_bar_G must be nonzero");
    for (std::size_t k = 0; k < cl.fibers.size(); ++k) {
      const SyntheticFiber& f = cl.fibers[k];
      rep.lhs += d.tau_g * f.n_value / cl.iota_bar_g;
      std::string where = "class " + cl.label + ", kappa " + std::to_string(k);
      if (f.datum >= d.data.size()) {
        rep.violations.push_back(where + ": unknown endoscopic datum");
        continue;
      }
      if (f.iota_bar_h.size() != f.stable_orbital.size()) {
        rep.violations.push_back(where + ": fiber lists have different lengths");
        continue;
      }
      const SyntheticEndoscopicDatum& e = d.data[f.datum];
      Rational weight = 0;
      for (std::size_t j = 0; j < f.iota_bar_h.size(); ++j) {
        weight += 1 / f.iota_bar_h[j];
        st[f.datum] += f.stable_orbital[j] / f.iota_bar_h[j];
        if (f.stable_orbital[j] != f.n_value)
          rep.violations.push_back(where + ": stable orbital value differs from the kappa-orbital value");
      }
      weight /= e.lambda;
      if (weight != 1 / cl.iota_bar_g)
        rep.violations.push_back(where + ": fiber weight " + weight.get_str() + " violates the counting identity (expected " +
                                 Rational(1 / cl.iota_bar_g).get_str() + ")");
    }
  }
  for (std::size_t i = 0; i < d.data.size(); ++i) {
    const SyntheticEndoscopicDatum& e = d.data[i];
    for (const auto& [ib, so] : e.unmatched) {
      st[i] += so / ib;
      if (so != 0) rep.violations.push_back("datum " + e.label + ": element outside the image has nonzero stable value");
    }
    Rational iota = d.tau_g / e.tau_h / e.lambda;
    rep.rhs += iota * e.tau_h * st[i];
  }
  rep.lhs.canonicalize();
  rep.rhs.canonicalize();
  rep.sums_equal = rep.lhs == rep.rhs;
  return rep;
}

}  // namespace klab
