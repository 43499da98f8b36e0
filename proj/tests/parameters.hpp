// Random Kottwitz parameters over the GL_2 and SL_2 torus ambients, with a
// closed-form value of the invariant for each.
#pragma once

#include <random>

#include "klab/kottwitz.hpp"

namespace parameters {

using klab::Int;
using klab::IntVector;

inline Int small(std::mt19937_64& rng, long bound = 4) {
  return Int(static_cast<long>(rng() % static_cast<unsigned long>(2 * bound + 1)) - bound);
}

struct Generated {
  klab::KottwitzParameter param;
  bool alpha_zero;  // closed form
};

inline Generated random_parameter(std::mt19937_64& rng, const klab::AmbientPtr& ambient, std::size_t index) {
  Generated g;
  auto& c = g.param;
  c.ambient = ambient;
  c.label = ambient->name + "-" + std::to_string(index);
  c.gamma0 = "elliptic";
  if (ambient->name.rfind("gl2", 0) == 0) {
    // mu = (1,0); beta_inf a Hodge conjugate, beta_p of degree -1; e group is trivial.
    Int t = small(rng);
    bool swap = rng() % 2;
    c.beta_infinity = {Int(swap ? 0 : 1) - t, Int(swap ? 1 : 0) + t};
    Int a = small(rng);
    c.beta_p = {a, -1 - a};
    std::string other = ambient->p_place == "f0" ? "f1" : "f0";
    if (rng() % 2) {
      Int s = small(rng);
      if (other == "f1")
        c.beta_finite[other] = {s, -s};
      else
        c.beta_finite[other] = {Int(0), Int(0)};
    }
    g.alpha_zero = true;
    return g;
  }
  // SL_2: everything lives in Z with the sign action and the invariant is the parity of the sum.
  c.beta_infinity = {small(rng)};
  c.beta_p = {small(rng)};
  Int total = c.beta_infinity[0] + c.beta_p[0];
  if (ambient->p_place == "f0") {
    Int b = small(rng);
    c.beta_finite["f1"] = {b};
    total += b;
  } else if (rng() % 2) {
    c.beta_finite["f0"] = {Int(0)};
  }
  g.alpha_zero = total % 2 == 0;
  return g;
}

inline std::vector<klab::AmbientPtr> ambients() {
  return {klab::presets::ambient_gl2("inert"), klab::presets::ambient_gl2("split"), klab::presets::ambient_sl2("split"),
          klab::presets::ambient_sl2("inert")};
}

}  // namespace parameters
