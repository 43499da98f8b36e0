// Random synthetic inputs for the destabilization checker.
#pragma once

#include <random>

#include "klab/destabilization.hpp"

namespace synthetic {

using klab::Rational;

// Consistent data: every fiber satisfies the counting identity by construction
// and stable values equal the kappa-orbital values.
inline klab::SyntheticData consistent(std::mt19937_64& rng) {
  klab::SyntheticData d;
  const long lambdas[] = {1, 2, 4};
  d.tau_g = Rational(1 + static_cast<long>(rng() % 2));
  std::size_t ndata = 1 + rng() % 3;
  for (std::size_t i = 0; i < ndata; ++i) {
    klab::SyntheticEndoscopicDatum e;
    e.label = "e" + std::to_string(i);
    e.lambda = i == 0 ? Rational(1) : Rational(lambdas[rng() % 3]);
    e.tau_h = i == 0 ? d.tau_g : Rational(1 + static_cast<long>(rng() % 4));
    if (rng() % 2) e.unmatched.push_back({Rational(1 + static_cast<long>(rng() % 2)), Rational(0)});
    d.data.push_back(e);
  }
  std::size_t nclasses = rng() % 5;
  for (std::size_t c = 0; c < nclasses; ++c) {
    klab::SyntheticClass cl;
    cl.label = "g" + std::to_string(c);
    cl.iota_bar_g = Rational(1 + static_cast<long>(rng() % 2));
    std::size_t nk = 1 + rng() % 4;
    for (std::size_t k = 0; k < nk; ++k) {
      klab::SyntheticFiber f;
      f.datum = k == 0 ? 0 : rng() % ndata;
      f.n_value = Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3));
      f.n_value.canonicalize();
      Rational remaining = d.data[f.datum].lambda / cl.iota_bar_g;
      while (remaining > 0) {
        const long choices[] = {1, 2, 4};
        long ib = choices[rng() % 3];
        if (Rational(1, ib) > remaining) continue;
        remaining -= Rational(1, ib);
        f.iota_bar_h.push_back(Rational(ib));
        f.stable_orbital.push_back(f.n_value);
      }
      cl.fibers.push_back(f);
    }
    d.classes.push_back(cl);
  }
  return d;
}

// Corrupt one fiber of a dataset with at least one class: drop, duplicate, or
// reweight a single element.
inline klab::SyntheticData corrupt_one_fiber(klab::SyntheticData d, std::mt19937_64& rng) {
  auto& cl = d.classes[rng() % d.classes.size()];
  auto& f = cl.fibers[rng() % cl.fibers.size()];
  std::size_t j = rng() % f.iota_bar_h.size();
  switch (rng() % 3) {
    case 0:
      f.iota_bar_h.erase(f.iota_bar_h.begin() + j);
      f.stable_orbital.erase(f.stable_orbital.begin() + j);
      break;
    case 1:
      f.iota_bar_h.push_back(f.iota_bar_h[j]);
      f.stable_orbital.push_back(f.stable_orbital[j]);
      break;
    default:
      f.iota_bar_h[j] = f.iota_bar_h[j] == 1 ? Rational(2) : Rational(1);
      break;
  }
  return d;
}

}  // namespace synthetic
