// Random elements and matrices over unramified extensions for tests.
#pragma once

#include <algorithm>
#include <random>

#include "klab/padic.hpp"

namespace padic_random {

using klab::Int;
using klab::Padic;
using klab::PadicContextPtr;
using klab::PadicMatrix;

inline Padic element(PadicContextPtr ctx, std::mt19937_64& rng, long vmin, long vmax) {
  std::vector<Int> c(ctx->degree);
  for (auto& x : c) x = Int(static_cast<long>(rng() % 1000)) - 500;
  if (std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; })) c[0] = 1;
  long v = vmin + static_cast<long>(rng() % static_cast<unsigned long>(vmax - vmin + 1));
  return Padic::from_coefficients(ctx, v, c);
}

inline PadicMatrix matrix(PadicContextPtr ctx, std::mt19937_64& rng, std::size_t d, long vmin, long vmax) {
  PadicMatrix m(ctx, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = rng() % 4 ? element(ctx, rng, vmin, vmax) : Padic::zero(ctx);
  return m;
}

// Element of GL_d(Z_{p^n}): integral with unit determinant.
inline PadicMatrix integral_unit(PadicContextPtr ctx, std::mt19937_64& rng, std::size_t d) {
  for (;;) {
    PadicMatrix m = matrix(ctx, rng, d, 0, 2);
    Padic det = m.determinant();
    if (!det.is_zero() && det.valuation() == 0) return m;
  }
}

// Invertible matrix with entries of valuation in [vmin, vmax].
inline PadicMatrix invertible(PadicContextPtr ctx, std::mt19937_64& rng, std::size_t d, long vmin, long vmax) {
  for (;;) {
    PadicMatrix m = matrix(ctx, rng, d, vmin, vmax);
    Padic det = m.determinant();
    if (!det.is_zero() && det.valuation() <= d * vmax + 4) return m;
  }
}

}  // namespace padic_random
