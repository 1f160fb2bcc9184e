#pragma once

// Kernels with rational values shared by the determinant tests and the
// acceptance run.

#include <vector>

#include "multdet/kernel.hpp"
#include "oracles.hpp"

namespace fixture {

using namespace multdet;

/// Completely multiplicative, sigma(p) = (3 + 4i) / (5p); |sigma(p)| = 1/p.
inline MultiplicativeSigma complex_sigma() {
  auto exact = [](std::uint64_t p, unsigned k) -> std::optional<GaussianRational> {
    const GaussianRational z{Rational(3, 5 * static_cast<long>(p)), Rational(4, 5 * static_cast<long>(p))};
    GaussianRational out{Rational(1), Rational(0)};
    for (unsigned i = 0; i < k; ++i) out = oracle::mul(out, z);
    out.re.canonicalize();
    out.im.canonicalize();
    return out;
  };
  return MultiplicativeSigma(
      "complex", true, false, [exact](std::uint64_t p, unsigned k, mpfr_prec_t prec) { return exact(p, k)->to_complex(prec); },
      exact, DecayEnvelope{1.0, 1.0});
}

inline std::vector<FractionKernel> rational_kernels() {
  return {identity_kernel(),
          hilberdink_kernel(MultiplicativeSigma::reciprocal()),
          hilberdink_kernel(MultiplicativeSigma::prime_constant(Rational(1, 2))),
          hilberdink_kernel(MultiplicativeSigma::squarefree_constant(Rational(1, 3))),
          hilberdink_kernel(complex_sigma()),
          direct_factor_kernel(IntegerSet::powers(2, 4096), Rational(1, 2)),
          direct_factor_kernel(IntegerSet::friable(3, 4096), Rational(1, 3))};
}

}  // namespace fixture
