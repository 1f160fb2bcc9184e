#pragma once

// Text forms of kernels and arithmetic functions used on the command line.
//
//   identity
//   hilberdink:sigma=recip            sigma(n) = 1/n
//   hilberdink:sigma=cm,s=1.0         sigma(n) = n^{-s}
//   hilberdink:sigma=const,v=1/2      completely multiplicative, sigma(p) = v
//   hilberdink:sigma=sqfree,v=1/2     sigma(p) = v, sigma(p^k) = 0 for k >= 2
//   hilberdink:sigma=table,FILE       rows p,k,re[,im]
//   dfactor:A=powers:2,q=1/2          c(p/q) = q^{Omega(p)+Omega(q)} on A/A
//   dfactor:A=powers:2,table=FILE     rows num,den,re[,im]
//   table:file=FILE                   explicit kernel, rows num,den,re[,im]
//   additive:coeffs=2,0.5             c0(0), c0(1), ...
//
// Parameters are key=value separated by commas; a token without '=' extends
// the previous value, so list-valued parameters need no quoting.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "multdet/integer_set.hpp"
#include "multdet/kernel.hpp"
#include "multdet/log_means.hpp"

namespace multdet {

/// Malformed command-line text (exit status 2), as opposed to a runtime
/// failure of a well-formed request.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KernelSpec {
  enum class Family { identity, hilberdink, dfactor, table, additive };

  Family family = Family::identity;
  std::map<std::string, std::string> params;

  bool additive() const { return family == Family::additive; }
  /// Canonical text, keys in a fixed order.
  std::string normalized() const;
};

/// Grammar check only; files are not touched.
KernelSpec parse_kernel_spec(std::string_view text);

MultiplicativeSigma build_sigma(const KernelSpec& spec);
/// Multiplicative kernel; `cap` bounds set-valued parameters.
FractionKernel build_fraction_kernel(const KernelSpec& spec, std::uint64_t cap);
AdditiveSymbol build_additive_symbol(const KernelSpec& spec);
std::vector<GaussianRational> additive_coefficients(const KernelSpec& spec);
std::vector<GaussianRational> parse_coefficients(std::string_view text);

/// Real-valued functions for the mean-value commands:
///   indicator:SET   omega   omega-min:K   log   const:c   table:FILE
struct FunctionSpec {
  std::string kind;
  std::string argument;
  std::string normalized() const { return argument.empty() ? kind : kind + ":" + argument; }
};

FunctionSpec parse_function_spec(std::string_view text);
ArithmeticFunction build_function(const FunctionSpec& spec, std::uint64_t cap);

/// Set spec validated against the grammar (usage error otherwise).
IntegerSet parse_set_or_usage(std::string_view text, std::uint64_t cap);

}  // namespace multdet
