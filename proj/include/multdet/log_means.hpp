#pragma once

// Mean values of arithmetic functions: Mertens products, the friable and
// direct-factor means alpha(f;y), alpha(f;A), and Cesaro / logarithmic mean
// traces. Every alpha is an enclosure, never a point estimate.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "multdet/arith.hpp"
#include "multdet/direct_factors.hpp"
#include "multdet/interval.hpp"

namespace multdet {

/// Real-valued arithmetic function given as a callable, optionally limited
/// to a tabulated range, with whatever global bounds are known.
struct ArithmeticFunction {
  std::string name;
  std::function<double(std::uint64_t)> value;
  std::uint64_t domain_limit = std::numeric_limits<std::uint64_t>::max();
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;

  double operator()(std::uint64_t n) const;

  static ArithmeticFunction from_table(const ExactFunction& table);
  static ArithmeticFunction constant(double c);
  /// Indicator of M(A) for a finite generator list, bounded in [0, 1].
  static ArithmeticFunction multiples_indicator(std::vector<std::uint64_t> generators);
  /// omega(n), bounded below by 0.
  static ArithmeticFunction distinct_primes();
  static ArithmeticFunction log();
  /// min(f, cap).
  static ArithmeticFunction truncated(const ArithmeticFunction& f, double cap);
  /// f(n; y) = f(y-friable part of n).
  static ArithmeticFunction friable_reduced(const ArithmeticFunction& f, double y);
  ArithmeticFunction negated() const;
};

/// prod over p <= y of (1 - 1/p), exact.
Rational mertens_product(double y);

struct AlphaEstimate {
  Interval value;
  std::uint64_t truncation = 0;
  std::size_t terms = 0;
  /// Mass of sum 1/a over the untruncated part of the factor.
  Interval tail_mass;
};

/// Truncation X making the tail of sum over S(y) of 1/a smaller than
/// `tail_target`, limited so that at most `max_terms` members are summed.
std::uint64_t default_friable_truncation(double y, double tail_target = 1e-6, std::size_t max_terms = 2000000);

/// alpha(f;y) = prod(1-1/p) * sum over a in S(y) of f(a)/a. Requires
/// f.lower_bound; without f.upper_bound the upper end is +inf. X = 0 picks
/// default_friable_truncation(y), clamped to f's domain.
AlphaEstimate alpha_friable(const ArithmeticFunction& f, double y, std::uint64_t truncation = 0);

/// alpha(f;A) = lambda * sum over a in A of f(a)/a, X = 0 meaning A's cap.
AlphaEstimate alpha_direct_factor(const ArithmeticFunction& f, const DirectFactorPair& pair,
                                  std::uint64_t truncation = 0);

struct TracePoint {
  double x = 0.0;
  double value = 0.0;
};

/// Min and max of a trace over the last decade (x_max/10, x_max]. These are
/// finite-x proxies for liminf / limsup, nothing more.
struct DecadeProxy {
  double min = 0.0;
  double max = 0.0;
};

struct AlphaAtY {
  double y = 0.0;
  AlphaEstimate estimate;
};

struct MeanReport {
  std::string function;
  Direction direction = Direction::increasing;
  std::uint64_t checked_to = 0;
  std::vector<TracePoint> cesaro;
  std::vector<TracePoint> logmean;
  DecadeProxy cesaro_proxy;
  DecadeProxy logmean_proxy;
  std::vector<AlphaAtY> alpha_y;
  /// [sup over y of the lower ends, sup f]; upper end +inf when unknown.
  Interval alpha_limit;
  /// alpha(f;y) nondecreasing along the grid, up to enclosure widths.
  bool alpha_nondecreasing = true;
};

std::vector<double> default_y_grid();
std::vector<double> default_x_grid();

/// Cesaro and logarithmic means at the grid points plus decade proxies.
void mean_traces(const ArithmeticFunction& f, const std::vector<double>& x_grid, std::vector<TracePoint>& cesaro,
                 std::vector<TracePoint>& logmean, DecadeProxy& cesaro_proxy, DecadeProxy& logmean_proxy);

/// Requires f multiplicatively monotone up to max x (checked; decreasing f is
/// handled through -f). Throws with the violating pair otherwise.
MeanReport alpha_limit_estimate(const ArithmeticFunction& f, const std::vector<double>& y_grid,
                                const std::vector<double>& x_grid, Direction direction = Direction::increasing);

struct GapRow {
  double x = 0.0;
  double cesaro = 0.0;
  double logmean = 0.0;
  double alpha_lower = 0.0;
};

struct GapDiagnostics {
  std::vector<GapRow> rows;
  double alpha_lower = 0.0;
  /// Present when Df >= 0 on the tabulation: sum over m <= N of Df(m)/m.
  std::optional<double> derivative_mean;
  /// |cesaro(x_max) - derivative_mean| when the latter is present.
  std::optional<double> derivative_gap;
};

GapDiagnostics mean_gap_diagnostics(const ExactFunction& f, const std::vector<double>& x_grid,
                                    const std::vector<double>& y_grid = default_y_grid());

struct FamilyRow {
  std::string name;
  double alpha_lower = 0.0;
  Interval alpha_at_top_y;
  double logmean_at_top_x = 0.0;
  double gap_to_limit = 0.0;
};

struct FamilyReport {
  std::vector<FamilyRow> members;
  FamilyRow limit;
  bool alpha_nondecreasing = true;
};

/// alpha(f_k) along an increasing family and alpha(sup f_k). The family is
/// checked pointwise nondecreasing in k up to `check_limit`.
FamilyReport monotone_family_alpha(const std::vector<ArithmeticFunction>& family, const ArithmeticFunction& supremum,
                                   const std::vector<double>& y_grid, const std::vector<double>& x_grid,
                                   std::uint64_t check_limit);

}  // namespace multdet
