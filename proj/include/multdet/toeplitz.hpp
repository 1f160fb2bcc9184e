#pragma once

// Leading determinants D_n of multiplicative Toeplitz matrices (c(i/j)) and
// additive ones (c0(i-j)), their ratios r_n = D_n / D_{n-1}, and the
// structure results built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multdet/arith.hpp"
#include "multdet/interval.hpp"
#include "multdet/kernel.hpp"

namespace multdet {

/// r_1..r_N with logs and cumulative log-determinants, at one precision.
class DeterminantSequence {
 public:
  /// Builds the sequence from ratios (all positive). `pivot_floor` and
  /// `escalations` record how the ratios were obtained.
  static DeterminantSequence from_ratios(std::vector<Real> ratios, std::string source, int escalations = 0);

  std::size_t size() const { return ratios_.size(); }
  /// 1-based accessors.
  const Real& ratio(std::size_t n) const;
  const Real& log_ratio(std::size_t n) const;
  const Real& log_det(std::size_t n) const;
  Real determinant(std::size_t n) const;

  const std::vector<Real>& ratios() const { return ratios_; }
  mpfr_prec_t precision_bits() const { return precision_; }
  /// min over n of r_n / max_{m<=n} r_m.
  double pivot_floor() const { return pivot_floor_; }
  int escalations() const { return escalations_; }
  const std::string& source() const { return source_; }

 private:
  std::vector<Real> ratios_;
  std::vector<Real> log_ratios_;
  std::vector<Real> log_dets_;
  mpfr_prec_t precision_ = 0;
  double pivot_floor_ = 1.0;
  int escalations_ = 0;
  std::string source_;
};

struct CholeskyOptions {
  /// Precision doublings allowed when a pivot falls below
  /// 2^{-precision/2} times the running maximum.
  int max_escalations = 3;
};

/// Row-by-row Cholesky of the n x n leading block for n = 1..N; the squared
/// diagonal entries are the ratios. Throws NotPositiveDefinite with the first
/// failing n once escalations are exhausted.
DeterminantSequence incremental_cholesky_dets(const MatrixSource& source, std::size_t n_max,
                                              mpfr_prec_t precision = 128, const CholeskyOptions& options = {});

DeterminantSequence multiplicative_dets(const FractionKernel& kernel, std::size_t n_max, mpfr_prec_t precision = 128);
DeterminantSequence additive_toeplitz_dets(const AdditiveSymbol& symbol, std::size_t n_max,
                                           mpfr_prec_t precision = 128);

/// Dense hermitian matrix, 1-based, row-major.
struct ComplexMatrix {
  std::size_t n = 0;
  std::vector<Complex> entries;
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries[(i - 1) * n + (j - 1)]; }
};

ComplexMatrix build_multiplicative_matrix(const FractionKernel& kernel, std::size_t n, mpfr_prec_t precision = 128);

struct RatioMonotoneReport {
  MonotoneVerdict verdict;
  mpfr_prec_t precision = 0;
};

/// Checks n -> r_n multiplicatively decreasing (r_{kn} <= r_k) through
/// f(n) = -ln r_n with tolerance 2^{-prec/2} * max(1, |ln r_k + 1|).
RatioMonotoneReport check_ratio_mult_monotone(const DeterminantSequence& seq);

struct LogMeanReport {
  std::size_t n = 0;
  double ln_c1 = 0.0;
  /// (1/ln N) sum_{k<=N} (1/k) ln r_k.
  double logmean = 0.0;
  /// max over M in (N/10, N] of ln D_M / M.
  double root_proxy = 0.0;
  /// max(ln c(1), (H_N / ln N) ln c(1)), the finite-N form of ln c(1).
  double finite_bound = 0.0;
  bool bound_holds = true;
  std::vector<std::pair<std::size_t, double>> logmean_trace;
  std::vector<std::pair<std::size_t, double>> root_trace;
};

LogMeanReport logmean_summary(const DeterminantSequence& seq);

/// ln D_m for m = 1..n from the additive determinants at each prime:
/// ln D_n = sum_p sum_k floor(n/p^k) (ln rho_{k+1} - ln rho_k), rho_k the
/// Cholesky pivots of (sigma(p^{i-j})).
std::vector<Real> hilberdink_log_dets(const MultiplicativeSigma& sigma, std::size_t n, mpfr_prec_t precision = 128);
Real hilberdink_product_formula(const MultiplicativeSigma& sigma, std::size_t n, mpfr_prec_t precision = 128);

struct CmLimit {
  /// Enclosure of sum_p ln(1 - |sigma(p)|^2) / p.
  Interval log_limit;
  /// exp of the above: the limit of D_n^{1/n}.
  Interval limit;
  std::uint64_t prime_cutoff = 0;
  double partial_sum = 0.0;
  double tail_bound = 0.0;
  /// Tail estimated from the last dyadic block rather than an envelope.
  bool heuristic_tail = false;
  std::string method;
};

/// For completely multiplicative sigma with |sigma(p)| < 1. The envelope
/// defaults to sigma's own; without one the tail is heuristic.
CmLimit cm_limit(const MultiplicativeSigma& sigma, std::uint64_t prime_cutoff,
                 std::optional<DecayEnvelope> envelope = std::nullopt, mpfr_prec_t precision = 128);

struct FactorizationReport {
  std::size_t n = 0;
  std::string factor;
  std::string complement;
  /// Largest |c(i/j)| with different complement parts (must be 0).
  double max_cross_entry = 0.0;
  /// max_n |ln D_n - sum_{b<=n} ln G(A, n/b)|.
  double block_identity_error = 0.0;
  /// max_n |ln r_n - ln r_{a(n)}|.
  double ratio_identity_error = 0.0;
  std::size_t worst_block_n = 0;
  std::size_t worst_ratio_n = 0;
  bool holds = false;
  double tolerance = 0.0;
};

/// Checks, for a kernel supported on ratios of a multiplicatively closed
/// direct factor A: block orthogonality, D_n = prod_b G(A, n/b) and
/// r_n = r_{a(n)}. Support outside the ratio set is an error naming the
/// offending fraction.
FactorizationReport factorization_check(const IntegerSet& a, const FractionKernel& kernel, std::size_t n,
                                        mpfr_prec_t precision = 128);

struct SzegoReport {
  /// min of f(t) = sum_k c0(k) e^{2 pi i k t} over the sample grid.
  double sampled_min = 0.0;
  double sampled_max = 0.0;
  std::size_t samples = 0;
  /// f > 0 on the grid so the geometric-mean limit applies.
  bool limit_applicable = false;
  std::optional<double> geometric_mean;
  double quadrature_error = 0.0;
};

/// Samples the symbol of a finitely supported additive kernel and, when it
/// stays positive, computes exp(integral of ln f). A negative sample is an
/// error (the matrix family is then not positive-definite).
SzegoReport szego_symbol(const std::vector<GaussianRational>& coefficients, std::size_t samples = 4096);

}  // namespace multdet
