#include "multdet/toeplitz.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "multdet/direct_factors.hpp"
#include "multdet/error.hpp"
#include "multdet/sieve.hpp"
#include "multdet/text.hpp"

namespace multdet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Escalate {};

std::size_t tri(std::size_t i) { return i * (i + 1) / 2; }

// One factorization attempt at a fixed precision. Throws Escalate when a
// pivot is too small and escalation is still allowed.
std::vector<Real> cholesky_pivots(const MatrixSource& source, std::size_t n_max, mpfr_prec_t prec, bool last) {
  auto entry = source.bind(n_max, prec);
  const bool real = source.real_valued;
  std::vector<Real> re, im;
  re.reserve(tri(n_max));
  if (!real) im.reserve(tri(n_max));
  std::vector<Real> pivots;
  pivots.reserve(n_max);
  Real acc_re(prec), acc_im(prec), running_max(prec);
  const Real threshold_scale = pow2(-static_cast<long>(prec / 2), prec);

  for (std::size_t i = 0; i < n_max; ++i) {
    const std::size_t row_i = tri(i);
    for (std::size_t j = 0; j < i; ++j) {
      const std::size_t row_j = tri(j);
      Complex a = entry(i + 1, j + 1);
      mpfr_set(acc_re.get(), a.re.get(), MPFR_RNDN);
      if (real) {
        for (std::size_t k = 0; k < j; ++k) {
          mpfr_fms(acc_re.get(), re[row_i + k].get(), re[row_j + k].get(), acc_re.get(), MPFR_RNDN);
          mpfr_neg(acc_re.get(), acc_re.get(), MPFR_RNDN);
        }
      } else {
        mpfr_set(acc_im.get(), a.im.get(), MPFR_RNDN);
        for (std::size_t k = 0; k < j; ++k) {
          // acc -= G[i][k] * conj(G[j][k])
          mpfr_srcptr xr = re[row_i + k].get(), xi = im[row_i + k].get();
          mpfr_srcptr yr = re[row_j + k].get(), yi = im[row_j + k].get();
          mpfr_fms(acc_re.get(), xr, yr, acc_re.get(), MPFR_RNDN);
          mpfr_neg(acc_re.get(), acc_re.get(), MPFR_RNDN);
          mpfr_fms(acc_re.get(), xi, yi, acc_re.get(), MPFR_RNDN);
          mpfr_neg(acc_re.get(), acc_re.get(), MPFR_RNDN);
          mpfr_fma(acc_im.get(), xr, yi, acc_im.get(), MPFR_RNDN);
          mpfr_fms(acc_im.get(), xi, yr, acc_im.get(), MPFR_RNDN);
          mpfr_neg(acc_im.get(), acc_im.get(), MPFR_RNDN);
        }
        // G[j][j] is real
        Real v(prec);
        mpfr_div(v.get(), acc_im.get(), re[row_j + j].get(), MPFR_RNDN);
        im.push_back(std::move(v));
      }
      Real v(prec);
      mpfr_div(v.get(), acc_re.get(), re[row_j + j].get(), MPFR_RNDN);
      re.push_back(std::move(v));
    }

    Complex a = entry(i + 1, i + 1);
    mpfr_set(acc_re.get(), a.re.get(), MPFR_RNDN);
    for (std::size_t k = 0; k < i; ++k) {
      mpfr_fms(acc_re.get(), re[row_i + k].get(), re[row_i + k].get(), acc_re.get(), MPFR_RNDN);
      mpfr_neg(acc_re.get(), acc_re.get(), MPFR_RNDN);
      if (!real) {
        mpfr_fms(acc_re.get(), im[row_i + k].get(), im[row_i + k].get(), acc_re.get(), MPFR_RNDN);
        mpfr_neg(acc_re.get(), acc_re.get(), MPFR_RNDN);
      }
    }
    const bool positive = acc_re.sign() > 0;
    const bool tiny = positive && i > 0 && acc_re < threshold_scale * running_max;
    if (!positive || tiny) {
      if (!last) throw Escalate{};
      throw NotPositiveDefinite(i + 1, "pivot " + acc_re.to_string(6) + " at " + std::to_string(prec) + " bits");
    }
    if (acc_re > running_max) running_max = acc_re;
    pivots.push_back(acc_re);
    re.push_back(sqrt(acc_re));
    if (!real) im.emplace_back(0.0, prec);
  }
  return pivots;
}

double harmonic(std::size_t n) {
  long double h = 0.0L;
  for (std::size_t k = n; k >= 1; --k) h += 1.0L / static_cast<long double>(k);
  return static_cast<double>(h);
}

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

}  // namespace

DeterminantSequence DeterminantSequence::from_ratios(std::vector<Real> ratios, std::string source, int escalations) {
  if (ratios.empty()) throw Error("toeplitz", "empty determinant sequence");
  DeterminantSequence seq;
  seq.precision_ = ratios.front().precision();
  seq.escalations_ = escalations;
  seq.source_ = std::move(source);
  Real running(seq.precision_), total(seq.precision_);
  for (std::size_t n = 0; n < ratios.size(); ++n) {
    const Real& r = ratios[n];
    if (r.sign() <= 0) throw NotPositiveDefinite(n + 1, "ratio " + r.to_string(6) + " is not positive");
    if (r > running) running = r;
    seq.pivot_floor_ = std::min(seq.pivot_floor_, (r / running).to_double());
    Real l = log(r);
    total += l;
    seq.log_ratios_.push_back(std::move(l));
    seq.log_dets_.push_back(total);
  }
  seq.ratios_ = std::move(ratios);
  return seq;
}

const Real& DeterminantSequence::ratio(std::size_t n) const {
  if (n == 0 || n > ratios_.size()) throw Error("toeplitz", "index " + std::to_string(n) + " outside 1.." + std::to_string(ratios_.size()));
  return ratios_[n - 1];
}

const Real& DeterminantSequence::log_ratio(std::size_t n) const {
  ratio(n);
  return log_ratios_[n - 1];
}

const Real& DeterminantSequence::log_det(std::size_t n) const {
  ratio(n);
  return log_dets_[n - 1];
}

Real DeterminantSequence::determinant(std::size_t n) const { return exp(log_det(n)); }

DeterminantSequence incremental_cholesky_dets(const MatrixSource& source, std::size_t n_max, mpfr_prec_t precision,
                                              const CholeskyOptions& options) {
  if (n_max == 0) throw Error("toeplitz", "matrix size must be positive");
  if (precision < 53) throw Error("toeplitz", "precision must be at least 53 bits");
  mpfr_prec_t prec = precision;
  for (int attempt = 0;; ++attempt) {
    const bool last = attempt >= options.max_escalations;
    try {
      return DeterminantSequence::from_ratios(cholesky_pivots(source, n_max, prec, last), source.description, attempt);
    } catch (const Escalate&) {
      prec *= 2;
    }
  }
}

DeterminantSequence multiplicative_dets(const FractionKernel& kernel, std::size_t n_max, mpfr_prec_t precision) {
  return incremental_cholesky_dets(multiplicative_source(kernel), n_max, precision);
}

DeterminantSequence additive_toeplitz_dets(const AdditiveSymbol& symbol, std::size_t n_max, mpfr_prec_t precision) {
  return incremental_cholesky_dets(additive_source(symbol), n_max, precision);
}

ComplexMatrix build_multiplicative_matrix(const FractionKernel& kernel, std::size_t n, mpfr_prec_t precision) {
  auto entry = multiplicative_source(kernel).bind(n, precision);
  ComplexMatrix m;
  m.n = n;
  m.entries.assign(n * n, Complex(precision));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) {
      // upper triangle from c(i/j) = conj c(j/i); the lower one mirrors it
      Complex v = entry(j, i).conj();
      if (i == j) v.im = Real(precision);
      m.entries[(j - 1) * n + (i - 1)] = v.conj();
      m.entries[(i - 1) * n + (j - 1)] = std::move(v);
    }
  return m;
}

RatioMonotoneReport check_ratio_mult_monotone(const DeterminantSequence& seq) {
  const mpfr_prec_t prec = seq.precision_bits();
  std::vector<Real> values;
  values.reserve(seq.size());
  for (std::size_t n = 1; n <= seq.size(); ++n) values.push_back(-seq.log_ratio(n));
  RealFunction f(std::move(values), "-ln r_n");
  const Real scale = pow2(-static_cast<long>(prec / 2), prec);
  const Real one(1.0, prec);
  Tolerance tolerance = [scale, one](const Real& fk) {
    Real w = abs(one - fk);  // |ln r_k + 1|
    if (w < one) w = one;
    return scale * w;
  };
  return {is_mult_monotone(f, Direction::increasing, tolerance), prec};
}

LogMeanReport logmean_summary(const DeterminantSequence& seq) {
  LogMeanReport rep;
  const std::size_t n = seq.size();
  rep.n = n;
  rep.ln_c1 = seq.log_ratio(1).to_double();
  const mpfr_prec_t prec = seq.precision_bits();

  Real weighted(prec);
  std::size_t next_trace = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    weighted += seq.log_ratio(k) / Real(static_cast<double>(k), prec);
    if (k == next_trace || k == n) {
      const double lm = k == 1 ? seq.log_ratio(1).to_double() : weighted.to_double() / std::log(static_cast<double>(k));
      rep.logmean_trace.emplace_back(k, lm);
      rep.root_trace.emplace_back(k, seq.log_det(k).to_double() / static_cast<double>(k));
      if (k == next_trace) next_trace *= 2;
    }
  }
  rep.logmean = rep.logmean_trace.back().second;

  double proxy = -kInf;
  for (std::size_t m = n / 10 + 1; m <= n; ++m)
    proxy = std::max(proxy, seq.log_det(m).to_double() / static_cast<double>(m));
  rep.root_proxy = proxy;

  const double stretch = n == 1 ? 1.0 : harmonic(n) / std::log(static_cast<double>(n));
  rep.finite_bound = std::max(rep.ln_c1, stretch * rep.ln_c1);
  rep.bound_holds = rep.logmean <= rep.finite_bound + 1e-9;
  return rep;
}

std::vector<Real> hilberdink_log_dets(const MultiplicativeSigma& sigma, std::size_t n, mpfr_prec_t precision) {
  if (n == 0) throw Error("toeplitz", "n must be positive");
  const Complex one = sigma(1, precision);
  if (!(one.re == Real(1.0, precision)) || !one.is_real()) throw Error("toeplitz", "sigma(1) must be 1");

  // ln r_m = sum over p^k | m of (ln rho_{k+1}(p) - ln rho_k(p))
  std::vector<Real> log_ratio(n + 1, Real(precision));
  for (std::uint64_t p : primes_up_to(n)) {
    unsigned top = 0;
    for (std::uint64_t q = p; q <= n; q *= p) ++top;
    AdditiveSymbol local(
        "sigma(p^m), p=" + std::to_string(p),
        [&sigma, p](std::uint64_t, mpfr_prec_t prec) -> AdditiveSymbol::LagEvaluator {
          return [&sigma, p, prec](std::uint64_t m) { return sigma.prime_power(p, static_cast<unsigned>(m), prec); };
        },
        sigma.real_valued());
    DeterminantSequence delta = [&] {
      try {
        return additive_toeplitz_dets(local, top + 1, precision);
      } catch (const NotPositiveDefinite& e) {
        throw Error("toeplitz", "kernel not PD at prime p=" + std::to_string(p) + ", level k=" + std::to_string(e.index()));
      }
    }();
    std::uint64_t q = p;
    for (unsigned k = 1; k <= top; ++k, q *= p) {
      Real w = delta.log_ratio(k + 1) - delta.log_ratio(k);
      for (std::uint64_t m = q; m <= n; m += q) log_ratio[m] += w;
    }
  }
  std::vector<Real> out;
  out.reserve(n);
  Real total = one.re;
  total = log(total);
  for (std::size_t m = 1; m <= n; ++m) {
    total += log_ratio[m];
    out.push_back(total);
  }
  return out;
}

Real hilberdink_product_formula(const MultiplicativeSigma& sigma, std::size_t n, mpfr_prec_t precision) {
  return hilberdink_log_dets(sigma, n, precision).back();
}

CmLimit cm_limit(const MultiplicativeSigma& sigma, std::uint64_t prime_cutoff, std::optional<DecayEnvelope> envelope,
                 mpfr_prec_t precision) {
  if (!sigma.completely_multiplicative()) throw Error("toeplitz", "cm_limit needs a completely multiplicative sigma");
  if (prime_cutoff < 2) throw Error("toeplitz", "prime cutoff must be at least 2");
  if (!envelope) envelope = sigma.envelope();

  CmLimit out;
  out.prime_cutoff = prime_cutoff;
  const Real one(1.0, precision);
  Real sum(precision), upper_half(precision), lower_half(precision);
  for (std::uint64_t p : primes_up_to(prime_cutoff)) {
    Real x = sigma.prime_power(p, 1, precision).norm();
    if (x >= one) throw Error("toeplitz", "|sigma(p)| >= 1 at p=" + std::to_string(p));
    if (x.is_zero()) continue;
    Real term = log(one - x) / Real(static_cast<double>(p), precision);
    sum += term;
    if (4 * p > prime_cutoff) (2 * p > prime_cutoff ? upper_half : lower_half) += term;
  }
  out.partial_sum = sum.to_double();

  double tail = kInf;
  if (envelope) {
    const double c2 = envelope->constant * envelope->constant;
    const double theta = envelope->exponent;
    if (c2 == 0.0) {
      tail = 0.0;
      out.method = "envelope C=0";
    } else if (theta > 0.0) {
      const double decay = std::pow(static_cast<double>(prime_cutoff), -2.0 * theta);
      const double xbar = c2 * decay;
      if (xbar < 1.0) tail = up(c2 / (1.0 - xbar) * decay / (2.0 * theta) * (1.0 + 1e-12));
      out.method = "envelope C=" + format_real(envelope->constant) + ",theta=" + format_real(theta);
    } else {
      out.method = "envelope without decay (asymptotic: lower end 0)";
    }
  } else {
    out.heuristic_tail = true;
    const double a = lower_half.to_double(), b = upper_half.to_double();
    const double ratio = a != 0.0 ? b / a : 0.0;
    if (ratio >= 0.0 && ratio < 1.0) tail = std::abs(b) * ratio / (1.0 - ratio);
    out.method = "heuristic dyadic tail";
  }
  out.tail_bound = tail;
  // every term is <= 0, so the partial sum is an upper end
  out.log_limit = Interval{std::isinf(tail) ? -kInf : down(out.partial_sum - tail), up(out.partial_sum)};
  out.limit = Interval{std::isinf(tail) ? 0.0 : down(std::exp(out.log_limit.lo)), up(std::exp(out.log_limit.hi))};
  out.log_limit.hi = std::min(out.log_limit.hi, 0.0);
  out.limit.hi = std::min(out.limit.hi, 1.0);
  return out;
}

FactorizationReport factorization_check(const IntegerSet& a_in, const FractionKernel& kernel, std::size_t n,
                                        mpfr_prec_t precision) {
  if (n == 0) throw Error("toeplitz", "n must be positive");
  const IntegerSet a = a_in.cap() < n ? a_in.with_cap(n) : a_in;
  if (!a.multiplication_closed()) throw Error("toeplitz", "A=" + a.describe() + " is not stable under multiplication");
  const DirectFactorPair pair = DirectFactorPair::with_complement(a, n);

  FactorizationReport rep;
  rep.n = n;
  rep.factor = a.describe();
  rep.complement = pair.b().describe();
  rep.tolerance = 1e-10;

  // support must stay inside A/A
  auto ev = kernel.bind(n, precision);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  auto in_ratio_set = [&](std::uint64_t x, std::uint64_t y) {
    const std::uint64_t top = std::max(x, y);
    const std::uint64_t reach = std::min<std::uint64_t>(a.cap() / top, std::max<std::uint64_t>(n, 1000000));
    for (std::uint64_t g = 1; g <= reach; ++g)
      if (a.contains(x * g) && a.contains(y * g)) return true;
    return false;
  };
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const std::uint64_t g = std::gcd<std::uint64_t>(i, j);
      const std::uint64_t x = i / g, y = j / g;
      if (!seen.insert({x, y}).second) continue;
      Complex v = ev(x, y);
      if ((!v.re.is_zero() || !v.im.is_zero()) && !in_ratio_set(x, y))
        throw Error("toeplitz", "kernel support leaks outside A/A at " + std::to_string(x) + "/" + std::to_string(y));
    }

  const auto b_part = [&](std::size_t m) { return m / pair.a_part(m); };
  auto entry = multiplicative_source(kernel).bind(n, precision);
  for (std::size_t i = 2; i <= n; ++i)
    for (std::size_t j = 1; j < i; ++j)
      if (b_part(i) != b_part(j)) {
        Complex v = entry(i, j);
        rep.max_cross_entry = std::max(rep.max_cross_entry, std::sqrt(v.norm().to_double()));
      }

  const DeterminantSequence full = multiplicative_dets(kernel, n, precision);
  const std::vector<std::uint64_t> a_elems = a.enumerate(n);
  const DeterminantSequence gram = incremental_cholesky_dets(indexed_source(kernel, a_elems), a_elems.size(), precision);
  const std::vector<std::uint64_t> b_elems = pair.b().enumerate(n);

  for (std::size_t t = 1; t <= n; ++t) {
    Real block(precision);
    for (std::uint64_t b : b_elems) {
      if (b > t) break;
      const std::uint64_t bound = t / b;
      const std::size_t count =
          static_cast<std::size_t>(std::upper_bound(a_elems.begin(), a_elems.end(), bound) - a_elems.begin());
      if (count) block += gram.log_det(count);
    }
    const double err = abs(full.log_det(t) - block).to_double();
    if (err > rep.block_identity_error) {
      rep.block_identity_error = err;
      rep.worst_block_n = t;
    }
    const double rerr = abs(full.log_ratio(t) - full.log_ratio(pair.a_part(t))).to_double();
    if (rerr > rep.ratio_identity_error) {
      rep.ratio_identity_error = rerr;
      rep.worst_ratio_n = t;
    }
  }
  rep.holds = rep.max_cross_entry <= rep.tolerance && rep.block_identity_error <= rep.tolerance &&
              rep.ratio_identity_error <= rep.tolerance;
  return rep;
}

SzegoReport szego_symbol(const std::vector<GaussianRational>& coefficients, std::size_t samples) {
  if (coefficients.empty()) throw Error("toeplitz", "symbol needs at least c0(0)");
  if (!coefficients[0].is_real()) throw Error("toeplitz", "c0(0) must be real");
  if (samples < 16) samples = 16;
  std::vector<double> re, im;
  for (const auto& c : coefficients) {
    re.push_back(to_double(c.re));
    im.push_back(to_double(c.im));
  }
  const double two_pi = 2.0 * M_PI;
  auto f = [&](double t) {
    double s = re[0];
    for (std::size_t k = 1; k < re.size(); ++k) {
      const double th = two_pi * static_cast<double>(k) * t;
      s += 2.0 * (re[k] * std::cos(th) - im[k] * std::sin(th));
    }
    return s;
  };

  SzegoReport rep;
  rep.samples = samples;
  rep.sampled_min = kInf;
  rep.sampled_max = -kInf;
  double worst_t = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(samples);
    const double v = f(t);
    if (v < rep.sampled_min) {
      rep.sampled_min = v;
      worst_t = t;
    }
    rep.sampled_max = std::max(rep.sampled_max, v);
  }
  const double scale = std::max(1.0, std::abs(rep.sampled_max));
  if (rep.sampled_min < -1e-12 * scale)
    throw Error("toeplitz", "symbol is negative at t=" + format_real(worst_t) + " (f=" + format_real(rep.sampled_min) + ")");
  rep.limit_applicable = rep.sampled_min > 1e-9 * scale;
  if (rep.limit_applicable) {
    double err = 0.0;
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double t) { return std::log(f(t)); }, 0.0, 1.0, 15, 1e-14, &err);
    rep.geometric_mean = std::exp(integral);
    rep.quadrature_error = err;
  }
  return rep;
}

}  // namespace multdet
