#include "multdet/log_means.hpp"

#include <algorithm>
#include <cmath>

#include "multdet/sieve.hpp"

namespace multdet {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kRoundoff = 8.0 * std::numeric_limits<double>::epsilon();

long double friable_total(double y) {
  const Rational m = mertens_product(y);
  return 1.0L / static_cast<long double>(m.get_d());
}

void require_lower_bound(const ArithmeticFunction& f) {
  if (!f.lower_bound)
    throw Error("log-means", "function '" + f.name + "' has no lower bound; alpha needs inf f > -inf");
}

// Enclosure of lambda * (T + tail), where T is the truncated weighted sum and
// the untruncated mass of 1/a lies in `tail`.
Interval combine(const Interval& lambda, long double weighted, long double magnitude, const Interval& tail,
                 const ArithmeticFunction& f) {
  const double lower_f = *f.lower_bound;
  const double t = static_cast<double>(weighted);
  const double slack = kRoundoff * static_cast<double>(magnitude) + kRoundoff * std::abs(t);
  const double tail_lo = std::min(lower_f * tail.lo, lower_f * tail.hi);
  double tail_hi = kInfinity;
  if (f.upper_bound) {
    const double u = *f.upper_bound;
    tail_hi = std::max(u * tail.lo, u * tail.hi);
  }
  const Interval inner = Interval{t + tail_lo - slack, t + tail_hi + slack}.outward();
  return lambda * inner;
}

}  // namespace

double ArithmeticFunction::operator()(std::uint64_t n) const {
  if (n == 0 || n > domain_limit)
    throw Error("log-means", "function '" + name + "' is defined on 1.." + std::to_string(domain_limit) +
                                 " only; asked n=" + std::to_string(n));
  return value(n);
}

ArithmeticFunction ArithmeticFunction::from_table(const ExactFunction& table) {
  auto values = std::make_shared<std::vector<double>>();
  values->reserve(table.limit());
  for (const Rational& v : table.values()) values->push_back(v.get_d());
  ArithmeticFunction f;
  f.name = table.provenance();
  f.domain_limit = table.limit();
  f.value = [values](std::uint64_t n) { return (*values)[n - 1]; };
  return f;
}

ArithmeticFunction ArithmeticFunction::constant(double c) {
  return {"const(" + std::to_string(c) + ")", [c](std::uint64_t) { return c; },
          std::numeric_limits<std::uint64_t>::max(), c, c};
}

ArithmeticFunction ArithmeticFunction::multiples_indicator(std::vector<std::uint64_t> generators) {
  std::string name = "1_M(";
  for (std::size_t i = 0; i < generators.size(); ++i) name += (i ? "," : "") + std::to_string(generators[i]);
  name += ")";
  return {name,
          [generators](std::uint64_t n) {
            return std::any_of(generators.begin(), generators.end(), [n](std::uint64_t a) { return n % a == 0; })
                       ? 1.0
                       : 0.0;
          },
          std::numeric_limits<std::uint64_t>::max(), 0.0, 1.0};
}

ArithmeticFunction ArithmeticFunction::distinct_primes() {
  return {"omega", [](std::uint64_t n) { return static_cast<double>(factorize_trial(n).size()); },
          std::numeric_limits<std::uint64_t>::max(), 0.0, std::nullopt};
}

ArithmeticFunction ArithmeticFunction::log() {
  return {"ln", [](std::uint64_t n) { return std::log(static_cast<double>(n)); },
          std::numeric_limits<std::uint64_t>::max(), 0.0, std::nullopt};
}

ArithmeticFunction ArithmeticFunction::truncated(const ArithmeticFunction& f, double cap) {
  ArithmeticFunction g = f;
  g.name = "min(" + f.name + "," + std::to_string(cap) + ")";
  g.value = [inner = f.value, cap](std::uint64_t n) { return std::min(inner(n), cap); };
  g.upper_bound = f.upper_bound ? std::min(*f.upper_bound, cap) : cap;
  if (g.lower_bound) g.lower_bound = std::min(*g.lower_bound, cap);
  return g;
}

ArithmeticFunction ArithmeticFunction::friable_reduced(const ArithmeticFunction& f, double y) {
  prime_bound(y);
  ArithmeticFunction g = f;
  g.name = f.name + ";y=" + std::to_string(y);
  g.value = [inner = f.value, y](std::uint64_t n) { return inner(friable_split(n, y).friable); };
  return g;
}

ArithmeticFunction ArithmeticFunction::negated() const {
  ArithmeticFunction g = *this;
  g.name = "-" + name;
  g.value = [inner = value](std::uint64_t n) { return -inner(n); };
  g.lower_bound = upper_bound ? std::optional<double>(-*upper_bound) : std::nullopt;
  g.upper_bound = lower_bound ? std::optional<double>(-*lower_bound) : std::nullopt;
  return g;
}

Rational mertens_product(double y) {
  const std::uint64_t bound = prime_bound(y);
  if (bound < 2) throw Error("log-means", "mertens_product needs y >= 2");
  Rational product(1);
  for (std::uint64_t p : primes_up_to(bound)) {
    const mpz_class prime(static_cast<unsigned long>(p));
    product *= Rational(prime - 1, prime);
  }
  product.canonicalize();
  return product;
}

std::uint64_t default_friable_truncation(double y, double tail_target, std::size_t max_terms) {
  const long double total = friable_total(y);
  std::uint64_t limit = 1024;
  while (true) {
    const auto members = enumerate_friable(y, limit, FriableWindow::friable);
    long double sum = 0.0L;
    for (auto it = members.rbegin(); it != members.rend(); ++it) sum += 1.0L / static_cast<long double>(*it);
    if (total - sum < tail_target || members.size() > max_terms / 2 || limit > (std::uint64_t{1} << 61)) return limit;
    limit *= 2;
  }
}

AlphaEstimate alpha_friable(const ArithmeticFunction& f, double y, std::uint64_t truncation) {
  require_lower_bound(f);
  if (truncation == 0) truncation = default_friable_truncation(y);
  truncation = std::min(truncation, f.domain_limit);
  const auto members = enumerate_friable(y, truncation, FriableWindow::friable);
  long double weighted = 0.0L;
  long double magnitude = 0.0L;
  long double mass = 0.0L;
  for (auto it = members.rbegin(); it != members.rend(); ++it) {
    const long double inv = 1.0L / static_cast<long double>(*it);
    const long double v = static_cast<long double>(f(*it));
    weighted += v * inv;
    magnitude += std::abs(v) * inv;
    mass += inv;
  }
  const long double total = friable_total(y);
  const double tail_mid = static_cast<double>(std::max(0.0L, total - mass));
  const double mass_slack = kRoundoff * static_cast<double>(total);
  const Interval tail{std::max(0.0, tail_mid - mass_slack), tail_mid + mass_slack};
  const double mertens = mertens_product(y).get_d();
  const Interval lambda = Interval::point(mertens).outward();

  AlphaEstimate estimate;
  estimate.value = combine(lambda, weighted, magnitude, tail, f);
  estimate.truncation = truncation;
  estimate.terms = members.size();
  estimate.tail_mass = tail;
  return estimate;
}

AlphaEstimate alpha_direct_factor(const ArithmeticFunction& f, const DirectFactorPair& pair, std::uint64_t truncation) {
  require_lower_bound(f);
  if (truncation == 0) truncation = pair.a().cap();
  truncation = std::min({truncation, f.domain_limit, pair.a().cap()});
  const auto members = pair.a().enumerate(truncation);
  long double weighted = 0.0L;
  long double magnitude = 0.0L;
  long double mass = 0.0L;
  for (auto it = members.rbegin(); it != members.rend(); ++it) {
    const long double inv = 1.0L / static_cast<long double>(*it);
    const long double v = static_cast<long double>(f(*it));
    weighted += v * inv;
    magnitude += std::abs(v) * inv;
    mass += inv;
  }
  const Interval& total = pair.inv_sum_a().value;
  const double m = static_cast<double>(mass);
  const double slack = kRoundoff * m;
  const Interval tail{std::max(0.0, total.lo - m - slack), total.upper_infinite() ? kInfinity : total.hi - m + slack};

  AlphaEstimate estimate;
  estimate.value = combine(pair.lambda(), weighted, magnitude, tail, f);
  estimate.truncation = truncation;
  estimate.terms = members.size();
  estimate.tail_mass = tail;
  return estimate;
}

std::vector<double> default_y_grid() { return {2, 3, 5, 7, 11, 13}; }
std::vector<double> default_x_grid() { return {1e3, 1e4, 1e5, 1e6}; }

void mean_traces(const ArithmeticFunction& f, const std::vector<double>& x_grid, std::vector<TracePoint>& cesaro,
                 std::vector<TracePoint>& logmean, DecadeProxy& cesaro_proxy, DecadeProxy& logmean_proxy) {
  if (x_grid.empty()) throw Error("log-means", "empty x grid");
  std::vector<double> grid = x_grid;
  std::sort(grid.begin(), grid.end());
  if (grid.front() < 2.0) throw Error("log-means", "trace grid points must be >= 2");
  const auto top = static_cast<std::uint64_t>(std::floor(grid.back()));
  if (top > f.domain_limit)
    throw Error("log-means", "x=" + std::to_string(top) + " beyond the domain of '" + f.name + "'");

  cesaro.clear();
  logmean.clear();
  const std::uint64_t decade_start = std::max<std::uint64_t>(2, top / 10 + 1);
  cesaro_proxy = {kInfinity, -kInfinity};
  logmean_proxy = {kInfinity, -kInfinity};
  long double sum = 0.0L;
  long double weighted = 0.0L;
  std::size_t next = 0;
  for (std::uint64_t n = 1; n <= top; ++n) {
    const long double v = static_cast<long double>(f(n));
    sum += v;
    weighted += v / static_cast<long double>(n);
    const double c = static_cast<double>(sum / static_cast<long double>(n));
    const double l = static_cast<double>(weighted / std::log(static_cast<long double>(n)));
    if (n >= decade_start) {
      cesaro_proxy.min = std::min(cesaro_proxy.min, c);
      cesaro_proxy.max = std::max(cesaro_proxy.max, c);
      logmean_proxy.min = std::min(logmean_proxy.min, l);
      logmean_proxy.max = std::max(logmean_proxy.max, l);
    }
    while (next < grid.size() && static_cast<std::uint64_t>(std::floor(grid[next])) == n) {
      // Means at real x use the sums over n <= x.
      const long double x = grid[next];
      cesaro.push_back({grid[next], static_cast<double>(sum / x)});
      logmean.push_back({grid[next], static_cast<double>(weighted / std::log(x))});
      ++next;
    }
  }
}

MeanReport alpha_limit_estimate(const ArithmeticFunction& f_in, const std::vector<double>& y_grid,
                                const std::vector<double>& x_grid, Direction direction) {
  if (y_grid.empty()) throw Error("log-means", "empty y grid");
  const ArithmeticFunction f = direction == Direction::increasing ? f_in : f_in.negated();
  const double top_x = *std::max_element(x_grid.begin(), x_grid.end());
  const std::uint64_t check_to = std::min<std::uint64_t>(static_cast<std::uint64_t>(top_x), f.domain_limit);

  // Monotonicity precondition in floating mode (53 bits).
  std::vector<Real> values;
  values.reserve(check_to);
  for (std::uint64_t n = 1; n <= check_to; ++n) values.emplace_back(f(n), 53);
  const MonotoneVerdict verdict = is_mult_monotone(RealFunction(std::move(values), f.name), Direction::increasing);
  if (!verdict.holds)
    throw Error("log-means", "'" + f_in.name + "' is not multiplicatively " +
                                 (direction == Direction::increasing ? "increasing" : "decreasing") + ": f(" +
                                 std::to_string(verdict.violation->first) + ") vs f(" +
                                 std::to_string(verdict.violation->second) + ")");

  ArithmeticFunction bounded = f;
  const double f1 = f(1);
  bounded.lower_bound = bounded.lower_bound ? std::max(*bounded.lower_bound, f1) : f1;

  MeanReport report;
  report.function = f_in.name;
  report.direction = direction;
  report.checked_to = check_to;
  mean_traces(f, x_grid, report.cesaro, report.logmean, report.cesaro_proxy, report.logmean_proxy);

  std::vector<double> ys = y_grid;
  std::sort(ys.begin(), ys.end());
  double best_lower = -kInfinity;
  for (double y : ys) {
    AlphaAtY entry{y, alpha_friable(bounded, y)};
    if (!report.alpha_y.empty()) {
      const Interval& prev = report.alpha_y.back().estimate.value;
      if (entry.estimate.value.hi < prev.lo) report.alpha_nondecreasing = false;
    }
    best_lower = std::max(best_lower, entry.estimate.value.lo);
    report.alpha_y.push_back(std::move(entry));
  }
  report.alpha_limit = {best_lower, bounded.upper_bound ? *bounded.upper_bound : kInfinity};

  if (direction == Direction::decreasing) {
    auto flip = [](std::vector<TracePoint>& trace) {
      for (auto& p : trace) p.value = -p.value;
    };
    flip(report.cesaro);
    flip(report.logmean);
    report.cesaro_proxy = {-report.cesaro_proxy.max, -report.cesaro_proxy.min};
    report.logmean_proxy = {-report.logmean_proxy.max, -report.logmean_proxy.min};
    for (auto& entry : report.alpha_y) entry.estimate.value = {-entry.estimate.value.hi, -entry.estimate.value.lo};
    report.alpha_limit = {-report.alpha_limit.hi, -report.alpha_limit.lo};
  }
  return report;
}

GapDiagnostics mean_gap_diagnostics(const ExactFunction& f, const std::vector<double>& x_grid,
                                    const std::vector<double>& y_grid) {
  const MonotoneVerdict verdict = is_mult_monotone(f, Direction::increasing);
  if (!verdict.holds)
    throw Error("log-means", "mean_gap_diagnostics needs a multiplicatively increasing function; violation at (" +
                                 std::to_string(verdict.violation->first) + "," +
                                 std::to_string(verdict.violation->second) + ")");
  ArithmeticFunction g = ArithmeticFunction::from_table(f);
  g.lower_bound = f(1).get_d();

  GapDiagnostics out;
  out.alpha_lower = -kInfinity;
  for (double y : y_grid) out.alpha_lower = std::max(out.alpha_lower, alpha_friable(g, y, f.limit()).value.lo);

  std::vector<TracePoint> cesaro;
  std::vector<TracePoint> logmean;
  DecadeProxy cp;
  DecadeProxy lp;
  mean_traces(g, x_grid, cesaro, logmean, cp, lp);
  for (std::size_t i = 0; i < cesaro.size(); ++i)
    out.rows.push_back({cesaro[i].x, cesaro[i].value, logmean[i].value, out.alpha_lower});

  const ExactFunction df = bougaief_derivative(f);
  if (std::all_of(df.values().begin(), df.values().end(), [](const Rational& v) { return sgn(v) >= 0; })) {
    long double mean = 0.0L;
    for (std::uint64_t m = f.limit(); m >= 1; --m)
      mean += static_cast<long double>(df(m).get_d()) / static_cast<long double>(m);
    out.derivative_mean = static_cast<double>(mean);
    out.derivative_gap = std::abs(cesaro.back().value - *out.derivative_mean);
  }
  return out;
}

FamilyReport monotone_family_alpha(const std::vector<ArithmeticFunction>& family, const ArithmeticFunction& supremum,
                                   const std::vector<double>& y_grid, const std::vector<double>& x_grid,
                                   std::uint64_t check_limit) {
  if (family.empty()) throw Error("log-means", "empty function family");
  for (std::size_t k = 0; k + 1 < family.size(); ++k) {
    for (std::uint64_t n = 1; n <= check_limit; ++n) {
      if (family[k](n) > family[k + 1](n))
        throw Error("log-means", "family is not nondecreasing in k: f_" + std::to_string(k + 1) + "(" +
                                     std::to_string(n) + ") > f_" + std::to_string(k + 2) + "(" + std::to_string(n) +
                                     ")");
    }
  }
  for (std::uint64_t n = 1; n <= check_limit; ++n)
    if (family.back()(n) > supremum(n))
      throw Error("log-means", "supremum is below the last family member at n=" + std::to_string(n));

  auto evaluate = [&](const ArithmeticFunction& f) {
    const MeanReport report = alpha_limit_estimate(f, y_grid, x_grid);
    return FamilyRow{f.name, report.alpha_limit.lo, report.alpha_y.back().estimate.value,
                     report.logmean.back().value, 0.0};
  };
  FamilyReport out;
  out.limit = evaluate(supremum);
  for (const ArithmeticFunction& f : family) {
    FamilyRow row = evaluate(f);
    row.gap_to_limit = out.limit.alpha_lower - row.alpha_lower;
    if (!out.members.empty() &&
        row.alpha_lower < out.members.back().alpha_lower - 1e-12 * (1.0 + std::abs(row.alpha_lower)))
      out.alpha_nondecreasing = false;
    out.members.push_back(std::move(row));
  }
  return out;
}

}  // namespace multdet
