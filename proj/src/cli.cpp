#include "multdet/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "multdet/arith.hpp"
#include "multdet/direct_factors.hpp"
#include "multdet/error.hpp"
#include "multdet/kernel_spec.hpp"
#include "multdet/log_means.hpp"
#include "multdet/reports.hpp"
#include "multdet/text.hpp"
#include "multdet/toeplitz.hpp"

namespace multdet {

namespace {

// raw option text, validated after CLI11 is done
struct RawOptions {
  std::string n, grid_y, grid_x, precision, format, prime_cutoff, truncation, tail, samples, direction;
};

std::uint64_t positive_u64(const std::string& text, const std::string& flag) {
  std::uint64_t v = 0;
  if (!parse_u64(text, v) || v == 0) throw UsageError(flag + " needs a positive integer, got '" + text + "'");
  return v;
}

std::vector<double> grid(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const std::string& token : split(text, ',')) {
    double v = 0.0;
    if (!parse_double(token, v) || !(v > 0) || !std::isfinite(v))
      throw UsageError(flag + " has a bad value '" + token + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(flag + " is empty");
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + format_real(values[i]);
  return out;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

std::uint64_t grid_cap(const std::vector<double>& v) { return static_cast<std::uint64_t>(std::floor(max_of(v))); }

std::string fixed(const Real& x) { return x.to_string(x.decimal_digits()); }

void emit_json(std::ostream& out, const CommandConfig& cfg, Json body) {
  Json doc;
  Json config;
  for (const auto& [k, v] : cfg.entries) config[k] = v;
  doc["config"] = config;
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  out << doc.dump(2) << "\n";
}

ExactFunction exact_input(const CommandConfig& cfg) {
  if (!cfg.table.empty()) {
    std::ifstream in(cfg.table);
    if (!in) throw Error("arith", "cannot open " + cfg.table);
    ExactFunction f = read_exact_csv(in, cfg.table);
    if (f.limit() < cfg.n)
      throw Error("arith", cfg.table + " covers 1.." + std::to_string(f.limit()) + ", asked n=" + std::to_string(cfg.n));
    std::vector<Rational> head(f.values().begin(), f.values().begin() + static_cast<std::ptrdiff_t>(cfg.n));
    return ExactFunction(std::move(head), cfg.table);
  }
  const IntegerSet set = parse_set_or_usage(cfg.set, cfg.n);
  return set.kind() == IntegerSet::Kind::multiples ? set_of_multiples_indicator(set, cfg.n) : set_indicator(set, cfg.n);
}

int cmd_derive(const CommandConfig& cfg, std::ostream& out) {
  const ExactFunction f = exact_input(cfg);
  const ExactFunction g = cfg.inverse ? bougaief_integral(f) : bougaief_derivative(f);
  if (cfg.format == "json") {
    Json values = Json::array();
    for (const Rational& v : g.values()) values.push_back(format_rational(v));
    emit_json(out, cfg, Json{{"values", values}});
  } else {
    out << cfg.header();
    write_csv(out, g);
  }
  return 0;
}

int cmd_monotone(const CommandConfig& cfg, std::ostream& out) {
  const ExactFunction f = exact_input(cfg);
  const Direction dir = cfg.direction == "decreasing" ? Direction::decreasing : Direction::increasing;
  const MonotoneVerdict v = is_mult_monotone(f, dir);
  if (cfg.format == "csv") {
    out << cfg.header() << "holds,k,n,worst_margin,checked_to\n";
    out << (v.holds ? 1 : 0) << "," << (v.violation ? std::to_string(v.violation->first) : "") << ","
        << (v.violation ? std::to_string(v.violation->second) : "") << "," << format_real(v.worst_margin) << ","
        << v.limit << "\n";
  } else {
    emit_json(out, cfg, Json{{"verdict", to_json(v)}});
  }
  return 0;
}

int cmd_density(const CommandConfig& cfg, std::ostream& out) {
  const std::uint64_t cap = grid_cap(cfg.xgrid);
  const IntegerSet a = parse_set_or_usage(cfg.factor, cap);
  InverseSumOptions options;
  options.truncation = cfg.truncation;
  options.proven_tail = cfg.tail;
  const DirectFactorPair pair = DirectFactorPair::with_complement(a, cap, options);
  const auto rows = esv_density(pair, cfg.xgrid);
  if (cfg.format == "json") {
    Json table = Json::array();
    for (const auto& r : rows)
      table.push_back(Json{{"x", json_number(r.x)},
                           {"empirical", json_number(r.empirical)},
                           {"lambda", to_json(r.lambda)},
                           {"heuristic_tail", r.heuristic_tail}});
    emit_json(out, cfg, Json{{"complement", pair.b().describe()}, {"inverse_sum", to_json(pair.inv_sum_a())}, {"rows", table}});
    return 0;
  }
  out << cfg.header() << "x,empirical,lambda_lo,lambda_hi,heuristic_tail\n";
  for (const auto& r : rows)
    out << format_real(r.x) << "," << format_real(r.empirical) << "," << format_real(r.lambda.lo) << ","
        << format_real(r.lambda.hi) << "," << (r.heuristic_tail ? "true" : "false") << "\n";
  return 0;
}

int cmd_alpha(const CommandConfig& cfg, std::ostream& out) {
  const std::uint64_t cap = grid_cap(cfg.xgrid);
  const FunctionSpec fs = parse_function_spec(cfg.function.empty() ? "indicator:" + cfg.set : cfg.function);
  const ArithmeticFunction f = build_function(fs, cap);
  const Direction dir = cfg.direction == "decreasing" ? Direction::decreasing : Direction::increasing;

  if (!cfg.factor.empty()) {
    const IntegerSet a = parse_set_or_usage(cfg.factor, cap);
    const DirectFactorPair pair = DirectFactorPair::with_complement(a, cap);
    const AlphaEstimate est = alpha_direct_factor(f, pair, cfg.truncation);
    if (cfg.format == "csv") {
      out << cfg.header() << "section,param,lo,hi\n";
      out << "alpha_A," << a.describe() << "," << format_real(est.value.lo) << "," << format_real(est.value.hi) << "\n";
    } else {
      emit_json(out, cfg, Json{{"function", f.name}, {"factor", a.describe()}, {"alpha", to_json(est)}});
    }
    return 0;
  }

  const MeanReport rep = alpha_limit_estimate(f, cfg.ygrid, cfg.xgrid, dir);
  if (cfg.format == "csv") {
    out << cfg.header() << "section,param,lo,hi\n";
    for (const auto& a : rep.alpha_y)
      out << "alpha_y," << format_real(a.y) << "," << format_real(a.estimate.value.lo) << ","
          << format_real(a.estimate.value.hi) << "\n";
    for (const auto& p : rep.cesaro)
      out << "cesaro," << format_real(p.x) << "," << format_real(p.value) << "," << format_real(p.value) << "\n";
    for (const auto& p : rep.logmean)
      out << "logmean," << format_real(p.x) << "," << format_real(p.value) << "," << format_real(p.value) << "\n";
    out << "alpha_limit,," << format_real(rep.alpha_limit.lo) << "," << format_real(rep.alpha_limit.hi) << "\n";
  } else {
    emit_json(out, cfg, to_json(rep));
  }
  return 0;
}

DeterminantSequence kernel_dets(const KernelSpec& spec, std::uint64_t n, mpfr_prec_t prec) {
  if (spec.additive()) return additive_toeplitz_dets(build_additive_symbol(spec), n, prec);
  return multiplicative_dets(build_fraction_kernel(spec, n), n, prec);
}

int cmd_det(const CommandConfig& cfg, std::ostream& out) {
  const KernelSpec spec = parse_kernel_spec(cfg.kernel);
  const DeterminantSequence seq = kernel_dets(spec, cfg.n, cfg.precision);
  if (cfg.format == "json") {
    Json rows = Json::array();
    for (std::size_t k = 1; k <= seq.size(); ++k)
      rows.push_back(Json{{"n", k}, {"ln_D", fixed(seq.log_det(k))}, {"r", fixed(seq.ratio(k))}, {"ln_r", fixed(seq.log_ratio(k))}});
    emit_json(out, cfg, Json{{"precision_bits", seq.precision_bits()}, {"escalations", seq.escalations()},
                             {"pivot_floor", json_number(seq.pivot_floor())}, {"rows", rows}});
    return 0;
  }
  out << cfg.header() << "n,ln_D,r,ln_r,precision_bits\n";
  for (std::size_t k = 1; k <= seq.size(); ++k)
    out << k << "," << fixed(seq.log_det(k)) << "," << fixed(seq.ratio(k)) << "," << fixed(seq.log_ratio(k)) << ","
        << seq.precision_bits() << "\n";
  return 0;
}

int cmd_product(const CommandConfig& cfg, std::ostream& out) {
  const KernelSpec spec = parse_kernel_spec(cfg.kernel);
  if (spec.family != KernelSpec::Family::hilberdink) throw UsageError("product needs a hilberdink kernel");
  const MultiplicativeSigma sigma = build_sigma(spec);
  const std::vector<Real> logs = hilberdink_log_dets(sigma, cfg.n, cfg.precision);
  std::optional<DeterminantSequence> chol;
  if (cfg.compare) chol = multiplicative_dets(hilberdink_kernel(sigma), cfg.n, cfg.precision);
  std::optional<CmLimit> limit;
  if (cfg.prime_cutoff) limit = cm_limit(sigma, cfg.prime_cutoff, std::nullopt, cfg.precision);

  auto diff = [&](std::size_t k) {
    const Real& a = logs[k - 1];
    const Real& b = chol->log_det(k);
    return abs(a - b).to_double();
  };
  if (cfg.format == "json") {
    Json rows = Json::array();
    for (std::size_t k = 1; k <= logs.size(); ++k) {
      Json row{{"n", k}, {"ln_D_product", fixed(logs[k - 1])}};
      if (chol) {
        row["ln_D_cholesky"] = fixed(chol->log_det(k));
        row["abs_diff"] = json_number(diff(k));
      }
      rows.push_back(row);
    }
    Json body{{"rows", rows}};
    if (limit) body["cm_limit"] = to_json(*limit);
    emit_json(out, cfg, body);
    return 0;
  }
  out << cfg.header() << (chol ? "n,ln_D_product,ln_D_cholesky,abs_diff\n" : "n,ln_D_product\n");
  for (std::size_t k = 1; k <= logs.size(); ++k) {
    out << k << "," << fixed(logs[k - 1]);
    if (chol) out << "," << fixed(chol->log_det(k)) << "," << format_real(diff(k));
    out << "\n";
  }
  if (limit)
    out << "# cm_limit: log_lo=" << format_real(limit->log_limit.lo) << " log_hi=" << format_real(limit->log_limit.hi)
        << " lo=" << format_real(limit->limit.lo) << " hi=" << format_real(limit->limit.hi)
        << " heuristic_tail=" << (limit->heuristic_tail ? "true" : "false") << "\n";
  return 0;
}

int cmd_prop29(const CommandConfig& cfg, std::ostream& out) {
  const KernelSpec spec = parse_kernel_spec(cfg.kernel);
  const DeterminantSequence seq = kernel_dets(spec, cfg.n, cfg.precision);
  const LogMeanReport rep = logmean_summary(seq);
  if (cfg.format == "csv") {
    out << cfg.header() << "n,logmean,root\n";
    for (std::size_t i = 0; i < rep.logmean_trace.size(); ++i)
      out << rep.logmean_trace[i].first << "," << format_real(rep.logmean_trace[i].second) << ","
          << format_real(rep.root_trace[i].second) << "\n";
    return 0;
  }
  Json body = to_json(rep);
  body["kernel"] = spec.normalized();
  body["precision_bits"] = seq.precision_bits();
  emit_json(out, cfg, body);
  return 0;
}

int cmd_prop30(const CommandConfig& cfg, std::ostream& out) {
  const KernelSpec spec = parse_kernel_spec(cfg.kernel);
  const IntegerSet a = parse_set_or_usage(cfg.factor, cfg.n);
  const FactorizationReport rep = factorization_check(a, build_fraction_kernel(spec, cfg.n), cfg.n, cfg.precision);
  if (cfg.format == "csv") {
    out << cfg.header() << "check,value\n";
    out << "max_cross_entry," << format_real(rep.max_cross_entry) << "\n";
    out << "block_identity_error," << format_real(rep.block_identity_error) << "\n";
    out << "ratio_identity_error," << format_real(rep.ratio_identity_error) << "\n";
    out << "holds," << (rep.holds ? 1 : 0) << "\n";
    return 0;
  }
  Json body = to_json(rep);
  body["kernel"] = spec.normalized();
  emit_json(out, cfg, body);
  return 0;
}

int cmd_szego(const CommandConfig& cfg, std::ostream& out) {
  const auto coeffs = parse_coefficients(cfg.coeffs);
  const SzegoReport rep = szego_symbol(coeffs, cfg.samples);
  std::optional<double> root;
  if (cfg.n) {
    const DeterminantSequence seq = additive_toeplitz_dets(AdditiveSymbol::from_coefficients(coeffs), cfg.n, cfg.precision);
    root = std::exp(seq.log_det(cfg.n).to_double() / static_cast<double>(cfg.n));
  }
  if (cfg.format == "csv") {
    out << cfg.header() << "key,value\n";
    out << "sampled_min," << format_real(rep.sampled_min) << "\n";
    out << "limit_applicable," << (rep.limit_applicable ? 1 : 0) << "\n";
    out << "geometric_mean," << (rep.geometric_mean ? format_real(*rep.geometric_mean) : "") << "\n";
    if (root) out << "root_n," << format_real(*root) << "\n";
    return 0;
  }
  Json body = to_json(rep);
  Json c = Json::array();
  for (const auto& z : coeffs)
    c.push_back(z.is_real() ? format_rational(z.re) : format_rational(z.re) + ":" + format_rational(z.im));
  body["coefficients"] = c;
  if (root) {
    body["root_n"] = json_number(*root);
    if (rep.geometric_mean) body["root_minus_limit"] = json_number(*root - *rep.geometric_mean);
  }
  emit_json(out, cfg, body);
  return 0;
}

}  // namespace

std::string CommandConfig::header() const {
  std::string out = "# config:";
  for (const auto& [k, v] : entries) out += " " + k + "=" + v;
  return out + "\n";
}

std::string grammar_help() {
  return R"(Sets (--set, --A):
  all  powers:p  squares  squarefree  friable:y  sifted:y  window:y,z
  coprime:m  list:a,b,...  multiples:a,b,...

Functions (--function):
  indicator:SET  omega  omega-min:K  log  const:c  table:FILE (n,value CSV)

Kernels (--kernel):
  identity
  hilberdink:sigma=recip | sigma=cm,s=S | sigma=const,v=V | sigma=sqfree,v=V
  hilberdink:sigma=table,FILE          (rows p,k,re[,im])
  dfactor:A=SET,q=Q | dfactor:A=SET,table=FILE   (rows num,den,re[,im])
  table:file=FILE                      (rows num,den,re[,im])
  additive:coeffs=c0,c1,...            (entry re or re:im)

Exit status: 0 success, 1 runtime failure, 2 usage error.
)";
}

ParseOutcome parse_args(const std::vector<std::string>& args) {
  CommandConfig cfg;
  RawOptions raw;
  CLI::App app{"Multiplicative Toeplitz determinants and logarithmic means", "multdet"};
  app.require_subcommand(1, 1);
  app.footer(grammar_help());

  auto add_n = [&](CLI::App* sub, const std::string& help) { sub->add_option("--n", raw.n, help); };
  auto add_precision = [&](CLI::App* sub) { sub->add_option("--precision", raw.precision, "bits (>= 53, default 128)"); };

  auto* derive = app.add_subcommand("derive", "Bougaief derivative f*mu of a set indicator or table");
  derive->add_option("--set", cfg.set, "set whose indicator is f");
  derive->add_option("--table", cfg.table, "exact n,value CSV");
  derive->add_flag("--inverse", cfg.inverse, "sum over divisors instead");
  add_n(derive, "tabulation bound (default 100)");

  auto* monotone = app.add_subcommand("monotone", "Multiplicative monotonicity scan");
  monotone->add_option("--set", cfg.set, "set whose indicator is f");
  monotone->add_option("--table", cfg.table, "exact n,value CSV");
  monotone->add_option("--direction", raw.direction, "increasing or decreasing");
  add_n(monotone, "tabulation bound (default 1000)");

  auto* density = app.add_subcommand("density", "Density of the complementary factor against (sum 1/a)^-1");
  density->add_option("--A", cfg.factor, "direct factor A")->required();
  density->add_option("--xgrid", raw.grid_x, "x values (default 1e3,1e4,1e5,1e6)");
  density->add_option("--truncation", raw.truncation, "truncation of sum 1/a for generic sets");
  density->add_option("--tail", raw.tail, "proven bound on the tail of sum 1/a");

  auto* alpha = app.add_subcommand("alpha", "Logarithmic mean value via alpha(f;y)");
  alpha->add_option("--set", cfg.set, "f = indicator of SET");
  alpha->add_option("--function", cfg.function, "f by name");
  alpha->add_option("--A", cfg.factor, "compute alpha(f;A) for a direct factor instead");
  alpha->add_option("--ygrid", raw.grid_y, "y values (default 2,3,5,7,11,13)");
  alpha->add_option("--xgrid", raw.grid_x, "x values (default 1e3,1e4,1e5,1e6)");
  alpha->add_option("--direction", raw.direction, "increasing or decreasing");
  alpha->add_option("--truncation", raw.truncation, "truncation for alpha(f;A)");

  auto* det = app.add_subcommand("det", "Leading determinants by incremental Cholesky");
  det->add_option("--kernel", cfg.kernel, "kernel spec")->required();
  add_n(det, "matrix size (default 64)");
  add_precision(det);

  auto* product = app.add_subcommand("product", "Hilberdink product formula (optionally against Cholesky)");
  product->add_option("--kernel", cfg.kernel, "hilberdink kernel spec")->required();
  product->add_option("--P", raw.prime_cutoff, "prime cutoff for the limit prod (1-|sigma(p)|^2)^(1/p)");
  bool no_compare = false;
  product->add_flag("--no-compare", no_compare, "skip the Cholesky cross-check");
  add_n(product, "size (default 64)");
  add_precision(product);

  auto* prop29 = app.add_subcommand("prop29", "Log-mean of ln r_k and the root proxy D_N^(1/N)");
  prop29->add_option("--kernel", cfg.kernel, "kernel spec")->required();
  add_n(prop29, "size (default 256)");
  add_precision(prop29);

  auto* prop30 = app.add_subcommand("prop30", "Block factorization over a direct factor A");
  prop30->add_option("--A", cfg.factor, "multiplicatively closed direct factor")->required();
  prop30->add_option("--kernel", cfg.kernel, "kernel supported on A/A")->required();
  add_n(prop30, "size (default 64)");
  add_precision(prop30);

  auto* szego = app.add_subcommand("szego", "Symbol sampling and geometric mean exp(int ln f)");
  szego->add_option("--coeffs", cfg.coeffs, "c0(0),c0(1),... (re or re:im)")->required();
  szego->add_option("--samples", raw.samples, "sample count (default 4096)");
  add_n(szego, "also report Delta_n^(1/n) (default off)");
  add_precision(szego);

  const std::map<std::string, std::pair<std::string, std::string>> defaults = {
      {"derive", {"100", "csv"}}, {"monotone", {"1000", "json"}}, {"density", {"", "csv"}},
      {"alpha", {"", "json"}},    {"det", {"64", "csv"}},         {"product", {"64", "csv"}},
      {"prop29", {"256", "json"}}, {"prop30", {"64", "json"}},    {"szego", {"", "json"}},
  };
  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--format", raw.format, "csv or json");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
  }

  std::vector<const char*> argv{"multdet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  ParseOutcome outcome;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    outcome.status = code == 0 ? 0 : 2;
    outcome.message = code == 0 ? o.str() : er.str();
    return outcome;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    const auto& def = defaults.at(cfg.subcommand);
    auto& e = cfg.entries;
    e.emplace_back("subcommand", cfg.subcommand);
    const std::string n_text = raw.n.empty() ? def.first : raw.n;
    if (!n_text.empty()) cfg.n = positive_u64(n_text, "--n");
    cfg.format = raw.format.empty() ? def.second : raw.format;
    if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json, got '" + cfg.format + "'");
    if (!raw.precision.empty()) {
      const std::uint64_t p = positive_u64(raw.precision, "--precision");
      if (p < 53 || p > (1u << 20)) throw UsageError("--precision must be in [53, 2^20], got " + raw.precision);
      cfg.precision = static_cast<mpfr_prec_t>(p);
    }
    if (!raw.direction.empty()) {
      if (raw.direction == "inc" || raw.direction == "increasing") cfg.direction = "increasing";
      else if (raw.direction == "dec" || raw.direction == "decreasing") cfg.direction = "decreasing";
      else throw UsageError("--direction must be increasing or decreasing, got '" + raw.direction + "'");
    }
    cfg.compare = !no_compare;
    cfg.ygrid = raw.grid_y.empty() ? default_y_grid() : grid(raw.grid_y, "--ygrid");
    cfg.xgrid = raw.grid_x.empty() ? (cfg.subcommand == "density" ? default_density_grid() : default_x_grid())
                                   : grid(raw.grid_x, "--xgrid");
    if (!raw.truncation.empty()) cfg.truncation = positive_u64(raw.truncation, "--truncation");
    if (!raw.prime_cutoff.empty()) cfg.prime_cutoff = positive_u64(raw.prime_cutoff, "--P");
    if (!raw.samples.empty()) cfg.samples = positive_u64(raw.samples, "--samples");
    if (!raw.tail.empty()) {
      double t = 0.0;
      if (!parse_double(raw.tail, t) || t < 0) throw UsageError("--tail needs a nonnegative number");
      cfg.tail = t;
    }

    const std::string& sc = cfg.subcommand;
    if (sc == "derive" || sc == "monotone") {
      if (cfg.set.empty() == cfg.table.empty()) throw UsageError(sc + " needs exactly one of --set, --table");
      if (!cfg.set.empty()) e.emplace_back("set", parse_set_or_usage(cfg.set, cfg.n).describe());
      else e.emplace_back("table", cfg.table);
      e.emplace_back("n", std::to_string(cfg.n));
      if (sc == "derive") e.emplace_back("inverse", cfg.inverse ? "true" : "false");
      else e.emplace_back("direction", cfg.direction);
    } else if (sc == "density") {
      e.emplace_back("A", parse_set_or_usage(cfg.factor, grid_cap(cfg.xgrid)).describe());
      e.emplace_back("xgrid", join(cfg.xgrid));
      if (cfg.truncation) e.emplace_back("truncation", std::to_string(cfg.truncation));
      if (cfg.tail) e.emplace_back("tail", format_real(*cfg.tail));
    } else if (sc == "alpha") {
      if (cfg.set.empty() == cfg.function.empty()) throw UsageError("alpha needs exactly one of --set, --function");
      const FunctionSpec fs = parse_function_spec(cfg.function.empty() ? "indicator:" + cfg.set : cfg.function);
      if (fs.kind == "indicator")
        e.emplace_back("function", "indicator:" + parse_set_or_usage(fs.argument, grid_cap(cfg.xgrid)).describe());
      else e.emplace_back("function", fs.normalized());
      if (!cfg.factor.empty()) e.emplace_back("A", parse_set_or_usage(cfg.factor, grid_cap(cfg.xgrid)).describe());
      else e.emplace_back("ygrid", join(cfg.ygrid));
      e.emplace_back("xgrid", join(cfg.xgrid));
      e.emplace_back("direction", cfg.direction);
      if (cfg.truncation) e.emplace_back("truncation", std::to_string(cfg.truncation));
    } else if (sc == "det" || sc == "product" || sc == "prop29" || sc == "prop30") {
      if (sc == "prop30") e.emplace_back("A", parse_set_or_usage(cfg.factor, cfg.n).describe());
      const KernelSpec spec = parse_kernel_spec(cfg.kernel);
      if (sc == "product" && spec.family != KernelSpec::Family::hilberdink)
        throw UsageError("product needs a hilberdink kernel, got '" + spec.normalized() + "'");
      if (sc == "prop30" && spec.additive()) throw UsageError("prop30 needs a multiplicative kernel");
      e.emplace_back("kernel", spec.normalized());
      e.emplace_back("n", std::to_string(cfg.n));
      e.emplace_back("precision", std::to_string(cfg.precision));
      if (sc == "product") {
        e.emplace_back("compare", cfg.compare ? "true" : "false");
        if (cfg.prime_cutoff) e.emplace_back("P", std::to_string(cfg.prime_cutoff));
      }
    } else if (sc == "szego") {
      parse_coefficients(cfg.coeffs);
      e.emplace_back("coeffs", cfg.coeffs);
      e.emplace_back("samples", std::to_string(cfg.samples));
      if (cfg.n) {
        e.emplace_back("n", std::to_string(cfg.n));
        e.emplace_back("precision", std::to_string(cfg.precision));
      }
    }
    e.emplace_back("format", cfg.format);
  } catch (const UsageError& err) {
    outcome.status = 2;
    outcome.message = std::string("usage error: ") + err.what() + "\n";
    return outcome;
  }
  outcome.config = std::move(cfg);
  return outcome;
}

int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const std::string& sc = cfg.subcommand;
    if (sc == "derive") return cmd_derive(cfg, out);
    if (sc == "monotone") return cmd_monotone(cfg, out);
    if (sc == "density") return cmd_density(cfg, out);
    if (sc == "alpha") return cmd_alpha(cfg, out);
    if (sc == "det") return cmd_det(cfg, out);
    if (sc == "product") return cmd_product(cfg, out);
    if (sc == "prop29") return cmd_prop29(cfg, out);
    if (sc == "prop30") return cmd_prop30(cfg, out);
    if (sc == "szego") return cmd_szego(cfg, out);
    err << "usage error: unknown subcommand '" << sc << "'\n";
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  ParseOutcome parsed = parse_args(args);
  if (!parsed.config) {
    (parsed.status == 0 ? std::cout : std::cerr) << parsed.message;
    return parsed.status;
  }
  if (parsed.config->out.empty()) return run(*parsed.config, std::cout, std::cerr);
  // write to a buffer first so a failed run leaves no partial file
  std::ostringstream buffer;
  const int status = run(*parsed.config, buffer, std::cerr);
  if (status != 0) return status;
  std::ofstream file(parsed.config->out, std::ios::binary);
  if (!file) {
    std::cerr << "error: cli: cannot write " << parsed.config->out << "\n";
    return 1;
  }
  file << buffer.str();
  return file ? 0 : 1;
}

}  // namespace multdet
