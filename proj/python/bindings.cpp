#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "multdet/arith.hpp"
#include "multdet/cli.hpp"
#include "multdet/direct_factors.hpp"
#include "multdet/error.hpp"
#include "multdet/kernel_spec.hpp"
#include "multdet/log_means.hpp"
#include "multdet/reports.hpp"
#include "multdet/toeplitz.hpp"

namespace py = pybind11;
using namespace multdet;

namespace {

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(format_rational(q));
}

// int, Fraction, or text in p/q or decimal form
Rational to_rational(const py::handle& v) { return parse_rational(py::str(v).cast<std::string>()); }

ExactFunction exact_from(const py::sequence& values) {
  std::vector<Rational> out;
  for (const auto& v : values) out.push_back(to_rational(v));
  return ExactFunction(std::move(out), "python");
}

py::list fractions_of(const ExactFunction& f) {
  py::list out;
  for (const Rational& v : f.values()) out.append(fraction(v));
  return out;
}

py::object from_json(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

DeterminantSequence dets_for(const std::string& kernel, std::size_t n, mpfr_prec_t prec) {
  const KernelSpec spec = parse_kernel_spec(kernel);
  if (spec.additive()) return additive_toeplitz_dets(build_additive_symbol(spec), n, prec);
  return multiplicative_dets(build_fraction_kernel(spec, n), n, prec);
}

}  // namespace

PYBIND11_MODULE(_multdet, m) {
  m.doc() = "Multiplicative Toeplitz determinants and logarithmic means";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  m.def("mobius", &mobius, py::arg("n"));
  m.def(
      "derivative", [](const py::sequence& v) { return fractions_of(bougaief_derivative(exact_from(v))); },
      py::arg("values"), "f * mu for f given on 1..N");
  m.def(
      "integral", [](const py::sequence& v) { return fractions_of(bougaief_integral(exact_from(v))); },
      py::arg("values"), "sum of f over divisors");
  m.def(
      "convolve",
      [](const py::sequence& f, const py::sequence& g) {
        return fractions_of(dirichlet_convolve(exact_from(f), exact_from(g)));
      },
      py::arg("f"), py::arg("g"));
  m.def(
      "is_mult_monotone",
      [](const py::sequence& v, const std::string& direction) {
        const Direction d = direction == "decreasing" ? Direction::decreasing : Direction::increasing;
        return from_json(to_json(is_mult_monotone(exact_from(v), d)));
      },
      py::arg("values"), py::arg("direction") = "increasing");
  m.def(
      "envelope", [](const py::sequence& v) { return fractions_of(mult_increasing_envelope(exact_from(v))); },
      py::arg("values"));

  py::class_<IntegerSet>(m, "IntegerSet")
      .def(py::init([](const std::string& spec, std::uint64_t cap) { return IntegerSet::parse(spec, cap); }),
           py::arg("spec"), py::arg("cap"))
      .def("__contains__", &IntegerSet::contains)
      .def("enumerate", &IntegerSet::enumerate, py::arg("limit"))
      .def("describe", &IntegerSet::describe)
      .def_property_readonly("cap", &IntegerSet::cap)
      .def("__repr__", [](const IntegerSet& s) { return "IntegerSet('" + s.describe() + "')"; });

  m.def(
      "friable_split",
      [](std::uint64_t n, double y) {
        const auto s = friable_split(n, y);
        return py::make_tuple(s.friable, s.sifted);
      },
      py::arg("n"), py::arg("y"));
  m.def(
      "verify_direct_factor",
      [](const std::string& a, const std::string& b, std::uint64_t n) {
        const auto v = verify_direct_factor(IntegerSet::parse(a, n), IntegerSet::parse(b, n), n);
        py::dict d;
        d["holds"] = v.holds;
        d["limit"] = v.limit;
        d["counterexample"] = v.counterexample ? py::object(py::int_(*v.counterexample)) : py::object(py::none());
        d["representations"] = v.representations;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("n"));
  m.def(
      "density",
      [](const std::string& a, const std::vector<double>& xs) {
        std::uint64_t cap = 1;
        for (double x : xs) cap = std::max<std::uint64_t>(cap, static_cast<std::uint64_t>(x));
        const auto pair = DirectFactorPair::with_complement(IntegerSet::parse(a, cap), cap);
        py::list out;
        for (const auto& r : esv_density(pair, xs)) {
          py::dict d;
          d["x"] = r.x;
          d["empirical"] = r.empirical;
          d["lambda"] = py::make_tuple(r.lambda.lo, r.lambda.hi);
          d["heuristic_tail"] = r.heuristic_tail;
          out.append(d);
        }
        return out;
      },
      py::arg("a"), py::arg("xgrid"));

  m.def("mertens_product", [](double y) { return fraction(mertens_product(y)); }, py::arg("y"));
  m.def(
      "alpha",
      [](const std::string& function, double y, std::uint64_t truncation) {
        const auto f = build_function(parse_function_spec(function), std::uint64_t{1} << 40);
        const auto a = alpha_friable(f, y, truncation);
        return py::make_tuple(a.value.lo, a.value.hi);
      },
      py::arg("function"), py::arg("y"), py::arg("truncation") = 0, "enclosure of alpha(f;y)");
  m.def(
      "alpha_limit",
      [](const std::string& function, const std::vector<double>& ygrid, const std::vector<double>& xgrid) {
        std::uint64_t cap = 1;
        for (double x : xgrid) cap = std::max<std::uint64_t>(cap, static_cast<std::uint64_t>(x));
        return from_json(to_json(alpha_limit_estimate(build_function(parse_function_spec(function), cap), ygrid, xgrid)));
      },
      py::arg("function"), py::arg("ygrid"), py::arg("xgrid"));

  m.def(
      "determinants",
      [](const std::string& kernel, std::size_t n, mpfr_prec_t precision) {
        const auto seq = dets_for(kernel, n, precision);
        std::vector<double> ln_d, r;
        for (std::size_t k = 1; k <= seq.size(); ++k) {
          ln_d.push_back(seq.log_det(k).to_double());
          r.push_back(seq.ratio(k).to_double());
        }
        py::dict d;
        d["ln_D"] = ln_d;
        d["r"] = r;
        d["precision_bits"] = seq.precision_bits();
        d["escalations"] = seq.escalations();
        return d;
      },
      py::arg("kernel"), py::arg("n"), py::arg("precision") = 128);
  m.def(
      "ratio_monotone",
      [](const std::string& kernel, std::size_t n, mpfr_prec_t precision) {
        return from_json(to_json(check_ratio_mult_monotone(dets_for(kernel, n, precision)).verdict));
      },
      py::arg("kernel"), py::arg("n"), py::arg("precision") = 128);
  m.def(
      "logmean_summary",
      [](const std::string& kernel, std::size_t n, mpfr_prec_t precision) {
        return from_json(to_json(logmean_summary(dets_for(kernel, n, precision))));
      },
      py::arg("kernel"), py::arg("n"), py::arg("precision") = 128);
  m.def(
      "product_formula",
      [](const std::string& kernel, std::size_t n, mpfr_prec_t precision) {
        std::vector<double> out;
        for (const Real& v : hilberdink_log_dets(build_sigma(parse_kernel_spec(kernel)), n, precision))
          out.push_back(v.to_double());
        return out;
      },
      py::arg("kernel"), py::arg("n"), py::arg("precision") = 128, "ln D_1..ln D_n");
  m.def(
      "cm_limit",
      [](const std::string& kernel, std::uint64_t prime_cutoff) {
        return from_json(to_json(cm_limit(build_sigma(parse_kernel_spec(kernel)), prime_cutoff)));
      },
      py::arg("kernel"), py::arg("prime_cutoff"));
  m.def(
      "factorization_check",
      [](const std::string& a, const std::string& kernel, std::size_t n, mpfr_prec_t precision) {
        const IntegerSet set = IntegerSet::parse(a, n * n);
        return from_json(to_json(factorization_check(set, build_fraction_kernel(parse_kernel_spec(kernel), n), n, precision)));
      },
      py::arg("a"), py::arg("kernel"), py::arg("n"), py::arg("precision") = 128);
  m.def(
      "szego",
      [](const std::string& coeffs, std::size_t samples) {
        return from_json(to_json(szego_symbol(parse_coefficients(coeffs), samples)));
      },
      py::arg("coeffs"), py::arg("samples") = 4096, "coefficients as text, e.g. '2,0.5' or '3,0.3:0.4'");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) -> py::tuple {
        const ParseOutcome p = parse_args(args);
        if (!p.config) return py::make_tuple(p.status, p.status == 0 ? p.message : std::string(), p.status == 0 ? std::string() : p.message);
        std::ostringstream out, err;
        const int status = run(*p.config, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "(status, stdout, stderr) of one command, without --out handling");
}
