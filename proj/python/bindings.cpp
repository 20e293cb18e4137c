#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mbounds/arbitrage.hpp"
#include "mbounds/basket.hpp"
#include "mbounds/bounds1d.hpp"
#include "mbounds/bounds2d.hpp"
#include "mbounds/error.hpp"
#include "mbounds/psi.hpp"
#include "mbounds/quotes.hpp"

namespace py = pybind11;
using namespace mbounds;

namespace {

py::dict diagnostics(const Diagnostics& d) {
  py::dict out;
  out["variables"] = d.variables;
  out["constraints"] = d.constraints;
  out["nonzeros"] = d.nonzeros;
  out["iterations"] = d.iterations;
  out["max_residual"] = d.max_residual;
  out["support_bound"] = d.support_bound;
  return out;
}

template <typename W>
py::dict bounds(const BoundsResult<W>& r) {
  py::dict out;
  out["lower"] = r.lower;
  out["upper"] = r.upper;
  out["diagnostics_lower"] = diagnostics(r.diagnostics_lower);
  out["diagnostics_upper"] = diagnostics(r.diagnostics_upper);
  return out;
}

NormalizedSurface make_surface(const std::map<std::string, double>& spots,
                               const std::vector<std::tuple<std::string, int, double, double>>& rows,
                               int maturity_count, double tol) {
  std::vector<Quote> quotes;
  for (const auto& [asset, t, k, c] : rows) quotes.push_back({asset, t, k, c});
  return NormalizedSurface(spots, quotes, maturity_count, tol);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "No-arbitrage bounds on option prices";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(error_code_name(e.code())) + ": " + e.what();
      PyErr_SetString(error.ptr(), msg.c_str());
    }
  });

  py::class_<NormalizedSurface>(m, "Surface")
      .def(py::init(&make_surface), py::arg("spots"), py::arg("quotes"),
           py::arg("maturity_count") = 0, py::arg("tol") = 1e-9,
           "quotes: (asset, maturity rank, strike, price) rows on the discounted scale")
      .def_property_readonly("maturity_count", &NormalizedSurface::maturity_count)
      .def_property_readonly("spots", &NormalizedSurface::spots)
      .def_property_readonly("quotes", [](const NormalizedSurface& s) {
        std::vector<std::tuple<std::string, int, double, double>> out;
        for (const Quote& q : s.quotes()) out.emplace_back(q.asset, q.maturity, q.strike, q.price);
        return out;
      });

  py::class_<Payoff1D>(m, "Payoff1D")
      .def(py::init<std::vector<std::pair<double, double>>, double>(), py::arg("breakpoints"),
           py::arg("terminal_slope"))
      .def_static("call", &Payoff1D::call)
      .def_static("put", &Payoff1D::put)
      .def_static("linear", &Payoff1D::linear)
      .def("__call__", &Payoff1D::operator());

  py::class_<Payoff2D>(m, "Payoff2D")
      .def_static("canonical", &Payoff2D::canonical, py::arg("alpha"), py::arg("beta"),
                  py::arg("k"))
      .def("__call__", &Payoff2D::operator());

  m.def("psi", [](const std::vector<std::pair<double, double>>& atoms) {
    std::vector<Atom> a;
    for (const auto& [x, w] : atoms) a.push_back({x, w});
    return psi_of_distribution(DiscreteDistribution(a)).breakpoints();
  }, py::arg("atoms"), "Breakpoints of E[(X - t)^+] for an atomic law of (location, weight)");

  m.def("distribution", [](const std::vector<std::pair<double, double>>& atoms) {
    std::vector<Atom> a;
    for (const auto& [x, w] : atoms) a.push_back({x, w});
    const DiscreteDistribution back = distribution_of_psi(psi_of_distribution(DiscreteDistribution(a)));
    std::vector<std::pair<double, double>> out;
    for (const Atom& t : back.atoms()) {
      out.emplace_back(t.location, t.weight);
    }
    return out;
  }, py::arg("atoms"), "Law recovered from its transform");

  m.def("check_no_arbitrage", [](const NormalizedSurface& s, const std::string& asset, double tol) {
    py::list out;
    for (const Violation& v : check_no_arbitrage(s, asset, tol).violations) {
      py::dict d;
      d["kind"] = std::string(violation_kind_name(v.kind));
      d["maturity"] = v.quote.maturity;
      d["strike"] = v.quote.strike;
      d["price"] = v.quote.price;
      d["detail"] = v.detail;
      out.append(d);
    }
    return out;
  }, py::arg("surface"), py::arg("asset"), py::arg("tol") = 1e-9);

  m.def("bound_1d", [](const NormalizedSurface& s, const std::string& asset, int t_star,
                       const Payoff1D& g, std::optional<double> L, bool target_only) {
    Bounds1DOptions o;
    o.support_bound = L;
    o.target_maturity_only = target_only;
    const Bounds1D r = [&] {
      py::gil_scoped_release release;
      return bound_payoff_1d(s, asset, t_star, g, o);
    }();
    return bounds(r);
  }, py::arg("surface"), py::arg("asset"), py::arg("t_star"), py::arg("payoff"),
     py::arg("L") = py::none(), py::arg("target_maturity_only") = false);

  m.def("bound_2d_exact", [](const NormalizedSurface& s, const std::string& x,
                             const std::string& y, int t_star, const Payoff2D& g,
                             std::optional<double> L, bool target_only) {
    Bounds2DOptions o;
    o.support_bound = L;
    o.target_maturity_only = target_only;
    const Bounds2D r = [&] {
      py::gil_scoped_release release;
      return bound_payoff_2d_exact(s, x, y, t_star, g, o);
    }();
    return bounds(r);
  }, py::arg("surface"), py::arg("asset_x"), py::arg("asset_y"), py::arg("t_star"),
     py::arg("payoff"), py::arg("L") = py::none(), py::arg("target_maturity_only") = false);

  m.def("bound_2d_approx", [](const NormalizedSurface& s, const std::string& x,
                              const std::string& y, int t_star, const Payoff2D& g, double eps,
                              std::optional<double> L, bool restricted) {
    Bounds2DOptions o;
    o.support_bound = L;
    o.restricted_lattice = restricted;
    const Bounds2DApprox r = [&] {
      py::gil_scoped_release release;
      return bound_payoff_2d_approx(s, x, y, t_star, g, eps, o);
    }();
    return bounds(r);
  }, py::arg("surface"), py::arg("asset_x"), py::arg("asset_y"), py::arg("t_star"),
     py::arg("payoff"), py::arg("eps"), py::arg("L") = py::none(),
     py::arg("restricted_lattice") = false);

  m.def("bound_basket", [](double L,
                           const std::vector<std::tuple<std::vector<double>, double, double>>& cons,
                           const std::vector<double>& weights, double strike) {
    BasketInstance inst;
    inst.n = static_cast<int>(weights.size());
    inst.L = L;
    for (const auto& [w, k, c] : cons) inst.constraints.push_back({w, k, c});
    inst.target = {weights, strike};
    const BasketBounds r = [&] {
      py::gil_scoped_release release;
      return bound_basket(inst);
    }();
    return bounds(r);
  }, py::arg("L"), py::arg("constraints"), py::arg("weights"), py::arg("strike"),
     "constraints: (weights, strike, price) rows");

  m.def("vertex_count_bound", &vertex_count_bound, py::arg("n"), py::arg("m"));
}
