#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "surface_modes/errors.hpp"
#include "surface_modes/localization.hpp"
#include "surface_modes/verify.hpp"

namespace py = pybind11;
using namespace surface_modes;

namespace {

Dimension dim_arg(int d) { return dimension_from_int(d); }

Order order_arg(double nu) {
  const double twice = 2.0 * nu;
  if (twice != std::floor(twice) || twice < 0) throw DomainError("order must be a non-negative multiple of 1/2");
  return Order::from_twice(static_cast<int>(twice));
}

py::tuple log_tuple(LogScaledValue v) { return py::make_tuple(v.sign, v.log_magnitude); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Transmission eigenvalues and surface-localized eigenmodes of the radial interior transmission problem";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<NoSignChange>(m, "NoSignChange", PyExc_RuntimeError);
  py::register_exception<DegenerateBoundary>(m, "DegenerateBoundary", PyExc_RuntimeError);

  m.def("besselj", [](double nu, double x) { return besselj(order_arg(nu), x); }, py::arg("nu"), py::arg("x"));
  m.def(
      "besselj_log", [](double nu, double x) { return log_tuple(besselj_log(order_arg(nu), x)); }, py::arg("nu"),
      py::arg("x"), "(sign, ln|J_nu(x)|)");
  m.def("sphbessel", &sphbessel, py::arg("m"), py::arg("x"));
  m.def(
      "bessel_zero", [](double nu, int s) { return bessel_zero(order_arg(nu), s).value; }, py::arg("nu"),
      py::arg("s"));
  m.def(
      "bessel_deriv_zero", [](double nu, int s) { return bessel_deriv_zero(order_arg(nu), s).value; },
      py::arg("nu"), py::arg("s"));
  m.def(
      "bessel_zero_bracket",
      [](double nu, int s) {
        const Interval b = bessel_zero_bracket(order_arg(nu), s);
        return py::make_tuple(b.lo, b.hi);
      },
      py::arg("nu"), py::arg("s"));
  m.def(
      "empirical_m0", [](double n, int s0, int dim) { return empirical_m0(n, s0, dim_arg(dim)); }, py::arg("n"),
      py::arg("s0"), py::arg("dim") = 2);

  m.def(
      "char_fn", [](double k, double n, int mm, int dim) { return char_fn(k, Medium(n, dim_arg(dim)), mm); },
      py::arg("k"), py::arg("n"), py::arg("m"), py::arg("dim") = 2);

  py::class_<TransmissionEigenvalue>(m, "TransmissionEigenvalue")
      .def_readonly("k", &TransmissionEigenvalue::k)
      .def_property_readonly("bracket",
                             [](const TransmissionEigenvalue& e) { return py::make_tuple(e.bracket.lo, e.bracket.hi); })
      .def_readonly("residual", &TransmissionEigenvalue::residual)
      .def_property_readonly("n", [](const TransmissionEigenvalue& e) { return e.medium.contrast(); })
      .def_property_readonly("dim", [](const TransmissionEigenvalue& e) { return as_int(e.medium.dim()); })
      .def_property_readonly("m", [](const TransmissionEigenvalue& e) { return e.mode.m; })
      .def_property_readonly("s0", [](const TransmissionEigenvalue& e) { return e.mode.s0; })
      .def_readonly("probe_root_count", &TransmissionEigenvalue::probe_root_count)
      .def_readonly("roles_swapped", &TransmissionEigenvalue::roles_swapped)
      .def_readonly("dual_k", &TransmissionEigenvalue::dual_k)
      .def("__repr__", [](const TransmissionEigenvalue& e) {
        return "TransmissionEigenvalue(m=" + std::to_string(e.mode.m) + ", k=" + std::to_string(e.k) + ")";
      });

  m.def(
      "find_eigenvalue",
      [](double n, int mm, int s0, int dim, double tol) {
        SolverOptions opts;
        opts.residual_tolerance = tol;
        return find_eigenvalue(Medium(n, dim_arg(dim)), ModeIndex(mm, s0), opts);
      },
      py::arg("n"), py::arg("m"), py::arg("s0") = 1, py::arg("dim") = 2, py::arg("tol") = 1e-10);
  m.def(
      "scan",
      [](double n, int s0, int m_min, int m_max, int dim) {
        py::gil_scoped_release release;
        return scan(Medium(n, dim_arg(dim)), s0, m_min, m_max).eigenvalues;
      },
      py::arg("n"), py::arg("s0"), py::arg("m_min"), py::arg("m_max"), py::arg("dim") = 2,
      "Eigenvalues for m_min..m_max; orders without a certified root are omitted.");

  py::class_<LocalizationReport>(m, "LocalizationReport")
      .def_readonly("tau", &LocalizationReport::tau)
      .def_readonly("ratio_v", &LocalizationReport::ratio_v)
      .def_readonly("ratio_w", &LocalizationReport::ratio_w)
      .def_readonly("k", &LocalizationReport::k)
      .def_property_readonly("m", [](const LocalizationReport& r) { return r.mode.m; });

  m.def(
      "localization_report",
      [](double n, int mm, double tau, int s0, int dim) {
        const EigenmodePair pair = make_pair(find_eigenvalue(Medium(n, dim_arg(dim)), ModeIndex(mm, s0)));
        return localization_report(pair, tau);
      },
      py::arg("n"), py::arg("m"), py::arg("tau"), py::arg("s0") = 1, py::arg("dim") = 2);
  m.def(
      "boundary_residual",
      [](double n, int mm, int s0, int dim) {
        const BoundaryResidual r =
            boundary_residual(make_pair(find_eigenvalue(Medium(n, dim_arg(dim)), ModeIndex(mm, s0))));
        return py::make_tuple(r.value_gap, r.derivative_gap);
      },
      py::arg("n"), py::arg("m"), py::arg("s0") = 1, py::arg("dim") = 2, "(value_gap, derivative_gap)");
  m.def(
      "radial_profile",
      [](double n, int mm, int samples, int s0, int dim) {
        const auto rows =
            radial_profile(make_pair(find_eigenvalue(Medium(n, dim_arg(dim)), ModeIndex(mm, s0))), samples);
        std::vector<std::tuple<double, double, double>> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.emplace_back(r.r, r.abs_w, r.abs_v);
        return out;
      },
      py::arg("n"), py::arg("m"), py::arg("samples"), py::arg("s0") = 1, py::arg("dim") = 2,
      "List of (r, |w|/max|w|, |v|/max|v|).");

  py::class_<BoundCheck>(m, "BoundCheck")
      .def_readonly("name", &BoundCheck::name)
      .def_readonly("lhs", &BoundCheck::lhs)
      .def_readonly("rhs", &BoundCheck::rhs)
      .def_readonly("margin", &BoundCheck::margin)
      .def_readonly("passed", &BoundCheck::passed)
      .def_readonly("in_regime", &BoundCheck::in_regime)
      .def_readonly("note", &BoundCheck::note)
      .def_property_readonly("n", [](const BoundCheck& b) { return b.inputs.n; })
      .def_property_readonly("m", [](const BoundCheck& b) { return b.inputs.m; })
      .def_property_readonly("tau", [](const BoundCheck& b) { return b.inputs.tau; })
      .def("__repr__", [](const BoundCheck& b) {
        return "BoundCheck(" + b.name + ", passed=" + (b.passed ? "True" : "False") + ")";
      });

  m.def(
      "check_lemma1", [](double n, int s0, int mm, int dim) { return check_lemma1(n, s0, mm, dim_arg(dim)); },
      py::arg("n"), py::arg("s0"), py::arg("m"), py::arg("dim") = 2);
  m.def(
      "check_sign_change",
      [](double n, int s0, int mm, int dim) { return check_sign_change(n, s0, mm, dim_arg(dim)); }, py::arg("n"),
      py::arg("s0"), py::arg("m"), py::arg("dim") = 2);
  m.def(
      "check_krasikov", [](int mm, double x) { return check_krasikov(mm, x); }, py::arg("m"), py::arg("x"));
  m.def(
      "check_ratio_bound_gg1",
      [](double n, int s0, int mm, double tau, int dim) {
        return check_ratio_bound_gg1(n, s0, mm, tau, dim_arg(dim));
      },
      py::arg("n"), py::arg("s0"), py::arg("m"), py::arg("tau"), py::arg("dim") = 2);
  m.def(
      "check_final_decay", [](double n, int s0, int mm, double tau) { return check_final_decay(n, s0, mm, tau); },
      py::arg("n"), py::arg("s0"), py::arg("m"), py::arg("tau"));
  m.def(
      "check_w_bracket",
      [](double n, int s0, int mm, double tau, int dim) { return check_w_bracket(n, s0, mm, tau, dim_arg(dim)); },
      py::arg("n"), py::arg("s0"), py::arg("m"), py::arg("tau"), py::arg("dim") = 2);
  m.def("check_interlacing", &check_interlacing, py::arg("m_max"), py::arg("s_max"));
  m.def(
      "carlini_decomposition",
      [](double n, int s0, int mm, double tau) {
        const CarliniDecomposition d = carlini_decomposition(n, s0, mm, tau);
        py::dict out;
        out["I1"] = d.I1;
        out["I2"] = d.I2;
        out["I3_empirical"] = d.I3_empirical;
        out["delta"] = d.delta;
        out["bessel_ratio"] = d.bessel_ratio;
        out["reconstruction_error"] = d.reconstruction_error;
        return out;
      },
      py::arg("n"), py::arg("s0"), py::arg("m"), py::arg("tau"));
}
