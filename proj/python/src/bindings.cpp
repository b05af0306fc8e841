#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sfmap/analysis.hpp"
#include "sfmap/curves.hpp"
#include "sfmap/map.hpp"
#include "sfmap/symbolic.hpp"
#include "sfmap/version.hpp"

namespace py = pybind11;
using namespace sfmap;

PYBIND11_MODULE(_core, m) {
  m.doc() = "saddle-focus return map kernels";
  m.attr("__version__") = kVersion;

  py::enum_<Variant>(m, "Variant")
      .value("OneSided", Variant::OneSided)
      .value("Symmetric", Variant::Symmetric);
  py::enum_<Branch>(m, "Branch")
      .value("Positive", Branch::Positive)
      .value("Negative", Branch::Negative);
  py::enum_<OrbitStatus>(m, "OrbitStatus")
      .value("MaxIterations", OrbitStatus::MaxIterations)
      .value("ReachedZero", OrbitStatus::ReachedZero)
      .value("Diverged", OrbitStatus::Diverged)
      .value("LeftDomain", OrbitStatus::LeftDomain);
  py::enum_<SeedRule>(m, "SeedRule")
      .value("FromMu", SeedRule::FromMu)
      .value("Continuation", SeedRule::Continuation);

  py::class_<MapParams>(m, "MapParams")
      .def(py::init([](double rho, double mu, double omega, double phi,
                       Variant variant) {
             return MapParams{rho, mu, omega, phi, variant};
           }),
           py::arg("rho") = 1.0, py::arg("mu") = 0.0, py::arg("omega") = 1.0,
           py::arg("phi") = 0.0, py::arg("variant") = Variant::Symmetric)
      .def_readwrite("rho", &MapParams::rho)
      .def_readwrite("mu", &MapParams::mu)
      .def_readwrite("omega", &MapParams::omega)
      .def_readwrite("phi", &MapParams::phi)
      .def_readwrite("variant", &MapParams::variant);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("points", &Trajectory::points)
      .def_readonly("status", &Trajectory::status)
      .def_readonly("zero_eps", &Trajectory::zero_eps);

  py::class_<SymbolSequence>(m, "SymbolSequence")
      .def_readonly("bits", &SymbolSequence::bits)
      .def_readonly("terminated", &SymbolSequence::terminated)
      .def_readonly("source_status", &SymbolSequence::source_status);

  py::class_<TangencyPoint>(m, "TangencyPoint")
      .def_readonly("mu", &TangencyPoint::mu)
      .def_readonly("x_c", &TangencyPoint::x_c);

  py::class_<TangencyVerification>(m, "TangencyVerification")
      .def_readonly("residual", &TangencyVerification::residual)
      .def_readonly("two_step_min", &TangencyVerification::two_step_min)
      .def_readonly("two_step_ok", &TangencyVerification::two_step_ok);

  m.def("step", &step, py::arg("params"), py::arg("x"));
  m.def("step_from_origin", &step_from_origin, py::arg("params"),
        py::arg("branch") = Branch::Positive);
  m.def("derivative", &derivative, py::arg("params"), py::arg("x"));
  m.def("iterate", &iterate, py::arg("params"), py::arg("x0"),
        py::arg("max_iter"), py::arg("zero_eps") = kDefaultZeroEps);
  m.def("invariant_bound", &invariant_bound, py::arg("params"));

  m.def("encode", &encode, py::arg("params"),
        py::arg("branch") = Branch::Positive, py::arg("max_len") = 64,
        py::arg("zero_eps") = kDefaultZeroEps);
  m.def("truncate_one_sided", &truncate_one_sided, py::arg("sequence"));
  m.def("embed", &embed, py::arg("sequence"));
  m.def("embed_bits", &embed_bits, py::arg("bits"));
  m.def("lempel_ziv", &lempel_ziv, py::arg("sequence"));
  m.def("lempel_ziv_bits", &lempel_ziv_bits, py::arg("bits"));
  m.def("normalized_lz", &normalized_lz, py::arg("sequence"));
  m.def("normalized_lz_bits", &normalized_lz_bits, py::arg("bits"));

  m.def("lyapunov", &lyapunov, py::arg("params"), py::arg("x0"),
        py::arg("n_transient") = 500, py::arg("n_sample") = 5000);
  m.def("find_fixed_point", &find_fixed_point, py::arg("params"),
        py::arg("lo"), py::arg("hi"));
  m.def("detect_period", &detect_period, py::arg("params"), py::arg("x0"),
        py::arg("n_transient") = 500, py::arg("max_period") = 64,
        py::arg("tol") = kDefaultPeriodTol);
  m.def("newton_periodic", &newton_periodic, py::arg("params"),
        py::arg("x_guess"), py::arg("period"), py::arg("max_steps") = 64);

  m.def("gamma_g", &gamma_g, py::arg("rho"));
  m.def("gamma_p", &gamma_p, py::arg("rho"), py::arg("omega"));
  m.def("belyakov_explicit", &belyakov_explicit, py::arg("rho"),
        py::arg("omega"), py::arg("k"), py::arg("phi") = 0.0);
  m.def("belyakov_implicit", &belyakov_implicit, py::arg("rho"),
        py::arg("omega"), py::arg("k"), py::arg("mu_lo"), py::arg("mu_hi"),
        py::arg("phi") = 0.0);
  m.def("implicit_default_bracket", &implicit_default_bracket, py::arg("rho"),
        py::arg("omega"), py::arg("k"), py::arg("phi") = 0.0);
  m.def("verify_implicit_tangency", &verify_implicit_tangency, py::arg("rho"),
        py::arg("omega"), py::arg("k"), py::arg("mu"), py::arg("phi") = 0.0);
  m.def("find_secondary", &find_secondary, py::arg("rho"), py::arg("omega"),
        py::arg("mu_lo"), py::arg("mu_hi"), py::arg("phi") = 0.0);
  m.def("find_secondary_all", &find_secondary_all, py::arg("rho"),
        py::arg("omega"), py::arg("mu_lo"), py::arg("mu_hi"),
        py::arg("phi") = 0.0);
}
