#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <complex>
#include <optional>
#include <sstream>
#include <string>

#include "lqu_lab/channels.hpp"
#include "lqu_lab/errors.hpp"
#include "lqu_lab/linalg.hpp"
#include "lqu_lab/lqu.hpp"
#include "lqu_lab/model.hpp"
#include "lqu_lab/selftest.hpp"
#include "lqu_lab/sweep.hpp"

namespace py = pybind11;
using namespace lqu_lab;

namespace {

using NumpyMatrix = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

ComplexMatrix from_numpy(const NumpyMatrix& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) {
    throw py::value_error("expected a square 2-D array");
  }
  const auto n = static_cast<std::size_t>(a.shape(0));
  if (n < 2 || n > ComplexMatrix::kMaxDim) throw py::value_error("matrix dimension must be 2, 3 or 4");
  ComplexMatrix m(n);
  auto r = a.unchecked<2>();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::complex<double> v = r(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
      m(i, j) = cplx(v.real(), v.imag());
    }
  return m;
}

py::array_t<std::complex<double>> to_numpy(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  py::array_t<std::complex<double>> out({n, n});
  auto w = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < n; ++j) {
      const cplx v = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      w(i, j) = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }
  return out;
}

ChannelSpec channel(const std::string& kind, double p) { return {parse_channel_kind(kind), p}; }

Vec3 direction(const std::array<double, 3>& n) { return n; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Local quantum uncertainty of thermal two-qubit X states";
  m.attr("__version__") = std::string(kVersion);

  static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
  static py::exception<InvalidSpec> invalid_spec(m, "InvalidSpec", PyExc_ValueError);
  static py::exception<IoError> io_error(m, "IoError", PyExc_OSError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      PyErr_SetString(domain_error.ptr(), e.what());
    } catch (const InvalidSpec& e) {
      PyErr_SetString(invalid_spec.ptr(), e.what());
    } catch (const IoError& e) {
      PyErr_SetString(io_error.ptr(), e.what());
    }
  });

  py::class_<XStateParams>(m, "XState",
                           "X-form state: populations a+, a-, b on the diagonal, c and d on the "
                           "anti-diagonal.")
      .def(py::init([](double a_plus, double a_minus, double b, double c, double d) {
             XStateParams x;
             x.aPlus = a_plus;
             x.aMinus = a_minus;
             x.b = b;
             x.c = c;
             x.d = d;
             x.validate();
             return x;
           }),
           py::arg("a_plus"), py::arg("a_minus"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_property_readonly("a_plus", [](const XStateParams& x) { return static_cast<double>(x.aPlus); })
      .def_property_readonly("a_minus", [](const XStateParams& x) { return static_cast<double>(x.aMinus); })
      .def_property_readonly("b", [](const XStateParams& x) { return static_cast<double>(x.b); })
      .def_property_readonly("c", [](const XStateParams& x) { return static_cast<double>(x.c); })
      .def_property_readonly("d", [](const XStateParams& x) { return static_cast<double>(x.d); })
      .def("to_matrix", [](const XStateParams& x) { return to_numpy(x.to_matrix()); })
      .def("__repr__", [](const XStateParams& x) {
        std::ostringstream os;
        os.precision(17);
        os << "XState(a_plus=" << static_cast<double>(x.aPlus)
           << ", a_minus=" << static_cast<double>(x.aMinus) << ", b=" << static_cast<double>(x.b)
           << ", c=" << static_cast<double>(x.c) << ", d=" << static_cast<double>(x.d) << ")";
        return os.str();
      });

  py::class_<ClosedFormDiagnostics>(m, "ClosedFormDiagnostics")
      .def_readonly("lqu", &ClosedFormDiagnostics::lqu)
      .def_readonly("lambda1", &ClosedFormDiagnostics::lambda1)
      .def_readonly("lambda2", &ClosedFormDiagnostics::lambda2)
      .def_readonly("lambda3", &ClosedFormDiagnostics::lambda3)
      .def_readonly("gamma1", &ClosedFormDiagnostics::gamma1)
      .def_readonly("gamma2", &ClosedFormDiagnostics::gamma2)
      .def_readonly("gamma3", &ClosedFormDiagnostics::gamma3)
      .def_readonly("gamma4", &ClosedFormDiagnostics::gamma4)
      .def_readonly("fallback", &ClosedFormDiagnostics::fallback)
      .def_readonly("crossover", &ClosedFormDiagnostics::crossover);

  m.def("build_hamiltonian_tqs",
        [](double ej1, double ej2, double em) { return to_numpy(build_hamiltonian_tqs({ej1, ej2, em})); },
        py::arg("ej1"), py::arg("ej2"), py::arg("em"));
  m.def("build_hamiltonian_x",
        [](double ej, double em) { return to_numpy(build_hamiltonian_x({ej, ej, em})); }, py::arg("ej"),
        py::arg("em"));
  m.def("gibbs_state_numeric",
        [](const NumpyMatrix& h, double t) { return to_numpy(gibbs_state_numeric(from_numpy(h), Temperature(t))); },
        py::arg("h"), py::arg("T"));
  m.def("thermal_xstate", [](double ej, double em, double t) { return thermal_xstate(ej, em, Temperature(t)); },
        py::arg("ej"), py::arg("em"), py::arg("T"));

  m.def("w_matrix", [](const NumpyMatrix& rho) { return w_matrix(from_numpy(rho)).entries; }, py::arg("rho"));
  m.def("skew_information",
        [](const NumpyMatrix& rho, const std::array<double, 3>& n) {
          return skew_information(from_numpy(rho), direction(n));
        },
        py::arg("rho"), py::arg("n"));
  m.def("lqu_numeric", [](const NumpyMatrix& rho) { return lqu_numeric(from_numpy(rho)); }, py::arg("rho"));
  m.def("lqu_bruteforce",
        [](const NumpyMatrix& rho, int resolution) { return lqu_bruteforce(from_numpy(rho), resolution); },
        py::arg("rho"), py::arg("resolution") = kBruteforceResolution);
  m.def("lqu_closed_xstate", &lqu_closed_xstate, py::arg("x"));
  m.def("crossover_temperature", &crossover_temperature, py::arg("ej"), py::arg("em"),
        py::arg("t_lo") = 0.01, py::arg("t_hi") = 1.0);

  m.def("kraus_ops",
        [](const std::string& kind, double p) {
          const KrausPair k = kraus_ops(channel(kind, p));
          return py::make_tuple(to_numpy(k.k1), to_numpy(k.k2));
        },
        py::arg("kind"), py::arg("p"));
  m.def("apply_channel",
        [](const NumpyMatrix& rho, const std::string& kind, double p, std::optional<std::string> kind_b,
           std::optional<double> p_b) {
          const ChannelSpec a = channel(kind, p);
          const ChannelSpec b = channel(kind_b.value_or(kind), p_b.value_or(p));
          return to_numpy(apply_channel(from_numpy(rho), a, b));
        },
        py::arg("rho"), py::arg("kind"), py::arg("p"), py::arg("kind_b") = py::none(),
        py::arg("p_b") = py::none(),
        "Same channel on both qubits unless kind_b / p_b give a different one for qubit B.");
  m.def("xstate_after_channel",
        [](const XStateParams& x, const std::string& kind, double p) {
          return xstate_after_channel(x, channel(kind, p));
        },
        py::arg("x"), py::arg("kind"), py::arg("p"));
  m.def("lqu_closed_channel",
        [](const XStateParams& x, const std::string& kind, double p) {
          return lqu_closed_channel(x, channel(kind, p));
        },
        py::arg("x"), py::arg("kind"), py::arg("p"));

  m.def("evaluate_point",
        [](double ej, double em, double t, std::optional<std::string> kind, double p,
           const std::string& method) {
          PointParams pp;
          pp.ej = ej;
          pp.em = em;
          pp.t = t;
          pp.p = p;
          if (kind) pp.channel = parse_channel_kind(*kind);
          const PointResult r = evaluate_point(pp, parse_method(method));
          py::dict out;
          out["lqu"] = r.lqu;
          out["lambda1"] = r.lambda1;
          out["lambda2"] = r.lambda2;
          out["lambda3"] = r.lambda3;
          out["fallback"] = r.fallback;
          return out;
        },
        py::arg("ej"), py::arg("em"), py::arg("T"), py::arg("channel") = py::none(), py::arg("p") = 0.0,
        py::arg("method") = "closed");
  m.def("sweep_csv",
        [](const std::vector<std::string>& vary, double ej, double em, double t,
           std::optional<std::string> kind, double p, const std::string& method, bool diagnostics,
           std::optional<int> threads) {
          SweepSpec spec;
          for (const std::string& v : vary) spec.variables.push_back(parse_sweep_variable(v));
          spec.fixed.ej = ej;
          spec.fixed.em = em;
          spec.fixed.t = t;
          spec.fixed.p = p;
          if (kind) spec.fixed.channel = parse_channel_kind(*kind);
          spec.method = parse_method(method);
          spec.diagnostics = diagnostics;
          py::gil_scoped_release release;
          return run_sweep(spec, threads.value_or(default_thread_count())).to_csv();
        },
        py::arg("vary"), py::arg("ej") = 0.0, py::arg("em") = 0.0, py::arg("T") = 1.0,
        py::arg("channel") = py::none(), py::arg("p") = 0.0, py::arg("method") = "closed",
        py::arg("diagnostics") = false, py::arg("threads") = py::none(),
        "Sweep over one or two variables, e.g. vary=['T=0.01:1:100']; returns the CSV text.");
  m.def("figure_ids", &figure_ids);
  m.def("run_figure",
        [](const std::string& id, const std::filesystem::path& out_dir) {
          py::gil_scoped_release release;
          return run_figure(id, out_dir);
        },
        py::arg("id"), py::arg("out_dir"));
  m.def("selftest", [](bool inject_fault) {
    std::ostringstream os;
    SelfTestOptions opts;
    opts.inject_fault = inject_fault;
    const bool ok = run_selftest(os, opts);
    return py::make_tuple(ok, os.str());
  }, py::arg("inject_fault") = false);
}
