#include "lqu_lab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lqu_lab/channels.hpp"
#include "lqu_lab/errors.hpp"
#include "lqu_lab/linalg.hpp"
#include "lqu_lab/lqu.hpp"
#include "lqu_lab/model.hpp"
#include "lqu_lab/sampling.hpp"
#include "lqu_lab/tolerances.hpp"

namespace lqu_lab {

namespace {

struct Property {
  std::string name;
  double tol;
  double worst = 0.0;
  bool ok = true;

  void observe(double err) {
    worst = std::max(worst, err);
    if (!(err <= tol)) ok = false;
  }
  void require(bool cond) {
    if (!cond) ok = false;
  }
};

const std::vector<double> kEnergies = {0.25, 1.0, 2.0, 5.0};
const std::vector<double> kTemps = {0.05, 0.2, 1.0};
const std::vector<double> kProbs = {0.0, 0.2, 0.5, 0.8, 1.0};
constexpr std::array<ChannelKind, 3> kKinds = {ChannelKind::AmplitudeDamping,
                                               ChannelKind::PhaseFlip, ChannelKind::PhaseDamping};

template <class F>
void each_thermal(F&& f) {
  for (double ej : kEnergies)
    for (double em : kEnergies)
      for (double t : kTemps) f(ej, em, t);
}

ComplexMatrix local(const ComplexMatrix& ua, const ComplexMatrix& ub, const ComplexMatrix& rho) {
  const ComplexMatrix u = kron(ua, ub);
  return u * rho * u.adjoint();
}

double top_eigen_error(const ComplexMatrix& m, const EigenDecomposition& e) {
  return static_cast<double>(max_abs_diff(spectral_apply(e, e.eigenvalues), m) /
                             (1 + m.max_abs()));
}

double state_defect(const ComplexMatrix& rho) {
  const real herm = rho.hermiticity_defect();
  const real trace = std::abs(rho.trace() - real(1));
  const real neg = std::max(real(0), -eig_hermitian(rho).eigenvalues.front());
  return static_cast<double>(std::max({herm, trace, neg}));
}

}  // namespace

bool run_selftest(std::ostream& out, const SelfTestOptions& options) {
  const double cross_sign = options.inject_fault ? -1.0 : 1.0;
  auto closed = [&](const XStateParams& x) { return detail::closed_form(x, cross_sign); };

  std::vector<Property> props;
  auto run = [&](std::string name, double tol, const std::function<void(Property&)>& body) {
    Property p{std::move(name), tol};
    try {
      body(p);
    } catch (const std::exception& e) {
      p.ok = false;
      p.worst = HUGE_VAL;
    }
    props.push_back(p);
  };

  run("linalg.eig_reconstruction", tol::kReconstruction, [](Property& p) {
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
      const ComplexMatrix m = random_hermitian(rng, 4);
      const EigenDecomposition e = eig_hermitian(m);
      p.observe(top_eigen_error(m, e));
      const ComplexMatrix& v = e.eigenvectors;
      p.observe(max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(4)));
      p.require(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
    }
  });

  run("linalg.sqrt_psd_square", tol::kSqrtResidual, [](Property& p) {
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
      const ComplexMatrix m = random_density_matrix(rng);
      const ComplexMatrix r = mat_sqrt_psd(m);
      p.observe(max_abs_diff(r * r, m));
    }
  });

  run("linalg.exp_zero_identity", 1e-14, [](Property& p) {
    p.observe(max_abs_diff(mat_exp_hermitian(ComplexMatrix::zero(4)), ComplexMatrix::identity(4)));
  });

  run("linalg.kron_mixed_product", 1e-12, [](Property& p) {
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
      const ComplexMatrix a = random_hermitian(rng, 2), b = random_hermitian(rng, 2);
      const ComplexMatrix c = random_hermitian(rng, 2), d = random_hermitian(rng, 2);
      p.observe(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)));
    }
  });

  run("model.thermal_vs_gibbs", 1e-10, [](Property& p) {
    for (double ej : {0.0, 0.5, 1.0, 2.5, 5.0})
      for (double em : {0.0, 0.5, 1.0, 2.5, 5.0})
        for (double t : {0.01, 0.1, 1.0, 5.0}) {
          const XStateParams x = thermal_xstate(ej, em, Temperature(t));
          const ComplexMatrix g = gibbs_state_numeric(build_hamiltonian_x({ej, ej, em}), Temperature(t));
          p.observe(max_abs_diff(x.to_matrix(), g));
        }
  });

  run("model.normalization_low_T", 1e-12, [](Property& p) {
    for (double ej : {0.0, 1.0, 5.0})
      for (double em : {0.0, 1.0, 5.0})
        for (double t : {1e-4, 0.01, 1.0}) {
          const XStateParams x = thermal_xstate(ej, em, Temperature(t));
          p.observe(std::abs(x.aPlus + x.aMinus + 2.0 * x.b - 1.0));
          p.require(x.is_valid());
        }
  });

  run("model.high_T_limit", 1e-5, [](Property& p) {
    for (double ej : kEnergies)
      for (double em : kEnergies) {
        const XStateParams x = thermal_xstate(ej, em, Temperature(1e6));
        for (double v : {x.aPlus, x.aMinus, x.b}) p.observe(std::abs(v - 0.25));
        p.observe(std::abs(x.c));
        p.observe(std::abs(x.d));
      }
  });

  run("lqu.zero_point", 1e-12, [&](Property& p) {
    for (double t : {1e-4, 0.01, 0.1, 1.0, 10.0}) {
      p.observe(closed(thermal_xstate(0.0, 0.0, Temperature(t))).lqu);
    }
  });

  run("lqu.quadratic_form_identity", 1e-10, [](Property& p) {
    Rng rng(21);
    for (int i = 0; i < 10; ++i) {
      const ComplexMatrix rho = random_density_matrix(rng);
      const WMatrix w = w_matrix(rho);
      for (int k = 0; k < 20; ++k) {
        const Vec3 n = random_unit_vector(rng);
        p.observe(std::abs(skew_information(rho, n) - (1.0 - w.quadratic_form(n))));
      }
    }
  });

  run("lqu.closed_vs_numeric", 1e-9, [&](Property& p) {
    each_thermal([&](double ej, double em, double t) {
      const XStateParams x = thermal_xstate(ej, em, Temperature(t));
      const ComplexMatrix g = gibbs_state_numeric(build_hamiltonian_x({ej, ej, em}), Temperature(t));
      p.observe(std::abs(closed(x).lqu - lqu_numeric(g)));
    });
  });

  run("lqu.numeric_vs_bruteforce", 2e-6, [](Property& p) {
    for (double ej : {0.25, 2.0})
      for (double em : {1.0, 5.0})
        for (double t : {0.05, 1.0}) {
          const ComplexMatrix rho = thermal_xstate(ej, em, Temperature(t)).to_matrix();
          p.observe(std::abs(lqu_numeric(rho) - lqu_bruteforce(rho, 4096)));
        }
  });

  run("lqu.lambda_ordering", 1e-12, [&](Property& p) {
    each_thermal([&](double ej, double em, double t) {
      const ClosedFormDiagnostics d = closed(thermal_xstate(ej, em, Temperature(t)));
      p.observe(std::max(0.0, d.lambda2 - d.lambda1));
      p.require(d.lqu >= 0.0 && d.lqu <= 1.0);
    });
  });

  run("lqu.local_unitary_invariance", 1e-9, [](Property& p) {
    Rng rng(31);
    for (int i = 0; i < 10; ++i) {
      const ComplexMatrix rho = random_density_matrix(rng);
      const ComplexMatrix moved = local(random_unitary2(rng), random_unitary2(rng), rho);
      p.observe(std::abs(lqu_numeric(rho) - lqu_numeric(moved)));
    }
    for (double ej : {0.5, 2.0})
      for (double em : {0.5, 2.0})
        for (double t : {0.2, 1.0}) {
          const double a = lqu_numeric(gibbs_state_numeric(build_hamiltonian_tqs({ej, ej, em}), Temperature(t)));
          const double b = lqu_numeric(gibbs_state_numeric(build_hamiltonian_x({ej, ej, em}), Temperature(t)));
          p.observe(std::abs(a - b));
        }
  });

  run("lqu.scale_invariance", 1e-10, [&](Property& p) {
    each_thermal([&](double ej, double em, double t) {
      const double base = closed(thermal_xstate(ej, em, Temperature(t))).lqu;
      for (double s : {0.5, 3.0}) {
        p.observe(std::abs(closed(thermal_xstate(s * ej, s * em, Temperature(s * t))).lqu - base));
      }
    });
  });

  run("lqu.high_T_decay", 1e-3, [&](Property& p) {
    for (double ej : kEnergies)
      for (double em : kEnergies) p.observe(closed(thermal_xstate(ej, em, Temperature(1e3))).lqu);
  });

  run("channels.kraus_closure", tol::kKrausClosure, [](Property& p) {
    for (ChannelKind k : kKinds)
      for (int i = 0; i <= 10; ++i) {
        const KrausPair kp = kraus_ops({k, i / 10.0});
        p.observe(max_abs_diff(kp.closure(), ComplexMatrix::identity(2)));
      }
  });

  run("channels.closed_vs_kraus", 1e-9, [&](Property& p) {
    each_thermal([&](double ej, double em, double t) {
      const XStateParams x = thermal_xstate(ej, em, Temperature(t));
      for (ChannelKind k : kKinds)
        for (double prob : kProbs) {
          const ChannelSpec spec{k, prob};
          const double c = closed(xstate_after_channel(x, spec)).lqu;
          const double n = lqu_numeric(apply_channel(x.to_matrix(), spec, spec));
          p.observe(std::abs(c - n));
        }
    });
  });

  run("channels.pf_symmetry", 1e-12, [&](Property& p) {
    each_thermal([&](double ej, double em, double t) {
      const XStateParams x = thermal_xstate(ej, em, Temperature(t));
      for (double prob : {0.1, 0.3}) {
        const double a = closed(xstate_after_channel(x, {ChannelKind::PhaseFlip, prob})).lqu;
        const double b = closed(xstate_after_channel(x, {ChannelKind::PhaseFlip, 1.0 - prob})).lqu;
        p.observe(std::abs(a - b));
      }
      p.observe(closed(xstate_after_channel(x, {ChannelKind::PhaseFlip, 0.5})).lqu);
    });
  });

  run("channels.ad_endpoint", 1e-12, [&](Property& p) {
    each_thermal([&](double ej, double em, double t) {
      const XStateParams x = thermal_xstate(ej, em, Temperature(t));
      p.observe(closed(xstate_after_channel(x, {ChannelKind::AmplitudeDamping, 1.0})).lqu);
    });
  });

  run("channels.pd_offdiag_scaling", 1e-15, [](Property& p) {
    each_thermal([&](double ej, double em, double t) {
      const XStateParams x = thermal_xstate(ej, em, Temperature(t));
      for (double prob : kProbs) {
        const XStateParams y = xstate_after_channel(x, {ChannelKind::PhaseDamping, prob});
        p.observe(std::abs(y.c - x.c * (1.0 - prob)));
        p.observe(std::abs(y.d - x.d * (1.0 - prob)));
        p.require(y.aPlus == x.aPlus && y.aMinus == x.aMinus && y.b == x.b);
      }
    });
  });

  run("channels.state_validity", 1e-10, [](Property& p) {
    Rng rng(41);
    for (int i = 0; i < 10; ++i) {
      const ComplexMatrix rho = random_density_matrix(rng);
      for (ChannelKind ka : kKinds)
        for (ChannelKind kb : kKinds) {
          const ChannelSpec a{ka, rng.uniform()}, b{kb, rng.uniform()};
          p.observe(state_defect(apply_channel(rho, a, b)));
        }
    }
    each_thermal([&](double ej, double em, double t) {
      const ComplexMatrix rho = gibbs_state_numeric(build_hamiltonian_tqs({ej, ej, em}), Temperature(t));
      p.observe(state_defect(rho));
    });
  });

  bool all = true;
  for (const Property& p : props) {
    char line[160];
    std::snprintf(line, sizeof(line), "%s %-30s max_err=%.3e tol=%.0e\n", p.ok ? "PASS" : "FAIL",
                  p.name.c_str(), p.worst, p.tol);
    out << line;
    all = all && p.ok;
  }
  const auto passed = std::count_if(props.begin(), props.end(), [](const Property& p) { return p.ok; });
  out << "selftest: " << passed << "/" << props.size() << " properties passed\n";
  return all;
}

}  // namespace lqu_lab
