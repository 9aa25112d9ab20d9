#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "lqu_lab/channels.hpp"
#include "lqu_lab/errors.hpp"
#include "lqu_lab/sampling.hpp"

using namespace lqu_lab;
using testing::diff;

namespace {

constexpr std::array<ChannelKind, 3> kAll = {ChannelKind::AmplitudeDamping, ChannelKind::PhaseFlip,
                                             ChannelKind::PhaseDamping};

// Single-qubit map applied to a 2x2 matrix.
ComplexMatrix apply1(const KrausPair& k, const ComplexMatrix& rho) {
  return k.k1 * rho * k.k1.adjoint() + k.k2 * rho * k.k2.adjoint();
}

}  // namespace

TEST_CASE("channel names") {
  CHECK(parse_channel_kind("ad") == ChannelKind::AmplitudeDamping);
  CHECK(parse_channel_kind("PF") == ChannelKind::PhaseFlip);
  CHECK(parse_channel_kind("Pd") == ChannelKind::PhaseDamping);
  CHECK_THROWS_AS(parse_channel_kind("depolarizing"), InvalidSpec);
  for (ChannelKind k : kAll) CHECK(parse_channel_kind(to_string(k)) == k);
}

TEST_CASE("channel parameter domain") {
  CHECK_NOTHROW((ChannelSpec{ChannelKind::PhaseFlip, 0.0}.validate()));
  CHECK_NOTHROW((ChannelSpec{ChannelKind::PhaseFlip, 1.0}.validate()));
  CHECK_THROWS_AS((ChannelSpec{ChannelKind::PhaseFlip, -0.01}.validate()), InvalidChannel);
  CHECK_THROWS_AS((ChannelSpec{ChannelKind::PhaseFlip, 1.01}.validate()), InvalidChannel);
  CHECK_THROWS_AS(kraus_ops({ChannelKind::AmplitudeDamping, std::nan("")}), InvalidChannel);
}

TEST_CASE("Kraus pairs are trace preserving") {
  for (ChannelKind k : kAll)
    for (int i = 0; i <= 20; ++i) {
      const KrausPair kp = kraus_ops({k, i / 20.0});
      CHECK(diff(kp.closure(), ComplexMatrix::identity(2)) <= 1e-12);
    }
}

TEST_CASE("single-qubit action") {
  const ComplexMatrix excited = ComplexMatrix::diagonal({0, 1});
  const ComplexMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
  SUBCASE("p = 0 is the identity map for the damping channels") {
    for (ChannelKind k : {ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping}) {
      CHECK(diff(apply1(kraus_ops({k, 0.0}), plus), plus) < 1e-18);
      CHECK(diff(apply1(kraus_ops({k, 0.0}), excited), excited) < 1e-18);
    }
  }
  SUBCASE("full amplitude damping relaxes |1> to |0>") {
    CHECK(diff(apply1(kraus_ops({ChannelKind::AmplitudeDamping, 1.0}), excited),
               ComplexMatrix::diagonal({1, 0})) < 1e-18);
  }
  SUBCASE("amplitude damping relaxes populations linearly") {
    const ComplexMatrix out = apply1(kraus_ops({ChannelKind::AmplitudeDamping, 0.3}), excited);
    CHECK(std::abs(static_cast<double>(out(0, 0).real()) - 0.3) < 1e-15);
  }
  SUBCASE("phase flip: p weights the identity, 1 - p the sigma_z conjugation") {
    const KrausPair one = kraus_ops({ChannelKind::PhaseFlip, 1.0});
    CHECK(one.k1 == ComplexMatrix::identity(2));
    CHECK(one.k2 == ComplexMatrix::zero(2));
    CHECK(diff(apply1(kraus_ops({ChannelKind::PhaseFlip, 0.0}), plus),
               pauli::z() * plus * pauli::z()) < 1e-18);
    const ComplexMatrix half = apply1(kraus_ops({ChannelKind::PhaseFlip, 0.5}), plus);
    CHECK(std::abs(half(0, 1)) < 1e-18L);
  }
  SUBCASE("phase damping scales coherences by sqrt(1 - p)") {
    const ComplexMatrix out = apply1(kraus_ops({ChannelKind::PhaseDamping, 0.36}), plus);
    CHECK(std::abs(static_cast<double>(out(0, 1).real()) - 0.5 * 0.8) < 1e-15);
    CHECK(diff(apply1(kraus_ops({ChannelKind::PhaseDamping, 0.36}), excited), excited) < 1e-18);
  }
}

TEST_CASE("X-state channel formulas match the Kraus sum entry by entry") {
  Rng rng(201);
  for (int n = 0; n < 10; ++n) {
    const XStateParams x = random_xstate(rng);
    for (ChannelKind k : kAll)
      for (double p : {0.0, 0.15, 0.5, 0.85, 1.0}) {
        CAPTURE(static_cast<int>(k));
        CAPTURE(p);
        const ChannelSpec spec{k, p};
        const XStateParams y = xstate_after_channel(x, spec);
        const ComplexMatrix kraus = apply_channel(x.to_matrix(), spec, spec);
        CHECK(diff(y.to_matrix(), kraus) < 1e-15);
        // Carried determinants describe the new entries.
        CHECK(std::abs(static_cast<double>(y.outer_det() - (y.aPlus * y.aMinus - y.c * y.c))) < 1e-15);
        CHECK(std::abs(static_cast<double>(y.inner_det() - (y.b * y.b - y.d * y.d))) < 1e-15);
      }
  }
}

TEST_CASE("amplitude damping entries") {
  const XStateParams x{0.4, 0.1, 0.25, 0.1, -0.05};
  const double p = 0.3;
  const XStateParams y = xstate_after_channel(x, {ChannelKind::AmplitudeDamping, p});
  auto near = [](real a, double b) { return std::abs(static_cast<double>(a) - b) < 1e-16; };
  CHECK(near(y.aPlus, 0.4 + p * (2 * 0.25 + 0.1 * p)));
  CHECK(near(y.aMinus, 0.1 * (1 - p) * (1 - p)));
  CHECK(near(y.b, (1 - p) * (0.25 + 0.1 * p)));
  CHECK(near(y.c, 0.1 * (1 - p)));
  CHECK(near(y.d, -0.05 * (1 - p)));
}

TEST_CASE("structural channel identities on thermal states") {
  const XStateParams x = thermal_xstate(1.0, 1.0, Temperature(0.5));
  SUBCASE("phase flip") {
    const XStateParams half = xstate_after_channel(x, {ChannelKind::PhaseFlip, 0.5});
    CHECK(half.c == 0.0L);
    CHECK(half.d == 0.0L);
    CHECK(lqu_closed_channel(x, {ChannelKind::PhaseFlip, 0.5}).lqu <= 1e-9);
    for (double p : {0.1, 0.2, 0.3, 0.4}) {
      const double a = lqu_closed_channel(x, {ChannelKind::PhaseFlip, p}).lqu;
      const double b = lqu_closed_channel(x, {ChannelKind::PhaseFlip, 1 - p}).lqu;
      CHECK(std::abs(a - b) <= 1e-12);
    }
  }
  SUBCASE("full amplitude damping leaves |00>") {
    const XStateParams g = xstate_after_channel(x, {ChannelKind::AmplitudeDamping, 1.0});
    CHECK(std::abs(static_cast<double>(g.aPlus) - 1.0) < 1e-18);
    CHECK(g.aMinus == 0.0L);
    CHECK(g.b == 0.0L);
    const ClosedFormDiagnostics d = lqu_closed_channel(x, {ChannelKind::AmplitudeDamping, 1.0});
    CHECK(d.lqu <= 1e-12);
    CHECK(d.fallback);
  }
  SUBCASE("full phase damping removes all coherence") {
    const XStateParams g = xstate_after_channel(x, {ChannelKind::PhaseDamping, 1.0});
    CHECK(g.c == 0.0L);
    CHECK(g.d == 0.0L);
    CHECK(lqu_closed_xstate(g).lqu <= 1e-12);
  }
  SUBCASE("p = 0 changes nothing") {
    for (ChannelKind k : kAll) {
      CHECK(lqu_closed_channel(x, {k, 0.0}).lqu == lqu_closed_xstate(x).lqu);
    }
  }
}

TEST_CASE("post-channel LQU: closed form against the Kraus path") {
  for (double t : {0.05, 1.0})
    for (double ej : {0.5, 2.0})
      for (double em : {0.25, 3.0}) {
        const XStateParams x = thermal_xstate(ej, em, Temperature(t));
        const ComplexMatrix g = gibbs_state_numeric(build_hamiltonian_x({ej, ej, em}), Temperature(t));
        for (ChannelKind k : kAll)
          for (int i = 0; i <= 10; ++i) {
            const ChannelSpec spec{k, i / 10.0};
            CAPTURE(t);
            CAPTURE(ej);
            CAPTURE(em);
            CAPTURE(spec.p);
            const double closed = lqu_closed_channel(x, spec).lqu;
            CHECK(std::abs(closed - lqu_numeric(apply_channel(g, spec, spec))) <= 1e-9);
          }
      }
}

TEST_CASE("apply_channel keeps random states valid, also with different channels per qubit") {
  Rng rng(202);
  for (int n = 0; n < 10; ++n) {
    const ComplexMatrix rho = random_density_matrix(rng);
    for (ChannelKind a : kAll)
      for (ChannelKind b : kAll) {
        const ComplexMatrix out = apply_channel(rho, {a, rng.uniform()}, {b, rng.uniform()});
        CHECK_NOTHROW(validate_density_matrix(out));
      }
  }
  CHECK_THROWS_AS(apply_channel(ComplexMatrix::identity(4), {}, {}), NotADensityMatrix);
}
