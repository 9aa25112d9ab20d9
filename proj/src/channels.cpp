#include "lqu_lab/channels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "lqu_lab/errors.hpp"

namespace lqu_lab {

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AmplitudeDamping:
      return "ad";
    case ChannelKind::PhaseFlip:
      return "pf";
    case ChannelKind::PhaseDamping:
      return "pd";
  }
  return "?";
}

ChannelKind parse_channel_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "ad") return ChannelKind::AmplitudeDamping;
  if (lower == "pf") return ChannelKind::PhaseFlip;
  if (lower == "pd") return ChannelKind::PhaseDamping;
  throw InvalidSpec("unknown channel '" + std::string(name) + "' (expected ad, pf or pd)");
}

void ChannelSpec::validate() const {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    std::ostringstream msg;
    msg << "decoherence parameter p = " << p << " outside [0, 1]";
    throw InvalidChannel(msg.str());
  }
}

ComplexMatrix KrausPair::closure() const { return k1.adjoint() * k1 + k2.adjoint() * k2; }

KrausPair kraus_ops(const ChannelSpec& spec) {
  spec.validate();
  const real p = spec.p;
  const real sp = std::sqrt(p);
  const real sq = std::sqrt(1 - p);
  switch (spec.kind) {
    case ChannelKind::AmplitudeDamping:
      return {{{1.0, 0.0}, {0.0, sq}}, {{0.0, sp}, {0.0, 0.0}}};
    case ChannelKind::PhaseFlip:
      return {{{sp, 0.0}, {0.0, sp}}, {{sq, 0.0}, {0.0, -sq}}};
    case ChannelKind::PhaseDamping:
      return {{{1.0, 0.0}, {0.0, sq}}, {{0.0, 0.0}, {0.0, sp}}};
  }
  throw InternalError("kraus_ops: unhandled channel kind");
}

ComplexMatrix apply_channel(const ComplexMatrix& rho, const ChannelSpec& spec_a,
                            const ChannelSpec& spec_b) {
  validate_density_matrix(rho);
  const KrausPair ka = kraus_ops(spec_a);
  const KrausPair kb = kraus_ops(spec_b);
  ComplexMatrix out = ComplexMatrix::zero(4);
  for (const ComplexMatrix* a : {&ka.k1, &ka.k2}) {
    for (const ComplexMatrix* b : {&kb.k1, &kb.k2}) {
      const ComplexMatrix k = kron(*a, *b);
      out += k * rho * k.adjoint();
    }
  }
  return out;
}

XStateParams xstate_after_channel(const XStateParams& x, const ChannelSpec& spec) {
  x.validate();
  spec.validate();
  const real p = spec.p;
  const real q = 1 - p;
  const real outer = std::max(real(0), x.outer_det());
  const real inner = std::max(real(0), x.inner_det());
  XStateParams out = x;
  // Each map adds a non-negative amount to the block determinants, so they
  // are updated as sums rather than recomputed from the new entries.
  switch (spec.kind) {
    case ChannelKind::AmplitudeDamping: {
      const real gain = x.aMinus * p * (2 * x.b + x.aMinus * p);
      out.aPlus = x.aPlus + p * (2 * x.b + x.aMinus * p);
      out.aMinus = x.aMinus * q * q;
      out.b = q * (x.b + x.aMinus * p);
      out.c = x.c * q;
      out.d = x.d * q;
      out.outerDet = q * q * (outer + gain);
      out.innerDet = q * q * (inner + gain);
      break;
    }
    case ChannelKind::PhaseFlip: {
      const real f = (1 - 2 * p) * (1 - 2 * p);
      const real one_minus_f2 = 4 * p * q * (1 + f);  // 1 - f^2
      out.c = x.c * f;
      out.d = x.d * f;
      out.outerDet = outer + x.c * x.c * one_minus_f2;
      out.innerDet = inner + x.d * x.d * one_minus_f2;
      break;
    }
    case ChannelKind::PhaseDamping:
      out.c = x.c * q;
      out.d = x.d * q;
      out.outerDet = outer + x.c * x.c * p * (1 + q);
      out.innerDet = inner + x.d * x.d * p * (1 + q);
      break;
  }
  out.validate();
  return out;
}

ClosedFormDiagnostics lqu_closed_channel(const XStateParams& x, const ChannelSpec& spec) {
  return lqu_closed_xstate(xstate_after_channel(x, spec));
}

}  // namespace lqu_lab
