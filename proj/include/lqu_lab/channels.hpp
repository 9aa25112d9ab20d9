#pragma once

// Local decoherence channels (amplitude damping, phase flip, phase damping)
// acting independently on both qubits, via Kraus operators and via their
// closed-form action on X states.

#include <string>
#include <string_view>

#include "lqu_lab/linalg.hpp"
#include "lqu_lab/lqu.hpp"
#include "lqu_lab/model.hpp"

namespace lqu_lab {

enum class ChannelKind { AmplitudeDamping, PhaseFlip, PhaseDamping };

// "ad", "pf", "pd"
std::string_view to_string(ChannelKind kind);
// Case-insensitive; throws InvalidSpec for anything else.
ChannelKind parse_channel_kind(std::string_view name);

struct ChannelSpec {
  ChannelKind kind = ChannelKind::AmplitudeDamping;
  double p = 0.0;  // decoherence parameter in [0, 1]

  // Throws InvalidChannel when p is outside [0, 1] or not finite.
  void validate() const;
};

// Single-qubit Kraus pair, k1^dagger k1 + k2^dagger k2 = I.
struct KrausPair {
  ComplexMatrix k1;
  ComplexMatrix k2;

  ComplexMatrix closure() const;
};

KrausPair kraus_ops(const ChannelSpec& spec);

// sum_ij (K_i x K_j) rho (K_i x K_j)^dagger with K_i from spec_a and K_j from
// spec_b.
ComplexMatrix apply_channel(const ComplexMatrix& rho, const ChannelSpec& spec_a,
                            const ChannelSpec& spec_b);

// The same channel on both qubits, written directly on the X entries.
XStateParams xstate_after_channel(const XStateParams& x, const ChannelSpec& spec);

// lqu_closed_xstate(xstate_after_channel(x, spec)).
ClosedFormDiagnostics lqu_closed_channel(const XStateParams& x, const ChannelSpec& spec);

}  // namespace lqu_lab
