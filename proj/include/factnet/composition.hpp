#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "factnet/amplitude.hpp"
#include "factnet/net.hpp"

namespace factnet {

/// Composite-fact id for the pair (a, b).
std::string composite_fact_id(std::string_view a_fact, std::string_view b_fact);

/// Composite-system name for A and B.
std::string composite_system_name(std::string_view a_system, std::string_view b_system);

struct GlueResult {
  FactNet net;
  AmplitudeTable table;  // table of the observing system, extended
  std::string composite;
  /// composite fact id -> (fact of F_SA, fact of F_SB)
  std::map<std::string, std::pair<std::string, std::string>> pairing;
};

/// Glue two neighbors of `s` into one composite system whose fact-set is the
/// product of the originals. The amplitude on `s` is extended by
/// W((a0,b), a1) = delta(a0,a1) W(b, a1) and the mirrored B-marginal rule;
/// amplitudes between composite facts and any further neighbor stay unset.
GlueResult glue(const FactNet& net, const AmplitudeTable& table, std::string_view s,
                std::string_view a_system, std::string_view b_system);

struct SplitResult {
  FactNet net;
  AmplitudeTable table;
  /// original fact id -> qubit system name
  std::map<std::string, std::string> qubits;
};

/// Promote every fact of F_SA to a yes/no qubit system with facts
/// "0_<id>"/"1_<id>". The 1-sector inherits the original cross amplitudes;
/// amplitudes involving the 0-facts are genuinely new information and stay
/// unset. The original system is dropped when the split leaves it isolated.
SplitResult split_to_qubits(const FactNet& net, const AmplitudeTable& table,
                            std::string_view s, std::string_view a_system);

/// Inverse of the split: merges qubit systems back into one neighbor whose
/// facts are named after the qubits. Requires W(1_i, 1_j) = 0 at tolerance
/// (ReductionObstruction otherwise); information held by the 0-facts is
/// discarded.
std::pair<FactNet, AmplitudeTable> reduce_from_qubits(
    const FactNet& net, const AmplitudeTable& table, std::string_view s,
    const std::vector<std::string>& qubit_systems, std::string_view merged_name,
    double tol = kDefaultTol);

/// Self-fact id used by enable_self_facts.
std::string self_fact_id(std::string_view system);

/// Turns on the single-self-fact convention and gives every system its
/// |F_AA| = 1 fact. Idempotent.
FactNet enable_self_facts(const FactNet& net);

}  // namespace factnet
