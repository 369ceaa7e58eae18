#include "factnet/errors.hpp"

namespace factnet {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::duplicate_system: return "DuplicateSystem";
    case errc::empty_name: return "EmptyName";
    case errc::unknown_system: return "UnknownSystem";
    case errc::duplicate_fact: return "DuplicateFact";
    case errc::not_incident: return "NotIncident";
    case errc::parallel_violation: return "ParallelViolation";
    case errc::diagonal_violation: return "DiagonalViolation";
    case errc::undefined_probability: return "UndefinedProbability";
    case errc::not_neighbor: return "NotNeighbor";
    case errc::name_collision: return "NameCollision";
    case errc::reduction_obstruction: return "ReductionObstruction";
    case errc::empty_keep_set: return "EmptyKeepSet";
    case errc::unknown_fact: return "UnknownFact";
    case errc::not_star_shaped: return "NotStarShaped";
    case errc::incomplete_ordering: return "IncompleteOrdering";
    case errc::non_positive_sigma: return "NonPositiveSigma";
    case errc::not_positive_semidefinite: return "NotPositiveSemidefinite";
    case errc::size_cap_exceeded: return "SizeCapExceeded";
    case errc::chain_violation: return "ChainViolation";
    case errc::invalid_maps: return "InvalidMaps";
    case errc::perspective_mismatch: return "PerspectiveMismatch";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::bad_params: return "BadParams";
    case errc::syntax_error: return "SyntaxError";
    case errc::semantic_error: return "SemanticError";
    case errc::numeric_failure: return "NumericFailure";
  }
  return "UnknownError";
}

}  // namespace factnet
