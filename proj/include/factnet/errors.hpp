#pragma once

#include <stdexcept>
#include <string>

namespace factnet {

/// Failure categories surfaced by the library. Every thrown error carries one.
enum class errc {
  duplicate_system,
  empty_name,
  unknown_system,
  duplicate_fact,
  not_incident,
  parallel_violation,
  diagonal_violation,
  undefined_probability,
  not_neighbor,
  name_collision,
  reduction_obstruction,
  empty_keep_set,
  unknown_fact,
  not_star_shaped,
  incomplete_ordering,
  non_positive_sigma,
  not_positive_semidefinite,
  size_cap_exceeded,
  chain_violation,
  invalid_maps,
  perspective_mismatch,
  shape_mismatch,
  bad_params,
  syntax_error,
  semantic_error,
  numeric_failure,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace factnet
