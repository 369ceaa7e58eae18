#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "factnet/complex_matrix.hpp"
#include "factnet/net.hpp"

namespace factnet {

/// One detected consistency defect of a table loaded in lenient mode.
struct Violation {
  enum class Kind { hermitian, parallel, diagonal };
  Kind kind;
  std::string f;
  std::string g;
  cplx actual;
  cplx expected;
  std::string describe() const;
};

/// Outcome of a chain-property probe for the neighbor triple (a_set, b_set)
/// through the intermediate fact-set of `c_set`.
struct ChainReport {
  std::string a_set;
  std::string b_set;
  std::string c_set;
  double residual = 0.0;
  bool holds = true;
  std::string worst_f;
  std::string worst_g;
};

inline constexpr double kDefaultTol = 1e-9;

/// Pairing W_S on the facts incident to one system. Hermitian by
/// construction in strict mode: setting (f,g) also records (g,f) conjugated.
/// Unset pairs read as 0 off the diagonal and 1 on it, which encodes the
/// parallel-fact convention.
class AmplitudeTable {
 public:
  AmplitudeTable() = default;
  AmplitudeTable(std::shared_ptr<const FactNet> net, std::string system);
  AmplitudeTable(const FactNet& net, std::string system);

  const FactNet& net() const { return *net_; }
  const std::shared_ptr<const FactNet>& net_ptr() const { return net_; }
  const std::string& system() const { return system_; }

  /// Strict write; returns a new table with (f,g) and (g,f) recorded.
  AmplitudeTable set_amplitude(std::string_view f, std::string_view g, cplx z) const;

  cplx value(std::string_view f, std::string_view g) const;
  cplx value_at(std::uint32_t fi, std::uint32_t gi) const;
  bool is_set(std::string_view f, std::string_view g) const;

  std::vector<Violation> check_hermitian(double tol = kDefaultTol) const;
  std::vector<Violation> check_parallel(double tol = kDefaultTol) const;

  /// Born-rule conditional probability P(a|b), normalised over the
  /// fact-set containing `a`. Throws UndefinedProbability when every
  /// amplitude in that column vanishes.
  double conditional_probability(std::string_view a, std::string_view b) const;

  /// Sum over the fact-set of `via` of W(f,c) W(c,g), scaled by that
  /// fact-set's quadrature weight.
  cplx chain_sum(std::string_view f, std::string_view g, std::string_view via) const;

  ChainReport chain_residual(std::string_view a_set, std::string_view b_set,
                             std::string_view c_set, double tol = kDefaultTol) const;

  /// Chain property for every ordered triple of distinct neighbors.
  /// Returns the verdict and the worst report (ties keep the
  /// lexicographically first triple).
  std::pair<bool, ChainReport> is_chain_complete(double tol = kDefaultTol) const;

  /// Explicitly stored entries, keyed by fact-index pair.
  const std::unordered_map<std::uint64_t, cplx>& entries() const { return entries_; }

  bool same_values(const AmplitudeTable& rhs, double tol = 0.0) const;

  /// Rebinds entries onto another net (used by restriction); entries whose
  /// facts are absent from the new net are dropped.
  AmplitudeTable rebind(std::shared_ptr<const FactNet> net) const;

 private:
  friend class AmplitudeTableBuilder;
  void require_incident(std::string_view f) const;
  std::uint32_t index_of(std::string_view f) const;

  std::shared_ptr<const FactNet> net_;
  std::string system_;
  std::unordered_map<std::uint64_t, cplx> entries_;
};

/// Mutable counterpart for scenario generation and lenient deserialisation.
class AmplitudeTableBuilder {
 public:
  AmplitudeTableBuilder(std::shared_ptr<const FactNet> net, std::string system);
  explicit AmplitudeTableBuilder(AmplitudeTable seed);

  /// Strict write: validates incidence, the parallel-fact rule and the unit
  /// diagonal, then records both directions.
  AmplitudeTableBuilder& set(std::string_view f, std::string_view g, cplx z);

  /// Lenient single-direction write; no validation beyond incidence.
  AmplitudeTableBuilder& set_raw(std::string_view f, std::string_view g, cplx z);

  /// Fills in missing conjugate partners for raw writes.
  AmplitudeTableBuilder& close_hermitian();

  AmplitudeTable build() const;

 private:
  AmplitudeTable table_;
};

}  // namespace factnet
