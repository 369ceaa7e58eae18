#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factnet/amplitude.hpp"
#include "factnet/net.hpp"

namespace factnet {

/// Finite group given extensionally by its multiplication table.
class FactGroup {
 public:
  FactGroup() = default;
  FactGroup(std::vector<std::string> elements,
            std::vector<std::vector<std::string>> mul, std::string identity);

  /// Cyclic group of order n with elements "0".."n-1" ("0","pi" for n = 2).
  static FactGroup cyclic(std::size_t n);

  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& identity() const { return identity_; }
  const std::vector<std::vector<std::string>>& table() const { return mul_names_; }

  std::size_t index(std::string_view element) const;
  std::string multiply(std::string_view x, std::string_view y) const;
  std::string inverse(std::string_view x) const;

  /// Exhaustive closure/associativity/identity/inverse audit; empty when the
  /// table is a group.
  std::vector<std::string> validate() const;

 private:
  std::vector<std::string> elements_;
  std::vector<std::vector<std::string>> mul_names_;
  std::vector<std::vector<std::size_t>> mul_;
  std::vector<std::optional<std::size_t>> inv_;
  std::string identity_;
  bool shape_ok_ = false;
};

/// Per-ordered-pair bijections I^A_B : F_AB -> G on a triangle fact-net,
/// satisfying I^B_A(f) = I^A_B(f)^{-1}. Reverse maps omitted at construction
/// are derived through that property. Self-facts get the neutral element.
class IndexMaps {
 public:
  IndexMaps() = default;
  IndexMaps(std::shared_ptr<const FactNet> net, FactGroup group,
            std::map<std::pair<std::string, std::string>,
                     std::map<std::string, std::string>>
                assignments);

  const FactNet& net() const { return *net_; }
  const FactGroup& group() const { return group_; }

  /// I^A_B applied to a fact of F_AB.
  std::string to_group(std::string_view a_system, std::string_view b_system,
                       std::string_view fact) const;
  /// (I^A_B)^{-1} applied to a group element.
  std::string from_group(std::string_view a_system, std::string_view b_system,
                         std::string_view element) const;

  /// Bijectivity + inversion-property audit over every stored pair.
  std::vector<std::string> validate() const;

  const std::map<std::pair<std::string, std::string>,
                 std::map<std::string, std::string>>&
  assignments() const {
    return maps_;
  }

 private:
  std::shared_ptr<const FactNet> net_;
  FactGroup group_;
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>>
      maps_;
};

/// Basis rule of the change of perspective: for f in F_AB and h in F_AC
/// (A the shared system, B the f-side and C the h-side) returns the fact
/// g in F_BC with I^B_C(g) = I^A_C(h) * I^B_A(f).
std::string transform_basis_fact(const IndexMaps& maps, std::string_view f,
                                 std::string_view h);

/// Joint state of the two non-perspective systems, expanded over
/// F_{perspective,B} x F_{perspective,C} product basis vectors.
struct PerspectiveState {
  std::string perspective;
  std::map<std::pair<std::string, std::string>, cplx> coefficients;

  double norm() const;
};

/// Unitary change of quantum reference frame: each basis pair
/// |f> |h> of the A-perspective maps to |f> |g> with g from the basis rule.
PerspectiveState change_of_qrf(const IndexMaps& maps, const PerspectiveState& state,
                               std::string_view target);

/// Max-norm residual of W^A_BC - W^B_AC * W^C_BA over the triangle spanned
/// by the three tables (the composition runs H_{C|A} -> H_{C|B} -> H_{B|A}).
double triangle_consistency(const AmplitudeTable& table_a,
                            const AmplitudeTable& table_b,
                            const AmplitudeTable& table_c);

/// Exhaustively verifies f = G_C(g, G_B(f, g)) over all basis pairs of the
/// triangle; returns the verdict and any counterexamples.
std::pair<bool, std::vector<std::string>> consistency_check_functions(
    const IndexMaps& maps);

}  // namespace factnet
