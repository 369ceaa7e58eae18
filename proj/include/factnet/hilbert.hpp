#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "factnet/amplitude.hpp"
#include "factnet/complex_matrix.hpp"

namespace factnet {

/// W_S assembled as a matrix over all facts incident to the system. Basis is
/// the concatenation of the neighbor fact-sets, neighbors and facts in sorted
/// order; diagonal blocks are identities by the parallel-fact convention.
struct GramMatrix {
  std::string system;
  std::vector<std::string> basis;  // fact ids in matrix order
  ComplexMatrix matrix;
};

GramMatrix gram_matrix(const AmplitudeTable& table);

/// Factor H with H†H equal to the Gram matrix. Columns are the embedded
/// fact vectors; `dim` is the rank of the Gram matrix at tolerance.
struct SelfSpace {
  std::string system;
  std::vector<std::string> basis;
  std::size_t dim = 0;
  ComplexMatrix h;                 // dim x |F_S|
  std::vector<double> eigenvalues;  // of the Gram matrix, ascending

  std::vector<cplx> column(std::string_view fact) const;
};

/// Eigendecompose the Gram matrix and build H. Fails with
/// NotPositiveSemidefinite when an eigenvalue sits below -tol; eigenvalues
/// within the relative cutoff tol*max(1, lambda_max) are treated as zero.
SelfSpace self_space(const AmplitudeTable& table, double tol = kDefaultTol);

/// Matrix of W_S between the bases of two relative spaces:
/// entry (a, b) = W_S(a, b) with rows over F_SA and columns over F_SB.
ComplexMatrix amplitude_map(const AmplitudeTable& table, std::string_view a_system,
                            std::string_view b_system);

/// Max-norm residual of W^S_CA * W^S_AB - W^S_CB (weighted by the
/// intermediate fact-set); zero exactly when the chain property holds for
/// C and B with respect to A.
double check_triangle(const AmplitudeTable& table, std::string_view a_system,
                      std::string_view b_system, std::string_view c_system,
                      double tol = kDefaultTol);

/// Components of |b> = sum_a W(a,b) |a> over the reference fact-set F_SA.
std::vector<cplx> embed_fact(const AmplitudeTable& table, std::string_view b_fact,
                             std::string_view reference);

/// Spectral form sum_b f(b) |b><b| on the reference relative space.
ComplexMatrix relative_observable(const AmplitudeTable& table,
                                  std::string_view reference,
                                  std::string_view b_system,
                                  const std::map<std::string, double>& outcome);

/// Conjugation B_C = W^S_CA B_A W^S_AC. Requires the map between the two
/// reference frames to be unitary at tolerance (ChainViolation otherwise).
ComplexMatrix translate_observable(const AmplitudeTable& table,
                                   const ComplexMatrix& observable_in_a,
                                   std::string_view a_system,
                                   std::string_view c_system,
                                   double tol = kDefaultTol);

/// Restriction of H to the columns of one neighbor fact-set.
ComplexMatrix isometry_phi(const SelfSpace& space, const AmplitudeTable& table,
                           std::string_view a_system);

/// Choi-Jamiolkowski vector of a map: |W> = sum_b |b> (x) M|b>.
/// Index layout: coefficient of |b>|a> sits at b*rows + a.
std::vector<cplx> cj_state(const ComplexMatrix& map);

/// Tensor product of all relative spaces of a system.
struct ExtendedSpace {
  std::string system;
  std::vector<std::string> neighbor_order;
  std::vector<std::size_t> dims;
  std::size_t dim = 1;

  /// Fact-id tuple of one product basis vector (lexicographic order).
  std::vector<std::string> basis_tuple(const FactNet& net, std::size_t index) const;
};

ExtendedSpace extended_space(const AmplitudeTable& table,
                             std::size_t cap = std::size_t{1} << 20);

}  // namespace factnet
