#include "factnet/hilbert.hpp"

#include <algorithm>
#include <cmath>

#include "factnet/errors.hpp"

namespace factnet {

namespace {

std::vector<std::uint32_t> set_indices(const AmplitudeTable& table,
                                       std::string_view neighbor) {
  auto span = table.net().fact_set_indices(table.system(), neighbor);
  if (span.empty())
    raise(errc::not_neighbor, "'" + std::string(neighbor) +
                                  "' is not a neighbor of '" + table.system() + "'");
  return {span.begin(), span.end()};
}

}  // namespace

GramMatrix gram_matrix(const AmplitudeTable& table) {
  GramMatrix out;
  out.system = table.system();
  std::vector<std::uint32_t> order;
  for (const auto& neighbor : table.net().neighborhood(table.system()))
    for (std::uint32_t i : table.net().fact_set_indices(table.system(), neighbor))
      order.push_back(i);
  out.matrix = ComplexMatrix(order.size(), order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    out.basis.push_back(table.net().fact_at(order[r]).id);
    for (std::size_t c = 0; c < order.size(); ++c)
      out.matrix(r, c) = table.value_at(order[r], order[c]);
  }
  return out;
}

std::vector<cplx> SelfSpace::column(std::string_view fact) const {
  auto it = std::find(basis.begin(), basis.end(), fact);
  if (it == basis.end())
    raise(errc::unknown_fact, "fact '" + std::string(fact) + "' is not in the basis");
  std::size_t c = static_cast<std::size_t>(it - basis.begin());
  std::vector<cplx> v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = h(i, c);
  return v;
}

SelfSpace self_space(const AmplitudeTable& table, double tol) {
  GramMatrix gram = gram_matrix(table);
  HermitianEigen eig = hermitian_eigen(gram.matrix);
  const std::size_t n = eig.values.size();

  SelfSpace out;
  out.system = gram.system;
  out.basis = gram.basis;
  out.eigenvalues = eig.values;
  if (n == 0) return out;

  if (eig.values.front() < -tol)
    raise(errc::not_positive_semidefinite,
          "Gram matrix of '" + table.system() + "' has eigenvalue " +
              std::to_string(eig.values.front()));

  const double lambda_max = eig.values.back();
  const double cut = tol * std::max(1.0, lambda_max);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (eig.values[i] > cut)
      kept.push_back(i);
    else
      out.eigenvalues[i] = 0.0;  // treated as zero by the rank decision
  }

  // H = sqrt(D') P† U with U† D U the eigendecomposition; rows of U are the
  // conjugated eigenvectors, so H row k = sqrt(lambda_k) * conj(v_k).
  out.dim = kept.size();
  out.h = ComplexMatrix(out.dim, n);
  for (std::size_t r = 0; r < out.dim; ++r) {
    const std::size_t k = kept[r];
    const double root = std::sqrt(eig.values[k]);
    for (std::size_t c = 0; c < n; ++c)
      out.h(r, c) = root * std::conj(eig.vectors(c, k));
  }
  return out;
}

ComplexMatrix amplitude_map(const AmplitudeTable& table, std::string_view a_system,
                            std::string_view b_system) {
  auto rows = set_indices(table, a_system);
  auto cols = set_indices(table, b_system);
  ComplexMatrix m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      m(r, c) = table.value_at(rows[r], cols[c]);
  return m;
}

double check_triangle(const AmplitudeTable& table, std::string_view a_system,
                      std::string_view b_system, std::string_view c_system,
                      double /*tol*/) {
  if (!table.net().is_star_shaped(table.system()))
    raise(errc::not_star_shaped,
          "triangle check requires a star-shaped net around '" + table.system() + "'");
  ComplexMatrix ca = amplitude_map(table, c_system, a_system);
  ComplexMatrix ab = amplitude_map(table, a_system, b_system);
  ComplexMatrix cb = amplitude_map(table, c_system, b_system);
  const double w = table.net().fact_set_weight(table.system(), a_system);
  return (ca * ab).scaled(w).max_abs_diff(cb);
}

std::vector<cplx> embed_fact(const AmplitudeTable& table, std::string_view b_fact,
                             std::string_view reference) {
  auto rows = set_indices(table, reference);
  std::uint32_t bi = table.net().fact_index(b_fact);
  const Fact& bf = table.net().fact_at(bi);
  if (bf.a != table.system() && bf.b != table.system())
    raise(errc::not_incident,
          "fact '" + std::string(b_fact) + "' is not incident to '" +
              table.system() + "'");
  std::vector<cplx> v(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) v[r] = table.value_at(rows[r], bi);
  return v;
}

ComplexMatrix relative_observable(const AmplitudeTable& table,
                                  std::string_view reference,
                                  std::string_view b_system,
                                  const std::map<std::string, double>& outcome) {
  auto rows = set_indices(table, reference);
  auto bs = set_indices(table, b_system);
  ComplexMatrix m(rows.size(), rows.size());
  for (std::uint32_t bi : bs) {
    const std::string& id = table.net().fact_at(bi).id;
    auto it = outcome.find(id);
    if (it == outcome.end())
      raise(errc::bad_params, "no outcome value for fact '" + id + "'");
    std::vector<cplx> ket(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      ket[r] = table.value_at(rows[r], bi);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows.size(); ++c)
        m(r, c) += it->second * ket[r] * std::conj(ket[c]);
  }
  return m;
}

ComplexMatrix translate_observable(const AmplitudeTable& table,
                                   const ComplexMatrix& observable_in_a,
                                   std::string_view a_system,
                                   std::string_view c_system, double tol) {
  ComplexMatrix ca = amplitude_map(table, c_system, a_system);
  ComplexMatrix ac = ca.adjoint();
  // Faithful translation needs a unitary frame map, which is the chain
  // property of (C, C) through A in matrix form.
  double unitarity = (ac * ca).max_abs_diff(ComplexMatrix::identity(ca.cols()));
  if (unitarity > tol)
    raise(errc::chain_violation,
          "frame map between '" + std::string(a_system) + "' and '" +
              std::string(c_system) + "' is not unitary (residual " +
              std::to_string(unitarity) + ")");
  if (observable_in_a.rows() != ca.cols() || observable_in_a.cols() != ca.cols())
    raise(errc::shape_mismatch, "observable shape does not match the reference basis");
  return ca * observable_in_a * ac;
}

ComplexMatrix isometry_phi(const SelfSpace& space, const AmplitudeTable& table,
                           std::string_view a_system) {
  auto cols = set_indices(table, a_system);
  ComplexMatrix phi(space.dim, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const std::string& id = table.net().fact_at(cols[c]).id;
    auto it = std::find(space.basis.begin(), space.basis.end(), id);
    if (it == space.basis.end())
      raise(errc::unknown_fact, "fact '" + id + "' missing from the self-space basis");
    std::size_t src = static_cast<std::size_t>(it - space.basis.begin());
    for (std::size_t r = 0; r < space.dim; ++r) phi(r, c) = space.h(r, src);
  }
  return phi;
}

std::vector<cplx> cj_state(const ComplexMatrix& map) {
  std::vector<cplx> v(map.rows() * map.cols());
  for (std::size_t b = 0; b < map.cols(); ++b)
    for (std::size_t a = 0; a < map.rows(); ++a)
      v[b * map.rows() + a] = map(a, b);
  return v;
}

std::vector<std::string> ExtendedSpace::basis_tuple(const FactNet& net,
                                                    std::size_t index) const {
  if (index >= dim) raise(errc::bad_params, "basis index out of range");
  std::vector<std::string> tuple(neighbor_order.size());
  // Lexicographic product order: the last factor varies fastest.
  for (std::size_t k = neighbor_order.size(); k-- > 0;) {
    std::size_t d = dims[k];
    std::size_t pos = index % d;
    index /= d;
    auto span = net.fact_set_indices(system, neighbor_order[k]);
    tuple[k] = net.fact_at(span[pos]).id;
  }
  return tuple;
}

ExtendedSpace extended_space(const AmplitudeTable& table, std::size_t cap) {
  ExtendedSpace out;
  out.system = table.system();
  out.neighbor_order = table.net().neighborhood(table.system());
  for (const auto& neighbor : out.neighbor_order) {
    std::size_t d = table.net().fact_set_indices(table.system(), neighbor).size();
    out.dims.push_back(d);
    if (d != 0 && out.dim > cap / d)
      raise(errc::size_cap_exceeded,
            "extended space of '" + table.system() + "' exceeds the size cap");
    out.dim *= d;
  }
  return out;
}

}  // namespace factnet
