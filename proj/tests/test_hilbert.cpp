#include <doctest.h>

#include <cmath>
#include <memory>

#include "factnet/composition.hpp"
#include "factnet/errors.hpp"
#include "factnet/hilbert.hpp"
#include "factnet/scenarios.hpp"
#include "test_support.hpp"

using namespace factnet;
namespace tt = factnet::testing;

namespace {

const double kS = std::sqrt(0.5);

AmplitudeTable sg_table(Scenario which = Scenario::two_sg) {
  return generate({which, {}}).tables.at("S");
}

ComplexMatrix reorder(const GramMatrix& gram, const std::vector<std::string>& order) {
  ComplexMatrix m(order.size(), order.size());
  auto at = [&](const std::string& id) {
    return static_cast<std::size_t>(
        std::find(gram.basis.begin(), gram.basis.end(), id) - gram.basis.begin());
  };
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j)
      m(i, j) = gram.matrix(at(order[i]), at(order[j]));
  return m;
}

}  // namespace

TEST_CASE("two-SG Gram matrix in the {0,1,+,-} basis") {
  GramMatrix gram = gram_matrix(sg_table());
  REQUIRE(gram.basis.size() == 4);
  ComplexMatrix m = reorder(gram, {"0", "1", "+", "-"});
  const double e[4][4] = {{1, 0, kS, kS}, {0, 1, kS, -kS}, {kS, kS, 1, 0},
                          {kS, -kS, 0, 1}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(m(i, j) == cplx{e[i][j], 0.0});
}

TEST_CASE("single-edge Gram matrix is the identity") {
  FactNet net = FactNetBuilder()
                    .add_system("A")
                    .add_system("B")
                    .add_fact("A", "B", "x0")
                    .add_fact("A", "B", "x1")
                    .add_fact("A", "B", "x2")
                    .build();
  AmplitudeTable table(net, "A");
  GramMatrix gram = gram_matrix(table);
  CHECK(gram.matrix.max_abs_diff(ComplexMatrix::identity(3)) == 0.0);
}

TEST_CASE("Gram diagonal blocks are identities for any strict table") {
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::size_t> sizes{tt::pick(1, 4), tt::pick(1, 4)};
    FactNet net;
    AmplitudeTable table = tt::random_star(sizes, 0.8, &net);
    GramMatrix gram = gram_matrix(table);
    std::size_t offset = 0;
    for (std::size_t s : sizes) {
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
          CHECK(gram.matrix(offset + i, offset + j) ==
                (i == j ? cplx{1.0, 0.0} : cplx{}));
      offset += s;
    }
  }
}

TEST_CASE("two-SG self-space: eigenvalues {0,0,2,2}, dimension 2") {
  SelfSpace space = self_space(sg_table());
  REQUIRE(space.eigenvalues.size() == 4);
  CHECK(space.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(space.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(space.eigenvalues[2] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(space.eigenvalues[3] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(space.dim == 2);

  // reconstructed pairings match the table
  GramMatrix gram = gram_matrix(sg_table());
  ComplexMatrix rebuilt = space.h.adjoint() * space.h;
  CHECK(rebuilt.max_abs_diff(gram.matrix) < 1e-12);
}

TEST_CASE("single-edge self-space matches the relative space") {
  FactNet net = FactNetBuilder()
                    .add_system("A")
                    .add_system("B")
                    .add_fact("A", "B", "x0")
                    .add_fact("A", "B", "x1")
                    .build();
  AmplitudeTable table(net, "A");
  SelfSpace space = self_space(table);
  CHECK(space.dim == 2);
  ComplexMatrix hh = space.h * space.h.adjoint();
  CHECK(hh.max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);
}

TEST_CASE("indefinite pairing is rejected with the offending eigenvalue") {
  // two single-fact sets with cross amplitude 2: eigenvalues {-1, 3}
  FactNet net = FactNetBuilder()
                    .add_system("S")
                    .add_system("A")
                    .add_system("B")
                    .add_fact("S", "A", "a")
                    .add_fact("S", "B", "b")
                    .build();
  auto ptr = std::make_shared<const FactNet>(net);
  AmplitudeTable table =
      AmplitudeTableBuilder(ptr, "S").set("a", "b", cplx{2.0, 0.0}).build();
  CHECK_THROWS_WITH_AS(self_space(table), doctest::Contains("-1.0"), Error);
  try {
    self_space(table);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_positive_semidefinite);
  }
}

TEST_CASE("self-space reconstruction for random PSD tables") {
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t blocks = tt::pick(2, 3);
    std::vector<std::size_t> sizes;
    std::size_t max_size = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      sizes.push_back(tt::pick(1, 4));
      max_size = std::max(max_size, sizes.back());
    }
    FactNet net;
    AmplitudeTable table = tt::psd_star(sizes, max_size + tt::pick(0, 2), &net);
    SelfSpace space = self_space(table);
    GramMatrix gram = gram_matrix(table);
    CHECK((space.h.adjoint() * space.h).max_abs_diff(gram.matrix) < 1e-8);
    std::size_t min_size = *std::min_element(sizes.begin(), sizes.end());
    std::size_t total = 0;
    for (std::size_t s : sizes) total += s;
    CHECK(space.dim >= min_size);
    CHECK(space.dim <= total);
  }
}

TEST_CASE("self-space gauge freedom leaves invariants alone") {
  SelfSpace space = self_space(sg_table(Scenario::three_sg));
  ComplexMatrix v = tt::random_unitary(space.dim);
  ComplexMatrix rotated = v * space.h;
  GramMatrix gram = gram_matrix(sg_table(Scenario::three_sg));
  CHECK((rotated.adjoint() * rotated).max_abs_diff(gram.matrix) < 1e-12);
}

TEST_CASE("amplitude map between the Stern-Gerlach frames") {
  ComplexMatrix m = amplitude_map(sg_table(), "SGx", "SGz");
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == cplx{kS, 0.0});
  CHECK(m(0, 1) == cplx{kS, 0.0});
  CHECK(m(1, 0) == cplx{kS, 0.0});
  CHECK(m(1, 1) == cplx{-kS, 0.0});

  ComplexMatrix self = amplitude_map(sg_table(), "SGz", "SGz");
  CHECK(self.max_abs_diff(ComplexMatrix::identity(2)) == 0.0);

  ComplexMatrix xz = amplitude_map(sg_table(Scenario::three_sg), "SGx", "SGz");
  CHECK((xz.adjoint() * xz).max_abs_diff(ComplexMatrix::identity(2)) < 1e-15);
}

TEST_CASE("triangle commutativity on the three-SG star") {
  auto table = sg_table(Scenario::three_sg);
  for (const char* a : {"SGx", "SGy", "SGz"})
    for (const char* b : {"SGx", "SGy", "SGz"})
      for (const char* c : {"SGx", "SGy", "SGz"})
        CHECK(check_triangle(table, a, b, c) < 1e-14);
  // B = C probes unitarity
  CHECK(check_triangle(table, "SGz", "SGx", "SGx") < 1e-14);
}

TEST_CASE("triangle check demands a star") {
  FactNet net = FactNetBuilder()
                    .add_system("A")
                    .add_system("B")
                    .add_system("C")
                    .add_fact("A", "B", "ab")
                    .add_fact("B", "C", "bc")
                    .add_fact("A", "C", "ac")
                    .build();
  AmplitudeTable table(net, "A");
  CHECK_THROWS_AS(check_triangle(table, "B", "C", "B"), Error);
}

TEST_CASE("embedded kets") {
  auto table = sg_table();
  auto plus = embed_fact(table, "+", "SGz");
  REQUIRE(plus.size() == 2);
  CHECK(plus[0] == cplx{kS, 0.0});
  CHECK(plus[1] == cplx{kS, 0.0});

  auto zero = embed_fact(table, "0", "SGz");
  CHECK(zero[0] == cplx{1.0, 0.0});
  CHECK(zero[1] == cplx{});

  auto three = sg_table(Scenario::three_sg);
  auto pi = embed_fact(three, "+i", "SGz");
  auto mi = embed_fact(three, "-i", "SGz");
  cplx inner{};
  for (std::size_t i = 0; i < pi.size(); ++i) inner += std::conj(pi[i]) * mi[i];
  CHECK(std::abs(inner - three.value("+i", "-i")) < 1e-15);
  CHECK(std::abs(inner) < 1e-15);
}

TEST_CASE("relative observables") {
  auto table = sg_table();
  ComplexMatrix sz = relative_observable(table, "SGz", "SGz", {{"0", 1.0}, {"1", -1.0}});
  CHECK(sz(0, 0) == cplx{1.0, 0.0});
  CHECK(sz(1, 1) == cplx{-1.0, 0.0});
  CHECK(sz(0, 1) == cplx{});

  ComplexMatrix sx = relative_observable(table, "SGz", "SGx", {{"+", 1.0}, {"-", -1.0}});
  CHECK(std::abs(sx(0, 0)) < 1e-15);
  CHECK(std::abs(sx(1, 1)) < 1e-15);
  CHECK(std::abs(sx(0, 1) - cplx{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(sx(1, 0) - cplx{1.0, 0.0}) < 1e-15);

  // completeness on a chain-complete system: f == 1 resolves the identity
  auto three = sg_table(Scenario::three_sg);
  ComplexMatrix unit =
      relative_observable(three, "SGz", "SGy", {{"+i", 1.0}, {"-i", 1.0}});
  CHECK(unit.max_abs_diff(ComplexMatrix::identity(2)) < 1e-15);
}

TEST_CASE("observable translation between frames") {
  auto table = sg_table();
  ComplexMatrix sx = relative_observable(table, "SGz", "SGx", {{"+", 1.0}, {"-", -1.0}});
  ComplexMatrix in_x = translate_observable(table, sx, "SGz", "SGx");
  CHECK(std::abs(in_x(0, 0) - cplx{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(in_x(1, 1) - cplx{-1.0, 0.0}) < 1e-14);
  CHECK(std::abs(in_x(0, 1)) < 1e-14);

  ComplexMatrix same = translate_observable(table, sx, "SGz", "SGz");
  CHECK(same.max_abs_diff(sx) < 1e-14);

  // spectra agree between frames
  auto ea = hermitian_eigen(sx);
  auto ec = hermitian_eigen(in_x);
  for (std::size_t i = 0; i < ea.values.size(); ++i)
    CHECK(ea.values[i] == doctest::Approx(ec.values[i]).epsilon(1e-12));

  // eigenvectors of the translated observable are the embedded facts
  auto eig = hermitian_eigen(sx);  // in the z frame: eigenvalues -1 (-), +1 (+)
  auto minus = embed_fact(table, "-", "SGz");
  auto plus = embed_fact(table, "+", "SGz");
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(eig.vectors(i, 0) - minus[i]) < 1e-12);
    CHECK(std::abs(eig.vectors(i, 1) - plus[i]) < 1e-12);
  }
}

TEST_CASE("translation refuses non-unitary frame maps") {
  FactNet net;
  AmplitudeTable table = tt::psd_star({2, 2}, 4, &net);
  ComplexMatrix obs = ComplexMatrix::identity(2);
  CHECK_THROWS_AS(translate_observable(table, obs, "N0", "N1"), Error);
}

TEST_CASE("isometries into the self-space") {
  auto table = sg_table();
  SelfSpace space = self_space(table);
  ComplexMatrix phi_z = isometry_phi(space, table, "SGz");
  ComplexMatrix phi_x = isometry_phi(space, table, "SGx");
  ComplexMatrix w_zx = amplitude_map(table, "SGz", "SGx");
  CHECK((phi_z.adjoint() * phi_x).max_abs_diff(w_zx) < 1e-12);
  // chain-complete: phi composed with the amplitude map closes the triangle
  CHECK((phi_z * w_zx).max_abs_diff(phi_x) < 1e-12);
  // and the inclusions are unitary here
  CHECK((phi_z.adjoint() * phi_z).max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);
  CHECK((phi_z * phi_z.adjoint()).max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);
}

TEST_CASE("proper isometries on a non-chain-complete net") {
  FactNet net;
  AmplitudeTable table = tt::psd_star({2, 2, 2}, 5, &net);
  SelfSpace space = self_space(table);
  if (space.dim > 2) {
    ComplexMatrix phi = isometry_phi(space, table, "N0");
    CHECK((phi.adjoint() * phi).max_abs_diff(ComplexMatrix::identity(2)) < 1e-9);
    CHECK((phi * phi.adjoint()).max_abs_diff(ComplexMatrix::identity(space.dim)) >
          1e-3);
  }
}

TEST_CASE("Choi-Jamiolkowski states") {
  auto doc = generate({Scenario::entanglement, {}});
  ComplexMatrix m = amplitude_map(doc.tables.at("O"), "A", "B");
  auto state = cj_state(m);
  REQUIRE(state.size() == 4);
  CHECK(std::abs(state[0] - cplx{kS, 0.0}) < 1e-15);  // |b0 a0>
  CHECK(std::abs(state[1]) < 1e-15);
  CHECK(std::abs(state[2]) < 1e-15);
  CHECK(std::abs(state[3] - cplx{kS, 0.0}) < 1e-15);  // |b1 a1>

  auto ident = cj_state(ComplexMatrix::identity(2));
  CHECK(ident[0] == cplx{1.0, 0.0});
  CHECK(ident[3] == cplx{1.0, 0.0});

  auto spinor = generate({Scenario::spinor, {}});
  ComplexMatrix sm = amplitude_map(spinor.tables.at("S"), "X", "SGz");
  auto sstate = cj_state(sm);
  for (std::size_t sigma = 0; sigma < 2; ++sigma)
    for (std::size_t x = 0; x < 2; ++x)
      CHECK(std::abs(sstate[sigma * 2 + x] -
                     sm(x, sigma)) < 1e-15);
}

TEST_CASE("extended space dimensions") {
  auto table = sg_table();
  ExtendedSpace ext = extended_space(table);
  CHECK(ext.dim == 4);
  CHECK(ext.neighbor_order == std::vector<std::string>{"SGx", "SGz"});
  auto first = ext.basis_tuple(table.net(), 0);
  CHECK(first == std::vector<std::string>{"+", "0"});
  auto last = ext.basis_tuple(table.net(), 3);
  CHECK(last == std::vector<std::string>{"-", "1"});

  CHECK_THROWS_AS(extended_space(table, 3), Error);

  // the glued composite's relative space has the product dimension
  auto doc = generate({Scenario::two_sg, {}});
  GlueResult glued = glue(doc.net, doc.tables.at("S"), "S", "SGz", "SGx");
  CHECK(glued.net.fact_set("S", glued.composite).size() ==
        doc.net.fact_set("S", "SGz").size() * doc.net.fact_set("S", "SGx").size());
}

TEST_CASE("three-frame Gram spectrum counts the frames") {
  // three unitarily related two-fact frames: nonzero eigenvalues {3, 3}
  SelfSpace space = self_space(sg_table(Scenario::three_sg));
  REQUIRE(space.eigenvalues.size() == 6);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(space.eigenvalues[i] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(space.eigenvalues[4] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(space.eigenvalues[5] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(space.dim == 2);
}
