#include <doctest.h>

#include <cmath>

#include "factnet/complex_matrix.hpp"
#include "factnet/errors.hpp"
#include "test_support.hpp"

using namespace factnet;
namespace tt = factnet::testing;

TEST_CASE("eigen of [[1,2],[2,1]] is {-1,3}") {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 2.0;
  m(1, 0) = 2.0;
  m(1, 1) = 1.0;
  auto eig = hermitian_eigen(m);
  CHECK(eig.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eig.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("eigen of a complex 2x2") {
  // [[2, i], [-i, 2]] has eigenvalues 1 and 3
  ComplexMatrix m(2, 2);
  m(0, 0) = 2.0;
  m(0, 1) = cplx{0.0, 1.0};
  m(1, 0) = cplx{0.0, -1.0};
  m(1, 1) = 2.0;
  auto eig = hermitian_eigen(m);
  CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("random hermitian: reconstruction, unitarity, ordering, phase") {
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = tt::pick(1, 18);
    ComplexMatrix a = tt::random_hermitian(n, 2.0);
    auto eig = hermitian_eigen(a);

    REQUIRE(eig.values.size() == n);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(eig.values[i] <= eig.values[i + 1]);

    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = eig.values[i];
    ComplexMatrix rebuilt = eig.vectors * d * eig.vectors.adjoint();
    CHECK(rebuilt.max_abs_diff(a) < 1e-11 * std::max(1.0, a.max_abs()));

    ComplexMatrix gram = eig.vectors.adjoint() * eig.vectors;
    CHECK(gram.max_abs_diff(ComplexMatrix::identity(n)) < 1e-12);

    for (std::size_t k = 0; k < n; ++k) {
      double best = 0.0;
      cplx lead{};
      for (std::size_t i = 0; i < n; ++i)
        if (std::abs(eig.vectors(i, k)) > best + 1e-14) {
          best = std::abs(eig.vectors(i, k));
          lead = eig.vectors(i, k);
        }
      CHECK(lead.real() > 0.0);
      CHECK(std::abs(lead.imag()) < 1e-12);
    }
  }
}

TEST_CASE("singular values and rank") {
  ComplexMatrix ones(2, 2);
  ones(0, 0) = ones(0, 1) = ones(1, 0) = ones(1, 1) = 1.0;
  auto sv = singular_values(ones);
  CHECK(sv[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sv[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rank(ones, 1e-9) == 1);

  ComplexMatrix iso = tt::random_isometry(5, 3);
  auto sv2 = singular_values(iso);
  for (double s : sv2) CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rank(iso, 1e-9) == 3);
}

TEST_CASE("shape errors") {
  ComplexMatrix a(2, 3), b(2, 3);
  CHECK_THROWS_AS(a * b, Error);
  CHECK_NOTHROW(a * b.adjoint());
}
