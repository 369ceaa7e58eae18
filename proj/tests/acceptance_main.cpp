// Acceptance suite: one line per criterion, nonzero exit when any fails.
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "factnet/composition.hpp"
#include "factnet/errors.hpp"
#include "factnet/hilbert.hpp"
#include "factnet/io.hpp"
#include "factnet/measurement.hpp"
#include "factnet/qrf.hpp"
#include "factnet/scenarios.hpp"
#include "test_support.hpp"

using namespace factnet;
namespace tt = factnet::testing;

namespace {

int failures = 0;

void verdict(int number, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", number, ok ? "PASS" : "FAIL",
              detail.c_str());
  if (!ok) ++failures;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// --- 1: Born probabilities of the two-Stern-Gerlach table ------------------
void criterion_1() {
  auto doc = generate({Scenario::two_sg, {}});
  const AmplitudeTable& table = doc.tables.at("S");
  double p0 = table.conditional_probability("0", "+");
  double p1 = table.conditional_probability("1", "+");
  bool ok = std::abs(p0 - 0.5) <= 1e-12 && std::abs(p1 - 0.5) <= 1e-12;
  verdict(1, ok, "P(0|+)=" + num(p0) + " P(1|+)=" + num(p1) + " (want 0.5 both)");
}

// --- 2: chain-completeness of the three-frame table, and regeneration ------
void criterion_2() {
  auto doc = generate({Scenario::three_sg, {}});
  const AmplitudeTable& table = doc.tables.at("S");
  auto [complete, worst] = table.is_chain_complete(1e-12);

  // regenerate the x/y cross block through the z frame
  struct Expect {
    const char* f;
    const char* g;
    cplx value;
  };
  const std::vector<Expect> expected = {{"+", "+i", {0.5, 0.5}},
                                        {"+", "-i", {0.5, -0.5}},
                                        {"-", "+i", {0.5, -0.5}},
                                        {"-", "-i", {0.5, 0.5}}};
  double regen_err = 0.0;
  for (const auto& e : expected)
    regen_err = std::max(regen_err,
                         std::abs(table.chain_sum(e.f, e.g, "SGz") - e.value));
  bool ok = complete && worst.residual <= 1e-12 && regen_err <= 1e-12;
  verdict(2, ok, "chain_complete=" + std::string(complete ? "true" : "false") +
                     " max_residual=" + num(worst.residual) +
                     " regenerated-cross-block error=" + num(regen_err));
}

// --- 3: two-SG self-space ---------------------------------------------------
void criterion_3() {
  auto doc = generate({Scenario::two_sg, {}});
  SelfSpace space = self_space(doc.tables.at("S"));
  const std::vector<double> want = {0.0, 0.0, 2.0, 2.0};
  double eig_err = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i)
    eig_err = std::max(eig_err, std::abs(space.eigenvalues[i] - want[i]));
  GramMatrix gram = gram_matrix(doc.tables.at("S"));
  double recon = (space.h.adjoint() * space.h).max_abs_diff(gram.matrix);
  bool ok = eig_err <= 1e-10 && space.dim == 2 && recon <= 1e-9;
  verdict(3, ok, "eigenvalue error=" + num(eig_err) + " dim=" +
                     std::to_string(space.dim) + " reconstruction=" + num(recon));
}

// --- 4: self-space existence matches Gram positivity over random tables -----
void criterion_4() {
  int succeeded = 0, rejected = 0;
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    std::size_t blocks = tt::pick(2, 4);
    std::vector<std::size_t> sizes;
    std::size_t total = 0, max_size = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      std::size_t s = tt::pick(1, 3);
      if (total + s > 12) break;
      sizes.push_back(s);
      total += s;
      max_size = std::max(max_size, s);
    }
    if (sizes.size() < 2) {
      --trial;
      continue;
    }
    FactNet net;
    AmplitudeTable table =
        trial % 2 == 0 ? tt::psd_star(sizes, max_size + tt::pick(0, 2), &net)
                       : tt::random_star(sizes, tt::uniform(0.5, 1.2), &net);

    GramMatrix gram = gram_matrix(table);
    double lambda_min = hermitian_eigen(gram.matrix).values.front();
    bool expect_success = lambda_min >= -1e-9;
    try {
      SelfSpace space = self_space(table, 1e-9);
      ++succeeded;
      if (!expect_success) {
        ok = false;
        detail = "factorised although lambda_min=" + num(lambda_min);
      }
      double recon = (space.h.adjoint() * space.h).max_abs_diff(gram.matrix);
      if (recon > 1e-8) {
        ok = false;
        detail = "reconstruction error " + num(recon);
      }
    } catch (const Error& e) {
      ++rejected;
      if (e.code() != errc::not_positive_semidefinite || expect_success) {
        ok = false;
        detail = "rejected although lambda_min=" + num(lambda_min);
      }
    }
  }
  if (ok && (succeeded < 40 || rejected < 40)) {
    ok = false;
    detail = "branch coverage too thin";
  }
  verdict(4, ok, "200 random tables: " + std::to_string(succeeded) +
                     " factorised, " + std::to_string(rejected) + " rejected" +
                     (detail.empty() ? "" : "; " + detail));
}

// --- 5: chain-completeness matches triangle commutativity on random stars ----
void criterion_5() {
  const double tol = 1e-9;
  int chain_complete_count = 0;
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    FactNet net;
    AmplitudeTable table;
    std::size_t neighbors = tt::pick(3, 4);
    if (trial % 3 == 0) {
      table = tt::chain_complete_star(neighbors, tt::pick(1, 4), &net);
    } else if (trial % 3 == 1) {
      std::vector<std::size_t> sizes;
      for (std::size_t k = 0; k < neighbors; ++k) sizes.push_back(tt::pick(1, 4));
      table = tt::random_star(sizes, 0.8, &net);
    } else {
      std::vector<std::size_t> sizes;
      std::size_t max_size = 0;
      for (std::size_t k = 0; k < neighbors; ++k) {
        sizes.push_back(tt::pick(1, 4));
        max_size = std::max(max_size, sizes.back());
      }
      table = tt::psd_star(sizes, max_size + 1 + tt::pick(0, 2), &net);
    }

    bool chain = table.is_chain_complete(tol).first;
    auto hood = net.neighborhood("S");
    double worst_triangle = 0.0;
    for (const auto& a : hood)
      for (const auto& b : hood)
        for (const auto& c : hood)
          worst_triangle = std::max(worst_triangle, check_triangle(table, a, b, c));
    bool commutes = worst_triangle <= tol;
    if (chain != commutes) {
      ok = false;
      detail = "chain=" + std::to_string(chain) +
               " triangles=" + std::to_string(commutes) +
               " residual=" + num(worst_triangle);
      break;
    }
    if (chain) {
      ++chain_complete_count;
      for (const auto& a : hood)
        for (const auto& b : hood) {
          ComplexMatrix m = amplitude_map(table, a, b);
          double unit = (m.adjoint() * m)
                            .max_abs_diff(ComplexMatrix::identity(m.cols()));
          if (unit > tol) {
            ok = false;
            detail = "non-unitary map in the chain-complete subset: " + num(unit);
          }
        }
    }
  }
  if (ok && chain_complete_count < 40) {
    ok = false;
    detail = "only " + std::to_string(chain_complete_count) + " chain-complete draws";
  }
  verdict(5, ok, "200 star tables, " + std::to_string(chain_complete_count) +
                     " chain-complete" + (detail.empty() ? "" : "; " + detail));
}

// --- 6: the amplitude map between the two Stern-Gerlach frames ---------------
void criterion_6() {
  auto doc = generate({Scenario::two_sg, {}});
  ComplexMatrix m = amplitude_map(doc.tables.at("S"), "SGx", "SGz");
  const cplx s = parse_symbolic("1/sqrt2");
  const cplx ns = parse_symbolic("-1/sqrt2");
  bool ok = m.rows() == 2 && m.cols() == 2 && m(0, 0) == s && m(0, 1) == s &&
            m(1, 0) == s && m(1, 1) == ns;
  verdict(6, ok, "rows {+,-} cols {0,1}: [[" + num(m(0, 0).real()) + "," +
                     num(m(0, 1).real()) + "],[" + num(m(1, 0).real()) + "," +
                     num(m(1, 1).real()) + "]] vs the parsed 1/sqrt2 symbols");
}

// --- 7: three-qubit change of reference frame --------------------------------
void criterion_7() {
  auto doc = generate({Scenario::three_qubit_qrf, {}});
  const IndexMaps& maps = doc.qrf->maps;
  PerspectiveState state_a;
  state_a.perspective = "A";
  state_a.coefficients[{"ab0", "ac0"}] = 1.0;
  state_a.coefficients[{"abpi", "ac0"}] = 1.0;
  PerspectiveState state_b = change_of_qrf(maps, state_a, "B");
  bool state_ok = state_b.coefficients.size() == 2 &&
                  state_b.coefficients.count({"ab0", "bc0"}) == 1 &&
                  state_b.coefficients.count({"abpi", "bcpi"}) == 1 &&
                  state_b.coefficients.at({"ab0", "bc0"}) == cplx{1.0, 0.0} &&
                  state_b.coefficients.at({"abpi", "bcpi"}) == cplx{1.0, 0.0};

  double residual = triangle_consistency(doc.tables.at("A"), doc.tables.at("B"),
                                         doc.tables.at("C"));
  bool consistency_ok = true;
  for (const char* group : {"Z2", "Z3"}) {
    auto gdoc = generate({Scenario::three_qubit_qrf, {{"group", group}}});
    auto [good, counterexamples] = consistency_check_functions(gdoc.qrf->maps);
    consistency_ok = consistency_ok && good;
  }
  bool ok = state_ok && residual == 0.0 && consistency_ok;
  verdict(7, ok, std::string("|W>^B = |0>|0> + |pi>|pi|: ") +
                     (state_ok ? "yes" : "no") + ", map residual=" + num(residual) +
                     ", Z2/Z3 functional consistency=" +
                     (consistency_ok ? "true" : "false"));
}

// --- 8: double slit on the stated geometry -----------------------------------
void criterion_8() {
  auto grid = uniform_grid(-10.0, 10.0, 0.05);
  auto curve = double_slit_intensity(10.0, 10.0, 1.0, 0.1, grid);
  double asym = 0.0, total = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    asym = std::max(asym,
                    std::abs(curve[i].second - curve[curve.size() - 1 - i].second));
    total += curve[i].second;
  }
  std::size_t maxima = count_local_maxima(curve);
  auto single = single_slit_intensity(10.0, 10.0, 1.0, 0.1, grid);
  std::size_t single_maxima = count_local_maxima(single);
  bool ok = asym <= 1e-12 && std::abs(total - 1.0) <= 1e-9 && maxima >= 3 &&
            single_maxima <= 1;
  verdict(8, ok, "asymmetry=" + num(asym) + " sum=" + num(total) + " maxima=" +
                     std::to_string(maxima) + " (want >=3) single-slit maxima=" +
                     std::to_string(single_maxima) + " (want <=1)");
}

// --- 9: propagator density and chain-residual decay --------------------------
void criterion_9() {
  const double sigma = 0.3, ti = 0.5, tj = 0.0;
  const double drift = (ti - tj) / sigma;
  const double width = std::sqrt(drift * drift + sigma * sigma);
  const long n = 400;
  const double half = 6.0 * width;
  ScenarioSpec spec{Scenario::propagator,
                    {{"t0", std::to_string(ti)},
                     {"t1", std::to_string(tj)},
                     {"t2", "1.0"},
                     {"sigma", std::to_string(sigma)},
                     {"x0_points", std::to_string(n)},
                     {"x0_half", std::to_string(half)},
                     {"x1_points", "1"},
                     {"x2_points", "1"}}};
  auto doc = generate(spec);
  const AmplitudeTable& table = doc.tables.at("S");
  const double step = 2.0 * half / double(n - 1);
  std::string b = doc.net.fact_set("S", "X1").front();

  double best_p = -1.0, best_x = 0.0;
  for (std::uint32_t fi : doc.net.fact_set_indices("S", "X0")) {
    const Fact& f = doc.net.fact_at(fi);
    double p = table.conditional_probability(f.id, b);
    if (p > best_p) {
      best_p = p;
      best_x = std::stod(f.label);
    }
  }
  double est = best_p / step;
  double closed = std::get<2>(
      propagator_probability(ti, tj, sigma, 1.0, 1.0, {best_x}, 0.0)[0]);
  double rel = std::abs(est - closed) / closed;

  std::vector<double> residuals;
  for (const char* s : {"0.4", "0.2", "0.1"}) {
    ScenarioSpec chain_spec{Scenario::propagator,
                            {{"sigma", s},
                             {"x0_points", "9"},
                             {"x0_half", "1.0"},
                             {"x2_points", "9"},
                             {"x2_half", "1.0"},
                             {"x1_points", "1601"},
                             {"x1_half", "30"}}};
    auto cdoc = generate(chain_spec);
    residuals.push_back(
        cdoc.tables.at("S").chain_residual("X0", "X2", "X1").residual);
  }
  bool monotone = residuals[1] < residuals[0] && residuals[2] < residuals[1];
  bool ok = rel <= 0.02 && monotone;
  verdict(9, ok, "peak density relative error=" + num(rel) +
                     " (cap 0.02); residuals sigma 0.4/0.2/0.1 = " +
                     num(residuals[0]) + "/" + num(residuals[1]) + "/" +
                     num(residuals[2]) + (monotone ? " (monotone)" : " (NOT monotone)"));
}

// --- 10: position/momentum grid is the scaled DFT ----------------------------
void criterion_10() {
  const std::size_t n = 8;
  auto doc = generate({Scenario::position_momentum, {{"n", "8"}}});
  ComplexMatrix map = amplitude_map(doc.tables.at("S"), "X", "P");
  ComplexMatrix dft(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t k = 0; k < n; ++k)
      dft(a, k) = std::polar(1.0 / std::sqrt(double(n)),
                             2.0 * std::numbers::pi * double(a * k) / double(n));
  double diff = map.max_abs_diff(dft);
  double unit =
      (map.adjoint() * map).max_abs_diff(ComplexMatrix::identity(n));
  bool ok = diff <= 1e-12 && unit <= 1e-12;
  verdict(10, ok, "DFT deviation=" + num(diff) + " unitarity residual=" + num(unit));
}

// --- 11: composite system from gluing ----------------------------------------
void criterion_11() {
  auto doc = generate({Scenario::two_sg, {}});
  GlueResult glued = glue(doc.net, doc.tables.at("S"), "S", "SGz", "SGx");
  double worst = 0.0;
  for (const auto& [id, pair] : glued.pairing) {
    const auto& [a0, b] = pair;
    for (const auto& a1 : doc.net.fact_set("S", "SGz")) {
      double lhs = glued.table.conditional_probability(id, a1);
      double rhs = a0 == a1 ? glued.table.conditional_probability(b, a1) : 0.0;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  double residual =
      glued.table.chain_residual("SGz", glued.composite, "SGx").residual;
  bool ok = worst <= 1e-12 && residual > 1e-3;
  verdict(11, ok, "max |P((a0,b)|a1) - delta*P(b|a1)| = " + num(worst) +
                      "; chain residual of (SGz, SGz" "∪" "SGx, SGx) = " +
                      num(residual) + " (> 1e-3 wanted)");
}

}  // namespace

int main() {
  std::printf("fact-net acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
