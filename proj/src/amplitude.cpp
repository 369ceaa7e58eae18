#include "factnet/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "factnet/errors.hpp"

namespace factnet {

namespace {

std::uint64_t key(std::uint32_t i, std::uint32_t j) {
  return (static_cast<std::uint64_t>(i) << 32) | j;
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

double cdiff(cplx a, cplx b) {
  return std::max(std::abs(a.real() - b.real()), std::abs(a.imag() - b.imag()));
}

}  // namespace

std::string Violation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::hermitian:
      os << "W(" << g << "," << f << ")=" << fmt(actual)
         << " conflicts with conj W(" << f << "," << g << ")=" << fmt(expected);
      break;
    case Kind::parallel:
      os << "parallel facts " << f << "," << g << " have W=" << fmt(actual)
         << " (must be 0)";
      break;
    case Kind::diagonal:
      os << "W(" << f << "," << f << ")=" << fmt(actual) << " (must be 1)";
      break;
  }
  return os.str();
}

AmplitudeTable::AmplitudeTable(std::shared_ptr<const FactNet> net, std::string system)
    : net_(std::move(net)), system_(std::move(system)) {
  if (!net_->has_system(system_))
    raise(errc::unknown_system, "unknown system '" + system_ + "'");
}

AmplitudeTable::AmplitudeTable(const FactNet& net, std::string system)
    : AmplitudeTable(std::make_shared<const FactNet>(net), std::move(system)) {}

void AmplitudeTable::require_incident(std::string_view f) const {
  const Fact& fact = net_->fact(f);
  if (fact.a != system_ && fact.b != system_)
    raise(errc::not_incident,
          "fact '" + std::string(f) + "' is not incident to '" + system_ + "'");
}

std::uint32_t AmplitudeTable::index_of(std::string_view f) const {
  require_incident(f);
  return net_->fact_index(f);
}

AmplitudeTable AmplitudeTable::set_amplitude(std::string_view f, std::string_view g,
                                             cplx z) const {
  AmplitudeTableBuilder b(*this);
  b.set(f, g, z);
  return b.build();
}

cplx AmplitudeTable::value(std::string_view f, std::string_view g) const {
  return value_at(index_of(f), index_of(g));
}

cplx AmplitudeTable::value_at(std::uint32_t fi, std::uint32_t gi) const {
  auto it = entries_.find(key(fi, gi));
  if (it != entries_.end()) return it->second;
  return fi == gi ? cplx{1.0, 0.0} : cplx{};
}

bool AmplitudeTable::is_set(std::string_view f, std::string_view g) const {
  return entries_.count(key(index_of(f), index_of(g))) != 0;
}

std::vector<Violation> AmplitudeTable::check_hermitian(double tol) const {
  std::vector<Violation> out;
  for (const auto& [k, z] : entries_) {
    auto fi = static_cast<std::uint32_t>(k >> 32);
    auto gi = static_cast<std::uint32_t>(k & 0xffffffffu);
    // report each unordered pair once; an unmirrored entry is checked from
    // whichever side exists
    if (fi > gi && entries_.count(key(gi, fi))) continue;
    cplx back = value_at(gi, fi);
    if (cdiff(back, std::conj(z)) > tol)
      out.push_back(Violation{Violation::Kind::hermitian, net_->fact_at(fi).id,
                              net_->fact_at(gi).id, back, std::conj(z)});
  }
  std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
    return std::tie(x.f, x.g) < std::tie(y.f, y.g);
  });
  return out;
}

std::vector<Violation> AmplitudeTable::check_parallel(double tol) const {
  std::vector<Violation> out;
  for (const auto& [k, z] : entries_) {
    auto fi = static_cast<std::uint32_t>(k >> 32);
    auto gi = static_cast<std::uint32_t>(k & 0xffffffffu);
    const Fact& ff = net_->fact_at(fi);
    const Fact& gf = net_->fact_at(gi);
    if (fi == gi) {
      if (cdiff(z, cplx{1.0, 0.0}) > tol)
        out.push_back(Violation{Violation::Kind::diagonal, ff.id, ff.id, z, {1.0, 0.0}});
      continue;
    }
    if (fi > gi && entries_.count(key(gi, fi))) continue;
    if (ff.a == gf.a && ff.b == gf.b && std::abs(z) > tol) {
      const Fact& lo = fi < gi ? ff : gf;
      const Fact& hi = fi < gi ? gf : ff;
      out.push_back(Violation{Violation::Kind::parallel, lo.id, hi.id, z, {}});
    }
  }
  std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
    return std::tie(x.f, x.g) < std::tie(y.f, y.g);
  });
  return out;
}

double AmplitudeTable::conditional_probability(std::string_view a,
                                               std::string_view b) const {
  std::uint32_t ai = index_of(a);
  std::uint32_t bi = index_of(b);
  const Fact& fa = net_->fact_at(ai);
  double num = std::norm(value_at(ai, bi));
  double den = 0.0;
  for (std::uint32_t other : net_->fact_set_indices(fa.a, fa.b))
    den += std::norm(value_at(other, bi));
  if (den == 0.0)
    raise(errc::undefined_probability,
          "P(" + std::string(a) + "|" + std::string(b) +
              "): every amplitude in the conditioning column vanishes");
  return num / den;
}

cplx AmplitudeTable::chain_sum(std::string_view f, std::string_view g,
                               std::string_view via) const {
  std::uint32_t fi = index_of(f);
  std::uint32_t gi = index_of(g);
  if (std::find_if(net_->systems().begin(), net_->systems().end(),
                   [&](const std::string& s) { return s == via; }) ==
      net_->systems().end())
    raise(errc::unknown_system, "unknown system '" + std::string(via) + "'");
  cplx sum{};
  for (std::uint32_t ci : net_->fact_set_indices(system_, via))
    sum += value_at(fi, ci) * value_at(ci, gi);
  return sum * net_->fact_set_weight(system_, via);
}

ChainReport AmplitudeTable::chain_residual(std::string_view a_set,
                                           std::string_view b_set,
                                           std::string_view c_set,
                                           double tol) const {
  auto check_neighbor = [&](std::string_view n) {
    if (net_->fact_set_indices(system_, n).empty())
      raise(errc::not_neighbor,
            "'" + std::string(n) + "' is not a neighbor of '" + system_ + "'");
  };
  check_neighbor(a_set);
  check_neighbor(b_set);
  check_neighbor(c_set);

  ChainReport report;
  report.a_set = std::string(a_set);
  report.b_set = std::string(b_set);
  report.c_set = std::string(c_set);
  const double weight = net_->fact_set_weight(system_, c_set);
  for (std::uint32_t ai : net_->fact_set_indices(system_, a_set)) {
    for (std::uint32_t bi : net_->fact_set_indices(system_, b_set)) {
      cplx sum{};
      for (std::uint32_t ci : net_->fact_set_indices(system_, c_set))
        sum += value_at(ai, ci) * value_at(ci, bi);
      double r = std::abs(value_at(ai, bi) - weight * sum);
      if (r > report.residual) {
        report.residual = r;
        report.worst_f = net_->fact_at(ai).id;
        report.worst_g = net_->fact_at(bi).id;
      }
    }
  }
  report.holds = report.residual <= tol;
  return report;
}

std::pair<bool, ChainReport> AmplitudeTable::is_chain_complete(double tol) const {
  std::vector<std::string> hood = net_->neighborhood(system_);
  ChainReport worst;
  worst.holds = true;
  bool first = true;
  for (const auto& a : hood)
    for (const auto& b : hood)
      for (const auto& c : hood) {
        if (a == b || b == c || a == c) continue;
        ChainReport r = chain_residual(a, b, c, tol);
        if (first || r.residual > worst.residual) {
          worst = r;
          first = false;
        }
      }
  return {worst.residual <= tol, worst};
}

bool AmplitudeTable::same_values(const AmplitudeTable& rhs, double tol) const {
  if (system_ != rhs.system_) return false;
  auto covered = [&](const AmplitudeTable& x, const AmplitudeTable& y) {
    for (const auto& [k, z] : x.entries_) {
      auto fi = static_cast<std::uint32_t>(k >> 32);
      auto gi = static_cast<std::uint32_t>(k & 0xffffffffu);
      const std::string& f = x.net_->fact_at(fi).id;
      const std::string& g = x.net_->fact_at(gi).id;
      if (!y.net_->has_fact(f) || !y.net_->has_fact(g)) return false;
      if (cdiff(z, y.value(f, g)) > tol) return false;
    }
    return true;
  };
  return covered(*this, rhs) && covered(rhs, *this);
}

AmplitudeTable AmplitudeTable::rebind(std::shared_ptr<const FactNet> net) const {
  AmplitudeTable out(std::move(net), system_);
  for (const auto& [k, z] : entries_) {
    auto fi = static_cast<std::uint32_t>(k >> 32);
    auto gi = static_cast<std::uint32_t>(k & 0xffffffffu);
    const std::string& f = net_->fact_at(fi).id;
    const std::string& g = net_->fact_at(gi).id;
    if (!out.net_->has_fact(f) || !out.net_->has_fact(g)) continue;
    out.entries_[key(out.net_->fact_index(f), out.net_->fact_index(g))] = z;
  }
  return out;
}

AmplitudeTableBuilder::AmplitudeTableBuilder(std::shared_ptr<const FactNet> net,
                                             std::string system)
    : table_(std::move(net), std::move(system)) {}

AmplitudeTableBuilder::AmplitudeTableBuilder(AmplitudeTable seed)
    : table_(std::move(seed)) {}

AmplitudeTableBuilder& AmplitudeTableBuilder::set(std::string_view f,
                                                  std::string_view g, cplx z) {
  std::uint32_t fi = table_.index_of(f);
  std::uint32_t gi = table_.index_of(g);
  const Fact& ff = table_.net_->fact_at(fi);
  const Fact& gf = table_.net_->fact_at(gi);
  if (fi == gi) {
    if (z != cplx{1.0, 0.0})
      raise(errc::diagonal_violation,
            "W(" + ff.id + "," + ff.id + ") must be 1");
    return *this;  // diagonal is implied
  }
  if (ff.a == gf.a && ff.b == gf.b && z != cplx{})
    raise(errc::parallel_violation,
          "facts '" + ff.id + "' and '" + gf.id +
              "' are parallel; their amplitude must be 0");
  table_.entries_[key(fi, gi)] = z;
  table_.entries_[key(gi, fi)] = std::conj(z);
  return *this;
}

AmplitudeTableBuilder& AmplitudeTableBuilder::set_raw(std::string_view f,
                                                      std::string_view g, cplx z) {
  std::uint32_t fi = table_.index_of(f);
  std::uint32_t gi = table_.index_of(g);
  table_.entries_[key(fi, gi)] = z;
  return *this;
}

AmplitudeTableBuilder& AmplitudeTableBuilder::close_hermitian() {
  std::vector<std::pair<std::uint64_t, cplx>> missing;
  for (const auto& [k, z] : table_.entries_) {
    auto fi = static_cast<std::uint32_t>(k >> 32);
    auto gi = static_cast<std::uint32_t>(k & 0xffffffffu);
    if (fi == gi) continue;
    if (!table_.entries_.count(key(gi, fi)))
      missing.emplace_back(key(gi, fi), std::conj(z));
  }
  for (auto& [k, z] : missing) table_.entries_.emplace(k, z);
  return *this;
}

AmplitudeTable AmplitudeTableBuilder::build() const { return table_; }

}  // namespace factnet
