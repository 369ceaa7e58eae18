#include "factnet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "factnet/errors.hpp"

namespace factnet {

using nlohmann::json;

const AmplitudeTable& FactNetDocument::table(std::string_view system) const {
  auto it = tables.find(std::string(system));
  if (it == tables.end())
    raise(errc::unknown_system, "no table for system '" + std::string(system) + "'");
  return it->second;
}

FactNetDocument to_document(ScenarioResult result) {
  FactNetDocument doc;
  doc.net = std::move(result.net);
  doc.tables = std::move(result.tables);
  doc.qrf = std::move(result.qrf);
  doc.metadata = std::move(result.metadata);
  for (const auto& [pair, w] : doc.net.fact_set_weights()) {
    if (pair.first.find('|') != std::string::npos ||
        pair.second.find('|') != std::string::npos)
      raise(errc::semantic_error,
            "system names of weighted fact-sets must not contain '|'");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    doc.metadata["weight " + pair.first + "|" + pair.second] = buf;
  }
  return doc;
}

cplx parse_symbolic(const std::string& token) {
  std::string body = token;
  double sign = 1.0;
  while (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    if (body.front() == '-') sign = -sign;
    body.erase(body.begin());
  }
  const double inv_sqrt2 = std::sqrt(0.5);  // correctly rounded 1/sqrt(2)
  if (body == "0") return {};
  if (body == "1") return {sign, 0.0};
  if (body == "1/2") return {sign * 0.5, 0.0};
  if (body == "i") return {0.0, sign};
  if (body == "i/2") return {0.0, sign * 0.5};
  if (body == "1/sqrt2") return {sign * inv_sqrt2, 0.0};
  if (body == "i/sqrt2") return {0.0, sign * inv_sqrt2};
  if (body == "(1+i)/2") return {sign * 0.5, sign * 0.5};
  if (body == "(1-i)/2") return {sign * 0.5, -sign * 0.5};
  try {
    std::size_t used = 0;
    double v = std::stod(body, &used);
    if (used != body.size()) throw std::invalid_argument(token);
    return {sign * v, 0.0};
  } catch (const std::exception&) {
    raise(errc::semantic_error, "unreadable amplitude value '" + token + "'");
  }
}

namespace {

[[noreturn]] void syntax_error_at(const std::string& text, std::size_t byte,
                                  const std::string& what) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  raise(errc::syntax_error, "line " + std::to_string(line) + ", column " +
                                std::to_string(col) + ": " + what);
}

void check_keys(const json& obj, const std::vector<std::string>& known,
                bool strict, const std::string& where) {
  if (!strict) return;
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      raise(errc::semantic_error, "unknown key '" + it.key() + "' in " + where);
}

std::string need_string(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_string())
    raise(errc::semantic_error, where + " needs a string '" + std::string(key) + "'");
  return obj[key].get<std::string>();
}

cplx record_value(const json& rec, const std::string& where) {
  if (rec.contains("value")) {
    if (!rec["value"].is_string())
      raise(errc::semantic_error, where + ": 'value' must be a string shorthand");
    return parse_symbolic(rec["value"].get<std::string>());
  }
  double re = 0.0, im = 0.0;
  if (rec.contains("re")) {
    if (!rec["re"].is_number()) raise(errc::semantic_error, where + ": 're' must be a number");
    re = rec["re"].get<double>();
  }
  if (rec.contains("im")) {
    if (!rec["im"].is_number()) raise(errc::semantic_error, where + ": 'im' must be a number");
    im = rec["im"].get<double>();
  }
  if (!rec.contains("re") && !rec.contains("im") && !rec.contains("value"))
    raise(errc::semantic_error, where + ": amplitude record carries no value");
  return {re, im};
}

json dump_complex(double v) { return json(v == 0.0 ? 0.0 : v); }

}  // namespace

FactNetDocument parse_document(const std::string& text, bool strict) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    syntax_error_at(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
  }
  if (!root.is_object())
    raise(errc::semantic_error, "document root must be an object");
  check_keys(root,
             {"format_version", "systems", "facts", "amplitudes", "group",
              "metadata"},
             strict, "document root");
  if (!root.contains("format_version") || !root["format_version"].is_number_integer() ||
      root["format_version"].get<int>() != 1)
    raise(errc::semantic_error, "format_version must be the integer 1");

  FactNetDocument doc;
  FactNetBuilder builder;
  if (!root.contains("systems") || !root["systems"].is_array())
    raise(errc::semantic_error, "document needs a 'systems' array");
  try {
    for (const auto& s : root["systems"]) {
      if (!s.is_string()) raise(errc::semantic_error, "system names must be strings");
      builder.add_system(s.get<std::string>());
    }
    bool any_self = false;
    if (root.contains("facts")) {
      if (!root["facts"].is_array())
        raise(errc::semantic_error, "'facts' must be an array");
      for (const auto& f : root["facts"])
        if (f.is_object() && f.contains("endpoints") && f["endpoints"].is_array() &&
            f["endpoints"].size() == 2 && f["endpoints"][0] == f["endpoints"][1])
          any_self = true;
    }
    if (any_self) builder.allow_self_facts();
    if (root.contains("facts")) {
      for (const auto& f : root["facts"]) {
        if (!f.is_object()) raise(errc::semantic_error, "fact records must be objects");
        check_keys(f, {"id", "endpoints", "label"}, strict, "fact record");
        std::string id = need_string(f, "id", "fact record");
        if (!f.contains("endpoints") || !f["endpoints"].is_array() ||
            f["endpoints"].size() != 2 || !f["endpoints"][0].is_string() ||
            !f["endpoints"][1].is_string())
          raise(errc::semantic_error,
                "fact '" + id + "' needs an endpoints pair of system names");
        std::string label;
        if (f.contains("label")) label = need_string(f, "label", "fact record");
        builder.add_fact(f["endpoints"][0].get<std::string>(),
                         f["endpoints"][1].get<std::string>(), id, label);
      }
    }
    if (root.contains("metadata")) {
      if (!root["metadata"].is_object())
        raise(errc::semantic_error, "'metadata' must be an object");
      for (auto it = root["metadata"].begin(); it != root["metadata"].end(); ++it) {
        if (!it.value().is_string())
          raise(errc::semantic_error, "metadata values must be strings");
        doc.metadata[it.key()] = it.value().get<std::string>();
      }
    }
    for (const auto& [key, value] : doc.metadata) {
      if (key.rfind("weight ", 0) != 0) continue;
      std::string pair = key.substr(7);
      auto bar = pair.find('|');
      if (bar == std::string::npos)
        raise(errc::semantic_error, "malformed weight key '" + key + "'");
      double w = 0.0;
      try {
        w = std::stod(value);
      } catch (const std::exception&) {
        raise(errc::semantic_error, "weight '" + key + "' is not a number");
      }
      builder.set_fact_set_weight(pair.substr(0, bar), pair.substr(bar + 1), w);
    }
    doc.net = builder.build();
  } catch (const Error& e) {
    if (e.code() == errc::semantic_error) throw;
    raise(errc::semantic_error, e.what());
  }

  auto net_ptr = std::make_shared<const FactNet>(doc.net);
  std::map<std::string, AmplitudeTableBuilder> table_builders;
  for (const auto& s : doc.net.systems())
    table_builders.emplace(s, AmplitudeTableBuilder(net_ptr, s));

  if (root.contains("amplitudes")) {
    if (!root["amplitudes"].is_array())
      raise(errc::semantic_error, "'amplitudes' must be an array");
    // (system, f, g) -> value, used for conflict detection in strict mode.
    std::map<std::tuple<std::string, std::string, std::string>, cplx> seen;
    for (const auto& rec : root["amplitudes"]) {
      if (!rec.is_object())
        raise(errc::semantic_error, "amplitude records must be objects");
      check_keys(rec, {"system", "f", "g", "re", "im", "value"}, strict,
                 "amplitude record");
      std::string sys = need_string(rec, "system", "amplitude record");
      std::string f = need_string(rec, "f", "amplitude record");
      std::string g = need_string(rec, "g", "amplitude record");
      cplx z = record_value(rec, "amplitude W_" + sys + "(" + f + "," + g + ")");
      auto tb = table_builders.find(sys);
      if (tb == table_builders.end())
        raise(errc::semantic_error, "amplitude references unknown system '" + sys + "'");
      const std::string where = "W_" + sys + "(" + f + "," + g + ")";
      if (strict) {
        auto direct = seen.find({sys, f, g});
        if (direct != seen.end() && direct->second != z)
          raise(errc::semantic_error, where + " conflicts with an earlier record");
        auto mirror = seen.find({sys, g, f});
        if (mirror != seen.end() && mirror->second != std::conj(z))
          raise(errc::semantic_error,
                where + " conflicts with its conjugate record W_" + sys + "(" + g +
                    "," + f + ")");
        seen[{sys, f, g}] = z;
        try {
          tb->second.set(f, g, z);
        } catch (const Error& e) {
          raise(errc::semantic_error, where + ": " + e.what());
        }
      } else {
        try {
          tb->second.set_raw(f, g, z);
        } catch (const Error& e) {
          raise(errc::semantic_error, where + ": " + e.what());
        }
      }
    }
  }
  for (auto& [sys, tb] : table_builders) {
    if (!strict) tb.close_hermitian();
    doc.tables.emplace(sys, tb.build());
  }

  if (root.contains("group")) {
    const json& g = root["group"];
    if (!g.is_object()) raise(errc::semantic_error, "'group' must be an object");
    check_keys(g, {"elements", "identity", "mul", "index_maps"}, strict, "group");
    if (!g.contains("elements") || !g["elements"].is_array())
      raise(errc::semantic_error, "group needs an 'elements' array");
    std::vector<std::string> elements;
    for (const auto& e : g["elements"]) {
      if (!e.is_string()) raise(errc::semantic_error, "group elements must be strings");
      elements.push_back(e.get<std::string>());
    }
    std::vector<std::vector<std::string>> mul;
    if (g.contains("mul")) {
      if (!g["mul"].is_array()) raise(errc::semantic_error, "'mul' must be an array");
      for (const auto& row : g["mul"]) {
        if (!row.is_array()) raise(errc::semantic_error, "'mul' rows must be arrays");
        std::vector<std::string> r;
        for (const auto& cell : row) {
          if (!cell.is_string())
            raise(errc::semantic_error, "'mul' cells must be element names");
          r.push_back(cell.get<std::string>());
        }
        mul.push_back(std::move(r));
      }
    }
    FactGroup group(elements, mul, need_string(g, "identity", "group"));
    if (strict) {
      auto issues = group.validate();
      if (!issues.empty())
        raise(errc::semantic_error, "group table is not a group: " + issues.front());
    }
    std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>>
        assignments;
    if (g.contains("index_maps")) {
      if (!g["index_maps"].is_array())
        raise(errc::semantic_error, "'index_maps' must be an array");
      for (const auto& m : g["index_maps"]) {
        if (!m.is_object())
          raise(errc::semantic_error, "index map records must be objects");
        check_keys(m, {"pair", "assignments"}, strict, "index map record");
        if (!m.contains("pair") || !m["pair"].is_array() || m["pair"].size() != 2 ||
            !m["pair"][0].is_string() || !m["pair"][1].is_string())
          raise(errc::semantic_error, "index map needs a [from,to] system pair");
        if (!m.contains("assignments") || !m["assignments"].is_object())
          raise(errc::semantic_error, "index map needs an assignments object");
        std::map<std::string, std::string> assign;
        for (auto it = m["assignments"].begin(); it != m["assignments"].end(); ++it) {
          if (!it.value().is_string())
            raise(errc::semantic_error, "index map assignments must be strings");
          assign[it.key()] = it.value().get<std::string>();
        }
        assignments[{m["pair"][0].get<std::string>(),
                     m["pair"][1].get<std::string>()}] = std::move(assign);
      }
    }
    IndexMaps maps(net_ptr, group, assignments);
    if (strict) {
      auto issues = maps.validate();
      if (!issues.empty())
        raise(errc::semantic_error, "index maps are inconsistent: " + issues.front());
    }
    doc.qrf = QrfData{group, maps};
  }
  return doc;
}

std::string serialize_document(const FactNetDocument& doc) {
  json root;
  root["format_version"] = 1;
  root["systems"] = doc.net.systems();
  json facts = json::array();
  for (const Fact& f : doc.net.facts()) {
    json rec;
    rec["id"] = f.id;
    rec["endpoints"] = {f.a, f.b};
    if (!f.label.empty()) rec["label"] = f.label;
    facts.push_back(rec);
  }
  root["facts"] = facts;

  json amplitudes = json::array();
  for (const auto& [sys, table] : doc.tables) {
    struct Entry {
      std::string f, g;
      cplx z;
    };
    std::vector<Entry> rows;
    for (const auto& [key, z] : table.entries()) {
      auto fi = static_cast<std::uint32_t>(key >> 32);
      auto gi = static_cast<std::uint32_t>(key & 0xffffffffu);
      const std::string& f = table.net().fact_at(fi).id;
      const std::string& g = table.net().fact_at(gi).id;
      if (fi == gi) {
        if (z != cplx{1.0, 0.0}) rows.push_back({f, g, z});
        continue;
      }
      // one record per unordered pair unless the mirror breaks hermiticity
      cplx mirror = table.value_at(gi, fi);
      if (mirror == std::conj(z)) {
        if (f < g && z != cplx{}) rows.push_back({f, g, z});
      } else if (z != cplx{}) {
        rows.push_back({f, g, z});
      }
    }
    std::sort(rows.begin(), rows.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.f, a.g) < std::tie(b.f, b.g);
    });
    for (const Entry& e : rows) {
      json rec;
      rec["system"] = sys;
      rec["f"] = e.f;
      rec["g"] = e.g;
      rec["re"] = dump_complex(e.z.real());
      rec["im"] = dump_complex(e.z.imag());
      amplitudes.push_back(rec);
    }
  }
  root["amplitudes"] = amplitudes;

  if (doc.qrf) {
    json g;
    g["elements"] = doc.qrf->group.elements();
    g["identity"] = doc.qrf->group.identity();
    g["mul"] = doc.qrf->group.table();
    json maps = json::array();
    for (const auto& [pair, assign] : doc.qrf->maps.assignments()) {
      json m;
      m["pair"] = {pair.first, pair.second};
      m["assignments"] = assign;
      maps.push_back(m);
    }
    g["index_maps"] = maps;
    root["group"] = g;
  }
  if (!doc.metadata.empty()) root["metadata"] = doc.metadata;
  return root.dump(2) + "\n";
}

FactNetDocument load_file(const std::string& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::bad_params, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str(), strict);
}

void save_file(const std::string& path, const FactNetDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::bad_params, "cannot write '" + path + "'");
  out << serialize_document(doc);
}

bool documents_equal(const FactNetDocument& a, const FactNetDocument& b) {
  if (!(a.net == b.net)) return false;
  if (a.metadata != b.metadata) return false;
  if (a.tables.size() != b.tables.size()) return false;
  for (const auto& [sys, table] : a.tables) {
    auto it = b.tables.find(sys);
    if (it == b.tables.end()) return false;
    if (!table.same_values(it->second)) return false;
  }
  if (a.qrf.has_value() != b.qrf.has_value()) return false;
  if (a.qrf) {
    if (a.qrf->group.elements() != b.qrf->group.elements()) return false;
    if (a.qrf->group.table() != b.qrf->group.table()) return false;
    if (a.qrf->group.identity() != b.qrf->group.identity()) return false;
    if (a.qrf->maps.assignments() != b.qrf->maps.assignments()) return false;
  }
  return true;
}

void write_csv(std::ostream& os, const std::vector<std::pair<double, double>>& curve) {
  os << "x,probability\n";
  char buf[80];
  for (const auto& [x, p] : curve) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", x, p);
    os << buf;
  }
}

std::string digest(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

void Report::add(std::string key, std::string value) {
  findings.emplace_back(std::move(key), std::move(value));
}

void Report::print(std::ostream& os) const {
  os << "command=" << command << "\n";
  if (!input_digest.empty()) os << "input=" << input_digest << "\n";
  for (const auto& [key, value] : findings) os << key << "=" << value << "\n";
  os << "status=" << (exit_status == 0 ? "ok" : exit_status == 1 ? "findings" : "error")
     << "\n";
}

}  // namespace factnet
