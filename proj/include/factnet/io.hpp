#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factnet/amplitude.hpp"
#include "factnet/net.hpp"
#include "factnet/scenarios.hpp"

namespace factnet {

/// In-memory form of a .fn file: the net, one table per system, optional
/// group data and free-form metadata. Fact-set weights travel inside
/// metadata under "weight <A>|<B>" keys.
struct FactNetDocument {
  FactNet net;
  std::map<std::string, AmplitudeTable> tables;
  std::optional<QrfData> qrf;
  std::map<std::string, std::string> metadata;

  const AmplitudeTable& table(std::string_view system) const;
};

FactNetDocument to_document(ScenarioResult result);

/// Exact amplitude shorthands accepted in files: an optional sign followed by
/// one of 0, 1, 1/2, i, i/2, 1/sqrt2, i/sqrt2, (1+i)/2, (1-i)/2, or a decimal
/// literal.
cplx parse_symbolic(const std::string& token);

/// Parses a document. Strict mode rejects unknown keys, conjugate conflicts,
/// parallel-fact and diagonal violations and malformed groups; lenient mode
/// loads amplitudes verbatim (missing conjugate partners are filled in) so
/// the check_* diagnostics can report on them.
FactNetDocument parse_document(const std::string& text, bool strict = true);

/// Canonical serialisation: sorted systems, facts and amplitude records, one
/// record per unordered pair, defaults omitted. Byte-identical across calls.
std::string serialize_document(const FactNetDocument& doc);

FactNetDocument load_file(const std::string& path, bool strict = true);
void save_file(const std::string& path, const FactNetDocument& doc);

/// Two documents describe the same data (net equality, table values, group
/// tables, metadata).
bool documents_equal(const FactNetDocument& a, const FactNetDocument& b);

void write_csv(std::ostream& os, const std::vector<std::pair<double, double>>& curve);

/// FNV-1a content digest used in reports.
std::string digest(const std::string& bytes);

/// Machine-parseable command result: one key=value line per finding.
struct Report {
  std::string command;
  std::string input_digest;
  std::vector<std::pair<std::string, std::string>> findings;
  int exit_status = 0;

  void add(std::string key, std::string value);
  void print(std::ostream& os) const;
};

}  // namespace factnet
