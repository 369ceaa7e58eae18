#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "factnet/composition.hpp"
#include "factnet/errors.hpp"
#include "factnet/hilbert.hpp"
#include "factnet/io.hpp"
#include "factnet/measurement.hpp"
#include "factnet/qrf.hpp"
#include "factnet/scenarios.hpp"

namespace {

using namespace factnet;

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt(cplx z) { return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")"; }

int exit_code_for(errc code) {
  switch (code) {
    case errc::syntax_error:
    case errc::semantic_error:
    case errc::parallel_violation:
    case errc::diagonal_violation:
    case errc::not_positive_semidefinite:
    case errc::chain_violation:
    case errc::reduction_obstruction:
    case errc::undefined_probability:
    case errc::invalid_maps:
      return 1;
    case errc::numeric_failure:
      return 3;
    default:
      return 2;
  }
}

double tolerance_default() {
  if (const char* env = std::getenv("FACTNET_TOL")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      // fall through to the built-in default
    }
  }
  return kDefaultTol;
}

struct LoadedFile {
  FactNetDocument doc;
  std::string digest_hex;
};

LoadedFile load(const std::string& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::bad_params, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  return {parse_document(text, strict), digest(text)};
}

void emit_curve_csv(const std::string& path,
                    const std::vector<std::pair<double, double>>& curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::bad_params, "cannot write '" + path + "'");
  write_csv(out, curve);
}

std::vector<std::pair<double, double>> probability_curve(
    const FactNet& net, const AmplitudeTable& table, const std::string& target,
    const std::string& given) {
  std::vector<std::pair<double, double>> curve;
  std::size_t index = 0;
  for (std::uint32_t fi : net.fact_set_indices(table.system(), target)) {
    const Fact& f = net.fact_at(fi);
    double x = 0.0;
    try {
      x = f.label.empty() ? static_cast<double>(index) : std::stod(f.label);
    } catch (const std::exception&) {
      x = static_cast<double>(index);
    }
    curve.emplace_back(x, table.conditional_probability(f.id, given));
    ++index;
  }
  std::sort(curve.begin(), curve.end());
  return curve;
}

int run_validate(const std::string& path, bool strict, double tol) {
  LoadedFile file = load(path, strict);
  Report report;
  report.command = "validate";
  report.input_digest = file.digest_hex;
  std::size_t violations = 0;
  for (const auto& [system, table] : file.doc.tables) {
    auto herm = table.check_hermitian(tol);
    auto par = table.check_parallel(tol);
    violations += herm.size() + par.size();
    report.add("hermitian_violations." + system, std::to_string(herm.size()));
    report.add("parallel_violations." + system, std::to_string(par.size()));
    for (const auto& v : herm) report.add("violation." + system, v.describe());
    for (const auto& v : par) report.add("violation." + system, v.describe());
    if (file.doc.net.neighborhood(system).size() >= 3) {
      auto [complete, worst] = table.is_chain_complete(tol);
      report.add("chain_complete." + system, complete ? "true" : "false");
      report.add("chain_max_residual." + system, fmt(worst.residual));
    }
  }
  if (file.doc.qrf) {
    auto group_issues = file.doc.qrf->group.validate();
    auto map_issues = file.doc.qrf->maps.validate();
    report.add("group_valid", group_issues.empty() ? "true" : "false");
    report.add("index_maps_valid", map_issues.empty() ? "true" : "false");
    for (const auto& issue : group_issues) report.add("group_issue", issue);
    for (const auto& issue : map_issues) report.add("map_issue", issue);
    violations += group_issues.size() + map_issues.size();
  }
  report.add("violations", std::to_string(violations));
  report.exit_status = violations == 0 ? 0 : 1;
  report.print(std::cout);
  return report.exit_status;
}

int run_prob(const std::string& path, bool strict, const std::string& system,
             const std::string& given, const std::string& target) {
  LoadedFile file = load(path, strict);
  const AmplitudeTable& table = file.doc.table(system);
  Report report;
  report.command = "prob";
  report.input_digest = file.digest_hex;
  for (const auto& fact : file.doc.net.fact_set(system, target))
    report.add("P(" + fact + "|" + given + ")",
               fmt(table.conditional_probability(fact, given)));
  report.print(std::cout);
  return 0;
}

int run_chain(const std::string& path, bool strict, const std::string& system,
              const std::string& triple, double tol) {
  LoadedFile file = load(path, strict);
  const AmplitudeTable& table = file.doc.table(system);
  Report report;
  report.command = "chain";
  report.input_digest = file.digest_hex;
  if (!triple.empty()) {
    std::istringstream stream(triple);
    std::string a, b, c;
    if (!std::getline(stream, a, ',') || !std::getline(stream, b, ',') ||
        !std::getline(stream, c))
      raise(errc::bad_params, "--triple expects A,B,C");
    ChainReport r = table.chain_residual(a, b, c, tol);
    report.add("residual", fmt(r.residual));
    report.add("holds", r.holds ? "true" : "false");
    if (!r.worst_f.empty()) report.add("worst_pair", r.worst_f + "," + r.worst_g);
  } else {
    auto [complete, worst] = table.is_chain_complete(tol);
    report.add("chain_complete", complete ? "true" : "false");
    report.add("max_residual", fmt(worst.residual));
    if (!worst.a_set.empty())
      report.add("worst_triple", worst.a_set + "," + worst.b_set + "," + worst.c_set);
  }
  report.print(std::cout);
  return 0;
}

int run_selfspace(const std::string& path, bool strict, const std::string& system,
                  double tol, bool print_h) {
  LoadedFile file = load(path, strict);
  const AmplitudeTable& table = file.doc.table(system);
  Report report;
  report.command = "selfspace";
  report.input_digest = file.digest_hex;
  try {
    SelfSpace space = self_space(table, tol);
    std::string eigen;
    for (std::size_t i = 0; i < space.eigenvalues.size(); ++i)
      eigen += (i ? "," : "") + fmt(space.eigenvalues[i]);
    report.add("eigenvalues", eigen);
    report.add("dim", std::to_string(space.dim));
    std::string basis;
    for (std::size_t i = 0; i < space.basis.size(); ++i)
      basis += (i ? "," : "") + space.basis[i];
    report.add("basis", basis);
    if (print_h)
      for (std::size_t r = 0; r < space.dim; ++r) {
        std::string row;
        for (std::size_t c = 0; c < space.basis.size(); ++c)
          row += fmt(space.h(r, c));
        report.add("h." + std::to_string(r), row);
      }
    report.print(std::cout);
    return 0;
  } catch (const Error& e) {
    if (e.code() != errc::not_positive_semidefinite) throw;
    report.add("psd", "false");
    report.add("detail", e.what());
    report.exit_status = 1;
    report.print(std::cout);
    return 1;
  }
}

int run_ampmap(const std::string& path, bool strict, const std::string& system,
               const std::string& from, const std::string& to) {
  LoadedFile file = load(path, strict);
  const AmplitudeTable& table = file.doc.table(system);
  ComplexMatrix m = amplitude_map(table, from, to);
  Report report;
  report.command = "ampmap";
  report.input_digest = file.digest_hex;
  auto join = [&](const std::vector<std::string>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
    return out;
  };
  report.add("rows", join(file.doc.net.fact_set(system, from)));
  report.add("cols", join(file.doc.net.fact_set(system, to)));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::string row;
    for (std::size_t c = 0; c < m.cols(); ++c) row += fmt(m(r, c));
    report.add("row." + std::to_string(r), row);
  }
  report.print(std::cout);
  return 0;
}

int run_measure(const std::string& path, bool strict, const std::string& observer,
                const std::vector<std::string>& keep_specs,
                const std::string& order_csv, const std::string& out_path,
                const std::string& csv_path, const std::string& given,
                const std::string& target) {
  LoadedFile file = load(path, strict);
  Restriction restriction;
  restriction.observer = observer;
  for (const auto& spec : keep_specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos)
      raise(errc::bad_params, "--keep expects system=fact1|fact2, got '" + spec + "'");
    std::set<std::string> kept;
    std::istringstream stream(spec.substr(eq + 1));
    std::string fact;
    while (std::getline(stream, fact, '|'))
      if (!fact.empty()) kept.insert(fact);
    restriction.keep[spec.substr(0, eq)] = std::move(kept);
  }
  auto [net, table] = restrict_net(file.doc.net, file.doc.table(observer), restriction);

  Report report;
  report.command = "measure";
  report.input_digest = file.digest_hex;
  for (const auto& [system, kept] : restriction.keep)
    report.add("kept." + system, std::to_string(kept.size()));

  AmplitudeTable result = table;
  if (!order_csv.empty()) {
    Ordering ordering;
    std::istringstream stream(order_csv);
    std::string name;
    while (std::getline(stream, name, ','))
      if (!name.empty()) ordering.sequence.push_back(name);
    result = reconstruct_w_prime(net, table, ordering);
    report.add("w_prime", "reconstructed");
  }

  if (!out_path.empty()) {
    FactNetDocument out_doc;
    out_doc.net = net;
    auto ptr = result.net_ptr();
    for (const auto& [system, old_table] : file.doc.tables) {
      if (system == observer)
        out_doc.tables.emplace(system, result);
      else
        out_doc.tables.emplace(system, old_table.rebind(ptr));
    }
    out_doc.qrf = file.doc.qrf;
    out_doc.metadata = file.doc.metadata;
    save_file(out_path, out_doc);
    report.add("written", out_path);
  }
  if (!csv_path.empty()) {
    if (given.empty() || target.empty())
      raise(errc::bad_params, "--emit-csv needs --given and --target");
    emit_curve_csv(csv_path, probability_curve(net, result, target, given));
    report.add("csv", csv_path);
  }
  report.print(std::cout);
  return 0;
}

int run_qrf(const std::string& path, bool strict, const std::string& from,
            const std::string& to, const std::vector<std::string>& coef_specs) {
  LoadedFile file = load(path, strict);
  Report report;
  report.command = "qrf";
  report.input_digest = file.digest_hex;
  if (!file.doc.qrf) raise(errc::bad_params, "document carries no group section");
  const QrfData& qrf = *file.doc.qrf;
  auto group_issues = qrf.group.validate();
  auto map_issues = qrf.maps.validate();
  report.add("group_valid", group_issues.empty() ? "true" : "false");
  report.add("index_maps_valid", map_issues.empty() ? "true" : "false");
  for (const auto& issue : group_issues) report.add("group_issue", issue);
  for (const auto& issue : map_issues) report.add("map_issue", issue);
  if (group_issues.empty() && map_issues.empty()) {
    auto [ok, counterexamples] = consistency_check_functions(qrf.maps);
    report.add("consistency", ok ? "true" : "false");
    for (const auto& c : counterexamples) report.add("counterexample", c);
  }

  if (!to.empty()) {
    if (from.empty() || coef_specs.empty())
      raise(errc::bad_params, "state transforms need --from, --to and --coef");
    PerspectiveState state;
    state.perspective = from;
    for (const auto& spec : coef_specs) {
      std::istringstream stream(spec);
      std::string f, h, re, im;
      std::getline(stream, f, ',');
      std::getline(stream, h, ',');
      std::getline(stream, re, ',');
      std::getline(stream, im, ',');
      if (f.empty() || h.empty() || re.empty())
        raise(errc::bad_params, "--coef expects f,h,re[,im], got '" + spec + "'");
      try {
        state.coefficients[{f, h}] =
            cplx{std::stod(re), im.empty() ? 0.0 : std::stod(im)};
      } catch (const std::exception&) {
        raise(errc::bad_params, "--coef has non-numeric value in '" + spec + "'");
      }
    }
    PerspectiveState moved = change_of_qrf(qrf.maps, state, to);
    report.add("perspective", moved.perspective);
    report.add("norm", fmt(moved.norm()));
    for (const auto& [key, z] : moved.coefficients)
      report.add("coef." + key.first + "|" + key.second, fmt(z));
  }
  report.exit_status = group_issues.empty() && map_issues.empty() ? 0 : 1;
  report.print(std::cout);
  return report.exit_status;
}

int run_scenario(const std::string& name,
                 const std::vector<std::string>& param_specs,
                 const std::string& out_path, const std::string& csv_path) {
  ScenarioSpec spec;
  spec.name = scenario_from_name(name);
  for (const auto& p : param_specs) {
    auto eq = p.find('=');
    if (eq == std::string::npos)
      raise(errc::bad_params, "--param expects key=value, got '" + p + "'");
    spec.params[p.substr(0, eq)] = p.substr(eq + 1);
  }
  Report report;
  report.command = "scenario";
  std::string csv_note;
  if (!csv_path.empty()) {
    if (spec.name == Scenario::double_slit) {
      auto get = [&](const char* key, double fallback) {
        auto it = spec.params.find(key);
        return it == spec.params.end() ? fallback : std::stod(it->second);
      };
      auto grid = uniform_grid(get("xmin", -10.0), get("xmax", 10.0), get("step", 0.05));
      auto curve = double_slit_intensity(get("l1", 10.0), get("l2", 10.0),
                                         get("d", 1.0), get("sigma", 0.1), grid);
      emit_curve_csv(csv_path, curve);
      csv_note = csv_path;
    } else if (spec.name == Scenario::propagator) {
      auto get = [&](const char* key, double fallback) {
        auto it = spec.params.find(key);
        return it == spec.params.end() ? fallback : std::stod(it->second);
      };
      double sigma = get("sigma", 0.2);
      double t0 = get("t0", 0.0), t1 = get("t1", 1.0);
      double half = get("x0_half", 1.5);
      auto grid = uniform_grid(-half, half, 2.0 * half / 200.0);
      auto rows = propagator_probability(t0, t1, sigma, get("m", 1.0),
                                         get("hbar", 1.0), grid, 0.0);
      std::vector<std::pair<double, double>> curve;
      for (const auto& [xi, xj, p] : rows) curve.emplace_back(xi, p);
      emit_curve_csv(csv_path, curve);
      csv_note = csv_path;
    } else {
      raise(errc::bad_params, "--emit-csv supports double_slit and propagator");
    }
  }
  ScenarioResult result = generate(spec);
  FactNetDocument doc = to_document(std::move(result));
  std::string text = serialize_document(doc);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) raise(errc::bad_params, "cannot write '" + out_path + "'");
    out << text;
    report.add("written", out_path);
    if (!csv_note.empty()) report.add("csv", csv_note);
    report.add("systems", std::to_string(doc.net.systems().size()));
    report.add("facts", std::to_string(doc.net.facts().size()));
    report.print(std::cout);
  } else {
    std::cout << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fact-net toolbox: validation, probabilities, chain analysis,\n"
               "self-spaces, amplitude maps, measurements and reference-frame\n"
               "changes over .fn files"};
  app.require_subcommand(1);
  app.fallthrough();
  double tol = tolerance_default();
  bool lenient = false;
  app.add_option("--tol", tol, "numeric tolerance")->capture_default_str();
  app.add_flag("--lenient,!--strict", lenient,
               "load files leniently and defer checks to the validators");

  std::string file, system, given, target, triple, from, to, order, out, csv, name;
  std::vector<std::string> keeps, coefs, params;
  bool print_h = false;

  CLI::App* validate = app.add_subcommand("validate", "check a fact-net file");
  validate->add_option("file", file)->required();

  CLI::App* prob = app.add_subcommand("prob", "conditional probabilities");
  prob->add_option("file", file)->required();
  prob->add_option("--system", system)->required();
  prob->add_option("--given", given)->required();
  prob->add_option("--target", target)->required();

  CLI::App* chain = app.add_subcommand("chain", "chain-property analysis");
  chain->add_option("file", file)->required();
  chain->add_option("--system", system)->required();
  chain->add_option("--triple", triple, "A,B,C with C the intermediate");

  CLI::App* selfspace = app.add_subcommand("selfspace", "Gram spectrum and factor");
  selfspace->add_option("file", file)->required();
  selfspace->add_option("--system", system)->required();
  selfspace->add_flag("--print-h", print_h, "also print the factor H");

  CLI::App* ampmap = app.add_subcommand("ampmap", "amplitude map between frames");
  ampmap->add_option("file", file)->required();
  ampmap->add_option("--system", system)->required();
  ampmap->add_option("--from", from)->required();
  ampmap->add_option("--to", to)->required();

  CLI::App* measure = app.add_subcommand("measure", "restrict fact-sets, rebuild W'");
  measure->add_option("file", file)->required();
  measure->add_option("--observer", system)->required();
  measure->add_option("--keep", keeps, "system=fact1|fact2 (repeatable)");
  measure->add_option("--order", order, "comma-separated neighbor ordering");
  measure->add_option("--out", out, "write the transformed net");
  measure->add_option("--emit-csv", csv, "write P(target-facts | given) as CSV");
  measure->add_option("--given", given);
  measure->add_option("--target", target);

  CLI::App* qrf = app.add_subcommand("qrf", "group checks and QRF changes");
  qrf->add_option("file", file)->required();
  qrf->add_option("--from", from);
  qrf->add_option("--to", to);
  qrf->add_option("--coef", coefs, "f,h,re[,im] (repeatable)");

  std::string scenario_help = "generate a built-in example (";
  for (const auto& sn : scenario_names())
    scenario_help += sn + (sn == scenario_names().back() ? ")" : ", ");
  CLI::App* scenario = app.add_subcommand("scenario", scenario_help);
  scenario->add_option("name", name)->required();
  scenario->add_option("--param", params, "key=value (repeatable)");
  scenario->add_option("--out", out, "write the .fn document here");
  scenario->add_option("--emit-csv", csv, "intensity/density curve for the slit "
                                          "and propagator scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const bool strict = !lenient;
    if (validate->parsed()) return run_validate(file, strict, tol);
    if (prob->parsed()) return run_prob(file, strict, system, given, target);
    if (chain->parsed()) return run_chain(file, strict, system, triple, tol);
    if (selfspace->parsed()) return run_selfspace(file, strict, system, tol, print_h);
    if (ampmap->parsed()) return run_ampmap(file, strict, system, from, to);
    if (measure->parsed())
      return run_measure(file, strict, system, keeps, order, out, csv, given, target);
    if (qrf->parsed()) return run_qrf(file, strict, from, to, coefs);
    if (scenario->parsed()) return run_scenario(name, params, out, csv);
  } catch (const Error& e) {
    std::cout << "error_code=" << errc_name(e.code()) << "\n";
    std::cout << "error=" << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cout << "error=" << e.what() << "\n";
    return 3;
  }
  return 2;
}
