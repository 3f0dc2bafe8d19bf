// kgprim - command-line front end.
//
//   kgprim <subcommand> GRAPH.json [--bound B] [--depth D] [--trunc L,M]
//          [--tail a,b] [--phases 1/3,...] [--mu PATH --nu PATH]
//          [--format text|json]
//
// Exit status: 0 success, 1 parse/validation/usage failure, 2 when the report
// contains a bound-limited (inconclusive) result.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kgprim/graph_spec.hpp"
#include "kgprim/report.hpp"

namespace {

struct Options {
  std::string input;
  std::string format = "json";
  std::string trunc;
  kgprim::RunConfig cfg;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

void emit(const nlohmann::json& doc, const std::string& format) {
  if (format == "text") {
    std::cout << kgprim::render_text(doc);
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

int fail(const std::string& kind, const std::string& location, const std::string& message,
         const std::string& format) {
  nlohmann::json doc = {{"error", kind}, {"message", message}};
  if (!location.empty()) doc["location"] = location;
  emit(doc, format);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primitive ideals of finite k-graph algebras"};
  app.require_subcommand(1);
  Options opt;
  std::string tail_list;
  std::string phase_list;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check a graph-spec document"},
      {"tails", "list maximal tails"},
      {"per", "periodicity group of each maximal tail"},
      {"hper", "certified/refuted/undetermined H_Per vertices"},
      {"quotient", "quotient P-graph, pullback and isomorphism check"},
      {"catalogue", "primitive-ideal catalogue"},
      {"primitive", "primitivity verdict"},
      {"ideal", "generating relations of one primitive ideal"},
      {"rep-check", "truncated representation checks"},
      {"oracle", "equivalence of two paths against the depth-bounded oracle"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", opt.input, "graph-spec JSON file")->required();
    sub->add_option("--bound", opt.cfg.bound, "search bound B for Per and Σ (default 4k)");
    sub->add_option("--depth", opt.cfg.depth, "verification depth D (default 3)");
    sub->add_option("--trunc", opt.trunc, "truncation L,M (default 3,3)");
    sub->add_option("--tail", tail_list, "maximal tail as comma-separated vertex names");
    sub->add_option("--phases", phase_list, "character phases p/q, one per Per basis vector");
    sub->add_option("--mu", opt.cfg.mu, "path: vertex name or dot-separated edge names");
    sub->add_option("--nu", opt.cfg.nu, "path: vertex name or dot-separated edge names");
    sub->add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (!tail_list.empty()) opt.cfg.tail = split_commas(tail_list);
  if (!phase_list.empty()) opt.cfg.phases = split_commas(phase_list);
  if (!opt.trunc.empty()) {
    auto parts = split_commas(opt.trunc);
    try {
      if (parts.size() != 2) throw std::invalid_argument(opt.trunc);
      opt.cfg.trunc_l = std::stoll(parts[0]);
      opt.cfg.trunc_m = std::stoll(parts[1]);
    } catch (const std::logic_error&) {
      return fail("usage", "--trunc", "expected L,M", opt.format);
    }
  }

  kgprim::Presentation presentation;
  try {
    presentation = kgprim::load_spec_file(opt.input);
  } catch (const kgprim::SpecError& e) {
    return fail("spec", e.location(), e.what(), opt.format);
  }
  try {
    kgprim::KGraph g = kgprim::validate(presentation);
    kgprim::Report report = kgprim::run_report(command, g, opt.cfg);
    report.body["command"] = command;
    report.body["inconclusive"] = report.inconclusive;
    emit(report.body, opt.format);
    return report.inconclusive ? 2 : 0;
  } catch (const kgprim::ValidationError& e) {
    nlohmann::json doc = {{"valid", false},
                          {"error", kgprim::ValidationError::kind_name(e.kind())},
                          {"witness", e.witness()}};
    emit(doc, opt.format);
    return 1;
  } catch (const std::invalid_argument& e) {
    return fail("usage", "", e.what(), opt.format);
  } catch (const std::exception& e) {
    return fail("internal", "", e.what(), opt.format);
  }
}
