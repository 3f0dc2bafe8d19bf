// report.hpp - structured (JSON) reports shared by the CLI and the tests.
// Object keys are sorted, so serialised reports are byte-stable.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "kgprim/catalogue.hpp"
#include "kgprim/kgraph.hpp"

namespace kgprim {

struct RunConfig {
  std::int64_t bound = -1;  // B; -1 means 4k
  std::int64_t depth = 3;   // D
  std::int64_t trunc_l = 3;
  std::int64_t trunc_m = 3;
  std::vector<std::string> tail;    // empty: first maximal tail
  std::vector<std::string> phases;  // empty: trivial character
  std::string mu;
  std::string nu;

  std::int64_t bound_for(const KGraph& g) const {
    return bound >= 0 ? bound : 4 * static_cast<std::int64_t>(g.k());
  }
};

// A report plus whether it contains a bound-limited (inconclusive) result.
struct Report {
  nlohmann::json body;
  bool inconclusive = false;
};

Report validate_report(const KGraph& g);
Report tails_report(const KGraph& g);
Report per_report(const KGraph& g, const RunConfig& cfg);
Report hper_report(const KGraph& g, const RunConfig& cfg);
Report quotient_report(const KGraph& g, const RunConfig& cfg);
Report catalogue_report(const KGraph& g, const RunConfig& cfg);
Report primitive_report(const KGraph& g, const RunConfig& cfg);
Report ideal_report(const KGraph& g, const RunConfig& cfg);
Report rep_check_report(const KGraph& g, const RunConfig& cfg);
Report oracle_report(const KGraph& g, const RunConfig& cfg);

// Dispatch by subcommand name; throws std::invalid_argument for unknown names.
Report run_report(const std::string& command, const KGraph& g, const RunConfig& cfg);

nlohmann::json path_json(const KGraph& g, const Path& p);
nlohmann::json names_json(const KGraph& g, const VertexSet& set);

// Indented "key: value" rendering of a report.
std::string render_text(const nlohmann::json& doc);

}  // namespace kgprim
