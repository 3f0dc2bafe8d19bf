#include "kgprim/report.hpp"

#include <sstream>
#include <stdexcept>

#include "kgprim/graph_spec.hpp"
#include "kgprim/periodicity.hpp"
#include "kgprim/quotient.hpp"
#include "kgprim/rep_sim.hpp"

namespace kgprim {

using nlohmann::json;

json path_json(const KGraph& g, const Path& p) { return g.path_string(p); }

json names_json(const KGraph& g, const VertexSet& set) { return vertex_names(g, set); }

namespace {

json degree_json(const Degree& d) { return d.entries(); }
json delta_json(const DegreeDelta& d) { return d.entries(); }

json basis_json(const PerGroup& per) {
  json out = json::array();
  for (const auto& b : per.basis()) out.push_back(delta_json(b));
  return out;
}

json per_json(const PerGroup& per) {
  return {{"per_basis", basis_json(per)},
          {"rank", per.rank()},
          {"bound", per.search_bound},
          {"closure_verified", per.closure_verified}};
}

json phases_json(const std::vector<Phase>& phases) {
  json out = json::array();
  for (const auto& p : phases) out.push_back(phase_string(p));
  return out;
}

VertexSet resolve_tail(const KGraph& g, const RunConfig& cfg) {
  if (cfg.tail.empty()) {
    auto tails = maximal_tails(g);
    if (tails.empty()) throw std::invalid_argument("graph has no maximal tail");
    return tails.front();
  }
  VertexSet t = vertex_set_from_names(g, cfg.tail);
  auto check = check_maximal_tail(g, t);
  if (!check.ok) {
    throw std::invalid_argument(std::string("--tail is not a maximal tail: condition (") + check.condition + ") " +
                                check.witness);
  }
  return t;
}

Character resolve_character(const PerGroup& per, const RunConfig& cfg) {
  Character c;
  if (cfg.phases.empty()) {
    c.phases.assign(per.rank(), Phase(0));
    return c;
  }
  if (cfg.phases.size() != per.rank()) {
    throw std::invalid_argument("--phases needs " + std::to_string(per.rank()) + " values, one per Per basis vector");
  }
  for (const auto& p : cfg.phases) c.phases.push_back(parse_phase(p));
  return c;
}

json sigma_json(const std::vector<SigmaPair>& pairs) {
  json out = json::array();
  for (const auto& s : pairs) out.push_back({{"p", degree_json(s.p)}, {"q", degree_json(s.q)}});
  return out;
}

json hper_json(const TailAnalysis& a, const HperResult& h) {
  const KGraph& sub = a.graph();
  json refutations = json::array();
  for (const auto& r : h.refutations) {
    refutations.push_back({{"vertex", sub.vertex_name(r.vertex)},
                           {"lambda", path_json(sub, r.lambda)},
                           {"m", degree_json(r.m)}});
  }
  json out = {{"certified", names_json(sub, h.certified)},
              {"refuted", names_json(sub, h.refuted)},
              {"undetermined", names_json(sub, h.undetermined)},
              {"depth", h.depth},
              {"sigma_min", sigma_json(h.sigma_min)},
              {"refutations", refutations}};
  out["anchor"] = h.anchor ? json(sub.vertex_name(*h.anchor)) : json(nullptr);
  out["join"] = h.join ? degree_json(*h.join) : json(nullptr);
  return out;
}

}  // namespace

Report validate_report(const KGraph& g) {
  Report r;
  r.body = spec_to_json(g.presentation());
  r.body["valid"] = true;
  return r;
}

Report tails_report(const KGraph& g) {
  Report r;
  json tails = json::array();
  for (const auto& t : maximal_tails(g)) tails.push_back(names_json(g, t));
  r.body = {{"tails", tails}};
  return r;
}

Report per_report(const KGraph& g, const RunConfig& cfg) {
  Report r;
  json entries = json::array();
  for (const auto& t : maximal_tails(g)) {
    TailAnalysis a(g, t, cfg.bound_for(g));
    json e = per_json(a.per());
    e["tail"] = names_json(g, t);
    r.inconclusive = r.inconclusive || !a.per().closure_verified;
    entries.push_back(e);
  }
  r.body = {{"tails", entries}};
  return r;
}

Report hper_report(const KGraph& g, const RunConfig& cfg) {
  Report r;
  json entries = json::array();
  for (const auto& t : maximal_tails(g)) {
    TailAnalysis a(g, t, cfg.bound_for(g));
    HperResult h = a.periodicity().h_per(a.per(), cfg.depth);
    json e = hper_json(a, h);
    e["tail"] = names_json(g, t);
    e["per"] = per_json(a.per());
    r.inconclusive = r.inconclusive || !h.undetermined.empty() || h.certified.empty();
    entries.push_back(e);
  }
  r.body = {{"tails", entries}};
  return r;
}

Report quotient_report(const KGraph& g, const RunConfig& cfg) {
  Report r;
  json entries = json::array();
  for (const auto& t : maximal_tails(g)) {
    TailAnalysis a(g, t, cfg.bound_for(g));
    HperResult h = a.periodicity().h_per(a.per(), cfg.depth);
    json e = {{"tail", names_json(g, t)}, {"per", per_json(a.per())}, {"objects", names_json(a.graph(), h.certified)}};
    if (h.certified.empty()) {
      e["status"] = "no certified vertices";
      r.inconclusive = true;
      entries.push_back(e);
      continue;
    }
    PGraph pg = build_quotient_pgraph(a.periodicity(), h.certified, a.per(), cfg.depth);
    const KGraph& sub = a.graph();
    json classes = json::array();
    for (const auto& c : pg.classes()) {
      classes.push_back({{"representative", path_json(sub, c.key)},
                         {"degree", delta_json(c.degree.rep)},
                         {"range", sub.vertex_name(c.range)},
                         {"source", sub.vertex_name(c.source)}});
    }
    PGraphCheck check = validate_pgraph(pg, cfg.depth);
    PullbackGraph pb = build_pullback(pg);
    IsoCheck iso = verify_pullback_iso(pg, pb, cfg.depth);
    json table = json::array();
    for (const auto& [from, to] : iso.table) table.push_back({from, to});
    e["classes"] = classes;
    e["pgraph_check"] = {{"ok", check.ok}, {"witness", check.witness}, {"factorisations", check.factorisations},
                         {"depth", cfg.depth}};
    e["pullback"] = spec_to_json(pb.graph.presentation());
    e["pullback_iso"] = {{"ok", iso.ok}, {"witness", iso.witness}, {"paths_checked", iso.paths_checked},
                         {"table", table}, {"depth", cfg.depth}};
    e["status"] = check.ok && iso.ok ? "verified" : "failed";
    entries.push_back(e);
  }
  r.body = {{"tails", entries}};
  return r;
}

Report catalogue_report(const KGraph& g, const RunConfig& cfg) {
  Report r;
  json entries = json::array();
  for (const auto& e : catalogue(g, cfg.bound_for(g))) {
    json j = per_json(e.per);
    j["tail"] = names_json(g, e.tail);
    j["dual"] = e.dual;
    r.inconclusive = r.inconclusive || !e.per.closure_verified;
    entries.push_back(j);
  }
  r.body = {{"entries", entries}, {"count", entries.size()}};
  return r;
}

Report primitive_report(const KGraph& g, const RunConfig& cfg) {
  Report r;
  PrimitivityVerdict v = is_primitive(g, cfg.bound_for(g));
  r.body = {{"primitive", v.primitive},
            {"maximal_tail", v.maximal_tail},
            {"aperiodic", v.aperiodic ? json(*v.aperiodic) : json(nullptr)},
            {"per_rank", v.per_rank},
            {"bound", cfg.bound_for(g)},
            {"reason", v.reason}};
  return r;
}

Report ideal_report(const KGraph& g, const RunConfig& cfg) {
  Report r;
  VertexSet t = resolve_tail(g, cfg);
  TailAnalysis a(g, t, cfg.bound_for(g));
  Character gamma = resolve_character(a.per(), cfg);
  HperResult h = a.periodicity().h_per(a.per(), cfg.depth);
  IdealPresentation pres = ideal_presentation(a, gamma, h.certified);
  json relations = json::array();
  for (const auto& rel : pres.relations) {
    relations.push_back({{"mu", path_json(g, rel.mu)},
                         {"nu", path_json(g, rel.nu)},
                         {"h", delta_json(rel.h)},
                         {"phase", phase_string(rel.phase)}});
  }
  r.body = per_json(a.per());
  r.body["tail"] = names_json(g, t);
  r.body["character"] = phases_json(gamma.phases);
  r.body["lift"] = phases_json(character_lift(a.per(), gamma).z);
  r.body["hereditary_set"] = names_json(a.graph(), h.certified);
  r.body["presentation"] = {{"vertex_generators", names_json(g, pres.vertex_generators)},
                            {"relations", relations}};
  r.inconclusive = !h.undetermined.empty() || h.certified.empty();
  return r;
}

Report rep_check_report(const KGraph& g, const RunConfig& cfg) {
  Report r;
  VertexSet t = resolve_tail(g, cfg);
  TailAnalysis a(g, t, cfg.bound_for(g));
  Character gamma = resolve_character(a.per(), cfg);
  HperResult h = a.periodicity().h_per(a.per(), cfg.depth);
  CharacterLift z = character_lift(a.per(), gamma);
  LassoPath x = cofinal_path(g, t);
  RepEvaluator rep(g, x, z, cfg.trunc_l, cfg.trunc_m);
  CkReport ck = check_ck_relations(rep);
  CkReport exact = check_ck_relations(rep, CkMode::kExact);
  IdealPresentation pres = ideal_presentation(a, gamma, h.certified);
  IdealActionReport ia = check_ideal_action(rep, pres, t);
  r.body = per_json(a.per());
  r.body["tail"] = names_json(g, t);
  r.body["character"] = phases_json(gamma.phases);
  r.body["lift"] = phases_json(z.z);
  r.body["base_path"] = lasso_string(g, x);
  r.body["truncation"] = {cfg.trunc_l, cfg.trunc_m};
  r.body["dimension"] = rep.dimension();
  r.body["ck"] = {{"ck1", ck.ck1}, {"ck2", ck.ck2}, {"ck3", ck.ck3}, {"ck4", ck.ck4},
                  {"max_deviation", ck.max_deviation()}, {"exact_max_deviation", exact.max_deviation()},
                  {"checks", ck.checks}, {"skipped", ck.skipped}};
  r.body["ideal_action"] = {{"relation_norm_max", ia.relation_norm_max},
                            {"vertex_generator_max", ia.vertex_generator_max},
                            {"relations", ia.relations},
                            {"vectors_checked", ia.vectors_checked}};
  return r;
}

Report oracle_report(const KGraph& g, const RunConfig& cfg) {
  if (cfg.mu.empty() || cfg.nu.empty()) throw std::invalid_argument("oracle needs --mu and --nu");
  Report r;
  Path mu = g.parse_path(cfg.mu);
  Path nu = g.parse_path(cfg.nu);
  if (mu.source != nu.source) throw std::invalid_argument("--mu and --nu must have the same source");
  EquivalenceEngine engine(g);
  EquivalenceResult res = engine.check(mu, nu);
  OracleVerdict verdict = oracle_equivalent_depth(g, mu, nu, cfg.depth);
  r.body = {{"mu", path_json(g, mu)},
            {"nu", path_json(g, nu)},
            {"equivalent", res.equivalent},
            {"depth", cfg.depth},
            {"oracle", verdict == OracleVerdict::kRefuted ? "refuted" : "compatible"}};
  r.body["witness"] = res.witness ? path_json(g, *res.witness) : json(nullptr);
  if (res.equivalent && verdict == OracleVerdict::kRefuted) {
    throw std::logic_error("oracle refutes a pair the engine certified equivalent");
  }
  // A refutation deeper than D leaves the oracle unable to confirm the engine.
  r.inconclusive = !res.equivalent && verdict == OracleVerdict::kCompatible;
  return r;
}

Report run_report(const std::string& command, const KGraph& g, const RunConfig& cfg) {
  if (command == "validate") return validate_report(g);
  if (command == "tails") return tails_report(g);
  if (command == "per") return per_report(g, cfg);
  if (command == "hper") return hper_report(g, cfg);
  if (command == "quotient") return quotient_report(g, cfg);
  if (command == "catalogue") return catalogue_report(g, cfg);
  if (command == "primitive") return primitive_report(g, cfg);
  if (command == "ideal") return ideal_report(g, cfg);
  if (command == "rep-check") return rep_check_report(g, cfg);
  if (command == "oracle") return oracle_report(g, cfg);
  throw std::invalid_argument("unknown subcommand '" + command + "'");
}

namespace {

void render(const json& doc, int indent, std::ostringstream& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (doc.is_object()) {
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const json& v = it.value();
      bool scalar_list = v.is_array() && std::none_of(v.begin(), v.end(), [](const json& x) {
                           return x.is_object() || (x.is_array() && !x.empty() && x.front().is_structured());
                         });
      if (v.is_structured() && !scalar_list && !v.empty()) {
        out << pad << it.key() << ":\n";
        render(v, indent + 1, out);
      } else {
        out << pad << it.key() << ": " << v.dump() << "\n";
      }
    }
  } else if (doc.is_array()) {
    for (const auto& v : doc) {
      if (v.is_object()) {
        out << pad << "-\n";
        render(v, indent + 1, out);
      } else {
        out << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    out << pad << doc.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const json& doc) {
  std::ostringstream out;
  render(doc, 0, out);
  return out.str();
}

}  // namespace kgprim
