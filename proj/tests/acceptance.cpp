// acceptance.cpp - end-to-end acceptance gate. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <unordered_set>
#include <sstream>
#include <string>
#include <vector>

#include "kgprim/catalogue.hpp"
#include "kgprim/periodicity.hpp"
#include "kgprim/quotient.hpp"
#include "kgprim/rep_sim.hpp"
#include "kgprim/report.hpp"
#include "support.hpp"

using namespace kgtest;

namespace {

// Pinned tolerances and bounds.
constexpr double kValidateSeconds = 1.0;
constexpr double kEquivalenceSeconds = 30.0;
constexpr double kRepSeconds = 60.0;
constexpr double kCkTolerance = 1e-9;
constexpr double kAnnihilationTolerance = 1e-9;
constexpr double kLoopMismatchNorm = 1.9;
constexpr double kFlipMismatchNorm = 1.0;
constexpr double kSeparationNorm = 1e-6;
constexpr std::int64_t kFactorBound = 3;
constexpr std::int64_t kPairBound = 2;
constexpr std::int64_t kPerBound = 4;
constexpr std::int64_t kDualityBound = 2;
constexpr std::int64_t kHperDepth = 2;
constexpr std::int64_t kQuotientDepth = 3;
constexpr std::int64_t kTrunc = 3;
constexpr std::size_t kCharacters = 3;

const std::vector<std::string> kFixtures = {"G_loop", "G_O2", "G_2v", "G_sq", "G_flip", "G_prod"};
const std::vector<std::string> kPeriodic = {"G_loop", "G_2v", "G_sq", "G_flip"};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failures for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

void criterion_1(Check& c) {
  double worst = 0;
  for (const auto& name : kFixtures) {
    auto start = Clock::now();
    try {
      fixture(name);
    } catch (const std::exception& e) {
      c.expect(false, name + " rejected: " + e.what());
    }
    double t = seconds_since(start);
    worst = std::max(worst, t);
    c.expect(t < kValidateSeconds, name + " took " + fmt(t) + " s");
  }
  for (const auto& name : {"mutant_flip_missing_square", "mutant_2v_source", "mutant_assoc"}) {
    auto start = Clock::now();
    try {
      fixture(name);
      c.expect(false, std::string(name) + " accepted");
    } catch (const ValidationError& e) {
      c.expect(!e.witness().empty(), std::string(name) + " rejected without witness");
    }
    double t = seconds_since(start);
    worst = std::max(worst, t);
    c.expect(t < kValidateSeconds, std::string(name) + " took " + fmt(t) + " s");
  }
  c.note = "slowest " + fmt(worst) + " s";
}

// Composition restricted to degree (p, n - p) pairs is a bijection onto vΛ^n.
void criterion_2(Check& c) {
  std::size_t checked = 0;
  std::size_t violations = 0;
  for (const auto& name : kFixtures) {
    KGraph g = fixture(name);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (const Degree& n : degrees_in_box(g.k(), kFactorBound)) {
        auto whole = brute_paths(g, v, n);
        std::unordered_set<Path, PathHash> expected(whole.begin(), whole.end());
        for (const Degree& p : degrees_below(n)) {
          std::unordered_set<Path, PathHash> images;
          std::size_t pairs = 0;
          for (const Path& head : brute_paths(g, v, p)) {
            for (const Path& tail : brute_paths(g, head.source, n - p)) {
              ++pairs;
              images.insert(g.compose(head, tail));
            }
          }
          if (pairs != images.size() || images != expected) ++violations;
          for (const Path& lam : whole) {
            ++checked;
            auto [h, t] = g.factor(lam, p);
            if (h.degree != p || g.compose(h, t) != lam) ++violations;
          }
        }
      }
    }
  }
  c.expect(violations == 0, std::to_string(violations) + " violations");
  c.note = std::to_string(checked) + " factorisations, " + std::to_string(violations) + " violations";
}

bool witness_refutes(const KGraph& g, const Path& mu, const Path& nu, const Path& w) {
  Path a = g.compose(mu, w);
  Path b = g.compose(nu, w);
  Degree t = meet(a.degree, b.degree);
  Degree zero(g.k());
  return g.segment(a, zero, t) != g.segment(b, zero, t);
}

void criterion_3(Check& c) {
  auto start = Clock::now();
  std::size_t pairs = 0;
  for (const auto& name : kFixtures) {
    KGraph g = fixture(name);
    EquivalenceEngine engine(g);
    std::map<VertexId, std::vector<Path>> by_source;
    for (const Path& p : all_paths(g, kPairBound)) by_source[p.source].push_back(p);
    for (const auto& [v, list] : by_source) {
      for (const Path& mu : list) {
        for (const Path& nu : list) {
          ++pairs;
          EquivalenceResult r = engine.check(mu, nu);
          std::string tag = name + " " + g.path_string(mu) + " ~ " + g.path_string(nu);
          if (r.equivalent) {
            c.expect(oracle_equivalent_depth(g, mu, nu, kPairBound + 1) == OracleVerdict::kCompatible,
                     tag + ": certified pair refuted by oracle");
            c.expect(mu.degree != nu.degree || mu == nu, tag + ": rigidity");
          } else {
            bool ok = r.witness && witness_refutes(g, mu, nu, *r.witness) &&
                      oracle_equivalent_depth(g, mu, nu, r.witness->degree.max_entry()) == OracleVerdict::kRefuted;
            c.expect(ok, tag + ": refutation not conclusive");
          }
          c.expect(r.equivalent == engine.equivalent(nu, mu), tag + ": symmetry");
        }
      }
      // Transitivity and composition on the degree <= 1 slice.
      for (const Path& a : list) {
        if (a.degree.max_entry() > 1) continue;
        for (const Path& b : list) {
          if (b.degree.max_entry() > 1 || !engine.equivalent(a, b)) continue;
          for (const Path& d : list) {
            if (engine.equivalent(b, d)) c.expect(engine.equivalent(a, d), name + ": transitivity");
          }
          if (a.range != b.range) continue;
          for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (g.edge(e).source != a.range) continue;
            Path lam = g.edge_path(e);
            c.expect(engine.equivalent(g.compose(lam, a), g.compose(lam, b)), name + ": left composition");
          }
          for (EdgeId e : g.edges_at(v)) {
            Path eps = g.edge_path(e);
            c.expect(engine.equivalent(g.compose(a, eps), g.compose(b, eps)), name + ": right composition");
          }
        }
      }
    }
  }
  double t = seconds_since(start);
  c.expect(t < kEquivalenceSeconds, "took " + fmt(t) + " s");
  c.note = std::to_string(pairs) + " pairs in " + fmt(t) + " s";
}

void criterion_4(Check& c) {
  std::map<std::string, std::vector<DegreeDelta>> expected = {
      {"G_O2", {}}, {"G_prod", {}}, {"G_loop", {DegreeDelta{1}}}, {"G_flip", {DegreeDelta{1, -1}}}};
  for (const auto& name : kFixtures) {
    KGraph g = fixture(name);
    Periodicity per(g);
    PerGroup group = per.per_group(kPerBound);
    c.expect(group.closure_verified, name + ": closure not verified");
    auto it = expected.find(name);
    if (it != expected.end()) {
      c.expect(group.basis() == it->second, name + ": basis " + std::to_string(group.rank()));
    }
    for (const auto& b : group.basis()) c.expect(per.per_contains(b) && per.per_contains(-b), name + ": generator");
    for (const Degree& p : degrees_in_box(g.k(), kDualityBound)) {
      for (const Degree& q : degrees_in_box(g.k(), kDualityBound)) {
        bool in_per = per.per_contains(p.delta() - q.delta());
        c.expect(in_per == group.contains(p.delta() - q.delta()), name + ": lattice vs membership");
        c.expect(in_per == per.sigma_contains_somewhere(p, q), name + ": duality at " + p.to_string() + q.to_string());
      }
    }
  }
}

void criterion_5(Check& c) {
  for (const auto& name : kPeriodic) {
    KGraph g = fixture(name);
    for (const auto& tail : maximal_tails(g)) {
      TailAnalysis a(g, tail, kPerBound);
      if (a.per().rank() == 0) continue;
      const KGraph& sub = a.graph();
      HperResult h = a.periodicity().h_per(a.per(), kHperDepth);
      c.expect(!h.certified.empty(), name + ": certified set empty");
      c.expect(is_hereditary(sub, h.certified), name + ": certified set not hereditary");
      for (VertexId v : h.certified) {
        LassoPath x = lasso_at(sub, v);
        for (const Degree& p : degrees_in_box(sub.k(), 2)) {
          for (const Degree& q : degrees_in_box(sub.k(), 2)) {
            if (!a.per().contains(p.delta() - q.delta())) continue;
            c.expect(shift(sub, x, p) == shift(sub, x, q), name + ": shift mismatch at " + sub.vertex_name(v));
          }
        }
      }
    }
  }
  KGraph g = fixture("G_2v");
  Periodicity per(g);
  for (std::int64_t depth = 0; depth <= kHperDepth; ++depth) {
    HperResult h = per.h_per(per.per_group(kPerBound), depth);
    bool refuted_u = std::find(h.refuted.begin(), h.refuted.end(), *g.find_vertex("u")) != h.refuted.end();
    if (!refuted_u) continue;
    c.expect(vertex_names(g, h.certified) == std::vector<std::string>{"v"}, "G_2v certified set");
    c.note = "G_2v: u refuted at depth " + std::to_string(depth);
    return;
  }
  c.expect(false, "G_2v: u not refuted by depth " + std::to_string(kHperDepth));
}

void criterion_6(Check& c) {
  std::size_t factorisations = 0;
  std::size_t paths = 0;
  for (const auto& name : kFixtures) {
    KGraph g = fixture(name);
    for (const auto& tail : maximal_tails(g)) {
      TailAnalysis a(g, tail, kPerBound);
      HperResult h = a.periodicity().h_per(a.per(), kQuotientDepth);
      if (h.certified.empty()) {
        c.expect(false, name + ": no certified vertices");
        continue;
      }
      PGraph pg = build_quotient_pgraph(a.periodicity(), h.certified, a.per(), kQuotientDepth);
      PGraphCheck check = validate_pgraph(pg, kQuotientDepth);
      c.expect(check.ok, name + ": " + check.witness);
      factorisations += check.factorisations;
      PullbackGraph pb = build_pullback(pg);
      IsoCheck iso = verify_pullback_iso(pg, pb, kQuotientDepth);
      c.expect(iso.ok, name + ": " + iso.witness);
      paths += iso.paths_checked;
      if (a.per().rank() == 0) {
        const KGraph& sub = pg.graph();
        IsoCheck round = check_edge_isomorphism(sub, pb.graph, [&](EdgeId e) {
          return sub.edge(e).name + "@" + std::to_string(sub.edge(e).color + 1);
        });
        c.expect(round.ok, name + ": round trip " + round.witness);
      }
    }
  }
  c.note = std::to_string(factorisations) + " factorisations, " + std::to_string(paths) + " paths";
}

void criterion_7(Check& c) {
  struct Expect {
    std::string name;
    std::size_t count;
    std::string dual;
  };
  for (const Expect& e : {Expect{"G_2v", 2, "circle"}, Expect{"G_loop", 1, "circle"}, Expect{"G_O2", 1, "point"}}) {
    auto entries = catalogue(fixture(e.name), kPerBound);
    c.expect(entries.size() == e.count, e.name + ": " + std::to_string(entries.size()) + " entries");
    for (const auto& entry : entries) c.expect(entry.dual == e.dual, e.name + ": dual " + entry.dual);
  }
  // Distinct characters on one tail: distinct presentations, separated by rep-sim.
  std::size_t pairs = 0;
  for (const auto& name : kPeriodic) {
    KGraph g = fixture(name);
    for (const auto& tail : maximal_tails(g)) {
      TailAnalysis a(g, tail, kPerBound);
      if (a.per().rank() == 0) continue;
      HperResult h = a.periodicity().h_per(a.per(), kQuotientDepth);
      auto chars = sample_characters(a.per(), kCharacters);
      for (std::size_t i = 0; i < chars.size(); ++i) {
        IdealPresentation pi = ideal_presentation(a, chars[i], h.certified);
        for (std::size_t j = 0; j < chars.size(); ++j) {
          if (i == j) continue;
          ++pairs;
          IdealPresentation pj = ideal_presentation(a, chars[j], h.certified);
          bool differ = false;
          for (std::size_t r = 0; r < pi.relations.size() && r < pj.relations.size(); ++r) {
            differ = differ || pi.relations[r].phase != pj.relations[r].phase;
          }
          c.expect(differ, name + ": presentations coincide");
          RepEvaluator rep(g, cofinal_path(g, tail), character_lift(a.per(), chars[j]), kTrunc, kTrunc);
          double sep = check_ideal_action(rep, pi, tail).relation_norm_max;
          c.expect(sep > kSeparationNorm, name + ": characters not separated (" + fmt(sep) + ")");
        }
      }
    }
  }
  c.note = std::to_string(pairs) + " character pairs separated";
}

void criterion_8(Check& c) {
  std::map<std::string, bool> expected = {{"G_O2", true},  {"G_prod", true},  {"G_loop", false},
                                          {"G_sq", false}, {"G_flip", false}, {"G_2v", false}};
  for (const auto& [name, primitive] : expected) {
    KGraph g = fixture(name);
    PrimitivityVerdict v = is_primitive(g, 4 * static_cast<std::int64_t>(g.k()));
    c.expect(v.primitive == primitive, name + ": verdict");
    c.expect(!v.reason.empty(), name + ": no reason");
    if (!v.primitive) {
      bool clause = !v.maximal_tail || (v.aperiodic.has_value() && !*v.aperiodic);
      c.expect(clause, name + ": failed clause not identified");
    }
  }
}

void criterion_9(Check& c) {
  auto start = Clock::now();
  double worst_ck = 0;
  double worst_ann = 0;
  std::map<std::string, double> mismatch;
  for (const auto& name : kPeriodic) {
    KGraph g = fixture(name);
    for (const auto& tail : maximal_tails(g)) {
      TailAnalysis a(g, tail, kPerBound);
      if (a.per().rank() == 0) continue;
      HperResult h = a.periodicity().h_per(a.per(), kQuotientDepth);
      auto chars = sample_characters(a.per(), kCharacters);
      c.expect(chars.size() == kCharacters, name + ": too few characters");
      for (const Character& gamma : chars) {
        IdealPresentation pres = ideal_presentation(a, gamma, h.certified);
        CharacterLift z = character_lift(a.per(), gamma);
        RepEvaluator rep(g, cofinal_path(g, tail), z, kTrunc, kTrunc);
        double ck = check_ck_relations(rep).max_deviation();
        double ann = check_ideal_action(rep, pres, tail).relation_norm_max;
        worst_ck = std::max(worst_ck, ck);
        worst_ann = std::max(worst_ann, ann);
        c.expect(ck <= kCkTolerance, name + ": CK deviation " + fmt(ck));
        c.expect(ann <= kAnnihilationTolerance, name + ": annihilation " + fmt(ann));
        CharacterLift off = z;
        off.z[0] = wrap_phase(off.z[0] + Phase(1, 2));
        RepEvaluator wrong(g, cofinal_path(g, tail), off, kTrunc, kTrunc);
        double norm = check_ideal_action(wrong, pres, tail).relation_norm_max;
        mismatch[name] = mismatch.count(name) ? std::min(mismatch[name], norm) : norm;
      }
    }
  }
  c.expect(mismatch["G_loop"] >= kLoopMismatchNorm, "G_loop mismatch norm " + fmt(mismatch["G_loop"]));
  c.expect(mismatch["G_flip"] >= kFlipMismatchNorm, "G_flip mismatch norm " + fmt(mismatch["G_flip"]));
  double t = seconds_since(start);
  c.expect(t < kRepSeconds, "took " + fmt(t) + " s");
  c.note = "max CK " + fmt(worst_ck) + ", max annihilation " + fmt(worst_ann) + ", mismatch loop " +
           fmt(mismatch["G_loop"]) + " flip " + fmt(mismatch["G_flip"]) + ", " + fmt(t) + " s";
}

std::string full_suite() {
  std::ostringstream out;
  const std::vector<std::string> commands = {"validate", "tails",     "per",   "hper",     "quotient",
                                             "catalogue", "primitive", "ideal", "rep-check"};
  for (const auto& name : kFixtures) {
    KGraph g = fixture(name);
    RunConfig cfg;
    for (const auto& cmd : commands) {
      Report r = run_report(cmd, g, cfg);
      out << name << " " << cmd << " " << r.inconclusive << " " << r.body.dump() << "\n";
    }
  }
  return out.str();
}

void criterion_10(Check& c) {
  std::string first = full_suite();
  std::string second = full_suite();
  c.expect(first == second, "reports differ");
  c.expect(!first.empty(), "empty suite");
  c.note = std::to_string(first.size()) + " bytes compared";
}

}  // namespace

int main() {
  const std::vector<std::function<void(Check&)>> criteria = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                             criterion_5, criterion_6, criterion_7, criterion_8,
                                                             criterion_9, criterion_10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i](c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu: %s", i + 1, c.ok() ? "PASS" : "FAIL");
    if (!c.note.empty()) std::printf(" (%s)", c.note.c_str());
    std::printf("\n");
    for (std::size_t f = 0; f < c.failures.size() && f < 5; ++f) std::printf("  %s\n", c.failures[f].c_str());
    if (c.failures.size() > 5) std::printf("  ... %zu more\n", c.failures.size() - 5);
    std::fflush(stdout);
    if (!c.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
