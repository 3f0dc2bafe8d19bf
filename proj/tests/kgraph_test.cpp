// kgraph_test.cpp - parsing, validation and path arithmetic.

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "kgprim/graph_spec.hpp"
#include "support.hpp"

using namespace kgtest;

namespace {

const char* kFlipDoc = R"({
  "k": 2,
  "vertices": ["v"],
  "edges": [
    {"name": "e1", "color": 1, "range": "v", "source": "v"},
    {"name": "e2", "color": 1, "range": "v", "source": "v"},
    {"name": "f1", "color": 2, "range": "v", "source": "v"},
    {"name": "f2", "color": 2, "range": "v", "source": "v"}
  ],
  "squares": [
    {"first": ["e1", "f1"], "second": ["f1", "e1"]},
    {"first": ["e1", "f2"], "second": ["f1", "e2"]},
    {"first": ["e2", "f1"], "second": ["f2", "e1"]},
    {"first": ["e2", "f2"], "second": ["f2", "e2"]}
  ]
})";

std::string expect_spec_error(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e.location();
  }
  ADD_FAILURE() << "no SpecError for " << text;
  return "";
}

ValidationError::Kind expect_validation_error(const Presentation& p, std::string* witness = nullptr) {
  try {
    validate(p);
  } catch (const ValidationError& e) {
    if (witness) *witness = e.witness();
    return e.kind();
  }
  ADD_FAILURE() << "presentation validated unexpectedly";
  return ValidationError::Kind::kMalformed;
}

}  // namespace

TEST(Degree, LatticeOperations) {
  Degree a = D({1, 3});
  Degree b = D({2, 0});
  EXPECT_EQ(join(a, b), D({2, 3}));
  EXPECT_EQ(meet(a, b), D({1, 0}));
  EXPECT_TRUE(meet(a, b).le(a));
  EXPECT_FALSE(a.le(b));
  EXPECT_EQ(a + b, D({3, 3}));
  EXPECT_EQ((a + b) - b, a);
  EXPECT_THROW(b - a, std::domain_error);
  EXPECT_EQ(Degree::diagonal(3, 2), D({2, 2, 2}));
  EXPECT_EQ(a.total(), 4);
  EXPECT_EQ(a.max_entry(), 3);
}

TEST(Degree, DeltaSplitsIntoDisjointParts) {
  for (std::int64_t x = -3; x <= 3; ++x) {
    for (std::int64_t y = -3; y <= 3; ++y) {
      DegreeDelta h{x, y};
      Degree plus = h.plus();
      Degree minus = h.minus();
      EXPECT_TRUE(meet(plus, minus).is_zero());
      EXPECT_EQ(plus.delta() - minus.delta(), h);
    }
  }
}

TEST(Degree, BoxEnumerationIsOrderedAndComplete) {
  auto box = degrees_in_box(2, 2);
  EXPECT_EQ(box.size(), 9u);
  for (std::size_t i = 1; i < box.size(); ++i) EXPECT_TRUE(degree_less(box[i - 1], box[i]));
  EXPECT_EQ(degrees_below(D({1, 2})).size(), 6u);
}

TEST(ParseSpec, LoopDocument) {
  Presentation p = load_spec_file(fixture_path("G_loop"));
  EXPECT_EQ(p.skeleton.k, 1);
  EXPECT_EQ(p.skeleton.vertices.size(), 1u);
  EXPECT_EQ(p.skeleton.edges.size(), 1u);
}

TEST(ParseSpec, FlipDocument) {
  Presentation p = parse_spec(kFlipDoc);
  EXPECT_EQ(p.skeleton.edges.size(), 4u);
  EXPECT_EQ(p.rules.squares.size(), 4u);
  EXPECT_EQ(p.skeleton, load_spec_file(fixture_path("G_flip")).skeleton);
}

TEST(ParseSpec, DanglingVertexReportsLocation) {
  std::string doc = R"({"k":1,"vertices":["v"],"edges":[{"name":"a","color":1,"range":"v","source":"x"}],"squares":[]})";
  EXPECT_EQ(expect_spec_error(doc), "/edges/0/source");
}

TEST(ParseSpec, MalformedDocuments) {
  EXPECT_EQ(expect_spec_error(R"({"k":1,"vertices":["v","v"],"edges":[],"squares":[]})"), "/vertices/1");
  EXPECT_EQ(expect_spec_error(
                R"({"k":1,"vertices":["v"],"edges":[{"name":"a","color":1,"range":"v","source":"v"},{"name":"a","color":1,"range":"v","source":"v"}],"squares":[]})"),
            "/edges/1/name");
  EXPECT_EQ(expect_spec_error(R"({"k":1,"vertices":["v"],"edges":[{"name":"a","color":2,"range":"v","source":"v"}],"squares":[]})"),
            "/edges/0/color");
  EXPECT_EQ(expect_spec_error(R"({"k":1,"vertices":["v"],"edges":[],"squares":[{"first":["a","b"],"second":["b","a"]}]})"),
            "/squares/0/first/0");
  EXPECT_EQ(expect_spec_error(R"({"vertices":[]})"), "/k");
  EXPECT_NE(expect_spec_error("{\"k\": 1,"), "");
}

TEST(ParseSpec, RoundTripThroughJson) {
  for (const auto& name : good_fixtures()) {
    KGraph g = fixture(name);
    Presentation again = parse_spec_json(spec_to_json(g.presentation()));
    KGraph h = validate(again);
    EXPECT_EQ(spec_to_json(h.presentation()), spec_to_json(g.presentation())) << name;
  }
}

TEST(Validate, AllFixturesValidate) {
  for (const auto& name : good_fixtures()) EXPECT_NO_THROW(fixture(name)) << name;
}

TEST(Validate, MissingSquareIsNonBijective) {
  Presentation p = parse_spec(kFlipDoc);
  p.rules.squares.pop_back();
  std::string witness;
  EXPECT_EQ(expect_validation_error(p, &witness), ValidationError::Kind::kNonBijectiveSquares);
  EXPECT_NE(witness.find("e2"), std::string::npos);
}

TEST(Validate, DuplicateSideIsNonBijective) {
  Presentation p = parse_spec(kFlipDoc);
  p.rules.squares[3].second = {"f1", "e2"};
  EXPECT_EQ(expect_validation_error(p), ValidationError::Kind::kNonBijectiveSquares);
}

TEST(Validate, SourceVertexReported) {
  Presentation p;
  p.skeleton.k = 1;
  p.skeleton.vertices = {"u", "v"};
  p.skeleton.edges = {{"a", 1, "u", "u"}};
  std::string witness;
  EXPECT_EQ(expect_validation_error(p, &witness), ValidationError::Kind::kSource);
  EXPECT_NE(witness.find("v"), std::string::npos);
}

TEST(Validate, MutantFixturesRejected) {
  std::string witness;
  EXPECT_EQ(expect_validation_error(load_spec_file(fixture_path("mutant_flip_missing_square")), &witness),
            ValidationError::Kind::kNonBijectiveSquares);
  EXPECT_EQ(expect_validation_error(load_spec_file(fixture_path("mutant_2v_source")), &witness),
            ValidationError::Kind::kSource);
  EXPECT_EQ(expect_validation_error(load_spec_file(fixture_path("mutant_assoc")), &witness),
            ValidationError::Kind::kAssociativity);
  EXPECT_FALSE(witness.empty());
}

TEST(Validate, CubeSatisfiesAssociativity) {
  KGraph g = fixture("G_cube");
  EXPECT_EQ(g.k(), 3u);
  EXPECT_EQ(g.paths(0, D({1, 1, 1})).size(), 4u);
}

TEST(Compose, IdentityLaws) {
  for (const auto& name : good_fixtures()) {
    KGraph g = fixture(name);
    for (const Path& lam : all_paths(g, 1)) {
      EXPECT_EQ(g.compose(g.vertex_path(lam.range), lam), lam);
      EXPECT_EQ(g.compose(lam, g.vertex_path(lam.source)), lam);
    }
  }
}

TEST(Compose, FlipSquare) {
  KGraph g = fixture("G_flip");
  Path p = g.compose(P(g, "f1"), P(g, "e2"));
  EXPECT_EQ(g.path_string(p), "e1.f2");
  EXPECT_EQ(p.degree, D({1, 1}));
}

TEST(Compose, CommutingSquare) {
  KGraph g = fixture("G_sq");
  EXPECT_EQ(g.path_string(g.compose(P(g, "f"), P(g, "e"))), "e.f");
}

TEST(Compose, NonComposableThrows) {
  KGraph g = fixture("G_2v");
  EXPECT_THROW(g.compose(P(g, "b"), P(g, "a")), std::invalid_argument);
}

TEST(Factor, Endpoints) {
  for (const auto& name : good_fixtures()) {
    KGraph g = fixture(name);
    for (const Path& lam : all_paths(g, 2)) {
      auto [h0, t0] = g.factor(lam, Degree(g.k()));
      EXPECT_EQ(h0, g.vertex_path(lam.range));
      EXPECT_EQ(t0, lam);
      auto [h1, t1] = g.factor(lam, lam.degree);
      EXPECT_EQ(h1, lam);
      EXPECT_EQ(t1, g.vertex_path(lam.source));
    }
  }
}

TEST(Factor, FlipInvertsSquare) {
  KGraph g = fixture("G_flip");
  Path lam = P(g, "e1.f1");
  auto [head, tail] = g.factor(lam, D({0, 1}));
  EXPECT_EQ(g.path_string(head), "f1");
  EXPECT_EQ(g.path_string(tail), "e1");
  EXPECT_EQ(g.compose(head, tail), lam);
  Path lam2 = P(g, "e1.f2");
  auto [h2, t2] = g.factor(lam2, D({0, 1}));
  EXPECT_EQ(g.path_string(h2), "f1");
  EXPECT_EQ(g.path_string(t2), "e2");
}

TEST(Factor, DegreeOutOfRangeThrows) {
  KGraph g = fixture("G_flip");
  EXPECT_THROW(g.factor(P(g, "e1"), D({0, 1})), std::invalid_argument);
}

// Exhaustive uniqueness against an independent count of (head, tail) pairs.
TEST(Factor, UniquenessExhaustive) {
  for (const auto& name : good_fixtures()) {
    KGraph g = fixture(name);
    std::int64_t bound = g.k() >= 3 ? 2 : 3;
    std::size_t violations = 0;
    for (const Path& lam : all_paths(g, bound)) {
      for (const Degree& p : degrees_below(lam.degree)) {
        std::size_t hits = 0;
        for (const Path& head : brute_paths(g, lam.range, p)) {
          for (const Path& tail : brute_paths(g, head.source, lam.degree - p)) {
            if (g.compose(head, tail) == lam) ++hits;
          }
        }
        if (hits != 1) ++violations;
        auto [h, t] = g.factor(lam, p);
        if (h.degree != p || g.compose(h, t) != lam) ++violations;
      }
    }
    EXPECT_EQ(violations, 0u) << name;
  }
}

TEST(Paths, Counts) {
  EXPECT_EQ(fixture("G_loop").paths(0, D({3})).size(), 1u);
  EXPECT_EQ(fixture("G_O2").paths(0, D({2})).size(), 4u);
  EXPECT_EQ(fixture("G_flip").paths(0, D({1, 1})).size(), 4u);
  KGraph g = fixture("G_loop");
  EXPECT_EQ(g.path_string(g.paths(0, D({3})).front()), "a.a.a");
}

TEST(Paths, AgreeWithBruteEnumeration) {
  for (const auto& name : good_fixtures()) {
    KGraph g = fixture(name);
    std::int64_t bound = g.k() >= 3 ? 1 : 2;
    for (const Degree& n : degrees_in_box(g.k(), bound)) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto fast = g.paths(v, n);
        auto slow = brute_paths(g, v, n);
        std::set<std::string> a, b;
        for (const auto& p : fast) a.insert(g.path_string(p));
        for (const auto& p : slow) b.insert(g.path_string(p));
        EXPECT_EQ(a, b) << name << " " << n.to_string();
        EXPECT_EQ(a.size(), fast.size()) << "duplicates in " << name;
        std::size_t into = 0;
        for (VertexId w = 0; w < g.vertex_count(); ++w) {
          for (const Path& p : g.paths_into(w, n)) into += p.range == v;
        }
        EXPECT_EQ(into, fast.size());
      }
    }
  }
}

TEST(Paths, DeterministicOrder) {
  KGraph g = fixture("G_flip");
  auto a = g.paths(0, D({2, 1}));
  auto b = g.paths(0, D({2, 1}));
  EXPECT_EQ(a, b);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LT(g.path_string(a[i - 1]), g.path_string(a[i]));
}

TEST(Compose, DegreeFunctorAndAssociativityRandom) {
  std::mt19937 rng(7);
  for (const auto& name : good_fixtures()) {
    KGraph g = fixture(name);
    auto pool = all_paths(g, 1);
    for (int trial = 0; trial < 300; ++trial) {
      const Path& lam = pool[rng() % pool.size()];
      auto mus = g.paths_into(lam.source, Degree(g.k()));
      std::vector<Path> next;
      for (const Path& p : pool) {
        if (p.range == lam.source) next.push_back(p);
      }
      const Path& mu = next[rng() % next.size()];
      std::vector<Path> last;
      for (const Path& p : pool) {
        if (p.range == mu.source) last.push_back(p);
      }
      const Path& nu = last[rng() % last.size()];
      Path lm = g.compose(lam, mu);
      EXPECT_EQ(lm.degree, lam.degree + mu.degree);
      EXPECT_EQ(g.compose(lm, nu), g.compose(lam, g.compose(mu, nu)));
    }
  }
}

TEST(Normalize, Idempotent) {
  for (const auto& name : good_fixtures()) {
    KGraph g = fixture(name);
    for (const Path& p : all_paths(g, 2)) {
      if (p.is_vertex()) continue;
      EXPECT_EQ(g.normalize(p.edges), p);
      EXPECT_EQ(g.parse_path(g.path_string(p)), p);
    }
  }
}

TEST(Segment, MatchesFactorTwice) {
  KGraph g = fixture("G_flip");
  for (const Path& lam : all_paths(g, 2)) {
    for (const Degree& a : degrees_below(lam.degree)) {
      for (const Degree& b : degrees_below(lam.degree)) {
        if (!a.le(b)) continue;
        Path s = g.segment(lam, a, b);
        EXPECT_EQ(s.degree, b - a);
        Path left = g.segment(lam, Degree(2), a);
        Path right = g.segment(lam, b, lam.degree);
        EXPECT_EQ(g.compose(g.compose(left, s), right), lam);
      }
    }
  }
}

TEST(Presentation, SquaresListedLowerColorFirst) {
  KGraph g = fixture("G_flip");
  Presentation p = g.presentation();
  EXPECT_EQ(p.rules.squares.size(), 4u);
  for (const auto& sq : p.rules.squares) {
    EXPECT_EQ(g.edge(*g.find_edge(sq.first[0])).color, 0u);
  }
}
