// lasso.hpp - eventually periodic infinite paths prefix·cycle·cycle·...

#pragma once

#include <string>

#include "kgprim/kgraph.hpp"

namespace kgprim {

struct LassoPath {
  Path prefix;
  Path cycle;  // r(cycle) = s(cycle) = s(prefix), every degree entry positive

  const Degree& period() const noexcept { return cycle.degree; }
  VertexId range() const noexcept { return prefix.range; }

  // Structural equality of the stored data; use lasso_equal for the
  // infinite paths they represent.
  bool operator==(const LassoPath&) const = default;
};

// Throws std::invalid_argument if the data does not describe a lasso.
LassoPath make_lasso(const KGraph& g, Path prefix, Path cycle);

// x(a, b).
Path infinite_segment(const KGraph& g, const LassoPath& x, const Degree& a, const Degree& b);
// x(n) as a vertex.
VertexId lasso_vertex(const KGraph& g, const LassoPath& x, const Degree& n);

// Exact: two lassos with prefix degree join M agree everywhere iff they agree
// on x(0, M + P) for equal periods P, and on x(0, M + P + P') otherwise.
bool lasso_equal(const KGraph& g, const LassoPath& x, const LassoPath& y);

// Shortest cycle (largest root of the period), then a prefix rolled back one
// color step at a time for as long as the infinite path is unchanged.
LassoPath canonical(const KGraph& g, const LassoPath& x);

// sigma^p(x), canonicalised.
LassoPath shift(const KGraph& g, const LassoPath& x, const Degree& p);

// lambda·x for s(lambda) = x(0).
LassoPath prepend(const KGraph& g, const Path& lambda, const LassoPath& x);

// Walks from v by the first path of degree (1,...,1) at each step until a
// vertex repeats.
LassoPath lasso_at(const KGraph& g, VertexId v);

std::string lasso_string(const KGraph& g, const LassoPath& x);

}  // namespace kgprim
