#pragma once

#include <doctest.h>

#include <functional>
#include <sstream>
#include <string>

#include "qigs/error.hpp"
#include "qigs/graph.hpp"

namespace qigs::testing {

inline Graph parse_edges(const std::string& text, std::size_t min_vertices = 0) {
  std::istringstream in(text);
  return parse_graph(in, GraphFormat::edge_list, min_vertices);
}

inline Graph complete_graph(int n, double weight = 1.0) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.set(i, j, weight);
  return Graph(std::move(m));
}

inline Graph cycle4() { return parse_edges("0 1\n1 2\n2 3\n3 0\n"); }
inline Graph path4() { return parse_edges("0 1\n1 2\n2 3\n"); }

/// Kind of the qigs::Error thrown by f; fails the test if nothing is thrown.
inline ErrorKind error_kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected qigs::Error");
  return ErrorKind::io;
}

}  // namespace qigs::testing
