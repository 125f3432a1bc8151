#pragma once

#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "chiprotor/bigint.hpp"

namespace chiprotor {

using Vertex = int;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector multiply(const IntVector& v) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Loopless directed multigraph on vertices 0..n-1, stored as its adjacency
/// (multiplicity) matrix. Multiplicities are unbounded integers, so a graph
/// whose edge count is exponential in its encoding size is cheap to hold.
class DirectedMultigraph {
 public:
  explicit DirectedMultigraph(int vertex_count);

  /// Builds a graph from (tail, head, multiplicity) triples; repeated pairs
  /// accumulate.
  static DirectedMultigraph from_edge_list(int vertex_count,
                                           const std::vector<std::tuple<Vertex, Vertex, BigInt>>& edges);

  /// Adds `count` parallel edges tail->head. Throws GraphError on loops,
  /// out-of-range vertices or negative counts.
  void add_edge(Vertex tail, Vertex head, const BigInt& count = 1);

  int vertex_count() const { return n_; }
  const BigInt& multiplicity(Vertex tail, Vertex head) const { return mult_(index(tail), index(head)); }
  const BigInt& out_degree(Vertex v) const { return out_degree_[index(v)]; }
  BigInt in_degree(Vertex v) const;
  bool is_sink(Vertex v) const { return out_degree(v) == 0; }

  /// Support adjacency lists: heads with positive multiplicity, ascending.
  std::vector<std::vector<Vertex>> support() const;

  /// Subgraph induced by `vertices`; vertex i of the result is vertices[i].
  DirectedMultigraph induced(const std::vector<Vertex>& vertices) const;

  friend bool operator==(const DirectedMultigraph& a, const DirectedMultigraph& b) {
    return a.n_ == b.n_ && a.mult_ == b.mult_;
  }

 private:
  std::size_t index(Vertex v) const;

  int n_;
  IntMatrix mult_;
  IntVector out_degree_;
};

/// L(u,v) = -deg+(v) if u == v, else d(v,u). Firing v adds column v to a
/// chip configuration.
IntMatrix laplacian(const DirectedMultigraph& g);

BigInt out_degree(const DirectedMultigraph& g, Vertex v);

struct StronglyConnectedComponent {
  std::vector<Vertex> vertices;  // ascending
  bool is_sink = false;          // no edge leaves the component
  bool is_trivial = false;       // single vertex
};

struct SccDecomposition {
  std::vector<int> component_of;  // vertex -> index into components
  std::vector<StronglyConnectedComponent> components;  // ordered by smallest member

  std::vector<int> sink_component_indices() const;
};

/// Iterative Tarjan over the support digraph.
SccDecomposition scc_decompose(const DirectedMultigraph& g);

bool is_strongly_connected(const DirectedMultigraph& g);

/// In-degree equals out-degree at every vertex. Connectivity is not checked.
bool is_eulerian(const DirectedMultigraph& g);

}  // namespace chiprotor
