#include "chiprotor/graph.hpp"

#include <algorithm>
#include <string>

namespace chiprotor {

IntVector IntMatrix::multiply(const IntVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    BigInt acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const BigInt& a = (*this)(r, c);
      if (a != 0 && v[c] != 0) acc += a * v[c];
    }
    out[r] = std::move(acc);
  }
  return out;
}

DirectedMultigraph::DirectedMultigraph(int vertex_count)
    : n_(vertex_count),
      mult_(vertex_count > 0 ? vertex_count : 0, vertex_count > 0 ? vertex_count : 0),
      out_degree_(vertex_count > 0 ? vertex_count : 0) {
  if (vertex_count < 1) throw GraphError("a graph needs at least one vertex");
}

DirectedMultigraph DirectedMultigraph::from_edge_list(
    int vertex_count, const std::vector<std::tuple<Vertex, Vertex, BigInt>>& edges) {
  DirectedMultigraph g(vertex_count);
  for (const auto& [tail, head, count] : edges) g.add_edge(tail, head, count);
  return g;
}

std::size_t DirectedMultigraph::index(Vertex v) const {
  if (v < 0 || v >= n_) throw GraphError("vertex " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

void DirectedMultigraph::add_edge(Vertex tail, Vertex head, const BigInt& count) {
  const std::size_t t = index(tail);
  const std::size_t h = index(head);
  if (t == h) throw GraphError("loops are not allowed (vertex " + std::to_string(tail) + ")");
  if (count < 0) throw GraphError("edge multiplicity must be nonnegative");
  mult_(t, h) += count;
  out_degree_[t] += count;
}

BigInt DirectedMultigraph::in_degree(Vertex v) const {
  const std::size_t h = index(v);
  BigInt total = 0;
  for (std::size_t u = 0; u < static_cast<std::size_t>(n_); ++u) total += mult_(u, h);
  return total;
}

std::vector<std::vector<Vertex>> DirectedMultigraph::support() const {
  std::vector<std::vector<Vertex>> adj(n_);
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (mult_(u, v) > 0) adj[u].push_back(v);
  return adj;
}

DirectedMultigraph DirectedMultigraph::induced(const std::vector<Vertex>& vertices) const {
  DirectedMultigraph sub(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = 0; j < vertices.size(); ++j)
      if (i != j) {
        const BigInt& m = multiplicity(vertices[i], vertices[j]);
        if (m > 0) sub.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j), m);
      }
  return sub;
}

IntMatrix laplacian(const DirectedMultigraph& g) {
  const int n = g.vertex_count();
  IntMatrix lap(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) lap(u, v) = (u == v) ? BigInt(-g.out_degree(v)) : g.multiplicity(v, u);
  return lap;
}

BigInt out_degree(const DirectedMultigraph& g, Vertex v) { return g.out_degree(v); }

std::vector<int> SccDecomposition::sink_component_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].is_sink) out.push_back(static_cast<int>(i));
  return out;
}

SccDecomposition scc_decompose(const DirectedMultigraph& g) {
  const int n = g.vertex_count();
  const auto adj = g.support();

  std::vector<int> dfs_number(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::vector<std::vector<Vertex>> found;
  int counter = 0;

  // Explicit call stack of (vertex, next successor index).
  std::vector<std::pair<Vertex, std::size_t>> calls;
  for (Vertex root = 0; root < n; ++root) {
    if (dfs_number[root] != -1) continue;
    calls.emplace_back(root, 0);
    dfs_number[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!calls.empty()) {
      auto& [v, next] = calls.back();
      if (next < adj[v].size()) {
        const Vertex w = adj[v][next++];
        if (dfs_number[w] == -1) {
          dfs_number[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], dfs_number[w]);
        }
        continue;
      }
      const Vertex done = v;
      calls.pop_back();
      if (!calls.empty()) {
        const Vertex parent = calls.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == dfs_number[done]) {
        std::vector<Vertex> component;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != done);
        std::sort(component.begin(), component.end());
        found.push_back(std::move(component));
      }
    }
  }

  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  SccDecomposition result;
  result.component_of.assign(n, -1);
  for (std::size_t i = 0; i < found.size(); ++i)
    for (Vertex v : found[i]) result.component_of[v] = static_cast<int>(i);

  for (std::size_t i = 0; i < found.size(); ++i) {
    StronglyConnectedComponent c;
    c.is_trivial = found[i].size() == 1;
    c.is_sink = true;
    for (Vertex v : found[i])
      for (Vertex w : adj[v])
        if (result.component_of[w] != static_cast<int>(i)) c.is_sink = false;
    c.vertices = std::move(found[i]);
    result.components.push_back(std::move(c));
  }
  return result;
}

bool is_strongly_connected(const DirectedMultigraph& g) {
  return scc_decompose(g).components.size() == 1;
}

bool is_eulerian(const DirectedMultigraph& g) {
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.in_degree(v) != g.out_degree(v)) return false;
  return true;
}

}  // namespace chiprotor
