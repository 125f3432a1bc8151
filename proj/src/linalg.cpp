#include "chiprotor/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace chiprotor {

namespace {

using Rational = boost::multiprecision::cpp_rational;

struct ExtendedGcd {
  BigInt gcd, s, t;  // s*a + t*b = gcd >= 0
};

ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (r != 0) {
    const BigInt q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

BigInt vector_gcd(const IntVector& v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, BigInt(abs(x)));
  return g;
}

// Kernel vector of a rank-deficient-by-one square matrix, via rational RREF.
CountVector rational_kernel_generator(const IntMatrix& a) {
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = Rational(a(i, j));

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && rows[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(rows[p], rows[r]);
    const Rational pivot = rows[r][c];
    for (std::size_t j = c; j < n; ++j) rows[r][j] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational factor = rows[i][c];
      for (std::size_t j = c; j < n; ++j) rows[i][j] -= factor * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (pivot_col.size() + 1 != n) {
    throw std::logic_error("expected a one-dimensional kernel");
  }

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;

  std::vector<Rational> kernel(n, Rational(0));
  kernel[free_col] = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) kernel[pivot_col[i]] = -rows[i][free_col];

  BigInt common = 1;
  for (const auto& q : kernel) {
    const BigInt den = boost::multiprecision::denominator(q);
    common = common / gcd(common, den) * den;
  }
  IntVector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational scaled = kernel[j] * Rational(common);
    out[j] = boost::multiprecision::numerator(scaled);
  }
  const BigInt g = vector_gcd(out);
  for (auto& x : out) x /= g;
  if (out[free_col] < 0)
    for (auto& x : out) x = -x;
  return out;
}

void check_length(const DirectedMultigraph& g, const IntVector& v) {
  if (v.size() != static_cast<std::size_t>(g.vertex_count()))
    throw std::invalid_argument("vector length does not match vertex count");
}

}  // namespace

CountVector primitive_period_vector(const DirectedMultigraph& g) {
  if (!is_strongly_connected(g)) throw GraphError("primitive period vector needs a strongly connected graph");
  CountVector p = rational_kernel_generator(laplacian(g));
  for (const auto& x : p)
    if (x <= 0) throw std::logic_error("period vector of a strongly connected graph must be positive");
  return p;
}

PeriodBasis period_basis(const DirectedMultigraph& g) {
  PeriodBasis basis;
  basis.scc = scc_decompose(g);
  basis.sink_of.assign(g.vertex_count(), -1);
  const std::size_t n = static_cast<std::size_t>(g.vertex_count());

  for (std::size_t i = 0; i < basis.scc.components.size(); ++i) {
    const auto& comp = basis.scc.components[i];
    const CountVector local = primitive_period_vector(g.induced(comp.vertices));
    basis.period_length += sum(local);
    if (!comp.is_sink) continue;

    SinkPeriod sp;
    sp.component = static_cast<int>(i);
    sp.vertices = comp.vertices;
    sp.vector = zeros(n);
    sp.routing_vector = zeros(n);
    for (std::size_t k = 0; k < comp.vertices.size(); ++k) {
      const Vertex v = comp.vertices[k];
      sp.vector[v] = local[k];
      sp.routing_vector[v] = local[k] * g.out_degree(v);
      basis.sink_of[v] = static_cast<int>(basis.sinks.size());
    }
    basis.sinks.push_back(std::move(sp));
  }
  return basis;
}

ColumnEchelonForm column_echelon(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix h = a;
  IntMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j) u(j, j) = 1;

  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < m; ++i) std::swap(h(i, x), h(i, y));
    for (std::size_t i = 0; i < n; ++i) std::swap(u(i, x), u(i, y));
  };
  // (col_x, col_y) <- (s col_x + t col_y, p col_x + q col_y)
  auto combine = [&](std::size_t x, std::size_t y, const BigInt& s, const BigInt& t, const BigInt& p,
                     const BigInt& q) {
    auto apply = [&](IntMatrix& mat, std::size_t rows) {
      for (std::size_t i = 0; i < rows; ++i) {
        const BigInt vx = mat(i, x);
        const BigInt vy = mat(i, y);
        mat(i, x) = s * vx + t * vy;
        mat(i, y) = p * vx + q * vy;
      }
    };
    apply(h, m);
    apply(u, n);
  };
  auto axpy_col = [&](std::size_t dst, const BigInt& factor, std::size_t src) {
    for (std::size_t i = 0; i < m; ++i) h(i, dst) -= factor * h(i, src);
    for (std::size_t i = 0; i < n; ++i) u(i, dst) -= factor * u(i, src);
  };

  ColumnEchelonForm out;
  std::size_t c = 0;
  for (std::size_t i = 0; i < m && c < n; ++i) {
    for (std::size_t j = c + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, c) == 0) {
        swap_cols(c, j);
        continue;
      }
      const BigInt a_ic = h(i, c);
      const BigInt a_ij = h(i, j);
      const auto eg = extended_gcd(a_ic, a_ij);
      combine(c, j, eg.s, eg.t, BigInt(-a_ij / eg.gcd), BigInt(a_ic / eg.gcd));
    }
    if (h(i, c) == 0) continue;
    if (h(i, c) < 0) {
      for (std::size_t r = 0; r < m; ++r) h(r, c) = -h(r, c);
      for (std::size_t r = 0; r < n; ++r) u(r, c) = -u(r, c);
    }
    for (std::size_t j = 0; j < c; ++j) {
      const BigInt q = floor_div(h(i, j), h(i, c));
      if (q != 0) axpy_col(j, q, c);
    }
    out.pivot_rows.push_back(i);
    ++c;
  }
  out.rank = c;
  out.echelon = std::move(h);
  out.transform = std::move(u);
  return out;
}

std::vector<IntVector> integer_kernel_basis(const IntMatrix& a) {
  const auto ef = column_echelon(a);
  std::vector<IntVector> basis;
  for (std::size_t j = ef.rank; j < a.cols(); ++j) {
    IntVector col(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) col[i] = ef.transform(i, j);
    basis.push_back(std::move(col));
  }
  return basis;
}

std::optional<IntVector> solve_integer(const IntMatrix& lap, const IntVector& d) {
  if (d.size() != lap.rows()) throw std::invalid_argument("solve_integer: dimension mismatch");
  const auto ef = column_echelon(lap);
  const std::size_t n = lap.cols();
  IntVector y = zeros(n);

  std::size_t next_pivot = 0;
  for (std::size_t i = 0; i < lap.rows(); ++i) {
    const bool pivot_row = next_pivot < ef.rank && ef.pivot_rows[next_pivot] == i;
    const std::size_t known = next_pivot;
    BigInt residual = d[i];
    for (std::size_t j = 0; j < known; ++j)
      if (ef.echelon(i, j) != 0) residual -= ef.echelon(i, j) * y[j];
    if (pivot_row) {
      const BigInt& pivot = ef.echelon(i, known);
      if (residual % pivot != 0) return std::nullopt;
      y[known] = residual / pivot;
      ++next_pivot;
    } else if (residual != 0) {
      return std::nullopt;
    }
  }
  return ef.transform.multiply(y);
}

std::optional<CountVector> nonneg_reduced_solution(const DirectedMultigraph& g, const IntVector& d) {
  return nonneg_reduced_solution(g, period_basis(g), d);
}

std::optional<CountVector> nonneg_reduced_solution(const DirectedMultigraph& g, const PeriodBasis& basis,
                                                   const IntVector& d) {
  check_length(g, d);
  auto particular = solve_integer(laplacian(g), d);
  if (!particular) return std::nullopt;
  CountVector f = std::move(*particular);

  // Outside the sink components the kernel vanishes, so f is forced there.
  for (std::size_t v = 0; v < f.size(); ++v)
    if (basis.sink_of[v] < 0 && f[v] < 0) return std::nullopt;

  for (const auto& sp : basis.sinks) {
    BigInt shift = floor_div(f[sp.vertices.front()], sp.vector[sp.vertices.front()]);
    for (Vertex v : sp.vertices) shift = std::min(shift, floor_div(f[v], sp.vector[v]));
    if (shift == 0) continue;
    for (Vertex v : sp.vertices) f[v] -= shift * sp.vector[v];
  }
  return f;
}

bool is_reduced(const DirectedMultigraph& g, const CountVector& f) {
  check_length(g, f);
  return is_reduced(period_basis(g), f);
}

bool is_reduced(const PeriodBasis& basis, const CountVector& f) {
  for (const auto& sp : basis.sinks) {
    const bool below = std::any_of(sp.vertices.begin(), sp.vertices.end(),
                                   [&](Vertex v) { return f[v] < sp.vector[v]; });
    if (!below) return false;
  }
  return true;
}

bool is_routing_reduced(const DirectedMultigraph& g, const CountVector& r) {
  check_length(g, r);
  return is_routing_reduced(period_basis(g), r);
}

bool is_routing_reduced(const PeriodBasis& basis, const CountVector& r) {
  for (const auto& sp : basis.sinks) {
    if (is_zero(sp.routing_vector)) continue;
    const bool below = std::any_of(sp.vertices.begin(), sp.vertices.end(),
                                   [&](Vertex v) { return r[v] < sp.routing_vector[v]; });
    if (!below) return false;
  }
  return true;
}

CountVector reduce_vector(const DirectedMultigraph& g, const CountVector& f, ReductionMode mode) {
  check_length(g, f);
  return reduce_vector(period_basis(g), f, mode);
}

CountVector reduce_vector(const PeriodBasis& basis, const CountVector& f, ReductionMode mode) {
  if (!is_nonnegative(f)) throw std::invalid_argument("reduce_vector expects a nonnegative vector");
  CountVector out = f;
  for (const auto& sp : basis.sinks) {
    const CountVector& unit = mode == ReductionMode::Firing ? sp.vector : sp.routing_vector;
    std::optional<BigInt> times;
    for (Vertex v : sp.vertices) {
      if (unit[v] == 0) continue;
      const BigInt k = out[v] / unit[v];
      if (!times || k < *times) times = k;
    }
    if (!times || *times == 0) continue;
    for (Vertex v : sp.vertices) out[v] -= *times * unit[v];
  }
  return out;
}

}  // namespace chiprotor
