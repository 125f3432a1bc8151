#pragma once

#include <optional>
#include <vector>

#include "chiprotor/bigint.hpp"
#include "chiprotor/graph.hpp"

namespace chiprotor {

/// Unique primitive period vector of a strongly connected graph: the
/// positive, coprime generator of the kernel of its Laplacian. A single
/// vertex yields (1). Throws GraphError if `g` is not strongly connected.
CountVector primitive_period_vector(const DirectedMultigraph& g);

struct SinkPeriod {
  int component = -1;             // index into PeriodBasis::scc.components
  std::vector<Vertex> vertices;   // members of the sink component
  CountVector vector;             // full length, zero outside the component
  CountVector routing_vector;     // vector(v) * deg+(v)
};

/// Kernel generators of the Laplacian (one per sink component) together
/// with per(G), the sum over all strongly connected components of the
/// coordinate sums of their standalone primitive period vectors.
struct PeriodBasis {
  SccDecomposition scc;
  std::vector<SinkPeriod> sinks;
  BigInt period_length = 0;
  /// sink-component period index per vertex, -1 outside sink components
  std::vector<int> sink_of;
};

PeriodBasis period_basis(const DirectedMultigraph& g);

/// Column echelon form A * U = H with U unimodular. The first `rank` columns
/// of H carry the pivots (pivot k sits in row pivot_rows[k], positive); the
/// remaining columns of H are zero, so the matching columns of U span the
/// integer kernel of A.
struct ColumnEchelonForm {
  IntMatrix echelon;
  IntMatrix transform;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

ColumnEchelonForm column_echelon(const IntMatrix& a);

/// Lattice basis of {z integer : A z = 0}.
std::vector<IntVector> integer_kernel_basis(const IntMatrix& a);

/// Some integer f with L f = d, or nullopt when no integer solution exists.
/// Throws std::invalid_argument on a dimension mismatch.
std::optional<IntVector> solve_integer(const IntMatrix& lap, const IntVector& d);

/// The unique reduced f >= 0 with L_G f = d, or nullopt.
std::optional<CountVector> nonneg_reduced_solution(const DirectedMultigraph& g, const IntVector& d);
std::optional<CountVector> nonneg_reduced_solution(const DirectedMultigraph& g, const PeriodBasis& basis,
                                                   const IntVector& d);

/// f dominates no nonzero period vector: every sink component has a vertex
/// with f(v) < p_i(v).
bool is_reduced(const DirectedMultigraph& g, const CountVector& f);
bool is_reduced(const PeriodBasis& basis, const CountVector& f);

/// r dominates no nonzero routing period vector. Sink vertices have a zero
/// routing period and impose no condition.
bool is_routing_reduced(const DirectedMultigraph& g, const CountVector& r);
bool is_routing_reduced(const PeriodBasis& basis, const CountVector& r);

enum class ReductionMode { Firing, Routing };

/// Subtracts the largest multiple of each sink component's (routing) period
/// vector that keeps the vector nonnegative. Idempotent.
CountVector reduce_vector(const DirectedMultigraph& g, const CountVector& f,
                          ReductionMode mode = ReductionMode::Firing);
CountVector reduce_vector(const PeriodBasis& basis, const CountVector& f,
                          ReductionMode mode = ReductionMode::Firing);

}  // namespace chiprotor
