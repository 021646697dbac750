#pragma once

// Vietoris-Rips complexes, boundary operators, combinatorial Laplacians and
// exact Betti numbers. Everything here is integer-exact; the floating-point
// eigenvalue count is only offered as a cross-check.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qtda {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

class PointCloud {
 public:
  PointCloud() = default;
  // Throws ArgumentError unless every point has the same dimension >= 1.
  explicit PointCloud(std::vector<std::vector<double>> points);

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.empty() ? 0 : points_.front().size(); }
  const std::vector<double>& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<std::vector<double>>& points() const { return points_; }

  double distance(std::size_t i, std::size_t j) const;

 private:
  std::vector<std::vector<double>> points_;
};

struct Edge {
  int u;
  int v;  // u < v
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct NeighborhoodGraph {
  int n = 0;
  double epsilon = 0.0;
  std::vector<Edge> edges;  // sorted, canonical u < v

  bool adjacent(int u, int v) const;
};

// Strictly ascending vertex list; dimension = size - 1.
using Simplex = std::vector<int>;

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  SimplicialComplex(NeighborhoodGraph graph, std::vector<std::vector<Simplex>> simplices);

  const NeighborhoodGraph& graph() const { return graph_; }
  int vertex_count() const { return graph_.n; }
  // Highest dimension that was enumerated (simplices above it are unknown).
  int max_dim() const { return static_cast<int>(simplices_.size()) - 1; }

  // S_k in lexicographic order; empty for k outside [0, max_dim].
  const std::vector<Simplex>& simplices(int k) const;
  std::size_t count(int k) const { return simplices(k).size(); }

  // Row/column index of `s` inside S_k, or -1.
  std::ptrdiff_t index_of(const Simplex& s) const;

 private:
  NeighborhoodGraph graph_;
  std::vector<std::vector<Simplex>> simplices_;
};

struct BoundaryMatrix {
  int k = 0;
  IntMatrix entries;  // |S_{k-1}| x |S_k|
};

struct Laplacian {
  int k = 0;
  IntMatrix entries;  // |S_k| x |S_k|

  Eigen::MatrixXd real() const { return entries.cast<double>(); }
  Eigen::Index size() const { return entries.rows(); }
};

NeighborhoodGraph build_rips_graph(const PointCloud& cloud, double epsilon);

// Graph from an explicit edge list (used for hand-built and random complexes).
NeighborhoodGraph make_graph(int n, std::vector<Edge> edges, double epsilon = 0.0);

// Complex from an explicit simplex list on vertices [0, n). Every simplex must
// be strictly ascending and all of its faces except vertices must be listed;
// every vertex is added. Not necessarily a clique complex.
SimplicialComplex complex_from_simplices(int n, std::vector<Simplex> simplices);

// Clique complex of `graph` up to dimension max_dim.
SimplicialComplex build_complex(const NeighborhoodGraph& graph, int max_dim);

// Column of s = [v_0..v_k] carries (-1)^(k-t) at the face that drops v_t, so
// [a, b] -> [a] - [b] and [a, b, c] -> [b, c] - [a, c] + [a, b]. This is
// (-1)^k times the alternating-sum orientation; kernels, images and Laplacians
// are identical under either.
BoundaryMatrix boundary_matrix(const SimplicialComplex& complex, int k);

Laplacian laplacian(const SimplicialComplex& complex, int k);

// Rank over the rationals by fraction-free (Bareiss) elimination. Falls back to
// arbitrary precision when 64-bit intermediates would overflow.
Eigen::Index integer_rank(const IntMatrix& m);

// dim ker Laplacian_k, checked against dim ker d_k - rank d_{k+1}. Returns 0
// when S_k is empty. Throws NumericError if the two routes disagree.
int exact_betti(const SimplicialComplex& complex, int k);

// Rank-nullity route only: |S_k| - rank d_k - rank d_{k+1}.
int betti_by_rank(const SimplicialComplex& complex, int k);

// Floating-point count of |eigenvalue| < tol of the Laplacian.
int betti_by_eigenvalues(const SimplicialComplex& complex, int k, double tol = 1e-9);

// Erdos-Renyi graph G(n, edge_prob) followed by its clique complex.
SimplicialComplex random_complex(int n, double edge_prob, int max_dim, std::uint64_t seed);

// {"n":..,"epsilon":..,"simplices":{"0":[[i],..],"1":[[i,j],..],..}}
std::string complex_to_json(const SimplicialComplex& complex);

}  // namespace qtda
