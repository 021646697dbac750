#include "qtda/complex.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "qtda/errors.hpp"

namespace qtda {

PointCloud::PointCloud(std::vector<std::vector<double>> points) : points_(std::move(points)) {
  if (points_.empty()) throw ArgumentError("point cloud must contain at least one point");
  const std::size_t m = points_.front().size();
  if (m == 0) throw ArgumentError("points must have dimension >= 1");
  for (const auto& p : points_) {
    if (p.size() != m) throw ArgumentError("all points must share the same dimension");
  }
}

double PointCloud::distance(std::size_t i, std::size_t j) const {
  double acc = 0.0;
  const auto& a = points_[i];
  const auto& b = points_[j];
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

bool NeighborhoodGraph::adjacent(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), Edge{u, v});
}

NeighborhoodGraph build_rips_graph(const PointCloud& cloud, double epsilon) {
  if (!(epsilon >= 0.0)) throw ArgumentError("grouping scale must be non-negative");
  NeighborhoodGraph g;
  g.n = static_cast<int>(cloud.size());
  g.epsilon = epsilon;
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (cloud.distance(i, j) <= epsilon) g.edges.push_back({i, j});
    }
  }
  return g;
}

NeighborhoodGraph make_graph(int n, std::vector<Edge> edges, double epsilon) {
  if (n < 1) throw ArgumentError("graph needs at least one vertex");
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v || e.u < 0 || e.v >= n) throw ArgumentError("invalid edge");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return NeighborhoodGraph{n, epsilon, std::move(edges)};
}

SimplicialComplex::SimplicialComplex(NeighborhoodGraph graph,
                                     std::vector<std::vector<Simplex>> simplices)
    : graph_(std::move(graph)), simplices_(std::move(simplices)) {}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  static const std::vector<Simplex> kEmpty;
  if (k < 0 || k >= static_cast<int>(simplices_.size())) return kEmpty;
  return simplices_[k];
}

std::ptrdiff_t SimplicialComplex::index_of(const Simplex& s) const {
  const auto& list = simplices(static_cast<int>(s.size()) - 1);
  auto it = std::lower_bound(list.begin(), list.end(), s);
  if (it == list.end() || *it != s) return -1;
  return it - list.begin();
}

SimplicialComplex complex_from_simplices(int n, std::vector<Simplex> simplices) {
  if (n < 1) throw ArgumentError("complex needs at least one vertex");
  int top = 0;
  for (const auto& s : simplices) {
    if (s.empty()) throw ArgumentError("empty simplex");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] >= n) throw ArgumentError("simplex vertex out of range");
      if (i > 0 && s[i] <= s[i - 1]) throw ArgumentError("simplex vertices must be strictly ascending");
    }
    top = std::max(top, static_cast<int>(s.size()) - 1);
  }
  std::vector<std::vector<Simplex>> levels(top + 1);
  for (int v = 0; v < n; ++v) levels[0].push_back({v});
  for (auto& s : simplices) levels[s.size() - 1].push_back(std::move(s));
  for (auto& level : levels) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
  }
  std::vector<Edge> edges;
  for (const auto& e : levels.size() > 1 ? levels[1] : std::vector<Simplex>{}) edges.push_back({e[0], e[1]});
  SimplicialComplex out(make_graph(n, std::move(edges)), std::move(levels));
  for (int k = 1; k <= top; ++k) {
    for (const auto& s : out.simplices(k)) {
      for (std::size_t t = 0; t < s.size(); ++t) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(t));
        if (out.index_of(face) < 0) throw ArgumentError("simplex list is not closed under faces");
      }
    }
  }
  return out;
}

SimplicialComplex build_complex(const NeighborhoodGraph& graph, int max_dim) {
  if (max_dim < 0) throw ArgumentError("max_dim must be non-negative");
  const int n = graph.n;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& e : graph.edges) adj[e.u][e.v] = adj[e.v][e.u] = 1;

  std::vector<std::vector<Simplex>> levels(max_dim + 1);
  for (int v = 0; v < n; ++v) levels[0].push_back({v});
  // Extending each clique only by larger vertices keeps every level sorted.
  for (int k = 1; k <= max_dim; ++k) {
    for (const auto& s : levels[k - 1]) {
      for (int v = s.back() + 1; v < n; ++v) {
        bool ok = true;
        for (int u : s) {
          if (!adj[u][v]) {
            ok = false;
            break;
          }
        }
        if (ok) {
          Simplex t = s;
          t.push_back(v);
          levels[k].push_back(std::move(t));
        }
      }
    }
  }
  return SimplicialComplex(graph, std::move(levels));
}

BoundaryMatrix boundary_matrix(const SimplicialComplex& complex, int k) {
  if (k < 1) throw ArgumentError("boundary operator needs k >= 1");
  const auto& upper = complex.simplices(k);
  const auto& lower = complex.simplices(k - 1);
  if (upper.empty() || lower.empty()) {
    throw EmptyDimensionError("boundary operator of dimension " + std::to_string(k) +
                              " needs nonempty S_k and S_{k-1}");
  }
  BoundaryMatrix d{k, IntMatrix::Zero(static_cast<Eigen::Index>(lower.size()),
                                      static_cast<Eigen::Index>(upper.size()))};
  Simplex face;
  for (std::size_t col = 0; col < upper.size(); ++col) {
    const auto& s = upper[col];
    for (int t = 0; t <= k; ++t) {
      face.clear();
      for (int i = 0; i <= k; ++i) {
        if (i != t) face.push_back(s[i]);
      }
      const auto row = complex.index_of(face);
      if (row < 0) throw ArgumentError("complex is not closed under faces");
      d.entries(row, static_cast<Eigen::Index>(col)) = ((k - t) % 2 == 0) ? 1 : -1;
    }
  }
  return d;
}

Laplacian laplacian(const SimplicialComplex& complex, int k) {
  if (k < 0) throw ArgumentError("laplacian needs k >= 0");
  const auto size = static_cast<Eigen::Index>(complex.count(k));
  if (size == 0) {
    throw EmptyDimensionError("no " + std::to_string(k) + "-simplices in the complex");
  }
  Laplacian lap{k, IntMatrix::Zero(size, size)};
  if (k >= 1) {
    const auto down = boundary_matrix(complex, k).entries;
    lap.entries += down.transpose() * down;
  }
  if (complex.count(k + 1) > 0) {
    const auto up = boundary_matrix(complex, k + 1).entries;
    lap.entries += up * up.transpose();
  }
  return lap;
}

namespace {

struct Overflow {};

std::int64_t checked_sub_mul(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  std::int64_t ab, cd, r;
  if (__builtin_mul_overflow(a, b, &ab) || __builtin_mul_overflow(c, d, &cd) ||
      __builtin_sub_overflow(ab, cd, &r)) {
    throw Overflow{};
  }
  return r;
}

template <typename T, typename Cross>
Eigen::Index bareiss_rank(std::vector<std::vector<T>> a, Cross cross) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a.front().size();
  std::size_t rank = 0;
  T prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    const T p = a[rank][col];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const T f = a[i][col];
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = cross(a[i][j], p, f, a[rank][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = p;
    ++rank;
  }
  return static_cast<Eigen::Index>(rank);
}

template <typename T>
std::vector<std::vector<T>> to_rows(const IntMatrix& m) {
  std::vector<std::vector<T>> rows(m.rows(), std::vector<T>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows[i][j] = T(m(i, j));
  return rows;
}

}  // namespace

Eigen::Index integer_rank(const IntMatrix& m) {
  if (m.size() == 0) return 0;
  try {
    return bareiss_rank(to_rows<std::int64_t>(m), checked_sub_mul);
  } catch (const Overflow&) {
    using Big = boost::multiprecision::cpp_int;
    return bareiss_rank(to_rows<Big>(m), [](const Big& a, const Big& b, const Big& c,
                                            const Big& d) { return Big(a * b - c * d); });
  }
}

int betti_by_rank(const SimplicialComplex& complex, int k) {
  const auto size = static_cast<Eigen::Index>(complex.count(k));
  if (size == 0) return 0;
  Eigen::Index rank_down = 0;
  Eigen::Index rank_up = 0;
  if (k >= 1) rank_down = integer_rank(boundary_matrix(complex, k).entries);
  if (complex.count(k + 1) > 0) rank_up = integer_rank(boundary_matrix(complex, k + 1).entries);
  return static_cast<int>(size - rank_down - rank_up);
}

int exact_betti(const SimplicialComplex& complex, int k) {
  if (k < 0 || complex.count(k) == 0) return 0;
  const auto lap = laplacian(complex, k);
  const int kernel_dim = static_cast<int>(lap.size() - integer_rank(lap.entries));
  const int by_rank = betti_by_rank(complex, k);
  if (kernel_dim != by_rank) {
    throw NumericError("Laplacian kernel (" + std::to_string(kernel_dim) +
                       ") disagrees with rank-nullity (" + std::to_string(by_rank) + ")");
  }
  return kernel_dim;
}

int betti_by_eigenvalues(const SimplicialComplex& complex, int k, double tol) {
  if (k < 0 || complex.count(k) == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(complex, k).real(),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return static_cast<int>(std::count_if(ev.begin(), ev.end(),
                                        [tol](double x) { return std::abs(x) < tol; }));
}

SimplicialComplex random_complex(int n, double edge_prob, int max_dim, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("random complex needs n >= 1");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw ArgumentError("edge_prob must be in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(edge_prob);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({i, j});
  return build_complex(make_graph(n, std::move(edges)), max_dim);
}

std::string complex_to_json(const SimplicialComplex& complex) {
  nlohmann::ordered_json j;
  j["n"] = complex.vertex_count();
  j["epsilon"] = complex.graph().epsilon;
  nlohmann::ordered_json by_dim = nlohmann::ordered_json::object();
  for (int k = 0; k <= complex.max_dim(); ++k) {
    if (complex.count(k) == 0) continue;
    by_dim[std::to_string(k)] = complex.simplices(k);
  }
  j["simplices"] = std::move(by_dim);
  return j.dump();
}

}  // namespace qtda
