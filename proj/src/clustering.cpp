#include "v2v/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "v2v/eigensolver.hpp"

namespace v2v {

ZonePartition partition_from_labels(std::span<const int> labels) {
  ZonePartition p;
  p.labels.resize(labels.size());
  std::unordered_map<int, int> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(labels[i], int(remap.size()));
    if (inserted) p.zones.emplace_back();
    p.labels[i] = it->second;
    p.zones[it->second].push_back(int(i));
  }
  return p;
}

bool is_valid_partition(const ZonePartition& p, int num_pairs) {
  if (int(p.labels.size()) != num_pairs) return false;
  std::vector<int> seen(num_pairs, 0);
  for (int z = 0; z < p.count(); ++z) {
    if (p.zones[z].empty()) return false;
    for (int k : p.zones[z]) {
      if (k < 0 || k >= num_pairs || p.labels[k] != z) return false;
      ++seen[k];
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

Eigen::MatrixXd gaussian_distance_similarity(std::span<const Vec2> positions, double sigma,
                                             double epsilon, const GridLayout* grid) {
  if (!(sigma > 0.0) || !(epsilon > 0.0)) {
    throw std::invalid_argument("sigma_d and epsilon_d must be positive");
  }
  const int n = int(positions.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dist = grid ? torus_distance(positions[i], positions[j], *grid)
                               : norm(positions[j] - positions[i]);
      const double s = dist <= epsilon ? std::exp(-dist * dist / (2.0 * sigma * sigma)) : 0.0;
      d(i, j) = s;
      d(j, i) = s;
    }
  }
  return d;
}

Eigen::MatrixXd cosine_load_similarity(const std::vector<std::vector<double>>& histories) {
  const int n = int(histories.size());
  std::vector<double> norms(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (double x : histories[i]) s += x * x;
    norms[i] = std::sqrt(s);
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (histories[i].size() != histories[j].size()) {
        throw std::invalid_argument("load histories differ in length");
      }
      if (norms[i] == 0.0 || norms[j] == 0.0) continue;
      double dot = 0.0;
      for (std::size_t t = 0; t < histories[i].size(); ++t) dot += histories[i][t] * histories[j][t];
      const double v = std::clamp(dot / (norms[i] * norms[j]), 0.0, 1.0);
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return c;
}

Eigen::MatrixXd affinity(const Eigen::MatrixXd& c, const Eigen::MatrixXd& d, double theta) {
  if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("theta must lie in [0, 1]");
  if (c.rows() != d.rows() || c.cols() != d.cols()) throw std::invalid_argument("shape mismatch");
  const auto ones = Eigen::MatrixXd::Ones(c.rows(), c.cols());
  Eigen::MatrixXd a = theta * (ones - c) + (1.0 - theta) * (ones - d);
  a = 0.5 * (a + a.transpose()).eval();
  a.diagonal().setZero();
  return a;
}

Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  const Eigen::VectorXd degree = a.rowwise().sum();
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) inv_sqrt(i) = degree(i) > 0.0 ? 1.0 / std::sqrt(degree(i)) : 0.0;
  Eigen::MatrixXd lap = -a;
  lap.diagonal() += degree;
  return inv_sqrt.asDiagonal() * lap * inv_sqrt.asDiagonal();
}

int select_eigengap(const Eigen::VectorXd& ev, int b_min, int b_max) {
  const int n = int(ev.size());
  b_max = std::min(b_max, n - 1);
  if (b_max < b_min) return std::max(1, std::min(b_min, n));
  constexpr double kTieTol = 1e-9;
  double best_gap = -std::numeric_limits<double>::infinity();
  for (int i = b_min; i <= b_max; ++i) best_gap = std::max(best_gap, ev(i) - ev(i - 1));
  for (int i = b_min; i <= b_max; ++i) {
    if (ev(i) - ev(i - 1) >= best_gap - kTieTol) return i;
  }
  return b_min;
}

std::vector<int> kmeans(const Eigen::MatrixXd& rows, int k, std::mt19937_64& rng) {
  const int n = int(rows.rows());
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, number of points]");
  std::vector<int> labels(n, 0);
  if (k == n) {
    for (int i = 0; i < n; ++i) labels[i] = i;
    return labels;
  }

  // k-means++ seeding.
  Eigen::MatrixXd centers(k, rows.cols());
  std::vector<char> chosen(n, 0);
  int first = std::uniform_int_distribution<int>(0, n - 1)(rng);
  centers.row(0) = rows.row(first);
  chosen[first] = 1;
  std::vector<double> d2(n);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < c; ++j) best = std::min(best, (rows.row(i) - centers.row(j)).squaredNorm());
      d2[i] = chosen[i] ? 0.0 : best;
      total += d2[i];
    }
    int pick;
    if (total > 0.0) {
      pick = std::discrete_distribution<int>(d2.begin(), d2.end())(rng);
    } else {
      std::vector<int> rest;
      for (int i = 0; i < n; ++i) if (!chosen[i]) rest.push_back(i);
      pick = rest[std::uniform_int_distribution<std::size_t>(0, rest.size() - 1)(rng)];
    }
    centers.row(c) = rows.row(pick);
    chosen[pick] = 1;
  }

  auto nearest = [&](int i) {
    int best = 0;
    double best_d = (rows.row(i) - centers.row(0)).squaredNorm();
    for (int c = 1; c < k; ++c) {
      const double d = (rows.row(i) - centers.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  };

  constexpr int kMaxIter = 100;
  constexpr double kMoveTol = 1e-9;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    for (int i = 0; i < n; ++i) labels[i] = nearest(i);

    std::vector<int> sizes(k, 0);
    for (int l : labels) ++sizes[l];
    // Repair empty clusters with the point farthest from its own centroid.
    for (int c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        if (sizes[labels[i]] < 2) continue;
        const double d = (rows.row(i) - centers.row(labels[i])).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      --sizes[labels[far]];
      labels[far] = c;
      sizes[c] = 1;
      centers.row(c) = rows.row(far);
    }

    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, rows.cols());
    for (int i = 0; i < n; ++i) next.row(labels[i]) += rows.row(i);
    for (int c = 0; c < k; ++c) next.row(c) /= double(sizes[c]);
    const double move = (next - centers).rowwise().norm().maxCoeff();
    centers = next;
    if (move < kMoveTol) break;
  }
  return labels;
}

SpectralResult spectral_zones(const Eigen::MatrixXd& a, int b_min, int b_max, std::mt19937_64& rng) {
  const int n = int(a.rows());
  if (a.cols() != n) throw std::invalid_argument("affinity must be square");
  SpectralResult out;
  if (n < 4) {
    std::vector<int> labels(n, 0);
    out.partition = partition_from_labels(labels);
    return out;
  }

  const Eigen::VectorXd degree = a.rowwise().sum();
  std::vector<int> connected;
  std::vector<int> isolated;
  for (int i = 0; i < n; ++i) (degree(i) > 0.0 ? connected : isolated).push_back(i);

  const SymmetricEigen eig = symmetric_eigen(normalized_laplacian(a));
  out.eigenvalues = eig.values;
  const int b = select_eigengap(eig.values, b_min, b_max);
  out.chosen_b = b;

  std::vector<int> labels(n, -1);
  int next_label = 0;
  if (!connected.empty()) {
    const int m = int(connected.size());
    const int k = std::clamp(b - int(isolated.size()), 1, m);
    Eigen::MatrixXd y(m, b);
    for (int r = 0; r < m; ++r) {
      y.row(r) = eig.vectors.row(connected[r]).head(b);
      const double len = y.row(r).norm();
      if (len > 0.0) y.row(r) /= len;
    }
    const std::vector<int> km = kmeans(y, k, rng);
    for (int r = 0; r < m; ++r) labels[connected[r]] = km[r];
    next_label = k;
  }
  for (int i : isolated) labels[i] = next_label++;
  out.partition = partition_from_labels(labels);
  return out;
}

} // namespace v2v
