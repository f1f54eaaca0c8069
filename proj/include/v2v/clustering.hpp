// Zone formation: similarity matrices, affinity blend and normalized spectral
// clustering with eigengap model selection.
#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "v2v/scenario.hpp"

namespace v2v {

struct ZonePartition {
  std::vector<std::vector<int>> zones; // pair ids, ascending within a zone
  std::vector<int> labels;             // zone index per pair

  int count() const { return int(zones.size()); }
};

/// Builds a partition from raw labels. Zones are renumbered in order of first
/// appearance so that equal groupings compare equal.
ZonePartition partition_from_labels(std::span<const int> labels);

/// Non-empty, disjoint and covering 0..num_pairs-1.
bool is_valid_partition(const ZonePartition& p, int num_pairs);

/// Gaussian kernel on pair distances, cut to zero beyond `epsilon`. Distances
/// are taken on the torus when `grid` is given.
Eigen::MatrixXd gaussian_distance_similarity(std::span<const Vec2> positions, double sigma,
                                             double epsilon, const GridLayout* grid = nullptr);

/// Cosine similarity of load histories; zero when either vector is all zeros.
Eigen::MatrixXd cosine_load_similarity(const std::vector<std::vector<double>>& histories);

/// theta (1 - C) + (1 - theta) (1 - D), symmetrized with a zero diagonal.
Eigen::MatrixXd affinity(const Eigen::MatrixXd& c, const Eigen::MatrixXd& d, double theta);

/// M^-1/2 (M - A) M^-1/2 with M the degree matrix. Isolated vertices get a
/// zero row and column.
Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& a);

/// Index i in [b_min, b_max] maximizing lambda_{i+1} - lambda_i (1-based
/// eigenvalue numbering). Near-ties go to the smaller index.
int select_eigengap(const Eigen::VectorXd& ascending_eigenvalues, int b_min, int b_max);

/// k-means++ seeding followed by Lloyd iterations.
std::vector<int> kmeans(const Eigen::MatrixXd& rows, int k, std::mt19937_64& rng);

struct SpectralResult {
  ZonePartition partition;
  Eigen::VectorXd eigenvalues; // ascending, empty when clustering was bypassed
  int chosen_b = 1;
};

/// Normalized spectral clustering of the affinity graph. Fewer than four
/// vertices bypass clustering and form a single zone; isolated vertices each
/// form their own zone.
SpectralResult spectral_zones(const Eigen::MatrixXd& a, int b_min, int b_max, std::mt19937_64& rng);

} // namespace v2v
