#include <Eigen/Dense>

#include <limits>
#include <vector>

#include "signedmeso/error.hpp"
#include "signedmeso/partitioning.hpp"
#include "signedmeso/rng.hpp"

namespace signedmeso {

namespace {

struct Clustering {
  std::vector<std::uint32_t> labels;
  double inertia = std::numeric_limits<double>::infinity();
};

double squared_distance(const Eigen::MatrixXd& points, Eigen::Index i, const Eigen::MatrixXd& centers,
                        Eigen::Index c) {
  return (points.row(i) - centers.row(c)).squaredNorm();
}

// k-means++ seeding followed by Lloyd iterations.
Clustering kmeans(const Eigen::MatrixXd& points, std::size_t k, rng::Engine& gen) {
  const Eigen::Index n = points.rows();
  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd centers(kk, points.cols());

  centers.row(0) = points.row(static_cast<Eigen::Index>(rng::uniform_index(gen, n)));
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (Eigen::Index c = 1; c < kk; ++c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(points, i, centers, c - 1));
      total += nearest[i];
    }
    Eigen::Index pick = n - 1;
    if (total > 0.0) {
      double target = rng::uniform01(gen) * total;
      for (Eigen::Index i = 0; i < n; ++i) {
        target -= nearest[i];
        if (target < 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng::uniform_index(gen, n));
    }
    centers.row(c) = points.row(pick);
  }

  Clustering result;
  result.labels.assign(n, 0);
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = iter == 0;
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::uint32_t best = 0;
      double best_d = squared_distance(points, i, centers, 0);
      for (Eigen::Index c = 1; c < kk; ++c) {
        const double d = squared_distance(points, i, centers, c);
        if (d < best_d) {
          best_d = d;
          best = static_cast<std::uint32_t>(c);
        }
      }
      if (result.labels[i] != best) changed = true;
      result.labels[i] = best;
      inertia += best_d;
    }
    result.inertia = inertia;
    if (!changed) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(kk, points.cols());
    std::vector<std::size_t> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(result.labels[i]) += points.row(i);
      ++counts[result.labels[i]];
    }
    for (Eigen::Index c = 0; c < kk; ++c) {
      if (counts[c] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[c]);
        continue;
      }
      // Empty cluster: reseed at the point farthest from its center.
      Eigen::Index far = 0;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d = squared_distance(points, i, centers, result.labels[i]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      centers.row(c) = points.row(far);
    }
  }
  return result;
}

}  // namespace

Partition spectral_signed(const SignedGraph& g, const SpectralOptions& options) {
  const std::size_t n = g.node_count();
  if (options.k < 2) throw ValidationError("spectral: k must be at least 2");
  if (options.k > n) throw ValidationError("spectral: k exceeds node count");

  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(nn, nn);
  for (const Edge& e : g.edges()) {
    const double a = value(e.sign);
    laplacian(e.u, e.v) -= a;
    laplacian(e.v, e.u) -= a;
    laplacian(e.u, e.u) += 1.0;
    laplacian(e.v, e.v) += 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success) throw Error("spectral: eigensolver failed");
  const Eigen::MatrixXd embedding = solver.eigenvectors().leftCols(static_cast<Eigen::Index>(options.k));

  Clustering best;
  for (unsigned r = 0; r < std::max(1u, options.kmeans_restarts); ++r) {
    rng::Engine gen = rng::stream(options.seed, "spectral.kmeans", {r});
    Clustering c = kmeans(embedding, options.k, gen);
    if (c.inertia < best.inertia - 1e-12) best = std::move(c);
  }
  return Partition::compact(std::span<const std::uint32_t>(best.labels));
}

}  // namespace signedmeso
