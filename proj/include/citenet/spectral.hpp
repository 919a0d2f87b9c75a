#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"
#include "citenet/kmeans.hpp"
#include "citenet/partition.hpp"
#include "citenet/rng.hpp"

namespace citenet {

struct SpectralConfig {
    std::uint64_t seed = 0;
    node_id size_cap = 50000;       // refuse larger graphs outright
    double eig_tolerance = 1e-8;    // residual bound per eigenpair
    std::uint32_t eig_max_iters = 10000;
    std::uint32_t kmeans_restarts = 100;
    double kmeans_rel_tol = 1e-9;
};

namespace detail {

// y = L x for the symmetric normalized Laplacian L = I - D^{-1/2} A D^{-1/2},
// expressed through the scaled adjacency product. inv_sqrt_deg holds
// 1/sqrt(strength).
class NormalizedLaplacian {
public:
    explicit NormalizedLaplacian(const Graph& g) : g_(g), inv_sqrt_deg_(g.n()) {
        for (node_id u = 0; u < g.n(); ++u) {
            double d = g.strength(u);
            if (d <= 0.0) {
                throw input_error("spectral_cluster: node " + std::to_string(u) +
                                  " has zero degree");
            }
            inv_sqrt_deg_[u] = 1.0 / std::sqrt(d);
        }
    }

    std::size_t n() const { return g_.n(); }

    void multiply(const std::vector<double>& x, std::vector<double>& y) const {
        for (node_id u = 0; u < g_.n(); ++u) {
            double acc = 2.0 * g_.self_weight(u) * inv_sqrt_deg_[u] * x[u] * inv_sqrt_deg_[u];
            auto nbrs = g_.neighbors(u);
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                node_id v = nbrs[i];
                acc += g_.weight_at(u, i) * inv_sqrt_deg_[v] * x[v];
            }
            y[u] = x[u] - inv_sqrt_deg_[u] * acc;
        }
    }

private:
    const Graph& g_;
    std::vector<double> inv_sqrt_deg_;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Smallest-k eigenpairs of L via power iteration with deflation on the
// complement matrix 2I - L (eigenvalues of L lie in [0, 2]). Each converged
// eigenvector is deflated out of later iterations.
struct EigenPairs {
    DenseMatrix vectors;            // n x k, column j = j-th eigenvector
    std::vector<double> values;     // ascending eigenvalues of L
    std::vector<double> residuals;  // ||L v - lambda v|| per pair
};

inline EigenPairs smallest_eigenpairs(const NormalizedLaplacian& lap, std::uint32_t k,
                                      double tolerance, std::uint32_t max_iters, Rng& rng) {
    const std::size_t n = lap.n();
    EigenPairs out;
    out.vectors = DenseMatrix(n, k);
    out.values.resize(k);
    out.residuals.resize(k);

    std::vector<std::vector<double>> basis;
    std::vector<double> x(n), y(n);
    for (std::uint32_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) x[i] = rng.next_double() - 0.5;

        double residual = 0.0;
        double lambda_c = 0.0;
        bool converged = false;
        for (std::uint32_t iter = 0; iter < max_iters; ++iter) {
            // project out previously found eigenvectors
            for (const auto& v : basis) {
                double c = dot(x, v);
                for (std::size_t i = 0; i < n; ++i) x[i] -= c * v[i];
            }
            double nx = norm(x);
            if (nx == 0.0) {
                // restart from a fresh direction if we collapsed onto the basis
                for (std::size_t i = 0; i < n; ++i) x[i] = rng.next_double() - 0.5;
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) x[i] /= nx;

            lap.multiply(x, y);
            for (std::size_t i = 0; i < n; ++i) y[i] = 2.0 * x[i] - y[i]; // (2I - L) x
            lambda_c = dot(x, y);
            residual = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double r = y[i] - lambda_c * x[i];
                residual += r * r;
            }
            residual = std::sqrt(residual);
            if (residual <= tolerance) {
                converged = true;
                break;
            }
            x.swap(y);
        }
        if (!converged) {
            throw refusal_error("spectral_cluster: eigensolver failed to converge for pair " +
                                std::to_string(j) + " (residual " + std::to_string(residual) +
                                ")");
        }
        out.values[j] = 2.0 - lambda_c;
        out.residuals[j] = residual;
        for (std::size_t i = 0; i < n; ++i) out.vectors.values[i * k + j] = x[i];
        basis.push_back(x);
    }
    return out;
}

inline bool is_connected(const Graph& g) {
    if (g.n() == 0) return false;
    std::vector<bool> seen(g.n(), false);
    std::vector<node_id> stack{0};
    seen[0] = true;
    std::uint64_t count = 0;
    while (!stack.empty()) {
        node_id u = stack.back();
        stack.pop_back();
        ++count;
        for (node_id v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return count == g.n();
}

} // namespace detail

// Spectral clustering: embeds nodes with the k smallest eigenvectors of the
// symmetric normalized Laplacian, row-normalizes the embedding, and clusters
// the rows with seeded k-means. Refuses graphs over the size cap — at that
// scale the method is better replaced by the multilevel optimizers.
inline Partition spectral_cluster(const Graph& g, std::uint32_t k,
                                  const SpectralConfig& cfg = SpectralConfig()) {
    if (g.n() > cfg.size_cap) {
        throw refusal_error("spectral_cluster: graph has " + std::to_string(g.n()) +
                            " nodes, exceeding the size cap of " + std::to_string(cfg.size_cap));
    }
    if (k < 2) throw input_error("spectral_cluster: k must be >= 2");
    if (k > g.n()) {
        throw input_error("spectral_cluster: k=" + std::to_string(k) + " exceeds node count");
    }
    if (!detail::is_connected(g)) {
        throw input_error("spectral_cluster: graph must be connected");
    }

    detail::NormalizedLaplacian lap(g);
    Rng rng(cfg.seed);
    auto pairs = detail::smallest_eigenpairs(lap, k, cfg.eig_tolerance, cfg.eig_max_iters, rng);

    DenseMatrix embedding = std::move(pairs.vectors);
    for (std::size_t i = 0; i < embedding.rows; ++i) {
        double* row = embedding.row(i);
        double len = 0.0;
        for (std::size_t j = 0; j < k; ++j) len += row[j] * row[j];
        len = std::sqrt(len);
        if (len > 0.0) {
            for (std::size_t j = 0; j < k; ++j) row[j] /= len;
        }
    }

    auto clusters = kmeans(embedding, k, rng.next_u64(), cfg.kmeans_restarts, cfg.kmeans_rel_tol);
    return Partition::normalized(clusters.assignment);
}

} // namespace citenet
