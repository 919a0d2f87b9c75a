#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/rng.hpp"

namespace citenet {

// Row-major dense matrix of observations (rows) by features (columns).
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

    double* row(std::size_t r) { return values.data() + r * cols; }
    const double* row(std::size_t r) const { return values.data() + r * cols; }
};

struct KMeansResult {
    std::vector<std::uint32_t> assignment;
    double inertia = 0.0;
};

namespace detail {

inline double sq_distance(const double* a, const double* b, std::size_t dim) {
    double d = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        double diff = a[i] - b[i];
        d += diff * diff;
    }
    return d;
}

// k-means++ seeding: first center uniform, the rest sampled proportionally to
// squared distance from the nearest chosen center.
inline std::vector<std::size_t> kmeanspp_centers(const DenseMatrix& points, std::uint32_t k,
                                                 Rng& rng) {
    std::vector<std::size_t> centers;
    centers.reserve(k);
    centers.push_back(static_cast<std::size_t>(rng.next_below(points.rows)));

    std::vector<double> best_sq(points.rows, std::numeric_limits<double>::infinity());
    std::vector<bool> chosen(points.rows, false);
    chosen[centers[0]] = true;
    while (centers.size() < k) {
        const double* last = points.row(centers.back());
        double total = 0.0;
        for (std::size_t i = 0; i < points.rows; ++i) {
            double d = sq_distance(points.row(i), last, points.cols);
            if (d < best_sq[i]) best_sq[i] = d;
            if (!chosen[i]) total += best_sq[i];
        }
        std::size_t next = points.rows;
        if (total > 0.0) {
            double pick = rng.next_double() * total;
            double cumulative = 0.0;
            for (std::size_t i = 0; i < points.rows; ++i) {
                if (chosen[i]) continue;
                cumulative += best_sq[i];
                if (pick < cumulative) {
                    next = i;
                    break;
                }
            }
        }
        if (next == points.rows) {
            // all remaining points coincide with a center; take the first free one
            for (std::size_t i = 0; i < points.rows; ++i) {
                if (!chosen[i]) {
                    next = i;
                    break;
                }
            }
        }
        chosen[next] = true;
        centers.push_back(next);
    }
    return centers;
}

inline KMeansResult lloyd(const DenseMatrix& points, std::uint32_t k, Rng& rng, double rel_tol,
                          std::uint32_t max_iters) {
    const std::size_t n = points.rows;
    const std::size_t dim = points.cols;

    auto seeds = kmeanspp_centers(points, k, rng);
    DenseMatrix centers(k, dim);
    for (std::uint32_t c = 0; c < k; ++c) {
        const double* src = points.row(seeds[c]);
        for (std::size_t j = 0; j < dim; ++j) centers.row(c)[j] = src[j];
    }

    KMeansResult result;
    result.assignment.assign(n, 0);
    double prev_inertia = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> counts(k, 0);
    for (std::uint32_t iter = 0; iter < max_iters; ++iter) {
        // assignment step; ties go to the lowest center index
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t best = 0;
            double best_d = sq_distance(points.row(i), centers.row(0), dim);
            for (std::uint32_t c = 1; c < k; ++c) {
                double d = sq_distance(points.row(i), centers.row(c), dim);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            result.assignment[i] = best;
            inertia += best_d;
        }

        // update step
        std::fill(centers.values.begin(), centers.values.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t c = result.assignment[i];
            ++counts[c];
            const double* p = points.row(i);
            double* ctr = centers.row(c);
            for (std::size_t j = 0; j < dim; ++j) ctr[j] += p[j];
        }
        for (std::uint32_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            double inv = 1.0 / static_cast<double>(counts[c]);
            for (std::size_t j = 0; j < dim; ++j) centers.row(c)[j] *= inv;
        }
        // re-seed empty clusters with the point farthest from its center
        for (std::uint32_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            std::size_t farthest = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                double d = sq_distance(points.row(i), centers.row(result.assignment[i]), dim);
                if (d > far_d) {
                    far_d = d;
                    farthest = i;
                }
            }
            const double* p = points.row(farthest);
            for (std::size_t j = 0; j < dim; ++j) centers.row(c)[j] = p[j];
        }

        result.inertia = inertia;
        if (inertia == 0.0) break;
        if (!std::isinf(prev_inertia) && prev_inertia - inertia <= rel_tol * prev_inertia) break;
        prev_inertia = inertia;
    }
    return result;
}

} // namespace detail

// Seeded k-means: k-means++ initialization followed by Lloyd iterations until
// the inertia fixed point; the best of `restarts` independent runs wins.
// Deterministic for a fixed seed.
inline KMeansResult kmeans(const DenseMatrix& points, std::uint32_t k, std::uint64_t seed,
                           std::uint32_t restarts = 1, double rel_tol = 1e-9,
                           std::uint32_t max_iters = 200) {
    if (k < 1) throw input_error("kmeans: k must be >= 1");
    if (k > points.rows) {
        throw input_error("kmeans: k=" + std::to_string(k) + " exceeds point count " +
                          std::to_string(points.rows));
    }
    Rng root(seed);
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (std::uint32_t r = 0; r < std::max<std::uint32_t>(1, restarts); ++r) {
        Rng stream = root.fork(r);
        KMeansResult candidate = detail::lloyd(points, k, stream, rel_tol, max_iters);
        if (candidate.inertia < best.inertia) best = std::move(candidate);
        if (best.inertia == 0.0) break;
    }
    return best;
}

} // namespace citenet
