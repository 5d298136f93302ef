#pragma once

#include <vector>

#include "goldilocks/cvec.hpp"
#include "goldilocks/numeric.hpp"

namespace gold {

// Piecewise-linear curve t_k -> points[k]; params strictly increasing.
struct SampledPath {
    std::vector<double> params;
    std::vector<CPoint> points;

    std::size_t size() const { return points.size(); }
    std::size_t resolution() const { return points.empty() ? 0 : points.size() - 1; }
    double span() const { return params.empty() ? 0.0 : params.back() - params.front(); }

    void validate() const {
        if (params.size() != points.size()) throw InvalidArgument("path params/points length mismatch");
        if (points.empty()) throw InvalidArgument("empty path");
        for (std::size_t k = 1; k < params.size(); ++k)
            if (!(params[k] > params[k - 1])) throw InvalidArgument("path params must be strictly increasing");
        for (std::size_t k = 1; k < points.size(); ++k)
            if (points[k].dim() != points[0].dim()) throw DimensionMismatch("path points differ in dimension");
    }

    // Straight segment a -> b with n+1 equally spaced samples on [0, 1].
    static SampledPath segment(const CPoint& a, const CPoint& b, std::size_t n) {
        if (n == 0) n = 1;
        SampledPath p;
        for (std::size_t k = 0; k <= n; ++k) {
            double t = static_cast<double>(k) / static_cast<double>(n);
            p.params.push_back(t);
            p.points.push_back(a * (1.0 - t) + b * t);
        }
        return p;
    }
};

}  // namespace gold
