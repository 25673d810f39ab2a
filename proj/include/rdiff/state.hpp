#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "rdiff/errors.hpp"

namespace rdiff {

using StateVector = std::vector<double>;

inline void require_same_dim(std::size_t a, std::size_t b, const char* where) {
    if (a != b)
        throw DimensionMismatch(std::string(where) + ": dimension " + std::to_string(a) +
                                " vs " + std::to_string(b));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    require_same_dim(a.size(), b.size(), "dot");
    double s = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) s += a[m] * b[m];
    return s;
}

inline double squared_norm(std::span<const double> a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return s;
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    require_same_dim(a.size(), b.size(), "squared_distance");
    double s = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        const double d = a[m] - b[m];
        s += d * d;
    }
    return s;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

inline bool all_finite(std::span<const double> a) {
    for (double x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace rdiff
