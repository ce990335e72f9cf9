#pragma once

#include <cmath>
#include <random>

#include "anosovlab/linalg.hpp"

namespace testing {

using anosov::Index;
using anosov::Matd;
using anosov::Subspaced;
using anosov::Vecd;

inline double rel_diff(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0 ? 0 : std::abs(a - b) / s;
}

inline Matd gaussian(std::mt19937_64& rng, Index r, Index c) {
    std::normal_distribution<double> n;
    Matd m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) m(i, j) = n(rng);
    return m;
}

inline Subspaced random_subspace(std::mt19937_64& rng, Index d, Index k) {
    return Subspaced::span(gaussian(rng, d, k));
}

inline Subspaced line2(double angle) {
    Vecd v(2);
    v << std::cos(angle), std::sin(angle);
    return Subspaced::span(v);
}

// Random matrix of determinant one with condition number kept moderate.
inline Matd random_sl(std::mt19937_64& rng, Index d) {
    for (;;) {
        Matd m = Matd::Identity(d, d) + 0.5 * gaussian(rng, d, d);
        const double det = m.determinant();
        if (std::abs(det) < 0.1) continue;
        if (det < 0) m.col(0) = -m.col(0);
        return m / std::pow(std::abs(det), 1.0 / double(d));
    }
}

}  // namespace testing
