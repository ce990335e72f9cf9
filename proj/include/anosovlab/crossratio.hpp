#pragma once

#include <array>
#include <utility>

#include "anosovlab/linalg.hpp"

namespace anosov {

// Extended real: finite value or the projective point at infinity.
template <typename Scalar>
class CrossRatio {
public:
    static CrossRatio finite(Scalar v) { return CrossRatio(v, false); }
    static CrossRatio infinity() { return CrossRatio(0, true); }

    bool is_infinite() const { return infinite_; }
    Scalar value() const {
        if (infinite_) throw DomainError("cross ratio is infinite");
        return value_;
    }

private:
    CrossRatio(Scalar v, bool inf) : value_(v), infinite_(inf) {}
    Scalar value_;
    bool infinite_;
};

inline constexpr double kPcrCoincidenceTol = 1e-10;
inline constexpr double kPcrDegenerateWedge = 1e-14;
inline constexpr double kGcrTransversality = 1e-9;
inline constexpr double kTripleRatioDegenerate = 1e-12;

template <typename Scalar>
Scalar wedge2(const Vec<Scalar>& a, const Vec<Scalar>& b) {
    return a(0) * b(1) - a(1) * b(0);
}

// Classical cross ratio of four points of RP^1 given as lines in R^2.
template <typename Scalar>
CrossRatio<Scalar> pcr(const Subspace<Scalar>& x1, const Subspace<Scalar>& x2, const Subspace<Scalar>& x3,
                       const Subspace<Scalar>& x4) {
    const std::array<const Subspace<Scalar>*, 4> xs{&x1, &x2, &x3, &x4};
    for (auto* x : xs)
        if (x->ambient() != 2 || x->rank() != 1) throw DimensionError("pcr needs four lines in R^2");
    for (int i = 0; i < 4; ++i) {
        int same = 1;
        for (int j = 0; j < 4; ++j)
            if (j != i && grassmann_distance(*xs[i], *xs[j]) < Scalar(kPcrCoincidenceTol)) ++same;
        if (same >= 3) throw PreconditionError("pcr: three of the four points coincide");
    }
    auto v = [&](int i) -> Vec<Scalar> { return xs[i]->basis().col(0); };
    const Scalar w13 = wedge2(v(0), v(2));
    const Scalar w12 = wedge2(v(0), v(1));
    const Scalar w42 = wedge2(v(3), v(1));
    const Scalar w43 = wedge2(v(3), v(2));
    if (std::abs(w12) < Scalar(kPcrDegenerateWedge) || std::abs(w43) < Scalar(kPcrDegenerateWedge))
        return CrossRatio<Scalar>::infinity();
    return CrossRatio<Scalar>::finite((w13 / w12) * (w42 / w43));
}

// Cross ratio of four subspaces (or lines) of the pencil lo < W_i < hi,
// computed in P(hi/lo).
template <typename Scalar>
CrossRatio<Scalar> pcr_quotient(const Subspace<Scalar>& lo, const Subspace<Scalar>& hi, const Subspace<Scalar>& w1,
                                const Subspace<Scalar>& w2, const Subspace<Scalar>& w3, const Subspace<Scalar>& w4) {
    if (hi.rank() != lo.rank() + 2) throw DimensionError("pcr_quotient needs rank(hi) = rank(lo) + 2");
    std::array<Subspace<Scalar>, 4> p;
    const std::array<const Subspace<Scalar>*, 4> ws{&w1, &w2, &w3, &w4};
    for (int i = 0; i < 4; ++i) {
        p[i] = quotient_project(*ws[i], lo, hi);
        if (p[i].rank() != 1) throw PreconditionError("pcr_quotient: entry does not project to a line of the pencil");
    }
    return pcr(p[0], p[1], p[2], p[3]);
}

template <typename Scalar>
Scalar wedge_pair(const Subspace<Scalar>& v, const Subspace<Scalar>& w) {
    return wedge_volume(std::vector<Subspace<Scalar>>{v, w});
}

// Grassmannian cross ratio of (k-plane, (d-k)-plane, (d-k)-plane, k-plane).
template <typename Scalar>
CrossRatio<Scalar> gcr(const Subspace<Scalar>& v1, const Subspace<Scalar>& w2, const Subspace<Scalar>& w3,
                       const Subspace<Scalar>& v4) {
    const Index d = v1.ambient();
    const Index k = v1.rank();
    if (v4.rank() != k || w2.rank() != d - k || w3.rank() != d - k)
        throw DimensionError("gcr needs ranks (k, d-k, d-k, k)");
    const std::array<std::pair<const Subspace<Scalar>*, const char*>, 2> vs{{{&v1, "V1"}, {&v4, "V4"}}};
    const std::array<std::pair<const Subspace<Scalar>*, const char*>, 2> ws{{{&w2, "W2"}, {&w3, "W3"}}};
    for (auto [v, vn] : vs)
        for (auto [w, wn] : ws)
            if (!(direct_sum_defect(std::vector<Subspace<Scalar>>{*v, *w}) > Scalar(kGcrTransversality)))
                throw DomainError(std::string("gcr: ") + vn + " not transverse to " + wn);
    const Scalar r = (wedge_pair(v1, w3) / wedge_pair(v1, w2)) * (wedge_pair(v4, w2) / wedge_pair(v4, w3));
    return CrossRatio<Scalar>::finite(r);
}

// Complete flag of R^3 as (line, plane).
template <typename Scalar>
struct Flag3 {
    Subspace<Scalar> line;
    Subspace<Scalar> plane;

    static Flag3 from(const Vec<Scalar>& l, const Vec<Scalar>& second) {
        Mat<Scalar> p(3, 2);
        p << l, second;
        Flag3 f{Subspace<Scalar>::span(l), Subspace<Scalar>::span(p)};
        PartialFlag<Scalar>({f.line, f.plane});
        return f;
    }
};

template <typename Scalar>
Scalar wedge_plane_line(const Subspace<Scalar>& plane, const Subspace<Scalar>& line) {
    return wedge_volume(std::vector<Subspace<Scalar>>{plane, line});
}

template <typename Scalar>
CrossRatio<Scalar> triple_ratio(const Flag3<Scalar>& a, const Flag3<Scalar>& b, const Flag3<Scalar>& c) {
    const std::array<Scalar, 6> w{
        wedge_plane_line(a.plane, b.line), wedge_plane_line(a.plane, c.line), wedge_plane_line(b.plane, c.line),
        wedge_plane_line(b.plane, a.line), wedge_plane_line(c.plane, a.line), wedge_plane_line(c.plane, b.line)};
    for (Scalar x : w)
        if (!(std::abs(x) > Scalar(kTripleRatioDegenerate))) throw DomainError("triple ratio: degenerate flag configuration");
    return CrossRatio<Scalar>::finite((w[0] / w[1]) * (w[2] / w[3]) * (w[4] / w[5]));
}

// Shear pair of (A, lB, C, lD); zero iff the configuration is harmonic.
template <typename Scalar>
std::pair<Scalar, Scalar> shear(const Flag3<Scalar>& a, const Subspace<Scalar>& lb, const Flag3<Scalar>& c,
                                const Subspace<Scalar>& ld) {
    const auto e = Subspace<Scalar>::whole(3);
    const auto p1 = pcr_quotient(a.line, e, a.plane, lb, ld, c.line);
    const auto p2 = pcr_quotient(c.line, e, c.plane, lb, ld, a.line);
    if (p1.is_infinite() || p2.is_infinite() || !(p1.value() < 0) || !(p2.value() < 0))
        throw DomainError("shear: a cross ratio is not negative");
    return {std::log(-p1.value()), std::log(-p2.value())};
}

}  // namespace anosov
