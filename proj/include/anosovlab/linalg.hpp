#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "anosovlab/errors.hpp"

namespace anosov {

using Index = Eigen::Index;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMat = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

// Rank threshold for numerically spanned subspaces (relative to the largest
// singular value of the spanning set).
inline constexpr double kSpanRankTol = 1e-10;
// Default cutoff on 1 - cos(angle) used by intersect.
inline constexpr double kIntersectTol = 1e-18;
inline constexpr double kContainmentTol = 1e-9;

// Linear subspace of R^d stored by an orthonormal basis (d x k, k may be 0).
template <typename Scalar>
class Subspace {
public:
    using MatrixType = Mat<Scalar>;

    Subspace() = default;

    static Subspace zero(Index d) { return Subspace(MatrixType(d, 0), d); }
    static Subspace whole(Index d) { return Subspace(MatrixType::Identity(d, d), d); }

    // Span of linearly independent columns; Householder QR with R_ii > 0.
    static Subspace span(const MatrixType& columns) {
        const Index d = columns.rows();
        const Index k = columns.cols();
        if (k > d) throw DimensionError("more spanning vectors than the ambient dimension");
        if (k == 0) return zero(d);
        if (!columns.allFinite()) throw DimensionError("non-finite spanning vectors");
        Eigen::HouseholderQR<MatrixType> qr(columns);
        MatrixType q = qr.householderQ() * MatrixType::Identity(d, k);
        const auto& r = qr.matrixQR();
        Scalar rmax = 0;
        for (Index i = 0; i < k; ++i) rmax = std::max(rmax, std::abs(r(i, i)));
        for (Index i = 0; i < k; ++i) {
            if (!(std::abs(r(i, i)) > Scalar(kSpanRankTol) * rmax))
                throw DimensionError("spanning vectors are linearly dependent");
            if (r(i, i) < 0) q.col(i) = -q.col(i);
        }
        return Subspace(std::move(q), d);
    }

    // Span with numerical rank decided from singular values.
    static Subspace span_numerical(const MatrixType& columns, Scalar rel_tol = Scalar(kSpanRankTol)) {
        const Index d = columns.rows();
        if (columns.cols() == 0) return zero(d);
        Eigen::JacobiSVD<MatrixType> svd(columns, Eigen::ComputeThinU);
        const auto& s = svd.singularValues();
        Index r = 0;
        while (r < s.size() && s(r) > rel_tol * s(0) && s(r) > std::numeric_limits<Scalar>::min()) ++r;
        return span(svd.matrixU().leftCols(r));
    }

    Index ambient() const { return ambient_; }
    Index rank() const { return basis_.cols(); }
    const MatrixType& basis() const { return basis_; }

    MatrixType projector() const { return basis_ * basis_.transpose(); }

    Subspace complement() const {
        if (rank() == 0) return whole(ambient_);
        Eigen::HouseholderQR<MatrixType> qr(basis_);
        MatrixType full = qr.householderQ() * MatrixType::Identity(ambient_, ambient_);
        return span(full.rightCols(ambient_ - rank()));
    }

    // Image A V of the subspace under an invertible linear map.
    Subspace image(const MatrixType& a) const {
        if (rank() == 0) return zero(ambient_);
        return span(a * basis_);
    }

private:
    Subspace(MatrixType basis, Index d) : basis_(std::move(basis)), ambient_(d) {}

    MatrixType basis_;
    Index ambient_ = 0;
};

// Distance from V to its projection onto W (Frobenius norm); 0 iff V is in W.
template <typename Scalar>
Scalar containment_residual(const Subspace<Scalar>& v, const Subspace<Scalar>& w) {
    if (v.ambient() != w.ambient()) throw DimensionError("ambient dimensions differ");
    if (v.rank() == 0) return 0;
    if (w.rank() == 0) return v.basis().norm();
    return (v.basis() - w.basis() * (w.basis().transpose() * v.basis())).norm();
}

template <typename Scalar>
bool contained_in(const Subspace<Scalar>& v, const Subspace<Scalar>& w, Scalar tol = Scalar(kContainmentTol)) {
    return containment_residual(v, w) <= tol;
}

// Nested subspaces with strictly increasing ranks.
template <typename Scalar>
class PartialFlag {
public:
    PartialFlag() = default;
    explicit PartialFlag(std::vector<Subspace<Scalar>> parts, Scalar tol = Scalar(kContainmentTol))
        : parts_(std::move(parts)) {
        for (std::size_t i = 1; i < parts_.size(); ++i) {
            if (parts_[i].ambient() != parts_[0].ambient()) throw DimensionError("flag parts live in different spaces");
            if (parts_[i].rank() <= parts_[i - 1].rank()) throw DimensionError("flag ranks must increase strictly");
            const Scalar res = containment_residual(parts_[i - 1], parts_[i]);
            if (res > tol) {
                std::ostringstream os;
                os << "flag part of rank " << parts_[i - 1].rank() << " not contained in rank "
                   << parts_[i].rank() << " (residual " << res << ")";
                throw PreconditionError(os.str());
            }
        }
    }

    const std::vector<Subspace<Scalar>>& parts() const { return parts_; }
    std::vector<Index> dims() const {
        std::vector<Index> out;
        for (const auto& p : parts_) out.push_back(p.rank());
        return out;
    }
    bool has(Index rank) const {
        return std::any_of(parts_.begin(), parts_.end(), [&](const auto& p) { return p.rank() == rank; });
    }
    const Subspace<Scalar>& operator[](Index rank) const {
        for (const auto& p : parts_)
            if (p.rank() == rank) return p;
        throw DimensionError("flag has no part of rank " + std::to_string(rank));
    }

private:
    std::vector<Subspace<Scalar>> parts_;
};

template <typename Scalar>
Mat<Scalar> concatenate(const std::vector<Subspace<Scalar>>& parts, Index& total_rank) {
    if (parts.empty()) throw DimensionError("no subspaces given");
    const Index d = parts.front().ambient();
    total_rank = 0;
    for (const auto& p : parts) {
        if (p.ambient() != d) throw DimensionError("ambient dimensions differ");
        total_rank += p.rank();
    }
    Mat<Scalar> m(d, total_rank);
    Index c = 0;
    for (const auto& p : parts) {
        m.middleCols(c, p.rank()) = p.basis();
        c += p.rank();
    }
    return m;
}

// Determinant of the concatenated orthonormal bases; only meaningful in ratios.
template <typename Scalar>
Scalar wedge_volume(const std::vector<Subspace<Scalar>>& parts) {
    Index s = 0;
    Mat<Scalar> m = concatenate(parts, s);
    if (s != m.rows()) throw DimensionError("wedge_volume needs ranks summing to the ambient dimension");
    return m.fullPivLu().determinant();
}

// Smallest singular value of the concatenated orthonormal bases.
template <typename Scalar>
Scalar direct_sum_defect(const std::vector<Subspace<Scalar>>& parts) {
    Index s = 0;
    Mat<Scalar> m = concatenate(parts, s);
    if (s > m.rows()) throw DimensionError("ranks sum beyond the ambient dimension");
    if (s == 0) return Scalar(1);
    Eigen::JacobiSVD<Mat<Scalar>> svd(m);
    return std::min(Scalar(1), svd.singularValues()(s - 1));
}

template <typename Scalar>
struct PrincipalAngles {
    Vec<Scalar> angles;   // ascending
    Mat<Scalar> x_vectors; // principal vectors in X, one per angle
    Mat<Scalar> y_vectors;
};

// Principal angles with sines resolved separately for small angles.
template <typename Scalar>
PrincipalAngles<Scalar> principal_angles(const Subspace<Scalar>& x, const Subspace<Scalar>& y) {
    if (x.ambient() != y.ambient()) throw DimensionError("ambient dimensions differ");
    if (x.rank() < y.rank()) {
        auto swapped = principal_angles(y, x);
        std::swap(swapped.x_vectors, swapped.y_vectors);
        return swapped;
    }
    const Index m = y.rank();
    PrincipalAngles<Scalar> out;
    out.angles.resize(m);
    out.x_vectors.resize(x.ambient(), m);
    out.y_vectors.resize(x.ambient(), m);
    if (m == 0) return out;

    const Mat<Scalar>& X = x.basis();
    const Mat<Scalar>& Y = y.basis();
    Eigen::JacobiSVD<Mat<Scalar>> csvd(X.transpose() * Y, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vec<Scalar> cosines = csvd.singularValues().cwiseMin(Scalar(1));
    Mat<Scalar> yp = Y * csvd.matrixV();

    Index small = 0;
    while (small < m && cosines(small) * cosines(small) >= Scalar(0.5)) ++small;

    if (small > 0) {
        Mat<Scalar> yb = yp.leftCols(small);
        Mat<Scalar> r = yb - X * (X.transpose() * yb);
        Eigen::JacobiSVD<Mat<Scalar>> ssvd(r, Eigen::ComputeThinV);
        // Ascending sines: reverse the singular value order.
        for (Index i = 0; i < small; ++i) {
            const Index j = small - 1 - i;
            out.angles(i) = std::asin(std::min(Scalar(1), ssvd.singularValues()(j)));
            out.y_vectors.col(i) = yb * ssvd.matrixV().col(j);
        }
    }
    for (Index i = small; i < m; ++i) {
        out.angles(i) = std::acos(cosines(i));
        out.y_vectors.col(i) = yp.col(i);
    }
    for (Index i = 0; i < m; ++i) {
        Vec<Scalar> px = X * (X.transpose() * out.y_vectors.col(i));
        const Scalar n = px.norm();
        out.x_vectors.col(i) = n > Scalar(0) ? Vec<Scalar>(px / n) : px;
    }
    return out;
}

// Sine of the largest principal angle between equal-rank subspaces.
template <typename Scalar>
Scalar grassmann_distance(const Subspace<Scalar>& x, const Subspace<Scalar>& y) {
    if (x.rank() != y.rank()) throw DimensionError("grassmann_distance needs equal ranks");
    if (x.rank() == 0) return Scalar(0);
    auto pa = principal_angles(x, y);
    return std::sin(pa.angles(pa.angles.size() - 1));
}

// Smallest principal angle, in radians.
template <typename Scalar>
Scalar min_angle(const Subspace<Scalar>& x, const Subspace<Scalar>& y) {
    if (x.rank() == 0 || y.rank() == 0) throw DimensionError("min_angle of the zero subspace");
    return principal_angles(x, y).angles(0);
}

// Numerical intersection: principal directions with 1 - cos(angle) <= tol.
template <typename Scalar>
Subspace<Scalar> intersect(const Subspace<Scalar>& v, const Subspace<Scalar>& w, Scalar tol = Scalar(kIntersectTol)) {
    if (v.ambient() != w.ambient()) throw DimensionError("ambient dimensions differ");
    if (v.rank() == 0 || w.rank() == 0) return Subspace<Scalar>::zero(v.ambient());
    auto pa = principal_angles(v, w);
    Index r = 0;
    for (Index i = 0; i < pa.angles.size(); ++i) {
        const Scalar s = std::sin(pa.angles(i) / 2);
        const Scalar gap = 2 * s * s;  // 1 - cos, without cancellation
        if (gap > tol / 4 && gap < 4 * tol) {
            std::vector<double> spectrum(pa.angles.data(), pa.angles.data() + pa.angles.size());
            std::ostringstream os;
            os << "ill-conditioned intersection: principal angle " << double(pa.angles(i))
               << " is within the tolerance band";
            throw AmbiguityError(os.str(), std::move(spectrum));
        }
        if (gap <= tol) r = i + 1;
    }
    if (r == 0) return Subspace<Scalar>::zero(v.ambient());
    return Subspace<Scalar>::span(pa.x_vectors.leftCols(r));
}

// Orthonormal frame of the orthogonal complement of lo inside hi.
template <typename Scalar>
Mat<Scalar> quotient_frame(const Subspace<Scalar>& lo, const Subspace<Scalar>& hi) {
    const Scalar res = containment_residual(lo, hi);
    if (res > Scalar(kContainmentTol)) {
        std::ostringstream os;
        os << "quotient: lower space not contained in upper space (residual " << double(res) << ")";
        throw PreconditionError(os.str());
    }
    const Index h = hi.rank();
    const Index l = lo.rank();
    if (l == 0) return hi.basis();
    Mat<Scalar> coords = hi.basis().transpose() * lo.basis();
    Eigen::HouseholderQR<Mat<Scalar>> qr(coords);
    Mat<Scalar> full = qr.householderQ() * Mat<Scalar>::Identity(h, h);
    return hi.basis() * full.rightCols(h - l);
}

// (V + lo)/lo inside hi/lo, in the coordinates of quotient_frame(lo, hi).
template <typename Scalar>
Subspace<Scalar> quotient_project(const Subspace<Scalar>& v, const Subspace<Scalar>& lo, const Subspace<Scalar>& hi) {
    const Scalar res = containment_residual(v, hi);
    if (res > Scalar(kContainmentTol)) {
        std::ostringstream os;
        os << "quotient: subspace not contained in upper space (residual " << double(res) << ")";
        throw PreconditionError(os.str());
    }
    Mat<Scalar> frame = quotient_frame(lo, hi);
    if (v.rank() == 0) return Subspace<Scalar>::zero(frame.cols());
    Mat<Scalar> coords = frame.transpose() * v.basis();
    Eigen::JacobiSVD<Mat<Scalar>> svd(coords, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    Index r = 0;
    while (r < s.size() && s(r) > Scalar(kSpanRankTol)) ++r;
    if (r == 0) throw PreconditionError("quotient: subspace lies inside the lower space");
    return Subspace<Scalar>::span(svd.matrixU().leftCols(r));
}

template <typename Scalar>
struct SvdResult {
    Mat<Scalar> u;
    Vec<Scalar> sigma;  // descending
    Mat<Scalar> v;
};

template <typename Scalar>
SvdResult<Scalar> svd(const Mat<Scalar>& m) {
    if (!m.allFinite()) throw NumericError("svd of a matrix with non-finite entries");
    Eigen::JacobiSVD<Mat<Scalar>> s(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {s.matrixU(), s.singularValues(), s.matrixV()};
}

namespace detail {

// Complex Givens pair (c, s) with [c s; -conj(s) c] [f; g] = [r; 0].
template <typename Scalar>
void givens(const std::complex<Scalar>& f, const std::complex<Scalar>& g, Scalar& c, std::complex<Scalar>& s) {
    const Scalar af = std::abs(f);
    const Scalar ag = std::abs(g);
    if (ag == Scalar(0)) {
        c = 1;
        s = 0;
    } else if (af == Scalar(0)) {
        c = 0;
        s = std::conj(g) / ag;
    } else {
        const Scalar n = std::hypot(af, ag);
        c = af / n;
        s = (f / af) * std::conj(g) / n;
    }
}

// Swap diagonal entries k, k+1 of upper triangular t, updating Schur vectors q.
template <typename Scalar>
void swap_schur(CMat<Scalar>& t, CMat<Scalar>& q, Index k) {
    using C = std::complex<Scalar>;
    const Index n = t.rows();
    const C t11 = t(k, k);
    const C t22 = t(k + 1, k + 1);
    Scalar c;
    C s;
    givens(t(k, k + 1), t22 - t11, c, s);
    for (Index j = k + 2; j < n; ++j) {
        const C x = t(k, j), y = t(k + 1, j);
        t(k, j) = c * x + s * y;
        t(k + 1, j) = c * y - std::conj(s) * x;
    }
    const C sc = std::conj(s);
    for (Index i = 0; i < k; ++i) {
        const C x = t(i, k), y = t(i, k + 1);
        t(i, k) = c * x + sc * y;
        t(i, k + 1) = c * y - std::conj(sc) * x;
    }
    t(k, k) = t22;
    t(k + 1, k + 1) = t11;
    for (Index i = 0; i < n; ++i) {
        const C x = q(i, k), y = q(i, k + 1);
        q(i, k) = c * x + sc * y;
        q(i, k + 1) = c * y - std::conj(sc) * x;
    }
}

}  // namespace detail

// Complex Schur form reordered so diagonal moduli are monotone.
template <typename Scalar>
struct SortedSchur {
    CMat<Scalar> t;
    CMat<Scalar> q;

    SortedSchur(const Mat<Scalar>& m, bool descending) {
        if (!m.allFinite()) throw NumericError("eigenvalues of a matrix with non-finite entries");
        Eigen::ComplexSchur<CMat<Scalar>> schur(m.template cast<std::complex<Scalar>>());
        if (schur.info() != Eigen::Success) {
            std::ostringstream os;
            os << "complex Schur iteration did not converge (max iterations "
               << schur.getMaxIterations() << ", dimension " << m.rows() << ")";
            throw NumericError(os.str());
        }
        t = schur.matrixT();
        q = schur.matrixU();
        const Index n = t.rows();
        auto better = [&](Index a, Index b) {
            return descending ? std::abs(t(a, a)) > std::abs(t(b, b)) : std::abs(t(a, a)) < std::abs(t(b, b));
        };
        for (Index i = 0; i < n; ++i) {
            Index best = i;
            for (Index j = i + 1; j < n; ++j)
                if (better(j, best)) best = j;
            for (Index j = best; j > i; --j) detail::swap_schur(t, q, j - 1);
        }
    }

    std::complex<Scalar> eigenvalue(Index i) const { return t(i, i); }

    // Real orthonormal basis of the span of the first k Schur vectors, which
    // must be closed under complex conjugation.
    Mat<Scalar> real_leading_basis(Index k) const {
        const Index d = q.rows();
        if (k == 0) return Mat<Scalar>(d, 0);
        Mat<Scalar> both(d, 2 * k);
        both.leftCols(k) = q.leftCols(k).real();
        both.rightCols(k) = q.leftCols(k).imag();
        Eigen::JacobiSVD<Mat<Scalar>> s(both, Eigen::ComputeThinU);
        return s.matrixU().leftCols(k);
    }
};

template <typename Scalar>
Scalar invariance_residual(const Mat<Scalar>& m, const Mat<Scalar>& basis) {
    if (basis.cols() == 0) return 0;
    Mat<Scalar> mb = m * basis;
    return (mb - basis * (basis.transpose() * mb)).norm();
}

inline constexpr double kModulusTieTol = 1e-8;

template <typename Scalar>
struct EigenCluster {
    Scalar modulus;
    Index first;  // position in the sorted eigenvalue list
    Index count;
    Subspace<Scalar> basis;  // sum of the generalized eigenspaces
};

template <typename Scalar>
struct EigenSpectrum {
    std::vector<std::complex<Scalar>> values;  // descending modulus, with multiplicity
    std::vector<std::pair<std::complex<Scalar>, int>> distinct;
    std::vector<EigenCluster<Scalar>> clusters;
};

// Eigenvalues sorted by descending modulus, and real invariant bases of each
// modulus cluster.
template <typename Scalar>
EigenSpectrum<Scalar> eig_by_modulus(const Mat<Scalar>& m) {
    const Index d = m.rows();
    if (m.cols() != d) throw DimensionError("eig_by_modulus needs a square matrix");
    SortedSchur<Scalar> down(m, true);
    EigenSpectrum<Scalar> out;
    for (Index i = 0; i < d; ++i) out.values.push_back(down.eigenvalue(i));

    for (Index i = 0; i < d;) {
        Index j = i + 1;
        while (j < d && std::abs(out.values[j] - out.values[i]) <= Scalar(1e-5) * std::max(Scalar(1), std::abs(out.values[i]))) ++j;
        std::complex<Scalar> mean = 0;
        for (Index a = i; a < j; ++a) mean += out.values[a];
        out.distinct.emplace_back(mean / Scalar(j - i), int(j - i));
        i = j;
    }

    std::vector<std::pair<Index, Index>> ranges;
    for (Index i = 0; i < d;) {
        Index j = i + 1;
        while (j < d && std::abs(out.values[j - 1]) <= std::abs(out.values[j]) * (1 + Scalar(kModulusTieTol))) ++j;
        ranges.emplace_back(i, j);
        i = j;
    }

    const Scalar scale = std::max(m.norm(), std::numeric_limits<Scalar>::min());
    if (ranges.size() == 1) {
        out.clusters.push_back({std::abs(out.values[0]), 0, d, Subspace<Scalar>::whole(d)});
        return out;
    }
    SortedSchur<Scalar> up(m, false);
    for (auto [a, b] : ranges) {
        Subspace<Scalar> top = Subspace<Scalar>::span(down.real_leading_basis(b));
        Subspace<Scalar> bottom = Subspace<Scalar>::span(up.real_leading_basis(d - a));
        Subspace<Scalar> cluster;
        if (a == 0) {
            cluster = top;
        } else if (b == d) {
            cluster = bottom;
        } else {
            auto pa = principal_angles(top, bottom);
            cluster = Subspace<Scalar>::span(pa.x_vectors.leftCols(b - a));
        }
        const Scalar res = invariance_residual(m, cluster.basis());
        if (res > Scalar(1e-8) * scale) {
            std::ostringstream os;
            os << "eigenspace cluster at modulus " << double(std::abs(out.values[a])) << " failed invariance (residual "
               << double(res / scale) << " relative)";
            throw NumericError(os.str());
        }
        Scalar mod = 0;
        for (Index i = a; i < b; ++i) mod += std::abs(out.values[i]);
        out.clusters.push_back({mod / Scalar(b - a), a, b - a, std::move(cluster)});
    }
    return out;
}

// Three-way verdict for transversality-type quantities.
enum class Verdict { Pass, Fail, Ambiguous };

struct Thresholds {
    double accept = 1e-7;
    double reject = 1e-9;
};

inline Verdict classify(double value, const Thresholds& t = {}) {
    if (value > t.accept) return Verdict::Pass;
    if (value < t.reject) return Verdict::Fail;
    return Verdict::Ambiguous;
}

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Ambiguous: return "ambiguous";
    }
    return "?";
}

using Subspaced = Subspace<double>;
using PartialFlagd = PartialFlag<double>;
using Matd = Mat<double>;
using Vecd = Vec<double>;

}  // namespace anosov
