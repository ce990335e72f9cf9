#pragma once

#include <optional>

#include "anosovlab/linalg.hpp"

namespace anosov {

// Matrix stored as exp(log_scale) * m, with m renormalized to unit spectral norm.
template <typename Scalar>
struct ScaledMatrix {
    Mat<Scalar> m;
    Scalar log_scale = 0;

    static ScaledMatrix from(const Mat<Scalar>& a) {
        ScaledMatrix s{a, 0};
        s.renormalize();
        return s;
    }

    void renormalize() {
        Eigen::JacobiSVD<Mat<Scalar>> svd(m);
        const Scalar top = svd.singularValues()(0);
        if (!(top > Scalar(0)) || !std::isfinite(double(top))) throw NumericError("renormalizing a zero or non-finite matrix");
        m /= top;
        log_scale += std::log(top);
    }

    ScaledMatrix operator*(const ScaledMatrix& o) const {
        ScaledMatrix r{m * o.m, log_scale + o.log_scale};
        r.renormalize();
        return r;
    }

    Mat<Scalar> value() const { return std::exp(log_scale) * m; }
};

// g^n with renormalization after every multiplication.
template <typename Scalar>
ScaledMatrix<Scalar> power_scaled(const Mat<Scalar>& g, int n) {
    if (n < 0) throw InputError("negative power");
    ScaledMatrix<Scalar> base = ScaledMatrix<Scalar>::from(g);
    ScaledMatrix<Scalar> acc{Mat<Scalar>::Identity(g.rows(), g.cols()), 0};
    for (int i = 0; i < n; ++i) acc = acc * base;
    return acc;
}

template <typename Scalar>
void check_index(const Mat<Scalar>& m, Index k) {
    if (k < 1 || k >= m.rows()) throw InputError("gap index " + std::to_string(k) + " outside [1, d-1]");
}

template <typename Scalar>
Scalar singular_gap(const Mat<Scalar>& m, Index k) {
    check_index(m, k);
    auto s = ScaledMatrix<Scalar>::from(m);
    Eigen::JacobiSVD<Mat<Scalar>> svd(s.m);
    const auto& sigma = svd.singularValues();
    if (sigma(k) < Scalar(1e-300)) throw UnderflowError("singular value below 1e-300 after renormalization");
    return sigma(k - 1) / sigma(k);
}

inline constexpr double kCartanGapTol = 1e-9;
inline constexpr double kEigenGapTol = 1e-8;
inline constexpr double kInvarianceTol = 1e-8;

// U_k: span of the k leading left singular vectors.
template <typename Scalar>
Subspace<Scalar> cartan_attractor(const Mat<Scalar>& m, Index k) {
    check_index(m, k);
    auto s = ScaledMatrix<Scalar>::from(m);
    Eigen::JacobiSVD<Mat<Scalar>> svd(s.m, Eigen::ComputeFullU);
    const auto& sigma = svd.singularValues();
    const Scalar ratio = sigma(k) > Scalar(0) ? sigma(k - 1) / sigma(k) : std::numeric_limits<Scalar>::infinity();
    if (!(ratio > 1 + Scalar(kCartanGapTol)))
        throw GapError("no singular value gap at index " + std::to_string(k), int(k), double(ratio));
    return Subspace<Scalar>::span(svd.matrixU().leftCols(k));
}

template <typename Scalar>
Scalar modulus_ratio(const std::vector<std::complex<Scalar>>& values, Index k) {
    const Scalar lo = std::abs(values[k]);
    return lo > Scalar(0) ? std::abs(values[k - 1]) / lo : std::numeric_limits<Scalar>::infinity();
}

// Attracting flag of m for several dimensions from one sorted Schur form.
// Dimensions 0 and d are allowed and give the trivial spaces.
template <typename Scalar>
std::vector<Subspace<Scalar>> attracting_spaces(const Mat<Scalar>& m, const std::vector<Index>& dims) {
    const Index d = m.rows();
    auto s = ScaledMatrix<Scalar>::from(m);
    SortedSchur<Scalar> schur(s.m, true);
    std::vector<std::complex<Scalar>> values(d);
    for (Index i = 0; i < d; ++i) values[i] = schur.eigenvalue(i);
    std::vector<Subspace<Scalar>> out;
    for (Index k : dims) {
        if (k < 0 || k > d) throw InputError("dimension " + std::to_string(k) + " outside [0, d]");
        if (k == 0) {
            out.push_back(Subspace<Scalar>::zero(d));
            continue;
        }
        if (k == d) {
            out.push_back(Subspace<Scalar>::whole(d));
            continue;
        }
        const Scalar ratio = modulus_ratio(values, k);
        if (!(ratio > 1 + Scalar(kEigenGapTol)))
            throw GapError("eigenvalue modulus tie at index " + std::to_string(k), int(k), double(ratio));
        Subspace<Scalar> a = Subspace<Scalar>::span(schur.real_leading_basis(k));
        const Scalar res = invariance_residual(s.m, a.basis());
        if (res > Scalar(kInvarianceTol)) {
            std::ostringstream os;
            os << "attracting space of dimension " << k << " failed invariance (residual " << double(res) << ")";
            throw NumericError(os.str());
        }
        out.push_back(std::move(a));
    }
    return out;
}

template <typename Scalar>
Subspace<Scalar> attracting_space(const Mat<Scalar>& m, Index k) {
    check_index(m, k);
    return attracting_spaces(m, {k}).front();
}

template <typename Scalar>
Subspace<Scalar> repelling_space(const Mat<Scalar>& m, Index k) {
    return attracting_space(Mat<Scalar>(m.inverse()), k);
}

template <typename Scalar>
struct SpectralGaps {
    Index k = 0;
    Scalar sigma_ratio = 0;
    std::optional<Scalar> lambda_ratio_signed;
    Scalar lambda_ratio_modulus = 0;
};

inline constexpr double kRealEigenTol = 1e-8;

template <typename Scalar>
bool is_real(const std::complex<Scalar>& z) {
    return std::abs(z.imag()) < Scalar(kRealEigenTol) * std::abs(z);
}

template <typename Scalar>
SpectralGaps<Scalar> eigenvalue_ratios(const Mat<Scalar>& m, Index k) {
    check_index(m, k);
    auto s = ScaledMatrix<Scalar>::from(m);
    auto spec = eig_by_modulus(s.m);
    SpectralGaps<Scalar> out;
    out.k = k;
    out.sigma_ratio = singular_gap(s.m, k);
    const auto& a = spec.values[k - 1];
    const auto& b = spec.values[k];
    out.lambda_ratio_modulus = modulus_ratio(spec.values, k);
    if (is_real(a) && is_real(b) && b.real() != Scalar(0)) out.lambda_ratio_signed = a.real() / b.real();
    return out;
}

template <typename Scalar>
struct LengthPair {
    Scalar weight_length = 0;
    Scalar root_length = 0;
};

inline constexpr double kZeroEigenTol = 1e-300;

// Weight and root lengths from a descending-modulus eigenvalue list of a
// matrix scaled by exp(log_scale) (the scale cancels in both).
template <typename Scalar>
LengthPair<Scalar> length_functions_from(const std::vector<std::complex<Scalar>>& values, Index k) {
    const Index d = Index(values.size());
    if (k < 1 || k >= d) throw InputError("index outside [1, d-1]");
    for (const auto& v : values)
        if (std::abs(v) < Scalar(kZeroEigenTol)) throw NumericError("eigenvalue of modulus zero");
    LengthPair<Scalar> out;
    for (Index i = 0; i < k; ++i) out.weight_length += std::log(std::abs(values[i])) - std::log(std::abs(values[d - 1 - i]));
    out.root_length = std::log(std::abs(values[k - 1])) - std::log(std::abs(values[k]));
    return out;
}

template <typename Scalar>
LengthPair<Scalar> length_functions(const Mat<Scalar>& m, Index k) {
    check_index(m, k);
    auto s = ScaledMatrix<Scalar>::from(m);
    SortedSchur<Scalar> schur(s.m, true);
    std::vector<std::complex<Scalar>> values(m.rows());
    for (Index i = 0; i < m.rows(); ++i) values[i] = schur.eigenvalue(i);
    return length_functions_from(values, k);
}

}  // namespace anosov
