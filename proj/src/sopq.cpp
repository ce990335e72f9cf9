#include "anosovlab/sopq.hpp"

#include <sstream>

namespace anosov {

namespace {

int sign_pow(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

SOpqData sopq_form(int p, int q) {
    if (p < 3 || q < p) throw InputError("sopq_form needs q >= p >= 3");
    const int d = p + q, m = p - 1, n = q - p + 2;
    Matd k = Matd::Zero(m, m);
    for (int i = 0; i < m; ++i) k(i, m - 1 - i) = sign_pow(i);
    Matd j = Matd::Zero(n, n);
    j(0, n - 1) = j(n - 1, 0) = sign_pow(p - 1);
    for (int i = 1; i < n - 1; ++i) j(i, i) = -1;
    Matd Q = Matd::Zero(d, d);
    Q.block(0, d - m, m, m) = k;
    Q.block(m, m, n, n) = j;
    Q.block(d - m, 0, m, m) = sign_pow(p) * k;
    return {p, q, d, Q, j};
}

double sopq_residual(const SOpqData& data, const Matd& g) {
    return (g.transpose() * data.Q * g - data.Q).norm() / data.Q.norm();
}

void certify_sopq(const SOpqData& data, const Matd& g, const std::string& what) {
    const double r = sopq_residual(data, g);
    if (!(r <= kSopqInvarianceTol)) {
        std::ostringstream os;
        os << what << " does not preserve the form of signature (" << data.p << "," << data.q << "): residual " << r;
        throw ConstructionError(os.str());
    }
}

Matd sopq_E(const SOpqData& data, int k, double v) {
    if (k < 1 || k > data.p - 2) throw InputError("scalar factor index must lie in [1, p-2]");
    if (!(v >= 0) || !std::isfinite(v)) throw DomainError("scalar factor parameter must be a nonnegative real");
    const int d = data.d;
    Matd g = Matd::Identity(d, d);
    g(k - 1, k) = v;
    g(d - k - 1, d - k) = v;
    std::ostringstream os;
    os << "E_" << k << "(" << v << ")";
    certify_sopq(data, g, os.str());
    return g;
}

double j_quadratic(const SOpqData& data, const Vecd& v) {
    if (v.size() != data.J.rows()) throw DimensionError("vector parameter has the wrong length");
    return v.dot(data.J * v);
}

Matd sopq_E(const SOpqData& data, int k, const Vecd& v, EConvention conv) {
    const int p = data.p, q = data.q, d = data.d;
    if (k != p - 1) throw InputError("vector factor index must be p-1");
    const int n = q - p + 2;
    if (v.size() != n) throw DimensionError("vector parameter must have length q-p+2");
    Matd g = Matd::Identity(d, d);
    if (v.isZero(0)) return g;
    if (!(j_quadratic(data, v) > 0) || !(v(0) > 0))
        throw DomainError("vector parameter is not J-positive with positive first entry");
    // Row p-1 carries v over columns p..q+1; column q+2 carries the J image
    // and the corner entry solved from invariance.
    g.block(p - 2, p - 1, 1, n) = v.transpose();
    const double s = conv == EConvention::SignCorrected ? sign_pow(p - 1) : 1.0;
    g.block(p - 1, q + 1, n, 1) = s * (data.J * v);
    auto residual = [&](double corner) {
        Matd h = g;
        h(p - 2, q + 1) = corner;
        Matd r = h.transpose() * data.Q * h - data.Q;
        return Vecd(Eigen::Map<Vecd>(r.data(), r.size()));
    };
    const Vecd r0 = residual(0);
    const Vecd r1 = residual(1) - r0;
    g(p - 2, q + 1) = r1.squaredNorm() > 0 ? -r1.dot(r0) / r1.squaredNorm() : 0;
    certify_sopq(data, g, "E_" + std::to_string(k) + "(vector)");
    return g;
}

Matd sopq_ab(const SOpqData& data, const ThetaVector& v, EConvention conv) {
    const int p = data.p;
    if (int(v.scalars.size()) != p - 2) throw DimensionError("positive-cone element needs p-2 scalars");
    auto factor = [&](int k) { return k == p - 1 ? sopq_E(data, k, v.last, conv) : sopq_E(data, k, v.scalars[k - 1]); };
    Matd even = Matd::Identity(data.d, data.d), odd = Matd::Identity(data.d, data.d);
    for (int k = 1; k <= p - 1; ++k) (k % 2 == 0 ? even : odd) = (k % 2 == 0 ? even : odd) * factor(k);
    Matd ab = even * odd;
    certify_sopq(data, ab, "ab factor");
    return ab;
}

Matd sopq_positive(const SOpqData& data, const std::vector<ThetaVector>& vbars, EConvention conv) {
    const int factors = data.p - 1;  // half the Coxeter number 2(p-1)
    if (int(vbars.size()) != factors)
        throw InputError("positive element needs exactly " + std::to_string(factors) + " factors");
    Matd P = Matd::Identity(data.d, data.d);
    for (const auto& v : vbars) P = P * sopq_ab(data, v, conv);
    certify_sopq(data, P, "positive element");
    return P;
}

ThetaVector random_theta(const SOpqData& data, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0);
    auto draw = [&] { return 2.0 - u(rng); };
    ThetaVector t;
    for (int i = 0; i < data.p - 2; ++i) t.scalars.push_back(draw());
    const int n = data.q - data.p + 2;
    t.last = Vecd::Zero(n);
    t.last(0) = draw();
    double mid = 0;
    for (int i = 1; i < n - 1; ++i) {
        t.last(i) = draw();
        mid += t.last(i) * t.last(i);
    }
    const double target = draw();
    t.last(n - 1) = sign_pow(data.p - 1) * (mid + target) / (2 * t.last(0));
    return t;
}

ThetaVector unit_theta(const SOpqData& data) {
    ThetaVector t;
    t.scalars.assign(data.p - 2, 1.0);
    const int n = data.q - data.p + 2;
    t.last = Vecd::Ones(n);
    t.last(n - 1) = sign_pow(data.p - 1) * (double(n - 2) + 1.0) / 2.0;
    return t;
}

PositivityCoeffs sopq_positivity_coeffs(const Matd& P, const SOpqData& data, int k) {
    if (k < 1 || k > data.p - 3) throw InputError("positivity coefficient index must lie in [1, p-3]");
    if (P.rows() != data.d || P.cols() != data.d) throw DimensionError("matrix size differs from p+q");
    const int r = data.d - k - 2, c = data.d - k;
    const Matd inv = P.inverse();
    return {P(r, c), inv(r, c)};
}

double sopq_model_triple_defect(const Matd& P, const SOpqData& data, int k) {
    const int d = data.d;
    if (k < 1 || k > data.p - 3) throw InputError("model triple index must lie in [1, p-3]");
    auto z = [&](int l) { return Subspaced::span(Matd::Identity(d, d).leftCols(l)); };
    auto x = [&](int l) { return Subspaced::span(Matd::Identity(d, d).rightCols(l)); };
    const Subspaced px = x(k).image(P);
    const Subspaced mid = intersect(z(d - k + 1), px);
    return direct_sum_defect(std::vector<Subspaced>{z(d - k - 2), mid, x(k + 1)});
}

}  // namespace anosov
