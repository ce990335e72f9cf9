#pragma once

#include <random>
#include <vector>

#include "anosovlab/linalg.hpp"

namespace anosov {

// Form of signature (p, q) on R^(p+q) in the block layout
//   [[0, 0, K], [0, J, 0], [(-1)^p K, 0, 0]]
// with K of size p-1 and J of size q-p+2.
struct SOpqData {
    int p = 0, q = 0, d = 0;
    Matd Q;
    Matd J;
};

SOpqData sopq_form(int p, int q);

enum class EConvention {
    SignCorrected,  // column entries (-1)^(p-1) J v, invariant for every p
    AsPrinted       // column entries J v, invariant only for odd p
};

inline constexpr double kSopqInvarianceTol = 1e-10;

double sopq_residual(const SOpqData& data, const Matd& g);
void certify_sopq(const SOpqData& data, const Matd& g, const std::string& what);

// Scalar factor for 1 <= k <= p-2; v >= 0.
Matd sopq_E(const SOpqData& data, int k, double v);
// Vector factor for k = p-1; v = 0 or J-positive with positive first entry.
Matd sopq_E(const SOpqData& data, int k, const Vecd& v, EConvention conv = EConvention::SignCorrected);

double j_quadratic(const SOpqData& data, const Vecd& v);

// One element of the positive cone: p-2 scalars and one J-positive vector.
struct ThetaVector {
    std::vector<double> scalars;
    Vecd last;
};

Matd sopq_ab(const SOpqData& data, const ThetaVector& v, EConvention conv = EConvention::SignCorrected);
// ab(v_1) ... ab(v_{p-1}); exactly p-1 factors are required.
Matd sopq_positive(const SOpqData& data, const std::vector<ThetaVector>& vbars,
                   EConvention conv = EConvention::SignCorrected);

// Random entries in (0, 2]; the last coordinate of the vector is set so the
// J-value equals a further (0, 2] draw.
ThetaVector random_theta(const SOpqData& data, std::mt19937_64& rng);
ThetaVector unit_theta(const SOpqData& data);

struct PositivityCoeffs {
    double of_p = 0;
    double of_inverse = 0;
};

// Entries (d-k-1, d-k+1), 1-based, of P and P^-1; 1 <= k <= p-3.
PositivityCoeffs sopq_positivity_coeffs(const Matd& P, const SOpqData& data, int k);

// Defect of Z^(d-k-2) + (Z^(d-k+1) cap P X^k) + X^(k+1) with
// Z^l = <e_1..e_l>, X^l = <e_d..e_(d-l+1)>.
double sopq_model_triple_defect(const Matd& P, const SOpqData& data, int k);

}  // namespace anosov
