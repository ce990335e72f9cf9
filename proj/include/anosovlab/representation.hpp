#pragma once

#include <memory>
#include <string>
#include <vector>

#include "anosovlab/crossratio.hpp"
#include "anosovlab/linalg.hpp"

namespace anosov {

// Free-group representation into SL(d, R). Generator i (0-based) is the
// letter i+1 of a Word.
struct Representation {
    int dim = 0;
    std::vector<Matd> generators;
    std::shared_ptr<const Representation> reference;  // 2x2 hyperbolization for boundary order
    std::string label;
    // Block sizes of a Fuchsian-locus representation, empty otherwise.
    std::vector<int> blocks;

    int rank() const { return int(generators.size()); }
    const Representation& ref() const;

    // Checks unit determinants and a loxodromic reference.
    void validate() const;
};

Representation make_representation(std::vector<Matd> generators, std::string label,
                                   std::shared_ptr<const Representation> reference = nullptr);

// Once-punctured torus: A = [[1,1],[1,2]], B = [[1,-1],[-1,2]].
std::shared_ptr<const Representation> punctured_torus_reference();
// Ping-pong pair A = diag(lambda, 1/lambda), B conjugate to A with attracting
// line at angle pi/8 and repelling line at 3pi/8.
std::shared_ptr<const Representation> schottky_reference(double lambda = 5.0);

enum class SymBasis {
    Weighted,  // basis sqrt(C(n,i)) x^(n-i) y^i; orthogonal maps stay orthogonal
    Monomial   // basis x^(n-i) y^i
};

// Action of a 2x2 matrix on homogeneous polynomials of degree d-1.
Matd sym_power(const Eigen::Matrix2d& m, int d, SymBasis basis = SymBasis::Weighted);

Representation fuchsian_locus(const std::vector<int>& partition, std::shared_ptr<const Representation> ref);

// The punctured-torus family with zero shears and triple ratios x, 1/x.
Representation fg_rep(double x);

struct FgFlags {
    Flag3<double> infinity, zero, t, s;
    Vecd gamma_infinity_line;  // rho_x(gamma) applied to the line of infinity
    Vecd delta_infinity_line;
};
FgFlags fg_flags(double x);

// Inverse-transpose representation.
Representation dual_rep(const Representation& rep);

}  // namespace anosov
