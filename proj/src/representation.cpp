#include "anosovlab/representation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "anosovlab/groups.hpp"

namespace anosov {

const Representation& Representation::ref() const {
    if (!reference) throw InputError("representation '" + label + "' has no reference hyperbolization");
    return *reference;
}

void Representation::validate() const {
    if (dim < 1) throw InputError("representation dimension must be positive");
    if (generators.empty()) throw InputError("representation needs at least one generator");
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const Matd& g = generators[i];
        if (g.rows() != dim || g.cols() != dim) throw DimensionError("generator " + std::to_string(i + 1) + " has the wrong size");
        if (!g.allFinite()) throw InputError("generator " + std::to_string(i + 1) + " has non-finite entries");
        const double det = g.determinant();
        const double scale = std::pow(g.norm() / std::sqrt(double(dim)), dim);
        if (std::abs(det - 1) > 1e-8 * std::max(1.0, scale)) {
            std::ostringstream os;
            os << "generator " << i + 1 << " has determinant " << det;
            throw InputError(os.str());
        }
    }
    if (reference) {
        if (reference->dim != 2) throw InputError("reference must be 2x2");
        if (reference->rank() != rank()) throw InputError("reference rank differs from representation rank");
        for (const Matd& g : reference->generators)
            if (!is_loxodromic(g)) throw InputError("reference generator is not loxodromic");
    }
    if (!blocks.empty()) {
        int s = 0;
        for (int b : blocks) s += b;
        if (s != dim) throw InputError("block sizes do not sum to the dimension");
    }
}

Representation make_representation(std::vector<Matd> generators, std::string label,
                                   std::shared_ptr<const Representation> reference) {
    if (generators.empty()) throw InputError("representation needs at least one generator");
    Representation r;
    r.dim = int(generators.front().rows());
    r.generators = std::move(generators);
    r.label = std::move(label);
    r.reference = std::move(reference);
    r.validate();
    return r;
}

std::shared_ptr<const Representation> punctured_torus_reference() {
    static const auto ref = [] {
        Matd a(2, 2), b(2, 2);
        a << 1, 1, 1, 2;
        b << 1, -1, -1, 2;
        return std::make_shared<const Representation>(make_representation({a, b}, "punctured-torus"));
    }();
    return ref;
}

std::shared_ptr<const Representation> schottky_reference(double lambda) {
    if (!(lambda > 1)) throw InputError("schottky_reference needs lambda > 1");
    Matd a(2, 2);
    a << lambda, 0, 0, 1 / lambda;
    const double t1 = std::numbers::pi / 8, t2 = 3 * std::numbers::pi / 8;
    Matd p(2, 2);
    p << std::cos(t1), std::cos(t2), std::sin(t1), std::sin(t2);
    Matd b = p * a * p.inverse();
    std::ostringstream label;
    label << "schottky(" << lambda << ")";
    return std::make_shared<const Representation>(make_representation({a, b}, label.str()));
}

Matd sym_power(const Eigen::Matrix2d& m, int d, SymBasis basis) {
    if (d < 1) throw InputError("sym_power needs d >= 1");
    const int n = d - 1;
    // Row i: coefficients of (ax+by)^(n-i) (cx+dy)^i in x^(n-j) y^j.
    Matd r = Matd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        std::vector<double> poly{1.0};
        auto mul = [&](double u, double v) {
            std::vector<double> next(poly.size() + 1, 0.0);
            for (std::size_t j = 0; j < poly.size(); ++j) {
                next[j] += poly[j] * u;
                next[j + 1] += poly[j] * v;
            }
            poly = std::move(next);
        };
        for (int j = 0; j < n - i; ++j) mul(m(0, 0), m(0, 1));
        for (int j = 0; j < i; ++j) mul(m(1, 0), m(1, 1));
        for (int j = 0; j < d; ++j) r(i, j) = poly[j];
    }
    if (basis == SymBasis::Monomial) return r;
    Vecd w(d);
    for (int i = 0; i < d; ++i) w(i) = std::sqrt(std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r(i, j) *= w(i) / w(j);
    return r;
}

Representation fuchsian_locus(const std::vector<int>& partition, std::shared_ptr<const Representation> ref) {
    if (!ref) throw InputError("fuchsian_locus needs a reference");
    if (partition.empty()) throw InputError("empty partition");
    for (std::size_t i = 0; i < partition.size(); ++i) {
        if (partition[i] < 1) throw InputError("partition entries must be positive");
        if (i > 0 && partition[i] > partition[i - 1]) throw InputError("partition must be non-increasing");
    }
    int d = 0;
    for (int b : partition) d += b;
    std::vector<Matd> gens;
    for (const Matd& g : ref->generators) {
        Matd m = Matd::Zero(d, d);
        int o = 0;
        for (int b : partition) {
            m.block(o, o, b, b) = sym_power(Eigen::Matrix2d(g), b);
            o += b;
        }
        gens.push_back(std::move(m));
    }
    std::ostringstream label;
    label << "fuchsian(";
    for (std::size_t i = 0; i < partition.size(); ++i) label << (i ? "," : "") << partition[i];
    label << ")";
    Representation r = make_representation(std::move(gens), label.str(), ref);
    r.blocks = partition;
    return r;
}

namespace {

void check_x(double x) {
    if (!(x > 0) || !std::isfinite(x)) throw InputError("fg family parameter x must be a positive real");
}

}  // namespace

Representation fg_rep(double x) {
    check_x(x);
    const double c = 1 / std::cbrt(x);
    Matd g(3, 3), h(3, 3);
    g << 2 * x + 2, 2 * x + 2, 1,
         2 * x, 2 * x + 1, 1,
         x, x + 1, 1;
    h << 2 * x + 2, -2 * x - 2, 1,
         -2 * x, 2 * x + 1, -1,
         x, -x - 1, 1;
    std::ostringstream label;
    label.precision(17);
    label << "fg(" << x << ")";
    return make_representation({c * g, c * h}, label.str(), punctured_torus_reference());
}

FgFlags fg_flags(double x) {
    check_x(x);
    auto v = [](double a, double b, double c) {
        Vecd r(3);
        r << a, b, c;
        return r;
    };
    FgFlags f{Flag3<double>::from(v(1, 0, 0), v(0, 1, 0)), Flag3<double>::from(v(0, 0, 1), v(0, 1, 0)),
              Flag3<double>::from(v(1, 1, 1), v(1, 0, -x)), Flag3<double>::from(v(1, -1, 1), v(1, 0, -x)), Vecd(),
              Vecd()};
    const Representation r = fg_rep(x);
    f.gamma_infinity_line = r.generators[0] * v(1, 0, 0);
    f.delta_infinity_line = r.generators[1] * v(1, 0, 0);
    return f;
}

Representation dual_rep(const Representation& rep) {
    Representation r = rep;
    for (Matd& g : r.generators) g = Matd(g.inverse().transpose());
    r.label = "dual(" + rep.label + ")";
    return r;
}

}  // namespace anosov
