#include <doctest.h>

#include "anosovlab/groups.hpp"
#include "anosovlab/representation.hpp"
#include "anosovlab/verification.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace anosov;

namespace {

Eigen::Matrix2d random_sl2(std::mt19937_64& rng) { return Eigen::Matrix2d(testing::random_sl(rng, 2)); }

// Coefficients (c2, c1, c0) of det(t - m) = t^3 + c2 t^2 + c1 t + c0.
std::array<double, 3> charpoly3(const Matd& m) {
    const double tr = m.trace();
    const double minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                          m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    return {-tr, minors, -m.determinant()};
}

}  // namespace

TEST_SUITE("representations") {

TEST_CASE("sym_power examples") {
    Eigen::Matrix2d d;
    d << 3, 0, 0, 1.0 / 3;
    const Matd s = sym_power(d, 3);
    CHECK((s - Vecd(Eigen::Vector3d(9, 1, 1.0 / 9)).asDiagonal().toDenseMatrix()).norm() < 1e-14);
    Eigen::Matrix2d u;
    u << 1, 1, 0, 1;
    Matd expect(3, 3);
    expect << 1, 2, 1, 0, 1, 1, 0, 0, 1;
    CHECK((sym_power(u, 3, SymBasis::Monomial) - expect).norm() < 1e-14);
    CHECK(sym_power(u, 1)(0, 0) == 1.0);
    CHECK_THROWS_AS(sym_power(u, 0), InputError);
}

TEST_CASE("sym_power is multiplicative with unit determinant") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        const Eigen::Matrix2d a = random_sl2(rng), b = random_sl2(rng);
        const int d = 2 + t % 6;
        for (SymBasis basis : {SymBasis::Weighted, SymBasis::Monomial}) {
            const Matd lhs = sym_power(Eigen::Matrix2d(a * b), d, basis);
            const Matd rhs = sym_power(a, d, basis) * sym_power(b, d, basis);
            CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, rhs.norm()));
            CHECK(std::abs(sym_power(a, d, basis).determinant() - 1) < 1e-8);
        }
        // the weighted basis keeps rotations orthogonal
        const double th = 0.1 * t;
        Eigen::Matrix2d r;
        r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        const Matd sr = sym_power(r, d);
        CHECK((sr.transpose() * sr - Matd::Identity(d, d)).norm() < 1e-12);
    }
}

TEST_CASE("fuchsian_locus examples") {
    const auto torus = punctured_torus_reference();
    const Representation two = fuchsian_locus({2}, torus);
    for (int i = 0; i < 2; ++i) CHECK((two.generators[std::size_t(i)] - torus->generators[std::size_t(i)]).norm() < 1e-14);

    Matd a(2, 2), b(2, 2);
    a << 2, 0, 0, 0.5;
    b << 1, 1, 1, 2;
    const auto ref = std::make_shared<const Representation>(make_representation({a, b}, "diagonal"));
    const Representation r = fuchsian_locus({3, 1}, ref);
    CHECK((r.generators[0] - Vecd(Eigen::Vector4d(4, 1, 0.25, 1)).asDiagonal().toDenseMatrix()).norm() < 1e-14);
    CHECK(r.blocks == std::vector<int>{3, 1});
    CHECK(r.label == "fuchsian(3,1)");
    CHECK_THROWS_AS(fuchsian_locus({1, 3}, torus), InputError);
    CHECK_THROWS_AS(fuchsian_locus({3, 0}, torus), InputError);
}

TEST_CASE("fg_rep determinants and characteristic polynomials") {
    for (double x : {0.1, 1.0, 7.0}) {
        const Representation r = fg_rep(x);
        for (const auto& g : r.generators) CHECK(g.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    }
    // below x ~ 1e-5 rounding the entries alone moves det by more than 1e-10
    for (double x : log_grid(1e-3, 1e3, 25)) {
        const Representation r = fg_rep(x);
        const double c2 = -(4 * std::pow(x, -1.0 / 3) + 4 * std::pow(x, 2.0 / 3));
        const double c1 = 4 * std::pow(x, 1.0 / 3) + 4 * std::pow(x, -2.0 / 3);
        for (const auto& g : r.generators) {
            const auto c = charpoly3(g);
            CHECK(testing::rel_diff(c[0], c2) < 1e-10);
            CHECK(testing::rel_diff(c[1], c1) < 1e-10);
            CHECK(testing::rel_diff(c[2], -1) < 1e-10);
        }
    }
    const auto s = eig_by_modulus(fg_rep(1).generators[0]);
    CHECK(s.values[0].real() == doctest::Approx((7 + 3 * std::sqrt(5.0)) / 2).epsilon(1e-9));
    CHECK(s.values[1].real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.values[2].real() == doctest::Approx((7 - 3 * std::sqrt(5.0)) / 2).epsilon(1e-9));
    CHECK_THROWS_AS(fg_rep(0), InputError);
    CHECK_THROWS_AS(fg_rep(-1), InputError);
}

TEST_CASE("dual representation") {
    const Representation r = fuchsian_locus({3, 2}, punctured_torus_reference());
    const Representation dd = dual_rep(dual_rep(r));
    for (std::size_t i = 0; i < r.generators.size(); ++i) CHECK((dd.generators[i] - r.generators[i]).norm() < 1e-10);
    CHECK(dd.blocks == r.blocks);

    Eigen::Matrix2d rot;
    rot << std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3);
    const Matd o = sym_power(rot, 3);
    const Representation orth = make_representation({o}, "orthogonal");
    CHECK((dual_rep(orth).generators[0] - o).norm() < 1e-12);

    const Representation f = fg_rep(2);
    const Representation fd = dual_rep(f);
    for (const Word& w : words_of_length(2, 3)) {
        const Vecd s = svd(evaluate(f, w)).sigma;
        const Vecd sd = svd(evaluate(fd, w)).sigma;
        for (Index i = 0; i < 3; ++i) CHECK(testing::rel_diff(sd(i), 1 / s(2 - i)) < 1e-9);
    }
}

TEST_CASE("validation rejects malformed representations") {
    Matd a = Matd::Identity(2, 2);
    a(0, 0) = 2;
    CHECK_THROWS_AS(make_representation({a}, "bad det"), InputError);
    Matd good = Matd::Identity(2, 2);
    CHECK_THROWS_AS(make_representation({good}, "no ref").ref(), InputError);
    CHECK_THROWS_AS(make_representation({good, good}, "rank mismatch",
                                        std::make_shared<const Representation>(
                                            make_representation({Matd(Matd::Identity(2, 2))}, "one"))),
                    InputError);
    CHECK_THROWS_AS(schottky_reference(0.5), InputError);
}

}  // TEST_SUITE
