#include <doctest.h>

#include "anosovlab/spectral.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace anosov;
using testing::gaussian;

namespace {

Matd diag(std::initializer_list<double> v) {
    Vecd d(Index(v.size()));
    Index i = 0;
    for (double x : v) d(i++) = x;
    return d.asDiagonal();
}

Matd g1() {
    Matd g(3, 3);
    g << 4, 4, 1, 2, 3, 1, 1, 2, 1;
    return g;
}

Subspaced coordinate_span(Index d, std::initializer_list<Index> idx) {
    Matd m = Matd::Zero(d, Index(idx.size()));
    Index j = 0;
    for (Index i : idx) m(i, j++) = 1;
    return Subspaced::span(m);
}

// Random matrix with real spectrum of distinct moduli.
Matd gapped(std::mt19937_64& rng, Index d) {
    Vecd ev(d);
    for (Index i = 0; i < d; ++i) ev(i) = std::pow(2.0, double(d - 1) / 2 - double(i)) * (i % 2 ? -1 : 1);
    Matd s = testing::random_sl(rng, d);
    return s * ev.asDiagonal() * s.inverse();
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("singular_gap examples") {
    CHECK(singular_gap(Matd(Matd::Identity(3, 3)), 1) == doctest::Approx(1.0));
    CHECK(singular_gap(diag({4, 2, 0.125}), 1) == doctest::Approx(2.0));
    CHECK(singular_gap(g1(), 1) == doctest::Approx(oracle::g1_sigma_gap1).epsilon(1e-12));
    CHECK(singular_gap(g1(), 2) == doctest::Approx(oracle::g1_sigma_gap2).epsilon(1e-12));
    CHECK_THROWS_AS(singular_gap(g1(), 3), InputError);
    CHECK_THROWS_AS(singular_gap(diag({1, 1e-320, 1}), 2), UnderflowError);
}

TEST_CASE("cartan_attractor examples") {
    CHECK(grassmann_distance(cartan_attractor(diag({4, 2, 0.125}), 1), coordinate_span(3, {0})) < 1e-14);
    CHECK(grassmann_distance(cartan_attractor(diag({4, 2, 0.125}), 2), coordinate_span(3, {0, 1})) < 1e-14);
    std::mt19937_64 rng(6);
    Eigen::HouseholderQR<Matd> qr(gaussian(rng, 3, 3));
    Matd q = qr.householderQ();
    auto u = cartan_attractor(Matd(q * diag({9, 1, 1.0 / 9})), 1);
    CHECK(grassmann_distance(u, Subspaced::span(q.col(0))) < 1e-12);
    try {
        cartan_attractor(Matd(Matd::Identity(3, 3)), 1);
        FAIL("expected GapError");
    } catch (const GapError& e) {
        CHECK(e.index() == 1);
        CHECK(e.ratio() == doctest::Approx(1.0));
    }
}

TEST_CASE("attracting_space examples") {
    CHECK(grassmann_distance(attracting_space(diag({4, 2, 0.125}), 2), coordinate_span(3, {0, 1})) < 1e-14);
    Matd t(2, 2);
    t << 2, 1, 0, 0.5;
    auto a = attracting_space(t, 1);
    CHECK(a.basis()(1, 0) / a.basis()(0, 0) == doctest::Approx(oracle::tri_attracting_slope).scale(1));
    Vecd v(3);
    v << oracle::g1_attracting_line_0, oracle::g1_attracting_line_1, oracle::g1_attracting_line_2;
    CHECK(grassmann_distance(attracting_space(g1(), 1), Subspaced::span(v)) < 1e-12);
    CHECK_THROWS_AS(attracting_space(diag({2, 1, 1, 0.5}), 2), GapError);
    auto r = repelling_space(diag({4, 2, 0.125}), 1);
    CHECK(grassmann_distance(r, coordinate_span(3, {2})) < 1e-14);
}

TEST_CASE("attracting_space is invariant and handles complex pairs") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        const Index d = 3 + Index(t % 4);
        Matd m = gapped(rng, d);
        for (Index k = 1; k < d; ++k) {
            auto a = attracting_space(m, k);
            CHECK(grassmann_distance(a, a.image(m)) < 1e-8);
        }
    }
    // rotation block on top of a contracting line
    Matd m = Matd::Zero(3, 3);
    m.topLeftCorner(2, 2) << 0, -2, 2, 0;
    m(2, 2) = 0.25;
    auto a = attracting_space(m, 2);
    CHECK(grassmann_distance(a, coordinate_span(3, {0, 1})) < 1e-12);
    CHECK_THROWS_AS(attracting_space(m, 1), GapError);
}

TEST_CASE("eigenvalue_ratios examples") {
    auto a = eigenvalue_ratios(diag({2, 1, 0.5}), 1);
    REQUIRE(a.lambda_ratio_signed);
    CHECK(*a.lambda_ratio_signed == doctest::Approx(2.0));
    auto b = eigenvalue_ratios(diag({2, -1, -0.5}), 1);
    REQUIRE(b.lambda_ratio_signed);
    CHECK(*b.lambda_ratio_signed == doctest::Approx(-2.0));
    CHECK(b.lambda_ratio_modulus == doctest::Approx(2.0));
    auto c = eigenvalue_ratios(g1(), 1);
    REQUIRE(c.lambda_ratio_signed);
    CHECK(*c.lambda_ratio_signed == doctest::Approx(oracle::g1_lambda1).epsilon(1e-12));
    Matd rot = Matd::Zero(3, 3);
    rot.topLeftCorner(2, 2) << 0, -2, 2, 0;
    rot(2, 2) = 0.25;
    auto r = eigenvalue_ratios(rot, 2);
    CHECK_FALSE(r.lambda_ratio_signed);
    CHECK(r.lambda_ratio_modulus == doctest::Approx(8.0));
}

TEST_CASE("length_functions examples and properties") {
    auto a = length_functions(diag({2, 1, 0.5}), 1);
    CHECK(a.weight_length == doctest::Approx(std::log(4.0)));
    CHECK(a.root_length == doctest::Approx(std::log(2.0)));
    auto id = length_functions(Matd(Matd::Identity(3, 3)), 1);
    CHECK(id.weight_length == doctest::Approx(0.0));
    CHECK(id.root_length == doctest::Approx(0.0));
    auto g = length_functions(g1(), 1);
    CHECK(g.weight_length == doctest::Approx(oracle::g1_weight_length).epsilon(1e-12));
    CHECK(g.root_length == doctest::Approx(oracle::g1_root_length).epsilon(1e-12));
    CHECK_THROWS_AS(length_functions(diag({1, 0, 1}), 1), NumericError);

    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
        const Index d = 3 + Index(t % 4);
        Matd m = testing::random_sl(rng, d);
        for (Index k = 1; k < d; ++k) {
            auto l = length_functions(m, k);
            auto li = length_functions(Matd(m.inverse()), k);
            CHECK(l.weight_length >= l.root_length - 1e-9);
            CHECK(std::abs(l.weight_length - li.weight_length) <= 1e-9 * std::max(1.0, l.weight_length));
        }
    }
}

TEST_CASE("signed ratio agrees with the modulus ratio") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        Matd m = gapped(rng, 4);
        for (Index k = 1; k < 4; ++k) {
            auto r = eigenvalue_ratios(m, k);
            REQUIRE(r.lambda_ratio_signed);
            CHECK(testing::rel_diff(std::abs(*r.lambda_ratio_signed), r.lambda_ratio_modulus) < 1e-9);
        }
    }
}

TEST_CASE("power_scaled keeps large powers finite") {
    auto p = power_scaled(g1(), 60);
    CHECK(p.m.allFinite());
    CHECK(p.log_scale - power_scaled(g1(), 59).log_scale == doctest::Approx(std::log(oracle::g1_lambda1)).epsilon(1e-9));
    CHECK(power_scaled(Matd(g1() * 1e200), 5).m.allFinite());
    auto u = cartan_attractor(p.m, 1);
    CHECK(grassmann_distance(u, attracting_space(g1(), 1)) < 1e-12);
}

TEST_CASE("Cartan attractors of powers converge to the attracting space") {
    const Matd g = g1();
    const auto target = attracting_space(g, 1);
    double prev = 1;
    for (int n = 1; n <= 12; ++n) {
        const double dist = grassmann_distance(cartan_attractor(power_scaled(g, n).m, 1), target);
        CHECK(dist <= prev + 1e-15);
        prev = dist;
    }
    CHECK(prev < 1e-9);
}

}  // TEST_SUITE
