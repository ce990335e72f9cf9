#include <doctest.h>

#include "anosovlab/crossratio.hpp"
#include "anosovlab/representation.hpp"
#include "crossratio_properties.hpp"
#include "oracle_values.hpp"

using namespace anosov;

namespace {

Subspaced line(std::initializer_list<double> v) {
    Vecd r(Index(v.size()));
    Index i = 0;
    for (double x : v) r(i++) = x;
    return Subspaced::span(r);
}

Vecd vec3(double a, double b, double c) {
    Vecd r(3);
    r << a, b, c;
    return r;
}

void report(const testing::IdentityStats& st) {
    for (const auto& [name, n] : st.checks) {
        INFO(name << ": " << n << " checks, max relative error " << st.max_rel.at(name));
        CHECK(st.failures.count(name) == 0);
    }
}

}  // namespace

TEST_SUITE("crossratio") {

TEST_CASE("pcr examples") {
    CHECK(pcr(line({1, 0}), line({1, 1}), line({0, 1}), line({-1, 1})).value() == doctest::Approx(2.0));
    const auto a = line({1, 0.3}), b = line({0.2, 1}), c = line({-1, 0.7});
    CHECK(pcr(a, b, b, c).value() == doctest::Approx(1.0));
    CHECK(pcr(a, b, a, c).value() == 0.0);
    CHECK(pcr(a, a, b, c).is_infinite());
    CHECK_THROWS_AS(pcr(a, a, a, c), PreconditionError);
    CHECK_THROWS_AS(pcr(line({1, 0, 0}), a, b, c), DimensionError);
    CHECK_THROWS_AS(pcr(a, a, b, c).value(), DomainError);
}

TEST_CASE("pcr_quotient examples") {
    const auto lo = line({0, 0, 1});
    const auto hi = Subspaced::whole(3);
    auto plane = [&](double a, double b) {
        Matd m(3, 2);
        m << a, 0, b, 0, 0, 1;
        return Subspaced::span(m);
    };
    CHECK(pcr_quotient(lo, hi, plane(1, 0), plane(1, 1), plane(0, 1), plane(-1, 1)).value() == doctest::Approx(2.0));
    CHECK(pcr_quotient(lo, hi, plane(1, 0), plane(1, 2), plane(1, 2), plane(-1, 1)).value() == doctest::Approx(1.0));
    CHECK_THROWS_AS(pcr_quotient(lo, Subspaced::span(Matd(Matd::Identity(3, 2))), plane(1, 0), plane(1, 1), plane(0, 1),
                                 plane(-1, 1)),
                    DimensionError);
}

TEST_CASE("gcr examples") {
    auto normal_plane = [](const Vecd& n) {
        Eigen::JacobiSVD<Matd> s(Matd(n.transpose()), Eigen::ComputeFullV);
        return Subspaced::span(Matd(s.matrixV().rightCols(2)));
    };
    const auto v1 = line({0, 0, 1}), v4 = line({1, 0, 0});
    const auto w2 = normal_plane(vec3(1, 1, 1)), w3 = normal_plane(vec3(1, 2, 32));
    CHECK(gcr(v1, w2, w3, v4).value() == doctest::Approx(32.0).epsilon(1e-12));
    CHECK(gcr(v1, w3, w2, v4).value() == doctest::Approx(1.0 / 32).epsilon(1e-12));
    CHECK(gcr(v1, w2, w2, v4).value() == doctest::Approx(1.0));
    CHECK_THROWS_AS(gcr(v1, normal_plane(vec3(0, 0, 1)), w3, v4), DomainError);
    CHECK_THROWS_AS(gcr(v1, v4, w3, v4), DimensionError);
}

TEST_CASE("triple ratio of the fg flags") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 7.0}) {
        const auto f = fg_flags(x);
        CHECK(triple_ratio(f.infinity, f.s, f.zero).value() == doctest::Approx(1 / x).epsilon(1e-10));
        CHECK(triple_ratio(f.zero, f.t, f.infinity).value() == doctest::Approx(x).epsilon(1e-10));
    }
}

TEST_CASE("triple ratio is invariant under cyclic shifts") {
    auto flag = [](int i) {
        const double l[3][3] = {{oracle::tr_flag0_line_0, oracle::tr_flag0_line_1, oracle::tr_flag0_line_2},
                                {oracle::tr_flag1_line_0, oracle::tr_flag1_line_1, oracle::tr_flag1_line_2},
                                {oracle::tr_flag2_line_0, oracle::tr_flag2_line_1, oracle::tr_flag2_line_2}};
        const double s[3][3] = {{oracle::tr_flag0_second_0, oracle::tr_flag0_second_1, oracle::tr_flag0_second_2},
                                {oracle::tr_flag1_second_0, oracle::tr_flag1_second_1, oracle::tr_flag1_second_2},
                                {oracle::tr_flag2_second_0, oracle::tr_flag2_second_1, oracle::tr_flag2_second_2}};
        return Flag3<double>::from(vec3(l[i][0], l[i][1], l[i][2]), vec3(s[i][0], s[i][1], s[i][2]));
    };
    const auto a = flag(0), b = flag(1), c = flag(2);
    CHECK(triple_ratio(a, b, c).value() == doctest::Approx(oracle::tr_value).epsilon(1e-10));
    CHECK(triple_ratio(b, c, a).value() == doctest::Approx(oracle::tr_value).epsilon(1e-10));
    CHECK(triple_ratio(c, a, b).value() == doctest::Approx(oracle::tr_value).epsilon(1e-10));
    CHECK(triple_ratio(a, c, b).value() == doctest::Approx(1 / oracle::tr_value).epsilon(1e-10));
    CHECK_THROWS_AS(triple_ratio(a, a, c), DomainError);
}

TEST_CASE("shear examples") {
    const auto a = Flag3<double>::from(vec3(1, 0, 0), vec3(0, 1, 0));
    const auto c = Flag3<double>::from(vec3(0, 0, 1), vec3(0, 1, 0));
    auto [s1, s2] = shear(a, line({1, -1, 1}), c, line({1, 1, 1}));
    CHECK(std::abs(s1) < 1e-12);
    CHECK(std::abs(s2) < 1e-12);
    auto [t1, t2] = shear(a, Subspaced::span(Vecd(-3 * vec3(1, -1, 1))), c, Subspaced::span(Vecd(5 * vec3(1, 1, 1))));
    CHECK(t1 == doctest::Approx(s1).scale(1));
    CHECK(t2 == doctest::Approx(s2).scale(1));
    auto [p1, p2] = shear(a, line({1, -1, 1}), c, line({1, 1.1, 1}));
    CHECK(p1 == doctest::Approx(oracle::shear_perturbed_0).epsilon(1e-10));
    CHECK(p2 == doctest::Approx(oracle::shear_perturbed_1).epsilon(1e-10));
    CHECK_THROWS_AS(shear(a, line({1, 1, 1}), c, line({1, 2, 1})), DomainError);
}

TEST_CASE("fg flags have zero shears along all three edges") {
    for (double x : {0.1, 1.0, 3.0}) {
        const auto f = fg_flags(x);
        const Subspaced diag_s = f.s.line, diag_t = f.t.line;
        auto [a1, a2] = shear(f.infinity, diag_s, f.zero, diag_t);
        CHECK(std::abs(a1) < 1e-10);
        CHECK(std::abs(a2) < 1e-10);
        auto [b1, b2] = shear(f.t, f.zero.line, f.infinity, Subspaced::span(f.gamma_infinity_line));
        CHECK(std::abs(b1) < 1e-10);
        CHECK(std::abs(b2) < 1e-10);
        auto [c1, c2] = shear(f.s, f.zero.line, f.infinity, Subspaced::span(f.delta_infinity_line));
        CHECK(std::abs(c1) < 1e-10);
        CHECK(std::abs(c2) < 1e-10);
    }
}

TEST_CASE("projective cross ratio identities on random quintuples") {
    report(testing::pcr_identity_suite(300, 11, 1e-9));
}

TEST_CASE("Grassmannian cross ratio identities on random configurations") {
    report(testing::gcr_identity_suite(300, 12, 1e-9));
}

TEST_CASE("gcr agrees with the quotient pcr on pencils") {
    report(testing::projection_relation_suite(300, 13, 1e-8));
}

}  // TEST_SUITE
