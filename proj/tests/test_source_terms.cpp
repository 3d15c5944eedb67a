#include <doctest.h>

#include <cmath>
#include <numbers>

#include "plapwave/errors.hpp"
#include "plapwave/source_terms.hpp"

using namespace plapwave;

namespace {
SourceSpec power_spec(double q, double r) {
    SourceSpec s;
    s.form = SourceForm::PowerLaw;
    s.q = q;
    s.r = r;
    return s;
}
}  // namespace

TEST_CASE("power-law source values") {
    const SourceSpec s = power_spec(2.0, 2.0);
    CHECK(f_eval(s, 2.0) == doctest::Approx(12.0).epsilon(1e-15));  // 3 * |2| * 2
    CHECK(f_eval(s, 0.0) == 0.0);
    CHECK(f_eval(s, -2.0) == doctest::Approx(-12.0).epsilon(1e-15));  // odd
    CHECK(h_eval(s, 2.0) == doctest::Approx(12.0).epsilon(1e-15));
}

TEST_CASE("growth envelope holds on a sweep") {
    const SourceSpec s = power_spec(2.0, 2.0);
    for (double x = -10.0; x <= 10.0; x += 0.01)
        CHECK(std::abs(f_eval(s, x)) <= 3.0 * (x * x + 1.0) + 1e-12);
}

TEST_CASE("primitives") {
    const SourceSpec s = power_spec(2.0, 2.0);
    CHECK(primitive_F(s, 2.0) == doctest::Approx(8.0).epsilon(1e-15));  // |2|^3
    CHECK(primitive_F(s, -2.0) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(primitive_F(s, 0.0) == 0.0);
    CHECK(primitive_H(s, 2.0) == doctest::Approx(8.0).epsilon(1e-15));

    SourceSpec lin;
    lin.form = SourceForm::Linear;
    CHECK(f_eval(lin, 3.0) == 3.0);
    CHECK(primitive_F(lin, 3.0) == 4.5);

    SourceSpec custom;
    custom.form = SourceForm::Custom;
    custom.custom_f = [](double x) { return x; };
    custom.growth_constant = 1.0;
    CHECK(primitive_F(custom, 3.0) == doctest::Approx(4.5).epsilon(1e-10));
    CHECK(primitive_F(custom, -3.0) == doctest::Approx(4.5).epsilon(1e-10));
}

TEST_CASE("cutoff function shape and slope bound") {
    CHECK(cutoff_eta(4.0, 2.0) == 1.0);
    CHECK(cutoff_eta(4.0, -3.9) == 1.0);
    CHECK(cutoff_eta(4.0, 9.0) == 0.0);
    CHECK(cutoff_eta(4.0, -8.5) == 0.0);
    CHECK(cutoff_eta(4.0, 6.0) == doctest::Approx(0.5).epsilon(1e-15));  // midpoint
    CHECK(cutoff_eta(4.0, 4.0) == 1.0);
    CHECK(cutoff_eta(4.0, 8.0) == 0.0);

    for (double n : {0.5, 2.0, 7.0}) {
        const double h = 1e-6;
        for (double s = -2.5 * n; s <= 2.5 * n; s += n / 200.0) {
            const double slope = (cutoff_eta(n, s + h) - cutoff_eta(n, s)) / h;
            CHECK(std::abs(slope) <= 1.5 / n + 1e-3);
        }
        CHECK(cutoff_eta(n, 1.5 * n) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("cutoff sources converge to the plain source as n grows") {
    const SourceSpec s = power_spec(2.0, 2.0);
    const double svals[] = {-7.0, -3.0, -0.5, 0.0, 1.0, 4.5, 9.0};
    double prev_sup = 1e300;
    for (double n : {2.0, 4.0, 8.0, 16.0}) {
        double sup = 0.0;
        for (double x : svals)
            sup = std::max(sup, std::abs(f_eval(s, x) * cutoff_eta(n, x) - f_eval(s, x)));
        CHECK(sup <= prev_sup);
        prev_sup = sup;
    }
    // once n dominates every sample the truncation is exact
    double sup = 0.0;
    for (double x : svals)
        sup = std::max(sup, std::abs(f_eval(s, x) * cutoff_eta(16.0, x) - f_eval(s, x)));
    CHECK(sup == 0.0);
}

TEST_CASE("norm-ball truncation") {
    const double L = std::numbers::pi;
    const SpectralBasis basis =
        build_basis(DomainSpec{L}, 4, composite_gauss_legendre(L, 64, 8));
    SourceSpec s = power_spec(2.0, 2.0);

    // inside the ball the evaluator is f itself, bitwise
    std::vector<double> c = {0.5, 0.1, 0.0, 0.0};
    const DiscreteFunction small(basis, c);
    s.truncation = {TruncationKind::NormBall, 5.0};
    REQUIRE(w1p_norm(small, 2.5) < 5.0);
    auto fk = truncate_norm_ball(s, small, 2.5);
    for (double x : {-2.0, 0.0, 0.7, 3.0}) CHECK(fk(x) == f_eval(s, x));

    // outside: the argument is scaled by K / ||u||
    std::vector<double> big = {40.0, 10.0, 0.0, 0.0};
    const DiscreteFunction large(basis, big);
    const double norm = w1p_norm(large, 2.5);
    REQUIRE(norm > 5.0);
    auto fk2 = truncate_norm_ball(s, large, 2.5);
    for (double x : {-2.0, 0.7, 3.0})
        CHECK(fk2(x) == doctest::Approx(f_eval(s, 5.0 / norm * x)).epsilon(1e-14));

    // enormous K behaves like no truncation
    s.truncation = {TruncationKind::NormBall, 1e300};
    auto fk3 = truncate_norm_ball(s, large, 2.5);
    for (double x : {-2.0, 0.7, 3.0}) CHECK(fk3(x) == f_eval(s, x));

    CHECK(norm_ball_scale(5.0, 3.0) == 1.0);
    CHECK(norm_ball_scale(5.0, 10.0) == 0.5);
}

TEST_CASE("effective sources respect the truncation mode") {
    SourceSpec s = power_spec(2.0, 2.0);
    CHECK(effective_f(s, 1.0, 2.0) == f_eval(s, 2.0));
    s.truncation = {TruncationKind::NormBall, 1.0};
    CHECK(effective_f(s, 1.0, 2.0) == f_eval(s, 2.0));   // scale one is exact
    CHECK(effective_f(s, 0.5, 2.0) == f_eval(s, 1.0));
    s.truncation = {TruncationKind::Cutoff, 4.0};
    CHECK(effective_f(s, 1.0, 2.0) == f_eval(s, 2.0));   // inside the plateau
    CHECK(effective_f(s, 1.0, 9.0) == 0.0);
    CHECK(effective_h(s, 1.0, 6.0) ==
          doctest::Approx(h_eval(s, 6.0) * 0.5).epsilon(1e-14));
}

TEST_CASE("local Lipschitz envelope on sampled pairs") {
    const SourceSpec s = power_spec(2.0, 2.0);
    const double C = 3.0 * (s.q + 1.0);
    std::uint64_t state = 2026;
    auto uniform = [&state]() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return 20.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 10.0;
    };
    for (int i = 0; i < 2000; ++i) {
        const double a = uniform(), b = uniform();
        const double bound =
            C * (std::pow(std::abs(a), s.q - 1.0) + std::pow(std::abs(b), s.q - 1.0) + 1.0) *
            std::abs(a - b);
        CHECK(std::abs(f_eval(s, a) - f_eval(s, b)) <= bound + 1e-9);
    }
}

TEST_CASE("regime classifier thresholds") {
    const RegimeReport rep = classify_exponents(2.5, 2.0, 2.0);
    CHECK(rep.q_max_3d == doctest::Approx(12.5).epsilon(1e-15));
    CHECK(rep.r_max_3d == doctest::Approx(7.5).epsilon(1e-15));
    CHECK(rep.global_cutoff == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(rep.blowup_cutoff == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(rep.admissible_3d);
    CHECK_FALSE(rep.global_guaranteed);
    CHECK(rep.blowup_candidate);
    CHECK_FALSE(rep.geometry_note.empty());

    const RegimeReport global = classify_exponents(2.5, 1.25, 1.25);
    CHECK(global.global_guaranteed);
    CHECK_FALSE(global.blowup_candidate);

    const RegimeReport bad = classify_exponents(2.5, 13.0, 1.0);
    CHECK_FALSE(bad.admissible_3d);

    CHECK_THROWS_AS(classify_exponents(2.0, 2.0, 2.0), InvalidP);
    CHECK_THROWS_AS(classify_exponents(3.0, 2.0, 2.0), InvalidP);
}
