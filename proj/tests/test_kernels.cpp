#include <doctest.h>

#include <cmath>
#include <vector>

#include "plapwave/function_space.hpp"
#include "plapwave/kernels.hpp"

using namespace plapwave;

namespace {

std::vector<double> random_vec(size_t n, std::uint64_t& rng) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform_pm1(rng);
    return v;
}

}  // namespace

TEST_CASE("signed power values and sign") {
    CHECK(kernels::signed_power(0.0, 1.5) == 0.0);
    CHECK(kernels::signed_power(2.0, 2.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(kernels::signed_power(-2.0, 2.0) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(kernels::abs_power(-3.0, 1.0) == 3.0);
    CHECK(kernels::abs_power(2.0, 0.0) == 1.0);
    CHECK(kernels::abs_power(0.0, 0.0) == 1.0);
}

TEST_CASE("fast exponent paths agree with pow") {
    std::uint64_t rng = 7;
    for (double e : {0.25, 0.5, 0.75, 1.25, 1.5, 2.25, 2.5, 3.25, 4.0}) {
        for (int i = 0; i < 200; ++i) {
            const double z = 10.0 * uniform_pm1(rng);
            if (z == 0.0) continue;
            const double ref = std::pow(std::abs(z), e);
            CHECK(kernels::abs_power(z, e) ==
                  doctest::Approx(ref).epsilon(1e-13));
        }
    }
    // non-quarter exponent goes through pow directly
    CHECK(kernels::abs_power(1.7, 2.2) == std::pow(1.7, 2.2));
}

TEST_CASE("serial and parallel kernels are bitwise identical") {
    std::uint64_t rng = 99;
    for (auto [n_modes, n_nodes] : {std::pair{8, 512}, {48, 16384}}) {
        const auto table = random_vec(static_cast<size_t>(n_modes) * n_nodes, rng);
        const auto coeffs = random_vec(n_modes, rng);
        const auto density = random_vec(n_nodes, rng);

        std::vector<double> a(n_nodes), b(n_nodes);
        kernels::synthesize_serial(table, n_modes, n_nodes, coeffs, a);
        kernels::synthesize_parallel(table, n_modes, n_nodes, coeffs, b);
        CHECK(a == b);

        std::vector<double> la(n_modes), lb(n_modes);
        kernels::assemble_load_serial(table, n_modes, n_nodes, density, la);
        kernels::assemble_load_parallel(table, n_modes, n_nodes, density, lb);
        CHECK(la == lb);

        std::vector<double> fa(n_nodes), fb(n_nodes);
        kernels::pflux_density_serial(density, density, 2.5, fa);
        kernels::pflux_density_parallel(density, density, 2.5, fb);
        CHECK(fa == fb);

        // The dispatch wrapper must agree with the serial reference no matter
        // which Exec it is given.
        std::vector<double> c(n_nodes);
        kernels::synthesize(table, n_modes, n_nodes, coeffs, c,
                            kernels::Exec::Parallel);
        CHECK(a == c);
    }
}

TEST_CASE("synthesize computes the mode sum") {
    // two modes, three nodes, hand-checked
    const std::vector<double> table = {1.0, 2.0, 3.0, 10.0, 20.0, 30.0};
    const std::vector<double> coeffs = {2.0, -1.0};
    std::vector<double> out(3);
    kernels::synthesize(table, 2, 3, coeffs, out, kernels::Exec::Serial);
    CHECK(out[0] == -8.0);
    CHECK(out[1] == -16.0);
    CHECK(out[2] == -24.0);

    std::vector<double> load(2);
    const std::vector<double> density = {1.0, 1.0, 1.0};
    kernels::assemble_load(table, 2, 3, density, load, kernels::Exec::Serial);
    CHECK(load[0] == 6.0);
    CHECK(load[1] == 60.0);
}

TEST_CASE("pflux density applies |g|^(p-2) g with weights") {
    const std::vector<double> grad = {4.0, -4.0, 0.0};
    const std::vector<double> weight = {2.0, 1.0, 1.0};
    std::vector<double> out(3);
    kernels::pflux_density(grad, weight, 2.5, out, kernels::Exec::Serial);
    CHECK(out[0] == doctest::Approx(2.0 * 8.0).epsilon(1e-15));  // 2 * 4^1.5
    CHECK(out[1] == doctest::Approx(-8.0).epsilon(1e-15));
    CHECK(out[2] == 0.0);
}
