#include <doctest.h>

#include <cmath>

#include "d4/lseries.hpp"
#include "oracles.hpp"

using namespace d4;

namespace {

D4Field field27() {
    auto ctx = BiquadraticContext::make(2, 7);
    return build_field(ctx, phi(SquarefreeInt(2), SquarefreeInt(7)), 1);
}

// independent symbolic oracle: multiply the explicit linear/quadratic factors
// with a tiny convolution, no shared code with the implementation
std::vector<long> convolve(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

}  // namespace

TEST_CASE("character table orthogonality") {
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(character_inner_product(i, j) == (i == j ? 8 : 0));
    // column relation: sum over characters of dim * chi(g) = 8 [g = id]
    const auto& T = d4_character_table();
    for (int c = 0; c < 5; ++c) {
        int acc = 0;
        for (int i = 0; i < 5; ++i) acc += T.dims[i] * T.value[i][c];
        CHECK(acc == (c == 0 ? 8 : 0));
    }
    // the three quadratic characters are exactly the symbol patterns
    for (int c = 0; c < 5; ++c) {
        auto pattern = conjugacy_class(all_classes[c]).symbol_pattern;
        CHECK(pattern[0] == T.value[1][c]);
        CHECK(pattern[1] == T.value[2][c]);
        CHECK(pattern[2] == T.value[3][c]);
    }
}

TEST_CASE("local Euler factors: all five classes, symbolic equality") {
    // class ID (f=1): both sides (1-T)^8
    {
        auto chk = local_euler_factors(D4Class::ID);
        CHECK(chk.equal);
        std::vector<long> expect{1};
        for (int k = 0; k < 8; ++k) expect = convolve(expect, {1, -1});
        CHECK(chk.field_side == expect);
        CHECK(chk.artin_side == expect);
    }
    // class R (f=4): field side (1-T^4)^2; artin side
    // (1-T)^2 (1+T)^2 (1+T^2)^2 assembled by the oracle
    {
        auto chk = local_euler_factors(D4Class::R);
        CHECK(chk.equal);
        auto expect = convolve({1, 0, 0, 0, -1}, {1, 0, 0, 0, -1});
        CHECK(chk.field_side == expect);
        auto oracle_artin = convolve(convolve({1, -1}, {1, -1}),
                                     convolve(convolve({1, 1}, {1, 1}),
                                              convolve({1, 0, 1}, {1, 0, 1})));
        CHECK(chk.artin_side == oracle_artin);
        CHECK(oracle_artin == expect);
    }
    // class R2 (f=2): field side (1-T^2)^4; artin side (1-T)^4 (1+2T+T^2)^2
    {
        auto chk = local_euler_factors(D4Class::R2);
        CHECK(chk.equal);
        std::vector<long> expect{1};
        for (int k = 0; k < 4; ++k) expect = convolve(expect, {1, 0, -1});
        CHECK(chk.field_side == expect);
        std::vector<long> oracle_artin{1};
        for (int k = 0; k < 4; ++k) oracle_artin = convolve(oracle_artin, {1, -1});
        oracle_artin = convolve(oracle_artin, convolve({1, 2, 1}, {1, 2, 1}));
        CHECK(chk.artin_side == oracle_artin);
    }
    for (D4Class c : {D4Class::S, D4Class::RS}) CHECK(local_euler_factors(c).equal);
}

TEST_CASE("local euler check over admissible primes of sample fields") {
    auto K = field27();
    auto primes = prime_sieve(10'000);
    int checked = 0;
    for (u64 p : primes) {
        if (p == 2 || p == 7) continue;
        CHECK(local_euler_check(K, p));
        ++checked;
    }
    CHECK(checked == static_cast<int>(primes.size()) - 2);
    CHECK_THROWS_AS(local_euler_check(K, 7), domain_error);
}

TEST_CASE("rho coefficients: values by class") {
    auto K = field27();
    auto coeffs = rho_coefficients(K, 300.0);
    for (auto [p, ap] : coeffs) {
        auto rec = artin_symbol(K, p);
        switch (*rec.cls) {
            case D4Class::ID: CHECK(ap == 2); break;
            case D4Class::R2: CHECK(ap == -2); break;
            default: CHECK(ap == 0);
        }
    }
    // p = 223 is a split prime: a_p = 2; p = 31 is central: a_p = -2
    bool saw223 = false, saw31 = false;
    for (auto [p, ap] : coeffs) {
        if (p == 223) { CHECK(ap == 2); saw223 = true; }
        if (p == 31) { CHECK(ap == -2); saw31 = true; }
    }
    CHECK(saw223);
    CHECK(saw31);
}

TEST_CASE("chebotarev report at x = 1e5: partition, psi, expected") {
    auto K = field27();
    auto rep = chebotarev_report(K, 1e5);
    // partition: admissible classes + excluded = all odd primes
    u64 total = rep.excluded;
    for (auto& [c, stat] : rep.classes) total += stat.count;
    CHECK(total == rep.pi_total);
    CHECK(rep.pi_total == prime_sieve(100'000).size() - 1);
    CHECK(rep.excluded == 1);
    CHECK(rep.excluded_primes == std::vector<u64>{7});

    // proportions near |C|/8 already at 1e5
    CHECK(rep.max_proportion_deviation < 0.02);

    // psi_C >= sum of log p over the class primes, and the loose upper bound
    double logx = std::log(1e5);
    u64 prime_powers = 0;
    for (u64 q = 2; q * q <= 100'000; ++q)
        if (is_prime(q))
            for (double v = static_cast<double>(q) * q; v <= 1e5; v *= static_cast<double>(q))
                ++prime_powers;
    for (auto& [c, stat] : rep.classes) {
        CHECK(stat.weighted <= (static_cast<double>(stat.count) + prime_powers) * logx);
        CHECK(stat.weighted > 0);
        CHECK(stat.expected == doctest::Approx(conjugacy_class(c).size / 8.0 *
                                               log_integral(1e5)));
    }

    // prime powers contribute to psi with the class of the powered Frobenius:
    // hand-check at x = 100 for the field (2,7)
    auto rep100 = chebotarev_report(K, 100.0);
    double psi_sum = 0;
    for (auto& [c, stat] : rep100.classes) psi_sum += stat.weighted;
    // all prime powers p^m <= 100, p odd admissible (p != 2, 7)
    double expect = 0;
    for (u64 p : prime_sieve(100)) {
        if (p == 2 || p == 7) continue;
        for (double v = static_cast<double>(p); v <= 100.0; v *= static_cast<double>(p))
            expect += std::log(static_cast<double>(p));
    }
    CHECK(psi_sum == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("chebotarev normalized errors are finite and reported") {
    auto K = field27();
    auto rep = chebotarev_report(K, 50'000.0);
    for (auto& [c, stat] : rep.classes) {
        CHECK(std::isfinite(stat.normalized_error));
        CHECK(stat.normalized_error >= 0);
    }
}
