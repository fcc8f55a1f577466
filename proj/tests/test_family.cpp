#include <doctest.h>

#include <cmath>
#include <numeric>

#include "d4/family.hpp"
#include "oracles.hpp"

using namespace d4;

namespace {

FamilySlice slice27(double X) {
    auto ctx = BiquadraticContext::make(2, 7);
    auto triple = phi(SquarefreeInt(2), SquarefreeInt(7));
    return enumerate_family(ctx, triple, X);
}

}  // namespace

TEST_CASE("multiplier bound for (2,7)") {
    auto triple = phi(SquarefreeInt(2), SquarefreeInt(7));
    // 16 sqrt(2744) ~ 838.13: bound 1 at X = 1e6, 119 at X = 1e10
    CHECK(family_m_bound(triple, 1e6) == 1);
    CHECK(family_m_bound(triple, 1e10) == 119);
    CHECK(family_m_bound(triple, 1e9) == 37);
    CHECK(family_m_bound(triple, 1e8) == 11);
    // below (16 n0 sqrt(|a^3 b^3|))^2 = 702464 the slice is empty
    CHECK(family_m_bound(triple, 702463.0) == 0);
    CHECK(family_m_bound(triple, 702464.0) == 1);
}

TEST_CASE("enumerate_family at small X") {
    auto s = slice27(1e6);
    CHECK(s.m_bound == 1);
    REQUIRE(s.members.size() == 1);
    CHECK(s.members[0].poly_c2() == -6);
    CHECK(s.members[0].poly_c0() == 7);

    auto empty = slice27(1000.0);
    CHECK(empty.members.empty());
}

TEST_CASE("membership, count identity and ordering at X = 1e10") {
    auto s = slice27(1e10);
    CHECK(s.members.size() == 43);  // square-free m <= 119 coprime to 14
    // count identity against the Moebius-sum route
    auto cnt = count_squarefree_coprime(s.m_bound.get_d(), 14);
    CHECK(cnt.count == s.members.size());
    // every member obeys the discriminant cutoff, ascending in m
    mpz_class prev_m = 0;
    for (const auto& K : s.members) {
        CHECK(K.disc_bound <= 10'000'000'000);
        CHECK(K.m > prev_m);
        prev_m = K.m;
        CHECK(K.galois_type == GaloisType::D4);
    }
    // direct enumeration oracle for the same multiplier set
    u64 expect = 0;
    for (u64 m = 1; m <= 119; ++m)
        if (std::gcd(m, u64{14}) == 1 && oracle::squarefree_trial(m)) ++expect;
    CHECK(expect == 43);
}

TEST_CASE("pairwise distinctness inside a slice") {
    auto s = slice27(4e12);  // m_bound 2386, ~862 members
    REQUIRE(s.members.size() > 500);
    for (std::size_t i = 0; i < s.members.size(); ++i)
        for (std::size_t j = i + 1; j < s.members.size(); ++j) {
            auto id = is_same_field(s.members[i], s.members[j]);
            if (id.isomorphic || id.same_subfield) {
                MESSAGE("m1=", s.members[i].m.get_str(), " m2=", s.members[j].m.get_str());
                REQUIRE_FALSE(id.isomorphic);
            }
            // direct criterion: m1 m2 is never a perfect square
            CHECK_FALSE(is_perfect_square(s.members[i].m * s.members[j].m));
        }
}

TEST_CASE("square-free coprime density and residual bounds") {
    // |count - main| <= 3 sqrt(Z) for Z in {1e4..1e7}, q in {6, 14, 30}
    for (u64 q : {6ull, 14ull, 30ull})
        for (double Z : {1e4, 1e5, 1e6, 1e7}) {
            auto c = count_squarefree_coprime(Z, q);
            CHECK(std::abs(c.residual) <= 3.0 * std::sqrt(Z));
        }
    // density spot check: q = 14 gives (6/14) * (6/pi^2) * (4/3) * (49/48)
    auto c = count_squarefree_coprime(100.0, 14);
    double expect = (6.0 / 14.0) * (6.0 / (M_PI * M_PI)) * (4.0 / 3.0) * (49.0 / 48.0);
    CHECK(c.density == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("lower-bound report for (2,7)") {
    auto ctx = BiquadraticContext::make(2, 7);
    auto rep = verify_lower_bound(ctx, {1e8, 1e9, 1e10});
    REQUIRE(rep.points.size() == 3);
    CHECK_FALSE(rep.family_empty);
    // ratios positive and nondecreasing toward the closed-form limit
    CHECK(rep.points[0].ratio > 0);
    CHECK(rep.points[0].ratio <= rep.points[1].ratio);
    CHECK(rep.points[1].ratio <= rep.points[2].ratio);
    double limit = rep.points[2].limit;
    // limit = density / (16 sqrt(2744)); arithmetic oracle
    double density = (6.0 / 14.0) * (6.0 / (M_PI * M_PI)) * (4.0 / 3.0) * (49.0 / 48.0);
    CHECK(limit == doctest::Approx(density / (16.0 * std::sqrt(2744.0))).epsilon(1e-12));
    CHECK(std::abs(rep.points[2].ratio - limit) / limit < 0.10);
    // doubling X roughly doubles the count (X^(1/2) scaling)
    auto rep2 = verify_lower_bound(ctx, {1e10, 4e10});
    double growth = static_cast<double>(rep2.points[1].count) / rep2.points[0].count;
    CHECK(growth > 1.5);
    CHECK(growth < 2.5);

    // empty family flagged
    auto rep3 = verify_lower_bound(BiquadraticContext::make(3, 5), {1e8});
    CHECK(rep3.family_empty);
}

TEST_CASE("six-way decomposition flags") {
    auto six = six_decomposition(BiquadraticContext::make(2, 7));
    // co1 holds, so the first pair is nonempty on both sides
    CHECK(six[0].nonempty);
    CHECK(six[1].nonempty);
    // 14 = 4^2 - 2*1^2 is a norm of Q(sqrt 2), so the second pair is nonempty;
    // 14 is not a norm of Q(sqrt 7) (obstruction at 7), so the third is empty
    CHECK(six[2].nonempty);
    CHECK(six[3].nonempty);
    CHECK_FALSE(six[4].nonempty);
    CHECK_FALSE(six[5].nonempty);
    // flags come in equal pairs across the three equations
    CHECK(six[0].nonempty == six[1].nonempty);
    CHECK(six[2].nonempty == six[3].nonempty);
    CHECK(six[4].nonempty == six[5].nonempty);

    auto six35 = six_decomposition(BiquadraticContext::make(3, 5));
    for (const auto& f : six35) CHECK_FALSE(f.nonempty);

    // (3,11): pair (a,b) empty, pair (a, ab/xi^2) nonempty
    auto six311 = six_decomposition(BiquadraticContext::make(3, 11));
    CHECK_FALSE(six311[0].nonempty);
    CHECK(six311[2].nonempty);
}
