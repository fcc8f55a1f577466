#include <doctest.h>

#include <map>
#include <vector>

#include "d4/family.hpp"
#include "d4/frobenius.hpp"
#include "oracles.hpp"

using namespace d4;

namespace {

D4Field field27() {
    auto ctx = BiquadraticContext::make(2, 7);
    return build_field(ctx, phi(SquarefreeInt(2), SquarefreeInt(7)), 1);
}

// twenty fields across several contexts (the lead field plus nineteen more)
std::vector<D4Field> sample_fields() {
    std::vector<D4Field> fields;
    auto add = [&](i64 a, i64 b, std::vector<i64> ms) {
        auto ctx = BiquadraticContext::make(a, b);
        auto triple = phi(SquarefreeInt(a), SquarefreeInt(b));
        for (i64 m : ms)
            fields.push_back(build_field(ctx, triple, m));
    };
    add(2, 7, {1, 3, 5, 11, 13});
    add(2, 17, {1, 3, 5});
    add(2, 23, {1, 3});
    add(3, 13, {1, 5, 7});
    add(-1, 5, {1, 3, 7});
    add(3, -1, {1, 5});
    add(3, 11, {1, 2});
    return fields;
}

std::vector<std::pair<int, int>> kernel_pattern(const FrobeniusRecord& rec, const D4Field& K) {
    // recompute the factor pattern via the generic factorizer for cross-checks
    u64 p = rec.p;
    u64 c0 = mpz_fdiv_ui(K.poly_c0().get_mpz_t(), p);
    u64 c2 = mpz_fdiv_ui(K.poly_c2().get_mpz_t(), p);
    return factor_mod_p(PolyModP(p, {c0, 0, c2, 0, 1}));
}

std::vector<std::pair<int, int>> class_cycle_pattern(D4Class c) {
    std::vector<std::pair<int, int>> out;
    const auto& shape = conjugacy_class(c).cycle_shape;
    if (shape[0]) out.emplace_back(1, shape[0]);
    if (shape[1]) out.emplace_back(2, shape[1]);
    if (shape[2]) out.emplace_back(4, shape[2]);
    return out;
}

}  // namespace

TEST_CASE("artin symbol frozen examples for x^4 - 6x^2 + 7") {
    auto K = field27();

    auto r5 = artin_symbol(K, 5);
    CHECK(r5.chi1 == 1);   // (56/5)
    CHECK(r5.chi2 == -1);  // (8/5)
    CHECK(r5.chi3 == -1);  // (28/5)
    REQUIRE(r5.cls.has_value());
    CHECK(*r5.cls == D4Class::R);
    CHECK(r5.root_count == 0);  // irreducible mod 5

    // p = 31: both 3 +- 8 are non-residues mod 31 (root oracle agrees), so the
    // split pattern is {2,2} and the class is the central involution
    auto r31 = artin_symbol(K, 31);
    CHECK(r31.chi1 == 1);
    CHECK(r31.chi2 == 1);
    CHECK(r31.chi3 == 1);
    CHECK(oracle::root_count_mod({7, 0, 31 - 6, 0, 1}, 31) == 0);
    REQUIRE(r31.cls.has_value());
    CHECK(*r31.cls == D4Class::R2);

    // p = 223: all characters split and the quartic has four roots
    auto r223 = artin_symbol(K, 223);
    CHECK(r223.chi1 == 1);
    CHECK(r223.chi2 == 1);
    CHECK(r223.chi3 == 1);
    CHECK(oracle::root_count_mod({7, 0, 223 - 6, 0, 1}, 223) == 4);
    REQUIRE(r223.cls.has_value());
    CHECK(*r223.cls == D4Class::ID);
    CHECK(r223.root_count == 4);

    // p = 41 splits in Q(sqrt 2) only partially: two roots, class S
    auto r41 = artin_symbol(K, 41);
    CHECK(*r41.cls == D4Class::S);
    CHECK(r41.root_count == 2);
    CHECK(r41.root_count == oracle::root_count_mod({7, 0, 41 - 6, 0, 1}, 41));

    CHECK_THROWS_AS(artin_symbol(K, 7), domain_error);  // 7 divides the target
    CHECK_THROWS_AS(artin_symbol(K, 2), domain_error);
    CHECK_THROWS_AS(artin_symbol(K, 9), domain_error);
}

TEST_CASE("scan to x = 10 for (2,7): records, skips, partition") {
    auto K = field27();
    auto recs = scan_primes(K, 10.0);
    REQUIRE(recs.size() == 3);  // pi(10) - 1: records for 3, 5, 7
    CHECK(recs[0].p == 3);
    CHECK(recs[1].p == 5);
    CHECK(recs[2].p == 7);
    CHECK(recs[0].admissible);
    CHECK(recs[1].admissible);
    CHECK_FALSE(recs[2].admissible);
    CHECK_FALSE(recs[2].cls.has_value());
    // p = 3: chi pattern (-1, -1, +1), class RS, f = x^4 + 1 mod 3 = {2,2}
    REQUIRE(recs[0].cls.has_value());
    CHECK(*recs[0].cls == D4Class::RS);
    CHECK(recs[0].root_count == 0);
}

TEST_CASE("partition identity and admissible counts at x = 1e5") {
    auto K = field27();
    auto recs = scan_primes(K, 1e5);
    auto primes = prime_sieve(100'000);
    CHECK(recs.size() == primes.size() - 1);
    std::map<D4Class, u64> counts;
    u64 excluded = 0;
    for (const auto& r : recs) {
        if (r.admissible)
            ++counts[*r.cls];
        else
            ++excluded;
    }
    CHECK(excluded == 1);  // only p = 7 is excluded for this field
    u64 total = excluded;
    for (auto& [c, n] : counts) total += n;
    CHECK(total == recs.size());
}

TEST_CASE("pattern/cycle consistency: lead field to 1e5, nineteen more to 1e4") {
    auto K = field27();
    u64 checked = 0;
    scan_primes_visit(K, 1e5, [&](const FrobeniusRecord& rec) {
        if (!rec.admissible) return;
        // the class cross-check already ran inside the scan; verify a sample
        // against the independent generic factorizer as well
        if (rec.p % 97 == 1 || rec.p < 1000) {
            auto pat = kernel_pattern(rec, K);
            REQUIRE(pat == class_cycle_pattern(*rec.cls));
        }
        ++checked;
    });
    CHECK(checked > 9000);

    for (const auto& K2 : sample_fields()) {
        scan_primes_visit(K2, 1e4, [&](const FrobeniusRecord& rec) {
            if (!rec.admissible) return;
            auto pat = kernel_pattern(rec, K2);
            if (pat != class_cycle_pattern(*rec.cls)) {
                MESSAGE("a=", K2.ctx.a, " b=", K2.ctx.b, " m=", K2.m.get_str(), " p=", rec.p);
                REQUIRE(pat == class_cycle_pattern(*rec.cls));
            }
        });
    }
}

TEST_CASE("quadratic-splitting consistency: chi2 = 1 iff x^2 - base has a root mod p") {
    auto K = field27();
    int spot = 0;
    scan_primes_visit(K, 20'000.0, [&](const FrobeniusRecord& rec) {
        if (!rec.admissible) return;
        bool has_root = false;
        for (u64 x = 0; x < rec.p; ++x)
            if ((x * x) % rec.p == ((K.base % static_cast<i64>(rec.p)) + rec.p) % rec.p) {
                has_root = true;
                break;
            }
        CHECK((rec.chi2 == 1) == has_root);
        ++spot;
    });
    CHECK(spot > 2000);
}

TEST_CASE("character product is trivial on the biquadratic field") {
    for (const auto& K : sample_fields()) {
        scan_primes_visit(K, 3000.0, [&](const FrobeniusRecord& rec) {
            if (!rec.admissible) return;
            CHECK(rec.chi1 * rec.chi2 * rec.chi3 == 1);
        });
    }
}

TEST_CASE("scan output is independent of the thread count") {
    auto K = field27();
    ScanOptions one;
    one.threads = 1;
    ScanOptions four;
    four.threads = 4;
    auto a = scan_primes(K, 50'000.0, one);
    auto b = scan_primes(K, 50'000.0, four);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].p == b[i].p);
        CHECK(a[i].admissible == b[i].admissible);
        CHECK(a[i].cls == b[i].cls);
        CHECK(a[i].root_count == b[i].root_count);
    }
}

TEST_CASE("scan budget guard") {
    auto K = field27();
    ScanOptions opt;
    opt.max_x = 1000;
    CHECK_THROWS_AS(scan_primes(K, 1e6, opt), budget_error);
}
