#pragma once

// Independent test oracles. Everything here is deliberately naive (trial
// division, exhaustive search, quadrature) and shares no code with the
// implementation paths it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __uint128_t;

// mu(n) by full trial division
inline int moebius_trial(u64 n) {
    if (n == 1) return 1;
    int factors = 0;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            ++factors;
        }
    }
    if (n > 1) ++factors;
    return (factors % 2 == 0) ? 1 : -1;
}

inline bool squarefree_trial(u64 n) { return moebius_trial(n) != 0; }

// plain bool-vector Eratosthenes (the production sieve is segmented)
inline std::vector<u64> simple_sieve(u64 x) {
    std::vector<char> comp(x + 1, 0);
    std::vector<u64> primes;
    for (u64 i = 2; i <= x; ++i) {
        if (comp[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= x; j += i) comp[j] = 1;
    }
    return primes;
}

// quadratic residues mod an odd prime, by squaring all residues
inline std::vector<char> qr_table(u64 p) {
    std::vector<char> qr(p, 0);
    for (u64 x = 0; x < p; ++x) qr[(x * x) % p] = 1;
    return qr;
}

inline u64 poly_eval_mod(const std::vector<u64>& coeffs, u64 x, u64 p) {
    u64 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = (static_cast<u128>(acc) * x + *it) % p;
    return acc;
}

inline int root_count_mod(const std::vector<u64>& coeffs, u64 p) {
    int roots = 0;
    for (u64 x = 0; x < p; ++x)
        if (poly_eval_mod(coeffs, x, p) == 0) ++roots;
    return roots;
}

// Exhaustive factor-degree multiset of a monic quartic mod a small odd prime:
// counts linear roots, then trial-divides by every monic quadratic.
// Returns pairs (degree, count) sorted by degree, or nullopt when the input
// has a repeated factor.
inline std::optional<std::vector<std::pair<int, int>>> quartic_pattern_exhaustive(
    u64 c0, u64 c1, u64 c2, u64 c3, u64 p) {
    std::vector<u64> f{c0 % p, c1 % p, c2 % p, c3 % p, 1};

    // remainder of f by monic quadratic x^2 + bx + a, tracking the quotient
    auto divide_by_quadratic = [&](const std::vector<u64>& poly, u64 a, u64 b)
        -> std::optional<std::vector<u64>> {
        std::vector<u64> rem(poly);
        std::vector<u64> quot(poly.size() >= 3 ? poly.size() - 2 : 0, 0);
        for (int i = static_cast<int>(poly.size()) - 1; i >= 2; --i) {
            u64 lead = rem[i];
            if (lead == 0) continue;
            quot[i - 2] = lead;
            rem[i] = 0;
            rem[i - 1] = (rem[i - 1] + p - (static_cast<u128>(lead) * b) % p) % p;
            rem[i - 2] = (rem[i - 2] + p - (static_cast<u128>(lead) * a) % p) % p;
        }
        if (rem[0] == 0 && rem[1] == 0) return quot;
        return std::nullopt;
    };

    // linear roots with multiplicity via repeated synthetic division
    std::vector<u64> work = f;
    int linear = 0;
    bool repeated = false;
    for (u64 r = 0; r < p && work.size() > 1; ++r) {
        int mult = 0;
        while (work.size() > 1 && poly_eval_mod(work, r, p) == 0) {
            std::vector<u64> q(work.size() - 1, 0);
            u64 carry = 0;
            for (int i = static_cast<int>(work.size()) - 1; i >= 1; --i) {
                carry = (static_cast<u128>(carry) * r + work[i]) % p;
                q[i - 1] = carry;
            }
            work = q;
            ++mult;
        }
        if (mult >= 2) repeated = true;
        linear += mult;
    }
    if (repeated) return std::nullopt;

    int quadratic = 0;
    bool more = true;
    while (more && work.size() > 3) {
        more = false;
        for (u64 a = 0; a < p && !more; ++a)
            for (u64 b = 0; b < p && !more; ++b) {
                // skip reducible quadratics: they would double-count roots
                u64 disc = (static_cast<u128>(b) * b + 4 * (p - a % p)) % p;
                bool reducible = false;
                for (u64 s = 0; s < p; ++s)
                    if ((s * s) % p == disc) { reducible = true; break; }
                if (reducible) continue;
                auto q = divide_by_quadratic(work, a, b);
                if (q) {
                    // repeated irreducible quadratic?
                    if (q->size() > 2 && divide_by_quadratic(*q, a, b)) return std::nullopt;
                    work = *q;
                    ++quadratic;
                    more = true;
                }
            }
    }
    int rest = static_cast<int>(work.size()) - 1;
    if (rest == 2) {
        // all roots were stripped first, so a leftover quadratic is irreducible
        ++quadratic;
        rest = 0;
    }
    std::vector<std::pair<int, int>> pattern;
    if (linear) pattern.emplace_back(1, linear);
    if (quadratic) pattern.emplace_back(2, quadratic);
    if (rest > 0) pattern.emplace_back(rest, 1);
    std::sort(pattern.begin(), pattern.end());
    return pattern;
}

// adaptive Simpson quadrature of int_2^x dt/log t
inline double li_quadrature(double x) {
    std::function<double(double, double, double, double, double, double)> rec =
        [&](double a, double b, double fa, double fb, double fm, double eps) -> double {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        double flm = 1.0 / std::log(lm), frm = 1.0 / std::log(rm);
        double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if (std::abs(left + right - whole) < 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return rec(a, m, fa, fm, flm, eps / 2) + rec(m, b, fm, fb, frm, eps / 2);
    };
    if (x <= 2.0) return 0.0;
    double fa = 1.0 / std::log(2.0), fb = 1.0 / std::log(x),
           fm = 1.0 / std::log(0.5 * (2.0 + x));
    return rec(2.0, x, fa, fb, fm, 1e-12 * (x - 2.0));
}

// smallest solution (g, h) of g^2 - a h^2 = N with h in [1, hmax], g >= 0
inline std::optional<std::pair<mpz_class, mpz_class>> norm_form_search(
    i64 a, const mpz_class& N, u64 hmax) {
    for (u64 h = 1; h <= hmax; ++h) {
        mpz_class g2 = N + a * mpz_class(static_cast<unsigned long>(h)) * h;
        if (g2 < 0) continue;
        if (mpz_perfect_square_p(g2.get_mpz_t())) {
            mpz_class g;
            mpz_sqrt(g.get_mpz_t(), g2.get_mpz_t());
            return std::make_pair(g, mpz_class(static_cast<unsigned long>(h)));
        }
    }
    return std::nullopt;
}

}  // namespace oracle
