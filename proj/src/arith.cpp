#include "d4/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace d4 {

// ---------------------------------------------------------------------------
// square-free
// ---------------------------------------------------------------------------

bool is_squarefree(i64 n) {
    if (n == 0) throw domain_error("is_squarefree: n must be nonzero");
    u64 m = (n < 0) ? -static_cast<u64>(n) : static_cast<u64>(n);
    if (m <= 3) return true;
    if (m % 4 == 0) return false;
    if (m % 2 == 0) m /= 2;
    // After removing all prime factors d <= 2.1e6 the cofactor has at most two
    // prime factors (2.1e6^3 > 2^63), so square/prime tests finish the job.
    for (u64 d = 3; d <= 2'100'000 && d * d <= m; d += 2) {
        if (m % d == 0) {
            m /= d;
            if (m % d == 0) return false;
        }
    }
    if (m == 1 || is_prime(m)) return true;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(m)));
    for (u64 s = (r > 1 ? r - 1 : 1); s <= r + 1; ++s)
        if (s * s == m) return false;
    return true;  // product of two distinct large primes
}

SquarefreeInt::SquarefreeInt(i64 v) : v_(v) {
    if (v == 0 || v == 1) throw domain_error("SquarefreeInt: value must not be 0 or 1");
    if (!is_squarefree(v)) {
        std::ostringstream os;
        os << "SquarefreeInt: " << v << " is not square-free";
        throw domain_error(os.str());
    }
}

std::vector<signed char> moebius_sieve(u64 Z, std::size_t budget_bytes) {
    if (Z < 1) throw domain_error("moebius_sieve: Z must be >= 1");
    if (Z + 1 > budget_bytes / (sizeof(signed char) + sizeof(u32)))
        throw budget_error("moebius_sieve: Z exceeds the configured memory budget");
    std::vector<signed char> mu(Z + 1, 0);
    std::vector<u32> spf(Z + 1, 0);  // smallest prime factor
    std::vector<u32> primes;
    mu[1] = 1;
    for (u64 i = 2; i <= Z; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<u32>(i);
            mu[i] = -1;
            primes.push_back(static_cast<u32>(i));
        }
        for (u32 p : primes) {
            u64 ip = i * p;
            if (p > spf[i] || ip > Z) break;
            spf[ip] = p;
            mu[ip] = (p == spf[i]) ? 0 : static_cast<signed char>(-mu[i]);
        }
    }
    return mu;
}

u64 euler_phi(u64 q) {
    u64 result = q;
    for (u64 p = 2; p * p <= q; ++p) {
        if (q % p == 0) {
            result -= result / p;
            while (q % p == 0) q /= p;
        }
    }
    if (q > 1) result -= result / q;
    return result;
}

namespace {

// #{m <= Y : gcd(m, q) = 1} by inclusion-exclusion over the primes of q.
u64 coprime_count_upto(u64 Y, const std::vector<i64>& qprimes) {
    u64 total = 0;
    u64 subsets = u64{1} << qprimes.size();
    for (u64 mask = 0; mask < subsets; ++mask) {
        u64 d = 1;
        bool overflow = false;
        for (std::size_t j = 0; j < qprimes.size(); ++j)
            if (mask & (u64{1} << j)) {
                d *= static_cast<u64>(qprimes[j]);
                if (d > Y) { overflow = true; break; }
            }
        if (overflow) continue;
        u64 term = Y / d;
        if (std::popcount(mask) % 2 == 0) total += term; else total -= term;
    }
    return total;
}

}  // namespace

u64 squarefree_coprime_count(double Z, u64 q) {
    if (Z < 1) return 0;
    if (q < 2) throw domain_error("squarefree_coprime_count: q must be >= 2");
    u64 Zi = static_cast<u64>(Z);
    auto qp = prime_factors(static_cast<i64>(q));
    u64 dmax = static_cast<u64>(std::sqrt(Z));
    while ((dmax + 1) * (dmax + 1) <= Zi) ++dmax;
    while (dmax * dmax > Zi) --dmax;
    auto mu = moebius_sieve(std::max<u64>(dmax, 1));
    i64 acc = 0;
    for (u64 d = 1; d <= dmax; ++d) {
        if (mu[d] == 0) continue;
        if (std::gcd(d, q) != 1) continue;
        u64 inner = coprime_count_upto(Zi / (d * d), qp);
        acc += static_cast<i64>(mu[d]) * static_cast<i64>(inner);
    }
    return static_cast<u64>(acc);
}

std::vector<i64> prime_factors(i64 n, i64 trial_bound) {
    if (n == 0) throw domain_error("prime_factors: n must be nonzero");
    u64 m = (n < 0) ? -static_cast<u64>(n) : static_cast<u64>(n);
    std::vector<i64> out;
    for (u64 d = 2; d <= static_cast<u64>(trial_bound) && d * d <= m; d = (d == 2 ? 3 : d + 2)) {
        if (m % d == 0) {
            out.push_back(static_cast<i64>(d));
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) {
        if (is_prime(m)) {
            out.push_back(static_cast<i64>(m));
        } else {
            u64 r = isqrt(mpz_class(static_cast<unsigned long>(m))).get_ui();
            if (r * r == m && is_prime(r)) {
                out.push_back(static_cast<i64>(r));
            } else {
                std::ostringstream os;
                os << "prime_factors: cannot complete factorization of " << n
                   << " with trial bound " << trial_bound;
                throw budget_error(os.str());
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Kronecker symbol
// ---------------------------------------------------------------------------

int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;  // (a / -1) = sign(a)
    }
    // factor 2^e out of n; each factor contributes (a/2)
    int e = std::countr_zero(static_cast<u64>(n));
    n >>= e;
    if (e & 1) {
        int am8 = static_cast<int>(((a % 8) + 8) % 8);
        if (am8 == 3 || am8 == 5) result = -result;
    }
    // now n odd > 0: binary Jacobi with quadratic reciprocity
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        int z = std::countr_zero(static_cast<u64>(a));
        a >>= z;
        if (z & 1) {
            int nm8 = static_cast<int>(n % 8);
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        if ((a % 4 == 3) && (n % 4 == 3)) result = -result;
        std::swap(a, n);
        a %= n;
    }
    return (n == 1) ? result : 0;
}

FundamentalDiscriminant fundamental_discriminant(const SquarefreeInt& c) {
    return {fundamental_discriminant_of(c.value()), c.value()};
}

i64 fundamental_discriminant_of(i64 c) {
    if (c > INT64_MAX / 4 || c < INT64_MIN / 4)
        throw domain_error("fundamental_discriminant: 4c overflows the 64-bit range");
    i64 r = ((c % 4) + 4) % 4;
    return (r == 1) ? c : 4 * c;
}

// ---------------------------------------------------------------------------
// primes
// ---------------------------------------------------------------------------

u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    for (u64 base : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(base, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> prime_sieve(u64 x, std::size_t budget_bytes) {
    if (x < 2) throw domain_error("prime_sieve: x must be >= 2");
    // rough memory estimate: pi(x) entries plus one segment
    double est = (x > 16) ? 1.3 * static_cast<double>(x) / std::log(static_cast<double>(x)) : 16.0;
    if (est * sizeof(u64) > static_cast<double>(budget_bytes))
        throw budget_error("prime_sieve: x exceeds the configured memory budget");

    std::vector<u64> primes;
    primes.reserve(static_cast<std::size_t>(est));

    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x)));
    while ((root + 1) * (root + 1) <= x) ++root;
    while (root * root > x) --root;
    std::vector<char> base(root + 1, 1);
    std::vector<u64> base_primes;
    for (u64 i = 2; i <= root; ++i) {
        if (!base[i]) continue;
        base_primes.push_back(i);
        for (u64 j = i * i; j <= root; j += i) base[j] = 0;
    }
    for (u64 p : base_primes)
        if (p <= x) primes.push_back(p);

    constexpr u64 segment = u64{1} << 20;
    std::vector<char> seg(segment);
    for (u64 lo = root + 1; lo <= x; lo += segment) {
        u64 hi = std::min(x, lo + segment - 1);
        std::fill(seg.begin(), seg.begin() + (hi - lo + 1), 1);
        for (u64 p : base_primes) {
            if (p * p > hi) break;
            u64 start = ((lo + p - 1) / p) * p;
            if (start < p * p) start = p * p;
            for (u64 j = start; j <= hi; j += p) seg[j - lo] = 0;
        }
        for (u64 i = lo; i <= hi; ++i)
            if (seg[i - lo]) primes.push_back(i);
    }
    return primes;
}

// ---------------------------------------------------------------------------
// polynomial arithmetic over F_p
// ---------------------------------------------------------------------------

namespace {

using Poly = std::vector<u64>;  // ascending coefficients

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + static_cast<u128>(a[i]) * b[j]) % p;
    }
    trim(c);
    return c;
}

// remainder of a by monic b
Poly poly_rem(Poly a, const Poly& b, u64 p) {
    trim(a);
    while (a.size() >= b.size()) {
        u64 lead = a.back();
        std::size_t shift = a.size() - b.size();
        if (lead != 0)
            for (std::size_t i = 0; i < b.size(); ++i) {
                u64 sub = mulmod_u64(lead, b[i], p);
                u64& t = a[shift + i];
                t = (t >= sub) ? t - sub : t + p - sub;
            }
        a.pop_back();
        trim(a);
        if (a.size() < b.size()) break;
    }
    return a;
}

Poly poly_make_monic(Poly f, u64 p) {
    trim(f);
    if (f.empty()) return f;
    u64 inv = powmod_u64(f.back(), p - 2, p);
    for (auto& c : f) c = mulmod_u64(c, inv, p);
    return f;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, poly_make_monic(b, p), p);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(a, p);
}

Poly poly_powmod(Poly base, u64 e, const Poly& mod, u64 p) {
    Poly result{1};
    base = poly_rem(std::move(base), mod, p);
    while (e) {
        if (e & 1) result = poly_rem(poly_mul(result, base, p), mod, p);
        base = poly_rem(poly_mul(base, base, p), mod, p);
        e >>= 1;
    }
    return result;
}

Poly poly_derivative(const Poly& f, u64 p) {
    Poly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mulmod_u64(f[i], i % p, p));
    trim(d);
    return d;
}

Poly poly_div_exact(const Poly& a, const Poly& b, u64 p) {
    // a / b for monic b dividing a
    Poly rem = a, q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    trim(rem);
    while (rem.size() >= b.size()) {
        u64 lead = rem.back();
        std::size_t shift = rem.size() - b.size();
        q[shift] = lead;
        for (std::size_t i = 0; i < b.size(); ++i) {
            u64 sub = mulmod_u64(lead, b[i], p);
            u64& t = rem[shift + i];
            t = (t >= sub) ? t - sub : t + p - sub;
        }
        trim(rem);
    }
    trim(q);
    return q;
}

}  // namespace

PolyModP::PolyModP(u64 p_, std::vector<u64> c) : p(p_), coeffs(std::move(c)) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) throw domain_error("PolyModP: p must be an odd prime");
    for (auto& x : coeffs) x %= p;
    trim(coeffs);
}

std::vector<std::pair<int, int>> factor_mod_p(const PolyModP& f) {
    if (f.degree() < 1) throw domain_error("factor_mod_p: polynomial must be nonconstant");
    u64 p = f.p;
    Poly work = poly_make_monic(f.coeffs, p);

    Poly d = poly_derivative(work, p);
    Poly g = poly_gcd(work, d, p);
    if (g.size() != 1)
        throw domain_error("factor_mod_p: input is not square-free (gcd(f, f') nontrivial)");

    std::vector<std::pair<int, int>> pattern;
    Poly h{0, 1};  // x
    int deg = static_cast<int>(work.size()) - 1;
    for (int k = 1; 2 * k <= deg; ++k) {
        h = poly_powmod(std::move(h), p, work, p);  // h = x^(p^k) mod work
        Poly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] >= 1) ? hx[1] - 1 : p - 1;  // h - x
        trim(hx);
        Poly gk = poly_gcd(work, hx, p);
        int dg = static_cast<int>(gk.size()) - 1;
        if (dg > 0) {
            pattern.emplace_back(k, dg / k);
            work = poly_div_exact(work, gk, p);
            h = poly_rem(std::move(h), work, p);
            deg = static_cast<int>(work.size()) - 1;
        }
    }
    if (static_cast<int>(work.size()) - 1 > 0)
        pattern.emplace_back(static_cast<int>(work.size()) - 1, 1);
    std::sort(pattern.begin(), pattern.end());
    return pattern;
}

// ---------------------------------------------------------------------------
// logarithmic integral
// ---------------------------------------------------------------------------

namespace {

constexpr double euler_gamma = 0.577215664901532860606512090082;

// Ei(z) for z > 0 via the everywhere-positive series gamma + ln z + sum z^k/(k*k!).
double exponential_integral(double z) {
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= z / k;
        double add = term / k;
        sum += add;
        if (add < 1e-17 * sum) break;
    }
    return euler_gamma + std::log(z) + sum;
}

}  // namespace

double log_integral(double x) {
    if (!(x >= 2.0)) throw domain_error("log_integral: x must be >= 2");
    static const double li2 = exponential_integral(std::log(2.0));
    return exponential_integral(std::log(x)) - li2;
}

// ---------------------------------------------------------------------------
// mpz helpers
// ---------------------------------------------------------------------------

bool is_perfect_square(const mpz_class& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

mpz_class isqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

}  // namespace d4
