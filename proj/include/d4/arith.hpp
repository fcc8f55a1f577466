#pragma once

// Exact integer and elementary analytic primitives shared by all modules:
// square-free tests and sieves, Moebius function, Kronecker symbol, fundamental
// discriminants, prime sieving, distinct-degree factorization mod p, and the
// logarithmic integral Li(x) = int_2^x dt/log t.
//
// Everything here is pure and re-entrant; sieve outputs are immutable after
// construction and safe to share across threads.

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "d4/common.hpp"

namespace d4 {

// Default memory budget for sieves (bytes).
inline constexpr std::size_t default_sieve_budget = std::size_t{1} << 31;

// ---------------------------------------------------------------------------
// square-free integers
// ---------------------------------------------------------------------------

// True iff no prime squared divides |n|. Rejects n = 0.
// Complete for the full int64 range: trial division up to 2.1e6 leaves a
// cofactor with at most two prime factors, settled by square/prime tests.
bool is_squarefree(i64 n);

// A nonzero square-free integer, != 0 and != 1 (quadratic field generator).
class SquarefreeInt {
  public:
    explicit SquarefreeInt(i64 v);
    i64 value() const { return v_; }
    operator i64() const { return v_; }

  private:
    i64 v_;
};

// mu(m) for 0 <= m <= Z (index 0 is unused, set to 0).
std::vector<signed char> moebius_sieve(u64 Z, std::size_t budget_bytes = default_sieve_budget);

// Count of square-free m <= Z with gcd(m, q) = 1, by the Moebius identity
// sum_{d <= sqrt(Z), (d,q)=1} mu(d) * #{m' <= Z/d^2 : (m',q)=1}.
u64 squarefree_coprime_count(double Z, u64 q);

// Euler phi of q > 0 by trial factorization.
u64 euler_phi(u64 q);

// Distinct prime factors of |n| (n != 0), ascending. Throws budget_error when
// trial division up to `trial_bound` plus a primality test cannot finish the
// factorization (cofactor is neither 1, prime, nor a prime power).
std::vector<i64> prime_factors(i64 n, i64 trial_bound = 2'200'000);

// ---------------------------------------------------------------------------
// Kronecker symbol and fundamental discriminants
// ---------------------------------------------------------------------------

// Complete Kronecker extension (any d, any n, including n <= 0 and p = 2).
int kronecker(i64 d, i64 n);

// d = c if c = 1 mod 4, else 4c; the discriminant of Q(sqrt(c)).
struct FundamentalDiscriminant {
    i64 d;
    i64 source;  // the square-free c it came from
};
FundamentalDiscriminant fundamental_discriminant(const SquarefreeInt& c);
i64 fundamental_discriminant_of(i64 c);  // same rule, unchecked input

// ---------------------------------------------------------------------------
// primes
// ---------------------------------------------------------------------------

bool is_prime(u64 n);  // deterministic Miller-Rabin for the u64 range

// All primes <= x, ascending, via a segmented Eratosthenes sieve.
std::vector<u64> prime_sieve(u64 x, std::size_t budget_bytes = default_sieve_budget);

// ---------------------------------------------------------------------------
// polynomial arithmetic over prime fields
// ---------------------------------------------------------------------------

// Dense polynomial over F_p, p an odd prime. Coefficients in [0, p), ascending
// degree, leading coefficient nonzero (the zero polynomial has empty coeffs).
struct PolyModP {
    u64 p = 0;
    std::vector<u64> coeffs;

    PolyModP() = default;
    PolyModP(u64 p_, std::vector<u64> c);  // validates and normalizes
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Distinct-degree factorization: multiset of (irreducible factor degree,
// count), sorted by degree. Requires square-free input; a nontrivial
// gcd(f, f') raises domain_error.
std::vector<std::pair<int, int>> factor_mod_p(const PolyModP& f);

// ---------------------------------------------------------------------------
// logarithmic integral
// ---------------------------------------------------------------------------

// Li(x) = int_2^x dt/log t for x >= 2 (Li(2) = 0), relative accuracy 1e-9.
double log_integral(double x);

// ---------------------------------------------------------------------------
// small helpers
// ---------------------------------------------------------------------------

u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 a, u64 e, u64 m);
bool is_perfect_square(const mpz_class& n);
mpz_class isqrt(const mpz_class& n);  // floor sqrt, n >= 0

}  // namespace d4
