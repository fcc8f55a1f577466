#pragma once

// Norm criteria for biquadratic pairs and the canonical minimal generator
// triple. Whether t is a norm of Q(sqrt(a)) is decided locally (Hilbert
// symbols at the real place, 2, and the odd primes dividing a*t), which for
// the ternary form g^2 - a h^2 - t n^2 is equivalent to global solvability.
// The triple itself is constructed by ascending search over n, deciding each
// fixed value with Pell fundamental-solution bounds from the continued
// fraction of sqrt(a); search budgets fail loudly instead of silently.

#include <optional>

#include <gmpxx.h>

#include "d4/arith.hpp"
#include "d4/common.hpp"

namespace d4 {

struct NormCriterionResult {
    bool co1;  // b is a norm of Q(sqrt(a))
    bool co2;  // -b is a norm of Q(sqrt(a))
    bool co3;  // -a is a norm of Q(sqrt(b))
    bool condition1234;  // the disjunction
};

// Which defining equation the triple satisfies, as (quadratic base, target):
//   a_b:  g0^2 - h0^2 a = n0^2 b
//   a_c3: g0^2 - h0^2 a = n0^2 (ab/xi^2)
//   b_c3: g0^2 - h0^2 b = n0^2 (ab/xi^2)
enum class Subfamily { a_b, a_c3, b_c3 };

const char* subfamily_name(Subfamily s);

struct GeneratorTriple {
    mpz_class g0;  // >= 0
    mpz_class h0;  // > 0
    mpz_class n0;  // > 0, minimal; then h0 minimal; g0 the nonnegative root
    Subfamily subfamily;
    i64 base;    // square-free generator of the quadratic subfield
    i64 target;  // square-free integer with g0^2 - h0^2 base = n0^2 target
};

struct SearchBudget {
    i64 n_max = 10'000;            // largest n tried
    u64 scan_ops = 50'000'000;     // total perfect-square tests across the call
};

// Hilbert symbol (a, b)_v: place = 0 means the real place, otherwise a prime.
int hilbert_symbol(i64 a, i64 b, i64 place);

// Total local-global norm test: is t a norm of Q(sqrt(a))? No distinctness
// requirement; t = 1 and t = a are fine. a square-free, not 0 or 1; t nonzero.
bool norm_solvable(i64 t, i64 a);

// Spec-facing wrapper with the biquadratic preconditions (distinct arguments).
bool is_norm(const SquarefreeInt& b, const SquarefreeInt& a);

NormCriterionResult check_condition_1234(const SquarefreeInt& a, const SquarefreeInt& b);

// gcd(|a|,|b|) and ab/xi^2 for a valid pair
i64 xi_of(i64 a, i64 b);
i64 third_generator(i64 a, i64 b);  // ab/xi^2 (square-free for square-free a, b)

// fundamental solution of u^2 - D v^2 = 1, D >= 2 nonsquare
struct PellUnit {
    mpz_class u, v;
};
PellUnit pell_fundamental(i64 D, u64 max_iterations = 1'000'000);

// least h > 0 with N + a h^2 a perfect square, or nullopt if none exists;
// `unit` must be the Pell unit for a when a > 0
std::optional<mpz_class> minimal_h(i64 a, const mpz_class& N, const PellUnit* unit,
                                   const SearchBudget& budget, u64& ops);

// The triple with n minimal, then h minimal, then g >= 0 unique, satisfying
// g^2 - h^2 a = n^2 target. Throws domain_error("unsolvable") when target is
// not a norm of Q(sqrt(a)), budget_error when the search budget runs out.
GeneratorTriple minimal_triple(const SquarefreeInt& a, i64 target,
                               const SearchBudget& budget = {});

// Dispatch per the subfamily construction: (a,b) if co1 holds, else
// (a, ab/xi^2) if that family is nonempty, else (b, ab/xi^2).
// Throws domain_error("empty-family") when condition 1234 fails.
GeneratorTriple phi(const SquarefreeInt& a, const SquarefreeInt& b,
                    const SearchBudget& budget = {});

}  // namespace d4
