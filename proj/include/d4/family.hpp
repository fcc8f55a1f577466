#pragma once

// Family enumeration for a fixed biquadratic resolvent: the admissible
// multiplier set {m square-free, coprime to |base*target|, m below the
// discriminant cutoff}, the enumerated fields K_[m], the square-free coprime
// counting function with its exact density, and the X^(1/2) lower-bound
// report. The (base, target) pair comes from the dispatched subfamily of the
// generator triple, so the same formulas serve all six subfamilies.

#include <array>
#include <functional>
#include <vector>

#include "d4/quartic.hpp"

namespace d4 {

struct FamilySlice {
    BiquadraticContext ctx;
    GeneratorTriple triple;
    double X = 0;
    mpz_class m_bound;  // largest admissible m: 256 n0^2 |base^3 target^3| m^2 <= X
    std::vector<D4Field> members;  // ascending in m
};

// largest m with 256 n0^2 |base target|^3 ... see above; exact integer fixup
mpz_class family_m_bound(const GeneratorTriple& triple, double X);

FamilySlice enumerate_family(const BiquadraticContext& ctx, const GeneratorTriple& triple,
                             double X, std::size_t max_members = 5'000'000);

// visit admissible multipliers m <= bound in ascending order without
// materializing fields
void for_admissible_multipliers(const GeneratorTriple& triple, const mpz_class& bound,
                                const std::function<void(u64)>& visit);

struct SquarefreeCoprimeCount {
    u64 count;         // exact, by the Moebius identity
    double density;    // phi(q)/(q zeta(2)) * prod_{p|q} (1 - p^-2)^-1
    double main_term;  // density * Z
    double residual;   // count - main_term
};
SquarefreeCoprimeCount count_squarefree_coprime(double Z, u64 q);

struct LowerBoundPoint {
    double X;
    u64 count;       // |T(X)| = number of admissible m
    double ratio;    // count / sqrt(X)
    double limit;    // density / (16 n0 sqrt(|base^3 target^3|))
};

struct LowerBoundReport {
    bool family_empty = false;
    std::vector<LowerBoundPoint> points;
};

LowerBoundReport verify_lower_bound(const BiquadraticContext& ctx,
                                    const std::vector<double>& X_list);

// the six subfamilies (base, target) with their nonemptiness flags; flags come
// in equal pairs across the three defining equations
struct SubfamilyFlag {
    const char* label;
    i64 base;
    i64 target;
    bool nonempty;
};
std::array<SubfamilyFlag, 6> six_decomposition(const BiquadraticContext& ctx);

}  // namespace d4
