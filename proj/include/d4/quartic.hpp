#pragma once

// A single quartic field K = Q(sqrt(g + h sqrt(base))) inside a fixed
// biquadratic resolvent: Galois classification (Klein four / cyclic /
// dihedral by the square / base*square / neither trichotomy on g^2 - h^2
// base), discriminant bound, the two extended quadratic fields, subfield
// lattice, and the D4 conjugacy-class data used by the Frobenius scan.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "d4/arith.hpp"
#include "d4/common.hpp"
#include "d4/normcond.hpp"

namespace d4 {

// ---------------------------------------------------------------------------
// biquadratic context
// ---------------------------------------------------------------------------

// The fixed resolvent Q(sqrt(a), sqrt(b)) with its three quadratic subfields
// Q(sqrt(a)), Q(sqrt(b)), Q(sqrt(ab)/xi) and their fundamental discriminants.
struct BiquadraticContext {
    i64 a, b;
    i64 xi;       // gcd(|a|, |b|)
    i64 c3;       // ab/xi^2, square-free
    i64 disc_a, disc_b, disc_c3;
    i64 q_max;    // max of the three |discriminants|

    static BiquadraticContext make(i64 a, i64 b);
    // the square-free generator of the third quadratic field, given a
    // (base, target) pair drawn from {a, b, c3}
    i64 remaining_quadratic(i64 base, i64 target) const;
};

enum class GaloisType { K4, C4, D4 };
const char* galois_type_name(GaloisType t);

// thrown by classify_galois when the quartic polynomial factors over Q
struct reducible_error : domain_error {
    explicit reducible_error(const std::string& msg) : domain_error(msg) {}
};

// Trichotomy on w = g^2 - h^2 base (reducibility reported separately):
// K4 iff w is a perfect square, C4 iff w = base * square, D4 otherwise.
GaloisType classify_galois(const SquarefreeInt& base, const mpz_class& g, const mpz_class& h);

// ---------------------------------------------------------------------------
// conjugacy classes of D4 = <r, s | r^4 = s^2 = 1, srs = r^-1>
// ---------------------------------------------------------------------------

enum class D4Class { ID, R2, R, S, RS };
inline constexpr std::array<D4Class, 5> all_classes{D4Class::ID, D4Class::R2, D4Class::R,
                                                    D4Class::S, D4Class::RS};

struct ConjugacyClass {
    D4Class label;
    const char* name;
    int size;          // 1, 1, 2, 2, 2
    int order;         // order of a representative element
    int fixed_points;  // fixed letters in the action on the four roots
    std::array<int, 3> symbol_pattern;  // chi at (F1, F2, F3) discriminants
    std::array<int, 3> cycle_shape;     // (#1-cycles, #2-cycles, #4-cycles)
};

const ConjugacyClass& conjugacy_class(D4Class c);
const char* class_name(D4Class c);
D4Class class_power(D4Class c, u64 m);  // class of the m-th power of a representative

// ---------------------------------------------------------------------------
// quartic fields
// ---------------------------------------------------------------------------

struct D4Field {
    BiquadraticContext ctx;
    i64 base;    // quadratic subfield generator (a, b, or ab/xi^2)
    i64 target;  // g^2 - h^2 base = n^2 target
    mpz_class g, h, n;
    mpz_class m;          // multiplier within the family (1 for a direct construction)
    mpz_class disc_bound; // 256 |base|^2 |target| n^2, an upper bound for |disc K|
    GaloisType galois_type;

    mpz_class poly_c0() const { return g * g - h * h * base; }  // constant coefficient
    mpz_class poly_c2() const { return -2 * g; }                // x^2 coefficient
    std::string poly_string() const;
};

// Q(sqrt(g0 m + h0 m sqrt(base))) for square-free m coprime to |base*target|.
// The scaled triple satisfies the same equation with n = n0 m, so the result
// is always dihedral under these preconditions.
D4Field build_field(const BiquadraticContext& ctx, const GeneratorTriple& triple,
                    const mpz_class& m);

// direct construction from generators (h may be negative; classification runs
// and reducible input is rejected); target is derived from g^2 - h^2 base
D4Field field_from_generators(const BiquadraticContext& ctx, i64 base, const mpz_class& g,
                              const mpz_class& h);

// the two extended quadratic fields {Q(sqrt(base)), Q(sqrt(target))}; only
// defined for dihedral fields
std::pair<i64, i64> extended_quadratics(const D4Field& K);

struct FieldIdentity {
    bool same_subfield;   // equal as subfields of a fixed algebraic closure
    bool isomorphic;      // equal up to isomorphism (conjugate generators allowed)
};

// exact integer test: theta1*theta2 (resp. theta1*conj(theta2)) a square in
// Q(sqrt(base)); both fields must share context and base
FieldIdentity is_same_field(const D4Field& K1, const D4Field& K2);

// subfield lattice of the Galois closure: symbolic generators keyed by the
// fixing subgroup of D4 = <r, s>
struct FieldLattice {
    struct Entry {
        std::string generator;  // e.g. "sqrt(3+1*sqrt(2))"
        std::string fixing_subgroup;
    };
    std::array<Entry, 4> quartics;
    std::array<Entry, 3> quadratics;  // F1, F2, F3
};
FieldLattice field_lattice(const D4Field& K);

// Tame ramification table for an odd prime with inertia generated by a given
// class: exponents of p in the discriminants of F1, F2, F3 (asserted columns)
// plus the K and closure columns carried as reference data only.
struct TameProfile {
    std::array<int, 3> quad_exponents;  // (F1, F2, F3)
    int exp_K;        // reference only
    int exp_closure;  // reference only
};
TameProfile tame_profile(const D4Field& K, D4Class inertia);

// JSON object {a, b, base, target, g, h, n, m, poly:[c0..c4], disc_bound,
// galois_type} with big integers rendered as decimal strings
std::string field_to_json(const D4Field& K);

}  // namespace d4
