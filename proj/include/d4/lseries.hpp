#pragma once

// Chebotarev statistics against the Li(x) benchmark and local verification of
// the degree-8 zeta factorization: the product of the five irreducible Artin
// factors at an admissible prime must equal the local factor read off the
// residue degrees (order of the Frobenius class, 8/f entries).

#include <array>
#include <map>
#include <vector>

#include "d4/frobenius.hpp"
#include "d4/quartic.hpp"

namespace d4 {

// ---------------------------------------------------------------------------
// character table of D4
// ---------------------------------------------------------------------------

// rows: trivial, the three quadratic characters (kernels <r>, <r^2,s>,
// <r^2,rs>), and the faithful 2-dimensional representation
struct D4CharacterTable {
    static constexpr int nchars = 5;
    std::array<const char*, nchars> names{"triv", "chi1", "chi2", "chi3", "rho"};
    std::array<int, nchars> dims{1, 1, 1, 1, 2};
    // value[character][class], classes ordered ID, R2, R, S, RS
    std::array<std::array<int, 5>, nchars> value{{
        {1, 1, 1, 1, 1},
        {1, 1, 1, -1, -1},
        {1, 1, -1, 1, -1},
        {1, 1, -1, -1, 1},
        {2, -2, 0, 0, 0},
    }};
    // determinant character of rho (needed for its degree-2 Euler factor)
    std::array<int, 5> rho_det{1, 1, 1, -1, -1};
};

const D4CharacterTable& d4_character_table();

// sum over classes with sizes of chi_i * chi_j (8 iff i = j)
int character_inner_product(int i, int j);

// ---------------------------------------------------------------------------
// local Euler factor identity
// ---------------------------------------------------------------------------

// Both sides as integer polynomials in T of degree 8 (denominators of the
// inverse local factors): prod over characters of det(1 - rho(Frob) T)^dim
// versus (1 - T^f)^(8/f) with f the order of the class.
struct EulerFactorCheck {
    std::vector<long> artin_side;  // coefficients, ascending
    std::vector<long> field_side;
    bool equal;
};

EulerFactorCheck local_euler_factors(D4Class cls);

// evaluates the identity at an admissible prime of K (class computed by the
// Artin symbol); throws domain_error for inadmissible p
bool local_euler_check(const D4Field& K, u64 p);

// ---------------------------------------------------------------------------
// Chebotarev report
// ---------------------------------------------------------------------------

struct ClassStat {
    u64 count = 0;            // pi_C(x)
    double weighted = 0;      // psi_C(x): log p over prime powers p^m <= x
    double expected = 0;      // (|C|/8) Li(x)
    double normalized_error = 0;  // |pi_C - expected| / ((|C|/8) x / log^2 x)
    double proportion = 0;    // pi_C / (pi(x) - 1 - excluded)
};

struct ChebotarevReport {
    double x = 0;
    u64 pi_total = 0;   // number of odd primes <= x
    u64 excluded = 0;   // inadmissible odd primes
    std::vector<u64> excluded_primes;  // the finite per-field exclusion set
    std::map<D4Class, ClassStat> classes;
    double max_proportion_deviation = 0;  // max over classes |prop - |C|/8|
};

ChebotarevReport chebotarev_report(const D4Field& K, double x, const ScanOptions& opt = {});

// (p, a_p) with a_p the trace of the 2-dimensional representation at Frobenius
std::vector<std::pair<u64, int>> rho_coefficients(const D4Field& K, double x,
                                                  const ScanOptions& opt = {});

}  // namespace d4
