#pragma once

// Parameter plumbing for the effective statements: the delta(eps0) rule, the
// exceptional-zero fallback, the zero-free-region boundary, the kappa
// thresholds with configurable absolute constants, the split-prime counter
// feeding the torsion-bound reporter, and ingestion of externally computed
// class groups. kappa1 overflows double for realistic configs, so threshold
// arithmetic runs in long double and log-scale values are first-class.

#include <optional>
#include <string>
#include <vector>

#include "d4/frobenius.hpp"
#include "d4/quartic.hpp"

namespace d4 {

struct AnalyticConfig {
    double eps0 = 0.1;      // in (0, 1/4)
    double C0 = 1.0;        // absolute constants with no numeric value in the
    double C1 = 1.0;        // underlying effective statements; configurable
    double C5 = 1.0;        // placeholders, clearly non-normative
    double beta_max = 0.75; // exceptional-zero fallback
};

struct ThresholdReport {
    long double delta;        // eps0 / (42 + 4 eps0)
    i64 q_max;
    long double C6;           // 21760 / C5
    long double T0;           // exp(C0/delta)/q_max - 3 (may overflow to inf)
    long double log_T0_plus_3;  // C0/delta - log q_max, always finite
    long double kappa1;       // 40 C6^(1/delta) delta^(-2/delta): usually inf
    long double log_kappa1;   // finite log-scale value
    long double kappa2;       // max{4/delta, 8/(C0 delta)} + 4
    long double kappa3;       // (480 C1)^(1/5) max{2 q_max, C6^(1/4) delta^(-1/2)}

    // log of the x threshold kappa1 exp[kappa2 (log log D^kappa3)^2] given log D
    long double log_x_threshold(long double log_D) const;
    // zero-free-region boundary sigma(t) = max{1 - C0/log(q_max(|t|+3)), 1-delta}
    long double zero_free_boundary(long double t, double C0) const;
};

// validates delta < 1 - beta_max and evaluates every formula exactly
ThresholdReport thresholds(const AnalyticConfig& cfg, const BiquadraticContext& ctx);

// ---------------------------------------------------------------------------
// split-prime counter and torsion reporter
// ---------------------------------------------------------------------------

struct EvReport {
    u64 M = 0;            // admissible split-completely primes up to the cutoff
    double cutoff = 0;    // disc_bound^eta (disc_bound stands in for the
                          // exact discriminant, from above)
    double eta = 0;
    u64 ell = 0;
    double implied_exponent = 0;  // 1/2 - log M / log disc_bound (NaN if M = 0)
    double target_exponent = 0;   // 1/2 - 1/(6 ell)
};

// requires 0 < eta < 1/(6 ell)
EvReport ev_split_count(const D4Field& K, u64 ell, double eta, const ScanOptions& opt = {});

// ---------------------------------------------------------------------------
// external class-group ingestion
// ---------------------------------------------------------------------------

// CSV schema: a,b,g,h,disc_exact,invariant_factors(semicolon-separated),provenance
struct ClassGroupRecord {
    i64 a, b;
    mpz_class g, h;
    mpz_class disc_exact;
    std::vector<mpz_class> invariant_factors;  // divisibility chain
    std::string provenance;
};

struct IngestEntry {
    ClassGroupRecord record;
    bool matched = false;           // (g, h) = m * (g0, h0) for an admissible m
    std::optional<mpz_class> m;
    mpz_class torsion_order;        // |Cl[ell]| = prod gcd(f, ell)
    double ratio = 0;               // log |Cl[ell]| / log disc_exact
    bool bound_violation = false;   // disc_exact above the order-lattice bound
    std::string note;
};

struct IngestReport {
    u64 ell = 0;
    double target_exponent = 0;
    std::vector<IngestEntry> entries;
    u64 matched = 0, unmatched = 0, flagged = 0;
};

// parses and validates the file; throws domain_error on schema violations
IngestReport ingest_class_groups(const std::string& path, u64 ell);

}  // namespace d4
