#pragma once

// The Artin symbol at admissible primes: the three quadratic Kronecker
// characters pin the image of Frobenius in the Klein quotient, the quartic's
// root count mod p separates the two central classes, and the full
// factor-degree multiset cross-checks every assignment against the class
// cycle type. Per-prime work runs through the batch kernels; the scan is
// block-parallel with a deterministic, p-ordered output.

#include <functional>
#include <optional>
#include <vector>

#include "d4/kernels.hpp"
#include "d4/quartic.hpp"

namespace d4 {

struct FrobeniusRecord {
    u64 p;
    int chi1, chi2, chi3;  // Kronecker at the discriminants of F1, F2, F3
    int root_count;        // roots of the defining quartic mod p (-1 if not computed)
    std::optional<D4Class> cls;
    bool admissible;       // p odd, not dividing 2 * base * target * h * n
};

struct ScanOptions {
    int threads = 0;             // 0: hardware default, env D4_THREADS overrides
    u64 max_x = 2'000'000'000;   // resource guard
};

int resolve_thread_count(int requested);  // flag > env > hardware

// single-prime Artin symbol; throws domain_error("inadmissible") for excluded
// primes and inconsistent_error if the cycle-type cross-check fails
FrobeniusRecord artin_symbol(const D4Field& K, u64 p);

// one record per odd prime <= x in ascending order; inadmissible primes are
// carried with admissible = false and no class
std::vector<FrobeniusRecord> scan_primes(const D4Field& K, double x, const ScanOptions& opt = {});

// streaming variant: records are visited in ascending p order regardless of
// the thread count
void scan_primes_visit(const D4Field& K, double x,
                       const std::function<void(const FrobeniusRecord&)>& visit,
                       const ScanOptions& opt = {});

}  // namespace d4
