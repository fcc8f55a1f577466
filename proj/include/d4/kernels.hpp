#pragma once

// Batch splitting kernels for monic even quartics x^4 + c2 x^2 + c0 over many
// prime moduli at once. This is the hot inner loop of the Frobenius scan: for
// each prime it computes x^p mod f by Montgomery square-and-multiply (the even
// polynomial keeps every intermediate in a two-coefficient parity form) and
// reads off the number of distinct roots and irreducible quadratic factors.
//
// Backends: a scalar reference kernel (64-bit Montgomery, any odd p < 2^63)
// and an AVX2 variant (32-bit Montgomery, four primes per vector, p < 2^31),
// selected at runtime. The two are equivalence-tested against each other and
// against the generic distinct-degree factorizer in d4/arith.hpp.
//
// Contract per entry i: p[i] is an odd prime; c2[i], c0[i] are the reduced
// coefficients in [0, p); the quartic is square-free mod p (c0 != 0 and
// c2^2 != 4 c0 mod p). Output (roots, quads) determines the factor-degree
// multiset: {1^roots, 2^quads, (4 - roots - 2*quads) if positive}.

#include <cstddef>

#include "d4/common.hpp"

namespace d4::kernels {

struct QuarticSplit {
    unsigned char roots;  // distinct roots of f mod p: 0, 2 or 4
    unsigned char quads;  // irreducible quadratic factors: 0, 1 or 2
    bool operator==(const QuarticSplit&) const = default;
};

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);

// Backend chosen at startup: AVX2 when the CPU supports it, overridable with
// the environment variable D4_KERNEL=scalar|avx2.
Backend selected_backend();

void quartic_split_block_scalar(const u64* p, const u64* c2, const u64* c0,
                                std::size_t n, QuarticSplit* out);

// AVX2 lanes require p < 2^31; entries at or above that bound fall back to the
// scalar path internally. No-op (never selected) on non-x86 builds.
void quartic_split_block_avx2(const u64* p, const u64* c2, const u64* c0,
                              std::size_t n, QuarticSplit* out);

// dispatched entry point
void quartic_split_block(const u64* p, const u64* c2, const u64* c0,
                         std::size_t n, QuarticSplit* out);

bool avx2_available();

}  // namespace d4::kernels
