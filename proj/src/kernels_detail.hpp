#pragma once

// Shared between the kernel backends: the degree of gcd(x^q - x, f) read off
// from the parity form x^q = u x + v x^3 (plain residues). f(0) = c0 != 0, so
// the common factor x drops and the question is whether w = v x^2 + (u-1)
// divides f; f mod w is constant with numerator (u-1)^2 - c2(u-1)v + c0 v^2.

#include "d4/common.hpp"

namespace d4::kernels::detail {

inline int gcd_w_degree(u64 p, u64 c2, u64 c0, u64 u, u64 v) {
    u64 ud = (u >= 1) ? u - 1 : p - 1;
    if (v == 0) return ud == 0 ? 4 : 0;
    u64 t1 = static_cast<u64>(static_cast<u128>(ud) * ud % p);
    u64 t2 = static_cast<u64>(static_cast<u128>(c2) * ud % p * v % p);
    u64 t3 = static_cast<u64>(static_cast<u128>(c0) * v % p * v % p);
    u64 e = (t1 + p - t2) % p;
    e = (e + t3) % p;
    return e == 0 ? 2 : 0;
}

}  // namespace d4::kernels::detail
