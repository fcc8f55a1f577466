#include "d4/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>

#include "kernels_detail.hpp"

namespace d4::kernels {

// ---------------------------------------------------------------------------
// scalar reference kernel: 64-bit Montgomery arithmetic
// ---------------------------------------------------------------------------

namespace {

struct Mont64 {
    u64 n;     // odd modulus < 2^63
    u64 ninv;  // -n^{-1} mod 2^64
    u64 r2;    // 2^128 mod n
    u64 one;   // 2^64 mod n

    explicit Mont64(u64 modulus) : n(modulus) {
        u64 x = n;  // Newton iteration for n^{-1} mod 2^64
        for (int i = 0; i < 5; ++i) x *= 2 - n * x;
        ninv = ~x + 1;
        one = (~u64{0} % n) + 1;  // 2^64 mod n, never n itself for odd n > 1
        r2 = static_cast<u64>((static_cast<u128>(one) << 64) % n);
    }

    u64 mul(u64 a, u64 b) const {
        u128 t = static_cast<u128>(a) * b;
        u64 m = static_cast<u64>(t) * ninv;
        u64 r = static_cast<u64>((t + static_cast<u128>(m) * n) >> 64);
        return r >= n ? r - n : r;
    }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= n ? s - n : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + n - b; }
    u64 to_mont(u64 a) const { return mul(a % n, r2); }
    u64 from_mont(u64 a) const { return mul(a, 1); }
};

// Two-coefficient parity representation of polynomials mod f = x^4 + c2 x^2 + c0:
// even state e0 + e1 x^2, odd state o0 x + o1 x^3. Reductions use
// x^4 = -c2 x^2 - c0, x^5 = -c2 x^3 - c0 x, x^6 = (c2^2 - c0) x^2 + c2 c0.
struct EvenQuarticCtx {
    Mont64 M;
    u64 c2, c0;        // Montgomery domain
    u64 c2sq_m_c0;     // c2^2 - c0
    u64 c2c0;          // c2 * c0

    EvenQuarticCtx(u64 p, u64 c2_plain, u64 c0_plain) : M(p) {
        c2 = M.to_mont(c2_plain);
        c0 = M.to_mont(c0_plain);
        c2sq_m_c0 = M.sub(M.mul(c2, c2), c0);
        c2c0 = M.mul(c2, c0);
    }

    void square_even(u64 e0, u64 e1, u64& r0, u64& r2) const {
        u64 t00 = M.mul(e0, e0), t01 = M.mul(e0, e1), t11 = M.mul(e1, e1);
        r0 = M.sub(t00, M.mul(c0, t11));
        r2 = M.sub(M.add(t01, t01), M.mul(c2, t11));
    }
    void square_odd(u64 o0, u64 o1, u64& r0, u64& r2) const {
        u64 t00 = M.mul(o0, o0), t01 = M.mul(o0, o1), t11 = M.mul(o1, o1);
        u64 t01_2 = M.add(t01, t01);
        r0 = M.sub(M.mul(t11, c2c0), M.mul(t01_2, c0));
        r2 = M.add(M.sub(t00, M.mul(t01_2, c2)), M.mul(t11, c2sq_m_c0));
    }
    void mul_odd_even(u64 o0, u64 o1, u64 e0, u64 e1, u64& r0, u64& r1) const {
        u64 t = M.mul(o1, e1);
        r0 = M.sub(M.mul(o0, e0), M.mul(c0, t));
        r1 = M.sub(M.add(M.mul(o0, e1), M.mul(o1, e0)), M.mul(c2, t));
    }
};

// x^p mod f in the parity form: returns odd state (u, v) with x^p = u x + v x^3.
void frobenius_poly(const EvenQuarticCtx& C, u64 p, u64& u, u64& v) {
    // right-to-left: acc = x (bit 0, p odd), base = x^2, squared each step
    u64 acc0 = C.M.one, acc1 = 0;  // x
    u64 b0 = 0, b1 = C.M.one;      // x^2
    int bits = 64 - std::countl_zero(p);
    for (int i = 1; i < bits; ++i) {
        u64 s0, s2;
        C.square_even(b0, b1, s0, s2);
        if ((p >> i) & 1) {
            u64 n0, n1;
            C.mul_odd_even(acc0, acc1, b0, b1, n0, n1);
            acc0 = n0;
            acc1 = n1;
        }
        b0 = s0;
        b1 = s2;
    }
    u = acc0;
    v = acc1;
}

}  // namespace

void quartic_split_block_scalar(const u64* p, const u64* c2, const u64* c0,
                                std::size_t n, QuarticSplit* out) {
    for (std::size_t i = 0; i < n; ++i) {
        EvenQuarticCtx C(p[i], c2[i], c0[i]);
        u64 um, vm;
        frobenius_poly(C, p[i], um, vm);
        u64 u = C.M.from_mont(um), v = C.M.from_mont(vm);

        int roots = detail::gcd_w_degree(p[i], c2[i], c0[i], u, v);
        unsigned char quads = 0;
        if (roots == 2) {
            quads = 1;
        } else if (roots == 0) {
            // x^(p^2) mod f = x^p composed with itself: u*xp + v*xp^3
            u64 a, b;  // (x^p)^2, even
            C.square_odd(um, vm, a, b);
            u64 w0, w1;  // (x^p)^3, odd
            C.mul_odd_even(um, vm, a, b, w0, w1);
            u64 U = C.M.add(C.M.mul(um, um), C.M.mul(vm, w0));
            u64 V = C.M.add(C.M.mul(um, vm), C.M.mul(vm, w1));
            int d2 = detail::gcd_w_degree(p[i], c2[i], c0[i], C.M.from_mont(U), C.M.from_mont(V));
            quads = (d2 == 4) ? 2 : 0;
        }
        out[i] = QuarticSplit{static_cast<unsigned char>(roots), quads};
    }
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

Backend selected_backend() {
    static const Backend chosen = [] {
        if (const char* env = std::getenv("D4_KERNEL")) {
            if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
            if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Backend::avx2;
        }
        return avx2_available() ? Backend::avx2 : Backend::scalar;
    }();
    return chosen;
}

void quartic_split_block(const u64* p, const u64* c2, const u64* c0,
                         std::size_t n, QuarticSplit* out) {
    if (selected_backend() == Backend::avx2)
        quartic_split_block_avx2(p, c2, c0, n, out);
    else
        quartic_split_block_scalar(p, c2, c0, n, out);
}

}  // namespace d4::kernels
