// AVX2 backend: four primes per 256-bit vector, 32-bit Montgomery arithmetic
// in 64-bit lanes (vpmuludq gives the needed 32x32 -> 64 widening multiply).
// Requires p < 2^31; larger entries are routed to the scalar kernel.

#include "d4/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <array>
#include <bit>

#include "kernels_detail.hpp"

namespace d4::kernels {

namespace {

constexpr u64 avx_prime_limit = u64{1} << 31;

struct MontVec {
    __m256i p, pm1, ninv, one;  // one = 2^32 mod p (Montgomery image of 1)

    __m256i mul(__m256i a, __m256i b) const {
        const __m256i low32 = _mm256_set1_epi64x(0xFFFFFFFFll);
        __m256i t = _mm256_mul_epu32(a, b);
        __m256i m = _mm256_and_si256(_mm256_mul_epu32(t, ninv), low32);
        __m256i s = _mm256_add_epi64(t, _mm256_mul_epu32(m, p));
        __m256i r = _mm256_srli_epi64(s, 32);
        __m256i ge = _mm256_cmpgt_epi64(r, pm1);
        return _mm256_sub_epi64(r, _mm256_and_si256(ge, p));
    }
    __m256i add(__m256i a, __m256i b) const {
        __m256i s = _mm256_add_epi64(a, b);
        __m256i ge = _mm256_cmpgt_epi64(s, pm1);
        return _mm256_sub_epi64(s, _mm256_and_si256(ge, p));
    }
    __m256i sub(__m256i a, __m256i b) const {
        __m256i d = _mm256_sub_epi64(a, b);
        __m256i lt = _mm256_cmpgt_epi64(b, a);
        return _mm256_add_epi64(d, _mm256_and_si256(lt, p));
    }
};


void split4(const u64* p, const u64* c2, const u64* c0, QuarticSplit* out) {
    alignas(32) std::array<u64, 4> ninv_a, one_a, r2_a;
    u64 maxp = 0;
    for (int i = 0; i < 4; ++i) {
        u32 pi = static_cast<u32>(p[i]);
        u32 x = pi;
        for (int k = 0; k < 5; ++k) x *= 2 - pi * x;  // p^{-1} mod 2^32
        ninv_a[i] = static_cast<u32>(-x);
        one_a[i] = (u64{1} << 32) % pi;
        r2_a[i] = (one_a[i] << 32) % pi;  // 2^64 mod p
        if (p[i] > maxp) maxp = p[i];
    }

    MontVec M;
    M.p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
    M.pm1 = _mm256_sub_epi64(M.p, _mm256_set1_epi64x(1));
    M.ninv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ninv_a.data()));
    M.one = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(one_a.data()));
    __m256i r2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r2_a.data()));

    __m256i c2m = M.mul(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(c2)), r2);
    __m256i c0m = M.mul(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(c0)), r2);
    __m256i c2sq_m_c0 = M.sub(M.mul(c2m, c2m), c0m);
    __m256i c2c0 = M.mul(c2m, c0m);

    auto square_even = [&](__m256i e0, __m256i e1, __m256i& r0, __m256i& rq) {
        __m256i t00 = M.mul(e0, e0), t01 = M.mul(e0, e1), t11 = M.mul(e1, e1);
        r0 = M.sub(t00, M.mul(c0m, t11));
        rq = M.sub(M.add(t01, t01), M.mul(c2m, t11));
    };
    auto square_odd = [&](__m256i o0, __m256i o1, __m256i& r0, __m256i& rq) {
        __m256i t00 = M.mul(o0, o0), t01 = M.mul(o0, o1), t11 = M.mul(o1, o1);
        __m256i t01_2 = M.add(t01, t01);
        r0 = M.sub(M.mul(t11, c2c0), M.mul(t01_2, c0m));
        rq = M.add(M.sub(t00, M.mul(t01_2, c2m)), M.mul(t11, c2sq_m_c0));
    };
    auto mul_odd_even = [&](__m256i o0, __m256i o1, __m256i e0, __m256i e1,
                            __m256i& r0, __m256i& r1) {
        __m256i t = M.mul(o1, e1);
        r0 = M.sub(M.mul(o0, e0), M.mul(c0m, t));
        r1 = M.sub(M.add(M.mul(o0, e1), M.mul(o1, e0)), M.mul(c2m, t));
    };

    // x^p mod f, all four exponents walked to the widest bit length; lanes with
    // shorter exponents see zero bits and keep their accumulator unchanged.
    __m256i acc0 = M.one, acc1 = _mm256_setzero_si256();  // x
    __m256i b0 = _mm256_setzero_si256(), b1 = M.one;      // x^2
    const __m256i onebit = _mm256_set1_epi64x(1);
    int bits = 64 - std::countl_zero(maxp);
    for (int i = 1; i < bits; ++i) {
        __m256i n0, n1;
        mul_odd_even(acc0, acc1, b0, b1, n0, n1);
        __m256i bit = _mm256_and_si256(_mm256_srli_epi64(M.p, i), onebit);
        __m256i mask = _mm256_cmpeq_epi64(bit, onebit);
        acc0 = _mm256_blendv_epi8(acc0, n0, mask);
        acc1 = _mm256_blendv_epi8(acc1, n1, mask);
        __m256i s0, s1;
        square_even(b0, b1, s0, s1);
        b0 = s0;
        b1 = s1;
    }

    // compose x^p with itself for the x^(p^2) state (needed when roots == 0;
    // computed unconditionally to keep the lanes uniform)
    __m256i sq0, sq1, w0, w1;
    square_odd(acc0, acc1, sq0, sq1);
    mul_odd_even(acc0, acc1, sq0, sq1, w0, w1);
    __m256i U = M.add(M.mul(acc0, acc0), M.mul(acc1, w0));
    __m256i V = M.add(M.mul(acc0, acc1), M.mul(acc1, w1));

    const __m256i plain1 = _mm256_set1_epi64x(1);
    alignas(32) std::array<u64, 4> u_a, v_a, U_a, V_a;
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(u_a.data()), M.mul(acc0, plain1));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(v_a.data()), M.mul(acc1, plain1));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(U_a.data()), M.mul(U, plain1));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(V_a.data()), M.mul(V, plain1));

    for (int i = 0; i < 4; ++i) {
        int roots = detail::gcd_w_degree(p[i], c2[i], c0[i], u_a[i], v_a[i]);
        unsigned char quads = 0;
        if (roots == 2) {
            quads = 1;
        } else if (roots == 0) {
            int d2 = detail::gcd_w_degree(p[i], c2[i], c0[i], U_a[i], V_a[i]);
            quads = (d2 == 4) ? 2 : 0;
        }
        out[i] = QuarticSplit{static_cast<unsigned char>(roots), quads};
    }
}

}  // namespace

void quartic_split_block_avx2(const u64* p, const u64* c2, const u64* c0,
                              std::size_t n, QuarticSplit* out) {
    alignas(32) u64 bp[4], bc2[4], bc0[4];
    std::size_t pos[4];
    std::size_t filled = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] >= avx_prime_limit) {
            quartic_split_block_scalar(p + i, c2 + i, c0 + i, 1, out + i);
            continue;
        }
        bp[filled] = p[i];
        bc2[filled] = c2[i];
        bc0[filled] = c0[i];
        pos[filled] = i;
        if (++filled == 4) {
            QuarticSplit tmp[4];
            split4(bp, bc2, bc0, tmp);
            for (int k = 0; k < 4; ++k) out[pos[k]] = tmp[k];
            filled = 0;
        }
    }
    for (std::size_t k = 0; k < filled; ++k)
        quartic_split_block_scalar(bp + k, bc2 + k, bc0 + k, 1, out + pos[k]);
}

}  // namespace d4::kernels

#else  // non-x86: never selected, route to the scalar reference

namespace d4::kernels {
void quartic_split_block_avx2(const u64* p, const u64* c2, const u64* c0,
                              std::size_t n, QuarticSplit* out) {
    quartic_split_block_scalar(p, c2, c0, n, out);
}
}  // namespace d4::kernels

#endif
