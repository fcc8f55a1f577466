#include "d4/frobenius.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

namespace d4 {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("D4_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

// per-field constants reduced once, applied per prime
struct ScanSetup {
    i64 d1, d2, d3;      // fundamental discriminants of F1, F2, F3
    mpz_class bad;       // 2 |base * target * h * n|
    bool bad_fits = false;
    u64 bad_u64 = 0;
    mpz_class c2, c0;    // -2g and g^2 - h^2 base
    bool coeff_fits = false;
    i64 c2_i64 = 0, c0_i64 = 0;

    explicit ScanSetup(const D4Field& K) {
        i64 f1 = K.ctx.remaining_quadratic(K.base, K.target);
        d1 = fundamental_discriminant_of(f1);
        d2 = fundamental_discriminant_of(K.base);
        d3 = fundamental_discriminant_of(K.target);
        bad = abs(2 * mpz_class(static_cast<long>(K.base)) * K.target * K.h * K.n);
        if (bad.fits_ulong_p()) {
            bad_fits = true;
            bad_u64 = bad.get_ui();
        }
        c2 = K.poly_c2();
        c0 = K.poly_c0();
        if (c2.fits_slong_p() && c0.fits_slong_p()) {
            coeff_fits = true;
            c2_i64 = c2.get_si();
            c0_i64 = c0.get_si();
        }
    }

    bool admissible(u64 p) const {
        if (p == 2) return false;
        if (bad_fits) return bad_u64 % p != 0;
        return mpz_divisible_ui_p(bad.get_mpz_t(), p) == 0;
    }
    u64 reduce_c2(u64 p) const {
        if (coeff_fits) {
            i64 r = c2_i64 % static_cast<i64>(p);
            return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
        }
        return mpz_fdiv_ui(c2.get_mpz_t(), p);
    }
    u64 reduce_c0(u64 p) const {
        if (coeff_fits) {
            i64 r = c0_i64 % static_cast<i64>(p);
            return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
        }
        return mpz_fdiv_ui(c0.get_mpz_t(), p);
    }
};

D4Class class_from_pattern(int chi1, int chi2, int chi3, int roots, u64 p) {
    auto fail = [&](const char* why) -> D4Class {
        std::ostringstream os;
        os << "inconsistent Frobenius data at p = " << p << ": " << why << " (pattern " << chi1
           << "," << chi2 << "," << chi3 << ", roots " << roots << ")";
        throw inconsistent_error(os.str());
    };
    if (chi1 * chi2 * chi3 != 1) fail("character product is not trivial");
    if (chi1 == 1 && chi2 == 1 && chi3 == 1) {
        if (roots == 4) return D4Class::ID;
        if (roots == 0) return D4Class::R2;
        return fail("split pattern with partial root count");
    }
    if (chi1 == 1) return D4Class::R;
    if (chi2 == 1) return D4Class::S;
    return D4Class::RS;
}

void check_cycle_type(D4Class cls, const kernels::QuarticSplit& split, u64 p) {
    const auto& shape = conjugacy_class(cls).cycle_shape;
    if (split.roots != shape[0] || split.quads != shape[1]) {
        std::ostringstream os;
        os << "inconsistent factor multiset at p = " << p << ": class " << class_name(cls)
           << " expects (" << shape[0] << " roots, " << shape[1] << " quadratics), kernel found ("
           << int(split.roots) << ", " << int(split.quads) << ")";
        throw inconsistent_error(os.str());
    }
}

FrobeniusRecord classify_prime(const ScanSetup& setup, u64 p,
                               const kernels::QuarticSplit& split) {
    FrobeniusRecord rec;
    rec.p = p;
    rec.chi1 = kronecker(setup.d1, static_cast<i64>(p));
    rec.chi2 = kronecker(setup.d2, static_cast<i64>(p));
    rec.chi3 = kronecker(setup.d3, static_cast<i64>(p));
    rec.root_count = split.roots;
    rec.admissible = true;
    rec.cls = class_from_pattern(rec.chi1, rec.chi2, rec.chi3, split.roots, p);
    check_cycle_type(*rec.cls, split, p);
    if (conjugacy_class(*rec.cls).fixed_points != rec.root_count)
        throw inconsistent_error("root count does not match the class fixed points");
    return rec;
}

FrobeniusRecord inadmissible_record(const ScanSetup& setup, u64 p) {
    FrobeniusRecord rec;
    rec.p = p;
    rec.chi1 = kronecker(setup.d1, static_cast<i64>(p));
    rec.chi2 = kronecker(setup.d2, static_cast<i64>(p));
    rec.chi3 = kronecker(setup.d3, static_cast<i64>(p));
    rec.root_count = -1;
    rec.admissible = false;
    return rec;
}

}  // namespace

FrobeniusRecord artin_symbol(const D4Field& K, u64 p) {
    if (p < 3 || !is_prime(p)) throw domain_error("artin_symbol: p must be an odd prime");
    ScanSetup setup(K);
    if (!setup.admissible(p)) {
        std::ostringstream os;
        os << "inadmissible: p = " << p << " divides 2 * base * target * h * n";
        throw domain_error(os.str());
    }
    u64 c2 = setup.reduce_c2(p), c0 = setup.reduce_c0(p);
    kernels::QuarticSplit split;
    kernels::quartic_split_block(&p, &c2, &c0, 1, &split);
    return classify_prime(setup, p, split);
}

void scan_primes_visit(const D4Field& K, double x,
                       const std::function<void(const FrobeniusRecord&)>& visit,
                       const ScanOptions& opt) {
    if (!(x >= 2)) throw domain_error("scan_primes: x must be >= 2");
    if (x > static_cast<double>(opt.max_x))
        throw budget_error("scan_primes: x exceeds the configured resource budget");
    ScanSetup setup(K);
    auto primes = prime_sieve(static_cast<u64>(x));

    // fixed block partition, independent of thread count
    constexpr std::size_t block_size = 1 << 14;
    std::size_t start = (!primes.empty() && primes[0] == 2) ? 1 : 0;
    std::size_t total = primes.size() - start;
    std::size_t nblocks = (total + block_size - 1) / block_size;

    auto compute_block = [&](std::size_t blk, std::vector<FrobeniusRecord>& out,
                             std::vector<u64>& ps, std::vector<u64>& c2s, std::vector<u64>& c0s,
                             std::vector<std::size_t>& where,
                             std::vector<kernels::QuarticSplit>& splits) {
        std::size_t lo = start + blk * block_size;
        std::size_t hi = std::min(primes.size(), lo + block_size);
        out.resize(hi - lo);
        ps.clear(); c2s.clear(); c0s.clear(); where.clear();
        for (std::size_t i = lo; i < hi; ++i) {
            u64 p = primes[i];
            if (setup.admissible(p)) {
                ps.push_back(p);
                c2s.push_back(setup.reduce_c2(p));
                c0s.push_back(setup.reduce_c0(p));
                where.push_back(i - lo);
            } else {
                out[i - lo] = inadmissible_record(setup, p);
            }
        }
        splits.resize(ps.size());
        kernels::quartic_split_block(ps.data(), c2s.data(), c0s.data(), ps.size(), splits.data());
        for (std::size_t k = 0; k < ps.size(); ++k)
            out[where[k]] = classify_prime(setup, ps[k], splits[k]);
    };

    int threads = resolve_thread_count(opt.threads);
    if (threads <= 1 || nblocks <= 1) {
        // fully streaming: one block in memory at a time
        std::vector<FrobeniusRecord> out;
        std::vector<u64> ps, c2s, c0s;
        std::vector<std::size_t> where;
        std::vector<kernels::QuarticSplit> splits;
        for (std::size_t blk = 0; blk < nblocks; ++blk) {
            compute_block(blk, out, ps, c2s, c0s, where, splits);
            for (const auto& rec : out) visit(rec);
        }
        return;
    }

    // ordered pipeline: workers fill blocks, this thread consumes them in
    // order and frees each one, so memory stays bounded by in-flight blocks
    std::vector<std::vector<FrobeniusRecord>> results(nblocks);
    std::vector<char> ready(nblocks, 0);
    std::size_t consumed = 0;
    std::mutex mtx;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;

    auto worker = [&] {
        std::vector<u64> ps, c2s, c0s;
        std::vector<std::size_t> where;
        std::vector<kernels::QuarticSplit> splits;
        try {
            for (;;) {
                if (failed.load()) return;
                std::size_t blk = next.fetch_add(1);
                if (blk >= nblocks) return;
                // keep at most a window of blocks in flight ahead of the consumer
                {
                    std::unique_lock lk(mtx);
                    cv.wait(lk, [&] {
                        return failed.load() ||
                               blk < consumed + 4 * static_cast<std::size_t>(threads);
                    });
                    if (failed.load()) return;
                }
                compute_block(blk, results[blk], ps, c2s, c0s, where, splits);
                {
                    std::scoped_lock lk(mtx);
                    ready[blk] = 1;
                }
                cv.notify_all();
            }
        } catch (...) {
            std::scoped_lock lk(mtx);
            if (!error) error = std::current_exception();
            failed.store(true);
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    std::size_t spawn = std::min<std::size_t>(static_cast<std::size_t>(threads), nblocks);
    for (std::size_t t = 0; t < spawn; ++t) pool.emplace_back(worker);
    try {
        for (std::size_t blk = 0; blk < nblocks; ++blk) {
            {
                std::unique_lock lk(mtx);
                cv.wait(lk, [&] { return failed.load() || ready[blk]; });
                if (failed.load()) break;
            }
            for (const auto& rec : results[blk]) visit(rec);
            std::vector<FrobeniusRecord>().swap(results[blk]);
            {
                std::scoped_lock lk(mtx);
                ++consumed;
            }
            cv.notify_all();
        }
    } catch (...) {
        {
            std::scoped_lock lk(mtx);
            if (!error) error = std::current_exception();
            failed.store(true);
        }
        cv.notify_all();
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<FrobeniusRecord> scan_primes(const D4Field& K, double x, const ScanOptions& opt) {
    std::vector<FrobeniusRecord> out;
    scan_primes_visit(K, x, [&](const FrobeniusRecord& r) { out.push_back(r); }, opt);
    return out;
}

}  // namespace d4
