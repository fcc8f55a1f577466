#include "d4/family.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace d4 {

namespace {

mpz_class family_constant(const GeneratorTriple& t) {
    // 256 n0^2 |base|^3 |target|^3
    mpz_class b(static_cast<long>(t.base < 0 ? -t.base : t.base));
    mpz_class g(static_cast<long>(t.target < 0 ? -t.target : t.target));
    return 256 * t.n0 * t.n0 * b * b * b * g * g * g;
}

}  // namespace

mpz_class family_m_bound(const GeneratorTriple& triple, double X) {
    if (X < 1) return 0;
    mpz_class C = family_constant(triple);
    // m^2 <= X / C with X real: compare C m^2 <= floor(X) exactly
    mpz_class Xf;
    mpz_set_d(Xf.get_mpz_t(), std::floor(X));
    if (Xf < C) return 0;
    mpz_class m = isqrt(Xf / C);
    while (C * (m + 1) * (m + 1) <= Xf) ++m;
    while (m > 0 && C * m * m > Xf) --m;
    return m;
}

void for_admissible_multipliers(const GeneratorTriple& triple, const mpz_class& bound,
                                const std::function<void(u64)>& visit) {
    if (bound < 1) return;
    if (!bound.fits_ulong_p())
        throw budget_error("for_admissible_multipliers: multiplier bound exceeds 64 bits");
    u64 B = bound.get_ui();
    u64 q = static_cast<u64>(std::abs(triple.base)) * static_cast<u64>(std::abs(triple.target));
    auto mu = moebius_sieve(B);
    for (u64 m = 1; m <= B; ++m) {
        if (mu[m] == 0) continue;
        if (std::gcd(m, q) != 1) continue;
        visit(m);
    }
}

FamilySlice enumerate_family(const BiquadraticContext& ctx, const GeneratorTriple& triple,
                             double X, std::size_t max_members) {
    if (X < 1) throw domain_error("enumerate_family: X must be >= 1");
    FamilySlice slice;
    slice.ctx = ctx;
    slice.triple = triple;
    slice.X = X;
    slice.m_bound = family_m_bound(triple, X);
    for_admissible_multipliers(triple, slice.m_bound, [&](u64 m) {
        if (slice.members.size() >= max_members)
            throw budget_error("enumerate_family: member budget exceeded");
        slice.members.push_back(build_field(ctx, triple, mpz_class(static_cast<unsigned long>(m))));
    });
    return slice;
}

SquarefreeCoprimeCount count_squarefree_coprime(double Z, u64 q) {
    if (q < 2) throw domain_error("count_squarefree_coprime: q must be >= 2");
    SquarefreeCoprimeCount r{};
    r.count = (Z >= 1) ? squarefree_coprime_count(Z, q) : 0;
    double density = static_cast<double>(euler_phi(q)) / static_cast<double>(q);
    density /= (M_PI * M_PI / 6.0);  // 1/zeta(2)
    for (i64 p : prime_factors(static_cast<i64>(q))) {
        double pd = static_cast<double>(p);
        density /= (1.0 - 1.0 / (pd * pd));
    }
    r.density = density;
    r.main_term = density * std::max(Z, 0.0);
    r.residual = static_cast<double>(r.count) - r.main_term;
    return r;
}

LowerBoundReport verify_lower_bound(const BiquadraticContext& ctx,
                                    const std::vector<double>& X_list) {
    LowerBoundReport report;
    auto crit = check_condition_1234(SquarefreeInt(ctx.a), SquarefreeInt(ctx.b));
    if (!crit.condition1234) {
        report.family_empty = true;
        return report;
    }
    auto triple = phi(SquarefreeInt(ctx.a), SquarefreeInt(ctx.b));
    u64 q = static_cast<u64>(std::abs(triple.base)) * static_cast<u64>(std::abs(triple.target));
    double c3 = std::pow(std::abs(static_cast<double>(triple.base)), 3) *
                std::pow(std::abs(static_cast<double>(triple.target)), 3);
    double denom = 16.0 * triple.n0.get_d() * std::sqrt(c3);
    for (double X : X_list) {
        LowerBoundPoint pt;
        pt.X = X;
        mpz_class bound = family_m_bound(triple, X);
        auto cnt = count_squarefree_coprime(bound.get_d(), q);
        pt.count = cnt.count;
        pt.ratio = static_cast<double>(cnt.count) / std::sqrt(X);
        pt.limit = cnt.density / denom;
        report.points.push_back(pt);
    }
    return report;
}

std::array<SubfamilyFlag, 6> six_decomposition(const BiquadraticContext& ctx) {
    bool pair_ab = norm_solvable(ctx.b, ctx.a);
    bool pair_ac3 = norm_solvable(ctx.c3, ctx.a);
    bool pair_bc3 = norm_solvable(ctx.c3, ctx.b);
    return {{
        {"F(a; a,b)", ctx.a, ctx.b, pair_ab},
        {"F(b; a,b)", ctx.b, ctx.a, pair_ab},
        {"F(a; a,ab/xi^2)", ctx.a, ctx.c3, pair_ac3},
        {"F(ab/xi^2; a,ab/xi^2)", ctx.c3, ctx.a, pair_ac3},
        {"F(b; b,ab/xi^2)", ctx.b, ctx.c3, pair_bc3},
        {"F(ab/xi^2; b,ab/xi^2)", ctx.c3, ctx.b, pair_bc3},
    }};
}

}  // namespace d4
