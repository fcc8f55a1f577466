#include "d4/lseries.hpp"

#include <cmath>

namespace d4 {

const D4CharacterTable& d4_character_table() {
    static const D4CharacterTable table;
    return table;
}

int character_inner_product(int i, int j) {
    const auto& T = d4_character_table();
    int acc = 0;
    for (int c = 0; c < 5; ++c) {
        int size = conjugacy_class(all_classes[c]).size;
        acc += size * T.value[i][c] * T.value[j][c];
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Euler factors
// ---------------------------------------------------------------------------

namespace {

std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

std::vector<long> poly_pow(std::vector<long> base, int e) {
    std::vector<long> r{1};
    for (int k = 0; k < e; ++k) r = poly_mul(r, base);
    return r;
}

}  // namespace

EulerFactorCheck local_euler_factors(D4Class cls) {
    const auto& T = d4_character_table();
    int c = static_cast<int>(cls);

    // four linear factors (1 - chi(g) T), then det(1 - rho(g)T)^2 with
    // det(1 - rho(g)T) = 1 - tr(rho(g)) T + det(rho(g)) T^2
    std::vector<long> artin{1};
    for (int i = 0; i < 4; ++i) artin = poly_mul(artin, {1, -T.value[i][c]});
    std::vector<long> rho_factor{1, -T.value[4][c], T.rho_det[c]};
    artin = poly_mul(artin, poly_mul(rho_factor, rho_factor));

    int f = conjugacy_class(cls).order;
    std::vector<long> cyc(f + 1, 0);
    cyc[0] = 1;
    cyc[f] = -1;  // 1 - T^f
    std::vector<long> field = poly_pow(cyc, 8 / f);

    EulerFactorCheck out;
    out.artin_side = std::move(artin);
    out.field_side = std::move(field);
    out.equal = (out.artin_side == out.field_side);
    return out;
}

bool local_euler_check(const D4Field& K, u64 p) {
    auto rec = artin_symbol(K, p);  // throws for inadmissible p
    return local_euler_factors(*rec.cls).equal;
}

// ---------------------------------------------------------------------------
// Chebotarev report
// ---------------------------------------------------------------------------

ChebotarevReport chebotarev_report(const D4Field& K, double x, const ScanOptions& opt) {
    if (!(x >= 10)) throw domain_error("chebotarev_report: x must be >= 10");
    ChebotarevReport rep;
    rep.x = x;
    for (D4Class c : all_classes) rep.classes[c] = ClassStat{};

    // classes of small primes are retained for the prime-power terms of psi
    double root_x = std::sqrt(x);
    std::vector<std::pair<u64, D4Class>> small;
    scan_primes_visit(
        K, x,
        [&](const FrobeniusRecord& rec) {
            ++rep.pi_total;
            if (!rec.admissible) {
                ++rep.excluded;
                rep.excluded_primes.push_back(rec.p);
                return;
            }
            auto& stat = rep.classes[*rec.cls];
            ++stat.count;
            stat.weighted += std::log(static_cast<double>(rec.p));
            if (static_cast<double>(rec.p) <= root_x) small.emplace_back(rec.p, *rec.cls);
        },
        opt);

    // prime powers p^m <= x enter psi with the class of Frob^m
    for (auto [p, cls] : small) {
        double logp = std::log(static_cast<double>(p));
        double pm = static_cast<double>(p) * p;
        for (u64 m = 2; pm <= x; ++m, pm *= static_cast<double>(p))
            rep.classes[class_power(cls, m)].weighted += logp;
    }

    double li = log_integral(x);
    double err_unit = x / (std::log(x) * std::log(x));
    u64 admissible_total = rep.pi_total - rep.excluded;
    for (D4Class c : all_classes) {
        auto& stat = rep.classes[c];
        double frac = conjugacy_class(c).size / 8.0;
        stat.expected = frac * li;
        stat.normalized_error =
            std::abs(static_cast<double>(stat.count) - stat.expected) / (frac * err_unit);
        stat.proportion =
            admissible_total ? static_cast<double>(stat.count) / admissible_total : 0.0;
        rep.max_proportion_deviation =
            std::max(rep.max_proportion_deviation, std::abs(stat.proportion - frac));
    }
    return rep;
}

std::vector<std::pair<u64, int>> rho_coefficients(const D4Field& K, double x,
                                                  const ScanOptions& opt) {
    const auto& T = d4_character_table();
    std::vector<std::pair<u64, int>> out;
    scan_primes_visit(
        K, x,
        [&](const FrobeniusRecord& rec) {
            if (!rec.admissible) return;
            out.emplace_back(rec.p, T.value[4][static_cast<int>(*rec.cls)]);
        },
        opt);
    return out;
}

}  // namespace d4
