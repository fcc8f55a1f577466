#include "d4/analytic.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "d4/normcond.hpp"

namespace d4 {

long double ThresholdReport::log_x_threshold(long double log_D) const {
    long double inner = std::log(kappa3 * log_D);  // log log (D^kappa3)
    return log_kappa1 + kappa2 * inner * inner;
}

long double ThresholdReport::zero_free_boundary(long double t, double C0) const {
    long double narrow = 1.0L - C0 / std::log(static_cast<long double>(q_max) * (std::abs(t) + 3));
    return std::max(narrow, 1.0L - delta);
}

ThresholdReport thresholds(const AnalyticConfig& cfg, const BiquadraticContext& ctx) {
    if (!(cfg.eps0 > 0 && cfg.eps0 < 0.25))
        throw domain_error("thresholds: eps0 must lie in (0, 1/4)");
    if (!(cfg.C0 > 0 && cfg.C1 > 0 && cfg.C5 > 0))
        throw domain_error("thresholds: constants C0, C1, C5 must be positive");
    if (!(cfg.beta_max > 0 && cfg.beta_max < 1))
        throw domain_error("thresholds: beta_max must lie in (0, 1)");

    long double eps0 = cfg.eps0;
    long double delta = eps0 / (42.0L + 4.0L * eps0);
    if (!(delta < 1.0L - static_cast<long double>(cfg.beta_max)))
        throw domain_error("thresholds: configuration rejected, delta >= 1 - beta_max");

    ThresholdReport r;
    r.delta = delta;
    r.q_max = ctx.q_max;
    r.C6 = 21760.0L / cfg.C5;
    r.log_T0_plus_3 = cfg.C0 / delta - std::log(static_cast<long double>(ctx.q_max));
    r.T0 = std::exp(cfg.C0 / delta) / ctx.q_max - 3.0L;
    r.log_kappa1 = std::log(40.0L) + std::log(r.C6) / delta - 2.0L * std::log(delta) / delta;
    r.kappa1 = std::exp(r.log_kappa1);  // inf for realistic delta; log form is canonical
    r.kappa2 = std::max(4.0L / delta, 8.0L / (cfg.C0 * delta)) + 4.0L;
    r.kappa3 = std::pow(480.0L * cfg.C1, 0.2L) *
               std::max(2.0L * ctx.q_max, std::pow(r.C6, 0.25L) / std::sqrt(delta));
    return r;
}

// ---------------------------------------------------------------------------
// split-prime counter
// ---------------------------------------------------------------------------

EvReport ev_split_count(const D4Field& K, u64 ell, double eta, const ScanOptions& opt) {
    if (ell < 1) throw domain_error("ev_split_count: ell must be a positive integer");
    double eta_max = 1.0 / (6.0 * static_cast<double>(ell));
    if (!(eta > 0 && eta < eta_max))
        throw domain_error("ev_split_count: eta must lie in (0, 1/(6 ell))");
    EvReport rep;
    rep.eta = eta;
    rep.ell = ell;
    double logD = std::log(K.disc_bound.get_d());
    rep.cutoff = std::exp(eta * logD);
    rep.target_exponent = 0.5 - eta_max;
    if (rep.cutoff >= 3.0) {
        scan_primes_visit(K, rep.cutoff, [&](const FrobeniusRecord& rec) {
            if (rec.admissible && *rec.cls == D4Class::ID) ++rep.M;
        }, opt);
    }
    rep.implied_exponent =
        rep.M > 0 ? 0.5 - std::log(static_cast<double>(rep.M)) / logD
                  : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

// ---------------------------------------------------------------------------
// class-group ingestion
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

mpz_class parse_mpz(const std::string& s, int lineno, const char* what) {
    mpz_class v;
    if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0) {
        std::ostringstream os;
        os << "ingest: line " << lineno << ": bad " << what << " value '" << s << "'";
        throw domain_error(os.str());
    }
    return v;
}

}  // namespace

IngestReport ingest_class_groups(const std::string& path, u64 ell) {
    if (ell < 1) throw domain_error("ingest: ell must be a positive integer");
    std::ifstream in(path);
    if (!in) throw domain_error("ingest: cannot open " + path);

    IngestReport rep;
    rep.ell = ell;
    rep.target_exponent = 0.5 - 1.0 / (6.0 * static_cast<double>(ell));

    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("a,", 0) == 0) continue;  // header row
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 7) {
            std::ostringstream os;
            os << "ingest: line " << lineno << ": expected 7 columns, got " << fields.size();
            throw domain_error(os.str());
        }
        ClassGroupRecord rec;
        rec.a = static_cast<i64>(parse_mpz(fields[0], lineno, "a").get_si());
        rec.b = static_cast<i64>(parse_mpz(fields[1], lineno, "b").get_si());
        rec.g = parse_mpz(fields[2], lineno, "g");
        rec.h = parse_mpz(fields[3], lineno, "h");
        rec.disc_exact = parse_mpz(fields[4], lineno, "disc_exact");
        if (rec.disc_exact <= 0)
            throw domain_error("ingest: disc_exact must be positive");
        {
            std::istringstream fs(fields[5]);
            std::string tok;
            while (std::getline(fs, tok, ';'))
                if (!tok.empty()) rec.invariant_factors.push_back(parse_mpz(tok, lineno, "factor"));
        }
        rec.provenance = fields[6];
        if (rec.provenance.empty())
            throw domain_error("ingest: provenance column is mandatory");
        for (std::size_t i = 0; i + 1 < rec.invariant_factors.size(); ++i)
            if (rec.invariant_factors[i + 1] % rec.invariant_factors[i] != 0) {
                std::ostringstream os;
                os << "ingest: line " << lineno << ": invariant factors do not divide in order";
                throw domain_error(os.str());
            }

        IngestEntry entry;
        entry.record = rec;
        entry.torsion_order = 1;
        for (const auto& f : rec.invariant_factors)
            entry.torsion_order *= gcd(f, mpz_class(static_cast<unsigned long>(ell)));

        mpz_class full_order = 1;
        for (const auto& f : rec.invariant_factors) full_order *= f;
        if (entry.torsion_order > full_order) {
            entry.bound_violation = true;  // cannot happen arithmetically
            entry.note = "torsion exceeds the group order";
        }

        // match against the canonical family: (g, h) must be m * (g0, h0)
        try {
            auto triple = phi(SquarefreeInt(rec.a), SquarefreeInt(rec.b));
            std::optional<mpz_class> m;
            if (triple.g0 != 0 && rec.g % triple.g0 == 0 && rec.h % triple.h0 == 0 &&
                rec.g / triple.g0 == rec.h / triple.h0 && rec.h / triple.h0 >= 1) {
                m = rec.h / triple.h0;
            } else if (triple.g0 == 0 && rec.g == 0 && rec.h % triple.h0 == 0 &&
                       rec.h / triple.h0 >= 1) {
                m = rec.h / triple.h0;
            }
            if (m) {
                auto ctx = BiquadraticContext::make(rec.a, rec.b);
                auto K = build_field(ctx, triple, *m);  // rejects bad multipliers
                entry.m = m;
                entry.matched = true;
                if (rec.disc_exact > K.disc_bound) {
                    entry.bound_violation = true;
                    entry.note = "disc_exact exceeds the discriminant bound";
                }
            } else {
                entry.note = "field key does not lie on the canonical family line";
            }
        } catch (const domain_error& e) {
            entry.note = e.what();
        }

        entry.ratio = entry.torsion_order > 0
                          ? std::log(entry.torsion_order.get_d()) /
                                std::log(rec.disc_exact.get_d())
                          : 0.0;
        if (entry.matched) ++rep.matched; else ++rep.unmatched;
        if (entry.bound_violation) ++rep.flagged;
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

}  // namespace d4
