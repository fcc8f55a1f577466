// d4: command-line toolkit for dihedral quartic families over a fixed
// biquadratic resolvent. Subcommands cover the norm criteria and generator
// triples, family enumeration and counting, per-prime Frobenius data,
// Chebotarev statistics, local zeta-factor checks, analytic threshold
// formulas, split-prime reports, and class-group ingestion.
//
// Exit codes: 0 success, 2 usage error, 3 domain error, 4 resource budget.

#include <chrono>
#include <random>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "d4/analytic.hpp"
#include "d4/arith.hpp"
#include "d4/family.hpp"
#include "d4/frobenius.hpp"
#include "d4/kernels.hpp"
#include "d4/lseries.hpp"
#include "d4/normcond.hpp"
#include "d4/quartic.hpp"
#include "sha256.hpp"

using json = nlohmann::ordered_json;
using namespace d4;

namespace {

// ---------------------------------------------------------------------------
// run manifest
// ---------------------------------------------------------------------------

struct Manifest {
    std::string subcommand;
    json inputs = json::object();
    int threads = 0;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    std::vector<json> artifacts;
    std::string path;  // explicit --manifest path, else derived from first artifact

    void add_artifact(const std::string& file, const std::string& content) {
        json a;
        a["path"] = file;
        a["bytes"] = content.size();
        a["sha256"] = d4tool::sha256_hex(content);
        artifacts.push_back(a);
    }

    void write() {
        if (artifacts.empty() && path.empty()) return;
        std::string target = path;
        if (target.empty()) target = artifacts.front()["path"].get<std::string>() + ".manifest.json";
        json m;
        m["schema"] = "d4/v1";
        m["tool"] = "d4";
        m["version"] = version_string;
        m["subcommand"] = subcommand;
        m["inputs"] = inputs;
        m["threads"] = threads;
        m["kernel_backend"] = kernels::backend_name(kernels::selected_backend());
        auto now = std::chrono::system_clock::now();
        std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
        m["finished_utc"] = buf;
        m["elapsed_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        m["artifacts"] = artifacts;
        std::ofstream out(target);
        out << m.dump(2) << "\n";
    }
};

// write `content` to `path` (or stdout when path is empty) and record it
void emit(Manifest& man, const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw domain_error("cannot write to " + path);
    out << content;
    man.add_artifact(path, content);
}

// output paths are checked for writability before any computation starts;
// append mode leaves existing content intact
void check_writable(const std::string& path) {
    if (path.empty()) return;
    std::ofstream probe(path, std::ios::app);
    if (!probe) throw domain_error("output path is not writable: " + path);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// shared option plumbing
// ---------------------------------------------------------------------------

struct FieldArgs {
    i64 a = 0, b = 0;
    i64 m = 1;
    BiquadraticContext context() const { return BiquadraticContext::make(a, b); }
    D4Field field() const {
        auto ctx = context();
        auto triple = phi(SquarefreeInt(a), SquarefreeInt(b));
        return build_field(ctx, triple, m);
    }
};

void add_ab(CLI::App* cmd, FieldArgs& fa) {
    cmd->add_option("--a", fa.a, "first square-free generator")->required();
    cmd->add_option("--b", fa.b, "second square-free generator")->required();
}

void add_abm(CLI::App* cmd, FieldArgs& fa) {
    add_ab(cmd, fa);
    cmd->add_option("--m", fa.m, "family multiplier (square-free, coprime to |base*target|)")
        ->default_val(1);
}

json triple_json(const GeneratorTriple& t) {
    json j;
    j["g0"] = t.g0.get_str();
    j["h0"] = t.h0.get_str();
    j["n0"] = t.n0.get_str();
    j["subfamily"] = subfamily_name(t.subfamily);
    j["base"] = t.base;
    j["target"] = t.target;
    return j;
}

json field_json_obj(const D4Field& K) { return json::parse(field_to_json(K)); }

json class_stats_json(const ChebotarevReport& rep) {
    json classes = json::object();
    for (D4Class c : all_classes) {
        const auto& stat = rep.classes.at(c);
        json s;
        s["size"] = conjugacy_class(c).size;
        s["count"] = stat.count;
        s["weighted"] = stat.weighted;
        s["expected"] = stat.expected;
        s["normalized_error"] = stat.normalized_error;
        s["proportion"] = stat.proportion;
        classes[class_name(c)] = s;
    }
    return classes;
}

// ---------------------------------------------------------------------------
// subcommand bodies (each returns the process exit code)
// ---------------------------------------------------------------------------

int run_norm_test(Manifest& man, const FieldArgs& fa, const std::string& out) {
    auto crit = check_condition_1234(SquarefreeInt(fa.a), SquarefreeInt(fa.b));
    json j;
    j["schema"] = "d4/v1";
    j["a"] = fa.a;
    j["b"] = fa.b;
    j["co1"] = crit.co1;
    j["co2"] = crit.co2;
    j["co3"] = crit.co3;
    j["condition1234"] = crit.condition1234;
    if (crit.condition1234) {
        j["triple"] = triple_json(phi(SquarefreeInt(fa.a), SquarefreeInt(fa.b)));
    } else {
        j["triple"] = nullptr;
    }
    std::string payload = j.dump(2) + "\n";
    emit(man, out, payload);
    if (!out.empty()) std::cout << payload;
    return crit.condition1234 ? 0 : 3;
}

int run_enumerate(Manifest& man, const FieldArgs& fa, double X, const std::string& out) {
    auto ctx = fa.context();
    auto triple = phi(SquarefreeInt(fa.a), SquarefreeInt(fa.b));
    auto slice = enumerate_family(ctx, triple, X);
    std::ostringstream csv;
    csv << "m,g,h,n,poly_c0,poly_c2,disc_bound\n";
    for (const auto& K : slice.members)
        csv << K.m.get_str() << ',' << K.g.get_str() << ',' << K.h.get_str() << ','
            << K.n.get_str() << ',' << K.poly_c0().get_str() << ',' << K.poly_c2().get_str()
            << ',' << K.disc_bound.get_str() << '\n';
    emit(man, out, csv.str());
    std::cerr << "enumerated " << slice.members.size() << " fields (m_bound "
              << slice.m_bound.get_str() << ")\n";
    return 0;
}

int run_count(Manifest& man, const FieldArgs& fa, const std::string& grid,
              const std::string& out) {
    std::vector<double> xs;
    std::istringstream gs(grid);
    std::string tok;
    while (std::getline(gs, tok, ','))
        if (!tok.empty()) xs.push_back(std::stod(tok));
    if (xs.empty()) throw domain_error("count: empty X grid");
    auto rep = verify_lower_bound(fa.context(), xs);
    std::ostringstream csv;
    csv << "X,m_bound,count,ratio,limit,family_empty\n";
    if (rep.family_empty) {
        for (double X : xs)
            csv << fmt_double(X) << ",0,0,0,0,true\n";
    } else {
        auto triple = phi(SquarefreeInt(fa.a), SquarefreeInt(fa.b));
        for (const auto& pt : rep.points)
            csv << fmt_double(pt.X) << ',' << family_m_bound(triple, pt.X).get_str() << ','
                << pt.count << ',' << fmt_double(pt.ratio) << ',' << fmt_double(pt.limit)
                << ",false\n";
    }
    emit(man, out, csv.str());
    return 0;
}

int run_frobenius(Manifest& man, const FieldArgs& fa, double x, const std::string& out,
                  int threads) {
    auto K = fa.field();
    ScanOptions opt;
    opt.threads = threads;
    std::ostringstream csv;
    csv << "p,chi1,chi2,chi3,root_count,class,admissible\n";
    scan_primes_visit(K, x, [&](const FrobeniusRecord& rec) {
        csv << rec.p << ',' << rec.chi1 << ',' << rec.chi2 << ',' << rec.chi3 << ',';
        if (rec.admissible) csv << rec.root_count;
        csv << ',';
        if (rec.cls) csv << class_name(*rec.cls);
        csv << ',' << (rec.admissible ? "true" : "false") << '\n';
    }, opt);
    emit(man, out, csv.str());
    return 0;
}

int run_chebotarev(Manifest& man, const FieldArgs& fa, double x, const std::string& out,
                   int threads) {
    auto K = fa.field();
    ScanOptions opt;
    opt.threads = threads;
    auto rep = chebotarev_report(K, x, opt);
    json j;
    j["schema"] = "d4/v1";
    j["a"] = fa.a;
    j["b"] = fa.b;
    j["m"] = fa.m;
    j["x"] = rep.x;
    j["field"] = field_json_obj(K);
    j["pi_total"] = rep.pi_total;
    j["excluded"] = rep.excluded;
    j["excluded_primes"] = rep.excluded_primes;
    j["classes"] = class_stats_json(rep);
    j["max_proportion_deviation"] = rep.max_proportion_deviation;
    std::string payload = j.dump(2) + "\n";
    emit(man, out, payload);
    std::cerr << "chebotarev x=" << fmt_double(x)
              << " max |proportion - |C|/8| = " << rep.max_proportion_deviation << "\n";
    return 0;
}

int run_zeta_check(Manifest& man, const FieldArgs& fa, double x, const std::string& out) {
    auto K = fa.field();
    u64 checked = 0, failures = 0;
    scan_primes_visit(K, x, [&](const FrobeniusRecord& rec) {
        if (!rec.admissible) return;
        auto chk = local_euler_factors(*rec.cls);
        ++checked;
        if (!chk.equal) ++failures;
    });
    json j;
    j["schema"] = "d4/v1";
    j["a"] = fa.a;
    j["b"] = fa.b;
    j["m"] = fa.m;
    j["x"] = x;
    j["checked"] = checked;
    j["failures"] = failures;
    std::string payload = j.dump(2) + "\n";
    emit(man, out, payload);
    if (out.empty() && failures == 0)
        std::cerr << "all " << checked << " local factors agree\n";
    return failures == 0 ? 0 : 1;
}

int run_rho_coeffs(Manifest& man, const FieldArgs& fa, double x, const std::string& out,
                   int threads) {
    auto K = fa.field();
    ScanOptions opt;
    opt.threads = threads;
    auto coeffs = rho_coefficients(K, x, opt);
    std::ostringstream csv;
    csv << "p,a_p\n";
    long long partial = 0;
    for (auto [p, ap] : coeffs) {
        csv << p << ',' << ap << '\n';
        partial += ap;
    }
    emit(man, out, csv.str());
    std::cerr << "sum of a_p over " << coeffs.size() << " admissible primes: " << partial << "\n";
    return 0;
}

int run_thresholds(Manifest& man, const FieldArgs& fa, const AnalyticConfig& cfg,
                   const std::string& out) {
    auto ctx = fa.context();
    auto rep = thresholds(cfg, ctx);
    json j;
    j["schema"] = "d4/v1";
    j["a"] = fa.a;
    j["b"] = fa.b;
    j["eps0"] = cfg.eps0;
    j["C0"] = cfg.C0;
    j["C1"] = cfg.C1;
    j["C5"] = cfg.C5;
    j["beta_max"] = cfg.beta_max;
    j["delta"] = static_cast<double>(rep.delta);
    j["q_max"] = rep.q_max;
    j["C6"] = static_cast<double>(rep.C6);
    j["T0"] = std::isinf(static_cast<double>(rep.T0)) ? json("inf")
                                                      : json(static_cast<double>(rep.T0));
    j["log_T0_plus_3"] = static_cast<double>(rep.log_T0_plus_3);
    j["kappa1"] = std::isinf(static_cast<double>(rep.kappa1))
                      ? json("inf")
                      : json(static_cast<double>(rep.kappa1));
    j["log_kappa1"] = static_cast<double>(rep.log_kappa1);
    j["log10_kappa1"] = static_cast<double>(rep.log_kappa1 / std::log(10.0L));
    j["kappa2"] = static_cast<double>(rep.kappa2);
    j["kappa3"] = static_cast<double>(rep.kappa3);
    json table = json::array();
    for (double D : {1e6, 1e8, 1e10, 1e12}) {
        json row;
        row["D"] = D;
        row["log_x_threshold"] =
            static_cast<double>(rep.log_x_threshold(std::log(static_cast<long double>(D))));
        table.push_back(row);
    }
    j["x_threshold_log_table"] = table;
    std::string payload = j.dump(2) + "\n";
    emit(man, out, payload);
    if (!out.empty()) std::cout << payload;
    return 0;
}

int run_ev(Manifest& man, const FieldArgs& fa, u64 ell, double eta, const std::string& out,
           int threads) {
    auto K = fa.field();
    ScanOptions opt;
    opt.threads = threads;
    auto rep = ev_split_count(K, ell, eta, opt);
    json j;
    j["schema"] = "d4/v1";
    j["a"] = fa.a;
    j["b"] = fa.b;
    j["m"] = fa.m;
    j["disc_bound"] = K.disc_bound.get_str();
    j["ell"] = rep.ell;
    j["eta"] = rep.eta;
    j["cutoff"] = rep.cutoff;
    j["M"] = rep.M;
    j["implied_exponent"] =
        std::isnan(rep.implied_exponent) ? json(nullptr) : json(rep.implied_exponent);
    j["target_exponent"] = rep.target_exponent;
    json targets = json::array();
    for (u64 l = 1; l <= 5; ++l) {
        json row;
        row["ell"] = l;
        row["exponent"] = 0.5 - 1.0 / (6.0 * static_cast<double>(l));
        targets.push_back(row);
    }
    j["torsion_exponent_targets"] = targets;
    std::string payload = j.dump(2) + "\n";
    emit(man, out, payload);
    if (!out.empty()) std::cout << payload;
    return 0;
}

int run_ingest(Manifest& man, const std::string& file, u64 ell, const std::string& out) {
    auto rep = ingest_class_groups(file, ell);
    json j;
    j["schema"] = "d4/v1";
    j["file"] = file;
    j["ell"] = rep.ell;
    j["target_exponent"] = rep.target_exponent;
    j["matched"] = rep.matched;
    j["unmatched"] = rep.unmatched;
    j["flagged"] = rep.flagged;
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json row;
        row["a"] = e.record.a;
        row["b"] = e.record.b;
        row["g"] = e.record.g.get_str();
        row["h"] = e.record.h.get_str();
        row["disc_exact"] = e.record.disc_exact.get_str();
        row["matched"] = e.matched;
        if (e.m) row["m"] = e.m->get_str();
        row["torsion_order"] = e.torsion_order.get_str();
        row["ratio"] = e.ratio;
        row["bound_violation"] = e.bound_violation;
        if (!e.note.empty()) row["note"] = e.note;
        entries.push_back(row);
    }
    j["entries"] = entries;
    std::string payload = j.dump(2) + "\n";
    emit(man, out, payload);
    if (!out.empty()) std::cout << payload;
    return 0;
}

int run_selftest(u64 seed) {
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    // kernel backends agree on random inputs
    {
        std::mt19937_64 rng(seed);
        auto primes = prime_sieve(100'000);
        std::uniform_int_distribution<std::size_t> pick(1, primes.size() - 1);
        bool ok = true;
        std::vector<u64> ps, c2s, c0s;
        for (int i = 0; i < 5000; ++i) {
            u64 p = primes[pick(rng)];
            std::uniform_int_distribution<u64> coeff(0, p - 1);
            u64 c2 = coeff(rng), c0 = coeff(rng);
            if (c0 == 0 || (c2 * c2) % p == (4 * c0) % p) continue;
            ps.push_back(p);
            c2s.push_back(c2);
            c0s.push_back(c0);
        }
        std::vector<kernels::QuarticSplit> a(ps.size()), b(ps.size());
        kernels::quartic_split_block_scalar(ps.data(), c2s.data(), c0s.data(), ps.size(),
                                            a.data());
        kernels::quartic_split_block(ps.data(), c2s.data(), c0s.data(), ps.size(), b.data());
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (!(a[i] == b[i])) ok = false;
        std::ostringstream name;
        name << "kernel equivalence (" << kernels::backend_name(kernels::selected_backend())
             << " vs scalar, " << ps.size() << " cases)";
        report(name.str().c_str(), ok);
    }
    // Kronecker symbol vs GMP
    {
        std::mt19937_64 rng(seed + 1);
        std::uniform_int_distribution<i64> dist(-2'000'000, 2'000'000);
        bool ok = true;
        for (int i = 0; i < 20'000; ++i) {
            i64 d = dist(rng), n = dist(rng);
            mpz_class md(static_cast<long>(d)), mn(static_cast<long>(n));
            if (kronecker(d, n) != mpz_kronecker(md.get_mpz_t(), mn.get_mpz_t())) ok = false;
        }
        report("kronecker symbol vs GMP (20000 samples)", ok);
    }
    // Moebius sieve vs direct square-free test
    {
        auto mu = moebius_sieve(20'000);
        bool ok = true;
        for (i64 m = 1; m <= 20'000; ++m)
            if ((mu[m] != 0) != is_squarefree(m)) ok = false;
        report("moebius sieve vs square-free test (2e4)", ok);
    }
    // character orthogonality and the Euler factor identity
    {
        bool ok = true;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                if (character_inner_product(i, j) != (i == j ? 8 : 0)) ok = false;
        report("character table orthogonality", ok);
        bool euler = true;
        for (D4Class c : all_classes)
            if (!local_euler_factors(c).equal) euler = false;
        report("local Euler factor identity on all classes", euler);
    }
    // generator triple reproduction
    {
        auto t = phi(SquarefreeInt(2), SquarefreeInt(7));
        report("generator triple (2,7) -> (3,1,1)", t.g0 == 3 && t.h0 == 1 && t.n0 == 1);
    }
    // scan determinism across thread counts
    {
        auto ctx = BiquadraticContext::make(2, 7);
        auto K = build_field(ctx, phi(SquarefreeInt(2), SquarefreeInt(7)), 1);
        ScanOptions one, four;
        one.threads = 1;
        four.threads = 4;
        auto ra = scan_primes(K, 20'000.0, one);
        auto rb = scan_primes(K, 20'000.0, four);
        bool ok = ra.size() == rb.size();
        for (std::size_t i = 0; ok && i < ra.size(); ++i)
            ok = ra[i].p == rb[i].p && ra[i].cls == rb[i].cls;
        report("scan determinism across thread counts", ok);
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dihedral quartic families over a fixed biquadratic resolvent"};
    app.set_version_flag("--version", version_string);
    app.set_config("--config", "", "flat key=value configuration file (flags take precedence)");
    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: D4_THREADS env or hardware)");

    FieldArgs fa;
    std::string out, manifest_path, grid, ingest_file;
    double X = 0, x = 0, eta = 0.1, eps0 = 0.1, C0 = 1.0, C1 = 1.0, C5 = 1.0, beta_max = 0.75;
    u64 ell = 1, seed = 12345;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "output file (default: stdout)");
        cmd->add_option("--manifest", manifest_path, "manifest path (default: <out>.manifest.json)");
    };

    auto* cmd_norm = app.add_subcommand("norm-test", "norm criteria and the generator triple");
    add_ab(cmd_norm, fa);
    add_output(cmd_norm);

    auto* cmd_enum = app.add_subcommand("enumerate", "enumerate the family up to X");
    add_ab(cmd_enum, fa);
    cmd_enum->add_option("--X", X, "discriminant-bound cutoff")->required();
    add_output(cmd_enum);

    auto* cmd_count = app.add_subcommand("count", "lower-bound ratio table over an X grid");
    add_ab(cmd_count, fa);
    cmd_count->add_option("--X-grid", grid, "comma-separated X values")->required();
    add_output(cmd_count);

    auto* cmd_frob = app.add_subcommand("frobenius", "per-prime Frobenius records");
    add_abm(cmd_frob, fa);
    cmd_frob->add_option("--x", x, "prime cutoff")->required();
    add_output(cmd_frob);

    auto* cmd_cheb = app.add_subcommand("chebotarev", "class counting report");
    add_abm(cmd_cheb, fa);
    cmd_cheb->add_option("--x", x, "prime cutoff")->required();
    add_output(cmd_cheb);

    auto* cmd_zeta = app.add_subcommand("zeta-check", "local zeta factorization identity");
    add_abm(cmd_zeta, fa);
    cmd_zeta->add_option("--x", x, "prime cutoff")->required();
    add_output(cmd_zeta);

    auto* cmd_rho = app.add_subcommand("rho-coeffs", "trace coefficients of the 2-dim factor");
    add_abm(cmd_rho, fa);
    cmd_rho->add_option("--x", x, "prime cutoff")->required();
    add_output(cmd_rho);

    auto* cmd_thr = app.add_subcommand("thresholds", "effective threshold formulas");
    add_ab(cmd_thr, fa);
    cmd_thr->add_option("--eps0", eps0, "zero-density parameter in (0, 1/4)")->default_val(0.1);
    cmd_thr->add_option("--C0", C0, "zero-free-region constant")->default_val(1.0);
    cmd_thr->add_option("--C1", C1, "prime-sum constant")->default_val(1.0);
    cmd_thr->add_option("--C5", C5, "error-term constant")->default_val(1.0);
    cmd_thr->add_option("--beta-max", beta_max, "exceptional-zero fallback")->default_val(0.75);
    add_output(cmd_thr);

    auto* cmd_ev = app.add_subcommand("ev", "split-prime count and torsion exponent report");
    add_abm(cmd_ev, fa);
    cmd_ev->add_option("--ell", ell, "torsion index (>= 1)")->required();
    cmd_ev->add_option("--eta", eta, "cutoff exponent in (0, 1/(6 ell))")->required();
    add_output(cmd_ev);

    auto* cmd_ing = app.add_subcommand("ingest-cl", "validate external class-group data");
    cmd_ing->add_option("--file", ingest_file, "CSV input")->required();
    cmd_ing->add_option("--ell", ell, "torsion index")->default_val(2);
    add_output(cmd_ing);

    auto* cmd_self = app.add_subcommand("selftest", "run the built-in invariant checks");
    cmd_self->add_option("--seed", seed, "seed for sampled checks")->default_val(12345);

    app.require_subcommand(1);
    // app-level options (--threads, --config) may appear after the subcommand
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Manifest man;
    man.threads = resolve_thread_count(threads);
    man.path = manifest_path;
    for (auto* sub : app.get_subcommands()) man.subcommand = sub->get_name();
    man.inputs["argv"] = json::array();
    for (int i = 1; i < argc; ++i) man.inputs["argv"].push_back(argv[i]);

    try {
        check_writable(out);
        check_writable(manifest_path);
        int rc = 1;
        if (cmd_norm->parsed()) rc = run_norm_test(man, fa, out);
        else if (cmd_enum->parsed()) rc = run_enumerate(man, fa, X, out);
        else if (cmd_count->parsed()) rc = run_count(man, fa, grid, out);
        else if (cmd_frob->parsed()) rc = run_frobenius(man, fa, x, out, threads);
        else if (cmd_cheb->parsed()) rc = run_chebotarev(man, fa, x, out, threads);
        else if (cmd_zeta->parsed()) rc = run_zeta_check(man, fa, x, out);
        else if (cmd_rho->parsed()) rc = run_rho_coeffs(man, fa, x, out, threads);
        else if (cmd_thr->parsed()) {
            AnalyticConfig cfg{eps0, C0, C1, C5, beta_max};
            rc = run_thresholds(man, fa, cfg, out);
        } else if (cmd_ev->parsed()) rc = run_ev(man, fa, ell, eta, out, threads);
        else if (cmd_ing->parsed()) rc = run_ingest(man, ingest_file, ell, out);
        else if (cmd_self->parsed()) return run_selftest(seed);
        man.write();
        return rc;
    } catch (const budget_error& e) {
        std::cerr << "resource budget: " << e.what() << "\n";
        return 4;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
