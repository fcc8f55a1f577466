#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "../tools/sha256.hpp"
#include "d4/arith.hpp"

#ifndef D4_CLI_PATH
#error "D4_CLI_PATH must be defined"
#endif

namespace {

using json = nlohmann::json;

struct RunResult {
    int exit_code;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run_cli(const std::string& args, const std::string& tag) {
    std::string outfile = std::string("/tmp/d4_cli_") + tag + ".out";
    std::string cmd = std::string(D4_CLI_PATH) + " " + args + " > " + outfile + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    r.out = slurp(outfile);
    return r;
}

}  // namespace

TEST_CASE("norm-test: JSON payload and exit codes") {
    auto ok = run_cli("norm-test --a 2 --b 7", "norm27");
    CHECK(ok.exit_code == 0);
    auto j = json::parse(ok.out);
    CHECK(j["co1"] == true);
    CHECK(j["condition1234"] == true);
    CHECK(j["triple"]["g0"] == "3");
    CHECK(j["triple"]["h0"] == "1");
    CHECK(j["triple"]["n0"] == "1");

    auto empty = run_cli("norm-test --a 3 --b 5", "norm35");
    CHECK(empty.exit_code == 3);  // condition fails: domain outcome
    auto je = json::parse(empty.out);
    CHECK(je["condition1234"] == false);
    CHECK(je["triple"].is_null());

    auto usage = run_cli("norm-test --a 2", "usage");
    CHECK(usage.exit_code == 2);
    auto badsf = run_cli("norm-test --a 4 --b 7", "badsf");
    CHECK(badsf.exit_code == 3);
    auto unknown = run_cli("definitely-not-a-command", "unknown");
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("enumerate CSV and manifest hashes") {
    std::string out = "/tmp/d4_cli_family.csv";
    std::remove(out.c_str());
    std::remove((out + ".manifest.json").c_str());
    auto r = run_cli("enumerate --a 2 --b 7 --X 1e10 --out " + out, "enum");
    CHECK(r.exit_code == 0);
    auto csv = slurp(out);
    CHECK(csv.rfind("m,g,h,n,poly_c0,poly_c2,disc_bound\n", 0) == 0);
    // 43 members + header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 44);
    CHECK(csv.find("1,3,1,1,7,-6,7168\n") != std::string::npos);

    auto man = json::parse(slurp(out + ".manifest.json"));
    CHECK(man["schema"] == "d4/v1");
    CHECK(man["subcommand"] == "enumerate");
    REQUIRE(man["artifacts"].size() == 1);
    CHECK(man["artifacts"][0]["path"] == out);
    CHECK(man["artifacts"][0]["bytes"] == csv.size());
    CHECK(man["artifacts"][0]["sha256"] == d4tool::sha256_hex(csv));
}

TEST_CASE("artifact determinism across thread counts") {
    std::string a = "/tmp/d4_det_a.json", b = "/tmp/d4_det_b.json";
    auto ra = run_cli("chebotarev --a 2 --b 7 --m 1 --x 30000 --threads 1 --out " + a, "det1");
    auto rb = run_cli("chebotarev --a 2 --b 7 --m 1 --x 30000 --threads 3 --out " + b, "det3");
    CHECK(ra.exit_code == 0);
    CHECK(rb.exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());

    // same through the environment override
    std::string c = "/tmp/d4_det_c.csv", d = "/tmp/d4_det_d.csv";
    std::string base = std::string(D4_CLI_PATH) + " frobenius --a 2 --b 7 --m 1 --x 20000 --out ";
    CHECK(std::system(("D4_THREADS=1 " + base + c + " >/dev/null 2>&1").c_str()) == 0);
    CHECK(std::system(("D4_THREADS=4 " + base + d + " >/dev/null 2>&1").c_str()) == 0);
    CHECK(slurp(c) == slurp(d));
}

TEST_CASE("frobenius CSV carries one row per odd prime") {
    std::string out = "/tmp/d4_cli_frob.csv";
    auto r = run_cli("frobenius --a 2 --b 7 --m 1 --x 1000 --out " + out, "frob");
    CHECK(r.exit_code == 0);
    auto csv = slurp(out);
    auto primes = d4::prime_sieve(1000);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == primes.size());
    CHECK(csv.find("7,0,1,0,,,false\n") != std::string::npos);  // inadmissible row
}

TEST_CASE("zeta-check and ev subcommands") {
    auto z = run_cli("zeta-check --a 2 --b 7 --m 1 --x 2000", "zeta");
    CHECK(z.exit_code == 0);
    auto jz = json::parse(z.out);
    CHECK(jz["failures"] == 0);
    CHECK(jz["checked"].get<int>() > 250);

    auto e = run_cli("ev --a 2 --b 7 --m 97 --ell 2 --eta 0.08", "ev");
    CHECK(e.exit_code == 0);
    auto jev = json::parse(e.out);
    CHECK(jev["target_exponent"].get<double>() == doctest::Approx(0.5 - 1.0 / 12.0));
    CHECK(jev["torsion_exponent_targets"].size() == 5);

    auto bad = run_cli("ev --a 2 --b 7 --m 1 --ell 2 --eta 0.30", "evbad");
    CHECK(bad.exit_code == 3);
}

TEST_CASE("resource budgets surface as exit code 4") {
    auto r = run_cli("enumerate --a 2 --b 7 --X 1e30", "budget");
    CHECK(r.exit_code == 4);
}

TEST_CASE("config file supplies defaults, flags take precedence") {
    std::ofstream cfg("/tmp/d4_cfg.ini");
    cfg << "threads=2\n";
    cfg.close();
    auto r = run_cli("--config /tmp/d4_cfg.ini norm-test --a 2 --b 7", "cfg");
    CHECK(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["co1"] == true);
}

TEST_CASE("enumerate to stdout and chebotarev schema keys") {
    auto r = run_cli("enumerate --a 2 --b 7 --X 1e8", "enum_stdout");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("m,g,h,n,poly_c0,poly_c2,disc_bound\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);  // header + 4 members

    auto c = run_cli("chebotarev --a 2 --b 7 --m 1 --x 10000", "cheb_schema");
    CHECK(c.exit_code == 0);
    auto j = json::parse(c.out);
    CHECK(j["schema"] == "d4/v1");
    for (const char* key : {"x", "field", "pi_total", "excluded", "classes",
                            "max_proportion_deviation"})
        CHECK(j.contains(key));
    for (const char* cls : {"ID", "R2", "R", "S", "RS"}) {
        REQUIRE(j["classes"].contains(cls));
        for (const char* key :
             {"size", "count", "weighted", "expected", "normalized_error", "proportion"})
            CHECK(j["classes"][cls].contains(key));
    }
}

TEST_CASE("thresholds overflow path reports log-scale values") {
    // eps0 small enough that exp(C0/delta) overflows binary64
    auto r = run_cli("thresholds --a 2 --b 7 --eps0 0.01", "thr_inf");
    CHECK(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["kappa1"] == "inf");
    CHECK(j["log_kappa1"].get<double>() > 1e4);
    CHECK(j["log_T0_plus_3"].get<double>() > 1e3);
}

TEST_CASE("rho-coeffs and thresholds payloads") {
    std::string out = "/tmp/d4_cli_rho.csv";
    auto r = run_cli("rho-coeffs --a 2 --b 7 --m 1 --x 300 --out " + out, "rho");
    CHECK(r.exit_code == 0);
    auto csv = slurp(out);
    CHECK(csv.rfind("p,a_p\n", 0) == 0);
    CHECK(csv.find("\n223,2\n") != std::string::npos);  // split prime
    CHECK(csv.find("\n31,-2\n") != std::string::npos);  // central class

    auto t = run_cli("thresholds --a 2 --b 7 --eps0 0.1", "thr");
    CHECK(t.exit_code == 0);
    auto j = json::parse(t.out);
    CHECK(j["q_max"] == 56);
    CHECK(j["delta"].get<double>() == doctest::Approx(0.1 / 42.4).epsilon(1e-12));
    CHECK(j["x_threshold_log_table"].size() == 4);
    auto bad = run_cli("thresholds --a 2 --b 7 --eps0 0.3", "thrbad");
    CHECK(bad.exit_code == 3);
}

TEST_CASE("unwritable output path fails upfront") {
    auto r = run_cli("norm-test --a 2 --b 7 --out /nonexistent-dir/x.json", "unwritable");
    CHECK(r.exit_code == 3);
}

TEST_CASE("ingest-cl round trip") {
    std::ofstream csv("/tmp/d4_cli_cl.csv");
    csv << "a,b,g,h,disc_exact,invariant_factors,provenance\n"
        << "2,7,3,1,1957,2;4,cli-test\n";
    csv.close();
    auto r = run_cli("ingest-cl --file /tmp/d4_cli_cl.csv --ell 2", "ingest");
    CHECK(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["matched"] == 1);
    CHECK(j["entries"][0]["torsion_order"] == "4");
}
