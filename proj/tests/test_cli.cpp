#include "doctest.h"

#include "hforge/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace hforge;
namespace fs = std::filesystem;

namespace {

struct Output {
    int code = -1;
    std::string out;
};

std::string binary() {
    const char* b = std::getenv("HECKE_FORGE_BIN");
    return b ? b : "./hecke_forge";
}

Output run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + "'" + binary() + "' " + args + " 2>/dev/null";
    Output o;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, got);
    int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / ("hecke_forge_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

// Each line is {suite, case, status, witness, time_ms} with the expected types.
std::vector<Json> parse_report(const std::string& text) {
    std::vector<Json> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        Json j = Json::parse(line);
        CHECK(j.size() == 5);
        CHECK(j.at("suite").is_string());
        CHECK(j.at("case").is_string());
        CHECK(j.at("witness").is_object());
        CHECK(j.at("time_ms").is_number());
        std::string s = j.at("status");
        CHECK((s == "pass" || s == "fail" || s == "skip"));
        out.push_back(j);
    }
    return out;
}

std::vector<Json> without_timing(std::vector<Json> rs) {
    for (auto& r : rs) r.erase("time_ms");
    return rs;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gauss-sum prints G with G^2 = 5") {
    Output o = run("compute gauss-sum --p 5 --order 2");
    CHECK(o.code == 0);
    Json j = Json::parse(o.out);
    Cyclo g = cyclo_from_json(j.at("G"));
    CHECK(g * g == Cyclo(5));
    CHECK(cyclo_from_json(j.at("G_squared")) == Cyclo(5));
    CHECK(j.at("status") == "pass");
    CHECK(j.at("character").at("conductor_exponent") == 1);
    Json j3 = Json::parse(run("compute gauss-sum --p 3 --order 2").out);
    CHECK(cyclo_from_json(j3.at("G_squared")) == Cyclo(-3));
}

TEST_CASE("critical prints Emb, center and the table") {
    Output o = run("compute critical --mu 1,0,-1 --nu 1,-1");
    CHECK(o.code == 0);
    Json j = Json::parse(o.out);
    CHECK(j.at("emb") == Json::array({0}));
    CHECK(j.at("center") == "1/2");
    CHECK(j.contains("s_min"));
    CHECK(j.contains("s_max"));
    // interlacing 3 >= 1 + x >= 1 >= -1 + x >= -1
    Json k = Json::parse(run("compute critical --mu 3,1,-1 --nu 1,-1").out);
    CHECK(k.at("emb") == Json::array({0, 1, 2}));
    CHECK(k.at("center") == "3/2");
    CHECK(k.at("critical_set") == Json::array({"1/2", "3/2", "5/2"}));
    for (const auto& row : k.at("table")) {
        long nu = row.at("nu");
        CHECK(row.at("in_emb") == (nu >= 0 && nu <= 2));
    }
}

TEST_CASE("hecke-expand V1 for GL_2 at p = 2") {
    Output o = run("compute hecke-expand --n 2 --p 2 --op V1");
    CHECK(o.code == 0);
    Json j = Json::parse(o.out);
    CHECK(j.at("cosets") == 2);
    CHECK(j.at("terms").size() == 2);
    for (const auto& t : j.at("terms")) {
        CHECK(t.at("matrix").size() == 2);
        CHECK(t.at("coefficient") == "1");
    }
    CHECK(j.at("coverage").at("uncovered") == 0);
    Json vp = Json::parse(run("compute hecke-expand --n 3 --p 2 --op Vp").out);
    CHECK(vp.at("cosets") == 16);
}

TEST_CASE("other compute subcommands") {
    Json b = Json::parse(run("compute branch --mu 4,1,0").out);
    CHECK(b.at("count") == 8);
    CHECK(b.at("formula") == 8);
    Json s = Json::parse(run("compute satake --n 3 --p 2").out);
    CHECK(s.at("status") == "pass");
    CHECK(s.at("rows").size() == 4);
    // N(f)^{1 + 3(nu - nu_min)} (kappa kappa')^{-1} with kappa kappa' = 1
    Json kh = Json::parse(run("compute kappa-hat --n 3 --p 3 --order 2 --nu 1 --nu-min 0 --lambda 1,1 --lambda-prime 1,1").out);
    CHECK(kh.at("norm_exponent") == 4);
    CHECK(cyclo_from_json(kh.at("kappa_hat")) == Cyclo(81) * cyclo_from_json(kh.at("kappa")).inv() *
                                                    cyclo_from_json(kh.at("kappa_prime")).inv());
}

TEST_CASE("integrate round-trips a serialized distribution") {
    fs::path dir = scratch_dir();
    fs::path file = dir / "mu.json";
    Output a = run("compute integrate --p 5 --depth 3 --dim 2 --kappa 3 --order 2 --emit '" + file.string() + "'");
    CHECK(a.code == 0);
    Output b = run("compute integrate --input '" + file.string() + "' --order 2");
    CHECK(b.code == 0);
    Json ja = Json::parse(a.out), jb = Json::parse(b.out);
    CHECK(ja.at("value") == jb.at("value"));
    CHECK(jb.at("relation_ok") == true);
    Json d;
    std::ifstream(file) >> d;
    CHECK(d.at("p") == 5);
    CHECK(d.at("levels").size() == 3);
    CHECK(d.at("levels")[1].at("cosets").size() == 20);
    fs::remove_all(dir);
}

TEST_CASE("run: schema, skip records and determinism") {
    std::string args = "--suite weights --suite functional-equation --seed 11";
    Output a = run(args + " --jobs 1"), b = run(args + " --jobs 3");
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    auto ra = parse_report(a.out), rb = parse_report(b.out);
    CHECK(without_timing(ra) == without_timing(rb));
    std::set<std::string> skipped;
    for (const auto& r : ra)
        if (r.at("status") == "skip") skipped.insert(r.at("suite"));
    CHECK(skipped == std::set<std::string>{"matrices", "hecke", "projections", "gauss", "distributions"});
    // every case id appears once
    std::set<std::string> ids;
    for (const auto& r : ra) ids.insert(r.at("suite").get<std::string>() + "/" + r.at("case").get<std::string>());
    CHECK(ids.size() == ra.size());
    // the environment seed is a fallback for --seed
    Output e = run("--suite weights --suite functional-equation", "HECKE_FORGE_SEED=11");
    CHECK(without_timing(parse_report(e.out)) == without_timing(ra));
    Output f = run("--suite weights --suite functional-equation --seed 12");
    CHECK_FALSE(without_timing(parse_report(f.out)) == without_timing(ra));
}

TEST_CASE("run: --json-out mirrors stdout") {
    fs::path dir = scratch_dir();
    fs::path file = dir / "report.jsonl";
    Output o = run("--suite weights --json-out '" + file.string() + "'");
    CHECK(o.code == 0);
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == o.out);
    fs::remove_all(dir);
}

TEST_CASE("run: corrupted distribution fixture gives exactly one fail") {
    fs::path dir = scratch_dir();
    REQUIRE(run("compute integrate --p 3 --depth 3 --dim 2 --kappa 2 --order 2 --emit '" + (dir / "mu.json").string() + "'")
                .code == 0);
    Json d;
    std::ifstream(dir / "mu.json") >> d;
    Json bad = d;
    Json& v = bad["levels"][1]["cosets"][2]["value"][1];
    v = to_json(cyclo_from_json(v) + Cyclo(1));
    write_file(dir / "corrupted.json", bad.dump());
    write_file(dir / "intact.conf", "# intact fixture\nsuites = distributions\ndistributions.primes = 3\n"
                                    "distributions.depth = 2\ndistributions.fixture = mu.json\n");
    write_file(dir / "corrupted.conf", "suites = distributions\ndistributions.primes = 3\n"
                                       "distributions.depth = 2\ndistributions.fixture = corrupted.json  # relative\n");
    Output ok = run("--config '" + (dir / "intact.conf").string() + "'");
    CHECK(ok.code == 0);
    Output o = run("--config '" + (dir / "corrupted.conf").string() + "'");
    CHECK(o.code == 1);
    auto rs = parse_report(o.out);
    std::vector<Json> fails;
    for (const auto& r : rs)
        if (r.at("status") == "fail") fails.push_back(r);
    REQUIRE(fails.size() == 1);
    CHECK(fails[0].at("case") == "fixture");
    const Json& w = fails[0].at("witness").at("witness");
    // level-2 coset index 2 (x = 4) breaks the relation with level 1 below it, and with its own lifts
    CHECK((w.at("level") == 1 || w.at("level") == 2));
    CHECK(w.at("coordinate") == 1);
    fs::remove_all(dir);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("--suite nope").code == 2);
    CHECK(run("--config /nonexistent/hecke.conf").code == 2);
    CHECK(run("--jobs 0").code == 2);
    CHECK(run("compute gauss-sum --p 4 --order 2").code == 2);
    CHECK(run("compute hecke-expand --n 2 --p 2 --op W7").code == 2);
    CHECK(run("compute critical --mu 0,1 --nu 0").code == 2);
    CHECK(run("compute").code == 2);
    fs::path dir = scratch_dir();
    write_file(dir / "bad.conf", "seed = 3\nn_max = 1\n");
    CHECK(run("--config '" + (dir / "bad.conf").string() + "'").code == 2);
    write_file(dir / "unknown.conf", "colour = blue\n");
    CHECK(run("--config '" + (dir / "unknown.conf").string() + "'").code == 2);
    CHECK(run("--suite weights --json-out /nonexistent/dir/report.jsonl").code == 2);
    CHECK(run("--help").code == 0);
    fs::remove_all(dir);
}

TEST_CASE("printed default configuration parses back") {
    Output o = run("--print-config");
    CHECK(o.code == 0);
    fs::path dir = scratch_dir();
    write_file(dir / "default.conf", o.out);
    Output l = run("--config '" + (dir / "default.conf").string() + "' --list");
    CHECK(l.code == 0);
    Output d = run("--list");
    CHECK(l.out == d.out);
    CHECK(l.out.find("hecke/gritsenko.n3.p2.r1") != std::string::npos);
    fs::remove_all(dir);
}

}
