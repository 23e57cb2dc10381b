#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "tfq/io.hpp"
#include "tfq/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int rc = -1;
    std::string out;  // stdout and stderr combined
};

std::string tfq_bin() {
    const char* p = std::getenv("TFQ_BIN");
    REQUIRE_MESSAGE(p != nullptr, "TFQ_BIN must point at the tfq binary");
    return p;
}

RunResult run(const std::string& args) {
    std::string cmd = tfq_bin() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const fs::path& work_dir() {
    static fs::path dir = [] {
        std::string tmpl = (fs::temp_directory_path() / "tfq_cli_XXXXXX").string();
        char* made = mkdtemp(tmpl.data());
        REQUIRE(made != nullptr);
        return fs::path(made);
    }();
    return dir;
}

std::string put(const std::string& name, const std::string& content) {
    fs::path p = work_dir() / name;
    std::ofstream(p) << content;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::complex<double> as_cplx(const json& pair) {
    return {pair.at(0).get<double>(), pair.at(1).get<double>()};
}

double values_diff(const json& values, const std::vector<std::complex<double>>& want) {
    REQUIRE(values.size() == want.size());
    double d = 0;
    for (size_t i = 0; i < want.size(); ++i)
        d = std::max(d, std::abs(as_cplx(values.at(i)) - want[i]));
    return d;
}

const double kR = 1.0 / std::sqrt(2.0);

std::string impulse1_path() {
    static std::string p = put(
        "sig1.json", R"({"group": [4], "values": [[0,0],[1,0],[0,0],[0,0]]})");
    return p;
}

std::string rect_path() {
    static std::string p = [] {
        std::string phases = put("phases.json",
                                 R"({"kind": "phases", "group": [4], "subgroup": "div:2",)"
                                 R"( "phases": [[0,1],[0,1],[0,1],[0,1]]})");
        std::string out = (work_dir() / "rect.json").string();
        RunResult r = run("window make " + phases + " --out " + out);
        REQUIRE(r.rc == 0);
        return out;
    }();
    return p;
}

}  // namespace

TEST_CASE("group info: text summary and json fields") {
    RunResult r = run("group info Z4 --subgroup div:2");
    CHECK(r.rc == 0);
    CHECK(r.out.find("order 4") != std::string::npos);
    CHECK(r.out.find("elements (0) (2)") != std::string::npos);
    CHECK(r.out.find("annihilator (0) (2)") != std::string::npos);
    CHECK(r.out.find("phi-b-to-bstar (0)->(0) (2)->(1)") != std::string::npos);

    std::string out = (work_dir() / "info.json").string();
    CHECK(run("group info Z4 --subgroup div:2 --out " + out).rc == 0);
    json j = json::parse(slurp(out));
    CHECK(j.at("order") == 4);
    CHECK(j.at("phi").at("quot_to_ann") == json::parse("[[0],[2]]"));

    RunResult gen = run("group info Z4 --subgroup \"gen:(2)\"");
    CHECK(gen.rc == 0);
    CHECK(gen.out.find("phi unsupported") != std::string::npos);
}

TEST_CASE("fourier: frozen spectrum, fast agreement, byte determinism") {
    std::string o1 = (work_dir() / "f1.json").string();
    std::string o2 = (work_dir() / "f2.json").string();
    CHECK(run("fourier --in " + impulse1_path() + " --out " + o1).rc == 0);
    CHECK(run("fourier --in " + impulse1_path() + " --out " + o2).rc == 0);
    CHECK(slurp(o1) == slurp(o2));

    json j = json::parse(slurp(o1));
    CHECK(values_diff(j.at("values"), {{0.5, 0}, {0, -0.5}, {-0.5, 0}, {0, 0.5}}) <= 1e-12);

    RunResult fast = run("fourier --in " + impulse1_path() + " --fast");
    CHECK(fast.rc == 0);
    json jf = json::parse(fast.out);
    CHECK(values_diff(jf.at("values"), {{0.5, 0}, {0, -0.5}, {-0.5, 0}, {0, 0.5}}) <= 1e-10);
}

TEST_CASE("zak: frozen grid, domain full, inversion from either file") {
    RunResult grid = run("zak --in " + impulse1_path() + " --subgroup div:2");
    CHECK(grid.rc == 0);
    json jg = json::parse(grid.out);
    CHECK(jg.at("domain") == "T");
    CHECK(values_diff(jg.at("values"), {{0, 0}, {0, 0}, {1, 0}, {1, 0}}) <= 1e-15);

    std::string zt = (work_dir() / "zakT.json").string();
    std::string zf = (work_dir() / "zakFull.json").string();
    CHECK(run("zak --in " + impulse1_path() + " --subgroup div:2 --out " + zt).rc == 0);
    CHECK(run("zak --in " + impulse1_path() + " --subgroup div:2 --domain full --out " + zf).rc == 0);

    // The full table restricted back to the grid must be the grid file; the
    // fast path agrees with the dense one.
    json full = json::parse(slurp(zf));
    CHECK(full.at("values").size() == 16);
    RunResult full_fast = run("zak --in " + impulse1_path() +
                              " --subgroup div:2 --domain full --fast");
    CHECK(full_fast.rc == 0);
    json jff = json::parse(full_fast.out);
    double dev = 0;
    for (size_t i = 0; i < 16; ++i)
        dev = std::max(dev, std::abs(as_cplx(full.at("values").at(i)) -
                                     as_cplx(jff.at("values").at(i))));
    CHECK(dev <= 1e-10);

    for (const std::string& src : {zt, zf}) {
        RunResult inv = run("izak --in " + src);
        CHECK(inv.rc == 0);
        json ji = json::parse(inv.out);
        CHECK(values_diff(ji.at("values"), {{0, 0}, {1, 0}, {0, 0}, {0, 0}}) <= 1e-12);
    }

    // --fast on izak is accepted and changes nothing: same averaging path.
    RunResult inv_fast = run("izak --in " + zt + " --fast");
    CHECK(inv_fast.rc == 0);
    CHECK(inv_fast.out == run("izak --in " + zt).out);
}

TEST_CASE("window make and check: frozen window, pass line, failure code") {
    json rect = json::parse(slurp(rect_path()));
    CHECK(rect.at("kind") == "signal");
    CHECK(rect.at("subgroup") == "div:2");
    CHECK(values_diff(rect.at("values"), {{kR, 0}, {kR, 0}, {0, 0}, {0, 0}}) <= 1e-15);

    RunResult ok = run("window check " + rect_path());
    CHECK(ok.rc == 0);
    CHECK(ok.out == "pass max_deviation=0 tolerance=1e-08\n");

    std::string d0 = put("delta0.json", R"({"group": [4], "values": [[1,0],[0,0],[0,0],[0,0]]})");
    RunResult bad = run("window check " + d0 + " --subgroup div:2");
    CHECK(bad.rc == 4);
    CHECK(bad.out == "fail max_deviation=0.70710678118654757 tolerance=1e-08\n");

    // The flat window hits the criterion exactly; a generic-phase window
    // carries ordinary roundoff, so an impossibly tight tolerance flips the
    // verdict and the exit code.
    std::string ph = put("phases2.json",
                         R"({"kind": "phases", "group": [4], "subgroup": "div:2",)"
                         R"( "phases": [[1,3],[1,7],[2,5],[3,11]]})");
    std::string w = (work_dir() / "generic.json").string();
    CHECK(run("window make " + ph + " --out " + w).rc == 0);
    CHECK(run("window check " + w).rc == 0);
    CHECK(run("window check " + w + " --tol 1e-30").rc == 4);
}

TEST_CASE("wht and iwht: frozen coefficients, round trip, subgroup source") {
    std::string d0 = put("delta0b.json", R"({"group": [4], "values": [[1,0],[0,0],[0,0],[0,0]]})");
    std::string alpha = (work_dir() / "alpha.json").string();
    // The window file carries its subgroup, so none is passed here.
    RunResult an = run("wht --in " + d0 + " --window " + rect_path() + " --out " + alpha);
    CHECK(an.rc == 0);
    json ja = json::parse(slurp(alpha));
    CHECK(ja.at("domain") == "delta");
    CHECK(ja.at("subgroup") == "div:2");
    CHECK(values_diff(ja.at("values"), {{kR, 0}, {kR, 0}, {0, 0}, {0, 0}}) <= 1e-12);

    RunResult syn = run("iwht --in " + alpha + " --window " + rect_path());
    CHECK(syn.rc == 0);
    json js = json::parse(syn.out);
    CHECK(values_diff(js.at("values"), {{1, 0}, {0, 0}, {0, 0}, {0, 0}}) <= 1e-12);

    // Conflicting subgroup flag is a coherent-input failure.
    CHECK(run("wht --in " + d0 + " --window " + rect_path() + " --subgroup div:4").rc == 3);
}

TEST_CASE("sim qzt: state amplitudes and endpoint matrices") {
    std::string s3 = put("sig3.json", R"({"group": [4], "values": [[0,0],[0,0],[0,0],[1,0]]})");
    RunResult st = run("sim qzt --group Z4 --subgroup div:2 --state --in " + s3);
    CHECK(st.rc == 0);
    json j = json::parse(st.out);
    CHECK(j.at("registers").at(0).at("kind") == "coset_rep_t1");
    CHECK(j.at("registers").at(1).at("kind") == "char_t2");
    CHECK(values_diff(j.at("values"), {{0, 0}, {0, 0}, {kR, 0}, {-kR, 0}}) <= 1e-12);

    RunResult mid = run("sim qzt --group Z4 --subgroup div:4 --matrix");
    CHECK(mid.rc == 0);
    json jm = json::parse(mid.out);
    REQUIRE(jm.at("dim") == 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            CHECK(std::abs(as_cplx(jm.at("matrix").at(r).at(c)) -
                           std::complex<double>(r == c ? 1 : 0, 0)) <= 1e-12);

    RunResult mf = run("sim qzt --group Z4 --subgroup div:1 --matrix");
    CHECK(mf.rc == 0);
    json jf = json::parse(mf.out);
    constexpr double kPi = 3.14159265358979323846;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            std::complex<double> want = 0.5 * std::polar(1.0, -2.0 * kPi * r * c / 4.0);
            CHECK(std::abs(as_cplx(jf.at("matrix").at(r).at(c)) - want) <= 1e-10);
        }
}

TEST_CASE("sim qwht: coefficient state and the fourier endpoint") {
    std::string d0 = put("delta0c.json", R"({"group": [4], "values": [[1,0],[0,0],[0,0],[0,0]]})");
    RunResult st = run("sim qwht --window " + rect_path() + " --state --in " + d0);
    CHECK(st.rc == 0);
    json j = json::parse(st.out);
    CHECK(j.at("registers").at(0).at("kind") == "element_of_b");
    CHECK(j.at("registers").at(1).at("kind") == "element_of_bstar");
    CHECK(values_diff(j.at("values"), {{kR, 0}, {kR, 0}, {0, 0}, {0, 0}}) <= 1e-12);

    std::string c4 = put("const4.json",
                         R"({"group": [4], "values": [[0.5,0],[0.5,0],[0.5,0],[0.5,0]]})");
    RunResult m = run("sim qwht --window " + c4 + " --subgroup div:4 --matrix");
    CHECK(m.rc == 0);
    json jm = json::parse(m.out);
    constexpr double kPi = 3.14159265358979323846;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            std::complex<double> want = 0.5 * std::polar(1.0, -2.0 * kPi * r * c / 4.0);
            CHECK(std::abs(as_cplx(jm.at("matrix").at(r).at(c)) - want) <= 1e-10);
        }
}

TEST_CASE("exit codes separate the failure classes") {
    CHECK(run("group info Q8").rc == 2);
    CHECK(run("zak --in " + impulse1_path() + " --subgroup div:3").rc == 2);
    CHECK(run("zak --in " + impulse1_path() + " --subgroup div:2 --domain X").rc == 2);
    CHECK(run("nonsense").rc == 2);

    std::string shrt = put("short.json", R"({"group": [4], "values": [[1,0],[0,0]]})");
    CHECK(run("fourier --in " + shrt).rc == 3);

    std::string d0 = put("delta0d.json", R"({"group": [4], "values": [[1,0],[0,0],[0,0],[0,0]]})");
    CHECK(run("wht --in " + impulse1_path() + " --window " + d0 + " --subgroup div:2").rc == 4);

    // A two-point window is valid for B = {0, 2} however B is presented, so
    // this failure is the missing aligned isomorphisms, not the window.
    std::string rp = put("rect_plain.json",
                         R"({"group": [4], "values": [[0.70710678118654757,0],)"
                         R"([0.70710678118654757,0],[0,0],[0,0]]})");
    CHECK(run("sim qwht --window " + rp + " --subgroup \"gen:(2)\" --matrix").rc == 5);
}

TEST_CASE("verify: json report, determinism, tolerance gate") {
    RunResult r1 = run("verify --suite fgp");
    CHECK(r1.rc == 0);
    json j = json::parse(r1.out);
    CHECK(j.at("pass") == true);
    CHECK(j.at("checks").size() > 0);
    CHECK(r1.out == run("verify --suite fgp").out);

    CHECK(run("verify --suite fgp --tol 1e-20").rc == 1);
    CHECK(run("verify --suite bogus").rc == 2);
}

TEST_CASE("file formats round trip through the io layer") {
    using namespace tfq;
    FiniteAbelianGroup g({2, 4});
    Signal f = Signal::basis(g, 5);
    Signal f2 = signal_from_json(signal_to_json(f));
    CHECK(f2.group == g);
    CHECK(f2.values == f.values);

    Subgroup sub = Subgroup::from_divisors(g, {1, 2});
    ZakArray z = zak_fast(f, sub);
    ZakArray z2 = zak_from_json(zak_to_json(z));
    CHECK(z2.domain == ZakDomain::restricted_t);
    CHECK(z2.subgroup.elements() == sub.elements());
    CHECK(z2.values == z.values);

    // A plain signal document doubles as a window candidate file.
    WindowFile wf = window_file_from_json(signal_to_json(f));
    CHECK_FALSE(wf.is_phases);
    CHECK_FALSE(wf.has_subgroup);
    CHECK(wf.signal.values == f.values);

    Window w = window_from_phases(random_phases(8, "cli/io-window"), sub);
    WHCoefficients alpha = wh_analyze(f, w);
    WHCoefficients a2 = alpha_from_json(alpha_to_json(alpha));
    CHECK(a2.subgroup.elements() == sub.elements());
    CHECK(a2.values == alpha.values);
}
