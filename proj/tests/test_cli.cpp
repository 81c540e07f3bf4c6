#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "wn/dyadic.hpp"
#include "wn/kernels.hpp"

#ifndef WN_CLI_BIN
#error "WN_CLI_BIN must point at the command-line binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;     // stdout + stderr interleaved
};

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("wn_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path log = scratch_dir() / "last_run.log";
    const std::string command =
        std::string("cd ") + scratch_dir().string() + " && WN_THREADS=2 " + WN_CLI_BIN + " " +
        args + " > " + log.string() + " 2>&1";
    int status = std::system(command.c_str());
    RunResult r;
    if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    std::ifstream in(log);
    std::stringstream buffer;
    buffer << in.rdbuf();
    r.output = buffer.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// first token after `key ` on its own line
std::string value_after(const std::string& text, const std::string& key) {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
    }
    return "";
}

}  // namespace

TEST_CASE("help and bad usage") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("kernel --help").exit_code == 0);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("kernel --kind dirichlet --n 4 --M 6 --bogus-flag 1").exit_code == 2);
    CHECK(run_cli("kernel --kind sobolev --n 4 --M 6").exit_code == 2);
}

TEST_CASE("kernel subcommand dumps kernels with their integrals") {
    RunResult r = run_cli("kernel --kind dirichlet --n 8 --M 6 --out d8.csv");
    CHECK(r.exit_code == 0);
    CHECK(value_after(r.output, "integral") == "1");

    wn::StepFunction dumped = wn::read_step_function_csv((scratch_dir() / "d8.csv").string());
    CHECK(dumped.values.size() == 64);
    CHECK(wn::max_abs_diff(dumped, wn::dirichlet_kernel(8, wn::Resolution(6))) == 0.0);

    RunResult fejer = run_cli("kernel --kind fejer --n 100 --M 10 --out k100.csv");
    CHECK(fejer.exit_code == 0);
    CHECK(std::stod(value_after(fejer.output, "integral")) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::stod(value_after(fejer.output, "integral_abs")) <= 2.0 + 1e-12);

    RunResult norlund = run_cli("kernel --kind norlund --weights poly:1 --n 16 --M 8 --out f16.csv");
    CHECK(norlund.exit_code == 0);
    CHECK(std::stod(value_after(norlund.output, "integral")) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel subcommand needs weights for the weighted kind") {
    CHECK(run_cli("kernel --kind norlund --n 16 --M 8").exit_code == 2);
    CHECK(run_cli("kernel --kind norlund --weights poly --n 16 --M 8").exit_code == 2);
    CHECK(run_cli("kernel --kind dirichlet --n 100 --M 6").exit_code == 2);
}

TEST_CASE("mean subcommand reports the approximation error") {
    RunResult fejer = run_cli("mean --fejer --fn const:3 --n 7 --M 8 --p 2 --out m1.csv");
    CHECK(fejer.exit_code == 0);
    CHECK(value_after(fejer.output, "error") == "0");

    RunResult w1 = run_cli("mean --weights const --fn walsh:1 --n 2 --M 4 --p 2 --out m2.csv");
    CHECK(w1.exit_code == 0);
    CHECK(value_after(w1.output, "error") == "0.5");

    RunResult lip = run_cli("mean --weights poly:1 --fn lip:0.5 --n 100 --M 12 --p 1 --out m3.csv");
    CHECK(lip.exit_code == 0);
    double err = std::stod(value_after(lip.output, "error"));
    CHECK(err > 0.0);
    CHECK(err < 1.0);

    RunResult abel = run_cli("mean --weights poly:1 --fn walsh:3 --n 9 --M 6 --method abel --out m4.csv");
    CHECK(abel.exit_code == 0);
    RunResult conv =
        run_cli("mean --weights poly:1 --fn walsh:3 --n 9 --M 6 --method convolution --out m5.csv");
    CHECK(conv.exit_code == 0);
    CHECK(std::stod(value_after(abel.output, "error")) ==
          doctest::Approx(std::stod(value_after(conv.output, "error"))).epsilon(1e-10));
}

TEST_CASE("mean subcommand validates the mean selection") {
    CHECK(run_cli("mean --fn const:1 --n 4 --M 6").exit_code == 2);
    CHECK(run_cli("mean --fejer --weights const --fn const:1 --n 4 --M 6").exit_code == 2);
    CHECK(run_cli("mean --weights const --fn walsh:99 --n 4 --M 6").exit_code == 2);
    CHECK(run_cli("mean --weights const --fn walsh:1 --n 99 --M 6").exit_code == 2);
}

TEST_CASE("mean subcommand reads function files strictly") {
    wn::Resolution M(4);
    wn::StepFunction f(M);
    for (std::size_t j = 0; j < f.values.size(); ++j)
        f.values[j] = static_cast<double>(j) * 0.25;
    const fs::path good = scratch_dir() / "fn_good.csv";
    wn::write_csv(good.string(), f);
    CHECK(run_cli("mean --fejer --fn file:" + good.string() + " --n 4 --M 4 --out m6.csv").exit_code == 0);

    // declared resolution differs from --M
    CHECK(run_cli("mean --fejer --fn file:" + good.string() + " --n 4 --M 6 --out m7.csv").exit_code == 2);

    const fs::path truncated = scratch_dir() / "fn_bad.csv";
    wn::write_text_atomic(truncated.string(), "# resolution=4\n1\n2\n3\n");
    CHECK(run_cli("mean --fejer --fn file:" + truncated.string() + " --n 4 --M 4").exit_code == 2);

    CHECK(run_cli("mean --fejer --fn file:/no/such/file.csv --n 4 --M 4").exit_code == 2);
}

TEST_CASE("verify subcommand sweeps a bound and exits on the verdict") {
    RunResult r = run_cli(
        "verify --theorem fejer --fn lip:0.5 --p 1 --n 2:128 --M 9 --out rep.csv --json sum.json");
    CHECK(r.exit_code == 0);
    CHECK(value_after(r.output, "all_hold") == "true");

    std::string csv = slurp(scratch_dir() / "rep.csv");
    CHECK(csv.rfind("theorem,n,N,p,weights,lhs,rhs,margin,holds", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 128);

    std::string json = slurp(scratch_dir() / "sum.json");
    CHECK(json.find("\"all_hold\": true") != std::string::npos);
    CHECK(json.find("\"sup_ratio\"") != std::string::npos);
}

TEST_CASE("verify subcommand rejects mismatched weights") {
    CHECK(run_cli("verify --theorem t1 --weights poly:-1 --fn lip:0.5 --p 2 --n 2:64 --M 8").exit_code == 2);
    CHECK(run_cli("verify --theorem t2 --weights poly:1 --fn lip:0.5 --p 2 --n 2:64 --M 8").exit_code == 2);
    CHECK(run_cli("verify --theorem t1 --fn lip:0.5 --p 2 --n 2:64 --M 8").exit_code == 2);
    CHECK(run_cli("verify --theorem fejer --fn lip:0.5 --p 0.5 --n 2:64 --M 8").exit_code == 2);
    CHECK(run_cli("verify --theorem fejer --fn lip:0.5 --p 2 --n 64:2 --M 8").exit_code == 2);
}

TEST_CASE("verify subcommand carries the t3 ratio evidence") {
    RunResult r = run_cli(
        "verify --theorem t3 --weights poly:-0.5 --fn lip:1 --p 2 --n 2:256 --M 9 "
        "--out t3.csv --json t3.json");
    CHECK(r.exit_code == 0);
    std::string json = slurp(scratch_dir() / "t3.json");
    CHECK(json.find("sup_ratio") != std::string::npos);
    CHECK(json.find("\"cond\"") != std::string::npos);

    // a generous constant scores the bound, a tiny one fails it
    CHECK(run_cli("verify --theorem t3 --weights poly:-0.5 --fn lip:1 --p 2 --n 2:64 --M 8 "
                  "--C 1000 --out t3c.csv --json t3c.json").exit_code == 0);
    RunResult stingy = run_cli(
        "verify --theorem t3 --weights poly:-0.5 --fn lip:1 --p 2 --n 2:64 --M 8 "
        "--C 0.000001 --out t3d.csv --json t3d.json");
    CHECK(stingy.exit_code == 1);
    CHECK(value_after(stingy.output, "all_hold") == "false");
}

TEST_CASE("verify handles the spike weights and the ms comparison") {
    RunResult t1 = run_cli(
        "verify --theorem t1 --weights spike --fn lip:0.5 --p 2 --n 2:256:3 --M 10 "
        "--out spike.csv --json spike.json");
    CHECK(t1.exit_code == 0);
    std::string json = slurp(scratch_dir() / "spike.json");
    CHECK(json.find("\"looks_bounded\": false") != std::string::npos);

    RunResult ms = run_cli(
        "verify --theorem ms --weights poly:1 --fn lip:0.5 --p 2 --n 96 --M 9 "
        "--out ms.csv --json ms.json");
    CHECK(ms.exit_code == 0);
}

TEST_CASE("rates subcommand fits slopes and honors reruns byte for byte") {
    RunResult r = run_cli(
        "rates --alpha 0.5 --p 2 --weights const --n 16:512 --M 10 --out r1.csv "
        "--json r1.json --svg r1.svg");
    CHECK(r.exit_code == 0);
    double slope = std::stod(value_after(r.output, "slope"));
    CHECK(slope >= -0.65);
    CHECK(slope <= -0.35);
    CHECK(value_after(r.output, "matches") == "true");

    std::string first = slurp(scratch_dir() / "r1.csv");
    CHECK(first.find("n,error") != std::string::npos);

    std::string svg = slurp(scratch_dir() / "r1.svg");
    CHECK(svg.rfind("<svg", 0) == 0);

    RunResult again = run_cli(
        "rates --alpha 0.5 --p 2 --weights const --n 16:512 --M 10 --out r2.csv");
    CHECK(again.exit_code == 0);
    CHECK(slurp(scratch_dir() / "r2.csv") == first);

    RunResult steep = run_cli("rates --alpha 2 --p 1 --weights const --n 16:512 --M 10 --out r3.csv");
    CHECK(steep.exit_code == 0);
    double steep_slope = std::stod(value_after(steep.output, "slope"));
    CHECK(steep_slope >= -1.15);
    CHECK(steep_slope <= -0.85);
}

TEST_CASE("rates subcommand flags degenerate data") {
    RunResult r = run_cli("rates --alpha 0.5 --fn const:1 --n 16:512 --M 10 --out r4.csv");
    CHECK(r.exit_code == 3);
    CHECK(run_cli("rates --alpha 0.5 --n 16:32 --M 10").exit_code == 2);
    CHECK(run_cli("rates --alpha -1 --n 16:512 --M 10").exit_code == 2);
}
