#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "mfrls/dataset_io.hpp"
#include "mfrls/report_io.hpp"

using namespace mfrls;
using namespace mfrls::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "mfrls");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("mfrls_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_run_config(in, "test.conf");
}

}  // namespace

TEST_CASE("config: defaults and overrides") {
    const RunConfig d = parse("");
    CHECK(d.study.simulation.horizon == 160);
    CHECK(d.study.grid == even_grid());
    CHECK(d.study.runs == 50);
    const RunConfig c = parse("# comment\n\nN = 80   # trailing\nmethods = TC, cs\ngrid = 0.5, 0.9\nbank = regenerate\n");
    CHECK(c.study.simulation.horizon == 80);
    CHECK(c.study.methods == std::vector<Method>{Method::TC, Method::CS});
    CHECK(c.study.grid == std::vector<double>{0.5, 0.9});
    CHECK(c.study.simulation.bank_source == BankSource::Regenerate);
    CHECK(parse("grid_points = 5\ngrid_min = 0.2\n").study.grid == even_grid(5, 0.2, 1.0));
}

TEST_CASE("config: errors carry line and field") {
    auto message = [](const std::string& text) {
        try {
            (void)parse(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("N = 160\nfilter_cutoff = 1.5\n") == "test.conf:2: filter_cutoff: must lie in (0, 1), got 1.5");
    CHECK(message("bogus = 1\n").find("test.conf:1: unknown key 'bogus'") == 0);
    CHECK(message("runs = 2\nruns = 3\n").find("test.conf:2: runs: already set on line 1") == 0);
    CHECK(message("n = two\n").find("test.conf:1: n:") == 0);
    CHECK(message("just text\n").find("test.conf:1: expected") == 0);
    CHECK(message("methods = TC, XX\n").find("test.conf:1: methods: unknown method 'XX'") == 0);
    CHECK(message("grid = 0.5\ngrid_points = 3\n").find("grid_points: conflicts") != std::string::npos);
    CHECK(message("\n\nfilter_order = 7\n").find("test.conf:3: filter_order") == 0);
}

TEST_CASE("shipped config equals the built-in defaults") {
    const RunConfig shipped = load_run_config(MFRLS_SOURCE_DIR "/config/default.conf");
    const RunConfig d;
    CHECK(shipped.study.grid == d.study.grid);
    CHECK(shipped.study.runs == d.study.runs);
    CHECK(shipped.study.methods == d.study.methods);
    CHECK(shipped.study.simulation.filter_cutoff == d.study.simulation.filter_cutoff);
    CHECK(shipped.study.simulation.horizon == d.study.simulation.horizon);
    CHECK(shipped.study.estimation.delta == d.study.estimation.delta);
    CHECK(shipped.out_dir == d.out_dir);
}

TEST_CASE("simulate is deterministic") {
    const fs::path dir = scratch("simulate");
    const auto a = run({"simulate", "--seed", "42", "--out", (dir / "a.csv").string()});
    const auto b = run({"simulate", "--seed", "42", "--out", (dir / "b.csv").string()});
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(a.out.find("N=160 p=4 sigma2=0.01 seed=42") != std::string::npos);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(load_dataset((dir / "a.csv").string()).size() == 160);

    std::ofstream(dir / "bad.conf") << "filter_cutoff = 1.5\n";
    const auto bad = run({"simulate", "--config", (dir / "bad.conf").string(), "--out", (dir / "c.csv").string()});
    CHECK(bad.code == kExitUsage);
    CHECK(bad.err.find("filter_cutoff") != std::string::npos);
}

TEST_CASE("estimate") {
    const fs::path dir = scratch("estimate");
    const std::string data = (dir / "d.csv").string();
    REQUIRE(run({"simulate", "--seed", "5", "--out", data}).code == 0);

    const auto ok = run({"estimate", "--in", data, "--method", "TC", "--lambda", "0.6,0.95", "--out",
                         (dir / "e.csv").string()});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("COD ") == 0);
    CHECK(ok.out.find("unavailable") == std::string::npos);
    std::ifstream ef(dir / "e.csv");
    const EstimationFile f = read_estimation(ef);
    CHECK(f.rows.size() == 158);
    CHECK(f.atf);

    const auto arity = run({"estimate", "--in", data, "--method", "RARX", "--lambda", "0.6,0.95", "--out",
                            (dir / "x.csv").string()});
    CHECK(arity.code == kExitUsage);
    CHECK(arity.err.find("RARX takes 1") != std::string::npos);

    Dataset ds = load_dataset(data);
    ds.trajectory.reset();
    save_dataset((dir / "nt.csv").string(), ds);
    const auto nt = run({"estimate", "--in", (dir / "nt.csv").string(), "--method", "CS", "--lambda", "0.5,0.9",
                         "--out", (dir / "e2.csv").string()});
    CHECK(nt.code == 0);
    CHECK(nt.out.find("ATF unavailable") != std::string::npos);

    const auto missing = run({"estimate", "--in", (dir / "none.csv").string(), "--method", "TC", "--lambda",
                              "0.5,0.9", "--out", (dir / "e3.csv").string()});
    CHECK(missing.code == kExitData);
    CHECK(run({"estimate", "--in", data}).code == kExitUsage);
}

TEST_CASE("study writes a flushed csv and a summary") {
    const fs::path dir = scratch("study");
    const auto r = run({"study", "--runs", "2", "--grid", "0.5,0.9", "--methods", "RARX,TC", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("TC") != std::string::npos);
    std::ifstream csv(dir / "study.csv");
    const auto recs = read_study_csv(csv);
    CHECK(recs.size() == 4);
    CHECK(fs::exists(dir / "summary.json"));

    const fs::path dir2 = scratch("study_jobs");
    CHECK(run({"study", "--runs", "2", "--grid", "0.5,0.9", "--methods", "RARX,TC", "--jobs", "2", "--out",
               dir2.string()}).code == 0);
    CHECK(slurp(dir / "study.csv") == slurp(dir2 / "study.csv"));
    CHECK(slurp(dir / "summary.json") == slurp(dir2 / "summary.json"));

    CHECK(run({"study", "--runs", "0", "--out", dir.string()}).code == kExitUsage);
    CHECK(run({"study", "--methods", "RARX,NOPE", "--out", dir.string()}).code == kExitUsage);
}

TEST_CASE("kernels") {
    const auto tc = run({"kernels", "--kind", "tc", "--lambda", "0.5,0.25"});
    CHECK(tc.code == 0);
    CHECK(tc.out == "[[0.5,0.25],[0.25,0.25]]\n");
    CHECK(run({"kernels", "--kind", "di", "--lambda", "0.5,0.25"}).out == "[[0.5,0],[0,0.25]]\n");
    CHECK(run({"kernels", "--kind", "vector", "--lambda", "0.5"}).code == kExitUsage);
    CHECK(run({"kernels", "--kind", "tc", "--lambda", "1.5"}).code == kExitUsage);

    const auto rem = run({"kernels", "--remark"});
    CHECK(rem.code == 0);
    std::istringstream in(rem.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "lambda2,f,g");
    int rows = 0;
    while (std::getline(in, line)) {
        const auto c1 = line.find(','), c2 = line.rfind(',');
        CHECK(parse_real(line.substr(c1 + 1, c2 - c1 - 1)) <= parse_real(line.substr(c2 + 1)));
        ++rows;
    }
    CHECK(rows == 200);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}
