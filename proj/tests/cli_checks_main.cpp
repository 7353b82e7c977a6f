// End-to-end checks of the command-line binary: exit codes, output files,
// golden-file byte comparisons, and SVG structure. argv: cli path, data dir,
// golden dir, scratch dir. Prints one line per check and exits nonzero on
// any failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what)
{
    std::printf("%s %s\n", ok ? "[ ok ]" : "[FAIL]", what.c_str());
    if (!ok) ++failures;
}

std::string g_cli, g_data, g_golden, g_scratch;

int run(const std::string& args, const std::string& capture = {})
{
    std::string cmd = "\"" + g_cli + "\" " + args;
    if (!capture.empty())
        cmd += " >\"" + capture + "\" 2>&1";
    else
        cmd += " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

std::size_t count(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

std::size_t data_rows(const std::string& csv)
{
    std::size_t rows = 0;
    std::size_t start = 0;
    bool seen_header = false;
    while (start < csv.size()) {
        auto end = csv.find('\n', start);
        if (end == std::string::npos) end = csv.size();
        const std::string line = csv.substr(start, end - start);
        start = end + 1;
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            seen_header = true;
            continue;
        }
        ++rows;
    }
    return rows;
}

std::string scratch(const std::string& name)
{
    return (fs::path(g_scratch) / name).string();
}

bool svg_ok(const std::string& path, std::size_t polylines)
{
    const auto text = slurp(path);
    return text.rfind("<?xml", 0) == 0 && count(text, "<polyline") == polylines
           && text.find("</svg>") != std::string::npos;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 5) {
        std::fprintf(stderr, "usage: cli_checks <cli> <data-dir> <golden-dir> <scratch-dir>\n");
        return 2;
    }
    g_cli = fs::absolute(argv[1]).string();
    g_data = fs::absolute(argv[2]).string();
    g_golden = fs::absolute(argv[3]).string();
    g_scratch = fs::absolute(argv[4]).string();
    fs::remove_all(g_scratch);
    fs::create_directories(g_scratch);

    const std::string data_flag = " --data-dir \"" + g_data + "\"";

    // --- exit code contract ---
    expect(run("csl-heating --lambda 1e-10 --rc 1e-7 --preset cuore",
               scratch("heat.txt")) == 0,
           "csl-heating runs");
    {
        const auto text = slurp(scratch("heat.txt"));
        expect(text.find("4.472194e-03") != std::string::npos,
               "csl-heating reports the expected steady rise");
    }
    expect(run("csl-heating --lambda 0 --rc 1e-7", scratch("heat0.txt")) == 0,
           "zero collapse rate is accepted");
    {
        const auto text = slurp(scratch("heat0.txt"));
        expect(count(text, "0.000000e+00") >= 3, "zero rate gives zero power and rise");
    }
    expect(run("csl-heating --lambda 1e-10") == 2, "missing --rc is a usage error");
    expect(run("csl-heating --lambda 1e-10 --rc 1e-7 --bogus") == 2,
           "unknown flag is a usage error");
    expect(run("no-such-command") == 2, "unknown subcommand is a usage error");
    expect(run("csl-heating --lambda -1 --rc 1e-7") == 2,
           "negative collapse rate fails flag validation");
    expect(run("--help") == 0, "--help exits cleanly");

    // --- gamma-scan ---
    const std::string out_a = scratch("gamma_a"), out_b = scratch("gamma_b");
    expect(run("gamma-scan" + data_flag + " --out \"" + out_a + "\"") == 0, "gamma-scan runs");
    expect(run("gamma-scan" + data_flag + " --out \"" + out_b + "\"") == 0,
           "gamma-scan runs again");
    expect(slurp(out_a + "/gamma_scan.csv") == slurp(out_b + "/gamma_scan.csv")
               && !slurp(out_a + "/gamma_scan.csv").empty(),
           "gamma-scan CSV is byte-identical across runs");
    expect(slurp(out_a + "/gamma_scan.svg") == slurp(out_b + "/gamma_scan.svg"),
           "gamma-scan SVG is byte-identical across runs");
    expect(svg_ok(out_a + "/gamma_scan.svg", 1), "gamma-scan SVG has one polyline");
    expect(fs::exists(out_a + "/gamma_fit.csv"), "gamma-scan writes the fit");
    expect(data_rows(slurp(out_a + "/gamma_scan.csv")) == 41,
           "gamma-scan default grid has 41 rows");

    const std::string out_one = scratch("gamma_one");
    expect(run("gamma-scan" + data_flag + " --out \"" + out_one
               + "\" --t-min 5 --t-max 5") == 0,
           "single-thickness gamma-scan runs");
    expect(data_rows(slurp(out_one + "/gamma_scan.csv")) == 1,
           "single-thickness scan has one row");
    expect(!fs::exists(out_one + "/gamma_fit.csv"), "single-thickness scan writes no fit");
    expect(run("gamma-scan" + data_flag + " --t-min 2 --t-max 1") == 2,
           "empty thickness range is a usage error");

    // --- muon-scan with golden comparison ---
    const std::string out_m = scratch("muon");
    expect(run("muon-scan" + data_flag + " --out \"" + out_m + "\"") == 0, "muon-scan runs");
    expect(svg_ok(out_m + "/muon_scan.svg", 2), "muon-scan SVG has two polylines");
    {
        const auto got = slurp(out_m + "/muon_scan.csv");
        const auto want = slurp((fs::path(g_golden) / "muon_scan.csv").string());
        expect(!want.empty() && got == want, "muon-scan CSV matches the golden file");
    }
    expect(run("muon-scan" + data_flag + " --site nowhere") == 2,
           "unknown site label is a usage error");

    // --- sensitivity ---
    const std::string out_s = scratch("sens");
    expect(run("sensitivity" + data_flag + " --out \"" + out_s
               + "\" --target-lambda 1e-16",
               scratch("sens.txt")) == 0,
           "sensitivity runs");
    {
        const auto text = slurp(scratch("sens.txt"));
        expect(text.find("depth for target") != std::string::npos
                   && text.find("6.55") != std::string::npos,
               "sensitivity reports the target depth near 6.55");
    }
    expect(svg_ok(out_s + "/sensitivity.svg", 1), "sensitivity SVG has one polyline");
    expect(run("sensitivity" + data_flag + " --target-lambda 1e-25") == 4,
           "unreachable target rate is a domain error");
    expect(run("sensitivity" + data_flag + " --faces sideways") == 2,
           "bad face convention is a usage error");

    // --- exclusion ---
    const std::string out_e = scratch("excl");
    expect(run("exclusion" + data_flag + " --out \"" + out_e + "\" --depth 5 6.5") == 0,
           "exclusion runs");
    expect(fs::exists(out_e + "/exclusion_5.csv") && fs::exists(out_e + "/exclusion_6.5.csv"),
           "exclusion writes one CSV per depth");
    expect(svg_ok(out_e + "/exclusion.svg", 2), "exclusion SVG has one polyline per depth");
    expect(run("exclusion" + data_flag + " --depth 20") == 4,
           "depth outside the table is a domain error");

    // --- bolometer with golden trace ---
    const std::string out_t = scratch("trace_a"), out_t2 = scratch("trace_b");
    const std::string bolo_base =
        " --preset cuore --duration 50 --dt 0.1 --rate 0.1 --energy 1 --noise";
    const std::string bolo_args = bolo_base + " --seed 7";
    expect(run("bolometer" + bolo_args + " --out \"" + out_t + "\"") == 0, "bolometer runs");
    expect(run("bolometer" + bolo_args + " --out \"" + out_t2 + "\"") == 0,
           "bolometer runs again");
    expect(slurp(out_t + "/trace.csv") == slurp(out_t2 + "/trace.csv")
               && !slurp(out_t + "/trace.csv").empty(),
           "trace is byte-identical for the same seed");
    {
        const auto got_trace = slurp(out_t + "/trace.csv");
        const auto want_trace = slurp((fs::path(g_golden) / "trace.csv").string());
        expect(!want_trace.empty() && got_trace == want_trace,
               "trace matches the golden file");
        const auto got_ev = slurp(out_t + "/events.csv");
        const auto want_ev = slurp((fs::path(g_golden) / "events.csv").string());
        expect(!want_ev.empty() && got_ev == want_ev, "event log matches the golden file");
    }
    expect(run("bolometer" + bolo_base + " --seed 8 --out \"" + scratch("trace_c") + "\"")
                   == 0
               && slurp(scratch("trace_c") + "/trace.csv") != slurp(out_t + "/trace.csv"),
           "different seed changes the trace");
    expect(run("bolometer --preset upgraded --duration 100 --dt 1 --lambda 1e-16 "
               "--subtract-threshold 1e-4 --out \"" + scratch("trace_d") + "\"",
               scratch("bolo_sub.txt")) == 0,
           "bolometer subtraction path runs");
    expect(slurp(scratch("bolo_sub.txt")).find("recovered gradient")
               != std::string::npos,
           "subtraction reports a recovered gradient");

    // --- fit on a produced CSV ---
    expect(run("fit --input \"" + out_s + "/sensitivity.csv\" --x-col 0 --y-col 3 "
               "--err-col -1 --mode log --out \"" + scratch("fit") + "\"",
               scratch("fit.txt")) == 0,
           "fit subcommand runs on a result CSV");
    {
        const auto text = slurp(scratch("fit.txt"));
        expect(text.find("slope -4.9") != std::string::npos,
               "fit recovers the depth-trend slope");
        expect(fs::exists(scratch("fit") + "/fit.csv"), "fit writes its CSV");
    }
    expect(run("fit --input \"" + scratch("absent.csv") + "\"") == 3,
           "missing fit input is a data error");
    expect(run("fit --input \"" + out_s + "/sensitivity.csv\" --y-col 9") == 2,
           "column index past the file width is a usage error");

    // --- data integrity and resolution ---
    {
        const std::string bad_dir = scratch("bad_data");
        fs::create_directories(bad_dir);
        for (const auto& entry : fs::directory_iterator(g_data))
            fs::copy_file(entry.path(), fs::path(bad_dir) / entry.path().filename());
        std::ofstream(fs::path(bad_dir) / "depth_intensity_gran_sasso.csv",
                      std::ios::app | std::ios::binary)
            << "# tampered\n";
        expect(run("muon-scan --data-dir \"" + bad_dir + "\"") == 3,
               "checksum mismatch is a data error");
    }
    {
        setenv("CSLBG_DATA_DIR", g_data.c_str(), 1);
        expect(run("muon-scan --out \"" + scratch("muon_env") + "\"") == 0,
               "data dir resolves from the environment");
        unsetenv("CSLBG_DATA_DIR");
        const auto cwd = fs::current_path();
        fs::current_path(g_scratch); // no ./data here
        const int rc = run("muon-scan");
        fs::current_path(cwd);
        expect(rc == 3, "missing default data dir is a data error");
    }

    if (failures) {
        std::printf("%d CLI check(s) failed\n", failures);
        return 1;
    }
    std::printf("all CLI checks passed\n");
    return 0;
}
