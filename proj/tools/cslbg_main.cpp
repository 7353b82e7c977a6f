// Command-line front end. Every pipeline in the library is exposed as a
// subcommand that reads the bundled (or user-supplied) CSV tables through
// the checksummed manifest and writes CSV results plus self-contained SVG
// plots. All outputs are byte-deterministic for identical inputs and seed.
//
// Exit codes: 0 success, 2 usage or flag validation, 3 data-format or I/O
// problem, 4 numerical domain violation (out-of-range query, non-physical
// regime).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cslbg/cslbg.hpp"

namespace {

using namespace cslbg;

struct CommonOpts {
    std::string data_dir;
    std::string out_dir = "out";
    std::string constants = "paper";
    std::string faces = "top+sides";
    double margin = 100.0;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o)
{
    cmd->add_option("--data-dir", o.data_dir,
                    "directory holding the CSV tables and their manifest "
                    "(default: $CSLBG_DATA_DIR, else ./data)");
    cmd->add_option("--out", o.out_dir, "directory for result files")->capture_default_str();
    cmd->add_option("--constants", o.constants, "physical constant profile")
        ->check(CLI::IsMember({"paper", "codata"}))
        ->capture_default_str();
    cmd->add_option("--margin", o.margin,
                    "required ratio of collapse heating to background power")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--faces", o.faces, "muon incident-face accounting")
        ->check(CLI::IsMember({"top+sides", "all", "top"}))
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "RNG seed for stochastic commands")
        ->capture_default_str();
}

Constants consts(const CommonOpts& o)
{
    return constants_for(profile_from_name(o.constants));
}

std::string out_path(const CommonOpts& o, const std::string& name)
{
    std::filesystem::create_directories(o.out_dir);
    return (std::filesystem::path(o.out_dir) / name).string();
}

struct LoadedData {
    std::string dir;
    DataManifest manifest;
};

LoadedData open_data(const CommonOpts& o)
{
    LoadedData d;
    d.dir = resolve_data_dir(o.data_dir);
    d.manifest = load_manifest((std::filesystem::path(d.dir) / "manifest.txt").string());
    return d;
}

void print_row(const char* label, const std::string& value)
{
    std::printf("  %-26s %s\n", label, value.c_str());
}

void print_row(const char* label, double value)
{
    print_row(label, fmt_e(value));
}

std::string fit_line(const FitResult& f)
{
    return "slope " + fmt_e(f.slope) + " +- " + fmt_e(f.slope_err) + ", intercept "
           + fmt_e(f.intercept) + " +- " + fmt_e(f.intercept_err);
}

// ---------------------------------------------------------------- csl-heating

struct HeatingOpts {
    double lambda = 0;
    double r_c = 0;
    std::string preset = "cuore";
    double mass_kg = -1; //!< <0 means: use the preset mass
};

void run_csl_heating(const CommonOpts& common, const HeatingOpts& o)
{
    const Constants c = consts(common);
    const ThermalSpec spec =
        o.preset == "cuore" ? bolometer::cuore_like() : bolometer::upgraded();
    const double mass = o.mass_kg >= 0 ? o.mass_kg
                        : o.preset == "cuore" ? bolometer::cuore_like_mass_kg
                                              : bolometer::upgraded_mass_kg;
    const CslParams p{o.lambda, o.r_c};
    const double per_mass = csl_heating_per_mass_W_kg(p, c);
    const double power = csl_power_W(p, mass, c);

    std::printf("collapse heating (%s preset)\n", o.preset.c_str());
    print_row("collapse rate [1/s]", p.lambda_per_s);
    print_row("correlation length [m]", p.r_c_m);
    print_row("absorber mass [kg]", mass);
    print_row("heating per mass [W/kg]", per_mass);
    print_row("heating power [W]", power);
    print_row("time constant [s]", spec.time_constant_s());
    print_row("steady rise [K]", steady_gradient_K(spec, power));
    print_row("fluctuation floor [K]",
              fluctuation_floor_K(spec, spec.bath_temperature_K, c));
}

// ----------------------------------------------------------------- gamma-scan

struct GammaScanOpts {
    double t_min = 0.0;
    double t_max = 20.0;
    double t_step = 0.5;
    double side_cm = 10.0;
    bool piecewise = false;
};

void run_gamma_scan(const CommonOpts& common, const GammaScanOpts& o)
{
    if (!(o.t_min >= 0))
        throw std::invalid_argument("--t-min must be >= 0");
    if (o.t_max < o.t_min)
        throw std::invalid_argument("--t-max below --t-min leaves nothing to scan");

    const Constants c = consts(common);
    const auto data = open_data(common);
    const auto shield_table = load_attenuation(
        verified_path(data.manifest, data.dir, "attenuation", "lead"), materials::lead());
    const auto det_table = load_attenuation(
        verified_path(data.manifest, data.dir, "attenuation", "germanium"),
        materials::germanium());
    const auto spectrum = load_gamma_spectrum(
        verified_path(data.manifest, data.dir, "gamma_spectrum", "lngs_sample"));

    std::vector<double> ts;
    for (double t = o.t_min; t <= o.t_max + 1e-9; t += o.t_step) ts.push_back(t);

    GammaPowerOptions opts;
    opts.area = common.faces == "top" ? IncidentArea::single_face : IncidentArea::all_faces;
    opts.piecewise_fit = o.piecewise;
    const DetectorSpec det{materials::germanium(), o.side_cm};

    const auto scan = shield_scan(det, spectrum, shield_table, det_table, ts, opts, c);
    save_shield_scan(out_path(common, "gamma_scan.csv"), scan);

    SvgPlot plot;
    plot.title = "absorbed gamma power vs shield thickness";
    plot.x_label = "thickness [cm]";
    plot.y_label = "power [W]";
    plot.log_y = true;
    plot.series.push_back({"absorbed power", {}});
    for (const auto& pt : scan) plot.series[0].points.push_back({pt.thickness_cm, pt.power_W});
    write_svg(out_path(common, "gamma_scan.svg"), plot);

    std::printf("gamma shield scan: %zu thicknesses, %s faces, %s\n", scan.size(),
                opts.area == IncidentArea::all_faces ? "all" : "single",
                o.piecewise ? "piecewise-fit mode" : "direct bin sum");
    print_row("power at t_min [W]", scan.front().power_W);
    print_row("power at t_max [W]", scan.back().power_W);

    if (scan.size() >= 2) {
        std::vector<double> x, y, yerr;
        for (const auto& pt : scan) {
            x.push_back(pt.thickness_cm);
            y.push_back(pt.power_W);
            yerr.push_back(pt.power_err_W);
        }
        const auto fit = weighted_log_linear_fit(x, y, yerr);
        save_fit(out_path(common, "gamma_fit.csv"), fit);
        print_row("log10(P) fit", fit_line(fit));
        print_row("fit r^2", fit.r_squared);
    } else {
        std::printf("  single thickness: no fit written\n");
    }
}

// ------------------------------------------------------------------ muon-scan

struct DepthScanOpts {
    std::string site = "gran_sasso";
    std::string params = "618";
    double side_cm = 10.0;
    double r_c = 1e-7;
    double d_min = -1;
    double d_max = -1;
    double d_step = -1;
    double target_lambda = 0; //!< sensitivity only
};

MeanEnergyParams params_for(const std::string& name)
{
    if (name == "618") return mean_energy::set_618();
    if (name == "693") return mean_energy::set_693();
    throw std::invalid_argument("unknown mean-energy parameter set '" + name + "'");
}

DepthIntensityTable load_site(const std::string& site, const LoadedData& data)
{
    return load_depth_intensity(
        verified_path(data.manifest, data.dir, "depth_intensity", site), site);
}

std::vector<double> depth_grid(const DepthScanOpts& o)
{
    std::vector<double> depths;
    if (o.d_step > 0 && o.d_min >= 0 && o.d_max >= o.d_min)
        for (double d = o.d_min; d <= o.d_max + 1e-9; d += o.d_step) depths.push_back(d);
    return depths; // empty means: use the table's own rows
}

void run_muon_scan(const CommonOpts& common, const DepthScanOpts& o)
{
    const Constants c = consts(common);
    const auto data = open_data(common);
    const auto table = load_site(o.site, data);
    const DetectorSpec det{materials::germanium(), o.side_cm};
    const auto faces = face_convention_from_name(common.faces);

    const auto scan = lambda_depth_scan(det, table, params_for(o.params), {1e-16, o.r_c},
                                        common.margin, depth_grid(o), faces, c);

    save_depth_scan(out_path(common, "muon_scan.csv"), scan.points);
    save_fit(out_path(common, "muon_rate_fit.csv"), scan.rate_fit);
    save_fit(out_path(common, "muon_power_fit.csv"), scan.power_fit);

    SvgPlot plot;
    plot.title = "muon background vs depth (" + o.site + ")";
    plot.x_label = "depth [km.w.e]";
    plot.y_label = "event rate [1/s] / power [W]";
    plot.log_y = true;
    plot.series.push_back({"event rate", {}});
    plot.series.push_back({"deposited power", {}});
    for (const auto& pt : scan.points) {
        plot.series[0].points.push_back({pt.depth_kmwe, pt.event_rate_per_s});
        plot.series[1].points.push_back({pt.depth_kmwe, pt.muon_power_W});
    }
    write_svg(out_path(common, "muon_scan.svg"), plot);

    std::printf("muon depth scan: %s, %zu depths, faces=%s\n", o.site.c_str(),
                scan.points.size(), common.faces.c_str());
    print_row("log10(rate) fit", fit_line(scan.rate_fit));
    print_row("log10(power) fit", fit_line(scan.power_fit));
}

// ---------------------------------------------------------------- sensitivity

void run_sensitivity(const CommonOpts& common, const DepthScanOpts& o)
{
    const Constants c = consts(common);
    const auto data = open_data(common);
    const auto table = load_site(o.site, data);
    const DetectorSpec det{materials::germanium(), o.side_cm};
    const auto faces = face_convention_from_name(common.faces);
    const auto params = params_for(o.params);
    const CslParams p{1e-16, o.r_c};

    const auto scan =
        lambda_depth_scan(det, table, params, p, common.margin, depth_grid(o), faces, c);

    save_lambda_scan(out_path(common, "sensitivity.csv"), scan.points);
    save_fit(out_path(common, "lambda_fit.csv"), scan.lambda_fit);

    SvgPlot plot;
    plot.title = "detectable collapse rate vs depth (" + o.site + ")";
    plot.x_label = "depth [km.w.e]";
    plot.y_label = "lambda [1/s]";
    plot.log_y = true;
    plot.series.push_back({"detectable lambda", {}});
    for (const auto& pt : scan.points)
        plot.series[0].points.push_back({pt.depth_kmwe, pt.detectable_lambda_per_s});
    write_svg(out_path(common, "sensitivity.svg"), plot);

    std::printf("sensitivity scan: %s, margin %s, r_c %s m\n", o.site.c_str(),
                fmt_e(common.margin).c_str(), fmt_e(o.r_c).c_str());
    print_row("lambda at deepest [1/s]", scan.points.back().detectable_lambda_per_s);
    print_row("log10(lambda) fit", fit_line(scan.lambda_fit));

    if (o.target_lambda > 0) {
        const double d = depth_for_lambda(o.target_lambda, det, table, params, p,
                                          common.margin, 1e-3, faces, c);
        print_row("depth for target [km.w.e]", d);
    }
}

// ------------------------------------------------------------------ exclusion

struct ExclusionOpts {
    std::string site = "gran_sasso";
    std::string params = "618";
    double side_cm = 10.0;
    std::vector<double> depths{6.5};
    double rc_min = 1e-8;
    double rc_max = 1e-6;
    int rc_points = 61;
};

void run_exclusion(const CommonOpts& common, const ExclusionOpts& o)
{
    if (o.depths.empty())
        throw std::invalid_argument("--depth needs at least one value");
    if (!(o.rc_min > 0) || !(o.rc_max > o.rc_min) || o.rc_points < 2)
        throw std::invalid_argument("correlation-length grid needs 0 < --rc-min < --rc-max "
                                    "and --rc-points >= 2");

    const Constants c = consts(common);
    const auto data = open_data(common);
    const auto table = load_site(o.site, data);
    const DetectorSpec det{materials::germanium(), o.side_cm};
    const auto faces = face_convention_from_name(common.faces);
    const auto params = params_for(o.params);

    std::vector<double> rcs;
    for (int i = 0; i < o.rc_points; ++i)
        rcs.push_back(o.rc_min
                      * std::pow(o.rc_max / o.rc_min,
                                 static_cast<double>(i) / (o.rc_points - 1)));

    SvgPlot plot;
    plot.title = "exclusion contours (" + o.site + ")";
    plot.x_label = "r_c [m]";
    plot.y_label = "lambda [1/s]";
    plot.log_x = true;
    plot.log_y = true;

    std::printf("exclusion contours: %s, margin %s\n", o.site.c_str(),
                fmt_e(common.margin).c_str());
    for (double depth : o.depths) {
        const auto cont =
            exclusion_contour(det, depth, table, params, rcs, common.margin, faces, c);
        char name[64];
        std::snprintf(name, sizeof name, "exclusion_%g.csv", depth);
        save_contour(out_path(common, name), cont);

        char label[64];
        std::snprintf(label, sizeof label, "%g km.w.e", depth);
        plot.series.push_back({label, {}});
        for (const auto& pt : cont.points)
            plot.series.back().points.push_back({pt.r_c_m, pt.detectable_lambda_per_s});

        // report the contour at the canonical correlation length
        const double lam_ref = detectable_lambda(cont.background_power_W, det, {1e-16, 1e-7},
                                                 common.margin, c);
        char row[96];
        std::snprintf(row, sizeof row, "lambda(%g km.w.e, r_c=1e-7) [1/s]", depth);
        print_row(row, lam_ref);
    }
    write_svg(out_path(common, "exclusion.svg"), plot);
}

// ------------------------------------------------------------------ bolometer

struct BolometerOpts {
    std::string preset = "cuore";
    double mass_kg = -1;
    double duration_s = 1000.0;
    double dt_s = 0.1;
    double event_rate = 0.0;
    double energy_MeV = 1.0;
    double lambda = 0.0;
    double r_c = 1e-7;
    bool noise = false;
    double subtract_threshold_K = 0.0;
};

void run_bolometer(const CommonOpts& common, const BolometerOpts& o)
{
    const Constants c = consts(common);
    const ThermalSpec spec =
        o.preset == "cuore" ? bolometer::cuore_like() : bolometer::upgraded();
    const double mass = o.mass_kg >= 0 ? o.mass_kg
                        : o.preset == "cuore" ? bolometer::cuore_like_mass_kg
                                              : bolometer::upgraded_mass_kg;

    TraceConfig cfg;
    cfg.duration_s = o.duration_s;
    cfg.sample_interval_s = o.dt_s;
    cfg.event_rate_per_s = o.event_rate;
    cfg.energy_model = FixedEnergy{o.energy_MeV};
    cfg.csl_power_W = csl_power_W({o.lambda, o.r_c}, mass, c);
    cfg.rng_seed = common.seed;
    cfg.include_fluctuation_noise = o.noise;

    const auto trace = simulate_trace(spec, cfg, c);
    save_trace(out_path(common, "trace.csv"), trace);
    save_event_log(out_path(common, "events.csv"), trace.events);

    std::printf("bolometer trace: %s preset, %zu samples, %zu events\n", o.preset.c_str(),
                trace.samples.size(), trace.events.size());
    print_row("time constant [s]", spec.time_constant_s());
    print_row("steady level [K]", trace.steady_level_K);
    print_row("collapse power [W]", cfg.csl_power_W);
    print_row("fluctuation floor [K]",
              fluctuation_floor_K(spec, spec.bath_temperature_K, c));
    print_row("undersampled", std::string(trace.undersampled ? "yes" : "no"));

    if (o.subtract_threshold_K > 0) {
        const auto sub = subtract_events(spec, trace, o.subtract_threshold_K, c);
        const double expected = trace.steady_level_K - spec.bath_temperature_K;
        print_row("pulses found", std::string(std::to_string(sub.pulse_times_s.size())));
        print_row("recovered gradient [K]", sub.recovered_gradient_K);
        if (expected > 0)
            print_row("recovered / expected", sub.recovered_gradient_K / expected);
    }
}

// ------------------------------------------------------------------------ fit

struct FitOpts {
    std::string input;
    int x_col = 0;
    int y_col = 1;
    int err_col = -1;
    std::string mode = "log";
};

void run_fit(const CommonOpts& common, const FitOpts& o)
{
    detail::CsvReader reader(o.input);
    std::string line;
    if (!reader.next(line))
        throw parse_error(o.input, reader.line_no, "empty file");
    // the first non-comment line is a header; only column positions matter
    std::vector<double> x, y, yerr;
    std::size_t width = 0;
    while (reader.next(line)) {
        if (width == 0) {
            width = 1 + static_cast<std::size_t>(
                        std::count(line.begin(), line.end(), ','));
            const auto need = static_cast<std::size_t>(
                std::max({o.x_col, o.y_col, o.err_col})) + 1;
            if (width < need)
                throw std::invalid_argument("file has " + std::to_string(width)
                                            + " columns, requested column "
                                            + std::to_string(need - 1));
        }
        const auto f = reader.fields(line, width);
        x.push_back(f[static_cast<std::size_t>(o.x_col)]);
        y.push_back(f[static_cast<std::size_t>(o.y_col)]);
        yerr.push_back(o.err_col >= 0 ? f[static_cast<std::size_t>(o.err_col)] : 0.0);
    }

    const FitResult fit =
        o.mode == "log" ? weighted_log_linear_fit(x, y, yerr) : linear_fit(x, y);
    save_fit(out_path(common, "fit.csv"), fit);

    std::printf("%s fit of %zu points from %s\n",
                o.mode == "log" ? "log-linear" : "linear", x.size(), o.input.c_str());
    print_row("fit", fit_line(fit));
    print_row("r^2", fit.r_squared);
    print_row("chi2", fit.chi2);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"underground collapse-heating background toolkit"};
    app.require_subcommand(1);

    CommonOpts common;
    std::function<void()> run;

    HeatingOpts heat;
    auto* cmd_heat = app.add_subcommand(
        "csl-heating", "collapse heating power and steady temperature rise");
    add_common(cmd_heat, common);
    cmd_heat->add_option("--lambda", heat.lambda, "collapse rate [1/s]")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd_heat->add_option("--rc", heat.r_c, "correlation length [m]")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_heat->add_option("--preset", heat.preset, "bolometer preset")
        ->check(CLI::IsMember({"cuore", "upgraded"}))
        ->capture_default_str();
    cmd_heat->add_option("--mass", heat.mass_kg, "absorber mass [kg], overrides the preset")
        ->check(CLI::NonNegativeNumber);
    cmd_heat->callback([&] { run = [&] { run_csl_heating(common, heat); }; });

    GammaScanOpts gamma;
    auto* cmd_gamma = app.add_subcommand(
        "gamma-scan", "absorbed gamma power vs lead shield thickness");
    add_common(cmd_gamma, common);
    cmd_gamma->add_option("--t-min", gamma.t_min, "first thickness [cm]")
        ->capture_default_str();
    cmd_gamma->add_option("--t-max", gamma.t_max, "last thickness [cm]")
        ->capture_default_str();
    cmd_gamma->add_option("--t-step", gamma.t_step, "thickness step [cm]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_gamma->add_option("--side", gamma.side_cm, "cubic absorber side [cm]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_gamma->add_flag("--piecewise", gamma.piecewise,
                        "integrate piecewise-fitted power-density lines");
    cmd_gamma->callback([&] { run = [&] { run_gamma_scan(common, gamma); }; });

    DepthScanOpts muon;
    auto* cmd_muon = app.add_subcommand(
        "muon-scan", "muon event rate and deposited power vs depth");
    add_common(cmd_muon, common);
    auto add_depth_opts = [](CLI::App* cmd, DepthScanOpts& d) {
        cmd->add_option("--site", d.site, "depth-intensity table label")
            ->capture_default_str();
        cmd->add_option("--params", d.params, "mean-energy parameter set")
            ->check(CLI::IsMember({"618", "693"}))
            ->capture_default_str();
        cmd->add_option("--side", d.side_cm, "cubic absorber side [cm]")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--rc", d.r_c, "correlation length [m]")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--d-min", d.d_min, "first depth [km.w.e] (default: table rows)");
        cmd->add_option("--d-max", d.d_max, "last depth [km.w.e]");
        cmd->add_option("--d-step", d.d_step, "depth step [km.w.e]");
    };
    add_depth_opts(cmd_muon, muon);
    cmd_muon->callback([&] { run = [&] { run_muon_scan(common, muon); }; });

    DepthScanOpts sens;
    auto* cmd_sens = app.add_subcommand(
        "sensitivity", "detectable collapse rate vs depth");
    add_common(cmd_sens, common);
    add_depth_opts(cmd_sens, sens);
    cmd_sens->add_option("--target-lambda", sens.target_lambda,
                         "also report the depth where this rate becomes detectable")
        ->check(CLI::PositiveNumber);
    cmd_sens->callback([&] { run = [&] { run_sensitivity(common, sens); }; });

    ExclusionOpts excl;
    auto* cmd_excl = app.add_subcommand(
        "exclusion", "lambda vs r_c exclusion contours at fixed depths");
    add_common(cmd_excl, common);
    cmd_excl->add_option("--site", excl.site, "depth-intensity table label")
        ->capture_default_str();
    cmd_excl->add_option("--params", excl.params, "mean-energy parameter set")
        ->check(CLI::IsMember({"618", "693"}))
        ->capture_default_str();
    cmd_excl->add_option("--side", excl.side_cm, "cubic absorber side [cm]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_excl->add_option("--depth", excl.depths, "contour depths [km.w.e]")
        ->capture_default_str();
    cmd_excl->add_option("--rc-min", excl.rc_min, "grid start [m]")->capture_default_str();
    cmd_excl->add_option("--rc-max", excl.rc_max, "grid end [m]")->capture_default_str();
    cmd_excl->add_option("--rc-points", excl.rc_points, "grid size")->capture_default_str();
    cmd_excl->callback([&] { run = [&] { run_exclusion(common, excl); }; });

    BolometerOpts bolo;
    auto* cmd_bolo = app.add_subcommand(
        "bolometer", "simulate a thermal trace and optionally subtract pulses");
    add_common(cmd_bolo, common);
    cmd_bolo->add_option("--preset", bolo.preset, "bolometer preset")
        ->check(CLI::IsMember({"cuore", "upgraded"}))
        ->capture_default_str();
    cmd_bolo->add_option("--mass", bolo.mass_kg, "absorber mass [kg], overrides the preset")
        ->check(CLI::NonNegativeNumber);
    cmd_bolo->add_option("--duration", bolo.duration_s, "trace length [s]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_bolo->add_option("--dt", bolo.dt_s, "sample interval [s]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_bolo->add_option("--rate", bolo.event_rate, "Poisson event rate [1/s]")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd_bolo->add_option("--energy", bolo.energy_MeV, "energy per event [MeV]")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd_bolo->add_option("--lambda", bolo.lambda, "collapse rate for the heating term [1/s]")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd_bolo->add_option("--rc", bolo.r_c, "correlation length [m]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_bolo->add_flag("--noise", bolo.noise, "add fluctuation-floor Gaussian noise");
    cmd_bolo->add_option("--subtract-threshold", bolo.subtract_threshold_K,
                         "pulse detection threshold [K]; enables event subtraction")
        ->check(CLI::PositiveNumber);
    cmd_bolo->callback([&] { run = [&] { run_bolometer(common, bolo); }; });

    FitOpts fit;
    auto* cmd_fit = app.add_subcommand("fit", "weighted straight-line fit of a result CSV");
    add_common(cmd_fit, common);
    cmd_fit->add_option("--input", fit.input, "CSV file to fit")->required();
    cmd_fit->add_option("--x-col", fit.x_col, "x column index (0-based)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd_fit->add_option("--y-col", fit.y_col, "y column index (0-based)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd_fit->add_option("--err-col", fit.err_col,
                        "y error column index; omit for an unweighted fit");
    cmd_fit->add_option("--mode", fit.mode, "fit y or log10(y) against x")
        ->check(CLI::IsMember({"log", "linear"}))
        ->capture_default_str();
    cmd_fit->callback([&] { run = [&] { run_fit(common, fit); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        run();
    } catch (const parse_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 4;
    } catch (const std::out_of_range& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
