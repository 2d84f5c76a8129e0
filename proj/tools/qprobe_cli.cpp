// qprobe: command-line front end for coupling-agnostic probing.
//
// Exit codes: 0 success, 1 runtime error, 2 config error, 3 golden-check
// failure, 4 no-information result when a bound was required.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qprobe/qprobe.hpp"

namespace {

using qprobe::io::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitGolden = 3;
constexpr int kExitNoInformation = 4;

struct GridOptions {
    double lo = qprobe::kAlphaGridMin;
    double hi = qprobe::kAlphaGridMax;
    std::size_t points = qprobe::kAlphaGridPoints;

    void attach(CLI::App* app) {
        app->add_option("--alpha-min", lo, "Smallest alpha of the grid")->capture_default_str();
        app->add_option("--alpha-max", hi, "Largest alpha of the grid")->capture_default_str();
        app->add_option("--points", points, "Number of grid points")->capture_default_str();
    }

    std::vector<double> grid() const {
        try {
            return qprobe::alpha_grid(lo, hi, points);
        } catch (const qprobe::PreconditionError& e) {
            throw qprobe::ConfigError(std::string("alpha grid: ") + e.what());
        }
    }
};

void print_summary(const json& summary) { std::cout << summary.dump(2) << "\n"; }

void print_files(const std::vector<std::string>& files) {
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
}

int cmd_afid(const std::string& rho1_file, const std::string& rho2_file, const GridOptions& grid,
             const std::string& out_file) {
    const qprobe::DensityMatrix rho1 = qprobe::io::state_from_json(qprobe::io::read_json_file(rho1_file), "rho1");
    const qprobe::DensityMatrix rho2 = qprobe::io::state_from_json(qprobe::io::read_json_file(rho2_file), "rho2");
    std::ostringstream csv;
    csv << "alpha,f_alpha_12,f_alpha_21\r\n";
    for (double a : grid.grid()) {
        const qprobe::AlphaParameter alpha(a);
        csv << qprobe::io::sci(a) << ',' << qprobe::io::sci(qprobe::alpha_fidelity(rho1, rho2, alpha)) << ','
            << qprobe::io::sci(qprobe::alpha_fidelity(rho2, rho1, alpha)) << "\r\n";
    }
    if (out_file.empty()) {
        std::cout << csv.str();
    } else {
        qprobe::io::write_text_file(out_file, csv.str());
        std::cout << "wrote " << out_file << "\n";
    }
    return kExitOk;
}

int cmd_bound(const std::string& record_file, std::optional<double> sigma, const GridOptions& grid,
              const std::string& out_dir, const std::string& prefix, bool require_bound) {
    const qprobe::ProbingRecord record =
        qprobe::io::record_from_json(qprobe::io::read_json_file(record_file), "record");
    const qprobe::BoundCurve curve = qprobe::tightest_bound(record, grid.grid());
    std::filesystem::create_directories(out_dir);
    const auto csv_path = (std::filesystem::path(out_dir) / (prefix + "_bounds.csv")).string();
    const auto frac_path = (std::filesystem::path(out_dir) / (prefix + "_fractions.csv")).string();
    const auto json_path = (std::filesystem::path(out_dir) / (prefix + "_summary.json")).string();
    json summary = qprobe::io::bound_summary(curve, sigma);
    summary["delta_mu_hz"] = record.delta_mu;
    qprobe::io::write_text_file(csv_path, qprobe::io::bound_curve_csv(curve));
    qprobe::io::write_text_file(frac_path, qprobe::io::fractions_csv(curve));
    qprobe::io::write_text_file(json_path, summary.dump(2) + "\n");
    print_summary(summary);
    print_files({csv_path, frac_path, json_path});
    return require_bound && curve.no_information() ? kExitNoInformation : kExitOk;
}

int cmd_tomography(const std::string& state_file, qprobe::TomographySettings settings, const std::string& model,
                   std::uint64_t stream, const std::string& out_dir, const std::string& prefix) {
    if (model == "expected") {
        settings.model = qprobe::CountingModel::expected;
    } else if (model != "poisson") {
        throw qprobe::ConfigError("--model: expected poisson or expected");
    }
    try {
        settings.validate();
    } catch (const qprobe::PreconditionError& e) {
        throw qprobe::ConfigError(e.what());
    }
    const qprobe::DensityMatrix rho = qprobe::io::state_from_json(qprobe::io::read_json_file(state_file), "state");
    const qprobe::CountRecord counts = qprobe::sample_counts(qprobe::born_table(rho), settings, stream);
    const qprobe::DensityMatrix estimate = qprobe::reconstruct(counts);

    std::filesystem::create_directories(out_dir);
    const auto counts_path = (std::filesystem::path(out_dir) / (prefix + "_counts.json")).string();
    const auto state_path = (std::filesystem::path(out_dir) / (prefix + "_reconstruction.json")).string();
    qprobe::io::write_text_file(counts_path, qprobe::io::counts_to_json(counts).dump(2) + "\n");
    qprobe::io::write_text_file(state_path, qprobe::io::matrix_to_json(estimate).dump(2) + "\n");
    json summary{{"counts", qprobe::io::counts_to_json(counts)},
                 {"reconstruction", qprobe::io::matrix_to_json(estimate)},
                 {"seed", settings.seed},
                 {"stream", stream}};
    print_summary(summary);
    print_files({counts_path, state_path});
    return kExitOk;
}

int cmd_simulate(const std::string& config_file) {
    const qprobe::scenario::ScenarioConfig config =
        qprobe::scenario::parse_config(qprobe::io::read_json_file(config_file));
    const qprobe::scenario::RunReport report = qprobe::scenario::run_scenario(config);
    print_summary(report.summary);
    print_files(report.files);
    return config.require_bound && report.no_information ? kExitNoInformation : kExitOk;
}

int cmd_reproduce(const std::string& out_dir, const GridOptions& grid) {
    const qprobe::scenario::RunReport report = qprobe::scenario::reproduce_fig4(out_dir, "fig4", grid.grid());
    print_summary(report.summary);
    print_files(report.files);
    if (!report.golden_passed) {
        std::cerr << "golden check failed:\n";
        for (const auto& c : report.summary["golden_checks"]) {
            if (!c["passed"].get<bool>()) {
                std::cerr << "  " << c["name"].get<std::string>() << ": computed " << c["computed"] << ", expected ["
                          << c["lo"] << ", " << c["hi"] << "]\n";
            }
        }
        return kExitGolden;
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config_file) {
    const qprobe::scenario::ScenarioConfig config =
        qprobe::scenario::parse_config(qprobe::io::read_json_file(config_file));
    const qprobe::scenario::RunReport report = qprobe::scenario::sweep_thickness(config);
    print_summary(report.summary);
    print_files(report.files);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupling-agnostic quantum probing: alpha-fidelities, sigma bounds, simulation"};
    app.require_subcommand(1);

    std::string rho1_file, rho2_file, out_file;
    GridOptions afid_grid;
    auto* afid = app.add_subcommand("afid", "Alpha-fidelity curve of two density matrices");
    afid->add_option("--rho1", rho1_file, "Matrix JSON for the first state")->required();
    afid->add_option("--rho2", rho2_file, "Matrix JSON for the second state")->required();
    afid->add_option("--out", out_file, "CSV output file (stdout when omitted)");
    afid_grid.attach(afid);

    std::string record_file, out_dir = "out", prefix = "bound";
    std::optional<double> sigma;
    bool require_bound = false;
    GridOptions bound_grid;
    auto* bound = app.add_subcommand("bound", "Bound curve and B_inf from a probing record");
    bound->add_option("--record", record_file, "Record JSON with rho1, rho2, phi1_rho1, phi2_rho2, delta_mu_hz")
        ->required();
    bound->add_option("--sigma", sigma, "Reference sigma in Hz for normalized reporting");
    bound->add_option("--out-dir", out_dir)->capture_default_str();
    bound->add_option("--prefix", prefix)->capture_default_str();
    bound->add_flag("--require-bound", require_bound, "Exit with code 4 when no bound is obtained");
    bound_grid.attach(bound);

    std::string config_file;
    auto* simulate = app.add_subcommand("simulate", "Run a scenario config end to end");
    simulate->add_option("config", config_file, "Scenario JSON")->required();

    std::string state_file, model = "poisson", tomo_dir = "out", tomo_prefix = "tomography";
    qprobe::TomographySettings settings;
    std::uint64_t stream = 0;
    auto* tomography = app.add_subcommand("tomography", "Simulated counts and reconstruction for one state");
    tomography->add_option("--state", state_file, "Matrix JSON of the true state")->required();
    tomography->add_option("--time", settings.integration_time, "Integration time per basis, s")
        ->capture_default_str();
    tomography->add_option("--rate", settings.count_rate, "Coincidence rate, 1/s")->capture_default_str();
    tomography->add_option("--seed", settings.seed)->capture_default_str();
    tomography->add_option("--stream", stream, "Stream index within the seed")->capture_default_str();
    tomography->add_option("--model", model, "poisson or expected")->capture_default_str();
    tomography->add_option("--out-dir", tomo_dir)->capture_default_str();
    tomography->add_option("--prefix", tomo_prefix)->capture_default_str();

    std::string fig4_dir = "out";
    GridOptions fig4_grid;
    auto* fig4 = app.add_subcommand("reproduce-fig4", "Bounds from the measured 5 mm states with golden checks");
    fig4->add_option("--out-dir", fig4_dir)->capture_default_str();
    fig4_grid.attach(fig4);

    std::string sweep_file;
    auto* sweep = app.add_subcommand("sweep", "b_inf versus plate thickness");
    sweep->add_option("config", sweep_file, "Scenario JSON with a sweep block")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*afid) return cmd_afid(rho1_file, rho2_file, afid_grid, out_file);
        if (*bound) return cmd_bound(record_file, sigma, bound_grid, out_dir, prefix, require_bound);
        if (*simulate) return cmd_simulate(config_file);
        if (*tomography) return cmd_tomography(state_file, settings, model, stream, tomo_dir, tomo_prefix);
        if (*fig4) return cmd_reproduce(fig4_dir, fig4_grid);
        if (*sweep) return cmd_sweep(sweep_file);
    } catch (const qprobe::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qprobe::DegenerateControl& e) {
        std::cerr << "degenerate control: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qprobe::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitRuntime;
}
