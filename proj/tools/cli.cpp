#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbox/errors.hpp"
#include "verify.hpp"

namespace qbox::cli {
namespace {

int write_output(const OutputSpec& out, const std::string& content, std::ostream& stdout_stream, std::ostream& err) {
    if (!out.path) {
        stdout_stream << content;
        return kSuccess;
    }
    std::error_code ec;
    const auto parent = out.path->parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent, ec);
        if (ec) {
            err << "error: cannot create directory " << parent << ": " << ec.message() << "\n";
            return kIoError;
        }
    }
    std::ofstream file(*out.path, std::ios::binary | std::ios::trunc);
    file << content;
    file.close();
    if (!file) {
        err << "error: cannot write " << *out.path << "\n";
        return kIoError;
    }
    return kSuccess;
}

// Runs `body`, mapping argument/state errors to exit code 2.
template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidArguments;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidArguments;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
}

TwoStateSuperposition state_of(const RunConfig& run) { return TwoStateSuperposition{run.c1, run.c2}; }

std::string fit_json(const std::vector<PowerLawFit>& fits) {
    auto array = nlohmann::ordered_json::array();
    for (const auto& fit : fits) {
        array.push_back({{"method", std::string(to_string(fit.method))},
                         {"coefficient", fit.coefficient},
                         {"exponent", fit.exponent},
                         {"rms_log_residual", fit.rms_log_residual}});
    }
    return array.dump(2) + "\n";
}

std::optional<std::vector<double>> parse_number_list(const std::string& text) {
    std::vector<double> values;
    if (text.empty()) return values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + end, v);
        if (ec != std::errc{} || ptr != text.data() + end) return std::nullopt;
        values.push_back(v);
        start = end + 1;
    }
    return values;
}

}  // namespace

std::vector<double> default_avg_position_ratios() {
    std::vector<double> ratios;
    for (int i = 1; i <= 19; ++i) ratios.push_back(0.05 * i);
    ratios.push_back(0.99);
    return ratios;
}

int cmd_trajectory(const RunConfig& run, NodeKind kind, const OutputSpec& out, std::ostream& stdout_stream,
                   std::ostream& err) {
    return guarded(err, [&] {
        const double t0 = run.t_start.value_or(0.0);
        const double t1 = run.t_end.value_or(t0 + beat_period(run.well));
        const auto trajectory = track_trajectory(run.well, state_of(run), kind, t0, t1, run.time_samples, run.grid);
        Table table{{"t", "position", "kind"}, {}};
        for (const auto& s : trajectory.samples) {
            table.rows.push_back({s.t, s.position ? Cell{*s.position} : Cell{}, std::string(to_string(s.kind))});
        }
        return write_output(out, render(table, out.format), stdout_stream, err);
    });
}

int cmd_amplitude_sweep(const RunConfig& run, const SweepSpec& spec, const OutputSpec& out,
                        std::ostream& stdout_stream, std::ostream& err) {
    return guarded(err, [&] {
        const auto sweep = amplitude_sweep(run.well, spec);
        const std::vector<PowerLawFit> fits{fit_power_law(sweep, FitMethod::NonlinearLeastSquares),
                                            fit_power_law(sweep, FitMethod::LogLogOls)};
        Table table{{"A", "amplitude"}, {}};
        for (const auto& e : sweep.entries) table.rows.push_back({e.ratio, e.amplitude});

        if (out.format == Format::Csv) {
            std::string content = to_csv(table);
            content += "#fit,method,coefficient,exponent,rms_log_residual\n";
            for (const auto& fit : fits) {
                content += "#fit," + std::string(to_string(fit.method)) + "," + format_double(fit.coefficient) + "," +
                           format_double(fit.exponent) + "," + format_double(fit.rms_log_residual) + "\n";
            }
            return write_output(out, content, stdout_stream, err);
        }
        const int status = write_output(out, to_json(table), stdout_stream, err);
        if (status != kSuccess) return status;
        OutputSpec sidecar = out;
        if (out.path) sidecar.path = std::filesystem::path(out.path->string() + ".fit.json");
        return write_output(sidecar, fit_json(fits), stdout_stream, err);
    });
}

int cmd_avg_position(const RunConfig& run, const std::vector<double>& ratios, const OutputSpec& out,
                     std::ostream& stdout_stream, std::ostream& err) {
    return guarded(err, [&] {
        if (ratios.empty()) {
            throw std::invalid_argument("avg-position needs at least one A value");
        }
        Table table{{"A", "mean_position"}, {}};
        for (double a : ratios) {
            table.rows.push_back({a, time_avg_node_position(run.well, RatioA{a})});
        }
        return write_output(out, render(table, out.format), stdout_stream, err);
    });
}

int cmd_heatmap(const RunConfig& run, std::size_t x_count, std::size_t mix_count, const OutputSpec& out,
                std::ostream& stdout_stream, std::ostream& err) {
    return guarded(err, [&] {
        const auto grid = heatmap(run.well, x_count, mix_count);
        Table table{{"theta", "x", "density"}, {}};
        table.rows.reserve(x_count * mix_count);
        for (std::size_t j = 0; j < grid.mix_values.size(); ++j) {
            for (std::size_t i = 0; i < grid.x_values.size(); ++i) {
                table.rows.push_back({grid.mix_values[j], grid.x_values[i], grid.values[j][i]});
            }
        }
        return write_output(out, render(table, out.format), stdout_stream, err);
    });
}

int cmd_verify(const RunConfig& run, double tolerance_scale, std::ostream& stdout_stream) {
    const VerifyOptions options{run.well, run.seed, tolerance_scale};
    const auto results = run_invariant_checks(options);
    return report(options, results, stdout_stream) ? kSuccess : kVerificationFailed;
}

int run(const std::vector<std::string>& args, std::ostream& stdout_stream, std::ostream& err) {
    CLI::App app{"Quasi-node dynamics of two-state superpositions in a 1D infinite square well"};
    app.require_subcommand(1);

    double width = 1.0, mass = 1.0, hbar = 1.0;
    RunConfig run;
    double t_start = 0.0, t_end = 0.0;
    std::string kind_name = "analytic";
    SweepSpec spec;
    bool log_spacing = true;
    std::string a_values;
    std::size_t mix_count = 64;
    std::string out_path;
    std::string format_name;
    double tolerance_scale = 1.0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--a", width, "well width")->capture_default_str();
        sub->add_option("--mass", mass, "particle mass")->capture_default_str();
        sub->add_option("--hbar", hbar, "reduced Planck constant")->capture_default_str();
        sub->add_option("--c1", run.c1, "coefficient of psi_1 (real)");
        sub->add_option("--c2", run.c2, "coefficient of psi_2 (real)");
        sub->add_option("--t-start", t_start, "window start (default 0)");
        sub->add_option("--t-end", t_end, "window end (default one beat period)");
        sub->add_option("--time-samples", run.time_samples, "time samples")->capture_default_str();
        sub->add_option("--grid", run.grid, "spatial scan grid / heatmap columns");
        sub->add_option("--kind", kind_name, "node notion")
            ->check(CLI::IsMember({"analytic", "repart", "minimum", "zero"}))
            ->capture_default_str();
        sub->add_option("--a-min", spec.a_min, "smallest A")->capture_default_str();
        sub->add_option("--a-max", spec.a_max, "largest A")->capture_default_str();
        sub->add_option("--a-count", spec.count, "number of A values")->capture_default_str();
        sub->add_flag("--log-spacing,!--linear-spacing", log_spacing, "logarithmic A spacing")->capture_default_str();
        sub->add_option("--mix-count", mix_count, "heatmap mixing angles")->capture_default_str();
        sub->add_option("--seed", run.seed, "seed for randomized checks")->capture_default_str();
        sub->add_option("--out", out_path, "output file (standard output when omitted)");
        sub->add_option("--format", format_name, "csv or json (default: from extension)")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* trajectory = app.add_subcommand("trajectory", "node position over time");
    auto* sweep = app.add_subcommand("amplitude-sweep", "oscillation amplitude vs A with power-law fit");
    auto* avg = app.add_subcommand("avg-position", "time-averaged node position vs A");
    auto* heat = app.add_subcommand("heatmap", "time-averaged density over mixing angle and position");
    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    for (auto* sub : {trajectory, sweep, avg, heat, verify}) add_common(sub);
    avg->add_option("--a-values", a_values, "explicit comma-separated A list");
    verify->add_option("--tolerance-scale", tolerance_scale)->group("");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success&) {
        stdout_stream << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidArguments;
    }

    auto* active = app.get_subcommands().front();
    const auto given = [&](const char* name) { return active->count(name) > 0; };

    try {
        run.well = WellConfig{width, mass, hbar};
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidArguments;
    }
    if (given("--t-start")) run.t_start = t_start;
    if (given("--t-end")) run.t_end = t_end;
    spec.spacing = log_spacing ? Spacing::Logarithmic : Spacing::Linear;

    OutputSpec out;
    if (!out_path.empty()) out.path = out_path;
    out.format = resolve_format(out.path, format_name.empty() ? std::nullopt
                                          : std::optional<Format>(format_name == "json" ? Format::Json : Format::Csv));

    if (active == trajectory) {
        const NodeKind kind = kind_name == "repart"    ? NodeKind::RealPartZero
                              : kind_name == "minimum" ? NodeKind::DensityMinimum
                              : kind_name == "zero"    ? NodeKind::TrueZero
                                                       : NodeKind::AnalyticFormula;
        return cmd_trajectory(run, kind, out, stdout_stream, err);
    }
    if (active == sweep) {
        return cmd_amplitude_sweep(run, spec, out, stdout_stream, err);
    }
    if (active == avg) {
        std::vector<double> ratios;
        if (given("--a-values")) {
            const auto parsed = parse_number_list(a_values);
            if (!parsed) {
                err << "error: --a-values expects comma-separated numbers\n";
                return kInvalidArguments;
            }
            ratios = *parsed;
        } else {
            if (given("--a-min") || given("--a-max") || given("--a-count")) {
                const int status = guarded(err, [&] {
                    ratios = sweep_ratios(spec);
                    return kSuccess;
                });
                if (status != kSuccess) return status;
            } else {
                ratios = default_avg_position_ratios();
            }
        }
        return cmd_avg_position(run, ratios, out, stdout_stream, err);
    }
    if (active == heat) {
        const std::size_t x_count = given("--grid") ? run.grid : 64;
        return cmd_heatmap(run, x_count, mix_count, out, stdout_stream, err);
    }
    return cmd_verify(run, tolerance_scale, stdout_stream);
}

}  // namespace qbox::cli
