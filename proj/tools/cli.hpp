#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qbox/analysis.hpp"
#include "qbox/core.hpp"
#include "qbox/nodes.hpp"
#include "table.hpp"

namespace qbox::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kInvalidArguments = 2,
    kIoError = 3,
};

struct OutputSpec {
    std::optional<std::filesystem::path> path;  // standard output when absent
    Format format = Format::Csv;
};

struct RunConfig {
    WellConfig well;
    double c1 = 0.70710678118654752440;
    double c2 = 0.70710678118654752440;
    std::optional<double> t_start;  // default 0
    std::optional<double> t_end;    // default one beat period
    std::size_t time_samples = 256;
    std::size_t grid = kDefaultScanGrid;
    std::uint64_t seed = 0;
};

/// Canonical A list used when avg-position is given none: 0.05, 0.10, ..., 0.95, 0.99.
std::vector<double> default_avg_position_ratios();

int cmd_trajectory(const RunConfig& run, NodeKind kind, const OutputSpec& out, std::ostream& stdout_stream,
                   std::ostream& err);
int cmd_amplitude_sweep(const RunConfig& run, const SweepSpec& spec, const OutputSpec& out,
                        std::ostream& stdout_stream, std::ostream& err);
int cmd_avg_position(const RunConfig& run, const std::vector<double>& ratios, const OutputSpec& out,
                     std::ostream& stdout_stream, std::ostream& err);
int cmd_heatmap(const RunConfig& run, std::size_t x_count, std::size_t mix_count, const OutputSpec& out,
                std::ostream& stdout_stream, std::ostream& err);
int cmd_verify(const RunConfig& run, double tolerance_scale, std::ostream& stdout_stream);

/// Parses arguments (argv[0] is the program name) and dispatches to a subcommand.
int run(const std::vector<std::string>& args, std::ostream& stdout_stream, std::ostream& err);

}  // namespace qbox::cli
