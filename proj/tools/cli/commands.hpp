#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cli.hpp"
#include "common.hpp"
#include "fracvar/errors.hpp"

namespace fracvar::cli {

struct DerivArgs {
    std::string profile;
    std::string input;
    int column = 1;
    double alpha = 0.5;
    std::string side = "left";
    std::string scheme = "gl";
    std::int64_t n = 1024;
    double a = 0.0;
    double b = 1.0;
    std::string oracle;
    double trim = 0.1;
    std::string export_matrix;
    std::string out;
};

struct SolveArgs {
    std::string problem;
    std::optional<std::int64_t> n;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> tol;
    std::optional<int> max_iter;
    std::optional<double> damping;
    std::optional<std::uint64_t> seed;
    std::string out;
};

struct VerifyArgs {
    std::string manifest;
    std::optional<double> tol;
    std::optional<double> trim;
    std::string out;
};

struct ExampleArgs {
    int id = 1;
    double order = 0.5;
    std::int64_t n = 0;  // 0: 2048 for example 1, 1024 for example 2
    std::string profile;
    double trim = 0.1;
    std::optional<double> tol;
    std::string out;
};

int cmd_deriv(const DerivArgs& args, Io io);
int cmd_solve(const SolveArgs& args, Io io);
int cmd_verify(const VerifyArgs& args, Io io);
int cmd_example(const ExampleArgs& args, Io io);

/// Largest |num - exact| / |exact| over nodes valid in both and inside w
/// (absolute error where exact is 0).
double max_rel_error(const SampledSignal& num, const SampledSignal& exact, const Window& w);

} // namespace fracvar::cli

namespace fracvar::cli {

json report_json(const ConservationReport& rep);
void write_defects(const std::filesystem::path& file, const ConservationReport& rep);

} // namespace fracvar::cli
