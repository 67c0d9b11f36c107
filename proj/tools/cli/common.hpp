#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracvar/fixtures.hpp"
#include "fracvar/problem.hpp"

namespace fracvar::cli {

using json = nlohmann::ordered_json;

/// Bad flags, unreadable files, malformed JSON: exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Io {
    std::ostream& out;
    std::ostream& err;
};

/// --out when given, else $FRACVAR_OUT, else ./fracvar-out. Created if missing.
std::filesystem::path output_dir(const std::string& flag);

json load_json(const std::filesystem::path& file);
void write_json(const std::filesystem::path& file, const json& j);

Side parse_side(const std::string& s);
Scheme parse_scheme(const std::string& s);
std::string scheme_name(Scheme s);

/// Uniform on [-1, 1) from the raw 64-bit stream, identical on every platform.
double symmetric_unit(std::mt19937_64& rng);

struct ProblemSpec {
    double a = 0.0;
    double b = 1.0;
    std::int64_t n = 256;
    double alpha = 1.0;
    double beta = 1.0;
    Scheme scheme = Scheme::GL;
    std::string lagrangian;
    std::optional<Boundary> boundary;
};

ProblemSpec parse_problem(const json& j);
json to_json(const ProblemSpec& p);
FracProblem build_problem(const ProblemSpec& p, const Grid& grid, const Boundary& boundary);
/// End values of the path; masked ends read as 0.
Boundary boundary_of(const VectorPath& q);

std::vector<std::string> component_names(const std::string& prefix, std::size_t n);
SampledSignal time_signal(const Grid& g);

template <class T>
T value_or(const json& j, const char* key, T fallback)
{
    if (!j.contains(key) || j.at(key).is_null())
        return fallback;
    return j.at(key).get<T>();
}

} // namespace fracvar::cli
