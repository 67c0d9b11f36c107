#include "common.hpp"

#include <cstdlib>
#include <fstream>

namespace fracvar::cli {

std::filesystem::path output_dir(const std::string& flag)
{
    std::filesystem::path dir;
    if (!flag.empty())
        dir = flag;
    else if (const char* env = std::getenv("FRACVAR_OUT"); env && *env)
        dir = env;
    else
        dir = "fracvar-out";
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

json load_json(const std::filesystem::path& file)
{
    std::ifstream is(file);
    if (!is)
        throw ConfigError("cannot open '" + file.string() + "'");
    try {
        return json::parse(is);
    } catch (const json::exception& e) {
        throw ConfigError("'" + file.string() + "' is not valid JSON: " + e.what());
    }
}

void write_json(const std::filesystem::path& file, const json& j)
{
    std::ofstream os(file);
    if (!os)
        throw ConfigError("cannot write '" + file.string() + "'");
    os << j.dump(2) << '\n';
}

Side parse_side(const std::string& s)
{
    if (s == "left")
        return Side::Left;
    if (s == "right")
        return Side::Right;
    throw ConfigError("side must be 'left' or 'right', got '" + s + "'");
}

Scheme parse_scheme(const std::string& s)
{
    if (s == "gl" || s == "GL")
        return Scheme::GL;
    if (s == "l1" || s == "L1")
        return Scheme::L1;
    throw ConfigError("scheme must be 'gl' or 'l1', got '" + s + "'");
}

std::string scheme_name(Scheme s)
{
    return s == Scheme::GL ? "gl" : "l1";
}

double symmetric_unit(std::mt19937_64& rng)
{
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

ProblemSpec parse_problem(const json& j)
{
    if (!j.is_object())
        throw ConfigError("problem must be a JSON object");
    ProblemSpec p;
    p.a = value_or(j, "a", p.a);
    p.b = value_or(j, "b", p.b);
    p.n = value_or<std::int64_t>(j, "N", p.n);
    p.alpha = value_or(j, "alpha", p.alpha);
    p.beta = value_or(j, "beta", p.beta);
    p.scheme = parse_scheme(value_or<std::string>(j, "scheme", "gl"));
    if (!j.contains("lagrangian"))
        throw ConfigError("problem: missing 'lagrangian'");
    p.lagrangian = j.at("lagrangian").get<std::string>();
    if (j.contains("boundary")) {
        const json& bc = j.at("boundary");
        p.boundary = Boundary{bc.at("left").get<std::vector<double>>(), bc.at("right").get<std::vector<double>>()};
    }
    return p;
}

json to_json(const ProblemSpec& p)
{
    json j;
    j["a"] = p.a;
    j["b"] = p.b;
    j["N"] = p.n;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["scheme"] = scheme_name(p.scheme);
    j["lagrangian"] = p.lagrangian;
    if (p.boundary)
        j["boundary"] = {{"left", p.boundary->left}, {"right", p.boundary->right}};
    return j;
}

FracProblem build_problem(const ProblemSpec& p, const Grid& grid, const Boundary& boundary)
{
    return FracProblem(builtin_lagrangian(p.lagrangian), FracOrder(p.alpha), FracOrder(p.beta), grid, boundary,
                       p.scheme);
}

Boundary boundary_of(const VectorPath& q)
{
    const std::size_t last = q.grid().intervals();
    Boundary bc;
    for (std::size_t i = 0; i < q.dim(); ++i) {
        bc.left.push_back(q[i].valid(0) ? q[i][0] : 0.0);
        bc.right.push_back(q[i].valid(last) ? q[i][last] : 0.0);
    }
    return bc;
}

std::vector<std::string> component_names(const std::string& prefix, std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i)
        names.push_back(prefix + std::to_string(i));
    return names;
}

SampledSignal time_signal(const Grid& g)
{
    return sample([](double t) { return t; }, g);
}

} // namespace fracvar::cli
