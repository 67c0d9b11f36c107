#include "fracvar/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& field, std::size_t row)
{
    double x = 0.0;
    const char* b = field.data();
    const char* e = b + field.size();
    auto [ptr, ec] = std::from_chars(b, e, x);
    if (ec != std::errc() || ptr != e)
        throw DomainError("csv: row " + std::to_string(row) + ": cannot parse '" + field + "'");
    return x;
}

} // namespace

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const VectorPath& path, const std::vector<std::string>& names)
{
    if (!names.empty() && names.size() != path.dim())
        throw DomainError("csv: expected " + std::to_string(path.dim()) + " column names");
    os << 't';
    for (std::size_t i = 0; i < path.dim(); ++i)
        os << ',' << (names.empty() ? "v" + std::to_string(i + 1) : names[i]);
    os << '\n';
    const Grid& g = path.grid();
    for (std::size_t k = 0; k < g.size(); ++k) {
        os << format_double(g.node(k));
        for (std::size_t i = 0; i < path.dim(); ++i) {
            os << ',';
            if (path[i].valid(k))
                os << format_double(path[i][k]);
        }
        os << '\n';
    }
}

void write_csv(const std::filesystem::path& file, const VectorPath& path, const std::vector<std::string>& names)
{
    std::ofstream os(file);
    if (!os)
        throw DomainError("csv: cannot open " + file.string() + " for writing");
    write_csv(os, path, names);
}

VectorPath read_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line))
        throw DomainError("csv: empty input");
    const auto header = split(trim(line));
    if (header.size() < 2 || trim(header[0]) != "t")
        throw DomainError("csv: header must start with 't' and name at least one value column");
    const std::size_t cols = header.size() - 1;

    std::vector<double> t;
    std::vector<std::vector<double>> vals(cols);
    std::vector<std::vector<bool>> valid(cols);
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        line = trim(line);
        if (line.empty())
            continue;
        auto fields = split(line);
        if (fields.size() != header.size())
            throw DomainError("csv: row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                              " fields, expected " + std::to_string(header.size()));
        t.push_back(parse_number(trim(fields[0]), row));
        for (std::size_t i = 0; i < cols; ++i) {
            const auto f = trim(fields[i + 1]);
            const bool ok = !f.empty() && f != "nan";
            valid[i].push_back(ok);
            vals[i].push_back(ok ? parse_number(f, row) : std::nan(""));
        }
    }
    if (t.size() < 3)
        throw DomainError("csv: need at least 3 rows (2 subintervals)");
    Grid grid(t.front(), t.back(), t.size() - 1);
    const double tol = 1e-9 * grid.length();
    for (std::size_t k = 0; k < t.size(); ++k)
        if (std::abs(t[k] - grid.node(k)) > tol)
            throw DomainError("csv: t column is not a uniform grid (row " + std::to_string(k + 2) + ")");

    std::vector<SampledSignal> comps;
    comps.reserve(cols);
    for (std::size_t i = 0; i < cols; ++i)
        comps.emplace_back(grid, std::move(vals[i]), std::move(valid[i]));
    return VectorPath(std::move(comps));
}

VectorPath read_csv(const std::filesystem::path& file)
{
    std::ifstream is(file);
    if (!is)
        throw DomainError("csv: cannot open " + file.string());
    return read_csv(is);
}

} // namespace fracvar
