#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracvar/signal.hpp"

namespace fracvar {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// CSV signal format: header `t,v1[,v2,...]`, one row per node, masked nodes
/// as empty fields. `names` replaces v1..vn in the header when given.
void write_csv(std::ostream& os, const VectorPath& path, const std::vector<std::string>& names = {});
void write_csv(const std::filesystem::path& file, const VectorPath& path,
               const std::vector<std::string>& names = {});

/// Parses the CSV signal format. The grid is rebuilt from the first and last
/// t values and the row count; nonuniform t columns are rejected.
VectorPath read_csv(std::istream& is);
VectorPath read_csv(const std::filesystem::path& file);

} // namespace fracvar
