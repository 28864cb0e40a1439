#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vofrac/grid_function.hpp"

namespace vofrac {

/// %.17g rendering used for every floating value the tool emits; doubles
/// survive an emit/ingest round trip bit-for-bit.
std::string format_double(double v);

/// Reads a `t,f` CSV (LF line endings, `#` comment lines ignored) into a
/// GridFunction. Verifies the header, row shape, and uniform spacing
/// (relative deviation <= 1e-9). Throws FormatError / NonUniformGridError.
GridFunction ingest_csv(std::istream& in);
GridFunction ingest_csv_file(const std::string& path);

/// Writes `# key=value` metadata lines, the `t,f` header, and one row per
/// node.
void emit_grid_csv(std::ostream& out, const GridFunction& g,
                   const std::vector<std::pair<std::string, std::string>>& meta);

}  // namespace vofrac
