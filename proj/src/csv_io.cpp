#include "vofrac/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "vofrac/errors.hpp"

namespace vofrac {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

bool parse_number(const std::string& text, double& out) {
    if (text.empty()) return false;
    std::size_t used = 0;
    try {
        out = std::stod(text, &used);
    } catch (const std::exception&) {
        return false;
    }
    while (used < text.size() &&
           (text[used] == ' ' || text[used] == '\t' || text[used] == '\r')) {
        ++used;
    }
    return used == text.size() && std::isfinite(out);
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

GridFunction ingest_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    std::vector<double> ts;
    std::vector<double> fs;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = strip(line);
        if (body.empty() || body[0] == '#') continue;
        if (!saw_header) {
            if (body != "t,f") {
                throw FormatError("line " + std::to_string(line_no) +
                                  ": expected header 't,f', got '" + body + "'");
            }
            saw_header = true;
            continue;
        }
        const std::size_t comma = body.find(',');
        if (comma == std::string::npos) {
            throw FormatError("line " + std::to_string(line_no) +
                              ": expected 't,f' data row, got '" + body + "'");
        }
        double t = 0.0, f = 0.0;
        if (!parse_number(strip(body.substr(0, comma)), t) ||
            !parse_number(strip(body.substr(comma + 1)), f)) {
            throw FormatError("line " + std::to_string(line_no) +
                              ": malformed numeric row '" + body + "'");
        }
        ts.push_back(t);
        fs.push_back(f);
    }
    if (!saw_header) {
        throw FormatError("line 1: missing 't,f' header");
    }
    if (ts.size() < 2) {
        throw FormatError("need at least 2 data rows, got " +
                          std::to_string(ts.size()));
    }
    const double span = ts.back() - ts.front();
    if (!(span > 0.0)) {
        throw NonUniformGridError("abscissae must increase from first to last row");
    }
    const double h = span / static_cast<double>(ts.size() - 1);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double step = ts[i + 1] - ts[i];
        if (std::abs(step - h) > 1e-9 * std::abs(h)) {
            throw NonUniformGridError(
                "spacing deviates at row " + std::to_string(i + 2) + ": step " +
                format_double(step) + " vs expected " + format_double(h));
        }
    }
    return GridFunction(ts.front(), ts.back(), std::move(fs));
}

GridFunction ingest_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open '" + path + "'");
    }
    return ingest_csv(in);
}

void emit_grid_csv(
    std::ostream& out, const GridFunction& g,
    const std::vector<std::pair<std::string, std::string>>& meta) {
    for (const auto& [k, v] : meta) {
        out << "# " << k << "=" << v << "\n";
    }
    out << "t,f\n";
    for (std::size_t i = 0; i < g.n_points(); ++i) {
        out << format_double(g.node(i)) << "," << format_double(g.value(i))
            << "\n";
    }
}

}  // namespace vofrac
