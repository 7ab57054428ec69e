#pragma once

// CSV format shared by the CLI and the library consumers: a version header
// line, a support line, a column-name row, then numeric rows printed with
// 17 significant digits so parsing and re-serializing is byte identical.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpl/pointer_density.hpp"
#include "hpl/simulate.hpp"
#include "hpl/version.hpp"

namespace hpl {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string density_csv(const DensityGrid& grid, const std::string& axis_name,
                               const std::string& value_name) {
    std::ostringstream os;
    os << kCsvHeader << "\n";
    os << "# support," << format_double(grid.support_lo) << "," << format_double(grid.support_hi)
       << "\n";
    os << axis_name << "," << value_name << "\n";
    for (std::size_t i = 0; i < grid.axis.size(); ++i)
        os << format_double(grid.axis[i]) << "," << format_double(grid.values[i]) << "\n";
    return os.str();
}

struct ParsedDensityCsv {
    DensityGrid grid;
    std::string axis_name;
    std::string value_name;
};

inline ParsedDensityCsv parse_density_csv(std::istream& in) {
    ParsedDensityCsv out;
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("parse_density_csv: bad or missing version header");
    if (!std::getline(in, line) || line.rfind("# support,", 0) != 0)
        throw std::runtime_error("parse_density_csv: missing support line");
    {
        std::istringstream ls(line.substr(10));
        char comma;
        if (!(ls >> out.grid.support_lo >> comma >> out.grid.support_hi))
            throw std::runtime_error("parse_density_csv: bad support line");
    }
    if (!std::getline(in, line)) throw std::runtime_error("parse_density_csv: missing columns");
    {
        const auto pos = line.find(',');
        if (pos == std::string::npos)
            throw std::runtime_error("parse_density_csv: bad column row");
        out.axis_name = line.substr(0, pos);
        out.value_name = line.substr(pos + 1);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto pos = line.find(',');
        if (pos == std::string::npos) throw std::runtime_error("parse_density_csv: bad data row");
        out.grid.axis.push_back(std::stod(line.substr(0, pos)));
        out.grid.values.push_back(std::stod(line.substr(pos + 1)));
    }
    return out;
}

inline std::string samples_csv(const std::vector<EndpointSample>& samples) {
    std::ostringstream os;
    os << kCsvHeader << "\n";
    os << "index,y\n";
    for (std::size_t i = 0; i < samples.size(); ++i)
        os << i << "," << format_double(samples[i].y) << "\n";
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace hpl
