#include "pairprod/spectrum_table.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pairprod {

std::string format_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_csv(const SpectrumTable& table, std::ostream& out) {
    out << "k_parallel,k_perp,f,method\n";
    for (const auto& r : table.rows) {
        out << format_float(r.k_parallel) << ',' << format_float(r.k_perp) << ','
            << format_float(r.f) << ',' << r.method << '\n';
    }
}

void write_csv(const SpectrumTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write CSV file: " + path);
    write_csv(table, out);
}

SpectrumTable read_csv(std::istream& in) {
    SpectrumTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("empty CSV input");
    if (line.rfind("k_parallel,", 0) != 0)
        throw std::invalid_argument("unexpected CSV header: " + line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        SpectrumRow r;
        std::string field;
        try {
            std::getline(ss, field, ',');
            r.k_parallel = std::stod(field);
            std::getline(ss, field, ',');
            r.k_perp = std::stod(field);
            std::getline(ss, field, ',');
            r.f = std::stod(field);
            std::getline(ss, r.method, ',');
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed CSV row: " + line);
        }
        table.rows.push_back(std::move(r));
    }
    return table;
}

SpectrumTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open CSV file: " + path);
    return read_csv(in);
}

}  // namespace pairprod
