#ifndef PAIRPROD_SPECTRUM_TABLE_HPP
#define PAIRPROD_SPECTRUM_TABLE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pairprod {

struct SpectrumRow {
    double k_parallel = 0.0;
    double k_perp = 0.0;
    double f = 0.0;
    std::string method;
};

// Ordered momentum-spectrum table; CSV layout is
//   k_parallel,k_perp,f,method
// with 17 significant digits, rows in grid order.
struct SpectrumTable {
    std::vector<SpectrumRow> rows;

    bool empty() const { return rows.empty(); }
    std::size_t size() const { return rows.size(); }
};

void write_csv(const SpectrumTable& table, std::ostream& out);
void write_csv(const SpectrumTable& table, const std::string& path);
SpectrumTable read_csv(std::istream& in);
SpectrumTable read_csv_file(const std::string& path);

// Deterministic float formatting used in all CSV output (17 significant digits).
std::string format_float(double x);

}  // namespace pairprod

#endif
