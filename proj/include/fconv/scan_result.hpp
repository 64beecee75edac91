// scan_result.hpp: tabular result of a parameter scan and its CSV form.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fconv {

struct ScanRow {
    double abscissa = 0.0;
    std::vector<double> values;
};

struct ScanResult {
    std::string name;
    std::string abscissa_label;
    std::vector<std::string> column_labels;
    std::vector<ScanRow> rows;
    std::map<std::string, std::string> metadata;

    // Throws InvalidArgument on wrong arity or a non-monotone abscissa.
    void add_row(double abscissa, std::vector<double> values);

    std::vector<double> abscissas() const;
    std::vector<double> column(std::string_view label) const;
};

// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

// Metadata as "# key=value" lines (sorted by key), then the header
// "abscissa_label,col1,...", then one line per row. LF line endings.
std::string to_csv(const ScanResult& result);

// Throws Error with the path in the message if the file cannot be written.
void write_csv(const ScanResult& result, const std::string& path);

}  // namespace fconv
