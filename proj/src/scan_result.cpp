#include "fconv/scan_result.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>

#include "fconv/errors.hpp"

namespace fconv {

void ScanResult::add_row(double abscissa, std::vector<double> values) {
    if (values.size() != column_labels.size())
        throw InvalidArgument("row has " + std::to_string(values.size()) + " values, expected " +
                              std::to_string(column_labels.size()));
    if (rows.size() >= 1) {
        const double prev = rows.back().abscissa;
        if (abscissa == prev) throw InvalidArgument("abscissa repeats value " + format_double(abscissa));
        if (rows.size() >= 2) {
            const bool increasing = prev > rows[rows.size() - 2].abscissa;
            if ((abscissa > prev) != increasing)
                throw InvalidArgument("abscissa is not strictly monotone");
        }
    }
    rows.push_back({abscissa, std::move(values)});
}

std::vector<double> ScanResult::abscissas() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.abscissa);
    return out;
}

std::vector<double> ScanResult::column(std::string_view label) const {
    const auto it = std::find(column_labels.begin(), column_labels.end(), label);
    if (it == column_labels.end())
        throw InvalidArgument("no column named '" + std::string(label) + "'");
    const auto j = static_cast<std::size_t>(it - column_labels.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.values[j]);
    return out;
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string to_csv(const ScanResult& result) {
    std::string out;
    for (const auto& [key, value] : result.metadata) out += "# " + key + "=" + value + "\n";
    out += result.abscissa_label;
    for (const auto& c : result.column_labels) out += "," + c;
    out += "\n";
    for (const auto& row : result.rows) {
        out += format_double(row.abscissa);
        for (double v : row.values) out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

void write_csv(const ScanResult& result, const std::string& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    const std::string text = to_csv(result);
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    file.close();
    if (!file) throw Error("failed writing '" + path + "'");
}

}  // namespace fconv
