#pragma once

/*
 * Table emission shared by the CLI: CSV with a mandatory header row and LF
 * line endings (fields never need quoting: numbers and [RN]+ words only),
 * plus a couple of formatting helpers for JSON payloads.
 */

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace qrp {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream& os) const {
        for (size_t i = 0; i < header.size(); ++i) {
            if (i) os << ',';
            os << header[i];
        }
        os << '\n';
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) os << ',';
                os << row[i];
            }
            os << '\n';
        }
    }
};

// Fixed-precision double formatting so output is byte-identical across runs.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

}  // namespace qrp
