// csv.hpp — deterministic CSV output with a provenance header

#pragma once

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "uscpt/version.hpp"

namespace uscpt {

// 12 significant digits, locale-independent, '.' decimal separator
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& digest)
        : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open output file '" + path + "'");
        out_ << "# units: hbar=1, omega_c=1\n";
        out_ << "# config-digest: " << digest << "\n";
        out_ << "# tool: " << kToolName << " " << kToolVersion << "\n";
    }

    void header(const std::vector<std::string>& cols) { line(cols); }

    void row(const std::vector<std::string>& cells) { line(cells); }

    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

    static std::string cell(double v) { return format_double(v); }

private:
    std::ofstream out_;

    void line(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << cells[i];
        }
        out_ << "\n";
    }
};

} // namespace uscpt
