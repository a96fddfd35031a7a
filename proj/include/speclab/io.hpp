#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace speclab::io {

/// %.17g — enough digits to round-trip a double exactly.
std::string fmt17(double v);

/// Writes via a temp file in the same directory plus rename, so readers never
/// observe a half-written file.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

struct Csv {
    std::string text;
    explicit Csv(std::string_view header) { text = std::string(header) + "\n"; }
    void row(const std::vector<std::string>& cells);
};

struct SvgScatter {
    // complex-plane scatter with an optional polygon overlay
    std::vector<std::complex<double>> points;
    std::vector<std::complex<double>> polygon;
    std::string render() const;
};

}  // namespace speclab::io
