#include "speclab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace speclab::io {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void Csv::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text += ',';
        text += cells[i];
    }
    text += '\n';
}

std::string SvgScatter::render() const {
    double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
    bool first = true;
    auto grow = [&](std::complex<double> z) {
        if (first) {
            xlo = xhi = z.real();
            ylo = yhi = z.imag();
            first = false;
        } else {
            xlo = std::min(xlo, z.real());
            xhi = std::max(xhi, z.real());
            ylo = std::min(ylo, z.imag());
            yhi = std::max(yhi, z.imag());
        }
    };
    for (auto z : points) grow(z);
    for (auto z : polygon) grow(z);
    const double padx = 0.05 * std::max(xhi - xlo, 1e-12);
    const double pady = 0.05 * std::max(yhi - ylo, 1e-12);
    xlo -= padx;
    xhi += padx;
    ylo -= pady;
    yhi += pady;
    const double W = 640.0, H = 480.0;
    auto X = [&](double x) { return (x - xlo) / (xhi - xlo) * W; };
    auto Y = [&](double y) { return H - (y - ylo) / (yhi - ylo) * H; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
    s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    if (!polygon.empty()) {
        s += "<polygon fill=\"none\" stroke=\"#4477aa\" stroke-width=\"1\" points=\"";
        for (auto z : polygon)
            s += fmt17(X(z.real())) + "," + fmt17(Y(z.imag())) + " ";
        s += "\"/>\n";
    }
    for (auto z : points)
        s += "<circle cx=\"" + fmt17(X(z.real())) + "\" cy=\"" + fmt17(Y(z.imag())) +
             "\" r=\"3\" fill=\"#cc3311\"/>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace speclab::io
