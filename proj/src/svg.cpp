#include "gvi/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gvi {

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kLeft = 70, kRight = 30, kTop = 40, kBottom = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

struct Range {
    double lo, hi;
    double span() const { return hi - lo; }
};

Range pad(Range r) {
    if (r.hi - r.lo < 1e-300) {
        r.lo -= 0.5;
        r.hi += 0.5;
    } else {
        double m = 0.05 * (r.hi - r.lo);
        r.lo -= m;
        r.hi += m;
    }
    return r;
}

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

void open_svg(std::ostream& out, const AxesSpec& axes) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
           "font-family=\"sans-serif\">"
        << esc(axes.title) << "</text>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
        << esc(axes.xlabel) << "</text>\n"
        << "<text x=\"18\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 18 "
        << kHeight / 2 << ")\">" << esc(axes.ylabel) << "</text>\n";
}

}  // namespace

void write_line_svg(const std::string& path, const std::vector<Series>& series,
                    const AxesSpec& axes) {
    if (series.empty()) throw invalid_input("write_line_svg: no series");
    for (const auto& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size())
            throw invalid_input("write_line_svg: empty or ragged series '" + s.label + "'");
        for (size_t i = 0; i < s.x.size(); ++i)
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                throw invalid_input("write_line_svg: non-finite point in '" + s.label + "'");
    }

    Range xr{series[0].x[0], series[0].x[0]}, yr{series[0].y[0], series[0].y[0]};
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            xr.lo = std::min(xr.lo, s.x[i]);
            xr.hi = std::max(xr.hi, s.x[i]);
            yr.lo = std::min(yr.lo, s.y[i]);
            yr.hi = std::max(yr.hi, s.y[i]);
        }
    xr = pad(xr);
    yr = pad(yr);

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / xr.span() * pw; };
    auto py = [&](double y) { return kTop + ph - (y - yr.lo) / yr.span() * ph; };

    std::ostringstream out;
    open_svg(out, axes);
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
        << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double fx = xr.lo + xr.span() * t / 4.0, fy = yr.lo + yr.span() * t / 4.0;
        out << "<text x=\"" << px(fx) << "\" y=\"" << kTop + ph + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << num(fx)
            << "</text>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(fy) + 4
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << num(fy)
            << "</text>\n";
    }
    for (size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kPalette[i % (sizeof kPalette / sizeof *kPalette)];
        if (s.x.size() == 1) {
            out << "<circle cx=\"" << px(s.x[0]) << "\" cy=\"" << py(s.y[0])
                << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (size_t j = 0; j < s.x.size(); ++j)
                out << px(s.x[j]) << ',' << py(s.y[j]) << ' ';
            out << "\"/>\n";
        }
        double ly = kTop + 16 + 16 * static_cast<double>(i);
        out << "<rect x=\"" << kLeft + pw - 150 << "\" y=\"" << ly - 9
            << "\" width=\"18\" height=\"4\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << kLeft + pw - 126 << "\" y=\"" << ly - 2
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << esc(s.label) << "</text>\n";
    }
    out << "</svg>\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open for writing: " + path);
    f << out.str();
    if (!f) throw io_error("write failure: " + path);
}

void write_heatmap_svg(const std::string& path, int rows, int cols,
                       const std::vector<double>& values,
                       const std::vector<std::string>& row_labels,
                       const std::vector<std::string>& col_labels, const AxesSpec& axes) {
    if (rows <= 0 || cols <= 0 || values.size() != static_cast<size_t>(rows) * cols)
        throw invalid_input("write_heatmap_svg: bad grid");
    if (row_labels.size() != static_cast<size_t>(rows) ||
        col_labels.size() != static_cast<size_t>(cols))
        throw invalid_input("write_heatmap_svg: label count mismatch");

    double lo = values[0], hi = values[0];
    for (double v : values) {
        if (!std::isfinite(v)) throw invalid_input("write_heatmap_svg: non-finite cell");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi - lo < 1e-300) hi = lo + 1.0;

    const double pw = kWidth - kLeft - kRight - 60, ph = kHeight - kTop - kBottom;
    const double cw = pw / cols, ch = ph / rows;

    std::ostringstream out;
    open_svg(out, axes);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double t = (values[static_cast<size_t>(r) * cols + c] - lo) / (hi - lo);
            // blue (low) to red (high) through white
            int rr = static_cast<int>(t < 0.5 ? 2 * t * 255 : 255);
            int bb = static_cast<int>(t > 0.5 ? (2 - 2 * t) * 255 : 255);
            int gg = static_cast<int>(t < 0.5 ? 2 * t * 255 : (2 - 2 * t) * 255);
            out << "<rect x=\"" << kLeft + c * cw << "\" y=\"" << kTop + r * ch << "\" width=\""
                << cw << "\" height=\"" << ch << "\" fill=\"rgb(" << rr << ',' << gg << ',' << bb
                << ")\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
        }
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + r * ch + ch / 2 + 4
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
            << esc(row_labels[static_cast<size_t>(r)]) << "</text>\n";
    }
    for (int c = 0; c < cols; ++c)
        out << "<text x=\"" << kLeft + c * cw + cw / 2 << "\" y=\"" << kTop + ph + 16
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
            << esc(col_labels[static_cast<size_t>(c)]) << "</text>\n";
    out << "<text x=\"" << kLeft + pw + 10 << "\" y=\"" << kTop + 10
        << "\" font-size=\"11\" font-family=\"sans-serif\">max " << num(hi) << "</text>\n"
        << "<text x=\"" << kLeft + pw + 10 << "\" y=\"" << kTop + ph
        << "\" font-size=\"11\" font-family=\"sans-serif\">min " << num(lo) << "</text>\n"
        << "</svg>\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open for writing: " + path);
    f << out.str();
    if (!f) throw io_error("write failure: " + path);
}

}  // namespace gvi
