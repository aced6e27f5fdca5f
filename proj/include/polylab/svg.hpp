// SPDX-License-Identifier: Apache-2.0
#pragma once

// Minimal self-contained SVG plots: framed panels with scatter points,
// horizontal reference lines and histogram bars.

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polylab/harness.hpp"

namespace polylab::harness {

class Svg {
public:
    struct Frame {
        double x, y, w, h;
        double x0, x1, y0, y1;
        bool logx = false;

        double px(double v) const {
            const double t = logx ? (std::log(v) - std::log(x0)) / (std::log(x1) - std::log(x0)) : (v - x0) / (x1 - x0);
            return x + t * w;
        }
        double py(double v) const { return y + h - (v - y0) / (y1 - y0) * h; }
    };

    Svg(double width, double height) : width_(width), height_(height) {}

    Frame frame(double x, double y, double w, double h, double x0, double x1, double y0, double y1,
                const std::string& title, const std::string& xlabel, const std::string& ylabel, bool logx = false) {
        if (!(x1 > x0)) x1 = x0 + 1;
        if (!(y1 > y0)) y1 = y0 + 1;
        Frame f{x, y, w, h, x0, x1, y0, y1, logx};
        body_ << "<rect x=\"" << n(x) << "\" y=\"" << n(y) << "\" width=\"" << n(w) << "\" height=\"" << n(h)
              << "\" fill=\"none\" stroke=\"#333\"/>\n";
        text(x + w / 2, y - 8, title, "middle", 13);
        text(x + w / 2, y + h + 32, xlabel, "middle", 11);
        body_ << "<text x=\"" << n(x - 38) << "\" y=\"" << n(y + h / 2) << "\" font-size=\"11\" text-anchor=\"middle\" "
              << "transform=\"rotate(-90 " << n(x - 38) << ' ' << n(y + h / 2) << ")\">" << escape(ylabel) << "</text>\n";
        for (int k = 0; k <= 2; ++k) {
            const double xv = logx ? std::exp(std::log(x0) + k * (std::log(x1) - std::log(x0)) / 2) : x0 + k * (x1 - x0) / 2;
            const double yv = y0 + k * (y1 - y0) / 2;
            text(f.px(xv), y + h + 14, label(xv), "middle", 10);
            text(x - 4, f.py(yv) + 3, label(yv), "end", 10);
        }
        return f;
    }

    void point(const Frame& f, double xv, double yv, const std::string& color, double r = 2.5) {
        body_ << "<circle cx=\"" << n(f.px(xv)) << "\" cy=\"" << n(f.py(yv)) << "\" r=\"" << n(r) << "\" fill=\"" << color
              << "\"/>\n";
    }
    void hline(const Frame& f, double yv, const std::string& color) {
        if (yv < f.y0 || yv > f.y1) return;
        body_ << "<line x1=\"" << n(f.x) << "\" y1=\"" << n(f.py(yv)) << "\" x2=\"" << n(f.x + f.w) << "\" y2=\""
              << n(f.py(yv)) << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
    }
    void bar(const Frame& f, double xlo, double xhi, double yv, const std::string& color) {
        const double top = f.py(yv), bottom = f.py(f.y0);
        body_ << "<rect x=\"" << n(f.px(xlo)) << "\" y=\"" << n(top) << "\" width=\"" << n(f.px(xhi) - f.px(xlo))
              << "\" height=\"" << n(bottom - top) << "\" fill=\"" << color << "\" stroke=\"#222\" stroke-width=\"0.5\"/>\n";
    }
    void legend(double x, double y, const std::vector<std::pair<std::string, std::string>>& entries) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const double yy = y + 14.0 * static_cast<double>(i);
            body_ << "<circle cx=\"" << n(x) << "\" cy=\"" << n(yy - 3) << "\" r=\"4\" fill=\"" << entries[i].second
                  << "\"/>\n";
            text(x + 8, yy, entries[i].first, "start", 11);
        }
    }
    void text(double x, double y, const std::string& s, const char* anchor, int size) {
        body_ << "<text x=\"" << n(x) << "\" y=\"" << n(y) << "\" font-size=\"" << size << "\" text-anchor=\"" << anchor
              << "\">" << escape(s) << "</text>\n";
    }

    std::string str() const {
        std::ostringstream o;
        o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << n(width_) << "\" height=\"" << n(height_)
          << "\" viewBox=\"0 0 " << n(width_) << ' ' << n(height_) << "\" font-family=\"sans-serif\">\n"
          << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
          << body_.str() << "</svg>\n";
        return o.str();
    }

private:
    static std::string n(double v) { return fmt_fixed(v, 2); }
    static std::string label(double v) {
        if (std::fabs(v) >= 1e5) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", v);
            return buf;
        }
        return std::fabs(v - std::round(v)) < 1e-9 ? fmt_fixed(v, 0) : fmt_fixed(v, 2);
    }
    static std::string escape(const std::string& s) {
        std::string o;
        for (char c : s) {
            if (c == '<') o += "&lt;";
            else if (c == '>') o += "&gt;";
            else if (c == '&') o += "&amp;";
            else o += c;
        }
        return o;
    }

    double width_, height_;
    std::ostringstream body_;
};

}  // namespace polylab::harness
