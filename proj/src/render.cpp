#include "oritatami/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace oritatami {

ScreenPoint screen_position(Point p)
{
    return {p.x - p.y / 2.0, p.y * std::sqrt(3.0) / 2.0};
}

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00")
        s = "0.00";
    return s;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

} // namespace

std::string render_svg(const Conformation& c, const AttractionRule& rule, const RenderStyle& style)
{
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    std::vector<ScreenPoint> pts;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto s = screen_position(c.points[i]);
        pts.push_back(s);
        if (i == 0) {
            x0 = x1 = s.x;
            y0 = y1 = s.y;
        }
        x0 = std::min(x0, s.x);
        x1 = std::max(x1, s.x);
        y0 = std::min(y0, s.y);
        y1 = std::max(y1, s.y);
    }
    // SVG y grows downwards.
    auto sx = [&](const ScreenPoint& p) { return style.margin + (p.x - x0) * style.scale; };
    auto sy = [&](const ScreenPoint& p) { return style.margin + (y1 - p.y) * style.scale; };
    const double width = 2 * style.margin + (x1 - x0) * style.scale;
    const double height = 2 * style.margin + (y1 - y0) * style.scale;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width) << "\" height=\""
        << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
    if (pts.size() > 1) {
        out << "<polyline class=\"backbone\" fill=\"none\" stroke=\"#444\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            out << (i ? " " : "") << fmt(sx(pts[i])) << ',' << fmt(sy(pts[i]));
        out << "\"/>\n";
    }
    for (const auto& [i, j] : bonds(c, rule))
        out << "<line class=\"bond\" stroke=\"#c33\" stroke-width=\"1.5\" stroke-dasharray=\"3 2\" x1=\""
            << fmt(sx(pts[i])) << "\" y1=\"" << fmt(sy(pts[i])) << "\" x2=\"" << fmt(sx(pts[j])) << "\" y2=\""
            << fmt(sy(pts[j])) << "\"/>\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool seed = i < style.seed_length;
        out << "<circle class=\"" << (seed ? "seed" : "bead") << "\" cx=\"" << fmt(sx(pts[i])) << "\" cy=\""
            << fmt(sy(pts[i])) << "\" r=\"" << fmt(style.radius) << "\" fill=\"" << (seed ? "#b5651d" : "#6af")
            << "\" stroke=\"#222\"/>\n";
        if (style.labels) {
            const std::string label = style.name ? style.name(c.labels[i]) : std::to_string(c.labels[i]);
            out << "<text x=\"" << fmt(sx(pts[i])) << "\" y=\"" << fmt(sy(pts[i]) + 3)
                << "\" font-size=\"8\" text-anchor=\"middle\" font-family=\"monospace\">" << escape(label)
                << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_ascii(const Conformation& c, std::size_t seed_length)
{
    if (c.empty())
        return {};
    int cmin = 0, cmax = 0, ymin = c.points[0].y, ymax = ymin;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Point p = c.points[i];
        const int col = 4 * p.x - 2 * p.y;
        if (i == 0)
            cmin = cmax = col;
        cmin = std::min(cmin, col);
        cmax = std::max(cmax, col);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const int rows = 2 * (ymax - ymin) + 1;
    const int cols = cmax - cmin + 1;
    std::vector<std::string> grid(static_cast<std::size_t>(rows), std::string(static_cast<std::size_t>(cols), ' '));
    auto at = [&](int row, int col) -> char& {
        return grid[static_cast<std::size_t>(row)][static_cast<std::size_t>(col - cmin)];
    };
    auto row_of = [&](Point p) { return 2 * (ymax - p.y); };
    auto col_of = [](Point p) { return 4 * p.x - 2 * p.y; };
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const Point a = c.points[i], b = c.points[i + 1];
        const Point lo = a.y < b.y || (a.y == b.y && a.x < b.x) ? a : b;
        const Point hi = lo == a ? b : a;
        const Point d = hi - lo;
        if (d.y == 0) {
            for (int k = 1; k < 4; ++k)
                at(row_of(lo), col_of(lo) + k) = '-';
        } else if (d.x == 0) {
            at(row_of(lo) - 1, col_of(lo) - 1) = '\\';
        } else {
            at(row_of(lo) - 1, col_of(lo) + 1) = '/';
        }
    }
    for (std::size_t i = 0; i < c.size(); ++i)
        at(row_of(c.points[i]), col_of(c.points[i])) = i < seed_length ? '@' : 'o';
    std::string out;
    for (auto& line : grid) {
        line.erase(line.find_last_not_of(' ') + 1);
        out += line + '\n';
    }
    return out;
}

} // namespace oritatami
