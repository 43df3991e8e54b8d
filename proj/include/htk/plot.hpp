#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "htk/arrangement.hpp"

namespace htk {

namespace detail {

class SvgCanvas {
public:
    SvgCanvas(double width, double height) : w_(width), h_(height) {
        body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
              << "\" viewBox=\"0 0 " << w_ << " " << h_ << "\">\n";
        body_ << "<rect x=\"0\" y=\"0\" width=\"" << w_ << "\" height=\"" << h_
              << "\" fill=\"white\" stroke=\"none\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& color,
              double width = 1.0) {
        body_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
              << "\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>\n";
    }
    void circle(double cx, double cy, double r, const std::string& color) {
        body_ << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" fill=\"" << color
              << "\"/>\n";
    }
    void text(double x, double y, const std::string& s, int size = 11) {
        body_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
              << "\" font-family=\"monospace\">" << s << "</text>\n";
    }
    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
        body_ << "<polygon points=\"";
        for (const auto& [x, y] : pts) body_ << x << "," << y << " ";
        body_ << "\" fill=\"none\" stroke=\"" << stroke << "\"/>\n";
    }

    std::string str() const { return body_.str() + "</svg>\n"; }

private:
    double w_, h_;
    std::ostringstream body_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace detail

// Real arrangement in a window of a_R^vee (d <= 2), with fixed-point marks
// when the arrangement is simple.
inline void plot_real_arrangement(const CombinedArrangement& arr, const std::string& path) {
    const int d = arr.cfg.d();
    if (d > 2) throw unsupported_dimension("real arrangement plots support d <= 2");
    const double size = 420, margin = 30, span = 5.0;
    detail::SvgCanvas svg(size, size);
    auto sx = [&](double x) { return margin + (x + span) / (2 * span) * (size - 2 * margin); };
    auto sy = [&](double y) { return size - margin - (y + span) / (2 * span) * (size - 2 * margin); };

    svg.line(sx(-span), sy(0), sx(span), sy(0), "#999");
    if (d == 2) svg.line(sx(0), sy(-span), sx(0), sy(span), "#999");

    for (int i = 0; i < arr.cfg.n(); ++i) {
        double a = arr.alpha[std::size_t(i)].to_double();
        if (d == 1) {
            double u = double(arr.cfg.vector(i)[0]);
            double x = a / u;
            svg.line(sx(x), sy(-0.4), sx(x), sy(0.4), "#1f77b4", 1.5);
            svg.text(sx(x) + 3, sy(0.5), "H" + std::to_string(i + 1));
        } else {
            double ux = double(arr.cfg.vector(i)[0]), uy = double(arr.cfg.vector(i)[1]);
            // clip the line ux*x + uy*y = a to the window
            std::vector<std::pair<double, double>> pts;
            auto push = [&](double x, double y) {
                if (x >= -span - 1e-9 && x <= span + 1e-9 && y >= -span - 1e-9 && y <= span + 1e-9)
                    pts.emplace_back(x, y);
            };
            if (std::fabs(uy) > 1e-12) {
                push(-span, (a + ux * span) / uy);
                push(span, (a - ux * span) / uy);
            }
            if (std::fabs(ux) > 1e-12) {
                push((a + uy * span) / ux, -span);
                push((a - uy * span) / ux, span);
            }
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            if (pts.size() >= 2) {
                svg.line(sx(pts.front().first), sy(pts.front().second), sx(pts.back().first),
                         sy(pts.back().second), "#1f77b4", 1.5);
                svg.text(sx(pts.front().first) + 4, sy(pts.front().second) - 4, "H" + std::to_string(i + 1));
            }
        }
    }

    if (is_simple(arr).simple) {
        for (const auto& fp : fixed_points(arr)) {
            double x = fp.real_point[0].to_double();
            double y = d == 2 ? fp.real_point[1].to_double() : 0.0;
            svg.circle(sx(x), sy(y), 4, "#d62728");
        }
    }
    svg.text(margin, 16, "real arrangement (window +-5)");
    detail::write_file(path, svg.str());
}

// Elliptic arrangement in fundamental-domain coordinates. For d = 1 the
// point constraints live in one parallelogram; for d = 2 the two coordinate
// projections are drawn side by side.
inline void plot_elliptic_arrangement(const CombinedArrangement& arr, const std::string& path) {
    const int d = arr.cfg.d();
    if (d > 2) throw unsupported_dimension("elliptic arrangement plots support d <= 2");
    const double cell = 320, margin = 40;
    const int panels = d;
    detail::SvgCanvas svg(margin + (cell + margin) * panels, cell + 2 * margin);
    Complex tau = arr.modular.tau();
    double scale = cell / (1.0 + std::fabs(tau.real()) + 0.2);

    auto to_xy = [&](int panel, double s, double t) {
        Complex z = s + t * tau;
        double ox = margin + panel * (cell + margin) + (tau.real() < 0 ? -tau.real() * scale : 0);
        double oy = cell + margin;
        return std::pair<double, double>{ox + z.real() * scale, oy - z.imag() * scale};
    };

    for (int panel = 0; panel < panels; ++panel) {
        auto c00 = to_xy(panel, 0, 0), c10 = to_xy(panel, 1, 0), c11 = to_xy(panel, 1, 1),
             c01 = to_xy(panel, 0, 1);
        svg.polygon({c00, c10, c11, c01}, "#444");
        svg.text(c00.first, c00.second + 16, panels == 1 ? "E_tau" : "E_tau component " + std::to_string(panel + 1));
    }

    if (d == 1) {
        for (int i = 0; i < arr.cfg.n(); ++i) {
            EllipticSolutions sol = elliptic_intersection(arr, {i});
            for (const auto& pt : sol.points) {
                auto [x, y] = to_xy(0, pt[0].s(), pt[0].t());
                svg.circle(x, y, 3.5, "#1f77b4");
                svg.text(x + 5, y - 3, std::to_string(i + 1));
            }
        }
    }
    if (is_simple(arr).simple) {
        for (const auto& fp : fixed_points(arr))
            for (int panel = 0; panel < panels; ++panel) {
                auto [x, y] = to_xy(panel, fp.elliptic_point[std::size_t(panel)].s(),
                                    fp.elliptic_point[std::size_t(panel)].t());
                svg.circle(x, y, 5, "#d62728");
            }
    }
    detail::write_file(path, svg.str());
}

} // namespace htk
