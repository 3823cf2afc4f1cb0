#include "coshare/plot.hpp"

#include <algorithm>
#include <sstream>

#include "coshare/error.hpp"

namespace coshare::plot {

namespace {

constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr int kMargin = 56;
constexpr int kLegendRow = 22;

PrimeModulus common_modulus(std::span<const Curve> curves) {
    if (curves.empty()) throw ValidationError("nothing to plot");
    const PrimeModulus m = curves.front().poly.modulus();
    for (const Curve& c : curves) {
        if (c.poly.modulus() != m)
            throw ValidationError("curves live in different fields");
    }
    return m;
}

std::vector<std::vector<std::uint64_t>> sample_all(std::span<const Curve> curves,
                                                   PrimeModulus m) {
    std::vector<std::vector<std::uint64_t>> rows(curves.size());
    for (std::size_t j = 0; j < curves.size(); ++j) {
        rows[j].reserve(m.value());
        for (std::uint64_t x = 0; x < m.value(); ++x) {
            rows[j].push_back(curves[j].poly.eval(FieldElement{x, m}).value());
        }
    }
    return rows;
}

} // namespace

std::vector<std::uint64_t> agreement_xs(std::span<const Curve> curves) {
    const PrimeModulus m = common_modulus(curves);
    const auto samples = sample_all(curves, m);
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < m.value(); ++x) {
        bool agree = false;
        for (std::size_t i = 0; i < samples.size() && !agree; ++i) {
            for (std::size_t j = i + 1; j < samples.size() && !agree; ++j) {
                agree = samples[i][x] == samples[j][x];
            }
        }
        if (agree) out.push_back(x);
    }
    return out;
}

std::string render_svg(std::span<const Curve> curves) {
    const PrimeModulus m = common_modulus(curves);
    const std::uint64_t p = m.value();
    const auto samples = sample_all(curves, m);
    const auto marks = agreement_xs(curves);

    // Step size shrinks for big fields so the canvas stays bounded.
    const int step = p <= 16 ? 48 : p <= 64 ? 16 : std::max<int>(2, 960 / static_cast<int>(p));
    const int plot_w = static_cast<int>(p - 1) * step;
    const int plot_h = static_cast<int>(p - 1) * step;
    const int width = 2 * kMargin + plot_w;
    const int height = 2 * kMargin + plot_h + kLegendRow * static_cast<int>(curves.size());

    const auto px = [&](std::uint64_t x) { return kMargin + static_cast<int>(x) * step; };
    const auto py = [&](std::uint64_t y) { return kMargin + plot_h - static_cast<int>(y) * step; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // Axes with one tick per residue (suppressed when the field is big).
    svg << "  <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(p - 1)
        << "\" y2=\"" << py(0) << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    svg << "  <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\""
        << py(p - 1) << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    if (p <= 32) {
        for (std::uint64_t v = 0; v < p; ++v) {
            svg << "  <text x=\"" << px(v) << "\" y=\"" << py(0) + 18
                << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#444444\">" << v
                << "</text>\n";
            svg << "  <text x=\"" << px(0) - 10 << "\" y=\"" << py(v) + 4
                << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#444444\">" << v
                << "</text>\n";
        }
    }

    for (std::size_t j = 0; j < curves.size(); ++j) {
        const char* color = kPalette[j % std::size(kPalette)];
        svg << "  <polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        for (std::uint64_t x = 0; x < p; ++x) {
            if (x > 0) svg << " ";
            svg << px(x) << "," << py(samples[j][x]);
        }
        svg << "\"/>\n";
        for (std::uint64_t x = 0; x < p; ++x) {
            svg << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(samples[j][x])
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
    }

    // Hollow marker at each meeting point of two curves.
    for (std::uint64_t x : marks) {
        std::vector<std::uint64_t> met;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            for (std::size_t j = i + 1; j < samples.size(); ++j) {
                if (samples[i][x] != samples[j][x]) continue;
                if (std::find(met.begin(), met.end(), samples[i][x]) == met.end())
                    met.push_back(samples[i][x]);
            }
        }
        for (std::uint64_t y : met) {
            svg << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y)
                << "\" r=\"7\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
        }
    }

    for (std::size_t j = 0; j < curves.size(); ++j) {
        const char* color = kPalette[j % std::size(kPalette)];
        const int y = 2 * kMargin + plot_h + kLegendRow * static_cast<int>(j);
        svg << "  <rect x=\"" << kMargin << "\" y=\"" << y - 10
            << "\" width=\"14\" height=\"14\" fill=\"" << color << "\"/>\n";
        svg << "  <text x=\"" << kMargin + 20 << "\" y=\"" << y + 2
            << "\" font-size=\"13\" fill=\"#000000\">" << curves[j].label << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

std::string render_points_table(std::span<const Curve> curves) {
    const PrimeModulus m = common_modulus(curves);
    const auto samples = sample_all(curves, m);
    const auto marks = agreement_xs(curves);

    std::ostringstream out;
    out << "x";
    for (const Curve& c : curves) out << "\t" << c.label;
    out << "\tagree\n";
    for (std::uint64_t x = 0; x < m.value(); ++x) {
        out << x;
        for (std::size_t j = 0; j < curves.size(); ++j) out << "\t" << samples[j][x];
        const bool mark = std::find(marks.begin(), marks.end(), x) != marks.end();
        out << "\t" << (mark ? "*" : "-") << "\n";
    }
    return out.str();
}

} // namespace coshare::plot
