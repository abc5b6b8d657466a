#pragma once

#include "motex/ahss.hpp"

#include <optional>
#include <string>
#include <vector>

namespace motex {

/* Renderable chart: classes at (stem, filtration, weight) with glyphs,
 * structure lines and differential arrows.  Round-trips losslessly through
 * the json schema. */
struct ChartDocument {
    struct Class {
        int stem = 0, s = 0, w = 0;
        std::string name;
        std::string glyph; /* tau-tower | dot | tau2-tower | tau4-tower */
    };
    struct Line {
        int from = 0, to = 0;
        std::string kind; /* h0, h1, tau, rho, u, eta, v1 */
    };
    struct Arrow {
        int from = 0, to = 0;
        int page = 0;
    };

    std::string kind;  /* ext | ahss-gr | group-table */
    std::string title;
    std::vector<Class> classes;
    std::vector<Line> lines;
    std::vector<Arrow> arrows;
};

struct ChartOptions {
    std::optional<int> coweight; /* keep classes with stem - w = c mod 4 */
    bool suppress_weight = false;
};

ChartDocument chart_from_ext(const ExtChart& chart, const std::string& title, bool classical);
ChartDocument chart_from_ahss(const AhssResult& res, const CoefficientTable& table,
                              const std::string& title);

enum class ChartFormat { Json, Text, Svg };
ChartFormat parse_chart_format(const std::string& s);

std::string emit_chart(const ChartDocument& doc, ChartFormat format, const ChartOptions& opt = {});

std::string chart_to_json(const ChartDocument& doc);
ChartDocument chart_from_json(const std::string& text);

} // namespace motex
