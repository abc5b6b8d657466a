#include "motex/chart.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <sstream>
#include <stdexcept>

namespace motex {

using ordered_json = nlohmann::ordered_json;

ChartFormat parse_chart_format(const std::string& s) {
    if (s == "json") return ChartFormat::Json;
    if (s == "text") return ChartFormat::Text;
    if (s == "svg") return ChartFormat::Svg;
    throw std::runtime_error("unknown chart format '" + s + "'");
}

ChartDocument chart_from_ext(const ExtChart& chart, const std::string& title, bool classical) {
    ChartDocument doc;
    doc.kind = "ext";
    doc.title = title;
    std::map<std::tuple<int, int, int, int>, int> index; /* (stem,s,w,k) -> class id */
    for (const auto& [d, cell] : chart.cells()) {
        for (size_t k = 0; k < cell.classes.size(); ++k) {
            ChartDocument::Class c;
            c.stem = d.stem();
            c.s = d.s;
            c.w = classical ? 0 : d.w;
            c.name = cell.classes[k].name;
            c.glyph = "dot";
            index[{d.stem(), d.s, d.w, int(k)}] = int(doc.classes.size());
            doc.classes.push_back(std::move(c));
        }
    }
    return doc;
}

ChartDocument chart_from_ahss(const AhssResult& res, const CoefficientTable& table,
                              const std::string& title) {
    ChartDocument doc;
    doc.kind = "ahss-gr";
    doc.title = title;
    for (const auto& [key, slots] : res.einf) {
        for (const auto& [f, m] : slots) {
            ChartDocument::Class c;
            c.stem = key.first;
            c.s = f; /* cell filtration on the vertical axis */
            c.w = key.second;
            c.name = table.ring().mono_str(m) + "[" + std::to_string(f) + "]";
            c.glyph = "dot";
            doc.classes.push_back(std::move(c));
        }
    }
    return doc;
}

static ChartDocument filtered(const ChartDocument& doc, const ChartOptions& opt) {
    if (!opt.coweight) return doc;
    ChartDocument out;
    out.kind = doc.kind;
    out.title = doc.title + " (coweight " + std::to_string(*opt.coweight) + " mod 4)";
    std::vector<int> remap(doc.classes.size(), -1);
    for (size_t i = 0; i < doc.classes.size(); ++i) {
        const auto& c = doc.classes[i];
        int cw = c.stem - c.w;
        if (((cw - *opt.coweight) % 4 + 4) % 4 != 0) continue;
        remap[i] = int(out.classes.size());
        out.classes.push_back(c);
    }
    for (const auto& l : doc.lines)
        if (remap[size_t(l.from)] >= 0 && remap[size_t(l.to)] >= 0)
            out.lines.push_back({remap[size_t(l.from)], remap[size_t(l.to)], l.kind});
    for (const auto& a : doc.arrows)
        if (remap[size_t(a.from)] >= 0 && remap[size_t(a.to)] >= 0)
            out.arrows.push_back({remap[size_t(a.from)], remap[size_t(a.to)], a.page});
    return out;
}

std::string chart_to_json(const ChartDocument& doc) {
    ordered_json j;
    j["schema"] = "motex-chart/1";
    j["kind"] = doc.kind;
    j["title"] = doc.title;
    j["classes"] = ordered_json::array();
    for (const auto& c : doc.classes)
        j["classes"].push_back({{"stem", c.stem}, {"s", c.s}, {"w", c.w}, {"name", c.name},
                                {"glyph", c.glyph}});
    j["lines"] = ordered_json::array();
    for (const auto& l : doc.lines)
        j["lines"].push_back({{"from", l.from}, {"to", l.to}, {"kind", l.kind}});
    j["arrows"] = ordered_json::array();
    for (const auto& a : doc.arrows)
        j["arrows"].push_back({{"from", a.from}, {"to", a.to}, {"page", a.page}});
    return j.dump(2) + "\n";
}

ChartDocument chart_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    if (j.at("schema") != "motex-chart/1")
        throw std::runtime_error("unsupported chart schema");
    ChartDocument doc;
    doc.kind = j.at("kind");
    doc.title = j.at("title");
    for (const auto& c : j.at("classes"))
        doc.classes.push_back({c.at("stem"), c.at("s"), c.at("w"), c.at("name"), c.at("glyph")});
    for (const auto& l : j.at("lines")) doc.lines.push_back({l.at("from"), l.at("to"), l.at("kind")});
    for (const auto& a : j.at("arrows")) doc.arrows.push_back({a.at("from"), a.at("to"), a.at("page")});
    return doc;
}

static std::string chart_to_text(const ChartDocument& doc) {
    /* counts per (stem, s), weights folded */
    std::map<std::pair<int, int>, int> counts;
    int stem_lo = 0, stem_hi = 0, s_hi = 0;
    for (const auto& c : doc.classes) {
        counts[{c.stem, c.s}]++;
        stem_lo = std::min(stem_lo, c.stem);
        stem_hi = std::max(stem_hi, c.stem);
        s_hi = std::max(s_hi, c.s);
    }
    std::ostringstream os;
    os << "# " << doc.title << "\n";
    for (int s = s_hi; s >= 0; --s) {
        os << (s < 10 ? " " : "") << s << " |";
        for (int n = stem_lo; n <= stem_hi; ++n) {
            auto it = counts.find({n, s});
            if (it == counts.end()) os << " .";
            else if (it->second < 10) os << ' ' << it->second;
            else os << " *";
        }
        os << "\n";
    }
    os << "    ";
    for (int n = stem_lo; n <= stem_hi; ++n) os << "--";
    os << "\n     ";
    for (int n = stem_lo; n <= stem_hi; ++n) {
        if (n % 5 == 0) {
            std::string label = std::to_string(n);
            os << label;
            for (size_t k = label.size(); k < 2; ++k) os << ' ';
        } else {
            os << "  ";
        }
    }
    os << "\n";
    return os.str();
}

static std::string chart_to_svg(const ChartDocument& doc) {
    int stem_lo = 0, stem_hi = 1, s_hi = 1;
    for (const auto& c : doc.classes) {
        stem_lo = std::min(stem_lo, c.stem);
        stem_hi = std::max(stem_hi, c.stem);
        s_hi = std::max(s_hi, c.s);
    }
    const int dx = 36, dy = 28, margin = 44;
    auto px = [&](int stem) { return margin + (stem - stem_lo) * dx; };
    auto py = [&](int s) { return margin + (s_hi - s) * dy; };
    int width = px(stem_hi) + margin, height = py(0) + margin;

    /* spread classes sharing a (stem, s) spot */
    std::map<std::pair<int, int>, int> seen;
    std::vector<std::pair<int, int>> at(doc.classes.size());
    for (size_t i = 0; i < doc.classes.size(); ++i) {
        const auto& c = doc.classes[i];
        int k = seen[{c.stem, c.s}]++;
        at[i] = {px(c.stem) + 6 * k, py(c.s) - 4 * (k % 2)};
    }

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\">\n";
    os << "<text x=\"8\" y=\"16\" font-size=\"12\">" << doc.title << "</text>\n";
    for (int n = stem_lo; n <= stem_hi; ++n)
        os << "<text x=\"" << px(n) - 4 << "\" y=\"" << height - 12 << "\" font-size=\"9\">" << n
           << "</text>\n";
    for (int s = 0; s <= s_hi; ++s)
        os << "<text x=\"8\" y=\"" << py(s) + 3 << "\" font-size=\"9\">" << s << "</text>\n";
    for (const auto& l : doc.lines) {
        auto [x1, y1] = at[size_t(l.from)];
        auto [x2, y2] = at[size_t(l.to)];
        os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
           << "\" stroke=\"#777\" stroke-width=\"1\"/>\n";
    }
    for (const auto& a : doc.arrows) {
        auto [x1, y1] = at[size_t(a.from)];
        auto [x2, y2] = at[size_t(a.to)];
        os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
           << "\" stroke=\"#c22\" stroke-width=\"1\"/>\n";
    }
    for (size_t i = 0; i < doc.classes.size(); ++i) {
        auto [x, y] = at[i];
        os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2.6\"><title>"
           << doc.classes[i].name << " (w=" << doc.classes[i].w << ")</title></circle>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string emit_chart(const ChartDocument& doc, ChartFormat format, const ChartOptions& opt) {
    ChartDocument d = filtered(doc, opt);
    switch (format) {
        case ChartFormat::Json: return chart_to_json(d);
        case ChartFormat::Text: return chart_to_text(d);
        case ChartFormat::Svg: return chart_to_svg(d);
    }
    return "";
}

} // namespace motex
