#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

namespace motex {

/* Cohomological bidegree (t, w): t is the topological degree, w the weight.
 * Everything internal is stored cohomologically; charts negate at the
 * boundary and display (stem, filtration, weight). */
struct Bidegree {
    int t = 0;
    int w = 0;

    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.t + b.t, a.w + b.w}; }
    friend Bidegree operator-(Bidegree a, Bidegree b) { return {a.t - b.t, a.w - b.w}; }
    Bidegree& operator+=(Bidegree o) { t += o.t; w += o.w; return *this; }
    auto operator<=>(const Bidegree&) const = default;

    std::string str() const;
};

/* (s, t, w) with s the homological (Adams) filtration and (t, w) the internal
 * cohomological bidegree of the dual class.  Chart coordinates are
 * (stem, s, weight) = (t - s, s, w). */
struct Tridegree {
    int s = 0;
    int t = 0;
    int w = 0;

    int stem() const { return t - s; }
    int coweight() const { return stem() - w; }
    auto operator<=>(const Tridegree&) const = default;

    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Bidegree& d);
std::ostream& operator<<(std::ostream& os, const Tridegree& d);

} // namespace motex

template <>
struct std::hash<motex::Bidegree> {
    size_t operator()(const motex::Bidegree& d) const noexcept {
        return std::hash<std::int64_t>()((std::int64_t(d.t) << 32) ^ std::uint32_t(d.w));
    }
};
