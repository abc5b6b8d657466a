#include "motex/assembly.hpp"

#include <algorithm>
#include <sstream>

namespace motex {

H0Action compute_h0_action(const ProductContext& ctx) {
    H0Action out;
    Tridegree h0{1, 1, 0};
    if (ctx.p_chart->dim(h0) != 1)
        throw std::runtime_error("compute_h0_action: no unique h0 class");
    F2Vec h0_coords(1);
    h0_coords.set(0);
    for (const auto& [d, cell] : ctx.chart->cells()) {
        if (cell.classes.empty()) continue;
        Tridegree target{d.s + 1, d.t + 1, d.w};
        if (!ctx.chart->window().contains(target)) continue;
        F2Matrix mat(ctx.chart->dim(target), int(cell.classes.size()));
        for (int i = 0; i < int(cell.classes.size()); ++i) {
            F2Vec coords(int(cell.classes.size()));
            coords.set(i);
            auto p = product_action(ctx, d, coords, h0, h0_coords);
            if (!p) continue;
            for (int r : p->support()) mat.set(r, i);
        }
        out.maps.emplace(d, std::move(mat));
    }
    return out;
}

int AbelianTable::length(int stem, int w) const {
    const AssemblyEntry* e = at(stem, w);
    if (!e) return 0;
    if (e->has_infinite) return -1;
    int n = 0;
    for (const auto& s : e->summands) n += s.length;
    return n;
}

std::string AbelianTable::describe(int stem, int w) const {
    const AssemblyEntry* e = at(stem, w);
    if (!e || e->summands.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < e->summands.size(); ++i) {
        if (i) os << " + ";
        if (e->summands[i].infinite) os << "Z2";
        else if (e->summands[i].length == 1) os << "Z/2";
        else os << "Z/2^" << e->summands[i].length;
    }
    return os.str();
}

namespace {

int span_intersection_dim(const F2Span& a, const F2Span& b, int ambient) {
    F2Span sum(ambient);
    for (const auto& r : a.rows()) sum.add(r);
    for (const auto& r : b.rows()) sum.add(r);
    return a.dim() + b.dim() - sum.dim();
}

} // namespace

AbelianTable abelian_assembly(const ExtChart& chart, const H0Action& h0, const HiddenH0* hidden) {
    const ExtWindow& W = chart.window();
    AbelianTable out;
    out.s_ceiling = W.max_s;
    const int top = W.max_s;

    for (int stem = W.stem_lo; stem <= W.stem_hi; ++stem) {
        for (int w = W.w_lo; w <= W.w_hi; ++w) {
            std::vector<int> dims(size_t(top + 1), 0);
            bool any = false;
            for (int s = 0; s <= top; ++s) {
                dims[size_t(s)] = chart.dim({s, stem + s, w});
                any = any || dims[size_t(s)] > 0;
            }
            if (!any) continue;

            std::vector<F2Matrix> up;
            up.resize(size_t(std::max(top, 0))); /* V_s -> V_{s+1} */
            for (int s = 0; s < top; ++s) {
                F2Matrix m(dims[size_t(s + 1)], dims[size_t(s)]);
                Tridegree d{s, stem + s, w};
                if (const F2Matrix* h = h0.at(d)) m = *h;
                if (hidden) {
                    if (const F2Matrix* x = hidden->at(d))
                        for (int r = 0; r < m.rows(); ++r) m.row(r) ^= x->row(r);
                }
                up[size_t(s)] = std::move(m);
            }

            /* images im_k(e) of h^k into V_e, as spans */
            auto image_span = [&](int src, int dst) {
                F2Span sp(dims[size_t(dst)]);
                if (src < 0 || dims[size_t(src)] == 0) return sp;
                for (int c = 0; c < dims[size_t(src)]; ++c) {
                    F2Vec v(dims[size_t(src)]);
                    v.set(c);
                    for (int s = src; s < dst; ++s) v = up[size_t(s)].apply(v);
                    sp.add(v);
                }
                return sp;
            };

            AssemblyEntry entry;
            for (int s = 0; s <= top; ++s) entry.f2_length += dims[size_t(s)];

            /* finite summands: chains ending strictly below the ceiling */
            std::vector<int> starts_needed(size_t(top + 1), 0);
            for (int e = 0; e < top; ++e) {
                if (dims[size_t(e)] == 0) continue;
                auto kernel = up[size_t(e)].kernel_basis();
                if (kernel.empty()) continue;
                F2Span ker(dims[size_t(e)]);
                for (auto& k : kernel) ker.add(k);
                /* q_k = dim(ker ∩ im(h^k)) */
                std::vector<int> q(size_t(e + 2), 0);
                for (int k = 0; k <= e; ++k) {
                    F2Span imk = image_span(e - k, e);
                    q[size_t(k)] = span_intersection_dim(ker, imk, dims[size_t(e)]);
                }
                for (int k = 0; k <= e; ++k) {
                    int count = q[size_t(k)] - q[size_t(k + 1)];
                    for (int c = 0; c < count; ++c) {
                        GroupSummand g;
                        g.length = k + 1;
                        g.start_s = e - k;
                        entry.summands.push_back(g);
                        ++starts_needed[size_t(e - k)];
                    }
                }
            }
            /* chains alive at the ceiling */
            {
                std::vector<int> through(size_t(top + 2), 0);
                for (int s = 0; s <= top; ++s) through[size_t(s)] = image_span(s, top).dim();
                for (int s = 0; s <= top; ++s) {
                    int prev = s == 0 ? 0 : through[size_t(s - 1)];
                    int fresh = through[size_t(s)] - prev;
                    for (int c = 0; c < fresh; ++c) {
                        GroupSummand g;
                        g.infinite = true;
                        g.length = top - s + 1;
                        g.start_s = s;
                        entry.summands.push_back(g);
                        ++starts_needed[size_t(s)];
                        entry.has_infinite = true;
                    }
                }
            }
            /* representative names, in class order per start filtration */
            {
                std::vector<int> next(size_t(top + 1), 0);
                std::sort(entry.summands.begin(), entry.summands.end(),
                          [](const GroupSummand& a, const GroupSummand& b) {
                              if (a.start_s != b.start_s) return a.start_s < b.start_s;
                              if (a.infinite != b.infinite) return a.infinite > b.infinite;
                              return a.length > b.length;
                          });
                for (auto& g : entry.summands) {
                    const auto* cell = chart.cell({g.start_s, stem + g.start_s, w});
                    int& idx = next[size_t(g.start_s)];
                    if (cell && idx < int(cell->classes.size()))
                        g.generator = cell->classes[size_t(idx)].name;
                    ++idx;
                }
            }
            /* a chain end immediately below a chain start is flagged */
            for (const auto& a : entry.summands) {
                if (a.infinite) continue;
                int end = a.start_s + a.length - 1;
                for (const auto& b : entry.summands)
                    if (b.start_s == end + 1) entry.ambiguous = true;
            }
            std::sort(entry.summands.begin(), entry.summands.end(),
                      [](const GroupSummand& a, const GroupSummand& b) {
                          if (a.infinite != b.infinite) return a.infinite > b.infinite;
                          if (a.length != b.length) return a.length > b.length;
                          return a.start_s < b.start_s;
                      });
            out.entries.emplace(std::make_pair(stem, w), std::move(entry));
        }
    }
    return out;
}

} // namespace motex
