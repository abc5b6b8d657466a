#include "motex/sspage.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace motex {

void RingSpec::add_gen(const std::string& name, PageGenDeg deg, int cap) {
    gens_.push_back(Gen{name, deg, cap});
}

void RingSpec::add_rule(const PageMono& lhs, const PageMono& rhs) {
    rules_.push_back(Rule{lhs, rhs, false});
}

void RingSpec::add_zero_rule(const PageMono& lhs) {
    rules_.push_back(Rule{lhs, {}, true});
}

int RingSpec::gen_index(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return int(i);
    throw std::runtime_error("RingSpec: no generator '" + name + "'");
}

PageGenDeg RingSpec::deg(const PageMono& m) const {
    PageGenDeg d;
    for (size_t i = 0; i < m.size(); ++i) {
        d.n += m[i] * gens_[i].deg.n;
        d.s += m[i] * gens_[i].deg.s;
        d.w += m[i] * gens_[i].deg.w;
    }
    return d;
}

static bool divides(const PageMono& a, const PageMono& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

std::optional<PageMono> RingSpec::reduce(PageMono m) const {
    for (size_t i = 0; i < m.size(); ++i)
        if (gens_[i].cap >= 0 && m[i] > gens_[i].cap) return std::nullopt;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rules_) {
            if (!divides(r.lhs, m)) continue;
            if (r.to_zero) return std::nullopt;
            for (size_t i = 0; i < m.size(); ++i) m[i] += r.rhs[i] - r.lhs[i];
            for (size_t i = 0; i < m.size(); ++i)
                if (gens_[i].cap >= 0 && m[i] > gens_[i].cap) return std::nullopt;
            changed = true;
            break;
        }
    }
    return m;
}

bool RingSpec::irreducible(const PageMono& m) const {
    for (size_t i = 0; i < m.size(); ++i)
        if (gens_[i].cap >= 0 && m[i] > gens_[i].cap) return false;
    for (const auto& r : rules_)
        if (divides(r.lhs, m)) return false;
    return true;
}

std::optional<PageMono> RingSpec::mul(const PageMono& a, const PageMono& b) const {
    PageMono m(gens_.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) m[i] = a[i] + b[i];
    return reduce(std::move(m));
}

std::vector<PageMono> RingSpec::enumerate(int n, int s, int w) const {
    /* choose exponents of positive-filtration generators first (bounded by
     * s), then the negative-stem generator from the stem deficit, then tau
     * from the weight deficit */
    std::vector<int> order_s, order_rest;
    int neg_gen = -1, tau_gen = -1;
    for (int i = 0; i < gen_count(); ++i) {
        const auto& g = gens_[size_t(i)];
        if (g.deg.s > 0) order_s.push_back(i);
        else if (g.deg.n < 0) {
            if (neg_gen >= 0) throw std::runtime_error("RingSpec: two negative-stem generators");
            neg_gen = i;
        } else if (g.deg.n == 0 && g.deg.s == 0 && g.deg.w == -1) {
            if (tau_gen >= 0) throw std::runtime_error("RingSpec: two tau generators");
            tau_gen = i;
        } else {
            throw std::runtime_error("RingSpec: unsupported generator grading for " + g.name);
        }
    }
    std::vector<PageMono> out;
    PageMono cur(gens_.size(), 0);
    std::function<void(size_t, int, int, int)> rec = [&](size_t k, int rn, int rs, int rw) {
        if (k == order_s.size()) {
            /* rs must be zero now */
            if (rs != 0) return;
            int e_neg = 0;
            if (rn != 0) {
                if (neg_gen < 0 || rn > 0) return;
                e_neg = -rn / -gens_[size_t(neg_gen)].deg.n;
                if (e_neg * gens_[size_t(neg_gen)].deg.n != rn) return;
                if (gens_[size_t(neg_gen)].cap >= 0 && e_neg > gens_[size_t(neg_gen)].cap) return;
                cur[size_t(neg_gen)] = e_neg;
                rw -= e_neg * gens_[size_t(neg_gen)].deg.w;
            }
            int e_tau = 0;
            if (rw != 0) {
                if (tau_gen < 0 || rw > 0) {
                    if (neg_gen >= 0) cur[size_t(neg_gen)] = 0;
                    return;
                }
                e_tau = -rw;
                cur[size_t(tau_gen)] = e_tau;
            }
            if (irreducible(cur)) out.push_back(cur);
            if (neg_gen >= 0) cur[size_t(neg_gen)] = 0;
            if (tau_gen >= 0) cur[size_t(tau_gen)] = 0;
            return;
        }
        int gi = order_s[k];
        const auto& g = gens_[size_t(gi)];
        int e_max = rs / g.deg.s;
        if (g.cap >= 0) e_max = std::min(e_max, g.cap);
        for (int e = 0; e <= e_max; ++e) {
            cur[size_t(gi)] = e;
            rec(k + 1, rn - e * g.deg.n, rs - e * g.deg.s, rw - e * g.deg.w);
        }
        cur[size_t(gi)] = 0;
    };
    rec(0, n, s, w);
    std::sort(out.begin(), out.end());
    return out;
}

PageMono RingSpec::parse_mono(const std::string& s) const {
    PageMono m(gens_.size(), 0);
    if (s == "1") return m;
    for (const auto& tok : split_ws(s)) {
        std::string name = tok;
        int e = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            name = tok.substr(0, caret);
            e = std::stoi(tok.substr(caret + 1));
        }
        m[size_t(gen_index(name))] += e;
    }
    return m;
}

std::string RingSpec::mono_str(const PageMono& m) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << ' ';
        os << gens_[i].name;
        if (m[i] > 1) os << '^' << m[i];
        first = false;
    }
    return first ? "1" : os.str();
}

void validate_rules(const RingSpec& ring, const std::vector<DifferentialRule>& rules, SsKind kind) {
    for (const auto& r : rules) {
        PageGenDeg src = ring.deg(r.source);
        PageGenDeg dst = ring.deg(r.target);
        bool ok = kind == SsKind::Bockstein
                      ? (dst.n == src.n - 1 && dst.s == src.s + 1 && dst.w == src.w)
                      : (dst.n == src.n - 1 && dst.s == src.s + r.page && dst.w == src.w);
        if (!ok)
            throw std::runtime_error("differential rule " + ring.mono_str(r.source) + " -> " +
                                     ring.mono_str(r.target) + " violates the d" +
                                     std::to_string(r.page) + " degree convention");
        int lead = -1;
        for (size_t i = 0; i < r.source.size(); ++i) {
            if (r.source[i] == 0) continue;
            if (r.congruence_guard) { lead = int(i); continue; }
            if (lead >= 0) throw std::runtime_error("rule source must be a power of one generator");
            lead = int(i);
            int e = r.source[i];
            if (e & (e - 1)) throw std::runtime_error("rule source exponent must be a power of two");
        }
        if (lead < 0) throw std::runtime_error("rule source must be non-constant");
    }
}

static void fill_source_bits(std::vector<DifferentialRule>& rules) {
    for (auto& r : rules) {
        for (size_t i = 0; i < r.source.size(); ++i) {
            if (r.source[i] == 0) continue;
            r.source_gen = int(i);
            int e = r.source[i];
            r.source_bit = 0;
            while ((1 << r.source_bit) < e) ++r.source_bit;
            break;
        }
    }
}

PageRun::PageRun(RingSpec ring, PageWindow window) : ring_(std::move(ring)), window_(window) {
    for (int s = 0; s <= window_.max_s; ++s) {
        for (int n = window_.stem_lo; n <= window_.stem_hi; ++n) {
            for (int w = window_.w_lo; w <= window_.w_hi; ++w) {
                auto basis = ring_.enumerate(n, s, w);
                if (basis.empty()) continue;
                Cell c;
                c.boundaries = F2Span(int(basis.size()));
                for (size_t i = 0; i < basis.size(); ++i) {
                    F2Vec v(int(basis.size()));
                    v.set(int(i));
                    c.alive.push_back(std::move(v));
                }
                c.basis = std::move(basis);
                cells_.emplace(std::make_tuple(n, s, w), std::move(c));
            }
        }
    }
}

const PageRun::Cell* PageRun::cell(int n, int s, int w) const {
    auto it = cells_.find(std::make_tuple(n, s, w));
    return it == cells_.end() ? nullptr : &it->second;
}

int PageRun::basis_index(const Cell& c, const PageMono& m) const {
    auto it = std::lower_bound(c.basis.begin(), c.basis.end(), m);
    if (it == c.basis.end() || !(*it == m)) return -1;
    return int(it - c.basis.begin());
}

F2Vec PageRun::leibniz(const Cell& src, const F2Vec& v, const std::vector<DifferentialRule>& rules,
                       int page, const Cell& dst) const {
    F2Vec out(int(dst.basis.size()));
    for (int idx : v.support()) {
        const PageMono& m = src.basis[size_t(idx)];
        for (const auto& r : rules) {
            if (r.page != page) continue;
            if (r.congruence_guard) {
                /* fire when the leading exponent has the right residue and
                 * the constrained exponents match exactly */
                bool ok = divides(r.source, m);
                int e = m[size_t(r.source_gen)];
                ok = ok && (e % r.modulus + r.modulus) % r.modulus == r.residue;
                for (const auto& [g, v] : r.exact) ok = ok && m[size_t(g)] == v;
                if (!ok) continue;
                PageMono q = m;
                for (size_t i = 0; i < q.size(); ++i) q[i] -= r.source[i];
                auto prod = ring_.mul(q, r.target);
                if (!prod) continue;
                int j = basis_index(dst, *prod);
                if (j < 0) throw std::logic_error("leibniz: target monomial missing from the page basis");
                out.flip(j);
                continue;
            }
            int e = m[size_t(r.source_gen)];
            if (!(e & (1 << r.source_bit))) continue;
            PageMono q = m;
            q[size_t(r.source_gen)] -= 1 << r.source_bit;
            auto prod = ring_.mul(q, r.target);
            if (!prod) continue;
            int j = basis_index(dst, *prod);
            if (j < 0)
                throw std::logic_error("leibniz: target monomial missing from the page basis");
            out.flip(j);
        }
    }
    return out;
}

void PageRun::run(const std::vector<DifferentialRule>& rules_in, int r_lo, int r_hi, SsKind kind) {
    std::vector<DifferentialRule> rules = rules_in;
    fill_source_bits(rules);
    validate_rules(ring_, rules, kind);
    kind_ = kind;

    for (int r = r_lo; r <= r_hi; ++r) {
        /* collect the d_r matrices on the current pages, then apply */
        struct Update {
            std::tuple<int, int, int> src, dst;
            std::vector<F2Vec> images; /* E1 coordinates, one per alive class */
        };
        std::vector<Update> updates;
        for (auto& [key, c] : cells_) {
            if (c.alive.empty()) continue;
            auto [n, s, w] = key;
            int dn = n - 1;
            int ds = kind == SsKind::Bockstein ? s + 1 : s + r;
            const Cell* dst = cell(dn, ds, w);
            Update u{key, std::make_tuple(dn, ds, w), {}};
            bool nonzero = false;
            for (const auto& rep : c.alive) {
                F2Vec img = dst ? leibniz(c, rep, rules, r, *dst) : F2Vec(0);
                nonzero = nonzero || !img.is_zero();
                u.images.push_back(std::move(img));
            }
            if (nonzero) updates.push_back(std::move(u));
        }
        /* kernels first (in page-r coordinates), then boundary growth, then
         * a reduction pass so every cell ends with independent classes */
        for (auto& u : updates) {
            Cell& src = cells_.at(u.src);
            Cell& dst = cells_.at(u.dst);
            F2Span target_span = dst.boundaries;
            int n_b = dst.boundaries.dim();
            for (const auto& a : dst.alive) target_span.add(a);
            F2Matrix mat(int(dst.alive.size()), int(src.alive.size()));
            for (size_t i = 0; i < u.images.size(); ++i) {
                if (u.images[i].is_zero()) continue;
                F2Vec coords;
                if (!target_span.express(u.images[i], coords))
                    throw std::runtime_error("page run: differential image is not a page class");
                for (int j = 0; j < int(dst.alive.size()); ++j)
                    if (coords.get(n_b + j)) mat.set(j, int(i));
            }
            if (mat.is_zero()) continue;
            auto [n, s, w] = u.src;
            log_.push_back(FiredDifferential{r, n, s, w, mat.rank()});
            auto kernel = mat.kernel_basis();
            std::vector<F2Vec> new_alive;
            for (const auto& k : kernel) {
                F2Vec rep(int(src.basis.size()));
                for (int i : k.support()) rep ^= src.alive[size_t(i)];
                new_alive.push_back(std::move(rep));
            }
            src.alive = std::move(new_alive);
        }
        for (auto& u : updates) {
            Cell& dst = cells_.at(u.dst);
            for (const auto& img : u.images)
                if (!img.is_zero()) dst.boundaries.add(img);
        }
        for (auto& [key, c] : cells_) {
            if (c.alive.empty()) continue;
            F2Span span = c.boundaries;
            std::vector<F2Vec> reduced;
            for (const auto& a : c.alive)
                if (span.add(a)) reduced.push_back(a);
            c.alive = std::move(reduced);
        }
        pages_run_ = r + 1;
    }
}

int PageRun::dim(int n, int s, int w) const {
    const Cell* c = cell(n, s, w);
    return c ? int(c->alive.size()) : 0;
}

int PageRun::total_dim() const {
    int total = 0;
    for (const auto& [k, c] : cells_) total += int(c.alive.size());
    return total;
}

std::vector<std::string> PageRun::class_names(int n, int s, int w) const {
    std::vector<std::string> out;
    const Cell* c = cell(n, s, w);
    if (!c) return out;
    for (const auto& rep : c->alive) {
        int lead = rep.leading();
        out.push_back(lead >= 0 ? ring_.mono_str(c->basis[size_t(lead)]) : "?");
    }
    return out;
}

std::vector<PageMono> PageRun::alive_monomials(int n, int s, int w) const {
    std::vector<PageMono> out;
    const Cell* c = cell(n, s, w);
    if (!c) return out;
    for (const auto& rep : c->alive) {
        if (rep.support().size() != 1)
            throw std::runtime_error("alive class at (" + std::to_string(n) + "," + std::to_string(s) +
                                     "," + std::to_string(w) + ") has no monomial representative");
        out.push_back(c->basis[size_t(rep.leading())]);
    }
    return out;
}

bool PageRun::mono_alive(const PageMono& m) const {
    PageGenDeg d = ring_.deg(m);
    const Cell* c = cell(d.n, d.s, d.w);
    if (!c) {
        if (d.s >= 0 && d.s <= window_.max_s && d.n >= window_.stem_lo && d.n <= window_.stem_hi &&
            d.w >= window_.w_lo && d.w <= window_.w_hi)
            return false; /* in-window empty cell: genuinely zero */
        throw std::runtime_error("mono_alive: " + ring_.mono_str(m) + " at (" + std::to_string(d.n) +
                                 "," + std::to_string(d.s) + "," + std::to_string(d.w) +
                                 ") is outside the page window");
    }
    int idx = basis_index(*c, m);
    if (idx < 0) return false;
    F2Vec v(int(c->basis.size()));
    v.set(idx);
    /* alive iff not a boundary and representable */
    F2Span span = c->boundaries;
    for (const auto& a : c->alive) span.add(a);
    if (!span.contains(v)) return false;
    return !c->boundaries.contains(v);
}

std::vector<DifferentialRule> rules_from_records(const std::vector<Record>& recs, const RingSpec& ring,
                                                 int q, int max_bit) {
    auto nu = [](long long x) {
        int v = 0;
        while (x % 2 == 0 && x != 0) { x /= 2; ++v; }
        return v;
    };
    std::vector<DifferentialRule> out;
    for (const auto& rec : recs) {
        if (rec.type != "differential") continue;
        std::string note = rec.get_or("note", "");
        if (rec.has("family") && rec.get("family") == "adams-tau-power") {
            /* d_{page(s)}(tau^{2^s}) = second tau^{2^s - 1} h0^{page(s)} */
            std::string cong = rec.get("congruence");
            for (int s = 0; s <= max_bit; ++s) {
                int page;
                if (cong == "1mod4") {
                    page = nu(q - 1) + s;
                } else {
                    if (s < 1) continue;
                    page = nu(1LL * (q - 1) * (q + 1)) + s - 1;
                }
                DifferentialRule r;
                r.page = page;
                r.source = ring.parse_mono("tau^" + std::to_string(1 << s));
                std::string sec = rec.get("second");
                std::ostringstream tgt;
                tgt << sec;
                if ((1 << s) - 1 > 0) tgt << " tau^" << ((1 << s) - 1);
                tgt << " h0^" << page;
                r.target = ring.parse_mono(tgt.str());
                r.note = note;
                out.push_back(std::move(r));
            }
        } else {
            DifferentialRule r;
            r.page = rec.get_int("page");
            r.source = ring.parse_mono(rec.get("source"));
            r.target = ring.parse_mono(rec.get("target"));
            r.note = note;
            if (rec.get_or("guard", "") == "congruence") {
                r.congruence_guard = true;
                r.modulus = rec.get_int("modulus");
                r.residue = rec.get_int("residue");
                for (const auto& tok : split_ws(rec.get_or("exact", ""))) {
                    auto colon = tok.find(':');
                    r.exact.emplace_back(ring.gen_index(tok.substr(0, colon)),
                                         std::stoi(tok.substr(colon + 1)));
                }
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

RingSpec ext_ring_over_closed(AlgebraName name, bool with_tau) {
    /* classical mode carries weight zero */
    int w1 = with_tau ? 1 : 0;
    RingSpec r;
    if (with_tau) r.add_gen("tau", {0, 0, -1});
    r.add_gen("h0", {0, 1, 0});
    switch (name) {
        case AlgebraName::A0: break;
        case AlgebraName::E1:
            r.add_gen("v1", {2, 1, w1});
            break;
        case AlgebraName::A1: {
            r.add_gen("h1", {1, 1, w1});
            r.add_gen("a", {4, 3, 2 * w1});
            r.add_gen("b", {8, 4, 4 * w1});
            r.add_rule(r.parse_mono("a^2"), r.parse_mono("h0^2 b"));
            r.add_zero_rule(r.parse_mono("h0 h1"));
            r.add_zero_rule(r.parse_mono("h1 a"));
            if (with_tau) r.add_zero_rule(r.parse_mono("tau h1^3"));
            else r.add_zero_rule(r.parse_mono("h1^3"));
            break;
        }
    }
    return r;
}

RingSpec adjoin_second(const RingSpec& base, FieldTag tag) {
    RingSpec r;
    /* second generator first so monomial parsing of the base is unaffected */
    r = base;
    switch (tag) {
        case FieldTag::Reals: r.add_gen("rho", {-1, 0, -1}); break;
        case FieldTag::FqOne: r.add_gen("u", {-1, 0, -1}, 1); break;
        case FieldTag::FqThree: r.add_gen("rho", {-1, 0, -1}, 1); break;
        default: throw std::runtime_error("adjoin_second: base field has no second generator");
    }
    return r;
}

void compare_with_chart(const PageRun& run, const ExtChart& chart, int stem_lo, int stem_hi, int w_lo,
                        int w_hi, int max_s) {
    for (int n = stem_lo; n <= stem_hi; ++n)
        for (int s = 0; s <= max_s; ++s)
            for (int w = w_lo; w <= w_hi; ++w)
                if (run.dim(n, s, w) != chart.dim({s, n + s, w}))
                    throw std::runtime_error(
                        "page/chart dimension mismatch at (stem " + std::to_string(n) + ", s " +
                        std::to_string(s) + ", w " + std::to_string(w) + "): page " +
                        std::to_string(run.dim(n, s, w)) + " vs chart " +
                        std::to_string(chart.dim({s, n + s, w})));
}

FiltrationResult filtration_ss_run(const std::vector<const ExtChart*>& stage_charts,
                                   const std::vector<LesTriple*>& adjacent) {
    FiltrationResult out;
    /* positional collapse test: a differential d_r sends stage i to stage
     * i+r with (s, t, w) -> (s+1, t, w) */
    bool any_overlap = false;
    for (size_t i = 0; i < stage_charts.size(); ++i) {
        for (size_t j = i + 1; j < stage_charts.size(); ++j) {
            for (const auto& [d, cellv] : stage_charts[i]->cells()) {
                if (cellv.classes.empty()) continue;
                Tridegree t{d.s + 1, d.t, d.w};
                if (stage_charts[j]->dim(t) > 0) any_overlap = true;
            }
        }
    }
    if (!any_overlap) {
        for (const auto* c : stage_charts)
            for (const auto& [d, cellv] : c->cells())
                if (!cellv.classes.empty()) out.dims[d] += int(cellv.classes.size());
        return out;
    }

    /* d1 from the connecting maps of adjacent subquotients */
    out.collapsed_at_e1 = false;
    if (adjacent.size() + 1 != stage_charts.size())
        throw std::runtime_error("filtration_ss_run: need a connecting map per adjacent pair");
    /* compute ranks of d1: Ext(F_i/F_{i-1}) -> Ext^{+1}(F_{i+1}/F_i) */
    std::map<std::pair<size_t, Tridegree>, F2Matrix> d1;
    for (size_t i = 0; i + 1 < stage_charts.size(); ++i) {
        for (const auto& [d, cellv] : stage_charts[i]->cells()) {
            if (cellv.classes.empty()) continue;
            Tridegree td{d.s + 1, d.t, d.w};
            if (td.s > stage_charts[i + 1]->window().max_s) continue;
            F2Matrix mat(stage_charts[i + 1]->dim(td), int(cellv.classes.size()));
            for (int c = 0; c < int(cellv.classes.size()); ++c) {
                F2Vec dv = adjacent[i]->delta(d, cellv.classes[size_t(c)].cocycle);
                auto coords = stage_charts[i + 1]->coordinates(td, dv);
                if (!coords) throw std::runtime_error("filtration d1 image is not a class");
                for (int r : coords->support()) mat.set(r, c);
            }
            if (!mat.is_zero()) {
                out.d1_rank += mat.rank();
                d1.emplace(std::make_pair(i, d), std::move(mat));
            }
        }
    }
    /* E2 dims: kernel/cokernel bookkeeping per cell */
    for (size_t i = 0; i < stage_charts.size(); ++i) {
        for (const auto& [d, cellv] : stage_charts[i]->cells()) {
            if (cellv.classes.empty()) continue;
            int dim = int(cellv.classes.size());
            auto out_it = d1.find(std::make_pair(i, d));
            if (out_it != d1.end()) dim -= out_it->second.rank();
            if (i > 0) {
                /* incoming from (s-1, t, w) of the previous stage */
                auto in_it = d1.find(std::make_pair(i - 1, Tridegree{d.s - 1, d.t, d.w}));
                if (in_it != d1.end()) dim -= in_it->second.rank();
            }
            if (dim > 0) out.dims[d] += dim;
        }
    }
    return out;
}

} // namespace motex
