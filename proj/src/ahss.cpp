#include "motex/ahss.hpp"

#include "motex/textio.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace motex {

std::string theory_name(Theory t) {
    switch (t) {
        case Theory::HZ: return "hz";
        case Theory::KU: return "ku";
        case Theory::KO: return "ko";
        case Theory::KGL: return "kgl";
        case Theory::KQ: return "kq";
    }
    return "?";
}

Theory parse_theory(const std::string& s) {
    if (s == "hz") return Theory::HZ;
    if (s == "ku") return Theory::KU;
    if (s == "ko") return Theory::KO;
    if (s == "kgl") return Theory::KGL;
    if (s == "kq") return Theory::KQ;
    throw std::runtime_error("unknown theory '" + s + "'");
}

AlgebraName theory_algebra(Theory t) {
    switch (t) {
        case Theory::HZ: return AlgebraName::A0;
        case Theory::KU:
        case Theory::KGL: return AlgebraName::E1;
        default: return AlgebraName::A1;
    }
}

CellComplex CellComplex::build(int n, bool classical) {
    if (n < 1) throw std::runtime_error("CellComplex: skeleton must be at least 1");
    return CellComplex{n, classical};
}

CoefficientTable::CoefficientTable(Theory theory, FieldTag tag, int q, RingSpec ring,
                                   std::shared_ptr<PageRun> einf, std::vector<HiddenRule> hidden)
    : theory_(theory), tag_(tag), q_(q), ring_(std::move(ring)), einf_(std::move(einf)),
      hidden_(std::move(hidden)) {}

bool CoefficientTable::alive(const PageMono& m) const {
    if (!ring_.irreducible(m)) return false;
    if (!einf_) return true;
    return einf_->mono_alive(m);
}

std::vector<PageMono> CoefficientTable::group(int stem, int w, int h0_cap) const {
    std::vector<PageMono> out;
    for (int s = 0; s <= h0_cap; ++s) {
        for (auto& m : ring_.enumerate(stem, s, w))
            if (alive(m)) out.push_back(std::move(m));
    }
    return out;
}

static bool mono_divides(const PageMono& a, const PageMono& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

std::optional<CoefficientTable::ActResult> CoefficientTable::act(const std::string& op,
                                                                 const PageMono& m) const {
    PageMono opm = ring_.parse_mono(op == "2" ? "h0" : op == "eta" ? "h1" : op);
    auto prod = ring_.mul(m, opm);
    if (prod && alive(*prod)) return ActResult{*prod, false};
    /* hidden fallback */
    for (const auto& h : hidden_) {
        if (h.op != op) continue;
        if (h.kind == "extra-factor") {
            if (!mono_divides(h.require, m)) continue;
            bool forbidden = false;
            for (size_t i = 0; i < h.forbid.size(); ++i)
                if (h.forbid[i] > 0 && m[i] >= h.forbid[i]) forbidden = true;
            if (forbidden) continue;
            auto r = ring_.mul(m, h.factor);
            if (r && alive(*r)) return ActResult{*r, true};
        } else if (h.kind == "tower-swap") {
            int h0 = ring_.gen_index("h0");
            int j = m[size_t(h0)];
            if (j < 1) continue;
            PageMono x = m;
            x[size_t(h0)] = 0;
            if (!mono_divides(h.require, x)) continue;
            auto r = ring_.mul(x, opm);
            for (int k = 0; r && k < j; ++k) r = ring_.mul(*r, h.per_h0);
            if (r && alive(*r)) return ActResult{*r, true};
        } else if (h.kind == "eta-alpha") {
            /* eta . tau^{i+1} eta^2 b^j = 2^c tau^i alpha b^j; the value
             * carries the second coefficient generator, so the source must
             * be free of it.  c = nu(q-1) + nu(i+1) for q = 1 mod 4 and for
             * odd i when q = 3 mod 4; c = 1 for q = 3 mod 4 and even i. */
            int tau = ring_.gen_index("tau");
            int h1 = ring_.gen_index("h1");
            int sec = ring_.gen_index(h.q % 4 == 1 ? "u" : "rho");
            int h0 = ring_.gen_index("h0");
            if (m[size_t(h1)] != 2 || m[size_t(tau)] < 1) continue;
            if (m[size_t(sec)] != 0 || m[size_t(h0)] != 0) continue;
            if (m[size_t(ring_.gen_index("a"))] != 0) continue;
            int i = m[size_t(tau)] - 1;
            auto nu = [](long long x) {
                int v = 0;
                while (x % 2 == 0 && x != 0) { x /= 2; ++v; }
                return v;
            };
            int c;
            if (h.q % 4 == 1) c = nu(h.q - 1) + nu(i + 1);
            else c = (i % 2 == 1) ? nu(h.q - 1) + nu(i + 1) : 1;
            PageMono x = m;
            x[size_t(h1)] = 0;
            x[size_t(tau)] = i;
            x[size_t(sec)] = 1;
            std::ostringstream extra;
            extra << "h0^" << c << " a";
            auto r = ring_.mul(x, ring_.parse_mono(extra.str()));
            if (r && alive(*r)) return ActResult{*r, true};
        }
    }
    return std::nullopt;
}

std::vector<std::pair<PageMono, int>> CoefficientTable::towers(int stem, int w, int h0_cap) const {
    std::vector<std::pair<PageMono, int>> out;
    int h0 = ring_.gen_index("h0");
    for (auto& m : group(stem, w, h0_cap)) {
        if (m[size_t(h0)] > 0) continue;
        int len = 0;
        PageMono cur = m;
        while (alive(cur) && len <= h0_cap) {
            ++len;
            auto nxt = ring_.mul(cur, ring_.parse_mono("h0"));
            if (!nxt) break;
            cur = *nxt;
        }
        out.emplace_back(m, len);
    }
    return out;
}

/* --- AHSS engine --- */

std::vector<AhssRule> ahss_rules_from_records(const std::vector<Record>& recs,
                                              const CoefficientTable& table) {
    const RingSpec& ring = table.ring();
    auto nu = [](long long x) {
        int v = 0;
        while (x % 2 == 0 && x != 0) { x /= 2; ++v; }
        return v;
    };
    std::vector<AhssRule> out;
    for (const auto& rec : recs) {
        if (rec.type != "ahss-differential") continue;
        std::string filt = rec.get("filtration"); /* e.g. 0mod4, 2mod2 */
        auto mpos = filt.find("mod");
        AhssRule base;
        base.residue = std::stoi(filt.substr(0, mpos));
        base.mod = std::stoi(filt.substr(mpos + 3));
        base.min_f = std::stoi(rec.get_or("min-filtration", "1"));
        base.page = rec.get_int("page");
        base.note = rec.get_or("note", "");
        if (rec.has("family") && rec.get("family") == "fq-alpha") {
            /* d3 out of filtration 1 mod 4, from the twisted alpha bracket
             * together with the hidden eta extensions: the value lands on
             * the top of the target tower (an order-two element) */
            int q = rec.get_int("q");
            std::string sec = q % 4 == 1 ? "u" : "rho";
            int imax = rec.get_int("max-i");
            for (int i = imax; i >= 0; --i) {
                AhssRule r = base;
                r.action_kind = false;
                r.hit_top = true;
                r.pattern = ring.parse_mono(sec + " tau^" + std::to_string(i + 2) + " h1^2");
                std::ostringstream tgt;
                if (i > 0) tgt << "tau^" << i << ' ';
                tgt << "a " << sec;
                r.target = ring.parse_mono(tgt.str());
                out.push_back(std::move(r));
            }
            continue;
        }
        if (rec.has("family") && rec.get("family") == "fq-exotic") {
            /* source u tau^{2^s - 1} h0^{nu(q-1)+s-1}, target tau^{2^s} h1
             * (q = 1 mod 4); rho variant with nu(q^2-1)+s-2 for q = 3 mod 4 */
            int q = rec.get_int("q");
            std::string sec = rec.get("second");
            int smax = rec.get_int("max-power");
            int smin = q % 4 == 1 ? 0 : 1;
            for (int s = smin; s <= smax; ++s) {
                int c = q % 4 == 1 ? nu(q - 1) + s - 1 : nu(1LL * (q - 1) * (q + 1)) + s - 2;
                if (c < 0) continue;
                AhssRule r = base;
                r.action_kind = false;
                std::ostringstream src;
                src << sec;
                if ((1 << s) - 1 > 0) src << " tau^" << ((1 << s) - 1);
                if (c > 0) src << " h0^" << c;
                r.pattern = ring.parse_mono(src.str());
                r.target = ring.parse_mono("tau^" + std::to_string(1 << s) + " h1");
                out.push_back(std::move(r));
            }
            continue;
        }
        if (rec.has("op")) {
            base.action_kind = true;
            base.op = rec.get("op");
        } else {
            base.action_kind = false;
            base.pattern = ring.parse_mono(rec.get("source"));
            base.target = ring.parse_mono(rec.get("target"));
        }
        out.push_back(std::move(base));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const AhssRule& a, const AhssRule& b) { return a.page < b.page; });
    return out;
}

std::vector<AhssRule> load_ahss_rules(Theory theory, FieldTag tag, const CoefficientTable& table) {
    std::string path = data_path("rules/ahss_" + theory_name(theory) + "_" + field_name(tag) + ".kv");
    return ahss_rules_from_records(read_records(path), table);
}

namespace {

struct Position {
    std::vector<PageMono> slots;
    std::vector<F2Vec> alive;
    F2Span boundaries;
};

} // namespace

AhssResult run_ahss(const CellComplex& cells, const CoefficientTable& table,
                    const std::vector<AhssRule>& rules, const AhssOptions& opt) {
    AhssResult out;
    const RingSpec& ring = table.ring();

    /* positions keyed by (f, total stem, total weight); one extra stem of
     * sources so differentials into the window edge are present */
    std::map<std::tuple<int, int, int>, Position> pos;
    for (int f = 1; f <= cells.skeleton; ++f) {
        for (int n = opt.n_lo; n <= opt.n_hi + 1; ++n) {
            int cw = cells.weight(f);
            int w_hi_tot = cells.classical ? 0 : n + 1;
            for (int w = cells.classical ? 0 : opt.w_lo; w <= w_hi_tot; ++w) {
                auto g = table.group(n - f, w - cw, opt.h0_cap);
                if (g.empty()) continue;
                Position p;
                p.boundaries = F2Span(int(g.size()));
                for (size_t i = 0; i < g.size(); ++i) {
                    F2Vec v(int(g.size()));
                    v.set(int(i));
                    p.alive.push_back(std::move(v));
                }
                p.slots = std::move(g);
                pos.emplace(std::make_tuple(f, n, w), std::move(p));
            }
        }
    }

    int max_page = 1;
    for (const auto& r : rules) max_page = std::max(max_page, r.page);

    auto slot_index = [&](const Position& p, const PageMono& m) {
        for (size_t i = 0; i < p.slots.size(); ++i)
            if (p.slots[i] == m) return int(i);
        return -1;
    };

    for (int r = 1; r <= max_page; ++r) {
        struct Update {
            std::tuple<int, int, int> src, dst;
            std::vector<F2Vec> images;
            std::vector<bool> emigrant; /* image leaves the window: kill source */
        };
        std::vector<Update> updates;
        for (auto& [key, p] : pos) {
            if (p.alive.empty()) continue;
            auto [f, n, w] = key;
            int tf = f - r;
            if (tf < 1) continue;
            auto dst_it = pos.find(std::make_tuple(tf, n - 1, w));
            Position* dst = dst_it == pos.end() ? nullptr : &dst_it->second;
            int dst_dim = dst ? int(dst->slots.size()) : 0;

            /* slot-level differential */
            std::vector<std::optional<int>> edge(p.slots.size());
            std::vector<bool> leaves(p.slots.size(), false);
            bool any = false;
            for (size_t i = 0; i < p.slots.size(); ++i) {
                for (const auto& rule : rules) {
                    if (rule.page != r) continue;
                    if (f < rule.min_f || ((f % rule.mod) + rule.mod) % rule.mod != rule.residue)
                        continue;
                    std::optional<CoefficientTable::ActResult> res;
                    if (rule.action_kind) {
                        res = table.act(rule.op, p.slots[i]);
                    } else {
                        if (!mono_divides(rule.pattern, p.slots[i])) continue;
                        PageMono y = p.slots[i];
                        for (size_t k = 0; k < y.size(); ++k) y[k] -= rule.pattern[k];
                        auto prod = ring.mul(y, rule.target);
                        if (prod && rule.hit_top) {
                            /* land on the top of the target h0 tower */
                            if (!table.alive(*prod)) prod.reset();
                            for (;;) {
                                if (!prod) break;
                                auto up2 = ring.mul(*prod, ring.parse_mono("h0"));
                                if (!up2 || !table.alive(*up2)) break;
                                prod = up2;
                            }
                        }
                        if (prod && table.alive(*prod)) res = CoefficientTable::ActResult{*prod, false};
                    }
                    if (!res) continue;
                    int j = dst ? slot_index(*dst, res->target) : -1;
                    if (j < 0) {
                        /* target exists but is outside the slot window */
                        leaves[i] = true;
                        any = true;
                    } else {
                        if (edge[i]) throw std::runtime_error("run_ahss: two rules fire on one slot");
                        edge[i] = j;
                        any = true;
                    }
                    break;
                }
            }
            if (!any) continue;
            Update u{key, std::make_tuple(tf, n - 1, w), {}, {}};
            for (const auto& rep : p.alive) {
                F2Vec img(dst_dim);
                bool em = false;
                for (int i : rep.support()) {
                    if (leaves[size_t(i)]) em = true;
                    else if (edge[size_t(i)]) img.flip(*edge[size_t(i)]);
                }
                u.images.push_back(std::move(img));
                u.emigrant.push_back(em);
            }
            updates.push_back(std::move(u));
        }

        int fired = 0;
        for (auto& u : updates) {
            Position& src = pos.at(u.src);
            Position* dst = nullptr;
            auto dst_it = pos.find(u.dst);
            if (dst_it != pos.end()) dst = &dst_it->second;

            F2Span target_span = dst ? dst->boundaries : F2Span(0);
            int n_b = target_span.dim();
            if (dst)
                for (const auto& a : dst->alive) target_span.add(a);
            int rows = dst ? int(dst->alive.size()) : 0;
            F2Matrix mat(rows + 1, int(src.alive.size())); /* extra row for emigrants */
            for (size_t i = 0; i < u.images.size(); ++i) {
                if (u.emigrant[i]) mat.set(rows, int(i));
                if (u.images[i].is_zero()) continue;
                F2Vec coords;
                if (!target_span.express(u.images[i], coords)) {
                    auto [sf, sn, sw] = u.src;
                    std::ostringstream os;
                    os << "run_ahss: d" << r << " image from (f=" << sf << ", n=" << sn
                       << ", w=" << sw << ") class " << i << " is not a page class; image slots:";
                    auto dit = pos.find(u.dst);
                    for (int b : u.images[i].support())
                        os << ' ' << table.ring().mono_str(dit->second.slots[size_t(b)]);
                    throw std::runtime_error(os.str());
                }
                for (int j = 0; j < rows; ++j)
                    if (coords.get(n_b + j)) mat.set(j, int(i));
            }
            if (mat.is_zero()) continue;
            auto [f, n, w] = u.src;
            out.log.push_back(AhssResult::Fired{r, f, n, w, mat.rank()});
            fired += mat.rank();
            auto kernel = mat.kernel_basis();
            std::vector<F2Vec> new_alive;
            for (const auto& k : kernel) {
                F2Vec rep(int(src.slots.size()));
                for (int i : k.support()) rep ^= src.alive[size_t(i)];
                new_alive.push_back(std::move(rep));
            }
            src.alive = std::move(new_alive);
        }
        for (auto& u : updates) {
            auto dst_it = pos.find(u.dst);
            if (dst_it == pos.end()) continue;
            for (const auto& img : u.images)
                if (!img.is_zero()) dst_it->second.boundaries.add(img);
        }
        for (auto& [key, p] : pos) {
            if (p.alive.empty()) continue;
            F2Span span = p.boundaries;
            std::vector<F2Vec> reduced;
            for (const auto& a : p.alive)
                if (span.add(a)) reduced.push_back(a);
            p.alive = std::move(reduced);
        }
        if (fired) out.collapsed_at = r + 1;
    }
    out.collapsed_at = std::max(out.collapsed_at, max_page + 1);

    /* no rules beyond max_page: record the structural justification */
    out.notes.push_back("no differentials declared beyond d" + std::to_string(max_page) +
                        "; positions above are reported as E" + std::to_string(max_page + 1));

    for (auto& [key, p] : pos) {
        auto [f, n, w] = key;
        for (const auto& rep : p.alive) {
            int lead = rep.leading();
            if (lead < 0) continue;
            out.einf[{n, w}].emplace_back(f, p.slots[size_t(lead)]);
            out.gr_rank[{n, w}] += 1;
        }
    }
    return out;
}

int AhssResult::summands(int stem, const RingSpec& ring) const {
    std::set<std::pair<int, PageMono>> reps;
    int tau = -1;
    for (int g = 0; g < ring.gen_count(); ++g)
        if (ring.gen(g).name == "tau") tau = g;
    for (const auto& [key, slots] : einf) {
        if (key.first != stem) continue;
        for (const auto& [f, m] : slots) {
            PageMono base = m;
            if (tau >= 0) base[size_t(tau)] = 0;
            reps.emplace(f, std::move(base));
        }
    }
    return int(reps.size());
}

CrosscheckReport crosscheck(const AhssResult& ahss, const CoefficientTable& table,
                            const ExtChart& adams, int n_lo, int n_hi, int w_lo, int w_hi,
                            int h0_cap, int skeleton) {
    CrosscheckReport rep;
    int h0 = table.ring().gen_index("h0");
    for (int n = n_lo; n <= n_hi; ++n) {
        for (int w = w_lo; w <= w_hi; ++w) {
            if (2 * (n - w) + 1 > skeleton) {
                ++rep.cells_skipped;
                continue;
            }
            int lhs = ahss.rank(n, w);
            bool ceiling = false;
            auto it = ahss.einf.find({n, w});
            if (it != ahss.einf.end())
                for (const auto& [f, m] : it->second)
                    if (m[size_t(h0)] >= h0_cap - 1) ceiling = true;
            int rhs = 0;
            int max_s = adams.window().max_s;
            for (int s = 0; s <= max_s; ++s) {
                int d = adams.dim({s, n + s, w});
                rhs += d;
                if (d > 0 && s >= max_s - 1) ceiling = true;
            }
            if (ceiling) {
                ++rep.cells_skipped;
                continue;
            }
            ++rep.cells_checked;
            if (lhs != rhs) {
                rep.pass = false;
                std::ostringstream os;
                os << "(stem " << n << ", w " << w << "): AHSS gr " << lhs << " vs Adams " << rhs;
                rep.mismatches.push_back(os.str());
            }
        }
    }
    return rep;
}


/* --- coefficient table construction --- */

static std::vector<CoefficientTable::HiddenRule> load_hidden(Theory theory, FieldTag tag,
                                                             const RingSpec& ring) {
    std::vector<CoefficientTable::HiddenRule> out;
    std::string path =
        data_path("annotations/" + theory_name(theory) + "_" + field_name(tag) + ".kv");
    std::vector<Record> recs;
    try {
        recs = read_records(path);
    } catch (const std::exception&) {
        return out; /* no annotation file for this pair */
    }
    PageMono unit(size_t(ring.gen_count()), 0);
    for (const auto& rec : recs) {
        if (rec.type != "hidden-extension") continue;
        CoefficientTable::HiddenRule h;
        h.op = rec.get("op");
        h.kind = rec.get("kind");
        h.note = rec.get_or("note", "");
        auto mono_or_unit = [&](const std::string& key) {
            std::string v = rec.get_or(key, "1");
            return v == "1" ? unit : ring.parse_mono(v);
        };
        h.require = mono_or_unit("require");
        h.forbid = mono_or_unit("forbid");
        h.factor = mono_or_unit("factor");
        h.per_h0 = mono_or_unit("per_h0");
        h.q = std::stoi(rec.get_or("q", "0"));
        out.push_back(std::move(h));
    }
    return out;
}

CoefficientTable coefficient_table_for(Theory theory, FieldTag tag, int q, const AhssOptions& opt) {
    int stem_lo = opt.n_lo - opt.skeleton - 1;
    int stem_hi = opt.n_hi + 1;
    int s_hi = opt.h0_cap + 6;
    int w_lo = (tag == FieldTag::Classical ? 0 : opt.w_lo) - (opt.skeleton + 1) / 2 - 1;
    return coefficient_table(theory, tag, q, stem_lo, stem_hi, s_hi, w_lo);
}

CoefficientTable coefficient_table(Theory theory, FieldTag tag, int q, int stem_lo, int stem_hi,
                                   int s_hi, int w_lo) {
    bool classical = tag == FieldTag::Classical;
    AlgebraName alg = theory_algebra(theory);
    RingSpec ring = ext_ring_over_closed(alg, !classical);
    BaseRing base = BaseRing::make(tag, q);
    if (base.has_sec()) ring = adjoin_second(ring, tag);

    std::shared_ptr<PageRun> run;
    std::string alg_low = algebra_name_str(alg);
    for (auto& c : alg_low) c = char(std::tolower(c));
    PageWindow W{s_hi, stem_lo, stem_hi, w_lo - 2, stem_hi + 2};
    if (tag == FieldTag::Reals) {
        run = std::make_shared<PageRun>(ring, W);
        auto rules = rules_from_records(
            read_records(data_path("rules/bockstein_reals_" + alg_low + ".kv")), ring, 0, 0);
        run->run(rules, 1, 4, SsKind::Bockstein);
    } else if (tag == FieldTag::FqOne || tag == FieldTag::FqThree) {
        run = std::make_shared<PageRun>(ring, W);
        int max_bit = 1;
        while ((1 << (max_bit + 1)) <= stem_hi + 4 - (w_lo - 2)) ++max_bit;
        if (tag == FieldTag::FqThree) {
            auto bss = rules_from_records(
                read_records(data_path("rules/bockstein_fq3_" + alg_low + ".kv")), ring, 0, 0);
            run->run(bss, 1, 1, SsKind::Bockstein);
            auto adams = rules_from_records(read_records(data_path("rules/adams_fq3.kv")), ring, q,
                                            max_bit);
            int top = 2;
            for (const auto& r : adams) top = std::max(top, r.page);
            run->run(adams, 2, top, SsKind::Adams);
        } else {
            auto adams = rules_from_records(read_records(data_path("rules/adams_fq1.kv")), ring, q,
                                            max_bit);
            int top = 2;
            for (const auto& r : adams) top = std::max(top, r.page);
            run->run(adams, 2, top, SsKind::Adams);
        }
    }
    return CoefficientTable(theory, tag, q, ring, std::move(run),
                            load_hidden(theory, tag, ring));
}

} // namespace motex
