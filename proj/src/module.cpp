#include "motex/module.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace motex {

PresentedModule::PresentedModule(std::shared_ptr<const AlgebraTable> alg, std::string name,
                                 std::vector<ModuleGen> gens, int truncation)
    : alg_(std::move(alg)), name_(std::move(name)), gens_(std::move(gens)), trunc_(truncation) {
    entries_.assign(size_t(alg_->letters()), std::vector<std::vector<int>>(gens_.size()));
}

int PresentedModule::gen_index(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return int(i);
    throw std::runtime_error(name_ + ": no generator named '" + name + "'");
}

void PresentedModule::add_action(int letter, int gen, int target_gen) {
    if (sealed_) throw std::logic_error("module is sealed");
    entries_[size_t(letter)][size_t(gen)].push_back(target_gen);
}

void PresentedModule::add_action(int letter, const std::string& gen, const std::string& target) {
    add_action(letter, gen_index(gen), gen_index(target));
}

void PresentedModule::seal() {
    const BaseRing& R = base();
    for (int l = 0; l < alg_->letters(); ++l) {
        for (int g = 0; g < gen_count(); ++g) {
            auto& targets = entries_[size_t(l)][size_t(g)];
            std::sort(targets.begin(), targets.end());
            /* mod 2 */
            std::vector<int> reduced;
            for (size_t i = 0; i < targets.size();) {
                size_t j = i;
                while (j < targets.size() && targets[j] == targets[i]) ++j;
                if ((j - i) & 1) reduced.push_back(targets[i]);
                i = j;
            }
            targets = std::move(reduced);
            Bidegree value_deg = gens_[size_t(g)].deg + alg_->letter_deg(l);
            for (int t : targets) {
                Bidegree gap = value_deg - gens_[size_t(t)].deg;
                if (!R.monomial_at(gap))
                    throw std::runtime_error(name_ + ": action entry " + alg_->letter_label(l) + "(" +
                                             gens_[size_t(g)].name + ") -> " + gens_[size_t(t)].name +
                                             " has an unrealizable coefficient");
            }
        }
    }
    sealed_ = true;
}

int PresentedModule::Component::index_of(int gen) const {
    for (size_t i = 0; i < slots.size(); ++i)
        if (slots[i].first == gen) return int(i);
    return -1;
}

const PresentedModule::Component& PresentedModule::component(Bidegree d) const {
    auto it = comp_cache_.find(d);
    if (it != comp_cache_.end()) return it->second;
    Component c;
    if (d.t <= trunc_) {
        for (int g = 0; g < gen_count(); ++g) {
            auto m = base().monomial_at(d - gens_[size_t(g)].deg);
            if (m) c.slots.emplace_back(g, *m);
        }
    }
    return comp_cache_.emplace(d, std::move(c)).first->second;
}

const F2Matrix& PresentedModule::letter_action(Bidegree d, int letter) const {
    auto key = std::make_pair(d, letter);
    auto it = action_cache_.find(key);
    if (it != action_cache_.end()) return it->second;

    const Component& src = component(d);
    Bidegree dt = d + alg_->letter_deg(letter);
    const Component& dst = component(dt);
    F2Matrix mat(int(dst.slots.size()), int(src.slots.size()));

    const BaseRing& R = base();
    for (size_t col = 0; col < src.slots.size(); ++col) {
        auto [g, m] = src.slots[col];
        for (const auto& term : alg_->letter_past_mono(std::uint8_t(letter), m)) {
            if (!term.letter) {
                /* coefficient term: lands on (g, term.c) */
                int row = dst.index_of(g);
                if (row >= 0 && dst.slots[size_t(row)].second == term.c) mat.row(row).flip(int(col));
            } else {
                /* term.c * letter'(g) */
                Bidegree value_deg = gens_[size_t(g)].deg + alg_->letter_deg(int(*term.letter));
                for (int tgt : entries_[size_t(*term.letter)][size_t(g)]) {
                    auto gap = R.monomial_at(value_deg - gens_[size_t(tgt)].deg);
                    auto c = R.mul(term.c, *gap);
                    if (!c) continue;
                    int row = dst.index_of(tgt);
                    if (row >= 0 && dst.slots[size_t(row)].second == *c) mat.row(row).flip(int(col));
                }
            }
        }
    }
    return action_cache_.emplace(key, std::move(mat)).first->second;
}

F2Matrix PresentedModule::word_action(Bidegree d, const Word& w) const {
    /* rightmost letter first */
    Bidegree cur = d;
    F2Matrix acc = F2Matrix::identity(dim(d));
    for (int i = int(w.size()) - 1; i >= 0; --i) {
        acc = letter_action(cur, int(w[size_t(i)])) * acc;
        cur += alg_->letter_deg(int(w[size_t(i)]));
    }
    return acc;
}

F2Matrix PresentedModule::basis_action(Bidegree d, int basis_elt) const {
    return word_action(d, alg_->basis(basis_elt).word);
}

F2Matrix PresentedModule::coef_action(Bidegree d, CoefMono c) const {
    const Component& src = component(d);
    const Component& dst = component(d + base().mono_deg(c));
    F2Matrix mat(int(dst.slots.size()), int(src.slots.size()));
    for (size_t col = 0; col < src.slots.size(); ++col) {
        auto [g, m] = src.slots[col];
        auto p = base().mul(c, m);
        if (!p) continue;
        int row = dst.index_of(g);
        if (row >= 0 && dst.slots[size_t(row)].second == *p) mat.row(row).flip(int(col));
    }
    return mat;
}

std::string PresentedModule::slot_name(Bidegree d, int slot) const {
    auto [g, m] = component(d).slots[size_t(slot)];
    std::string c = base().mono_str(m);
    if (c == "1") return gens_[size_t(g)].name;
    return c + " " + gens_[size_t(g)].name;
}

std::vector<PresentedModule::Violation> PresentedModule::validate() const {
    std::vector<Violation> out;
    const int R = alg_->rank();
    for (int i = 1; i < R && out.size() < 16; ++i) {
        for (int j = 1; j < R && out.size() < 16; ++j) {
            Bidegree dij = alg_->basis(i).deg + alg_->basis(j).deg;
            for (int t = 0; t + dij.t <= trunc_ && out.size() < 16; ++t) {
                int w_hi = weight_ceiling(t);
                for (int w = 0; w <= w_hi; ++w) {
                    Bidegree d{t, w};
                    if (dim(d) == 0) continue;
                    /* composite of i after j */
                    F2Matrix lhs = basis_action(d + alg_->basis(j).deg, i) * basis_action(d, j);
                    /* table product applied degreewise */
                    F2Matrix rhs(dim(d + dij), dim(d));
                    for (const auto& term : alg_->product(i, j)) {
                        Bidegree mid = d + alg_->basis(term.b).deg;
                        F2Matrix part = coef_action(mid, term.c) * basis_action(d, term.b);
                        for (int r = 0; r < rhs.rows(); ++r) rhs.row(r) ^= part.row(r);
                    }
                    if (!(lhs == rhs)) {
                        for (int col = 0; col < int(dim(d)); ++col) {
                            bool diff = false;
                            for (int r = 0; r < lhs.rows(); ++r)
                                if (lhs.get(r, col) != rhs.get(r, col)) { diff = true; break; }
                            if (diff) {
                                out.push_back(Violation{alg_->basis(i).label + "." + alg_->basis(j).label,
                                                        d + dij, slot_name(d, col)});
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

void PresentedModule::validate_or_throw() const {
    auto v = validate();
    if (v.empty()) return;
    std::ostringstream os;
    os << name_ << ": relation " << v[0].relation << " fails at " << v[0].at.str() << " on "
       << v[0].witness;
    throw std::runtime_error(os.str());
}

int PresentedModule::weight_ceiling(int t) const {
    const BaseRing& R = base();
    int hi = 0;
    for (const auto& g : gens_) {
        int c_max = R.has_sec() ? std::min(R.sec_cap(), t - g.deg.t) : 0;
        for (int c = 0; c <= std::max(0, c_max); ++c)
            if (g.deg.t + c <= t) hi = std::max(hi, g.deg.w + c);
    }
    return hi;
}

/* --- constructors --- */

static std::string bc2_gen_name(int eps, int j) {
    if (eps == 0) return j == 1 ? "y" : "y^" + std::to_string(j);
    if (j == 0) return "x";
    return j == 1 ? "xy" : "xy^" + std::to_string(j);
}

PresentedModule bc2_cohomology(std::shared_ptr<const AlgebraTable> alg, int truncation) {
    if (truncation < 2) throw std::runtime_error("bc2_cohomology: truncation must be at least 2");
    const bool classical = alg->base().classical();
    std::vector<ModuleGen> gens;
    if (classical) {
        for (int i = 1; i <= truncation; ++i)
            gens.push_back(ModuleGen{"u^" + std::to_string(i), Bidegree{i, 0}});
    } else {
        /* x^e y^j of degree (e + 2j, e + j), ordered by t */
        for (int t = 1; t <= truncation; ++t) {
            int eps = t & 1, j = (t - eps) / 2;
            if (eps == 0 && j == 0) continue;
            gens.push_back(ModuleGen{bc2_gen_name(eps, j), Bidegree{t, eps + j}});
        }
    }
    PresentedModule m(alg, classical ? "H(BC2;classical)" : "H(BC2)", std::move(gens), truncation);

    auto maybe_add = [&](int letter, const std::string& from, const std::string& to, int to_t) {
        if (to_t <= truncation) m.add_action(letter, from, to);
    };
    bool is_a1 = alg->name() == AlgebraName::A1 || alg->name() == AlgebraName::A0;
    if (!is_a1) throw std::runtime_error("bc2_cohomology: build over A1 or A0, then restrict for E1");

    if (classical) {
        for (int i = 1; i <= truncation; ++i) {
            std::string from = "u^" + std::to_string(i);
            if (i % 2 == 1) maybe_add(0, from, "u^" + std::to_string(i + 1), i + 1);
            if (alg->name() == AlgebraName::A1 && (i % 4 == 2 || i % 4 == 3))
                maybe_add(1, from, "u^" + std::to_string(i + 2), i + 2);
        }
    } else {
        for (int t = 1; t <= truncation; ++t) {
            int eps = t & 1, j = (t - eps) / 2;
            if (eps == 0 && j == 0) continue;
            std::string from = bc2_gen_name(eps, j);
            if (eps == 1) maybe_add(0, from, bc2_gen_name(0, j + 1), 2 * (j + 1));
            int k = eps + 2 * j;
            if (alg->name() == AlgebraName::A1 && (k % 4 == 2 || k % 4 == 3))
                maybe_add(1, from, bc2_gen_name(eps, j + 1), eps + 2 * (j + 1));
        }
    }
    m.seal();
    return m;
}

PresentedModule trivial_module(std::shared_ptr<const AlgebraTable> alg, int truncation, Bidegree shift) {
    PresentedModule m(alg, "M2", {ModuleGen{"1", shift}}, truncation);
    m.seal();
    return m;
}

PresentedModule restrict_module(const PresentedModule& m, std::shared_ptr<const AlgebraTable> sub) {
    if (m.algebra().name() != AlgebraName::A1)
        throw std::runtime_error("restrict_module: source must be an A1 module");
    std::vector<ModuleGen> gens;
    for (int g = 0; g < m.gen_count(); ++g) gens.push_back(m.gen(g));
    PresentedModule out(sub, m.name() + "|" + algebra_name_str(sub->name()), std::move(gens),
                        m.truncation());

    for (int l = 0; l < sub->letters(); ++l) {
        Bidegree ld = sub->letter_deg(l);
        for (int g = 0; g < m.gen_count(); ++g) {
            Bidegree d = m.gen(g).deg;
            const auto& src = m.component(d);
            int col = src.index_of(g);
            if (col < 0) continue;
            F2Vec v(m.dim(d));
            v.set(col);
            F2Vec img;
            if (sub->name() == AlgebraName::A0) {
                img = m.letter_action(d, 0).apply(v);
            } else {
                /* Q0 = Sq1; Q1 = Sq1 Sq2 + Sq2 Sq1 */
                if (l == 0) {
                    img = m.letter_action(d, 0).apply(v);
                } else {
                    F2Vec a = m.letter_action(d + m.algebra().letter_deg(1), 0)
                                  .apply(m.letter_action(d, 1).apply(v));
                    F2Vec b = m.letter_action(d + m.algebra().letter_deg(0), 1)
                                  .apply(m.letter_action(d, 0).apply(v));
                    img = a ^ b;
                }
            }
            const auto& dst = m.component(d + ld);
            for (int row : img.support())
                out.add_action(l, g, dst.slots[size_t(row)].first);
        }
    }
    out.seal();
    return out;
}

PresentedModule induced_module(std::shared_ptr<const AlgebraTable> alg, const std::vector<AlgElt>& ideal,
                               const std::string& name, int truncation) {
    const BaseRing& R = alg->base();
    /* regular module */
    std::vector<ModuleGen> reg_gens;
    for (int b = 0; b < alg->rank(); ++b)
        reg_gens.push_back(ModuleGen{alg->basis(b).label, alg->basis(b).deg});
    PresentedModule reg(alg, algebra_name_str(alg->name()), reg_gens, truncation);
    for (int l = 0; l < alg->letters(); ++l)
        for (int b = 0; b < alg->rank(); ++b)
            for (const auto& term : alg->product(alg->basis_of_letter(l), b))
                reg.add_action(l, b, term.b);
    reg.seal();

    /* ideal span per component: images of right multiplication by the ideal generators */
    auto ideal_span = [&](Bidegree d) {
        F2Span span(reg.dim(d));
        for (const auto& gen_elt : ideal) {
            if (gen_elt.empty()) continue;
            Bidegree gd = alg->basis(gen_elt[0].b).deg + R.mono_deg(gen_elt[0].c);
            const auto& src = reg.component(d - gd);
            const auto& dst = reg.component(d);
            for (const auto& [b, m] : src.slots) {
                /* (m b) . gen_elt */
                AlgElt prod = alg->mul({AlgTerm{m, b}}, gen_elt);
                F2Vec v(reg.dim(d));
                for (const auto& t : prod) {
                    int row = dst.index_of(t.b);
                    if (row >= 0 && dst.slots[size_t(row)].second == t.c) v.flip(row);
                }
                span.add(v);
            }
        }
        return span;
    };

    /* locate quotient generators by a degreewise sweep */
    struct QGen { Bidegree deg; F2Vec rep; std::string label; };
    std::vector<QGen> qgens;
    int top_t = alg->top_deg().t;
    for (int t = 0; t <= top_t; ++t) {
        int w_hi = reg.weight_ceiling(t);
        for (int w = 0; w <= w_hi; ++w) {
            Bidegree d{t, w};
            int n = reg.dim(d);
            if (n == 0) continue;
            F2Span covered = ideal_span(d);
            /* coefficient multiples of earlier quotient generators */
            for (const auto& qg : qgens) {
                auto c = R.monomial_at(d - qg.deg);
                if (!c) continue;
                covered.add(reg.coef_action(qg.deg, *c).apply(qg.rep));
            }
            const auto& comp = reg.component(d);
            for (int i = 0; i < n; ++i) {
                F2Vec v(n);
                v.set(i);
                if (covered.contains(v)) continue;
                covered.add(v);
                qgens.push_back(QGen{d, v, reg.slot_name(d, i)});
            }
        }
    }

    std::vector<ModuleGen> gens;
    for (const auto& qg : qgens) gens.push_back(ModuleGen{qg.label, qg.deg});
    PresentedModule out(alg, name, std::move(gens), truncation);

    /* actions: letter on representative, expressed over ideal + coefficient
     * multiples of the quotient generators */
    for (int l = 0; l < alg->letters(); ++l) {
        for (size_t gi = 0; gi < qgens.size(); ++gi) {
            Bidegree d = qgens[gi].deg;
            Bidegree dt = d + alg->letter_deg(l);
            F2Vec img = reg.letter_action(d, l).apply(qgens[gi].rep);

            F2Span sp(reg.dim(dt));
            F2Span isp = ideal_span(dt);
            int n_ideal = 0;
            for (const auto& row : isp.rows()) {
                sp.add(row);
                ++n_ideal;
            }
            std::vector<size_t> candidates;
            for (size_t gj = 0; gj < qgens.size(); ++gj) {
                auto c = R.monomial_at(dt - qgens[gj].deg);
                if (!c) continue;
                candidates.push_back(gj);
                sp.add(reg.coef_action(qgens[gj].deg, *c).apply(qgens[gj].rep));
            }
            F2Vec coords;
            if (!sp.express(img, coords))
                throw std::runtime_error("induced_module: action does not close over the quotient basis");
            for (size_t k = 0; k < candidates.size(); ++k)
                if (coords.get(n_ideal + int(k))) out.add_action(l, int(gi), int(candidates[k]));
        }
    }
    out.seal();
    return out;
}

PresentedModule quotient_algebra_module(std::shared_ptr<const AlgebraTable> alg, AlgebraName killed,
                                        int truncation) {
    std::vector<AlgElt> ideal;
    std::string label;
    if (alg->name() == AlgebraName::A1 && killed == AlgebraName::A0) {
        ideal = {{AlgTerm{CoefMono{}, alg->basis_of_letter(0)}}};
        label = "A1//A0";
    } else if (alg->name() == AlgebraName::A1 && killed == AlgebraName::E1) {
        /* Q0 = Sq1 and Q1 = Sq1Sq2 + Sq2Sq1 */
        AlgElt q1 = add({AlgTerm{CoefMono{}, alg->basis_index(Word{0, 1})}},
                        {AlgTerm{CoefMono{}, alg->basis_index(Word{1, 0})}});
        ideal = {{AlgTerm{CoefMono{}, alg->basis_of_letter(0)}}, q1};
        label = "A1//E1";
    } else if (alg->name() == AlgebraName::E1 && killed == AlgebraName::A0) {
        ideal = {{AlgTerm{CoefMono{}, alg->basis_of_letter(0)}}};
        label = "E1//A0";
    } else {
        throw std::runtime_error("quotient_algebra_module: unsupported pair");
    }
    return induced_module(alg, ideal, label, truncation);
}

/* shift a module and drop generators above the truncation */
static PresentedModule shifted_copy(const PresentedModule& src, Bidegree shift, int T,
                                    const std::string& name) {
    std::vector<ModuleGen> gens;
    std::vector<int> keep;
    std::vector<int> pos(size_t(src.gen_count()), -1);
    for (int g = 0; g < src.gen_count(); ++g) {
        if (src.gen(g).deg.t + shift.t > T) continue;
        pos[size_t(g)] = int(gens.size());
        keep.push_back(g);
        gens.push_back(ModuleGen{src.gen(g).name, src.gen(g).deg + shift});
    }
    PresentedModule out(src.algebra_ptr(), name, std::move(gens), T);
    for (int l = 0; l < src.algebra().letters(); ++l)
        for (int g : keep)
            for (int t : src.entry(l, g))
                if (pos[size_t(t)] >= 0) out.add_action(l, pos[size_t(g)], pos[size_t(t)]);
    out.seal();
    return out;
}

/* --- short exact sequences --- */

SesScheme parse_ses_scheme(const std::string& s) {
    if (s == "kgl-split") return SesScheme::KglSplit;
    if (s == "kq-QR") return SesScheme::KqQR;
    if (s == "kq-QC") return SesScheme::KqQC;
    if (s == "classical-ku") return SesScheme::ClassicalKu;
    if (s == "classical-ko-Q") return SesScheme::ClassicalKoQ;
    throw std::runtime_error("unknown ses scheme '" + s + "'");
}

static PresentedModule select_submodule(const PresentedModule& m, const std::vector<int>& keep,
                                        const std::string& name, bool is_quotient) {
    std::vector<ModuleGen> gens;
    for (int g : keep) gens.push_back(m.gen(g));
    PresentedModule out(m.algebra_ptr(), name, std::move(gens), m.truncation());
    std::vector<int> pos(size_t(m.gen_count()), -1);
    for (size_t i = 0; i < keep.size(); ++i) pos[size_t(keep[i])] = int(i);
    for (int l = 0; l < m.algebra().letters(); ++l) {
        for (size_t i = 0; i < keep.size(); ++i) {
            for (int tgt : m.entry(l, keep[i])) {
                if (pos[size_t(tgt)] >= 0) {
                    out.add_action(l, int(i), pos[size_t(tgt)]);
                } else if (!is_quotient) {
                    throw std::runtime_error(name + ": generator set is not closed under the action (" +
                                             m.gen(keep[i]).name + " hits " + m.gen(tgt).name + ")");
                }
            }
        }
    }
    out.seal();
    return out;
}

Ses build_ses(SesScheme scheme, const PresentedModule& module) {
    const bool classical = module.base().classical();
    std::vector<std::string> sub_names;
    std::string sub_label, quot_label;
    switch (scheme) {
        case SesScheme::KglSplit:
            if (classical) throw std::runtime_error("kgl-split requires a motivic module");
            sub_names = {"y"};
            sub_label = "S(2,1)M2";
            quot_label = "V";
            break;
        case SesScheme::ClassicalKu:
            if (!classical) throw std::runtime_error("classical-ku requires the classical module");
            sub_names = {"u^2"};
            sub_label = "S2.F2";
            quot_label = "V";
            break;
        case SesScheme::KqQR:
            if (classical) sub_names = {"u^1", "u^2", "u^4"};
            else sub_names = {"x", "y", "y^2"};
            sub_label = "Q";
            quot_label = "R";
            break;
        case SesScheme::ClassicalKoQ:
            sub_names = classical ? std::vector<std::string>{"u^1", "u^2", "u^4"}
                                  : std::vector<std::string>{"x", "y", "y^2"};
            sub_label = "Q";
            quot_label = "R";
            break;
        case SesScheme::KqQC:
            /* applied to Q itself */
            sub_names = classical ? std::vector<std::string>{"u^2", "u^4"} : std::vector<std::string>{"y", "y^2"};
            sub_label = "S(2,1)C";
            quot_label = "S(1,1)M2";
            break;
    }
    /* classical module generator u^1 is stored as "u^1" */
    std::vector<int> sub_idx;
    for (auto& n : sub_names) sub_idx.push_back(module.gen_index(n));
    std::sort(sub_idx.begin(), sub_idx.end());
    std::vector<int> quot_idx;
    for (int g = 0; g < module.gen_count(); ++g)
        if (!std::binary_search(sub_idx.begin(), sub_idx.end(), g)) quot_idx.push_back(g);

    Ses ses{select_submodule(module, sub_idx, sub_label, false), module,
            select_submodule(module, quot_idx, quot_label, true), sub_idx, quot_idx};
    return ses;
}

void check_ses_exactness(const Ses& ses, int t_bound) {
    for (int t = 0; t <= t_bound; ++t) {
        int w_hi = ses.total.weight_ceiling(t);
        for (int w = 0; w <= w_hi; ++w) {
            Bidegree d{t, w};
            if (ses.sub.dim(d) + ses.quotient.dim(d) != ses.total.dim(d))
                throw std::runtime_error("ses is not degreewise exact at " + d.str());
        }
    }
}

/* --- filtrations --- */

static std::string power_name(const PresentedModule& m, int eps, int j) {
    if (m.base().classical()) return "u^" + std::to_string(eps + 2 * j);
    return bc2_gen_name(eps, j);
}

std::vector<FiltrationStage> filtration(const PresentedModule& module, FiltrationScheme scheme) {
    auto alg = module.algebra_ptr();
    int T = module.truncation();
    std::vector<FiltrationStage> out;

    auto has_gen = [&](const std::string& n) {
        for (int g = 0; g < module.gen_count(); ++g)
            if (module.gen(g).name == n) return true;
        return false;
    };

    if (scheme == FiltrationScheme::V) {
        PresentedModule eq = quotient_algebra_module(alg, AlgebraName::A0, T);
        for (int i = 0;; ++i) {
            /* stage i generators: x y^i and y^{i+2} (u^{2i+1}, u^{2i+4}) */
            std::string a = power_name(module, 1, i), b = power_name(module, 0, i + 2);
            if (!has_gen(a)) break;
            std::vector<std::string> stage{a};
            if (has_gen(b)) stage.push_back(b);
            Bidegree shift{2 * i + 1, module.base().classical() ? 0 : i + 1};

            std::vector<int> keep;
            for (auto& n : stage) keep.push_back(module.gen_index(n));
            PresentedModule sq = select_submodule(module, keep, "V.F" + std::to_string(i), true);
            out.push_back(FiltrationStage{std::move(sq),
                                          shifted_copy(eq, shift, T, "S" + shift.str() + "E1//A0"),
                                          shift});
        }
    } else {
        PresentedModule aq = quotient_algebra_module(alg, AlgebraName::A0, T);
        for (int i = 0;; ++i) {
            std::string a = power_name(module, 1, 2 * i + 1); /* x y^{2i+1} */
            std::string b = power_name(module, 1, 2 * i + 2);
            std::string c = power_name(module, 0, 2 * i + 3);
            std::string d4 = power_name(module, 0, 2 * i + 4);
            if (!has_gen(a)) break;
            std::vector<std::string> stage{a};
            for (auto& n : {b, c, d4})
                if (has_gen(n)) stage.push_back(n);
            Bidegree shift{4 * i + 3, module.base().classical() ? 0 : 2 * i + 2};

            std::vector<int> keep;
            for (auto& n : stage) keep.push_back(module.gen_index(n));
            std::sort(keep.begin(), keep.end());
            PresentedModule sq = select_submodule(module, keep, "R.F" + std::to_string(i), true);
            out.push_back(FiltrationStage{std::move(sq),
                                          shifted_copy(aq, shift, T, "S" + shift.str() + "A1//A0"),
                                          shift});
        }
    }
    return out;
}

bool modules_isomorphic(const PresentedModule& a, const PresentedModule& b, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (a.gen_count() != b.gen_count()) return fail("generator counts differ");
    std::vector<int> ia(size_t(a.gen_count())), ib(size_t(b.gen_count()));
    for (size_t i = 0; i < ia.size(); ++i) ia[i] = int(i), ib[i] = int(i);
    auto bydeg = [](const PresentedModule& m) {
        return [&m](int x, int y) {
            if (m.gen(x).deg.t != m.gen(y).deg.t) return m.gen(x).deg.t < m.gen(y).deg.t;
            return m.gen(x).deg.w < m.gen(y).deg.w;
        };
    };
    std::sort(ia.begin(), ia.end(), bydeg(a));
    std::sort(ib.begin(), ib.end(), bydeg(b));
    for (size_t i = 0; i < ia.size(); ++i) {
        if (a.gen(ia[i]).deg != b.gen(ib[i]).deg) return fail("generator degrees differ");
        if (i + 1 < ia.size() && a.gen(ia[i]).deg == a.gen(ia[i + 1]).deg)
            return fail("ambiguous generator degrees");
    }
    std::vector<int> a_to_b(size_t(a.gen_count()));
    for (size_t i = 0; i < ia.size(); ++i) a_to_b[size_t(ia[i])] = ib[i];
    for (int l = 0; l < a.algebra().letters(); ++l) {
        for (int g = 0; g < a.gen_count(); ++g) {
            std::vector<int> lhs;
            for (int t : a.entry(l, g)) lhs.push_back(a_to_b[size_t(t)]);
            std::sort(lhs.begin(), lhs.end());
            std::vector<int> rhs = b.entry(l, a_to_b[size_t(g)]);
            std::sort(rhs.begin(), rhs.end());
            if (lhs != rhs)
                return fail("actions differ on " + a.gen(g).name);
        }
    }
    return true;
}

/* --- text format --- */

PresentedModule module_from_records(const std::vector<Record>& recs,
                                    std::shared_ptr<const AlgebraTable> alg) {
    const Record* rec = nullptr;
    for (const auto& r : recs)
        if (r.type == "module") { rec = &r; break; }
    if (!rec) throw std::runtime_error("no [module] record");

    if (parse_algebra(rec->get("algebra")) != alg->name())
        throw std::runtime_error("module file algebra mismatch");

    int T = rec->get_int("truncation");
    std::vector<ModuleGen> gens;
    for (const auto& tok : split_ws(rec->get("generators"))) {
        auto p1 = tok.find(':');
        auto p2 = tok.find(':', p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw std::runtime_error("bad generator token '" + tok + "'");
        gens.push_back(ModuleGen{tok.substr(0, p1),
                                 Bidegree{std::stoi(tok.substr(p1 + 1, p2 - p1 - 1)),
                                          std::stoi(tok.substr(p2 + 1))}});
    }
    PresentedModule m(alg, rec->get("name"), std::move(gens), T);
    for (const auto& [key, value] : rec->fields) {
        if (key.rfind("action.", 0) != 0) continue;
        std::string rest = key.substr(7);
        auto dot = rest.find('.');
        if (dot == std::string::npos) throw std::runtime_error("bad action key '" + key + "'");
        std::string letter_name = rest.substr(0, dot);
        std::string gen_name = rest.substr(dot + 1);
        int letter = -1;
        for (int l = 0; l < alg->letters(); ++l)
            if (alg->letter_label(l) == letter_name) letter = l;
        if (letter < 0) throw std::runtime_error("unknown letter '" + letter_name + "'");
        for (const auto& tgt : split_ws(value)) m.add_action(letter, gen_name, tgt);
    }
    m.seal();
    return m;
}

std::string module_to_text(const PresentedModule& m) {
    std::ostringstream os;
    os << "[module]\n";
    os << "name = " << m.name() << "\n";
    os << "algebra = " << algebra_name_str(m.algebra().name()) << "\n";
    os << "base = " << field_name(m.base().tag()) << "\n";
    os << "truncation = " << m.truncation() << "\n";
    os << "generators =";
    for (int g = 0; g < m.gen_count(); ++g)
        os << ' ' << m.gen(g).name << ':' << m.gen(g).deg.t << ':' << m.gen(g).deg.w;
    os << "\n";
    for (int l = 0; l < m.algebra().letters(); ++l) {
        for (int g = 0; g < m.gen_count(); ++g) {
            if (m.entry(l, g).empty()) continue;
            os << "action." << m.algebra().letter_label(l) << "." << m.gen(g).name << " =";
            for (int t : m.entry(l, g)) os << ' ' << m.gen(t).name;
            os << "\n";
        }
    }
    return os.str();
}

} // namespace motex
