#include "motex/ext.hpp"

#include "motex/parallel.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace motex {

std::vector<std::pair<int, CoefMono>> hom_component(const Resolution& res, Tridegree d) {
    std::vector<std::pair<int, CoefMono>> out;
    if (d.s >= res.stages()) return out;
    const BaseRing& R = res.algebra().base();
    for (int g = 0; g < res.gen_count(d.s); ++g) {
        auto m = R.monomial_at(res.gen(d.s, g).deg - Bidegree{d.t, d.w});
        if (m) out.emplace_back(g, *m);
    }
    return out;
}

/* delta(phi)(f) = phi(d f): matrix of the Hom-complex differential */
static F2Matrix hom_differential(const Resolution& res, Tridegree d) {
    const AlgebraTable& A = res.algebra();
    const BaseRing& R = A.base();
    auto src = hom_component(res, d);
    auto dst = hom_component(res, Tridegree{d.s + 1, d.t, d.w});
    F2Matrix mat(int(dst.size()), int(src.size()));
    for (size_t row = 0; row < dst.size(); ++row) {
        const auto& f = res.gen(d.s + 1, dst[row].first);
        for (const auto& term : f.diff) {
            /* find the source slot for term.gen */
            int col = -1;
            for (size_t i = 0; i < src.size(); ++i)
                if (src[i].first == term.gen) { col = int(i); break; }
            if (col < 0) continue;
            const auto& e = res.gen(d.s, term.gen);
            auto implied = R.monomial_at(f.deg - A.basis(term.basis).deg - e.deg);
            if (!implied) continue;
            /* implied . (basis acting on phi(e)) */
            if (!A.basis_acts_on_mono(term.basis, src[size_t(col)].second)) continue;
            auto acted = R.monomial_at(R.mono_deg(src[size_t(col)].second) + A.basis(term.basis).deg);
            if (!acted) continue;
            if (!R.mul(*implied, *acted)) continue;
            mat.row(int(row)).flip(col);
        }
    }
    return mat;
}

ExtChart ext_groups(const Resolution& res, const ExtWindow& window) {
    if (window.max_s + 1 >= res.stages())
        throw std::runtime_error("ext_groups: resolution not built past max_s");
    if (window.stem_hi + window.max_s > res.max_t())
        throw std::runtime_error("ext_groups: window exceeds the resolution degree bound");

    ExtChart chart;
    chart.window_ = window;
    /* per-cell homology parallelizes; results land in fixed slots so the
     * output is identical at any thread count */
    std::vector<Tridegree> degs;
    for (int s = 0; s <= window.max_s; ++s)
        for (int stem = window.stem_lo; stem <= window.stem_hi; ++stem)
            for (int w = window.w_lo; w <= window.w_hi; ++w) degs.push_back({s, stem + s, w});
    /* warm the shared caches sequentially: component and matrix construction
     * mutates the resolution's memo tables */
    for (const auto& d : degs) {
        (void)res.component(d.s, {d.t, d.w});
        if (d.s + 1 < res.stages()) (void)res.component(d.s + 1, {d.t, d.w});
    }
    std::vector<std::optional<std::pair<Tridegree, ExtChart::Cell>>> slots(degs.size());
    parallel_for(degs.size(), [&](size_t idx) {
        Tridegree d = degs[idx];
        const int t = d.t;
        (void)t;
        auto hom = hom_component(res, d);
        if (hom.empty()) return;
        if (!res.cell_certified(d))
            throw std::runtime_error("ext_groups: cell " + d.str() +
                                     " is outside the certified region; extend max_t");

        F2Matrix delta = hom_differential(res, d);
        auto kernel = delta.kernel_basis();

        ExtChart::Cell cell;
                for (auto& [g, m] : hom) {
                    cell.hom_gens.push_back(g);
                    cell.hom_monos.push_back(m);
                }
        cell.boundary_then_classes = F2Span(int(hom.size()));
        int n_inserted = 0;
        if (d.s > 0) {
            F2Matrix up = hom_differential(res, Tridegree{d.s - 1, d.t, d.w});
            for (int c = 0; c < up.cols(); ++c) {
                F2Vec v(up.cols());
                v.set(c);
                if (cell.boundary_then_classes.add(up.apply(v))) ++cell.n_boundary;
                ++n_inserted;
            }
        }
        for (const auto& k : kernel) {
            bool grew = cell.boundary_then_classes.add(k);
            ++n_inserted;
            if (!grew) continue;
            std::ostringstream name;
            name << "e[" << (d.t - d.s) << ',' << d.s << ',' << d.w << ']';
            if (!cell.classes.empty()) name << '.' << cell.classes.size();
            cell.classes.push_back(ExtChart::ClassInfo{name.str(), k});
            cell.class_idx.push_back(n_inserted - 1);
        }
        slots[idx] = std::make_pair(d, std::move(cell));
    });
    for (auto& s : slots)
        if (s) chart.cells_.emplace(s->first, std::move(s->second));
    return chart;
}

const ExtChart::Cell* ExtChart::cell(Tridegree d) const {
    auto it = cells_.find(d);
    return it == cells_.end() ? nullptr : &it->second;
}

int ExtChart::dim(Tridegree d) const {
    const Cell* c = cell(d);
    return c ? int(c->classes.size()) : 0;
}

std::optional<F2Vec> ExtChart::coordinates(Tridegree d, const F2Vec& cocycle) const {
    const Cell* c = cell(d);
    if (!c) return cocycle.is_zero() ? std::optional<F2Vec>(F2Vec(0)) : std::nullopt;
    F2Vec coords;
    if (!c->boundary_then_classes.express(cocycle, coords)) return std::nullopt;
    F2Vec out(int(c->classes.size()));
    for (int i = 0; i < int(c->classes.size()); ++i)
        if (coords.get(c->class_idx[size_t(i)])) out.set(i);
    return out;
}

F2Vec ExtChart::unique_class(Tridegree d) const {
    const Cell* c = cell(d);
    if (!c || c->classes.size() != 1)
        throw std::runtime_error("unique_class: cell " + d.str() + " has dimension " +
                                 std::to_string(dim(d)));
    return c->classes[0].cocycle;
}

int ExtChart::total_dim() const {
    int n = 0;
    for (const auto& [d, c] : cells_) n += int(c.classes.size());
    return n;
}

void ExtChart::set_name(Tridegree d, int index, const std::string& name) {
    cells_.at(d).classes[size_t(index)].name = name;
}

const std::string& ExtChart::class_name(Tridegree d, int index) const {
    return cells_.at(d).classes[size_t(index)].name;
}

bool eval_functional(const Resolution& res, int s, Bidegree elt_deg, const F2Vec& elt,
                     Tridegree fdeg, const F2Vec& functional) {
    const AlgebraTable& A = res.algebra();
    const BaseRing& R = A.base();
    auto hom = hom_component(res, fdeg);
    const auto& slots = res.component(s, elt_deg);
    bool out = false;
    for (int idx : elt.support()) {
        const auto& slot = slots[size_t(idx)];
        /* phi(slot.mono . basis . gen) = slot.mono . (basis . phi(gen)) */
        int hidx = -1;
        for (size_t i = 0; i < hom.size(); ++i)
            if (hom[i].first == slot.gen) { hidx = int(i); break; }
        if (hidx < 0 || !functional.get(hidx)) continue;
        CoefMono value = hom[size_t(hidx)].second;
        if (!A.basis_acts_on_mono(slot.basis, value)) continue;
        auto acted = R.monomial_at(R.mono_deg(value) + A.basis(slot.basis).deg);
        if (!acted || !R.mul(slot.mono, *acted)) continue;
        out ^= true;
    }
    return out;
}

ChainLift::ChainLift(const Resolution& F, const Resolution& P, Tridegree x_deg, F2Vec cocycle)
    : F_(&F), P_(&P), x_deg_(x_deg), cocycle_(std::move(cocycle)) {
    /* stage 0: solve aug_P(x) = phi(f) . (module generator) */
    auto hom = hom_component(F, x_deg);
    std::vector<F2Vec> row;
    for (int g = 0; g < F.gen_count(x_deg.s); ++g) {
        Bidegree D = F.gen(x_deg.s, g).deg - Bidegree{x_deg.t, x_deg.w};
        F2Vec x(P.dim(0, D));
        int hidx = -1;
        for (size_t i = 0; i < hom.size(); ++i)
            if (hom[i].first == g) { hidx = int(i); break; }
        if (hidx >= 0 && cocycle_.get(hidx)) {
            /* target: the unique module element phi(f) in P's module at D */
            const auto& M = P.module();
            if (M.dim(D) != 1)
                throw std::runtime_error("ChainLift: target module component is not a line");
            F2Vec rhs(1);
            rhs.set(0);
            if (!P.aug_matrix(D).solve(rhs, x))
                throw std::runtime_error("ChainLift: augmentation lift failed");
        }
        row.push_back(std::move(x));
    }
    data_.push_back(std::move(row));
}

void ChainLift::extend(int k_max) {
    const AlgebraTable& A = F_->algebra();
    const BaseRing& R = A.base();
    while (int(data_.size()) <= k_max) {
        int k = int(data_.size());
        int s = x_deg_.s + k;
        if (s >= F_->stages())
            throw std::runtime_error("ChainLift: domain resolution too short");
        std::vector<F2Vec> row;
        for (int g = 0; g < F_->gen_count(s); ++g) {
            const auto& f = F_->gen(s, g);
            Bidegree D = f.deg - Bidegree{x_deg_.t, x_deg_.w};
            /* rhs = lift_{k-1}(d f) */
            F2Vec rhs(P_->dim(k - 1, D));
            for (const auto& term : f.diff) {
                const auto& e = F_->gen(s - 1, term.gen);
                auto implied = R.monomial_at(f.deg - A.basis(term.basis).deg - e.deg);
                if (!implied) continue;
                Bidegree De = e.deg - Bidegree{x_deg_.t, x_deg_.w};
                const F2Vec& prev = data_[size_t(k - 1)][size_t(term.gen)];
                if (prev.size() == 0) continue;
                rhs ^= P_->mult(k - 1, De, *implied, term.basis, prev);
            }
            F2Vec x(P_->dim(k, D));
            if (!rhs.is_zero()) {
                if (!P_->diff_matrix(k, D).solve(rhs, x))
                    throw std::runtime_error("ChainLift: lift failed at stage " + std::to_string(k));
            }
            row.push_back(std::move(x));
        }
        data_.push_back(std::move(row));
    }
}

F2Vec yoneda_product(const ChainLift& lift, Tridegree xi_deg, const F2Vec& xi_cocycle) {
    const Resolution& F = lift.domain();
    const Resolution& P = lift.target();
    Tridegree prod{lift.degree().s + xi_deg.s, lift.degree().t + xi_deg.t, lift.degree().w + xi_deg.w};
    auto hom = hom_component(F, prod);
    F2Vec out(int(hom.size()));
    for (size_t i = 0; i < hom.size(); ++i) {
        int g = hom[i].first;
        Bidegree D = F.gen(prod.s, g).deg - Bidegree{lift.degree().t, lift.degree().w};
        const F2Vec& elt = lift.at(xi_deg.s, g);
        if (elt.size() == 0) continue;
        if (eval_functional(P, xi_deg.s, D, elt, xi_deg, xi_cocycle)) out.set(int(i));
    }
    return out;
}

F2Vec coef_structure_map(const Resolution& res, Tridegree d, const F2Vec& cocycle, CoefMono c) {
    const BaseRing& R = res.algebra().base();
    Bidegree cd = R.mono_deg(c);
    Tridegree target{d.s, d.t - cd.t, d.w - cd.w};
    auto src = hom_component(res, d);
    auto dst = hom_component(res, target);
    F2Vec out(int(dst.size()));
    for (size_t i = 0; i < dst.size(); ++i) {
        /* (c . phi)(gen) = c . phi(gen) */
        for (size_t j = 0; j < src.size(); ++j) {
            if (src[j].first != dst[i].first) continue;
            if (!cocycle.get(int(j))) continue;
            auto p = R.mul(c, src[j].second);
            if (p && *p == dst[i].second) out.flip(int(i));
        }
    }
    return out;
}

std::optional<F2Vec> product_action(const ProductContext& ctx, Tridegree x_deg, const F2Vec& x_coords,
                                    Tridegree xi_deg, const F2Vec& xi_coords) {
    Tridegree prod{x_deg.s + xi_deg.s, x_deg.t + xi_deg.t, x_deg.w + xi_deg.w};
    if (!ctx.chart->window().contains(prod)) return std::nullopt;

    const ExtChart::Cell* xc = ctx.chart->cell(x_deg);
    const ExtChart::Cell* pc = ctx.p_chart->cell(xi_deg);
    if (!xc || !pc) return std::nullopt;

    /* assemble the cocycles from coordinates */
    F2Vec x_cocycle(int(xc->hom_gens.size()));
    for (int i : x_coords.support()) x_cocycle ^= xc->classes[size_t(i)].cocycle;
    F2Vec xi_cocycle(int(pc->hom_gens.size()));
    for (int i : xi_coords.support()) xi_cocycle ^= pc->classes[size_t(i)].cocycle;

    ChainLift lift(*ctx.F, *ctx.P, x_deg, x_cocycle);
    lift.extend(xi_deg.s);
    F2Vec cocycle = yoneda_product(lift, xi_deg, xi_cocycle);
    auto coords = ctx.chart->coordinates(prod, cocycle);
    if (!coords)
        throw std::runtime_error("product_action: product is not a cocycle class");
    return coords;
}

/* --- long exact sequence --- */

LesTriple::LesTriple(Ses ses, int max_s, int max_t)
    : ses_(std::move(ses)), sub_res_(ses_.sub), quot_res_(ses_.quotient) {
    sub_res_.extend(max_s, max_t);
    quot_res_.extend(max_s, max_t);
    build_lambda(max_s);
    build_total();
}

void LesTriple::build_lambda(int max_s) {
    const AlgebraTable& A = sub_res_.algebra();
    const BaseRing& R = A.base();
    lambda_.assign(size_t(max_s + 1), {});

    /* stage 1: solve aug_sub(x) = preimage of mu0(d'' f) under the inclusion */
    for (int s = 1; s <= max_s; ++s) {
        auto& lam = lambda_[size_t(s)];
        for (int g = 0; g < quot_res_.gen_count(s); ++g) {
            const auto& f = quot_res_.gen(s, g);
            if (s == 1) {
                /* mu0(d'' f) as an element of the total module */
                F2Vec tot(ses_.total.dim(f.deg));
                const auto& tot_comp = ses_.total.component(f.deg);
                for (const auto& term : f.diff) {
                    const auto& e = quot_res_.gen(0, term.gen);
                    auto implied = R.monomial_at(f.deg - A.basis(term.basis).deg - e.deg);
                    if (!implied) continue;
                    /* e augments onto quot generators; map through quot_to_total */
                    for (int slot : e.aug.support()) {
                        auto [qgen, qmono] = ses_.quotient.component(e.deg).slots[size_t(slot)];
                        int tgen = ses_.quot_to_total[size_t(qgen)];
                        /* (implied . basis) acting on (qmono . tgen) inside the total module */
                        const auto& comp0 = ses_.total.component(e.deg);
                        int ti = comp0.index_of(tgen);
                        if (ti < 0 || comp0.slots[size_t(ti)].second != qmono) continue;
                        F2Vec unit(ses_.total.dim(e.deg));
                        unit.set(ti);
                        F2Vec img = ses_.total.basis_action(e.deg, term.basis).apply(unit);
                        img = ses_.total.coef_action(e.deg + A.basis(term.basis).deg, *implied).apply(img);
                        tot ^= img;
                    }
                }
                /* the image lies in the sub block; translate to sub coordinates */
                F2Vec sub_elt(ses_.sub.dim(f.deg));
                const auto& sub_comp = ses_.sub.component(f.deg);
                for (int slot : tot.support()) {
                    auto [tgen, tmono] = tot_comp.slots[size_t(slot)];
                    int sgen = -1;
                    for (size_t i = 0; i < ses_.sub_to_total.size(); ++i)
                        if (ses_.sub_to_total[i] == tgen) sgen = int(i);
                    if (sgen < 0)
                        throw std::runtime_error("LesTriple: boundary is not in the submodule");
                    int si = sub_comp.index_of(sgen);
                    if (si < 0 || sub_comp.slots[size_t(si)].second != tmono)
                        throw std::runtime_error("LesTriple: submodule slot mismatch");
                    sub_elt.set(si);
                }
                F2Vec x(sub_res_.dim(0, f.deg));
                if (!sub_elt.is_zero()) {
                    if (!sub_res_.aug_matrix(f.deg).solve(sub_elt, x))
                        throw std::runtime_error("LesTriple: augmentation lift failed");
                }
                lam.push_back(std::move(x));
            } else {
                /* solve d'(x) = lambda_{s-1}(d'' f) */
                F2Vec rhs(sub_res_.dim(s - 2, f.deg));
                for (const auto& term : f.diff) {
                    const auto& e = quot_res_.gen(s - 1, term.gen);
                    auto implied = R.monomial_at(f.deg - A.basis(term.basis).deg - e.deg);
                    if (!implied) continue;
                    const F2Vec& prev = lambda_[size_t(s - 1)][size_t(term.gen)];
                    if (prev.size() == 0) continue;
                    rhs ^= sub_res_.mult(s - 2, e.deg, *implied, term.basis, prev);
                }
                F2Vec x(sub_res_.dim(s - 1, f.deg));
                if (!rhs.is_zero()) {
                    if (!sub_res_.diff_matrix(s - 1, f.deg).solve(rhs, x))
                        throw std::runtime_error("LesTriple: lambda lift failed at s=" + std::to_string(s));
                }
                lam.push_back(std::move(x));
            }
        }
    }
}

void LesTriple::build_total() {
    total_res_ = std::make_unique<Resolution>(ses_.total);
    total_res_->set_max_t(sub_res_.max_t());
    for (int s = 0; s < sub_res_.stages() && s < quot_res_.stages(); ++s) {
        /* sub generators first, then quotient generators */
        for (int g = 0; g < sub_res_.gen_count(s); ++g) {
            const auto& e = sub_res_.gen(s, g);
            F2Vec aug;
            if (s == 0) {
                aug = F2Vec(ses_.total.dim(e.deg));
                const auto& tc = ses_.total.component(e.deg);
                for (int slot : e.aug.support()) {
                    auto [sgen, smono] = ses_.sub.component(e.deg).slots[size_t(slot)];
                    int ti = tc.index_of(ses_.sub_to_total[size_t(sgen)]);
                    aug.set(ti);
                }
            }
            total_res_->add_generator(s, "i." + e.name, e.deg, e.diff, std::move(aug));
        }
        int offset = sub_res_.gen_count(s - 1 >= 0 ? s - 1 : 0);
        for (int g = 0; g < quot_res_.gen_count(s); ++g) {
            const auto& f = quot_res_.gen(s, g);
            std::vector<DiffTerm> diff;
            F2Vec aug;
            if (s == 0) {
                aug = F2Vec(ses_.total.dim(f.deg));
                const auto& tc = ses_.total.component(f.deg);
                for (int slot : f.aug.support()) {
                    auto [qgen, qmono] = ses_.quotient.component(f.deg).slots[size_t(slot)];
                    int ti = tc.index_of(ses_.quot_to_total[size_t(qgen)]);
                    aug.set(ti);
                }
            } else {
                /* quotient part, shifted past the sub block */
                for (const auto& term : f.diff)
                    diff.push_back(DiffTerm{term.basis, offset + term.gen});
                /* lambda part into sub generators */
                const F2Vec& lam = lambda_[size_t(s)][size_t(g)];
                const auto& slots = sub_res_.component(s - 1, f.deg);
                for (int idx : lam.support())
                    diff.push_back(DiffTerm{slots[size_t(idx)].basis, slots[size_t(idx)].gen});
                std::sort(diff.begin(), diff.end());
            }
            total_res_->add_generator(s, "p." + f.name, f.deg, std::move(diff), std::move(aug));
        }
    }
}

F2Vec LesTriple::delta(Tridegree sub_deg, const F2Vec& cocycle) const {
    Tridegree out_deg{sub_deg.s + 1, sub_deg.t, sub_deg.w};
    auto hom = hom_component(quot_res_, out_deg);
    F2Vec out(int(hom.size()));
    for (size_t i = 0; i < hom.size(); ++i) {
        int g = hom[i].first;
        const F2Vec& lam = lambda_[size_t(out_deg.s)][size_t(g)];
        if (lam.size() == 0) continue;
        if (eval_functional(sub_res_, out_deg.s - 1, quot_res_.gen(out_deg.s, g).deg, lam, sub_deg,
                            cocycle))
            out.set(int(i));
    }
    return out;
}

F2Vec LesTriple::restrict_to_sub(Tridegree d, const F2Vec& total_cocycle) const {
    auto tot_hom = hom_component(*total_res_, d);
    auto sub_hom = hom_component(sub_res_, d);
    int n_sub = sub_res_.gen_count(d.s);
    F2Vec out(int(sub_hom.size()));
    for (size_t i = 0; i < tot_hom.size(); ++i) {
        if (tot_hom[i].first >= n_sub) continue;
        if (!total_cocycle.get(int(i))) continue;
        for (size_t j = 0; j < sub_hom.size(); ++j)
            if (sub_hom[j].first == tot_hom[i].first) out.flip(int(j));
    }
    return out;
}

F2Vec LesTriple::extend_from_quot(Tridegree d, const F2Vec& quot_cocycle) const {
    auto tot_hom = hom_component(*total_res_, d);
    auto quot_hom = hom_component(quot_res_, d);
    int n_sub = sub_res_.gen_count(d.s);
    F2Vec out(int(tot_hom.size()));
    for (size_t i = 0; i < quot_hom.size(); ++i) {
        if (!quot_cocycle.get(int(i))) continue;
        for (size_t j = 0; j < tot_hom.size(); ++j)
            if (tot_hom[j].first == n_sub + quot_hom[i].first) out.flip(int(j));
    }
    return out;
}

void LesTriple::verify_les(const ExtChart& sub_chart, const ExtChart& total_chart,
                           const ExtChart& quot_chart) const {
    const ExtWindow& W = quot_chart.window();
    for (int s = 0; s + 1 <= W.max_s; ++s) {
        for (int stem = W.stem_lo; stem <= W.stem_hi; ++stem) {
            for (int w = W.w_lo; w <= W.w_hi; ++w) {
                Tridegree d{s, stem + s, w};
                Tridegree d1{s + 1, d.t, w};
                /* spans of images inside Ext(total), Ext(sub), Ext(quot) */
                int nt = total_chart.dim(d);
                int ns = sub_chart.dim(d);
                int nq1 = quot_chart.dim(d1);

                /* im(pi*) and ker(iota*) in Ext^s(total) */
                F2Span im_pi(nt);
                const auto* qc = quot_chart.cell(d);
                for (int i = 0; qc && i < int(qc->classes.size()); ++i) {
                    auto coords = total_chart.coordinates(d, extend_from_quot(d, qc->classes[size_t(i)].cocycle));
                    if (!coords) throw std::runtime_error("verify_les: pi* image is not a class");
                    im_pi.add(*coords);
                }
                F2Span ker_iota(nt);
                int ker_iota_dim = 0;
                const auto* tc = total_chart.cell(d);
                F2Span im_iota(ns);
                for (int i = 0; tc && i < int(tc->classes.size()); ++i) {
                    F2Vec r = restrict_to_sub(d, tc->classes[size_t(i)].cocycle);
                    auto coords = sub_chart.coordinates(d, r);
                    if (!coords) throw std::runtime_error("verify_les: iota* image is not a class");
                    im_iota.add(*coords);
                }
                /* rank-nullity: dim ker(iota*) = nt - dim im(iota*) */
                ker_iota_dim = nt - im_iota.dim();
                /* exactness at total: im(pi*) = ker(iota*); since im(pi*) is
                 * always inside the kernel, compare dimensions */
                const auto* qcell = quot_chart.cell(d);
                for (int i = 0; qcell && i < int(qcell->classes.size()); ++i) {
                    F2Vec r = restrict_to_sub(d, extend_from_quot(d, qcell->classes[size_t(i)].cocycle));
                    auto coords = sub_chart.coordinates(d, r);
                    if (!coords || !coords->is_zero())
                        throw std::runtime_error("verify_les: iota* . pi* != 0 at " + d.str());
                }
                if (im_pi.dim() != ker_iota_dim)
                    throw std::runtime_error("verify_les: inexact at Ext(total) " + d.str());

                /* exactness at sub: im(iota*) = ker(delta) */
                const auto* sc = sub_chart.cell(d);
                F2Span im_delta(nq1);
                int ker_delta_dim = 0;
                for (int i = 0; sc && i < int(sc->classes.size()); ++i) {
                    F2Vec dv = delta(d, sc->classes[size_t(i)].cocycle);
                    auto coords = quot_chart.coordinates(d1, dv);
                    if (!coords) throw std::runtime_error("verify_les: delta image is not a class");
                    im_delta.add(*coords);
                }
                if (sc) {
                    F2Matrix dmat(nq1, int(sc->classes.size()));
                    for (int i = 0; i < int(sc->classes.size()); ++i) {
                        auto coords = quot_chart.coordinates(d1, delta(d, sc->classes[size_t(i)].cocycle));
                        for (int r : coords->support()) dmat.set(r, i);
                    }
                    ker_delta_dim = int(sc->classes.size()) - dmat.rank();
                }
                /* iota* . delta-predecessor handled by symmetry; check im = ker via dims */
                if (im_iota.dim() != ker_delta_dim)
                    throw std::runtime_error("verify_les: inexact at Ext(sub) " + d.str());

                /* exactness at quot in degree s+1: im(delta) = ker(pi*) */
                int nt1 = total_chart.dim(d1);
                const auto* qc1 = quot_chart.cell(d1);
                F2Span im_pi1(nt1);
                int ker_pi1 = 0;
                if (qc1) {
                    F2Matrix pmat(nt1, int(qc1->classes.size()));
                    for (int i = 0; i < int(qc1->classes.size()); ++i) {
                        auto coords =
                            total_chart.coordinates(d1, extend_from_quot(d1, qc1->classes[size_t(i)].cocycle));
                        if (!coords) throw std::runtime_error("verify_les: pi* image is not a class");
                        for (int r : coords->support()) pmat.set(r, i);
                    }
                    ker_pi1 = int(qc1->classes.size()) - pmat.rank();
                }
                if (im_delta.dim() != ker_pi1)
                    throw std::runtime_error("verify_les: inexact at Ext(quot) " + d1.str());
            }
        }
    }
}

} // namespace motex
