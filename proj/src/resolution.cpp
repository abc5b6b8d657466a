#include "motex/resolution.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace motex {

Resolution::Resolution(PresentedModule module) : module_(std::move(module)) {}

int Resolution::add_generator(int s, const std::string& name, Bidegree deg, std::vector<DiffTerm> diff,
                              F2Vec aug) {
    if (s > int(stage_.size())) throw std::logic_error("add_generator: stage gap");
    if (s == int(stage_.size())) stage_.emplace_back();
    invalidate_caches(s);
    stage_[size_t(s)].push_back(Gen{name, deg, std::move(diff), std::move(aug)});
    return int(stage_[size_t(s)].size()) - 1;
}

void Resolution::invalidate_caches(int s) {
    for (auto it = comp_cache_.begin(); it != comp_cache_.end();)
        it = it->first.first == s ? comp_cache_.erase(it) : std::next(it);
    for (auto it = diff_cache_.begin(); it != diff_cache_.end();)
        it = (it->first.first == s || it->first.first == s + 1) ? diff_cache_.erase(it) : std::next(it);
    if (s == 0) aug_cache_.clear();
}

const std::vector<FreeSlot>& Resolution::component(int s, Bidegree d) const {
    auto key = std::make_pair(s, d);
    auto it = comp_cache_.find(key);
    if (it != comp_cache_.end()) return it->second;
    std::vector<FreeSlot> slots;
    const auto& gens = stage_[size_t(s)];
    const AlgebraTable& A = algebra();
    const BaseRing& R = A.base();
    for (int g = 0; g < int(gens.size()); ++g) {
        for (int b = 0; b < A.rank(); ++b) {
            auto m = R.monomial_at(d - gens[size_t(g)].deg - A.basis(b).deg);
            if (m) slots.push_back(FreeSlot{g, b, *m});
        }
    }
    return comp_cache_.emplace(key, std::move(slots)).first->second;
}

int Resolution::slot_index(int s, Bidegree d, int gen, int basis) const {
    const auto& slots = component(s, d);
    for (size_t i = 0; i < slots.size(); ++i)
        if (slots[i].gen == gen && slots[i].basis == basis) return int(i);
    return -1;
}

const F2Matrix& Resolution::diff_matrix(int s, Bidegree d) const {
    auto key = std::make_pair(s, d);
    auto it = diff_cache_.find(key);
    if (it != diff_cache_.end()) return it->second;

    const auto& src = component(s, d);
    const auto& dst = component(s - 1, d);
    const AlgebraTable& A = algebra();
    const BaseRing& R = A.base();
    F2Matrix mat(int(dst.size()), int(src.size()));
    for (size_t col = 0; col < src.size(); ++col) {
        const auto& slot = src[col];
        const Gen& g = stage_[size_t(s)][size_t(slot.gen)];
        for (const auto& term : g.diff) {
            const Gen& tgt = stage_[size_t(s - 1)][size_t(term.gen)];
            auto implied = R.monomial_at(g.deg - A.basis(term.basis).deg - tgt.deg);
            if (!implied) continue;
            AlgElt prod = A.mul({AlgTerm{slot.mono, slot.basis}}, {AlgTerm{*implied, term.basis}});
            for (const auto& p : prod) {
                int row = slot_index(s - 1, d, term.gen, p.b);
                if (row >= 0 && dst[size_t(row)].mono == p.c) mat.row(row).flip(int(col));
            }
        }
    }
    return diff_cache_.emplace(key, std::move(mat)).first->second;
}

const F2Matrix& Resolution::aug_matrix(Bidegree d) const {
    auto it = aug_cache_.find(d);
    if (it != aug_cache_.end()) return it->second;

    const auto& src = component(0, d);
    const auto& M = module_;
    F2Matrix mat(M.dim(d), int(src.size()));
    for (size_t col = 0; col < src.size(); ++col) {
        const auto& slot = src[col];
        const Gen& g = stage_[0][size_t(slot.gen)];
        /* (mono . basis) applied to the augmentation element */
        F2Vec v = M.basis_action(g.deg, slot.basis).apply(g.aug);
        v = M.coef_action(g.deg + algebra().basis(slot.basis).deg, slot.mono).apply(v);
        for (int r : v.support()) mat.row(r).flip(int(col));
    }
    return aug_cache_.emplace(d, std::move(mat)).first->second;
}

F2Vec Resolution::mult(int s, Bidegree src, CoefMono c, int basis, const F2Vec& v) const {
    const AlgebraTable& A = algebra();
    Bidegree dst_deg = src + A.base().mono_deg(c) + A.basis(basis).deg;
    const auto& src_slots = component(s, src);
    const auto& dst = component(s, dst_deg);
    F2Vec out(int(dst.size()));
    for (int col : v.support()) {
        const auto& slot = src_slots[size_t(col)];
        AlgElt prod = A.mul({AlgTerm{c, basis}}, {AlgTerm{slot.mono, slot.basis}});
        for (const auto& p : prod) {
            int row = slot_index(s, dst_deg, slot.gen, p.b);
            if (row >= 0 && dst[size_t(row)].mono == p.c) out.flip(row);
        }
    }
    return out;
}

F2Vec Resolution::apply_diff(int s, Bidegree d, const F2Vec& v) const {
    return diff_matrix(s, d).apply(v);
}

std::string Resolution::slot_name(int s, Bidegree d, int slot) const {
    const auto& sl = component(s, d)[size_t(slot)];
    const AlgebraTable& A = algebra();
    std::ostringstream os;
    std::string c = A.base().mono_str(sl.mono);
    if (c != "1") os << c << ' ';
    if (sl.basis != 0) os << A.basis(sl.basis).label << ' ';
    os << stage_[size_t(s)][size_t(sl.gen)].name;
    return os.str();
}

int Resolution::weight_ceiling(int s, int t) const {
    const AlgebraTable& A = algebra();
    const BaseRing& R = A.base();
    int hi = 0;
    for (const auto& g : stage_[size_t(s)]) {
        for (int b = 0; b < A.rank(); ++b) {
            int t0 = g.deg.t + A.basis(b).deg.t;
            if (t0 > t) continue;
            int c = t - t0;
            if (R.has_sec() && c <= R.sec_cap())
                hi = std::max(hi, g.deg.w + A.basis(b).deg.w + c);
            if (c == 0) hi = std::max(hi, g.deg.w + A.basis(b).deg.w);
        }
    }
    return hi;
}

bool Resolution::cell_certified(Tridegree d) const {
    const BaseRing& R = algebra().base();
    if (!R.has_sec()) return d.t <= max_t_;
    if (R.sec_square_zero()) return d.t <= max_t_ - 1;
    return d.t <= max_t_ && (d.t - d.w) <= max_t_ / 2 - 2;
}

void Resolution::build_stage(int s) {
    if (s != int(stage_.size())) throw std::logic_error("build_stage: wrong order");
    stage_.emplace_back();
    std::string prefix = "g" + std::to_string(s) + "_";

    for (int t = 0; t <= max_t_; ++t) {
        /* kernel components are tau-periodic above the ceiling of the two
         * neighbouring stages */
        int w_hi = 0;
        if (s == 0) {
            w_hi = module_.weight_ceiling(t);
        } else {
            w_hi = weight_ceiling(s - 1, t);
            if (s >= 2) w_hi = std::max(w_hi, weight_ceiling(s - 2, t));
        }
        for (int w = 0; w <= w_hi; ++w) {
            Bidegree d{t, w};
            F2Span covered;
            std::vector<F2Vec> kernel;
            if (s == 0) {
                int n = module_.dim(d);
                if (n == 0) continue;
                covered = F2Span(n);
                /* cover the whole component */
                const auto& comp = component(0, d);
                for (size_t i = 0; i < comp.size(); ++i) {
                    F2Vec v(int(comp.size()));
                    v.set(int(i));
                    covered.add(aug_matrix(d).apply(v));
                }
                for (int i = 0; i < n; ++i) {
                    F2Vec v(n);
                    v.set(i);
                    if (!covered.contains(v)) {
                        /* new stage-0 generator mapping onto this element */
                        F2Vec aug(n);
                        aug.set(i);
                        add_generator(0, prefix + std::to_string(t) + "_" + std::to_string(w) + "_" +
                                             std::to_string(gen_count(0)),
                                      d, {}, aug);
                        covered.add(aug);
                    }
                }
            } else {
                const F2Matrix& down =
                    s == 1 ? aug_matrix(d) : diff_matrix(s - 1, d);
                kernel = down.kernel_basis();
                if (kernel.empty()) continue;
                covered = F2Span(int(down.cols()));
                /* image of the stage built so far */
                const auto& comp = component(s, d);
                for (size_t i = 0; i < comp.size(); ++i) {
                    F2Vec v(int(comp.size()));
                    v.set(int(i));
                    covered.add(apply_diff(s, d, v));
                }
                for (const auto& k : kernel) {
                    if (covered.contains(k)) continue;
                    /* new generator with differential k */
                    std::vector<DiffTerm> diff;
                    const auto& dn = component(s - 1, d);
                    for (int idx : k.support())
                        diff.push_back(DiffTerm{dn[size_t(idx)].basis, dn[size_t(idx)].gen});
                    std::sort(diff.begin(), diff.end());
                    add_generator(s, prefix + std::to_string(t) + "_" + std::to_string(w) + "_" +
                                         std::to_string(gen_count(s)),
                                  d, std::move(diff));
                    covered.add(k);
                }
            }
        }
    }
}

void Resolution::extend(int max_s, int max_t) {
    if (max_t < max_t_)
        throw std::runtime_error("extend: cannot shrink the degree window");
    if (max_t > module_.truncation())
        throw std::runtime_error("extend: window exceeds the module truncation");
    if (max_t > max_t_) {
        if (!stage_.empty())
            throw std::runtime_error("extend: enlarge max_t before the first stage is built");
        max_t_ = max_t;
    }
    while (int(stage_.size()) <= max_s) build_stage(int(stage_.size()));
}

void Resolution::certify(int through_s, int t_bound) const {
    for (int s = 1; s <= through_s && s < stages(); ++s) {
        for (int t = 0; t <= t_bound; ++t) {
            int w_hi = weight_ceiling(s, t) + 1;
            for (int w = 0; w <= w_hi; ++w) {
                Bidegree d{t, w};
                if (dim(s, d) == 0) continue;
                const F2Matrix& dn = diff_matrix(s, d);
                /* d . d = 0 */
                const F2Matrix& dn2 = s == 1 ? aug_matrix(d) : diff_matrix(s - 1, d);
                if (!(dn2 * dn).is_zero())
                    throw std::runtime_error("certify: d.d != 0 at s=" + std::to_string(s) + " " + d.str());
                /* exactness at s-1: ker(down) = im(d_s) */
                if (s + 1 < stages()) {
                    int nullity = dim(s, d) - dn.rank();
                    int rank_up = diff_matrix(s + 1, d).rank();
                    if (nullity != rank_up)
                        throw std::runtime_error("certify: inexact at s=" + std::to_string(s) + " " +
                                                 d.str());
                }
            }
        }
    }
    /* surjectivity of the augmentation */
    for (int t = 0; t <= t_bound; ++t) {
        int w_hi = module_.weight_ceiling(t) + 1;
        for (int w = 0; w <= w_hi; ++w) {
            Bidegree d{t, w};
            if (module_.dim(d) == 0) continue;
            if (aug_matrix(d).rank() != module_.dim(d))
                throw std::runtime_error("certify: augmentation not onto at " + d.str());
        }
    }
}

} // namespace motex
