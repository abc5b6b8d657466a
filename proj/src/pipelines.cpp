#include "motex/pipelines.hpp"

#include <algorithm>
#include <stdexcept>

namespace motex {

PresentedModule bc2_module(Theory theory, const BaseRing& base, int truncation,
                           std::shared_ptr<const AlgebraTable>* out_alg) {
    AlgebraName name = theory_algebra(theory);
    auto a1 = std::make_shared<AlgebraTable>(AlgebraTable::make(AlgebraName::A1, base));
    PresentedModule over_a1 = bc2_cohomology(a1, truncation);
    if (name == AlgebraName::A1) {
        if (out_alg) *out_alg = a1;
        return over_a1;
    }
    auto sub = std::make_shared<AlgebraTable>(AlgebraTable::make(name, base));
    if (out_alg) *out_alg = sub;
    return restrict_module(over_a1, sub);
}

int required_max_t(FieldTag tag, const ExtWindow& window) {
    int t_hi = window.stem_hi + window.max_s + 1;
    BaseRing base = BaseRing::make(tag, tag == FieldTag::FqOne ? 5 : tag == FieldTag::FqThree ? 3 : 0);
    if (!base.has_sec()) return t_hi;
    if (base.sec_square_zero()) return t_hi + 1;
    int depth = window.stem_hi + window.max_s - window.w_lo;
    return std::max(t_hi, 2 * (depth + 2) + 2);
}

AdamsSide adams_bc2(Theory theory, FieldTag tag, int q, const ExtWindow& window, int threads) {
    (void)threads;
    BaseRing base = BaseRing::make(tag, q);
    int max_t = required_max_t(tag, window);
    AdamsSide out;
    out.module = std::make_unique<PresentedModule>(
        bc2_module(theory, base, max_t + 2, &out.algebra));
    out.resolution = std::make_unique<Resolution>(*out.module);
    out.resolution->extend(window.max_s + 1, max_t);
    out.chart = ext_groups(*out.resolution, window);
    return out;
}

AdamsSide adams_coefficients(Theory theory, FieldTag tag, int q, const ExtWindow& window,
                             int threads) {
    (void)threads;
    BaseRing base = BaseRing::make(tag, q);
    int max_t = required_max_t(tag, window);
    AdamsSide out;
    auto alg = std::make_shared<AlgebraTable>(AlgebraTable::make(theory_algebra(theory), base));
    out.algebra = alg;
    out.module = std::make_unique<PresentedModule>(trivial_module(alg, max_t + 2));
    out.resolution = std::make_unique<Resolution>(*out.module);
    out.resolution->extend(window.max_s + 1, max_t);
    out.chart = ext_groups(*out.resolution, window);
    return out;
}

AbelianTable assemble_bc2(Theory theory, FieldTag tag, int q, const ExtWindow& window) {
    AdamsSide side = adams_bc2(theory, tag, q, window);
    /* h0 is lifted through a resolution of the coefficients on the same
     * degree range */
    Resolution coef(trivial_module(side.algebra, side.resolution->max_t() + 2));
    coef.extend(3, side.resolution->max_t());
    ExtChart coef_chart = ext_groups(coef, ExtWindow{2, -1, 1, -1, 1});
    ProductContext ctx{side.resolution.get(), &coef, &side.chart, &coef_chart};
    H0Action h0 = compute_h0_action(ctx);
    return abelian_assembly(side.chart, h0);
}

} // namespace motex
