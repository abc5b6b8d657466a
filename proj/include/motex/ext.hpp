#pragma once

#include "motex/resolution.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace motex {

struct ExtWindow {
    int max_s = 0; /* classes reported for s <= max_s */
    int stem_lo = 0;
    int stem_hi = 0;
    int w_lo = 0;
    int w_hi = 0;
    bool contains(Tridegree d) const {
        return d.s >= 0 && d.s <= max_s && d.stem() >= stem_lo && d.stem() <= stem_hi &&
               d.w >= w_lo && d.w <= w_hi;
    }
};

/* Tri-graded Ext classes of Hom(F, M2): each cell keeps the hom-component
 * basis (stage generators with realizable gap), chosen class representatives
 * and the boundary span, so arbitrary cocycles can be expressed in class
 * coordinates. */
class ExtChart {
public:
    struct ClassInfo {
        std::string name;
        F2Vec cocycle;
    };
    struct Cell {
        std::vector<int> hom_gens;
        std::vector<CoefMono> hom_monos;
        std::vector<ClassInfo> classes;
        F2Span boundary_then_classes; /* boundaries inserted first */
        std::vector<int> class_idx;   /* insertion index of each class */
        int n_boundary = 0;
    };

    const Cell* cell(Tridegree d) const;
    int dim(Tridegree d) const;
    /* class coordinates of a cocycle vector, reduced mod boundaries */
    std::optional<F2Vec> coordinates(Tridegree d, const F2Vec& cocycle) const;
    /* the unique class at d; throws unless dim == 1 */
    F2Vec unique_class(Tridegree d) const;

    const ExtWindow& window() const { return window_; }
    const std::map<Tridegree, Cell>& cells() const { return cells_; }
    int total_dim() const;

    /* rename a class (chart display) */
    void set_name(Tridegree d, int index, const std::string& name);
    const std::string& class_name(Tridegree d, int index) const;

private:
    friend ExtChart ext_groups(const Resolution& res, const ExtWindow& window);
    ExtWindow window_;
    std::map<Tridegree, Cell> cells_;
};

/* homology of Hom(F_*, M2) per tridegree over the window; the resolution
 * must be built through stage max_s + 1 */
ExtChart ext_groups(const Resolution& res, const ExtWindow& window);

/* hom-component basis of Hom(F_s, M2)^(t,w) */
std::vector<std::pair<int, CoefMono>> hom_component(const Resolution& res, Tridegree d);

/* evaluate a hom-functional (cocycle over hom_component(res, fdeg)) on an
 * element of F_s at elt_deg; the value lives in the unique monomial of
 * bidegree elt_deg - (fdeg.t, fdeg.w) */
bool eval_functional(const Resolution& res, int s, Bidegree elt_deg, const F2Vec& elt,
                     Tridegree fdeg, const F2Vec& functional);

/* chain map F_{s0+k} -> P_k lifting a cocycle on F at x_deg through the
 * augmentation of P (a resolution of the trivial module, possibly shifted) */
class ChainLift {
public:
    ChainLift(const Resolution& F, const Resolution& P, Tridegree x_deg, F2Vec cocycle);
    void extend(int k_max);

    const Resolution& domain() const { return *F_; }
    const Resolution& target() const { return *P_; }
    Tridegree degree() const { return x_deg_; }
    /* image of generator i of F-stage (x_deg.s + k) in P_k */
    const F2Vec& at(int k, int gen) const { return data_[size_t(k)][size_t(gen)]; }

private:
    const Resolution* F_;
    const Resolution* P_;
    Tridegree x_deg_;
    F2Vec cocycle_;
    std::vector<std::vector<F2Vec>> data_;
};

/* Yoneda product: multiply a class on F (through its lift) by a class of
 * Ext(M2) held on P; returns the product cocycle on F */
F2Vec yoneda_product(const ChainLift& lift, Tridegree xi_deg, const F2Vec& xi_cocycle);

/* multiplication by a coefficient monomial: cocycle at d -> cocycle at
 * (d.s, d.t + deg.t, d.w + deg.w) sign-free */
F2Vec coef_structure_map(const Resolution& res, Tridegree d, const F2Vec& cocycle, CoefMono c);

/* product action on chart classes; returns nullopt when the composite falls
 * outside the certified window ("unknown", never silently zero) */
struct ProductContext {
    const Resolution* F;
    const Resolution* P; /* resolution of the trivial module */
    const ExtChart* chart;
    ExtChart* p_chart; /* chart of Ext(M2) on P */
};
std::optional<F2Vec> product_action(const ProductContext& ctx, Tridegree x_deg, const F2Vec& x_coords,
                                    Tridegree xi_deg, const F2Vec& xi_coords);

/* the connecting homomorphism of a short exact sequence, computed at chain
 * level by the horseshoe construction */
class LesTriple {
public:
    LesTriple(Ses ses, int max_s, int max_t);

    const Ses& ses() const { return ses_; }
    Resolution& sub_res() { return sub_res_; }
    Resolution& quot_res() { return quot_res_; }
    Resolution& total_res() { return *total_res_; }

    /* delta: Ext^{s}(sub) -> Ext^{s+1}(quotient); input and output are raw
     * cocycle vectors */
    F2Vec delta(Tridegree sub_deg, const F2Vec& cocycle) const;

    /* restriction of a total cocycle to the sub block, and extension of a
     * quotient cocycle by zero */
    F2Vec restrict_to_sub(Tridegree d, const F2Vec& total_cocycle) const;
    F2Vec extend_from_quot(Tridegree d, const F2Vec& quot_cocycle) const;

    /* verify exactness of the induced long exact sequence on the given
     * charts at every tridegree in the window; throws on failure */
    void verify_les(const ExtChart& sub_chart, const ExtChart& total_chart,
                    const ExtChart& quot_chart) const;

private:
    void build_lambda(int max_s);
    void build_total();

    Ses ses_;
    Resolution sub_res_;
    Resolution quot_res_;
    std::unique_ptr<Resolution> total_res_;
    /* lambda_[s][gen of quot stage s] = element of sub stage s-1 at gen degree */
    std::vector<std::vector<F2Vec>> lambda_;
};

} // namespace motex
