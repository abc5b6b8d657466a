#pragma once

#include "motex/module.hpp"

#include <map>
#include <string>
#include <vector>

namespace motex {

/* term of a free-module differential: (algebra basis element) . (generator);
 * the coefficient is the unique monomial filling the degree gap */
struct DiffTerm {
    int basis = 0;
    int gen = 0;
    auto operator<=>(const DiffTerm&) const = default;
};

/* slot of a free-module bidegree component */
struct FreeSlot {
    int gen = 0;
    int basis = 0;
    CoefMono mono;
};

/* A chain of free modules over the module's algebra resolving it.  Stage 0
 * augments onto the module; generators of stage s >= 1 are found by a
 * deterministic degreewise kernel sweep (lowest (t, w) first, reduced echelon
 * tie-break).  d . d = 0 holds by construction and is certified together
 * with degreewise exactness. */
class Resolution {
public:
    explicit Resolution(PresentedModule module);

    struct Gen {
        std::string name;
        Bidegree deg;
        std::vector<DiffTerm> diff; /* for stage >= 1 */
        F2Vec aug;                  /* for stage 0: module element at deg */
    };

    const PresentedModule& module() const { return module_; }
    const AlgebraTable& algebra() const { return module_.algebra(); }
    int stages() const { return int(stage_.size()); }
    int max_t() const { return max_t_; }
    int gen_count(int s) const { return int(stage_[size_t(s)].size()); }
    const Gen& gen(int s, int i) const { return stage_[size_t(s)][size_t(i)]; }

    /* grow to homological stage max_s, internal degree <= max_t */
    void extend(int max_s, int max_t);

    /* manual construction for oracle and horseshoe resolutions */
    int add_generator(int s, const std::string& name, Bidegree deg, std::vector<DiffTerm> diff,
                      F2Vec aug = F2Vec());
    void set_max_t(int t) { max_t_ = std::max(max_t_, t); }

    const std::vector<FreeSlot>& component(int s, Bidegree d) const;
    int dim(int s, Bidegree d) const { return int(component(s, d).size()); }
    int slot_index(int s, Bidegree d, int gen, int basis) const;

    /* F_s^(d) -> F_{s-1}^(d) (s >= 1) */
    const F2Matrix& diff_matrix(int s, Bidegree d) const;
    /* F_0^(d) -> M^(d) */
    const F2Matrix& aug_matrix(Bidegree d) const;

    /* left multiplication by c . basis: F_s^(src) -> F_s^(src + deg) */
    F2Vec mult(int s, Bidegree src, CoefMono c, int basis, const F2Vec& v) const;
    /* apply the differential to an element */
    F2Vec apply_diff(int s, Bidegree d, const F2Vec& v) const;

    std::string slot_name(int s, Bidegree d, int slot) const;

    /* d . d = 0 and per-bidegree exactness through stage s <= through_s,
     * internal degree <= t_bound; throws with the failing position */
    void certify(int through_s, int t_bound) const;

    /* highest weight with a tau-free slot at internal degree t */
    int weight_ceiling(int s, int t) const;

    /* Cells of Ext^{s,(t,w)} are confirmed only where no generator beyond
     * max_t can pair with them.  Without a second coefficient generator the
     * pairing forces t = t_gen; with a square-zero one it reaches one step;
     * over a polynomial rho the reach is bounded through the coweight of the
     * generators, which grows at least like t/2 for the module families
     * resolved here (cross-checked against the Bockstein runs). */
    bool cell_certified(Tridegree d) const;

private:
    void build_stage(int s);
    void invalidate_caches(int s);

    PresentedModule module_;
    int max_t_ = -1;
    std::vector<std::vector<Gen>> stage_;
    mutable std::map<std::pair<int, Bidegree>, std::vector<FreeSlot>> comp_cache_;
    mutable std::map<std::pair<int, Bidegree>, F2Matrix> diff_cache_;
    mutable std::map<Bidegree, F2Matrix> aug_cache_;
};

} // namespace motex
