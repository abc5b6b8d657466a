#pragma once

#include "motex/f2.hpp"
#include "motex/steenrod.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace motex {

struct ModuleGen {
    std::string name;
    Bidegree deg;
};

/* A module over an AlgebraTable, free over the coefficients on named
 * generators, truncated above internal degree T.  The action of each algebra
 * generator on each module generator is a list of target generators; the
 * coefficient of every target is the unique monomial filling the degree gap.
 * Action on coefficient multiples follows from the Cartan formula. */
class PresentedModule {
public:
    PresentedModule(std::shared_ptr<const AlgebraTable> alg, std::string name,
                    std::vector<ModuleGen> gens, int truncation);

    /* entry: value of letter on generator gen contains target (mod 2) */
    void add_action(int letter, int gen, int target_gen);
    void add_action(int letter, const std::string& gen, const std::string& target_gen);
    void seal(); /* freeze and sanity-check entries */

    const AlgebraTable& algebra() const { return *alg_; }
    std::shared_ptr<const AlgebraTable> algebra_ptr() const { return alg_; }
    const BaseRing& base() const { return alg_->base(); }
    const std::string& name() const { return name_; }
    int truncation() const { return trunc_; }
    int gen_count() const { return int(gens_.size()); }
    const ModuleGen& gen(int i) const { return gens_[size_t(i)]; }
    int gen_index(const std::string& name) const;
    const std::vector<int>& entry(int letter, int gen) const { return entries_[size_t(letter)][size_t(gen)]; }

    /* bidegree component: ordered slots (generator, coefficient monomial) */
    struct Component {
        std::vector<std::pair<int, CoefMono>> slots;
        int index_of(int gen) const; /* -1 if absent */
    };
    const Component& component(Bidegree d) const;
    int dim(Bidegree d) const { return int(component(d).slots.size()); }

    /* action matrices between components (rows = target, cols = source) */
    const F2Matrix& letter_action(Bidegree d, int letter) const;
    F2Matrix word_action(Bidegree d, const Word& w) const;
    F2Matrix basis_action(Bidegree d, int basis_elt) const;
    /* multiplication by a coefficient monomial */
    F2Matrix coef_action(Bidegree d, CoefMono c) const;

    std::string slot_name(Bidegree d, int slot) const;

    struct Violation {
        std::string relation;
        Bidegree at;
        std::string witness;
    };
    /* check every algebra relation (product table) on every component whose
     * composite stays under the truncation */
    std::vector<Violation> validate() const;
    void validate_or_throw() const;

    /* highest weight at which a component of internal degree t contains a
     * tau-free slot; components above are tau-multiples of lower ones */
    int weight_ceiling(int t) const;

private:
    std::shared_ptr<const AlgebraTable> alg_;
    std::string name_;
    std::vector<ModuleGen> gens_;
    int trunc_;
    std::vector<std::vector<std::vector<int>>> entries_; /* [letter][gen] -> targets */
    bool sealed_ = false;

    mutable std::map<Bidegree, Component> comp_cache_;
    mutable std::map<std::pair<Bidegree, int>, F2Matrix> action_cache_;
};

/* --- constructors for the modules of the computation --- */

/* reduced cohomology of BC2: generators x^e y^j (motivic) or u^i (classical) */
PresentedModule bc2_cohomology(std::shared_ptr<const AlgebraTable> alg, int truncation);

/* rank-one trivial module in degree (0,0) */
PresentedModule trivial_module(std::shared_ptr<const AlgebraTable> alg, int truncation,
                               Bidegree shift = {0, 0});

/* restrict a module along a subalgebra inclusion (E1 or A0 inside A1);
 * actions of the smaller algebra's generators are computed as composites */
PresentedModule restrict_module(const PresentedModule& m, std::shared_ptr<const AlgebraTable> sub);

/* quotient of the left regular module by the left ideal generated by the
 * given elements; generators are located by a degreewise sweep */
PresentedModule induced_module(std::shared_ptr<const AlgebraTable> alg, const std::vector<AlgElt>& ideal,
                               const std::string& name, int truncation);
/* A(1)//A(0), A(1)//E(1), E(1)//A(0) */
PresentedModule quotient_algebra_module(std::shared_ptr<const AlgebraTable> alg, AlgebraName killed,
                                        int truncation);

struct Ses {
    PresentedModule sub, total, quotient;
    std::vector<int> sub_to_total;   /* generator indices */
    std::vector<int> quot_to_total;
};

enum class SesScheme { KglSplit, KqQR, KqQC, ClassicalKu, ClassicalKoQ };
SesScheme parse_ses_scheme(const std::string& s);

Ses build_ses(SesScheme scheme, const PresentedModule& module);

/* verify degreewise exactness of sub -> total -> quotient up to t <= bound */
void check_ses_exactness(const Ses& ses, int t_bound);

enum class FiltrationScheme { V, R };

struct FiltrationStage {
    PresentedModule subquotient;
    PresentedModule expected; /* shifted induced module it must match */
    Bidegree shift;
};

std::vector<FiltrationStage> filtration(const PresentedModule& module, FiltrationScheme scheme);

/* check a degree-preserving generator bijection intertwining the actions */
bool modules_isomorphic(const PresentedModule& a, const PresentedModule& b, std::string* why = nullptr);

/* text format round trip */
PresentedModule module_from_records(const std::vector<Record>& recs,
                                    std::shared_ptr<const AlgebraTable> alg);
std::string module_to_text(const PresentedModule& m);

} // namespace motex
