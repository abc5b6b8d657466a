#pragma once

#include "motex/ext.hpp"

#include <map>
#include <string>
#include <vector>

namespace motex {

/* multiplication-by-h0 between adjacent filtrations of a chart, one matrix
 * per tridegree (class coordinates) */
struct H0Action {
    std::map<Tridegree, F2Matrix> maps;
    const F2Matrix* at(Tridegree d) const {
        auto it = maps.find(d);
        return it == maps.end() ? nullptr : &it->second;
    }
};

/* computed at chain level through one-stage lifts */
H0Action compute_h0_action(const ProductContext& ctx);

/* extra filtration-jumping edges supplied by annotation records; the shape of
 * a splice is an explicit matrix per tridegree, same shape as H0Action */
using HiddenH0 = H0Action;

struct GroupSummand {
    int length = 1;     /* Z/2^length, ignored when infinite */
    bool infinite = false;
    int start_s = 0;
    std::string generator;
};

struct AssemblyEntry {
    std::vector<GroupSummand> summands;
    int f2_length = 0; /* number of E-infinity classes in the column */
    bool has_infinite = false;
    bool ambiguous = false;
};

struct AbelianTable {
    std::map<std::pair<int, int>, AssemblyEntry> entries; /* (stem, weight) */
    int s_ceiling = 0;

    const AssemblyEntry* at(int stem, int w) const {
        auto it = entries.find({stem, w});
        return it == entries.end() ? nullptr : &it->second;
    }
    /* total 2-adic length; -1 when a 2-adic-integers summand is present */
    int length(int stem, int w) const;
    std::string describe(int stem, int w) const;
};

/* Assemble each (stem, weight) column of an E-infinity chart into an abelian
 * group: a maximal h0-chain of length k gives Z/2^k, a chain still alive at
 * the filtration ceiling gives the 2-adic integers.  Hidden h0-extensions
 * enter as extra edges, never inferred. */
AbelianTable abelian_assembly(const ExtChart& chart, const H0Action& h0,
                              const HiddenH0* hidden = nullptr);

} // namespace motex
