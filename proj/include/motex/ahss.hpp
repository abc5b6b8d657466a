#pragma once

#include "motex/assembly.hpp"
#include "motex/sspage.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace motex {

enum class Theory { HZ, KU, KO, KGL, KQ };
std::string theory_name(Theory t);
Theory parse_theory(const std::string& s);
AlgebraName theory_algebra(Theory t);

/* one cell per dimension 1..N; cell n has weight ceil(n/2); every even cell
 * is attached to the odd cell below it by a degree-2 map, and cells
 * congruent to 0, 1 mod 4 carry an eta label two dimensions down */
struct CellComplex {
    int skeleton = 0;
    bool classical = false;

    static CellComplex build(int n, bool classical);
    int weight(int cell) const { return classical ? 0 : (cell + 1) / 2; }
    bool two_attaching(int cell) const { return cell >= 2 && cell % 2 == 0; }
    bool eta_attaching(int cell) const { return cell >= 4 && (cell % 4 == 0 || cell % 4 == 1); }
};

/* Named presentation of E_{**} used as AHSS input: the irreducible monomials
 * of an E-infinity page of the coefficient Adams spectral sequence, with
 * action edges for 2, eta, v1, alpha, beta.  Filtration-jumping values that
 * vanish symbolically (hidden extensions) come from annotation records. */
class CoefficientTable {
public:
    struct HiddenRule {
        std::string op;      /* the acting element */
        std::string kind;    /* extra-factor | tower-swap | eta-alpha */
        PageMono require;    /* divisibility precondition */
        PageMono forbid;     /* must not divide */
        PageMono factor;     /* extra-factor: result = m . factor */
        PageMono per_h0;     /* tower-swap: h0^j x -> op-gen . per_h0^j . x */
        int q = 0;           /* eta-alpha: the field order */
        std::string note;
    };

    CoefficientTable(Theory theory, FieldTag tag, int q, RingSpec ring,
                     std::shared_ptr<PageRun> einf, std::vector<HiddenRule> hidden);

    Theory theory() const { return theory_; }
    FieldTag tag() const { return tag_; }
    const RingSpec& ring() const { return ring_; }

    bool alive(const PageMono& m) const;
    std::vector<PageMono> group(int stem, int w, int h0_cap) const;

    struct ActResult {
        PageMono target;
        bool hidden = false;
    };
    /* value of op . m, consulting hidden rules when the symbolic product
     * dies; nullopt when the value is zero */
    std::optional<ActResult> act(const std::string& op, const PageMono& m) const;

    /* tower lengths per (stem, w): one entry per h0-free monomial */
    std::vector<std::pair<PageMono, int>> towers(int stem, int w, int h0_cap) const;

private:
    Theory theory_;
    FieldTag tag_;
    int q_;
    RingSpec ring_;
    std::shared_ptr<PageRun> einf_; /* null: the first page is the last */
    std::vector<HiddenRule> hidden_;
};

/* coefficient table with the theory's Bockstein/Adams runs applied; rules
 * and annotations are loaded from the data directory */
CoefficientTable coefficient_table(Theory theory, FieldTag tag, int q, int stem_lo, int stem_hi,
                                   int s_hi, int w_lo);

struct AhssRule {
    int page = 0;
    int mod = 1, residue = 0, min_f = 0; /* source filtration guard */
    bool action_kind = true;
    bool hit_top = false;      /* bracket value is the top of the target tower */
    std::string op;            /* action rules: multiply by op */
    PageMono pattern, target;  /* bracket rules: P y -> Q y */
    std::string note;
};

std::vector<AhssRule> ahss_rules_from_records(const std::vector<Record>& recs,
                                              const CoefficientTable& table);
std::vector<AhssRule> load_ahss_rules(Theory theory, FieldTag tag, const CoefficientTable& table);

struct AhssOptions {
    int n_lo = 0;
    int n_hi = 12;
    int w_lo = -12;
    int h0_cap = 18;
    int skeleton = 24;
};

/* a table whose page window covers every slot the AHSS options can probe */
CoefficientTable coefficient_table_for(Theory theory, FieldTag tag, int q, const AhssOptions& opt);

struct AhssResult {
    /* E-infinity slots per (total stem, total weight): (filtration, monomial) */
    std::map<std::pair<int, int>, std::vector<std::pair<int, PageMono>>> einf;
    std::map<std::pair<int, int>, int> gr_rank;
    struct Fired {
        int page, f, n, w, rank;
    };
    std::vector<Fired> log;
    std::vector<std::string> notes;
    int collapsed_at = 0;
    int rank(int n, int w) const {
        auto it = gr_rank.find({n, w});
        return it == gr_rank.end() ? 0 : it->second;
    }
    /* summands per stem: each tau tower counts once, torsion classes once */
    int summands(int stem, const RingSpec& ring) const;
};

AhssResult run_ahss(const CellComplex& cells, const CoefficientTable& table,
                    const std::vector<AhssRule>& rules, const AhssOptions& opt);

struct CrosscheckReport {
    bool pass = true;
    int cells_checked = 0;
    int cells_skipped = 0; /* columns reaching a truncation ceiling */
    std::vector<std::string> mismatches;
};

/* Per (stem, weight): total F2 length of the AHSS associated graded equals
 * the number of Adams E-infinity classes.  Columns in which either side
 * reaches its filtration ceiling (2-adic integer towers) or which need cells
 * beyond the skeleton are skipped and counted, not compared. */
CrosscheckReport crosscheck(const AhssResult& ahss, const CoefficientTable& table,
                            const ExtChart& adams, int n_lo, int n_hi, int w_lo, int w_hi,
                            int h0_cap, int skeleton);

} // namespace motex
