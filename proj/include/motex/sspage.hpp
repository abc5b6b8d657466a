#pragma once

#include "motex/ext.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace motex {

/* chart-coordinate degree of a page generator: (stem, filtration, weight) */
struct PageGenDeg {
    int n = 0;
    int s = 0;
    int w = 0;
};

/* exponent vector over the ring's generators */
using PageMono = std::vector<int>;

/* A graded ring presented by generators, exponent caps, and monomial
 * rewriting rules (each left side maps to a single monomial or to zero).
 * Spectral-sequence pages are spanned by the irreducible monomials. */
class RingSpec {
public:
    struct Gen {
        std::string name;
        PageGenDeg deg;
        int cap = -1; /* -1: unbounded */
    };
    struct Rule {
        PageMono lhs;
        PageMono rhs; /* empty: rewrites to zero */
        bool to_zero = false;
    };

    void add_gen(const std::string& name, PageGenDeg deg, int cap = -1);
    void add_rule(const PageMono& lhs, const PageMono& rhs);
    void add_zero_rule(const PageMono& lhs);

    int gen_count() const { return int(gens_.size()); }
    const Gen& gen(int i) const { return gens_[size_t(i)]; }
    int gen_index(const std::string& name) const;
    PageGenDeg deg(const PageMono& m) const;

    /* normal form; nullopt when the monomial rewrites to zero */
    std::optional<PageMono> reduce(PageMono m) const;
    bool irreducible(const PageMono& m) const;
    std::optional<PageMono> mul(const PageMono& a, const PageMono& b) const;

    /* all irreducible monomials of the given chart tridegree */
    std::vector<PageMono> enumerate(int n, int s, int w) const;

    PageMono parse_mono(const std::string& s) const;
    std::string mono_str(const PageMono& m) const;

private:
    std::vector<Gen> gens_;
    std::vector<Rule> rules_;
};

/* d_page(source) = target, extended by the Leibniz rule over the binary
 * decomposition of the source exponent; sources must be a power g^(2^k) */
struct DifferentialRule {
    int page = 0;
    PageMono source;
    PageMono target;
    std::string note; /* origin of the rule, as a formula */
    /* firing condition on the source generator exponent: either the binary
     * digit of the source power (default), or a congruence class */
    bool congruence_guard = false;
    int modulus = 0;
    int residue = 0;
    /* exact exponent constraints on other generators, e.g. h1-exponent == 2 */
    std::vector<std::pair<int, int>> exact;
    int source_gen = -1;
    int source_bit = 0;
};

enum class SsKind { Bockstein, Adams };

/* convention check: Bockstein d_r shifts (stem, s, w) by (-1, +1, 0) and the
 * auxiliary exponent by r; Adams d_r shifts by (-1, +r, 0) */
void validate_rules(const RingSpec& ring, const std::vector<DifferentialRule>& rules, SsKind kind);

struct PageWindow {
    int max_s = 0;
    int stem_lo = 0, stem_hi = 0;
    int w_lo = 0, w_hi = 0;
};

/* A run of a multiplicative spectral sequence on the irreducible monomials
 * of a RingSpec.  Pages are subquotients per tridegree; classes are tracked
 * as vectors over the E1 monomial basis with pivot-monomial display names. */
class PageRun {
public:
    PageRun(RingSpec ring, PageWindow window);

    const RingSpec& ring() const { return ring_; }
    const PageWindow& window() const { return window_; }

    /* apply all differentials of pages r_lo..r_hi */
    void run(const std::vector<DifferentialRule>& rules, int r_lo, int r_hi, SsKind kind);

    int dim(int n, int s, int w) const;
    int total_dim() const;
    std::vector<std::string> class_names(int n, int s, int w) const;
    /* alive classes given by leading monomials (throws if a class has no
     * monomial representative) */
    std::vector<PageMono> alive_monomials(int n, int s, int w) const;
    bool mono_alive(const PageMono& m) const;

    struct FiredDifferential {
        int page;
        int n, s, w;
        int rank;
    };
    const std::vector<FiredDifferential>& log() const { return log_; }
    int pages_run() const { return pages_run_; }

private:
    struct Cell {
        std::vector<PageMono> basis; /* E1 irreducible monomials */
        std::vector<F2Vec> alive;    /* representatives in E1 coordinates */
        F2Span boundaries;
    };
    const Cell* cell(int n, int s, int w) const;
    int basis_index(const Cell& c, const PageMono& m) const;
    F2Vec leibniz(const Cell& src, const F2Vec& v, const std::vector<DifferentialRule>& rules,
                  int page, const Cell& dst) const;

    RingSpec ring_;
    PageWindow window_;
    std::map<std::tuple<int, int, int>, Cell> cells_;
    std::vector<FiredDifferential> log_;
    int pages_run_ = 1;
    SsKind kind_ = SsKind::Bockstein;
};

/* rule files */
std::vector<DifferentialRule> rules_from_records(const std::vector<Record>& recs, const RingSpec& ring,
                                                 int q, int max_bit);

/* the Ext rings used as Bockstein and Adams inputs; validated downstream
 * against the resolver */
RingSpec ext_ring_over_closed(AlgebraName name, bool with_tau);
/* adjoin the base's second coefficient generator (rho or u) */
RingSpec adjoin_second(const RingSpec& base, FieldTag tag);

/* compare page dims with a resolver chart on the shared window */
void compare_with_chart(const PageRun& run, const ExtChart& chart, int stem_lo, int stem_hi, int w_lo,
                        int w_hi, int max_s);

/* the filtration spectral sequence of an exhaustive module filtration:
 * collapse is detected positionally; otherwise d1 is the connecting map of
 * adjacent subquotients */
struct FiltrationResult {
    std::map<Tridegree, int> dims;
    bool collapsed_at_e1 = true;
    int d1_rank = 0;
};
FiltrationResult filtration_ss_run(const std::vector<const ExtChart*>& stage_charts,
                                   const std::vector<LesTriple*>& adjacent = {});

} // namespace motex
