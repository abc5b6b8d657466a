#pragma once

#include "motex/base_ring.hpp"
#include "motex/grading.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace motex {

enum class AlgebraName { A0, E1, A1 };

std::string algebra_name_str(AlgebraName n);
AlgebraName parse_algebra(const std::string& s);

/* word over the algebra's generating letters */
using Word = std::vector<std::uint8_t>;

struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

struct AlgTerm {
    CoefMono c;
    int b = 0; /* basis index */
    auto operator<=>(const AlgTerm&) const = default;
};
/* canonical: sorted, duplicate-free (mod 2) */
using AlgElt = std::vector<AlgTerm>;

void canonicalize(AlgElt& e);
AlgElt add(AlgElt a, const AlgElt& b);

/* A(0) = <Sq1>, E(1) = <Q0, Q1>, A(1) = <Sq1, Sq2> over the given base ring,
 * as a free module over the coefficients on the irreducible words, with
 * products computed by rewriting (Sq1 Sq1 = 0, Sq2 Sq2 = tau Sq1 Sq2 Sq1,
 * Sq2 Sq1 Sq2 Sq1 = Sq1 Sq2 Sq1 Sq2) and coefficient commutation through the
 * Cartan formula.  Validated on construction. */
class AlgebraTable {
public:
    static AlgebraTable make(AlgebraName name, const BaseRing& base);

    struct BasisElt {
        std::string label;
        Bidegree deg;
        Word word;
    };

    AlgebraName name() const { return name_; }
    const BaseRing& base() const { return base_; }
    int rank() const { return int(basis_.size()); }
    const BasisElt& basis(int i) const { return basis_[size_t(i)]; }
    int letters() const { return int(letter_deg_.size()); }
    Bidegree letter_deg(int l) const { return letter_deg_[size_t(l)]; }
    const std::string& letter_label(int l) const { return letter_label_[size_t(l)]; }
    int basis_of_letter(int l) const { return letter_basis_[size_t(l)]; }
    int basis_index(const Word& w) const { return word_index_.at(w); }
    Bidegree top_deg() const;

    const AlgElt& product(int i, int j) const { return mult_[size_t(i)][size_t(j)]; }
    AlgElt mul(const AlgElt& x, const AlgElt& y) const;
    AlgElt mul_mono(CoefMono c, const AlgElt& x) const;

    /* operator expansion of (letter) . (m . -) as sum of m' . (word of length <= 1) */
    struct OpTerm {
        CoefMono c;
        std::optional<std::uint8_t> letter;
    };
    std::vector<OpTerm> letter_past_mono(std::uint8_t letter, CoefMono m) const;

    /* action of a basis word on a coefficient monomial (composite of letters) */
    bool basis_acts_on_mono(int b, CoefMono m) const;

    /* counit to the base ring */
    std::optional<CoefMono> augment(const AlgElt& x) const;

    std::string elt_str(const AlgElt& x) const;

    /* associativity on all basis triples, letter relations, rank profile;
     * throws naming the violating triple */
    void validate() const;

private:
    AlgebraTable(AlgebraName name, const BaseRing& base);
    AlgElt reduce(CoefMono c, const Word& w) const;
    std::vector<std::pair<CoefMono, Word>> word_past_mono(const Word& w, CoefMono m) const;
    void build_basis();
    void build_products();

    AlgebraName name_;
    BaseRing base_;
    std::vector<BasisElt> basis_;
    std::map<Word, int, WordLess> word_index_;
    std::vector<Bidegree> letter_deg_;
    std::vector<std::string> letter_label_;
    std::vector<int> letter_basis_;
    std::vector<std::vector<AlgElt>> mult_;
};

} // namespace motex
