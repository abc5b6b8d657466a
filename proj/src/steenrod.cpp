#include "motex/steenrod.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace motex {

std::string algebra_name_str(AlgebraName n) {
    switch (n) {
        case AlgebraName::A0: return "A0";
        case AlgebraName::E1: return "E1";
        case AlgebraName::A1: return "A1";
    }
    return "?";
}

AlgebraName parse_algebra(const std::string& s) {
    if (s == "A0" || s == "a0") return AlgebraName::A0;
    if (s == "E1" || s == "e1") return AlgebraName::E1;
    if (s == "A1" || s == "a1") return AlgebraName::A1;
    throw std::runtime_error("unknown algebra '" + s + "'");
}

void canonicalize(AlgElt& e) {
    std::sort(e.begin(), e.end());
    AlgElt out;
    for (size_t i = 0; i < e.size();) {
        size_t j = i;
        while (j < e.size() && e[j] == e[i]) ++j;
        if ((j - i) & 1) out.push_back(e[i]);
        i = j;
    }
    e = std::move(out);
}

AlgElt add(AlgElt a, const AlgElt& b) {
    a.insert(a.end(), b.begin(), b.end());
    canonicalize(a);
    return a;
}

AlgebraTable::AlgebraTable(AlgebraName name, const BaseRing& base) : name_(name), base_(base) {
    /* classical mode carries weight zero everywhere */
    int w1 = base.classical() ? 0 : 1;
    switch (name_) {
        case AlgebraName::A0:
            letter_deg_ = {{1, 0}};
            letter_label_ = {"Sq1"};
            break;
        case AlgebraName::E1:
            letter_deg_ = {{1, 0}, {3, w1}};
            letter_label_ = {"Q0", "Q1"};
            break;
        case AlgebraName::A1:
            letter_deg_ = {{1, 0}, {2, w1}};
            letter_label_ = {"Sq1", "Sq2"};
            break;
    }
}

AlgebraTable AlgebraTable::make(AlgebraName name, const BaseRing& base) {
    AlgebraTable t(name, base);
    t.build_basis();
    t.build_products();
    t.validate();
    return t;
}

Bidegree AlgebraTable::top_deg() const {
    Bidegree d{0, 0};
    for (const auto& b : basis_)
        d = std::max(d, b.deg, [](Bidegree x, Bidegree y) { return x.t < y.t; });
    return d;
}

void AlgebraTable::build_basis() {
    /* irreducible words: no repeated letter, and for A(1) no Sq2Sq1Sq2Sq1 */
    std::vector<Word> words{{}};
    std::vector<Word> frontier{{}};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            for (std::uint8_t l = 0; l < letters(); ++l) {
                if (!w.empty() && w.back() == l) continue;
                if (name_ == AlgebraName::E1 && !w.empty()) continue; /* Q-letters commute; keep sorted words only */
                Word w2 = w;
                w2.push_back(l);
                if (name_ == AlgebraName::A1 && w2 == Word{1, 0, 1, 0}) continue;
                if (w2.size() > 4) continue;
                next.push_back(std::move(w2));
            }
        }
        words.insert(words.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    if (name_ == AlgebraName::E1) words = {{}, {0}, {1}, {0, 1}};

    std::stable_sort(words.begin(), words.end(), [&](const Word& a, const Word& b) {
        auto degsum = [&](const Word& w) {
            Bidegree d{0, 0};
            for (auto l : w) d += letter_deg_[l];
            return d;
        };
        Bidegree da = degsum(a), db = degsum(b);
        if (da.t != db.t) return da.t < db.t;
        return WordLess{}(a, b);
    });

    for (const auto& w : words) {
        Bidegree d{0, 0};
        std::string label;
        for (auto l : w) {
            d += letter_deg_[l];
            label += letter_label_[l];
        }
        if (label.empty()) label = "1";
        word_index_[w] = int(basis_.size());
        basis_.push_back(BasisElt{label, d, w});
    }

    letter_basis_.resize(size_t(letters()));
    for (std::uint8_t l = 0; l < letters(); ++l)
        letter_basis_[l] = word_index_.at(Word{l});
}

std::vector<AlgebraTable::OpTerm> AlgebraTable::letter_past_mono(std::uint8_t letter, CoefMono m) const {
    std::vector<OpTerm> out;
    if (m.is_unit()) {
        out.push_back(OpTerm{m, letter});
        return out;
    }
    auto target = [&](Bidegree shift) { return base_.monomial_at(base_.mono_deg(m) + shift); };
    out.push_back(OpTerm{m, letter}); /* straight-through term */
    bool is_q1 = name_ == AlgebraName::E1 && letter == 1;
    bool is_sq2 = name_ == AlgebraName::A1 && letter == 1;
    if (is_sq2) {
        if (base_.sq1(m)) {
            /* tau Sq1(m) Sq1 */
            auto t = base_.mul(CoefMono{1, 0}, *target({1, 0}));
            if (t) out.push_back(OpTerm{*t, std::uint8_t(0)});
        }
        if (base_.sq2(m)) out.push_back(OpTerm{*target({2, 1}), std::nullopt});
    } else if (is_q1) {
        if (base_.sq1_tau() && base_.sq1(m)) {
            auto t = base_.mul(*base_.sq1_tau(), *target({1, 0}));
            if (t) out.push_back(OpTerm{*t, std::uint8_t(0)});
        }
        if (base_.q1(m)) out.push_back(OpTerm{*target({3, 1}), std::nullopt});
    } else {
        /* Sq1 and Q0 are derivations */
        if (base_.sq1(m)) out.push_back(OpTerm{*target({1, 0}), std::nullopt});
    }
    return out;
}

std::vector<std::pair<CoefMono, Word>> AlgebraTable::word_past_mono(const Word& w, CoefMono m) const {
    std::vector<std::pair<CoefMono, Word>> out{{m, {}}};
    if (w.empty()) return out;
    /* process letters right to left */
    for (int i = int(w.size()) - 1; i >= 0; --i) {
        std::uint8_t l = w[size_t(i)];
        std::vector<std::pair<CoefMono, Word>> next;
        for (const auto& [c, suffix] : out) {
            for (const auto& term : letter_past_mono(l, c)) {
                Word nw;
                if (term.letter) nw.push_back(*term.letter);
                nw.insert(nw.end(), suffix.begin(), suffix.end());
                next.emplace_back(term.c, std::move(nw));
            }
        }
        out = std::move(next);
    }
    return out;
}

AlgElt AlgebraTable::reduce(CoefMono c, const Word& w) const {
    /* leftmost repeated letter */
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] != w[i + 1]) continue;
        if (name_ == AlgebraName::A1 && w[i] == 1) {
            /* Sq2 Sq2 = tau Sq1 Sq2 Sq1 (unit coefficient classically);
             * push the coefficient left through the prefix */
            CoefMono twist = *base_.monomial_at(letter_deg_[1] + letter_deg_[1] -
                                                letter_deg_[0] - letter_deg_[1] - letter_deg_[0]);
            Word prefix(w.begin(), w.begin() + long(i));
            Word suffix(w.begin() + long(i) + 2, w.end());
            AlgElt acc;
            for (const auto& [m, p] : word_past_mono(prefix, twist)) {
                auto cm = base_.mul(c, m);
                if (!cm) continue;
                Word nw = p;
                nw.insert(nw.end(), {0, 1, 0});
                nw.insert(nw.end(), suffix.begin(), suffix.end());
                acc = add(std::move(acc), reduce(*cm, nw));
            }
            return acc;
        }
        return {}; /* Sq1 Sq1 = Q0 Q0 = Q1 Q1 = 0 */
    }
    if (name_ == AlgebraName::E1) {
        /* Q1 Q0 = Q0 Q1 */
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] == 1 && w[i + 1] == 0) {
                Word nw = w;
                std::swap(nw[i], nw[i + 1]);
                return reduce(c, nw);
            }
        }
    }
    if (name_ == AlgebraName::A1) {
        for (size_t i = 0; i + 3 < w.size(); ++i) {
            if (w[i] == 1 && w[i + 1] == 0 && w[i + 2] == 1 && w[i + 3] == 0) {
                Word nw = w;
                nw[i] = 0; nw[i + 1] = 1; nw[i + 2] = 0; nw[i + 3] = 1;
                return reduce(c, nw);
            }
        }
    }
    auto it = word_index_.find(w);
    if (it == word_index_.end())
        throw std::logic_error("steenrod: irreducible word outside the basis");
    return {AlgTerm{c, it->second}};
}

void AlgebraTable::build_products() {
    mult_.assign(size_t(rank()), std::vector<AlgElt>(size_t(rank())));
    for (int i = 0; i < rank(); ++i) {
        for (int j = 0; j < rank(); ++j) {
            Word w = basis_[size_t(i)].word;
            const Word& wj = basis_[size_t(j)].word;
            w.insert(w.end(), wj.begin(), wj.end());
            mult_[size_t(i)][size_t(j)] = reduce(CoefMono{}, w);
        }
    }
}

AlgElt AlgebraTable::mul_mono(CoefMono c, const AlgElt& x) const {
    AlgElt out;
    for (const auto& t : x) {
        auto m = base_.mul(c, t.c);
        if (m) out.push_back(AlgTerm{*m, t.b});
    }
    canonicalize(out);
    return out;
}

AlgElt AlgebraTable::mul(const AlgElt& x, const AlgElt& y) const {
    AlgElt out;
    for (const auto& tx : x) {
        for (const auto& ty : y) {
            /* basis(tx.b) . ty.c -> sum of m' . word, then word . basis(ty.b) */
            for (const auto& [m, w] : word_past_mono(basis_[size_t(tx.b)].word, ty.c)) {
                auto c = base_.mul(tx.c, m);
                if (!c) continue;
                Word full = w;
                const Word& wy = basis_[size_t(ty.b)].word;
                full.insert(full.end(), wy.begin(), wy.end());
                AlgElt r = reduce(*c, full);
                out.insert(out.end(), r.begin(), r.end());
            }
        }
    }
    canonicalize(out);
    return out;
}

bool AlgebraTable::basis_acts_on_mono(int b, CoefMono m) const {
    /* apply letters right to left; every intermediate lives in a 0/1
     * dimensional component so a bool and the running degree suffice */
    const Word& w = basis_[size_t(b)].word;
    bool coef = true;
    Bidegree d = base_.mono_deg(m);
    CoefMono cur = m;
    for (int i = int(w.size()) - 1; i >= 0; --i) {
        if (!coef) return false;
        std::uint8_t l = w[size_t(i)];
        bool hit;
        if (name_ == AlgebraName::E1)
            hit = (l == 0) ? base_.sq1(cur) : base_.q1(cur);
        else
            hit = (l == 0) ? base_.sq1(cur) : base_.sq2(cur);
        if (!hit) return false;
        d += letter_deg_[l];
        auto nm = base_.monomial_at(d);
        if (!nm) return false;
        cur = *nm;
    }
    return coef;
}

std::optional<CoefMono> AlgebraTable::augment(const AlgElt& x) const {
    for (const auto& t : x)
        if (t.b == 0) return t.c;
    return std::nullopt;
}

std::string AlgebraTable::elt_str(const AlgElt& x) const {
    if (x.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) os << " + ";
        std::string c = base_.mono_str(x[i].c);
        if (c != "1") os << c << ' ';
        os << basis_[size_t(x[i].b)].label;
    }
    return os.str();
}

void AlgebraTable::validate() const {
    /* expected rank profile */
    int expect = name_ == AlgebraName::A0 ? 2 : name_ == AlgebraName::E1 ? 4 : 8;
    if (rank() != expect)
        throw std::runtime_error(algebra_name_str(name_) + ": basis rank " + std::to_string(rank()));

    /* generator squares */
    for (int l = 0; l < letters(); ++l) {
        if (name_ == AlgebraName::A1 && l == 1) continue;
        if (!product(basis_of_letter(l), basis_of_letter(l)).empty())
            throw std::runtime_error(algebra_name_str(name_) + ": " + letter_label_[size_t(l)] +
                                     " does not square to zero");
    }

    /* associativity on all basis triples */
    for (int i = 0; i < rank(); ++i) {
        for (int j = 0; j < rank(); ++j) {
            for (int k = 0; k < rank(); ++k) {
                AlgElt left = mul(product(i, j), {AlgTerm{CoefMono{}, k}});
                AlgElt right = mul({AlgTerm{CoefMono{}, i}}, product(j, k));
                if (left != right)
                    throw std::runtime_error(algebra_name_str(name_) + " over " + base_.name() +
                                             ": associativity fails on (" + basis_[size_t(i)].label + ", " +
                                             basis_[size_t(j)].label + ", " + basis_[size_t(k)].label + ")");
            }
        }
    }
}

} // namespace motex
