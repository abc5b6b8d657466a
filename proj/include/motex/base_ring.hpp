#pragma once

#include "motex/grading.hpp"
#include "motex/textio.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace motex {

/* The five coefficient-ring families.  Classical carries weight 0 everywhere
 * and has no generators; the others are generated by tau (0,1) plus at most
 * one degree-(1,1) class (rho or u), possibly square-zero. */
enum class FieldTag { Classical, AlgClosed, Reals, FqOne, FqThree };

std::string field_name(FieldTag tag);
FieldTag parse_field(const std::string& s);

/* tau^a * sec^b where sec is rho or u (b always 0 when there is none) */
struct CoefMono {
    int a = 0;
    int b = 0;
    bool is_unit() const { return a == 0 && b == 0; }
    auto operator<=>(const CoefMono&) const = default;
};

enum class SqOp { Sq1, Sq2 };

class BaseRing {
public:
    /* built-in action table (validated downstream); q only for finite fields */
    static BaseRing make(FieldTag tag, int q = 0);
    /* action table loaded from a [coefficient-action] record */
    static BaseRing from_records(const std::vector<Record>& recs);

    FieldTag tag() const { return tag_; }
    int q() const { return q_; }
    std::string name() const;
    bool classical() const { return tag_ == FieldTag::Classical; }

    bool has_tau() const { return tag_ != FieldTag::Classical; }
    bool has_sec() const { return tag_ == FieldTag::Reals || tag_ == FieldTag::FqOne || tag_ == FieldTag::FqThree; }
    std::string sec_name() const;
    bool sec_square_zero() const { return tag_ == FieldTag::FqOne || tag_ == FieldTag::FqThree; }
    int sec_cap() const { return sec_square_zero() ? 1 : (has_sec() ? 1 << 20 : 0); }

    Bidegree tau_deg() const { return {0, 1}; }
    Bidegree sec_deg() const { return {1, 1}; }
    Bidegree mono_deg(CoefMono m) const { return {m.b, m.a + m.b}; }

    /* dimension of every bidegree component is 0 or 1 */
    std::optional<CoefMono> monomial_at(Bidegree d) const;
    std::vector<CoefMono> monomial_basis(Bidegree d) const;
    std::optional<CoefMono> mul(CoefMono x, CoefMono y) const;

    /* Steenrod action on coefficients: the result lives in the unique
     * monomial of bidegree deg(m) + deg(op); returned as that coefficient. */
    bool sq1(CoefMono m) const;
    bool sq2(CoefMono m) const;
    bool q1(CoefMono m) const; /* [Sq1,Sq2] */
    std::optional<CoefMono> coefficient_action(SqOp op, CoefMono m) const;

    /* value of Sq1 on tau; the Cartan twist for Q1 on modules */
    std::optional<CoefMono> sq1_tau() const { return sq1_tau_; }

    std::string mono_str(CoefMono m) const;
    bool parse_mono(const std::string& s, CoefMono& out) const;

private:
    BaseRing() = default;
    void validate_table() const;

    FieldTag tag_ = FieldTag::Classical;
    int q_ = 0;
    std::optional<CoefMono> sq1_tau_, sq2_tau_, sq1_sec_, sq2_sec_;
    mutable std::map<CoefMono, bool> sq2_memo_;
};

} // namespace motex
