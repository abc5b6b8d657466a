#pragma once

#include "motex/pipelines.hpp"

#include <string>
#include <vector>

namespace motex {

/* linear form a*i + b in the table parameter */
struct LinForm {
    int a = 0, b = 0;
    int eval(int i) const { return a * i + b; }
};
LinForm parse_linform(const std::string& s);

/* One stated family of answers: for i in range, the group at stem(i) (and
 * weights down from weight_max(i) when motivic) is the stated one.  Groups
 * are cyclic 2-powers, elementary 2-groups, the 2-adic integers, or zero;
 * exponents are linear forms or the 2-adic valuation of q^i - 1. */
struct AnswerEntry {
    int i_lo = 0, i_hi = 0;
    LinForm stem;
    enum class Kind { Cyclic, Elementary, Zadic, Zero, GrCount } kind = Kind::Cyclic;
    LinForm exponent;
    bool exponent_is_valuation = false;
    bool has_weight = false;
    LinForm weight_max;
    int weight_depth = 3; /* how many weights below the top are compared */
    LinForm fixed_weight;
    bool has_fixed_weight = false;
    std::string source;
};

struct AnswerTable {
    std::string id;
    Theory theory = Theory::KU;
    FieldTag base = FieldTag::Classical;
    int q = 0;
    std::string method; /* assembly | ahss-summands */
    std::vector<AnswerEntry> entries;
    std::string source;
};

std::vector<AnswerTable> load_answer_tables(const std::string& path);
std::vector<AnswerTable> load_all_answer_tables();

struct VerifyReport {
    std::string id;
    bool pass = true;
    bool insufficient_range = false;
    int entries_checked = 0;
    std::vector<std::string> diffs;
};

VerifyReport verify_table(const AnswerTable& table, int threads = 0);

} // namespace motex
