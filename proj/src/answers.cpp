#include "motex/answers.hpp"

#include "motex/textio.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace motex {

LinForm parse_linform(const std::string& s) {
    /* forms: "3", "i", "2i", "i+1", "2i+1", "4i-3", "-i+2" */
    LinForm f;
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    auto ipos = t.find('i');
    if (ipos == std::string::npos) {
        f.b = std::stoi(t);
        return f;
    }
    std::string coef = t.substr(0, ipos);
    if (coef.empty() || coef == "+") f.a = 1;
    else if (coef == "-") f.a = -1;
    else f.a = std::stoi(coef);
    std::string rest = t.substr(ipos + 1);
    f.b = rest.empty() ? 0 : std::stoi(rest);
    return f;
}

static AnswerEntry parse_entry(const Record& rec) {
    AnswerEntry e;
    auto range = split_ws(rec.get("i-range"));
    e.i_lo = std::stoi(range.at(0));
    e.i_hi = std::stoi(range.at(1));
    e.stem = parse_linform(rec.get("stem"));
    std::string g = rec.get("group");
    if (g == "0") {
        e.kind = AnswerEntry::Kind::Zero;
    } else if (g == "Z2") {
        e.kind = AnswerEntry::Kind::Zadic;
    } else if (g.rfind("Z/2^", 0) == 0) {
        e.kind = AnswerEntry::Kind::Cyclic;
        std::string ex = g.substr(4);
        if (ex.front() == '(') ex = ex.substr(1, ex.size() - 2);
        if (ex == "nu(q^i-1)") e.exponent_is_valuation = true;
        else e.exponent = parse_linform(ex);
    } else if (g == "Z/2") {
        e.kind = AnswerEntry::Kind::Cyclic;
        e.exponent = LinForm{0, 1};
    } else if (g.rfind("(Z/2)^", 0) == 0) {
        e.kind = AnswerEntry::Kind::Elementary;
        std::string ex = g.substr(6);
        if (ex.front() == '(') ex = ex.substr(1, ex.size() - 2);
        e.exponent = parse_linform(ex);
    } else if (g.rfind("count:", 0) == 0) {
        e.kind = AnswerEntry::Kind::GrCount;
        e.exponent = parse_linform(g.substr(6));
    } else {
        throw std::runtime_error("answer entry: bad group '" + g + "'");
    }
    if (rec.has("weight-max")) {
        e.has_weight = true;
        e.weight_max = parse_linform(rec.get("weight-max"));
        e.weight_depth = std::stoi(rec.get_or("weight-depth", "3"));
    }
    if (rec.has("weight")) {
        e.has_fixed_weight = true;
        e.fixed_weight = parse_linform(rec.get("weight"));
    }
    e.source = rec.get_or("source", "");
    return e;
}

std::vector<AnswerTable> load_answer_tables(const std::string& path) {
    std::vector<AnswerTable> out;
    for (const auto& rec : read_records(path)) {
        if (rec.type == "answer-table") {
            AnswerTable t;
            t.id = rec.get("id");
            t.theory = parse_theory(rec.get("theory"));
            t.base = parse_field(rec.get("base"));
            t.q = std::stoi(rec.get_or("q", "0"));
            t.method = rec.get_or("method", "assembly");
            t.source = rec.get_or("source", "");
            out.push_back(std::move(t));
        } else if (rec.type == "entry") {
            if (out.empty()) throw std::runtime_error("entry before any answer-table");
            out.back().entries.push_back(parse_entry(rec));
        }
    }
    return out;
}

std::vector<AnswerTable> load_all_answer_tables() {
    std::vector<AnswerTable> out;
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(data_path("answers")))
        if (entry.path().extension() == ".kv") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        auto tables = load_answer_tables(f);
        out.insert(out.end(), tables.begin(), tables.end());
    }
    return out;
}

static long long pow_ll(int q, int i) {
    long long p = 1;
    for (int k = 0; k < i; ++k) p *= q;
    return p;
}

static int nu2(long long x) {
    int v = 0;
    while (x % 2 == 0 && x != 0) { x /= 2; ++v; }
    return v;
}

static void compare_group(const AnswerTable& table, const AnswerEntry& e, int i, int stem, int w,
                          const AbelianTable& tab, VerifyReport& rep) {
    const AssemblyEntry* got = tab.at(stem, w);
    std::string want;
    bool ok = true;
    switch (e.kind) {
        case AnswerEntry::Kind::Zero:
            want = "0";
            ok = !got || got->summands.empty();
            break;
        case AnswerEntry::Kind::Zadic:
            want = "Z2";
            ok = got && got->summands.size() == 1 && got->summands[0].infinite;
            break;
        case AnswerEntry::Kind::Cyclic: {
            int exp = e.exponent_is_valuation ? nu2(pow_ll(table.q, i) - 1) : e.exponent.eval(i);
            want = exp == 1 ? "Z/2" : "Z/2^" + std::to_string(exp);
            ok = got && got->summands.size() == 1 && !got->summands[0].infinite &&
                 got->summands[0].length == exp;
            break;
        }
        case AnswerEntry::Kind::Elementary: {
            int rank = e.exponent.eval(i);
            want = "(Z/2)^" + std::to_string(rank);
            ok = got && int(got->summands.size()) == rank;
            if (ok)
                for (const auto& s : got->summands) ok = ok && !s.infinite && s.length == 1;
            break;
        }
        case AnswerEntry::Kind::GrCount:
            throw std::logic_error("gr entry routed to assembly comparison");
    }
    ++rep.entries_checked;
    if (!ok) {
        rep.pass = false;
        std::ostringstream os;
        os << table.id << ": stem " << stem << " w " << w << ": expected " << want << ", computed "
           << tab.describe(stem, w);
        rep.diffs.push_back(os.str());
    }
}

VerifyReport verify_table(const AnswerTable& table, int threads) {
    VerifyReport rep;
    rep.id = table.id;
    bool classical = table.base == FieldTag::Classical;

    int stem_hi = 0, exp_hi = 4;
    for (const auto& e : table.entries) {
        stem_hi = std::max({stem_hi, e.stem.eval(e.i_lo), e.stem.eval(e.i_hi)});
        if (e.kind == AnswerEntry::Kind::Cyclic && !e.exponent_is_valuation)
            exp_hi = std::max({exp_hi, e.exponent.eval(e.i_lo), e.exponent.eval(e.i_hi)});
        if (e.kind == AnswerEntry::Kind::Elementary || e.kind == AnswerEntry::Kind::GrCount)
            exp_hi = std::max({exp_hi, e.exponent.eval(e.i_lo), e.exponent.eval(e.i_hi)});
        if (e.exponent_is_valuation)
            exp_hi = std::max(exp_hi, nu2(pow_ll(table.q, e.i_hi) - 1));
    }

    if (table.method == "page-towers") {
        /* tower lengths of the coefficient spectral sequence E-infinity at a
         * fixed weight; each column checked is a single h0 tower */
        AhssOptions opt;
        opt.n_hi = stem_hi;
        opt.w_lo = -stem_hi - 2;
        opt.h0_cap = exp_hi + 6;
        opt.skeleton = 2;
        auto ctab = coefficient_table(table.theory, table.base, table.q, -stem_hi - 4, stem_hi + 1,
                                      exp_hi + 8, -stem_hi - 4);
        for (const auto& e : table.entries) {
            for (int i = e.i_lo; i <= e.i_hi; ++i) {
                int stem = e.stem.eval(i);
                int w = e.has_fixed_weight ? e.fixed_weight.eval(i) : 0;
                int want = e.exponent_is_valuation ? nu2(pow_ll(table.q, i) - 1) : e.exponent.eval(i);
                int got = int(ctab.group(stem, w, exp_hi + 6).size());
                ++rep.entries_checked;
                if (got != want) {
                    rep.pass = false;
                    std::ostringstream os;
                    os << table.id << ": stem " << stem << " w " << w << ": expected tower length "
                       << want << ", computed " << got;
                    rep.diffs.push_back(os.str());
                }
            }
        }
        return rep;
    }

    if (table.method == "ahss-summands") {
        AhssOptions opt;
        opt.n_hi = stem_hi;
        opt.w_lo = classical ? 0 : -4;
        opt.h0_cap = exp_hi + 8;
        opt.skeleton = classical ? stem_hi + 4 : 2 * (stem_hi + 4) + 3;
        auto ctab = coefficient_table_for(table.theory, table.base, table.q, opt);
        auto cells = CellComplex::build(opt.skeleton, classical);
        auto rules = load_ahss_rules(table.theory, table.base, ctab);
        AhssResult res = run_ahss(cells, ctab, rules, opt);
        for (const auto& e : table.entries) {
            for (int i = e.i_lo; i <= e.i_hi; ++i) {
                int stem = e.stem.eval(i);
                if (stem > stem_hi) {
                    rep.insufficient_range = true;
                    continue;
                }
                int want = e.exponent.eval(i);
                int got = res.summands(stem, ctab.ring());
                ++rep.entries_checked;
                if (got != want) {
                    rep.pass = false;
                    std::ostringstream os;
                    os << table.id << ": stem " << stem << ": expected " << want
                       << " summands, computed " << got;
                    rep.diffs.push_back(os.str());
                }
            }
        }
        return rep;
    }

    /* assembly method */
    ExtWindow W{exp_hi + 3, -1, stem_hi + 1, classical ? 0 : -5, classical ? 0 : stem_hi + 2};
    AbelianTable tab = assemble_bc2(table.theory, table.base, table.q, W);
    (void)threads;
    for (const auto& e : table.entries) {
        for (int i = e.i_lo; i <= e.i_hi; ++i) {
            int stem = e.stem.eval(i);
            if (stem > W.stem_hi || stem < W.stem_lo) {
                rep.insufficient_range = true;
                continue;
            }
            if (classical) {
                compare_group(table, e, i, stem, 0, tab, rep);
            } else if (e.has_fixed_weight) {
                compare_group(table, e, i, stem, e.fixed_weight.eval(i), tab, rep);
            } else if (e.has_weight) {
                int top = e.weight_max.eval(i);
                for (int w = top; w > top - e.weight_depth; --w) {
                    if (w < W.w_lo + 1) { rep.insufficient_range = true; continue; }
                    compare_group(table, e, i, stem, w, tab, rep);
                }
                /* just above the top the group must vanish */
                if (top + 1 <= W.w_hi) {
                    const AssemblyEntry* above = tab.at(stem, top + 1);
                    ++rep.entries_checked;
                    if (above && !above->summands.empty()) {
                        rep.pass = false;
                        rep.diffs.push_back(table.id + ": stem " + std::to_string(stem) +
                                            " w " + std::to_string(top + 1) +
                                            ": expected 0 above the weight bound, computed " +
                                            tab.describe(stem, top + 1));
                    }
                }
            } else {
                compare_group(table, e, i, stem, 0, tab, rep);
            }
        }
    }
    return rep;
}

} // namespace motex
