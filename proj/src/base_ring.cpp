#include "motex/base_ring.hpp"

#include <sstream>
#include <stdexcept>

namespace motex {

std::string field_name(FieldTag tag) {
    switch (tag) {
        case FieldTag::Classical: return "classical";
        case FieldTag::AlgClosed: return "algclosed";
        case FieldTag::Reals: return "reals";
        case FieldTag::FqOne: return "fq1";
        case FieldTag::FqThree: return "fq3";
    }
    return "?";
}

FieldTag parse_field(const std::string& s) {
    if (s == "classical") return FieldTag::Classical;
    if (s == "algclosed") return FieldTag::AlgClosed;
    if (s == "reals") return FieldTag::Reals;
    if (s == "fq1") return FieldTag::FqOne;
    if (s == "fq3") return FieldTag::FqThree;
    throw std::runtime_error("unknown base field '" + s + "'");
}

std::string BaseRing::name() const {
    if (tag_ == FieldTag::FqOne || tag_ == FieldTag::FqThree) {
        std::ostringstream os;
        os << field_name(tag_) << "(q=" << q_ << ")";
        return os.str();
    }
    return field_name(tag_);
}

std::string BaseRing::sec_name() const {
    switch (tag_) {
        case FieldTag::Reals:
        case FieldTag::FqThree: return "rho";
        case FieldTag::FqOne: return "u";
        default: return "";
    }
}

BaseRing BaseRing::make(FieldTag tag, int q) {
    BaseRing r;
    r.tag_ = tag;
    r.q_ = q;
    if (tag == FieldTag::FqOne) {
        if (q <= 1 || q % 4 != 1) throw std::runtime_error("fq1 requires an odd prime power q = 1 mod 4");
    } else if (tag == FieldTag::FqThree) {
        if (q <= 1 || q % 4 != 3) throw std::runtime_error("fq3 requires an odd prime power q = 3 mod 4");
    }
    /* Sq1(tau) = rho exactly when the coefficient Bockstein is nontrivial */
    if (tag == FieldTag::Reals || tag == FieldTag::FqThree)
        r.sq1_tau_ = CoefMono{0, 1};
    r.validate_table();
    return r;
}

BaseRing BaseRing::from_records(const std::vector<Record>& recs) {
    const Record* rec = nullptr;
    for (const auto& r : recs)
        if (r.type == "coefficient-action") { rec = &r; break; }
    if (!rec) throw std::runtime_error("no [coefficient-action] record found");

    BaseRing r;
    r.tag_ = parse_field(rec->get("base"));
    r.q_ = std::stoi(rec->get_or("q", "0"));

    auto parse_value = [&](const std::string& key, std::optional<CoefMono>& slot, bool required) {
        if (!rec->has(key)) {
            if (required)
                throw std::runtime_error("coefficient-action for " + r.name() + ": missing entry '" + key + "'");
            return;
        }
        std::string v = rec->get(key);
        if (v == "0") { slot.reset(); return; }
        CoefMono m;
        if (!r.parse_mono(v, m))
            throw std::runtime_error("coefficient-action: bad monomial '" + v + "' for " + key);
        slot = m;
    };
    bool tau = r.has_tau(), sec = r.has_sec();
    parse_value("sq1.tau", r.sq1_tau_, tau);
    parse_value("sq2.tau", r.sq2_tau_, tau);
    parse_value("sq1." + r.sec_name(), r.sq1_sec_, sec);
    parse_value("sq2." + r.sec_name(), r.sq2_sec_, sec);
    r.validate_table();
    return r;
}

void BaseRing::validate_table() const {
    auto check = [&](const std::optional<CoefMono>& v, Bidegree src, SqOp op, const char* what) {
        if (!v) return;
        Bidegree target = src + (op == SqOp::Sq1 ? Bidegree{1, 0} : Bidegree{2, 1});
        if (mono_deg(*v) != target)
            throw std::runtime_error(std::string("coefficient-action: ") + what + " has the wrong bidegree");
        if (!monomial_at(target))
            throw std::runtime_error(std::string("coefficient-action: ") + what + " lands in a zero component");
    };
    check(sq1_tau_, tau_deg(), SqOp::Sq1, "sq1.tau");
    check(sq2_tau_, tau_deg(), SqOp::Sq2, "sq2.tau");
    check(sq1_sec_, sec_deg(), SqOp::Sq1, "sq1.sec");
    check(sq2_sec_, sec_deg(), SqOp::Sq2, "sq2.sec");
}

std::optional<CoefMono> BaseRing::monomial_at(Bidegree d) const {
    if (tag_ == FieldTag::Classical)
        return (d.t == 0 && d.w == 0) ? std::optional<CoefMono>(CoefMono{}) : std::nullopt;
    if (!has_sec()) {
        if (d.t != 0 || d.w < 0) return std::nullopt;
        return CoefMono{d.w, 0};
    }
    int b = d.t, a = d.w - d.t;
    if (a < 0 || b < 0 || b > sec_cap()) return std::nullopt;
    return CoefMono{a, b};
}

std::vector<CoefMono> BaseRing::monomial_basis(Bidegree d) const {
    auto m = monomial_at(d);
    if (m) return {*m};
    return {};
}

std::optional<CoefMono> BaseRing::mul(CoefMono x, CoefMono y) const {
    CoefMono m{x.a + y.a, x.b + y.b};
    if (m.b > sec_cap()) return std::nullopt;
    return m;
}

bool BaseRing::sq1(CoefMono m) const {
    /* Sq1 is a derivation on coefficients */
    bool out = false;
    if ((m.a & 1) && sq1_tau_) {
        if (mul(*sq1_tau_, CoefMono{m.a - 1, m.b})) out ^= true;
    }
    if ((m.b & 1) && sq1_sec_) {
        if (mul(*sq1_sec_, CoefMono{m.a, m.b - 1})) out ^= true;
    }
    return out;
}

bool BaseRing::sq2(CoefMono m) const {
    if (m.is_unit()) return false;
    auto memo = sq2_memo_.find(m);
    if (memo != sq2_memo_.end()) return memo->second;

    /* split off one generator g: Sq2(g m') = Sq2(g) m' + tau Sq1(g) Sq1(m') + g Sq2(m') */
    bool out = false;
    CoefMono rest;
    std::optional<CoefMono> sq1_g, sq2_g;
    if (m.a > 0) {
        rest = CoefMono{m.a - 1, m.b};
        sq1_g = sq1_tau_;
        sq2_g = sq2_tau_;
    } else {
        rest = CoefMono{m.a, m.b - 1};
        sq1_g = sq1_sec_;
        sq2_g = sq2_sec_;
    }
    if (sq2_g && mul(*sq2_g, rest)) out ^= true;
    if (sq1_g && sq1(rest)) {
        CoefMono sq1_rest = *monomial_at(mono_deg(rest) + Bidegree{1, 0});
        auto t1 = mul(CoefMono{1, 0}, *sq1_g);
        if (t1 && mul(*t1, sq1_rest)) out ^= true;
    }
    if (sq2(rest)) {
        CoefMono sq2_rest = *monomial_at(mono_deg(rest) + Bidegree{2, 1});
        CoefMono g = m.a > 0 ? CoefMono{1, 0} : CoefMono{0, 1};
        if (mul(g, sq2_rest)) out ^= true;
    }
    sq2_memo_[m] = out;
    return out;
}

bool BaseRing::q1(CoefMono m) const {
    /* Q1 = Sq1 Sq2 + Sq2 Sq1 evaluated through the unique intermediate monomials */
    bool out = false;
    if (sq2(m)) {
        auto mid = monomial_at(mono_deg(m) + Bidegree{2, 1});
        if (mid && sq1(*mid)) out ^= true;
    }
    if (sq1(m)) {
        auto mid = monomial_at(mono_deg(m) + Bidegree{1, 0});
        if (mid && sq2(*mid)) out ^= true;
    }
    return out;
}

std::optional<CoefMono> BaseRing::coefficient_action(SqOp op, CoefMono m) const {
    bool hit = op == SqOp::Sq1 ? sq1(m) : sq2(m);
    if (!hit) return std::nullopt;
    Bidegree d = mono_deg(m) + (op == SqOp::Sq1 ? Bidegree{1, 0} : Bidegree{2, 1});
    return monomial_at(d);
}

std::string BaseRing::mono_str(CoefMono m) const {
    if (m.is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    if (m.a > 0) {
        os << "tau";
        if (m.a > 1) os << '^' << m.a;
        first = false;
    }
    if (m.b > 0) {
        if (!first) os << ' ';
        os << sec_name();
        if (m.b > 1) os << '^' << m.b;
    }
    return os.str();
}

bool BaseRing::parse_mono(const std::string& s, CoefMono& out) const {
    out = CoefMono{};
    if (s == "1") return true;
    for (const std::string& tok : split_ws(s)) {
        std::string name = tok;
        int e = 1;
        size_t caret = tok.find('^');
        if (caret != std::string::npos) {
            name = tok.substr(0, caret);
            e = std::stoi(tok.substr(caret + 1));
        }
        if (name == "tau" && has_tau()) out.a += e;
        else if (name == sec_name() && has_sec()) out.b += e;
        else return false;
    }
    return out.b <= sec_cap();
}

} // namespace motex
