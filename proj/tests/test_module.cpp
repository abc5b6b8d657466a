#include "motex/module.hpp"
#include "motex/textio.hpp"

#include <doctest.h>

#include <memory>

using namespace motex;

namespace {
std::shared_ptr<const AlgebraTable> make(AlgebraName n, FieldTag t, int q = 0) {
    return std::make_shared<AlgebraTable>(AlgebraTable::make(n, BaseRing::make(t, q)));
}

bool acts_to(const PresentedModule& m, int letter, const std::string& from, const std::string& to) {
    for (int t : m.entry(letter, m.gen_index(from)))
        if (m.gen(t).name == to) return true;
    return false;
}
} // namespace

TEST_CASE("BC2 cohomology carries the stated operations") {
    auto a1 = make(AlgebraName::A1, FieldTag::AlgClosed);
    auto h = bc2_cohomology(a1, 16);
    /* Sq1(x) = y, Sq2(y) = y^2 */
    CHECK(acts_to(h, 0, "x", "y"));
    CHECK(acts_to(h, 1, "y", "y^2"));
    /* Sq2(xy) = xy^2 since 3 = 3 mod 4 */
    CHECK(acts_to(h, 1, "xy", "xy^2"));
    /* Sq2(y^2) = 0 since 4 = 0 mod 4 */
    CHECK(h.entry(1, h.gen_index("y^2")).empty());
    /* Sq1(y^j) = 0 */
    CHECK(h.entry(0, h.gen_index("y^3")).empty());
    h.validate_or_throw();
}

TEST_CASE("constructors self-validate over every base") {
    for (auto [tag, q] : {std::pair{FieldTag::Classical, 0}, {FieldTag::AlgClosed, 0},
                          {FieldTag::Reals, 0}, {FieldTag::FqOne, 5}, {FieldTag::FqThree, 3}}) {
        auto a1 = make(AlgebraName::A1, tag, q);
        CHECK_NOTHROW(bc2_cohomology(a1, 14).validate_or_throw());
    }
}

TEST_CASE("the question-mark module validates; a corrupted one fails") {
    auto a1 = make(AlgebraName::A1, FieldTag::Classical);
    PresentedModule q(a1, "question-mark",
                      {{"u", {1, 0}}, {"u^2", {2, 0}}, {"u^4", {4, 0}}}, 12);
    q.add_action(0, "u", "u^2");
    q.add_action(1, "u^2", "u^4");
    q.seal();
    CHECK(q.validate().empty());

    PresentedModule bad(a1, "corrupted", {{"x", {1, 0}}, {"y", {2, 0}}, {"z", {3, 0}}}, 12);
    bad.add_action(0, "x", "y");
    bad.add_action(0, "y", "z"); /* Sq1 Sq1 (x) = z */
    bad.seal();
    auto violations = bad.validate();
    REQUIRE_FALSE(violations.empty());
    CHECK(violations[0].relation == "Sq1.Sq1");
    CHECK(violations[0].at.t == 3);
}

TEST_CASE("question-mark module loads from its definition file") {
    auto a1 = make(AlgebraName::A1, FieldTag::Classical);
    auto q = module_from_records(read_records(data_path("modules/question_mark_classical.kv")), a1);
    CHECK(q.gen_count() == 3);
    CHECK(q.validate().empty());
    /* round trip */
    auto q2 = module_from_records(parse_records(module_to_text(q), "mem"), a1);
    CHECK(modules_isomorphic(q, q2));
}

TEST_CASE("short exact sequences of the computation") {
    auto a1r = make(AlgebraName::A1, FieldTag::Reals);
    auto h = bc2_cohomology(a1r, 16);

    auto qr = build_ses(SesScheme::KqQR, h);
    CHECK(qr.sub.gen_count() == 3); /* x, y, y^2 */
    CHECK(qr.sub.gen_index("x") >= 0);
    CHECK(qr.quotient.gen_index("xy") >= 0);
    CHECK(qr.quotient.gen_index("y^3") >= 0);
    check_ses_exactness(qr, 14);

    auto qc = build_ses(SesScheme::KqQC, qr.sub);
    CHECK(qc.sub.gen_count() == 2); /* y, y^2: the shifted E(Sq2) */
    CHECK(qc.quotient.gen_count() == 1);
    check_ses_exactness(qc, 14);
    /* the C piece matches A(1)//E(1) up to the (2,1) shift */
    auto c = quotient_algebra_module(a1r, AlgebraName::E1, 16);
    CHECK(qc.sub.gen(0).deg == c.gen(0).deg + Bidegree{2, 1});

    auto e1r = make(AlgebraName::E1, FieldTag::Reals);
    auto he1 = restrict_module(h, e1r);
    auto kgl = build_ses(SesScheme::KglSplit, he1);
    CHECK(kgl.sub.gen_count() == 1);
    CHECK(kgl.sub.gen(0).deg == Bidegree{2, 1});
    check_ses_exactness(kgl, 14);
}

TEST_CASE("filtrations match the shifted induced modules") {
    auto a1 = make(AlgebraName::A1, FieldTag::AlgClosed);
    auto h = bc2_cohomology(a1, 20);
    auto r = build_ses(SesScheme::KqQR, h).quotient;
    auto stages = filtration(r, FiltrationScheme::R);
    REQUIRE(stages.size() >= 3);
    /* F0 = {xy, xy^2, y^3, y^4} */
    CHECK(stages[0].subquotient.gen_count() == 4);
    CHECK(stages[0].subquotient.gen_index("xy") >= 0);
    CHECK(stages[0].subquotient.gen_index("y^4") >= 0);
    for (size_t i = 0; i + 1 < stages.size(); ++i) {
        std::string why;
        CHECK_MESSAGE(modules_isomorphic(stages[i].subquotient, stages[i].expected, &why), why);
        CHECK(stages[i].shift == Bidegree{4 * int(i) + 3, 2 * int(i) + 2});
    }

    auto e1 = make(AlgebraName::E1, FieldTag::AlgClosed);
    auto he1 = restrict_module(h, e1);
    auto v = build_ses(SesScheme::KglSplit, he1).quotient;
    auto vstages = filtration(v, FiltrationScheme::V);
    REQUIRE(vstages.size() >= 4);
    CHECK(vstages[0].subquotient.gen_count() == 2); /* x, y^2 */
    CHECK(vstages[0].subquotient.gen_index("x") >= 0);
    for (size_t i = 0; i + 1 < vstages.size(); ++i) {
        std::string why;
        CHECK_MESSAGE(modules_isomorphic(vstages[i].subquotient, vstages[i].expected, &why), why);
    }
}

TEST_CASE("as an A(0)-module BC2 splits into shifted copies of A(0)") {
    /* pairing x^e y^j with its Sq1 partner realizes the decomposition */
    for (auto tag : {FieldTag::AlgClosed, FieldTag::Reals}) {
        auto a0 = make(AlgebraName::A0, tag);
        auto a1 = make(AlgebraName::A1, tag);
        auto h = restrict_module(bc2_cohomology(a1, 16), a0);
        /* every x y^j generator hits y^{j+1}, everything else maps to zero */
        int pairs = 0;
        for (int g = 0; g < h.gen_count(); ++g) {
            const auto& targets = h.entry(0, g);
            if (h.gen(g).name[0] == 'x') {
                REQUIRE(targets.size() == 1);
                CHECK(h.gen(targets[0]).deg == h.gen(g).deg + Bidegree{1, 0});
                ++pairs;
            } else {
                CHECK(targets.empty());
            }
        }
        CHECK(pairs >= 7);
        /* degreewise the module equals the free A(0)-module on the x y^i */
        const BaseRing& R = h.base();
        for (int t = 1; t <= 14; ++t) {
            for (int w = 0; w <= h.weight_ceiling(t); ++w) {
                int dim_free = 0;
                for (int i = 0; 2 * i + 1 <= t; ++i) {
                    Bidegree gen{2 * i + 1, i + 1};
                    for (int b = 0; b < a0->rank(); ++b)
                        if (R.monomial_at(Bidegree{t, w} - gen - a0->basis(b).deg)) ++dim_free;
                }
                CHECK(h.dim({t, w}) == dim_free);
            }
        }
    }
}
