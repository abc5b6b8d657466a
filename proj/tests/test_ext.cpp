#include "motex/ext.hpp"

#include <doctest.h>

#include <map>
#include <memory>

using namespace motex;

namespace {
std::shared_ptr<const AlgebraTable> make(AlgebraName n, FieldTag t, int q = 0) {
    return std::make_shared<AlgebraTable>(AlgebraTable::make(n, BaseRing::make(t, q)));
}

using Key = std::tuple<int, int, int>;

void compare_exact(const ExtChart& c, const std::map<Key, int>& expect, const ExtWindow& W,
                   int stem_lo, int stem_hi, int w_lo, int w_hi, int s_hi) {
    for (const auto& [k, v] : expect) {
        auto [n, s, w] = k;
        REQUIRE_MESSAGE(c.dim({s, n + s, w}) == v,
                        "dimension at stem " << n << " s " << s << " w " << w);
    }
    for (const auto& [d, cell] : c.cells()) {
        if (cell.classes.empty()) continue;
        if (d.stem() < stem_lo || d.stem() > stem_hi || d.w < w_lo || d.w > w_hi || d.s > s_hi)
            continue;
        Key k{d.stem(), d.s, d.w};
        bool known = expect.count(k) && expect.at(k) == int(cell.classes.size());
        REQUIRE_MESSAGE(known,
                        "unexpected classes at stem " << d.stem() << " s " << d.s << " w " << d.w);
    }
    (void)W;
}
} // namespace

TEST_CASE("Ext over E(1) of the closed field is polynomial on h0 and v1") {
    auto e1 = make(AlgebraName::E1, FieldTag::AlgClosed);
    Resolution res(trivial_module(e1, 24));
    res.extend(9, 22);
    res.certify(8, 18);
    ExtWindow W{8, -2, 12, -8, 8};
    ExtChart c = ext_groups(res, W);
    std::map<Key, int> expect;
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 6; ++j)
            for (int k = 0; k <= 18; ++k) {
                int n = 2 * j, s = i + j, w = j - k;
                if (s <= 8 && n >= -2 && n <= 12 && w >= -8 && w <= 8) expect[{n, s, w}] += 1;
            }
    compare_exact(c, expect, W, -2, 12, -8, 8, 8);
}

TEST_CASE("Ext over A(0) of the reals matches the quoted pattern") {
    auto a0 = make(AlgebraName::A0, FieldTag::Reals);
    Resolution res(trivial_module(a0, 44));
    res.extend(8, 42);
    ExtWindow W{7, -8, 8, -10, 6};
    ExtChart c = ext_groups(res, W);
    /* F2[tau^2, rho, h0]/(rho h0): monomials tau^{2a} rho^c h0^s with c s = 0 */
    std::map<Key, int> expect;
    for (int a = 0; a <= 8; ++a)
        for (int cexp = 0; cexp <= 10; ++cexp)
            for (int s = 0; s <= 7; ++s) {
                if (cexp > 0 && s > 0) continue;
                int n = -cexp, w = -2 * a - cexp;
                if (n >= -8 && n <= 8 && w >= -10 && w <= 6) expect[{n, s, w}] += 1;
            }
    compare_exact(c, expect, W, -8, 8, -10, 6, 7);
}

TEST_CASE("Ext over E(1) of the reals matches the quoted presentation") {
    auto e1 = make(AlgebraName::E1, FieldTag::Reals);
    Resolution res(trivial_module(e1, 64));
    res.extend(9, 62);
    ExtWindow W{8, -8, 10, -10, 4};
    ExtChart c = ext_groups(res, W);
    /* F2[tau^4, rho, h0, v1]{1, tau^2 h0}/(rho h0, rho^3 v1) */
    std::map<Key, int> expect;
    auto put = [&](int n, int s, int w) {
        if (s <= 8 && n >= -8 && n <= 10 && w >= -10 && w <= 4) expect[{n, s, w}] += 1;
    };
    for (int m = 0; m <= 4; ++m)
        for (int cexp = 0; cexp <= 12; ++cexp)
            for (int i = 0; i <= 8; ++i)
                for (int j = 0; j <= 6; ++j) {
                    if (cexp >= 1 && i >= 1) continue;
                    if (cexp >= 3 && j >= 1) continue;
                    put(-cexp + 2 * j, i + j, -4 * m - cexp + j);
                }
    for (int m = 0; m <= 4; ++m)
        for (int i = 1; i <= 8; ++i)
            for (int j = 0; j <= 6; ++j) put(2 * j, i + j, -4 * m - 2 + j);
    compare_exact(c, expect, W, -8, 10, -10, 4, 8);
}

TEST_CASE("Ext over A(1) of the closed field matches the named presentation with its products") {
    auto a1 = make(AlgebraName::A1, FieldTag::AlgClosed);
    Resolution res(trivial_module(a1, 40));
    res.extend(13, 38);
    ExtWindow W{12, -2, 20, -10, 8};
    ExtChart c = ext_groups(res, W);
    std::map<Key, int> expect;
    for (int i = 0; i <= 14; ++i)
        for (int k = 0; k <= 22; ++k)
            for (int e = 0; e <= 1; ++e)
                for (int m = 0; m <= 4; ++m)
                    for (int d = 0; d <= 24; ++d) {
                        if (i > 0 && k > 0) continue;
                        if (k > 0 && e > 0) continue;
                        if (k >= 3 && d > 0) continue;
                        int s = i + k + 3 * e + 4 * m;
                        int t = i + 2 * k + 7 * e + 12 * m;
                        int w = k + 2 * e + 4 * m - d;
                        if (s <= 12 && t - s >= -2 && t - s <= 20 && w >= -10 && w <= 8)
                            expect[{t - s, s, w}] += 1;
                    }
    compare_exact(c, expect, W, -2, 20, -10, 8, 12);

    /* products by chain-level lifting */
    ProductContext ctx{&res, &res, &c, &c};
    F2Vec u1(1);
    u1.set(0);
    Tridegree h0{1, 1, 0}, h1{1, 2, 1}, aD{3, 7, 2}, bD{4, 12, 4};
    auto prod = [&](Tridegree x, const F2Vec& xc, Tridegree y, const F2Vec& yc) {
        auto p = product_action(ctx, x, xc, y, yc);
        REQUIRE(p.has_value());
        return *p;
    };
    CHECK(prod(h1, u1, h0, u1).is_zero());           /* h0 h1 = 0 */
    CHECK_FALSE(prod(h0, u1, h0, u1).is_zero());     /* h0^2 != 0 */
    F2Vec h1sq = prod(h1, u1, h1, u1);
    CHECK_FALSE(h1sq.is_zero());
    CHECK_FALSE(prod({2, 4, 2}, h1sq, h1, u1).is_zero()); /* h1^3 != 0 */
    CHECK(c.dim({3, 6, 2}) == 0);                    /* tau h1^3 = 0 */
    CHECK(prod(aD, u1, h1, u1).is_zero());           /* h1 a = 0 */
    F2Vec a_sq = prod(aD, u1, aD, u1);
    F2Vec h0b = prod(bD, u1, h0, u1);
    F2Vec h0h0b = prod({5, 13, 4}, h0b, h0, u1);
    CHECK_FALSE(a_sq.is_zero());
    CHECK(a_sq == h0h0b);                            /* a^2 = h0^2 b */

    /* out-of-window composites report unknown rather than zero */
    CHECK_FALSE(product_action(ctx, {12, 32, 8}, u1, bD, u1).has_value());
}

TEST_CASE("products over A(0): h0 tower multiplication matches the periodic oracle") {
    auto a0 = make(AlgebraName::A0, FieldTag::Classical);
    Resolution res(trivial_module(a0, 20));
    res.extend(9, 18);
    ExtChart c = ext_groups(res, ExtWindow{8, -1, 8, 0, 0});
    ProductContext ctx{&res, &res, &c, &c};
    F2Vec u1(1);
    u1.set(0);
    F2Vec cur = u1;
    for (int i = 0; i < 7; ++i) {
        auto p = product_action(ctx, {i, i, 0}, cur, {1, 1, 0}, u1);
        REQUIRE(p.has_value());
        REQUIRE_FALSE(p->is_zero());
        cur = *p;
    }
}

TEST_CASE("structure maps: multiplication by tau and rho on chart classes") {
    auto a0 = make(AlgebraName::A0, FieldTag::Reals);
    Resolution res(trivial_module(a0, 30));
    res.extend(5, 28);
    ExtChart c = ext_groups(res, ExtWindow{4, -6, 4, -8, 2});
    /* tau^2 times the unit class is the unit class two weights down */
    F2Vec unit = c.unique_class({0, 0, 0});
    F2Vec moved = coef_structure_map(res, {0, 0, 0}, unit, CoefMono{2, 0});
    auto coords = c.coordinates({0, 0, -2}, moved);
    REQUIRE(coords.has_value());
    CHECK_FALSE(coords->is_zero());
    /* the odd tau powers are not central over the reals and the tau-spot is
     * empty: no class exists there */
    CHECK(c.dim({0, 0, -1}) == 0);
    /* rho times the unit is the rho class */
    F2Vec rho_moved = coef_structure_map(res, {0, 0, 0}, unit, CoefMono{0, 1});
    auto coords_rho = c.coordinates({0, -1, -1}, rho_moved);
    REQUIRE(coords_rho.has_value());
    CHECK_FALSE(coords_rho->is_zero());
}
