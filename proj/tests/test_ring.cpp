#include <random>

#include "doctest.h"
#include "eqc/fgl.hpp"
#include "eqc/ring.hpp"

using namespace eqc;

namespace {

// BP-style coefficients with a Laurent Euler class, p = 2
Ring geom_ring(int bmax = 3) {
    std::vector<Generator> gens;
    for (int i = 1; i <= 3; ++i)
        gens.push_back({"v" + std::to_string(i), 2 * ((1 << i) - 1), GenKind::Polynomial});
    gens.push_back({"e", -2, GenKind::Polynomial, /*inverted=*/true});
    for (int i = 1; i <= bmax; ++i)
        gens.push_back({"b" + std::to_string(i), 2 * i - 2, GenKind::Polynomial});
    return make_ring(2, std::move(gens), {});
}

Ring borel_ring(long cap) {
    std::vector<Generator> gens;
    for (int i = 1; i <= 3; ++i)
        gens.push_back({"v" + std::to_string(i), 2 * ((1 << i) - 1), GenKind::Polynomial});
    gens.push_back({"e", -2, GenKind::SeriesVar});
    return make_ring(2, std::move(gens), {cap});
}

GradedElement two_series_at_e(const Ring& R, int order) {
    FGL f = p_typical(2, PTypicalConvention::Araki, 3, order);
    return f.n_series_at(2, GradedElement::gen(R, "e"));
}

} // namespace

TEST_CASE("arith basics follow the ring axioms") {
    Ring R = geom_ring();
    auto e = GradedElement::gen(R, "e");
    auto v1 = GradedElement::gen(R, "v1");

    CHECK(arith(e + v1, e, ArithOp::Mul) == e * e + v1 * e);
    CHECK(e.pow(-1) * e == GradedElement::one(R));
    CHECK((e + v1) - (v1 + e) == GradedElement::zero(R));
}

TEST_CASE("truncated binomial power") {
    Ring R = borel_ring(2); // keep e-weight < 2
    auto e = GradedElement::gen(R, "e");
    auto two = GradedElement::scalar(R, 2);
    auto cube = (two + e).pow(3);
    CHECK(cube == GradedElement::scalar(R, 8) + e.scaled(12));
}

TEST_CASE("negative power of a non-unit") {
    Ring R = geom_ring();
    auto v1 = GradedElement::gen(R, "v1");
    CHECK_THROWS_AS(v1.pow(-1), Error);
    auto sum = v1 + GradedElement::gen(R, "e");
    CHECK_THROWS_AS(sum.pow(-2), Error);
}

TEST_CASE("is_unit on graded Laurent rings") {
    Ring R = geom_ring();
    CHECK(is_unit(GradedElement::term(R, 3, {{"e", -2}})));
    CHECK_FALSE(is_unit(GradedElement::gen(R, "v1")));
    CHECK_FALSE(is_unit(GradedElement::term(R, 2, {{"e", -2}}))); // even scalar at p=2
    CHECK_FALSE(is_unit(GradedElement::gen(R, "b1")));
}

TEST_CASE("is_unit on complete local rings") {
    Ring R = borel_ring(9);
    auto one_plus_e = GradedElement::one(R) + GradedElement::gen(R, "e");
    CHECK(is_unit(one_plus_e));
    CHECK_FALSE(is_unit(GradedElement::gen(R, "e")));
    CHECK_FALSE(is_unit(GradedElement::gen(R, "v1")));
}

TEST_CASE("is_unit rejects Tate-style rings") {
    std::vector<Generator> gens{{"e", -2, GenKind::SeriesVar, /*inverted=*/true}};
    Ring R = make_ring(2, std::move(gens), {9});
    CHECK_THROWS_AS(is_unit(GradedElement::one(R)), Error);
}

TEST_CASE("reduce_mod_In") {
    Ring R = geom_ring();
    auto v1 = GradedElement::gen(R, "v1");
    auto v2 = GradedElement::gen(R, "v2");
    auto e = GradedElement::gen(R, "e");

    // 2e + v1 e^2 mod I_1 kills the even coefficient
    auto a = e.scaled(2) + v1 * e.pow(2);
    CHECK(reduce_mod_In(a, 1) == v1 * e.pow(2));
    // v1 + 4 v2 mod I_2: v1 killed, 4 = 0 mod 2
    CHECK(reduce_mod_In(v1 + v2.scaled(4), 2).is_zero());
    // I_0 is the identity
    CHECK(reduce_mod_In(a, 0) == a);
    // missing generator
    Ring S = make_ring(2, {{"t", 2, GenKind::Polynomial}}, {});
    CHECK_THROWS_AS(reduce_mod_In(GradedElement::gen(S, "t"), 2), Error);
}

TEST_CASE("rewrite relations normalize") {
    // Z[e]/(e^2 + 2e): e^2 -> -2e
    Ring R = make_ring(2, {{"e", -2, GenKind::SeriesVar}}, {8});
    auto e = GradedElement::gen(R, "e");
    add_relation(R, e * e + e.scaled(2), RelationTag::Rewrite);
    auto e2 = GradedElement::gen(R, "e", 2);
    CHECK(e2 == e.scaled(-2));
    CHECK((e.scaled(2) + e * e).is_zero());
    CHECK(GradedElement::gen(R, "e", 3) == e.scaled(4));
}

TEST_CASE("relation_member certificates in the Borel ring") {
    Ring R = borel_ring(9);
    auto rel = two_series_at_e(R, 12);
    add_relation(R, rel, RelationTag::CertificateOnly, "[2](e)");

    auto r1 = relation_member(rel);
    REQUIRE(r1.kind == CertResult::Zero);
    CHECK(r1.multipliers[0] == GradedElement::one(R));

    auto r2 = relation_member(GradedElement::one(R));
    CHECK(r2.kind == CertResult::Nonzero);

    // e * q1 = [2](e) with q1 = sum p_{1+k} e^k
    auto q1 = GradedElement::zero(R);
    {
        FGL f = p_typical(2, PTypicalConvention::Araki, 3, 12);
        auto cs = coefficients_by_var(f.n_series(2), "x");
        auto e = GradedElement::gen(R, "e");
        for (const auto& [k, c] : cs)
            if (k >= 1) q1 += transport(c, R) * e.pow(k - 1);
    }
    auto r3 = relation_member(GradedElement::gen(R, "e") * q1);
    CHECK(r3.kind == CertResult::Zero);
}

TEST_CASE("relation_member in the Tate ring finds Laurent multipliers") {
    std::vector<Generator> gens;
    for (int i = 1; i <= 3; ++i)
        gens.push_back({"v" + std::to_string(i), 2 * ((1 << i) - 1), GenKind::Polynomial});
    gens.push_back({"e", -2, GenKind::SeriesVar, /*inverted=*/true});
    Ring R = make_ring(2, std::move(gens), {9});
    auto rel = two_series_at_e(R, 12);
    add_relation(R, rel, RelationTag::CertificateOnly, "[2](e)");

    auto target = GradedElement::gen(R, "e").pow(-2) * rel;
    auto r = relation_member(target);
    REQUIRE(r.kind == CertResult::Zero);
    GradedElement recon = r.multipliers[0] * rel;
    CHECK(recon == target);

    CHECK(relation_member(GradedElement::term(R, 1, {{"e", -3}})).kind == CertResult::Nonzero);
}

TEST_CASE("p-locality is preserved by ring operations") {
    Ring R = geom_ring();
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> coeff(-9, 9), pick(0, 3), ex(0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        auto rand_elem = [&] {
            GradedElement a = GradedElement::zero(R);
            for (int t = 0; t < 4; ++t) {
                int c = coeff(rng);
                if (c % 2 == 0) ++c; // odd numerators stay 2-local
                a += GradedElement::term(R, Rat(c, 3), {{"v1", ex(rng)}, {"b1", ex(rng)},
                                                        {"e", pick(rng) - 1}});
            }
            return a;
        };
        auto a = rand_elem(), b = rand_elem();
        CHECK((a * b).coefficients_p_local());
        CHECK((a + b).coefficients_p_local());
    }
}

TEST_CASE("homogeneous degrees") {
    Ring R = geom_ring();
    auto a = GradedElement::term(R, 1, {{"v1", 1}, {"e", 1}}); // 2 - 2 = 0
    CHECK(a.degree() == 0);
    auto b = GradedElement::gen(R, "v2");
    CHECK(b.degree() == 6);
    auto c = a + b;
    CHECK_FALSE(c.is_homogeneous());
    CHECK_THROWS_AS(c.degree(), Error);
}

TEST_CASE("canonical text form") {
    Ring R = geom_ring();
    auto a = GradedElement::term(R, 1, {{"v1", 1}, {"e", 2}}) +
             GradedElement::term(R, 2, {{"e", 3}});
    CHECK(a.text() == "v1*e^2 + 2*e^3");
    CHECK(GradedElement::zero(R).text() == "0");
    auto b = GradedElement::term(R, Rat(-1, 3), {{"e", -1}});
    CHECK(b.text() == "-1/3*e^-1");
}
