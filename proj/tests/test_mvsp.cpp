#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "fncforge/mvsp.hpp"

using namespace fncforge;

TEST_CASE("minimal value set predicate", "[mvsp]") {
    auto f5 = Field::prime(5);
    auto f4 = build_tower(2, 1, 2).top;
    REQUIRE(is_mvsp(UniPoly::x(f4.get())));
    REQUIRE(is_mvsp(UniPoly::monomial(f5.get(), 1, 2)));       // squares: {0,1,4}
    REQUIRE(is_mvsp(UniPoly(f5.get(), {0, 1, 1})));            // x^2+x: {0,1,2}
    REQUIRE_FALSE(is_mvsp(UniPoly::monomial(f5.get(), 1, 3)));  // cubing permutes F_5
    REQUIRE_THROWS_AS(is_mvsp(UniPoly::constant(f5.get(), 2)), ConstantInput);
}

TEST_CASE("certificate identity", "[mvsp]") {
    auto f4 = build_tower(2, 1, 2).top;
    auto c1 = mills_criterion(UniPoly(f4.get(), {0, 1, 1}));
    REQUIRE(c1.holds);
    REQUIRE(c1.T == UniPoly(f4.get(), {0, 1, 1}));  // x(x-1) = x^2+x in char 2
    REQUIRE(*c1.theta == 1);

    auto f3 = Field::prime(3);
    auto c2 = mills_criterion(UniPoly(f3.get(), {0, 0, 2, 0, 1}));  // x^4 - x^2
    REQUIRE_FALSE(c2.holds);
    REQUIRE_FALSE(c2.theta.has_value());

    auto f5 = Field::prime(5);
    auto c3 = mills_criterion(UniPoly::x(f5.get()));
    REQUIRE(c3.holds);
    REQUIRE(c3.T == field_vanishing_poly(f5.get()));
    REQUIRE(*c3.theta == 1);

    auto f9 = build_tower(3, 1, 2).top;
    auto c4 = mills_criterion(UniPoly(f9.get(), {0, 1, 0, 1}));  // x^3 + x
    REQUIRE(c4.holds);
    REQUIRE(*c4.theta == 1);

    // x^8+x^6+x^4+x^2 over F_9 has values {0,1} but no valid scalar: the
    // leading-coefficient candidate is 2, which fails the full identity.
    UniPoly g(f9.get(), {0, 0, 1, 0, 1, 0, 1, 0, 1});
    REQUIRE(value_set(g).values == std::vector<uint32_t>{0, 1});
    REQUIRE(is_mvsp(g));
    REQUIRE_FALSE(mills_criterion(g).holds);
    REQUIRE_FALSE(theta_of_type(g).has_value());
}

TEST_CASE("certificate implies minimality, exhaustively", "[mvsp]") {
    auto f5 = Field::prime(5);
    // every f of degree 1..4 over F_5
    for (uint32_t c0 = 0; c0 < 5; ++c0)
        for (uint32_t c1 = 0; c1 < 5; ++c1)
            for (uint32_t c2 = 0; c2 < 5; ++c2)
                for (uint32_t c3 = 0; c3 < 5; ++c3)
                    for (uint32_t c4 = 0; c4 < 5; ++c4) {
                        UniPoly f(f5.get(), {c0, c1, c2, c3, c4});
                        if (f.is_constant()) continue;
                        auto cert = mills_criterion(f);
                        if (cert.holds) {
                            REQUIRE(is_mvsp(f));
                            REQUIRE(*cert.theta != 0);
                            // converse on the safe range: here |V|>2 or |V|=2<p
                            // so only |V|>2 must imply a certificate
                        }
                        auto vs = value_set(f);
                        if (vs.is_mvsp.value_or(false) && vs.size > 2) REQUIRE(cert.holds);
                    }
}

TEST_CASE("structure decomposition on known shapes", "[mvsp]") {
    auto f9 = build_tower(3, 1, 2).top;
    SECTION("additive fiber polynomial") {
        auto st = mills_structure(UniPoly(f9.get(), {0, 1, 0, 1}));
        REQUIRE(st.verified == MillsStructure::kAll);
        REQUIRE(st.v == 1);
        REQUIRE(st.m == 1);
        REQUIRE(st.kk == 1);
        REQUIRE(st.gamma == std::vector<uint32_t>{0, 1, 2});
        REQUIRE(st.l == std::vector<int>{3, 3, 3});
        REQUIRE(st.Npoly == UniPoly::one(f9.get()));
        REQUIRE(st.omega == std::vector<uint32_t>{2, 1});
    }
    SECTION("multiplicative power map") {
        auto st = mills_structure(UniPoly::monomial(f9.get(), 1, 4));
        REQUIRE(st.verified == MillsStructure::kAll);
        REQUIRE(st.v == 4);
        REQUIRE(st.m == 1);
        REQUIRE(st.kk == 2);
        REQUIRE(st.gamma[0] == 0);
        REQUIRE(st.l[0] == 1);
        REQUIRE(st.Npoly == UniPoly::one(f9.get()));
        REQUIRE(st.omega == std::vector<uint32_t>{2, 1});
    }
    SECTION("identity map and error paths") {
        auto f3 = Field::prime(3);
        auto st = mills_structure(UniPoly::x(f3.get()));
        REQUIRE(st.verified == MillsStructure::kAll);
        REQUIRE(st.v == 1);

        auto f2 = Field::prime(2);
        REQUIRE_THROWS_AS(mills_structure(UniPoly::x(f2.get())), TooFewValues);
        auto f5 = Field::prime(5);
        REQUIRE_THROWS_AS(mills_structure(UniPoly::monomial(f5.get(), 1, 3)), NotMVSP);
        REQUIRE_THROWS_AS(mills_structure(two_value_split(f5.get(), {0, 1})), TooFewValues);
    }
}

TEST_CASE("multiplicity report", "[mvsp]") {
    auto f4 = build_tower(2, 1, 2).top;
    auto rep = lemma_multiplicity_report(UniPoly(f4.get(), {0, 1, 1}));
    REQUIRE(rep.all_ok());
    REQUIRE(rep.theta == 1);
    REQUIRE(rep.details.size() == 2);
    for (const auto& det : rep.details) REQUIRE(det.rational_mults.size() == 2);

    auto f9 = build_tower(3, 1, 2).top;
    auto rep2 = lemma_multiplicity_report(UniPoly::monomial(f9.get(), 1, 4));
    REQUIRE(rep2.all_ok());
    // the zero fiber is a single rational root of multiplicity 4
    REQUIRE(rep2.details[0].gamma == 0);
    REQUIRE(rep2.details[0].rational_mults ==
            std::vector<std::pair<uint32_t, int>>{{0, 4}});

    auto f5 = Field::prime(5);
    REQUIRE_THROWS_AS(lemma_multiplicity_report(UniPoly(f5.get(), {0, 0, 2, 0, 1})),
                      PreconditionFailed);
}

TEST_CASE("multiplicity report holds wherever the certificate does", "[mvsp]") {
    auto f5 = Field::prime(5);
    for (uint32_t c0 = 0; c0 < 5; ++c0)
        for (uint32_t c1 = 0; c1 < 5; ++c1)
            for (uint32_t c2 = 0; c2 < 5; ++c2)
                for (uint32_t c3 = 0; c3 < 5; ++c3)
                    for (uint32_t c4 = 0; c4 < 5; ++c4) {
                        UniPoly f(f5.get(), {c0, c1, c2, c3, c4});
                        if (f.is_constant()) continue;
                        if (!mills_criterion(f).holds) continue;
                        REQUIRE(lemma_multiplicity_report(f).all_ok());
                    }
}

TEST_CASE("full-value-set family", "[mvsp][w]") {
    SECTION("quadratic tower span matches the closed form") {
        auto tw = build_tower(3, 1, 2);
        const Field* top = tw.top.get();
        uint32_t lam = uint32_t(tw.q);  // the adjoined root, not in the base
        // reference span: 1, x^{q+1}, x + x^q, lam x + (lam x)^q
        std::vector<UniPoly> gens = {
            UniPoly::one(top),
            UniPoly::monomial(top, 1, size_t(tw.q) + 1),
            UniPoly::monomial(top, 1, 1) + UniPoly::monomial(top, 1, size_t(tw.q)),
            UniPoly::monomial(top, lam, 1) +
                UniPoly::monomial(top, top->pow(lam, tw.q), size_t(tw.q)),
        };
        std::set<std::vector<uint32_t>> ref;
        for (uint32_t a = 0; a < 3; ++a)
            for (uint32_t b = 0; b < 3; ++b)
                for (uint32_t c = 0; c < 3; ++c)
                    for (uint32_t d = 0; d < 3; ++d) {
                        UniPoly f = gens[0].scaled(a) + gens[1].scaled(b) + gens[2].scaled(c) +
                                    gens[3].scaled(d);
                        ref.insert(f.coeffs());
                    }
        std::set<std::vector<uint32_t>> got;
        for (const auto& f : w_enumerate(tw, true)) got.insert(f.coeffs());
        REQUIRE(got == ref);
        REQUIRE(got.size() == 81);
    }

    SECTION("cardinality and membership") {
        struct Case {
            uint64_t p;
            int s, k;
            size_t nonconstant;
        };
        for (Case c : {Case{2, 1, 2, 14}, Case{3, 1, 2, 78}, Case{2, 1, 3, 254}}) {
            auto tw = build_tower(c.p, c.s, c.k);
            REQUIRE(w_basis(tw).size() == (size_t(1) << c.k));
            auto fam = w_enumerate(tw);
            REQUIRE(fam.size() == c.nonconstant);
            for (const auto& f : fam) {
                REQUIRE(w_membership(tw, f));
                REQUIRE(is_mvsp(f));
                auto vs = value_set(f);
                REQUIRE(vs.size == tw.q);
                REQUIRE(vs.values_in_base);
                // certificate always exists here since |V| = q > 2 or q = p = 2
                if (tw.q > 2) REQUIRE(mills_criterion(f).holds);
            }
        }
    }

    SECTION("named members") {
        auto tw8 = build_tower(2, 1, 3);
        auto fam8 = w_enumerate(tw8);
        auto has = [](const std::vector<UniPoly>& fam, const UniPoly& f) {
            return std::find(fam.begin(), fam.end(), f) != fam.end();
        };
        REQUIRE(has(fam8, UniPoly(tw8.top.get(), {0, 1, 1, 0, 1})));    // x^4+x^2+x
        REQUIRE(has(fam8, UniPoly::monomial(tw8.top.get(), 1, 7)));     // x^7
        auto tw9 = build_tower(3, 1, 2);
        auto fam9 = w_enumerate(tw9);
        REQUIRE(has(fam9, UniPoly(tw9.top.get(), {0, 1, 0, 1})));       // x^3+x
        REQUIRE(has(fam9, UniPoly::monomial(tw9.top.get(), 1, 4)));     // x^4
        REQUIRE_FALSE(w_membership(build_tower(2, 1, 2),
                                   UniPoly::monomial(build_tower(2, 1, 2).top.get(), 1, 2)));
    }

    SECTION("structure decomposition verifies across the family") {
        auto tw = build_tower(3, 1, 2);
        for (const auto& f : w_enumerate(tw))
            REQUIRE(mills_structure(f).verified == MillsStructure::kAll);
    }

    SECTION("degenerate single-level tower") {
        auto tw = build_tower(3, 1, 1);
        auto fam = w_enumerate(tw);
        REQUIRE(fam.size() == 6);  // all a x + b with a nonzero
        for (const auto& f : fam) REQUIRE(f.deg() == 1);
    }

    SECTION("level checks") {
        auto tw = build_tower(3, 1, 2);
        REQUIRE_THROWS_AS(w_membership(tw, UniPoly::x(tw.base.get())), LevelMismatch);
        REQUIRE_THROWS_AS(w_membership(tw, UniPoly::one(tw.top.get())), ConstantInput);
    }
}

TEST_CASE("two-valued splitters", "[mvsp]") {
    auto f2 = Field::prime(2);
    REQUIRE(two_value_split(f2.get(), {0}) == UniPoly(f2.get(), {1, 1}));

    auto f5 = Field::prime(5);
    std::set<std::vector<uint32_t>> distinct;
    for (uint64_t mask = 1; mask + 1 < (1u << 5); ++mask) {
        std::vector<uint32_t> S;
        for (uint32_t a = 0; a < 5; ++a)
            if (mask >> a & 1) S.push_back(a);
        UniPoly f = two_value_split(f5.get(), S);
        REQUIRE(f.deg() <= 4);
        REQUIRE(is_mvsp(f));
        REQUIRE(value_set(f).values == std::vector<uint32_t>{0, 1});
        for (uint32_t a = 0; a < 5; ++a)
            REQUIRE((f.eval(a) == 1) == bool(mask >> a & 1));
        // interpolation form: sum over S of 1 - (x-a)^{q-1}
        UniPoly lag = UniPoly::zero(f5.get());
        for (uint32_t a : S)
            lag = lag + UniPoly::one(f5.get()) -
                  UniPoly(f5.get(), {f5->neg(a), 1}).pow(4);
        REQUIRE(f == lag);
        distinct.insert(f.coeffs());
    }
    REQUIRE(distinct.size() == 30);  // 2^5 - 2

    // complement of a singleton b: the indicator is (x - b)^{q-1}
    UniPoly f = two_value_split(f5.get(), {0, 1, 2, 3});
    REQUIRE(f == UniPoly(f5.get(), {f5->neg(4), 1}).pow(4));
    // while the singleton itself is 1 - (x - b)^{q-1}
    REQUIRE(two_value_split(f5.get(), {4}) ==
            UniPoly::one(f5.get()) - UniPoly(f5.get(), {f5->neg(4), 1}).pow(4));

    REQUIRE_THROWS_AS(two_value_split(f5.get(), {}), BadSubset);
    REQUIRE_THROWS_AS(two_value_split(f5.get(), {0, 1, 2, 3, 4}), BadSubset);
    REQUIRE_THROWS_AS(two_value_split(f5.get(), {1, 1}), BadSubset);
    REQUIRE_THROWS_AS(two_value_split(f5.get(), {7}), BadSubset);
}

TEST_CASE("derivative-split families and their sign", "[mvsp]") {
    auto f5 = Field::prime(5);
    auto A5 = typeA_enumerate(f5.get());
    REQUIRE(A5.size() == 5);  // only linear factors survive g'' = 0 over F_5
    for (const auto& f : A5) {
        REQUIRE(theta_of_type(f) == 1);
        auto g = is_typeA(f);
        REQUIRE(g.has_value());
        REQUIRE(g->deg() == 1);
        REQUIRE_FALSE(is_typeB(f).has_value());  // disjoint families, q odd
        UniPoly mirror = UniPoly::one(f5.get()) - f;
        REQUIRE(theta_of_type(mirror) == -1);
        REQUIRE(is_typeB(mirror).has_value());
        REQUIRE_FALSE(is_typeA(mirror).has_value());
    }

    // a witness with nonzero second derivative gives no sign at all
    REQUIRE_FALSE(theta_of_type(two_value_split(f5.get(), {0, 1})).has_value());

    // char 2: every squarefree split divisor qualifies
    auto f4 = build_tower(2, 1, 2).top;
    REQUIRE(typeA_enumerate(f4.get()).size() == 14);

    auto f9 = build_tower(3, 1, 2).top;
    auto A9 = typeA_enumerate(f9.get());
    for (const auto& f : A9) {
        REQUIRE(theta_of_type(f) == 1);
        REQUIRE(value_set(f).values == std::vector<uint32_t>{0, 1});
        REQUIRE_FALSE(is_typeB(f).has_value());
    }
    REQUIRE_THROWS_AS(theta_of_type(UniPoly::x(f5.get())), BadValueSet);
}

TEST_CASE("single-value decomposition", "[mvsp]") {
    auto f3 = Field::prime(3);
    UniPoly van = field_vanishing_poly(f3.get());

    auto d1 = vf1_decompose(van);
    REQUIRE(d1.has_value());
    REQUIRE(d1->first == 1);
    REQUIRE(d1->second == UniPoly::one(f3.get()));

    REQUIRE_FALSE(vf1_decompose(van * UniPoly::x(f3.get())).has_value());

    auto d2 = vf1_decompose(van * van * UniPoly::monomial(f3.get(), 1, 3));
    REQUIRE(d2.has_value());
    REQUIRE(d2->first == 2);
    REQUIRE(d2->second == UniPoly::x(f3.get()));

    auto d3 = vf1_decompose(van.pow(3) + UniPoly::constant(f3.get(), 2));
    REQUIRE(d3.has_value());
    REQUIRE(d3->first == 3);
    REQUIRE(d3->second == UniPoly::one(f3.get()));

    REQUIRE_THROWS_AS(vf1_decompose(UniPoly::x(f3.get())), BadValueSet);
    REQUIRE_THROWS_AS(vf1_decompose(UniPoly::constant(f3.get(), 1)), ConstantInput);
}

TEST_CASE("affine equivalence scan", "[mvsp]") {
    auto f5 = Field::prime(5);
    UniPoly f = UniPoly::monomial(f5.get(), 1, 2);
    auto self = affine_equivalent(f, f);
    REQUIRE(self == std::make_pair(uint32_t(1), uint32_t(0)));
    auto sh = affine_equivalent(f, UniPoly(f5.get(), {1, 2, 1}));
    REQUIRE(sh == std::make_pair(uint32_t(1), uint32_t(1)));

    // low-degree minimal polynomials over F_9 with a common value set are
    // related by a substitution x -> ax + b
    auto f9 = build_tower(3, 1, 2).top;
    std::map<std::vector<uint32_t>, std::vector<UniPoly>> by_values;
    for (uint32_t c0 = 0; c0 < 9; ++c0)
        for (uint32_t c1 = 0; c1 < 9; ++c1)
            for (uint32_t c2 = 0; c2 < 9; ++c2)
                for (uint32_t c3 = 0; c3 < 9; ++c3) {
                    UniPoly f(f9.get(), {c0, c1, c2, c3});
                    if (f.is_constant()) continue;
                    auto vs = value_set(f);
                    if (!vs.is_mvsp.value_or(false)) continue;
                    by_values[vs.values].push_back(f);
                }
    for (auto& [vals, group] : by_values)
        for (size_t i = 1; i < group.size(); ++i)
            REQUIRE(affine_equivalent(group[0], group[i]).has_value());
}
