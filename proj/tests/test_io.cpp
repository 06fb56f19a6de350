#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "fncforge/io.hpp"

using namespace fncforge;

namespace {

UniPoly random_poly(const Field* F, int maxdeg, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dd(0, maxdeg);
    std::uniform_int_distribution<uint32_t> dc(0, uint32_t(F->size() - 1));
    int d = dd(rng);
    std::vector<uint32_t> c(size_t(d) + 1);
    for (auto& v : c) v = dc(rng);
    return {F, std::move(c)};
}

// Split one CSV row on commas that sit outside double quotes.
std::vector<std::string> csv_fields(const std::string& row) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (char ch : row) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            out.emplace_back();
        } else {
            out.back() += ch;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("field spec grammar", "[io]") {
    SECTION("accepted forms") {
        auto sp = parse_field_spec("5^3");
        REQUIRE(sp.p == 5);
        REQUIRE(sp.s == 3);
        REQUIRE(sp.k == 1);
        REQUIRE(tower_from_spec("5^3").top->size() == 125);

        auto tw = tower_from_spec("2^1:3");
        REQUIRE(tw.p == 2);
        REQUIRE(tw.s == 1);
        REQUIRE(tw.k == 3);
        REQUIRE(tw.base->size() == 2);
        REQUIRE(tw.top->size() == 8);
        REQUIRE(tw.top == Field::extension(Field::prime(2), 3));

        REQUIRE(tower_from_spec("7").top->size() == 7);
        REQUIRE(tower_from_spec(" 3 ^ 2 : 2 ").top->size() == 81);
    }
    SECTION("canonical spelling round trips") {
        for (const char* s : {"2^1:3", "5^3", "7^1", "3^2:2"}) {
            auto tw = tower_from_spec(s);
            REQUIRE(field_spec_string(tw) == s);
            auto again = tower_from_spec(field_spec_string(tw));
            REQUIRE(again.top == tw.top);
            REQUIRE(again.base == tw.base);
        }
        REQUIRE(field_spec_string(tower_from_spec("7")) == "7^1");
    }
    SECTION("rejected forms") {
        REQUIRE_THROWS_AS(parse_field_spec(""), ParseFailure);
        REQUIRE_THROWS_AS(parse_field_spec("x"), ParseFailure);
        REQUIRE_THROWS_AS(parse_field_spec("2^"), ParseFailure);
        REQUIRE_THROWS_AS(parse_field_spec("2^0"), ParseFailure);
        REQUIRE_THROWS_AS(parse_field_spec("2^1:"), ParseFailure);
        REQUIRE_THROWS_AS(parse_field_spec("1^2"), ParseFailure);
        REQUIRE_THROWS_AS(parse_field_spec("2^1:3junk"), ParseFailure);
        REQUIRE_THROWS_AS(parse_field_spec("99999999999999999999"), ParseFailure);
        REQUIRE_THROWS_AS(tower_from_spec("4^2"), NotPrime);
    }
}

TEST_CASE("element literals", "[io]") {
    auto F9 = Field::extension(Field::prime(3), 2);
    const Field* F = F9.get();
    const uint32_t g = F->generator();

    for (uint32_t v = 0; v < 9; ++v) REQUIRE(parse_element(F, std::to_string(v)) == v);
    REQUIRE(parse_element(F, "g") == g);
    REQUIRE(parse_element(F, "g^0") == F->from_int(1));
    REQUIRE(parse_element(F, "g^1") == g);
    REQUIRE(parse_element(F, "g^2") == F->mul(g, g));
    REQUIRE(parse_element(F, "g^8") == F->from_int(1));
    REQUIRE(parse_element(F, " g^3 ") == F->pow(g, 3));

    // The generator really generates: its first q-1 powers cover F* once.
    std::set<uint32_t> powers;
    for (uint64_t e = 0; e < 8; ++e) powers.insert(parse_element(F, "g^" + std::to_string(e)));
    REQUIRE(powers.size() == 8);
    REQUIRE(powers.count(0) == 0);

    REQUIRE_THROWS_AS(parse_element(F, "9"), ParseFailure);
    REQUIRE_THROWS_AS(parse_element(F, "abc"), ParseFailure);
    REQUIRE_THROWS_AS(parse_element(F, "-1"), ParseFailure);
    REQUIRE_THROWS_AS(parse_element(F, ""), ParseFailure);
    REQUIRE_THROWS_AS(parse_element(F, "g^"), ParseFailure);
    REQUIRE_THROWS_AS(parse_element(F, "g2"), ParseFailure);
    REQUIRE_THROWS_AS(parse_element(F, "2 3"), ParseFailure);
}

TEST_CASE("polynomial grammar", "[io]") {
    auto F5 = Field::prime(5);
    const Field* F = F5.get();

    SECTION("term sums over a prime field") {
        REQUIRE(parse_poly(F, "x^3 + 2*x + 1") == UniPoly(F, {1, 2, 0, 1}));
        REQUIRE(parse_poly(F, "2*x^2+3*x^2").is_zero());
        REQUIRE(parse_poly(F, "x - 1") == UniPoly(F, {4, 1}));
        REQUIRE(parse_poly(F, "-x") == UniPoly(F, {0, 4}));
        REQUIRE(parse_poly(F, "1") == UniPoly::constant(F, 1));
        REQUIRE(parse_poly(F, "0").is_zero());
        REQUIRE(parse_poly(F, "2 + 3").is_zero());
        REQUIRE(parse_poly(F, "2x") == parse_poly(F, "2*x"));
        REQUIRE(parse_poly(F, " x ^ 2 + 1 ") == UniPoly(F, {1, 0, 1}));
        REQUIRE(parse_poly(F, "+x") == UniPoly::x(F));
        REQUIRE(parse_poly(F, "- -x") == UniPoly::x(F));
    }
    SECTION("the variable letter is free but fixed") {
        REQUIRE(parse_poly(F, "y^3+1") == parse_poly(F, "x^3+1"));
        REQUIRE(parse_poly(F, "t^2 + 4*t") == UniPoly(F, {0, 4, 1}));
        REQUIRE_THROWS_AS(parse_poly(F, "x + y"), ParseFailure);
    }
    SECTION("coefficient vectors match term sums") {
        REQUIRE(parse_poly(F, "[1,2,0,1]") == parse_poly(F, "x^3 + 2*x + 1"));
        REQUIRE(parse_poly(F, "[]").is_zero());
        REQUIRE(parse_poly(F, "[0]").is_zero());
        REQUIRE(parse_poly(F, "[ 1 , 2 ]") == UniPoly(F, {1, 2}));
        REQUIRE(parse_poly(F, "[0,0,3,0]") == UniPoly(F, {0, 0, 3}));
    }
    SECTION("generator coefficients") {
        auto F4 = Field::extension(Field::prime(2), 2);
        const Field* K = F4.get();
        const uint32_t g = K->generator();
        UniPoly f = parse_poly(K, "g^2*x + g");
        REQUIRE(f.coeff(0) == g);
        REQUIRE(f.coeff(1) == K->mul(g, g));
        REQUIRE(parse_poly(K, "[g, g^2]") == f);
        REQUIRE(parse_poly(K, "g") == UniPoly::constant(K, g));
        REQUIRE(parse_poly(K, "gx") == UniPoly(K, {0, g}));
    }
    SECTION("rejected forms") {
        REQUIRE_THROWS_AS(parse_poly(F, ""), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "   "), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "x*x"), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "x^"), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "2^3"), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "*x"), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "x^-2"), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "x +"), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "5*x"), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "[1,2"), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "[1],2"), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "[7]"), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "x^2000000"), ParseFailure);
        REQUIRE_THROWS_AS(parse_poly(F, "2*"), ParseFailure);
    }
    SECTION("canonical output re-parses") {
        REQUIRE(poly_string(UniPoly::zero(F)) == "[0]");
        REQUIRE(poly_string(UniPoly(F, {1, 2, 0, 1})) == "[1,2,0,1]");
        std::mt19937_64 rng(101);
        auto F9 = Field::extension(Field::prime(3), 2);
        auto F8 = Field::extension(Field::prime(2), 3);
        for (const Field* K : {F5.get(), F9.get(), F8.get()}) {
            for (int t = 0; t < 40; ++t) {
                UniPoly f = random_poly(K, 9, rng);
                REQUIRE(parse_poly(K, poly_string(f)) == f);
                REQUIRE(poly_from_json(K, poly_json(f)) == f);
                REQUIRE(poly_from_json(K, Json::parse(poly_json(f).dump())) == f);
            }
        }
    }
}

TEST_CASE("reports round-trip through JSON", "[io]") {
    auto F4 = Field::extension(Field::prime(2), 2);
    const Field* K4 = F4.get();

    SECTION("field info") {
        auto tw = build_tower(2, 1, 3);
        Json j = field_info_json(tw);
        REQUIRE(j.at("spec") == "2^1:3");
        REQUIRE(j.at("q") == 2);
        REQUIRE(j.at("Q") == 8);
        auto back = tower_from_json(Json::parse(j.dump()));
        REQUIRE(back.top == tw.top);
        REQUIRE(back.base == tw.base);
    }
    SECTION("value sets") {
        auto F9 = Field::extension(Field::prime(3), 2);
        auto r = value_set(UniPoly::monomial(F9.get(), 1, 2));
        auto back = value_set_from_json(Json::parse(value_set_json(r).dump()));
        REQUIRE(back.values == r.values);
        REQUIRE(back.size == r.size);
        REQUIRE(back.lower_bound == r.lower_bound);
        REQUIRE(back.is_mvsp == r.is_mvsp);
        REQUIRE(back.values_in_base == r.values_in_base);

        auto c = value_set(UniPoly::constant(F9.get(), 2));
        REQUIRE(!c.is_mvsp.has_value());
        REQUIRE(value_set_json(c).at("is_mvsp").is_null());
        REQUIRE(!value_set_from_json(value_set_json(c)).is_mvsp.has_value());
    }
    SECTION("certificates") {
        auto F7 = Field::prime(7);
        auto good = mills_criterion(UniPoly::monomial(F7.get(), 1, 3));
        REQUIRE(good.holds);
        auto back = mills_certificate_from_json(F7.get(),
                                                Json::parse(mills_certificate_json(good).dump()));
        REQUIRE(back.T == good.T);
        REQUIRE(back.theta == good.theta);
        REQUIRE(back.holds == good.holds);

        auto bad = mills_criterion(UniPoly::monomial(F7.get(), 1, 4));
        REQUIRE(!bad.holds);
        REQUIRE(!bad.theta.has_value());
        auto back2 = mills_certificate_from_json(F7.get(), mills_certificate_json(bad));
        REQUIRE(back2.T == bad.T);
        REQUIRE(!back2.theta.has_value());
    }
    SECTION("structure decompositions") {
        auto F9 = Field::extension(Field::prime(3), 2);
        auto st = mills_structure(UniPoly(F9.get(), {0, 1, 0, 1}));
        auto back = mills_structure_from_json(F9.get(),
                                              Json::parse(mills_structure_json(st).dump()));
        REQUIRE(back.gamma == st.gamma);
        REQUIRE(back.L == st.L);
        REQUIRE(back.l == st.l);
        REQUIRE(back.v == st.v);
        REQUIRE(back.m == st.m);
        REQUIRE(back.kk == st.kk);
        REQUIRE(back.Npoly == st.Npoly);
        REQUIRE(back.omega == st.omega);
        REQUIRE(back.verified == st.verified);
    }
    SECTION("curve verdicts") {
        SepCurve fermat(parse_poly(K4, "x^3"), parse_poly(K4, "y^3+1"));
        FncReport r = fnc_cross_check(fermat);
        REQUIRE(r.divisibility_verdict == true);
        FncReport back = fnc_report_from_json(K4, Json::parse(fnc_report_json(r).dump()));
        REQUIRE(back.divisibility_verdict == r.divisibility_verdict);
        REQUIRE(back.mills_verdict == r.mills_verdict);
        REQUIRE(back.certificate.has_value() == r.certificate.has_value());
        if (r.certificate) {
            REQUIRE(back.certificate->first == r.certificate->first);
            REQUIRE(back.certificate->second == r.certificate->second);
        }
        REQUIRE(back.components_rational_caveat == r.components_rational_caveat);
        REQUIRE(back.method_agreement == r.method_agreement);

        auto F5 = Field::prime(5);
        SepCurve plain(UniPoly::monomial(F5.get(), 1, 2), UniPoly::monomial(F5.get(), 1, 3));
        FncReport neg = fnc_cross_check(plain);
        REQUIRE(neg.divisibility_verdict == false);
        FncReport nback = fnc_report_from_json(F5.get(), fnc_report_json(neg));
        REQUIRE(nback.divisibility_verdict == false);
        REQUIRE(nback.certificate.has_value() == neg.certificate.has_value());
    }
    SECTION("genus reports and covers") {
        SuperCurve herm(3, parse_poly(K4, "x^2+x"));
        GenusReport gr = kummer_genus(herm);
        GenusReport back = genus_report_from_json(K4, Json::parse(genus_report_json(gr).dump()));
        REQUIRE(back.genus == gr.genus);
        REQUIRE(back.affine.size() == gr.affine.size());
        for (size_t i = 0; i < gr.affine.size(); ++i) {
            REQUIRE(back.affine[i].locus == gr.affine[i].locus);
            REQUIRE(back.affine[i].multiplicity == gr.affine[i].multiplicity);
            REQUIRE(back.affine[i].gcd_with_n == gr.affine[i].gcd_with_n);
        }
        REQUIRE(back.infinite_valuation == gr.infinite_valuation);
        REQUIRE(back.infinite_gcd == gr.infinite_gcd);
        REQUIRE(back.smooth_plane == gr.smooth_plane);

        SuperCurve cback = super_curve_from_json(K4, Json::parse(super_curve_json(herm).dump()));
        REQUIRE(cback.n == herm.n);
        REQUIRE(cback.f == herm.f);
    }
    SECTION("point counts") {
        SuperCurve herm(3, parse_poly(K4, "x^2+x"));
        CurveStats s = with_sv_bound(count_points_projective(herm), K4->size(), 2);
        REQUIRE(s.N == 9);
        CurveStats back = curve_stats_from_json(Json::parse(curve_stats_json(s).dump()));
        REQUIRE(back.N == s.N);
        REQUIRE(back.d == s.d);
        REQUIRE(back.hv_value == s.hv_value);
        REQUIRE(back.genus == s.genus);
        REQUIRE(back.nu == s.nu);
        REQUIRE(back.sv_bound_value == s.sv_bound_value);
        REQUIRE(back.smooth_plane == s.smooth_plane);

        // Optionals absent: a cover whose genus formula has no meaning here.
        auto F5 = Field::prime(5);
        CurveStats split = count_points_projective(SuperCurve(2, UniPoly::monomial(F5.get(), 1, 2)));
        REQUIRE(!split.genus.has_value());
        CurveStats sback = curve_stats_from_json(curve_stats_json(split));
        REQUIRE(!sback.genus.has_value());
        REQUIRE(!sback.sv_bound_value.has_value());
        REQUIRE(sback.N == split.N);

        HvhReport h = hvh_check(herm);
        HvhReport hback = hvh_report_from_json(Json::parse(hvh_report_json(h).dump()));
        REQUIRE(hback.N == h.N);
        REQUIRE(hback.cover_count == h.cover_count);
        REQUIRE(hback.smooth_plane == h.smooth_plane);
        REQUIRE(hback.bound_holds == h.bound_holds);
        REQUIRE(hback.equality == h.equality);
        REQUIRE(hback.equality_iff_smooth == h.equality_iff_smooth);
    }
    SECTION("arc reports") {
        auto F5 = Field::prime(5);
        BiPoly conic = BiPoly::from_x(UniPoly::monomial(F5.get(), 1, 2)) -
                       BiPoly::from_y(UniPoly::x(F5.get()));
        auto pts = projective_zeros(conic);
        ArcReport full = arc_completeness(F5.get(), pts, 2);
        REQUIRE(full.is_complete);
        REQUIRE(!full.witness.has_value());
        ArcReport back = arc_report_from_json(Json::parse(arc_report_json(full).dump()));
        REQUIRE(back.points == full.points);
        REQUIRE(back.d == full.d);
        REQUIRE(back.is_arc == full.is_arc);
        REQUIRE(back.is_complete == full.is_complete);
        REQUIRE(back.witness == full.witness);

        ArcReport empty = arc_completeness(F5.get(), {}, 2);
        REQUIRE(empty.witness.has_value());
        ArcReport eback = arc_report_from_json(arc_report_json(empty));
        REQUIRE(eback.witness == empty.witness);
        REQUIRE(arc_report_json(empty).at("points").empty());
    }
    SECTION("census records, JSON lines and CSV") {
        auto recs = census_superelliptic(K4, CensusMode::kExhaustive);
        REQUIRE(!recs.empty());
        std::string lines1, lines2;
        for (const auto& rec : recs) {
            Json j = census_record_json(rec);
            CensusRecord back = census_record_from_json(K4, Json::parse(j.dump()));
            REQUIRE(back.n == rec.n);
            REQUIRE(back.f == rec.f);
            REQUIRE(back.stats.N == rec.stats.N);
            REQUIRE(back.stats.genus == rec.stats.genus);
            REQUIRE(back.stats.smooth_plane == rec.stats.smooth_plane);
            REQUIRE(back.corollary.all_pass() == rec.corollary.all_pass());
            REQUIRE(back.irreducibility == rec.irreducibility);
            lines1 += j.dump() + "\n";

            auto cols = csv_fields(census_csv_row(rec));
            REQUIRE(cols.size() == csv_fields(census_csv_header()).size());
            REQUIRE(cols[0] == std::to_string(rec.n));
            REQUIRE(cols[1] == poly_string(rec.f));
            REQUIRE(cols[2] == std::to_string(rec.stats.N));
            REQUIRE(cols.back() == irreducibility_string(rec.irreducibility));
        }
        for (const auto& rec : recs) lines2 += census_record_json(rec).dump() + "\n";
        REQUIRE(lines1 == lines2);
        REQUIRE(csv_fields(census_csv_header()).size() == 11);
    }
    SECTION("verdict strings") {
        for (auto v : {Irreducibility::kAbsolutelyIrreducible, Irreducibility::kRationalFactors,
                       Irreducibility::kUnknown})
            REQUIRE(irreducibility_from_string(irreducibility_string(v)) == v);
        REQUIRE_THROWS_AS(irreducibility_from_string("maybe"), ParseFailure);
    }
}
