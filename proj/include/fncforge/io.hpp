#pragma once

// Text front end shared by the tools: field specs, element literals, one
// polynomial grammar for every verb, and JSON/CSV report emission.  JSON is
// the source of truth; each *_from_json inverts the matching *_json exactly,
// so every emitted report re-parses into the type that produced it.

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "census.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "mvsp.hpp"
#include "sepcurves.hpp"
#include "superelliptic.hpp"
#include "unipoly.hpp"

namespace fncforge {

using Json = nlohmann::ordered_json;

namespace detail {

inline void skip_spaces(std::string_view s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline bool read_uint(std::string_view s, size_t& i, uint64_t& out) {
    const size_t start = i;
    uint64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        const uint64_t d = uint64_t(s[i] - '0');
        if (v > (UINT64_MAX - d) / 10)
            throw ParseFailure("integer literal overflows in \"" + std::string(s) + "\"");
        v = v * 10 + d;
        ++i;
    }
    if (i == start) return false;
    out = v;
    return true;
}

inline std::string_view trimmed(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Field specs: "p^s" or "p^s:k"; a bare "p" reads as "p^1".

struct FieldSpec {
    uint64_t p = 0;
    int s = 1;
    int k = 1;
};

inline FieldSpec parse_field_spec(std::string_view text) {
    const auto fail = [&]() -> void {
        throw ParseFailure("field spec must look like \"p^s\" or \"p^s:k\", got \"" +
                           std::string(text) + "\"");
    };
    FieldSpec sp;
    size_t i = 0;
    uint64_t v = 0;
    detail::skip_spaces(text, i);
    if (!detail::read_uint(text, i, v) || v < 2) fail();
    sp.p = v;
    detail::skip_spaces(text, i);
    if (i < text.size() && text[i] == '^') {
        ++i;
        detail::skip_spaces(text, i);
        if (!detail::read_uint(text, i, v) || v == 0 || v > 1024) fail();
        sp.s = int(v);
        detail::skip_spaces(text, i);
    }
    if (i < text.size() && text[i] == ':') {
        ++i;
        detail::skip_spaces(text, i);
        if (!detail::read_uint(text, i, v) || v == 0 || v > 1024) fail();
        sp.k = int(v);
        detail::skip_spaces(text, i);
    }
    if (i != text.size()) fail();
    return sp;
}

inline FieldTower tower_from_spec(std::string_view text) {
    const FieldSpec sp = parse_field_spec(text);
    return build_tower(sp.p, sp.s, sp.k);
}

// Canonical spelling: the ":k" suffix only when there is a proper extension.
inline std::string field_spec_string(const FieldSpec& sp) {
    std::string out = std::to_string(sp.p) + "^" + std::to_string(sp.s);
    if (sp.k != 1) out += ":" + std::to_string(sp.k);
    return out;
}

inline std::string field_spec_string(const FieldTower& tw) {
    std::string out = std::to_string(tw.p) + "^" + std::to_string(tw.s);
    if (tw.k != 1) out += ":" + std::to_string(tw.k);
    return out;
}

// ---------------------------------------------------------------------------
// Element literals: a packed integer, "g", or "g^e" with g the smallest
// packed generator of the multiplicative group.

inline uint32_t parse_element(const Field* F, std::string_view text) {
    const std::string_view t = detail::trimmed(text);
    if (t.empty()) throw ParseFailure("empty element literal");
    if (t[0] == 'g') {
        uint64_t e = 1;
        if (t.size() > 1) {
            size_t j = 1;
            if (t[j] != '^')
                throw ParseFailure("generator literal must be \"g\" or \"g^e\", got \"" +
                                   std::string(t) + "\"");
            ++j;
            if (!detail::read_uint(t, j, e) || j != t.size())
                throw ParseFailure("bad generator exponent in \"" + std::string(t) + "\"");
        }
        return F->pow(F->generator(), e);
    }
    size_t j = 0;
    uint64_t v = 0;
    if (!detail::read_uint(t, j, v) || j != t.size())
        throw ParseFailure("element literal must be a packed integer, \"g\", or \"g^e\", got \"" +
                           std::string(t) + "\"");
    if (v >= F->size())
        throw ParseFailure("element " + std::string(t) + " out of range for a field of size " +
                           std::to_string(F->size()));
    return uint32_t(v);
}

// ---------------------------------------------------------------------------
// Polynomial grammar, shared by every verb.  Two forms:
//   coefficient vector  "[c0,c1,...]"           (also the only output form)
//   term sum            "x^62 + 2*x + 1"
// Terms are c, c*x^e, or x^e over a single variable letter; any letter except
// the generator name g works.  Coefficients are element literals.

inline constexpr uint64_t kMaxParsedExponent = 1u << 20;

inline UniPoly parse_poly(const Field* F, std::string_view text) {
    const auto fail = [&](const std::string& why) -> void {
        throw ParseFailure(why + " in polynomial \"" + std::string(text) + "\"");
    };
    size_t i = 0;
    detail::skip_spaces(text, i);
    if (i == text.size()) fail("nothing to parse");

    if (text[i] == '[') {
        ++i;
        std::vector<uint32_t> co;
        detail::skip_spaces(text, i);
        if (i < text.size() && text[i] == ']') {
            ++i;
        } else {
            for (;;) {
                const size_t start = i;
                while (i < text.size() && text[i] != ',' && text[i] != ']') ++i;
                if (i == text.size()) fail("unterminated coefficient vector");
                co.push_back(parse_element(F, text.substr(start, i - start)));
                if (text[i] == ']') {
                    ++i;
                    break;
                }
                ++i;
            }
        }
        detail::skip_spaces(text, i);
        if (i != text.size()) fail("unexpected text after the coefficient vector");
        return UniPoly(F, std::move(co));
    }

    std::vector<uint32_t> co;
    char var = 0;
    const auto add_term = [&](uint32_t c, uint64_t e) {
        if (e >= kMaxParsedExponent) fail("exponent " + std::to_string(e) + " too large");
        if (co.size() <= e) co.resize(size_t(e) + 1, 0);
        co[size_t(e)] = F->add(co[size_t(e)], c);
    };

    bool first = true;
    while (true) {
        detail::skip_spaces(text, i);
        if (i == text.size()) {
            if (first) fail("nothing to parse");
            break;
        }
        if (!first && text[i] != '+' && text[i] != '-')
            fail(std::string("expected '+' or '-' before \"") + text[i] + "\"");
        bool neg = false;
        while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') neg = !neg;
            ++i;
            detail::skip_spaces(text, i);
        }
        if (i == text.size()) fail("dangling sign");

        std::optional<uint32_t> cval;
        std::optional<uint64_t> expo;
        if (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == 'g') {
            if (text[i] == 'g') {
                const size_t start = i++;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    uint64_t e = 0;
                    if (!detail::read_uint(text, i, e)) fail("bad generator exponent");
                    cval = parse_element(F, text.substr(start, i - start));
                } else {
                    cval = F->generator();
                }
            } else {
                uint64_t v = 0;
                detail::read_uint(text, i, v);
                if (v >= F->size())
                    fail("coefficient " + std::to_string(v) + " out of range for a field of size " +
                         std::to_string(F->size()));
                cval = uint32_t(v);
            }
            detail::skip_spaces(text, i);
            if (i < text.size() && text[i] == '*') {
                ++i;
                detail::skip_spaces(text, i);
                if (i == text.size() || !std::isalpha(static_cast<unsigned char>(text[i])) ||
                    text[i] == 'g')
                    fail("expected a variable after '*'");
            }
        }
        if (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i])) &&
            text[i] != 'g') {
            const char v = text[i];
            if (var == 0)
                var = v;
            else if (var != v)
                fail(std::string("mixed variable names '") + var + "' and '" + v + "'");
            ++i;
            detail::skip_spaces(text, i);
            uint64_t e = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                detail::skip_spaces(text, i);
                if (!detail::read_uint(text, i, e)) fail("missing exponent after '^'");
            }
            expo = e;
        }
        if (!cval && !expo) fail(std::string("unexpected character '") + text[i] + "'");
        uint32_t c = cval.value_or(F->from_int(1));
        if (neg) c = F->neg(c);
        add_term(c, expo.value_or(0));
        first = false;
    }
    return UniPoly(F, std::move(co));
}

// Canonical output form; the zero polynomial prints as "[0]".
inline std::string poly_string(const UniPoly& f) {
    if (f.is_zero()) return "[0]";
    std::string out = "[";
    for (int i = 0; i <= f.deg(); ++i) {
        if (i) out += ",";
        out += std::to_string(f.coeff(size_t(i)));
    }
    return out + "]";
}

// ---------------------------------------------------------------------------
// JSON emission and re-parsing.

inline Json poly_json(const UniPoly& f) {
    Json a = Json::array();
    if (f.is_zero()) {
        a.push_back(0u);
        return a;
    }
    for (int i = 0; i <= f.deg(); ++i) a.push_back(f.coeff(size_t(i)));
    return a;
}

inline UniPoly poly_from_json(const Field* F, const Json& j) {
    if (!j.is_array()) throw ParseFailure("polynomial JSON must be an array of packed integers");
    std::vector<uint32_t> co;
    co.reserve(j.size());
    for (const auto& c : j) {
        if (!c.is_number_integer() || (!c.is_number_unsigned() && c.get<int64_t>() < 0))
            throw ParseFailure("polynomial JSON must be an array of packed integers");
        const uint64_t v = c.get<uint64_t>();
        if (v >= F->size())
            throw ParseFailure("coefficient " + std::to_string(v) +
                               " out of range for a field of size " + std::to_string(F->size()));
        co.push_back(uint32_t(v));
    }
    return UniPoly(F, std::move(co));
}

namespace detail {

template <class T>
inline Json opt_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

template <class T>
inline std::optional<T> opt_from_json(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

}  // namespace detail

inline Json field_info_json(const FieldTower& tw) {
    Json j;
    j["spec"] = field_spec_string(tw);
    j["p"] = tw.p;
    j["s"] = tw.s;
    j["k"] = tw.k;
    j["q"] = tw.q;
    j["Q"] = tw.Q;
    j["base_modulus"] = tw.base->modulus_low();
    j["top_modulus"] = tw.top->modulus_low();
    j["generator"] = tw.top->generator();
    return j;
}

inline FieldTower tower_from_json(const Json& j) {
    return build_tower(j.at("p").get<uint64_t>(), j.at("s").get<int>(), j.at("k").get<int>());
}

inline Json value_set_json(const ValueSetReport& r) {
    Json j;
    j["values"] = r.values;
    j["size"] = r.size;
    j["lower_bound"] = r.lower_bound;
    j["is_mvsp"] = detail::opt_json(r.is_mvsp);
    j["values_in_base"] = r.values_in_base;
    return j;
}

inline ValueSetReport value_set_from_json(const Json& j) {
    ValueSetReport r;
    r.values = j.at("values").get<std::vector<uint32_t>>();
    r.size = j.at("size").get<size_t>();
    r.lower_bound = j.at("lower_bound").get<size_t>();
    r.is_mvsp = detail::opt_from_json<bool>(j.at("is_mvsp"));
    r.values_in_base = j.at("values_in_base").get<bool>();
    return r;
}

inline Json mills_certificate_json(const MillsCertificate& c) {
    Json j;
    j["T"] = poly_json(c.T);
    j["theta"] = detail::opt_json(c.theta);
    j["holds"] = c.holds;
    return j;
}

inline MillsCertificate mills_certificate_from_json(const Field* F, const Json& j) {
    return MillsCertificate{poly_from_json(F, j.at("T")),
                            detail::opt_from_json<uint32_t>(j.at("theta")),
                            j.at("holds").get<bool>()};
}

inline Json mills_structure_json(const MillsStructure& st) {
    Json j;
    j["gamma"] = st.gamma;
    Json L = Json::array();
    for (const auto& f : st.L) L.push_back(poly_json(f));
    j["L"] = L;
    j["l"] = st.l;
    j["v"] = st.v;
    j["m"] = st.m;
    j["kk"] = st.kk;
    j["Npoly"] = poly_json(st.Npoly);
    j["omega"] = st.omega;
    j["verified"] = st.verified;
    return j;
}

inline MillsStructure mills_structure_from_json(const Field* F, const Json& j) {
    MillsStructure st(F);
    st.gamma = j.at("gamma").get<std::vector<uint32_t>>();
    for (const auto& e : j.at("L")) st.L.push_back(poly_from_json(F, e));
    st.l = j.at("l").get<std::vector<int>>();
    st.v = j.at("v").get<uint64_t>();
    st.m = j.at("m").get<int>();
    st.kk = j.at("kk").get<int>();
    st.Npoly = poly_from_json(F, j.at("Npoly"));
    st.omega = j.at("omega").get<std::vector<uint32_t>>();
    st.verified = j.at("verified").get<unsigned>();
    return st;
}

inline Json fnc_report_json(const FncReport& r) {
    Json j;
    j["divisibility_verdict"] = detail::opt_json(r.divisibility_verdict);
    j["mills_verdict"] = detail::opt_json(r.mills_verdict);
    if (r.certificate) {
        Json c;
        c["T"] = poly_json(r.certificate->first);
        c["theta"] = r.certificate->second;
        j["certificate"] = c;
    } else {
        j["certificate"] = nullptr;
    }
    j["components_rational_caveat"] = r.components_rational_caveat;
    j["method_agreement"] = r.method_agreement;
    return j;
}

inline FncReport fnc_report_from_json(const Field* F, const Json& j) {
    FncReport r;
    r.divisibility_verdict = detail::opt_from_json<bool>(j.at("divisibility_verdict"));
    r.mills_verdict = detail::opt_from_json<bool>(j.at("mills_verdict"));
    const Json& c = j.at("certificate");
    if (!c.is_null())
        r.certificate = {poly_from_json(F, c.at("T")), c.at("theta").get<uint32_t>()};
    r.components_rational_caveat = j.at("components_rational_caveat").get<bool>();
    r.method_agreement = j.at("method_agreement").get<bool>();
    return r;
}

inline Json corollary_json(const CorollaryReport& r) {
    Json j;
    j["tame_exponent_and_derivative"] = r.tame_exponent_and_derivative;
    j["degree_window"] = r.degree_window;
    j["root_field_matches_multiplicity"] = r.root_field_matches_multiplicity;
    j["rational_root_and_simple_rule"] = r.rational_root_and_simple_rule;
    j["second_derivative_rule"] = r.second_derivative_rule;
    j["interior_multiplicity_bounds"] = r.interior_multiplicity_bounds;
    j["all_pass"] = r.all_pass();
    return j;
}

inline CorollaryReport corollary_from_json(const Json& j) {
    CorollaryReport r{};
    r.tame_exponent_and_derivative = j.at("tame_exponent_and_derivative").get<bool>();
    r.degree_window = j.at("degree_window").get<bool>();
    r.root_field_matches_multiplicity = j.at("root_field_matches_multiplicity").get<bool>();
    r.rational_root_and_simple_rule = j.at("rational_root_and_simple_rule").get<bool>();
    r.second_derivative_rule = j.at("second_derivative_rule").get<bool>();
    r.interior_multiplicity_bounds = j.at("interior_multiplicity_bounds").get<bool>();
    return r;
}

inline Json genus_report_json(const GenusReport& r) {
    Json j;
    j["genus"] = r.genus;
    Json a = Json::array();
    for (const auto& rc : r.affine) {
        Json e;
        e["locus"] = poly_json(rc.locus);
        e["multiplicity"] = rc.multiplicity;
        e["gcd_with_n"] = rc.gcd_with_n;
        a.push_back(std::move(e));
    }
    j["affine"] = std::move(a);
    j["infinite_valuation"] = r.infinite_valuation;
    j["infinite_gcd"] = r.infinite_gcd;
    j["smooth_plane"] = r.smooth_plane;
    return j;
}

inline GenusReport genus_report_from_json(const Field* F, const Json& j) {
    GenusReport r;
    r.genus = j.at("genus").get<uint64_t>();
    for (const auto& e : j.at("affine"))
        r.affine.push_back(RamificationClass{poly_from_json(F, e.at("locus")),
                                             e.at("multiplicity").get<uint32_t>(),
                                             e.at("gcd_with_n").get<uint64_t>()});
    r.infinite_valuation = j.at("infinite_valuation").get<uint64_t>();
    r.infinite_gcd = j.at("infinite_gcd").get<uint64_t>();
    r.smooth_plane = j.at("smooth_plane").get<bool>();
    return r;
}

inline Json super_curve_json(const SuperCurve& c) {
    Json j;
    j["n"] = c.n;
    j["f"] = poly_json(c.f);
    return j;
}

inline SuperCurve super_curve_from_json(const Field* F, const Json& j) {
    return SuperCurve(j.at("n").get<uint32_t>(), poly_from_json(F, j.at("f")));
}

inline Json curve_stats_json(const CurveStats& s) {
    Json j;
    j["N"] = s.N;
    j["d"] = s.d;
    j["hv_value"] = s.hv_value;
    j["genus"] = detail::opt_json(s.genus);
    j["nu"] = detail::opt_json(s.nu);
    j["sv_bound_value"] = detail::opt_json(s.sv_bound_value);
    j["smooth_plane"] = detail::opt_json(s.smooth_plane);
    return j;
}

inline CurveStats curve_stats_from_json(const Json& j) {
    CurveStats s;
    s.N = j.at("N").get<uint64_t>();
    s.d = j.at("d").get<int>();
    s.hv_value = j.at("hv_value").get<int64_t>();
    s.genus = detail::opt_from_json<uint64_t>(j.at("genus"));
    s.nu = detail::opt_from_json<uint64_t>(j.at("nu"));
    s.sv_bound_value = detail::opt_from_json<int64_t>(j.at("sv_bound_value"));
    s.smooth_plane = detail::opt_from_json<bool>(j.at("smooth_plane"));
    return s;
}

inline Json hvh_report_json(const HvhReport& r) {
    Json j;
    j["N"] = r.N;
    j["cover_count"] = r.cover_count;
    j["smooth_plane"] = r.smooth_plane;
    j["bound_holds"] = r.bound_holds;
    j["equality"] = r.equality;
    j["equality_iff_smooth"] = r.equality_iff_smooth;
    return j;
}

inline HvhReport hvh_report_from_json(const Json& j) {
    HvhReport r{};
    r.N = j.at("N").get<uint64_t>();
    r.cover_count = j.at("cover_count").get<int64_t>();
    r.smooth_plane = j.at("smooth_plane").get<bool>();
    r.bound_holds = j.at("bound_holds").get<bool>();
    r.equality = j.at("equality").get<bool>();
    r.equality_iff_smooth = j.at("equality_iff_smooth").get<bool>();
    return r;
}

inline Json point_json(const ProjPoint& pt) {
    return Json::array({pt.x, pt.y, pt.z});
}

inline ProjPoint point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3)
        throw ParseFailure("projective point JSON must be [x,y,z]");
    return ProjPoint{j[0].get<uint32_t>(), j[1].get<uint32_t>(), j[2].get<uint32_t>()};
}

inline Json arc_report_json(const ArcReport& r) {
    Json j;
    Json pts = Json::array();
    for (const auto& pt : r.points) pts.push_back(point_json(pt));
    j["points"] = std::move(pts);
    j["d"] = r.d;
    j["is_arc"] = r.is_arc;
    j["is_complete"] = r.is_complete;
    j["witness"] = r.witness ? point_json(*r.witness) : Json(nullptr);
    return j;
}

inline ArcReport arc_report_from_json(const Json& j) {
    ArcReport r;
    for (const auto& e : j.at("points")) r.points.push_back(point_from_json(e));
    r.d = j.at("d").get<int>();
    r.is_arc = j.at("is_arc").get<bool>();
    r.is_complete = j.at("is_complete").get<bool>();
    const Json& w = j.at("witness");
    if (!w.is_null()) r.witness = point_from_json(w);
    return r;
}

inline std::string irreducibility_string(Irreducibility v) {
    switch (v) {
        case Irreducibility::kAbsolutelyIrreducible: return "absolutely_irreducible";
        case Irreducibility::kRationalFactors: return "rational_factors";
        case Irreducibility::kUnknown: return "unknown";
    }
    throw Error("unreachable irreducibility value");
}

inline Irreducibility irreducibility_from_string(std::string_view s) {
    if (s == "absolutely_irreducible") return Irreducibility::kAbsolutelyIrreducible;
    if (s == "rational_factors") return Irreducibility::kRationalFactors;
    if (s == "unknown") return Irreducibility::kUnknown;
    throw ParseFailure("unknown irreducibility verdict \"" + std::string(s) + "\"");
}

inline Json census_record_json(const CensusRecord& r) {
    Json j;
    j["n"] = r.n;
    j["f"] = poly_json(r.f);
    j["stats"] = curve_stats_json(r.stats);
    j["corollary"] = corollary_json(r.corollary);
    j["irreducibility"] = irreducibility_string(r.irreducibility);
    return j;
}

inline CensusRecord census_record_from_json(const Field* F, const Json& j) {
    return CensusRecord{j.at("n").get<uint32_t>(), poly_from_json(F, j.at("f")),
                        curve_stats_from_json(j.at("stats")),
                        corollary_from_json(j.at("corollary")),
                        irreducibility_from_string(j.at("irreducibility").get<std::string>())};
}

// ---------------------------------------------------------------------------
// CSV projection of census records: flat table, one row per record, optional
// columns left empty.  The polynomial column is quoted since it holds commas.

inline std::string census_csv_header() {
    return "n,f,N,d,hv_value,genus,nu,sv_bound_value,smooth_plane,corollary_all_pass,"
           "irreducibility";
}

inline std::string census_csv_row(const CensusRecord& r) {
    const auto b = [](bool v) { return v ? std::string("true") : std::string("false"); };
    std::string out = std::to_string(r.n);
    out += ",\"" + poly_string(r.f) + "\"";
    out += "," + std::to_string(r.stats.N);
    out += "," + std::to_string(r.stats.d);
    out += "," + std::to_string(r.stats.hv_value);
    out += "," + (r.stats.genus ? std::to_string(*r.stats.genus) : std::string());
    out += "," + (r.stats.nu ? std::to_string(*r.stats.nu) : std::string());
    out += "," + (r.stats.sv_bound_value ? std::to_string(*r.stats.sv_bound_value)
                                         : std::string());
    out += "," + (r.stats.smooth_plane ? b(*r.stats.smooth_plane) : std::string());
    out += "," + b(r.corollary.all_pass());
    out += "," + irreducibility_string(r.irreducibility);
    return out;
}

}  // namespace fncforge
