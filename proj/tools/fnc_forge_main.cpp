// fnc-forge: one binary over the whole library.  Every verb parses and
// validates its inputs before computing anything; results are built as JSON
// first, with the text format a fixed projection of the same object and CSV
// where a table makes sense.  Identical invocations print identical bytes.
// Exit status: 0 on success, 1 when a requested check battery fails, 2 for
// unusable input.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "fncforge/acceptance.hpp"

namespace {

using namespace fncforge;

enum class Format { kText, kJson, kCsv };

struct Shared {
    std::string format = "text";
    int exit_code = 0;
};

Format format_of(const Shared& sh) {
    if (sh.format == "json") return Format::kJson;
    if (sh.format == "csv") return Format::kCsv;
    return Format::kText;
}

void require_not_csv(const Shared& sh, const char* verb) {
    if (format_of(sh) == Format::kCsv)
        throw ParseFailure(std::string("csv output is not available for ") + verb);
}

// The text format: key/value lines, nested objects indented, scalar arrays
// kept compact on one line.
void print_text(const Json& j, int indent) {
    const std::string pad(size_t(indent) * 2, ' ');
    for (const auto& [key, val] : j.items()) {
        if (val.is_object()) {
            std::cout << pad << key << ":\n";
            print_text(val, indent + 1);
        } else if (val.is_array() && !val.empty() && val.front().is_object()) {
            std::cout << pad << key << ":\n";
            for (const auto& e : val) {
                std::cout << pad << "  -\n";
                print_text(e, indent + 2);
            }
        } else if (val.is_string()) {
            std::cout << pad << key << ": " << val.get<std::string>() << "\n";
        } else {
            std::cout << pad << key << ": " << val.dump() << "\n";
        }
    }
}

void emit(const Shared& sh, const Json& out) {
    if (format_of(sh) == Format::kJson)
        std::cout << out.dump(2) << "\n";
    else
        print_text(out, 0);
}

const Field* field_of(const std::string& spec, FieldSpec* out = nullptr) {
    const FieldSpec sp = parse_field_spec(spec);
    if (out) *out = sp;
    return build_tower(sp.p, sp.s, sp.k).top.get();
}

// "n:f" with n a positive integer and f in the polynomial grammar.
std::pair<uint32_t, UniPoly> parse_super_spec(const Field* K, const std::string& text) {
    const auto pos = text.find(':');
    if (pos == std::string::npos)
        throw ParseFailure("super curve spec must look like \"n:f\", got \"" + text + "\"");
    uint64_t n = 0;
    bool any = false;
    for (char ch : text.substr(0, pos)) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (!std::isdigit(static_cast<unsigned char>(ch)) || n > 0xffffffffull)
            throw ParseFailure("exponent in \"" + text + "\" must be a positive integer");
        n = n * 10 + uint64_t(ch - '0');
        any = true;
    }
    if (!any || n == 0 || n > 0xffffffffull)
        throw ParseFailure("exponent in \"" + text + "\" must be a positive integer");
    return {uint32_t(n), parse_poly(K, text.substr(pos + 1))};
}

ProjPoint canonical_point(const Field* K, const ProjPoint& pt) {
    for (uint32_t c : {pt.x, pt.y, pt.z})
        if (c >= K->size())
            throw ParseFailure("point coordinate " + std::to_string(c) + " outside the field");
    const uint32_t lead = pt.x ? pt.x : (pt.y ? pt.y : pt.z);
    if (!lead) throw ParseFailure("(0, 0, 0) is not a projective point");
    const uint32_t inv = K->inv(lead);
    return {K->mul(pt.x, inv), K->mul(pt.y, inv), K->mul(pt.z, inv)};
}

std::string census_text_row(const CensusRecord& rec) {
    std::ostringstream os;
    os << "n=" << rec.n << " f=" << poly_string(rec.f) << " N=" << rec.stats.N
       << " d=" << rec.stats.d;
    if (rec.stats.genus) os << " genus=" << *rec.stats.genus;
    if (rec.stats.smooth_plane)
        os << " smooth=" << (*rec.stats.smooth_plane ? "true" : "false");
    os << " battery=" << (rec.corollary.all_pass() ? "pass" : "fail")
       << " irreducibility=" << irreducibility_string(rec.irreducibility);
    return os.str();
}

void run_census(Shared& sh, const std::string& spec, const std::string& mode_str, int jobs) {
    const Field* K = field_of(spec);
    const CensusMode mode =
        mode_str == "exhaustive" ? CensusMode::kExhaustive : CensusMode::kConstructive;
    std::vector<CensusRecord> records;
    const auto divisors = detail::sorted_divisors(K->size() - 1);
    if (jobs <= 1 || divisors.size() < 2) {
        records = census_superelliptic(K, mode);
    } else {
        // One slice per divisor; concatenating in divisor order reproduces
        // the single-threaded output byte for byte.
        std::vector<std::vector<CensusRecord>> slices(divisors.size());
        std::atomic<size_t> next{0};
        const size_t workers = std::min(size_t(jobs), divisors.size());
        std::vector<std::string> errors(workers);
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (size_t i; (i = next.fetch_add(1)) < divisors.size();)
                        slices[i] = census_superelliptic(K, mode, CensusLimits{},
                                                         default_plane_cap(), divisors[i]);
                } catch (const std::exception& e) {
                    errors[w] = e.what();
                }
            });
        for (auto& t : pool) t.join();
        for (const auto& msg : errors)
            if (!msg.empty()) throw Error(msg);
        for (auto& slice : slices)
            for (auto& rec : slice) records.push_back(std::move(rec));
    }
    switch (format_of(sh)) {
        case Format::kJson:
            for (const auto& rec : records)
                std::cout << census_record_json(rec).dump() << "\n";
            break;
        case Format::kCsv:
            std::cout << census_csv_header() << "\n";
            for (const auto& rec : records) std::cout << census_csv_row(rec) << "\n";
            break;
        case Format::kText:
            for (const auto& rec : records) std::cout << census_text_row(rec) << "\n";
            std::cout << "records: " << records.size() << "\n";
            break;
    }
}

void run_verify(Shared& sh, uint64_t seed) {
    require_not_csv(sh, "census verify-paper");
    const AcceptanceReport rep = verify_paper_suite(seed);
    if (format_of(sh) == Format::kJson) {
        std::cout << acceptance_report_json(rep).dump(2) << "\n";
    } else {
        int failed = 0;
        for (const auto& it : rep.items) {
            if (!it.pass) ++failed;
            std::cout << (it.pass ? "PASS" : "FAIL") << " " << it.id << " " << it.name
                      << "\n";
            if (!it.pass)
                std::cout << "  expected: " << it.expected << "\n  actual:   " << it.actual
                          << "\n";
        }
        std::cout << rep.items.size() << " items, " << failed << " failed (seed "
                  << rep.seed << ")\n";
    }
    if (!rep.all_pass()) sh.exit_code = 1;
}

}  // namespace

int main(int argc, char** argv) {
    Shared sh;
    CLI::App app{"exact computations around nonclassical curves over small finite fields"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", sh.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();

    std::string spec, ftext, gtext, at_text, super_text, points_text;
    std::string mode = "constructive", method = "both";
    uint32_t n = 1;
    uint64_t seed = kDefaultAcceptanceSeed, nu = 1;
    int jobs = 1, d = 0;

    auto* field_cmd = app.add_subcommand("field", "field and tower inspection");
    field_cmd->require_subcommand(1);
    auto* field_info = field_cmd->add_subcommand("info", "sizes, moduli, generator");
    field_info->add_option("--field", spec, "field spec p^s or p^s:k")->required();
    field_info->callback([&] {
        require_not_csv(sh, "field info");
        emit(sh, field_info_json(tower_from_spec(spec)));
    });

    auto* poly_cmd = app.add_subcommand("poly", "univariate polynomial reports");
    poly_cmd->require_subcommand(1);
    auto* poly_vs = poly_cmd->add_subcommand("value-set", "values over the field");
    poly_vs->add_option("--field", spec, "field spec")->required();
    poly_vs->add_option("--f", ftext, "polynomial")->required();
    poly_vs->callback([&] {
        require_not_csv(sh, "poly value-set");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        const UniPoly f = parse_poly(K, ftext);
        Json out;
        out["field"] = field_spec_string(sp);
        out["f"] = poly_json(f);
        out["report"] = value_set_json(value_set(f));
        emit(sh, out);
    });

    auto* mvsp_cmd = app.add_subcommand("mvsp", "minimal value set machinery");
    mvsp_cmd->require_subcommand(1);
    const auto mvsp_leaf = [&](const char* name, const char* desc) {
        auto* c = mvsp_cmd->add_subcommand(name, desc);
        c->add_option("--field", spec, "field spec")->required();
        c->add_option("--f", ftext, "polynomial")->required();
        return c;
    };
    mvsp_leaf("check", "minimality verdict")->callback([&] {
        require_not_csv(sh, "mvsp check");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        const UniPoly f = parse_poly(K, ftext);
        Json out;
        out["field"] = field_spec_string(sp);
        out["f"] = poly_json(f);
        out["is_mvsp"] = is_mvsp(f);
        emit(sh, out);
    });
    mvsp_leaf("mills", "vanishing certificate")->callback([&] {
        require_not_csv(sh, "mvsp mills");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        const UniPoly f = parse_poly(K, ftext);
        Json out;
        out["field"] = field_spec_string(sp);
        out["f"] = poly_json(f);
        out["report"] = mills_certificate_json(mills_criterion(f));
        emit(sh, out);
    });
    mvsp_leaf("structure", "certificate decomposition")->callback([&] {
        require_not_csv(sh, "mvsp structure");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        const UniPoly f = parse_poly(K, ftext);
        Json out;
        out["field"] = field_spec_string(sp);
        out["f"] = poly_json(f);
        out["report"] = mills_structure_json(mills_structure(f));
        emit(sh, out);
    });
    mvsp_leaf("type-ab", "two-valued type classification")->callback([&] {
        require_not_csv(sh, "mvsp type-ab");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        const UniPoly f = parse_poly(K, ftext);
        const auto ga = is_typeA(f);
        const auto gb = is_typeB(f);
        const auto theta = theta_of_type(f);
        Json out;
        out["field"] = field_spec_string(sp);
        out["f"] = poly_json(f);
        out["type_a"] = bool(ga);
        out["type_b"] = bool(gb);
        out["theta"] = theta ? Json(*theta) : Json(nullptr);
        out["witness"] = ga ? poly_json(*ga) : (gb ? poly_json(*gb) : Json(nullptr));
        emit(sh, out);
    });
    auto* mvsp_wlist = mvsp_cmd->add_subcommand("w-list", "enumerate the subfield-valued family");
    mvsp_wlist->add_option("--field", spec, "tower spec p^s:k")->required();
    mvsp_wlist->callback([&] {
        require_not_csv(sh, "mvsp w-list");
        const FieldTower tw = tower_from_spec(spec);
        const auto W = w_enumerate(tw);
        if (format_of(sh) == Format::kJson) {
            for (const UniPoly& f : W) std::cout << poly_json(f).dump() << "\n";
        } else {
            for (const UniPoly& f : W) std::cout << poly_string(f) << "\n";
            std::cout << "count: " << W.size() << "\n";
        }
    });

    auto* curve_cmd = app.add_subcommand("curve", "curves with separated variables");
    curve_cmd->require_subcommand(1);
    auto* curve_fnc = curve_cmd->add_subcommand("fnc", "nonclassicality of f(x) = g(y)");
    curve_fnc->add_option("--field", spec, "field spec")->required();
    curve_fnc->add_option("--f", ftext, "left side")->required();
    curve_fnc->add_option("--g", gtext, "right side")->required();
    curve_fnc->add_option("--method", method, "verdict route")
        ->check(CLI::IsMember({"both", "divisibility", "mills"}))
        ->capture_default_str();
    curve_fnc->callback([&] {
        require_not_csv(sh, "curve fnc");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        const SepCurve c(parse_poly(K, ftext), parse_poly(K, gtext));
        FncReport rep;
        if (method == "divisibility")
            rep.divisibility_verdict = fnc_all_components(c);
        else if (method == "mills")
            rep = fnc_via_mills(c);
        else
            rep = fnc_cross_check(c);
        const bool verdict =
            rep.divisibility_verdict ? *rep.divisibility_verdict : *rep.mills_verdict;
        Json out;
        out["field"] = field_spec_string(sp);
        out["f"] = poly_json(c.f);
        out["g"] = poly_json(c.g);
        out["fnc"] = verdict;
        out["report"] = fnc_report_json(rep);
        emit(sh, out);
    });

    auto* super_cmd = app.add_subcommand("super", "curves y^n = f(x)");
    super_cmd->require_subcommand(1);
    const auto super_leaf = [&](const char* name, const char* desc) {
        auto* c = super_cmd->add_subcommand(name, desc);
        c->add_option("--field", spec, "field spec")->required();
        c->add_option("--n", n, "exponent of y")->required();
        c->add_option("--f", ftext, "right side")->required();
        return c;
    };
    super_leaf("fnc", "closed-form nonclassicality test")->callback([&] {
        require_not_csv(sh, "super fnc");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        const SuperCurve c(n, parse_poly(K, ftext));
        Json out;
        out["field"] = field_spec_string(sp);
        out["curve"] = super_curve_json(c);
        out["fnc"] = garcia_test(c);
        emit(sh, out);
    });
    super_leaf("genus", "ramification and genus")->callback([&] {
        require_not_csv(sh, "super genus");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        const SuperCurve c(n, parse_poly(K, ftext));
        Json out;
        out["field"] = field_spec_string(sp);
        out["curve"] = super_curve_json(c);
        out["report"] = genus_report_json(kummer_genus(c));
        emit(sh, out);
    });
    auto* super_reduce = super_leaf("reduce", "projective change of coordinates lowering deg f");
    super_reduce->add_option("--at", at_text, "element moved to the origin")->required();
    super_reduce->callback([&] {
        require_not_csv(sh, "super reduce");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        const SuperCurve c(n, parse_poly(K, ftext));
        const SuperCurve r = reduce_degree(c, parse_element(K, at_text));
        Json out;
        out["field"] = field_spec_string(sp);
        out["curve"] = super_curve_json(c);
        out["at"] = parse_element(K, at_text);
        out["reduced"] = super_curve_json(r);
        emit(sh, out);
    });
    super_leaf("checks", "necessary-condition battery for a passing curve")->callback([&] {
        require_not_csv(sh, "super checks");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        const SuperCurve c(n, parse_poly(K, ftext));
        const CorollaryReport rep = corollary_checks(c);
        Json out;
        out["field"] = field_spec_string(sp);
        out["curve"] = super_curve_json(c);
        out["report"] = corollary_json(rep);
        emit(sh, out);
        if (!rep.all_pass()) sh.exit_code = 1;
    });

    auto* points_cmd = app.add_subcommand("points", "point counts on plane closures");
    points_cmd->require_subcommand(1);
    auto* points_count = points_cmd->add_subcommand("count", "scan the projective plane");
    points_count->add_option("--field", spec, "field spec")->required();
    auto* pc_super = points_count->add_option("--super", super_text, "curve as \"n:f\"");
    auto* pc_f = points_count->add_option("--f", ftext, "left side of f(x) = g(y)");
    auto* pc_g = points_count->add_option("--g", gtext, "right side of f(x) = g(y)");
    auto* pc_nu = points_count->add_option("--nu", nu, "attach the count bound for this nu");
    points_count->callback([&] {
        require_not_csv(sh, "points count");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        Json out;
        out["field"] = field_spec_string(sp);
        CurveStats st;
        if (pc_super->count()) {
            if (pc_f->count() || pc_g->count())
                throw ParseFailure("give either --super or --f/--g, not both");
            const auto [nn, f] = parse_super_spec(K, super_text);
            const SuperCurve c(nn, f);
            out["curve"] = super_curve_json(c);
            st = count_points_projective(c);
        } else if (pc_f->count() && pc_g->count()) {
            const SepCurve c(parse_poly(K, ftext), parse_poly(K, gtext));
            out["f"] = poly_json(c.f);
            out["g"] = poly_json(c.g);
            st = count_points_projective(c);
        } else {
            throw ParseFailure("points count needs --super \"n:f\" or both --f and --g");
        }
        if (pc_nu->count()) st = with_sv_bound(st, K->size(), nu);
        out["stats"] = curve_stats_json(st);
        emit(sh, out);
    });

    auto* arc_cmd = app.add_subcommand("arc", "arc properties in the projective plane");
    arc_cmd->require_subcommand(1);
    auto* arc_check = arc_cmd->add_subcommand("check", "line-intersection cap and completeness");
    arc_check->add_option("--field", spec, "field spec")->required();
    arc_check->add_option("--d", d, "line-intersection cap")->required();
    auto* ac_points = arc_check->add_option("--points", points_text,
                                            "JSON array of [x, y, z] packed triples");
    auto* ac_super = arc_check->add_option("--super", super_text,
                                           "take the points of this curve, as \"n:f\"");
    arc_check->callback([&] {
        require_not_csv(sh, "arc check");
        FieldSpec sp;
        const Field* K = field_of(spec, &sp);
        if (d < 1) throw ParseFailure("--d must be positive");
        std::vector<ProjPoint> pts;
        if (ac_points->count() == ac_super->count())
            throw ParseFailure("arc check needs exactly one of --points or --super");
        if (ac_super->count()) {
            const auto [nn, f] = parse_super_spec(K, super_text);
            pts = projective_zeros(curve_poly(SuperCurve(nn, f)));
        } else {
            Json pj;
            try {
                pj = Json::parse(points_text);
            } catch (const std::exception&) {
                throw ParseFailure("--points must be a JSON array of [x, y, z] triples");
            }
            if (!pj.is_array())
                throw ParseFailure("--points must be a JSON array of [x, y, z] triples");
            std::set<ProjPoint> seen;
            for (const auto& e : pj) {
                const ProjPoint pt = canonical_point(K, point_from_json(e));
                if (!seen.insert(pt).second)
                    throw ParseFailure("duplicate projective point in --points");
                pts.push_back(pt);
            }
        }
        const ArcReport rep = arc_completeness(K, std::move(pts), d);
        Json out;
        out["field"] = field_spec_string(sp);
        out["report"] = arc_report_json(rep);
        emit(sh, out);
    });

    auto* census_cmd = app.add_subcommand("census", "whole-field scans and the verification suite");
    census_cmd->require_subcommand(1);
    auto* census_run = census_cmd->add_subcommand("run", "all passing curves over a field");
    census_run->add_option("--field", spec, "field spec")->required();
    census_run->add_option("--mode", mode, "search strategy")
        ->check(CLI::IsMember({"exhaustive", "constructive"}))
        ->capture_default_str();
    census_run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    census_run->callback([&] { run_census(sh, spec, mode, jobs); });
    auto* census_verify = census_cmd->add_subcommand("verify-paper", "run the full battery");
    census_verify->add_option("--seed", seed, "seed for the randomized items")
        ->capture_default_str();
    census_verify->callback([&] { run_verify(sh, seed); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return sh.exit_code;
}
