// stratloc: batch front-end for the stratification/localization engine.
// Exit codes: 0 verified/ok, 1 mathematical failure, 2 inapplicable or
// indeterminate oracle, 3 input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stratloc/baric.hpp"
#include "stratloc/io.hpp"
#include "stratloc/kloc.hpp"
#include "stratloc/strat.hpp"

using nlohmann::json;

namespace {

struct RunConfig {
    std::string command;
    std::string model_path;
    std::string sheaf_path;  // empty: unit sheaf
    std::string window_spec; // "w" or "w,i=w_i,..."
    std::string method = "auto";
    std::string lambda_spec;
    std::string format = "json";
    std::int64_t cutoff = 0; // 0 = auto-derived depth
    int degree_bound = 16;
    int max_koszul_level = 0; // 0 = auto
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw stratloc::input_error("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw stratloc::input_error("invalid JSON in " + path + ": " + e.what());
    }
}

json int_json(const stratloc::Int& v) {
    if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

std::string rat_string(const stratloc::Rat& r) { return r.get_str(); }

std::optional<std::string> exact_sqrt(const stratloc::Rat& r) {
    if (r < 0) return std::nullopt;
    mpz_class num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class sqrt_num, sqrt_den;
    mpz_sqrt(sqrt_num.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sqrt_den.get_mpz_t(), den.get_mpz_t());
    stratloc::Rat root(sqrt_num, sqrt_den);
    root.canonicalize();
    return rat_string(root);
}

void render_table(const json& j, std::ostream& out, const std::string& prefix) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            render_table(it.value(), out, prefix.empty() ? it.key() : prefix + "." + it.key());
    } else if (j.is_array()) {
        if (j.empty()) {
            out << prefix << " = []\n";
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i)
            render_table(j[i], out, prefix + "[" + std::to_string(i) + "]");
    } else if (j.is_string()) {
        out << prefix << " = " << j.get<std::string>() << "\n";
    } else {
        out << prefix << " = " << j.dump() << "\n";
    }
}

void emit(const json& report, const RunConfig& config) {
    if (config.format == "table")
        render_table(report, std::cout, "");
    else
        std::cout << report.dump(2) << "\n";
}

stratloc::FreeComplex load_sheaf(const stratloc::StackModel& m, const RunConfig& config) {
    if (config.sheaf_path.empty()) return stratloc::FreeComplex::unit(m.algebra_ptr());
    return stratloc::sheaf_from_json(m, load_json(config.sheaf_path));
}

stratloc::Cocharacter parse_lambda(const std::string& spec, std::size_t rank) {
    if (spec.empty()) throw stratloc::input_error("--lambda is required for this command");
    std::vector<std::int64_t> entries;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            entries.push_back(std::stoll(token));
        } catch (const std::exception&) {
            throw stratloc::input_error("--lambda: cannot parse integer '" + token + "'");
        }
    }
    if (entries.size() != rank)
        throw stratloc::input_error("--lambda: expected " + std::to_string(rank) +
                                    " entries, got " + std::to_string(entries.size()));
    return stratloc::Cocharacter{entries};
}

/// "--window w" or "--window w,i=w_i,...": a default threshold plus
/// per-stratum overrides keyed by stratum index.
std::vector<std::int64_t> parse_window(const std::string& spec, std::size_t n_strata) {
    if (spec.empty()) throw stratloc::input_error("--window is required for this command");
    std::stringstream ss(spec);
    std::string token;
    bool first = true;
    std::int64_t base = 0;
    std::vector<std::pair<std::size_t, std::int64_t>> overrides;
    while (std::getline(ss, token, ',')) {
        auto eq = token.find('=');
        try {
            if (first && eq == std::string::npos) {
                base = std::stoll(token);
            } else {
                if (eq == std::string::npos)
                    throw stratloc::input_error(
                        "--window: override '" + token + "' must look like index=threshold");
                std::size_t index = std::stoull(token.substr(0, eq));
                std::int64_t w = std::stoll(token.substr(eq + 1));
                if (index >= n_strata)
                    throw stratloc::input_error("--window: stratum index " +
                                                std::to_string(index) + " out of range");
                overrides.emplace_back(index, w);
            }
        } catch (const stratloc::input_error&) {
            throw;
        } catch (const std::exception&) {
            throw stratloc::input_error("--window: cannot parse '" + token + "'");
        }
        first = false;
    }
    std::vector<std::int64_t> thresholds(n_strata, base);
    for (const auto& [index, w] : overrides) thresholds[index] = w;
    return thresholds;
}

std::vector<std::string> mask_names(const std::vector<stratloc::Coordinate>& coords,
                                    const std::vector<stratloc::Relation>& rels,
                                    const std::vector<bool>& even_mask,
                                    const std::vector<bool>& odd_mask) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < even_mask.size(); ++i)
        if (even_mask[i]) names.push_back(coords[i].name);
    for (std::size_t j = 0; j < odd_mask.size(); ++j)
        if (odd_mask[j]) names.push_back(rels[j].name);
    return names;
}

json stratum_json(const stratloc::StackModel& m, const stratloc::Stratum& s, std::size_t index) {
    json js;
    js["index"] = index;
    js["lambda"] = s.lambda.v;
    js["mu_squared"] = rat_string(s.mu_squared);
    if (auto mu = exact_sqrt(s.mu_squared)) js["mu"] = *mu;
    json supports = json::array();
    for (std::uint32_t mask : s.supports) {
        json names = json::array();
        for (std::size_t i = 0; i < m.coordinates().size(); ++i)
            if (mask & (std::uint32_t{1} << i)) names.push_back(m.coordinates()[i].name);
        supports.push_back(names);
    }
    js["supports"] = supports;
    js["killed"] = mask_names(m.coordinates(), m.relations(), s.killed_even, s.killed_odd);
    json stratum_gens = json::array(), fixed_gens = json::array();
    for (const auto& v : s.stratum_algebra->evens()) stratum_gens.push_back(v.name);
    for (const auto& v : s.stratum_algebra->odds()) stratum_gens.push_back(v.name);
    for (const auto& v : s.fixed_algebra->evens()) fixed_gens.push_back(v.name);
    for (const auto& v : s.fixed_algebra->odds()) fixed_gens.push_back(v.name);
    js["stratum_generators"] = stratum_gens;
    js["fixed_generators"] = fixed_gens;
    js["cotangent_positive"] = stratloc::canonical_string(s.cotangent_positive);
    js["cotangent_negative"] = stratloc::canonical_string(s.cotangent_negative);
    js["regular_embedding"] = s.regular_embedding;
    js["affine_bundle_over_fixed"] = s.affine_bundle_over_fixed;
    js["window_ready"] = s.window_ready;
    js["serre_a"] = stratloc::serre_window_data(m, s).a;
    return js;
}

json term_json(const stratloc::LocalizationTerm& t) {
    json jt;
    jt["method"] = t.method;
    if (t.value)
        jt["value"] = int_json(*t.value);
    else
        jt["value"] = nullptr;
    return jt;
}

std::string term_text(const stratloc::LocalizationTerm& t) {
    return t.value ? t.value->get_str() : "?";
}

json localization_json(const stratloc::StackModel& m, const std::vector<stratloc::Stratum>& strata,
                       const stratloc::LocalizationReport& report) {
    json out;
    out["lhs"] = term_json(report.lhs);
    out["semistable"] = term_json(report.semistable);
    json corrections = json::array();
    for (std::size_t i = 0; i < report.corrections.size(); ++i) {
        json c = term_json(report.corrections[i]);
        c["stratum"] = i;
        c["lambda"] = strata[i].lambda.v;
        corrections.push_back(c);
    }
    out["corrections"] = corrections;
    if (auto rhs = report.rhs()) out["rhs"] = int_json(*rhs);
    std::string identity = term_text(report.lhs) + " = " + term_text(report.semistable);
    for (const auto& c : report.corrections) identity += " + " + term_text(c);
    out["identity"] = identity;
    return out;
}

int cmd_validate(const stratloc::StackModel& m, const RunConfig& config) {
    stratloc::StratificationCheck check = stratloc::validate_stratification(m);
    json report;
    report["command"] = "validate";
    report["model"] = stratloc::model_to_json(m);
    report["stratification"] = {{"ok", check.ok}, {"violations", check.violations}};
    report["strata_count"] = stratloc::git_stratify(m).size();
    emit(report, config);
    return check.ok ? 0 : 1;
}

int cmd_stratify(const stratloc::StackModel& m, const RunConfig& config) {
    auto strata = stratloc::git_stratify(m);
    json report;
    report["command"] = "stratify";
    report["semistable_locus_nonempty"] = true;
    for (const auto& s : strata) {
        bool kills_even =
            std::find(s.killed_even.begin(), s.killed_even.end(), true) != s.killed_even.end();
        if (!kills_even) report["semistable_locus_nonempty"] = false;
    }
    json list = json::array();
    for (std::size_t i = 0; i < strata.size(); ++i) list.push_back(stratum_json(m, strata[i], i));
    report["strata"] = list;
    emit(report, config);
    return 0;
}

int cmd_chi(const stratloc::StackModel& m, const RunConfig& config) {
    stratloc::FreeComplex f = load_sheaf(m, config);
    json report;
    report["command"] = "chi";
    if (config.method != "auto" && config.method != "series" && config.method != "chains")
        throw stratloc::input_error("--method must be auto, series, or chains");

    if (config.method == "series" || config.method == "auto") {
        try {
            stratloc::Int value = stratloc::chi_series(m, f);
            report["chi"] = int_json(value);
            report["method"] = "series";
            emit(report, config);
            return 0;
        } catch (const stratloc::inapplicable_error&) {
            if (config.method == "series") throw;
        }
    }
    stratloc::ChiChains chains = stratloc::chi_chains(m, f, config.degree_bound);
    if (!chains.stabilized)
        throw stratloc::truncation_error(
            "chain homology did not stabilize within --degree-bound " +
            std::to_string(config.degree_bound));
    report["chi"] = int_json(chains.value);
    report["method"] = "chains";
    emit(report, config);
    return 0;
}

int cmd_localize(const stratloc::StackModel& m, const RunConfig& config, bool verify) {
    stratloc::FreeComplex f = load_sheaf(m, config);
    auto strata = stratloc::git_stratify(m);
    stratloc::LocalizationReport report =
        stratloc::verify_localization(m, f, config.cutoff, config.degree_bound);
    json out = localization_json(m, strata, report);
    out["command"] = verify ? "verify-localization" : "localize";
    if (verify) {
        switch (report.verdict) {
        case stratloc::LocalizationReport::Verdict::verified: out["verdict"] = "verified"; break;
        case stratloc::LocalizationReport::Verdict::mismatch: out["verdict"] = "mismatch"; break;
        case stratloc::LocalizationReport::Verdict::indeterminate:
            out["verdict"] = "indeterminate";
            break;
        }
    }
    emit(out, config);
    if (verify) {
        if (report.verdict == stratloc::LocalizationReport::Verdict::verified) return 0;
        if (report.verdict == stratloc::LocalizationReport::Verdict::mismatch) return 1;
        return 2;
    }
    bool complete = report.lhs.value && report.semistable.value;
    for (const auto& c : report.corrections) complete = complete && c.value;
    return complete ? 0 : 2;
}

int cmd_windows(const stratloc::StackModel& m, const RunConfig& config) {
    stratloc::FreeComplex f = load_sheaf(m, config);
    auto strata = stratloc::git_stratify(m);
    auto thresholds = parse_window(config.window_spec, strata.size());
    json report;
    report["command"] = "windows";
    json list = json::array();
    for (std::size_t i = 0; i < strata.size(); ++i) {
        stratloc::WindowPieces pieces =
            stratloc::gamma_window(m, strata[i], f, thresholds[i], config.max_koszul_level);
        json jw;
        jw["stratum"] = i;
        jw["lambda"] = strata[i].lambda.v;
        jw["w"] = thresholds[i];
        jw["window_ready"] = strata[i].window_ready;
        jw["stabilized_at"] = pieces.stabilized_at;
        jw["geq"] = {{"rank", pieces.geq.generators().size()},
                     {"character", stratloc::canonical_string(pieces.geq.generator_character())}};
        jw["lt"] = {{"rank", pieces.lt.generators().size()},
                    {"character", stratloc::canonical_string(pieces.lt.generator_character())}};
        list.push_back(jw);
    }
    report["windows"] = list;
    emit(report, config);
    return 0;
}

int cmd_wallcross(const stratloc::StackModel& m, const RunConfig& config) {
    stratloc::Cocharacter lambda = parse_lambda(config.lambda_spec, m.rank());
    stratloc::WallCrossingReport wall = stratloc::wall_crossing_report(m, lambda);
    json report;
    report["command"] = "wallcross";
    report["lambda_plus"] = lambda.v;
    report["hypothesis_ok"] = wall.hypothesis_ok;
    report["violations"] = wall.violations;
    report["c"] = wall.c;
    report["a_plus"] = wall.a_plus;
    report["a_minus"] = wall.a_minus;
    report["relation"] = wall.relation;
    emit(report, config);
    return wall.hypothesis_ok ? 0 : 1;
}

int cmd_duality_check(const stratloc::StackModel& m, const RunConfig& config) {
    auto strata = stratloc::git_stratify(m);
    json report;
    report["command"] = "duality-check";
    bool ok = true;
    json list = json::array();
    for (std::size_t i = 0; i < strata.size(); ++i) {
        stratloc::SerreWindowData data = stratloc::serre_window_data(m, strata[i]);
        bool involution = true;
        for (std::int64_t w = -8; w <= 8; ++w)
            involution = involution && data.flip(data.flip(w)) == w;
        ok = ok && involution;
        json js;
        js["stratum"] = i;
        js["lambda"] = strata[i].lambda.v;
        js["a"] = data.a;
        js["flip_of_0"] = data.flip(0);
        js["involution_ok"] = involution;
        list.push_back(js);
    }
    report["strata"] = list;
    report["ok"] = ok;
    emit(report, config);
    return ok ? 0 : 1;
}

int run(const RunConfig& config) {
    if (config.degree_bound < 1) throw stratloc::input_error("--degree-bound must be positive");
    if (config.max_koszul_level < 0)
        throw stratloc::input_error("--max-koszul-level must be positive");
    if (config.cutoff > 0) throw stratloc::input_error("--cutoff must be <= 0");
    if (config.format != "json" && config.format != "table")
        throw stratloc::input_error("--format must be json or table");

    stratloc::StackModel m = stratloc::model_from_json(load_json(config.model_path));

    if (config.command == "validate") return cmd_validate(m, config);
    if (config.command == "stratify") return cmd_stratify(m, config);
    if (config.command == "chi") return cmd_chi(m, config);
    if (config.command == "localize") return cmd_localize(m, config, false);
    if (config.command == "verify-localization") return cmd_localize(m, config, true);
    if (config.command == "windows") return cmd_windows(m, config);
    if (config.command == "wallcross") return cmd_wallcross(m, config);
    if (config.command == "duality-check") return cmd_duality_check(m, config);
    throw stratloc::input_error("unknown command: " + config.command);
}

} // namespace

int main(int argc, char** argv) {
    RunConfig config;
    CLI::App app{"Exact engine for torus actions on quasi-smooth affine derived quotient "
                 "stacks: stratifications, windows, and localization."};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {"validate",  "stratify",  "chi",
                                               "localize",  "verify-localization",
                                               "windows",   "wallcross", "duality-check"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("model", config.model_path, "model JSON file")->required();
        sub->add_option("--sheaf", config.sheaf_path, "sheaf JSON file (default: unit)");
        sub->add_option("--cutoff", config.cutoff, "series cutoff (<= 0, 0 = auto)");
        sub->add_option("--degree-bound", config.degree_bound, "homology truncation bound");
        sub->add_option("--window", config.window_spec, "window threshold w[,i=w_i,...]");
        sub->add_option("--max-koszul-level", config.max_koszul_level,
                        "Koszul stabilization bound (0 = auto)");
        sub->add_option("--method", config.method, "chi backend: auto|series|chains");
        sub->add_option("--lambda", config.lambda_spec, "wall cocharacter a,b,...");
        sub->add_option("--format", config.format, "output format: json|table");
        sub->callback([&config, name] { config.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        return run(config);
    } catch (const stratloc::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const stratloc::inapplicable_error& e) {
        std::cerr << "inapplicable: " << e.what() << "\n";
        return 2;
    } catch (const stratloc::truncation_error& e) {
        std::cerr << "indeterminate: " << e.what() << "\n";
        return 2;
    } catch (const stratloc::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
