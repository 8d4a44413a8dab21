#pragma once

// Command-line front end. run() is kept in a header so the test suite can
// drive it in-process with string streams.

#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <weingarten/montecarlo.hpp>
#include <weingarten/reference.hpp>

namespace weingarten::cli {

enum ExitCode { ok = 0, math_failure = 1, usage_error = 2 };

/// Cap from the environment (WEINGARTEN_UNITARY_CAP, WEINGARTEN_ORTHOGONAL_CAP)
/// or the library default.
inline int env_cap(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    try {
        const int cap = std::stoi(v);
        if (cap >= 1) return cap;
    } catch (const std::exception&) {
    }
    throw parse_error(std::string(name) + " must be a positive integer");
}

namespace detail {

inline nlohmann::json rf_json(const RationalFunction& f) {
    return nlohmann::json{{"value", to_json_value(f)}, {"text", f.str()}};
}

inline std::string at_string(const RationalFunction& f, int d) { return to_short_string(f(d)); }

inline void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump() << "\n"; }

inline std::string latex(const RationalFunction& f) {
    const auto [n, d] = f.factored();
    return d == "1" ? n : "\\frac{" + n + "}{" + d + "}";
}

struct Options {
    int n = 0;
    std::string cls;
    std::optional<int> at;
    bool json = false;
    bool latex = false;
    bool upTo = false;
    int cap = 0;
    std::string group;
    std::vector<int> i, j, ibar, jbar;
    int d = 0;
    std::vector<std::string> queries;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    int count = 20;
    unsigned threads = 0;
};

using Table = std::vector<std::pair<Partition, RationalFunction>>;

inline Table weingarten_table(const std::string& group, int n, int cap) {
    Table t;
    if (group == "unitary") {
        for (const auto& mu : partitions_of(n)) t.emplace_back(mu, wg_unitary(n, mu, cap));
    } else if (group == "orthogonal" || group == "symplectic") {
        const OrthoWgTable table = group == "orthogonal" ? wg_orthogonal(n, cap) : wg_symplectic(n, cap);
        for (const auto& mu : partitions_of(n)) t.emplace_back(mu, table.at(mu));
    } else {
        throw parse_error("unknown group '" + group + "'");
    }
    return t;
}

inline int cmd_wg(const std::string& group, const Options& o, std::ostream& out) {
    Table t = weingarten_table(group, o.n, o.cap);
    if (!o.cls.empty()) {
        const Partition mu = parse_partition(o.cls);
        if (mu.size() != o.n) throw parse_error("'" + o.cls + "' is not a partition of " + std::to_string(o.n));
        std::erase_if(t, [&](const auto& e) { return e.first != mu; });
    }
    if (o.json) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& [mu, f] : t) {
            nlohmann::json e = rf_json(f);
            e["type"] = mu.str();
            if (o.at) e["at"] = at_string(f, *o.at);
            entries.push_back(e);
        }
        print_json(out, {{"group", group}, {"n", o.n}, {"entries", entries}});
        return ok;
    }
    for (const auto& [mu, f] : t) {
        const std::string value = o.at ? at_string(f, *o.at) : f.str();
        if (t.size() == 1) out << value << "\n";
        else out << "Wg([" << mu.str() << "]) = " << value << "\n";
    }
    return ok;
}

inline int emit_moment(const nlohmann::json& query, const RationalFunction& f, const Options& o, std::ostream& out) {
    if (o.json) {
        nlohmann::json j = rf_json(f);
        j["query"] = query;
        if (o.at) j["at"] = at_string(f, *o.at);
        print_json(out, j);
    } else {
        out << (o.at ? at_string(f, *o.at) : f.str()) << "\n";
    }
    return ok;
}

inline int cmd_moment_unitary(const Options& o, std::ostream& out) {
    const UnitaryMomentQuery q{o.i, o.j, o.ibar, o.jbar};
    if (o.at)
        for (const auto* v : {&o.i, &o.j, &o.ibar, &o.jbar})
            for (int x : *v)
                if (x > *o.at) throw parse_error("index " + std::to_string(x) + " exceeds d=" + std::to_string(*o.at));
    return emit_moment({{"i", o.i}, {"j", o.j}, {"ibar", o.ibar}, {"jbar", o.jbar}}, moment_unitary(q, o.cap), o, out);
}

inline int cmd_moment_orthogonal(const Options& o, std::ostream& out) {
    if (o.at)
        for (const auto* v : {&o.i, &o.j})
            for (int x : *v)
                if (x > *o.at) throw parse_error("index " + std::to_string(x) + " exceeds d=" + std::to_string(*o.at));
    return emit_moment({{"i", o.i}, {"j", o.j}}, moment_orthogonal({o.i, o.j}, o.cap), o, out);
}

inline int cmd_moment_symplectic(const Options& o, std::ostream& out) {
    const BigRat v = moment_symplectic({o.i, o.j}, o.d, o.cap);
    if (o.json) print_json(out, {{"query", {{"i", o.i}, {"j", o.j}}}, {"d", o.d}, {"value", to_fraction_string(v)}});
    else out << to_short_string(v) << "\n";
    return ok;
}

inline int cmd_moment_entries(const Options& o, std::ostream& out) {
    const Group g = parse_group(o.group);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& text : o.queries) {
        const EntryProduct p = parse_entry_product(text);
        const BigRat v = exact_moment(g, o.d, p);
        if (o.json) rows.push_back({{"query", to_string(p)}, {"value", to_fraction_string(v)}});
        else out << to_string(p) << "\t" << to_short_string(v) << "\n";
    }
    if (o.json) print_json(out, {{"group", o.group}, {"d", o.d}, {"moments", rows}});
    return ok;
}

inline int cmd_table(const Options& o, std::ostream& out) {
    std::vector<int> ns;
    for (int n = o.upTo ? 1 : o.n; n <= o.n; ++n) ns.push_back(n);
    nlohmann::json entries = nlohmann::json::array();
    if (o.latex) out << "\\begin{align*}\n";
    std::vector<std::string> lines;
    for (int n : ns)
        for (const auto& [mu, f] : weingarten_table(o.group, n, o.cap)) {
            if (o.json) {
                nlohmann::json e = rf_json(f);
                e["n"] = n;
                e["type"] = mu.str();
                entries.push_back(e);
            } else if (o.latex) {
                lines.push_back("\\Wg ([" + mu.str() + "]) &= " + latex(f));
            } else {
                out << "Wg([" << mu.str() << "]) = " << f.str() << "\n";
            }
        }
    if (o.latex) {
        for (std::size_t k = 0; k < lines.size(); ++k) out << lines[k] << (k + 1 < lines.size() ? ",\\\\\n" : ".\n");
        out << "\\end{align*}\n";
    }
    if (o.json) print_json(out, {{"group", o.group}, {"entries", entries}});
    return ok;
}

inline int cmd_asymptotics(const Options& o, std::ostream& out) {
    bool allGood = true;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& mu : partitions_of(o.n)) {
        nlohmann::json row{{"type", mu.str()}};
        try {
            const RationalFunction& f = o.group == "unitary" ? wg_unitary(o.n, mu, o.cap) : wg_orthogonal(o.n).at(mu);
            const LeadingTerm lead = o.group == "unitary" ? wg_unitary_leading(o.n, mu) : wg_orthogonal_leading(o.n, mu, o.cap);
            const int gap = correction_order(f, lead);
            const int required = o.group == "unitary" ? -2 : -1;
            row["exponent"] = lead.exponent;
            row["coefficient"] = lead.coefficient.str();
            row["correction_order"] = gap;
            row["ok"] = gap <= required;
            allGood = allGood && gap <= required;
        } catch (const cap_exceeded&) {
            throw;
        } catch (const error& e) {
            row["ok"] = false;
            row["message"] = e.what();
            allGood = false;
        }
        rows.push_back(row);
    }
    if (o.json) {
        print_json(out, {{"group", o.group}, {"n", o.n}, {"rows", rows}});
    } else {
        out << "type\texponent\tcoefficient\tcorrection\tstatus\n";
        for (const auto& r : rows) {
            out << r["type"].get<std::string>() << "\t";
            if (r.contains("exponent"))
                out << "-" << r["exponent"].get<int>() << "\t" << r["coefficient"].get<std::string>() << "\t"
                    << r["correction_order"].get<int>() << "\t";
            else
                out << "-\t-\t-\t";
            out << (r["ok"].get<bool>() ? "ok" : "FAIL") << "\n";
        }
    }
    return allGood ? ok : math_failure;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
    const Group g = parse_group(o.group);
    std::vector<EntryProduct> queries;
    for (const auto& q : o.queries) queries.push_back(parse_entry_product(q));
    if (queries.empty()) queries = random_queries(g, o.d, 2 * o.n, o.count, o.seed);
    for (const auto& q : queries) check_indices(g, o.d, q);

    std::vector<BigRat> exact;
    for (const auto& q : queries) exact.push_back(exact_moment(g, o.d, q));
    SamplingPlan plan;
    plan.samples = o.samples;
    plan.seed = o.seed;
    plan.threads = o.threads;
    const auto est = estimate_moments(g, o.d, queries, plan);

    bool allGood = true;
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream text;
    text << std::setprecision(6);
    text << "query\texact\testimate\tstderr\tz\n";
    for (std::size_t k = 0; k < queries.size(); ++k) {
        const double x = static_cast<double>(exact[k]);
        const bool good = concordant(est[k], x);
        allGood = allGood && good;
        const double z = est[k].z_score(x);
        rows.push_back({{"query", to_string(queries[k])},
                        {"exact", to_fraction_string(exact[k])},
                        {"estimate", {est[k].mean.real(), est[k].mean.imag()}},
                        {"stderr", est[k].std_error},
                        {"z", std::isfinite(z) ? nlohmann::json(z) : nlohmann::json("inf")},
                        {"ok", good}});
        text << to_string(queries[k]) << "\t" << to_short_string(exact[k]) << "\t" << est[k].mean.real();
        if (est[k].mean.imag() != 0) text << (est[k].mean.imag() < 0 ? "" : "+") << est[k].mean.imag() << "i";
        text << "\t" << est[k].std_error << "\t" << z << (good ? "" : "\tFAIL") << "\n";
    }
    if (o.json)
        print_json(out, {{"group", o.group}, {"d", o.d}, {"samples", o.samples}, {"seed", o.seed}, {"rows", rows}, {"ok", allGood}});
    else
        out << text.str();
    return allGood ? ok : math_failure;
}

inline int cmd_selftest(const Options& o, std::ostream& out) {
    std::vector<std::pair<std::string, std::function<bool()>>> checks{
        {"published orthogonal table", [] {
             for (const auto& [type, text] : published_orthogonal_table())
                 if (wg_orthogonal(type.size()).at(type) != parse_rational_function(text)) return false;
             return true;
         }},
        {"symplectic table is the reflected orthogonal table", [] {
             for (int n = 1; n <= 4; ++n)
                 for (const auto& [type, f] : wg_symplectic(n).byCosetType)
                     if (f.reflected() != wg_orthogonal(n).at(type)) return false;
             return true;
         }},
        {"unitary n=2 values", [] {
             return wg_unitary(2, {1, 1}) == parse_rational_function("1/(d^2-1)") &&
                    wg_unitary(2, {2}) == parse_rational_function("-1/(d(d^2-1))");
         }},
        {"Gram * Wg = I for n <= 3", [] {
             for (int n = 1; n <= 3; ++n)
                 if (!gram_times_wg_is_identity(n)) return false;
             return true;
         }},
        {"character form agrees for n <= 2", [] {
             for (int n = 1; n <= 2; ++n)
                 for (const auto& p : enumerate_pairings(n))
                     if (wg_orthogonal_character_form(n, p, Pairing::identity(n)) != wg_orthogonal(n)(p, Pairing::identity(n)))
                         return false;
             return true;
         }},
        {"pairing count and dimension identity for n <= 5", [] {
             for (int n = 1; n <= 5; ++n)
                 if (static_cast<long>(enumerate_pairings(n).size()) != double_factorial_odd(n) || !dimension_identity_check(n))
                     return false;
             return true;
         }},
        {"four-factor unitary integral at d=1", [] { return moment_unitary({{1, 1}, {1, 1}, {1, 1}, {1, 1}})(1) == 1; }},
        {"sampler residuals", [] {
             Philox4x32 rng(1);
             for (Group g : {Group::unitary, Group::orthogonal, Group::symplectic})
                 for (int d = 1; d <= 4; ++d)
                     for (int s = 0; s < 50; ++s) {
                         const Residuals r = group_residuals(g, sample_haar(g, d, rng));
                         if (r.unitarity > 1e-12 || r.form > (g == Group::symplectic ? 1e-10 : 1e-12)) return false;
                     }
             return true;
         }},
    };
    bool allGood = true;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [name, check] : checks) {
        bool good = false;
        try {
            good = check();
        } catch (const std::exception&) {
            good = false;
        }
        allGood = allGood && good;
        rows.push_back({{"check", name}, {"ok", good}});
        if (!o.json) out << (good ? "PASS " : "FAIL ") << name << "\n";
    }
    if (o.json) print_json(out, {{"checks", rows}, {"ok", allGood}});
    return allGood ? ok : math_failure;
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using detail::Options;
    Options o;
    std::function<int()> action;
    int unitaryCap = default_unitary_cap, orthogonalCap = default_orthogonal_cap;
    try {
        unitaryCap = env_cap("WEINGARTEN_UNITARY_CAP", unitaryCap);
        orthogonalCap = env_cap("WEINGARTEN_ORTHOGONAL_CAP", orthogonalCap);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    CLI::App app{"Exact and Monte Carlo Haar moments of U(d), O(d) and Sp(d)", "weingarten"};
    app.require_subcommand(1);

    auto* wg = app.add_subcommand("wg", "Weingarten function as a rational function of d");
    wg->require_subcommand(1);
    for (const std::string group : {"unitary", "orthogonal", "symplectic"}) {
        auto* sub = wg->add_subcommand(group, "Weingarten function of the " + group + " group");
        sub->add_option("--n", o.n, "number of factors (pairs for O and Sp)")->required()->check(CLI::PositiveNumber);
        sub->add_option(group == "unitary" ? "--class" : "--type", o.cls, group == "unitary" ? "cycle type, e.g. 2,1" : "coset type, e.g. 2,1");
        sub->add_option("--at", o.at, "evaluate at this d")->check(CLI::PositiveNumber);
        sub->add_flag("--json", o.json, "machine-readable output");
        sub->callback([&, group, sub] {
            if (!sub->count("--cap")) o.cap = group == "unitary" ? unitaryCap : orthogonalCap;
            action = [&, group] { return detail::cmd_wg(group, o, out); };
        });
        sub->add_option("--cap", o.cap, "largest n allowed")->check(CLI::PositiveNumber);
    }

    auto* moment = app.add_subcommand("moment", "exact Haar moment of a product of entries");
    moment->require_subcommand(1);
    {
        auto* sub = moment->add_subcommand("unitary", "E[U_{i1 j1}...U_{in jn} conj(U_{i'1 j'1})...conj(U_{i'n j'n})]");
        sub->add_option("--i", o.i)->delimiter(',')->required();
        sub->add_option("--j", o.j)->delimiter(',')->required();
        sub->add_option("--ibar", o.ibar, "row indices of conjugated factors")->delimiter(',')->required();
        sub->add_option("--jbar", o.jbar, "column indices of conjugated factors")->delimiter(',')->required();
        sub->add_option("--at", o.at, "evaluate at this d")->check(CLI::PositiveNumber);
        sub->add_flag("--json", o.json);
        sub->add_option("--cap", o.cap)->check(CLI::PositiveNumber);
        sub->callback([&, sub] {
            if (!sub->count("--cap")) o.cap = unitaryCap;
            action = [&] { return detail::cmd_moment_unitary(o, out); };
        });
    }
    {
        auto* sub = moment->add_subcommand("orthogonal", "E[O_{i1 j1}...O_{im jm}]");
        sub->add_option("--i", o.i)->delimiter(',')->required();
        sub->add_option("--j", o.j)->delimiter(',')->required();
        sub->add_option("--at", o.at, "evaluate at this d")->check(CLI::PositiveNumber);
        sub->add_flag("--json", o.json);
        sub->add_option("--cap", o.cap)->check(CLI::PositiveNumber);
        sub->callback([&, sub] {
            if (!sub->count("--cap")) o.cap = orthogonalCap;
            action = [&] { return detail::cmd_moment_orthogonal(o, out); };
        });
    }
    {
        auto* sub = moment->add_subcommand("symplectic", "E[M_{i1 j1}...M_{im jm}] over Sp(d), indices 1..2d");
        sub->add_option("--i", o.i)->delimiter(',')->required();
        sub->add_option("--j", o.j)->delimiter(',')->required();
        sub->add_option("--d", o.d, "Sp(d) acts on C^{2d}")->required()->check(CLI::PositiveNumber);
        sub->add_flag("--json", o.json);
        sub->add_option("--cap", o.cap)->check(CLI::PositiveNumber);
        sub->callback([&, sub] {
            if (!sub->count("--cap")) o.cap = orthogonalCap;
            action = [&] { return detail::cmd_moment_symplectic(o, out); };
        });
    }
    {
        auto* sub = moment->add_subcommand("entries", "moments of entry products, e.g. --query '1,1;2,2*'");
        sub->add_option("--group", o.group)->required()->check(CLI::IsMember({"unitary", "orthogonal", "symplectic"}));
        sub->add_option("--d", o.d)->required()->check(CLI::PositiveNumber);
        sub->add_option("--query", o.queries, "factors 'row,col' separated by ';', '*' conjugates")->required();
        sub->add_flag("--json", o.json);
        sub->callback([&] { action = [&] { return detail::cmd_moment_entries(o, out); }; });
    }

    auto* table = app.add_subcommand("table", "table of Weingarten values");
    table->add_option("--group", o.group)->required()->check(CLI::IsMember({"unitary", "orthogonal", "symplectic"}));
    table->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
    table->add_flag("--up-to", o.upTo, "include every n' <= n");
    auto* latexFlag = table->add_flag("--latex", o.latex);
    table->add_flag("--json", o.json)->excludes(latexFlag);
    table->add_option("--cap", o.cap)->check(CLI::PositiveNumber);
    table->callback([&] {
        if (!table->count("--cap")) o.cap = o.group == "unitary" ? unitaryCap : orthogonalCap;
        action = [&] { return detail::cmd_table(o, out); };
    });

    auto* asym = app.add_subcommand("asymptotics", "leading term d^-(n+l) * Moeb and the size of the correction");
    asym->add_option("--group", o.group)->required()->check(CLI::IsMember({"unitary", "orthogonal"}));
    asym->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
    asym->add_flag("--json", o.json);
    asym->add_option("--cap", o.cap)->check(CLI::PositiveNumber);
    asym->callback([&] {
        if (!asym->count("--cap")) o.cap = o.group == "unitary" ? unitaryCap : 4;
        action = [&] { return detail::cmd_asymptotics(o, out); };
    });

    auto* verify = app.add_subcommand("verify", "compare exact moments with Monte Carlo estimates");
    verify->add_option("--group", o.group)->required()->check(CLI::IsMember({"unitary", "orthogonal", "symplectic"}));
    verify->add_option("--d", o.d)->required()->check(CLI::PositiveNumber);
    verify->add_option("--n", o.n, "random queries have degree <= 2n")->default_val(2)->check(CLI::PositiveNumber);
    verify->add_option("--samples", o.samples)->default_val(100000)->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
    verify->add_option("--seed", o.seed)->default_val(1);
    verify->add_option("--query", o.queries, "explicit query (repeatable), e.g. '1,1;1,1*'");
    verify->add_option("--count", o.count, "number of random queries")->default_val(20)->check(CLI::PositiveNumber);
    verify->add_option("--threads", o.threads, "0 = all cores")->default_val(0);
    verify->add_flag("--json", o.json);
    verify->callback([&] { action = [&] { return detail::cmd_verify(o, out); }; });

    auto* self = app.add_subcommand("selftest", "run the built-in consistency checks");
    self->add_flag("--json", o.json);
    self->callback([&] { action = [&] { return detail::cmd_selftest(o, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }
    try {
        return action();
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const pole_error& e) {
        err << "error: " << e.what() << "\n";
        return math_failure;
    } catch (const cap_exceeded& e) {
        err << "error: " << e.what() << "\n";
        return math_failure;
    } catch (const error& e) {
        // remaining library errors reject the given input
        err << "error: " << e.what() << "\n";
        return usage_error;
    }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"weingarten"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace weingarten::cli
