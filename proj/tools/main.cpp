// Command-line front end: build groups from specs, compute group strings,
// decide isomorphism, run verification suites, and list the group catalog.
//
// Exit codes: 0 pass, 1 check failure (failed verification, inconsistent
// group, or a negative isomorphism verdict), 2 usage or configuration error,
// 3 search budget exceeded.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <twine/catalog.hpp>
#include <twine/consistency.hpp>
#include <twine/errors.hpp>
#include <twine/invariants.hpp>
#include <twine/table_group.hpp>
#include <twine/twist.hpp>
#include <twine/verify.hpp>

using namespace twine;

namespace {

/// Quotes a spec for echoing inside a replay command.
std::string shell_quoted(const std::string& s) { return "'" + s + "'"; }

GroupPtr load_group(const std::string& spec_file, const std::string& group_spec,
                    std::string* used_spec) {
    if (!spec_file.empty() && !group_spec.empty())
        throw ConfigError("give either --spec FILE or --group SPEC, not both");
    if (spec_file.empty() && group_spec.empty())
        throw ConfigError("a group is required: --spec FILE or --group SPEC\n" +
                          group_spec_help());
    *used_spec = spec_file.empty() ? group_spec : "file:" + spec_file;
    return parse_group_spec(*used_spec);
}

void write_payload(const std::string& payload, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << payload;
}

int run_build(const std::string& spec_file, const std::string& group_spec,
              const std::string& json_path, bool strict, bool unchecked) {
    std::string used;
    GroupPtr g = load_group(spec_file, group_spec, &used);
    nlohmann::json out;
    out["label"] = g->label();
    out["order"] = g->order();
    out["order_structure"] = order_structure_text(order_structure(*g));
    out["exponent"] = exponent_of(*g);
    out["center_order"] = center(g)->order();
    const std::size_t derived_order = derived_subgroup(g)->order();
    out["derived_order"] = derived_order;
    out["abelian"] = derived_order == 1;
    std::optional<ClassWitness> w;
    bool class2 = verify_class_at_most_2(*g, &w);
    out["class_at_most_2"] = class2;
    if (!class2 && w)
        out["class_witness"] = {to_string(w->a), to_string(w->b), to_string(w->c)};

    int code = 0;
    if (!unchecked) {
        ConsistencyOptions copts;
        if (strict) {
            const std::size_t o = g->order();
            copts.exhaustive_order_budget = std::max(copts.exhaustive_order_budget, o);
            copts.full_triple_limit = std::max(copts.full_triple_limit, o);
            copts.latin_full_limit = std::max(copts.latin_full_limit, o);
        }
        ConsistencyReport rep = check_consistency(*g, copts);
        out["consistency"] = {{"passed", rep.passed},
                              {"mode", rep.mode},
                              {"checks_run", rep.checks_run}};
        if (!rep.passed) {
            out["consistency"]["failure"] = rep.failure;
            out["replay"] = "twine build --group " + shell_quoted(used) + (strict ? " --strict" : "");
            code = 1;
        }
    }
    write_payload(out.dump(2) + "\n", json_path);
    return code;
}

int run_string(const std::string& spec_file, const std::string& group_spec,
               const std::string& json_path) {
    std::string used;
    GroupPtr g = load_group(spec_file, group_spec, &used);
    write_payload(string_report_json(string_of(g)), json_path);
    return 0;
}

int run_iso(const std::vector<std::string>& specs, std::size_t budget,
            const std::string& json_path) {
    GroupPtr a = parse_group_spec(specs[0]);
    GroupPtr b = parse_group_spec(specs[1]);
    IsoOptions o;
    o.node_budget = budget;
    IsoResult r = isomorphism(a, b, o);
    nlohmann::json out;
    out["a"] = a->label();
    out["b"] = b->label();
    out["isomorphic"] = r.isomorphic;
    out["separating_invariant"] = r.separating_invariant;
    nlohmann::json gm = nlohmann::json::array();
    for (const auto& [x, y] : r.generator_map) gm.push_back({to_string(x), to_string(y)});
    out["generator_map"] = std::move(gm);
    if (!r.isomorphic)
        out["replay"] =
            "twine iso --group " + shell_quoted(specs[0]) + " --group " + shell_quoted(specs[1]);
    write_payload(out.dump(2) + "\n", json_path);
    return r.isomorphic ? 0 : 1;
}

int run_verify(const std::string& suite, Exp p, const std::string& group_spec,
               std::size_t budget, std::uint64_t seed, const std::string& json_path) {
    VerifyOptions o;
    o.p = p;
    o.seed = seed;
    o.node_budget = budget;
    if (!group_spec.empty()) {
        o.group = parse_group_spec(group_spec);
        o.group_spec = group_spec;
    }
    Report r = run_verify_suite(suite, o);
    if (json_path == "-") {
        std::cout << render_report(r, "json");
    } else {
        std::cout << render_report(r, "text");
        if (!json_path.empty()) write_payload(render_report(r, "json"), json_path);
    }
    return r.overall_pass ? 0 : 1;
}

int run_catalog(Exp p, const std::string& json_path) {
    std::vector<GroupPtr> groups = order_p4_groups(p);
    groups.push_back(heisenberg(p, 1));
    Exp p6 = p * p * p * p * p * p;
    if (p6 <= static_cast<Exp>(kMaxTableOrder)) groups.push_back(heisenberg(p, 2));
    groups.push_back(unitriangular4(p));

    nlohmann::json out;
    out["p"] = p;
    nlohmann::json entries = nlohmann::json::array();
    for (const GroupPtr& g : groups) {
        nlohmann::json e;
        e["label"] = g->label();
        e["order"] = g->order();
        e["abelian"] = derived_subgroup(g)->order() == 1;
        e["class_at_most_2"] = verify_class_at_most_2(*g);
        e["center_order"] = center(g)->order();
        e["order_structure"] = order_structure_text(order_structure(*g));
        entries.push_back(std::move(e));
    }
    out["groups"] = std::move(entries);
    nlohmann::json classes = nlohmann::json::array();
    for (const StatsClass& c : classify_by_order_structure(order_p4_groups(p))) {
        nlohmann::json jc;
        jc["order_structure"] = order_structure_text(c.os);
        std::vector<std::string> members;
        for (const GroupPtr& m : c.members) members.push_back(m->label());
        jc["members"] = members;
        classes.push_back(std::move(jc));
    }
    out["classes"] = std::move(classes);

    if (!json_path.empty()) {
        write_payload(out.dump(2) + "\n", json_path);
        return 0;
    }
    std::ostringstream text;
    for (const auto& e : out["groups"])
        text << std::left << std::setw(22) << e["label"].get<std::string>() << " order "
             << std::setw(7) << e["order"].get<std::size_t>() << " |Z| " << std::setw(5)
             << e["center_order"].get<std::size_t>()
             << (e["abelian"].get<bool>()          ? " abelian   "
                 : e["class_at_most_2"].get<bool>() ? " class<=2  "
                                                    : " class 3   ")
             << e["order_structure"].get<std::string>() << "\n";
    text << "\norder statistics classes at order " << (p * p * p * p) << ":\n";
    for (const auto& jc : out["classes"]) {
        text << "  " << jc["order_structure"].get<std::string>() << " : ";
        bool first = true;
        for (const auto& m : jc["members"]) {
            if (!first) text << ", ";
            text << m.get<std::string>();
            first = false;
        }
        text << "\n";
    }
    text << "\ngroup spec forms:\n" << group_spec_help();
    std::cout << text.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twine: twisted products, group strings, and verification for finite "
                 "class-2 groups"};
    app.require_subcommand(1);

    std::string spec_file, group_spec, json_path, suite;
    std::vector<std::string> iso_specs;
    Exp p = 3;
    std::size_t budget = 50'000'000;
    std::uint64_t seed = 0x5EED5EEDull;
    bool strict = false, unchecked = false;

    CLI::App* cmd_build = app.add_subcommand(
        "build", "Build a group from a spec and report its basic invariants");
    cmd_build->add_option("--spec", spec_file, "presentation file (json)");
    cmd_build->add_option("--group", group_spec, "group spec (see `twine catalog`)");
    cmd_build->add_option("--json", json_path, "write the json report here ('-' = stdout)");
    cmd_build->add_flag("--strict", strict, "force exhaustive consistency certification");
    cmd_build->add_flag("--unchecked", unchecked, "skip consistency certification");

    CLI::App* cmd_string = app.add_subcommand(
        "string", "Compute the group string attached to an odd-order class-2 group");
    cmd_string->add_option("--spec", spec_file, "presentation file (json)");
    cmd_string->add_option("--group", group_spec, "group spec (see `twine catalog`)");
    cmd_string->add_option("--json", json_path, "write the json report here ('-' = stdout)");

    CLI::App* cmd_iso = app.add_subcommand("iso", "Decide whether two groups are isomorphic");
    cmd_iso->add_option("--group", iso_specs, "the two group specs to compare")
        ->expected(2)
        ->required();
    cmd_iso->add_option("--budget", budget, "isomorphism search node budget");
    cmd_iso->add_option("--json", json_path, "write the json report here ('-' = stdout)");

    CLI::App* cmd_verify =
        app.add_subcommand("verify", "Run a verification suite and report each check");
    cmd_verify->add_option("--suite", suite, "lemma-s | lemma-center | theorem | "
                                             "p4-classification | corollary | associativity")
        ->required();
    cmd_verify->add_option("--p", p, "odd prime for the built-in fixture families");
    cmd_verify->add_option("--group", group_spec,
                           "explicit fixture replacing the built-in set (where supported)");
    cmd_verify->add_option("--budget", budget, "isomorphism search node budget");
    cmd_verify->add_option("--seed", seed, "seed for sampled associativity triples");
    cmd_verify->add_option("--json", json_path,
                           "also write the json report here ('-' = json to stdout)");

    CLI::App* cmd_catalog =
        app.add_subcommand("catalog", "List the built-in groups and spec grammar");
    cmd_catalog->add_option("--p", p, "odd prime for the catalog families");
    cmd_catalog->add_option("--json", json_path, "write the json listing here ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_build->parsed()) return run_build(spec_file, group_spec, json_path, strict, unchecked);
        if (cmd_string->parsed()) return run_string(spec_file, group_spec, json_path);
        if (cmd_iso->parsed()) return run_iso(iso_specs, budget, json_path);
        if (cmd_verify->parsed()) return run_verify(suite, p, group_spec, budget, seed, json_path);
        return run_catalog(p, json_path);
    } catch (const SearchBudgetExceeded& ex) {
        std::cerr << "budget exceeded: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
