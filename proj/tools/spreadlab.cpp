#include <spreadlab/spreadlab.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace spreadlab;

int main(int argc, char** argv) {
    CLI::App app{"spreadlab: exact spread of small groups and certified spread bounds for sporadic groups"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text", out_path;
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--out", out_path, "Write the report to this file instead of stdout");

    CoverSearchConfig cfg;
    std::size_t cap = kDefaultOrderCap;
    auto add_search_flags = [&](CLI::App* c) {
        c->add_option("--threads", cfg.threads, "Search threads")->check(CLI::Range(1u, 256u));
        c->add_option("--node-budget", cfg.node_budget, "Search node budget (0: unlimited)");
        c->add_option("--time-budget", cfg.time_budget_seconds, "Search time budget in seconds (0: unlimited)")
            ->check(CLI::NonNegativeNumber);
        c->add_option("--order-cap", cap, "Largest group order to enumerate");
    };

    std::string spec, table, cert, cls, target, dir;
    std::size_t r_value = 0;
    unsigned long long q = 0;
    bool bw_check = false;

    auto* spread = app.add_subcommand("spread", "Exact spread via minimum supporting sets");
    spread->require_subcommand(1);
    spread->fallthrough();
    auto* exact = spread->add_subcommand("exact", "Compute s(G) with a minimal witness");
    exact->add_option("spec", spec, "Group spec file or fixture name")->required();
    add_search_flags(exact);
    auto* atleast = spread->add_subcommand("atleast", "Decide whether G has spread r");
    atleast->add_option("spec", spec, "Group spec file or fixture name")->required();
    atleast->add_option("--r", r_value, "Spread to test")->required();
    add_search_flags(atleast);

    auto* bound = app.add_subcommand("bound", "Woldar bound from a whole class");
    bound->require_subcommand(1);
    bound->fallthrough();
    auto* bound_class = bound->add_subcommand("class", "s(G) <= |class| - 1");
    bound_class->add_option("source", spec, "Group spec or class table")->required();
    bound_class->add_option("--class", cls, "Class name")->required();
    bound_class->add_option("--order-cap", cap, "Largest group order to enumerate");

    auto* trick = app.add_subcommand("trick", "Even order trick on a class table");
    trick->add_option("table", table, "Class table file or fixture name")->required();
    trick->add_option("--target", target, "Target involution class")->required();

    auto* certify_cmd = app.add_subcommand("certify", "Check a spread certificate against its class table");
    certify_cmd->add_option("table", table, "Class table file or fixture name")->required();
    certify_cmd->add_option("cert", cert, "Certificate file or fixture name")->required();

    auto* verify = app.add_subcommand("verify-table1", "Certify every fixture pair and list the bounds");
    verify->add_option("dir", dir, "Fixture directory (default: $SPREADLAB_DATA/sporadic)");

    auto* bw = app.add_subcommand("bw", "Brenner-Wiegold value of s(L2(q))");
    bw->add_option("--q", q, "Prime power q")->required();
    bw->add_flag("--check", bw_check, "Compare against the exact spread of the l2_<q> fixture");
    add_search_flags(bw);

    auto* table_cmd = app.add_subcommand("table", "Derive a class table from a group spec");
    table_cmd->add_option("spec", spec, "Group spec file or fixture name")->required();
    table_cmd->add_option("--order-cap", cap, "Largest group order to enumerate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    RunReport rep;
    if (exact->parsed()) rep = cmd_exact_spread(spec, cfg, cap);
    else if (atleast->parsed()) rep = cmd_spread_atleast(spec, r_value, cfg, cap);
    else if (bound_class->parsed()) rep = cmd_bound_class(spec, cls, cap);
    else if (trick->parsed()) rep = cmd_trick(table, target);
    else if (certify_cmd->parsed()) rep = cmd_certify(table, cert);
    else if (verify->parsed()) rep = cmd_verify_table1(dir);
    else if (bw->parsed()) rep = cmd_bw(q, bw_check, cfg);
    else if (table_cmd->parsed()) rep = cmd_table(spec, cap);

    const std::string body = rep.render(format == "machine" ? Format::Machine : Format::Text);
    if (out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return kExitInput;
        }
        out << body;
    }
    // Errors also go to stderr when stdout carries JSON or the report went to a file.
    if (rep.exit_code != kExitOk && rep.machine.contains("message") && (format == "machine" || !out_path.empty()))
        std::cerr << rep.machine["message"].get<std::string>() << "\n";
    return rep.exit_code;
}
