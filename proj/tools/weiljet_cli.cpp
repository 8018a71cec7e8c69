#include "weiljet/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic calculator for Weil algebras and jet structures"};
    app.require_subcommand(1);

    bool json_out = false;
    app.add_flag("--json", json_out, "emit the structured JSON report");

    std::string qcr_expr;
    CLI::App* qcr = app.add_subcommand("qcr", "standard quasi-colimit representation of a shape");
    qcr->add_option("expr", qcr_expr, "shape expression, e.g. D{3}_2 or D(2)")->required();
    qcr->fallthrough();

    std::string only;
    int max_n = 3;
    CLI::App* verify = app.add_subcommand("verify-identities", "run the built-in identity suites");
    verify->add_option("--only", only, "restrict to one suite: simplicial, equalizers, inclusions");
    verify->add_option("--n", max_n, "level cap for the suites (default 3)");
    verify->fallthrough();

    std::string jet_file;
    bool tangential = false;
    CLI::App* check = app.add_subcommand("check-jet", "check a jet candidate or tower file");
    check->add_option("file", jet_file, "candidate or tower JSON file")->required();
    check->add_flag("--tangential", tangential, "also run the recursive conditions");
    check->fallthrough();

    std::string trans_file;
    std::string map_name;
    CLI::App* trans = app.add_subcommand("transmogrify", "carry a jet into another approach");
    trans->add_option("file", trans_file, "input JSON file")->required();
    trans->add_option("--map", map_name, "phi (tower to candidate) or psi (candidate to series form)")
        ->required();
    trans->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    weiljet::CommandResult result;
    if (app.got_subcommand(qcr)) {
        result = weiljet::run_qcr(qcr_expr);
    } else if (app.got_subcommand(verify)) {
        result = weiljet::run_verify_identities(only, max_n);
    } else if (app.got_subcommand(check)) {
        result = weiljet::run_check_jet(jet_file, tangential);
    } else {
        result = weiljet::run_transmogrify(trans_file, map_name);
    }

    if (json_out) {
        std::cout << result.output.dump(2) << "\n";
    } else {
        std::cout << weiljet::render_text(result.output);
    }
    return result.exit_code;
}
