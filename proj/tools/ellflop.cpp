// ellflop: classify, resolve and self-test Weierstrass models over a rational surface base.

#include <CLI11.hpp>

#include <ellflop/report.hpp>
#include <ellflop/selftest.hpp>

#include <iostream>

using namespace ellflop;

namespace {

int run_job(const std::string& command, const std::string& input, bool as_json, std::optional<unsigned> limit,
            const std::string& table_path) {
    JobSpec job = load_job(input);
    if (limit) job.recursion_limit = *limit;
    Report rep;
    if (command == "classify") {
        rep = cmd_classify(job);
    } else {
        std::vector<ExtremalEntry> table = table_path.empty() ? default_extremal_table() : load_extremal_table(table_path);
        rep = cmd_resolve(job, table);
    }
    if (as_json)
        std::cout << rep.data.dump(2) << "\n";
    else
        std::cout << render_text(rep.data);
    return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resolve isolated (4,6,12) fibers of Weierstrass models and analyse the exceptional surfaces"};
    app.set_version_flag("--version", std::string("ellflop ") + ELLFLOP_VERSION);
    bool print_table = false;
    app.add_flag("--print-kodaira-table", print_table, "Print the Kodaira classification table and exit");

    std::string input, table_path;
    bool as_json = false;
    unsigned limit_value = 0;
    auto add_job_options = [&](CLI::App* sub) {
        sub->add_option("--input", input, "Job file (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_flag("--json", as_json, "Emit the machine-readable JSON report");
    };
    CLI::App* classify = app.add_subcommand("classify", "Orders and fiber types at points and along divisors");
    add_job_options(classify);
    CLI::App* resolve = app.add_subcommand("resolve", "Blow up isolated (4,6,12) points and report the surfaces");
    add_job_options(resolve);
    CLI::Option* limit_opt = resolve->add_option("--recursion-limit", limit_value, "Maximum blow-up depth")
                                 ->check(CLI::PositiveNumber);
    resolve->add_option("--extremal-table", table_path, "Extremal configuration table file")
        ->check(CLI::ExistingFile);

    SelftestOptions opt;
    CLI::App* selftest = app.add_subcommand("selftest", "Run worked-example regressions and property suites");
    selftest->add_option("--seed", opt.seed, "Seed for the random instances");
    selftest->add_option("--instances", opt.instances, "Instances per property")->check(CLI::PositiveNumber);
    selftest->add_flag("--inject-kodaira-fault", opt.corrupt_kodaira_table,
                       "Drop a row from the Kodaira table (fault injection)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    if (print_table) {
        std::cout << kodaira_table_text();
        if (app.get_subcommands().empty()) return 0;
    }
    try {
        if (classify->parsed()) return run_job("classify", input, as_json, std::nullopt, "");
        if (resolve->parsed()) {
            std::optional<unsigned> limit;
            if (limit_opt->count() > 0) limit = limit_value;
            return run_job("resolve", input, as_json, limit, table_path);
        }
        if (selftest->parsed()) return cmd_selftest(opt, std::cout, std::cerr);
    } catch (const NotIsolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    std::cout << app.help();
    return kExitInput;
}
