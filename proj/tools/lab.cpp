// lab: runs the named experiments and writes plot-ready CSV files.
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gausslab/error.hpp"
#include "gausslab/harness.hpp"

namespace hn = gausslab::harness;

namespace {

const char* type_name(hn::ParamType t) {
    switch (t) {
    case hn::ParamType::real: return "real";
    case hn::ParamType::integer: return "integer";
    case hn::ParamType::real_list: return "list";
    case hn::ParamType::text: return "text";
    }
    return "?";
}

void print_list() {
    for (const hn::ExperimentSchema& s : hn::experiment_schemas()) {
        std::printf("%s\n    %s\n", s.name.c_str(), s.summary.c_str());
        for (const hn::ParamSchema& p : s.params) {
            std::printf("    %-14s %-8s default %-28s %s [%g, %g]\n", p.key.c_str(), type_name(p.type),
                        p.default_value.c_str(), p.help.c_str(), p.min, p.max);
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"experiment runner for the Gauss-type map transfer operators"};
    app.require_subcommand(1);

    app.add_subcommand("list", "list experiments and their parameters");

    CLI::App* run = app.add_subcommand("run", "run one experiment");
    std::string name;
    std::vector<std::string> kv;
    std::string out_dir;
    std::string config;
    bool parallel = false;
    run->add_option("experiment", name, "experiment name")->required();
    run->add_option("--param,-p", kv, "key=value override (repeatable)");
    run->add_option("--out,-o", out_dir, "output directory");
    run->add_option("--config,-c", config, "flat key = value file; --param wins");
    run->add_flag("--parallel", parallel, "evaluate independent parameter points concurrently");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (app.got_subcommand("list")) {
        print_list();
        return 0;
    }

    try {
        hn::ExperimentSpec spec;
        spec.name = name;
        spec.parallel = parallel;
        spec.output_path = out_dir;
        if (!config.empty()) spec.params = hn::read_config_file(config);
        for (const std::string& item : kv) {
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0) throw gausslab::ConfigError("--param expects key=value, got " + item);
            spec.params[item.substr(0, eq)] = item.substr(eq + 1);
        }
        const hn::ExperimentResult res = hn::run_experiment(spec);
        for (const hn::ReportRow& r : res.rows) {
            std::printf("%-4s %-36s %-28s value=%-24.17g bound=%-12.4g threshold=%g (%s)\n", r.pass ? "ok" : "FAIL",
                        r.metric.c_str(), r.param_echo.size() > 28 ? "" : r.param_echo.c_str(), r.value,
                        r.certified_bound, r.threshold, hn::relation_name(r.relation));
        }
        for (const auto& f : res.files) std::printf("wrote %s\n", f.string().c_str());
        std::printf("%s: %s\n", name.c_str(), res.all_pass() ? "pass" : "FAIL");
        return res.all_pass() ? 0 : 1;
    } catch (const gausslab::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
