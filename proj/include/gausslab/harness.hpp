#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace gausslab::harness {

enum class ParamType { real, integer, real_list, text };

struct ParamSchema {
    std::string key;
    ParamType type = ParamType::real;
    std::string default_value;
    double min = 0.0; // bounds apply to every numeric entry
    double max = 0.0;
    std::string help;
};

struct ExperimentSchema {
    std::string name;
    std::string summary;
    std::vector<ParamSchema> params;
};

const std::vector<ExperimentSchema>& experiment_schemas();
const ExperimentSchema& schema_for(const std::string& name); // ConfigError if unknown

struct ExperimentSpec {
    std::string name;
    std::map<std::string, std::string> params; // raw text, validated on use
    std::filesystem::path output_path;         // empty: no files written
    bool parallel = false;
};

// Reads `key = value` lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

// Typed view of a validated parameter map, defaults filled in.
class Params {
public:
    double real(const std::string& key) const;
    int integer(const std::string& key) const;
    std::vector<double> list(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    const std::map<std::string, std::string>& raw() const { return raw_; }
    std::string echo() const; // key=value;key=value in key order

private:
    friend Params validate_params(const ExperimentSpec& spec);
    std::map<std::string, std::string> raw_;
    std::map<std::string, std::vector<double>> numbers_;
};

// Throws ConfigError on unknown keys, malformed numbers or out-of-range values.
Params validate_params(const ExperimentSpec& spec);

enum class Relation {
    at_most,      // value <= threshold
    greater_than, // value > threshold
    less_than,    // value < threshold
    within_bound, // value <= certified_bound
    above_bound   // value > certified_bound
};

struct ReportRow {
    std::string experiment;
    std::string param_echo;
    std::string metric;
    double value = 0.0;
    double certified_bound = 0.0;
    double threshold = 0.0;
    Relation relation = Relation::at_most;
    bool pass = false;

    static bool derive_pass(double value, double certified_bound, double threshold, Relation relation);
};

struct ExperimentResult {
    std::string experiment;
    std::vector<ReportRow> rows;
    std::vector<std::filesystem::path> files;

    bool all_pass() const;
};

// Runs the named experiment. Module errors are rethrown as Error with the
// experiment name prefixed. When output_path is set, writes the experiment
// CSV files, report.csv and summary.json there.
ExperimentResult run_experiment(const ExperimentSpec& spec);

const char* relation_name(Relation r);

} // namespace gausslab::harness
