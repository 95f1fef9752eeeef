#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include <rankcodes/errors.hpp>

#include "experiment.hpp"

using rankcodes::experiment::ConfigError;
using rankcodes::experiment::Json;

namespace {

constexpr int kConfigError = 2;
constexpr int kInvariantViolation = 3;

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::vector<std::size_t> t;
    std::optional<unsigned> workers;
    std::optional<std::size_t> s;
    std::string output;
    bool decode = false;
};

Json load_config(const Overrides& o) {
    std::ifstream in(o.config_path);
    if (!in) throw ConfigError("--config", "cannot open " + o.config_path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
    auto& channel = doc["channel"];
    if (channel.is_null()) channel = Json::object();
    if (o.seed) channel["seed"] = *o.seed;
    if (o.trials) channel["trials"] = *o.trials;
    if (!o.t.empty()) channel["t"] = o.t;
    if (o.workers) channel["workers"] = *o.workers;
    if (o.decode) channel["decode"] = true;
    if (o.s) doc["subfield"] = {{"s", *o.s}};
    if (!o.output.empty()) doc["output"] = o.output;
    return doc;
}

void emit(const std::vector<Json>& records, const std::string& path, bool csv) {
    std::ofstream file;
    if (!path.empty()) {
        file.open(path);
        if (!file) throw ConfigError("output", "cannot write " + path);
    }
    std::ostream& out = path.empty() ? std::cout : file;
    if (csv) {
        out << rankcodes::experiment::simulate_csv(records);
        return;
    }
    for (const auto& r : records) out << r.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-metric code experiments: Gabidulin codes, subspace and subfield subcodes."};
    app.require_subcommand(1);
    Overrides o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-c,--config", o.config_path, "JSON experiment config")->required();
        cmd->add_option("-o,--output", o.output, "write records here instead of stdout");
    };

    auto* info = app.add_subcommand("code-info", "describe the code and its subspace parts");
    add_common(info);

    auto* roundtrip = app.add_subcommand("roundtrip", "encode/decode round trips with rank-t errors");
    add_common(roundtrip);
    roundtrip->add_option("--seed", o.seed, "rng seed");
    roundtrip->add_option("--trials", o.trials, "trials per error rank");
    roundtrip->add_option("--t", o.t, "error ranks")->delimiter(',');

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo decoding of the direct-sum code");
    add_common(simulate);
    std::string format = "jsonl";
    simulate->add_option("--seed", o.seed, "rng seed (required here or in the config)");
    simulate->add_option("--trials", o.trials, "trials per error rank");
    simulate->add_option("--t", o.t, "error ranks")->delimiter(',');
    simulate->add_option("--workers", o.workers, "worker threads (does not change results)");
    simulate->add_flag("--decode", o.decode, "also decode every trial end to end");
    simulate->add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));

    auto* subfield = app.add_subcommand("subfield", "factor the subfield subcode parity check");
    add_common(subfield);
    bool verify = false;
    subfield->add_option("--s", o.s, "subfield degree");
    subfield->add_flag("--verify", verify, "enumerate the subcode and check uniqueness of S");

    auto* count = app.add_subcommand("count", "number of t x m q-ary matrices of rank c");
    std::uint32_t cq = 2;
    std::size_t cm = 0, ct = 0, cc = 0;
    count->add_option("--q", cq, "prime field order")->required();
    count->add_option("--m", cm, "columns")->required();
    count->add_option("--t", ct, "rows")->required();
    count->add_option("--c", cc, "rank")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (count->parsed()) {
            emit({rankcodes::experiment::run_count(cq, cm, ct, cc)}, "", false);
            return 0;
        }
        const auto config = rankcodes::experiment::parse_config(load_config(o));
        std::vector<Json> records;
        bool csv = false;
        if (info->parsed()) records = rankcodes::experiment::run_code_info(config);
        else if (roundtrip->parsed()) records = rankcodes::experiment::run_roundtrip(config);
        else if (simulate->parsed()) {
            records = rankcodes::experiment::run_simulate(config);
            csv = format == "csv";
        } else if (subfield->parsed()) records = rankcodes::experiment::run_subfield(config, verify);
        emit(records, config.output, csv);
        return 0;
    } catch (const rankcodes::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const Json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
}
