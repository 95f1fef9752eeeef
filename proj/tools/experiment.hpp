#pragma once

// Config parsing and the experiment runners behind the `rankcodes` command.
// Every runner returns JSON records; printing is left to the caller.

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <rankcodes/directsum.hpp>
#include <rankcodes/gabidulin.hpp>

namespace rankcodes::experiment {

using Json = nlohmann::json;

/// A config value is missing, malformed or inconsistent. `path` names the field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct ExperimentConfig {
    std::uint32_t q = 2;
    int n = 4;
    std::vector<Digit> modulus;  // empty: default modulus
    std::size_t k = 1;
    std::vector<std::uint64_t> g;  // at most one of g, h
    std::vector<std::uint64_t> h;
    std::vector<std::vector<std::uint64_t>> parts;
    std::optional<std::size_t> s;
    std::vector<std::size_t> t;
    Channel mode = Channel::UniformMatrix;
    std::uint64_t trials = 1000;
    std::optional<std::uint64_t> seed;
    bool decode = false;
    unsigned workers = 0;
    std::string output;
};

ExperimentConfig parse_config(const Json& doc);
/// The fully resolved config (defaults filled in, modulus explicit).
Json to_json(const ExperimentConfig& config);

TowerPtr make_tower(const ExperimentConfig& config);
GabidulinCode make_code(const ExperimentConfig& config, const TowerPtr& tower);
DirectSumCode make_direct_sum(const ExperimentConfig& config, const GabidulinCode& code);

std::vector<Json> run_code_info(const ExperimentConfig& config);
/// Encode/decode round trips of the base code with exact-rank errors, one record per t.
std::vector<Json> run_roundtrip(const ExperimentConfig& config);
/// Direct-sum success probabilities, one record per t. Requires parts and a seed.
std::vector<Json> run_simulate(const ExperimentConfig& config);
/// Parity-check factorization for the subfield subcode of order q^s.
std::vector<Json> run_subfield(const ExperimentConfig& config, bool verify);
Json run_count(std::uint32_t q, std::size_t m, std::size_t t, std::size_t c);

/// CSV projection of simulate records.
std::string simulate_csv(const std::vector<Json>& records);

}  // namespace rankcodes::experiment
