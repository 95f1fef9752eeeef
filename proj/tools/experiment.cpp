#include "experiment.hpp"

#include <limits>
#include <memory>
#include <sstream>

#include <rankcodes/errors.hpp>
#include <rankcodes/subfield.hpp>

namespace rankcodes::experiment {

namespace {

const Json* find(const Json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::uint64_t unsigned_value(const Json& v, const std::string& path) {
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0))
        throw ConfigError(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> unsigned_list(const Json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path, "expected a list of integers");
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(unsigned_value(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

ExtVector to_elements(const FieldTower& f, const std::vector<std::uint64_t>& values, const std::string& path) {
    ExtVector out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= f.order())
            throw ConfigError(path + "[" + std::to_string(i) + "]",
                              "element " + std::to_string(values[i]) + " is outside GF(q^n)");
        out.push_back(Fqn{values[i]});
    }
    return out;
}

Json values_of(std::span<const Fqn> v) {
    Json out = Json::array();
    for (auto x : v) out.push_back(x.value);
    return out;
}

Json matrix_json(const ExtMatrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(values_of(m.row(r)));
    return out;
}

Json matrix_json(const QMatrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(Json(std::vector<Digit>(m.row(r).begin(), m.row(r).end())));
    return out;
}

std::string channel_name(Channel c) { return c == Channel::ExactRank ? "exact-rank" : "uniform-matrix"; }

Json code_params(const GabidulinCode& code) {
    return Json{{"n", code.length()}, {"k", code.dimension()}, {"d", code.min_distance()}, {"C", code.capability()}};
}

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << "/" << denominator(r);
    return os.str();
}

}  // namespace

ExperimentConfig parse_config(const Json& doc) {
    if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
    ExperimentConfig c;

    const Json* field = find(doc, "field");
    if (!field || !field->is_object()) throw ConfigError("field", "required object {q, n, modulus?}");
    const Json* q = find(*field, "q");
    const Json* n = find(*field, "n");
    if (!q) throw ConfigError("field.q", "required");
    if (!n) throw ConfigError("field.n", "required");
    const auto qv = unsigned_value(*q, "field.q");
    if (qv > std::numeric_limits<std::uint32_t>::max() || !is_prime(qv))
        throw ConfigError("field.q", "must be a prime");
    c.q = static_cast<std::uint32_t>(qv);
    const auto nv = unsigned_value(*n, "field.n");
    if (nv < 1 || nv > 64) throw ConfigError("field.n", "must lie in 1..64");
    c.n = static_cast<int>(nv);
    if (const Json* m = find(*field, "modulus")) {
        for (auto d : unsigned_list(*m, "field.modulus")) {
            if (d >= c.q) throw ConfigError("field.modulus", "coefficient out of range");
            c.modulus.push_back(static_cast<Digit>(d));
        }
        if (c.modulus.size() != static_cast<std::size_t>(c.n) + 1)
            throw ConfigError("field.modulus", "must list n+1 coefficients, low to high");
        if (c.modulus.back() != 1) throw ConfigError("field.modulus", "must be monic");
        if (!is_irreducible(c.q, c.modulus)) throw ConfigError("field.modulus", "is not irreducible over GF(q)");
    }

    const Json* code = find(doc, "code");
    if (!code || !code->is_object()) throw ConfigError("code", "required object {k, g? | h?}");
    const Json* k = find(*code, "k");
    if (!k) throw ConfigError("code.k", "required");
    c.k = unsigned_value(*k, "code.k");
    if (const Json* g = find(*code, "g")) c.g = unsigned_list(*g, "code.g");
    if (const Json* h = find(*code, "h")) c.h = unsigned_list(*h, "code.h");
    if (!c.g.empty() && !c.h.empty()) throw ConfigError("code", "give either g or h, not both");
    const std::size_t len = !c.g.empty() ? c.g.size() : !c.h.empty() ? c.h.size() : static_cast<std::size_t>(c.n);
    if (len > static_cast<std::size_t>(c.n)) throw ConfigError(c.g.empty() ? "code.h" : "code.g", "longer than n");
    if (c.k < 1 || c.k + 1 > len) throw ConfigError("code.k", "must satisfy 1 <= k <= length-1");

    if (const Json* parts = find(doc, "parts")) {
        if (!parts->is_array()) throw ConfigError("parts", "expected a list of basis lists");
        for (std::size_t i = 0; i < parts->size(); ++i) {
            const std::string path = "parts[" + std::to_string(i) + "]";
            auto basis = unsigned_list((*parts)[i], path);
            if (basis.empty()) throw ConfigError(path, "a subspace needs at least one basis element");
            c.parts.push_back(std::move(basis));
        }
    }

    if (const Json* sub = find(doc, "subfield")) {
        if (!sub->is_object()) throw ConfigError("subfield", "expected an object {s}");
        const Json* s = find(*sub, "s");
        if (!s) throw ConfigError("subfield.s", "required");
        c.s = unsigned_value(*s, "subfield.s");
        if (*c.s == 0 || c.n % static_cast<int>(*c.s) != 0) throw ConfigError("subfield.s", "must divide n");
    }

    if (const Json* ch = find(doc, "channel")) {
        if (!ch->is_object()) throw ConfigError("channel", "expected an object");
        if (const Json* t = find(*ch, "t")) {
            for (auto v : unsigned_list(*t, "channel.t")) {
                if (v > static_cast<std::uint64_t>(c.n)) throw ConfigError("channel.t", "error rank exceeds n");
                c.t.push_back(v);
            }
        }
        if (const Json* mode = find(*ch, "mode")) {
            if (!mode->is_string()) throw ConfigError("channel.mode", "expected a string");
            const auto m = mode->get<std::string>();
            if (m == "uniform-matrix") c.mode = Channel::UniformMatrix;
            else if (m == "exact-rank") c.mode = Channel::ExactRank;
            else throw ConfigError("channel.mode", "expected \"uniform-matrix\" or \"exact-rank\"");
        }
        if (const Json* tr = find(*ch, "trials")) {
            c.trials = unsigned_value(*tr, "channel.trials");
            if (c.trials == 0) throw ConfigError("channel.trials", "must be positive");
        }
        if (const Json* seed = find(*ch, "seed")) c.seed = unsigned_value(*seed, "channel.seed");
        if (const Json* dec = find(*ch, "decode")) {
            if (!dec->is_boolean()) throw ConfigError("channel.decode", "expected true or false");
            c.decode = dec->get<bool>();
        }
        if (const Json* w = find(*ch, "workers")) {
            const auto wv = unsigned_value(*w, "channel.workers");
            if (wv > 1024) throw ConfigError("channel.workers", "at most 1024");
            c.workers = static_cast<unsigned>(wv);
        }
    }

    if (const Json* out = find(doc, "output")) {
        if (!out->is_string()) throw ConfigError("output", "expected a path string");
        c.output = out->get<std::string>();
    }
    if (c.modulus.empty()) c.modulus = default_modulus(c.q, c.n);
    return c;
}

Json to_json(const ExperimentConfig& c) {
    Json code{{"k", c.k}};
    if (!c.g.empty()) code["g"] = c.g;
    if (!c.h.empty()) code["h"] = c.h;
    Json out{{"field", {{"q", c.q}, {"n", c.n}, {"modulus", c.modulus}}},
             {"code", code},
             {"channel",
              {{"t", c.t},
               {"mode", channel_name(c.mode)},
               {"trials", c.trials},
               {"decode", c.decode}}}};
    // workers is left out on purpose: results do not depend on it
    out["channel"]["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
    if (!c.parts.empty()) out["parts"] = c.parts;
    if (c.s) out["subfield"] = {{"s", *c.s}};
    return out;
}

TowerPtr make_tower(const ExperimentConfig& c) {
    return std::make_shared<const FieldTower>(c.q, c.n, c.modulus);
}

GabidulinCode make_code(const ExperimentConfig& c, const TowerPtr& tower) {
    try {
        if (!c.g.empty()) return GabidulinCode::from_generator(tower, to_elements(*tower, c.g, "code.g"), c.k);
        if (!c.h.empty()) return GabidulinCode::from_parity(tower, to_elements(*tower, c.h, "code.h"), c.k);
        return GabidulinCode::canonical(tower, c.k);
    } catch (const InvariantViolation&) {
        throw;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(c.g.empty() && !c.h.empty() ? "code.h" : "code.g", e.what());
    }
}

DirectSumCode make_direct_sum(const ExperimentConfig& c, const GabidulinCode& code) {
    if (c.parts.empty()) throw ConfigError("parts", "required for this command");
    if (code.length() != static_cast<std::size_t>(c.n)) throw ConfigError("code", "subspace subcodes need length n");
    std::vector<SubspaceBasis> parts;
    for (std::size_t i = 0; i < c.parts.size(); ++i) {
        const std::string path = "parts[" + std::to_string(i) + "]";
        try {
            parts.emplace_back(code.tower(), to_elements(code.field(), c.parts[i], path));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(path, e.what());
        }
    }
    if (auto bad = validate_direct_sum(parts))
        throw ConfigError("parts", "subspaces overlap in dimension " + std::to_string(bad->overlap()));
    return DirectSumCode(code, std::move(parts));
}

std::vector<Json> run_code_info(const ExperimentConfig& c) {
    const auto tower = make_tower(c);
    const auto code = make_code(c, tower);
    Json rec{{"command", "code-info"},
             {"config", to_json(c)},
             {"params", code_params(code)},
             {"g", values_of(code.g())},
             {"h", values_of(code.h())},
             {"arithmetic", tower->uses_tables() ? "tables" : "polynomial"}};
    if (!c.parts.empty()) {
        const auto sum = make_direct_sum(c, code);
        Json parts = Json::array();
        for (std::size_t i = 0; i < sum.part_count(); ++i) {
            const auto& p = sum.part(i);
            parts.push_back({{"dimension", p.basis().dimension()},
                             {"trivial", p.is_trivial()},
                             {"message_length", p.message_length()},
                             {"log_q_cardinality", p.log_cardinality()}});
        }
        rec["parts"] = parts;
        rec["direct_sum"] = {{"N", sum.total_dimension()}, {"message_length", sum.message_length()}};
    }
    return {rec};
}

std::vector<Json> run_roundtrip(const ExperimentConfig& c) {
    const auto tower = make_tower(c);
    const auto code = make_code(c, tower);
    const FieldTower& f = *tower;
    std::vector<Json> out;
    for (auto t : c.t) {
        if (t > code.length()) throw ConfigError("channel.t", "error rank exceeds the code length");
        Rng rng(c.seed.value_or(0) + 0x9e3779b97f4a7c15ULL * (t + 1));
        std::uint64_t recovered = 0, failures = 0, miscorrected = 0, non_codewords = 0;
        reset_field_mul_count();
        for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
            const auto word = code.encode(random_vector(f, code.dimension(), rng));
            const auto e = random_error(f, t, {}, code.length(), ErrorMode::ExactRank, rng);
            const auto got = code.decode(add(f, word, e));
            if (!got) {
                ++failures;
            } else if (!code.is_codeword(got->codeword)) {
                ++non_codewords;
            } else if (got->codeword == word && got->error == e) {
                ++recovered;
            } else {
                ++miscorrected;
            }
        }
        if (non_codewords) throw InvariantViolation("decoder returned a non-codeword");
        out.push_back({{"command", "roundtrip"},
                       {"config", to_json(c)},
                       {"params", code_params(code)},
                       {"t", t},
                       {"trials", c.trials},
                       {"recovered", recovered},
                       {"decoding_failures", failures},
                       {"miscorrections", miscorrected},
                       {"non_codewords", non_codewords},
                       {"field_mul_count", field_mul_count()}});
    }
    return out;
}

std::vector<Json> run_simulate(const ExperimentConfig& c) {
    if (!c.seed) throw ConfigError("channel.seed", "required for simulate");
    const auto tower = make_tower(c);
    const auto code = make_code(c, tower);
    const auto sum = make_direct_sum(c, code);
    const auto dims = sum.part_dimensions();
    const std::size_t cap = code.capability();
    std::vector<Json> out;
    for (auto t : c.t) {
        if (t == 0) throw ConfigError("channel.t", "error ranks must be positive");
        if (c.mode == Channel::ExactRank && t > sum.total_dimension())
            throw ConfigError("channel.t", "exact-rank channel needs t <= N");
        MonteCarloOptions opts;
        opts.channel = c.mode;
        opts.decode = c.decode;
        opts.workers = c.workers;
        const auto mc = monte_carlo_success(sum, t, c.trials, *c.seed + t, opts);
        if (mc.disagreements) throw InvariantViolation("decoder outcome disagrees with the rank event");
        const Rational exact = success_probability_exact(c.q, dims, cap, t);
        Json params = code_params(code);
        params["dims"] = dims;
        params["N"] = sum.total_dimension();
        params["u"] = dims.size();
        params["t"] = t;
        params["trials"] = c.trials;
        params["seed"] = *c.seed;
        params["channel"] = channel_name(c.mode);
        out.push_back({{"command", "simulate"},
                       {"config", to_json(c)},
                       {"params", params},
                       {"exact_probability", static_cast<double>(exact)},
                       {"exact_probability_rational", rational_string(exact)},
                       {"leading_order", success_probability_leading_order(c.q, dims, cap, t)},
                       {"per_part_leading_order", success_probability_per_part_leading_order(c.q, dims, cap, t)},
                       {"empirical", mc.frequency},
                       {"half_width", mc.half_width},
                       {"successes", mc.rank_successes},
                       {"decode_successes", c.decode ? Json(mc.decode_successes) : Json(nullptr)},
                       {"field_mul_count", mc.field_mul_count}});
    }
    return out;
}

std::vector<Json> run_subfield(const ExperimentConfig& c, bool verify) {
    if (!c.s) throw ConfigError("subfield.s", "required for this command");
    const auto tower = make_tower(c);
    const auto code = make_code(c, tower);
    SubfieldFactorization fz;
    try {
        fz = compute_factorization(code, *c.s);
    } catch (const InvariantViolation&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError("subfield.s", e.what());
    } catch (const TrivialSubcode& e) {
        throw ConfigError("subfield.s", e.what());
    }
    const ExtMatrix h = fz.parity_check();
    Json rec{{"command", "subfield"},
             {"config", to_json(c)},
             {"params", code_params(code)},
             {"s", fz.s},
             {"blocks", fz.blocks()},
             {"a", values_of(fz.a)},
             {"basis_ext", values_of(fz.basis_ext)},
             {"A", matrix_json(fz.A)},
             {"S", matrix_json(fz.S)},
             {"H", matrix_json(h)},
             {"rank_H", rank_ext(*tower, h)}};
    if (verify) {
        const auto words = enumerate_subcode_span(subfield_subcode(code, fz));
        bool all_annihilated = true;
        for (const auto& w : words) all_annihilated = all_annihilated && fz.annihilates(w);
        const auto report = verify_uniqueness(fz, words, std::numeric_limits<std::size_t>::max());
        if (!all_annihilated || !report.unique || !report.matches)
            throw InvariantViolation("subfield factorization failed verification");
        rec["verification"] = {{"subcode_size", words.size()},
                               {"all_annihilated", all_annihilated},
                               {"unique", report.unique},
                               {"matches", report.matches},
                               {"perturbations", report.perturbations},
                               {"perturbations_detected", report.detected}};
    }
    return {rec};
}

Json run_count(std::uint32_t q, std::size_t m, std::size_t t, std::size_t c) {
    if (!is_prime(q)) throw ConfigError("q", "must be a prime");
    const auto count = count_rank_matrices(q, m, t, c);
    BigInt total = 1;
    for (std::size_t i = 0; i < m * t; ++i) total *= q;
    return {{"command", "count"},
            {"q", q},
            {"m", m},
            {"t", t},
            {"c", c},
            {"count", count.str()},
            {"total", total.str()}};
}

std::string simulate_csv(const std::vector<Json>& records) {
    std::ostringstream os;
    os << "t,trials,exact_probability,leading_order,empirical,half_width,decode_successes,field_mul_count\n";
    for (const auto& r : records) {
        os << r["params"]["t"].get<std::size_t>() << ',' << r["params"]["trials"].get<std::uint64_t>() << ','
           << r["exact_probability"].dump() << ',' << r["leading_order"].dump() << ',' << r["empirical"].dump()
           << ',' << r["half_width"].dump() << ','
           << (r["decode_successes"].is_null() ? std::string() : r["decode_successes"].dump()) << ','
           << r["field_mul_count"].dump() << '\n';
    }
    return os.str();
}

}  // namespace rankcodes::experiment
