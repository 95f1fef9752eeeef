// Acceptance checks. Each criterion prints exactly one PASS/FAIL line.
//
//   rankcodes_acceptance               run all criteria
//   rankcodes_acceptance --criterion N run one

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <rankcodes/directsum.hpp>
#include <rankcodes/errors.hpp>
#include <rankcodes/subfield.hpp>

#include "support.hpp"

using namespace rankcodes;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;  // 0: no runtime bound
    std::function<Outcome()> run;
};

std::string fmt(double v, int digits = 6) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

ExtVector random_full_rank(const FieldTower& f, std::size_t len, Rng& rng) {
    while (true) {
        auto v = random_vector(f, len, rng);
        if (rank_of_vector(f, v) == len) return v;
    }
}

SubspaceBasis random_subspace(const TowerPtr& t, std::size_t m, Rng& rng) {
    return SubspaceBasis(t, random_full_rank(*t, m, rng));
}

SubspaceBasis power_span(const TowerPtr& t, std::size_t lo, std::size_t hi) {
    ExtVector b;
    for (std::size_t i = lo; i < hi; ++i) b.push_back(t->pow(t->generator(), i));
    return SubspaceBasis(t, b);
}

Outcome mrd_parameters() {
    auto t = testing::tower(2, 4);
    std::string detail;
    bool ok = true;
    for (std::size_t k = 1; k <= 3; ++k) {
        const auto d = min_rank_distance_exhaustive(GabidulinCode::canonical(t, k));
        ok = ok && d == 4 - k + 1;
        detail += "k=" + std::to_string(k) + ":d=" + std::to_string(d) + " ";
    }
    return {ok, detail + "(expected n-k+1)"};
}

Outcome duality() {
    Rng rng(20240601);
    std::size_t good = 0, total = 0;
    for (int n : {4, 6, 8}) {
        auto t = testing::tower(2, n);
        for (int trial = 0; trial < 100; ++trial, ++total) {
            const std::size_t k = 1 + rng() % static_cast<std::uint64_t>(n - 1);
            const auto g = random_full_rank(*t, static_cast<std::size_t>(n), rng);
            const auto code = GabidulinCode::from_generator(t, g, k);
            const ExtMatrix prod =
                multiply(*t, code.generator_matrix(), code.parity_check_matrix().transposed());
            bool zero = true;
            for (std::size_t r = 0; r < prod.rows(); ++r) zero = zero && is_zero(prod.row(r));
            const bool one_dim = nullspace_ext(*t, dual_system(*t, g, k)).size() == 1;
            good += zero && one_dim;
        }
    }
    return {good == total, std::to_string(good) + "/" + std::to_string(total) +
                               " random g with G H^T = 0 and a 1-dimensional dual space"};
}

Outcome bounded_distance_decoding() {
    auto t = testing::tower(2, 12);
    const auto code = GabidulinCode::canonical(t, 8);
    Rng rng(3);
    std::string detail;
    bool ok = code.min_distance() == 5 && code.capability() == 2;
    for (std::size_t r = 0; r <= 2; ++r) {
        int exact = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const auto c = code.encode(random_vector(*t, 8, rng));
            const auto e = random_error(*t, r, {}, 12, ErrorMode::ExactRank, rng);
            const auto got = code.decode(add(*t, c, e));
            exact += got && got->codeword == c && got->error == e;
        }
        ok = ok && exact == 1000;
        detail += "t=" + std::to_string(r) + ":" + std::to_string(exact) + "/1000 ";
    }
    int silent = 0, failures = 0, other = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto c = code.encode(random_vector(*t, 8, rng));
        const auto y = add(*t, c, random_error(*t, 3, {}, 12, ErrorMode::ExactRank, rng));
        const auto got = code.decode(y);
        if (!got) ++failures;
        else if (!code.is_codeword(got->codeword)) ++silent;
        else ++other;
    }
    ok = ok && silent == 0;
    detail += "t=3: " + std::to_string(failures) + " failures, " + std::to_string(other) +
              " other codewords, " + std::to_string(silent) + " non-codewords";
    return {ok, detail};
}

Outcome rank_preserving_map() {
    auto t = testing::tower(2, 12);
    const auto code = GabidulinCode::canonical(t, 8);
    Rng rng(4);
    const SubspaceSubcode sub(code, random_subspace(t, 8, rng));
    int linear = 0, forward = 0, backward = 0, rank = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto c = recompose(sub.basis(), random_qmatrix(2, 8, 12, rng));
        const auto c2 = recompose(sub.basis(), random_qmatrix(2, 8, 12, rng));
        const auto v = sub.f_b(c);
        linear += sub.f_b(add(*t, c, c2)) == add(*t, v, sub.f_b(c2));
        forward += sub.f_b_inv(v) == c;
        const auto w = random_vector(*t, 8, rng);
        backward += sub.f_b(sub.f_b_inv(w)) == w;
        rank += rank_of_vector(*t, v) == rank_of_vector(*t, c);
    }

    auto t4 = testing::tower(2, 4);
    const SubspaceSubcode tiny(GabidulinCode::canonical(t4, 2), power_span(t4, 0, 3));
    std::vector<ExtVector> image;
    for (const auto& w : enumerate_subcode(tiny)) image.push_back(tiny.f_b(w));
    auto parent = enumerate_code(tiny.parent());
    std::sort(image.begin(), image.end());
    std::sort(parent.begin(), parent.end());
    const bool images_equal = image == parent;

    const bool ok = linear == 1000 && forward == 1000 && backward == 1000 && rank == 1000 && images_equal;
    return {ok, "linearity " + std::to_string(linear) + ", inverse " + std::to_string(forward) + "/" +
                    std::to_string(backward) + ", rank " + std::to_string(rank) + " of 1000; tiny image " +
                    (images_equal ? "equals" : "differs from") + " parent code (" + std::to_string(parent.size()) +
                    " words)"};
}

Outcome subcode_cardinality() {
    auto t = testing::tower(2, 4);
    const auto code = GabidulinCode::canonical(t, 2);
    const SubspaceSubcode sub(code, power_span(t, 0, 3));
    const auto words = enumerate_subcode(sub);
    std::size_t best = 99;
    for (const auto& w : words)
        if (!is_zero(w)) best = std::min(best, rank_of_vector(*t, w));
    const auto zero = enumerate_subcode(SubspaceSubcode(code, power_span(t, 0, 2)));
    const bool zero_only = zero.size() == 1 && is_zero(zero[0]);
    const bool ok = words.size() == 16 && best == 3 && zero_only;
    return {ok, "|(G|V_3)| = " + std::to_string(words.size()) + ", min rank " + std::to_string(best) +
                    ", m=2 subcode " + (zero_only ? "{0}" : "not {0}")};
}

Outcome route_equivalence() {
    auto t = testing::tower(2, 12);
    const auto code = GabidulinCode::canonical(t, 8);
    Rng rng(6);
    const SubspaceSubcode sub(code, random_subspace(t, 8, rng));
    int agree = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto c = sub.encode(random_vector(*t, sub.message_length(), rng));
        const auto e = random_error(*t, static_cast<std::size_t>(trial % 3), sub.basis().elements(), 12,
                                    ErrorMode::ExactRank, rng);
        const auto y = add(*t, c, e);
        const auto a = sub.decode(y, DecodeRoute::Direct);
        const auto b = sub.decode(y, DecodeRoute::ViaParent);
        agree += a && b && a->codeword == b->codeword && a->error == b->error && a->codeword == c;
    }
    return {agree == 1000, std::to_string(agree) + "/1000 decodable instances agree (m=8)"};
}

Outcome beyond_capability() {
    auto t = testing::tower(2, 12);
    const auto code = GabidulinCode::canonical(t, 8);
    const DirectSumCode m(code, {power_span(t, 0, 6), power_span(t, 6, 12)});
    Rng rng(7);

    // a rank-4 error made of two rank-2 halves
    ExtVector e;
    while (true) {
        const auto e1 = random_error(*t, 2, m.part(0).basis().elements(), 12, ErrorMode::ExactRank, rng);
        const auto e2 = random_error(*t, 2, m.part(1).basis().elements(), 12, ErrorMode::ExactRank, rng);
        e = add(*t, e1, e2);
        if (rank_of_vector(*t, e) == 4) break;
    }
    const auto c = m.encode(random_vector(*t, m.message_length(), rng));
    const auto got = m.decode(add(*t, c, e));
    const bool crafted = got.result && got.result->codeword == c && got.result->error == e;

    const std::vector<std::size_t> dims{6, 6};
    const Rational exact = success_probability_exact(2, dims, 2, 3);
    BigInt favourable = 0;
    for (std::size_t r = 0; r <= 2; ++r) favourable += count_rank_matrices(2, 6, 3, r);
    const Rational factor(favourable, BigInt(1) << 18);
    const bool formula = exact == factor * factor && exact == Rational(12061729, 1073741824);

    MonteCarloOptions opts;
    opts.decode = true;
    const auto mc = monte_carlo_success(m, 3, 100000, 7, opts);
    const double p = static_cast<double>(exact);
    const bool within = std::abs(mc.frequency - p) <= mc.half_width;
    const bool ok = crafted && formula && within && mc.disagreements == 0;
    return {ok, std::string("rank-4 error ") + (crafted ? "decoded" : "NOT decoded") + "; exact " + fmt(p, 10) +
                    (formula ? " (matches count product)" : " (count product mismatch)") + "; MC " +
                    fmt(mc.frequency) + " +/- " + fmt(mc.half_width) + " over 1e5, decode/rank disagreements " +
                    std::to_string(mc.disagreements)};
}

Outcome probability_cross_check() {
    auto t = testing::tower(2, 4);
    const auto code = GabidulinCode::canonical(t, 2);
    const DirectSumCode m(code, {power_span(t, 0, 2), power_span(t, 2, 4)});
    const std::vector<std::size_t> dims{2, 2};
    const Rational exact = success_probability_exact(2, dims, code.capability(), 2);
    const Rational from_counts(count_rank_matrices(2, 2, 2, 0) + count_rank_matrices(2, 2, 2, 1), 16);
    const bool formula = code.capability() == 1 && exact == from_counts * from_counts &&
                         static_cast<double>(exact) == 0.390625;
    const auto mc = monte_carlo_success(m, 2, 100000, 8);
    const bool within = std::abs(mc.frequency - 0.390625) <= 0.005;
    return {formula && within, "exact " + fmt(static_cast<double>(exact)) + ", MC " + fmt(mc.frequency) +
                                   " (tolerance 0.005)"};
}

Outcome leading_order() {
    auto t = testing::tower(31, 6);
    const auto code = GabidulinCode::canonical(t, 4);  // d = 3, C = 1
    Rng rng(9);
    const auto basis = random_full_rank(*t, 6, rng);
    const DirectSumCode m(code, {SubspaceBasis(t, {basis[0], basis[1], basis[2]}),
                                 SubspaceBasis(t, {basis[3], basis[4], basis[5]})});
    const auto dims = m.part_dimensions();
    const std::size_t c = code.capability(), tt = 2, n = m.total_dimension(), u = dims.size();
    const double q = 31.0;
    const double log_exact = std::log(static_cast<double>(success_probability_exact(31, dims, c, tt))) / std::log(q);
    const double gap = std::abs(log_exact + static_cast<double>((n - c) * (tt - c)));
    const double bound = 2.0 * static_cast<double>(u) / q;
    double per_part_exponent = 0.0;
    for (auto mi : dims) per_part_exponent += static_cast<double>((mi - c) * (tt - c));
    return {gap <= bound, "log_q(exact) = " + fmt(log_exact) + ", |log_q(exact) + (N-C)(t-C)| = " + fmt(gap) +
                              " vs bound 2u/q = " + fmt(bound) + "; per-part exponent gap " +
                              fmt(std::abs(log_exact + per_part_exponent))};
}

Outcome subfield_factorization() {
    auto t = testing::tower(2, 6);
    const auto code = GabidulinCode::canonical(t, 4);
    const auto fz = compute_factorization(code, 3);
    const bool invertible = rank_q(fz.S) == 6;
    const auto words = enumerate_subcode_span(subfield_subcode(code, fz));
    std::size_t annihilated = 0;
    for (const auto& w : words) annihilated += fz.annihilates(w);
    const bool kernel_equal = enumerate_subfield_kernel(fz) == words;
    const std::size_t rank_h = rank_ext(*t, fz.parity_check());
    const auto block = enumerate_block_code(fz);
    std::size_t best = 99;
    for (const auto& w : block)
        if (!is_zero(w)) best = std::min(best, rank_of_vector(*t, w));
    const auto report = verify_uniqueness(fz, words, 1000);
    const bool ok = invertible && words.size() == 64 && annihilated == 64 && kernel_equal && rank_h == 4 &&
                    block.size() == 8 && best == 3 && report.ok();
    return {ok, std::string("S ") + (invertible ? "invertible" : "singular") + "; " + std::to_string(annihilated) +
                    "/" + std::to_string(words.size()) + " words annihilated; kernel " +
                    (kernel_equal ? "equals" : "differs from") + " subcode; rank H = " + std::to_string(rank_h) +
                    "; block code " + std::to_string(block.size()) + " words, min rank " + std::to_string(best) +
                    "; perturbations detected " + std::to_string(report.detected) + "/" +
                    std::to_string(report.perturbations) + (report.unique ? "; S unique" : "; S not unique")};
}

Outcome cli_reproducibility() {
#ifndef RANKCODES_CLI_PATH
    return {false, "built without the command line tool"};
#else
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "rankcodes_acceptance";
    fs::create_directories(dir);
    const auto cfg = dir / "config.json";
    std::ofstream(cfg) << R"({"field": {"q": 2, "n": 12}, "code": {"k": 8},
        "parts": [[1, 2, 4, 8, 16, 32], [64, 128, 256, 512, 1024, 2048]],
        "channel": {"t": [1, 2, 3, 4], "trials": 20000, "seed": 11, "decode": true}})";
    auto run = [&](const fs::path& out, const std::string& extra) {
        const std::string cmd = std::string(RANKCODES_CLI_PATH) + " simulate --config " + cfg.string() +
                                " --output " + out.string() + " " + extra;
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) && WEXITSTATUS(status) == 0;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const bool ran = run(dir / "first.jsonl", "--workers 1") && run(dir / "second.jsonl", "--workers 4");
    const std::string a = slurp(dir / "first.jsonl"), b = slurp(dir / "second.jsonl");
    const bool same = ran && !a.empty() && a == b;
    return {same, std::string(ran ? "two runs completed" : "a run failed") + ", " + std::to_string(a.size()) +
                      " bytes, outputs " + (same ? "byte-identical" : "differ")};
#endif
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "MRD parameters", 10, mrd_parameters},
        {2, "duality", 30, duality},
        {3, "bounded-distance decoding", 120, bounded_distance_decoding},
        {4, "rank-preserving bijection", 60, rank_preserving_map},
        {5, "subcode cardinality", 10, subcode_cardinality},
        {6, "decoding route equivalence", 0, route_equivalence},
        {7, "beyond-capability decoding", 300, beyond_capability},
        {8, "probability cross-check", 0, probability_cross_check},
        {9, "leading-order sanity", 60, leading_order},
        {10, "subfield factorization", 60, subfield_factorization},
        {11, "CLI reproducibility", 0, cli_reproducibility},
    };

    int failures = 0, ran = 0;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && secs > c.limit_seconds) {
            out.pass = false;
            out.detail += "; exceeded " + fmt(c.limit_seconds) + " s";
        }
        failures += !out.pass;
        std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.id << "  " << c.title
                  << ": " << out.detail << " [" << std::fixed << std::setprecision(2) << secs << " s]"
                  << std::defaultfloat << std::endl;
    }
    if (!ran) {
        std::cerr << "no criterion " << only << "\n";
        return 2;
    }
    return failures ? 1 : 0;
}
