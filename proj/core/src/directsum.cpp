#include "rankcodes/directsum.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "rankcodes/errors.hpp"

namespace rankcodes {

namespace {

constexpr std::size_t kChunks = 64;

ExtVector concatenate(std::span<const SubspaceBasis> parts) {
    ExtVector all;
    for (const auto& p : parts) all.insert(all.end(), p.elements().begin(), p.elements().end());
    return all;
}

std::size_t sum_of(std::span<const std::size_t> dims) {
    std::size_t n = 0;
    for (auto m : dims) n += m;
    return n;
}

BigInt power(std::uint32_t q, std::size_t e) {
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= q;
    return r;
}

struct ChunkTally {
    std::uint64_t rank_ok = 0;
    std::uint64_t decode_ok = 0;
    std::uint64_t disagree = 0;
    std::uint64_t muls = 0;
};

}  // namespace

std::optional<DirectSumViolation> validate_direct_sum(std::span<const SubspaceBasis> parts) {
    if (parts.empty()) throw std::invalid_argument("at least one subspace is required");
    const FieldTower& f = parts.front().field();
    const ExtVector all = concatenate(parts);
    const std::size_t r = all.empty() ? 0 : rank_of_vector(f, all);
    if (r == all.size()) return std::nullopt;
    return DirectSumViolation{all.size(), r};
}

std::vector<std::size_t> DirectSumDecoding::failed_parts() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < part_decoded.size(); ++i)
        if (!part_decoded[i]) out.push_back(i);
    return out;
}

DirectSumCode::DirectSumCode(GabidulinCode code, std::vector<SubspaceBasis> parts) : code_(std::move(code)) {
    if (auto bad = validate_direct_sum(parts))
        throw std::invalid_argument("subspaces do not form a direct sum: total dimension " +
                                    std::to_string(bad->total_dimension) + ", rank " + std::to_string(bad->rank));
    concatenated_ = concatenate(parts);
    sum_coords_ = SpanCoordinates(expand_vector(field(), concatenated_));
    for (auto& p : parts) {
        offsets_.push_back(total_dim_);
        total_dim_ += p.dimension();
        subcodes_.emplace_back(code_, std::move(p));
    }
}

std::vector<std::size_t> DirectSumCode::part_dimensions() const {
    std::vector<std::size_t> dims;
    for (const auto& s : subcodes_) dims.push_back(s.basis().dimension());
    return dims;
}

std::size_t DirectSumCode::message_length() const {
    std::size_t k = 0;
    for (const auto& s : subcodes_) k += s.message_length();
    return k;
}

std::vector<ExtVector> DirectSumCode::project(std::span<const Fqn> y) const {
    const FieldTower& f = field();
    if (y.size() != code_.length()) throw std::invalid_argument("received word length must equal n");
    std::vector<ExtVector> out(subcodes_.size(), ExtVector(y.size(), f.zero()));
    for (std::size_t j = 0; j < y.size(); ++j) {
        const auto coords = sum_coords_.coordinates(f.digits(y[j]));
        if (!coords)
            throw OutsideSubspace(j, "component " + std::to_string(j) + " is outside V_1 + ... + V_u");
        for (std::size_t i = 0; i < subcodes_.size(); ++i) {
            const auto& elems = subcodes_[i].basis().elements();
            for (std::size_t k = 0; k < elems.size(); ++k)
                if (auto d = (*coords)[offsets_[i] + k]) out[i][j] = f.add(out[i][j], f.scale(elems[k], d));
        }
    }
    return out;
}

std::vector<ExtVector> DirectSumCode::f_multi(std::span<const Fqn> c) const {
    auto parts = project(c);
    std::vector<ExtVector> out;
    for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(subcodes_[i].f_b(parts[i]));
    return out;
}

bool DirectSumCode::contains(std::span<const Fqn> c) const {
    if (c.size() != code_.length()) return false;
    for (auto x : c)
        if (!sum_coords_.contains(field().digits(x))) return false;
    return code_.is_codeword(c);
}

ExtVector DirectSumCode::encode(std::span<const Fqn> message) const {
    if (message.size() != message_length())
        throw std::invalid_argument("message length must equal " + std::to_string(message_length()));
    ExtVector c(code_.length(), field().zero());
    std::size_t pos = 0;
    for (const auto& s : subcodes_) {
        const std::size_t k = s.message_length();
        if (k == 0) continue;
        c = add(field(), c, s.encode(message.subspan(pos, k)));
        pos += k;
    }
    return c;
}

DirectSumDecoding DirectSumCode::decode(std::span<const Fqn> y) const {
    const FieldTower& f = field();
    DirectSumDecoding out;
    const auto parts = project(y);
    ExtVector codeword(y.size(), f.zero());
    bool all_ok = true;
    for (std::size_t i = 0; i < subcodes_.size(); ++i) {
        const auto& s = subcodes_[i];
        std::optional<Decoded> r;
        if (s.is_trivial()) {
            // (G|V_i) = {0}: the only candidate is the zero word.
            r = s.decode(parts[i], DecodeRoute::Direct);
            if (r && !is_zero(r->codeword)) r.reset();
        } else {
            r = s.decode(parts[i], DecodeRoute::ViaParent);
        }
        out.part_decoded.push_back(r.has_value());
        if (!r) {
            all_ok = false;
            continue;
        }
        codeword = add(f, codeword, r->codeword);
    }
    if (!all_ok) return out;
    if (!code_.is_codeword(codeword)) throw InvariantViolation("direct-sum decoder produced a non-codeword");
    ExtVector error = sub(f, y, codeword);
    const std::size_t r = rank_of_vector(f, error);
    out.result = Decoded{std::move(codeword), std::move(error), r};
    return out;
}

ExtVector DirectSumCode::from_concatenated_coefficients(std::span<const Fqn> coefficients) const {
    const FieldTower& f = field();
    if (coefficients.size() != total_dim_) throw std::invalid_argument("expected N coefficients");
    ExtVector e(code_.length(), f.zero());
    for (std::size_t k = 0; k < total_dim_; ++k) {
        const auto d = f.digits(coefficients[k]);
        for (std::size_t j = 0; j < e.size(); ++j)
            if (d[j]) e[j] = f.add(e[j], f.scale(concatenated_[k], d[j]));
    }
    return e;
}

Rational rank_at_most_probability(std::uint32_t q, std::size_t m, std::size_t t, std::size_t c) {
    BigInt favourable = 0;
    for (std::size_t r = 0; r <= std::min({c, m, t}); ++r) favourable += count_rank_matrices(q, m, t, r);
    return Rational(favourable, power(q, t * m));
}

Rational success_probability_exact(std::uint32_t q, std::span<const std::size_t> dims, std::size_t c,
                                   std::size_t t) {
    Rational p = 1;
    for (auto m : dims) p *= rank_at_most_probability(q, m, t, c);
    return p;
}

double success_probability_leading_order(std::uint32_t q, std::span<const std::size_t> dims, std::size_t c,
                                         std::size_t t) {
    const std::size_t n = sum_of(dims);
    if (t <= c || n <= c) return 1.0;
    return std::pow(static_cast<double>(q), -static_cast<double>((n - c) * (t - c)));
}

double success_probability_per_part_leading_order(std::uint32_t q, std::span<const std::size_t> dims,
                                                  std::size_t c, std::size_t t) {
    if (t <= c) return 1.0;
    double exponent = 0.0;
    for (auto m : dims)
        if (m > c) exponent += static_cast<double>((m - c) * (t - c));
    return std::pow(static_cast<double>(q), -exponent);
}

MonteCarloResult monte_carlo_success(const DirectSumCode& code, std::size_t t, std::uint64_t trials,
                                     std::uint64_t seed, const MonteCarloOptions& options) {
    const FieldTower& f = code.field();
    const auto n = static_cast<std::size_t>(f.degree());
    const std::size_t big_n = code.total_dimension();
    const std::size_t cap = code.code().capability();
    if (t == 0) throw std::invalid_argument("error rank t must be positive");
    if (t > n) throw std::invalid_argument("error rank t cannot exceed n");
    if (options.channel == Channel::ExactRank && t > big_n)
        throw std::invalid_argument("exact-rank channel needs t <= N");
    if (trials == 0) throw std::invalid_argument("trials must be positive");

    std::vector<std::pair<std::size_t, std::size_t>> ranges;  // columns of each part
    for (std::size_t i = 0, off = 0; i < code.part_count(); ++i) {
        const std::size_t m = code.part(i).basis().dimension();
        ranges.emplace_back(off, m);
        off += m;
    }

    auto run_chunk = [&](std::size_t chunk) {
        ChunkTally tally;
        const std::uint64_t begin = trials * chunk / kChunks;
        const std::uint64_t end = trials * (chunk + 1) / kChunks;
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(chunk)};
        Rng rng(seq);
        const std::uint64_t muls_before = field_mul_count();
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            // Columns of alpha are the digits of t independent elements of GF(q^n).
            const QMatrix alpha = random_qmatrix_of_rank(f.q(), n, t, t, rng);
            const QMatrix s = options.channel == Channel::ExactRank ? random_qmatrix_of_rank(f.q(), t, big_n, t, rng)
                                                                    : random_qmatrix(f.q(), t, big_n, rng);
            const QMatrix coeff = alpha * s;  // column k: digits of E_k

            bool rank_ok = true;
            for (const auto& [off, m] : ranges) {
                QMatrix part(f.q(), n, m);
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < m; ++c) part(r, c) = coeff(r, off + c);
                if (rank_q(part) > cap) {
                    rank_ok = false;
                    break;
                }
            }
            tally.rank_ok += rank_ok;

            if (options.decode) {
                ExtVector coefficients(big_n);
                for (std::size_t k = 0; k < big_n; ++k) coefficients[k] = f.from_digits(coeff.column(k));
                const ExtVector e = code.from_concatenated_coefficients(coefficients);
                const ExtVector c = code.encode(random_vector(f, code.message_length(), rng));
                const auto decoded = code.decode(add(f, c, e));
                const bool ok = decoded.result && decoded.result->codeword == c;
                tally.decode_ok += ok;
                tally.disagree += ok != rank_ok;
            }
        }
        tally.muls = field_mul_count() - muls_before;
        return tally;
    };

    std::vector<ChunkTally> tallies(kChunks);
    unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, kChunks);
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t chunk = w; chunk < kChunks; chunk += workers) tallies[chunk] = run_chunk(chunk);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    MonteCarloResult out;
    out.trials = trials;
    for (const auto& t : tallies) {
        out.rank_successes += t.rank_ok;
        out.decode_successes += t.decode_ok;
        out.disagreements += t.disagree;
        out.field_mul_count += t.muls;
    }
    const double p = static_cast<double>(out.rank_successes) / static_cast<double>(trials);
    out.frequency = p;
    out.half_width = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return out;
}

}  // namespace rankcodes
