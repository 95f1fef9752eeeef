#pragma once

// Direct sums M = (G|V_1) + ... + (G|V_u) of subspace subcodes over
// subspaces that pairwise meet only in zero. A received word is projected
// onto each V_i and every projection is decoded in its own parent code, so
// errors of total rank above floor((d-1)/2) are corrected whenever each
// projected error stays within it.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rankcodes/subspace.hpp"

namespace rankcodes {

using Rational = boost::multiprecision::cpp_rational;

struct DirectSumViolation {
    std::size_t total_dimension;  // sum of m_i
    std::size_t rank;             // rank of the concatenated bases
    std::size_t overlap() const noexcept { return total_dimension - rank; }
};

/// nullopt when the concatenated bases are independent (the sum is direct).
std::optional<DirectSumViolation> validate_direct_sum(std::span<const SubspaceBasis> parts);

struct DirectSumDecoding {
    std::optional<Decoded> result;
    std::vector<bool> part_decoded;

    std::vector<std::size_t> failed_parts() const;
};

class DirectSumCode {
public:
    /// Throws std::invalid_argument if the subspaces do not form a direct sum.
    DirectSumCode(GabidulinCode code, std::vector<SubspaceBasis> parts);

    const GabidulinCode& code() const noexcept { return code_; }
    const FieldTower& field() const noexcept { return code_.field(); }
    std::size_t part_count() const noexcept { return subcodes_.size(); }
    const SubspaceSubcode& part(std::size_t i) const { return subcodes_.at(i); }
    std::vector<std::size_t> part_dimensions() const;
    /// N = sum m_i
    std::size_t total_dimension() const noexcept { return total_dim_; }
    /// sum (m_i - d + 1); requires every part to be nontrivial.
    std::size_t message_length() const;
    /// The concatenated basis (b_1, ..., b_u).
    const ExtVector& concatenated_basis() const noexcept { return concatenated_; }

    /// y = y_1 + ... + y_u with y_i in V_i^n. Throws OutsideSubspace.
    std::vector<ExtVector> project(std::span<const Fqn> y) const;
    /// (f_{b_1}(y_1), ..., f_{b_u}(y_u))
    std::vector<ExtVector> f_multi(std::span<const Fqn> c) const;
    bool contains(std::span<const Fqn> c) const;

    ExtVector encode(std::span<const Fqn> message) const;
    DirectSumDecoding decode(std::span<const Fqn> y) const;

    /// Word with components sum_k U_{k,j} B_k where B is the concatenated basis
    /// and row k of U holds the digits of coefficients[k] (length N).
    ExtVector from_concatenated_coefficients(std::span<const Fqn> coefficients) const;

private:
    GabidulinCode code_;
    std::vector<SubspaceSubcode> subcodes_;
    std::vector<std::size_t> offsets_;
    std::size_t total_dim_ = 0;
    ExtVector concatenated_;
    SpanCoordinates sum_coords_;
};

/// Pr(rank of a uniform t x m q-ary matrix <= c).
Rational rank_at_most_probability(std::uint32_t q, std::size_t m, std::size_t t, std::size_t c);

/// prod_i Pr(rank(S_i) <= c) for S = (S_1 ... S_u) uniform t x N.
Rational success_probability_exact(std::uint32_t q, std::span<const std::size_t> dims, std::size_t c,
                                   std::size_t t);

/// q^{-(N-c)(t-c)} for t > c, and 1 for t <= c.
double success_probability_leading_order(std::uint32_t q, std::span<const std::size_t> dims, std::size_t c,
                                         std::size_t t);

/// q^{-sum_i (m_i-c)(t-c)} for t > c, and 1 for t <= c: the product of the
/// per-part leading terms.
double success_probability_per_part_leading_order(std::uint32_t q, std::span<const std::size_t> dims,
                                                  std::size_t c, std::size_t t);

enum class Channel {
    UniformMatrix,  ///< S uniform over all t x N matrices
    ExactRank,      ///< S uniform over t x N matrices of rank exactly t
};

struct MonteCarloOptions {
    Channel channel = Channel::UniformMatrix;
    /// Also decode c + e end to end through DirectSumCode::decode.
    bool decode = false;
    /// 0 picks the hardware concurrency. Results do not depend on this.
    unsigned workers = 0;
};

struct MonteCarloResult {
    std::uint64_t trials = 0;
    std::uint64_t rank_successes = 0;    // every projected error has rank <= C
    std::uint64_t decode_successes = 0;  // decoder returned the transmitted codeword
    std::uint64_t disagreements = 0;     // trials where the two events differ
    double frequency = 0.0;
    double half_width = 0.0;  // 3 sqrt(p(1-p)/trials)
    std::uint64_t field_mul_count = 0;
};

/// Samples e = (alpha_1, ..., alpha_t) S over the concatenated basis of the
/// parts and counts how often every projected error has rank <= C.
///
/// Trials are split into fixed chunks, each with its own generator seeded
/// from (seed, chunk index), so the outcome is identical for any worker count.
MonteCarloResult monte_carlo_success(const DirectSumCode& code, std::size_t t, std::uint64_t trials,
                                     std::uint64_t seed, const MonteCarloOptions& options = {});

}  // namespace rankcodes
