#pragma once

// Gabidulin (maximum rank distance) codes: Moore-matrix generator and
// parity-check matrices, encoding, and syndrome decoding up to
// floor((d-1)/2) rank errors.

#include <cstddef>
#include <optional>
#include <span>

#include "rankcodes/field.hpp"
#include "rankcodes/qlinalg.hpp"

namespace rankcodes {

/// Rows v^{[0]}, v^{[1]}, ..., v^{[rows-1]}.
ExtMatrix moore_matrix(const FieldTower& f, std::span<const Fqn> v, std::size_t rows);

/// The (len-1) x len system sum_i g_i^{[j]} h_i = 0, j = -(len-k-1), ..., k-1,
/// whose one-dimensional kernel is the parity vector h.
ExtMatrix dual_system(const FieldTower& f, std::span<const Fqn> g, std::size_t k);

/// Parity vector h for the generator vector g, scaled so its first nonzero
/// component is 1. Throws std::invalid_argument if g is rank deficient.
ExtVector compute_dual_vector(const FieldTower& f, std::span<const Fqn> g, std::size_t k);

/// theta^{[0]}, ..., theta^{[length-1]} for the smallest theta generating a
/// normal basis of GF(q^n) over GF(q).
ExtVector canonical_generator_vector(const FieldTower& f, std::size_t length);

struct Decoded {
    ExtVector codeword;
    ExtVector error;
    std::size_t error_rank = 0;
};

class GabidulinCode {
public:
    static GabidulinCode from_generator(TowerPtr tower, ExtVector g, std::size_t k);
    static GabidulinCode from_parity(TowerPtr tower, ExtVector h, std::size_t k);
    /// Length-n code on the canonical normal-basis generator vector.
    static GabidulinCode canonical(TowerPtr tower, std::size_t k);

    const FieldTower& field() const noexcept { return *tower_; }
    const TowerPtr& tower() const noexcept { return tower_; }
    std::size_t length() const noexcept { return g_.size(); }
    std::size_t dimension() const noexcept { return k_; }
    std::size_t min_distance() const noexcept { return length() - k_ + 1; }
    /// floor((d-1)/2)
    std::size_t capability() const noexcept { return (min_distance() - 1) / 2; }

    const ExtVector& g() const noexcept { return g_; }
    const ExtVector& h() const noexcept { return h_; }

    ExtMatrix generator_matrix() const;
    ExtMatrix parity_check_matrix() const;

    ExtVector encode(std::span<const Fqn> message) const;
    /// s_l = sum_i y_i h_i^{[l]}, l = 0, ..., d-2.
    ExtVector syndromes(std::span<const Fqn> y) const;
    bool is_codeword(std::span<const Fqn> y) const;

    /// The unique codeword within rank distance `capability()` of y, or nullopt.
    /// Never returns a word that fails the parity check.
    std::optional<Decoded> decode(std::span<const Fqn> y) const;

    /// Coordinates of x over (h_1, ..., h_len), or nullopt if x is outside their span.
    std::optional<DigitVector> parity_coordinates(Fqn x) const;

private:
    GabidulinCode(TowerPtr tower, ExtVector g, ExtVector h, std::size_t k);

    TowerPtr tower_;
    ExtVector g_;
    ExtVector h_;
    std::size_t k_;
    SpanCoordinates h_coordinates_;  // coordinates over (h_1, ..., h_len)
};

/// Minimum nonzero rank over all q^{nk} codewords. Refuses codes with more than 2^20 words.
std::size_t min_rank_distance_exhaustive(const GabidulinCode& code);

}  // namespace rankcodes
