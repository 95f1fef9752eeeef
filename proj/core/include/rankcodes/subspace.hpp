#pragma once

// Subspace subcodes (G|V_m): codewords of a full-length Gabidulin code whose
// components all lie in an m-dimensional GF(q)-subspace V_m.
//
// With b a basis of V_m, every c in V_m^n is c = b U for a unique q-ary
// m x n matrix U, and f_b(c) = h U^T maps the subcode bijectively and
// rank-preservingly onto the parent code, the [m, m-d+1, d] Gabidulin code
// with parity-check rows b^{[n]}, b^{[n-1]}, ..., b^{[n-d+2]}.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rankcodes/gabidulin.hpp"

namespace rankcodes {

class SubspaceBasis {
public:
    /// Throws std::invalid_argument unless the elements are independent over GF(q).
    SubspaceBasis(TowerPtr tower, ExtVector elements);
    static SubspaceBasis full_space(TowerPtr tower);

    const FieldTower& field() const noexcept { return *tower_; }
    const TowerPtr& tower() const noexcept { return tower_; }
    const ExtVector& elements() const noexcept { return elements_; }
    std::size_t dimension() const noexcept { return elements_.size(); }

    bool contains(Fqn x) const;
    std::optional<DigitVector> coordinates(Fqn x) const;

private:
    TowerPtr tower_;
    ExtVector elements_;
    SpanCoordinates coords_;
};

/// c = b U. Throws OutsideSubspace naming the first component not in V_m.
QMatrix decompose(const SubspaceBasis& basis, std::span<const Fqn> c);
ExtVector recompose(const SubspaceBasis& basis, const QMatrix& u);

/// H_{V_m}: rows b^{[n]}, b^{[n-1]}, ..., b^{[n-d+2]}.
ExtMatrix parent_parity_matrix(const GabidulinCode& code, const SubspaceBasis& basis);

/// LG(V_m), realized as the Gabidulin code with parity vector b^{[n-d+2]}
/// (same rows as H_{V_m}, reverse order). Throws TrivialSubcode when m < d.
GabidulinCode parent_code(const GabidulinCode& code, const SubspaceBasis& basis);

enum class DecodeRoute {
    Direct,     ///< decode y in the full code G
    ViaParent,  ///< decode f_b(y) in LG(V_m) and pull back
};

class SubspaceSubcode {
public:
    /// `code` must have full length n.
    SubspaceSubcode(GabidulinCode code, SubspaceBasis basis);

    const GabidulinCode& code() const noexcept { return code_; }
    const SubspaceBasis& basis() const noexcept { return basis_; }
    const FieldTower& field() const noexcept { return code_.field(); }

    /// True when m < d: the subcode is {0}.
    bool is_trivial() const noexcept { return !parent_.has_value(); }
    /// Throws TrivialSubcode when is_trivial().
    const GabidulinCode& parent() const;
    /// Message length m-d+1 over GF(q^n) (0 for a trivial subcode).
    std::size_t message_length() const noexcept;
    /// log_q of the cardinality: n(m-d+1), or 0.
    std::size_t log_cardinality() const noexcept;

    ExtVector f_b(std::span<const Fqn> c) const;
    ExtVector f_b_inv(std::span<const Fqn> v) const;

    bool contains(std::span<const Fqn> c) const;

    ExtVector encode(std::span<const Fqn> message) const;
    /// y must have every component in V_m (OutsideSubspace otherwise).
    std::optional<Decoded> decode(std::span<const Fqn> y, DecodeRoute route) const;

private:
    GabidulinCode code_;
    SubspaceBasis basis_;
    std::optional<GabidulinCode> parent_;
};

/// Brute-force filter of all q^{nk} codewords of G. Sorted by component values.
/// Refuses codes with more than 2^20 codewords.
std::vector<ExtVector> enumerate_subcode(const SubspaceSubcode& sub);

/// A GF(q)-basis of (G|V_m) obtained by solving b U H^T = 0 for the q-ary U directly.
std::vector<ExtVector> subcode_generators(const SubspaceSubcode& sub);

/// All GF(q)-combinations of subcode_generators(). Sorted; refuses more than 2^20 words.
std::vector<ExtVector> enumerate_subcode_span(const SubspaceSubcode& sub);

/// All GF(q)-combinations of `generators` (at most 2^20 of them), sorted.
std::vector<ExtVector> enumerate_span(const FieldTower& f, const std::vector<ExtVector>& generators, std::size_t length);

/// Every codeword of `code`. Refuses codes with more than 2^20 words.
std::vector<ExtVector> enumerate_code(const GabidulinCode& code);

}  // namespace rankcodes
