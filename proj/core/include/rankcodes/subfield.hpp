#pragma once

// Subfield subcodes (G|GF(q^s)) for s | n. GF(q^s) is embedded in GF(q^n)
// as the fixed field of x -> x^{[s]}. Their parity check factors as
// blockdiag(A, ..., A) S with A the Moore matrix of a basis of GF(q^s)/GF(q)
// and S an invertible q-ary n x n matrix.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankcodes/directsum.hpp"
#include "rankcodes/gabidulin.hpp"
#include "rankcodes/subspace.hpp"

namespace rankcodes {

class SubfieldConstraint : public std::invalid_argument {
public:
    enum class Kind {
        NotADivisor,       ///< s does not divide n
        DistanceTooLarge,  ///< d - 2 >= s
        ShortCode,         ///< the code does not have length n
    };

    SubfieldConstraint(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

bool in_subfield(const FieldTower& f, std::size_t s, Fqn x);
/// Every element of GF(q^s) inside GF(q^n), in increasing order. s must divide n.
ExtVector subfield_elements(const FieldTower& f, std::size_t s);
/// The smallest gamma in GF(q^s) whose powers 1, ..., gamma^{s-1} are independent over GF(q).
Fqn subfield_generator(const FieldTower& f, std::size_t s);
/// (1, gamma, ..., gamma^{s-1})
ExtVector subfield_basis(const FieldTower& f, std::size_t s);
/// (1, alpha, ..., alpha^{n/s-1}), a basis of GF(q^n) over GF(q^s).
ExtVector default_extension_basis(const FieldTower& f, std::size_t s);

/// Coordinates of x over the GF(q^s)-basis `basis_ext`, each in GF(q^s).
ExtVector subfield_coordinates(const FieldTower& f, std::size_t s, const ExtVector& basis_ext, Fqn x);

/// The (n/s) x n matrix over GF(q^s) whose column j holds the coordinates of h_j.
ExtMatrix expand_H_over_subfield(const GabidulinCode& code, std::size_t s, const ExtVector& basis_ext);

/// q-ary expansion of an (n/s) x cols matrix over GF(q^s): entry (l, j) becomes
/// rows l*s .. l*s+s-1 of column j, the coordinates over `subfield_basis`.
QMatrix expand_over_product_basis(const FieldTower& f, const ExtMatrix& m, const ExtVector& subfield_basis);

struct SubfieldFactorization {
    TowerPtr tower;
    std::size_t s = 0;
    std::size_t d = 0;
    ExtVector a;           // basis of GF(q^s)/GF(q)
    ExtVector basis_ext;   // basis of GF(q^n)/GF(q^s)
    ExtMatrix A;           // (d-1) x s Moore matrix of a
    QMatrix T;             // q-ary expansion of blockdiag(a, ..., a)
    QMatrix M;             // q-ary expansion of the expanded parity vector
    QMatrix S;             // n x n, invertible

    std::size_t blocks() const noexcept { return S.rows() / s; }
    /// blockdiag(A, ..., A) S, a ((d-1) n/s) x n matrix over GF(q^s).
    ExtMatrix parity_check() const;
    /// True when parity_check() annihilates c.
    bool annihilates(std::span<const Fqn> c) const;
};

/// Throws SubfieldConstraint for an invalid s and TrivialSubcode when s < d.
SubfieldFactorization compute_factorization(const GabidulinCode& code, std::size_t s);
SubfieldFactorization compute_factorization(const GabidulinCode& code, std::size_t s, const ExtVector& basis_ext);

/// blockdiag(A, ..., A) S with S replaced by `s_matrix`.
ExtMatrix subfield_parity_check(const SubfieldFactorization& factz, const QMatrix& s_matrix);

/// The subcode as a subspace subcode over V = GF(q^s) with basis a.
SubspaceSubcode subfield_subcode(const GabidulinCode& code, const SubfieldFactorization& factz);

struct UniquenessReport {
    bool unique = false;            // the pinned system T X = M has exactly one solution
    bool matches = false;           // and that solution is S
    std::size_t perturbations = 0;  // single-entry changes of S that were tried
    std::size_t detected = 0;       // of which some subcode word is no longer annihilated
    bool ok() const noexcept { return unique && matches && detected == perturbations; }
};

/// Solves the n^2 x n^2 q-ary system blockdiag(a) X = H-expansion for X and
/// checks it has the single solution S, then tries `trials` single-entry
/// perturbations of S against the words in `subcode` (all of them if trials
/// exceeds n^2 (q-1)).
UniquenessReport verify_uniqueness(const SubfieldFactorization& factz, const std::vector<ExtVector>& subcode,
                                   std::size_t trials);

/// Every x in GF(q^s)^s with A x^T = 0 (the block code of A). Refuses more than 2^20 candidates.
std::vector<ExtVector> enumerate_block_code(const SubfieldFactorization& factz);

/// Every x in GF(q^s)^n annihilated by the parity check. Refuses more than 2^20 candidates.
std::vector<ExtVector> enumerate_subfield_kernel(const SubfieldFactorization& factz);

/// Success probability of the direct sum of n/s copies of GF(q^s).
Rational subfield_success_probability(std::uint32_t q, std::size_t n, std::size_t s, std::size_t c, std::size_t t);

}  // namespace rankcodes
