#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rankcodes/field.hpp"

namespace rankcodes {

/// f(x) = sum_p f_p x^{[p]}, a GF(q)-linear map on GF(q^n).
///
/// Coefficients are stored low to high with no trailing zeros, so the zero
/// polynomial has an empty coefficient list and q-degree -1.
class LinearizedPoly {
public:
    LinearizedPoly() = default;
    explicit LinearizedPoly(std::vector<Fqn> coeffs);

    static LinearizedPoly identity();
    static LinearizedPoly monomial(std::size_t p, Fqn coeff);

    const std::vector<Fqn>& coeffs() const noexcept { return coeffs_; }
    Fqn coeff(std::size_t p) const noexcept { return p < coeffs_.size() ? coeffs_[p] : Fqn{}; }
    int q_degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    friend bool operator==(const LinearizedPoly&, const LinearizedPoly&) = default;

private:
    std::vector<Fqn> coeffs_;
};

Fqn eval(const FieldTower& f, const LinearizedPoly& poly, Fqn x);
LinearizedPoly add(const FieldTower& f, const LinearizedPoly& a, const LinearizedPoly& b);
LinearizedPoly sub(const FieldTower& f, const LinearizedPoly& a, const LinearizedPoly& b);

/// Symbolic composition a o b: (a o b)_k = sum_{i+j=k} a_i b_j^{[i]}.
LinearizedPoly compose(const FieldTower& f, const LinearizedPoly& a, const LinearizedPoly& b);

/// A GF(q)-basis of the kernel {x : poly(x) = 0}. Throws for the zero polynomial.
std::vector<Fqn> root_space_basis(const FieldTower& f, const LinearizedPoly& poly);

/// The monic linearized polynomial of least q-degree vanishing on the GF(q)-span
/// of `elements`; its q-degree equals the dimension of that span.
LinearizedPoly subspace_polynomial(const FieldTower& f, std::span<const Fqn> elements);

}  // namespace rankcodes
