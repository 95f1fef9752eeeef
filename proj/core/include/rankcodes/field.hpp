#pragma once

// The extension GF(q^n) over a prime field GF(q).
//
// Elements are stored by their canonical integer encoding: the digit vector
// (c_0, ..., c_{n-1}) over the polynomial basis 1, a, ..., a^{n-1} packed as
// sum c_i q^i. q^n must fit in 64 bits.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rankcodes/qmatrix.hpp"

namespace rankcodes {

struct Fqn {
    std::uint64_t value = 0;

    constexpr auto operator<=>(const Fqn&) const = default;
    constexpr bool is_zero() const noexcept { return value == 0; }
};

/// Number of field multiplications performed on the calling thread.
std::uint64_t field_mul_count() noexcept;
void reset_field_mul_count() noexcept;

enum class Arithmetic {
    Automatic,   ///< log/antilog tables when q^n <= 2^20, polynomial arithmetic otherwise
    Tables,
    Polynomial,
};

/// Tests a monic polynomial (coefficients low to high) for irreducibility over GF(q).
bool is_irreducible(std::uint32_t q, std::span<const Digit> monic);

/// Smallest irreducible monic polynomial of degree n, ordered by the base-q
/// integer of its lower coefficients. Gives x^4+x+1 for (2,4), x^6+x+1 for (2,6).
std::vector<Digit> default_modulus(std::uint32_t q, int n);

class FieldTower {
public:
    FieldTower(std::uint32_t q, int n, Arithmetic mode = Arithmetic::Automatic);
    /// `modulus` lists n+1 coefficients low to high; it must be monic and irreducible.
    FieldTower(std::uint32_t q, int n, std::vector<Digit> modulus, Arithmetic mode = Arithmetic::Automatic);

    std::uint32_t q() const noexcept { return base_.order(); }
    int degree() const noexcept { return n_; }
    std::uint64_t order() const noexcept { return order_; }
    const std::vector<Digit>& modulus() const noexcept { return modulus_; }
    const PrimeField& base() const noexcept { return base_; }
    bool uses_tables() const noexcept { return !exp_.empty(); }

    Fqn zero() const noexcept { return {0}; }
    Fqn one() const noexcept { return {1}; }
    /// The class of x modulo the modulus.
    Fqn generator() const;
    /// Element with the given canonical integer; throws if out of range.
    Fqn element(std::uint64_t value) const;
    bool contains(Fqn x) const noexcept { return x.value < order_; }

    Fqn add(Fqn a, Fqn b) const noexcept;
    Fqn sub(Fqn a, Fqn b) const noexcept;
    Fqn neg(Fqn a) const noexcept;
    /// Multiplication by a base-field scalar.
    Fqn scale(Fqn a, Digit c) const noexcept;
    Fqn mul(Fqn a, Fqn b) const noexcept;
    Fqn inv(Fqn a) const;
    Fqn pow(Fqn a, std::uint64_t e) const noexcept;

    /// x^{[i]}: x^{q^i} for i >= 0 and x^{q^{n+i}} for i < 0, i.e. x^{q^(i mod n)}.
    Fqn frobenius(Fqn x, long long i) const noexcept;

    DigitVector digits(Fqn x) const;
    Fqn from_digits(std::span<const Digit> digits) const;

private:
    Fqn mul_polynomial(Fqn a, Fqn b) const noexcept;
    Fqn inv_polynomial(Fqn a) const;
    void build_tables();
    void build_frobenius();

    PrimeField base_;
    int n_;
    std::uint64_t order_;
    std::vector<Digit> modulus_;
    std::uint64_t reduction_mask_ = 0;  // q == 2: modulus without its leading term

    std::vector<std::uint32_t> exp_;  // doubled length so log a + log b needs no reduction
    std::vector<std::uint32_t> log_;
    std::vector<std::uint64_t> q_power_mod_;  // q^i mod (order - 1)

    std::vector<std::vector<Fqn>> frobenius_images_;  // [i][j] = (a^j)^{[i]}
};

using TowerPtr = std::shared_ptr<const FieldTower>;

/// An ordered GF(q)-basis of GF(q^n) with coordinate maps.
class Basis {
public:
    /// Throws std::invalid_argument unless the elements have q-ary rank n.
    Basis(const FieldTower& tower, std::vector<Fqn> elements);
    static Basis polynomial(const FieldTower& tower);

    const std::vector<Fqn>& elements() const noexcept { return elements_; }

    DigitVector expand(Fqn x) const;
    Fqn contract(std::span<const Digit> coordinates) const;

private:
    std::uint32_t q_;
    int n_;
    std::vector<Fqn> elements_;
    QMatrix to_polynomial_;  // columns are the digits of the basis elements
    QMatrix from_polynomial_;
};

}  // namespace rankcodes
