#pragma once

// Dense matrices over a prime field GF(q) and Gaussian elimination.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rankcodes {

using Digit = std::uint32_t;
using DigitVector = std::vector<Digit>;

bool is_prime(std::uint64_t value);

/// Arithmetic modulo a prime q < 2^31.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t q);

    std::uint32_t order() const noexcept { return q_; }

    Digit add(Digit a, Digit b) const noexcept {
        const Digit s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    Digit sub(Digit a, Digit b) const noexcept { return a >= b ? a - b : a + q_ - b; }
    Digit neg(Digit a) const noexcept { return a == 0 ? 0 : q_ - a; }
    Digit mul(Digit a, Digit b) const noexcept {
        return static_cast<Digit>(static_cast<std::uint64_t>(a) * b % q_);
    }
    Digit inv(Digit a) const;

private:
    std::uint32_t q_;
};

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::uint32_t q, std::size_t rows, std::size_t cols);

    static QMatrix identity(std::uint32_t q, std::size_t n);

    std::uint32_t q() const noexcept { return q_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Digit& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Digit operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Digit> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Digit> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    DigitVector column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const Digit> values);

    QMatrix transposed() const;
    bool is_zero() const;

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    std::uint32_t q_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Digit> data_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator+(const QMatrix& a, const QMatrix& b);
DigitVector multiply(const QMatrix& m, std::span<const Digit> column);

/// Reduced row echelon form together with the pivot columns.
struct RowEchelon {
    QMatrix reduced;
    std::vector<std::size_t> pivots;

    std::size_t rank() const noexcept { return pivots.size(); }
};

RowEchelon row_reduce(QMatrix m);
std::size_t rank_q(const QMatrix& m);
std::vector<DigitVector> nullspace_q(const QMatrix& m);

struct QSolution {
    DigitVector particular;
    std::vector<DigitVector> nullspace;
};

/// Solves m * x = rhs. Returns nullopt when the system is inconsistent.
std::optional<QSolution> solve_q(const QMatrix& m, std::span<const Digit> rhs);
std::optional<QMatrix> inverse_q(const QMatrix& m);

/// Coordinates with respect to a fixed list of linearly independent columns.
///
/// Row-reduces [B | I] once so that every later query is a single
/// matrix-vector product: z = T y, y lies in the span iff the tail of z is
/// zero, and the head of z holds the coordinates.
class SpanCoordinates {
public:
    SpanCoordinates() = default;
    /// Throws std::invalid_argument if the columns of `generators` are dependent.
    explicit SpanCoordinates(const QMatrix& generators);

    std::size_t ambient_dimension() const noexcept { return transform_.rows(); }
    std::size_t dimension() const noexcept { return dim_; }

    std::optional<DigitVector> coordinates(std::span<const Digit> y) const;
    bool contains(std::span<const Digit> y) const;

private:
    QMatrix transform_;
    std::size_t dim_ = 0;
};

}  // namespace rankcodes
