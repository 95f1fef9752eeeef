#pragma once

// Vectors and matrices over GF(q^n), the rank of a vector over GF(q),
// elimination over the extension field, rank-t error sampling, and the exact
// count of q-ary matrices of a given rank.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "rankcodes/field.hpp"
#include "rankcodes/qmatrix.hpp"

namespace rankcodes {

using ExtVector = std::vector<Fqn>;
using BigInt = boost::multiprecision::cpp_int;
using Rng = std::mt19937_64;

class ExtMatrix {
public:
    ExtMatrix() = default;
    ExtMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Fqn& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Fqn operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Fqn> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Fqn> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    ExtVector row_vector(std::size_t r) const { return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_}; }

    ExtMatrix transposed() const;

    friend bool operator==(const ExtMatrix&, const ExtMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Fqn> data_;
};

ExtVector add(const FieldTower& f, std::span<const Fqn> a, std::span<const Fqn> b);
ExtVector sub(const FieldTower& f, std::span<const Fqn> a, std::span<const Fqn> b);
ExtVector scale(const FieldTower& f, Fqn lambda, std::span<const Fqn> v);
bool is_zero(std::span<const Fqn> v);

/// Row vector times matrix: x * M.
ExtVector multiply(const FieldTower& f, std::span<const Fqn> x, const ExtMatrix& m);
ExtMatrix multiply(const FieldTower& f, const ExtMatrix& a, const ExtMatrix& b);
/// Extension-field matrix times a q-ary matrix.
ExtMatrix multiply(const FieldTower& f, const ExtMatrix& a, const QMatrix& b);

/// n x len q-ary matrix whose column j holds the polynomial-basis digits of v_j.
QMatrix expand_vector(const FieldTower& f, std::span<const Fqn> v);
/// Inverse of expand_vector.
ExtVector contract_columns(const FieldTower& f, const QMatrix& m);

/// Rk(v | GF(q)): the rank of the expanded q-ary matrix.
std::size_t rank_of_vector(const FieldTower& f, std::span<const Fqn> v);

/// Rank over GF(q^n).
std::size_t rank_ext(const FieldTower& f, const ExtMatrix& m);

struct ExtSolution {
    ExtVector particular;
    std::vector<ExtVector> nullspace;
};

/// Solves m * x = rhs over GF(q^n); nullopt when inconsistent.
std::optional<ExtSolution> solve_ext(const FieldTower& f, const ExtMatrix& m, std::span<const Fqn> rhs);
std::vector<ExtVector> nullspace_ext(const FieldTower& f, const ExtMatrix& m);

Fqn random_element(const FieldTower& f, Rng& rng);
ExtVector random_vector(const FieldTower& f, std::size_t length, Rng& rng);
QMatrix random_qmatrix(std::uint32_t q, std::size_t rows, std::size_t cols, Rng& rng);
/// Uniform among rows x cols q-ary matrices of rank exactly `rank` (rejection sampling).
QMatrix random_qmatrix_of_rank(std::uint32_t q, std::size_t rows, std::size_t cols, std::size_t rank, Rng& rng);

enum class ErrorMode {
    ExactRank,      ///< A has full rank t, so the error has rank exactly t
    UniformMatrix,  ///< A uniform over all t x length matrices, rank <= t
};

/// e = (E_1, ..., E_t) * A with the E_j independent elements of the support
/// (spanned by `support`; pass an empty span for the whole field) and A a
/// t x length q-ary matrix drawn according to `mode`.
ExtVector random_error(const FieldTower& f, std::size_t t, std::span<const Fqn> support, std::size_t length,
                       ErrorMode mode, Rng& rng);

/// Number of t x m matrices over GF(q) of rank exactly c (zero when c > min(m, t)).
BigInt count_rank_matrices(std::uint32_t q, std::size_t m, std::size_t t, std::size_t c);

}  // namespace rankcodes
