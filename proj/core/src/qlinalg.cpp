#include "rankcodes/qlinalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rankcodes {

ExtMatrix ExtMatrix::transposed() const {
    ExtMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

// Reduced row echelon form over GF(q^n), in place. Returns the pivot columns.
std::vector<std::size_t> reduce_ext(const FieldTower& f, ExtMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t p = lead;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != lead) std::swap_ranges(m.row(p).begin(), m.row(p).end(), m.row(lead).begin());
        const Fqn inv = f.inv(m(lead, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(lead, j) = f.mul(m(lead, j), inv);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m(r, c).is_zero()) continue;
            const Fqn factor = m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.sub(m(r, j), f.mul(factor, m(lead, j)));
        }
        pivots.push_back(c);
        ++lead;
    }
    return pivots;
}

std::vector<ExtVector> nullspace_from_reduced(const FieldTower& f, const ExtMatrix& r,
                                              const std::vector<std::size_t>& pivots, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<ExtVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        ExtVector v(cols, f.zero());
        v[free] = f.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

ExtVector add(const FieldTower& f, std::span<const Fqn> a, std::span<const Fqn> b) {
    require_same_length(a.size(), b.size(), "add");
    ExtVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
    return out;
}

ExtVector sub(const FieldTower& f, std::span<const Fqn> a, std::span<const Fqn> b) {
    require_same_length(a.size(), b.size(), "sub");
    ExtVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
    return out;
}

ExtVector scale(const FieldTower& f, Fqn lambda, std::span<const Fqn> v) {
    ExtVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.mul(lambda, v[i]);
    return out;
}

bool is_zero(std::span<const Fqn> v) {
    return std::all_of(v.begin(), v.end(), [](Fqn x) { return x.is_zero(); });
}

ExtVector multiply(const FieldTower& f, std::span<const Fqn> x, const ExtMatrix& m) {
    require_same_length(x.size(), m.rows(), "vector-matrix product");
    ExtVector out(m.cols(), f.zero());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(x[i], m(i, j)));
    }
    return out;
}

ExtMatrix multiply(const FieldTower& f, const ExtMatrix& a, const ExtMatrix& b) {
    require_same_length(a.cols(), b.rows(), "matrix product");
    ExtMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(a(i, k), b(k, j)));
        }
    return out;
}

ExtMatrix multiply(const FieldTower& f, const ExtMatrix& a, const QMatrix& b) {
    require_same_length(a.cols(), b.rows(), "matrix product");
    ExtMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j)) out(i, j) = f.add(out(i, j), f.scale(a(i, k), b(k, j)));
        }
    return out;
}

QMatrix expand_vector(const FieldTower& f, std::span<const Fqn> v) {
    QMatrix m(f.q(), static_cast<std::size_t>(f.degree()), v.size());
    for (std::size_t j = 0; j < v.size(); ++j) m.set_column(j, f.digits(v[j]));
    return m;
}

ExtVector contract_columns(const FieldTower& f, const QMatrix& m) {
    if (m.rows() != static_cast<std::size_t>(f.degree()))
        throw std::invalid_argument("contract_columns: expected n rows");
    ExtVector v(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = f.from_digits(m.column(j));
    return v;
}

std::size_t rank_of_vector(const FieldTower& f, std::span<const Fqn> v) {
    if (f.q() == 2) {
        // Bitset elimination; each element is already a row of GF(2) digits.
        std::vector<std::uint64_t> rows;
        rows.reserve(v.size());
        for (auto x : v)
            if (x.value) rows.push_back(x.value);
        std::size_t rank = 0;
        for (int bit = f.degree() - 1; bit >= 0 && rank < rows.size(); --bit) {
            const std::uint64_t mask = std::uint64_t{1} << bit;
            auto it = std::find_if(rows.begin() + static_cast<long>(rank), rows.end(),
                                   [mask](std::uint64_t r) { return (r & mask) != 0; });
            if (it == rows.end()) continue;
            std::iter_swap(rows.begin() + static_cast<long>(rank), it);
            for (std::size_t i = rank + 1; i < rows.size(); ++i)
                if (rows[i] & mask) rows[i] ^= rows[rank];
            ++rank;
        }
        return rank;
    }
    return rank_q(expand_vector(f, v));
}

std::size_t rank_ext(const FieldTower& f, const ExtMatrix& m) {
    ExtMatrix copy = m;
    return reduce_ext(f, copy).size();
}

std::optional<ExtSolution> solve_ext(const FieldTower& f, const ExtMatrix& m, std::span<const Fqn> rhs) {
    require_same_length(rhs.size(), m.rows(), "solve_ext");
    ExtMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i];
    }
    const auto pivots = reduce_ext(f, aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    ExtSolution sol;
    sol.particular.assign(m.cols(), f.zero());
    for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = aug(i, m.cols());
    sol.nullspace = nullspace_from_reduced(f, aug, pivots, m.cols());
    return sol;
}

std::vector<ExtVector> nullspace_ext(const FieldTower& f, const ExtMatrix& m) {
    ExtMatrix copy = m;
    const auto pivots = reduce_ext(f, copy);
    return nullspace_from_reduced(f, copy, pivots, m.cols());
}

Fqn random_element(const FieldTower& f, Rng& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, f.order() - 1);
    return Fqn{dist(rng)};
}

ExtVector random_vector(const FieldTower& f, std::size_t length, Rng& rng) {
    ExtVector v(length);
    for (auto& x : v) x = random_element(f, rng);
    return v;
}

QMatrix random_qmatrix(std::uint32_t q, std::size_t rows, std::size_t cols, Rng& rng) {
    std::uniform_int_distribution<Digit> dist(0, q - 1);
    QMatrix m(q, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (auto& d : m.row(i)) d = dist(rng);
    return m;
}

QMatrix random_qmatrix_of_rank(std::uint32_t q, std::size_t rows, std::size_t cols, std::size_t rank, Rng& rng) {
    if (rank > std::min(rows, cols)) throw std::invalid_argument("requested rank exceeds matrix dimensions");
    if (rank == std::min(rows, cols)) {
        for (;;) {
            QMatrix m = random_qmatrix(q, rows, cols, rng);
            if (rank_q(m) == rank) return m;
        }
    }
    // Uniform over rank-r matrices: L (rows x r) and R (r x cols) of full rank give
    // every rank-r matrix equally often (|GL_r| representations each).
    const QMatrix left = random_qmatrix_of_rank(q, rows, rank, rank, rng);
    const QMatrix right = random_qmatrix_of_rank(q, rank, cols, rank, rng);
    return left * right;
}

ExtVector random_error(const FieldTower& f, std::size_t t, std::span<const Fqn> support, std::size_t length,
                       ErrorMode mode, Rng& rng) {
    ExtVector basis(support.begin(), support.end());
    if (basis.empty()) {
        std::uint64_t place = 1;
        for (int i = 0; i < f.degree(); ++i, place *= f.q()) basis.push_back(Fqn{place});
    }
    if (t > basis.size()) throw std::invalid_argument("error rank exceeds the dimension of the support");
    if (mode == ErrorMode::ExactRank && t > length) throw std::invalid_argument("error rank exceeds code length");
    ExtVector e(length, f.zero());
    if (t == 0) return e;

    // E = b * R with R of full column rank t, so E_1..E_t are independent in the support.
    const QMatrix r = random_qmatrix_of_rank(f.q(), basis.size(), t, t, rng);
    ExtVector values(t, f.zero());
    for (std::size_t j = 0; j < t; ++j)
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (r(i, j)) values[j] = f.add(values[j], f.scale(basis[i], r(i, j)));

    const QMatrix a = mode == ErrorMode::ExactRank ? random_qmatrix_of_rank(f.q(), t, length, t, rng)
                                                   : random_qmatrix(f.q(), t, length, rng);
    for (std::size_t i = 0; i < length; ++i)
        for (std::size_t j = 0; j < t; ++j)
            if (a(j, i)) e[i] = f.add(e[i], f.scale(values[j], a(j, i)));
    return e;
}

BigInt count_rank_matrices(std::uint32_t q, std::size_t m, std::size_t t, std::size_t c) {
    if (c > std::min(m, t)) return 0;
    BigInt numerator = 1, denominator = 1;
    const BigInt qm = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(m));
    const BigInt qt = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(t));
    const BigInt qc = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(c));
    BigInt qi = 1;
    for (std::size_t i = 0; i < c; ++i, qi *= q) {
        numerator *= (qm - qi) * (qt - qi);
        denominator *= qc - qi;
    }
    return numerator / denominator;
}

}  // namespace rankcodes
