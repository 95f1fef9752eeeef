#include "rankcodes/qmatrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rankcodes {

bool is_prime(std::uint64_t value) {
    if (value < 2) return false;
    for (std::uint64_t d = 2; d * d <= value; ++d)
        if (value % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
    if (!is_prime(q) || q >= (1u << 31))
        throw std::invalid_argument("base field order must be a prime below 2^31, got " + std::to_string(q));
}

Digit PrimeField::inv(Digit a) const {
    if (a % q_ == 0) throw std::domain_error("inverse of zero in GF(q)");
    // Fermat: a^(q-2)
    std::uint64_t result = 1, base = a, e = q_ - 2;
    while (e) {
        if (e & 1) result = result * base % q_;
        base = base * base % q_;
        e >>= 1;
    }
    return static_cast<Digit>(result);
}

QMatrix::QMatrix(std::uint32_t q, std::size_t rows, std::size_t cols)
    : q_(q), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

QMatrix QMatrix::identity(std::uint32_t q, std::size_t n) {
    QMatrix m(q, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

DigitVector QMatrix::column(std::size_t c) const {
    DigitVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

void QMatrix::set_column(std::size_t c, std::span<const Digit> values) {
    if (values.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

QMatrix QMatrix::transposed() const {
    QMatrix t(q_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool QMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Digit d) { return d == 0; });
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows() || a.q() != b.q()) throw std::invalid_argument("QMatrix product: shape mismatch");
    const PrimeField f(a.q());
    QMatrix out(a.q(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Digit aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
        }
    return out;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.q() != b.q())
        throw std::invalid_argument("QMatrix sum: shape mismatch");
    const PrimeField f(a.q());
    QMatrix out(a.q(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.add(a(i, j), b(i, j));
    return out;
}

DigitVector multiply(const QMatrix& m, std::span<const Digit> column) {
    if (column.size() != m.cols()) throw std::invalid_argument("matrix-vector product: length mismatch");
    const PrimeField f(m.q());
    DigitVector out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc = (acc + static_cast<std::uint64_t>(m(i, j)) * column[j]) % m.q();
        out[i] = static_cast<Digit>(acc);
    }
    return out;
}

RowEchelon row_reduce(QMatrix m) {
    const PrimeField f(m.q());
    RowEchelon out;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t p = lead;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != lead) std::swap_ranges(m.row(p).begin(), m.row(p).end(), m.row(lead).begin());
        const Digit inv = f.inv(m(lead, c));
        for (auto& x : m.row(lead)) x = f.mul(x, inv);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m(r, c) == 0) continue;
            const Digit factor = m(r, c);
            auto target = m.row(r);
            auto source = m.row(lead);
            for (std::size_t j = c; j < m.cols(); ++j) target[j] = f.sub(target[j], f.mul(factor, source[j]));
        }
        out.pivots.push_back(c);
        ++lead;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank_q(const QMatrix& m) { return row_reduce(m).rank(); }

namespace {

std::vector<DigitVector> nullspace_from_echelon(const RowEchelon& e) {
    const QMatrix& r = e.reduced;
    const PrimeField f(r.q());
    std::vector<bool> is_pivot(r.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<DigitVector> basis;
    for (std::size_t free = 0; free < r.cols(); ++free) {
        if (is_pivot[free]) continue;
        DigitVector v(r.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(r(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

std::vector<DigitVector> nullspace_q(const QMatrix& m) { return nullspace_from_echelon(row_reduce(m)); }

std::optional<QSolution> solve_q(const QMatrix& m, std::span<const Digit> rhs) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("solve_q: rhs length mismatch");
    QMatrix aug(m.q(), m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i] % m.q();
    }
    const RowEchelon e = row_reduce(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;

    QSolution sol;
    sol.particular.assign(m.cols(), 0);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) sol.particular[e.pivots[i]] = e.reduced(i, m.cols());
    sol.nullspace = nullspace_q(m);
    return sol;
}

std::optional<QMatrix> inverse_q(const QMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    QMatrix aug(m.q(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const RowEchelon e = row_reduce(std::move(aug));
    if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    QMatrix inv(m.q(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

SpanCoordinates::SpanCoordinates(const QMatrix& generators) {
    const std::size_t n = generators.rows();
    const std::size_t m = generators.cols();
    QMatrix aug(generators.q(), n, m + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug(i, j) = generators(i, j);
        aug(i, m + i) = 1;
    }
    const RowEchelon e = row_reduce(std::move(aug));
    for (std::size_t j = 0; j < m; ++j)
        if (j >= e.pivots.size() || e.pivots[j] != j)
            throw std::invalid_argument("SpanCoordinates: generators are linearly dependent");
    transform_ = QMatrix(generators.q(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) transform_(i, j) = e.reduced(i, m + j);
    dim_ = m;
}

std::optional<DigitVector> SpanCoordinates::coordinates(std::span<const Digit> y) const {
    DigitVector z = multiply(transform_, y);
    for (std::size_t i = dim_; i < z.size(); ++i)
        if (z[i] != 0) return std::nullopt;
    z.resize(dim_);
    return z;
}

bool SpanCoordinates::contains(std::span<const Digit> y) const { return coordinates(y).has_value(); }

}  // namespace rankcodes
