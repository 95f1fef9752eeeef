#include "rankcodes/subspace.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rankcodes/errors.hpp"

namespace rankcodes {

namespace {

constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 20;

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (r > kEnumerationLimit / base) throw std::invalid_argument("enumeration exceeds 2^20 words");
        r *= base;
    }
    return r;
}

bool lexicographic_less(const ExtVector& a, const ExtVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

SubspaceBasis::SubspaceBasis(TowerPtr tower, ExtVector elements)
    : tower_(std::move(tower)), elements_(std::move(elements)) {
    if (!tower_) throw std::invalid_argument("null field tower");
    for (auto x : elements_)
        if (!tower_->contains(x)) throw std::invalid_argument("subspace basis element outside the field");
    try {
        coords_ = SpanCoordinates(expand_vector(*tower_, elements_));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("subspace basis elements are linearly dependent over GF(q)");
    }
}

SubspaceBasis SubspaceBasis::full_space(TowerPtr tower) {
    ExtVector elems;
    std::uint64_t place = 1;
    for (int i = 0; i < tower->degree(); ++i, place *= tower->q()) elems.push_back(Fqn{place});
    return SubspaceBasis(std::move(tower), std::move(elems));
}

bool SubspaceBasis::contains(Fqn x) const { return coords_.contains(tower_->digits(x)); }

std::optional<DigitVector> SubspaceBasis::coordinates(Fqn x) const { return coords_.coordinates(tower_->digits(x)); }

QMatrix decompose(const SubspaceBasis& basis, std::span<const Fqn> c) {
    QMatrix u(basis.field().q(), basis.dimension(), c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        auto coords = basis.coordinates(c[j]);
        if (!coords)
            throw OutsideSubspace(j, "component " + std::to_string(j) + " (value " + std::to_string(c[j].value) +
                                         ") is outside the subspace");
        u.set_column(j, *coords);
    }
    return u;
}

ExtVector recompose(const SubspaceBasis& basis, const QMatrix& u) {
    if (u.rows() != basis.dimension()) throw std::invalid_argument("recompose: row count must equal m");
    const FieldTower& f = basis.field();
    ExtVector c(u.cols(), f.zero());
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j)
            if (u(i, j)) c[j] = f.add(c[j], f.scale(basis.elements()[i], u(i, j)));
    return c;
}

ExtMatrix parent_parity_matrix(const GabidulinCode& code, const SubspaceBasis& basis) {
    const FieldTower& f = code.field();
    const auto n = static_cast<long long>(f.degree());
    const std::size_t rows = code.min_distance() - 1;
    ExtMatrix m(rows, basis.dimension());
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t i = 0; i < basis.dimension(); ++i)
            m(r, i) = f.frobenius(basis.elements()[i], n - static_cast<long long>(r));
    return m;
}

GabidulinCode parent_code(const GabidulinCode& code, const SubspaceBasis& basis) {
    const std::size_t d = code.min_distance();
    const std::size_t m = basis.dimension();
    if (m < d)
        throw TrivialSubcode("subspace dimension " + std::to_string(m) + " is below the minimum distance " +
                             std::to_string(d) + "; the subcode is {0}");
    const FieldTower& f = code.field();
    const long long shift = f.degree() - static_cast<long long>(d) + 2;
    ExtVector h(m);
    for (std::size_t i = 0; i < m; ++i) h[i] = f.frobenius(basis.elements()[i], shift);
    return GabidulinCode::from_parity(code.tower(), std::move(h), m - d + 1);
}

SubspaceSubcode::SubspaceSubcode(GabidulinCode code, SubspaceBasis basis)
    : code_(std::move(code)), basis_(std::move(basis)) {
    if (code_.length() != static_cast<std::size_t>(code_.field().degree()))
        throw std::invalid_argument("subspace subcodes require a full-length code (length n)");
    if (basis_.tower() != code_.tower() &&
        (basis_.field().q() != code_.field().q() || basis_.field().modulus() != code_.field().modulus()))
        throw std::invalid_argument("subspace and code live in different fields");
    if (basis_.dimension() >= code_.min_distance()) parent_.emplace(parent_code(code_, basis_));
}

const GabidulinCode& SubspaceSubcode::parent() const {
    if (!parent_) throw TrivialSubcode("the subcode is {0}: subspace dimension is below the minimum distance");
    return *parent_;
}

std::size_t SubspaceSubcode::message_length() const noexcept {
    return parent_ ? parent_->dimension() : 0;
}

std::size_t SubspaceSubcode::log_cardinality() const noexcept {
    return static_cast<std::size_t>(field().degree()) * message_length();
}

ExtVector SubspaceSubcode::f_b(std::span<const Fqn> c) const {
    const FieldTower& f = field();
    const QMatrix u = decompose(basis_, c);
    ExtVector v(basis_.dimension(), f.zero());
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j)
            if (u(i, j)) v[i] = f.add(v[i], f.scale(code_.h()[j], u(i, j)));
    return v;
}

ExtVector SubspaceSubcode::f_b_inv(std::span<const Fqn> v) const {
    if (v.size() != basis_.dimension()) throw std::invalid_argument("f_b_inv: expected a vector of length m");
    QMatrix u(field().q(), basis_.dimension(), code_.length());
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto row = code_.parity_coordinates(v[i]);
        if (!row) throw InvariantViolation("h does not span GF(q^n)");
        std::copy(row->begin(), row->end(), u.row(i).begin());
    }
    return recompose(basis_, u);
}

bool SubspaceSubcode::contains(std::span<const Fqn> c) const {
    if (c.size() != code_.length()) return false;
    for (auto x : c)
        if (!basis_.contains(x)) return false;
    return code_.is_codeword(c);
}

ExtVector SubspaceSubcode::encode(std::span<const Fqn> message) const {
    return f_b_inv(parent().encode(message));
}

std::optional<Decoded> SubspaceSubcode::decode(std::span<const Fqn> y, DecodeRoute route) const {
    if (y.size() != code_.length()) throw std::invalid_argument("received word length must equal n");
    for (std::size_t j = 0; j < y.size(); ++j)
        if (!basis_.contains(y[j]))
            throw OutsideSubspace(j, "received component " + std::to_string(j) + " is outside the subspace");
    if (route == DecodeRoute::Direct) return code_.decode(y);

    auto inner = parent().decode(f_b(y));
    if (!inner) return std::nullopt;
    return Decoded{f_b_inv(inner->codeword), f_b_inv(inner->error), inner->error_rank};
}

std::vector<ExtVector> enumerate_code(const GabidulinCode& code) {
    const FieldTower& f = code.field();
    const std::uint64_t total = checked_power(f.order(), code.dimension());
    std::vector<ExtVector> words;
    words.reserve(total);
    ExtVector x(code.dimension(), f.zero());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        words.push_back(code.encode(x));
        for (auto& xi : x) {
            xi.value = (xi.value + 1) % f.order();
            if (xi.value != 0) break;
        }
    }
    return words;
}

std::vector<ExtVector> enumerate_subcode(const SubspaceSubcode& sub) {
    std::vector<ExtVector> out;
    for (auto& c : enumerate_code(sub.code())) {
        if (std::all_of(c.begin(), c.end(), [&](Fqn x) { return sub.basis().contains(x); }))
            out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), lexicographic_less);
    return out;
}

std::vector<ExtVector> subcode_generators(const SubspaceSubcode& sub) {
    const FieldTower& f = sub.field();
    const auto n = static_cast<std::size_t>(f.degree());
    const std::size_t m = sub.basis().dimension();
    const std::size_t len = sub.code().length();
    const std::size_t checks = sub.code().min_distance() - 1;
    // Unknown U_{i,j} at column i*len + j; equation l expands into n digit rows.
    QMatrix system(f.q(), checks * n, m * len);
    for (std::size_t l = 0; l < checks; ++l)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < len; ++j) {
                const Fqn coeff = f.mul(sub.basis().elements()[i],
                                        f.frobenius(sub.code().h()[j], static_cast<long long>(l)));
                const auto d = f.digits(coeff);
                for (std::size_t r = 0; r < n; ++r) system(l * n + r, i * len + j) = d[r];
            }
    std::vector<ExtVector> gens;
    for (const auto& v : nullspace_q(system)) {
        QMatrix u(f.q(), m, len);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < len; ++j) u(i, j) = v[i * len + j];
        gens.push_back(recompose(sub.basis(), u));
    }
    return gens;
}

std::vector<ExtVector> enumerate_span(const FieldTower& f, const std::vector<ExtVector>& generators,
                                      std::size_t length) {
    const std::uint64_t total = checked_power(f.q(), generators.size());
    std::vector<ExtVector> out;
    out.reserve(total);
    std::vector<Digit> coeffs(generators.size(), 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        ExtVector c(length, f.zero());
        for (std::size_t g = 0; g < generators.size(); ++g)
            if (coeffs[g])
                for (std::size_t j = 0; j < length; ++j) c[j] = f.add(c[j], f.scale(generators[g][j], coeffs[g]));
        out.push_back(std::move(c));
        for (auto& d : coeffs) {
            d = (d + 1) % f.q();
            if (d != 0) break;
        }
    }
    std::sort(out.begin(), out.end(), lexicographic_less);
    return out;
}

std::vector<ExtVector> enumerate_subcode_span(const SubspaceSubcode& sub) {
    return enumerate_span(sub.field(), subcode_generators(sub), sub.code().length());
}

}  // namespace rankcodes
