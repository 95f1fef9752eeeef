#include "rankcodes/subfield.hpp"

#include <algorithm>
#include <string>

#include "rankcodes/errors.hpp"

namespace rankcodes {

namespace {

constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 20;

void require_divisor(const FieldTower& f, std::size_t s) {
    if (s == 0 || static_cast<std::size_t>(f.degree()) % s != 0)
        throw SubfieldConstraint(SubfieldConstraint::Kind::NotADivisor,
                                 "s = " + std::to_string(s) + " does not divide n = " + std::to_string(f.degree()));
}

// Basis elements a_j * eps_l in the order l*s + j.
ExtVector product_basis(const FieldTower& f, const ExtVector& a, const ExtVector& basis_ext) {
    ExtVector out;
    for (auto e : basis_ext)
        for (auto x : a) out.push_back(f.mul(x, e));
    return out;
}

std::uint64_t checked_count(std::uint64_t base, std::size_t exponent) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (r > kEnumerationLimit / base) throw std::invalid_argument("enumeration exceeds 2^20 candidates");
        r *= base;
    }
    return r;
}

// All vectors of `length` components drawn from `alphabet` that pass `keep`, sorted.
template <typename Keep>
std::vector<ExtVector> enumerate_over(const ExtVector& alphabet, std::size_t length, Keep keep) {
    const std::uint64_t total = checked_count(alphabet.size(), length);
    std::vector<std::size_t> idx(length, 0);
    std::vector<ExtVector> out;
    ExtVector x(length, alphabet.front());
    for (std::uint64_t it = 0; it < total; ++it) {
        for (std::size_t j = 0; j < length; ++j) x[j] = alphabet[idx[j]];
        if (keep(x)) out.push_back(x);
        for (auto& i : idx) {
            if (++i < alphabet.size()) break;
            i = 0;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool annihilated_by(const FieldTower& f, const ExtMatrix& h, std::span<const Fqn> c) {
    for (std::size_t r = 0; r < h.rows(); ++r) {
        Fqn acc = f.zero();
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero()) acc = f.add(acc, f.mul(h(r, i), c[i]));
        if (!acc.is_zero()) return false;
    }
    return true;
}

}  // namespace

bool in_subfield(const FieldTower& f, std::size_t s, Fqn x) {
    return f.frobenius(x, static_cast<long long>(s)) == x;
}

ExtVector subfield_elements(const FieldTower& f, std::size_t s) {
    require_divisor(f, s);
    ExtVector out;
    for (std::uint64_t v = 0; v < f.order(); ++v)
        if (in_subfield(f, s, Fqn{v})) out.push_back(Fqn{v});
    return out;
}

Fqn subfield_generator(const FieldTower& f, std::size_t s) {
    require_divisor(f, s);
    for (std::uint64_t v = 1; v < f.order(); ++v) {
        const Fqn x{v};
        if (!in_subfield(f, s, x)) continue;
        ExtVector powers{f.one()};
        for (std::size_t i = 1; i < s; ++i) powers.push_back(f.mul(powers.back(), x));
        if (rank_of_vector(f, powers) == s) return x;
    }
    throw std::logic_error("no generator of the subfield found");
}

ExtVector subfield_basis(const FieldTower& f, std::size_t s) {
    const Fqn gamma = subfield_generator(f, s);
    ExtVector out{f.one()};
    for (std::size_t i = 1; i < s; ++i) out.push_back(f.mul(out.back(), gamma));
    return out;
}

ExtVector default_extension_basis(const FieldTower& f, std::size_t s) {
    require_divisor(f, s);
    const std::size_t count = static_cast<std::size_t>(f.degree()) / s;
    ExtVector out{f.one()};
    for (std::size_t i = 1; i < count; ++i) out.push_back(f.mul(out.back(), f.generator()));
    return out;
}

ExtVector subfield_coordinates(const FieldTower& f, std::size_t s, const ExtVector& basis_ext, Fqn x) {
    const ExtVector a = subfield_basis(f, s);
    const SpanCoordinates coords(expand_vector(f, product_basis(f, a, basis_ext)));
    const auto c = coords.coordinates(f.digits(x));
    if (!c) throw InvariantViolation("product basis does not span GF(q^n)");
    ExtVector out(basis_ext.size(), f.zero());
    for (std::size_t l = 0; l < basis_ext.size(); ++l)
        for (std::size_t j = 0; j < s; ++j)
            if (auto d = (*c)[l * s + j]) out[l] = f.add(out[l], f.scale(a[j], d));
    return out;
}

ExtMatrix expand_H_over_subfield(const GabidulinCode& code, std::size_t s, const ExtVector& basis_ext) {
    const FieldTower& f = code.field();
    require_divisor(f, s);
    if (basis_ext.size() * s != static_cast<std::size_t>(f.degree()))
        throw std::invalid_argument("extension basis must have n/s elements");
    const ExtVector a = subfield_basis(f, s);
    const ExtVector product = product_basis(f, a, basis_ext);
    if (rank_of_vector(f, product) != product.size())
        throw std::invalid_argument("extension basis is not independent over GF(q^s)");
    const SpanCoordinates coords(expand_vector(f, product));
    ExtMatrix out(basis_ext.size(), code.length());
    for (std::size_t i = 0; i < code.length(); ++i) {
        const auto c = coords.coordinates(f.digits(code.h()[i]));
        if (!c) throw InvariantViolation("product basis does not span GF(q^n)");
        for (std::size_t l = 0; l < basis_ext.size(); ++l) {
            Fqn v = f.zero();
            for (std::size_t j = 0; j < s; ++j)
                if (auto d = (*c)[l * s + j]) v = f.add(v, f.scale(a[j], d));
            out(l, i) = v;
        }
    }
    return out;
}

QMatrix expand_over_product_basis(const FieldTower& f, const ExtMatrix& m, const ExtVector& subfield_basis) {
    const std::size_t s = subfield_basis.size();
    const SpanCoordinates coords(expand_vector(f, subfield_basis));
    QMatrix out(f.q(), m.rows() * s, m.cols());
    for (std::size_t l = 0; l < m.rows(); ++l)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto c = coords.coordinates(f.digits(m(l, j)));
            if (!c) throw std::invalid_argument("matrix entry outside GF(q^s)");
            for (std::size_t r = 0; r < s; ++r) out(l * s + r, j) = (*c)[r];
        }
    return out;
}

ExtMatrix subfield_parity_check(const SubfieldFactorization& factz, const QMatrix& s_matrix) {
    const FieldTower& f = *factz.tower;
    const std::size_t s = factz.s;
    const std::size_t checks = factz.A.rows();
    const std::size_t n = s_matrix.cols();
    ExtMatrix h(checks * factz.blocks(), n);
    for (std::size_t l = 0; l < factz.blocks(); ++l)
        for (std::size_t r = 0; r < checks; ++r)
            for (std::size_t i = 0; i < n; ++i) {
                Fqn acc = f.zero();
                for (std::size_t j = 0; j < s; ++j)
                    if (auto d = s_matrix(l * s + j, i)) acc = f.add(acc, f.scale(factz.A(r, j), d));
                h(l * checks + r, i) = acc;
            }
    return h;
}

ExtMatrix SubfieldFactorization::parity_check() const { return subfield_parity_check(*this, S); }

bool SubfieldFactorization::annihilates(std::span<const Fqn> c) const {
    return annihilated_by(*tower, parity_check(), c);
}

SubfieldFactorization compute_factorization(const GabidulinCode& code, std::size_t s) {
    require_divisor(code.field(), s);
    return compute_factorization(code, s, default_extension_basis(code.field(), s));
}

SubfieldFactorization compute_factorization(const GabidulinCode& code, std::size_t s, const ExtVector& basis_ext) {
    const FieldTower& f = code.field();
    const auto n = static_cast<std::size_t>(f.degree());
    require_divisor(f, s);
    if (code.length() != n)
        throw SubfieldConstraint(SubfieldConstraint::Kind::ShortCode, "subfield subcodes require a length-n code");
    const std::size_t d = code.min_distance();
    if (d - 2 >= s)
        throw SubfieldConstraint(SubfieldConstraint::Kind::DistanceTooLarge,
                                 "need d - 2 < s, got d = " + std::to_string(d) + ", s = " + std::to_string(s));
    if (s < d)
        throw TrivialSubcode("s = " + std::to_string(s) + " is below d = " + std::to_string(d) +
                             "; the subfield subcode is {0}");

    SubfieldFactorization out;
    out.tower = code.tower();
    out.s = s;
    out.d = d;
    out.a = subfield_basis(f, s);
    out.basis_ext = basis_ext;
    out.A = moore_matrix(f, out.a, d - 1);

    const ExtMatrix hx = expand_H_over_subfield(code, s, basis_ext);
    out.M = expand_over_product_basis(f, hx, out.a);

    ExtMatrix block(n / s, n);
    for (std::size_t l = 0; l < n / s; ++l)
        for (std::size_t j = 0; j < s; ++j) block(l, l * s + j) = out.a[j];
    out.T = expand_over_product_basis(f, block, out.a);

    // blockdiag(a) S = hx, i.e. T S = M over GF(q).
    const auto t_inv = inverse_q(out.T);
    if (!t_inv) throw InvariantViolation("block-diagonal target is singular");
    out.S = *t_inv * out.M;
    if (rank_q(out.S) != n) throw InvariantViolation("S is not invertible");
    return out;
}

SubspaceSubcode subfield_subcode(const GabidulinCode& code, const SubfieldFactorization& factz) {
    return SubspaceSubcode(code, SubspaceBasis(factz.tower, factz.a));
}

UniquenessReport verify_uniqueness(const SubfieldFactorization& factz, const std::vector<ExtVector>& subcode,
                                   std::size_t trials) {
    const std::uint32_t q = factz.tower->q();
    const std::size_t n = factz.S.rows();
    UniquenessReport report;

    // Unknown X(p, i) at column p*n + i; equation (r, i): sum_p T(r, p) X(p, i) = M(r, i).
    QMatrix system(q, n * n, n * n);
    DigitVector rhs(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t p = 0; p < n; ++p) system(r * n + i, p * n + i) = factz.T(r, p);
            rhs[r * n + i] = factz.M(r, i);
        }
    const auto sol = solve_q(system, rhs);
    if (sol && sol->nullspace.empty()) {
        report.unique = true;
        report.matches = true;
        for (std::size_t p = 0; p < n && report.matches; ++p)
            for (std::size_t i = 0; i < n; ++i)
                if (sol->particular[p * n + i] != factz.S(p, i)) {
                    report.matches = false;
                    break;
                }
    }

    const FieldTower& f = *factz.tower;
    const PrimeField gf(q);
    for (std::size_t entry = 0; entry < n * n && report.perturbations < trials; ++entry)
        for (Digit delta = 1; delta < q && report.perturbations < trials; ++delta) {
            QMatrix changed = factz.S;
            const std::size_t p = entry / n, i = entry % n;
            changed(p, i) = gf.add(changed(p, i), delta);
            const ExtMatrix h = subfield_parity_check(factz, changed);
            ++report.perturbations;
            if (std::any_of(subcode.begin(), subcode.end(),
                            [&](const ExtVector& c) { return !annihilated_by(f, h, c); }))
                ++report.detected;
        }
    return report;
}

std::vector<ExtVector> enumerate_block_code(const SubfieldFactorization& factz) {
    const FieldTower& f = *factz.tower;
    return enumerate_over(subfield_elements(f, factz.s), factz.s,
                          [&](const ExtVector& x) { return annihilated_by(f, factz.A, x); });
}

std::vector<ExtVector> enumerate_subfield_kernel(const SubfieldFactorization& factz) {
    const FieldTower& f = *factz.tower;
    const ExtMatrix h = factz.parity_check();
    return enumerate_over(subfield_elements(f, factz.s), h.cols(),
                          [&](const ExtVector& x) { return annihilated_by(f, h, x); });
}

Rational subfield_success_probability(std::uint32_t q, std::size_t n, std::size_t s, std::size_t c, std::size_t t) {
    if (s == 0 || n % s != 0) throw std::invalid_argument("s must divide n");
    const std::vector<std::size_t> dims(n / s, s);
    return success_probability_exact(q, dims, c, t);
}

}  // namespace rankcodes
