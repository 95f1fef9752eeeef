#include "rankcodes/linpoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "rankcodes/qlinalg.hpp"

namespace rankcodes {

LinearizedPoly::LinearizedPoly(std::vector<Fqn> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

LinearizedPoly LinearizedPoly::identity() { return LinearizedPoly({Fqn{1}}); }

LinearizedPoly LinearizedPoly::monomial(std::size_t p, Fqn coeff) {
    std::vector<Fqn> c(p + 1);
    c[p] = coeff;
    return LinearizedPoly(std::move(c));
}

Fqn eval(const FieldTower& f, const LinearizedPoly& poly, Fqn x) {
    Fqn acc = f.zero();
    const auto& c = poly.coeffs();
    for (std::size_t p = 0; p < c.size(); ++p)
        if (!c[p].is_zero()) acc = f.add(acc, f.mul(c[p], f.frobenius(x, static_cast<long long>(p))));
    return acc;
}

LinearizedPoly add(const FieldTower& f, const LinearizedPoly& a, const LinearizedPoly& b) {
    std::vector<Fqn> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t p = 0; p < c.size(); ++p) c[p] = f.add(a.coeff(p), b.coeff(p));
    return LinearizedPoly(std::move(c));
}

LinearizedPoly sub(const FieldTower& f, const LinearizedPoly& a, const LinearizedPoly& b) {
    std::vector<Fqn> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t p = 0; p < c.size(); ++p) c[p] = f.sub(a.coeff(p), b.coeff(p));
    return LinearizedPoly(std::move(c));
}

LinearizedPoly compose(const FieldTower& f, const LinearizedPoly& a, const LinearizedPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    std::vector<Fqn> c(ac.size() + bc.size() - 1);
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i].is_zero()) continue;
        for (std::size_t j = 0; j < bc.size(); ++j)
            c[i + j] = f.add(c[i + j], f.mul(ac[i], f.frobenius(bc[j], static_cast<long long>(i))));
    }
    return LinearizedPoly(std::move(c));
}

std::vector<Fqn> root_space_basis(const FieldTower& f, const LinearizedPoly& poly) {
    if (poly.is_zero()) throw std::invalid_argument("root space of the zero polynomial is the whole field");
    const auto n = static_cast<std::size_t>(f.degree());
    // Column j: image of the j-th polynomial basis element.
    QMatrix map(f.q(), n, n);
    std::uint64_t place = 1;
    for (std::size_t j = 0; j < n; ++j, place *= f.q()) map.set_column(j, f.digits(eval(f, poly, Fqn{place})));
    std::vector<Fqn> roots;
    for (const auto& v : nullspace_q(map)) roots.push_back(f.from_digits(v));
    return roots;
}

LinearizedPoly subspace_polynomial(const FieldTower& f, std::span<const Fqn> elements) {
    LinearizedPoly sigma = LinearizedPoly::identity();
    for (const Fqn e : elements) {
        const Fqn value = eval(f, sigma, e);
        if (value.is_zero()) continue;  // already in the span
        // sigma <- sigma^{[1]} - value^{q-1} sigma
        const Fqn factor = f.pow(value, f.q() - 1);
        const LinearizedPoly frob_part = compose(f, LinearizedPoly::monomial(1, f.one()), sigma);
        sigma = sub(f, frob_part, compose(f, LinearizedPoly(std::vector<Fqn>{factor}), sigma));
    }
    return sigma;
}

}  // namespace rankcodes
