#include "rankcodes/gabidulin.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "rankcodes/errors.hpp"
#include "rankcodes/linpoly.hpp"

namespace rankcodes {

namespace {

constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 20;

}  // namespace

ExtMatrix moore_matrix(const FieldTower& f, std::span<const Fqn> v, std::size_t rows) {
    if (rows == 0) throw std::invalid_argument("moore_matrix: at least one row required");
    ExtMatrix m(rows, v.size());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = f.frobenius(v[j], static_cast<long long>(i));
    return m;
}

ExtMatrix dual_system(const FieldTower& f, std::span<const Fqn> g, std::size_t k) {
    const std::size_t len = g.size();
    if (k < 1 || k + 1 > len) throw std::invalid_argument("dimension must satisfy 1 <= k <= length-1");
    ExtMatrix m(len - 1, len);
    const long long lowest = -static_cast<long long>(len - k - 1);
    for (std::size_t r = 0; r + 1 < len; ++r)
        for (std::size_t i = 0; i < len; ++i) m(r, i) = f.frobenius(g[i], lowest + static_cast<long long>(r));
    return m;
}

ExtVector compute_dual_vector(const FieldTower& f, std::span<const Fqn> g, std::size_t k) {
    if (g.size() > static_cast<std::size_t>(f.degree()) || rank_of_vector(f, g) != g.size())
        throw std::invalid_argument("generator vector components must be linearly independent over GF(q)");
    const auto kernel = nullspace_ext(f, dual_system(f, g, k));
    if (kernel.size() != 1)
        throw InvariantViolation("dual system kernel has dimension " + std::to_string(kernel.size()) + ", expected 1");
    ExtVector h = kernel.front();
    for (auto x : h)
        if (!x.is_zero()) {
            h = scale(f, f.inv(x), h);
            break;
        }
    if (rank_of_vector(f, h) != h.size()) throw InvariantViolation("dual vector is rank deficient");
    return h;
}

ExtVector canonical_generator_vector(const FieldTower& f, std::size_t length) {
    const auto n = static_cast<std::size_t>(f.degree());
    if (length > n) throw std::invalid_argument("code length cannot exceed the extension degree");
    auto try_candidate = [&](std::uint64_t cand, ExtVector& orbit) {
        for (std::size_t i = 0; i < n; ++i) orbit[i] = f.frobenius(Fqn{cand}, static_cast<long long>(i));
        if (rank_of_vector(f, orbit) != n) return false;
        orbit.resize(length);
        return true;
    };
    ExtVector orbit(n);
    // Scan small values first. When the modulus is a binomial the monomials are Frobenius
    // eigenvectors and the first normal value is the all-ones digit string, so try that next,
    // then seeded random candidates (a constant fraction of the field is normal).
    const std::uint64_t scan = std::min<std::uint64_t>(f.order(), 4096);
    for (std::uint64_t cand = 1; cand < scan; ++cand)
        if (try_candidate(cand, orbit)) return orbit;
    if (try_candidate((f.order() - 1) / (f.q() - 1), orbit))
        return orbit;
    std::mt19937_64 rng(f.order());
    for (int attempt = 0; attempt < 100000; ++attempt)
        if (try_candidate(1 + rng() % (f.order() - 1), orbit)) return orbit;
    throw std::logic_error("no normal basis found");
}

GabidulinCode::GabidulinCode(TowerPtr tower, ExtVector g, ExtVector h, std::size_t k)
    : tower_(std::move(tower)),
      g_(std::move(g)),
      h_(std::move(h)),
      k_(k),
      h_coordinates_(expand_vector(*tower_, h_)) {}

GabidulinCode GabidulinCode::from_generator(TowerPtr tower, ExtVector g, std::size_t k) {
    if (!tower) throw std::invalid_argument("null field tower");
    for (auto x : g)
        if (!tower->contains(x)) throw std::invalid_argument("generator component outside the field");
    ExtVector h = compute_dual_vector(*tower, g, k);
    return GabidulinCode(std::move(tower), std::move(g), std::move(h), k);
}

GabidulinCode GabidulinCode::from_parity(TowerPtr tower, ExtVector h, std::size_t k) {
    if (!tower) throw std::invalid_argument("null field tower");
    for (auto x : h)
        if (!tower->contains(x)) throw std::invalid_argument("parity component outside the field");
    if (k < 1 || k + 1 > h.size()) throw std::invalid_argument("dimension must satisfy 1 <= k <= length-1");
    // The generator/parity relation is symmetric: g is the dual of h with n-k rows.
    ExtVector g = compute_dual_vector(*tower, h, h.size() - k);
    return GabidulinCode(std::move(tower), std::move(g), std::move(h), k);
}

GabidulinCode GabidulinCode::canonical(TowerPtr tower, std::size_t k) {
    if (!tower) throw std::invalid_argument("null field tower");
    auto g = canonical_generator_vector(*tower, static_cast<std::size_t>(tower->degree()));
    return from_generator(std::move(tower), std::move(g), k);
}

ExtMatrix GabidulinCode::generator_matrix() const { return moore_matrix(*tower_, g_, k_); }

ExtMatrix GabidulinCode::parity_check_matrix() const { return moore_matrix(*tower_, h_, min_distance() - 1); }

ExtVector GabidulinCode::encode(std::span<const Fqn> message) const {
    if (message.size() != k_) throw std::invalid_argument("message length must equal k");
    const FieldTower& f = *tower_;
    ExtVector c(length(), f.zero());
    for (std::size_t i = 0; i < k_; ++i) {
        if (message[i].is_zero()) continue;
        for (std::size_t j = 0; j < length(); ++j)
            c[j] = f.add(c[j], f.mul(message[i], f.frobenius(g_[j], static_cast<long long>(i))));
    }
    return c;
}

ExtVector GabidulinCode::syndromes(std::span<const Fqn> y) const {
    if (y.size() != length()) throw std::invalid_argument("received word length must equal n");
    const FieldTower& f = *tower_;
    ExtVector s(min_distance() - 1, f.zero());
    for (std::size_t l = 0; l < s.size(); ++l)
        for (std::size_t i = 0; i < y.size(); ++i)
            if (!y[i].is_zero()) s[l] = f.add(s[l], f.mul(y[i], f.frobenius(h_[i], static_cast<long long>(l))));
    return s;
}

bool GabidulinCode::is_codeword(std::span<const Fqn> y) const { return is_zero(syndromes(y)); }

std::optional<Decoded> GabidulinCode::decode(std::span<const Fqn> y) const {
    const FieldTower& f = *tower_;
    const ExtVector s = syndromes(y);
    if (is_zero(s)) return Decoded{ExtVector(y.begin(), y.end()), ExtVector(y.size(), f.zero()), 0};

    const std::size_t d = min_distance();
    for (std::size_t t = 1; t <= capability(); ++t) {
        // Key equation: sum_{p<t} sigma_p s_{l-p}^{[p]} = -s_{l-t}^{[t]}, l = t..d-2, with sigma_t = 1.
        ExtMatrix key(d - 1 - t, t);
        ExtVector rhs(d - 1 - t);
        for (std::size_t l = t; l + 1 < d; ++l) {
            for (std::size_t p = 0; p < t; ++p) key(l - t, p) = f.frobenius(s[l - p], static_cast<long long>(p));
            rhs[l - t] = f.neg(f.frobenius(s[l - t], static_cast<long long>(t)));
        }
        const auto sol = solve_ext(f, key, rhs);
        if (!sol) continue;
        std::vector<Fqn> sigma = sol->particular;
        sigma.push_back(f.one());
        const auto values = root_space_basis(f, LinearizedPoly(std::move(sigma)));
        if (values.size() != t) continue;

        // s_l^{[-l]} = sum_j E_j^{[-l]} x_j, l = 0..d-2.
        ExtMatrix moore(d - 1, t);
        ExtVector target(d - 1);
        for (std::size_t l = 0; l + 1 < d; ++l) {
            const auto back = -static_cast<long long>(l);
            for (std::size_t j = 0; j < t; ++j) moore(l, j) = f.frobenius(values[j], back);
            target[l] = f.frobenius(s[l], back);
        }
        const auto xs = solve_ext(f, moore, target);
        if (!xs || !xs->nullspace.empty()) continue;

        // x_j = sum_i A_{j,i} h_i; e_i = sum_j E_j A_{j,i}.
        ExtVector e(length(), f.zero());
        bool in_span = true;
        for (std::size_t j = 0; j < t && in_span; ++j) {
            const auto row = parity_coordinates(xs->particular[j]);
            if (!row) {
                in_span = false;
                break;
            }
            for (std::size_t i = 0; i < length(); ++i)
                if ((*row)[i]) e[i] = f.add(e[i], f.scale(values[j], (*row)[i]));
        }
        if (!in_span) continue;
        ExtVector c = sub(f, y, e);
        if (!is_codeword(c)) continue;
        const std::size_t r = rank_of_vector(f, e);
        if (r > capability()) continue;
        return Decoded{std::move(c), std::move(e), r};
    }
    return std::nullopt;
}

std::optional<DigitVector> GabidulinCode::parity_coordinates(Fqn x) const {
    return h_coordinates_.coordinates(tower_->digits(x));
}

std::size_t min_rank_distance_exhaustive(const GabidulinCode& code) {
    const FieldTower& f = code.field();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < code.dimension(); ++i) {
        if (total > kExhaustiveLimit / f.order() + 1) throw std::invalid_argument("code too large for exhaustive search");
        total *= f.order();
    }
    if (total > kExhaustiveLimit) throw std::invalid_argument("code too large for exhaustive search");
    std::size_t best = code.length() + 1;
    ExtVector x(code.dimension(), f.zero());
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        // odometer over GF(q^n)^k
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i].value = (x[i].value + 1) % f.order();
            if (x[i].value != 0) break;
        }
        const std::size_t r = rank_of_vector(f, code.encode(x));
        if (r < best) best = r;
    }
    return best;
}

}  // namespace rankcodes
