#include "rankcodes/field.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace rankcodes {

namespace {

thread_local std::uint64_t mul_counter = 0;

constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;
constexpr std::uint64_t kForcedTableLimit = std::uint64_t{1} << 24;

using Poly = std::vector<Digit>;  // low to high, trimmed

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d) continue;
        out.push_back(d);
        while (v % d == 0) v /= d;
    }
    if (v > 1) out.push_back(v);
    return out;
}

Poly poly_mod(Poly a, const Poly& m, const PrimeField& f) {
    trim(a);
    const Digit lead_inv = f.inv(m.back());
    while (a.size() >= m.size()) {
        const Digit c = f.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, const PrimeField& f) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    trim(r);
    return r;
}

Poly poly_sub(Poly a, const Poly& b, const PrimeField& f) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
    trim(a);
    return a;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, const PrimeField& f) {
    Poly result{1};
    base = poly_mod(std::move(base), m, f);
    while (e) {
        if (e & 1) result = poly_mod(poly_mul(result, base, f), m, f);
        base = poly_mod(poly_mul(base, base, f), m, f);
        e >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, const PrimeField& f) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, f);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^{q^k} mod m
Poly frobenius_of_x(std::uint32_t q, int k, const Poly& m, const PrimeField& f) {
    Poly h = poly_mod(Poly{0, 1}, m, f);
    for (int i = 0; i < k; ++i) h = poly_powmod(h, q, m, f);
    return h;
}

std::uint64_t checked_order(std::uint32_t q, int n) {
    if (n < 1) throw std::invalid_argument("extension degree must be positive");
    std::uint64_t order = 1;
    for (int i = 0; i < n; ++i) {
        if (order > std::numeric_limits<std::uint64_t>::max() / q)
            throw std::invalid_argument("q^n must fit in 64 bits");
        order *= q;
    }
    return order;
}

}  // namespace

std::uint64_t field_mul_count() noexcept { return mul_counter; }
void reset_field_mul_count() noexcept { mul_counter = 0; }

bool is_irreducible(std::uint32_t q, std::span<const Digit> monic) {
    const PrimeField f(q);
    Poly m(monic.begin(), monic.end());
    trim(m);
    if (m.size() < 2 || m.back() != 1) return false;
    const int n = static_cast<int>(m.size()) - 1;
    if (n == 1) return true;
    if (m[0] == 0) return false;
    const Poly x{0, 1};
    if (frobenius_of_x(q, n, m, f) != x) return false;
    for (auto p : prime_factors(static_cast<std::uint64_t>(n))) {
        const Poly h = poly_sub(frobenius_of_x(q, n / static_cast<int>(p), m, f), x, f);
        if (poly_gcd(h, m, f).size() != 1) return false;
    }
    return true;
}

std::vector<Digit> default_modulus(std::uint32_t q, int n) {
    const std::uint64_t order = checked_order(q, n);
    const PrimeField f(q);
    for (std::uint64_t v = 1; v < order; ++v) {
        std::vector<Digit> coeffs(static_cast<std::size_t>(n) + 1, 0);
        std::uint64_t w = v;
        for (int i = 0; i < n; ++i, w /= q) coeffs[static_cast<std::size_t>(i)] = static_cast<Digit>(w % q);
        coeffs.back() = 1;
        if (n > 1 && coeffs[0] == 0) continue;
        if (is_irreducible(q, coeffs)) return coeffs;
    }
    throw std::logic_error("no irreducible polynomial found");
}

FieldTower::FieldTower(std::uint32_t q, int n, Arithmetic mode)
    : FieldTower(q, n, default_modulus(q, n), mode) {}

FieldTower::FieldTower(std::uint32_t q, int n, std::vector<Digit> modulus, Arithmetic mode)
    : base_(q), n_(n), order_(checked_order(q, n)), modulus_(std::move(modulus)) {
    if (modulus_.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("modulus must have n+1 coefficients (low to high)");
    for (auto c : modulus_)
        if (c >= q) throw std::invalid_argument("modulus coefficient out of range");
    if (modulus_.back() != 1) throw std::invalid_argument("modulus must be monic");
    if (!is_irreducible(q, modulus_)) throw std::invalid_argument("modulus is not irreducible over GF(q)");
    if (q == 2)
        for (int i = 0; i < n; ++i)
            if (modulus_[static_cast<std::size_t>(i)]) reduction_mask_ |= std::uint64_t{1} << i;

    const bool tables = mode == Arithmetic::Tables || (mode == Arithmetic::Automatic && order_ <= kTableLimit);
    if (tables) {
        if (order_ > kForcedTableLimit) throw std::invalid_argument("field too large for table arithmetic");
        build_tables();
    }
    build_frobenius();
}

void FieldTower::build_tables() {
    const std::uint64_t group = order_ - 1;
    const auto factors = prime_factors(group);
    Fqn g{1};
    for (std::uint64_t cand = (order_ == 2 ? 1 : 2); cand < order_; ++cand) {
        bool primitive = true;
        for (auto p : factors) {
            Fqn r{1}, b{cand};
            std::uint64_t e = group / p;
            while (e) {
                if (e & 1) r = mul_polynomial(r, b);
                b = mul_polynomial(b, b);
                e >>= 1;
            }
            if (r.value == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g = Fqn{cand};
            break;
        }
    }
    exp_.assign(2 * group, 0);
    log_.assign(order_, 0);
    Fqn x{1};
    for (std::uint64_t i = 0; i < group; ++i) {
        exp_[i] = exp_[i + group] = static_cast<std::uint32_t>(x.value);
        log_[x.value] = static_cast<std::uint32_t>(i);
        x = mul_polynomial(x, g);
    }
    if (x.value != 1) throw std::logic_error("table construction: generator order mismatch");
    q_power_mod_.assign(static_cast<std::size_t>(n_), 0);
    std::uint64_t p = 1 % group;
    for (int i = 0; i < n_; ++i) {
        q_power_mod_[static_cast<std::size_t>(i)] = group == 1 ? 0 : p;
        p = group == 1 ? 0 : p * q() % group;
    }
}

void FieldTower::build_frobenius() {
    frobenius_images_.assign(static_cast<std::size_t>(n_), std::vector<Fqn>(static_cast<std::size_t>(n_)));
    Fqn basis_elem{1};
    const Fqn alpha = generator();
    for (int j = 0; j < n_; ++j) {
        Fqn img = basis_elem;
        for (int i = 0; i < n_; ++i) {
            frobenius_images_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = img;
            // img <- img^q
            Fqn r{1}, b = img;
            std::uint64_t e = q();
            while (e) {
                if (e & 1) r = mul_polynomial(r, b);
                b = mul_polynomial(b, b);
                e >>= 1;
            }
            img = r;
        }
        basis_elem = mul_polynomial(basis_elem, alpha);
    }
}

Fqn FieldTower::generator() const {
    if (n_ == 1) return Fqn{base_.neg(modulus_[0])};
    return Fqn{q()};
}

Fqn FieldTower::element(std::uint64_t value) const {
    if (value >= order_)
        throw std::out_of_range("element " + std::to_string(value) + " outside GF(" + std::to_string(q()) + "^" +
                                std::to_string(n_) + ")");
    return Fqn{value};
}

Fqn FieldTower::add(Fqn a, Fqn b) const noexcept {
    const std::uint32_t q = this->q();
    if (q == 2) return Fqn{a.value ^ b.value};
    std::uint64_t r = 0, place = 1, x = a.value, y = b.value;
    for (int i = 0; i < n_; ++i) {
        r += base_.add(static_cast<Digit>(x % q), static_cast<Digit>(y % q)) * place;
        x /= q;
        y /= q;
        place *= q;
    }
    return Fqn{r};
}

Fqn FieldTower::sub(Fqn a, Fqn b) const noexcept {
    const std::uint32_t q = this->q();
    if (q == 2) return Fqn{a.value ^ b.value};
    std::uint64_t r = 0, place = 1, x = a.value, y = b.value;
    for (int i = 0; i < n_; ++i) {
        r += base_.sub(static_cast<Digit>(x % q), static_cast<Digit>(y % q)) * place;
        x /= q;
        y /= q;
        place *= q;
    }
    return Fqn{r};
}

Fqn FieldTower::neg(Fqn a) const noexcept { return sub(Fqn{0}, a); }

Fqn FieldTower::scale(Fqn a, Digit c) const noexcept {
    const std::uint32_t q = this->q();
    if (c == 0) return Fqn{0};
    if (c == 1) return a;
    std::uint64_t r = 0, place = 1, x = a.value;
    for (int i = 0; i < n_; ++i) {
        r += base_.mul(static_cast<Digit>(x % q), c) * place;
        x /= q;
        place *= q;
    }
    return Fqn{r};
}

Fqn FieldTower::mul(Fqn a, Fqn b) const noexcept {
    ++mul_counter;
    if (a.value == 0 || b.value == 0) return Fqn{0};
    if (!exp_.empty()) return Fqn{exp_[static_cast<std::size_t>(log_[a.value]) + log_[b.value]]};
    return mul_polynomial(a, b);
}

Fqn FieldTower::mul_polynomial(Fqn a, Fqn b) const noexcept {
    if (q() == 2) {
        std::uint64_t r = 0, x = a.value, y = b.value;
        const std::uint64_t top = std::uint64_t{1} << (n_ - 1);
        for (int i = 0; i < n_ && y; ++i, y >>= 1) {
            if (y & 1) r ^= x;
            const bool carry = (x & top) != 0;
            x = (x << 1) & ((top << 1) - 1);
            if (carry) x ^= reduction_mask_;
        }
        return Fqn{r};
    }
    const auto da = digits(a);
    const auto db = digits(b);
    const auto n = static_cast<std::size_t>(n_);
    const std::uint64_t q = this->q();
    std::vector<std::uint64_t> prod(2 * n - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!da[i]) continue;
        for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % q;
    }
    for (std::size_t k = 2 * n - 2; k >= n; --k) {
        const std::uint64_t c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        // x^k = x^{k-n} * x^n and x^n = -(m_0 + ... + m_{n-1} x^{n-1})
        for (std::size_t j = 0; j < n; ++j) prod[k - n + j] = (prod[k - n + j] + (q - c) * modulus_[j]) % q;
    }
    DigitVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Digit>(prod[i]);
    return from_digits(out);
}

Fqn FieldTower::inv(Fqn a) const {
    if (a.value == 0) throw std::domain_error("inverse of zero in GF(q^n)");
    if (!exp_.empty()) {
        const std::uint64_t group = order_ - 1;
        return Fqn{exp_[(group - log_[a.value]) % group]};
    }
    return inv_polynomial(a);
}

Fqn FieldTower::inv_polynomial(Fqn a) const {
    // Extended Euclid: find s with s*a = 1 mod modulus.
    const PrimeField& f = base_;
    Poly r0(modulus_.begin(), modulus_.end()), r1 = digits(a);
    trim(r1);
    Poly s0{}, s1{1};
    while (!r1.empty()) {
        // r0 = quot * r1 + rem
        Poly rem = r0;
        Poly quot(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
        const Digit lead_inv = f.inv(r1.back());
        while (rem.size() >= r1.size()) {
            const Digit c = f.mul(rem.back(), lead_inv);
            const std::size_t shift = rem.size() - r1.size();
            quot[shift] = c;
            for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] = f.sub(rem[shift + i], f.mul(c, r1[i]));
            trim(rem);
        }
        trim(quot);
        Poly s2 = poly_sub(s0, poly_mul(quot, s1, f), f);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant
    const Digit c = f.inv(r0[0]);
    Poly s = poly_mod(s0, Poly(modulus_.begin(), modulus_.end()), f);
    for (auto& d : s) d = f.mul(d, c);
    s.resize(static_cast<std::size_t>(n_), 0);
    return from_digits(s);
}

Fqn FieldTower::pow(Fqn a, std::uint64_t e) const noexcept {
    Fqn r{1};
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fqn FieldTower::frobenius(Fqn x, long long i) const noexcept {
    long long k = i % n_;
    if (k < 0) k += n_;
    if (k == 0 || x.value == 0) return x;
    const auto idx = static_cast<std::size_t>(k);
    if (!exp_.empty()) {
        const std::uint64_t group = order_ - 1;
        return Fqn{exp_[(std::uint64_t{log_[x.value]} * q_power_mod_[idx]) % group]};
    }
    const auto& images = frobenius_images_[idx];
    Fqn r{0};
    if (q() == 2) {
        std::uint64_t v = x.value;
        for (std::size_t j = 0; v; ++j, v >>= 1)
            if (v & 1) r.value ^= images[j].value;
        return r;
    }
    const auto d = digits(x);
    for (std::size_t j = 0; j < d.size(); ++j)
        if (d[j]) r = add(r, scale(images[j], d[j]));
    return r;
}

DigitVector FieldTower::digits(Fqn x) const {
    DigitVector out(static_cast<std::size_t>(n_));
    std::uint64_t v = x.value;
    const std::uint32_t q = this->q();
    for (auto& d : out) {
        d = static_cast<Digit>(v % q);
        v /= q;
    }
    return out;
}

Fqn FieldTower::from_digits(std::span<const Digit> digits) const {
    if (digits.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("from_digits: expected n digits");
    std::uint64_t v = 0;
    for (std::size_t i = digits.size(); i-- > 0;) v = v * q() + digits[i] % q();
    return Fqn{v};
}

Basis::Basis(const FieldTower& tower, std::vector<Fqn> elements)
    : q_(tower.q()), n_(tower.degree()), elements_(std::move(elements)) {
    const auto n = static_cast<std::size_t>(n_);
    if (elements_.size() != n) throw std::invalid_argument("basis must have exactly n elements");
    to_polynomial_ = QMatrix(q_, n, n);
    for (std::size_t j = 0; j < n; ++j) to_polynomial_.set_column(j, tower.digits(elements_[j]));
    auto inv = inverse_q(to_polynomial_);
    if (!inv) throw std::invalid_argument("basis elements are linearly dependent over GF(q)");
    from_polynomial_ = std::move(*inv);
}

Basis Basis::polynomial(const FieldTower& tower) {
    std::vector<Fqn> elems;
    std::uint64_t place = 1;
    for (int i = 0; i < tower.degree(); ++i, place *= tower.q()) elems.push_back(Fqn{place});
    return Basis(tower, std::move(elems));
}

DigitVector Basis::expand(Fqn x) const {
    DigitVector d(static_cast<std::size_t>(n_));
    std::uint64_t v = x.value;
    for (auto& digit : d) {
        digit = static_cast<Digit>(v % q_);
        v /= q_;
    }
    return multiply(from_polynomial_, d);
}

Fqn Basis::contract(std::span<const Digit> coordinates) const {
    const DigitVector d = multiply(to_polynomial_, coordinates);
    std::uint64_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * q_ + d[i];
    return Fqn{v};
}

}  // namespace rankcodes
