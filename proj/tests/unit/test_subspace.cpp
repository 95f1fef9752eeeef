#include <doctest.h>

#include <algorithm>
#include <rankcodes/errors.hpp>
#include <rankcodes/subspace.hpp>

#include "support.hpp"

using namespace rankcodes;

namespace {

SubspaceBasis random_subspace(const TowerPtr& t, std::size_t m, std::mt19937_64& rng) {
    while (true) {
        auto v = random_vector(*t, m, rng);
        if (rank_of_vector(*t, v) == m) return SubspaceBasis(t, v);
    }
}

ExtVector random_in_subspace(const SubspaceBasis& b, std::size_t len, std::mt19937_64& rng) {
    return recompose(b, random_qmatrix(b.field().q(), b.dimension(), len, rng));
}

// (1, a, a^2) in GF(16)
SubspaceBasis small_subspace(const TowerPtr& t, std::size_t m) {
    ExtVector b;
    for (std::size_t i = 0; i < m; ++i) b.push_back(t->pow(t->generator(), i));
    return SubspaceBasis(t, b);
}

}  // namespace

TEST_SUITE("subspace") {

TEST_CASE("decomposition") {
    auto t = testing::tower(2, 6);
    std::mt19937_64 rng(1);
    const auto b = random_subspace(t, 3, rng);
    CHECK(decompose(b, ExtVector(6, t->zero())).is_zero());
    ExtVector c(6, t->zero());
    std::copy(b.elements().begin(), b.elements().end(), c.begin());
    const QMatrix u = decompose(b, c);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(u(i, j) == (i == j ? 1 : 0));
    for (int trial = 0; trial < 100; ++trial) {
        const auto v = random_in_subspace(b, 6, rng);
        CHECK(recompose(b, decompose(b, v)) == v);
    }
    // a component outside V_m is reported with its position
    ExtVector bad(6, t->zero());
    Fqn outside{};
    for (std::uint64_t v = 1; v < t->order(); ++v)
        if (!b.contains(Fqn{v})) {
            outside = Fqn{v};
            break;
        }
    bad[4] = outside;
    try {
        decompose(b, bad);
        FAIL("expected OutsideSubspace");
    } catch (const OutsideSubspace& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(SubspaceBasis(t, {t->one(), t->one()}), std::invalid_argument);
}

TEST_CASE("f_b examples") {
    auto t = testing::tower(2, 8);
    const auto code = GabidulinCode::canonical(t, 4);
    std::mt19937_64 rng(2);
    const SubspaceSubcode sub(code, random_subspace(t, 6, rng));
    CHECK(is_zero(sub.f_b(ExtVector(8, t->zero()))));
    ExtVector c(8, t->zero());
    std::copy(sub.basis().elements().begin(), sub.basis().elements().end(), c.begin());
    const ExtVector hm(code.h().begin(), code.h().begin() + 6);
    CHECK(sub.f_b(c) == hm);
    CHECK(sub.f_b_inv(hm) == c);
    CHECK(is_zero(sub.f_b_inv(ExtVector(6, t->zero()))));
}

TEST_CASE("the bijection is linear, invertible and rank preserving") {
    auto t = testing::tower(2, 12);
    const auto code = GabidulinCode::canonical(t, 8);
    std::mt19937_64 rng(3);
    const SubspaceSubcode sub(code, random_subspace(t, 8, rng));
    for (int trial = 0; trial < 300; ++trial) {
        const auto c = random_in_subspace(sub.basis(), 12, rng);
        const auto c2 = random_in_subspace(sub.basis(), 12, rng);
        const auto v = sub.f_b(c);
        CHECK(rank_of_vector(*t, v) == rank_of_vector(*t, c));
        CHECK(sub.f_b(add(*t, c, c2)) == add(*t, v, sub.f_b(c2)));
        CHECK(sub.f_b_inv(v) == c);
        const auto w = random_vector(*t, 8, rng);
        CHECK(sub.f_b(sub.f_b_inv(w)) == w);
    }
}

TEST_CASE("parent code") {
    auto t = testing::tower(2, 6);
    std::mt19937_64 rng(4);
    // d = 2, m = 2: the parity check is the single row b
    const auto code2 = GabidulinCode::canonical(t, 5);
    const auto b2 = random_subspace(t, 2, rng);
    const ExtMatrix h2 = parent_parity_matrix(code2, b2);
    CHECK(h2.rows() == 1);
    CHECK(h2.row_vector(0) == b2.elements());

    // row spaces of H_{V_m} and of the realized parent code agree
    const auto code = GabidulinCode::canonical(t, 3);
    const auto b = random_subspace(t, 5, rng);
    const auto parent = parent_code(code, b);
    CHECK(parent.length() == 5);
    CHECK(parent.dimension() == 5 - code.min_distance() + 1);
    const ExtMatrix hv = parent_parity_matrix(code, b);
    const ExtMatrix hp = parent.parity_check_matrix();
    ExtMatrix stacked(hv.rows() + hp.rows(), 5);
    for (std::size_t r = 0; r < hv.rows(); ++r)
        for (std::size_t j = 0; j < 5; ++j) stacked(r, j) = hv(r, j);
    for (std::size_t r = 0; r < hp.rows(); ++r)
        for (std::size_t j = 0; j < 5; ++j) stacked(hv.rows() + r, j) = hp(r, j);
    CHECK(rank_ext(*t, hv) == hv.rows());
    CHECK(rank_ext(*t, stacked) == hv.rows());

    CHECK_THROWS_AS(parent_code(code, random_subspace(t, 3, rng)), TrivialSubcode);
    const SubspaceSubcode trivial(code, random_subspace(t, 3, rng));
    CHECK(trivial.is_trivial());
    CHECK(trivial.message_length() == 0);
    CHECK_THROWS_AS(trivial.parent(), TrivialSubcode);
    CHECK_THROWS_AS(trivial.encode(ExtVector{}), TrivialSubcode);
}

TEST_CASE("tiny instance: cardinality, distance and parent image") {
    auto t = testing::tower(2, 4);
    const auto code = GabidulinCode::canonical(t, 2);
    const SubspaceSubcode sub(code, small_subspace(t, 3));
    const auto words = enumerate_subcode(sub);
    CHECK(words.size() == 16);
    CHECK(sub.log_cardinality() == 4);
    std::size_t best = 99;
    for (const auto& w : words) {
        CHECK(sub.contains(w));
        if (!is_zero(w)) best = std::min(best, rank_of_vector(*t, w));
        CHECK(is_zero(multiply(*t, sub.f_b(w), parent_parity_matrix(code, sub.basis()).transposed())));
    }
    CHECK(best == 3);
    CHECK(min_rank_distance_exhaustive(sub.parent()) == 3);

    std::vector<ExtVector> image;
    for (const auto& w : words) image.push_back(sub.f_b(w));
    auto parent_words = enumerate_code(sub.parent());
    std::sort(image.begin(), image.end());
    std::sort(parent_words.begin(), parent_words.end());
    CHECK(image == parent_words);

    CHECK(enumerate_subcode_span(sub) == words);

    // encoding reaches the whole subcode
    std::vector<ExtVector> encoded;
    for (std::uint64_t x = 0; x < 16; ++x) encoded.push_back(sub.encode(ExtVector{Fqn{x}}));
    std::sort(encoded.begin(), encoded.end());
    CHECK(std::adjacent_find(encoded.begin(), encoded.end()) == encoded.end());
    CHECK(encoded == words);

    const SubspaceSubcode small(code, small_subspace(t, 2));
    const auto zero_only = enumerate_subcode(small);
    REQUIRE(zero_only.size() == 1);
    CHECK(is_zero(zero_only[0]));

    const SubspaceSubcode full(code, SubspaceBasis::full_space(t));
    CHECK(enumerate_subcode(full).size() == 256);
}

TEST_CASE("the subcode is additive but not GF(q^n)-linear") {
    auto t = testing::tower(2, 4);
    const auto code = GabidulinCode::canonical(t, 2);
    const SubspaceSubcode sub(code, small_subspace(t, 3));
    const auto words = enumerate_subcode(sub);
    for (const auto& a : words)
        for (const auto& b : words) CHECK(std::binary_search(words.begin(), words.end(), add(*t, a, b)));
    bool witness = false;
    for (const auto& w : words)
        for (std::uint64_t l = 2; l < 16 && !witness; ++l) {
            const auto scaled = scale(*t, Fqn{l}, w);
            CHECK(code.is_codeword(scaled));
            if (!sub.contains(scaled)) witness = true;
        }
    CHECK(witness);
}

TEST_CASE("subcode generators agree with the brute-force filter") {
    std::mt19937_64 rng(6);
    auto t = testing::tower(2, 4);
    const auto code = GabidulinCode::canonical(t, 2);
    for (int trial = 0; trial < 10; ++trial) {
        const SubspaceSubcode sub(code, random_subspace(t, 3, rng));
        CHECK(enumerate_subcode_span(sub) == enumerate_subcode(sub));
    }
    auto t3 = testing::tower(3, 3);
    const auto code3 = GabidulinCode::canonical(t3, 2);
    const SubspaceSubcode sub3(code3, random_subspace(t3, 2, rng));
    CHECK(enumerate_subcode_span(sub3) == enumerate_subcode(sub3));
    CHECK(enumerate_subcode(sub3).size() == 27);
}

TEST_CASE("both decoding routes agree") {
    auto t = testing::tower(2, 12);
    const auto code = GabidulinCode::canonical(t, 8);
    std::mt19937_64 rng(7);
    const SubspaceSubcode sub(code, random_subspace(t, 8, rng));
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = sub.encode(random_vector(*t, sub.message_length(), rng));
        CHECK(sub.contains(c));
        const std::size_t r = static_cast<std::size_t>(trial) % 3;
        const auto e = random_error(*t, r, sub.basis().elements(), 12, ErrorMode::ExactRank, rng);
        const auto y = add(*t, c, e);
        const auto direct = sub.decode(y, DecodeRoute::Direct);
        const auto via = sub.decode(y, DecodeRoute::ViaParent);
        REQUIRE(direct.has_value());
        REQUIRE(via.has_value());
        CHECK(direct->codeword == c);
        CHECK(via->codeword == c);
        CHECK(direct->error == via->error);
    }
    Fqn outside{1};
    while (sub.basis().contains(outside)) ++outside.value;
    CHECK_THROWS_AS(sub.decode(ExtVector(12, outside), DecodeRoute::ViaParent), OutsideSubspace);
}

}
