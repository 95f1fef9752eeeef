#include <doctest.h>

#include <algorithm>
#include <rankcodes/errors.hpp>
#include <rankcodes/subfield.hpp>

#include "support.hpp"

using namespace rankcodes;

TEST_SUITE("subfield") {

TEST_CASE("embedded subfields") {
    const FieldTower f(2, 6);
    CHECK(subfield_elements(f, 3).size() == 8);
    CHECK(subfield_elements(f, 2).size() == 4);
    CHECK(subfield_elements(f, 1) == ExtVector{Fqn{0}, Fqn{1}});
    CHECK(subfield_elements(f, 6).size() == 64);
    for (auto x : subfield_elements(f, 3)) {
        CHECK(in_subfield(f, 3, x));
        for (auto y : subfield_elements(f, 3)) CHECK(in_subfield(f, 3, f.mul(x, y)));
    }
    const auto a = subfield_basis(f, 3);
    CHECK(a.size() == 3);
    CHECK(a[0] == f.one());
    CHECK(rank_of_vector(f, a) == 3);
    CHECK_THROWS_AS(subfield_elements(f, 4), SubfieldConstraint);

    const auto ext = default_extension_basis(f, 3);
    CHECK(ext == ExtVector{f.one(), f.generator()});
    const auto c = subfield_coordinates(f, 3, ext, f.pow(f.generator(), 11));
    CHECK(f.add(c[0], f.mul(c[1], f.generator())) == f.pow(f.generator(), 11));
}

TEST_CASE("expanding h over the subfield") {
    auto t = testing::tower(2, 6);
    const auto code = GabidulinCode::canonical(t, 4);
    const auto whole = expand_H_over_subfield(code, 6, default_extension_basis(*t, 6));
    CHECK(whole.rows() == 1);
    CHECK(whole.row_vector(0) == code.h());

    const auto ext = default_extension_basis(*t, 3);
    const auto hx = expand_H_over_subfield(code, 3, ext);
    CHECK(hx.rows() == 2);
    CHECK(hx.cols() == 6);
    for (std::size_t j = 0; j < 6; ++j) {
        CHECK(in_subfield(*t, 3, hx(0, j)));
        CHECK(t->add(hx(0, j), t->mul(hx(1, j), ext[1])) == code.h()[j]);
    }
    CHECK(rank_q(expand_over_product_basis(*t, hx, subfield_basis(*t, 3))) == 6);
}

TEST_CASE("factorization of the parity check") {
    auto t = testing::tower(2, 6);
    const auto code = GabidulinCode::canonical(t, 4);
    const auto fz = compute_factorization(code, 3);
    CHECK(fz.d == 3);
    CHECK(fz.blocks() == 2);
    CHECK(rank_q(fz.S) == 6);
    CHECK(fz.T == QMatrix::identity(2, 6));
    CHECK(fz.A.rows() == 2);
    CHECK(fz.A.cols() == 3);

    const ExtMatrix h = fz.parity_check();
    CHECK(h.rows() == 4);
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t j = 0; j < h.cols(); ++j) CHECK(in_subfield(*t, 3, h(r, j)));
    CHECK(rank_ext(*t, h) == 4);

    const auto sub = subfield_subcode(code, fz);
    const auto words = enumerate_subcode_span(sub);
    CHECK(words.size() == 64);
    for (const auto& w : words) CHECK(fz.annihilates(w));
    CHECK(enumerate_subfield_kernel(fz) == words);

    const auto block = enumerate_block_code(fz);
    CHECK(block.size() == 8);
    std::size_t best = 99;
    for (const auto& w : block)
        if (!is_zero(w)) best = std::min(best, rank_of_vector(*t, w));
    CHECK(best == 3);
}

TEST_CASE("uniqueness relative to the pinned choices") {
    auto t = testing::tower(2, 6);
    const auto code = GabidulinCode::canonical(t, 4);
    const auto fz = compute_factorization(code, 3);
    const auto words = enumerate_subcode_span(subfield_subcode(code, fz));
    const auto report = verify_uniqueness(fz, words, 1000);
    CHECK(report.unique);
    CHECK(report.matches);
    CHECK(report.perturbations == 36);
    CHECK(report.detected == 36);
    CHECK(report.ok());

    // another basis of GF(q^n)/GF(q^s) gives another S
    const auto ext = default_extension_basis(*t, 3);
    const auto swapped = compute_factorization(code, 3, ExtVector{ext[1], ext[0]});
    CHECK(swapped.S != fz.S);
    for (const auto& w : words) CHECK(swapped.annihilates(w));
}

TEST_CASE("constraint violations") {
    auto t = testing::tower(2, 6);
    try {
        compute_factorization(GabidulinCode::canonical(t, 4), 4);
        FAIL("expected SubfieldConstraint");
    } catch (const SubfieldConstraint& e) {
        CHECK(e.kind() == SubfieldConstraint::Kind::NotADivisor);
    }
    try {
        compute_factorization(GabidulinCode::canonical(t, 2), 3);
        FAIL("expected SubfieldConstraint");
    } catch (const SubfieldConstraint& e) {
        CHECK(e.kind() == SubfieldConstraint::Kind::DistanceTooLarge);
    }
    CHECK_THROWS_AS(compute_factorization(GabidulinCode::canonical(t, 3), 3), TrivialSubcode);
}

TEST_CASE("ternary instance") {
    auto t = testing::tower(3, 4);
    const auto code = GabidulinCode::canonical(t, 3);
    const auto fz = compute_factorization(code, 2);
    const auto words = enumerate_subcode_span(subfield_subcode(code, fz));
    CHECK(words.size() == 81);
    CHECK(enumerate_subfield_kernel(fz) == words);
    CHECK(verify_uniqueness(fz, words, 1000).ok());
}

TEST_CASE("decoding probability matches the direct-sum formula") {
    for (std::size_t t = 1; t <= 6; ++t) {
        const std::vector<std::size_t> dims{3, 3};
        CHECK(subfield_success_probability(2, 6, 3, 1, t) == success_probability_exact(2, dims, 1, t));
    }
}

}
