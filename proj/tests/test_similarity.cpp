#include <doctest.h>

#include <string>
#include <vector>

#include "lzjd/errors.hpp"
#include "lzjd/eval/rng.hpp"
#include "lzjd/similarity.hpp"

using lzjd::digest;
using lzjd::eval::rng;

namespace {

digest make_digest(std::vector<std::uint32_t> values, std::string name = "d",
                   std::uint64_t length = 100, std::uint32_t k = 1024,
                   std::uint32_t seed = 0) {
    digest d;
    d.name = std::move(name);
    d.input_length = length;
    d.k_configured = k;
    d.seed = seed;
    d.values = std::move(values);
    return d;
}

digest random_digest(rng& r, std::size_t n) {
    // strictly ascending by construction
    std::vector<std::uint32_t> v;
    std::uint32_t cur = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cur += 1 + static_cast<std::uint32_t>(r.below(1000));
        v.push_back(cur);
    }
    return make_digest(std::move(v));
}

} // namespace

TEST_SUITE("similarity") {

TEST_CASE("intersection_size walks two sorted lists") {
    using lzjd::intersection_size;
    const std::vector<std::uint32_t> empty;
    const std::vector<std::uint32_t> a{1, 2, 3};
    const std::vector<std::uint32_t> b{2, 3, 4};
    const std::vector<std::uint32_t> c{10, 20};

    CHECK(intersection_size(empty, empty) == 0u);
    CHECK(intersection_size(a, empty) == 0u);
    CHECK(intersection_size(a, b) == 2u);
    CHECK(intersection_size(a, a) == 3u);
    CHECK(intersection_size(a, c) == 0u);
    CHECK(intersection_size(std::vector<std::uint32_t>{2}, b) == 1u);
}

TEST_CASE("jaccard on shared and disjoint digests") {
    const digest a = make_digest({1, 2, 3});
    const digest b = make_digest({2, 3, 4});
    const digest c = make_digest({10, 20, 30});
    const digest e = make_digest({});

    CHECK(lzjd::jaccard(a, b) == doctest::Approx(0.5));
    CHECK(lzjd::jaccard(a, a) == 1.0);
    CHECK(lzjd::jaccard(a, c) == 0.0);
    CHECK(lzjd::jaccard(e, e) == 0.0); // no shared content, no similarity
    CHECK(lzjd::jaccard(a, e) == 0.0);
}

TEST_CASE("score scales jaccard to 0..100 and rounds halves up") {
    const digest a = make_digest({1, 2, 3});
    const digest b = make_digest({2, 3, 4});
    CHECK(lzjd::score(a, b) == 50);
    CHECK(lzjd::score(a, a) == 100);
    CHECK(lzjd::score(make_digest({}), make_digest({})) == 0);

    // 1/200 = 0.5% rounds up to 1
    std::vector<std::uint32_t> wide_a, wide_b;
    for (std::uint32_t i = 0; i < 100; ++i)
        wide_a.push_back(i * 2 + 2); // 2,4,...,200
    wide_b.push_back(2);
    for (std::uint32_t i = 0; i < 100; ++i)
        wide_b.push_back(1000 + i);
    CHECK(lzjd::score(make_digest(wide_a), make_digest(wide_b)) == 1);

    // 1/205 = 0.49% rounds down to 0
    std::vector<std::uint32_t> wider_b{2};
    for (std::uint32_t i = 0; i < 105; ++i)
        wider_b.push_back(1000 + i);
    CHECK(lzjd::score(make_digest(wide_a), make_digest(wider_b)) == 0);

    // 1/8 = 12.5% rounds half away from zero to 13
    const digest h1 = make_digest({1, 2, 3, 4, 5});
    const digest h2 = make_digest({5, 6, 7, 8});
    CHECK(lzjd::score(h1, h2) == 13);
}

TEST_CASE("mismatched parameters are an error, not a zero") {
    const digest a = make_digest({1, 2}, "first", 100, 1024, 0);
    const digest b = make_digest({1, 2}, "second", 100, 512, 0);
    const digest c = make_digest({1, 2}, "third", 100, 1024, 9);

    CHECK_THROWS_AS(lzjd::jaccard(a, b), lzjd::incompatible_digests_error);
    CHECK_THROWS_AS(lzjd::score(a, c), lzjd::incompatible_digests_error);
    CHECK_THROWS_AS(lzjd::compare(a, b), lzjd::incompatible_digests_error);

    try {
        lzjd::jaccard(a, b);
        FAIL("expected incompatible_digests_error");
    } catch (const lzjd::incompatible_digests_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("first") != std::string::npos);
        CHECK(msg.find("second") != std::string::npos);
        CHECK(msg.find("k=1024") != std::string::npos);
        CHECK(msg.find("k=512") != std::string::npos);
    }
}

TEST_CASE("distance behaves like a metric on sampled digests") {
    rng r(404);
    std::vector<digest> pool;
    for (int i = 0; i < 12; ++i)
        pool.push_back(random_digest(r, 50 + r.below(200)));

    for (const digest& d : pool)
        CHECK(lzjd::distance(d, d) == 0.0);

    for (int t = 0; t < 2000; ++t) {
        const digest& x = pool[r.below(pool.size())];
        const digest& y = pool[r.below(pool.size())];
        const digest& z = pool[r.below(pool.size())];
        const double xy = lzjd::distance(x, y);
        const double yx = lzjd::distance(y, x);
        const double xz = lzjd::distance(x, z);
        const double zy = lzjd::distance(z, y);
        REQUIRE(xy == yx);
        REQUIRE(xy >= 0.0);
        REQUIRE(xy <= 1.0);
        REQUIRE(xy <= xz + zy + 1e-12);
    }
}

TEST_CASE("containment is asymmetric and exact on nested digests") {
    const digest small = make_digest({1, 2});
    const digest big = make_digest({1, 2, 3, 4});
    CHECK(lzjd::containment(small, big) == 1.0);
    CHECK(lzjd::containment(big, small) == 0.5);
    CHECK(lzjd::containment(big, make_digest({})) == 0.0);
    CHECK_THROWS_AS(lzjd::containment(make_digest({}), big), lzjd::error);
}

TEST_CASE("adjusted fragment score compensates for the size ratio") {
    // fragment one third the size of the whole: a plain score near 33 should
    // adjust to roughly 100
    const digest frag = make_digest({1, 2, 3}, "frag", 100);
    const digest whole = make_digest({1, 2, 3, 4, 5, 6, 7, 8, 9}, "whole", 300);

    const int plain = lzjd::score(frag, whole); // 3/9 -> 33
    CHECK(plain == 33);

    const auto adjusted = lzjd::adjusted_fragment_score(frag, whole);
    CHECK_FALSE(adjusted.swapped);
    CHECK(adjusted.value == doctest::Approx(99.0));

    const auto reversed = lzjd::adjusted_fragment_score(whole, frag);
    CHECK(reversed.swapped);
    CHECK(reversed.value == adjusted.value);

    // never exceeds 100
    const digest half = make_digest({1, 2, 3, 4}, "half", 100);
    const digest full = make_digest({1, 2, 3, 4, 5}, "full", 200);
    CHECK(lzjd::adjusted_fragment_score(half, full).value == 100.0);

    const digest zero = make_digest({}, "zero", 0);
    CHECK_THROWS_AS(lzjd::adjusted_fragment_score(zero, whole), lzjd::error);
}

TEST_CASE("compare bundles the individual measures") {
    const digest a = make_digest({1, 2, 3}, "a");
    const digest b = make_digest({2, 3, 4}, "b");
    const auto rep = lzjd::compare(a, b);
    CHECK(rep.name_a == "a");
    CHECK(rep.name_b == "b");
    CHECK(rep.score == 50);
    CHECK(rep.jaccard == doctest::Approx(0.5));
    CHECK(rep.containment_a_in_b == doctest::Approx(2.0 / 3.0));

    const auto empty_rep = lzjd::compare(make_digest({}), b);
    CHECK(empty_rep.containment_a_in_b == 0.0);
}

} // TEST_SUITE
