#include <doctest.h>

#include "ccmkdv/pfaffian.hpp"
#include "test_support.hpp"

using namespace ccmkdv;
using testsupport::lu_det;
using testsupport::random_skew;

TEST_CASE("pfaffian expansion base cases") {
    SkewMatrix empty(0);
    CHECK(pfaffian_expand(empty) == Cx{1.0, 0.0});

    SkewMatrix two(2);
    two.set(0, 1, Cx{3.5, -1.25});
    CHECK(pfaffian_expand(two) == Cx{3.5, -1.25});

    // Pf = a01*a23 - a02*a13 + a03*a12
    const Cx upper[6] = {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}};
    SkewMatrix four = SkewMatrix::from_upper(4, upper);
    CHECK(pfaffian_expand(four).real() == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(pfaffian_ltl(four).real() == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("skew matrix shape errors") {
    CHECK_THROWS_AS(SkewMatrix(3), InvalidConfigError);
    CHECK_THROWS_AS(SkewMatrix(-2), InvalidConfigError);
    CHECK_THROWS_AS(pfaffian_ltl(SkewMatrix(0)), InvalidConfigError);

    auto gen = testsupport::rng(7);
    CHECK_THROWS_AS(pfaffian_expand(random_skew(14, gen)), SizeLimitError);
    // the bound is configurable
    SkewMatrix big = random_skew(14, gen);
    const Cx a = pfaffian_expand(big, 14);
    const Cx b = pfaffian_ltl(big);
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
}

TEST_CASE("block diagonal pfaffian is the product of blocks") {
    SkewMatrix m(4);
    m.set(0, 1, Cx{2.0, 1.0});
    m.set(2, 3, Cx{-0.5, 3.0});
    const Cx expected = Cx{2.0, 1.0} * Cx{-0.5, 3.0};
    CHECK(std::abs(pfaffian_expand(m) - expected) < 1e-14);
    CHECK(std::abs(pfaffian_ltl(m) - expected) < 1e-12 * std::abs(expected));
}

TEST_CASE("pfaffian squared equals determinant") {
    auto gen = testsupport::rng(11);
    for (int order : {2, 4, 6, 8, 10, 12}) {
        for (int rep = 0; rep < 8; ++rep) {
            SkewMatrix m = random_skew(order, gen);
            const Cx pf = pfaffian_ltl(m);
            const Cx det = lu_det(m.dense(), order);
            const double scale = std::max(std::abs(pf * pf), std::abs(det));
            CHECK(std::abs(pf * pf - det) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("expansion and elimination agree across orders") {
    auto gen = testsupport::rng(13);
    for (int order = 2; order <= 12; order += 2) {
        for (int rep = 0; rep < 6; ++rep) {
            SkewMatrix m = random_skew(order, gen);
            const Cx a = pfaffian_expand(m);
            const Cx b = pfaffian_ltl(m);
            CHECK(std::abs(a - b) <= 1e-10 * std::max(1e-30, std::abs(a)));
        }
    }
}

TEST_CASE("simultaneous row/column swap negates the pfaffian") {
    auto gen = testsupport::rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        const int order = 2 * (1 + static_cast<int>(gen() % 4));  // 2..8
        SkewMatrix m = random_skew(order, gen);
        int i = static_cast<int>(gen() % order);
        int j = static_cast<int>(gen() % order);
        if (i == j) j = (j + 1) % order;

        SkewMatrix swapped(order);
        auto mapped = [&](int k) { return k == i ? j : (k == j ? i : k); };
        for (int a = 0; a < order; ++a)
            for (int b = a + 1; b < order; ++b) swapped.set(a, b, m.at(mapped(a), mapped(b)));

        const Cx pf = pfaffian_expand(m);
        const Cx pf_swapped = pfaffian_expand(swapped);
        CHECK(std::abs(pf + pf_swapped) <= 1e-12 * std::max(1.0, std::abs(pf)));
    }
}

TEST_CASE("congruence transform: Pf(B A B^T) = det(B) Pf(A)") {
    auto gen = testsupport::rng(19);
    for (int order : {2, 4, 6}) {
        for (int rep = 0; rep < 5; ++rep) {
            SkewMatrix a = random_skew(order, gen);
            std::vector<Cx> b(static_cast<size_t>(order) * order);
            for (auto& v : b) v = testsupport::random_unit_complex(gen);

            // c = b * a * b^T
            std::vector<Cx> ad = a.dense();
            std::vector<Cx> tmp(ad.size(), Cx{0, 0}), cd(ad.size(), Cx{0, 0});
            for (int i = 0; i < order; ++i)
                for (int k = 0; k < order; ++k)
                    for (int j = 0; j < order; ++j)
                        tmp[i * order + j] += b[i * order + k] * ad[k * order + j];
            for (int i = 0; i < order; ++i)
                for (int k = 0; k < order; ++k)
                    for (int j = 0; j < order; ++j)
                        cd[i * order + j] += tmp[i * order + k] * b[j * order + k];

            SkewMatrix c(order);
            for (int i = 0; i < order; ++i)
                for (int j = i + 1; j < order; ++j) c.set(i, j, cd[i * order + j]);

            const Cx lhs = pfaffian_ltl(c);
            const Cx rhs = lu_det(b, order) * pfaffian_ltl(a);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1e-30, std::abs(rhs)));
        }
    }
}

TEST_CASE("elimination handles a structurally singular matrix") {
    SkewMatrix m(4);
    m.set(2, 3, Cx{1.0, 0.0});  // first column identically zero
    CHECK(pfaffian_ltl(m) == Cx{0.0, 0.0});
}
