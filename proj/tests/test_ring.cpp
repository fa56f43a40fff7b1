#include "corpus.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

using namespace iotak;
using iotak::testing::random_poly;

namespace {

const Monomial U{1, 0};
const Monomial V{0, 1};

TEST(Ring, AdditionIsSymmetricDifference) {
    const LaurentPoly p{U, V};
    EXPECT_TRUE((p + p).is_zero());
    EXPECT_EQ(p + LaurentPoly{}, p);
    const LaurentPoly sum = LaurentPoly{Monomial{2, 1}} + LaurentPoly{Monomial{1, 2}};
    EXPECT_EQ(sum, (LaurentPoly{Monomial{1, 2}, Monomial{2, 1}}));
    EXPECT_EQ(sum.terms().front(), (Monomial{1, 2})); // lexicographic order
}

TEST(Ring, Multiplication) {
    const LaurentPoly p{U, V};
    EXPECT_EQ(p * p, (LaurentPoly{Monomial{2, 0}, Monomial{0, 2}}));
    EXPECT_EQ((LaurentPoly{U} * LaurentPoly{Monomial{-1, 0}}), LaurentPoly::one());
    std::mt19937 rng(1);
    for (int k = 0; k < 20; ++k) {
        const auto q = random_poly(rng);
        EXPECT_EQ(LaurentPoly::one() * q, q);
    }
}

TEST(Ring, FromTermsCancelsPairs) {
    EXPECT_TRUE(LaurentPoly::from_terms({U, U}).is_zero());
    EXPECT_EQ(LaurentPoly::from_terms({U, U, U}), LaurentPoly{U});
    EXPECT_EQ(LaurentPoly::from_terms({V, U, V, V}), (LaurentPoly{U, V}));
}

TEST(Ring, FormalDerivativeExamples) {
    EXPECT_EQ(formal_derivative(LaurentPoly{u_hat}, Variable::U), LaurentPoly{V});
    EXPECT_TRUE(formal_derivative(LaurentPoly{Monomial{2, 0}}, Variable::U).is_zero());
    EXPECT_EQ(formal_derivative(LaurentPoly{Monomial{3, 2}}, Variable::U), (LaurentPoly{Monomial{2, 2}}));
    EXPECT_EQ(formal_derivative(LaurentPoly{Monomial{-1, 0}}, Variable::U), (LaurentPoly{Monomial{-2, 0}}));
    EXPECT_EQ(formal_derivative(LaurentPoly{Monomial{4, 3}}, Variable::V), (LaurentPoly{Monomial{4, 2}}));
}

TEST(Ring, SwapExamples) {
    EXPECT_EQ(swap_uv(LaurentPoly{Monomial{2, 1}}), (LaurentPoly{Monomial{1, 2}}));
    EXPECT_EQ(swap_uv(LaurentPoly{u_hat}), LaurentPoly{u_hat});
}

TEST(RingProperties, Leibniz) {
    std::mt19937 rng(7);
    for (int k = 0; k < 300; ++k) {
        const auto p = random_poly(rng);
        const auto q = random_poly(rng);
        for (auto var : {Variable::U, Variable::V}) {
            EXPECT_EQ(formal_derivative(p * q, var),
                      p * formal_derivative(q, var) + formal_derivative(p, var) * q);
            EXPECT_TRUE(formal_derivative(formal_derivative(p, var), var).is_zero());
        }
    }
}

TEST(RingProperties, SwapIsRingAutomorphism) {
    std::mt19937 rng(11);
    for (int k = 0; k < 300; ++k) {
        const auto p = random_poly(rng);
        const auto q = random_poly(rng);
        EXPECT_EQ(swap_uv(p + q), swap_uv(p) + swap_uv(q));
        EXPECT_EQ(swap_uv(p * q), swap_uv(p) * swap_uv(q));
        EXPECT_EQ(swap_uv(swap_uv(p)), p);
        // d/dV corresponds to d/dU across the swap
        EXPECT_EQ(swap_uv(formal_derivative(p, Variable::U)), formal_derivative(swap_uv(p), Variable::V));
    }
}

TEST(RingProperties, CommutativeAssociativeDistributive) {
    std::mt19937 rng(13);
    for (int k = 0; k < 300; ++k) {
        const auto p = random_poly(rng);
        const auto q = random_poly(rng);
        const auto r = random_poly(rng);
        EXPECT_EQ(p * q, q * p);
        EXPECT_EQ((p * q) * r, p * (q * r));
        EXPECT_EQ(p * (q + r), p * q + p * r);
        EXPECT_EQ((p + q) + r, p + (q + r));
    }
}

TEST(RingProperties, CanonicalForm) {
    std::mt19937 rng(17);
    for (int k = 0; k < 200; ++k) {
        const auto p = random_poly(rng, 8);
        const auto &t = p.terms();
        for (std::size_t i = 1; i < t.size(); ++i)
            EXPECT_LT(t[i - 1], t[i]);
    }
}

TEST(Ring, ExponentOverflowIsChecked) {
    const Exponent big = std::numeric_limits<Exponent>::max();
    EXPECT_THROW((void)(Monomial{big, 0} * Monomial{1, 0}), std::overflow_error);
    EXPECT_THROW((void)(Monomial{0, std::numeric_limits<Exponent>::min()} * Monomial{0, -1}), std::overflow_error);
}

TEST(Ring, Printing) {
    EXPECT_EQ(to_string(LaurentPoly{}), "0");
    EXPECT_EQ(to_string(LaurentPoly::one()), "1");
    EXPECT_EQ(to_string(LaurentPoly{Monomial{-1, 2}, U}), "U^-1V^2 + U");
}

} // namespace
