#include <gtest/gtest.h>

#include <random>

#include "lattice/lattice.hpp"

using namespace gjsum::lattice;

namespace {

Matrix make(std::vector<std::vector<long>> rows, std::size_t cols) {
    std::vector<std::vector<Integer>> out;
    for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
    return Matrix::from_rows(out, cols);
}

}  // namespace

TEST(Lattice, HermiteExamples) {
    EXPECT_EQ(hermite_form(make({{2, 0}, {0, 3}, {2, 3}}, 2)), make({{2, 0}, {0, 3}}, 2));
    EXPECT_EQ(hermite_form(make({{4, 6}, {6, 9}}, 2)), make({{2, 3}}, 2));
    EXPECT_EQ(hermite_form(make({{3, 5}, {1, 2}}, 2)), Matrix::identity(2));
    const auto h = hermite_form(make({{-2, 4, 1}, {0, 0, 3}}, 3));
    ASSERT_EQ(h.rows(), 2u);
    EXPECT_EQ(h(0, 0), 2);
    EXPECT_EQ(h(0, 2), 2);  // reduced into [0, 3)
    EXPECT_EQ(h(1, 2), 3);
}

TEST(Lattice, RankKernelCovolume) {
    const auto m = make({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}, 3);
    EXPECT_EQ(rank(m), 2u);
    const auto k = left_kernel(m);
    ASSERT_EQ(k.rows(), 1u);
    const auto zero = k * m;
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(zero(0, j), 0);
    EXPECT_EQ(covolume(make({{2, 1}, {0, 3}}, 2)), 6);
    EXPECT_EQ(covolume(make({{1, 1}, {2, 2}}, 2)), 0);
    EXPECT_EQ(covolume(Matrix(0, 0)), 1);
}

TEST(Lattice, Membership) {
    const auto h = hermite_form(make({{2, 0}, {1, 3}}, 2));
    EXPECT_TRUE(contains(h, std::vector<Integer>{3, 3}));
    EXPECT_TRUE(contains(h, std::vector<Integer>{0, 6}));
    EXPECT_FALSE(contains(h, std::vector<Integer>{1, 0}));
    EXPECT_FALSE(contains(h, std::vector<Integer>{0, 3}));
}

TEST(Lattice, RandomProperties) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> entry(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 1 + trial % 6, cols = 1 + (trial / 6) % 5;
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
        }
        const auto h = hermite_form(m);
        EXPECT_EQ(h.rows(), rank(m));
        for (std::size_t i = 0; i < rows; ++i) EXPECT_TRUE(contains(h, m.row(i)));
        // the Hermite form is a lattice invariant
        Matrix shuffled = m;
        if (rows > 1) {
            shuffled.swap_rows(0, rows - 1);
            shuffled.add_row_multiple(0, 1, 3);
        }
        EXPECT_EQ(hermite_form(shuffled), h);
        const auto k = left_kernel(m);
        EXPECT_EQ(k.rows(), rows - h.rows());
        if (k.rows() > 0) {
            const auto zero = k * m;
            for (std::size_t i = 0; i < zero.rows(); ++i) {
                for (std::size_t j = 0; j < cols; ++j) EXPECT_EQ(zero(i, j), 0);
            }
            EXPECT_EQ(rank(k), k.rows());
        }
    }
}
