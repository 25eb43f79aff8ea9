#include "sapc/smith.hpp"

#include "oracle_linalg.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace sapc;

namespace {

struct VerifyGuard {
    VerifyGuard() { smithVerificationEnabled() = true; }
    ~VerifyGuard() { smithVerificationEnabled() = false; }
};

SparseMat randomSparse(std::mt19937& rng, int rows, int cols, double density, int maxAbs)
{
    SparseMat m(rows, cols);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> val(-maxAbs, maxAbs);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            if (coin(rng) < density) {
                int v = val(rng);
                if (v != 0)
                    m.set(i, j, Int(v));
            }
    return m;
}

}  // namespace

TEST_CASE("smith of small fixed matrices")
{
    VerifyGuard guard;

    SECTION("1x1 multiplication by 2")
    {
        SparseMat a = SparseMat::fromDense({{Int(2)}});
        SmithResult s = smith(a, true);
        REQUIRE(s.rank == 1);
        REQUIRE(s.invariantFactors == std::vector<Int>{Int(2)});
    }

    SECTION("diag(2,3) folds to (1,6)")
    {
        SparseMat a = SparseMat::fromDense({{Int(2), Int(0)}, {Int(0), Int(3)}});
        SmithResult s = smith(a, true);
        REQUIRE(s.rank == 2);
        REQUIRE(s.invariantFactors == std::vector<Int>({Int(1), Int(6)}));
    }

    SECTION("zero matrix")
    {
        SparseMat a(3, 4);
        SmithResult s = smith(a, true);
        REQUIRE(s.rank == 0);
        REQUIRE(s.invariantFactors.empty());
    }

    SECTION("classic example with torsion")
    {
        // Z^3 --A--> Z^3 with coker = Z/2 + Z/6 + Z
        SparseMat a = SparseMat::fromDense({
            {Int(2), Int(4), Int(4)},
            {Int(-6), Int(6), Int(12)},
            {Int(10), Int(4), Int(16)},
        });
        SmithResult s = smith(a, true);
        REQUIRE(s.rank == 3);
        REQUIRE(s.invariantFactors == std::vector<Int>({Int(2), Int(2), Int(156)}));
    }
}

TEST_CASE("smith matches rank oracles on random sparse matrices")
{
    VerifyGuard guard;
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 25; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 14);
        int cols = 1 + static_cast<int>(rng() % 14);
        SparseMat a = randomSparse(rng, rows, cols, 0.35, 6);
        SmithResult s = smith(a, true);
        REQUIRE(s.rank == oracle::rationalRank(a));
        // divisibility chain
        for (size_t i = 0; i + 1 < s.invariantFactors.size(); ++i) {
            REQUIRE(s.invariantFactors[i] > 0);
            REQUIRE(s.invariantFactors[i + 1] % s.invariantFactors[i] == 0);
        }
    }
}

TEST_CASE("smith invariant factors detect mod-p rank drops")
{
    VerifyGuard guard;
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + static_cast<int>(rng() % 8);
        SparseMat a = randomSparse(rng, n, n + 2, 0.5, 5);
        SmithResult s = smith(a, true);
        // rank over F_2 = number of odd invariant factors
        int odd = 0;
        for (const Int& d : s.invariantFactors)
            if (d % 2 != 0)
                ++odd;
        REQUIRE(odd == oracle::modPRank(a, 2));
    }
}

TEST_CASE("solveWithSmith recovers solutions and rejects non-solutions")
{
    VerifyGuard guard;
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        int rows = 2 + static_cast<int>(rng() % 8);
        int cols = 2 + static_cast<int>(rng() % 8);
        SparseMat a = randomSparse(rng, rows, cols, 0.45, 4);
        std::vector<Int> x0(cols);
        for (auto& v : x0)
            v = Int(static_cast<int>(rng() % 7) - 3);
        std::vector<Int> b = a.apply(x0);
        SmithResult s = smith(a, true);
        auto x = solveWithSmith(s, a, b);
        REQUIRE(x.has_value());
        REQUIRE(a.apply(*x) == b);
    }

    SparseMat two = SparseMat::fromDense({{Int(2)}});
    SmithResult s = smith(two, true);
    REQUIRE_FALSE(solveWithSmith(s, two, {Int(1)}).has_value());
    REQUIRE(solveWithSmith(s, two, {Int(6)}).value() == std::vector<Int>{Int(3)});
}

TEST_CASE("kernelBasis is a saturated basis of the kernel")
{
    VerifyGuard guard;
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 10; ++trial) {
        int rows = 2 + static_cast<int>(rng() % 6);
        int cols = 3 + static_cast<int>(rng() % 8);
        SparseMat a = randomSparse(rng, rows, cols, 0.4, 4);
        SparseMat k = kernelBasis(a);
        REQUIRE(k.cols() == cols - smith(a).rank);
        REQUIRE(a.multiply(k).isZero());
        if (k.cols() > 0) {
            SmithResult s = smith(k, true);
            REQUIRE(s.rank == k.cols());
            for (const Int& d : s.invariantFactors)
                REQUIRE(d == 1);
        }
    }
}

TEST_CASE("determinant by Bareiss")
{
    SparseMat a = SparseMat::fromDense({
        {Int(1), Int(2), Int(3)},
        {Int(4), Int(5), Int(6)},
        {Int(7), Int(8), Int(10)},
    });
    REQUIRE(determinant(a) == -3);
    REQUIRE(determinant(SparseMat::identity(5)) == 1);
    SparseMat sing = SparseMat::fromDense({{Int(1), Int(2)}, {Int(2), Int(4)}});
    REQUIRE(determinant(sing) == 0);
}

TEST_CASE("entry growth stays exact on an ill-conditioned integer matrix")
{
    VerifyGuard guard;
    // Pascal-style matrix: unimodular, so all invariant factors are 1.
    int n = 10;
    std::vector<std::vector<Int>> d(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == 0 || j == 0)
                d[i][j] = 1;
            else
                d[i][j] = d[i - 1][j] + d[i][j - 1];
        }
    SmithResult s = smith(SparseMat::fromDense(d), true);
    REQUIRE(s.rank == n);
    for (const Int& f : s.invariantFactors)
        REQUIRE(f == 1);
}
