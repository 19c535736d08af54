#include <doctest.h>

#include <random>

#include "sudoku/thin_box.hpp"

using namespace sudoku;

namespace {

const ShapeWorkspace& ws62() {
    static ShapeWorkspace ws(Shape(6, 2));
    return ws;
}

LatinRectangle random_rectangle(int m, int n, int per_row, std::mt19937& rng) {
    LatinRectangle P;
    P.m = m;
    P.n = n;
    std::uniform_int_distribution<int> dc(1, n), ds(1, n);
    for (int i = 1; i <= m; ++i)
        for (int t = 0; t < per_row; ++t) {
            int j = dc(rng), k = ds(rng);
            bool clash = P.fill.count({i, j});
            for (const auto& [pos, s] : P.fill)
                if (s == k && (pos.first == i || pos.second == j)) clash = true;
            if (!clash) P.fill[{i, j}] = k;
        }
    return P;
}

// entries concentrated in the top-left bundle corner of a (6,2) grid
PartialSudoku concentrated(int entries, std::mt19937& rng) {
    Shape sh(6, 2);
    PartialSudoku S(sh);
    std::uniform_int_distribution<int> di(1, 6), dj(1, 2), dk(1, sh.n);
    int guard = 0;
    while ((int)S.size() < entries && ++guard < 400)
        S.try_set(di(rng), dj(rng), dk(rng));
    return S;
}

}  // namespace

TEST_CASE("barrier instances are valid puzzles and never complete") {
    for (auto [h, w] : {std::pair<int, int>{2, 2}, {4, 2}, {3, 3}}) {
        PartialSudoku B = barrier_construct(h, w);
        CHECK(B.size() > 0);
        ShapeWorkspace ws(B.shape());
        SolveOutcome out = solve(B, ws);
        CAPTURE(h);
        CAPTURE(w);
        CHECK(out.status != SolveStatus::completed);
    }
    CHECK_THROWS(barrier_construct(2, 3));  // requires h >= w
}

TEST_CASE("extend_rectangle satisfies demands and stays sparse") {
    std::mt19937 rng(31);
    int m = 12, n = 24;
    for (int trial = 0; trial < 50; ++trial) {
        LatinRectangle P = random_rectangle(m, n, 2, rng);
        double eps = rectangle_density(P);
        SymbolDemands dem;
        dem.A.resize(n);
        std::uniform_int_distribution<int> dc(0, n - 1), ds(1, n);
        for (int t = 0; t < 6; ++t) {
            int j = dc(rng);
            if ((int)dem.A[j].size() >= 2) continue;  // |A_j| < delta*m
            int k = ds(rng);
            bool used = false;  // demand must not already sit in column j+1
            for (const auto& [pos, s] : P.fill)
                if (pos.second == j + 1 && s == k) used = true;
            if (!used) dem.A[j].insert(k);
        }
        double delta = 0.15;
        LatinRectangle Q = extend_rectangle(P, dem, eps, delta);
        // (a) contains P
        for (const auto& [pos, s] : P.fill) {
            REQUIRE(Q.fill.count(pos));
            REQUIRE(Q.fill.at(pos) == s);
        }
        // (b) all demands met
        for (int j = 0; j < n; ++j)
            for (int k : dem.A[j]) {
                bool found = false;
                for (const auto& [pos, s] : Q.fill)
                    if (pos.second == j + 1 && s == k) found = true;
                CAPTURE(trial);
                CHECK(found);
            }
        // (c) still a partial latin rectangle
        for (const auto& [pos, s] : Q.fill)
            for (const auto& [pos2, s2] : Q.fill)
                if (pos != pos2 && s == s2)
                    REQUIRE((pos.first != pos2.first &&
                             pos.second != pos2.second));
        // (d) 3(eps+delta)-dense
        CHECK(rectangle_density(Q) <= 3 * (eps + delta) + 1e-12);
    }
}

TEST_CASE("thin pipeline completes a bundle-concentrated instance") {
    const ShapeWorkspace& ws = ws62();
    std::mt19937 rng(5);
    int thin_wins = 0;
    for (int trial = 0; trial < 8; ++trial) {
        PartialSudoku S = concentrated(3, rng);
        SolveOptions plain;
        plain.method = SolveOptions::Method::neumann;
        SolveOutcome rejected = solve(S, ws, plain);
        if (rejected.status != SolveStatus::contraction_failed) continue;
        ThinResult tr = thin_complete(S, ws, SolveOptions{});
        CAPTURE(trial);
        REQUIRE(tr.outcome.status == SolveStatus::completed);
        CHECK(tr.extended.size() >= S.size());
        CHECK(certify(tr.extended, tr.outcome, 1e-8));
        ++thin_wins;
    }
    CHECK(thin_wins > 0);
}

TEST_CASE("thin extension preserves the original entries") {
    const ShapeWorkspace& ws = ws62();
    PartialSudoku S(ws.shape());
    S.set(1, 1, 1);
    S.set(2, 2, 2);
    S.set(3, 1, 3);
    ThinResult tr = thin_complete(S, ws, SolveOptions{});
    REQUIRE(tr.outcome.status == SolveStatus::completed);
    for (const auto& [cell, k] : S.entries())
        CHECK(tr.extended.at(cell.first, cell.second) == k);
}
