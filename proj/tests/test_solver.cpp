#include <doctest.h>

#include <random>

#include "sudoku/solver.hpp"

using namespace sudoku;

namespace {

const ShapeWorkspace& ws33() {
    static ShapeWorkspace ws(Shape(3, 3));
    return ws;
}

PartialSudoku random_puzzle(const Shape& sh, int entries, std::mt19937& rng) {
    PartialSudoku S(sh);
    std::uniform_int_distribution<int> d(1, sh.n);
    int guard = 0;
    while ((int)S.size() < entries && ++guard < 1000)
        S.try_set(d(rng), d(rng), d(rng));
    return S;
}

}  // namespace

TEST_CASE("empty puzzle solves to the uniform completion") {
    const ShapeWorkspace& ws = ws33();
    PartialSudoku S(ws.shape());
    for (auto method :
         {SolveOptions::Method::direct, SolveOptions::Method::neumann}) {
        SolveOptions opts;
        opts.method = method;
        SolveOutcome out = solve(S, ws, opts);
        REQUIRE(out.status == SolveStatus::completed);
        CHECK(out.diag.bound == 0.0);
        for (double v : out.tile_weights)
            CHECK(v == doctest::Approx(1.0 / 9).epsilon(1e-10));
        CHECK(certify(S, out, 1e-8));
    }
}

TEST_CASE("DeltaM rows are nonnegative with row sums 4u") {
    const ShapeWorkspace& ws = ws33();
    std::mt19937 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        PartialSudoku S = random_puzzle(ws.shape(), 4, rng);
        Eigen::MatrixXd dM = build_delta_M(S, ws.M());
        auto mask = edge_mask(S);
        auto u = availability_counts(S);
        int E = ws.shape().edge_count();
        for (int e = 0; e < E; ++e) {
            if (!mask[e]) {
                CHECK(dM.row(e).cwiseAbs().sum() == 0.0);
                continue;
            }
            CHECK(dM.row(e).minCoeff() >= 0.0);
            CHECK(dM.row(e).sum() == 4.0 * u[e]);
        }
    }
}

TEST_CASE("K restricted to G_S is orthogonal to 1 and to M_S") {
    // integer-exact after clearing the common denominator of K
    const ShapeWorkspace& ws = ws33();
    const Shape& sh = ws.shape();
    const AlgebraElement& Kc = ws.projector_set().E[0];
    Int den = 1;
    for (int r = 1; r <= 69; ++r)
        den = boost::multiprecision::lcm(den, denominator(Kc[r]));
    std::vector<long long> kint(70);
    for (int r = 1; r <= 69; ++r)
        kint[r] = (long long)(Int)(Kc[r] * den);
    const auto& R = ws.relations();

    std::mt19937 rng(23);
    std::uniform_int_distribution<int> cnt(0, 8);
    for (int trial = 0; trial < 20; ++trial) {
        PartialSudoku S = random_puzzle(sh, cnt(rng), rng);
        RestrictedSystem rs = build_restricted(S);
        int m = (int)rs.edges.size();
        // K[S] 1 = 0
        for (int a = 0; a < m; ++a) {
            long long s = 0;
            for (int b = 0; b < m; ++b) s += kint[R[rs.edges[a]][rs.edges[b]]];
            REQUIRE(s == 0);
        }
        // K[S] M_S = O
        for (int a = 0; a < m; ++a)
            for (int c = 0; c < m; ++c) {
                long long s = 0;
                for (int b = 0; b < m; ++b)
                    s += kint[R[rs.edges[a]][rs.edges[b]]] *
                         (long long)rs.MS(b, c);
                REQUIRE(s == 0);
            }
    }
}

TEST_CASE("neumann gate rejects what the bound cannot certify") {
    // at n = 9 the rigorous bound exceeds 1 as soon as anything is filled
    // (||Ainv|| * 4u >= 5/3 per unit of availability deficit), so the
    // series is refused while direct elimination still completes
    const ShapeWorkspace& ws = ws33();
    std::mt19937 rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        PartialSudoku S = random_puzzle(ws.shape(), 2, rng);
        SolveOptions nopts;
        nopts.method = SolveOptions::Method::neumann;
        SolveOutcome b = solve(S, ws, nopts);
        CHECK(b.status == SolveStatus::contraction_failed);
        CHECK(b.diag.bound >= 1.0);
        SolveOutcome a = solve(S, ws);
        CHECK(a.status == SolveStatus::completed);
    }
}

TEST_CASE("rational arithmetic reproduces the float solution") {
    ShapeWorkspace ws(Shape(2, 2));
    PartialSudoku S(ws.shape());
    S.set(1, 1, 1);
    SolveOptions fopts, ropts;
    ropts.arith = SolveOptions::Arith::rational;
    SolveOutcome f = solve(S, ws, fopts);
    SolveOutcome r = solve(S, ws, ropts);
    REQUIRE(f.status == SolveStatus::completed);
    REQUIRE(r.status == SolveStatus::completed);
    REQUIRE(f.edge_weights.size() == r.edge_weights.size());
    for (size_t t = 0; t < f.edge_weights.size(); ++t)
        CHECK(f.edge_weights[t] == doctest::Approx(r.edge_weights[t]));
}

TEST_CASE("zero availability is reported as infeasible with the edge") {
    // fill box 1 rows 1-2 with 1..6, then 7,8 and an off-box 9 in row 3:
    // cell (3,3) has no symbol left
    const ShapeWorkspace& ws = ws33();
    PartialSudoku S(ws.shape());
    int k = 0;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 3; ++j) S.set(i, j, ++k);
    S.set(3, 1, 7);
    S.set(3, 2, 8);
    S.set(3, 4, 9);
    SolveOutcome out = solve(S, ws);
    CHECK(out.status == SolveStatus::infeasible);
    CHECK(out.diag.has_zero_edge);
    CHECK(out.diag.zero_edge == EdgeId{RC, 3, 3});
}

TEST_CASE("solution text round trip") {
    const ShapeWorkspace& ws = ws33();
    PartialSudoku S(ws.shape());
    S.set(5, 5, 1);
    SolveOptions opts;
    SolveOutcome out = solve(S, ws, opts);
    REQUIRE(out.status == SolveStatus::completed);
    std::string text = serialize_solution(S, out, opts, ws.eta());
    ParsedSolution ps = parse_solution(text);
    CHECK(ps.header.at("status") == "completed");
    CHECK(ps.header.at("shape") == "3 3");
    CHECK(ps.header.at("eta") == "6");
    REQUIRE(ps.records.size() == out.tiles.size());
    for (size_t t = 0; t < ps.records.size(); ++t) {
        auto [i, j, k, wgt] = ps.records[t];
        CHECK(i == out.tiles[t].i);
        CHECK(j == out.tiles[t].j);
        CHECK(k == out.tiles[t].k);
        CHECK(wgt == doctest::Approx(out.tile_weights[t]).epsilon(1e-10));
    }
}
