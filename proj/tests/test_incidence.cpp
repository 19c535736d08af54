#include <doctest.h>

#include <algorithm>
#include <random>

#include "sudoku/incidence.hpp"
#include "sudoku/spectral.hpp"

using namespace sudoku;

TEST_CASE("W has n ones per row and 4 per column") {
    Shape sh(2, 3);
    IncidenceW W = build_W(sh);
    REQUIRE((int)W.columns.size() == sh.tile_count());
    std::vector<int> row_ones(sh.edge_count(), 0);
    for (const TileEdges& t : W.columns) {
        ++row_ones[t.rc];
        ++row_ones[t.rs];
        ++row_ones[t.cs];
        ++row_ones[t.bs];
    }
    for (int e = 0; e < sh.edge_count(); ++e) CHECK(row_ones[e] == sh.n);
}

TEST_CASE("the two M constructions agree") {
    for (Shape sh : {Shape(2, 2), Shape(2, 3), Shape(3, 3)}) {
        Eigen::MatrixXd a = build_M(sh, MBuildMethod::product);
        Eigen::MatrixXd b = build_M(sh, MBuildMethod::kronecker_blocks);
        CHECK(a == b);
        // row sums 4n, diagonal n
        for (int e = 0; e < sh.edge_count(); ++e) {
            CHECK(a.row(e).sum() == 4.0 * sh.n);
            CHECK(a(e, e) == (double)sh.n);
        }
    }
}

TEST_CASE("matrix-free apply agrees with the dense product") {
    Shape sh(3, 3);
    Eigen::MatrixXd M = build_M(sh);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd x(sh.edge_count());
        for (int e = 0; e < sh.edge_count(); ++e) x[e] = d(rng);
        Eigen::VectorXd want = M * x;
        Eigen::VectorXd got = apply_M(sh, x);
        CHECK((want - got).cwiseAbs().maxCoeff() < 1e-10);
    }
    // integer variant, exactly
    std::uniform_int_distribution<long long> di(-5, 5);
    std::vector<long long> xi(sh.edge_count());
    for (auto& v : xi) v = di(rng);
    std::vector<long long> yi = apply_M_int(sh, xi);
    Eigen::VectorXd xd(sh.edge_count());
    for (int e = 0; e < sh.edge_count(); ++e) xd[e] = (double)xi[e];
    Eigen::VectorXd yd = M * xd;
    for (int e = 0; e < sh.edge_count(); ++e)
        CHECK((double)yi[e] == yd[e]);
}

TEST_CASE("restricted system of the empty puzzle is M itself") {
    Shape sh(2, 3);
    PartialSudoku S(sh);
    RestrictedSystem rs = build_restricted(S);
    CHECK((int)rs.edges.size() == sh.edge_count());
    CHECK((int)rs.tiles.size() == sh.tile_count());
    CHECK(rs.MS == build_M(sh));
}

TEST_CASE("restricted system drops the deleted edges and dead tiles") {
    Shape sh(2, 3);
    PartialSudoku S(sh);
    S.set(1, 1, 1);
    S.set(2, 3, 4);
    RestrictedSystem rs = build_restricted(S);
    CHECK((int)rs.edges.size() == sh.edge_count() - 8);
    CHECK(rs.MS.rows() == (long)rs.edges.size());
    for (int e : rs.edges) CHECK(rs.edge_pos[e] >= 0);
    for (const Tile& t : rs.tiles) {
        TileEdges te = tile_edges(sh, t.i, t.j, t.k);
        CHECK(rs.edge_pos[te.rc] >= 0);
        CHECK(rs.edge_pos[te.bs] >= 0);
    }
}

TEST_CASE("exact and modular ranks match the closed forms") {
    for (Shape sh : {Shape(2, 2), Shape(2, 3)}) {
        Eigen::MatrixXd M = build_M(sh);
        RankResult exact = rank_and_nullity(M, RankMode::exact_rational);
        CHECK(exact.certified_exact);
        CHECK(exact.rank == rank_formula(sh));
        CHECK(exact.nullity == nullity_formula(sh));
        CHECK(rank_mod_p(M) == rank_formula(sh));
        RankResult num = rank_and_nullity(M, RankMode::numeric);
        CHECK(num.rank == rank_formula(sh));
    }
}

TEST_CASE("triplet export round-trips the entry count") {
    Shape sh(2, 2);
    Eigen::MatrixXd M = build_M(sh);
    std::string txt = export_matrix_triplets(M);
    long long lines = std::count(txt.begin(), txt.end(), '\n');
    long long nnz = 0;
    for (int e = 0; e < sh.edge_count(); ++e)
        for (int f = 0; f < sh.edge_count(); ++f)
            if (M(e, f) != 0) ++nnz;
    CHECK(lines == nnz);
}
