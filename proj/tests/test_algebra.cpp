#include <doctest.h>

#include <algorithm>
#include <random>

#include "sudoku/algebra.hpp"
#include "sudoku/incidence.hpp"

using namespace sudoku;

TEST_CASE("identity element and M expression match their matrices") {
    for (Shape sh : {Shape(2, 2), Shape(2, 3)}) {
        auto R = relation_table(sh);
        Eigen::MatrixXd I = element_to_matrix(sh, identity_element(), R);
        CHECK(I == Eigen::MatrixXd::Identity(sh.edge_count(), sh.edge_count()));
        Eigen::MatrixXd Mel = element_to_matrix(sh, express_M(sh), R);
        CHECK(Mel == build_M(sh));
    }
}

TEST_CASE("structure table reproduces matrix products") {
    Shape sh(2, 3);
    StructureTable st(sh);
    auto R = relation_table(sh);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> rel(1, 69);
    for (int trial = 0; trial < 8; ++trial) {
        AlgebraElement a = zero_element(), b = zero_element();
        for (int t = 0; t < 5; ++t) {
            a[rel(rng)] += coef(rng);
            b[rel(rng)] += coef(rng);
        }
        Eigen::MatrixXd want =
            element_to_matrix(sh, a, R) * element_to_matrix(sh, b, R);
        Eigen::MatrixXd got = element_to_matrix(sh, st.multiply(a, b), R);
        CHECK((want - got).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("symbolic structure constants extrapolate beyond the grid") {
    static SymbolicStructureConstants sc = compute_structure_constants();
    // (2,5) is outside the interpolation grid; the entries are polynomial
    // of degree <= 2 in each of h and w, so the fit must still be exact
    Shape sh(2, 5);
    StructureTable st(sh);
    for (const auto& [key, poly] : sc.p) {
        auto [i, j, k] = key;
        CHECK(Rat(st.p(i, j, k)) == poly.eval(sh.h, sh.w));
    }
    // and nothing nonzero is missing from the symbolic table
    long long missing = 0;
    for (int i = 1; i <= 69; ++i)
        for (int j = 1; j <= 69; ++j)
            for (int k = 1; k <= 69; ++k)
                if (st.p(i, j, k) != 0 && !sc.p.count({i, j, k})) ++missing;
    CHECK(missing == 0);
}

TEST_CASE("exact infinity norm agrees with the dense matrix") {
    Shape sh(2, 3);
    auto R = relation_table(sh);
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> rel(1, 69);
    AlgebraElement a = zero_element();
    for (int t = 0; t < 10; ++t) a[rel(rng)] += Rat(rel(rng) - 35, 7);
    Eigen::MatrixXd A = element_to_matrix(sh, a, R);
    double dense = A.cwiseAbs().rowwise().sum().maxCoeff();
    CHECK(to_double(element_infinity_norm(sh, a)) ==
          doctest::Approx(dense).epsilon(1e-12));
}

TEST_CASE("structure constant export emits one line per entry") {
    static SymbolicStructureConstants sc = compute_structure_constants();
    std::string txt = export_structure_constants(sc);
    CHECK((size_t)std::count(txt.begin(), txt.end(), '\n') == sc.p.size());
}
