#pragma once

#include <array>
#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "sudoku/relations.hpp"

namespace sudoku {

// Element of the adjacency algebra: sum c_r * A_r, coefficients indexed
// 1..69 (index 0 unused).
using AlgebraElement = std::array<Rat, 70>;

AlgebraElement zero_element();
AlgebraElement identity_element();  // A_1 + A_16 + A_32 + A_62

// M = hw(A1+A16+A32+A62) + w(A46+A50) + h(A54+A58)
//     + A10+A13+A22+A25+A28+A30+A38+A42
AlgebraElement express_M(const Shape& sh);

// Structure constants of the coherent configuration at a concrete shape:
// A_i A_j = sum_k p[i][j][k] A_k.
class StructureTable {
public:
    explicit StructureTable(const Shape& sh);

    const Shape& shape() const { return shape_; }
    long long p(int i, int j, int k) const { return p_[(i * 70 + j) * 70 + k]; }

    AlgebraElement multiply(const AlgebraElement& a,
                            const AlgebraElement& b) const;

private:
    Shape shape_;
    std::vector<long long> p_;  // 70*70*70 dense
};

// Symbolic structure constants p_{ij}^k as polynomials in (h,w), obtained
// by exact interpolation over the 9-point grid (h,w) in {2,3,4}^2 in the
// monomial basis {1,h,w,h^2,hw,w^2,h^2w,hw^2,h^2w^2}.
struct SymbolicStructureConstants {
    // only nonzero entries are stored
    std::map<std::tuple<int, int, int>, Poly2> p;
};

SymbolicStructureConstants compute_structure_constants();

// Plain-text export, one line per nonzero triple:
// i j k c1 ch cw ch2 chw cw2 ch2w chw2 ch2w2
std::string export_structure_constants(const SymbolicStructureConstants& sc);

// Dense matrix of an element (double precision), using a relation table.
Eigen::MatrixXd element_to_matrix(const Shape& sh, const AlgebraElement& a,
                                  const std::vector<std::vector<int16_t>>& R);

// Exact infinity norm of the element's matrix: max over the four
// edge-type sections of sum |c_r| * d_r.
Rat element_infinity_norm(const Shape& sh, const AlgebraElement& a);

}  // namespace sudoku
