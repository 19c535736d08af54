#pragma once

#include <array>
#include <map>
#include <vector>

#include "sudoku/rational.hpp"
#include "sudoku/shape.hpp"

namespace sudoku {

// Small exact polynomials in (h,w); degree stays <= 2 in each variable
// for everything this project needs.
class Poly2 {
public:
    Poly2() = default;
    /* implicit */ Poly2(long long c) {
        if (c != 0) coef_[{0, 0}] = c;
    }
    /* implicit */ Poly2(const Rat& c) {
        if (c != 0) coef_[{0, 0}] = c;
    }
    static Poly2 h() { return monomial(1, 0); }
    static Poly2 w() { return monomial(0, 1); }
    static Poly2 monomial(int dh, int dw, Rat c = 1) {
        Poly2 p;
        if (c != 0) p.coef_[{dh, dw}] = std::move(c);
        return p;
    }

    Poly2 operator+(const Poly2& o) const;
    Poly2 operator-(const Poly2& o) const;
    Poly2 operator*(const Poly2& o) const;
    bool operator==(const Poly2& o) const { return coef_ == o.coef_; }

    Rat eval(int hh, int ww) const;
    bool is_zero() const { return coef_.empty(); }
    const std::map<std::pair<int, int>, Rat>& coefficients() const {
        return coef_;
    }
    std::string str() const;

private:
    std::map<std::pair<int, int>, Rat> coef_;  // (deg_h, deg_w) -> coefficient
};

// Relation id in 1..69 of the ordered edge pair (e,f), global indices.
// Ids 1/16/32/62 are the diagonal relations of the four edge types.
int classify_pair(const Shape& sh, int e, int f);

inline int classify_pair(const Shape& sh, const EdgeId& e, const EdgeId& f) {
    return classify_pair(sh, edge_index(sh, e), edge_index(sh, f));
}

// First edge type of every pair in relation r (the "section" of the row).
EdgeType relation_section(int r);

// Transpose-paired id: (e,f) in R_r  <=>  (f,e) in R_{transpose}.
int relation_transpose(int r);

// d_r as a polynomial in (h,w): the nonzero row sums of A_r.
const std::array<Poly2, 70>& degree_table();

// The same table transcribed from the published degree list; used to pin
// the canonical enumeration (ids chosen so the two agree symbolically).
const std::array<Poly2, 70>& published_degree_table();

// R[e][f] = relation id for all pairs; 4n^2 x 4n^2, int16 entries.
std::vector<std::vector<int16_t>> relation_table(const Shape& sh);

// 0/1 adjacency matrix A_r as a list of row-index vectors is overkill at
// desk scale; a dense byte matrix is returned instead.
std::vector<std::vector<char>> relation_matrix(const Shape& sh, int r);

}  // namespace sudoku
