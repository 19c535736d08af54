#include "sudoku/algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace sudoku {

AlgebraElement zero_element() {
    AlgebraElement a;
    a.fill(Rat(0));
    return a;
}

AlgebraElement identity_element() {
    AlgebraElement a = zero_element();
    for (int r : {1, 16, 32, 62}) a[r] = 1;
    return a;
}

AlgebraElement express_M(const Shape& sh) {
    AlgebraElement a = zero_element();
    for (int r : {1, 16, 32, 62}) a[r] = sh.n;
    for (int r : {46, 50}) a[r] = sh.w;
    for (int r : {54, 58}) a[r] = sh.h;
    for (int r : {10, 13, 22, 25, 28, 30, 38, 42}) a[r] = 1;
    return a;
}

StructureTable::StructureTable(const Shape& sh)
    : shape_(sh), p_(70 * 70 * 70, 0) {
    int E = sh.edge_count();
    // one canonical representative (x,z) per relation, then count the
    // middle edge y; coherence makes the count independent of (x,z)
    std::array<std::pair<int, int>, 70> rep;
    std::array<char, 70> seen{};
    int found = 0;
    for (int e = 0; e < E && found < 69; ++e)
        for (int f = 0; f < E && found < 69; ++f) {
            int k = classify_pair(sh, e, f);
            if (!seen[k]) {
                seen[k] = 1;
                rep[k] = {e, f};
                ++found;
            }
        }
    if (found != 69) throw std::logic_error("expected 69 relations");
    for (int k = 1; k <= 69; ++k) {
        auto [x, z] = rep[k];
        for (int y = 0; y < E; ++y) {
            int i = classify_pair(sh, x, y);
            int j = classify_pair(sh, y, z);
            ++p_[(i * 70 + j) * 70 + k];
        }
    }
}

AlgebraElement StructureTable::multiply(const AlgebraElement& a,
                                        const AlgebraElement& b) const {
    AlgebraElement out = zero_element();
    for (int i = 1; i <= 69; ++i) {
        if (a[i] == 0) continue;
        for (int j = 1; j <= 69; ++j) {
            if (b[j] == 0) continue;
            Rat ab = a[i] * b[j];
            const long long* col = &p_[(i * 70 + j) * 70];
            for (int k = 1; k <= 69; ++k)
                if (col[k]) out[k] += ab * col[k];
        }
    }
    return out;
}

SymbolicStructureConstants compute_structure_constants() {
    // values on the 3x3 grid, then exact interpolation
    constexpr int grid[3] = {2, 3, 4};
    std::map<std::tuple<int, int, int>, std::array<long long, 9>> samples;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Shape sh(grid[a], grid[b]);
            StructureTable st(sh);
            for (int i = 1; i <= 69; ++i)
                for (int j = 1; j <= 69; ++j)
                    for (int k = 1; k <= 69; ++k) {
                        long long v = st.p(i, j, k);
                        if (v) samples[{i, j, k}][a * 3 + b] = v;
                    }
        }
    // 9x9 Vandermonde in basis {1,h,w,h2,hw,w2,h2w,hw2,h2w2}, solved once
    // by exact Gaussian elimination
    const int dh[9] = {0, 1, 0, 2, 1, 0, 2, 1, 2};
    const int dw[9] = {0, 0, 1, 0, 1, 2, 1, 2, 2};
    Rat V[9][9];
    for (int r = 0; r < 9; ++r) {
        long long hh = grid[r / 3], ww = grid[r % 3];
        for (int c = 0; c < 9; ++c) {
            Rat t = 1;
            for (int q = 0; q < dh[c]; ++q) t *= hh;
            for (int q = 0; q < dw[c]; ++q) t *= ww;
            V[r][c] = t;
        }
    }
    // LU-style inverse via augmented elimination
    Rat aug[9][18];
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c) {
            aug[r][c] = V[r][c];
            aug[r][9 + c] = (r == c) ? 1 : 0;
        }
    for (int col = 0; col < 9; ++col) {
        int piv = col;
        while (piv < 9 && aug[piv][col] == 0) ++piv;
        if (piv == 9) throw std::logic_error("singular Vandermonde");
        if (piv != col)
            for (int c = 0; c < 18; ++c) std::swap(aug[piv][c], aug[col][c]);
        Rat d = aug[col][col];
        for (int c = 0; c < 18; ++c) aug[col][c] /= d;
        for (int r = 0; r < 9; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            Rat m = aug[r][col];
            for (int c = 0; c < 18; ++c) aug[r][c] -= m * aug[col][c];
        }
    }
    SymbolicStructureConstants out;
    for (const auto& [key, vals] : samples) {
        Poly2 poly;
        for (int c = 0; c < 9; ++c) {
            Rat coef = 0;
            for (int r = 0; r < 9; ++r) coef += aug[c][9 + r] * vals[r];
            if (coef != 0)
                poly = poly + Poly2::monomial(dh[c], dw[c], coef);
        }
        // reproduce the samples exactly or fail loudly
        for (int r = 0; r < 9; ++r)
            if (poly.eval(grid[r / 3], grid[r % 3]) != vals[r])
                throw std::logic_error("structure constant interpolation residual");
        if (!poly.is_zero()) out.p[key] = std::move(poly);
    }
    return out;
}

std::string export_structure_constants(const SymbolicStructureConstants& sc) {
    const int dh[9] = {0, 1, 0, 2, 1, 0, 2, 1, 2};
    const int dw[9] = {0, 0, 1, 0, 1, 2, 1, 2, 2};
    std::ostringstream os;
    for (const auto& [key, poly] : sc.p) {
        auto [i, j, k] = key;
        os << i << " " << j << " " << k;
        for (int c = 0; c < 9; ++c) {
            Rat v = 0;
            auto it = poly.coefficients().find({dh[c], dw[c]});
            if (it != poly.coefficients().end()) v = it->second;
            os << " " << v.str();
        }
        os << "\n";
    }
    return os.str();
}

Eigen::MatrixXd element_to_matrix(const Shape& sh, const AlgebraElement& a,
                                  const std::vector<std::vector<int16_t>>& R) {
    int E = sh.edge_count();
    std::array<double, 70> c;
    for (int r = 0; r < 70; ++r) c[r] = to_double(a[r]);
    Eigen::MatrixXd out(E, E);
    for (int e = 0; e < E; ++e)
        for (int f = 0; f < E; ++f) out(e, f) = c[R[e][f]];
    return out;
}

Rat element_infinity_norm(const Shape& sh, const AlgebraElement& a) {
    const auto& deg = degree_table();
    Rat best = 0;
    for (int t = 0; t < 4; ++t) {
        Rat s = 0;
        for (int r = 1; r <= 69; ++r) {
            if (relation_section(r) != t || a[r] == 0) continue;
            s += abs(a[r]) * deg[r].eval(sh.h, sh.w);
        }
        if (s > best) best = s;
    }
    return best;
}

}  // namespace sudoku
