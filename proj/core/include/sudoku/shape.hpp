#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>

namespace sudoku {

// A Sudoku of type (h,w): boxes are h rows tall and w columns wide,
// the order is n = h*w.  Rows come in w bundles of h, columns in h
// bundles of w.
struct Shape {
    int h = 0;
    int w = 0;
    int n = 0;

    Shape() = default;
    Shape(int h_, int w_) : h(h_), w(w_), n(h_ * w_) {
        if (h < 2 || w < 2)
            throw std::invalid_argument("shape requires h >= 2 and w >= 2");
    }

    int edge_count() const { return 4 * n * n; }
    int tile_count() const { return n * n * n; }

    bool operator==(const Shape&) const = default;
};

// Box containing cell (i,j), 1-based.  Boxes are numbered left to
// right, then top to bottom: box(i,j) = h*floor((i-1)/h) + floor((j-1)/w) + 1.
inline int box_of(const Shape& sh, int i, int j) {
    if (i < 1 || i > sh.n || j < 1 || j > sh.n)
        throw std::out_of_range("box_of: cell index out of range");
    return sh.h * ((i - 1) / sh.h) + (j - 1) / sh.w + 1;
}

// The four edge types of G_{hw}, in the global block order.
enum EdgeType : int { RC = 0, RS = 1, CS = 2, BS = 3 };

// Global edge index: RC block, then RS, CS, BS; lexicographic within
// a block.  (a,b) are the two 1-based vertex indices, e.g. (i,j) for RC.
inline int edge_index(const Shape& sh, EdgeType t, int a, int b) {
    return static_cast<int>(t) * sh.n * sh.n + (a - 1) * sh.n + (b - 1);
}

struct EdgeId {
    EdgeType type;
    int a, b;  // 1-based
    bool operator==(const EdgeId&) const = default;
};

inline EdgeId edge_decode(const Shape& sh, int idx) {
    int nn = sh.n * sh.n;
    int t = idx / nn, r = idx % nn;
    return {static_cast<EdgeType>(t), r / sh.n + 1, r % sh.n + 1};
}

inline int edge_index(const Shape& sh, const EdgeId& e) {
    return edge_index(sh, e.type, e.a, e.b);
}

// A tile (i,j,k): the K_3+e on vertices r_i, c_j, s_k, b_{box(i,j)}.
struct Tile {
    int i, j, k, box;
};

struct TileEdges {
    int rc, rs, cs, bs;
};

inline TileEdges tile_edges(const Shape& sh, int i, int j, int k) {
    int l = box_of(sh, i, j);
    return {edge_index(sh, RC, i, j), edge_index(sh, RS, i, k),
            edge_index(sh, CS, j, k), edge_index(sh, BS, l, k)};
}

// Linear tile index, lexicographic in (i,j,k).
inline int tile_index(const Shape& sh, int i, int j, int k) {
    return ((i - 1) * sh.n + (j - 1)) * sh.n + (k - 1);
}

// --- vertex relations used by the coherent configuration ---

// 0: equal, 1: distinct in a common bundle, 2: distinct bundles
inline int row_rel(const Shape& sh, int i, int ip) {
    if (i == ip) return 0;
    return (i - 1) / sh.h == (ip - 1) / sh.h ? 1 : 2;
}

inline int col_rel(const Shape& sh, int j, int jp) {
    if (j == jp) return 0;
    return (j - 1) / sh.w == (jp - 1) / sh.w ? 1 : 2;
}

// Boxes in the same row of the box grid ("smile").
inline bool box_smile(const Shape& sh, int l, int lp) {
    return (l - 1) / sh.h == (lp - 1) / sh.h;
}

// Boxes in the same column of the box grid ("frown").
inline bool box_frown(const Shape& sh, int l, int lp) {
    return (l - 1) % sh.h == (lp - 1) % sh.h;
}

// Row i meets box l.
inline bool rb_smile(const Shape& sh, int i, int l) {
    return (i - 1) / sh.h == (l - 1) / sh.h;
}

// Column j meets box l.
inline bool cb_frown(const Shape& sh, int j, int l) {
    return (j - 1) / sh.w == (l - 1) % sh.h;
}

// 0: equal, 1: smile, 2: frown, 3: neither
inline int box_rel(const Shape& sh, int l, int lp) {
    if (l == lp) return 0;
    if (box_smile(sh, l, lp)) return 1;
    if (box_frown(sh, l, lp)) return 2;
    return 3;
}

}  // namespace sudoku
