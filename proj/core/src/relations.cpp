#include "sudoku/relations.hpp"

#include <sstream>

namespace sudoku {

Poly2 Poly2::operator+(const Poly2& o) const {
    Poly2 out = *this;
    for (const auto& [m, c] : o.coef_) {
        Rat& v = out.coef_[m];
        v += c;
        if (v == 0) out.coef_.erase(m);
    }
    return out;
}

Poly2 Poly2::operator-(const Poly2& o) const {
    Poly2 out = *this;
    for (const auto& [m, c] : o.coef_) {
        Rat& v = out.coef_[m];
        v -= c;
        if (v == 0) out.coef_.erase(m);
    }
    return out;
}

Poly2 Poly2::operator*(const Poly2& o) const {
    Poly2 out;
    for (const auto& [m1, c1] : coef_)
        for (const auto& [m2, c2] : o.coef_) {
            auto m = std::make_pair(m1.first + m2.first, m1.second + m2.second);
            Rat& v = out.coef_[m];
            v += c1 * c2;
            if (v == 0) out.coef_.erase(m);
        }
    return out;
}

Rat Poly2::eval(int hh, int ww) const {
    Rat out = 0;
    for (const auto& [m, c] : coef_) {
        Rat term = c;
        for (int t = 0; t < m.first; ++t) term *= hh;
        for (int t = 0; t < m.second; ++t) term *= ww;
        out += term;
    }
    return out;
}

std::string Poly2::str() const {
    if (coef_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : coef_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        if (m.first) os << "*h^" << m.first;
        if (m.second) os << "*w^" << m.second;
    }
    return os.str();
}

int classify_pair(const Shape& sh, int e, int f) {
    EdgeId x = edge_decode(sh, e), y = edge_decode(sh, f);
    int a = x.a, b = x.b, c = y.a, d = y.b;
    switch (x.type * 4 + y.type) {
        case RC * 4 + RC:
            return 1 + 3 * row_rel(sh, a, c) + col_rel(sh, b, d);
        case RC * 4 + RS:
            return 10 + row_rel(sh, a, c);
        case RS * 4 + RC:
            return 13 + row_rel(sh, a, c);
        case RS * 4 + RS:
            return 16 + 2 * row_rel(sh, a, c) + (b == d ? 0 : 1);
        case RC * 4 + CS:
            return 22 + col_rel(sh, b, c);
        case CS * 4 + RC:
            return 25 + col_rel(sh, a, d);
        case RS * 4 + CS:
            return 28 + (b == d ? 0 : 1);
        case CS * 4 + RS:
            return 30 + (b == d ? 0 : 1);
        case CS * 4 + CS:
            return 32 + 2 * col_rel(sh, a, c) + (b == d ? 0 : 1);
        case RC * 4 + BS:
            return 38 + 2 * (rb_smile(sh, a, c) ? 0 : 1) +
                   (cb_frown(sh, b, c) ? 0 : 1);
        case BS * 4 + RC:
            return 42 + 2 * (rb_smile(sh, c, a) ? 0 : 1) +
                   (cb_frown(sh, d, a) ? 0 : 1);
        case RS * 4 + BS:
            return 46 + 2 * (rb_smile(sh, a, c) ? 0 : 1) + (b == d ? 0 : 1);
        case BS * 4 + RS:
            return 50 + 2 * (rb_smile(sh, c, a) ? 0 : 1) + (b == d ? 0 : 1);
        case CS * 4 + BS:
            return 54 + 2 * (cb_frown(sh, a, c) ? 0 : 1) + (b == d ? 0 : 1);
        case BS * 4 + CS:
            return 58 + 2 * (cb_frown(sh, c, a) ? 0 : 1) + (b == d ? 0 : 1);
        default:  // BS,BS
            return 62 + 2 * box_rel(sh, a, c) + (b == d ? 0 : 1);
    }
}

EdgeType relation_section(int r) {
    // block layout of the id space; first edge type of each pair
    struct Block {
        int lo, hi;
        EdgeType t;
    };
    static constexpr Block blocks[] = {
        {1, 9, RC},   {10, 12, RC},  {13, 15, RS}, {16, 21, RS},
        {22, 24, RC}, {25, 27, CS},  {28, 29, RS}, {30, 31, CS},
        {32, 37, CS}, {38, 41, RC},  {42, 45, BS}, {46, 49, RS},
        {50, 53, BS}, {54, 57, CS},  {58, 61, BS}, {62, 69, BS}};
    for (const auto& bl : blocks)
        if (r >= bl.lo && r <= bl.hi) return bl.t;
    throw std::out_of_range("relation id");
}

int relation_transpose(int r) {
    // symmetric blocks transpose within themselves (the vertex relations
    // are symmetric); mixed-type blocks map pairwise.
    if (r >= 10 && r <= 12) return r + 3;
    if (r >= 13 && r <= 15) return r - 3;
    if (r >= 22 && r <= 24) return r + 3;
    if (r >= 25 && r <= 27) return r - 3;
    if (r >= 28 && r <= 29) return r + 2;
    if (r >= 30 && r <= 31) return r - 2;
    if (r >= 38 && r <= 41) return r + 4;
    if (r >= 42 && r <= 45) return r - 4;
    if (r >= 46 && r <= 49) return r + 4;
    if (r >= 50 && r <= 53) return r - 4;
    if (r >= 54 && r <= 57) return r + 4;
    if (r >= 58 && r <= 61) return r - 4;
    return r;  // RC-RC, RS-RS, CS-CS, BS-BS relations are self-paired
}

const std::array<Poly2, 70>& degree_table() {
    static const std::array<Poly2, 70> table = [] {
        std::array<Poly2, 70> d;
        Poly2 H = Poly2::h(), W = Poly2::w();
        Poly2 N = H * W, one = 1;
        Poly2 rr[3] = {one, H - 1, H * (W - 1)};   // row: =, ~bundle, not~
        Poly2 cc[3] = {one, W - 1, W * (H - 1)};
        Poly2 ss[2] = {one, N - 1};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) d[1 + 3 * r + c] = rr[r] * cc[c];
        for (int r = 0; r < 3; ++r) {
            d[10 + r] = rr[r] * N;
            d[13 + r] = rr[r] * N;
        }
        for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 2; ++s) d[16 + 2 * r + s] = rr[r] * ss[s];
        for (int c = 0; c < 3; ++c) {
            d[22 + c] = cc[c] * N;
            d[25 + c] = cc[c] * N;
        }
        for (int s = 0; s < 2; ++s) {
            d[28 + s] = N * ss[s];
            d[30 + s] = N * ss[s];
        }
        for (int c = 0; c < 3; ++c)
            for (int s = 0; s < 2; ++s) d[32 + 2 * c + s] = cc[c] * ss[s];
        // RC-BS: the box vertex relates to (row, column) jointly, so the
        // counts are not products of the marginals
        Poly2 bcnt[4] = {one, H - 1, W - 1, (H - 1) * (W - 1)};
        for (int q = 0; q < 4; ++q) {
            d[38 + q] = bcnt[q] * N;
            d[42 + q] = bcnt[q] * N;
        }
        for (int sm = 0; sm < 2; ++sm)
            for (int s = 0; s < 2; ++s) {
                Poly2 rb = sm == 0 ? H : H * (W - 1);
                Poly2 cb = sm == 0 ? W : W * (H - 1);
                d[46 + 2 * sm + s] = rb * ss[s];
                d[50 + 2 * sm + s] = rb * ss[s];
                d[54 + 2 * sm + s] = cb * ss[s];
                d[58 + 2 * sm + s] = cb * ss[s];
            }
        for (int b = 0; b < 4; ++b)
            for (int s = 0; s < 2; ++s) d[62 + 2 * b + s] = bcnt[b] * ss[s];
        return d;
    }();
    return table;
}

const std::array<Poly2, 70>& published_degree_table() {
    static const std::array<Poly2, 70> table = [] {
        std::array<Poly2, 70> d;
        Poly2 H = Poly2::h(), W = Poly2::w();
        Poly2 N = H * W;
        d[1] = 1;              d[2] = W - 1;          d[3] = (H - 1) * W;
        d[4] = H - 1;          d[5] = (H - 1) * (W - 1);
        d[6] = (H - 1) * (H - 1) * W;                 d[7] = H * (W - 1);
        d[8] = H * (W - 1) * (W - 1);
        d[9] = N * (H - 1) * (W - 1);
        d[10] = N;             d[11] = N * (H - 1);   d[12] = N * H * (W - 1);
        d[13] = N;             d[14] = N * (H - 1);   d[15] = N * H * (W - 1);
        d[16] = 1;             d[17] = N - 1;         d[18] = H - 1;
        d[19] = (N - 1) * (H - 1);                    d[20] = H * (W - 1);
        d[21] = (N - 1) * H * (W - 1);
        d[22] = N;             d[23] = N * (W - 1);   d[24] = N * (H - 1) * W;
        d[25] = N;             d[26] = N * (W - 1);   d[27] = N * (H - 1) * W;
        d[28] = N;             d[29] = N * (N - 1);
        d[30] = N;             d[31] = N * (N - 1);
        d[32] = 1;             d[33] = N - 1;         d[34] = W - 1;
        d[35] = (N - 1) * (W - 1);                    d[36] = (H - 1) * W;
        d[37] = (N - 1) * (H - 1) * W;
        d[38] = N;             d[39] = N * (H - 1);   d[40] = N * (W - 1);
        d[41] = N * (H - 1) * (W - 1);
        d[42] = N;             d[43] = N * (H - 1);   d[44] = N * (W - 1);
        d[45] = N * (H - 1) * (W - 1);
        d[46] = H;             d[47] = (N - 1) * H;   d[48] = H * (W - 1);
        d[49] = (N - 1) * H * (W - 1);
        d[50] = H;             d[51] = (N - 1) * H;   d[52] = H * (W - 1);
        d[53] = (N - 1) * H * (W - 1);
        d[54] = W;             d[55] = (N - 1) * W;   d[56] = (H - 1) * W;
        d[57] = (N - 1) * (H - 1) * W;
        d[58] = W;             d[59] = (N - 1) * W;   d[60] = (H - 1) * W;
        d[61] = (N - 1) * (H - 1) * W;
        d[62] = 1;             d[63] = N - 1;         d[64] = H - 1;
        d[65] = (N - 1) * (H - 1);                    d[66] = W - 1;
        d[67] = (N - 1) * (W - 1);
        d[68] = (H - 1) * (W - 1);
        d[69] = (N - 1) * (H - 1) * (W - 1);
        return d;
    }();
    return table;
}

std::vector<std::vector<int16_t>> relation_table(const Shape& sh) {
    int E = sh.edge_count();
    std::vector<std::vector<int16_t>> R(E, std::vector<int16_t>(E));
    for (int e = 0; e < E; ++e)
        for (int f = 0; f < E; ++f)
            R[e][f] = (int16_t)classify_pair(sh, e, f);
    return R;
}

std::vector<std::vector<char>> relation_matrix(const Shape& sh, int r) {
    int E = sh.edge_count();
    std::vector<std::vector<char>> A(E, std::vector<char>(E, 0));
    for (int e = 0; e < E; ++e)
        for (int f = 0; f < E; ++f)
            if (classify_pair(sh, e, f) == r) A[e][f] = 1;
    return A;
}

}  // namespace sudoku
