// Exact 3-dimensional linear algebra over the rationals, plus the integer
// lattice utilities (gcd normalization, Hermite normal form) that the rest of
// the library builds on.
#pragma once

#include "rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace jammedfan {

struct Vec3 {
    std::array<Rat, 3> c{};

    Vec3() = default;
    Vec3(Rat x, Rat y, Rat z) : c{std::move(x), std::move(y), std::move(z)} {}

    Rat& operator[](int i) { return c[static_cast<size_t>(i)]; }
    const Rat& operator[](int i) const { return c[static_cast<size_t>(i)]; }

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
    friend Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
    friend Vec3 operator*(const Rat& s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
    friend bool operator==(const Vec3& a, const Vec3& b) { return a.c == b.c; }
    friend bool operator!=(const Vec3& a, const Vec3& b) { return !(a == b); }
    friend bool operator<(const Vec3& a, const Vec3& b) {
        for (int i = 0; i < 3; ++i) {
            if (a[i] < b[i]) return true;
            if (b[i] < a[i]) return false;
        }
        return false;
    }

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
};

inline Rat dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Rows are basis/row vectors; mat.row[i][j] is entry (i,j).
struct Mat3 {
    std::array<Vec3, 3> row{};

    Vec3& operator[](int i) { return row[static_cast<size_t>(i)]; }
    const Vec3& operator[](int i) const { return row[static_cast<size_t>(i)]; }

    friend bool operator==(const Mat3& a, const Mat3& b) { return a.row == b.row; }

    static Mat3 identity() {
        Mat3 m;
        for (int i = 0; i < 3; ++i) m[i][i] = 1;
        return m;
    }
};

inline Rat det(const Mat3& m) { return dot(m[0], cross(m[1], m[2])); }

inline Mat3 transpose(const Mat3& m) {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
    return t;
}

inline Vec3 mul(const Mat3& m, const Vec3& v) { return {dot(m[0], v), dot(m[1], v), dot(m[2], v)}; }

inline Mat3 mul(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    return r;
}

inline Mat3 inverse(const Mat3& m) {
    const Rat d = det(m);
    if (d == 0) throw std::invalid_argument("inverse of singular matrix");
    // Adjugate: cofactor transpose.
    Mat3 inv;
    const Vec3 c0 = cross(m[1], m[2]);
    const Vec3 c1 = cross(m[2], m[0]);
    const Vec3 c2 = cross(m[0], m[1]);
    for (int j = 0; j < 3; ++j) {
        inv[0][j] = Rat(1) / d * c0[j];
        inv[1][j] = Rat(1) / d * c1[j];
        inv[2][j] = Rat(1) / d * c2[j];
    }
    return transpose(inv);
}

// Solve m x = b for the unique x; throws when m is singular.
inline Vec3 solve3(const Mat3& m, const Vec3& b) {
    const Rat d = det(m);
    if (d == 0) throw std::invalid_argument("solve3: singular system");
    Mat3 mt = transpose(m);  // columns of m
    Mat3 s;
    Vec3 x;
    for (int j = 0; j < 3; ++j) {
        s = mt;
        s[j] = b;
        x[j] = dot(s[0], cross(s[1], s[2])) / d;
    }
    return x;
}

inline Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

inline bool is_integral(const Rat& r) { return denominator(r) == 1; }

inline bool is_integral(const Vec3& v) {
    return is_integral(v[0]) && is_integral(v[1]) && is_integral(v[2]);
}

// Shortest integer vector on the ray through v (positive scaling only; the
// direction is preserved).  v must be nonzero.
inline Vec3 primitive_ray(const Vec3& v) {
    if (v.is_zero()) throw std::invalid_argument("primitive_ray of zero vector");
    Int m = lcm(lcm(denominator(v[0]), denominator(v[1])), denominator(v[2]));
    Vec3 w = Rat(m) * v;
    Int g = gcd(gcd(numerator(w[0]), numerator(w[1])), numerator(w[2]));
    return Rat(1, g) * w;
}

// Primitive vector with the sign fixed so the first nonzero entry is
// positive.  For undirected uses (plane normals as lookup keys).
inline Vec3 primitive_line(const Vec3& v) {
    Vec3 w = primitive_ray(v);
    for (int i = 0; i < 3; ++i) {
        if (w[i] != 0) {
            if (w[i] < 0) w = -w;
            break;
        }
    }
    return w;
}

// Rank of a list of vectors, exact.
inline int rank(const std::vector<Vec3>& vs) {
    std::vector<Vec3> rows;
    for (Vec3 v : vs) {
        for (const Vec3& r : rows) {
            // Eliminate with the pivot of r.
            int p = 0;
            while (r[p] == 0) ++p;
            if (v[p] != 0) v = v - (v[p] / r[p]) * r;
        }
        if (!v.is_zero()) {
            rows.push_back(v);
            if (rows.size() == 3) break;
        }
    }
    return static_cast<int>(rows.size());
}

// Hermite normal form basis (rows, upper triangular, positive pivots,
// entries above a pivot reduced into [0, pivot)) of the lattice generated by
// the given integer vectors.  Returns the rank-many rows.
inline std::vector<Vec3> hnf_rows(const std::vector<Vec3>& generators) {
    for (const Vec3& g : generators)
        if (!is_integral(g)) throw std::invalid_argument("hnf_rows: generators must be integral");
    std::vector<Vec3> rows = generators;
    // Column-by-column gcd elimination.
    std::vector<Vec3> result;
    size_t top = 0;
    for (int col = 0; col < 3; ++col) {
        // Gather all rows with support starting at col; reduce to one.
        bool any = true;
        while (any) {
            any = false;
            size_t best = rows.size();
            for (size_t i = top; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() ||
                    abs(numerator(rows[i][col])) < abs(numerator(rows[best][col])))
                    best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            if (rows[top][col] < 0) rows[top] = -rows[top];
            for (size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Rat q(rat_floor(rows[i][col] / rows[top][col]));
                rows[i] = rows[i] - q * rows[top];
                if (rows[i][col] != 0) any = true;
            }
        }
        if (top < rows.size() && rows[top][col] != 0) ++top;
    }
    rows.resize(top);
    // Reduce entries above each pivot.
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        for (size_t j = i + 1; j < rows.size(); ++j) {
            int p = 0;
            while (rows[j][p] == 0) ++p;
            Rat q(rat_floor(rows[i][p] / rows[j][p]));
            rows[i] = rows[i] - q * rows[j];
        }
    }
    return rows;
}

// Integer lattice basis (as Mat3 rows) of the rank-3 lattice spanned by
// integer vectors; throws when the rank is below 3.
inline Mat3 lattice_basis(const std::vector<Vec3>& generators) {
    std::vector<Vec3> rows = hnf_rows(generators);
    if (rows.size() != 3) throw std::invalid_argument("lattice_basis: generators do not span rank 3");
    Mat3 b;
    for (int i = 0; i < 3; ++i) b[i] = rows[static_cast<size_t>(i)];
    return b;
}

}  // namespace jammedfan
