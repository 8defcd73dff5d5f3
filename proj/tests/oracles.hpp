#pragma once

// Faithful complex-matrix models, used as an arithmetic oracle that shares no
// code with the library's element model.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "markedgroups/element.hpp"
#include "markedgroups/words.hpp"

namespace oracle {

using cd = std::complex<double>;

constexpr double kTol = 1e-9;

struct Mat {
    int n = 0;
    std::vector<cd> a;

    static Mat identity(int n) {
        Mat m{n, std::vector<cd>(static_cast<std::size_t>(n * n))};
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    cd& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    cd at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
};

inline Mat operator*(const Mat& x, const Mat& y) {
    Mat r{x.n, std::vector<cd>(x.a.size())};
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const cd xik = x.at(i, k);
            if (xik == cd{}) continue;
            for (int j = 0; j < x.n; ++j) r.at(i, j) += xik * y.at(k, j);
        }
    return r;
}

inline bool near(const Mat& x, const Mat& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (std::abs(x.a[i] - y.a[i]) > kTol) return false;
    return true;
}

inline Mat mpow(const Mat& m, long e, const Mat& inv) {
    Mat r = Mat::identity(m.n);
    const Mat& b = e >= 0 ? m : inv;
    for (long i = 0; i < std::labs(e); ++i) r = r * b;
    return r;
}

inline Mat diag(std::vector<cd> d) {
    Mat m = Mat::identity(static_cast<int>(d.size()));
    for (int i = 0; i < m.n; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

inline cd root_of_unity(long order, long k = 1) {
    const double th = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order);
    return {std::cos(th), std::sin(th)};
}

/// A model: generator matrices and their inverses, in marking order.
struct Model {
    std::vector<Mat> gens;
    std::vector<Mat> invs;
    int dim() const { return gens.front().n; }

    Mat eval(const mg::Word& w) const {
        Mat acc = Mat::identity(dim());
        for (mg::Letter l : w.letters()) {
            const auto i = static_cast<std::size_t>(std::abs(l) - 1);
            acc = acc * (l > 0 ? gens[i] : invs[i]);
        }
        return acc;
    }
    bool is_relation(const mg::Word& w) const { return near(eval(w), Mat::identity(dim())); }
};

/// Q_{2^n} marked (x, y): x = diag(z, 1/z) with z of order 2^{n-1}, y = [[0,-1],[1,0]].
inline Model quaternion(int n) {
    const long ord = 1L << (n - 1);
    Mat y{2, {0, -1, 1, 0}}, yi{2, {0, 1, -1, 0}};
    return {{diag({root_of_unity(ord), root_of_unity(ord, -1)}), y},
            {diag({root_of_unity(ord, -1), root_of_unity(ord)}), yi}};
}

/// D_{2n} marked (r, s): rotation by 2pi/n and a reflection.
inline Model dihedral(long n) {
    const double th = 2 * std::numbers::pi / static_cast<double>(n);
    Mat r{2, {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)}};
    Mat ri{2, {std::cos(th), std::sin(th), -std::sin(th), std::cos(th)}};
    Mat s{2, {1, 0, 0, -1}};
    return {{r, s}, {ri, s}};
}

/// Z4 x| Z_{2^{n-1}} marked (x, y).
inline Model sd4(int n) {
    const long ord = 1L << (n - 1);
    const cd i{0, 1};
    Mat y{3, {0, 1, 0, 1, 0, 0, 0, 0, i}}, yi{3, {0, 1, 0, 1, 0, 0, 0, 0, -i}};
    return {{diag({root_of_unity(ord), root_of_unity(ord, -1), 1}), y},
            {diag({root_of_unity(ord, -1), root_of_unity(ord), 1}), yi}};
}

/// limitQ(1,1) marked (y, a, t) with t = y^2.
inline Model limit_q11() {
    const cd i{0, 1};
    Mat y = diag({-1, 1, i}), yi = diag({-1, 1, -i});
    Mat a{3, {1, 1, 0, 0, 1, 0, 0, 0, 1}}, ai{3, {1, -1, 0, 0, 1, 0, 0, 0, 1}};
    return {{y, a, y * y}, {yi, ai, yi * yi}};
}

/// Picks generators out of a model to form another marking, e.g. (a, y).
inline Model select(const Model& m, std::vector<int> idx) {
    Model out;
    for (int i : idx) {
        out.gens.push_back(m.gens[static_cast<std::size_t>(i)]);
        out.invs.push_back(m.invs[static_cast<std::size_t>(i)]);
    }
    return out;
}

/// Element (x; v; t) of the quaternion, sd4 and dihedral families as y^x g^t,
/// where (g, y) are generators 0 and 1 of the model.
inline Mat element_matrix_rank1(const Model& m, const mg::Element& e) {
    return mpow(m.gens[1], e.x, m.invs[1]) * mpow(m.gens[0], static_cast<long>(e.t), m.invs[0]);
}

/// limitQ(1,1) element (x; v; t) as y^x a^v y^{2t}.
inline Mat element_matrix_q11(const Model& m, const mg::Element& e) {
    return mpow(m.gens[0], e.x, m.invs[0]) * mpow(m.gens[1], e.v[0], m.invs[1]) *
           mpow(m.gens[0], 2 * static_cast<long>(e.t), m.invs[0]);
}

/// Relation ball by brute force: every reduced word, evaluated as a matrix.
inline std::vector<mg::Word> relation_ball(const Model& m, int lambda) {
    std::vector<mg::Word> out;
    mg::for_each_reduced({static_cast<int>(m.gens.size()), lambda}, [&](const mg::Word& w) {
        if (!w.empty() && m.is_relation(w)) out.push_back(w);
    });
    return out;
}

}  // namespace oracle
