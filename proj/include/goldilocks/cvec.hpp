#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace gold {

using Complex = std::complex<double>;

// Element of C^d. Used both for points (CPoint) and tangent directions (CVector).
class CVec {
public:
    CVec() = default;
    explicit CVec(std::size_t dim) : coords_(dim, Complex{0.0, 0.0}) {}
    CVec(std::initializer_list<Complex> init) : coords_(init) {}
    explicit CVec(std::vector<Complex> coords) : coords_(std::move(coords)) {}

    static CVec basis(std::size_t dim, std::size_t j) {
        CVec e(dim);
        e[j] = 1.0;
        return e;
    }

    // Interpret a real vector in R^{2d} as (Re z1, Im z1, Re z2, ...).
    static CVec from_real(std::span<const double> xs) {
        if (xs.size() % 2 != 0) throw std::invalid_argument("real vector must have even length");
        CVec out(xs.size() / 2);
        for (std::size_t j = 0; j < out.dim(); ++j) out[j] = Complex{xs[2 * j], xs[2 * j + 1]};
        return out;
    }

    std::vector<double> to_real() const {
        std::vector<double> xs(2 * dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            xs[2 * j] = coords_[j].real();
            xs[2 * j + 1] = coords_[j].imag();
        }
        return xs;
    }

    std::size_t dim() const { return coords_.size(); }
    Complex& operator[](std::size_t j) { return coords_[j]; }
    const Complex& operator[](std::size_t j) const { return coords_[j]; }
    const std::vector<Complex>& coords() const { return coords_; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& c : coords_) s += std::norm(c);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    bool finite() const {
        for (const auto& c : coords_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        return true;
    }

    CVec& operator+=(const CVec& o) {
        check_dim(o);
        for (std::size_t j = 0; j < dim(); ++j) coords_[j] += o.coords_[j];
        return *this;
    }
    CVec& operator-=(const CVec& o) {
        check_dim(o);
        for (std::size_t j = 0; j < dim(); ++j) coords_[j] -= o.coords_[j];
        return *this;
    }
    CVec& operator*=(Complex s) {
        for (auto& c : coords_) c *= s;
        return *this;
    }

    friend CVec operator+(CVec a, const CVec& b) { return a += b; }
    friend CVec operator-(CVec a, const CVec& b) { return a -= b; }
    friend CVec operator*(CVec a, Complex s) { return a *= s; }
    friend CVec operator*(Complex s, CVec a) { return a *= s; }
    friend CVec operator*(double s, CVec a) { return a *= Complex{s, 0.0}; }
    friend CVec operator*(CVec a, double s) { return a *= Complex{s, 0.0}; }

    bool operator==(const CVec&) const = default;

private:
    void check_dim(const CVec& o) const {
        if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
    }

    std::vector<Complex> coords_;
};

using CPoint = CVec;
using CVector = CVec;

// Hermitian inner product <a, b> = sum a_j conj(b_j).
inline Complex hermitian(const CVec& a, const CVec& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < a.dim(); ++j) s += a[j] * std::conj(b[j]);
    return s;
}

// Real inner product on the underlying R^{2d}.
inline double real_dot(const CVec& a, const CVec& b) { return hermitian(a, b).real(); }

inline double euclidean_distance(const CVec& a, const CVec& b) { return (a - b).norm(); }

inline CVec normalized(const CVec& v) {
    double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("zero vector");
    return v * (1.0 / n);
}

}  // namespace gold
