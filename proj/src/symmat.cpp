#include "fnfb/symmat.hpp"

#include <algorithm>
#include <cmath>

#include "fnfb/errors.hpp"

namespace fnfb {

SymMatrix::SymMatrix(int n) : n_(n) {
    if (n < 1 || n > 3) throw OperatorError("SymMatrix: n must be 1, 2 or 3");
    a_.fill(0.0);
}

SymMatrix::SymMatrix(int n, const std::array<double, 9>& entries) : SymMatrix(n) {
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(entries[static_cast<size_t>(3 * i + j)]));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double vij = entries[static_cast<size_t>(3 * i + j)];
            double vji = entries[static_cast<size_t>(3 * j + i)];
            if (std::abs(vij - vji) > 1e-12 * std::max(1.0, scale))
                throw OperatorError("SymMatrix: input is not symmetric");
            a_[static_cast<size_t>(3 * i + j)] = 0.5 * (vij + vji);
        }
}

SymMatrix SymMatrix::diag(int n, double d0, double d1, double d2) {
    SymMatrix m(n);
    m.set(0, 0, d0);
    if (n > 1) m.set(1, 1, d1);
    if (n > 2) m.set(2, 2, d2);
    return m;
}

SymMatrix SymMatrix::identity(int n) {
    return diag(n, 1.0, 1.0, 1.0);
}

void SymMatrix::set(int i, int j, double v) {
    a_[static_cast<size_t>(3 * i + j)] = v;
    a_[static_cast<size_t>(3 * j + i)] = v;
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
    if (n_ != o.n_) throw OperatorError("SymMatrix: dimension mismatch");
    SymMatrix out(n_);
    for (size_t i = 0; i < 9; ++i) out.a_[i] = a_[i] + o.a_[i];
    return out;
}

SymMatrix SymMatrix::operator-(const SymMatrix& o) const {
    if (n_ != o.n_) throw OperatorError("SymMatrix: dimension mismatch");
    SymMatrix out(n_);
    for (size_t i = 0; i < 9; ++i) out.a_[i] = a_[i] - o.a_[i];
    return out;
}

SymMatrix SymMatrix::scaled(double c) const {
    SymMatrix out(n_);
    for (size_t i = 0; i < 9; ++i) out.a_[i] = c * a_[i];
    return out;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

std::vector<double> SymMatrix::eigenvalues() const {
    if (n_ == 1) return {(*this)(0, 0)};
    if (n_ == 2) {
        double a = (*this)(0, 0), b = (*this)(0, 1), d = (*this)(1, 1);
        double mean = 0.5 * (a + d);
        double rad = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
        return {mean - rad, mean + rad};
    }
    // n == 3: trigonometric closed form for symmetric matrices.
    double p1 = (*this)(0, 1) * (*this)(0, 1) + (*this)(0, 2) * (*this)(0, 2) +
                (*this)(1, 2) * (*this)(1, 2);
    double q = trace() / 3.0;
    if (p1 == 0.0) {
        std::vector<double> e = {(*this)(0, 0), (*this)(1, 1), (*this)(2, 2)};
        std::sort(e.begin(), e.end());
        return e;
    }
    double d00 = (*this)(0, 0) - q, d11 = (*this)(1, 1) - q, d22 = (*this)(2, 2) - q;
    double p2 = d00 * d00 + d11 * d11 + d22 * d22 + 2.0 * p1;
    double p = std::sqrt(p2 / 6.0);
    // B = (A - qI)/p; r = det(B)/2 in [-1, 1].
    auto b = [&](int i, int j) { return ((*this)(i, j) - (i == j ? q : 0.0)) / p; };
    double detB = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                  b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                  b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    double r = std::clamp(detB / 2.0, -1.0, 1.0);
    double phi = std::acos(r) / 3.0;
    double e1 = q + 2.0 * p * std::cos(phi);
    double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    double e2 = 3.0 * q - e1 - e3;
    std::vector<double> e = {e1, e2, e3};
    std::sort(e.begin(), e.end());
    return e;
}

double SymMatrix::max_eigenvalue() const {
    auto e = eigenvalues();
    return e.back();
}

double SymMatrix::min_eigenvalue() const {
    auto e = eigenvalues();
    return e.front();
}

double SymMatrix::dot_trace(const SymMatrix& m) const {
    if (n_ != m.n_) throw OperatorError("SymMatrix: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) s += (*this)(i, j) * m(i, j);
    return s;
}

} // namespace fnfb
