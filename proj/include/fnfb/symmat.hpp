#pragma once

#include <array>
#include <vector>

namespace fnfb {

// Dense symmetric n x n matrix, n <= 3. Eigenvalues come from closed
// forms (quadratic formula for n=2, the trigonometric solution for n=3),
// so no general eigensolver is involved.
class SymMatrix {
  public:
    SymMatrix() : n_(1) { a_.fill(0.0); }
    explicit SymMatrix(int n);
    SymMatrix(int n, const std::array<double, 9>& entries); // row-major, checked for symmetry

    static SymMatrix diag(int n, double d0, double d1 = 0.0, double d2 = 0.0);
    static SymMatrix identity(int n);

    int n() const { return n_; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(3 * i + j)]; }
    void set(int i, int j, double v);

    SymMatrix operator+(const SymMatrix& o) const;
    SymMatrix operator-(const SymMatrix& o) const;
    SymMatrix scaled(double c) const;

    double trace() const;
    std::vector<double> eigenvalues() const; // ascending
    double max_eigenvalue() const;
    double min_eigenvalue() const;
    // sum_ij A_ij M_ij for symmetric A, M = tr(A M).
    double dot_trace(const SymMatrix& m) const;

  private:
    int n_;
    std::array<double, 9> a_;
};

} // namespace fnfb
