#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fnfb/expr.hpp"
#include "fnfb/grid.hpp"
#include "fnfb/symmat.hpp"

namespace fnfb {

// Pucci extremal operators on the eigenvalues of M.
double pucci_minus(const SymMatrix& M, double lambda, double Lambda);
double pucci_plus(const SymMatrix& M, double lambda, double Lambda);

enum class OperatorForm { LinearTrace, PucciMinus, PucciPlus, BellmanInf };

std::string form_name(OperatorForm f);
OperatorForm form_from_name(const std::string& name);

// A coefficient matrix, either constant or with entries given as analytic
// expressions of (x, y, t).
struct CoefMatrix {
    int n = 1;
    bool constant = true;
    SymMatrix value;            // when constant
    std::vector<Expr> entries;  // row-major n*n, when not constant

    static CoefMatrix from_value(const SymMatrix& m);
    static CoefMatrix from_exprs(int n, std::vector<Expr> entries);

    SymMatrix at(double x, double y, double t) const;
};

// A (lambda,Lambda)-elliptic operator family F(x,t,M).
class OperatorSpec {
  public:
    static OperatorSpec linear_trace(int dim, CoefMatrix A, double lambda, double Lambda);
    static OperatorSpec pucci_minus_form(int dim, double lambda, double Lambda);
    static OperatorSpec pucci_plus_form(int dim, double lambda, double Lambda);
    static OperatorSpec bellman_inf(int dim, std::vector<CoefMatrix> family, double lambda,
                                    double Lambda);

    int dim() const { return dim_; }
    double lambda() const { return lambda_; }
    double Lambda() const { return Lambda_; }
    OperatorForm form() const { return form_; }
    const std::vector<CoefMatrix>& family() const { return family_; }
    bool concave_form() const { return form_ != OperatorForm::PucciPlus; }
    bool has_coefficient_field() const;

    // Evaluate F(x, t, M); throws on an empty bellman family.
    double evaluate(double x, double y, double t, const SymMatrix& M) const;

    // Family matrices at a point (linear_trace and bellman_inf forms).
    std::vector<SymMatrix> family_at(double x, double y, double t) const;

    // Scheme requirement in 2D: a11 >= |a12| and a22 >= |a12| so the
    // cross-difference stencil stays monotone. Sampled over the grid when
    // coefficients depend on (x,t). Throws OperatorError on failure.
    void check_stencil_monotonicity(const SpaceTimeGrid& grid) const;

  private:
    OperatorSpec(int dim, OperatorForm form, double lambda, double Lambda,
                 std::vector<CoefMatrix> family);

    int dim_;
    OperatorForm form_;
    double lambda_, Lambda_;
    std::vector<CoefMatrix> family_;
};

// Centered second differences at an interior spatial node: along the
// coordinate axes and, in 2D, the two diagonal directions (spacing h*sqrt2).
struct SecondDiffs {
    double axis[2] = {0.0, 0.0};
    double diag[2] = {0.0, 0.0};
};

SecondDiffs second_diffs(const SpaceTimeGrid& grid, std::span<const double> slice, int s);

// Value of the form on the stencil differences; monotone in every
// off-center value. family points at the matrices for this node.
double stencil_form_value(OperatorForm form, int dim, double lambda, double Lambda,
                          const SecondDiffs& d, std::span<const SymMatrix> family);

// Upper bound on |d(form value)/d(center value)|, used to damp Jacobi sweeps.
double stencil_center_slope_bound(int dim, double Lambda, double h);

// F(x,t,D^2_h u) - (u(x,t) - u(x,t-dt))/dt at a parabolic-interior node.
double discrete_operator_apply(const OperatorSpec& spec, const SpaceTimeGrid& grid,
                               std::span<const double> u, int s, int k);

// Random-sampling audit of the ellipticity chains. The paper-style chain
// lambda*||P|| <= F(M+P)-F(M) is audited with the max-eigenvalue norm on
// the lower side and the trace norm Lambda*tr(P) on the upper side (the
// two coincide for rank-one P, where the bound is tight); the rescaled
// Pucci chain P^-_{lambda/n,Lambda}(A-B) <= F(A)-F(B) <= P^+ is audited
// verbatim. Violations beyond 1e-9 fail the audit.
struct EllipticityReport {
    int samples = 0;
    double worst_lower_margin = 0.0;  // min over samples of F(M+P)-F(M) - lambda*||P||
    double worst_upper_margin = 0.0;  // min over samples of Lambda*tr(P) - (F(M+P)-F(M))
    double worst_pucci_lower = 0.0;
    double worst_pucci_upper = 0.0;
    bool pass = true;
};

EllipticityReport ellipticity_audit(const OperatorSpec& spec, int samples, std::uint64_t seed);

} // namespace fnfb
