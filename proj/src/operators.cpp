#include "fnfb/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fnfb/errors.hpp"

namespace fnfb {

double pucci_minus(const SymMatrix& M, double lambda, double Lambda) {
    if (lambda > Lambda) throw OperatorError("pucci: lambda must not exceed Lambda");
    double v = 0.0;
    for (double e : M.eigenvalues()) v += e > 0.0 ? lambda * e : Lambda * e;
    return v;
}

double pucci_plus(const SymMatrix& M, double lambda, double Lambda) {
    if (lambda > Lambda) throw OperatorError("pucci: lambda must not exceed Lambda");
    double v = 0.0;
    for (double e : M.eigenvalues()) v += e > 0.0 ? Lambda * e : lambda * e;
    return v;
}

std::string form_name(OperatorForm f) {
    switch (f) {
        case OperatorForm::LinearTrace: return "linear_trace";
        case OperatorForm::PucciMinus: return "pucci_minus";
        case OperatorForm::PucciPlus: return "pucci_plus";
        case OperatorForm::BellmanInf: return "bellman_inf";
    }
    return "?";
}

OperatorForm form_from_name(const std::string& name) {
    if (name == "linear_trace") return OperatorForm::LinearTrace;
    if (name == "pucci_minus") return OperatorForm::PucciMinus;
    if (name == "pucci_plus") return OperatorForm::PucciPlus;
    if (name == "bellman_inf") return OperatorForm::BellmanInf;
    throw ConfigError("operator: unknown form '" + name + "'");
}

CoefMatrix CoefMatrix::from_value(const SymMatrix& m) {
    CoefMatrix c;
    c.n = m.n();
    c.constant = true;
    c.value = m;
    return c;
}

CoefMatrix CoefMatrix::from_exprs(int n, std::vector<Expr> entries) {
    if (static_cast<int>(entries.size()) != n * n)
        throw ConfigError("operator: coefficient matrix needs n*n entries");
    CoefMatrix c;
    c.n = n;
    c.constant = false;
    c.entries = std::move(entries);
    bool all_const = true;
    for (const Expr& e : c.entries) all_const = all_const && e.is_constant();
    if (all_const) {
        c.value = c.at(0, 0, 0);
        c.constant = true;
        c.entries.clear();
    }
    return c;
}

SymMatrix CoefMatrix::at(double x, double y, double t) const {
    if (constant) return value;
    std::array<double, 9> a{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(3 * i + j)] = entries[static_cast<size_t>(n * i + j)].eval(x, y, t);
    return SymMatrix(n, a);
}

OperatorSpec::OperatorSpec(int dim, OperatorForm form, double lambda, double Lambda,
                           std::vector<CoefMatrix> family)
    : dim_(dim), form_(form), lambda_(lambda), Lambda_(Lambda), family_(std::move(family)) {
    if (dim < 1 || dim > 2) throw ConfigError("operator: dim must be 1 or 2");
    if (!(lambda > 0.0)) throw ConfigError("operator: lambda must be positive");
    if (lambda > Lambda) throw ConfigError("operator: lambda must not exceed Lambda");
    for (const CoefMatrix& c : family_)
        if (c.n != dim) throw ConfigError("operator: family matrix dimension mismatch");
}

OperatorSpec OperatorSpec::linear_trace(int dim, CoefMatrix A, double lambda, double Lambda) {
    return OperatorSpec(dim, OperatorForm::LinearTrace, lambda, Lambda, {std::move(A)});
}

OperatorSpec OperatorSpec::pucci_minus_form(int dim, double lambda, double Lambda) {
    return OperatorSpec(dim, OperatorForm::PucciMinus, lambda, Lambda, {});
}

OperatorSpec OperatorSpec::pucci_plus_form(int dim, double lambda, double Lambda) {
    return OperatorSpec(dim, OperatorForm::PucciPlus, lambda, Lambda, {});
}

OperatorSpec OperatorSpec::bellman_inf(int dim, std::vector<CoefMatrix> family, double lambda,
                                       double Lambda) {
    if (family.empty()) throw ConfigError("operator: bellman_inf family is empty");
    return OperatorSpec(dim, OperatorForm::BellmanInf, lambda, Lambda, std::move(family));
}

bool OperatorSpec::has_coefficient_field() const {
    for (const CoefMatrix& c : family_)
        if (!c.constant) return true;
    return false;
}

double OperatorSpec::evaluate(double x, double y, double t, const SymMatrix& M) const {
    switch (form_) {
        case OperatorForm::LinearTrace:
            return family_[0].at(x, y, t).dot_trace(M);
        case OperatorForm::PucciMinus:
            return pucci_minus(M, lambda_, Lambda_);
        case OperatorForm::PucciPlus:
            return pucci_plus(M, lambda_, Lambda_);
        case OperatorForm::BellmanInf: {
            if (family_.empty()) throw OperatorError("bellman_inf: family is empty");
            double best = family_[0].at(x, y, t).dot_trace(M);
            for (size_t m = 1; m < family_.size(); ++m)
                best = std::min(best, family_[m].at(x, y, t).dot_trace(M));
            return best;
        }
    }
    throw OperatorError("unreachable");
}

std::vector<SymMatrix> OperatorSpec::family_at(double x, double y, double t) const {
    std::vector<SymMatrix> out;
    out.reserve(family_.size());
    for (const CoefMatrix& c : family_) out.push_back(c.at(x, y, t));
    return out;
}

void OperatorSpec::check_stencil_monotonicity(const SpaceTimeGrid& grid) const {
    if (dim_ != 2 || family_.empty()) return;
    auto check = [&](const SymMatrix& A, double x, double y, double t) {
        double a12 = std::abs(A(0, 1));
        if (A(0, 0) < a12 - 1e-12 || A(1, 1) < a12 - 1e-12)
            throw OperatorError(
                "operator: family matrix at (" + std::to_string(x) + "," + std::to_string(y) +
                ",t=" + std::to_string(t) +
                ") is not diagonally dominant; the 9-point stencil would lose monotonicity");
    };
    for (const CoefMatrix& c : family_) {
        if (c.constant) {
            check(c.value, 0, 0, 0);
        } else {
            for (int k = 0; k <= grid.nt(); k += std::max(1, grid.nt() / 8))
                for (int s = 0; s < grid.num_space_nodes(); ++s)
                    check(c.at(grid.x_of(s), grid.y_of(s), grid.t_of_level(k)), grid.x_of(s),
                          grid.y_of(s), grid.t_of_level(k));
        }
    }
}

SecondDiffs second_diffs(const SpaceTimeGrid& grid, std::span<const double> slice, int s) {
    SecondDiffs d;
    const double h2 = grid.h() * grid.h();
    const int nx = grid.nx();
    const int ix = grid.ix_of(s);
    if (ix <= 0 || ix >= nx - 1) throw OperatorError("stencil leaves grid");
    if (grid.dim() == 1) {
        d.axis[0] = (slice[static_cast<size_t>(s + 1)] + slice[static_cast<size_t>(s - 1)] -
                     2.0 * slice[static_cast<size_t>(s)]) / h2;
        return d;
    }
    const int iy = grid.iy_of(s);
    if (iy <= 0 || iy >= nx - 1) throw OperatorError("stencil leaves grid");
    const double c = 2.0 * slice[static_cast<size_t>(s)];
    d.axis[0] = (slice[static_cast<size_t>(s + 1)] + slice[static_cast<size_t>(s - 1)] - c) / h2;
    d.axis[1] = (slice[static_cast<size_t>(s + nx)] + slice[static_cast<size_t>(s - nx)] - c) / h2;
    d.diag[0] = (slice[static_cast<size_t>(s + nx + 1)] + slice[static_cast<size_t>(s - nx - 1)] - c) / (2.0 * h2);
    d.diag[1] = (slice[static_cast<size_t>(s + nx - 1)] + slice[static_cast<size_t>(s - nx + 1)] - c) / (2.0 * h2);
    return d;
}

namespace {

inline double pucci_pair(double e0, double e1, double lo, double hi, int dim) {
    double v = e0 > 0.0 ? lo * e0 : hi * e0;
    if (dim == 2) v += e1 > 0.0 ? lo * e1 : hi * e1;
    return v;
}

// tr(A D^2_h u) with the cross term split over the diagonal differences.
inline double trace_stencil(const SymMatrix& A, const SecondDiffs& d, int dim) {
    if (dim == 1) return A(0, 0) * d.axis[0];
    double a12 = A(0, 1);
    double c = std::abs(a12);
    double v = (A(0, 0) - c) * d.axis[0] + (A(1, 1) - c) * d.axis[1];
    v += 2.0 * c * (a12 >= 0.0 ? d.diag[0] : d.diag[1]);
    return v;
}

} // namespace

double stencil_form_value(OperatorForm form, int dim, double lambda, double Lambda,
                          const SecondDiffs& d, std::span<const SymMatrix> family) {
    switch (form) {
        case OperatorForm::LinearTrace:
            return trace_stencil(family[0], d, dim);
        case OperatorForm::BellmanInf: {
            if (family.empty()) throw OperatorError("bellman_inf: family is empty");
            double best = trace_stencil(family[0], d, dim);
            for (size_t m = 1; m < family.size(); ++m)
                best = std::min(best, trace_stencil(family[m], d, dim));
            return best;
        }
        case OperatorForm::PucciMinus: {
            // Each frame value equals tr(A_f M) for an admissible A_f, so both
            // sit above the true envelope; take the smaller one.
            double ax = pucci_pair(d.axis[0], d.axis[1], lambda, Lambda, dim);
            if (dim == 1) return ax;
            double dg = pucci_pair(d.diag[0], d.diag[1], lambda, Lambda, dim);
            return std::min(ax, dg);
        }
        case OperatorForm::PucciPlus: {
            double ax = pucci_pair(d.axis[0], d.axis[1], Lambda, lambda, dim);
            if (dim == 1) return ax;
            double dg = pucci_pair(d.diag[0], d.diag[1], Lambda, lambda, dim);
            return std::max(ax, dg);
        }
    }
    throw OperatorError("unreachable");
}

double stencil_center_slope_bound(int dim, double Lambda, double h) {
    return 2.0 * dim * Lambda / (h * h);
}

double discrete_operator_apply(const OperatorSpec& spec, const SpaceTimeGrid& grid,
                               std::span<const double> u, int s, int k) {
    if (k < 1 || k > grid.nt()) throw OperatorError("stencil leaves grid");
    const int ns = grid.num_space_nodes();
    auto slice = u.subspan(static_cast<size_t>(k) * ns, static_cast<size_t>(ns));
    SecondDiffs d = second_diffs(grid, slice, s);
    std::vector<SymMatrix> fam;
    if (spec.form() == OperatorForm::LinearTrace || spec.form() == OperatorForm::BellmanInf)
        fam = spec.family_at(grid.x_of(s), grid.y_of(s), grid.t_of_level(k));
    double fval = stencil_form_value(spec.form(), grid.dim(), spec.lambda(), spec.Lambda(), d, fam);
    double du_dt = (u[static_cast<size_t>(grid.node(s, k))] - u[static_cast<size_t>(grid.node(s, k - 1))]) / grid.dt();
    return fval - du_dt;
}

EllipticityReport ellipticity_audit(const OperatorSpec& spec, int samples, std::uint64_t seed) {
    if (samples < 1) throw ConfigError("ellipticity_audit: samples must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> uxt(0.0, 1.0);
    const int n = spec.dim();

    auto rand_sym = [&]() {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) m.set(i, j, uni(rng));
        return m;
    };
    auto rand_psd = [&](bool rank_one) {
        SymMatrix p(n);
        if (rank_one) {
            double v[2] = {uni(rng), n == 2 ? uni(rng) : 0.0};
            double norm = std::sqrt(v[0] * v[0] + v[1] * v[1]);
            if (norm < 1e-8) { v[0] = 1.0; norm = 1.0; }
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) p.set(i, j, v[i] * v[j] / (norm * norm));
        } else {
            SymMatrix g = rand_sym();
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    double s = 0.0;
                    for (int k = 0; k < n; ++k) s += g(i, k) * g(j, k);
                    p.set(i, j, s);
                }
        }
        return p;
    };

    EllipticityReport rep;
    rep.samples = samples;
    double lo1 = 0.0, up1 = 0.0, lo2 = 0.0, up2 = 0.0;
    bool first = true;
    for (int it = 0; it < samples; ++it) {
        double x = uxt(rng), y = uxt(rng), t = uxt(rng);
        SymMatrix M = rand_sym();
        SymMatrix P = rand_psd(it % 2 == 0);
        double dF = spec.evaluate(x, y, t, M + P) - spec.evaluate(x, y, t, M);
        double m_lo = dF - spec.lambda() * P.max_eigenvalue();
        double m_up = spec.Lambda() * P.trace() - dF;

        SymMatrix A = rand_sym(), B = rand_sym();
        double dAB = spec.evaluate(x, y, t, A) - spec.evaluate(x, y, t, B);
        SymMatrix D = A - B;
        double p_lo = dAB - pucci_minus(D, spec.lambda() / n, spec.Lambda());
        double p_up = pucci_plus(D, spec.lambda() / n, spec.Lambda()) - dAB;

        if (first) {
            lo1 = m_lo; up1 = m_up; lo2 = p_lo; up2 = p_up;
            first = false;
        } else {
            lo1 = std::min(lo1, m_lo);
            up1 = std::min(up1, m_up);
            lo2 = std::min(lo2, p_lo);
            up2 = std::min(up2, p_up);
        }
    }
    rep.worst_lower_margin = lo1;
    rep.worst_upper_margin = up1;
    rep.worst_pucci_lower = lo2;
    rep.worst_pucci_upper = up2;
    rep.pass = lo1 > -1e-9 && up1 > -1e-9 && lo2 > -1e-9 && up2 > -1e-9;
    return rep;
}

} // namespace fnfb
