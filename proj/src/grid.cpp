#include "fnfb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fnfb {

namespace {
constexpr double kRelTol = 1e-9;
}

SpaceTimeGrid::SpaceTimeGrid(int dim, int nx, int nt, double T, double scaling_factor)
    : dim_(dim), nx_(nx), nt_(nt), T_(T), psf_(scaling_factor) {
    if (dim != 1 && dim != 2) throw GridError("grid: dim must be 1 or 2");
    if (nx < 3) throw GridError("grid: nx must be at least 3");
    if (nt < 1) throw GridError("grid: nt must be at least 1");
    if (!(T > 0.0)) throw GridError("grid: T must be positive");
    if (!(scaling_factor > 0.0)) throw GridError("grid: scaling factor must be positive");
    h_ = 1.0 / (nx - 1);
    dt_ = T / nt;
    ns_ = dim == 1 ? nx : nx * nx;
    if (dt_ > psf_ * h_ * h_ * (1.0 + kRelTol))
        throw GridError("grid: dt exceeds scaling_factor * h^2; increase nt or scaling_factor");
}

bool SpaceTimeGrid::on_spatial_boundary(int s) const {
    int ix = ix_of(s);
    if (ix == 0 || ix == nx_ - 1) return true;
    if (dim_ == 2) {
        int iy = iy_of(s);
        if (iy == 0 || iy == nx_ - 1) return true;
    }
    return false;
}

double SpaceTimeGrid::dist_to_spatial_boundary(int s) const {
    double x = x_of(s);
    double d = std::min(x, 1.0 - x);
    if (dim_ == 2) {
        double y = y_of(s);
        d = std::min({d, y, 1.0 - y});
    }
    return d;
}

double SpaceTimeGrid::space_dist2(int s, int r) const {
    double dx = x_of(s) - x_of(r);
    double dy = y_of(s) - y_of(r);
    return dx * dx + dy * dy;
}

int SpaceTimeGrid::level_of_time(double t) const {
    int k = static_cast<int>(std::lround(t / dt_));
    if (k < 0 || k > nt_ || std::abs(t - k * dt_) > kRelTol * std::max(1.0, T_))
        throw GridError("grid: time " + std::to_string(t) + " is not a grid level");
    return k;
}

bool SpaceTimeGrid::same(const SpaceTimeGrid& other) const {
    return dim_ == other.dim_ && nx_ == other.nx_ && nt_ == other.nt_ && T_ == other.T_;
}

GridIndexSet::GridIndexSet(const SpaceTimeGrid& grid)
    : grid_(&grid), mask_(static_cast<size_t>(grid.num_nodes()), 0) {}

std::int64_t GridIndexSet::count() const {
    return std::accumulate(mask_.begin(), mask_.end(), std::int64_t{0},
                           [](std::int64_t a, std::uint8_t b) { return a + b; });
}

GridIndexSet GridIndexSet::unite(const GridIndexSet& other) const {
    GridIndexSet out(*grid_);
    for (size_t i = 0; i < mask_.size(); ++i) out.mask_[i] = mask_[i] | other.mask_[i];
    return out;
}

GridIndexSet GridIndexSet::subtract(const GridIndexSet& other) const {
    GridIndexSet out(*grid_);
    for (size_t i = 0; i < mask_.size(); ++i) out.mask_[i] = mask_[i] & static_cast<std::uint8_t>(!other.mask_[i]);
    return out;
}

GridIndexSet GridIndexSet::intersect(const GridIndexSet& other) const {
    GridIndexSet out(*grid_);
    for (size_t i = 0; i < mask_.size(); ++i) out.mask_[i] = mask_[i] & other.mask_[i];
    return out;
}

bool GridIndexSet::is_subset_of(const GridIndexSet& other) const {
    for (size_t i = 0; i < mask_.size(); ++i)
        if (mask_[i] && !other.mask_[i]) return false;
    return true;
}

void GridIndexSet::for_each(const std::function<void(std::int64_t)>& fn) const {
    for (size_t i = 0; i < mask_.size(); ++i)
        if (mask_[i]) fn(static_cast<std::int64_t>(i));
}

GridIndexSet parabolic_boundary(const SpaceTimeGrid& grid) {
    GridIndexSet out(grid);
    for (int s = 0; s < grid.num_space_nodes(); ++s) out.add(grid.node(s, 0));
    for (int k = 1; k <= grid.nt(); ++k)
        for (int s = 0; s < grid.num_space_nodes(); ++s)
            if (grid.on_spatial_boundary(s)) out.add(grid.node(s, k));
    return out;
}

GridIndexSet interior(const SpaceTimeGrid& grid) {
    GridIndexSet out(grid);
    for (int k = 1; k <= grid.nt(); ++k)
        for (int s = 0; s < grid.num_space_nodes(); ++s)
            if (!grid.on_spatial_boundary(s)) out.add(grid.node(s, k));
    return out;
}

namespace {

// Spatial ball membership |x - x0| <= tau with a small tolerance so that
// nodes at exactly tau (tau a multiple of h) are included.
inline bool in_ball(const SpaceTimeGrid& g, int s, int s0, double tau) {
    double tol = kRelTol * g.h();
    return g.space_dist2(s, s0) <= (tau + tol) * (tau + tol);
}

// Iterate spatial nodes in the bounding box of B_tau(x0).
template <typename Fn>
void for_ball_box(const SpaceTimeGrid& g, int s0, double tau, Fn&& fn) {
    int ix0 = g.ix_of(s0), iy0 = g.iy_of(s0);
    int m = static_cast<int>(std::floor(tau / g.h() + 0.5 + kRelTol)) + 1;
    int xlo = std::max(0, ix0 - m), xhi = std::min(g.nx() - 1, ix0 + m);
    if (g.dim() == 1) {
        for (int ix = xlo; ix <= xhi; ++ix) fn(g.space_index(ix));
    } else {
        int ylo = std::max(0, iy0 - m), yhi = std::min(g.nx() - 1, iy0 + m);
        for (int iy = ylo; iy <= yhi; ++iy)
            for (int ix = xlo; ix <= xhi; ++ix) fn(g.space_index(ix, iy));
    }
}

// Level of the cylinder bottom slice: the largest grid level <= t0 - tau^2,
// clamped to 0 when the continuum bottom pokes below the initial time.
int bottom_slice_level(const SpaceTimeGrid& g, int k0, double tau) {
    double tb = g.t_of_level(k0) - tau * tau;
    if (tb < 0.0) return 0;
    return static_cast<int>(std::floor(tb / g.dt() + kRelTol));
}

// A lateral-ring node: inside the ball but adjacent (along an axis) to a
// node outside it, or on the domain's spatial boundary.
bool on_lateral_ring(const SpaceTimeGrid& g, int s, int s0, double tau) {
    if (g.on_spatial_boundary(s)) return true;
    int ix = g.ix_of(s), iy = g.iy_of(s);
    const int offs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    int ndirs = g.dim() == 1 ? 2 : 4;
    for (int d = 0; d < ndirs; ++d) {
        int jx = ix + offs[d][0], jy = iy + offs[d][1];
        if (jx < 0 || jx >= g.nx() || jy < 0 || jy >= g.nx()) continue;
        if (!in_ball(g, g.space_index(jx, jy), s0, tau)) return true;
    }
    return false;
}

} // namespace

LowerCylinder lower_cylinder(const SpaceTimeGrid& grid, int s0, int k0, double tau) {
    if (tau < grid.h() * (1.0 - kRelTol)) throw GridError("lower_cylinder: unresolvable radius");
    if (k0 < 0 || k0 > grid.nt()) throw GridError("lower_cylinder: center level off grid");

    LowerCylinder out{GridIndexSet(grid), GridIndexSet(grid), GridIndexSet(grid)};
    int kb = bottom_slice_level(grid, k0, tau);
    double tb = grid.t_of_level(k0) - tau * tau;

    // Body: levels strictly above the continuum bottom, up to k0.
    int kfirst = std::max(0, static_cast<int>(std::floor(tb / grid.dt() + kRelTol)) + 1);
    if (tb < 0.0) kfirst = 0;
    for (int k = kfirst; k <= k0; ++k) {
        for_ball_box(grid, s0, tau, [&](int s) {
            if (in_ball(grid, s, s0, tau)) out.body.add(grid.node(s, k));
        });
    }

    // Closure: bottom slice level through k0, full closed ball.
    for (int k = std::min(kb, kfirst); k <= k0; ++k) {
        for_ball_box(grid, s0, tau, [&](int s) {
            if (in_ball(grid, s, s0, tau)) out.closure.add(grid.node(s, k));
        });
    }

    // Parabolic boundary: bottom disk at kb, lateral ring at body levels.
    for_ball_box(grid, s0, tau, [&](int s) {
        if (in_ball(grid, s, s0, tau)) out.pboundary.add(grid.node(s, kb));
    });
    for (int k = kfirst; k <= k0; ++k) {
        for_ball_box(grid, s0, tau, [&](int s) {
            if (in_ball(grid, s, s0, tau) && on_lateral_ring(grid, s, s0, tau))
                out.pboundary.add(grid.node(s, k));
        });
    }
    return out;
}

GridIndexSet full_cylinder(const SpaceTimeGrid& grid, int s0, int k0, double tau) {
    if (tau < grid.h() * (1.0 - kRelTol)) throw GridError("full_cylinder: unresolvable radius");
    GridIndexSet out(grid);
    double t0 = grid.t_of_level(k0);
    double tlo = t0 - tau * tau, thi = t0 + tau * tau;
    int kfirst = std::max(0, static_cast<int>(std::floor(tlo / grid.dt() + kRelTol)) + 1);
    if (tlo < 0.0) kfirst = 0;
    int klast = std::min(grid.nt(), static_cast<int>(std::ceil(thi / grid.dt() - kRelTol)) - 1);
    for (int k = kfirst; k <= klast; ++k) {
        for_ball_box(grid, s0, tau, [&](int s) {
            if (in_ball(grid, s, s0, tau)) out.add(grid.node(s, k));
        });
    }
    return out;
}

GridIndexSet parabolic_neighborhood(const GridIndexSet& K, double tau, bool one_sided) {
    const SpaceTimeGrid& grid = K.grid();
    if (K.empty()) throw GridError("parabolic_neighborhood: K is empty");
    GridIndexSet out(grid);
    K.for_each([&](std::int64_t id) {
        int s0 = grid.space_of(id), k0 = grid.level_of(id);
        GridIndexSet cyl = one_sided ? lower_cylinder(grid, s0, k0, tau).body
                                     : full_cylinder(grid, s0, k0, tau);
        out = out.unite(cyl);
    });
    return out;
}

} // namespace fnfb
