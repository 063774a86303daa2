#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fnfb/errors.hpp"

namespace fnfb {

// Uniform grid on [0,1]^dim x [0,T]. Spatial nodes are i*h with
// h = 1/(nx-1); time levels are k*dt with dt = T/nt, k = 0..nt.
// The parabolic scaling factor bounds dt <= psf * h^2 so that a cylinder
// of spatial radius r spans about r^2/dt whole time steps.
class SpaceTimeGrid {
  public:
    SpaceTimeGrid(int dim, int nx, int nt, double T, double scaling_factor = 1.0);

    int dim() const { return dim_; }
    int nx() const { return nx_; }
    int nt() const { return nt_; }
    double T() const { return T_; }
    double h() const { return h_; }
    double dt() const { return dt_; }
    double scaling_factor() const { return psf_; }

    // Spatial nodes per level and total node count (all levels).
    int num_space_nodes() const { return ns_; }
    std::int64_t num_nodes() const { return static_cast<std::int64_t>(ns_) * (nt_ + 1); }

    // Spatial index <-> coordinates.
    int space_index(int ix, int iy = 0) const { return iy * nx_ + ix; }
    int ix_of(int s) const { return s % nx_; }
    int iy_of(int s) const { return dim_ == 2 ? s / nx_ : 0; }
    double x_of(int s) const { return ix_of(s) * h_; }
    double y_of(int s) const { return dim_ == 2 ? iy_of(s) * h_ : 0.0; }

    // Space-time node id.
    std::int64_t node(int s, int k) const { return static_cast<std::int64_t>(k) * ns_ + s; }
    int space_of(std::int64_t id) const { return static_cast<int>(id % ns_); }
    int level_of(std::int64_t id) const { return static_cast<int>(id / ns_); }
    double t_of_level(int k) const { return k * dt_; }

    bool on_spatial_boundary(int s) const;
    // Euclidean distance from node s to the boundary of [0,1]^dim.
    double dist_to_spatial_boundary(int s) const;
    // Squared Euclidean distance between spatial nodes.
    double space_dist2(int s, int r) const;

    // Nearest time level to t; throws if t is not a grid level (tol-relative).
    int level_of_time(double t) const;

    bool same(const SpaceTimeGrid& other) const;

  private:
    int dim_, nx_, nt_;
    double T_, h_, dt_, psf_;
    int ns_;
};

// A set of space-time grid nodes, stored as a dense membership mask.
class GridIndexSet {
  public:
    explicit GridIndexSet(const SpaceTimeGrid& grid);

    const SpaceTimeGrid& grid() const { return *grid_; }

    bool contains(std::int64_t id) const { return mask_[static_cast<size_t>(id)] != 0; }
    void add(std::int64_t id) { mask_[static_cast<size_t>(id)] = 1; }
    void remove(std::int64_t id) { mask_[static_cast<size_t>(id)] = 0; }

    std::int64_t count() const;
    bool empty() const { return count() == 0; }

    GridIndexSet unite(const GridIndexSet& other) const;
    GridIndexSet subtract(const GridIndexSet& other) const;
    GridIndexSet intersect(const GridIndexSet& other) const;
    bool is_subset_of(const GridIndexSet& other) const;
    bool operator==(const GridIndexSet& other) const { return mask_ == other.mask_; }

    void for_each(const std::function<void(std::int64_t)>& fn) const;

  private:
    const SpaceTimeGrid* grid_;
    std::vector<std::uint8_t> mask_;
};

// Lateral boundary at all levels union everything at t = 0.
GridIndexSet parabolic_boundary(const SpaceTimeGrid& grid);
// Complement: spatially interior nodes at levels k >= 1.
GridIndexSet interior(const SpaceTimeGrid& grid);

// Discrete lower cylinder Q^-_tau(x0,t0) = B_tau(x0) x (t0-tau^2, t0],
// clipped to the grid. Spatial membership is the inclusive grid ball
// |x-x0| <= tau; the time interval is half-open so the level at exactly
// t0 - tau^2 is excluded (it carries the bottom slice of the parabolic
// boundary instead). pboundary = bottom disk + lateral ring; when the
// continuum bottom lies below t=0 the bottom slice clips to level 0,
// which then belongs to both body and pboundary (initial data nodes).
struct LowerCylinder {
    GridIndexSet body;
    GridIndexSet pboundary;
    GridIndexSet closure;
};

LowerCylinder lower_cylinder(const SpaceTimeGrid& grid, int s0, int k0, double tau);

// Full cylinder body: B_tau(x0) x (t0-tau^2, t0+tau^2), clipped.
GridIndexSet full_cylinder(const SpaceTimeGrid& grid, int s0, int k0, double tau);

// N_tau(K): union of (lower, if one_sided) cylinders over the nodes of K.
GridIndexSet parabolic_neighborhood(const GridIndexSet& K, double tau, bool one_sided = false);

} // namespace fnfb
