#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace mz {

// Finite point set in R^m under the sup-norm. Point order is meaningful:
// greedy_thin scans by index.
struct PointSet {
    int dim = 1;
    std::vector<Eigen::VectorXd> points;

    int size() const { return static_cast<int>(points.size()); }
};

// Closed cube of half-side half_side centered at center.
struct Window {
    Eigen::VectorXd center;
    double half_side = 1.0;

    int dim() const { return static_cast<int>(center.size()); }
};

enum class CoverState { covered, uncovered, undecided };

struct CoverageReport {
    CoverState state = CoverState::undecided;
    std::optional<Eigen::VectorXd> witness;  // present iff state == uncovered
    double resolution_reached = 0.0;         // half-side of the finest sub-cube examined
};

inline double sup_dist(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (a - b).lpNorm<Eigen::Infinity>();
}

// Minimum sup-norm distance over distinct pairs. Throws for fewer than 2 points.
double min_pairwise_separation(const PointSet& ps);

// Max over centers of (points strictly inside the open cube of half-side
// delta1/2 around that center) minus 1. Empty set gives 0 by convention.
// Note the half-side: multiplicity 0 forces pairwise separation >= delta1/2,
// not delta1; separation >= delta1 forces multiplicity 0.
int packing_multiplicity(const PointSet& ps, double delta1);

// Certified tri-state covering decision by recursive subdivision of w.
// A sub-cube counts as covered when it lies entirely inside some open cube of
// half-side delta around a net point (strict, with relative slack 1e-12); a
// sub-cube center at sup-distance >= delta from every net point is an
// uncovered witness; otherwise subdivide until max_depth, then undecided.
CoverageReport covering_check(const PointSet& ps, double delta, const Window& w,
                              int max_depth = 40);

// Scan points in index order, keep a point iff it lies outside every open
// delta-cube of already-kept points. Output preserves input order, is
// delta-separated, and every input point lies within delta of some output.
PointSet greedy_thin(const PointSet& ps, double delta);

// N = floor(2^m ((4 delta / delta1)^m - 1)), the max number of cubes of
// half-side delta centered at a delta1-separated set that can meet a fixed
// one; the volume argument compares Q_{2 delta} minus the central open
// delta1/2-cube against the per-point disjoint delta1/2-cubes. The sharper
// value with one subtracted fails already for the integer lattice with
// delta just above 1/2 (both neighbors meet the fixed cube). Requires
// delta1 < 2 delta.
long long intersection_bound(int m, double delta, double delta1);

// Greedy pigeonhole: assign each cube Q_h(X_i) in index order to the first of
// n_bound+1 bins all of whose members are disjoint from it. Returns at most
// n_bound+1 bins partitioning the index set. Throws assertion_error naming
// the cube index if no bin can take some cube.
std::vector<std::vector<int>> disjoint_partition(const PointSet& centers, double h,
                                                 long long n_bound);

// All points of offset + spacing*Z^m inside the closed window, row-major with
// the last axis fastest. Throws when the count would exceed cap.
PointSet lattice_net(int m, double spacing, const Window& w, const Eigen::VectorXd& offset,
                     long long cap = 10'000'000);

}  // namespace mz
