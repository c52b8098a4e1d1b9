#include "mz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mz/errors.hpp"

namespace mz {

double min_pairwise_separation(const PointSet& ps) {
    if (ps.size() < 2) throw std::invalid_argument("insufficient points");
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ps.size(); ++i)
        for (int j = i + 1; j < ps.size(); ++j)
            best = std::min(best, sup_dist(ps.points[i], ps.points[j]));
    return best;
}

int packing_multiplicity(const PointSet& ps, double delta1) {
    if (delta1 <= 0) throw std::invalid_argument("delta1 must be positive");
    if (ps.points.empty()) return 0;
    const double half = delta1 / 2;
    const double open = half - 1e-12 * half;
    int worst = 0;
    for (const auto& c : ps.points) {
        int inside = 0;
        for (const auto& p : ps.points)
            if (sup_dist(p, c) < open) ++inside;
        worst = std::max(worst, inside - 1);
    }
    return worst;
}

namespace {

struct CoverSearch {
    const PointSet* ps = nullptr;
    double delta = 0;
    double eps = 0;       // strictness slack for "inside the open cube"
    double keep = 0;      // candidate retention radius slack
    int m = 0;
    int max_depth = 0;
    std::vector<std::vector<int>> cand;  // per-depth candidate indices
    std::vector<Eigen::VectorXd> ctr;    // per-depth cell centers
    double min_h = 0;
    bool undecided = false;
    std::optional<Eigen::VectorXd> witness;

    // Returns false once a witness is found.
    bool visit(int depth, double h) {
        const auto& cs = cand[static_cast<size_t>(depth)];
        const auto& x = ctr[static_cast<size_t>(depth)];
        min_h = std::min(min_h, h);

        double dmin = std::numeric_limits<double>::infinity();
        for (int i : cs) {
            const double d = sup_dist(x, ps->points[static_cast<size_t>(i)]);
            if (d + h < delta - eps) return true;  // cell inside one open cube
            dmin = std::min(dmin, d);
        }
        if (dmin >= delta) {  // center not covered by any point at all
            witness = x;
            return false;
        }
        if (depth == max_depth) {
            undecided = true;
            return true;
        }

        const double hc = h / 2;
        auto& child_cand = cand[static_cast<size_t>(depth + 1)];
        auto& child_ctr = ctr[static_cast<size_t>(depth + 1)];
        for (long corner = 0; corner < (1L << m); ++corner) {
            for (int j = 0; j < m; ++j)
                child_ctr[j] = x[j] + (((corner >> j) & 1) ? hc : -hc);
            child_cand.clear();
            for (int i : cs)
                if (sup_dist(child_ctr, ps->points[static_cast<size_t>(i)]) < delta + hc + keep)
                    child_cand.push_back(i);
            if (!visit(depth + 1, hc)) return false;
        }
        return true;
    }
};

}  // namespace

CoverageReport covering_check(const PointSet& ps, double delta, const Window& w, int max_depth) {
    if (delta <= 0) throw std::invalid_argument("delta must be positive");
    if (max_depth < 1) throw std::invalid_argument("max_depth must be positive");
    const int m = w.dim();
    if (m < 1 || m > 20) throw std::invalid_argument("dimension out of range");

    CoverSearch s;
    s.ps = &ps;
    s.delta = delta;
    s.eps = 1e-12 * delta;
    s.keep = 1e-9 * delta;
    s.m = m;
    s.max_depth = max_depth;
    s.cand.assign(static_cast<size_t>(max_depth) + 1, {});
    s.ctr.assign(static_cast<size_t>(max_depth) + 1, Eigen::VectorXd(m));
    s.min_h = w.half_side;

    s.ctr[0] = w.center;
    auto& root = s.cand[0];
    for (int i = 0; i < ps.size(); ++i)
        if (sup_dist(w.center, ps.points[static_cast<size_t>(i)]) < delta + w.half_side + s.keep)
            root.push_back(i);

    CoverageReport r;
    const bool clean = s.visit(0, w.half_side);
    r.resolution_reached = s.min_h;
    if (!clean) {
        r.state = CoverState::uncovered;
        r.witness = s.witness;
    } else if (s.undecided) {
        r.state = CoverState::undecided;
    } else {
        r.state = CoverState::covered;
    }
    return r;
}

PointSet greedy_thin(const PointSet& ps, double delta) {
    if (ps.points.empty()) throw std::invalid_argument("insufficient points");
    if (delta <= 0) throw std::invalid_argument("delta must be positive");
    const double open = delta - 1e-12 * delta;
    PointSet out;
    out.dim = ps.dim;
    for (const auto& p : ps.points) {
        bool outside_all = true;
        for (const auto& z : out.points)
            if (sup_dist(p, z) < open) {
                outside_all = false;
                break;
            }
        if (outside_all) out.points.push_back(p);
    }
    return out;
}

long long intersection_bound(int m, double delta, double delta1) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    if (delta <= 0 || delta1 <= 0) throw std::invalid_argument("deltas must be positive");
    if (!(delta1 < 2 * delta)) throw std::invalid_argument("hypothesis violated: delta1 >= 2 delta");
    const double v = std::pow(2.0, m) * (std::pow(4 * delta / delta1, m) - 1.0);
    if (v > 9e18) throw std::invalid_argument("hypothesis violated: bound overflows");
    return static_cast<long long>(std::floor(v + 1e-9));
}

std::vector<std::vector<int>> disjoint_partition(const PointSet& centers, double h,
                                                 long long n_bound) {
    if (h <= 0) throw std::invalid_argument("h must be positive");
    if (n_bound < 0) throw std::invalid_argument("n_bound must be nonnegative");
    const double touch = 2 * h * (1 + 1e-12);  // closed cubes meet iff sup-dist <= 2h
    const long long usable = std::min<long long>(n_bound + 1, std::max(centers.size(), 1));
    std::vector<std::vector<int>> bins(static_cast<size_t>(usable));
    for (int i = 0; i < centers.size(); ++i) {
        bool placed = false;
        for (auto& bin : bins) {
            bool ok = true;
            for (int j : bin)
                if (sup_dist(centers.points[static_cast<size_t>(i)],
                             centers.points[static_cast<size_t>(j)]) <= touch) {
                    ok = false;
                    break;
                }
            if (ok) {
                bin.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed)
            throw assertion_error("multiplicity exceeded at cube " + std::to_string(i));
    }
    while (!bins.empty() && bins.back().empty()) bins.pop_back();
    return bins;
}

PointSet lattice_net(int m, double spacing, const Window& w, const Eigen::VectorXd& offset,
                     long long cap) {
    if (spacing <= 0) throw std::invalid_argument("spacing must be positive");
    if (m < 1 || w.dim() != m || offset.size() != m)
        throw std::invalid_argument("dimension mismatch");
    if (cap < 1) throw std::invalid_argument("cap must be positive");

    std::vector<long long> lo(static_cast<size_t>(m)), hi(static_cast<size_t>(m));
    long long total = 1;
    for (int j = 0; j < m; ++j) {
        const double a = (w.center[j] - w.half_side - offset[j]) / spacing;
        const double b = (w.center[j] + w.half_side - offset[j]) / spacing;
        lo[static_cast<size_t>(j)] = static_cast<long long>(std::ceil(a - 1e-9));
        hi[static_cast<size_t>(j)] = static_cast<long long>(std::floor(b + 1e-9));
        if (hi[static_cast<size_t>(j)] < lo[static_cast<size_t>(j)]) {
            total = 0;
            break;
        }
        const long long cnt = hi[static_cast<size_t>(j)] - lo[static_cast<size_t>(j)] + 1;
        if (total > (cap + cnt - 1) / cnt)
            throw std::invalid_argument("point budget exceeded (cap " + std::to_string(cap) + ")");
        total *= cnt;
    }
    if (total > cap)
        throw std::invalid_argument("point budget exceeded (cap " + std::to_string(cap) + ")");

    PointSet out;
    out.dim = m;
    if (total == 0) return out;
    out.points.reserve(static_cast<size_t>(total));
    std::vector<long long> idx(lo);
    Eigen::VectorXd p(m);
    while (true) {
        for (int j = 0; j < m; ++j) p[j] = offset[j] + spacing * idx[static_cast<size_t>(j)];
        out.points.push_back(p);
        int axis = m - 1;
        while (axis >= 0) {
            if (++idx[static_cast<size_t>(axis)] <= hi[static_cast<size_t>(axis)]) break;
            idx[static_cast<size_t>(axis)] = lo[static_cast<size_t>(axis)];
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

}  // namespace mz
