#include "ilap/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>

namespace ilap {
namespace euclid {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double FnSpec::eval(const Point& p) const {
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::Constant:
            return value;
        case Kind::Linear:
            return wx * p.x + wy * p.y + w0;
        case Kind::Cone: {
            double dx = p.x - center.x;
            double dy = p.y - center.y;
            return a + slope * std::sqrt(dx * dx + dy * dy);
        }
        case Kind::Poly1d: {
            double acc = 0.0;
            for (std::size_t k = coeffs.size(); k-- > 0;) {
                acc = acc * p.x + coeffs[k];
            }
            return acc;
        }
    }
    return 0.0;
}

FnSpec FnSpec::constant(double v) {
    FnSpec s;
    s.kind = Kind::Constant;
    s.value = v;
    return s;
}

FnSpec FnSpec::linear(double wx, double wy, double w0) {
    FnSpec s;
    s.kind = Kind::Linear;
    s.wx = wx;
    s.wy = wy;
    s.w0 = w0;
    return s;
}

FnSpec FnSpec::cone(Point center, double a, double slope) {
    FnSpec s;
    s.kind = Kind::Cone;
    s.center = center;
    s.a = a;
    s.slope = slope;
    return s;
}

FnSpec FnSpec::poly1d(std::vector<double> coeffs) {
    FnSpec s;
    s.kind = Kind::Poly1d;
    s.coeffs = std::move(coeffs);
    return s;
}

DomainSpec DomainSpec::interval(double lo, double hi) {
    DomainSpec d;
    d.shape = Shape::Box;
    d.dim = 1;
    d.lo = {lo, 0.0};
    d.hi = {hi, 0.0};
    return d;
}

DomainSpec DomainSpec::box2d(Point lo, Point hi) {
    DomainSpec d;
    d.shape = Shape::Box;
    d.dim = 2;
    d.lo = lo;
    d.hi = hi;
    return d;
}

DomainSpec DomainSpec::annulus(Point center, double r_in, double r_out) {
    DomainSpec d;
    d.shape = Shape::Annulus;
    d.dim = 2;
    d.center = center;
    d.r_in = r_in;
    d.r_out = r_out;
    return d;
}

DomainSpec DomainSpec::l_shape(Point lo, Point hi, double cut_x, double cut_y) {
    DomainSpec d;
    d.shape = Shape::LShape;
    d.dim = 2;
    d.lo = lo;
    d.hi = hi;
    d.cut_x = cut_x;
    d.cut_y = cut_y;
    return d;
}

DomainSpec DomainSpec::slab(std::vector<double> curve_lo, std::vector<double> curve_hi,
                            double period) {
    DomainSpec d;
    d.shape = Shape::Slab;
    d.dim = 2;
    d.curve_lo = std::move(curve_lo);
    d.curve_hi = std::move(curve_hi);
    d.period = period;
    return d;
}

DomainSpec DomainSpec::punctured_box(double period, double spacing) {
    DomainSpec d;
    d.shape = Shape::PuncturedBox;
    d.dim = 2;
    d.period = period;
    d.spacing = spacing;
    return d;
}

namespace {

double wrap(double v, double period) {
    double r = std::fmod(v, period);
    return r < 0 ? r + period : r;
}

// Piecewise-linear periodic curve from a uniform table.
double curve_eval(const std::vector<double>& table, double period, double x) {
    if (table.empty()) {
        throw InputError("slab: empty curve table");
    }
    if (table.size() == 1) {
        return table[0];
    }
    double step = period / static_cast<double>(table.size());
    double t = wrap(x, period) / step;
    auto k = static_cast<std::size_t>(t);
    double frac = t - static_cast<double>(k);
    std::size_t k1 = (k + 1) % table.size();
    return table[k % table.size()] * (1.0 - frac) + table[k1] * frac;
}

struct ShapeOps {
    const DomainSpec& spec;
    double tol;

    bool inside_open(const Point& p) const {
        switch (spec.shape) {
            case DomainSpec::Shape::Box:
                if (spec.dim == 1) {
                    return p.x > spec.lo.x + tol && p.x < spec.hi.x - tol;
                }
                return p.x > spec.lo.x + tol && p.x < spec.hi.x - tol &&
                       p.y > spec.lo.y + tol && p.y < spec.hi.y - tol;
            case DomainSpec::Shape::Annulus: {
                double dx = p.x - spec.center.x;
                double dy = p.y - spec.center.y;
                double r = std::sqrt(dx * dx + dy * dy);
                return r > spec.r_in + tol && r < spec.r_out - tol;
            }
            case DomainSpec::Shape::LShape: {
                bool in_box = p.x > spec.lo.x + tol && p.x < spec.hi.x - tol &&
                              p.y > spec.lo.y + tol && p.y < spec.hi.y - tol;
                bool in_cut = p.x > spec.cut_x - tol && p.y > spec.cut_y - tol;
                return in_box && !in_cut;
            }
            case DomainSpec::Shape::Slab: {
                double lo = curve_eval(spec.curve_lo, spec.period, p.x);
                double hi = curve_eval(spec.curve_hi, spec.period, p.x);
                return p.y > lo + tol && p.y < hi - tol;
            }
            case DomainSpec::Shape::PuncturedBox: {
                double fx = wrap(p.x, spec.spacing);
                double fy = wrap(p.y, spec.spacing);
                double dx = std::min(fx, spec.spacing - fx);
                double dy = std::min(fy, spec.spacing - fy);
                return std::sqrt(dx * dx + dy * dy) > tol;
            }
        }
        return false;
    }

    bool inside_closed(const Point& p) const {
        switch (spec.shape) {
            case DomainSpec::Shape::Box:
                if (spec.dim == 1) {
                    return p.x >= spec.lo.x - tol && p.x <= spec.hi.x + tol;
                }
                return p.x >= spec.lo.x - tol && p.x <= spec.hi.x + tol &&
                       p.y >= spec.lo.y - tol && p.y <= spec.hi.y + tol;
            case DomainSpec::Shape::Annulus: {
                double dx = p.x - spec.center.x;
                double dy = p.y - spec.center.y;
                double r = std::sqrt(dx * dx + dy * dy);
                return r >= spec.r_in - tol && r <= spec.r_out + tol;
            }
            case DomainSpec::Shape::LShape: {
                bool in_box = p.x >= spec.lo.x - tol && p.x <= spec.hi.x + tol &&
                              p.y >= spec.lo.y - tol && p.y <= spec.hi.y + tol;
                bool in_open_cut = p.x > spec.cut_x + tol && p.y > spec.cut_y + tol;
                return in_box && !in_open_cut;
            }
            case DomainSpec::Shape::Slab: {
                double lo = curve_eval(spec.curve_lo, spec.period, p.x);
                double hi = curve_eval(spec.curve_hi, spec.period, p.x);
                return p.y >= lo - tol && p.y <= hi + tol;
            }
            case DomainSpec::Shape::PuncturedBox:
                return true;  // closure of the punctured plane is the plane
        }
        return false;
    }
};

}  // namespace

double DomainSample::displacement(const Point& a, const Point& b) const {
    double dx = b.x - a.x;
    double dy = b.y - a.y;
    if (periodic_x && period > 0) {
        dx = dx - period * std::round(dx / period);
    }
    if (periodic_y && period > 0) {
        dy = dy - period * std::round(dy / period);
    }
    return std::sqrt(dx * dx + dy * dy);
}

std::size_t DomainSample::nearest(const Point& p) const {
    if (points.empty()) {
        throw InputError("nearest: empty sample");
    }
    std::size_t best = 0;
    double best_d = displacement(p, points[0]);
    for (std::size_t i = 1; i < points.size(); ++i) {
        double d = displacement(p, points[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

namespace {

// Straight segment staying inside the closure, sampled at h/5 steps. The
// displacement is the min-image one on periodic windows.
bool segment_in_closure(const ShapeOps& ops, const DomainSample& s, const Point& a,
                        const Point& b) {
    double dx = b.x - a.x;
    double dy = b.y - a.y;
    if (s.periodic_x && s.period > 0) {
        dx = dx - s.period * std::round(dx / s.period);
    }
    if (s.periodic_y && s.period > 0) {
        dy = dy - s.period * std::round(dy / s.period);
    }
    double len = std::sqrt(dx * dx + dy * dy);
    int steps = std::max(2, static_cast<int>(std::ceil(len / (s.h / 5.0))));
    for (int k = 1; k < steps; ++k) {
        double t = static_cast<double>(k) / steps;
        Point p{a.x + t * dx, a.y + t * dy};
        if (!ops.inside_closed(p)) {
            return false;
        }
    }
    return true;
}

std::vector<Point> boundary_points(const DomainSpec& spec, double h) {
    std::vector<Point> out;
    auto walk_polygon = [&](const std::vector<Point>& corners) {
        for (std::size_t e = 0; e < corners.size(); ++e) {
            const Point& a = corners[e];
            const Point& b = corners[(e + 1) % corners.size()];
            double len = std::hypot(b.x - a.x, b.y - a.y);
            int n = std::max(1, static_cast<int>(std::llround(len / h)));
            for (int k = 0; k < n; ++k) {
                double t = static_cast<double>(k) / n;
                out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
            }
        }
    };
    switch (spec.shape) {
        case DomainSpec::Shape::Box:
            if (spec.dim == 1) {
                out.push_back({spec.lo.x, 0.0});
                out.push_back({spec.hi.x, 0.0});
            } else {
                walk_polygon({{spec.lo.x, spec.lo.y},
                              {spec.hi.x, spec.lo.y},
                              {spec.hi.x, spec.hi.y},
                              {spec.lo.x, spec.hi.y}});
            }
            break;
        case DomainSpec::Shape::Annulus:
            for (double r : {spec.r_out, spec.r_in}) {
                int n = std::max(8, static_cast<int>(std::ceil(2.0 * M_PI * r / h)));
                for (int k = 0; k < n; ++k) {
                    double t = 2.0 * M_PI * k / n;
                    out.push_back({spec.center.x + r * std::cos(t),
                                   spec.center.y + r * std::sin(t)});
                }
            }
            break;
        case DomainSpec::Shape::LShape:
            walk_polygon({{spec.lo.x, spec.lo.y},
                          {spec.hi.x, spec.lo.y},
                          {spec.hi.x, spec.cut_y},
                          {spec.cut_x, spec.cut_y},
                          {spec.cut_x, spec.hi.y},
                          {spec.lo.x, spec.hi.y}});
            break;
        case DomainSpec::Shape::Slab: {
            int n = std::max(1, static_cast<int>(std::llround(spec.period / h)));
            for (int k = 0; k < n; ++k) {
                double x = spec.period * k / n;
                out.push_back({x, curve_eval(spec.curve_lo, spec.period, x)});
                out.push_back({x, curve_eval(spec.curve_hi, spec.period, x)});
            }
            break;
        }
        case DomainSpec::Shape::PuncturedBox: {
            int n = std::max(1, static_cast<int>(std::llround(spec.period / spec.spacing)));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    out.push_back({i * spec.spacing, j * spec.spacing});
                }
            }
            break;
        }
    }
    return out;
}

struct GridRange {
    Point lo, hi;
};

GridRange grid_range(const DomainSpec& spec) {
    switch (spec.shape) {
        case DomainSpec::Shape::Box:
        case DomainSpec::Shape::LShape:
            return {spec.lo, spec.hi};
        case DomainSpec::Shape::Annulus:
            return {{spec.center.x - spec.r_out, spec.center.y - spec.r_out},
                    {spec.center.x + spec.r_out, spec.center.y + spec.r_out}};
        case DomainSpec::Shape::Slab: {
            double lo = *std::min_element(spec.curve_lo.begin(), spec.curve_lo.end());
            double hi = *std::max_element(spec.curve_hi.begin(), spec.curve_hi.end());
            return {{0.0, lo}, {spec.period, hi}};
        }
        case DomainSpec::Shape::PuncturedBox:
            return {{0.0, 0.0}, {spec.period, spec.period}};
    }
    return {};
}

// Dijkstra over the fine grid from multiple sources, optional early exit.
std::vector<double> fine_dijkstra(const DomainSample& s, std::span<const std::size_t> sources,
                                  double radius) {
    std::vector<double> dist(s.size(), kInf);
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t i : sources) {
        dist[i] = 0.0;
        heap.push({0.0, static_cast<std::uint32_t>(i)});
    }
    while (!heap.empty()) {
        auto [d, i] = heap.top();
        heap.pop();
        if (d > dist[i]) {
            continue;
        }
        if (radius > 0 && d >= radius) {
            continue;
        }
        for (std::size_t k = s.adj_offsets[i]; k < s.adj_offsets[i + 1]; ++k) {
            std::uint32_t j = s.adj[k];
            double nd = d + s.adj_weight[k];
            if (nd < dist[j]) {
                dist[j] = nd;
                heap.push({nd, j});
            }
        }
    }
    return dist;
}

}  // namespace

DomainSample sample_domain(const DomainSpec& spec, double h) {
    if (h <= 0) {
        throw InputError("sample_domain: h must be positive");
    }
    if (spec.dim != 1 && spec.dim != 2) {
        throw InputError("sample_domain: dimension must be 1 or 2");
    }

    DomainSample s;
    s.dim = spec.dim;
    s.periodic_x = spec.shape == DomainSpec::Shape::Slab ||
                   spec.shape == DomainSpec::Shape::PuncturedBox;
    s.periodic_y = spec.shape == DomainSpec::Shape::PuncturedBox;
    s.period = spec.period;
    if (s.periodic_x) {
        // Snap h so the grid tiles the periodic window seamlessly.
        double n = std::max(1.0, std::round(spec.period / h));
        double snapped = spec.period / n;
        if (std::abs(snapped - h) > 1e-12 * spec.period) {
            s.warnings.push_back("h snapped to " + std::to_string(snapped) +
                                 " to tile the periodic window");
        }
        h = snapped;
        s.warnings.push_back("periodic window realization of an unbounded domain");
    }
    s.h = h;
    s.rho = 2.5 * h;

    GridRange range = grid_range(spec);
    double scale = std::max({1.0, range.hi.x - range.lo.x, range.hi.y - range.lo.y});
    ShapeOps ops{spec, 1e-9 * scale};

    // Interior grid.
    auto push_if_interior = [&](const Point& p) {
        if (ops.inside_open(p)) {
            s.points.push_back(p);
        }
    };
    if (spec.dim == 1) {
        auto steps = static_cast<long>(std::floor((range.hi.x - range.lo.x) / h + 1e-9));
        for (long i = 0; i <= steps; ++i) {
            push_if_interior({range.lo.x + i * h, 0.0});
        }
    } else {
        auto sx = static_cast<long>(std::floor((range.hi.x - range.lo.x) / h + 1e-9));
        auto sy = static_cast<long>(std::floor((range.hi.y - range.lo.y) / h + 1e-9));
        // Periodic windows exclude the seam endpoint: x = period wraps to 0.
        if (s.periodic_x) {
            sx -= 1;
        }
        if (s.periodic_y) {
            sy -= 1;
        }
        for (long i = 0; i <= sx; ++i) {
            for (long j = 0; j <= sy; ++j) {
                push_if_interior({range.lo.x + i * h, range.lo.y + j * h});
            }
        }
    }
    s.n_interior = s.points.size();
    if (s.n_interior == 0) {
        throw InputError("sample_domain: empty interior at this h");
    }

    std::vector<Point> bd = boundary_points(spec, h);
    s.points.insert(s.points.end(), bd.begin(), bd.end());
    if (bd.empty()) {
        throw InputError("sample_domain: domain has no boundary samples");
    }

    s.convex = spec.shape == DomainSpec::Shape::Box && !s.periodic_x;

    // Fine-grid edges: all pairs within rho whose segment stays in the closure.
    // Spatial hash on cells of side rho.
    const std::size_t n = s.points.size();
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> cells;
    auto cell_of = [&](const Point& p) {
        auto cx = static_cast<std::int64_t>(std::floor(p.x / s.rho));
        auto cy = static_cast<std::int64_t>(std::floor(p.y / s.rho));
        return cx * 0x100000 + cy;
    };
    for (std::size_t i = 0; i < n; ++i) {
        cells[cell_of(s.points[i])].push_back(static_cast<std::uint32_t>(i));
    }
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
    auto consider = [&](std::uint32_t i, std::uint32_t j) {
        if (i >= j) {
            return;
        }
        double d = s.displacement(s.points[i], s.points[j]);
        if (d <= s.rho && d > 1e-12 * scale &&
            segment_in_closure(ops, s, s.points[i], s.points[j])) {
            adj[i].push_back({j, d});
            adj[j].push_back({i, d});
        }
    };
    // Periodic wrapping is handled through the min-image displacement: points
    // near opposite cut edges are farther than rho in raw cell space, so scan
    // wrapped cell copies as well.
    auto cells_near = [&](const Point& p) {
        std::vector<std::int64_t> keys;
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                Point q{p.x + dx * s.rho, p.y + dy * s.rho};
                if (s.periodic_x && s.period > 0) {
                    q.x = wrap(q.x, s.period);
                }
                if (s.periodic_y && s.period > 0) {
                    q.y = wrap(q.y, s.period);
                }
                keys.push_back(cell_of(q));
            }
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        return keys;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::int64_t key : cells_near(s.points[i])) {
            auto it = cells.find(key);
            if (it == cells.end()) {
                continue;
            }
            for (std::uint32_t j : it->second) {
                consider(static_cast<std::uint32_t>(i), j);
            }
        }
    }

    auto rebuild_csr = [&]() {
        s.adj_offsets.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::sort(adj[i].begin(), adj[i].end());
            s.adj_offsets[i + 1] = s.adj_offsets[i] + adj[i].size();
        }
        s.adj.resize(s.adj_offsets[n]);
        s.adj_weight.resize(s.adj_offsets[n]);
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [j, w] : adj[i]) {
                s.adj[k] = j;
                s.adj_weight[k] = w;
                ++k;
            }
        }
    };
    rebuild_csr();

    // Connected components; keep the largest.
    std::vector<int> comp(n, -1);
    int n_comp = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (comp[i] >= 0) {
            continue;
        }
        std::vector<std::size_t> stack{i};
        comp[i] = n_comp;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t k = s.adj_offsets[v]; k < s.adj_offsets[v + 1]; ++k) {
                std::uint32_t w = s.adj[k];
                if (comp[w] < 0) {
                    comp[w] = n_comp;
                    stack.push_back(w);
                }
            }
        }
        ++n_comp;
    }
    if (n_comp > 1) {
        std::vector<std::size_t> sizes(n_comp, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sizes[comp[i]]++;
        }
        int keep = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) -
                                    sizes.begin());
        s.warnings.push_back("sample split into " + std::to_string(n_comp) +
                             " components; keeping the largest (" +
                             std::to_string(sizes[keep]) + " of " + std::to_string(n) +
                             " points)");
        std::vector<Point> kept;
        std::vector<std::vector<std::pair<std::uint32_t, double>>> kept_adj;
        std::vector<std::uint32_t> remap(n, 0);
        std::size_t new_interior = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (comp[i] != keep) {
                continue;
            }
            remap[i] = static_cast<std::uint32_t>(kept.size());
            kept.push_back(s.points[i]);
            if (i < s.n_interior) {
                ++new_interior;
            }
        }
        kept_adj.resize(kept.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (comp[i] != keep) {
                continue;
            }
            for (const auto& [j, w] : adj[i]) {
                kept_adj[remap[i]].push_back({remap[j], w});
            }
        }
        s.points = std::move(kept);
        s.n_interior = new_interior;
        adj = std::move(kept_adj);
        const std::size_t m = s.points.size();
        s.adj_offsets.assign(m + 1, 0);
        for (std::size_t i = 0; i < m; ++i) {
            std::sort(adj[i].begin(), adj[i].end());
            s.adj_offsets[i + 1] = s.adj_offsets[i] + adj[i].size();
        }
        s.adj.resize(s.adj_offsets[m]);
        s.adj_weight.resize(s.adj_offsets[m]);
        std::size_t k = 0;
        for (std::size_t i = 0; i < m; ++i) {
            for (const auto& [j, w] : adj[i]) {
                s.adj[k] = j;
                s.adj_weight[k] = w;
                ++k;
            }
        }
    }
    if (s.n_interior == 0) {
        throw InputError("sample_domain: no interior points survive");
    }
    if (s.n_interior == s.points.size()) {
        throw InputError("sample_domain: boundary samples are disconnected from the interior");
    }

    // Intrinsic distance to the boundary, then reorder the interior block by
    // it so solver sweeps run boundary-in.
    std::vector<std::size_t> bd_idx;
    for (std::size_t i = s.n_interior; i < s.points.size(); ++i) {
        bd_idx.push_back(i);
    }
    s.boundary_dist = fine_dijkstra(s, bd_idx, 0.0);
    s.width = 0.0;
    for (std::size_t i = 0; i < s.n_interior; ++i) {
        if (s.boundary_dist[i] == kInf) {
            throw InputError("sample_domain: interior point cannot reach the boundary");
        }
        s.width = std::max(s.width, s.boundary_dist[i]);
    }

    {
        const std::size_t m = s.points.size();
        std::vector<std::uint32_t> order(s.n_interior);
        for (std::size_t i = 0; i < s.n_interior; ++i) {
            order[i] = static_cast<std::uint32_t>(i);
        }
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (s.boundary_dist[a] != s.boundary_dist[b]) {
                return s.boundary_dist[a] < s.boundary_dist[b];
            }
            if (s.points[a].x != s.points[b].x) {
                return s.points[a].x < s.points[b].x;
            }
            return s.points[a].y < s.points[b].y;
        });
        std::vector<std::uint32_t> remap(m);
        for (std::size_t newi = 0; newi < order.size(); ++newi) {
            remap[order[newi]] = static_cast<std::uint32_t>(newi);
        }
        for (std::size_t i = s.n_interior; i < m; ++i) {
            remap[i] = static_cast<std::uint32_t>(i);
        }
        std::vector<Point> pts(m);
        std::vector<double> bdist(m);
        std::vector<std::vector<std::pair<std::uint32_t, double>>> adj2(m);
        for (std::size_t i = 0; i < m; ++i) {
            pts[remap[i]] = s.points[i];
            bdist[remap[i]] = s.boundary_dist[i];
            for (std::size_t k = s.adj_offsets[i]; k < s.adj_offsets[i + 1]; ++k) {
                adj2[remap[i]].push_back({remap[s.adj[k]], s.adj_weight[k]});
            }
        }
        s.points = std::move(pts);
        s.boundary_dist = std::move(bdist);
        s.adj_offsets.assign(m + 1, 0);
        for (std::size_t i = 0; i < m; ++i) {
            std::sort(adj2[i].begin(), adj2[i].end());
            s.adj_offsets[i + 1] = s.adj_offsets[i] + adj2[i].size();
        }
        s.adj.resize(s.adj_offsets[m]);
        s.adj_weight.resize(s.adj_offsets[m]);
        std::size_t k = 0;
        for (std::size_t i = 0; i < m; ++i) {
            for (const auto& [j, w] : adj2[i]) {
                s.adj[k] = j;
                s.adj_weight[k] = w;
                ++k;
            }
        }
    }
    return s;
}

double fine_grid_distance(const DomainSample& s, std::size_t i, std::size_t j) {
    std::size_t src[1] = {i};
    std::vector<double> d = fine_dijkstra(s, src, 0.0);
    return d[j];
}

double intrinsic_distance(const DomainSample& s, std::size_t i, std::size_t j) {
    if (i >= s.size() || j >= s.size()) {
        throw InputError("intrinsic_distance: sample index out of range");
    }
    if (i == j) {
        return 0.0;
    }
    if (s.convex) {
        return s.displacement(s.points[i], s.points[j]);
    }
    return fine_grid_distance(s, i, j);
}

std::vector<double> distances_within(const DomainSample& s, std::size_t source, double radius) {
    std::size_t src[1] = {source};
    return fine_dijkstra(s, src, radius);
}

EpsGraphBundle build_eps_graph(const DomainSample& s, double eps, const FnSpec& f,
                               const FnSpec& g, int rhs_sign) {
    if (eps <= 0) {
        throw InputError("build_eps_graph: eps must be positive");
    }
    if (s.h > eps / 10.0 + 1e-12) {
        throw PreconditionError("build_eps_graph: sample spacing h = " + std::to_string(s.h) +
                                " is too coarse for eps = " + std::to_string(eps) +
                                " (need h <= eps/10)");
    }
    if (rhs_sign != 1 && rhs_sign != -1) {
        throw InputError("build_eps_graph: rhs_sign must be +1 or -1");
    }

    EpsGraphBundle bundle;
    bundle.eps = eps;
    bundle.rhs_sign = rhs_sign;
    bundle.measured_width = s.width;
    bundle.w_hops = static_cast<int>(std::floor(s.width / eps)) + 1;

    // Adjacency by truncated Dijkstra from every interior sample. Edges among
    // boundary samples are irrelevant to the discrete problem and skipped.
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < s.n_interior; ++i) {
        std::vector<double> d = distances_within(s, i, eps);
        bool any = false;
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j != i && d[j] < eps) {
                any = true;
                edges.emplace_back(static_cast<Vertex>(std::min(i, j)),
                                   static_cast<Vertex>(std::max(i, j)));
            }
        }
        if (!any) {
            throw InputError("build_eps_graph: interior sample " + std::to_string(i) +
                             " is isolated; eps is too small for the sample geometry");
        }
    }
    std::vector<Vertex> all_ids(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        all_ids[i] = static_cast<Vertex>(i);
    }
    auto graph = std::make_shared<Graph>(Graph::materialized(edges, all_ids));

    std::vector<Vertex> interior(all_ids.begin(),
                                 all_ids.begin() + static_cast<std::ptrdiff_t>(s.n_interior));
    ScalarField rhs;
    const double e2 = eps * eps * rhs_sign;
    for (std::size_t i = 0; i < s.n_interior; ++i) {
        rhs.set(static_cast<Vertex>(i), e2 * f.eval(s.points[i]));
    }
    ScalarField gdata;
    for (std::size_t i = s.n_interior; i < s.size(); ++i) {
        gdata.set(static_cast<Vertex>(i), g.eval(s.points[i]));
    }
    bundle.graph = graph;
    bundle.problem = make_problem(graph, std::move(interior), std::move(rhs), std::move(gdata));
    bundle.hop_width = bundle.problem.partition.width_bound.value_or(bundle.w_hops);
    return bundle;
}

BoundCheck uniform_bound_check(const EpsGraphBundle& bundle, const SolveOutcome& outcome) {
    BoundCheck check;
    // The bundle's right-hand side already carries the eps^2 scaling. The
    // barrier argument runs on the graph itself, so use the measured hop
    // width; floor(W/eps)+1 is its continuum surrogate and can lag one hop
    // behind at extreme width-to-eps ratios.
    const int hops = std::max(bundle.hop_width, bundle.w_hops);
    BarrierSpec spec;
    spec.a = bundle.problem.g_sup_norm();
    spec.c = bundle.problem.f_sup_norm();
    spec.b = hops * spec.c;
    check.bound = spec.a;
    for (int r = 0; r <= hops; ++r) {
        check.bound = std::max(check.bound, quad_upper(spec, r));
    }
    check.sup_u = outcome.u.sup_norm();
    // Symmetric instances saturate the bound exactly, so allow the numerical
    // field its residual amplified by the quadratic comparison factor.
    double slack = kDefaultTolerance + outcome.residual_sup * hops * (hops + 1);
    check.ok = check.sup_u <= check.bound + slack;
    return check;
}

namespace {

ScalarField map_previous_solution(const DomainSample& cur, const DomainSample& prev,
                                  const ScalarField& prev_u) {
    ScalarField init;
    for (std::size_t i = 0; i < cur.size(); ++i) {
        std::size_t j = prev.nearest(cur.points[i]);
        init.set(static_cast<Vertex>(i), prev_u.at(static_cast<Vertex>(j)));
    }
    return init;
}

}  // namespace

ConvergenceReport convergence_run(const DomainSpec& spec, std::span<const double> eps_schedule,
                                  const ConvergenceOptions& opts) {
    if (eps_schedule.empty()) {
        throw InputError("convergence_run: empty schedule");
    }
    for (std::size_t i = 1; i < eps_schedule.size(); ++i) {
        if (eps_schedule[i] >= eps_schedule[i - 1]) {
            throw InputError("convergence_run: schedule must be strictly decreasing");
        }
    }
    if (opts.h_divisor < 10.0) {
        throw InputError("convergence_run: h rule must satisfy h <= eps/10");
    }

    ConvergenceReport report;
    report.schedule.assign(eps_schedule.begin(), eps_schedule.end());

    std::optional<DomainSample> prev_sample;
    std::optional<ScalarField> prev_u;
    std::vector<double> lipschitz_r;

    for (double eps : eps_schedule) {
        ConvergenceLevel level;
        level.eps = eps;
        try {
            DomainSample sample = sample_domain(spec, eps / opts.h_divisor);
            for (const auto& w : sample.warnings) {
                report.warnings.push_back("eps " + std::to_string(eps) + ": " + w);
            }
            if (sample.size() > opts.max_samples) {
                throw InputError("level produces " + std::to_string(sample.size()) +
                                 " samples, above the configured cap of " +
                                 std::to_string(opts.max_samples));
            }
            level.h = sample.h;
            level.samples = sample.size();

            EpsGraphBundle bundle =
                build_eps_graph(sample, eps, spec.f, spec.g, opts.rhs_sign);
            level.w_hops = bundle.w_hops;

            if (report.probes.empty()) {
                // Fixed geometric probe set from the coarsest level: interior
                // samples well inside, spread evenly; a few boundary samples.
                std::vector<std::size_t> deep;
                for (std::size_t i = 0; i < sample.n_interior; ++i) {
                    if (sample.boundary_dist[i] >= 0.35 * sample.width) {
                        deep.push_back(i);
                    }
                }
                if (deep.empty()) {
                    for (std::size_t i = 0; i < sample.n_interior; ++i) {
                        deep.push_back(i);
                    }
                }
                std::size_t count = std::min(opts.n_probes, deep.size());
                for (std::size_t k = 0; k < count; ++k) {
                    report.probes.push_back(sample.points[deep[k * deep.size() / count]]);
                }
                std::size_t nb = sample.size() - sample.n_interior;
                std::size_t bcount = std::min(opts.n_boundary_probes, nb);
                for (std::size_t k = 0; k < bcount; ++k) {
                    report.boundary_probes.push_back(
                        sample.points[sample.n_interior + k * nb / bcount]);
                }
                lipschitz_r = {0.2 * sample.width, 0.4 * sample.width};
            }

            SolveOptions sopts;
            sopts.scheme = opts.scheme;
            sopts.tol = opts.tol;
            if (opts.warm_start && prev_sample && prev_u) {
                sopts.init = InitKind::Custom;
                sopts.init_field = map_previous_solution(sample, *prev_sample, *prev_u);
            }
            SolveOutcome outcome = solve(bundle.problem, sopts);
            level.residual = outcome.residual_sup;
            level.iterations = outcome.iterations;
            level.converged = outcome.converged;
            if (!outcome.converged) {
                level.failure = "solver did not converge within max_iters";
            }
            level.sup_u = outcome.u.sup_norm();

            BoundCheck bc = uniform_bound_check(bundle, outcome);
            level.bound = bc.bound;
            level.bound_ok = bc.ok;

            const Graph& g = *bundle.graph;
            // Empirical interior Lipschitz constants over adjacent pairs.
            for (double r : lipschitz_r) {
                double worst = 0.0;
                for (std::size_t i = 0; i < sample.n_interior; ++i) {
                    if (sample.boundary_dist[i] <= r) {
                        continue;
                    }
                    double ui = outcome.u.at(static_cast<Vertex>(i));
                    for (Vertex w : g.neighbors(static_cast<Vertex>(i))) {
                        auto j = static_cast<std::size_t>(w);
                        if (j < sample.n_interior && sample.boundary_dist[j] > r) {
                            worst = std::max(
                                worst, std::abs(ui - outcome.u.at(w)) / eps);
                        }
                    }
                }
                level.lipschitz.push_back({r, worst});
            }
            // Modulus over strided sources within delta = 2 eps and 4 eps.
            {
                const double deltas[2] = {2.0 * eps, 4.0 * eps};
                const double r_min = lipschitz_r.empty() ? 0.0 : lipschitz_r.front();
                std::vector<std::size_t> sources;
                for (std::size_t i = 0; i < sample.n_interior; ++i) {
                    if (sample.boundary_dist[i] > r_min) {
                        sources.push_back(i);
                    }
                }
                std::size_t stride = std::max<std::size_t>(1, sources.size() / 320);
                for (double r : lipschitz_r) {
                    double worst[2] = {0.0, 0.0};
                    for (std::size_t si = 0; si < sources.size(); si += stride) {
                        std::size_t v = sources[si];
                        if (sample.boundary_dist[v] <= r) {
                            continue;
                        }
                        std::vector<double> d = distances_within(sample, v, deltas[1]);
                        double uv = outcome.u.at(static_cast<Vertex>(v));
                        for (std::size_t j = 0; j < sample.n_interior; ++j) {
                            if (j == v || sample.boundary_dist[j] <= r) {
                                continue;
                            }
                            double diff = std::abs(uv - outcome.u.at(static_cast<Vertex>(j)));
                            for (int t = 0; t < 2; ++t) {
                                if (d[j] < deltas[t]) {
                                    worst[t] = std::max(worst[t], diff / deltas[t]);
                                }
                            }
                        }
                    }
                    for (int t = 0; t < 2; ++t) {
                        level.modulus.push_back({r, deltas[t], worst[t]});
                    }
                }
            }
            // Boundary attainment within delta = eps of each boundary probe;
            // the window must shrink with eps or it saturates across the
            // whole width on coarse levels.
            {
                level.boundary_delta = eps;
                double worst = 0.0;
                for (const Point& y0 : report.boundary_probes) {
                    std::size_t y_idx = sample.nearest(y0);
                    double gy = spec.g.eval(y0);
                    std::vector<double> d = distances_within(sample, y_idx, level.boundary_delta);
                    for (std::size_t j = 0; j < sample.n_interior; ++j) {
                        if (d[j] < level.boundary_delta) {
                            worst = std::max(
                                worst, std::abs(outcome.u.at(static_cast<Vertex>(j)) - gy));
                        }
                    }
                }
                level.boundary_attainment = worst;
            }
            // Probe-set error against the registered exact solution.
            if (spec.exact) {
                double err = 0.0;
                for (const Point& p : report.probes) {
                    std::size_t i = sample.nearest(p);
                    err = std::max(err, std::abs(outcome.u.at(static_cast<Vertex>(i)) -
                                                 spec.exact->eval(sample.points[i])));
                }
                level.exact_error = err;
            }
            if (prev_sample && prev_u) {
                double diff = 0.0;
                for (const Point& p : report.probes) {
                    std::size_t i = sample.nearest(p);
                    std::size_t j = prev_sample->nearest(p);
                    diff = std::max(diff,
                                    std::abs(outcome.u.at(static_cast<Vertex>(i)) -
                                             prev_u->at(static_cast<Vertex>(j))));
                }
                level.cauchy = diff;
            }

            prev_sample = std::move(sample);
            prev_u = std::move(outcome.u);
        } catch (const std::exception& e) {
            level.failure = e.what();
        }
        report.levels.push_back(std::move(level));
    }
    return report;
}

}  // namespace euclid
}  // namespace ilap
