#include "ilap/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "ilap/search.hpp"

namespace ilap {

ScalarField cone_field(const Graph& g, Vertex apex, double a, double b, Side side) {
    if (b < 0) {
        throw InputError("cone_field: slope must be >= 0");
    }
    BarrierSpec spec{a, b, 0.0, 1};
    Vertex src[1] = {apex};
    return radial_quadratic(g, src, spec, side);
}

namespace {

// Exact exposed distances from one source; nullopt where truncation or
// disconnection leaves the value uncertain.
std::vector<std::optional<int>> exact_distances(const Graph& g, Vertex src) {
    Vertex s[1] = {src};
    Sweep sweep = bfs(g, s);
    std::vector<std::optional<int>> out(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        int d = sweep.dist[i];
        if (d < 0) {
            continue;
        }
        if (sweep.min_incomplete_dist >= 0 && d > sweep.min_incomplete_dist + 2) {
            continue;
        }
        out[i] = d;
    }
    return out;
}

}  // namespace

ConeComparisonReport cca_ccb_probe(const Graph& g, const ScalarField& u,
                                   const ConeProbeOptions& opts) {
    ConeComparisonReport report;
    std::unordered_map<Vertex, std::vector<std::optional<int>>> dist_cache;
    auto distances_from = [&](Vertex apex) -> const std::vector<std::optional<int>>& {
        auto it = dist_cache.find(apex);
        if (it == dist_cache.end()) {
            it = dist_cache.emplace(apex, exact_distances(g, apex)).first;
        }
        return it->second;
    };

    std::vector<std::vector<Vertex>> subsets;
    if (opts.subsets) {
        subsets = *opts.subsets;
    } else {
        for (Vertex v : g.vertices()) {
            if (!g.complete(v)) {
                continue;
            }
            for (int r = 1; r <= opts.r_max; ++r) {
                BallResult b = ball(g, v, r + 1);
                // Open ball of radius r+1 = closed combinatorial ball of radius r.
                if (b.truncation_limited) {
                    continue;
                }
                subsets.push_back(std::move(b.members));
            }
        }
        std::sort(subsets.begin(), subsets.end());
        subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
    }

    for (std::size_t si = 0; si < subsets.size(); ++si) {
        const auto& subset = subsets[si];
        std::unordered_set<Vertex> in_subset(subset.begin(), subset.end());

        bool members_complete = true;
        for (Vertex x : subset) {
            if (!g.complete(x)) {
                members_complete = false;
                break;
            }
        }
        if (!members_complete) {
            report.samples_skipped++;
            report.skip_notes.push_back("subset " + std::to_string(si) +
                                        " has incomplete members; boundary unknown");
            continue;
        }
        std::vector<Vertex> bd = boundary_of(g, subset);
        if (bd.empty()) {
            report.samples_skipped++;
            report.skip_notes.push_back("subset " + std::to_string(si) + " has empty boundary");
            continue;
        }
        std::vector<Vertex> closure = subset;
        closure.insert(closure.end(), bd.begin(), bd.end());
        bool u_total = true;
        for (Vertex x : closure) {
            if (!u.defined_at(x)) {
                u_total = false;
                break;
            }
        }
        if (!u_total) {
            report.samples_skipped++;
            report.skip_notes.push_back("field undefined on the closure of subset " +
                                        std::to_string(si));
            continue;
        }

        // Candidate cones for this subset.
        std::vector<ConeComparisonSample> cones;
        if (opts.cones) {
            cones = *opts.cones;
        } else {
            for (Vertex apex : g.vertices()) {
                if (in_subset.count(apex)) {
                    continue;
                }
                for (double b : opts.slope_grid) {
                    cones.push_back({apex, b});
                }
            }
        }

        for (const auto& cone : cones) {
            if (in_subset.count(cone.apex)) {
                report.samples_skipped++;
                report.skip_notes.push_back("apex " + std::to_string(cone.apex) +
                                            " lies inside subset " + std::to_string(si));
                continue;
            }
            const auto& dist = distances_from(cone.apex);
            bool distances_ok = true;
            for (Vertex x : closure) {
                if (!dist[g.checked_index(x)].has_value()) {
                    distances_ok = false;
                    break;
                }
            }
            if (!distances_ok) {
                report.samples_skipped++;
                report.skip_notes.push_back("distances from apex " + std::to_string(cone.apex) +
                                            " to subset " + std::to_string(si) +
                                            " are truncation-limited");
                continue;
            }

            // Tighten a so the boundary comparison just holds, then test the
            // implication on the closure. Lower cone a - b d: largest a with
            // u >= cone on the boundary. Upper cone a + b d: smallest a.
            double a_low = std::numeric_limits<double>::infinity();
            double a_up = -std::numeric_limits<double>::infinity();
            for (Vertex y : bd) {
                double dy = *dist[g.checked_index(y)];
                a_low = std::min(a_low, u.at(y) + cone.b * dy);
                a_up = std::max(a_up, u.at(y) - cone.b * dy);
            }
            report.samples_checked += 2;
            for (Vertex x : subset) {
                double dx = *dist[g.checked_index(x)];
                double lower_cone = a_low - cone.b * dx;
                if (u.at(x) < lower_cone - opts.tau) {
                    report.violations.push_back({Side::Lower, cone.apex, a_low, cone.b, x,
                                                 lower_cone - u.at(x), si});
                    break;
                }
            }
            for (Vertex x : subset) {
                double dx = *dist[g.checked_index(x)];
                double upper_cone = a_up + cone.b * dx;
                if (u.at(x) > upper_cone + opts.tau) {
                    report.violations.push_back({Side::Upper, cone.apex, a_up, cone.b, x,
                                                 u.at(x) - upper_cone, si});
                    break;
                }
            }
        }
    }
    return report;
}

LiouvilleReport liouville_probe(const Graph& g, const ScalarField& u, Vertex x0, Vertex x1,
                                double eps, double tau) {
    LiouvilleReport rep;
    if (eps <= 0) {
        throw InputError("liouville_probe: eps must be positive");
    }
    g.checked_index(x0);
    g.checked_index(x1);
    if (x0 == x1) {
        rep.certified = true;
        rep.certified_lower_bound = u.at(x0) - eps;
        rep.reason = "trivial: x0 == x1";
        return rep;
    }

    // Nonnegativity over the exposed graph.
    for (Vertex v : g.vertices()) {
        auto val = u.try_at(v);
        if (!val) {
            rep.reason = "field undefined at vertex " + std::to_string(v);
            rep.failing_vertex = v;
            return rep;
        }
        if (*val < -tau) {
            rep.reason = "field is negative at vertex " + std::to_string(v);
            rep.failing_vertex = v;
            return rep;
        }
    }

    // Superharmonicity at complete vertices; at incomplete ones the exposed
    // neighborhood plus u >= 0 can still certify a violation.
    for (Vertex v : g.vertices()) {
        if (g.complete(v)) {
            if (inf_laplacian(u, g, v).value > tau) {
                rep.reason = "superharmonicity fails at vertex " + std::to_string(v);
                rep.failing_vertex = v;
                return rep;
            }
        } else {
            double hi = 0.0;
            bool any = false;
            for (Vertex w : g.neighbors(v)) {
                hi = any ? std::max(hi, u.at(w)) : u.at(w);
                any = true;
            }
            // inf over the true neighborhood is >= 0, so the true operator
            // value is at least hi - 2 u(v).
            if (any && hi - 2.0 * u.at(v) > tau) {
                rep.reason = "superharmonicity fails at incomplete vertex " + std::to_string(v) +
                             " (lower bound from exposed neighbors)";
                rep.failing_vertex = v;
                return rep;
            }
        }
    }

    Vertex src[1] = {x0};
    DistanceResult dr = distance(g, src, x1);
    if (!dr.exact()) {
        rep.reason = "distance from x0 to x1 is truncation-limited";
        return rep;
    }
    int k = *dr.hops;
    rep.cone_slope = eps / k;

    // Radius beyond which the cone u(x0) - (eps/K) d is nonpositive.
    double need = static_cast<double>(k) * u.at(x0) / eps;
    int n = std::max(k + 1, static_cast<int>(std::ceil(need)) + 1);
    rep.ball_radius = n;

    BallResult bl = ball(g, x0, n + 1);  // closed ball of radius n
    if (bl.truncation_limited) {
        rep.reason = "the required ball of radius " + std::to_string(n) +
                     " around x0 is not fully exposed (truncation-limited)";
        return rep;
    }
    std::vector<Vertex> subset;
    subset.reserve(bl.members.size());
    for (Vertex v : bl.members) {
        if (v != x0) {
            subset.push_back(v);
        }
    }
    if (subset.empty()) {
        rep.reason = "x0 is isolated";
        return rep;
    }
    for (Vertex v : subset) {
        if (!g.complete(v)) {
            rep.reason = "ball member " + std::to_string(v) +
                         " is incomplete; its boundary is unknown";
            rep.failing_vertex = v;
            return rep;
        }
    }

    ConeProbeOptions one;
    one.subsets = std::vector<std::vector<Vertex>>{subset};
    one.cones = std::vector<ConeComparisonSample>{{x0, rep.cone_slope}};
    one.tau = tau;
    ConeComparisonReport probe = cca_ccb_probe(g, u, one);
    if (probe.samples_checked == 0) {
        rep.reason = "cone comparison sample could not be evaluated: " +
                     (probe.skip_notes.empty() ? std::string("skipped") : probe.skip_notes.front());
        return rep;
    }
    for (const auto& v : probe.violations) {
        if (v.side == Side::Lower) {
            rep.reason = "cone comparison from above fails at vertex " + std::to_string(v.vertex);
            rep.failing_vertex = v.vertex;
            return rep;
        }
    }
    if (u.at(x1) < u.at(x0) - eps - tau) {
        rep.reason = "cone comparison passed but the bound itself fails";  // unreachable if sound
        rep.failing_vertex = x1;
        return rep;
    }

    rep.certified = true;
    rep.certified_lower_bound = u.at(x0) - eps;
    rep.reason = "certified";
    return rep;
}

}  // namespace ilap
