#include "ilap/game.hpp"

#include <algorithm>
#include <cmath>

#include "ilap/calculus.hpp"
#include "ilap/search.hpp"

namespace ilap {

namespace {

// Counter-based bit stream: one hash per (seed, game, round).
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool coin_flip(std::uint64_t seed, std::uint64_t game, std::uint64_t round) {
    std::uint64_t h = splitmix64(seed ^ splitmix64(game ^ splitmix64(round)));
    return (h >> 63) != 0;
}

}  // namespace

GameConfig make_game(std::shared_ptr<const Graph> graph, std::vector<Vertex> interior,
                     ScalarField running, ScalarField terminal, Vertex start,
                     std::int64_t max_rounds) {
    if (!graph) {
        throw InputError("null graph");
    }
    GameConfig cfg;
    cfg.partition = make_partition(*graph, std::move(interior));
    if (!cfg.partition.is_interior(start)) {
        throw InputError("start vertex " + std::to_string(start) + " is not in the play region");
    }
    for (Vertex x : cfg.partition.interior) {
        if (!running.defined_at(x)) {
            throw InputError("running payoff undefined at vertex " + std::to_string(x));
        }
    }
    for (Vertex y : cfg.partition.boundary) {
        if (!terminal.defined_at(y)) {
            throw InputError("terminal payoff undefined at vertex " + std::to_string(y));
        }
    }
    if (max_rounds < 1) {
        throw InputError("max_rounds must be >= 1");
    }
    cfg.graph = std::move(graph);
    cfg.running = std::move(running);
    cfg.terminal = std::move(terminal);
    cfg.start = start;
    cfg.max_rounds = max_rounds;
    return cfg;
}

DirichletProblem game_to_problem(const GameConfig& cfg) {
    ScalarField f;
    for (Vertex x : cfg.partition.interior) {
        f.set(x, -2.0 * cfg.running.at(x));
    }
    DirichletProblem p;
    p.graph = cfg.graph;
    p.partition = cfg.partition;
    p.f = std::move(f);
    p.g = cfg.terminal;
    return p;
}

Strategy Strategy::greedy_max(ScalarField guide) {
    Strategy s;
    s.kind_ = Kind::GreedyMax;
    s.guide_ = std::move(guide);
    return s;
}

Strategy Strategy::greedy_min(ScalarField guide) {
    Strategy s;
    s.kind_ = Kind::GreedyMin;
    s.guide_ = std::move(guide);
    return s;
}

Strategy Strategy::toward_boundary(const GameConfig& cfg) {
    Sweep sweep = bfs(*cfg.graph, cfg.partition.boundary);
    Strategy s;
    s.kind_ = Kind::TowardBoundary;
    for (std::size_t i = 0; i < cfg.graph->vertex_count(); ++i) {
        if (sweep.dist[i] >= 0) {
            s.guide_.set(cfg.graph->vertex_at(i), sweep.dist[i]);
        }
    }
    return s;
}

Strategy Strategy::scripted(std::unordered_map<Vertex, Vertex> moves) {
    Strategy s;
    s.kind_ = Kind::Scripted;
    s.moves_ = std::move(moves);
    return s;
}

Vertex Strategy::choose(const Graph& g, Vertex at, std::int64_t round) const {
    auto nbrs = g.neighbors(at);
    if (nbrs.empty()) {
        throw StrategyError("no legal move from isolated vertex " + std::to_string(at) +
                            " at round " + std::to_string(round));
    }
    switch (kind_) {
        case Kind::Scripted: {
            auto it = moves_.find(at);
            if (it == moves_.end()) {
                throw StrategyError("scripted strategy has no move at vertex " +
                                    std::to_string(at) + " (round " + std::to_string(round) + ")");
            }
            return it->second;
        }
        case Kind::GreedyMax:
        case Kind::GreedyMin: {
            Vertex best = nbrs.front();
            double best_val = guide_.at(best);
            for (std::size_t k = 1; k < nbrs.size(); ++k) {
                double val = guide_.at(nbrs[k]);
                bool better = kind_ == Kind::GreedyMax ? val > best_val : val < best_val;
                if (better) {  // neighbors are id-sorted, strict improvement keeps smallest id
                    best = nbrs[k];
                    best_val = val;
                }
            }
            return best;
        }
        case Kind::TowardBoundary: {
            double here = guide_.at(at);
            for (Vertex w : nbrs) {
                auto d = guide_.try_at(w);
                if (d && *d < here) {
                    return w;  // first id-sorted strictly-descending neighbor
                }
            }
            throw StrategyError("toward-boundary strategy is stuck at vertex " +
                                std::to_string(at) + " (round " + std::to_string(round) + ")");
        }
    }
    throw StrategyError("unreachable");
}

Transcript play_game(const GameConfig& cfg, const Strategy& maximizer, const Strategy& minimizer,
                     std::uint64_t seed, std::uint64_t game_index) {
    const Graph& g = *cfg.graph;
    Transcript t;
    Vertex pos = cfg.start;
    long double acc = 0.0L;
    for (std::int64_t round = 0; round < cfg.max_rounds; ++round) {
        t.visited.push_back(pos);
        acc += cfg.running.at(pos);
        bool max_moves = coin_flip(seed, game_index, static_cast<std::uint64_t>(round));
        t.coin.push_back(max_moves);
        Vertex next = max_moves ? maximizer.choose(g, pos, round) : minimizer.choose(g, pos, round);
        if (!g.adjacent(pos, next)) {
            throw StrategyError("strategy moved to non-neighbor " + std::to_string(next) +
                                " from " + std::to_string(pos) + " at round " +
                                std::to_string(round));
        }
        pos = next;
        if (cfg.partition.is_boundary(pos)) {
            t.terminal = pos;
            acc += cfg.terminal.at(pos);
            t.payoff = static_cast<double>(acc);
            return t;
        }
    }
    t.capped = true;
    return t;
}

ValueEstimate estimate_value(const GameConfig& cfg, const Strategy& maximizer,
                             const Strategy& minimizer, std::int64_t n_games,
                             std::uint64_t seed) {
    if (n_games < 1) {
        throw InputError("estimate_value: n_games must be >= 1");
    }
    ValueEstimate est;
    est.n = n_games;
    // Welford accumulation: exact for constant payoff streams and stable
    // otherwise.
    long double mean = 0.0L;
    long double m2 = 0.0L;
    for (std::int64_t i = 0; i < n_games; ++i) {
        Transcript t = play_game(cfg, maximizer, minimizer, seed, static_cast<std::uint64_t>(i));
        if (t.capped) {
            est.capped++;
            continue;
        }
        long double x = *t.payoff;
        est.completed++;
        long double delta = x - mean;
        mean += delta / est.completed;
        m2 += delta * (x - mean);
    }
    if (est.completed == 0) {
        throw PreconditionError("estimate_value: every game hit the round cap");
    }
    est.mean = static_cast<double>(mean);
    if (est.completed > 1) {
        long double var = m2 / (est.completed - 1.0L);
        if (var < 0.0L) {
            var = 0.0L;
        }
        est.stderr_ = static_cast<double>(sqrtl(var / est.completed));
    }
    return est;
}

double dpp_check(const GameConfig& cfg, const ScalarField& u) {
    const Graph& g = *cfg.graph;
    double sup = 0.0;
    for (Vertex x : cfg.partition.interior) {
        if (!g.complete(x)) {
            continue;
        }
        sup = std::max(sup, std::abs(inf_laplacian(u, g, x).value + 2.0 * cfg.running.at(x)));
    }
    return sup;
}

}  // namespace ilap
