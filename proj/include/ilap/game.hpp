#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ilap/field.hpp"

namespace ilap {

// One tug-of-war instance: play region X with a running payoff per visited
// interior vertex, terminal payoff on the boundary, a start vertex, and a
// round cap. The game value solves the equation with right-hand side -2 r.
struct GameConfig {
    std::shared_ptr<const Graph> graph;
    Partition partition;
    ScalarField running;    // r on the interior
    ScalarField terminal;   // g on the boundary
    Vertex start = 0;
    std::int64_t max_rounds = 1'000'000;
};

GameConfig make_game(std::shared_ptr<const Graph> graph, std::vector<Vertex> interior,
                     ScalarField running, ScalarField terminal, Vertex start,
                     std::int64_t max_rounds = 1'000'000);

// The Dirichlet problem whose solution is the game-value candidate.
DirichletProblem game_to_problem(const GameConfig& cfg);

struct Transcript {
    std::vector<Vertex> visited;        // interior positions x_0 ... x_n
    std::optional<Vertex> terminal;     // boundary vertex reached, nullopt = capped
    std::vector<bool> coin;             // per round, true = maximizer moved
    std::optional<double> payoff;       // sum of running payoffs + terminal; unset when capped
    bool capped = false;
};

class Strategy {
  public:
    // Move to the adjacent vertex maximizing (resp. minimizing) the guide
    // field; ties resolve to the smallest vertex id.
    static Strategy greedy_max(ScalarField guide);
    static Strategy greedy_min(ScalarField guide);
    // Strictly decrease the distance to the boundary on every controlled move.
    static Strategy toward_boundary(const GameConfig& cfg);
    // Fixed move per vertex.
    static Strategy scripted(std::unordered_map<Vertex, Vertex> moves);

    Vertex choose(const Graph& g, Vertex at, std::int64_t round) const;

  private:
    enum class Kind { GreedyMax, GreedyMin, TowardBoundary, Scripted };
    Kind kind_ = Kind::GreedyMax;
    ScalarField guide_;                          // greedy kinds: field; toward: d(Y, .)
    std::unordered_map<Vertex, Vertex> moves_;
};

// One play-out. The coin stream is a pure function of (seed, game_index,
// round), so transcripts are reproducible and games are independent.
Transcript play_game(const GameConfig& cfg, const Strategy& maximizer, const Strategy& minimizer,
                     std::uint64_t seed, std::uint64_t game_index = 0);

struct ValueEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t capped = 0;    // excluded from the mean, never silently averaged
    std::int64_t n = 0;         // games requested
    std::int64_t completed = 0; // games that terminated
};

ValueEstimate estimate_value(const GameConfig& cfg, const Strategy& maximizer,
                             const Strategy& minimizer, std::int64_t n_games, std::uint64_t seed);

// sup over the complete interior of |laplacian(u) + 2 r|; small values certify
// u as a game-value candidate.
double dpp_check(const GameConfig& cfg, const ScalarField& u);

}  // namespace ilap
