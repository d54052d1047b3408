// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "bellvol/basis.hpp"
#include "bellvol/classical.hpp"
#include "bellvol/correlators.hpp"
#include "bellvol/quantum.hpp"
#include "bellvol/rng.hpp"

namespace bellvol {

enum class Scheduling { uniform_random, stratified };

// Both parties follow a fixed local rule: the first answers +1 with
// probability (1 + mu_i)/2, the second deterministically answers bob_signs[j].
struct ClassicalExplicit {
    std::vector<double> mu;
    std::vector<int> bob_signs;
};

// The deterministic strategy family from fd_strategy(n).
struct ClassicalFd {};

// The optimal local strategy for n = 2: mu = (1, 0), both answers +1.
struct ClassicalOptN2 {};

// Measurements on the maximally entangled state. An empty setup means the
// canonical saturating setup for the configured n.
struct QuantumStrategy {
    MeasurementSetup setup;
};

using Strategy = std::variant<ClassicalExplicit, ClassicalFd, ClassicalOptN2, QuantumStrategy>;

struct GameConfig {
    int n = 2;
    long long rounds = 0;
    int trials = 1;
    std::uint64_t seed = 0;
    Scheduling scheduling = Scheduling::stratified;
    Strategy strategy = QuantumStrategy{};
    bool record_paths = false;
};

// One vector step of the walker: s = a * b * u_j(i) * u_j. Settings are
// 1-based; the step is zero whenever u_j(i) = 0 (i.e. i > j + 1).
inline std::vector<double> step(int i, int j, int a, int b, const OrthogonalBasis& basis) {
    if (i < 1 || i > basis.n || j < 1 || j > basis.n)
        throw std::invalid_argument("step: setting index out of range");
    if ((a != 1 && a != -1) || (b != 1 && b != -1))
        throw std::invalid_argument("step: outputs must be +-1");
    const auto& u = basis.u(j);
    const double scale = static_cast<double>(a) * static_cast<double>(b) *
                         static_cast<double>(u[static_cast<std::size_t>(i) - 1]);
    std::vector<double> s(static_cast<std::size_t>(basis.n));
    for (int l = 1; l <= basis.n; ++l)
        s[static_cast<std::size_t>(l) - 1] = scale * static_cast<double>(u[static_cast<std::size_t>(l) - 1]);
    return s;
}

// A strategy materialized for sampling: either explicit classical biases and
// signs, or the correlator matrix of a quantum setup.
struct ResolvedStrategy {
    bool quantum = false;
    std::vector<double> mu;
    std::vector<int> bob_signs;
    CorrelatorMatrix correlators; // also carries the analytic correlators for classical rules
};

inline ResolvedStrategy resolve_strategy(const Strategy& strategy, int n) {
    ResolvedStrategy r;
    auto make_classical = [&](std::vector<double> mu, std::vector<int> signs) {
        if (static_cast<int>(mu.size()) != n || static_cast<int>(signs.size()) != n)
            throw std::invalid_argument("strategy dimension does not match n");
        for (double v : mu)
            if (!(std::abs(v) <= 1.0)) throw std::invalid_argument("strategy bias outside [-1, 1]");
        for (int s : signs)
            if (s != 1 && s != -1) throw std::invalid_argument("strategy signs must be +-1");
        r.quantum = false;
        r.mu = std::move(mu);
        r.bob_signs = std::move(signs);
        r.correlators = CorrelatorMatrix::zero(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                r.correlators.at(i, j) = r.mu[static_cast<std::size_t>(i) - 1] *
                                         static_cast<double>(r.bob_signs[static_cast<std::size_t>(j) - 1]);
    };
    if (const auto* explicit_rule = std::get_if<ClassicalExplicit>(&strategy)) {
        make_classical(explicit_rule->mu, explicit_rule->bob_signs);
    } else if (std::holds_alternative<ClassicalFd>(strategy)) {
        LocalStrategy s = fd_strategy(n);
        make_classical(std::move(s.mu), std::move(s.bob_signs));
    } else if (std::holds_alternative<ClassicalOptN2>(strategy)) {
        if (n != 2) throw std::invalid_argument("the opt-n2 strategy requires n == 2");
        make_classical({1.0, 0.0}, {1, 1});
    } else {
        const auto& q = std::get<QuantumStrategy>(strategy);
        MeasurementSetup setup = q.setup;
        if (setup.n == 0) setup = saturating_setup(n);
        if (setup.n != n) throw std::invalid_argument("measurement setup dimension does not match n");
        if (!setup.directions_unit()) throw std::invalid_argument("measurement directions must be unit vectors");
        r.quantum = true;
        r.correlators = correlators_epr(setup);
    }
    return r;
}

// Draw one round's outputs for settings (i, j), 1-based. Quantum sampling uses
// the zero-marginal joint law P(a, b) = (1 + a b c_ij)/4; classical sampling
// draws a from the bias and sets b deterministically. One uniform draw either way.
inline std::pair<int, int> sample_outputs(const ResolvedStrategy& strategy, int i, int j, Philox& rng) {
    const int n = strategy.correlators.n;
    if (i < 1 || i > n || j < 1 || j > n)
        throw std::invalid_argument("sample_outputs: setting index out of range");
    const double u = rng.next_double();
    if (strategy.quantum) {
        const double c = strategy.correlators.at(i, j);
        const double p_same = (1.0 + c) / 4.0; // P(+,+) = P(-,-)
        if (u < p_same) return {1, 1};
        if (u < 0.5) return {1, -1};
        if (u < 0.5 + (1.0 - c) / 4.0) return {-1, 1};
        return {-1, -1};
    }
    const int b = strategy.bob_signs[static_cast<std::size_t>(j) - 1];
    const int a = (u < (1.0 + strategy.mu[static_cast<std::size_t>(i) - 1]) / 2.0) ? 1 : -1;
    return {a, b};
}

struct TrialResult {
    std::vector<double> w; // per-direction accumulators W_j = sum a b u_j(i)
    double estimate = 0.0;
    bool estimate_defined = false;
    double s_t = 0.0; // n = 2 only: W_1 W_2 / T^2
    bool s_t_defined = false;
    std::vector<double> path; // flattened rounds x n positions, when recorded
};

struct GameRun {
    GameConfig config;
    std::vector<TrialResult> trials;
    std::vector<double> per_direction_mean;
    double estimate_mean = 0.0, estimate_stderr = 0.0;
    bool estimate_mean_defined = false, estimate_stderr_defined = false;
    double s_t_mean = 0.0, s_t_stderr = 0.0;
    bool s_t_mean_defined = false, s_t_stderr_defined = false;
    double analytic_target = 0.0;
};

// Per-round observer: (trial, round, i, j, a, b, position-after-round),
// trial and round 1-based as in the CSV schema.
using RoundSink = std::function<void(int, long long, int, int, int, int, const std::vector<double>&)>;

// Runs `trials` independent repetitions of a T-round game. Each trial owns a
// counter-based RNG substream keyed by (seed, trial), so results are
// bit-identical for a fixed config regardless of how trials are scheduled.
// The estimator multiplies per-direction accumulators: with T_j rounds landing
// on direction j, E[(n/T_j) W_j] = u_j . c_j, so the product targets B_n.
// Under stratified scheduling T_j = T/n is deterministic and the estimator is
// unbiased (the factors are independent); uniform-random scheduling uses the
// same n^2/T normalization, exact only in expectation per factor.
inline GameRun run_game(const GameConfig& config, const RoundSink& sink = {}) {
    if (config.n < 1) throw std::invalid_argument("run_game: n must be positive");
    if (config.rounds < 0) throw std::invalid_argument("run_game: rounds must be nonnegative");
    if (config.trials < 1) throw std::invalid_argument("run_game: trials must be positive");
    if (config.scheduling == Scheduling::stratified && config.rounds % config.n != 0)
        throw std::invalid_argument("run_game: stratified scheduling requires rounds divisible by n");

    const int n = config.n;
    const long long rounds = config.rounds;
    const OrthogonalBasis basis = build_basis(n);
    const ResolvedStrategy strategy = resolve_strategy(config.strategy, n);

    GameRun run;
    run.config = config;
    run.analytic_target = bell_multiplicative(strategy.correlators, basis);
    run.trials.resize(static_cast<std::size_t>(config.trials));
    run.per_direction_mean.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<int> schedule;
    std::vector<double> position(static_cast<std::size_t>(n));
    for (int trial = 0; trial < config.trials; ++trial) {
        Philox rng(config.seed, static_cast<std::uint64_t>(trial));
        TrialResult& result = run.trials[static_cast<std::size_t>(trial)];
        result.w.assign(static_cast<std::size_t>(n), 0.0);
        std::fill(position.begin(), position.end(), 0.0);
        if (config.record_paths)
            result.path.reserve(static_cast<std::size_t>(rounds) * static_cast<std::size_t>(n));

        if (config.scheduling == Scheduling::stratified) {
            schedule.resize(static_cast<std::size_t>(rounds));
            const long long per_direction = n == 0 ? 0 : rounds / n;
            for (long long t = 0; t < rounds; ++t)
                schedule[static_cast<std::size_t>(t)] = static_cast<int>(t / per_direction) + 1;
            for (long long t = rounds - 1; t > 0; --t) {
                const long long pick = rng.next_below(static_cast<std::uint32_t>(t + 1));
                std::swap(schedule[static_cast<std::size_t>(t)], schedule[static_cast<std::size_t>(pick)]);
            }
        }

        for (long long round = 0; round < rounds; ++round) {
            int j;
            if (config.scheduling == Scheduling::stratified) {
                j = schedule[static_cast<std::size_t>(round)];
            } else {
                j = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n))) + 1;
            }
            const int i = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n))) + 1;
            const auto [a, b] = sample_outputs(strategy, i, j, rng);
            const auto& u = basis.u(j);
            const double weight = static_cast<double>(a) * static_cast<double>(b) *
                                  static_cast<double>(u[static_cast<std::size_t>(i) - 1]);
            result.w[static_cast<std::size_t>(j) - 1] += weight;
            for (int l = 1; l <= n; ++l)
                position[static_cast<std::size_t>(l) - 1] +=
                    weight * static_cast<double>(u[static_cast<std::size_t>(l) - 1]);
            if (config.record_paths)
                result.path.insert(result.path.end(), position.begin(), position.end());
            if (sink) sink(trial + 1, round + 1, i, j, a, b, position);
        }

        if (rounds > 0) {
            const double scale = static_cast<double>(n) * static_cast<double>(n) / static_cast<double>(rounds);
            double estimate = 1.0;
            for (double w : result.w) estimate *= scale * w;
            result.estimate = estimate;
            result.estimate_defined = true;
            if (n == 2) {
                result.s_t = result.w[0] * result.w[1] /
                             (static_cast<double>(rounds) * static_cast<double>(rounds));
                result.s_t_defined = true;
            }
            for (int l = 0; l < n; ++l)
                run.per_direction_mean[static_cast<std::size_t>(l)] += result.w[static_cast<std::size_t>(l)];
        }
    }

    for (double& w : run.per_direction_mean) w /= static_cast<double>(config.trials);

    if (rounds > 0) {
        auto mean_stderr = [&](auto&& get) {
            double mean = 0.0;
            for (const auto& t : run.trials) mean += get(t);
            mean /= static_cast<double>(config.trials);
            double var = 0.0;
            for (const auto& t : run.trials) {
                const double d = get(t) - mean;
                var += d * d;
            }
            const bool have_stderr = config.trials >= 2;
            const double stderr_value =
                have_stderr ? std::sqrt(var / (static_cast<double>(config.trials) *
                                               static_cast<double>(config.trials - 1)))
                            : 0.0;
            return std::tuple<double, double, bool>(mean, stderr_value, have_stderr);
        };
        auto [em, es, esd] = mean_stderr([](const TrialResult& t) { return t.estimate; });
        run.estimate_mean = em;
        run.estimate_stderr = es;
        run.estimate_mean_defined = true;
        run.estimate_stderr_defined = esd;
        if (n == 2) {
            auto [sm, ss, ssd] = mean_stderr([](const TrialResult& t) { return t.s_t; });
            run.s_t_mean = sm;
            run.s_t_stderr = ss;
            run.s_t_mean_defined = true;
            run.s_t_stderr_defined = ssd;
        }
    }
    return run;
}

} // namespace bellvol
