#pragma once

#include <stdexcept>
#include <string>

namespace hps {

// Thrown when a computation fails numerically (singular systems, divergent
// training, failed fits). Invalid arguments use std::invalid_argument /
// std::domain_error instead; the CLI maps the two families to exit codes 2/1.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FitError : NumericalError {
    int rank;
    int required_rank;
    FitError(const std::string& msg, int rank_, int required_)
        : NumericalError(msg), rank(rank_), required_rank(required_) {}
};

struct TrainingError : NumericalError {
    int epoch;
    TrainingError(const std::string& msg, int epoch_)
        : NumericalError(msg), epoch(epoch_) {}
};

}  // namespace hps
