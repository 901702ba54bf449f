#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace colloid {

// Thrown by iterative solvers when the iteration budget runs out.
// Carries the last iterate and its residual so callers can inspect
// how close the solve got.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, Eigen::VectorXd last_iterate, double residual)
        : std::runtime_error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

    explicit ConvergenceError(const std::string& what)
        : std::runtime_error(what), residual_(std::numeric_limits<double>::quiet_NaN()) {}

    const Eigen::VectorXd& last_iterate() const { return last_iterate_; }
    double residual() const { return residual_; }

private:
    Eigen::VectorXd last_iterate_;
    double residual_;
};

// Two particles came closer than the overlap threshold during integration.
class OverlapError : public std::runtime_error {
public:
    OverlapError(const std::string& what, int first, int second, double distance)
        : std::runtime_error(what), first_(first), second_(second), distance_(distance) {}

    int first() const { return first_; }
    int second() const { return second_; }
    double distance() const { return distance_; }

private:
    int first_;
    int second_;
    double distance_;
};

// Non-finite state encountered while integrating.
class IntegratorError : public std::runtime_error {
public:
    IntegratorError(const std::string& what, double time, long step)
        : std::runtime_error(what), time_(time), step_(step) {}

    double time() const { return time_; }
    long step() const { return step_; }

private:
    double time_;
    long step_;
};

} // namespace colloid
