#pragma once

#include <stdexcept>
#include <string>

namespace ncgraph {

// Input or model integrity problem (unknown ids, malformed documents,
// inconsistent events). Maps to CLI exit code 2.
class ScenarioError : public std::runtime_error {
  public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

// A probability or other numeric input outside its admissible range.
class DomainError : public std::runtime_error {
  public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Problem size exceeds a configured exact-solve limit. Maps to exit code 3.
class CapacityError : public std::runtime_error {
  public:
    CapacityError(const std::string& what, long long limit)
        : std::runtime_error(what), limit_(limit) {}
    long long limit() const { return limit_; }

  private:
    long long limit_;
};

// An iterative solver ran out of iterations before certifying the requested
// tolerance. Carries the best certified bounds reached. Exit code 3.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double best_value, double best_gap,
                     long long iterations)
        : std::runtime_error(what),
          best_value_(best_value),
          best_gap_(best_gap),
          iterations_(iterations) {}
    double best_value() const { return best_value_; }
    double best_gap() const { return best_gap_; }
    long long iterations() const { return iterations_; }

  private:
    double best_value_;
    double best_gap_;
    long long iterations_;
};

}  // namespace ncgraph
