#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mobgraph {

// Contract violation (bad input, unmet precondition, failed validation).
// Carries the module and operation so callers can render "module.op: cause".
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string op, std::string cause)
        : std::runtime_error(module + "." + op + ": " + cause),
          module_(std::move(module)),
          op_(std::move(op)),
          cause_(std::move(cause)) {}

    const std::string& module() const noexcept { return module_; }
    const std::string& op() const noexcept { return op_; }
    const std::string& cause() const noexcept { return cause_; }

private:
    std::string module_;
    std::string op_;
    std::string cause_;
};

// An iterative solver ran out of iterations before reaching its tolerance.
// Keeps the last iterate and its residual so the caller can inspect (or
// deliberately accept) the partial result.
class ConvergenceError : public Error {
public:
    ConvergenceError(std::string module, std::string op, std::string cause,
                     std::vector<double> last_iterate, double residual,
                     long iterations)
        : Error(std::move(module), std::move(op), std::move(cause)),
          last_iterate_(std::move(last_iterate)),
          residual_(residual),
          iterations_(iterations) {}

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }
    long iterations() const noexcept { return iterations_; }

private:
    std::vector<double> last_iterate_;
    double residual_;
    long iterations_;
};

} // namespace mobgraph
