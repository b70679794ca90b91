#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lemni {

// Error taxonomy aligned with the CLI exit codes:
//   2 = bad input, 3 = theorem hypothesis violated, 4 = resource or numeric limit.
enum class ErrorKind { Input = 2, Hypothesis = 3, Limit = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::string context = {})
        : std::runtime_error(message), kind_(kind), context_(std::move(context)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& context() const noexcept { return context_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
    std::string context_;
};

struct InputError : Error {
    explicit InputError(const std::string& m, std::string ctx = {})
        : Error(ErrorKind::Input, m, std::move(ctx)) {}
};

struct HypothesisError : Error {
    explicit HypothesisError(const std::string& m, std::string ctx = {})
        : Error(ErrorKind::Hypothesis, m, std::move(ctx)) {}
};

struct ResourceError : Error {
    explicit ResourceError(const std::string& m, std::string ctx = {})
        : Error(ErrorKind::Limit, m, std::move(ctx)) {}
};

// Root finder hit its iteration cap with corrections still above tolerance.
struct NonConvergenceError : Error {
    explicit NonConvergenceError(const std::string& m, std::string ctx = {})
        : Error(ErrorKind::Limit, m, std::move(ctx)) {}
};

// A root of the integrand polynomial sits inside the singularity margin of the
// curve; callers should fall back to the closed form.
struct SingularIntegrandError : Error {
    explicit SingularIntegrandError(const std::string& m, std::string ctx = {})
        : Error(ErrorKind::Input, m, std::move(ctx)) {}
};

// The theta grid is too coarse to match branches reliably; retry with larger n_theta.
struct StepTooCoarseError : Error {
    explicit StepTooCoarseError(const std::string& m, std::string ctx = {})
        : Error(ErrorKind::Input, m, std::move(ctx)) {}
};

}  // namespace lemni
