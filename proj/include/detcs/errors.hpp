#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace detcs {

// All library failures derive from Error. Input and precondition problems are
// distinguished from InvariantViolation, which only fires when a computed
// result contradicts a proven bound (i.e. a kernel bug).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ContractViolation : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    RankDeficient(std::size_t estimated_rank, std::size_t required)
        : Error("rank-deficient input: estimated rank " + std::to_string(estimated_rank) +
                ", need " + std::to_string(required)),
          rank_(estimated_rank) {}
    std::size_t estimated_rank() const noexcept { return rank_; }

private:
    std::size_t rank_;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

class WrongRegime : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line), detail_(what) {}
    std::size_t line() const noexcept { return line_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

class OracleError : public Error {
public:
    using Error::Error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

// lhs exceeded rhs beyond tolerance.
class InequalityViolation : public InvariantViolation {
public:
    using InvariantViolation::InvariantViolation;
};

}  // namespace detcs
