#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dgt {

class PreconditionViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotContractible : public std::runtime_error {
public:
    NotContractible(std::size_t out_degree_tail, std::size_t in_degree_head)
        : std::runtime_error("edge is not butterfly contractible: out-degree of tail is " +
                             std::to_string(out_degree_tail) + ", in-degree of head is " +
                             std::to_string(in_degree_head)),
          out_degree_tail(out_degree_tail),
          in_degree_head(in_degree_head) {}

    std::size_t out_degree_tail;
    std::size_t in_degree_head;
};

class LoopError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}

    std::size_t line;
};

class TooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dgt
