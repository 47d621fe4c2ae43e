#pragma once

#include <stdexcept>
#include <string>

namespace discoord {

// Base class for all structural errors raised by this library. Non-convergence
// is not an error: solvers report it through their result structs.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---- graph construction / lookup -------------------------------------------

class GraphError : public Error {
public:
    using Error::Error;
};

class SelfLoopError : public GraphError {
public:
    explicit SelfLoopError(int node)
        : GraphError("self-loop at node " + std::to_string(node)), node_(node) {}
    int node() const { return node_; }

private:
    int node_;
};

class DuplicateEdgeError : public GraphError {
public:
    DuplicateEdgeError(int a, int b)
        : GraphError("duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")"),
          a_(a), b_(b) {}
    int a() const { return a_; }
    int b() const { return b_; }

private:
    int a_;
    int b_;
};

class NodeOutOfRangeError : public GraphError {
public:
    explicit NodeOutOfRangeError(int node)
        : GraphError("node " + std::to_string(node) + " out of range"), node_(node) {}
    int node() const { return node_; }

private:
    int node_;
};

class NotAnEdgeError : public GraphError {
public:
    NotAnEdgeError(int a, int b)
        : GraphError("(" + std::to_string(a) + "," + std::to_string(b) + ") is not an edge"),
          a_(a), b_(b) {}
    int a() const { return a_; }
    int b() const { return b_; }

private:
    int a_;
    int b_;
};

// ---- scenario parsing / validation ------------------------------------------

class ScenarioError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public ScenarioError {
public:
    SyntaxError(int line, const std::string& detail)
        : ScenarioError("syntax error at line " + std::to_string(line) + ": " + detail),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class MissingFieldError : public ScenarioError {
public:
    explicit MissingFieldError(std::string field)
        : ScenarioError("missing field: " + field), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class UnknownFieldError : public ScenarioError {
public:
    explicit UnknownFieldError(std::string field)
        : ScenarioError("unknown field: " + field), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class LengthMismatchError : public ScenarioError {
public:
    LengthMismatchError(std::string field, std::size_t got, std::size_t want)
        : ScenarioError("field '" + field + "' has " + std::to_string(got) +
                        " entries, expected " + std::to_string(want)),
          field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class BoundViolationError : public ScenarioError {
public:
    explicit BoundViolationError(int node)
        : ScenarioError("lower bound exceeds upper bound at node " + std::to_string(node)),
          node_(node) {}
    int node() const { return node_; }

private:
    int node_;
};

class NonFiniteValueError : public ScenarioError {
public:
    NonFiniteValueError(int node, std::string field)
        : ScenarioError("non-finite value in '" + field + "' at node " + std::to_string(node)),
          node_(node), field_(std::move(field)) {}
    int node() const { return node_; }
    const std::string& field() const { return field_; }

private:
    int node_;
    std::string field_;
};

class DisconnectedGraphError : public ScenarioError {
public:
    DisconnectedGraphError() : ScenarioError("graph is not connected") {}
};

// ---- oracle -----------------------------------------------------------------

class SingularSystemError : public Error {
public:
    SingularSystemError() : Error("linear system is singular") {}
};

}  // namespace discoord
