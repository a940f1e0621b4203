#pragma once

#include <stdexcept>
#include <string>

namespace jrp {

/// Enumeration or point-generation budget ran out before the computation finished.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// A cost evaluation was requested on a policy that has no exact evaluation path
/// (e.g. a general policy with irrational intervals).
class unsupported_evaluation : public std::runtime_error {
public:
    explicit unsupported_evaluation(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver failed to converge within its iteration cap.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jrp
