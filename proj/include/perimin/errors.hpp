#pragma once

#include <stdexcept>
#include <string>

namespace perimin {

/// Input data that cannot be interpreted: malformed scenario files,
/// inconsistent gluing instructions, sets that are not subsets where a
/// subset is required, and so on.  CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A request that the chosen capacity scale (or the int64 range) cannot
/// represent exactly: non-divisible cell sizes, overflow in an energy
/// accumulation, a lambda too fine for the scale.  CLI exit code 3.
class ScaleError : public std::runtime_error {
 public:
  explicit ScaleError(const std::string& what) : std::runtime_error(what) {}
};

/// A violated internal invariant (a self-check that should never fail:
/// max-flow sides not cutting to the flow value, a certified inequality
/// failing on a minimizer).  CLI exit code 1.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace perimin
