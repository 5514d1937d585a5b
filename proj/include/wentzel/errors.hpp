#pragma once

#include <stdexcept>
#include <string>

namespace wentzel {

// Configuration / input validation problems (bad flags, bad file headers).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mesh topology or numerical assembly problems.
class MeshError : public std::runtime_error {
public:
  explicit MeshError(const std::string& msg) : std::runtime_error(msg) {}
};

// alpha is below the largest single point weight; no ball radius can
// separate mass at that threshold on an atomic measure.
class MeasureTooAtomic : public std::runtime_error {
public:
  explicit MeasureTooAtomic(const std::string& msg) : std::runtime_error(msg) {}
};

// A stated hypothesis of the construction fails on the given space
// (ball-measure precondition, or the covering budget of a run).
class HypothesisViolated : public std::runtime_error {
public:
  explicit HypothesisViolated(const std::string& msg) : std::runtime_error(msg) {}
};

// The greedy capacitor search exhausted its backtracking budget.
class CMConstructionFailed : public std::runtime_error {
public:
  explicit CMConstructionFailed(const std::string& msg) : std::runtime_error(msg) {}
};

// Test functions handed to the min-max certifier are not disjointly
// supported on the mesh.
class SupportsOverlap : public std::runtime_error {
public:
  explicit SupportsOverlap(const std::string& msg) : std::runtime_error(msg) {}
};

// A candidate test function vanishes on the boundary; its quotient is
// undefined.
class ZeroBoundaryMass : public std::runtime_error {
public:
  explicit ZeroBoundaryMass(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wentzel
