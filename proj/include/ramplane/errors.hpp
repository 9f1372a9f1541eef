#pragma once

#include <stdexcept>
#include <string>

namespace ramplane {

// A mathematically certified fact came out false. These are build-stopping:
// the CLI maps them to exit code 2 so CI can tell "the mathematics failed"
// apart from operational errors.
class theorem_violation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class invariant_violation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class budget_exceeded_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class genericity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class infinite_intersection_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ramplane
