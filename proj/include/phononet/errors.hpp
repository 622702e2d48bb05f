#pragma once

#include <stdexcept>
#include <string>

namespace phononet {

// Bad or inconsistent input (unknown key, dangling mode reference, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Anything that fails while computing: singular solves, unstable networks,
// integrator breakdown, failed fits or pulse designs.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phononet
