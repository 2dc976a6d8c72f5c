#pragma once

#include <stdexcept>

namespace spoofsim {

// Parameter combinations the physical model does not cover, e.g. a range so
// short that the round-trip transmissivity would reach 1. The CLI maps this
// to its own exit code, distinct from usage/config errors.
class out_of_model_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Malformed or incomplete scenario configuration input.
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace spoofsim
