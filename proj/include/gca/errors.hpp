#pragma once

#include <stdexcept>
#include <string>

namespace gca {

// Exit-code mapping used by the CLI: contract/usage -> 2, data -> 3,
// numerical -> 4.
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gca
