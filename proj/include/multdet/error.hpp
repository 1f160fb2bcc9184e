#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace multdet {

/// Library failure. The message is prefixed with the module that raised it.
class Error : public std::runtime_error {
 public:
  Error(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(module) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// Sylvester-criterion witness: the leading minor of order `index` is not
/// (numerically) positive.
class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(std::size_t index, const std::string& detail)
      : Error("toeplitz", "not numerically positive-definite at n=" +
                              std::to_string(index) + " (" + detail + ")"),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace multdet
