#ifndef ALEDG_ERROR_HPP_
#define ALEDG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace aledg {

/// Raised for violated preconditions and numerical breakdowns (inverted
/// cells, invalid Euler states, CFL breaches, malformed configuration).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aledg

#endif  // ALEDG_ERROR_HPP_
