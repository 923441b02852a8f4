// Property checks that must hold for any build: quadrature, basis, fluxes,
// limiters, mesh normals, conservation and L2 stability.
#ifndef ALEDG_SELFTEST_HPP_
#define ALEDG_SELFTEST_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace aledg {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;  // worst value seen, or the error message
};

std::vector<PropertyResult> run_selftest(std::uint64_t seed = 7);

}  // namespace aledg

#endif  // ALEDG_SELFTEST_HPP_
