#pragma once

#include <string>
#include <vector>

namespace chevalley {

// Outcome of a verification suite. Failure entries carry a minimal
// reproducing input; at most failure_cap entries are stored, counts keep
// going.
struct CheckReport {
  std::string suite;
  long passed = 0;
  long failed = 0;

  struct Failure {
    std::string check;
    std::string input;
  };
  std::vector<Failure> failures;

  static constexpr std::size_t failure_cap = 100;

  void pass() { ++passed; }
  void fail(const std::string& check, const std::string& input) {
    ++failed;
    if (failures.size() < failure_cap) failures.push_back({check, input});
  }
  void check(bool ok, const std::string& name, const std::string& input) {
    if (ok)
      pass();
    else
      fail(name, input);
  }
  bool ok() const { return failed == 0; }
};

}  // namespace chevalley
