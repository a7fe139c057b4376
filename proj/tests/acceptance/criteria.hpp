#pragma once

#include <string>
#include <vector>

namespace balloons::acceptance {

struct Verdict {
  bool pass = false;
  std::string detail;
  /// Extra lines printed under the verdict; they never affect pass/fail.
  std::vector<std::string> info;
};

using CriterionFn = Verdict (*)();

struct Criterion {
  int number;
  const char* name;
  CriterionFn run;
};

const std::vector<Criterion>& all_criteria();

}  // namespace balloons::acceptance
