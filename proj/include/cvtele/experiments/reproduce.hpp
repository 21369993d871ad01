#pragma once

#include <string>
#include <vector>

namespace cvtele::experiments {

enum class Check {
  within,  // |computed - target| <= tolerance
  above,   // computed > target
  holds,   // boolean property; computed is 1 or 0
};

/// One published number, the value this toolkit computes for it, and the verdict.
struct AnchorRow {
  std::string name;
  std::string published;  // as reported, e.g. "0.67 +/- 0.02"
  double target;
  double computed;
  double tolerance;
  Check check;
  bool pass;
};

/// Recomputes every published anchor of the squeezed-state teleportation
/// experiment from the reported raw measurements.
std::vector<AnchorRow> reproduce_paper();

bool all_pass(const std::vector<AnchorRow>& rows);

std::string format_anchor_table(const std::vector<AnchorRow>& rows);
std::string format_anchor_csv(const std::vector<AnchorRow>& rows);

}  // namespace cvtele::experiments
